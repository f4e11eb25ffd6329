use std::fmt;

use serde::Serialize;

use super::obj::ObjNF;

/// The four recursion formers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RecKind {
    /// Flat recursion `FR_k : N_k ⊗ X -> Y`: `f(0,u) = g(u)`, `f(m+1,u) = h(m,u)`.
    Flat,
    /// Safe ramified recursion `SRR_k : N_{k+1} ⊗ X -> Y`: `f(m+1,x) = h(f(m,x))`.
    SafeRamified,
    /// Safe dependent recursion `SDR_k`: `f(m+1,x) = h(m,x,f(m,x))`.
    SafeDependent,
    /// Parameterised safe ramified recursion `PSRR_k`: `f(m+1,x) = h(x,f(m,x))`.
    Parameterised,
}

impl RecKind {
    pub const ALL: [RecKind; 4] = [
        RecKind::Flat,
        RecKind::SafeRamified,
        RecKind::SafeDependent,
        RecKind::Parameterised,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            RecKind::Flat => "fr",
            RecKind::SafeRamified => "srr",
            RecKind::SafeDependent => "sdr",
            RecKind::Parameterised => "psrr",
        }
    }

    pub fn from_keyword(s: &str) -> Option<RecKind> {
        RecKind::ALL.into_iter().find(|r| r.keyword() == s)
    }

    /// Level of the recursion variable for the former at index `k`.
    pub fn counter_level(self, k: usize) -> usize {
        match self {
            RecKind::Flat => k,
            _ => k + 1,
        }
    }

    /// Former index for a recursion variable at `level`, if one exists.
    pub fn index_for_counter(self, level: usize) -> Option<usize> {
        match self {
            RecKind::Flat => Some(level),
            _ => level.checked_sub(1),
        }
    }
}

impl fmt::Display for RecKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecKind::Flat => "FR",
            RecKind::SafeRamified => "SRR",
            RecKind::SafeDependent => "SDR",
            RecKind::Parameterised => "PSRR",
        };
        write!(f, "{s}")
    }
}

/// Point-free morphism terms. `Comp(g, f)` is `g ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum MorTerm {
    Id(ObjNF),
    Zero(usize),
    Succ(usize),
    /// `τ_X : X -> ⊤`.
    Eraser(ObjNF),
    /// `δ_X : X -> X ⊗ X`.
    Dup(ObjNF),
    /// `d_k : N_{k+1} -> N_k`.
    Drop(usize),
    Comp(Box<MorTerm>, Box<MorTerm>),
    Tensor(Box<MorTerm>, Box<MorTerm>),
    /// Left unitor `l : ⊤ ⊗ X -> X`.
    Left(ObjNF),
    Sym(ObjNF, ObjNF),
    Assoc(ObjNF, ObjNF, ObjNF),
    Rec {
        kind: RecKind,
        k: usize,
        base: Box<MorTerm>,
        step: Box<MorTerm>,
    },
    /// The raising rule `G_k f : G_k X -> G_k Y`.
    RaiseG(usize, Box<MorTerm>),
    /// An explicit `T_k f`. Outside the strict fragment.
    LowerT(usize, Box<MorTerm>),
}

impl MorTerm {
    pub fn comp(g: MorTerm, f: MorTerm) -> MorTerm {
        MorTerm::Comp(Box::new(g), Box::new(f))
    }

    pub fn tensor(a: MorTerm, b: MorTerm) -> MorTerm {
        MorTerm::Tensor(Box::new(a), Box::new(b))
    }

    pub fn rec(kind: RecKind, k: usize, base: MorTerm, step: MorTerm) -> MorTerm {
        MorTerm::Rec {
            kind,
            k,
            base: Box::new(base),
            step: Box::new(step),
        }
    }

    pub fn fr(k: usize, base: MorTerm, step: MorTerm) -> MorTerm {
        Self::rec(RecKind::Flat, k, base, step)
    }

    pub fn srr(k: usize, base: MorTerm, step: MorTerm) -> MorTerm {
        Self::rec(RecKind::SafeRamified, k, base, step)
    }

    pub fn sdr(k: usize, base: MorTerm, step: MorTerm) -> MorTerm {
        Self::rec(RecKind::SafeDependent, k, base, step)
    }

    pub fn psrr(k: usize, base: MorTerm, step: MorTerm) -> MorTerm {
        Self::rec(RecKind::Parameterised, k, base, step)
    }

    pub fn raise(k: usize, f: MorTerm) -> MorTerm {
        MorTerm::RaiseG(k, Box::new(f))
    }

    pub fn lower(k: usize, f: MorTerm) -> MorTerm {
        MorTerm::LowerT(k, Box::new(f))
    }

    /// `fs[0] ∘ fs[1] ∘ ... ∘ fs[last]`; `None` for an empty list.
    pub fn compose_all(fs: Vec<MorTerm>) -> Option<MorTerm> {
        let mut it = fs.into_iter().rev();
        let first = it.next()?;
        Some(it.fold(first, |acc, g| MorTerm::comp(g, acc)))
    }

    /// Right-nested tensor of the given terms; `None` for an empty list.
    pub fn tensor_all(fs: Vec<MorTerm>) -> Option<MorTerm> {
        let mut it = fs.into_iter().rev();
        let last = it.next()?;
        Some(it.fold(last, |acc, a| MorTerm::tensor(a, acc)))
    }

    /// Number of AST nodes, object annotations excluded.
    pub fn size(&self) -> usize {
        match self {
            MorTerm::Comp(a, b) | MorTerm::Tensor(a, b) => 1 + a.size() + b.size(),
            MorTerm::Rec { base, step, .. } => 1 + base.size() + step.size(),
            MorTerm::RaiseG(_, f) | MorTerm::LowerT(_, f) => 1 + f.size(),
            _ => 1,
        }
    }

    /// Visits every node, pre-order.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a MorTerm)) {
        visit(self);
        match self {
            MorTerm::Comp(a, b) | MorTerm::Tensor(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            MorTerm::Rec { base, step, .. } => {
                base.walk(visit);
                step.walk(visit);
            }
            MorTerm::RaiseG(_, f) | MorTerm::LowerT(_, f) => f.walk(visit),
            _ => {}
        }
    }
}

impl fmt::Display for MorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::syntax::print_term(self))
    }
}
