use serde::Serialize;

use super::obj::ObjNF;
use super::term::{MorTerm, RecKind};
use super::{TypeError, MIN_CHAIN};
use crate::coerce::{apply_mor, apply_obj, CoercionOp};

/// Inferred type of a morphism term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MorType {
    pub dom: ObjNF,
    pub cod: ObjNF,
}

/// A term annotated with the types of all of its sub-terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Typed {
    pub dom: ObjNF,
    pub cod: ObjNF,
    pub node: TNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TNode {
    Id,
    Zero(usize),
    Succ(usize),
    Eraser,
    Dup,
    Drop(usize),
    Comp(Box<Typed>, Box<Typed>),
    Tensor(Box<Typed>, Box<Typed>),
    Left,
    Sym(ObjNF, ObjNF),
    Assoc(ObjNF, ObjNF, ObjNF),
    Rec {
        kind: RecKind,
        k: usize,
        base: Box<Typed>,
        step: Box<Typed>,
    },
    RaiseG(usize, Box<Typed>),
    /// `LowerT` keeps its argument together with the elaborated image.
    LowerT {
        k: usize,
        inner: Box<Typed>,
        image: Box<Typed>,
    },
}

impl Typed {
    pub fn ty(&self) -> MorType {
        MorType {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
        }
    }

    /// The underlying term.
    pub fn to_term(&self) -> MorTerm {
        match &self.node {
            TNode::Id => MorTerm::Id(self.dom.clone()),
            TNode::Zero(k) => MorTerm::Zero(*k),
            TNode::Succ(k) => MorTerm::Succ(*k),
            TNode::Eraser => MorTerm::Eraser(self.dom.clone()),
            TNode::Dup => MorTerm::Dup(self.dom.clone()),
            TNode::Drop(k) => MorTerm::Drop(*k),
            TNode::Comp(g, f) => MorTerm::comp(g.to_term(), f.to_term()),
            TNode::Tensor(a, b) => MorTerm::tensor(a.to_term(), b.to_term()),
            TNode::Left => MorTerm::Left(self.dom.clone()),
            TNode::Sym(x, y) => MorTerm::Sym(x.clone(), y.clone()),
            TNode::Assoc(x, y, z) => MorTerm::Assoc(x.clone(), y.clone(), z.clone()),
            TNode::Rec { kind, k, base, step } => MorTerm::rec(*kind, *k, base.to_term(), step.to_term()),
            TNode::RaiseG(k, f) => MorTerm::raise(*k, f.to_term()),
            TNode::LowerT { k, inner, .. } => MorTerm::lower(*k, inner.to_term()),
        }
    }
}

/// Domain and codomain of `t` over the chain of size `n`.
pub fn infer_type(t: &MorTerm, n: usize) -> Result<MorType, TypeError> {
    typecheck(t, n).map(|tt| tt.ty())
}

/// Full type derivation of `t` over the chain of size `n`.
pub fn typecheck(t: &MorTerm, n: usize) -> Result<Typed, TypeError> {
    if n < MIN_CHAIN {
        return Err(TypeError::ChainTooSmall(n));
    }
    Checker { n }.go(t)
}

/// `T_k T_{k-1} ... T_0 Y ≅ ⊤`, with `T_k` applied first. Reports the
/// highest surviving factor level on failure.
pub fn side_condition(kind: RecKind, k: usize, y: &ObjNF) -> Result<(), TypeError> {
    let mut cur = y.clone();
    for j in (0..=k).rev() {
        cur = apply_obj(CoercionOp::t(j), &cur)?;
    }
    match y.top_level() {
        Some(level) if !cur.is_unit() => Err(TypeError::SideCondition {
            former: kind,
            k,
            level,
        }),
        _ => Ok(()),
    }
}

struct Checker {
    n: usize,
}

impl Checker {
    fn level(&self, k: usize) -> Result<(), TypeError> {
        if k >= self.n {
            return Err(TypeError::LevelOutOfRange { level: k, n: self.n });
        }
        Ok(())
    }

    fn coercion_index(&self, k: usize) -> Result<(), TypeError> {
        if k + 2 > self.n {
            return Err(TypeError::LevelOutOfRange { level: k, n: self.n });
        }
        Ok(())
    }

    fn obj(&self, x: &ObjNF) -> Result<(), TypeError> {
        x.check_range(self.n)
    }

    fn leaf(&self, dom: ObjNF, cod: ObjNF, node: TNode) -> Result<Typed, TypeError> {
        Ok(Typed { dom, cod, node })
    }

    fn go(&self, t: &MorTerm) -> Result<Typed, TypeError> {
        let n = self.n;
        match t {
            MorTerm::Id(x) => {
                self.obj(x)?;
                self.leaf(x.clone(), x.clone(), TNode::Id)
            }
            MorTerm::Zero(k) => {
                self.level(*k)?;
                self.leaf(ObjNF::unit(n), ObjNF::level(n, *k), TNode::Zero(*k))
            }
            MorTerm::Succ(k) => {
                self.level(*k)?;
                self.leaf(ObjNF::level(n, *k), ObjNF::level(n, *k), TNode::Succ(*k))
            }
            MorTerm::Eraser(x) => {
                self.obj(x)?;
                self.leaf(x.clone(), ObjNF::unit(n), TNode::Eraser)
            }
            MorTerm::Dup(x) => {
                self.obj(x)?;
                self.leaf(x.clone(), x.tensor(x), TNode::Dup)
            }
            MorTerm::Drop(k) => {
                self.coercion_index(*k)?;
                self.leaf(ObjNF::level(n, k + 1), ObjNF::level(n, *k), TNode::Drop(*k))
            }
            MorTerm::Comp(g, f) => {
                let f = self.go(f)?;
                let g = self.go(g)?;
                if f.cod != g.dom {
                    return Err(TypeError::CompMismatch {
                        cod: f.cod.to_string(),
                        dom: g.dom.to_string(),
                    });
                }
                Ok(Typed {
                    dom: f.dom.clone(),
                    cod: g.cod.clone(),
                    node: TNode::Comp(Box::new(g), Box::new(f)),
                })
            }
            MorTerm::Tensor(a, b) => {
                let a = self.go(a)?;
                let b = self.go(b)?;
                Ok(Typed {
                    dom: a.dom.tensor(&b.dom),
                    cod: a.cod.tensor(&b.cod),
                    node: TNode::Tensor(Box::new(a), Box::new(b)),
                })
            }
            MorTerm::Left(x) => {
                self.obj(x)?;
                self.leaf(x.clone(), x.clone(), TNode::Left)
            }
            MorTerm::Sym(x, y) => {
                self.obj(x)?;
                self.obj(y)?;
                let xy = x.tensor(y);
                self.leaf(xy.clone(), xy, TNode::Sym(x.clone(), y.clone()))
            }
            MorTerm::Assoc(x, y, z) => {
                self.obj(x)?;
                self.obj(y)?;
                self.obj(z)?;
                let xyz = x.tensor(y).tensor(z);
                self.leaf(xyz.clone(), xyz, TNode::Assoc(x.clone(), y.clone(), z.clone()))
            }
            MorTerm::Rec { kind, k, base, step } => self.rec(*kind, *k, base, step),
            MorTerm::RaiseG(k, f) => {
                self.coercion_index(*k)?;
                let f = self.go(f)?;
                let c = CoercionOp::g(*k);
                Ok(Typed {
                    dom: apply_obj(c, &f.dom)?,
                    cod: apply_obj(c, &f.cod)?,
                    node: TNode::RaiseG(*k, Box::new(f)),
                })
            }
            MorTerm::LowerT(k, f) => {
                self.coercion_index(*k)?;
                let inner = self.go(f)?;
                let image = apply_mor(CoercionOp::t(*k), f, n)?;
                let image = self.go(&image)?;
                Ok(Typed {
                    dom: image.dom.clone(),
                    cod: image.cod.clone(),
                    node: TNode::LowerT {
                        k: *k,
                        inner: Box::new(inner),
                        image: Box::new(image),
                    },
                })
            }
        }
    }

    fn rec(&self, kind: RecKind, k: usize, base: &MorTerm, step: &MorTerm) -> Result<Typed, TypeError> {
        let n = self.n;
        let counter_level = kind.counter_level(k);
        self.level(counter_level)?;
        let g = self.go(base)?;
        let h = self.go(step)?;
        let x = g.dom.clone();
        let y = g.cod.clone();
        let counter = ObjNF::level(n, counter_level);
        let shape = |expected: ObjNF, found: &ObjNF, what: &str| {
            if &expected == found {
                Ok(())
            } else {
                Err(TypeError::RecursionShape {
                    former: kind,
                    k,
                    detail: format!("step {what} is {found}, expected {expected}"),
                })
            }
        };
        match kind {
            RecKind::Flat => {
                if !x.is_pure_power_of(k) {
                    return Err(TypeError::NotPurePower { k, what: "parameter", obj: x.to_string() });
                }
                if !y.is_pure_power_of(k) {
                    return Err(TypeError::NotPurePower { k, what: "result", obj: y.to_string() });
                }
                shape(counter.tensor(&x), &h.dom, "domain")?;
            }
            RecKind::SafeRamified => shape(y.clone(), &h.dom, "domain")?,
            RecKind::SafeDependent => shape(counter.tensor(&x).tensor(&y), &h.dom, "domain")?,
            RecKind::Parameterised => shape(x.tensor(&y), &h.dom, "domain")?,
        }
        shape(y.clone(), &h.cod, "codomain")?;
        if kind != RecKind::Flat {
            side_condition(kind, k, &y)?;
        }
        Ok(Typed {
            dom: counter.tensor(&x),
            cod: y,
            node: TNode::Rec {
                kind,
                k,
                base: Box::new(g),
                step: Box::new(h),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(t: &MorTerm) -> Result<(Vec<usize>, Vec<usize>), TypeError> {
        infer_type(t, 3).map(|m| (m.dom.profile().to_vec(), m.cod.profile().to_vec()))
    }

    #[test]
    fn addition_types() {
        let plus = MorTerm::srr(0, MorTerm::Id(ObjNF::level(3, 0)), MorTerm::Succ(0));
        assert_eq!(ty(&plus), Ok((vec![1, 1, 0], vec![1, 0, 0])));
    }

    #[test]
    fn side_condition_rejects_level_one_result() {
        let bad = MorTerm::srr(0, MorTerm::Id(ObjNF::level(3, 1)), MorTerm::Succ(1));
        assert_eq!(
            ty(&bad),
            Err(TypeError::SideCondition {
                former: RecKind::SafeRamified,
                k: 0,
                level: 1
            })
        );
    }

    #[test]
    fn composition_mismatch() {
        let t = MorTerm::comp(MorTerm::Succ(1), MorTerm::Zero(0));
        assert!(matches!(ty(&t), Err(TypeError::CompMismatch { .. })));
    }

    #[test]
    fn small_chain_rejected() {
        assert_eq!(infer_type(&MorTerm::Zero(0), 2), Err(TypeError::ChainTooSmall(2)));
    }

    #[test]
    fn flat_recursion_needs_pure_powers() {
        let pred = MorTerm::fr(0, MorTerm::Zero(0), MorTerm::Id(ObjNF::level(3, 0)));
        assert_eq!(ty(&pred), Ok((vec![1, 0, 0], vec![1, 0, 0])));
        let bad = MorTerm::fr(0, MorTerm::Zero(1), MorTerm::comp(MorTerm::Zero(1), MorTerm::Eraser(ObjNF::level(3, 0))));
        assert!(matches!(ty(&bad), Err(TypeError::NotPurePower { .. })));
    }

    #[test]
    fn raise_moves_levels() {
        let t = MorTerm::raise(0, MorTerm::Succ(0));
        assert_eq!(ty(&t), Ok((vec![0, 1, 0], vec![0, 1, 0])));
    }
}
