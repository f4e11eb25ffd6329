//! Standard model: terms denote functions on tuples of naturals.
//!
//! A value of `⊗_j N_j^{α_j}` is one natural per unit factor, grouped by
//! level and ordered by ordinal within a level. Tuples are written highest
//! level first, matching species signatures, so `↑ : N_2 ⊗ N_1 -> N_1`
//! takes `(x, y)` and returns `y^x`. Tensors place the left operand's
//! entries first at every level. `G_k` merges level `k` into level
//! `k+1` with the moved entries first; `RaiseG` denotes `f` conjugated by
//! that relabelling.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::terms::{typecheck, MorTerm, ObjNF, RecKind, TNode, TypeError, Typed};

pub mod gamma;
pub mod normalize;

pub use gamma::{gamma_morphism_ladder, gamma_object, GammaChain, LadderReport};
pub use normalize::{normalize_point, PointNormalForm};

pub type Value = BigUint;

pub const DEFAULT_FUEL: u64 = 10_000_000;

/// Budget of recursion unfoldings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel(u64);

impl Fuel {
    pub fn new(steps: u64) -> Self {
        Fuel(steps.max(1))
    }

    pub fn steps(self) -> u64 {
        self.0
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel(DEFAULT_FUEL)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("argument of shape {found} supplied where {expected} is expected")]
    Shape { expected: String, found: String },
    #[error("{expected} entries expected, {found} supplied")]
    Arity { expected: usize, found: usize },
    #[error("fuel exhausted after {consumed} unfoldings")]
    FuelExhausted { consumed: u64 },
}

/// A point of `Γ X`: entries by descending level, then ascending ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelTuple {
    shape: ObjNF,
    entries: Vec<Value>,
}

impl LevelTuple {
    pub fn new(shape: ObjNF, entries: Vec<Value>) -> Result<Self, EvalError> {
        if entries.len() != shape.width() {
            return Err(EvalError::Arity {
                expected: shape.width(),
                found: entries.len(),
            });
        }
        Ok(LevelTuple { shape, entries })
    }

    pub fn from_u64(shape: ObjNF, entries: &[u64]) -> Result<Self, EvalError> {
        Self::new(shape, entries.iter().map(|&x| Value::from(x)).collect())
    }

    pub fn shape(&self) -> &ObjNF {
        &self.shape
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Value> {
        self.entries
    }

    fn to_levels(&self) -> Levels {
        let mut it = self.entries.iter().cloned();
        let mut levels: Levels = self
            .shape
            .profile()
            .iter()
            .rev()
            .map(|&a| it.by_ref().take(a).collect())
            .collect();
        levels.reverse();
        levels
    }

    fn from_levels(shape: ObjNF, levels: Levels) -> Self {
        LevelTuple {
            shape,
            entries: levels.into_iter().rev().flatten().collect(),
        }
    }
}

/// Per-level entry lists.
type Levels = Vec<Vec<Value>>;

/// Denotation of `t` at `v`. The chain size is that of `v`'s shape.
pub fn denote(t: &MorTerm, v: &LevelTuple, fuel: Fuel) -> Result<LevelTuple, EvalError> {
    let typed = typecheck(t, v.shape.n())?;
    denote_typed(&typed, v, fuel)
}

/// Like [`denote`] for an already checked term.
pub fn denote_typed(t: &Typed, v: &LevelTuple, fuel: Fuel) -> Result<LevelTuple, EvalError> {
    if t.dom != v.shape {
        return Err(EvalError::Shape {
            expected: t.dom.to_string(),
            found: v.shape.to_string(),
        });
    }
    let mut m = Machine {
        left: fuel.steps(),
        used: 0,
    };
    let out = m.eval(t, v.to_levels())?;
    Ok(LevelTuple::from_levels(t.cod.clone(), out))
}

/// Convenience: evaluates on small arguments, highest level first.
pub fn eval_u64(t: &MorTerm, n: usize, args: &[u64], fuel: Fuel) -> Result<Vec<Value>, EvalError> {
    let typed = typecheck(t, n)?;
    let v = LevelTuple::from_u64(typed.dom.clone(), args)?;
    Ok(denote_typed(&typed, &v, fuel)?.into_entries())
}

struct Machine {
    left: u64,
    used: u64,
}

fn split(v: Levels, first: &ObjNF) -> (Levels, Levels) {
    let mut a = Vec::with_capacity(v.len());
    let mut b = Vec::with_capacity(v.len());
    for (j, mut level) in v.into_iter().enumerate() {
        let rest = level.split_off(first.alpha(j));
        a.push(level);
        b.push(rest);
    }
    (a, b)
}

fn join(parts: Vec<Levels>) -> Levels {
    let n = parts[0].len();
    let mut out: Levels = vec![Vec::new(); n];
    for p in parts {
        for (j, level) in p.into_iter().enumerate() {
            out[j].extend(level);
        }
    }
    out
}

impl Machine {
    fn unfold(&mut self, count: u64) -> Result<(), EvalError> {
        if count > self.left {
            self.used += self.left;
            self.left = 0;
            return Err(EvalError::FuelExhausted { consumed: self.used });
        }
        self.left -= count;
        self.used += count;
        Ok(())
    }

    fn eval(&mut self, t: &Typed, mut v: Levels) -> Result<Levels, EvalError> {
        let n = v.len();
        Ok(match &t.node {
            TNode::Id | TNode::Left | TNode::Assoc(..) => v,
            TNode::Zero(k) => {
                v[*k].push(Value::zero());
                v
            }
            TNode::Succ(k) => {
                v[*k][0] += 1u32;
                v
            }
            TNode::Eraser => vec![Vec::new(); n],
            TNode::Dup => v.into_iter().map(|l| l.iter().chain(&l).cloned().collect()).collect(),
            TNode::Drop(k) => {
                let x = v[k + 1].pop().expect("typed input");
                v[*k].push(x);
                v
            }
            TNode::Comp(g, f) => {
                let mid = self.eval(f, v)?;
                self.eval(g, mid)?
            }
            TNode::Tensor(a, b) => {
                let (va, vb) = split(v, &a.dom);
                let oa = self.eval(a, va)?;
                let ob = self.eval(b, vb)?;
                join(vec![oa, ob])
            }
            TNode::Sym(x, _) => {
                let (vx, vy) = split(v, x);
                join(vec![vy, vx])
            }
            TNode::Rec { kind, k, base, step } => self.rec(*kind, *k, base, step, v)?,
            TNode::RaiseG(k, f) => {
                let k = *k;
                let moved = f.dom.alpha(k);
                let stay = v[k + 1].split_off(moved);
                v[k] = std::mem::replace(&mut v[k + 1], stay);
                let mut out = self.eval(f, v)?;
                let moved = std::mem::take(&mut out[k]);
                let stay = std::mem::replace(&mut out[k + 1], moved);
                out[k + 1].extend(stay);
                out
            }
            TNode::LowerT { image, .. } => self.eval(image, v)?,
        })
    }

    fn rec(&mut self, kind: RecKind, k: usize, g: &Typed, h: &Typed, mut v: Levels) -> Result<Levels, EvalError> {
        let n = v.len();
        let level = kind.counter_level(k);
        let m = v[level].remove(0);
        let x = v;
        let single = |lvl: usize, val: Value| {
            let mut c = vec![Vec::new(); n];
            c[lvl].push(val);
            c
        };
        if kind == RecKind::Flat {
            if m.is_zero() {
                return self.eval(g, x);
            }
            self.unfold(1)?;
            let pred = m - 1u32;
            return self.eval(h, join(vec![single(level, pred), x]));
        }
        let steps = match m.to_u64() {
            Some(s) if s <= self.left => s,
            _ => {
                self.used += self.left;
                self.left = 0;
                return Err(EvalError::FuelExhausted { consumed: self.used });
            }
        };
        let mut acc = self.eval(g, x.clone())?;
        for i in 0..steps {
            self.unfold(1)?;
            let arg = match kind {
                RecKind::SafeRamified => acc,
                RecKind::SafeDependent => join(vec![single(level, Value::from(i)), x.clone(), acc]),
                RecKind::Parameterised => join(vec![x.clone(), acc]),
                RecKind::Flat => unreachable!(),
            };
            acc = self.eval(h, arg)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::stdlib;

    fn ev(t: &MorTerm, args: &[u64]) -> Vec<u64> {
        eval_u64(t, 4, args, Fuel::default())
            .unwrap()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn hyperoperations() {
        assert_eq!(ev(&stdlib::plus(4), &[3, 2]), vec![5]);
        assert_eq!(ev(&stdlib::times(4), &[3, 4]), vec![12]);
        assert_eq!(ev(&stdlib::exp(4), &[2, 3]), vec![9]);
        assert_eq!(ev(&stdlib::tetra(4), &[2, 2]), vec![16]);
        assert_eq!(ev(&stdlib::pred(4), &[0]), vec![0]);
        assert_eq!(ev(&stdlib::pred(4), &[7]), vec![6]);
    }

    #[test]
    fn argument_layout() {
        assert_eq!(ev(&stdlib::exp(4), &[3, 2]), vec![8]);
        let n0 = ObjNF::level(4, 0);
        let n1 = ObjNF::level(4, 1);
        assert_eq!(ev(&stdlib::proj1(&n1, &n0), &[9, 4]), vec![9]);
        assert_eq!(ev(&stdlib::proj2(&n1, &n0), &[9, 4]), vec![4]);
        let sym = MorTerm::Sym(n0.clone(), n0.clone());
        assert_eq!(ev(&sym, &[1, 2]), vec![2, 1]);
    }

    #[test]
    fn raised_product() {
        let t = MorTerm::raise(0, stdlib::times(4));
        assert_eq!(ev(&t, &[6, 7]), vec![42]);
        let s = MorTerm::raise(0, MorTerm::Succ(0));
        assert_eq!(ev(&s, &[41]), vec![42]);
    }

    #[test]
    fn fuel_exhaustion() {
        let t = stdlib::times(4);
        let err = eval_u64(&t, 4, &[100, 100], Fuel::new(50)).unwrap_err();
        assert!(matches!(err, EvalError::FuelExhausted { .. }));
        assert!(eval_u64(&t, 4, &[100, 100], Fuel::new(20_000)).is_ok());
    }

    #[test]
    fn shape_errors() {
        let v = LevelTuple::from_u64(ObjNF::level(4, 0), &[1]).unwrap();
        assert!(matches!(denote(&MorTerm::Succ(1), &v, Fuel::default()), Err(EvalError::Shape { .. })));
        assert!(LevelTuple::from_u64(ObjNF::level(4, 0), &[1, 2]).is_err());
    }
}
