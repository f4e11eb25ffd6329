//! Closed points `⊤ -> N_k` reduce to numerals `s_k^m ∘ 0_k`.
//!
//! This reducer is deliberately independent of [`super::denote`]: it works
//! on numerals in unary normal form, peeling one successor per recursion
//! step and rebuilding results one successor at a time.

use serde::Serialize;

use super::{EvalError, Fuel};
use crate::terms::{numeral, typecheck, MorTerm, ObjNF, RecKind, TNode, TypeError, Typed};

/// `s_k^m ∘ 0_k`, held as its level and successor count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Numeral {
    pub level: usize,
    pub succs: u64,
}

impl Numeral {
    /// The predecessor numeral, `None` at `0_k`.
    fn peel(self) -> Option<Numeral> {
        (self.succs > 0).then(|| Numeral {
            succs: self.succs - 1,
            ..self
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointNormalForm {
    pub level: usize,
    pub index: u64,
    #[serde(skip)]
    pub term: MorTerm,
}

impl std::fmt::Display for PointNormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "s^{} 0 : N{}", self.index, self.level)
    }
}

/// Reduces a closed point of `N_k` to its numeral.
pub fn normalize_point(t: &MorTerm, n: usize, fuel: Fuel) -> Result<PointNormalForm, EvalError> {
    let typed = typecheck(t, n)?;
    let level = match typed.cod.single_level() {
        Some(k) if typed.dom.is_unit() => k,
        _ => {
            return Err(TypeError::Argument(format!(
                "{} -> {} is not a closed point of a level object",
                typed.dom, typed.cod
            ))
            .into())
        }
    };
    let mut r = Reducer {
        left: fuel.steps(),
        used: 0,
    };
    let out = r.reduce(&typed, Vec::new())?;
    let [num] = out.as_slice() else {
        unreachable!("typed point has one output")
    };
    debug_assert_eq!(num.level, level);
    Ok(PointNormalForm {
        level,
        index: num.succs,
        term: numeral(level, num.succs as usize),
    })
}

struct Reducer {
    left: u64,
    used: u64,
}

/// Splits a flat argument list (ordered by level, then ordinal) so that the
/// first part fits `first`.
fn split(args: Vec<Numeral>, first: &ObjNF) -> (Vec<Numeral>, Vec<Numeral>) {
    let mut taken = vec![0; first.n()];
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for x in args {
        if taken[x.level] < first.alpha(x.level) {
            taken[x.level] += 1;
            a.push(x);
        } else {
            b.push(x);
        }
    }
    (a, b)
}

/// Stable merge keeping level order; within a level, earlier parts first.
fn join(parts: Vec<Vec<Numeral>>) -> Vec<Numeral> {
    let mut all: Vec<(usize, usize, Numeral)> = Vec::new();
    for (p, part) in parts.into_iter().enumerate() {
        for x in part {
            all.push((x.level, p, x));
        }
    }
    all.sort_by_key(|&(level, p, _)| (level, p));
    all.into_iter().map(|(_, _, x)| x).collect()
}

impl Reducer {
    fn step(&mut self) -> Result<(), EvalError> {
        if self.left == 0 {
            return Err(EvalError::FuelExhausted { consumed: self.used });
        }
        self.left -= 1;
        self.used += 1;
        Ok(())
    }

    /// `args` are sorted by level, ordinal within level.
    fn reduce(&mut self, t: &Typed, mut args: Vec<Numeral>) -> Result<Vec<Numeral>, EvalError> {
        match &t.node {
            TNode::Id | TNode::Left | TNode::Assoc(..) => Ok(args),
            TNode::Zero(k) => Ok(join(vec![args, vec![Numeral { level: *k, succs: 0 }]])),
            TNode::Succ(_) => {
                self.step()?;
                args[0].succs += 1;
                Ok(args)
            }
            TNode::Eraser => Ok(Vec::new()),
            TNode::Dup => Ok(join(vec![args.clone(), args])),
            TNode::Drop(k) => Ok(vec![Numeral {
                level: *k,
                succs: args[0].succs,
            }]),
            TNode::Comp(g, f) => {
                let mid = self.reduce(f, args)?;
                self.reduce(g, mid)
            }
            TNode::Tensor(a, b) => {
                let (xa, xb) = split(args, &a.dom);
                let ya = self.reduce(a, xa)?;
                let yb = self.reduce(b, xb)?;
                Ok(join(vec![ya, yb]))
            }
            TNode::Sym(x, _) => {
                let (xa, xb) = split(args, x);
                Ok(join(vec![xb, xa]))
            }
            TNode::Rec { kind, k, base, step } => self.rec(*kind, *k, base, step, args),
            TNode::RaiseG(k, f) => {
                let k = *k;
                // Undo the merge: the first α_k entries at level k+1 came from k.
                let mut moved = f.dom.alpha(k);
                let lowered: Vec<Numeral> = args
                    .into_iter()
                    .map(|x| {
                        if x.level == k + 1 && moved > 0 {
                            moved -= 1;
                            Numeral { level: k, ..x }
                        } else {
                            x
                        }
                    })
                    .collect();
                let out = self.reduce(f, join(vec![lowered]))?;
                let (up, rest): (Vec<Numeral>, Vec<Numeral>) = out.into_iter().partition(|x| x.level == k);
                let up = up.into_iter().map(|x| Numeral { level: k + 1, ..x }).collect();
                Ok(join_front(up, rest, k + 1))
            }
            TNode::LowerT { image, .. } => self.reduce(image, args),
        }
    }

    fn rec(&mut self, kind: RecKind, k: usize, g: &Typed, h: &Typed, args: Vec<Numeral>) -> Result<Vec<Numeral>, EvalError> {
        let level = kind.counter_level(k);
        let pos = args.iter().position(|x| x.level == level).expect("typed input has a counter");
        let mut x = args;
        let counter = x.remove(pos);
        if kind == RecKind::Flat {
            return match counter.peel() {
                None => self.reduce(g, x),
                Some(pred) => {
                    self.step()?;
                    self.reduce(h, join(vec![vec![pred], x]))
                }
            };
        }
        // Peel the counter down to zero, then rebuild upwards.
        let mut preds = Vec::new();
        let mut cur = counter;
        while let Some(p) = cur.peel() {
            self.step()?;
            preds.push(p);
            cur = p;
        }
        let mut acc = self.reduce(g, x.clone())?;
        for pred in preds.into_iter().rev() {
            let arg = match kind {
                RecKind::SafeRamified => acc,
                RecKind::SafeDependent => join(vec![vec![pred], x.clone(), acc]),
                RecKind::Parameterised => join(vec![x.clone(), acc]),
                RecKind::Flat => unreachable!(),
            };
            acc = self.reduce(h, arg)?;
        }
        Ok(acc)
    }
}

/// Merges `front` (all at `level`) ahead of the entries of `rest` at that level.
fn join_front(front: Vec<Numeral>, rest: Vec<Numeral>, level: usize) -> Vec<Numeral> {
    let (at, other): (Vec<Numeral>, Vec<Numeral>) = rest.into_iter().partition(|x| x.level == level);
    let mut merged = front;
    merged.extend(at);
    join(vec![other, merged])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::stdlib;

    fn nf(t: &MorTerm) -> u64 {
        normalize_point(t, 4, Fuel::default()).unwrap().index
    }

    #[test]
    fn numerals() {
        assert_eq!(nf(&MorTerm::Zero(1)), 0);
        assert_eq!(nf(&numeral(0, 2)), 2);
        let sum = MorTerm::comp(stdlib::plus(4), MorTerm::tensor(numeral(1, 2), numeral(0, 2)));
        assert_eq!(nf(&sum), 4);
        let pw = MorTerm::comp(stdlib::exp(4), MorTerm::tensor(numeral(2, 3), numeral(1, 2)));
        assert_eq!(nf(&pw), 8);
        let display = normalize_point(&sum, 4, Fuel::default()).unwrap().to_string();
        assert_eq!(display, "s^4 0 : N0");
    }

    #[test]
    fn rejects_open_terms() {
        assert!(normalize_point(&MorTerm::Succ(0), 4, Fuel::default()).is_err());
    }
}
