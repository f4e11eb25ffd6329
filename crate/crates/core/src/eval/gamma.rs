//! The chain-valued standard model `Γ_n`, on its observable data.
//!
//! `Γ_n X` is the chain `k ↦ Γ(k̄ X)`; since `k̄ N_j` is `⊤` for `j < k` and
//! `N_{n-1}` otherwise, rung `k` is `ℕ^a` with `a` the number of factors of
//! level at least `k`, and the connecting maps forget the factors of level
//! exactly `k`.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{eval_u64, EvalError, Fuel};
use crate::coerce::bar;
use crate::terms::{infer_type, MorTerm, ObjNF, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaChain {
    /// `k̄ X` for `k = 0..n`.
    pub objects: Vec<ObjNF>,
    /// Exponent of `ℕ` carried by each rung.
    pub carriers: Vec<usize>,
    /// For each connecting map, which coordinates survive.
    pub maps: Vec<Vec<bool>>,
}

impl fmt::Display for GammaChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &a) in self.carriers.iter().enumerate() {
            if k > 0 {
                let keep = &self.maps[k - 1];
                let label = if keep.iter().all(|&b| b) { "id" } else { "!" };
                write!(f, " -{label}-> ")?;
            }
            match a {
                0 => write!(f, "1")?,
                1 => write!(f, "N")?,
                _ => write!(f, "N^{a}")?,
            }
        }
        Ok(())
    }
}

pub fn gamma_object(x: &ObjNF) -> Result<GammaChain, TypeError> {
    let n = x.n();
    let objects = (0..n).map(|k| bar(k, x)).collect::<Result<Vec<_>, _>>()?;
    let carriers = objects.iter().map(ObjNF::width).collect();
    let levels = x.factor_levels();
    let maps = (0..n.saturating_sub(1))
        .map(|k| levels.iter().filter(|&&j| j >= k).map(|&j| j > k).collect())
        .collect();
    Ok(GammaChain {
        objects,
        carriers,
        maps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LadderOutcome {
    Commutes,
    /// The square from rung `rung` to `rung + 1` fails at `input`.
    Counterexample { rung: usize, input: u64, left: u64, right: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderReport {
    pub squares: usize,
    pub points_checked: usize,
    pub outcome: LadderOutcome,
}

impl LadderReport {
    pub fn commutes(&self) -> bool {
        self.outcome == LadderOutcome::Commutes
    }
}

/// Checks the ladder of squares `Γ_n f` for `f : N_k -> N_j` on inputs up to
/// `bound`. Rung `r` of `Γ_n f` is `f` where both carriers are `ℕ`, the
/// terminal map into `1`, and the constant value of `f` where the domain
/// has collapsed to `1`.
pub fn gamma_morphism_ladder(f: &MorTerm, n: usize, bound: u64, fuel: Fuel) -> Result<LadderReport, EvalError> {
    let ty = infer_type(f, n)?;
    let (Some(k), Some(j)) = (ty.dom.single_level(), ty.cod.single_level()) else {
        return Err(TypeError::Argument(format!("ladder needs N_k -> N_j, got {} -> {}", ty.dom, ty.cod)).into());
    };
    let table: Vec<u64> = (0..=bound)
        .map(|x| {
            let out = eval_u64(f, n, &[x], fuel)?;
            Ok(out[0].to_u64().unwrap_or(u64::MAX))
        })
        .collect::<Result<_, EvalError>>()?;
    // Value of the rung-r map at x; None for the terminal map.
    let top = |r: usize, x: Option<u64>| -> Option<u64> {
        if r > j {
            return None;
        }
        Some(match x {
            Some(x) => table[x as usize],
            None => table[0],
        })
    };
    let mut checked = 0;
    for r in 0..n - 1 {
        let dom_here = r <= k;
        let dom_next = r < k;
        let inputs: Vec<Option<u64>> = if dom_here { (0..=bound).map(Some).collect() } else { vec![None] };
        for x in inputs {
            checked += 1;
            let x_next = if dom_next { x } else { None };
            let left = if r < j { top(r, x) } else { None };
            let right = top(r + 1, x_next);
            if left != right {
                return Ok(LadderReport {
                    squares: n - 1,
                    points_checked: checked,
                    outcome: LadderOutcome::Counterexample {
                        rung: r,
                        input: x.unwrap_or(0),
                        left: left.unwrap_or(0),
                        right: right.unwrap_or(0),
                    },
                });
            }
        }
    }
    Ok(LadderReport {
        squares: n - 1,
        points_checked: checked,
        outcome: LadderOutcome::Commutes,
    })
}
