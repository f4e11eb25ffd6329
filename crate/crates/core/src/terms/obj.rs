use std::fmt;

use serde::Serialize;

use super::TypeError;

/// Normal form of an object `⊗_j N_j^{α_j}`: its exponent profile. Objects
/// are taken modulo associativity, symmetry and unit, so the profile is the
/// whole story; the all-zero profile is `⊤`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjNF {
    alphas: Vec<usize>,
}

impl ObjNF {
    pub fn from_profile(alphas: Vec<usize>) -> Self {
        ObjNF { alphas }
    }

    pub fn unit(n: usize) -> Self {
        ObjNF { alphas: vec![0; n] }
    }

    /// The level object `N_k`.
    pub fn level(n: usize, k: usize) -> Self {
        Self::power(n, k, 1)
    }

    /// `N_k^e`.
    pub fn power(n: usize, k: usize, e: usize) -> Self {
        let mut alphas = vec![0; n];
        alphas[k] = e;
        ObjNF { alphas }
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn profile(&self) -> &[usize] {
        &self.alphas
    }

    pub fn alpha(&self, level: usize) -> usize {
        self.alphas.get(level).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.alphas.iter().all(|&a| a == 0)
    }

    /// Number of unit factors `Σ α_j`.
    pub fn width(&self) -> usize {
        self.alphas.iter().sum()
    }

    pub fn tensor(&self, other: &ObjNF) -> ObjNF {
        debug_assert_eq!(self.n(), other.n());
        ObjNF {
            alphas: self.alphas.iter().zip(&other.alphas).map(|(a, b)| a + b).collect(),
        }
    }

    /// Highest level carrying a factor, `None` for `⊤`.
    pub fn top_level(&self) -> Option<usize> {
        self.alphas.iter().rposition(|&a| a > 0)
    }

    /// True when every factor sits at a level `<= cap`.
    pub fn level_capped(&self, cap: usize) -> bool {
        self.top_level().is_none_or(|t| t <= cap)
    }

    /// True when the object is a (possibly empty) power of `N_k` alone.
    pub fn is_pure_power_of(&self, k: usize) -> bool {
        self.alphas.iter().enumerate().all(|(j, &a)| j == k || a == 0)
    }

    /// Single level object, `Some(k)` iff the object is exactly `N_k`.
    pub fn single_level(&self) -> Option<usize> {
        (self.width() == 1).then(|| self.top_level()).flatten()
    }

    /// Removes `count` factors at `level`; `None` when there are not enough.
    pub fn without(&self, level: usize, count: usize) -> Option<ObjNF> {
        if self.alpha(level) < count {
            return None;
        }
        let mut alphas = self.alphas.clone();
        alphas[level] -= count;
        Some(ObjNF { alphas })
    }

    /// Factor levels, ascending by `(level, ordinal)`.
    pub fn factor_levels(&self) -> Vec<usize> {
        self.alphas
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat(j).take(a))
            .collect()
    }

    pub fn check_range(&self, n: usize) -> Result<(), TypeError> {
        if self.n() != n {
            return Err(TypeError::ChainMismatch {
                expected: n,
                found: self.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ObjNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "⊤");
        }
        let mut first = true;
        for (j, &a) in self.alphas.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "⊗")?;
            }
            first = false;
            if a == 1 {
                write!(f, "N{j}")?;
            } else {
                write!(f, "N{j}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Raw object syntax before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawObj {
    Unit,
    Level(usize),
    Tensor(Box<RawObj>, Box<RawObj>),
}

impl RawObj {
    pub fn tensor(a: RawObj, b: RawObj) -> RawObj {
        RawObj::Tensor(Box::new(a), Box::new(b))
    }
}

/// Sums exponents; unit factors vanish.
pub fn normalize_object(expr: &RawObj, n: usize) -> Result<ObjNF, TypeError> {
    fn go(e: &RawObj, n: usize, acc: &mut [usize]) -> Result<(), TypeError> {
        match e {
            RawObj::Unit => Ok(()),
            RawObj::Level(k) => {
                if *k >= n {
                    return Err(TypeError::LevelOutOfRange { level: *k, n });
                }
                acc[*k] += 1;
                Ok(())
            }
            RawObj::Tensor(a, b) => {
                go(a, n, acc)?;
                go(b, n, acc)
            }
        }
    }
    let mut acc = vec![0; n];
    go(expr, n, &mut acc)?;
    Ok(ObjNF::from_profile(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_examples() {
        let e = RawObj::tensor(
            RawObj::tensor(RawObj::Level(1), RawObj::Level(0)),
            RawObj::Level(1),
        );
        assert_eq!(normalize_object(&e, 3).unwrap().profile(), &[1, 2, 0]);
        let u = RawObj::tensor(RawObj::Unit, RawObj::Unit);
        assert_eq!(normalize_object(&u, 3).unwrap().profile(), &[0, 0, 0]);
        let v = RawObj::tensor(RawObj::Level(2), RawObj::Unit);
        assert_eq!(normalize_object(&v, 3).unwrap().profile(), &[0, 0, 1]);
        assert_eq!(
            normalize_object(&RawObj::Level(3), 3),
            Err(TypeError::LevelOutOfRange { level: 3, n: 3 })
        );
    }

    #[test]
    fn display() {
        assert_eq!(ObjNF::from_profile(vec![1, 2, 0]).to_string(), "N1^2⊗N0");
        assert_eq!(ObjNF::unit(3).to_string(), "⊤");
    }
}
