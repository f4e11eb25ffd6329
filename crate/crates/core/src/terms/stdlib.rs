//! Hyperoperations and structural combinators.

use std::collections::BTreeMap;

use super::obj::ObjNF;
use super::term::MorTerm;

/// `s_k^m ∘ 0_k : ⊤ -> N_k`.
pub fn numeral(k: usize, m: usize) -> MorTerm {
    (0..m).fold(MorTerm::Zero(k), |acc, _| MorTerm::comp(MorTerm::Succ(k), acc))
}

/// Constant map `X -> N_k` with value `m`.
pub fn constant(x: &ObjNF, k: usize, m: usize) -> MorTerm {
    MorTerm::comp(numeral(k, m), MorTerm::Eraser(x.clone()))
}

/// Right unitor `r = l ∘ σ_{X,⊤} : X ⊗ ⊤ -> X`.
pub fn right_unitor(x: &ObjNF) -> MorTerm {
    let unit = ObjNF::unit(x.n());
    MorTerm::comp(MorTerm::Left(x.clone()), MorTerm::Sym(x.clone(), unit))
}

/// `r^{-1} : X -> X ⊗ ⊤`. Objects are profiles, so this is an identity.
pub fn right_unitor_inv(x: &ObjNF) -> MorTerm {
    MorTerm::Id(x.clone())
}

/// `π_1 = r ∘ (X ⊗ τ_Y) : X ⊗ Y -> X`.
pub fn proj1(x: &ObjNF, y: &ObjNF) -> MorTerm {
    MorTerm::comp(
        right_unitor(x),
        MorTerm::tensor(MorTerm::Id(x.clone()), MorTerm::Eraser(y.clone())),
    )
}

/// `π_2 = l ∘ (τ_X ⊗ Y) : X ⊗ Y -> Y`.
pub fn proj2(x: &ObjNF, y: &ObjNF) -> MorTerm {
    MorTerm::comp(
        MorTerm::Left(y.clone()),
        MorTerm::tensor(MorTerm::Eraser(x.clone()), MorTerm::Id(y.clone())),
    )
}

/// `⟨f, g⟩ = (f ⊗ g) ∘ δ_X` for `f, g` out of `X`.
pub fn pair(x: &ObjNF, f: MorTerm, g: MorTerm) -> MorTerm {
    MorTerm::comp(MorTerm::tensor(f, g), MorTerm::Dup(x.clone()))
}

/// `⊕ : N_1 ⊗ N_0 -> N_0`, `⊕(0,y) = y`, `⊕(x+1,y) = s(⊕(x,y))`.
pub fn plus(n: usize) -> MorTerm {
    MorTerm::srr(0, MorTerm::Id(ObjNF::level(n, 0)), MorTerm::Succ(0))
}

/// `⊗ : N_1 ⊗ N_1 -> N_0`, `⊗(0,y) = 0`, `⊗(x+1,y) = ⊕(y, ⊗(x,y))`.
pub fn times(n: usize) -> MorTerm {
    MorTerm::psrr(0, constant(&ObjNF::level(n, 1), 0, 0), plus(n))
}

/// `↑ : N_2 ⊗ N_1 -> N_1`, `↑(x,y) = y^x`; the step is the raised product.
pub fn exp(n: usize) -> MorTerm {
    MorTerm::psrr(1, constant(&ObjNF::level(n, 1), 1, 1), MorTerm::raise(0, times(n)))
}

/// `↑↑ : N_3 ⊗ N_2 -> N_1`, `↑↑(0,y) = y`, `↑↑(x+1,y) = ↑(y, ↑↑(x,y))`.
/// Needs `n >= 4`.
pub fn tetra(n: usize) -> MorTerm {
    MorTerm::psrr(2, MorTerm::Drop(1), exp(n))
}

/// Predecessor by flat recursion, `N_0 -> N_0`.
pub fn pred(n: usize) -> MorTerm {
    MorTerm::fr(0, MorTerm::Zero(0), MorTerm::Id(ObjNF::level(n, 0)))
}

/// Named library terms for a fixed chain size.
#[derive(Debug, Clone)]
pub struct Stdlib {
    pub n: usize,
    terms: BTreeMap<String, MorTerm>,
}

impl Stdlib {
    pub fn get(&self, name: &str) -> Option<&MorTerm> {
        self.terms.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &MorTerm)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The hyperoperations available at this chain size, in growth order.
    pub fn hyperoperations(&self) -> Vec<(&'static str, MorTerm)> {
        ["plus", "times", "exp", "tetra"]
            .into_iter()
            .filter_map(|s| self.get(s).map(|t| (s, t.clone())))
            .collect()
    }
}

pub fn stdlib(n: usize) -> Stdlib {
    let n0 = ObjNF::level(n, 0);
    let n1 = ObjNF::level(n, 1);
    let mut terms = BTreeMap::new();
    let mut put = |name: &str, t: MorTerm| {
        terms.insert(name.to_string(), t);
    };
    put("plus", plus(n));
    put("times", times(n));
    put("exp", exp(n));
    if n >= 4 {
        put("tetra", tetra(n));
    }
    put("pred", pred(n));
    put("proj1", proj1(&n1, &n0));
    put("proj2", proj2(&n1, &n0));
    put("double", pair(&n0, MorTerm::Id(n0.clone()), MorTerm::Id(n0.clone())));
    Stdlib { n, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::infer_type;

    #[test]
    fn library_types() {
        let lib = stdlib(4);
        let want = [
            ("plus", [1, 1, 0, 0], [1, 0, 0, 0]),
            ("times", [0, 2, 0, 0], [1, 0, 0, 0]),
            ("exp", [0, 1, 1, 0], [0, 1, 0, 0]),
            ("tetra", [0, 0, 1, 1], [0, 1, 0, 0]),
            ("pred", [1, 0, 0, 0], [1, 0, 0, 0]),
            ("proj1", [1, 1, 0, 0], [0, 1, 0, 0]),
            ("proj2", [1, 1, 0, 0], [1, 0, 0, 0]),
        ];
        for (name, dom, cod) in want {
            let ty = infer_type(lib.get(name).unwrap(), 4).unwrap();
            assert_eq!(ty.dom.profile(), &dom, "{name}");
            assert_eq!(ty.cod.profile(), &cod, "{name}");
        }
    }

    #[test]
    fn no_tetration_below_four() {
        assert!(stdlib(3).get("tetra").is_none());
        assert!(infer_type(&exp(3), 3).is_ok());
    }

    #[test]
    fn numeral_shape() {
        assert_eq!(numeral(2, 0), MorTerm::Zero(2));
        assert_eq!(numeral(0, 2).size(), 5);
    }
}
