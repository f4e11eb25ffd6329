//! The finite chain category `n`, its monoid of monotone endofunctors
//! (taken with the opposite product), coercion generators `T_k`/`G_k`, the
//! 2-cells between them and the adjunction chain.
//!
//! Functors are stored extensionally as image sequences so that equality is
//! decidable and canonical. Since `n` is a poset, a 2-cell between two
//! functors carries no data beyond its endpoints.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("chain size {0} too small (need at least {1})")]
    ChainTooSmall(usize, usize),
    #[error("coercion index {k} out of range for n = {n} (need 0 <= k <= n-2)")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("arity mismatch: maps over chains of size {0} and {1}")]
    Arity(usize, usize),
    #[error("image sequence {0:?} is not a monotone endofunction")]
    NotMonotone(Vec<usize>),
}

/// Number of objects of the chain category `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainIndex(usize);

impl ChainIndex {
    /// Chain sizes below 2 have no coercion generators.
    pub fn new(n: usize) -> Result<Self, OmegaError> {
        if n < 2 {
            return Err(OmegaError::ChainTooSmall(n, 2));
        }
        Ok(ChainIndex(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// The two families of coercion generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoercionKind {
    T,
    G,
}

impl fmt::Display for CoercionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoercionKind::T => write!(f, "T"),
            CoercionKind::G => write!(f, "G"),
        }
    }
}

/// A monotone endofunction of `{0, ..., n-1}`, i.e. an element of `M_n^op`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonotoneMap {
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(images: Vec<usize>) -> Result<Self, OmegaError> {
        let n = images.len();
        let in_range = images.iter().all(|&v| v < n);
        let monotone = images.windows(2).all(|w| w[0] <= w[1]);
        if n == 0 || !in_range || !monotone {
            return Err(OmegaError::NotMonotone(images));
        }
        Ok(MonotoneMap { images })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            images: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// Pointwise order `self <= other`, i.e. a 2-cell `self => other` exists.
    pub fn le(&self, other: &MonotoneMap) -> bool {
        self.n() == other.n() && self.images.iter().zip(&other.images).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// `T_k` sends `k` to `k+1`; `G_k` sends `k+1` to `k`.
pub fn make_coercion(kind: CoercionKind, k: usize, n: ChainIndex) -> Result<MonotoneMap, OmegaError> {
    let n = n.get();
    if k + 2 > n {
        return Err(OmegaError::IndexOutOfRange { k, n });
    }
    let images = (0..n)
        .map(|j| match kind {
            CoercionKind::T if j == k => k + 1,
            CoercionKind::G if j == k + 1 => k,
            _ => j,
        })
        .collect();
    Ok(MonotoneMap { images })
}

/// The generating set `{T_0..T_{n-2}, G_0..G_{n-2}}`.
pub fn generators(n: ChainIndex) -> Vec<(CoercionKind, usize, MonotoneMap)> {
    let mut out = Vec::new();
    for kind in [CoercionKind::T, CoercionKind::G] {
        for k in 0..n.get() - 1 {
            let m = make_coercion(kind, k, n).expect("index in range");
            out.push((kind, k, m));
        }
    }
    out
}

/// Monoid product `fg` of `M_n^op`: first `f`, then `g`.
pub fn compose_maps(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, OmegaError> {
    if f.n() != g.n() {
        return Err(OmegaError::Arity(f.n(), g.n()));
    }
    Ok(MonotoneMap {
        images: f.images.iter().map(|&j| g.images[j]).collect(),
    })
}

/// Closure of the generators and the identity under the monoid product.
pub fn enumerate_monoid(n: ChainIndex) -> BTreeSet<MonotoneMap> {
    let gens: Vec<MonotoneMap> = generators(n).into_iter().map(|(_, _, m)| m).collect();
    let mut seen = BTreeSet::new();
    let mut work = VecDeque::new();
    let id = MonotoneMap::identity(n.get());
    seen.insert(id.clone());
    work.push_back(id);
    while let Some(f) = work.pop_front() {
        for g in &gens {
            let fg = compose_maps(&f, g).expect("same n");
            if seen.insert(fg.clone()) {
                work.push_back(fg);
            }
        }
    }
    seen
}

/// A shortest generator word for every element of the monoid, found by
/// breadth-first search. Words read left to right in monoid-product order.
pub fn generator_words(n: ChainIndex) -> HashMap<MonotoneMap, Vec<(CoercionKind, usize)>> {
    let gens = generators(n);
    let mut words = HashMap::new();
    let mut work = VecDeque::new();
    let id = MonotoneMap::identity(n.get());
    words.insert(id.clone(), Vec::new());
    work.push_back(id);
    while let Some(f) = work.pop_front() {
        let w = words[&f].clone();
        for (kind, k, g) in &gens {
            let fg = compose_maps(&f, g).expect("same n");
            if !words.contains_key(&fg) {
                let mut w2 = w.clone();
                w2.push((*kind, *k));
                words.insert(fg.clone(), w2);
                work.push_back(fg);
            }
        }
    }
    words
}

/// Evaluates a generator word as a monoid product.
pub fn eval_word(n: ChainIndex, word: &[(CoercionKind, usize)]) -> Result<MonotoneMap, OmegaError> {
    let mut acc = MonotoneMap::identity(n.get());
    for &(kind, k) in word {
        acc = compose_maps(&acc, &make_coercion(kind, k, n)?)?;
    }
    Ok(acc)
}

/// The unique natural transformation between two functors of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NatCell {
    pub source: MonotoneMap,
    pub target: MonotoneMap,
}

impl NatCell {
    /// Component at `i`, the arrow `m_{source(i), target(i)}` given by its endpoints.
    pub fn component(&self, i: usize) -> (usize, usize) {
        (self.source.apply(i), self.target.apply(i))
    }

    pub fn components(&self) -> Vec<(usize, usize)> {
        (0..self.source.n()).map(|i| self.component(i)).collect()
    }
}

pub fn cell_exists(f: &MonotoneMap, g: &MonotoneMap) -> Option<NatCell> {
    f.le(g).then(|| NatCell {
        source: f.clone(),
        target: g.clone(),
    })
}

/// `epsilon_k : G_k => id`.
pub fn epsilon(k: usize, n: ChainIndex) -> Result<NatCell, OmegaError> {
    let g = make_coercion(CoercionKind::G, k, n)?;
    Ok(NatCell {
        source: g,
        target: MonotoneMap::identity(n.get()),
    })
}

/// `eta_k : id => T_k`.
pub fn eta(k: usize, n: ChainIndex) -> Result<NatCell, OmegaError> {
    let t = make_coercion(CoercionKind::T, k, n)?;
    Ok(NatCell {
        source: MonotoneMap::identity(n.get()),
        target: t,
    })
}

/// Every 2-cell reachable from the `epsilon_k`, `eta_k` and identities by
/// vertical composition and whiskering on either side with generated functors.
pub fn generate_cells(n: ChainIndex) -> BTreeSet<(MonotoneMap, MonotoneMap)> {
    let functors: Vec<MonotoneMap> = enumerate_monoid(n).into_iter().collect();
    let mut cells: BTreeSet<(MonotoneMap, MonotoneMap)> = BTreeSet::new();
    let mut by_source: HashMap<MonotoneMap, Vec<MonotoneMap>> = HashMap::new();
    let mut by_target: HashMap<MonotoneMap, Vec<MonotoneMap>> = HashMap::new();
    let mut work: VecDeque<(MonotoneMap, MonotoneMap)> = VecDeque::new();

    let mut seeds: Vec<(MonotoneMap, MonotoneMap)> =
        functors.iter().map(|f| (f.clone(), f.clone())).collect();
    for k in 0..n.get() - 1 {
        let e = epsilon(k, n).expect("in range");
        let h = eta(k, n).expect("in range");
        seeds.push((e.source, e.target));
        seeds.push((h.source, h.target));
    }
    for s in seeds {
        if cells.insert(s.clone()) {
            work.push_back(s);
        }
    }
    // Seeds are registered lazily as they leave the queue.
    while let Some((f, g)) = work.pop_front() {
        let mut fresh = Vec::new();
        for u in &functors {
            let fu = compose_maps(&f, u).expect("same n");
            let gu = compose_maps(&g, u).expect("same n");
            fresh.push((fu, gu));
            let uf = compose_maps(u, &f).expect("same n");
            let ug = compose_maps(u, &g).expect("same n");
            fresh.push((uf, ug));
        }
        if let Some(nexts) = by_source.get(&g) {
            for h in nexts {
                fresh.push((f.clone(), h.clone()));
            }
        }
        if let Some(prevs) = by_target.get(&f) {
            for e in prevs {
                fresh.push((e.clone(), g.clone()));
            }
        }
        by_source.entry(f.clone()).or_default().push(g.clone());
        by_target.entry(g.clone()).or_default().push(f.clone());
        for c in fresh {
            if cells.insert(c.clone()) {
                work.push_back(c);
            }
        }
    }
    cells
}

/// Poset adjunction `left ⊣ right` on the chain: `left(x) <= y` iff `x <= right(y)`.
pub fn check_poset_adjunction(left: &MonotoneMap, right: &MonotoneMap) -> bool {
    let n = left.n();
    if n != right.n() {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| (left.apply(x) <= y) == (x <= right.apply(y))))
}

/// Adjunction `f ⊣ g` in `M_n^op`. Taking the opposite product reverses the
/// direction of adjunctions, so this holds iff `g ⊣ f` as maps of the chain.
pub fn check_adjunction(f: &MonotoneMap, g: &MonotoneMap) -> bool {
    check_poset_adjunction(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: usize) -> ChainIndex {
        ChainIndex::new(v).unwrap()
    }

    fn t(k: usize, m: usize) -> MonotoneMap {
        make_coercion(CoercionKind::T, k, n(m)).unwrap()
    }

    fn g(k: usize, m: usize) -> MonotoneMap {
        make_coercion(CoercionKind::G, k, n(m)).unwrap()
    }

    #[test]
    fn coercion_images() {
        assert_eq!(t(0, 3).images(), &[1, 1, 2]);
        assert_eq!(g(0, 3).images(), &[0, 0, 2]);
        assert_eq!(MonotoneMap::identity(3).images(), &[0, 1, 2]);
        assert!(matches!(
            make_coercion(CoercionKind::T, 2, n(3)),
            Err(OmegaError::IndexOutOfRange { k: 2, n: 3 })
        ));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose_maps(&t(0, 3), &g(0, 3)).unwrap().images(), &[0, 0, 2]);
        assert_eq!(compose_maps(&MonotoneMap::identity(3), &g(1, 3)).unwrap(), g(1, 3));
        assert_eq!(compose_maps(&g(0, 3), &t(0, 3)).unwrap().images(), &[1, 1, 2]);
        assert_eq!(
            compose_maps(&g(0, 3), &g(0, 4)),
            Err(OmegaError::Arity(3, 4))
        );
    }

    #[test]
    fn small_monoids() {
        let m2 = enumerate_monoid(n(2));
        assert_eq!(m2.len(), 3);
        assert!(m2.contains(&MonotoneMap::identity(2)));
        assert_eq!(enumerate_monoid(n(3)).len(), 10);
    }

    #[test]
    fn cells() {
        assert!(cell_exists(&g(0, 3), &MonotoneMap::identity(3)).is_some());
        assert!(cell_exists(&MonotoneMap::identity(3), &t(0, 3)).is_some());
        assert!(cell_exists(&t(0, 3), &g(0, 3)).is_none());
        let e = epsilon(0, n(3)).unwrap();
        assert_eq!(e.components(), vec![(0, 0), (0, 1), (2, 2)]);
        let cells = generate_cells(n(3));
        assert!(cells.contains(&(g(0, 3), t(0, 3))));
    }

    #[test]
    fn adjunction_examples() {
        assert!(check_adjunction(&t(0, 3), &g(0, 3)));
        assert!(check_adjunction(&g(0, 3), &t(1, 3)));
        assert!(!check_adjunction(&g(0, 3), &t(0, 3)));
    }

    #[test]
    fn words_evaluate_to_their_element() {
        let words = generator_words(n(4));
        assert_eq!(words.len(), 35);
        for (m, w) in &words {
            assert_eq!(&eval_word(n(4), w).unwrap(), m);
        }
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(MonotoneMap::new(vec![1, 0]).is_err());
        assert!(MonotoneMap::new(vec![0, 3, 3]).is_err());
        assert!(MonotoneMap::new(vec![0, 2, 2]).is_ok());
    }
}
