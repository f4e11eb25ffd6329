//! Finite chain models.
//!
//! Objects of `n ⊸ FinSet` are chains `X_0 -> … -> X_{n-1}` of finite sets
//! of integer tokens `0..size`. A monotone map `φ` acts by reindexing,
//! `(φ^* X)_i = X_{φ(i)}`, with connecting maps the composites of the `h_i`;
//! `T^e_k` and `G^e_k` are reindexing along the generators of the monoid.
//! The presheaf category `Set^{n^op}` is handled through its displayed
//! chain `X_{n-1} -> … -> X_0`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coerce::{apply_obj, CoercionOp};
use crate::omega::{
    compose_maps, eval_word, generator_words, make_coercion, ChainIndex, CoercionKind, MonotoneMap,
};
use crate::terms::ObjNF;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain lengths differ: {0} and {1}")]
    Length(usize, usize),
    #[error("map {index} is not a total function between the given sets")]
    NotAFunction { index: usize },
    #[error("square {index} does not commute")]
    NotNatural { index: usize },
    #[error("coercion index {k} out of range for n = {n}")]
    Range { k: usize, n: usize },
}

/// Components of a chain morphism, one function per position.
type Comps = Vec<Vec<usize>>;

/// Functions `0..a -> 0..b` as image vectors.
fn is_function(f: &[usize], a: usize, b: usize) -> bool {
    f.len() == a && f.iter().all(|&y| y < b)
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// All functions `0..a -> 0..b`.
pub fn functions(a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..a {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..b).map(move |y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChainObj {
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl ChainObj {
    pub fn new(sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        if maps.len() + 1 != sizes.len() {
            return Err(ChainError::Length(sizes.len(), maps.len() + 1));
        }
        for (i, h) in maps.iter().enumerate() {
            if !is_function(h, sizes[i], sizes[i + 1]) {
                return Err(ChainError::NotAFunction { index: i });
            }
        }
        Ok(ChainObj { sizes, maps })
    }

    /// The constant chain on a set of `size` tokens.
    pub fn constant(size: usize, n: usize) -> Self {
        ChainObj {
            sizes: vec![size; n],
            maps: vec![(0..size).collect(); n - 1],
        }
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Composite `X_i -> X_j` of the connecting maps, `i <= j`.
    pub fn along(&self, i: usize, j: usize) -> Vec<usize> {
        assert!(i <= j, "chains only go upwards");
        (i..j).fold((0..self.sizes[i]).collect(), |acc, m| compose(&self.maps[m], &acc))
    }

    /// `φ^* X`.
    pub fn reindex(&self, phi: &MonotoneMap) -> ChainObj {
        let n = self.n();
        ChainObj {
            sizes: (0..n).map(|i| self.sizes[phi.apply(i)]).collect(),
            maps: (0..n - 1).map(|i| self.along(phi.apply(i), phi.apply(i + 1))).collect(),
        }
    }
}

pub fn chain_unit(n: usize) -> ChainObj {
    ChainObj::constant(1, n)
}

/// Pointwise product; the pair `(a, b)` is the token `a·|B_i| + b`.
pub fn chain_tensor(a: &ChainObj, b: &ChainObj) -> Result<ChainObj, ChainError> {
    if a.n() != b.n() {
        return Err(ChainError::Length(a.n(), b.n()));
    }
    let sizes = a.sizes.iter().zip(&b.sizes).map(|(x, y)| x * y).collect();
    let maps = (0..a.n() - 1)
        .map(|i| pair_map(&a.maps[i], &b.maps[i], b.sizes[i], b.sizes[i + 1]))
        .collect();
    Ok(ChainObj { sizes, maps })
}

fn pair_map(f: &[usize], g: &[usize], b_dom: usize, b_cod: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(f.len() * g.len());
    for &x in f {
        for &y in g {
            out.push(x * b_cod + y);
        }
    }
    debug_assert_eq!(out.len(), f.len() * b_dom);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChainMor {
    dom: ChainObj,
    cod: ChainObj,
    components: Vec<Vec<usize>>,
}

impl ChainMor {
    /// Checks totality and every naturality square.
    pub fn new(dom: ChainObj, cod: ChainObj, components: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        if dom.n() != cod.n() || components.len() != dom.n() {
            return Err(ChainError::Length(dom.n(), components.len()));
        }
        for (i, f) in components.iter().enumerate() {
            if !is_function(f, dom.sizes[i], cod.sizes[i]) {
                return Err(ChainError::NotAFunction { index: i });
            }
        }
        for i in 0..dom.n() - 1 {
            if compose(&components[i + 1], &dom.maps[i]) != compose(&cod.maps[i], &components[i]) {
                return Err(ChainError::NotNatural { index: i });
            }
        }
        Ok(ChainMor { dom, cod, components })
    }

    pub fn identity(x: &ChainObj) -> Self {
        ChainMor {
            dom: x.clone(),
            cod: x.clone(),
            components: x.sizes.iter().map(|&s| (0..s).collect()).collect(),
        }
    }

    pub fn dom(&self) -> &ChainObj {
        &self.dom
    }

    pub fn cod(&self) -> &ChainObj {
        &self.cod
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ChainMor) -> Result<ChainMor, ChainError> {
        if f.cod != self.dom {
            return Err(ChainError::NotAFunction { index: 0 });
        }
        Ok(ChainMor {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            components: self.components.iter().zip(&f.components).map(|(g, f)| compose(g, f)).collect(),
        })
    }

    pub fn tensor(&self, g: &ChainMor) -> Result<ChainMor, ChainError> {
        let dom = chain_tensor(&self.dom, &g.dom)?;
        let cod = chain_tensor(&self.cod, &g.cod)?;
        let components = (0..dom.n())
            .map(|i| pair_map(&self.components[i], &g.components[i], g.dom.sizes[i], g.cod.sizes[i]))
            .collect();
        Ok(ChainMor { dom, cod, components })
    }

    /// `φ^* f`: components `f_{φ(i)}`.
    pub fn reindex(&self, phi: &MonotoneMap) -> ChainMor {
        ChainMor {
            dom: self.dom.reindex(phi),
            cod: self.cod.reindex(phi),
            components: (0..self.dom.n()).map(|i| self.components[phi.apply(i)].clone()).collect(),
        }
    }
}

/// `σ_{A,B}`, swapping the pair tokens.
pub fn chain_symmetry(a: &ChainObj, b: &ChainObj) -> Result<ChainMor, ChainError> {
    let components = (0..a.n())
        .map(|i| {
            let (p, q) = (a.sizes[i], b.sizes[i]);
            (0..p * q).map(|t| (t % q) * p + t / q).collect()
        })
        .collect();
    ChainMor::new(chain_tensor(a, b)?, chain_tensor(b, a)?, components)
}

/// `⊤ ⊗ A -> A`.
pub fn chain_left_unitor(a: &ChainObj) -> Result<ChainMor, ChainError> {
    let components = a.sizes.iter().map(|&s| (0..s).collect()).collect();
    ChainMor::new(chain_tensor(&chain_unit(a.n()), a)?, a.clone(), components)
}

fn generator(kind: CoercionKind, k: usize, n: usize) -> Result<MonotoneMap, ChainError> {
    let idx = ChainIndex::new(n).map_err(|_| ChainError::Range { k, n })?;
    make_coercion(kind, k, idx).map_err(|_| ChainError::Range { k, n })
}

/// `T^e_k`: position `k` takes `X_{k+1}`.
pub fn apply_te(k: usize, a: &ChainObj) -> Result<ChainObj, ChainError> {
    Ok(a.reindex(&generator(CoercionKind::T, k, a.n())?))
}

/// `G^e_k`: position `k+1` takes `X_k`.
pub fn apply_ge(k: usize, a: &ChainObj) -> Result<ChainObj, ChainError> {
    Ok(a.reindex(&generator(CoercionKind::G, k, a.n())?))
}

pub fn apply_te_mor(k: usize, f: &ChainMor) -> Result<ChainMor, ChainError> {
    Ok(f.reindex(&generator(CoercionKind::T, k, f.dom.n())?))
}

pub fn apply_ge_mor(k: usize, f: &ChainMor) -> Result<ChainMor, ChainError> {
    Ok(f.reindex(&generator(CoercionKind::G, k, f.dom.n())?))
}

/// The transformation `φ^* -> ψ^*` at `X`, for `φ <= ψ` pointwise.
pub fn transition(phi: &MonotoneMap, psi: &MonotoneMap, x: &ChainObj) -> Result<ChainMor, ChainError> {
    let components = (0..x.n()).map(|i| x.along(phi.apply(i), psi.apply(i))).collect();
    ChainMor::new(x.reindex(phi), x.reindex(psi), components)
}

/// `η^e_k X : X -> T^e_k X`.
pub fn eta_chain(k: usize, x: &ChainObj) -> Result<ChainMor, ChainError> {
    transition(&MonotoneMap::identity(x.n()), &generator(CoercionKind::T, k, x.n())?, x)
}

/// `ε^e_k X : G^e_k X -> X`.
pub fn eps_chain(k: usize, x: &ChainObj) -> Result<ChainMor, ChainError> {
    transition(&generator(CoercionKind::G, k, x.n())?, &MonotoneMap::identity(x.n()), x)
}

/// `X^k`: `k + 1` copies of `X` joined by identities, then `⊤`.
pub fn levels_of(size: usize, k: usize, n: usize) -> ChainObj {
    let sizes: Vec<usize> = (0..n).map(|i| if i <= k { size } else { 1 }).collect();
    let maps = (0..n - 1)
        .map(|i| if i < k { (0..size).collect() } else { vec![0; sizes[i]] })
        .collect();
    ChainObj { sizes, maps }
}

/// Truncated numbers `{0..=bound}` as the level `N^k`.
pub fn truncated_levels(bound: usize, k: usize, n: usize) -> ChainObj {
    levels_of(bound + 1, k, n)
}

/// `0_k : 1^n -> N^k`.
pub fn zero_chain(bound: usize, k: usize, n: usize) -> Result<ChainMor, ChainError> {
    let cod = truncated_levels(bound, k, n);
    let components = vec![vec![0]; n];
    ChainMor::new(chain_unit(n), cod, components)
}

/// `s_k : N^k -> N^k`, successor clipped at the bound.
pub fn succ_chain(bound: usize, k: usize, n: usize) -> Result<ChainMor, ChainError> {
    let x = truncated_levels(bound, k, n);
    let components = (0..n)
        .map(|i| if i <= k { (0..=bound).map(|m| (m + 1).min(bound)).collect() } else { vec![0] })
        .collect();
    ChainMor::new(x.clone(), x, components)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableEntry {
    /// `1^n`.
    Unit,
    /// `X^j`.
    Level(usize),
}

impl std::fmt::Display for TableEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableEntry::Unit => write!(f, "1^n"),
            TableEntry::Level(j) => write!(f, "X^{j}"),
        }
    }
}

/// Row labels in table order: `T_0, G_0, T_1, G_1, …`.
pub fn table_ops(n: usize) -> Vec<CoercionOp> {
    (0..n - 1).flat_map(|k| [CoercionOp::t(k), CoercionOp::g(k)]).collect()
}

fn identify(y: &ChainObj, size: usize) -> Option<TableEntry> {
    let n = y.n();
    if *y == chain_unit(n) {
        return Some(TableEntry::Unit);
    }
    (0..n).find(|&j| *y == levels_of(size, j, n)).map(TableEntry::Level)
}

/// The action of every generator on the levels of a two-token set, read
/// back as levels. `None` marks a result that is not a level.
pub fn levels_table(n: usize) -> Vec<(CoercionOp, Vec<Option<TableEntry>>)> {
    let size = 2;
    table_ops(n)
        .into_iter()
        .map(|op| {
            let phi = generator(op.kind, op.k, n).expect("in range");
            let row = (0..n).map(|j| identify(&levels_of(size, j, n).reindex(&phi), size)).collect();
            (op, row)
        })
        .collect()
}

/// The same entries read off the coercions on level objects, `X^j ↔ N_j`.
pub fn levels_table_from_terms(n: usize) -> Vec<(CoercionOp, Vec<Option<TableEntry>>)> {
    table_ops(n)
        .into_iter()
        .map(|op| {
            let row = (0..n)
                .map(|j| {
                    let y = apply_obj(op, &ObjNF::level(n, j)).ok()?;
                    if y.is_unit() {
                        Some(TableEntry::Unit)
                    } else {
                        y.single_level().filter(|&l| y.alpha(l) == 1).map(TableEntry::Level)
                    }
                })
                .collect();
            (op, row)
        })
        .collect()
}

/// An object of `Set^{n^op}`: `maps[i] : X_{i+1} -> X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PresheafObj {
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl PresheafObj {
    pub fn new(sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        if maps.len() + 1 != sizes.len() {
            return Err(ChainError::Length(sizes.len(), maps.len() + 1));
        }
        for (i, r) in maps.iter().enumerate() {
            if !is_function(r, sizes[i + 1], sizes[i]) {
                return Err(ChainError::NotAFunction { index: i });
            }
        }
        Ok(PresheafObj { sizes, maps })
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `X_{n-1} -> … -> X_0` as a chain; position `d` holds `X_{n-1-d}`.
    pub fn display(&self) -> ChainObj {
        let n = self.n();
        ChainObj {
            sizes: self.sizes.iter().rev().copied().collect(),
            maps: (0..n - 1).map(|d| self.maps[n - 2 - d].clone()).collect(),
        }
    }

    pub fn from_display(c: &ChainObj) -> Self {
        let n = c.n();
        PresheafObj {
            sizes: c.sizes.iter().rev().copied().collect(),
            maps: (0..n - 1).map(|i| c.maps[n - 2 - i].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresheafMor {
    dom: PresheafObj,
    cod: PresheafObj,
    components: Vec<Vec<usize>>,
}

impl PresheafMor {
    /// Checks `f_i ∘ r_i = r'_i ∘ f_{i+1}` for every restriction.
    pub fn new(dom: PresheafObj, cod: PresheafObj, components: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        if dom.n() != cod.n() || components.len() != dom.n() {
            return Err(ChainError::Length(dom.n(), components.len()));
        }
        for (i, f) in components.iter().enumerate() {
            if !is_function(f, dom.sizes[i], cod.sizes[i]) {
                return Err(ChainError::NotAFunction { index: i });
            }
        }
        for i in 0..dom.n() - 1 {
            if compose(&components[i], &dom.maps[i]) != compose(&cod.maps[i], &components[i + 1]) {
                return Err(ChainError::NotNatural { index: i });
            }
        }
        Ok(PresheafMor { dom, cod, components })
    }

    pub fn from_display(f: &ChainMor) -> Result<Self, ChainError> {
        Self::new(
            PresheafObj::from_display(&f.dom),
            PresheafObj::from_display(&f.cod),
            f.components.iter().rev().cloned().collect(),
        )
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }
}

/// `T^ê_k`, `G^ê_k`: the chain coercions on the displayed chain.
pub fn presheaf_coercion(op: CoercionOp, p: &PresheafObj) -> Result<PresheafObj, ChainError> {
    let phi = generator(op.kind, op.k, p.n())?;
    Ok(PresheafObj::from_display(&p.display().reindex(&phi)))
}

/// The reading in which the subindex reversal also swaps `T` and `G`.
/// It admits no unit `X -> T^ê_k X` in general; kept to exhibit that.
pub fn presheaf_coercion_literal(op: CoercionOp, p: &PresheafObj) -> Result<PresheafObj, ChainError> {
    let swapped = match op.kind {
        CoercionKind::T => CoercionOp::g(op.k),
        CoercionKind::G => CoercionOp::t(op.k),
    };
    presheaf_coercion(swapped, p)
}

/// `η^ê_k P : P -> T^ê_k P`, checked as a presheaf morphism.
pub fn presheaf_eta(k: usize, p: &PresheafObj) -> Result<PresheafMor, ChainError> {
    PresheafMor::from_display(&eta_chain(k, &p.display())?)
}

/// `ε^ê_k P : G^ê_k P -> P`.
pub fn presheaf_eps(k: usize, p: &PresheafObj) -> Result<PresheafMor, ChainError> {
    PresheafMor::from_display(&eps_chain(k, &p.display())?)
}

/// Every chain of length `n` whose sets have at most `max_size` tokens.
pub fn enumerate_chains(n: usize, max_size: usize) -> Vec<ChainObj> {
    let mut partial: Vec<(Vec<usize>, Vec<Vec<usize>>)> = (0..=max_size).map(|s| (vec![s], Vec::new())).collect();
    for _ in 1..n {
        partial = partial
            .into_iter()
            .flat_map(|(sizes, maps)| {
                let last = *sizes.last().expect("non-empty");
                (0..=max_size)
                    .flat_map(|s| functions(last, s).into_iter().map(move |h| (s, h)))
                    .map(|(s, h)| {
                        let mut sz = sizes.clone();
                        sz.push(s);
                        let mut mp = maps.clone();
                        mp.push(h);
                        (sz, mp)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    partial.into_iter().map(|(sizes, maps)| ChainObj { sizes, maps }).collect()
}

/// Every chain morphism `x -> y`.
pub fn morphisms(x: &ChainObj, y: &ChainObj) -> Vec<ChainMor> {
    morphism_components(x, y)
        .into_iter()
        .map(|components| ChainMor {
            dom: x.clone(),
            cod: y.clone(),
            components,
        })
        .collect()
}

fn morphism_components(x: &ChainObj, y: &ChainObj) -> Vec<Comps> {
    let n = x.n();
    let tables: Vec<Vec<Vec<usize>>> = (0..n).map(|i| functions(x.sizes[i], y.sizes[i])).collect();
    let mut out = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn go(i: usize, x: &ChainObj, y: &ChainObj, tables: &[Vec<Vec<usize>>], comps: &mut Comps, out: &mut Vec<Comps>) {
        if i == tables.len() {
            out.push(comps.clone());
            return;
        }
        for f in &tables[i] {
            let fits = i == 0 || (0..x.sizes[i - 1]).all(|t| f[x.maps[i - 1][t]] == y.maps[i - 1][comps[i - 1][t]]);
            if fits {
                comps.push(f.clone());
                go(i + 1, x, y, tables, comps, out);
                comps.pop();
            }
        }
    }
    go(0, x, y, &tables, &mut comps, &mut out);
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: String,
    pub instances: u64,
    pub failures: u64,
    pub example: Option<String>,
}

impl LawTally {
    fn new(law: &str) -> Self {
        LawTally {
            law: law.into(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(what());
            }
        }
    }

    fn absorb(&mut self, other: LawTally) {
        self.instances += other.instances;
        self.failures += other.failures;
        if self.example.is_none() {
            self.example = other.example;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLawReport {
    pub n: usize,
    pub max_size: usize,
    pub objects: usize,
    pub laws: Vec<LawTally>,
}

impl ChainLawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failures == 0 && l.instances > 0)
    }
}

/// Number of endomorphisms of each object used for binary morphism laws.
const TENSOR_ENDOS: usize = 2;

/// Relations `w·g = u` with `u` the chosen shortest word for `eval(w·g)`;
/// these generate every relation between generator words.
pub fn monoid_relations(n: usize) -> Vec<(Vec<(CoercionKind, usize)>, Vec<(CoercionKind, usize)>)> {
    let idx = ChainIndex::new(n).expect("n >= 1");
    let words = generator_words(idx);
    let mut out = Vec::new();
    let mut ws: Vec<_> = words.values().cloned().collect();
    ws.sort();
    for w in ws {
        for kind in [CoercionKind::T, CoercionKind::G] {
            for k in 0..n - 1 {
                let mut wg = w.clone();
                wg.push((kind, k));
                let m = eval_word(idx, &wg).expect("valid word");
                let u = words[&m].clone();
                if u != wg {
                    out.push((wg, u));
                }
            }
        }
    }
    out
}

/// `ℑ(a_1 … a_m) = ℑ(a_1) ∘ … ∘ ℑ(a_m)`: the last letter acts first.
pub fn apply_word(word: &[(CoercionKind, usize)], x: &ChainObj) -> ChainObj {
    word.iter()
        .rev()
        .fold(x.clone(), |acc, &(kind, k)| acc.reindex(&generator(kind, k, x.n()).expect("in range")))
}

fn compose_comps(g: &[Vec<usize>], f: &[Vec<usize>]) -> Comps {
    g.iter().zip(f).map(|(g, f)| compose(g, f)).collect()
}

fn reindex_comps(f: &[Vec<usize>], phi: &MonotoneMap) -> Comps {
    (0..f.len()).map(|i| f[phi.apply(i)].clone()).collect()
}

/// Presheaf naturality of display-ordered components between displayed
/// chains, checked in presheaf orientation.
fn presheaf_natural(dom: &PresheafObj, cod: &PresheafObj, display: &[Vec<usize>]) -> bool {
    let n = dom.n();
    let c = |i: usize| &display[n - 1 - i];
    (0..n).all(|i| is_function(c(i), dom.sizes[i], cod.sizes[i]))
        && (0..n - 1).all(|i| (0..dom.sizes[i + 1]).all(|t| c(i)[dom.maps[i][t]] == cod.maps[i][c(i + 1)[t]]))
}

/// `(g ∘ f)_i = (h ∘ e)_i` at every position, without building composites.
/// `f`, `g`, `e`, `h` may be reindexed through `pf`, `pg`, `pe`, `ph`.
fn squares_agree(g: (&[Vec<usize>], &[usize]), f: (&[Vec<usize>], &[usize]), h: (&[Vec<usize>], &[usize]), e: (&[Vec<usize>], &[usize])) -> bool {
    (0..f.1.len()).all(|i| {
        let (fi, gi, ei, hi) = (&f.0[f.1[i]], &g.0[g.1[i]], &e.0[e.1[i]], &h.0[h.1[i]]);
        fi.len() == ei.len() && (0..fi.len()).all(|t| gi[fi[t]] == hi[ei[t]])
    })
}

/// Per-object data shared by the law checks.
struct Prepared {
    obj: ChainObj,
    pre: PresheafObj,
    /// `φ^* X` and its presheaf for every generator, in [`table_ops`] order.
    re: Vec<ChainObj>,
    re_pre: Vec<PresheafObj>,
    /// Components of `η^e_k X` and `ε^e_k X`, when they are chain morphisms.
    eta: Vec<Option<Comps>>,
    eps: Vec<Option<Comps>>,
    endos: Vec<Comps>,
}

/// Exhaustive comprehension laws on chains with sets of at most `max_size`
/// tokens: the symmetric monoidal functor equations, unit and counit at
/// `⊤`, naturality, functoriality and the monoid relations, for both the
/// chain model and its presheaf mirror.
pub fn comprehension_laws(n: usize, max_size: usize) -> ChainLawReport {
    let objs = enumerate_chains(n, max_size);
    let ops: Vec<(CoercionOp, MonotoneMap)> = table_ops(n)
        .into_iter()
        .map(|op| (op, generator(op.kind, op.k, n).expect("in range")))
        .collect();
    let unit = chain_unit(n);
    let id_n = MonotoneMap::identity(n);
    let mut laws = Vec::new();

    // ⊤ and the units at ⊤.
    let mut top = LawTally::new("T^e ⊤ = G^e ⊤ = ⊤");
    let mut top_cells = LawTally::new("η^e ⊤ = ε^e ⊤ = 1_⊤");
    for (op, phi) in &ops {
        top.record(unit.reindex(phi) == unit, || format!("{op}"));
        let k = op.k;
        let cells_ok = eta_chain(k, &unit).is_ok_and(|e| e == ChainMor::identity(&unit))
            && eps_chain(k, &unit).is_ok_and(|e| e == ChainMor::identity(&unit));
        top_cells.record(cells_ok, || format!("k = {k}"));
    }
    laws.push(top);
    laws.push(top_cells);

    let mut cells = LawTally::new("η^e, ε^e components are chain morphisms");
    let mut pre_cells = LawTally::new("presheaf η^ê, ε^ê are presheaf morphisms");
    let prepared: Vec<Prepared> = objs
        .iter()
        .map(|x| {
            let p = PresheafObj::from_display(x);
            let re: Vec<ChainObj> = ops.iter().map(|(_, phi)| x.reindex(phi)).collect();
            let re_pre = re.iter().map(PresheafObj::from_display).collect();
            let mut eta = Vec::new();
            let mut eps = Vec::new();
            for k in 0..n - 1 {
                let (e, c) = (eta_chain(k, x), eps_chain(k, x));
                cells.record(e.is_ok() && c.is_ok(), || format!("k = {k} at {x:?}"));
                let ok = presheaf_eta(k, &p).is_ok() && presheaf_eps(k, &p).is_ok();
                pre_cells.record(ok, || format!("k = {k} at {p:?}"));
                eta.push(e.ok().map(|m| m.components));
                eps.push(c.ok().map(|m| m.components));
            }
            let endos = morphism_components(x, x);
            Prepared {
                obj: x.clone(),
                pre: p,
                re,
                re_pre,
                eta,
                eps,
                endos,
            }
        })
        .collect();
    laws.push(cells);
    laws.push(pre_cells);

    // Naturality in both models, over every morphism between enumerated chains.
    let natural: Vec<(LawTally, LawTally)> = (0..objs.len())
        .into_par_iter()
        .map(|a| {
            let mut nat = LawTally::new("η^e, ε^e natural");
            let mut pre_nat = LawTally::new("presheaf η^ê, ε^ê natural");
            let x = &prepared[a];
            let ident: Vec<usize> = (0..n).collect();
            for y in &prepared {
                for f in morphism_components(&x.obj, &y.obj) {
                    let pre_ok = presheaf_natural(&x.pre, &y.pre, &f);
                    for k in 0..n - 1 {
                        let (t, g) = (2 * k, 2 * k + 1);
                        let (Some(ex), Some(ey), Some(cx), Some(cy)) = (&x.eta[k], &y.eta[k], &x.eps[k], &y.eps[k]) else {
                            continue;
                        };
                        let (ti, gi) = (ops[t].1.images(), ops[g].1.images());
                        // T f ∘ η_X = η_Y ∘ f and ε_Y ∘ G f = f ∘ ε_X.
                        let ok = squares_agree((&f, ti), (ex, &ident), (ey, &ident), (&f, &ident))
                            && squares_agree((cy, &ident), (&f, gi), (&f, &ident), (cx, &ident));
                        nat.record(ok, || format!("k = {k}, f = {f:?}"));
                        let ok = pre_ok
                            && presheaf_natural(&x.re_pre[t], &y.re_pre[t], &reindex_comps(&f, &ops[t].1))
                            && presheaf_natural(&x.re_pre[g], &y.re_pre[g], &reindex_comps(&f, &ops[g].1));
                        pre_nat.record(ok, || format!("k = {k}, f = {f:?}"));
                    }
                }
            }
            (nat, pre_nat)
        })
        .collect();
    let mut nat = LawTally::new("η^e, ε^e natural");
    let mut pre_nat = LawTally::new("presheaf η^ê, ε^ê natural");
    for (a, b) in natural {
        nat.absorb(a);
        pre_nat.absorb(b);
    }
    laws.push(nat);
    laws.push(pre_nat);

    // Functoriality on endomorphisms.
    let mut ids = LawTally::new("coercions preserve identities");
    let mut comp = LawTally::new("coercions preserve composition");
    for x in &prepared {
        for (o, phi) in ops.iter().map(|(_, phi)| phi).chain(std::iter::once(&id_n)).enumerate() {
            let rx = x.re.get(o).cloned().unwrap_or_else(|| x.obj.clone());
            ids.record(ChainMor::identity(&x.obj).reindex(phi) == ChainMor::identity(&rx), || {
                format!("{:?}", x.obj)
            });
            for f in &x.endos {
                let rf = reindex_comps(f, phi);
                for g in &x.endos {
                    let lhs = reindex_comps(&compose_comps(g, f), phi);
                    comp.record(lhs == compose_comps(&reindex_comps(g, phi), &rf), || format!("{g:?} ∘ {f:?}"));
                }
            }
        }
    }
    laws.push(ids);
    laws.push(comp);

    // Monoidal structure over every pair of objects.
    let binary: Vec<[LawTally; 3]> = (0..objs.len())
        .into_par_iter()
        .map(|a| {
            let mut t = [
                LawTally::new("φ^*(X ⊗ Y) = φ^*X ⊗ φ^*Y"),
                LawTally::new("φ^*(f ⊗ g) = φ^*f ⊗ φ^*g"),
                LawTally::new("φ^*σ = σ"),
            ];
            let x = &prepared[a];
            for y in &prepared {
                let xy = chain_tensor(&x.obj, &y.obj).expect("same n");
                let sigma = chain_symmetry(&x.obj, &y.obj).expect("natural");
                for (o, (_, phi)) in ops.iter().enumerate() {
                    let (px, py) = (&x.re[o], &y.re[o]);
                    t[0].record(xy.reindex(phi) == chain_tensor(px, py).expect("same n"), || {
                        format!("{:?} ⊗ {:?}", x.obj, y.obj)
                    });
                    t[2].record(sigma.reindex(phi) == chain_symmetry(px, py).expect("natural"), || {
                        format!("{:?}, {:?}", x.obj, y.obj)
                    });
                }
                for f in x.endos.iter().take(TENSOR_ENDOS) {
                    for g in y.endos.iter().take(TENSOR_ENDOS) {
                        let fg: Comps = (0..n).map(|i| pair_map(&f[i], &g[i], y.obj.sizes[i], y.obj.sizes[i])).collect();
                        for (o, (_, phi)) in ops.iter().enumerate() {
                            let py = &y.re[o];
                            let ok = (0..n).all(|i| {
                                let j = phi.apply(i);
                                fg[j] == pair_map(&f[j], &g[j], py.sizes[i], py.sizes[i])
                            });
                            t[1].record(ok, || format!("{f:?} ⊗ {g:?}"));
                        }
                    }
                }
            }
            t
        })
        .collect();
    let mut acc = [
        LawTally::new("φ^*(X ⊗ Y) = φ^*X ⊗ φ^*Y"),
        LawTally::new("φ^*(f ⊗ g) = φ^*f ⊗ φ^*g"),
        LawTally::new("φ^*σ = σ"),
    ];
    for t in binary {
        for (slot, part) in acc.iter_mut().zip(t) {
            slot.absorb(part);
        }
    }
    laws.extend(acc);

    // Monoid relations, and agreement of words with reindexing by their value.
    let idx = ChainIndex::new(n).expect("n >= 1");
    let mut rel = LawTally::new("generator relations of M_n^op hold");
    let mut word = LawTally::new("ℑ(w) = eval(w)^*");
    let relations = monoid_relations(n);
    for x in &objs {
        for (w, u) in &relations {
            let xw = apply_word(w, x);
            rel.record(xw == apply_word(u, x), || format!("{w:?} = {u:?}"));
            let m = eval_word(idx, w).expect("valid");
            word.record(xw == x.reindex(&m), || format!("{w:?}"));
        }
    }
    laws.push(rel);
    laws.push(word);

    // Products in the monoid act contravariantly on reindexing.
    let mut contra = LawTally::new("(φψ)^* = φ^* ∘ ψ^*");
    for (_, phi) in &ops {
        for (_, psi) in &ops {
            let prod = compose_maps(phi, psi).expect("same n");
            for x in &objs {
                contra.record(x.reindex(&prod) == x.reindex(psi).reindex(phi), || format!("{phi:?} {psi:?}"));
            }
        }
    }
    laws.push(contra);

    ChainLawReport {
        n,
        max_size,
        objects: objs.len(),
        laws,
    }
}

/// `0_k` and `s_k` on `{0..=bound}` for every `k`, in both orientations.
pub fn number_chain_squares(n: usize, bound: usize) -> LawTally {
    let mut t = LawTally::new("0_k and s_k squares commute");
    for k in 0..n {
        for mor in [zero_chain(bound, k, n), succ_chain(bound, k, n)] {
            let ok = mor.as_ref().is_ok_and(|m| PresheafMor::from_display(m).is_ok());
            t.record(ok, || format!("k = {k}: {mor:?}"));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_and_unit() {
        let a = ChainObj::new(vec![2, 2], vec![vec![1, 0]]).unwrap();
        let b = ChainObj::new(vec![3, 3], vec![vec![0, 0, 2]]).unwrap();
        let ab = chain_tensor(&a, &b).unwrap();
        assert_eq!(ab.sizes(), &[6, 6]);
        // (0, 2) -> (1, 2), token 2 -> 5.
        assert_eq!(ab.maps()[0][2], 5);
        assert_eq!(chain_tensor(&chain_unit(2), &a).unwrap(), a);
        assert!(chain_left_unitor(&a).is_ok());
        let s = chain_symmetry(&a, &b).unwrap();
        // (1, 2) = 5 -> (2, 1) = 5.
        assert_eq!(s.components()[0][5], 5);
        assert_eq!(s.components()[0][1], 2);
    }

    #[test]
    fn levels() {
        let n = 4;
        assert_eq!(levels_of(3, 0, n).sizes(), &[3, 1, 1, 1]);
        assert_eq!(levels_of(3, n - 1, n), ChainObj::constant(3, n));
        assert_eq!(apply_ge(0, &levels_of(2, 0, n)).unwrap(), levels_of(2, 1, n));
        assert_eq!(apply_te(0, &levels_of(2, 0, n)).unwrap(), chain_unit(n));
        assert_eq!(apply_ge(n - 2, &levels_of(2, n - 2, n)).unwrap(), levels_of(2, n - 1, n));
        assert!(apply_te(n - 1, &levels_of(2, 0, n)).is_err());
    }

    #[test]
    fn table_matches_terms() {
        for n in 3..=5 {
            assert_eq!(levels_table(n), levels_table_from_terms(n));
        }
    }

    #[test]
    fn non_natural_rejected() {
        let x = ChainObj::new(vec![2, 2], vec![vec![0, 1]]).unwrap();
        let err = ChainMor::new(x.clone(), x, vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, ChainError::NotNatural { index: 0 });
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_chains(3, 2).len(), 47);
        assert_eq!(enumerate_chains(4, 2).len(), 211);
        let x = ChainObj::constant(2, 2);
        assert_eq!(morphisms(&x, &x).len(), 4);
    }

    #[test]
    fn literal_presheaf_reading_has_no_unit() {
        // P_0 = {0}, P_1 = ∅. The literal T^ê_0 empties position 0, so a
        // unit P -> T^ê_0 P would need a function {0} -> ∅.
        let p = PresheafObj::new(vec![1, 0], vec![vec![]]).unwrap();
        let lit = presheaf_coercion_literal(CoercionOp::t(0), &p).unwrap();
        let needed: Vec<_> = (0..2).map(|i| functions(p.sizes()[i], lit.sizes()[i])).collect();
        assert!(needed.iter().any(Vec::is_empty));
        assert!(presheaf_eta(0, &p).is_ok());
    }

    #[test]
    fn laws_small() {
        let r = comprehension_laws(3, 2);
        assert!(r.passed(), "{:#?}", r.laws);
        assert!(number_chain_squares(4, 6).failures == 0);
    }
}
