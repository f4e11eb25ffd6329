//! Law checking in the standard model.
//!
//! Two parallel arrows are compared on every argument tuple with entries up
//! to a bound. Beyond [`TUPLE_CAP`] tuples a fixed-seed sample is used
//! instead. Work is split across threads; the first counterexample in
//! enumeration order is reported, so results do not depend on scheduling.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coerce::{
    apply_mor, chi, eps_component, eta_component, safe_comp_square, CoercionOp,
};
use crate::eval::{denote_typed, EvalError, Fuel, LevelTuple, Value};
use crate::terms::stdlib::{self, numeral, pair, proj1, proj2, right_unitor, right_unitor_inv};
use crate::terms::{typecheck, MorTerm, ObjNF, RecKind, TypeError, Typed};

pub const DEFAULT_BOUND: u64 = 8;
/// Largest exhaustive enumeration.
pub const TUPLE_CAP: u64 = 100_000;
/// Sample size and seed used beyond the cap.
pub const SAMPLE_SIZE: usize = 20_000;
pub const SAMPLE_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Counterexample {
        input: Vec<String>,
        lhs: Vec<String>,
        rhs: Vec<String>,
    },
    Exhausted {
        input: Vec<String>,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub lhs: String,
    pub rhs: String,
    pub bound: u64,
    pub tuples: u64,
    pub sampled: bool,
    pub outcome: Outcome,
}

impl DiagramCheck {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

fn strings(v: &[Value]) -> Vec<String> {
    v.iter().map(Value::to_string).collect()
}

/// Argument tuples with entries in `0..=bound`, or a seeded sample.
fn tuples(width: usize, bound: u64) -> (Vec<Vec<u64>>, bool) {
    let base = bound + 1;
    let total = (0..width).try_fold(1u64, |acc, _| acc.checked_mul(base));
    match total {
        Some(t) if t <= TUPLE_CAP => {
            let all = (0..t)
                .map(|mut i| {
                    let mut v = vec![0; width];
                    for slot in v.iter_mut().rev() {
                        *slot = i % base;
                        i /= base;
                    }
                    v
                })
                .collect();
            (all, false)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let sample = (0..SAMPLE_SIZE)
                .map(|_| (0..width).map(|_| rng.gen_range(0..=bound)).collect())
                .collect();
            (sample, true)
        }
    }
}

/// Extensional comparison of two typed arrows.
pub fn check_typed(lhs: &Typed, rhs: &Typed, bound: u64, fuel: Fuel) -> Result<DiagramCheck, TypeError> {
    if lhs.dom != rhs.dom || lhs.cod != rhs.cod {
        return Err(TypeError::Argument(format!(
            "sides differ in type: {} -> {} versus {} -> {}",
            lhs.dom, lhs.cod, rhs.dom, rhs.cod
        )));
    }
    let (inputs, sampled) = tuples(lhs.dom.width(), bound);
    let run = |args: &Vec<u64>| -> Option<Outcome> {
        let v = LevelTuple::from_u64(lhs.dom.clone(), args).expect("width matches");
        let input = || args.iter().map(u64::to_string).collect();
        let l = denote_typed(lhs, &v, fuel);
        let r = denote_typed(rhs, &v, fuel);
        match (l, r) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(a), Ok(b)) => Some(Outcome::Counterexample {
                input: input(),
                lhs: strings(a.entries()),
                rhs: strings(b.entries()),
            }),
            (Err(e), _) | (_, Err(e)) => Some(Outcome::Exhausted {
                input: input(),
                detail: e.to_string(),
            }),
        }
    };
    let outcome = inputs.par_iter().find_map_first(run).unwrap_or(Outcome::Pass);
    Ok(DiagramCheck {
        lhs: lhs.to_term().to_string(),
        rhs: rhs.to_term().to_string(),
        bound,
        tuples: inputs.len() as u64,
        sampled,
        outcome,
    })
}

pub fn check_equal(lhs: &MorTerm, rhs: &MorTerm, n: usize, bound: u64, fuel: Fuel) -> Result<DiagramCheck, TypeError> {
    check_typed(&typecheck(lhs, n)?, &typecheck(rhs, n)?, bound, fuel)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub check: Option<DiagramCheck>,
    /// Set when the law could not be instantiated.
    pub error: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.check.as_ref().is_some_and(DiagramCheck::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub laws: Vec<LawResult>,
    /// Instances deliberately not checked, with the reason.
    pub skipped: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            laws: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed())
    }

    /// Any failure caused by running out of fuel rather than disagreement.
    pub fn exhausted(&self) -> bool {
        self.laws
            .iter()
            .any(|l| matches!(l.check.as_ref().map(|c| &c.outcome), Some(Outcome::Exhausted { .. })))
    }

    pub fn merge(&mut self, other: Report) {
        self.laws.extend(other.laws);
        self.skipped.extend(other.skipped);
    }

    fn law(&mut self, name: impl Into<String>, lhs: Result<MorTerm, TypeError>, rhs: Result<MorTerm, TypeError>, ctx: &Ctx) {
        let name = name.into();
        let result = lhs.and_then(|l| rhs.and_then(|r| check_equal(&l, &r, ctx.n, ctx.bound, ctx.fuel)));
        self.laws.push(match result {
            Ok(check) => LawResult {
                law: name,
                check: Some(check),
                error: None,
            },
            Err(e) => LawResult {
                law: name,
                check: None,
                error: Some(e.to_string()),
            },
        });
    }
}

/// Chain size, bound and fuel shared by a suite.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub n: usize,
    pub bound: u64,
    pub fuel: Fuel,
}

impl Ctx {
    pub fn new(n: usize, bound: u64) -> Self {
        Ctx {
            n,
            bound,
            fuel: Fuel::default(),
        }
    }

    fn with_bound(self, bound: u64) -> Self {
        Ctx { bound, ..self }
    }
}

fn id(x: &ObjNF) -> MorTerm {
    MorTerm::Id(x.clone())
}

fn comp(fs: Vec<MorTerm>) -> MorTerm {
    MorTerm::compose_all(fs).expect("non-empty")
}

/// Counit, coassociativity and cocommutativity of `(δ, τ)` on `N_k`.
pub fn comonoid_suite(k: usize, ctx: Ctx) -> Report {
    let mut r = Report::new(format!("comonoid N{k}"));
    let x = ObjNF::level(ctx.n, k);
    let dup = MorTerm::Dup(x.clone());
    let tau = MorTerm::Eraser(x.clone());
    r.law(
        "r ∘ (X ⊗ τ) ∘ δ = id",
        Ok(comp(vec![right_unitor(&x), MorTerm::tensor(id(&x), tau.clone()), dup.clone()])),
        Ok(id(&x)),
        &ctx,
    );
    r.law(
        "l ∘ (τ ⊗ X) ∘ δ = id",
        Ok(comp(vec![MorTerm::Left(x.clone()), MorTerm::tensor(tau, id(&x)), dup.clone()])),
        Ok(id(&x)),
        &ctx,
    );
    r.law(
        "a ∘ (X ⊗ δ) ∘ δ = (δ ⊗ X) ∘ δ",
        Ok(comp(vec![
            MorTerm::Assoc(x.clone(), x.clone(), x.clone()),
            MorTerm::tensor(id(&x), dup.clone()),
            dup.clone(),
        ])),
        Ok(comp(vec![MorTerm::tensor(dup.clone(), id(&x)), dup.clone()])),
        &ctx,
    );
    r.law(
        "σ ∘ δ = δ",
        Ok(comp(vec![MorTerm::Sym(x.clone(), x.clone()), dup.clone()])),
        Ok(dup),
        &ctx,
    );
    let unit = ObjNF::unit(ctx.n);
    r.law("τ_⊤ = id_⊤", Ok(MorTerm::Eraser(unit.clone())), Ok(id(&unit)), &ctx);
    r
}

/// `(succ)^{⊗}` on every factor of `a`.
fn succ_all(a: &ObjNF) -> MorTerm {
    MorTerm::tensor_all(a.factor_levels().into_iter().map(MorTerm::Succ).collect()).unwrap_or_else(|| id(a))
}

/// Constant point of `a` with every entry `m`.
fn const_all(a: &ObjNF, m: usize) -> MorTerm {
    MorTerm::tensor_all(a.factor_levels().into_iter().map(|j| numeral(j, m)).collect())
        .unwrap_or_else(|| id(&ObjNF::unit(a.n())))
}

/// Sample arrows `z -> a` built from `p : z -> a`.
fn sample_maps(z: &ObjNF, a: &ObjNF, p: &MorTerm) -> Vec<MorTerm> {
    vec![
        p.clone(),
        MorTerm::comp(succ_all(a), p.clone()),
        MorTerm::comp(const_all(a, 3), MorTerm::Eraser(z.clone())),
    ]
}

/// Product laws on `X ⊗ Y` for a small library of arrows out of `X ⊗ Y`.
pub fn cartesian_suite(x: &ObjNF, y: &ObjNF, ctx: Ctx) -> Report {
    let mut r = Report::new(format!("cartesian {x} ⊗ {y}"));
    let z = x.tensor(y);
    let (p1, p2) = (proj1(x, y), proj2(x, y));
    let fs = sample_maps(&z, x, &p1);
    let gs = sample_maps(&z, y, &p2);
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            let pg = pair(&z, f.clone(), g.clone());
            r.law(format!("π1 ∘ ⟨f{i}, g{j}⟩ = f{i}"), Ok(MorTerm::comp(p1.clone(), pg.clone())), Ok(f.clone()), &ctx);
            r.law(format!("π2 ∘ ⟨f{i}, g{j}⟩ = g{j}"), Ok(MorTerm::comp(p2.clone(), pg)), Ok(g.clone()), &ctx);
        }
    }
    r.law("⟨π1, π2⟩ = id", Ok(pair(&z, p1.clone(), p2.clone())), Ok(id(&z)), &ctx);
    r.law("⟨id, id⟩ = δ", Ok(pair(&z, id(&z), id(&z))), Ok(MorTerm::Dup(z.clone())), &ctx);
    let (sx, sy) = (succ_all(x), succ_all(y));
    r.law(
        "f ⊗ g = ⟨f ∘ π1, g ∘ π2⟩",
        Ok(MorTerm::tensor(sx.clone(), sy.clone())),
        Ok(pair(&z, MorTerm::comp(sx, p1), MorTerm::comp(sy, p2))),
        &ctx,
    );
    r
}

/// `SRR_k(id_⊤, id_⊤) ∘ r^{-1}`, the eraser of `N_{k+1}` built by recursion.
pub fn derived_eraser(k: usize, n: usize) -> MorTerm {
    let unit = ObjNF::unit(n);
    MorTerm::comp(
        MorTerm::srr(k, id(&unit), id(&unit)),
        right_unitor_inv(&ObjNF::level(n, k + 1)),
    )
}

/// `SRR_k(0_k ⊗ 0_k, s_k ⊗ s_k) ∘ r^{-1} : N_{k+1} -> N_k ⊗ N_k`.
pub fn diagonal_recursion(k: usize, n: usize) -> MorTerm {
    MorTerm::comp(
        MorTerm::srr(
            k,
            MorTerm::tensor(MorTerm::Zero(k), MorTerm::Zero(k)),
            MorTerm::tensor(MorTerm::Succ(k), MorTerm::Succ(k)),
        ),
        right_unitor_inv(&ObjNF::level(n, k + 1)),
    )
}

/// `G_k` of [`diagonal_recursion`]; a duplication of `N_{k+1}`.
pub fn derived_duplication(k: usize, n: usize) -> Result<MorTerm, TypeError> {
    apply_mor(CoercionOp::g(k), &diagonal_recursion(k, n), n)
}

/// Eraser and duplication obtained by recursion versus the primitives.
pub fn derived_structure_suite(ctx: Ctx) -> Report {
    let n = ctx.n;
    let mut r = Report::new("derived structure");
    for k in 0..n - 1 {
        let nk1 = ObjNF::level(n, k + 1);
        r.law(
            format!("SRR_{k}(id, id) ∘ r⁻¹ = τ_N{}", k + 1),
            Ok(derived_eraser(k, n)),
            Ok(MorTerm::Eraser(nk1.clone())),
            &ctx,
        );
        r.law(
            format!("SRR_{k}(0⊗0, s⊗s) ∘ r⁻¹ = (d_{k} ⊗ d_{k}) ∘ δ"),
            Ok(diagonal_recursion(k, n)),
            Ok(MorTerm::comp(
                MorTerm::tensor(MorTerm::Drop(k), MorTerm::Drop(k)),
                MorTerm::Dup(nk1.clone()),
            )),
            &ctx,
        );
        r.law(
            format!("G_{k}(SRR_{k}(0⊗0, s⊗s) ∘ r⁻¹) = δ_N{}", k + 1),
            derived_duplication(k, n),
            Ok(MorTerm::Dup(nk1)),
            &ctx,
        );
    }
    let unit = ObjNF::unit(n);
    r.law("τ_⊤ = id_⊤", Ok(MorTerm::Eraser(unit.clone())), Ok(id(&unit)), &ctx);
    r
}

/// `δ_Y ∘ f = (f ⊗ f) ∘ δ_X` and `τ_Y ∘ f = τ_X`.
pub fn comonoid_morphism_check(f: &MorTerm, ctx: Ctx) -> Report {
    let mut r = Report::new(format!("comonoid morphism {f}"));
    let ty = match typecheck(f, ctx.n) {
        Ok(t) => t,
        Err(e) => {
            r.laws.push(LawResult {
                law: "well-typed".into(),
                check: None,
                error: Some(e.to_string()),
            });
            return r;
        }
    };
    let (x, y) = (ty.dom, ty.cod);
    r.law(
        "δ ∘ f = (f ⊗ f) ∘ δ",
        Ok(MorTerm::comp(MorTerm::Dup(y.clone()), f.clone())),
        Ok(MorTerm::comp(MorTerm::tensor(f.clone(), f.clone()), MorTerm::Dup(x.clone()))),
        &ctx,
    );
    r.law(
        "τ ∘ f = τ",
        Ok(MorTerm::comp(MorTerm::Eraser(y), f.clone())),
        Ok(MorTerm::Eraser(x)),
        &ctx,
    );
    r
}

/// Base and step diagrams of a recursion node, instantiated with its own
/// base and step.
pub fn recursion_diagrams(name: &str, f: &MorTerm, ctx: Ctx) -> Report {
    let mut r = Report::new(format!("recursion {name}"));
    let MorTerm::Rec { kind, k, base, step } = f else {
        r.skipped.push(format!("{name}: not a recursion node"));
        return r;
    };
    let (kind, k) = (*kind, *k);
    let gty = match typecheck(base, ctx.n) {
        Ok(t) => t,
        Err(e) => {
            r.skipped.push(format!("{name}: {e}"));
            return r;
        }
    };
    let x = gty.dom;
    let level = kind.counter_level(k);
    let counter = ObjNF::level(ctx.n, level);
    let cx = counter.tensor(&x);
    let zero_in = MorTerm::tensor(MorTerm::Zero(level), id(&x));
    let succ_in = MorTerm::tensor(MorTerm::Succ(level), id(&x));
    r.law(
        format!("{kind} base: f ∘ (0 ⊗ X) = g ∘ l"),
        Ok(MorTerm::comp(f.clone(), zero_in)),
        Ok(MorTerm::comp((**base).clone(), MorTerm::Left(x.clone()))),
        &ctx,
    );
    let h = (**step).clone();
    let rhs = match kind {
        RecKind::Flat => h,
        RecKind::SafeRamified => MorTerm::comp(h, f.clone()),
        RecKind::SafeDependent => MorTerm::comp(h, pair(&cx, id(&cx), f.clone())),
        RecKind::Parameterised => MorTerm::comp(h, pair(&cx, proj2(&counter, &x), f.clone())),
    };
    r.law(format!("{kind} step: f ∘ (s ⊗ X) = …"), Ok(MorTerm::comp(f.clone(), succ_in)), Ok(rhs), &ctx);
    r
}

/// Bound suited to each library recursion (growth limits what is feasible).
pub fn feasible_bound(name: &str, bound: u64) -> u64 {
    match name {
        "exp" => bound.min(4),
        "tetra" => bound.min(2),
        _ => bound,
    }
}

pub fn recursion_suite(ctx: Ctx) -> Report {
    let mut r = Report::new("recursion diagrams");
    for (name, t) in stdlib::stdlib(ctx.n).iter() {
        if matches!(t, MorTerm::Rec { .. }) {
            r.merge(recursion_diagrams(name, t, ctx.with_bound(feasible_bound(name, ctx.bound))));
        }
    }
    let tri = index_sum(ctx.n);
    r.merge(recursion_diagrams("sdr-sum", &tri, ctx));
    r
}

/// `SDR_0(id, ⊕ ∘ (N1 ⊗ (l ∘ (τ ⊗ N0)))) : N1 ⊗ N0 -> N0`, i.e.
/// `f(m, x) = x + Σ_{i<m} i`.
pub fn index_sum(n: usize) -> MorTerm {
    let n0 = ObjNF::level(n, 0);
    let n1 = ObjNF::level(n, 1);
    let step = MorTerm::comp(
        stdlib::plus(n),
        MorTerm::tensor(id(&n1), MorTerm::comp(MorTerm::Left(n0.clone()), MorTerm::tensor(MorTerm::Eraser(n0.clone()), id(&n0)))),
    );
    MorTerm::sdr(0, id(&n0), step)
}

/// Arrows used to exercise the coercions.
pub fn coercion_samples(n: usize) -> Vec<(String, MorTerm)> {
    let mut out: Vec<(String, MorTerm)> = stdlib::stdlib(n).iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    for k in 0..n {
        out.push((format!("zero{k}"), MorTerm::Zero(k)));
        out.push((format!("succ{k}"), MorTerm::Succ(k)));
        out.push((format!("dup{k}"), MorTerm::Dup(ObjNF::level(n, k))));
        out.push((format!("erase{k}"), MorTerm::Eraser(ObjNF::level(n, k))));
    }
    for k in 0..n - 1 {
        out.push((format!("drop{k}"), MorTerm::Drop(k)));
        out.push((format!("raise-succ{k}"), MorTerm::raise(k, MorTerm::Succ(k))));
    }
    let mixed = ObjNF::from_profile((0..n).map(|j| usize::from(j < 2) + usize::from(j == 1)).collect());
    out.push(("dup-mixed".into(), MorTerm::Dup(mixed.clone())));
    let n1 = ObjNF::level(n, 1);
    let n0 = ObjNF::level(n, 0);
    out.push(("sym10".into(), MorTerm::Sym(n1.clone(), n0.clone())));
    out.push(("sym-mixed".into(), MorTerm::Sym(mixed.clone(), n0.clone())));
    out.push((
        "succ-tensor".into(),
        MorTerm::tensor(MorTerm::Succ(0), MorTerm::tensor(MorTerm::Succ(1), MorTerm::Drop(0))),
    ));
    out.push(("swap-sum".into(), MorTerm::comp(stdlib::plus(n), MorTerm::Sym(n0, n1))));
    out
}

/// Naturality of `ε_k`, `η_k`, agreement of `G_k f` with the raising rule,
/// and `T_k ε_k = G_k η_k = χ_k` on single-factor objects.
pub fn coercion_suite(ctx: Ctx) -> Report {
    let n = ctx.n;
    let mut r = Report::new("coercions");
    for (name, f) in coercion_samples(n) {
        let Ok(ty) = typecheck(&f, n) else { continue };
        let small = ctx.with_bound(feasible_bound(&name, ctx.bound).min(if ty.dom.width() > 2 { 4 } else { ctx.bound }));
        for k in 0..n - 1 {
            let g = apply_mor(CoercionOp::g(k), &f, n);
            r.law(
                format!("ε_{k} ∘ G_{k} {name} = {name} ∘ ε_{k}"),
                g.clone().and_then(|g| Ok(MorTerm::comp(eps_component(k, &ty.cod)?, g))),
                eps_component(k, &ty.dom).map(|e| MorTerm::comp(f.clone(), e)),
                &small,
            );
            r.law(
                format!("G_{k} {name} = raise_{k} {name}"),
                g,
                Ok(MorTerm::raise(k, f.clone())),
                &small,
            );
            match apply_mor(CoercionOp::t(k), &f, n) {
                Ok(t) => r.law(
                    format!("T_{k} {name} ∘ η_{k} = η_{k} ∘ {name}"),
                    eta_component(k, &ty.dom).map(|e| MorTerm::comp(t, e)),
                    eta_component(k, &ty.cod).map(|e| MorTerm::comp(e, f.clone())),
                    &small,
                ),
                Err(e) => r.skipped.push(format!("T_{k} {name}: {e}")),
            }
        }
    }
    r.merge(chi_suite(ctx.with_bound(ctx.bound.max(10))));
    r
}

/// `T_k(ε_k X) = G_k(η_k X) = χ_k X` for `X = N_j`.
pub fn chi_suite(ctx: Ctx) -> Report {
    let n = ctx.n;
    let mut r = Report::new("chi");
    for k in 0..n - 1 {
        for j in 0..n {
            let x = ObjNF::level(n, j);
            let t_eps = eps_component(k, &x).and_then(|e| apply_mor(CoercionOp::t(k), &e, n));
            let g_eta = eta_component(k, &x).and_then(|e| apply_mor(CoercionOp::g(k), &e, n));
            r.law(format!("T_{k} ε_{k} N{j} = χ_{k} N{j}"), t_eps, chi(k, &x), &ctx);
            r.law(format!("G_{k} η_{k} N{j} = χ_{k} N{j}"), g_eta, chi(k, &x), &ctx);
        }
    }
    r
}

/// Both paths of every admissible safe-composition square.
pub fn safe_square_suite(ctx: Ctx) -> Report {
    let n = ctx.n;
    let mut r = Report::new("safe-composition squares");
    let mut subjects: Vec<(String, MorTerm)> = stdlib::stdlib(n).iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    for m in 1..n {
        subjects.push((format!("id{m}"), id(&ObjNF::level(n, m))));
        subjects.push((format!("succ{m}"), MorTerm::Succ(m)));
    }
    subjects.push((
        "drop-pair".into(),
        MorTerm::tensor(MorTerm::Drop(1), MorTerm::comp(MorTerm::Drop(1), MorTerm::Drop(2))),
    ));
    for (name, f) in subjects {
        let Ok(ty) = typecheck(&f, n) else { continue };
        let Some(m) = ty.cod.top_level().filter(|&m| ty.cod.is_pure_power_of(m)) else {
            r.skipped.push(format!("{name}: codomain {} is not a power of one level", ty.cod));
            continue;
        };
        let local = ctx.with_bound(feasible_bound(&name, ctx.bound));
        for k in 0..m.min(n - 1) {
            let sq = safe_comp_square(&f, k, n);
            r.law(
                format!("square {name}, k = {k}"),
                sq.clone().map(|s| s.0),
                sq.map(|s| s.1),
                &local,
            );
        }
    }
    r
}

/// Runs a named suite.
pub fn run_suite(name: &str, ctx: Ctx) -> Option<Report> {
    Some(match name {
        "comonoid" => {
            let mut r = Report::new("comonoid");
            for k in 0..ctx.n {
                r.merge(comonoid_suite(k, ctx));
            }
            r
        }
        "cartesian" => {
            let n0 = ObjNF::level(ctx.n, 0);
            let n1 = ObjNF::level(ctx.n, 1);
            let mut r = cartesian_suite(&n1, &n1, ctx);
            r.merge(cartesian_suite(&n0, &n1, ctx));
            r.merge(cartesian_suite(&n1.tensor(&n0), &ObjNF::level(ctx.n, 2), ctx));
            r
        }
        "derived" => derived_structure_suite(ctx),
        "recursion" => recursion_suite(ctx),
        "coercion" => coercion_suite(ctx),
        "squares" => safe_square_suite(ctx),
        "morphisms" => {
            let mut r = Report::new("comonoid morphisms");
            for f in [
                MorTerm::Succ(1),
                MorTerm::Id(ObjNF::level(ctx.n, 0)),
                MorTerm::comp(MorTerm::Zero(0), MorTerm::Eraser(ObjNF::level(ctx.n, 1))),
                stdlib::plus(ctx.n),
            ] {
                r.merge(comonoid_morphism_check(&f, ctx));
            }
            r
        }
        "all" => {
            let mut r = Report::new("all");
            for s in SUITES {
                r.merge(run_suite(s, ctx)?);
            }
            r
        }
        _ => return None,
    })
}

pub const SUITES: [&str; 7] = ["comonoid", "cartesian", "derived", "recursion", "coercion", "squares", "morphisms"];

/// First entry of a single-output evaluation, for quick numeric checks.
pub fn scalar(t: &MorTerm, n: usize, args: &[u64], fuel: Fuel) -> Result<u64, EvalError> {
    let out = crate::eval::eval_u64(t, n, args, fuel)?;
    Ok(out[0].to_u64().unwrap_or(u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::new(4, 6)
    }

    #[test]
    fn unitor_and_symmetry() {
        let n = 4;
        let c = ObjNF::level(n, 1);
        let unit = ObjNF::unit(n);
        let lhs = MorTerm::comp(MorTerm::Left(c.clone()), MorTerm::Sym(c.clone(), unit));
        assert!(check_equal(&lhs, &right_unitor(&c), n, 8, Fuel::default()).unwrap().passed());
    }

    #[test]
    fn detects_difference() {
        let one = MorTerm::comp(MorTerm::Succ(0), MorTerm::Zero(0));
        let chk = check_equal(&one, &MorTerm::Zero(0), 4, 8, Fuel::default()).unwrap();
        assert_eq!(
            chk.outcome,
            Outcome::Counterexample {
                input: vec![],
                lhs: vec!["1".into()],
                rhs: vec!["0".into()]
            }
        );
    }

    #[test]
    fn commutativity_of_addition() {
        let n = 4;
        let p = stdlib::plus(n);
        let swapped = promote_and_swap(n);
        let a = MorTerm::comp(p.clone(), MorTerm::tensor(MorTerm::Id(ObjNF::level(n, 1)), MorTerm::Drop(0)));
        assert!(check_equal(&a, &swapped, n, 6, Fuel::default()).unwrap().passed());
    }

    /// `⊕(y, x)` on `N1 ⊗ N1` via the symmetry.
    fn promote_and_swap(n: usize) -> MorTerm {
        let n1 = ObjNF::level(n, 1);
        let a = MorTerm::comp(stdlib::plus(n), MorTerm::tensor(MorTerm::Id(n1.clone()), MorTerm::Drop(0)));
        MorTerm::comp(a, MorTerm::Sym(n1.clone(), n1))
    }

    #[test]
    fn type_mismatch_rejected() {
        assert!(check_equal(&MorTerm::Succ(0), &MorTerm::Succ(1), 4, 3, Fuel::default()).is_err());
    }

    #[test]
    fn suites_pass() {
        for s in SUITES {
            let r = run_suite(s, ctx()).unwrap();
            let bad: Vec<_> = r.failures().map(|l| (l.law.clone(), l.error.clone(), l.check.clone())).collect();
            assert!(bad.is_empty(), "{s}: {bad:#?}");
        }
    }

    #[test]
    fn sampling_beyond_cap() {
        let (v, sampled) = tuples(7, 8);
        assert!(sampled);
        assert_eq!(v.len(), SAMPLE_SIZE);
        let (w, sampled) = tuples(2, 3);
        assert!(!sampled);
        assert_eq!(w.len(), 16);
    }
}
