//! The coercions `T_k`, `G_k` acting on objects and terms, their unit and
//! counit components, `χ_k`, the constant composites `k̄` and the
//! safe-composition squares.
//!
//! Values of an object are laid out level by level (see `eval`). When a
//! coercion merges level `k` into a neighbour, the moved entries come first
//! at the merged level. The image of a term is built so that it commutes
//! with this relabelling of values; where the layout of a tensor of coerced
//! objects differs from that of the coerced tensor, permutation terms made
//! of symmetries are inserted.

use std::fmt;

use serde::Serialize;

use crate::omega::{CoercionKind, MonotoneMap};
use crate::terms::perm::reorder_term;
use crate::terms::{typecheck, MorTerm, ObjNF, RecKind, TNode, TypeError, Typed};

/// A coercion generator `T_k` or `G_k` acting on the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoercionOp {
    pub kind: CoercionKind,
    pub k: usize,
}

impl CoercionOp {
    pub fn t(k: usize) -> Self {
        CoercionOp { kind: CoercionKind::T, k }
    }

    pub fn g(k: usize) -> Self {
        CoercionOp { kind: CoercionKind::G, k }
    }

    /// Parses `T3` / `G0`.
    pub fn parse(s: &str) -> Option<Self> {
        let (head, idx) = s.split_at(1.min(s.len()));
        let k = idx.parse().ok()?;
        match head {
            "T" | "t" => Some(Self::t(k)),
            "G" | "g" => Some(Self::g(k)),
            _ => None,
        }
    }

    fn check(self, n: usize) -> Result<(), TypeError> {
        if self.k + 2 > n {
            return Err(TypeError::LevelOutOfRange { level: self.k, n });
        }
        Ok(())
    }

    /// New level of a factor `N_j`; `None` when the factor is deleted.
    pub fn level_image(self, j: usize) -> Option<usize> {
        match self.kind {
            CoercionKind::T if j == self.k => self.k.checked_sub(1),
            CoercionKind::G if j == self.k => Some(self.k + 1),
            _ => Some(j),
        }
    }

    /// Whether the coercion leaves `x` untouched.
    pub fn fixes(self, x: &ObjNF) -> bool {
        x.alpha(self.k) == 0
    }
}

impl fmt::Display for CoercionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.k)
    }
}

pub fn apply_obj(c: CoercionOp, x: &ObjNF) -> Result<ObjNF, TypeError> {
    c.check(x.n())?;
    let mut alphas = vec![0; x.n()];
    for (j, &a) in x.profile().iter().enumerate() {
        if let Some(t) = c.level_image(j) {
            alphas[t] += a;
        }
    }
    Ok(ObjNF::from_profile(alphas))
}

/// Applies the coercions in order, first element first.
pub fn apply_obj_seq(ops: &[CoercionOp], x: &ObjNF) -> Result<ObjNF, TypeError> {
    ops.iter().try_fold(x.clone(), |acc, &c| apply_obj(c, &acc))
}

/// Applies the coercions to a term in order, first element first.
pub fn apply_mor_seq(ops: &[CoercionOp], f: &MorTerm, n: usize) -> Result<MorTerm, TypeError> {
    ops.iter().try_fold(f.clone(), |acc, &c| apply_mor(c, &acc, n))
}

/// Object action of the chain functor `φ`: `N_j` goes to `N_i` for the
/// largest `i` with `φ(i) <= j`, or vanishes when there is none.
pub fn relabel_obj(phi: &MonotoneMap, x: &ObjNF) -> ObjNF {
    let n = x.n();
    let mut alphas = vec![0; n];
    for (j, &a) in x.profile().iter().enumerate() {
        if let Some(i) = (0..n).rev().find(|&i| phi.apply(i) <= j) {
            alphas[i] += a;
        }
    }
    ObjNF::from_profile(alphas)
}

type Tag = (usize, usize, usize);

/// Layouts of the entries of `ops[0] ⊗ … ⊗ ops[m-1]` after `c`: first as a
/// tensor of coerced factors, then as the coerced tensor. Tags are
/// `(operand, original level, ordinal)`.
fn layouts(c: CoercionOp, ops: &[&ObjNF]) -> (Vec<Vec<Tag>>, Vec<Vec<Tag>>) {
    let n = ops[0].n();
    let mut tags: Vec<(usize, Tag)> = Vec::new();
    for (i, x) in ops.iter().enumerate() {
        for j in 0..n {
            if let Some(t) = c.level_image(j) {
                for o in 0..x.alpha(j) {
                    tags.push((t, (i, j, o)));
                }
            }
        }
    }
    let stays = |j: usize| j != c.k;
    let mut tensor_of: Vec<Vec<Tag>> = vec![Vec::new(); n];
    let mut of_tensor: Vec<Vec<Tag>> = vec![Vec::new(); n];
    for &(t, tag) in &tags {
        tensor_of[t].push(tag);
        of_tensor[t].push(tag);
    }
    for v in &mut tensor_of {
        v.sort_by_key(|&(i, j, o)| (i, stays(j), o));
    }
    for v in &mut of_tensor {
        v.sort_by_key(|&(i, j, o)| (stays(j), i, o));
    }
    (tensor_of, of_tensor)
}

/// `P : c X_1 ⊗ … ⊗ c X_m -> c(X_1 ⊗ … ⊗ X_m)`, or its inverse.
fn comparison(c: CoercionOp, ops: &[&ObjNF], inverse: bool) -> Result<Option<MorTerm>, TypeError> {
    let total = ops.iter().skip(1).fold(ops[0].clone(), |acc, x| acc.tensor(x));
    let shape = apply_obj(c, &total)?;
    let (tensor_of, of_tensor) = layouts(c, ops);
    Ok(if inverse {
        reorder_term(&shape, &of_tensor, &tensor_of)
    } else {
        reorder_term(&shape, &tensor_of, &of_tensor)
    })
}

/// `fs[0] ∘ fs[1] ∘ …`, skipping absent identities.
fn chain(fs: Vec<Option<MorTerm>>) -> MorTerm {
    MorTerm::compose_all(fs.into_iter().flatten().collect()).expect("at least one morphism")
}

/// Image of a well-typed term under a coercion.
pub fn apply_mor(c: CoercionOp, f: &MorTerm, n: usize) -> Result<MorTerm, TypeError> {
    c.check(n)?;
    let typed = typecheck(f, n)?;
    Coercer { c, n }.go(&typed)
}

struct Coercer {
    c: CoercionOp,
    n: usize,
}

impl Coercer {
    fn obj(&self, x: &ObjNF) -> Result<ObjNF, TypeError> {
        apply_obj(self.c, x)
    }

    fn strict(&self, detail: impl Into<String>) -> TypeError {
        TypeError::Strictness {
            k: self.c.k,
            detail: detail.into(),
        }
    }

    fn go(&self, t: &Typed) -> Result<MorTerm, TypeError> {
        let c = self.c;
        if c.fixes(&t.dom) && c.fixes(&t.cod) {
            return Ok(t.to_term());
        }
        let is_t = c.kind == CoercionKind::T;
        let k = c.k;
        match &t.node {
            TNode::Id => Ok(MorTerm::Id(self.obj(&t.dom)?)),
            TNode::Zero(_) | TNode::Succ(_) => {
                let zero = matches!(t.node, TNode::Zero(_));
                let leaf = |j: usize| if zero { MorTerm::Zero(j) } else { MorTerm::Succ(j) };
                Ok(match c.level_image(k) {
                    Some(j) => leaf(j),
                    None => MorTerm::Id(ObjNF::unit(self.n)),
                })
            }
            TNode::Drop(j) => {
                let j = *j;
                Ok(match (is_t, k == j) {
                    // T_{j+1}: both ends land on N_j.
                    (true, false) => MorTerm::Id(ObjNF::level(self.n, j)),
                    (true, true) if j == 0 => MorTerm::Eraser(ObjNF::level(self.n, 1)),
                    (true, true) => MorTerm::comp(MorTerm::Drop(j - 1), MorTerm::Drop(j)),
                    (false, true) => MorTerm::Id(ObjNF::level(self.n, j + 1)),
                    (false, false) => MorTerm::comp(MorTerm::Drop(j), MorTerm::Drop(j + 1)),
                })
            }
            TNode::Eraser => Ok(MorTerm::Eraser(self.obj(&t.dom)?)),
            TNode::Left => Ok(MorTerm::Left(self.obj(&t.dom)?)),
            TNode::Assoc(x, y, z) => Ok(MorTerm::Assoc(self.obj(x)?, self.obj(y)?, self.obj(z)?)),
            TNode::Dup => Ok(chain(vec![
                comparison(c, &[&t.dom, &t.dom], false)?,
                Some(MorTerm::Dup(self.obj(&t.dom)?)),
            ])),
            TNode::Sym(x, y) => Ok(chain(vec![
                comparison(c, &[y, x], false)?,
                Some(MorTerm::Sym(self.obj(x)?, self.obj(y)?)),
                comparison(c, &[x, y], true)?,
            ])),
            TNode::Comp(g, f) => Ok(MorTerm::comp(self.go(g)?, self.go(f)?)),
            TNode::Tensor(a, b) => Ok(chain(vec![
                comparison(c, &[&a.cod, &b.cod], false)?,
                Some(MorTerm::tensor(self.go(a)?, self.go(b)?)),
                comparison(c, &[&a.dom, &b.dom], true)?,
            ])),
            TNode::Rec { kind, k: idx, base, step } => self.rec(t, *kind, *idx, base, step),
            TNode::RaiseG(j, f) => {
                if !is_t {
                    return Ok(MorTerm::raise(k, t.to_term()));
                }
                let raised = apply_mor(CoercionOp::g(*j), &f.to_term(), self.n)?;
                if matches!(raised, MorTerm::RaiseG(..)) {
                    return Err(self.strict(format!("G_{j} of the argument only exists as a raised arrow")));
                }
                self.go(&typecheck(&raised, self.n)?)
            }
            TNode::LowerT { image, .. } => self.go(image),
        }
    }

    fn rec(&self, t: &Typed, kind: RecKind, idx: usize, base: &Typed, step: &Typed) -> Result<MorTerm, TypeError> {
        let c = self.c;
        let n = self.n;
        let counter = ObjNF::level(n, kind.counter_level(idx));
        let (x, y) = (&base.dom, &base.cod);
        let reform = || -> Result<MorTerm, TypeError> {
            let new_counter = c
                .level_image(kind.counter_level(idx))
                .ok_or_else(|| self.strict(format!("{kind}_{idx} loses its recursion variable")))?;
            let new_idx = kind
                .index_for_counter(new_counter)
                .ok_or_else(|| self.strict(format!("{kind} has no index for a counter at level {new_counter}")))?;
            let step_ops: Vec<&ObjNF> = match kind {
                RecKind::Flat => vec![&counter, x],
                RecKind::SafeRamified => vec![y],
                RecKind::SafeDependent => vec![&counter, x, y],
                RecKind::Parameterised => vec![x, y],
            };
            let h = chain(vec![Some(self.go(step)?), comparison(c, &step_ops, false)?]);
            let node = MorTerm::rec(kind, new_idx, self.go(base)?, h);
            typecheck(&node, n)?;
            Ok(chain(vec![Some(node), comparison(c, &[&counter, x], true)?]))
        };
        match reform() {
            Ok(m) => Ok(m),
            Err(_) if c.kind == CoercionKind::G => Ok(MorTerm::raise(c.k, t.to_term())),
            Err(e @ TypeError::Strictness { .. }) => Err(e),
            Err(e) => Err(self.strict(format!("{kind}_{idx} does not survive: {e}"))),
        }
    }
}

/// `special^{⊗a} ⊗ id_rest`, where the special arrows replace the `a`
/// factors at `level`.
fn componentwise(x: &ObjNF, level: usize, special: MorTerm) -> MorTerm {
    let a = x.alpha(level);
    if a == 0 {
        return MorTerm::Id(x.clone());
    }
    let head = MorTerm::tensor_all(vec![special; a]).expect("a > 0");
    let rest = x.without(level, a).expect("present");
    if rest.is_unit() {
        head
    } else {
        MorTerm::tensor(head, MorTerm::Id(rest))
    }
}

/// `η_k X : X -> T_k X`.
pub fn eta_component(k: usize, x: &ObjNF) -> Result<MorTerm, TypeError> {
    CoercionOp::t(k).check(x.n())?;
    let special = if k == 0 {
        MorTerm::Eraser(ObjNF::level(x.n(), 0))
    } else {
        MorTerm::Drop(k - 1)
    };
    Ok(componentwise(x, k, special))
}

/// `ε_k X : G_k X -> X`.
pub fn eps_component(k: usize, x: &ObjNF) -> Result<MorTerm, TypeError> {
    CoercionOp::g(k).check(x.n())?;
    Ok(componentwise(x, k, MorTerm::Drop(k)))
}

/// `χ_k X = η_k X ∘ ε_k X : G_k X -> T_k X`.
pub fn chi(k: usize, x: &ObjNF) -> Result<MorTerm, TypeError> {
    Ok(MorTerm::comp(eta_component(k, x)?, eps_component(k, x)?))
}

/// Generators of `k̄ = G_{n-2}…G_k T_0…T_{k-1}` in application order.
pub fn bar_ops(k: usize, n: usize) -> Result<Vec<CoercionOp>, TypeError> {
    if k >= n {
        return Err(TypeError::LevelOutOfRange { level: k, n });
    }
    let lower = (0..k).rev().map(CoercionOp::t);
    let raise = (k..n.saturating_sub(1)).map(CoercionOp::g);
    Ok(lower.chain(raise).collect())
}

pub fn bar(k: usize, x: &ObjNF) -> Result<ObjNF, TypeError> {
    apply_obj_seq(&bar_ops(k, x.n())?, x)
}

/// `T_{k-1}, …, T_0`.
fn lower_ops(k: usize) -> Vec<CoercionOp> {
    (0..k).rev().map(CoercionOp::t).collect()
}

/// The two sides of the naturality square of `T_0…T_{k-1} η_k` at
/// `f : X -> N_m^β`, `k < m`:
/// `(T_0…T_k f) ∘ θ_X` and `θ_{N_m^β} ∘ T_0…T_{k-1} f`.
pub fn safe_comp_square(f: &MorTerm, k: usize, n: usize) -> Result<(MorTerm, MorTerm), TypeError> {
    let ty = typecheck(f, n)?;
    let Some(m) = ty.cod.top_level().filter(|&m| ty.cod.is_pure_power_of(m)) else {
        return Err(TypeError::Argument(format!("codomain {} is not a power of one level", ty.cod)));
    };
    if k >= m || k + 2 > n {
        return Err(TypeError::Argument(format!("square needs k < {m} and k <= n-2, got k = {k}")));
    }
    let lower = lower_ops(k);
    let theta = |x: &ObjNF| apply_mor_seq(&lower, &eta_component(k, x)?, n);
    let mut full = vec![CoercionOp::t(k)];
    full.extend(lower.iter().copied());
    let path1 = MorTerm::comp(apply_mor_seq(&full, f, n)?, theta(&ty.dom)?);
    let path2 = MorTerm::comp(theta(&ty.cod)?, apply_mor_seq(&lower, f, n)?);
    Ok((path1, path2))
}
