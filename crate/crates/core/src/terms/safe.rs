//! Species bookkeeping, safe composition, variable promotion, the strict
//! fragment and the PSRR-to-SDR elaboration.

use std::fmt;

use serde::Serialize;

use super::obj::ObjNF;
use super::perm::reorder_or_id;
use super::term::{MorTerm, RecKind};
use super::typing::infer_type;
use super::TypeError;

/// Species of the arguments and level of the result, written
/// `(a_k,…,a_0;m)` with argument species in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpeciesSig {
    /// Multiplicity of each species among the arguments.
    pub arg_counts: Vec<usize>,
    pub out_level: usize,
}

impl SpeciesSig {
    /// One entry per argument, highest species first.
    pub fn arg_species(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .arg_counts
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat(j).take(a))
            .collect();
        v.reverse();
        v
    }
}

impl fmt::Display for SpeciesSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.arg_species().iter().map(usize::to_string).collect();
        write!(f, "({};{})", args.join(","), self.out_level)
    }
}

/// Level of an object: its highest factor, 0 for `⊤`.
pub fn object_level(x: &ObjNF) -> usize {
    x.top_level().unwrap_or(0)
}

pub fn species_signature(t: &MorTerm, n: usize) -> Result<SpeciesSig, TypeError> {
    let ty = infer_type(t, n)?;
    Ok(SpeciesSig {
        arg_counts: ty.dom.profile().to_vec(),
        out_level: object_level(&ty.cod),
    })
}

/// `rs[i]` lists the functions feeding the species-`i` arguments of `h`, in
/// ordinal order; all share one domain and have single-factor codomains.
/// Safe iff every function in block `i` has level at most `i`.
pub fn validate_safe_composition(h: &MorTerm, rs: &[Vec<MorTerm>], n: usize) -> Result<bool, TypeError> {
    let hty = infer_type(h, n)?;
    if rs.len() > n {
        return Err(TypeError::Argument(format!("{} species blocks for n = {n}", rs.len())));
    }
    let mut common: Option<ObjNF> = None;
    let mut safe = true;
    for i in 0..n {
        let block = rs.get(i).map(Vec::as_slice).unwrap_or(&[]);
        if block.len() != hty.dom.alpha(i) {
            return Err(TypeError::Argument(format!(
                "species {i}: {} functions supplied for {} arguments",
                block.len(),
                hty.dom.alpha(i)
            )));
        }
        for r in block {
            let rty = infer_type(r, n)?;
            let Some(level) = rty.cod.single_level() else {
                return Err(TypeError::Argument(format!("codomain {} is not a single level object", rty.cod)));
            };
            match &common {
                Some(d) if *d != rty.dom => {
                    return Err(TypeError::CompMismatch {
                        cod: rty.dom.to_string(),
                        dom: d.to_string(),
                    })
                }
                Some(_) => {}
                None => common = Some(rty.dom.clone()),
            }
            safe &= level <= i;
        }
    }
    Ok(safe)
}

/// `d_k ∘ d_{k+1} ∘ … ∘ d_{t-1} : N_t -> N_k`.
pub fn drop_chain(k: usize, t: usize, n: usize) -> MorTerm {
    MorTerm::compose_all((k..t).map(MorTerm::Drop).collect()).unwrap_or_else(|| MorTerm::Id(ObjNF::level(n, k)))
}

/// Retypes the `ordinal`-th `N_k` argument of `h` at species `t > k`. The
/// promoted argument becomes the first `N_t` factor of the new domain.
pub fn promote_variable(h: &MorTerm, k: usize, ordinal: usize, t: usize, n: usize) -> Result<MorTerm, TypeError> {
    let hty = infer_type(h, n)?;
    if t <= k {
        return Err(TypeError::Argument(format!("target species {t} must exceed {k}")));
    }
    if t >= n {
        return Err(TypeError::LevelOutOfRange { level: t, n });
    }
    let count = hty.dom.alpha(k);
    if ordinal >= count {
        return Err(TypeError::Argument(format!(
            "no argument N{k} #{ordinal} in {}",
            hty.dom
        )));
    }
    let rest = hty.dom.without(k, 1).expect("argument present");
    let lift = drop_chain(k, t, n);
    let pre = if rest.is_unit() {
        lift
    } else {
        MorTerm::tensor(lift, MorTerm::Id(rest))
    };
    // After the drops the promoted entry leads level k; move it back.
    let mut from: Vec<Vec<usize>> = (0..n).map(|j| (0..hty.dom.alpha(j)).collect()).collect();
    from[k] = std::iter::once(ordinal).chain((0..count).filter(|&o| o != ordinal)).collect();
    let to: Vec<Vec<usize>> = (0..n).map(|j| (0..hty.dom.alpha(j)).collect()).collect();
    let reorder = reorder_or_id(&hty.dom, &from, &to);
    Ok(MorTerm::comp(h.clone(), MorTerm::comp(reorder, pre)))
}

/// True iff no explicit `T`-image appears in `t`.
pub fn strict_check(t: &MorTerm) -> bool {
    let mut ok = true;
    t.walk(&mut |s| {
        if matches!(s, MorTerm::LowerT(..)) {
            ok = false;
        }
    });
    ok
}

/// `PSRR_k(g, h)` as `SDR_k(g, h ∘ l ∘ (τ_{N_{k+1}} ⊗ id) ∘ a)`.
pub fn elaborate_psrr(k: usize, g: &MorTerm, h: &MorTerm, n: usize) -> Result<MorTerm, TypeError> {
    let original = MorTerm::psrr(k, g.clone(), h.clone());
    infer_type(&original, n)?;
    let gty = infer_type(g, n)?;
    let (x, y) = (gty.dom, gty.cod);
    let counter = ObjNF::level(n, RecKind::SafeDependent.counter_level(k));
    let xy = x.tensor(&y);
    let discard = MorTerm::compose_all(vec![
        h.clone(),
        MorTerm::Left(xy.clone()),
        MorTerm::tensor(MorTerm::Eraser(counter.clone()), MorTerm::Id(xy)),
        MorTerm::Assoc(counter, x, y),
    ])
    .expect("non-empty");
    let sdr = MorTerm::sdr(k, g.clone(), discard);
    infer_type(&sdr, n)?;
    Ok(sdr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::stdlib::{self, constant, numeral};

    #[test]
    fn species_strings() {
        let s = |t: MorTerm| species_signature(&t, 4).unwrap().to_string();
        assert_eq!(s(stdlib::plus(4)), "(1,0;0)");
        assert_eq!(s(stdlib::times(4)), "(1,1;0)");
        assert_eq!(s(stdlib::exp(4)), "(2,1;1)");
        assert_eq!(s(stdlib::tetra(4)), "(3,2;1)");
        assert_eq!(s(numeral(2, 3)), "(;2)");
    }

    #[test]
    fn safe_composition_levels() {
        let n = 4;
        let n1 = ObjNF::level(n, 1);
        let n0 = ObjNF::level(n, 0);
        let dom = n1.tensor(&n0);
        let p1 = stdlib::proj1(&n1, &n0);
        let p2 = stdlib::proj2(&n1, &n0);
        let plus = stdlib::plus(n);
        assert_eq!(validate_safe_composition(&plus, &[vec![p2.clone()], vec![p1.clone()]], n), Ok(true));
        let e = stdlib::exp(n);
        let edom = infer_type(&e, n).unwrap().dom;
        let r1 = constant(&edom, 1, 0);
        assert_eq!(validate_safe_composition(&plus, &[vec![e], vec![r1]], n), Ok(false));
        let five = MorTerm::comp(numeral(0, 5), MorTerm::Eraser(dom));
        assert_eq!(validate_safe_composition(&plus, &[vec![p2], vec![five]], n), Ok(true));
        assert!(validate_safe_composition(&plus, &[vec![], vec![p1]], n).is_err());
    }

    #[test]
    fn promotion_types() {
        let n = 4;
        let f = promote_variable(&stdlib::plus(n), 0, 0, 1, n).unwrap();
        assert_eq!(infer_type(&f, n).unwrap().dom.profile(), &[0, 2, 0, 0]);
        assert!(promote_variable(&stdlib::plus(n), 1, 0, 1, n).is_err());
        let g = promote_variable(&stdlib::exp(n), 1, 0, 2, n).unwrap();
        assert_eq!(infer_type(&g, n).unwrap().dom.profile(), &[0, 0, 2, 0]);
    }

    #[test]
    fn strictness() {
        for (_, t) in stdlib::stdlib(4).iter() {
            assert!(strict_check(t));
        }
        assert!(!strict_check(&MorTerm::lower(1, MorTerm::Succ(1))));
        assert!(strict_check(&MorTerm::Id(ObjNF::level(3, 0))));
    }

    #[test]
    fn elaboration_types() {
        let n = 4;
        let MorTerm::Rec { k, base, step, .. } = stdlib::times(n) else { unreachable!() };
        let e = elaborate_psrr(k, &base, &step, n).unwrap();
        assert_eq!(infer_type(&e, n), infer_type(&stdlib::times(n), n));
    }
}
