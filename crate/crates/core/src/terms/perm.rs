//! Permutation terms built from symmetries.
//!
//! Values of an object are laid out level by level, each level in ordinal
//! order. A permutation term reorders entries within levels; it is assembled
//! from adjacent transpositions `id ⊗ σ_{N_L,N_L} ⊗ id`.

use super::obj::ObjNF;
use super::term::MorTerm;

/// Adjacent transposition of entries `i` and `i+1` at `level` of `shape`.
pub fn transposition(shape: &ObjNF, level: usize, i: usize) -> MorTerm {
    let n = shape.n();
    let rest = shape
        .without(level, i + 2)
        .expect("transposition position within level");
    let nl = ObjNF::level(n, level);
    let mut core = MorTerm::Sym(nl.clone(), nl);
    if !rest.is_unit() {
        core = MorTerm::tensor(core, MorTerm::Id(rest));
    }
    if i > 0 {
        core = MorTerm::tensor(MorTerm::Id(ObjNF::power(n, level, i)), core);
    }
    core
}

/// Term on `shape` moving entries laid out as `from` into the layout `to`.
/// Both are per-level tag sequences naming the same entries. Returns `None`
/// when the layouts coincide.
pub fn reorder_term<T: PartialEq + Clone>(shape: &ObjNF, from: &[Vec<T>], to: &[Vec<T>]) -> Option<MorTerm> {
    let mut swaps = Vec::new();
    for (level, (src, dst)) in from.iter().zip(to).enumerate() {
        debug_assert_eq!(src.len(), shape.alpha(level));
        debug_assert_eq!(src.len(), dst.len());
        let mut cur = src.clone();
        for (p, tag) in dst.iter().enumerate() {
            let q = cur[p..]
                .iter()
                .position(|x| x == tag)
                .map(|o| o + p)
                .expect("layouts name the same entries");
            for i in (p..q).rev() {
                cur.swap(i, i + 1);
                swaps.push(transposition(shape, level, i));
            }
        }
    }
    swaps.reverse();
    MorTerm::compose_all(swaps)
}

/// Same as [`reorder_term`] but falls back to the identity.
pub fn reorder_or_id<T: PartialEq + Clone>(shape: &ObjNF, from: &[Vec<T>], to: &[Vec<T>]) -> MorTerm {
    reorder_term(shape, from, to).unwrap_or_else(|| MorTerm::Id(shape.clone()))
}

