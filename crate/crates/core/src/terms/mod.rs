//! Object and morphism language of the free symmetric monoidal
//! n-comprehension with recursion: normal-form objects, point-free morphism
//! terms, type inference, the hyperoperation library and the safe
//! composition / promotion machinery.

use thiserror::Error;

pub mod obj;
pub mod perm;
pub mod safe;
pub mod stdlib;
pub mod syntax;
pub mod term;
pub mod typing;

pub use obj::{normalize_object, ObjNF, RawObj};
pub use safe::{
    elaborate_psrr, promote_variable, species_signature, strict_check, validate_safe_composition,
    SpeciesSig,
};
pub use stdlib::{numeral, stdlib, Stdlib};
pub use term::{MorTerm, RecKind};
pub use typing::{infer_type, typecheck, MorType, TNode, Typed};

/// Smallest chain size for which the recursion calculus is set up.
pub const MIN_CHAIN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("level {level} out of range for n = {n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("object over a chain of size {found}, expected {expected}")]
    ChainMismatch { expected: usize, found: usize },
    #[error("chain size {0} too small for the recursion calculus (need n >= 3)")]
    ChainTooSmall(usize),
    #[error("cannot compose: codomain {cod} does not match domain {dom}")]
    CompMismatch { cod: String, dom: String },
    #[error("{former}_{k}: codomain factor N{level} survives T_{k}..T_0 (need level <= {k})")]
    SideCondition {
        former: RecKind,
        k: usize,
        level: usize,
    },
    #[error("FR_{k}: {what} {obj} is not a power of N{k}")]
    NotPurePower { k: usize, what: &'static str, obj: String },
    #[error("{former}_{k}: {detail}")]
    RecursionShape {
        former: RecKind,
        k: usize,
        detail: String,
    },
    #[error("T_{k} image falls outside the calculus: {detail}")]
    Strictness { k: usize, detail: String },
    #[error("{0}")]
    Argument(String),
}
