//! A free symmetric monoidal calculus of level-stratified recursion.
//!
//! - [`omega`]: the coercion monoid of monotone endofunctions of a chain.
//! - [`terms`]: objects, morphism terms, typing, the library and syntax.
//! - [`coerce`]: the coercions `T_k`, `G_k` on objects and terms.
//! - [`eval`]: the standard model, point normalisation and `Γ_n`.
//! - [`chains`]: finite chain and presheaf models.
//! - [`props`]: extensional law checking.
//! - [`cli`]: the command-line front end.

pub mod chains;
pub mod cli;
pub mod coerce;
pub mod eval;
pub mod omega;
pub mod props;
pub mod terms;
