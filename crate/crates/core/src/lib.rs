//! Invariants of abelianized absolute Galois groups of global function fields.
//!
//! The isomorphism type of `G^ab_K` for a global function field `K` with
//! constant field `F_q`, `q = p^n`, is determined by three pieces of data:
//! the characteristic `p`, the prime-to-`p` part `d` of `n`, and the
//! prime-to-`p` part of the degree-zero class group. This crate computes those
//! invariants, decides isomorphism, and checks the surrounding theory on
//! concrete curves:
//!
//! * [`arith`]: valuations, primes, finite fields `F_{p^m}` and polynomials over them.
//! * [`profinite`]: `d_q`, `p★`, the thresholds `N_q(l)`, `s_l` and the isomorphism decisions.
//! * [`abgroups`]: finite abelian groups, Smith normal form, subgroup enumeration.
//! * [`curves`]: curve models, point counting, L-polynomials and class numbers.
//! * [`extensions`]: finite truncations of extensions with a prescribed divisible core.
//! * [`literal`]: the textual literals accepted on the command line.

pub mod abgroups;
pub mod arith;
pub mod curves;
pub mod error;
pub mod extensions;
pub mod literal;
pub mod profinite;

#[cfg(feature = "test-oracles")]
#[doc(hidden)]
pub mod oracle;

pub use abgroups::FiniteAbelianGroup;
pub use arith::PrimePower;
pub use error::{Error, Result};
pub use profinite::{GabInvariant, TqProfile};
