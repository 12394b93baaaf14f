//! Arithmetic in Bergman's ring `E_p = End(Z_p x Z_{p^2})` and a deterministic
//! reduction of its discrete logarithm problem to at most two discrete
//! logarithms in the prime field `Z_p`.
//!
//! Elements of `E_p` are 2x2 matrices `[[a, b], [c*p, v + u*p]]` whose first
//! row lives modulo `p` and whose second row lives modulo `p^2`. The quotient
//! `Ebar_p` forgets `u`. Discrete logs in `Ebar_p` split into logs of the
//! diagonal entries (or one diagonal log plus an additive recovery); logs in
//! `E_p` then lift through the kernel `[[1, 0], [0, 1 + s*p]]` of the bar map.
//!
//! Module map:
//! - [`modmath`]: modular arithmetic, CRT, primality, factorization, Euler isomorphism.
//! - [`zp_dlog`]: `Z_p^*` and `Z_{p^2}^*` discrete-log solvers and the oracle contract.
//! - [`bergman`]: `E_p` and `Ebar_p` element arithmetic.
//! - [`attack`]: discrete logs in `Ebar_p` and `E_p`.
//! - [`cli`]: the command-line front end.

pub mod attack;
pub mod bergman;
pub mod cli;
pub mod error;
pub mod modmath;
pub mod zp_dlog;

pub use attack::{brute_force_log, ebar_log, ep_log, AttackTranscript};
pub use bergman::{sample_invertible, DCoefficient, EbarElement, EpElement};
pub use error::{Error, Result};
pub use modmath::{CrtResidue, Factorization, Natural};
pub use zp_dlog::{DlogOracle, GroupElementOrder, OracleKind};
