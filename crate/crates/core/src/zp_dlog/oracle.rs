use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::ValueEnum;
use num_traits::{ToPrimitive, Zero};

use super::bsgs::{bsgs, BSGS_MAX_ORDER};
use super::group::{with_field, PrimeField};
use super::pohlig_hellman::{pohlig_hellman, PrimeSolver};
use crate::error::{Error, Result};
use crate::modmath::{factorize, seeded_rng, Factorization, Natural};

/// Which generic algorithm backs a [`DlogOracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, ValueEnum)]
pub enum OracleKind {
    /// Baby-step giant-step over the whole order of `g`.
    #[value(name = "bsgs")]
    Bsgs,
    /// Pohlig-Hellman, with BSGS or rho per prime component by size.
    #[default]
    #[value(name = "ph")]
    PohligHellman,
    /// Pohlig-Hellman with Pollard rho on every prime component.
    #[value(name = "rho")]
    Rho,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            OracleKind::Bsgs => "bsgs",
            OracleKind::PohligHellman => "ph",
            OracleKind::Rho => "rho",
        })
    }
}

type CustomSolver = dyn Fn(&Natural, &Natural, &Natural, &Natural) -> Result<Natural> + Send + Sync;

enum Backend {
    Builtin(OracleKind),
    Custom(Box<CustomSolver>),
}

/// A `Z_p^*` discrete-log solver with an invocation counter.
///
/// Every `solve` bumps the counter by exactly one, and every answer is checked
/// (`g^x = h`, `x < ord(g)`) before it is returned.
pub struct DlogOracle {
    backend: Backend,
    seed: u64,
    calls: AtomicU64,
}

impl DlogOracle {
    pub fn new(kind: OracleKind) -> Self {
        Self::with_seed(kind, 0)
    }

    /// The seed drives the random walks of Pollard rho.
    pub fn with_seed(kind: OracleKind, seed: u64) -> Self {
        Self {
            backend: Backend::Builtin(kind),
            seed,
            calls: AtomicU64::new(0),
        }
    }

    /// Wraps an arbitrary solver `(g, h, p, ord(g)) -> x`.
    pub fn custom<F>(solver: F) -> Self
    where
        F: Fn(&Natural, &Natural, &Natural, &Natural) -> Result<Natural> + Send + Sync + 'static,
    {
        Self {
            backend: Backend::Custom(Box::new(solver)),
            seed: 0,
            calls: AtomicU64::new(0),
        }
    }

    pub fn kind(&self) -> Option<OracleKind> {
        match self.backend {
            Backend::Builtin(kind) => Some(kind),
            Backend::Custom(_) => None,
        }
    }

    pub fn call_count(&self) -> u64 {
        self.calls.load(Ordering::SeqCst)
    }

    /// Solves `g^x = h (mod p)` where `g` has order `order_g`.
    pub fn solve(&self, g: &Natural, h: &Natural, p: &Natural, order_g: &Natural) -> Result<Natural> {
        match &self.backend {
            Backend::Builtin(OracleKind::Bsgs) | Backend::Custom(_) => {
                self.dispatch(g, h, p, order_g, None)
            }
            Backend::Builtin(_) => {
                let fact = factorize(order_g)?;
                self.dispatch(g, h, p, order_g, Some(&fact))
            }
        }
    }

    /// As [`solve`](Self::solve), reusing a known factorization of `order_g`.
    pub fn solve_factored(
        &self,
        g: &Natural,
        h: &Natural,
        p: &Natural,
        order_g: &Natural,
        fact_order: &Factorization,
    ) -> Result<Natural> {
        if fact_order.n() != order_g {
            return Err(Error::InvalidInput(format!(
                "factorization of {} supplied for order {order_g}",
                fact_order.n()
            )));
        }
        self.dispatch(g, h, p, order_g, Some(fact_order))
    }

    fn dispatch(
        &self,
        g: &Natural,
        h: &Natural,
        p: &Natural,
        order_g: &Natural,
        fact_order: Option<&Factorization>,
    ) -> Result<Natural> {
        let call = self.calls.fetch_add(1, Ordering::SeqCst);
        if order_g.is_zero() {
            return Err(Error::InvalidInput("element order must be positive".into()));
        }
        let x = match &self.backend {
            Backend::Custom(f) => f(g, h, p, order_g)?,
            Backend::Builtin(OracleKind::Bsgs) => {
                let n = order_g
                    .to_u64()
                    .filter(|&n| n <= BSGS_MAX_ORDER)
                    .ok_or_else(|| Error::ComponentTooLarge(order_g.to_string()))?;
                with_field!(p, |field| {
                    bsgs(&field, &field.lift(g), &field.lift(h), n).map(Natural::from)
                })
                .ok_or_else(|| no_solution(g, h, p))?
            }
            Backend::Builtin(kind) => {
                let solver = if *kind == OracleKind::Rho {
                    PrimeSolver::Rho
                } else {
                    PrimeSolver::Auto
                };
                let fact = fact_order.expect("factorization supplied for Pohlig-Hellman");
                let mut rng = seeded_rng(self.seed, &[call]);
                with_field!(p, |field| pohlig_hellman(
                    &field,
                    &field.lift(g),
                    &field.lift(h),
                    order_g,
                    fact,
                    solver,
                    &mut rng
                ))?
            }
        };
        if &x >= order_g || g.modpow(&x, p) != h % p {
            return Err(no_solution(g, h, p));
        }
        Ok(x)
    }
}

impl fmt::Debug for DlogOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let backend = match &self.backend {
            Backend::Builtin(kind) => kind.to_string(),
            Backend::Custom(_) => "custom".to_string(),
        };
        f.debug_struct("DlogOracle")
            .field("backend", &backend)
            .field("calls", &self.call_count())
            .finish()
    }
}

impl Default for DlogOracle {
    fn default() -> Self {
        Self::new(OracleKind::default())
    }
}

pub(crate) fn no_solution(g: &Natural, h: &Natural, p: &Natural) -> Error {
    Error::NoSolution(format!("{h} is not a power of {g} modulo {p}"))
}
