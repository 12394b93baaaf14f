//! Discrete logarithms and element orders in `Z_p^*` and `Z_{p^2}^*`.
//!
//! The generic solvers (baby-step giant-step, Pollard rho, Pohlig-Hellman)
//! back a [`DlogOracle`], which is what the `E_p` reduction calls into. The
//! basic reductions live here too: orders from logs, logs in a product of
//! groups by CRT, logs in `Z_{p^2}^*` through the Euler isomorphism, and the
//! recovery of an order from an oracle that returns any valid exponent.

mod bsgs;
pub(crate) mod group;
mod oracle;
mod pohlig_hellman;
mod rho;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::modmath::{
    crt_pair, euler_iso_inv, factorize, mod_inv, CrtResidue, Factorization, Natural,
};
use group::{with_field, PrimeField};

pub use oracle::{DlogOracle, OracleKind};
pub use pohlig_hellman::BSGS_COMPONENT_LIMIT;

use bsgs::{bsgs, BSGS_MAX_ORDER};
use oracle::no_solution;
use pohlig_hellman::PrimeSolver;
use rho::rho;

/// An element of `Z_m^*` together with its multiplicative order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElementOrder {
    element: Natural,
    modulus: Natural,
    order: Natural,
}

impl GroupElementOrder {
    /// Computes the order of `a` in `Z_p^*` from a factorization of `p - 1`.
    pub fn compute(a: &Natural, p: &Natural, fact_p_minus_1: &Factorization) -> Result<Self> {
        Ok(Self {
            element: a.clone(),
            modulus: p.clone(),
            order: element_order(a, p, fact_p_minus_1)?,
        })
    }

    pub fn element(&self) -> &Natural {
        &self.element
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn order(&self) -> &Natural {
        &self.order
    }
}

fn check_unit(x: &Natural, p: &Natural) -> Result<()> {
    if x.is_zero() || x >= p {
        return Err(Error::InvalidInput(format!("{x} is not a unit of Z_{p}")));
    }
    Ok(())
}

/// Multiplicative order of `a` modulo the prime `p`, by stripping prime
/// factors from `p - 1` while `a` still raises to one.
pub fn element_order(a: &Natural, p: &Natural, fact_p_minus_1: &Factorization) -> Result<Natural> {
    check_unit(a, p)?;
    if fact_p_minus_1.n() + 1u8 != *p {
        return Err(Error::InvalidInput(format!(
            "expected a factorization of {p} - 1, got one of {}",
            fact_p_minus_1.n()
        )));
    }
    with_field!(p, |field| {
        let a = field.lift(a);
        let mut order = fact_p_minus_1.n().clone();
        for (q, e) in fact_p_minus_1.factors() {
            order /= q.pow(*e);
            let mut x = field.pow(&a, &order);
            while !field.is_one(&x) {
                x = field.pow(&x, q);
                order *= q;
            }
        }
        Ok(order)
    })
}

/// Baby-step giant-step over the whole order of `g`; `O(sqrt(order_g))` time
/// and memory.
pub fn dlog_bsgs(g: &Natural, h: &Natural, p: &Natural, order_g: &Natural) -> Result<Natural> {
    let n = order_g
        .to_u64()
        .filter(|&n| (1..=BSGS_MAX_ORDER).contains(&n))
        .ok_or_else(|| Error::ComponentTooLarge(order_g.to_string()))?;
    with_field!(p, |field| bsgs(&field, &field.lift(g), &field.lift(h), n))
        .map(Natural::from)
        .ok_or_else(|| no_solution(g, h, p))
}

/// Pollard rho for `g` of prime order `prime_order`.
pub fn dlog_pollard_rho<R: Rng + ?Sized>(
    g: &Natural,
    h: &Natural,
    p: &Natural,
    prime_order: &Natural,
    rng: &mut R,
) -> Result<Natural> {
    let q = prime_order
        .to_u64()
        .ok_or_else(|| Error::ComponentTooLarge(prime_order.to_string()))?;
    with_field!(p, |field| rho(&field, &field.lift(g), &field.lift(h), q, rng))
        .map(Natural::from)
        .ok_or_else(|| no_solution(g, h, p))
}

/// Pohlig-Hellman: solves each prime-power component of the order (BSGS
/// below 2^20, rho above) and recombines with CRT. `fact` factors the order.
pub fn dlog_pohlig_hellman(
    g: &Natural,
    h: &Natural,
    p: &Natural,
    order_info: &GroupElementOrder,
    fact: &Factorization,
) -> Result<Natural> {
    let order = order_info.order();
    if fact.n() != order {
        return Err(Error::InvalidInput(format!(
            "factorization of {} supplied for order {order}",
            fact.n()
        )));
    }
    let mut rng = crate::modmath::seeded_rng(0, &[]);
    let x = with_field!(p, |field| pohlig_hellman::pohlig_hellman(
        &field,
        &field.lift(g),
        &field.lift(h),
        order,
        fact,
        PrimeSolver::Auto,
        &mut rng
    ))?;
    if g.modpow(&x, p) != h % p {
        return Err(no_solution(g, h, p));
    }
    Ok(x)
}

/// A `Z_p` discrete log through `oracle` (exactly one oracle call). The
/// order of `g` is computed from a fresh factorization of `p - 1`.
pub fn dlog_zp(g: &Natural, h: &Natural, p: &Natural, oracle: &DlogOracle) -> Result<Natural> {
    let fact = factorize(&(p - 1u8))?;
    dlog_zp_factored(g, h, p, &fact, oracle)
}

/// As [`dlog_zp`], with the factorization of `p - 1` supplied.
pub fn dlog_zp_factored(
    g: &Natural,
    h: &Natural,
    p: &Natural,
    fact_p_minus_1: &Factorization,
    oracle: &DlogOracle,
) -> Result<Natural> {
    check_unit(g, p)?;
    check_unit(h, p)?;
    let order = element_order(g, p, fact_p_minus_1)?;
    let fact_order = fact_p_minus_1.restrict_to_divisor(&order)?;
    oracle.solve_factored(g, h, p, &order, &fact_order)
}

/// Discrete log in a product of two groups: `x mod order1` and `x mod order2`
/// come from the component solvers, and CRT returns `x mod lcm(order1, order2)`.
pub fn dlog_product_pair<F1, F2>(order1: &Natural, log1: F1, order2: &Natural, log2: F2) -> Result<Natural>
where
    F1: FnOnce() -> Result<Natural>,
    F2: FnOnce() -> Result<Natural>,
{
    let r1 = CrtResidue::reduce(&log1()?, order1.clone())?;
    let r2 = CrtResidue::reduce(&log2()?, order2.clone())?;
    match crt_pair(&r1, &r2) {
        Ok(r) => Ok(r.into_residue()),
        Err(Error::InconsistentResidues(why)) => Err(Error::NoSolution(format!(
            "component logs are incompatible: {why}"
        ))),
        Err(e) => Err(e),
    }
}

/// Discrete log in `Z_{p^2}^*`, via the Euler isomorphism: the additive
/// component is a single modular division, the multiplicative one is a
/// `Z_p` log through `oracle`.
pub fn dlog_zp2(g: &Natural, h: &Natural, p: &Natural, oracle: &DlogOracle) -> Result<Natural> {
    let p2 = p * p;
    let (a_g, b_g) = euler_iso_inv(g, p)?;
    let (a_h, b_h) = euler_iso_inv(h, p)?;

    let additive_order = if a_g.is_zero() { BigUint::one() } else { p.clone() };
    let additive_log = || -> Result<Natural> {
        if a_g.is_zero() {
            if a_h.is_zero() {
                Ok(BigUint::zero())
            } else {
                Err(no_solution(g, h, &p2))
            }
        } else {
            Ok((&a_h * mod_inv(&a_g, p)?) % p)
        }
    };

    let fact = factorize(&(p - 1u8))?;
    let mult_order = element_order(&b_g, p, &fact)?;
    let mult_log = || dlog_zp_factored(&b_g, &b_h, p, &fact, oracle);

    let x = dlog_product_pair(&additive_order, additive_log, &mult_order, mult_log)?;
    if g.modpow(&x, &p2) != *h {
        return Err(no_solution(g, h, &p2));
    }
    Ok(x)
}

/// `ord(g) = log_g(g^-1) + 1`.
pub fn order_via_dlog(g: &Natural, p: &Natural, oracle: &DlogOracle) -> Result<Natural> {
    let inverse = mod_inv(g, p)?;
    Ok(dlog_zp(g, &inverse, p, oracle)? + 1u8)
}

/// Recovers `ord(g)` from an oracle that returns any exponent `r'` with
/// `g^r' = g^r`: draws `r` uniformly from `[K, K^2]`, and returns the gcd of
/// the differences `r - r'`.
pub fn order_via_dlp2_oracle<F, R>(
    g: &Natural,
    p: &Natural,
    bound_k: &Natural,
    mut dlp2: F,
    trials: usize,
    rng: &mut R,
) -> Result<Natural>
where
    F: FnMut(&Natural, &Natural) -> Result<Natural>,
    R: Rng + ?Sized,
{
    if bound_k.is_zero() {
        return Err(Error::InvalidInput("order bound K must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required".into()));
    }
    let upper = bound_k * bound_k + 1u8;
    let mut acc = BigUint::zero();
    for _ in 0..trials {
        let r = if upper > bound_k + 1u8 {
            rng.gen_biguint_range(bound_k, &upper)
        } else {
            bound_k.clone()
        };
        let h = g.modpow(&r, p);
        let r_tilde = dlp2(g, &h)?;
        let diff = if r >= r_tilde { &r - &r_tilde } else { &r_tilde - &r };
        acc = acc.gcd(&diff);
    }
    if acc.is_zero() {
        return Err(Error::Indeterminate(
            "every sampled difference was zero; retry with more trials".into(),
        ));
    }
    Ok(acc)
}
