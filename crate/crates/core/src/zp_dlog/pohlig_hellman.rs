use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::bsgs::bsgs;
use super::group::PrimeField;
use super::rho::rho;
use crate::error::{Error, Result};
use crate::modmath::{crt_pair, CrtResidue, Factorization, Natural};

/// Prime-order components below this size go to baby-step giant-step,
/// larger ones to Pollard rho.
pub const BSGS_COMPONENT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PrimeSolver {
    Auto,
    Rho,
}

pub(crate) fn solve_prime_order<F: PrimeField, R: Rng + ?Sized>(
    field: &F,
    g: &F::Elem,
    h: &F::Elem,
    q: u64,
    solver: PrimeSolver,
    rng: &mut R,
) -> Option<u64> {
    if field.is_one(g) {
        return field.is_one(h).then_some(0);
    }
    match solver {
        PrimeSolver::Auto if q < BSGS_COMPONENT_LIMIT => bsgs(field, g, h, q),
        _ => rho(field, g, h, q, rng),
    }
}

/// Pohlig-Hellman over the factorization of `order` (a multiple of the order
/// of `g`). Each prime power is peeled one digit at a time; the digits are
/// discrete logs in a subgroup of prime order.
pub(crate) fn pohlig_hellman<F: PrimeField, R: Rng + ?Sized>(
    field: &F,
    g: &F::Elem,
    h: &F::Elem,
    order: &Natural,
    fact: &Factorization,
    solver: PrimeSolver,
    rng: &mut R,
) -> Result<Natural> {
    let mut acc = CrtResidue::new(BigUint::zero(), BigUint::from(1u8))?;
    for (q, e) in fact.factors() {
        let q_word = q
            .to_u64()
            .ok_or_else(|| Error::ComponentTooLarge(q.to_string()))?;
        let q_pow_e = q.pow(*e);
        let cofactor = order / &q_pow_e;
        let g_i = field.pow(g, &cofactor);
        let h_i = field.pow(h, &cofactor);
        let gamma = field.pow(&g_i, &q.pow(e - 1));

        let mut x_i = BigUint::zero();
        let mut place = BigUint::from(1u8);
        for k in 0..*e {
            let strip = field.pow(&g_i, &((&q_pow_e - &x_i) % &q_pow_e));
            let h_k = field.pow(&field.mul(&strip, &h_i), &q.pow(e - 1 - k));
            let digit = solve_prime_order(field, &gamma, &h_k, q_word, solver, rng)
                .ok_or_else(|| Error::NoSolution(format!("no log in the subgroup of order {q}")))?;
            x_i += &place * digit;
            place *= q;
        }
        acc = crt_pair(&acc, &CrtResidue::new(x_i, q_pow_e)?)?;
    }
    Ok(acc.into_residue())
}
