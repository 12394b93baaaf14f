//! Bergman's ring `E_p` and its quotient `Ebar_p`.
//!
//! An element of `E_p` is the integer matrix `[[a, b], [c*p, v + u*p]]` with
//! the first row reduced modulo `p` and the second modulo `p^2`. It is stored
//! as the five coefficients `(a, b, c, u, v)`, each in `[0, p)`, so every value
//! of [`EpElement`] is canonical. The bar map `E_p -> Ebar_p` drops `u`.

mod ebar;
mod text;

pub(crate) use text::parse_natural;

use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modmath::{is_prime, mod_inv, Factorization, Natural};

pub use ebar::{d_coefficient, DCoefficient, EbarElement};
pub use text::{EbarRecord, EpRecord};

pub(crate) fn check_prime(p: &Natural) -> Result<()> {
    if !is_prime(p, crate::modmath::MR_ROUNDS) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(())
}

fn check_reduced(p: &Natural, coefficients: &[&Natural]) -> Result<()> {
    if let Some(bad) = coefficients.iter().find(|x| **x >= p) {
        return Err(Error::InvalidInput(format!(
            "coefficient {bad} is not reduced modulo {p}"
        )));
    }
    Ok(())
}

pub(crate) fn ensure_same_prime(p: &Natural, q: &Natural) -> Result<()> {
    if p != q {
        return Err(Error::MismatchedPrime(p.to_string(), q.to_string()));
    }
    Ok(())
}

/// An element `[[a, b], [c*p, v + u*p]]` of `E_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EpRecord", into = "EpRecord")]
pub struct EpElement {
    p: Natural,
    a: Natural,
    b: Natural,
    c: Natural,
    u: Natural,
    v: Natural,
}

impl EpElement {
    /// Builds an element from canonical coefficients; `p` must be prime and
    /// every coefficient below `p`.
    pub fn new(p: Natural, a: Natural, b: Natural, c: Natural, u: Natural, v: Natural) -> Result<Self> {
        check_prime(&p)?;
        check_reduced(&p, &[&a, &b, &c, &u, &v])?;
        Ok(Self { p, a, b, c, u, v })
    }

    /// Like [`new`](Self::new) for word-sized values.
    pub fn from_u64(p: u64, [a, b, c, u, v]: [u64; 5]) -> Result<Self> {
        Self::new(p.into(), a.into(), b.into(), c.into(), u.into(), v.into())
    }

    pub(crate) fn from_reduced(p: Natural, a: Natural, b: Natural, c: Natural, u: Natural, v: Natural) -> Self {
        debug_assert!([&a, &b, &c, &u, &v].iter().all(|x| **x < p));
        Self { p, a, b, c, u, v }
    }

    /// Reduces an arbitrary integer matrix `[[m11, m12], [m21, m22]]` into
    /// `E_p`. `m21` must be a multiple of `p`.
    pub fn from_matrix(p: Natural, m: [[Natural; 2]; 2]) -> Result<Self> {
        check_prime(&p)?;
        let p2 = &p * &p;
        let [[m11, m12], [m21, m22]] = m;
        let m21 = m21 % &p2;
        if !(&m21 % &p).is_zero() {
            return Err(Error::InvalidInput(format!(
                "entry (2,1) = {m21} is not a multiple of {p}"
            )));
        }
        let m22 = m22 % &p2;
        Ok(Self {
            a: m11 % &p,
            b: m12 % &p,
            c: m21 / &p,
            u: &m22 / &p,
            v: m22 % &p,
            p,
        })
    }

    /// The integer matrix with entries reduced row-wise.
    pub fn to_matrix(&self) -> [[Natural; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [&self.c * &self.p, &self.v + &self.u * &self.p],
        ]
    }

    pub fn identity(p: Natural) -> Result<Self> {
        check_prime(&p)?;
        Ok(Self::one_of(&p))
    }

    pub fn zero(p: Natural) -> Result<Self> {
        check_prime(&p)?;
        let z = BigUint::zero();
        Ok(Self::from_reduced(p, z.clone(), z.clone(), z.clone(), z.clone(), z))
    }

    pub(crate) fn one_of(p: &Natural) -> Self {
        let (z, o) = (BigUint::zero(), BigUint::one());
        Self::from_reduced(p.clone(), o.clone(), z.clone(), z.clone(), z, o)
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }
    pub fn a(&self) -> &Natural {
        &self.a
    }
    pub fn b(&self) -> &Natural {
        &self.b
    }
    pub fn c(&self) -> &Natural {
        &self.c
    }
    pub fn u(&self) -> &Natural {
        &self.u
    }
    pub fn v(&self) -> &Natural {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.u.is_zero() && self.v.is_one()
    }

    /// Invertible iff `a != 0` and `v != 0`.
    pub fn is_invertible(&self) -> bool {
        !self.a.is_zero() && !self.v.is_zero()
    }

    fn split_second_row(p: &Natural, w: Natural) -> (Natural, Natural) {
        let w = w % (p * p);
        (&w / p, w % p)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same_prime(&self.p, &other.p)?;
        let p = &self.p;
        let w = &self.v + &other.v + (&self.u + &other.u) * p;
        let (u, v) = Self::split_second_row(p, w);
        Ok(Self::from_reduced(
            p.clone(),
            (&self.a + &other.a) % p,
            (&self.b + &other.b) % p,
            (&self.c + &other.c) % p,
            u,
            v,
        ))
    }

    /// The `E_p` product.
    ///
    /// Expanding `[[a1, b1], [c1 p, v1 + u1 p]] * [[a2, b2], [c2 p, v2 + u2 p]]`
    /// and reducing row-wise leaves
    /// `[[a1 a2, a1 b2 + b1 v2], [(c1 a2 + v1 c2) p, v1 v2 + (c1 b2 + v1 u2 + u1 v2) p]]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same_prime(&self.p, &other.p)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let p = &self.p;
        let a = (&self.a * &o.a) % p;
        let b = (&self.a * &o.b + &self.b * &o.v) % p;
        let c = (&self.c * &o.a + &self.v * &o.c) % p;
        let carry = &self.c * &o.b + &self.v * &o.u + &self.u * &o.v;
        let w = &self.v * &o.v + carry * p;
        let (u, v) = Self::split_second_row(p, w);
        Self::from_reduced(p.clone(), a, b, c, u, v)
    }

    /// `self^n` by square-and-multiply.
    pub fn pow(&self, n: &Natural) -> Self {
        let mut result = Self::one_of(&self.p);
        let mut base = self.clone();
        let bits = n.bits();
        for i in 0..bits {
            if n.bit(i) {
                result = result.mul_unchecked(&base);
            }
            if i + 1 < bits {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Number of invertible elements, `p^3 (p - 1)^2`.
    pub fn unit_group_order(p: &Natural) -> Natural {
        let q = p - 1u8;
        p.pow(3) * &q * &q
    }

    /// The inverse from the closed-form coefficient formula, checked by
    /// multiplication. Should the check ever fail, `g^(|E_p^*| - 1)` is
    /// returned instead.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let candidate = self.inverse_closed_form()?;
        if self.mul_unchecked(&candidate).is_identity() && candidate.mul_unchecked(self).is_identity() {
            return Ok(candidate);
        }
        Ok(self.pow(&(Self::unit_group_order(&self.p) - 1u8)))
    }

    pub(crate) fn inverse_closed_form(&self) -> Result<Self> {
        let p = &self.p;
        let neg = |x: Natural| (p - x % p) % p;
        let a_inv = mod_inv(&self.a, p)?;
        let v_inv = mod_inv(&self.v, p)?;
        let v_inv2 = (&v_inv * &v_inv) % p;

        let b = neg(&a_inv * &self.b * &v_inv);
        let c = neg(&v_inv * &self.c * &a_inv);
        // v * v^-1 = 1 + carry * p over the integers
        let carry = (&self.v * &v_inv) / p;
        let plus = &self.c * &a_inv * &self.b * &v_inv2;
        let minus = &self.u * &v_inv2 + carry * &v_inv;
        let u = (plus % p + p - minus % p) % p;
        Ok(Self::from_reduced(p.clone(), a_inv, b, c, u, v_inv))
    }

    /// Drops `u`: `[[a, b], [c p, v + u p]] -> [[a, b], [c p, v]]`.
    pub fn bar(&self) -> EbarElement {
        EbarElement::from_reduced(
            self.p.clone(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.v.clone(),
        )
    }

    /// `Some(s)` when `self = [[1, 0], [0, 1 + s p]]`, i.e. `self` lies in
    /// the kernel of the bar map.
    pub fn bar_kernel_coefficient(&self) -> Option<&Natural> {
        (self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.v.is_one()).then_some(&self.u)
    }

    /// The multiplicative order. With `N = ord(bar(g))`, `g^N = [[1, 0], [0, 1 + s p]]`;
    /// the order is `N` when `s = 0` and `p N` otherwise.
    pub fn order(&self, fact_p_minus_1: &Factorization) -> Result<Natural> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let n = self.bar().order(fact_p_minus_1)?;
        let lifted = self.pow(&n);
        let s = lifted.bar_kernel_coefficient().ok_or_else(|| {
            Error::InternalInconsistency(format!("g^{n} = {lifted} is not in the kernel of bar"))
        })?;
        Ok(if s.is_zero() { n } else { &self.p * n })
    }
}

impl fmt::Display for EpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.a, self.b, self.c, self.u, self.v)
    }
}

/// A uniformly random element of `E_p^*`: `a, v` uniform on `[1, p)` and
/// `b, c, u` uniform on `[0, p)`.
pub fn sample_invertible<R: Rng + ?Sized>(p: &Natural, rng: &mut R) -> Result<EpElement> {
    check_prime(p)?;
    let one = BigUint::one();
    let zero = BigUint::zero();
    let a = rng.gen_biguint_range(&one, p);
    let b = rng.gen_biguint_range(&zero, p);
    let c = rng.gen_biguint_range(&zero, p);
    let u = rng.gen_biguint_range(&zero, p);
    let v = rng.gen_biguint_range(&one, p);
    Ok(EpElement::from_reduced(p.clone(), a, b, c, u, v))
}

/// Every element of `E_p`, in lexicographic coefficient order. Only sensible
/// for tiny `p`.
pub fn enumerate_all(p: u64) -> Result<Vec<EpElement>> {
    check_prime(&p.into())?;
    let mut out = Vec::with_capacity((p as usize).pow(5));
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for u in 0..p {
                    for v in 0..p {
                        out.push(EpElement::from_reduced(
                            p.into(),
                            a.into(),
                            b.into(),
                            c.into(),
                            u.into(),
                            v.into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
