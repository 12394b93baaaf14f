use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_prime, check_reduced, ensure_same_prime, EbarRecord};
use crate::error::{Error, Result};
use crate::modmath::{lcm, mod_inv, Factorization, Natural};
use crate::zp_dlog::element_order;

/// An element `[[a, b], [c*p, v]]` of `Ebar_p`: entry (2,1) lives modulo
/// `p^2`, the other three modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EbarRecord", into = "EbarRecord")]
pub struct EbarElement {
    p: Natural,
    a: Natural,
    b: Natural,
    c: Natural,
    v: Natural,
}

/// The off-diagonal scale `d_x` in `[[a, b], [c p, v]]^x = [[a^x, b d_x], [c d_x p, v^x]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DCoefficient(Natural);

impl DCoefficient {
    pub fn value(&self) -> &Natural {
        &self.0
    }

    pub fn into_inner(self) -> Natural {
        self.0
    }
}

/// `d_x = (a^x - v^x) / (a - v)` when `a != v`, and `x a^(x-1)` when `a = v`,
/// all in `Z_p`; `d_0 = 0`.
///
/// In the `a = v` case `x` is reduced modulo `p` and the exponent `x - 1`
/// modulo `p - 1`.
pub fn d_coefficient(a: &Natural, v: &Natural, x: &Natural, p: &Natural) -> Result<DCoefficient> {
    if a.is_zero() || v.is_zero() || a >= p || v >= p {
        return Err(Error::InvalidInput(format!(
            "d_x needs units a = {a}, v = {v} of Z_{p}"
        )));
    }
    if x.is_zero() {
        return Ok(DCoefficient(BigUint::zero()));
    }
    let value = if a != v {
        let num = (a.modpow(x, p) + p - v.modpow(x, p)) % p;
        let den = (a + p - v) % p;
        (num * mod_inv(&den, p)?) % p
    } else {
        let exponent = (x - 1u8) % (p - 1u8);
        ((x % p) * a.modpow(&exponent, p)) % p
    };
    Ok(DCoefficient(value))
}

impl EbarElement {
    pub fn new(p: Natural, a: Natural, b: Natural, c: Natural, v: Natural) -> Result<Self> {
        check_prime(&p)?;
        check_reduced(&p, &[&a, &b, &c, &v])?;
        Ok(Self { p, a, b, c, v })
    }

    pub fn from_u64(p: u64, [a, b, c, v]: [u64; 4]) -> Result<Self> {
        Self::new(p.into(), a.into(), b.into(), c.into(), v.into())
    }

    pub(crate) fn from_reduced(p: Natural, a: Natural, b: Natural, c: Natural, v: Natural) -> Self {
        debug_assert!([&a, &b, &c, &v].iter().all(|x| **x < p));
        Self { p, a, b, c, v }
    }

    pub fn identity(p: Natural) -> Result<Self> {
        check_prime(&p)?;
        Ok(Self::one_of(&p))
    }

    pub(crate) fn one_of(p: &Natural) -> Self {
        let (z, o) = (BigUint::zero(), BigUint::one());
        Self::from_reduced(p.clone(), o.clone(), z.clone(), z, o)
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
    pub fn v(&self) -> &Natural {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.v.is_one()
    }

    pub fn is_invertible(&self) -> bool {
        !self.a.is_zero() && !self.v.is_zero()
    }

    fn require_invertible(&self) -> Result<()> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same_prime(&self.p, &other.p)?;
        let p = &self.p;
        Ok(Self::from_reduced(
            p.clone(),
            (&self.a + &other.a) % p,
            (&self.b + &other.b) % p,
            (&self.c + &other.c) % p,
            (&self.v + &other.v) % p,
        ))
    }

    /// `[[a1 a2, a1 b2 + b1 v2], [(c1 a2 + v1 c2) p, v1 v2]]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ensure_same_prime(&self.p, &other.p)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let p = &self.p;
        Self::from_reduced(
            p.clone(),
            (&self.a * &o.a) % p,
            (&self.a * &o.b + &self.b * &o.v) % p,
            (&self.c * &o.a + &self.v * &o.c) % p,
            (&self.v * &o.v) % p,
        )
    }

    /// `self^n` by square-and-multiply.
    pub fn pow(&self, n: &Natural) -> Self {
        let mut result = Self::one_of(&self.p);
        let mut base = self.clone();
        for i in 0..n.bits() {
            if n.bit(i) {
                result = result.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
        }
        result
    }

    /// `self^x = [[a^x, b d_x], [c d_x p, v^x]]`, without repeated multiplication.
    pub fn pow_closed(&self, x: &Natural) -> Result<Self> {
        self.require_invertible()?;
        let p = &self.p;
        let d = d_coefficient(&self.a, &self.v, x, p)?.into_inner();
        Ok(Self::from_reduced(
            p.clone(),
            self.a.modpow(x, p),
            (&self.b * &d) % p,
            (&self.c * &d) % p,
            self.v.modpow(x, p),
        ))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_invertible()?;
        let p = &self.p;
        let a_inv = mod_inv(&self.a, p)?;
        let v_inv = mod_inv(&self.v, p)?;
        let neg = |x: Natural| (p - x % p) % p;
        let b = neg(&a_inv * &self.b * &v_inv);
        let c = neg(&v_inv * &self.c * &a_inv);
        Ok(Self::from_reduced(p.clone(), a_inv, b, c, v_inv))
    }

    /// True in the case `a = v` with `b` or `c` nonzero, where the order
    /// picks up an extra factor `p`.
    pub fn is_unipotent_branch(&self) -> bool {
        self.a == self.v && !(self.b.is_zero() && self.c.is_zero())
    }

    /// `p * ord(a)` when `a = v` and `(b, c) != (0, 0)`; otherwise
    /// `lcm(ord(a), ord(v))`.
    pub fn order(&self, fact_p_minus_1: &Factorization) -> Result<Natural> {
        self.require_invertible()?;
        let ord_a = element_order(&self.a, &self.p, fact_p_minus_1)?;
        if self.is_unipotent_branch() {
            Ok(&self.p * ord_a)
        } else {
            let ord_v = element_order(&self.v, &self.p, fact_p_minus_1)?;
            Ok(lcm(&ord_a, &ord_v))
        }
    }
}

impl fmt::Display for EbarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.v)
    }
}
