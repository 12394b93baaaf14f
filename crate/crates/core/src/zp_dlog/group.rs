//! Multiplicative groups `Z_p^*` as solver kernels. Moduli below 2^64 use
//! native words with 128-bit products; larger moduli fall back to `BigUint`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::modmath::{mul_mod_u64, pow_mod_u64, Natural};

pub(crate) trait PrimeField {
    type Elem: Clone + Eq + Hash + Debug;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, e: &Natural) -> Self::Elem;
    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem;
    fn lift(&self, n: &Natural) -> Self::Elem;
    /// Cheap pseudo-random label used to partition the group for rho walks.
    fn label(&self, a: &Self::Elem) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

pub(crate) struct WordField {
    p: u64,
}

impl WordField {
    pub(crate) fn new(p: u64) -> Self {
        Self { p }
    }
}

impl PrimeField for WordField {
    type Elem = u64;

    fn one(&self) -> u64 {
        1 % self.p
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod_u64(*a, *b, self.p)
    }

    fn pow(&self, a: &u64, e: &Natural) -> u64 {
        match e.to_u64() {
            Some(e) => pow_mod_u64(*a, e, self.p),
            None => BigUint::from(*a)
                .modpow(e, &BigUint::from(self.p))
                .to_u64()
                .expect("reduced below a u64 modulus"),
        }
    }

    fn pow_u64(&self, a: &u64, e: u64) -> u64 {
        pow_mod_u64(*a, e, self.p)
    }

    fn lift(&self, n: &Natural) -> u64 {
        (n % self.p).to_u64().expect("reduced below a u64 modulus")
    }

    #[inline]
    fn label(&self, a: &u64) -> u64 {
        a.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 32
    }
}

pub(crate) struct BigField {
    p: Natural,
}

impl BigField {
    pub(crate) fn new(p: Natural) -> Self {
        Self { p }
    }
}

impl PrimeField for BigField {
    type Elem = Natural;

    fn one(&self) -> Natural {
        BigUint::one() % &self.p
    }

    fn mul(&self, a: &Natural, b: &Natural) -> Natural {
        (a * b) % &self.p
    }

    fn pow(&self, a: &Natural, e: &Natural) -> Natural {
        a.modpow(e, &self.p)
    }

    fn pow_u64(&self, a: &Natural, e: u64) -> Natural {
        a.modpow(&BigUint::from(e), &self.p)
    }

    fn lift(&self, n: &Natural) -> Natural {
        n % &self.p
    }

    fn label(&self, a: &Natural) -> u64 {
        a.iter_u64_digits()
            .next()
            .unwrap_or(0)
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            >> 32
    }
}

/// Runs `$body` with `$field` bound to the fastest kernel for modulus `$p`.
macro_rules! with_field {
    ($p:expr, |$field:ident| $body:expr) => {{
        let p: &$crate::modmath::Natural = $p;
        match num_traits::ToPrimitive::to_u64(p) {
            Some(word) => {
                let $field = $crate::zp_dlog::group::WordField::new(word);
                $body
            }
            None => {
                let $field = $crate::zp_dlog::group::BigField::new(p.clone());
                $body
            }
        }
    }};
}
pub(crate) use with_field;
