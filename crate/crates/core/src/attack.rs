//! Discrete logarithms in `Ebar_p` and `E_p` from at most two discrete
//! logarithms in `Z_p`.
//!
//! For `g = [[a, b], [c p, v + u p]]`, the bar image `[[a, b], [c p, v]]`
//! raised to `x` is `[[a^x, b d_x], [c d_x p, v^x]]`. When `a != v` (or
//! `b = c = 0`) the exponent is pinned by `log_a` and `log_v` together. When
//! `a = v`, `log_a` gives `x0 = x mod ord(a)` and the off-diagonal entries of
//! `g^(x - x0)` reveal `x - x0 mod p`. Back in `E_p`, `g^ord(gbar)` is
//! `[[1, 0], [0, 1 + s p]]`, an element of order `p` (or 1 when `s = 0`),
//! and the remaining quotient `q` drops out of one modular division.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bergman::{ensure_same_prime, EbarElement, EpElement};
use crate::error::{Error, Result};
use crate::modmath::{crt_pair, decimal, mod_inv, CrtResidue, Factorization, Natural};
use crate::zp_dlog::{dlog_zp_factored, element_order, DlogOracle};

/// Intermediate values of one `E_p` discrete-log computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackTranscript {
    /// `x mod ord(gbar)`, the log in the bar quotient.
    #[serde(with = "decimal")]
    pub x0: Natural,
    #[serde(with = "decimal")]
    pub ebar_order: Natural,
    /// `g^ord(gbar) = [[1, 0], [0, 1 + s p]]`.
    #[serde(with = "decimal")]
    pub s: Natural,
    /// `(x - x0) / ord(gbar)`; zero when `s = 0`.
    #[serde(with = "decimal")]
    pub q: Natural,
    pub zp_dlog_calls: u32,
    #[serde(with = "decimal")]
    pub x: Natural,
}

impl AttackTranscript {
    /// One-line JSON with decimal-string numbers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }
}

/// Counts the `Z_p` logs issued by one attack, independent of how many other
/// callers share the oracle.
struct CountingOracle<'a> {
    oracle: &'a DlogOracle,
    fact: &'a Factorization,
    calls: u32,
}

impl CountingOracle<'_> {
    fn log(&mut self, g: &Natural, h: &Natural, p: &Natural) -> Result<Natural> {
        self.calls += 1;
        dlog_zp_factored(g, h, p, self.fact, self.oracle)
    }
}

fn not_a_power<T: std::fmt::Display>(g: &T, h: &T) -> Error {
    Error::NoSolution(format!("{h} is not a power of {g}"))
}

/// Discrete log in `Ebar_p`: returns `x` in `[0, ord(g))` with `g^x = h`.
pub fn ebar_log(
    g: &EbarElement,
    h: &EbarElement,
    oracle: &DlogOracle,
    fact_p_minus_1: &Factorization,
) -> Result<Natural> {
    let mut counted = CountingOracle {
        oracle,
        fact: fact_p_minus_1,
        calls: 0,
    };
    ebar_log_counted(g, h, &mut counted)
}

fn ebar_log_counted(g: &EbarElement, h: &EbarElement, oracle: &mut CountingOracle<'_>) -> Result<Natural> {
    ensure_same_prime(g.p(), h.p())?;
    if !g.is_invertible() {
        return Err(Error::NotInvertible(g.to_string()));
    }
    if !h.is_invertible() {
        return Err(not_a_power(g, h));
    }
    let p = g.p();
    let (a, v) = (g.a(), g.v());
    let ord_a = element_order(a, p, oracle.fact)?;
    let x0 = oracle.log(a, h.a(), p)?;

    let x = if !g.is_unipotent_branch() {
        let ord_v = element_order(v, p, oracle.fact)?;
        let xv = oracle.log(v, h.v(), p)?;
        crt_pair(&CrtResidue::new(x0, ord_a)?, &CrtResidue::new(xv, ord_v)?)
            .map_err(|_| not_a_power(g, h))?
            .into_residue()
    } else {
        // h g^-x0 = g^(x - x0) = [[1, b d], [c d p, 1]] with d = d_(x - x0)
        let shifted = h.mul(&g.inverse()?.pow_closed(&x0)?)?;
        if !shifted.a().is_one() || !shifted.v().is_one() {
            return Err(not_a_power(g, h));
        }
        let d = if g.c().is_zero() {
            (shifted.b() * mod_inv(g.b(), p)?) % p
        } else {
            (shifted.c() * mod_inv(g.c(), p)?) % p
        };
        // d a = (x - x0) mod p, since a^(x - x0) = 1
        let delta = (d * a) % p;
        let offset = crt_pair(
            &CrtResidue::new(BigUint::zero(), ord_a)?,
            &CrtResidue::new(delta, p.clone())?,
        )?
        .into_residue();
        offset + x0
    };

    if g.pow_closed(&x)? != *h {
        return Err(not_a_power(g, h));
    }
    Ok(x)
}

/// Discrete log in `E_p`: returns the transcript whose `x` lies in
/// `[0, ord(g))` and satisfies `g^x = h`. Uses at most two `Z_p` logs.
pub fn ep_log(
    g: &EpElement,
    h: &EpElement,
    oracle: &DlogOracle,
    fact_p_minus_1: &Factorization,
) -> Result<AttackTranscript> {
    ensure_same_prime(g.p(), h.p())?;
    if !g.is_invertible() {
        return Err(Error::NotInvertible(g.to_string()));
    }
    if !h.is_invertible() {
        return Err(not_a_power(g, h));
    }
    let p = g.p();
    let mut counted = CountingOracle {
        oracle,
        fact: fact_p_minus_1,
        calls: 0,
    };

    let g_bar = g.bar();
    let ebar_order = g_bar.order(fact_p_minus_1)?;
    let x0 = ebar_log_counted(&g_bar, &h.bar(), &mut counted)?;

    let lifted = g.pow(&ebar_order);
    let s = lifted
        .bar_kernel_coefficient()
        .ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "g^{ebar_order} = {lifted} is not of the form [[1, 0], [0, 1 + s p]]"
            ))
        })?
        .clone();

    let (q, x) = if s.is_zero() {
        (BigUint::zero(), x0.clone())
    } else {
        // h g^-x0 = (g^N)^q = [[1, 0], [0, 1 + s q p]]
        let shifted = h.mul(&g.inverse()?.pow(&x0))?;
        let sq = shifted.bar_kernel_coefficient().ok_or_else(|| not_a_power(g, h))?;
        let q = (sq * mod_inv(&s, p)?) % p;
        let x = &ebar_order * &q + &x0;
        (q, x)
    };

    if (&x - &x0) % &ebar_order != BigUint::zero() {
        return Err(Error::InternalInconsistency(format!(
            "x - x0 = {} is not a multiple of {ebar_order}",
            &x - &x0
        )));
    }
    if g.pow(&x) != *h {
        return Err(not_a_power(g, h));
    }
    Ok(AttackTranscript {
        x0,
        ebar_order,
        s,
        q,
        zp_dlog_calls: counted.calls,
        x,
    })
}

/// The least `x >= 0` with `g^x = h`, by walking the powers of `g`.
pub fn brute_force_log(g: &EpElement, h: &EpElement) -> Result<Natural> {
    ensure_same_prime(g.p(), h.p())?;
    if !g.is_invertible() {
        return Err(Error::NotInvertible(g.to_string()));
    }
    let mut power = EpElement::one_of(g.p());
    let mut x = BigUint::zero();
    loop {
        if power == *h {
            return Ok(x);
        }
        power = power.mul(g)?;
        x += 1u8;
        if power.is_identity() {
            return Err(not_a_power(g, h));
        }
    }
}

/// Least `x >= 0` with `g^x = h` in `Ebar_p`.
pub fn brute_force_ebar_log(g: &EbarElement, h: &EbarElement) -> Result<Natural> {
    ensure_same_prime(g.p(), h.p())?;
    if !g.is_invertible() {
        return Err(Error::NotInvertible(g.to_string()));
    }
    let mut power = EbarElement::one_of(g.p());
    let mut x = BigUint::zero();
    loop {
        if power == *h {
            return Ok(x);
        }
        power = power.mul(g)?;
        x += BigUint::one();
        if power.is_identity() {
            return Err(not_a_power(g, h));
        }
    }
}
