//! Modular arithmetic over arbitrary-precision naturals: powers, inverses,
//! pairwise CRT with non-coprime moduli, primality, factorization and the
//! Euler isomorphism `Z_p x Z_p^* -> Z_{p^2}^*`.

mod crt;
mod euler;
mod prime;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use crt::{crt_pair, CrtResidue};
pub use euler::{euler_iso, euler_iso_inv};
pub use prime::{factorize, is_prime, random_prime, smooth_prime, Factorization, MR_ROUNDS};
pub(crate) use prime::{mul_mod_u64, pow_mod_u64};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// `base^exp mod m`.
pub fn mod_pow(base: &Natural, exp: &Natural, m: &Natural) -> Result<Natural> {
    if m.is_zero() {
        return Err(Error::InvalidModulus("modulus must be at least 1".into()));
    }
    Ok(base.modpow(exp, m))
}

/// The inverse of `a` modulo `m`, as the representative in `[0, m)`.
pub fn mod_inv(a: &Natural, m: &Natural) -> Result<Natural> {
    if m < &BigUint::from(2u8) {
        return Err(Error::InvalidModulus(format!("inverse modulo {m}")));
    }
    let a = a % m;
    a.modinv(m)
        .ok_or_else(|| Error::NotInvertibleMod(a.to_string(), m.to_string()))
}

/// Returns `(gcd(a, b), lcm(a, b))`.
pub fn gcd_lcm(a: &Natural, b: &Natural) -> Result<(Natural, Natural)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("gcd_lcm(0, 0) is undefined".into()));
    }
    let g = a.gcd(b);
    let l = if a.is_zero() || b.is_zero() {
        BigUint::zero()
    } else {
        (a / &g) * b
    };
    Ok((g, l))
}

pub(crate) fn lcm(a: &Natural, b: &Natural) -> Natural {
    if a.is_zero() || b.is_zero() {
        return BigUint::zero();
    }
    a.lcm(b)
}

/// A reproducible random source derived from a user seed and a list of tags
/// (bit size, trial index, ...). Independent tags give independent streams.
pub fn seeded_rng(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut state = splitmix64(seed);
    for &t in tags {
        state = splitmix64(state ^ splitmix64(t.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    }
    ChaCha8Rng::seed_from_u64(state)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Serde adapter writing a [`Natural`] as a decimal string.
pub mod decimal {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Natural;

    pub fn serialize<S: Serializer>(n: &Natural, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
        let text = String::deserialize(d)?;
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(D::Error::custom(format!("{text:?} is not a decimal natural")));
        }
        text.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn nat(n: u64) -> Natural {
    BigUint::from(n)
}
