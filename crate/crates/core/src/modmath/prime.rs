use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Natural;
use crate::error::{Error, Result};

/// Trial division bound used before Pollard rho takes over.
const TRIAL_DIVISION_BOUND: u64 = 10_000;

/// Miller-Rabin rounds used above 2^64.
pub const MR_ROUNDS: u32 = 40;

/// Deterministic Miller-Rabin bases for every n < 2^64.
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest prime used when building smooth `p - 1`.
const SMOOTH_FACTOR_BOUND: u64 = 1 << 12;

#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// A number together with its prime factorization.
///
/// Primes are strictly increasing and every exponent is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: Natural,
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking that
    /// the primes are increasing, actually prime, and multiply out to `n`.
    pub fn new(n: Natural, factors: Vec<(Natural, u32)>) -> Result<Self> {
        let mut product = BigUint::one();
        for (i, (q, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(Error::InvalidInput(format!("zero exponent for {q}")));
            }
            if i > 0 && factors[i - 1].0 >= *q {
                return Err(Error::InvalidInput("primes must be strictly increasing".into()));
            }
            if !is_prime(q, MR_ROUNDS) {
                return Err(Error::InvalidInput(format!("{q} is not prime")));
            }
            product *= q.pow(*e);
        }
        if product != n {
            return Err(Error::InvalidInput(format!(
                "factors multiply to {product}, not {n}"
            )));
        }
        Ok(Self { n, factors })
    }

    fn from_map(n: Natural, map: BTreeMap<Natural, u32>) -> Self {
        Self {
            n,
            factors: map.into_iter().collect(),
        }
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn product(&self) -> Natural {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (q, e)| acc * q.pow(*e))
    }

    /// Factorization of a divisor `d` of `n`, read off from this one.
    pub fn restrict_to_divisor(&self, d: &Natural) -> Result<Self> {
        if d.is_zero() || !(&self.n % d).is_zero() {
            return Err(Error::InvalidInput(format!("{d} does not divide {}", self.n)));
        }
        let mut rest = d.clone();
        let mut factors = Vec::new();
        for (q, _) in &self.factors {
            let mut e = 0;
            while (&rest % q).is_zero() {
                rest /= q;
                e += 1;
            }
            if e > 0 {
                factors.push((q.clone(), e));
            }
        }
        debug_assert!(rest.is_one());
        Ok(Self {
            n: d.clone(),
            factors,
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (q, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Miller-Rabin primality test.
///
/// Exact for `n < 2^64` (fixed witness set); otherwise `rounds` pseudo-random
/// witnesses derived from `n`, giving error probability at most `4^-rounds`.
pub fn is_prime(n: &Natural, rounds: u32) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % q).is_zero() {
            return false;
        }
    }

    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut seed = [0u8; 32];
    for (dst, src) in seed.iter_mut().zip(n.to_bytes_le()) {
        *dst = src;
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    let two = BigUint::from(2u8);

    'witness: for _ in 0..rounds.max(1) {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in U64_WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in U64_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Complete factorization: trial division up to 10^4, then Pollard rho with
/// Brent's cycle detection on whatever remains.
pub fn factorize(n: &Natural) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut map = BTreeMap::new();
    if let Some(small) = n.to_u64() {
        for (q, e) in factor_u64(small) {
            map.insert(BigUint::from(q), e);
        }
        return Ok(Factorization::from_map(n.clone(), map));
    }

    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        let mut e = 0;
        while (&rest % d).is_zero() {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            map.insert(BigUint::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factor_u64(small) {
                *map.entry(BigUint::from(q)).or_insert(0) += e;
            }
        } else if is_prime(&m, MR_ROUNDS) {
            *map.entry(m).or_insert(0) += 1;
        } else {
            let f = brent_big(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    Ok(Factorization::from_map(n.clone(), map))
}

fn factor_u64(mut n: u64) -> BTreeMap<u64, u32> {
    let mut map = BTreeMap::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            *map.entry(d).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *map.entry(m).or_insert(0) += 1;
        } else {
            let f = brent_u64(m);
            stack.push(m / f);
            stack.push(f);
        }
    }
    map
}

/// A nontrivial factor of the odd composite `n`.
fn brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    const BATCH: u64 = 128;
    for c in 1.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        let mut g = 1;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("Pollard rho exhausted all polynomial constants")
}

fn brent_big(n: &Natural) -> Natural {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        let mut y = BigUint::from(2u8);
        let (mut r, mut q) = (1u64, BigUint::one());
        let (mut x, mut ys) = (y.clone(), y.clone());
        let mut g = BigUint::one();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u8;
    }
}

/// A uniformly chosen prime with exactly `bits` significant bits.
pub fn random_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<Natural> {
    if bits < 2 {
        return Err(Error::InvalidInput(format!("no primes with {bits} bits")));
    }
    let low = BigUint::one() << (bits - 1);
    let high = BigUint::one() << bits;
    loop {
        let candidate = rng.gen_biguint_range(&low, &high);
        if is_prime(&candidate, MR_ROUNDS) {
            return Ok(candidate);
        }
    }
}

/// A prime `p` with exactly `bits` bits whose `p - 1` has only prime factors
/// below 2^12, together with the factorization of `p - 1`.
pub fn smooth_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<(Natural, Factorization)> {
    if bits < 3 {
        return Err(Error::InvalidInput(format!(
            "smooth primes need at least 3 bits, got {bits}"
        )));
    }
    let small: Vec<u64> = (3..SMOOTH_FACTOR_BOUND).filter(|&q| is_prime_u64(q)).collect();
    loop {
        let mut m = BigUint::from(2u8);
        let mut map: BTreeMap<Natural, u32> = BTreeMap::new();
        map.insert(BigUint::from(2u8), 1);
        while m.bits() < bits {
            let room = bits - m.bits();
            let pool: Vec<u64> = small
                .iter()
                .copied()
                .filter(|q| 64 - q.leading_zeros() as u64 <= room + 1)
                .collect();
            let q = pool[rng.gen_range(0..pool.len())];
            m *= q;
            *map.entry(BigUint::from(q)).or_insert(0) += 1;
        }
        if m.bits() != bits {
            continue;
        }
        let p = &m + 1u8;
        if is_prime(&p, MR_ROUNDS) {
            return Ok((p, Factorization::from_map(m, map)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::{nat, seeded_rng};

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(q, e)| (q.to_u64().unwrap(), *e))
            .collect()
    }

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime(&nat(1), 1));
        assert!(is_prime(&nat(31), 1));
        assert!(!is_prime(&nat(33), 1));
    }

    #[test]
    fn primality_matches_trial_division_below_ten_thousand() {
        for n in 0..10_000u64 {
            assert_eq!(is_prime(&nat(n), 1), trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn primality_above_u64() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes; 2^128 + 1 = 59649589127497217 * 5704689200685129054721.
        let m89 = (BigUint::one() << 89) - 1u8;
        let m127 = (BigUint::one() << 127) - 1u8;
        let f7 = (BigUint::one() << 128) + 1u8;
        assert!(is_prime(&m89, MR_ROUNDS));
        assert!(is_prime(&m127, MR_ROUNDS));
        assert!(!is_prime(&f7, MR_ROUNDS));
        // Carmichael number
        assert!(!is_prime(&nat(3_215_031_751), 1));
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&nat(1)).unwrap().factors().is_empty());
        assert_eq!(pairs(&factorize(&nat(12)).unwrap()), vec![(2, 2), (3, 1)]);
        assert_eq!(
            pairs(&factorize(&nat(30)).unwrap()),
            vec![(2, 1), (3, 1), (5, 1)]
        );
        assert!(factorize(&nat(0)).is_err());
    }

    #[test]
    fn factorize_needs_rho() {
        // Both factors exceed the trial-division bound.
        let n = 1_000_003u64 * 998_244_353;
        assert_eq!(
            pairs(&factorize(&nat(n)).unwrap()),
            vec![(1_000_003, 1), (998_244_353, 1)]
        );
        // Above 2^64, so the multiprecision walk runs.
        let m61 = (BigUint::one() << 61) - 1u8;
        let big = &m61 * nat(1_000_003) * nat(998_244_353);
        let f = factorize(&big).unwrap();
        assert_eq!(f.product(), big);
        assert_eq!(
            f.factors().iter().map(|(q, e)| (q.clone(), *e)).collect::<Vec<_>>(),
            vec![(nat(1_000_003), 1), (nat(998_244_353), 1), (m61, 1)]
        );
    }

    #[test]
    fn factorize_reconstructs_every_n_up_to_a_million() {
        for n in 1..=1_000_000u64 {
            let f = factor_u64(n);
            let product: u64 = f.iter().map(|(q, e)| q.pow(*e)).product();
            assert_eq!(product, n);
            assert!(f.keys().all(|&q| is_prime_u64(q)));
        }
    }

    #[test]
    fn factorization_validation() {
        assert!(Factorization::new(nat(12), vec![(nat(2), 2), (nat(3), 1)]).is_ok());
        assert!(Factorization::new(nat(12), vec![(nat(3), 1), (nat(2), 2)]).is_err());
        assert!(Factorization::new(nat(12), vec![(nat(4), 1), (nat(3), 1)]).is_err());
        assert!(Factorization::new(nat(13), vec![(nat(2), 2), (nat(3), 1)]).is_err());
    }

    #[test]
    fn restrict_to_divisor() {
        let f = factorize(&nat(360)).unwrap();
        assert_eq!(pairs(&f.restrict_to_divisor(&nat(12)).unwrap()), vec![(2, 2), (3, 1)]);
        assert!(f.restrict_to_divisor(&nat(7)).is_err());
    }

    #[test]
    fn random_prime_sizes() {
        let mut rng = seeded_rng(1, &[]);
        for _ in 0..20 {
            let p = random_prime(2, &mut rng).unwrap().to_u64().unwrap();
            assert!(p == 2 || p == 3);
            let p = random_prime(4, &mut rng).unwrap().to_u64().unwrap();
            assert!(p == 11 || p == 13);
        }
        for bits in [8u64, 16, 32, 64, 128] {
            let p = random_prime(bits, &mut rng).unwrap();
            assert_eq!(p.bits(), bits);
            assert!(is_prime(&p, MR_ROUNDS));
        }
        assert!(random_prime(1, &mut rng).is_err());
    }

    #[test]
    fn random_prime_is_deterministic_per_seed() {
        let a = random_prime(32, &mut seeded_rng(9, &[])).unwrap();
        let b = random_prime(32, &mut seeded_rng(9, &[])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn smooth_prime_structure() {
        let mut rng = seeded_rng(3, &[]);
        for bits in [8u64, 32, 64, 128] {
            let (p, f) = smooth_prime(bits, &mut rng).unwrap();
            assert_eq!(p.bits(), bits);
            assert!(is_prime(&p, MR_ROUNDS));
            assert_eq!(f.n(), &(&p - 1u8));
            assert_eq!(f.product(), &p - 1u8);
            assert!(f.factors().iter().all(|(q, _)| q < &nat(SMOOTH_FACTOR_BOUND)));
        }
    }
}
