use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{mod_inv, Natural};
use crate::error::{Error, Result};

/// The Euler isomorphism `(Z_p, +) x (Z_p^*, *) -> Z_{p^2}^*`,
/// `(a, b) -> (1 + a*p) * b^p mod p^2`.
pub fn euler_iso(a: &Natural, b: &Natural, p: &Natural) -> Result<Natural> {
    if a >= p || b >= p {
        return Err(Error::InvalidInput(format!(
            "euler_iso arguments ({a}, {b}) must be reduced modulo {p}"
        )));
    }
    if b.is_zero() {
        return Err(Error::InvalidInput("euler_iso: b must be a unit of Z_p".into()));
    }
    let p2 = p * p;
    Ok(((BigUint::one() + a * p) * b.modpow(p, &p2)) % p2)
}

/// Inverts [`euler_iso`]: `b = c mod p`, then `1 + a*p = c * (b^p)^-1 mod p^2`,
/// then subtract one and divide by `p`.
pub fn euler_iso_inv(c: &Natural, p: &Natural) -> Result<(Natural, Natural)> {
    let p2 = p * p;
    if c >= &p2 {
        return Err(Error::InvalidInput(format!("{c} is not reduced modulo {p2}")));
    }
    let b = c % p;
    if b.is_zero() {
        return Err(Error::InvalidInput(format!("{p} divides {c}; not a unit")));
    }
    let b_to_p = b.modpow(p, &p2);
    let one_plus_ap = (c * mod_inv(&b_to_p, &p2)?) % &p2;
    let a = (one_plus_ap - 1u8) / p;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::nat;
    use std::collections::BTreeSet;

    #[test]
    fn examples() {
        assert_eq!(euler_iso(&nat(0), &nat(1), &nat(5)).unwrap(), nat(1));
        assert_eq!(euler_iso(&nat(1), &nat(2), &nat(3)).unwrap(), nat(5));
        assert_eq!(euler_iso(&nat(2), &nat(3), &nat(5)).unwrap(), nat(23));

        assert_eq!(euler_iso_inv(&nat(1), &nat(7)).unwrap(), (nat(0), nat(1)));
        assert_eq!(euler_iso_inv(&nat(5), &nat(3)).unwrap(), (nat(1), nat(2)));
        assert_eq!(euler_iso_inv(&nat(23), &nat(5)).unwrap(), (nat(2), nat(3)));
    }

    #[test]
    fn errors() {
        assert!(euler_iso(&nat(1), &nat(0), &nat(5)).is_err());
        assert!(euler_iso(&nat(5), &nat(1), &nat(5)).is_err());
        assert!(euler_iso_inv(&nat(10), &nat(5)).is_err());
        assert!(euler_iso_inv(&nat(25), &nat(5)).is_err());
    }

    const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

    #[test]
    fn round_trip_and_bijection() {
        for p in SMALL_PRIMES {
            let pn = nat(p);
            let mut image = BTreeSet::new();
            for a in 0..p {
                for b in 1..p {
                    let c = euler_iso(&nat(a), &nat(b), &pn).unwrap();
                    assert_eq!(euler_iso_inv(&c, &pn).unwrap(), (nat(a), nat(b)));
                    assert!(image.insert(c), "p = {p}: image repeated");
                }
            }
            let units: BTreeSet<_> = (1..p * p).filter(|c| c % p != 0).map(nat).collect();
            assert_eq!(image, units, "p = {p}");
        }
    }

    #[test]
    fn homomorphism() {
        for p in [3u64, 5, 7, 11] {
            let pn = nat(p);
            let p2 = nat(p * p);
            for a1 in 0..p {
                for b1 in 1..p {
                    for a2 in 0..p {
                        for b2 in 1..p {
                            let lhs = euler_iso(&nat((a1 + a2) % p), &nat(b1 * b2 % p), &pn).unwrap();
                            let rhs = euler_iso(&nat(a1), &nat(b1), &pn).unwrap()
                                * euler_iso(&nat(a2), &nat(b2), &pn).unwrap()
                                % &p2;
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
