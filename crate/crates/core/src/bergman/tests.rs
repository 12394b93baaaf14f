use super::*;
use crate::modmath::{factorize, nat, random_prime, seeded_rng};
use proptest::prelude::*;
use rand::Rng;

fn ep(p: u64, c: [u64; 5]) -> EpElement {
    EpElement::from_u64(p, c).unwrap()
}

fn eb(p: u64, c: [u64; 4]) -> EbarElement {
    EbarElement::from_u64(p, c).unwrap()
}

fn fact(p: u64) -> Factorization {
    factorize(&nat(p - 1)).unwrap()
}

/// Plain integer 2x2 product followed by row-wise reduction, independent of
/// the coefficient formulas.
fn matrix_product(p: u64, x: [u64; 5], y: [u64; 5]) -> [u64; 5] {
    let m = |[a, b, c, u, v]: [u64; 5]| [[a as u128, b as u128], [(c * p) as u128, (v + u * p) as u128]];
    let (l, r) = (m(x), m(y));
    let mut out = [[0u128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = l[i][0] * r[0][j] + l[i][1] * r[1][j];
        }
    }
    let (p1, p2) = (p as u128, (p * p) as u128);
    let row1 = [out[0][0] % p1, out[0][1] % p1];
    let row2 = [out[1][0] % p2, out[1][1] % p2];
    assert_eq!(row2[0] % p1, 0);
    [row1[0], row1[1], row2[0] / p1, row2[1] / p1, row2[1] % p1].map(|x| x as u64)
}

fn coefficients(g: &EpElement) -> [u64; 5] {
    use num_traits::ToPrimitive;
    [g.a(), g.b(), g.c(), g.u(), g.v()].map(|x| x.to_u64().unwrap())
}

fn invertible_elements(p: u64) -> Vec<EpElement> {
    enumerate_all(p).unwrap().into_iter().filter(|g| g.is_invertible()).collect()
}

fn invertible_bar_elements(p: u64) -> Vec<EbarElement> {
    let mut out = Vec::new();
    for a in 1..p {
        for b in 0..p {
            for c in 0..p {
                for v in 1..p {
                    out.push(eb(p, [a, b, c, v]));
                }
            }
        }
    }
    out
}

fn brute_order_ep(g: &EpElement) -> u64 {
    let mut x = g.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.mul(g).unwrap();
        k += 1;
    }
    k
}

fn brute_order_ebar(g: &EbarElement) -> u64 {
    let mut x = g.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.mul(g).unwrap();
        k += 1;
    }
    k
}

fn random_element<R: Rng>(p: u64, rng: &mut R) -> EpElement {
    ep(p, [0; 5].map(|_| rng.gen_range(0..p)))
}

#[test]
fn construction_rejects_bad_input() {
    assert!(EpElement::from_u64(4, [1, 0, 0, 0, 1]).is_err());
    assert!(EpElement::from_u64(3, [3, 0, 0, 0, 1]).is_err());
    assert!(EbarElement::from_u64(3, [1, 0, 0, 3]).is_err());
    assert!(EpElement::from_matrix(nat(3), [[nat(1), nat(0)], [nat(1), nat(1)]]).is_err());
}

#[test]
fn matrix_round_trip() {
    let g = ep(3, [2, 1, 0, 1, 2]);
    assert_eq!(g.to_matrix(), [[nat(2), nat(1)], [nat(0), nat(5)]]);
    let h = EpElement::from_matrix(nat(3), [[nat(5), nat(4)], [nat(21), nat(25)]]).unwrap();
    assert_eq!(h, ep(3, [2, 1, 1, 2, 1]));
}

#[test]
fn mul_examples() {
    let g = ep(3, [2, 1, 0, 1, 2]);
    let one = EpElement::identity(nat(3)).unwrap();
    assert_eq!(g.mul(&one).unwrap(), g);
    assert_eq!(one.mul(&g).unwrap(), g);
    assert_eq!(g.mul(&g).unwrap(), ep(3, [1, 1, 0, 2, 1]));
    let h = ep(3, [1, 1, 0, 0, 2]);
    assert_eq!(h.mul(&h).unwrap(), ep(3, [1, 0, 0, 1, 1]));
}

#[test]
fn mismatched_primes() {
    let g = ep(3, [1, 0, 0, 0, 1]);
    let h = ep(5, [1, 0, 0, 0, 1]);
    assert!(matches!(g.mul(&h), Err(Error::MismatchedPrime(..))));
    assert!(matches!(g.add(&h), Err(Error::MismatchedPrime(..))));
    assert!(matches!(g.bar().mul(&h.bar()), Err(Error::MismatchedPrime(..))));
}

#[test]
fn mul_matches_integer_matrices_exhaustively_at_3() {
    let all = enumerate_all(3).unwrap();
    for x in &all {
        for y in &all {
            let got = coefficients(&x.mul(y).unwrap());
            assert_eq!(got, matrix_product(3, coefficients(x), coefficients(y)));
        }
    }
}

#[test]
fn mul_matches_integer_matrices_at_larger_primes() {
    let mut rng = seeded_rng(10, &[]);
    for p in [5u64, 7, 251, 65_521, 4_294_967_291] {
        for _ in 0..2_000 {
            let (x, y) = (random_element(p, &mut rng), random_element(p, &mut rng));
            assert_eq!(
                coefficients(&x.mul(&y).unwrap()),
                matrix_product(p, coefficients(&x), coefficients(&y))
            );
        }
    }
}

#[test]
fn add_examples() {
    let g = ep(3, [2, 1, 0, 1, 2]);
    assert_eq!(g.add(&EpElement::zero(nat(3)).unwrap()).unwrap(), g);
    assert_eq!(g.add(&g).unwrap(), ep(3, [1, 2, 0, 0, 1]));
    assert_eq!(
        ep(3, [1, 0, 1, 0, 1]).add(&ep(3, [2, 0, 2, 0, 2])).unwrap(),
        ep(3, [0, 0, 0, 1, 0])
    );
}

#[test]
fn ring_axioms_on_random_triples() {
    let mut rng = seeded_rng(11, &[]);
    for p in [3u64, 5, 7, 251] {
        for _ in 0..10_000 {
            let (x, y, z) = (
                random_element(p, &mut rng),
                random_element(p, &mut rng),
                random_element(p, &mut rng),
            );
            let xy = x.mul(&y).unwrap();
            assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            let y_plus_z = y.add(&z).unwrap();
            assert_eq!(
                x.mul(&y_plus_z).unwrap(),
                xy.add(&x.mul(&z).unwrap()).unwrap()
            );
            assert_eq!(
                y_plus_z.mul(&x).unwrap(),
                y.mul(&x).unwrap().add(&z.mul(&x).unwrap()).unwrap()
            );
            assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        }
    }
}

#[test]
fn pow_examples() {
    let g = ep(3, [2, 1, 0, 1, 2]);
    assert_eq!(g.pow(&nat(0)), ep(3, [1, 0, 0, 0, 1]));
    assert_eq!(g.pow(&nat(3)), ep(3, [2, 0, 0, 2, 2]));
    assert!(g.pow(&nat(6)).is_identity());
    assert_eq!(brute_order_ep(&g), 6);
}

#[test]
fn pow_matches_repeated_multiplication() {
    let mut rng = seeded_rng(12, &[]);
    for p in [3u64, 7, 65_521] {
        for _ in 0..50 {
            let g = random_element(p, &mut rng);
            let mut acc = EpElement::identity(nat(p)).unwrap();
            for n in 0..40u64 {
                assert_eq!(g.pow(&nat(n)), acc);
                acc = acc.mul(&g).unwrap();
            }
        }
    }
}

#[test]
fn invertibility_examples() {
    assert!(EpElement::identity(nat(3)).unwrap().is_invertible());
    assert!(!ep(3, [0, 1, 1, 1, 1]).is_invertible());
    assert!(!ep(3, [1, 1, 1, 1, 0]).is_invertible());
    assert!(matches!(ep(3, [0, 1, 1, 1, 1]).inverse(), Err(Error::NotInvertible(_))));
}

#[test]
fn invertible_count_and_density() {
    for p in [3u64, 5] {
        let count = enumerate_all(p).unwrap().iter().filter(|g| g.is_invertible()).count() as u64;
        assert_eq!(count, p.pow(3) * (p - 1).pow(2));
        // count > (1 - 2/p) p^5  <=>  count * p > (p - 2) p^5
        assert!(count * p > (p - 2) * p.pow(5));
        // Invertibility criterion agrees with "has a two-sided inverse".
        let all = enumerate_all(p).unwrap();
        if p == 3 {
            let one = EpElement::identity(nat(p)).unwrap();
            for g in &all {
                let has_inverse = all.iter().any(|h| g.mul(h).unwrap() == one && h.mul(g).unwrap() == one);
                assert_eq!(has_inverse, g.is_invertible(), "{g}");
            }
        }
    }
    assert_eq!(invertible_elements(3).len(), 108);
}

#[test]
fn inverse_examples() {
    let one = EpElement::identity(nat(3)).unwrap();
    assert_eq!(one.inverse().unwrap(), one);
    assert_eq!(ep(3, [2, 1, 0, 1, 2]).inverse().unwrap(), ep(3, [2, 2, 0, 0, 2]));
    assert_eq!(ep(3, [1, 0, 0, 1, 1]).inverse().unwrap(), ep(3, [1, 0, 0, 2, 1]));
}

#[test]
fn closed_form_inverse_exhaustive_at_3() {
    for g in invertible_elements(3) {
        let h = g.inverse_closed_form().unwrap();
        assert!(g.mul(&h).unwrap().is_identity(), "{g}");
        assert!(h.mul(&g).unwrap().is_identity(), "{g}");
        assert_eq!(g.inverse().unwrap(), h);
    }
}

#[test]
fn closed_form_inverse_at_32_bits() {
    let mut rng = seeded_rng(13, &[]);
    let p = random_prime(32, &mut rng).unwrap();
    for _ in 0..10_000 {
        let g = sample_invertible(&p, &mut rng).unwrap();
        let h = g.inverse_closed_form().unwrap();
        assert!(g.mul(&h).unwrap().is_identity());
        assert!(h.mul(&g).unwrap().is_identity());
    }
}

#[test]
fn bar_examples() {
    assert_eq!(
        EpElement::identity(nat(3)).unwrap().bar(),
        EbarElement::identity(nat(3)).unwrap()
    );
    assert_eq!(ep(3, [2, 1, 0, 1, 2]).bar(), eb(3, [2, 1, 0, 2]));
}

#[test]
fn bar_is_multiplicative_on_invertible_pairs_at_3() {
    let units = invertible_elements(3);
    assert_eq!(units.len(), 108);
    for x in &units {
        for y in &units {
            assert_eq!(x.mul(y).unwrap().bar(), x.bar().mul(&y.bar()).unwrap());
        }
    }
}

#[test]
fn bar_is_a_ring_homomorphism_on_all_of_e3() {
    let all = enumerate_all(3).unwrap();
    for x in &all {
        for y in &all {
            assert_eq!(x.mul(y).unwrap().bar(), x.bar().mul(&y.bar()).unwrap());
            assert_eq!(x.add(y).unwrap().bar(), x.bar().add(&y.bar()).unwrap());
        }
    }
}

#[test]
fn ebar_mul_examples() {
    let one = EbarElement::identity(nat(3)).unwrap();
    let g = eb(3, [2, 1, 0, 2]);
    assert_eq!(g.mul(&one).unwrap(), g);
    assert_eq!(g.mul(&g).unwrap(), eb(3, [1, 1, 0, 1]));
    let h = eb(3, [1, 1, 0, 2]);
    assert_eq!(h.mul(&h).unwrap(), eb(3, [1, 0, 0, 1]));
}

#[test]
fn d_coefficient_examples() {
    let d = |a, v, x| d_coefficient(&nat(a), &nat(v), &nat(x), &nat(3)).unwrap().into_inner();
    assert_eq!(d(2, 1, 0), nat(0));
    assert_eq!(d(2, 2, 0), nat(0));
    assert_eq!(d(1, 2, 2), nat(0));
    assert_eq!(d(2, 2, 2), nat(1));
    assert!(d_coefficient(&nat(0), &nat(1), &nat(1), &nat(3)).is_err());
}

#[test]
fn pow_closed_examples() {
    let g = eb(3, [2, 1, 0, 2]);
    assert!(g.pow_closed(&nat(0)).unwrap().is_identity());
    assert_eq!(g.pow_closed(&nat(2)).unwrap(), eb(3, [1, 1, 0, 1]));
    assert_eq!(g.pow_closed(&nat(4)).unwrap(), eb(3, [1, 2, 0, 1]));
    assert!(eb(3, [0, 1, 0, 1]).pow_closed(&nat(2)).is_err());
}

#[test]
fn pow_closed_matches_iterated_multiplication() {
    for p in [3u64, 5] {
        for g in invertible_bar_elements(p) {
            let mut acc = EbarElement::identity(nat(p)).unwrap();
            for x in 0..=2 * p * (p - 1) {
                assert_eq!(g.pow_closed(&nat(x)).unwrap(), acc, "g = {g}, x = {x}");
                acc = acc.mul(&g).unwrap();
            }
        }
    }
}

#[test]
fn pow_closed_handles_huge_exponents() {
    let mut rng = seeded_rng(14, &[]);
    let p = random_prime(64, &mut rng).unwrap();
    for _ in 0..200 {
        let g = sample_invertible(&p, &mut rng).unwrap().bar();
        let x = rng.gen_biguint_below(&(&p * &p * &p));
        assert_eq!(g.pow_closed(&x).unwrap(), g.pow(&x));
    }
}

#[test]
fn ebar_order_examples() {
    let f = fact(3);
    assert_eq!(EbarElement::identity(nat(3)).unwrap().order(&f).unwrap(), nat(1));
    assert_eq!(eb(3, [2, 1, 0, 2]).order(&f).unwrap(), nat(6));
    assert_eq!(brute_order_ebar(&eb(3, [2, 1, 0, 2])), 6);
    assert_eq!(eb(3, [1, 1, 0, 2]).order(&f).unwrap(), nat(2));
    assert_eq!(brute_order_ebar(&eb(3, [1, 1, 0, 2])), 2);
}

#[test]
fn ebar_order_matches_brute_force() {
    for p in [3u64, 5, 7] {
        let f = fact(p);
        for g in invertible_bar_elements(p) {
            assert_eq!(g.order(&f).unwrap(), nat(brute_order_ebar(&g)), "g = {g}");
        }
    }
}

#[test]
fn ebar_inverse_is_two_sided() {
    for g in invertible_bar_elements(5) {
        let h = g.inverse().unwrap();
        assert!(g.mul(&h).unwrap().is_identity());
        assert!(h.mul(&g).unwrap().is_identity());
    }
}

#[test]
fn ep_order_examples() {
    let f = fact(3);
    assert_eq!(EpElement::identity(nat(3)).unwrap().order(&f).unwrap(), nat(1));
    assert_eq!(ep(3, [2, 1, 0, 1, 2]).order(&f).unwrap(), nat(6));
    assert_eq!(ep(3, [1, 0, 0, 1, 1]).order(&f).unwrap(), nat(3));
    assert!(matches!(ep(3, [0, 0, 0, 0, 1]).order(&f), Err(Error::NotInvertible(_))));
}

#[test]
fn ep_order_exhaustive_at_3() {
    let f = fact(3);
    for g in invertible_elements(3) {
        assert_eq!(g.order(&f).unwrap(), nat(brute_order_ep(&g)), "g = {g}");
    }
}

#[test]
fn ep_order_random_at_251() {
    let f = fact(251);
    let mut rng = seeded_rng(15, &[]);
    for _ in 0..1_000 {
        let g = sample_invertible(&nat(251), &mut rng).unwrap();
        assert_eq!(g.order(&f).unwrap(), nat(brute_order_ep(&g)), "g = {g}");
    }
}

#[test]
fn sampling_is_uniform_over_units_at_3() {
    use std::collections::HashMap;
    let mut rng = seeded_rng(16, &[]);
    let draws = 108 * 500;
    let mut counts: HashMap<EpElement, u64> = HashMap::new();
    for _ in 0..draws {
        let g = sample_invertible(&nat(3), &mut rng).unwrap();
        assert!(g.is_invertible());
        *counts.entry(g).or_default() += 1;
    }
    assert_eq!(counts.len(), 108);
    // Chi-square with 107 degrees of freedom; 99.99th percentile is about 175.
    let expected = 500.0;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi2 < 175.0, "chi-square = {chi2}");
}

#[test]
fn sampling_is_deterministic() {
    let g = sample_invertible(&nat(65_521), &mut seeded_rng(17, &[])).unwrap();
    let h = sample_invertible(&nat(65_521), &mut seeded_rng(17, &[])).unwrap();
    assert_eq!(g, h);
    assert!(sample_invertible(&nat(9), &mut seeded_rng(17, &[])).is_err());
}

#[test]
fn text_forms() {
    let g = EpElement::parse(&nat(3), "2,1,0,1,2").unwrap();
    assert_eq!(g, ep(3, [2, 1, 0, 1, 2]));
    assert_eq!(g.to_string(), "2,1,0,1,2");
    assert_eq!(g.bar().to_string(), "2,1,0,2");
    assert_eq!(EbarElement::parse(&nat(3), "2,1,0,2").unwrap(), g.bar());

    for bad in ["", "1,2,3,4", "1,2,3,4,5,6", "1, 2,0,0,1", "1,2,0,0,x", "1,2,0,0,-1", "3,0,0,0,1"] {
        assert!(EpElement::parse(&nat(3), bad).is_err(), "{bad:?}");
    }
}

#[test]
fn json_form() {
    let g = ep(3, [2, 1, 0, 1, 2]);
    let json = g.to_json();
    assert_eq!(json, r#"{"p":"3","a":"2","b":"1","c":"0","u":"1","v":"2"}"#);
    assert_eq!(EpElement::from_json(&json).unwrap(), g);
    assert!(EpElement::from_json(r#"{"p":"3","a":"3","b":"1","c":"0","u":"1","v":"2"}"#).is_err());
    assert!(EpElement::from_json(r#"{"p":"4","a":"1","b":"1","c":"0","u":"1","v":"2"}"#).is_err());
    let h = g.bar();
    assert_eq!(EbarElement::from_json(&h.to_json()).unwrap(), h);
}

proptest! {
    #[test]
    fn text_and_json_round_trip(seed in any::<u64>(), bits in 2u64..130) {
        let mut rng = seeded_rng(seed, &[]);
        let p = random_prime(bits, &mut rng).unwrap();
        let g = EpElement::new(
            p.clone(),
            rng.gen_biguint_below(&p),
            rng.gen_biguint_below(&p),
            rng.gen_biguint_below(&p),
            rng.gen_biguint_below(&p),
            rng.gen_biguint_below(&p),
        ).unwrap();
        prop_assert_eq!(&EpElement::parse(&p, &g.to_string()).unwrap(), &g);
        prop_assert_eq!(&EpElement::from_json(&g.to_json()).unwrap(), &g);
        prop_assert_eq!(&EbarElement::parse(&p, &g.bar().to_string()).unwrap(), &g.bar());
    }

    #[test]
    fn inverse_round_trip(seed in any::<u64>(), bits in 2u64..130) {
        let mut rng = seeded_rng(seed, &[]);
        let p = random_prime(bits, &mut rng).unwrap();
        let g = sample_invertible(&p, &mut rng).unwrap();
        let h = g.inverse_closed_form().unwrap();
        prop_assert!(g.mul(&h).unwrap().is_identity());
        prop_assert_eq!(h.inverse().unwrap(), g);
    }
}
