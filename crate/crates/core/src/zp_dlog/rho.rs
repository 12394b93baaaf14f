use rand::Rng;

use super::group::PrimeField;
use crate::modmath::{mul_mod_u64, pow_mod_u64};

const PARTITIONS: usize = 16;
const MAX_RESTARTS: usize = 64;

struct Walk<F: PrimeField> {
    steps: Vec<(F::Elem, u64, u64)>,
}

impl<F: PrimeField> Walk<F> {
    fn random<R: Rng + ?Sized>(field: &F, g: &F::Elem, h: &F::Elem, q: u64, rng: &mut R) -> Self {
        let steps = (0..PARTITIONS)
            .map(|_| {
                let (m, n) = (rng.gen_range(0..q), rng.gen_range(0..q));
                let e = field.mul(&field.pow_u64(g, m), &field.pow_u64(h, n));
                (e, m, n)
            })
            .collect();
        Self { steps }
    }

    #[inline]
    fn advance(&self, field: &F, state: &mut (F::Elem, u64, u64), q: u64) {
        let (mult, dm, dn) = &self.steps[(field.label(&state.0) as usize) % PARTITIONS];
        state.0 = field.mul(&state.0, mult);
        state.1 = (state.1 + dm) % q;
        state.2 = (state.2 + dn) % q;
    }
}

/// Pollard rho with a 16-way additive walk and Floyd cycle detection.
///
/// `g` must have prime order `q`. Degenerate collisions restart with fresh
/// walk parameters; gives up (returning `None`) only after repeated failure,
/// which in practice means `h` is not in `<g>`.
pub(crate) fn rho<F: PrimeField, R: Rng + ?Sized>(
    field: &F,
    g: &F::Elem,
    h: &F::Elem,
    q: u64,
    rng: &mut R,
) -> Option<u64> {
    if field.is_one(h) {
        return Some(0);
    }
    if h == g {
        return Some(1 % q);
    }
    let step_budget = 16 * ((q as f64).sqrt() as u64 + 16);

    for _ in 0..MAX_RESTARTS {
        let walk = Walk::random(field, g, h, q, rng);
        let (a0, b0) = (rng.gen_range(0..q), rng.gen_range(0..q));
        let start = field.mul(&field.pow_u64(g, a0), &field.pow_u64(h, b0));
        let mut tortoise = (start, a0, b0);
        let mut hare = tortoise.clone();

        for _ in 0..step_budget {
            walk.advance(field, &mut tortoise, q);
            walk.advance(field, &mut hare, q);
            walk.advance(field, &mut hare, q);
            if tortoise.0 != hare.0 {
                continue;
            }
            // g^a1 h^b1 = g^a2 h^b2  =>  (b2 - b1) x = a1 - a2 (mod q)
            let db = (hare.2 + q - tortoise.2) % q;
            if db == 0 {
                break;
            }
            let da = (tortoise.1 + q - hare.1) % q;
            let x = mul_mod_u64(da, pow_mod_u64(db, q - 2, q), q);
            if field.pow_u64(g, x) == *h {
                return Some(x);
            }
            break;
        }
    }
    None
}
