use std::collections::HashMap;

use super::group::PrimeField;

/// Largest group order the table-based solver will accept (table of 2^22 entries).
pub(crate) const BSGS_MAX_ORDER: u64 = 1 << 44;

/// Baby-step giant-step: `x` in `[0, n)` with `g^x = h`, given `g^n = 1`.
pub(crate) fn bsgs<F: PrimeField>(field: &F, g: &F::Elem, h: &F::Elem, n: u64) -> Option<u64> {
    debug_assert!(n >= 1);
    if field.is_one(h) {
        return Some(0);
    }
    let mut m = n.isqrt();
    if m * m < n {
        m += 1;
    }

    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = field.one();
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = field.mul(&cur, g);
    }

    // g^-m = g^(n - m mod n)
    let stride = field.pow_u64(g, (n - m % n) % n);
    let mut gamma = h.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            return Some((i * m + j) % n);
        }
        gamma = field.mul(&gamma, &stride);
    }
    None
}
