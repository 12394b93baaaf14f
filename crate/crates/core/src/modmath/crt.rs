use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{mod_inv, Natural};
use crate::error::{Error, Result};

/// A residue class `residue mod modulus` with `residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrtResidue {
    residue: Natural,
    modulus: Natural,
}

impl CrtResidue {
    pub fn new(residue: Natural, modulus: Natural) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::InvalidModulus("CRT modulus must be at least 1".into()));
        }
        if residue >= modulus {
            return Err(Error::InvalidInput(format!(
                "residue {residue} is not reduced modulo {modulus}"
            )));
        }
        Ok(Self { residue, modulus })
    }

    /// Reduces an arbitrary value into its class modulo `modulus`.
    pub fn reduce(value: &Natural, modulus: Natural) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::InvalidModulus("CRT modulus must be at least 1".into()));
        }
        Ok(Self {
            residue: value % &modulus,
            modulus,
        })
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn into_residue(self) -> Natural {
        self.residue
    }
}

/// Combines two residue classes into one modulo `lcm(m1, m2)`.
///
/// The moduli need not be coprime; the classes must agree modulo
/// `gcd(m1, m2)`.
pub fn crt_pair(r1: &CrtResidue, r2: &CrtResidue) -> Result<CrtResidue> {
    let (m1, m2) = (&r1.modulus, &r2.modulus);
    let g = m1.gcd(m2);

    let a = &r1.residue % m2;
    let d = (&r2.residue + m2 - a) % m2;
    if !(&d % &g).is_zero() {
        return Err(Error::InconsistentResidues(format!(
            "{} mod {} and {} mod {} disagree modulo {}",
            r1.residue, m1, r2.residue, m2, g
        )));
    }

    let m2_reduced = m2 / &g;
    let t = if m2_reduced.is_one() {
        BigUint::zero()
    } else {
        let inv = mod_inv(&(m1 / &g), &m2_reduced)?;
        ((&d / &g) * inv) % &m2_reduced
    };
    let modulus = (m1 / &g) * m2;
    let residue = (&r1.residue + m1 * t) % &modulus;
    Ok(CrtResidue { residue, modulus })
}
