use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, PolynomialRingSpec};

/// The endomorphism `x_i ↦ x_i^{k_i}` of `K[x_1..x_d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerEndomorphism {
    k: Vec<u32>,
}

impl PowerEndomorphism {
    pub fn new(ring: PolynomialRingSpec, k: Vec<u32>) -> Result<Self> {
        ring.check_arity(k.len())?;
        if k.contains(&0) {
            return Err(Error::Input("power exponents must be at least 1".into()));
        }
        Ok(PowerEndomorphism { k })
    }

    /// `x_i ↦ x_i^k` for every variable.
    pub fn uniform(ring: PolynomialRingSpec, k: u32) -> Result<Self> {
        PowerEndomorphism::new(ring, vec![k; ring.num_vars()])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.k
    }

    /// Exponent vector of the `t`-th iterate, `k^t` componentwise.
    pub fn iterate(&self, t: u32) -> Vec<u32> {
        self.k.iter().map(|&k| k.pow(t)).collect()
    }

    /// `{φ^t(a)R}` is cofinal with the powers of `a` exactly when every `k_i ≥ 2`.
    pub fn is_cofinal(&self) -> bool {
        self.k.iter().all(|&k| k >= 2)
    }

    pub fn max_exponent(&self) -> u32 {
        self.k.iter().copied().max().unwrap_or(1)
    }

    /// `φ^t(a)R = a^[k^t]`.
    pub fn image_ideal(&self, a: &MonomialIdeal, t: u32) -> Result<MonomialIdeal> {
        a.bracket_power(&self.iterate(t))
    }
}
