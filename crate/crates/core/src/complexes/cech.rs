use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec};
use crate::monomial::{Degree, Monomial, MonomialIdeal, PolynomialRingSpec};

use super::chamber::ThresholdSet;
use super::graded::Direction;
use super::strand::Strand;
use super::taylor::{subsets_by_size, MAX_TAYLOR_GENERATORS};

/// Čech complex on monomials `f_1..f_r` with coefficients in `R/b`:
/// term `j` is `⊕_{|S|=j} (R/b)_{f_S}`, with sign `(-1)^{#{s∈S : s<l}}` on
/// `e_S → e_{S∪{l}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechComplexSpec {
    ring: PolynomialRingSpec,
    localizing: Vec<Monomial>,
    coefficients: MonomialIdeal,
    subsets: Vec<Vec<u64>>,
    /// Variable-support bitmask of `f_S`, aligned with `subsets`.
    supports: Vec<Vec<u32>>,
}

impl CechComplexSpec {
    pub fn new(localizing: Vec<Monomial>, coefficients: MonomialIdeal) -> Result<Self> {
        let ring = coefficients.ring();
        let d = ring.num_vars();
        for f in &localizing {
            ring.check_arity(f.num_vars())?;
        }
        if localizing.len() > MAX_TAYLOR_GENERATORS {
            return Err(Error::Input(format!("{} localizing elements is too many", localizing.len())));
        }
        let single: Vec<u32> = localizing.iter().map(|f| f.support().iter().fold(0u32, |m, &i| m | (1 << i))).collect();
        let subsets = subsets_by_size(localizing.len());
        let supports = subsets
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&s| (0..single.len()).filter(|j| s >> j & 1 == 1).fold(0u32, |m, j| m | single[j]))
                    .collect()
            })
            .collect();
        debug_assert!(d <= 31);
        Ok(CechComplexSpec { ring, localizing, coefficients, subsets, supports })
    }

    /// `Č(a; R)`, computing `H_a(R)`.
    pub fn on_generators(a: &MonomialIdeal) -> Result<Self> {
        CechComplexSpec::new(a.generators().to_vec(), MonomialIdeal::zero(a.ring()))
    }

    /// `Č(x_1..x_d; R/b)`, computing `H_m(R/b)`.
    pub fn on_variables(b: &MonomialIdeal) -> Result<Self> {
        let d = b.num_vars();
        CechComplexSpec::new((0..d).map(|i| Monomial::var(d, i)).collect(), b.clone())
    }

    pub fn ring(&self) -> PolynomialRingSpec {
        self.ring
    }

    pub fn localizing(&self) -> &[Monomial] {
        &self.localizing
    }

    pub fn coefficients(&self) -> &MonomialIdeal {
        &self.coefficients
    }

    /// Thresholds `{0} ∪ {exponents of the coefficient generators}`.
    pub fn thresholds(&self) -> ThresholdSet {
        let mut t = ThresholdSet::zero(self.ring.num_vars());
        for g in self.coefficients.generators() {
            t.insert_point(g.to_degree().coords());
        }
        t
    }

    /// Whether `(R/b)_{f_S}` is nonzero in degree `α`, given the support of `f_S`:
    /// `α_i ≥ 0` off the support, and no generator of `b` lies below `α` off the support.
    pub fn survives(&self, support: u32, alpha: &Degree) -> bool {
        let off: Vec<usize> = (0..self.ring.num_vars()).filter(|i| support >> i & 1 == 0).collect();
        let a = alpha.coords();
        if off.iter().any(|&i| a[i] < 0) {
            return false;
        }
        !self.coefficients.generators().iter().any(|g| off.iter().all(|&i| i64::from(g.exponents()[i]) <= a[i]))
    }

    /// The degree-`α` strand, a cohomological complex starting at index 0.
    pub fn strand(&self, field: FieldSpec, alpha: &Degree) -> Strand {
        let survivors: Vec<Vec<usize>> = self
            .supports
            .iter()
            .map(|level| (0..level.len()).filter(|&j| self.survives(level[j], alpha)).collect())
            .collect();
        let r = self.localizing.len();
        let mats = (0..r)
            .map(|j| {
                let (src, tgt) = (&survivors[j], &survivors[j + 1]);
                let mut m = ExactMatrix::zeros(field, tgt.len(), src.len());
                for (c, &si) in src.iter().enumerate() {
                    let s = self.subsets[j][si];
                    for (row, &ti) in tgt.iter().enumerate() {
                        let t = self.subsets[j + 1][ti];
                        if t & s == s {
                            let l = (t & !s).trailing_zeros();
                            let below = (s & ((1u64 << l) - 1)).count_ones();
                            m.set_i64(row, c, if below.is_multiple_of(2) { 1 } else { -1 });
                        }
                    }
                }
                m
            })
            .collect();
        Strand::assemble(field, alpha.clone(), Direction::Cohomological, survivors, mats)
    }
}

/// Degree-`α` strand of a Čech complex.
pub fn cech_strand(spec: &CechComplexSpec, field: FieldSpec, alpha: &Degree) -> Strand {
    spec.strand(field, alpha)
}
