use crate::complexes::{ChamberDecomposition, ThresholdSet};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::monomial::Degree;
use crate::simplicial::{mask_of, SimplicialComplex};

use super::table::{tabulate, CohomologyTable, TableKind};

/// `dim H^j_m(K[Δ])_α` by Hochster's formula: zero if some `α_i > 0`; otherwise,
/// with `F` the negative support of `α`, `dim H̃^{j-|F|-1}(lk F)` when `F ∈ Δ` and zero otherwise.
pub fn hochster_dim(delta: &SimplicialComplex, field: FieldSpec, j: usize, alpha: &Degree) -> usize {
    hochster_dims(delta, field, alpha).get(j).copied().unwrap_or(0)
}

fn hochster_dims(delta: &SimplicialComplex, field: FieldSpec, alpha: &Degree) -> Vec<usize> {
    let n = delta.vertex_count();
    let mut out = vec![0; n + 1];
    if alpha.coords().iter().any(|&a| a > 0) {
        return out;
    }
    let neg: Vec<usize> = (0..n).filter(|&i| alpha.coords()[i] < 0).collect();
    let f = mask_of(&neg);
    if !delta.contains(f) {
        return out;
    }
    // reduced cohomology vector starts at degree -1
    let h = delta.link(f).reduced_cohomology(field);
    for (idx, &dim) in h.iter().enumerate() {
        let j = idx + neg.len();
        if j <= n {
            out[j] = dim;
        }
    }
    out
}

/// Hochster tables for `j = 0 ..= n`; chambers are the `3^n` sign patterns.
pub fn hochster_tables(delta: &SimplicialComplex, field: FieldSpec) -> Result<Vec<CohomologyTable>> {
    if delta.is_void() {
        return Err(Error::Input("Hochster's formula needs a non-void complex".into()));
    }
    let n = delta.vertex_count();
    let mut t = ThresholdSet::zero(n);
    for i in 0..n {
        t.insert(i, 1);
    }
    Ok(tabulate(TableKind::Hochster, ChamberDecomposition::new(t), n, |alpha| hochster_dims(delta, field, alpha)))
}

pub fn hochster_table(delta: &SimplicialComplex, field: FieldSpec, j: usize) -> Result<CohomologyTable> {
    Ok(super::ext::pick(hochster_tables(delta, field)?, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::local::hm_tables;
    use crate::monomial::PolynomialRingSpec;

    #[test]
    fn two_points() {
        let delta = SimplicialComplex::new(2, &[vec![0], vec![1]]).unwrap();
        let h = hochster_tables(&delta, FieldSpec::Rational).unwrap();
        assert_eq!(h[1].dim_at(&Degree(vec![0, 0])), 1);
        assert_eq!(h[1].dim_at(&Degree(vec![-1, 0])), 1);
        assert_eq!(h[1].dim_at(&Degree(vec![-1, -1])), 0);
        assert!(h[0].is_zero() && h[2].is_zero());
    }

    #[test]
    fn matches_cech_on_small_complexes() {
        let ring = PolynomialRingSpec::new(3, 0).unwrap();
        for delta in SimplicialComplex::enumerate_all(3) {
            let h = hochster_tables(&delta, FieldSpec::Rational).unwrap();
            let m = hm_tables(&delta.stanley_reisner(ring).unwrap()).unwrap();
            for (x, y) in h.iter().zip(&m) {
                assert!(x.agrees_with(y), "{delta:?}");
            }
        }
    }
}
