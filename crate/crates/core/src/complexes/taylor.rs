use itertools::Itertools;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

use super::graded::{Direction, GradedChainMap, GradedFreeComplex, MonomialEntry, MonomialMatrix};

/// Largest generator count accepted for Taylor complexes (`2^r` summands).
pub const MAX_TAYLOR_GENERATORS: usize = 20;

/// Subsets of `0..r` of each size, as bitmasks, each size in lex order.
pub(crate) fn subsets_by_size(r: usize) -> Vec<Vec<u64>> {
    (0..=r).map(|i| (0..r).combinations(i).map(|s| s.iter().fold(0u64, |m, &j| m | (1 << j))).collect()).collect()
}

fn lcm_of(gens: &[Monomial], mask: u64, d: usize) -> Monomial {
    (0..gens.len()).filter(|j| mask >> j & 1 == 1).fold(Monomial::one(d), |acc, j| acc.lcm(&gens[j]))
}

/// Taylor resolution of `R/a`, homological: `F_i = ⊕_{|S|=i} R(-lcm_S)` and
/// `d(e_S) = Σ_pos (-1)^pos (lcm_S / lcm_{S∖j}) e_{S∖j}`.
///
/// The zero ideal gives the one-term complex `R`.
pub fn taylor_complex(a: &MonomialIdeal) -> Result<GradedFreeComplex> {
    let ring = a.ring();
    let d = ring.num_vars();
    let gens = a.generators();
    let r = gens.len();
    if r > MAX_TAYLOR_GENERATORS {
        return Err(Error::Input(format!("{r} generators exceed the Taylor limit of {MAX_TAYLOR_GENERATORS}")));
    }
    let subsets = subsets_by_size(r);
    let lcms: Vec<Vec<Monomial>> =
        subsets.iter().map(|level| level.iter().map(|&s| lcm_of(gens, s, d)).collect()).collect();
    let mut differentials = Vec::with_capacity(r);
    for i in 0..r {
        let (src, tgt) = (&subsets[i + 1], &subsets[i]);
        let mut m = MonomialMatrix::zeros(tgt.len(), src.len());
        for (c, &s) in src.iter().enumerate() {
            let members = (0..r).filter(|j| s >> j & 1 == 1);
            for (pos, j) in members.enumerate() {
                let t = s & !(1 << j);
                let row = tgt.binary_search_by(|x| lex_cmp(*x, t)).expect("face of a subset is listed");
                let exponent = lcms[i + 1][c].quotient(&lcms[i][row]).expect("lcm of a subset divides lcm of the set");
                m.set(row, c, Some(MonomialEntry { coeff: if pos % 2 == 0 { 1 } else { -1 }, exponent }));
            }
        }
        differentials.push(m);
    }
    let terms = lcms.iter().map(|level| level.iter().map(Monomial::to_degree).collect()).collect();
    Ok(GradedFreeComplex::from_parts(ring, Direction::Homological, terms, differentials, subsets))
}

/// Lex order on subsets listed as increasing index sequences.
fn lex_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    let la: Vec<u32> = (0..64).filter(|j| a >> j & 1 == 1).collect();
    let lb: Vec<u32> = (0..64).filter(|j| b >> j & 1 == 1).collect();
    la.cmp(&lb)
}

/// `Hom_R(C, R)`.
pub fn dual_complex(c: &GradedFreeComplex) -> GradedFreeComplex {
    c.dual()
}

/// Base change along `x_i ↦ x_i^{k_i}`, applied to a free complex.
pub fn frobenius_functor(c: &GradedFreeComplex, k: &[u32]) -> Result<GradedFreeComplex> {
    c.base_change(k)
}

/// The comparison map `Taylor(a^[k']) → Taylor(a^[k])` lifting the surjection
/// `R/a^[k'] → R/a^[k]`; requires `k ≤ k'` componentwise. On `e_S` it is
/// multiplication by `lcm'_S / lcm_S`.
pub fn comparison_chain_map(a: &MonomialIdeal, k: &[u32], k_prime: &[u32]) -> Result<GradedChainMap> {
    a.ring().check_arity(k.len())?;
    a.ring().check_arity(k_prime.len())?;
    if k.iter().zip(k_prime).any(|(x, y)| x > y) {
        return Err(Error::Input("comparison map needs k ≤ k' componentwise".into()));
    }
    let target = taylor_complex(&a.bracket_power(k)?)?;
    let source = taylor_complex(&a.bracket_power(k_prime)?)?;
    let components = source
        .terms()
        .iter()
        .zip(target.terms())
        .map(|(s, t)| {
            let mut m = MonomialMatrix::zeros(t.len(), s.len());
            for (j, (sd, td)) in s.iter().zip(t).enumerate() {
                let exponent = sd.sub(td).to_monomial().expect("k ≤ k' makes the quotient a monomial");
                m.set(j, j, Some(MonomialEntry { coeff: 1, exponent }));
            }
            m
        })
        .collect();
    GradedChainMap::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::monomial::{Degree, PolynomialRingSpec};

    fn ring(d: usize) -> PolynomialRingSpec {
        PolynomialRingSpec::new(d, 0).unwrap()
    }

    #[test]
    fn taylor_of_maximal_ideal_in_two_variables() {
        let a = MonomialIdeal::maximal(ring(2));
        let t = taylor_complex(&a).unwrap();
        assert_eq!(t.terms().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(t.terms()[2], vec![Degree(vec![1, 1])]);
        t.validate().unwrap();
        let d2 = &t.differentials()[1];
        let coeffs: Vec<i64> = (0..2).map(|r| d2.get(r, 0).unwrap().coeff).collect();
        assert_eq!(coeffs.iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(coeffs[0] * coeffs[1], -1);
    }

    #[test]
    fn taylor_shapes() {
        let a = MonomialIdeal::from_exponents(ring(3), &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let t = taylor_complex(&a).unwrap();
        assert_eq!(t.terms().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        let zero = taylor_complex(&MonomialIdeal::zero(ring(2))).unwrap();
        assert_eq!(zero.len(), 1);
        let unit = taylor_complex(&MonomialIdeal::unit(ring(2))).unwrap();
        assert_eq!(unit.terms(), &[vec![Degree(vec![0, 0])], vec![Degree(vec![0, 0])]]);
    }

    #[test]
    fn dual_twice_is_identity() {
        let a = MonomialIdeal::from_exponents(ring(2), &[&[2, 0], &[1, 1], &[0, 3]]).unwrap();
        let t = taylor_complex(&a).unwrap();
        assert_eq!(dual_complex(&dual_complex(&t)), t);
    }

    #[test]
    fn dual_koszul_top_cohomology_at_minus_one() {
        let field = FieldSpec::Rational;
        let dk = dual_complex(&taylor_complex(&MonomialIdeal::maximal(ring(2))).unwrap());
        let s = dk.strand_at(field, &Degree(vec![-1, -1]));
        assert_eq!(s.complex().dims(), &[0, 0, 1]);
        assert_eq!(s.cohomology_by_term(), vec![0, 0, 1]);
        let s0 = dk.strand_at(field, &Degree(vec![0, 0]));
        assert_eq!(s0.complex().dims(), &[1, 2, 1]);
        assert_eq!(s0.cohomology_by_term(), vec![0, 0, 0]);
    }

    #[test]
    fn taylor_resolves_quotient() {
        // H_0 of the strand at α is dim (R/a)_α; higher homology vanishes.
        let field = FieldSpec::Rational;
        let a = MonomialIdeal::from_exponents(ring(2), &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        let t = taylor_complex(&a).unwrap();
        for x in -1..4 {
            for y in -1..4 {
                let alpha = Degree(vec![x, y]);
                let h = t.strand_at(field, &alpha).cohomology_by_term();
                let expect0 = usize::from(a.quotient_has_degree(&alpha));
                assert_eq!(h[0], expect0, "at {alpha}");
                assert!(h[1..].iter().all(|&v| v == 0), "at {alpha}");
            }
        }
    }

    #[test]
    fn comparison_maps_commute_and_check_order() {
        let a = MonomialIdeal::from_exponents(ring(2), &[&[1, 1], &[0, 2]]).unwrap();
        let f = comparison_chain_map(&a, &[1, 2], &[3, 2]).unwrap();
        assert_eq!(f.components().len(), 3);
        assert!(comparison_chain_map(&a, &[2, 1], &[1, 1]).is_err());
    }

    #[test]
    fn frobenius_scales_twists() {
        let a = MonomialIdeal::maximal(ring(2));
        let t = taylor_complex(&a).unwrap();
        let p = frobenius_functor(&t, &[2, 3]).unwrap();
        assert_eq!(p, taylor_complex(&a.bracket_power(&[2, 3]).unwrap()).unwrap());
    }
}
