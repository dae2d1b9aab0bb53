use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    comparison_chain_map, dual_complex, taylor_complex, ChamberDecomposition, GradedChainMap, ThresholdSet,
};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, FiniteChainMap};
use crate::monomial::{Degree, MonomialIdeal};

use super::local::ha_tables;
use super::table::{tabulate, CohomologyTable, GradedModuleMap, TableKind};

/// `Ext^i(R/b, R)` for `i = 0 ..= max(d, #gens)`, from strands of `Hom(Taylor(b), R)`.
pub fn ext_tables(b: &MonomialIdeal) -> Result<Vec<CohomologyTable>> {
    let dual = dual_complex(&taylor_complex(b)?);
    let field = b.ring().field();
    let top = b.num_vars().max(dual.len().saturating_sub(1));
    let dec = ChamberDecomposition::new(dual.thresholds());
    Ok(tabulate(TableKind::Ext, dec, top, |alpha| dual.strand_at(field, alpha).cohomology_by_term()))
}

/// `Ext^i(R/b, R)`.
pub fn ext_table(b: &MonomialIdeal, i: usize) -> Result<CohomologyTable> {
    Ok(pick(ext_tables(b)?, i))
}

/// The table at index `i`, or the zero table past the computed range.
pub(crate) fn pick(mut tables: Vec<CohomologyTable>, i: usize) -> CohomologyTable {
    if i < tables.len() {
        tables.swap_remove(i)
    } else {
        let t = &tables[0];
        let dec = Arc::new(t.decomposition().clone());
        CohomologyTable::new(t.kind(), i, dec.clone(), vec![0; dec.len()])
    }
}

/// `Ext^i(R/a, R/b)` from strands of `Hom(Taylor(a), R) ⊗ R/b`.
pub fn ext_mixed_tables(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Vec<CohomologyTable>> {
    same_ring(a, b)?;
    let dual = dual_complex(&taylor_complex(a)?);
    let field = a.ring().field();
    let top = a.num_vars().max(dual.len().saturating_sub(1));
    let dec = ChamberDecomposition::new(dual.thresholds_mod(b));
    Ok(tabulate(TableKind::ExtMixed, dec, top, |alpha| dual.strand_mod(field, alpha, b).cohomology_by_term()))
}

pub(crate) fn same_ring(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::Input(format!(
            "ideals live in different rings ({} vs {} variables)",
            a.num_vars(),
            b.num_vars()
        )));
    }
    Ok(())
}

/// The dualized comparison map `Hom(Taylor(a^[k]), R) → Hom(Taylor(a^[k']), R)`,
/// inducing `Ext^i(R/a^[k], R) → Ext^i(R/a^[k'], R)`.
pub fn ext_comparison(a: &MonomialIdeal, k: &[u32], k_prime: &[u32]) -> Result<GradedChainMap> {
    Ok(comparison_chain_map(a, k, k_prime)?.dual())
}

fn map_decomposition(gm: &GradedChainMap) -> ChamberDecomposition {
    ChamberDecomposition::new(gm.source().thresholds().union(&gm.target().thresholds()))
}

/// `Ext^i(R/a^[k], R) → Ext^i(R/a^[k'], R)` as matrices in each chamber.
pub fn ext_chain_map(a: &MonomialIdeal, k: &[u32], k_prime: &[u32], i: usize) -> Result<GradedModuleMap> {
    let gm = ext_comparison(a, k, k_prime)?;
    let field = a.ring().field();
    let dec = map_decomposition(&gm);
    let matrices = dec
        .chambers()
        .par_iter()
        .map(|c| Ok(gm.strand_at(field, &c.rep, None)?.induced_map(i as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedModuleMap::new(i, Arc::new(dec), matrices))
}

/// Source dimension, target dimension and rank of a map on one graded piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub source: usize,
    pub target: usize,
    pub rank: usize,
}

impl RankProfile {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Ranks of the induced maps at cohomological indices `0..=top`.
pub(crate) fn profile(f: &FiniteChainMap, top: usize) -> Vec<RankProfile> {
    let src = f.source().cohomology_dims();
    let tgt = f.target().cohomology_dims();
    let lo = f.source().lo();
    let at = |v: &[usize], i: i64| -> usize {
        if i < lo {
            0
        } else {
            v.get((i - lo) as usize).copied().unwrap_or(0)
        }
    };
    (0..=top as i64)
        .map(|i| {
            let (s, t) = (at(&src, i), at(&tgt, i));
            let rank = if s == 0 || t == 0 { 0 } else { f.induced_rank(i) };
            RankProfile { source: s, target: t, rank }
        })
        .collect()
}

/// Per-chamber, per-index rank profiles of the Ext comparison map.
#[derive(Debug, Clone)]
pub struct ExtMapProfile {
    pub decomposition: ChamberDecomposition,
    /// `profiles[c][i]`.
    pub profiles: Vec<Vec<RankProfile>>,
}

impl ExtMapProfile {
    /// First `(i, α)` where the map is not injective.
    pub fn non_injective(&self) -> Option<(usize, Degree)> {
        self.profiles.iter().enumerate().find_map(|(c, ps)| {
            ps.iter().position(|p| !p.is_injective()).map(|i| (i, self.decomposition.chambers()[c].rep.clone()))
        })
    }

    pub fn injective_at(&self, i: usize) -> bool {
        self.profiles.iter().all(|ps| ps.get(i).is_none_or(RankProfile::is_injective))
    }
}

/// Rank profiles of `Ext^•(R/a^[k], R) → Ext^•(R/a^[k'], R)` on every chamber.
pub fn ext_map_profile(a: &MonomialIdeal, k: &[u32], k_prime: &[u32]) -> Result<ExtMapProfile> {
    let gm = ext_comparison(a, k, k_prime)?;
    let field = a.ring().field();
    let top = a.num_vars();
    let decomposition = map_decomposition(&gm);
    let profiles = decomposition
        .chambers()
        .par_iter()
        .map(|c| Ok(profile(&gm.strand_at(field, &c.rep, None)?, top)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtMapProfile { decomposition, profiles })
}

/// `min{i : Ext^i(R/a, R) ≠ 0}`; `None` for the unit ideal, where every Ext vanishes.
pub fn depth(a: &MonomialIdeal) -> Result<Option<usize>> {
    Ok(ext_tables(a)?.iter().position(|t| !t.is_zero()))
}

/// Settings for the search for a stable bracket power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationConfig {
    /// Half-width `W` of the window `[-W, W]^d`; default `1 + max exponent of a`.
    pub window: Option<i64>,
    /// `T` runs through `2^0, 2^1, ..., 2^max_doublings` (times the all-ones vector).
    pub max_doublings: u32,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig { window: None, max_doublings: 6 }
    }
}

impl StabilizationConfig {
    pub fn window_for(&self, a: &MonomialIdeal) -> i64 {
        self.window.unwrap_or(1 + i64::from(a.max_exponent()))
    }
}

/// Result of the stabilization search.
#[derive(Debug, Clone)]
pub enum Stabilization {
    /// On the window, `Ext^i(R/a^[T], R)` has the dimensions of `H^i_a(R)` and
    /// `Ext^i(R/a^[T], R) → Ext^i(R/a^[2T], R)` is an isomorphism. `map` is
    /// `Ext^i(R/a, R) → Ext^i(R/a^[T], R)` on all chambers.
    Stable { exponent: Vec<u32>, window: i64, map: GradedModuleMap },
    /// Not reached within the bound; `last` is the largest `T` tried.
    Unstabilized { last: Vec<u32>, window: i64 },
}

impl Stabilization {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stabilization::Stable { .. })
    }

    pub fn window(&self) -> i64 {
        match self {
            Stabilization::Stable { window, .. } | Stabilization::Unstabilized { window, .. } => *window,
        }
    }
}

/// Searches `T = 1, 2, 4, ...` for a bracket power whose Ext module agrees with
/// `H^i_a(R)` on the verification window and maps isomorphically to the next one.
pub fn ha_stabilization(a: &MonomialIdeal, i: usize, config: &StabilizationConfig) -> Result<Stabilization> {
    let d = a.num_vars();
    let w = config.window_for(a);
    let field = a.ring().field();
    let ha = super::ext::pick(ha_tables(a)?, i);
    let mut t = 1u32;
    for _ in 0..=config.max_doublings {
        let tv = vec![t; d];
        let next = vec![2 * t; d];
        if stable_on_window(a, i, &tv, &next, &ha, w, field)? {
            let map = ext_chain_map(a, &vec![1; d], &tv, i)?;
            return Ok(Stabilization::Stable { exponent: tv, window: w, map });
        }
        t *= 2;
    }
    Ok(Stabilization::Unstabilized { last: vec![t / 2; d], window: w })
}

fn stable_on_window(
    a: &MonomialIdeal,
    i: usize,
    t: &[u32],
    next: &[u32],
    ha: &CohomologyTable,
    w: i64,
    field: FieldSpec,
) -> Result<bool> {
    let gm = ext_comparison(a, t, next)?;
    let dec = ChamberDecomposition::new(
        gm.source().thresholds().union(&gm.target().thresholds()).union(ha.decomposition().thresholds()),
    );
    let chambers = dec.meeting_box(-w, w);
    let ok = chambers
        .par_iter()
        .map(|&c| {
            let rep = &dec.chambers()[c].rep;
            let f = gm.strand_at(field, rep, None)?;
            let p = profile(&f, i)[i];
            Ok(p.source == ha.dim_at(rep) && p.is_isomorphism())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(ok.into_iter().all(|b| b))
}

/// Thresholds making `α ↦ ⌊α/k⌋` chamber-compatible with `t`: `⌊α_i/k_i⌋ ≥ s` iff `α_i ≥ k_i s`.
pub fn scale_forward(t: &ThresholdSet, k: &[u32]) -> ThresholdSet {
    let mut out = ThresholdSet::zero(t.num_vars());
    for (i, &ki) in k.iter().enumerate() {
        for &s in t.coordinate(i) {
            out.insert(i, s * i64::from(ki));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::PolynomialRingSpec;

    fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(PolynomialRingSpec::new(d, 0).unwrap(), gens).unwrap()
    }

    #[test]
    fn ext_of_maximal_ideal_in_the_plane() {
        let t = ext_tables(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap();
        let nz: Vec<_> = t[2].nonzero_chambers().map(|(c, d)| (c.rep.clone(), d)).collect();
        assert_eq!(nz, vec![(Degree(vec![-1, -1]), 1)]);
        assert!(t[0].is_zero() && t[1].is_zero());
    }

    #[test]
    fn ext_zero_vanishes_for_proper_nonzero_ideals() {
        for a in [ideal(2, &[&[1, 1]]), ideal(3, &[&[2, 0, 0], &[0, 1, 1]])] {
            assert!(ext_table(&a, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn ext_one_of_principal_ideal_is_shifted_quotient() {
        let a = ideal(2, &[&[1, 1]]);
        let e1 = ext_table(&a, 1).unwrap();
        for x in -4..4 {
            for y in -4..4 {
                let alpha = Degree(vec![x, y]);
                let shifted = alpha.add(&Degree(vec![1, 1]));
                assert_eq!(e1.dim_at(&alpha), usize::from(a.quotient_has_degree(&shifted)), "at {alpha}");
            }
        }
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap(), Some(2));
        assert_eq!(depth(&ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])).unwrap(), Some(2));
        assert_eq!(depth(&ideal(2, &[&[2, 1]])).unwrap(), Some(1));
        assert_eq!(depth(&MonomialIdeal::unit(PolynomialRingSpec::new(2, 0).unwrap())).unwrap(), None);
    }

    #[test]
    fn comparison_maps_are_injective_for_squarefree_examples() {
        for (a, k2) in [
            (ideal(1, &[&[1]]), vec![2]),
            (ideal(2, &[&[1, 0], &[0, 1]]), vec![2, 2]),
            (ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), vec![2, 2, 2]),
        ] {
            let ones = vec![1; a.num_vars()];
            for i in 0..=a.num_vars() {
                assert!(ext_chain_map(&a, &ones, &k2, i).unwrap().is_injective());
            }
        }
    }

    #[test]
    fn ext_maps_compose() {
        let a = ideal(2, &[&[2, 0], &[1, 1]]);
        let f = ext_chain_map(&a, &[1, 1], &[2, 2], 1).unwrap();
        let g = ext_chain_map(&a, &[2, 2], &[3, 4], 1).unwrap();
        let h = ext_chain_map(&a, &[1, 1], &[3, 4], 1).unwrap();
        let dec = ChamberDecomposition::new(f.decomposition().thresholds().union(g.decomposition().thresholds()));
        for c in dec.chambers() {
            let composite = g.matrix_at(&c.rep).mul(f.matrix_at(&c.rep));
            assert_eq!(&composite, h.matrix_at(&c.rep), "at {}", c.rep);
        }
    }

    #[test]
    fn stabilization_examples() {
        let cfg = StabilizationConfig::default();
        match ha_stabilization(&ideal(2, &[&[1, 0], &[0, 1]]), 2, &cfg).unwrap() {
            Stabilization::Stable { exponent, window, map } => {
                assert_eq!(exponent, vec![2, 2]);
                assert_eq!(window, 2);
                assert!(map.is_injective());
            }
            other => panic!("unexpected {other:?}"),
        }
        match ha_stabilization(&ideal(2, &[&[1, 1]]), 1, &cfg).unwrap() {
            Stabilization::Stable { exponent, .. } => assert_eq!(exponent, vec![2, 2]),
            other => panic!("unexpected {other:?}"),
        }
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let cfg3 = StabilizationConfig { window: Some(3), ..cfg };
        assert!(ha_stabilization(&tri, 2, &cfg3).unwrap().is_stable());
    }

    #[test]
    fn unstabilized_is_reported() {
        let cfg = StabilizationConfig { window: Some(5), max_doublings: 0 };
        let s = ha_stabilization(&ideal(2, &[&[1, 0], &[0, 1]]), 2, &cfg).unwrap();
        assert!(matches!(s, Stabilization::Unstabilized { ref last, window: 5 } if last == &vec![1, 1]));
    }
}
