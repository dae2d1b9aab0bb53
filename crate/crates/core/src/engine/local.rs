use rayon::prelude::*;

use crate::complexes::{CechComplexSpec, ChamberDecomposition};
use crate::error::{Error, Result};
use crate::monomial::{Degree, MonomialIdeal};

use super::ext::{ext_tables, pick, profile, same_ring, RankProfile};
use super::table::{tabulate, CohomologyTable, TableKind};

/// `H^i_a(R)` for `i = 0 ..= d`, from the Čech complex on the generators of `a`.
///
/// Survival only depends on signs, so there are `2^d` chambers. The Čech
/// complex can be longer than `d`, but its cohomology above `d` vanishes.
pub fn ha_tables(a: &MonomialIdeal) -> Result<Vec<CohomologyTable>> {
    let spec = CechComplexSpec::on_generators(a)?;
    let field = a.ring().field();
    let top = a.num_vars().max(a.num_generators());
    let dec = ChamberDecomposition::new(spec.thresholds());
    let mut tables = tabulate(TableKind::Ha, dec, top, |alpha| spec.strand(field, alpha).cohomology_by_term());
    debug_assert!(tables[a.num_vars() + 1..].iter().all(CohomologyTable::is_zero));
    tables.truncate(a.num_vars() + 1);
    Ok(tables)
}

pub fn ha_table(a: &MonomialIdeal, i: usize) -> Result<CohomologyTable> {
    Ok(pick(ha_tables(a)?, i))
}

/// `H^j_m(R/b)` for `j = 0 ..= d`, from the Čech complex on the variables with coefficients in `R/b`.
pub fn hm_tables(b: &MonomialIdeal) -> Result<Vec<CohomologyTable>> {
    let spec = CechComplexSpec::on_variables(b)?;
    let field = b.ring().field();
    let dec = ChamberDecomposition::new(spec.thresholds());
    Ok(tabulate(TableKind::Hm, dec, b.num_vars(), |alpha| spec.strand(field, alpha).cohomology_by_term()))
}

pub fn hm_table(b: &MonomialIdeal, j: usize) -> Result<CohomologyTable> {
    Ok(pick(hm_tables(b)?, j))
}

/// Rank profiles of `H^•_m(R/b_src) → H^•_m(R/b_tgt)` induced by the surjection
/// `R/b_src → R/b_tgt` (requires `b_src ⊆ b_tgt`), per chamber of the common refinement.
pub fn hm_quotient_profile(
    b_src: &MonomialIdeal,
    b_tgt: &MonomialIdeal,
) -> Result<(ChamberDecomposition, Vec<Vec<RankProfile>>)> {
    same_ring(b_src, b_tgt)?;
    if !b_src.generators().iter().all(|g| b_tgt.contains(g)) {
        return Err(Error::Input("quotient map needs the source ideal inside the target ideal".into()));
    }
    let src = CechComplexSpec::on_variables(b_src)?;
    let tgt = CechComplexSpec::on_variables(b_tgt)?;
    let field = b_src.ring().field();
    let d = b_src.num_vars();
    let dec = ChamberDecomposition::new(src.thresholds().union(&tgt.thresholds()));
    let profiles = dec
        .chambers()
        .par_iter()
        .map(|c| {
            let s = src.strand(field, &c.rep);
            let t = tgt.strand(field, &c.rep);
            Ok(profile(&s.transfer_to(&t)?, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((dec, profiles))
}

/// Graded local duality in dimension form:
/// `dim Ext^i(R/b, R)_α = dim H^{d-i}_m(R/b)_{-α-1}`. Returns the first
/// `(i, α)` where it fails.
pub fn local_duality_mismatch(b: &MonomialIdeal) -> Result<Option<(usize, Degree)>> {
    let d = b.num_vars();
    let ext = ext_tables(b)?;
    let hm = hm_tables(b)?;
    for (i, e) in ext.iter().enumerate() {
        if i > d {
            if let Some((c, _)) = e.nonzero_chambers().next() {
                return Ok(Some((i, c.rep.clone())));
            }
            continue;
        }
        let h = &hm[d - i];
        let extra = h.decomposition().thresholds().reflect();
        if let Some(alpha) = e.first_mismatch_by(h, &extra, Degree::dual_point, None) {
            return Ok(Some((i, alpha)));
        }
    }
    Ok(None)
}
