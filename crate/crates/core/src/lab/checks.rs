use serde_json::{json, Value};

use crate::complexes::{dual_complex, frobenius_functor, taylor_complex, ChamberDecomposition};
use crate::engine::{
    depth, ext_map_profile, ext_mixed_tables, ext_tables, ha_stabilization, ha_tables, hm_quotient_profile, hm_tables,
    hochster_tables, scale_forward, tor_tables, CohomologyTable, Stabilization, StabilizationConfig, TableKind,
};
use crate::error::{Error, Result};
use crate::monomial::{Degree, Monomial, MonomialIdeal, PolynomialRingSpec};
use crate::simplicial::SimplicialComplex;

use super::action::phi_action;
use super::power::PowerEndomorphism;
use super::verdict::{outcome, Claim, Outcome, Verdict};

fn ideal_json(a: &MonomialIdeal) -> Value {
    serde_json::to_value(a.to_file()).expect("ideal serializes")
}

fn table_at(tables: &[CohomologyTable], i: usize) -> Option<&CohomologyTable> {
    tables.get(i)
}

fn is_zero_at(tables: &[CohomologyTable], i: usize) -> bool {
    table_at(tables, i).is_none_or(CohomologyTable::is_zero)
}

/// Injectivity of `Ext^i(R/a^[k^t], R) → Ext^i(R/a^[k^{t+1}], R)` for `t ≤ t_max`
/// and `i` in `indices`, by two routes: ranks of the Ext maps on every chamber,
/// and surjectivity of `H^{d-i}_m(R/a^[k^{t+1}]) → H^{d-i}_m(R/a^[k^t])`.
///
/// "holds" is guaranteed for square-free `a` with a cofinal power map.
pub fn check_injectivity_chain(
    a: &MonomialIdeal,
    phi: &PowerEndomorphism,
    t_max: u32,
    indices: Option<&[usize]>,
) -> Result<Vec<Verdict>> {
    let d = a.num_vars();
    let all: Vec<usize> = (0..=d).collect();
    let indices = indices.unwrap_or(&all);
    let guaranteed = a.is_squarefree() && phi.is_cofinal();
    let mut out = Vec::new();
    for t in 0..=t_max {
        let (k0, k1) = (phi.iterate(t), phi.iterate(t + 1));
        let ext = ext_map_profile(a, &k0, &k1)?;
        let (hdec, hm) = hm_quotient_profile(&a.bracket_power(&k1)?, &a.bracket_power(&k0)?)?;
        for &i in indices {
            if i > d {
                return Err(Error::Input(format!("index {i} exceeds the number of variables {d}")));
            }
            let ext_bad = ext.profiles.iter().position(|ps| !ps[i].is_injective());
            let hm_bad = hm.iter().position(|ps| !ps[d - i].is_surjective());
            let instance = json!({"ideal": ideal_json(a), "k": phi.exponents(), "t": t, "i": i});
            let mut v = Verdict::new(Claim::InjectivityChain, instance, outcome(ext_bad.is_none() && hm_bad.is_none()))
                .guaranteed(guaranteed);
            if let Some(c) = ext_bad {
                let p = ext.profiles[c][i];
                v = v.with_witness(json!({
                    "chamber": ext.decomposition.chambers()[c].rep,
                    "source_dim": p.source, "target_dim": p.target, "rank": p.rank,
                }));
            } else if let Some(c) = hm_bad {
                let p = hm[c][d - i];
                v = v.with_witness(json!({
                    "dual_chamber": hdec.chambers()[c].rep,
                    "hm_source_dim": p.source, "hm_target_dim": p.target, "rank": p.rank,
                }));
            }
            if ext_bad.is_some() != hm_bad.is_some() {
                v = v.note("Ext-map and local-cohomology routes disagree");
            }
            if !phi.is_cofinal() {
                v = v.note("power map is not cofinal; hypothesis violated");
            }
            if !a.is_squarefree() {
                v = v.note("non-square-free ideal: exploratory, not a theorem consequence");
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Injectivity of `Ext^depth(R/a, R) → H^depth_a(R)`, realized as the map into a
/// bracket power whose Ext module is verified to have stabilized on a window.
pub fn check_depth_injectivity(a: &MonomialIdeal, config: &StabilizationConfig) -> Result<Verdict> {
    let instance = json!({"ideal": ideal_json(a)});
    let Some(i) = depth(a)? else {
        return Ok(Verdict::new(Claim::DepthInjectivity, instance, Outcome::NotApplicable)
            .note("unit ideal: every Ext module vanishes"));
    };
    let instance = json!({"ideal": ideal_json(a), "depth": i});
    let v = match ha_stabilization(a, i, config)? {
        Stabilization::Stable { exponent, window, map } => {
            let bad = map.non_injective_witness();
            let mut v = Verdict::new(Claim::DepthInjectivity, instance, outcome(bad.is_none()))
                .with_window(json!({"box": [-window, window], "stable_exponent": exponent}));
            if let Some(alpha) = bad {
                v = v.with_witness(json!({"chamber": alpha}));
            }
            v
        }
        Stabilization::Unstabilized { last, window } => {
            Verdict::new(Claim::DepthInjectivity, instance, Outcome::WindowLimited)
                .with_window(json!({"box": [-window, window], "last_exponent": last}))
                .note("unstabilized: no bracket power within the bound matched local cohomology on the window")
        }
    };
    Ok(v.guaranteed(true))
}

/// For each `i`: `H^i_a(R) = 0` iff some iterate of the power action on
/// `H^{d-i}_m(R/a)` is zero. Guaranteed for cofinal power maps.
pub fn check_vanishing_criterion(a: &MonomialIdeal, phi: &PowerEndomorphism) -> Result<Vec<Verdict>> {
    let d = a.num_vars();
    let ha = ha_tables(a)?;
    (0..=d)
        .map(|i| {
            let act = phi_action(a, phi, d - i)?;
            let nil = act.nilpotency();
            let vanishes = is_zero_at(&ha, i);
            let instance = json!({"ideal": ideal_json(a), "k": phi.exponents(), "i": i});
            let mut v = Verdict::new(Claim::VanishingCriterion, instance, outcome(vanishes == nil.nilpotent))
                .guaranteed(phi.is_cofinal());
            if vanishes != nil.nilpotent {
                let ha_chamber = ha[i].nonzero_chambers().next().map(|(c, _)| c.rep.clone());
                v = v.with_witness(json!({
                    "ha_vanishes": vanishes,
                    "action_nilpotent": nil.nilpotent,
                    "non_nilpotent_chamber": nil.witness,
                    "ha_nonzero_chamber": ha_chamber,
                }));
            }
            if !phi.is_cofinal() {
                v = v.note("power map is not cofinal; hypothesis violated");
            }
            Ok(v)
        })
        .collect()
}

/// For `a = I_Δ` and each `i`: `H^i_a(R) = 0` iff `H^{d-i}_m(R/a) = 0`, with
/// the right side computed from the Čech complex and checked against Hochster's formula.
pub fn check_vanishing_equivalence(delta: &SimplicialComplex, field_char: u64) -> Result<Vec<Verdict>> {
    let d = delta.vertex_count();
    let ring = PolynomialRingSpec::new(d, field_char)?;
    let a = delta.stanley_reisner(ring)?;
    let ha = ha_tables(&a)?;
    let hm = hm_tables(&a)?;
    let hochster = hochster_tables(delta, ring.field())?;
    Ok((0..=d)
        .map(|i| {
            let j = d - i;
            let oracle = hm[j].first_mismatch(&hochster[j], None);
            let (ha0, hm0) = (is_zero_at(&ha, i), hm[j].is_zero());
            let instance = json!({"facets": delta.facets(), "num_vars": d, "i": i});
            let mut v = Verdict::new(Claim::VanishingEquivalence, instance, outcome(ha0 == hm0 && oracle.is_none()))
                .guaranteed(true);
            if ha0 != hm0 {
                v = v.with_witness(json!({"ha_vanishes": ha0, "hm_vanishes": hm0}));
            } else if let Some(alpha) = oracle {
                v = v.with_witness(json!({"hochster_mismatch": alpha})).note("Čech and Hochster disagree");
            }
            v
        })
        .collect())
}

/// For m-primary `a` and each `i`: `dim Ext^i(R/a, R/b)_α = dim Tor_{d-i}(Ext^d(R/a, R), R/b)_α`.
pub fn check_ext_tor(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Vec<Verdict>> {
    if !a.is_m_primary() {
        return Err(Error::Hypothesis(format!("{a} is not primary to the maximal ideal")));
    }
    let d = a.num_vars();
    let ext = ext_mixed_tables(a, b)?;
    let tor = tor_tables(a, b)?;
    let mut out: Vec<Verdict> = (0..=d)
        .map(|i| {
            let mismatch = ext[i].first_mismatch(&tor[d - i], None);
            let instance = json!({"a": ideal_json(a), "b": ideal_json(b), "i": i});
            let mut v = Verdict::new(Claim::ExtTor, instance, outcome(mismatch.is_none())).guaranteed(true);
            if let Some(alpha) = mismatch {
                v = v.with_witness(json!({
                    "chamber": alpha, "ext_dim": ext[i].dim_at(&alpha), "tor_dim": tor[d - i].dim_at(&alpha),
                }));
            }
            v
        })
        .collect();
    // higher Tor has no Ext partner and must vanish
    if let Some(j) = (d + 1..tor.len()).find(|&j| !tor[j].is_zero()) {
        let last = out.last_mut().expect("d ≥ 1");
        last.result = Outcome::Fails;
        last.witness = Some(json!({"nonzero_tor_index": j}));
    }
    Ok(out)
}

/// `a_t = (x_1^{2t}, ..., x_d^{2t})`: `H^d_m(R/(x_1)) = 0` while `Ext^d(R/a_t, R/(x_1)) ≠ 0`,
/// so `Ext^d(R/a_t, R/(x_1)) → H^d_m(R/(x_1))` cannot be injective.
pub fn check_obstruction(d: usize, t: u32, field_char: u64) -> Result<Verdict> {
    if d == 0 || t == 0 {
        return Err(Error::Input("needs d ≥ 1 and t ≥ 1".into()));
    }
    let ring = PolynomialRingSpec::new(d, field_char)?;
    let a = MonomialIdeal::new(
        ring,
        (0..d).map(|i| {
            let mut e = vec![0; d];
            e[i] = 2 * t;
            Monomial::new(e)
        }),
    )?;
    let x = MonomialIdeal::new(ring, [Monomial::var(d, 0)])?;
    let hm = hm_tables(&x)?;
    let ext = ext_mixed_tables(&a, &x)?;
    let tor = tor_tables(&a, &x)?;
    let hm_zero = hm[d].is_zero();
    let ext_nonzero = ext[d].nonzero_chambers().next().map(|(c, n)| (c.rep.clone(), n));
    let tor_nonzero = !tor[0].is_zero();
    let instance = json!({"num_vars": d, "t": t, "a": ideal_json(&a), "b": ideal_json(&x)});
    let ok = hm_zero && ext_nonzero.is_some() && tor_nonzero;
    let mut v = Verdict::new(Claim::Obstruction, instance, outcome(ok)).guaranteed(true);
    if let Some((alpha, n)) = ext_nonzero {
        v = v.with_witness(json!({"ext_chamber": alpha, "ext_dim": n, "hm_top_vanishes": hm_zero}));
    }
    Ok(v)
}

/// For each `i`: `Φ(Taylor(a)) = Taylor(a^[k])` entry for entry, and
/// `dim Ext^i(R/a^[k], R)_α = dim Ext^i(R/a, R)_{⌊α/k⌋}`, where the left side is
/// computed from the Φ-image complex.
pub fn check_phi_ext_iso(a: &MonomialIdeal, k: &[u32]) -> Result<Vec<Verdict>> {
    let d = a.num_vars();
    let taylor = taylor_complex(a)?;
    let image = frobenius_functor(&taylor, k)?;
    let structural = image == taylor_complex(&a.bracket_power(k)?)?;
    let base = ext_tables(a)?;
    let dual = dual_complex(&image);
    let field = a.ring().field();
    let top = base.len() - 1;
    let dec = ChamberDecomposition::new(dual.thresholds());
    let phi_tables =
        crate::engine::tabulate(TableKind::Ext, dec, top, |alpha| dual.strand_at(field, alpha).cohomology_by_term());
    Ok((0..=d)
        .map(|i| {
            let extra = scale_forward(base[i].decomposition().thresholds(), k);
            let floor = |alpha: &Degree| {
                Degree(alpha.coords().iter().zip(k).map(|(&v, &k)| v.div_euclid(i64::from(k))).collect())
            };
            let mismatch = phi_tables[i].first_mismatch_by(&base[i], &extra, floor, None);
            let instance = json!({"ideal": ideal_json(a), "k": k, "i": i});
            let mut v =
                Verdict::new(Claim::PhiExtIso, instance, outcome(structural && mismatch.is_none())).guaranteed(true);
            if !structural {
                v = v.with_witness(json!({"structural": false}));
            } else if let Some(alpha) = mismatch {
                v = v.with_witness(json!({"chamber": alpha}));
            }
            v
        })
        .collect())
}

/// `true` when a verdict list contains no guaranteed failure.
pub fn all_guaranteed_hold(verdicts: &[Verdict]) -> bool {
    !verdicts.iter().any(Verdict::is_guaranteed_failure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(PolynomialRingSpec::new(d, 0).unwrap(), gens).unwrap()
    }

    fn phi(d: usize, k: u32) -> PowerEndomorphism {
        PowerEndomorphism::uniform(PolynomialRingSpec::new(d, 0).unwrap(), k).unwrap()
    }

    #[test]
    fn injectivity_examples() {
        let cases = [
            ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]),
            ideal(2, &[&[1, 0], &[0, 1]]),
            ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]),
        ];
        for a in cases {
            let d = a.num_vars();
            let vs = check_injectivity_chain(&a, &phi(d, 2), if d == 4 { 0 } else { 2 }, None).unwrap();
            assert!(vs.iter().all(|v| v.holds() && v.guaranteed && v.notes.is_empty()), "{a}");
        }
    }

    #[test]
    fn depth_examples() {
        let cfg = StabilizationConfig::default();
        for a in [ideal(2, &[&[2, 1]]), ideal(2, &[&[2, 0], &[1, 1]]), ideal(2, &[&[1, 0], &[0, 1]])] {
            let v = check_depth_injectivity(&a, &cfg).unwrap();
            assert_eq!(v.result, Outcome::Holds, "{a}: {v:?}");
            assert!(v.window.is_some());
        }
    }

    #[test]
    fn vanishing_criterion_examples() {
        let a = ideal(1, &[&[2]]);
        let vs = check_vanishing_criterion(&a, &phi(1, 2)).unwrap();
        assert!(vs.iter().all(Verdict::holds));
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(check_vanishing_criterion(&tri, &phi(3, 2)).unwrap().iter().all(Verdict::holds));
    }

    #[test]
    fn vanishing_equivalence_examples() {
        let two_points = SimplicialComplex::new(2, &[vec![0], vec![1]]).unwrap();
        let three_points = SimplicialComplex::new(3, &[vec![0], vec![1], vec![2]]).unwrap();
        for delta in [two_points, three_points.clone(), SimplicialComplex::simplex(3)] {
            assert!(check_vanishing_equivalence(&delta, 0).unwrap().iter().all(Verdict::holds));
        }
        let ring = PolynomialRingSpec::new(3, 0).unwrap();
        let a = three_points.stanley_reisner(ring).unwrap();
        let ha = ha_tables(&a).unwrap();
        let nonzero: Vec<usize> = (0..=3).filter(|&i| !ha[i].is_zero()).collect();
        assert_eq!(nonzero, vec![2]);
    }

    #[test]
    fn ext_tor_examples() {
        let a = ideal(2, &[&[1, 0], &[0, 1]]);
        let b = ideal(2, &[&[1, 0]]);
        assert!(check_ext_tor(&a, &b).unwrap().iter().all(Verdict::holds));
        assert!(check_ext_tor(&ideal(2, &[&[1, 1]]), &b).unwrap_err().is_input_error());
    }

    #[test]
    fn obstruction_examples() {
        for d in [2, 3] {
            for t in [1, 2] {
                assert!(check_obstruction(d, t, 0).unwrap().holds());
            }
        }
    }

    #[test]
    fn phi_iso_example() {
        let a = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(check_phi_ext_iso(&a, &[2, 2, 2]).unwrap().iter().all(Verdict::holds));
        let b = ideal(2, &[&[2, 1], &[0, 3]]);
        assert!(check_phi_ext_iso(&b, &[3, 2]).unwrap().iter().all(Verdict::holds));
    }
}
