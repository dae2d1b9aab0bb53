use std::collections::BTreeSet;

use rayon::prelude::*;
use serde_json::json;

use crate::complexes::{CechComplexSpec, ChamberDecomposition, Strand};
use crate::engine::hm_tables;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::monomial::{Degree, MonomialIdeal};

use super::power::PowerEndomorphism;
use super::verdict::{outcome, Claim, Outcome, Verdict};

/// Default half-width `1 + k_max·(max exponent + 1)` for window-scoped checks.
pub fn default_window(a: &MonomialIdeal, phi: &PowerEndomorphism) -> i64 {
    1 + i64::from(phi.max_exponent()) * (i64::from(a.max_exponent()) + 1)
}

/// All points of `[lo, hi]^d`.
fn box_points(d: usize, lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(d)];
    for i in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo[i]..=hi[i]).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn nonzero_in_quotient(a: &MonomialIdeal, e: &[i64]) -> bool {
    a.quotient_has_degree(&Degree(e.to_vec()))
}

/// Checks that `σ`, the projection onto monomials `x^{k∘β}` with `x^β ∉ a`
/// (sending `x^{k∘β} ↦ x^β`), is a well-defined `φ(R)`-linear splitting of
/// `φ̄: R/a → R/a` on the window `[0, W]^d`.
pub fn check_purity_splitting(a: &MonomialIdeal, phi: &PowerEndomorphism, window: Option<i64>) -> Result<Verdict> {
    let instance = json!({"ideal": a.to_file(), "k": phi.exponents()});
    if !a.is_squarefree() {
        return Ok(Verdict::new(Claim::PuritySplitting, instance, Outcome::NotApplicable)
            .note("the monomial splitting needs a square-free ideal"));
    }
    let w = window.unwrap_or_else(|| default_window(a, phi));
    if w < 0 {
        return Err(Error::Window(format!("window half-width {w} is negative")));
    }
    let d = a.num_vars();
    let k: Vec<i64> = phi.exponents().iter().map(|&v| i64::from(v)).collect();
    let sigma = |g: &[i64]| -> Option<Vec<i64>> {
        if g.iter().zip(&k).all(|(v, k)| v % k == 0) {
            let b: Vec<i64> = g.iter().zip(&k).map(|(v, k)| v / k).collect();
            nonzero_in_quotient(a, &b).then_some(b)
        } else {
            None
        }
    };
    let points = box_points(d, &vec![0; d], &vec![w; d]);
    let failure = points.par_iter().find_map_first(|g| {
        let live = nonzero_in_quotient(a, g);
        // σ kills the ideal
        if !live && sigma(g).is_some() {
            return Some(json!({"kind": "not well defined", "monomial": g}));
        }
        if live {
            // σ(φ̄(x^g)) = x^g
            let image: Vec<i64> = g.iter().zip(&k).map(|(v, k)| v * k).collect();
            if !nonzero_in_quotient(a, &image) || sigma(&image).as_deref() != Some(&g[..]) {
                return Some(json!({"kind": "not a section", "monomial": g}));
            }
        }
        // σ(x^{k∘δ} x^g) = x^δ σ(x^g)
        let hi: Vec<i64> = g.iter().zip(&k).map(|(v, k)| (w - v) / k).collect();
        for delta in box_points(d, &vec![0; d], &hi) {
            let prod: Vec<i64> = g.iter().zip(&delta).zip(&k).map(|((v, e), k)| v + k * e).collect();
            let lhs = if nonzero_in_quotient(a, &prod) { sigma(&prod) } else { None };
            let rhs = if live {
                sigma(g).and_then(|s| {
                    let m: Vec<i64> = s.iter().zip(&delta).map(|(x, y)| x + y).collect();
                    nonzero_in_quotient(a, &m).then_some(m)
                })
            } else {
                None
            };
            if lhs != rhs {
                return Some(json!({"kind": "not linear", "monomial": g, "delta": delta}));
            }
        }
        None
    });
    let mut v = Verdict::new(Claim::PuritySplitting, instance, outcome(failure.is_none()))
        .with_window(json!({"box": [0, w]}))
        .guaranteed(true);
    if let Some(f) = failure {
        v = v.with_witness(f);
    }
    Ok(v)
}

/// Checks on the window `[-W, W]^d` that each `H^j_m(R/a)_α` is spanned by
/// `x^{α-k∘β}·φ̄_*(H^j_m(R/a)_β)` over `β` in the window with `k∘β ≤ α`.
/// The multiplication maps are taken summand-wise on Čech strands.
pub fn check_rspan_surjectivity(
    a: &MonomialIdeal,
    phi: &PowerEndomorphism,
    j: usize,
    window: Option<i64>,
) -> Result<Verdict> {
    let d = a.num_vars();
    let w = window.unwrap_or_else(|| default_window(a, phi));
    if w < 1 {
        return Err(Error::Window(format!("window half-width {w} leaves no room for a source degree")));
    }
    if j > d {
        return Err(Error::Input(format!("index {j} exceeds the number of variables {d}")));
    }
    let instance = json!({"ideal": a.to_file(), "k": phi.exponents(), "j": j});
    let field = a.ring().field();
    let spec = CechComplexSpec::on_variables(a)?;
    let table = hm_tables(a)?.swap_remove(j);
    let dec: &ChamberDecomposition = table.decomposition();
    let strands: Vec<Strand> = dec.chambers().iter().map(|c| spec.strand(field, &c.rep)).collect();
    let k: Vec<i64> = phi.exponents().iter().map(|&v| i64::from(v)).collect();
    let ji = j as i64;

    // a nonzero piece is spanned when the images from all (chamber(β), chamber(kβ)) pairs reach full rank
    // None: no source degree fits in the window
    let spanned = |alpha: &Degree| -> Result<Option<bool>> {
        let ca = dec.locate(alpha);
        let n = table.dims()[ca];
        if n == 0 {
            return Ok(Some(true));
        }
        let hi: Vec<i64> = alpha.coords().iter().zip(&k).map(|(x, k)| x.div_euclid(*k).min(w)).collect();
        let lo = vec![-w; d];
        if hi.iter().any(|&h| h < -w) {
            return Ok(None);
        }
        let mut pairs = BTreeSet::new();
        for b in box_points(d, &lo, &hi) {
            let beta = Degree(b);
            let cb = dec.locate(&beta);
            let ck = dec.locate(&beta.scale(phi.exponents()));
            if table.dims()[cb] > 0 && table.dims()[ck] > 0 {
                pairs.insert((cb, ck));
            }
        }
        let mut cols: Vec<ExactMatrix> = Vec::new();
        for (cb, ck) in pairs {
            let act = strands[cb].transfer_to(&strands[ck])?.induced_map(ji);
            let mult = strands[ck].transfer_to(&strands[ca])?.induced_map(ji);
            cols.push(mult.mul(&act));
        }
        let refs: Vec<&ExactMatrix> = cols.iter().collect();
        Ok(Some(ExactMatrix::hstack(field, n, &refs).rank() == n))
    };

    let points = box_points(d, &vec![-w; d], &vec![w; d]);
    let results: Vec<(Vec<i64>, Option<bool>)> = points
        .into_par_iter()
        .map(|p| {
            let ok = spanned(&Degree(p.clone()))?;
            Ok((p, ok))
        })
        .collect::<Result<_>>()?;
    let failure = results.iter().find(|(_, ok)| *ok == Some(false)).map(|(p, _)| p.clone());
    let limited = results.iter().any(|(_, ok)| ok.is_none());
    let result = match (&failure, limited) {
        (Some(_), _) => Outcome::Fails,
        (None, true) => Outcome::WindowLimited,
        (None, false) => Outcome::Holds,
    };
    let mut v = Verdict::new(Claim::RspanSurjectivity, instance, result)
        .with_window(json!({"box": [-w, w]}))
        .guaranteed(a.is_squarefree());
    if let Some(p) = failure {
        v = v.with_witness(json!({"degree": p}));
    }
    if !a.is_squarefree() {
        v = v.note("non-square-free ideal: the power map need not be pure");
    }
    Ok(v)
}
