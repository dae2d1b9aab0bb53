use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::complexes::{dual_complex, taylor_complex, ChamberDecomposition, GradedFreeComplex, Strand, ThresholdSet};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec, FiniteComplex};
use crate::monomial::{Degree, MonomialIdeal};

use super::ext::{ext_tables, pick, same_ring};
use super::table::{tabulate, CohomologyTable, TableKind};

/// The finite-length module `N = Ext^d(R/a, R)` for m-primary `a`, stored piece by
/// piece as top cohomology of the dual Taylor strands.
struct TopExt {
    field: FieldSpec,
    d: usize,
    pieces: BTreeMap<Degree, (Strand, usize)>,
}

impl TopExt {
    fn new(a: &MonomialIdeal) -> Result<Self> {
        let d = a.num_vars();
        let field = a.ring().field();
        let top = pick(ext_tables(a)?, d);
        if !top.has_finite_support() {
            return Err(Error::Hypothesis("Ext^d(R/a, R) does not have finite length".into()));
        }
        let dual: GradedFreeComplex = dual_complex(&taylor_complex(a)?);
        let mut points = BTreeSet::new();
        for (c, _) in top.nonzero_chambers() {
            let mut pts = vec![Vec::new()];
            for iv in &c.intervals {
                let (lo, hi) = (iv.lo.unwrap(), iv.hi.unwrap());
                pts = pts
                    .into_iter()
                    .flat_map(|p: Vec<i64>| {
                        (lo..=hi).map(move |v| {
                            let mut q = p.clone();
                            q.push(v);
                            q
                        })
                    })
                    .collect();
            }
            points.extend(pts.into_iter().map(Degree));
        }
        let pieces = points
            .into_par_iter()
            .map(|g| {
                let s = dual.strand_at(field, &g);
                let n = s.cohomology_at_term(d);
                (g, (s, n))
            })
            .collect();
        Ok(TopExt { field, d, pieces })
    }

    fn dim(&self, g: &Degree) -> usize {
        self.pieces.get(g).map_or(0, |p| p.1)
    }

    /// Multiplication by `x^δ` from `N_γ` to `N_{γ+δ}` in the chosen bases.
    fn multiplication(&self, g: &Degree, delta: &Degree) -> Result<ExactMatrix> {
        let h = g.add(delta);
        match (self.pieces.get(g), self.pieces.get(&h)) {
            (Some((s, _)), Some((t, _))) => Ok(s.transfer_to(t)?.induced_map(self.d as i64)),
            _ => Ok(ExactMatrix::zeros(self.field, self.dim(&h), self.dim(g))),
        }
    }
}

/// `Tor_j(Ext^d(R/a, R), R/b)` for `j = 0 ..= max(d, #gens b)`, computed as the
/// homology of `Ext^d(R/a, R) ⊗ Taylor(b)`.
///
/// Requires `a` to be m-primary.
pub fn tor_tables(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Vec<CohomologyTable>> {
    same_ring(a, b)?;
    if !a.is_m_primary() {
        return Err(Error::Hypothesis(format!("{a} is not primary to the maximal ideal")));
    }
    let d = a.num_vars();
    let field = a.ring().field();
    let n = TopExt::new(a)?;
    let taylor = taylor_complex(b)?;
    let r = taylor.len();

    // every multiplication needed: (γ, δ) with γ in the support and δ a differential exponent
    let mut deltas: BTreeSet<Degree> = BTreeSet::new();
    for m in taylor.differentials() {
        for (_, _, e) in m.nonzero() {
            deltas.insert(e.exponent.to_degree());
        }
    }
    let keys: Vec<(Degree, Degree)> =
        n.pieces.keys().flat_map(|g| deltas.iter().map(move |dl| (g.clone(), dl.clone()))).collect();
    let mult: HashMap<(Degree, Degree), ExactMatrix> = keys
        .into_par_iter()
        .map(|(g, dl)| {
            let m = n.multiplication(&g, &dl)?;
            Ok(((g, dl), m))
        })
        .collect::<Result<_>>()?;

    let mut thresholds = ThresholdSet::zero(d);
    for g in n.pieces.keys() {
        for tw in taylor.terms().iter().flatten() {
            let p = g.add(tw);
            thresholds.insert_point(p.coords());
            thresholds.insert_point(p.add(&Degree(vec![1; d])).coords());
        }
    }
    let dec = ChamberDecomposition::new(thresholds);
    let top = d.max(r.saturating_sub(1));

    let tables = tabulate(TableKind::Tor, dec, top, |alpha| {
        // block layout of each term: (summand, offset, size)
        let layout: Vec<Vec<(usize, usize)>> = taylor
            .terms()
            .iter()
            .map(|term| {
                let mut off = 0;
                term.iter()
                    .map(|tw| {
                        let size = n.dim(&alpha.sub(tw));
                        let o = off;
                        off += size;
                        (o, size)
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = layout.iter().map(|l| l.iter().map(|x| x.1).sum()).collect();
        let mats: Vec<ExactMatrix> = taylor
            .differentials()
            .iter()
            .enumerate()
            .map(|(j, dm)| {
                // d_j : term j+1 → term j
                let mut out = ExactMatrix::zeros(field, dims[j], dims[j + 1]);
                for (row, col, e) in dm.nonzero() {
                    let (ro, rs) = layout[j][row];
                    let (co, cs) = layout[j + 1][col];
                    if rs == 0 || cs == 0 {
                        continue;
                    }
                    let g = alpha.sub(&taylor.terms()[j + 1][col]);
                    let block = &mult[&(g, e.exponent.to_degree())];
                    let block = if e.coeff == 1 {
                        block.clone()
                    } else {
                        let mut s = ExactMatrix::zeros(field, block.rows(), block.rows());
                        for k in 0..block.rows() {
                            s.set_i64(k, k, e.coeff);
                        }
                        s.mul(block)
                    };
                    out.set_block(ro, co, &block);
                }
                out
            })
            .collect();
        let mut dims_rev = dims.clone();
        dims_rev.reverse();
        let mut mats_rev = mats;
        mats_rev.reverse();
        let c = FiniteComplex::new(field, -(r as i64 - 1), dims_rev, mats_rev)
            .expect("Ext^d(R/a,R) ⊗ Taylor(b) is a complex");
        let mut h = c.cohomology_dims();
        h.reverse();
        h
    });
    Ok(tables)
}

pub fn tor_table(a: &MonomialIdeal, b: &MonomialIdeal, j: usize) -> Result<CohomologyTable> {
    Ok(pick(tor_tables(a, b)?, j))
}
