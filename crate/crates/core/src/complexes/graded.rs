use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec, FiniteChainMap};
use crate::monomial::{Degree, Monomial, MonomialIdeal, PolynomialRingSpec};

use super::chamber::ThresholdSet;
use super::strand::Strand;

/// A nonzero entry `coeff · x^exponent` of a monomial matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialEntry {
    pub coeff: i64,
    pub exponent: Monomial,
}

/// Matrix with entries zero or `± x^e`; rows index the target, columns the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Option<MonomialEntry>>,
}

impl MonomialMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MonomialMatrix { rows, cols, entries: vec![None; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&MonomialEntry> {
        self.entries[r * self.cols + c].as_ref()
    }

    pub fn set(&mut self, r: usize, c: usize, entry: Option<MonomialEntry>) {
        self.entries[r * self.cols + c] = entry;
    }

    /// Nonzero entries as `(row, col, entry)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &MonomialEntry)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(idx, e)| e.as_ref().map(|e| (idx / self.cols, idx % self.cols, e)))
    }

    pub fn transpose(&self) -> MonomialMatrix {
        let mut out = MonomialMatrix::zeros(self.cols, self.rows);
        for (r, c, e) in self.nonzero() {
            out.set(c, r, Some(e.clone()));
        }
        out
    }

    /// Applies `x_i ↦ x_i^{k_i}` to every entry.
    pub fn scale_exponents(&self, k: &[u32]) -> MonomialMatrix {
        MonomialMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.as_ref().map(|e| MonomialEntry { coeff: e.coeff, exponent: e.exponent.scale(k) }))
                .collect(),
        }
    }

    /// Polynomial product `self · other`, entries as sparse polynomials.
    fn product(&self, other: &MonomialMatrix) -> Vec<BTreeMap<Monomial, i64>> {
        assert_eq!(self.cols, other.rows);
        let mut out = vec![BTreeMap::new(); self.rows * other.cols];
        for (r, l, a) in self.nonzero() {
            for c in 0..other.cols {
                if let Some(b) = other.get(l, c) {
                    let slot = out[r * other.cols + c].entry(a.exponent.mul(&b.exponent)).or_insert(0);
                    *slot += a.coeff * b.coeff;
                }
            }
        }
        out
    }
}

/// Whether `a · b` is the zero polynomial matrix.
fn product_vanishes(a: &MonomialMatrix, b: &MonomialMatrix) -> bool {
    a.product(b).iter().all(|p| p.values().all(|&c| c == 0))
}

/// Whether `a1 · b1 = a2 · b2` as polynomial matrices.
fn products_agree(a1: &MonomialMatrix, b1: &MonomialMatrix, a2: &MonomialMatrix, b2: &MonomialMatrix) -> bool {
    let p = a1.product(b1);
    let q = a2.product(b2);
    p.iter().zip(&q).all(|(x, y)| {
        let mut diff = x.clone();
        for (m, c) in y {
            *diff.entry(m.clone()).or_insert(0) -= c;
        }
        diff.values().all(|&c| c == 0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `differentials[i]: terms[i+1] → terms[i]`.
    Homological,
    /// `differentials[i]: terms[i] → terms[i+1]`.
    Cohomological,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Homological => Direction::Cohomological,
            Direction::Cohomological => Direction::Homological,
        }
    }
}

/// A bounded complex of multigraded free modules.
///
/// Term `i` is `⊕_j R(-twists[i][j])`. Each nonzero differential entry is a
/// degree-zero map, so its exponent equals source twist minus target twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedFreeComplex {
    ring: PolynomialRingSpec,
    direction: Direction,
    terms: Vec<Vec<Degree>>,
    differentials: Vec<MonomialMatrix>,
    /// Generator-subset bitmask labelling each summand (Taylor bookkeeping).
    labels: Vec<Vec<u64>>,
}

impl GradedFreeComplex {
    /// Checked constructor: degree-zero entries and `d∘d = 0`.
    pub fn new(
        ring: PolynomialRingSpec,
        direction: Direction,
        terms: Vec<Vec<Degree>>,
        differentials: Vec<MonomialMatrix>,
        labels: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let c = GradedFreeComplex { ring, direction, terms, differentials, labels };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts(
        ring: PolynomialRingSpec,
        direction: Direction,
        terms: Vec<Vec<Degree>>,
        differentials: Vec<MonomialMatrix>,
        labels: Vec<Vec<u64>>,
    ) -> Self {
        let c = GradedFreeComplex { ring, direction, terms, differentials, labels };
        debug_assert!(c.validate().is_ok());
        c
    }

    pub fn ring(&self) -> PolynomialRingSpec {
        self.ring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn terms(&self) -> &[Vec<Degree>] {
        &self.terms
    }

    pub fn differentials(&self) -> &[MonomialMatrix] {
        &self.differentials
    }

    pub fn labels(&self) -> &[Vec<u64>] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Twists of (source, target) of `differentials[i]`.
    fn endpoints(&self, i: usize) -> (&[Degree], &[Degree]) {
        match self.direction {
            Direction::Homological => (&self.terms[i + 1], &self.terms[i]),
            Direction::Cohomological => (&self.terms[i], &self.terms[i + 1]),
        }
    }

    /// Checks shapes, degree-zero entries and `d∘d = 0`.
    pub fn validate(&self) -> Result<()> {
        let d = self.ring.num_vars();
        if self.differentials.len() != self.terms.len().saturating_sub(1) {
            return Err(Error::Shape("wrong number of differentials".into()));
        }
        if self.labels.len() != self.terms.len() || self.labels.iter().zip(&self.terms).any(|(l, t)| l.len() != t.len())
        {
            return Err(Error::Shape("labels do not match terms".into()));
        }
        for t in self.terms.iter().flatten() {
            self.ring.check_arity(t.len())?;
        }
        for (i, m) in self.differentials.iter().enumerate() {
            let (src, tgt) = self.endpoints(i);
            if m.cols() != src.len() || m.rows() != tgt.len() {
                return Err(Error::Shape(format!("differential {i} has wrong shape")));
            }
            for (r, c, e) in m.nonzero() {
                if e.exponent.num_vars() != d || e.exponent.to_degree() != src[c].sub(&tgt[r]) {
                    return Err(Error::Shape(format!(
                        "differential {i} entry ({r},{c}) is not homogeneous of degree zero"
                    )));
                }
            }
        }
        for i in 1..self.differentials.len() {
            let ok = match self.direction {
                Direction::Homological => product_vanishes(&self.differentials[i - 1], &self.differentials[i]),
                Direction::Cohomological => product_vanishes(&self.differentials[i], &self.differentials[i - 1]),
            };
            if !ok {
                return Err(Error::NotAComplex { index: i as i64 });
            }
        }
        Ok(())
    }

    /// Thresholds `{0} ∪ {twist coordinates}` governing summand survival.
    pub fn thresholds(&self) -> ThresholdSet {
        let mut t = ThresholdSet::zero(self.ring.num_vars());
        for tw in self.terms.iter().flatten() {
            t.insert_point(tw.coords());
        }
        t
    }

    /// Thresholds for strands with coefficients in `R/b`.
    pub fn thresholds_mod(&self, b: &MonomialIdeal) -> ThresholdSet {
        let mut t = self.thresholds();
        for tw in self.terms.iter().flatten() {
            for g in b.generators() {
                t.insert_point(tw.add(&g.to_degree()).coords());
            }
        }
        t
    }

    /// `Hom_R(-, R)`: transposed matrices, negated twists, flipped direction.
    pub fn dual(&self) -> GradedFreeComplex {
        GradedFreeComplex::from_parts(
            self.ring,
            self.direction.flip(),
            self.terms.iter().map(|t| t.iter().map(Degree::neg).collect()).collect(),
            self.differentials.iter().map(MonomialMatrix::transpose).collect(),
            self.labels.clone(),
        )
    }

    /// Base change along `x_i ↦ x_i^{k_i}`: exponents and twists scale by `k`.
    pub fn base_change(&self, k: &[u32]) -> Result<GradedFreeComplex> {
        self.ring.check_arity(k.len())?;
        if k.contains(&0) {
            return Err(Error::Input("base-change exponents must be at least 1".into()));
        }
        Ok(GradedFreeComplex::from_parts(
            self.ring,
            self.direction,
            self.terms.iter().map(|t| t.iter().map(|tw| tw.scale(k)).collect()).collect(),
            self.differentials.iter().map(|m| m.scale_exponents(k)).collect(),
            self.labels.clone(),
        ))
    }

    fn survivors(&self, alpha: &Degree, coeffs: Option<&MonomialIdeal>) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|term| {
                term.iter()
                    .enumerate()
                    .filter(|(_, tw)| {
                        alpha.dominates(tw) && coeffs.is_none_or(|b| b.quotient_has_degree(&alpha.sub(tw)))
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect()
    }

    /// Degree-`α` strand: summand `R(-β)` survives iff `α ≥ β`.
    pub fn strand_at(&self, field: FieldSpec, alpha: &Degree) -> Strand {
        self.strand_impl(field, alpha, None)
    }

    /// Degree-`α` strand of `C ⊗ R/b`: `R(-β)` survives iff `α ≥ β` and `x^{α-β} ∉ b`.
    pub fn strand_mod(&self, field: FieldSpec, alpha: &Degree, b: &MonomialIdeal) -> Strand {
        self.strand_impl(field, alpha, Some(b))
    }

    fn strand_impl(&self, field: FieldSpec, alpha: &Degree, coeffs: Option<&MonomialIdeal>) -> Strand {
        let surv = self.survivors(alpha, coeffs);
        let mats: Vec<ExactMatrix> = (0..self.differentials.len())
            .map(|i| {
                let (s, t) = match self.direction {
                    Direction::Homological => (i + 1, i),
                    Direction::Cohomological => (i, i + 1),
                };
                restrict(field, &self.differentials[i], &surv[s], &surv[t])
            })
            .collect();
        Strand::assemble(field, alpha.clone(), self.direction, surv, mats)
    }
}

/// Scalar coefficients of `m` on the surviving columns/rows.
fn restrict(field: FieldSpec, m: &MonomialMatrix, cols: &[usize], rows: &[usize]) -> ExactMatrix {
    let mut data = vec![0i64; rows.len() * cols.len()];
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            if let Some(e) = m.get(r, c) {
                data[ri * cols.len() + ci] = e.coeff;
            }
        }
    }
    ExactMatrix::from_i64(field, rows.len(), cols.len(), &data)
}

/// A degree-zero map of graded free complexes, `components[i]: source.terms[i] → target.terms[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedChainMap {
    source: GradedFreeComplex,
    target: GradedFreeComplex,
    components: Vec<MonomialMatrix>,
}

impl GradedChainMap {
    /// Checked constructor: degree-zero entries and commutation in every square.
    pub fn new(source: GradedFreeComplex, target: GradedFreeComplex, components: Vec<MonomialMatrix>) -> Result<Self> {
        if source.direction != target.direction || source.len() != target.len() || components.len() != source.len() {
            return Err(Error::Shape("chain map between complexes of different shape".into()));
        }
        for (i, m) in components.iter().enumerate() {
            if m.cols() != source.terms[i].len() || m.rows() != target.terms[i].len() {
                return Err(Error::Shape(format!("component {i} has wrong shape")));
            }
            for (r, c, e) in m.nonzero() {
                if e.exponent.to_degree() != source.terms[i][c].sub(&target.terms[i][r]) {
                    return Err(Error::Shape(format!("component {i} entry ({r},{c}) is not of degree zero")));
                }
            }
        }
        for i in 0..source.differentials.len() {
            let ok = match source.direction {
                // g_i ∘ dS_i = dT_i ∘ g_{i+1}
                Direction::Homological => products_agree(
                    &components[i],
                    &source.differentials[i],
                    &target.differentials[i],
                    &components[i + 1],
                ),
                // g_{i+1} ∘ dS_i = dT_i ∘ g_i
                Direction::Cohomological => products_agree(
                    &components[i + 1],
                    &source.differentials[i],
                    &target.differentials[i],
                    &components[i],
                ),
            };
            if !ok {
                return Err(Error::NonCommuting { index: i as i64 });
            }
        }
        Ok(GradedChainMap { source, target, components })
    }

    pub fn source(&self) -> &GradedFreeComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeComplex {
        &self.target
    }

    pub fn components(&self) -> &[MonomialMatrix] {
        &self.components
    }

    /// `Hom_R(-, R)` applied to the map: reverses it and dualizes both ends.
    pub fn dual(&self) -> GradedChainMap {
        GradedChainMap {
            source: self.target.dual(),
            target: self.source.dual(),
            components: self.components.iter().map(MonomialMatrix::transpose).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedChainMap) -> Result<GradedChainMap> {
        if self.target != other.source {
            return Err(Error::Shape("composable maps need matching middle complex".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| {
                let prod = g.product(f);
                let mut out = MonomialMatrix::zeros(g.rows(), f.cols());
                for (idx, poly) in prod.into_iter().enumerate() {
                    let nonzero: Vec<_> = poly.into_iter().filter(|(_, c)| *c != 0).collect();
                    match nonzero.len() {
                        0 => {}
                        1 => {
                            let (exponent, coeff) = nonzero.into_iter().next().unwrap();
                            out.entries[idx] = Some(MonomialEntry { coeff, exponent });
                        }
                        _ => unreachable!("degree-zero maps compose to single terms"),
                    }
                }
                out
            })
            .collect();
        GradedChainMap::new(self.source.clone(), other.target.clone(), components)
    }

    /// The map of degree-`α` strands (optionally with coefficients in `R/b`).
    pub fn strand_at(
        &self,
        field: FieldSpec,
        alpha: &Degree,
        coeffs: Option<&MonomialIdeal>,
    ) -> Result<FiniteChainMap> {
        let (s, t) = match coeffs {
            Some(b) => (self.source.strand_mod(field, alpha, b), self.target.strand_mod(field, alpha, b)),
            None => (self.source.strand_at(field, alpha), self.target.strand_at(field, alpha)),
        };
        let mats: Vec<ExactMatrix> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, m)| restrict(field, m, &s.survivors()[i], &t.survivors()[i]))
            .collect();
        Strand::chain_map(&s, &t, mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inhomogeneous_entries() {
        let ring = PolynomialRingSpec::new(1, 0).unwrap();
        let mut d = MonomialMatrix::zeros(1, 1);
        d.set(0, 0, Some(MonomialEntry { coeff: 1, exponent: Monomial::new(vec![2]) }));
        let err = GradedFreeComplex::new(
            ring,
            Direction::Homological,
            vec![vec![Degree(vec![0])], vec![Degree(vec![1])]],
            vec![d],
            vec![vec![0], vec![1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }
}
