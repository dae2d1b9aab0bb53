use crate::error::{Error, Result};

use super::field::FieldSpec;
use super::matrix::ExactMatrix;

/// A bounded cochain complex of finite-dimensional vector spaces.
///
/// Terms occupy cohomological indices `lo ..= lo + dims.len() - 1`; `maps[k]`
/// is the differential `C^{lo+k} → C^{lo+k+1}` with shape
/// `dims[k+1] × dims[k]`. Every index outside that range is the zero space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteComplex {
    field: FieldSpec,
    lo: i64,
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

impl FiniteComplex {
    /// Validates shapes and checks that consecutive maps compose to zero.
    pub fn new(field: FieldSpec, lo: i64, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(field, lo, dims, maps)?;
        for k in 1..c.maps.len() {
            if !c.maps[k].mul(&c.maps[k - 1]).is_zero() {
                return Err(Error::NotAComplex { index: lo + k as i64 });
            }
        }
        Ok(c)
    }

    /// Shape checks only; callers guarantee `d∘d = 0`.
    pub(crate) fn new_unchecked(field: FieldSpec, lo: i64, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        if maps.len() != dims.len().saturating_sub(1) {
            return Err(Error::Shape(format!(
                "{} terms need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::Shape(format!(
                    "map at index {} has shape {:?}, expected {:?}",
                    lo + k as i64,
                    m.shape(),
                    (dims[k + 1], dims[k])
                )));
            }
            if m.field() != field {
                return Err(Error::Shape(format!("map at index {} is over {}", lo + k as i64, m.field())));
            }
        }
        Ok(FiniteComplex { field, lo, dims, maps })
    }

    /// The zero complex.
    pub fn zero(field: FieldSpec, lo: i64) -> Self {
        FiniteComplex { field, lo, dims: Vec::new(), maps: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest occupied index (below `lo` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn slot(&self, i: i64) -> Option<usize> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some((i - self.lo) as usize)
        }
    }

    pub fn dim(&self, i: i64) -> usize {
        self.slot(i).map_or(0, |k| self.dims[k])
    }

    /// Differential `C^i → C^{i+1}`, absent when either side is outside the range.
    pub fn map(&self, i: i64) -> Option<&ExactMatrix> {
        let k = self.slot(i)?;
        self.maps.get(k)
    }

    /// Differential `C^i → C^{i+1}` as a matrix, zero-padded outside the range.
    pub fn differential(&self, i: i64) -> ExactMatrix {
        match self.map(i) {
            Some(m) => m.clone(),
            None => ExactMatrix::zeros(self.field, self.dim(i + 1), self.dim(i)),
        }
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    fn map_rank(&self, i: i64) -> usize {
        self.map(i).map_or(0, ExactMatrix::rank)
    }

    /// `dim ker(d^i) - rank(d^{i-1})`.
    pub fn cohomology_dim(&self, i: i64) -> usize {
        let n = self.dim(i);
        if n == 0 {
            return 0;
        }
        n - self.map_rank(i) - self.map_rank(i - 1)
    }

    /// Cohomology dimensions at `lo ..= hi`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(ExactMatrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if (self.lo + k as i64).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Chosen basis of `H^i` together with the boundary space it is taken modulo.
    pub fn frame(&self, i: i64) -> CohomologyFrame {
        let n = self.dim(i);
        let field = self.field;
        let cycles = match self.map(i) {
            Some(d) => d.kernel_basis(),
            None => ExactMatrix::identity(field, n),
        };
        let boundaries = match self.map(i - 1) {
            Some(d) => d.image_basis(),
            None => ExactMatrix::zeros(field, n, 0),
        };
        let b = boundaries.cols();
        let stacked = ExactMatrix::hstack(field, n, &[&boundaries, &cycles]);
        let (_, pivots) = stacked.rref();
        let picked: Vec<usize> = pivots.iter().filter(|&&p| p >= b).map(|&p| p - b).collect();
        let reps = cycles.select_columns(&picked);
        CohomologyFrame { boundaries, reps }
    }
}

/// Representatives of a cohomology basis and the boundaries they are reduced against.
#[derive(Debug, Clone)]
pub struct CohomologyFrame {
    boundaries: ExactMatrix,
    reps: ExactMatrix,
}

impl CohomologyFrame {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Representative cocycles, one per column.
    pub fn representatives(&self) -> &ExactMatrix {
        &self.reps
    }

    pub fn boundaries(&self) -> &ExactMatrix {
        &self.boundaries
    }

    /// Coordinates of the classes of the cocycle columns of `v` in this basis.
    pub fn coordinates(&self, v: &ExactMatrix) -> Result<ExactMatrix> {
        let field = self.reps.field();
        let n = self.reps.rows();
        if self.dim() == 0 && self.boundaries.cols() == 0 {
            if !v.is_zero() {
                return Err(Error::Shape("vector is not a cocycle".into()));
            }
            return Ok(ExactMatrix::zeros(field, 0, v.cols()));
        }
        let basis = ExactMatrix::hstack(field, n, &[&self.boundaries, &self.reps]);
        let sol = basis.solve_full_column_rank(v).ok_or_else(|| Error::Shape("vector is not a cocycle".into()))?;
        let b = self.boundaries.cols();
        let rows: Vec<usize> = (b..b + self.dim()).collect();
        Ok(sol.select_rows(&rows))
    }
}

/// A degree-preserving map of finite complexes with the same index range.
#[derive(Debug, Clone)]
pub struct FiniteChainMap {
    source: FiniteComplex,
    target: FiniteComplex,
    components: Vec<ExactMatrix>,
}

impl FiniteChainMap {
    /// `components[k]` maps `C^{lo+k} → D^{lo+k}`; commutation is checked in every square.
    pub fn new(source: FiniteComplex, target: FiniteComplex, components: Vec<ExactMatrix>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, components)?;
        let lo = f.source.lo();
        for k in 0..f.components.len() {
            let i = lo + k as i64;
            let left = f.component(i + 1).mul(&f.source.differential(i));
            let right = f.target.differential(i).mul(&f.component(i));
            if left != right {
                return Err(Error::NonCommuting { index: i });
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: FiniteComplex,
        target: FiniteComplex,
        components: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if source.lo() != target.lo() || source.len() != target.len() {
            return Err(Error::Shape("chain map between complexes with different index ranges".into()));
        }
        if components.len() != source.len() {
            return Err(Error::Shape(format!("{} components for {} terms", components.len(), source.len())));
        }
        for (k, c) in components.iter().enumerate() {
            if c.shape() != (target.dims()[k], source.dims()[k]) {
                return Err(Error::Shape(format!("component {k} has shape {:?}", c.shape())));
            }
        }
        Ok(FiniteChainMap { source, target, components })
    }

    pub fn source(&self) -> &FiniteComplex {
        &self.source
    }

    pub fn target(&self) -> &FiniteComplex {
        &self.target
    }

    /// Component at index `i`, zero-padded outside the range.
    pub fn component(&self, i: i64) -> ExactMatrix {
        let lo = self.source.lo();
        if i < lo || i > self.source.hi() {
            return ExactMatrix::zeros(self.source.field(), self.target.dim(i), self.source.dim(i));
        }
        self.components[(i - lo) as usize].clone()
    }

    /// Matrix of `H^i(f)` in the chosen bases of source and target cohomology.
    pub fn induced_map(&self, i: i64) -> ExactMatrix {
        let src = self.source.frame(i);
        let tgt = self.target.frame(i);
        let image = self.component(i).mul(src.representatives());
        tgt.coordinates(&image).expect("chain maps send cocycles to cocycles")
    }

    /// Rank of `H^i(f)`, computed without choosing bases:
    /// `rank [B_D | f(Z_C)] - rank B_D`.
    pub fn induced_rank(&self, i: i64) -> usize {
        let field = self.source.field();
        let n = self.target.dim(i);
        if n == 0 || self.source.dim(i) == 0 {
            return 0;
        }
        let cycles = match self.source.map(i) {
            Some(d) => d.kernel_basis(),
            None => ExactMatrix::identity(field, self.source.dim(i)),
        };
        let pushed = self.component(i).mul(&cycles);
        match self.target.map(i - 1) {
            Some(d) => {
                let b = d.rank();
                ExactMatrix::hstack(field, n, &[d, &pushed]).rank() - b
            }
            None => pushed.rank(),
        }
    }

    pub fn is_injective_on_cohomology(&self, i: i64) -> bool {
        self.induced_rank(i) == self.source.cohomology_dim(i)
    }

    pub fn is_surjective_on_cohomology(&self, i: i64) -> bool {
        self.induced_rank(i) == self.target.cohomology_dim(i)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteChainMap) -> Result<FiniteChainMap> {
        let components = (0..self.source.len()).map(|k| other.components[k].mul(&self.components[k])).collect();
        FiniteChainMap::new_unchecked(self.source.clone(), other.target.clone(), components)
    }
}

/// `dim H^i(C)`.
pub fn cohomology_dim(c: &FiniteComplex, i: i64) -> usize {
    c.cohomology_dim(i)
}

/// Matrix of `H^i(f)` in the canonical cohomology bases.
pub fn induced_map_on_cohomology(f: &FiniteChainMap, i: i64) -> ExactMatrix {
    f.induced_map(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows_i64(Q, rows)
    }

    #[test]
    fn identity_map_is_acyclic() {
        let c = FiniteComplex::new(Q, 0, vec![1, 1], vec![m(&[vec![1]])]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 0]);
    }

    #[test]
    fn lone_term() {
        let c = FiniteComplex::new(Q, 3, vec![1], vec![]).unwrap();
        assert_eq!(c.cohomology_dim(3), 1);
        assert_eq!(c.cohomology_dim(2), 0);
    }

    #[test]
    fn koszul_shape() {
        // K → K² → K with Koszul signs: exact
        let c = FiniteComplex::new(Q, 0, vec![1, 2, 1], vec![m(&[vec![1], vec![1]]), m(&[vec![1, -1]])]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 0, 0]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn rejects_non_complex() {
        let err = FiniteComplex::new(Q, 0, vec![1, 1, 1], vec![m(&[vec![1]]), m(&[vec![1]])]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { index: 1 }));
        let err = FiniteComplex::new(Q, 0, vec![1, 2], vec![m(&[vec![1]])]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn induced_identity_and_zero() {
        let c = FiniteComplex::new(Q, 0, vec![2, 1], vec![m(&[vec![1, 1]])]).unwrap();
        let id =
            FiniteChainMap::new(c.clone(), c.clone(), vec![ExactMatrix::identity(Q, 2), ExactMatrix::identity(Q, 1)])
                .unwrap();
        assert_eq!(id.induced_map(0), ExactMatrix::identity(Q, 1));
        let zero =
            FiniteChainMap::new(c.clone(), c.clone(), vec![ExactMatrix::zeros(Q, 2, 2), ExactMatrix::zeros(Q, 1, 1)])
                .unwrap();
        assert!(zero.induced_map(0).is_zero());
        assert_eq!(zero.induced_map(0).shape(), (1, 1));
    }

    #[test]
    fn non_commuting_square_is_reported() {
        let c = FiniteComplex::new(Q, 0, vec![1, 1], vec![m(&[vec![1]])]).unwrap();
        let err = FiniteChainMap::new(c.clone(), c, vec![m(&[vec![1]]), m(&[vec![2]])]).unwrap_err();
        assert!(matches!(err, Error::NonCommuting { index: 0 }));
    }

    #[test]
    fn homotopic_maps_induce_same_rank() {
        // C: K² --[1 1]--> K, H^0 = K spanned by (1,-1)
        let c = FiniteComplex::new(Q, 0, vec![2, 1], vec![m(&[vec![1, 1]])]).unwrap();
        let f =
            FiniteChainMap::new(c.clone(), c.clone(), vec![ExactMatrix::identity(Q, 2), ExactMatrix::identity(Q, 1)])
                .unwrap();
        // homotopy h: C^1 → C^0, h = (1, 0)^T; f' = f + h d + d h
        let h = m(&[vec![1], vec![0]]);
        let d = c.differential(0);
        let g0 = ExactMatrix::identity(Q, 2).add(&h.mul(&d));
        let g1 = ExactMatrix::identity(Q, 1).add(&d.mul(&h));
        let g = FiniteChainMap::new(c.clone(), c, vec![g0, g1]).unwrap();
        assert_eq!(f.induced_rank(0), g.induced_rank(0));
        assert_eq!(f.induced_map(0), g.induced_map(0));
        assert_eq!(f.induced_rank(1), g.induced_rank(1));
    }

    #[test]
    fn frame_coordinates_reduce_boundaries() {
        // 0 → K --(1,1)^T--> K² → 0: H^1 = K² / span(1,1)
        let c = FiniteComplex::new(Q, 0, vec![1, 2], vec![m(&[vec![1], vec![1]])]).unwrap();
        let fr = c.frame(1);
        assert_eq!(fr.dim(), 1);
        let coords = fr.coordinates(&m(&[vec![1], vec![1]])).unwrap();
        assert!(coords.is_zero());
        let coords = fr.coordinates(&m(&[vec![0], vec![1]])).unwrap();
        assert!(!coords.is_zero());
    }
}
