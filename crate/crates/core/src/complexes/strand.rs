use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec, FiniteChainMap, FiniteComplex};
use crate::monomial::Degree;

use super::graded::Direction;

/// The degree-`α` piece of a graded complex, as a complex of vector spaces.
///
/// `survivors[t]` lists the summands of term `t` that are nonzero in degree
/// `α`. Term `t` sits at cohomological index `t` (cohomological direction) or
/// `-t` (homological direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    degree: Degree,
    direction: Direction,
    survivors: Vec<Vec<usize>>,
    complex: FiniteComplex,
}

impl Strand {
    /// Builds from per-term survivors and differentials indexed like the graded complex.
    pub(crate) fn assemble(
        field: FieldSpec,
        degree: Degree,
        direction: Direction,
        survivors: Vec<Vec<usize>>,
        mut mats: Vec<ExactMatrix>,
    ) -> Strand {
        let n = survivors.len();
        let mut dims: Vec<usize> = survivors.iter().map(Vec::len).collect();
        let lo = match direction {
            Direction::Cohomological => 0,
            Direction::Homological => {
                dims.reverse();
                mats.reverse();
                -(n as i64 - 1).max(0)
            }
        };
        let complex = FiniteComplex::new_unchecked(field, lo, dims, mats).expect("strand shapes are consistent");
        Strand { degree, direction, survivors, complex }
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn survivors(&self) -> &[Vec<usize>] {
        &self.survivors
    }

    pub fn complex(&self) -> &FiniteComplex {
        &self.complex
    }

    pub fn into_complex(self) -> FiniteComplex {
        self.complex
    }

    /// Cohomological index of term `t`.
    pub fn index_of_term(&self, t: usize) -> i64 {
        match self.direction {
            Direction::Cohomological => t as i64,
            Direction::Homological => -(t as i64),
        }
    }

    /// (Co)homology at term `t`: `H_t` for homological strands, `H^t` otherwise.
    pub fn cohomology_at_term(&self, t: usize) -> usize {
        self.complex.cohomology_dim(self.index_of_term(t))
    }

    /// (Co)homology at every term, in term order.
    pub fn cohomology_by_term(&self) -> Vec<usize> {
        let mut dims = self.complex.cohomology_dims();
        if self.direction == Direction::Homological {
            dims.reverse();
        }
        dims
    }

    /// Chain map from per-term components indexed like the graded complex.
    pub(crate) fn chain_map(source: &Strand, target: &Strand, mut mats: Vec<ExactMatrix>) -> Result<FiniteChainMap> {
        if source.direction != target.direction || source.survivors.len() != target.survivors.len() {
            return Err(Error::Shape("strands of differently shaped complexes".into()));
        }
        if source.direction == Direction::Homological {
            mats.reverse();
        }
        FiniteChainMap::new(source.complex.clone(), target.complex.clone(), mats)
    }

    /// The map sending each surviving summand to the same summand of `target`
    /// (or to zero when it dies there). Checked for commutation.
    pub fn transfer_to(&self, target: &Strand) -> Result<FiniteChainMap> {
        let field = self.complex.field();
        let mats = self
            .survivors
            .iter()
            .zip(&target.survivors)
            .map(|(src, tgt)| {
                let mut m = ExactMatrix::zeros(field, tgt.len(), src.len());
                for (c, s) in src.iter().enumerate() {
                    if let Ok(r) = tgt.binary_search(s) {
                        m.set_i64(r, c, 1);
                    }
                }
                m
            })
            .collect();
        Strand::chain_map(self, target, mats)
    }
}
