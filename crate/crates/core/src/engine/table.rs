use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{Chamber, ChamberDecomposition, Interval};
use crate::linalg::ExactMatrix;
use crate::monomial::Degree;

/// Which graded module a table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableKind {
    /// `Ext^i(R/b, R)`.
    Ext,
    /// `Ext^i(R/a, R/b)`.
    ExtMixed,
    /// `H^i_m(R/b)`.
    Hm,
    /// `H^i_a(R)`.
    Ha,
    /// `Tor_i(Ext^d(R/a, R), R/b)`.
    Tor,
    /// `H^i_m(K[Δ])` from reduced simplicial cohomology.
    Hochster,
}

/// Graded-piece dimensions of one cohomology module, constant on each chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    kind: TableKind,
    index: usize,
    decomposition: Arc<ChamberDecomposition>,
    dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ChamberJson {
    intervals: Vec<[Option<i64>; 2]>,
    rep: Degree,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    kind: TableKind,
    i: usize,
    chambers: Vec<ChamberJson>,
}

impl CohomologyTable {
    pub fn new(kind: TableKind, index: usize, decomposition: Arc<ChamberDecomposition>, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), decomposition.len(), "one dimension per chamber");
        CohomologyTable { kind, index, decomposition, dims }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn decomposition(&self) -> &ChamberDecomposition {
        &self.decomposition
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim M_α`.
    pub fn dim_at(&self, alpha: &Degree) -> usize {
        self.dims[self.decomposition.locate(alpha)]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn nonzero_chambers(&self) -> impl Iterator<Item = (&Chamber, usize)> {
        self.decomposition.chambers().iter().zip(&self.dims).filter(|(_, &d)| d > 0).map(|(c, &d)| (c, d))
    }

    /// Whether every nonzero chamber is bounded, i.e. the module has finite length.
    pub fn has_finite_support(&self) -> bool {
        self.nonzero_chambers().all(|(c, _)| c.is_bounded())
    }

    /// First point where `α ↦ self_α` and `α ↦ other_{g(α)}` differ, checked on the
    /// reps of the common refinement (`extra` adds thresholds needed for `g`).
    pub fn first_mismatch_by<G>(
        &self,
        other: &CohomologyTable,
        extra: &crate::complexes::ThresholdSet,
        g: G,
        window: Option<(i64, i64)>,
    ) -> Option<Degree>
    where
        G: Fn(&Degree) -> Degree + Sync,
    {
        let refined = ChamberDecomposition::new(self.decomposition.thresholds().union(extra));
        let chambers: Vec<usize> = match window {
            Some((lo, hi)) => refined.meeting_box(lo, hi),
            None => (0..refined.len()).collect(),
        };
        chambers
            .par_iter()
            .map(|&c| {
                let rep = &refined.chambers()[c].rep;
                (self.dim_at(rep) != other.dim_at(&g(rep))).then(|| rep.clone())
            })
            .find_first(Option::is_some)
            .flatten()
    }

    /// First point where the two tables differ; `window` limits the check to `[lo, hi]^d`.
    pub fn first_mismatch(&self, other: &CohomologyTable, window: Option<(i64, i64)>) -> Option<Degree> {
        self.first_mismatch_by(other, other.decomposition.thresholds(), Degree::clone, window)
    }

    pub fn agrees_with(&self, other: &CohomologyTable) -> bool {
        self.first_mismatch(other, None).is_none()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let chambers = self
            .decomposition
            .chambers()
            .iter()
            .zip(&self.dims)
            .map(|(c, &dim)| ChamberJson {
                intervals: c.intervals.iter().map(Interval::to_pair).collect(),
                rep: c.rep.clone(),
                dim,
            })
            .collect();
        serde_json::to_value(TableJson { kind: self.kind, i: self.index, chambers }).expect("table serializes")
    }

    /// Human-readable view listing nonzero chambers.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let total = self.decomposition.len();
        let nonzero = self.dims.iter().filter(|&&d| d > 0).count();
        let _ = writeln!(out, "{:?} index {}: {} chambers, {} nonzero", self.kind, self.index, total, nonzero);
        for (c, d) in self.nonzero_chambers() {
            let _ = writeln!(out, "  {}  dim {}", describe_chamber(c), d);
        }
        out
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn signed(v: i64) -> String {
    if v < 0 {
        format!("−{}", -v)
    } else {
        v.to_string()
    }
}

/// Interval-product notation such as `α₁≤−1, α₂=0`.
pub fn describe_chamber(c: &Chamber) -> String {
    c.intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            let a = format!("α{}", subscript(i + 1));
            match (iv.lo, iv.hi) {
                (Some(l), Some(h)) if l == h => format!("{a}={}", signed(l)),
                (Some(l), Some(h)) => format!("{}≤{a}≤{}", signed(l), signed(h)),
                (None, Some(h)) => format!("{a}≤{}", signed(h)),
                (Some(l), None) => format!("{a}≥{}", signed(l)),
                (None, None) => format!("{a}∈ℤ"),
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Evaluates `f` at every chamber representative (in parallel, order preserved)
/// and splits the per-chamber vectors into one table per index `0..=top`.
pub(crate) fn tabulate<F>(
    kind: TableKind,
    decomposition: ChamberDecomposition,
    top: usize,
    f: F,
) -> Vec<CohomologyTable>
where
    F: Fn(&Degree) -> Vec<usize> + Sync,
{
    let per_chamber: Vec<Vec<usize>> = decomposition.chambers().par_iter().map(|c| f(&c.rep)).collect();
    split(kind, Arc::new(decomposition), top, per_chamber)
}

pub(crate) fn split(
    kind: TableKind,
    decomposition: Arc<ChamberDecomposition>,
    top: usize,
    per_chamber: Vec<Vec<usize>>,
) -> Vec<CohomologyTable> {
    (0..=top)
        .map(|i| {
            let dims = per_chamber.iter().map(|v| v.get(i).copied().unwrap_or(0)).collect();
            CohomologyTable::new(kind, i, decomposition.clone(), dims)
        })
        .collect()
}

/// A map of graded modules, given by its matrix in each chamber (source and
/// target bases are the chosen cohomology bases of the strands there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleMap {
    index: usize,
    decomposition: Arc<ChamberDecomposition>,
    matrices: Vec<ExactMatrix>,
}

impl GradedModuleMap {
    pub(crate) fn new(index: usize, decomposition: Arc<ChamberDecomposition>, matrices: Vec<ExactMatrix>) -> Self {
        assert_eq!(decomposition.len(), matrices.len());
        GradedModuleMap { index, decomposition, matrices }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn decomposition(&self) -> &ChamberDecomposition {
        &self.decomposition
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn matrix_at(&self, alpha: &Degree) -> &ExactMatrix {
        &self.matrices[self.decomposition.locate(alpha)]
    }

    /// Source dimensions per chamber.
    pub fn source_table(&self, kind: TableKind) -> CohomologyTable {
        CohomologyTable::new(
            kind,
            self.index,
            self.decomposition.clone(),
            self.matrices.iter().map(ExactMatrix::cols).collect(),
        )
    }

    pub fn target_table(&self, kind: TableKind) -> CohomologyTable {
        CohomologyTable::new(
            kind,
            self.index,
            self.decomposition.clone(),
            self.matrices.iter().map(ExactMatrix::rows).collect(),
        )
    }

    /// Chamber representative where the map fails to be injective, if any.
    pub fn non_injective_witness(&self) -> Option<Degree> {
        self.matrices.iter().position(|m| m.rank() < m.cols()).map(|c| self.decomposition.chambers()[c].rep.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.matrices.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.matrices.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrices.iter().all(|m| m.rows() == m.cols() && m.rank() == m.cols())
    }
}
