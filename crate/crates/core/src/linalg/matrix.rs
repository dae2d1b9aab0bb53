use std::fmt;

use num_rational::BigRational;

use super::field::{Arith, FieldSpec, ModArith, QArith, Scalar};

/// Dense matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Q(Vec<BigRational>),
    P(Vec<u64>, u64),
}

/// Wraps a generic entry vector back into a matrix representation.
trait Wrap: Arith {
    fn wrap(&self, data: Vec<Self::E>) -> Repr;
}

impl Wrap for QArith {
    fn wrap(&self, data: Vec<BigRational>) -> Repr {
        Repr::Q(data)
    }
}

impl Wrap for ModArith {
    fn wrap(&self, data: Vec<u64>) -> Repr {
        Repr::P(data, self.0)
    }
}

macro_rules! dispatch {
    ($repr:expr, |$ar:ident, $data:ident| $body:expr) => {
        match $repr {
            Repr::Q($data) => {
                let $ar = &QArith;
                $body
            }
            Repr::P($data, p) => {
                let $ar = &ModArith(*p);
                $body
            }
        }
    };
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_in_place<A: Arith>(ar: &A, rows: usize, cols: usize, m: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = ar.mul(&m[r * cols + j], &inv);
        }
        let pivot_row: Vec<A::E> = m[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            for (off, pv) in pivot_row.iter().enumerate() {
                let idx = i * cols + c + off;
                m[idx] = ar.sub_mul(&m[idx], &f, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; returns the rank.
fn rank_in_place<A: Arith>(ar: &A, rows: usize, cols: usize, m: &mut [A::E]) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&m[r * cols + c]);
        let pivot_row: Vec<A::E> = m[r * cols + c..(r + 1) * cols].to_vec();
        for i in r + 1..rows {
            if ar.is_zero(&m[i * cols + c]) {
                continue;
            }
            let f = ar.mul(&m[i * cols + c], &inv);
            for (off, pv) in pivot_row.iter().enumerate() {
                let idx = i * cols + c + off;
                m[idx] = ar.sub_mul(&m[idx], &f, pv);
            }
        }
        r += 1;
    }
    r
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let repr = match field {
            FieldSpec::Rational => Repr::Q(vec![QArith.zero(); rows * cols]),
            FieldSpec::Prime(p) => Repr::P(vec![0; rows * cols], p),
        };
        ExactMatrix { rows, cols, repr }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self::from_i64(field, n, n, &data)
    }

    /// Row-major integer data, mapped into the field.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        let repr = match field {
            FieldSpec::Rational => Repr::Q(data.iter().map(|&v| QArith.embed(v)).collect()),
            FieldSpec::Prime(p) => {
                let ar = ModArith(p);
                Repr::P(data.iter().map(|&v| ar.embed(v)).collect(), p)
            }
        };
        ExactMatrix { rows, cols, repr }
    }

    pub fn from_rows_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<i64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::from_i64(field, rows.len(), cols, &data)
    }

    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Q(_) => FieldSpec::Rational,
            Repr::P(_, p) => FieldSpec::Prime(*p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols);
        dispatch!(&self.repr, |ar, d| ar.to_scalar(&d[r * self.cols + c]))
    }

    /// Sets an entry from an integer.
    pub fn set_i64(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols);
        let idx = r * self.cols + c;
        match &mut self.repr {
            Repr::Q(d) => d[idx] = QArith.embed(v),
            Repr::P(d, p) => d[idx] = ModArith(*p).embed(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(&self.repr, |ar, d| d.iter().all(|x| ar.is_zero(x)))
    }

    /// Entries as integers when every entry is one; used in tests and witnesses.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_i64()).collect()).collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }

    // the dispatched body also serves BigRational, which is not Copy
    #[allow(clippy::clone_on_copy)]
    pub fn transpose(&self) -> ExactMatrix {
        let (rows, cols) = (self.rows, self.cols);
        let repr = dispatch!(&self.repr, |ar, d| {
            let mut out = Vec::with_capacity(d.len());
            for c in 0..cols {
                for r in 0..rows {
                    out.push(d[r * cols + c].clone());
                }
            }
            ar.wrap(out)
        });
        ExactMatrix { rows: cols, cols: rows, repr }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => QArith.wrap(mul_generic(&QArith, n, k, m, a, b)),
            (Repr::P(a, p), Repr::P(b, q)) if p == q => {
                let ar = ModArith(*p);
                ar.wrap(mul_generic(&ar, n, k, m, a, b))
            }
            _ => panic!("matrix product over different fields"),
        };
        ExactMatrix { rows: n, cols: m, repr }
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), other.shape());
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Repr::P(a, p), Repr::P(b, q)) if p == q => {
                let ar = ModArith(*p);
                Repr::P(a.iter().zip(b).map(|(x, y)| ar.add(x, y)).collect(), *p)
            }
            _ => panic!("matrix sum over different fields"),
        };
        ExactMatrix { rows: self.rows, cols: self.cols, repr }
    }

    pub fn neg(&self) -> ExactMatrix {
        let repr = dispatch!(&self.repr, |ar, d| ar.wrap(d.iter().map(|x| ar.neg(x)).collect()));
        ExactMatrix { rows: self.rows, cols: self.cols, repr }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.add(&other.neg())
    }

    /// Columns `idx` of `self`, in the given order.
    #[allow(clippy::clone_on_copy)]
    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let (rows, cols) = (self.rows, self.cols);
        let repr = dispatch!(&self.repr, |ar, d| {
            let mut out = Vec::with_capacity(rows * idx.len());
            for r in 0..rows {
                for &c in idx {
                    out.push(d[r * cols + c].clone());
                }
            }
            ar.wrap(out)
        });
        ExactMatrix { rows, cols: idx.len(), repr }
    }

    /// Rows `idx` of `self`, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let cols = self.cols;
        let repr = dispatch!(&self.repr, |ar, d| {
            let mut out = Vec::with_capacity(cols * idx.len());
            for &r in idx {
                out.extend_from_slice(&d[r * cols..(r + 1) * cols]);
            }
            ar.wrap(out)
        });
        ExactMatrix { rows: idx.len(), cols, repr }
    }

    /// Horizontal concatenation; all blocks need the same row count.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let cols = self.cols;
        match (&mut self.repr, &block.repr) {
            (Repr::Q(a), Repr::Q(b)) => {
                for r in 0..block.rows {
                    for c in 0..block.cols {
                        a[(r0 + r) * cols + c0 + c] = b[r * block.cols + c].clone();
                    }
                }
            }
            (Repr::P(a, p), Repr::P(b, q)) if p == q => {
                for r in 0..block.rows {
                    for c in 0..block.cols {
                        a[(r0 + r) * cols + c0 + c] = b[r * block.cols + c];
                    }
                }
            }
            _ => panic!("block over a different field"),
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (rows, cols) = (self.rows, self.cols);
        dispatch!(&self.repr, |ar, d| {
            let mut m = d.clone();
            rank_in_place(ar, rows, cols, &mut m)
        })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let (repr, pivots) = dispatch!(&self.repr, |ar, d| {
            let mut m = d.clone();
            let piv = rref_in_place(ar, rows, cols, &mut m);
            (ar.wrap(m), piv)
        });
        (ExactMatrix { rows, cols, repr }, pivots)
    }

    /// Basis of the right kernel as columns (`cols × nullity`).
    ///
    /// Each basis vector has a 1 in one free column and 0 in the other free
    /// columns, ordered by that free column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let field = self.field();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = ExactMatrix::zeros(field, self.cols, free.len());
        let cols = self.cols;
        let nf = free.len();
        match (&mut out.repr, &r.repr) {
            (Repr::Q(o), Repr::Q(rd)) => fill_kernel(&QArith, o, rd, cols, nf, &pivots, &free),
            (Repr::P(o, p), Repr::P(rd, _)) => fill_kernel(&ModArith(*p), o, rd, cols, nf, &pivots, &free),
            _ => unreachable!(),
        }
        out
    }

    /// Basis of the column space in column-echelon form (`rows × rank`).
    pub fn image_basis(&self) -> ExactMatrix {
        let (r, pivots) = self.transpose().rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&idx).transpose()
    }

    /// Solves `self · X = rhs` for a matrix `self` of full column rank.
    /// Returns `None` when some column of `rhs` is outside the column space.
    pub fn solve_full_column_rank(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let field = self.field();
        let n = self.cols;
        let aug = ExactMatrix::hstack(field, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        assert!(
            pivots.len() >= n && pivots[..n].iter().copied().eq(0..n),
            "coefficient matrix is not of full column rank"
        );
        if pivots.len() > n {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..n + rhs.cols).collect();
        Some(r.select_rows(&rows).select_columns(&cols))
    }
}

fn fill_kernel<A: Arith>(
    ar: &A,
    out: &mut [A::E],
    rref: &[A::E],
    cols: usize,
    nf: usize,
    pivots: &[usize],
    free: &[usize],
) {
    for (k, &f) in free.iter().enumerate() {
        out[f * nf + k] = ar.one();
        for (row, &pc) in pivots.iter().enumerate() {
            out[pc * nf + k] = ar.neg(&rref[row * cols + f]);
        }
    }
}

fn mul_generic<A: Arith>(ar: &A, n: usize, k: usize, m: usize, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i * k + l];
            if ar.is_zero(x) {
                continue;
            }
            for j in 0..m {
                let y = &b[l * m + j];
                if ar.is_zero(y) {
                    continue;
                }
                out[i * m + j] = ar.add(&out[i * m + j], &ar.mul(x, y));
            }
        }
    }
    out
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix[{}x{} over {}]", self.rows, self.cols, self.field())?;
        for row in self.to_string_rows() {
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of `m`.
pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// Kernel basis of `m` as columns.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    m.kernel_basis()
}

/// Column-space basis of `m` as columns.
pub fn image_basis(m: &ExactMatrix) -> ExactMatrix {
    m.image_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn identity_and_zero() {
        let id = ExactMatrix::identity(Q, 3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel_basis().cols(), 0);
        let z = ExactMatrix::zeros(Q, 2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis(), ExactMatrix::identity(Q, 3));
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::from_rows_i64(Q, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        // spanned by (2, -1): the basis vector is (-2, 1)
        assert_eq!(k.to_i64_rows().unwrap(), vec![vec![-2], vec![1]]);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn rational_pivots_stay_exact() {
        let m = ExactMatrix::from_rows_i64(Q, &[vec![2, 3], vec![4, 7]]);
        assert_eq!(m.rank(), 2);
        let x = m.solve_full_column_rank(&ExactMatrix::from_rows_i64(Q, &[vec![1], vec![0]])).unwrap();
        assert_eq!(x.get(0, 0).to_string(), "7/2");
        assert_eq!(x.get(1, 0).to_string(), "-2");
    }

    #[test]
    fn characteristic_matters() {
        let m = ExactMatrix::from_rows_i64(FieldSpec::Prime(2), &[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(), 1);
        let m = ExactMatrix::from_rows_i64(Q, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn image_basis_is_echelon() {
        let m = ExactMatrix::from_rows_i64(Q, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let im = m.image_basis();
        assert_eq!(im.cols(), 2);
        assert_eq!(ExactMatrix::hstack(Q, 3, &[&im, &m]).rank(), 2);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = ExactMatrix::from_rows_i64(Q, &[vec![1], vec![0]]);
        let b = ExactMatrix::from_rows_i64(Q, &[vec![0], vec![1]]);
        assert!(a.solve_full_column_rank(&b).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant_mod_p((r, c, data) in small_matrix()) {
            let m = ExactMatrix::from_i64(FieldSpec::Prime(5), r, c, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_annihilates_and_rank_nullity((r, c, data) in small_matrix(), p in prop_oneof![Just(0u64), Just(3), Just(7)]) {
            let field = FieldSpec::from_char(p);
            let m = ExactMatrix::from_i64(field, r, c, &data);
            let k = m.kernel_basis();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(m.rank() + k.cols(), c);
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(m.image_basis().cols(), m.rank());
        }
    }
}
