//! Simplicial complexes on labeled vertices and the Stanley–Reisner dictionary.
//!
//! Faces are stored as vertex bitmasks (bit `i` is vertex `i`, 0-based), so the
//! number of vertices is limited to 31.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec, FiniteComplex};
use crate::monomial::{Monomial, MonomialIdeal, PolynomialRingSpec};

pub type FaceMask = u32;

pub const MAX_VERTICES: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Maximal faces, sorted by mask.
    facets: Vec<FaceMask>,
}

pub fn mask_of(vertices: &[usize]) -> FaceMask {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn vertices_of(mask: FaceMask) -> Vec<usize> {
    (0..MAX_VERTICES).filter(|&v| mask & (1 << v) != 0).collect()
}

fn is_subset(a: FaceMask, b: FaceMask) -> bool {
    a & !b == 0
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`; non-maximal entries are dropped.
    pub fn new(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let masks = facets
            .iter()
            .map(|f| {
                if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                    return Err(Error::Input(format!("vertex {v} out of range for {vertex_count} vertices")));
                }
                Ok(mask_of(f))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(vertex_count, masks)
    }

    pub fn from_masks(vertex_count: usize, masks: impl IntoIterator<Item = FaceMask>) -> Result<Self> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(Error::Input(format!("vertex count must be in 1..={MAX_VERTICES}")));
        }
        let mut masks: Vec<FaceMask> = masks.into_iter().collect();
        masks.sort_unstable();
        masks.dedup();
        let facets = masks.iter().copied().filter(|&f| !masks.iter().any(|&g| g != f && is_subset(f, g))).collect();
        Ok(SimplicialComplex { vertex_count, facets })
    }

    /// The full simplex on all vertices.
    pub fn simplex(vertex_count: usize) -> Self {
        Self::from_masks(vertex_count, [(1u32 << vertex_count) - 1]).expect("valid vertex count")
    }

    /// The complex with no faces at all (not even the empty face).
    pub fn void(vertex_count: usize) -> Self {
        Self::from_masks(vertex_count, []).expect("valid vertex count")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facet_masks(&self) -> &[FaceMask] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| vertices_of(m)).collect()
    }

    fn all_mask(&self) -> FaceMask {
        ((1u64 << self.vertex_count) - 1) as FaceMask
    }

    pub fn contains(&self, face: FaceMask) -> bool {
        self.facets.iter().any(|&f| is_subset(face, f))
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets == [self.all_mask()]
    }

    /// Proper in the sense used for Alexander duality: neither void nor the full simplex.
    pub fn is_proper(&self) -> bool {
        !self.is_void() && !self.is_full_simplex()
    }

    /// All faces, sorted by (cardinality, mask).
    pub fn faces(&self) -> Vec<FaceMask> {
        let mut out: Vec<FaceMask> = (0..=self.all_mask()).filter(|&m| self.contains(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Non-faces all of whose codimension-one subsets are faces.
    pub fn minimal_nonfaces(&self) -> Vec<FaceMask> {
        (0..=self.all_mask())
            .filter(|&m| !self.contains(m) && vertices_of(m).iter().all(|&v| self.contains(m & !(1 << v))))
            .collect()
    }

    /// `{G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ}`; void when `F ∉ Δ`.
    pub fn link(&self, face: FaceMask) -> SimplicialComplex {
        let faces = self.faces().into_iter().filter(|&g| g & face == 0 && self.contains(g | face));
        Self::from_masks(self.vertex_count, faces).expect("same vertex count")
    }

    /// Stanley–Reisner ideal: generated by the minimal non-faces.
    pub fn stanley_reisner(&self, ring: PolynomialRingSpec) -> Result<MonomialIdeal> {
        ring.check_arity(self.vertex_count)?;
        let d = self.vertex_count;
        let gens = self.minimal_nonfaces().into_iter().map(|m| Monomial::new((0..d).map(|v| (m >> v) & 1).collect()));
        MonomialIdeal::new(ring, gens)
    }

    /// The complex whose Stanley–Reisner ideal is `a`.
    pub fn complex_of(a: &MonomialIdeal) -> Result<SimplicialComplex> {
        if !a.is_squarefree() {
            return Err(Error::Input(format!("{a} is not square-free")));
        }
        if a.is_unit() {
            return Err(Error::Input("the unit ideal has no associated complex".into()));
        }
        let d = a.num_vars();
        if d > MAX_VERTICES {
            return Err(Error::Input(format!("at most {MAX_VERTICES} variables supported")));
        }
        let gen_masks: Vec<FaceMask> = a.generators().iter().map(|g| mask_of(&g.support())).collect();
        let all = ((1u64 << d) - 1) as FaceMask;
        let faces = (0..=all).filter(|&m| !gen_masks.iter().any(|&g| is_subset(g, m)));
        Self::from_masks(d, faces)
    }

    /// Faces of the dual are the complements of the non-faces.
    pub fn alexander_dual(&self) -> Result<SimplicialComplex> {
        if !self.is_proper() {
            return Err(Error::Input("Alexander dual needs a complex that is neither void nor a full simplex".into()));
        }
        let all = self.all_mask();
        let faces = (0..=all).filter(|&m| !self.contains(m)).map(|m| all & !m);
        Self::from_masks(self.vertex_count, faces)
    }

    /// Augmented cochain complex, indexed from `-1` (the empty face) upward.
    pub fn reduced_cochain_complex(&self, field: FieldSpec) -> FiniteComplex {
        let faces = self.faces();
        let top = faces.iter().map(|f| f.count_ones() as usize).max();
        let Some(top) = top else {
            return FiniteComplex::zero(field, -1);
        };
        // by_dim[k] = faces with k vertices, i.e. dimension k - 1
        let mut by_dim: Vec<Vec<FaceMask>> = vec![Vec::new(); top + 1];
        for f in faces {
            by_dim[f.count_ones() as usize].push(f);
        }
        let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(top);
        for k in 0..top {
            let (src, tgt) = (&by_dim[k], &by_dim[k + 1]);
            let mut data = vec![0i64; tgt.len() * src.len()];
            for (r, &g) in tgt.iter().enumerate() {
                for (pos, v) in vertices_of(g).into_iter().enumerate() {
                    let f = g & !(1 << v);
                    if let Some(c) = src.iter().position(|&s| s == f) {
                        data[r * src.len() + c] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            maps.push(ExactMatrix::from_i64(field, tgt.len(), src.len(), &data));
        }
        FiniteComplex::new(field, -1, dims, maps).expect("simplicial coboundary squares to zero")
    }

    /// `dim H̃^k(Δ; K)` for `k = -1, 0, 1, ...`; index 0 of the result is `k = -1`.
    pub fn reduced_cohomology(&self, field: FieldSpec) -> Vec<usize> {
        self.reduced_cochain_complex(field).cohomology_dims()
    }

    /// `dim H̃^k(Δ; K)` for a single `k`.
    pub fn reduced_cohomology_at(&self, field: FieldSpec, k: i64) -> usize {
        self.reduced_cochain_complex(field).cohomology_dim(k)
    }

    /// Every non-void simplicial complex on `n` labeled vertices, in a fixed order.
    pub fn enumerate_all(n: usize) -> Vec<SimplicialComplex> {
        assert!((1..=6).contains(&n), "enumeration supports 1..=6 vertices");
        let mut subsets: Vec<FaceMask> = (0..(1u32 << n)).collect();
        subsets.sort_by_key(|&m| (m.count_ones(), m));
        let mut out = Vec::new();
        let mut chosen: Vec<FaceMask> = Vec::new();
        fn rec(
            idx: usize,
            subsets: &[FaceMask],
            chosen: &mut Vec<FaceMask>,
            n: usize,
            out: &mut Vec<SimplicialComplex>,
        ) {
            if idx == subsets.len() {
                if !chosen.is_empty() {
                    out.push(SimplicialComplex::from_masks(n, chosen.iter().copied()).unwrap());
                }
                return;
            }
            let s = subsets[idx];
            // exclude s
            rec(idx + 1, subsets, chosen, n, out);
            // include s if closed under removing one vertex
            let closed = vertices_of(s).iter().all(|&v| chosen.contains(&(s & !(1 << v))));
            if closed {
                chosen.push(s);
                rec(idx + 1, subsets, chosen, n, out);
                chosen.pop();
            }
        }
        rec(0, &subsets, &mut chosen, n, &mut out);
        out
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, facet) in self.facets().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in facet.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "> on {} vertices", self.vertex_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(d: usize) -> PolynomialRingSpec {
        PolynomialRingSpec::new(d, 0).unwrap()
    }

    fn points(n: usize) -> SimplicialComplex {
        SimplicialComplex::new(n, &(0..n).map(|v| vec![v]).collect::<Vec<_>>()).unwrap()
    }

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn stanley_reisner_examples() {
        let a = points(3).stanley_reisner(ring(3)).unwrap();
        let expected = MonomialIdeal::from_exponents(ring(3), &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(a, expected);
        assert!(SimplicialComplex::simplex(3).stanley_reisner(ring(3)).unwrap().is_zero());
        let xy = MonomialIdeal::from_exponents(ring(2), &[&[1, 1]]).unwrap();
        assert_eq!(SimplicialComplex::complex_of(&xy).unwrap(), points(2));
    }

    #[test]
    fn complex_of_rejects_non_squarefree() {
        let a = MonomialIdeal::from_exponents(ring(2), &[&[2, 0]]).unwrap();
        assert!(SimplicialComplex::complex_of(&a).is_err());
        assert!(SimplicialComplex::complex_of(&MonomialIdeal::unit(ring(2))).is_err());
    }

    #[test]
    fn dictionary_is_bijective_up_to_five_vertices() {
        for n in 1..=5 {
            for delta in SimplicialComplex::enumerate_all(n) {
                let a = delta.stanley_reisner(ring(n)).unwrap();
                assert_eq!(SimplicialComplex::complex_of(&a).unwrap(), delta);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_dedekind_numbers() {
        // Dedekind numbers 3, 6, 20, 168, 7581 count antichains including the empty one.
        let counts: Vec<usize> = (1..=5).map(|n| SimplicialComplex::enumerate_all(n).len()).collect();
        assert_eq!(counts, vec![2, 5, 19, 167, 7580]);
    }

    #[test]
    fn alexander_dual_by_complements() {
        // boundary of the triangle: the only non-face is {1,2,3}, whose complement is ∅
        let dual = triangle_boundary().alexander_dual().unwrap();
        assert_eq!(dual.facet_masks(), &[0]);
        // three points: non-faces are the three edges and the triangle
        assert_eq!(points(3).alexander_dual().unwrap(), points(3));
        assert_eq!(points(2).alexander_dual().unwrap().alexander_dual().unwrap(), points(2));
        assert!(SimplicialComplex::simplex(3).alexander_dual().is_err());
        assert!(SimplicialComplex::void(3).alexander_dual().is_err());
    }

    #[test]
    fn alexander_dual_is_an_involution() {
        for n in 1..=4 {
            for delta in SimplicialComplex::enumerate_all(n).into_iter().filter(|d| d.is_proper()) {
                assert_eq!(delta.alexander_dual().unwrap().alexander_dual().unwrap(), delta);
            }
        }
    }

    #[test]
    fn reduced_cohomology_of_small_complexes() {
        let q = FieldSpec::Rational;
        assert_eq!(points(2).reduced_cohomology(q), vec![0, 1]);
        assert_eq!(triangle_boundary().reduced_cohomology(q), vec![0, 0, 1]);
        let empty_face = SimplicialComplex::from_masks(3, [0]).unwrap();
        assert_eq!(empty_face.reduced_cohomology(q), vec![1]);
        assert_eq!(SimplicialComplex::simplex(3).reduced_cohomology(q), vec![0, 0, 0, 0]);
        assert_eq!(SimplicialComplex::void(2).reduced_cohomology_at(q, -1), 0);
    }

    #[test]
    fn links() {
        let tri = triangle_boundary();
        let lk = tri.link(mask_of(&[0]));
        assert_eq!(lk.facets(), vec![vec![1], vec![2]]);
        assert!(tri.link(mask_of(&[0, 1, 2])).is_void());
    }
}
