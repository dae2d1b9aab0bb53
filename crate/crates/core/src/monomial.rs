//! Exponent vectors, monomial ideals and bracket powers.
//!
//! Monomials live in a polynomial ring `K[x_1, ..., x_d]` described by a
//! [`PolynomialRingSpec`]. Ideals always store a minimal generating set in
//! lexicographic order of exponent vectors; every downstream construction
//! (Taylor subsets, Čech subsets) indexes into that canonical list.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Number of variables and characteristic of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialRingSpec {
    num_vars: usize,
    field_char: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

impl PolynomialRingSpec {
    pub fn new(num_vars: usize, field_char: u64) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Input("a ring needs at least one variable".into()));
        }
        if field_char != 0 && !is_prime(field_char) {
            return Err(Error::NotPrime(field_char));
        }
        if field_char > u32::MAX as u64 {
            return Err(Error::Input(format!("characteristic {field_char} exceeds the supported range (< 2^32)")));
        }
        Ok(Self { num_vars, field_char })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field_char(&self) -> u64 {
        self.field_char
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::from_char(self.field_char)
    }

    pub fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.num_vars {
            return Err(Error::Arity { expected: self.num_vars, found: len });
        }
        Ok(())
    }
}

/// A monomial `x^e`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// The variable `x_i` (0-based index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise `≤`: does `self` divide `other`?
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Indices (0-based) of the variables occurring in the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// The square-free monomial with the same support.
    pub fn squarefree_part(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// `e ↦ (k_1 e_1, ..., k_d e_d)`.
    pub fn scale(&self, k: &[u32]) -> Monomial {
        debug_assert_eq!(self.0.len(), k.len());
        Monomial(self.0.iter().zip(k).map(|(&e, &k)| e * k).collect())
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn to_degree(&self) -> Degree {
        Degree(self.0.iter().map(|&e| e as i64).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A point of the multidegree lattice `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(num_vars: usize) -> Self {
        Degree(vec![0; num_vars])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }

    /// `-α - 𝟙`, the degree paired with `α` by graded local duality.
    pub fn dual_point(&self) -> Degree {
        Degree(self.0.iter().map(|a| -a - 1).collect())
    }

    /// Componentwise product `k ∘ α`.
    pub fn scale(&self, k: &[u32]) -> Degree {
        Degree(self.0.iter().zip(k).map(|(&a, &k)| a * k as i64).collect())
    }

    /// The monomial `x^α` when `α ≥ 0`.
    pub fn to_monomial(&self) -> Option<Monomial> {
        if !self.is_nonnegative() {
            return None;
        }
        Some(Monomial(self.0.iter().map(|&a| a as u32).collect()))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal given by its minimal generators.
///
/// The zero ideal has no generators; the unit ideal is generated by `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: PolynomialRingSpec,
    gens: Vec<Monomial>,
}

/// Divisibility antichain of `gens`, sorted lexicographically.
pub fn minimalize(ring: PolynomialRingSpec, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    let mut all: Vec<Monomial> = Vec::new();
    for g in gens {
        ring.check_arity(g.num_vars())?;
        all.push(g);
    }
    all.sort();
    all.dedup();
    // A divisor of g has total degree ≤ that of g, so scanning by degree
    // keeps only antichain members.
    let mut by_degree = all.clone();
    by_degree.sort_by_key(|m| m.total_degree());
    let mut kept: Vec<Monomial> = Vec::new();
    for g in by_degree {
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    Ok(MonomialIdeal { ring, gens: kept })
}

impl MonomialIdeal {
    pub fn new(ring: PolynomialRingSpec, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        minimalize(ring, gens)
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(ring: PolynomialRingSpec, gens: &[&[u32]]) -> Result<Self> {
        minimalize(ring, gens.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub fn zero(ring: PolynomialRingSpec) -> Self {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: PolynomialRingSpec) -> Self {
        MonomialIdeal { ring, gens: vec![Monomial::one(ring.num_vars())] }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(ring: PolynomialRingSpec) -> Self {
        let d = ring.num_vars();
        let mut gens: Vec<Monomial> = (0..d).map(|i| Monomial::var(d, i)).collect();
        gens.sort();
        MonomialIdeal { ring, gens }
    }

    pub fn ring(&self) -> PolynomialRingSpec {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Whether `x^α` is a nonzero monomial of `R/self` (so `α ≥ 0` and not in the ideal).
    pub fn quotient_has_degree(&self, alpha: &Degree) -> bool {
        match alpha.to_monomial() {
            Some(m) => !self.contains(&m),
            None => false,
        }
    }

    pub fn max_exponent(&self) -> u32 {
        self.gens.iter().map(|g| g.max_exponent()).max().unwrap_or(0)
    }

    /// The ideal generated by `x^{k∘e}` for the generators `x^e`; this is the image
    /// of the ideal under `x_i ↦ x_i^{k_i}`.
    pub fn bracket_power(&self, k: &[u32]) -> Result<MonomialIdeal> {
        self.ring.check_arity(k.len())?;
        if let Some(pos) = k.iter().position(|&k| k == 0) {
            return Err(Error::Input(format!("bracket exponent k_{} must be at least 1", pos + 1)));
        }
        minimalize(self.ring, self.gens.iter().map(|g| g.scale(k)))
    }

    /// The generator list of the bracket power, rescaled but not re-minimalized.
    ///
    /// Rescaling by positive integers preserves both divisibility and the
    /// lexicographic order, so this equals the minimal generator list.
    pub fn rescaled_generators(&self, k: &[u32]) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.scale(k)).collect()
    }

    pub fn radical(&self) -> MonomialIdeal {
        minimalize(self.ring, self.gens.iter().map(|g| g.squarefree_part())).expect("arity already validated")
    }

    /// Whether the radical is the maximal ideal (or the ideal is the unit ideal).
    pub fn is_m_primary(&self) -> bool {
        let d = self.num_vars();
        if self.is_unit() {
            return true;
        }
        (0..d).all(|i| self.gens.iter().any(|g| g.support() == [i]))
    }

    pub fn with_ring(&self, ring: PolynomialRingSpec) -> Result<MonomialIdeal> {
        ring.check_arity(self.num_vars())?;
        Ok(MonomialIdeal { ring, gens: self.gens.clone() })
    }

    pub fn to_file(&self) -> IdealFile {
        IdealFile {
            num_vars: self.ring.num_vars(),
            field_char: self.ring.field_char(),
            generators: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("ideal serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<MonomialIdeal> {
        let file: IdealFile = serde_json::from_str(text)?;
        file.into_ideal()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// On-disk ideal format: `{"num_vars": d, "field_char": c, "generators": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub num_vars: usize,
    pub field_char: u64,
    pub generators: Vec<Vec<u32>>,
}

impl IdealFile {
    pub fn into_ideal(self) -> Result<MonomialIdeal> {
        let ring = PolynomialRingSpec::new(self.num_vars, self.field_char)?;
        for (idx, g) in self.generators.iter().enumerate() {
            if g.len() != self.num_vars {
                return Err(Error::Input(format!(
                    "generator {idx} has {} exponents, expected {}",
                    g.len(),
                    self.num_vars
                )));
            }
        }
        minimalize(ring, self.generators.into_iter().map(Monomial::new))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(d: usize) -> PolynomialRingSpec {
        PolynomialRingSpec::new(d, 0).unwrap()
    }

    fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(ring(d), gens).unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(PolynomialRingSpec::new(0, 0).is_err());
        assert!(matches!(PolynomialRingSpec::new(2, 4), Err(Error::NotPrime(4))));
        assert!(matches!(PolynomialRingSpec::new(2, 1), Err(Error::NotPrime(1))));
        assert!(PolynomialRingSpec::new(2, 7).is_ok());
        assert!(PolynomialRingSpec::new(2, 32003).is_ok());
    }

    #[test]
    fn minimalize_prunes_multiples() {
        assert_eq!(ideal(1, &[&[1], &[2]]).generators(), &[Monomial::new(vec![1])]);
        let a = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(a.generators(), &[Monomial::new(vec![0, 1, 1]), Monomial::new(vec![1, 1, 0])]);
        let z = ideal(2, &[]);
        assert!(z.is_zero());
    }

    #[test]
    fn minimalize_rejects_bad_arity() {
        let err = MonomialIdeal::from_exponents(ring(2), &[&[1, 0, 0]]).unwrap_err();
        assert!(matches!(err, Error::Arity { expected: 2, found: 3 }));
    }

    #[test]
    fn unit_ideal_absorbs() {
        let u = ideal(2, &[&[0, 0], &[1, 1]]);
        assert!(u.is_unit());
        assert_eq!(u.num_generators(), 1);
    }

    #[test]
    fn bracket_powers() {
        let a = ideal(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = a.bracket_power(&[2, 2, 2]).unwrap();
        assert_eq!(b, ideal(3, &[&[2, 2, 0], &[0, 0, 2]]));
        assert_eq!(ideal(1, &[&[1]]).bracket_power(&[3]).unwrap(), ideal(1, &[&[3]]));
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(tri.bracket_power(&[2, 2, 2]).unwrap(), ideal(3, &[&[2, 2, 0], &[0, 2, 2], &[2, 0, 2]]));
        assert!(tri.bracket_power(&[2, 0, 2]).is_err());
        assert!(tri.bracket_power(&[2, 2]).is_err());
    }

    #[test]
    fn radicals() {
        assert_eq!(ideal(2, &[&[2, 1]]).radical(), ideal(2, &[&[1, 1]]));
        assert_eq!(ideal(2, &[&[2, 0], &[0, 3]]).radical(), ideal(2, &[&[1, 0], &[0, 1]]));
        let sf = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(sf.radical(), sf);
    }

    #[test]
    fn lcm_divides_support() {
        let xy = Monomial::new(vec![1, 1, 0]);
        let yz = Monomial::new(vec![0, 1, 1]);
        assert_eq!(xy.lcm(&yz), Monomial::new(vec![1, 1, 1]));
        assert!(Monomial::new(vec![1, 0]).divides(&Monomial::new(vec![2, 1])));
        assert!(!Monomial::new(vec![1, 1]).divides(&Monomial::new(vec![2, 0])));
        assert_eq!(Monomial::new(vec![2, 0, 1]).support(), vec![0, 2]);
    }

    #[test]
    fn m_primary_detection() {
        assert!(ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]).is_m_primary());
        assert!(!ideal(2, &[&[2, 0], &[1, 1]]).is_m_primary());
        assert!(!ideal(2, &[]).is_m_primary());
    }

    #[test]
    fn json_round_trip_minimalizes() {
        let text = r#"{"num_vars": 2, "field_char": 0, "generators": [[1,1],[2,2],[0,1]]}"#;
        let a = MonomialIdeal::from_json(text).unwrap();
        assert_eq!(a, ideal(2, &[&[0, 1]]));
        assert_eq!(a.to_json(), r#"{"num_vars":2,"field_char":0,"generators":[[0,1]]}"#);
        let bad = r#"{"num_vars": 2, "field_char": 6, "generators": []}"#;
        assert!(matches!(MonomialIdeal::from_json(bad), Err(Error::NotPrime(6))));
        let short = r#"{"num_vars": 2, "field_char": 0, "generators": [[1]]}"#;
        assert!(matches!(MonomialIdeal::from_json(short), Err(Error::Input(_))));
    }

    #[test]
    fn display() {
        assert_eq!(ideal(3, &[&[2, 0, 1], &[0, 1, 0]]).to_string(), "(x2, x1^2*x3)");
        assert_eq!(ideal(2, &[]).to_string(), "(0)");
    }
}
