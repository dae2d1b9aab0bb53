use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{CechComplexSpec, ChamberDecomposition};
use crate::engine::{CohomologyTable, TableKind};
use crate::error::Result;
use crate::linalg::ExactMatrix;
use crate::monomial::{Degree, MonomialIdeal};

use super::power::PowerEndomorphism;

/// The action of the power map on `H^j_m(R/a)`, degree `α ↦ k∘α`.
///
/// Chambers come from the Čech thresholds refined by every integer in
/// `0..=t_max`, which makes `α ↦ k∘α` send each chamber into a single chamber.
#[derive(Debug, Clone)]
pub struct ActionOnTable {
    table: CohomologyTable,
    next: Vec<usize>,
    matrices: Vec<ExactMatrix>,
}

/// Outcome of the nilpotency analysis of the chamber automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// An iterate index at which the action is certainly zero (when nilpotent).
    pub bound: usize,
    /// A chamber on a cycle whose composite is not nilpotent.
    pub witness: Option<Degree>,
}

/// Per-chamber matrices of the power action on `H^j_m(R/a)`.
pub fn phi_action(a: &MonomialIdeal, phi: &PowerEndomorphism, j: usize) -> Result<ActionOnTable> {
    let spec = CechComplexSpec::on_variables(a)?;
    let field = a.ring().field();
    let base = spec.thresholds();
    let t_max = (0..base.num_vars()).flat_map(|i| base.coordinate(i).iter().copied()).max().unwrap_or(0);
    let dec = Arc::new(ChamberDecomposition::new(base.with_range(0, t_max)));
    let k = phi.exponents();
    let rows: Vec<(usize, usize, ExactMatrix)> = dec
        .chambers()
        .par_iter()
        .map(|c| {
            let src = spec.strand(field, &c.rep);
            let image = c.rep.scale(k);
            let tgt = spec.strand(field, &image);
            let m = src.transfer_to(&tgt)?.induced_map(j as i64);
            Ok((m.cols(), dec.locate(&image), m))
        })
        .collect::<Result<_>>()?;
    let dims = rows.iter().map(|r| r.0).collect();
    let next = rows.iter().map(|r| r.1).collect();
    let matrices = rows.into_iter().map(|r| r.2).collect();
    Ok(ActionOnTable { table: CohomologyTable::new(TableKind::Hm, j, dec, dims), next, matrices })
}

impl ActionOnTable {
    pub fn table(&self) -> &CohomologyTable {
        &self.table
    }

    /// Chamber containing `k∘rep(c)`.
    pub fn next(&self) -> &[usize] {
        &self.next
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    /// Whether every per-chamber matrix is injective.
    pub fn is_injective(&self) -> bool {
        self.matrices.iter().all(|m| m.rank() == m.cols())
    }

    /// Decides whether some iterate of the action is zero. Every path in the
    /// functional graph runs into a cycle, so the action is nilpotent exactly
    /// when each cycle composite is a nilpotent matrix.
    pub fn nilpotency(&self) -> Nilpotency {
        let n = self.next.len();
        let max_dim = self.table.dims().iter().copied().max().unwrap_or(0);
        let mut on_cycle = vec![false; n];
        let mut state = vec![0u8; n]; // 0 unseen, 1 on current path, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = self.next[v];
            }
            if state[v] == 1 {
                let pos = path.iter().position(|&u| u == v).unwrap();
                for &u in &path[pos..] {
                    on_cycle[u] = true;
                }
            }
            for u in path {
                state[u] = 2;
            }
        }
        let mut seen = vec![false; n];
        let mut longest_cycle = 1;
        for c in 0..n {
            if !on_cycle[c] || seen[c] {
                continue;
            }
            let dim = self.table.dims()[c];
            let mut p = ExactMatrix::identity(self.matrices[c].field(), dim);
            let mut v = c;
            let mut len = 0;
            loop {
                seen[v] = true;
                p = self.matrices[v].mul(&p);
                v = self.next[v];
                len += 1;
                if v == c {
                    break;
                }
            }
            longest_cycle = longest_cycle.max(len);
            let mut power = ExactMatrix::identity(p.field(), dim);
            for _ in 0..dim {
                power = p.mul(&power);
            }
            if !power.is_zero() {
                return Nilpotency {
                    nilpotent: false,
                    bound: 0,
                    witness: Some(self.table.decomposition().chambers()[c].rep.clone()),
                };
            }
        }
        Nilpotency { nilpotent: true, bound: n + longest_cycle * max_dim, witness: None }
    }

    /// The composite of `steps` iterates starting at chamber `c`.
    pub fn iterate_from(&self, c: usize, steps: usize) -> ExactMatrix {
        let mut p = ExactMatrix::identity(self.matrices[c].field(), self.table.dims()[c]);
        let mut v = c;
        for _ in 0..steps {
            p = self.matrices[v].mul(&p);
            v = self.next[v];
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::PolynomialRingSpec;

    fn ring(d: usize) -> PolynomialRingSpec {
        PolynomialRingSpec::new(d, 0).unwrap()
    }

    #[test]
    fn artinian_line() {
        // H^0_m(R/(x^2)) = span{1, x}; 1 ↦ 1 and x ↦ x^2 = 0
        let a = MonomialIdeal::from_exponents(ring(1), &[&[2]]).unwrap();
        let phi = PowerEndomorphism::uniform(ring(1), 2).unwrap();
        let act = phi_action(&a, &phi, 0).unwrap();
        let dec = act.table().decomposition();
        let c0 = dec.locate(&Degree(vec![0]));
        let c1 = dec.locate(&Degree(vec![1]));
        assert_eq!(act.table().dims()[c0], 1);
        assert_eq!(act.table().dims()[c1], 1);
        assert_eq!(act.matrices()[c0].to_i64_rows().unwrap(), vec![vec![1]]);
        assert!(act.matrices()[c1].is_zero());
        let nil = act.nilpotency();
        assert!(!nil.nilpotent);
        assert_eq!(nil.witness, Some(Degree(vec![0])));
    }

    #[test]
    fn squarefree_action_is_injective() {
        let a = MonomialIdeal::from_exponents(ring(3), &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
        let phi = PowerEndomorphism::uniform(ring(3), 2).unwrap();
        for j in 0..=3 {
            assert!(phi_action(&a, &phi, j).unwrap().is_injective(), "j={j}");
        }
    }

    #[test]
    fn zero_module_has_empty_action() {
        let a = MonomialIdeal::unit(ring(2));
        let phi = PowerEndomorphism::uniform(ring(2), 2).unwrap();
        let act = phi_action(&a, &phi, 0).unwrap();
        assert!(act.table().is_zero());
        assert!(act.nilpotency().nilpotent);
    }
}
