//! Reproducible input corpora: every square-free ideal on a few variables, and
//! seeded random monomial ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, PolynomialRingSpec};
use crate::simplicial::SimplicialComplex;

/// Largest variable count a corpus may use.
pub const MAX_CORPUS_VARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    /// Stanley–Reisner ideals of every simplicial complex on labeled vertices.
    AllSquarefree,
    /// Random minimal generating sets.
    RandomMonomial,
    /// Random ideals that are not square-free.
    RandomNonSquarefree,
    /// Random ideals containing a power of every variable.
    RandomPrimary,
}

/// Description of a corpus. Random modes draw the variable count uniformly
/// from `min_vars..=num_vars` for each ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub min_vars: usize,
    pub num_vars: usize,
    pub mode: CorpusMode,
    pub exponent_bound: u32,
    pub max_generators: usize,
    pub count: usize,
    pub seed: u64,
    pub field_char: u64,
}

impl CorpusSpec {
    pub fn all_squarefree(num_vars: usize) -> Self {
        CorpusSpec {
            min_vars: num_vars,
            num_vars,
            mode: CorpusMode::AllSquarefree,
            exponent_bound: 1,
            max_generators: 0,
            count: 0,
            seed: 0,
            field_char: 0,
        }
    }

    pub fn random(mode: CorpusMode, num_vars: usize, exponent_bound: u32, count: usize, seed: u64) -> Self {
        CorpusSpec { min_vars: 1, num_vars, mode, exponent_bound, max_generators: 4, count, seed, field_char: 0 }
    }

    /// Fixes the variable count of every random ideal to `d`.
    pub fn with_exact_vars(mut self, d: usize) -> Self {
        self.min_vars = d;
        self.num_vars = d;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.num_vars == 0 || self.num_vars > MAX_CORPUS_VARS {
            return Err(Error::Input(format!("corpus variable count must be in 1..={MAX_CORPUS_VARS}")));
        }
        if self.mode != CorpusMode::AllSquarefree && (self.min_vars == 0 || self.min_vars > self.num_vars) {
            return Err(Error::Input("min_vars must be in 1..=num_vars".into()));
        }
        if self.mode != CorpusMode::AllSquarefree {
            if self.exponent_bound == 0 {
                return Err(Error::Input("exponent bound must be at least 1".into()));
            }
            if self.mode == CorpusMode::RandomNonSquarefree && self.exponent_bound < 2 {
                return Err(Error::Input("non-square-free ideals need exponent bound at least 2".into()));
            }
            if self.max_generators == 0 {
                return Err(Error::Input("max_generators must be at least 1".into()));
            }
        }
        Ok(())
    }

    /// The corpus entries in a fixed order.
    pub fn generate(&self) -> Result<Vec<CorpusEntry>> {
        self.validate()?;
        match self.mode {
            CorpusMode::AllSquarefree => squarefree_corpus(self.num_vars, self.field_char),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..self.count)
                    .map(|_| {
                        let d = rng.gen_range(self.min_vars..=self.num_vars);
                        let ring = PolynomialRingSpec::new(d, self.field_char)?;
                        let ideal = loop {
                            let a = self.draw(&mut rng, ring)?;
                            if self.mode != CorpusMode::RandomNonSquarefree || !a.is_squarefree() {
                                break a;
                            }
                        };
                        Ok(CorpusEntry { ideal, complex: None })
                    })
                    .collect()
            }
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng, ring: PolynomialRingSpec) -> Result<MonomialIdeal> {
        let d = ring.num_vars();
        let mut gens = Vec::new();
        if self.mode == CorpusMode::RandomPrimary {
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = rng.gen_range(1..=self.exponent_bound);
                gens.push(Monomial::new(e));
            }
        }
        let extra = rng.gen_range(if self.mode == CorpusMode::RandomPrimary { 0 } else { 1 }..=self.max_generators);
        for _ in 0..extra {
            let e = loop {
                let e: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=self.exponent_bound)).collect();
                if e.iter().any(|&v| v > 0) {
                    break e;
                }
            };
            gens.push(Monomial::new(e));
        }
        MonomialIdeal::new(ring, gens)
    }
}

/// One corpus ideal, with its simplicial complex in square-free mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub ideal: MonomialIdeal,
    pub complex: Option<SimplicialComplex>,
}

fn squarefree_corpus(n: usize, field_char: u64) -> Result<Vec<CorpusEntry>> {
    let ring = PolynomialRingSpec::new(n, field_char)?;
    SimplicialComplex::enumerate_all(n)
        .into_iter()
        .map(|delta| Ok(CorpusEntry { ideal: delta.stanley_reisner(ring)?, complex: Some(delta) }))
        .collect()
}
