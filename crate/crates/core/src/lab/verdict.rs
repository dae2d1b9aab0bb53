use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The statement a verdict is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `Ext^i(R/a^[k^t], R) → Ext^i(R/a^[k^{t+1}], R)` is injective.
    InjectivityChain,
    /// `Ext^depth(R/a, R) → H^depth_a(R)` is injective.
    DepthInjectivity,
    /// The induced power map on `R/a` splits.
    PuritySplitting,
    /// `H^j_m(R/a)` is the `R`-span of the image of the power action.
    RspanSurjectivity,
    /// `H^i_a(R) = 0` iff the power action on `H^{d-i}_m(R/a)` is nilpotent.
    VanishingCriterion,
    /// `H^i_a(R) = 0` iff `H^{d-i}_m(R/a) = 0` for square-free `a`.
    VanishingEquivalence,
    /// `Ext^i(R/a, R/b) ≅ Tor_{d-i}(Ext^d(R/a, R), R/b)` for m-primary `a`.
    ExtTor,
    /// `Ext^d(R/a_t, R/(x_1)) ≠ 0 = H^d_m(R/(x_1))`, so the maps into local cohomology are not injective.
    Obstruction,
    /// Base change along the power map commutes with `Ext^i(-, R)`.
    PhiExtIso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails,
    /// Inconclusive: a finite window or search bound was exhausted.
    WindowLimited,
    /// Hypotheses of the construction are not met.
    NotApplicable,
}

/// One executable check on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: Claim,
    pub instance: Value,
    pub result: Outcome,
    pub witness: Option<Value>,
    pub window: Option<Value>,
    /// Whether the hypotheses make "holds" a theorem consequence.
    pub guaranteed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(claim: Claim, instance: Value, result: Outcome) -> Self {
        Verdict { claim, instance, result, witness: None, window: None, guaranteed: false, notes: Vec::new() }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_window(mut self, w: Value) -> Self {
        self.window = Some(w);
        self
    }

    pub fn guaranteed(mut self, g: bool) -> Self {
        self.guaranteed = g;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.result == Outcome::Holds
    }

    /// A guaranteed statement that did not hold.
    pub fn is_guaranteed_failure(&self) -> bool {
        self.guaranteed && self.result == Outcome::Fails
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

pub(crate) fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Fails
    }
}
