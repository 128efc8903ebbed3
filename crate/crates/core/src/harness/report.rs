use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::module::{FinModule, Submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

impl Verdict {
    /// Combines two verdicts: any failure fails, otherwise any undetermined
    /// result is undetermined.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Undetermined, _) | (_, Verdict::Undetermined) => Verdict::Undetermined,
            _ => Verdict::Pass,
        }
    }
}

/// Enough of a module to identify it and rebuild it from a run spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub label: String,
    pub order: u128,
    pub invariants: Vec<u64>,
    pub rank: usize,
    pub relations: Vec<Vec<u64>>,
}

impl ModuleSummary {
    pub fn of(m: &FinModule) -> Self {
        Self {
            label: m.label().to_string(),
            order: m.order(),
            invariants: m.abelian_invariants(),
            rank: m.rank(),
            relations: m.relations().rows().to_vec(),
        }
    }
}

/// Counterexample data attached to a failing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub module: ModuleSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub submodule: Option<Vec<Vec<u64>>>,
    pub note: String,
}

impl Witness {
    pub fn module(m: &FinModule, note: impl Into<String>) -> Self {
        Self { module: ModuleSummary::of(m), element: None, submodule: None, note: note.into() }
    }

    pub fn element(m: &FinModule, v: Vec<u64>, note: impl Into<String>) -> Self {
        Self { element: Some(v), ..Self::module(m, note) }
    }

    pub fn submodule(m: &FinModule, s: &Submodule, note: impl Into<String>) -> Self {
        Self { submodule: Some(s.basis().rows().to_vec()), ..Self::module(m, note) }
    }
}

/// Outcome of one theorem check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub property: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>, property: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            property: property.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            instances: 0,
            seed: None,
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn count(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(w);
    }

    pub fn undetermined(&mut self, reason: impl Into<String>) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Undetermined;
        }
        self.detail("undetermined", reason.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Folds a sub-report into this one: instances add up, witnesses are
    /// kept and the verdict is the combination of both.
    pub fn absorb(&mut self, other: Report) {
        self.instances += other.instances;
        self.verdict = self.verdict.and(other.verdict);
        self.witnesses.extend(other.witnesses);
        if let Some(reason) = other.details.get("undetermined") {
            self.details.entry("undetermined".into()).or_insert_with(|| reason.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Pass.and(Pass), Pass);
        assert_eq!(Pass.and(Undetermined), Undetermined);
        assert_eq!(Undetermined.and(Fail), Fail);
        assert_eq!(Fail.and(Pass), Fail);
    }
}
