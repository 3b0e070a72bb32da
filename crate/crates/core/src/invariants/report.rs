use std::collections::BTreeMap;

use serde::Serialize;

use super::growth::GrowthEstimate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violated,
}

/// Values indexed by consecutive degrees starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub start: i64,
    pub values: Vec<u64>,
}

impl Series {
    pub fn from_zero(values: &[usize]) -> Self {
        Series {
            start: 0,
            values: values.iter().map(|&v| v as u64).collect(),
        }
    }
}

/// Outcome of an executable check. `Violated` always carries a witness degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub series: BTreeMap<String, Series>,
    pub estimates: BTreeMap<String, GrowthEstimate>,
    pub scalars: BTreeMap<String, f64>,
    pub flags: BTreeMap<String, bool>,
    pub verdict: Verdict,
    pub witness_degree: Option<i64>,
    pub tolerance: Option<f64>,
}

impl CheckReport {
    pub(crate) fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            inputs: BTreeMap::new(),
            series: BTreeMap::new(),
            estimates: BTreeMap::new(),
            scalars: BTreeMap::new(),
            flags: BTreeMap::new(),
            verdict: Verdict::Consistent,
            witness_degree: None,
            tolerance: None,
        }
    }

    pub(crate) fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn series(&mut self, key: &str, values: Series) -> &mut Self {
        self.series.insert(key.to_string(), values);
        self
    }

    pub(crate) fn estimate(&mut self, key: &str, g: GrowthEstimate) -> &mut Self {
        self.estimates.insert(key.to_string(), g);
        self
    }

    pub(crate) fn scalar(&mut self, key: &str, v: f64) -> &mut Self {
        self.scalars.insert(key.to_string(), v);
        self
    }

    pub(crate) fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        self.flags.insert(key.to_string(), v);
        self
    }

    pub(crate) fn violated_at(&mut self, degree: i64) -> &mut Self {
        self.verdict = Verdict::Violated;
        self.witness_degree = Some(degree);
        self
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}
