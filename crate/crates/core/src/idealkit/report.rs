//! The shared JSON report. Every number is emitted as a string.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Serialize, Serializer};

use super::points::{FoundPoint, PointSet};
use crate::field::Field;
use crate::projgeo::ProjectivePoint;

fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Dimension of a report that covers several schemes.
pub const NOT_COMPUTED: i64 = i64::MIN;

fn dimension_string<S: Serializer>(v: &i64, s: S) -> Result<S::Ok, S::Error> {
    if *v == NOT_COMPUTED {
        s.serialize_str("n/a")
    } else if *v < 0 {
        s.serialize_str("empty")
    } else {
        s.serialize_str(&v.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Match,
    Mismatch,
    /// Not a failure: the computation could not see everything, e.g. points
    /// beyond the searched extensions.
    Flagged,
}

/// One predicted-versus-computed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub predicted: String,
    pub computed: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Match iff the printed values agree.
    pub fn compare(name: &str, predicted: impl Display, computed: impl Display) -> Check {
        let (predicted, computed) = (predicted.to_string(), computed.to_string());
        let status = if predicted == computed {
            CheckStatus::Match
        } else {
            CheckStatus::Mismatch
        };
        Check {
            name: name.into(),
            predicted,
            computed,
            status,
            note: None,
        }
    }

    pub fn flagged(name: &str, predicted: impl Display, computed: impl Display, note: &str) -> Check {
        Check {
            name: name.into(),
            predicted: predicted.to_string(),
            computed: computed.to_string(),
            status: CheckStatus::Flagged,
            note: Some(note.into()),
        }
    }

    /// A boolean certificate that is expected to hold.
    pub fn holds(name: &str, ok: bool) -> Check {
        Check::compare(name, true, ok)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    #[serde(serialize_with = "as_string")]
    pub seed: u64,
    pub outcome: String,
}

/// A point with the field its coordinates live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerializedPoint {
    #[serde(serialize_with = "as_string")]
    pub degree: usize,
    pub field: String,
    pub coords: Vec<String>,
}

impl SerializedPoint {
    pub fn new(field: &Field, degree: usize, p: &ProjectivePoint) -> SerializedPoint {
        SerializedPoint {
            degree,
            field: field.label(),
            coords: p.to_strings(field),
        }
    }

    pub fn from_found(p: &FoundPoint) -> SerializedPoint {
        SerializedPoint::new(&p.field, p.degree, &p.point)
    }

    pub fn from_set(s: &PointSet) -> Vec<SerializedPoint> {
        s.points.iter().map(SerializedPoint::from_found).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarietyReport {
    pub pipeline: String,
    pub parameters: BTreeMap<String, String>,
    pub field: String,
    #[serde(serialize_with = "as_string")]
    pub ambient_dimension: usize,
    pub generators: Vec<String>,
    #[serde(serialize_with = "dimension_string")]
    pub dimension: i64,
    #[serde(serialize_with = "as_string")]
    pub degree: u128,
    pub is_complete_intersection: bool,
    pub solutions: Vec<SerializedPoint>,
    pub singular_points: Vec<SerializedPoint>,
    pub predicted: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub attempts: Vec<Attempt>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<serde_json::Value>,
    pub notes: Vec<String>,
    pub verdict: String,
}

impl VarietyReport {
    pub fn new(pipeline: &str, field: &Field, ambient_dimension: usize) -> VarietyReport {
        VarietyReport {
            pipeline: pipeline.into(),
            parameters: BTreeMap::new(),
            field: field.label(),
            ambient_dimension,
            generators: Vec::new(),
            dimension: -1,
            degree: 0,
            is_complete_intersection: false,
            solutions: Vec::new(),
            singular_points: Vec::new(),
            predicted: BTreeMap::new(),
            checks: Vec::new(),
            attempts: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
            verdict: String::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Display) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn predict(&mut self, key: &str, value: impl Display) {
        self.predicted.insert(key.into(), value.to_string());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// No check is a mismatch.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Mismatch)
    }

    pub fn flagged(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Flagged)
    }

    pub fn mismatches(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Mismatch).collect()
    }

    /// Records the verdict from the checks.
    pub fn finish(&mut self) {
        self.verdict = if self.passed() { "pass" } else { "fail" }.into();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_strings() {
        let f = Field::prime(7).unwrap();
        let mut r = VarietyReport::new("test", &f, 2);
        r.degree = 4;
        r.dimension = 0;
        r.check(Check::compare("degree", 4, 4));
        r.solutions
            .push(SerializedPoint::new(&f, 1, &ProjectivePoint::from_u64(&f, &[1, 2, 3]).unwrap()));
        r.finish();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["degree"], "4");
        assert_eq!(v["dimension"], "0");
        assert_eq!(v["ambient_dimension"], "2");
        assert_eq!(v["solutions"][0]["coords"][2], "3");
        assert_eq!(v["checks"][0]["status"], "match");
        assert_eq!(v["verdict"], "pass");
        r.dimension = -1;
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["dimension"], "empty");
    }

    #[test]
    fn verdicts() {
        let f = Field::prime(7).unwrap();
        let mut r = VarietyReport::new("test", &f, 2);
        r.check(Check::flagged("count", 6, 4, "points in higher extension"));
        assert!(r.passed() && r.flagged());
        r.check(Check::compare("dim", 0, 1));
        assert!(!r.passed());
        assert_eq!(r.mismatches().len(), 1);
    }
}
