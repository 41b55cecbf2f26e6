//! Machine-readable outcomes of identity checks.

use serde::{Deserialize, Serialize};

use crate::algebra::FormalSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub identity: String,
    pub location: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, identity: &str, location: String, expected: String, actual: String) {
        let pass = expected == actual;
        self.rows.push(CheckRow {
            identity: identity.to_string(),
            location,
            expected,
            actual,
            pass,
        });
    }

    /// Compares two series; on mismatch the location names the first differing monomial.
    pub fn compare(&mut self, identity: &str, location: String, expected: &FormalSeries, actual: &FormalSeries) {
        let mut loc = location;
        let diff = expected.try_sub(actual).map(|d| {
            d.iter()
                .next()
                .map(|(m, c)| FormalSeries::monomial(d.truncation(), *m, c.clone()).render())
        });
        match &diff {
            Ok(None) => {}
            Ok(Some(term)) => loc = format!("{loc}; first difference {term}"),
            Err(e) => loc = format!("{loc}; {e}"),
        }
        let pass = matches!(diff, Ok(None));
        self.rows.push(CheckRow {
            identity: identity.to_string(),
            location: loc,
            expected: expected.render(),
            actual: actual.render(),
            pass,
        });
    }

    pub fn fail(&mut self, identity: &str, location: String, message: String) {
        self.rows.push(CheckRow {
            identity: identity.to_string(),
            location,
            expected: String::new(),
            actual: message,
            pass: false,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}
