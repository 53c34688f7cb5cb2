use std::fmt;

use serde::{Deserialize, Serialize};

/// One named check with the witnesses of its failure (empty on success).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witnesses: Vec::new(),
        }
    }

    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check {
            name: name.into(),
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            )?;
            for w in c.witnesses.iter().take(5) {
                writeln!(f, "         witness: {w}")?;
            }
            if c.witnesses.len() > 5 {
                writeln!(f, "         ... {} more", c.witnesses.len() - 5)?;
            }
        }
        Ok(())
    }
}
