use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Coordinate chart: independent variables, dependent variables with their
/// argument lists, and at most one ancillary variable for linear extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    independents: Vec<String>,
    dependents: Vec<(String, Vec<String>)>,
    ancillary: Option<String>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Chart {
    pub fn new(
        independents: &[&str],
        dependents: &[(&str, &[&str])],
        ancillary: Option<&str>,
    ) -> Result<Chart> {
        let mut seen = BTreeSet::new();
        let mut check = |name: &str| -> Result<()> {
            if !valid_name(name) {
                return Err(Error::Chart(format!(
                    "invalid coordinate name '{name}': names are alphanumeric, start with a letter, and contain no underscore"
                )));
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::Chart(format!("duplicate coordinate name '{name}'")));
            }
            Ok(())
        };
        for v in independents {
            check(v)?;
        }
        for (d, _) in dependents {
            check(d)?;
        }
        if let Some(r) = ancillary {
            check(r)?;
        }
        if independents.is_empty() {
            return Err(Error::Chart("a chart needs at least one independent variable".into()));
        }
        for (d, args) in dependents {
            if args.is_empty() {
                return Err(Error::Chart(format!("dependent variable '{d}' has no arguments")));
            }
            let mut arg_seen = BTreeSet::new();
            for a in *args {
                if !independents.contains(a) {
                    return Err(Error::Chart(format!(
                        "dependent variable '{d}' declares argument '{a}' which is not an independent variable"
                    )));
                }
                if !arg_seen.insert(*a) {
                    return Err(Error::Chart(format!(
                        "dependent variable '{d}' repeats argument '{a}'"
                    )));
                }
            }
        }
        Ok(Chart {
            independents: independents.iter().map(|s| s.to_string()).collect(),
            dependents: dependents
                .iter()
                .map(|(d, a)| (d.to_string(), a.iter().map(|s| s.to_string()).collect()))
                .collect(),
            ancillary: ancillary.map(|s| s.to_string()),
        })
    }

    pub fn independents(&self) -> &[String] {
        &self.independents
    }

    pub fn dependents(&self) -> &[(String, Vec<String>)] {
        &self.dependents
    }

    pub fn ancillary(&self) -> Option<&str> {
        self.ancillary.as_deref()
    }

    pub fn is_independent(&self, name: &str) -> bool {
        self.independents.iter().any(|v| v == name)
    }

    pub fn is_dependent(&self, name: &str) -> bool {
        self.dependents.iter().any(|(d, _)| d == name)
    }

    pub fn dependent_args(&self, name: &str) -> Option<&[String]> {
        self.dependents
            .iter()
            .find(|(d, _)| d == name)
            .map(|(_, a)| a.as_slice())
    }

    /// Base coordinates in declaration order: independents, dependents, then
    /// the ancillary if present.
    pub fn base_names(&self) -> Vec<String> {
        let mut out = self.independents.clone();
        out.extend(self.dependents.iter().map(|(d, _)| d.clone()));
        if let Some(r) = &self.ancillary {
            out.push(r.clone());
        }
        out
    }
}
