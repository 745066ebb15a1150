//! Structured verdicts. A [`Report`] is a list of named [`Check`]s; a check
//! keeps at most [`MAX_WITNESSES`] violations, each with the basis indices at
//! which it occurred and the exact nonzero residual.

use serde::Serialize;

use crate::exec;
use crate::scalar::Scalar;

pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub at: Vec<String>,
    /// Nonzero residual entries as `(coefficient, basis label)`.
    pub residual: Vec<(String, String)>,
}

impl Witness {
    pub fn new(identity: &str, at: Vec<String>, residual: Vec<(String, String)>) -> Witness {
        Witness { identity: identity.to_string(), at, residual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub evaluated: usize,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn verdict(name: &str, passed: bool, note: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            evaluated: 1,
            violations: usize::from(!passed),
            witnesses: Vec::new(),
            note,
        }
    }

    /// Evaluate `probe` on every item (in parallel when enabled); each probe
    /// returns the witnesses it found. Witnesses keep item order.
    pub fn scan<I, F>(name: &str, items: &[I], probe: F) -> Check
    where
        I: Sync,
        F: Fn(&I) -> Vec<Witness> + Sync + Send,
    {
        let found = exec::map_slice(items, probe);
        let violations: usize = found.iter().map(Vec::len).sum();
        let witnesses = found.into_iter().flatten().take(MAX_WITNESSES).collect();
        Check {
            name: name.to_string(),
            passed: violations == 0,
            evaluated: items.len(),
            violations,
            witnesses,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Append another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Human-readable summary, one line per check plus its witnesses.
    pub fn render(&self) -> String {
        let mut s = format!("{}: {}\n", self.title, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} ({} evaluated, {} violations)",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.evaluated,
                c.violations
            ));
            if let Some(n) = &c.note {
                s.push_str(&format!(" - {n}"));
            }
            s.push('\n');
            for w in &c.witnesses {
                let res: Vec<String> = w.residual.iter().map(|(k, l)| format!("{k} {l}")).collect();
                s.push_str(&format!("      {} at ({}): {}\n", w.identity, w.at.join(", "), res.join(" + ")));
            }
        }
        s
    }
}

/// Nonzero entries of a flat residual with the given labeler.
pub fn residual_entries(values: &[Scalar], label: impl Fn(usize) -> String) -> Vec<(String, String)> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (v.to_string(), label(i)))
        .collect()
}
