use serde::Serialize;
use serde_json::Value;

/// The single JSON document every subcommand except `solve` prints.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Value>,
    pub pass: bool,
    /// Set when the prime lies outside the range the checked statements cover.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<&'static str>,
    pub checks: Vec<Check>,
    pub details: Value,
    /// Only present with `--timing`, so that default output stays reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

impl Verdict {
    pub fn new(command: &'static str, checks: Vec<Check>, details: Value) -> Self {
        Self {
            command,
            p: None,
            grid: None,
            pass: checks.iter().all(|c| c.pass),
            scope: None,
            checks,
            details,
            elapsed_ms: None,
        }
    }

    pub fn with_prime(mut self, p: u32) -> Self {
        self.p = Some(p);
        self
    }
}

pub fn check(name: &'static str, pass: bool) -> Check {
    Check { name, pass }
}
