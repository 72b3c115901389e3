use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use ein_core::rng::SplitMix64;
use ein_core::Signature;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::suites::{self, Ctx, Outcome};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Forms,
    Liealg,
    Nilpotency,
    Model,
    Holonomy,
    Centralizer,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Forms, Suite::Liealg, Suite::Nilpotency, Suite::Model, Suite::Holonomy, Suite::Centralizer];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Forms => "forms",
            Suite::Liealg => "liealg",
            Suite::Nilpotency => "nilpotency",
            Suite::Model => "model",
            Suite::Holonomy => "holonomy",
            Suite::Centralizer => "centralizer",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| CliError::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub signatures: Vec<Signature>,
    pub trials: usize,
    pub seed: u64,
    pub suites: BTreeSet<Suite>,
    /// Time allowed for each random witness search.
    pub witness_budget: Duration,
    /// Record per-check wall-clock durations (makes the report non-reproducible).
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            signatures: [(1, 2), (1, 3), (2, 2)].iter().map(|&(p, q)| Signature::new(p, q).expect("valid")).collect(),
            trials: 100,
            seed: 42,
            suites: Suite::ALL.into_iter().collect(),
            witness_budget: Duration::from_secs(1),
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Input("trials must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(CliError::Input("no suite selected".into()));
        }
        if self.signatures.is_empty() {
            return Err(CliError::Input("no signature given".into()));
        }
        Ok(())
    }
}

/// Parses `"1,2;1,3"` or `"(1,2),(1,3)"`.
pub fn parse_signatures(s: &str) -> Result<Vec<Signature>, CliError> {
    let nums: Vec<&str> = s
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .collect();
    if nums.is_empty() || nums.len() % 2 != 0 {
        return Err(CliError::Input(format!("bad signature list {s:?}")));
    }
    nums.chunks(2)
        .map(|c| {
            let p = c[0].parse().map_err(|_| CliError::Input(format!("bad integer {:?}", c[0])))?;
            let q = c[1].parse().map_err(|_| CliError::Input(format!("bad integer {:?}", c[1])))?;
            Signature::new(p, q).map_err(|e| CliError::Input(e.to_string()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub suite: Suite,
    pub signature: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
    #[serde(skip)]
    key: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub seed: u64,
    pub trials: usize,
    pub signatures: Vec<String>,
    pub suites: Vec<Suite>,
    pub summary: Summary,
    pub checks: Vec<Record>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn find(&self, name: &str, p: usize, q: usize) -> Option<&Record> {
        self.checks.iter().find(|r| r.name == name && r.key == (p, q))
    }
}

fn sig_label(s: Signature) -> String {
    format!("({},{})", s.p(), s.q())
}

/// Runs every registered check on every signature. Checks from unselected
/// suites are listed as skipped; the record order is by name, then signature.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let jobs: Vec<(&suites::Check, Signature)> = suites::registry()
        .iter()
        .flat_map(|c| cfg.signatures.iter().map(move |&s| (c, s)))
        .collect();
    let mut checks: Vec<Record> = jobs
        .par_iter()
        .map(|&(check, sig)| {
            let key = (sig.p(), sig.q());
            let mk = |status, witness, duration_ms| Record {
                name: check.name.to_string(),
                suite: check.suite,
                signature: sig_label(sig),
                status,
                witness,
                duration_ms,
                key,
            };
            if !cfg.suites.contains(&check.suite) {
                return mk(Status::Skip, Some(Value::String("suite not selected".into())), None);
            }
            let mut ctx = Ctx {
                sig,
                trials: cfg.trials,
                rng: SplitMix64::derive(cfg.seed, &format!("{}/{}", check.name, sig_label(sig))),
                witness_budget: cfg.witness_budget,
                timings: cfg.timings,
            };
            let start = Instant::now();
            let outcome = (check.run)(&mut ctx);
            let dur = cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
            match outcome {
                Ok(Outcome::Pass(w)) => mk(Status::Pass, w, dur),
                Ok(Outcome::Fail(w)) => mk(Status::Fail, Some(w), dur),
                Ok(Outcome::Skip(w)) => mk(Status::Skip, Some(w), dur),
                Err(e) => mk(Status::Fail, Some(serde_json::json!({ "error": e.to_string() })), dur),
            }
        })
        .collect();
    checks.sort_by(|a, b| (a.name.as_str(), a.key).cmp(&(b.name.as_str(), b.key)));
    let count = |s: Status| checks.iter().filter(|r| r.status == s).count();
    let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), skip: count(Status::Skip) };
    Ok(Report {
        report_version: 1,
        seed: cfg.seed,
        trials: cfg.trials,
        signatures: cfg.signatures.iter().map(|&s| sig_label(s)).collect(),
        suites: cfg.suites.iter().copied().collect(),
        summary,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_lists() {
        let v = parse_signatures("(1,2),(2,3)").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].q(), 3);
        assert_eq!(parse_signatures("1,3;2,2").unwrap().len(), 2);
        assert!(parse_signatures("1,2,3").is_err());
        assert!(parse_signatures("3,1").is_err());
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!("holonomy".parse::<Suite>().unwrap(), Suite::Holonomy);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig { trials: 0, ..SuiteConfig::default() };
        assert!(run_suite(&cfg).is_err());
        cfg.trials = 1;
        cfg.suites.clear();
        assert!(run_suite(&cfg).is_err());
    }
}
