use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bumped whenever a field is added, removed or changes meaning.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub context: String,
    pub status: Status,
    /// Claims whose proof is deferred; reported, fatal only under `--strict-experimental`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub experimental: bool,
    /// Convention scans and known deviations; reported, never fatal.
    #[serde(default, skip_serializing_if = "is_false")]
    pub informational: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub conventions: BTreeMap<String, String>,
    pub stats: BTreeMap<String, u64>,
    pub checks: Vec<CheckResult>,
}

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    CheckFailed,
    BudgetExhausted,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::CheckFailed => 1,
            Outcome::BudgetExhausted => 3,
        }
    }
}

fn is_budget(e: &Error) -> bool {
    matches!(e, Error::SearchTooLarge { .. } | Error::DimsCapExceeded { .. })
}

/// Anything a check can produce: a residual that must vanish, or a bare verdict.
pub trait Verdict {
    fn passes(&self) -> bool;
    fn render(&self) -> String;
}

impl Verdict for bool {
    fn passes(&self) -> bool {
        *self
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Verdict for crate::ihall::IHallElem {
    fn passes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Verdict for crate::wpl::TorsionElem {
    fn passes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Verdict for crate::iqg::Residual {
    fn passes(&self) -> bool {
        self.pass()
    }
    fn render(&self) -> String {
        self.value.to_string()
    }
}

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            schema: REPORT_SCHEMA,
            suite: suite.into(),
            params: BTreeMap::new(),
            conventions: BTreeMap::new(),
            stats: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.into(), v.to_string());
    }

    pub fn convention(&mut self, k: &str, v: impl ToString) {
        self.conventions.insert(k.into(), v.to_string());
    }

    pub fn stat(&mut self, k: &str, v: u64) {
        *self.stats.entry(k.into()).or_default() += v;
    }

    /// Records a check. Budget errors become `skipped-budget`; other errors
    /// are returned to the caller.
    pub fn record<V: Verdict>(&mut self, id: &str, context: &str, r: Result<V>) -> Result<&mut CheckResult> {
        let (status, residual, note) = match r {
            Ok(v) if v.passes() => (Status::Pass, None, None),
            Ok(v) => (Status::Fail, Some(v.render()), None),
            Err(e) if is_budget(&e) => (Status::SkippedBudget, None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        self.checks.push(CheckResult {
            id: id.into(),
            context: context.into(),
            status,
            experimental: false,
            informational: false,
            residual,
            note,
        });
        Ok(self.checks.last_mut().expect("just pushed"))
    }

    /// Appends the checks, stats and conventions of `o`, which must be the same suite.
    pub fn merge(&mut self, o: SuiteReport) {
        self.checks.extend(o.checks);
        for (k, v) in o.stats {
            self.stat(&k, v);
        }
        self.conventions.extend(o.conventions);
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// Whether the check counts towards the exit status.
    fn fatal(c: &CheckResult, strict_experimental: bool) -> bool {
        !c.informational && (!c.experimental || strict_experimental)
    }

    pub fn outcome(&self, strict_experimental: bool) -> Outcome {
        let live = || self.checks.iter().filter(|c| Self::fatal(c, strict_experimental));
        if live().any(|c| c.status == Status::Fail) {
            Outcome::CheckFailed
        } else if live().any(|c| c.status == Status::SkippedBudget) {
            Outcome::BudgetExhausted
        } else {
            Outcome::Ok
        }
    }

    pub fn first_failure(&self, strict_experimental: bool) -> Option<&CheckResult> {
        self.checks.iter().find(|c| Self::fatal(c, strict_experimental) && c.status != Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<SuiteReport> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("report json: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "suite {} ({})", self.suite, params.join(" "));
        for c in &self.checks {
            let mut tags = String::new();
            if c.experimental {
                tags.push_str(" [experimental]");
            }
            if c.informational {
                tags.push_str(" [informational]");
            }
            let _ = writeln!(s, "  {:<14} {} {}{tags}", c.status.name(), c.id, c.context);
            if let Some(n) = &c.note {
                let _ = writeln!(s, "      note: {n}");
            }
            if let Some(r) = &c.residual {
                let _ = writeln!(s, "      residual: {r}");
            }
        }
        for (k, v) in &self.conventions {
            let _ = writeln!(s, "  convention {k} = {v}");
        }
        for (k, v) in &self.stats {
            let _ = writeln!(s, "  stat {k} = {v}");
        }
        let _ = writeln!(
            s,
            "  {} pass, {} fail, {} skipped-budget",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedBudget)
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_ignores_informational_and_experimental() {
        let mut r = SuiteReport::new("t");
        r.record("a", "", Ok(true)).unwrap();
        r.record("b", "", Ok(false)).unwrap().informational = true;
        assert_eq!(r.outcome(false), Outcome::Ok);
        r.record("c", "", Ok(false)).unwrap().experimental = true;
        assert_eq!(r.outcome(false), Outcome::Ok);
        assert_eq!(r.outcome(true), Outcome::CheckFailed);
        r.record::<bool>("d", "", Err(Error::SearchTooLarge { size: 10, budget: 1 })).unwrap();
        assert_eq!(r.outcome(false), Outcome::BudgetExhausted);
        assert!(r.record::<bool>("e", "", Err(Error::Parse("x".into()))).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut r = SuiteReport::new("t");
        r.param("q", 2);
        r.convention("k-norm-winner", "plain");
        r.record("a", "x=1", Ok(false)).unwrap();
        let back = SuiteReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.checks[0].residual.as_deref(), Some("false"));
    }
}
