//! Shared report vocabulary: verdicts, evaluation modes, and the generic
//! check report all modules emit.
//!
//! A sampled pass is reported as "no counterexample found", never as a proof;
//! the mode carries the seed and sample count needed to replay the run.

use serde::Serialize;

/// Outcome of a single checked law.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Instances existed but exceeded the configured bound; counted, not
    /// silently passed.
    Untested,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Untested, _) | (_, Untested) => Untested,
            _ => Pass,
        }
    }
}

/// How a universally quantified statement was evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Mode {
    pub fn describe(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Sampled { samples, seed } => {
                format!("no counterexample found (sampled, n={samples}, seed={seed})")
            }
        }
    }
}

/// A single named law with its verdict and optional witness rendering.
#[derive(Clone, Debug, Serialize)]
pub struct LawLine {
    /// Machine-readable identifier of the property checked, e.g.
    /// "operad.compat" or "beck.mu_t".
    pub law: String,
    pub verdict: Verdict,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Generic multi-law report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub mode: Mode,
    pub lines: Vec<LawLine>,
}

impl CheckReport {
    pub fn verdict(&self) -> Verdict {
        self.lines.iter().fold(Verdict::Pass, |acc, l| acc.and(l.verdict))
    }

    /// No law failed. Untested instances (skipped for exceeding a bound) are
    /// reported but do not count as failures.
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.verdict != Verdict::Fail)
    }

    pub fn first_failure(&self) -> Option<&LawLine> {
        self.lines.iter().find(|l| l.verdict == Verdict::Fail)
    }
}
