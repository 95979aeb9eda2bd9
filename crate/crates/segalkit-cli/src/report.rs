//! Check reports: every verdict names its check, the statement tag it
//! verifies, and the tier the answer lives in.

use segalkit::Error;
use serde::Serialize;

/// The fixed registry of statement tags. Every report's tag must come from
/// this table; the test suite guards against typos.
pub const ANCHORS: &[(&str, &str)] = &[
    ("kan-fib", "D:kanms(a)"),
    ("trivial-fib", "T:Kan"),
    ("reedy-fib", "D:rfib/E:rfib(a)"),
    ("left-fib", "E:left(a)/L:leftcart(c)"),
    ("segal", "E:Segal(b)"),
    ("complete", "E:css(c)/L:css(b)"),
    ("ho-cat", "E:ho(b)"),
    ("heq", "L:css(a)"),
    ("yoneda-eval", "P:triv"),
    ("yoneda-ff", "T:yoneda(b)/L:morp"),
    ("cyl-fiber", "E:itercyl/L:disc"),
    ("prism", "L:leftcart/L:undcat"),
    ("skeleton-pushout", "E:skel2(b)"),
    ("homology", "D:kanms(b)"),
    ("we-necessary", "D:kanms(b)"),
    ("pi0", "E:pi0"),
    ("ordinal", "E:indcat/E:opp/E:catmor"),
    ("hom-count", "E:stsym(b)"),
    ("retract", "L:leftcart"),
    ("determinism", "artifact"),
];

pub fn anchor_for(check: &str) -> Result<&'static str, Error> {
    ANCHORS
        .iter()
        .find(|(k, _)| *k == check)
        .map(|&(_, a)| a)
        .ok_or_else(|| Error::Invalid(format!("check {check} has no registered tag")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One check outcome. Wall time is reported in the text rendering only, so
/// JSON reports are byte-stable across runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub anchor: String,
    pub tier: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl Report {
    pub fn new(check: &str, tier: String, verdict: Verdict) -> Result<Report, Error> {
        Ok(Report {
            check: check.to_string(),
            anchor: anchor_for(check)?.to_string(),
            tier,
            verdict,
            certificate: None,
            wall_ms: 0,
        })
    }

    pub fn with_certificate(mut self, c: serde_json::Value) -> Report {
        self.certificate = Some(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn render_text(&self) -> String {
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        let mut line = format!(
            "[{v}] {} ({}) tier={} wall={}ms",
            self.check, self.anchor, self.tier, self.wall_ms
        );
        if let Some(c) = &self.certificate {
            line.push_str(&format!("\n      certificate: {c}"));
        }
        line
    }
}

/// Machine summary of a suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub reports: Vec<Report>,
    pub all_passed: bool,
}

pub fn to_json_bytes(r: &SuiteReport) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(r).expect("report serialization");
    s.push('\n');
    s.into_bytes()
}
