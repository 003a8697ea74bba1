//! The full analysis pipeline, its versioned JSON report, a content-addressed
//! result cache and the regression corpus runner.

mod cache;
mod corpus;

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use cache::{cache_key, ResultCache, CACHE_FORMAT};
pub use corpus::{
    load_corpus, parse_corpus, run_corpus, Corpus, CorpusEntry, CorpusOutcome, CorpusSummary, EntryStatus, Expected,
    Mismatch, Provenance,
};

use crate::cycles::{milnor_number, InvariantRecord, Singularity};
use crate::equisingularity::{
    check_with_frame, milnor_equisingular_check, report_for, BettiStatement, FrameEvidence, GenericityConfig, Verdict,
};
use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::ideal::{Engine, Limits};
use crate::poly::{parse_with_vars, Polynomial};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes shared by the command line and the corpus runner.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INDETERMINATE: i32 = 2;
    pub const USAGE: i32 = 3;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRequest {
    pub polynomial: String,
    pub vars: Option<Vec<String>>,
    /// Rows separated by `;`, entries by `,`.
    pub frame: Option<String>,
    pub seed: u64,
    pub max_steps: u64,
    pub max_frames: usize,
    pub retry_budget: usize,
    pub timings: bool,
}

impl AnalysisRequest {
    pub fn new(polynomial: impl Into<String>) -> Self {
        let limits = Limits::default();
        let sampling = GenericityConfig::default();
        AnalysisRequest {
            polynomial: polynomial.into(),
            vars: None,
            frame: None,
            seed: sampling.seed,
            max_steps: limits.max_steps,
            max_frames: sampling.max_frames,
            retry_budget: sampling.retry_budget,
            timings: false,
        }
    }

    pub fn with_vars(mut self, vars: &[&str]) -> Self {
        self.vars = Some(vars.iter().map(|v| v.to_string()).collect());
        self
    }

    pub fn with_frame(mut self, frame: impl Into<String>) -> Self {
        self.frame = Some(frame.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn engine(&self) -> Engine {
        Engine::new(Limits { max_steps: self.max_steps, ..Limits::default() })
    }

    pub fn sampling(&self) -> GenericityConfig {
        GenericityConfig {
            seed: self.seed,
            max_frames: self.max_frames,
            retry_budget: self.retry_budget,
            ..GenericityConfig::default()
        }
    }

    /// The polynomial and optional frame, validated.
    pub fn resolve(&self) -> Result<(Polynomial, Option<CoordinateFrame>)> {
        let f = parse_with_vars(&self.polynomial, self.vars.as_deref())?;
        let frame = self.frame.as_deref().map(CoordinateFrame::parse).transpose()?;
        if let Some(frame) = &frame {
            if frame.dim() != f.ring().nvars() {
                return Err(Error::InvalidInput(format!(
                    "frame has dimension {} but the ring has {} variables",
                    frame.dim(),
                    f.ring().nvars()
                )));
            }
        }
        Ok((f, frame))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    /// Canonical form of the polynomial.
    pub polynomial: String,
    pub vars: Vec<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub mu0_f0: u64,
    pub gamma_dot_v: u64,
    pub lambda_s: u64,
    pub gamma_is_zero: bool,
    pub gamma1: Option<u64>,
    pub lambda0: Option<u64>,
    pub tau: Option<u64>,
}

impl From<&InvariantRecord> for Invariants {
    fn from(r: &InvariantRecord) -> Self {
        Invariants {
            mu0_f0: r.mu0_f0,
            gamma_dot_v: r.gamma_s_dot_v,
            lambda_s: r.lambda_s,
            gamma_is_zero: r.gamma_is_zero,
            gamma1: r.curve.map(|c| c.gamma1),
            lambda0: r.curve.map(|c| c.lambda0),
            tau: r.curve.map(|c| c.tau),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    #[serde(flatten)]
    pub claim: BettiStatement,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: Input,
    pub s: Option<usize>,
    pub milnor_number: Option<u64>,
    pub frame_used: Option<Vec<Vec<String>>>,
    pub invariants: Option<Invariants>,
    pub verdict: Verdict,
    pub lambda_s_generic: Option<u64>,
    pub betti_statements: Vec<Statement>,
    pub feasible_range: Option<(u64, u64)>,
    pub notes: Vec<String>,
    pub sampled_frames: usize,
    pub evidence: Vec<FrameEvidence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if self.verdict == Verdict::Indeterminate {
            exit::INDETERMINATE
        } else {
            exit::OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f = {}  in ({})", self.input.polynomial, self.input.vars.join(", "));
        match self.s {
            Some(s) => {
                let _ = writeln!(out, "s = dim Σf = {s}");
            }
            None => {
                let _ = writeln!(out, "the origin is a smooth point");
            }
        }
        if let Some(mu) = self.milnor_number {
            let _ = writeln!(out, "Milnor number = {mu}");
        }
        if let Some(frame) = &self.frame_used {
            let rows: Vec<String> = frame.iter().map(|r| r.join(",")).collect();
            let _ = writeln!(out, "frame = {}", rows.join(";"));
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(
                out,
                "mu0(f0) = {}, (Gamma.V) = {}, lambda^s = {}, Gamma = 0: {}",
                inv.mu0_f0, inv.gamma_dot_v, inv.lambda_s, inv.gamma_is_zero
            );
            if let (Some(g), Some(l), Some(t)) = (inv.gamma1, inv.lambda0, inv.tau) {
                let _ = writeln!(out, "gamma^1 = {g}, lambda^0 = {l}, tau = {t}");
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        for st in &self.betti_statements {
            let _ = writeln!(out, "  {}", st.text);
        }
        if let Some((lo, hi)) = self.feasible_range {
            let _ = writeln!(out, "  feasible b~_n-1: [{lo}, {hi}]");
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

/// Machine-readable error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub code: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorObject {
    fn from(e: &Error) -> Self {
        ErrorObject { code: e.code().to_string(), message: e.to_string(), exit_code: exit_code(e) }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownVariable { .. } | Error::InvalidInput(_) | Error::SingularFrame => {
            exit::USAGE
        }
        Error::ResourceLimit(_) | Error::GenericityFailure(_) => exit::INDETERMINATE,
        _ => exit::FAILURE,
    }
}

pub fn analyze(request: &AnalysisRequest) -> Result<AnalysisReport> {
    let start = Instant::now();
    let (f, frame) = request.resolve()?;
    let engine = request.engine();
    let mut report = analyze_polynomial(&engine, &f, frame.as_ref(), &request.sampling())?;
    if request.timings {
        report.timings = Some(Timings { total_ms: start.elapsed().as_millis() as u64 });
    }
    Ok(report)
}

pub fn analyze_polynomial(
    engine: &Engine,
    f: &Polynomial,
    frame: Option<&CoordinateFrame>,
    sampling: &GenericityConfig,
) -> Result<AnalysisReport> {
    let verdict = match frame {
        Some(frame) => check_with_frame(engine, f, frame, sampling)?,
        None => milnor_equisingular_check(engine, f, sampling)?,
    };
    let mut report = AnalysisReport {
        schema: SCHEMA_VERSION,
        input: Input { polynomial: f.to_string(), vars: f.ring().names().to_vec(), seed: sampling.seed },
        s: verdict.s,
        milnor_number: None,
        frame_used: None,
        invariants: None,
        verdict: verdict.verdict,
        lambda_s_generic: verdict.lambda_generic,
        betti_statements: Vec::new(),
        feasible_range: None,
        notes: verdict.note.iter().cloned().collect(),
        sampled_frames: verdict.sampled_frames,
        evidence: verdict.evidence.clone(),
        timings: None,
    };
    if verdict.verdict == Verdict::IsolatedSingularity {
        report.milnor_number = Some(milnor_number(engine, f)?);
    }
    match (frame, &verdict.decisive) {
        (Some(frame), _) if verdict.s.is_some_and(|s| s > 0) => {
            let record = Singularity::new(engine, f)?.invariant_record(engine, frame)?;
            report.frame_used = Some(frame.matrix_strings());
            report.invariants = Some((&record).into());
        }
        (_, Some((frame, record))) => {
            report.frame_used = Some(frame.matrix_strings());
            report.invariants = Some(record.into());
        }
        _ => {}
    }
    let betti = report_for(engine, f, &verdict, sampling.seed)?;
    report.lambda_s_generic = betti.lambda_s_generic;
    report.betti_statements =
        betti.statements.into_iter().map(|claim| Statement { text: claim.to_string(), claim }).collect();
    report.feasible_range = betti.feasible_range;
    report.notes.extend(betti.notes);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_is_isolated() {
        let r = analyze(&AnalysisRequest::new("x^2 + y^2 + w^2").with_vars(&["x", "y", "w"])).unwrap();
        assert_eq!((r.s, r.milnor_number, r.verdict), (Some(0), Some(1), Verdict::IsolatedSingularity));
        assert_eq!(r.betti_statements[0].claim, BettiStatement::IsolatedMilnor { n: 2, mu: 1 });
        assert_eq!(r.exit_code(), exit::OK);
    }

    #[test]
    fn crossing_lines_report() {
        let r = analyze(&AnalysisRequest::new("x^2*y^2 + w^2").with_vars(&["x", "y", "w"]).with_seed(5)).unwrap();
        assert_eq!(r.s, Some(1));
        assert_eq!(r.lambda_s_generic, Some(2));
        assert_eq!(r.verdict, Verdict::NotEquisingular);
        assert!(r.betti_statements.iter().any(|s| s.claim == BettiStatement::Strict { degree: 1, bound: 2 }));
        assert!(r.to_text().contains("NOT_EQUISINGULAR"));
    }

    #[test]
    fn explicit_frame_is_reported() {
        let req = AnalysisRequest::new("x^3 + y^2").with_vars(&["t", "x", "y"]).with_frame("1,0,0;0,1,0;0,0,1");
        let r = analyze(&req).unwrap();
        assert_eq!(r.verdict, Verdict::MilnorEquisingular);
        assert_eq!(r.frame_used.unwrap()[0], vec!["1", "0", "0"]);
        assert!(r.betti_statements.iter().any(|s| s.text == "EQUALITY: b~_1 = 2"));
    }

    #[test]
    fn reports_are_deterministic() {
        let req = AnalysisRequest::new("(y^2 - x^3)^2 + w^2").with_vars(&["x", "y", "w"]).with_seed(11);
        assert_eq!(analyze(&req).unwrap().to_json(), analyze(&req).unwrap().to_json());
        assert!(!analyze(&req).unwrap().to_json().contains("timings"));
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let e = analyze(&AnalysisRequest::new("x^2 +")).unwrap_err();
        assert_eq!(ErrorObject::from(&e).exit_code, exit::USAGE);
        let e = analyze(&AnalysisRequest::new("x^2*y^2").with_frame("1,1;1,1")).unwrap_err();
        assert_eq!(exit_code(&e), exit::USAGE);
        assert_eq!(exit_code(&Error::ResourceLimit("steps".into())), exit::INDETERMINATE);
        assert_eq!(exit_code(&Error::NonIsolated), exit::FAILURE);
    }
}
