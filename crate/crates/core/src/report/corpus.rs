use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exit, AnalysisReport, AnalysisRequest, ErrorObject, ResultCache};
use crate::cycles::Singularity;
use crate::equisingularity::Verdict;
use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::poly::field::parse_rational;

/// Where an expected value comes from. Written `kind: free text`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature.
    Literature,
    /// Worked out independently of this tool.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

impl Provenance {
    fn parse(note: &str) -> Option<Self> {
        match note.split(':').next()?.trim() {
            "literature" => Some(Provenance::Literature),
            "derived" => Some(Provenance::Derived),
            "trivial" => Some(Provenance::Trivial),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub s: Option<usize>,
    pub milnor: Option<u64>,
    pub mu0_f0: Option<u64>,
    pub gamma_dot_v: Option<u64>,
    pub lambda_s: Option<u64>,
    pub gamma1: Option<u64>,
    pub lambda0: Option<u64>,
    pub tau: Option<u64>,
    pub verdict: Option<Verdict>,
    /// Transversal Milnor sums at `scan_params`.
    pub scan: Option<Vec<u64>>,
}

impl Expected {
    fn keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut add = |present: bool, key| {
            if present {
                keys.push(key)
            }
        };
        add(self.s.is_some(), "s");
        add(self.milnor.is_some(), "milnor");
        add(self.mu0_f0.is_some(), "mu0_f0");
        add(self.gamma_dot_v.is_some(), "gamma_dot_v");
        add(self.lambda_s.is_some(), "lambda_s");
        add(self.gamma1.is_some(), "gamma1");
        add(self.lambda0.is_some(), "lambda0");
        add(self.tau.is_some(), "tau");
        add(self.verdict.is_some(), "verdict");
        add(self.scan.is_some(), "scan");
        keys
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub poly: String,
    pub vars: Option<Vec<String>>,
    pub frame: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub expected: Expected,
    /// Expected key to `kind: note`.
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
    pub scan_frame: Option<String>,
    #[serde(default)]
    pub scan_params: Vec<String>,
}

impl CorpusEntry {
    pub fn request(&self, seed: u64) -> AnalysisRequest {
        AnalysisRequest {
            vars: self.vars.clone(),
            frame: self.frame.clone(),
            seed: self.seed.unwrap_or(seed),
            ..AnalysisRequest::new(self.poly.clone())
        }
    }

    fn validate(&self) -> Result<()> {
        for key in self.expected.keys() {
            let note = self
                .provenance
                .get(key)
                .ok_or_else(|| Error::InvalidInput(format!("entry {}: expected {key} has no provenance", self.id)))?;
            if Provenance::parse(note).is_none() {
                return Err(Error::InvalidInput(format!(
                    "entry {}: provenance of {key} must start with literature, derived or trivial",
                    self.id
                )));
            }
        }
        if let Some(unknown) = self.provenance.keys().find(|k| !self.expected.keys().contains(&k.as_str())) {
            return Err(Error::InvalidInput(format!("entry {}: provenance for unset key {unknown}", self.id)));
        }
        if self.expected.scan.as_ref().map_or(0, Vec::len) != self.scan_params.len() {
            return Err(Error::InvalidInput(format!("entry {}: scan values and scan_params differ in length", self.id)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub seed: u64,
    #[serde(default, rename = "entry")]
    pub entries: Vec<CorpusEntry>,
}

pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let corpus: Corpus = toml::from_str(text).map_err(|e| Error::InvalidInput(format!("corpus: {e}")))?;
    let mut ids = std::collections::HashSet::new();
    for entry in &corpus.entries {
        if !ids.insert(entry.id.as_str()) {
            return Err(Error::InvalidInput(format!("duplicate corpus id {}", entry.id)));
        }
        entry.validate()?;
    }
    Ok(corpus)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Pass,
    Mismatch,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusOutcome {
    pub id: String,
    pub status: EntryStatus,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<ErrorObject>,
    pub cached: bool,
    #[serde(skip)]
    pub report: Option<AnalysisReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub mismatched: usize,
    pub errors: usize,
    pub outcomes: Vec<CorpusOutcome>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.passed == self.total {
            exit::OK
        } else {
            exit::FAILURE
        }
    }
}

fn compare<T: ToString + PartialEq>(out: &mut Vec<Mismatch>, key: &str, expected: &Option<T>, actual: Option<T>) {
    if let Some(e) = expected {
        if actual.as_ref() != Some(e) {
            out.push(Mismatch {
                key: key.into(),
                expected: e.to_string(),
                actual: actual.map_or_else(|| "absent".into(), |a| a.to_string()),
            });
        }
    }
}

fn scan(entry: &CorpusEntry, request: &AnalysisRequest) -> Result<Vec<u64>> {
    let (f, _) = request.resolve()?;
    let engine = request.engine();
    let frame = match &entry.scan_frame {
        Some(text) => CoordinateFrame::parse(text)?,
        None => CoordinateFrame::identity(f.ring().nvars()),
    };
    let params = entry
        .scan_params
        .iter()
        .map(|p| parse_rational(p).ok_or_else(|| Error::InvalidInput(format!("bad scan parameter {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let sing = Singularity::new(&engine, &f)?;
    Ok(sing.mu_constancy_scan(&engine, &frame, &params)?.into_iter().map(|(_, mu)| mu).collect())
}

fn run_entry(entry: &CorpusEntry, seed: u64, cache: Option<&ResultCache>) -> CorpusOutcome {
    let request = entry.request(seed);
    let mut outcome = CorpusOutcome {
        id: entry.id.clone(),
        status: EntryStatus::Pass,
        mismatches: Vec::new(),
        error: None,
        cached: false,
        report: None,
    };
    let result = match cache {
        Some(cache) => cache.analyze(&request),
        None => super::analyze(&request).map(|r| (r, false)),
    };
    let report = match result {
        Ok((report, cached)) => {
            outcome.cached = cached;
            report
        }
        Err(e) => {
            outcome.status = EntryStatus::Error;
            outcome.error = Some((&e).into());
            return outcome;
        }
    };
    let exp = &entry.expected;
    let inv = report.invariants.as_ref();
    let m = &mut outcome.mismatches;
    compare(m, "s", &exp.s, report.s);
    compare(m, "milnor", &exp.milnor, report.milnor_number);
    compare(m, "mu0_f0", &exp.mu0_f0, inv.map(|i| i.mu0_f0));
    compare(m, "gamma_dot_v", &exp.gamma_dot_v, inv.map(|i| i.gamma_dot_v));
    compare(m, "lambda_s", &exp.lambda_s, report.lambda_s_generic);
    compare(m, "gamma1", &exp.gamma1, inv.and_then(|i| i.gamma1));
    compare(m, "lambda0", &exp.lambda0, inv.and_then(|i| i.lambda0));
    compare(m, "tau", &exp.tau, inv.and_then(|i| i.tau));
    compare(m, "verdict", &exp.verdict.map(Verdict::as_str), Some(report.verdict.as_str()));
    if let Some(values) = &exp.scan {
        match scan(entry, &request) {
            Ok(actual) => compare(m, "scan", &Some(format!("{values:?}")), Some(format!("{actual:?}"))),
            Err(e) => {
                outcome.status = EntryStatus::Error;
                outcome.error = Some((&e).into());
            }
        }
    }
    if outcome.status == EntryStatus::Pass && !outcome.mismatches.is_empty() {
        outcome.status = EntryStatus::Mismatch;
    }
    outcome.report = Some(report);
    outcome
}

/// Runs every entry on at most `jobs` threads; outcomes keep corpus order.
pub fn run_corpus(corpus: &Corpus, cache: Option<&ResultCache>, jobs: usize) -> Result<CorpusSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let outcomes: Vec<CorpusOutcome> =
        pool.install(|| corpus.entries.par_iter().map(|e| run_entry(e, corpus.seed, cache)).collect());
    let count = |s| outcomes.iter().filter(|o| o.status == s).count();
    Ok(CorpusSummary {
        total: outcomes.len(),
        passed: count(EntryStatus::Pass),
        mismatched: count(EntryStatus::Mismatch),
        errors: count(EntryStatus::Error),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
seed = 4

[[entry]]
id = "cusp-family"
poly = "x^3 + y^2"
vars = ["t", "x", "y"]
expected = { s = 1, lambda_s = 2, verdict = "MILNOR_EQUISINGULAR", scan = [2, 2] }
provenance = { s = "trivial: the t-axis", lambda_s = "derived: cusp", verdict = "derived: product family", scan = "derived: cusp" }
scan_params = ["1/4", "1/2"]

[[entry]]
id = "a1"
poly = "x^2 + y^2"
expected = { milnor = 1 }
provenance = { milnor = "trivial: A1" }
"#;

    #[test]
    fn small_corpus_passes() {
        let corpus = parse_corpus(SMALL).unwrap();
        let summary = run_corpus(&corpus, None, 2).unwrap();
        assert_eq!((summary.total, summary.passed), (2, 2), "{:?}", summary.outcomes);
        assert_eq!(summary.exit_code(), exit::OK);
        assert_eq!(summary.outcomes[0].id, "cusp-family");
    }

    #[test]
    fn wrong_values_are_named() {
        let corpus = parse_corpus(&SMALL.replace("lambda_s = 2", "lambda_s = 3")).unwrap();
        let summary = run_corpus(&corpus, None, 1).unwrap();
        assert_eq!(summary.exit_code(), exit::FAILURE);
        let m = &summary.outcomes[0].mismatches;
        assert_eq!(m, &vec![Mismatch { key: "lambda_s".into(), expected: "3".into(), actual: "2".into() }]);
    }

    #[test]
    fn empty_corpus() {
        let summary = run_corpus(&parse_corpus("seed = 0").unwrap(), None, 1).unwrap();
        assert_eq!((summary.total, summary.exit_code()), (0, exit::OK));
    }

    #[test]
    fn provenance_is_required() {
        assert!(parse_corpus(&SMALL.replace("milnor = \"trivial: A1\"", "")).is_err());
        assert!(parse_corpus(&SMALL.replace("trivial: A1", "folklore: A1")).is_err());
        assert!(parse_corpus("[[entry]]\nid = \"a\"\npoly = \"x^2\"").is_err());
        assert!(parse_corpus(&format!("{SMALL}\n[[entry]]\nid = \"a1\"\npoly = \"x^2\"")).is_err());
    }

    #[test]
    fn entry_errors_do_not_stop_the_run() {
        let text = "seed = 1\n[[entry]]\nid = \"bad\"\npoly = \"x^2 +\"\n[[entry]]\nid = \"ok\"\npoly = \"x^2\"";
        let summary = run_corpus(&parse_corpus(text).unwrap(), None, 1).unwrap();
        assert_eq!(summary.outcomes[0].status, EntryStatus::Error);
        assert_eq!(summary.outcomes[0].error.as_ref().unwrap().code, "PARSE_ERROR");
        assert_eq!(summary.outcomes[1].status, EntryStatus::Pass);
    }
}
