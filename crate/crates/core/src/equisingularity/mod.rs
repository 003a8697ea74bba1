//! Prepolarity, per-frame simple μ-constant verdicts, the generic-frame
//! equisingularity decision and the Betti number statements it implies.

mod betti;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use betti::{betti_report, report_for, BettiReport, BettiStatement};

use crate::cycles::{InvariantRecord, Singularity};
use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::ideal::{Engine, LocalDimension};
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityConfig {
    pub seed: u64,
    /// Accepted frames evaluated before giving up.
    pub max_frames: usize,
    /// Rejected (non-generic) frames tolerated.
    pub retry_budget: usize,
    /// Frame entries are drawn from `[-entry_range, entry_range]`.
    pub entry_range: i64,
}

impl GenericityConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenericityConfig { seed, ..Self::default() }
    }

    /// The frame drawn for sample `index`; independent of evaluation order.
    pub fn sample_frame(&self, n: usize, index: usize) -> CoordinateFrame {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        CoordinateFrame::random(n, self.entry_range, &mut rng)
    }
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig { seed: 0, max_frames: 8, retry_budget: 5, entry_range: 100 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FrameVerdict {
    SimpleMuConstant,
    NotSimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    MilnorEquisingular,
    NotEquisingular,
    Indeterminate,
    /// `s = 0`: the question does not apply.
    IsolatedSingularity,
    /// The origin is a smooth point.
    Nonsingular,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MilnorEquisingular => "MILNOR_EQUISINGULAR",
            Verdict::NotEquisingular => "NOT_EQUISINGULAR",
            Verdict::Indeterminate => "INDETERMINATE",
            Verdict::IsolatedSingularity => "ISOLATED_SINGULARITY",
            Verdict::Nonsingular => "NONSINGULAR",
        }
    }
}

/// What one frame showed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameEvidence {
    pub sample: Option<usize>,
    pub frame: Vec<Vec<String>>,
    pub dim0_f0: Option<usize>,
    pub gamma_is_zero: Option<bool>,
    pub mu0_f0: Option<u64>,
    pub lambda_s: Option<u64>,
    pub frame_verdict: Option<FrameVerdict>,
    /// Error code when the frame was rejected.
    pub rejected: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquisingularityVerdict {
    pub verdict: Verdict,
    pub s: Option<usize>,
    pub seed: u64,
    pub sampled_frames: usize,
    pub evidence: Vec<FrameEvidence>,
    /// `λ^s_f(0)`, the generic Lê number, when determined.
    pub lambda_generic: Option<u64>,
    /// The record of the frame that decided the verdict.
    #[serde(skip)]
    pub decisive: Option<(CoordinateFrame, InvariantRecord)>,
    pub note: Option<String>,
}

/// `dim_0 Σ(f|V(z_0)) ≤ s - 1`.
pub fn prepolar_check(engine: &Engine, f: &Polynomial, frame: &CoordinateFrame) -> Result<bool> {
    Singularity::new(engine, f)?.prepolar_check(engine, frame)
}

/// Definition of a simple μ-constant family read through the polar
/// criterion: isolated slice and no polar variety through the origin.
pub fn simple_mu_constant_check(engine: &Engine, f: &Polynomial, frame: &CoordinateFrame) -> Result<FrameVerdict> {
    let sing = Singularity::new(engine, f)?;
    frame_verdict(engine, &sing, frame)
}

fn frame_verdict(engine: &Engine, sing: &Singularity, frame: &CoordinateFrame) -> Result<FrameVerdict> {
    match sing.restricted_milnor_number(engine, frame) {
        Ok(_) => {}
        Err(Error::NonIsolatedSlice(_)) => return Ok(FrameVerdict::NotSimple),
        Err(e) => return Err(e),
    }
    Ok(if sing.gamma_is_zero(engine, frame)? { FrameVerdict::SimpleMuConstant } else { FrameVerdict::NotSimple })
}

/// Milnor number of `f|V(z_0 - t)` summed over its critical points on `Σf`,
/// for each `t`.
pub fn mu_constancy_scan(
    engine: &Engine,
    f: &Polynomial,
    frame: &CoordinateFrame,
    params: &[Rational],
) -> Result<Vec<(Rational, u64)>> {
    Singularity::new(engine, f)?.mu_constancy_scan(engine, frame, params)
}

fn evaluate(engine: &Engine, sing: &Singularity, frame: &CoordinateFrame, sample: Option<usize>) -> (FrameEvidence, Result<InvariantRecord>) {
    let result = sing.invariant_record(engine, frame);
    let mut ev = FrameEvidence {
        sample,
        frame: frame.matrix_strings(),
        dim0_f0: None,
        gamma_is_zero: None,
        mu0_f0: None,
        lambda_s: None,
        frame_verdict: None,
        rejected: None,
    };
    match &result {
        Ok(rec) => {
            ev.dim0_f0 = Some(0);
            ev.gamma_is_zero = Some(rec.gamma_is_zero);
            ev.mu0_f0 = Some(rec.mu0_f0);
            ev.lambda_s = Some(rec.lambda_s);
            ev.frame_verdict =
                Some(if rec.gamma_is_zero { FrameVerdict::SimpleMuConstant } else { FrameVerdict::NotSimple });
        }
        Err(e) => {
            ev.rejected = Some(e.code().to_string());
            if matches!(e, Error::NonIsolatedSlice(_)) {
                let slice = sing.polar_source(frame).map(|i| i.with(sing.family_forms(frame)));
                if let Ok(LocalDimension::Dim(d)) = slice.and_then(|i| engine.local_dimension(&i)) {
                    ev.dim0_f0 = Some(d);
                }
                ev.frame_verdict = Some(FrameVerdict::NotSimple);
            }
        }
    }
    (ev, result)
}

/// Decides Milnor equisingularity by sampling seeded generic frames.
///
/// One frame with an isolated slice and no polar variety proves
/// equisingularity. The opposite verdict needs two frames with a polar
/// variety that agree on the smallest `λ^s` seen.
pub fn milnor_equisingular_check(
    engine: &Engine,
    f: &Polynomial,
    config: &GenericityConfig,
) -> Result<EquisingularityVerdict> {
    let mut out = EquisingularityVerdict {
        verdict: Verdict::Indeterminate,
        s: None,
        seed: config.seed,
        sampled_frames: 0,
        evidence: Vec::new(),
        lambda_generic: None,
        decisive: None,
        note: None,
    };
    let sing = match Singularity::new(engine, f) {
        Ok(sing) => sing,
        Err(Error::Nonsingular) => {
            out.verdict = Verdict::Nonsingular;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.s = Some(sing.s());
    if sing.s() == 0 {
        out.verdict = Verdict::IsolatedSingularity;
        return Ok(out);
    }
    let n = sing.nvars();
    let batch = rayon::current_num_threads().clamp(1, 4);
    let mut accepted: Vec<(CoordinateFrame, InvariantRecord)> = Vec::new();
    let mut rejections = 0;
    let mut index = 0;
    loop {
        let indices: Vec<usize> = (index..index + batch).collect();
        index += batch;
        let results: Vec<(CoordinateFrame, FrameEvidence, Result<InvariantRecord>)> = indices
            .par_iter()
            .map(|&i| {
                let frame = config.sample_frame(n, i);
                let (ev, rec) = evaluate(engine, &sing, &frame, Some(i));
                (frame, ev, rec)
            })
            .collect();
        // Aggregate strictly in sample order.
        for (frame, ev, rec) in results {
            out.sampled_frames += 1;
            out.evidence.push(ev);
            match rec {
                Ok(rec) => {
                    if rec.gamma_is_zero {
                        out.verdict = Verdict::MilnorEquisingular;
                        out.lambda_generic = Some(rec.lambda_s);
                        out.decisive = Some((frame, rec));
                        return Ok(out);
                    }
                    accepted.push((frame, rec));
                    let min = accepted.iter().map(|(_, r)| r.lambda_s).min().unwrap();
                    let agreeing: Vec<&(CoordinateFrame, InvariantRecord)> =
                        accepted.iter().filter(|(_, r)| r.lambda_s == min).collect();
                    if agreeing.len() >= 2 {
                        out.verdict = Verdict::NotEquisingular;
                        out.lambda_generic = Some(min);
                        out.decisive = Some(agreeing[0].clone());
                        return Ok(out);
                    }
                    if accepted.len() >= config.max_frames {
                        out.note = Some(format!("no two of {} frames agreed on the Lê number", accepted.len()));
                        return Ok(out);
                    }
                }
                Err(e) if e.is_frame_rejection() => {
                    rejections += 1;
                    if rejections > config.retry_budget {
                        out.note = Some(format!("{rejections} sampled frames were not generic"));
                        return Ok(out);
                    }
                }
                Err(Error::ResourceLimit(msg)) => {
                    out.note = Some(format!("resource limit: {msg}"));
                    return Ok(out);
                }
                Err(e) => return Err(e),
            }
        }
    }
}

/// Verdict for a user-supplied frame: if it already exhibits a simple
/// μ-constant family, existence settles equisingularity; otherwise the
/// generic sampling decides.
pub fn check_with_frame(
    engine: &Engine,
    f: &Polynomial,
    frame: &CoordinateFrame,
    config: &GenericityConfig,
) -> Result<EquisingularityVerdict> {
    let sing = match Singularity::new(engine, f) {
        Ok(sing) if sing.s() > 0 => sing,
        _ => return milnor_equisingular_check(engine, f, config),
    };
    let (ev, rec) = evaluate(engine, &sing, frame, None);
    if let Ok(rec) = &rec {
        if rec.gamma_is_zero {
            return Ok(EquisingularityVerdict {
                verdict: Verdict::MilnorEquisingular,
                s: Some(sing.s()),
                seed: config.seed,
                sampled_frames: 0,
                evidence: vec![ev],
                lambda_generic: Some(rec.lambda_s),
                decisive: Some((frame.clone(), rec.clone())),
                note: Some("the given frame exhibits a simple mu-constant family".into()),
            });
        }
    }
    let mut out = milnor_equisingular_check(engine, f, config)?;
    out.evidence.insert(0, ev);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn poly(names: &[&str], text: &str) -> Polynomial {
        parse_polynomial(text, &Ring::new(names).unwrap()).unwrap()
    }

    #[test]
    fn frame_verdicts() {
        let e = Engine::default();
        let id = CoordinateFrame::identity(3);
        let cusp = poly(&["t", "x", "y"], "x^3 + y^2");
        assert_eq!(simple_mu_constant_check(&e, &cusp, &id).unwrap(), FrameVerdict::SimpleMuConstant);
        let node = poly(&["t", "x", "y"], "y^2 - x^3 - t^2*x^2");
        assert_eq!(simple_mu_constant_check(&e, &node, &id).unwrap(), FrameVerdict::NotSimple);
        let lines = poly(&["x", "y", "w"], "x^2*y^2 + w^2");
        let frame = CoordinateFrame::parse("1,3,5;0,1,0;0,0,1").unwrap();
        assert_eq!(simple_mu_constant_check(&e, &lines, &frame).unwrap(), FrameVerdict::NotSimple);
        assert_eq!(simple_mu_constant_check(&e, &lines, &id).unwrap(), FrameVerdict::NotSimple);
    }

    #[test]
    fn sampled_verdicts() {
        let e = Engine::default();
        let config = GenericityConfig::with_seed(42);
        let cusp = poly(&["t", "x", "y"], "x^3 + y^2");
        let v = milnor_equisingular_check(&e, &cusp, &config).unwrap();
        assert_eq!(v.verdict, Verdict::MilnorEquisingular);
        assert_eq!(v.lambda_generic, Some(2));
        let cusp_locus = poly(&["x", "y", "w"], "(y^2 - x^3)^2 + w^2");
        let v = milnor_equisingular_check(&e, &cusp_locus, &config).unwrap();
        assert_eq!(v.verdict, Verdict::NotEquisingular);
        assert_eq!(v.lambda_generic, Some(2));
        let quadric = poly(&["x", "y", "w"], "x^2 + y^2 + w^2");
        assert_eq!(milnor_equisingular_check(&e, &quadric, &config).unwrap().verdict, Verdict::IsolatedSingularity);
        let smooth = poly(&["x", "y"], "x + y^2");
        assert_eq!(milnor_equisingular_check(&e, &smooth, &config).unwrap().verdict, Verdict::Nonsingular);
    }

    #[test]
    fn sampling_is_reproducible() {
        let config = GenericityConfig::with_seed(9);
        assert_eq!(config.sample_frame(3, 2), config.sample_frame(3, 2));
        assert_ne!(config.sample_frame(3, 2), config.sample_frame(3, 3));
        assert_ne!(config.sample_frame(3, 2), GenericityConfig::with_seed(10).sample_frame(3, 2));
    }

    #[test]
    fn explicit_frame_existence_suffices() {
        let e = Engine::default();
        let f = poly(&["t", "x", "y"], "x^3 + y^2");
        let v = check_with_frame(&e, &f, &CoordinateFrame::identity(3), &GenericityConfig::default()).unwrap();
        assert_eq!((v.verdict, v.sampled_frames), (Verdict::MilnorEquisingular, 0));
    }
}
