//! Statements about the reduced Betti numbers `b̃_k` of the Milnor fiber.
//! These are claims implied by the computed invariants, not computed homology.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{milnor_equisingular_check, EquisingularityVerdict, GenericityConfig, Verdict};
use crate::cycles::{is_smooth_curve_at_origin, milnor_number, Singularity, TransversalSum};
use crate::error::{Error, Result};
use crate::frame::CoordinateFrame;
use crate::ideal::{Engine, Limits};
use crate::poly::field::rational;
use crate::poly::{Polynomial, Rational};

const ORACLE_STEPS: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BettiStatement {
    /// `b̃_degree = value`.
    Equality { degree: usize, value: u64 },
    /// `b̃_degree < bound`, also with `Z/p` coefficients for every prime `p`.
    Strict { degree: usize, bound: u64 },
    /// `b̃_{n-1} ≤ lambda1` and `b̃_n ≤ lambda0`.
    SwingBounds { n: usize, lambda1: u64, lambda0: u64 },
    /// `b̃_degree ≤ bound`, the bound being a transversal Milnor number sum.
    SiersmaBound { degree: usize, bound: u64 },
    /// `b̃_n - b̃_{n-1} = tau - mu0`.
    Euler { n: usize, tau: u64, mu0: u64 },
    /// `b̃_degree = 0`.
    SiersmaVanish { degree: usize },
    /// Isolated singularity: `b̃_n = mu` and all other `b̃_k` vanish.
    IsolatedMilnor { n: usize, mu: u64 },
}

impl fmt::Display for BettiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BettiStatement::Equality { degree, value } => write!(f, "EQUALITY: b~_{degree} = {value}"),
            BettiStatement::Strict { degree, bound } => {
                write!(f, "STRICT: b~_{degree} < {bound} (also mod every prime p)")
            }
            BettiStatement::SwingBounds { n, lambda1, lambda0 } => {
                write!(f, "SWING_BOUNDS: b~_{} <= {lambda1}, b~_{n} <= {lambda0}", n - 1)
            }
            BettiStatement::SiersmaBound { degree, bound } => write!(f, "SIERSMA_BOUND: b~_{degree} <= {bound}"),
            BettiStatement::Euler { n, tau, mu0 } => {
                write!(f, "EULER: b~_{n} - b~_{} = {tau} - {mu0} = {}", n - 1, *tau as i64 - *mu0 as i64)
            }
            BettiStatement::SiersmaVanish { degree } => write!(f, "SIERSMA_VANISH: b~_{degree} = 0"),
            BettiStatement::IsolatedMilnor { n, mu } => write!(f, "ISOLATED: b~_{n} = {mu}, other b~_k = 0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub n: usize,
    pub s: Option<usize>,
    pub verdict: Verdict,
    pub lambda_s_generic: Option<u64>,
    pub statements: Vec<BettiStatement>,
    /// Range of `b̃_{n-1}` allowed by all statements together (`s = 1`).
    pub feasible_range: Option<(u64, u64)>,
    pub notes: Vec<String>,
}

/// Decides the verdict, then reports what it implies.
pub fn betti_report(engine: &Engine, f: &Polynomial, config: &GenericityConfig) -> Result<BettiReport> {
    let verdict = milnor_equisingular_check(engine, f, config)?;
    report_for(engine, f, &verdict, config.seed)
}

/// The report implied by an already computed verdict.
pub fn report_for(engine: &Engine, f: &Polynomial, verdict: &EquisingularityVerdict, seed: u64) -> Result<BettiReport> {
    let n = f.ring().nvars() - 1;
    let mut report = BettiReport {
        n,
        s: verdict.s,
        verdict: verdict.verdict,
        lambda_s_generic: verdict.lambda_generic,
        statements: Vec::new(),
        feasible_range: None,
        notes: Vec::new(),
    };
    match verdict.verdict {
        Verdict::Nonsingular => {
            report.notes.push("the Milnor fiber is contractible".into());
            return Ok(report);
        }
        Verdict::IsolatedSingularity => {
            let mu = milnor_number(engine, f)?;
            report.lambda_s_generic = Some(mu);
            report.statements.push(BettiStatement::IsolatedMilnor { n, mu });
            return Ok(report);
        }
        Verdict::Indeterminate => report.notes.push("verdict indeterminate: bounds only".into()),
        Verdict::MilnorEquisingular | Verdict::NotEquisingular => {}
    }
    let Some((frame, record)) = &verdict.decisive else {
        return Ok(report);
    };
    let s = record.s;
    let top = n - s;
    match verdict.verdict {
        Verdict::MilnorEquisingular => {
            report.statements.push(BettiStatement::Equality { degree: top, value: record.lambda_s });
            if top != 2 {
                report.notes.push(format!(
                    "n - s = {top} != 2: by Lê-Ramanujam the topological type of f_q is constant along Σf near 0 (not verified)"
                ));
            }
        }
        Verdict::NotEquisingular => {
            report.statements.push(BettiStatement::Strict { degree: top, bound: record.lambda_s });
        }
        _ => {}
    }
    let Some(curve) = &record.curve else {
        return Ok(report);
    };
    let sing = Singularity::new(engine, f)?;
    report.statements.push(BettiStatement::SwingBounds { n, lambda1: record.lambda_s, lambda0: curve.lambda0 });

    let oracle = transversal_oracle(engine, &sing)?;
    if let Some(sum) = oracle {
        report.statements.push(BettiStatement::SiersmaBound { degree: n - 1, bound: sum.sum });
    } else {
        report.notes.push("no transversal slice was available for the Siersma bound".into());
    }
    report.statements.push(BettiStatement::Euler { n, tau: curve.tau, mu0: record.mu0_f0 });

    if verdict.verdict == Verdict::NotEquisingular {
        let le = sing.le_cycle_ideal(engine, frame)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let smooth = match is_smooth_curve_at_origin(engine, &le, &mut rng) {
            Ok(smooth) => smooth,
            Err(Error::GenericityFailure(_)) => false,
            Err(e) => return Err(e),
        };
        let transversal_a1 = oracle.is_some_and(|o| o.sum == o.points);
        if smooth && transversal_a1 {
            report.statements.push(BettiStatement::SiersmaVanish { degree: n - 1 });
        }
    }
    report.feasible_range = Some(feasible_range(&report.statements)?);
    Ok(report)
}

/// Small integer forms `e_i`, `e_i + e_j`, `e_i - e_j`, completed to frames
/// by unit rows. Keeps the global slice computations cheap.
fn oracle_frames(n: usize) -> impl Iterator<Item = CoordinateFrame> {
    let unit = move |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    let mut forms: Vec<Vec<i64>> = (0..n).map(unit).collect();
    for sign in [1, -1] {
        for i in 0..n {
            for j in i + 1..n {
                let mut v = unit(i);
                v[j] = sign;
                forms.push(v);
            }
        }
    }
    forms.into_iter().map(move |v| {
        let pivot = v.iter().position(|&c| c != 0).expect("nonzero form");
        let rows: Vec<Vec<Rational>> = std::iter::once(v)
            .chain((0..n).filter(|&k| k != pivot).map(unit))
            .map(|r| r.into_iter().map(|c| Rational::from_integer(c.into())).collect())
            .collect();
        CoordinateFrame::new(rows).expect("unit completion is invertible")
    })
}

/// Transversal Milnor sum for the first prepolar small form whose slices
/// are isolated; the smallest value over a few slice levels.
fn transversal_oracle(engine: &Engine, sing: &Singularity) -> Result<Option<TransversalSum>> {
    let budget = Engine::new(Limits { max_steps: ORACLE_STEPS, ..engine.limits().clone() });
    for frame in oracle_frames(sing.nvars()) {
        match sing.prepolar_check(&budget, &frame) {
            Ok(true) => {}
            Ok(false) | Err(Error::ResourceLimit(_)) => continue,
            Err(e) => return Err(e),
        }
        let mut best: Option<TransversalSum> = None;
        for t in [rational(1, 3), rational(1, 5), rational(2, 7)] {
            match sing.transversal_milnor_sum(&budget, &frame, &t) {
                Ok(sum) if best.is_none_or(|b| sum.sum < b.sum) => best = Some(sum),
                Ok(_) => {}
                Err(e) if e.is_frame_rejection() || matches!(e, Error::ResourceLimit(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Intersects every constraint on `b̃_{n-1}`; `b̃_n ≥ 0` with the Euler
/// statement gives the lower end. Contradictory statements are an error.
fn feasible_range(statements: &[BettiStatement]) -> Result<(u64, u64)> {
    let mut lo: i64 = 0;
    let mut hi: i64 = i64::MAX;
    let mut euler = None;
    let mut top_bound = None;
    for st in statements {
        match *st {
            BettiStatement::Equality { value, .. } => {
                lo = lo.max(value as i64);
                hi = hi.min(value as i64);
            }
            BettiStatement::Strict { bound, .. } => hi = hi.min(bound as i64 - 1),
            BettiStatement::SwingBounds { lambda1, lambda0, .. } => {
                hi = hi.min(lambda1 as i64);
                top_bound = Some(lambda0 as i64);
            }
            BettiStatement::SiersmaBound { bound, .. } => hi = hi.min(bound as i64),
            BettiStatement::SiersmaVanish { .. } => hi = hi.min(0),
            BettiStatement::Euler { tau, mu0, .. } => euler = Some(tau as i64 - mu0 as i64),
            BettiStatement::IsolatedMilnor { .. } => {}
        }
    }
    if let Some(d) = euler {
        lo = lo.max(-d);
        if let Some(b) = top_bound {
            hi = hi.min(b - d);
        }
    }
    if lo > hi {
        return Err(Error::ConsistencyFailure(format!("Betti statements leave no room: {lo} > {hi}")));
    }
    Ok((lo as u64, hi as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn poly(names: &[&str], text: &str) -> Polynomial {
        parse_polynomial(text, &Ring::new(names).unwrap()).unwrap()
    }

    fn report(names: &[&str], text: &str) -> BettiReport {
        betti_report(&Engine::default(), &poly(names, text), &GenericityConfig::with_seed(3)).unwrap()
    }

    #[test]
    fn equisingular_cusps() {
        let r = report(&["t", "x", "y"], "x^3 + y^2");
        assert_eq!(r.verdict, Verdict::MilnorEquisingular);
        assert!(r.statements.contains(&BettiStatement::Equality { degree: 1, value: 2 }));
        assert_eq!(r.feasible_range, Some((2, 2)));
    }

    #[test]
    fn node_family_vanishes() {
        let r = report(&["t", "x", "y"], "y^2 - x^3 - t^2*x^2");
        assert_eq!(r.verdict, Verdict::NotEquisingular);
        assert!(r.statements.contains(&BettiStatement::Strict { degree: 1, bound: 1 }));
        assert!(r.statements.contains(&BettiStatement::SiersmaVanish { degree: 1 }));
        assert_eq!(r.feasible_range, Some((0, 0)));
    }

    #[test]
    fn crossing_lines_allow_one() {
        let r = report(&["x", "y", "w"], "x^2*y^2 + w^2");
        assert_eq!(r.verdict, Verdict::NotEquisingular);
        assert!(r.statements.contains(&BettiStatement::Strict { degree: 1, bound: 2 }));
        assert!(!r.statements.iter().any(|s| matches!(s, BettiStatement::SiersmaVanish { .. })));
        let (lo, hi) = r.feasible_range.unwrap();
        assert!(lo <= 1 && 1 <= hi);
    }

    #[test]
    fn isolated_case() {
        let r = report(&["x", "y"], "x^3 + y^4");
        assert_eq!(r.statements, vec![BettiStatement::IsolatedMilnor { n: 1, mu: 6 }]);
    }

    #[test]
    fn contradictions_are_caught() {
        let st = [BettiStatement::Equality { degree: 1, value: 2 }, BettiStatement::SiersmaVanish { degree: 1 }];
        assert!(feasible_range(&st).is_err());
    }
}
