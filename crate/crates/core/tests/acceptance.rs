//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero on any
//! FAIL outside `KNOWN_FAILURES`, and when a known failure starts passing.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lecycle::cycles::{milnor_number, Singularity};
use lecycle::equisingularity::{milnor_equisingular_check, BettiStatement, GenericityConfig, Verdict};
use lecycle::poly::field::rational;
use lecycle::poly::{Monomial, Rational};
use lecycle::report::{analyze, load_corpus, AnalysisReport, AnalysisRequest, Corpus};
use lecycle::{parse_with_vars, Error, CoordinateFrame, Engine, Ideal, LocalDimension, Polynomial, QuotientDimension, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 1;

/// Criterion 2 expects `mu0(f0) = 4` and `gamma^1 = 2` for `x^2 y^2 + w^2`, but a
/// generic plane section is an A3 curve singularity: `mu0(f0) = 3`, `gamma^1 = 1`.
const KNOWN_FAILURES: &[usize] = &[2];

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn poly(vars: &[&str], text: &str) -> Polynomial {
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    parse_with_vars(text, Some(&vars)).unwrap()
}

fn report(text: &str, vars: &[&str], frame: Option<&str>) -> Result<AnalysisReport, String> {
    let mut req = AnalysisRequest::new(text).with_vars(vars).with_seed(SEED);
    req.frame = frame.map(String::from);
    analyze(&req).map_err(|e| e.to_string())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn has(report: &AnalysisReport, claim: &BettiStatement) -> bool {
    report.betti_statements.iter().any(|s| &s.claim == claim)
}

fn corpus() -> Corpus {
    load_corpus(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/standard.toml")).unwrap()
}

fn corpus_polys() -> Vec<(String, Polynomial, Option<CoordinateFrame>)> {
    corpus()
        .entries
        .iter()
        .map(|e| {
            let f = parse_with_vars(&e.poly, e.vars.as_deref()).unwrap();
            let frame = e.frame.as_deref().map(|t| CoordinateFrame::parse(t).unwrap());
            (e.id.clone(), f, frame)
        })
        .collect()
}

fn dim(engine: &Engine, ideal: &Ideal) -> Result<u64, String> {
    match engine.local_quotient_dimension(ideal).map_err(|e| e.to_string())? {
        QuotientDimension::Finite(d) => Ok(d),
        QuotientDimension::Infinite => Err("improper intersection".into()),
    }
}

fn singular(engine: &Engine, f: &Polynomial) -> Result<Option<Singularity>, String> {
    match Singularity::new(engine, f) {
        Ok(sing) => Ok(Some(sing)),
        Err(Error::Nonsingular) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

/// Prepolar random frames on which every invariant is defined.
fn accepted_frames(engine: &Engine, sing: &Singularity, wanted: usize, seed: u64) -> Vec<CoordinateFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..8 * wanted {
        if out.len() == wanted {
            break;
        }
        let frame = CoordinateFrame::random(sing.nvars(), 20, &mut rng);
        if sing.prepolar_check(engine, &frame).unwrap_or(false) && sing.invariant_record(engine, &frame).is_ok() {
            out.push(frame);
        }
    }
    out
}

fn cusp_locus() -> Check {
    let vars = ["x", "y", "w"];
    let text = "(y^2 - x^3)^2 + w^2";
    let f = poly(&vars, text);
    let engine = Engine::default();
    let sing = Singularity::new(&engine, &f).map_err(|e| e.to_string())?;
    ensure(sing.s() == 1, format!("s = {}", sing.s()))?;
    // Σf = V(w, y^2 - x^3): J lies in (w, P) and P^2 lies in J.
    let p = poly(&vars, "y^2 - x^3");
    let locus = Ideal::new(f.ring(), [poly(&vars, "w"), p.clone()]);
    ensure(engine.is_subset(sing.jacobian(), &locus).unwrap(), "J(f) not inside (w, y^2 - x^3)")?;
    ensure(engine.contains(sing.jacobian(), &p.pow(2)).unwrap(), "(y^2 - x^3)^2 not in J(f)")?;
    let slice = sing
        .transversal_milnor_sum(&engine, &CoordinateFrame::identity(3), &rational(1, 3))
        .map_err(|e| e.to_string())?;
    ensure(slice.sum == 2 && slice.points == 2, format!("transversal {slice:?}"))?;
    let r = report(text, &vars, None)?;
    ensure(r.s == Some(1), "s")?;
    ensure(r.lambda_s_generic == Some(2), format!("lambda^1 = {:?}", r.lambda_s_generic))?;
    ensure(r.verdict == Verdict::NotEquisingular, format!("verdict {}", r.verdict.as_str()))?;
    ensure(has(&r, &BettiStatement::Strict { degree: 1, bound: 2 }), "no STRICT b~_1 < 2")?;
    Ok("s=1, lambda^1=2, slice sum 2 over 2 points, NOT_EQUISINGULAR, b~_1 < 2".into())
}

fn crossing_lines() -> Check {
    let r = report("x^2*y^2 + w^2", &["x", "y", "w"], None)?;
    let inv = r.invariants.clone().ok_or("no invariants")?;
    let got = format!(
        "lambda^1={:?} mu0(f0)={} gamma^1={:?} verdict={}",
        r.lambda_s_generic,
        inv.mu0_f0,
        inv.gamma1,
        r.verdict.as_str()
    );
    let mut wrong = Vec::new();
    if r.lambda_s_generic != Some(2) {
        wrong.push("lambda^1 != 2");
    }
    if inv.mu0_f0 != 4 {
        wrong.push("mu0(f0) != 4");
    }
    if inv.gamma1 != Some(2) {
        wrong.push("gamma^1 != 2");
    }
    if r.verdict != Verdict::NotEquisingular {
        wrong.push("verdict");
    }
    if !has(&r, &BettiStatement::Strict { degree: 1, bound: 2 }) {
        wrong.push("no STRICT b~_1 < 2");
    }
    if wrong.is_empty() {
        Ok(got)
    } else {
        Err(format!("{got}; expected lambda^1=2 mu0(f0)=4 gamma^1=2; failing: {}", wrong.join(", ")))
    }
}

fn cusp_family() -> Check {
    let text = "x^3 + y^2";
    let r = report(text, &["t", "x", "y"], None)?;
    let inv = r.invariants.clone().ok_or("no invariants")?;
    ensure(inv.gamma_is_zero, "polar curve present")?;
    ensure(r.lambda_s_generic == Some(2), format!("lambda^1 = {:?}", r.lambda_s_generic))?;
    ensure(r.verdict == Verdict::MilnorEquisingular, format!("verdict {}", r.verdict.as_str()))?;
    ensure(has(&r, &BettiStatement::Equality { degree: 1, value: 2 }), "no EQUALITY b~_1 = 2")?;
    // Fiber singularity: Brieskorn formula (3-1)(2-1).
    let mu = milnor_number(&Engine::default(), &poly(&["x", "y"], text)).map_err(|e| e.to_string())?;
    ensure(mu == 2, format!("mu(x^3 + y^2) = {mu}"))?;
    Ok("Gamma=0, lambda^1=2=mu(x^3+y^2), MILNOR_EQUISINGULAR, b~_1 = 2".into())
}

fn node_family() -> Check {
    let vars = ["t", "x", "y"];
    let text = "y^2 - x^3 - t^2*x^2";
    let id = "1,0,0;0,1,0;0,0,1";
    let f = poly(&vars, text);
    let engine = Engine::default();
    let sing = Singularity::new(&engine, &f).map_err(|e| e.to_string())?;
    let frame = CoordinateFrame::parse(id).unwrap();
    let polar = sing.polar_ideal(&engine, &frame).map_err(|e| e.to_string())?;
    let by_hand = Ideal::new(f.ring(), [poly(&vars, "y"), poly(&vars, "3*x + 2*t^2")]);
    ensure(engine.ideals_equal(&polar, &by_hand).unwrap(), "I_Gamma != (y, 3x + 2t^2)")?;
    let scan = sing
        .mu_constancy_scan(&engine, &frame, &[rational(1, 4), rational(1, 3)])
        .map_err(|e| e.to_string())?;
    let values: Vec<u64> = scan.iter().map(|(_, v)| *v).collect();
    ensure(values == [1, 1], format!("scan {values:?}"))?;
    let r = report(text, &vars, Some(id))?;
    let inv = r.invariants.clone().ok_or("no invariants")?;
    ensure(
        (inv.mu0_f0, inv.gamma_dot_v, inv.lambda_s) == (2, 1, 1),
        format!("mu0={} Gamma.V={} lambda={}", inv.mu0_f0, inv.gamma_dot_v, inv.lambda_s),
    )?;
    ensure(r.verdict == Verdict::NotEquisingular, format!("verdict {}", r.verdict.as_str()))?;
    ensure(has(&r, &BettiStatement::SiersmaVanish { degree: 1 }), "no SIERSMA_VANISH")?;
    Ok("mu0=2, Gamma.V=1, lambda^1=1, scan [1, 1], NOT_EQUISINGULAR, b~_1 = 0".into())
}

fn teissier() -> Check {
    let engine = Engine::default();
    let mut checked = 0;
    for (i, (id, f, _)) in corpus_polys().into_iter().enumerate() {
        let Some(sing) = singular(&engine, &f)? else { continue };
        if sing.s() != 1 {
            continue;
        }
        let frames = accepted_frames(&engine, &sing, 3, 100 + i as u64);
        ensure(frames.len() == 3, format!("{id}: only {} prepolar frames", frames.len()))?;
        for frame in &frames {
            let ring = f.ring();
            let polar = sing.polar_ideal(&engine, frame).map_err(|e| e.to_string())?;
            let le = sing.le_cycle_ideal(&engine, frame).map_err(|e| e.to_string())?;
            let z0 = frame.coordinate(ring, 0);
            let gamma1 = dim(&engine, &polar.with([z0.clone()]))?;
            let lambda0 = dim(&engine, &polar.with([frame.partial(&f, 0)]))?;
            let tau = dim(&engine, &polar.with([f.clone()]))?;
            let lambda1 = dim(&engine, &le.with([z0]))?;
            let mu0 = sing.restricted_milnor_number(&engine, frame).map_err(|e| e.to_string())?;
            ensure(tau == lambda0 + gamma1, format!("{id}: tau={tau} lambda0={lambda0} gamma1={gamma1}"))?;
            ensure(mu0 == gamma1 + lambda1, format!("{id}: mu0={mu0} gamma1={gamma1} lambda1={lambda1}"))?;
        }
        checked += 1;
    }
    ensure(checked >= 10, format!("only {checked} curve-case polynomials"))?;
    Ok(format!("{checked} polynomials x 3 prepolar frames"))
}

fn additivity() -> Check {
    let engine = Engine::default();
    let mut frames_checked = 0;
    for (i, (id, f, explicit)) in corpus_polys().into_iter().enumerate() {
        let Some(sing) = singular(&engine, &f)? else { continue };
        if sing.s() == 0 {
            continue;
        }
        let mut frames = accepted_frames(&engine, &sing, 2, 200 + i as u64);
        frames.extend(explicit);
        for frame in &frames {
            let lin = sing.family_forms(frame);
            let polar = sing.polar_ideal(&engine, frame).map_err(|e| e.to_string())?;
            let le = sing.le_cycle_ideal(&engine, frame).map_err(|e| e.to_string())?;
            let g = dim(&engine, &polar.with(lin.clone()))?;
            let l = dim(&engine, &le.with(lin))?;
            let mu0 = sing.restricted_milnor_number(&engine, frame).map_err(|e| e.to_string())?;
            ensure(g + l == mu0, format!("{id}: {g} + {l} != {mu0}"))?;
            frames_checked += 1;
        }
    }
    Ok(format!("{frames_checked} (entry, frame) pairs"))
}

fn milnor_oracle() -> Check {
    let engine = Engine::default();
    for a in 2..=6u64 {
        for b in 2..=6u64 {
            let mu = milnor_number(&engine, &poly(&["x", "y"], &format!("x^{a} + y^{b}"))).map_err(|e| e.to_string())?;
            ensure(mu == (a - 1) * (b - 1), format!("mu(x^{a} + y^{b}) = {mu}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    let mut draws = 0;
    while pairs < 10 {
        draws += 1;
        ensure(draws < 200, "could not draw isolated pairs")?;
        let f = random_germ(&mut rng, "x", "y");
        let g = random_germ(&mut rng, "z", "w");
        let (Ok(mf), Ok(mg)) = (
            milnor_number(&engine, &poly(&["x", "y"], &f)),
            milnor_number(&engine, &poly(&["z", "w"], &g)),
        ) else {
            continue;
        };
        let sum = milnor_number(&engine, &poly(&["x", "y", "z", "w"], &format!("{f} + {g}"))).map_err(|e| e.to_string())?;
        ensure(sum == mf * mg, format!("mu({f} + {g}) = {sum}, not {mf} * {mg}"))?;
        pairs += 1;
    }
    Ok("25 Brieskorn curves, 10 Sebastiani-Thom pairs".into())
}

fn random_germ(rng: &mut ChaCha8Rng, u: &str, v: &str) -> String {
    let a = rng.gen_range(2..=4);
    let b = rng.gen_range(2..=4);
    let mut text = format!("{u}^{a} + {v}^{b}");
    for _ in 0..2 {
        let (i, j) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let c = rng.gen_range(-3..=3);
        if i + j >= 2 && c != 0 {
            text.push_str(&format!(" + ({c})*{u}^{i}*{v}^{j}"));
        }
    }
    text
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_monomial_ideal(u: &[u32], gens: &[Vec<u32>]) -> bool {
    gens.iter().any(|g| divides(g, u))
}

fn add(a: &[u32], b: &[u32], k: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

fn exponents_up_to(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> Vec<u32> {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=hi)).collect();
        let d: u32 = e.iter().sum();
        if (lo..=hi).contains(&d) {
            return e;
        }
    }
}

fn monomial_oracle() -> Check {
    let engine = Engine::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let names = ["a", "b", "c", "d"];
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let ring = Ring::new(&names[..n]).unwrap();
        let mono = |e: &[u32]| Polynomial::from_terms(&ring, vec![(Monomial::from_exponents(e), Rational::from_integer(1.into()))]);
        let gens: Vec<Vec<u32>> = (0..rng.gen_range(1..=4)).map(|_| random_monomial(&mut rng, n, 1, 6)).collect();
        let by = random_monomial(&mut rng, n, 1, 3);
        let sat: Vec<Vec<u32>> = (0..rng.gen_range(1..=2)).map(|_| random_monomial(&mut rng, n, 1, 2)).collect();
        let ideal = Ideal::new(&ring, gens.iter().map(|g| mono(g)));
        let fail = |what: &str| format!("case {case}: {what} for {gens:?}");

        let quotient = engine.ideal_quotient(&ideal, &mono(&by)).map_err(|e| e.to_string())?;
        let saturated = engine
            .saturation(&ideal, &Ideal::new(&ring, sat.iter().map(|g| mono(g))))
            .map_err(|e| e.to_string())?;
        let (qb, sb) = (engine.groebner(&quotient).unwrap(), engine.groebner(&saturated).unwrap());
        for u in exponents_up_to(n, 6) {
            let m = mono(&u);
            ensure(qb.contains(&m).unwrap() == in_monomial_ideal(&add(&u, &by, 1), &gens), fail(&format!("quotient by {by:?} at {u:?}")))?;
            let expect = sat.iter().all(|j| in_monomial_ideal(&add(&u, j, 7), &gens));
            ensure(sb.contains(&m).unwrap() == expect, fail(&format!("saturation by {sat:?} at {u:?}")))?;
        }

        // Krull dimension: largest variable set containing no generator's support.
        let krull = (0u32..1 << n)
            .filter(|set| gens.iter().all(|g| g.iter().enumerate().any(|(i, &e)| e > 0 && set & (1 << i) == 0)))
            .map(|set| set.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let local = engine.local_dimension(&ideal).map_err(|e| e.to_string())?;
        ensure(local == LocalDimension::Dim(krull), fail(&format!("dimension {local:?}, oracle {krull}")))?;

        let expected = if krull == 0 {
            let box_: Vec<Vec<u32>> = exponents_up_to(n, 6 * n as u32)
                .into_iter()
                .filter(|e| e.iter().all(|&x| x <= 6) && !in_monomial_ideal(e, &gens))
                .collect();
            QuotientDimension::Finite(box_.len() as u64)
        } else {
            QuotientDimension::Infinite
        };
        ensure(engine.local_quotient_dimension(&ideal).unwrap() == expected, fail("local colength"))?;
        ensure(engine.global_quotient_dimension(&ideal).unwrap() == expected, fail("global colength"))?;
    }
    Ok("100 monomial ideals: quotient, saturation, dimension, colength".into())
}

fn determinism_and_flags() -> Check {
    let corpus = corpus();
    for entry in &corpus.entries {
        let req = entry.request(corpus.seed);
        let a = analyze(&req).map_err(|e| e.to_string())?.to_json();
        let b = analyze(&req).map_err(|e| e.to_string())?.to_json();
        ensure(a == b, format!("{}: repeated runs differ", entry.id))?;
    }
    let engine = Engine::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut compositions = 0;
    for (id, f, _) in corpus_polys() {
        let Some(sing) = singular(&engine, &f)? else { continue };
        let s = sing.s();
        if s == 0 {
            continue;
        }
        let verdict = milnor_equisingular_check(&engine, &f, &GenericityConfig::with_seed(SEED)).map_err(|e| e.to_string())?;
        let Some((frame, record)) = verdict.decisive else {
            return Err(format!("{id}: no generic frame"));
        };
        let n = sing.nvars();
        let mut done = 0;
        while done < 10 {
            // Row k < s only uses z_0..z_k, so every V(z_0, ..., z_k) is preserved.
            let b: Vec<Vec<Rational>> = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| {
                            let c = if k < s && j > k {
                                0
                            } else if k < s && j == k {
                                [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]
                            } else {
                                rng.gen_range(-5..=5)
                            };
                            rational(c, 1)
                        })
                        .collect()
                })
                .collect();
            let Ok(b) = CoordinateFrame::new(b) else { continue };
            let moved = frame.compose(&b);
            let r = sing.invariant_record(&engine, &moved).map_err(|e| format!("{id}: {e}"))?;
            ensure(r.lambda_s == record.lambda_s, format!("{id}: lambda^s {} became {}", record.lambda_s, r.lambda_s))?;
            done += 1;
            compositions += 1;
        }
    }
    Ok(format!("{} entries byte-identical, {compositions} flag-preserving changes", corpus.entries.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cusp locus", cusp_locus, Some(Duration::from_secs(10))),
        ("crossing lines", crossing_lines, None),
        ("cusp family", cusp_family, Some(Duration::from_secs(5))),
        ("node family", node_family, None),
        ("Teissier identities", teissier, None),
        ("additivity", additivity, None),
        ("Milnor number oracle", milnor_oracle, Some(Duration::from_secs(30))),
        ("monomial ideal oracle", monomial_oracle, None),
        ("determinism and flag invariance", determinism_and_flags, None),
    ];
    let mut failures = BTreeMap::new();
    let mut unexpected = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > *limit {
                result = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        let known = KNOWN_FAILURES.contains(&k);
        match result {
            Ok(detail) => {
                println!("criterion {k}: PASS {name}: {detail} [{elapsed:.2?}]");
                if known {
                    unexpected.push(format!("criterion {k} passes but is listed as a known failure"));
                }
            }
            Err(detail) => {
                let tag = if known { " (known failure)" } else { "" };
                println!("criterion {k}: FAIL{tag} {name}: {detail} [{elapsed:.2?}]");
                if !known {
                    unexpected.push(format!("criterion {k} failed"));
                }
                failures.insert(k, detail);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed {:?}",
        criteria.len() - failures.len(),
        failures.len(),
        failures.keys().collect::<Vec<_>>()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected: {}", unexpected.join("; "));
        ExitCode::FAILURE
    }
}
