use lecycle::equisingularity::Verdict;
use lecycle::report::{load_corpus, run_corpus, EntryStatus, ResultCache};

fn corpus_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/standard.toml")
}

#[test]
fn standard_corpus_passes() {
    let corpus = load_corpus(corpus_path()).unwrap();
    let summary = run_corpus(&corpus, None, 4).unwrap();
    for o in &summary.outcomes {
        assert_eq!(o.status, EntryStatus::Pass, "{}: {:?} {:?}", o.id, o.mismatches, o.error);
    }
    let s1 = corpus.entries.iter().filter(|e| e.expected.s == Some(1)).count();
    assert!(s1 >= 10, "only {s1} entries with s = 1");
}

#[test]
fn verdicts_are_stable_across_seeds() {
    let corpus = load_corpus(corpus_path()).unwrap();
    for entry in &corpus.entries {
        let verdicts: Vec<Verdict> = [1, 17, 123]
            .iter()
            .map(|&seed| lecycle::report::analyze(&entry.request(seed)).unwrap().verdict)
            .collect();
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{}: {verdicts:?}", entry.id);
    }
}

#[test]
fn cached_run_matches_fresh_run() {
    let corpus = load_corpus(corpus_path()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cache = ResultCache::open(dir.path()).unwrap();
    let fresh = run_corpus(&corpus, Some(&cache), 4).unwrap();
    let cached = run_corpus(&corpus, Some(&cache), 2).unwrap();
    assert!(cached.outcomes.iter().filter(|o| o.status != EntryStatus::Error).all(|o| o.cached));
    for (a, b) in fresh.outcomes.iter().zip(&cached.outcomes) {
        assert_eq!(a.report.as_ref().map(|r| r.to_json()), b.report.as_ref().map(|r| r.to_json()));
    }
}
