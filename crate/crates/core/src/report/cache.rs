use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{AnalysisReport, AnalysisRequest};
use crate::error::Result;

/// Bumped whenever the report layout or any computed quantity changes.
pub const CACHE_FORMAT: u32 = 1;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Serialize)]
struct KeyMaterial<'a> {
    format: u32,
    version: &'a str,
    polynomial: String,
    vars: Vec<String>,
    frame: Option<Vec<Vec<String>>>,
    seed: u64,
    max_steps: u64,
    max_frames: usize,
    retry_budget: usize,
    timings: bool,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    format: u32,
    key: String,
    report: AnalysisReport,
}

/// Hash of the canonical form of everything the report depends on, so that
/// `x + y` and `y+x` share an entry.
pub fn cache_key(request: &AnalysisRequest) -> Result<String> {
    let (f, frame) = request.resolve()?;
    let material = KeyMaterial {
        format: CACHE_FORMAT,
        version: env!("CARGO_PKG_VERSION"),
        polynomial: f.to_string(),
        vars: f.ring().names().to_vec(),
        frame: frame.map(|fr| fr.matrix_strings()),
        seed: request.seed,
        max_steps: request.max_steps,
        max_frames: request.max_frames,
        retry_budget: request.retry_budget,
        timings: request.timings,
    };
    let bytes = serde_json::to_vec(&material).expect("key material serializes");
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Flat directory of `<key>.json` files.
#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(ResultCache { dir: dir.as_ref().to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report, or `None` on a miss, a format mismatch or a corrupt file.
    pub fn get(&self, key: &str) -> Option<AnalysisReport> {
        let bytes = fs::read(self.path(key)).ok()?;
        let stored: Stored = serde_json::from_slice(&bytes).ok()?;
        (stored.format == CACHE_FORMAT && stored.key == key).then_some(stored.report)
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn put(&self, key: &str, report: &AnalysisReport) -> Result<()> {
        let stored = Stored { format: CACHE_FORMAT, key: key.to_string(), report: report.clone() };
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp)?;
        file.write_all(serde_json::to_string_pretty(&stored).expect("report serializes").as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }

    /// Cached report for `request`, computing and storing it on a miss.
    pub fn analyze(&self, request: &AnalysisRequest) -> Result<(AnalysisReport, bool)> {
        let key = cache_key(request)?;
        if let Some(report) = self.get(&key) {
            return Ok((report, true));
        }
        let report = super::analyze(request)?;
        self.put(&key, &report)?;
        Ok((report, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_canonical() {
        let a = AnalysisRequest::new("x*y + y^2").with_vars(&["x", "y"]);
        let b = AnalysisRequest::new("y^2+y*x").with_vars(&["x", "y"]);
        assert_eq!(cache_key(&a).unwrap(), cache_key(&b).unwrap());
        assert_ne!(cache_key(&a).unwrap(), cache_key(&a.clone().with_seed(1)).unwrap());
        assert_ne!(cache_key(&a).unwrap(), cache_key(&a.clone().with_vars(&["y", "x"])).unwrap());
    }

    #[test]
    fn hits_are_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let req = AnalysisRequest::new("x^3 + y^2").with_vars(&["t", "x", "y"]).with_seed(2);
        let (fresh, hit) = cache.analyze(&req).unwrap();
        assert!(!hit);
        let (cached, hit) = cache.analyze(&req).unwrap();
        assert!(hit);
        assert_eq!(fresh.to_json(), cached.to_json());
    }

    #[test]
    fn stale_formats_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let req = AnalysisRequest::new("x^2 + y^2").with_vars(&["x", "y"]);
        let key = cache_key(&req).unwrap();
        let (report, _) = cache.analyze(&req).unwrap();
        let mut value = serde_json::to_value(Stored { format: CACHE_FORMAT, key: key.clone(), report }).unwrap();
        value["format"] = serde_json::json!(CACHE_FORMAT + 1);
        fs::write(cache.path(&key), value.to_string()).unwrap();
        assert!(cache.get(&key).is_none());
        fs::write(cache.path(&key), "not json").unwrap();
        assert!(cache.get(&key).is_none());
    }
}
