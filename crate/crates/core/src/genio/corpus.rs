//! The shipped generator expansions and their consistency checks.

use std::collections::HashMap;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::derive::{derive_chi8, derive_f10, derive_f12};
use super::format::{load, Expansion};
use crate::arith::{Prime, Rat};
use crate::error::{Error, Result};
use crate::hjf::{HJForm, HalfGauss};
use crate::hmf::HMForm;
use crate::modp::{HermitianBasis, JacobiBasis};
use crate::qexp::eisenstein;

/// Index-1 generator files by weight.
pub const HJF_FILES: [(i64, &str); 4] = [(4, "phi4.hjf"), (6, "phi6.hjf"), (8, "phi8.hjf"), (10, "phi10.hjf")];
/// Degree-2 Eisenstein files by weight.
pub const HMF_FILES: [(i64, &str); 5] = [(4, "h4.hmf"), (6, "h6.hmf"), (8, "h8.hmf"), (10, "h10.hmf"), (12, "h12.hmf")];

/// Data directory: explicit flag, then `HERMOD_DATA`, then the repository's `data/`.
pub fn resolve_data_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os("HERMOD_DATA") {
        return PathBuf::from(p);
    }
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    bundled.canonicalize().unwrap_or(bundled)
}

/// Lazily loaded corpus; every file is parsed and validated at most once.
pub struct Corpus {
    dir: PathBuf,
    hjf: Mutex<HashMap<i64, Arc<HJForm>>>,
    hmf: Mutex<HashMap<(String, i64), Arc<HMForm>>>,
}

impl Corpus {
    pub fn open(dir: impl Into<PathBuf>) -> Corpus {
        Corpus { dir: dir.into(), hjf: Mutex::default(), hmf: Mutex::default() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The index-1 generator of weight 4, 6, 8 or 10.
    pub fn phi(&self, k: i64) -> Result<Arc<HJForm>> {
        if let Some(f) = self.hjf.lock().unwrap().get(&k) {
            return Ok(f.clone());
        }
        let name = HJF_FILES.iter().find(|(w, _)| *w == k).ok_or_else(|| Error::MissingAsset(format!("phi{k}")))?.1;
        let f = match load(&self.dir.join(name))?.body {
            Expansion::J(f) if f.weight() == k && f.index() == 1 => Arc::new(f),
            other => return Err(Error::Unsupported(format!("{name} holds a {} expansion of the wrong shape", other.kind()))),
        };
        self.hjf.lock().unwrap().insert(k, f.clone());
        Ok(f)
    }

    fn hmf_file(&self, k: i64) -> Result<Arc<HMForm>> {
        let key = (format!("h{k}"), -1);
        if let Some(f) = self.hmf.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let name = HMF_FILES.iter().find(|(w, _)| *w == k).ok_or_else(|| Error::MissingAsset(format!("h{k}")))?.1;
        let f = match load(&self.dir.join(name))?.body {
            Expansion::H(f) if f.weight() == k => Arc::new(f),
            other => return Err(Error::Unsupported(format!("{name} holds a {} expansion of the wrong shape", other.kind()))),
        };
        self.hmf.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// Truncation declared in a file header, without parsing the body.
    fn declared_trunc(&self, name: &str, header: &str) -> Result<i64> {
        let path = self.dir.join(name);
        let shown = path.display().to_string();
        let file = std::fs::File::open(&path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingAsset(shown.clone()),
            _ => Error::Io { path: shown.clone(), msg: e.to_string() },
        })?;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::Io { path: shown.clone(), msg: e.to_string() })?;
            if let Some(v) = line.strip_prefix(header) {
                return v.trim().parse().map_err(|_| Error::Parse { path: shown, line: i + 1, msg: format!("bad {header}") });
            }
            if !line.starts_with('!') && !line.starts_with('#') {
                break;
            }
        }
        Err(Error::Parse { path: shown, line: 1, msg: format!("missing {header}") })
    }

    /// Largest trace truncation shared by all degree-2 files.
    pub fn hmf_trunc(&self) -> Result<i64> {
        HMF_FILES.iter().map(|(_, name)| self.declared_trunc(name, "!trunc_trace ")).try_fold(i64::MAX, |a, t| t.map(|t| a.min(t)))
    }

    /// Smallest truncation of the index-1 files.
    pub fn hjf_trunc(&self) -> Result<i64> {
        HJF_FILES.iter().map(|(_, name)| self.declared_trunc(name, "!trunc ")).try_fold(i64::MAX, |a, t| t.map(|t| a.min(t)))
    }

    /// Degree-2 generator by name (h4..h12, chi8, f10, f12) truncated to trace t0.
    pub fn hmf(&self, name: &str, t0: i64) -> Result<Arc<HMForm>> {
        let key = (name.to_string(), t0);
        if let Some(f) = self.hmf.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let have = self.hmf_trunc()?;
        if t0 > have {
            return Err(Error::InsufficientTruncation { need: t0, have });
        }
        let h = |k: i64| self.hmf_file(k).map(|f| f.truncate(t0));
        let f = match name {
            "h4" => h(4)?,
            "h6" => h(6)?,
            "h8" => h(8)?,
            "h10" => h(10)?,
            "h12" => h(12)?,
            "chi8" => derive_chi8(&h(8)?, &h(4)?)?,
            "f10" => derive_f10(&h(10)?, &h(4)?, &h(6)?)?,
            "f12" => derive_f12(&h(12)?, &h(4)?, &h(8)?, &h(6)?)?,
            other => return Err(Error::MissingAsset(other.to_string())),
        };
        let f = Arc::new(f);
        self.hmf.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    pub fn index_one_basis(&self, p: Prime) -> Result<JacobiBasis> {
        // the four files are independent; parse them concurrently
        std::thread::scope(|s| {
            let jobs: Vec<_> = HJF_FILES.iter().map(|&(k, _)| s.spawn(move || self.phi(k).map(|_| ()))).collect();
            jobs.into_iter().try_for_each(|j| j.join().expect("loader thread panicked"))
        })?;
        let (a, b, c, d) = (self.phi(4)?, self.phi(6)?, self.phi(8)?, self.phi(10)?);
        JacobiBasis::index_one(p, &a, &b, &c, &d)
    }

    pub fn hermitian_basis(&self, p: Prime, t0: i64) -> Result<HermitianBasis> {
        let g = ["h4", "h6", "chi8", "f10", "f12"].map(|n| self.hmf(n, t0));
        let [a, b, c, d, e] = g;
        let (a, b, c, d, e) = (a?, b?, c?, d?, e?);
        HermitianBasis::new(p, t0, [&a, &b, &c, &d, &e])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub check: String,
    pub passed: bool,
    pub detail: String,
    /// Coefficient depth the check ran at (n for q-series and Jacobi forms, trace for degree 2).
    pub truncation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub data_dir: String,
    pub entries: Vec<ManifestEntry>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "corpus at {}", self.data_dir)?;
        for e in &self.entries {
            let t = e.truncation.map(|t| format!(" [truncation {t}]")).unwrap_or_default();
            writeln!(f, "  {} {}: {}{t}", if e.passed { "PASS" } else { "FAIL" }, e.check, e.detail)?;
        }
        write!(f, "{}", if self.all_passed() { "all checks passed" } else { "some checks FAILED" })
    }
}

/// Loads every shipped file and runs the structural and arithmetic cross-checks.
pub fn verify_corpus(dir: &Path) -> VerifyReport {
    let corpus = Corpus::open(dir);
    let mut entries = Vec::new();
    let mut push = |check: &str, r: std::result::Result<(bool, String), Error>, t: Option<i64>| {
        let (passed, detail) = r.unwrap_or_else(|e| (false, e.to_string()));
        entries.push(ManifestEntry { check: check.to_string(), passed, detail, truncation: t });
    };
    for (k, name) in HJF_FILES {
        let r = corpus.phi(k);
        let t = r.as_ref().ok().map(|f| f.trunc());
        push(
            &format!("load {name}"),
            r.map(|f| (true, format!("weight {}, index 1, parity {}, {} coefficients", k, f.parity().symbol(), f.coeffs().len()))),
            t,
        );
        if let Ok(f) = corpus.phi(k) {
            push(&format!("{name} reaches n = 120"), Ok((f.trunc() >= 120, format!("truncation {}", f.trunc()))), t);
        }
    }
    for (k, name) in HMF_FILES {
        let r = corpus.hmf_file(k);
        let t = r.as_ref().ok().map(|f| f.trunc());
        push(&format!("load {name}"), r.map(|f| (true, format!("weight {k}, {} coefficients", f.iter().count()))), t);
    }
    let t0 = corpus.hmf_trunc().unwrap_or(0);
    for name in ["chi8", "f10", "f12"] {
        push(&format!("{name} is a cusp form"), corpus.hmf(name, t0).map(|_| (true, "exact zero at every singular T".into())), Some(t0));
    }
    if let Ok(chi8) = corpus.hmf("chi8", t0) {
        for (a1, a2, want) in [(1, 1, 1), (-1, 0, -486)] {
            let got = chi8.coeff(1, HalfGauss::new(a1, a2), 1);
            push(
                &format!("chi8 coefficient A(1, {}, 1)", HalfGauss::new(a1, a2)),
                Ok((got == Rat::from_int(want), format!("expected {want}, found {got}"))),
                Some(t0),
            );
        }
    }
    let five = Prime::new(5).expect("5 is prime");
    push(
        "H4 = 1 mod 5",
        corpus.hmf_file(4).and_then(|h4| {
            let mut bad = None;
            for ((n, r, m), c) in h4.iter() {
                let expect = u64::from(n == 0 && m == 0);
                if c.reduce_mod_p(five)?.residue() != expect {
                    bad = Some(crate::hmf::fmt_key((n, r, m)));
                    break;
                }
            }
            Ok(match bad {
                None => (true, "all stored coefficients".into()),
                Some(k) => (false, format!("coefficient {k} is nonzero mod 5")),
            })
        }),
        corpus.hmf_file(4).ok().map(|f| f.trunc()),
    );
    let tq = corpus.hjf_trunc().unwrap_or(120);
    for p in [5u64, 7, 11, 13] {
        let prime = Prime::new(p).expect("prime");
        let e = eisenstein(p as i64 - 1, tq);
        let ok = e.reduce(prime).map(|v| v.iter().enumerate().all(|(n, &c)| c == u64::from(n == 0)));
        push(&format!("E{} = 1 mod {p}", p - 1), ok.map(|b| (b, format!("coefficients n <= {tq}"))), Some(tq));
    }
    VerifyReport { data_dir: dir.display().to_string(), entries }
}
