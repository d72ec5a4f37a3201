//! The line-oriented expansion file format.
//!
//! ```text
//! # comment
//! !kind hjf
//! !weight 10
//! !index 1
//! !parity +
//! !trunc 180
//! 1 -1 0 1 1
//! ```
//!
//! Coefficient lines are `n num den` (qexp), `n a1 a2 num den` (hjf) or
//! `n a1 a2 m num den` (hmf), with r = (a1 + a2 i)/2. Missing keys are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::hjf::{discriminant, HJForm, HalfGauss, Parity};
use crate::hmf::{HKey, HMForm};
use crate::qexp::QSeries;

/// A loaded expansion of one of the three kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Q(QSeries),
    J(HJForm),
    H(HMForm),
}

impl Expansion {
    pub fn kind(&self) -> &'static str {
        match self {
            Expansion::Q(_) => "qexp",
            Expansion::J(_) => "hjf",
            Expansion::H(_) => "hmf",
        }
    }
}

/// An expansion with the comment lines that preceded its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionFile {
    pub comments: Vec<String>,
    pub body: Expansion,
}

struct Parser<'a> {
    path: &'a str,
}

impl Parser<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { path: self.path.to_string(), line, msg: msg.into() }
    }

    fn int(&self, line: usize, tok: &str) -> Result<i64> {
        tok.parse().map_err(|_| self.err(line, format!("expected an integer, found {tok:?}")))
    }

    fn rat(&self, line: usize, num: &str, den: &str) -> Result<Rat> {
        if let (Ok(a), Ok(b)) = (num.parse::<i64>(), den.parse::<i64>()) {
            if b <= 0 {
                return Err(self.err(line, "denominator must be positive"));
            }
            if a.gcd(&b) != 1 {
                return Err(self.err(line, "fraction not in lowest terms"));
            }
            return Ok(Rat::new(a, b));
        }
        let num: BigInt = num.parse().map_err(|_| self.err(line, format!("bad numerator {num:?}")))?;
        let den: BigInt = den.parse().map_err(|_| self.err(line, format!("bad denominator {den:?}")))?;
        if !den.is_positive() {
            return Err(self.err(line, "denominator must be positive"));
        }
        if !num.gcd(&den).is_one() {
            return Err(self.err(line, "fraction not in lowest terms"));
        }
        Ok(Rat::new(num, den))
    }
}

/// Range and support rule for one key: 0 <= n, depth <= trunc, N(r) <= mn.
fn key_violation(n: i64, r: HalfGauss, m: i64, depth: i64, trunc: i64) -> Option<String> {
    if n < 0 || m < 0 || depth > trunc {
        Some(format!("outside truncation {trunc}"))
    } else if discriminant(n, r, m) < 0 {
        Some(format!("support N(r) <= {m}n"))
    } else {
        None
    }
}

/// Parses file contents; `path` is used for error locations only.
pub fn parse(text: &str, path: &str) -> Result<ExpansionFile> {
    let ps = Parser { path };
    let mut comments = Vec::new();
    let mut header: HashMap<String, (usize, String)> = HashMap::new();
    let mut records: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            if header.is_empty() && records.is_empty() {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
            continue;
        }
        if let Some(h) = t.strip_prefix('!') {
            if !records.is_empty() {
                return Err(ps.err(line, "header line after coefficient records"));
            }
            let mut it = h.splitn(2, char::is_whitespace);
            let name = it.next().unwrap_or_default().to_string();
            let value = it.next().unwrap_or_default().trim().to_string();
            if header.insert(name.clone(), (line, value)).is_some() {
                return Err(ps.err(line, format!("duplicate header !{name}")));
            }
            continue;
        }
        records.push((line, t.split_whitespace().collect()));
    }
    let get = |name: &str| -> Result<(usize, &str)> {
        header.get(name).map(|(l, v)| (*l, v.as_str())).ok_or_else(|| ps.err(0, format!("missing header !{name}")))
    };
    let int_header = |name: &str| -> Result<i64> {
        let (l, v) = get(name)?;
        ps.int(l, v)
    };
    let (kline, kind) = get("kind")?;
    let allowed: &[&str] = match kind {
        "qexp" => &["kind", "weight", "trunc", "quasi"],
        "hjf" => &["kind", "weight", "index", "parity", "trunc"],
        "hmf" => &["kind", "weight", "trunc_trace"],
        other => return Err(ps.err(kline, format!("unknown kind {other:?}"))),
    };
    if let Some((name, (l, _))) = header.iter().find(|(n, _)| !allowed.contains(&n.as_str())) {
        return Err(ps.err(*l, format!("header !{name} not valid for kind {kind}")));
    }
    let weight = int_header("weight")?;
    let located = |e: Error, line: usize| match e {
        Error::InvariantViolation { key, rule } => ps.err(line, format!("invariant violated at {key}: {rule}")),
        other => other,
    };
    let body = match kind {
        "qexp" => {
            let trunc = int_header("trunc")?;
            let (ql, quasi) = get("quasi")?;
            let quasi = match quasi {
                "true" => true,
                "false" => false,
                other => return Err(ps.err(ql, format!("!quasi must be true or false, found {other:?}"))),
            };
            let mut coeffs = BTreeMap::new();
            for (line, toks) in &records {
                let [n, num, den] = toks[..] else {
                    return Err(ps.err(*line, format!("expected 3 fields, found {}", toks.len())));
                };
                let n = ps.int(*line, n)?;
                if n < 0 || n > trunc {
                    return Err(ps.err(*line, format!("n = {n} outside 0..={trunc}")));
                }
                if coeffs.insert(n, ps.rat(*line, num, den)?).is_some() {
                    return Err(ps.err(*line, format!("duplicate key n={n}")));
                }
            }
            Expansion::Q(QSeries::new(weight, quasi, trunc, coeffs).map_err(|e| located(e, 0))?)
        }
        "hjf" => {
            let index = int_header("index")?;
            let trunc = int_header("trunc")?;
            let (pl, parity) = get("parity")?;
            let parity = match parity {
                "+" => Parity::Plus,
                "-" => Parity::Minus,
                other => return Err(ps.err(pl, format!("!parity must be + or -, found {other:?}"))),
            };
            let mut coeffs = BTreeMap::new();
            for (line, toks) in &records {
                let [n, a1, a2, num, den] = toks[..] else {
                    return Err(ps.err(*line, format!("expected 5 fields, found {}", toks.len())));
                };
                let key = (ps.int(*line, n)?, HalfGauss::new(ps.int(*line, a1)?, ps.int(*line, a2)?));
                let c = ps.rat(*line, num, den)?;
                if let Some(rule) = key_violation(key.0, key.1, index, key.0, trunc) {
                    return Err(ps.err(*line, format!("invariant violated at n={}, r={}: {rule}", key.0, key.1)));
                }
                if coeffs.insert(key, c).is_some() {
                    return Err(ps.err(*line, format!("duplicate key n={}, r={}", key.0, key.1)));
                }
            }
            let f = HJForm::new(weight, index, parity, trunc, coeffs).map_err(|e| located(e, 0))?;
            validate_hjf(&f)?;
            Expansion::J(f)
        }
        _ => {
            let trunc = int_header("trunc_trace")?;
            let mut coeffs: BTreeMap<HKey, Rat> = BTreeMap::new();
            for (line, toks) in &records {
                let [n, a1, a2, m, num, den] = toks[..] else {
                    return Err(ps.err(*line, format!("expected 6 fields, found {}", toks.len())));
                };
                let key = (ps.int(*line, n)?, HalfGauss::new(ps.int(*line, a1)?, ps.int(*line, a2)?), ps.int(*line, m)?);
                let c = ps.rat(*line, num, den)?;
                if let Some(rule) = key_violation(key.0, key.1, key.2, key.0 + key.2, trunc) {
                    return Err(ps.err(*line, format!("invariant violated at {}: {rule}", crate::hmf::fmt_key(key))));
                }
                if coeffs.insert(key, c).is_some() {
                    return Err(ps.err(*line, format!("duplicate key {}", crate::hmf::fmt_key(key))));
                }
            }
            let f = HMForm::from_coeffs(weight, trunc, coeffs)?;
            validate_hmf(&f)?;
            Expansion::H(f)
        }
    };
    Ok(ExpansionFile { comments, body })
}

/// Unit rule and shift-class invariance.
pub fn validate_hjf(f: &HJForm) -> Result<()> {
    if let Some(v) = f.unit_rule_violations().into_iter().next() {
        return Err(Error::InvariantViolation { key: v, rule: format!("unit rule for (k, parity) = ({}, {})", f.weight(), f.parity().symbol()) });
    }
    if f.index() > 0 {
        if let Some(v) = f.check_shift_class().violations.into_iter().next() {
            return Err(Error::InvariantViolation { key: v, rule: "shift-class invariance".into() });
        }
    }
    Ok(())
}

/// n <-> m symmetry, conjugation and unit invariance.
pub fn validate_hmf(f: &HMForm) -> Result<()> {
    match f.symmetry_violations().into_iter().next() {
        Some(v) => Err(Error::InvariantViolation { key: v, rule: "symmetry A(n, r, m) = A(m, r, n), conjugation and units".into() }),
        None => Ok(()),
    }
}

fn push_rat(out: &mut String, c: &Rat) {
    let _ = write!(out, " {} {}", c.numer(), c.denom());
}

/// Canonical text: comments, header, nonzero coefficients in key order.
pub fn write(file: &ExpansionFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    match &file.body {
        Expansion::Q(f) => {
            let _ = write!(out, "!kind qexp\n!weight {}\n!trunc {}\n!quasi {}\n", f.weight(), f.trunc(), f.is_quasi());
            for (n, c) in f.coeffs() {
                let _ = write!(out, "{n}");
                push_rat(&mut out, c);
                out.push('\n');
            }
        }
        Expansion::J(f) => {
            let _ = write!(
                out,
                "!kind hjf\n!weight {}\n!index {}\n!parity {}\n!trunc {}\n",
                f.weight(),
                f.index(),
                f.parity().symbol(),
                f.trunc()
            );
            for ((n, r), c) in f.coeffs() {
                let _ = write!(out, "{n} {} {}", r.a1, r.a2);
                push_rat(&mut out, c);
                out.push('\n');
            }
        }
        Expansion::H(f) => {
            let _ = write!(out, "!kind hmf\n!weight {}\n!trunc_trace {}\n", f.weight(), f.trunc());
            for ((n, r, m), c) in f.to_map() {
                let _ = write!(out, "{n} {} {} {m}", r.a1, r.a2);
                push_rat(&mut out, &c);
                out.push('\n');
            }
        }
    }
    out
}

pub fn load(path: &Path) -> Result<ExpansionFile> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingAsset(name.clone()),
        _ => Error::Io { path: name.clone(), msg: e.to_string() },
    })?;
    parse(&text, &name)
}

pub fn save(path: &Path, file: &ExpansionFile) -> Result<()> {
    std::fs::write(path, write(file)).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })
}
