//! Resolving `--form` arguments: built-in expressions or expansion files.

use std::path::Path;

use hermod_core::expr::{Context, Expr};
use hermod_core::genio::{self, Corpus, Expansion};
use hermod_core::{Error, HJForm, HMForm, Result};

/// Evaluation scratch depth used to learn the weight and index of an expression.
const PROBE: i64 = 2;

fn as_file(form: &str) -> Option<&Path> {
    let path = Path::new(form);
    let ext = path.extension().and_then(|e| e.to_str());
    matches!(ext, Some("hjf" | "hmf" | "qexp")).then_some(path)
}

/// Depth actually used for a Jacobi form together with the warning to print, if any.
pub struct Depth {
    pub used: i64,
    pub needed: i64,
    pub warning: Option<String>,
}

/// Loads a Jacobi form, truncated at `explicit` or else at `need(weight, index)`
/// when the data reaches that far, otherwise as deep as the data goes.
pub fn hjf(corpus: &Corpus, form: &str, explicit: Option<i64>, need: impl Fn(i64, i64) -> i64) -> Result<(HJForm, Depth)> {
    if let Some(path) = as_file(form) {
        let f = match genio::load(path)?.body {
            Expansion::J(f) => f,
            other => return Err(Error::Expr(format!("{form} holds a {} expansion, not a Jacobi form", other.kind()))),
        };
        let needed = need(f.weight(), f.index());
        let used = explicit.unwrap_or(needed).min(f.trunc());
        let warning = (used < needed).then(|| format!("{form}: data reaches n = {}, Sturm depth is {needed}", f.trunc()));
        return Ok((f.truncate(used), Depth { used, needed, warning }));
    }
    let expr = Expr::parse(form)?;
    let uses_data = expr.names().iter().any(|n| n.starts_with("phi"));
    let probe = |trunc| expr.eval(&Context { corpus, hjf_trunc: trunc, hmf_trunc: 1 })?.into_hjf();
    let shape = probe(PROBE)?;
    let needed = need(shape.weight(), shape.index());
    let have = if uses_data { corpus.hjf_trunc()? } else { i64::MAX };
    let used = explicit.unwrap_or(needed).min(have);
    let warning = (used < needed)
        .then(|| format!("data in {} reaches n = {have}, Sturm depth is {needed}; results hold at truncation", corpus.dir().display()));
    Ok((probe(used)?, Depth { used, needed, warning }))
}

/// Loads a degree-2 form at trace truncation `t0`.
pub fn hmf(corpus: &Corpus, form: &str, t0: i64) -> Result<HMForm> {
    if let Some(path) = as_file(form) {
        return match genio::load(path)?.body {
            Expansion::H(f) if f.trunc() >= t0 => Ok(f.truncate(t0)),
            Expansion::H(f) => Err(Error::InsufficientTruncation { need: t0, have: f.trunc() }),
            other => Err(Error::Expr(format!("{form} holds a {} expansion, not a degree-2 form", other.kind()))),
        };
    }
    Expr::parse(form)?.eval(&Context { corpus, hjf_trunc: PROBE, hmf_trunc: t0 })?.into_hmf()
}
