//! Acceptance criteria 1-9. Runs without the libtest harness and prints one
//! line per criterion; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hermod_core::arith::{Prime, Rat};
use hermod_core::expr::{Context, Expr};
use hermod_core::genio::{
    derive_chi8, derive_f10, derive_f12, load, parse, save, sturm_eta, write, Corpus, HJF_FILES, HMF_FILES,
};
use hermod_core::hjf::{HJForm, HalfGauss};
use hermod_core::hmf::HMForm;
use hermod_core::modp::{
    heat_cycle, heat_cycle_diagnostics, hmf_filtration, ramanujan_scan_hjf, ramanujan_scan_hmf, up_test_hjf,
    up_test_hmf, Filtration, KeySpace, ReducedHmf, Verdict,
};
use hermod_core::qexp::{eisenstein, QSeries};
use hermod_core::{Error, Result};

const HMF_NAMES: [&str; 8] = ["h4", "h6", "h8", "h10", "h12", "chi8", "f10", "f12"];

/// Collected failures of one criterion plus a one-line summary.
#[derive(Default)]
struct Findings {
    failures: Vec<String>,
    summary: Vec<String>,
}

impl Findings {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn phi(corpus: &Corpus, k: i64, depth: i64) -> Result<HJForm> {
    Ok(corpus.phi(k)?.truncate(depth.min(corpus.hjf_trunc()?)))
}

fn hjf_expr(corpus: &Corpus, src: &str, depth: i64) -> Result<HJForm> {
    let ctx = Context { corpus, hjf_trunc: depth.min(corpus.hjf_trunc()?), hmf_trunc: 1 };
    Expr::parse(src)?.eval(&ctx)?.into_hjf()
}

fn hmf_expr(corpus: &Corpus, src: &str, t0: i64) -> Result<HMForm> {
    Expr::parse(src)?.eval(&Context { corpus, hjf_trunc: 1, hmf_trunc: t0 })?.into_hmf()
}

fn criterion_1(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    for (p, want) in [(5, Verdict::Holds), (7, Verdict::Fails), (11, Verdict::Fails)] {
        let need = sturm_eta(10 + p * p - 1, 1);
        let form = phi(corpus, 10, need)?;
        let mut basis = if p > 10 { Some(corpus.index_one_basis(prime(p as u64))?) } else { None };
        let r = up_test_hjf(&form, prime(p as u64), basis.as_mut(), "phi10")?;
        f.check(r.verdict() == want, format!("U({p}): expected {want}, got {}", r.verdict()));
        f.check(r.consistent, format!("U({p}): methods disagree"));
        f.check(r.direct.rigorous && r.criterion.rigorous, format!("U({p}): depth {} below {need}", r.direct.verified_depth));
        if let Some(c) = &r.cross_check {
            f.check(c.implied == Some(want), format!("U({p}): filtration of L^{} is {}", c.power, c.filtration.filtration));
        }
        f.note(format!("U({p}) {}", r.verdict()));
    }
    Ok(())
}

fn criterion_2(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let need = sturm_eta(10 + 24, 2);
    let form = hjf_expr(corpus, "raise(phi10, 1, 1)", need)?;
    f.check(form.index() == 2, format!("index {}", form.index()));
    let r = up_test_hjf(&form, prime(5), None, "raise(phi10, 1, 1)")?;
    f.check(r.verdict() == Verdict::Holds, format!("U(5) {}", r.verdict()));
    f.check(r.consistent, "methods disagree");
    f.check(r.direct.rigorous, format!("depth {} below {need}", r.direct.verified_depth));
    f.note(format!("U(5) {} at depth {} (Sturm depth {need})", r.verdict(), r.direct.verified_depth));
    Ok(())
}

fn criterion_3(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let cases: [(&str, i64, u64, &[u64]); 3] = [
        ("phi8", 8, 7, &[1, 2, 4]),
        ("phi8", 8, 13, &[1, 3, 4, 9, 10, 12]),
        ("(e6*phi4 - e4*phi6)/24", 10, 7, &[1, 2, 4]),
    ];
    for (src, k, p, want) in cases {
        let need = sturm_eta(k + ((p + 1) * (p + 1) / 2) as i64, 1);
        let form = hjf_expr(corpus, src, need)?;
        let scan = ramanujan_scan_hjf(&form, prime(p), src)?;
        f.check(scan.congruent == want, format!("{src} mod {p}: expected {want:?}, got {:?}", scan.congruent));
        f.check(scan.mismatches.is_empty(), format!("{src} mod {p}: criterion mismatches {:?}", scan.mismatches));
        f.check(scan.rigorous && scan.verified_depth >= need, format!("{src} mod {p}: depth {}", scan.verified_depth));
        f.note(format!("{src} mod {p} -> {:?} (depth {})", scan.congruent, scan.verified_depth));
    }
    Ok(())
}

fn criterion_4(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let mut checked = 0;
    for p in [5, 7, 11, 13] {
        for &(k, _) in &HJF_FILES {
            let scan = ramanujan_scan_hjf(corpus.phi(k)?.as_ref(), prime(p), "phi")?;
            checked += scan.entries.len();
            f.check(scan.mismatches.is_empty(), format!("phi{k} mod {p}: mismatches at {:?}", scan.mismatches));
        }
        let t0 = corpus.hmf_trunc()?;
        for name in HMF_NAMES {
            let scan = ramanujan_scan_hmf(corpus.hmf(name, t0)?.as_ref(), prime(p), t0, name)?;
            checked += scan.entries.len();
            f.check(scan.mismatches.is_empty(), format!("{name} mod {p}: mismatches at {:?}", scan.mismatches));
        }
    }
    f.note(format!("{checked} (form, p, b) triples, {} mismatches", f.failures.len()));
    Ok(())
}

fn criterion_5(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let t0 = 10;
    let chi8 = corpus.hmf("chi8", t0)?;
    let space = KeySpace::new(t0);
    let red5 = ReducedHmf::new(&chi8, prime(5), &space)?;
    f.check(red5.d_pow(4).coeffs == red5.coeffs, "D^4(chi8) differs from chi8 mod 5");
    let up5 = up_test_hmf(&chi8, prime(5), t0, None, "chi8")?;
    f.check(up5.verdict() == Verdict::Holds && up5.consistent, format!("U(5) {}", up5.verdict()));
    for (p, power, want) in [(7, 1, 10), (11, 5, 18)] {
        let mut basis = corpus.hermitian_basis(prime(p), t0)?;
        let g = ReducedHmf::new(&chi8, prime(p), basis.space())?.d_pow(power);
        let r = hmf_filtration(&g, &mut basis, "chi8")?;
        f.check(r.filtration == Filtration::Weight(want), format!("filtration of D^{power}(chi8) mod {p}: {}", r.filtration));
        f.note(format!("filtration D^{power} mod {p} = {}", r.filtration));
    }
    for p in [7, 11] {
        let r = up_test_hmf(&chi8, prime(p), t0, None, "chi8")?;
        f.check(r.verdict() == Verdict::Fails && r.consistent, format!("U({p}) {}", r.verdict()));
    }
    for (a1, a2, want) in [(1, 1, 1), (-1, 0, -486)] {
        let got = chi8.coeff(1, HalfGauss::new(a1, a2), 1);
        let r = HalfGauss::new(a1, a2);
        f.check(got == Rat::from_int(want), format!("A(1, {r}, 1): expected {want}, got {got}"));
        f.note(format!("A(1, {r}, 1) = {got}"));
    }
    Ok(())
}

fn criterion_6(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let t0 = 10;
    let space = KeySpace::new(t0);
    let big_f = hmf_expr(corpus, "chi8 - 6*h4^2", t0)?;
    let red = ReducedHmf::new(&big_f, prime(7), &space)?;
    f.check(!red.is_zero(), "F vanishes mod 7");
    f.check(red.d_pow(1).is_zero(), "D(F) is not zero mod 7");
    let cases: [(&str, u64, &[u64]); 4] = [
        ("chi8 - 6*h4^2", 7, &[1, 2, 3, 4, 5, 6]),
        ("f10", 5, &[1, 4]),
        ("h4*f10", 5, &[1, 4]),
        ("h4^2*h6 + h6*chi8", 5, &[1, 4]),
    ];
    for (src, p, want) in cases {
        let scan = ramanujan_scan_hmf(&hmf_expr(corpus, src, t0)?, prime(p), t0, src)?;
        f.check(scan.congruent == want, format!("{src} mod {p}: expected {want:?}, got {:?}", scan.congruent));
        f.check(scan.mismatches.is_empty(), format!("{src} mod {p}: mismatches {:?}", scan.mismatches));
        f.check(!scan.rigorous, format!("{src} mod {p}: claims rigor at trace {t0}"));
        f.note(format!("{src} mod {p} -> {:?}", scan.congruent));
    }
    Ok(())
}

fn criterion_7(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let mut cycles = 0;
    // jump law, cycle shape and the weight congruence of filtrations
    for p in [5u64, 7, 11, 13] {
        let mut basis = corpus.index_one_basis(prime(p))?;
        for &(k, _) in &HJF_FILES {
            let form = phi(corpus, k, sturm_eta(k + (p * p) as i64 - 1, 1))?;
            let c = heat_cycle(&form, prime(p), &mut basis, &format!("phi{k}"))?;
            cycles += 1;
            f.check(c.violations.is_empty(), format!("phi{k} mod {p}: {}", c.violations.join("; ")));
            f.check(c.periodic, format!("phi{k} mod {p}: L^p differs from L"));
            let q = p as i64 - 1;
            if let Some(w) = c.initial.weight() {
                f.check((w - k).rem_euclid(q) == 0, format!("phi{k} mod {p}: filtration {w} not = {k} mod {q}"));
            }
            for s in &c.steps {
                if let Some(w) = s.filtration.weight() {
                    f.check((w - s.weight_bound).rem_euclid(q) == 0, format!("phi{k} mod {p}, L^{}: filtration {w}", s.j));
                }
            }
            let scan = ramanujan_scan_hjf(&form, prime(p), "phi")?;
            if !scan.congruent.is_empty() && !scan.heat_vanishes {
                let d = heat_cycle_diagnostics(&c, &scan.congruent);
                f.check(d.ok(), format!("phi{k} mod {p}: cycle shape {:?}", d.checks));
            }
        }
    }
    // filtration cross-checks of U(p)
    let mut cross = 0;
    for p in [5u64, 7, 11, 13] {
        let mut basis = corpus.index_one_basis(prime(p))?;
        for &(k, _) in HJF_FILES.iter().filter(|(k, _)| (p as i64) > *k) {
            let form = phi(corpus, k, sturm_eta(k + (p * p) as i64 - 1, 1))?;
            let r = up_test_hjf(&form, prime(p), Some(&mut basis), "phi")?;
            cross += 1;
            f.check(r.consistent, format!("phi{k} U({p}): {r}"));
            let implied = r.cross_check.as_ref().and_then(|c| c.implied);
            f.check(implied == Some(r.verdict()), format!("phi{k} U({p}): filtration implies {implied:?}"));
        }
    }
    let t0 = 10;
    for p in [5u64, 7, 11, 13] {
        let mut basis = corpus.hermitian_basis(prime(p), t0)?;
        for name in HMF_NAMES {
            let form = corpus.hmf(name, t0)?;
            if (p as i64) <= form.weight() {
                continue;
            }
            match up_test_hmf(&form, prime(p), t0, Some(&mut basis), name) {
                Err(Error::MissingWitness) => {}
                r => {
                    let r = r?;
                    cross += 1;
                    f.check(r.consistent, format!("{name} U({p}): {r}"));
                }
            }
        }
    }
    // emptiness guards
    let (mut guards, mut skipped) = (0, 0);
    for p in [5u64, 7, 11, 13, 17, 19] {
        for &(k, _) in &HJF_FILES {
            let scan = ramanujan_scan_hjf(&phi(corpus, k, 180)?, prime(p), "phi")?;
            guards += scan.guard.applicable as usize;
            f.check(scan.guard.satisfied, format!("phi{k} mod {p}: guard violated by {:?}", scan.congruent));
        }
        for name in HMF_NAMES {
            // F12 carries 19 in a denominator; congruences mod 19 are not defined for it
            let scan = match ramanujan_scan_hmf(corpus.hmf(name, t0)?.as_ref(), prime(p), t0, name) {
                Err(Error::NotPIntegral { .. }) => {
                    skipped += 1;
                    continue;
                }
                r => r?,
            };
            guards += scan.guard.applicable as usize;
            f.check(scan.guard.satisfied, format!("{name} mod {p}: guard violated by {:?}", scan.congruent));
        }
    }
    let phi8 = ramanujan_scan_hjf(corpus.phi(8)?.as_ref(), prime(17), "phi8")?;
    f.check(phi8.guard.applicable && phi8.congruent.is_empty(), format!("phi8 mod 17: {:?}", phi8.congruent));
    f.note(format!("{cycles} heat cycles, {cross} U(p) cross-checks, {guards} applicable guards ({skipped} scans skipped as not p-integral)"));
    Ok(())
}

fn schoolbook(a: &QSeries, b: &QSeries) -> Vec<Rat> {
    let (da, db) = (a.dense(), b.dense());
    let t = da.len().min(db.len());
    (0..t).map(|n| (0..=n).fold(Rat::zero(), |acc, i| &acc + &(&da[i] * &db[n - i]))).collect()
}

fn criterion_8(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let (e4, e6) = (eisenstein(4, 180), eisenstein(6, 180));
    let prod = e4.mul(&e6);
    let oracle = schoolbook(&e4, &e6);
    f.check(oracle.iter().enumerate().all(|(n, c)| prod.coeff(n as i64) == *c), "E4*E6 differs from schoolbook");
    f.check(prod == eisenstein(10, 180), "E4*E6 differs from E10");
    // q-series times Jacobi form, and Jacobi form times Jacobi form, against pairwise sums
    let depth = 24;
    let phi4 = phi(corpus, 4, depth)?;
    let e4s = e4.truncate(depth);
    let mut naive: BTreeMap<(i64, HalfGauss), Rat> = BTreeMap::new();
    for (&(n, r), c) in phi4.coeffs() {
        for (&i, x) in e4s.coeffs().range(..=depth - n) {
            let slot = naive.entry((n + i, r)).or_default();
            *slot = &*slot + &(c * x);
        }
    }
    naive.retain(|_, c| !c.is_zero());
    f.check(phi4.mul_qseries(&e4s).coeffs() == &naive, "E4*phi4 differs from pairwise sums");
    let small = phi(corpus, 4, 8)?;
    let mut naive: BTreeMap<(i64, HalfGauss), Rat> = BTreeMap::new();
    for (&(n1, r1), a) in small.coeffs() {
        for (&(n2, r2), b) in small.coeffs().iter().filter(|((n2, _), _)| n1 + n2 <= 8) {
            let slot = naive.entry((n1 + n2, HalfGauss::new(r1.a1 + r2.a1, r1.a2 + r2.a2))).or_default();
            *slot = &*slot + &(a * b);
        }
    }
    naive.retain(|_, c| !c.is_zero());
    f.check(small.mul(&small).coeffs() == &naive, "phi4^2 differs from pairwise sums");
    // Fourier-Jacobi slices
    let t0 = 10;
    for name in HMF_NAMES {
        let form = corpus.hmf(name, t0)?;
        let d = form.d_op();
        for m in 0..=t0 {
            let ok = d.fj_coefficient(m)?.coeffs() == form.fj_coefficient(m)?.heat().coeffs();
            f.check(ok, format!("{name}: slice {m} of D(F) differs from the heat image"));
        }
    }
    // matrix index
    for &(k, _) in &HJF_FILES {
        let form = corpus.phi(k)?;
        let back = HJForm::from_matrix_index(&form.to_matrix_index(), form.parity())?;
        f.check(back == *form, format!("phi{k}: matrix-index round trip"));
    }
    // files
    let tmp = tempfile::tempdir().map_err(|e| Error::Io { path: "tempdir".into(), msg: e.to_string() })?;
    let names = HJF_FILES.iter().map(|x| x.1).chain(HMF_FILES.iter().map(|x| x.1));
    let mut files = 0;
    for name in names {
        let path = corpus.dir().join(name);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io { path: name.into(), msg: e.to_string() })?;
        let parsed = parse(&text, name)?;
        f.check(write(&parsed) == text, format!("{name}: write(parse(text)) differs"));
        let copy = tmp.path().join(name);
        save(&copy, &parsed)?;
        f.check(load(&copy)? == parsed, format!("{name}: save/load differs"));
        f.check(std::fs::read(&copy).ok().as_deref() == Some(text.as_bytes()), format!("{name}: saved bytes differ"));
        files += 1;
    }
    f.note(format!("products, {} slices, 4 matrix round trips, {files} files", 11 * HMF_NAMES.len()));
    Ok(())
}

fn criterion_9(corpus: &Corpus, f: &mut Findings) -> Result<()> {
    let t0 = corpus.hmf_trunc()?;
    let h4 = corpus.hmf("h4", t0)?;
    let p5 = prime(5);
    let mut count = 0;
    for ((n, r, m), c) in h4.iter() {
        let want = if (n, m) == (0, 0) { 1 } else { 0 };
        count += 1;
        f.check(c.reduce_mod_p(p5)?.residue() == want, format!("H4 at (n={n}, r={r}, m={m}) is {c}"));
    }
    let h = |k: i64| corpus.hmf(&format!("h{k}"), t0);
    let cusps = [
        ("chi8", derive_chi8(h(8)?.as_ref(), h(4)?.as_ref())),
        ("f10", derive_f10(h(10)?.as_ref(), h(4)?.as_ref(), h(6)?.as_ref())),
        ("f12", derive_f12(h(12)?.as_ref(), h(4)?.as_ref(), h(8)?.as_ref(), h(6)?.as_ref())),
    ];
    for (name, r) in cusps {
        match r {
            Ok(g) => f.check(g.singular_support().is_empty() && !g.is_zero(), format!("{name}: singular support")),
            Err(e) => f.check(false, format!("{name}: {e}")),
        }
    }
    f.note(format!("{count} H4 coefficients, cusp property at trace {t0}"));
    Ok(())
}

type Runner = fn(&Corpus, &mut Findings) -> Result<()>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, Runner); 9] = [
        (1, "U(p) for phi10 at p = 5, 7, 11", 5, criterion_1),
        (2, "U(5) for the index-2 raise of phi10", 5, criterion_2),
        (3, "Ramanujan-type scans of index-1 forms", 60, criterion_3),
        (4, "definition vs criterion on the corpus", 120, criterion_4),
        (5, "chi8 at trace 10", 120, criterion_5),
        (6, "degree-2 Ramanujan-type table at trace 10", 120, criterion_6),
        (7, "heat cycles, cross-checks and guards", 300, criterion_7),
        (8, "oracle equivalences", 60, criterion_8),
        (9, "H4 mod 5 and cusp properties", 10, criterion_9),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let corpus = Corpus::open(hermod_core::genio::resolve_data_dir(None));
    let mut failed = 0;
    for (id, title, budget, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let mut findings = Findings::default();
        if let Err(e) = run(&corpus, &mut findings) {
            findings.failures.push(format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(budget) {
            findings.failures.push(format!("took {:.1}s, budget {budget}s", elapsed.as_secs_f64()));
        }
        let pass = findings.failures.is_empty();
        failed += !pass as usize;
        println!(
            "criterion {id}: {} [{:.1}s / {budget}s] {title}: {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            findings.summary.join("; ")
        );
        for msg in &findings.failures {
            println!("    - {msg}");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
