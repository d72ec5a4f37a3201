//! U(p) and Ramanujan-type congruences, each decided twice: once from the
//! definition and once through the heat operator criterion.

use std::sync::Arc;

use super::filtration::{hjf_filtration, hmf_filtration, DepthPolicy, HermitianBasis, JacobiBasis};
use super::reduced::{KeySpace, ReducedHjf, ReducedHmf};
use super::report::{Check, FiltrationCrossCheck, Guard, ScanEntry, ScanReport, UpReport, Verdict};
use crate::arith::{legendre, Prime};
use crate::error::{Error, Result};
use crate::genio::sturm_eta;
use crate::hjf::{HJForm, HalfGauss};
use crate::hmf::{fmt_key, HMForm};

fn fmt_jkey(n: i64, r: HalfGauss) -> String {
    format!("(n={n}, r={r})")
}

/// First key of a reduced Jacobi form whose discriminant lies in the class and whose coefficient is nonzero.
fn jacobi_witness(f: &ReducedHjf, class: u64) -> Option<String> {
    let p = f.p;
    f.coeffs()
        .iter()
        .find(|(&k, _)| p.residue(f.discriminant(k)) == class)
        .map(|(&(n, r), _)| fmt_jkey(n, r))
}

/// U(p) congruence phi | U(p) = 0 mod p.
///
/// With a basis and p > k >= 4, p not dividing m, the verdict is also read
/// off Omega(L^{p+2-k}(phi)), which must be p+5-k when the congruence holds
/// and 2p+4-k otherwise.
pub fn up_test_hjf(phi: &HJForm, p: Prime, basis: Option<&mut JacobiBasis>, subject: &str) -> Result<UpReport> {
    let f = ReducedHjf::new(phi, p)?;
    let m = phi.index();
    let pp = p.get() as i64;
    let need = sturm_eta(f.weight + pp * pp - 1, m);
    let rigorous = f.trunc >= need;
    let depth = f.trunc;
    let witness = jacobi_witness(&f, 0);
    let direct = Check {
        method: "definition: c(n, r) = 0 mod p whenever p | D".into(),
        verdict: Verdict::from_bool(witness.is_none()),
        verified_depth: depth,
        rigorous,
        witness,
    };
    let cycled = f.heat_pow(p.get() as u32 - 1);
    let criterion = Check {
        method: "L^(p-1)(phi) = phi mod p".into(),
        verdict: Verdict::from_bool(cycled.same_coefficients(&f)),
        verified_depth: depth,
        rigorous,
        witness: None,
    };
    let mut notes = Vec::new();
    let k = phi.weight();
    let mut cross_check = None;
    let applicable = phi.heat_depth() == 0 && pp > k && k >= 4 && m.rem_euclid(pp) != 0 && !f.is_zero();
    match basis {
        Some(basis) if applicable => {
            let power = (pp + 2 - k) as u32;
            let image = f.heat_pow(power);
            let filt = hjf_filtration(&image, basis, &format!("L^{power}({subject})"), DepthPolicy::BestEffort)?;
            let (holds, fails) = (pp + 5 - k, 2 * pp + 4 - k);
            let implied = match filt.filtration.weight() {
                Some(w) if w == holds => Some(Verdict::Holds),
                Some(w) if w == fails => Some(Verdict::Fails),
                _ => None,
            };
            if implied.is_none() {
                notes.push(format!("filtration {} is neither {holds} nor {fails}", filt.filtration));
            }
            cross_check = Some(FiltrationCrossCheck { power, filtration: filt, value_if_holds: holds, value_if_fails: fails, implied });
        }
        Some(_) => notes.push("filtration cross-check needs p > k >= 4, p not dividing m and phi nonzero mod p".into()),
        None => {}
    }
    if f.is_zero() {
        notes.push("form vanishes mod p; congruence holds vacuously".into());
    }
    let consistent = direct.verdict == criterion.verdict
        && cross_check.as_ref().is_none_or(|c| c.implied == Some(direct.verdict));
    Ok(UpReport { subject: subject.to_string(), p, direct, criterion, cross_check, notes, consistent })
}

/// Both verdicts on one residue class b.
pub fn ramanujan_test_hjf(phi: &HJForm, p: Prime, b: u64) -> Result<ScanEntry> {
    let f = ReducedHjf::new(phi, p)?;
    let lhs = f.heat_pow((p.get() as u32).div_ceil(2));
    let rhs = f.heat();
    Ok(hjf_entry(&f, &lhs, &rhs, b))
}

fn hjf_entry(f: &ReducedHjf, lhs: &ReducedHjf, rhs: &ReducedHjf, b: u64) -> ScanEntry {
    let p = f.p;
    let chi = legendre(b as i64, p);
    let witness = jacobi_witness(f, b % p.get());
    // L^{(p+1)/2} + (b/p) L = 0
    let sum = lhs.lin_comb(1, rhs, p.residue(chi as i64));
    ScanEntry { b, legendre: chi, direct: Verdict::from_bool(witness.is_none()), criterion: Verdict::from_bool(sum.is_zero()), witness }
}

/// Ramanujan-type congruences at every b in 1..p-1.
pub fn ramanujan_scan_hjf(phi: &HJForm, p: Prime, subject: &str) -> Result<ScanReport> {
    let f = ReducedHjf::new(phi, p)?;
    let pp = p.get() as i64;
    let m = phi.index();
    let lhs = f.heat_pow((p.get() as u32).div_ceil(2));
    let rhs = f.heat();
    let entries: Vec<ScanEntry> = (1..p.get()).map(|b| hjf_entry(&f, &lhs, &rhs, b)).collect();
    let congruent: Vec<u64> = entries.iter().filter(|e| e.direct.holds()).map(|e| e.b).collect();
    let mismatches = entries.iter().filter(|e| e.direct != e.criterion).map(|e| e.b).collect();
    let k = phi.weight();
    let heat_vanishes = rhs.is_zero();
    let applicable = phi.heat_depth() == 0 && !heat_vanishes && pp > k && pp != 2 * k - 3 && m.rem_euclid(pp) != 0;
    let guard = Guard {
        applicable,
        reason: format!("L(phi) nonzero: {}, p > k: {}, p != 2k-3: {}, p not dividing m: {}", !heat_vanishes, pp > k, pp != 2 * k - 3, m.rem_euclid(pp) != 0),
        satisfied: !applicable || congruent.is_empty(),
    };
    let need = sturm_eta(f.weight + (pp + 1) * (pp + 1) / 2, m);
    Ok(ScanReport {
        subject: subject.to_string(),
        p,
        method: "definition and L^((p+1)/2)(phi) = -(b/p) L(phi)".into(),
        entries,
        congruent,
        heat_vanishes,
        guard,
        verified_depth: f.trunc,
        rigorous: f.trunc >= need,
        mismatches,
    })
}

fn hmf_witness(f: &ReducedHmf, class: u64) -> Option<String> {
    let p = f.p;
    (0..f.coeffs.len())
        .find(|&i| f.coeffs[i] != 0 && p.residue(f.space.disc(i)) == class)
        .map(|i| fmt_key(f.key(i)))
}

/// A key (n, r, m) with p not dividing nm and A(n, r, m) nonzero mod p.
fn nm_witness(f: &ReducedHmf) -> Option<String> {
    let pp = f.p.get() as i64;
    (0..f.coeffs.len())
        .find(|&i| {
            let (n, _, m) = f.key(i);
            f.coeffs[i] != 0 && (n * m).rem_euclid(pp) != 0
        })
        .map(|i| fmt_key(f.key(i)))
}

fn reduce_hmf(f: &HMForm, p: Prime, space: &Arc<KeySpace>) -> Result<ReducedHmf> {
    if f.trunc() < space.t0 {
        return Err(Error::InsufficientTruncation { need: space.t0, have: f.trunc() });
    }
    ReducedHmf::new(f, p, space)
}

/// U(p) congruence for a degree-2 form, at trace truncation t0.
///
/// With a basis the filtration of D^{p+2-k}(F) is also computed; this path
/// needs p > k and a coefficient with p not dividing nm that is nonzero mod p.
pub fn up_test_hmf(f: &HMForm, p: Prime, t0: i64, basis: Option<&mut HermitianBasis>, subject: &str) -> Result<UpReport> {
    let space = match &basis {
        Some(b) => b.space().clone(),
        None => KeySpace::new(t0),
    };
    let g = reduce_hmf(f, p, &space)?;
    let t0 = space.t0;
    let pp = p.get() as i64;
    let witness = hmf_witness(&g, 0);
    let direct = Check {
        method: "definition: A(n, r, m) = 0 mod p whenever p | 4 det T".into(),
        verdict: Verdict::from_bool(witness.is_none()),
        verified_depth: t0,
        rigorous: false,
        witness,
    };
    let cycled = g.d_pow(p.get() as u32 - 1);
    let criterion = Check {
        method: "D^(p-1)(F) = F mod p".into(),
        verdict: Verdict::from_bool(cycled.coeffs == g.coeffs),
        verified_depth: t0,
        rigorous: false,
        witness: None,
    };
    let k = f.weight();
    let mut notes = vec![format!("verified at trace truncation {t0}")];
    let mut cross_check = None;
    if let Some(basis) = basis {
        if f.heat_depth() != 0 || pp <= k {
            notes.push(format!("filtration cross-check needs p > k (p = {pp}, k = {k})"));
        } else {
            let Some(w) = nm_witness(&g) else {
                return Err(Error::MissingWitness);
            };
            notes.push(format!("hypothesis witness {w}"));
            let power = (pp + 2 - k) as u32;
            let filt = hmf_filtration(&g.d_pow(power), basis, &format!("D^{power}({subject})"))?;
            let (holds, fails) = (pp + 5 - k, 2 * pp + 4 - k);
            let implied = match filt.filtration.weight() {
                Some(w) if w == holds => Some(Verdict::Holds),
                Some(w) if w == fails => Some(Verdict::Fails),
                _ => None,
            };
            cross_check = Some(FiltrationCrossCheck { power, filtration: filt, value_if_holds: holds, value_if_fails: fails, implied });
        }
    }
    let consistent = direct.verdict == criterion.verdict
        && cross_check.as_ref().is_none_or(|c| c.implied == Some(direct.verdict));
    Ok(UpReport { subject: subject.to_string(), p, direct, criterion, cross_check, notes, consistent })
}

fn hmf_entry(f: &ReducedHmf, lhs: &ReducedHmf, rhs: &ReducedHmf, b: u64) -> ScanEntry {
    let p = f.p;
    let chi = legendre(b as i64, p);
    let witness = hmf_witness(f, b % p.get());
    let sum = lhs.lin_comb(1, rhs, p.residue(chi as i64));
    ScanEntry { b, legendre: chi, direct: Verdict::from_bool(witness.is_none()), criterion: Verdict::from_bool(sum.is_zero()), witness }
}

pub fn ramanujan_test_hmf(f: &HMForm, p: Prime, t0: i64, b: u64) -> Result<ScanEntry> {
    let g = reduce_hmf(f, p, &KeySpace::new(t0))?;
    Ok(hmf_entry(&g, &g.d_pow((p.get() as u32).div_ceil(2)), &g.d_pow(1), b))
}

/// Ramanujan-type congruences of a degree-2 form at every b, at trace truncation t0.
pub fn ramanujan_scan_hmf(f: &HMForm, p: Prime, t0: i64, subject: &str) -> Result<ScanReport> {
    let space = KeySpace::new(t0);
    let g = reduce_hmf(f, p, &space)?;
    let pp = p.get() as i64;
    let lhs = g.d_pow((p.get() as u32).div_ceil(2));
    let rhs = g.d_pow(1);
    let entries: Vec<ScanEntry> = (1..p.get()).map(|b| hmf_entry(&g, &lhs, &rhs, b)).collect();
    let congruent: Vec<u64> = entries.iter().filter(|e| e.direct.holds()).map(|e| e.b).collect();
    let mismatches = entries.iter().filter(|e| e.direct != e.criterion).map(|e| e.b).collect();
    let k = f.weight();
    let witness = nm_witness(&g);
    let applicable = f.heat_depth() == 0 && pp > k && pp != 2 * k - 3 && witness.is_some();
    let guard = Guard {
        applicable,
        reason: format!(
            "p > k: {}, p != 2k-3: {}, coefficient with p not dividing nm: {}",
            pp > k,
            pp != 2 * k - 3,
            witness.as_deref().unwrap_or("none")
        ),
        satisfied: !applicable || congruent.is_empty(),
    };
    Ok(ScanReport {
        subject: subject.to_string(),
        p,
        method: "definition and D^((p+1)/2)(F) = -(b/p) D(F)".into(),
        entries,
        congruent,
        heat_vanishes: rhs.is_zero(),
        guard,
        verified_depth: t0,
        rigorous: false,
        mismatches,
    })
}
