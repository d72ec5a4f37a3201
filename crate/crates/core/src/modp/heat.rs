//! Heat cycles of Hermitian Jacobi forms mod p.

use super::filtration::{hjf_filtration, DepthPolicy, JacobiBasis};
use super::reduced::ReducedHjf;
use super::report::{Diagnostics, Filtration, HeatCycleReport, HeatStep};
use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::genio::sturm_eta;
use crate::hjf::HJForm;

/// Filtrations of L^j(phi) mod p for j = 1..p-1, with the jump law and the
/// cycle shape checked at every step (the wrap from L^{p-1} to L^p = L^1
/// included).
pub fn heat_cycle(phi: &HJForm, p: Prime, basis: &mut JacobiBasis, subject: &str) -> Result<HeatCycleReport> {
    let m = phi.index();
    if m.rem_euclid(p.get() as i64) == 0 {
        return Err(Error::Unsupported(format!("heat cycle needs p not dividing the index {m}")));
    }
    let base = ReducedHjf::new(phi, p)?;
    if base.is_zero() {
        return Err(Error::Unsupported(format!("{subject} vanishes mod {p}")));
    }
    let initial = hjf_filtration(&base, basis, subject, DepthPolicy::BestEffort)?;
    let first = base.heat();
    let mut report = HeatCycleReport {
        subject: subject.to_string(),
        p,
        index: m,
        initial: initial.filtration,
        steps: Vec::new(),
        high_points: Vec::new(),
        low_points: Vec::new(),
        heat_vanishes: first.is_zero(),
        periodic: first.same_coefficients(&base.heat_pow(p.get() as u32)),
        violations: Vec::new(),
    };
    let have = base.trunc.min(basis.available_depth());
    for j in 1..p.get() as u32 {
        let psi = base.heat_pow(j);
        let bound = psi.weight;
        let filtration = if report.heat_vanishes {
            Filtration::ZeroModP
        } else {
            hjf_filtration(&psi, basis, &format!("L^{j}({subject})"), DepthPolicy::BestEffort)?.filtration
        };
        report.steps.push(HeatStep { j, weight_bound: bound, filtration, rigorous: have >= sturm_eta(bound, m) });
    }
    if !report.periodic {
        report.violations.push("L^p differs from L^1".into());
    }
    if report.heat_vanishes {
        return Ok(report);
    }
    let omegas: Vec<i64> = report.steps.iter().filter_map(|s| s.filtration.weight()).collect();
    let omega0 = initial.filtration.weight().unwrap_or(0);
    let (high, low) = high_and_low_points(p, &omegas);
    report.high_points = high;
    report.low_points = low;
    report.violations.extend(cycle_violations(p, m, omega0, &omegas));
    Ok(report)
}

/// Steps j with filtration = 1 mod p, and their cyclic successors.
pub fn high_and_low_points(p: Prime, omegas: &[i64]) -> (Vec<u32>, Vec<u32>) {
    let pp = p.get() as i64;
    let len = omegas.len() as u32;
    let high: Vec<u32> = (1..=len).filter(|&j| omegas[j as usize - 1].rem_euclid(pp) == 1).collect();
    let mut low: Vec<u32> = high.iter().map(|&j| j % len + 1).collect();
    low.sort_unstable();
    (high, low)
}

/// Jump law and cycle-shape violations for a heat cycle given by
/// Omega(phi) and Omega(L^j(phi)), j = 1..p-1.
pub fn cycle_violations(p: Prime, m: i64, omega0: i64, omegas: &[i64]) -> Vec<String> {
    let pp = p.get() as i64;
    let mut bad = Vec::new();
    if omegas.len() as i64 != pp - 1 {
        bad.push(format!("cycle has {} steps, expected {}", omegas.len(), pp - 1));
        return bad;
    }
    // transitions phi -> L^1 -> ... -> L^{p-1} -> L^p = L^1
    let mut chain = vec![(0u32, omega0)];
    chain.extend(omegas.iter().enumerate().map(|(i, &w)| (i as u32 + 1, w)));
    chain.push((pp as u32, omegas[0]));
    for pair in chain.windows(2) {
        let ((j, w), (_, w2)) = (pair[0], pair[1]);
        let full = w + pp + 1;
        if ((w - 1) * m).rem_euclid(pp) != 0 {
            if w2 != full {
                bad.push(format!("step {j}: filtration {w} -> {w2}, jump law requires {full}"));
            }
        } else if w2 >= full || (full - w2).rem_euclid(pp - 1) != 0 {
            bad.push(format!("step {j}: filtration {w} -> {w2}, expected a drop by a multiple of {}", pp - 1));
        }
        if j >= 1 && w2 == w + 2 {
            bad.push(format!("step {j}: increase of exactly 2"));
        }
    }
    for (j, &w) in omegas.iter().enumerate() {
        if w.rem_euclid(pp) == 2 {
            bad.push(format!("L^{}: filtration {w} = 2 mod {pp}", j + 1));
        }
    }
    let (_, low) = high_and_low_points(p, omegas);
    if !(1..=2).contains(&low.len()) {
        bad.push(format!("{} low points", low.len()));
    }
    let has_three = omegas.iter().any(|w| w.rem_euclid(pp) == 3);
    if (low.len() == 1) != has_three {
        bad.push(format!("{} low point(s) but filtration = 3 mod p {}", low.len(), if has_three { "occurs" } else { "never occurs" }));
    }
    bad
}

/// Consequences of a Ramanujan-type congruence for the shape of the cycle:
/// two low points and (p+3)/2 <= B <= A + (p+3)/2 where Omega(phi) = Ap + B.
pub fn heat_cycle_diagnostics(report: &HeatCycleReport, ramanujan_found: &[u64]) -> Diagnostics {
    let mut d = Diagnostics { checks: Vec::new(), notices: Vec::new() };
    d.checks.push(("cycle structure".into(), report.violations.is_empty()));
    if ramanujan_found.is_empty() {
        d.notices.push("no Ramanujan-type congruence supplied; shape bounds not applicable".into());
        return d;
    }
    if report.heat_vanishes {
        d.notices.push("L(phi) vanishes mod p; shape bounds not applicable".into());
        return d;
    }
    d.checks.push(("two low points".into(), report.low_points.len() == 2));
    let pp = report.p.get() as i64;
    let Some(omega) = report.initial.weight() else {
        d.notices.push("phi vanishes mod p".into());
        return d;
    };
    let (a, b) = (omega.div_euclid(pp), omega.rem_euclid(pp));
    if b <= 1 {
        d.notices.push(format!("Omega(phi) = {omega} = {a}*{pp} + {b} with B <= 1; bound on B skipped"));
        return d;
    }
    let lo = (pp + 3) / 2;
    d.checks.push((format!("{lo} <= B = {b} <= A + {lo} = {}", a + lo), lo <= b && b <= a + lo));
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7() -> Prime {
        Prime::new(7).unwrap()
    }

    /// A cycle mod 7 obeying the jump law: two high points (36 and 8, both 1 mod 7).
    fn clean_cycle() -> (i64, Vec<i64>) {
        (4, vec![12, 20, 28, 36, 8, 4])
    }

    #[test]
    fn clean_cycle_has_no_violations_in_shape_checks() {
        let (w0, om) = clean_cycle();
        let v = cycle_violations(p7(), 1, w0, &om);
        assert!(v.is_empty(), "{v:?}");
        let (high, low) = high_and_low_points(p7(), &om);
        assert_eq!(high, vec![4, 5]);
        assert_eq!(low, vec![5, 6]);
    }

    #[test]
    fn synthetic_two_mod_p_is_rejected() {
        let v = cycle_violations(p7(), 1, 4, &[12, 20, 28, 36, 9, 17]);
        assert!(v.iter().any(|s| s.contains("= 2 mod 7")), "{v:?}");
    }

    #[test]
    fn jump_law_violation_is_reported() {
        let v = cycle_violations(p7(), 1, 4, &[11, 20, 28, 36, 8, 4]);
        assert!(v.iter().any(|s| s.contains("jump law")));
    }

    #[test]
    fn wrong_length_is_reported() {
        assert!(!cycle_violations(p7(), 1, 4, &[12]).is_empty());
    }

    #[test]
    fn diagnostics_skip_bound_when_b_is_one() {
        let report = HeatCycleReport {
            subject: "s".into(),
            p: p7(),
            index: 1,
            initial: Filtration::Weight(8),
            steps: Vec::new(),
            high_points: vec![3, 6],
            low_points: vec![1, 4],
            heat_vanishes: false,
            periodic: true,
            violations: Vec::new(),
        };
        let d = heat_cycle_diagnostics(&report, &[1, 2, 4]);
        assert!(d.ok());
        assert_eq!(d.notices.len(), 1);
    }
}
