use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Prime;

/// Value of a filtration: either the form vanishes mod p or a least weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filtration {
    ZeroModP,
    Weight(i64),
}

impl Filtration {
    pub fn weight(self) -> Option<i64> {
        match self {
            Filtration::ZeroModP => None,
            Filtration::Weight(w) => Some(w),
        }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filtration::ZeroModP => f.write_str("zero mod p"),
            Filtration::Weight(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub subject: String,
    pub p: Prime,
    pub filtration: Filtration,
    pub candidates_tested: Vec<i64>,
    /// Nonzero coefficients of the basis combination over F_p.
    pub witness: Vec<(String, u64)>,
    /// Coefficient depth (n for Jacobi forms, trace n+m for degree 2) matched.
    pub verified_depth: i64,
    /// True when the depth reaches the Sturm bound.
    pub rigorous: bool,
}

impl FiltrationReport {
    pub fn zero(subject: String, p: Prime, depth: i64, rigorous: bool) -> FiltrationReport {
        FiltrationReport {
            subject,
            p,
            filtration: Filtration::ZeroModP,
            candidates_tested: Vec::new(),
            witness: Vec::new(),
            verified_depth: depth,
            rigorous,
        }
    }
}

impl fmt::Display for FiltrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "filtration of {} mod {}: {}", self.subject, self.p, self.filtration)?;
        writeln!(f, "  candidates tested: {:?}", self.candidates_tested)?;
        if !self.witness.is_empty() {
            let terms: Vec<String> = self.witness.iter().map(|(l, c)| format!("{c}*{l}")).collect();
            writeln!(f, "  witness: {}", terms.join(" + "))?;
        }
        write!(f, "  verified to depth {} ({})", self.verified_depth, rigor(self.rigorous))
    }
}

pub(crate) fn rigor(r: bool) -> &'static str {
    if r {
        "Sturm bound reached"
    } else {
        "at truncation"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

/// One verdict with the method and depth it was obtained by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub method: String,
    pub verdict: Verdict,
    pub verified_depth: i64,
    pub rigorous: bool,
    /// A coefficient key refuting the congruence, when it fails.
    pub witness: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (depth {}, {})", self.method, self.verdict, self.verified_depth, rigor(self.rigorous))?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        Ok(())
    }
}

/// Filtration cross-check of a U(p) verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationCrossCheck {
    pub power: u32,
    pub filtration: FiltrationReport,
    pub value_if_holds: i64,
    pub value_if_fails: i64,
    /// Verdict implied by the filtration, if it is one of the two values.
    pub implied: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpReport {
    pub subject: String,
    pub p: Prime,
    pub direct: Check,
    pub criterion: Check,
    pub cross_check: Option<FiltrationCrossCheck>,
    pub notes: Vec<String>,
    /// All methods that produced a verdict agree.
    pub consistent: bool,
}

impl UpReport {
    pub fn verdict(&self) -> Verdict {
        self.direct.verdict
    }
}

impl fmt::Display for UpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "U({}) congruence for {}: {}", self.p, self.subject, self.direct.verdict)?;
        writeln!(f, "  {}", self.direct)?;
        write!(f, "  {}", self.criterion)?;
        if let Some(c) = &self.cross_check {
            write!(
                f,
                "\n  filtration of heat^{}: {} (holds -> {}, fails -> {})",
                c.power, c.filtration.filtration, c.value_if_holds, c.value_if_fails
            )?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        write!(f, "\n  consistent: {}", self.consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub b: u64,
    pub legendre: i8,
    pub direct: Verdict,
    pub criterion: Verdict,
    pub witness: Option<String>,
}

/// Emptiness guard: when its hypotheses hold the scan must be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guard {
    pub applicable: bool,
    pub reason: String,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub subject: String,
    pub p: Prime,
    pub method: String,
    pub entries: Vec<ScanEntry>,
    pub congruent: Vec<u64>,
    pub heat_vanishes: bool,
    pub guard: Guard,
    pub verified_depth: i64,
    pub rigorous: bool,
    pub mismatches: Vec<u64>,
}

impl ScanReport {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty() && self.guard.satisfied
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Ramanujan-type congruences of {} mod {}: {:?}", self.subject, self.p, self.congruent)?;
        writeln!(f, "  {:>3} {:>3} {:>8} {:>9}", "b", "(b/p)", "direct", "criterion")?;
        for e in &self.entries {
            writeln!(f, "  {:>3} {:>5} {:>8} {:>9}", e.b, e.legendre, e.direct.to_string(), e.criterion.to_string())?;
        }
        writeln!(f, "  method: {}; depth {} ({})", self.method, self.verified_depth, rigor(self.rigorous))?;
        write!(
            f,
            "  guard: {} ({}), satisfied: {}; mismatches: {:?}",
            if self.guard.applicable { "applies" } else { "not applicable" },
            self.guard.reason,
            self.guard.satisfied,
            self.mismatches
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatStep {
    pub j: u32,
    pub weight_bound: i64,
    pub filtration: Filtration,
    pub rigorous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatCycleReport {
    pub subject: String,
    pub p: Prime,
    pub index: i64,
    pub initial: Filtration,
    pub steps: Vec<HeatStep>,
    pub high_points: Vec<u32>,
    pub low_points: Vec<u32>,
    pub heat_vanishes: bool,
    pub periodic: bool,
    /// Structural violations (jump law, cycle shape); empty for a correct engine.
    pub violations: Vec<String>,
}

impl HeatCycleReport {
    pub fn filtrations(&self) -> Vec<Filtration> {
        self.steps.iter().map(|s| s.filtration).collect()
    }
}

impl fmt::Display for HeatCycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "heat cycle of {} mod {} (initial filtration {})", self.subject, self.p, self.initial)?;
        for s in &self.steps {
            writeln!(f, "  j={:>2}  filtration {:>6}  (bound {}, {})", s.j, s.filtration.to_string(), s.weight_bound, rigor(s.rigorous))?;
        }
        writeln!(f, "  high points: {:?}; low points: {:?}", self.high_points, self.low_points)?;
        writeln!(f, "  heat image vanishes: {}; periodic: {}", self.heat_vanishes, self.periodic)?;
        write!(f, "  violations: {}", if self.violations.is_empty() { "none".to_string() } else { self.violations.join("; ") })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub checks: Vec<(String, bool)>,
    pub notices: Vec<String>,
}

impl Diagnostics {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, b)| *b)
    }
}
