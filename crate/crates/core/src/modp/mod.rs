//! Reduction mod p, filtrations, heat cycles and congruence checks.

mod congruence;
mod filtration;
mod heat;
pub mod linalg;
mod reduced;
mod report;

pub use congruence::{ramanujan_scan_hjf, ramanujan_scan_hmf, ramanujan_test_hjf, ramanujan_test_hmf, up_test_hjf, up_test_hmf};
pub use filtration::{hjf_filtration, hmf_filtration, shift_class_rows, DepthPolicy, HermitianBasis, JacobiBasis};
pub use heat::{cycle_violations, heat_cycle, heat_cycle_diagnostics, high_and_low_points};
pub use reduced::{KeySpace, ReducedHjf, ReducedHmf};
pub use report::{
    Check, Diagnostics, Filtration, FiltrationCrossCheck, FiltrationReport, Guard, HeatCycleReport, HeatStep, ScanEntry,
    ScanReport, UpReport, Verdict,
};
