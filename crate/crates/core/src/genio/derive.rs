//! The cusp forms chi8, F10 and F12 as rational combinations of Eisenstein series.

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::hmf::{fmt_key, HMForm};

fn cusp(f: HMForm) -> Result<HMForm> {
    match f.singular_support().first() {
        Some(&k) => Err(Error::CuspPropertyViolation { key: fmt_key(k) }),
        None => Ok(f),
    }
}

fn check_weight(f: &HMForm, k: i64) -> Result<()> {
    if f.weight() == k {
        Ok(())
    } else {
        Err(Error::WeightMismatch(k, f.weight()))
    }
}

/// chi8 = -61/230400 (H8 - H4^2).
pub fn derive_chi8(h8: &HMForm, h4: &HMForm) -> Result<HMForm> {
    check_weight(h8, 8)?;
    check_weight(h4, 4)?;
    cusp(h8.sub(&h4.mul(h4))?.scale(&Rat::new(-61, 230400)))
}

/// F10 = -277/2419200 (H10 - H4 H6).
pub fn derive_f10(h10: &HMForm, h4: &HMForm, h6: &HMForm) -> Result<HMForm> {
    check_weight(h10, 10)?;
    check_weight(h4, 4)?;
    check_weight(h6, 6)?;
    cusp(h10.sub(&h4.mul(h6))?.scale(&Rat::new(-277, 2419200)))
}

/// The weight-12 cusp form from H12, H4^3, H4 H8 and H6^2.
pub fn derive_f12(h12: &HMForm, h4: &HMForm, h8: &HMForm, h6: &HMForm) -> Result<HMForm> {
    check_weight(h12, 12)?;
    check_weight(h4, 4)?;
    check_weight(h8, 8)?;
    check_weight(h6, 6)?;
    let terms = [
        (h12.clone(), Rat::new(-34910011i64, 2002662144000i64)),
        (h4.mul(h4).mul(h4), Rat::new(-34801, 1009152000)),
        (h4.mul(h8), Rat::new(414251, 9082368000i64)),
        (h6.mul(h6), Rat::new(50521, 8010648576i64)),
    ];
    let mut acc = terms[0].0.scale(&terms[0].1);
    for (f, c) in &terms[1..] {
        acc = acc.add(&f.scale(c))?;
    }
    cusp(acc)
}
