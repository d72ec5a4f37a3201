//! Degree-2 Hermitian modular forms for the full modular group over Q(i)
//! with character det^{k/2}, stored as Fourier-Jacobi slices.

use std::collections::BTreeMap;

use crate::arith::{Prime, Rat};
use crate::error::{Error, Result};
use crate::hjf::{convolve, discriminant, HJForm, HalfGauss, JKey, Parity, Unit};

/// Coefficient key (n, r, m) for the matrix T = [[n, r], [conj r, m]].
pub type HKey = (i64, HalfGauss, i64);

/// Truncated Fourier expansion; all coefficients with n + m <= trunc are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMForm {
    weight: i64,
    trunc: i64,
    heat_depth: u32,
    slices: Vec<HJForm>,
}

impl HMForm {
    pub fn from_coeffs(weight: i64, trunc: i64, coeffs: BTreeMap<HKey, Rat>) -> Result<HMForm> {
        let mut per_slice: Vec<BTreeMap<JKey, Rat>> = vec![BTreeMap::new(); trunc.max(0) as usize + 1];
        for ((n, r, m), c) in coeffs {
            if n < 0 || m < 0 || n + m > trunc {
                return Err(Error::InvariantViolation {
                    key: fmt_key((n, r, m)),
                    rule: format!("outside trace truncation {trunc}"),
                });
            }
            if discriminant(n, r, m) < 0 {
                return Err(Error::InvariantViolation { key: fmt_key((n, r, m)), rule: "T >= 0".into() });
            }
            per_slice[m as usize].insert((n, r), c);
        }
        Ok(HMForm::from_slice_maps(weight, trunc, 0, per_slice))
    }

    fn from_slice_maps(weight: i64, trunc: i64, heat_depth: u32, maps: Vec<BTreeMap<JKey, Rat>>) -> HMForm {
        let parity = Parity::of_weight(weight);
        let slices = maps
            .into_iter()
            .enumerate()
            .map(|(m, c)| HJForm::raw(weight, m as i64, parity, trunc - m as i64, heat_depth, c))
            .collect();
        HMForm { weight, trunc, heat_depth, slices }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn heat_depth(&self) -> u32 {
        self.heat_depth
    }

    pub fn weight_mod_p(&self, p: Prime) -> i64 {
        self.weight + self.heat_depth as i64 * (p.get() as i64 + 1)
    }

    pub fn coeff(&self, n: i64, r: HalfGauss, m: i64) -> Rat {
        if m < 0 || m > self.trunc {
            return Rat::zero();
        }
        self.slices[m as usize].coeff(n, r)
    }

    /// Nonzero coefficients as a flat view ordered by (m, n, r).
    pub fn iter(&self) -> impl Iterator<Item = (HKey, &Rat)> {
        self.slices.iter().enumerate().flat_map(|(m, s)| s.coeffs().iter().map(move |(&(n, r), c)| ((n, r, m as i64), c)))
    }

    /// Nonzero coefficients as a map ordered by (n, r, m).
    pub fn to_map(&self) -> BTreeMap<HKey, Rat> {
        self.iter().map(|(k, c)| (k, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(HJForm::is_zero)
    }

    /// Every key with n + m <= trunc, zero or not.
    pub fn support_keys(&self) -> impl Iterator<Item = HKey> + '_ {
        self.slices.iter().flat_map(|s| {
            let m = s.index();
            s.support_keys().filter(move |&(_, r)| m > 0 || r == HalfGauss::ZERO).map(move |(n, r)| (n, r, m))
        })
    }

    pub fn fj_coefficient(&self, m: i64) -> Result<HJForm> {
        if m < 0 || m > self.trunc {
            return Err(Error::IndexBeyondTruncation { m, t0: self.trunc });
        }
        Ok(self.slices[m as usize].clone())
    }

    pub fn truncate(&self, trunc: i64) -> HMForm {
        let trunc = trunc.min(self.trunc);
        let maps = (0..=trunc).map(|m| self.slices[m as usize].truncate(trunc - m).coeffs().clone()).collect();
        HMForm::from_slice_maps(self.weight, trunc, self.heat_depth, maps)
    }

    /// Multiplies each coefficient by 4 det T.
    pub fn d_op(&self) -> HMForm {
        let maps = self.slices.iter().map(|s| s.heat().coeffs().clone()).collect();
        HMForm::from_slice_maps(self.weight, self.trunc, self.heat_depth + 1, maps)
    }

    pub fn mul(&self, other: &HMForm) -> HMForm {
        let t0 = self.trunc.min(other.trunc);
        let mut maps: Vec<BTreeMap<JKey, Rat>> = vec![BTreeMap::new(); t0 as usize + 1];
        for m1 in 0..=t0 {
            for m2 in 0..=t0 - m1 {
                let part = convolve(self.slices[m1 as usize].coeffs(), other.slices[m2 as usize].coeffs(), t0 - m1 - m2);
                let slot = &mut maps[(m1 + m2) as usize];
                for (k, c) in part {
                    *slot.entry(k).or_default() += &c;
                }
            }
        }
        HMForm::from_slice_maps(self.weight + other.weight, t0, self.heat_depth + other.heat_depth, maps)
    }

    pub fn pow(&self, e: u32) -> HMForm {
        assert!(e >= 1, "power must be positive");
        (1..e).fold(self.clone(), |acc, _| acc.mul(self))
    }

    pub fn add(&self, o: &HMForm) -> Result<HMForm> {
        self.combine(o, Rat::one())
    }

    pub fn sub(&self, o: &HMForm) -> Result<HMForm> {
        self.combine(o, -Rat::one())
    }

    fn combine(&self, o: &HMForm, sign: Rat) -> Result<HMForm> {
        if self.weight != o.weight {
            return Err(Error::WeightMismatch(self.weight, o.weight));
        }
        if self.heat_depth != o.heat_depth {
            return Err(Error::HeatDepthMismatch(self.heat_depth, o.heat_depth));
        }
        let t0 = self.trunc.min(o.trunc);
        let a = self.truncate(t0);
        let b = o.truncate(t0);
        let maps = a
            .slices
            .iter()
            .zip(&b.slices)
            .map(|(x, y)| {
                let mut c = x.coeffs().clone();
                for (k, v) in y.coeffs() {
                    *c.entry(*k).or_default() += &(v * &sign);
                }
                c
            })
            .collect();
        Ok(HMForm::from_slice_maps(self.weight, t0, self.heat_depth, maps))
    }

    pub fn scale(&self, c: &Rat) -> HMForm {
        let maps = self.slices.iter().map(|s| s.scale(c).coeffs().clone()).collect();
        HMForm::from_slice_maps(self.weight, self.trunc, self.heat_depth, maps)
    }

    /// Keeps exactly the coefficients with p | 4 det T.
    pub fn u_p(&self, p: Prime) -> HMForm {
        let maps = self.slices.iter().map(|s| s.u_p(p).coeffs().clone()).collect();
        HMForm::from_slice_maps(self.weight, self.trunc, self.heat_depth, maps)
    }

    /// Treats a heat image as a form of the given weight (used by brackets).
    fn as_weight(&self, weight: i64) -> HMForm {
        let maps = self.slices.iter().map(|s| s.coeffs().clone()).collect();
        HMForm::from_slice_maps(weight, self.trunc, 0, maps)
    }

    /// First Rankin-Cohen bracket, a form of weight k1 + k2 + 2.
    pub fn rankin_cohen_1(&self, g: &HMForm) -> Result<HMForm> {
        if self.heat_depth != 0 || g.heat_depth != 0 {
            return Err(Error::Unsupported("bracket of heat images".into()));
        }
        let (k1, k2) = (self.weight, g.weight);
        let w = k1 + k2 + 2;
        let a = self.mul(g).d_op().as_weight(w).scale(&Rat::from_int((k1 - 1) * (k2 - 1)));
        let b = self.d_op().mul(g).as_weight(w).scale(&Rat::from_int((k2 - 1) * (k1 + k2 - 1)));
        let c = self.mul(&g.d_op()).as_weight(w).scale(&Rat::from_int((k1 - 1) * (k1 + k2 - 1)));
        a.sub(&b)?.sub(&c)
    }

    /// Keys violating n <-> m symmetry, conjugation or unit invariance.
    pub fn symmetry_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for ((n, r, m), c) in self.iter() {
            let images = [
                (m, r, n),
                (n, r.conj(), m),
                (n, r.mul_unit(Unit::I), m),
                (n, r.mul_unit(Unit::MinusOne), m),
            ];
            for (n2, r2, m2) in images {
                if &self.coeff(n2, r2, m2) != c {
                    bad.push(format!("{} vs {}", fmt_key((n, r, m)), fmt_key((n2, r2, m2))));
                }
            }
        }
        bad
    }

    /// Nonzero coefficients at singular T (det T = 0).
    pub fn singular_support(&self) -> Vec<HKey> {
        self.iter().filter(|((n, r, m), _)| discriminant(*n, *r, *m) == 0).map(|(k, _)| k).collect()
    }
}

pub fn fmt_key((n, r, m): HKey) -> String {
    format!("(n={n}, r={r}, m={m})")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A small symmetric test expansion with a nonzero constant term.
    fn sample() -> HMForm {
        let mut c = BTreeMap::new();
        c.insert((0, HalfGauss::ZERO, 0), Rat::one());
        for (n, m) in [(1, 0), (0, 1)] {
            c.insert((n, HalfGauss::ZERO, m), Rat::from_int(3));
        }
        for a in [HalfGauss::new(1, 1), HalfGauss::new(1, -1), HalfGauss::new(-1, 1), HalfGauss::new(-1, -1)] {
            c.insert((1, a, 1), Rat::from_int(2));
        }
        c.insert((1, HalfGauss::ZERO, 1), Rat::from_int(7));
        HMForm::from_coeffs(4, 3, c).unwrap()
    }

    #[test]
    fn constant_term_of_square() {
        let f = sample();
        let sq = f.mul(&f);
        assert_eq!(sq.coeff(0, HalfGauss::ZERO, 0), Rat::one());
        assert_eq!(sq.coeff(1, HalfGauss::ZERO, 0), Rat::from_int(6));
        assert_eq!(sq.weight(), 8);
        assert!(sq.symmetry_violations().is_empty());
    }

    #[test]
    fn d_op_commutes_with_slices() {
        let f = sample();
        for m in 0..=f.trunc() {
            assert_eq!(f.d_op().fj_coefficient(m).unwrap(), f.fj_coefficient(m).unwrap().heat());
        }
        assert!(f.d_op().singular_support().is_empty());
    }

    #[test]
    fn slice_parity_and_bounds() {
        let f = sample();
        assert_eq!(f.fj_coefficient(1).unwrap().parity(), Parity::Plus);
        assert_eq!(f.fj_coefficient(1).unwrap().trunc(), 2);
        assert!(matches!(f.fj_coefficient(4), Err(Error::IndexBeyondTruncation { .. })));
        assert_eq!(f.fj_coefficient(0).unwrap().coeff(0, HalfGauss::ZERO), Rat::one());
    }

    #[test]
    fn u_p_idempotent() {
        let p = Prime::new(7).unwrap();
        let f = sample().mul(&sample());
        assert_eq!(f.u_p(p).u_p(p), f.u_p(p));
    }

    #[test]
    fn rejects_indefinite_keys() {
        let c = BTreeMap::from([((1, HalfGauss::new(3, 0), 1), Rat::one())]);
        assert!(HMForm::from_coeffs(4, 3, c).is_err());
    }

    #[test]
    fn bracket_is_linear() {
        let f = sample();
        let two = Rat::from_int(2);
        assert_eq!(f.scale(&two).rankin_cohen_1(&f).unwrap(), f.rankin_cohen_1(&f).unwrap().scale(&two));
        assert_eq!(f.rankin_cohen_1(&f).unwrap().weight(), 10);
    }
}
