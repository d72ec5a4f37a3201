use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gauss::{discriminant, lattice_points, Gaussian, HalfGauss, Parity, Unit};
use crate::arith::{Prime, Rat};
use crate::error::{Error, Result};
use crate::qexp::QSeries;

pub type JKey = (i64, HalfGauss);

/// Truncated Fourier expansion of a Hermitian Jacobi form.
///
/// `heat_depth` counts applications of the heat operator. A form with
/// positive heat depth is a heat image: its coefficients are those of
/// L^j(phi) where phi has the stored weight and parity, and only its
/// reduction mod p is a form (of weight `weight + j(p+1)`).
///
/// Index 0 is admitted for the zeroth Fourier-Jacobi slice of a degree-2
/// form; its support is forced to r = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJForm {
    weight: i64,
    index: i64,
    parity: Parity,
    trunc: i64,
    heat_depth: u32,
    coeffs: BTreeMap<JKey, Rat>,
}

/// Outcome of the shift-class check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftClassReport {
    pub classes_checked: usize,
    pub singleton_classes: usize,
    pub violations: Vec<String>,
}

impl HJForm {
    /// Builds a form, checking ranges and the support condition.
    pub fn new(weight: i64, index: i64, parity: Parity, trunc: i64, coeffs: BTreeMap<JKey, Rat>) -> Result<HJForm> {
        if index < 0 {
            return Err(Error::InvariantViolation { key: "header".into(), rule: "index must be >= 0".into() });
        }
        for &(n, r) in coeffs.keys() {
            if n < 0 || n > trunc {
                return Err(Error::InvariantViolation {
                    key: format!("n={n}, r={r}"),
                    rule: format!("n outside 0..={trunc}"),
                });
            }
            if discriminant(n, r, index) < 0 {
                return Err(Error::InvariantViolation {
                    key: format!("n={n}, r={r}"),
                    rule: format!("support N(r) <= {index}n"),
                });
            }
        }
        Ok(HJForm::raw(weight, index, parity, trunc, 0, coeffs))
    }

    pub(crate) fn raw(
        weight: i64,
        index: i64,
        parity: Parity,
        trunc: i64,
        heat_depth: u32,
        mut coeffs: BTreeMap<JKey, Rat>,
    ) -> HJForm {
        coeffs.retain(|_, c| !c.is_zero());
        HJForm { weight, index, parity, trunc, heat_depth, coeffs }
    }

    pub fn zero(weight: i64, index: i64, parity: Parity, trunc: i64) -> HJForm {
        HJForm::raw(weight, index, parity, trunc, 0, BTreeMap::new())
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn heat_depth(&self) -> u32 {
        self.heat_depth
    }

    pub fn coeffs(&self) -> &BTreeMap<JKey, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64, r: HalfGauss) -> Rat {
        self.coeffs.get(&(n, r)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn discriminant(&self, n: i64, r: HalfGauss) -> i64 {
        discriminant(n, r, self.index)
    }

    /// Every key (n, r) with n <= trunc in the support region, zero or not.
    pub fn support_keys(&self) -> impl Iterator<Item = JKey> + '_ {
        let m = self.index;
        (0..=self.trunc).flat_map(move |n| lattice_points(4 * m * n).map(move |r| (n, r)))
    }

    /// Weight of the mod-p reduction: heat images gain p+1 per application.
    pub fn weight_mod_p(&self, p: Prime) -> i64 {
        self.weight + self.heat_depth as i64 * (p.get() as i64 + 1)
    }

    /// Parity of the mod-p reduction: each heat application flips parity iff p = 1 mod 4.
    pub fn parity_mod_p(&self, p: Prime) -> Parity {
        if p.get() % 4 == 1 && self.heat_depth % 2 == 1 {
            self.parity.flip()
        } else {
            self.parity
        }
    }

    pub fn truncate(&self, trunc: i64) -> HJForm {
        let trunc = trunc.min(self.trunc);
        let coeffs = self.coeffs.range(..(trunc + 1, HalfGauss::MIN)).map(|(k, c)| (*k, c.clone())).collect();
        HJForm { coeffs, trunc, ..self.clone() }
    }

    pub fn retag(&self, weight: i64, index: i64, parity: Parity) -> HJForm {
        HJForm { weight, index, parity, ..self.clone() }
    }

    /// Multiplies each coefficient by its discriminant.
    pub fn heat(&self) -> HJForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&(n, r), c)| ((n, r), c * &Rat::from_int(self.discriminant(n, r))))
            .collect();
        HJForm::raw(self.weight, self.index, self.parity, self.trunc, self.heat_depth + 1, coeffs)
    }

    /// L(phi) - ((k-1)m/3) E2 phi, a form of weight k+2 and opposite parity.
    pub fn heat_completed(&self, e2: &QSeries) -> Result<HJForm> {
        if self.heat_depth != 0 {
            return Err(Error::Unsupported("heat completion of a heat image".into()));
        }
        if e2.trunc() < self.trunc {
            return Err(Error::InsufficientTruncation { need: self.trunc, have: e2.trunc() });
        }
        let factor = Rat::new((self.weight - 1) * self.index, 3);
        let correction = self.mul_qseries(e2).scale(&factor);
        let mut heated = self.heat();
        heated.heat_depth = 0;
        heated.weight = correction.weight;
        heated.parity = correction.parity;
        let out = heated.sub(&correction)?;
        if let Some(v) = out.unit_rule_violations().into_iter().next() {
            return Err(Error::InvariantViolation { key: v, rule: "unit rule after heat completion".into() });
        }
        Ok(out)
    }

    /// Keeps exactly the coefficients with p | D.
    pub fn u_p(&self, p: Prime) -> HJForm {
        let pp = p.get() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&(n, r), _)| self.discriminant(n, r) % pp == 0)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        HJForm { coeffs, ..self.clone() }
    }

    /// f * phi. Parity flips when the weight of f is 2 mod 4.
    pub fn mul_qseries(&self, f: &QSeries) -> HJForm {
        let trunc = self.trunc.min(f.trunc());
        let qmap: BTreeMap<JKey, Rat> = f.coeffs().iter().map(|(&n, c)| ((n, HalfGauss::ZERO), c.clone())).collect();
        let coeffs = convolve(&self.coeffs, &qmap, trunc);
        let parity = if f.weight().rem_euclid(4) == 2 { self.parity.flip() } else { self.parity };
        HJForm::raw(self.weight + f.weight(), self.index, parity, trunc, self.heat_depth, coeffs)
    }

    /// phi * psi: weights and indices add, parities multiply.
    pub fn mul(&self, other: &HJForm) -> HJForm {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = convolve(&self.coeffs, &other.coeffs, trunc);
        HJForm::raw(
            self.weight + other.weight,
            self.index + other.index,
            self.parity.times(other.parity),
            trunc,
            self.heat_depth + other.heat_depth,
            coeffs,
        )
    }

    fn check_compatible(&self, o: &HJForm) -> Result<()> {
        if self.weight != o.weight {
            return Err(Error::WeightMismatch(self.weight, o.weight));
        }
        if self.index != o.index {
            return Err(Error::IndexMismatch(self.index, o.index));
        }
        if self.parity != o.parity {
            return Err(Error::ParityMismatch);
        }
        if self.heat_depth != o.heat_depth {
            return Err(Error::HeatDepthMismatch(self.heat_depth, o.heat_depth));
        }
        Ok(())
    }

    pub fn add(&self, o: &HJForm) -> Result<HJForm> {
        self.combine(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &HJForm) -> Result<HJForm> {
        self.combine(o, |a, b| a - b)
    }

    fn combine(&self, o: &HJForm, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<HJForm> {
        self.check_compatible(o)?;
        let trunc = self.trunc.min(o.trunc);
        let a = self.truncate(trunc);
        let b = o.truncate(trunc);
        let mut coeffs = a.coeffs.clone();
        for (k, c) in &b.coeffs {
            let v = f(&a.coeff(k.0, k.1), c);
            coeffs.insert(*k, v);
        }
        for (k, c) in coeffs.iter_mut() {
            if !b.coeffs.contains_key(k) {
                *c = f(c, &Rat::zero());
            }
        }
        Ok(HJForm::raw(self.weight, self.index, self.parity, trunc, self.heat_depth, coeffs))
    }

    pub fn scale(&self, c: &Rat) -> HJForm {
        let coeffs = self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect();
        HJForm::raw(self.weight, self.index, self.parity, self.trunc, self.heat_depth, coeffs)
    }

    /// c(n, r) -> sigma(eps) eps^{-k} c(n, eps^{-1} r).
    pub fn slash_unit(&self, eps: Unit) -> Result<HJForm> {
        let t = eps
            .twist(self.weight, self.parity)
            .ok_or_else(|| Error::Unsupported(format!("unit slash in odd weight {}", self.weight)))?;
        let t = Rat::from_int(t);
        let coeffs = self.coeffs.iter().map(|(&(n, s), c)| ((n, s.mul_unit(eps)), c * &t)).collect();
        Ok(HJForm { coeffs, ..self.clone() })
    }

    /// Keys where c(n, eps r) != sigma(eps) eps^{-k} c(n, r) for some unit.
    pub fn unit_rule_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for u in [Unit::I, Unit::MinusOne] {
            let Some(t) = u.twist(self.weight, self.parity) else {
                bad.push(format!("odd weight {}", self.weight));
                return bad;
            };
            for ((n, r), c) in &self.coeffs {
                let image = self.coeffs.get(&(*n, r.mul_unit(u)));
                let agrees = match (image, t) {
                    (Some(x), 1) => x == c,
                    (Some(x), _) => *x == -c,
                    (None, _) => false,
                };
                if !agrees {
                    bad.push(format!("n={n}, r={r}, unit {u:?}"));
                }
            }
        }
        bad
    }

    /// c(n, r) = c(n', r') whenever D agrees and r = r' mod mO.
    pub fn check_shift_class(&self) -> ShiftClassReport {
        let modulus = 2 * self.index.max(1);
        let mut classes: HashMap<(i64, i64, i64), (Rat, JKey, usize)> = HashMap::new();
        let mut report = ShiftClassReport::default();
        for (n, r) in self.support_keys() {
            let key = (self.discriminant(n, r), r.a1.rem_euclid(modulus), r.a2.rem_euclid(modulus));
            let c = self.coeff(n, r);
            match classes.get_mut(&key) {
                None => {
                    classes.insert(key, (c, (n, r), 1));
                }
                Some((c0, k0, count)) => {
                    *count += 1;
                    if *c0 != c {
                        report.violations.push(format!("n={n}, r={r} disagrees with n={}, r={}", k0.0, k0.1));
                    }
                }
            }
        }
        report.classes_checked = classes.len();
        report.singleton_classes = classes.values().filter(|v| v.2 == 1).count();
        report
    }

    /// r -> rho r, index N(rho) m.
    pub fn index_raise(&self, rho: Gaussian) -> HJForm {
        assert!(rho.norm() != 0, "rho must be nonzero");
        let coeffs = self.coeffs.iter().map(|(&(n, r), c)| ((n, r.mul_gauss(rho)), c.clone())).collect();
        HJForm { coeffs, index: self.index * rho.norm(), ..self.clone() }
    }
}

/// (1/4) sum over units of the slash action with the given (k, m, delta).
pub fn average(f: &HJForm, k: i64, m: i64, parity: Parity) -> Result<HJForm> {
    let g = f.retag(k, m, parity);
    let mut acc = HJForm::raw(k, m, parity, g.trunc, g.heat_depth, BTreeMap::new());
    for u in Unit::ALL {
        acc = acc.add(&g.slash_unit(u)?)?;
    }
    Ok(acc.scale(&Rat::new(1, 4)))
}

/// Least common denominator of a family of rationals.
pub(crate) fn common_denominator<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    it.fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// Truncated convolution over (n, r), accumulating on integers.
///
/// Numerators are scaled to a common denominator and summed in a dense
/// (n, a1, a2) grid, in i128 while that suffices and in BigInt otherwise.
pub(crate) fn convolve(a: &BTreeMap<JKey, Rat>, b: &BTreeMap<JKey, Rat>, trunc: i64) -> BTreeMap<JKey, Rat> {
    let da = common_denominator(a.values());
    let db = common_denominator(b.values());
    let scaled = |m: &BTreeMap<JKey, Rat>, d: &BigInt| -> Vec<(JKey, BigInt)> {
        m.range(..(trunc + 1, HalfGauss::MIN)).map(|(k, c)| (*k, c.numer() * (d / c.denom()))).collect()
    };
    let (ia, ib) = (scaled(a, &da), scaled(b, &db));
    if ia.is_empty() || ib.is_empty() {
        return BTreeMap::new();
    }
    let reach = |v: &[(JKey, BigInt)]| v.iter().map(|((_, r), _)| r.a1.abs().max(r.a2.abs())).max().unwrap_or(0);
    let grid = Grid { trunc, half: reach(&ia) + reach(&ib) };
    let den = da * db;
    let sums = convolve_small(&ia, &ib, &grid).unwrap_or_else(|| convolve_big(&ia, &ib, &grid));
    sums.into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (grid.key(i), Rat::new(v, den.clone())))
        .collect()
}

struct Grid {
    trunc: i64,
    half: i64,
}

impl Grid {
    fn width(&self) -> i64 {
        2 * self.half + 1
    }

    fn len(&self) -> usize {
        ((self.trunc + 1) * self.width() * self.width()) as usize
    }

    fn index(&self, n: i64, r: HalfGauss) -> usize {
        let w = self.width();
        ((n * w + r.a1 + self.half) * w + r.a2 + self.half) as usize
    }

    fn key(&self, i: usize) -> JKey {
        let w = self.width();
        let i = i as i64;
        (i / (w * w), HalfGauss::new((i / w) % w - self.half, i % w - self.half))
    }
}

fn convolve_small(ia: &[(JKey, BigInt)], ib: &[(JKey, BigInt)], grid: &Grid) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let small = |v: &[(JKey, BigInt)]| v.iter().map(|(k, x)| x.to_i128().map(|x| (*k, x))).collect::<Option<Vec<_>>>();
    let (sa, sb) = (small(ia)?, small(ib)?);
    let mut acc = vec![0i128; grid.len()];
    for &((n1, r1), x) in &sa {
        for &((n2, r2), y) in sb.iter().take_while(|((n2, _), _)| n1 + n2 <= grid.trunc) {
            let slot = &mut acc[grid.index(n1 + n2, r1 + r2)];
            *slot = slot.checked_add(x.checked_mul(y)?)?;
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn convolve_big(ia: &[(JKey, BigInt)], ib: &[(JKey, BigInt)], grid: &Grid) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); grid.len()];
    for ((n1, r1), x) in ia {
        for ((n2, r2), y) in ib.iter().take_while(|((n2, _), _)| n1 + n2 <= grid.trunc) {
            acc[grid.index(n1 + n2, *r1 + *r2)] += x * y;
        }
    }
    acc
}
