//! Truncated q-expansions of elliptic (quasi-)modular forms on SL2(Z).

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{bernoulli, sigma, Prime, Rat};
use crate::error::{Error, Result};
use crate::modp::{linalg, Filtration, FiltrationReport};

/// Truncated q-series; coefficients for `n <= trunc` are exact, missing keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    weight: i64,
    is_quasi: bool,
    trunc: i64,
    coeffs: BTreeMap<i64, Rat>,
}

impl QSeries {
    pub fn new(weight: i64, is_quasi: bool, trunc: i64, coeffs: BTreeMap<i64, Rat>) -> Result<QSeries> {
        if let Some((&n, _)) = coeffs.iter().find(|(&n, _)| n < 0 || n > trunc) {
            return Err(Error::InvariantViolation {
                key: format!("n={n}"),
                rule: format!("key outside 0..={trunc}"),
            });
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(QSeries { weight, is_quasi, trunc, coeffs })
    }

    pub fn zero(weight: i64, trunc: i64) -> QSeries {
        QSeries { weight, is_quasi: false, trunc, coeffs: BTreeMap::new() }
    }

    /// The constant series 1 of weight 0.
    pub fn one(trunc: i64) -> QSeries {
        QSeries { weight: 0, is_quasi: false, trunc, coeffs: BTreeMap::from([(0, Rat::one())]) }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_quasi(&self) -> bool {
        self.is_quasi
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, n: i64) -> Rat {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients 0..=trunc as a dense vector.
    pub fn dense(&self) -> Vec<Rat> {
        (0..=self.trunc).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, trunc: i64) -> QSeries {
        let trunc = trunc.min(self.trunc);
        QSeries {
            weight: self.weight,
            is_quasi: self.is_quasi,
            trunc,
            coeffs: self.coeffs.range(..=trunc).map(|(&n, c)| (n, c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&i, a) in self.coeffs.range(..=trunc) {
            for (&j, b) in other.coeffs.range(..=trunc - i) {
                *out.entry(i + j).or_default() += &(a * b);
            }
        }
        out.retain(|_, c| !c.is_zero());
        QSeries { weight: self.weight + other.weight, is_quasi: self.is_quasi || other.is_quasi, trunc, coeffs: out }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        (0..e).fold(QSeries::one(self.trunc), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &QSeries, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<QSeries> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(self.weight, other.weight));
        }
        let trunc = self.trunc.min(other.trunc);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().filter(|&n| n <= trunc).collect();
        let coeffs = keys
            .into_iter()
            .map(|n| (n, f(&self.coeff(n), &other.coeff(n))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(QSeries { weight: self.weight, is_quasi: self.is_quasi || other.is_quasi, trunc, coeffs })
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&n, a)| (n, a * c)).collect()
        };
        QSeries { coeffs, ..self.clone() }
    }

    /// Coefficients 0..=trunc reduced mod p.
    pub fn reduce(&self, p: Prime) -> Result<Vec<u64>> {
        let mut v = vec![0; self.trunc as usize + 1];
        for (&n, c) in &self.coeffs {
            v[n as usize] = c.reduce_mod_p(p)?.residue();
        }
        Ok(v)
    }
}

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n. Quasi-modular for k = 2.
pub fn eisenstein(k: i64, trunc: i64) -> QSeries {
    assert!(k >= 2 && k % 2 == 0, "Eisenstein weight must be even and >= 2");
    let factor = -Rat::from_int(2 * k) / bernoulli(k as u64);
    let mut coeffs = BTreeMap::from([(0, Rat::one())]);
    for n in 1..=trunc {
        coeffs.insert(n, &factor * &Rat::from_int(sigma(k as u32 - 1, n as u64)));
    }
    QSeries { weight: k, is_quasi: k == 2, trunc, coeffs }
}

/// The discriminant function (E4^3 - E6^2)/1728.
pub fn delta(trunc: i64) -> QSeries {
    let e4 = eisenstein(4, trunc);
    let e6 = eisenstein(6, trunc);
    e4.pow(3).sub(&e6.pow(2)).expect("equal weights").scale(&Rat::new(1, 1728))
}

/// All (a, b) with 4a + 6b = k, `a` descending.
pub fn monomial_basis(k: i64) -> Vec<(u32, u32)> {
    if k < 0 || k % 2 != 0 {
        return Vec::new();
    }
    (0..=k / 4)
        .rev()
        .filter(|a| (k - 4 * a) % 6 == 0)
        .map(|a| (a as u32, ((k - 4 * a) / 6) as u32))
        .collect()
}

/// floor(k/12) + 1.
pub fn sturm_elliptic(k: i64) -> i64 {
    k.div_euclid(12) + 1
}

/// Powers E4^a E6^b reduced mod p, memoized by exponent.
pub(crate) struct MonomialCache {
    p: Prime,
    len: usize,
    e4: Vec<u64>,
    e6: Vec<u64>,
    cache: BTreeMap<(u32, u32), Vec<u64>>,
}

impl MonomialCache {
    pub(crate) fn new(p: Prime, trunc: i64) -> MonomialCache {
        let e4 = eisenstein(4, trunc).reduce(p).expect("E4 is p-integral for p >= 5");
        let e6 = eisenstein(6, trunc).reduce(p).expect("E6 is p-integral for p >= 5");
        MonomialCache { p, len: trunc as usize + 1, e4, e6, cache: BTreeMap::new() }
    }

    pub(crate) fn get(&mut self, a: u32, b: u32) -> &[u64] {
        if !self.cache.contains_key(&(a, b)) {
            let v = if a == 0 && b == 0 {
                let mut one = vec![0; self.len];
                one[0] = 1;
                one
            } else if a > 0 {
                let prev = self.get(a - 1, b).to_vec();
                linalg::convolve(self.p, &prev, &self.e4.clone())
            } else {
                let prev = self.get(a, b - 1).to_vec();
                linalg::convolve(self.p, &prev, &self.e6.clone())
            };
            self.cache.insert((a, b), v);
        }
        &self.cache[&(a, b)]
    }
}

/// Swinnerton-Dyer filtration of `f` mod p.
pub fn elliptic_filtration(f: &QSeries, p: Prime) -> Result<FiltrationReport> {
    let k = f.weight;
    let depth = sturm_elliptic(k);
    if f.trunc < depth {
        return Err(Error::InsufficientTruncation { need: depth, have: f.trunc });
    }
    let target: Vec<u64> = f.truncate(depth).reduce(p)?;
    let subject = format!("q-series of weight {k}");
    if target.iter().all(|&x| x == 0) && f.reduce(p)?.iter().all(|&x| x == 0) {
        return Ok(FiltrationReport::zero(subject, p, depth, true));
    }
    let mut cache = MonomialCache::new(p, depth);
    let mut tested = Vec::new();
    let step = p.get() as i64 - 1;
    let mut kk = k.rem_euclid(step);
    while kk <= k {
        tested.push(kk);
        let basis = monomial_basis(kk);
        let cols: Vec<Vec<u64>> = basis.iter().map(|&(a, b)| cache.get(a, b).to_vec()).collect();
        if let Some(x) = linalg::solve(p, &cols, &target) {
            let witness = basis
                .iter()
                .zip(x)
                .filter(|(_, c)| *c != 0)
                .map(|(&(a, b), c)| (format!("E4^{a}*E6^{b}"), c))
                .collect();
            return Ok(FiltrationReport {
                subject,
                p,
                filtration: Filtration::Weight(kk),
                candidates_tested: tested,
                witness,
                verified_depth: depth,
                rigorous: true,
            });
        }
        kk += step;
    }
    Err(Error::Unsupported(format!("no weight <= {k} realizes the reduction; input is not a modular form")))
}

/// Coefficient list of a polynomial-style q-series from integers, for tests and builders.
pub fn from_ints(weight: i64, trunc: i64, values: &[i64]) -> QSeries {
    let coeffs = values
        .iter()
        .enumerate()
        .filter(|(n, _)| *n as i64 <= trunc)
        .map(|(n, &c)| (n as i64, Rat::from_int(BigInt::from(c))))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    QSeries { weight, is_quasi: false, trunc, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_first_coefficients() {
        assert_eq!(eisenstein(4, 3).coeff(1), Rat::from_int(240));
        assert_eq!(eisenstein(2, 3).coeff(1), Rat::from_int(-24));
        assert!(eisenstein(2, 3).is_quasi());
        assert_eq!(eisenstein(6, 3).coeff(1), Rat::from_int(-504));
        assert_eq!(eisenstein(4, 3).coeff(2), Rat::from_int(2160));
    }

    #[test]
    fn delta_normalized() {
        let d = delta(5);
        assert_eq!(d.weight(), 12);
        assert_eq!(d.coeff(0), Rat::zero());
        assert_eq!(d.coeff(1), Rat::one());
        assert_eq!(d.coeff(2), Rat::from_int(-24));
        assert_eq!(d.coeff(5), Rat::from_int(4830));
    }

    #[test]
    fn ring_ops() {
        let e4 = eisenstein(4, 6);
        let sq = e4.mul(&e4);
        assert_eq!(sq.weight(), 8);
        assert_eq!(sq.coeff(0), Rat::one());
        // E4^2 = E8
        assert_eq!(sq, eisenstein(8, 6));
        assert!(e4.scale(&Rat::zero()).is_zero());
        assert_eq!(e4.scale(&Rat::zero()).weight(), 4);
        assert!(matches!(e4.add(&eisenstein(6, 6)), Err(Error::WeightMismatch(4, 6))));
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_basis(12), vec![(3, 0), (0, 2)]);
        assert_eq!(monomial_basis(2), vec![]);
        assert_eq!(monomial_basis(10), vec![(1, 1)]);
        assert_eq!(monomial_basis(0), vec![(0, 0)]);
    }

    #[test]
    fn filtrations() {
        for p in [5, 7, 11, 13] {
            let p = Prime::new(p).unwrap();
            let e = eisenstein(p.get() as i64 - 1, 10);
            assert_eq!(elliptic_filtration(&e, p).unwrap().filtration, Filtration::Weight(0));
        }
        let p5 = Prime::new(5).unwrap();
        let r = elliptic_filtration(&delta(5), p5).unwrap();
        assert_eq!(r.filtration, Filtration::Weight(12));
        assert_eq!(r.candidates_tested, vec![0, 4, 8, 12]);
        let z = QSeries::zero(12, 5);
        assert_eq!(elliptic_filtration(&z, p5).unwrap().filtration, Filtration::ZeroModP);
    }
}
