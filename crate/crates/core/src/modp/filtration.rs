//! Filtrations by F_p linear algebra on Fourier coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::linalg;
use super::reduced::{KeySpace, ReducedHjf, ReducedHmf};
use super::report::{Filtration, FiltrationReport};
use crate::arith::{Prime, Rat};
use crate::error::{Error, Result};
use crate::genio::sturm_eta;
use crate::hjf::{HJForm, HalfGauss, JKey};
use crate::hmf::HMForm;
use crate::qexp::{eisenstein, monomial_basis, MonomialCache};

/// What to do when the data does not reach the Sturm bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthPolicy {
    /// Refuse with `InsufficientTruncation`.
    Strict,
    /// Use all available coefficients and mark the result "at truncation".
    BestEffort,
}

/// Graded basis of Hermitian Jacobi forms of one index over M_*(SL2(Z)),
/// given by generators that get multiplied by E4^a E6^b.
///
/// Membership is decided on one key per shift class: the keys (n, r) with
/// r in a set of least-norm representatives of O^# / mO. Every coefficient
/// of a Jacobi form is determined by these.
pub struct JacobiBasis {
    p: Prime,
    index: i64,
    depth: i64,
    reps: Vec<(HalfGauss, i64)>,
    /// Per generator: label, weight, dense rows [rep][n] mod p.
    gens: Vec<(String, i64, Vec<Vec<u64>>)>,
    monomials: MonomialCache,
    columns: HashMap<(usize, u32, u32), Vec<Vec<u64>>>,
}

impl JacobiBasis {
    /// Caller-supplied generators (label, form) of a free module of the given index.
    pub fn new(p: Prime, index: i64, gens: &[(&str, &HJForm)]) -> Result<JacobiBasis> {
        let depth = gens.iter().map(|(_, g)| g.trunc()).min().unwrap_or(0);
        let reps = class_reps(index);
        let mut dense = Vec::new();
        for (label, g) in gens {
            if g.index() != index {
                return Err(Error::IndexMismatch(index, g.index()));
            }
            let rows = reps
                .iter()
                .map(|&(r, _)| (0..=depth).map(|n| g.coeff(n, r).reduce_mod_p(p).map(|x| x.residue())).collect())
                .collect::<Result<Vec<Vec<u64>>>>()?;
            dense.push((label.to_string(), g.weight(), rows));
        }
        Ok(JacobiBasis {
            p,
            index,
            depth,
            reps,
            gens: dense,
            monomials: MonomialCache::new(p, depth),
            columns: HashMap::new(),
        })
    }

    /// Native index-1 basis from the generators of weights 4, 6, 8 and 10.
    ///
    /// The weight-8 Eisenstein generator is replaced by the primitive cusp
    /// form (E4 phi4 - phi8)/c, with c its coefficient at D = 2, so that the
    /// basis stays a basis over Z_(p) for every p >= 5 (E4 phi4 and phi8 agree
    /// mod 5).
    pub fn index_one(p: Prime, phi4: &HJForm, phi6: &HJForm, phi8: &HJForm, phi10: &HJForm) -> Result<JacobiBasis> {
        let depth = [phi4, phi6, phi8, phi10].iter().map(|g| g.trunc()).min().unwrap();
        let x8 = cusp_eight(phi4, phi8, depth)?;
        JacobiBasis::new(p, 1, &[("phi4", phi4), ("phi6", phi6), ("x8", &x8), ("phi10", phi10)])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn available_depth(&self) -> i64 {
        self.depth
    }

    /// Row keys for n <= depth.
    pub fn rows(&self, depth: i64) -> Vec<JKey> {
        shift_class_rows(self.index, depth)
    }

    fn column(&mut self, g: usize, a: u32, b: u32) -> &Vec<Vec<u64>> {
        if !self.columns.contains_key(&(g, a, b)) {
            let mono = self.monomials.get(a, b).to_vec();
            let col = self.gens[g].2.iter().map(|row| linalg::convolve(self.p, &mono, row)).collect();
            self.columns.insert((g, a, b), col);
        }
        &self.columns[&(g, a, b)]
    }

    /// Labelled spanning set of the weight-k piece, evaluated on `rows(depth)`.
    pub fn basis(&mut self, weight: i64, depth: i64) -> Vec<(String, Vec<u64>)> {
        let depth = depth.min(self.depth);
        let reps = self.reps.clone();
        let mut out = Vec::new();
        for g in 0..self.gens.len() {
            let (label, k) = (self.gens[g].0.clone(), self.gens[g].1);
            for (a, b) in monomial_basis(weight - k) {
                let full = self.column(g, a, b);
                let col = reps
                    .iter()
                    .zip(full)
                    .flat_map(|(&(_, nmin), row)| row[nmin.min(depth + 1) as usize..=depth as usize].iter().copied())
                    .collect();
                out.push((format!("E4^{a}*E6^{b}*{label}"), col));
            }
        }
        out
    }
}

/// (E4 phi4 - phi8)/c on shift-class rows, c the coefficient at (1, (1+i)/2).
fn cusp_eight(phi4: &HJForm, phi8: &HJForm, depth: i64) -> Result<HJForm> {
    let e4 = eisenstein(4, depth).dense();
    let mut coeffs = BTreeMap::new();
    for (n, r) in shift_class_rows(1, depth) {
        let mut c = -phi8.coeff(n, r);
        for i in 0..=n {
            let x = phi4.coeff(n - i, r);
            if !x.is_zero() {
                c += &(&e4[i as usize] * &x);
            }
        }
        coeffs.insert((n, r), c);
    }
    let norm = coeffs.get(&(1, HalfGauss::new(1, 1))).cloned().unwrap_or_default();
    if norm.is_zero() {
        return Err(Error::Unsupported("weight-8 generators are proportional".into()));
    }
    let inv = Rat::one() / norm;
    let coeffs = coeffs.into_iter().map(|(k, c)| (k, c * &inv)).collect();
    HJForm::new(8, 1, crate::hjf::Parity::Plus, depth, coeffs)
}

/// Least-norm representatives r of O^# / mO with the least n for which (n, r) is a key.
fn class_reps(m: i64) -> Vec<(HalfGauss, i64)> {
    let mut reps = Vec::new();
    for a1 in (-m + 1)..=m {
        for a2 in (-m + 1)..=m {
            let r = HalfGauss::new(a1, a2);
            reps.push((r, (r.norm4() + 4 * m - 1) / (4 * m)));
        }
    }
    reps
}

/// Keys (n, r) with n <= depth and a1, a2 in (-m, m].
pub fn shift_class_rows(m: i64, depth: i64) -> Vec<JKey> {
    class_reps(m).into_iter().flat_map(|(r, nmin)| (nmin..=depth).map(move |n| (n, r))).collect()
}

/// Least weight k' = weight(target) mod p-1 whose basis span contains the target.
pub fn hjf_filtration(
    target: &ReducedHjf,
    basis: &mut JacobiBasis,
    subject: &str,
    policy: DepthPolicy,
) -> Result<FiltrationReport> {
    if target.index != basis.index() {
        return Err(Error::NoBasisForIndex(target.index));
    }
    if target.p != basis.prime() {
        return Err(Error::Unsupported("basis built for another prime".into()));
    }
    let p = target.p;
    let k = target.weight;
    let need = sturm_eta(k, target.index);
    let have = target.trunc.min(basis.available_depth());
    if policy == DepthPolicy::Strict && have < need {
        return Err(Error::InsufficientTruncation { need, have });
    }
    let depth = need.min(have);
    let rigorous = have >= need;
    if target.is_zero() {
        return Ok(FiltrationReport::zero(subject.to_string(), p, target.trunc, rigorous));
    }
    let rows = basis.rows(depth);
    let values: Vec<u64> = rows.iter().map(|&(n, r)| target.coeff(n, r)).collect();
    let step = p.get() as i64 - 1;
    let mut tested = Vec::new();
    let mut kk = k.rem_euclid(step);
    while kk <= k {
        tested.push(kk);
        let cols = basis.basis(kk, depth);
        let mats: Vec<Vec<u64>> = cols.iter().map(|(_, c)| c.clone()).collect();
        if rigorous && linalg::rank(p, &mats) < mats.len() {
            return Err(Error::Unsupported(format!("basis of weight {kk} is not independent mod {p}")));
        }
        if let Some(x) = linalg::solve(p, &mats, &values) {
            let witness = cols.into_iter().zip(x).filter(|(_, c)| *c != 0).map(|((l, _), c)| (l, c)).collect();
            return Ok(FiltrationReport {
                subject: subject.to_string(),
                p,
                filtration: Filtration::Weight(kk),
                candidates_tested: tested,
                witness,
                verified_depth: depth,
                rigorous,
            });
        }
        kk += step;
    }
    Err(Error::Unsupported(format!("{subject} is not in the span of the basis at any weight <= {k} mod {p}")))
}

/// Monomials in H4, H6, chi8, F10, F12 reduced mod p on a fixed key space.
pub struct HermitianBasis {
    p: Prime,
    space: Arc<KeySpace>,
    gens: Vec<ReducedHmf>,
    cache: HashMap<[u32; 5], Vec<u64>>,
}

const GEN_WEIGHTS: [i64; 5] = [4, 6, 8, 10, 12];
const GEN_LABELS: [&str; 5] = ["H4", "H6", "chi8", "F10", "F12"];

impl HermitianBasis {
    /// Generators in the order H4, H6, chi8, F10, F12.
    pub fn new(p: Prime, t0: i64, gens: [&HMForm; 5]) -> Result<HermitianBasis> {
        let have = gens.iter().map(|g| g.trunc()).min().unwrap();
        if have < t0 {
            return Err(Error::InsufficientTruncation { need: t0, have });
        }
        for (g, w) in gens.iter().zip(GEN_WEIGHTS) {
            if g.weight() != w {
                return Err(Error::WeightMismatch(w, g.weight()));
            }
        }
        let space = KeySpace::new(t0);
        let gens = gens.iter().map(|g| ReducedHmf::new(g, p, &space)).collect::<Result<Vec<_>>>()?;
        Ok(HermitianBasis { p, space, gens, cache: HashMap::new() })
    }

    pub fn space(&self) -> &Arc<KeySpace> {
        &self.space
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    fn monomial(&mut self, e: [u32; 5]) -> Vec<u64> {
        if let Some(v) = self.cache.get(&e) {
            return v.clone();
        }
        let v = match e.iter().position(|&x| x > 0) {
            None => {
                let mut one = vec![0; self.space.len()];
                one[self.space.index_of((0, HalfGauss::ZERO, 0)).unwrap()] = 1;
                one
            }
            Some(i) => {
                let mut prev = e;
                prev[i] -= 1;
                let base = self.monomial(prev);
                self.space.convolve(self.p, &base, &self.gens[i].coeffs)
            }
        };
        self.cache.insert(e, v.clone());
        v
    }

    /// Exponent vectors of weight k, lexicographically descending.
    pub fn exponents(k: i64) -> Vec<[u32; 5]> {
        fn rec(i: usize, left: i64, cur: &mut [u32; 5], out: &mut Vec<[u32; 5]>) {
            if i == 5 {
                if left == 0 {
                    out.push(*cur);
                }
                return;
            }
            for e in (0..=left / GEN_WEIGHTS[i]).rev() {
                cur[i] = e as u32;
                rec(i + 1, left - e * GEN_WEIGHTS[i], cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if k >= 0 && k % 2 == 0 {
            rec(0, k, &mut [0; 5], &mut out);
        }
        out
    }

    fn label(e: [u32; 5]) -> String {
        let parts: Vec<String> =
            e.iter().zip(GEN_LABELS).filter(|(x, _)| **x > 0).map(|(x, l)| format!("{l}^{x}")).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Least weight k' = weight(target) mod p-1 realized by generator monomials,
/// matched on all coefficients with n + m <= t0.
pub fn hmf_filtration(target: &ReducedHmf, basis: &mut HermitianBasis, subject: &str) -> Result<FiltrationReport> {
    let p = target.p;
    if p != basis.prime() {
        return Err(Error::Unsupported("basis built for another prime".into()));
    }
    if !Arc::ptr_eq(&target.space, basis.space()) {
        return Err(Error::Unsupported("target reduced on a different key space".into()));
    }
    let t0 = basis.space().t0;
    if target.is_zero() {
        return Ok(FiltrationReport::zero(subject.to_string(), p, t0, false));
    }
    let rows = basis.space().canonical_rows();
    let values: Vec<u64> = rows.iter().map(|&i| target.coeffs[i]).collect();
    let k = target.weight;
    let step = p.get() as i64 - 1;
    let mut tested = Vec::new();
    let mut kk = k.rem_euclid(step);
    while kk <= k {
        tested.push(kk);
        let exps = HermitianBasis::exponents(kk);
        let cols: Vec<Vec<u64>> = exps
            .iter()
            .map(|&e| {
                let v = basis.monomial(e);
                rows.iter().map(|&i| v[i]).collect()
            })
            .collect();
        if let Some(x) = linalg::solve(p, &cols, &values) {
            let witness =
                exps.into_iter().zip(x).filter(|(_, c)| *c != 0).map(|(e, c)| (HermitianBasis::label(e), c)).collect();
            return Ok(FiltrationReport {
                subject: subject.to_string(),
                p,
                filtration: Filtration::Weight(kk),
                candidates_tested: tested,
                witness,
                verified_depth: t0,
                rigorous: false,
            });
        }
        kk += step;
    }
    Err(Error::Unsupported(format!("{subject} is not a polynomial in the generators up to weight {k} mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_cover_classes_once() {
        let rows = shift_class_rows(1, 2);
        assert_eq!(rows.len(), 3 + 2 + 2 + 2);
        assert!(rows.contains(&(0, HalfGauss::ZERO)));
        assert!(rows.contains(&(1, HalfGauss::new(1, 1))));
        assert!(!rows.contains(&(0, HalfGauss::new(1, 0))));
        assert_eq!(shift_class_rows(2, 0).len(), 1);
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(HermitianBasis::exponents(0), vec![[0; 5]]);
        assert_eq!(HermitianBasis::exponents(8), vec![[2, 0, 0, 0, 0], [0, 0, 1, 0, 0]]);
        assert_eq!(HermitianBasis::exponents(10).len(), 2);
        assert_eq!(HermitianBasis::exponents(12).len(), 4);
        assert!(HermitianBasis::exponents(2).is_empty());
    }
}
