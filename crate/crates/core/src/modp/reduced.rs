//! Reductions of expansions modulo p.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::arith::{Prime, Rat};
use crate::error::Result;
use crate::hjf::{discriminant, isqrt, lattice_points, HJForm, HalfGauss, JKey, Parity};
use crate::hmf::{HKey, HMForm};

/// Reduction of a Hermitian Jacobi form (or heat image) modulo p.
///
/// `weight` and `parity` are those of the mod-p form: a heat image of depth
/// j of a weight-k form has weight k + j(p+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHjf {
    pub p: Prime,
    pub index: i64,
    pub weight: i64,
    pub parity: Parity,
    pub trunc: i64,
    coeffs: BTreeMap<JKey, u64>,
}

impl ReducedHjf {
    pub fn new(phi: &HJForm, p: Prime) -> Result<ReducedHjf> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in phi.coeffs() {
            let r = c.reduce_mod_p(p)?.residue();
            if r != 0 {
                coeffs.insert(*k, r);
            }
        }
        Ok(ReducedHjf {
            p,
            index: phi.index(),
            weight: phi.weight_mod_p(p),
            parity: phi.parity_mod_p(p),
            trunc: phi.trunc(),
            coeffs,
        })
    }

    pub fn coeff(&self, n: i64, r: HalfGauss) -> u64 {
        self.coeffs.get(&(n, r)).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<JKey, u64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn discriminant(&self, (n, r): JKey) -> i64 {
        discriminant(n, r, self.index)
    }

    pub fn truncate(&self, trunc: i64) -> ReducedHjf {
        let trunc = trunc.min(self.trunc);
        let coeffs = self.coeffs.range(..(trunc + 1, HalfGauss::MIN)).map(|(k, v)| (*k, *v)).collect();
        ReducedHjf { coeffs, trunc, ..self.clone() }
    }

    /// The heat operator applied j times.
    pub fn heat_pow(&self, j: u32) -> ReducedHjf {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, &c)| (k, p.mul(c, p.pow(p.residue(self.discriminant(k)), j as u64))))
            .filter(|(_, c)| *c != 0)
            .collect();
        let flips = p.get() % 4 == 1 && j % 2 == 1;
        ReducedHjf {
            coeffs,
            weight: self.weight + j as i64 * (p.get() as i64 + 1),
            parity: if flips { self.parity.flip() } else { self.parity },
            ..self.clone()
        }
    }

    pub fn heat(&self) -> ReducedHjf {
        self.heat_pow(1)
    }

    /// a*self + b*other, coefficientwise. Weights may differ by multiples of p-1;
    /// the result carries the larger one.
    pub fn lin_comb(&self, a: u64, other: &ReducedHjf, b: u64) -> ReducedHjf {
        let p = self.p;
        assert_eq!(p, other.p, "mixed moduli");
        assert_eq!((self.weight - other.weight).rem_euclid(p.get() as i64 - 1), 0, "weights not congruent mod p-1");
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<JKey, u64> = BTreeMap::new();
        for (k, &c) in self.coeffs.range(..(trunc + 1, HalfGauss::MIN)) {
            coeffs.insert(*k, p.mul(a, c));
        }
        for (k, &c) in other.coeffs.range(..(trunc + 1, HalfGauss::MIN)) {
            let e = coeffs.entry(*k).or_insert(0);
            *e = p.add(*e, p.mul(b, c));
        }
        coeffs.retain(|_, c| *c != 0);
        ReducedHjf {
            p,
            index: self.index,
            weight: self.weight.max(other.weight),
            parity: self.parity,
            trunc,
            coeffs,
        }
    }

    /// Whether the coefficient maps agree (weights ignored).
    pub fn same_coefficients(&self, other: &ReducedHjf) -> bool {
        let t = self.trunc.min(other.trunc);
        self.truncate(t).coeffs == other.truncate(t).coeffs
    }
}

/// Enumerated key set {(n, r, m) : n + m <= t0, T >= 0} with O(1) lookup.
#[derive(Debug)]
pub struct KeySpace {
    pub t0: i64,
    pub keys: Vec<HKey>,
    disc: Vec<i64>,
    groups: Vec<Group>,
    group_of: HashMap<(i64, i64), usize>,
}

#[derive(Debug)]
struct Group {
    n: i64,
    m: i64,
    bound: i64,
    members: Vec<(HalfGauss, usize)>,
    grid: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Group {
    fn lookup(&self, r: HalfGauss) -> usize {
        let w = 2 * self.bound + 1;
        if r.a1.abs() > self.bound || r.a2.abs() > self.bound {
            return NONE;
        }
        self.grid[((r.a1 + self.bound) * w + r.a2 + self.bound) as usize]
    }
}

impl KeySpace {
    pub fn new(t0: i64) -> Arc<KeySpace> {
        let mut keys = Vec::new();
        let mut groups = Vec::new();
        let mut group_of = HashMap::new();
        for n in 0..=t0 {
            for m in 0..=t0 - n {
                let bound = isqrt(4 * n * m);
                let w = 2 * bound + 1;
                let mut grid = vec![NONE; (w * w) as usize];
                let mut members = Vec::new();
                for r in lattice_points(4 * n * m) {
                    grid[((r.a1 + bound) * w + r.a2 + bound) as usize] = keys.len();
                    members.push((r, keys.len()));
                    keys.push((n, r, m));
                }
                group_of.insert((n, m), groups.len());
                groups.push(Group { n, m, bound, members, grid });
            }
        }
        let disc = keys.iter().map(|&(n, r, m)| discriminant(n, r, m)).collect();
        Arc::new(KeySpace { t0, keys, disc, groups, group_of })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, (n, r, m): HKey) -> Option<usize> {
        let g = &self.groups[*self.group_of.get(&(n, m))?];
        let i = g.lookup(r);
        (i != NONE).then_some(i)
    }

    pub fn disc(&self, i: usize) -> i64 {
        self.disc[i]
    }

    /// Keys with n <= m and r the least of its orbit under units and conjugation.
    pub fn canonical_rows(&self) -> Vec<usize> {
        (0..self.keys.len())
            .filter(|&i| {
                let (n, r, m) = self.keys[i];
                n <= m && orbit_rep(r) == r
            })
            .collect()
    }

    /// Truncated product of two dense coefficient vectors mod p.
    pub fn convolve(&self, p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.keys.len()];
        for g1 in &self.groups {
            if g1.members.iter().all(|&(_, i)| a[i] == 0) {
                continue;
            }
            for g2 in &self.groups {
                if g1.n + g2.n + g1.m + g2.m > self.t0 {
                    continue;
                }
                let target = &self.groups[self.group_of[&(g1.n + g2.n, g1.m + g2.m)]];
                for &(r1, i1) in &g1.members {
                    let x = a[i1];
                    if x == 0 {
                        continue;
                    }
                    for &(r2, i2) in &g2.members {
                        let y = b[i2];
                        if y != 0 {
                            let t = target.lookup(r1 + r2);
                            debug_assert!(t != NONE);
                            out[t] = p.add(out[t], p.mul(x, y));
                        }
                    }
                }
            }
        }
        out
    }
}

fn orbit_rep(r: HalfGauss) -> HalfGauss {
    let mut best = r;
    for s in [r, r.conj()] {
        let mut t = s;
        for _ in 0..4 {
            t = HalfGauss::new(-t.a2, t.a1);
            best = best.min(t);
        }
    }
    best
}

/// Reduction of a degree-2 form modulo p as a dense vector over a key space.
#[derive(Clone, Debug)]
pub struct ReducedHmf {
    pub p: Prime,
    pub weight: i64,
    pub space: Arc<KeySpace>,
    pub coeffs: Vec<u64>,
}

impl ReducedHmf {
    pub fn new(f: &HMForm, p: Prime, space: &Arc<KeySpace>) -> Result<ReducedHmf> {
        assert!(f.trunc() >= space.t0, "form truncated below key space");
        let mut coeffs = vec![0u64; space.len()];
        for (i, &k) in space.keys.iter().enumerate() {
            let c: Rat = f.coeff(k.0, k.1, k.2);
            if !c.is_zero() {
                coeffs[i] = c.reduce_mod_p(p)?.residue();
            }
        }
        Ok(ReducedHmf { p, weight: f.weight_mod_p(p), space: space.clone(), coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, o: &ReducedHmf) -> ReducedHmf {
        ReducedHmf {
            p: self.p,
            weight: self.weight + o.weight,
            space: self.space.clone(),
            coeffs: self.space.convolve(self.p, &self.coeffs, &o.coeffs),
        }
    }

    /// The operator D applied j times.
    pub fn d_pow(&self, j: u32) -> ReducedHmf {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if c == 0 { 0 } else { p.mul(c, p.pow(p.residue(self.space.disc(i)), j as u64)) })
            .collect();
        ReducedHmf { coeffs, weight: self.weight + j as i64 * (p.get() as i64 + 1), ..self.clone() }
    }

    pub fn lin_comb(&self, a: u64, o: &ReducedHmf, b: u64) -> ReducedHmf {
        let p = self.p;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&x, &y)| p.add(p.mul(a, x), p.mul(b, y))).collect();
        ReducedHmf { coeffs, weight: self.weight.max(o.weight), ..self.clone() }
    }

    pub fn key(&self, i: usize) -> HKey {
        self.space.keys[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keyspace_lookup() {
        let ks = KeySpace::new(4);
        for (i, &k) in ks.keys.iter().enumerate() {
            assert_eq!(ks.index_of(k), Some(i));
        }
        assert_eq!(ks.index_of((1, HalfGauss::new(3, 0), 1)), None);
        assert!(ks.canonical_rows().len() < ks.len());
    }

    #[test]
    fn orbit_representative() {
        let r = HalfGauss::new(1, 2);
        let reps: Vec<HalfGauss> = [r, r.conj(), HalfGauss::new(-2, 1), HalfGauss::new(2, -1)].iter().map(|&s| orbit_rep(s)).collect();
        assert!(reps.iter().all(|&s| s == reps[0]));
    }
}
