use std::collections::BTreeMap;

use super::form::HJForm;
use super::gauss::{isqrt, Gaussian, HalfGauss, Parity};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::qexp::QSeries;

/// Classical Jacobi form of scalar index, keyed by (n, a) with a^2 <= 4Mn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    pub weight: i64,
    pub index: i64,
    pub trunc: i64,
    pub coeffs: BTreeMap<(i64, i64), Rat>,
}

impl JacobiForm {
    pub fn coeff(&self, n: i64, a: i64) -> Rat {
        self.coeffs.get(&(n, a)).cloned().unwrap_or_default()
    }

    pub fn check_support(&self) -> bool {
        self.coeffs.keys().all(|&(n, a)| a * a <= 4 * self.index * n)
    }

    pub fn mul_qseries(&self, f: &QSeries) -> JacobiForm {
        let trunc = self.trunc.min(f.trunc());
        let mut coeffs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (&(n, a), c) in &self.coeffs {
            for (&i, x) in f.coeffs().range(..=trunc - n) {
                *coeffs.entry((n + i, a)).or_default() += &(c * x);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        JacobiForm { weight: self.weight + f.weight(), index: self.index, trunc, coeffs }
    }
}

/// Jacobi form for the matrix index diag(m, m), keyed by (n, (s1, s2)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixJacobiForm {
    pub weight: i64,
    pub index: i64,
    pub trunc: i64,
    pub coeffs: BTreeMap<(i64, (i64, i64)), Rat>,
}

impl MatrixJacobiForm {
    /// 4 det(B) n - B^#[s] >= 0 for B = diag(m, m).
    pub fn check_support(&self) -> bool {
        let m = self.index;
        self.coeffs.keys().all(|&(n, (s1, s2))| 4 * m * m * n - m * (s1 * s1 + s2 * s2) >= 0)
    }
}

impl HJForm {
    /// phi(tau, rho z, conj(rho) z): c(n, a) = sum over 2Re(rho r) = a.
    pub fn restrict(&self, rho: Gaussian) -> JacobiForm {
        assert!(rho.norm() != 0, "rho must be nonzero");
        let mut coeffs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (&(n, r), c) in self.coeffs() {
            *coeffs.entry((n, rho.x * r.a1 - rho.y * r.a2)).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        JacobiForm { weight: self.weight(), index: rho.norm() * self.index(), trunc: self.trunc(), coeffs }
    }

    /// (n, (a1, a2)) -> (n, (a1, -a2)).
    pub fn to_matrix_index(&self) -> MatrixJacobiForm {
        let coeffs = self.coeffs().iter().map(|(&(n, r), c)| ((n, (r.a1, -r.a2)), c.clone())).collect();
        MatrixJacobiForm { weight: self.weight(), index: self.index(), trunc: self.trunc(), coeffs }
    }

    pub fn from_matrix_index(g: &MatrixJacobiForm, parity: Parity) -> Result<HJForm> {
        let coeffs = g.coeffs.iter().map(|(&(n, (s1, s2)), c)| ((n, HalfGauss::new(s1, -s2)), c.clone())).collect();
        HJForm::new(g.weight, g.index, parity, g.trunc, coeffs)
    }
}

/// rho = 1 + 4b i with b one more than the largest |a_i| in the region n <= n0.
pub fn choose_rho(n0: i64, m: i64) -> Result<Gaussian> {
    if n0 < 0 || m < 0 {
        return Err(Error::Unsupported("choose_rho needs n0, m >= 0".into()));
    }
    let b = 1 + isqrt(4 * m * n0);
    Ok(Gaussian::new(1, 4 * b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hjf::gauss::lattice_points;
    use std::collections::HashSet;

    #[test]
    fn rho_choice() {
        assert_eq!(choose_rho(1, 1).unwrap(), Gaussian::new(1, 12));
        assert_eq!(choose_rho(0, 1).unwrap(), Gaussian::new(1, 4));
    }

    #[test]
    fn rho_is_injective_on_region() {
        for (n0, m) in [(1, 1), (3, 1), (2, 2), (5, 1)] {
            let rho = choose_rho(n0, m).unwrap();
            let images: Vec<i64> = lattice_points(4 * m * n0).map(|r| rho.x * r.a1 - rho.y * r.a2).collect();
            let set: HashSet<i64> = images.iter().copied().collect();
            assert_eq!(set.len(), images.len());
        }
    }

    #[test]
    fn matrix_index_single_term() {
        let f = HJForm::new(4, 1, Parity::Plus, 1, BTreeMap::from([((1, HalfGauss::new(1, 1)), Rat::one())])).unwrap();
        let g = f.to_matrix_index();
        assert_eq!(g.coeffs.keys().copied().collect::<Vec<_>>(), vec![(1, (1, -1))]);
        assert!(g.check_support());
        assert_eq!(HJForm::from_matrix_index(&g, Parity::Plus).unwrap(), f);
    }
}
