//! Loading, writing and validating expansion files; the derived cusp forms;
//! the Sturm bound for Hermitian Jacobi forms.

mod corpus;
mod derive;
mod format;

pub use corpus::{resolve_data_dir, verify_corpus, Corpus, ManifestEntry, VerifyReport, HJF_FILES, HMF_FILES};
pub use derive::{derive_chi8, derive_f10, derive_f12};
pub use format::{load, parse, save, validate_hjf, validate_hmf, write, Expansion, ExpansionFile};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::Rat;

/// eta(k, m) = floor(4m^2(k-1)/3 prod_{l | 4m} (1 - 1/l^2) + m/2).
pub fn sturm_eta(k: i64, m: i64) -> i64 {
    let mut x = Rat::new(4 * m * m * (k - 1), 3);
    let mut rest = 4 * m;
    let mut l = 2;
    while rest > 1 {
        if rest % l == 0 {
            x = x * Rat::new(l * l - 1, l * l);
            while rest % l == 0 {
                rest /= l;
            }
        }
        l += 1;
    }
    x += &Rat::new(m, 2);
    x.numer().div_floor(x.denom()).to_i64().expect("Sturm bound fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_values() {
        assert_eq!(sturm_eta(8, 1), 7);
        assert_eq!(sturm_eta(4, 1), 3);
        assert_eq!(sturm_eta(10, 2), 37);
        assert_eq!(sturm_eta(40, 1), 39);
        assert_eq!(sturm_eta(106, 1), 105);
    }

    #[test]
    fn sturm_odd_prime_factor() {
        // 4m = 12: (1 - 1/4)(1 - 1/9) = 2/3; 4*9*9/3 * 2/3 + 3/2 = 73.5
        assert_eq!(sturm_eta(10, 3), 73);
    }
}
