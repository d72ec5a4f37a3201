//! Exact rationals, the prime field F_p, Legendre symbols and Bernoulli numbers.

mod fp;
mod rat;

pub use fp::{legendre, Fp, Prime};
pub use rat::Rat;

use num_bigint::BigInt;

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The n-th Bernoulli number (B_1 = -1/2 convention), from
/// sum_{j<=n} C(n+1, j) B_j = 0.
pub fn bernoulli(n: u64) -> Rat {
    let mut b: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let s: Rat = (0..m).map(|j| Rat::from_int(binomial(m + 1, j)) * &b[j as usize]).sum();
        b.push(-s / Rat::from_int(m as i64 + 1));
    }
    b.pop().unwrap()
}

/// Sum of d^s over positive divisors d of n (n >= 1).
pub fn sigma(s: u32, n: u64) -> BigInt {
    let mut total = BigInt::from(0);
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(s);
            if d * d != n {
                total += BigInt::from(n / d).pow(s);
            }
        }
        d += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2), Rat::new(1, 6));
        assert_eq!(bernoulli(4), Rat::new(-1, 30));
        assert_eq!(bernoulli(12), Rat::new(-691, 2730));
        assert_eq!(bernoulli(3), Rat::zero());
    }

    // Akiyama-Tanigawa algorithm; yields B_1 = +1/2 but agrees for even n.
    fn akiyama_tanigawa(n: usize) -> Rat {
        let mut a: Vec<Rat> = (0..=n).map(|m| Rat::new(1, m as i64 + 1)).collect();
        for m in 0..=n {
            a[m] = Rat::new(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = Rat::from_int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in (2..=30).step_by(2) {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n as usize), "n = {n}");
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 12), BigInt::from(28));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(0, 1), BigInt::from(1));
    }
}
