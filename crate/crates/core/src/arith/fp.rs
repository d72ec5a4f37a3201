use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime p >= 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p >= 5 && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::BadPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Residue of an arbitrary signed integer.
    pub fn residue(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero mod {}", self.0);
        self.pow(a, self.0 - 2)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Prime> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Element of F_p carrying its modulus.
///
/// Mixing moduli in arithmetic panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    residue: u64,
    modulus: Prime,
}

impl Fp {
    pub fn new(x: u64, p: Prime) -> Fp {
        Fp { residue: x % p.get(), modulus: p }
    }

    pub fn from_i64(x: i64, p: Prime) -> Fp {
        Fp { residue: p.residue(x), modulus: p }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inv(self) -> Fp {
        Fp { residue: self.modulus.inv(self.residue), modulus: self.modulus }
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp { residue: self.modulus.pow(self.residue, e), modulus: self.modulus }
    }

    fn same(self, o: Fp) -> Prime {
        assert_eq!(self.modulus, o.modulus, "mixed moduli in F_p arithmetic");
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let p = self.same(o);
        Fp { residue: p.add(self.residue, o.residue), modulus: p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let p = self.same(o);
        Fp { residue: p.sub(self.residue, o.residue), modulus: p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        let p = self.same(o);
        Fp { residue: p.mul(self.residue, o.residue), modulus: p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { residue: self.modulus.neg(self.residue), modulus: self.modulus }
    }
}

/// Legendre symbol via Euler's criterion.
pub fn legendre(b: i64, p: Prime) -> i8 {
    let r = p.pow(p.residue(b), (p.get() - 1) / 2);
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}
