use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// r = (a1 + a2 i)/2 in the inverse different (i/2)Z[i] = (1/2)Z[i].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct HalfGauss {
    pub a1: i64,
    pub a2: i64,
}

impl HalfGauss {
    pub const ZERO: HalfGauss = HalfGauss { a1: 0, a2: 0 };
    pub(crate) const MIN: HalfGauss = HalfGauss { a1: i64::MIN, a2: i64::MIN };

    pub fn new(a1: i64, a2: i64) -> HalfGauss {
        HalfGauss { a1, a2 }
    }

    /// 4 N(r) = a1^2 + a2^2.
    pub fn norm4(self) -> i64 {
        self.a1 * self.a1 + self.a2 * self.a2
    }

    pub fn conj(self) -> HalfGauss {
        HalfGauss { a1: self.a1, a2: -self.a2 }
    }

    pub fn mul_gauss(self, g: Gaussian) -> HalfGauss {
        HalfGauss { a1: self.a1 * g.x - self.a2 * g.y, a2: self.a1 * g.y + self.a2 * g.x }
    }

    pub fn mul_unit(self, u: Unit) -> HalfGauss {
        self.mul_gauss(u.as_gauss())
    }
}

impl Add for HalfGauss {
    type Output = HalfGauss;
    fn add(self, o: HalfGauss) -> HalfGauss {
        HalfGauss { a1: self.a1 + o.a1, a2: self.a2 + o.a2 }
    }
}

impl Sub for HalfGauss {
    type Output = HalfGauss;
    fn sub(self, o: HalfGauss) -> HalfGauss {
        HalfGauss { a1: self.a1 - o.a1, a2: self.a2 - o.a2 }
    }
}

impl Neg for HalfGauss {
    type Output = HalfGauss;
    fn neg(self) -> HalfGauss {
        HalfGauss { a1: -self.a1, a2: -self.a2 }
    }
}

impl fmt::Display for HalfGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)/2", self.a1, self.a2)
    }
}

/// Gaussian integer x + y i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gaussian {
    pub x: i64,
    pub y: i64,
}

impl Gaussian {
    pub fn new(x: i64, y: i64) -> Gaussian {
        Gaussian { x, y }
    }

    pub fn norm(self) -> i64 {
        self.x * self.x + self.y * self.y
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.x, self.y)
    }
}

/// Units of Z[i], as powers of i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::MinusOne, Unit::MinusI];

    /// e with self = i^e.
    pub fn exponent(self) -> i64 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::MinusOne => 2,
            Unit::MinusI => 3,
        }
    }

    pub fn as_gauss(self) -> Gaussian {
        match self {
            Unit::One => Gaussian::new(1, 0),
            Unit::I => Gaussian::new(0, 1),
            Unit::MinusOne => Gaussian::new(-1, 0),
            Unit::MinusI => Gaussian::new(0, -1),
        }
    }

    pub fn inverse(self) -> Unit {
        match self {
            Unit::I => Unit::MinusI,
            Unit::MinusI => Unit::I,
            u => u,
        }
    }

    /// sigma(eps) eps^{-k}, when it is real (always for even k).
    pub fn twist(self, k: i64, parity: Parity) -> Option<i64> {
        let e = self.exponent();
        let sigma = if parity == Parity::Minus { 2 * e } else { 0 };
        match (sigma - e * k).rem_euclid(4) {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

/// The parity delta of a Hermitian Jacobi form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    pub fn times(self, o: Parity) -> Parity {
        if self == o {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }

    /// Parity of the Fourier-Jacobi coefficients of a symmetric form of weight k.
    pub fn of_weight(k: i64) -> Parity {
        if k.rem_euclid(4) == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// 4nm - (a1^2 + a2^2).
pub fn discriminant(n: i64, r: HalfGauss, m: i64) -> i64 {
    4 * n * m - r.norm4()
}

/// Largest |a| with a^2 <= bound.
pub(crate) fn isqrt(bound: i64) -> i64 {
    if bound <= 0 {
        return 0;
    }
    let mut s = (bound as f64).sqrt() as i64;
    while s * s > bound {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= bound {
        s += 1;
    }
    s
}

/// All r with a1^2 + a2^2 <= bound, ordered by (a1, a2).
pub(crate) fn lattice_points(bound: i64) -> impl Iterator<Item = HalfGauss> {
    let b = isqrt(bound);
    (-b..=b).flat_map(move |a1| {
        let c = isqrt(bound - a1 * a1);
        (-c..=c).map(move |a2| HalfGauss::new(a1, a2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_action() {
        let r = HalfGauss::new(1, 0);
        assert_eq!(r.mul_unit(Unit::I), HalfGauss::new(0, 1));
        assert_eq!(HalfGauss::new(3, 2).mul_unit(Unit::I), HalfGauss::new(-2, 3));
        for u in Unit::ALL {
            assert_eq!(r.mul_unit(u).mul_unit(u.inverse()), r);
        }
    }

    #[test]
    fn twists() {
        assert_eq!(Unit::I.twist(4, Parity::Plus), Some(1));
        assert_eq!(Unit::I.twist(6, Parity::Minus), Some(1));
        assert_eq!(Unit::I.twist(10, Parity::Plus), Some(-1));
        assert_eq!(Unit::I.twist(8, Parity::Minus), Some(-1));
        assert_eq!(Unit::MinusOne.twist(10, Parity::Plus), Some(1));
        assert_eq!(Unit::I.twist(5, Parity::Plus), None);
    }

    #[test]
    fn lattice() {
        assert_eq!(lattice_points(4).count(), 13);
        assert_eq!(lattice_points(0).count(), 1);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(1, HalfGauss::new(1, 1), 1), 2);
        assert_eq!(discriminant(1, HalfGauss::new(-1, 0), 1), 3);
    }
}
