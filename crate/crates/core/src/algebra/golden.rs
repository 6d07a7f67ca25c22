use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{bigint_signum, Field, Scalar};

const LAMBDA: f64 = 1.618_033_988_749_895;

/// Golden integer `p + qλ` with `λ² = λ + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GoldenInt {
    pub p: BigInt,
    pub q: BigInt,
}

impl GoldenInt {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        GoldenInt {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn integer(p: impl Into<BigInt>) -> Self {
        GoldenInt::new(p, 0)
    }

    /// The golden mean itself.
    pub fn lambda() -> Self {
        GoldenInt::new(0, 1)
    }

    /// Rational part `p`; the value is a rational integer iff `q == 0`.
    pub fn rational_part(&self) -> &BigInt {
        &self.p
    }

    pub fn lambda_part(&self) -> &BigInt {
        &self.q
    }

    pub fn is_rational_integer(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate, sending `λ` to `1 - λ`.
    pub fn conjugate(&self) -> Self {
        GoldenInt {
            p: &self.p + &self.q,
            q: -&self.q,
        }
    }

    /// Field norm `p² + pq - q²`.
    pub fn norm(&self) -> BigInt {
        &self.p * &self.p + &self.p * &self.q - &self.q * &self.q
    }

    pub fn mul_ref(&self, other: &GoldenInt) -> GoldenInt {
        let qq = &self.q * &other.q;
        GoldenInt {
            p: &self.p * &other.p + &qq,
            q: &self.p * &other.q + &self.q * &other.p + qq,
        }
    }

    pub fn add_ref(&self, other: &GoldenInt) -> GoldenInt {
        GoldenInt {
            p: &self.p + &other.p,
            q: &self.q + &other.q,
        }
    }

    pub fn scale(&self, k: &BigInt) -> GoldenInt {
        GoldenInt {
            p: &self.p * k,
            q: &self.q * k,
        }
    }

    fn content_gcd(&self) -> BigInt {
        self.p.gcd(&self.q)
    }
}

/// Exact sign of `a + b√5`.
fn sign_sqrt5(a: &BigInt, b: &BigInt) -> Ordering {
    let sa = bigint_signum(a);
    let sb = bigint_signum(b);
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (a * a).cmp(&(b * b * BigInt::from(5))),
        (Ordering::Less, Ordering::Greater) => (b * b * BigInt::from(5)).cmp(&(a * a)),
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            p: self.p + rhs.p,
            q: self.q + rhs.q,
        }
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            p: self.p - rhs.p,
            q: self.q - rhs.q,
        }
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: GoldenInt) -> GoldenInt {
        self.mul_ref(&rhs)
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            p: -self.p,
            q: -self.q,
        }
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "{}λ", self.q),
            (false, false) if self.q.is_negative() => write!(f, "{}{}λ", self.p, self.q),
            (false, false) => write!(f, "{}+{}λ", self.p, self.q),
        }
    }
}

impl Zero for GoldenInt {
    fn zero() -> Self {
        GoldenInt::default()
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for GoldenInt {
    fn one() -> Self {
        GoldenInt::integer(1)
    }
}

impl Scalar for GoldenInt {
    type Field = GoldenRational;

    fn signum(&self) -> Ordering {
        // p + qλ = (2p + q + q√5) / 2
        let two_p_plus_q = &self.p * BigInt::from(2) + &self.q;
        sign_sqrt5(&two_p_plus_q, &self.q)
    }
    fn as_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * LAMBDA
    }
    fn to_field(&self) -> GoldenRational {
        GoldenRational::from_golden(self.clone())
    }
}

impl Serialize for GoldenInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            p: serde_json::Value,
            q: serde_json::Value,
        }
        Repr {
            p: crate::json::bigint_to_json(&self.p),
            q: crate::json::bigint_to_json(&self.q),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoldenInt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            p: serde_json::Value,
            q: serde_json::Value,
        }
        let r = Repr::deserialize(deserializer)?;
        let p = crate::json::bigint_from_json(&r.p).map_err(serde::de::Error::custom)?;
        let q = crate::json::bigint_from_json(&r.q).map_err(serde::de::Error::custom)?;
        Ok(GoldenInt { p, q })
    }
}

/// Element of `Q(λ)` stored as a golden integer over a positive integer
/// denominator, with no common integer factor left between them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenRational {
    num: GoldenInt,
    den: BigInt,
}

impl GoldenRational {
    /// Builds `num / den`; fails only for a zero denominator.
    pub fn new(num: GoldenInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut r = GoldenRational { num, den };
        r.normalize();
        Some(r)
    }

    pub fn from_golden(num: GoldenInt) -> Self {
        GoldenRational {
            num,
            den: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &GoldenInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num = -self.num.clone();
        }
        let g = self.num.content_gcd().gcd(&self.den);
        if !g.is_zero() && !g.is_one() {
            self.num = GoldenInt {
                p: &self.num.p / &g,
                q: &self.num.q / &g,
            };
            self.den = &self.den / &g;
        }
        if self.num.p.is_zero() && self.num.q.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn recip(&self) -> Option<GoldenRational> {
        if self.num.is_zero() {
            return None;
        }
        // 1 / (n / d) = d * conj(n) / N(n)
        let conj = self.num.conjugate();
        GoldenRational::new(conj.scale(&self.den), self.num.norm())
    }
}

impl Add for GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: GoldenRational) -> GoldenRational {
        let num = self.num.scale(&rhs.den).add_ref(&rhs.num.scale(&self.den));
        GoldenRational::new(num, self.den * rhs.den).expect("nonzero denominators")
    }
}

impl Sub for GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: GoldenRational) -> GoldenRational {
        self + (-rhs)
    }
}

impl Mul for GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: GoldenRational) -> GoldenRational {
        GoldenRational::new(self.num.mul_ref(&rhs.num), self.den * rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for GoldenRational {
    type Output = GoldenRational;
    fn div(self, rhs: GoldenRational) -> GoldenRational {
        self * rhs.recip().expect("division by zero in Q(λ)")
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for GoldenRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl fmt::Display for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Zero for GoldenRational {
    fn zero() -> Self {
        GoldenRational::from_golden(GoldenInt::default())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for GoldenRational {
    fn one() -> Self {
        GoldenRational::from_golden(GoldenInt::integer(1))
    }
}

impl Scalar for GoldenRational {
    type Field = GoldenRational;

    fn signum(&self) -> Ordering {
        self.num.signum()
    }
    fn as_f64(&self) -> f64 {
        self.num.as_f64() / self.den.to_f64().unwrap_or(f64::NAN)
    }
    fn to_field(&self) -> GoldenRational {
        self.clone()
    }
}

impl Field for GoldenRational {
    fn from_int(n: &BigInt) -> Self {
        GoldenRational::from_golden(GoldenInt::integer(n.clone()))
    }

    fn floor(&self) -> BigInt {
        let approx = self.as_f64().floor();
        let mut k = if approx.is_finite() {
            BigInt::from(approx as i128)
        } else {
            BigInt::zero()
        };
        let le = |k: &BigInt| Self::from_int(k).cmp(self) != Ordering::Greater;
        while !le(&k) {
            k -= 1;
        }
        while le(&(&k + 1)) {
            k += 1;
        }
        k
    }

    fn is_rational(&self) -> bool {
        self.num.q.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64, q: i64) -> GoldenInt {
        GoldenInt::new(p, q)
    }

    #[test]
    fn lambda_squared_is_lambda_plus_one() {
        assert_eq!(g(0, 1) * g(0, 1), g(1, 1));
    }

    #[test]
    fn one_is_identity() {
        for (p, q) in [(3, -7), (0, 0), (-2, 5)] {
            assert_eq!(g(1, 0) * g(p, q), g(p, q));
        }
    }

    #[test]
    fn hand_expanded_product() {
        // 10 - 2λ + 15λ - 3λ² = 10 - 3(λ + 1) + 13λ
        assert_eq!(g(2, 3) * g(5, -1), g(7, 10));
    }

    #[test]
    fn exact_sign_near_zero() {
        // Fibonacci ratios straddle λ: 2584/1597 < λ < 1597/987
        assert_eq!(g(-2584, 1597).signum(), Ordering::Greater);
        assert_eq!(g(-1597, 987).signum(), Ordering::Less);
        assert_eq!(g(0, 0).signum(), Ordering::Equal);
        assert_eq!(g(-1, 1).signum(), Ordering::Greater);
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = g(3, -2);
        let b = g(-5, 7);
        assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
    }

    #[test]
    fn rational_division_and_floor() {
        let lam = GoldenRational::from_golden(GoldenInt::lambda());
        let one = GoldenRational::one();
        let inv = one.clone() / lam.clone();
        // 1/λ = λ - 1
        assert_eq!(inv, GoldenRational::from_golden(g(-1, 1)));
        assert_eq!(lam.floor(), BigInt::from(1));
        assert_eq!((-lam.clone()).floor(), BigInt::from(-2));
        let half = GoldenRational::new(g(1, 0), BigInt::from(2)).unwrap();
        assert_eq!(half.floor(), BigInt::from(0));
        assert!(half.is_rational());
        assert!(!lam.is_rational());
    }

    #[test]
    fn reduction_keeps_positive_minimal_denominator() {
        let r = GoldenRational::new(g(4, -6), BigInt::from(-8)).unwrap();
        assert_eq!(r.numer(), &g(-2, 3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }
}
