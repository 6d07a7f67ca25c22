use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest supported precision.
pub const MAX_PRECISION: u32 = 64;

/// A dyadic integer truncated to its low `precision` binary digits,
/// i.e. a residue in `Z / 2^N`.
///
/// Arithmetic wraps modulo `2^N`. Values of different precision never
/// compare equal; the checked operations reject mixed precisions and the
/// operator impls panic on them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DyadicRes {
    value: u64,
    precision: u32,
}

fn mask(precision: u32) -> u64 {
    if precision >= 64 {
        u64::MAX
    } else {
        (1u64 << precision) - 1
    }
}

fn check_precision(precision: u32) -> Result<(), AlgebraError> {
    if (1..=MAX_PRECISION).contains(&precision) {
        Ok(())
    } else {
        Err(AlgebraError::InvalidPrecision(precision))
    }
}

impl DyadicRes {
    /// Residue of `value` (any sign) modulo `2^precision`.
    pub fn new(value: i128, precision: u32) -> Result<Self, AlgebraError> {
        check_precision(precision)?;
        Ok(DyadicRes {
            value: (value as u128 as u64) & mask(precision),
            precision,
        })
    }

    pub fn zero(precision: u32) -> Result<Self, AlgebraError> {
        Self::new(0, precision)
    }

    pub fn one(precision: u32) -> Result<Self, AlgebraError> {
        Self::new(1, precision)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Representative in `[-2^(N-1), 2^(N-1))`, for display only.
    pub fn signed(&self) -> i128 {
        let half = 1u128 << (self.precision - 1);
        let v = self.value as u128;
        if v >= half {
            v as i128 - (1i128 << self.precision)
        } else {
            v as i128
        }
    }

    fn wrap(&self, value: u64) -> Self {
        DyadicRes {
            value: value & mask(self.precision),
            precision: self.precision,
        }
    }

    fn same_precision(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.precision == other.precision {
            Ok(())
        } else {
            Err(AlgebraError::PrecisionMismatch {
                left: self.precision,
                right: other.precision,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_precision(other)?;
        Ok(self.wrap(self.value.wrapping_add(other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_precision(other)?;
        Ok(self.wrap(self.value.wrapping_sub(other.value)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_precision(other)?;
        Ok(self.wrap(self.value.wrapping_mul(other.value)))
    }

    /// Adds a rational integer.
    pub fn add_int(&self, k: i64) -> Self {
        self.wrap(self.value.wrapping_add(k as u64))
    }

    /// Multiplies by a rational integer.
    pub fn scale(&self, k: i64) -> Self {
        self.wrap(self.value.wrapping_mul(k as u64))
    }

    pub fn is_odd(&self) -> bool {
        self.value & 1 == 1
    }

    /// Multiplicative inverse of an odd residue.
    pub fn inv_odd(&self) -> Result<Self, AlgebraError> {
        if !self.is_odd() {
            return Err(AlgebraError::NotAUnit(self.value as i128));
        }
        // Newton iteration doubles the number of correct bits each round;
        // u * u = 1 (mod 8) for odd u gives three to start with.
        let u = self.value;
        let mut x = u;
        for _ in 0..5 {
            x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
        }
        Ok(self.wrap(x))
    }

    /// Exact division by an odd rational integer.
    pub fn div_odd(&self, divisor: i64) -> Result<Self, AlgebraError> {
        if divisor % 2 == 0 {
            return Err(AlgebraError::NotAUnit(divisor as i128));
        }
        let inv = DyadicRes::new(divisor as i128, self.precision)?.inv_odd()?;
        Ok(self.wrap(self.value.wrapping_mul(inv.value)))
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, precision: u32) -> Result<Self, AlgebraError> {
        check_precision(precision)?;
        if precision > self.precision {
            return Err(AlgebraError::PrecisionMismatch {
                left: self.precision,
                right: precision,
            });
        }
        Ok(DyadicRes {
            value: self.value & mask(precision),
            precision,
        })
    }

    /// Fractional part of `x / 2^m`, i.e. `(x mod 2^m) / 2^m`, for `0 <= m <= N`.
    pub fn pi(&self, m: u32) -> Result<Ratio<u128>, AlgebraError> {
        if m > self.precision {
            return Err(AlgebraError::ShiftOutOfRange {
                m,
                max: self.precision,
                precision: self.precision,
            });
        }
        let low = (self.value & mask(m)) as u128;
        let low = if m == 0 { 0 } else { low };
        Ok(Ratio::new(low, 1u128 << m))
    }

    /// Integer part `floor(x / 2^m)` as a residue modulo `2^(N - m)`.
    ///
    /// Requires `m < N`: a residue needs at least one digit.
    pub fn sigma(&self, m: u32) -> Result<Self, AlgebraError> {
        if m >= self.precision {
            return Err(AlgebraError::ShiftOutOfRange {
                m,
                max: self.precision - 1,
                precision: self.precision,
            });
        }
        Ok(DyadicRes {
            value: self.value >> m,
            precision: self.precision - m,
        })
    }

    /// Binary digit `i` (least significant first).
    pub fn bit(&self, i: u32) -> bool {
        i < self.precision && (self.value >> i) & 1 == 1
    }

    /// Digits least significant first, as a `0`/`1` string of length `N`.
    pub fn to_bits(&self) -> String {
        (0..self.precision)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bits(bits: &str) -> Result<Self, AlgebraError> {
        let precision = bits.chars().count() as u32;
        check_precision(precision)?;
        let mut value = 0u64;
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => value |= 1 << i,
                _ => return Err(AlgebraError::MalformedBits(bits.to_string())),
            }
        }
        Ok(DyadicRes { value, precision })
    }

    /// Smallest `(preperiod, period)` such that digits `i >= preperiod` repeat
    /// with `period`, judged on the available digits. Periods longer than a
    /// third of the digits are not reported.
    pub fn eventual_period(&self) -> Option<(u32, u32)> {
        let n = self.precision;
        for period in 1..=n / 3 {
            for pre in 0..=(n - 3 * period) {
                if (pre..n - period).all(|i| self.bit(i) == self.bit(i + period)) {
                    return Some((pre, period));
                }
            }
        }
        None
    }
}

impl Add for DyadicRes {
    type Output = DyadicRes;
    fn add(self, rhs: DyadicRes) -> DyadicRes {
        self.checked_add(&rhs).expect("dyadic precision mismatch")
    }
}

impl Sub for DyadicRes {
    type Output = DyadicRes;
    fn sub(self, rhs: DyadicRes) -> DyadicRes {
        self.checked_sub(&rhs).expect("dyadic precision mismatch")
    }
}

impl Neg for DyadicRes {
    type Output = DyadicRes;
    fn neg(self) -> DyadicRes {
        self.wrap(self.value.wrapping_neg())
    }
}

impl fmt::Display for DyadicRes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.precision)
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    bits: String,
    precision: u32,
}

impl Serialize for DyadicRes {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DyadicRepr {
            bits: self.to_bits(),
            precision: self.precision,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyadicRes {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DyadicRepr::deserialize(deserializer)?;
        let x = DyadicRes::from_bits(&repr.bits).map_err(serde::de::Error::custom)?;
        if x.precision != repr.precision {
            return Err(serde::de::Error::custom(format!(
                "bit string has {} digits but precision is {}",
                x.precision, repr.precision
            )));
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(v: i128, n: u32) -> DyadicRes {
        DyadicRes::new(v, n).unwrap()
    }

    #[test]
    fn modular_addition() {
        assert_eq!(d(5, 4) + d(13, 4), d(2, 4));
    }

    #[test]
    fn negation_of_zero() {
        for n in [1, 7, 16, 64] {
            assert_eq!(-d(0, n), d(0, n));
        }
    }

    #[test]
    fn precision_mismatch_is_rejected() {
        assert_eq!(
            d(1, 4).checked_add(&d(1, 5)),
            Err(AlgebraError::PrecisionMismatch { left: 4, right: 5 })
        );
        assert_ne!(d(1, 4), d(1, 5));
    }

    #[test]
    fn invalid_precisions() {
        assert!(DyadicRes::new(0, 0).is_err());
        assert!(DyadicRes::new(0, 65).is_err());
        assert!(DyadicRes::new(-1, 64).is_ok());
    }

    #[test]
    fn inverse_of_three_mod_sixteen() {
        // 3 * 11 = 33 = 2 * 16 + 1
        assert_eq!(d(3, 4).inv_odd().unwrap(), d(11, 4));
        assert_eq!(d(1, 4).inv_odd().unwrap(), d(1, 4));
        assert_eq!(d(1, 64).inv_odd().unwrap(), d(1, 64));
    }

    #[test]
    fn all_units_mod_256() {
        // Extended Euclid oracle, independent of the Newton iteration.
        fn ext_inv(u: i64, m: i64) -> i64 {
            let (mut r0, mut r1, mut s0, mut s1) = (m, u, 0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            assert_eq!(r0, 1);
            s0.rem_euclid(m)
        }
        for u in (1..256).step_by(2) {
            let inv = d(u, 8).inv_odd().unwrap();
            assert_eq!(inv.value() as i64, ext_inv(u as i64, 256));
            assert_eq!(d(u, 8).checked_mul(&inv).unwrap(), d(1, 8));
        }
    }

    #[test]
    fn even_has_no_inverse() {
        assert_eq!(d(6, 8).inv_odd(), Err(AlgebraError::NotAUnit(6)));
        assert_eq!(d(1, 8).div_odd(4), Err(AlgebraError::NotAUnit(4)));
    }

    #[test]
    fn odd_division() {
        assert_eq!(d(3, 10).div_odd(3).unwrap(), d(1, 10));
        assert_eq!(d(1, 4).div_odd(3).unwrap(), d(11, 4));
        // 5 * 13 = 65 = 2 * 32 + 1
        assert_eq!(d(1, 5).div_odd(5).unwrap(), d(13, 5));
        assert_eq!(d(7, 16).div_odd(-1).unwrap(), d(-7, 16));
    }

    #[test]
    fn division_by_three_exhaustive_n8() {
        for x in 0..256 {
            let q = d(x, 8).div_odd(3).unwrap();
            assert_eq!(q + q + q, d(x, 8));
            assert_eq!(q.scale(3), d(x, 8));
        }
    }

    #[test]
    fn fractional_and_integer_parts() {
        let x = d(5, 4);
        assert_eq!(x.pi(2).unwrap(), Ratio::new(1, 4));
        assert_eq!(x.sigma(2).unwrap(), d(1, 2));
        assert_eq!(x.pi(0).unwrap(), Ratio::from_integer(0));
        assert!(x.pi(5).is_err());
        assert!(x.sigma(4).is_err());
        for m in 0..=16 {
            assert_eq!(d(0, 16).pi(m).unwrap(), Ratio::from_integer(0));
        }
    }

    #[test]
    fn integer_shift_fractional_parts_converge() {
        for e in 0u128..40 {
            let x = d(e as i128, 16);
            for m in 0..=16u32 {
                if (1u128 << m) > e {
                    assert_eq!(x.pi(m).unwrap(), Ratio::new(e, 1u128 << m));
                }
            }
        }
    }

    #[test]
    fn pi_sigma_reassemble_x() {
        for v in [0i128, 1, 5, 200, 65535, 40000] {
            let x = d(v, 16);
            for m in 0..16 {
                let s = x.sigma(m).unwrap().value() as u128;
                let p = x.pi(m).unwrap();
                let low = *p.numer() * ((1u128 << m) / *p.denom());
                assert_eq!((s << m) + low, x.value() as u128);
            }
        }
    }

    #[test]
    fn one_third_is_eventually_periodic() {
        let third = d(1, 16).div_odd(3).unwrap();
        assert_eq!(third.to_bits(), "1101010101010101");
        assert_eq!(third.eventual_period(), Some((1, 2)));
        assert_eq!(d(5, 16).eventual_period(), Some((3, 1)));
    }

    #[test]
    fn json_form() {
        let x = d(6, 4);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"bits":"0110","precision":4}"#);
        let back: DyadicRes = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<DyadicRes>(r#"{"bits":"01","precision":4}"#).is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms(n in prop::sample::select(vec![4u32, 8, 16, 32]),
                       a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (d(a as i128, n), d(b as i128, n), d(c as i128, n));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
            let lhs = a.checked_mul(&(b + c)).unwrap();
            let rhs = a.checked_mul(&b).unwrap() + a.checked_mul(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a + (-a), d(0, n));
        }

        #[test]
        fn truncation_commutes_with_ring_ops(a in any::<u64>(), b in any::<u64>(), m in 1u32..=16) {
            let (x, y) = (d(a as i128, 16), d(b as i128, 16));
            let t = |z: DyadicRes| z.truncate(m).unwrap();
            prop_assert_eq!(t(x + y), t(x) + t(y));
            prop_assert_eq!(t(x.checked_mul(&y).unwrap()), t(x).checked_mul(&t(y)).unwrap());
            prop_assert_eq!(t(-x), -t(x));
        }

        #[test]
        fn scale_three_is_triple_sum(a in any::<u64>(), n in 1u32..=64) {
            let x = d(a as i128, n);
            prop_assert_eq!(x.scale(3), x + x + x);
        }
    }
}
