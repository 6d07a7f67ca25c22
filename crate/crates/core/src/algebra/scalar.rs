use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact real scalar that can serve as a matrix entry of an isometry.
///
/// Implementations are ordered rings embedded in `R`; [`Scalar::signum`]
/// must be exact because sign normalisation in `PSL(2, ·)` depends on it.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Fraction field the ring embeds into.
    type Field: Field;

    /// Sign of the real value.
    fn signum(&self) -> Ordering;
    fn as_f64(&self) -> f64;
    fn to_field(&self) -> Self::Field;
}

/// Exact ordered field: `Q` or `Q(λ)`.
pub trait Field: Scalar<Field = Self> + Div<Output = Self> + Ord {
    fn from_int(n: &BigInt) -> Self;
    /// Largest integer not exceeding the value.
    fn floor(&self) -> BigInt;
    /// True when the value lies in `Q` (always true for `Q` itself).
    fn is_rational(&self) -> bool;
}

impl Scalar for BigInt {
    type Field = BigRational;

    fn signum(&self) -> Ordering {
        self.sign_ordering()
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_field(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if Signed::is_negative(self) {
            Ordering::Less
        } else if Zero::is_zero(self) {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }
}

impl Scalar for BigRational {
    type Field = BigRational;

    fn signum(&self) -> Ordering {
        self.numer().sign_ordering()
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_field(&self) -> BigRational {
        self.clone()
    }
}

impl Field for BigRational {
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn floor(&self) -> BigInt {
        num_rational::Ratio::floor(self).to_integer()
    }
    fn is_rational(&self) -> bool {
        true
    }
}

pub(crate) fn bigint_signum(n: &BigInt) -> Ordering {
    n.sign_ordering()
}
