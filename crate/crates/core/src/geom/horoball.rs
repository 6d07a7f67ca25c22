use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GeomError;
use crate::algebra::Field;

/// Boundary point of the upper half-plane.
///
/// Finite points sort before `∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cusp<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> Cusp<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            Cusp::Finite(x) => Some(x),
            Cusp::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Cusp::Infinity)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Cusp::Finite(x) => x.as_f64(),
            Cusp::Infinity => f64::INFINITY,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Cusp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cusp::Finite(x) => write!(f, "{x}"),
            Cusp::Infinity => write!(f, "∞"),
        }
    }
}

/// Horoball given by its tangent point and one exact size.
///
/// For a finite tangent point the size is the Euclidean diameter; for `∞`
/// it is the height `h` of the region `y ≥ h`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Horoball<F> {
    tangent: Cusp<F>,
    size: F,
}

/// How two horoballs meet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Contact {
    Disjoint,
    Tangent,
    Overlapping,
}

impl<F: Field> Horoball<F> {
    pub fn tangent_at(x: F, diameter: F) -> Result<Self, GeomError> {
        Self::checked(Cusp::Finite(x), diameter)
    }

    /// The region `y ≥ height`.
    pub fn above(height: F) -> Result<Self, GeomError> {
        Self::checked(Cusp::Infinity, height)
    }

    fn checked(tangent: Cusp<F>, size: F) -> Result<Self, GeomError> {
        if size.signum() != Ordering::Greater {
            return Err(GeomError::NonPositiveSize(size.to_string()));
        }
        Ok(Horoball { tangent, size })
    }

    /// Images of valid horoballs stay valid, so no check is needed.
    pub(crate) fn from_parts(tangent: Cusp<F>, size: F) -> Self {
        debug_assert_eq!(size.signum(), Ordering::Greater);
        Horoball { tangent, size }
    }

    pub fn tangent(&self) -> &Cusp<F> {
        &self.tangent
    }

    /// Diameter, or height for the horoball at `∞`.
    pub fn size(&self) -> &F {
        &self.size
    }

    pub fn contact(&self, other: &Horoball<F>) -> Contact {
        let ord = match (&self.tangent, &other.tangent) {
            (Cusp::Infinity, Cusp::Infinity) => return Contact::Overlapping,
            // a disk of diameter D reaches height D
            (Cusp::Infinity, Cusp::Finite(_)) => other.size.cmp(&self.size),
            (Cusp::Finite(_), Cusp::Infinity) => self.size.cmp(&other.size),
            (Cusp::Finite(x1), Cusp::Finite(x2)) => {
                // centers (x, D/2): tangent iff (x1-x2)² + ((D1-D2)/2)² = ((D1+D2)/2)²
                let dx = x1.clone() - x2.clone();
                (self.size.clone() * other.size.clone()).cmp(&(dx.clone() * dx))
            }
        };
        match ord {
            Ordering::Less => Contact::Disjoint,
            Ordering::Equal => Contact::Tangent,
            Ordering::Greater => Contact::Overlapping,
        }
    }

    /// Euclidean circle `(cx, cy, r)`; `None` for the horoball at `∞`.
    pub fn circle(&self) -> Option<(f64, f64, f64)> {
        let x = self.tangent.finite()?.as_f64();
        let r = self.size.as_f64() / 2.0;
        Some((x, r, r))
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self.circle() {
            None => y >= self.size.as_f64(),
            Some((cx, cy, r)) => (x - cx).powi(2) + (y - cy).powi(2) <= r * r,
        }
    }
}

/// Exact tangency test.
pub fn tangent<F: Field>(h1: &Horoball<F>, h2: &Horoball<F>) -> bool {
    h1.contact(h2) == Contact::Tangent
}

impl<F: Field> fmt::Display for Horoball<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tangent {
            Cusp::Infinity => write!(f, "y ≥ {}", self.size),
            Cusp::Finite(x) => write!(f, "at {} diameter {}", x, self.size),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ford(p: i64, qd: i64) -> Horoball<BigRational> {
        Horoball::tangent_at(q(p, qd), q(1, qd * qd)).unwrap()
    }

    #[test]
    fn ford_tangencies() {
        assert!(tangent(&ford(0, 1), &ford(1, 2)));
        assert!(tangent(&ford(0, 1), &ford(1, 1)));
        assert!(!tangent(&ford(0, 1), &ford(2, 1)));
        assert_eq!(ford(0, 1).contact(&ford(2, 1)), Contact::Disjoint);
        assert_eq!(ford(1, 3).contact(&ford(2, 5)), Contact::Tangent);
        assert_eq!(ford(1, 3).contact(&ford(2, 7)), Contact::Tangent);
        assert_eq!(ford(1, 3).contact(&ford(3, 7)), Contact::Disjoint);
    }

    #[test]
    fn against_infinity() {
        let top = Horoball::above(q(1, 1)).unwrap();
        assert!(tangent(&top, &ford(3, 1)));
        assert!(!tangent(&top, &ford(1, 2)));
        assert_eq!(top.contact(&Horoball::above(q(5, 1)).unwrap()), Contact::Overlapping);
        let big = Horoball::tangent_at(q(0, 1), q(2, 1)).unwrap();
        assert_eq!(big.contact(&top), Contact::Overlapping);
        assert_eq!(top.contact(&big), Contact::Overlapping);
        assert_eq!(top.contact(&ford(1, 2)), Contact::Disjoint);
    }

    #[test]
    fn overlap_and_same_point() {
        let a = Horoball::tangent_at(q(0, 1), q(1, 1)).unwrap();
        let b = Horoball::tangent_at(q(1, 2), q(1, 1)).unwrap();
        assert_eq!(a.contact(&b), Contact::Overlapping);
        assert_eq!(a.contact(&ford(0, 2)), Contact::Overlapping);
    }

    #[test]
    fn rejects_nonpositive_size() {
        assert!(Horoball::tangent_at(q(0, 1), q(0, 1)).is_err());
        assert!(Horoball::above(q(-1, 1)).is_err());
    }

    #[test]
    fn float_membership() {
        let h = ford(0, 1);
        assert!(h.contains(0.0, 0.5));
        assert!(!h.contains(0.6, 0.5));
        let top = Horoball::above(q(1, 1)).unwrap();
        assert!(top.contains(100.0, 1.0));
        assert!(!top.contains(0.0, 0.99));
    }
}
