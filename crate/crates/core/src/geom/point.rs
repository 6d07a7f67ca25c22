use std::f64::consts::PI;

use num_complex::Complex64;

use super::GeomError;

/// Point of the closed upper half-plane, including `∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HPoint {
    Interior { x: f64, y: f64 },
    Boundary(f64),
    Infinity,
}

impl HPoint {
    /// The base point `i`.
    pub const ORIGIN: HPoint = HPoint::Interior { x: 0.0, y: 1.0 };

    /// Point at `x + iy`; `y = 0` gives a boundary point.
    pub fn new(x: f64, y: f64) -> HPoint {
        if y == 0.0 {
            HPoint::Boundary(x)
        } else {
            HPoint::Interior { x, y }
        }
    }

    pub fn xy(&self) -> Option<(f64, f64)> {
        match *self {
            HPoint::Interior { x, y } => Some((x, y)),
            HPoint::Boundary(x) => Some((x, 0.0)),
            HPoint::Infinity => None,
        }
    }
}

/// Hyperbolic distance between interior points.
pub fn hyp_distance(z1: &HPoint, z2: &HPoint) -> Result<f64, GeomError> {
    match (*z1, *z2) {
        (HPoint::Interior { x: x1, y: y1 }, HPoint::Interior { x: x2, y: y2 }) => {
            // cosh d = 1 + |z1 - z2|² / (2 y1 y2), written to avoid cancellation
            let e = ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt();
            Ok(2.0 * (e / (2.0 * (y1 * y2).sqrt())).asinh())
        }
        _ => Err(GeomError::BoundaryPoint),
    }
}

/// Area of a hyperbolic disk of radius `r`.
pub fn ball_area(r: f64) -> Result<f64, GeomError> {
    if r < 0.0 || r.is_nan() {
        return Err(GeomError::NegativeRadius(r));
    }
    // 2π(cosh r - 1) = 4π sinh²(r/2)
    Ok(4.0 * PI * (r / 2.0).sinh().powi(2))
}

/// Cayley map `(z - i)/(z + i)` onto the closed unit disk.
pub fn to_disk(z: &HPoint) -> Complex64 {
    match *z {
        HPoint::Infinity => Complex64::new(1.0, 0.0),
        HPoint::Boundary(x) => {
            let z = Complex64::new(x, 0.0);
            (z - Complex64::i()) / (z + Complex64::i())
        }
        HPoint::Interior { x, y } => {
            let z = Complex64::new(x, y);
            (z - Complex64::i()) / (z + Complex64::i())
        }
    }
}

/// Inverse Cayley map `i(1 + w)/(1 - w)`.
pub fn from_disk(w: Complex64) -> HPoint {
    if w == Complex64::new(1.0, 0.0) {
        return HPoint::Infinity;
    }
    let z = Complex64::i() * (1.0 + w) / (1.0 - w);
    if w.norm_sqr() >= 1.0 {
        HPoint::Boundary(z.re)
    } else {
        HPoint::Interior { x: z.re, y: z.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> HPoint {
        HPoint::Interior { x, y }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(&p(0.0, 1.0), &p(0.0, 1.0)).unwrap(), 0.0);
        let d = hyp_distance(&p(0.0, 1.0), &p(0.0, 2.0)).unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-15);
        assert!(hyp_distance(&HPoint::Boundary(0.0), &p(0.0, 1.0)).is_err());
    }

    #[test]
    fn distance_matches_cosh_formula() {
        let (z1, z2) = (p(0.3, 0.7), p(-1.2, 2.5));
        let d = hyp_distance(&z1, &z2).unwrap();
        let c = 1.0 + ((0.3f64 + 1.2).powi(2) + (0.7f64 - 2.5).powi(2)) / (2.0 * 0.7 * 2.5);
        assert!((d.cosh() - c).abs() < 1e-12);
    }

    #[test]
    fn area_examples() {
        assert_eq!(ball_area(0.0).unwrap(), 0.0);
        let r = 1e-4;
        assert!((ball_area(r).unwrap() / (PI * r * r) - 1.0).abs() < 1e-6);
        assert!((ball_area(2f64.ln()).unwrap() - PI / 2.0).abs() < 1e-14);
        assert!(ball_area(-1.0).is_err());
    }

    #[test]
    fn cayley_examples() {
        assert!(to_disk(&p(0.0, 1.0)).norm() < 1e-15);
        // (0 - i)/(0 + i) = -1
        let z0 = to_disk(&HPoint::Boundary(0.0));
        assert!((z0 - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((z0.norm() - 1.0).abs() < 1e-15);
        assert_eq!(to_disk(&HPoint::Infinity), Complex64::new(1.0, 0.0));
    }

    proptest! {
        #[test]
        fn area_monotone(a in 0.0f64..10.0, b in 0.0f64..10.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(ball_area(lo).unwrap() <= ball_area(hi).unwrap());
        }

        #[test]
        fn distance_symmetric(x1 in -5.0f64..5.0, y1 in 0.01f64..5.0,
                              x2 in -5.0f64..5.0, y2 in 0.01f64..5.0) {
            let (a, b) = (p(x1, y1), p(x2, y2));
            prop_assert_eq!(hyp_distance(&a, &b).unwrap(), hyp_distance(&b, &a).unwrap());
        }

        #[test]
        fn cayley_round_trip(x in -5.0f64..5.0, y in 0.01f64..5.0) {
            let w = to_disk(&p(x, y));
            prop_assert!(w.norm() < 1.0);
            let HPoint::Interior { x: x2, y: y2 } = from_disk(w) else { panic!() };
            prop_assert!((x - x2).abs() < 1e-9 && (y - y2).abs() < 1e-9);
        }

        #[test]
        fn boundary_to_circle(x in -100.0f64..100.0) {
            prop_assert!((to_disk(&HPoint::Boundary(x)).norm() - 1.0).abs() < 1e-12);
        }
    }
}
