use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::horoball::{Cusp, Horoball};
use super::point::HPoint;
use super::GeomError;
use crate::algebra::Scalar;

/// Element of `PSL(2, S)`: a determinant-one matrix `[[a, b], [c, d]]` up to sign.
///
/// The stored representative always has `c > 0`, or `c = 0` and `d > 0`, so
/// derived equality is equality in the projective group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Isometry<S: Scalar> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: Scalar> Isometry<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self, GeomError> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !det.is_one() {
            return Err(GeomError::NotUnimodular(det.to_string()));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: S, b: S, c: S, d: S) -> Self {
        let flip = match c.signum() {
            Ordering::Less => true,
            Ordering::Equal => d.signum() == Ordering::Less,
            Ordering::Greater => false,
        };
        if flip {
            Isometry {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Isometry { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Isometry {
            a: S::one(),
            b: S::zero(),
            c: S::zero(),
            d: S::one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn a(&self) -> &S {
        &self.a
    }
    pub fn b(&self) -> &S {
        &self.b
    }
    pub fn c(&self) -> &S {
        &self.c
    }
    pub fn d(&self) -> &S {
        &self.d
    }

    /// Matrix product `self · other`, so `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Self::normalized(
            a.clone() * e.clone() + b.clone() * g.clone(),
            a.clone() * f.clone() + b.clone() * h.clone(),
            c.clone() * e.clone() + d.clone() * g.clone(),
            c.clone() * f.clone() + d.clone() * h.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    fn field_entries(&self) -> [S::Field; 4] {
        [
            self.a.to_field(),
            self.b.to_field(),
            self.c.to_field(),
            self.d.to_field(),
        ]
    }

    /// Exact image of a boundary point.
    pub fn apply_cusp(&self, x: &Cusp<S::Field>) -> Cusp<S::Field> {
        let [a, b, c, d] = self.field_entries();
        match x {
            Cusp::Infinity => {
                if c.is_zero() {
                    Cusp::Infinity
                } else {
                    Cusp::Finite(a / c)
                }
            }
            Cusp::Finite(x) => {
                let t = c * x.clone() + d;
                if t.is_zero() {
                    Cusp::Infinity
                } else {
                    Cusp::Finite((a * x.clone() + b) / t)
                }
            }
        }
    }

    /// Exact image of a horoball.
    pub fn apply_horoball(&self, h: &Horoball<S::Field>) -> Horoball<S::Field> {
        let [a, b, c, d] = self.field_entries();
        let one = S::Field::one();
        let (tangent, size) = match h.tangent() {
            Cusp::Infinity => {
                if c.is_zero() {
                    // z -> a²z + ab
                    (Cusp::Infinity, a.clone() * a * h.size().clone())
                } else {
                    let size = one / (c.clone() * c.clone() * h.size().clone());
                    (Cusp::Finite(a / c), size)
                }
            }
            Cusp::Finite(x) => {
                let t = c.clone() * x.clone() + d;
                if t.is_zero() {
                    (Cusp::Infinity, one / (c.clone() * c * h.size().clone()))
                } else {
                    let size = h.size().clone() / (t.clone() * t.clone());
                    (Cusp::Finite((a * x.clone() + b) / t), size)
                }
            }
        };
        Horoball::from_parts(tangent, size)
    }

    pub fn to_float(&self) -> FloatMobius {
        FloatMobius {
            a: self.a.as_f64(),
            b: self.b.as_f64(),
            c: self.c.as_f64(),
            d: self.d.as_f64(),
        }
    }

    pub fn apply_point(&self, z: &HPoint) -> HPoint {
        self.to_float().apply(z)
    }
}

impl<S: Scalar> Mul for Isometry<S> {
    type Output = Isometry<S>;
    fn mul(self, rhs: Isometry<S>) -> Isometry<S> {
        self.compose(&rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a Isometry<S>> for &'a Isometry<S> {
    type Output = Isometry<S>;
    fn mul(self, rhs: &'a Isometry<S>) -> Isometry<S> {
        self.compose(rhs)
    }
}

impl<S: Scalar> fmt::Display for Isometry<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Floating-point Möbius map, used where measurements leave exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatMobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FloatMobius {
    pub const IDENTITY: FloatMobius = FloatMobius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// `z -> s z + t` for `s > 0`.
    pub fn affine(s: f64, t: f64) -> FloatMobius {
        let r = s.sqrt();
        FloatMobius {
            a: r,
            b: t / r,
            c: 0.0,
            d: 1.0 / r,
        }
    }

    pub fn compose(&self, o: &FloatMobius) -> FloatMobius {
        FloatMobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> FloatMobius {
        let det = self.a * self.d - self.b * self.c;
        FloatMobius {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }

    pub fn apply(&self, z: &HPoint) -> HPoint {
        let FloatMobius { a, b, c, d } = *self;
        match *z {
            HPoint::Infinity => {
                if c == 0.0 {
                    HPoint::Infinity
                } else {
                    HPoint::Boundary(a / c)
                }
            }
            HPoint::Boundary(x) => {
                let t = c * x + d;
                if t == 0.0 {
                    HPoint::Infinity
                } else {
                    HPoint::Boundary((a * x + b) / t)
                }
            }
            HPoint::Interior { x, y } => {
                // (az + b)/(cz + d) with Im = y / |cz + d|² (det 1)
                let det = a * d - b * c;
                let (re_t, im_t) = (c * x + d, c * y);
                let n2 = re_t * re_t + im_t * im_t;
                let (re_n, im_n) = (a * x + b, a * y);
                HPoint::Interior {
                    x: (re_n * re_t + im_n * im_t) / n2,
                    y: det * y / n2,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GoldenInt;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Isometry<BigInt> {
        Isometry::new(a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gens() -> Vec<Isometry<BigInt>> {
        let c = m(0, 1, -1, 1);
        let l = m(1, 1, 0, 1);
        vec![c.clone(), c.inverse(), l.clone(), l.inverse()]
    }

    fn word(idx: &[usize]) -> Isometry<BigInt> {
        let g = gens();
        idx.iter()
            .fold(Isometry::identity(), |acc, &i| acc.compose(&g[i]))
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(Isometry::new(BigInt::from(2), 0.into(), 0.into(), 1.into()).is_err());
    }

    #[test]
    fn sign_normalization() {
        let g = m(0, -1, 1, 0);
        assert_eq!(g, m(0, 1, -1, 0));
        assert_eq!(g.c(), &BigInt::from(1));
        let h = m(-1, -3, 0, -1);
        assert_eq!(h, m(1, 3, 0, 1));
    }

    #[test]
    fn parabolic_square() {
        let l = m(1, 1, 0, 1);
        assert_eq!(l.compose(&l), m(1, 2, 0, 1));
    }

    #[test]
    fn elliptic_cube() {
        let c = m(0, 1, -1, 1);
        assert!(c.compose(&c.compose(&c)).is_identity());
        assert!(!c.compose(&c).is_identity());
    }

    #[test]
    fn golden_generators() {
        let lam = GoldenInt::lambda();
        let z = GoldenInt::integer(0);
        let one = GoldenInt::integer(1);
        let p = Isometry::new(z.clone(), one.clone(), -one.clone(), lam.clone()).unwrap();
        assert!(p.pow(5).is_identity());
        assert!(!p.pow(2).is_identity());
        let s = Isometry::new(z.clone(), one.clone(), -one.clone(), z).unwrap();
        assert!(s.pow(2).is_identity());
    }

    #[test]
    fn point_actions() {
        let l = m(1, 1, 0, 1);
        assert_eq!(
            l.apply_point(&HPoint::Interior { x: 0.0, y: 1.0 }),
            HPoint::Interior { x: 1.0, y: 1.0 }
        );
        let c = m(0, 1, -1, 1);
        assert_eq!(c.apply_point(&HPoint::Boundary(0.0)), HPoint::Boundary(1.0));
        assert_eq!(c.apply_point(&HPoint::Boundary(1.0)), HPoint::Infinity);
        let s = m(0, 1, -1, 0);
        assert_eq!(s.apply_point(&HPoint::Infinity), HPoint::Boundary(0.0));
    }

    #[test]
    fn exact_cusp_action() {
        let c = m(0, 1, -1, 1);
        // 1/(1 - 1/2) = 2
        assert_eq!(
            c.apply_cusp(&Cusp::Finite(q(1, 2))),
            Cusp::Finite(q(2, 1))
        );
        assert_eq!(c.apply_cusp(&Cusp::Infinity), Cusp::Finite(q(0, 1)));
    }

    #[test]
    fn horoball_images() {
        let top = Horoball::above(q(1, 1)).unwrap();
        let s = m(0, 1, -1, 0);
        assert_eq!(
            s.apply_horoball(&top),
            Horoball::tangent_at(q(0, 1), q(1, 1)).unwrap()
        );
        let l = m(1, 1, 0, 1);
        assert_eq!(
            l.apply_horoball(&Horoball::tangent_at(q(0, 1), q(1, 1)).unwrap()),
            Horoball::tangent_at(q(1, 1), q(1, 1)).unwrap()
        );
        let r2 = m(1, 0, 2, 1);
        assert_eq!(
            r2.apply_horoball(&top),
            Horoball::tangent_at(q(1, 2), q(1, 4)).unwrap()
        );
        // back to infinity: z -> -1/z on the unit horoball at 0
        assert_eq!(
            s.apply_horoball(&Horoball::tangent_at(q(0, 1), q(1, 2)).unwrap()),
            Horoball::above(q(2, 1)).unwrap()
        );
        // translation keeps the height
        assert_eq!(l.apply_horoball(&top), top);
    }

    #[test]
    fn horoball_image_matches_sampled_boundary() {
        // Independent check: push points of the boundary circle through the
        // float map and compare with the predicted image circle.
        let h = Horoball::tangent_at(q(1, 3), q(1, 9)).unwrap();
        let g = word(&[0, 2, 2, 1, 3, 0, 2]);
        let img = g.apply_horoball(&h);
        let (cx, cy, r) = h.circle().unwrap();
        let gf = g.to_float();
        for i in 1..12 {
            let t = i as f64 * 0.5;
            let z = HPoint::Interior {
                x: cx + r * t.cos(),
                y: cy + r * t.sin(),
            };
            let HPoint::Interior { x, y } = gf.apply(&z) else {
                panic!()
            };
            match img.circle() {
                Some((icx, icy, ir)) => {
                    let dist = ((x - icx).powi(2) + (y - icy).powi(2)).sqrt();
                    assert!((dist - ir).abs() < 1e-9);
                }
                None => {
                    assert!((y - img.size().as_f64()).abs() < 1e-9);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_cancels(w in prop::collection::vec(0usize..4, 0..20)) {
            let g = word(&w);
            prop_assert!(g.compose(&g.inverse()).is_identity());
            prop_assert!(g.inverse().compose(&g).is_identity());
        }

        #[test]
        fn associativity(u in prop::collection::vec(0usize..4, 0..8),
                         v in prop::collection::vec(0usize..4, 0..8),
                         w in prop::collection::vec(0usize..4, 0..8)) {
            let (a, b, c) = (word(&u), word(&v), word(&w));
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(a.compose(&Isometry::identity()), a);
        }

        #[test]
        fn negation_is_same_element(a in -20i64..20, b in -20i64..20, c in 1i64..20) {
            // complete (a, c) to a unimodular matrix when coprime
            prop_assume!(num_integer::Integer::gcd(&a, &c) == 1);
            let (g, x, y) = ext_gcd(a, c);
            prop_assert_eq!(g, 1);
            // a x + c y = 1 -> [[a, -y], [c, x]]
            let m1 = m(a, -y + b * a, c, x + b * c);
            let m2 = m(-a, y - b * a, -c, -x - b * c);
            prop_assert_eq!(m1, m2);
        }

        #[test]
        fn horoball_equivariance(u in prop::collection::vec(0usize..4, 0..8),
                                 v in prop::collection::vec(0usize..4, 0..8),
                                 p in -5i64..5, qd in 1i64..6) {
            let h = Horoball::tangent_at(q(p, qd), q(1, qd * qd)).unwrap();
            let (g, k) = (word(&u), word(&v));
            prop_assert_eq!(
                g.compose(&k).apply_horoball(&h),
                g.apply_horoball(&k.apply_horoball(&h))
            );
            let top = Horoball::above(q(1, 1)).unwrap();
            prop_assert_eq!(
                g.compose(&k).apply_horoball(&top),
                g.apply_horoball(&k.apply_horoball(&top))
            );
        }

        #[test]
        fn distance_invariance(w in prop::collection::vec(0usize..4, 0..8),
                               x1 in -3.0f64..3.0, y1 in 0.1f64..3.0,
                               x2 in -3.0f64..3.0, y2 in 0.1f64..3.0) {
            let g = word(&w);
            let z1 = HPoint::Interior { x: x1, y: y1 };
            let z2 = HPoint::Interior { x: x2, y: y2 };
            let d0 = crate::geom::hyp_distance(&z1, &z2).unwrap();
            let d1 = crate::geom::hyp_distance(&g.apply_point(&z1), &g.apply_point(&z2)).unwrap();
            prop_assert!((d0 - d1).abs() < 1e-10 * (1.0 + d0));
        }
    }

    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a.signum() * a, a.signum(), 0)
        } else {
            let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
            (g, y, x - a.div_euclid(b) * y)
        }
    }
}
