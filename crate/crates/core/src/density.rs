//! Covered-area fractions of hyperbolic balls, estimated by seeded
//! Monte-Carlo sampling, with the closed forms used to calibrate them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Field;
use crate::geom::{ball_area, from_disk, Cusp, FloatMobius, HPoint, Horoball};
use crate::tiling::DegenerateTiling;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("ball of radius {radius} around ({x}, {y}) leaves the oracle window")]
    OutsideWindow { x: f64, y: f64, radius: f64 },
}

/// Which area element the sampler uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    /// Upper half-plane, area `dx dy / y²`; balls have area `2π(cosh r - 1)`.
    Hyperbolic,
    /// Flat plane, area `dx dy`; balls have area `πr²`.
    Euclidean,
}

/// Region where an oracle's answers are meaningful, as a box in model
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub const EVERYWHERE: Window =
        Window { x0: f64::NEG_INFINITY, x1: f64::INFINITY, y0: f64::NEG_INFINITY, y1: f64::INFINITY };

    fn contains_disk(&self, cx: f64, cy: f64, r: f64) -> bool {
        cx - r >= self.x0 && cx + r <= self.x1 && cy - r >= self.y0 && cy + r <= self.y1
    }
}

/// Membership predicate for a region of the plane.
pub trait RegionOracle: Sync {
    fn covered(&self, x: f64, y: f64) -> bool;

    fn window(&self) -> Window {
        Window::EVERYWHERE
    }
}

pub struct Full;
pub struct Empty;

impl RegionOracle for Full {
    fn covered(&self, _: f64, _: f64) -> bool {
        true
    }
}

impl RegionOracle for Empty {
    fn covered(&self, _: f64, _: f64) -> bool {
        false
    }
}

/// Everything to the right of the vertical geodesic `x = at`.
pub struct HalfPlane {
    pub at: f64,
}

impl RegionOracle for HalfPlane {
    fn covered(&self, x: f64, _: f64) -> bool {
        x > self.at
    }
}

/// Union of finitely many horoballs, trusted inside `window`.
pub struct HoroballUnion {
    /// `(tangent, diameter)` sorted by tangent point; the height of the
    /// horoball at `∞` is kept apart.
    disks: Vec<(f64, f64)>,
    top: Option<f64>,
    max_diameter: f64,
    window: Window,
}

impl HoroballUnion {
    pub fn new<F: Field>(horoballs: &[Horoball<F>], window: Window) -> Self {
        let mut disks = Vec::new();
        let mut top = None;
        for h in horoballs {
            match h.tangent() {
                Cusp::Infinity => top = Some(h.size().as_f64()),
                Cusp::Finite(x) => disks.push((x.as_f64(), h.size().as_f64())),
            }
        }
        disks.sort_by(|a, b| a.0.total_cmp(&b.0));
        let max_diameter = disks.iter().map(|d| d.1).fold(0.0, f64::max);
        HoroballUnion { disks, top, max_diameter, window }
    }
}

impl RegionOracle for HoroballUnion {
    fn covered(&self, x: f64, y: f64) -> bool {
        if self.top.is_some_and(|h| y >= h) {
            return true;
        }
        let half = self.max_diameter / 2.0;
        let start = self.disks.partition_point(|d| d.0 < x - half);
        self.disks[start..]
            .iter()
            .take_while(|d| d.0 <= x + half)
            .any(|&(t, dia)| (x - t).powi(2) + (y - dia / 2.0).powi(2) <= dia * dia / 4.0)
    }

    fn window(&self) -> Window {
        self.window
    }
}

/// The ideal triangle `(0, 1, ∞)` with the three standard horoballs
/// removed.
pub struct IdealGap;

impl IdealGap {
    pub fn in_triangle(x: f64, y: f64) -> bool {
        x > 0.0 && x < 1.0 && (x - 0.5).powi(2) + y * y > 0.25
    }
}

impl RegionOracle for IdealGap {
    fn covered(&self, x: f64, y: f64) -> bool {
        IdealGap::in_triangle(x, y)
            && y < 1.0
            && x * x + (y - 0.5).powi(2) > 0.25
            && (x - 1.0).powi(2) + (y - 0.5).powi(2) > 0.25
    }
}

/// Disks of radius 1 centred on the hexagonal lattice of spacing 2.
pub struct HexagonalDisks;

impl RegionOracle for HexagonalDisks {
    fn covered(&self, x: f64, y: f64) -> bool {
        let h = 3f64.sqrt();
        let j = (y / h).floor();
        // nearest centre is among the lattice points of the two rows around y
        [j, j + 1.0].iter().any(|&row| {
            let cy = row * h;
            let shift = row.rem_euclid(2.0);
            let i = ((x - shift) / 2.0).round();
            [i - 1.0, i, i + 1.0].iter().any(|&k| {
                let cx = 2.0 * k + shift;
                (x - cx).powi(2) + (y - cy).powi(2) <= 1.0
            })
        })
    }
}

/// Cores of a degenerate binary tiling, valid between `y = 1/2` and the
/// top of the determined strips.
pub struct CoreUnion<'a> {
    pub tiling: &'a DegenerateTiling,
}

impl RegionOracle for CoreUnion<'_> {
    fn covered(&self, x: f64, y: f64) -> bool {
        let j = y.log2().floor() as i32;
        if j < -1 || j > self.tiling.top_strip() {
            return false;
        }
        let Ok(cores) = self.tiling.cores_in_window(j, j, x.floor() as i64, x.ceil() as i64) else {
            return false;
        };
        cores.iter().any(|c| {
            let h = 2f64.powi(c.strip);
            let l = c.left as f64;
            y >= h && y <= 2.0 * h && x >= l && x <= l + c.width()
        })
    }

    fn window(&self) -> Window {
        Window { x0: f64::NEG_INFINITY, x1: f64::INFINITY, y0: 0.5, y1: 2f64.powi(self.tiling.top_strip() + 1) }
    }
}

/// Oracle transported by an isometry: covers `g(A)` when `inner` covers `A`.
pub struct Transported<'a, O: RegionOracle> {
    pub inner: &'a O,
    pub g: FloatMobius,
    g_inv: FloatMobius,
}

impl<'a, O: RegionOracle> Transported<'a, O> {
    pub fn new(inner: &'a O, g: FloatMobius) -> Self {
        Transported { inner, g, g_inv: g.inverse() }
    }
}

impl<O: RegionOracle> RegionOracle for Transported<'_, O> {
    fn covered(&self, x: f64, y: f64) -> bool {
        match self.g_inv.apply(&HPoint::new(x, y)) {
            HPoint::Interior { x, y } => self.inner.covered(x, y),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub value: f64,
    pub samples: u64,
    pub radius: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl DensityEstimate {
    fn from_hits(hits: u64, samples: u64, radius: f64, seed: u64) -> Self {
        let value = hits as f64 / samples as f64;
        DensityEstimate { value, samples, radius, stderr: (value * (1.0 - value) / samples as f64).sqrt(), seed }
    }

    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        (self.value - target).abs() <= sigmas * self.stderr.max(f64::EPSILON)
    }
}

const BATCH: u64 = 1 << 14;

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Counts samples for which `hit` holds; batch `b` draws from its own
/// stream of `seed`, so the total does not depend on scheduling.
fn count_hits<F>(samples: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let batches = samples.div_ceil(BATCH);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(seed, b);
            let n = BATCH.min(samples - b * BATCH);
            (0..n).filter(|_| hit(&mut rng)).count() as u64
        })
        .sum()
}

/// Point of `B_r(center)` drawn uniformly for hyperbolic area, in
/// geodesic polar coordinates about the centre.
pub fn sample_hyperbolic(rng: &mut impl Rng, x: f64, y: f64, r: f64) -> (f64, f64) {
    let u: f64 = rng.gen();
    let theta = rng.gen::<f64>() * 2.0 * PI;
    // radial density ∝ sinh ρ on [0, r]
    let rho = (1.0 + u * (r.cosh() - 1.0)).acosh();
    let w = Complex64::from_polar((rho / 2.0).tanh(), theta);
    match from_disk(w) {
        HPoint::Interior { x: px, y: py } => (x + y * px, y * py),
        _ => (x, y),
    }
}

/// Point of the Euclidean disk of radius `r`, uniform for area.
pub fn sample_euclidean(rng: &mut impl Rng, x: f64, y: f64, r: f64) -> (f64, f64) {
    let rad = r * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * 2.0 * PI;
    (x + rad * theta.cos(), y + rad * theta.sin())
}

fn check_ball(oracle: &dyn RegionOracle, geometry: Geometry, x: f64, y: f64, r: f64) -> Result<(), DensityError> {
    // a hyperbolic ball is the Euclidean disk about (x, y cosh r) of radius y sinh r
    let (cx, cy, er) = match geometry {
        Geometry::Hyperbolic => (x, y * r.cosh(), y * r.sinh()),
        Geometry::Euclidean => (x, y, r),
    };
    if oracle.window().contains_disk(cx, cy, er) {
        Ok(())
    } else {
        Err(DensityError::OutsideWindow { x, y, radius: r })
    }
}

/// Fraction of `B_r(center)` covered by the oracle's region.
pub fn relative_density(
    oracle: &dyn RegionOracle,
    geometry: Geometry,
    center: (f64, f64),
    r: f64,
    samples: u64,
    seed: u64,
) -> Result<DensityEstimate, DensityError> {
    let (x, y) = center;
    if !(r > 0.0 && r.is_finite()) {
        return Err(DensityError::BadParameter(format!("radius must be positive, got {r}")));
    }
    if samples == 0 {
        return Err(DensityError::BadParameter("at least one sample is needed".into()));
    }
    if geometry == Geometry::Hyperbolic && !(y > 0.0) {
        return Err(DensityError::BadParameter("centre must lie in the upper half-plane".into()));
    }
    check_ball(oracle, geometry, x, y, r)?;
    let hits = count_hits(samples, seed, |rng| {
        let (px, py) = match geometry {
            Geometry::Hyperbolic => sample_hyperbolic(rng, x, y, r),
            Geometry::Euclidean => sample_euclidean(rng, x, y, r),
        };
        oracle.covered(px, py)
    });
    Ok(DensityEstimate::from_hits(hits, samples, r, seed))
}

/// `relative_density` at each of an increasing list of radii.
pub fn density_curve(
    oracle: &dyn RegionOracle,
    geometry: Geometry,
    center: (f64, f64),
    radii: &[f64],
    samples: u64,
    seed: u64,
) -> Result<Vec<DensityEstimate>, DensityError> {
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DensityError::BadParameter("radii must increase".into()));
    }
    radii.iter().map(|&r| relative_density(oracle, geometry, center, r, samples, seed)).collect()
}

pub fn curve_to_csv(curve: &[DensityEstimate]) -> String {
    let mut out = String::from("radius,estimate,stderr,samples,seed\n");
    for e in curve {
        out.push_str(&format!("{},{},{},{},{}\n", e.radius, e.value, e.stderr, e.samples, e.seed));
    }
    out
}

/// Hyperbolic area of the ideal triangle `(0, 1, ∞)` outside the three
/// pairwise tangent horoballs at its vertices: `π - 3`.
pub fn ideal_gap_area() -> f64 {
    // the triangle has area π; the cusp y ≥ 1, 0 < x < 1 has area ∫∫ dy/y² = 1,
    // and the other two cusps are its images
    PI - 3.0 * CUSP_AREA
}

const CUSP_AREA: f64 = 1.0;

/// Centre of the ideal triangle `(0, 1, ∞)`, fixed by `z -> 1/(1 - z)`.
pub const GAP_CENTER: (f64, f64) = (0.5, 0.866_025_403_784_438_6);

/// Radius of a ball around [`GAP_CENTER`] containing the whole gap.
pub const GAP_RADIUS: f64 = 1.0;

/// Monte-Carlo estimate of [`ideal_gap_area`]; `value` and `stderr` are
/// areas rather than fractions.
pub fn gap_area_mc(samples: u64, seed: u64) -> Result<DensityEstimate, DensityError> {
    let e = relative_density(&IdealGap, Geometry::Hyperbolic, GAP_CENTER, GAP_RADIUS, samples, seed)?;
    let area = ball_area(GAP_RADIUS).expect("positive radius");
    Ok(DensityEstimate { value: e.value * area, stderr: e.stderr * area, ..e })
}

/// Share of the ideal triangle covered by the three horoballs: `3/π`.
pub fn local_horoball_density() -> f64 {
    3.0 * CUSP_AREA / PI
}

/// Density of the hexagonal disk packing: `π/√12`.
pub fn hexagonal_disk_density() -> f64 {
    PI / 12f64.sqrt()
}

/// Disk area over the area of the circumscribed regular hexagon.
pub fn hexagon_voronoi_density(radius: f64) -> Result<f64, DensityError> {
    if !(radius > 0.0) {
        return Err(DensityError::BadParameter(format!("radius must be positive, got {radius}")));
    }
    let hexagon = 2.0 * 3f64.sqrt() * radius * radius;
    Ok(PI * radius * radius / hexagon)
}

/// Fraction of uniform points of the unit-inradius hexagon that land in
/// the inscribed disk.
pub fn hexagon_disk_mc(samples: u64, seed: u64) -> Result<DensityEstimate, DensityError> {
    if samples == 0 {
        return Err(DensityError::BadParameter("at least one sample is needed".into()));
    }
    let s3 = 3f64.sqrt();
    // flat sides at y = ±1; vertices at (±2/√3, 0)
    let in_hexagon = |x: f64, y: f64| y.abs() <= 1.0 && s3 * x.abs() + y.abs() <= 2.0;
    let hits = count_hits(samples, seed, |rng| loop {
        let x = (rng.gen::<f64>() * 2.0 - 1.0) * 2.0 / s3;
        let y = rng.gen::<f64>() * 2.0 - 1.0;
        if in_hexagon(x, y) {
            break x * x + y * y <= 1.0;
        }
    });
    Ok(DensityEstimate::from_hits(hits, samples, 1.0, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_oracles_are_exact() {
        for r in [0.1, 1.0, 5.0] {
            let full = relative_density(&Full, Geometry::Hyperbolic, (0.0, 1.0), r, 5000, 1).unwrap();
            assert_eq!((full.value, full.stderr), (1.0, 0.0));
            let empty = relative_density(&Empty, Geometry::Hyperbolic, (0.0, 1.0), r, 5000, 1).unwrap();
            assert_eq!(empty.value, 0.0);
        }
    }

    #[test]
    fn samples_stay_in_the_ball() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = HPoint::new(0.3, 2.0);
        for _ in 0..10_000 {
            let (x, y) = sample_hyperbolic(&mut rng, 0.3, 2.0, 1.5);
            let d = crate::geom::hyp_distance(&c, &HPoint::new(x, y)).unwrap();
            assert!(d <= 1.5 + 1e-9);
        }
    }

    #[test]
    fn same_seed_same_estimate() {
        let a = relative_density(&HalfPlane { at: 0.1 }, Geometry::Hyperbolic, (0.0, 1.0), 2.0, 100_000, 11).unwrap();
        let b = relative_density(&HalfPlane { at: 0.1 }, Geometry::Hyperbolic, (0.0, 1.0), 2.0, 100_000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn window_is_enforced() {
        let w = Window { x0: -1.0, x1: 1.0, y0: 0.5, y1: 4.0 };
        let u = HoroballUnion::new::<num_rational::BigRational>(&[], w);
        assert!(relative_density(&u, Geometry::Hyperbolic, (0.0, 1.0), 0.5, 10, 0).is_ok());
        assert!(relative_density(&u, Geometry::Hyperbolic, (0.0, 1.0), 2.0, 10, 0).is_err());
        assert!(relative_density(&Full, Geometry::Hyperbolic, (0.0, 1.0), 0.0, 10, 0).is_err());
        assert!(density_curve(&Full, Geometry::Hyperbolic, (0.0, 1.0), &[1.0, 0.5], 10, 0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert!((hexagonal_disk_density() - 0.906_899_682_117_108_9).abs() < 1e-15);
        for r in [0.1, 1.0, 10.0] {
            assert!((hexagon_voronoi_density(r).unwrap() - hexagonal_disk_density()).abs() < 1e-15);
        }
        assert!(hexagon_voronoi_density(0.0).is_err());
        assert!((ideal_gap_area() - 0.141_592_653_589_793).abs() < 1e-12);
        assert!((local_horoball_density() - 0.954_929_658_551_372).abs() < 1e-12);
    }

    #[test]
    fn gap_fits_in_its_ball() {
        // the horoballs touch at i, (1 + i)/2 and 1 + i, the gap's far corners
        let c = HPoint::new(GAP_CENTER.0, GAP_CENTER.1);
        for (x, y) in [(0.0, 1.0), (0.5, 0.5), (1.0, 1.0)] {
            assert!(crate::geom::hyp_distance(&c, &HPoint::new(x, y)).unwrap() < GAP_RADIUS);
        }
    }

    #[test]
    fn hexagon_oracle_points() {
        assert!(HexagonalDisks.covered(0.0, 0.0));
        assert!(HexagonalDisks.covered(1.0, 1.732));
        assert!(!HexagonalDisks.covered(1.0, 0.577));
        assert!(HexagonalDisks.covered(2.9, 0.0));
    }
}
