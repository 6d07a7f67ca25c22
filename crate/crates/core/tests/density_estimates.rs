use horotile::density::*;
use horotile::geom::FloatMobius;
use horotile::tiling::{enumerate_ford, DegenerateTiling};

#[test]
fn gap_area_agrees_with_closed_form() {
    let e = gap_area_mc(1_000_000, 42).unwrap();
    assert!(e.within(ideal_gap_area(), 3.0), "{e:?}");
    let third = relative_density(&Third, Geometry::Hyperbolic, GAP_CENTER, GAP_RADIUS, 1_000_000, 42).unwrap();
    let area = horotile::geom::ball_area(GAP_RADIUS).unwrap();
    assert!((third.value * area - ideal_gap_area() / 3.0).abs() <= 4.0 * third.stderr * area, "{third:?}");
}

/// Points of the gap nearer to `y ≥ 1` than to the other two horoballs.
/// The equidistant curves are the geodesics from the centre to the
/// tangency points, so this is one of the three congruent pieces.
struct Third;

impl RegionOracle for Third {
    fn covered(&self, x: f64, y: f64) -> bool {
        let top = horo_dist_top(y);
        IdealGap.covered(x, y) && top < horo_dist_disk(x, y, 0.0) && top < horo_dist_disk(x, y, 1.0)
    }
}

fn horo_dist_top(y: f64) -> f64 {
    (1.0 / y).ln()
}

fn horo_dist_disk(x: f64, y: f64, t: f64) -> f64 {
    // Busemann distance to the unit horoball at t: map by z -> -1/(z - t)
    let m = (x - t).powi(2) + y * y;
    horo_dist_top(y / m)
}

#[test]
fn hexagon_monte_carlo() {
    let e = hexagon_disk_mc(1_000_000, 7).unwrap();
    assert!(e.within(hexagonal_disk_density(), 3.0), "{e:?}");
}

#[test]
fn euclidean_hexagonal_packing() {
    let e = relative_density(&HexagonalDisks, Geometry::Euclidean, (0.3, 0.1), 20.0, 400_000, 5).unwrap();
    assert!((e.value - hexagonal_disk_density()).abs() < 0.02, "{e:?}");
}

#[test]
fn half_ball_calibration() {
    let inside = (0..100u64)
        .filter(|&seed| {
            relative_density(&HalfPlane { at: 0.0 }, Geometry::Hyperbolic, (0.0, 1.0), 1.5, 10_000, seed)
                .unwrap()
                .within(0.5, 4.0)
        })
        .count();
    assert!(inside >= 99, "{inside}");
}

#[test]
fn degenerate_tiling_covers_everything() {
    let t = DegenerateTiling::build(&[true, false, false, true, true, false, true, false, true, true], 10).unwrap();
    let oracle = CoreUnion { tiling: &t };
    let curve = density_curve(&oracle, Geometry::Hyperbolic, (0.0, 4.0), &[0.5, 1.0, 2.0], 50_000, 3).unwrap();
    assert!(curve.iter().all(|e| e.value == 1.0));
    assert!(relative_density(&oracle, Geometry::Hyperbolic, (0.0, 4.0), 3.0, 10, 3).is_err());
    let empty = density_curve(&Empty, Geometry::Hyperbolic, (0.0, 4.0), &[0.5, 1.0, 2.0], 1000, 3).unwrap();
    assert!(empty.iter().all(|e| e.value == 0.0));
}

#[test]
fn more_horoballs_never_lower_the_estimate() {
    let window = Window { x0: -2.0, x1: 3.0, y0: 1.0 / 400.0, y1: f64::INFINITY };
    let big = enumerate_ford(20, (-2, 3)).unwrap();
    let small = enumerate_ford(6, (-2, 3)).unwrap();
    let a = relative_density(&HoroballUnion::new(small.horoballs(), window), Geometry::Hyperbolic, (0.5, 0.8), 1.0, 200_000, 9)
        .unwrap();
    let b = relative_density(&HoroballUnion::new(big.horoballs(), window), Geometry::Hyperbolic, (0.5, 0.8), 1.0, 200_000, 9)
        .unwrap();
    assert!(b.value >= a.value);
    assert!(b.value > 0.5 && b.value < 1.0);
}

#[test]
fn estimates_move_with_isometries() {
    let window = Window { x0: -2.0, x1: 3.0, y0: 1.0 / 400.0, y1: f64::INFINITY };
    let p = enumerate_ford(20, (-2, 3)).unwrap();
    let oracle = HoroballUnion::new(p.horoballs(), window);
    let base = relative_density(&oracle, Geometry::Hyperbolic, (0.5, 0.8), 1.0, 200_000, 4).unwrap();
    for (s, t) in [(2.0, 0.0), (0.5, 3.0), (1.0, -7.25)] {
        let g = FloatMobius::affine(s, t);
        let moved = Transported::new(&oracle, g);
        let e = relative_density(&moved, Geometry::Hyperbolic, (s * 0.5 + t, s * 0.8), 1.0, 200_000, 4).unwrap();
        // identical sample points up to rounding on region boundaries
        assert!((e.value - base.value).abs() <= 5e-5, "{} vs {}", e.value, base.value);
    }
}
