//! SVG scenes in the upper half-plane or the Poincaré disk.

use std::fmt::Write as _;

use horotile::algebra::{Field, GoldenInt, Scalar};
use horotile::geom::{to_disk, Cusp, FloatMobius, HPoint, Horoball};
use horotile::tiling::{DegenerateTiling, HoroPacking, LabeledApprox, ModelScalar, PackingScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    HalfPlane,
    Disk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Ford,
    Hecke,
    Binary,
    Hexagonal,
    Tile,
    TilePentagonal,
    Tile3prong,
    Layers,
}

/// Shapes in half-plane coordinates (or flat coordinates for the
/// Euclidean figure).
#[derive(Clone, Debug)]
pub enum Shape {
    /// Horoball tangent at `x` with diameter `d`.
    Horoball { x: f64, d: f64 },
    /// The horoball `y ≥ h`.
    Top { h: f64 },
    /// Closed curve through the given points.
    Region { class: &'static str, points: Vec<(f64, f64)> },
    /// Flat disk, only for the Euclidean figure.
    Disk { x: f64, y: f64, r: f64 },
}

pub struct Scene {
    pub shapes: Vec<Shape>,
    /// Visible window `(x0, x1, y1)` in the half-plane.
    pub view: (f64, f64, f64),
    pub euclidean: bool,
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Points along the geodesic from `p` to `q`.
pub fn geodesic(p: (f64, f64), q: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    if (p.0 - q.0).abs() < 1e-12 {
        let (l0, l1) = (p.1.ln(), q.1.ln());
        return (0..=n).map(|i| (p.0, (l0 + (l1 - l0) * i as f64 / n as f64).exp())).collect();
    }
    let c = (p.0 * p.0 + p.1 * p.1 - q.0 * q.0 - q.1 * q.1) / (2.0 * (p.0 - q.0));
    let r = ((p.0 - c).powi(2) + p.1 * p.1).sqrt();
    let (a0, a1) = (p.1.atan2(p.0 - c), q.1.atan2(q.0 - c));
    (0..=n)
        .map(|i| {
            let a = a0 + (a1 - a0) * i as f64 / n as f64;
            (c + r * a.cos(), r * a.sin())
        })
        .collect()
}

/// Outline of the image of the core `i, i + 2u, 2i + 2u, 2i` under `g`.
pub fn core_outline(g: &FloatMobius, unit: f64, n: usize) -> Vec<(f64, f64)> {
    let w = 2.0 * unit;
    let mut model = Vec::new();
    for i in 0..n {
        model.push((w * i as f64 / n as f64, 1.0));
    }
    for i in 0..n {
        model.push((w, 2f64.powf(i as f64 / n as f64)));
    }
    for i in 0..n {
        model.push((w * (1.0 - i as f64 / n as f64), 2.0));
    }
    for i in 0..n {
        model.push((0.0, 2f64.powf(1.0 - i as f64 / n as f64)));
    }
    model.into_iter().filter_map(|(x, y)| g.apply(&HPoint::new(x, y)).xy()).collect()
}

/// The part of the gap next to `y ≥ 1` inside one cell: bounded by the
/// horocycle between the tangency points `x0 + i`, `x1 + i` and the
/// geodesics from them to the gap centre.
pub fn prong(x0: f64, x1: f64, centre: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = (0..n).map(|i| (x0 + (x1 - x0) * i as f64 / n as f64, 1.0)).collect();
    pts.extend(geodesic((x1, 1.0), centre, n).into_iter().take(n));
    pts.extend(geodesic(centre, (x0, 1.0), n).into_iter().take(n));
    pts
}

fn map_points(points: &[(f64, f64)], g: &FloatMobius) -> Vec<(f64, f64)> {
    points.iter().filter_map(|&(x, y)| g.apply(&HPoint::new(x, y)).xy()).collect()
}

fn horoball_shape<F: Field>(h: &Horoball<F>) -> Shape {
    match h.tangent() {
        Cusp::Infinity => Shape::Top { h: h.size().as_f64() },
        Cusp::Finite(x) => Shape::Horoball { x: x.as_f64(), d: h.size().as_f64() },
    }
}

pub fn packing_scene<S: PackingScalar>(p: &HoroPacking<S>, view: (f64, f64, f64)) -> Scene {
    Scene { shapes: p.horoballs().iter().map(horoball_shape).collect(), view, euclidean: false }
}

/// Gap centre of the base cell: `(1 + i√3)/2` for triangles, the fixed
/// point of `z -> 1/(λ - z)` for pentagons.
fn gap_centre(unit: f64) -> (f64, f64) {
    (unit / 2.0, (4.0 - unit * unit).sqrt() / 2.0)
}

pub fn single_tile_scene(unit: f64) -> Scene {
    let mut shapes = vec![Shape::Region { class: "core", points: core_outline(&FloatMobius::IDENTITY, unit, 24) }];
    let c = gap_centre(unit);
    for k in 0..2 {
        let t = FloatMobius::affine(1.0, k as f64 * unit);
        shapes.push(Shape::Region { class: "prong", points: map_points(&prong(0.0, unit, c, 24), &t) });
    }
    Scene { shapes, view: (-0.5 * unit, 2.5 * unit, 2.5), euclidean: false }
}

/// The ideal triangle `(0, 1, ∞)`, its horoballs, and the three prongs
/// meeting at the centre.
pub fn three_prong_scene() -> Scene {
    let mut shapes = vec![Shape::Top { h: 1.0 }, Shape::Horoball { x: 0.0, d: 1.0 }, Shape::Horoball { x: 1.0, d: 1.0 }];
    let c = gap_centre(1.0);
    // z -> 1/(1 - z) rotates the triangle about its centre
    let rot = FloatMobius { a: 0.0, b: 1.0, c: -1.0, d: 1.0 };
    let mut g = FloatMobius::IDENTITY;
    for _ in 0..3 {
        shapes.push(Shape::Region { class: "prong", points: map_points(&prong(0.0, 1.0, c, 24), &g) });
        g = rot.compose(&g);
    }
    Scene { shapes, view: (-0.5, 1.5, 1.6), euclidean: false }
}

pub fn binary_scene(t: &DegenerateTiling, view: (f64, f64, f64)) -> Scene {
    let (x0, x1) = (view.0.floor() as i64, view.1.ceil() as i64);
    let cores = t.cores_in_window(-1, t.top_strip(), x0, x1).unwrap_or_default();
    let shapes = cores
        .iter()
        .map(|c| Shape::Region { class: "core", points: core_outline(&c.isometry(), 1.0, 6) })
        .collect();
    Scene { shapes, view, euclidean: false }
}

pub fn hexagonal_scene(rings: i32) -> Scene {
    let h = 3f64.sqrt();
    let mut shapes = Vec::new();
    for j in -rings..=rings {
        for i in -rings..=rings {
            let (x, y) = (2.0 * i as f64 + j.rem_euclid(2) as f64, j as f64 * h);
            shapes.push(Shape::Disk { x, y, r: 1.0 });
        }
    }
    let e = 2.0 * rings as f64 + 2.0;
    Scene { shapes, view: (-e, e, e), euclidean: true }
}

/// Horoballs of an approximant with the cores of its first `rows` rows
/// and the prongs of the boundary row.
pub fn layers_scene<S: ModelScalar>(t: &LabeledApprox<S>, rows: u32, view: (f64, f64, f64)) -> Result<Scene, String> {
    let p = t.packing();
    let mut scene = packing_scene(p, view);
    let unit = S::unit().as_f64();
    let centre = gap_centre(unit);
    let th = t.theta(rows).map_err(|e| e.to_string())?;
    for tile in &th.tiles {
        scene.shapes.push(Shape::Region { class: "core", points: core_outline(&tile.isometry, unit, 16) });
        if tile.row == 0 {
            let frame = p.frame(tile.host).to_float();
            for k in 0..2 {
                let shift = FloatMobius::affine(1.0, (tile.left + k) as f64 * unit);
                let g = frame.compose(&shift);
                scene.shapes.push(Shape::Region { class: "prong", points: map_points(&prong(0.0, unit, centre, 16), &g) });
            }
        }
    }
    Ok(scene)
}

/// Cusp at `λ` as a float, for windows of Hecke scenes.
pub fn lambda() -> f64 {
    GoldenInt::lambda().as_f64()
}

struct Frame {
    model: Model,
    euclidean: bool,
    view: (f64, f64, f64),
}

impl Frame {
    fn pt(&self, x: f64, y: f64) -> (f64, f64) {
        if self.euclidean || self.model == Model::HalfPlane {
            return (x, -y);
        }
        let w = to_disk(&HPoint::new(x, y));
        (w.re, -w.im)
    }

    /// Circle through three points, in output coordinates.
    fn circle(&self, pts: [(f64, f64); 3]) -> (f64, f64, f64) {
        let [a, b, c] = pts.map(|(x, y)| self.pt(x, y));
        let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
        let sq = |p: (f64, f64)| p.0 * p.0 + p.1 * p.1;
        let ux = (sq(a) * (b.1 - c.1) + sq(b) * (c.1 - a.1) + sq(c) * (a.1 - b.1)) / d;
        let uy = (sq(a) * (c.0 - b.0) + sq(b) * (a.0 - c.0) + sq(c) * (b.0 - a.0)) / d;
        (ux, uy, ((a.0 - ux).powi(2) + (a.1 - uy).powi(2)).sqrt())
    }
}

/// Closed path of cubic Bézier pieces with Catmull-Rom tangents, except
/// at corners (turning angle over 30°) where the tangent is dropped so the
/// curve does not overshoot.
fn smooth_path(pts: &[(f64, f64)]) -> String {
    let n = pts.len();
    let tangent = |i: usize| {
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        let (u, v) = ((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1));
        let cos = (u.0 * v.0 + u.1 * v.1) / (u.0.hypot(u.1) * v.0.hypot(v.1));
        if cos.is_nan() || cos < 30f64.to_radians().cos() {
            (0.0, 0.0)
        } else {
            ((c.0 - a.0) / 6.0, (c.1 - a.1) / 6.0)
        }
    };
    let mut d = format!("M{},{}", f(pts[0].0), f(pts[0].1));
    for i in 0..n {
        let (p1, p2) = (pts[i], pts[(i + 1) % n]);
        let (t1, t2) = (tangent(i), tangent((i + 1) % n));
        let (c1, c2) = ((p1.0 + t1.0, p1.1 + t1.1), (p2.0 - t2.0, p2.1 - t2.1));
        let _ = write!(d, " C{},{} {},{} {},{}", f(c1.0), f(c1.1), f(c2.0), f(c2.1), f(p2.0), f(p2.1));
    }
    d.push('Z');
    d
}

pub fn to_svg(scene: &Scene, model: Model, stroke: f64) -> Result<String, String> {
    if scene.shapes.is_empty() {
        return Err("nothing to draw".into());
    }
    let fr = Frame { model, euclidean: scene.euclidean, view: scene.view };
    let (x0, x1, y1) = fr.view;
    let (vx, vy, vw, vh) = if scene.euclidean {
        (x0, -y1, x1 - x0, 2.0 * y1)
    } else if model == Model::Disk {
        (-1.05, -1.05, 2.1, 2.1)
    } else {
        (x0, -y1, x1 - x0, y1 + 0.05 * (x1 - x0))
    };
    let sw = stroke * vw / 800.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        f(vx),
        f(vy),
        f(vw),
        f(vh),
        f(800.0 * vh / vw)
    );
    let _ = writeln!(
        out,
        "<style>.horoball{{fill:#9ab;stroke:#000}} .core{{fill:none;stroke:#222}} .prong{{fill:#e9c46a;stroke:#555}} .disk{{fill:#9ab;stroke:#000}} .boundary{{fill:none;stroke:#000}}</style>"
    );
    let _ = writeln!(out, r#"<g stroke-width="{}">"#, f(sw));
    if !scene.euclidean {
        match model {
            Model::Disk => {
                let _ = writeln!(out, r#"<circle class="boundary" cx="0.000000" cy="0.000000" r="1.000000"/>"#);
            }
            Model::HalfPlane => {
                let _ = writeln!(out, r#"<line class="boundary" x1="{}" y1="0.000000" x2="{}" y2="0.000000"/>"#, f(x0), f(x1));
            }
        }
    }
    for s in &scene.shapes {
        match *s {
            Shape::Disk { x, y, r } => {
                let _ = writeln!(out, r#"<circle class="disk" cx="{}" cy="{}" r="{}"/>"#, f(x), f(-y), f(r));
            }
            Shape::Horoball { x, d } => {
                let (cx, cy, r) = match model {
                    Model::HalfPlane => (x, -d / 2.0, d / 2.0),
                    Model::Disk => fr.circle([(x - d / 2.0, d / 2.0), (x, d), (x + d / 2.0, d / 2.0)]),
                };
                let _ = writeln!(out, r#"<circle class="horoball" cx="{}" cy="{}" r="{}"/>"#, f(cx), f(cy), f(r));
            }
            Shape::Top { h } => match model {
                Model::HalfPlane => {
                    let _ = writeln!(
                        out,
                        r#"<rect class="horoball" x="{}" y="{}" width="{}" height="{}"/>"#,
                        f(x0),
                        f(-y1),
                        f(x1 - x0),
                        f((y1 - h).max(0.0))
                    );
                }
                Model::Disk => {
                    let (cx, cy, r) = fr.circle([(-1.0, h), (0.0, h), (1.0, h)]);
                    let _ = writeln!(out, r#"<circle class="horoball" cx="{}" cy="{}" r="{}"/>"#, f(cx), f(cy), f(r));
                }
            },
            Shape::Region { class, ref points } => {
                let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| fr.pt(x, y)).collect();
                if pts.len() >= 3 {
                    let _ = writeln!(out, r#"<path class="{class}" d="{}"/>"#, smooth_path(&pts));
                }
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
