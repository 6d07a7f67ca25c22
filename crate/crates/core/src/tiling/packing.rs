use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::TilingError;
use crate::algebra::{Field, GoldenInt, GoldenRational, Scalar};
use crate::geom::{Contact, Cusp, Horoball, Isometry};

/// Matrix-entry ring of a packing's symmetry group.
pub trait PackingScalar: Scalar {
    /// Translation length of the parabolic generator fixing `∞`.
    fn unit() -> Self;
    /// Number of horoballs around each cell.
    const CELL_SIZE: usize;
    fn field_to_json(x: &Self::Field) -> Value;
    fn field_from_json(v: &Value) -> Result<Self::Field, String>;
}

impl PackingScalar for BigInt {
    const CELL_SIZE: usize = 3;

    fn unit() -> Self {
        BigInt::one()
    }

    fn field_to_json(x: &BigRational) -> Value {
        serde_json::json!({
            "p": crate::json::bigint_to_json(x.numer()),
            "q": crate::json::bigint_to_json(x.denom()),
        })
    }

    fn field_from_json(v: &Value) -> Result<BigRational, String> {
        let p = crate::json::bigint_from_json(v.get("p").ok_or("missing p")?)?;
        let q = crate::json::bigint_from_json(v.get("q").ok_or("missing q")?)?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(p, q))
    }
}

impl PackingScalar for GoldenInt {
    const CELL_SIZE: usize = 5;

    fn unit() -> Self {
        GoldenInt::lambda()
    }

    fn field_to_json(x: &GoldenRational) -> Value {
        serde_json::json!({
            "goldenP": crate::json::bigint_to_json(&x.numer().p),
            "goldenQ": crate::json::bigint_to_json(&x.numer().q),
            "den": crate::json::bigint_to_json(x.denom()),
        })
    }

    fn field_from_json(v: &Value) -> Result<GoldenRational, String> {
        let get = |k: &str| crate::json::bigint_from_json(v.get(k).ok_or(format!("missing {k}"))?);
        GoldenRational::new(GoldenInt { p: get("goldenP")?, q: get("goldenQ")? }, get("den")?)
            .ok_or_else(|| "zero denominator".into())
    }
}

/// How a packing was enumerated; enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PackingSource {
    /// Horoballs at reduced `p/q` with `q ≤ q_max` and `lo ≤ p/q ≤ hi`, plus `y ≥ 1`.
    Ford { q_max: u64, window: (i64, i64) },
    /// Images of `y ≥ 1` under `G5` elements of word length at most
    /// `max_word_len` in `z -> -1/z`, `z -> z ± λ`, optionally windowed.
    Hecke { max_word_len: u32, window: Option<(i64, i64)> },
}

/// A finite piece of a horoball packing.
///
/// Horoballs are sorted by tangent point with `∞` last. Each carries a
/// canonical frame `g` with `g(y ≥ 1)` equal to the horoball. Cells are the
/// complete triangles (or pentagons) of mutually adjacent horoballs, stored
/// counterclockwise, which for ideal polygons means by increasing tangent
/// point with `∞` last.
#[derive(Clone, Debug)]
pub struct HoroPacking<S: PackingScalar> {
    horoballs: Vec<Horoball<S::Field>>,
    frames: Vec<Isometry<S>>,
    lookup: HashMap<Cusp<S::Field>, usize>,
    adjacency: Vec<(usize, usize)>,
    overlaps: Vec<(usize, usize)>,
    cells: Vec<Vec<usize>>,
    source: PackingSource,
}

/// Right-multiplies a frame by a power of the translation fixing `∞` so that
/// `d / (c · unit)` lies in `[0, 1)`; frames of `∞` become the identity.
pub fn canonical_frame<S: PackingScalar>(g: &Isometry<S>) -> Isometry<S> {
    if g.c().is_zero() {
        return Isometry::identity();
    }
    let unit = S::unit();
    let ratio = g.d().to_field() / (g.c().clone() * unit.clone()).to_field();
    let m = ratio.floor();
    let shift = field_int::<S>(&m) * unit;
    Isometry::new(
        g.a().clone(),
        g.b().clone() - shift.clone() * g.a().clone(),
        g.c().clone(),
        g.d().clone() - shift * g.c().clone(),
    )
    .expect("translation keeps the determinant")
}

fn field_int<S: Scalar>(m: &BigInt) -> S {
    // repeated doubling keeps this generic over the ring
    let mut out = S::zero();
    let mut base = S::one();
    let mut k = m.abs();
    while !k.is_zero() {
        if k.is_odd() {
            out = out + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    if m.is_negative() {
        -out
    } else {
        out
    }
}

impl<S: PackingScalar> HoroPacking<S> {
    fn assemble(
        mut entries: Vec<(Horoball<S::Field>, Isometry<S>)>,
        cells_from: impl FnOnce(&HashMap<Cusp<S::Field>, usize>, &[Vec<usize>]) -> Vec<Vec<usize>>,
        source: PackingSource,
    ) -> Self {
        entries.sort_by(|x, y| x.0.tangent().cmp(y.0.tangent()));
        let (horoballs, frames): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let lookup = horoballs
            .iter()
            .enumerate()
            .map(|(i, h)| (h.tangent().clone(), i))
            .collect();
        let (adjacency, overlaps) = contacts(&horoballs);
        let mut neighbors = vec![Vec::new(); horoballs.len()];
        for &(i, j) in &adjacency {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        let mut cells = cells_from(&lookup, &neighbors);
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort();
        cells.dedup();
        HoroPacking { horoballs, frames, lookup, adjacency, overlaps, cells, source }
    }

    pub fn horoballs(&self) -> &[Horoball<S::Field>] {
        &self.horoballs
    }

    pub fn len(&self) -> usize {
        self.horoballs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.horoballs.is_empty()
    }

    pub fn frame(&self, i: usize) -> &Isometry<S> {
        &self.frames[i]
    }

    /// Pairs of tangent horoballs, `i < j`.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    /// Pairs whose interiors meet; empty for a genuine packing.
    pub fn overlaps(&self) -> &[(usize, usize)] {
        &self.overlaps
    }

    pub fn is_packing(&self) -> bool {
        self.overlaps.is_empty()
    }

    /// Cells as counterclockwise lists of horoball indices.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn source(&self) -> &PackingSource {
        &self.source
    }

    pub fn find(&self, tangent: &Cusp<S::Field>) -> Option<usize> {
        self.lookup.get(tangent).copied()
    }

    pub fn find_cell(&self, members: &[usize]) -> Option<usize> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.cells.binary_search(&key).ok()
    }

    /// Position of a cell around one of its horoballs: the cell's lowest
    /// finite cusp in the horoball's frame, in units of the parabolic
    /// translation, rounded down.
    pub fn position(&self, cell: usize, horoball: usize) -> i64 {
        let inv = self.frames[horoball].inverse();
        let unit = S::unit().to_field();
        let lowest = self.cells[cell]
            .iter()
            .filter_map(|&m| match inv.apply_cusp(self.horoballs[m].tangent()) {
                Cusp::Finite(x) => Some(x),
                Cusp::Infinity => None,
            })
            .min()
            .expect("a cell has finite cusps");
        (lowest / unit).floor().to_i64().expect("position fits in i64")
    }

    /// Cells sharing the side between two horoballs.
    pub fn cells_on_side(&self, h1: usize, h2: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&c| self.cells[c].contains(&h1) && self.cells[c].contains(&h2))
            .collect()
    }
}

/// Exact contact classification of all pairs that could touch.
///
/// Pairs of finite horoballs whose tangent points are farther apart than
/// `sqrt(D_i · D_max)` cannot meet; they are skipped after a float
/// comparison with a 1e-9 relative margin, far above rounding error.
fn contacts<F: Field>(hs: &[Horoball<F>]) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let (mut adj, mut over) = (Vec::new(), Vec::new());
    let mut record = |i: usize, j: usize, c: Contact| match c {
        Contact::Tangent => adj.push((i.min(j), i.max(j))),
        Contact::Overlapping => over.push((i.min(j), i.max(j))),
        Contact::Disjoint => {}
    };
    let finite: Vec<usize> = (0..hs.len()).filter(|&i| !hs[i].tangent().is_infinity()).collect();
    let xs: Vec<f64> = finite.iter().map(|&i| hs[i].tangent().as_f64()).collect();
    let ds: Vec<f64> = finite.iter().map(|&i| hs[i].size().as_f64()).collect();
    let dmax = ds.iter().cloned().fold(0.0, f64::max);
    for (a, &i) in finite.iter().enumerate() {
        let reach = (ds[a] * dmax).sqrt() * (1.0 + 1e-9) + 1e-300;
        for (b, &j) in finite.iter().enumerate().skip(a + 1) {
            if xs[b] - xs[a] > reach {
                break;
            }
            record(i, j, hs[i].contact(&hs[j]));
        }
    }
    let infinite: Vec<usize> = (0..hs.len()).filter(|&i| hs[i].tangent().is_infinity()).collect();
    for &i in &infinite {
        for j in 0..hs.len() {
            if j != i && (!hs[j].tangent().is_infinity() || j > i) {
                record(i, j, hs[i].contact(&hs[j]));
            }
        }
    }
    adj.sort_unstable();
    adj.dedup();
    over.sort_unstable();
    over.dedup();
    (adj, over)
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    // returns (x, y) with a x + b y = gcd(a, b)
    let e = a.extended_gcd(b);
    (e.x, e.y)
}

/// Ford packing: `y ≥ 1` and the horoballs at reduced `p/q` in the window
/// with diameter `1/q²`.
pub fn enumerate_ford(q_max: u64, window: (i64, i64)) -> Result<HoroPacking<BigInt>, TilingError> {
    if q_max < 1 {
        return Err(TilingError::BadParameter("q_max must be at least 1".into()));
    }
    if window.0 > window.1 {
        return Err(TilingError::BadParameter(format!("empty window {window:?}")));
    }
    let mut entries = vec![(
        Horoball::above(BigRational::one()).expect("positive height"),
        Isometry::identity(),
    )];
    for q in 1..=q_max as i64 {
        for p in window.0 * q..=window.1 * q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let (p, q) = (BigInt::from(p), BigInt::from(q));
            // p s - r q = 1
            let (s, y) = ext_gcd(&p, &q);
            let frame = Isometry::new(p.clone(), -y, q.clone(), s).expect("unimodular");
            let h = Horoball::tangent_at(
                BigRational::new(p, q.clone()),
                BigRational::new(BigInt::one(), &q * &q),
            )
            .expect("positive diameter");
            entries.push((h, canonical_frame(&frame)));
        }
    }
    Ok(HoroPacking::assemble(
        entries,
        |_, neighbors| {
            let mut cells = Vec::new();
            for (i, ns) in neighbors.iter().enumerate() {
                let set: HashSet<usize> = ns.iter().copied().collect();
                for &j in ns.iter().filter(|&&j| j > i) {
                    for &k in neighbors[j].iter().filter(|&&k| k > j) {
                        if set.contains(&k) {
                            cells.push(vec![i, j, k]);
                        }
                    }
                }
            }
            cells
        },
        PackingSource::Ford { q_max, window },
    ))
}

/// Generators `z -> -1/z`, `z -> z + λ`, `z -> z - λ` of `G5`.
pub fn hecke_generators() -> [Isometry<GoldenInt>; 3] {
    let (z, one, lam) = (GoldenInt::integer(0), GoldenInt::integer(1), GoldenInt::lambda());
    let s = Isometry::new(z.clone(), one.clone(), -one.clone(), z.clone()).expect("unimodular");
    let t = Isometry::new(one.clone(), lam, z, one).expect("unimodular");
    [s, t.clone(), t.inverse()]
}

/// Distinct `G5` elements of word length at most `max_len` in the Hecke
/// generators, in breadth-first order, each with its length.
pub fn hecke_ball(max_len: u32) -> Vec<(Isometry<GoldenInt>, u32)> {
    let gens = hecke_generators();
    let mut seen = HashSet::new();
    let mut out = vec![(Isometry::identity(), 0)];
    seen.insert(Isometry::identity());
    let mut queue = VecDeque::from([(Isometry::<GoldenInt>::identity(), 0u32)]);
    while let Some((g, len)) = queue.pop_front() {
        if len == max_len {
            continue;
        }
        for s in &gens {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                out.push((h.clone(), len + 1));
                queue.push_back((h, len + 1));
            }
        }
    }
    out
}

/// Cusps of the pentagon fixed by `z -> 1/(λ - z)`, counterclockwise.
pub fn hecke_base_cusps() -> [Cusp<GoldenRational>; 5] {
    let g = |p: i64, q: i64| Cusp::Finite(GoldenRational::from_golden(GoldenInt::new(p, q)));
    [g(0, 0), g(-1, 1), g(1, 0), g(0, 1), Cusp::Infinity]
}

/// Pentagonal packing: images of `y ≥ 1` under a ball of `G5`.
pub fn enumerate_hecke(
    max_word_len: u32,
    window: Option<(i64, i64)>,
) -> Result<HoroPacking<GoldenInt>, TilingError> {
    if max_word_len < 1 {
        return Err(TilingError::BadParameter("max_word_len must be at least 1".into()));
    }
    let top = Horoball::above(GoldenRational::one()).expect("positive height");
    let ball = hecke_ball(max_word_len);
    let in_window = |c: &Cusp<GoldenRational>| match (c, window) {
        (Cusp::Infinity, _) | (_, None) => true,
        (Cusp::Finite(x), Some((lo, hi))) => {
            let lo = GoldenRational::from_int(&BigInt::from(lo));
            let hi = GoldenRational::from_int(&BigInt::from(hi));
            lo <= *x && *x <= hi
        }
    };
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (g, _) in &ball {
        let h = g.apply_horoball(&top);
        if in_window(h.tangent()) && seen.insert(h.clone()) {
            entries.push((h, canonical_frame(g)));
        }
    }
    let base = hecke_base_cusps();
    Ok(HoroPacking::assemble(
        entries,
        |lookup, _| {
            ball.iter()
                .filter_map(|(g, _)| {
                    base.iter()
                        .map(|c| lookup.get(&g.apply_cusp(c)).copied())
                        .collect::<Option<Vec<usize>>>()
                })
                .collect()
        },
        PackingSource::Hecke { max_word_len, window },
    ))
}

/// Number field generated by the finite tangent points of a packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CuspField {
    Rational,
    Golden,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspFieldReport {
    pub field: CuspField,
    pub rational_points: usize,
    pub irrational_points: usize,
}

/// Classifies the cusp point set: `Q` when every finite tangent point is
/// rational, `Q(λ)` as soon as one is not.
pub fn cusp_field<F: Field>(horoballs: &[Horoball<F>]) -> Result<CuspFieldReport, TilingError> {
    if horoballs.is_empty() {
        return Err(TilingError::EmptyPacking);
    }
    let (mut rational, mut irrational) = (0, 0);
    for h in horoballs {
        if let Cusp::Finite(x) = h.tangent() {
            if x.is_rational() {
                rational += 1;
            } else {
                irrational += 1;
            }
        }
    }
    let field = if irrational > 0 { CuspField::Golden } else { CuspField::Rational };
    Ok(CuspFieldReport { field, rational_points: rational, irrational_points: irrational })
}
