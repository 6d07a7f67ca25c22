use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::degenerate::DegenerateTiling;
use super::labels::{AnyApprox, LabeledApprox, ModelScalar};
use super::packing::PackingScalar;
use super::TilingError;
use crate::algebra::{DyadicRes, GoldenInt};
use crate::geom::{FloatMobius, HPoint, Isometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prong {
    Left,
    Right,
}

/// One core placed inside a horoball.
///
/// In the frame of the host horoball (host at `y ≥ 1`) the core of row `m`
/// spans heights `2^m..2^(m+1)` and the `2^(m+1)` cell positions starting
/// at `left`, each position being one translation unit wide. `isometry`
/// maps the model core with vertices `i, i + 2u, 2i, 2i + 2u` onto it, where
/// `u` is the translation unit (1 for Ford, λ for Hecke).
#[derive(Clone, Debug, PartialEq)]
pub struct TilePlacement {
    pub host: usize,
    pub row: u32,
    pub left: i64,
    /// Low `row + 1` bits of the index value at the position `left`.
    pub parity: u64,
    pub isometry: FloatMobius,
}

impl TilePlacement {
    pub fn width(&self) -> i64 {
        1 << (self.row + 1)
    }

    /// Which half of the core lies over cell position `n`.
    pub fn prong_at(&self, n: i64) -> Option<Prong> {
        let off = n - self.left;
        let half = self.width() / 2;
        match off {
            o if (0..half).contains(&o) => Some(Prong::Left),
            o if (half..2 * half).contains(&o) => Some(Prong::Right),
            _ => None,
        }
    }

    /// Combinatorial key: equal keys mean equal placements.
    pub fn key(&self) -> (usize, u32, i64) {
        (self.host, self.row, self.left)
    }

    /// Vertices of the placed core in the upper half-plane, counterclockwise
    /// from the lower left corner of the model core.
    pub fn vertices(&self, unit: f64) -> [HPoint; 4] {
        [(0.0, 1.0), (2.0 * unit, 1.0), (2.0 * unit, 2.0), (0.0, 2.0)].map(|(x, y)| self.isometry.apply(&HPoint::new(x, y)))
    }
}

/// Left edge, in cell positions, of the row-`m` core over position `n`,
/// for a horoball whose value at position 0 is `index`.
pub fn tile_left(index: DyadicRes, n: i64, row: u32) -> i64 {
    let v = index.add_int(n).value();
    let mask = (1u64 << (row + 1)) - 1;
    n - (v & mask) as i64
}

/// The cores in rows `0..rows` of the horoball with frame `frame` and index
/// `index` that lie over the cell positions `positions`.
///
/// Bit `m` of the value at a position says whether the row `m - 1` core
/// there is the left (0) or right (1) child of its row `m` parent; bit 0
/// picks the prong of the row 0 core.
pub fn layer_tiles<S: PackingScalar>(
    host: usize,
    frame: &Isometry<S>,
    index: DyadicRes,
    rows: u32,
    positions: std::ops::RangeInclusive<i64>,
) -> Result<Vec<TilePlacement>, TilingError> {
    if rows > index.precision() {
        return Err(TilingError::BadParameter(format!(
            "{rows} rows need {rows} bits but the index has {}",
            index.precision()
        )));
    }
    let unit = S::unit().as_f64();
    let frame = frame.to_float();
    let mut out = Vec::new();
    for row in 0..rows {
        let mut seen = BTreeSet::new();
        for n in positions.clone() {
            let left = tile_left(index, n, row);
            if seen.insert(left) {
                let scale = (1u64 << row) as f64;
                let isometry = frame.compose(&FloatMobius::affine(scale, left as f64 * unit));
                let mask = (1u64 << (row + 1)) - 1;
                out.push(TilePlacement {
                    host,
                    row,
                    left,
                    parity: index.add_int(left).value() & mask,
                    isometry,
                });
            }
        }
    }
    Ok(out)
}

impl<S: ModelScalar> LabeledApprox<S> {
    /// Range of cell positions around a horoball covered by labelled cells.
    pub fn positions(&self, horoball: usize) -> Option<std::ops::RangeInclusive<i64>> {
        let cells = self.packing().cells();
        let ps: Vec<i64> = (0..cells.len())
            .filter(|&c| self.is_labeled(c) && cells[c].contains(&horoball))
            .map(|c| self.packing().position(c, horoball))
            .collect();
        Some(*ps.iter().min()?..=*ps.iter().max()?)
    }

    /// Rows `0..rows` of cores over the labelled cells around one horoball.
    pub fn layers(&self, horoball: usize, rows: u32) -> Result<Vec<TilePlacement>, TilingError> {
        let (Some(index), Some(positions)) = (self.indices()[horoball], self.positions(horoball)) else {
            return Ok(Vec::new());
        };
        layer_tiles(horoball, self.packing().frame(horoball), index, rows, positions)
    }

    /// Keeps the `rows` horocyclic rows nearest every horoball boundary.
    pub fn theta(&self, rows: u32) -> Result<Truncated, TilingError> {
        if rows == 0 {
            return Err(TilingError::BadParameter("truncation needs at least one row".into()));
        }
        let mut tiles = Vec::new();
        for h in 0..self.packing().len() {
            tiles.extend(self.layers(h, rows)?);
        }
        Ok(Truncated { rows, tiles })
    }
}

/// The packing left by a truncation: finitely many rows of cores per
/// horoball, or nothing at all.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncated {
    pub rows: u32,
    pub tiles: Vec<TilePlacement>,
}

impl Truncated {
    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Sorted combinatorial keys; two truncations of the same packing are
    /// congruent when their key sets agree.
    pub fn keys(&self) -> Vec<(usize, u32, i64)> {
        let mut k: Vec<_> = self.tiles.iter().map(TilePlacement::key).collect();
        k.sort_unstable();
        k
    }
}

/// Any tiling the crate can build.
#[derive(Clone, Debug)]
pub enum Tiling {
    Labeled(AnyApprox),
    Degenerate(DegenerateTiling),
}

impl From<LabeledApprox<BigInt>> for Tiling {
    fn from(t: LabeledApprox<BigInt>) -> Self {
        Tiling::Labeled(AnyApprox::Triangular(t))
    }
}

impl From<LabeledApprox<GoldenInt>> for Tiling {
    fn from(t: LabeledApprox<GoldenInt>) -> Self {
        Tiling::Labeled(AnyApprox::Pentagonal(t))
    }
}

impl From<DegenerateTiling> for Tiling {
    fn from(t: DegenerateTiling) -> Self {
        Tiling::Degenerate(t)
    }
}

impl Tiling {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Tiling::Degenerate(_))
    }
}

/// Truncation to `rows` rows; degenerate tilings have no horoballs and
/// truncate to the empty packing.
pub fn theta_n(t: &Tiling, rows: u32) -> Result<Truncated, TilingError> {
    match t {
        Tiling::Labeled(AnyApprox::Triangular(t)) => t.theta(rows),
        Tiling::Labeled(AnyApprox::Pentagonal(t)) => t.theta(rows),
        Tiling::Degenerate(_) => {
            if rows == 0 {
                return Err(TilingError::BadParameter("truncation needs at least one row".into()));
            }
            Ok(Truncated { rows, tiles: Vec::new() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::enumerate_ford;

    fn d(v: i128) -> DyadicRes {
        DyadicRes::new(v, 8).unwrap()
    }

    #[test]
    fn zero_index_reads_left_prongs() {
        let tiles = layer_tiles(0, &Isometry::<BigInt>::identity(), d(0), 2, 0..=0).unwrap();
        assert_eq!(tiles.len(), 2);
        assert_eq!(tiles[0].prong_at(0), Some(Prong::Left));
        // the row 0 core [0, 2] is the left half of its parent [0, 4]
        assert_eq!((tiles[1].row, tiles[1].left), (1, 0));
        assert_eq!(tiles[1].prong_at(tiles[0].left), Some(Prong::Left));
    }

    #[test]
    fn odd_index_reads_right_prong() {
        let tiles = layer_tiles(0, &Isometry::<BigInt>::identity(), d(1), 1, 0..=0).unwrap();
        assert_eq!(tiles[0].left, -1);
        assert_eq!(tiles[0].prong_at(0), Some(Prong::Right));
    }

    #[test]
    fn standard_core_vertices() {
        let t = &layer_tiles(0, &Isometry::<BigInt>::identity(), d(0), 1, 0..=0).unwrap()[0];
        let v = t.vertices(1.0);
        let want = [(0.0, 1.0), (2.0, 1.0), (2.0, 2.0), (0.0, 2.0)];
        for (p, (x, y)) in v.iter().zip(want) {
            let (px, py) = p.xy().unwrap();
            assert!((px - x).abs() < 1e-12 && (py - y).abs() < 1e-12);
        }
    }

    #[test]
    fn adding_power_of_two_keeps_lower_rows() {
        let id = Isometry::<BigInt>::identity();
        for m in 0..6u32 {
            for v in 0..64 {
                let a = layer_tiles(0, &id, d(v), 7, -5..=9).unwrap();
                let b = layer_tiles(0, &id, d(v + (1 << m)), 7, -5..=9).unwrap();
                let low = |ts: &[TilePlacement]| ts.iter().filter(|t| t.row < m).map(|t| t.key()).collect::<Vec<_>>();
                assert_eq!(low(&a), low(&b));
                let row_m = |ts: &[TilePlacement]| ts.iter().filter(|t| t.row == m).map(|t| t.key()).collect::<Vec<_>>();
                assert_ne!(row_m(&a), row_m(&b));
            }
        }
    }

    #[test]
    fn rows_partition_the_positions() {
        let id = Isometry::<BigInt>::identity();
        let tiles = layer_tiles(0, &id, d(77), 5, 0..=63).unwrap();
        for row in 0..5 {
            let mut lefts: Vec<i64> = tiles.iter().filter(|t| t.row == row).map(|t| t.left).collect();
            lefts.sort();
            for w in lefts.windows(2) {
                assert_eq!(w[1] - w[0], 1 << (row + 1));
            }
            // each row covers the 64 positions with cores of width 2^(row+1)
            let covered = lefts.len() as i64 * (1 << (row + 1));
            assert!(covered >= 64 && covered <= 64 + 2 * (1 << (row + 1)));
        }
        assert!(layer_tiles(0, &id, d(0), 9, 0..=0).is_err());
    }

    #[test]
    fn rows_are_nested_in_their_parents() {
        let id = Isometry::<BigInt>::identity();
        let tiles = layer_tiles(0, &id, d(45), 6, -20..=20).unwrap();
        for child in tiles.iter().filter(|t| t.row < 5) {
            let parent = tiles
                .iter()
                .find(|p| p.row == child.row + 1 && p.prong_at(child.left).is_some())
                .unwrap();
            let c_end = child.left + child.width();
            assert!(parent.left <= child.left && c_end <= parent.left + parent.width());
        }
    }

    #[test]
    fn truncation_counts_and_locality() {
        let p = enumerate_ford(12, (-4, 4)).unwrap();
        let t = LabeledApprox::assign(p.clone(), d(0), 0, &[d(0), d(0)]).unwrap();
        let th = t.theta(1).unwrap();
        assert!(th.tiles.iter().all(|x| x.row == 0));
        // one boundary core per two cells around every horoball
        for h in 0..p.len() {
            let Some(span) = t.positions(h) else { continue };
            let cells = span.count();
            let cores = th.tiles.iter().filter(|x| x.host == h).count();
            assert!(cores == cells.div_ceil(2) || cores == cells / 2 + 1, "{cells} {cores}");
        }
        // agreeing mod 2^N gives the same truncation
        let shifted = t.conjugate_shift(d(8)).unwrap();
        assert_eq!(t.theta(3).unwrap().keys(), shifted.theta(3).unwrap().keys());
        assert_ne!(t.theta(4).unwrap().keys(), shifted.theta(4).unwrap().keys());
    }
}
