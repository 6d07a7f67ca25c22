use std::collections::BTreeSet;

use super::TilingError;
use crate::geom::FloatMobius;

/// A binary tiling whose cores tile the whole plane.
///
/// Strip `j` is the region `2^j ≤ y ≤ 2^(j+1)`, filled by cores of width
/// `2^(j+1)` whose left edges are `≡ offset(j) (mod 2^(j+1))`. Strips below
/// `y = 1` are forced. Each strip above has two fillings compatible with the
/// strip below it; choice bit `j` picks the one shifted by `2^(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateTiling {
    choices: Vec<bool>,
    depth: usize,
}

/// One core: strip `j` and left edge `left`; its corners are
/// `left + 2^j i`, `left + 2^(j+1) + 2^j i` and the same at twice the height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Core {
    pub strip: i32,
    pub left: i64,
}

impl Core {
    pub fn width(&self) -> f64 {
        2f64.powi(self.strip + 1)
    }

    /// Maps the standard core `i, i + 2, 2i, 2i + 2` onto this one.
    pub fn isometry(&self) -> FloatMobius {
        FloatMobius::affine(2f64.powi(self.strip), self.left as f64)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let h = 2f64.powi(self.strip);
        let l = self.left as f64;
        y > h && y < 2.0 * h && x > l && x < l + self.width()
    }
}

impl DegenerateTiling {
    /// Uses the first `depth` choice bits.
    pub fn build(choices: &[bool], depth: usize) -> Result<Self, TilingError> {
        if depth > choices.len() {
            return Err(TilingError::BadParameter(format!(
                "depth {depth} exceeds the {} choices given",
                choices.len()
            )));
        }
        if depth > 60 {
            return Err(TilingError::BadParameter("depth above 60".into()));
        }
        Ok(DegenerateTiling { choices: choices[..depth].to_vec(), depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn choices(&self) -> &[bool] {
        &self.choices
    }

    /// Highest strip index whose filling is determined.
    pub fn top_strip(&self) -> i32 {
        self.depth as i32
    }

    /// Left-edge offset of strip `j`, for `j ≤ depth`.
    pub fn offset(&self, j: i32) -> i64 {
        assert!(j <= self.top_strip(), "strip {j} above depth {}", self.depth);
        (0..j.max(0)).filter(|&i| self.choices[i as usize]).map(|i| 1i64 << (i + 1)).sum()
    }

    /// Cores of strips `lo..=hi` meeting the horizontal interval `[x0, x1]`.
    /// Strips below 0 have integer left edges only down to `lo ≥ -1`; deeper
    /// strips would need fractional edges and are rejected.
    pub fn cores_in_window(&self, lo: i32, hi: i32, x0: i64, x1: i64) -> Result<Vec<Core>, TilingError> {
        if lo < -1 || hi > self.top_strip() || lo > hi || x0 > x1 {
            return Err(TilingError::BadParameter(format!(
                "strips {lo}..={hi} outside -1..={}",
                self.top_strip()
            )));
        }
        let mut out = Vec::new();
        for j in lo..=hi {
            let w = 1i64 << (j + 1);
            let o = if j < 0 { 0 } else { self.offset(j) };
            let first = x0 - (x0 - o).rem_euclid(w);
            let mut left = first;
            while left <= x1 {
                if left + w > x0 {
                    out.push(Core { strip: j, left });
                }
                left += w;
            }
        }
        Ok(out)
    }

    /// Checks that the image of every core in strips `lo..=hi` over the
    /// window under `z -> scale z + shift` is again a core of the tiling.
    /// `scale` is a power of two so strips map to strips.
    pub fn is_invariant_under(&self, log2_scale: i32, shift: i64, lo: i32, hi: i32, x0: i64, x1: i64) -> Result<bool, TilingError> {
        if hi + log2_scale > self.top_strip() || lo + log2_scale < -1 {
            return Err(TilingError::BadParameter("image strips leave the determined range".into()));
        }
        let cores = self.cores_in_window(lo, hi, x0, x1)?;
        let scale = |x: i64| if log2_scale >= 0 { x << log2_scale } else { x >> -log2_scale };
        let (y0, y1) = (scale(x0) + shift, scale(x1) + shift);
        let target: BTreeSet<Core> = self
            .cores_in_window(lo + log2_scale, hi + log2_scale, y0.min(y1) - 1, y0.max(y1) + 1)?
            .into_iter()
            .collect();
        Ok(cores.iter().all(|c| target.contains(&Core { strip: c.strip + log2_scale, left: scale(c.left) + shift })))
    }

    /// Counts, for each point of a grid strictly inside the window
    /// `[x0, x1] × [2^lo, 2^(hi+1)]`, the cores containing it; a tiling gives
    /// exactly one everywhere off the core boundaries.
    pub fn cover_counts(&self, lo: i32, hi: i32, x0: i64, x1: i64, grid: usize) -> Result<Vec<usize>, TilingError> {
        let cores = self.cores_in_window(lo, hi, x0, x1)?;
        let (ylo, yhi) = (2f64.powi(lo).ln(), 2f64.powi(hi + 1).ln());
        let mut counts = Vec::with_capacity(grid * grid);
        for a in 0..grid {
            // irrational-ish fractions keep the grid off core edges
            let x = x0 as f64 + (x1 - x0) as f64 * ((a as f64 + 0.5 + 1e-7 * std::f64::consts::PI) / grid as f64);
            for b in 0..grid {
                let y = (ylo + (yhi - ylo) * ((b as f64 + 0.5 + 1e-7 * std::f64::consts::E) / grid as f64)).exp();
                counts.push(cores.iter().filter(|c| c.contains(x, y)).count());
            }
        }
        Ok(counts)
    }
}
