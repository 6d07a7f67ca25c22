use serde::{Deserialize, Serialize};

use super::word::{Gen, Word};
use super::TreeError;
use crate::algebra::{AlgebraError, DyadicRes};

/// Indices `(a, b)` left and right of an outgoing edge, with fixed sum `w`.
/// The third index `c = w - a - b` is always derived.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LabelPair {
    a: DyadicRes,
    b: DyadicRes,
    w: DyadicRes,
}

fn same_precision(xs: &[DyadicRes]) -> Result<(), AlgebraError> {
    let n = xs[0].precision();
    match xs.iter().find(|x| x.precision() != n) {
        Some(x) => Err(AlgebraError::PrecisionMismatch {
            left: n,
            right: x.precision(),
        }),
        None => Ok(()),
    }
}

impl LabelPair {
    pub fn new(a: DyadicRes, b: DyadicRes, w: DyadicRes) -> Result<Self, AlgebraError> {
        same_precision(&[a, b, w])?;
        Ok(LabelPair { a, b, w })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(a: i128, b: i128, w: i128, precision: u32) -> Result<Self, AlgebraError> {
        LabelPair::new(
            DyadicRes::new(a, precision)?,
            DyadicRes::new(b, precision)?,
            DyadicRes::new(w, precision)?,
        )
    }

    pub fn a(&self) -> DyadicRes {
        self.a
    }
    pub fn b(&self) -> DyadicRes {
        self.b
    }
    pub fn c(&self) -> DyadicRes {
        self.w - self.a - self.b
    }
    pub fn w(&self) -> DyadicRes {
        self.w
    }
    pub fn precision(&self) -> u32 {
        self.w.precision()
    }

    /// Adds `e` to every index, so the fixed sum grows by `3e`.
    pub fn shift(&self, e: DyadicRes) -> Result<Self, AlgebraError> {
        same_precision(&[self.w, e])?;
        Ok(LabelPair {
            a: self.a + e,
            b: self.b + e,
            w: self.w + e.scale(3),
        })
    }

    fn with(&self, a: DyadicRes, b: DyadicRes) -> Self {
        LabelPair { a, b, w: self.w }
    }

    /// One generator letter. Only `C` and `L` act on pairs.
    pub fn apply(&self, g: Gen, inverse: bool) -> Result<Self, TreeError> {
        let (a, b, c) = (self.a, self.b, self.c());
        Ok(match (g, inverse) {
            (Gen::L, false) => self.with(a.add_int(1), c),
            // solved from L: (a, b) -> (a + 1, c)
            (Gen::L, true) => self.with(a.add_int(-1), c.add_int(1)),
            (Gen::C, false) => self.with(c, a),
            (Gen::C, true) => self.with(b, c),
            (g, _) => return Err(TreeError::ForeignSymbol { symbol: g.symbol(), context: "triangular action" }),
        })
    }
}

pub fn act_l_tri(s: &LabelPair) -> LabelPair {
    s.apply(Gen::L, false).expect("L acts on pairs")
}

pub fn act_c_tri(s: &LabelPair) -> LabelPair {
    s.apply(Gen::C, false).expect("C acts on pairs")
}

/// Action of a word in `C`, `L` on a pair; the rightmost letter acts first.
pub fn act_word_tri(word: &Word, s: &LabelPair) -> Result<LabelPair, TreeError> {
    for &(g, _) in word.syllables() {
        if !matches!(g, Gen::C | Gen::L) {
            return Err(TreeError::ForeignSymbol { symbol: g.symbol(), context: "triangular action" });
        }
    }
    word.letters()
        .rev()
        .try_fold(*s, |acc, (g, inv)| acc.apply(g, inv))
}

/// Indices `(a, b, c, d)` around a pentagon with fixed sum `w` and rule
/// parameter `k`; `e = w - a - b - c - d` is derived.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LabelQuad {
    a: DyadicRes,
    b: DyadicRes,
    c: DyadicRes,
    d: DyadicRes,
    w: DyadicRes,
    k: i64,
}

impl LabelQuad {
    pub fn new(
        [a, b, c, d]: [DyadicRes; 4],
        w: DyadicRes,
        k: i64,
    ) -> Result<Self, AlgebraError> {
        same_precision(&[a, b, c, d, w])?;
        Ok(LabelQuad { a, b, c, d, w, k })
    }

    pub fn from_ints(abcd: [i128; 4], w: i128, k: i64, precision: u32) -> Result<Self, AlgebraError> {
        let r = |v| DyadicRes::new(v, precision);
        LabelQuad::new([r(abcd[0])?, r(abcd[1])?, r(abcd[2])?, r(abcd[3])?], r(w)?, k)
    }

    pub fn abcd(&self) -> [DyadicRes; 4] {
        [self.a, self.b, self.c, self.d]
    }
    pub fn e(&self) -> DyadicRes {
        self.w - self.a - self.b - self.c - self.d
    }
    pub fn w(&self) -> DyadicRes {
        self.w
    }
    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn precision(&self) -> u32 {
        self.w.precision()
    }

    /// Adds `e` to all five indices, so the fixed sum grows by `5e`.
    pub fn shift(&self, e: DyadicRes) -> Result<Self, AlgebraError> {
        same_precision(&[self.w, e])?;
        Ok(LabelQuad {
            a: self.a + e,
            b: self.b + e,
            c: self.c + e,
            d: self.d + e,
            w: self.w + e.scale(5),
            k: self.k,
        })
    }

    fn with(&self, [a, b, c, d]: [DyadicRes; 4]) -> Self {
        LabelQuad { a, b, c, d, ..*self }
    }

    /// One generator letter. Only `P` and `L` act on quads.
    pub fn apply(&self, g: Gen, inverse: bool) -> Result<Self, TreeError> {
        let (a, b, c, d, e, k) = (self.a, self.b, self.c, self.d, self.e(), self.k);
        Ok(match (g, inverse) {
            (Gen::L, false) => self.with([a.add_int(1), e.add_int(k), d, c.add_int(-k)]),
            // solved from L: (a, b, c, d) -> (a + 1, e + k, d, c - k)
            (Gen::L, true) => self.with([a.add_int(-1), e.add_int(1), d.add_int(k), c]),
            (Gen::P, false) => self.with([e, a, b, c]),
            (Gen::P, true) => self.with([b, c, d, e]),
            (g, _) => return Err(TreeError::ForeignSymbol { symbol: g.symbol(), context: "pentagonal action" }),
        })
    }
}

pub fn act_l_pent(s: &LabelQuad) -> LabelQuad {
    s.apply(Gen::L, false).expect("L acts on quads")
}

pub fn act_p_pent(s: &LabelQuad) -> LabelQuad {
    s.apply(Gen::P, false).expect("P acts on quads")
}

/// Action of a word in `P`, `L` on a quad; the rightmost letter acts first.
pub fn act_word_pent(word: &Word, s: &LabelQuad) -> Result<LabelQuad, TreeError> {
    for &(g, _) in word.syllables() {
        if !matches!(g, Gen::P | Gen::L) {
            return Err(TreeError::ForeignSymbol { symbol: g.symbol(), context: "pentagonal action" });
        }
    }
    word.letters()
        .rev()
        .try_fold(*s, |acc, (g, inv)| acc.apply(g, inv))
}

/// Determinant of the translation lattice spanned by the actions of
/// `L²`, `PL²P⁴`, `P²L²P³`, `P³L²P²`, checked against its closed form.
pub fn pent_lattice_det(k: i64) -> i128 {
    let k = k as i128;
    let m = [
        [2, k - 1, -k, -k],
        [k - 1, 2, k - 1, -k],
        [-k, k - 1, 2, k - 1],
        [-k, -k, k - 1, 2],
    ];
    let det = leibniz_det4(&m);
    let closed = 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1);
    assert_eq!(det, closed, "lattice determinant disagrees with closed form at k = {k}");
    det
}

fn leibniz_det4(m: &[[i128; 4]; 4]) -> i128 {
    let mut total = 0;
    let mut perm = [0usize, 1, 2, 3];
    // Heap's algorithm tracks the parity of each swap.
    let mut c = [0usize; 4];
    let mut sign = 1i128;
    let term = |p: &[usize; 4]| (0..4).map(|i| m[i][p[i]]).product::<i128>();
    total += sign * term(&perm);
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            total += sign * term(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}
