use num_bigint::BigInt;

use super::word::{Gen, Word};
use super::TreeError;
use crate::algebra::{GoldenInt, Scalar};
use crate::geom::Isometry;

/// A matrix group with named generators.
pub trait MatrixGroup {
    type Entry: Scalar;
    const NAME: &'static str;
    /// Matrix of a generator, or `None` if the symbol is foreign to the group.
    fn generator(g: Gen) -> Option<Isometry<Self::Entry>>;
}

/// `PSL(2, Z)` with `C = [[0,1],[-1,1]]`, `L = [[1,1],[0,1]]` and `R = C²L`.
pub struct Modular;

/// The Hecke group `G5` with `P = [[0,1],[-1,λ]]` and `L = [[1,λ],[0,1]]`.
pub struct Hecke5;

fn int_matrix(a: i64, b: i64, c: i64, d: i64) -> Isometry<BigInt> {
    Isometry::new(a.into(), b.into(), c.into(), d.into()).expect("unimodular generator")
}

impl MatrixGroup for Modular {
    type Entry = BigInt;
    const NAME: &'static str = "PSL(2,Z)";

    fn generator(g: Gen) -> Option<Isometry<BigInt>> {
        match g {
            Gen::C => Some(int_matrix(0, 1, -1, 1)),
            Gen::L => Some(int_matrix(1, 1, 0, 1)),
            Gen::R => {
                let c = int_matrix(0, 1, -1, 1);
                Some(c.compose(&c).compose(&int_matrix(1, 1, 0, 1)))
            }
            Gen::P => None,
        }
    }
}

impl MatrixGroup for Hecke5 {
    type Entry = GoldenInt;
    const NAME: &'static str = "G5";

    fn generator(g: Gen) -> Option<Isometry<GoldenInt>> {
        let (zero, one, lam) = (GoldenInt::integer(0), GoldenInt::integer(1), GoldenInt::lambda());
        match g {
            Gen::P => Some(Isometry::new(zero, one.clone(), -one, lam).expect("unimodular")),
            Gen::L => Some(Isometry::new(one.clone(), lam, zero, one).expect("unimodular")),
            Gen::C | Gen::R => None,
        }
    }
}

/// Exact matrix of a word; `uv` maps to `M(u) M(v)`.
pub fn matrix_of_word<G: MatrixGroup>(word: &Word) -> Result<Isometry<G::Entry>, TreeError> {
    let mut out = Isometry::identity();
    for &(g, n) in word.syllables() {
        let m = G::generator(g).ok_or(TreeError::ForeignSymbol { symbol: g.symbol(), context: G::NAME })?;
        out = out.compose(&m.pow(n));
    }
    Ok(out)
}
