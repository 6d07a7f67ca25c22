//! The subgroup `E = ⟨L², R²⟩` of `PSL(2, Z)`: exponent sums, freeness,
//! the label-fixing kernel, and the index of `E`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::groups::{matrix_of_word, MatrixGroup, Modular};
use super::labels::{act_word_tri, LabelPair};
use super::word::{Gen, Word};
use super::TreeError;
use crate::algebra::DyadicRes;
use crate::geom::Isometry;

/// Label action `(a, b) -> M (a, b) + u w + t` with the fixed sum `w` kept
/// formal, so the map is exact over `Z` and valid at every precision.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct AffineLabelMap {
    pub linear: [[i64; 2]; 2],
    pub w_coeff: [i64; 2],
    pub translation: [i64; 2],
}

impl AffineLabelMap {
    pub const IDENTITY: AffineLabelMap = AffineLabelMap {
        linear: [[1, 0], [0, 1]],
        w_coeff: [0, 0],
        translation: [0, 0],
    };

    pub fn generator(g: Gen, inverse: bool) -> Result<Self, TreeError> {
        let m = |linear, w_coeff, translation| AffineLabelMap { linear, w_coeff, translation };
        Ok(match (g, inverse) {
            // (a + 1, w - a - b)
            (Gen::L, false) => m([[1, 0], [-1, -1]], [0, 1], [1, 0]),
            // (a - 1, w - a + 1 - b)
            (Gen::L, true) => m([[1, 0], [-1, -1]], [0, 1], [-1, 1]),
            // (w - a - b, a)
            (Gen::C, false) => m([[-1, -1], [1, 0]], [1, 0], [0, 0]),
            // (b, w - a - b)
            (Gen::C, true) => m([[0, 1], [-1, -1]], [0, 1], [0, 0]),
            (g, _) => return Err(TreeError::ForeignSymbol { symbol: g.symbol(), context: "triangular action" }),
        })
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &AffineLabelMap) -> AffineLabelMap {
        let m = &self.linear;
        let mv = |v: [i64; 2]| [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
        let o = &other.linear;
        let linear = [
            [m[0][0] * o[0][0] + m[0][1] * o[1][0], m[0][0] * o[0][1] + m[0][1] * o[1][1]],
            [m[1][0] * o[0][0] + m[1][1] * o[1][0], m[1][0] * o[0][1] + m[1][1] * o[1][1]],
        ];
        let (wu, tt) = (mv(other.w_coeff), mv(other.translation));
        AffineLabelMap {
            linear,
            w_coeff: [wu[0] + self.w_coeff[0], wu[1] + self.w_coeff[1]],
            translation: [tt[0] + self.translation[0], tt[1] + self.translation[1]],
        }
    }

    pub fn of_word(word: &Word) -> Result<Self, TreeError> {
        word.letters()
            .try_fold(AffineLabelMap::IDENTITY, |acc, (g, inv)| {
                Ok(acc.compose(&AffineLabelMap::generator(g, inv)?))
            })
    }

    pub fn apply(&self, s: &LabelPair) -> LabelPair {
        let (a, b, w) = (s.a(), s.b(), s.w());
        let row = |i: usize| {
            (a.scale(self.linear[i][0]) + b.scale(self.linear[i][1]) + w.scale(self.w_coeff[i]))
                .add_int(self.translation[i])
        };
        LabelPair::new(row(0), row(1), w).expect("uniform precision")
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineLabelMap::IDENTITY
    }

    /// The translation vector when the map is a pure translation independent of `w`.
    pub fn pure_translation(&self) -> Option<[i64; 2]> {
        (self.linear == [[1, 0], [0, 1]] && self.w_coeff == [0, 0]).then_some(self.translation)
    }
}

/// Membership in the lattice spanned by `(2, -1)` and `(1, -2)`, the label
/// translations of `L²` and `R²`. The lattice has index 3 in `Z²`.
pub fn in_translation_lattice([k, l]: [i64; 2]) -> bool {
    (2 * k + l).rem_euclid(3) == 0
}

/// Exponent sums of `L` and `R` in a word over `L^{±2}`, `R^{±2}`.
/// The word is a symmetry of every labelling iff both sums vanish.
pub fn exponent_sums(word: &Word) -> Result<(i64, i64), TreeError> {
    let (mut sl, mut sr) = (0, 0);
    for &(g, n) in word.syllables() {
        if n % 2 != 0 {
            return Err(TreeError::NotSanovWord(word.to_string()));
        }
        match g {
            Gen::L => sl += n,
            Gen::R => sr += n,
            _ => return Err(TreeError::NotSanovWord(word.to_string())),
        }
    }
    Ok((sl, sr))
}

/// Letters of the free group on `A = L²`, `B = R²`.
const SANOV_LETTERS: [(Gen, i64); 4] = [(Gen::L, 2), (Gen::L, -2), (Gen::R, 2), (Gen::R, -2)];

fn inverse_letter(i: usize) -> usize {
    i ^ 1
}

fn letters_word(idx: &[usize]) -> Word {
    Word::from_syllables(idx.iter().map(|&i| SANOV_LETTERS[i]))
}

/// Visits every nonempty reduced word of free length `1..=max_len`, carrying
/// a state updated by right multiplication with each letter.
fn for_each_reduced<T: Clone + Send + Sync, R: Send>(
    max_len: u32,
    start: T,
    push: &(dyn Fn(&T, usize) -> T + Sync),
    visit: &(dyn Fn(&[usize], &T) -> R + Sync),
    merge: &(dyn Fn(R, R) -> R + Sync),
    zero: &(dyn Fn() -> R + Sync),
) -> R {
    fn rec<T: Clone, R>(
        path: &mut Vec<usize>,
        state: &T,
        max_len: u32,
        push: &dyn Fn(&T, usize) -> T,
        visit: &dyn Fn(&[usize], &T) -> R,
        merge: &dyn Fn(R, R) -> R,
        acc: R,
    ) -> R {
        let mut acc = merge(acc, visit(path, state));
        if path.len() as u32 == max_len {
            return acc;
        }
        for i in 0..4 {
            if path.last().is_some_and(|&j| inverse_letter(j) == i) {
                continue;
            }
            let next = push(state, i);
            path.push(i);
            acc = rec(path, &next, max_len, push, visit, merge, acc);
            path.pop();
        }
        acc
    }
    if max_len == 0 {
        return zero();
    }
    (0..4)
        .into_par_iter()
        .map(|i| {
            let mut path = vec![i];
            rec(&mut path, &push(&start, i), max_len, push, visit, merge, zero())
        })
        .reduce(zero, merge)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeCheckReport {
    pub max_len: u32,
    pub words_checked: u64,
    /// Nonempty reduced words whose matrix is the identity.
    pub violations: Vec<String>,
}

impl FreeCheckReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that no nonempty reduced word in `L^{±2}`, `R^{±2}` of free length
/// at most `max_len` is the identity matrix.
pub fn free_check(max_len: u32) -> Result<FreeCheckReport, TreeError> {
    if max_len < 2 {
        return Err(TreeError::BadParameter(format!("max_len must be at least 2, got {max_len}")));
    }
    let mats: Vec<Isometry<BigInt>> = SANOV_LETTERS
        .iter()
        .map(|&(g, n)| matrix_of_word::<Modular>(&Word::power(g, n)))
        .collect::<Result<_, _>>()?;
    let (count, violations) = for_each_reduced(
        max_len,
        Isometry::<BigInt>::identity(),
        &|m, i| m.compose(&mats[i]),
        &|path, m| {
            if m.is_identity() {
                (1u64, vec![letters_word(path).to_string()])
            } else {
                (1, vec![])
            }
        },
        &|(c1, mut v1), (c2, v2)| {
            v1.extend(v2);
            (c1 + c2, v1)
        },
        &|| (0, vec![]),
    );
    Ok(FreeCheckReport { max_len, words_checked: count, violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelCheckReport {
    pub max_len: u32,
    pub precision: u32,
    pub zero_sum_words: u64,
    pub nonzero_sum_words: u64,
    /// Zero-sum words that move some label pair.
    pub kernel_failures: Vec<String>,
    /// Nonzero-sum words that fix every label pair.
    pub non_kernel_failures: Vec<String>,
}

impl KernelCheckReport {
    pub fn pass(&self) -> bool {
        self.kernel_failures.is_empty() && self.non_kernel_failures.is_empty()
    }
}

/// States `(a, b, w)` on which an affine label map is determined.
fn affine_basis(precision: u32) -> Vec<LabelPair> {
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        .into_iter()
        .map(|(a, b, w)| LabelPair::from_ints(a, b, w, precision).expect("valid precision"))
        .collect()
}

/// Checks that a reduced word in `L^{±2}`, `R^{±2}` fixes all label pairs
/// modulo `2^precision` exactly when both exponent sums vanish.
///
/// Each word is run through the generator actions on an affine basis of
/// label states; since the actions are affine, fixing the basis is the same
/// as fixing every pair for every `w`. The symbolic map is checked too.
pub fn kernel_check(max_len: u32, precision: u32) -> Result<KernelCheckReport, TreeError> {
    let basis = affine_basis(precision);
    let expanded: Vec<Word> = SANOV_LETTERS
        .iter()
        .map(|&(g, n)| Word::power(g, n).expand_r())
        .collect();
    let maps: Vec<AffineLabelMap> = expanded
        .iter()
        .map(AffineLabelMap::of_word)
        .collect::<Result<_, _>>()?;
    #[derive(Clone)]
    struct St {
        map: AffineLabelMap,
        sums: (i64, i64),
    }
    let start = St { map: AffineLabelMap::IDENTITY, sums: (0, 0) };
    type Acc = (u64, u64, Vec<String>, Vec<String>);
    let result: Acc = for_each_reduced(
        max_len,
        start,
        &|s, i| {
            let (g, n) = SANOV_LETTERS[i];
            let sums = match g {
                Gen::L => (s.sums.0 + n, s.sums.1),
                _ => (s.sums.0, s.sums.1 + n),
            };
            St { map: s.map.compose(&maps[i]), sums }
        },
        &|path, s| {
            let word = || Word::from_syllables(path.iter().map(|&i| SANOV_LETTERS[i]));
            let mut out: Acc = (0, 0, vec![], vec![]);
            if s.sums == (0, 0) {
                out.0 = 1;
                let letters = Word::from_syllables(
                    path.iter().flat_map(|&i| expanded[i].syllables().to_vec()),
                );
                let fixes_all = basis
                    .iter()
                    .all(|p| act_word_tri(&letters, p).expect("C and L only") == *p);
                if !(fixes_all && s.map.is_identity()) {
                    out.2.push(word().to_string());
                }
            } else {
                out.1 = 1;
                if basis.iter().all(|p| s.map.apply(p) == *p) {
                    out.3.push(word().to_string());
                }
            }
            out
        },
        &|mut x, y| {
            x.0 += y.0;
            x.1 += y.1;
            x.2.extend(y.2);
            x.3.extend(y.3);
            x
        },
        &|| (0, 0, vec![], vec![]),
    );
    Ok(KernelCheckReport {
        max_len,
        precision,
        zero_sum_words: result.0,
        nonzero_sum_words: result.1,
        kernel_failures: result.2,
        non_kernel_failures: result.3,
    })
}

/// Word and affine label action of a group element found by the search.
#[derive(Clone, Debug, Serialize)]
pub struct CosetAnomaly {
    pub word: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub max_len: u32,
    pub elements: usize,
    /// Number of cosets met by elements of word length at most `ℓ`, for `ℓ = 0..=max_len`.
    pub cosets_by_length: Vec<usize>,
    pub index: usize,
    pub stabilized: bool,
    pub anomalies: Vec<CosetAnomaly>,
}

/// Coset of `g` modulo `E`: `g ~ h` iff `g h⁻¹ ∈ E`. Left multiplication by
/// an element of `E` shifts the translation by a lattice vector, so the
/// class is the linear part, the `w` part and the translation mod the lattice.
fn coset_key(f: &AffineLabelMap) -> ([[i64; 2]; 2], [i64; 2], i64) {
    let [k, l] = f.translation;
    (f.linear, f.w_coeff, (2 * k + l).rem_euclid(3))
}

/// Whether `g h⁻¹` lies in `E`, from the label actions of `g` and `h`.
pub fn same_coset(g: &AffineLabelMap, h: &AffineLabelMap) -> bool {
    coset_key(g) == coset_key(h)
}

/// Classifies `PSL(2, Z)` elements of word length at most `max_len` in `C^±`,
/// `L^±` by the coset of `E = ⟨L², R²⟩` they lie in.
///
/// An element is in `E` iff its label action is a pure translation by a
/// lattice vector. The count is stabilized when it has not changed over the
/// second half of the length range.
pub fn coset_index_e(max_len: u32) -> Result<CosetReport, TreeError> {
    if max_len < 8 {
        return Err(TreeError::BadParameter(format!("max_len must be at least 8, got {max_len}")));
    }
    let gens: Vec<(Gen, bool, Isometry<BigInt>, AffineLabelMap)> = [Gen::C, Gen::L]
        .into_iter()
        .flat_map(|g| [(g, false), (g, true)])
        .map(|(g, inv)| {
            let m = Modular::generator(g).expect("modular generator");
            let m = if inv { m.inverse() } else { m };
            Ok((g, inv, m, AffineLabelMap::generator(g, inv)?))
        })
        .collect::<Result<_, TreeError>>()?;
    let mut seen: HashMap<Isometry<BigInt>, (AffineLabelMap, Word)> = HashMap::new();
    let mut keys = HashSet::new();
    let mut anomalies = Vec::new();
    let mut cosets_by_length = Vec::new();
    let id = Isometry::identity();
    seen.insert(id.clone(), (AffineLabelMap::IDENTITY, Word::empty()));
    keys.insert(coset_key(&AffineLabelMap::IDENTITY));
    cosets_by_length.push(keys.len());
    let mut frontier = VecDeque::from([id]);
    for _ in 1..=max_len {
        let mut next = VecDeque::new();
        for m in frontier {
            let (f, word) = seen[&m].clone();
            for (g, inv, gm, gf) in &gens {
                let m2 = m.compose(gm);
                let f2 = f.compose(gf);
                let w2 = word.concat(&Word::power(*g, if *inv { -1 } else { 1 }));
                if let Some((f_old, w_old)) = seen.get(&m2) {
                    if *f_old != f2 {
                        anomalies.push(CosetAnomaly {
                            word: w2.to_string(),
                            description: format!("label action differs from that of {w_old}"),
                        });
                    }
                    continue;
                }
                if let Some(t) = f2.pure_translation() {
                    if !in_translation_lattice(t) {
                        anomalies.push(CosetAnomaly {
                            word: w2.to_string(),
                            description: format!("translation {t:?} outside the lattice"),
                        });
                    }
                }
                keys.insert(coset_key(&f2));
                seen.insert(m2.clone(), (f2, w2));
                next.push_back(m2);
            }
        }
        cosets_by_length.push(keys.len());
        frontier = next;
    }
    let index = keys.len();
    let half = (max_len as usize).div_ceil(2);
    let stabilized = cosets_by_length[half] == index;
    Ok(CosetReport {
        max_len,
        elements: seen.len(),
        cosets_by_length,
        index,
        stabilized,
        anomalies,
    })
}

/// Label action of a word in `C`, `L`, `R`.
pub fn label_map(word: &Word) -> Result<AffineLabelMap, TreeError> {
    AffineLabelMap::of_word(&word.expand_r())
}

/// Convenience: whether a word lies in `E` according to its label action.
pub fn in_e(word: &Word) -> Result<bool, TreeError> {
    let f = label_map(word)?;
    Ok(f.pure_translation().is_some_and(in_translation_lattice))
}

/// Checks a random zero-sum word exhaustively on all pairs at one `w`.
pub fn fixes_all_pairs(word: &Word, w: DyadicRes) -> Result<bool, TreeError> {
    let n = w.precision();
    let letters = word.expand_r();
    for a in 0..1i128 << n {
        for b in 0..1i128 << n {
            let p = LabelPair::new(DyadicRes::new(a, n)?, DyadicRes::new(b, n)?, w)?;
            if act_word_tri(&letters, &p)? != p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
