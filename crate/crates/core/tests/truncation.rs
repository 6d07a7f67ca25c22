use horotile::algebra::DyadicRes;
use horotile::tiling::{enumerate_ford, enumerate_hecke, theta_n, DegenerateTiling, LabeledApprox, Tiling};
use horotile::treeaction::{act_word_pent, act_word_tri, Gen, LabelPair, LabelQuad, Word};
use proptest::prelude::*;

const N: u32 = 6;

fn d(v: i128) -> DyadicRes {
    DyadicRes::new(v, N).unwrap()
}

#[test]
fn truncation_sees_only_low_bits() {
    let packing = enumerate_ford(6, (0, 1)).unwrap();
    for rows in 1..=3u32 {
        let m = 1i128 << rows;
        for a in 0..m {
            for b in 0..m {
                for w in 0..m {
                    let t = LabeledApprox::assign(packing.clone(), d(w), 0, &[d(a), d(b)]).unwrap();
                    let lifted =
                        LabeledApprox::assign(packing.clone(), d(w + 3 * m), 0, &[d(a + m), d(b + 2 * m)]).unwrap();
                    let (x, y) = (t.theta(rows).unwrap(), lifted.theta(rows).unwrap());
                    assert!(!x.is_empty());
                    assert_eq!(x.keys(), y.keys(), "rows {rows} base ({a}, {b}) w {w}");
                }
            }
        }
    }
}

#[test]
fn degenerate_and_labelled_are_told_apart() {
    let ford: Tiling = LabeledApprox::assign(enumerate_ford(5, (0, 1)).unwrap(), d(0), 0, &[d(1), d(2)])
        .unwrap()
        .into();
    let hecke: Tiling =
        LabeledApprox::assign(enumerate_hecke(6, None).unwrap(), d(0), 1, &[d(1), d(2), d(3), d(4)]).unwrap().into();
    let degenerate: Tiling = DegenerateTiling::build(&[true, false, true], 3).unwrap().into();
    for rows in 1..=4 {
        assert!(!theta_n(&ford, rows).unwrap().is_empty());
        assert!(!theta_n(&hecke, rows).unwrap().is_empty());
        assert!(theta_n(&degenerate, rows).unwrap().is_empty());
    }
}

fn tri_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((prop::sample::select(vec![Gen::L, Gen::C]), -3i64..=3), 0..10)
        .prop_map(Word::from_syllables)
}

fn pent_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((prop::sample::select(vec![Gen::L, Gen::P]), -4i64..=4), 0..10)
        .prop_map(Word::from_syllables)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn shift_commutes_with_triangle_actions(word in tri_word(), a in 0i128..4096, b in 0i128..4096, w in 0i128..4096, e in 0i128..4096) {
        let x = LabelPair::from_ints(a, b, w, 12).unwrap();
        let e = DyadicRes::new(e, 12).unwrap();
        let acted_then_shifted = act_word_tri(&word, &x).unwrap().shift(e).unwrap();
        let shifted_then_acted = act_word_tri(&word, &x.shift(e).unwrap()).unwrap();
        prop_assert_eq!(acted_then_shifted, shifted_then_acted);
    }

    #[test]
    fn shift_commutes_with_pentagon_actions(word in pent_word(), abcd in prop::array::uniform4(0i128..4096), w in 0i128..4096, k in -4i64..=4, e in 0i128..4096) {
        let x = LabelQuad::from_ints(abcd, w, k, 12).unwrap();
        let e = DyadicRes::new(e, 12).unwrap();
        let acted_then_shifted = act_word_pent(&word, &x).unwrap().shift(e).unwrap();
        let shifted_then_acted = act_word_pent(&word, &x.shift(e).unwrap()).unwrap();
        prop_assert_eq!(acted_then_shifted, shifted_then_acted);
    }

    #[test]
    fn shifted_approximant_stays_valid(a in 0i128..64, b in 0i128..64, w in 0i128..64, e in 0i128..64) {
        let t = LabeledApprox::assign(enumerate_ford(5, (-1, 1)).unwrap(), d(w), 0, &[d(a), d(b)]).unwrap();
        let s = t.conjugate_shift(d(e)).unwrap();
        prop_assert_eq!(s.w(), d(w + 3 * e));
        s.validate().unwrap();
        let back = s.conjugate_shift(d(-e)).unwrap();
        prop_assert_eq!(back.to_json(), t.to_json());
    }
}
