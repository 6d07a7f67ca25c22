//! Check suites; each yields named expected/actual/pass triples.

use std::collections::HashSet;

use horotile::algebra::DyadicRes;
use horotile::cf::{check_cf_properties, hecke_entry_scan, CFSequence};
use horotile::geom::{Contact, Cusp};
use horotile::tiling::enumerate_ford;
use horotile::treeaction::{
    act_word_pent, act_word_tri, coset_index_e, free_check, kernel_check, orbit_pent, orbit_tri, pent_lattice_det,
    Gen, LabelPair, LabelQuad, Word,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tri,
    Pent,
    Det,
    Index6,
    Free,
    Kernel,
    HeckeScan,
    CfProperties,
    FordDisjointness,
    Conjugacy,
    All,
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

pub struct Params {
    pub precision: u32,
    pub k: i64,
    pub w: i128,
    pub word_len: u32,
    pub q_max: u64,
    pub samples: u64,
    pub seed: u64,
}

fn check(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Check {
    let (expected, actual) = (json!(expected), json!(actual));
    let pass = expected == actual;
    Check { name: name.into(), expected, actual, pass }
}

pub fn run(suite: Suite, p: &Params) -> Result<Vec<Check>, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for s in [
                Suite::Tri,
                Suite::Pent,
                Suite::Det,
                Suite::Index6,
                Suite::Free,
                Suite::Kernel,
                Suite::HeckeScan,
                Suite::CfProperties,
                Suite::FordDisjointness,
                Suite::Conjugacy,
            ] {
                out.extend(run(s, p)?);
            }
        }
        Suite::Tri => {
            let w = DyadicRes::new(p.w, p.precision).map_err(|x| e(&x))?;
            let o = orbit_tri(p.precision, w).map_err(|x| e(&x))?;
            out.push(check(format!("orbit of (0,0) mod 2^{}", p.precision), 1u64 << (2 * p.precision), o.len()));
        }
        Suite::Pent => {
            let w = DyadicRes::new(p.w, p.precision).map_err(|x| e(&x))?;
            let o = orbit_pent(p.precision, w, p.k).map_err(|x| e(&x))?;
            out.push(check(format!("orbit of (0,0,0,0) mod 2^{}, k = {}", p.precision, p.k), 1u64 << (4 * p.precision), o.len()));
        }
        Suite::Det => {
            for k in -10..=10i64 {
                let closed = 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1) as i128;
                let d = pent_lattice_det(k);
                out.push(check(format!("determinant at k = {k}"), json!({"value": closed, "odd": true}), json!({"value": d, "odd": d % 2 != 0})));
            }
        }
        Suite::Index6 => {
            let r = coset_index_e(p.word_len.max(10)).map_err(|x| e(&x))?;
            out.push(check("index of E", 6, r.index));
            out.push(check("coset count stabilized", true, r.stabilized && r.anomalies.is_empty()));
        }
        Suite::Free => {
            let r = free_check(p.word_len).map_err(|x| e(&x))?;
            out.push(check(format!("identity words among {} reduced words", r.words_checked), Vec::<String>::new(), r.violations));
        }
        Suite::Kernel => {
            let r = kernel_check(p.word_len, p.precision.min(8)).map_err(|x| e(&x))?;
            out.push(check("zero-sum words moving a pair", Vec::<String>::new(), r.kernel_failures));
            out.push(check("nonzero-sum words fixing every pair", Vec::<String>::new(), r.non_kernel_failures));
        }
        Suite::HeckeScan => {
            let r = hecke_entry_scan(p.word_len);
            out.push(Check {
                name: format!("rational entries over {} elements", r.elements_seen),
                expected: json!("subset of [-1, 0, 1]"),
                actual: json!(r.rational_entries_found),
                pass: r.pass,
            });
        }
        Suite::CfProperties => {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            let mut failures = Vec::new();
            for i in 0..p.samples {
                let s = CFSequence::random(20, &mut rng);
                let rep = check_cf_properties(&s, 20).map_err(|x| e(&x))?;
                if !rep.pass() {
                    failures.push(i);
                }
            }
            out.push(check(format!("alpha, beta, gamma on {} sequences", p.samples), Vec::<u64>::new(), failures));
        }
        Suite::FordDisjointness => {
            let pk = enumerate_ford(p.q_max, (0, 1)).map_err(|x| e(&x))?;
            let hs = pk.horoballs();
            let adj: HashSet<(usize, usize)> = pk.adjacency().iter().copied().collect();
            let (mut overlaps, mut rule) = (0u64, 0u64);
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    if hs[i].contact(&hs[j]) == Contact::Overlapping {
                        overlaps += 1;
                    }
                    let det_one = match (hs[i].tangent(), hs[j].tangent()) {
                        (Cusp::Finite(x), Cusp::Finite(y)) => {
                            let d: BigInt = x.numer() * y.denom() - x.denom() * y.numer();
                            d == BigInt::from(1) || d == BigInt::from(-1)
                        }
                        (Cusp::Finite(x), _) | (_, Cusp::Finite(x)) => x.denom() == &BigInt::from(1),
                        _ => false,
                    };
                    if det_one != adj.contains(&(i, j)) {
                        rule += 1;
                    }
                }
            }
            out.push(check(format!("overlapping pairs, q <= {}", p.q_max), 0, overlaps));
            out.push(check("pairs breaking |ps - qr| = 1", 0, rule));
        }
        Suite::Conjugacy => {
            let n = 12;
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            let mut bad = 0;
            for _ in 0..100 {
                let word = random_word(&mut rng, Gen::C);
                let r = |rng: &mut ChaCha8Rng| rng.gen_range(0..1i128 << n);
                let x = LabelPair::from_ints(r(&mut rng), r(&mut rng), r(&mut rng), n).map_err(|x| e(&x))?;
                let sh = DyadicRes::new(r(&mut rng), n).map_err(|x| e(&x))?;
                let lhs = act_word_tri(&word, &x).map_err(|x| e(&x))?.shift(sh).map_err(|x| e(&x))?;
                let rhs = act_word_tri(&word, &x.shift(sh).map_err(|x| e(&x))?).map_err(|x| e(&x))?;
                bad += (lhs != rhs) as u32;
                let word = random_word(&mut rng, Gen::P);
                let q = LabelQuad::from_ints([r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng)], r(&mut rng), p.k, n)
                    .map_err(|x| e(&x))?;
                let lhs = act_word_pent(&word, &q).map_err(|x| e(&x))?.shift(sh).map_err(|x| e(&x))?;
                let rhs = act_word_pent(&word, &q.shift(sh).map_err(|x| e(&x))?).map_err(|x| e(&x))?;
                bad += (lhs != rhs) as u32;
            }
            out.push(check("words where shifting and acting disagree", 0, bad));
        }
    }
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng, turn: Gen) -> Word {
    let len = rng.gen_range(1..12);
    Word::from_syllables((0..len).map(|i| (if i % 2 == 0 { Gen::L } else { turn }, rng.gen_range(-4..=4))))
}
