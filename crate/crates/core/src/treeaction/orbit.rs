use std::collections::VecDeque;

use super::labels::{LabelPair, LabelQuad};
use super::word::Gen;
use super::TreeError;
use crate::algebra::{AlgebraError, DyadicRes};

/// Largest state space, in bits, that the visited bitset may cover.
pub const MAX_STATE_BITS: u32 = 28;

/// Orbit of a label tuple, stored as a bitset over the dense encoding
/// `Σ x_i 2^(N i)`.
#[derive(Clone, Debug)]
pub struct Orbit {
    precision: u32,
    dims: u32,
    visited: Vec<u64>,
    size: u64,
}

impl Orbit {
    fn empty(precision: u32, dims: u32) -> Result<Self, TreeError> {
        let bits = precision * dims;
        if bits > MAX_STATE_BITS {
            return Err(TreeError::StateSpaceTooLarge { bits, max: MAX_STATE_BITS });
        }
        Ok(Orbit {
            precision,
            dims,
            visited: vec![0; ((1u64 << bits) as usize).div_ceil(64)],
            size: 0,
        })
    }

    fn encode(&self, xs: &[DyadicRes]) -> u64 {
        xs.iter()
            .enumerate()
            .fold(0, |acc, (i, x)| acc | (x.value() << (self.precision * i as u32)))
    }

    /// Marks a code, returning true if it was new.
    fn insert(&mut self, code: u64) -> bool {
        let (word, bit) = ((code / 64) as usize, code % 64);
        let fresh = self.visited[word] >> bit & 1 == 0;
        if fresh {
            self.visited[word] |= 1 << bit;
            self.size += 1;
        }
        fresh
    }

    pub fn contains(&self, xs: &[DyadicRes]) -> bool {
        let code = self.encode(xs);
        self.visited[(code / 64) as usize] >> (code % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of tuples in the whole space, `2^(dims N)`.
    pub fn space_size(&self) -> u64 {
        1 << (self.dims * self.precision)
    }

    pub fn is_transitive(&self) -> bool {
        self.size == self.space_size()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

fn check(n: u32, w: &DyadicRes) -> Result<(), TreeError> {
    if w.precision() != n {
        return Err(AlgebraError::PrecisionMismatch { left: n, right: w.precision() }.into());
    }
    Ok(())
}

fn bfs<T: Copy>(
    mut orbit: Orbit,
    start: T,
    coords: impl Fn(&T) -> Vec<DyadicRes>,
    step: impl Fn(&T, Gen, bool) -> T,
    gens: [Gen; 2],
) -> Orbit {
    let mut queue = VecDeque::new();
    orbit.insert(orbit.encode(&coords(&start)));
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for g in gens {
            for inv in [false, true] {
                let t = step(&s, g, inv);
                if orbit.insert(orbit.encode(&coords(&t))) {
                    queue.push_back(t);
                }
            }
        }
    }
    orbit
}

/// Orbit of `(0, 0)` under `L`, `C` and their inverses.
pub fn orbit_tri(n: u32, w: DyadicRes) -> Result<Orbit, TreeError> {
    check(n, &w)?;
    let zero = DyadicRes::zero(n)?;
    let start = LabelPair::new(zero, zero, w)?;
    Ok(bfs(
        Orbit::empty(n, 2)?,
        start,
        |s| vec![s.a(), s.b()],
        |s, g, inv| s.apply(g, inv).expect("C and L act on pairs"),
        [Gen::L, Gen::C],
    ))
}

/// Orbit of `(0, 0, 0, 0)` under `L`, `P` and their inverses.
pub fn orbit_pent(n: u32, w: DyadicRes, k: i64) -> Result<Orbit, TreeError> {
    check(n, &w)?;
    let zero = DyadicRes::zero(n)?;
    let start = LabelQuad::new([zero; 4], w, k)?;
    Ok(bfs(
        Orbit::empty(n, 4)?,
        start,
        |s| s.abcd().to_vec(),
        |s, g, inv| s.apply(g, inv).expect("P and L act on quads"),
        [Gen::L, Gen::P],
    ))
}
