//! Rosen continued fractions `r0 λ + ε1 / (r1 λ + ε2 / (r2 λ + ...))` and
//! the scan of rational matrix entries in `G5`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::GoldenInt;
use crate::tiling::hecke_ball;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("r has {r} terms but eps has {eps}; expected one more r than eps")]
    LengthMismatch { r: usize, eps: usize },
    #[error("r_{0} must be positive")]
    NonPositive(usize),
    #[error("eps_{0} must be 1 or -1")]
    BadSign(usize),
    #[error("not reduced: r_{n} = 1 is followed by eps r = -1")]
    NotReduced { n: usize },
    #[error("asked for {asked} terms of a sequence of length {len}")]
    TooLong { asked: usize, len: usize },
}

/// Partial quotients `r_0, ..., r_n` and signs `ε_1, ..., ε_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CFSequence {
    r: Vec<i64>,
    eps: Vec<i8>,
}

impl CFSequence {
    /// Validates and stores a reduced sequence: `r_0 ≥ 0`, `r_i ≥ 1`,
    /// `ε_i = ±1`, and never `r_n = 1` followed by `ε_{n+1} r_{n+1} = -1`.
    pub fn new(r: Vec<i64>, eps: Vec<i8>) -> Result<Self, CfError> {
        if r.len() != eps.len() + 1 {
            return Err(CfError::LengthMismatch { r: r.len(), eps: eps.len() });
        }
        if r[0] < 0 {
            return Err(CfError::NonPositive(0));
        }
        if let Some(i) = (1..r.len()).find(|&i| r[i] < 1) {
            return Err(CfError::NonPositive(i));
        }
        if let Some(i) = eps.iter().position(|&e| e != 1 && e != -1) {
            return Err(CfError::BadSign(i + 1));
        }
        if let Some(n) = (1..eps.len()).find(|&n| r[n] == 1 && eps[n] as i64 * r[n + 1] == -1) {
            return Err(CfError::NotReduced { n });
        }
        Ok(CFSequence { r, eps })
    }

    /// Number of terms after `r_0`.
    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn r(&self, i: usize) -> i64 {
        self.r[i]
    }

    /// `ε_i` for `i ≥ 1`.
    pub fn eps(&self, i: usize) -> i8 {
        self.eps[i - 1]
    }

    /// Random reduced sequence of length `n`: `r_i` uniform in `1..=5`, `ε_i`
    /// uniform, resampling any term that breaks reduced form.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut r = vec![rng.gen_range(0..=5)];
        let mut eps = Vec::with_capacity(n);
        for i in 1..=n {
            loop {
                let (ri, ei) = (rng.gen_range(1..=5), if rng.gen() { 1 } else { -1 });
                if i >= 2 && r[i - 1] == 1 && ei as i64 * ri == -1 {
                    continue;
                }
                r.push(ri);
                eps.push(ei);
                break;
            }
        }
        CFSequence { r, eps }
    }

    pub fn random_seeded(n: usize, seed: u64) -> Self {
        CFSequence::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

/// Denominator recursion state: `Q_{n-1}`, `Q_n` and the coefficient pairs
/// of `Q_n = a_n λ + b_n` tracked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFState {
    pub n: usize,
    pub q_prev: GoldenInt,
    pub q_curr: GoldenInt,
    pub ab_prev: (BigInt, BigInt),
    pub ab_curr: (BigInt, BigInt),
}

impl Default for CFState {
    fn default() -> Self {
        CFState {
            n: 0,
            q_prev: GoldenInt::integer(0),
            q_curr: GoldenInt::integer(1),
            ab_prev: (BigInt::zero(), BigInt::zero()),
            ab_curr: (BigInt::zero(), BigInt::from(1)),
        }
    }
}

impl CFState {
    /// One step of both recursions with partial quotient `r` and sign `eps`.
    pub fn step(&mut self, r: i64, eps: i8) {
        let (r, e) = (BigInt::from(r), BigInt::from(eps));
        let q_next = GoldenInt::lambda().scale(&r).mul_ref(&self.q_curr) + self.q_prev.scale(&e);
        let (a1, b1) = &self.ab_curr;
        let (a2, b2) = &self.ab_prev;
        let ab_next = (&r * (a1 + b1) + &e * a2, &r * a1 + &e * b2);
        self.q_prev = std::mem::replace(&mut self.q_curr, q_next);
        self.ab_prev = std::mem::replace(&mut self.ab_curr, ab_next);
        self.n += 1;
    }
}

fn check_len(seq: &CFSequence, n: usize) -> Result<(), CfError> {
    if n > seq.len() {
        return Err(CfError::TooLong { asked: n, len: seq.len() });
    }
    Ok(())
}

/// `Q_0, ..., Q_n` from `Q_n = r_n λ Q_{n-1} + ε_n Q_{n-2}`.
pub fn cf_denominators(seq: &CFSequence, n: usize) -> Result<Vec<GoldenInt>, CfError> {
    check_len(seq, n)?;
    let mut st = CFState::default();
    let mut out = vec![st.q_curr.clone()];
    for i in 1..=n {
        st.step(seq.r(i), seq.eps(i));
        out.push(st.q_curr.clone());
    }
    Ok(out)
}

/// `(a_i, b_i)` for `i = 0..=n` from the coefficient recursion.
pub fn cf_coefficients(seq: &CFSequence, n: usize) -> Result<Vec<(BigInt, BigInt)>, CfError> {
    check_len(seq, n)?;
    let mut st = CFState::default();
    let mut out = vec![st.ab_curr.clone()];
    for i in 1..=n {
        st.step(seq.r(i), seq.eps(i));
        out.push(st.ab_curr.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CfProperty {
    /// `a_n ≥ a_{n-1}`
    Alpha,
    /// `b_n ≥ 0`
    Beta,
    /// `a_n ≥ b_{n-1}`
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfPropertyReport {
    pub checked: usize,
    /// First index and property that fails, if any.
    pub violation: Option<(usize, CfProperty)>,
    pub a_never_zero: bool,
}

impl CfPropertyReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none() && self.a_never_zero
    }
}

pub fn check_cf_properties(seq: &CFSequence, n: usize) -> Result<CfPropertyReport, CfError> {
    let ab = cf_coefficients(seq, n)?;
    let mut violation = None;
    for i in 1..=n {
        let ((a, b), (a0, b0)) = (&ab[i], &ab[i - 1]);
        let failed = if a < a0 {
            Some(CfProperty::Alpha)
        } else if b < &BigInt::zero() {
            Some(CfProperty::Beta)
        } else if a < b0 {
            Some(CfProperty::Gamma)
        } else {
            None
        };
        if let Some(p) = failed {
            violation = Some((i, p));
            break;
        }
    }
    Ok(CfPropertyReport { checked: n, violation, a_never_zero: ab[1..].iter().all(|(a, _)| !a.is_zero()) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryScanReport {
    pub max_word_len: u32,
    pub elements_seen: usize,
    /// Elements first reached at each word length `0..=max_word_len`.
    pub elements_by_length: Vec<usize>,
    pub rational_entries_found: Vec<i64>,
    pub pass: bool,
}

/// Collects every matrix entry with zero λ-part over all `G5` elements of
/// word length at most `max_word_len`, and checks they lie in `{-1, 0, 1}`.
pub fn hecke_entry_scan(max_word_len: u32) -> EntryScanReport {
    let ball = hecke_ball(max_word_len);
    let mut found = BTreeSet::new();
    let mut by_len = vec![0; max_word_len as usize + 1];
    for (g, len) in &ball {
        by_len[*len as usize] += 1;
        for x in g.entries() {
            if x.is_rational_integer() {
                found.insert(x.p.to_i64().expect("small rational entry"));
            }
        }
    }
    let pass = found.iter().all(|x| (-1..=1).contains(x));
    EntryScanReport {
        max_word_len,
        elements_seen: ball.len(),
        elements_by_length: by_len,
        rational_entries_found: found.into_iter().collect(),
        pass,
    }
}
