use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TreeError;

/// Generator symbols. `C`, `L` generate `PSL(2, Z)`; `P`, `L` generate `G5`;
/// `R` abbreviates `C²L`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    C,
    L,
    P,
    R,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::C => 'C',
            Gen::L => 'L',
            Gen::P => 'P',
            Gen::R => 'R',
        }
    }

    fn from_symbol(ch: char) -> Option<Gen> {
        match ch {
            'C' => Some(Gen::C),
            'L' => Some(Gen::L),
            'P' => Some(Gen::P),
            'R' => Some(Gen::R),
            _ => None,
        }
    }
}

/// A group word as a list of syllables `g^n`.
///
/// Words compose like maps: in `uv` the word `v` acts first, so the
/// rightmost syllable of a word is applied first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn gen(g: Gen) -> Word {
        Word::power(g, 1)
    }

    pub fn power(g: Gen, n: i64) -> Word {
        Word::from_syllables([(g, n)])
    }

    /// Builds a word and merges adjacent equal symbols.
    pub fn from_syllables(it: impl IntoIterator<Item = (Gen, i64)>) -> Word {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, n) in it {
            if let Some(last) = out.last_mut() {
                if last.0 == g {
                    last.1 += n;
                    if last.1 == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if n != 0 {
                out.push((g, n));
            }
        }
        Word { syllables: out }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of generator letters, `Σ |n|`.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|(_, n)| n.unsigned_abs()).sum()
    }

    /// Letters left to right, each a generator and an inverse flag.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = (Gen, bool)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, n)| std::iter::repeat_n((g, n < 0), n.unsigned_abs() as usize))
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.syllables.iter().rev().map(|&(g, n)| (g, -n)))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    pub fn uses(&self, g: Gen) -> bool {
        self.syllables.iter().any(|&(h, _)| h == g)
    }

    /// Replaces every `R` by `C²L`.
    pub fn expand_r(&self) -> Word {
        let r = Word::from_syllables([(Gen::C, 2), (Gen::L, 1)]);
        self.syllables
            .iter()
            .fold(Word::empty(), |acc, &(g, n)| match g {
                Gen::R => acc.concat(&r.pow(n)),
                _ => acc.concat(&Word::power(g, n)),
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, n)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if n == 1 {
                write!(f, "{}", g.symbol())?;
            } else {
                write!(f, "{}^{}", g.symbol(), n)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = TreeError;

    /// Accepts forms such as `L^4 C L^2 C^2`, `L4CL2C2`, `L^{-2}` and `1`.
    fn from_str(s: &str) -> Result<Word, TreeError> {
        let bad = || TreeError::BadWord(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let g = Gen::from_symbol(chars[i]).ok_or_else(bad)?;
            i += 1;
            let mut exp = 1i64;
            let caret = i < chars.len() && chars[i] == '^';
            if caret {
                i += 1;
            }
            let brace = i < chars.len() && chars[i] == '{';
            if brace {
                i += 1;
            }
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i > start {
                let text: String = chars[start..i].iter().collect();
                exp = text.parse().map_err(|_| bad())?;
            } else if caret || brace {
                return Err(bad());
            }
            if brace {
                if i >= chars.len() || chars[i] != '}' {
                    return Err(bad());
                }
                i += 1;
            }
            out.push((g, exp));
        }
        Ok(Word::from_syllables(out))
    }
}
