//! Permutations of `{1..n}` in one-line (window) notation.
//!
//! Positions and generator indices are 1-based throughout: `s_i` swaps the
//! entries in positions `i` and `i + 1`, and right multiplication `w * s_i`
//! acts on the window by that swap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group size representable with byte-sized window entries.
pub const MAX_RANK: usize = u8::MAX as usize;

/// An element of the symmetric group `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    window: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { n, max: MAX_RANK });
        }
        Ok(Permutation {
            window: (1..=n as u8).collect(),
        })
    }

    /// The longest element `[n n-1 ... 1]`.
    pub fn longest(n: usize) -> Result<Self> {
        let mut w = Self::identity(n)?;
        w.window.reverse();
        Ok(w)
    }

    /// Builds a permutation from its window `[w(1) ... w(n)]`.
    pub fn from_window(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { n, max: MAX_RANK });
        }
        let mut seen = vec![false; n + 1];
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { value: v, n });
            }
            if seen[v] {
                return Err(Error::DuplicateValue { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation {
            window: values.iter().map(|&v| v as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[u8] {
        &self.window
    }

    pub fn values(&self) -> Vec<usize> {
        self.window.iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for a 1-based position `i`.
    pub fn get(&self, i: usize) -> usize {
        self.window[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// Position pairs `(i, j)`, `i < j`, with `w(i) > w(j)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.window[i] > self.window[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            count += w[i + 1..].iter().filter(|&&v| v < w[i]).count();
        }
        count
    }

    /// Indices `i` with `w(i) > w(i+1)`, in increasing order.
    pub fn right_descents(&self) -> Vec<usize> {
        self.window
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.n() && self.window[i - 1] > self.window[i]
    }

    /// `w * s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn multiply_right(&self, i: usize) -> Result<Self> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, n });
        }
        let mut window = self.window.clone();
        window.swap(i - 1, i);
        Ok(Permutation { window })
    }

    pub(crate) fn swap_in_place(&mut self, i: usize) {
        self.window.swap(i - 1, i);
    }

    pub fn is_321_avoiding(&self) -> bool {
        // A middle entry with something larger to its left and something
        // smaller to its right witnesses a 321 pattern.
        let w = &self.window;
        let n = w.len();
        let mut prefix_max = 0u8;
        let mut suffix_min = vec![u8::MAX; n + 1];
        for k in (0..n).rev() {
            suffix_min[k] = suffix_min[k + 1].min(w[k]);
        }
        for j in 0..n {
            if prefix_max > w[j] && suffix_min[j + 1] < w[j] {
                return false;
            }
            prefix_max = prefix_max.max(w[j]);
        }
        true
    }

    /// Whether every two inversions, read as value pairs `{w(j), w(i)}`,
    /// have a value in common.
    pub fn inversions_pairwise_share_letter(&self) -> bool {
        let pairs: Vec<(u8, u8)> = self
            .inversions()
            .into_iter()
            .map(|(i, j)| (self.window[j - 1], self.window[i - 1]))
            .collect();
        pairs.iter().enumerate().all(|(k, &(a, b))| {
            pairs[k + 1..]
                .iter()
                .all(|&(c, d)| a == c || a == d || b == c || b == d)
        })
    }

    /// Window complement `v -> n + 1 - v`, i.e. `w0 * w`.
    pub fn complement(&self) -> Self {
        let n = self.n() as u8;
        Permutation {
            window: self.window.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Group inverse. Reduced words of `w^-1` are the reversals of those of `w`.
    pub fn reverse(&self) -> Self {
        self.inverse()
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0u8; self.n()];
        for (k, &v) in self.window.iter().enumerate() {
            window[v as usize - 1] = (k + 1) as u8;
        }
        Permutation { window }
    }

    /// `w0 * w * w0`. Reduced words of the result are those of `w` with each
    /// letter `i` replaced by `n - i`.
    pub fn conjugate_longest(&self) -> Self {
        let n = self.n() as u8;
        Permutation {
            window: self.window.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Group product `self * other` as functions composed right to left:
    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::Config(format!(
                "cannot compose elements of S_{} and S_{}",
                self.n(),
                other.n()
            )));
        }
        Ok(Permutation {
            window: other.window.iter().map(|&v| self.window[v as usize - 1]).collect(),
        })
    }

    /// All of `S_n` in lexicographic window order.
    pub fn all(n: usize) -> Result<Lexicographic> {
        Ok(Lexicographic {
            next: Some(Self::identity(n)?),
        })
    }

    /// The lexicographic successor in `S_n`, if any.
    pub fn next_lexicographic(&self) -> Option<Self> {
        let mut w = self.window.clone();
        let k = w.windows(2).rposition(|p| p[0] < p[1])?;
        let l = w.iter().rposition(|&v| v > w[k]).expect("successor exists");
        w.swap(k, l);
        w[k + 1..].reverse();
        Some(Permutation { window: w })
    }
}

pub struct Lexicographic {
    next: Option<Permutation>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        self.next = current.next_lexicographic();
        Some(current)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(w: Permutation) -> Vec<usize> {
        w.values()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::from_window(&values)
    }
}

/// Compact `[25314]` for `n <= 9`, otherwise `[10 2 3 ...]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        if self.n() <= 9 {
            for &v in &self.window {
                write!(f, "{v}")?;
            }
        } else {
            for (k, &v) in self.window.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}

/// Accepts `[25314]`, `25314`, `2 5 3 1 4`, `2,5,3,1,4` and bracketed
/// variants of the separated forms.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut body = s.trim();
        if let Some(rest) = body.strip_prefix('[') {
            body = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err("unbalanced brackets"))?
                .trim();
        }
        if body.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let values: Vec<usize> = if body.contains(|c: char| c == ',' || c.is_whitespace()) {
            body.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| parse_err("expected integers")))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err("expected digits"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_window(&values)
    }
}
