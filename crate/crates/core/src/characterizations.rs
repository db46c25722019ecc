//! Bound status of `|R(w)|` against `|B(w)|` and `|C(w)|`, closed-form
//! predicates for the permutations attaining either bound, and the
//! corresponding enumeration formulas.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classes::{partition, ClassPartition};
use crate::error::{Error, Result};
use crate::graphs::{build_gamma, build_table, IntersectionTable, LabeledGraph};
use crate::moves::MoveKind;
use crate::permutation::Permutation;
use crate::reduced_words::{enumerate, evaluate, is_reduced, WordSet};

/// `r = |R(w)|`, `b = |B(w)|`, `c = |C(w)|` and which bound is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundStatus {
    pub r: u64,
    pub b: u64,
    pub c: u64,
    pub achieves_lower: bool,
    pub achieves_upper: bool,
}

impl BoundStatus {
    /// Fails if `b + c - 1 <= r <= b c` does not hold.
    pub fn from_counts(r: u64, b: u64, c: u64) -> Result<Self> {
        let lower = b + c - 1;
        let upper = b * c;
        if r < lower || r > upper {
            return Err(Error::Invariant(format!(
                "bounds violated: {lower} <= {r} <= {upper} is false (b={b}, c={c})"
            )));
        }
        Ok(BoundStatus {
            r,
            b,
            c,
            achieves_lower: r == lower,
            achieves_upper: r == upper,
        })
    }
}

/// `R(w)` with both class partitions, computed once and shared by the
/// checks that need them.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub words: WordSet,
    pub braid: ClassPartition,
    pub commutation: ClassPartition,
}

impl Analysis {
    pub fn new(w: &Permutation, cap: Option<u64>) -> Result<Self> {
        Self::from_words(enumerate(w, cap)?)
    }

    pub fn from_words(words: WordSet) -> Result<Self> {
        let braid = partition(&words, MoveKind::Braid)?;
        let commutation = partition(&words, MoveKind::Commutation)?;
        Ok(Analysis {
            words,
            braid,
            commutation,
        })
    }

    pub fn status(&self) -> Result<BoundStatus> {
        BoundStatus::from_counts(
            self.words.len() as u64,
            self.braid.len() as u64,
            self.commutation.len() as u64,
        )
    }

    pub fn gamma(&self) -> Result<LabeledGraph> {
        build_gamma(&self.braid, &self.commutation, &self.words)
    }

    pub fn table(&self) -> Result<IntersectionTable> {
        build_table(&self.braid, &self.commutation, &self.words)
    }

    pub fn is_circuit_free(&self) -> Result<bool> {
        Ok(self.gamma()?.is_tree())
    }
}

pub fn bound_status(w: &Permutation, cap: Option<u64>) -> Result<BoundStatus> {
    Analysis::new(w, cap)?.status()
}

/// Whether `Γ(w)` is a tree.
pub fn is_circuit_free(w: &Permutation, cap: Option<u64>) -> Result<bool> {
    Analysis::new(w, cap)?.is_circuit_free()
}

/// `w = s_i s_{i+1} s_i` for some `i`: `w(i) = i+2`, `w(i+2) = i`, all
/// other values fixed.
pub fn is_single_braid(w: &Permutation) -> bool {
    let n = w.n();
    (1..=n.saturating_sub(2))
        .any(|i| w.get(i) == i + 2 && w.get(i + 2) == i && (1..=n).all(|k| k == i || k == i + 2 || w.get(k) == k))
}

/// Enumeration-free test for `|R(w)| = |B(w)| |C(w)|`.
pub fn upper_predicate(w: &Permutation) -> bool {
    w.is_321_avoiding() || is_single_braid(w)
}

/// The word shapes `u · i(i+1)i · v` that, up to symmetry, make a
/// permutation with several braid and commutation classes circuit-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerTemplate {
    /// `i(i+1)i (i-1)i`
    ReturnTail,
    /// `i(i+1)i (i-1)(i-2)...(i-1-t)`, `t >= 0`
    DescendingTail,
    /// `(i-1) i(i+1)i (i-1)`
    Flanked,
    /// `(i-1-t)...(i-1) i(i+1)i (i+2)...(i+2+t')`, `t, t' >= 0`
    Staircase,
}

/// Word-level symmetries: reversal and the letter map `a -> n - a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Identity,
    Reverse,
    Complement,
    ReverseComplement,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Identity,
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::ReverseComplement,
    ];

    pub fn apply(self, word: &[u8], n: usize) -> Vec<u8> {
        let flip = |a: u8| n as u8 - a;
        match self {
            Symmetry::Identity => word.to_vec(),
            Symmetry::Reverse => word.iter().rev().copied().collect(),
            Symmetry::Complement => word.iter().map(|&a| flip(a)).collect(),
            Symmetry::ReverseComplement => word.iter().rev().map(|&a| flip(a)).collect(),
        }
    }

    /// The same symmetry acting on permutations.
    pub fn apply_to_permutation(self, w: &Permutation) -> Permutation {
        match self {
            Symmetry::Identity => w.clone(),
            Symmetry::Reverse => w.inverse(),
            Symmetry::Complement => w.conjugate_longest(),
            Symmetry::ReverseComplement => w.inverse().conjugate_longest(),
        }
    }
}

// `run` is a run of consecutive letters stepping by `step` from `start`.
fn is_run(run: &[u8], start: i32, step: i32) -> bool {
    run.iter()
        .enumerate()
        .all(|(k, &a)| a as i32 == start + step * k as i32)
}

/// Matches `word` literally (as a whole word) against the templates.
pub fn match_template(word: &[u8]) -> Option<LowerTemplate> {
    for p in 0..word.len().saturating_sub(2) {
        let i = word[p];
        if word[p + 1] != i + 1 || word[p + 2] != i {
            continue;
        }
        let (u, v) = (&word[..p], &word[p + 3..]);
        let i = i as i32;
        let found = if u.is_empty() {
            if v == [i as u8 - 1, i as u8] && i >= 2 {
                Some(LowerTemplate::ReturnTail)
            } else if !v.is_empty() && is_run(v, i - 1, -1) {
                Some(LowerTemplate::DescendingTail)
            } else {
                None
            }
        } else if u.len() == 1 && v.len() == 1 && u[0] as i32 == i - 1 && v[0] as i32 == i - 1 {
            Some(LowerTemplate::Flanked)
        } else if !v.is_empty() && is_run(u, i - u.len() as i32, 1) && is_run(v, i + 2, 1) {
            Some(LowerTemplate::Staircase)
        } else {
            None
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn match_up_to_symmetry(word: &[u8], n: usize) -> Option<(Symmetry, LowerTemplate)> {
    Symmetry::ALL
        .into_iter()
        .find_map(|s| match_template(&s.apply(word, n)).map(|t| (s, t)))
}

/// Every literal template instance whose letters lie in `1..n`.
pub fn template_words(n: usize) -> Vec<(LowerTemplate, Vec<u8>)> {
    let top = n as i32 - 1;
    let mut out = Vec::new();
    let run = |from: i32, to: i32| -> Vec<u8> {
        if from <= to {
            (from..=to).map(|a| a as u8).collect()
        } else {
            (to..=from).rev().map(|a| a as u8).collect()
        }
    };
    for i in 1..top {
        let core = [i as u8, i as u8 + 1, i as u8];
        if i >= 2 {
            out.push((LowerTemplate::ReturnTail, [&core[..], &[i as u8 - 1, i as u8]].concat()));
            out.push((
                LowerTemplate::Flanked,
                [&[i as u8 - 1], &core[..], &[i as u8 - 1]].concat(),
            ));
        }
        for t in 0..=(i - 2).max(-1) {
            out.push((
                LowerTemplate::DescendingTail,
                [&core[..], &run(i - 1, i - 1 - t)].concat(),
            ));
        }
        for t in 0..=(i - 2).max(-1) {
            for t2 in 0..=(top - i - 2).max(-1) {
                let word = [run(i - 1 - t, i - 1), core.to_vec(), run(i + 2, i + 2 + t2)].concat();
                out.push((LowerTemplate::Staircase, word));
            }
        }
    }
    out
}

/// The permutations of `S_n` having a reduced word that matches a template
/// up to symmetry, built without enumerating any `R(w)`.
#[derive(Clone, Debug)]
pub struct LowerTemplates {
    n: usize,
    members: HashSet<Permutation>,
}

impl LowerTemplates {
    pub fn new(n: usize) -> Result<Self> {
        let mut members = HashSet::new();
        for (_, word) in template_words(n) {
            for s in Symmetry::ALL {
                let image = s.apply(&word, n);
                if !is_reduced(&image, n)? {
                    return Err(Error::Invariant(format!("template word {image:?} is not reduced")));
                }
                members.insert(evaluate(&image, n)?);
            }
        }
        Ok(LowerTemplates { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        w.n() == self.n && self.members.contains(w)
    }

    /// Enumeration-free test for `|R(w)| = |B(w)| + |C(w)| - 1`.
    pub fn lower_predicate(&self, w: &Permutation) -> bool {
        w.inversions_pairwise_share_letter() || w.is_321_avoiding() || self.contains(w)
    }
}

/// Enumeration-free test for `|R(w)| = |B(w)| + |C(w)| - 1`.
pub fn lower_predicate_pattern(w: &Permutation) -> Result<bool> {
    Ok(LowerTemplates::new(w.n())?.lower_predicate(w))
}

/// The same characterization checked by matching every word of `R(w)`.
pub fn lower_predicate_from_words(words: &WordSet) -> bool {
    let w = words.target();
    w.inversions_pairwise_share_letter()
        || w.is_321_avoiding()
        || words.iter().any(|u| match_up_to_symmetry(u, w.n()).is_some())
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> Result<u64> {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c
            .checked_mul(2 * (2 * k + 1))
            .ok_or(Error::Overflow("Catalan number"))?
            / (k + 2);
    }
    u64::try_from(c).map_err(|_| Error::Overflow("Catalan number"))
}

/// Number of `w` in `S_n` with `|R(w)| = |B(w)| |C(w)|`.
pub fn count_upper(n: usize) -> Result<u64> {
    match n {
        0 => Err(Error::ZeroRank),
        1 => Ok(1),
        _ => catalan(n)?
            .checked_add(n as u64 - 2)
            .ok_or(Error::Overflow("upper bound count")),
    }
}

/// Number of `w` in `S_n` with `|R(w)| = |B(w)| + |C(w)| - 1`.
pub fn count_lower(n: usize) -> Result<u64> {
    match n {
        0 => Err(Error::ZeroRank),
        1 | 2 => Ok(n as u64),
        _ => {
            let m = n as i128;
            let numerator = m * m * m - 3 * m * m + 8 * m - 21;
            if numerator % 3 != 0 {
                return Err(Error::Invariant(format!("{numerator} is not divisible by 3")));
            }
            let extra = u64::try_from(numerator / 3).map_err(|_| Error::Overflow("lower bound count"))?;
            catalan(n)?
                .checked_add(extra)
                .ok_or(Error::Overflow("lower bound count"))
        }
    }
}
