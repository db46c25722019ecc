//! Lower intervals `[e, w]` in right weak order, their rank sizes, width and
//! support, and the width/support criterion for circuit-freeness.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characterizations::Analysis;
use crate::error::Result;
use crate::permutation::Permutation;
use crate::reduced_words::{enumerate, WordSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakInterval {
    pub w: Permutation,
    /// `ranks[k]`: elements of length `k`, sorted.
    pub ranks: Vec<Vec<Permutation>>,
    pub rank_sizes: Vec<usize>,
    pub width: usize,
    pub support_size: usize,
}

impl WeakInterval {
    fn from_ranks(w: Permutation, ranks: Vec<Vec<Permutation>>, support_size: usize) -> Self {
        let rank_sizes: Vec<usize> = ranks.iter().map(Vec::len).collect();
        let width = rank_sizes.iter().copied().max().unwrap_or(0);
        WeakInterval {
            w,
            ranks,
            rank_sizes,
            width,
            support_size,
        }
    }

    pub fn size(&self) -> usize {
        self.rank_sizes.iter().sum()
    }

    /// Cover relations `u < u s_i` inside the interval, as `(u, i, u s_i)`.
    pub fn covers(&self) -> Vec<(Permutation, usize, Permutation)> {
        let mut out = Vec::new();
        for pair in self.ranks.windows(2) {
            let above: HashSet<&Permutation> = pair[1].iter().collect();
            for u in &pair[0] {
                for i in 1..u.n() {
                    if u.has_right_descent(i) {
                        continue;
                    }
                    let v = u.multiply_right(i).expect("index in range");
                    if above.contains(&v) {
                        out.push((u.clone(), i, v));
                    }
                }
            }
        }
        out
    }
}

/// Distinct letters of a reduced word.
pub fn support(word: &[u8]) -> usize {
    word.iter().collect::<BTreeSet<_>>().len()
}

/// `[e, w]` as the set of values of all prefixes of all reduced words.
pub fn interval(w: &Permutation, cap: Option<u64>) -> Result<WeakInterval> {
    Ok(interval_from_words(&enumerate(w, cap)?))
}

pub fn interval_from_words(words: &WordSet) -> WeakInterval {
    let w = words.target().clone();
    let len = words.word_length();
    let mut ranks: Vec<HashSet<Permutation>> = vec![HashSet::new(); len + 1];
    // chain[k] is the value of the current word's length-k prefix
    let mut chain = vec![Permutation::identity(w.n()).expect("n >= 1"); len + 1];
    ranks[0].insert(chain[0].clone());
    let mut previous: Option<&[u8]> = None;
    for word in words.iter() {
        let shared = previous.map_or(0, |p| p.iter().zip(word).take_while(|(a, b)| a == b).count());
        for k in shared..len {
            let mut next = chain[k].clone();
            next.swap_in_place(word[k] as usize);
            ranks[k + 1].insert(next.clone());
            chain[k + 1] = next;
        }
        previous = Some(word);
    }
    let ranks = ranks
        .into_iter()
        .map(|set| {
            let mut v: Vec<_> = set.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect();
    let support_size = if words.is_empty() { 0 } else { support(words.get(0)) };
    WeakInterval::from_ranks(w, ranks, support_size)
}

/// `[e, w]` by closing `{w}` downward under length-decreasing right
/// multiplication. Independent of reduced-word enumeration.
pub fn interval_by_closure(w: &Permutation) -> WeakInterval {
    let len = w.length();
    let mut ranks: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); len + 1];
    ranks[len].insert(w.clone());
    for k in (1..=len).rev() {
        let below: Vec<Permutation> = ranks[k]
            .iter()
            .flat_map(|u| {
                u.right_descents()
                    .into_iter()
                    .map(move |i| u.multiply_right(i).expect("descent"))
            })
            .collect();
        ranks[k - 1].extend(below);
    }
    let support_size = (1..w.n())
        .filter(|&i| {
            // s_i is in the support iff w does not fix the set {1..i}
            w.window()[..i].iter().any(|&v| v as usize > i)
        })
        .count();
    WeakInterval::from_ranks(
        w.clone(),
        ranks.into_iter().map(|s| s.into_iter().collect()).collect(),
        support_size,
    )
}

/// The four width/support conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureConditions {
    pub one_commutation_class: bool,
    pub one_braid_class: bool,
    pub width_two: bool,
    pub width_support_three: bool,
}

impl ConjectureConditions {
    pub fn evaluate(w: &Permutation, interval: &WeakInterval) -> Self {
        ConjectureConditions {
            one_commutation_class: w.is_321_avoiding(),
            one_braid_class: w.inversions_pairwise_share_letter(),
            width_two: interval.width == 2,
            width_support_three: interval.width == 3 && interval.support_size == 3,
        }
    }

    pub fn any(&self) -> bool {
        self.one_commutation_class || self.one_braid_class || self.width_two || self.width_support_three
    }
}

pub fn conjecture_predicate(w: &Permutation, cap: Option<u64>) -> Result<bool> {
    Ok(ConjectureConditions::evaluate(w, &interval(w, cap)?).any())
}

/// Which implication of the width/support criterion fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureSide {
    /// A condition holds, yet `Γ(w)` has a circuit.
    ConditionsWithoutCircuitFree,
    /// `Γ(w)` is a tree, yet no condition holds.
    CircuitFreeWithoutConditions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "side")]
pub enum ConjectureOutcome {
    Agree,
    Counterexample(ConjectureSide),
}

impl ConjectureOutcome {
    pub fn compare(predicate: bool, circuit_free: bool) -> Self {
        match (predicate, circuit_free) {
            (true, false) => ConjectureOutcome::Counterexample(ConjectureSide::ConditionsWithoutCircuitFree),
            (false, true) => ConjectureOutcome::Counterexample(ConjectureSide::CircuitFreeWithoutConditions),
            _ => ConjectureOutcome::Agree,
        }
    }

    pub fn is_agree(&self) -> bool {
        matches!(self, ConjectureOutcome::Agree)
    }
}

impl fmt::Display for ConjectureOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjectureOutcome::Agree => f.write_str("agree"),
            ConjectureOutcome::Counterexample(ConjectureSide::ConditionsWithoutCircuitFree) => {
                f.write_str("counterexample: conditions hold but not circuit-free")
            }
            ConjectureOutcome::Counterexample(ConjectureSide::CircuitFreeWithoutConditions) => {
                f.write_str("counterexample: circuit-free but no condition holds")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub conditions: ConjectureConditions,
    pub circuit_free: bool,
    pub outcome: ConjectureOutcome,
}

pub fn check_conjecture(w: &Permutation, cap: Option<u64>) -> Result<ConjectureCheck> {
    let analysis = Analysis::new(w, cap)?;
    let conditions = ConjectureConditions::evaluate(w, &interval_from_words(&analysis.words));
    let circuit_free = analysis.is_circuit_free()?;
    Ok(ConjectureCheck {
        conditions,
        circuit_free,
        outcome: ConjectureOutcome::compare(conditions.any(), circuit_free),
    })
}
