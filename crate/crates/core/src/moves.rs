//! Braid moves `b_i` and commutation moves `c_i` on words.
//!
//! Positions are 1-based. `b_i` looks at letters `i-1, i, i+1` and rewrites
//! `a (a±1) a` into `(a±1) a (a±1)`; `c_i` swaps letters `i` and `i+1` when
//! they differ by more than one. Either move is the identity where it is not
//! supported.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduced_words::format_word;

/// Which Coxeter relation a move, edge, or class partition refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Braid,
    Commutation,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Braid => "braid",
            MoveKind::Commutation => "commutation",
        }
    }

    pub fn other(self) -> MoveKind {
        match self {
            MoveKind::Braid => MoveKind::Commutation,
            MoveKind::Commutation => MoveKind::Braid,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self.kind {
            MoveKind::Braid => 'b',
            MoveKind::Commutation => 'c',
        };
        write!(f, "{symbol}_{}", self.position)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    Overlapping,
    Independent,
}

pub fn supports_braid(word: &[u8], i: usize) -> bool {
    i >= 2 && i < word.len() && word[i - 2] == word[i] && word[i - 2].abs_diff(word[i - 1]) == 1
}

pub fn supports_commutation(word: &[u8], i: usize) -> bool {
    i >= 1 && i < word.len() && word[i - 1].abs_diff(word[i]) > 1
}

pub fn supports(word: &[u8], mv: Move) -> bool {
    match mv.kind {
        MoveKind::Braid => supports_braid(word, mv.position),
        MoveKind::Commutation => supports_commutation(word, mv.position),
    }
}

pub fn apply_braid(word: &[u8], i: usize) -> Vec<u8> {
    let mut out = word.to_vec();
    apply_in_place(
        &mut out,
        Move {
            kind: MoveKind::Braid,
            position: i,
        },
    );
    out
}

pub fn apply_commutation(word: &[u8], i: usize) -> Vec<u8> {
    let mut out = word.to_vec();
    apply_in_place(
        &mut out,
        Move {
            kind: MoveKind::Commutation,
            position: i,
        },
    );
    out
}

pub fn apply(word: &[u8], mv: Move) -> Vec<u8> {
    let mut out = word.to_vec();
    apply_in_place(&mut out, mv);
    out
}

/// Applies `mv` if supported and reports whether anything changed.
pub fn apply_in_place(word: &mut [u8], mv: Move) -> bool {
    if !supports(word, mv) {
        return false;
    }
    let i = mv.position;
    match mv.kind {
        MoveKind::Braid => {
            let (a, b) = (word[i - 2], word[i - 1]);
            word[i - 2] = b;
            word[i - 1] = a;
            word[i] = b;
        }
        MoveKind::Commutation => word.swap(i - 1, i),
    }
    true
}

/// Relation between two distinct moves of the same kind, both assumed to be
/// supported by the word at hand.
pub fn classify_pair(kind: MoveKind, i: usize, j: usize) -> Result<PairRelation> {
    if i == j {
        return Err(Error::SamePosition { position: i });
    }
    let gap = i.abs_diff(j);
    match kind {
        MoveKind::Braid if gap == 1 => Err(Error::AdjacentBraids { i, j }),
        MoveKind::Braid if gap == 2 => Ok(PairRelation::Overlapping),
        MoveKind::Commutation if gap == 1 => Ok(PairRelation::Overlapping),
        _ => Ok(PairRelation::Independent),
    }
}

/// [`classify_pair`] after checking that `word` supports both moves.
pub fn classify_pair_in(word: &[u8], n: usize, kind: MoveKind, i: usize, j: usize) -> Result<PairRelation> {
    for position in [i, j] {
        if !supports(word, Move { kind, position }) {
            return Err(Error::Unsupported {
                kind: kind.name(),
                position,
                word: format_word(word, n),
            });
        }
    }
    classify_pair(kind, i, j)
}

/// Supported moves of `word`: commutations by position, then braids by
/// position.
pub fn supported_moves(word: &[u8]) -> Vec<Move> {
    let commutations = (1..word.len())
        .filter(|&i| supports_commutation(word, i))
        .map(|position| Move {
            kind: MoveKind::Commutation,
            position,
        });
    let braids = (2..word.len())
        .filter(|&i| supports_braid(word, i))
        .map(|position| Move {
            kind: MoveKind::Braid,
            position,
        });
    commutations.chain(braids).collect()
}

/// Every word one supported move away from `word`, tagged by the move.
pub fn neighbors(word: &[u8]) -> Vec<(Move, Vec<u8>)> {
    supported_moves(word)
        .into_iter()
        .map(|mv| (mv, apply(word, mv)))
        .collect()
}

/// Allocation-free variant of [`neighbors`] for hot loops: `visit` sees each
/// neighbor in a scratch buffer that is restored afterwards.
pub fn for_each_neighbor(word: &[u8], scratch: &mut Vec<u8>, mut visit: impl FnMut(Move, &[u8])) {
    scratch.clear();
    scratch.extend_from_slice(word);
    for i in 1..word.len() {
        let mv = Move {
            kind: MoveKind::Commutation,
            position: i,
        };
        if apply_in_place(scratch, mv) {
            visit(mv, scratch);
            scratch.swap(i - 1, i);
        }
    }
    for i in 2..word.len() {
        let mv = Move {
            kind: MoveKind::Braid,
            position: i,
        };
        if apply_in_place(scratch, mv) {
            visit(mv, scratch);
            scratch[i - 2..=i].copy_from_slice(&word[i - 2..=i]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced_words::parse_letters;

    fn w(s: &str) -> Vec<u8> {
        parse_letters(s).unwrap()
    }

    #[test]
    fn braid_examples() {
        assert!(supports_braid(&w("14232"), 4));
        assert!(!supports_braid(&w("14232"), 2));
        assert!(supports_braid(&w("121"), 2));
        assert_eq!(apply_braid(&w("14232"), 4), w("14323"));
        assert_eq!(apply_braid(&w("14232"), 2), w("14232"));
        assert_eq!(apply_braid(&w("121"), 2), w("212"));
        // out of range positions
        assert!(!supports_braid(&w("121"), 1));
        assert!(!supports_braid(&w("121"), 3));
        assert!(!supports_braid(&[], 0));
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(apply_commutation(&w("14232"), 2), w("12432"));
        assert_eq!(apply_commutation(&w("14232"), 4), w("14232"));
        assert_eq!(apply_commutation(&w("13"), 1), w("31"));
        assert!(!supports_commutation(&w("13"), 0));
        assert!(!supports_commutation(&w("13"), 2));
    }

    #[test]
    fn pair_classification() {
        let u = w("1216343");
        assert_eq!(
            classify_pair_in(&u, 7, MoveKind::Braid, 2, 6).unwrap(),
            PairRelation::Independent
        );
        assert_eq!(
            classify_pair_in(&u, 7, MoveKind::Commutation, 3, 4).unwrap(),
            PairRelation::Overlapping
        );
        assert_eq!(classify_pair(MoveKind::Braid, 2, 4).unwrap(), PairRelation::Overlapping);
        assert!(matches!(
            classify_pair(MoveKind::Braid, 3, 3),
            Err(Error::SamePosition { .. })
        ));
        assert!(matches!(
            classify_pair(MoveKind::Braid, 3, 4),
            Err(Error::AdjacentBraids { .. })
        ));
        assert!(classify_pair_in(&u, 7, MoveKind::Braid, 2, 3).is_err());
    }

    #[test]
    fn neighbor_lists() {
        assert_eq!(
            neighbors(&w("12432")),
            vec![(
                Move {
                    kind: MoveKind::Commutation,
                    position: 2
                },
                w("14232")
            )]
        );
        assert!(neighbors(&[]).is_empty());
        assert_eq!(
            neighbors(&w("121")),
            vec![(
                Move {
                    kind: MoveKind::Braid,
                    position: 2
                },
                w("212")
            )]
        );
        let mut scratch = Vec::new();
        for word in ["14232", "1216343", "12143465676"] {
            let word = w(word);
            let mut seen = Vec::new();
            for_each_neighbor(&word, &mut scratch, |mv, v| seen.push((mv, v.to_vec())));
            assert_eq!(seen, neighbors(&word));
            assert_eq!(scratch, word);
        }
    }

    #[test]
    fn move_display() {
        assert_eq!(
            Move {
                kind: MoveKind::Braid,
                position: 4
            }
            .to_string(),
            "b_4"
        );
        assert_eq!(
            Move {
                kind: MoveKind::Commutation,
                position: 2
            }
            .to_string(),
            "c_2"
        );
    }
}
