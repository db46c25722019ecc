//! Braid classes `B(w)` and commutation classes `C(w)`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moves::{for_each_neighbor, MoveKind};
use crate::reduced_words::{format_word, WordSet};
use crate::union_find::{labels, UnionFind};

/// A partition of a [`WordSet`] into the connected components of one kind
/// of move. Class ids follow the lexicographic order of each class's
/// smallest word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    kind: MoveKind,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn kind(&self) -> MoveKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class id of the word at `word_index`.
    pub fn class_of(&self, word_index: usize) -> usize {
        self.class_of[word_index]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Word indices of class `id`, ascending.
    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    /// Index of the lexicographically smallest word of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Classes as lists of word strings.
    pub fn to_strings(&self, words: &WordSet) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&k| words.format(k)).collect())
            .collect()
    }
}

/// Splits `words` into classes connected by moves of `kind` only.
pub fn partition(words: &WordSet, kind: MoveKind) -> Result<ClassPartition> {
    let mut uf = UnionFind::new(words.len());
    let mut scratch = Vec::new();
    let mut missing = None;
    for (a, word) in words.iter().enumerate() {
        for_each_neighbor(word, &mut scratch, |mv, v| {
            if mv.kind != kind {
                return;
            }
            match words.index_of(v) {
                Some(b) => {
                    uf.union(a, b);
                }
                None => missing = Some(format_word(v, words.n())),
            }
        });
        if let Some(v) = missing.take() {
            return Err(Error::Invariant(format!(
                "{v} is reachable by a {kind} move but missing from R({})",
                words.target()
            )));
        }
    }
    let (class_of, count) = labels(&uf, words.len());
    let mut classes = vec![Vec::new(); count];
    for (k, &c) in class_of.iter().enumerate() {
        classes[c].push(k);
    }
    Ok(ClassPartition {
        kind,
        class_of,
        classes,
    })
}

/// Everything reachable from `word` by moves of `kind`, sorted.
pub fn closure(word: &[u8], kind: MoveKind) -> Vec<Vec<u8>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    let mut scratch = Vec::new();
    while let Some(u) = queue.pop_front() {
        for_each_neighbor(&u, &mut scratch, |mv, v| {
            if mv.kind == kind && !seen.contains(v) {
                seen.insert(v.to_vec());
                queue.push_back(v.to_vec());
            }
        });
    }
    seen.into_iter().collect()
}

/// Counts of independent braid factors (`x`) and overlapping pairs (`y`)
/// in a braid class of size `2^x 3^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BraidClassShape {
    pub x: u32,
    pub y: u32,
}

impl BraidClassShape {
    /// Factors `size` as `2^x 3^y` and checks `3x + 5y <= length`.
    pub fn from_size(size: usize, length: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invariant("empty braid class".into()));
        }
        let mut rest = size;
        let (mut x, mut y) = (0, 0);
        while rest.is_multiple_of(2) {
            rest /= 2;
            x += 1;
        }
        while rest.is_multiple_of(3) {
            rest /= 3;
            y += 1;
        }
        if rest != 1 {
            return Err(Error::Invariant(format!(
                "braid class of size {size} is not of the form 2^x 3^y"
            )));
        }
        if 3 * x as usize + 5 * y as usize > length {
            return Err(Error::Invariant(format!(
                "braid class shape (x={x}, y={y}) needs more than {length} letters"
            )));
        }
        Ok(BraidClassShape { x, y })
    }

    pub fn size(&self) -> usize {
        2usize.pow(self.x) * 3usize.pow(self.y)
    }

    /// Edges of the product of `x` two-vertex paths and `y` three-vertex
    /// paths.
    pub fn expected_edges(&self) -> usize {
        let v = self.size();
        self.x as usize * v / 2 + 2 * self.y as usize * v / 3
    }
}

pub fn braid_class_shape(class: &[usize], length: usize) -> Result<BraidClassShape> {
    BraidClassShape::from_size(class.len(), length)
}

/// Checks that the braid edges inside `class` form the path product
/// predicted by its shape: right vertex count, connected, bipartite, and
/// the product's edge count.
pub fn verify_braid_class_graph(class: &[usize], words: &WordSet) -> bool {
    let Ok(shape) = braid_class_shape(class, words.word_length()) else {
        return false;
    };
    let local = |idx: usize| class.binary_search(&idx).ok();
    let mut adjacency = vec![Vec::new(); class.len()];
    let mut scratch = Vec::new();
    let mut edges = 0;
    let mut escaped = false;
    for (a, &idx) in class.iter().enumerate() {
        for_each_neighbor(words.get(idx), &mut scratch, |mv, v| {
            if mv.kind != MoveKind::Braid {
                return;
            }
            match words.index_of(v).and_then(local) {
                Some(b) => {
                    adjacency[a].push(b);
                    if a < b {
                        edges += 1;
                    }
                }
                None => escaped = true,
            }
        });
    }
    if escaped || class.len() != shape.size() || edges != shape.expected_edges() {
        return false;
    }
    let mut color = vec![u8::MAX; class.len()];
    let mut queue = VecDeque::from([0]);
    color[0] = 0;
    let mut reached = 1;
    while let Some(a) = queue.pop_front() {
        for &b in &adjacency[a] {
            if color[b] == u8::MAX {
                color[b] = 1 - color[a];
                reached += 1;
                queue.push_back(b);
            } else if color[b] == color[a] {
                return false;
            }
        }
    }
    reached == class.len()
}
