//! Reduced words of permutations: enumeration, braid and commutation
//! classes, the graphs built from them, bounds on the class counts, and
//! lower intervals in weak order.

pub mod characterizations;
pub mod classes;
pub mod error;
pub mod graphs;
pub mod moves;
pub mod permutation;
pub mod reduced_words;
pub mod scan;
mod union_find;
pub mod weak_order;

pub use characterizations::{Analysis, BoundStatus, LowerTemplates};
pub use classes::{partition, ClassPartition};
pub use error::{Error, Result};
pub use graphs::{IntersectionTable, LabeledGraph};
pub use moves::{Move, MoveKind};
pub use permutation::Permutation;
pub use reduced_words::{enumerate, ReducedWord, WordSet, DEFAULT_WORD_CAP};
pub use scan::{scan, CheckSet, ScanOptions, ScanReport};
pub use weak_order::{interval, WeakInterval};
