//! The move graph `G(w)`, its contractions `G_c(w)` and `G_b(w)`, the
//! class incidence graph `Γ(w)`, and the intersection table `T(w)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::classes::ClassPartition;
use crate::error::{Error, Result};
use crate::moves::{for_each_neighbor, MoveKind};
use crate::reduced_words::{format_word, WordSet};
use crate::union_find::{labels, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Braid,
    Commutation,
    Incidence,
}

impl From<MoveKind> for EdgeKind {
    fn from(kind: MoveKind) -> Self {
        match kind {
            MoveKind::Braid => EdgeKind::Braid,
            MoveKind::Commutation => EdgeKind::Commutation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// An undirected graph with labeled vertices and kind-tagged edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertex_labels: Vec<String>,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn count_edges(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        let mut components = n;
        for e in &self.edges {
            if uf.union(e.u, e.v) {
                components -= 1;
            }
        }
        components == 1
    }

    /// Two-colors every component by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![u8::MAX; adj.len()];
        let mut queue = VecDeque::new();
        for start in 0..adj.len() {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if color[b] == u8::MAX {
                        color[b] = 1 - color[a];
                        queue.push_back(b);
                    } else if color[b] == color[a] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }
}

/// `G(w)`: one vertex per reduced word, one edge per pair of words related
/// by a single move.
pub fn build_word_graph(words: &WordSet) -> Result<LabeledGraph> {
    let mut edges = Vec::new();
    let mut scratch = Vec::new();
    let mut missing = None;
    for (a, word) in words.iter().enumerate() {
        for_each_neighbor(word, &mut scratch, |mv, v| match words.index_of(v) {
            Some(b) if a < b => edges.push(Edge {
                u: a,
                v: b,
                kind: mv.kind.into(),
                label: None,
            }),
            Some(_) => {}
            None => missing = Some(format_word(v, words.n())),
        });
        if let Some(v) = missing.take() {
            return Err(Error::Invariant(format!(
                "{v} is one move away from R({}) but not in it",
                words.target()
            )));
        }
    }
    Ok(LabeledGraph {
        vertex_labels: words.to_strings(),
        edges,
    })
}

/// Contracts every edge of `kind`. Contracting commutation edges of `G(w)`
/// gives `G_c(w)`; contracting braid edges gives `G_b(w)`. Components are
/// numbered by their smallest vertex and labeled `{a,b,...}`; surviving
/// edges between distinct components are deduplicated.
pub fn contract(g: &LabeledGraph, kind: MoveKind) -> LabeledGraph {
    let kind = EdgeKind::from(kind);
    let mut uf = UnionFind::new(g.vertex_count());
    for e in g.edges.iter().filter(|e| e.kind == kind) {
        uf.union(e.u, e.v);
    }
    let (component, count) = labels(&uf, g.vertex_count());
    let mut members = vec![Vec::new(); count];
    for (v, &c) in component.iter().enumerate() {
        members[c].push(g.vertex_labels[v].as_str());
    }
    let vertex_labels = members.iter().map(|m| format!("{{{}}}", m.join(","))).collect();
    let mut kept = BTreeSet::new();
    for e in g.edges.iter().filter(|e| e.kind != kind) {
        let (a, b) = (component[e.u], component[e.v]);
        if a != b {
            kept.insert((a.min(b), a.max(b), e.kind));
        }
    }
    LabeledGraph {
        vertex_labels,
        edges: kept
            .into_iter()
            .map(|(u, v, kind)| Edge {
                u,
                v,
                kind,
                label: None,
            })
            .collect(),
    }
}

/// `Γ(w)`: vertices `B1..Bb` then `C1..Cc`, with one edge per reduced word
/// joining its braid class to its commutation class.
pub fn build_gamma(bp: &ClassPartition, cp: &ClassPartition, words: &WordSet) -> Result<LabeledGraph> {
    check_partitions(bp, cp, words)?;
    let b = bp.len();
    let mut vertex_labels: Vec<String> = (1..=b).map(|k| format!("B{k}")).collect();
    vertex_labels.extend((1..=cp.len()).map(|k| format!("C{k}")));
    let mut seen = HashSet::with_capacity(words.len());
    let mut edges = Vec::with_capacity(words.len());
    for k in 0..words.len() {
        let (row, col) = (bp.class_of(k), cp.class_of(k));
        if !seen.insert((row, col)) {
            return Err(Error::Invariant(format!(
                "B{} and C{} share more than one word",
                row + 1,
                col + 1
            )));
        }
        edges.push(Edge {
            u: row,
            v: b + col,
            kind: EdgeKind::Incidence,
            label: Some(words.format(k)),
        });
    }
    Ok(LabeledGraph { vertex_labels, edges })
}

fn check_partitions(bp: &ClassPartition, cp: &ClassPartition, words: &WordSet) -> Result<()> {
    let sizes = |p: &ClassPartition| p.classes().iter().map(Vec::len).sum::<usize>();
    if bp.kind() != MoveKind::Braid || cp.kind() != MoveKind::Commutation {
        return Err(Error::Config(
            "expected a braid partition and a commutation partition".into(),
        ));
    }
    if sizes(bp) != words.len() || sizes(cp) != words.len() {
        return Err(Error::Config("partitions do not cover the same word set".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    /// Index of the occupying word (or any caller-chosen payload).
    pub item: usize,
}

/// A sparse `rows x cols` array holding at most one item per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl IntersectionTable {
    pub fn from_cells(
        rows: usize,
        cols: usize,
        cells: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut cells: Vec<Cell> = cells
            .into_iter()
            .map(|(row, col, item)| Cell { row, col, item })
            .collect();
        if let Some(c) = cells.iter().find(|c| c.row >= rows || c.col >= cols) {
            return Err(Error::Config(format!(
                "cell ({}, {}) lies outside a {rows}x{cols} table",
                c.row, c.col
            )));
        }
        cells.sort_unstable();
        if let Some(pair) = cells.windows(2).find(|p| (p[0].row, p[0].col) == (p[1].row, p[1].col)) {
            return Err(Error::Invariant(format!(
                "cell ({}, {}) would hold two items",
                pair[0].row + 1,
                pair[0].col + 1
            )));
        }
        Ok(IntersectionTable { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Occupied cells in row-major order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn nonempty_count(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.cells
            .binary_search_by(|c| (c.row, c.col).cmp(&(row, col)))
            .ok()
            .map(|k| self.cells[k].item)
    }

    /// Row-major dense rendering with word strings in occupied cells.
    pub fn to_dense(&self, words: &WordSet) -> Vec<Vec<Option<String>>> {
        let mut dense = vec![vec![None; self.cols]; self.rows];
        for c in &self.cells {
            dense[c.row][c.col] = Some(words.format(c.item));
        }
        dense
    }
}

/// `T(w)`: rows are braid classes, columns commutation classes, both in
/// representative order; each word sits in the cell of its two classes.
pub fn build_table(bp: &ClassPartition, cp: &ClassPartition, words: &WordSet) -> Result<IntersectionTable> {
    check_partitions(bp, cp, words)?;
    IntersectionTable::from_cells(
        bp.len(),
        cp.len(),
        (0..words.len()).map(|k| (bp.class_of(k), cp.class_of(k), k)),
    )
}

/// True iff every row and column is occupied, occupied cells are mutually
/// reachable by in-row and in-column jumps, and at least
/// `rows + cols - 1` cells are occupied.
pub fn verify_jump_property(t: &IntersectionTable) -> bool {
    let mut by_row = vec![Vec::<usize>::new(); t.rows];
    let mut by_col = vec![Vec::<usize>::new(); t.cols];
    for (k, c) in t.cells.iter().enumerate() {
        by_row[c.row].push(k);
        by_col[c.col].push(k);
    }
    if by_row.iter().chain(&by_col).any(Vec::is_empty) {
        return false;
    }
    if t.cells.is_empty() {
        return true;
    }
    let mut reached = vec![false; t.cells.len()];
    let mut row_done = vec![false; t.rows];
    let mut col_done = vec![false; t.cols];
    let mut queue = VecDeque::from([0]);
    reached[0] = true;
    let mut count = 1;
    while let Some(k) = queue.pop_front() {
        let Cell { row, col, .. } = t.cells[k];
        let mut jumps: Vec<usize> = Vec::new();
        if !row_done[row] {
            row_done[row] = true;
            jumps.extend(&by_row[row]);
        }
        if !col_done[col] {
            col_done[col] = true;
            jumps.extend(&by_col[col]);
        }
        for j in jumps {
            if !reached[j] {
                reached[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    count == t.cells.len() && t.cells.len() + 1 >= t.rows + t.cols
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotStyle {
    /// Vertices are words.
    Word,
    /// Vertices are classes.
    Class,
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT text. Braid edges are dashed, commutation edges solid,
/// incidence edges carry their witness word as a label.
pub fn export_dot(g: &LabeledGraph, style: DotStyle) -> String {
    let mut out = String::from("graph G {\n");
    if g.vertex_count() > 0 {
        let shape = match style {
            DotStyle::Word => "ellipse",
            DotStyle::Class => "box",
        };
        let _ = writeln!(out, "  node [shape={shape}];");
    }
    for label in &g.vertex_labels {
        let _ = writeln!(out, "  {};", quote(label));
    }
    for e in &g.edges {
        let u = quote(&g.vertex_labels[e.u]);
        let v = quote(&g.vertex_labels[e.v]);
        let attrs = match (e.kind, &e.label) {
            (EdgeKind::Braid, _) => " [style=dashed]".to_string(),
            (EdgeKind::Commutation, _) | (EdgeKind::Incidence, None) => String::new(),
            (EdgeKind::Incidence, Some(w)) => format!(" [label={}]", quote(w)),
        };
        let _ = writeln!(out, "  {u} -- {v}{attrs};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::partition;
    use crate::permutation::Permutation;
    use crate::reduced_words::enumerate;

    struct Fixture {
        words: WordSet,
        bp: ClassPartition,
        cp: ClassPartition,
    }

    fn fixture(s: &str) -> Fixture {
        let words = enumerate(&s.parse::<Permutation>().unwrap(), None).unwrap();
        let bp = partition(&words, MoveKind::Braid).unwrap();
        let cp = partition(&words, MoveKind::Commutation).unwrap();
        Fixture { words, bp, cp }
    }

    #[test]
    fn word_graph_of_25314() {
        let f = fixture("[25314]");
        let g = build_word_graph(&f.words).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.count_edges(EdgeKind::Commutation), 4);
        assert_eq!(g.count_edges(EdgeKind::Braid), 2);
        assert!(g.is_connected());
        assert!(!g.is_tree());
    }

    #[test]
    fn small_word_graphs() {
        let g = build_word_graph(&fixture("[123]").words).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert!(g.is_tree());
        let g = build_word_graph(&fixture("[321]").words).unwrap();
        assert_eq!(g.vertex_labels, ["121", "212"]);
        assert_eq!(g.count_edges(EdgeKind::Braid), 1);
    }

    #[test]
    fn contractions_of_25314() {
        let g = build_word_graph(&fixture("[25314]").words).unwrap();
        let gc = contract(&g, MoveKind::Commutation);
        assert_eq!(gc.vertex_labels, ["{12432,14232,41232}", "{14323,41323,43123}"]);
        assert_eq!(gc.edge_count(), 1);
        let gb = contract(&g, MoveKind::Braid);
        assert_eq!(gb.vertex_count(), 4);
        assert!(gb.is_tree());
        // path: every vertex has degree at most 2
        let mut degree = [0; 4];
        for e in &gb.edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        assert_eq!(degree.iter().filter(|&&d| d == 1).count(), 2);
        assert!(gc.is_bipartite() && gb.is_bipartite());
        let edgeless = LabeledGraph {
            vertex_labels: vec!["a".into(), "b".into()],
            edges: vec![],
        };
        assert_eq!(contract(&edgeless, MoveKind::Braid).vertex_labels, ["{a}", "{b}"]);
    }

    #[test]
    fn predicates() {
        let triangle = LabeledGraph {
            vertex_labels: vec!["a".into(), "b".into(), "c".into()],
            edges: [(0, 1), (1, 2), (0, 2)]
                .into_iter()
                .map(|(u, v)| Edge {
                    u,
                    v,
                    kind: EdgeKind::Commutation,
                    label: None,
                })
                .collect(),
        };
        assert!(triangle.is_connected());
        assert!(!triangle.is_bipartite());
        assert!(!triangle.is_tree());
        let single = LabeledGraph {
            vertex_labels: vec!["x".into()],
            edges: vec![],
        };
        assert!(single.is_tree());
    }

    #[test]
    fn gamma_and_table_of_25314() {
        let f = fixture("[25314]");
        let gamma = build_gamma(&f.bp, &f.cp, &f.words).unwrap();
        assert_eq!(gamma.vertex_labels, ["B1", "B2", "B3", "B4", "C1", "C2"]);
        assert_eq!(gamma.edge_count(), 6);
        assert!(gamma.is_connected());
        assert!(!gamma.is_tree());

        let t = build_table(&f.bp, &f.cp, &f.words).unwrap();
        assert_eq!((t.rows(), t.cols(), t.nonempty_count()), (4, 2, 6));
        let dense = t.to_dense(&f.words);
        let s = |x: &str| Some(x.to_string());
        assert_eq!(
            dense,
            vec![
                vec![s("12432"), None],
                vec![s("14232"), s("14323")],
                vec![s("41232"), s("41323")],
                vec![None, s("43123")],
            ]
        );
        assert!(verify_jump_property(&t));
    }

    #[test]
    fn identity_gamma_and_table() {
        let f = fixture("[1234]");
        let gamma = build_gamma(&f.bp, &f.cp, &f.words).unwrap();
        assert_eq!((gamma.vertex_count(), gamma.edge_count()), (2, 1));
        assert!(gamma.is_tree());
        let t = build_table(&f.bp, &f.cp, &f.words).unwrap();
        assert_eq!((t.rows(), t.cols(), t.get(0, 0)), (1, 1, Some(0)));
        assert!(verify_jump_property(&t));
    }

    #[test]
    fn fully_commutative_table_is_one_column() {
        let f = fixture("[241563]");
        let t = build_table(&f.bp, &f.cp, &f.words).unwrap();
        assert_eq!((t.rows(), t.cols(), t.nonempty_count()), (9, 1, 9));
    }

    #[test]
    fn jump_property_failures() {
        // empty row
        let t = IntersectionTable::from_cells(2, 1, [(0, 0, 0)]).unwrap();
        assert!(!verify_jump_property(&t));
        // disconnected diagonal
        let t = IntersectionTable::from_cells(2, 2, [(0, 0, 0), (1, 1, 1)]).unwrap();
        assert!(!verify_jump_property(&t));
        assert!(IntersectionTable::from_cells(1, 1, [(0, 0, 0), (0, 0, 1)]).is_err());
        assert!(IntersectionTable::from_cells(1, 1, [(0, 1, 0)]).is_err());
    }

    #[test]
    fn dot_output() {
        let f = fixture("[25314]");
        let g = build_word_graph(&f.words).unwrap();
        let dot = export_dot(&g, DotStyle::Word);
        assert!(dot.starts_with("graph G {\n"));
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("  \"14232\" -- \"14323\" [style=dashed];\n"));
        assert_eq!(export_dot(&g, DotStyle::Word), dot);
        assert_eq!(export_dot(&LabeledGraph::default(), DotStyle::Word), "graph G {\n}\n");
        let gamma = build_gamma(&f.bp, &f.cp, &f.words).unwrap();
        let dot = export_dot(&gamma, DotStyle::Class);
        assert!(dot.contains("  \"B1\" -- \"C1\" [label=\"12432\"];\n"));
        assert_eq!(
            dot.lines()
                .filter(|l| l.ends_with(';') && !l.contains("--") && !l.contains("node"))
                .count(),
            6
        );
    }
}
