//! Exhaustive verification over all of `S_n`.
//!
//! Each permutation yields one [`ScanRecord`]. Records are produced in
//! lexicographic window order regardless of the worker count, and written as
//! JSON Lines: a header line with the scan options, one line per record, and
//! a closing [`ScanReport`].

use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characterizations::{
    count_lower, count_upper, lower_predicate_from_words, upper_predicate, Analysis, LowerTemplates,
};
use crate::classes::{braid_class_shape, verify_braid_class_graph};
use crate::error::{Error, Result};
use crate::graphs::{build_word_graph, contract, verify_jump_property};
use crate::moves::MoveKind;
use crate::permutation::Permutation;
use crate::reduced_words::DEFAULT_WORD_CAP;
use crate::weak_order::{
    interval_by_closure, interval_from_words, support, ConjectureConditions, ConjectureOutcome, ConjectureSide,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` accepted unless configured otherwise.
pub const DEFAULT_MAX_N: usize = 10;

/// How much work is done per permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSet {
    /// Enumeration-free predicates only.
    Predicates,
    /// Predicates plus everything that needs `R(w)`: bounds, classes,
    /// graphs, the table, and predicate cross-checks.
    Enumeration,
    /// Enumeration checks plus weak-order intervals and the width/support
    /// criterion.
    Full,
}

impl CheckSet {
    fn enumerates(self) -> bool {
        self != CheckSet::Predicates
    }

    fn weak_order(self) -> bool {
        self == CheckSet::Full
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub n: usize,
    pub word_cap: u64,
    pub checks: CheckSet,
    pub workers: usize,
    pub output_path: Option<PathBuf>,
    /// Continue an interrupted run found at `output_path`.
    pub resume: bool,
    pub max_n: usize,
}

impl ScanOptions {
    pub fn new(n: usize) -> Self {
        ScanOptions {
            n,
            word_cap: DEFAULT_WORD_CAP,
            checks: CheckSet::Full,
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            output_path: None,
            resume: false,
            max_n: DEFAULT_MAX_N,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ZeroRank);
        }
        if self.n > self.max_n {
            return Err(Error::RankTooLarge {
                n: self.n,
                max: self.max_n,
            });
        }
        if self.word_cap == 0 {
            return Err(Error::Config("word cap must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("at least one worker is required".into()));
        }
        if self.resume && self.output_path.is_none() {
            return Err(Error::Config("resuming needs an output path".into()));
        }
        Ok(())
    }

    fn header(&self) -> ScanHeader {
        ScanHeader {
            schema: SCHEMA_VERSION,
            n: self.n,
            word_cap: self.word_cap,
            checks: self.checks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHeader {
    pub schema: u32,
    pub n: usize,
    pub word_cap: u64,
    pub checks: CheckSet,
}

/// Results for one permutation. Enumeration-based fields are `None` when
/// the check set excludes them or `|R(w)|` exceeds the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub schema: u32,
    pub window: Permutation,
    pub length: usize,
    pub avoids_321: bool,
    pub inversions_share_letter: bool,
    pub upper_predicate: bool,
    pub lower_predicate: bool,
    pub r: Option<u64>,
    pub b: Option<u64>,
    pub c: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_count: Option<u128>,
    /// From the counts when enumerated, otherwise from the predicates.
    pub achieves_upper: bool,
    pub achieves_lower: bool,
    pub circuit_free: Option<bool>,
    pub width: Option<usize>,
    pub support_size: Option<usize>,
    pub conjecture: Option<ConjectureOutcome>,
    /// Braid classes that are not a product of two- and three-vertex paths
    /// of total size `2^x 3^y`, `3x + 5y <= length`. Such classes exist from
    /// `n = 5` on, so they are tallied rather than treated as violations.
    pub irregular_braid_classes: Option<u64>,
    pub violations: Vec<String>,
}

impl ScanRecord {
    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormMatch {
    pub upper: bool,
    pub lower: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub window: Permutation,
    pub side: ConjectureSide,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSummary {
    pub checked: u64,
    pub agree: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub n: usize,
    pub checks: CheckSet,
    pub word_cap: u64,
    pub total: u64,
    pub enumerated_count: u64,
    pub skipped_count: u64,
    pub upper_achiever_count: u64,
    pub lower_achiever_count: u64,
    pub closed_form_upper: u64,
    pub closed_form_lower: u64,
    pub closed_form_match: ClosedFormMatch,
    /// Every permutation was enumerated, so the counts were also confirmed
    /// against `R(w)` directly.
    pub enumeration_complete: bool,
    pub violation_count: u64,
    pub irregular_braid_classes: u64,
    /// First permutation (in scan order) with an irregular braid class.
    pub first_irregular: Option<Permutation>,
    pub conjecture: Option<ConjectureSummary>,
}

impl ScanReport {
    /// Aligned key/value table for terminals.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("checks".into(), format!("{:?}", self.checks).to_lowercase()),
            ("permutations".into(), self.total.to_string()),
            ("enumerated".into(), self.enumerated_count.to_string()),
            ("skipped (cap)".into(), self.skipped_count.to_string()),
            (
                "upper achievers".into(),
                format!(
                    "{} (closed form {}, {})",
                    self.upper_achiever_count,
                    self.closed_form_upper,
                    if self.closed_form_match.upper {
                        "match"
                    } else {
                        "MISMATCH"
                    }
                ),
            ),
            (
                "lower achievers".into(),
                format!(
                    "{} (closed form {}, {})",
                    self.lower_achiever_count,
                    self.closed_form_lower,
                    if self.closed_form_match.lower {
                        "match"
                    } else {
                        "MISMATCH"
                    }
                ),
            ),
            ("violations".into(), self.violation_count.to_string()),
            (
                "irregular braid classes".into(),
                match &self.first_irregular {
                    Some(w) => format!("{} (first at {w})", self.irregular_braid_classes),
                    None => "0".into(),
                },
            ),
        ];
        if let Some(c) = &self.conjecture {
            rows.push(("conjecture checked".into(), c.checked.to_string()));
            rows.push(("conjecture agree".into(), c.agree.to_string()));
            rows.push(("counterexamples".into(), c.counterexamples.len().to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if let Some(c) = &self.conjecture {
            for ce in &c.counterexamples {
                let outcome = ConjectureOutcome::Counterexample(ce.side);
                let _ = writeln!(out, "!! {} {}", ce.window, outcome);
            }
        }
        out
    }
}

/// One line of scan output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScanLine {
    Header(ScanHeader),
    Record(Box<ScanRecord>),
    Report(ScanReport),
}

/// Runs the selected checks on single permutations of a fixed `S_n`.
pub struct Verifier {
    checks: CheckSet,
    cap: u64,
    templates: LowerTemplates,
}

impl Verifier {
    pub fn new(n: usize, checks: CheckSet, cap: u64) -> Result<Self> {
        Ok(Verifier {
            checks,
            cap,
            templates: LowerTemplates::new(n)?,
        })
    }

    pub fn verify(&self, w: &Permutation) -> ScanRecord {
        let avoids_321 = w.is_321_avoiding();
        let share = w.inversions_pairwise_share_letter();
        let upper = upper_predicate(w);
        let lower = self.templates.lower_predicate(w);
        let mut record = ScanRecord {
            schema: SCHEMA_VERSION,
            window: w.clone(),
            length: w.length(),
            avoids_321,
            inversions_share_letter: share,
            upper_predicate: upper,
            lower_predicate: lower,
            r: None,
            b: None,
            c: None,
            skipped: None,
            word_count: None,
            achieves_upper: upper,
            achieves_lower: lower,
            circuit_free: None,
            width: None,
            support_size: None,
            conjecture: None,
            irregular_braid_classes: None,
            violations: Vec::new(),
        };
        if upper && !lower {
            record
                .violations
                .push("upper predicate holds without lower predicate".into());
        }
        if self.checks.enumerates() {
            match Analysis::new(w, Some(self.cap)) {
                Ok(analysis) => self.check_enumerated(&analysis, &mut record),
                Err(Error::TooLarge { count, .. }) => {
                    record.skipped = Some("cap".into());
                    record.word_count = Some(count);
                }
                Err(e) => record.violations.push(e.to_string()),
            }
        }
        record
    }

    fn check_enumerated(&self, analysis: &Analysis, record: &mut ScanRecord) {
        let w = &record.window;
        let words = &analysis.words;
        let violations = &mut record.violations;
        let mut fail = |ok: bool, what: &str| {
            if !ok {
                violations.push(what.to_string());
            }
        };
        let (r, b, c) = (
            words.len() as u64,
            analysis.braid.len() as u64,
            analysis.commutation.len() as u64,
        );
        record.r = Some(r);
        record.b = Some(b);
        record.c = Some(c);

        match analysis.status() {
            Ok(status) => {
                record.achieves_upper = status.achieves_upper;
                record.achieves_lower = status.achieves_lower;
            }
            Err(e) => fail(false, &e.to_string()),
        }
        let (upper, lower) = (record.achieves_upper, record.achieves_lower);

        let length = words.word_length();
        let irregular = analysis
            .braid
            .classes()
            .iter()
            .filter(|class| braid_class_shape(class, length).is_err() || !verify_braid_class_graph(class, words))
            .count();

        match build_word_graph(words) {
            Ok(g) => {
                fail(g.is_connected(), "G(w) is not connected");
                let gc = contract(&g, MoveKind::Commutation);
                let gb = contract(&g, MoveKind::Braid);
                fail(gc.is_bipartite(), "G_c(w) is not bipartite");
                fail(gb.is_bipartite(), "G_b(w) is not bipartite");
                fail(gc.vertex_count() as u64 == c, "G_c(w) vertices differ from |C(w)|");
                fail(gb.vertex_count() as u64 == b, "G_b(w) vertices differ from |B(w)|");
            }
            Err(e) => fail(false, &e.to_string()),
        }

        match analysis.gamma() {
            Ok(gamma) => {
                fail(gamma.edge_count() as u64 == r, "Γ(w) edge count differs from |R(w)|");
                fail(gamma.is_connected(), "Γ(w) is not connected");
                let circuit_free = gamma.is_tree();
                record.circuit_free = Some(circuit_free);
                fail(circuit_free == lower, "circuit-freeness disagrees with the lower bound");
                fail(
                    circuit_free == record.lower_predicate,
                    "lower predicate disagrees with circuit-freeness",
                );
                fail(
                    lower_predicate_from_words(words) == circuit_free,
                    "template match over R(w) disagrees with circuit-freeness",
                );
            }
            Err(e) => fail(false, &e.to_string()),
        }

        match analysis.table() {
            Ok(t) => fail(verify_jump_property(&t), "T(w) lacks the jump property"),
            Err(e) => fail(false, &e.to_string()),
        }

        fail(
            upper == (b == 1 || c == 1),
            "upper bound not equivalent to a single class",
        );
        fail(
            upper == record.upper_predicate,
            "upper predicate disagrees with the upper bound",
        );
        fail(!upper || lower, "upper bound attained without the lower bound");
        fail((c == 1) == record.avoids_321, "|C(w)| = 1 disagrees with 321-avoidance");
        fail(
            (b == 1) == record.inversions_share_letter,
            "|B(w)| = 1 disagrees with pairwise-sharing inversions",
        );
        fail(c != 1 || b == r, "|C(w)| = 1 but |B(w)| != |R(w)|");
        fail(b != 1 || c == r, "|B(w)| = 1 but |C(w)| != |R(w)|");

        record.irregular_braid_classes = Some(irregular as u64);
        if self.checks.weak_order() {
            let iv = interval_from_words(words);
            fail(
                iv.rank_sizes.first() == Some(&1) && iv.rank_sizes.last() == Some(&1),
                "end ranks of [e,w] are not singletons",
            );
            fail(
                words.iter().all(|u| support(u) == iv.support_size),
                "reduced words disagree on support",
            );
            fail(
                iv == interval_by_closure(w),
                "prefix interval differs from downward closure",
            );
            record.width = Some(iv.width);
            record.support_size = Some(iv.support_size);
            if let Some(circuit_free) = record.circuit_free {
                let conditions = ConjectureConditions::evaluate(w, &iv);
                record.conjecture = Some(ConjectureOutcome::compare(conditions.any(), circuit_free));
            }
        }
    }
}

/// Runs all checks on one permutation.
pub fn verify_permutation(w: &Permutation, checks: CheckSet, cap: u64) -> Result<ScanRecord> {
    Ok(Verifier::new(w.n(), checks, cap)?.verify(w))
}

#[derive(Default)]
struct Tally {
    total: u64,
    enumerated: u64,
    skipped: u64,
    upper: u64,
    lower: u64,
    violations: u64,
    irregular: u64,
    first_irregular: Option<Permutation>,
    conjecture: ConjectureSummary,
}

impl Tally {
    fn add(&mut self, record: &ScanRecord) {
        self.total += 1;
        if record.r.is_some() {
            self.enumerated += 1;
        }
        if record.is_skipped() {
            self.skipped += 1;
        }
        self.upper += record.achieves_upper as u64;
        self.lower += record.achieves_lower as u64;
        self.violations += record.violations.len() as u64;
        if let Some(k @ 1..) = record.irregular_braid_classes {
            self.irregular += k;
            self.first_irregular.get_or_insert_with(|| record.window.clone());
        }
        if let Some(outcome) = record.conjecture {
            self.conjecture.checked += 1;
            match outcome {
                ConjectureOutcome::Agree => self.conjecture.agree += 1,
                ConjectureOutcome::Counterexample(side) => self.conjecture.counterexamples.push(Counterexample {
                    window: record.window.clone(),
                    side,
                }),
            }
        }
    }

    fn report(self, options: &ScanOptions) -> Result<ScanReport> {
        let closed_form_upper = count_upper(options.n)?;
        let closed_form_lower = count_lower(options.n)?;
        Ok(ScanReport {
            schema: SCHEMA_VERSION,
            n: options.n,
            checks: options.checks,
            word_cap: options.word_cap,
            total: self.total,
            enumerated_count: self.enumerated,
            skipped_count: self.skipped,
            upper_achiever_count: self.upper,
            lower_achiever_count: self.lower,
            closed_form_upper,
            closed_form_lower,
            closed_form_match: ClosedFormMatch {
                upper: self.upper == closed_form_upper,
                lower: self.lower == closed_form_lower,
            },
            enumeration_complete: self.enumerated == self.total,
            violation_count: self.violations,
            irregular_braid_classes: self.irregular,
            first_irregular: self.first_irregular,
            conjecture: options.checks.weak_order().then_some(self.conjecture),
        })
    }
}

/// Verifies `S_n` in lexicographic order starting after the first `skip`
/// permutations, handing records to `sink` in order. Stops with
/// [`Error::Invariant`] right after the first record carrying violations.
pub fn scan_records(options: &ScanOptions, skip: usize, mut sink: impl FnMut(&ScanRecord) -> Result<()>) -> Result<()> {
    options.validate()?;
    let verifier = Verifier::new(options.n, options.checks, options.word_cap)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let chunk_len = 64 * options.workers;
    let mut perms = Permutation::all(options.n)?.skip(skip).peekable();
    while perms.peek().is_some() {
        let chunk: Vec<Permutation> = perms.by_ref().take(chunk_len).collect();
        let records: Vec<ScanRecord> = pool.install(|| chunk.par_iter().map(|w| verifier.verify(w)).collect());
        for record in &records {
            sink(record)?;
            if !record.violations.is_empty() {
                return Err(Error::Invariant(format!(
                    "{}: {}",
                    record.window,
                    record.violations.join("; ")
                )));
            }
        }
    }
    Ok(())
}

fn write_line(out: &mut impl Write, line: &ScanLine) -> Result<()> {
    serde_json::to_writer(&mut *out, line)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Writes a complete JSON Lines scan to `out`.
pub fn scan_to_writer(options: &ScanOptions, out: &mut impl Write) -> Result<ScanReport> {
    options.validate()?;
    write_line(out, &ScanLine::Header(options.header()))?;
    let report = continue_scan(options, Tally::default(), 0, out)?;
    Ok(report)
}

fn continue_scan(options: &ScanOptions, mut tally: Tally, skip: usize, out: &mut impl Write) -> Result<ScanReport> {
    let result = scan_records(options, skip, |record| {
        tally.add(record);
        write_line(out, &ScanLine::Record(Box::new(record.clone())))
    });
    if let Err(e) = result {
        out.flush()?;
        return Err(e);
    }
    let report = tally.report(options)?;
    write_line(out, &ScanLine::Report(report.clone()))?;
    out.flush()?;
    Ok(report)
}

/// Runs a scan. With an output path, records go to that file; with
/// `resume`, an existing partial file there is continued in place.
pub fn scan(options: &ScanOptions) -> Result<ScanReport> {
    options.validate()?;
    match &options.output_path {
        None => {
            let mut tally = Tally::default();
            scan_records(options, 0, |record| {
                tally.add(record);
                Ok(())
            })?;
            tally.report(options)
        }
        Some(path) if options.resume && path.exists() => resume(options, path),
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            scan_to_writer(options, &mut out)
        }
    }
}

fn resume(options: &ScanOptions, path: &Path) -> Result<ScanReport> {
    let mut content = Vec::new();
    File::open(path)?.read_to_end(&mut content)?;

    let mut valid_len = 0;
    let mut lines = Vec::new();
    for raw in content.split_inclusive(|&b| b == b'\n') {
        if raw.last() != Some(&b'\n') {
            break;
        }
        match serde_json::from_slice::<ScanLine>(raw) {
            Ok(line) => lines.push(line),
            Err(_) => break,
        }
        valid_len += raw.len();
    }

    let mut lines = lines.into_iter();
    match lines.next() {
        Some(ScanLine::Header(h)) if h == options.header() => {}
        Some(ScanLine::Header(h)) => {
            return Err(Error::Resume(format!(
                "existing output was produced with different options ({h:?})"
            )))
        }
        Some(_) => return Err(Error::Resume("existing output does not start with a header".into())),
        None => {
            let mut out = BufWriter::new(File::create(path)?);
            return scan_to_writer(options, &mut out);
        }
    }

    let mut tally = Tally::default();
    let mut expected = Permutation::all(options.n)?;
    let mut done = 0;
    for line in lines {
        match line {
            ScanLine::Record(record) => {
                if expected.next().as_ref() != Some(&record.window) {
                    return Err(Error::Resume(format!("unexpected record for {}", record.window)));
                }
                tally.add(&record);
                done += 1;
            }
            ScanLine::Report(report) => return Ok(report),
            ScanLine::Header(_) => return Err(Error::Resume("repeated header".into())),
        }
    }

    let file = OpenOptions::new().write(true).open(path)?;
    file.set_len(valid_len as u64)?;
    drop(file);
    let mut out = BufWriter::new(OpenOptions::new().append(true).open(path)?);
    continue_scan(options, tally, done, &mut out)
}

/// Parses the lines of a scan output file.
pub fn read_scan(path: &Path) -> Result<Vec<ScanLine>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn options(n: usize, workers: usize) -> ScanOptions {
        ScanOptions {
            workers,
            ..ScanOptions::new(n)
        }
    }

    #[test]
    fn record_for_25314() {
        let r = verify_permutation(&"[25314]".parse().unwrap(), CheckSet::Full, DEFAULT_WORD_CAP).unwrap();
        assert_eq!((r.r, r.b, r.c), (Some(6), Some(4), Some(2)));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(!r.achieves_lower && !r.achieves_upper);
        assert_eq!(r.circuit_free, Some(false));
        assert_eq!(r.conjecture, Some(ConjectureOutcome::Agree));
    }

    #[test]
    fn identity_record() {
        let r = verify_permutation(&Permutation::identity(4).unwrap(), CheckSet::Full, 10).unwrap();
        assert_eq!((r.r, r.b, r.c), (Some(1), Some(1), Some(1)));
        assert!(r.achieves_lower && r.achieves_upper);
        assert_eq!((r.width, r.support_size), (Some(1), Some(0)));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn capped_record_is_skipped() {
        let r = verify_permutation(&Permutation::longest(7).unwrap(), CheckSet::Full, DEFAULT_WORD_CAP).unwrap();
        assert!(r.is_skipped());
        assert_eq!(r.word_count, Some(1_100_742_656));
        assert_eq!(r.r, None);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn small_scans() {
        let report = scan(&options(1, 1)).unwrap();
        assert_eq!((report.upper_achiever_count, report.lower_achiever_count), (1, 1));
        let report = scan(&options(4, 2)).unwrap();
        assert_eq!((report.upper_achiever_count, report.lower_achiever_count), (16, 23));
        assert!(report.closed_form_match.upper && report.closed_form_match.lower);
        assert!(report.enumeration_complete);
        assert_eq!(report.violation_count, 0);
    }

    #[test]
    fn option_validation() {
        assert!(ScanOptions::new(0).validate().is_err());
        assert!(ScanOptions::new(11).validate().is_err());
        assert!(ScanOptions {
            word_cap: 0,
            ..ScanOptions::new(3)
        }
        .validate()
        .is_err());
        assert!(ScanOptions {
            workers: 0,
            ..ScanOptions::new(3)
        }
        .validate()
        .is_err());
        assert!(ScanOptions {
            resume: true,
            ..ScanOptions::new(3)
        }
        .validate()
        .is_err());
        assert!(ScanOptions {
            max_n: 12,
            ..ScanOptions::new(11)
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn report_text_mentions_counts() {
        let report = scan(&options(3, 1)).unwrap();
        let text = report.to_text();
        assert!(text.contains("upper achievers"));
        assert!(text.contains("6 (closed form 6, match)"));
    }
}
