use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use redword::characterizations::{
    catalan, count_lower, count_upper, is_single_braid, lower_predicate_pattern, upper_predicate, Analysis,
};
use redword::graphs::{build_word_graph, contract, export_dot, DotStyle, LabeledGraph};
use redword::scan::{scan, scan_to_writer, CheckSet, ScanOptions, ScanReport, DEFAULT_MAX_N};
use redword::weak_order::{interval_from_words, ConjectureConditions, ConjectureOutcome};
use redword::{enumerate, Error, MoveKind, Permutation, DEFAULT_WORD_CAP};

#[derive(Parser)]
#[command(
    name = "redword",
    version,
    about = "Reduced words, braid and commutation classes of permutations"
)]
struct Cli {
    /// Maximum number of reduced words to enumerate for one permutation.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_CAP)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat a permutation skipped for exceeding the cap as a failure.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Braid,
    Commutation,
}

impl From<Kind> for MoveKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Braid => MoveKind::Braid,
            Kind::Commutation => MoveKind::Commutation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Word,
    Gc,
    Gb,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Checks {
    Predicates,
    Enumeration,
    Full,
}

impl From<Checks> for CheckSet {
    fn from(c: Checks) -> Self {
        match c {
            Checks::Predicates => CheckSet::Predicates,
            Checks::Enumeration => CheckSet::Enumeration,
            Checks::Full => CheckSet::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List R(w) in lexicographic order.
    Words { permutation: Permutation },
    /// List the braid or commutation classes of R(w).
    Classes {
        #[arg(long, value_enum)]
        kind: Kind,
        permutation: Permutation,
    },
    /// Print the braid-by-commutation intersection table.
    Table { permutation: Permutation },
    /// Print G(w), G_c(w), G_b(w) or the incidence graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Which::Word)]
        which: Which,
        permutation: Permutation,
    },
    /// Class counts, attained bounds and every predicate.
    Check { permutation: Permutation },
    /// The lower interval [e, w] in right weak order.
    Interval { permutation: Permutation },
    /// Closed-form counts of permutations attaining each bound.
    Counts {
        #[arg(long)]
        n: usize,
    },
    /// Verify every permutation of S_n.
    Scan {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Checks::Full)]
        checks: Checks,
        /// Write JSON Lines here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Continue an interrupted scan in the output file.
        #[arg(long, requires = "output")]
        resume: bool,
    },
    /// Compare the width/support conditions with circuit-freeness on S_n.
    Conjecture {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

impl RunArgs {
    fn options(&self, cap: u64) -> ScanOptions {
        let mut o = ScanOptions::new(self.n);
        o.word_cap = cap;
        o.max_n = self.max_n;
        if let Some(w) = self.workers {
            o.workers = w;
        }
        o
    }
}

enum Failure {
    Usage(anyhow::Error),
    Invariant(String),
    Skipped(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Invariant(m)) => Failure::Invariant(m.clone()),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant violated: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Skipped(m)) => {
            eprintln!("skipped: {m}");
            ExitCode::from(3)
        }
    }
}

fn analyse(w: &Permutation, cli: &Cli) -> Result<Analysis, Failure> {
    match Analysis::new(w, Some(cli.cap)) {
        Err(Error::TooLarge { count, cap }) if cli.strict => Err(Failure::Skipped(format!(
            "{w} has {count} reduced words, more than --cap {cap}"
        ))),
        r => Ok(r.with_context(|| format!("analysing {w}"))?),
    }
}

fn print_json(out: &mut impl Write, value: &Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Usage(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(cli: &Cli, command: &str) -> Result<(), Failure> {
    let name = match cli.format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Csv => "csv",
    };
    Err(Failure::Usage(anyhow::anyhow!(
        "{command} does not support --format {name}"
    )))
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Words { permutation: w } => {
            let words = match enumerate(w, Some(cli.cap)) {
                Err(Error::TooLarge { count, cap }) if cli.strict => {
                    return Err(Failure::Skipped(format!(
                        "{w} has {count} reduced words, more than --cap {cap}"
                    )))
                }
                r => r.with_context(|| format!("enumerating {w}"))?,
            };
            match cli.format {
                Format::Text => {
                    for word in words.to_strings() {
                        writeln!(out, "{word}")?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "word")?;
                    for word in words.to_strings() {
                        writeln!(out, "{word}")?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "permutation": w.to_string(),
                        "length": w.length(),
                        "count": words.len(),
                        "words": words.to_strings(),
                    }),
                )?,
                Format::Dot => unsupported(cli, "words")?,
            }
        }
        Command::Classes { kind, permutation: w } => {
            let a = analyse(w, cli)?;
            let kind = MoveKind::from(*kind);
            let p = match kind {
                MoveKind::Braid => &a.braid,
                MoveKind::Commutation => &a.commutation,
            };
            let classes = p.to_strings(&a.words);
            match cli.format {
                Format::Text => {
                    for class in &classes {
                        writeln!(out, "{}", class.join(" "))?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "class,word")?;
                    for (k, class) in classes.iter().enumerate() {
                        for word in class {
                            writeln!(out, "{k},{word}")?;
                        }
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "permutation": w.to_string(),
                        "kind": kind,
                        "count": classes.len(),
                        "classes": classes,
                    }),
                )?,
                Format::Dot => unsupported(cli, "classes")?,
            }
        }
        Command::Table { permutation: w } => {
            let a = analyse(w, cli)?;
            let table = a.table()?;
            let dense = table.to_dense(&a.words);
            match cli.format {
                Format::Text => {
                    let width = a.words.word_length().max(1);
                    for row in &dense {
                        let cells: Vec<String> = row
                            .iter()
                            .map(|c| format!("{:<width$}", c.as_deref().unwrap_or(".")))
                            .collect();
                        writeln!(out, "{}", cells.join("  ").trim_end())?;
                    }
                }
                Format::Csv => {
                    for row in &dense {
                        let cells: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
                        writeln!(out, "{}", cells.join(","))?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "permutation": w.to_string(),
                        "rows": table.rows(),
                        "cols": table.cols(),
                        "braid_classes": a.braid.to_strings(&a.words),
                        "commutation_classes": a.commutation.to_strings(&a.words),
                        "cells": dense,
                    }),
                )?,
                Format::Dot => unsupported(cli, "table")?,
            }
        }
        Command::Graph { which, permutation: w } => {
            let a = analyse(w, cli)?;
            let (g, style): (LabeledGraph, DotStyle) = match which {
                Which::Word => (build_word_graph(&a.words)?, DotStyle::Word),
                Which::Gc => (
                    contract(&build_word_graph(&a.words)?, MoveKind::Commutation),
                    DotStyle::Class,
                ),
                Which::Gb => (contract(&build_word_graph(&a.words)?, MoveKind::Braid), DotStyle::Class),
                Which::Gamma => (a.gamma()?, DotStyle::Class),
            };
            match cli.format {
                Format::Dot => write!(out, "{}", export_dot(&g, style))?,
                Format::Json => print_json(out, &serde_json::to_value(&g).map_err(|e| Failure::Usage(e.into()))?)?,
                Format::Text | Format::Csv => {
                    let sep = if cli.format == Format::Csv { "," } else { " " };
                    if cli.format == Format::Csv {
                        writeln!(out, "u,v,kind,label")?;
                    }
                    for e in &g.edges {
                        let kind = serde_json::to_value(e.kind).map_err(|e| Failure::Usage(e.into()))?;
                        let mut line = [
                            g.vertex_labels[e.u].as_str(),
                            g.vertex_labels[e.v].as_str(),
                            kind.as_str().unwrap_or_default(),
                        ]
                        .join(sep);
                        if let Some(label) = &e.label {
                            line.push_str(sep);
                            line.push_str(label);
                        }
                        writeln!(out, "{line}")?;
                    }
                }
            }
        }
        Command::Check { permutation: w } => check(cli, w, out)?,
        Command::Interval { permutation: w } => {
            let a = analyse(w, cli)?;
            let iv = interval_from_words(&a.words);
            match cli.format {
                Format::Text => {
                    let sizes: Vec<String> = iv.rank_sizes.iter().map(ToString::to_string).collect();
                    writeln!(out, "permutation   {w}")?;
                    writeln!(out, "rank sizes    {}", sizes.join(" "))?;
                    writeln!(out, "size          {}", iv.size())?;
                    writeln!(out, "width         {}", iv.width)?;
                    writeln!(out, "support       {}", iv.support_size)?;
                }
                Format::Csv => {
                    writeln!(out, "rank,size")?;
                    for (k, s) in iv.rank_sizes.iter().enumerate() {
                        writeln!(out, "{k},{s}")?;
                    }
                }
                Format::Json => {
                    let ranks: Vec<Vec<String>> = iv
                        .ranks
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect();
                    let covers: Vec<Value> = iv
                        .covers()
                        .into_iter()
                        .map(|(u, i, v)| json!({"from": u.to_string(), "generator": i, "to": v.to_string()}))
                        .collect();
                    print_json(
                        out,
                        &json!({
                            "permutation": w.to_string(),
                            "rank_sizes": iv.rank_sizes,
                            "width": iv.width,
                            "support_size": iv.support_size,
                            "ranks": ranks,
                            "covers": covers,
                        }),
                    )?
                }
                Format::Dot => unsupported(cli, "interval")?,
            }
        }
        Command::Counts { n } => {
            let (c, u, l) = (catalan(*n)?, count_upper(*n)?, count_lower(*n)?);
            match cli.format {
                Format::Text => {
                    writeln!(out, "n        {n}")?;
                    writeln!(out, "catalan  {c}")?;
                    writeln!(out, "upper    {u}")?;
                    writeln!(out, "lower    {l}")?;
                }
                Format::Csv => {
                    writeln!(out, "n,catalan,upper,lower")?;
                    writeln!(out, "{n},{c},{u},{l}")?;
                }
                Format::Json => print_json(out, &json!({"n": n, "catalan": c, "upper": u, "lower": l}))?,
                Format::Dot => unsupported(cli, "counts")?,
            }
        }
        Command::Scan {
            run,
            checks,
            output,
            resume,
        } => {
            let mut options = run.options(cli.cap);
            options.checks = (*checks).into();
            options.output_path = output.clone();
            options.resume = *resume;
            let report = match (&options.output_path, cli.format) {
                (None, Format::Json) => scan_to_writer(&options, out)?,
                (_, Format::Dot | Format::Csv) => return unsupported(cli, "scan"),
                _ => {
                    let report = scan(&options)?;
                    if cli.format == Format::Json {
                        print_json(
                            out,
                            &serde_json::to_value(&report).map_err(|e| Failure::Usage(e.into()))?,
                        )?;
                    } else {
                        write!(out, "{}", report.to_text())?;
                    }
                    report
                }
            };
            strict_skips(cli, &report)?;
        }
        Command::Conjecture { run } => {
            let report = scan(&run.options(cli.cap))?;
            let summary = report.conjecture.clone().unwrap_or_default();
            match cli.format {
                Format::Text => {
                    let mut text = String::new();
                    let _ = writeln!(text, "n                {}", report.n);
                    let _ = writeln!(text, "permutations     {}", report.total);
                    let _ = writeln!(text, "checked          {}", summary.checked);
                    let _ = writeln!(text, "skipped (cap)    {}", report.skipped_count);
                    let _ = writeln!(text, "agree            {}", summary.agree);
                    let _ = writeln!(text, "counterexamples  {}", summary.counterexamples.len());
                    for ce in &summary.counterexamples {
                        let _ = writeln!(text, "!! {} {}", ce.window, ConjectureOutcome::Counterexample(ce.side));
                    }
                    write!(out, "{text}")?;
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "n": report.n,
                        "permutations": report.total,
                        "skipped": report.skipped_count,
                        "checked": summary.checked,
                        "agree": summary.agree,
                        "counterexamples": summary.counterexamples,
                    }),
                )?,
                Format::Dot | Format::Csv => unsupported(cli, "conjecture")?,
            }
            strict_skips(cli, &report)?;
        }
    }
    Ok(())
}

fn strict_skips(cli: &Cli, report: &ScanReport) -> Result<(), Failure> {
    if cli.strict && report.skipped_count > 0 {
        return Err(Failure::Skipped(format!(
            "{} permutations exceeded --cap {}",
            report.skipped_count, report.word_cap
        )));
    }
    Ok(())
}

fn check(cli: &Cli, w: &Permutation, out: &mut impl Write) -> Result<(), Failure> {
    let mut fields: Vec<(&str, Value)> = vec![
        ("permutation", json!(w.to_string())),
        ("length", json!(w.length())),
        ("avoids_321", json!(w.is_321_avoiding())),
        ("inversions_share_letter", json!(w.inversions_pairwise_share_letter())),
        ("single_braid", json!(is_single_braid(w))),
        ("upper_predicate", json!(upper_predicate(w))),
        ("lower_predicate", json!(lower_predicate_pattern(w)?)),
    ];
    match Analysis::new(w, Some(cli.cap)) {
        Ok(a) => {
            let status = a.status()?;
            let iv = interval_from_words(&a.words);
            let circuit_free = a.is_circuit_free()?;
            let conditions = ConjectureConditions::evaluate(w, &iv);
            fields.extend([
                ("r", json!(status.r)),
                ("b", json!(status.b)),
                ("c", json!(status.c)),
                ("achieves_lower", json!(status.achieves_lower)),
                ("achieves_upper", json!(status.achieves_upper)),
                ("circuit_free", json!(circuit_free)),
                ("width", json!(iv.width)),
                ("support_size", json!(iv.support_size)),
                (
                    "conjecture",
                    json!(ConjectureOutcome::compare(conditions.any(), circuit_free)),
                ),
            ]);
        }
        Err(Error::TooLarge { count, cap }) => {
            if cli.strict {
                return Err(Failure::Skipped(format!(
                    "{w} has {count} reduced words, more than --cap {cap}"
                )));
            }
            fields.extend([("skipped", json!("cap")), ("word_count", json!(count.to_string()))]);
        }
        Err(e) => return Err(e.into()),
    }
    match cli.format {
        Format::Json => print_json(
            out,
            &Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
        )?,
        Format::Text => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in fields {
                let v = match v {
                    Value::String(s) => s,
                    Value::Object(_) => v
                        .get("side")
                        .and_then(Value::as_str)
                        .map_or_else(|| "agree".to_string(), |s| format!("counterexample ({s})")),
                    v => v.to_string(),
                };
                writeln!(out, "{k:<width$}  {v}")?;
            }
        }
        Format::Csv => {
            let (keys, values): (Vec<&str>, Vec<String>) = fields
                .into_iter()
                .map(|(k, v)| (k, v.as_str().map_or_else(|| v.to_string(), str::to_string)))
                .unzip();
            writeln!(out, "{}", keys.join(","))?;
            writeln!(out, "{}", values.join(","))?;
        }
        Format::Dot => unsupported(cli, "check")?,
    }
    Ok(())
}
