//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use crate::classify::{is_in_class_r, ConeDecomposition};
use crate::graph::{enumerate_mixed_graphs, parse_graph, random_mixed_graph, serialize_graph, GraphError, MixedGraph};
use crate::report::{analyze, batch_analyze, render_batch_text, render_text, BatchInput};
use crate::subgroup::{apex_subgroup_graph, rewrite_into_subgroup, verify_subgroup_presentation, SubgroupError};
use crate::word::{
    bfs_equivalence_class, equals, normal_form, parse_word_in, serialize_word, Word, WordError, DEFAULT_ORACLE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 10;

/// Environment variable bounding the oracle frontier.
pub const ORACLE_CAP_VAR: &str = "TRAAG_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "traag", version, about = "Twisted right-angled Artin groups from mixed graphs")]
pub struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WordArg {
    /// Word such as "a b^-1 a^2"; "1" or "" is the identity
    #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Read the word from a file instead
    #[arg(long = "word-file", conflicts_with = "word")]
    pub word_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Property verdicts for a graph file, or a table for several files/directories
    Analyze {
        #[arg(short = 'f', long = "file", required = true)]
        files: Vec<PathBuf>,
    },
    /// Normal form of a word
    Nf {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[command(flatten)]
        word: WordArg,
    },
    /// Decide equality of two words (exit 10 when different)
    Eq {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long = "w1", allow_hyphen_values = true)]
        w1: Option<String>,
        #[arg(long = "w2", allow_hyphen_values = true)]
        w2: Option<String>,
        #[arg(long = "word-file1", conflicts_with = "w1")]
        word_file1: Option<PathBuf>,
        #[arg(long = "word-file2", conflicts_with = "w2")]
        word_file2: Option<PathBuf>,
    },
    /// Graph of the index-2 subgroup at a universal vertex
    Subgroup {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(short = 'x', long = "apex")]
        apex: String,
        /// Check every relator and conjugation in the original group
        #[arg(long)]
        verify: bool,
    },
    /// Rewrite a word into the index-2 subgroup generators (exit 10 if outside)
    Rewrite {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(short = 'x', long = "apex")]
        apex: String,
        #[command(flatten)]
        word: WordArg,
        /// Put the result in the subgroup's normal form
        #[arg(long)]
        normalize: bool,
    },
    /// Cone-class membership with a decomposition (exit 10 if not a member)
    Inr {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Write all mixed graphs on n vertices as .tg files
    Enum {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long = "out")]
        out: PathBuf,
        /// Write this many seeded random graphs instead (n up to 12)
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Brute-force swap class of a word
    Oracle {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[command(flatten)]
        word: WordArg,
        #[arg(short = 'r', long = "radius", default_value_t = 8)]
        radius: usize,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::SizeLimit(_) | GraphError::UnknownVertex(_) => EXIT_PRECONDITION,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        let code = match e {
            WordError::SizeLimit(_) | WordError::UnknownEdge(..) => EXIT_PRECONDITION,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<SubgroupError> for Failure {
    fn from(e: SubgroupError) -> Self {
        match e {
            SubgroupError::Graph(g) => g.into(),
            SubgroupError::Word(w) => w.into(),
            other => Failure::new(EXIT_PRECONDITION, other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load_graph(path: &Path) -> Result<MixedGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn resolve_word(
    g: &MixedGraph,
    inline: &Option<String>,
    file: &Option<PathBuf>,
    what: &str,
) -> Result<(String, Word), Failure> {
    let text = match (inline, file) {
        (Some(w), _) => w.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Err(Failure::new(EXIT_USAGE, format!("missing {what}"))),
    };
    let w = parse_word_in(g, &text)?;
    Ok((text.trim().to_string(), w))
}

/// Maps the single-dash long spellings `-w1`/`-w2` to `--w1`/`--w2`.
fn normalize_argv(argv: Vec<String>) -> Vec<String> {
    argv.into_iter()
        .map(|a| match a.as_str() {
            "-w1" => "--w1".to_string(),
            "-w2" => "--w2".to_string(),
            _ => a,
        })
        .collect()
}

fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(normalize_argv(argv)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::new(EXIT_USAGE, format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    emit(out, &format!("{text}\n"))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Analyze { files } => cmd_analyze(cli, files, out),
        Command::Nf { file, word } => {
            let g = load_graph(file)?;
            let (text, w) = resolve_word(&g, &word.word, &word.word_file, "word (-w or --word-file)")?;
            let nf = normal_form(&g, &w)?;
            if cli.json {
                emit_json(
                    out,
                    &json!({"word": text, "normal_form": serialize_word(&nf), "letter_length": nf.letter_len()}),
                )?;
            } else {
                emit(out, &format!("{nf}\n"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Eq { file, w1, w2, word_file1, word_file2 } => {
            let g = load_graph(file)?;
            let (_, a) = resolve_word(&g, w1, word_file1, "first word (-w1)")?;
            let (_, b) = resolve_word(&g, w2, word_file2, "second word (-w2)")?;
            let same = equals(&g, &a, &b)?;
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "equal": same,
                        "normal_form_1": serialize_word(&normal_form(&g, &a)?),
                        "normal_form_2": serialize_word(&normal_form(&g, &b)?),
                    }),
                )?;
            } else {
                emit(out, if same { "equal\n" } else { "not equal\n" })?;
            }
            Ok(if same { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Subgroup { file, apex, verify } => {
            let g = load_graph(file)?;
            let sub = apex_subgroup_graph(&g, apex)?;
            let verification = if *verify { Some(verify_subgroup_presentation(&g, apex)?) } else { None };
            let map: BTreeMap<&String, String> =
                sub.generator_map.iter().map(|(k, v)| (k, serialize_word(v))).collect();
            if cli.json {
                let mut value = json!({
                    "apex": sub.apex,
                    "square_generator": sub.square_generator,
                    "delta": serialize_graph(&sub.delta),
                    "generator_map": map,
                    "conjugation_table": sub.conjugation_table,
                });
                if let Some(v) = &verification {
                    value["verification"] = json!({
                        "all_pass": v.all_pass(),
                        "relators": v.relators.iter().map(|r| json!({
                            "endpoints": [r.endpoints.0, r.endpoints.1],
                            "relator": serialize_word(&r.relator),
                            "image": serialize_word(&r.image),
                            "passes": r.passes,
                        })).collect::<Vec<_>>(),
                        "conjugations": v.conjugations.iter().map(|c| json!({
                            "vertex": c.vertex,
                            "case": c.case,
                            "predicted": serialize_word(&c.predicted),
                            "passes": c.passes,
                        })).collect::<Vec<_>>(),
                    });
                }
                emit_json(out, &value)?;
            } else {
                let mut text = format!("{}\n# generators\n", serialize_graph(&sub.delta));
                for (k, v) in &map {
                    text.push_str(&format!("{k} = {v}\n"));
                }
                text.push_str(&format!("# conjugation by {}\n", sub.apex));
                for v in sub.conjugation_table.keys() {
                    let predicted = sub.predicted_conjugate(v).expect("table entry");
                    text.push_str(&format!("{apex} {v} {apex}^-1 = {predicted}\n"));
                }
                if let Some(v) = &verification {
                    text.push_str("# verification\n");
                    for r in &v.relators {
                        text.push_str(&format!(
                            "{} [{} {}] {} -> {}\n",
                            if r.passes { "pass" } else { "FAIL" },
                            r.endpoints.0,
                            r.endpoints.1,
                            r.relator,
                            r.image
                        ));
                    }
                    for c in &v.conjugations {
                        text.push_str(&format!(
                            "{} conjugate {} = {}\n",
                            if c.passes { "pass" } else { "FAIL" },
                            c.vertex,
                            c.predicted
                        ));
                    }
                }
                emit(out, &text)?;
            }
            Ok(match verification {
                Some(v) if !v.all_pass() => EXIT_NEGATIVE,
                _ => EXIT_OK,
            })
        }
        Command::Rewrite { file, apex, word, normalize } => {
            let g = load_graph(file)?;
            let (text, w) = resolve_word(&g, &word.word, &word.word_file, "word (-w or --word-file)")?;
            let rewritten = rewrite_into_subgroup(&g, apex, &w, *normalize)?;
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "word": text,
                        "in_subgroup": rewritten.is_some(),
                        "rewritten": rewritten.as_ref().map(serialize_word),
                    }),
                )?;
            } else {
                match &rewritten {
                    Some(r) => emit(out, &format!("{r}\n"))?,
                    None => emit(out, &format!("not in the index-2 subgroup at {apex}\n"))?,
                }
            }
            Ok(if rewritten.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Inr { file } => {
            let g = load_graph(file)?;
            let d = is_in_class_r(&g);
            if cli.json {
                emit_json(out, &json!({"in_class_r": d.is_some(), "decomposition": d}))?;
            } else {
                match &d {
                    Some(d) => {
                        let mut text = String::from("in class R\n");
                        render_decomposition(d, 0, &mut text);
                        emit(out, &text)?;
                    }
                    None => emit(out, "not in class R\n")?,
                }
            }
            Ok(if d.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Enum { n, out: dir, sample } => {
            let graphs: Vec<MixedGraph> = match sample {
                Some(k) => {
                    if !(1..=12).contains(n) {
                        return Err(Failure::new(EXIT_PRECONDITION, format!("sample size n={n} outside 1..=12")));
                    }
                    let mut rng = StdRng::seed_from_u64(cli.seed);
                    (0..*k).map(|_| random_mixed_graph(*n, &mut rng)).collect()
                }
                None => enumerate_mixed_graphs(*n)?.collect(),
            };
            std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            let width = graphs.len().saturating_sub(1).to_string().len().max(1);
            for (i, g) in graphs.iter().enumerate() {
                let path = dir.join(format!("g{n}_{i:0width$}.tg"));
                std::fs::write(&path, format!("{}\n", serialize_graph(g))).map_err(|e| io_failure(&path, e))?;
            }
            if cli.json {
                emit_json(out, &json!({"count": graphs.len(), "dir": dir.display().to_string()}))?;
            } else {
                emit(out, &format!("wrote {} graphs to {}\n", graphs.len(), dir.display()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { file, word, radius } => {
            let g = load_graph(file)?;
            let (text, w) = resolve_word(&g, &word.word, &word.word_file, "word (-w or --word-file)")?;
            let class = bfs_equivalence_class(&g, &w, *radius, oracle_cap())?;
            let words: Vec<String> = class.iter().map(serialize_word).collect();
            if cli.json {
                emit_json(out, &json!({"word": text, "radius": radius, "size": words.len(), "words": words}))?;
            } else {
                emit(out, &words.iter().map(|w| format!("{w}\n")).collect::<String>())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_analyze(cli: &Cli, files: &[PathBuf], out: &mut dyn Write) -> Result<i32, Failure> {
    if let [single] = files {
        if !single.is_dir() {
            let g = load_graph(single)?;
            let r = analyze(&g);
            if cli.json {
                emit_json(out, &serde_json::to_value(&r).expect("report serializes"))?;
            } else {
                emit(out, &render_text(&r))?;
            }
            return Ok(EXIT_OK);
        }
    }
    let mut paths = Vec::new();
    for f in files {
        if f.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(f)
                .map_err(|e| io_failure(f, e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "tg"))
                .collect();
            found.sort();
            paths.extend(found);
        } else {
            paths.push(f.clone());
        }
    }
    let inputs: Vec<BatchInput> = paths
        .iter()
        .map(|p| BatchInput {
            name: p.display().to_string(),
            source: std::fs::read_to_string(p).unwrap_or_else(|e| format!("# unreadable: {e}")),
        })
        .collect();
    let batch = batch_analyze(&inputs);
    if cli.json {
        emit_json(out, &serde_json::to_value(&batch).expect("batch serializes"))?;
    } else {
        emit(out, &render_batch_text(&batch))?;
    }
    Ok(EXIT_OK)
}

fn render_decomposition(d: &ConeDecomposition, depth: usize, text: &mut String) {
    let pad = "  ".repeat(depth);
    match d {
        ConeDecomposition::Leaf(v) => text.push_str(&format!("{pad}leaf {v}\n")),
        ConeDecomposition::Union(children) => {
            text.push_str(&format!("{pad}union\n"));
            for c in children {
                render_decomposition(c, depth + 1, text);
            }
        }
        ConeDecomposition::Cone { child, tip, kinds } => {
            let kinds: Vec<String> = kinds
                .iter()
                .map(|(v, k)| match k {
                    crate::graph::ConeKind::Undirected => format!("{v} -"),
                    crate::graph::ConeKind::IntoTip => format!("{v} >"),
                })
                .collect();
            text.push_str(&format!("{pad}cone tip {tip} [{}]\n", kinds.join(", ")));
            render_decomposition(child, depth + 1, text);
        }
    }
}
