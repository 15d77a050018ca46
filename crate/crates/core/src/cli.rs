//! Command-line front end shared by the binary and the tests.
//!
//! Every command prints either a text report or, with `--json`, a
//! [`ReportEnvelope`] holding the command's typed result.
//!
//! Exit codes: `0` success (and for `analyze`, every factor resolved),
//! `2` some factor is unknown, `1` input or usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analyzer::{self, AnalysisReport, AnalyzerConfig, AnalyzerError};
use crate::coxeter::CoxeterGroup;
use crate::dihedral::{Dihedral, DihedralError};
use crate::graph::{DefiningGraph, GraphError, VertexSet};
use crate::retraction::{self, TraceRecord};
use crate::word::{ArtinWord, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Analyzer(#[from] AnalyzerError),
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "artin-center", version, about = "Centers of Artin groups from their defining graphs")]
pub struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the center of A_Γ as far as the rules reach.
    Analyze(AnalyzeArgs),
    /// Retract a word onto the special subgroup A_X.
    Retract(RetractArgs),
    /// Reduced word, length and descents of the Coxeter image of a word.
    Reduce(WordArgs),
    /// Split the Coxeter image as v·w with v in W_X and w (X,∅)-reduced.
    Coset(SubsetWordArgs),
    /// Amalgamated splitting along a pair with m = ∞.
    Split(SplitArgs),
    /// Word invariants: Coxeter image, purity, positivity, support.
    Word(WordArgs),
    /// Rank-two normal forms, equality and center.
    Dihedral(DihedralArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Graph file; omit when using --dir.
    pub graph: Option<PathBuf>,
    /// Analyze every `*.graph` file in this directory.
    #[arg(long, conflicts_with = "graph")]
    pub dir: Option<PathBuf>,
    /// Where --dir writes per-file reports (default: next to the inputs).
    #[arg(long, requires = "dir")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = analyzer::DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    /// Worker threads for --dir (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RetractArgs {
    pub graph: PathBuf,
    /// Vertex names of X, separated by commas or spaces.
    #[arg(long, allow_hyphen_values = true)]
    pub subset: String,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Print the per-letter table.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    pub graph: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct SubsetWordArgs {
    pub graph: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub subset: String,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    pub graph: PathBuf,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Args)]
pub struct DihedralArgs {
    pub graph: PathBuf,
    pub s: String,
    pub t: String,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Compare against this word.
    #[arg(long, allow_hyphen_values = true)]
    pub equal: Option<String>,
}

/// Uniform wrapper around every structured result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEnvelope<T> {
    pub command: String,
    pub args: Vec<String>,
    /// SHA-256 of the graph file, lowercase hex.
    pub input_digest: String,
    pub version: String,
    pub result: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetractResult {
    pub subset: Vec<String>,
    pub input: String,
    pub output: String,
    pub trace: Option<Vec<TraceRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReduceResult {
    pub input: String,
    pub reduced_word: String,
    pub length: usize,
    pub left_descents: Vec<String>,
    pub right_descents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetResult {
    pub subset: Vec<String>,
    pub input: String,
    pub v: String,
    pub w: String,
    pub v_length: usize,
    pub w_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitResult {
    pub x: String,
    pub y: String,
    pub without_x: Vec<String>,
    pub without_both: Vec<String>,
    pub without_y: Vec<String>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordResult {
    pub input: String,
    pub letters: usize,
    pub positive: bool,
    pub pure: bool,
    pub support: Vec<String>,
    /// Exponent sum per generator.
    pub exponent_sums: BTreeMap<String, i64>,
    /// Exponent sum per class of generators joined by odd labels, keyed `{a, b}`.
    pub abelianization: BTreeMap<String, i64>,
    pub coxeter_image: String,
    pub coxeter_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihedralResult {
    pub generators: [String; 2],
    pub label: String,
    pub input: String,
    pub normal_form: Option<NormalFormView>,
    pub reduced: Option<String>,
    pub equal: Option<bool>,
    pub center_generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormView {
    pub delta_power: i64,
    pub factors: Vec<String>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchEntry {
    pub file: String,
    pub status: String,
    pub report: Option<String>,
    pub error: Option<String>,
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, A>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let args: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, args: Vec<String>, out: &mut dyn Write) -> Result<i32, CliError> {
    let json = cli.json;
    let io_err = |e: io::Error| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    match &cli.command {
        Command::Analyze(a) => {
            if let Some(dir) = &a.dir {
                return analyze_dir(dir, a, json, out);
            }
            let path = a
                .graph
                .as_ref()
                .ok_or_else(|| CliError::Usage("analyze needs a graph file or --dir".into()))?;
            let (graph, digest) = load_graph(path)?;
            let config = AnalyzerConfig {
                max_vertices: a.max_vertices,
                ..AnalyzerConfig::default()
            };
            let report = analyzer::establish_with(&graph, &config)?;
            let text = if json {
                envelope_json("analyze", args, digest, report.view())
            } else {
                report.to_text()
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(exit_for(&report))
        }
        Command::Retract(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let subset = parse_subset(&graph, &a.subset)?;
            let word = ArtinWord::parse(&a.word, &graph)?;
            let group = CoxeterGroup::new(&graph);
            let trace = retraction::retract_trace(&group, subset, &word);
            let output = trace.output();
            let result = RetractResult {
                subset: names(&graph, subset),
                input: word.to_string_with(&graph),
                output: output.to_string_with(&graph),
                trace: a.trace.then(|| trace.records(&group)),
            };
            let text = if json {
                envelope_json("retract", args, digest, result)
            } else {
                let mut s = String::new();
                if a.trace {
                    s.push_str(&trace.to_table(&group));
                }
                let _ = writeln!(
                    s,
                    "retract onto {}: {} -> {}",
                    graph.fmt_set(subset),
                    result.input,
                    result.output
                );
                s
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Reduce(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let word = ArtinWord::parse(&a.word, &graph)?;
            let group = CoxeterGroup::new(&graph);
            let w = group.theta(&word);
            let result = ReduceResult {
                input: word.to_string_with(&graph),
                reduced_word: spell(&graph, &group.reduced_word(&w)),
                length: group.length(&w),
                left_descents: names(&graph, group.left_descents(&w)),
                right_descents: names(&graph, group.right_descents(&w)),
            };
            let text = if json {
                envelope_json("reduce", args, digest, result)
            } else {
                format!(
                    "reduced word: {}\nlength: {}\nleft descents: {{{}}}\nright descents: {{{}}}\n",
                    result.reduced_word,
                    result.length,
                    result.left_descents.join(", "),
                    result.right_descents.join(", ")
                )
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Coset(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let subset = parse_subset(&graph, &a.subset)?;
            let word = ArtinWord::parse(&a.word, &graph)?;
            let group = CoxeterGroup::new(&graph);
            let dec = group.coset_decompose(&group.theta(&word), subset);
            let result = CosetResult {
                subset: names(&graph, subset),
                input: word.to_string_with(&graph),
                v: spell(&graph, &group.reduced_word(&dec.v)),
                w: spell(&graph, &group.reduced_word(&dec.w)),
                v_length: group.length(&dec.v),
                w_length: group.length(&dec.w),
            };
            let text = if json {
                envelope_json("coset", args, digest, result)
            } else {
                format!(
                    "X = {}\nv = {} (length {})\nw = {} (length {})\n",
                    graph.fmt_set(subset),
                    result.v,
                    result.v_length,
                    result.w,
                    result.w_length
                )
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Split(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let x = vertex(&graph, &a.x)?;
            let y = vertex(&graph, &a.y)?;
            let (left, mid, right) = graph.amalgam_split_sets(x, y)?;
            let display = format!(
                "A_{} *_A_{} A_{}",
                graph.fmt_set(left),
                graph.fmt_set(mid),
                graph.fmt_set(right)
            );
            let result = SplitResult {
                x: a.x.clone(),
                y: a.y.clone(),
                without_x: names(&graph, left),
                without_both: names(&graph, mid),
                without_y: names(&graph, right),
                display,
            };
            let text = if json {
                envelope_json("split", args, digest, result)
            } else {
                format!("{}\n", result.display)
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Word(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let word = ArtinWord::parse(&a.word, &graph)?;
            let group = CoxeterGroup::new(&graph);
            let w = group.theta(&word);
            let sums = word.abelianize(graph.len());
            let classes = graph.odd_classes(graph.vertices());
            let result = WordResult {
                input: word.to_string_with(&graph),
                letters: word.len(),
                positive: word.is_positive(),
                pure: word.is_pure(&group),
                support: names(&graph, word.support()),
                exponent_sums: graph
                    .names()
                    .iter()
                    .cloned()
                    .zip(sums)
                    .filter(|(_, e)| *e != 0)
                    .collect(),
                abelianization: classes
                    .iter()
                    .map(|&c| graph.fmt_set(c))
                    .zip(word.class_sums(&classes))
                    .filter(|(_, e)| *e != 0)
                    .collect(),
                coxeter_image: spell(&graph, &group.reduced_word(&w)),
                coxeter_length: group.length(&w),
            };
            let text = if json {
                envelope_json("word", args, digest, result)
            } else {
                let show = |m: &BTreeMap<String, i64>| -> String {
                    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                    if parts.is_empty() { "0".to_string() } else { parts.join(" ") }
                };
                format!(
                    "word: {}\nletters: {}\npositive: {}\npure: {}\nsupport: {{{}}}\nexponent sums: {}\nabelianization: {}\ncoxeter image: {} (length {})\n",
                    result.input,
                    result.letters,
                    result.positive,
                    result.pure,
                    result.support.join(", "),
                    show(&result.exponent_sums),
                    show(&result.abelianization),
                    result.coxeter_image,
                    result.coxeter_length
                )
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Dihedral(a) => {
            let (graph, digest) = load_graph(&a.graph)?;
            let s = vertex(&graph, &a.s)?;
            let t = vertex(&graph, &a.t)?;
            let d = Dihedral::new(graph.label(s, t), s, t)?;
            let word = ArtinWord::parse(&a.word, &graph)?;
            let other = a
                .equal
                .as_deref()
                .map(|w| ArtinWord::parse(w, &graph))
                .transpose()?;
            let normal_form = match d.label().finite() {
                Some(_) => {
                    let nf = d.normal_form(&word)?;
                    Some(NormalFormView {
                        delta_power: nf.delta_power,
                        factors: nf
                            .factors
                            .iter()
                            .map(|f| {
                                let first = graph.name(f.first);
                                let second = graph.name(if f.first == s { t } else { s });
                                (0..f.len)
                                    .map(|i| if i % 2 == 0 { first } else { second })
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            })
                            .collect(),
                        text: d.nf_to_string(&nf, &graph),
                    })
                }
                None => None,
            };
            let reduced = match d.label().finite() {
                Some(_) => None,
                None => Some(crate::dihedral::free_reduce(&word).to_string_with(&graph)),
            };
            let equal = other.as_ref().map(|b| d.equal(&word, b)).transpose()?;
            let result = DihedralResult {
                generators: [a.s.clone(), a.t.clone()],
                label: d.label().to_string(),
                input: word.to_string_with(&graph),
                normal_form,
                reduced,
                equal,
                center_generator: d.center_generator().map(|z| z.to_string_with(&graph)),
            };
            let text = if json {
                envelope_json("dihedral", args, digest, result)
            } else {
                let mut s = format!("m = {}\nword: {}\n", result.label, result.input);
                if let Some(nf) = &result.normal_form {
                    let _ = writeln!(s, "normal form: {}", nf.text);
                }
                if let Some(r) = &result.reduced {
                    let _ = writeln!(s, "free reduction: {r}");
                }
                if let Some(e) = result.equal {
                    let _ = writeln!(s, "equal: {e}");
                }
                let _ = writeln!(
                    s,
                    "center: {}",
                    result.center_generator.as_deref().unwrap_or("trivial")
                );
                s
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

fn exit_for(report: &AnalysisReport) -> i32 {
    if report.established {
        EXIT_OK
    } else {
        EXIT_UNKNOWN
    }
}

fn envelope_json<T: Serialize>(command: &str, args: Vec<String>, digest: String, result: T) -> String {
    let env = ReportEnvelope {
        command: command.to_string(),
        args,
        input_digest: digest,
        version: env!("CARGO_PKG_VERSION").to_string(),
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn load_graph(path: &Path) -> Result<(DefiningGraph, String), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let graph = DefiningGraph::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((graph, sha256_hex(&bytes)))
}

fn parse_subset(graph: &DefiningGraph, text: &str) -> Result<VertexSet, CliError> {
    let names: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    Ok(graph.vertex_set(&names)?)
}

fn vertex(graph: &DefiningGraph, name: &str) -> Result<usize, CliError> {
    graph
        .index_of(name)
        .ok_or_else(|| CliError::Graph(GraphError::NoSuchVertex(name.to_string())))
}

fn names(graph: &DefiningGraph, set: VertexSet) -> Vec<String> {
    graph.set_names(set).into_iter().map(String::from).collect()
}

fn spell(graph: &DefiningGraph, word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|&v| graph.name(v)).collect::<Vec<_>>().join(" ")
    }
}

fn analyze_dir(dir: &Path, a: &AnalyzeArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    let out_dir = a.out.clone().unwrap_or_else(|| dir.to_path_buf());
    fs::create_dir_all(&out_dir).map_err(io(&out_dir))?;
    let config = AnalyzerConfig {
        max_vertices: a.max_vertices,
        ..AnalyzerConfig::default()
    };
    let jobs = a
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, files.len().max(1));

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(BatchEntry, i32)>>> = Mutex::new(vec![None; files.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let entry = analyze_one(path, &out_dir, &config, json);
                results.lock().expect("no panics while holding the lock")[i] = Some(entry);
            });
        }
    });

    let results = results.into_inner().expect("workers finished");
    let mut code = EXIT_OK;
    let mut entries = Vec::new();
    for (entry, c) in results.into_iter().flatten() {
        code = match (code, c) {
            (EXIT_ERROR, _) | (_, EXIT_ERROR) => EXIT_ERROR,
            (EXIT_UNKNOWN, _) | (_, EXIT_UNKNOWN) => EXIT_UNKNOWN,
            _ => EXIT_OK,
        };
        entries.push(entry);
    }
    let text = if json {
        let mut s = serde_json::to_string_pretty(&entries).expect("entries serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for e in &entries {
            let _ = match &e.error {
                Some(err) => writeln!(s, "{}\t{}\t{}", e.file, e.status, err),
                None => writeln!(s, "{}\t{}", e.file, e.status),
            };
        }
        s
    };
    out.write_all(text.as_bytes()).map_err(io(Path::new("<stdout>")))?;
    Ok(code)
}

fn analyze_one(path: &Path, out_dir: &Path, config: &AnalyzerConfig, json: bool) -> (BatchEntry, i32) {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let failed = |e: CliError| {
        (
            BatchEntry {
                file: file.clone(),
                status: "ERROR".into(),
                report: None,
                error: Some(e.to_string()),
            },
            EXIT_ERROR,
        )
    };
    let (graph, digest) = match load_graph(path) {
        Ok(x) => x,
        Err(e) => return failed(e),
    };
    let report = match analyzer::establish_with(&graph, config) {
        Ok(r) => r,
        Err(e) => return failed(e.into()),
    };
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (name, body) = if json {
        let args = vec!["analyze".to_string(), path.display().to_string()];
        (format!("{stem}.report.json"), envelope_json("analyze", args, digest, report.view()))
    } else {
        (format!("{stem}.report.txt"), report.to_text())
    };
    let target = out_dir.join(&name);
    if let Err(e) = write_atomic(&target, body.as_bytes()) {
        return failed(CliError::Io { path: target, source: e });
    }
    let status = if report.established { "ESTABLISHED" } else { "UNKNOWN" };
    (
        BatchEntry {
            file,
            status: status.into(),
            report: Some(name),
            error: None,
        },
        exit_for(&report),
    )
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomic(target: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = target.parent().unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        target.file_name().map(|f| f.to_string_lossy()).unwrap_or_default(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, target)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
