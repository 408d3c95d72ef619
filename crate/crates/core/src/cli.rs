//! Command-line front end.
//!
//! Exit codes: 0 invertible (or success), 1 usage, parse or internal error,
//! 2 not invertible within the bound (or `verify` rejected the pair),
//! 3 Keller violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::criteria::{run_criteria, Criterion, CriterionReport, Execution, Verdict};
use crate::error::MapError;
use crate::io::bench::{render_csv, run_bench};
use crate::io::corpus::{gen_triangular_corpus, CorpusSpec};
use crate::io::format::{emit_map, format_poly, parse_map_file, Format, MapDocument};
use crate::nambu::NambuFrame;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_WITHIN_BOUND: i32 = 2;
pub const EXIT_KELLER: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "polyauto",
    version,
    about = "Decide and invert polynomial automorphisms exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum CriterionArg {
    Taylor,
    Essen,
    Series,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    deg: u32,
    #[arg(long, default_value_t = 3)]
    layers: usize,
    #[arg(long, default_value_t = 5)]
    count: usize,
}

impl From<&CorpusArgs> for CorpusSpec {
    fn from(a: &CorpusArgs) -> Self {
        CorpusSpec {
            seed: a.seed,
            n: a.n,
            deg: a.deg,
            layers: a.layers,
            count: a.count,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the map in FILE is invertible.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "taylor")]
        criterion: CriterionArg,
        /// Override the termination bound (testing aid).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Run the deciders of `--criterion all` on separate threads.
        #[arg(long)]
        concurrent: bool,
    },
    /// Write the inverse of the map in FILE.
    Invert {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Print the Nambu frame (adj(J)^T and det J) of the map in FILE.
    Nambu { file: PathBuf },
    /// Exit 0 iff the two maps are mutually inverse.
    Verify { file_f: PathBuf, file_g: PathBuf },
    /// Cross-check the criteria on a generated corpus and emit CSV rows.
    Bench {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Comma-separated subset of taylor,essen,series.
        #[arg(long, value_delimiter = ',', default_value = "taylor,essen,series")]
        criteria: Vec<Criterion>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Spread maps over this many threads (criteria of one map stay sequential).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Time each decider this many times and keep the fastest run.
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
    /// Write a generated corpus as map files.
    Gen {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(short = 'o', long = "output", default_value = "corpus")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! fail {
    ($io:expr, $($arg:tt)*) => {{
        let _ = writeln!($io.err, $($arg)*);
        return EXIT_ERROR;
    }};
}

/// Parses `argv` (including the program name) and runs the subcommand,
/// writing to the given streams. Returns the process exit code.
pub fn cli_main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(io.err, "{e}");
            return EXIT_ERROR;
        }
    };
    match cli.command {
        Command::Check {
            file,
            criterion,
            bound,
            format,
            concurrent,
        } => check(&mut io, &file, criterion, bound, format.into(), concurrent),
        Command::Invert { file, output, format } => invert(&mut io, &file, output.as_deref(), format.into()),
        Command::Nambu { file } => nambu(&mut io, &file),
        Command::Verify { file_f, file_g } => verify(&mut io, &file_f, &file_g),
        Command::Bench {
            corpus,
            criteria,
            csv,
            jobs,
            reps,
        } => bench(&mut io, &(&corpus).into(), &criteria, csv.as_deref(), reps, jobs),
        Command::Gen { corpus, output, format } => gen(&mut io, &(&corpus).into(), &output, format.into()),
    }
}

/// Entry point used by the binary.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    cli_main_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Invertible { .. } => EXIT_OK,
        Verdict::NotInvertibleWithinBound { .. } => EXIT_NOT_WITHIN_BOUND,
        Verdict::KellerViolation { .. } => EXIT_KELLER,
    }
}

/// One-line human summary using the document's variable names.
pub fn describe_verdict(v: &Verdict, vars: &[String]) -> String {
    match v {
        Verdict::Invertible { .. } => "invertible".into(),
        Verdict::NotInvertibleWithinBound { bound, witness } => {
            let value_names: Vec<String> = if witness.value.nvars() == vars.len() {
                vars.to_vec()
            } else {
                // D-power witnesses live in (X, Y)
                vars.iter()
                    .cloned()
                    .chain((1..=vars.len()).map(|i| format!("Y{i}")))
                    .collect()
            };
            let alpha = witness
                .multi_index
                .as_ref()
                .map(|a| format!(" alpha {:?}", a.exponents()))
                .unwrap_or_default();
            format!(
                "not-within-bound: bound {bound}, witness component {} level {}{alpha} = {}",
                witness.component + 1,
                witness.level,
                format_poly(&witness.value, &value_names)
            )
        }
        Verdict::KellerViolation { det } => format!("keller-violation: det = {}", format_poly(det, vars)),
    }
}

fn verdict_json(v: &Verdict, vars: &[String]) -> serde_json::Value {
    match v {
        Verdict::Invertible { inverse, levels } => {
            let doc = MapDocument::inverse_of(inverse.clone());
            json!({
                "verdict": v.tag(),
                "levels": levels,
                "inverse": doc.map.components().iter().map(|p| format_poly(p, &doc.vars)).collect::<Vec<_>>(),
                "inverse_vars": doc.vars,
            })
        }
        Verdict::NotInvertibleWithinBound { bound, witness } => json!({
            "verdict": v.tag(),
            "bound": bound,
            "witness": {
                "component": witness.component + 1,
                "level": witness.level,
                "multi_index": witness.multi_index.as_ref().map(|a| a.exponents().to_vec()),
                "terms": witness.value.len(),
            },
        }),
        Verdict::KellerViolation { det } => json!({
            "verdict": v.tag(),
            "det": format_poly(det, vars),
        }),
    }
}

fn load(io: &mut Io<'_>, path: &Path) -> Option<MapDocument> {
    match parse_map_file(path) {
        Ok(doc) => Some(doc),
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            None
        }
    }
}

fn check(
    io: &mut Io<'_>,
    file: &Path,
    criterion: CriterionArg,
    bound: Option<u64>,
    format: Format,
    concurrent: bool,
) -> i32 {
    let Some(doc) = load(io, file) else {
        return EXIT_ERROR;
    };
    let criteria: Vec<Criterion> = match criterion {
        CriterionArg::Taylor => vec![Criterion::Taylor],
        CriterionArg::Essen => vec![Criterion::Essen],
        CriterionArg::Series => vec![Criterion::Series],
        CriterionArg::All => Criterion::ALL.to_vec(),
    };
    let execution = if concurrent {
        Execution::Concurrent
    } else {
        Execution::Sequential
    };
    let report: CriterionReport = match run_criteria(&doc.map, &criteria, bound, execution) {
        Ok(r) => r,
        Err(e) => fail!(io, "error: {e}"),
    };
    let verdict = report.verdict();
    match format {
        Format::Text => {
            if report.runs.len() > 1 {
                for run in &report.runs {
                    let _ = writeln!(
                        io.out,
                        "{}: {}",
                        run.criterion,
                        describe_verdict(&run.verdict, &doc.vars)
                    );
                }
            }
            let _ = writeln!(io.out, "{}", describe_verdict(verdict, &doc.vars));
        }
        Format::Json => {
            let runs: Vec<serde_json::Value> = report
                .runs
                .iter()
                .map(|r| {
                    let mut v = verdict_json(&r.verdict, &doc.vars);
                    v["criterion"] = json!(r.criterion.name());
                    v["iterations"] = json!(r.iterations);
                    v["peak_terms"] = json!(r.peak_terms);
                    v
                })
                .collect();
            let body = json!({
                "verdict": verdict.tag(),
                "bound": report.bound,
                "runs": runs,
            });
            let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&body).expect("json"));
        }
    }
    exit_code(verdict)
}

fn invert(io: &mut Io<'_>, file: &Path, output: Option<&Path>, format: Format) -> i32 {
    let Some(doc) = load(io, file) else {
        return EXIT_ERROR;
    };
    let verdict = match crate::criteria::taylor_criterion(&doc.map, None) {
        Ok(v) => v,
        Err(e) => fail!(io, "error: {e}"),
    };
    let Verdict::Invertible { inverse, .. } = &verdict else {
        let _ = writeln!(io.err, "{}", describe_verdict(&verdict, &doc.vars));
        return exit_code(&verdict);
    };
    let text = emit_map(&MapDocument::inverse_of(inverse.clone()), format);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                fail!(io, "error: {}: {e}", path.display());
            }
        }
        None => {
            let _ = io.out.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}

fn nambu(io: &mut Io<'_>, file: &Path) -> i32 {
    let Some(doc) = load(io, file) else {
        return EXIT_ERROR;
    };
    let frame = match NambuFrame::new(&doc.map) {
        Ok(f) => f,
        Err(MapError::KellerViolation { det }) => {
            let _ = writeln!(io.err, "keller-violation: det = {}", format_poly(&det, &doc.vars));
            return EXIT_KELLER;
        }
        Err(e) => fail!(io, "error: {e}"),
    };
    let _ = writeln!(io.out, "det_constant = {}", frame.det_constant());
    let _ = writeln!(io.out, "scaled_matrix = adj(J)^T");
    for (i, row) in frame.scaled_matrix().rows().enumerate() {
        let cells: Vec<String> = row.iter().map(|p| format_poly(p, &doc.vars)).collect();
        let _ = writeln!(io.out, "  row {}: [{}]", i + 1, cells.join(", "));
    }
    for i in 0..frame.nvars() {
        let parts: Vec<String> = frame
            .derivation_coefficients(i)
            .iter()
            .zip(&doc.vars)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, v)| format!("({})*d/d{v}", format_poly(p, &doc.vars)))
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        let _ = writeln!(io.out, "delta{} = {body}", i + 1);
    }
    EXIT_OK
}

fn verify(io: &mut Io<'_>, file_f: &Path, file_g: &Path) -> i32 {
    let (Some(f), Some(g)) = (load(io, file_f), load(io, file_g)) else {
        return EXIT_ERROR;
    };
    match crate::criteria::verify_inverse(&f.map, &g.map) {
        Ok(true) => {
            let _ = writeln!(io.out, "inverse pair");
            EXIT_OK
        }
        Ok(false) => {
            let _ = writeln!(io.out, "not an inverse pair");
            EXIT_NOT_WITHIN_BOUND
        }
        Err(e) => fail!(io, "error: {e}"),
    }
}

fn bench(
    io: &mut Io<'_>,
    spec: &CorpusSpec,
    criteria: &[Criterion],
    csv: Option<&Path>,
    reps: u32,
    jobs: usize,
) -> i32 {
    if criteria.is_empty() {
        fail!(io, "error: no criteria selected");
    }
    let rows = match run_bench(spec, criteria, reps.max(1), jobs.max(1)) {
        Ok(rows) => rows,
        Err(e) => fail!(io, "error: {e}"),
    };
    let text = render_csv(spec, criteria, reps.max(1), &rows);
    match csv {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                fail!(io, "error: {}: {e}", path.display());
            }
        }
        None => {
            let _ = io.out.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}

fn gen(io: &mut Io<'_>, spec: &CorpusSpec, dir: &Path, format: Format) -> i32 {
    let corpus = match gen_triangular_corpus(spec) {
        Ok(c) => c,
        Err(e) => fail!(io, "error: {e}"),
    };
    if let Err(e) = std::fs::create_dir_all(dir) {
        fail!(io, "error: {}: {e}", dir.display());
    }
    let ext = match format {
        Format::Text => "map",
        Format::Json => "json",
    };
    for m in corpus {
        let doc = MapDocument::with_default_names(m.map);
        let path = dir.join(format!("{}.{ext}", m.id));
        if let Err(e) = std::fs::write(&path, emit_map(&doc, format)) {
            fail!(io, "error: {}: {e}", path.display());
        }
        let _ = writeln!(io.out, "{}", path.display());
    }
    EXIT_OK
}
