use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use indexcoding::confusion::{parse_table_any, verify_code};
use indexcoding::graph::{parse_graph_any, prune_to_uscs, write_graph};
use indexcoding::groupcast::{parse_instance_any, prune_groupcast, write_instance};
use indexcoding::linear::{is_valid_linear_code, parse_code_any};
use indexcoding::suites::{run_suite, SUITES};
use indexcoding::{Error, Limits};
use indexcoding_cli::report;
use serde::Serialize;

const EXIT_PARSE: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_INVALID_CODE: u8 = 4;
const EXIT_SUITE: u8 = 5;

#[derive(Parser)]
#[command(name = "indexcoding", version, about = "Index coding analysis tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every engine on a side-information graph.
    Analyze {
        graph: PathBuf,
        /// Alphabet sizes for the one-shot search, e.g. `2,2,2,2,2,5`.
        #[arg(long, value_delimiter = ',')]
        spec: Option<Vec<usize>>,
        /// Omit timings so output is byte-stable.
        #[arg(long)]
        golden: bool,
        /// Vertex limit for the exhaustive engines.
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest message-tuple space for the one-shot search.
        #[arg(long)]
        max_tuples: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Remove every edge that lies on no directed cycle.
    Prune {
        graph: PathBuf,
        /// Write the pruned graph here.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Prune a groupcast instance through its underlying digraph.
    PruneGroupcast {
        instance: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Check a linear code or a one-shot code table against a graph.
    VerifyCode {
        graph: PathBuf,
        code: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run a named reproduction suite, or `all`.
    Reproduce {
        suite: String,
        #[command(flatten)]
        out: Output,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_limit() => EXIT_LIMIT,
            Error::InvalidCode(_) | Error::DimensionMismatch(_) => EXIT_INVALID_CODE,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        msg: format!("{}: {e}", path.display()),
    })
}

fn in_file(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.msg = format!("{}: {}", path.display(), f.msg);
    f
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        code: EXIT_PARSE,
        msg: format!("{}: {e}", path.display()),
    })
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        );
    } else {
        print!("{}", text());
    }
}

fn analyze(
    path: &Path,
    spec: Option<&[usize]>,
    golden: bool,
    max_n: Option<usize>,
    max_tuples: Option<usize>,
    json: bool,
) -> CmdResult {
    let text = read(path)?;
    let g = parse_graph_any(&text).map_err(|e| in_file(path, e))?;
    let mut limits = Limits::default();
    if let Some(n) = max_n {
        limits.mais_max_n = n;
        limits.cover_max_n = n;
        limits.minrank_max_n = n;
        limits.iso_max_n = n;
    }
    if let Some(t) = max_tuples {
        limits.max_tuples = t;
    }
    let a = report::analyze(text.as_bytes(), &g, spec, &limits, golden);
    emit(json, &a.report, || a.report.to_text());
    Ok(if a.limit_hit { EXIT_LIMIT } else { 0 })
}

#[derive(Serialize)]
struct PruneReport<T> {
    removed: Vec<(usize, usize)>,
    pruned: T,
}

fn prune(path: &Path, output: Option<&Path>, json: bool) -> CmdResult {
    let g = parse_graph_any(&read(path)?).map_err(|e| in_file(path, e))?;
    let (kept, removed) = prune_to_uscs(&g);
    let pruned = write_graph(&kept);
    if let Some(o) = output {
        write_out(o, &pruned)?;
    }
    let report = PruneReport {
        removed: removed.clone(),
        pruned: &kept,
    };
    emit(json, &report, || {
        let items: Vec<String> = removed.iter().map(|(u, v)| format!("({u},{v})")).collect();
        format!(
            "kept {} edges, removed {}{}{}\n{pruned}",
            kept.edge_count(),
            removed.len(),
            if items.is_empty() { "" } else { ": " },
            items.join(" ")
        )
    });
    Ok(0)
}

fn prune_groupcast_cmd(path: &Path, output: Option<&Path>, json: bool) -> CmdResult {
    let h = parse_instance_any(&read(path)?).map_err(|e| in_file(path, e))?;
    let (p, removed) = prune_groupcast(&h);
    let pruned = write_instance(&p);
    if let Some(o) = output {
        write_out(o, &pruned)?;
    }
    let report = PruneReport {
        removed: removed.clone(),
        pruned: &p,
    };
    emit(json, &report, || {
        let items: Vec<String> = removed
            .iter()
            .map(|(r, m)| format!("receiver {r} drops W_{m}"))
            .collect();
        format!(
            "{} side-information entries removed{}{}\n{pruned}",
            removed.len(),
            if items.is_empty() { "" } else { ": " },
            items.join(", ")
        )
    });
    Ok(0)
}

/// Tables start with `N <int>` or carry an `"N"` key; everything else is
/// read as a linear code.
fn is_table(text: &str) -> bool {
    let t = text.trim_start();
    if t.starts_with('{') {
        return serde_json::from_str::<serde_json::Value>(t)
            .map(|v| v.get("N").is_some())
            .unwrap_or(false);
    }
    t.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("N"))
}

fn verify(graph: &Path, code: &Path, json: bool) -> CmdResult {
    let g = parse_graph_any(&read(graph)?).map_err(|e| in_file(graph, e))?;
    let text = read(code)?;
    if is_table(&text) {
        let table = parse_table_any(&text, &g).map_err(|e| in_file(code, e))?;
        let check = verify_code(&table);
        emit(json, &check, || match &check.violation {
            None => format!("valid one-shot code with {} symbols\n", check.n_symbols),
            Some(v) => format!(
                "invalid: node {} cannot tell {:?} from {:?} (same symbol, same side information)\n",
                v.node, v.a, v.b
            ),
        });
        return Ok(if check.valid { 0 } else { EXIT_INVALID_CODE });
    }
    let c = parse_code_any(&text).map_err(|e| in_file(code, e))?;
    let v = is_valid_linear_code(&g, &c)?;
    emit(json, &v, || match (&v.certificate, v.failure) {
        (Some(cert), _) => format!(
            "valid linear code over GF({}) of length {}; {} symbols decoded\n",
            c.field().q(),
            c.length(),
            cert.decoders.len()
        ),
        (None, Some((node, coord))) => {
            format!("invalid: node {node} cannot decode its coordinate {coord}\n")
        }
        (None, None) => "invalid\n".to_string(),
    });
    Ok(if v.valid { 0 } else { EXIT_INVALID_CODE })
}

fn reproduce(suite: &str, json: bool) -> CmdResult {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let reports = names
        .iter()
        .map(|s| run_suite(s))
        .collect::<indexcoding::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    emit(json, &reports, || reports.iter().map(|r| r.to_text()).collect());
    Ok(if passed { 0 } else { EXIT_SUITE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze {
            graph,
            spec,
            golden,
            max_n,
            max_tuples,
            out,
        } => analyze(graph, spec.as_deref(), *golden, *max_n, *max_tuples, out.json),
        Command::Prune { graph, output, out } => prune(graph, output.as_deref(), out.json),
        Command::PruneGroupcast {
            instance,
            output,
            out,
        } => prune_groupcast_cmd(instance, output.as_deref(), out.json),
        Command::VerifyCode { graph, code, out } => verify(graph, code, out.json),
        Command::Reproduce { suite, out } => reproduce(suite, out.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
