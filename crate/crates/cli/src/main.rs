use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use neighborly::harness::{run_all, Catalog, CheckKind, Report, RunConfig, RunParams};
use neighborly::partitions::DEFAULT_ENUMERATION_BUDGET;
use neighborly::signatures::{
    build_graph, chain_sign, prune, render_graph, render_pruned, sig_multiset, signature_closed,
};
use neighborly::{DeletionRule, Error, NeighborlyPartition, OddSignConvention};

const BUDGET_ENV: &str = "NEIGHBORLY_BUDGET";

const EXIT_ERROR: u8 = 3;
const EXIT_BUDGET: u8 = 4;
/// A failing check exits with this plus its ordinal.
const EXIT_CHECK_BASE: u8 = 10;

#[derive(Parser)]
#[command(name = "neighborly", version, about = "Exact checks for neighborly partitions and their q-series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and report PASS/FAIL with located mismatches.
    Verify(VerifyArgs),
    /// List admissible partitions with sign, SIG and pruned edge count.
    Enumerate(EnumerateArgs),
    /// Print a table of chain signatures.
    Table(TableArgs),
    /// Draw a partition graph and its pruned form.
    Show(ShowArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Chains,
    Signatures,
    Prune,
    Rr1,
    Rr2,
    Gf,
    Functional,
    Classical,
    Edgevertex,
    Controls,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignConvention {
    Printed,
    Empirical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Literal,
    ExampleConsistent,
}

impl From<Rule> for DeletionRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Literal => DeletionRule::Literal,
            Rule::ExampleConsistent => DeletionRule::ExampleConsistent,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Target,
    /// Weight bound for enumeration; also caps the brute-force checks.
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long)]
    q_order: Option<usize>,
    #[arg(long)]
    x_order: Option<usize>,
    /// Largest part count compared in the gf check.
    #[arg(long)]
    n_parts: Option<usize>,
    /// Sign convention for the odd edge/vertex case.
    #[arg(long, value_enum, default_value = "empirical")]
    sign_convention: SignConvention,
    #[arg(long, value_enum, default_value = "literal")]
    deletion_rule: Rule,
    /// Include wall-clock time per check.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 12)]
    max_weight: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    min_part: u32,
    #[arg(long, value_enum, default_value = "literal")]
    deletion_rule: Rule,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Bn,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    #[arg(long, default_value_t = 12)]
    max: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ShowArgs {
    /// `mu1/mu2` such as `1,2,3/2`, or a multiset such as `1,2,2,3`.
    partition: String,
    #[arg(long, value_enum, default_value = "literal")]
    deletion_rule: Rule,
}

fn budget() -> Result<usize, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_BUDGET),
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Error> {
    let written = match &out.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run_params(a: &VerifyArgs) -> Result<RunParams, Error> {
    let mut p = RunParams {
        budget: budget()?,
        odd_convention: match a.sign_convention {
            SignConvention::Printed => OddSignConvention::Printed,
            SignConvention::Empirical => OddSignConvention::Empirical,
        },
        deletion_rule: a.deletion_rule.into(),
        ..RunParams::default()
    };
    if let Some(w) = a.max_weight {
        p.max_weight = w;
        p.signature_weight = w;
        p.prune_weight = w;
    }
    if let Some(q) = a.q_order {
        p.q_order = q;
    }
    if let Some(x) = a.x_order {
        p.x_order = x;
    }
    if let Some(n) = a.n_parts {
        p.gf_parts = n;
    }
    Ok(p)
}

fn report_json(r: &Report, timings: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    if timings {
        v["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
    }
    v
}

fn render_reports(reports: &[Report], format: Format, timings: bool) -> String {
    match format {
        Format::Json => {
            let value = match reports {
                [one] => report_json(one, timings),
                many => Value::Array(many.iter().map(|r| report_json(r, timings)).collect()),
            };
            serde_json::to_string_pretty(&value).expect("json") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("check,status,location,expected,actual,context\n");
            for r in reports {
                if r.mismatches.is_empty() {
                    s.push_str(&format!("{},{},,,,\n", r.check, r.status));
                }
                for m in &r.mismatches {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        r.check,
                        r.status,
                        csv_field(&m.location.to_string()),
                        csv_field(&value_text(&m.expected)),
                        csv_field(&value_text(&m.actual)),
                        csv_field(m.context.as_deref().unwrap_or("")),
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.summary_line());
                if timings {
                    s.push_str(&format!("  [{:.1} ms]", r.elapsed.as_secs_f64() * 1e3));
                }
                s.push('\n');
                if let Some(series) = &r.series {
                    let coeffs: Vec<String> = series.coeffs().iter().map(i64::to_string).collect();
                    s.push_str(&format!("  coefficients through q^{}: {}\n", series.order(), coeffs.join(", ")));
                }
            }
            s
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<u8, Error> {
    let checks = match a.check {
        Target::All => CheckKind::ALL.to_vec(),
        Target::Chains => vec![CheckKind::Chains],
        Target::Signatures => vec![CheckKind::Signatures],
        Target::Prune => vec![CheckKind::Prune],
        Target::Rr1 => vec![CheckKind::Rr1],
        Target::Rr2 => vec![CheckKind::Rr2],
        Target::Gf => vec![CheckKind::Gf],
        Target::Functional => vec![CheckKind::Functional],
        Target::Classical => vec![CheckKind::Classical],
        Target::Edgevertex => vec![CheckKind::Edgevertex],
        Target::Controls => vec![CheckKind::Controls],
    };
    let config = RunConfig {
        checks,
        params: run_params(a)?,
    };
    let reports = run_all(&config)?;
    emit(&a.out, &render_reports(&reports, a.out.format, a.timings))?;
    let first_failure = config
        .checks
        .iter()
        .zip(&reports)
        .find(|(_, r)| !r.passed())
        .map(|(k, _)| EXIT_CHECK_BASE + k.ordinal());
    Ok(first_failure.unwrap_or(0))
}

fn enumerate(a: &EnumerateArgs) -> Result<u8, Error> {
    let catalog = Catalog::build(a.max_weight, a.deletion_rule.into(), budget()?)?;
    let entries: Vec<_> = catalog
        .entries
        .iter()
        .filter(|e| e.partition.smallest_part().is_none_or(|p| p >= a.min_part))
        .collect();
    let sig_text = |sig: &[u32]| sig.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let text = match a.out.format {
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "partition": e.partition.to_string(),
                        "weight": e.weight,
                        "parts": e.parts,
                        "sign": e.sign,
                        "sig": e.sig,
                        "pruned_edges": e.pruned_edges,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("json") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("partition,weight,parts,sign,sig,pruned_edges\n");
            for e in &entries {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_field(&e.partition.to_string()),
                    e.weight,
                    e.parts,
                    e.sign,
                    sig_text(&e.sig),
                    e.pruned_edges
                ));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                s.push_str(&format!(
                    "{:<24} weight {:>3}  sign {:>2}  SIG {{{}}}  G' edges {}\n",
                    e.partition.to_string(),
                    e.weight,
                    e.sign,
                    sig_text(&e.sig),
                    e.pruned_edges
                ));
            }
            s.push_str(&format!(
                "{} admissible of {} neighborly partitions with weight <= {}\n",
                entries.len(),
                catalog.neighborly_count,
                a.max_weight
            ));
            s
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}

fn table(a: &TableArgs) -> Result<u8, Error> {
    let TableKind::Bn = a.kind;
    let signs = (1..=a.max).map(chain_sign).collect::<Result<Vec<_>, _>>()?;
    let text = match a.out.format {
        Format::Json => serde_json::to_string(&signs).expect("json") + "\n",
        Format::Csv => {
            let mut s = String::from("n,sign\n");
            for (n, b) in signs.iter().enumerate() {
                s.push_str(&format!("{},{b}\n", n + 1));
            }
            s
        }
        Format::Text => {
            let cells: Vec<String> = signs.iter().map(i64::to_string).collect();
            cells.join(", ") + "\n"
        }
    };
    emit(&a.out, &text)?;
    Ok(0)
}

fn show(a: &ShowArgs) -> Result<u8, Error> {
    let np = NeighborlyPartition::parse(&a.partition)?;
    let g = build_graph(&np);
    let sig = sig_multiset(&g).elements;
    let (signature, _) = signature_closed(&g);
    let mut s = format!("partition {np}  weight {}\n\nG:\n{}", np.weight(), render_graph(&np));
    let sig_list: Vec<String> = sig.iter().map(u32::to_string).collect();
    s.push_str(&format!("SIG {{{}}}  signature {signature}\n\n", sig_list.join(", ")));
    let rule: DeletionRule = a.deletion_rule.into();
    match render_pruned(&np, rule) {
        Ok(drawing) => {
            let edges = prune(&g, rule)?.edge_count;
            s.push_str(&format!("G':\n{drawing}edges {edges}\n"));
        }
        Err(e) => s.push_str(&format!("G': not defined, {e}\n")),
    }
    io::stdout()
        .lock()
        .write_all(s.as_bytes())
        .map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Table(a) => table(a),
        Command::Show(a) => show(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_ERROR,
            })
        }
    }
}
