//! `qident`: verify exact q-series identities and their weighted
//! partition counterparts from the command line.
//!
//! Exit codes: 0 on success/pass, 1 when a verification or suite criterion
//! fails, 2 on usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qident_core::partitions::{self, PartitionClass, Weight};
use qident_core::suite::run_acceptance;
use qident_core::{QSeries, Registry, Side, VerificationReport};

#[derive(Parser)]
#[command(
    name = "qident",
    version,
    about = "Exact verification of q-series and weighted partition identities",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    All,
    D,
    A,
}

impl ClassArg {
    fn to_class(self) -> PartitionClass {
        match self {
            ClassArg::All => PartitionClass::All,
            ClassArg::D => PartitionClass::Distinct,
            ClassArg::A => PartitionClass::ChainConfined,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    W1,
    W2,
    What1,
    What2,
}

impl WeightArg {
    fn to_weight(self) -> Weight {
        match self {
            WeightArg::W1 => Weight::W1,
            WeightArg::W2 => Weight::W2,
            WeightArg::What1 => Weight::WHat1,
            WeightArg::What2 => Weight::WHat2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build both sides of one identity and compare them exactly.
    Verify {
        /// Identity id; `verify-all` lists them.
        #[arg(long)]
        id: String,
        /// Truncation order (default: the identity's registered order).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the output to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every registered identity at its default order.
    VerifyAll {
        /// Override the order for every identity.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the coefficients of one side of an identity. Append `:rhs`
    /// (or `:lhs`) to the id to pick the side; the default is the left.
    Coeffs {
        #[arg(long)]
        id: String,
        /// Truncation order (default: the identity's registered order).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the partitions of `--n` with their statistics, or emit a
    /// weighted generating function up to `--n-max`.
    Partitions {
        /// List all partitions of this size.
        #[arg(long)]
        n: Option<u32>,
        /// Emit the weighted generating function through this size
        /// (requires --weight).
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        /// Weight column (list mode) or summand (generating-function mode);
        /// must match the class: w1/w2 need --class d, what1/what2 --class a.
        #[arg(long, value_enum)]
        weight: Option<WeightArg>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the weighted two-class table for partitions of `--n`.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full acceptance suite, one line per criterion.
    Suite {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A usage-level failure: reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Verify {
            id,
            order,
            format,
            out,
        } => {
            let registry = Registry::standard();
            let order = order.unwrap_or(registry.get(&id)?.default_order());
            let report = registry.verify(&id, order)?;
            emit(&out, &render_reports(std::slice::from_ref(&report), format))?;
            Ok(exit_for(report.passed()))
        }
        Command::VerifyAll { order, format, out } => {
            let registry = Registry::standard();
            let overrides: BTreeMap<String, usize> = match order {
                Some(n) => registry.ids().map(|id| (id.to_string(), n)).collect(),
                None => BTreeMap::new(),
            };
            let reports = registry.verify_all(&overrides);
            let mut content = render_reports(&reports, format);
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if format == Format::Text {
                content.push_str(&format!(
                    "{} of {} identities passed\n",
                    reports.len() - failed,
                    reports.len()
                ));
            }
            emit(&out, &content)?;
            Ok(exit_for(failed == 0))
        }
        Command::Coeffs {
            id,
            order,
            format,
            out,
        } => {
            let (id, side) = split_side(&id);
            let registry = Registry::standard();
            let order = order.unwrap_or(registry.get(id)?.default_order());
            let series = registry.build_side(id, side, order)?;
            let content = render_series(&format!("{id} {}", side.tag()), &series, format)?;
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Partitions {
            n,
            n_max,
            class,
            weight,
            format,
            out,
        } => {
            let content = match (n, n_max) {
                (Some(n), None) => render_partition_list(n, class, weight, format)?,
                (None, Some(n_max)) => {
                    let weight = weight
                        .ok_or_else(|| UsageError("--n-max requires --weight".into()))?
                        .to_weight();
                    let gf = partitions::weighted_gf(n_max, class.to_class(), weight)?;
                    render_series("weighted-gf", &gf, format)?
                }
                _ => {
                    return Err(UsageError(
                        "pass exactly one of --n (list) or --n-max (generating function)".into(),
                    ))
                }
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { n, format, out } => {
            let report = partitions::table_report(n);
            let content = match format {
                Format::Text => report.to_text(),
                Format::Json => format!("{:#}\n", report.to_json()),
                Format::Csv => report.to_csv(),
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { format, out } => {
            let results = run_acceptance();
            let all_passed = results.iter().all(|r| r.passed);
            let content = match format {
                Format::Text => {
                    let mut text: String = results.iter().map(|r| r.line() + "\n").collect();
                    text.push_str(if all_passed {
                        "acceptance suite: PASS\n"
                    } else {
                        "acceptance suite: FAIL\n"
                    });
                    text
                }
                Format::Json => {
                    let array: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "number": r.number,
                                "name": r.name,
                                "outcome": if r.passed { "pass" } else { "fail" },
                                "detail": r.detail,
                                "elapsed_ms": r.elapsed.as_millis() as u64,
                            })
                        })
                        .collect();
                    format!("{:#}\n", Value::Array(array))
                }
                Format::Csv => {
                    let mut csv = String::from("number,name,outcome,elapsed_ms\n");
                    for r in &results {
                        csv.push_str(&format!(
                            "{},{},{},{}\n",
                            r.number,
                            r.name,
                            if r.passed { "pass" } else { "fail" },
                            r.elapsed.as_millis()
                        ));
                    }
                    csv
                }
            };
            emit(&out, &content)?;
            Ok(exit_for(all_passed))
        }
    }
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Split a trailing `:lhs` / `:rhs` selector off an identity id; ids may
/// themselves contain `:` (e.g. the heine grid), so only the final segment
/// counts, and only when it names a side.
fn split_side(id: &str) -> (&str, Side) {
    match id.rsplit_once(':') {
        Some((head, "lhs")) => (head, Side::Lhs),
        Some((head, "rhs")) => (head, Side::Rhs),
        _ => (id, Side::Lhs),
    }
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(|r| r.to_string() + "\n").collect(),
        Format::Json => {
            if reports.len() == 1 {
                format!("{:#}\n", reports[0].to_json())
            } else {
                let array: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
                format!("{:#}\n", Value::Array(array))
            }
        }
        Format::Csv => {
            let mut csv = String::from("id,order,outcome,mismatch_q\n");
            for r in reports {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    r.id,
                    r.order,
                    r.outcome.tag(),
                    r.first_mismatch
                        .as_ref()
                        .map(|m| m.q.to_string())
                        .unwrap_or_default()
                ));
            }
            csv
        }
    }
}

fn render_series(label: &str, series: &QSeries, format: Format) -> Result<String, UsageError> {
    match format {
        Format::Json => Ok(format!("{:#}\n", series.to_json())),
        Format::Csv => series.to_csv().map_err(|_| {
            UsageError("csv output requires a symbol-free series; use --format json".into())
        }),
        Format::Text => {
            let mut text = format!("{label} (order {})\n", series.order());
            for (k, coefficient) in series.coeffs().iter().enumerate() {
                if !coefficient.is_zero() {
                    text.push_str(&format!("[q^{k}] {coefficient}\n"));
                }
            }
            Ok(text)
        }
    }
}

fn render_partition_list(
    n: u32,
    class: ClassArg,
    weight: Option<WeightArg>,
    format: Format,
) -> Result<String, UsageError> {
    let class = class.to_class();
    let weight = weight.map(WeightArg::to_weight);
    if let Some(weight) = weight {
        if weight.domain() != class {
            return Err(UsageError(format!(
                "weight `{}` is only defined on class `{}`",
                weight.tag(),
                weight.domain().tag()
            )));
        }
    }
    struct Row {
        partition: String,
        size: u64,
        parts: u64,
        chain: u32,
        p1: u32,
        p2: u32,
        r1: u32,
        r2: u32,
        weight: Option<String>,
    }
    let rows: Vec<Row> = partitions::enumerate(n, class)
        .iter()
        .map(|pi| {
            let s = partitions::stats(pi, 2);
            Row {
                partition: pi.to_string(),
                size: s.size,
                parts: s.parts,
                chain: s.chain,
                p1: s.p_stat(1),
                p2: s.p_stat(2),
                r1: s.r_stat(1),
                r2: s.r_stat(2),
                weight: weight.map(|w| w.evaluate(pi).expect("domain checked").to_string()),
            }
        })
        .collect();
    match format {
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.partition.len())
                .chain(["partition".len()])
                .max()
                .unwrap();
            let mut text = format!(
                "{:<width$}  {:>4}  {:>5}  {:>2}  {:>3}  {:>3}  {:>3}  {:>3}",
                "partition", "size", "parts", "t", "p1", "p2", "r1", "r2"
            );
            if let Some(w) = weight {
                text.push_str(&format!("  {:>6}", w.tag()));
            }
            text.push('\n');
            for r in &rows {
                text.push_str(&format!(
                    "{:<width$}  {:>4}  {:>5}  {:>2}  {:>3}  {:>3}  {:>3}  {:>3}",
                    r.partition, r.size, r.parts, r.chain, r.p1, r.p2, r.r1, r.r2
                ));
                if let Some(w) = &r.weight {
                    text.push_str(&format!("  {w:>6}"));
                }
                text.push('\n');
            }
            Ok(text)
        }
        Format::Json => {
            let array: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut object = json!({
                        "partition": r.partition,
                        "size": r.size,
                        "parts": r.parts,
                        "t": r.chain,
                        "p1": r.p1,
                        "p2": r.p2,
                        "r1": r.r1,
                        "r2": r.r2,
                    });
                    if let Some(w) = &r.weight {
                        object["weight"] = json!(w);
                    }
                    object
                })
                .collect();
            Ok(format!(
                "{:#}\n",
                json!({ "n": n, "class": class.tag(), "rows": array })
            ))
        }
        Format::Csv => {
            let mut csv = String::from("partition,size,parts,t,p1,p2,r1,r2,weight\n");
            for r in &rows {
                csv.push_str(&format!(
                    "\"{}\",{},{},{},{},{},{},{},{}\n",
                    r.partition,
                    r.size,
                    r.parts,
                    r.chain,
                    r.p1,
                    r.p2,
                    r.r1,
                    r.r2,
                    r.weight.clone().unwrap_or_default()
                ));
            }
            Ok(csv)
        }
    }
}
