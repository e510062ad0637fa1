//! `trop`: batch front end for exact tropical linear algebra.
//!
//! Inputs are matrix files in the text or JSON format, or `builtin:<name>`
//! references into the catalog. All arithmetic is exact; `--format json`
//! output is byte-identical across runs and thread counts.

mod claims;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use tropical::assignment::{enumerate_minimizing, tropdet};
use tropical::cells::cell_dimension;
use tropical::constructions::{
    append_combination_col, append_combination_row, border_pm, builtin, strict_scaling_coefficients,
    sym_append, sym_border_pm, Coefficients, BUILTIN_NAMES,
};
use tropical::io::{format_rational, matrix_to_json, parse_matrix_any, parse_rational, serialize_matrix};
use tropical::rank::{symmetric_tropical_rank, tropical_rank, RankResult};
use tropical::theory::{prevariety_lower_bound_standard, prevariety_lower_bound_symmetric};
use tropical::tropoly::{first_failing_minor, generate_minors};
use tropical::{Bijection, Matrix, Mode, Rational, SubIndex};

#[derive(Parser)]
#[command(
    name = "trop",
    about = "Exact tropical determinants, ranks, linear cells, and dimension gaps",
    version
)]
struct Cli {
    /// Worker threads (default: all cores). Affects wall time only.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,

    /// Witness enumeration cap.
    #[arg(long, global = true, default_value_t = tropical::assignment::DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical determinant with all minimizing bijections.
    Det {
        /// Matrix file or builtin:<name>.
        input: String,
    },
    /// Tropical rank (or symmetric tropical rank) with a witness submatrix.
    Rank {
        input: String,
        #[arg(long)]
        symmetric: bool,
    },
    /// Local linear-cell dimension from the r x r minors.
    Celldim {
        input: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        symmetric: bool,
        /// Also print the deduplicated equation system.
        #[arg(long)]
        emit_equations: bool,
    },
    /// Prevariety membership: are all r x r submatrices singular?
    Member {
        input: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        symmetric: bool,
        /// Decide through the minor polynomials instead of the rank path.
        #[arg(long)]
        via_minors: bool,
    },
    /// Stream the r x r minors of an m x n matrix of indeterminates.
    Minors {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        symmetric: bool,
    },
    /// Emit a catalog matrix.
    Builtin {
        /// One of the catalog names; `list` prints them.
        name: String,
    },
    /// Rank-controlled matrix constructions.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Dimension-gap report for a no-basis parameter set.
    Gap {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        symmetric: bool,
    },
    /// Run the claim ledger and exit nonzero if any claim fails.
    VerifyPaper {
        /// Comma-separated claim ids (default: all). `list` prints them.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
    },
}

#[derive(Subcommand)]
enum ConstructOp {
    /// Append a tropical linear combination of columns (rank preserved).
    AppendCol {
        input: String,
        /// Combination as idx:value pairs, e.g. "1:0,3:1/2".
        #[arg(long)]
        coeffs: String,
    },
    /// Append a tropical linear combination of rows (rank preserved).
    AppendRow {
        input: String,
        #[arg(long)]
        coeffs: String,
    },
    /// Border with a high value P and low corner M (rank + 1).
    Border {
        input: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        m: Option<String>,
    },
    /// Symmetric combination append (symmetric rank preserved).
    SymAppend {
        input: String,
        #[arg(long)]
        coeffs: String,
    },
    /// Symmetric border (symmetric rank + 1).
    SymBorder {
        input: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        m: Option<String>,
    },
    /// Strict column-scaling coefficients for a nonsingular matrix.
    Coefficients {
        input: String,
        /// Witness bijection as its image sequence, e.g. "2,3,1"
        /// (default: the computed determinant witness).
        #[arg(long)]
        witness: Option<String>,
    },
}

fn load_matrix(input: &str) -> Result<Matrix> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| anyhow!("{e}"));
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    parse_matrix_any(&text).map_err(|e| anyhow!("{input}: {e}"))
}

fn parse_scalar_flag(value: Option<&str>, flag: &str) -> Result<Option<Rational>> {
    value
        .map(|v| {
            parse_rational(v).ok_or_else(|| anyhow!("--{flag} expects a rational, got `{v}`"))
        })
        .transpose()
}

fn parse_coeffs(text: &str) -> Result<Coefficients<Rational>> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let (idx, value) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("--coeffs expects idx:value pairs, got `{part}`"))?;
        let idx: usize = idx.trim().parse().context("coefficient index")?;
        let value = parse_rational(value)
            .ok_or_else(|| anyhow!("`{value}` is not a rational"))?;
        map.insert(idx, value);
    }
    Coefficients::new(map).map_err(|e| anyhow!("{e}"))
}

fn parse_witness(text: &str) -> Result<Bijection> {
    let image: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().context("witness image entry"))
        .collect::<Result<_>>()?;
    Bijection::from_images(image).map_err(|e| anyhow!("{e}"))
}

fn sub_index_json(s: &SubIndex) -> serde_json::Value {
    json!({ "rows": s.row_indices(), "cols": s.col_indices() })
}

fn emit_matrix(a: &Matrix, format: &str) {
    if format == "json" {
        println!("{}", matrix_to_json(a));
    } else {
        print!("{}", serialize_matrix(a));
    }
}

fn rank_text(r: &RankResult) -> String {
    format!("rank {} ({})\nwitness: {}", r.rank, r.mode, r.witness)
}

fn run(cli: Cli) -> Result<bool> {
    let format = cli.format.as_str();
    let cap = Some(cli.cap);
    match cli.command {
        Command::Det { input } => {
            let a = load_matrix(&input)?;
            let det = tropdet(&a)?;
            let all = enumerate_minimizing(&a, cap)?;
            if format == "json" {
                let witnesses: Vec<Vec<usize>> =
                    all.witnesses.iter().map(|w| w.image().to_vec()).collect();
                let sym: Vec<Vec<(usize, usize)>> =
                    all.sym_witnesses.iter().map(|m| m.pairs().to_vec()).collect();
                println!(
                    "{}",
                    json!({
                        "value": format_rational(&det.value),
                        "witnesses": witnesses,
                        "sym_witnesses": sym,
                        "truncated": all.truncated,
                    })
                );
            } else {
                println!("tropical determinant: {}", format_rational(&det.value));
                println!(
                    "{} minimizing bijection{}{}:",
                    all.witnesses.len(),
                    if all.witnesses.len() == 1 { "" } else { "s" },
                    if all.truncated { " (truncated at cap)" } else { "" }
                );
                for w in &all.witnesses {
                    println!("  {w}");
                }
                println!(
                    "{} distinct monomial{} under the symmetric identification",
                    all.sym_witnesses.len(),
                    if all.sym_witnesses.len() == 1 { "" } else { "s" }
                );
            }
            Ok(true)
        }
        Command::Rank { input, symmetric } => {
            let a = load_matrix(&input)?;
            let result = if symmetric {
                symmetric_tropical_rank(&a)?
            } else {
                tropical_rank(&a)
            };
            if format == "json" {
                println!(
                    "{}",
                    json!({
                        "rank": result.rank,
                        "mode": result.mode,
                        "witness": sub_index_json(&result.witness),
                    })
                );
            } else {
                println!("{}", rank_text(&result));
            }
            Ok(true)
        }
        Command::Celldim { input, r, symmetric, emit_equations } => {
            let a = load_matrix(&input)?;
            let mode = if symmetric { Mode::Symmetric } else { Mode::Standard };
            let (cell, sys) = cell_dimension(&a, r, mode, cap)?;
            if format == "json" {
                let mut obj = json!({
                    "dimension": cell.dimension,
                    "system_rank": cell.system_rank,
                    "equation_count": cell.equation_count,
                    "ambient_dim": sys.ambient_dim,
                    "r": r,
                    "mode": mode,
                });
                if emit_equations {
                    obj["equations"] = serde_json::to_value(&sys.equations)?;
                }
                println!("{obj}");
            } else {
                println!(
                    "cell dimension {} (ambient {}, system rank {}, {} equations)",
                    cell.dimension, sys.ambient_dim, cell.system_rank, cell.equation_count
                );
                if emit_equations {
                    print!("{}", sys.to_text());
                }
            }
            Ok(true)
        }
        Command::Member { input, r, symmetric, via_minors } => {
            let a = load_matrix(&input)?;
            let mode = if symmetric { Mode::Symmetric } else { Mode::Standard };
            let failing = if via_minors {
                first_failing_minor(&a, r, mode)?
            } else {
                tropical::rank::first_nonsingular_submatrix(&a, r, mode)?
            };
            let member = failing.is_none();
            if format == "json" {
                println!(
                    "{}",
                    json!({
                        "member": member,
                        "r": r,
                        "mode": mode,
                        "via": if via_minors { "minors" } else { "rank" },
                        "failing": failing.as_ref().map(sub_index_json),
                    })
                );
            } else if let Some(s) = failing {
                println!("false (nonsingular minor at {s})");
            } else {
                println!("true");
            }
            Ok(true)
        }
        Command::Minors { m, n, r, symmetric } => {
            let mode = if symmetric { Mode::Symmetric } else { Mode::Standard };
            if format == "json" {
                let minors: Vec<serde_json::Value> = generate_minors::<Rational>(m, n, r, mode)?
                    .map(|(s, poly)| {
                        json!({
                            "rows": s.row_indices(),
                            "cols": s.col_indices(),
                            "poly": poly.to_string(),
                        })
                    })
                    .collect();
                println!("{}", json!({ "minors": minors }));
            } else {
                for (_, poly) in generate_minors::<Rational>(m, n, r, mode)? {
                    println!("{poly}");
                }
            }
            Ok(true)
        }
        Command::Builtin { name } => {
            if name == "list" {
                for n in BUILTIN_NAMES {
                    println!("{n}");
                }
                return Ok(true);
            }
            let a = builtin(&name)?;
            emit_matrix(&a, format);
            Ok(true)
        }
        Command::Construct { op } => {
            let out = match op {
                ConstructOp::AppendCol { input, coeffs } => {
                    append_combination_col(&load_matrix(&input)?, &parse_coeffs(&coeffs)?)?
                }
                ConstructOp::AppendRow { input, coeffs } => {
                    append_combination_row(&load_matrix(&input)?, &parse_coeffs(&coeffs)?)?
                }
                ConstructOp::Border { input, p, m } => border_pm(
                    &load_matrix(&input)?,
                    parse_scalar_flag(p.as_deref(), "p")?,
                    parse_scalar_flag(m.as_deref(), "m")?,
                )?,
                ConstructOp::SymAppend { input, coeffs } => {
                    sym_append(&load_matrix(&input)?, &parse_coeffs(&coeffs)?)?
                }
                ConstructOp::SymBorder { input, p, m } => sym_border_pm(
                    &load_matrix(&input)?,
                    parse_scalar_flag(p.as_deref(), "p")?,
                    parse_scalar_flag(m.as_deref(), "m")?,
                )?,
                ConstructOp::Coefficients { input, witness } => {
                    let a = load_matrix(&input)?;
                    let sigma = match witness {
                        Some(text) => parse_witness(&text)?,
                        None => tropdet(&a)?.witness,
                    };
                    let c = strict_scaling_coefficients(&a, &sigma)?;
                    if format == "json" {
                        let map: BTreeMap<String, String> = c
                            .iter()
                            .map(|(k, v)| (k.to_string(), format_rational(v)))
                            .collect();
                        println!("{}", json!({ "witness": sigma.image(), "coefficients": map }));
                    } else {
                        println!("witness: {sigma}");
                        for (k, v) in c.iter() {
                            println!("c_{k} = {}", format_rational(v));
                        }
                    }
                    return Ok(true);
                }
            };
            emit_matrix(&out, format);
            Ok(true)
        }
        Command::Gap { m, n, r, symmetric } => {
            let report = match (symmetric, m) {
                (true, None) => prevariety_lower_bound_symmetric(n, r)?,
                (true, Some(_)) => bail!("--symmetric takes --n and --r only"),
                (false, Some(m)) => prevariety_lower_bound_standard(m, n, r)?,
                (false, None) => bail!("standard gaps need --m, --n and --r"),
            };
            if format == "json" {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(true)
        }
        Command::VerifyPaper { claims } => {
            if claims.as_deref() == Some(&["list".to_string()]) {
                for id in claims::claim_ids() {
                    println!("{id}");
                }
                return Ok(true);
            }
            let reports = claims::run_claims(claims.as_deref()).map_err(|e| anyhow!(e))?;
            let all_pass = reports.iter().all(|r| r.pass);
            if format == "json" {
                println!(
                    "{}",
                    json!({ "pass": all_pass, "claims": serde_json::to_value(&reports)? })
                );
            } else {
                for r in &reports {
                    let mut line = format!(
                        "{} {} {}: computed {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.tag,
                        r.id,
                        r.computed
                    );
                    match &r.expected {
                        Some(e) if !r.pass => write!(line, " (expected {e})").unwrap(),
                        None => write!(line, " (reported, not asserted)").unwrap(),
                        _ => {}
                    }
                    write!(line, " [{:.2?}]", r.elapsed).unwrap();
                    println!("{line}");
                }
                println!(
                    "{}/{} claims pass",
                    reports.iter().filter(|r| r.pass).count(),
                    reports.len()
                );
            }
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("trop: could not configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("trop: {e:#}");
            ExitCode::from(1)
        }
    }
}
