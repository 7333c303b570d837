//! `tdim` — bounds on transfinite dimension functions for spaces described
//! in a small expression language, plus the exact-arithmetic laboratory.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 internal rule
//! inconsistency or law-suite failure.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::PathBuf;
use std::process::ExitCode;
use tdim_core::laws::{run_all, LawConfig};
use tdim_core::report::{evaluate_input, EvalError};
use tdim_lab::{
    balance_constant, box_dimension_estimate, build_phi, check_metric_axioms, default_schedule,
    fat_cantor, lipschitz_estimate, product_box_counts, PhiShape, Rat, TruncatedSpace, Truncation,
};

#[derive(Parser)]
#[command(name = "tdim", version, about = "Bounds on transfinite dimension functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a space expression and print its bound report
    Eval {
        expr: String,
        /// Machine-readable report
        #[arg(long)]
        json: bool,
        /// Include the derivation trace in the human output
        #[arg(long)]
        trace: bool,
    },
    /// Print the derivation trace of an expression
    Trace { expr: String },
    /// Run the seeded randomized ordinal law suite
    CheckOrdinals {
        #[arg(long, default_value_t = 10_000)]
        cases: u32,
        #[arg(long, default_value_t = 0x0D15_EA5E)]
        seed: u64,
    },
    /// Exact-arithmetic laboratory for the metric constructions
    Metric {
        #[command(subcommand)]
        command: MetricCommand,
    },
}

#[derive(Subcommand)]
enum MetricCommand {
    /// Realize a truncation (e.g. --space S:w) and certify its metric
    Check {
        /// Space to realize, as S:ORDINAL (the ordinal must be countable)
        #[arg(long)]
        space: String,
        /// Blocks realized at a limit level
        #[arg(long, default_value_t = 6)]
        blocks: usize,
        /// Finest interval grid step, a unit fraction like 1/8
        #[arg(long, default_value = "1/8")]
        grid: String,
        /// Total point budget
        #[arg(long, default_value_t = 300)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Sample the normalized measure map and estimate its Lipschitz constant
    Phi {
        /// Cantor construction depth
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Level of the map: a natural number, or "w" for the glued map
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Blocks of the glued map when alpha = w
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        /// Sample-size budget
        #[arg(long, default_value_t = 1024)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Estimate box dimension from exact interval counts
    Boxdim {
        /// Set to measure: cantor:DEPTH or cantor:DEPTH^POWER
        #[arg(long)]
        set: String,
        /// Comma-separated decreasing scales, e.g. 1/4,1/16,1/64
        #[arg(long)]
        scales: String,
        /// Write (scale, count) pairs as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Eval { expr, json, trace } => cmd_eval(&expr, json, trace),
        Command::Trace { expr } => cmd_eval(&expr, false, true),
        Command::CheckOrdinals { cases, seed } => cmd_check_ordinals(cases, seed),
        Command::Metric { command } => match command {
            MetricCommand::Check {
                space,
                blocks,
                grid,
                budget,
                json,
            } => cmd_metric_check(&space, blocks, &grid, budget, json),
            MetricCommand::Phi {
                depth,
                alpha,
                blocks,
                budget,
                json,
            } => cmd_metric_phi(depth, &alpha, blocks, budget, json),
            MetricCommand::Boxdim {
                set,
                scales,
                csv,
                json,
            } => cmd_metric_boxdim(&set, &scales, csv.as_deref(), json),
        },
    };
    ExitCode::from(code)
}

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

fn cmd_eval(input: &str, json: bool, trace: bool) -> u8 {
    match evaluate_input(input) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.render_human(trace));
            }
            EXIT_OK
        }
        Err(EvalError::Parse(e)) => {
            eprintln!("error: {e}");
            if !e.expected.is_empty() {
                eprintln!("expected: {}", e.expected.join(", "));
            }
            EXIT_INVALID
        }
        Err(EvalError::Space(e)) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                EXIT_INCONSISTENT
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn cmd_check_ordinals(cases: u32, seed: u64) -> u8 {
    let config = LawConfig { cases, seed };
    let outcomes = run_all(&config);
    let mut failed = false;
    for outcome in &outcomes {
        if outcome.passed() {
            println!("law {:<32} PASS ({} cases)", outcome.name, outcome.cases);
        } else {
            failed = true;
            println!(
                "law {:<32} FAIL ({} of {} cases)",
                outcome.name, outcome.failures, outcome.cases
            );
            if let Some(witness) = &outcome.first_failure {
                println!("    first failure: {witness}");
            }
        }
    }
    if failed {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    }
}

fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {text}"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {text}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {text}"));
    }
    Ok(Rat::new(n, d))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_metric_check(space: &str, blocks: usize, grid: &str, budget: usize, json: bool) -> u8 {
    let run = || -> Result<(String, bool), String> {
        let shape_text = space
            .strip_prefix("S:")
            .ok_or_else(|| format!("space must look like S:w, got {space}"))?;
        let shape: tdim_core::Ordinal = shape_text.parse().map_err(|e| format!("{e}"))?;
        let shape = shape
            .as_small()
            .ok_or_else(|| "only countable levels can be realized".to_string())?
            .clone();
        let grid = parse_rat(grid)?;
        let params = Truncation::new(blocks, grid, budget).map_err(|e| e.to_string())?;
        let trunc = TruncatedSpace::build(&shape, &params).map_err(|e| e.to_string())?;
        let cloud = trunc.cloud().map_err(|e| e.to_string())?;
        let report = check_metric_axioms(&cloud, budget).map_err(|e| e.to_string())?;
        let balance = balance_constant(&cloud).ok();
        let ok = report.all_hold() && report.within_bound_one();
        let doc = if json {
            serde_json::to_string_pretty(&serde_json::json!({
                "space": space,
                "points": report.points,
                "symmetric": report.symmetric,
                "identity_of_indiscernibles": report.identity_of_indiscernibles,
                "triangle_ok": report.triangle_violation.is_none(),
                "triples_checked": report.triples_checked,
                "max_distance": report.max_distance.to_string(),
                "within_bound_one": report.within_bound_one(),
                "balance_constant": balance.as_ref().map(|b| b.to_string()),
            }))
            .expect("json")
        } else {
            let mut out = String::new();
            out += &format!("space: {space} ({} points)\n", report.points);
            out += &format!("symmetry:  {}\n", pass(report.symmetric));
            out += &format!("identity:  {}\n", pass(report.identity_of_indiscernibles));
            match &report.triangle_violation {
                None => {
                    out += &format!(
                        "triangles: {} ({} ordered triples)\n",
                        pass(true),
                        report.triples_checked
                    )
                }
                Some(w) => {
                    out += &format!(
                        "triangles: FAIL at ({}, {}, {}): {} > {}\n",
                        w.labels.0, w.labels.1, w.labels.2, w.direct, w.through
                    )
                }
            }
            out += &format!(
                "max distance: {} (bound 1: {})\n",
                report.max_distance,
                pass(report.within_bound_one())
            );
            if let Some(b) = &balance {
                out += &format!("balance constant: {b}\n");
            }
            out
        };
        Ok((doc, ok))
    };
    finish(run())
}

fn cmd_metric_phi(depth: usize, alpha: &str, blocks: usize, budget: usize, json: bool) -> u8 {
    let run = || -> Result<(String, bool), String> {
        let shape = match alpha {
            "w" => PhiShape::OmegaTruncation { blocks },
            text => {
                let k: u32 = text
                    .parse()
                    .map_err(|_| format!("alpha must be a natural number or w, got {text}"))?;
                PhiShape::Finite(k)
            }
        };
        let sample = build_phi(shape, depth, budget).map_err(|e| e.to_string())?;
        let report = lipschitz_estimate(&sample).map_err(|e| e.to_string())?;
        let ok = !report.violated;
        let doc = if json {
            serde_json::to_string_pretty(&serde_json::json!({
                "alpha": alpha,
                "depth": depth,
                "sample_points": sample.pairs.len(),
                "pair_count": report.pair_count,
                "sup_ratio": report.sup_ratio.to_string(),
                "claimed_bound": report.claimed_bound.to_string(),
                "violated": report.violated,
                "surjective_on_grid": sample.surjective_on_grid,
            }))
            .expect("json")
        } else {
            format!(
                "map: level {alpha}, depth {depth} ({} sample points)\n\
                 sup ratio: {} over {} pairs\n\
                 claimed bound: {} ({})\n\
                 surjective on grid: {}\n",
                sample.pairs.len(),
                report.sup_ratio,
                report.pair_count,
                report.claimed_bound,
                pass(!report.violated),
                pass(sample.surjective_on_grid),
            )
        };
        Ok((doc, ok))
    };
    finish(run())
}

fn cmd_metric_boxdim(
    set: &str,
    scales: &str,
    csv: Option<&std::path::Path>,
    json: bool,
) -> u8 {
    let run = || -> Result<(String, bool), String> {
        let spec = set
            .strip_prefix("cantor:")
            .ok_or_else(|| format!("set must look like cantor:8 or cantor:5^2, got {set}"))?;
        let (depth_text, power) = match spec.split_once('^') {
            Some((d, p)) => (
                d,
                p.parse::<u32>().map_err(|_| format!("bad power in {set}"))?,
            ),
            None => (spec, 1),
        };
        let depth: usize = depth_text
            .parse()
            .map_err(|_| format!("bad depth in {set}"))?;
        let scales: Vec<Rat> = scales
            .split(',')
            .map(parse_rat)
            .collect::<Result<_, _>>()?;
        let cantor = fat_cantor(depth, &default_schedule(depth)).map_err(|e| e.to_string())?;
        let counts = product_box_counts(&cantor, power, &scales).map_err(|e| e.to_string())?;
        let estimate = box_dimension_estimate(&counts).map_err(|e| e.to_string())?;
        if let Some(path) = csv {
            let mut body = String::from("scale,count\n");
            for (scale, count) in &counts {
                body += &format!("{scale},{count}\n");
            }
            std::fs::write(path, body).map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
        let doc = if json {
            serde_json::to_string_pretty(&serde_json::json!({
                "set": set,
                "depth": depth,
                "power": power,
                "measure": cantor.total_measure().to_string(),
                "counts": counts
                    .iter()
                    .map(|(s, c)| serde_json::json!({
                        "scale": s.to_string(),
                        "count": c.to_string(),
                    }))
                    .collect::<Vec<_>>(),
                "estimate": estimate,
            }))
            .expect("json")
        } else {
            let mut out = format!("set: {set} (measure {})\n", cantor.total_measure());
            for (scale, count) in &counts {
                out += &format!("  scale {scale}: {count} boxes\n");
            }
            out += &format!("box-dimension estimate: {estimate:.4}\n");
            out
        };
        Ok((doc, true))
    };
    finish(run())
}

fn finish(result: Result<(String, bool), String>) -> u8 {
    match result {
        Ok((doc, ok)) => {
            print!("{doc}");
            if ok {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
