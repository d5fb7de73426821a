//! Command-line front end: argument parsing, dispatch, and exit codes.
//!
//! Exit code contract:
//!
//! * `0` — the requested computation succeeded (for `check` without
//!   `--require-poisson`, a clean NOT-POISSON verdict also counts as
//!   success: the question was answered).
//! * `1` — a mathematical failure: a demo relation did not hold, the two
//!   Poisson verdicts disagreed, `--require-poisson` was not met, a
//!   factorization was rejected or inconclusive, or a solver residual
//!   survived.
//! * `2` — a usage or input error: bad flags, unreadable files, parse
//!   errors, violated preconditions.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use starq_core::{
    d4_scale_counterexample_search, obs3_lhs, poisson_equiv_check, quasibasic_factor,
    reduced_solve_d3, D4ScaleSearch, Polynomial, QuasibasicOutcome,
};

use crate::demos::{run_demo, DEMO_NAMES};
use crate::formats::{parse_bivector_file, parse_check_file, parse_family_file, CheckInput};
use crate::report::{
    write_json, CheckReport, FactorReport, RelationReport, SearchReport, SolveReport,
};

/// Success.
pub const EXIT_OK: i32 = 0;
/// A verified mathematical statement failed.
pub const EXIT_MATH: i32 = 1;
/// Bad usage or malformed input.
pub const EXIT_USAGE: i32 = 2;

/// Exact star products and Poisson-structure checks on polynomial algebras.
#[derive(Debug, Parser)]
#[command(name = "starq", version, about, max_term_width = 100)]
struct Cli {
    /// Truncation order for series computations.
    #[arg(long, global = true, default_value_t = 6,
          value_parser = clap::value_parser!(u32).range(1..=64))]
    order: u32,

    /// Write a machine-readable JSON summary to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Print supporting detail for every check.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a built-in demonstration (weyl, clifford, quantum-plane, cgg,
    /// explat).
    Demo {
        /// Name of the demo.
        name: String,
    },
    /// Check a bivector (or structure-constant) file: compute the canonical
    /// obstruction coefficients and compare against the Jacobi identity.
    Check {
        /// Bivector file (`aij = …`) or structure-constant file
        /// (`c[i,j,k] = …`).
        file: PathBuf,
        /// Exit with code 1 unless the input is certified Poisson.
        #[arg(long)]
        require_poisson: bool,
    },
    /// Solve the reduced three-variable obstruction equation (`a12 = 1`,
    /// given `a13`) for `a23` and write the completed bivector next to the
    /// input.
    SolveD3 {
        /// Bivector file supplying `a13` (free of `x3`).
        file: PathBuf,
    },
    /// Factor a three-variable bivector into a scalar times separated
    /// single-variable factors, or name the violated ratio condition.
    Factor {
        /// Bivector file with all three coefficients nonzero.
        file: PathBuf,
    },
    /// Scan a family of `(bivector, phi)` candidates in dimension 4 for a
    /// quadratic-scaling counterexample.
    SearchD4 {
        /// Family file: bivector blocks with `phi = …` lines, separated by
        /// blank lines.
        family_file: PathBuf,
    },
}

/// Parses `std::env::args` and runs the selected command, returning the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json.clone();
    let result = match &cli.command {
        Command::Demo { name } => cmd_demo(name, cli.order, json.as_deref(), cli.verbose),
        Command::Check { file, require_poisson } => {
            cmd_check(file, *require_poisson, json.as_deref(), cli.verbose)
        }
        Command::SolveD3 { file } => cmd_solve_d3(file, cli.order, json.as_deref(), cli.verbose),
        Command::Factor { file } => cmd_factor(file, json.as_deref(), cli.verbose),
        Command::SearchD4 { family_file } => {
            cmd_search_d4(family_file, json.as_deref(), cli.verbose)
        }
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn read_input(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{}`: {e}", path.display()))
}

fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), String> {
    match path {
        Some(p) => {
            write_json(p, value).map_err(|e| format!("cannot write `{}`: {e}", p.display()))
        }
        None => Ok(()),
    }
}

/// Renders a polynomial for output, never as the empty string.
fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        "0".to_string()
    } else {
        p.to_string()
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_demo(
    name: &str,
    order: u32,
    json: Option<&Path>,
    verbose: bool,
) -> Result<i32, String> {
    let run = run_demo(name, order).ok_or_else(|| {
        format!("unknown demo `{name}` (expected one of: {})", DEMO_NAMES.join(", "))
    })?;
    println!("demo {} (order {})", run.name, run.order);
    for check in &run.checks {
        println!("  {}: {}", check.relation, if check.passed { "PASS" } else { "FAIL" });
        if verbose {
            println!("    {}", check.detail);
        }
    }
    let reports: Vec<RelationReport> = run.reports();
    emit_json(json, &reports)?;
    if run.all_passed() {
        println!("all {} checks passed", run.checks.len());
        Ok(EXIT_OK)
    } else {
        eprintln!("demo {}: at least one relation failed", run.name);
        Ok(EXIT_MATH)
    }
}

fn cmd_check(
    file: &Path,
    require_poisson: bool,
    json: Option<&Path>,
    verbose: bool,
) -> Result<i32, String> {
    let text = read_input(file)?;
    let input = parse_check_file(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let bivector = match input {
        CheckInput::Bivector(b) => b,
        CheckInput::Lie(lie) => {
            println!(
                "structure constants in dimension {}; checking the induced linear bivector",
                lie.dim()
            );
            starq_core::kks_bivector(&lie)
        }
    };
    if verbose {
        for (&(i, j), p) in bivector.entries() {
            println!("a[{i},{j}] = {}", poly_text(p));
        }
    }

    let report = poisson_equiv_check(&bivector).map_err(|e| e.to_string())?;
    let mut coeff_map = BTreeMap::new();
    for (&(i, j, k), p) in &report.obstruction_coeffs {
        println!("obstruction[{i},{j},{k}] = {}", poly_text(p));
        coeff_map.insert(format!("{i}{j}{k}"), poly_text(p));
    }
    if bivector.dim() < 3 {
        println!("dimension {} admits no obstruction equations; the bracket is unobstructed",
            bivector.dim());
    }
    println!("jacobi identity: {}", if report.jacobi_vanishes { "pass" } else { "fail" });

    let verdict = if !report.verdicts_agree {
        "ENGINE-DISAGREEMENT"
    } else if report.obstruction_vanishes {
        "POISSON"
    } else {
        "NOT-POISSON"
    };
    println!("verdict: {verdict}");

    emit_json(
        json,
        &CheckReport {
            input: file.display().to_string(),
            obstruction_coeffs: coeff_map,
            jacobi: if report.jacobi_vanishes { "pass" } else { "fail" }.to_string(),
            verdict: verdict.to_string(),
        },
    )?;

    if !report.verdicts_agree {
        eprintln!("the obstruction and Jacobi verdicts disagree; this is an engine bug");
        return Ok(EXIT_MATH);
    }
    if require_poisson && !report.obstruction_vanishes {
        eprintln!("--require-poisson: the bracket is not Poisson");
        return Ok(EXIT_MATH);
    }
    Ok(EXIT_OK)
}

fn cmd_solve_d3(
    file: &Path,
    order: u32,
    json: Option<&Path>,
    verbose: bool,
) -> Result<i32, String> {
    let text = read_input(file)?;
    let bivector = parse_bivector_file(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    if bivector.dim() != 3 {
        return Err(format!("solve-d3 needs dimension 3, found {}", bivector.dim()));
    }
    let one = Polynomial::one(3);
    let a12 = bivector.entry(1, 2);
    if a12 != one {
        return Err("solve-d3 expects the normalized form a12 = 1".to_string());
    }
    if !bivector.entry(2, 3).is_zero() {
        return Err("a23 is the unknown; leave it out of the input file".to_string());
    }
    let a13 = bivector.entry(1, 3);

    let solution = reduced_solve_d3(&a13, order).map_err(|e| e.to_string())?;
    let a23 = solution.poly().clone();
    let residual = obs3_lhs(&one, &a13, &a23).reduce_mod_degree(order);
    println!("a13 = {}", poly_text(&a13));
    println!("a23 = {}", poly_text(&a23));
    println!("residual of the obstruction equation (mod degree {order}): {}", poly_text(&residual));

    let out_path = file.with_extension("a23");
    let mut body = String::from("# completed bivector: a23 solved from a13 with a12 = 1\n");
    body.push_str("d = 3\n");
    body.push_str("a12 = 1\n");
    body.push_str(&format!("a13 = {}\n", poly_text(&a13)));
    body.push_str(&format!("a23 = {}\n", poly_text(&a23)));
    std::fs::write(&out_path, body)
        .map_err(|e| format!("cannot write `{}`: {e}", out_path.display()))?;
    println!("solution written to {}", out_path.display());
    if verbose {
        println!("iteration ran at truncation order {order}");
    }

    emit_json(
        json,
        &SolveReport {
            input: file.display().to_string(),
            a13: poly_text(&a13),
            a23: poly_text(&a23),
            order,
            residual: poly_text(&residual),
            solution_path: out_path.display().to_string(),
        },
    )?;

    if residual.is_zero() {
        Ok(EXIT_OK)
    } else {
        eprintln!("the solved coefficient does not satisfy the equation");
        Ok(EXIT_MATH)
    }
}

fn cmd_factor(file: &Path, json: Option<&Path>, verbose: bool) -> Result<i32, String> {
    let text = read_input(file)?;
    let bivector = parse_bivector_file(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let rational = bivector.to_rational();
    let (a12, a13, a23) = (rational.entry(1, 2), rational.entry(1, 3), rational.entry(2, 3));
    if verbose {
        println!("a12 = {a12}");
        println!("a13 = {a13}");
        println!("a23 = {a23}");
    }
    let outcome = quasibasic_factor(&a12, &a13, &a23).map_err(|e| e.to_string())?;

    let mut report = FactorReport {
        input: file.display().to_string(),
        outcome: String::new(),
        factors: BTreeMap::new(),
        condition: None,
        reason: None,
    };
    let code = match &outcome {
        QuasibasicOutcome::Factored { phi, f1, f2, f3 } => {
            println!("phi = {phi}");
            println!("f1 = {f1}");
            println!("f2 = {f2}");
            println!("f3 = {f3}");
            println!("verified: a12 = phi*f1*f2, a13 = phi*f1*f3, a23 = phi*f2*f3");
            report.outcome = "FACTORED".into();
            for (name, value) in [("phi", phi), ("f1", f1), ("f2", f2), ("f3", f3)] {
                report.factors.insert(name.to_string(), value.to_string());
            }
            EXIT_OK
        }
        QuasibasicOutcome::Rejected { condition } => {
            println!("not quasi-basic: {condition}");
            report.outcome = "REJECTED".into();
            report.condition = Some(condition.clone());
            EXIT_MATH
        }
        QuasibasicOutcome::Inconclusive { reason } => {
            println!("inconclusive: {reason}");
            report.outcome = "INCONCLUSIVE".into();
            report.reason = Some(reason.clone());
            EXIT_MATH
        }
    };
    emit_json(json, &report)?;
    Ok(code)
}

fn cmd_search_d4(file: &Path, json: Option<&Path>, verbose: bool) -> Result<i32, String> {
    let text = read_input(file)?;
    let family = parse_family_file(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    println!("scanning {} candidate(s)", family.len());
    if verbose {
        for (n, (b, phi)) in family.iter().enumerate() {
            let entries: Vec<String> = b
                .entries()
                .map(|(&(i, j), p)| format!("a[{i},{j}] = {}", poly_text(p)))
                .collect();
            println!("candidate {n}: {}; phi = {}", entries.join(", "), poly_text(phi));
        }
    }
    let search = d4_scale_counterexample_search(&family).map_err(|e| e.to_string())?;

    let report = match &search {
        D4ScaleSearch::Witness(w) => {
            let (i, j, k) = w.triple;
            println!(
                "witness: candidate {} scales to a nonzero obstruction at ({i},{j},{k})",
                w.index
            );
            println!("coefficient[{i},{j},{k}] = {}", poly_text(&w.coefficient));
            SearchReport {
                input: file.display().to_string(),
                outcome: "WITNESS".into(),
                index: Some(w.index),
                triple: Some(format!("{i}{j}{k}")),
                coefficient: Some(poly_text(&w.coefficient)),
                admissible: None,
                skipped: None,
            }
        }
        D4ScaleSearch::Exhausted { admissible, skipped } => {
            println!(
                "no witness: {admissible} admissible candidate(s) kept a vanishing obstruction \
                 ({skipped} skipped)"
            );
            SearchReport {
                input: file.display().to_string(),
                outcome: "EXHAUSTED".into(),
                index: None,
                triple: None,
                coefficient: None,
                admissible: Some(*admissible),
                skipped: Some(*skipped),
            }
        }
    };
    emit_json(json, &report)?;
    Ok(EXIT_OK)
}
