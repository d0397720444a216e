//! `disperse`: solve, verify, generate and benchmark dispersion instances.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse, validation or
//! usage error, 3 internal invariant or counter violation.

mod style;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use disperse::bench::{run_bench, BenchConfig, BenchError};
use disperse::oracle::{gen_instance, GeneratorConfig};
use disperse::{
    parse_instance, solve_cycle, solve_cycle_checked, solve_line, solve_line_checked, verify_solution, Certificate,
    Instance, Kind, Rational, Solution, VerifyError,
};

use crate::style::Style;

#[derive(Parser)]
#[command(name = "disperse", version, about = "Max-min dispersion of points on disjoint intervals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the placement with its certificate.
    Solve {
        instance: PathBuf,
        /// Print the solution as JSON.
        #[arg(long)]
        json: bool,
        /// Check every solver invariant after each interval (quadratic).
        #[arg(long)]
        check_invariants: bool,
        /// Start the line scan from this bound instead of infinity.
        #[arg(long, value_name = "P/Q")]
        initial_bound: Option<Rational>,
    },
    /// Check a solution JSON file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Largest coordinate (line) or circumference (cycle); default 10n.
        #[arg(long)]
        coord_max: Option<u64>,
        /// Let neighbouring intervals share an endpoint.
        #[arg(long)]
        allow_touching: bool,
        /// Allow single-point intervals.
        #[arg(long)]
        allow_degenerate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the solver on generated instances of the given sizes.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, default_value = "line")]
        kind: Kind,
        /// Print CSV instead of a table.
        #[arg(long)]
        csv: bool,
        /// Leave wall-clock columns out of the CSV so it is reproducible.
        #[arg(long, requires = "csv")]
        counters_only: bool,
    },
}

/// A failed command: exit code and message for standard error.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn internal(msg: impl Into<String>) -> Failure {
    Failure(3, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::from_env();
    let result = match cli.command {
        Command::Solve { instance, json, check_invariants, initial_bound } => {
            cmd_solve(&instance, json, check_invariants, initial_bound, &style)
        }
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution, &style),
        Command::Gen { kind, n, seed, coord_max, allow_touching, allow_degenerate, out } => {
            let cfg = GeneratorConfig {
                allow_touching,
                allow_degenerate,
                ..GeneratorConfig::line(seed, n, coord_max.unwrap_or(10 * n as u64))
            };
            cmd_gen(&GeneratorConfig { kind, ..cfg }, out.as_deref())
        }
        Command::Bench { sizes, seed, repeats, kind, csv, counters_only } => {
            cmd_bench(&BenchConfig { sizes, seed, repeats, kind }, csv, counters_only)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("{} {msg}", style.error("error:"));
            ExitCode::from(code)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_solve(path: &Path, json: bool, check: bool, bound: Option<Rational>, style: &Style) -> Result<u8, Failure> {
    let instance = read_instance(path)?;
    if let Some(b) = &bound {
        if !b.is_positive() {
            return Err(usage(format!("initial bound must be positive, got {b}")));
        }
    }
    let solution = match (&instance, check) {
        (Instance::Line(line), false) => solve_line(line, bound.as_ref()),
        (Instance::Line(line), true) => {
            solve_line_checked(line, bound.as_ref()).map_err(|e| internal(e.to_string()))?
        }
        (Instance::Cycle(_), _) if bound.is_some() => {
            return Err(usage("--initial-bound applies to line instances only"));
        }
        (Instance::Cycle(cycle), false) => solve_cycle(cycle).map_err(|e| internal(e.to_string()))?,
        (Instance::Cycle(cycle), true) => solve_cycle_checked(cycle).map_err(|e| internal(e.to_string()))?,
    };
    if json {
        println!("{}", solution.to_json_pretty());
    } else {
        print!("{}", render_solution(&solution, style));
    }
    Ok(0)
}

fn describe_certificate(cert: &Certificate) -> String {
    match cert {
        Certificate::LinePair { i_star, j_star, value } => {
            format!("(r{j_star} - l{i_star}) / {} = {value}", j_star - i_star)
        }
        Certificate::CycleWindow { i, j, steps, value } => {
            format!("clockwise window from arc {i} to arc {j} over {steps} steps = {value}")
        }
        Certificate::CycleUniform { value } => format!("|C| / n = {value}"),
        Certificate::Unbounded => "single interval, no pair to separate".to_string(),
        Certificate::InitialBound { value } => format!("initial bound {value} was never beaten"),
    }
}

fn render_solution(sol: &Solution, style: &Style) -> String {
    let mut out = String::new();
    let approx = sol.d_min.finite().map(|d| format!(" (~{})", d.to_f64())).unwrap_or_default();
    writeln!(out, "{} {}", style.bold("kind:       "), sol.kind).unwrap();
    writeln!(out, "{} {}{approx}", style.bold("d_min:      "), style.good(&sol.d_min.to_string())).unwrap();
    writeln!(out, "{} {}", style.bold("certificate:"), describe_certificate(&sol.certificate)).unwrap();
    writeln!(out, "{}", style.bold("points:")).unwrap();
    for (i, p) in sol.points.iter().enumerate() {
        writeln!(out, "  {:>6}  {p}", i + 1).unwrap();
    }
    let s = &sol.stats;
    writeln!(
        out,
        "{} {} intervals, {} pushes, {} pops, {} finalized",
        style.bold("work:       "),
        s.intervals_processed,
        s.deque_pushes,
        s.deque_pops,
        s.finalizations
    )
    .unwrap();
    out
}

fn cmd_verify(instance: &Path, solution: &Path, style: &Style) -> Result<u8, Failure> {
    let instance = read_instance(instance)?;
    let text = fs::read_to_string(solution).map_err(|e| usage(format!("{}: {e}", solution.display())))?;
    let sol = Solution::from_json(&text).map_err(|e| usage(format!("{}: {e}", solution.display())))?;
    let report = match verify_solution(&instance, &sol) {
        Ok(report) => report,
        Err(e @ VerifyError::DimensionMismatch { .. }) => {
            println!("{} {e}", style.error("rejected:"));
            return Ok(1);
        }
    };
    print!("{report}");
    if report.feasible && report.certificate_tight {
        println!("{}", style.good("accepted"));
        Ok(0)
    } else {
        println!("{}", style.error("rejected"));
        Ok(1)
    }
}

fn cmd_gen(cfg: &GeneratorConfig, out: Option<&Path>) -> Result<u8, Failure> {
    let instance = gen_instance(cfg).map_err(|e| usage(e.to_string()))?;
    let text = instance.to_text();
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_bench(cfg: &BenchConfig, csv: bool, counters_only: bool) -> Result<u8, Failure> {
    if cfg.sizes.contains(&0) {
        return Err(usage("sizes must be positive"));
    }
    let report = run_bench(cfg).map_err(|e| match e {
        BenchError::Gen(g) => usage(g.to_string()),
        other => internal(other.to_string()),
    })?;
    if csv {
        print!("{}", report.to_csv(!counters_only));
    } else {
        print!("{}", report.to_table());
    }
    Ok(0)
}
