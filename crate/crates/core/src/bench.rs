//! Scaling measurements of the solver core.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::batch::map_par;
use crate::cycle_solver::CycleError;
use crate::model::{Instance, Kind, WorkStats};
use crate::oracle::{gen_instance, GenError, GeneratorConfig};
use crate::solve_instance;

/// Counter budget per input interval.
pub const WORK_PER_INTERVAL: u64 = 6;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub repeats: usize,
    pub kind: Kind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Fastest of the repeats.
    pub wall_time: Duration,
    pub stats: WorkStats,
}

impl BenchRow {
    pub fn ns_per_interval(&self) -> f64 {
        self.wall_time.as_nanos() as f64 / self.n as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    /// Sorted by `n`.
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("n = {n}: {total} counted operations exceed {limit}")]
    CounterBound { n: usize, total: u64, limit: u64 },
    #[error("n = {n}: work counters differ between repeats")]
    Nondeterministic { n: usize },
}

/// Instance used for a benchmark row: integer coordinates up to `8n`.
pub fn bench_instance(kind: Kind, n: usize, seed: u64) -> Result<Instance, GenError> {
    let range = 8 * n as u64;
    let cfg = match kind {
        Kind::Line => GeneratorConfig::line(seed, n, range),
        Kind::Cycle => GeneratorConfig { allow_degenerate: false, ..GeneratorConfig::cycle(seed, n, range) },
    };
    gen_instance(&cfg)
}

/// Generates one instance per size (in parallel), then times `repeats`
/// solves of each, sequentially. Generation is not timed.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    let instances: Vec<Instance> =
        map_par(&sizes, |&n| bench_instance(cfg.kind, n, cfg.seed)).into_iter().collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(sizes.len());
    for (n, instance) in sizes.iter().copied().zip(&instances) {
        let mut best: Option<Duration> = None;
        let mut stats: Option<WorkStats> = None;
        for _ in 0..cfg.repeats.max(1) {
            let start = Instant::now();
            let solution = solve_instance(instance)?;
            let elapsed = start.elapsed();
            best = Some(best.map_or(elapsed, |b| b.min(elapsed)));
            if stats.is_some_and(|s| s != solution.stats) {
                return Err(BenchError::Nondeterministic { n });
            }
            stats = Some(solution.stats);
        }
        let stats = stats.expect("at least one repeat");
        let limit = WORK_PER_INTERVAL * n as u64;
        if stats.total() > limit {
            return Err(BenchError::CounterBound { n, total: stats.total(), limit });
        }
        rows.push(BenchRow { n, wall_time: best.expect("at least one repeat"), stats });
    }
    Ok(BenchReport { rows })
}

impl BenchReport {
    /// Time-per-interval of each row divided by that of the previous row.
    pub fn scaling_ratios(&self) -> Vec<f64> {
        self.rows.windows(2).map(|w| w[1].ns_per_interval() / w[0].ns_per_interval()).collect()
    }

    /// Largest over smallest time-per-interval across all rows.
    pub fn spread(&self) -> f64 {
        let per: Vec<f64> = self.rows.iter().map(BenchRow::ns_per_interval).collect();
        let max = per.iter().cloned().fold(f64::MIN, f64::max);
        let min = per.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }

    /// CSV with a header row. Without timing the output depends only on the
    /// inputs.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::from("n,deque_pushes,deque_pops,finalizations,total_ops");
        if timing {
            out.push_str(",wall_ns,ns_per_interval");
        }
        out.push('\n');
        for r in &self.rows {
            let s = &r.stats;
            write!(out, "{},{},{},{},{}", r.n, s.deque_pushes, s.deque_pops, s.finalizations, s.total()).unwrap();
            if timing {
                write!(out, ",{},{:.3}", r.wall_time.as_nanos(), r.ns_per_interval()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>10} {:>10} {:>10} {:>10} {:>12} {:>10}\n",
            "n", "pushes", "pops", "finalized", "wall", "ns/interval"
        );
        for r in &self.rows {
            let s = &r.stats;
            writeln!(
                out,
                "{:>10} {:>10} {:>10} {:>10} {:>12} {:>10.1}",
                r.n,
                s.deque_pushes,
                s.deque_pops,
                s.finalizations,
                format!("{:.3?}", r.wall_time),
                r.ns_per_interval()
            )
            .unwrap();
        }
        let ratios = self.scaling_ratios();
        if !ratios.is_empty() {
            let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
            writeln!(out, "time-per-interval ratios: {}", shown.join(", ")).unwrap();
        }
        out
    }
}
