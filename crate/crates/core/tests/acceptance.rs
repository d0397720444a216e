//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p disperse --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use disperse::batch::{map_par, map_seq};
use disperse::bench::{bench_instance, run_bench, BenchConfig, WORK_PER_INTERVAL};
use disperse::cycle_solver::{closing_index, double_instance};
use disperse::line_solver::{run_line_checked, run_line_rational};
use disperse::oracle::{
    gen_cycle, gen_line, oracle_cycle_optimum, oracle_line_optimum, oracle_line_via_candidates, uniform_below,
    GeneratorConfig,
};
use disperse::{
    solve_cycle, solve_instance, solve_line, verify_solution, Arithmetic, Certificate, CycleInstance, ExtendedValue,
    Instance, Kind, LineInstance, Rational,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Line golden: intervals, expected points, expected `d_min`.
type LineGolden = (&'static [(i64, i64)], &'static [i64], i64);

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    match failures.first() {
        None => Outcome { pass: true, detail: summary },
        Some(first) => {
            Outcome { pass: false, detail: format!("{summary}; {} failures, first: {first}", failures.len()) }
        }
    }
}

/// `(seed, n)` pairs with `n` uniform in `[lo, hi]`, drawn from one master seed.
fn corpus_params(master: u64, count: usize, lo: usize, hi: usize) -> Vec<(u64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count)
        .map(|k| {
            (
                master.wrapping_mul(1_000_003).wrapping_add(k as u64),
                lo + uniform_below(&mut rng, (hi - lo + 1) as u64) as usize,
            )
        })
        .collect()
}

fn line_corpus() -> Vec<LineInstance> {
    let params = corpus_params(1, 10_000, 2, 12);
    map_par(&params, |&(seed, n)| gen_line(&GeneratorConfig::line(seed, n, 200)))
}

fn finite(v: &ExtendedValue) -> &Rational {
    v.finite().expect("finite value")
}

fn ac1_line_oracles(corpus: &[LineInstance]) -> Outcome {
    let failures: Vec<String> = map_par(corpus, |inst| {
        let d = solve_line(inst, None).d_min;
        let pairs = oracle_line_optimum(inst);
        let search = oracle_line_via_candidates(inst);
        (d != pairs || d != search)
            .then(|| format!("{inst:?}: solver {d}, pair oracle {pairs}, search oracle {search}"))
    })
    .into_iter()
    .flatten()
    .collect();
    outcome(&failures, format!("{} instances, {} mismatches", corpus.len(), failures.len()))
}

fn ac2_feasible_and_tight(corpus: &[LineInstance]) -> Outcome {
    let failures: Vec<String> = map_par(corpus, |inst| {
        let sol = solve_line(inst, None);
        let d = finite(&sol.d_min);
        let ivs = inst.intervals();
        if let Some(j) = sol.points.iter().zip(ivs).position(|(p, iv)| !iv.contains(p)) {
            return Some(format!("{inst:?}: point {} outside its interval", j + 1));
        }
        let gaps: Vec<Rational> = sol.points.windows(2).map(|w| &w[1] - &w[0]).collect();
        if gaps.iter().any(|g| g < d) {
            return Some(format!("{inst:?}: a gap is below {d}"));
        }
        if gaps.iter().min() != Some(d) {
            return Some(format!("{inst:?}: minimum gap differs from {d}"));
        }
        let Certificate::LinePair { i_star, j_star, .. } = sol.certificate else {
            return Some(format!("{inst:?}: certificate is not a pair"));
        };
        let recomputed = (&ivs[j_star - 1].right - &ivs[i_star - 1].left).div_count(j_star - i_star);
        if &recomputed != d {
            return Some(format!("{inst:?}: certificate gives {recomputed}, d_min is {d}"));
        }
        let report = verify_solution(&Instance::Line(inst.clone()), &sol).expect("matching dimensions");
        (!report.optimal).then(|| format!("{inst:?}: verifier rejects: {report}"))
    })
    .into_iter()
    .flatten()
    .collect();
    outcome(&failures, format!("{} instances, {} violations", corpus.len(), failures.len()))
}

fn ac3_invariants() -> Outcome {
    let params = corpus_params(3, 1_000, 2, 50);
    let results = map_par(&params, |&(seed, n)| {
        // small ranges force touching, degenerate and collinear endpoints
        let range = if seed % 2 == 0 { 3 * n as u64 } else { 200 };
        let inst = gen_line(&GeneratorConfig::line(seed, n, range));
        match run_line_checked(inst.intervals(), None) {
            Ok(checked) => Ok(checked.states_checked),
            Err(violation) => Err(format!("{inst:?}: {violation}")),
        }
    });
    let states: usize = results.iter().filter_map(|r| r.as_ref().ok()).sum();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    outcome(&failures, format!("{} instances, {states} states checked, {} violations", params.len(), failures.len()))
}

fn cycle_check(cycle: &CycleInstance) -> Option<String> {
    let n = cycle.len();
    let uniform = cycle.circumference().div_count(n);
    let doubled = double_instance(cycle);
    let run = run_line_rational(&doubled.intervals, Some(&uniform), Arithmetic::Auto);
    let k = closing_index(&run.points, &doubled);
    if run.points[k + n] != doubled.intervals[k + n].left {
        return Some(format!("{cycle:?}: copy {} of closing index {} is off its left endpoint", k + n + 1, k + 1));
    }
    let sol = match solve_cycle(cycle) {
        Ok(sol) => sol,
        Err(e) => return Some(format!("{cycle:?}: {e}")),
    };
    let oracle = oracle_cycle_optimum(cycle);
    if sol.d_min != oracle {
        return Some(format!("{cycle:?}: solver {}, oracle {oracle}", sol.d_min));
    }
    if finite(&sol.d_min) > &uniform {
        return Some(format!("{cycle:?}: d_min {} above |C|/n", sol.d_min));
    }
    let report = verify_solution(&Instance::Cycle(cycle.clone()), &sol).expect("matching dimensions");
    (!report.optimal).then(|| format!("{cycle:?}: verifier rejects: {report}"))
}

fn ac4_cycles() -> Outcome {
    let params = corpus_params(4, 10_000, 2, 10);
    let failures: Vec<String> = map_par(&params, |&(seed, n)| {
        let circumference = 2 * n as u64 + seed % 199;
        cycle_check(&gen_cycle(&GeneratorConfig::cycle(seed, n, circumference)))
    })
    .into_iter()
    .flatten()
    .collect();
    outcome(&failures, format!("{} instances, {} failures", params.len(), failures.len()))
}

const LINEAR_SIZES: [usize; 3] = [1 << 16, 1 << 18, 1 << 20];

fn ac5a_counters() -> Outcome {
    let mut failures = Vec::new();
    let mut totals = Vec::new();
    for kind in [Kind::Line, Kind::Cycle] {
        for n in LINEAR_SIZES {
            let inst = bench_instance(kind, n, 5).expect("satisfiable");
            let stats = solve_instance(&inst).expect("solvable").stats;
            totals.push(format!("{kind} {n}: {}", stats.total()));
            if stats.total() > WORK_PER_INTERVAL * n as u64 {
                failures.push(format!("{kind} n = {n}: {} operations", stats.total()));
            }
        }
    }
    outcome(&failures, format!("limit 6n; {}", totals.join(", ")))
}

fn ac5b_flatness() -> Outcome {
    let cfg = BenchConfig { sizes: LINEAR_SIZES.to_vec(), seed: 5, repeats: 5, kind: Kind::Line };
    let report = run_bench(&cfg).expect("bench runs");
    let per: Vec<String> = report.rows.iter().map(|r| format!("{:.1}", r.ns_per_interval())).collect();
    let spread = report.spread();
    let failures = if spread <= 3.0 { vec![] } else { vec![format!("spread {spread:.2} > 3")] };
    outcome(&failures, format!("ns/interval [{}], spread {spread:.2} (soft)", per.join(", ")))
}

fn ac5c_large_solve() -> Outcome {
    let n = 1 << 20;
    let inst = bench_instance(Kind::Line, n, 5).expect("satisfiable");
    let start = Instant::now();
    let sol = solve_instance(&inst).expect("solvable");
    let elapsed = start.elapsed();
    assert_eq!(sol.points.len(), n);
    let failures = if elapsed < Duration::from_secs(2) { vec![] } else { vec![format!("took {elapsed:.3?}")] };
    outcome(&failures, format!("n = 2^20 solved in {elapsed:.3?}, limit 2 s"))
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

fn ac6_goldens() -> Outcome {
    let mut failures = Vec::new();
    let lines: [LineGolden; 4] = [
        // value not hand-derived: the oracles below decide it
        (&[(0, 1), (10, 11), (100, 101)], &[0, 11, 100], 11),
        (&[(0, 1), (2, 4), (5, 6)], &[0, 3, 6], 3),
        (&[(0, 1), (10, 11), (12, 13)], &[0, 10, 13], 3),
        (&[(0, 1), (2, 3), (3, 10)], &[0, 3, 6], 3),
    ];
    for (pairs, points, d) in lines {
        let inst = LineInstance::from_ints(pairs);
        let sol = solve_line(&inst, None);
        let expected = ExtendedValue::Finite(Rational::from_integer(d));
        let (a, b) = (oracle_line_optimum(&inst), oracle_line_via_candidates(&inst));
        if a != expected || b != expected {
            failures.push(format!("{pairs:?}: golden {d}, oracles {a} and {b}"));
        }
        if sol.d_min != expected || sol.points != ints(points) {
            failures.push(format!("{pairs:?}: solver gives {} at {:?}", sol.d_min, sol.points));
        }
    }
    let cycle = CycleInstance::from_ints(10, &[(0, 1), (2, 1), (6, 1)]);
    let sol = solve_cycle(&cycle).expect("solvable");
    let expected = ExtendedValue::Finite(Rational::from_integer(3));
    if oracle_cycle_optimum(&cycle) != expected {
        failures.push(format!("cycle golden 3, oracle {}", oracle_cycle_optimum(&cycle)));
    }
    if sol.d_min != expected || sol.points != ints(&[0, 3, 6]) {
        failures.push(format!("cycle: solver gives {} at {:?}", sol.d_min, sol.points));
    }
    if let Some(why) = cycle_check(&cycle) {
        failures.push(why);
    }
    outcome(&failures, "5 goldens cross-checked against the oracles".into())
}

fn ac7_determinism() -> Outcome {
    let mut failures = Vec::new();
    let params = corpus_params(7, 500, 1, 40);
    let configs: Vec<GeneratorConfig> = params
        .iter()
        .map(|&(seed, n)| {
            let kind = if seed % 2 == 0 { Kind::Line } else { Kind::Cycle };
            GeneratorConfig { kind, ..GeneratorConfig::line(seed, n, 10 * n as u64) }
        })
        .collect();
    let render = |parallel: bool| -> String {
        let instances = if parallel {
            disperse::batch::generate_all(&configs)
        } else {
            map_seq(&configs, disperse::oracle::gen_instance).into_iter().collect()
        }
        .expect("satisfiable");
        let mut out = String::new();
        for inst in &instances {
            out.push_str(&inst.to_text());
            out.push_str(&solve_instance(inst).expect("solvable").to_json());
            out.push('\n');
        }
        out
    };
    let first = render(true);
    if first != render(true) || first != render(false) {
        failures.push("instance text or solution JSON differs between runs".to_string());
    }
    let cfg = BenchConfig { sizes: vec![8, 1000, 4096], seed: 7, repeats: 3, kind: Kind::Cycle };
    let csv = |c: &BenchConfig| run_bench(c).expect("bench runs").to_csv(false);
    if csv(&cfg) != csv(&cfg) {
        failures.push("counter CSV differs between runs".to_string());
    }
    outcome(&failures, format!("{} instances and bench CSV rendered three times", configs.len()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = line_corpus();
    let criteria: Vec<Criterion> = vec![
        ("AC1 line oracle equivalence", Box::new(|| ac1_line_oracles(&corpus))),
        ("AC2 feasibility and certificate tightness", Box::new(|| ac2_feasible_and_tight(&corpus))),
        ("AC3 instrumented invariants", Box::new(ac3_invariants)),
        ("AC4 cycle correctness", Box::new(ac4_cycles)),
        ("AC5 linearity: counter bound", Box::new(ac5a_counters)),
        ("AC5 linearity: time per interval", Box::new(ac5b_flatness)),
        ("AC5 linearity: 2^20 solve time", Box::new(ac5c_large_solve)),
        ("AC6 golden traces", Box::new(ac6_goldens)),
        ("AC7 determinism", Box::new(ac7_determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome { pass: false, detail: format!("panicked: {}", msg.unwrap_or_default()) }
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!result.pass);
        println!("{tag} {name}: {} [{:.2?}]", result.detail, t.elapsed());
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
