use disperse::cycle_solver::solve_cycle_with;
use disperse::line_solver::solve_line_with;
use disperse::oracle::{feasible_line, oracle_cycle_optimum, oracle_line_optimum};
use disperse::{
    parse_instance, solve_cycle, solve_instance, solve_line, verify_solution, Arc, Arithmetic, CycleInstance,
    ExtendedValue, Instance, Interval, LineInstance, Rational, Solution,
};
use proptest::prelude::*;

/// Sorted disjoint intervals from (gap, length) pairs over a common
/// denominator; zero gaps touch and zero lengths are single points.
fn line_strategy(max_n: usize) -> impl Strategy<Value = LineInstance> {
    (prop::collection::vec((0i64..30, 0i64..30), 1..=max_n), prop_oneof![Just(1i64), 1i64..7], -50i64..50).prop_map(
        |(shape, den, origin)| {
            let mut at = origin;
            let mut intervals = Vec::new();
            for (k, (gap, len)) in shape.into_iter().enumerate() {
                if k > 0 {
                    at += gap;
                }
                intervals.push(Interval::new(Rational::ratio(at, den), Rational::ratio(at + len, den)));
                at += len;
            }
            LineInstance::new(intervals).unwrap()
        },
    )
}

fn cycle_strategy(max_n: usize) -> impl Strategy<Value = CycleInstance> {
    (prop::collection::vec((1i64..20, 0i64..20), 1..=max_n), 0i64..40, 0i64..100).prop_map(|(shape, slack, rotate)| {
        let mut at = 0;
        let mut arcs = Vec::new();
        for (gap, len) in &shape {
            arcs.push((at, *len));
            at += len + gap;
        }
        let c = at + slack;
        let mut arcs: Vec<Arc> = arcs
            .into_iter()
            .map(|(s, len)| Arc::new(Rational::from_integer((s + rotate).rem_euclid(c)), Rational::from_integer(len)))
            .collect();
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        CycleInstance::new(Rational::from_integer(c), arcs).unwrap()
    })
}

fn min_gap(points: &[Rational]) -> ExtendedValue {
    points.windows(2).map(|w| &w[1] - &w[0]).min().map_or(ExtendedValue::Unbounded, ExtendedValue::Finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn line_matches_pair_oracle(inst in line_strategy(14)) {
        let sol = solve_line(&inst, None);
        prop_assert_eq!(&sol.d_min, &oracle_line_optimum(&inst));
        prop_assert!(verify_solution(&Instance::Line(inst.clone()), &sol).unwrap().optimal);
        prop_assert_eq!(min_gap(&sol.points), sol.d_min);
    }

    #[test]
    fn initial_bound_caps_the_optimum(inst in line_strategy(10), num in 1i64..60, den in 1i64..5) {
        let bound = Rational::ratio(num, den);
        let sol = solve_line(&inst, Some(&bound));
        let expected = ExtendedValue::Finite(bound.clone()).min(oracle_line_optimum(&inst));
        prop_assert_eq!(&sol.d_min, &expected);
        let d = sol.d_min.finite().unwrap();
        prop_assert!(sol.points.iter().zip(inst.intervals()).all(|(p, iv)| iv.contains(p)));
        prop_assert!(sol.points.windows(2).all(|w| &(&w[1] - &w[0]) >= d));
        prop_assert!(feasible_line(&inst, d).is_some());
    }

    #[test]
    fn fast_and_exact_arithmetic_agree(inst in line_strategy(20)) {
        prop_assert_eq!(solve_line_with(&inst, None, Arithmetic::Auto), solve_line_with(&inst, None, Arithmetic::Exact));
    }

    #[test]
    fn cycle_matches_oracle(cycle in cycle_strategy(9)) {
        let sol = solve_cycle(&cycle).unwrap();
        prop_assert_eq!(&sol.d_min, &oracle_cycle_optimum(&cycle));
        let report = verify_solution(&Instance::Cycle(cycle.clone()), &sol).unwrap();
        prop_assert!(report.optimal, "{}", report);
        prop_assert_eq!(solve_cycle_with(&cycle, Arithmetic::Exact).unwrap(), sol);
    }

    #[test]
    fn cycle_optimum_ignores_where_the_origin_is(cycle in cycle_strategy(8), shift in 0i64..50) {
        let c = cycle.circumference().clone();
        let mut arcs: Vec<Arc> = cycle
            .arcs()
            .iter()
            .map(|a| Arc::new((&a.start + Rational::from_integer(shift)).rem_euclid(&c), a.length.clone()))
            .collect();
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        let moved = CycleInstance::new(c, arcs).unwrap();
        prop_assert_eq!(solve_cycle(&moved).unwrap().d_min, solve_cycle(&cycle).unwrap().d_min);
    }

    #[test]
    fn solutions_survive_json_and_text(inst in line_strategy(8)) {
        let inst = Instance::Line(inst);
        let reparsed = parse_instance(&inst.to_text()).unwrap();
        prop_assert_eq!(&reparsed, &inst);
        let sol = solve_instance(&inst).unwrap();
        prop_assert_eq!(Solution::from_json(&sol.to_json()).unwrap(), sol);
    }
}
