//! Cycle placement by unrolling onto a line.
//!
//! The `n` arcs are laid out twice on a line, starting with arc 1 at 0, and
//! the line scan runs with `d_min` initialised to `|C| / n`. Some index
//! `k <= n` whose point sits on its left endpoint has its copy `k + n` on its
//! left endpoint too, so the `n` consecutive points from `k` close up into a
//! full turn of the cycle with every gap at least `d_min`.

use thiserror::Error;

use crate::line_solver::{run_line_checked, run_line_rational, Arithmetic, InvariantViolation, LineRun};
use crate::model::{Certificate, CycleInstance, Interval, Kind, Solution, WorkStats};
use crate::rational::{ExtendedValue, Rational};

/// The cycle's arcs unrolled twice onto a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledInstance {
    /// `2n` sorted intervals; interval `i + n` is interval `i` shifted by `|C|`.
    pub intervals: Vec<Interval>,
    /// Cycle coordinate mapped to 0 (the start of arc 1).
    pub origin: Rational,
    pub n: usize,
}

impl DoubledInstance {
    /// Cycle arc a line interval came from (0-based).
    pub fn arc_of(&self, line_index: usize) -> usize {
        line_index % self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("internal consistency failure: copy {copy} of the closing index is not at its left endpoint")]
    OpenWindow { copy: usize },
    #[error("internal consistency failure: certificate window spans {span} >= n = {n} steps")]
    WindowTooWide { span: usize, n: usize },
}

/// Failure of an instrumented cycle solve.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckedCycleError {
    #[error(transparent)]
    Invariant(#[from] InvariantViolation),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

pub fn double_instance(cycle: &CycleInstance) -> DoubledInstance {
    let n = cycle.len();
    let c = cycle.circumference();
    let origin = cycle.arcs()[0].start.clone();
    let mut intervals = Vec::with_capacity(2 * n);
    for arc in cycle.arcs() {
        let left = &arc.start - &origin;
        let right = &left + &arc.length;
        intervals.push(Interval::new(left, right));
    }
    for i in 0..n {
        let Interval { left, right } = &intervals[i];
        intervals.push(Interval::new(left + c, right + c));
    }
    DoubledInstance { intervals, origin, n }
}

/// Largest `k < n` with the point on its interval's left endpoint.
pub fn closing_index(points: &[Rational], doubled: &DoubledInstance) -> usize {
    (0..doubled.n)
        .rev()
        .find(|&k| points[k] == doubled.intervals[k].left)
        .expect("the first point is always at its left endpoint")
}

/// Maps line points `k..k + n` back to cycle coordinates in `[0, |C|)`,
/// returned in arc order.
pub fn map_back(points: &[Rational], k: usize, cycle: &CycleInstance, doubled: &DoubledInstance) -> Vec<Rational> {
    let n = doubled.n;
    let c = cycle.circumference();
    (0..n)
        .map(|i| {
            let src = if i >= k { i } else { i + n };
            let offset = &points[src] - &doubled.intervals[src].left;
            // start < |C| and offset <= length < |C|, so one wrap at most
            let p = &cycle.arcs()[i].start + offset;
            if &p >= c {
                p - c
            } else {
                p
            }
        })
        .collect()
}

pub fn solve_cycle(cycle: &CycleInstance) -> Result<Solution, CycleError> {
    solve_cycle_with(cycle, Arithmetic::Auto)
}

pub fn solve_cycle_with(cycle: &CycleInstance, arithmetic: Arithmetic) -> Result<Solution, CycleError> {
    let n = cycle.len();
    if n == 1 {
        return Ok(Solution {
            kind: Kind::Cycle,
            points: vec![cycle.arcs()[0].start.clone()],
            d_min: ExtendedValue::Unbounded,
            certificate: Certificate::Unbounded,
            stats: WorkStats { intervals_processed: 1, deque_pushes: 1, deque_pops: 0, finalizations: 1 },
        });
    }
    let doubled = double_instance(cycle);
    let uniform = cycle.circumference().div_count(n);
    let run = run_line_rational(&doubled.intervals, Some(&uniform), arithmetic);
    assemble(cycle, &doubled, run, uniform)
}

/// [`solve_cycle`] with every line-scan state on the doubled instance
/// checked.
pub fn solve_cycle_checked(cycle: &CycleInstance) -> Result<Solution, CheckedCycleError> {
    let n = cycle.len();
    if n == 1 {
        return Ok(solve_cycle(cycle)?);
    }
    let doubled = double_instance(cycle);
    let uniform = cycle.circumference().div_count(n);
    let checked = run_line_checked(&doubled.intervals, Some(&uniform))?;
    Ok(assemble(cycle, &doubled, checked.run, uniform)?)
}

fn assemble(
    cycle: &CycleInstance,
    doubled: &DoubledInstance,
    run: LineRun<Rational>,
    uniform: Rational,
) -> Result<Solution, CycleError> {
    let n = doubled.n;
    let k = closing_index(&run.points, doubled);
    if run.points[k + n] != doubled.intervals[k + n].left {
        return Err(CycleError::OpenWindow { copy: k + n + 1 });
    }
    let points = map_back(&run.points, k, cycle, doubled);
    let d = run.d_min.finite().expect("bounded run").clone();
    let certificate = if run.bound_held() || d == uniform {
        Certificate::CycleUniform { value: uniform }
    } else {
        let span = run.j_star - run.i_star;
        if span >= n {
            return Err(CycleError::WindowTooWide { span, n });
        }
        Certificate::CycleWindow {
            i: doubled.arc_of(run.i_star) + 1,
            j: doubled.arc_of(run.j_star) + 1,
            steps: span,
            value: d.clone(),
        }
    };
    Ok(Solution { kind: Kind::Cycle, points, d_min: ExtendedValue::Finite(d), certificate, stats: run.stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn lefts_rights(d: &DoubledInstance) -> Vec<(Rational, Rational)> {
        d.intervals.iter().map(|iv| (iv.left.clone(), iv.right.clone())).collect()
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(a, b)| (q(a), q(b))).collect()
    }

    #[test]
    fn doubling() {
        let d = double_instance(&CycleInstance::from_ints(10, &[(0, 1), (5, 1)]));
        assert_eq!(lefts_rights(&d), pairs(&[(0, 1), (5, 6), (10, 11), (15, 16)]));
        assert_eq!(d.origin, q(0));

        let d = double_instance(&CycleInstance::from_ints(10, &[(2, 1), (7, 1)]));
        assert_eq!(lefts_rights(&d), pairs(&[(0, 1), (5, 6), (10, 11), (15, 16)]));
        assert_eq!(d.origin, q(2));

        let d = double_instance(&CycleInstance::from_ints(12, &[(0, 1), (4, 1), (8, 1)]));
        assert_eq!(lefts_rights(&d), pairs(&[(0, 1), (4, 5), (8, 9), (12, 13), (16, 17), (20, 21)]));
        assert_eq!(d.arc_of(4), 1);
    }

    #[test]
    fn two_arcs_uniform() {
        let sol = solve_cycle(&CycleInstance::from_ints(10, &[(0, 1), (5, 1)])).unwrap();
        assert_eq!(sol.points, ints(&[0, 5]));
        assert_eq!(sol.d_min, ExtendedValue::Finite(q(5)));
        assert_eq!(sol.certificate, Certificate::CycleUniform { value: q(5) });
    }

    #[test]
    fn three_arcs_window() {
        let cycle = CycleInstance::from_ints(10, &[(0, 1), (2, 1), (6, 1)]);
        let doubled = double_instance(&cycle);
        let run = run_line_rational(&doubled.intervals, Some(&Rational::ratio(10, 3)), Arithmetic::Exact);
        assert_eq!(run.points, ints(&[0, 3, 6, 10, 13, 16]));
        assert_eq!(closing_index(&run.points, &doubled), 2);

        let sol = solve_cycle(&cycle).unwrap();
        assert_eq!(sol.points, ints(&[0, 3, 6]));
        assert_eq!(sol.d_min, ExtendedValue::Finite(q(3)));
        assert_eq!(sol.certificate, Certificate::CycleWindow { i: 1, j: 2, steps: 1, value: q(3) });
    }

    #[test]
    fn three_arcs_uniform() {
        let sol = solve_cycle(&CycleInstance::from_ints(12, &[(0, 1), (4, 1), (8, 1)])).unwrap();
        assert_eq!(sol.points, ints(&[0, 4, 8]));
        assert_eq!(sol.certificate, Certificate::CycleUniform { value: q(4) });
    }

    #[test]
    fn map_back_identity_and_rotation() {
        let cycle = CycleInstance::from_ints(10, &[(2, 1), (7, 1)]);
        let doubled = double_instance(&cycle);
        let line_points = ints(&[0, 5, 10, 15]);
        assert_eq!(map_back(&line_points, 0, &cycle, &doubled), ints(&[2, 7]));
        let sol = solve_cycle(&cycle).unwrap();
        assert_eq!(sol.points, ints(&[2, 7]));
    }

    #[test]
    fn arc_crossing_origin_maps_into_range() {
        // second arc runs from 8 through 0 to 1
        let cycle = CycleInstance::from_ints(10, &[(3, 1), (8, 3)]);
        let sol = solve_cycle(&cycle).unwrap();
        assert_eq!(sol.d_min, ExtendedValue::Finite(q(5)));
        for (i, p) in sol.points.iter().enumerate() {
            assert!(cycle.arc_contains(i, p), "{p} not on arc {i}");
        }
    }

    #[test]
    fn single_arc() {
        let sol = solve_cycle(&CycleInstance::from_ints(10, &[(4, 3)])).unwrap();
        assert_eq!(sol.points, ints(&[4]));
        assert_eq!(sol.d_min, ExtendedValue::Unbounded);
        assert_eq!(sol.certificate, Certificate::Unbounded);
    }

    #[test]
    fn checked_solve_matches() {
        let cycle = CycleInstance::from_ints(10, &[(0, 1), (2, 1), (6, 1)]);
        assert_eq!(solve_cycle_checked(&cycle).unwrap(), solve_cycle(&cycle).unwrap());
    }

    #[test]
    fn exact_and_fast_paths_agree() {
        let cycle = CycleInstance::from_ints(37, &[(1, 2), (5, 0), (6, 7), (20, 3), (30, 5)]);
        assert_eq!(solve_cycle_with(&cycle, Arithmetic::Exact), solve_cycle_with(&cycle, Arithmetic::Auto));
    }
}
