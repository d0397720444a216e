//! Independent checking of a solution against its instance.
//!
//! A solution is optimal when it is feasible for its `d_min` and its
//! certificate, recomputed from the instance, equals `d_min`: the certificate
//! value is an upper bound on any placement, so a feasible placement reaching
//! it cannot be beaten.

use std::fmt;

use thiserror::Error;

use crate::model::{Certificate, CycleInstance, Instance, LineInstance, Solution};
use crate::rational::{ExtendedValue, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("solution has {found} points, instance has {expected} intervals")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Every point lies in its interval and every gap is at least `d_min`.
    pub feasible: bool,
    /// The certificate's value, recomputed from the instance, equals `d_min`.
    pub certificate_tight: bool,
    /// Feasible and tight with a certificate that bounds every placement
    /// (anything but an initial bound).
    pub optimal: bool,
    /// Smallest distance between two points (unbounded for a single point).
    pub min_distance: ExtendedValue,
    /// Human-readable reasons for each failed check.
    pub issues: Vec<String>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "feasible:          {}", yes_no(self.feasible))?;
        writeln!(f, "certificate tight: {}", yes_no(self.certificate_tight))?;
        writeln!(f, "min distance:      {}", self.min_distance)?;
        writeln!(f, "optimal:           {}", yes_no(self.optimal))?;
        for issue in &self.issues {
            writeln!(f, "  - {issue}")?;
        }
        Ok(())
    }
}

pub fn verify_solution(instance: &Instance, solution: &Solution) -> Result<VerificationReport, VerifyError> {
    if solution.points.len() != instance.len() {
        return Err(VerifyError::DimensionMismatch { expected: instance.len(), found: solution.points.len() });
    }
    let mut issues = Vec::new();
    if solution.kind != instance.kind() {
        issues.push(format!("solution kind {} does not match instance kind {}", solution.kind, instance.kind()));
    }
    let (gaps, recomputed) = match instance {
        Instance::Line(line) => {
            (line_gaps(line, &solution.points, &mut issues), line_certificate(line, &solution.certificate))
        }
        Instance::Cycle(cycle) => {
            (cycle_gaps(cycle, &solution.points, &mut issues), cycle_certificate(cycle, &solution.certificate))
        }
    };
    let in_intervals = issues.is_empty();

    let min_distance = gaps.iter().min().cloned().map_or(ExtendedValue::Unbounded, ExtendedValue::Finite);
    let spaced = min_distance >= solution.d_min;
    if !spaced {
        issues.push(format!("minimum distance {min_distance} is below d_min {}", solution.d_min));
    }
    let feasible = in_intervals && spaced;

    let certificate_tight = match recomputed {
        Ok(value) if value == solution.d_min && value == solution.certificate.value() => true,
        Ok(value) => {
            issues.push(format!(
                "certificate evaluates to {value}, claims {}, d_min is {}",
                solution.certificate.value(),
                solution.d_min
            ));
            false
        }
        Err(why) => {
            issues.push(why);
            false
        }
    };
    // a caller's bound caps d_min but says nothing about the optimum
    let proves_optimum = !matches!(solution.certificate, Certificate::InitialBound { .. });
    let optimal = feasible && certificate_tight && proves_optimum;
    Ok(VerificationReport { feasible, certificate_tight, optimal, min_distance, issues })
}

fn line_gaps(line: &LineInstance, points: &[Rational], issues: &mut Vec<String>) -> Vec<Rational> {
    for (i, (p, iv)) in points.iter().zip(line.intervals()).enumerate() {
        if !iv.contains(p) {
            issues.push(format!("point {} = {p} outside interval [{}, {}]", i + 1, iv.left, iv.right));
        }
    }
    // intervals are sorted and disjoint, so adjacent gaps are the only candidates
    points.windows(2).map(|w| (&w[1] - &w[0]).abs()).collect()
}

fn cycle_gaps(cycle: &CycleInstance, points: &[Rational], issues: &mut Vec<String>) -> Vec<Rational> {
    for (i, p) in points.iter().enumerate() {
        if !cycle.arc_contains(i, p) {
            let arc = &cycle.arcs()[i];
            issues.push(format!("point {} = {p} outside arc (start {}, length {})", i + 1, arc.start, arc.length));
        }
    }
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    // points in cyclic order: the closest pair is adjacent
    (0..n).map(|i| cycle.distance(&points[i], &points[(i + 1) % n])).collect()
}

fn line_certificate(line: &LineInstance, cert: &Certificate) -> Result<ExtendedValue, String> {
    let n = line.len();
    match cert {
        Certificate::LinePair { i_star, j_star, .. } => {
            let (i, j) = (*i_star, *j_star);
            if !(1 <= i && i < j && j <= n) {
                return Err(format!("certificate pair ({i}, {j}) is not 1 <= i < j <= {n}"));
            }
            let ivs = line.intervals();
            Ok(ExtendedValue::Finite((&ivs[j - 1].right - &ivs[i - 1].left).div_count(j - i)))
        }
        Certificate::Unbounded if n == 1 => Ok(ExtendedValue::Unbounded),
        Certificate::Unbounded => Err(format!("unbounded certificate with {n} intervals")),
        Certificate::InitialBound { value } => Ok(ExtendedValue::Finite(value.clone())),
        other => Err(format!("certificate {other:?} does not apply to a line")),
    }
}

fn cycle_certificate(cycle: &CycleInstance, cert: &Certificate) -> Result<ExtendedValue, String> {
    let n = cycle.len();
    match cert {
        Certificate::CycleWindow { i, j, steps, .. } => {
            let (i, j, m) = (*i, *j, *steps);
            if !(1 <= i && i <= n && 1 <= m && m < n) {
                return Err(format!("certificate window (i {i}, steps {m}) invalid for n = {n}"));
            }
            if (i - 1 + m) % n + 1 != j {
                return Err(format!("certificate window from {i} over {m} steps does not end at {j}"));
            }
            Ok(ExtendedValue::Finite(cycle.window_length(i - 1, m).div_count(m)))
        }
        Certificate::CycleUniform { .. } if n >= 2 => Ok(ExtendedValue::Finite(cycle.circumference().div_count(n))),
        Certificate::Unbounded if n == 1 => Ok(ExtendedValue::Unbounded),
        other => Err(format!("certificate {other:?} does not apply to a cycle of {n} arcs")),
    }
}

/// Convenience for tests: `Ok(true)` when the solution verifies as optimal.
pub fn is_optimal(instance: &Instance, solution: &Solution) -> bool {
    verify_solution(instance, solution).is_ok_and(|r| r.optimal)
}
