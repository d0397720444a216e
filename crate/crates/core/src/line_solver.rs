//! Linear-time greedy placement on a line.
//!
//! Intervals are scanned left to right. Each new interval gets a temporary
//! point: at its left endpoint when the previous point plus `d_min` falls
//! short of it, at `prev + d_min` when that lands inside, and at its right
//! endpoint otherwise (which lowers `d_min`). Points that may still slide
//! left are not stored; they are implied by `l[k_s] + d_min * (j - k_s)` where
//! `k_s` is the front of the [`CriticalList`]. The list holds the indices
//! whose left endpoints would stop a uniform leftward slide, in the order
//! they would be hit, so each step touches only its two ends.
//!
//! Every index is pushed onto and removed from the list at most once and
//! every point is finalized exactly once, which bounds the total work.

use std::collections::VecDeque;
use std::fmt;

use crate::model::{Certificate, Interval, Kind, LineInstance, Solution, WorkStats};
use crate::rational::{ExtendedValue, Rational};
use crate::scalar::{slope_gt, Frac128, Scalar, FAST_COORD_LIMIT, FAST_COUNT_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<S> {
    pub index: usize,
    /// Cached left endpoint of interval `index`.
    pub left: S,
}

/// Double-ended list of interval indices with O(1) access at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalList<S> {
    entries: VecDeque<Entry<S>>,
    pushes: u64,
    pops: u64,
}

impl<S: Clone> CriticalList<S> {
    pub fn new() -> Self {
        CriticalList { entries: VecDeque::new(), pushes: 0, pops: 0 }
    }

    /// Builds a list directly from `(index, left)` pairs. Counters start at 0.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, S)>) -> Self {
        CriticalList {
            entries: entries.into_iter().map(|(index, left)| Entry { index, left }).collect(),
            pushes: 0,
            pops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn front(&self) -> &Entry<S> {
        self.entries.front().expect("critical list is never empty")
    }

    /// The element after the front, if any.
    pub fn second(&self) -> Option<&Entry<S>> {
        self.entries.get(1)
    }

    pub fn rear(&self) -> &Entry<S> {
        self.entries.back().expect("critical list is never empty")
    }

    /// The element before the rear, if any.
    pub fn second_rear(&self) -> Option<&Entry<S>> {
        self.entries.len().checked_sub(2).and_then(|i| self.entries.get(i))
    }

    pub fn push_rear(&mut self, index: usize, left: S) {
        self.pushes += 1;
        self.entries.push_back(Entry { index, left });
    }

    pub fn pop_front(&mut self) -> Option<Entry<S>> {
        let e = self.entries.pop_front();
        self.pops += e.is_some() as u64;
        e
    }

    pub fn pop_rear(&mut self) -> Option<Entry<S>> {
        let e = self.entries.pop_back();
        self.pops += e.is_some() as u64;
        e
    }

    /// Empties the list and pushes a single element.
    pub fn reset_to(&mut self, index: usize, left: S) {
        self.pops += self.entries.len() as u64;
        self.entries.clear();
        self.push_rear(index, left);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry<S>> {
        self.entries.iter()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    pub fn pushes(&self) -> u64 {
        self.pushes
    }

    pub fn pops(&self) -> u64 {
        self.pops
    }
}

impl<S: Clone> Default for CriticalList<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Which placement a step used for the new interval's point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `prev + d_min <= l_i`: point at the left endpoint, earlier points frozen.
    AtLeft,
    /// `l_i < prev + d_min <= r_i`: point at `prev + d_min`.
    Shifted,
    /// `prev + d_min > r_i`: point at the right endpoint, `d_min` shrinks.
    AtRight,
}

/// Mutable scan state. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState<S> {
    /// Index of the next interval to process; `0..next` are done.
    pub next: usize,
    /// Temporary location of point `next - 1`.
    pub prev_point: S,
    pub d_min: ExtendedValue<S>,
    /// `d_min = (r[j_star] - l[i_star]) / (j_star - i_star)` when they differ;
    /// equal indices mean `d_min` is still the initial value.
    pub i_star: usize,
    pub j_star: usize,
    pub initial_bound: Option<S>,
    pub critical: CriticalList<S>,
    /// Points `0..=k_s`, fixed for good.
    pub finalized: Vec<S>,
}

impl<S: Scalar> SolverState<S> {
    /// State after the first interval: its point sits at its left endpoint.
    pub fn new(first: &Interval<S>, initial_bound: Option<S>) -> Self {
        let mut critical = CriticalList::new();
        critical.push_rear(0, first.left.clone());
        SolverState {
            next: 1,
            prev_point: first.left.clone(),
            d_min: match &initial_bound {
                Some(b) => ExtendedValue::Finite(b.clone()),
                None => ExtendedValue::Unbounded,
            },
            i_star: 0,
            j_star: 0,
            initial_bound,
            critical,
            finalized: vec![first.left.clone()],
        }
    }

    fn d_finite(&self) -> &S {
        self.d_min.finite().expect("d_min is finite once a point has been placed relative to another")
    }

    /// Processes interval `next`.
    pub fn step(&mut self, interval: &Interval<S>) -> Branch {
        let i = self.next;
        let target = self.d_min.finite().map(|d| self.prev_point.add(d));
        let branch = match &target {
            Some(t) if *t <= interval.left => Branch::AtLeft,
            Some(t) if *t <= interval.right => Branch::Shifted,
            _ => Branch::AtRight,
        };
        match branch {
            Branch::AtLeft => {
                let Entry { index: ks, left: lks } = self.critical.front().clone();
                let d = self.d_finite().clone();
                for j in ks + 1..i {
                    self.finalized.push(lks.add(&d.mul_count(j - ks)));
                }
                self.finalized.push(interval.left.clone());
                self.critical.reset_to(i, interval.left.clone());
                self.prev_point = interval.left.clone();
            }
            Branch::Shifted => {
                self.prev_point = target.expect("shifted branch has a target");
                self.rear_processing(i, &interval.left);
            }
            Branch::AtRight => {
                self.prev_point = interval.right.clone();
                self.front_processing(i, &interval.right);
                let Entry { index: ks, left: lks } = self.critical.front().clone();
                self.d_min = ExtendedValue::Finite(interval.right.sub(&lks).div_count(i - ks));
                self.i_star = ks;
                self.j_star = i;
                self.rear_processing(i, &interval.left);
            }
        }
        self.next += 1;
        branch
    }

    /// Drops rear indices whose slope from their predecessor does not beat
    /// the slope to `i`, then appends `i`.
    pub fn rear_processing(&mut self, i: usize, left_i: &S) {
        while let Some(prev) = self.critical.second_rear() {
            let rear = self.critical.rear();
            let rise = rear.left.sub(&prev.left);
            let to_new = left_i.sub(&prev.left);
            if slope_gt(&rise, rear.index - prev.index, &to_new, i - prev.index) {
                break;
            }
            self.critical.pop_rear();
        }
        self.critical.push_rear(i, left_i.clone());
    }

    /// Finalizes and drops front indices whose next slope is steeper than the
    /// slope from the front to `right_i`.
    pub fn front_processing(&mut self, i: usize, right_i: &S) {
        while let Some(second) = self.critical.second() {
            let front = self.critical.front();
            let (ks, ks1) = (front.index, second.index);
            let run = ks1 - ks;
            let rise = second.left.sub(&front.left);
            if !slope_gt(&rise, run, &right_i.sub(&front.left), i - ks) {
                break;
            }
            let base = front.left.clone();
            for j in ks + 1..=ks1 {
                self.finalized.push(base.add(&rise.mul_count(j - ks).div_count(run)));
            }
            self.critical.pop_front();
        }
    }

    /// Materializes the implied points after the front and returns the run.
    pub fn finalize_tail(mut self) -> LineRun<S> {
        let n = self.next;
        let Entry { index: ks, left: lks } = self.critical.front().clone();
        if ks + 1 < n {
            let d = self.d_finite().clone();
            for j in ks + 1..n {
                self.finalized.push(lks.add(&d.mul_count(j - ks)));
            }
        }
        debug_assert_eq!(self.finalized.len(), n);
        let stats = WorkStats {
            intervals_processed: n as u64,
            deque_pushes: self.critical.pushes(),
            deque_pops: self.critical.pops(),
            finalizations: self.finalized.len() as u64,
        };
        LineRun {
            points: self.finalized,
            d_min: self.d_min,
            i_star: self.i_star,
            j_star: self.j_star,
            initial_bound: self.initial_bound,
            stats,
        }
    }
}

/// Raw output of a line scan, before it is packaged as a [`Solution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRun<S> {
    pub points: Vec<S>,
    pub d_min: ExtendedValue<S>,
    pub i_star: usize,
    pub j_star: usize,
    pub initial_bound: Option<S>,
    pub stats: WorkStats,
}

impl<S: Scalar> LineRun<S> {
    pub fn to_rational(&self) -> LineRun<Rational> {
        LineRun {
            points: self.points.iter().map(Scalar::to_rational).collect(),
            d_min: self.d_min.clone().map(|d| d.to_rational()),
            i_star: self.i_star,
            j_star: self.j_star,
            initial_bound: self.initial_bound.as_ref().map(Scalar::to_rational),
            stats: self.stats,
        }
    }

    /// Whether `d_min` is still the initial value (bound or unbounded).
    pub fn bound_held(&self) -> bool {
        self.i_star == self.j_star
    }
}

/// Runs the scan over all intervals.
pub fn run_line<S: Scalar>(intervals: &[Interval<S>], initial_bound: Option<S>) -> LineRun<S> {
    let mut state = SolverState::new(&intervals[0], initial_bound);
    for iv in &intervals[1..] {
        state.step(iv);
    }
    state.finalize_tail()
}

/// Arithmetic used by the scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    /// Fixed-width fractions when the input is small enough, otherwise exact
    /// big rationals.
    #[default]
    Auto,
    /// Always big rationals.
    Exact,
}

fn fast_intervals(
    intervals: &[Interval],
    bound: Option<&Rational>,
) -> Option<(Vec<Interval<Frac128>>, Option<Frac128>)> {
    if intervals.len() > FAST_COUNT_LIMIT {
        return None;
    }
    let coord = |x: &Rational| match x.to_i128() {
        Some(v) if v.abs() < FAST_COORD_LIMIT => Some(Frac128::from_integer(v)),
        _ => None,
    };
    let converted = intervals
        .iter()
        .map(|iv| Some(Interval::new(coord(&iv.left)?, coord(&iv.right)?)))
        .collect::<Option<Vec<_>>>()?;
    let bound = match bound {
        Some(b) => Some(Frac128::try_from_rational(b, FAST_COUNT_LIMIT)?),
        None => None,
    };
    Some((converted, bound))
}

/// Runs the scan over exact intervals, taking the fixed-width path when
/// allowed and eligible.
pub fn run_line_rational(
    intervals: &[Interval],
    initial_bound: Option<&Rational>,
    arithmetic: Arithmetic,
) -> LineRun<Rational> {
    if arithmetic == Arithmetic::Auto {
        if let Some((fast, bound)) = fast_intervals(intervals, initial_bound) {
            return run_line(&fast, bound).to_rational();
        }
    }
    run_line(intervals, initial_bound.cloned())
}

fn line_solution(run: LineRun<Rational>) -> Solution {
    let certificate = match (&run.d_min, run.bound_held()) {
        (ExtendedValue::Unbounded, _) => Certificate::Unbounded,
        (ExtendedValue::Finite(d), true) => Certificate::InitialBound { value: d.clone() },
        (ExtendedValue::Finite(d), false) => {
            Certificate::LinePair { i_star: run.i_star + 1, j_star: run.j_star + 1, value: d.clone() }
        }
    };
    Solution { kind: Kind::Line, points: run.points, d_min: run.d_min, certificate, stats: run.stats }
}

/// Places one point per interval maximizing the minimum gap.
///
/// With `initial_bound = Some(b)` (`b > 0`) the result is
/// `min(b, optimum)` together with a placement feasible for it.
pub fn solve_line(instance: &LineInstance, initial_bound: Option<&Rational>) -> Solution {
    solve_line_with(instance, initial_bound, Arithmetic::Auto)
}

pub fn solve_line_with(instance: &LineInstance, initial_bound: Option<&Rational>, arithmetic: Arithmetic) -> Solution {
    line_solution(run_line_rational(instance.intervals(), initial_bound, arithmetic))
}

// ---------------------------------------------------------------------------
// Instrumentation

/// The properties checked on a [`SolverState`] after each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantId {
    /// The temporary point of the last processed interval is known, lies in
    /// its interval and matches the implied formula.
    TemporaryPoint,
    /// `d_min` equals the pair formula for `(i_star, j_star)` (or the initial
    /// value when no pair has been recorded).
    CertificateFormula,
    /// The rear of the critical list is the last processed index.
    RearIsLast,
    /// The front point sits at its interval's left endpoint.
    FrontAtLeft,
    /// Exactly the points up to the front index are finalized.
    FinalizedPrefix,
    /// Every finalized point lies in its interval.
    FinalizedInIntervals,
    /// Adjacent finalized points are at least `d_min` apart.
    FinalizedSpacing,
    /// Implied points after the front lie in their intervals.
    ImpliedPoints,
    /// Each list slope beats the slope to every later list index, and is at
    /// least the slope to every index evicted in between.
    PriorityProperty,
    /// Consecutive list slopes strictly decrease.
    SlopesDecreasing,
    /// List indices strictly increase and cached endpoints match the input.
    ListWellFormed,
}

impl InvariantId {
    pub const ALL: [InvariantId; 11] = [
        InvariantId::TemporaryPoint,
        InvariantId::CertificateFormula,
        InvariantId::RearIsLast,
        InvariantId::FrontAtLeft,
        InvariantId::FinalizedPrefix,
        InvariantId::FinalizedInIntervals,
        InvariantId::FinalizedSpacing,
        InvariantId::ImpliedPoints,
        InvariantId::PriorityProperty,
        InvariantId::SlopesDecreasing,
        InvariantId::ListWellFormed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InvariantId::TemporaryPoint => "temporary-point",
            InvariantId::CertificateFormula => "certificate-formula",
            InvariantId::RearIsLast => "rear-is-last",
            InvariantId::FrontAtLeft => "front-at-left",
            InvariantId::FinalizedPrefix => "finalized-prefix",
            InvariantId::FinalizedInIntervals => "finalized-in-intervals",
            InvariantId::FinalizedSpacing => "finalized-spacing",
            InvariantId::ImpliedPoints => "implied-points",
            InvariantId::PriorityProperty => "priority-property",
            InvariantId::SlopesDecreasing => "slopes-decreasing",
            InvariantId::ListWellFormed => "list-well-formed",
        }
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub id: InvariantId,
    /// `None` when the property holds, otherwise a description of a witness.
    pub counterexample: Option<String>,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(InvariantCheck::passed)
    }

    pub fn get(&self, id: InvariantId) -> &InvariantCheck {
        self.checks.iter().find(|c| c.id == id).expect("every invariant is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "{:<24} ok", c.id)?,
                Some(why) => writeln!(f, "{:<24} FAILED: {why}", c.id)?,
            }
        }
        Ok(())
    }
}

/// Evaluates every state invariant exactly. The priority-property check is
/// quadratic in the list span; use it for instrumentation only.
pub fn check_invariants<S: Scalar>(state: &SolverState<S>, intervals: &[Interval<S>]) -> InvariantReport {
    let checker = Checker { state, intervals };
    InvariantReport {
        checks: InvariantId::ALL
            .iter()
            .map(|&id| InvariantCheck { id, counterexample: checker.check(id).err() })
            .collect(),
    }
}

struct Checker<'a, S> {
    state: &'a SolverState<S>,
    intervals: &'a [Interval<S>],
}

impl<S: Scalar> Checker<'_, S> {
    fn last(&self) -> usize {
        self.state.next - 1
    }

    fn front(&self) -> Result<&Entry<S>, String> {
        self.state.critical.iter().next().ok_or_else(|| "critical list is empty".to_string())
    }

    fn implied(&self, j: usize) -> Result<S, String> {
        let front = self.front()?;
        let d = self.state.d_min.finite().ok_or_else(|| format!("point {j} is implied but d_min is unbounded"))?;
        Ok(front.left.add(&d.mul_count(j - front.index)))
    }

    fn left(&self, k: usize) -> &S {
        &self.intervals[k].left
    }

    fn check(&self, id: InvariantId) -> Result<(), String> {
        let st = self.state;
        if st.next == 0 || st.next > self.intervals.len() {
            return Err(format!("next index {} out of range", st.next));
        }
        let last = self.last();
        match id {
            InvariantId::TemporaryPoint => {
                let front = self.front()?;
                let expected = if last > front.index { self.implied(last)? } else { self.left(last).clone() };
                if st.prev_point != expected {
                    return Err(format!("p[{last}] = {:?}, expected {expected:?}", st.prev_point));
                }
                if !self.intervals[last].contains(&st.prev_point) {
                    return Err(format!("p[{last}] = {:?} outside its interval", st.prev_point));
                }
                Ok(())
            }
            InvariantId::CertificateFormula => {
                let (i, j) = (st.i_star, st.j_star);
                if i > j || j > last {
                    return Err(format!("indices (i*, j*) = ({i}, {j}) out of order or range"));
                }
                let expected = if i == j {
                    match &st.initial_bound {
                        Some(b) => ExtendedValue::Finite(b.clone()),
                        None => ExtendedValue::Unbounded,
                    }
                } else {
                    ExtendedValue::Finite(self.intervals[j].right.sub(self.left(i)).div_count(j - i))
                };
                if st.d_min != expected {
                    return Err(format!("d_min = {:?} but (i*, j*) = ({i}, {j}) gives {expected:?}", st.d_min));
                }
                Ok(())
            }
            InvariantId::RearIsLast => {
                let rear = st.critical.iter().last().ok_or("critical list is empty")?;
                if rear.index != last {
                    return Err(format!("rear index {} != last processed {last}", rear.index));
                }
                Ok(())
            }
            InvariantId::FrontAtLeft => {
                let front = self.front()?;
                match st.finalized.get(front.index) {
                    Some(p) if p == self.left(front.index) => Ok(()),
                    Some(p) => Err(format!("p[{}] = {p:?} is not its left endpoint", front.index)),
                    None => Err(format!("front point {} not finalized", front.index)),
                }
            }
            InvariantId::FinalizedPrefix => {
                let front = self.front()?;
                if st.finalized.len() != front.index + 1 {
                    return Err(format!("{} points finalized, front index {}", st.finalized.len(), front.index));
                }
                Ok(())
            }
            InvariantId::FinalizedInIntervals => {
                for (j, p) in st.finalized.iter().enumerate() {
                    match self.intervals.get(j) {
                        Some(iv) if iv.contains(p) => {}
                        _ => return Err(format!("finalized p[{j}] = {p:?} outside its interval")),
                    }
                }
                Ok(())
            }
            InvariantId::FinalizedSpacing => {
                for (j, pair) in st.finalized.windows(2).enumerate() {
                    let gap = pair[1].sub(&pair[0]);
                    let ok = match &st.d_min {
                        ExtendedValue::Finite(d) => &gap >= d,
                        ExtendedValue::Unbounded => false,
                    };
                    if !ok {
                        return Err(format!("gap p[{j}]..p[{}] = {gap:?} < d_min {:?}", j + 1, st.d_min));
                    }
                }
                Ok(())
            }
            InvariantId::ImpliedPoints => {
                let front = self.front()?;
                for j in front.index + 1..=last {
                    let p = self.implied(j)?;
                    if !self.intervals[j].contains(&p) {
                        return Err(format!("implied p[{j}] = {p:?} outside its interval"));
                    }
                }
                Ok(())
            }
            InvariantId::PriorityProperty => {
                let entries: Vec<_> = st.critical.iter().collect();
                let in_list: std::collections::HashSet<usize> = entries.iter().map(|e| e.index).collect();
                for pair in entries.windows(2) {
                    let (h, h1) = (pair[0].index, pair[1].index);
                    let rise = self.left(h1).sub(self.left(h));
                    for j in h + 1..=last {
                        if j == h1 {
                            continue;
                        }
                        let to_j = self.left(j).sub(self.left(h));
                        if in_list.contains(&j) {
                            if !slope_gt(&rise, h1 - h, &to_j, j - h) {
                                return Err(format!("slope({h}->{h1}) does not exceed slope({h}->{j})"));
                            }
                        } else if slope_gt(&to_j, j - h, &rise, h1 - h) {
                            // an evicted index may tie: it reaches its left endpoint together with h1
                            return Err(format!("slope({h}->{j}) exceeds slope({h}->{h1})"));
                        }
                    }
                }
                Ok(())
            }
            InvariantId::SlopesDecreasing => {
                let entries: Vec<_> = st.critical.iter().collect();
                for w in entries.windows(3) {
                    let (a, b, c) = (w[0].index, w[1].index, w[2].index);
                    let s1 = self.left(b).sub(self.left(a));
                    let s2 = self.left(c).sub(self.left(b));
                    if !slope_gt(&s1, b - a, &s2, c - b) {
                        return Err(format!("slope({a}->{b}) does not exceed slope({b}->{c})"));
                    }
                }
                Ok(())
            }
            InvariantId::ListWellFormed => {
                let mut prev: Option<usize> = None;
                for e in st.critical.iter() {
                    if prev.is_some_and(|p| p >= e.index) || e.index > last {
                        return Err(format!("index {} out of order", e.index));
                    }
                    if &e.left != self.left(e.index) {
                        return Err(format!("cached left of {} is stale", e.index));
                    }
                    prev = Some(e.index);
                }
                if prev.is_none() {
                    return Err("critical list is empty".into());
                }
                Ok(())
            }
        }
    }
}

/// A failed instrumented run.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invariant violated after interval {interval}: {}", describe(.report, .message))]
pub struct InvariantViolation {
    /// 1-based index of the interval just processed.
    pub interval: usize,
    pub report: InvariantReport,
    /// Set for failures outside the per-state report (e.g. `d_min` growing).
    pub message: Option<String>,
}

fn describe(report: &InvariantReport, message: &Option<String>) -> String {
    let mut parts: Vec<String> =
        report.failures().map(|c| format!("{} ({})", c.id, c.counterexample.as_deref().unwrap_or_default())).collect();
    parts.extend(message.iter().cloned());
    parts.join("; ")
}

/// Outcome of an instrumented run.
#[derive(Clone, Debug)]
pub struct CheckedRun {
    pub run: LineRun<Rational>,
    /// Number of states checked (one per processed interval).
    pub states_checked: usize,
    pub branches: Vec<Branch>,
}

/// Runs the scan in exact arithmetic, checking every invariant after every
/// interval and that `d_min` never increases.
pub fn run_line_checked(
    intervals: &[Interval],
    initial_bound: Option<&Rational>,
) -> Result<CheckedRun, InvariantViolation> {
    let mut state = SolverState::new(&intervals[0], initial_bound.cloned());
    let mut branches = Vec::with_capacity(intervals.len());
    let check = |state: &SolverState<Rational>, message: Option<String>| {
        let report = check_invariants(state, intervals);
        if report.all_passed() && message.is_none() {
            Ok(())
        } else {
            Err(InvariantViolation { interval: state.next, report, message })
        }
    };
    check(&state, None)?;
    for iv in &intervals[1..] {
        let before = state.d_min.clone();
        branches.push(state.step(iv));
        let grew = (state.d_min > before).then(|| format!("d_min increased from {before} to {}", state.d_min));
        check(&state, grew)?;
    }
    Ok(CheckedRun { run: state.finalize_tail(), states_checked: intervals.len(), branches })
}

/// [`solve_line`] with per-step invariant checking.
pub fn solve_line_checked(
    instance: &LineInstance,
    initial_bound: Option<&Rational>,
) -> Result<Solution, InvariantViolation> {
    run_line_checked(instance.intervals(), initial_bound).map(|c| line_solution(c.run))
}
