//! Instances, solutions, certificates and the instance text format.
//!
//! Interval indices exposed in [`Certificate`] and in error messages are
//! 1-based, matching the text format. Everything else is 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{ExtendedValue, Rational};

/// A closed interval `[left, right]` on a line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T = Rational> {
    pub left: T,
    pub right: T,
}

impl<T> Interval<T> {
    pub fn new(left: T, right: T) -> Self {
        Interval { left, right }
    }
}

impl<T: PartialOrd> Interval<T> {
    pub fn contains(&self, x: &T) -> bool {
        &self.left <= x && x <= &self.right
    }
}

impl Interval<Rational> {
    /// Integer endpoints, for tests and examples.
    pub fn int(left: i64, right: i64) -> Self {
        Interval::new(Rational::from_integer(left), Rational::from_integer(right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("instance has no intervals")]
    Empty,
    #[error("interval {index} has left endpoint greater than right endpoint")]
    Inverted { index: usize },
    #[error("intervals {first} and {second} are not sorted")]
    Unsorted { first: usize, second: usize },
    #[error("overlap between interval {first} and {second}")]
    Overlap { first: usize, second: usize },
    #[error("circumference must be positive")]
    NonPositiveCircumference,
    #[error("interval {index} start is outside [0, circumference)")]
    StartOutOfRange { index: usize },
    #[error("interval {index} has negative length")]
    NegativeLength { index: usize },
    #[error("interval {index} is at least as long as the circumference")]
    TooLong { index: usize },
    #[error("interval {last} wraps past the start of interval 1")]
    WrapOverlap { last: usize },
}

/// Sorted, pairwise interior-disjoint intervals on a line (touching allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineInstance {
    intervals: Vec<Interval>,
}

impl LineInstance {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, ValidationError> {
        if intervals.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (i, iv) in intervals.iter().enumerate() {
            if iv.left > iv.right {
                return Err(ValidationError::Inverted { index: i + 1 });
            }
        }
        for (i, pair) in intervals.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if b.left < a.left {
                return Err(ValidationError::Unsorted { first: i + 1, second: i + 2 });
            }
            if b.left < a.right {
                return Err(ValidationError::Overlap { first: i + 1, second: i + 2 });
            }
        }
        Ok(LineInstance { intervals })
    }

    /// Builds from integer endpoint pairs. Panics if invalid.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(l, r)| Interval::int(l, r)).collect()).expect("valid instance")
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// An arc on a cycle: starts at `start` and runs clockwise for `length`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub start: Rational,
    pub length: Rational,
}

impl Arc {
    pub fn new(start: Rational, length: Rational) -> Self {
        Arc { start, length }
    }
}

/// Intervals sorted clockwise on a cycle of positive circumference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInstance {
    circumference: Rational,
    arcs: Vec<Arc>,
}

impl CycleInstance {
    pub fn new(circumference: Rational, arcs: Vec<Arc>) -> Result<Self, ValidationError> {
        if !circumference.is_positive() {
            return Err(ValidationError::NonPositiveCircumference);
        }
        if arcs.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (i, arc) in arcs.iter().enumerate() {
            if arc.start.is_negative() || arc.start >= circumference {
                return Err(ValidationError::StartOutOfRange { index: i + 1 });
            }
            if arc.length.is_negative() {
                return Err(ValidationError::NegativeLength { index: i + 1 });
            }
            if arc.length >= circumference {
                return Err(ValidationError::TooLong { index: i + 1 });
            }
        }
        for (i, pair) in arcs.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if b.start <= a.start {
                return Err(ValidationError::Unsorted { first: i + 1, second: i + 2 });
            }
            if &a.start + &a.length > b.start {
                return Err(ValidationError::Overlap { first: i + 1, second: i + 2 });
            }
        }
        let last = arcs.last().expect("non-empty");
        if &last.start + &last.length > &arcs[0].start + &circumference {
            return Err(ValidationError::WrapOverlap { last: arcs.len() });
        }
        Ok(CycleInstance { circumference, arcs })
    }

    /// Builds from integer `(start, length)` pairs. Panics if invalid.
    pub fn from_ints(circumference: i64, pairs: &[(i64, i64)]) -> Self {
        Self::new(
            Rational::from_integer(circumference),
            pairs.iter().map(|&(s, len)| Arc::new(Rational::from_integer(s), Rational::from_integer(len))).collect(),
        )
        .expect("valid instance")
    }

    pub fn circumference(&self) -> &Rational {
        &self.circumference
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Length of the clockwise arc from `from` to `to`, in `[0, |C|)`.
    pub fn clockwise(&self, from: &Rational, to: &Rational) -> Rational {
        (to - from).rem_euclid(&self.circumference)
    }

    /// Shorter-arc distance between two points on the cycle.
    pub fn distance(&self, a: &Rational, b: &Rational) -> Rational {
        let cw = self.clockwise(a, b);
        let ccw = &self.circumference - &cw;
        cw.min(ccw)
    }

    /// Clockwise length from the start of arc `i` to the end of arc `i + steps`
    /// (indices 0-based, taken mod n), covering `steps + 1` consecutive arcs.
    pub fn window_length(&self, i: usize, steps: usize) -> Rational {
        let n = self.len();
        let j = (i + steps) % n;
        let offset = if steps == 0 {
            Rational::zero()
        } else {
            let cw = self.clockwise(&self.arcs[i].start, &self.arcs[j].start);
            if cw.is_zero() {
                // wrapped all the way round to the same arc
                self.circumference.clone()
            } else {
                cw
            }
        };
        offset + &self.arcs[j].length
    }

    /// Whether `x` lies on arc `i` (checked clockwise from its start).
    pub fn arc_contains(&self, i: usize, x: &Rational) -> bool {
        if x.is_negative() || x >= &self.circumference {
            return false;
        }
        self.clockwise(&self.arcs[i].start, x) <= self.arcs[i].length
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Line(LineInstance),
    Cycle(CycleInstance),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Line(l) => l.len(),
            Instance::Cycle(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> Kind {
        match self {
            Instance::Line(_) => Kind::Line,
            Instance::Cycle(_) => Kind::Cycle,
        }
    }

    /// Renders the instance in the text format. Integers print bare,
    /// other values as `p/q`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Instance::Line(line) => {
                out.push_str(&format!("line {}\n", line.len()));
                for iv in line.intervals() {
                    out.push_str(&format!("{} {}\n", iv.left.to_plain_string(), iv.right.to_plain_string()));
                }
            }
            Instance::Cycle(cycle) => {
                out.push_str(&format!("cycle {} {}\n", cycle.len(), cycle.circumference().to_plain_string()));
                for arc in cycle.arcs() {
                    out.push_str(&format!("{} {}\n", arc.start.to_plain_string(), arc.length.to_plain_string()));
                }
            }
        }
        out
    }
}

impl From<LineInstance> for Instance {
    fn from(value: LineInstance) -> Self {
        Instance::Line(value)
    }
}

impl From<CycleInstance> for Instance {
    fn from(value: CycleInstance) -> Self {
        Instance::Cycle(value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Line,
    Cycle,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Line => "line",
            Kind::Cycle => "cycle",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "line" => Ok(Kind::Line),
            "cycle" => Ok(Kind::Cycle),
            other => Err(format!("unknown kind `{other}` (expected line or cycle)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid instance: {0}")]
    Invalid(#[from] ValidationError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Splits a line into tokens paired with their 1-based column.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter().map(|(i, t)| (text[..i].chars().count() + 1, t)).collect()
}

fn number(line: usize, (column, tok): (usize, &str)) -> Result<Rational, ParseError> {
    tok.parse().map_err(|e| syntax(line, column, format!("{e}")))
}

/// Parses the instance text format:
///
/// ```text
/// # comment
/// line <n>            |  cycle <n> <circumference>
/// <left> <right>      |  <start> <length>
/// ```
///
/// Numbers take an optional sign and may be integers, decimals (converted
/// exactly) or `p/q` fractions.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_no, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing header"))?;
    let head = tokens(header);
    let kind: Kind = head[0].1.parse().map_err(|e: String| syntax(header_no, head[0].0, e))?;
    let expected_tokens = match kind {
        Kind::Line => 2,
        Kind::Cycle => 3,
    };
    if head.len() != expected_tokens {
        let column = head.get(expected_tokens).map_or(header.len() + 1, |t| t.0);
        return Err(syntax(
            header_no,
            column,
            match kind {
                Kind::Line => "expected `line <n>`",
                Kind::Cycle => "expected `cycle <n> <circumference>`",
            },
        ));
    }
    let n: usize =
        head[1].1.parse().map_err(|_| syntax(header_no, head[1].0, format!("invalid count `{}`", head[1].1)))?;
    if n == 0 {
        return Err(ValidationError::Empty.into());
    }
    let circumference = match kind {
        Kind::Cycle => Some(number(header_no, head[2])?),
        Kind::Line => None,
    };

    let mut pairs = Vec::with_capacity(n);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        let toks = tokens(line);
        if pairs.len() == n {
            return Err(syntax(line_no, toks[0].0, format!("more than {n} interval lines")));
        }
        if toks.len() != 2 {
            let column = toks.get(2).map_or(line.len() + 1, |t| t.0);
            return Err(syntax(line_no, column, "expected two numbers"));
        }
        pairs.push((number(line_no, toks[0])?, number(line_no, toks[1])?));
        last_line = line_no;
    }
    if pairs.len() < n {
        return Err(syntax(last_line + 1, 1, format!("expected {n} intervals, found {}", pairs.len())));
    }

    Ok(match circumference {
        None => Instance::Line(LineInstance::new(pairs.into_iter().map(|(l, r)| Interval::new(l, r)).collect())?),
        Some(c) => {
            Instance::Cycle(CycleInstance::new(c, pairs.into_iter().map(|(s, len)| Arc::new(s, len)).collect())?)
        }
    })
}

/// Why the solver's `d_min` is optimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `value = (r_j - l_i) / (j - i)` on a line, `i < j` (1-based).
    LinePair { i_star: usize, j_star: usize, value: Rational },
    /// `value = clockwise(l_i -> r_j) / steps` for the `steps + 1` consecutive
    /// cycle intervals starting at `i` (1-based).
    CycleWindow { i: usize, j: usize, steps: usize, value: Rational },
    /// `value = |C| / n`.
    CycleUniform { value: Rational },
    /// No pair of points exists.
    Unbounded,
    /// The caller-provided bound was never beaten.
    InitialBound { value: Rational },
}

impl Certificate {
    pub fn value(&self) -> ExtendedValue {
        match self {
            Certificate::LinePair { value, .. }
            | Certificate::CycleWindow { value, .. }
            | Certificate::CycleUniform { value }
            | Certificate::InitialBound { value } => ExtendedValue::Finite(value.clone()),
            Certificate::Unbounded => ExtendedValue::Unbounded,
        }
    }
}

/// Work counters collected by the line solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorkStats {
    pub intervals_processed: u64,
    pub deque_pushes: u64,
    pub deque_pops: u64,
    pub finalizations: u64,
}

impl WorkStats {
    pub fn total(&self) -> u64 {
        self.deque_pushes + self.deque_pops + self.finalizations
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub kind: Kind,
    pub points: Vec<Rational>,
    pub d_min: ExtendedValue,
    pub certificate: Certificate,
    pub stats: WorkStats,
}

#[derive(Serialize, Deserialize)]
struct SolutionDoc {
    kind: Kind,
    d_min: ExtendedValue,
    d_min_approx: Option<f64>,
    points: Vec<Rational>,
    certificate: Certificate,
    stats: WorkStats,
}

impl Solution {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("solution serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.doc()).expect("solution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let doc: SolutionDoc = serde_json::from_str(text)?;
        Ok(Solution {
            kind: doc.kind,
            points: doc.points,
            d_min: doc.d_min,
            certificate: doc.certificate,
            stats: doc.stats,
        })
    }

    fn doc(&self) -> SolutionDoc {
        SolutionDoc {
            kind: self.kind,
            d_min: self.d_min.clone(),
            d_min_approx: self.d_min.finite().map(Rational::to_f64),
            points: self.points.clone(),
            certificate: self.certificate.clone(),
            stats: self.stats,
        }
    }
}
