//! Max-min dispersion of points on disjoint intervals.
//!
//! Given `n` pairwise disjoint intervals, sorted along a line or clockwise
//! around a cycle, place one point in each so that the smallest distance
//! between two points is as large as possible. [`solve_line`] and
//! [`solve_cycle`] run in linear time and return the placement together with
//! a [`Certificate`] that [`verify_solution`] can check independently.
//!
//! ```
//! use disperse::{solve_line, LineInstance, Rational, ExtendedValue};
//!
//! let inst = LineInstance::from_ints(&[(0, 1), (2, 4), (5, 6)]);
//! let sol = solve_line(&inst, None);
//! assert_eq!(sol.d_min, ExtendedValue::Finite(Rational::from_integer(3)));
//! ```

pub mod batch;
pub mod bench;
pub mod cycle_solver;
pub mod line_solver;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod scalar;
pub mod verify;

pub use cycle_solver::{solve_cycle, solve_cycle_checked, CheckedCycleError, CycleError};
pub use line_solver::{solve_line, solve_line_checked, Arithmetic, InvariantViolation};
pub use model::{
    parse_instance, Arc, Certificate, CycleInstance, Instance, Interval, Kind, LineInstance, ParseError, Solution,
    ValidationError, WorkStats,
};
pub use rational::{ExtendedValue, Rational};
pub use verify::{verify_solution, VerificationReport, VerifyError};

/// Solves either kind of instance.
pub fn solve_instance(instance: &Instance) -> Result<Solution, CycleError> {
    match instance {
        Instance::Line(line) => Ok(solve_line(line, None)),
        Instance::Cycle(cycle) => solve_cycle(cycle),
    }
}
