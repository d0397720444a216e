//! Batch evaluation over many independent instances.
//!
//! With the `parallel` feature (default) the work is spread over the rayon
//! thread pool; without it the same functions run sequentially. Results keep
//! input order either way.

use crate::cycle_solver::CycleError;
use crate::model::{Instance, Solution};
use crate::oracle::{gen_instance, GenError, GeneratorConfig};
use crate::solve_instance;

/// Maps `f` over `items` in order, on the current thread.
pub fn map_seq<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_par<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_par<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    map_seq(items, f)
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn generate_all(configs: &[GeneratorConfig]) -> Result<Vec<Instance>, GenError> {
    map_par(configs, gen_instance).into_iter().collect()
}

pub fn solve_all(instances: &[Instance]) -> Vec<Result<Solution, CycleError>> {
    map_par(instances, solve_instance)
}

pub fn solve_all_seq(instances: &[Instance]) -> Vec<Result<Solution, CycleError>> {
    map_seq(instances, solve_instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let configs: Vec<_> = (0..64).map(|s| GeneratorConfig::line(s, 2 + (s as usize % 9), 100)).collect();
        let instances = generate_all(&configs).unwrap();
        assert_eq!(instances, map_seq(&configs, |c| gen_instance(c).unwrap()));
        assert_eq!(solve_all(&instances), solve_all_seq(&instances));
    }
}
