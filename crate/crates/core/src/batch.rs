//! Batch evaluation over graph suites.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it everything runs on the calling thread. Results are returned in
//! input order either way.

use crate::error::Result;
use crate::graph::ConfigGraph;
use crate::obstruction::{fillability_obstruction, ObstructionReport};
use crate::open_book::{assemble_plumbing, assemble_positive, boundary_h1};
use crate::snf::HomologyGroup;
use crate::surface::Pipeline;

pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Parallel when the feature is enabled, sequential otherwise.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn boundary_h1_of(g: &ConfigGraph, pipeline: Pipeline) -> Result<HomologyGroup> {
    let ob = match pipeline {
        Pipeline::Positive => assemble_positive(g)?,
        Pipeline::Plumbing => assemble_plumbing(g)?,
    };
    boundary_h1(&ob)
}

pub fn boundary_h1_batch(graphs: &[ConfigGraph], pipeline: Pipeline) -> Vec<Result<HomologyGroup>> {
    map(graphs, |g| boundary_h1_of(g, pipeline))
}

pub fn obstruction_batch(graphs: &[ConfigGraph]) -> Vec<ObstructionReport> {
    map(graphs, fillability_obstruction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let graphs: Vec<ConfigGraph> = (1..=12).map(|m| ConfigGraph::new().vertex("v", 0, m)).collect();
        let out = boundary_h1_batch(&graphs, Pipeline::Positive);
        for (m, h) in (1..=12u64).zip(out) {
            assert_eq!(h.unwrap(), HomologyGroup::cyclic(m));
        }
        assert_eq!(map(&graphs, |g| g.vertices()[0].m), map_sequential(&graphs, |g| g.vertices()[0].m));
    }
}
