//! Monte-Carlo experiments: the multi-start global-minimum oracle, the
//! local-minima census, random-start convergence runs and the
//! prefit × iterative pairing matrix.
//!
//! Work is spread over samples with rayon and collected in index order, and
//! every task draws from its own derived [`Seed`], so reports do not depend
//! on the thread count.

mod census;
mod convergence;
mod global;
mod pairing;
mod report;

use serde::{Deserialize, Serialize};

pub use census::{census_family, census_local_minima, CensusReport};
pub use convergence::{run_convergence_experiment, ConvergenceConfig};
pub use global::{classify_outcome, find_global_minimum, find_global_minimum_with, Basin, GlobalMinimum, Outcome, CLUSTER_TOLERANCE, SUCCESS_TOLERANCE};
pub use pairing::{pair_label, run_pairing_experiment, PairingConfig};
pub use report::{wilson_interval, CellStats, ExperimentReport, GroupSummary};

use crate::error::Result;
use crate::geometry::DataSet;
use crate::synthetic::{gen_arc, gen_uniform_square, ArcSpec, Seed};

/// Environment variable capping the worker threads of the harness.
pub const THREADS_ENV: &str = "CIRCLEFIT_THREADS";

/// Stream tags for [`Seed::derive`].
pub(crate) mod tags {
    pub const DATA: u64 = 1;
    pub const GLOBAL: u64 = 2;
    pub const START: u64 = 3;
    pub const SHIFT: u64 = 4;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum DataFamily {
    UniformSquare { n: usize },
    Arc(ArcSpec),
}

impl DataFamily {
    pub fn generate(&self, seed: Seed) -> Result<DataSet> {
        match self {
            Self::UniformSquare { n } => gen_uniform_square(*n, seed),
            Self::Arc(spec) => gen_arc(spec, seed),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::UniformSquare { n } => *n,
            Self::Arc(spec) => spec.n,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::UniformSquare { n } => format!("uniform square, n={n}"),
            Self::Arc(s) => format!(
                "arc {} deg, R={}, sigma={}, n={}, noise={:?}, placement={:?}",
                s.arc_degrees, s.radius, s.sigma, s.n, s.noise, s.placement
            ),
        }
    }
}

/// Runs `f` for `0..count` in parallel and returns the results in index order.
pub(crate) fn par_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..count).into_par_iter().map(&f).collect::<Vec<T>>();
    match thread_cap() {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}
