use serde::{Deserialize, Serialize};

use super::tags;
use crate::error::{Error, Result};
use crate::geometric::{fit_lma, FitOptions, FitOutcome, FitStatus};
use crate::geometry::{DataSet, Frame, GeneralizedCircle};
use crate::synthetic::{gen_initial_guess, Seed};

/// Two convergence points are the same minimum when their canonical
/// normalized coefficients, in the centroid frame scaled by `d_max`, differ by
/// at most this much times `1 + max|coefficient|`.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

/// Relative slack on `F` for a run to count as reaching the global minimum.
pub const SUCCESS_TOLERANCE: f64 = 1e-9;

/// One distinct convergence point of the multi-start search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Basin {
    pub params: GeneralizedCircle,
    pub value: f64,
    /// Starts that converged here.
    pub hits: usize,
    #[serde(skip)]
    key: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalMinimum {
    pub params: GeneralizedCircle,
    pub value: f64,
    pub basin_count: usize,
    /// All basins, lowest `F` first.
    pub basins: Vec<Basin>,
    /// Starts that did not converge.
    pub failed_starts: usize,
}

impl GlobalMinimum {
    /// Basins other than the global one.
    pub fn local_minima(&self) -> usize {
        self.basin_count.saturating_sub(1)
    }
}

/// Multi-start LMA from [`gen_initial_guess`] draws with default options.
pub fn find_global_minimum(data: &DataSet, n_starts: usize, seed: Seed) -> Result<GlobalMinimum> {
    find_global_minimum_with(data, n_starts, seed, &FitOptions::default())
}

pub fn find_global_minimum_with(
    data: &DataSet,
    n_starts: usize,
    seed: Seed,
    opts: &FitOptions,
) -> Result<GlobalMinimum> {
    if n_starts == 0 {
        return Err(Error::InvalidParameter("need at least one start".into()));
    }
    let frame = Frame::of(data);
    let mut basins: Vec<Basin> = Vec::new();
    let mut failed_starts = 0;
    for s in 0..n_starts as u64 {
        let init = gen_initial_guess(data, seed.derive(tags::START, s));
        let mut run_opts = opts.clone();
        run_opts.rng_seed = seed.derive(tags::SHIFT, s).0;
        let outcome = match fit_lma(data, &init.into(), &run_opts) {
            Ok(o) if o.status == FitStatus::Converged => o,
            _ => {
                failed_starts += 1;
                continue;
            }
        };
        let Ok(key) = frame
            .algebraic_forward(&outcome.result.to_algebraic())
            .normalize()
            .map(|c| c.canonical().as_array())
        else {
            failed_starts += 1;
            continue;
        };
        match basins.iter_mut().find(|b| same_point(&b.key, &key)) {
            Some(b) => {
                b.hits += 1;
                if outcome.objective < b.value {
                    b.value = outcome.objective;
                    b.params = outcome.result;
                }
            }
            None => basins.push(Basin {
                params: outcome.result,
                value: outcome.objective,
                hits: 1,
                key,
            }),
        }
    }
    if basins.is_empty() {
        return Err(Error::NoMinimumFound);
    }
    basins.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(GlobalMinimum {
        params: basins[0].params,
        value: basins[0].value,
        basin_count: basins.len(),
        basins,
        failed_starts,
    })
}

fn same_point(a: &[f64; 4], b: &[f64; 4]) -> bool {
    let scale = a.iter().chain(b).fold(0.0_f64, |m, v| m.max(v.abs()));
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= CLUSTER_TOLERANCE * (1.0 + scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Success,
    LocalMinimum,
    Diverged,
    Stalled,
}

/// A converged run succeeds when its `F` is no worse than the reference
/// minimum (up to [`SUCCESS_TOLERANCE`]); the parametrization it returns does
/// not matter.
pub fn classify_outcome(o: &FitOutcome, g: &GlobalMinimum) -> Outcome {
    match o.status {
        FitStatus::Converged if o.objective <= g.value + SUCCESS_TOLERANCE * (1.0 + g.value) => Outcome::Success,
        FitStatus::Converged => Outcome::LocalMinimum,
        FitStatus::Diverged => Outcome::Diverged,
        FitStatus::MaxIterations | FitStatus::Stalled => Outcome::Stalled,
    }
}
