//! Levenberg-Marquardt driver shared by LMC and LMA.
//!
//! Each step minimizes `‖J δ + d‖² + λ Σ D_k δ_k²` with `D = diag(JᵀJ)`,
//! i.e. the damped normal equations `(JᵀJ + λD) δ = -Jᵀd`, solved by QR of
//! the stacked matrix so that nearly dependent columns (a circle far from
//! its data) keep their precision. λ is divided by `damping_down` after an
//! accepted step and multiplied by `damping_up` after a rejected one.

use super::{is_converged, FitOptions, FitStatus, TracePoint};
use crate::linalg;

pub(crate) struct Linearization {
    /// Jacobian rows `∂d_i/∂p`.
    pub rows: Vec<[f64; 3]>,
    pub residuals: Vec<f64>,
}

pub(crate) enum Trial {
    Value(f64),
    /// Step leaves the domain of the parametrization.
    Infeasible,
    /// Step would cross a removable singularity; reparametrize and retry.
    Reparametrize,
}

pub(crate) trait LmModel {
    /// Objective at the current parameters.
    fn objective(&self) -> f64;
    /// `None` requests a reparametrization before linearizing.
    fn linearize(&self) -> Option<Linearization>;
    fn try_step(&self, step: &[f64; 3]) -> Trial;
    fn accept(&mut self, step: &[f64; 3], f_new: f64);
    /// Returns `false` when no further reparametrization is allowed.
    fn reparametrize(&mut self) -> bool;
    fn diverged(&self) -> bool;
    fn snapshot(&self) -> TracePoint;
}

pub(crate) struct LmRun {
    pub status: FitStatus,
    pub iterations: usize,
    pub trace: Vec<TracePoint>,
}

/// Increase of `F` small enough to be round-off at a minimum.
const ROUNDOFF_RISE: f64 = 1e-13;
/// Relative damping used for the (nearly) undamped Gauss-Newton probe.
const PROBE_DAMPING: f64 = 1e-12;
/// Per-point residual below which data are fitted exactly, in frame units.
const RESIDUAL_FLOOR: f64 = 16.0 * f64::EPSILON;

pub(crate) fn run<M: LmModel>(model: &mut M, opts: &FitOptions, max_iterations: usize) -> LmRun {
    let mut trace = vec![model.snapshot()];
    let mut lambda = opts.initial_damping;
    let mut iterations = 0;

    let status = 'outer: loop {
        if iterations >= max_iterations {
            break FitStatus::MaxIterations;
        }
        let Some(lin) = model.linearize() else {
            if model.reparametrize() {
                continue;
            }
            break FitStatus::Stalled;
        };
        let f = model.objective();
        let mut diag = [0.0; 3];
        for row in &lin.rows {
            for k in 0..3 {
                diag[k] += row[k] * row[k];
            }
        }
        let diag_floor = 1e-9 * diag.iter().sum::<f64>().max(f64::MIN_POSITIVE);
        let rhs: Vec<f64> = lin.residuals.iter().map(|d| -d).collect();

        // A damped step is short wherever λ is large, so stationarity is
        // judged on the Gauss-Newton step and the decrease it predicts.
        let probe = diag.map(|v| (PROBE_DAMPING * v.max(diag_floor)).sqrt());
        let (gn_norm, predicted_decrease) = match linalg::damped_least_squares(&lin.rows, &rhs, probe) {
            Some(gn) => {
                let rest: f64 = lin
                    .rows
                    .iter()
                    .zip(&lin.residuals)
                    .map(|(row, d)| {
                        let r = d + row[0] * gn[0] + row[1] * gn[1] + row[2] * gn[2];
                        r * r
                    })
                    .sum();
                (gn.iter().map(|v| v * v).sum::<f64>().sqrt(), f - rest)
            }
            None => (f64::INFINITY, f64::INFINITY),
        };
        let flat = predicted_decrease <= opts.objective_tolerance * f.max(f64::MIN_POSITIVE);
        let exact = f <= lin.residuals.len() as f64 * RESIDUAL_FLOOR * RESIDUAL_FLOOR;
        if exact || (flat && gn_norm < opts.step_tolerance) {
            break FitStatus::Converged;
        }

        loop {
            let weights = diag.map(|v| (lambda * v.max(diag_floor)).sqrt());
            let step = linalg::damped_least_squares(&lin.rows, &rhs, weights).unwrap_or([f64::NAN; 3]);
            if step.iter().any(|v| !v.is_finite()) {
                lambda *= opts.damping_up;
                if lambda > opts.max_damping {
                    break 'outer FitStatus::Stalled;
                }
                continue;
            }
            let step_norm = step.iter().map(|v| v * v).sum::<f64>().sqrt();

            match model.try_step(&step) {
                Trial::Value(f_new) if f_new <= f => {
                    model.accept(&step, f_new);
                    iterations += 1;
                    lambda = (lambda / opts.damping_down).max(f64::MIN_POSITIVE);
                    trace.push(model.snapshot());
                    if model.diverged() {
                        break 'outer FitStatus::Diverged;
                    }
                    if flat && is_converged(step_norm, f, f_new, opts) {
                        break 'outer FitStatus::Converged;
                    }
                    continue 'outer;
                }
                Trial::Reparametrize => {
                    // The step overshot into the singular region: move the
                    // singularity and retry with a shorter step.
                    if !model.reparametrize() {
                        break 'outer FitStatus::Stalled;
                    }
                    lambda *= opts.damping_up;
                    continue 'outer;
                }
                Trial::Value(f_new) => {
                    // Rejected, but only by round-off: already at the minimum.
                    if flat && step_norm < opts.step_tolerance && f_new <= f * (1.0 + ROUNDOFF_RISE) {
                        break 'outer FitStatus::Converged;
                    }
                }
                Trial::Infeasible => {}
            }
            lambda *= opts.damping_up;
            if lambda > opts.max_damping {
                break 'outer FitStatus::Stalled;
            }
        }
    };

    LmRun {
        status,
        iterations,
        trace,
    }
}
