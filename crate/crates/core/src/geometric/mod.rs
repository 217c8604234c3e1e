//! Iterative minimizers of `F = Σ d_i²`: Levenberg-Marquardt in natural
//! `(a, b, R)` parameters (LMC) and in `(A, D, θ)` parameters (LMA), and the
//! Landau and Späth fixed-point schemes.
//!
//! Every fitter runs on the data mapped to its centroid frame scaled by
//! `d_max`, so step tolerances on `(a, b, R)` are relative to `d_max`.

mod landau;
mod lm;
mod lma;
mod lmc;
mod spath;

use serde::{Deserialize, Serialize};

pub use landau::fit_landau;
pub use lma::{fit_lma, lma_distance_and_jacobian, AdtParams, LmaPartials};
pub use lmc::fit_lmc;
pub use spath::fit_spath;

use crate::error::{Error, Result};
use crate::geometry::{AlgebraicCircle, DataSet, Frame, GeneralizedCircle, NaturalCircle};

/// Stopping rules, damping schedule and safeguards shared by the fitters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// `None` uses the per-method default (200 for LM, 5000 for Landau/Späth).
    pub max_iterations: Option<usize>,
    pub step_tolerance: f64,
    pub objective_tolerance: f64,
    /// Center farther than this many `d_max` from the centroid counts as an
    /// escape to infinity.
    pub divergence_radius_factor: f64,
    pub initial_damping: f64,
    pub damping_up: f64,
    pub damping_down: f64,
    /// Damping above which a fit is declared stalled.
    pub max_damping: f64,
    /// Seeds the direction of LMA origin shifts.
    pub rng_seed: u64,
    pub max_origin_shifts: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: None,
            step_tolerance: 1e-10,
            objective_tolerance: 1e-12,
            divergence_radius_factor: 1e6,
            initial_damping: 1e-3,
            damping_up: 10.0,
            damping_down: 10.0,
            max_damping: 1e12,
            rng_seed: 0,
            max_origin_shifts: 10,
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.step_tolerance,
            self.objective_tolerance,
            self.divergence_radius_factor,
            self.initial_damping,
            self.damping_up,
            self.damping_down,
            self.max_damping,
        ];
        if positive.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(
                "fit options must be positive and finite".into(),
            ));
        }
        if self.step_tolerance >= 1.0 || self.objective_tolerance >= 1.0 {
            return Err(Error::InvalidParameter("tolerances must be < 1".into()));
        }
        if self.damping_up <= 1.0 || self.damping_down <= 1.0 {
            return Err(Error::InvalidParameter("damping multipliers must exceed 1".into()));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidParameter("max_iterations must be positive".into()));
        }
        Ok(())
    }

    /// Applies `key = value` lines (`#` comments allowed) on top of `self`.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::InvalidParameter(format!("config line {}: {msg}", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let float = || value.parse::<f64>().map_err(|e| bad(format!("{key}: {e}")));
            let int = || value.parse::<u64>().map_err(|e| bad(format!("{key}: {e}")));
            match key {
                "max_iterations" => self.max_iterations = Some(int()? as usize),
                "step_tolerance" => self.step_tolerance = float()?,
                "objective_tolerance" => self.objective_tolerance = float()?,
                "divergence_radius_factor" => self.divergence_radius_factor = float()?,
                "initial_damping" => self.initial_damping = float()?,
                "damping_up" => self.damping_up = float()?,
                "damping_down" => self.damping_down = float()?,
                "max_damping" => self.max_damping = float()?,
                "rng_seed" => self.rng_seed = int()?,
                "max_origin_shifts" => self.max_origin_shifts = int()? as usize,
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        self.validate()
    }

    pub(crate) fn iteration_cap(&self, method: IterativeMethod) -> usize {
        self.max_iterations.unwrap_or(match method {
            IterativeMethod::Lmc | IterativeMethod::Lma => 200,
            IterativeMethod::Landau | IterativeMethod::Spath => 5000,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FitStatus {
    Converged,
    /// Center escaped beyond the divergence radius.
    Diverged,
    MaxIterations,
    /// Damping blew up (or origin shifts ran out) without an acceptable step.
    Stalled,
}

impl FitStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Converged => "Converged",
            Self::Diverged => "Diverged",
            Self::MaxIterations => "MaxIterations",
            Self::Stalled => "Stalled",
        }
    }
}

/// One iterate, expressed in the caller's coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    /// Normalized coefficients; the sign of `A` is the one the fitter used.
    pub algebraic: AlgebraicCircle,
    pub objective: f64,
}

impl TracePoint {
    pub fn natural(&self) -> Option<NaturalCircle> {
        match self.algebraic.to_natural() {
            Ok(GeneralizedCircle::Circle(c)) => Some(c),
            _ => None,
        }
    }

    /// `(A, D, θ)` with `θ = atan2(C, B)`.
    pub fn adt(&self) -> (f64, f64, f64) {
        let c = &self.algebraic;
        (c.a, c.d, c.c.atan2(c.b))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOutcome {
    pub method: IterativeMethod,
    pub result: GeneralizedCircle,
    pub objective: f64,
    pub status: FitStatus,
    /// Accepted iterations.
    pub iterations: usize,
    /// `trace[0]` is the initial guess, `trace[iterations]` the result.
    pub trace: Vec<TracePoint>,
    /// LMA origin shifts applied (always 0 for the other methods).
    pub origin_shifts: usize,
}

impl FitOutcome {
    /// Analytic cost of the run: iterations times the per-iteration constant.
    pub fn flops(&self, n: usize) -> f64 {
        self.iterations as f64 * self.method.flops_per_iteration(n)
    }

    /// Trace as CSV: `iter,a,b,R,F` for natural-parameter methods and
    /// `iter,A,D,theta,F` for LMA.
    pub fn trace_csv(&self) -> String {
        let mut out = String::new();
        if self.method == IterativeMethod::Lma {
            out.push_str("iter,A,D,theta,F\n");
            for (i, t) in self.trace.iter().enumerate() {
                let (a, d, theta) = t.adt();
                out.push_str(&format!(
                    "{i},{a:.16e},{d:.16e},{theta:.16e},{:.16e}\n",
                    t.objective
                ));
            }
        } else {
            out.push_str("iter,a,b,R,F\n");
            for (i, t) in self.trace.iter().enumerate() {
                let (a, b, r) = t
                    .natural()
                    .map(|c| (c.a, c.b, c.r))
                    .unwrap_or((f64::NAN, f64::NAN, f64::INFINITY));
                out.push_str(&format!("{i},{a:.16e},{b:.16e},{r:.16e},{:.16e}\n", t.objective));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IterativeMethod {
    Lma,
    Lmc,
    Spath,
    Landau,
}

impl IterativeMethod {
    pub const ALL: [IterativeMethod; 4] = [Self::Lma, Self::Lmc, Self::Spath, Self::Landau];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Lma => "LMA",
            Self::Lmc => "LMC",
            Self::Spath => "SPA",
            Self::Landau => "LAN",
        }
    }

    /// Published per-iteration flop counts on centered data.
    pub fn flops_per_iteration(&self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            Self::Lmc => 12.0 * n + 41.0,
            Self::Lma => 39.0 * n + 40.0,
            Self::Landau => 11.0 * n + 5.0,
            Self::Spath => 11.0 * n + 13.0,
        }
    }

    /// Runs the method. Only LMA accepts a line as the initial guess.
    pub fn run(&self, data: &DataSet, init: &GeneralizedCircle, opts: &FitOptions) -> Result<FitOutcome> {
        if let Self::Lma = self {
            return fit_lma(data, init, opts);
        }
        let GeneralizedCircle::Circle(c) = init else {
            return Err(Error::InvalidParameter(format!(
                "{} needs a circle as initial guess",
                self.label()
            )));
        };
        match self {
            Self::Lmc => fit_lmc(data, c, opts),
            Self::Landau => fit_landau(data, c, opts),
            Self::Spath => fit_spath(data, c, opts),
            Self::Lma => unreachable!(),
        }
    }
}

impl std::str::FromStr for IterativeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lma" => Ok(Self::Lma),
            "lmc" => Ok(Self::Lmc),
            "spa" | "spath" => Ok(Self::Spath),
            "lan" | "landau" => Ok(Self::Landau),
            _ => Err(Error::InvalidParameter(format!("unknown iterative method {s:?}"))),
        }
    }
}

/// Natural-parameter state shared by LMC, Landau and Späth, in frame units.
pub(crate) fn natural_trace_point(frame: &Frame, local: &NaturalCircle, f_local: f64) -> TracePoint {
    TracePoint {
        algebraic: frame.natural_back(local).to_algebraic(1.0),
        objective: f_local * frame.scale * frame.scale,
    }
}

/// `Σ (r_i - R)²` in frame units together with the distances.
pub(crate) fn natural_objective(points: &[crate::geometry::Point], c: &NaturalCircle) -> f64 {
    points
        .iter()
        .map(|p| {
            let d = (p.x - c.a).hypot(p.y - c.b) - c.r;
            d * d
        })
        .sum()
}

/// Combined stopping rule: small step and small relative decrease.
pub(crate) fn is_converged(step: f64, f_old: f64, f_new: f64, opts: &FitOptions) -> bool {
    step < opts.step_tolerance && (f_old - f_new).abs() <= opts.objective_tolerance * f_old.max(f64::MIN_POSITIVE)
}
