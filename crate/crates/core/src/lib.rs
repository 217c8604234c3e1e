//! Least-squares fitting of circles and lines to planar points.
//!
//! The objective throughout is the sum of squared geometric distances,
//! `F = Σ d_i²`. The crate provides noniterative algebraic fits (Kåsa, Pratt,
//! Taubin) and two heuristics used as initial guesses, four iterative
//! minimizers, a synthetic data generator and the Monte-Carlo harness used to
//! compare them.

pub mod algebraic;
pub mod cli;
pub mod error;
pub mod geometric;
pub mod geometry;
pub mod harness;
pub mod io;
mod linalg;
pub mod synthetic;

pub use algebraic::{PrefitMethod, PrefitResult};
pub use error::{Error, Result};
pub use geometric::{FitOptions, FitOutcome, FitStatus, IterativeMethod};
pub use geometry::{
    AlgebraicCircle, DataSet, GeneralizedCircle, Line, NaturalCircle, Point,
};
