use serde::{Deserialize, Serialize};

use super::report::Tally;
use super::{classify_outcome, find_global_minimum_with, par_map, tags, DataFamily, ExperimentReport, GroupSummary, Outcome};
use crate::error::Result;
use crate::geometric::{FitOptions, IterativeMethod};
use crate::synthetic::{gen_initial_guess, Seed};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceConfig {
    pub family: DataFamily,
    pub methods: Vec<IterativeMethod>,
    pub n_samples: usize,
    /// Random initial guesses per sample, shared by all methods.
    pub n_starts: usize,
    /// LMA starts used to locate the global minimum of each sample.
    pub global_starts: usize,
    pub seed: Seed,
    pub options: FitOptions,
    /// Drop samples on which the census finds local minima.
    pub exclude_local_minima: bool,
    /// x-axis value recorded in the report (point count, arc degrees, ...).
    pub x: f64,
}

impl ConvergenceConfig {
    pub fn new(family: DataFamily, n_samples: usize, n_starts: usize, seed: Seed) -> Self {
        Self {
            family,
            methods: IterativeMethod::ALL.to_vec(),
            n_samples,
            n_starts,
            global_starts: n_starts,
            seed,
            options: FitOptions::default(),
            exclude_local_minima: true,
            x: family.n() as f64,
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("family".into(), self.family.describe()),
            (
                "methods".into(),
                self.methods.iter().map(|m| m.label()).collect::<Vec<_>>().join(" "),
            ),
            ("samples".into(), self.n_samples.to_string()),
            ("starts".into(), self.n_starts.to_string()),
            ("global_starts".into(), self.global_starts.to_string()),
            ("exclude_local_minima".into(), self.exclude_local_minima.to_string()),
        ]
    }
}

enum SampleResult {
    NoMinimum,
    Excluded,
    Used(Vec<Tally>),
}

/// Every method runs from the same random initial guesses on every kept
/// sample; a run succeeds when it converges to the sample's global minimum.
pub fn run_convergence_experiment(cfg: &ConvergenceConfig) -> Result<ExperimentReport> {
    cfg.options.validate()?;
    let n = cfg.family.n();
    let seed = cfg.seed;
    let per_sample = par_map(cfg.n_samples, |i| -> Result<SampleResult> {
        let i = i as u64;
        let data = cfg.family.generate(seed.derive(tags::DATA, i))?;
        let Ok(g) = find_global_minimum_with(&data, cfg.global_starts, seed.derive(tags::GLOBAL, i), &cfg.options)
        else {
            return Ok(SampleResult::NoMinimum);
        };
        if cfg.exclude_local_minima && g.local_minima() > 0 {
            return Ok(SampleResult::Excluded);
        }
        let starts = seed.derive(tags::START, i);
        let shifts = seed.derive(tags::SHIFT, i);
        let mut tallies = vec![Tally::default(); cfg.methods.len()];
        for j in 0..cfg.n_starts as u64 {
            let init = gen_initial_guess(&data, starts.derive(tags::START, j)).into();
            let mut opts = cfg.options.clone();
            opts.rng_seed = shifts.derive(tags::SHIFT, j).0;
            for (tally, method) in tallies.iter_mut().zip(&cfg.methods) {
                match method.run(&data, &init, &opts) {
                    Ok(o) => {
                        let per_point = o.flops(n) / n as f64;
                        tally.add(classify_outcome(&o, &g), o.iterations, per_point);
                    }
                    Err(_) => tally.add(Outcome::Stalled, 0, 0.0),
                }
            }
        }
        Ok(SampleResult::Used(tallies))
    });

    let mut totals = vec![Tally::default(); cfg.methods.len()];
    let mut group = GroupSummary {
        x: cfg.x,
        family: cfg.family.describe(),
        samples: cfg.n_samples,
        excluded: 0,
        no_minimum: 0,
    };
    for r in per_sample {
        match r? {
            SampleResult::NoMinimum => group.no_minimum += 1,
            SampleResult::Excluded => group.excluded += 1,
            SampleResult::Used(t) => {
                for (total, t) in totals.iter_mut().zip(&t) {
                    total.merge(t);
                }
            }
        }
    }
    let mut report = ExperimentReport::new("convergence", seed.0, cfg.echo());
    report.groups.push(group);
    for (tally, method) in totals.into_iter().zip(&cfg.methods) {
        report.cells.push(tally.into_cell(cfg.x, method.label().to_string()));
    }
    Ok(report)
}
