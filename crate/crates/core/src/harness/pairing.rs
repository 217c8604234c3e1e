use serde::{Deserialize, Serialize};

use super::report::Tally;
use super::{classify_outcome, find_global_minimum_with, par_map, tags, DataFamily, ExperimentReport, GroupSummary, Outcome};
use crate::algebraic::PrefitMethod;
use crate::error::Result;
use crate::geometric::{FitOptions, IterativeMethod};
use crate::synthetic::Seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingConfig {
    pub family: DataFamily,
    pub prefits: Vec<PrefitMethod>,
    pub iteratives: Vec<IterativeMethod>,
    pub n_samples: usize,
    /// LMA starts used to locate the global minimum of each sample.
    pub global_starts: usize,
    pub seed: Seed,
    pub options: FitOptions,
    pub exclude_local_minima: bool,
    pub x: f64,
}

impl PairingConfig {
    /// All 5 × 4 pairs, every sample kept.
    pub fn new(family: DataFamily, n_samples: usize, global_starts: usize, seed: Seed) -> Self {
        Self {
            family,
            prefits: PrefitMethod::ALL.to_vec(),
            iteratives: IterativeMethod::ALL.to_vec(),
            n_samples,
            global_starts,
            seed,
            options: FitOptions::default(),
            exclude_local_minima: false,
            x: family.n() as f64,
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        let labels = |v: Vec<&str>| v.join(" ");
        vec![
            ("family".into(), self.family.describe()),
            ("prefits".into(), labels(self.prefits.iter().map(|m| m.label()).collect())),
            ("iteratives".into(), labels(self.iteratives.iter().map(|m| m.label()).collect())),
            ("samples".into(), self.n_samples.to_string()),
            ("global_starts".into(), self.global_starts.to_string()),
            ("exclude_local_minima".into(), self.exclude_local_minima.to_string()),
        ]
    }
}

/// Label of a pair, e.g. `AF2+LMA`.
pub fn pair_label(prefit: PrefitMethod, iterative: IterativeMethod) -> String {
    format!("{}+{}", prefit.label(), iterative.label())
}

enum SampleResult {
    NoMinimum,
    Excluded,
    Used(Vec<Tally>),
}

/// Each pair runs once per sample: the prefit supplies the initial guess and
/// its cost is added to the iterative cost.
pub fn run_pairing_experiment(cfg: &PairingConfig) -> Result<ExperimentReport> {
    cfg.options.validate()?;
    let n = cfg.family.n();
    let cells = cfg.prefits.len() * cfg.iteratives.len();
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
        let mut opts = cfg.options.clone();
        opts.rng_seed = seed.derive(tags::SHIFT, i).0;
        let mut tallies = vec![Tally::default(); cells];
        for (pi, prefit) in cfg.prefits.iter().enumerate() {
            let pre = prefit.run(&data);
            for (ii, iterative) in cfg.iteratives.iter().enumerate() {
                let tally = &mut tallies[pi * cfg.iteratives.len() + ii];
                let Ok(pre) = &pre else {
                    tally.add(Outcome::Stalled, 0, 0.0);
                    continue;
                };
                match iterative.run(&data, &pre.estimate, &opts) {
                    Ok(o) => {
                        let per_point = (pre.flops(n) + o.flops(n)) / n as f64;
                        tally.add(classify_outcome(&o, &g), o.iterations, per_point);
                    }
                    Err(_) => tally.add(Outcome::Stalled, 0, 0.0),
                }
            }
        }
        Ok(SampleResult::Used(tallies))
    });

    let mut totals = vec![Tally::default(); cells];
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
    let mut report = ExperimentReport::new("pairing", seed.0, cfg.echo());
    report.groups.push(group);
    let mut tallies = totals.into_iter();
    for prefit in &cfg.prefits {
        for iterative in &cfg.iteratives {
            let t = tallies.next().expect("one tally per pair");
            report.cells.push(t.into_cell(cfg.x, pair_label(*prefit, *iterative)));
        }
    }
    Ok(report)
}
