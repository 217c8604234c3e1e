use serde::{Deserialize, Serialize};

use super::{par_map, tags, wilson_interval, DataFamily, find_global_minimum};
use crate::error::Result;
use crate::synthetic::Seed;

/// Frequencies of 0, 1 and ≥2 local minima over generated samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub family: String,
    pub samples: usize,
    pub starts: usize,
    pub seed: u64,
    /// Samples with 0, 1 and ≥2 local minima.
    pub counts: [usize; 3],
    /// Samples where no start converged (left out of `counts`).
    pub no_minimum: usize,
    /// Local-minimum count of each sample in generation order; `None` where
    /// no minimum was found.
    pub per_sample: Vec<Option<usize>>,
}

impl CensusReport {
    fn classified(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `P(k local minima)` for `k = 0, 1, ≥2`.
    pub fn probabilities(&self) -> [f64; 3] {
        let total = self.classified().max(1) as f64;
        self.counts.map(|c| c as f64 / total)
    }

    /// 95% Wilson intervals matching [`Self::probabilities`].
    pub fn intervals(&self) -> [(f64, f64); 3] {
        let total = self.classified();
        self.counts.map(|c| wilson_interval(c, total, 1.96))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# experiment = census\n# family = {}\n# samples = {}\n# starts = {}\n# seed = {}\n# no_minimum = {}\n",
            self.family, self.samples, self.starts, self.seed, self.no_minimum
        );
        out.push_str("local_minima,count,probability,ci_low,ci_high\n");
        let labels = ["0", "1", ">=2"];
        let p = self.probabilities();
        let ci = self.intervals();
        for i in 0..3 {
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e},{:.16e}\n",
                labels[i], self.counts[i], p[i], ci[i].0, ci[i].1
            ));
        }
        out
    }
}

/// Local-minima census on uniform-square samples of `n` points.
pub fn census_local_minima(n: usize, n_samples: usize, n_starts: usize, seed: Seed) -> Result<CensusReport> {
    census_family(&DataFamily::UniformSquare { n }, n_samples, n_starts, seed)
}

/// For each sample, the number of distinct multi-start convergence points
/// minus one.
pub fn census_family(family: &DataFamily, n_samples: usize, n_starts: usize, seed: Seed) -> Result<CensusReport> {
    let results = par_map(n_samples, |i| -> Result<Option<usize>> {
        let data = family.generate(seed.derive(tags::DATA, i as u64))?;
        Ok(find_global_minimum(&data, n_starts, seed.derive(tags::GLOBAL, i as u64))
            .ok()
            .map(|g| g.local_minima()))
    });
    let mut counts = [0; 3];
    let mut no_minimum = 0;
    let mut per_sample = Vec::with_capacity(n_samples);
    for r in results {
        let r = r?;
        match r {
            Some(k) => counts[k.min(2)] += 1,
            None => no_minimum += 1,
        }
        per_sample.push(r);
    }
    Ok(CensusReport {
        family: family.describe(),
        samples: n_samples,
        starts: n_starts,
        seed: seed.0,
        counts,
        no_minimum,
        per_sample,
    })
}
