use serde::{Deserialize, Serialize};

use super::Outcome;

/// Wilson score interval for `successes / total` at normal quantile `z`.
pub fn wilson_interval(successes: usize, total: usize, z: f64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let n = total as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Statistics of one method (or pair) at one x-axis value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub x: f64,
    pub method: String,
    pub runs: usize,
    pub successes: usize,
    pub local_minima: usize,
    pub diverged: usize,
    pub stalled: usize,
    pub probability: f64,
    /// 95% Wilson interval of `probability`.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Over successful runs; `None` without successes.
    pub mean_iterations: Option<f64>,
    pub flops_per_point: Option<f64>,
}

/// Sample bookkeeping for one x-axis value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub x: f64,
    pub family: String,
    pub samples: usize,
    /// Samples dropped because the census found local minima.
    pub excluded: usize,
    /// Samples where the multi-start search found no minimum at all.
    pub no_minimum: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    /// `(key, value)` echo of the configuration.
    pub config: Vec<(String, String)>,
    pub groups: Vec<GroupSummary>,
    pub cells: Vec<CellStats>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seed: u64, config: Vec<(String, String)>) -> Self {
        Self {
            experiment: experiment.to_string(),
            seed,
            config,
            groups: Vec::new(),
            cells: Vec::new(),
        }
    }

    /// Appends the groups and cells of `other`.
    pub fn extend(&mut self, other: ExperimentReport) {
        self.groups.extend(other.groups);
        self.cells.extend(other.cells);
    }

    pub fn cell(&self, x: f64, method: &str) -> Option<&CellStats> {
        self.cells.iter().find(|c| c.x == x && c.method == method)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `x,method,probability,mean_iterations,flops_per_point` with the
    /// configuration echoed as `#` lines.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# experiment = {}\n# seed = {}\n", self.experiment, self.seed);
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str("x,method,probability,mean_iterations,flops_per_point\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.x,
                c.method,
                num(Some(c.probability)),
                num(c.mean_iterations),
                num(c.flops_per_point)
            ));
        }
        out
    }
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.16e}"),
        None => "nan".to_string(),
    }
}

/// Running counts for one cell. Sums are integers or are added in a fixed
/// order, so merging is deterministic.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub runs: usize,
    pub successes: usize,
    pub local_minima: usize,
    pub diverged: usize,
    pub stalled: usize,
    pub iterations: u64,
    pub flops_per_point: f64,
}

impl Tally {
    pub fn add(&mut self, outcome: Outcome, iterations: usize, flops_per_point: f64) {
        self.runs += 1;
        match outcome {
            Outcome::Success => {
                self.successes += 1;
                self.iterations += iterations as u64;
                self.flops_per_point += flops_per_point;
            }
            Outcome::LocalMinimum => self.local_minima += 1,
            Outcome::Diverged => self.diverged += 1,
            Outcome::Stalled => self.stalled += 1,
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.runs += other.runs;
        self.successes += other.successes;
        self.local_minima += other.local_minima;
        self.diverged += other.diverged;
        self.stalled += other.stalled;
        self.iterations += other.iterations;
        self.flops_per_point += other.flops_per_point;
    }

    pub fn into_cell(self, x: f64, method: String) -> CellStats {
        let (ci_low, ci_high) = wilson_interval(self.successes, self.runs, 1.96);
        let per_success = |v: f64| (self.successes > 0).then(|| v / self.successes as f64);
        CellStats {
            x,
            method,
            runs: self.runs,
            successes: self.successes,
            local_minima: self.local_minima,
            diverged: self.diverged,
            stalled: self.stalled,
            probability: if self.runs > 0 {
                self.successes as f64 / self.runs as f64
            } else {
                0.0
            },
            ci_low,
            ci_high,
            mean_iterations: per_success(self.iterations as f64),
            flops_per_point: per_success(self.flops_per_point),
        }
    }
}
