//! The `verify` report: one record per check plus run metadata.

use serde::Serialize;

use s0calc_core::check::{Check, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub trials: usize,
    /// Sorted by name.
    pub checks: Vec<Check>,
    /// Seconds; the only field that varies between identical runs.
    pub wall_time: f64,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    /// One line per check, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            if c.status == Status::Skip {
                out.push_str(&format!("{tag}  {}  ({})\n", c.name, c.details));
            } else {
                out.push_str(&format!("{tag}  {}  err={:.3e} tol={:.3e}\n", c.name, c.max_abs_err, c.tolerance));
            }
        }
        out.push_str(&format!(
            "suite {} on {} (seed {}, {} trials): {} passed, {} failed, {} skipped in {:.2} s\n",
            self.suite,
            self.group,
            self.seed,
            self.trials,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.wall_time
        ));
        out
    }
}
