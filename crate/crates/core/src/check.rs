//! Pass/fail records for numerical identities and inequalities.
//!
//! A check fails iff `max_abs_err > tolerance`. Equalities use a relative
//! tolerance scaled by the larger side, inequalities a relative slack; both
//! have an absolute floor of `1e-12` so exact zeros compare cleanly.

use serde::{Deserialize, Serialize};

use crate::signal::Signal;

pub const ABS_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_abs_err: f64,
    pub tolerance: f64,
    pub details: String,
}

impl Check {
    pub fn from_error(name: impl Into<String>, err: f64, tolerance: f64, details: impl Into<String>) -> Check {
        // NaN errors must fail, hence the negated comparison.
        let status = if err <= tolerance { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, max_abs_err: err, tolerance, details: details.into() }
    }

    /// `lhs == rhs` up to `rel * max(|lhs|, |rhs|)`.
    pub fn equal(name: impl Into<String>, lhs: f64, rhs: f64, rel: f64) -> Check {
        let tol = (rel * lhs.abs().max(rhs.abs())).max(ABS_FLOOR);
        Check::from_error(name, (lhs - rhs).abs(), tol, format!("lhs={lhs:.12e} rhs={rhs:.12e}"))
    }

    /// Pointwise equality of two signals relative to their largest modulus.
    pub fn signals_equal(name: impl Into<String>, a: &Signal, b: &Signal, rel: f64) -> Check {
        let name = name.into();
        match a.max_abs_diff(b) {
            Ok(err) => {
                let tol = (rel * a.max_abs().max(b.max_abs())).max(ABS_FLOOR);
                Check::from_error(name, err, tol, format!("max|a|={:.6e}", a.max_abs()))
            }
            Err(e) => Check::from_error(name, f64::INFINITY, 0.0, e.to_string()),
        }
    }

    /// `lhs <= rhs` with slack `slack * max(|lhs|, |rhs|)`.
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, slack: f64) -> Check {
        let err = (lhs - rhs).max(0.0);
        let tol = (slack * lhs.abs().max(rhs.abs())).max(ABS_FLOOR);
        let err = if lhs.is_nan() || rhs.is_nan() { f64::NAN } else { err };
        Check::from_error(name, err, tol, format!("lhs={lhs:.12e} <= rhs={rhs:.12e}"))
    }

    pub fn boolean(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Check {
        Check::from_error(name, if ok { 0.0 } else { 1.0 }, 0.0, details)
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Skip, max_abs_err: 0.0, tolerance: 0.0, details: reason.into() }
    }

    pub fn failed_with(name: impl Into<String>, err: impl std::fmt::Display) -> Check {
        Check { name: name.into(), status: Status::Fail, max_abs_err: f64::INFINITY, tolerance: 0.0, details: err.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Check {
        self.name = name.into();
        self
    }
}

/// Folds repeated checks of one identity into a single worst-case record.
#[derive(Clone, Debug)]
pub struct Tally {
    name: String,
    worst: Option<Check>,
    skipped: Option<Check>,
    count: usize,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Tally {
        Tally { name: name.into(), worst: None, skipped: None, count: 0 }
    }

    pub fn push(&mut self, c: Check) {
        self.count += 1;
        if c.status == Status::Skip {
            self.skipped.get_or_insert(c);
            return;
        }
        let score = |c: &Check| if c.max_abs_err.is_nan() { f64::INFINITY } else { c.max_abs_err - c.tolerance };
        let replace = match &self.worst {
            None => true,
            Some(w) => (c.status == Status::Fail && w.status != Status::Fail) || (c.status == w.status && score(&c) > score(w)),
        };
        if replace {
            self.worst = Some(c);
        }
    }

    pub fn finish(self) -> Check {
        let n = self.count;
        match (self.worst, self.skipped) {
            (Some(w), _) => {
                let details = format!("{} trials; worst: {}", n, w.details);
                Check { name: self.name, details, ..w }
            }
            (None, Some(s)) => s.with_name(self.name),
            (None, None) => Check::skip(self.name, "no trials"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_and_inequality_tolerances() {
        assert!(Check::equal("e", 1.0, 1.0 + 1e-12, 1e-9).passed());
        assert!(!Check::equal("e", 1.0, 1.1, 1e-9).passed());
        assert!(Check::equal("z", 0.0, 1e-13, 1e-9).passed());
        assert!(Check::at_most("i", 1.0, 1.0, 0.0).passed());
        assert!(Check::at_most("i", 1.0 + 1e-13, 1.0, 1e-12).passed());
        assert!(!Check::at_most("i", 2.0, 1.0, 1e-12).passed());
        assert!(!Check::equal("nan", f64::NAN, 1.0, 1e-9).passed());
    }

    #[test]
    fn tally_keeps_worst() {
        let mut t = Tally::new("t");
        t.push(Check::equal("a", 1.0, 1.0, 1e-9));
        t.push(Check::equal("b", 1.0, 2.0, 1e-9));
        t.push(Check::equal("c", 1.0, 1.0 + 1e-10, 1e-9));
        let c = t.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.name, "t");
        assert!((c.max_abs_err - 1.0).abs() < 1e-15);
    }
}
