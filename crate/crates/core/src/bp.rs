//! Minimum-norm synthesis over time-frequency shifts of a window.
//!
//! Solves `min h(c)` subject to `sum_chi c(chi) pi(chi) g = b` for `h` the
//! unweighted l1 or l-infinity norm of the coefficients, by Douglas-Rachford
//! splitting. The synthesis map `A` satisfies `A A^H = kappa I` with
//! `kappa = |D^| sum_s |g(s)|^2`, so the affine projection is exact and every
//! iterate `P(z)` is feasible. Every iterate also yields a dual certificate
//! `u = A z - b` and the lower bound `|<b, u>| / h*(A^H u)`, so the result is
//! bracketed, not just estimated.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::tf::{canonical_coefficients, coefficient_l1, stft, synthesize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    L1,
    Linf,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub max_iter: usize,
    /// Relative gap `(upper - lower) / upper` at which to stop.
    pub tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_iter: 100_000, tol: 1e-8 }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Objective value of the best feasible iterate.
    pub value: f64,
    /// Certified lower bound on the optimum.
    pub lower: f64,
    pub coefficients: Signal,
    pub iterations: usize,
    /// Largest `|A c - b|` of the returned coefficients.
    pub residual: f64,
}

impl Solution {
    pub fn gap(&self) -> f64 {
        self.value - self.lower
    }
}

fn linf(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn l1(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).sum()
}

fn objective(obj: Objective, v: &[Complex64]) -> f64 {
    match obj {
        Objective::L1 => l1(v),
        Objective::Linf => linf(v),
    }
}

fn dual_objective(obj: Objective, v: &[Complex64]) -> f64 {
    match obj {
        Objective::L1 => linf(v),
        Objective::Linf => l1(v),
    }
}

/// `prox_{gamma h}` in place.
fn prox(obj: Objective, v: &mut [Complex64], gamma: f64) {
    match obj {
        Objective::L1 => {
            for z in v.iter_mut() {
                let m = z.norm();
                *z = if m <= gamma { Complex64::new(0.0, 0.0) } else { *z * (1.0 - gamma / m) };
            }
        }
        Objective::Linf => {
            // Moreau: v - proj onto the l1 ball of radius gamma, i.e. clip moduli at theta.
            let mut mags: Vec<f64> = v.iter().map(|z| z.norm()).collect();
            if mags.iter().sum::<f64>() <= gamma {
                v.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                return;
            }
            mags.sort_by(|a, b| b.total_cmp(a));
            let mut cum = 0.0;
            let mut theta = 0.0;
            for (k, m) in mags.iter().enumerate() {
                cum += m;
                let t = (cum - gamma) / (k + 1) as f64;
                if k + 1 == mags.len() || mags[k + 1] <= t {
                    theta = t.max(0.0);
                    break;
                }
            }
            for z in v.iter_mut() {
                let m = z.norm();
                if m > theta {
                    *z *= theta / m;
                }
            }
        }
    }
}

/// Minimizes `h(c)` over coefficient signals on the phase space of `g`'s domain
/// with `synthesize(c, g) = b`, starting from the canonical coefficients.
pub fn min_norm_synthesis(b: &Signal, g: &Signal, obj: Objective, opts: SolverOptions) -> Result<Solution> {
    b.same_domain(g)?;
    if g.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let d = g.domain();
    let w_g = d.weight_f64();
    let kappa = d.dual().len() as f64 * g.values().iter().map(|z| z.norm_sqr()).sum::<f64>();
    let start = canonical_coefficients(b, g)?;
    if b.is_zero() {
        return Ok(Solution { value: 0.0, lower: 0.0, coefficients: start, iterations: 0, residual: 0.0 });
    }
    // A^H u = V_g u / w_D.
    let adjoint = |u: &Signal| -> Result<Signal> { Ok(stft(u, g)?.scale_real(1.0 / w_g)) };
    let project = |z: &Signal| -> Result<(Signal, Signal)> {
        let r = synthesize(z, g)?.sub(b)?;
        let x = z.sub(&adjoint(&r)?.scale_real(1.0 / kappa))?;
        Ok((x, r))
    };
    let lower_from = |u: &Signal| -> Result<f64> {
        let den = dual_objective(obj, adjoint(u)?.values());
        if den == 0.0 {
            return Ok(0.0);
        }
        let num: Complex64 = b.values().iter().zip(u.values()).map(|(p, q)| p * q.conj()).sum();
        Ok(num.norm() / den)
    };

    let scale = objective(obj, start.values());
    let gamma = match obj {
        Objective::L1 => scale / start.len() as f64,
        Objective::Linf => scale,
    };
    let mut z = start.clone();
    let mut best = start.clone();
    let mut best_value = scale;
    let mut lower: f64 = 0.0;
    for it in 1..=opts.max_iter {
        let (x, r) = project(&z)?;
        let xv = objective(obj, x.values());
        if xv < best_value {
            best_value = xv;
            best = x.clone();
        }
        if it % 10 == 1 || it == opts.max_iter {
            lower = lower.max(lower_from(&r)?);
            if best_value - lower <= opts.tol * best_value {
                let residual = synthesize(&best, g)?.max_abs_diff(b)?;
                return Ok(Solution { value: best_value, lower, coefficients: best, iterations: it, residual });
            }
        }
        let mut y: Vec<Complex64> = x.values().iter().zip(z.values()).map(|(a, c)| 2.0 * a - c).collect();
        prox(obj, &mut y, gamma);
        let y = Signal::new(z.domain().clone(), y)?;
        z = z.add(&y.sub(&x)?)?;
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual: best_value - lower })
}

/// Approximate atomic norm `inf { sum |c| : f = sum c(chi) pi(chi) g }`.
pub fn atomic_norm_bp(f: &Signal, g: &Signal, tol: f64) -> Result<Solution> {
    min_norm_synthesis(f, g, Objective::L1, SolverOptions { tol, ..SolverOptions::default() })
}

/// l1 cost of the canonical coefficients, the starting point of the solver.
pub fn canonical_cost(f: &Signal, g: &Signal) -> Result<f64> {
    Ok(coefficient_l1(&canonical_coefficients(f, g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::group::{GroupSpec, PhasePoint};
    use crate::rng::{random_signal, random_window, seeded};
    use crate::tf::s0;

    fn z(n: usize) -> Domain {
        Domain::Group(GroupSpec::counting(&[n]).unwrap())
    }

    #[test]
    fn prox_linf_clips_to_common_modulus() {
        let mut v = vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-0.5, 0.0)];
        prox(Objective::Linf, &mut v, 2.5);
        // Moduli 3, 1, 0.5 clipped at theta with (3 - theta) + (1 - theta) = 2.5.
        assert!((v[0] - Complex64::new(0.75, 0.0)).norm() < 1e-15);
        assert!((v[1] - Complex64::new(0.0, 0.75)).norm() < 1e-15);
        assert!((v[2] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn single_atom_has_cost_one() {
        let mut rng = seeded(3);
        let d = z(4);
        let g = random_window(&d, &mut rng);
        let f = g.tf_shift(PhasePoint::new(1, 3));
        let sol = atomic_norm_bp(&f, &g, 1e-8).unwrap();
        assert!(sol.value <= 1.0 + 1e-6, "{}", sol.value);
        assert!(sol.residual < 1e-10);
    }

    #[test]
    fn sandwich_on_random_signals() {
        let mut rng = seeded(4);
        for n in [4, 6] {
            let d = z(n);
            let f = random_signal(&d, &mut rng);
            let g = random_window(&d, &mut rng);
            let sol = atomic_norm_bp(&f, &g, 1e-8).unwrap();
            let nf = s0(&f, &g).unwrap();
            let g2 = g.l2_norm().powi(2);
            assert!(g2 * sol.value <= nf * 1.02);
            assert!(nf <= s0(&g, &g).unwrap() * sol.value * 1.02);
            assert!(sol.value <= canonical_cost(&f, &g).unwrap() * (1.0 + 1e-12));
            assert!(sol.lower <= sol.value);
        }
    }

    #[test]
    fn zero_signal() {
        let d = z(4);
        let g = Signal::delta(&d, 0);
        assert_eq!(atomic_norm_bp(&Signal::zeros(&d), &g, 1e-8).unwrap().value, 0.0);
    }
}
