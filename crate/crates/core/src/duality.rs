//! Functionals on finite groups through the bilinear pairing
//! `(f, sigma) = sum_x f(x) s(x) w`, where `s` is the inducing density.
//!
//! In finite dimensions every functional has a density, so distributions are
//! densities with a provenance tag. The S0' norm itself is a supremum; it is
//! bracketed by a convex solver and only used as an oracle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bp::{min_norm_synthesis, Objective, SolverOptions};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fourier::fourier;
use crate::operators::Operator;
use crate::signal::{asym_coord, tensor, Signal};
use crate::subgroup::Subgroup;
use crate::tf::{bilinear_tf_pairings, s0, stft, stft_adjoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalKind {
    Induced,
    Delta,
    Character,
    HaarOnSubgroup,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    density: Signal,
    kind: FunctionalKind,
}

impl Functional {
    pub fn from_density(density: Signal, kind: FunctionalKind) -> Functional {
        Functional { density, kind }
    }

    /// `iota(h)`: `(f, iota(h)) = sum f h w`.
    pub fn induced(h: &Signal) -> Functional {
        Functional { density: h.clone(), kind: FunctionalKind::Induced }
    }

    /// `(f, delta_x) = f(x)`: density `1/w` at `x`.
    pub fn delta(d: &Domain, x: usize) -> Functional {
        let density = Signal::delta(d, x).scale_real(1.0 / d.weight_f64());
        Functional { density, kind: FunctionalKind::Delta }
    }

    /// `(f, e_omega) = sum f(x) omega(x) w = F f(-omega)`.
    pub fn character(d: &Domain, omega: usize) -> Functional {
        Functional { density: Signal::from_fn(d, |x| d.pairing(omega, x)), kind: FunctionalKind::Character }
    }

    /// `(f, mu_H) = sum_{h in H} f(h) w_H`.
    pub fn haar_on_subgroup(h: &Subgroup) -> Functional {
        let d = Domain::Group(h.parent().clone());
        let density = Signal::indicator(&d, h.elements()).scale_real(h.weight_f64() / d.weight_f64());
        Functional { density, kind: FunctionalKind::HaarOnSubgroup }
    }

    pub fn zero(d: &Domain) -> Functional {
        Functional::induced(&Signal::zeros(d))
    }

    pub fn density(&self) -> &Signal {
        &self.density
    }

    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        self.density.domain()
    }

    pub fn pair(&self, f: &Signal) -> Result<Complex64> {
        f.same_domain(&self.density)?;
        let s: Complex64 = f.values().iter().zip(self.density.values()).map(|(a, b)| a * b).sum();
        Ok(s * self.domain().weight_f64())
    }

    /// `(f, conj sigma) = conj((conj f, sigma))`.
    pub fn conjugate(&self) -> Functional {
        Functional { density: self.density.conjugate(), kind: FunctionalKind::Induced }
    }

    /// `(f, g . sigma) = (f g, sigma)`.
    pub fn multiply(&self, g: &Signal) -> Result<Functional> {
        Ok(Functional { density: self.density.multiply(g)?, kind: FunctionalKind::Induced })
    }

    /// `(f, g * sigma) = (f * g^r, sigma)`.
    pub fn convolve(&self, g: &Signal) -> Result<Functional> {
        Ok(Functional { density: g.convolve(&self.density)?, kind: FunctionalKind::Induced })
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        Ok(Functional { density: self.density.add(&other.density)?, kind: FunctionalKind::Induced })
    }

    pub fn scale(&self, c: Complex64) -> Functional {
        Functional { density: self.density.scale(c), kind: FunctionalKind::Induced }
    }

    /// Largest difference of the pairings with every delta, i.e. of the densities
    /// scaled by the domain weight.
    pub fn max_pairing_diff(&self, other: &Functional) -> Result<f64> {
        Ok(self.density.max_abs_diff(&other.density)? * self.domain().weight_f64())
    }
}

/// `sup_chi |(pi(chi) g, sigma)|`.
pub fn minfty_norm(sigma: &Functional, g: &Signal) -> Result<f64> {
    Ok(bilinear_tf_pairings(sigma.density(), g)?.max_abs())
}

/// `V~_g sigma(chi) = (conj(pi(chi) g), sigma)`, which is `V_g s` for the density `s`.
pub fn stft_functional(sigma: &Functional, g: &Signal) -> Result<Signal> {
    stft(sigma.density(), g)
}

/// `V~_h^* F`: the functional with density `V_h^* F`.
pub fn stft_functional_adjoint(big_f: &Signal, h: &Signal) -> Result<Functional> {
    Ok(Functional::induced(&stft_adjoint(big_f, h)?))
}

/// `||V~_g sigma||_1` and the recovered `h = ||g||_2^{-2} V_g^* V~_g sigma` with `iota(h) = sigma`.
pub fn s0_membership(sigma: &Functional, g: &Signal) -> Result<(f64, Signal)> {
    if g.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let v = stft_functional(sigma, g)?;
    let h = stft_adjoint(&v, g)?.scale_real(1.0 / g.l2_norm().powi(2));
    Ok((v.l1_norm(), h))
}

/// `(h, F~ sigma) = (F h, sigma)` for `h` on `D^`; the density is `F s`.
pub fn fourier_functional(sigma: &Functional) -> Functional {
    let kind = match sigma.kind {
        FunctionalKind::Delta => FunctionalKind::Character,
        FunctionalKind::Character => FunctionalKind::Delta,
        k => k,
    };
    Functional { density: fourier(sigma.density()), kind }
}

/// `T~ sigma` defined by `(f2, T~ sigma) = (conj(T^* conj f2), sigma)`; extends `iota o T`.
pub fn banach_adjoint_extend(t: &Operator, sigma: &Functional) -> Result<Functional> {
    if t.is_antilinear() {
        return Err(Error::InvalidArgument("the extension formula needs a linear operator".into()));
    }
    if sigma.domain() != t.input() {
        return Err(Error::DomainMismatch { expected: t.input().to_string(), found: sigma.domain().to_string() });
    }
    let ts = t.adjoint();
    let out = t.output();
    let w2 = out.weight_f64();
    let mut values = Vec::with_capacity(out.len());
    for x2 in 0..out.len() {
        let probe = ts.apply(&Signal::delta(out, x2))?.conjugate();
        values.push(sigma.pair(&probe)? / w2);
    }
    Ok(Functional::induced(&Signal::new(out.clone(), values)?))
}

/// `sigma1 (x) sigma2` on the product domain.
pub fn tensor_functional(s1: &Functional, s2: &Functional) -> Functional {
    // delta (x) delta, e (x) e and mu_H1 (x) mu_H2 keep their kind on the product.
    let kind = if s1.kind == s2.kind { s1.kind } else { FunctionalKind::Induced };
    Functional { density: tensor(&s1.density, &s2.density), kind }
}

/// Certified bracket of `||sigma||_{S0', g}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualNormEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Midpoint of the bracket.
    pub value: f64,
    pub iterations: usize,
}

/// Largest group order the oracle accepts.
pub const DUAL_ORACLE_MAX_ORDER: usize = 12;

/// `||sigma||_{S0',g} = min { ||Psi||_inf : sum_chi Psi(chi) pi(chi) g = conj(s) } / (w_D w_D^)`,
/// the dual of `sup { |(f, sigma)| : ||V_g f||_1 <= 1 }`. Stops once the
/// certified relative gap is at most `tol`.
pub fn dual_norm_oracle(sigma: &Functional, g: &Signal, tol: f64) -> Result<DualNormEstimate> {
    let d = g.domain();
    if d.len() > DUAL_ORACLE_MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "dual-norm oracle is limited to |G| <= {DUAL_ORACLE_MAX_ORDER} (got {})",
            d.len()
        )));
    }
    let b = sigma.density().conjugate();
    let sol = min_norm_synthesis(&b, g, Objective::Linf, SolverOptions { tol, ..SolverOptions::default() })?;
    let w = d.phase_space().weight_f64();
    let (lower, upper) = (sol.lower / w, sol.value / w);
    Ok(DualNormEstimate { lower, upper, value: 0.5 * (lower + upper), iterations: sol.iterations })
}

/// Densities and bounds for the smoothing of a functional by convolution and multiplication.
#[derive(Clone, Debug)]
pub struct SmoothingReport {
    /// Density of `(sigma * f) . h`.
    pub conv_then_mult: Signal,
    /// Density of `(sigma . h) * f`.
    pub mult_then_conv: Signal,
    /// `||V~_g((sigma * f) . h)||_1`.
    pub conv_then_mult_norm: f64,
    /// `||sigma||_{S0',g} ||tau_a(h (x) f)||_{S0(G x G), g (x) g}`.
    pub conv_then_mult_bound: f64,
    /// `||V~_g((sigma . h) * f)||_1`.
    pub mult_then_conv_norm: f64,
    /// `||sigma||_{S0',g} ||tau_a(h (x) f^r)||_{S0(G x G), g (x) g}`.
    pub mult_then_conv_bound: f64,
    pub dual_norm: DualNormEstimate,
}

/// `(sigma * f) . h` and `(sigma . h) * f` as densities.
pub fn smoothing_densities(sigma: &Functional, f: &Signal, h: &Signal) -> Result<(Signal, Signal)> {
    let s = sigma.density();
    Ok((s.convolve(f)?.multiply(h)?, s.multiply(h)?.convolve(f)?))
}

/// Both smoothed densities with their S0 bounds; the dual norm is taken as the
/// oracle's certified upper bound so the bound stays rigorous.
pub fn smoothing_check(sigma: &Functional, f: &Signal, h: &Signal, g: &Signal, tol: f64) -> Result<SmoothingReport> {
    let (a, b) = smoothing_densities(sigma, f, h)?;
    let dual_norm = dual_norm_oracle(sigma, g, tol)?;
    let gg = tensor(g, g);
    let t1 = s0(&asym_coord(&tensor(h, f))?, &gg)?;
    let t2 = s0(&asym_coord(&tensor(h, &f.reflect()))?, &gg)?;
    Ok(SmoothingReport {
        conv_then_mult_norm: s0(&a, g)?,
        mult_then_conv_norm: s0(&b, g)?,
        conv_then_mult_bound: dual_norm.upper * t1,
        mult_then_conv_bound: dual_norm.upper * t2,
        conv_then_mult: a,
        mult_then_conv: b,
        dual_norm,
    })
}
