//! Short-time Fourier transform, its adjoint and the S0 norms built on it.
//!
//! Phase-space signals live on `D x D^` with flat index `x * |D^| + omega`.
//! `V_g f(x, omega) = <f, E_omega T_x g>` and the S0 norm is the
//! `L^1(D x D^)` mass of `V_g f` with product weight `w_D w_{D^}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fourier::{fourier, fourier_blocks, inverse_fourier, partial_fourier_2};
use crate::group::PhasePoint;
use crate::signal::{asym_coord, tensor, Exponent, Signal};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn phase_index(domain: &Domain, chi: PhasePoint) -> usize {
    chi.x * domain.len() + chi.omega
}

pub fn phase_point(domain: &Domain, idx: usize) -> PhasePoint {
    PhasePoint::new(idx / domain.len(), idx % domain.len())
}

/// `chi - nu` on the phase space of `domain`.
pub fn phase_sub(domain: &Domain, chi: PhasePoint, nu: PhasePoint) -> PhasePoint {
    PhasePoint::new(domain.sub(chi.x, nu.x), domain.dual().sub(chi.omega, nu.omega))
}

fn require_nonzero(g: &Signal) -> Result<()> {
    if g.is_zero() {
        Err(Error::ZeroWindow)
    } else {
        Ok(())
    }
}

/// Row `x` of a phase-space signal as a signal on `D^`.
fn row(big_f: &Signal, dual: &Domain, x: usize) -> Signal {
    let m = dual.len();
    Signal::raw(dual.clone(), big_f.values()[x * m..(x + 1) * m].to_vec())
}

/// `V_g f`, one Fourier transform of `f . conj(T_x g)` per time shift.
pub fn stft(f: &Signal, g: &Signal) -> Result<Signal> {
    f.same_domain(g)?;
    let d = f.domain();
    let n = d.len();
    let (fv, gv) = (f.values(), g.values());
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        // Row x holds f . conj(T_x g); its transform is V_g f(x, .).
        let t = d.shift_table(x);
        values.extend(t.iter().zip(fv).map(|(&i, a)| a * gv[i].conj()));
    }
    Ok(Signal::raw(d.phase_space(), fourier_blocks(values, d)))
}

/// `V_g f = F_2 tau_a (f (x) conj g)`: the tensor route.
pub fn stft_via_asym(f: &Signal, g: &Signal) -> Result<Signal> {
    f.same_domain(g)?;
    let t = asym_coord(&tensor(f, &g.conjugate()))?;
    partial_fourier_2(&t)
}

/// `V_g f(chi) = <f, pi(chi) g>` by literal inner products (reference path).
pub fn stft_direct(f: &Signal, g: &Signal) -> Result<Signal> {
    f.same_domain(g)?;
    let d = f.domain();
    let ps = d.phase_space();
    let mut values = Vec::with_capacity(ps.len());
    for i in 0..ps.len() {
        values.push(f.inner(&g.tf_shift(phase_point(d, i)))?);
    }
    Ok(Signal::raw(ps, values))
}

/// `V_g^* F = sum_chi F(chi) pi(chi) g w_D w_{D^}`.
pub fn stft_adjoint(big_f: &Signal, g: &Signal) -> Result<Signal> {
    let d = g.domain();
    let ps = d.phase_space();
    if big_f.domain() != &ps {
        return Err(Error::DomainMismatch { expected: ps.to_string(), found: big_f.domain().to_string() });
    }
    let dual = d.dual();
    let n = d.len();
    let mut out = vec![zero(); n];
    for x in 0..n {
        // sum_omega F(x, omega) omega(s) w_{D^} is an inverse Fourier transform.
        let r = row(big_f, &dual, x);
        if r.is_zero() {
            continue;
        }
        let inv = inverse_fourier(&r);
        for (s, o) in out.iter_mut().enumerate() {
            *o += g.get(d.sub(s, x)) * inv.get(s);
        }
    }
    let w = d.weight_f64();
    Ok(Signal::raw(d.clone(), out.into_iter().map(|v| v * w).collect()))
}

/// Unweighted synthesis `sum_chi c(chi) pi(chi) g`.
pub fn synthesize(coeffs: &Signal, g: &Signal) -> Result<Signal> {
    let w = g.domain().phase_space().weight_f64();
    Ok(stft_adjoint(coeffs, g)?.scale_real(1.0 / w))
}

/// `(pi(chi) g, sigma)` under the bilinear pairing, for every phase point.
pub fn bilinear_tf_pairings(sigma: &Signal, g: &Signal) -> Result<Signal> {
    sigma.same_domain(g)?;
    let d = g.domain();
    let dual = d.dual();
    let mut values = Vec::with_capacity(d.len() * d.len());
    for x in 0..d.len() {
        // sum_s omega(s) g(s-x) sigma(s) w = F(sigma . T_x g)(-omega).
        let h = fourier(&sigma.multiply(&g.translate(x))?);
        values.extend((0..dual.len()).map(|w| h.get(dual.neg(w))));
    }
    Ok(Signal::raw(d.phase_space(), values))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    Stft,
    Convolution,
    FourierAlgebra,
}

impl NormMethod {
    pub const ALL: [NormMethod; 3] = [NormMethod::Stft, NormMethod::Convolution, NormMethod::FourierAlgebra];
}

impl fmt::Display for NormMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormMethod::Stft => "stft",
            NormMethod::Convolution => "conv",
            NormMethod::FourierAlgebra => "fourier-algebra",
        })
    }
}

impl FromStr for NormMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stft" => Ok(NormMethod::Stft),
            "conv" | "convolution" => Ok(NormMethod::Convolution),
            "fourier-algebra" => Ok(NormMethod::FourierAlgebra),
            other => Err(Error::Parse(format!("unknown norm method '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub method: NormMethod,
    pub value: f64,
    pub group: String,
    pub window: String,
}

/// Stable FNV-1a fingerprint of a window's amplitudes.
pub fn window_id(g: &Signal) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for v in g.values() {
        for b in v.re.to_bits().to_le_bytes().into_iter().chain(v.im.to_bits().to_le_bytes()) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}

/// `||f||_{S0,g}` by the requested route.
pub fn s0_norm(f: &Signal, g: &Signal, method: NormMethod) -> Result<NormReport> {
    f.same_domain(g)?;
    require_nonzero(g)?;
    let d = f.domain();
    let value = match method {
        NormMethod::Stft => stft(f, g)?.l1_norm(),
        NormMethod::Convolution => {
            // sum_omega ||E_omega f * g^dagger||_1 w_{D^}
            let gd = g.involution();
            let dual = d.dual();
            let mut acc = 0.0;
            for w in 0..dual.len() {
                acc += f.modulate(w).convolve(&gd)?.l1_norm();
            }
            acc * dual.weight_f64()
        }
        NormMethod::FourierAlgebra => {
            // sum_x ||f . T_x conj g||_A w_D
            let gc = g.conjugate();
            let mut acc = 0.0;
            for x in 0..d.len() {
                acc += f.multiply(&gc.translate(x))?.a_norm();
            }
            acc * d.weight_f64()
        }
    };
    Ok(NormReport { method, value, group: d.to_string(), window: window_id(g) })
}

/// `||f||_{S0,g}` via the STFT.
pub fn s0(f: &Signal, g: &Signal) -> Result<f64> {
    Ok(s0_norm(f, g, NormMethod::Stft)?.value)
}

/// The five-way symmetry of the S0 norm and its time-frequency shift invariance.
pub fn norm_symmetries_check(f: &Signal, g: &Signal, nu1: PhasePoint, nu2: PhasePoint, rel: f64) -> Result<Vec<Check>> {
    let base = s0(f, g)?;
    let mut out = Vec::new();
    if !f.is_zero() {
        out.push(Check::equal("swap f and g", base, s0(g, f)?, rel));
    }
    out.push(Check::equal("conjugate both", base, s0(&f.conjugate(), &g.conjugate())?, rel));
    out.push(Check::equal("involution of both", base, s0(&f.involution(), &g.involution())?, rel));
    out.push(Check::equal("Fourier transform of both", base, s0(&fourier(f), &fourier(g))?, rel));
    out.push(Check::equal("time-frequency shifts", base, s0(&f.tf_shift(nu1), &g.tf_shift(nu2))?, rel));
    Ok(out)
}

/// `(c, C)` with `c ||f||_{g2} <= ||f||_{g1} <= C ||f||_{g2}`.
pub fn equivalence_constants(g1: &Signal, g2: &Signal) -> Result<(f64, f64)> {
    require_nonzero(g1)?;
    require_nonzero(g2)?;
    let c = g1.l2_norm().powi(2) / s0(g2, g1)?;
    let big_c = s0(g1, g2)? / g2.l2_norm().powi(2);
    Ok((c, big_c))
}

/// Exponents sampled by the inequality checks.
pub fn sample_exponents() -> [Exponent; 4] {
    [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Finite(4.0), Exponent::Infinity]
}

/// `a^{1/p}`-style power where `1/p` may be zero.
fn pow_recip(a: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        a.powf(e)
    }
}

/// The L^p and Fourier-side inequalities bounding norms of `f` and `g` by `||V_g f||_1`.
pub fn stft_embedding_checks(f: &Signal, g: &Signal, slack: f64) -> Result<Vec<Check>> {
    require_nonzero(g)?;
    let v = stft(f, g)?;
    let v1 = v.l1_norm();
    let fh = fourier(f);
    let gh = fourier(g);
    let mut out = Vec::new();
    for p in sample_exponents() {
        let ip = p.reciprocal();
        let q = p.conjugate();
        let c_time = pow_recip(g.l1_norm(), ip - 1.0) * pow_recip(g.linf_norm(), -ip);
        let c_freq = pow_recip(gh.l1_norm(), ip - 1.0) * pow_recip(gh.linf_norm(), -ip);
        out.push(Check::at_most(format!("L^{p} embedding of f"), f.lp_norm(p), c_time * v1, slack));
        out.push(Check::at_most(format!("L^{p} embedding of f^"), fh.lp_norm(p), c_freq * v1, slack));
        out.push(Check::at_most(format!("||f||_{p} ||g||_{q} <= ||V_g f||_1"), f.lp_norm(p) * g.lp_norm(q), v1, slack));
        out.push(Check::at_most(format!("||f^||_{p} ||g^||_{q} <= ||V_g f||_1"), fh.lp_norm(p) * gh.lp_norm(q), v1, slack));
        if ip <= 0.5 {
            out.push(Check::at_most(format!("||f||_{p} ||g^||_{p} <= ||V_g f||_1"), f.lp_norm(p) * gh.lp_norm(p), v1, slack));
        }
        // ||V_g f||_p on the phase space with its product weight.
        let vp = match p {
            Exponent::Infinity => v.max_abs(),
            Exponent::Finite(e) => (v.values().iter().map(|z| z.norm().powf(e)).sum::<f64>() * v.domain().weight_f64()).powf(1.0 / e),
        };
        out.push(Check::at_most(format!("||V_g f||_{p} <= ||V_g f||_1"), vp, v1, slack));
    }
    out.push(Check::at_most("|<f,g>| <= ||V_g f||_1", f.inner(g)?.norm(), v1, slack));
    out.push(Check::at_most("embedding into A(G)", f.a_norm(), v1 / gh.linf_norm(), slack));
    Ok(out)
}

/// `(<V_{g1} f1, V_{g2} f2>, <g2, g1><f1, f2>)`.
pub fn moyal_orthogonality(f1: &Signal, f2: &Signal, g1: &Signal, g2: &Signal) -> Result<(Complex64, Complex64)> {
    let v1 = stft(f1, g1)?;
    let v2 = stft(f2, g2)?;
    let lhs = v1.inner(&v2)?;
    let rhs = g2.inner(g1)? * f1.inner(f2)?;
    Ok((lhs, rhs))
}

/// `|<g1,g2>| |V_{f2} f1(nu)|` against `sum_chi |V_{g1} f1(chi) V_{g2} f2(chi - nu)| w`.
pub fn stft_correlation_bound(f1: &Signal, f2: &Signal, g1: &Signal, g2: &Signal, nu: PhasePoint) -> Result<(f64, f64)> {
    let d = f1.domain();
    let lhs = g1.inner(g2)?.norm() * stft(f1, f2)?.get(phase_index(d, nu)).norm();
    let a = stft(f1, g1)?;
    let b = stft(f2, g2)?;
    let mut acc = 0.0;
    for i in 0..a.len() {
        let j = phase_index(d, phase_sub(d, phase_point(d, i), nu));
        acc += (a.get(i) * b.get(j)).norm();
    }
    let w = d.weight_f64() * d.dual().weight_f64();
    Ok((lhs, acc * w))
}

/// `(|<f,g>| ||V_g f||_1, ||V_f f||_1 ||V_g g||_1)`; only informative when `<f,g> != 0`.
pub fn cross_window_bound(f: &Signal, g: &Signal) -> Result<(f64, f64)> {
    let lhs = f.inner(g)?.norm() * s0(f, g)?;
    let rhs = if f.is_zero() { 0.0 } else { s0(f, f)? * s0(g, g)? };
    Ok((lhs, rhs))
}

/// Mixed `(p, q)` norm of `(x, omega) -> |(E_omega T_x g, sigma)|`, inner sum over `x`.
pub fn modulation_norm(sigma: &Signal, g: &Signal, p: Exponent, q: Exponent) -> Result<f64> {
    require_nonzero(g)?;
    let m = bilinear_tf_pairings(sigma, g)?;
    let d = g.domain();
    let n = d.len();
    let dual = d.dual();
    let inner: Vec<f64> = (0..dual.len())
        .map(|w| {
            let col = (0..n).map(|x| m.get(x * dual.len() + w).norm());
            match p {
                Exponent::Infinity => col.fold(0.0, f64::max),
                Exponent::Finite(e) => (col.map(|a| a.powf(e)).sum::<f64>() * d.weight_f64()).powf(1.0 / e),
            }
        })
        .collect();
    Ok(match q {
        Exponent::Infinity => inner.into_iter().fold(0.0, f64::max),
        Exponent::Finite(e) => (inner.into_iter().map(|a| a.powf(e)).sum::<f64>() * dual.weight_f64()).powf(1.0 / e),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UncertaintySet {
    pub points: Vec<usize>,
    pub measure: f64,
    pub captured: f64,
    pub total: f64,
}

/// Smallest greedy set capturing `(1 - eps)` of `||V_g f||_1`; ties go to the lower index.
pub fn uncertainty_minimal_measure(f: &Signal, g: &Signal, eps: f64) -> Result<UncertaintySet> {
    require_nonzero(g)?;
    if f.is_zero() {
        return Err(Error::InvalidArgument("uncertainty set needs a non-zero signal".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1), got {eps}")));
    }
    let v = stft(f, g)?;
    let w = v.domain().weight_f64();
    let mags: Vec<f64> = v.values().iter().map(|z| z.norm()).collect();
    let total: f64 = mags.iter().sum::<f64>() * w;
    let mut order: Vec<usize> = (0..mags.len()).collect();
    order.sort_by(|&a, &b| mags[b].total_cmp(&mags[a]).then(a.cmp(&b)));
    let target = (1.0 - eps) * total;
    let mut captured = 0.0;
    let mut points = Vec::new();
    for i in order {
        if captured >= target * (1.0 - 1e-14) {
            break;
        }
        captured += mags[i] * w;
        points.push(i);
    }
    let measure = points.len() as f64 * w;
    Ok(UncertaintySet { points, measure, captured, total })
}

/// `c(chi) = w_{D x D^} ||g||_2^{-2} V_g f(chi)`; these synthesize `f` through `synthesize`.
pub fn canonical_coefficients(f: &Signal, g: &Signal) -> Result<Signal> {
    require_nonzero(g)?;
    let w = f.domain().phase_space().weight_f64();
    Ok(stft(f, g)?.scale_real(w / g.l2_norm().powi(2)))
}

/// Unweighted coefficient l1 mass.
pub fn coefficient_l1(c: &Signal) -> f64 {
    c.values().iter().map(|z| z.norm()).sum()
}

/// `(||f||_p, ||g||_p ||g||_2^{-2} ||f||_{S0,g})`: the S0 minimality bound in `L^p`.
pub fn minimality_instance_check(f: &Signal, g: &Signal, p: Exponent) -> Result<(f64, f64)> {
    require_nonzero(g)?;
    Ok((f.lp_norm(p), g.lp_norm(p) / g.l2_norm().powi(2) * s0(f, g)?))
}

/// Module and algebra bounds for convolution and pointwise products.
pub fn banach_algebra_check(f1: &Signal, f2: &Signal, g: &Signal, slack: f64) -> Result<Vec<Check>> {
    let n1 = s0(f1, g)?;
    let n2 = s0(f2, g)?;
    let conv = f1.convolve(f2)?;
    let prod = f1.multiply(f2)?;
    let nc = s0(&conv, g)?;
    let np = s0(&prod, g)?;
    Ok(vec![
        Check::at_most("convolution algebra", nc, n1 * n2 / g.linf_norm(), slack),
        Check::at_most("pointwise algebra", np, n1 * n2 / fourier(g).linf_norm(), slack),
        Check::at_most("L^1 convolution module", nc, f1.l1_norm() * n2, slack),
        Check::at_most("A(G) multiplication module", np, f1.a_norm() * n2, slack),
    ])
}

/// `(||f1 (x) f2||_{g1 (x) g2}, ||f1||_{g1} ||f2||_{g2})`.
pub fn tensor_norm_identity(f1: &Signal, f2: &Signal, g1: &Signal, g2: &Signal) -> Result<(f64, f64)> {
    let lhs = s0(&tensor(f1, f2), &tensor(g1, g2))?;
    Ok((lhs, s0(f1, g1)? * s0(f2, g2)?))
}

/// `(||V_h f||_{S0(D x D^), V_{g2} g1}, ||f||_{g1} ||h||_{g2})`.
pub fn stft_norm_identity(f: &Signal, h: &Signal, g1: &Signal, g2: &Signal) -> Result<(f64, f64)> {
    let lhs = s0(&stft(f, h)?, &stft(g1, g2)?)?;
    Ok((lhs, s0(f, g1)? * s0(h, g2)?))
}
