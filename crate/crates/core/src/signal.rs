//! Complex functions on a domain and the elementary operators acting on them.

use std::fmt;

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::group::PhasePoint;

/// Exponent `p` of an `L^p` norm. `p = infinity` is its own variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidArgument(format!("exponent must lie in [1, inf], got {p}")))
        }
    }

    /// Hoelder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `1/p`, zero for `p = infinity`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Infinity => 0.0,
            Exponent::Finite(p) => 1.0 / p,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// A complex-valued function on a domain, indexed in the domain's order.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    domain: Domain,
    values: Vec<Complex64>,
}

fn mismatch(expected: &Domain, found: &Domain) -> Error {
    Error::DomainMismatch { expected: expected.to_string(), found: found.to_string() }
}

impl Signal {
    pub fn new(domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::LengthMismatch { expected: domain.len(), found: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Signal { domain, values })
    }

    /// Internal constructor for values produced by trusted arithmetic.
    pub(crate) fn raw(domain: Domain, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), domain.len());
        Signal { domain, values }
    }

    pub fn zeros(domain: &Domain) -> Self {
        Signal::raw(domain.clone(), vec![Complex64::new(0.0, 0.0); domain.len()])
    }

    /// Unit impulse: value 1 at `idx`, 0 elsewhere.
    pub fn delta(domain: &Domain, idx: usize) -> Self {
        let mut s = Signal::zeros(domain);
        s.values[idx] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn constant(domain: &Domain, c: Complex64) -> Self {
        Signal::raw(domain.clone(), vec![c; domain.len()])
    }

    pub fn from_fn(domain: &Domain, f: impl Fn(usize) -> Complex64) -> Self {
        Signal::raw(domain.clone(), (0..domain.len()).map(f).collect())
    }

    pub fn from_real(domain: &Domain, values: &[f64]) -> Result<Self> {
        Signal::new(domain.clone(), values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Indicator function of a set of indices.
    pub fn indicator(domain: &Domain, set: &[usize]) -> Self {
        let mut s = Signal::zeros(domain);
        for &i in set {
            s.values[i] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn same_domain(&self, other: &Signal) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(mismatch(&self.domain, &other.domain))
        }
    }

    /// Re-labels the values onto an equal-length domain (used for index-preserving
    /// identifications such as `G x G^` vs. the flat phase group).
    pub fn reinterpret(&self, domain: &Domain) -> Result<Signal> {
        if domain.len() != self.len() {
            return Err(Error::LengthMismatch { expected: domain.len(), found: self.len() });
        }
        Ok(Signal::raw(domain.clone(), self.values.clone()))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Signal {
        Signal::raw(self.domain.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        self.map(|v| v * c)
    }

    pub fn scale_real(&self, c: f64) -> Signal {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.same_domain(other)?;
        Ok(Signal::raw(self.domain.clone(), self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.same_domain(other)?;
        Ok(Signal::raw(self.domain.clone(), self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect()))
    }

    /// `self += c * other`, in place.
    pub fn axpy(&mut self, c: Complex64, other: &Signal) -> Result<()> {
        self.same_domain(other)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
        Ok(())
    }

    /// Largest pointwise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Signal) -> Result<f64> {
        self.same_domain(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `T_x f(s) = f(s - x)`.
    pub fn translate(&self, x: usize) -> Signal {
        let t = self.domain.shift_table(x);
        Signal::raw(self.domain.clone(), t.iter().map(|&i| self.values[i]).collect())
    }

    /// `E_omega f(s) = omega(s) f(s)`.
    pub fn modulate(&self, omega: usize) -> Signal {
        let row = self.domain.character_row(omega);
        Signal::raw(self.domain.clone(), row.iter().zip(&self.values).map(|(c, v)| c * v).collect())
    }

    /// `pi(x, omega) = E_omega T_x`.
    pub fn tf_shift(&self, chi: PhasePoint) -> Signal {
        let row = self.domain.character_row(chi.omega);
        let t = self.domain.shift_table(chi.x);
        Signal::raw(self.domain.clone(), row.iter().zip(&t).map(|(c, &i)| c * self.values[i]).collect())
    }

    /// `f^r(x) = f(-x)`.
    pub fn reflect(&self) -> Signal {
        let d = &self.domain;
        Signal::from_fn(d, |s| self.values[d.neg(s)])
    }

    pub fn conjugate(&self) -> Signal {
        self.map(|v| v.conj())
    }

    /// `f^dagger(x) = conj(f(-x))`.
    pub fn involution(&self) -> Signal {
        let d = &self.domain;
        Signal::from_fn(d, |s| self.values[d.neg(s)].conj())
    }

    /// `(f * g)(x) = sum_s f(s) g(x - s) w`, by direct summation.
    pub fn convolve(&self, g: &Signal) -> Result<Signal> {
        self.same_domain(g)?;
        let d = &self.domain;
        let w = d.weight_f64();
        let n = d.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for s in 0..n {
            let fs = self.values[s];
            if fs == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (t, gt) in g.values.iter().enumerate() {
                out[d.add(s, t)] += fs * gt;
            }
        }
        Ok(Signal::raw(d.clone(), out.into_iter().map(|v| v * w).collect()))
    }

    pub fn multiply(&self, g: &Signal) -> Result<Signal> {
        self.same_domain(g)?;
        Ok(Signal::raw(self.domain.clone(), self.values.iter().zip(&g.values).map(|(a, b)| a * b).collect()))
    }

    /// `<f, g> = sum f conj(g) w`.
    pub fn inner(&self, g: &Signal) -> Result<Complex64> {
        self.same_domain(g)?;
        let s: Complex64 = self.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.domain.weight_f64())
    }

    pub fn lp_norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::Infinity => self.max_abs(),
            Exponent::Finite(p) if p == 1.0 => self.l1_norm(),
            Exponent::Finite(p) if p == 2.0 => self.l2_norm(),
            Exponent::Finite(p) => {
                let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
                (s * self.domain.weight_f64()).powf(1.0 / p)
            }
        }
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.domain.weight_f64()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.domain.weight_f64()).sqrt()
    }

    pub fn linf_norm(&self) -> f64 {
        self.max_abs()
    }

    /// Fourier-algebra norm `||f||_A = ||f^||_{L^1(D^)}`.
    pub fn a_norm(&self) -> f64 {
        crate::fourier::fourier(self).l1_norm()
    }
}

/// `(f (x) g)(x1, x2) = f(x1) g(x2)` on the product domain.
pub fn tensor(f: &Signal, g: &Signal) -> Signal {
    let d = Domain::product(f.domain(), g.domain());
    let mut values = Vec::with_capacity(f.len() * g.len());
    for a in f.values() {
        for b in g.values() {
            values.push(a * b);
        }
    }
    Signal::raw(d, values)
}

/// `tau_a F(x, t) = F(t, t - x)` on `D x D`.
pub fn asym_coord(f: &Signal) -> Result<Signal> {
    let (l, r) = f
        .domain()
        .split()
        .ok_or_else(|| Error::InvalidArgument("asymmetric coordinate transform needs a product domain".into()))?;
    if l != r {
        return Err(mismatch(l, r));
    }
    let n = l.len();
    Ok(Signal::from_fn(f.domain(), |i| {
        let (x, t) = (i / n, i % n);
        f.get(t * n + l.sub(t, x))
    }))
}

/// Inverse transform `F(x, t) -> F(x - t, x)`.
pub fn asym_coord_inverse(f: &Signal) -> Result<Signal> {
    let (l, r) = f
        .domain()
        .split()
        .ok_or_else(|| Error::InvalidArgument("asymmetric coordinate transform needs a product domain".into()))?;
    if l != r {
        return Err(mismatch(l, r));
    }
    let n = l.len();
    Ok(Signal::from_fn(f.domain(), |i| {
        let (x, t) = (i / n, i % n);
        f.get(l.sub(x, t) * n + x)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::rng::{random_signal, seeded};
    use approx::assert_relative_eq;

    fn z(n: usize) -> Domain {
        Domain::Group(GroupSpec::counting(&[n]).unwrap())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn translate_example() {
        let f = Signal::from_real(&z(4), &[1.0, 2.0, 0.0, -1.0]).unwrap();
        let t = f.translate(1);
        assert_eq!(t.values(), Signal::from_real(&z(4), &[-1.0, 1.0, 2.0, 0.0]).unwrap().values());
        assert_eq!(f.translate(0), f);
    }

    #[test]
    fn modulate_example() {
        let f = Signal::constant(&z(4), c(1.0, 0.0));
        let m = f.modulate(1);
        assert_eq!(m.values(), &[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
    }

    #[test]
    fn tf_shift_of_delta() {
        let d = Signal::delta(&z(4), 0);
        let s = d.tf_shift(PhasePoint::new(1, 1));
        assert_eq!(s.values(), &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn reflection_examples() {
        let f = Signal::new(z(3), vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(f.reflect().values(), &[c(1.0, 0.0), c(3.0, 0.0), c(0.0, 2.0)]);
        assert_eq!(f.involution(), f.reflect().conjugate());
        let d0 = Signal::delta(&z(5), 0);
        assert_eq!(d0.reflect(), d0);
    }

    #[test]
    fn convolution_examples() {
        let f = Signal::from_real(&z(2), &[1.0, 1.0]).unwrap();
        assert_eq!(f.convolve(&f).unwrap().values(), &[c(2.0, 0.0), c(2.0, 0.0)]);
        let mut rng = seeded(3);
        let g = random_signal(&z(6), &mut rng);
        let d0 = Signal::delta(&z(6), 0);
        assert!(d0.convolve(&g).unwrap().max_abs_diff(&g).unwrap() < 1e-15);
    }

    #[test]
    fn norm_examples() {
        let f = Signal::from_real(&z(4), &[1.0, 2.0, 0.0, -1.0]).unwrap();
        assert_relative_eq!(f.l1_norm(), 4.0);
        assert_relative_eq!(f.lp_norm(Exponent::Infinity), 2.0);
        let d0 = Signal::delta(&z(4), 0);
        assert_relative_eq!(d0.inner(&d0).unwrap().re, 1.0);
        for n in [3, 5, 8] {
            assert_relative_eq!(Signal::delta(&z(n), 0).a_norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn tensor_example() {
        let f = Signal::from_real(&z(2), &[1.0, 2.0]).unwrap();
        let g = Signal::from_real(&z(2), &[3.0, 4.0]).unwrap();
        let t = tensor(&f, &g);
        assert_eq!(t.values(), &[c(3.0, 0.0), c(4.0, 0.0), c(6.0, 0.0), c(8.0, 0.0)]);
        assert_relative_eq!(t.l1_norm(), f.l1_norm() * g.l1_norm());
    }

    #[test]
    fn asym_coord_example() {
        let d = Domain::product(&z(2), &z(2));
        let f = Signal::delta(&d, 2); // (1, 0)
        let t = asym_coord(&f).unwrap();
        assert_eq!(t, Signal::delta(&d, 3)); // (1, 1)
        assert_eq!(asym_coord_inverse(&t).unwrap(), f);
    }

    #[test]
    fn exponent_conjugates() {
        assert_eq!(Exponent::Finite(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::Finite(2.0).conjugate(), Exponent::Finite(2.0));
        assert!(Exponent::finite(0.5).is_err());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Signal::new(z(2), vec![c(1.0, 0.0)]).is_err());
        assert!(Signal::new(z(2), vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).is_err());
    }
}
