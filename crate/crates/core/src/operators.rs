//! Dense operators between signal spaces and the catalog of operators that
//! intertwine time-frequency shifts up to a phase-space automorphism.
//!
//! An operator stores its action on the delta basis: `T f = M f` for linear and
//! `T f = M conj(f)` for antilinear operators. Adjoints are taken with respect
//! to the weighted inner products of the two domains.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::check::Check;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fourier::{fourier, partial_fourier_2, symplectic_fourier};
use crate::group::{GroupSpec, PhasePoint, Weight};
use crate::signal::Signal;
use crate::tf::{phase_index, phase_point, s0};

type CMatrix = DMatrix<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

#[derive(Clone, Debug)]
pub struct Operator {
    name: String,
    input: Domain,
    output: Domain,
    matrix: CMatrix,
    antilinear: bool,
}

impl Operator {
    /// Tabulates `op` on the delta basis of `input`.
    pub fn from_fn(name: impl Into<String>, input: &Domain, antilinear: bool, op: impl Fn(&Signal) -> Signal) -> Operator {
        let n = input.len();
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            cols.push(op(&Signal::delta(input, k)));
        }
        let output = cols.first().map(|c| c.domain().clone()).unwrap_or_else(|| input.clone());
        let m = output.len();
        let matrix = CMatrix::from_fn(m, n, |r, c| cols[c].get(r));
        Operator { name: name.into(), input: input.clone(), output, matrix, antilinear }
    }

    pub fn from_matrix(name: impl Into<String>, input: &Domain, output: &Domain, matrix: CMatrix, antilinear: bool) -> Result<Operator> {
        if matrix.nrows() != output.len() || matrix.ncols() != input.len() {
            return Err(Error::InvalidArgument(format!(
                "matrix is {}x{} but the domains need {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                output.len(),
                input.len()
            )));
        }
        Ok(Operator { name: name.into(), input: input.clone(), output: output.clone(), matrix, antilinear })
    }

    pub fn identity(d: &Domain) -> Operator {
        Operator::from_fn("identity", d, false, |f| f.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input(&self) -> &Domain {
        &self.input
    }

    pub fn output(&self) -> &Domain {
        &self.output
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Operator {
        self.name = name.into();
        self
    }

    pub fn apply(&self, f: &Signal) -> Result<Signal> {
        if f.domain() != &self.input {
            return Err(Error::DomainMismatch { expected: self.input.to_string(), found: f.domain().to_string() });
        }
        let v = if self.antilinear {
            f.values().iter().map(|z| z.conj()).collect()
        } else {
            f.values().to_vec()
        };
        let out = &self.matrix * nalgebra::DVector::from_vec(v);
        Ok(Signal::raw(self.output.clone(), out.iter().copied().collect()))
    }

    /// Hilbert-space adjoint; antilinear operators get the antilinear adjoint
    /// `<T f, h> = conj(<f, T* h>)`.
    pub fn adjoint(&self) -> Operator {
        let s = self.output.weight_f64() / self.input.weight_f64();
        let m = if self.antilinear { self.matrix.transpose() } else { self.matrix.adjoint() };
        Operator {
            name: format!("adjoint of {}", self.name),
            input: self.output.clone(),
            output: self.input.clone(),
            matrix: m.map(|z| z * s),
            antilinear: self.antilinear,
        }
    }

    pub fn inverse(&self) -> Result<Operator> {
        let n = self.matrix.nrows();
        if n != self.matrix.ncols() {
            return Err(Error::NotInvertible(format!("{} is not square", self.name)));
        }
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(self.name.clone()))?;
        let resid = (&self.matrix * &inv - CMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(resid <= 1e-8) {
            return Err(Error::NotInvertible(format!("{} (inversion residual {resid:e})", self.name)));
        }
        let matrix = if self.antilinear { inv.map(|z| z.conj()) } else { inv };
        Ok(Operator {
            name: format!("inverse of {}", self.name),
            input: self.output.clone(),
            output: self.input.clone(),
            matrix,
            antilinear: self.antilinear,
        })
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Operator) -> Result<Operator> {
        if first.output != self.input {
            return Err(Error::DomainMismatch { expected: self.input.to_string(), found: first.output.to_string() });
        }
        let inner = if self.antilinear { first.matrix.map(|z| z.conj()) } else { first.matrix.clone() };
        Ok(Operator {
            name: format!("{} after {}", self.name, first.name),
            input: first.input.clone(),
            output: self.output.clone(),
            matrix: &self.matrix * inner,
            antilinear: self.antilinear ^ first.antilinear,
        })
    }

    /// Largest entry of `T* T - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.input.len();
        let p = self.adjoint().compose(self).expect("adjoint composes");
        let mut worst: f64 = if p.antilinear { f64::INFINITY } else { 0.0 };
        for r in 0..n {
            for c in 0..n {
                let e = if r == c { Complex64::new(1.0, 0.0) } else { zero() };
                worst = worst.max((p.matrix[(r, c)] - e).norm());
            }
        }
        worst
    }
}

/// A bijection `alpha` of phase spaces `D2 x D2^ -> D1 x D1^` stored as an index table.
#[derive(Clone, Debug)]
pub struct PhaseAutomorphism {
    pub description: String,
    /// Domain `D2`; `alpha` is indexed by its phase points.
    pub source: Domain,
    /// Domain `D1`; `alpha` takes values among its phase points.
    pub target: Domain,
    table: Vec<usize>,
    /// `|alpha|`, the factor by which `alpha` scales Haar measure.
    pub modulus: Weight,
}

impl PhaseAutomorphism {
    pub fn from_fn(
        description: impl Into<String>,
        source: &Domain,
        target: &Domain,
        map: impl Fn(PhasePoint) -> PhasePoint,
    ) -> Result<PhaseAutomorphism> {
        let n = source.len() * source.len();
        if n != target.len() * target.len() {
            return Err(Error::InvalidArgument("phase spaces of different sizes".into()));
        }
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let chi = map(phase_point(source, i));
            if chi.x >= target.len() || chi.omega >= target.len() {
                return Err(Error::InvalidArgument(format!("phase point {i} maps outside the target")));
            }
            let j = phase_index(target, chi);
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidArgument(format!("phase map is not injective at {i}")));
            }
            table.push(j);
        }
        // Measure-preserving iff both phase spaces carry the same total weight per point.
        let ws = source.weight() * source.dual().weight();
        let wt = target.weight() * target.dual().weight();
        Ok(PhaseAutomorphism { description: description.into(), source: source.clone(), target: target.clone(), table, modulus: wt / ws })
    }

    pub fn identity(d: &Domain) -> PhaseAutomorphism {
        PhaseAutomorphism::from_fn("identity", d, d, |chi| chi).expect("identity is bijective")
    }

    pub fn apply(&self, chi: PhasePoint) -> PhasePoint {
        phase_point(&self.target, self.table[phase_index(&self.source, chi)])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Relative Frobenius residual and modulus tolerance for the commutation test.
const COMMUTATION_TOL: f64 = 1e-9;

/// The phases `c(chi)` with `pi(chi) T = c(chi) T pi(alpha(chi))` for every phase
/// point `chi` of the output domain, or the first point where no unimodular
/// scalar works.
///
/// Both sides are monomial in the delta basis: `pi(x, omega)` shifts rows of
/// `M` and `T pi(y, eta)` shifts columns with a character phase, so each side
/// is formed without a matrix product.
pub fn commutation_extract(t: &Operator, alpha: &PhaseAutomorphism) -> Result<Vec<Complex64>> {
    if alpha.source != *t.output() || alpha.target != *t.input() {
        return Err(Error::InvalidArgument("automorphism does not match the operator's domains".into()));
    }
    t.inverse()?;
    let d2 = t.output();
    let d1 = t.input();
    let m = t.matrix();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut out = Vec::with_capacity(alpha.len());
    for i in 0..alpha.len() {
        let chi = phase_point(d2, i);
        let nu = alpha.apply(chi);
        let mut ab = zero();
        let mut bb = 0.0;
        let mut aa = 0.0;
        let mut a_buf = Vec::with_capacity(rows * cols);
        let mut b_buf = Vec::with_capacity(rows * cols);
        for k in 0..cols {
            // Column k of T pi(nu): pi(nu) delta_k = eta(k + y) delta_{k + y}.
            let shifted = d1.add(k, nu.x);
            let mut ph = d1.pairing(nu.omega, shifted);
            if t.is_antilinear() {
                ph = ph.conj();
            }
            for s in 0..rows {
                let a = d2.pairing(chi.omega, s) * m[(d2.sub(s, chi.x), k)];
                let b = ph * m[(s, shifted)];
                ab += b.conj() * a;
                bb += b.norm_sqr();
                aa += a.norm_sqr();
                a_buf.push(a);
                b_buf.push(b);
            }
        }
        if bb == 0.0 {
            return Err(Error::NotInvertible(t.name().to_string()));
        }
        let c = ab / bb;
        let resid: f64 = a_buf.iter().zip(&b_buf).map(|(a, b)| (a - c * b).norm_sqr()).sum::<f64>().sqrt();
        if resid > COMMUTATION_TOL * aa.sqrt() {
            return Err(Error::CommutationViolated { index: i, reason: format!("not a scalar multiple (residual {resid:e})") });
        }
        if (c.norm() - 1.0).abs() > COMMUTATION_TOL {
            return Err(Error::CommutationViolated { index: i, reason: format!("|c| = {} is not one", c.norm()) });
        }
        out.push(c);
    }
    Ok(out)
}

/// An operator with its phase-space automorphism.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub operator: Operator,
    pub alpha: PhaseAutomorphism,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.operator.name()
    }
}

pub fn tf_shift_operator(d: &Domain, nu: PhasePoint) -> CatalogEntry {
    let operator = Operator::from_fn(format!("time-frequency shift by ({}, {})", nu.x, nu.omega), d, false, |f| f.tf_shift(nu));
    CatalogEntry { operator, alpha: PhaseAutomorphism::identity(d) }
}

/// `F: D -> D^` with `alpha(omega, x) = (-x, omega)`.
pub fn fourier_operator(d: &Domain) -> CatalogEntry {
    let operator = Operator::from_fn("Fourier transform", d, false, fourier);
    let dual = d.dual();
    let alpha = PhaseAutomorphism::from_fn("(omega, x) -> (-x, omega)", &dual, d, |chi| PhasePoint::new(d.neg(chi.omega), chi.x))
        .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// `F_2: D1 x D2 -> D1 x D2^` with `alpha(l, g, xi, t) = (l, -t, xi, g)`.
pub fn partial_fourier_operator(d1: &Domain, d2: &Domain) -> CatalogEntry {
    let input = Domain::product(d1, d2);
    let operator = Operator::from_fn("partial Fourier transform", &input, false, |f| {
        partial_fourier_2(f).expect("product domain")
    });
    let output = operator.output().clone();
    let (n2, m2) = (d2.len(), d2.dual().len());
    let alpha = PhaseAutomorphism::from_fn("(l, g, xi, t) -> (l, -t, xi, g)", &output, &input, |chi| {
        let (l, g) = (chi.x / m2, chi.x % m2);
        let (xi, t) = (chi.omega / n2, chi.omega % n2);
        PhasePoint::new(l * n2 + d2.neg(t), xi * m2 + g)
    })
    .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// Symplectic transform on `D x D^` with `alpha(l, g, xi, t) = (-t, xi, g, -l)`.
pub fn symplectic_fourier_operator(d: &Domain) -> CatalogEntry {
    let ps = d.phase_space();
    let operator = Operator::from_fn("symplectic Fourier transform", &ps, false, |f| {
        symplectic_fourier(f).expect("phase-space domain")
    });
    let dual = d.dual();
    let (n, m) = (d.len(), dual.len());
    let alpha = PhaseAutomorphism::from_fn("(l, g, xi, t) -> (-t, xi, g, -l)", &ps, &ps, |chi| {
        let (l, g) = (chi.x / m, chi.x % m);
        let (xi, t) = (chi.omega / n, chi.omega % n);
        PhasePoint::new(d.neg(t) * m + xi, g * n + d.neg(l))
    })
    .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// A group automorphism `gamma(x)_j = m_j x_{perm[j]}` of a full group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitAutomorphism {
    pub multipliers: Vec<usize>,
    pub permutation: Vec<usize>,
}

impl UnitAutomorphism {
    pub fn validate(&self, g: &GroupSpec) -> Result<()> {
        let f = g.factors();
        let k = f.len();
        if self.multipliers.len() != k || self.permutation.len() != k {
            return Err(Error::InvalidArgument(format!("automorphism needs {k} multipliers and a permutation of {k} factors")));
        }
        let mut seen = vec![false; k];
        for (j, &p) in self.permutation.iter().enumerate() {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            if f[p] != f[j] {
                return Err(Error::InvalidArgument(format!("factor {j} (order {}) cannot take factor {p} (order {})", f[j], f[p])));
            }
        }
        for (j, &m) in self.multipliers.iter().enumerate() {
            if num_integer::gcd(m, f[j]) != 1 {
                return Err(Error::InvalidArgument(format!("multiplier {m} is not a unit modulo {}", f[j])));
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: &GroupSpec, x: usize) -> usize {
        let c = g.coords(x);
        let out: Vec<usize> = (0..c.len())
            .map(|j| (self.multipliers[j] * c[self.permutation[j]]) % g.factors()[j])
            .collect();
        g.index_of(&out)
    }

    /// Smallest unit above one on each factor (one when there is none) and a
    /// swap of the first pair of equal factors.
    pub fn default_for(g: &GroupSpec) -> UnitAutomorphism {
        let f = g.factors();
        let multipliers = f
            .iter()
            .map(|&n| (2..n).find(|&m| num_integer::gcd(m, n) == 1).unwrap_or(1))
            .collect();
        let mut permutation: Vec<usize> = (0..f.len()).collect();
        'outer: for i in 0..f.len() {
            for j in i + 1..f.len() {
                if f[i] == f[j] {
                    permutation.swap(i, j);
                    break 'outer;
                }
            }
        }
        UnitAutomorphism { multipliers, permutation }
    }
}

/// `U_gamma f(x) = f(gamma(x))` with `alpha(x, omega) = (gamma(x), omega o gamma^{-1})`.
pub fn automorphism_operator(g: &GroupSpec, gamma: &UnitAutomorphism) -> Result<CatalogEntry> {
    gamma.validate(g)?;
    let d = Domain::Group(g.clone());
    let image: Vec<usize> = (0..g.order()).map(|x| gamma.apply(g, x)).collect();
    let operator = Operator::from_fn(format!("automorphism {:?} {:?}", gamma.multipliers, gamma.permutation), &d, false, |f| {
        Signal::from_fn(&d, |x| f.get(image[x]))
    });
    // eta = omega o gamma^{-1} is the character with eta(gamma(e_j)) = omega(e_j) on unit vectors.
    let units: Vec<usize> = (0..g.factors().len())
        .map(|j| {
            let mut c = vec![0; g.factors().len()];
            c[j] = 1;
            g.index_of(&c)
        })
        .collect();
    let dual = g.dual();
    let mut pull = vec![usize::MAX; g.order()];
    for omega in 0..dual.order() {
        pull[omega] = (0..dual.order())
            .find(|&eta| units.iter().all(|&e| g.phase(eta, image[e]) == g.phase(omega, e)))
            .ok_or_else(|| Error::InvalidArgument("map is not an automorphism".into()))?;
    }
    let alpha = PhaseAutomorphism::from_fn("(x, omega) -> (gamma x, omega o gamma^-1)", &d, &d, |chi| {
        PhasePoint::new(image[chi.x], pull[chi.omega])
    })?;
    Ok(CatalogEntry { operator, alpha })
}

/// `psi(x) = prod_j exp(2 pi i c_j x_j^2 / n_j)`.
pub fn chirp(g: &GroupSpec, c: &[i64]) -> Result<Signal> {
    if c.len() != g.factors().len() {
        return Err(Error::InvalidArgument(format!("chirp needs {} coefficients", g.factors().len())));
    }
    let d = Domain::Group(g.clone());
    Ok(Signal::from_fn(&d, |x| {
        let coords = g.coords(x);
        let mut z = Complex64::new(1.0, 0.0);
        for ((&xj, &n), &cj) in coords.iter().zip(g.factors()).zip(c) {
            let n = n as i64;
            let k = (cj.rem_euclid(n) * ((xj as i64 * xj as i64) % n)) % n;
            z *= crate::group::root_of_unity(k as usize, n as usize);
        }
        z
    }))
}

/// `rho(y)_j = 2 c_j y_j`, the character with `psi(x + y) = psi(x) psi(y) rho(y)(x)`.
pub fn chirp_rho(g: &GroupSpec, c: &[i64], y: usize) -> usize {
    let coords = g.coords(y);
    let out: Vec<usize> = coords
        .iter()
        .zip(g.factors())
        .zip(c)
        .map(|((&yj, &n), &cj)| ((2 * cj).rem_euclid(n as i64) as usize * yj) % n)
        .collect();
    g.dual().index_of(&out)
}

/// Multiplication by the chirp with `alpha(x, omega) = (x, omega - rho(x))`.
pub fn chirp_operator(g: &GroupSpec, c: &[i64]) -> Result<CatalogEntry> {
    let psi = chirp(g, c)?;
    let d = Domain::Group(g.clone());
    let operator = Operator::from_fn(format!("chirp {c:?}"), &d, false, |f| f.multiply(&psi).expect("same domain"));
    let dual = g.dual();
    let alpha = PhaseAutomorphism::from_fn("(x, omega) -> (x, omega - rho(x))", &d, &d, |chi| {
        PhasePoint::new(chi.x, dual.sub(chi.omega, chirp_rho(g, c, chi.x)))
    })?;
    Ok(CatalogEntry { operator, alpha })
}

/// Complex conjugation, antilinear, with `alpha(x, omega) = (x, -omega)`.
pub fn conjugation_operator(d: &Domain) -> CatalogEntry {
    let operator = Operator::from_fn("conjugation", d, true, |f| f.conjugate());
    let dual = d.dual();
    let alpha = PhaseAutomorphism::from_fn("(x, omega) -> (x, -omega)", d, d, |chi| PhasePoint::new(chi.x, dual.neg(chi.omega)))
        .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// `f -> f^r` with `alpha(x, omega) = (-x, -omega)`.
pub fn reflection_operator(d: &Domain) -> CatalogEntry {
    let operator = Operator::from_fn("reflection", d, false, |f| f.reflect());
    let dual = d.dual();
    let alpha = PhaseAutomorphism::from_fn("(x, omega) -> (-x, -omega)", d, d, |chi| {
        PhasePoint::new(d.neg(chi.x), dual.neg(chi.omega))
    })
    .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// `f -> f^dagger`, antilinear, with `alpha(x, omega) = (-x, omega)`.
pub fn involution_operator(d: &Domain) -> CatalogEntry {
    let operator = Operator::from_fn("involution", d, true, |f| f.involution());
    let alpha = PhaseAutomorphism::from_fn("(x, omega) -> (-x, omega)", d, d, |chi| PhasePoint::new(d.neg(chi.x), chi.omega))
        .expect("bijective");
    CatalogEntry { operator, alpha }
}

/// Splits `g` into its first factor and the rest (with weights `1` and `w_G`);
/// a single cyclic factor is paired with `Z_2` instead.
pub fn product_split(g: &GroupSpec) -> (Domain, Domain) {
    let f = g.factors();
    if f.len() >= 2 {
        let first = GroupSpec::new(vec![f[0]], Weight::from_integer(1)).expect("valid factor");
        let rest = GroupSpec::new(f[1..].to_vec(), g.weight()).expect("valid factors");
        (Domain::Group(first), Domain::Group(rest))
    } else {
        let two = GroupSpec::new(vec![2], Weight::from_integer(1)).expect("valid factor");
        (Domain::Group(g.clone()), Domain::Group(two))
    }
}

/// Base group of the symplectic entry: `G` itself up to order 8, otherwise its
/// largest cyclic factor, so the operator table stays small.
pub fn symplectic_base(g: &GroupSpec) -> Domain {
    if g.order() <= 8 {
        return Domain::Group(g.clone());
    }
    let n = *g.factors().iter().max().expect("at least one factor");
    Domain::Group(GroupSpec::new(vec![n], g.weight()).expect("valid factor"))
}

/// Every catalog operator built from `g`.
pub fn catalog(g: &GroupSpec) -> Result<Vec<CatalogEntry>> {
    let d = Domain::Group(g.clone());
    let nu = PhasePoint::new(1 % d.len(), d.len() - 1);
    let (d1, d2) = product_split(g);
    let ones = vec![1i64; g.factors().len()];
    Ok(vec![
        tf_shift_operator(&d, nu),
        fourier_operator(&d),
        partial_fourier_operator(&d1, &d2),
        symplectic_fourier_operator(&symplectic_base(g)),
        automorphism_operator(g, &UnitAutomorphism::default_for(g))?,
        chirp_operator(g, &ones)?,
        conjugation_operator(&d),
        reflection_operator(&d),
        involution_operator(&d),
    ])
}

/// The four norm equalities for `(T, alpha)` and, when `T` is unitary, the
/// direct transport `||T f||_{T g} = |alpha|^{-1} ||f||_g`.
pub fn isomorphism_norm_check(entry: &CatalogEntry, f1: &Signal, g1: &Signal, f2: &Signal, g2: &Signal, rel: f64) -> Result<Vec<Check>> {
    let t = &entry.operator;
    let a = crate::group::weight_to_f64(&entry.alpha.modulus);
    let ts = t.adjoint();
    let ti = t.inverse()?;
    let tsi = ts.inverse()?;
    let n1 = s0(f1, g1)?;
    let n2 = s0(f2, g2)?;
    let name = t.name();
    let mut out = vec![
        Check::equal(format!("{name}: T f with window (T*)^-1 g"), s0(&t.apply(f1)?, &tsi.apply(g1)?)?, n1 / a, rel),
        Check::equal(format!("{name}: T^-1 f with window T* g"), s0(&ti.apply(f2)?, &ts.apply(g2)?)?, a * n2, rel),
        Check::equal(format!("{name}: T* f with window T^-1 g"), s0(&ts.apply(f2)?, &ti.apply(g2)?)?, a * n2, rel),
        Check::equal(format!("{name}: (T*)^-1 f with window T g"), s0(&tsi.apply(f1)?, &t.apply(g1)?)?, n1 / a, rel),
    ];
    if t.unitarity_defect() <= 1e-10 {
        out.push(Check::equal(format!("{name}: unitary transport"), s0(&t.apply(f1)?, &t.apply(g1)?)?, n1 / a, rel));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_signal, random_window, seeded};
    use num_rational::Ratio;

    fn grp(f: &[usize], p: i64, q: i64) -> GroupSpec {
        GroupSpec::new(f.to_vec(), Ratio::new(p, q)).unwrap()
    }

    #[test]
    fn adjoint_inverse_compose() {
        let mut rng = seeded(1);
        let g = grp(&[6], 1, 3);
        let e = fourier_operator(&Domain::Group(g.clone()));
        let t = &e.operator;
        let f = random_signal(t.input(), &mut rng);
        let h = random_signal(t.output(), &mut rng);
        let lhs = t.apply(&f).unwrap().inner(&h).unwrap();
        let rhs = f.inner(&t.adjoint().apply(&h).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!(t.unitarity_defect() < 1e-12);
        let back = t.inverse().unwrap().apply(&t.apply(&f).unwrap()).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        // Antilinear adjoint and inverse.
        let c = involution_operator(&Domain::Group(g.clone())).operator;
        let h = random_signal(c.output(), &mut rng);
        let lhs = c.apply(&f).unwrap().inner(&h).unwrap();
        let rhs = f.inner(&c.adjoint().apply(&h).unwrap()).unwrap().conj();
        assert!((lhs - rhs).norm() < 1e-12);
        let back = c.inverse().unwrap().apply(&c.apply(&f).unwrap()).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        let cc = c.compose(&c).unwrap();
        assert!(!cc.is_antilinear());
        assert!(cc.apply(&f).unwrap().max_abs_diff(&f).unwrap() < 1e-15);
    }

    #[test]
    fn identity_commutes_trivially() {
        let d = Domain::Group(grp(&[4], 1, 1));
        let c = commutation_extract(&Operator::identity(&d), &PhaseAutomorphism::identity(&d)).unwrap();
        assert!(c.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn fourier_on_z4_phase_is_the_character_value() {
        // pi(omega, x) F = omega(x) F pi(-x, omega): unimodular, but not constant.
        let g = grp(&[4], 1, 1);
        let d = Domain::Group(g.clone());
        let e = fourier_operator(&d);
        let c = commutation_extract(&e.operator, &e.alpha).unwrap();
        for (i, ci) in c.iter().enumerate() {
            let chi = phase_point(&d.dual(), i);
            assert!((ci - g.character(chi.x, chi.omega)).norm() < 1e-12);
        }
    }

    #[test]
    fn non_unimodular_diagonal_fails() {
        let d = Domain::Group(grp(&[4], 1, 1));
        let diag = Signal::from_real(&d, &[1.0, 2.0, 1.0, 1.0]).unwrap();
        let t = Operator::from_fn("diagonal", &d, false, |f| f.multiply(&diag).unwrap());
        let err = commutation_extract(&t, &PhaseAutomorphism::identity(&d)).unwrap_err();
        assert!(matches!(err, Error::CommutationViolated { .. }));
        let singular = Signal::from_real(&d, &[1.0, 0.0, 1.0, 1.0]).unwrap();
        let t = Operator::from_fn("singular", &d, false, |f| f.multiply(&singular).unwrap());
        assert!(matches!(commutation_extract(&t, &PhaseAutomorphism::identity(&d)), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn catalog_commutes_on_several_groups() {
        for g in [grp(&[5], 1, 1), grp(&[6], 2, 3), grp(&[2, 3], 1, 6), grp(&[2, 2], 1, 1), grp(&[4], 1, 2)] {
            for e in catalog(&g).unwrap() {
                let c = commutation_extract(&e.operator, &e.alpha);
                assert!(c.is_ok(), "{} on {g}: {:?}", e.name(), c.err());
            }
        }
    }

    #[test]
    fn catalog_norm_equalities() {
        let mut rng = seeded(7);
        for g in [grp(&[6], 1, 1), grp(&[2, 3], 3, 2)] {
            for e in catalog(&g).unwrap() {
                let t = &e.operator;
                let f1 = random_signal(t.input(), &mut rng);
                let g1 = random_window(t.input(), &mut rng);
                let f2 = random_signal(t.output(), &mut rng);
                let g2 = random_window(t.output(), &mut rng);
                let checks = isomorphism_norm_check(&e, &f1, &g1, &f2, &g2, 1e-9).unwrap();
                assert_eq!(checks.len(), 5, "{} should be unitary", e.name());
                for c in checks {
                    assert!(c.passed(), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn unit_automorphism_examples() {
        let g = grp(&[5], 1, 1);
        let d = Domain::Group(g.clone());
        let two = UnitAutomorphism { multipliers: vec![2], permutation: vec![0] };
        let three = UnitAutomorphism { multipliers: vec![3], permutation: vec![0] };
        let u2 = automorphism_operator(&g, &two).unwrap().operator;
        let u3 = automorphism_operator(&g, &three).unwrap().operator;
        let f = Signal::from_real(&d, &[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        let v = u2.apply(&f).unwrap();
        assert_eq!(v.values().iter().map(|z| z.re).collect::<Vec<_>>(), vec![0.0, 2.0, 4.0, 1.0, 3.0]);
        assert_eq!(u2.compose(&u3).unwrap().apply(&f).unwrap(), f);
        let id = UnitAutomorphism { multipliers: vec![1], permutation: vec![0] };
        assert_eq!(automorphism_operator(&g, &id).unwrap().operator.apply(&f).unwrap(), f);
        let bad = UnitAutomorphism { multipliers: vec![2], permutation: vec![0] };
        assert!(automorphism_operator(&grp(&[4], 1, 1), &bad).is_err());
        let swap = UnitAutomorphism { multipliers: vec![1, 1], permutation: vec![1, 0] };
        assert!(automorphism_operator(&grp(&[2, 3], 1, 1), &swap).is_err());
    }

    #[test]
    fn chirp_examples() {
        let z4 = grp(&[4], 1, 1);
        let psi = chirp(&z4, &[1]).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        for (v, e) in psi.values().iter().zip([one, i, one, i]) {
            assert!((v - e).norm() < 1e-15);
        }
        assert!(chirp(&z4, &[0]).unwrap().values().iter().all(|v| (v - one).norm() < 1e-15));
        let z6 = grp(&[6], 1, 1);
        let psi = chirp(&z6, &[1]).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                let lhs = psi.get(z6.add(x, y));
                let rhs = psi.get(x) * psi.get(y) * z6.character(chirp_rho(&z6, &[1], y), x);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn chirp_phase_is_psi_of_minus_x() {
        let g = grp(&[5], 1, 1);
        let e = chirp_operator(&g, &[1]).unwrap();
        let c = commutation_extract(&e.operator, &e.alpha).unwrap();
        let psi = chirp(&g, &[1]).unwrap();
        let d = Domain::Group(g.clone());
        for (i, ci) in c.iter().enumerate() {
            let chi = phase_point(&d, i);
            assert!((ci - psi.get(g.neg(chi.x))).norm() < 1e-12);
        }
    }

    #[test]
    fn wrong_alpha_is_reported() {
        let d = Domain::Group(grp(&[4], 1, 1));
        let e = fourier_operator(&d);
        let wrong = PhaseAutomorphism::from_fn("(omega, x) -> (x, omega)", &d.dual(), &d, |chi| PhasePoint::new(chi.omega, chi.x)).unwrap();
        assert!(matches!(commutation_extract(&e.operator, &wrong), Err(Error::CommutationViolated { .. })));
    }
}
