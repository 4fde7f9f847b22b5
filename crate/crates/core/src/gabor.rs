//! Gabor systems `{pi(lambda) g : lambda in Lambda}` over a subgroup of the
//! time-frequency plane, their frame operator, frame bounds and dual window.
//!
//! The lattice is a subgroup of the flat phase group: the factors of `G`
//! followed by those of `G^`, so flat index `i` is the phase point
//! `(i / |G|, i % |G|)`. Its subgroup weight is the lattice measure `w_Lambda`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::check::Check;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, PhasePoint, Weight};
use crate::operators::Operator;
use crate::signal::Signal;
use crate::subgroup::{parse_generators, Subgroup};

type CMatrix = DMatrix<Complex64>;

/// `G x G^` as a single group, factors of `G` first.
pub fn phase_group(g: &GroupSpec) -> GroupSpec {
    g.product(&g.dual())
}

/// `a Z_n x b Z_n^` on a single-factor group.
pub fn separable_lattice(g: &GroupSpec, a: usize, b: usize, weight: Weight) -> Result<Subgroup> {
    let &[n] = g.factors() else {
        return Err(Error::InvalidArgument("a separable a,b lattice needs a single-factor group".into()));
    };
    if a == 0 || b == 0 || n % a != 0 || n % b != 0 {
        return Err(Error::InvalidArgument(format!("lattice steps {a},{b} must divide {n}")));
    }
    let pg = phase_group(g);
    let gens = parse_generators(&pg, &format!("{a}:0,0:{b}"))?;
    Subgroup::generated(&pg, &gens, weight)
}

/// Lattice from generators written in subgroup syntax on the phase group.
pub fn lattice_from_generators(g: &GroupSpec, spec: &str, weight: Weight) -> Result<Subgroup> {
    let pg = phase_group(g);
    Subgroup::generated(&pg, &parse_generators(&pg, spec)?, weight)
}

/// The whole phase space with `w_Lambda = w_G w_G^`: a tight frame with bound `||g||_2^2`.
pub fn full_lattice(g: &GroupSpec) -> Subgroup {
    let pg = phase_group(g);
    let w = pg.weight();
    Subgroup::whole(&pg, w)
}

#[derive(Clone, Debug)]
pub struct GaborSystem {
    window: Signal,
    lattice: Subgroup,
}

impl GaborSystem {
    pub fn new(window: Signal, lattice: Subgroup) -> Result<GaborSystem> {
        let g = window
            .domain()
            .as_group()
            .ok_or_else(|| Error::InvalidArgument("Gabor windows must live on a full group".into()))?;
        if lattice.parent() != &phase_group(g) {
            return Err(Error::InvalidArgument(format!("lattice is not a subgroup of the phase group of {g}")));
        }
        Ok(GaborSystem { window, lattice })
    }

    pub fn window(&self) -> &Signal {
        &self.window
    }

    pub fn lattice(&self) -> &Subgroup {
        &self.lattice
    }

    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + '_ {
        let n = self.window.len();
        self.lattice.elements().iter().map(move |&i| PhasePoint::new(i / n, i % n))
    }

    pub fn with_window(&self, window: Signal) -> Result<GaborSystem> {
        GaborSystem::new(window, self.lattice.clone())
    }

    /// `S f = sum_lambda <f, pi(lambda) g> pi(lambda) g w_Lambda` as a dense matrix.
    pub fn frame_matrix(&self) -> CMatrix {
        let d = self.window.domain();
        let n = d.len();
        let scale = self.lattice.weight_f64() * d.weight_f64();
        let mut s = CMatrix::zeros(n, n);
        for chi in self.points() {
            let v = DVector::from_vec(self.window.tf_shift(chi).into_values());
            s += &v * v.adjoint();
        }
        s * Complex64::new(scale, 0.0)
    }

    pub fn frame_operator(&self) -> Operator {
        let d = self.window.domain();
        Operator::from_matrix("Gabor frame operator", d, d, self.frame_matrix(), false).expect("square matrix")
    }

    /// `sum_lambda |<f, pi(lambda) g>|^2 w_Lambda / ||f||_2^2`.
    pub fn rayleigh_quotient(&self, f: &Signal) -> Result<f64> {
        let mut acc = 0.0;
        for chi in self.points() {
            acc += f.inner(&self.window.tf_shift(chi))?.norm_sqr();
        }
        Ok(acc * self.lattice.weight_f64() / f.l2_norm().powi(2))
    }

    /// Extreme eigenvalues `(A, B)` of the frame operator.
    pub fn frame_bounds(&self) -> Result<FrameBounds> {
        let s = self.frame_matrix();
        let eig = SymmetricEigen::new(s.clone());
        let norm = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut residual: f64 = 0.0;
        for (k, &lam) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(k);
            let r = &s * v - v * Complex64::new(lam, 0.0);
            residual = residual.max(r.norm());
        }
        let lower = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let upper = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(FrameBounds { lower, upper, residual: residual / norm.max(f64::MIN_POSITIVE) })
    }

    /// `S^{-1} g` by a linear solve.
    pub fn dual_window(&self) -> Result<Signal> {
        let b = self.frame_bounds()?;
        if !(b.lower > 1e-12 * b.upper) {
            return Err(Error::NotAFrame { lower: b.lower });
        }
        let rhs = DVector::from_vec(self.window.values().to_vec());
        let sol = self.frame_matrix().lu().solve(&rhs).ok_or(Error::NotAFrame { lower: b.lower })?;
        Signal::new(self.window.domain().clone(), sol.iter().copied().collect())
    }

    /// `sum_lambda <f, pi(lambda) h> pi(lambda) g w_Lambda`.
    pub fn reconstruct(&self, f: &Signal, h: &Signal) -> Result<Signal> {
        let mut out = Signal::zeros(f.domain());
        for chi in self.points() {
            let c = f.inner(&h.tf_shift(chi))?;
            out.axpy(c * self.lattice.weight_f64(), &self.window.tf_shift(chi))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    /// `max_k ||S v_k - lambda_k v_k|| / ||S||_F`.
    pub residual: f64,
}

fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn shift_matrix(d: &Domain, chi: PhasePoint) -> CMatrix {
    let n = d.len();
    CMatrix::from_fn(n, n, |r, c| if d.sub(r, chi.x) == c { d.pairing(chi.omega, r) } else { Complex64::new(0.0, 0.0) })
}

/// Hermitian and positive semidefinite frame operator, commutation with every
/// lattice shift, and covariance `pi(chi) S_g = S_{pi(chi) g} pi(chi)` at the sample points.
pub fn frame_operator_checks(sys: &GaborSystem, samples: &[PhasePoint], tol: f64) -> Result<Vec<Check>> {
    let s = sys.frame_matrix();
    let d = sys.window().domain();
    let scale = s.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut out = vec![Check::from_error(
        "frame operator is Hermitian",
        max_entry_diff(&s, &s.adjoint()),
        tol * scale,
        format!("{}x{}", s.nrows(), s.ncols()),
    )];
    let bounds = sys.frame_bounds()?;
    out.push(Check::from_error(
        "frame operator is positive semidefinite",
        (-bounds.lower).max(0.0),
        tol * scale,
        format!("smallest eigenvalue {:.6e}", bounds.lower),
    ));
    out.push(Check::from_error("eigen residual", bounds.residual, 1e-10, "relative to the Frobenius norm"));
    let mut worst: f64 = 0.0;
    for chi in sys.points() {
        let p = shift_matrix(d, chi);
        worst = worst.max(max_entry_diff(&(&p * &s), &(&s * &p)));
    }
    out.push(Check::from_error(
        "frame operator commutes with lattice shifts",
        worst,
        tol * scale,
        format!("{} lattice points", sys.lattice().order()),
    ));
    let mut worst: f64 = 0.0;
    for &chi in samples {
        let p = shift_matrix(d, chi);
        let moved = sys.with_window(sys.window().tf_shift(chi))?.frame_matrix();
        worst = worst.max(max_entry_diff(&(&p * &s), &(&moved * &p)));
    }
    out.push(Check::from_error(
        "shifted window intertwines frame operators",
        worst,
        tol * scale,
        format!("{} sample points", samples.len()),
    ));
    Ok(out)
}
