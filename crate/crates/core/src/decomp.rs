//! Series representations of a signal built from its canonical time-frequency
//! expansion, and bounded uniform partitions of unity (BUPUs) from subgroup cosets.
//!
//! Infimum norms are never computed. A representation reports the cost of one
//! admissible expansion, which is an upper bound for its infimum, and the checks
//! compare it with explicit one-sided constants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier};
use crate::group::{GroupSpec, PhasePoint};
use crate::signal::Signal;
use crate::subgroup::Subgroup;
use crate::tf::{canonical_coefficients, coefficient_l1, phase_point, s0, stft};

/// Resynthesis tolerance for every representation.
pub const RESYNTHESIS_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepresentationKind {
    /// `f = sum T_x g_n`, `supp g_n in K`, cost `sum ||g_n||_A`.
    M,
    /// `f = sum E_omega g_n`, `supp g_n^ in K~`, cost `sum ||g_n||_1`.
    N,
    /// `f = sum f_n * E_omega g`, cost `sum ||f_n||_1`.
    O,
    /// `f = sum f_n . T_x g`, cost `sum ||f_n||_A`.
    P,
    /// `f(t) = sum V_{g^} f_n^(-omega_n, t)`, cost `sum ||f_n||_{S0,g}`.
    Q,
    /// `f = sum f_n * g_n`, cost `sum ||f_n||_{S0,g} ||g_n||_{S0,g}`.
    R,
    /// `f = sum c_n pi(chi_n) g`, cost `sum |c_n|`.
    L,
}

/// What each kind is built from.
#[derive(Clone, Debug)]
pub enum RepresentationParams {
    /// Atoms supported in `support`; built from the window `1_K`.
    M { support: Vec<usize> },
    /// Atoms with spectrum in `dual_support`; built from `F^-1 1_{K~}`.
    N { dual_support: Vec<usize> },
    O { window: Signal, h: Signal },
    P { window: Signal, h: Signal },
    Q { window: Signal, h: Signal },
    /// `window` is the S0 reference for the reported cost.
    R { window: Signal, h1: Signal, h2: Signal },
    L { window: Signal },
}

impl RepresentationParams {
    pub fn kind(&self) -> RepresentationKind {
        match self {
            RepresentationParams::M { .. } => RepresentationKind::M,
            RepresentationParams::N { .. } => RepresentationKind::N,
            RepresentationParams::O { .. } => RepresentationKind::O,
            RepresentationParams::P { .. } => RepresentationKind::P,
            RepresentationParams::Q { .. } => RepresentationKind::Q,
            RepresentationParams::R { .. } => RepresentationKind::R,
            RepresentationParams::L { .. } => RepresentationKind::L,
        }
    }
}

/// One summand: its phase-space location, the expansion coefficient it came
/// from and the signal whose norm is charged.
#[derive(Clone, Debug)]
pub struct Term {
    pub location: PhasePoint,
    pub coefficient: Complex64,
    pub piece: Signal,
    /// Second factor of an `R` term.
    pub partner: Option<Signal>,
}

#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepresentationKind,
    terms: Vec<Term>,
    /// The fixed window of O, P, Q and L.
    window: Option<Signal>,
    /// `K` for M, `K~` for N.
    support: Option<Vec<usize>>,
    /// The window the canonical expansion was taken in.
    expansion_window: Signal,
    /// Canonical expansion cost `sum |c_n|` in `expansion_window`.
    expansion_cost: f64,
    cost: f64,
    domain: Domain,
}

impl Representation {
    pub fn kind(&self) -> RepresentationKind {
        self.kind
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn support(&self) -> Option<&[usize]> {
        self.support.as_deref()
    }

    pub fn expansion_window(&self) -> &Signal {
        &self.expansion_window
    }

    pub fn expansion_cost(&self) -> f64 {
        self.expansion_cost
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The signal a single term contributes.
    pub fn term_signal(&self, t: &Term) -> Result<Signal> {
        let PhasePoint { x, omega } = t.location;
        match self.kind {
            RepresentationKind::M => Ok(t.piece.translate(x)),
            RepresentationKind::N => Ok(t.piece.modulate(omega)),
            RepresentationKind::O => t.piece.convolve(&self.fixed_window().modulate(omega)),
            RepresentationKind::P => t.piece.multiply(&self.fixed_window().translate(x)),
            RepresentationKind::Q => {
                // R_{0 x G}(T_{(omega, 0)} V_{g^} f_n^) read at (0, t): V_{g^} f_n^(-omega, t).
                // Only that row is needed: F(f_n^ . conj(T_{-omega} g^)).
                let g_hat = fourier(self.fixed_window());
                let xi = self.domain.dual().neg(omega);
                let row = fourier(&fourier(&t.piece).multiply(&g_hat.translate(xi).conjugate())?);
                Signal::new(self.domain.clone(), row.into_values())
            }
            RepresentationKind::R => t.piece.convolve(t.partner.as_ref().expect("R terms carry a partner")),
            RepresentationKind::L => Ok(t.piece.clone()),
        }
    }

    pub fn resynthesize(&self) -> Result<Signal> {
        let mut out = Signal::zeros(&self.domain);
        for t in &self.terms {
            out.axpy(Complex64::new(1.0, 0.0), &self.term_signal(t)?)?;
        }
        Ok(out)
    }

    fn fixed_window(&self) -> &Signal {
        self.window.as_ref().expect("kind carries a window")
    }
}

fn require_nonzero(g: &Signal) -> Result<()> {
    if g.is_zero() {
        Err(Error::ZeroWindow)
    } else {
        Ok(())
    }
}

fn require_set(d: &Domain, set: &[usize], what: &str) -> Result<()> {
    if set.is_empty() {
        return Err(Error::InvalidArgument(format!("empty {what}")));
    }
    if let Some(&bad) = set.iter().find(|&&i| i >= d.len()) {
        return Err(Error::InvalidArgument(format!("{what} index {bad} outside a domain of size {}", d.len())));
    }
    Ok(())
}

/// Nonzero canonical coefficients of `f` in `k` with their locations.
fn expansion(f: &Signal, k: &Signal) -> Result<(Vec<(PhasePoint, Complex64)>, f64)> {
    require_nonzero(k)?;
    let c = canonical_coefficients(f, k)?;
    let d = f.domain();
    let atoms = c
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != Complex64::new(0.0, 0.0))
        .map(|(i, v)| (phase_point(d, i), *v))
        .collect();
    Ok((atoms, coefficient_l1(&c)))
}

/// `f = c pi(chi) g` for a single phase point, if that is exact to rounding.
fn single_atom(f: &Signal, g: &Signal) -> Result<Option<(PhasePoint, Complex64)>> {
    let v = stft(f, g)?;
    let (i, _) = v
        .values()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("non-empty domain");
    let chi = phase_point(f.domain(), i);
    let c = v.get(i) / g.l2_norm().powi(2);
    let residual = f.sub(&g.tf_shift(chi).scale(c))?.max_abs();
    Ok((residual <= 1e-12 * f.max_abs()).then_some((chi, c)))
}

/// Builds an admissible representation of `f` from its canonical expansion in
/// the kind's expansion window.
pub fn build_representation(f: &Signal, params: &RepresentationParams) -> Result<Representation> {
    let d = f.domain().clone();
    let kind = params.kind();
    let mut window = None;
    let mut support = None;
    let (expansion_window, atoms, expansion_cost) = match params {
        RepresentationParams::M { support: k } => {
            require_set(&d, k, "support set")?;
            support = Some(k.clone());
            let g = Signal::indicator(&d, k);
            let (a, c) = expansion(f, &g)?;
            (g, a, c)
        }
        RepresentationParams::N { dual_support: k } => {
            let dual = d.dual();
            require_set(&dual, k, "dual support set")?;
            support = Some(k.clone());
            let g = inverse_fourier(&Signal::indicator(&dual, k));
            let (a, c) = expansion(f, &g)?;
            (g, a, c)
        }
        RepresentationParams::O { window: g, h } => {
            require_nonzero(g)?;
            window = Some(g.clone());
            let k = h.convolve(g)?;
            let (a, c) = expansion(f, &k)?;
            (k, a, c)
        }
        RepresentationParams::P { window: g, h } => {
            require_nonzero(g)?;
            window = Some(g.clone());
            let k = h.multiply(g)?;
            let (a, c) = expansion(f, &k)?;
            (k, a, c)
        }
        RepresentationParams::Q { window: g, h } => {
            require_nonzero(g)?;
            window = Some(g.clone());
            // The construction expands the reflection f^r in h * g^dagger.
            let k = h.convolve(&g.involution())?;
            let (a, c) = expansion(&f.reflect(), &k)?;
            (k, a, c)
        }
        RepresentationParams::R { window: g, h1, h2 } => {
            require_nonzero(g)?;
            window = Some(g.clone());
            let k = h1.convolve(h2)?;
            let (a, c) = expansion(f, &k)?;
            (k, a, c)
        }
        RepresentationParams::L { window: g } => {
            require_nonzero(g)?;
            window = Some(g.clone());
            let (a, c) = expansion(f, g)?;
            (g.clone(), a, c)
        }
    };
    let dual = d.dual();
    // S0 norms are invariant under time-frequency shifts, so Q and R charges
    // scale one base norm per window instead of recomputing it per term.
    let base_norm = match params {
        RepresentationParams::Q { window: g, h } => s0(h, g)?,
        RepresentationParams::R { window: g, h1, h2 } => s0(h1, g)? * s0(h2, g)?,
        _ => 0.0,
    };
    let mut terms = Vec::with_capacity(atoms.len());
    let mut cost = 0.0;
    let single = match params {
        RepresentationParams::L { window: g } if !f.is_zero() => single_atom(f, g)?,
        _ => None,
    };
    let atoms = match single {
        Some(a) => vec![a],
        None => atoms,
    };
    for (chi, c) in atoms {
        let PhasePoint { x, omega } = chi;
        let mut location = chi;
        let (piece, partner, charge) = match params {
            RepresentationParams::M { .. } => {
                // g_n = omega(x) c E_omega g, so that T_x g_n = c E_omega T_x g.
                let p = expansion_window.modulate(omega).scale(d.pairing(omega, x) * c);
                let a = p.a_norm();
                (p, None, a)
            }
            RepresentationParams::N { .. } => {
                let p = expansion_window.translate(x).scale(c);
                let a = p.l1_norm();
                (p, None, a)
            }
            RepresentationParams::O { h, .. } | RepresentationParams::P { h, .. } => {
                let p = h.tf_shift(chi).scale(c);
                let a = if kind == RepresentationKind::O { p.l1_norm() } else { p.a_norm() };
                (p, None, a)
            }
            RepresentationParams::Q { h, .. } => {
                // f^r = sum c E_omega T_x k, so omega_n = -omega and f_n = c E_{-omega_n} T_x h.
                let p = h.tf_shift(chi).scale(c);
                let a = c.norm() * base_norm;
                location = PhasePoint::new(x, dual.neg(omega));
                (p, None, a)
            }
            RepresentationParams::R { h1, h2, .. } => {
                let p = h1.tf_shift(chi).scale(c);
                let q = h2.modulate(omega);
                let a = c.norm() * base_norm;
                (p, Some(q), a)
            }
            RepresentationParams::L { window: g } => {
                let p = g.tf_shift(chi).scale(c);
                (p, None, c.norm())
            }
        };
        cost += charge;
        terms.push(Term { location, coefficient: c, piece, partner });
    }
    Ok(Representation { kind, terms, window, support, expansion_window, expansion_cost, cost, domain: d })
}

/// `sum ||f_n||_{S0,g} ||g_n||_{S0,g}` for an `R` representation.
pub fn r_cost(rep: &Representation, g: &Signal) -> Result<f64> {
    // Partners repeat once per frequency; pieces are all distinct.
    let mut partner_norms = std::collections::HashMap::new();
    let mut total = 0.0;
    for t in &rep.terms {
        let q = t.partner.as_ref().expect("R term");
        let qn = match partner_norms.get(&t.location.omega) {
            Some(&v) => v,
            None => *partner_norms.entry(t.location.omega).or_insert(s0(q, g)?),
        };
        total += s0(&t.piece, g)? * qn;
    }
    Ok(total)
}

/// Representation of `f` built from a BUPU: `g_i = T_{-x_i} f . T_{-x_i} psi_i` on
/// the time side (kind M, cost `t_norm`) and `g_i = E_{-omega_i}(f * phi_i)` on the
/// frequency side (kind N, cost `u_norm`).
pub fn bupu_representation(f: &Signal, bupu: &Bupu) -> Result<Representation> {
    bupu.check_signal(f)?;
    let d = f.domain().clone();
    let dual = d.dual();
    let mut terms = Vec::with_capacity(bupu.windows.len());
    let mut cost = 0.0;
    for (psi, &center) in bupu.windows.iter().zip(&bupu.centers) {
        let (piece, location, charge) = match bupu.side {
            BupuSide::Time => {
                let p = f.multiply(psi)?.translate(d.neg(center));
                let a = p.a_norm();
                (p, PhasePoint::new(center, 0), a)
            }
            BupuSide::Frequency => {
                let p = f.convolve(psi)?.modulate(dual.neg(center));
                let a = p.l1_norm();
                (p, PhasePoint::new(0, center), a)
            }
        };
        cost += charge;
        terms.push(Term { location, coefficient: Complex64::new(1.0, 0.0), piece, partner: None });
    }
    let kind = match bupu.side {
        BupuSide::Time => RepresentationKind::M,
        BupuSide::Frequency => RepresentationKind::N,
    };
    let template = bupu.template.elements().to_vec();
    let expansion_window = match bupu.side {
        BupuSide::Time => Signal::indicator(&d, &template),
        BupuSide::Frequency => inverse_fourier(&Signal::indicator(&dual, &template)),
    };
    Ok(Representation {
        kind,
        terms,
        window: None,
        support: Some(template),
        expansion_window,
        expansion_cost: f64::NAN,
        cost,
        domain: d,
    })
}

/// Upper bound for `||R_{0 x G}||` from `S0(G^ x G)` with window `Phi = V_{w^} w^`
/// to `S0(G)` with window `g`: `||w||_2^{-4} max_xi ||Phi(xi, .)||_{S0,g}`.
///
/// Every `F` is `sum c(chi) pi(chi) Phi` with `sum |c| <= ||Phi||_2^{-2} ||F||_{S0,Phi}`,
/// the restriction of `pi(chi) Phi` is a time-frequency shift of a row of `Phi`,
/// and `||Phi||_2 = ||w||_2^2`.
pub fn restriction_norm_bound(w: &Signal, g: &Signal) -> Result<f64> {
    require_nonzero(w)?;
    require_nonzero(g)?;
    let d = w.domain();
    let w_hat = fourier(w);
    let phi = stft(&w_hat, &w_hat)?;
    let n = d.len();
    let mut worst: f64 = 0.0;
    for xi in 0..d.dual().len() {
        let row = Signal::new(d.clone(), phi.values()[xi * n..(xi + 1) * n].to_vec())?;
        worst = worst.max(s0(&row, g)?);
    }
    Ok(worst / w.l2_norm().powi(4))
}

/// One-sided bounds for a representation of `f`, against the S0 norm in `g`.
///
/// * lower: `c ||f||_{S0,g} <= cost` with the kind's constant `c`;
/// * upper: `cost <= C . (canonical cost in the expansion window)`;
/// * resynthesis within [`RESYNTHESIS_TOL`].
pub fn representation_inequality_check(rep: &Representation, f: &Signal, g: &Signal, slack: f64) -> Result<Vec<Check>> {
    require_nonzero(g)?;
    let tag = format!("{:?}", rep.kind);
    let mut out = vec![Check::signals_equal(format!("{tag} resynthesis"), &rep.resynthesize()?, f, RESYNTHESIS_TOL)];
    let norm = s0(f, g)?;
    let (c, cost, upper) = match rep.kind {
        RepresentationKind::M => {
            // h = 1_K is one on K.
            let h = Signal::indicator(f.domain(), rep.support().expect("M has a support"));
            (1.0 / s0(&h, g)?, rep.cost, Some(rep.expansion_window.a_norm()))
        }
        RepresentationKind::N => {
            // h^ = 1_{K~}, which is the expansion window.
            (1.0 / s0(&rep.expansion_window, g)?, rep.cost, Some(rep.expansion_window.l1_norm()))
        }
        RepresentationKind::O => {
            let w = rep.fixed_window();
            let h_l1 = rep.terms.first().map(|t| t.piece.l1_norm() / t.coefficient.norm());
            (1.0 / s0(w, g)?, rep.cost, h_l1)
        }
        RepresentationKind::P => {
            let w = rep.fixed_window();
            let h_a = rep.terms.first().map(|t| t.piece.a_norm() / t.coefficient.norm());
            (1.0 / s0(w, g)?, rep.cost, h_a)
        }
        RepresentationKind::Q => {
            let w = rep.fixed_window();
            // ||f||_{S0,g} <= ||R|| ||w||_{S0,w} sum ||f_n||_{S0,w}.
            let bound = restriction_norm_bound(w, g)?;
            let h_s0 = match rep.terms.first() {
                Some(t) => Some(s0(&t.piece, w)? / t.coefficient.norm()),
                None => None,
            };
            (1.0 / (bound * s0(w, w)?), rep.cost, h_s0)
        }
        RepresentationKind::R => {
            let cost = r_cost(rep, g)?;
            // Norms are invariant under time-frequency shifts, so one term gives ||h1|| ||h2||.
            let big_c = match rep.terms.first() {
                Some(t) => Some(s0(&t.piece, g)? / t.coefficient.norm() * s0(t.partner.as_ref().expect("R term"), g)?),
                None => None,
            };
            (g.linf_norm(), cost, big_c)
        }
        RepresentationKind::L => {
            let w = rep.fixed_window();
            (1.0 / s0(w, g)?, rep.cost, Some(1.0))
        }
    };
    out.push(Check::at_most(format!("{tag} lower bound"), c * norm, cost, slack));
    if let Some(big_c) = upper {
        if rep.expansion_cost.is_finite() {
            out.push(Check::at_most(format!("{tag} upper bound"), cost, big_c * rep.expansion_cost, slack));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BupuSide {
    Time,
    Frequency,
}

/// A partition of unity by coset indicators. On the time side `windows` are
/// `psi_i = 1_{x_i + W}`; on the frequency side they are `phi_i` with
/// `phi_i^ = 1_{omega_i + V}`.
#[derive(Clone, Debug)]
pub struct Bupu {
    side: BupuSide,
    group: GroupSpec,
    /// `W` (time side) or `V` (frequency side).
    template: Subgroup,
    centers: Vec<usize>,
    windows: Vec<Signal>,
}

/// Time-side BUPU from the cosets of `h`.
pub fn bupu_from_subgroup(h: &Subgroup) -> Bupu {
    let g = h.parent().clone();
    let d = Domain::Group(g.clone());
    let centers = h.quotient().coset_reps().to_vec();
    let windows = centers
        .iter()
        .map(|&x| Signal::indicator(&d, &coset(&g, h, x)))
        .collect();
    Bupu { side: BupuSide::Time, group: g, template: h.clone(), centers, windows }
}

/// Frequency-side BUPU from the cosets of a subgroup `v` of the dual group.
pub fn bupu_from_dual_subgroup(v: &Subgroup) -> Bupu {
    let dual_spec = v.parent().clone();
    let dual = Domain::Group(dual_spec.clone());
    let g = dual_spec.dual();
    let centers = v.quotient().coset_reps().to_vec();
    let windows = centers
        .iter()
        .map(|&w| inverse_fourier(&Signal::indicator(&dual, &coset(&dual_spec, v, w))))
        .collect();
    Bupu { side: BupuSide::Frequency, group: g, template: v.clone(), centers, windows }
}

fn coset(g: &GroupSpec, h: &Subgroup, x: usize) -> Vec<usize> {
    let mut c: Vec<usize> = h.elements().iter().map(|&e| g.add(x, e)).collect();
    c.sort_unstable();
    c
}

/// Result of checking the four BUPU axioms.
#[derive(Clone, Debug)]
pub struct BupuAxioms {
    /// `max |sum_i psi_i - 1|` (or of `sum phi_i^`).
    pub partition_error: f64,
    /// `||psi_i||_A` (or `||phi_i||_1`) per window.
    pub window_norms: Vec<f64>,
    /// Largest support violation outside `x_i + W` (or `omega_i + V`).
    pub support_violation: f64,
    /// Overlap count `c1` for the probe set `K = W` (or `V`).
    pub overlap: usize,
}

impl BupuAxioms {
    /// `c2 = sup_i` of the window norms.
    pub fn c2(&self) -> f64 {
        self.window_norms.iter().cloned().fold(0.0, f64::max)
    }

    pub fn checks(&self, side: BupuSide) -> Vec<Check> {
        let names = match side {
            BupuSide::Time => ["a.i", "a.ii", "a.iii", "a.iv"],
            BupuSide::Frequency => ["b.i", "b.ii", "b.iii", "b.iv"],
        };
        let c2 = self.c2();
        let spread = self.window_norms.iter().map(|v| (v - c2).abs()).fold(0.0, f64::max);
        vec![
            Check::from_error(format!("bupu {} partition of unity", names[0]), self.partition_error, 1e-12, ""),
            Check::from_error(
                format!("bupu {} uniform window norm", names[1]),
                if c2.is_finite() { spread } else { f64::INFINITY },
                1e-12 * c2.max(1.0),
                format!("sup = {c2:.12e}"),
            ),
            // Frequency-side spectra come out of an FFT, hence the rounding floor.
            Check::from_error(format!("bupu {} support", names[2]), self.support_violation, 1e-12, ""),
            Check::boolean(format!("bupu {} finite overlap", names[3]), self.overlap >= 1, format!("c1 = {}", self.overlap)),
        ]
    }
}

impl Bupu {
    pub fn side(&self) -> BupuSide {
        self.side
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn template(&self) -> &Subgroup {
        &self.template
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn windows(&self) -> &[Signal] {
        &self.windows
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    fn check_signal(&self, f: &Signal) -> Result<()> {
        let d = Domain::Group(self.group.clone());
        if f.domain() != &d {
            return Err(Error::DomainMismatch { expected: d.to_string(), found: f.domain().to_string() });
        }
        Ok(())
    }

    /// The side on which the partition lives: `G` for time, `G^` for frequency.
    fn partition_space(&self) -> GroupSpec {
        self.template.parent().clone()
    }

    /// The partition functions on their own side: `psi_i` or `phi_i^`.
    fn partition_functions(&self) -> Vec<Signal> {
        match self.side {
            BupuSide::Time => self.windows.clone(),
            BupuSide::Frequency => self.windows.iter().map(fourier).collect(),
        }
    }

    /// `c1(K) = max_x #{ i : (x + K) meets x_i + W }` on the partition side.
    pub fn overlap_count(&self, k: &[usize]) -> usize {
        let s = self.partition_space();
        let mut best = 0;
        for x in 0..s.order() {
            let shifted: Vec<usize> = k.iter().map(|&e| s.add(x, e)).collect();
            let hits = self
                .centers
                .iter()
                .filter(|&&c| {
                    let cell = coset(&s, &self.template, c);
                    shifted.iter().any(|e| cell.binary_search(e).is_ok())
                })
                .count();
            best = best.max(hits);
        }
        best
    }

    pub fn axioms(&self) -> BupuAxioms {
        let s = self.partition_space();
        let funcs = self.partition_functions();
        let mut sum = vec![Complex64::new(0.0, 0.0); s.order()];
        let mut support_violation: f64 = 0.0;
        for (psi, &c) in funcs.iter().zip(&self.centers) {
            let cell = coset(&s, &self.template, c);
            for (i, v) in psi.values().iter().enumerate() {
                sum[i] += v;
                if cell.binary_search(&i).is_err() {
                    support_violation = support_violation.max(v.norm());
                }
            }
        }
        let partition_error = sum.iter().map(|v| (v - 1.0).norm()).fold(0.0, f64::max);
        let window_norms = self
            .windows
            .iter()
            .map(|w| match self.side {
                BupuSide::Time => w.a_norm(),
                BupuSide::Frequency => w.l1_norm(),
            })
            .collect();
        BupuAxioms { partition_error, window_norms, support_violation, overlap: self.overlap_count(self.template.elements()) }
    }
}

/// `sum_i ||f psi_i||_A` for a time-side BUPU.
pub fn t_norm(f: &Signal, bupu: &Bupu) -> Result<f64> {
    bupu.check_signal(f)?;
    if bupu.side != BupuSide::Time {
        return Err(Error::InvalidArgument("t_norm needs a time-side partition".into()));
    }
    let mut total = 0.0;
    for psi in &bupu.windows {
        total += f.multiply(psi)?.a_norm();
    }
    Ok(total)
}

/// `sum_i ||f * phi_i||_1` for a frequency-side BUPU.
pub fn u_norm(f: &Signal, bupu: &Bupu) -> Result<f64> {
    bupu.check_signal(f)?;
    if bupu.side != BupuSide::Frequency {
        return Err(Error::InvalidArgument("u_norm needs a frequency-side partition".into()));
    }
    let mut total = 0.0;
    for phi in &bupu.windows {
        total += f.convolve(phi)?.l1_norm();
    }
    Ok(total)
}

/// The computable one-sided statements around `t_norm` (or `u_norm`):
///
/// * the BUPU representation resynthesizes `f` with cost exactly the norm;
/// * `||h||_{S0,g}^{-1} ||f||_{S0,g} <= norm` with `h = 1_W` (or `h^ = 1_V`);
/// * `norm <= c1(K) c2 . cost` for the given M (or N) representation with support `K`.
pub fn bupu_bound_checks(f: &Signal, bupu: &Bupu, g: &Signal, other: &Representation, slack: f64) -> Result<Vec<Check>> {
    let side = match bupu.side {
        BupuSide::Time => "t",
        BupuSide::Frequency => "u",
    };
    let value = match bupu.side {
        BupuSide::Time => t_norm(f, bupu)?,
        BupuSide::Frequency => u_norm(f, bupu)?,
    };
    let own = bupu_representation(f, bupu)?;
    let mut out = vec![
        Check::signals_equal(format!("{side}_norm representation resynthesis"), &own.resynthesize()?, f, RESYNTHESIS_TOL),
        Check::equal(format!("{side}_norm equals its representation cost"), own.cost, value, 1e-12),
    ];
    let h = own.expansion_window.clone();
    out.push(Check::at_most(format!("{side}_norm lower bound"), s0(f, g)? / s0(&h, g)?, value, slack));
    let expected = match bupu.side {
        BupuSide::Time => RepresentationKind::M,
        BupuSide::Frequency => RepresentationKind::N,
    };
    if other.kind != expected {
        return Err(Error::InvalidArgument(format!("the upper bound needs a {expected:?} representation")));
    }
    let k = other.support().expect("M and N carry supports");
    let c1 = bupu.overlap_count(k) as f64;
    let c2 = bupu.axioms().c2();
    out.push(Check::at_most(format!("{side}_norm upper bound"), value, c1 * c2 * other.cost, slack));
    Ok(out)
}
