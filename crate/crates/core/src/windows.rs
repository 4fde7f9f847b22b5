//! Reference windows for the S0 norm.

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::signal::Signal;
use crate::subgroup::{all_subgroups, Subgroup};

pub fn delta_window(d: &Domain) -> Signal {
    Signal::delta(d, d.zero())
}

pub fn constant_window(d: &Domain) -> Signal {
    Signal::constant(d, Complex64::new(1.0, 0.0))
}

/// A subgroup autocorrelation window and whether it is exact.
#[derive(Clone, Debug)]
pub struct AutocorrelationWindow {
    pub window: Signal,
    pub subgroup: Subgroup,
    /// True when `mu_G(H) = 1`, so that `||f||_1 = ||f||_inf = ||f^||_1 = ||f^||_inf = 1`.
    pub exact: bool,
}

/// `1_H * 1_H^dagger = mu(H) 1_H` for the subgroup whose Haar mass `mu(H) = |H| w_G`
/// is closest to one. When no subgroup has mass exactly one the window is
/// rescaled by `mu(H)^{-3/2}`, which balances the four norms around one.
pub fn subgroup_autocorrelation(g: &GroupSpec) -> AutocorrelationWindow {
    let w = g.weight_f64();
    let d = Domain::Group(g.clone());
    let subgroups = all_subgroups(g, g.weight());
    let mass = |h: &Subgroup| h.order() as f64 * w;
    // Ties go to the smaller subgroup (enumeration order).
    let h = subgroups
        .iter()
        .min_by(|a, b| mass(a).ln().abs().total_cmp(&mass(b).ln().abs()))
        .expect("the trivial subgroup always exists")
        .clone();
    let exact = g.weight() * num_rational::Ratio::from_integer(h.order() as i64) == num_rational::Ratio::from_integer(1);
    let ind = Signal::indicator(&d, h.elements());
    let auto = ind.convolve(&ind.involution()).expect("same domain");
    let window = if exact { auto } else { auto.scale_real(mass(&h).powf(-1.5)) };
    AutocorrelationWindow { window, subgroup: h, exact }
}

/// `prod_j sum_{|k| <= 3} exp(-pi (x_j + k n_j)^2 / n_j)`: a Gaussian of width
/// `sqrt(n_j)` on each axis, periodized. Heuristically close to its own transform.
pub fn periodized_gaussian(g: &GroupSpec) -> Signal {
    let d = Domain::Group(g.clone());
    Signal::from_fn(&d, |i| {
        let coords = g.coords(i);
        let v: f64 = coords
            .iter()
            .zip(g.factors())
            .map(|(&x, &n)| {
                let n = n as f64;
                (-3i32..=3)
                    .map(|k| {
                        let t = x as f64 + f64::from(k) * n;
                        (-std::f64::consts::PI * t * t / n).exp()
                    })
                    .sum::<f64>()
            })
            .product();
        Complex64::new(v, 0.0)
    })
}

pub fn indicator_window(d: &Domain, set: &[usize]) -> Result<Signal> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("indicator window of an empty set".into()));
    }
    if let Some(&bad) = set.iter().find(|&&i| i >= d.len()) {
        return Err(Error::InvalidArgument(format!("index {bad} outside a domain of size {}", d.len())));
    }
    Ok(Signal::indicator(d, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier;
    use num_rational::Ratio;

    #[test]
    fn autocorrelation_exact_when_unit_mass_subgroup_exists() {
        // Z_4 with weight 1/2: H = {0, 2} has mass 1.
        let g = GroupSpec::new(vec![4], Ratio::new(1, 2)).unwrap();
        let a = subgroup_autocorrelation(&g);
        assert!(a.exact);
        assert_eq!(a.subgroup.elements(), &[0, 2]);
        let f = &a.window;
        let fh = fourier(f);
        for v in [f.l1_norm(), f.linf_norm(), fh.l1_norm(), fh.linf_norm()] {
            assert!((v - 1.0).abs() < 1e-14, "{v}");
        }
    }

    #[test]
    fn autocorrelation_flagged_otherwise() {
        // Z_6 weight 1/4: masses 1/4, 1/2, 3/4, 3/2 -> H = {0,2,4}.
        let g = GroupSpec::new(vec![6], Ratio::new(1, 4)).unwrap();
        let a = subgroup_autocorrelation(&g);
        assert!(!a.exact);
        assert_eq!(a.subgroup.order(), 3);
        let f = &a.window;
        let fh = fourier(f);
        // Balanced: ||f||_inf ||f||_1 = 1 and ||f^||_1 ||f^||_inf = 1.
        assert!((f.linf_norm() * f.l1_norm() - 1.0).abs() < 1e-12);
        assert!((fh.linf_norm() * fh.l1_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_is_real_positive_and_even() {
        let g = GroupSpec::counting(&[8, 3]).unwrap();
        let w = periodized_gaussian(&g);
        assert!(w.values().iter().all(|v| v.re > 0.0 && v.im == 0.0));
        assert!(w.max_abs_diff(&w.reflect()).unwrap() < 1e-12);
    }

    #[test]
    fn indicator_rejects_bad_sets() {
        let d = Domain::Group(GroupSpec::counting(&[4]).unwrap());
        assert!(indicator_window(&d, &[]).is_err());
        assert!(indicator_window(&d, &[4]).is_err());
        assert_eq!(indicator_window(&d, &[1]).unwrap(), Signal::delta(&d, 1));
    }
}
