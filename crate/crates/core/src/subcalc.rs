//! Restriction, periodization and zero-extension along a subgroup, with
//! Weil's formula, the Poisson formula and the coset-decomposition norm.
//!
//! Signals on `H` use `Domain::subgroup(H)` (sorted elements); signals on `G/H`
//! use `Domain::quotient(H)` (ascending minimal coset representatives).

use num_complex::Complex64;

use crate::check::Check;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier};
use crate::group::weight_to_f64;
use crate::signal::Signal;
use crate::subgroup::{derive_measures, Subgroup};
use crate::tf::s0;

fn require_parent(f: &Signal, h: &Subgroup) -> Result<()> {
    let expected = Domain::Group(h.parent().clone());
    if f.domain() != &expected {
        return Err(Error::DomainMismatch { expected: expected.to_string(), found: f.domain().to_string() });
    }
    Ok(())
}

/// `R_H f = f|_H`.
pub fn restrict(f: &Signal, h: &Subgroup) -> Result<Signal> {
    require_parent(f, h)?;
    let d = Domain::subgroup(h);
    Ok(Signal::from_fn(&d, |k| f.get(h.elements()[k])))
}

/// `P_H f(x + H) = sum_{h in H} f(x + h) w_H`.
pub fn periodize(f: &Signal, h: &Subgroup) -> Result<Signal> {
    require_parent(f, h)?;
    let d = Domain::quotient(h);
    let Domain::Quot(q) = &d else { unreachable!() };
    let w = h.weight_f64();
    let mut out = vec![Complex64::new(0.0, 0.0); q.view.len()];
    for (x, v) in f.values().iter().enumerate() {
        out[q.view.coset_of(x)] += v;
    }
    Ok(Signal::raw(d, out.into_iter().map(|v| v * w).collect()))
}

/// `Q_H phi`: `phi` on `H`, zero elsewhere.
pub fn zero_extend(phi: &Signal, h: &Subgroup) -> Result<Signal> {
    let expected = Domain::subgroup(h);
    if phi.domain() != &expected {
        return Err(Error::DomainMismatch { expected: expected.to_string(), found: phi.domain().to_string() });
    }
    let d = Domain::Group(h.parent().clone());
    let mut out = vec![Complex64::new(0.0, 0.0); d.len()];
    for (k, &e) in h.elements().iter().enumerate() {
        out[e] = phi.get(k);
    }
    Ok(Signal::raw(d, out))
}

/// `(||Q_H phi||_{S0(G), Q_H g}, w_{G/H} ||phi||_{S0(H), g})`.
///
/// The two agree for every weight choice; the factor `w_{G/H}` is one exactly
/// when `H` carries the restriction of the Haar measure of `G`.
pub fn zero_extension_norms(phi: &Signal, g: &Signal, h: &Subgroup) -> Result<(f64, f64)> {
    let lhs = s0(&zero_extend(phi, h)?, &zero_extend(g, h)?)?;
    let w_quot = weight_to_f64(&derive_measures(h).g_mod_h);
    Ok((lhs, w_quot * s0(phi, g)?))
}

/// Weil's formula: `sum_x f(x) w_G` against `sum_{x+H} sum_h f(x+h) w_H w_{G/H}`.
pub fn weil_check(f: &Signal, h: &Subgroup) -> Result<(Complex64, Complex64)> {
    require_parent(f, h)?;
    let lhs: Complex64 = f.values().iter().sum::<Complex64>() * h.parent().weight_f64();
    let p = periodize(f, h)?;
    let rhs = p.values().iter().sum::<Complex64>() * p.domain().weight_f64();
    Ok((lhs, rhs))
}

/// Result of the Poisson formula on one `(f, H)` pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonSums {
    /// `sum_{h in H} f(h) w_H`.
    pub subgroup_sum: Complex64,
    /// `sum_{gamma in H^perp} f^(gamma) w_{H^perp}`.
    pub annihilator_sum: Complex64,
    /// `(1 / s(H)) sum_{H^perp} f^` with `s(H) = mu_{G/H}(G/H)`, only for `w_H = 1`.
    pub normalized: Option<Complex64>,
}

pub fn poisson_check(f: &Signal, h: &Subgroup) -> Result<PoissonSums> {
    require_parent(f, h)?;
    let subgroup_sum: Complex64 = h.elements().iter().map(|&e| f.get(e)).sum::<Complex64>() * h.weight_f64();
    let perp = h.annihilator();
    let fh = fourier(f);
    let raw: Complex64 = perp.elements().iter().map(|&e| fh.get(e)).sum();
    let annihilator_sum = raw * perp.weight_f64();
    let normalized = (h.weight() == num_rational::Ratio::from_integer(1)).then(|| {
        let m = derive_measures(h);
        let s_h = h.index() as f64 * weight_to_f64(&m.g_mod_h);
        raw / s_h
    });
    Ok(PoissonSums { subgroup_sum, annihilator_sum, normalized })
}

/// `(R_H f, F_H^{-1} P_{H^perp} F_G f)`, both as signals on `H`.
pub fn restriction_fourier_identity(f: &Signal, h: &Subgroup) -> Result<(Signal, Signal)> {
    let lhs = restrict(f, h)?;
    let periodized = periodize(&fourier(f), &h.annihilator())?;
    let rhs = inverse_fourier(&periodized);
    Ok((lhs, rhs))
}

/// `f_gamma(x) = f(gamma + x)` on `H` for the coset representative `gamma`.
pub fn coset_slice(f: &Signal, h: &Subgroup, gamma: usize) -> Result<Signal> {
    require_parent(f, h)?;
    let g = h.parent();
    let d = Domain::subgroup(h);
    Ok(Signal::from_fn(&d, |k| f.get(g.add(gamma, h.elements()[k]))))
}

/// `sum_gamma ||f_gamma||_{S0(H), g_H}` over the coset representatives of `G/H`.
pub fn coset_decomposition_norm(f: &Signal, h: &Subgroup, g_h: &Signal) -> Result<f64> {
    if g_h.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let q = h.quotient();
    let mut acc = 0.0;
    for &gamma in q.coset_reps() {
        acc += s0(&coset_slice(f, h, gamma)?, g_h)?;
    }
    Ok(acc)
}

/// Triangle bound `||f||_{S0(G), Q_H g_H} <= w_{G/H} sum_gamma ||f_gamma||` and the
/// ratio of the two sides, which must stay bounded away from zero.
pub fn coset_norm_bound(f: &Signal, h: &Subgroup, g_h: &Signal) -> Result<(f64, f64)> {
    let value = coset_decomposition_norm(f, h, g_h)?;
    let w_quot = weight_to_f64(&derive_measures(h).g_mod_h);
    let full = s0(f, &zero_extend(g_h, h)?)?;
    Ok((full, w_quot * value))
}

/// Structural identities of periodization, one check each.
pub fn periodization_checks(f: &Signal, k: &Signal, h: &Subgroup, rel: f64) -> Result<Vec<Check>> {
    let pf = periodize(f, h)?;
    let mut out = vec![
        Check::at_most("periodization contracts L1", pf.l1_norm(), f.l1_norm(), 1e-12),
        Check::signals_equal("periodization commutes with involution", &pf.involution(), &periodize(&f.involution(), h)?, rel),
        Check::signals_equal(
            "periodization is a convolution homomorphism",
            &pf.convolve(&periodize(k, h)?)?,
            &periodize(&f.convolve(k)?, h)?,
            rel,
        ),
    ];
    // E_gamma P_H = P_H E_gamma for gamma in H^perp; characters of G/H are indexed by H^perp.
    let perp = h.annihilator();
    let mut worst = 0.0f64;
    for (pos, &gamma) in perp.elements().iter().enumerate() {
        worst = worst.max(pf.modulate(pos).max_abs_diff(&periodize(&f.modulate(gamma), h)?)?);
    }
    out.push(Check::from_error(
        "modulation by the annihilator commutes with periodization",
        worst,
        (rel * f.max_abs()).max(crate::check::ABS_FLOOR),
        format!("{} characters", perp.order()),
    ));
    // F_{G/H}(P_H f)(gamma) = f^(gamma) for gamma in H^perp.
    let fp = fourier(&pf);
    let fh = fourier(f);
    let on_perp = Signal::from_fn(fp.domain(), |pos| fh.get(perp.elements()[pos]));
    out.push(Check::signals_equal("transform of the periodization samples the transform", &fp, &on_perp, rel));
    Ok(out)
}

/// `P_H(Q_H phi)` is `sum_h phi(h) w_H` at the zero coset and zero elsewhere.
pub fn periodize_zero_extension_check(phi: &Signal, h: &Subgroup, rel: f64) -> Result<Check> {
    let lhs = periodize(&zero_extend(phi, h)?, h)?;
    let mass: Complex64 = phi.values().iter().sum::<Complex64>() * h.weight_f64();
    let rhs = Signal::from_fn(lhs.domain(), |c| if c == 0 { mass } else { Complex64::new(0.0, 0.0) });
    Ok(Check::signals_equal("periodized zero extension", &lhs, &rhs, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::rng::{random_signal, random_window, seeded};
    use crate::subgroup::all_subgroups;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z6_even(weight: Ratio<i64>) -> (GroupSpec, Subgroup) {
        let g = GroupSpec::counting(&[6]).unwrap();
        let h = Subgroup::from_elements(&g, &[0, 2, 4], weight).unwrap();
        (g, h)
    }

    #[test]
    fn restriction_examples() {
        let (g, h) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g.clone());
        let f = Signal::from_real(&d, &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(restrict(&f, &h).unwrap().values(), &[c(0.0), c(2.0), c(4.0)]);
        let whole = Subgroup::whole(&g, g.weight());
        assert_eq!(restrict(&f, &whole).unwrap().values(), f.values());
        let r = restrict(&Signal::delta(&d, 0), &h).unwrap();
        assert_eq!(r, Signal::delta(r.domain(), 0));
    }

    #[test]
    fn periodization_examples() {
        let (g, h) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g.clone());
        let p = periodize(&Signal::delta(&d, 0), &h).unwrap();
        assert_eq!(p.values(), &[c(1.0), c(0.0)]);
        let trivial = Subgroup::trivial(&g, Ratio::from_integer(1));
        let f = Signal::from_real(&d, &[1.0, -2.0, 0.5, 0.0, 3.0, 1.0]).unwrap();
        assert_eq!(periodize(&f, &trivial).unwrap().values(), f.values());
        let whole = Subgroup::whole(&g, Ratio::new(1, 3));
        let p = periodize(&f, &whole).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p.get(0) - c(3.5 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn weil_hand_count() {
        let (g, h) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g);
        let (l, r) = weil_check(&Signal::constant(&d, c(1.0)), &h).unwrap();
        assert_eq!((l, r), (c(6.0), c(6.0)));
        let (l, r) = weil_check(&Signal::zeros(&d), &h).unwrap();
        assert_eq!((l, r), (c(0.0), c(0.0)));
    }

    #[test]
    fn poisson_hand_example() {
        let (g, h) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g.clone());
        let p = poisson_check(&Signal::delta(&d, 0), &h).unwrap();
        // f^ = 1 everywhere, |H^perp| = 2, w_{H^perp} = 1/2.
        assert!((p.subgroup_sum - c(1.0)).norm() < 1e-15);
        assert!((p.annihilator_sum - c(1.0)).norm() < 1e-15);
        assert!((p.normalized.unwrap() - c(1.0)).norm() < 1e-15);
        let whole = Subgroup::whole(&g, Ratio::new(2, 5));
        let mut rng = seeded(1);
        let f = random_signal(&d, &mut rng);
        let p = poisson_check(&f, &whole).unwrap();
        let w_perp = derive_measures(&whole).h_perp;
        let zero_freq = fourier(&f).get(0) * weight_to_f64(&w_perp);
        assert!((p.annihilator_sum - zero_freq).norm() < 1e-14);
        assert!(p.normalized.is_none());
    }

    #[test]
    fn sweep_all_subgroups() {
        let mut rng = seeded(2);
        for (factors, w) in [(vec![12], Ratio::new(1, 3)), (vec![2, 6], Ratio::new(5, 2))] {
            let g = GroupSpec::new(factors, w).unwrap();
            let d = Domain::Group(g.clone());
            for wh in [Ratio::from_integer(1), Ratio::new(2, 7)] {
                for h in all_subgroups(&g, wh) {
                    let f = random_signal(&d, &mut rng);
                    let k = random_signal(&d, &mut rng);
                    let (l, r) = weil_check(&f, &h).unwrap();
                    assert!((l - r).norm() < 1e-12);
                    let p = poisson_check(&f, &h).unwrap();
                    assert!((p.subgroup_sum - p.annihilator_sum).norm() < 1e-10);
                    if let Some(n) = p.normalized {
                        assert!((p.subgroup_sum - n).norm() < 1e-10);
                    }
                    let (a, b) = restriction_fourier_identity(&f, &h).unwrap();
                    assert!(a.max_abs_diff(&b).unwrap() < 1e-10);
                    for chk in periodization_checks(&f, &k, &h, 1e-10).unwrap() {
                        assert!(chk.passed(), "{chk:?}");
                    }
                    let phi = random_signal(&Domain::subgroup(&h), &mut rng);
                    assert!(periodize_zero_extension_check(&phi, &h, 1e-12).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn zero_extension_norm_equality() {
        let mut rng = seeded(3);
        let (g, _) = z6_even(Ratio::from_integer(1));
        for wh in [g.weight(), Ratio::new(3, 4)] {
            let h = Subgroup::from_elements(&g, &[0, 2, 4], wh).unwrap();
            let hd = Domain::subgroup(&h);
            let phi = random_signal(&hd, &mut rng);
            let win = random_window(&hd, &mut rng);
            let (l, r) = zero_extension_norms(&phi, &win, &h).unwrap();
            assert!((l - r).abs() <= 1e-9 * l, "{l} {r}");
            if wh == g.weight() {
                // Restricted Haar measure: the literal equality.
                assert!((l - s0(&phi, &win).unwrap()).abs() <= 1e-9 * l);
            }
        }
        let whole = Subgroup::whole(&g, g.weight());
        let d = Domain::Group(g.clone());
        let f = random_signal(&d, &mut rng);
        let phi = restrict(&f, &whole).unwrap();
        assert_eq!(zero_extend(&phi, &whole).unwrap(), f);
        let h = Subgroup::from_elements(&g, &[0, 2, 4], g.weight()).unwrap();
        let e = zero_extend(&Signal::delta(&Domain::subgroup(&h), 0), &h).unwrap();
        assert_eq!(e, Signal::delta(&d, 0));
    }

    #[test]
    fn coset_norm_single_coset_and_whole_group() {
        let mut rng = seeded(4);
        let (g, h) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g.clone());
        let gh = random_window(&Domain::subgroup(&h), &mut rng);
        let phi = random_signal(&Domain::subgroup(&h), &mut rng);
        let f = zero_extend(&phi, &h).unwrap();
        let v = coset_decomposition_norm(&f, &h, &gh).unwrap();
        assert!((v - s0(&phi, &gh).unwrap()).abs() < 1e-12);
        let whole = Subgroup::whole(&g, g.weight());
        let f = random_signal(&d, &mut rng);
        let gw = random_window(&d, &mut rng);
        let v = coset_decomposition_norm(&f, &whole, &gw.reinterpret(&Domain::subgroup(&whole)).unwrap()).unwrap();
        assert!((v - s0(&f, &gw).unwrap()).abs() < 1e-12 * v);
        assert!(coset_decomposition_norm(&f, &h, &Signal::zeros(&Domain::subgroup(&h))).is_err());
    }

    #[test]
    fn coset_norm_upper_bound_and_ratio() {
        let mut rng = seeded(5);
        let (g, _) = z6_even(Ratio::from_integer(1));
        let d = Domain::Group(g.clone());
        for wh in [g.weight(), Ratio::new(2, 3)] {
            let h = Subgroup::from_elements(&g, &[0, 2, 4], wh).unwrap();
            let gh = random_window(&Domain::subgroup(&h), &mut rng);
            let mut min_ratio = f64::INFINITY;
            for _ in 0..100 {
                let f = random_signal(&d, &mut rng);
                let (full, bound) = coset_norm_bound(&f, &h, &gh).unwrap();
                assert!(full <= bound * (1.0 + 1e-9));
                min_ratio = min_ratio.min(full / bound);
            }
            assert!(min_ratio > 1e-3, "{min_ratio}");
        }
    }

    proptest! {
        #[test]
        fn poisson_holds_for_random_subgroup(seed in 0u64..500, pick in 0usize..64) {
            let g = GroupSpec::new(vec![2, 4], Ratio::new(1, 2)).unwrap();
            let subs = all_subgroups(&g, Ratio::new(3, 2));
            let h = &subs[pick % subs.len()];
            let mut rng = seeded(seed);
            let f = random_signal(&Domain::Group(g.clone()), &mut rng);
            let p = poisson_check(&f, h).unwrap();
            prop_assert!((p.subgroup_sum - p.annihilator_sum).norm() < 1e-10);
        }
    }
}
