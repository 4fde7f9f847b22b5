//! Verification suites run by `s0calc verify`.
//!
//! Each suite draws its own random stream from `seed + offset(suite)`, so a
//! suite gives the same checks alone or inside `all`. Repeated trials of one
//! identity fold into a single worst-case check.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use s0calc_core::bp::atomic_norm_bp;
use s0calc_core::check::{Check, Tally, ABS_FLOOR};
use s0calc_core::decomp::{
    build_representation, bupu_bound_checks, bupu_from_dual_subgroup, bupu_from_subgroup, representation_inequality_check,
    t_norm, u_norm, RepresentationParams,
};
use s0calc_core::duality::{
    banach_adjoint_extend, dual_norm_oracle, fourier_functional, minfty_norm, s0_membership, smoothing_check,
    tensor_functional, Functional, DUAL_ORACLE_MAX_ORDER,
};
use s0calc_core::fourier::{fourier, fourier_direct, inverse_fourier};
use s0calc_core::gabor::{full_lattice, phase_group, GaborSystem};
use s0calc_core::io::{kernel_from_json, kernel_to_json};
use s0calc_core::kernel::{
    compose_kernels, kernel_to_operator, operator_bilinear_form, operator_to_kernel, tensor_correspondence, KernelFunctional,
};
use s0calc_core::operators::{catalog, commutation_extract, fourier_operator, isomorphism_norm_check, Operator};
use s0calc_core::rng::{random_phase_point, random_signal, random_window, seeded, TestRng};
use s0calc_core::signal::tensor;
use s0calc_core::subcalc::{
    coset_norm_bound, periodization_checks, periodize_zero_extension_check, poisson_check, restriction_fourier_identity,
    weil_check, zero_extension_norms,
};
use s0calc_core::subgroup::all_subgroups;
use s0calc_core::tf::{
    banach_algebra_check, canonical_coefficients, coefficient_l1, stft_embedding_checks, cross_window_bound,
    equivalence_constants, minimality_instance_check, moyal_orthogonality, norm_symmetries_check, s0, s0_norm,
    sample_exponents, stft, stft_adjoint, stft_direct, stft_correlation_bound, stft_norm_identity, stft_via_asym,
    synthesize, tensor_norm_identity, NormMethod,
};
use s0calc_core::windows::{constant_window, delta_window};
use s0calc_core::{Domain, GroupElement, GroupSpec, Result, Subgroup};

/// Largest group on which basis pursuit runs inside a suite.
pub const BP_MAX_ORDER: usize = 12;
/// Certified relative gap requested from the dual-norm oracle.
pub const ORACLE_TOL: f64 = 1e-4;
/// Random signals whose Rayleigh quotient is tested per Gabor trial.
pub const RAYLEIGH_SAMPLES: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fourier,
    Stft,
    Norms,
    Poisson,
    Operators,
    Gabor,
    Kernel,
    Bupu,
    Dual,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 9] = [
        Suite::Fourier,
        Suite::Stft,
        Suite::Norms,
        Suite::Poisson,
        Suite::Operators,
        Suite::Gabor,
        Suite::Kernel,
        Suite::Bupu,
        Suite::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fourier => "fourier",
            Suite::Stft => "stft",
            Suite::Norms => "norms",
            Suite::Poisson => "poisson",
            Suite::Operators => "operators",
            Suite::Gabor => "gabor",
            Suite::Kernel => "kernel",
            Suite::Bupu => "bupu",
            Suite::Dual => "dual",
            Suite::All => "all",
        }
    }

    fn seed_offset(self) -> u64 {
        let pos = Suite::INDIVIDUAL.iter().position(|&s| s == self).unwrap_or(0) as u64;
        pos.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub group: GroupSpec,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Collects checks under `"<suite>: <name>"`, folding repeats of one name.
struct Collector {
    suite: &'static str,
    tallies: BTreeMap<String, Tally>,
}

impl Collector {
    fn new(suite: Suite) -> Collector {
        Collector { suite: suite.name(), tallies: BTreeMap::new() }
    }

    fn push(&mut self, c: Check) {
        let name = format!("{}: {}", self.suite, c.name);
        self.tallies.entry(name.clone()).or_insert_with(|| Tally::new(name)).push(c);
    }

    fn extend(&mut self, checks: Vec<Check>) {
        for c in checks {
            self.push(c);
        }
    }

    fn finish(self) -> Vec<Check> {
        self.tallies.into_values().map(Tally::finish).collect()
    }
}

fn complex_equal(name: &str, a: Complex64, b: Complex64, rel: f64) -> Check {
    let tol = (rel * a.norm().max(b.norm())).max(ABS_FLOOR);
    Check::from_error(name, (a - b).norm(), tol, format!("lhs={a:.12e} rhs={b:.12e}"))
}

fn max_entry(t: &Operator) -> f64 {
    t.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn operators_equal(name: &str, a: &Operator, b: &Operator, rel: f64) -> Check {
    let err = (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = (rel * max_entry(a).max(max_entry(b))).max(ABS_FLOOR);
    Check::from_error(name, err, tol, format!("{}x{}", a.matrix().nrows(), a.matrix().ncols()))
}

/// Runs one suite, or every suite in parallel for [`Suite::All`]. Checks come back sorted by name.
pub fn run(suite: Suite, cfg: &Config) -> Vec<Check> {
    let mut checks = match suite {
        Suite::All => std::thread::scope(|scope| {
            let handles: Vec<_> = Suite::INDIVIDUAL.iter().map(|&s| scope.spawn(move || run_one(s, cfg))).collect();
            handles.into_iter().flat_map(|h| h.join().expect("suite thread panicked")).collect()
        }),
        s => run_one(s, cfg),
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    checks
}

fn run_one(suite: Suite, cfg: &Config) -> Vec<Check> {
    let mut c = Collector::new(suite);
    let mut rng = seeded(cfg.seed.wrapping_add(suite.seed_offset()));
    let outcome = match suite {
        Suite::Fourier => fourier_suite(cfg, &mut rng, &mut c),
        Suite::Stft => stft_suite(cfg, &mut rng, &mut c),
        Suite::Norms => norms_suite(cfg, &mut rng, &mut c),
        Suite::Poisson => poisson_suite(cfg, &mut rng, &mut c),
        Suite::Operators => operators_suite(cfg, &mut rng, &mut c),
        Suite::Gabor => gabor_suite(cfg, &mut rng, &mut c),
        Suite::Kernel => kernel_suite(cfg, &mut rng, &mut c),
        Suite::Bupu => bupu_suite(cfg, &mut rng, &mut c),
        Suite::Dual => dual_suite(cfg, &mut rng, &mut c),
        Suite::All => unreachable!("expanded by run"),
    };
    if let Err(e) = outcome {
        c.push(Check::failed_with("suite aborted", e));
    }
    c.finish()
}

fn domain(cfg: &Config) -> Domain {
    Domain::Group(cfg.group.clone())
}

fn fourier_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let d = domain(cfg);
    let tol = cfg.tol;
    for _ in 0..cfg.trials {
        let f = random_signal(&d, rng);
        let k = random_signal(&d, rng);
        let fh = fourier(&f);
        let kh = fourier(&k);
        c.push(Check::signals_equal("inverse transform recovers the signal", &inverse_fourier(&fh), &f, tol));
        c.push(Check::equal("Parseval", f.l2_norm(), fh.l2_norm(), tol));
        c.push(complex_equal("Plancherel inner product", f.inner(&k)?, fh.inner(&kh)?, tol));
        c.push(Check::signals_equal("fast transform matches the character sum", &fh, &fourier_direct(&f), tol));
        c.push(Check::signals_equal("convolution theorem", &fourier(&f.convolve(&k)?), &fh.multiply(&kh)?, tol));
    }
    Ok(())
}

fn stft_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let d = domain(cfg);
    let tol = cfg.tol;
    for _ in 0..cfg.trials {
        let f1 = random_signal(&d, rng);
        let f2 = random_signal(&d, rng);
        let g1 = random_window(&d, rng);
        let g2 = random_window(&d, rng);
        let nu1 = random_phase_point(&d, rng);
        let nu2 = random_phase_point(&d, rng);
        let v = stft(&f1, &g1)?;
        c.push(Check::signals_equal("asymmetric-coordinate route matches", &stft_via_asym(&f1, &g1)?, &v, tol));
        c.push(Check::signals_equal("direct inner products match", &stft_direct(&f1, &g1)?, &v, tol));
        let energy = g1.l2_norm().powi(2);
        c.push(Check::signals_equal("adjoint inverts up to the window energy", &stft_adjoint(&v, &g1)?, &f1.scale_real(energy), tol));
        let coeffs = canonical_coefficients(&f1, &g1)?;
        c.push(Check::signals_equal("canonical coefficients resynthesize", &synthesize(&coeffs, &g1)?, &f1, tol));
        let (lhs, rhs) = moyal_orthogonality(&f1, &f2, &g1, &g2)?;
        c.push(complex_equal("orthogonality relation", lhs, rhs, tol));
        let (lhs, rhs) = stft_correlation_bound(&f1, &f2, &g1, &g2, nu1)?;
        c.push(Check::at_most("pointwise bound by the correlated transforms", lhs, rhs, tol));
        let (lhs, rhs) = cross_window_bound(&f1, &g1)?;
        c.push(Check::at_most("cross-window bound", lhs, rhs, tol));
        c.extend(stft_embedding_checks(&f1, &g1, tol)?);
        c.extend(norm_symmetries_check(&f1, &g1, nu1, nu2, tol)?);
    }
    Ok(())
}

fn norms_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let d = domain(cfg);
    let tol = cfg.tol;
    let counting = Domain::Group(GroupSpec::counting(cfg.group.factors())?);
    let normalized = Domain::Group(GroupSpec::normalized(cfg.group.factors())?);
    for _ in 0..cfg.trials {
        let f = random_signal(&d, rng);
        let f2 = random_signal(&d, rng);
        let g = random_window(&d, rng);
        let g1 = random_window(&d, rng);
        let g2 = random_window(&d, rng);
        let h = random_window(&d, rng);

        let nf = s0(&f, &g)?;
        for m in [NormMethod::Convolution, NormMethod::FourierAlgebra] {
            c.push(Check::equal(format!("{m} route matches the stft route"), s0_norm(&f, &g, m)?.value, nf, tol));
        }

        let fc = f.reinterpret(&counting)?;
        c.push(Check::equal("delta window on counting measure gives L1", s0(&fc, &delta_window(&counting))?, fc.l1_norm(), tol));
        let fnorm = f.reinterpret(&normalized)?;
        c.push(Check::equal(
            "constant window on normalized measure gives A(G)",
            s0(&fnorm, &constant_window(&normalized))?,
            fnorm.a_norm(),
            tol,
        ));

        let (lo, hi) = equivalence_constants(&g1, &g2)?;
        let (n1, n2) = (s0(&f, &g1)?, s0(&f, &g2)?);
        c.push(Check::at_most("window change lower constant", lo * n2, n1, tol));
        c.push(Check::at_most("window change upper constant", n1, hi * n2, tol));

        c.extend(banach_algebra_check(&f, &f2, &g, tol)?);
        let (lhs, rhs) = tensor_norm_identity(&f, &f2, &g1, &g2)?;
        c.push(Check::equal("tensor product norm factorizes", lhs, rhs, tol));
        let (lhs, rhs) = stft_norm_identity(&f, &h, &g1, &g2)?;
        c.push(Check::equal("STFT norm factorizes", lhs, rhs, tol));
        for p in sample_exponents() {
            let (lhs, rhs) = minimality_instance_check(&f, &g, p)?;
            c.push(Check::at_most(format!("L^{p} bound by the S0 norm"), lhs, rhs, tol));
        }

        let energy = g.l2_norm().powi(2);
        let coeffs = canonical_coefficients(&f, &g)?;
        c.push(Check::equal("canonical coefficient mass", coefficient_l1(&coeffs) * energy, nf, tol));
        let names = ["atomic norm lower sandwich", "atomic norm upper sandwich"];
        if d.len() <= BP_MAX_ORDER {
            let sol = atomic_norm_bp(&f, &g, 1e-8)?;
            // Solver slack of 2%, as the value is only approximately minimal.
            c.push(Check::at_most(names[0], energy * sol.value, nf, 0.02));
            c.push(Check::at_most(names[1], nf, s0(&g, &g)? * sol.value, 0.02));
        } else {
            for n in names {
                c.push(Check::skip(n, format!("basis pursuit is limited to |G| <= {BP_MAX_ORDER}")));
            }
        }
    }
    Ok(())
}

fn poisson_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let d = domain(cfg);
    let tol = cfg.tol;
    // Subgroup weights cycle through the trials.
    let weights = [Ratio::from_integer(1), Ratio::new(1, 2), Ratio::new(3, 1)];
    let sweeps: Vec<Vec<Subgroup>> = weights.iter().map(|&w| all_subgroups(&cfg.group, w)).collect();
    for t in 0..cfg.trials {
        for h in &sweeps[t % weights.len()] {
            let dh = Domain::subgroup(h);
            let f = random_signal(&d, rng);
            let k = random_signal(&d, rng);
            let phi = random_signal(&dh, rng);
            let g_h = random_window(&dh, rng);
            let p = poisson_check(&f, h)?;
            c.push(complex_equal("Poisson summation", p.subgroup_sum, p.annihilator_sum, tol));
            if let Some(n) = p.normalized {
                c.push(complex_equal("Poisson summation with the quotient normalization", p.subgroup_sum, n, tol));
            }
            let (lhs, rhs) = weil_check(&f, h)?;
            c.push(complex_equal("Weil formula", lhs, rhs, tol));
            let (lhs, rhs) = restriction_fourier_identity(&f, h)?;
            c.push(Check::signals_equal("restriction through the annihilator", &lhs, &rhs, tol));
            let (lhs, rhs) = zero_extension_norms(&phi, &g_h, h)?;
            c.push(Check::equal("zero extension preserves the S0 norm", lhs, rhs, tol));
            let (lhs, rhs) = coset_norm_bound(&f, h, &g_h)?;
            c.push(Check::at_most("coset decomposition bound", lhs, rhs, tol));
            c.extend(periodization_checks(&f, &k, h, tol)?);
            c.push(periodize_zero_extension_check(&phi, h, tol)?);
        }
    }
    Ok(())
}

fn operators_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let entries = catalog(&cfg.group)?;
    for e in &entries {
        let name = format!("{}: commutation relation", e.name());
        c.push(match commutation_extract(&e.operator, &e.alpha) {
            Ok(_) => Check::boolean(name, true, e.alpha.description.clone()),
            Err(err) => Check::failed_with(name, err),
        });
    }
    for _ in 0..cfg.trials {
        for e in &entries {
            let (d1, d2) = (e.operator.input(), e.operator.output());
            let f1 = random_signal(d1, rng);
            let g1 = random_window(d1, rng);
            let f2 = random_signal(d2, rng);
            let g2 = random_window(d2, rng);
            c.extend(isomorphism_norm_check(e, &f1, &g1, &f2, &g2, cfg.tol)?);
        }
    }
    Ok(())
}

/// The lattice `verify` and `gabor` use by default: halve the largest even
/// factor `n >= 4` in time and in frequency (index 4), or the full phase space.
pub fn default_lattice(g: &GroupSpec) -> Result<Subgroup> {
    let factors = g.factors();
    let pick = (0..factors.len()).filter(|&j| factors[j] >= 4 && factors[j] % 2 == 0).max_by_key(|&j| (factors[j], j));
    let Some(k) = pick else {
        return Ok(full_lattice(g));
    };
    let pg = phase_group(g);
    let r = factors.len();
    let mut gens = Vec::with_capacity(2 * r);
    for j in 0..2 * r {
        let mut coords = vec![0i64; 2 * r];
        coords[j] = if j % r == k { 2 } else { 1 };
        gens.push(GroupElement::new(&pg, &coords)?);
    }
    Subgroup::generated(&pg, &gens, pg.weight())
}

fn gabor_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let d = domain(cfg);
    let tol = cfg.tol;
    let lattice = default_lattice(&cfg.group)?;
    for _ in 0..cfg.trials {
        let w = random_window(&d, rng);
        let sys = GaborSystem::new(w.clone(), lattice.clone())?;
        let samples: Vec<_> = (0..3).map(|_| random_phase_point(&d, rng)).collect();
        c.extend(s0calc_core::gabor::frame_operator_checks(&sys, &samples, tol)?);
        let b = sys.frame_bounds()?;
        for _ in 0..RAYLEIGH_SAMPLES {
            let f = random_window(&d, rng);
            let q = sys.rayleigh_quotient(&f)?;
            c.push(Check::at_most("Rayleigh quotient above the lower frame bound", b.lower, q, tol));
            c.push(Check::at_most("Rayleigh quotient below the upper frame bound", q, b.upper, tol));
        }
        let dual = sys.dual_window()?;
        let f = random_signal(&d, rng);
        c.push(Check::signals_equal("dual window reconstruction", &sys.reconstruct(&f, &dual)?, &f, tol));
        let tight = GaborSystem::new(w.clone(), full_lattice(&cfg.group))?.frame_bounds()?;
        let energy = w.l2_norm().powi(2);
        c.push(Check::equal("full lattice lower bound is the window energy", tight.lower, energy, tol));
        c.push(Check::equal("full lattice upper bound is the window energy", tight.upper, energy, tol));
    }
    Ok(())
}

fn kernel_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let tol = cfg.tol;
    let d1 = domain(cfg);
    let d2 = Domain::Group(GroupSpec::new(vec![4], Ratio::new(1, 2))?);
    let d3 = Domain::Group(GroupSpec::new(vec![3], Ratio::new(3, 1))?);
    for _ in 0..cfg.trials {
        let k = KernelFunctional::from_density(random_signal(&Domain::product(&d1, &d2), rng))?;
        let t = kernel_to_operator(&k);
        let back = operator_to_kernel(&t)?;
        c.push(Check::signals_equal("kernel survives the operator round trip", back.density(), k.density(), tol));
        c.push(operators_equal("operator survives the kernel round trip", &kernel_to_operator(&back), &t, tol));

        let f1 = random_signal(&d1, rng);
        let f2 = random_signal(&d2, rng);
        let lhs = operator_bilinear_form(&t, &f1, &f2)?;
        let rhs = k.functional().pair(&tensor(&f1, &f2))?;
        c.push(complex_equal("operator pairing equals the kernel pairing", lhs, rhs, tol));

        let k2 = KernelFunctional::from_density(random_signal(&Domain::product(&d2, &d3), rng))?;
        let composed = kernel_to_operator(&compose_kernels(&k, &k2)?);
        c.push(operators_equal("composition contracts the kernels", &composed, &kernel_to_operator(&k2).compose(&t)?, tol));

        let tc = tensor_correspondence(&t)?;
        // Basis pairings are matrix entries times the output weight.
        let scale = (tol * max_entry(&t) * d2.weight_f64()).max(ABS_FLOOR);
        c.push(Check::from_error("bilinear form matches the kernel on basis tensors", tc.basis_error, scale, ""));
        c.push(Check::from_error(
            "operator resynthesized from its bilinear form",
            tc.resynthesis_error,
            (tol * max_entry(&t)).max(ABS_FLOOR),
            "",
        ));

        let exact = kernel_from_json(&kernel_to_json(&k)?)? == k;
        c.push(Check::boolean("kernel file round trip is exact", exact, ""));
    }
    Ok(())
}

fn small_set(d: &Domain, rng: &mut TestRng) -> Vec<usize> {
    let mut set = vec![d.zero(), random_phase_point(d, rng).x];
    set.sort_unstable();
    set.dedup();
    set
}

fn bupu_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let tol = cfg.tol;
    let d = domain(cfg);
    let dual = d.dual();
    let subgroups = all_subgroups(&cfg.group, cfg.group.weight());
    let families: Vec<_> = subgroups
        .iter()
        .map(|h| {
            let v = h.annihilator();
            (bupu_from_subgroup(h), bupu_from_dual_subgroup(&v), bupu_from_subgroup(&v))
        })
        .collect();
    for (time, freq, _) in &families {
        c.extend(time.axioms().checks(time.side()));
        c.extend(freq.axioms().checks(freq.side()));
    }
    for _ in 0..cfg.trials {
        let f = random_signal(&d, rng);
        let w = random_window(&d, rng);
        let m = build_representation(&f, &RepresentationParams::M { support: small_set(&d, rng) })?;
        let n = build_representation(&f, &RepresentationParams::N { dual_support: small_set(&dual, rng) })?;
        let fh = fourier(&f);
        for (time, freq, time_hat) in &families {
            c.extend(bupu_bound_checks(&f, time, &w, &m, tol)?);
            c.extend(bupu_bound_checks(&f, freq, &w, &n, tol)?);
            c.push(Check::equal("frequency partition norm is the time norm of the transform", u_norm(&f, freq)?, t_norm(&fh, time_hat)?, tol));
        }
        let params = [
            RepresentationParams::O { window: random_window(&d, rng), h: random_window(&d, rng) },
            RepresentationParams::P { window: random_window(&d, rng), h: random_window(&d, rng) },
            RepresentationParams::Q { window: random_window(&d, rng), h: random_window(&d, rng) },
            RepresentationParams::R { window: w.clone(), h1: random_window(&d, rng), h2: random_window(&d, rng) },
            RepresentationParams::L { window: random_window(&d, rng) },
        ];
        c.extend(representation_inequality_check(&m, &f, &w, tol)?);
        c.extend(representation_inequality_check(&n, &f, &w, tol)?);
        for p in &params {
            c.extend(representation_inequality_check(&build_representation(&f, p)?, &f, &w, tol)?);
        }
    }
    Ok(())
}

fn dual_suite(cfg: &Config, rng: &mut TestRng, c: &mut Collector) -> Result<()> {
    let tol = cfg.tol;
    let d = domain(cfg);
    let dual = d.dual();
    let small = Domain::Group(GroupSpec::new(vec![3], Ratio::new(1, 2))?);
    let subgroups = all_subgroups(&cfg.group, Ratio::new(2, 3));
    let ft = fourier_operator(&d).operator;
    let oracle_names = [
        "dual norm lower constant",
        "dual norm upper constant",
        "delta functional bound",
        "smoothing by convolution then multiplication",
        "smoothing by multiplication then convolution",
    ];
    for _ in 0..cfg.trials {
        let f = random_signal(&d, rng);
        let s = random_signal(&d, rng);
        let g = random_window(&d, rng);
        let sigma = Functional::induced(&s);

        let x = random_phase_point(&d, rng).x;
        c.push(complex_equal("delta functional samples the signal", Functional::delta(&d, x).pair(&f)?, f.get(x), tol));
        for h in &subgroups {
            let direct: Complex64 = h.elements().iter().map(|&e| f.get(e)).sum::<Complex64>() * h.weight_f64();
            c.push(complex_equal("subgroup Haar functional sums over the subgroup", Functional::haar_on_subgroup(h).pair(&f)?, direct, tol));
        }

        let on_dual = random_signal(&dual, rng);
        let lhs = fourier_functional(&sigma).pair(&on_dual)?;
        c.push(complex_equal("Fourier functional pairing", lhs, sigma.pair(&fourier(&on_dual))?, tol));
        let ext = banach_adjoint_extend(&ft, &Functional::induced(&f))?;
        let direct = Functional::induced(&ft.apply(&f)?);
        let scale = (tol * direct.density().max_abs() * dual.weight_f64()).max(ABS_FLOOR);
        c.push(Check::from_error("adjoint extension of the Fourier transform", ext.max_pairing_diff(&direct)?, scale, ""));

        let (norm, recovered) = s0_membership(&sigma, &g)?;
        c.push(Check::signals_equal("S0 membership recovers the density", &recovered, &s, tol));
        c.push(Check::equal("membership norm is the S0 norm of the density", norm, s0(&s, &g)?, tol));

        let m = minfty_norm(&sigma, &g)?;
        let nu = random_phase_point(&d, rng);
        c.push(Check::equal("M-infinity norm is shift invariant", minfty_norm(&sigma, &g.tf_shift(nu))?, m, tol));
        let sigma2 = Functional::induced(&random_signal(&small, rng));
        let g2 = random_window(&small, rng);
        let lhs = minfty_norm(&tensor_functional(&sigma, &sigma2), &tensor(&g, &g2))?;
        c.push(Check::equal("M-infinity norm of a tensor functional factorizes", lhs, m * minfty_norm(&sigma2, &g2)?, tol));

        if d.len() <= DUAL_ORACLE_MAX_ORDER {
            let est = dual_norm_oracle(&sigma, &g, ORACLE_TOL)?;
            c.push(Check::at_most(oracle_names[0], m / s0(&g, &g)?, est.upper, tol));
            c.push(Check::at_most(oracle_names[1], est.lower, m / g.l2_norm().powi(2), tol));
            let delta = dual_norm_oracle(&Functional::delta(&d, x), &g, ORACLE_TOL)?;
            c.push(Check::at_most(oracle_names[2], delta.lower, 1.0 / g.l1_norm(), tol));
            let h = random_signal(&d, rng);
            let r = smoothing_check(&sigma, &f, &h, &g, ORACLE_TOL)?;
            c.push(Check::at_most(oracle_names[3], r.conv_then_mult_norm, r.conv_then_mult_bound, tol));
            c.push(Check::at_most(oracle_names[4], r.mult_then_conv_norm, r.mult_then_conv_bound, tol));
        } else {
            for n in oracle_names {
                c.push(Check::skip(n, format!("dual-norm oracle is limited to |G| <= {DUAL_ORACLE_MAX_ORDER}")));
            }
        }
    }
    Ok(())
}
