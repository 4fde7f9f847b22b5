//! The fourteen acceptance criteria, each at its stated tolerance.
//!
//! Every criterion prints one PASS/FAIL line straight to stdout (so the lines
//! survive libtest's output capture), and the test fails if any criterion does.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::Ratio;

use s0calc::suites::default_lattice;
use s0calc_core::bp::atomic_norm_bp;
use s0calc_core::check::{Check, ABS_FLOOR};
use s0calc_core::decomp::{bupu_bound_checks, bupu_from_dual_subgroup, bupu_from_subgroup, build_representation, RepresentationParams};
use s0calc_core::duality::{dual_norm_oracle, minfty_norm, Functional};
use s0calc_core::fourier::{fourier, inverse_fourier};
use s0calc_core::gabor::{frame_operator_checks, GaborSystem};
use s0calc_core::kernel::{kernel_to_operator, operator_to_kernel, tensor_correspondence, KernelFunctional};
use s0calc_core::operators::{catalog, commutation_extract, isomorphism_norm_check};
use s0calc_core::rng::{random_phase_point, random_signal, random_window, seeded, TestRng};
use s0calc_core::subcalc::{poisson_check, restriction_fourier_identity, weil_check, zero_extension_norms};
use s0calc_core::subgroup::all_subgroups;
use s0calc_core::tf::{
    canonical_coefficients, coefficient_l1, stft_embedding_checks, equivalence_constants, moyal_orthogonality,
    phase_point, s0, s0_norm, stft_correlation_bound, synthesize, NormMethod,
};
use s0calc_core::windows::{constant_window, delta_window};
use s0calc_core::{Domain, GroupSpec, Result};

/// Cyclic and product groups with assorted rational weights.
const GROUPS: [&str; 6] = ["4@1/3", "6@5/2", "8@3/7", "12", "2x3@2/5", "2x4x3@7/4"];

fn group(spec: &str) -> GroupSpec {
    spec.parse().expect("valid group spec")
}

fn domain(spec: &str) -> Domain {
    Domain::Group(group(spec))
}

fn complex_equal(name: &str, a: Complex64, b: Complex64, rel: f64) -> Check {
    let tol = (rel * a.norm().max(b.norm())).max(ABS_FLOOR);
    Check::from_error(name, (a - b).norm(), tol, format!("lhs={a:.6e} rhs={b:.6e}"))
}

/// Worst check of a criterion, or the error that stopped it.
fn verdict(outcome: Result<Vec<Check>>) -> (bool, String) {
    match outcome {
        Err(e) => (false, format!("aborted: {e}")),
        Ok(checks) if checks.is_empty() => (false, "no checks ran".into()),
        Ok(checks) => {
            let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
            if let Some(c) = failed.first() {
                return (false, format!("{} failing, first: {} err={:.3e} tol={:.3e} {}", failed.len(), c.name, c.max_abs_err, c.tolerance, c.details));
            }
            let worst = checks
                .iter()
                .filter(|c| c.tolerance > 0.0)
                .max_by(|a, b| (a.max_abs_err / a.tolerance).total_cmp(&(b.max_abs_err / b.tolerance)))
                .map(|c| format!("; tightest: {} err={:.3e} tol={:.3e}", c.name, c.max_abs_err, c.tolerance))
                .unwrap_or_default();
            (true, format!("{} checks{worst}", checks.len()))
        }
    }
}

fn fourier_round_trip(rng: &mut TestRng) -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut out = Vec::new();
    for spec in GROUPS {
        let d = domain(spec);
        for _ in 0..100 {
            let f = random_signal(&d, rng);
            let fh = fourier(&f);
            out.push(Check::signals_equal(format!("{spec}: round trip"), &inverse_fourier(&fh), &f, 1e-12));
            out.push(Check::equal(format!("{spec}: Parseval"), f.l2_norm(), fh.l2_norm(), 1e-12));
        }
    }
    out.push(Check::at_most("runtime in seconds", start.elapsed().as_secs_f64(), 5.0, 0.0));
    Ok(out)
}

fn three_norm_routes(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in GROUPS {
        let d = domain(spec);
        for _ in 0..50 {
            let f = random_signal(&d, rng);
            let g = random_window(&d, rng);
            let a = s0_norm(&f, &g, NormMethod::Stft)?.value;
            let b = s0_norm(&f, &g, NormMethod::Convolution)?.value;
            let c = s0_norm(&f, &g, NormMethod::FourierAlgebra)?.value;
            out.push(Check::equal(format!("{spec}: stft vs convolution"), a, b, 1e-9));
            out.push(Check::equal(format!("{spec}: stft vs Fourier algebra"), a, c, 1e-9));
            out.push(Check::equal(format!("{spec}: convolution vs Fourier algebra"), b, c, 1e-9));
        }
    }
    Ok(out)
}

fn special_windows(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in GROUPS {
        let factors = group(spec).factors().to_vec();
        let counting = Domain::Group(GroupSpec::counting(&factors)?);
        let normalized = Domain::Group(GroupSpec::normalized(&factors)?);
        for _ in 0..50 {
            let f = random_signal(&counting, rng);
            out.push(Check::equal(format!("{spec}: delta window gives L1"), s0(&f, &delta_window(&counting))?, f.l1_norm(), 1e-10));
            let f = f.reinterpret(&normalized)?;
            out.push(Check::equal(format!("{spec}: constant window gives A(G)"), s0(&f, &constant_window(&normalized))?, f.a_norm(), 1e-10));
        }
    }
    Ok(out)
}

fn stft_relations(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in GROUPS {
        let d = domain(spec);
        for _ in 0..100 {
            let (f1, f2) = (random_signal(&d, rng), random_signal(&d, rng));
            let (g1, g2) = (random_window(&d, rng), random_window(&d, rng));
            let nu = random_phase_point(&d, rng);
            let (lhs, rhs) = moyal_orthogonality(&f1, &f2, &g1, &g2)?;
            out.push(complex_equal("orthogonality relation", lhs, rhs, 1e-9));
            let (lhs, rhs) = stft_correlation_bound(&f1, &f2, &g1, &g2, nu)?;
            out.push(Check::at_most("pointwise bound by the correlated transforms", lhs, rhs, 1e-12));
            out.extend(stft_embedding_checks(&f1, &g1, 1e-12)?);
        }
    }
    Ok(out)
}

fn window_change_sandwich(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in GROUPS {
        let d = domain(spec);
        for _ in 0..100 {
            let f = random_signal(&d, rng);
            let (g1, g2) = (random_window(&d, rng), random_window(&d, rng));
            let (lo, hi) = equivalence_constants(&g1, &g2)?;
            let (n1, n2) = (s0(&f, &g1)?, s0(&f, &g2)?);
            out.push(Check::at_most(format!("{spec}: lower constant"), lo * n2, n1, 1e-9));
            out.push(Check::at_most(format!("{spec}: upper constant"), n1, hi * n2, 1e-9));
        }
    }
    Ok(out)
}

/// Every subgroup of `Z_12` and of `Z_2 x Z_6`, with non-trivial weights.
fn subgroup_sweep() -> Vec<(GroupSpec, s0calc_core::Subgroup)> {
    let mut out = Vec::new();
    for (spec, w) in [("12", Ratio::new(1, 2)), ("2x6@1/3", Ratio::new(3, 1))] {
        let g = group(spec);
        for h in all_subgroups(&g, w) {
            out.push((g.clone(), h));
        }
    }
    out
}

fn summation_formulas(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (g, h) in subgroup_sweep() {
        let d = Domain::Group(g);
        for _ in 0..20 {
            let f = random_signal(&d, rng);
            let p = poisson_check(&f, &h)?;
            out.push(complex_equal("Poisson summation", p.subgroup_sum, p.annihilator_sum, 1e-10));
            if let Some(n) = p.normalized {
                out.push(complex_equal("Poisson summation, quotient normalization", p.subgroup_sum, n, 1e-10));
            }
            let (lhs, rhs) = weil_check(&f, &h)?;
            out.push(complex_equal("Weil formula", lhs, rhs, 1e-12));
        }
    }
    Ok(out)
}

fn restriction_and_extension(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (g, h) in subgroup_sweep() {
        let d = Domain::Group(g);
        let dh = Domain::subgroup(&h);
        for _ in 0..20 {
            let f = random_signal(&d, rng);
            let (lhs, rhs) = restriction_fourier_identity(&f, &h)?;
            out.push(Check::signals_equal("restriction through the annihilator", &lhs, &rhs, 1e-10));
            let (phi, gh) = (random_signal(&dh, rng), random_window(&dh, rng));
            let (lhs, rhs) = zero_extension_norms(&phi, &gh, &h)?;
            out.push(Check::equal("zero extension keeps the norm", lhs, rhs, 1e-9));
        }
    }
    Ok(out)
}

fn operator_invariance(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in ["6@1/2", "2x4", "2x3x4@2/3"] {
        for e in catalog(&group(spec))? {
            let name = format!("{spec} {}: commutation relation", e.name());
            out.push(match commutation_extract(&e.operator, &e.alpha) {
                Ok(_) => Check::boolean(name, true, ""),
                Err(err) => Check::failed_with(name, err),
            });
            let (d1, d2) = (e.operator.input().clone(), e.operator.output().clone());
            for _ in 0..20 {
                let (f1, g1) = (random_signal(&d1, rng), random_window(&d1, rng));
                let (f2, g2) = (random_signal(&d2, rng), random_window(&d2, rng));
                out.extend(isomorphism_norm_check(&e, &f1, &g1, &f2, &g2, 1e-9)?);
            }
        }
    }
    Ok(out)
}

fn gabor_frames(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in ["8", "12@1/3"] {
        let g = group(spec);
        let d = Domain::Group(g.clone());
        let lattice = default_lattice(&g)?;
        out.push(Check::boolean(format!("{spec}: lattice index is 4"), lattice.index() == 4, format!("index {}", lattice.index())));
        let sys = GaborSystem::new(random_window(&d, rng), lattice)?;
        let everywhere: Vec<_> = (0..d.len() * d.len()).map(|i| phase_point(&d, i)).collect();
        out.extend(frame_operator_checks(&sys, &everywhere, 1e-10)?);
        let b = sys.frame_bounds()?;
        for _ in 0..1000 {
            let q = sys.rayleigh_quotient(&random_window(&d, rng))?;
            out.push(Check::at_most(format!("{spec}: Rayleigh quotient above A"), b.lower, q, 1e-12));
            out.push(Check::at_most(format!("{spec}: Rayleigh quotient below B"), q, b.upper, 1e-12));
        }
        let dual = sys.dual_window()?;
        for _ in 0..20 {
            let f = random_signal(&d, rng);
            out.push(Check::signals_equal(format!("{spec}: dual window reconstruction"), &sys.reconstruct(&f, &dual)?, &f, 1e-8));
        }
    }
    Ok(out)
}

fn kernel_correspondence(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let d1 = domain("3@1/2");
    let d2 = domain("4@5/3");
    for _ in 0..20 {
        let k = KernelFunctional::from_density(random_signal(&Domain::product(&d1, &d2), rng))?;
        let t = kernel_to_operator(&k);
        let back = operator_to_kernel(&t)?;
        out.push(Check::signals_equal("kernel to operator and back", back.density(), k.density(), 1e-12));
        let err = (kernel_to_operator(&back).matrix() - t.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let scale = t.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max);
        out.push(Check::from_error("operator to kernel and back", err, (1e-12 * scale).max(ABS_FLOOR), ""));
        let tc = tensor_correspondence(&t)?;
        out.push(Check::from_error("bilinear form on every basis tensor", tc.basis_error, (1e-12 * scale).max(ABS_FLOOR), ""));
        out.push(Check::from_error("operator from its bilinear form", tc.resynthesis_error, (1e-12 * scale).max(ABS_FLOOR), ""));
    }
    Ok(out)
}

fn atomic_decomposition(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in GROUPS {
        let d = domain(spec);
        for _ in 0..20 {
            let f = random_signal(&d, rng);
            let g = random_window(&d, rng);
            let c = canonical_coefficients(&f, &g)?;
            out.push(Check::signals_equal(format!("{spec}: canonical resynthesis"), &synthesize(&c, &g)?, &f, 1e-10));
            out.push(Check::equal(format!("{spec}: coefficient mass"), coefficient_l1(&c) * g.l2_norm().powi(2), s0(&f, &g)?, 1e-9));
        }
    }
    for spec in ["4", "6"] {
        let d = domain(spec);
        for _ in 0..5 {
            let f = random_signal(&d, rng);
            let g = random_window(&d, rng);
            let sol = atomic_norm_bp(&f, &g, 1e-8)?;
            let nf = s0(&f, &g)?;
            out.push(Check::at_most(format!("{spec}: atomic norm lower sandwich"), g.l2_norm().powi(2) * sol.value, nf, 0.02));
            out.push(Check::at_most(format!("{spec}: atomic norm upper sandwich"), nf, s0(&g, &g)? * sol.value, 0.02));
        }
    }
    Ok(out)
}

fn dual_norm_sandwich(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in ["4", "6@1/2", "8@3", "2x4@2/5"] {
        let d = domain(spec);
        for _ in 0..5 {
            let sigma = Functional::induced(&random_signal(&d, rng));
            let g = random_window(&d, rng);
            let m = minfty_norm(&sigma, &g)?;
            let est = dual_norm_oracle(&sigma, &g, 1e-4)?;
            out.push(Check::at_most(format!("{spec}: oracle bracket width"), est.upper - est.lower, 1e-4 * est.upper, 0.0));
            out.push(Check::at_most(format!("{spec}: lower constant"), m / s0(&g, &g)?, est.upper, 1e-9));
            out.push(Check::at_most(format!("{spec}: upper constant"), est.lower, m / g.l2_norm().powi(2), 1e-9));
            let x = random_phase_point(&d, rng).x;
            let delta = dual_norm_oracle(&Functional::delta(&d, x), &g, 1e-4)?;
            out.push(Check::at_most(format!("{spec}: delta functional bound"), delta.lower, 1.0 / g.l1_norm(), 1e-9));
        }
    }
    Ok(out)
}

fn partitions_of_unity(rng: &mut TestRng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in ["12", "2x6@1/3"] {
        let g = group(spec);
        let d = Domain::Group(g.clone());
        let families: Vec<_> = all_subgroups(&g, g.weight())
            .iter()
            .map(|h| (bupu_from_subgroup(h), bupu_from_dual_subgroup(&h.annihilator())))
            .collect();
        for (time, freq) in &families {
            out.extend(time.axioms().checks(time.side()));
            out.extend(freq.axioms().checks(freq.side()));
        }
        for _ in 0..50 {
            let f = random_signal(&d, rng);
            let w = random_window(&d, rng);
            let m = build_representation(&f, &RepresentationParams::M { support: vec![d.zero()] })?;
            let n = build_representation(&f, &RepresentationParams::N { dual_support: vec![d.dual().zero()] })?;
            for (time, freq) in &families {
                out.extend(bupu_bound_checks(&f, time, &w, &m, 1e-9)?);
                out.extend(bupu_bound_checks(&f, freq, &w, &n, 1e-9)?);
            }
        }
    }
    Ok(out)
}

fn strip_wall_time(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"wall_time\"")).collect::<Vec<_>>().join("\n")
}

fn full_cli_run() -> Result<Vec<Check>> {
    let dir = std::env::temp_dir().join(format!("s0calc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let mut out = Vec::new();
    let mut reports = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("report{run}.json"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_s0calc"))
            .args(["verify", "--suite", "all", "--group", "2x3x4", "--trials", "25", "--seed", "42", "--json"])
            .arg(&path)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("spawn s0calc");
        let secs = start.elapsed().as_secs_f64();
        out.push(Check::boolean(format!("run {run} exits 0"), status.code() == Some(0), format!("{status}")));
        if run == 0 {
            out.push(Check::at_most("runtime in seconds", secs, 120.0, 0.0));
        }
        reports.push(std::fs::read_to_string(&path).unwrap_or_default());
    }
    let same = !reports[0].is_empty() && strip_wall_time(&reports[0]) == strip_wall_time(&reports[1]);
    out.push(Check::boolean("JSON identical apart from wall time", same, ""));
    let _ = std::fs::remove_dir_all(&dir);
    Ok(out)
}

#[test]
fn acceptance_criteria() {
    type Run = fn(&mut TestRng) -> Result<Vec<Check>>;
    let criteria: [(&str, Run); 13] = [
        ("Fourier round trip and Parseval", fourier_round_trip),
        ("three S0 norm routes agree", three_norm_routes),
        ("delta and constant windows give L1 and A(G)", special_windows),
        ("orthogonality relation and STFT inequalities", stft_relations),
        ("window change sandwich", window_change_sandwich),
        ("Poisson and Weil formulas", summation_formulas),
        ("restriction identity and zero extension", restriction_and_extension),
        ("catalog operators preserve S0 norms", operator_invariance),
        ("Gabor frame operator, bounds and dual window", gabor_frames),
        ("kernel correspondence", kernel_correspondence),
        ("atomic decomposition", atomic_decomposition),
        ("dual norm sandwich against the oracle", dual_norm_sandwich),
        ("partition of unity axioms and bounds", partitions_of_unity),
    ];
    let mut stdout = std::io::stdout();
    let mut all_passed = true;
    let mut line = |n: usize, title: &str, (ok, detail): (bool, String), secs: f64| {
        all_passed &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        writeln!(stdout, "criterion {n:>2} {tag}  {title} ({secs:.2} s): {detail}").expect("stdout");
    };
    for (i, (title, run)) in criteria.iter().enumerate() {
        let mut rng = seeded(1000 + i as u64);
        let start = Instant::now();
        let v = verdict(run(&mut rng));
        line(i + 1, title, v, start.elapsed().as_secs_f64());
    }
    let start = Instant::now();
    let v = verdict(full_cli_run());
    line(14, "full CLI verify run on 2x3x4", v, start.elapsed().as_secs_f64());
    assert!(all_passed, "some acceptance criteria failed; see the lines above");
}
