//! `s0calc`: command-line access to the S0 norms, transforms and verification suites.
//!
//! Exit codes: 0 success, 1 a check or comparison failed, 2 usage or input error.

pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use s0calc_core::gabor::{full_lattice, lattice_from_generators, phase_group, separable_lattice, GaborSystem};
use s0calc_core::io::{kernel_from_json, kernel_to_json, operator_from_json, operator_to_json, signal_from_json, signal_to_json};
use s0calc_core::kernel::{kernel_to_operator, operator_to_kernel};
use s0calc_core::rng::{random_signal, seeded};
use s0calc_core::tf::{s0_norm, stft, NormMethod};
use s0calc_core::{GroupSpec, Signal, Subgroup};

use report::Report;
use suites::{default_lattice, Config, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "s0calc", version, about = "S0 norms, time-frequency transforms and identity checks on finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Stft,
    Conv,
    FourierAlgebra,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S0 norm of a signal with respect to a window.
    Norm {
        signal: PathBuf,
        window: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Largest relative disagreement tolerated between methods.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a verification suite on pseudo-random trials.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Group such as `2x3x4` or `6@1/2`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance of every identity.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Short-time Fourier transform; writes the plane signal on G x G^.
    Stft {
        signal: PathBuf,
        window: PathBuf,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frame bounds, dual window and reconstruction error of a Gabor system.
    Gabor {
        window: PathBuf,
        /// `full`, `a,b` (steps on a single-factor group) or generators on G x G^ such as `2:0,0:2`.
        #[arg(long)]
        lattice: Option<String>,
        /// Signal to reconstruct; a seeded random signal when absent.
        #[arg(long)]
        signal: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the dual window; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a kernel file to an operator file or back.
    Kernel {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest round-trip error accepted.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Norm { signal, window, method, tol } => cmd_norm(&signal, &window, method, tol),
        Command::Verify { suite, group, trials, seed, tol, json } => cmd_verify(suite, &group, trials, seed, tol, json.as_deref()),
        Command::Stft { signal, window, out } => cmd_stft(&signal, &window, out.as_deref()),
        Command::Gabor { window, lattice, signal, seed, out } => cmd_gabor(&window, lattice.as_deref(), signal.as_deref(), seed, out.as_deref()),
        Command::Kernel { input, out, tol } => cmd_kernel(&input, out.as_deref(), tol),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Input and usage problems; all map to exit code 2.
type CmdResult = std::result::Result<i32, String>;

fn read(path: &Path) -> std::result::Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_signal(path: &Path) -> std::result::Result<Signal, String> {
    signal_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> std::result::Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_tol(tol: f64) -> std::result::Result<(), String> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(format!("--tol must be positive and finite, got {tol}"))
    }
}

/// Largest `|a - b| / max(|a|, |b|)` over all pairs; zero for equal values.
pub fn max_relative_discrepancy(values: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                worst = worst.max((a - b).abs() / scale);
            } else if a != b {
                worst = f64::NAN;
            }
        }
    }
    worst
}

fn cmd_norm(signal: &Path, window: &Path, method: MethodArg, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let f = read_signal(signal)?;
    let g = read_signal(window)?;
    let methods: Vec<NormMethod> = match method {
        MethodArg::Stft => vec![NormMethod::Stft],
        MethodArg::Conv => vec![NormMethod::Convolution],
        MethodArg::FourierAlgebra => vec![NormMethod::FourierAlgebra],
        MethodArg::All => NormMethod::ALL.to_vec(),
    };
    let mut values = Vec::new();
    for m in methods {
        let r = s0_norm(&f, &g, m).map_err(|e| e.to_string())?;
        println!("{m}: {:?}", r.value);
        values.push(r.value);
    }
    if method != MethodArg::All {
        return Ok(EXIT_OK);
    }
    let disc = max_relative_discrepancy(&values);
    println!("max relative discrepancy: {disc:e}");
    if disc <= tol {
        Ok(EXIT_OK)
    } else {
        eprintln!("methods disagree beyond --tol {tol:e}");
        Ok(EXIT_FAIL)
    }
}

fn cmd_verify(suite: Suite, group: &str, trials: usize, seed: u64, tol: f64, json: Option<&Path>) -> CmdResult {
    check_tol(tol)?;
    if trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let spec: GroupSpec = group.parse().map_err(|e| format!("--group: {e}"))?;
    let cfg = Config { group: spec.clone(), trials, seed, tol };
    let start = Instant::now();
    let checks = suites::run(suite, &cfg);
    let report = Report {
        suite: suite.name().to_string(),
        group: spec.to_string(),
        seed,
        trials,
        checks,
        wall_time: start.elapsed().as_secs_f64(),
    };
    print!("{}", report.render());
    if let Some(p) = json {
        fs::write(p, report.to_json()).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_stft(signal: &Path, window: &Path, out: Option<&Path>) -> CmdResult {
    let f = read_signal(signal)?;
    let g = read_signal(window)?;
    let plane = stft(&f, &g).map_err(|e| e.to_string())?;
    emit(&(signal_to_json(&plane).map_err(|e| e.to_string())? + "\n"), out)?;
    Ok(EXIT_OK)
}

fn parse_lattice(g: &GroupSpec, spec: Option<&str>) -> std::result::Result<Subgroup, String> {
    let weight = phase_group(g).weight();
    let lattice = match spec.map(str::trim) {
        None => default_lattice(g),
        Some("full") => Ok(full_lattice(g)),
        Some(s) if s.contains(':') => lattice_from_generators(g, s, weight),
        Some(s) => {
            let steps: Vec<&str> = s.split(',').collect();
            let [a, b] = steps.as_slice() else {
                return Err(format!("--lattice expects `full`, `a,b` or generators, got {s:?}"));
            };
            let a = a.trim().parse::<usize>().map_err(|e| format!("--lattice: {e}"))?;
            let b = b.trim().parse::<usize>().map_err(|e| format!("--lattice: {e}"))?;
            separable_lattice(g, a, b, weight)
        }
    };
    lattice.map_err(|e| format!("--lattice: {e}"))
}

fn cmd_gabor(window: &Path, lattice: Option<&str>, signal: Option<&Path>, seed: u64, out: Option<&Path>) -> CmdResult {
    let w = read_signal(window)?;
    if w.is_zero() {
        return Err("window must be non-zero".into());
    }
    let g = w.domain().as_group().expect("signal files hold full groups").clone();
    let lattice = parse_lattice(&g, lattice)?;
    let f = match signal {
        Some(p) => read_signal(p)?,
        None => random_signal(w.domain(), &mut seeded(seed)),
    };
    if f.domain() != w.domain() {
        return Err(format!("signal lives on {}, window on {}", f.domain(), w.domain()));
    }
    let sys = GaborSystem::new(w, lattice.clone()).map_err(|e| e.to_string())?;
    let bounds = sys.frame_bounds().map_err(|e| e.to_string())?;
    println!("lattice points: {}", lattice.order());
    println!("lower frame bound A: {:?}", bounds.lower);
    println!("upper frame bound B: {:?}", bounds.upper);
    let dual = match sys.dual_window() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            return Ok(EXIT_FAIL);
        }
    };
    let rec = sys.reconstruct(&f, &dual).map_err(|e| e.to_string())?;
    let err = rec.max_abs_diff(&f).map_err(|e| e.to_string())?;
    println!("reconstruction error: {err:e}");
    let text = signal_to_json(&dual).map_err(|e| e.to_string())? + "\n";
    match out {
        Some(p) => emit(&text, Some(p))?,
        None => {
            println!("dual window:");
            emit(&text, None)?;
        }
    }
    Ok(EXIT_OK)
}

/// Reads either a kernel (signal JSON with `"split"`) or an operator (`"matrix"`)
/// and writes the other form.
fn cmd_kernel(input: &Path, out: Option<&Path>, tol: f64) -> CmdResult {
    check_tol(tol)?;
    let text = read(input)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let in_err = |e: s0calc_core::Error| format!("{}: {e}", input.display());
    let (converted, err) = if value.get("matrix").is_some() {
        let t = operator_from_json(&text).map_err(in_err)?;
        let k = operator_to_kernel(&t).map_err(|e| e.to_string())?;
        let back = kernel_to_operator(&k);
        let err = (back.matrix() - t.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        (kernel_to_json(&k).map_err(|e| e.to_string())?, err)
    } else {
        let k = kernel_from_json(&text).map_err(in_err)?;
        let t = kernel_to_operator(&k);
        let back = operator_to_kernel(&t).map_err(|e| e.to_string())?;
        let err = back.density().max_abs_diff(k.density()).map_err(|e| e.to_string())?;
        (operator_to_json(&t).map_err(|e| e.to_string())?, err)
    };
    emit(&(converted + "\n"), out)?;
    eprintln!("round-trip error: {err:e}");
    Ok(if err <= tol { EXIT_OK } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrepancy_of_equal_and_zero_values() {
        assert_eq!(max_relative_discrepancy(&[2.0, 2.0, 2.0]), 0.0);
        assert_eq!(max_relative_discrepancy(&[0.0, 0.0]), 0.0);
        assert!((max_relative_discrepancy(&[1.0, 2.0, 1.5]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn default_lattice_has_index_four() {
        for spec in ["8", "12", "2x3x4", "2x4"] {
            let g: GroupSpec = spec.parse().unwrap();
            let l = default_lattice(&g).unwrap();
            assert_eq!(l.order() * 4, g.order() * g.order(), "{spec}");
        }
        let g: GroupSpec = "2x3".parse().unwrap();
        assert_eq!(default_lattice(&g).unwrap().order(), 36);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["s0calc", "verify"]), EXIT_USAGE);
        assert_eq!(run(["s0calc", "verify", "--group", "0x3"]), EXIT_USAGE);
        assert_eq!(run(["s0calc", "verify", "--group", "4", "--suite", "nope"]), EXIT_USAGE);
        assert_eq!(run(["s0calc", "verify", "--group", "4", "--trials", "0"]), EXIT_USAGE);
        assert_eq!(run(["s0calc", "--help"]), EXIT_OK);
    }
}
