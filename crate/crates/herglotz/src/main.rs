//! Command-line front end: model files in, CSV out.
//!
//! Exit codes: 0 success, 1 failed verification verdict, 2 usage or
//! configuration error.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use herglotz::{
    averaging, config::Model, oracle_density, parse_config, Backend, EpsSchedule, HerglotzTriple,
    SweepConfig, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "herglotz",
    version,
    about = "Herglotz function models: evaluation, spectral sweeps, and averaged-density verification",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    /// Solve h(lambda) = r over analyticity intervals.
    Root,
    /// Solve the secular equation of the rank-one model.
    Secular,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Root => Backend::RootFinding,
            BackendArg::Secular => Backend::Secular,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate h(z) at a point of the upper half-plane; prints "re,im".
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Evaluation point as RE:IM.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: (f64, f64),
    },
    /// Average the singular measures of 1/(r - h) over r in [0,1] and
    /// write the binned density with the analytic reference.
    Sweep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "r-steps")]
        r_steps: usize,
        #[arg(long)]
        bins: usize,
        /// Window as LO:HI.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        range: (f64, f64),
        #[arg(long, value_enum, default_value = "root")]
        backend: BackendArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace the eigenvalue branches of H_r = H_0 + r V over r in [0,1]
    /// (nu-atomic models only).
    Eigenflow {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "r-steps")]
        r_steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan h(lambda + i*eps) along a dyadic schedule of heights.
    Boundary {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Smallest exponent: largest height 2^-K1.
        #[arg(long = "eps-min-exp")]
        eps_min_exp: u32,
        /// Largest exponent: smallest height 2^-K2.
        #[arg(long = "eps-max-exp")]
        eps_max_exp: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the analytic density indicator on a bin grid.
    Oracle {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        bins: usize,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        range: (f64, f64),
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep, compare against the analytic density and print a verdict;
    /// exits 1 when the verdict fails.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long = "r-steps", default_value_t = 10_000)]
        r_steps: usize,
        #[arg(long, default_value_t = 400)]
        bins: usize,
        /// Window as LO:HI; defaults to one unit of slack around the
        /// extreme jump points.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        range: Option<(f64, f64)>,
        #[arg(long = "tol-sup", default_value_t = 0.05)]
        tol_sup: f64,
        #[arg(long = "tol-l1", default_value_t = 0.02)]
        tol_l1: f64,
        #[arg(long = "tol-mass", default_value_t = 0.01)]
        tol_mass: f64,
        #[arg(long, value_enum, default_value = "root")]
        backend: BackendArg,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

/// 17 significant digits: round-trips f64 exactly and is locale-free.
fn fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

fn init_threads() -> Result<(), String> {
    match std::env::var("HERGLOTZ_THREADS") {
        Ok(raw) => {
            let n: usize = raw
                .parse()
                .map_err(|_| format!("HERGLOTZ_THREADS must be a positive integer, got {raw:?}"))?;
            if n == 0 {
                return Err("HERGLOTZ_THREADS must be a positive integer".into());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| e.to_string())
        }
        Err(_) => Ok(()),
    }
}

fn load_model(path: &PathBuf) -> Result<Model, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    cfg.build().map_err(|e| format!("{}: {e}", path.display()))
}

fn load_herglotz(path: &PathBuf) -> Result<HerglotzTriple, String> {
    load_model(path)?.herglotz().map_err(|e| e.to_string())
}

fn write_lines(path: &PathBuf, lines: impl IntoIterator<Item = String>) -> Result<(), String> {
    let file = fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = BufWriter::new(file);
    for line in lines {
        out.write_all(line.as_bytes())
            .and_then(|_| out.write_all(b"\n"))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    out.flush().map_err(|e| format!("{}: {e}", path.display()))
}

fn main() {
    let cli = Cli::parse();
    let code = match init_threads().and_then(|_| run(cli.command)) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Eval { model, z } => {
            let h = load_herglotz(&model)?;
            let value = h
                .eval(Complex64::new(z.0, z.1))
                .map_err(|e| e.to_string())?;
            println!("{},{}", fmt(value.re), fmt(value.im));
            Ok(0)
        }

        Command::Sweep {
            model,
            r_steps,
            bins,
            range,
            backend,
            out,
        } => {
            let h = load_herglotz(&model)?;
            let cfg = SweepConfig::new(r_steps, range, bins, backend.into())
                .map_err(|e| e.to_string())?;
            let grid = averaging::sweep(&h, &cfg).map_err(|e| e.to_string())?;
            let mut lines = vec!["lambda,density,oracle,abs_err".to_string()];
            for (i, &density) in grid.values().iter().enumerate() {
                let c = grid.bin_center(i);
                let oracle = if h.mu().in_closed_support(c) {
                    f64::NAN
                } else {
                    oracle_density(&h, c).map_err(|e| e.to_string())?
                };
                lines.push(format!(
                    "{},{},{},{}",
                    fmt(c),
                    fmt(density),
                    fmt(oracle),
                    fmt((density - oracle).abs())
                ));
            }
            write_lines(&out, lines)?;
            Ok(0)
        }

        Command::Eigenflow {
            model,
            r_steps,
            out,
        } => {
            let loaded = load_model(&model)?;
            let rank_one = loaded
                .rank_one()
                .ok_or("eigenflow requires a nu-atomic model")?;
            if r_steps == 0 {
                return Err("r-steps must be at least 1".into());
            }
            let mut lines = vec!["r,index,lambda,mass".to_string()];
            for i in 0..=r_steps {
                let r = i as f64 / r_steps as f64;
                let sample = rank_one.secular_eigen(r).map_err(|e| e.to_string())?;
                for (index, atom) in sample.atoms().iter().enumerate() {
                    lines.push(format!(
                        "{},{},{},{}",
                        fmt(r),
                        index,
                        fmt(atom.position),
                        fmt(atom.mass)
                    ));
                }
            }
            write_lines(&out, lines)?;
            Ok(0)
        }

        Command::Boundary {
            model,
            lambda,
            eps_min_exp,
            eps_max_exp,
            out,
        } => {
            let h = load_herglotz(&model)?;
            let schedule = EpsSchedule::new(eps_min_exp, eps_max_exp).map_err(|e| e.to_string())?;
            let mut lines = vec!["eps,re,im".to_string()];
            for eps in schedule.eps_values() {
                let value = h
                    .eval(Complex64::new(lambda, eps))
                    .map_err(|e| e.to_string())?;
                lines.push(format!("{},{},{}", fmt(eps), fmt(value.re), fmt(value.im)));
            }
            write_lines(&out, lines)?;
            Ok(0)
        }

        Command::Oracle {
            model,
            bins,
            range,
            out,
        } => {
            let h = load_herglotz(&model)?;
            if bins == 0 {
                return Err("bins must be at least 1".into());
            }
            if range.0 >= range.1 || !range.0.is_finite() || !range.1.is_finite() {
                return Err(format!("empty window {}:{}", range.0, range.1));
            }
            let width = (range.1 - range.0) / bins as f64;
            let mut lines = vec!["lambda,oracle".to_string()];
            for i in 0..bins {
                let c = range.0 + (i as f64 + 0.5) * width;
                let oracle = if h.mu().in_closed_support(c) {
                    f64::NAN
                } else {
                    oracle_density(&h, c).map_err(|e| e.to_string())?
                };
                lines.push(format!("{},{}", fmt(c), fmt(oracle)));
            }
            write_lines(&out, lines)?;
            Ok(0)
        }

        Command::Check {
            model,
            r_steps,
            bins,
            range,
            tol_sup,
            tol_l1,
            tol_mass,
            backend,
        } => {
            let loaded = load_model(&model)?;
            let h = loaded.herglotz().map_err(|e| e.to_string())?;
            let window = match range {
                Some(w) => w,
                None => averaging::default_window(&h).map_err(|e| e.to_string())?,
            };
            let cfg = SweepConfig::new(r_steps, window, bins, backend.into())
                .map_err(|e| e.to_string())?;
            let tol = Tolerances {
                sup: tol_sup,
                l1: tol_l1,
                mass: tol_mass,
            };
            let verdict = match loaded.rank_one() {
                Some(m) if matches!(cfg.backend(), Backend::Secular) => {
                    averaging::theorem_check_model(m, &cfg, &tol)
                }
                _ => averaging::theorem_check(&h, &cfg, &tol),
            }
            .map_err(|e| e.to_string())?;

            let flag = |ok: bool| if ok { "ok" } else { "FAIL" };
            println!(
                "window               = [{}, {}]  ({} bins, {} r-steps)",
                fmt(window.0),
                fmt(window.1),
                bins,
                r_steps
            );
            println!(
                "sup_error_off_jumps  = {:>12.6e}  (tol {:.3e})  {}",
                verdict.report.sup_error_off_jumps,
                tol.sup,
                flag(verdict.sup_ok)
            );
            println!(
                "l1_error             = {:>12.6e}  (tol {:.3e})  {}",
                verdict.report.l1_error,
                tol.l1,
                flag(verdict.l1_ok)
            );
            println!(
                "mass_check           = {:>12.6e}  (tol {:.3e} x {:.6e})  {}",
                verdict.report.mass_check,
                tol.mass,
                verdict.report.oracle_mass.max(1.0),
                flag(verdict.mass_ok)
            );
            println!(
                "swept_mass           = {:>12.6e}   oracle_mass = {:.6e}",
                verdict.report.swept_mass, verdict.report.oracle_mass
            );
            if let (Some(p), Some(m)) = (verdict.backend_position_dev, verdict.backend_mass_dev) {
                println!("backend_position_dev = {:>12.6e}", p);
                println!("backend_mass_dev     = {:>12.6e}", m);
            }
            println!("verdict: {}", if verdict.pass { "PASS" } else { "FAIL" });
            Ok(if verdict.pass { 0 } else { 1 })
        }
    }
}
