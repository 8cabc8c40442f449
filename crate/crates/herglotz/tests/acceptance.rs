//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`).
//!
//! The randomized criteria use a fixed seed so runs are reproducible.

mod common;

use std::time::Instant;

use common::{random_atomic, random_atomic_triple, random_nu_model, upper_grid};
use herglotz::{
    atom_mass_estimate, averaging, krein_transform, recover_alpha, recover_beta, Backend,
    EpsSchedule, HerglotzTriple, RankOneModel, RealMeasure, SweepConfig, Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("acceptance {criterion}: PASS");
    } else {
        println!("acceptance {criterion}: FAIL");
        for f in failures {
            println!("  - {f}");
        }
        panic!("{criterion} failed with {} violations", failures.len());
    }
}

/// Criterion 1: on 50 random operator models the averaged singular
/// measure has density 0/1 up to the stated tolerances, mass matches
/// Tr V within 1%, and every model finishes in under a minute.
#[test]
fn criterion_1_averaged_density_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5150);
    let tol = Tolerances::default();
    let mut failures = Vec::new();
    for case in 0..50 {
        let start = Instant::now();
        let nu = random_nu_model(&mut rng);
        let trace_v = nu.total_mass();
        let model = RankOneModel::from_measure(&nu).unwrap();
        let d_min = model.diagonal()[0];
        let top_eig = model
            .secular_eigen(1.0)
            .unwrap()
            .atoms()
            .last()
            .unwrap()
            .position;
        let window = (d_min - 1.0, top_eig + 1.0);
        let cfg = SweepConfig::new(10_000, window, 400, Backend::RootFinding).unwrap();
        let h = HerglotzTriple::from_atomic_measure(&nu).unwrap();
        let verdict = averaging::theorem_check(&h, &cfg, &tol).unwrap();
        let elapsed = start.elapsed().as_secs_f64();

        if verdict.report.sup_error_off_jumps > 0.05 {
            failures.push(format!(
                "case {case}: sup error {:.4} > 0.05 (n={})",
                verdict.report.sup_error_off_jumps,
                model.dimension()
            ));
        }
        if verdict.report.l1_error > 0.02 {
            failures.push(format!(
                "case {case}: l1 error {:.4} > 0.02 (n={})",
                verdict.report.l1_error,
                model.dimension()
            ));
        }
        let mass_err = (verdict.report.swept_mass - trace_v).abs();
        if mass_err > 0.01 * trace_v {
            failures.push(format!(
                "case {case}: swept mass off by {mass_err:.4} (Tr V = {trace_v:.4})"
            ));
        }
        if !verdict.pass {
            failures.push(format!("case {case}: verdict failed: {verdict:?}"));
        }
        if elapsed > 60.0 {
            failures.push(format!("case {case}: took {elapsed:.1}s"));
        }
    }
    report("criterion 1 (0/1 density on 50 random models)", &failures);
}

/// Criterion 2: for h(z) = z the swept density is the indicator of
/// [0, 1] with L1 error below 1e-3.
#[test]
fn criterion_2_identity_model_closed_form() {
    let h = HerglotzTriple::linear(1.0, 0.0).unwrap();
    let cfg = SweepConfig::new(10_000, (-0.5, 1.5), 100, Backend::RootFinding).unwrap();
    let grid = averaging::sweep(&h, &cfg).unwrap();

    // Plain absolute L1 against the indicator over every off-support
    // bin center; the atoms land exactly on the sample couplings, so
    // only edge quantization could contribute.
    let w = grid.bin_width();
    let mut l1_absolute = 0.0;
    for (i, &value) in grid.values().iter().enumerate() {
        let c = grid.bin_center(i);
        let oracle = averaging::oracle_density(&h, c).unwrap();
        l1_absolute += (value - oracle).abs() * w;
    }
    let rep = averaging::compare(&grid, &h).unwrap();

    let mut failures = Vec::new();
    if l1_absolute >= 1e-3 {
        failures.push(format!("absolute l1 {l1_absolute:.2e} >= 1e-3"));
    }
    if rep.l1_error >= 1e-3 {
        failures.push(format!("compare l1 {:.2e} >= 1e-3", rep.l1_error));
    }
    report(
        "criterion 2 (h = z sweeps to the unit indicator)",
        &failures,
    );
}

/// Criterion 3: for h(z) = z - 1/z the jump points match the closed
/// forms to 1e-9, the density matches the two-band indicator, and the
/// total swept mass is within 1e-2 of one.
#[test]
fn criterion_3_two_site_closed_form() {
    let h = HerglotzTriple::new(1.0, 0.0, RealMeasure::point_mass(0.0, 1.0).unwrap()).unwrap();
    let mut failures = Vec::new();

    let jumps = averaging::jump_points(&h).unwrap();
    let expected = [
        -1.0,
        (1.0 - 5f64.sqrt()) / 2.0,
        0.0,
        1.0,
        (1.0 + 5f64.sqrt()) / 2.0,
    ];
    if jumps.len() != expected.len() {
        failures.push(format!("expected 5 jump points, got {}", jumps.len()));
    } else {
        for (got, want) in jumps.iter().zip(expected) {
            if (got - want).abs() > 1e-9 {
                failures.push(format!("jump {got} vs closed form {want}"));
            }
        }
    }

    let cfg = SweepConfig::new(10_000, (-1.5, 2.0), 400, Backend::RootFinding).unwrap();
    let grid = averaging::sweep(&h, &cfg).unwrap();
    let rep = averaging::compare(&grid, &h).unwrap();
    if rep.sup_error_off_jumps > 0.05 {
        failures.push(format!(
            "sup error off jumps {:.4} > 0.05",
            rep.sup_error_off_jumps
        ));
    }
    if (rep.swept_mass - 1.0).abs() > 1e-2 {
        failures.push(format!(
            "swept mass {:.6} not within 1e-2 of 1",
            rep.swept_mass
        ));
    }
    report("criterion 3 (h = z - 1/z two-band structure)", &failures);
}

/// Criterion 4: the rank-one resolvent identity and the triple route
/// agree with the direct linear-solve resolvent to 1e-10 on an upper
/// half-plane grid, over 20 random models and 10 couplings each.
#[test]
fn criterion_4_resolvent_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4441);
    let grid = upper_grid();
    let mut failures = Vec::new();
    for case in 0..20 {
        let n = rng.gen_range(1..=20);
        let nu = random_atomic(&mut rng, n, 0.05, 0.1, 2.0);
        let model = RankOneModel::from_measure(&nu).unwrap();
        let h = HerglotzTriple::from_atomic_measure(&nu).unwrap();
        for _ in 0..10 {
            let r = rng.gen_range(0.0..1.0);
            for &z in &grid {
                let direct = model.resolvent_trace(r, z).unwrap();
                let unperturbed = model.resolvent_trace(0.0, z).unwrap();
                let via_identity = krein_transform(unperturbed, r).unwrap();
                let via_triple = h.transform(r).eval(z).unwrap();
                let dev_identity = (direct - via_identity).norm();
                let dev_triple = (direct - via_triple).norm();
                if dev_identity > 1e-10 {
                    failures.push(format!(
                        "case {case}: identity deviation {dev_identity:.2e} at z={z}, r={r}"
                    ));
                }
                if dev_triple > 1e-10 {
                    failures.push(format!(
                        "case {case}: triple deviation {dev_triple:.2e} at z={z}, r={r}"
                    ));
                }
            }
        }
    }
    report("criterion 4 (resolvent identity suite)", &failures);
}

/// Criterion 5: the root-finding and secular samplers agree on
/// positions to 1e-9 and masses to 1e-8 over 20 models x 50 couplings.
#[test]
fn criterion_5_backend_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5544);
    let mut failures = Vec::new();
    for case in 0..20 {
        let n = rng.gen_range(1..=25);
        let nu = random_atomic(&mut rng, n, 0.05, 0.1, 2.0);
        let model = RankOneModel::from_measure(&nu).unwrap();
        let h = HerglotzTriple::from_atomic_measure(&nu).unwrap();
        for _ in 0..50 {
            let r = rng.gen_range(0.0..1.0);
            let roots = h.solve_equals(r).unwrap();
            let secular = model.secular_eigen(r).unwrap();
            if roots.atoms().len() != secular.atoms().len() {
                failures.push(format!("case {case}: atom count mismatch at r={r}"));
                continue;
            }
            for (a, b) in roots.atoms().iter().zip(secular.atoms()) {
                if (a.position - b.position).abs() > 1e-9 {
                    failures.push(format!(
                        "case {case}: positions {} vs {} at r={r}",
                        a.position, b.position
                    ));
                }
                if (a.mass - b.mass).abs() > 1e-8 {
                    failures.push(format!(
                        "case {case}: masses {} vs {} at r={r}",
                        a.mass, b.mass
                    ));
                }
            }
        }
    }
    report("criterion 5 (backend equivalence)", &failures);
}

/// Criterion 6: alpha, beta and every atom mass of 20 random atomic
/// triples are recovered from boundary values to 1e-6.
#[test]
fn criterion_6_recovery_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6060);
    let schedule = EpsSchedule::default();
    let mut failures = Vec::new();
    for case in 0..20 {
        let h = random_atomic_triple(&mut rng);
        let alpha = recover_alpha(&h, &schedule).unwrap();
        if (alpha - h.alpha()).abs() > 1e-6 {
            failures.push(format!("case {case}: alpha {alpha} vs {}", h.alpha()));
        }
        let beta = recover_beta(&h).unwrap();
        if (beta - h.beta()).abs() > 1e-6 {
            failures.push(format!("case {case}: beta {beta} vs {}", h.beta()));
        }
        for atom in h.mu().atoms() {
            let mass = atom_mass_estimate(&h, atom.position, &schedule).unwrap();
            if (mass - atom.mass).abs() > 1e-6 {
                failures.push(format!(
                    "case {case}: mass {mass} vs {} at {}",
                    atom.mass, atom.position
                ));
            }
        }
    }
    report("criterion 6 (recovery round trip)", &failures);
}

/// Criterion 7: eigenvalue branches are nondecreasing in the coupling
/// and interlace the unperturbed spectrum at every sampled coupling.
#[test]
fn criterion_7_monotone_interlacing_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7077);
    let mut failures = Vec::new();
    for case in 0..20 {
        let n = rng.gen_range(1..=25);
        let nu = random_atomic(&mut rng, n, 0.05, 0.1, 2.0);
        let model = RankOneModel::from_measure(&nu).unwrap();
        let d = model.diagonal();
        let mut previous: Option<Vec<f64>> = None;
        for k in 0..50 {
            let r = (2 * k + 1) as f64 / 100.0;
            let sample = model.secular_eigen(r).unwrap();
            let lambdas: Vec<f64> = sample.atoms().iter().map(|a| a.position).collect();
            for (j, &lambda) in lambdas.iter().enumerate() {
                let interlaced = if j + 1 < lambdas.len() {
                    d[j] < lambda && lambda < d[j + 1]
                } else {
                    lambda > d[j]
                };
                if !interlaced {
                    failures.push(format!(
                        "case {case}: branch {j} out of gap at r={r}: {lambda}"
                    ));
                }
            }
            if let Some(prev) = &previous {
                for j in 0..lambdas.len() {
                    if lambdas[j] < prev[j] {
                        failures.push(format!(
                            "case {case}: branch {j} decreased at r={r}: {} -> {}",
                            prev[j], lambdas[j]
                        ));
                    }
                }
            }
            previous = Some(lambdas);
        }
    }
    report("criterion 7 (monotone interlacing flow)", &failures);
}

/// Criterion 8: sweep output is byte-identical between one and four
/// worker threads.
#[test]
fn criterion_8_sweep_is_thread_deterministic() {
    let dir = std::env::temp_dir().join(format!("herglotz-acc8-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let model_path = dir.join("model.json");
    std::fs::write(
        &model_path,
        r#"{"kind":"nu-atomic","atoms":[{"pos":-1,"mass":0.5},{"pos":1,"mass":0.5}]}"#,
    )
    .unwrap();

    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out_path = dir.join(format!("density-{threads}.csv"));
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_herglotz"))
            .args([
                "sweep",
                "--model",
                model_path.to_str().unwrap(),
                "--r-steps",
                "2000",
                "--bins",
                "200",
                "--range",
                "-1.5:2.0",
                "--out",
                out_path.to_str().unwrap(),
            ])
            .env("HERGLOTZ_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out_path).unwrap());
    }
    let mut failures = Vec::new();
    if outputs[0] != outputs[1] {
        failures.push("byte difference between HERGLOTZ_THREADS=1 and =4".to_string());
    }
    std::fs::remove_dir_all(&dir).ok();
    report("criterion 8 (thread-count determinism)", &failures);
}
