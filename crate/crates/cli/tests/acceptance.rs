//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every tolerance is pinned here, in code. Criteria 1-8 exercise the
//! library directly; criterion 9 drives the installed binary through its
//! manifest/replay machinery.

use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sprt_coherent::montecarlo::{estimate_horizon_prob, SimulationConfig};
use sprt_coherent::{
    accumulate, accumulation_chain, batch_hypotheses, batched_success_unambiguous, beam_splitter,
    classify_case, erf, increment_moments, l_opt_closed_form, mean_path, stop_prob_h0,
    stop_prob_h1, success_probability, success_unambiguous, wald_thresholds, BatchProblem,
    CaseClass, CoherentAmplitude, ErrorBudget, Hypothesis,
};

fn symmetric_reference() -> BatchProblem {
    BatchProblem::new(100, 0.1, -0.1, ErrorBudget::new(0.01, 0.05).unwrap()).unwrap()
}

fn asymmetric_reference() -> BatchProblem {
    BatchProblem::new(100, 0.2, -0.1, ErrorBudget::new(0.00005, 0.2).unwrap()).unwrap()
}

/// Criterion 1: with theta0 = -theta1 the success probability must not
/// depend on the batch size (relative spread <= 1e-12 over l = 1..100).
#[test]
fn criterion_1_symmetric_l_invariance() {
    let prob = symmetric_reference();
    let values: Vec<f64> = (1..=100)
        .map(|l| success_probability(l, &prob).unwrap().p_s)
        .collect();
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    let spread = (max - min) / max;
    assert!(spread <= 1e-12, "relative spread {spread}");
    println!("[PASS] criterion 1: symmetric case is l-invariant (relative spread {spread:.3e})");
}

/// Criterion 2: at the reference asymmetric parameters the integer argmax
/// lies within +-2 of the closed-form estimate (~32.74) and the curve is
/// unimodal over l = 1..100.
#[test]
fn criterion_2_asymmetric_grid_maximum() {
    let prob = asymmetric_reference();
    let l_opt = l_opt_closed_form(&prob).unwrap().expect("inside [0, N]");
    assert!((l_opt - 32.74).abs() < 5e-3, "l_opt = {l_opt}");

    let values: Vec<f64> = (1..=100)
        .map(|l| success_probability(l, &prob).unwrap().p_s)
        .collect();
    let argmax = 1 + values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0 as u32;
    assert!(
        (argmax as f64 - l_opt).abs() <= 2.0,
        "argmax {argmax} vs closed form {l_opt}"
    );

    let peak = (argmax - 1) as usize;
    for i in 1..=peak {
        assert!(
            values[i] >= values[i - 1] - 1e-12,
            "not rising at l = {}",
            i + 1
        );
    }
    for i in peak..values.len() - 1 {
        assert!(
            values[i + 1] <= values[i] + 1e-12,
            "not falling at l = {}",
            i + 2
        );
    }
    assert_eq!(classify_case(&prob), CaseClass::CaseII);
    println!("[PASS] criterion 2: grid argmax {argmax} within 2 of closed form {l_opt:.3}, curve unimodal");
}

/// Criterion 3: simulated horizon-value probabilities agree with the closed
/// forms within 3 binomial standard errors at 1e5 trajectories, for
/// l in {1, 2, 4, 5} under both hypotheses.
#[test]
fn criterion_3_montecarlo_matches_closed_forms() {
    let prob = symmetric_reference();
    let mut worst: f64 = 0.0;
    for l in [1u32, 2, 4, 5] {
        let report = success_probability(l, &prob).unwrap();
        for truth in [Hypothesis::H0, Hypothesis::H1] {
            let config =
                SimulationConfig::new(20260810 + l as u64, 100_000, truth, prob, l).unwrap();
            let estimate = estimate_horizon_prob(&config);
            let closed = match truth {
                Hypothesis::H0 => report.p0,
                Hypothesis::H1 => report.p1,
            };
            let sigmas = (estimate.point - closed).abs() / estimate.stderr;
            assert!(
                sigmas <= 3.0,
                "l = {l}, truth {truth:?}: {} vs {closed} ({sigmas:.2} sigma)",
                estimate.point
            );
            worst = worst.max(sigmas);
        }
    }
    println!(
        "[PASS] criterion 3: 8 configurations x 1e5 trajectories within 3 sigma (worst {worst:.2})"
    );
}

/// Criterion 4: the batched formulas equal the fixed-horizon Gaussian
/// composition with n0 = N/l to 1e-12 absolute, over 1000 random tuples.
#[test]
fn criterion_4_substitution_identity() {
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=200u32);
        let l = rng.random_range(1..=n);
        let theta0: f64 = rng.random_range(-1.0..1.0);
        let gap = rng.random_range(0.01..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let theta1 = theta0 - gap;
        let alpha = rng.random_range(1e-6..0.49);
        let beta = rng.random_range(1e-6..0.49);

        let prob =
            BatchProblem::new(n, theta0, theta1, ErrorBudget::new(alpha, beta).unwrap()).unwrap();
        let report = success_probability(l, &prob).unwrap();
        let model = batch_hypotheses(theta0, theta1, l).unwrap();
        let thresholds = wald_thresholds(prob.budget());
        let n0 = n as f64 / l as f64;
        let p0 = stop_prob_h0(&model, n0, thresholds.log_a()).unwrap();
        let p1 = stop_prob_h1(&model, n0, thresholds.log_b()).unwrap();
        let diff = (report.p0 - p0).abs().max((report.p1 - p1).abs());
        assert!(diff <= 1e-12, "routes diverge by {diff} at n={n} l={l}");
        worst = worst.max(diff);
    }
    println!("[PASS] criterion 4: substitution identity holds on 1000 tuples (worst {worst:.3e})");
}

/// Criterion 5: the accumulation chain concentrates to sqrt(l) gamma with
/// vacuum residuals (<= 1e-12) and conserves energy at every splitter.
#[test]
fn criterion_5_beam_splitter_concentration() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let gamma =
            CoherentAmplitude::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                .unwrap();
        for l in 1..=64u32 {
            let (concentrated, residuals) = accumulate(gamma, l);
            let scale = (l as f64).sqrt();
            assert!((concentrated.q() - scale * gamma.q()).abs() <= 1e-12);
            assert!((concentrated.p() - scale * gamma.p()).abs() <= 1e-12);
            assert!(residuals.iter().all(|r| r.norm_sqr().sqrt() <= 1e-12));

            // refold manually, checking energy across every splitter
            let mut running = gamma;
            for spec in accumulation_chain(l) {
                let before = running.norm_sqr() + gamma.norm_sqr();
                let (kept, leaked) = beam_splitter(running, gamma, &spec);
                let after = kept.norm_sqr() + leaked.norm_sqr();
                assert!((before - after).abs() <= 1e-12, "energy drift at l = {l}");
                running = kept;
            }
        }
    }
    println!("[PASS] criterion 5: concentration exact to 1e-12 for l <= 64, energy conserved per splitter");
}

/// Criterion 6: batch invariance of unambiguous discrimination is exact at
/// double precision for every divisor pair with N <= 64, 50 overlaps.
#[test]
fn criterion_6_unambiguous_batch_invariance() {
    let mut float_route_worst: f64 = 0.0;
    for k in 0..50u32 {
        let c = k as f64 / 49.0;
        for n in 1..=64u32 {
            let direct = success_unambiguous(c, n).unwrap();
            for l in 1..=n {
                if n % l != 0 {
                    continue;
                }
                let batched = batched_success_unambiguous(c, n, l).unwrap();
                assert_eq!(batched, direct, "c = {c}, n = {n}, l = {l}");

                // the re-associated float route demonstrates the identity
                // numerically as well
                let mut effective = 1.0f64;
                for _ in 0..l {
                    effective *= c;
                }
                let mut reassociated = 1.0f64;
                for _ in 0..n / l {
                    reassociated *= effective;
                }
                float_route_worst = float_route_worst.max((1.0 - reassociated - direct).abs());
            }
        }
    }
    assert!(float_route_worst <= 1e-13);
    println!("[PASS] criterion 6: batched = direct exactly; re-associated route within {float_route_worst:.3e}");
}

/// Criterion 7: erf matches adaptive quadrature of its defining integral to
/// 1e-12 absolute at 1e4 points in [-6, 6].
#[test]
fn criterion_7_erf_against_quadrature() {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, whole: f64) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        let refined = left + right;
        if (refined - whole).abs() <= 15.0 * tol {
            refined + (refined - whole) / 15.0
        } else {
            adaptive(f, a, m, 0.5 * tol, left) + adaptive(f, m, b, 0.5 * tol, right)
        }
    }
    let oracle = |y: f64| -> f64 {
        let f = |t: f64| (-t * t).exp();
        let m = y.abs();
        if m == 0.0 {
            return 0.0;
        }
        y.signum() * 2.0 / std::f64::consts::PI.sqrt()
            * adaptive(&f, 0.0, m, 1e-15, simpson(&f, 0.0, m))
    };

    let points = 10_000;
    let mut worst: f64 = 0.0;
    for k in 0..=points {
        let y = -6.0 + 12.0 * k as f64 / points as f64;
        worst = worst.max((erf(y) - oracle(y)).abs());
    }
    assert!(worst <= 1e-12, "worst deviation {worst}");
    println!(
        "[PASS] criterion 7: erf within {worst:.3e} of quadrature at {} points",
        points + 1
    );
}

/// Criterion 8: the drift of the simulated mean path matches the analytic
/// expected increment within 3 sigma at 1000 trajectories.
#[test]
fn criterion_8_mean_path_drift() {
    let prob = symmetric_reference();
    let trajectories = 1000u64;
    let config = SimulationConfig::new(8, trajectories, Hypothesis::H0, prob, 1).unwrap();
    let path = mean_path(&config);
    let horizon = path.len();

    // the maximum-likelihood drift estimate of a random walk is the final
    // value over the horizon; its standard error is sigma_z / sqrt(K * H)
    let slope = path[horizon - 1] / horizon as f64;
    let model = batch_hypotheses(prob.theta0(), prob.theta1(), 1).unwrap();
    let (expected, sigma_z) = increment_moments(&model, Hypothesis::H0);
    let stderr = sigma_z / ((trajectories as f64) * horizon as f64).sqrt();
    let sigmas = (slope - expected).abs() / stderr;
    assert!(
        sigmas <= 3.0,
        "slope {slope} vs expected {expected} ({sigmas:.2} sigma)"
    );
    println!("[PASS] criterion 8: mean-path drift {slope:.5} vs analytic {expected:.5} ({sigmas:.2} sigma)");
}

/// Criterion 9: a simulate run is byte-identical when re-run from its
/// manifest, and independent of the thread cap.
#[test]
fn criterion_9_simulate_determinism() {
    let bin = env!("CARGO_BIN_EXE_sprt-coherent");
    let dir = tempfile::tempdir().unwrap();
    let run = |label: &str, threads: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let summary = dir.path().join(format!("{label}-summary.json"));
        let mean = dir.path().join(format!("{label}-mean.csv"));
        let paths = dir.path().join(format!("{label}-paths.csv"));
        let status = Command::new(bin)
            .env("SPRT_COHERENT_THREADS", threads)
            .args([
                "simulate",
                "--n",
                "100",
                "--theta0",
                "0.1",
                "--theta1",
                "-0.1",
                "--alpha",
                "0.01",
                "--beta",
                "0.05",
                "--l",
                "3",
                "--truth",
                "1",
                "--trajectories",
                "4000",
                "--seed",
                "7",
            ])
            .arg("--summary-out")
            .arg(&summary)
            .arg("--mean-path-out")
            .arg(&mean)
            .arg("--paths-out")
            .arg(&paths)
            .status()
            .unwrap();
        assert!(status.success());
        (
            std::fs::read(summary).unwrap(),
            std::fs::read(mean).unwrap(),
            std::fs::read(paths).unwrap(),
        )
    };

    let single = run("single", "1");
    let many = run("many", "4");
    assert_eq!(single, many, "outputs depend on the thread cap");

    // replay from the manifest of the single-thread run, on 2 threads;
    // the manifest sits next to the first output file (the mean path)
    let manifest = dir.path().join("single-mean.csv.manifest.json");
    assert!(manifest.exists(), "manifest not written");
    for file in ["single-summary.json", "single-mean.csv", "single-paths.csv"] {
        std::fs::remove_file(dir.path().join(file)).unwrap();
    }
    let status = Command::new(bin)
        .env("SPRT_COHERENT_THREADS", "2")
        .arg("replay")
        .arg("--manifest")
        .arg(&manifest)
        .status()
        .unwrap();
    assert!(status.success());
    let replayed = (
        std::fs::read(dir.path().join("single-summary.json")).unwrap(),
        std::fs::read(dir.path().join("single-mean.csv")).unwrap(),
        std::fs::read(dir.path().join("single-paths.csv")).unwrap(),
    );
    assert_eq!(single, replayed, "replay did not reproduce the outputs");
    println!("[PASS] criterion 9: simulate outputs byte-identical across thread caps and manifest replay");
}
