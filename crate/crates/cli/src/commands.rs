//! Command execution.

use std::path::{Path, PathBuf};
use std::time::Instant;

use sprt_coherent::{
    batch_hypotheses, batched_success_unambiguous, horizon_stop_probabilities, l_bounds,
    l_opt_closed_form, optimize_batch, recommended_batch_size, success_probability,
    success_unambiguous, total_success, trajectory_path, wald_thresholds, BatchProblem, CaseClass,
    ErrorBudget, Hypothesis, QubitPair, SimulationConfig,
};

use crate::cli::{
    ClosedFormArgs, Command, HypothesisArgs, OptimizeArgs, ReplayArgs, SimulateArgs,
    UnambiguousArgs,
};
use crate::manifest::{default_manifest_path, load_manifest, RunManifest};
use crate::output::{
    g15, grid_csv, mean_path_csv, to_json_document, unambiguous_csv, unambiguous_text,
    ClosedFormDoc, ClosedTriple, EstimateDoc, GridPoint, OptimizeDoc, SimulateParams,
    SimulateSummaryDoc, UnambiguousDoc, CLOSED_FORM_SCHEMA, OPTIMIZE_SCHEMA, SIMULATE_SCHEMA,
    UNAMBIGUOUS_SCHEMA,
};
use crate::CliError;

pub fn run_command(command: Command, write_manifest: bool) -> Result<(), CliError> {
    let started = Instant::now();
    match command {
        Command::ClosedForm(args) => run_closed_form(args, write_manifest, started),
        Command::Optimize(args) => run_optimize(args, write_manifest, started),
        Command::Simulate(args) => run_simulate(args, write_manifest, started),
        Command::Unambiguous(args) => run_unambiguous(args, write_manifest, started),
        Command::Replay(args) => run_replay(args),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Print to stdout or write to a file; returns the written paths.
fn emit(text: &str, out: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    match out {
        Some(path) => {
            write_file(path, text)?;
            Ok(vec![path.to_path_buf()])
        }
        None => {
            print!("{text}");
            Ok(Vec::new())
        }
    }
}

fn finish_manifest(
    write_manifest: bool,
    manifest_out: Option<PathBuf>,
    command: Command,
    seed: Option<u64>,
    outputs: Vec<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    if !write_manifest || outputs.is_empty() {
        return Ok(());
    }
    let path = manifest_out.unwrap_or_else(|| default_manifest_path(&outputs[0]));
    let manifest = RunManifest::new(command, seed, outputs, started.elapsed().as_secs_f64());
    write_file(&path, &to_json_document(&manifest))
}

fn build_problem(hypothesis: &HypothesisArgs) -> Result<BatchProblem, CliError> {
    let budget = ErrorBudget::new(hypothesis.alpha, hypothesis.beta)?;
    Ok(BatchProblem::new(
        hypothesis.n,
        hypothesis.theta0,
        hypothesis.theta1,
        budget,
    )?)
}

fn parse_l_range(spec: &str, n: u32) -> Result<(u32, u32), CliError> {
    let parsed = spec.split_once(':').and_then(|(a, b)| {
        let start = a.trim().parse::<u32>().ok()?;
        let end = b.trim().parse::<u32>().ok()?;
        Some((start, end))
    });
    match parsed {
        Some((start, end)) if start >= 1 && start <= end && end <= n => Ok((start, end)),
        Some(_) => Err(CliError::Param(format!(
            "--l-range must satisfy 1 <= START <= END <= N = {n}, got {spec}"
        ))),
        None => Err(CliError::Param(format!(
            "--l-range must be START:END with positive integers, got {spec}"
        ))),
    }
}

fn run_closed_form(
    args: ClosedFormArgs,
    write_manifest: bool,
    started: Instant,
) -> Result<(), CliError> {
    let prob = build_problem(&args.hypothesis)?;
    let (start, end) = match (args.l, &args.l_range) {
        (Some(l), None) => (l, l),
        (None, Some(spec)) => parse_l_range(spec, prob.n_total())?,
        _ => unreachable!("clap enforces exactly one of --l/--l-range"),
    };
    let points = (start..=end)
        .map(|l| {
            let report = success_probability(l, &prob)?;
            Ok(GridPoint {
                l,
                p0: report.p0,
                p1: report.p1,
                ps: report.p_s,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let text = if args.json {
        to_json_document(&ClosedFormDoc {
            schema_version: CLOSED_FORM_SCHEMA,
            n: prob.n_total(),
            theta0: prob.theta0(),
            theta1: prob.theta1(),
            alpha: args.hypothesis.alpha,
            beta: args.hypothesis.beta,
            points,
        })
    } else {
        grid_csv(&points)
    };
    let outputs = emit(&text, args.out.as_deref())?;
    let manifest_out = args.manifest_out.clone();
    finish_manifest(
        write_manifest,
        manifest_out,
        Command::ClosedForm(args),
        None,
        outputs,
        started,
    )
}

fn run_optimize(
    args: OptimizeArgs,
    write_manifest: bool,
    started: Instant,
) -> Result<(), CliError> {
    let prob = build_problem(&args.hypothesis)?;
    let report = optimize_batch(&prob);
    let n = prob.n_total();

    // theta0 = -theta1 has no closed-form optimum or plateau; report nulls
    let (l_opt, l_min, l_max) = if prob.is_symmetric() {
        (None, None, None)
    } else {
        let l_opt = l_opt_closed_form(&prob)?;
        let (l_min, l_max) = l_bounds(&prob)?;
        (l_opt, l_min, l_max)
    };

    let doc = OptimizeDoc {
        schema_version: OPTIMIZE_SCHEMA,
        case: report.case.to_string(),
        l_argmax: report.l,
        p_s_max: report.p_s,
        p0: report.p0,
        p1: report.p1,
        l_opt_closed_form: l_opt,
        l_opt_rounded: l_opt.map(|v| recommended_batch_size(v, n)),
        l_min,
        l_min_rounded: l_min.map(|v| recommended_batch_size(v, n)),
        l_max,
        l_max_rounded: l_max.map(|v| recommended_batch_size(v, n)),
        note: prob.is_symmetric().then(|| "l-invariant".to_string()),
        recommendation: (report.case == CaseClass::CaseI).then(|| "random guess".to_string()),
    };
    let text = to_json_document(&doc);
    print!("{text}");

    let mut outputs = Vec::new();
    if let Some(path) = &args.out {
        write_file(path, &text)?;
        outputs.push(path.clone());
    }
    let manifest_out = args.manifest_out.clone();
    finish_manifest(
        write_manifest,
        manifest_out,
        Command::Optimize(args),
        None,
        outputs,
        started,
    )
}

fn run_simulate(
    args: SimulateArgs,
    write_manifest: bool,
    started: Instant,
) -> Result<(), CliError> {
    let prob = build_problem(&args.hypothesis)?;
    let truth = Hypothesis::from_index(args.truth)?;
    let config = SimulationConfig::new(args.seed, args.trajectories, truth, prob, args.l)?;
    let summary = sprt_coherent::simulate(&config);

    let thresholds = wald_thresholds(prob.budget());
    let analytic = success_probability(args.l, &prob)?;
    let model = batch_hypotheses(prob.theta0(), prob.theta1(), args.l)?;
    let at_horizon = horizon_stop_probabilities(&model, summary.horizon as f64, &thresholds)?;

    let doc = SimulateSummaryDoc {
        schema_version: SIMULATE_SCHEMA,
        parameters: SimulateParams {
            n: prob.n_total(),
            theta0: prob.theta0(),
            theta1: prob.theta1(),
            alpha: args.hypothesis.alpha,
            beta: args.hypothesis.beta,
            l: args.l,
            truth: args.truth,
            trajectories: args.trajectories,
            seed: args.seed,
        },
        horizon: summary.horizon,
        leftover_copies: summary.leftover_copies,
        log_a: thresholds.log_a(),
        log_b: thresholds.log_b(),
        closed_form: ClosedTriple {
            p0: analytic.p0,
            p1: analytic.p1,
            ps: analytic.p_s,
        },
        closed_form_at_horizon: ClosedTriple {
            p0: at_horizon.p0_accept0,
            p1: at_horizon.p1_accept1,
            ps: total_success(at_horizon.p0_accept0, at_horizon.p1_accept1)?,
        },
        horizon_estimate: EstimateDoc::from(summary.horizon_estimate),
        first_crossing_estimate: EstimateDoc::from(summary.first_crossing_estimate),
    };
    let summary_text = to_json_document(&doc);
    let mean_csv = mean_path_csv(&summary.mean_path);

    let mut outputs = Vec::new();
    if let Some(path) = &args.mean_path_out {
        write_file(path, &mean_csv)?;
        outputs.push(path.clone());
    }
    if let Some(path) = &args.paths_out {
        let mut text = String::from("trajectory,step,z\n");
        for index in 0..config.trajectories() {
            for (step, z) in trajectory_path(&config, index).iter().enumerate() {
                text.push_str(&format!("{index},{},{}\n", step + 1, g15(*z)));
            }
        }
        write_file(path, &text)?;
        outputs.push(path.clone());
    }
    if let Some(path) = &args.summary_out {
        write_file(path, &summary_text)?;
        outputs.push(path.clone());
    }

    if args.json {
        print!("{summary_text}");
    } else if args.mean_path_out.is_none() {
        print!("{mean_csv}");
    }

    let manifest_out = args.manifest_out.clone();
    let seed = args.seed;
    finish_manifest(
        write_manifest,
        manifest_out,
        Command::Simulate(args),
        Some(seed),
        outputs,
        started,
    )
}

fn run_unambiguous(
    args: UnambiguousArgs,
    write_manifest: bool,
    started: Instant,
) -> Result<(), CliError> {
    let pair = match (args.overlap, args.theta_angle) {
        (Some(overlap), None) => QubitPair::from_overlap(overlap)?,
        (None, Some(angle)) => QubitPair::new(angle)?,
        _ => unreachable!("clap enforces exactly one of --overlap/--theta-angle"),
    };
    let overlap = pair.overlap();
    let ps_direct = success_unambiguous(overlap, args.n)?;
    let ps_batched = batched_success_unambiguous(overlap, args.n, args.l)?;
    // exact by construction; a mismatch would be an internal bug
    assert!(
        ps_direct == ps_batched,
        "batched and direct success probabilities diverged"
    );

    let doc = UnambiguousDoc {
        schema_version: UNAMBIGUOUS_SCHEMA,
        overlap,
        theta_angle: pair.theta(),
        n: args.n,
        l: args.l,
        ps_direct,
        ps_batched,
        equal: true,
    };
    let text = if args.json {
        to_json_document(&doc)
    } else if args.csv {
        unambiguous_csv(&doc)
    } else {
        unambiguous_text(&doc)
    };
    let outputs = emit(&text, args.out.as_deref())?;
    let manifest_out = args.manifest_out.clone();
    finish_manifest(
        write_manifest,
        manifest_out,
        Command::Unambiguous(args),
        None,
        outputs,
        started,
    )
}

fn run_replay(args: ReplayArgs) -> Result<(), CliError> {
    let manifest = load_manifest(&args.manifest)?;
    if matches!(manifest.command, Command::Replay(_)) {
        return Err(CliError::Param(
            "manifest contains a replay command; refusing to recurse".to_string(),
        ));
    }
    // reproduce the outputs; the original manifest stays as the record
    run_command(manifest.command, false)
}
