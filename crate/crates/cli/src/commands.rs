use std::path::Path;
use std::process::ExitCode;

use bosonfft::fourier::{
    check_collision_free, distribution_from_plan, q_method1, q_method2, SamplingMode,
};
use bosonfft::io::{self, ChainReport, DistributionEntry, ReportCheckpoint};
use bosonfft::mcmc::{cosine_similarity, run_chain_with_checkpoints, ChainConfig};
use bosonfft::{
    complexity, enumerate_output_states, full_distribution, haar_random_unitary, outcome_count,
    probability_via_expansion, probability_via_permanent, single_state_probability,
    validate_unitary, Error, FockState, Result, UnitaryMatrix,
};

use crate::{FsMode, OutputFormat, UnitarySource};

const UNITARITY_TOL: f64 = 1e-10;

fn parse_state(text: &str, flag: &str) -> Result<FockState> {
    text.parse()
        .map_err(|e| Error::InvalidArgument(format!("{flag}: {e}")))
}

fn resolve_unitary(source: &UnitarySource, seed: u64) -> Result<UnitaryMatrix> {
    let u = match (&source.unitary, source.haar) {
        (Some(path), None) => io::read_unitary_json(path)?,
        (None, Some(n)) => haar_random_unitary(n, seed)?,
        _ => {
            return Err(Error::InvalidArgument(
                "provide exactly one of --unitary <path> or --haar <n>".into(),
            ))
        }
    };
    if !validate_unitary(&u, UNITARITY_TOL) {
        return Err(Error::InvalidArgument(format!(
            "matrix is not unitary within {UNITARITY_TOL:e} (deviation {:e})",
            u.unitarity_deviation()
        )));
    }
    Ok(u)
}

pub fn haar(n: usize, seed: u64, out: &Path) -> Result<ExitCode> {
    let u = haar_random_unitary(n, seed)?;
    io::write_unitary_json(out, &u)?;
    // The written file is the contract; make sure it reloads bit-exactly.
    let back = io::read_unitary_json(out)?;
    if back != u {
        return Err(Error::Malformed {
            path: out.to_path_buf(),
            detail: "written unitary did not round-trip bit-identically".into(),
        });
    }
    println!("wrote {}x{} unitary (seed {seed}) to {}", n, n, out.display());
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn prob(
    source: &UnitarySource,
    input: &str,
    target: &str,
    method: u8,
    fs_mode: FsMode,
    seed: u64,
    out: Option<&Path>,
    max_samples: u64,
    max_streamed: u64,
) -> Result<ExitCode> {
    let input = parse_state(input, "--input")?;
    let target = parse_state(target, "--target")?;
    let u = resolve_unitary(source, seed)?;
    let probability = match method {
        1 => {
            let plan = q_method1(input.total_photons(), input.modes())?;
            let spectrum =
                bosonfft::fourier::full_spectrum_with_limit(&u, &input, &plan, max_samples)?;
            if target.total_photons() != input.total_photons() {
                return Err(Error::PhotonMismatch {
                    input: input.total_photons(),
                    output: target.total_photons(),
                });
            }
            let alpha = spectrum.state_amplitude(&target)?;
            alpha.norm_sqr() * bosonfft::factorial_ratio(&target, &input)
        }
        2 => {
            let mode = match fs_mode {
                FsMode::Reduced => SamplingMode::Reduced,
                FsMode::Nyquist => SamplingMode::Nyquist,
            };
            bosonfft::single_state_probability_with_limit(&u, &input, &target, mode, max_streamed)?
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "--method must be 1 or 2, got {other}"
            )))
        }
    };
    println!("{probability:.12}");
    if let Some(path) = out {
        let record = serde_json::json!({
            "input": input.occupations(),
            "target": target.occupations(),
            "method": method,
            "fs_mode": match fs_mode { FsMode::Reduced => "reduced", FsMode::Nyquist => "nyquist" },
            "probability": probability,
        });
        std::fs::write(path, serde_json::to_string_pretty(&record).unwrap() + "\n").map_err(
            |e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            },
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn dist(
    source: &UnitarySource,
    input: &str,
    seed: u64,
    out: &Path,
    format: OutputFormat,
    nyquist: bool,
    spectrum_out: Option<&Path>,
    max_samples: u64,
) -> Result<ExitCode> {
    let input = parse_state(input, "--input")?;
    let u = resolve_unitary(source, seed)?;
    let mut plan = q_method1(input.total_photons(), input.modes())?;
    if nyquist {
        plan = plan.with_nyquist_rate()?;
    }
    if let Some(path) = spectrum_out {
        let spectrum = bosonfft::fourier::full_spectrum_with_limit(&u, &input, &plan, max_samples)?;
        io::write_spectrum_csv(path, &spectrum)?;
    }
    let distribution = distribution_from_plan(&u, &input, &plan, max_samples)?;
    match format {
        OutputFormat::Json => io::write_distribution_json(out, &distribution)?,
        OutputFormat::Csv => io::write_distribution_csv(out, &distribution)?,
    }
    println!(
        "wrote {} states (total mass {:.9}) to {}",
        distribution.len(),
        distribution.total_mass(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_checkpoints(text: Option<&str>, steps: u64) -> Result<Vec<u64>> {
    let mut points = match text {
        Some(list) => list
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidArgument(format!("--checkpoints: {e}")))
            })
            .collect::<Result<Vec<u64>>>()?,
        None => {
            let mut decades = Vec::new();
            let mut value = 10u64;
            while value < steps {
                decades.push(value);
                value = value.saturating_mul(10);
            }
            decades
        }
    };
    points.retain(|&p| p > 0 && p <= steps);
    points.push(steps);
    points.sort_unstable();
    points.dedup();
    Ok(points)
}

#[allow(clippy::too_many_arguments)]
pub fn sample(
    source: &UnitarySource,
    input: &str,
    steps: u64,
    burn_in: Option<u64>,
    seed: u64,
    out: &Path,
    checkpoints: Option<&str>,
    exact_limit: u128,
) -> Result<ExitCode> {
    let input = parse_state(input, "--input")?;
    let u = resolve_unitary(source, seed)?;
    let mut cfg = ChainConfig::new(steps, seed);
    if let Some(b) = burn_in {
        cfg = cfg.with_burn_in(b)?;
    }
    let checkpoint_steps = parse_checkpoints(checkpoints, steps)?;
    let (stats, snapshots) = run_chain_with_checkpoints(&u, &input, &cfg, &checkpoint_steps)?;

    // Exact reference only when the outcome set is small enough to hold.
    let states = outcome_count(input.modes(), input.total_photons()).unwrap_or(u128::MAX);
    let exact = if states <= exact_limit {
        match full_distribution(&u, &input) {
            Ok(dist) => Some(dist),
            Err(Error::Capacity(_)) => None,
            Err(other) => return Err(other),
        }
    } else {
        None
    };

    let report_checkpoints = match &exact {
        Some(reference) => snapshots
            .iter()
            .map(|snap| {
                cosine_similarity(&snap.empirical, reference).map(|s| ReportCheckpoint {
                    step: snap.step,
                    cosine_distance: 1.0 - s,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let report = ChainReport {
        steps: cfg.steps,
        burn_in: cfg.burn_in,
        seed: cfg.seed,
        acceptance_rate: stats.acceptance_rate(),
        checkpoints: report_checkpoints,
        empirical: stats
            .empirical
            .iter()
            .map(|(state, probability)| DistributionEntry {
                state: state.occupations().to_vec(),
                probability,
            })
            .collect(),
    };
    io::write_chain_report(out, &report)?;
    match report.checkpoints.last() {
        Some(last) => println!(
            "chain of {} steps: acceptance {:.4}, final cosine distance {:.6}",
            steps,
            report.acceptance_rate,
            last.cosine_distance
        ),
        None => println!(
            "chain of {} steps: acceptance {:.4}, empirical-only ({} outcome states)",
            steps, report.acceptance_rate, states
        ),
    }
    Ok(ExitCode::SUCCESS)
}

/// Input with `photons` photons spread round-robin over `modes` modes.
fn round_robin_state(modes: usize, photons: u32) -> FockState {
    let mut occ = vec![0u32; modes];
    for p in 0..photons {
        occ[p as usize % modes] += 1;
    }
    FockState::new(occ)
}

struct Suite {
    failures: u64,
    first_failure: Option<String>,
}

impl Suite {
    fn new() -> Self {
        Self {
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn report(&self, name: &str, cases: u64) -> bool {
        if self.failures == 0 {
            println!("[pass] {name} ({cases} cases)");
            true
        } else {
            println!(
                "[FAIL] {name}: {} of {cases} cases failed; first counterexample: {}",
                self.failures,
                self.first_failure.as_deref().unwrap_or("-")
            );
            false
        }
    }
}

pub fn verify(max_n: usize, max_m: u32, trials: usize, tol: f64, seed: u64) -> Result<ExitCode> {
    let mut all_ok = true;

    // Engine vs permanent oracle (and the expansion oracle where it applies),
    // plus normalization of every distribution.
    let mut oracle = Suite::new();
    let mut normalization = Suite::new();
    let mut oracle_cases = 0u64;
    let mut normalization_cases = 0u64;
    for n in 1..=max_n {
        for m in 1..=max_m.min(n as u32) {
            let u = haar_random_unitary(n, seed ^ (n as u64 * 1000 + m as u64))?;
            let input = round_robin_state(n, m);
            let dist = full_distribution(&u, &input)?;
            normalization_cases += 1;
            normalization.check((dist.total_mass() - 1.0).abs() <= tol.max(1e-6), || {
                format!("N={n} M={m}: total mass {}", dist.total_mass())
            });
            for (state, engine_p) in dist.iter() {
                oracle_cases += 1;
                let permanent_p = probability_via_permanent(&u, &input, state)?;
                oracle.check((engine_p - permanent_p).abs() <= tol, || {
                    format!(
                        "N={n} M={m} state={state}: engine={engine_p} permanent={permanent_p}"
                    )
                });
                if n <= 5 && m <= 5 {
                    let expansion_p = probability_via_expansion(&u, &input, state)?;
                    oracle_cases += 1;
                    oracle.check((permanent_p - expansion_p).abs() <= tol, || {
                        format!(
                            "N={n} M={m} state={state}: permanent={permanent_p} expansion={expansion_p}"
                        )
                    });
                }
            }
        }
    }
    all_ok &= oracle.report("oracle equivalence", oracle_cases);
    all_ok &= normalization.report("normalization", normalization_cases);

    // Separation theorems, exhaustively over the requested ranges.
    let mut separation = Suite::new();
    let mut separation_cases = 0u64;
    for n in 1..=max_n {
        for m in 1..=max_m {
            let outcomes = enumerate_output_states(n, m)?;
            for target in &outcomes {
                let plan = q_method2(target)?;
                separation_cases += 2;
                separation.check(check_collision_free(&outcomes, &plan, None), || {
                    format!("N={n} M={m} target={target}: frequency collision")
                });
                separation.check(
                    check_collision_free(&outcomes, &plan, Some(plan.f_target() + 1)),
                    || format!("N={n} M={m} target={target}: collision mod f+1"),
                );
            }
        }
    }
    // The stronger statement: strictly positive targets stay separated from
    // every state of *at most* the same photon count.
    for n in 1..=max_n {
        for m in n as u32..=max_m {
            let positive_targets: Vec<FockState> = enumerate_output_states(n, m)?
                .into_iter()
                .filter(|s| s.occupied_count() == n)
                .collect();
            let mut lighter = Vec::new();
            for m_other in 0..=m {
                lighter.extend(enumerate_output_states(n, m_other)?);
            }
            for target in &positive_targets {
                let plan = q_method2(target)?;
                separation_cases += 2;
                separation.check(check_collision_free(&lighter, &plan, None), || {
                    format!("N={n} M={m} target={target}: collision among lighter states")
                });
                separation.check(
                    check_collision_free(&lighter, &plan, Some(plan.f_target() + 1)),
                    || format!("N={n} M={m} target={target}: lighter-state collision mod f+1"),
                );
            }
        }
    }
    all_ok &= separation.report("separation theorems", separation_cases);

    // Reduced rate against the alias-free Nyquist rate on random cases.
    let mut reduced = Suite::new();
    let mut reduced_cases = 0u64;
    let n_hi = max_n.clamp(2, 6);
    for trial in 0..trials {
        let n = 2 + trial % (n_hi.max(2) - 1);
        if n > max_n {
            continue;
        }
        let m = 1 + (trial as u32 * 7 + 3) % max_m.min(n as u32).max(1);
        let u = haar_random_unitary(n, seed ^ (0xA5A5 + trial as u64))?;
        let input = round_robin_state(n, m);
        let outcomes = enumerate_output_states(n, m)?;
        let l = &outcomes[(trial * 13 + 5) % outcomes.len()];
        let p_reduced = single_state_probability(&u, &input, l, SamplingMode::Reduced)?;
        let p_nyquist = single_state_probability(&u, &input, l, SamplingMode::Nyquist)?;
        reduced_cases += 1;
        reduced.check((p_reduced - p_nyquist).abs() <= tol, || {
            format!("N={n} M={m} l={l}: reduced={p_reduced} nyquist={p_nyquist}")
        });
    }
    all_ok &= reduced.report("reduced-rate equivalence", reduced_cases);

    if all_ok {
        println!("verification passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification FAILED");
        Ok(ExitCode::from(3))
    }
}

pub fn bench(
    n_min: usize,
    n_max: usize,
    seed: u64,
    average: u32,
    ratio_out: &Path,
    speedup_out: &Path,
) -> Result<ExitCode> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "bad mode range {n_min}..{n_max}"
        )));
    }
    let samples = average.max(1);
    let mut ratio_csv = String::from("N,weighted_average,maximum,ratio\n");
    for n in n_min..=n_max {
        let input = FockState::new(vec![1; n]);
        let mut weighted_sum = 0.0f64;
        let mut maximum = 0.0f64;
        let mut skipped = None;
        for i in 0..samples {
            let u = haar_random_unitary(n, seed ^ (n as u64 * 7919 + i as u64))?;
            match complexity::weighted_average_complexity(&u, &input) {
                Ok(report) => {
                    weighted_sum += report.weighted_average;
                    maximum = report.maximum;
                }
                Err(Error::Capacity(msg)) => {
                    skipped = Some(msg);
                    break;
                }
                Err(other) => return Err(other),
            }
        }
        match skipped {
            Some(_) => ratio_csv.push_str(&format!("{n},skipped,skipped,skipped\n")),
            None => {
                let weighted = weighted_sum / samples as f64;
                let ratio = weighted / maximum;
                ratio_csv.push_str(&format!("{n},{weighted},{maximum},{ratio}\n"));
            }
        }
    }
    std::fs::write(ratio_out, &ratio_csv).map_err(|e| Error::Io {
        path: ratio_out.to_path_buf(),
        source: e,
    })?;

    let range: Vec<usize> = (n_min..=n_max).collect();
    let mut speedup_csv = String::from("N,engine_cost,clifford_cost\n");
    for row in complexity::speedup_table(&range)? {
        speedup_csv.push_str(&format!(
            "{},{},{}\n",
            row.modes, row.engine_cost, row.clifford_cost
        ));
    }
    std::fs::write(speedup_out, &speedup_csv).map_err(|e| Error::Io {
        path: speedup_out.to_path_buf(),
        source: e,
    })?;

    println!(
        "wrote {} and {}",
        ratio_out.display(),
        speedup_out.display()
    );
    Ok(ExitCode::SUCCESS)
}
