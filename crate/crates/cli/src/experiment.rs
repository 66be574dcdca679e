use anyhow::{bail, Result};
use ppsz_lab::cnf::{Assignment, CnfFormula};
use ppsz_lab::oracle::{
    critical_variables, dpll_solve, exact_forced_fraction, exact_success_ppsz_with, exact_success_schoening,
    guess_preservation_rate, planted_unique_kcnf, random_satisfiable_kcnf, DpllVerdict, EXACT_FORCED_LIMIT,
    EXACT_PPSZ_LIMIT, EXACT_SCHOENING_LIMIT,
};
use ppsz_lab::solvers::{repetition_rng, Placement, PpszSolver, SchoeningWalker};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{ExperimentArgs, ExperimentKind, Format};

const MAX_N: u32 = 20;
const MAX_RUNS: u64 = 10_000_000;
const MAX_INSTANCES: u64 = 10_000;

#[derive(Debug, Serialize)]
struct Row {
    instance: u64,
    n: u32,
    runs: u64,
    successes: u64,
    estimate: f64,
    stderr: f64,
    reference: Option<f64>,
    /// `exact`, `lower-bound` or `none`.
    reference_kind: &'static str,
    pass: Option<bool>,
}

fn check_caps(args: &ExperimentArgs) -> Result<()> {
    let n_cap = match args.kind {
        ExperimentKind::SchoeningSuccess => EXACT_SCHOENING_LIMIT,
        _ => MAX_N,
    };
    if args.n == 0 || args.n > n_cap {
        bail!("--n must lie in 1..={n_cap} for this experiment");
    }
    if args.k == 0 || args.k > args.n {
        bail!("--k must lie in 1..=n");
    }
    if args.runs == 0 || args.runs > MAX_RUNS {
        bail!("--runs must lie in 1..={MAX_RUNS}");
    }
    if args.instances == 0 || args.instances > MAX_INSTANCES {
        bail!("--instances must lie in 1..={MAX_INSTANCES}");
    }
    if args.format == Format::Text {
        bail!("experiments write csv or json");
    }
    Ok(())
}

/// Clause count near the satisfiability threshold for small `n`.
fn default_clauses(n: u32, k: u32) -> usize {
    let ratio = match k {
        1 => 0.5,
        2 => 1.0,
        3 => 4.0,
        4 => 9.0,
        k => 0.9 * 2f64.powi(k as i32) * 2f64.ln(),
    };
    (ratio * f64::from(n)).round().max(1.0) as usize
}

fn instance(args: &ExperimentArgs, s: u64) -> Result<CnfFormula> {
    let f = if args.unique {
        planted_unique_kcnf(args.n, args.k, s)?
    } else {
        let m = args.clauses.unwrap_or_else(|| default_clauses(args.n, args.k));
        random_satisfiable_kcnf(args.n, m, args.k, s)?
    };
    Ok(f)
}

fn random_assignment<R: Rng>(n: u32, rng: &mut R) -> Assignment {
    Assignment::new((0..n).map(|_| rng.random()).collect())
}

/// Counts successes of `trial(run)` over `runs` independent runs.
fn count(runs: u64, trial: impl Fn(u64) -> bool + Sync) -> u64 {
    (0..runs).into_par_iter().filter(|&r| trial(r)).count() as u64
}

fn binomial_row(i: u64, n: u32, runs: u64, successes: u64, reference: Option<(f64, &'static str)>) -> Row {
    let est = successes as f64 / runs as f64;
    let stderr = (est * (1.0 - est) / runs as f64).sqrt();
    let (reference, kind, pass) = match reference {
        Some((p, "exact")) => {
            let sigma = (p * (1.0 - p) / runs as f64).sqrt();
            (Some(p), "exact", Some((est - p).abs() <= 3.0 * sigma + 1e-12))
        }
        Some((p, kind)) => (Some(p), kind, Some(est >= p - 3.0 * stderr)),
        None => (None, "none", None),
    };
    Row {
        instance: i,
        n,
        runs,
        successes,
        estimate: est,
        stderr,
        reference,
        reference_kind: kind,
        pass,
    }
}

fn measure(args: &ExperimentArgs, seed: u64, i: u64) -> Result<Row> {
    // Instance `i` draws its formula seed and its run seed from stream `i`.
    let mut seeds = repetition_rng(seed, i);
    let f = instance(args, seeds.random())?;
    let n = f.num_vars();
    let run_seed: u64 = seeds.random();
    let row = match args.kind {
        ExperimentKind::PpszSuccess => {
            let solver = PpszSolver::new(&f);
            let successes = count(args.runs, |r| solver.run(&mut repetition_rng(run_seed, r)).satisfied);
            let reference = if n <= EXACT_PPSZ_LIMIT {
                Some((exact_success_ppsz_with(&solver)?, "exact"))
            } else if args.unique {
                // Each variable is forced with probability at least 1/k.
                let vbl = f.num_occurring() as f64;
                Some(((-(1.0 - 1.0 / f64::from(args.k)) * vbl).exp2(), "lower-bound"))
            } else {
                None
            };
            binomial_row(i, n, args.runs, successes, reference)
        }
        ExperimentKind::SchoeningSuccess => {
            let walker = SchoeningWalker::new(&f);
            let successes = count(args.runs, |r| {
                let mut rng = repetition_rng(run_seed, r);
                let beta = random_assignment(n, &mut rng);
                walker.walk(&beta, &mut rng).satisfied
            });
            let p = exact_success_schoening(&f, None)?;
            binomial_row(i, n, args.runs, successes, Some((p, "exact")))
        }
        ExperimentKind::ForcedFraction => {
            let DpllVerdict::Sat(alpha) = dpll_solve(&f) else {
                bail!("instance {i} has no model");
            };
            let solver = PpszSolver::new(&f);
            let vbl = f.num_occurring() as f64;
            let counts: Vec<u64> = (0..args.runs)
                .into_par_iter()
                .map(|r| {
                    let placement = Placement::uniform(n, &mut repetition_rng(run_seed, r));
                    solver.forced_set(&alpha, &placement).map_or(0, |s| s.len() as u64)
                })
                .collect();
            let fractions: Vec<f64> = counts.iter().map(|&c| c as f64 / vbl).collect();
            let runs = args.runs as f64;
            let mean = fractions.iter().sum::<f64>() / runs;
            let var = fractions.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs - 1.0).max(1.0);
            let stderr = (var / runs).sqrt();
            let reference = if f.num_occurring() <= EXACT_FORCED_LIMIT {
                Some(exact_forced_fraction(&solver, &alpha)?)
            } else {
                None
            };
            Row {
                instance: i,
                n,
                runs: args.runs,
                successes: counts.iter().sum(),
                estimate: mean,
                stderr,
                reference,
                reference_kind: if reference.is_some() { "exact" } else { "none" },
                pass: reference.map(|q| (mean - q).abs() <= 3.0 * stderr + 1e-12),
            }
        }
        ExperimentKind::WrapperPreservation => {
            let g = guess_preservation_rate(&f)?;
            let c = critical_variables(&f)?;
            let reference = 1.0 - c.fraction / 2.0;
            Row {
                instance: i,
                n,
                runs: g.trials,
                successes: g.preserved,
                estimate: g.rate(),
                stderr: 0.0,
                reference: Some(reference),
                reference_kind: "exact",
                pass: Some(g.preserved + c.critical.len() as u64 == g.trials),
            }
        }
    };
    Ok(row)
}

pub fn run(args: &ExperimentArgs) -> Result<u8> {
    check_caps(args)?;
    let seed = args.seed.seed.resolve();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.seed.jobs).build()?;
    let rows = pool.install(|| (0..args.instances).map(|i| measure(args, seed, i)).collect::<Result<Vec<_>>>())?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        _ => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    let checked = rows.iter().filter(|r| r.pass.is_some()).count();
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    eprintln!("c seed={seed} passed {passed}/{checked} checked rows");
    Ok(0)
}
