use std::time::Duration;

use anyhow::{bail, Result};
use ppsz_lab::solvers::{
    solve_repeated, Algorithm, InnerAlgorithm, Outcome, SolverBudget, WrapperConfig, DEFAULT_CSTAR_K3,
    DEFAULT_TARGET_BASE_K3,
};

use crate::input::read_formula;
use crate::{AlgoArg, Format, InnerArg, SolveArgs};

pub const EXIT_SAT: u8 = 10;
pub const EXIT_UNKNOWN: u8 = 0;

pub fn run(args: &SolveArgs) -> Result<u8> {
    let f = read_formula(&args.path)?;
    if args.format == Format::Csv {
        bail!("solve writes text or json");
    }
    if args.cstar.is_some() && args.algo != AlgoArg::Wrapper {
        bail!("--cstar only applies to --algo wrapper");
    }
    let algo = match args.algo {
        AlgoArg::Ppsz => Algorithm::Ppsz,
        AlgoArg::Schoening => Algorithm::Schoening,
        AlgoArg::Comb => Algorithm::Comb,
        AlgoArg::Wrapper => {
            let inner = match args.inner {
                InnerArg::Ppsz => InnerAlgorithm::Ppsz,
                InnerArg::Schoening => InnerAlgorithm::Schoening,
                InnerArg::Comb => InnerAlgorithm::Comb,
            };
            let cstar = args.cstar.unwrap_or(DEFAULT_CSTAR_K3);
            Algorithm::Wrapper(WrapperConfig::for_target(cstar, DEFAULT_TARGET_BASE_K3, inner)?)
        }
    };
    let mut budget = SolverBudget::new(args.budget, args.seed.seed.resolve())?;
    budget.jobs = args.seed.jobs;
    if let Some(secs) = args.time_limit {
        if !(secs > 0.0 && secs.is_finite()) {
            bail!("--time-limit must be a positive number of seconds");
        }
        budget.time_limit = Some(Duration::from_secs_f64(secs));
    }

    let report = solve_repeated(&f, algo, &budget)?;
    if let Some(model) = &report.model {
        if !f.is_satisfied_by(model) {
            bail!("internal error: solver returned a non-model");
        }
    }

    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&report)?),
        _ => {
            println!(
                "c algo={} seed={} repetitions={} forced={} guessed={} flips={}",
                algo_name(args.algo),
                report.seed,
                report.repetitions,
                report.forced,
                report.guessed,
                report.flips
            );
            if let Algorithm::Wrapper(c) = algo {
                println!("c wrapper cstar={} b={} r={} target={}", c.cstar, c.b, c.r(), c.b * c.r());
            }
            match &report.model {
                Some(model) => {
                    println!("s SATISFIABLE");
                    let lits = model.to_dimacs_lits();
                    for chunk in lits.chunks(20) {
                        let line: Vec<String> = chunk.iter().map(i64::to_string).collect();
                        println!("v {}", line.join(" "));
                    }
                    println!("v 0");
                }
                None => println!("s UNKNOWN"),
            }
        }
    }
    Ok(match report.outcome {
        Outcome::Satisfiable => EXIT_SAT,
        Outcome::Exhausted => EXIT_UNKNOWN,
    })
}

fn algo_name(a: AlgoArg) -> &'static str {
    match a {
        AlgoArg::Ppsz => "ppsz",
        AlgoArg::Schoening => "schoening",
        AlgoArg::Comb => "comb",
        AlgoArg::Wrapper => "wrapper",
    }
}
