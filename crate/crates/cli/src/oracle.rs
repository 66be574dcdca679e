use anyhow::{bail, Result};
use ppsz_lab::cnf::Var;
use ppsz_lab::oracle::{critical_variables, enumerate_satisfying, subcube_partition_ascending};
use serde::Serialize;

use crate::input::read_formula;
use crate::{Format, OracleArgs};

/// Most models kept in memory for the partition.
const MODEL_CAP: usize = 1 << 20;

#[derive(Serialize)]
struct BlockRow {
    alpha: String,
    defining: Vec<u32>,
}

#[derive(Serialize)]
struct OracleReport {
    variables: u32,
    occurring: usize,
    clauses: usize,
    sat_count: usize,
    critical: Option<Vec<u32>>,
    critical_fraction: Option<f64>,
    partition: Vec<BlockRow>,
}

fn indices(vars: &[Var]) -> Vec<u32> {
    vars.iter().map(|v| v.get()).collect()
}

pub fn run(args: &OracleArgs) -> Result<u8> {
    let f = read_formula(&args.path)?;
    let set = enumerate_satisfying(&f, MODEL_CAP)?;
    if set.truncated {
        bail!("more than {MODEL_CAP} models");
    }
    let (critical, fraction, partition) = if set.is_empty() {
        (None, None, Vec::new())
    } else {
        let report = critical_variables(&f)?;
        let partition = subcube_partition_ascending(&set)?;
        partition.verify()?;
        let rows = partition
            .blocks
            .iter()
            .map(|b| BlockRow {
                alpha: b.alpha.to_bits(),
                defining: indices(&b.defining),
            })
            .collect();
        (Some(indices(&report.critical)), Some(report.fraction), rows)
    };
    let report = OracleReport {
        variables: f.num_vars(),
        occurring: f.num_occurring(),
        clauses: f.len(),
        sat_count: set.len(),
        critical,
        critical_fraction: fraction,
        partition,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            println!("c variables={} occurring={} clauses={}", report.variables, report.occurring, report.clauses);
            println!("sat_count={}", report.sat_count);
            match (&report.critical, report.critical_fraction) {
                (Some(c), Some(frac)) => {
                    let list: Vec<String> = c.iter().map(u32::to_string).collect();
                    println!("critical={}", list.join(" "));
                    println!("c(F)={frac}");
                }
                _ => println!("c unsatisfiable: no critical variables or partition"),
            }
            for b in &report.partition {
                let list: Vec<String> = b.defining.iter().map(u32::to_string).collect();
                println!("alpha={} defining={}", b.alpha, list.join(" "));
            }
        }
        Format::Csv => bail!("oracle writes text or json"),
    }
    Ok(0)
}
