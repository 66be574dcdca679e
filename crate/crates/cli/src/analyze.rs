use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use ppsz_lab::bounds::{
    beta_of_h, bound_3sat_appendix, bound_3sat_schoening, bound_3sat_weak, bound_4sat, bound_report, crossings,
    gamma_of_h, istt_tables, m_star_for, optimize_theta_3sat, optimize_theta_4sat, r_k_mean, Counterpart, HCurve,
    PpszExponent, APPENDIX_TARGET, APPENDIX_THETA, FOUR_SAT_THETA, MAIN_CSTAR, MAIN_THETA, WEAK_CSTAR, WEAK_F_D,
    WEAK_F_M, WEAK_M_STAR, WEAK_TWO_POW_DELTA_COEFF, WEAK_TWO_POW_E,
};
use ppsz_lab::cct::{build_cct, certify_cut, enumerate_cuts, CctParams, TreeMode, DEFAULT_CUT_LIMIT};
use ppsz_lab::cnf::{Assignment, Var};
use ppsz_lab::dimacs::emit_dimacs;
use ppsz_lab::oracle::enumerate_satisfying;
use ppsz_lab::resolution::{bounded_resolution_closure, ppsz_width};
use serde::Serialize;
use serde_json::Value;

use crate::golden::gate;
use crate::input::read_formula;
use crate::{AnalyzeTarget, BoundsArgs, CurveKind, Format, HcurveArgs, ModeArg, ReportArgs, ResolveArgs, TreeArgs, Variant};

pub fn run(target: &AnalyzeTarget) -> Result<u8> {
    match target {
        AnalyzeTarget::Bounds(args) => bounds(args),
        AnalyzeTarget::Istt(args) => emit(&istt_tables().report(), args),
        AnalyzeTarget::Hcurve(args) => hcurve(args),
        AnalyzeTarget::Resolve(args) => resolve(args),
        AnalyzeTarget::Tree(args) => tree(args),
    }
}

/// Prints `report` in the requested format, then applies the golden gate.
fn emit<T: Serialize>(report: &T, args: &ReportArgs) -> Result<u8> {
    let value = serde_json::to_value(report)?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        Format::Text => print_flat("", &value),
        Format::Csv => bail!("analyze writes json or text"),
    }
    gate(&value, args.golden.as_deref())
}

/// `dotted.path = value` lines, the same paths golden files use.
fn print_flat(prefix: &str, value: &Value) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| print_flat(&join(k), v)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| print_flat(&join(&i.to_string()), v)),
        other => println!("{prefix} = {other}"),
    }
}

fn bounds(args: &BoundsArgs) -> Result<u8> {
    if args.optimize {
        if args.theta.is_some() || args.cstar.is_some() || args.mstar.is_some() {
            bail!("--optimize searches θ and c* itself");
        }
        let optimum = match args.k {
            3 => optimize_theta_3sat(0.505, 0.6)?,
            4 => optimize_theta_4sat()?,
            k => bail!("bounds are available for k = 3 and 4, not {k}"),
        };
        return emit(&optimum, &args.report);
    }
    let report = match (args.k, args.variant) {
        (3, Variant::Main) => {
            if args.mstar.is_some() {
                bail!("--mstar applies to the weak and appendix variants");
            }
            bound_3sat_schoening(args.theta.unwrap_or(MAIN_THETA), args.cstar.unwrap_or(MAIN_CSTAR))?
        }
        (3, Variant::Weak) if args.theta.is_none() && args.cstar.is_none() && args.mstar.is_none() => {
            bound_3sat_weak()
        }
        (3, Variant::Weak) => {
            let curve = HCurve::three_sat(args.theta.unwrap_or(MAIN_THETA))?;
            let rounded = PpszExponent::from_constants(WEAK_TWO_POW_E.log2(), WEAK_TWO_POW_DELTA_COEFF.log2());
            let counterpart = Counterpart::IsttWeak {
                m_star: args.mstar.unwrap_or(WEAK_M_STAR),
                f_m: WEAK_F_M,
                f_d: WEAK_F_D,
            };
            bound_report(3, curve, args.cstar.unwrap_or(WEAK_CSTAR), counterpart, Some(rounded))
        }
        (3, Variant::Appendix) if args.theta.is_none() && args.cstar.is_none() && args.mstar.is_none() => {
            bound_3sat_appendix()
        }
        (3, Variant::Appendix) => {
            let tables = istt_tables();
            let curve = HCurve::three_sat(args.theta.unwrap_or(APPENDIX_THETA))?;
            let counterpart = Counterpart::IsttAppendix {
                m_star: args.mstar.unwrap_or_else(|| m_star_for(APPENDIX_TARGET)),
                f_m: *tables.f_m.numer() as f64 / *tables.f_m.denom() as f64,
                f_d: tables.fd_min().1,
            };
            let cstar = args.cstar.unwrap_or(2.0 - 2.0 / APPENDIX_TARGET);
            bound_report(3, curve, cstar, counterpart, None)
        }
        (4, Variant::Main) => {
            if args.cstar.is_some() || args.mstar.is_some() {
                bail!("the 4-SAT bound solves c* itself and has no preprocessing share");
            }
            bound_4sat(args.theta.unwrap_or(FOUR_SAT_THETA))?
        }
        (4, v) => bail!("variant {v:?} is 3-SAT only"),
        (k, _) => bail!("bounds are available for k = 3 and 4, not {k}"),
    };
    emit(&report, &args.report)
}

#[derive(Serialize)]
struct CurveReport {
    curve: HCurve,
    k: u32,
    value_residual: f64,
    slope_residual: f64,
    beta_h: f64,
    gamma_h: f64,
    r_k: f64,
    crossings: Vec<f64>,
    valid: bool,
}

fn hcurve(args: &HcurveArgs) -> Result<u8> {
    if args.k < 2 {
        bail!("k must be at least 2");
    }
    let kind = args.kind.unwrap_or(if args.k == 3 { CurveKind::Piecewise } else { CurveKind::ClampLinear });
    let curve = match kind {
        CurveKind::Piecewise => HCurve::three_sat(args.theta)?,
        CurveKind::ClampLinear => HCurve::clamp_linear(args.theta)?,
    };
    let (value_residual, slope_residual) = curve.joint_residuals();
    let report = CurveReport {
        curve,
        k: args.k,
        value_residual,
        slope_residual,
        beta_h: beta_of_h(&curve),
        gamma_h: gamma_of_h(&curve, args.k),
        r_k: r_k_mean(args.k),
        crossings: crossings(&curve, args.k),
        valid: curve.validate().is_ok(),
    };
    emit(&report, &args.report)
}

fn resolve(args: &ResolveArgs) -> Result<u8> {
    let f = read_formula(&args.path)?;
    let s = args.s.unwrap_or_else(|| ppsz_width(f.num_occurring()));
    let closure = bounded_resolution_closure(&f, s)?;
    println!("c Resolve(F, {s}): {} base clauses, {} derived", f.len(), closure.derivations().len());
    if args.log {
        for line in closure.deduction_log().lines() {
            println!("c {line}");
        }
    }
    print!("{}", emit_dimacs(closure.formula()));
    Ok(0)
}

fn tree(args: &TreeArgs) -> Result<u8> {
    let f = read_formula(&args.path)?;
    let x = Var::try_new(args.var).context("variables are numbered from 1")?;
    let alpha = match &args.alpha {
        Some(bits) => Assignment::from_bits(bits).context("--alpha must be a bit string")?,
        None => enumerate_satisfying(&f, 1)?
            .assignments
            .into_iter()
            .next()
            .context("formula is unsatisfiable")?,
    };
    let defining: BTreeSet<Var> = args
        .defining
        .iter()
        .map(|&v| Var::try_new(v).context("variables are numbered from 1"))
        .collect::<Result<_>>()?;
    let mode = match args.mode {
        ModeArg::Full => TreeMode::Full,
        ModeArg::DefiningLeaf => TreeMode::DefiningLeaf,
    };
    let params = CctParams {
        depth: args.depth,
        node_budget: args.node_budget,
    };
    let t = build_cct(&f, &alpha, x, &defining, mode, params)?;
    println!("c alpha={} root={x} nodes={}", alpha.to_bits(), t.len());
    print!("{}", t.to_text());
    let closure = match args.certify {
        Some(s) => Some(bounded_resolution_closure(&f, s)?),
        None => None,
    };
    let cuts = enumerate_cuts(&t, DEFAULT_CUT_LIMIT);
    for cut in &cuts.cuts {
        let vars: Vec<String> = t.vbl(cut).iter().map(ToString::to_string).collect();
        let unlabeled = cut.iter().filter(|&&v| t.node(v).label.is_none()).count();
        let mut line = format!("cut vbl={{{}}} unlabeled={unlabeled}", vars.join(","));
        if let Some(g) = &closure {
            match certify_cut(g.formula(), &t, cut) {
                Ok(c) => line.push_str(&format!(" certificate={c}")),
                Err(e) => line.push_str(&format!(" certificate=none ({e})")),
            }
        }
        println!("{line}");
    }
    if cuts.truncated {
        println!("c cut list truncated at {DEFAULT_CUT_LIMIT}");
    }
    Ok(0)
}
