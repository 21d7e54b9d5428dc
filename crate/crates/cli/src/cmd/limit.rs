use anyhow::{bail, Context, Result};
use dinv_core::discretization::{points, sweep_csv, sweep_exact, SWEEP_CSV_HEADER};
use dinv_core::rational::to_f64;
use dinv_core::{build_recursive, expansion_check, sweep, BasisSequence, ParamTable, Polynomial, Rational, SymbolicPointSet};

use crate::input::{base_point, load_function, load_params, rational_arg};
use crate::LimitArgs;

struct Setup {
    f: Polynomial,
    z0: Vec<Rational>,
    pts: SymbolicPointSet,
    basis: BasisSequence,
}

fn setup(args: &LimitArgs) -> Result<Setup> {
    let t: ParamTable = load_params(&args.spec)?;
    if args.m > t.n() {
        bail!("order m={} exceeds n={} of the parameter table", args.m, t.n());
    }
    let f = load_function(args.f.as_deref(), args.f_file.as_deref(), t.d())?;
    let z0 = base_point(args.z0.as_deref(), t.d())?;
    let pts = points(args.scheme.into(), &t, &z0)?;
    Ok(Setup {
        f,
        z0,
        pts,
        basis: build_recursive(&t),
    })
}

pub fn run_limit(args: &LimitArgs) -> Result<bool> {
    let s = setup(args)?;
    let report = expansion_check(&s.f, &s.z0, args.m, &s.pts, &s.basis)?;
    print!("{}", super::to_json(&report)?);
    eprintln!(
        "scheme {} m={}: {} (h^m coefficient {}, target {})",
        s.pts.scheme,
        args.m,
        if report.pass { "pass" } else { "FAIL" },
        report.lead_coeff,
        report.target
    );
    Ok(report.pass)
}

fn parse_h0(text: &str) -> Result<Rational> {
    if let Ok(r) = rational_arg(text) {
        return Ok(r);
    }
    let v: f64 = text.trim().parse().with_context(|| format!("malformed h0 {text:?}"))?;
    Rational::from_float(v).with_context(|| format!("h0 {text:?} is not finite"))
}

pub fn run_sweep(args: &LimitArgs, h0: &str, steps: usize, exact: bool) -> Result<bool> {
    let s = setup(args)?;
    let h0 = parse_h0(h0)?;
    if exact {
        let rows = sweep_exact(&s.f, &s.z0, args.m, &s.pts, &s.basis, &h0, steps)?;
        println!("{SWEEP_CSV_HEADER}");
        for r in rows {
            println!("{},{},{},{},", r.h, r.approx, r.exact, r.abs_err);
        }
    } else {
        let rows = sweep(&s.f, &s.z0, args.m, &s.pts, &s.basis, to_f64(&h0), steps)?;
        print!("{}", sweep_csv(&rows));
    }
    Ok(true)
}
