use std::path::PathBuf;

use anyhow::{bail, Result};
use dinv_core::identities::{scan_all, ScanRanges};
use dinv_core::{
    breadth, build_explicit, build_general, build_recursive, check_closure, check_span_closure,
    BasisSequence, ClosureReport, GeneralSpec, ParamTable, Rational,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cmd::basis;
use crate::input::{load_basis, load_spec, SpecFile};
use crate::{Check, Source};

pub struct VerifyArgs {
    pub what: Check,
    pub spec: Option<PathBuf>,
    pub basis: Option<PathBuf>,
    pub random: Option<usize>,
    pub expect: usize,
    pub ranges: ScanRanges,
}

pub const DEFAULT_SEED: u64 = 0x0d1f_5eed;

fn seed() -> u64 {
    std::env::var("DINV_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Random tables with entries p/q, |p| <= 10, 1 <= q <= 10.
fn random_tables(count: usize) -> Vec<ParamTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=4);
            let n = rng.gen_range(1..=7);
            let mut t = ParamTable::new(d, n).expect("valid bounds");
            for i in 2..=n {
                for j in 2..=d {
                    let v = Rational::new(
                        BigInt::from(rng.gen_range(-10i64..=10)),
                        BigInt::from(rng.gen_range(1i64..=10)),
                    );
                    t.set(i, j, v).expect("in range");
                }
            }
            t
        })
        .collect()
}

fn spec_or_bail(args: &VerifyArgs) -> Result<SpecFile> {
    match &args.spec {
        Some(p) => load_spec(p),
        None => bail!("--spec is required for this check"),
    }
}

fn closure_json(r: &ClosureReport) -> Value {
    json!({ "checked": r.checked, "violations": r.violations, "pass": r.passed() })
}

fn equivalence(t: &ParamTable) -> Value {
    let rec = build_recursive(t);
    let exp = build_explicit(t);
    let gen = build_general(&GeneralSpec::specialization(t)).truncated(t.n() + 1);
    json!({
        "d": t.d(),
        "n": t.n(),
        "recursive_eq_explicit": rec == exp,
        "recursive_eq_general": rec == gen,
        "pass": rec == exp && rec == gen,
    })
}

fn given_basis(args: &VerifyArgs) -> Result<Option<BasisSequence>> {
    args.basis.as_deref().map(load_basis).transpose()
}

pub fn run(args: VerifyArgs) -> Result<bool> {
    let report = match args.what {
        Check::Identities => {
            let scans = scan_all(args.ranges);
            for s in &scans {
                eprintln!(
                    "{:<36} {:<28} {:>5} checks  {}",
                    s.name,
                    s.range,
                    s.checked,
                    if s.pass { "pass" } else { "FAIL" }
                );
            }
            let pass = scans.iter().all(|s| s.pass);
            json!({ "what": "identities", "scans": scans, "pass": pass })
        }
        Check::Equivalence => {
            let cases: Vec<Value> = match (args.random, &args.spec) {
                (Some(count), _) => random_tables(count).iter().map(equivalence).collect(),
                (None, Some(_)) => match spec_or_bail(&args)? {
                    SpecFile::Params(t) => vec![equivalence(&t)],
                    SpecFile::General(_) => bail!("equivalence needs a parameter table"),
                },
                (None, None) => bail!("give --spec or --random"),
            };
            let pass = cases.iter().all(|c| c["pass"] == true);
            eprintln!(
                "equivalence: {}/{} tables agree",
                cases.iter().filter(|c| c["pass"] == true).count(),
                cases.len()
            );
            json!({ "what": "equivalence", "seed": args.random.map(|_| seed()), "cases": cases, "pass": pass })
        }
        Check::Closure => {
            let cases: Vec<Value> = if let Some(count) = args.random {
                random_tables(count)
                    .iter()
                    .map(|t| closure_json(&check_closure(&build_recursive(t), t)))
                    .collect()
            } else {
                let given = given_basis(&args)?;
                let spec = args.spec.as_ref().map(|p| load_spec(p)).transpose()?;
                let r = match (spec, given) {
                    (Some(SpecFile::Params(t)), Some(b)) => check_closure(&b, &t),
                    (Some(SpecFile::Params(t)), None) => check_closure(&build_recursive(&t), &t),
                    (Some(SpecFile::General(g)), b) => {
                        check_span_closure(&b.unwrap_or_else(|| build_general(&g)))
                    }
                    (None, Some(b)) => check_span_closure(&b),
                    (None, None) => bail!("give --spec, --basis or --random"),
                };
                vec![closure_json(&r)]
            };
            let pass = cases.iter().all(|c| c["pass"] == true);
            let checked: u64 = cases.iter().map(|c| c["checked"].as_u64().unwrap_or(0)).sum();
            eprintln!("closure: {checked} derivatives checked, {}", if pass { "pass" } else { "FAIL" });
            json!({ "what": "closure", "cases": cases, "pass": pass })
        }
        Check::Breadth => {
            let b = match given_basis(&args)? {
                Some(b) => b,
                None => match spec_or_bail(&args)? {
                    SpecFile::General(g) => build_general(&g),
                    spec @ SpecFile::Params(_) => basis::build(Source::Recursive, &spec)?,
                },
            };
            let value = breadth(b.as_slice())?;
            eprintln!("breadth: {value} (expected {})", args.expect);
            json!({ "what": "breadth", "breadth": value, "expected": args.expect, "pass": value == args.expect })
        }
    };
    print!("{}", super::to_json(&report)?);
    Ok(report["pass"] == true)
}
