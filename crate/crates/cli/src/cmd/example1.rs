use anyhow::Result;
use dinv_core::discretization::points;
use dinv_core::rational::int;
use dinv_core::{build_explicit, build_recursive, expansion_check, ParamTable, Polynomial, Scheme};
use serde_json::json;

use crate::input::parse_function;

const BASIS: [&str; 5] = [
    "1",
    "x1",
    "1/2*x1^2 + 2*x2",
    "1/6*x1^3 + 2*x1*x2 + 3*x2",
    "1/24*x1^4 + x1^2*x2 + 3*x1*x2 + 2*x2^2 + 4*x2",
];

// first scheme: z_i = (ih, 2(ih)^2 + 3(ih)^3 + 4(ih)^4)
const POINTS_A: [[&str; 2]; 5] = [
    ["0", "0"],
    ["h", "2*h^2 + 3*h^3 + 4*h^4"],
    ["2*h", "8*h^2 + 24*h^3 + 64*h^4"],
    ["3*h", "18*h^2 + 81*h^3 + 324*h^4"],
    ["4*h", "32*h^2 + 192*h^3 + 1024*h^4"],
];

const POINTS_B: [[&str; 2]; 5] = [
    ["0", "0"],
    ["h", "0"],
    ["2*h", "4*h^2"],
    ["3*h", "12*h^2 + 18*h^3"],
    ["4*h", "24*h^2 + 72*h^3 + 96*h^4"],
];

/// Generic enough that no functional of order <= 4 vanishes at the origin.
const DEFAULT_F: &str = "(1 + x1 + x2)^6";

fn default_f() -> Polynomial {
    let base = Polynomial::parse("1 + x1 + x2", 2).expect("static polynomial");
    base.pow(6)
}

fn matches(expected: &[[&str; 2]; 5], got: &dinv_core::SymbolicPointSet) -> bool {
    got.points.len() == 5
        && expected.iter().zip(&got.points).all(|(want, pt)| {
            want.iter().zip(pt).all(|(w, c)| {
                Polynomial::parse_with(w, &["h"]).map(|p| &p == c).unwrap_or(false)
            })
        })
}

pub fn run(f: Option<&str>) -> Result<bool> {
    let t = ParamTable::example1();
    let f = match f {
        Some(text) => parse_function(text, 2)?,
        None => default_f(),
    };
    let rec = build_recursive(&t);
    let exp = build_explicit(&t);
    let printed: Vec<Polynomial> = BASIS
        .iter()
        .map(|s| Polynomial::parse(s, 2).expect("static polynomial"))
        .collect();
    let basis_ok = rec.elements == printed && exp.elements == printed;

    let origin = vec![int(0), int(0)];
    let a = points(Scheme::A, &t, &origin)?;
    let b = points(Scheme::B, &t, &origin)?;
    let points_ok = matches(&POINTS_A, &a) && matches(&POINTS_B, &b);

    let mut reports = Vec::new();
    let mut reports_ok = true;
    for (scheme, pts) in [(Scheme::A, &a), (Scheme::B, &b)] {
        for m in 0..=4 {
            let r = expansion_check(&f, &origin, m, pts, &rec)?;
            reports_ok &= r.pass;
            eprintln!("scheme {scheme} m={m}: {}", if r.pass { "pass" } else { "FAIL" });
            reports.push(json!({ "scheme": scheme, "report": r }));
        }
    }
    let pass = basis_ok && points_ok && reports_ok;
    let bundle = json!({
        "params": t,
        "basis": rec.elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "basis_matches": basis_ok,
        "points_a": a.pretty(),
        "points_b": b.pretty(),
        "points_match": points_ok,
        "f": if f == default_f() { DEFAULT_F.to_string() } else { f.to_string() },
        "reports": reports,
        "pass": pass,
    });
    print!("{}", super::to_json(&bundle)?);
    eprintln!(
        "basis {}, points {}, expansions {}",
        if basis_ok { "match" } else { "MISMATCH" },
        if points_ok { "match" } else { "MISMATCH" },
        if reports_ok { "pass" } else { "FAIL" }
    );
    Ok(pass)
}
