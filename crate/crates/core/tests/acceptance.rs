//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Randomized criteria draw from a ChaCha stream seeded by `DINV_SEED`
//! (default in `common::DEFAULT_SEED`).

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dinv_core::discretization::{points, sweep_exact};
use dinv_core::rational::{frac, int, Rational};
use dinv_core::*;
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s, 2).unwrap()
}

fn hp(s: &str) -> Polynomial {
    Polynomial::parse_with(s, &["h"]).unwrap()
}

fn example1_basis() -> Vec<Polynomial> {
    vec![
        p("1"),
        p("x1"),
        p("1/2*x1^2 + 2*x2"),
        p("1/6*x1^3 + 2*x1*x2 + 3*x2"),
        p("1/24*x1^4 + x1^2*x2 + 3*x1*x2 + 2*x2^2 + 4*x2"),
    ]
}

fn criterion_1() -> Outcome {
    let t = ParamTable::example1();
    let want = example1_basis();
    let rec = build_recursive(&t);
    let exp = build_explicit(&t);
    if rec.elements != want {
        return fail(format!("recursive builder gave {:?}", rec.elements));
    }
    if exp.elements != want {
        return fail(format!("explicit builder gave {:?}", exp.elements));
    }
    ok(format!("L4 = {}", rec[4]))
}

fn criterion_2() -> Outcome {
    let t = ParamTable::example1();
    let origin = [int(0), int(0)];
    let a = points_scheme_a(&t, &origin).unwrap();
    let b = points_scheme_b(&t, &origin).unwrap();
    // 2(2h)^2 + 3(2h)^3 + 4(2h)^4
    let a2 = vec![hp("2*h"), hp("8*h^2 + 24*h^3 + 64*h^4")];
    let b3 = vec![hp("3*h"), hp("12*h^2 + 18*h^3")];
    let b4 = vec![hp("4*h"), hp("24*h^2 + 72*h^3 + 96*h^4")];
    if a.points[2] != a2 {
        return fail(format!("scheme A i=2: {:?}", a.pretty()[2]));
    }
    if b.points[3] != b3 || b.points[4] != b4 {
        return fail(format!("scheme B: {:?}", b.pretty()));
    }
    let b_all = vec![
        vec![hp("0"), hp("0")],
        vec![hp("h"), hp("0")],
        vec![hp("2*h"), hp("4*h^2")],
        b3,
        b4,
    ];
    if b.points != b_all {
        return fail("scheme B full list differs");
    }
    ok("A[2], B[3], B[4] as printed")
}

fn random_param_instances() -> Vec<ParamTable> {
    let mut rng = rng(3);
    (0..200)
        .map(|_| {
            let d = rng.gen_range(2..=4);
            let n = rng.gen_range(1..=7);
            random_params(&mut rng, d, n)
        })
        .collect()
}

fn criterion_3(instances: &[ParamTable]) -> Outcome {
    for (idx, t) in instances.iter().enumerate() {
        let rec = build_recursive(t);
        let exp = build_explicit(t);
        let gen = build_general(&GeneralSpec::specialization(t)).truncated(t.n() + 1);
        if rec != exp {
            return fail(format!("instance {idx}: recursive != explicit for {t:?}"));
        }
        if rec != gen {
            return fail(format!("instance {idx}: recursive != specialized general for {t:?}"));
        }
    }
    ok(format!("{} instances", instances.len()))
}

fn criterion_4(instances: &[ParamTable]) -> Outcome {
    let mut checked = 0;
    for (idx, t) in instances.iter().enumerate() {
        let basis = build_recursive(t);
        let report = check_closure(&basis, t);
        checked += report.checked;
        if !report.passed() {
            return fail(format!("instance {idx}: {:?}", report.violations));
        }
        // span membership of every derivative, found by elimination
        for k in 1..basis.len() {
            for j in 1..=t.d() {
                let dk = basis[k].partial(j).unwrap();
                if span_contains(&basis.as_slice()[..k], &dk).unwrap().is_none() {
                    return fail(format!("instance {idx}: d/dx{j} L{k} outside span"));
                }
            }
        }
    }
    ok(format!("{checked} derivative identities"))
}

fn criterion_5() -> Outcome {
    use dinv_core::identities::*;
    let scans = scan_all(ScanRanges::default());
    let total: usize = scans.iter().map(|s| s.checked).sum();
    match scans.iter().find(|s| !s.pass) {
        Some(s) => fail(format!("{}: {:?}", s.name, s.failures)),
        None => ok(format!("{total} exact checks across {} scans", scans.len())),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let mut reports = 0;
    for idx in 0..50 {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(1..=6);
        let t = random_params(&mut rng, d, n);
        let f = random_poly(&mut rng, d, n as u32 + 2, 8);
        let basis = build_recursive(&t);
        let shifted: Vec<Rational> = (0..d).map(|_| small_rational(&mut rng)).collect();
        for z0 in [vec![int(0); d], shifted] {
            for scheme in [Scheme::A, Scheme::B] {
                let pts = points(scheme, &t, &z0).unwrap();
                for m in 0..=n {
                    let r = expansion_check(&f, &z0, m, &pts, &basis).unwrap();
                    reports += 1;
                    let oracle = diff_oracle(&basis[m], &f, &z0);
                    if !r.pass || r.target != oracle {
                        return fail(format!(
                            "pair {idx}, scheme {scheme}, m={m}, z0={z0:?}, f={f}: {r:?} (oracle {oracle})"
                        ));
                    }
                }
            }
        }
    }
    ok(format!("{reports} expansion reports"))
}

fn criterion_7() -> Outcome {
    let t = ParamTable::new(2, 2).unwrap().with(2, 2, int(1)).unwrap();
    let basis = build_recursive(&t);
    let origin = [int(0), int(0)];
    let pts = points_scheme_a(&t, &origin).unwrap();
    let f = p("x1^3");
    let exact_rows = sweep_exact(&f, &origin, 2, &pts, &basis, &frac(1, 4), 12).unwrap();
    for row in &exact_rows {
        if row.abs_err != &row.h * int(3) {
            return fail(format!("exact error at h={} is {}", row.h, row.abs_err));
        }
    }
    let rows = sweep(&f, &origin, 2, &pts, &basis, 0.25, 12).unwrap();
    let mut judged = 0;
    for row in rows.iter().filter(|r| r.abs_err > 1e-12) {
        if let Some(e) = row.est_order {
            judged += 1;
            if (e - 1.0).abs() > 0.15 {
                return fail(format!("est_order {e} at h={}", row.h));
            }
        }
    }
    if judged < 3 {
        return fail(format!("only {judged} rows had an order estimate"));
    }
    ok(format!("abs_err = 3h exactly on 12 rows; {judged} float order estimates within 0.15 of 1"))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    for idx in 0..100 {
        let spec = random_general(&mut rng, 5, 8, 3);
        let q = build_general(&spec);
        let top = spec.top_weight();
        let want: Vec<Option<u32>> = (0..=top).map(Some).collect();
        if degrees(&q) != want {
            return fail(format!("spec {idx}: degrees {:?}", degrees(&q)));
        }
        match breadth(q.as_slice()) {
            Ok(1) => {}
            other => return fail(format!("spec {idx}: breadth {other:?}")),
        }
        let closure = check_span_closure(&q);
        if !closure.passed() {
            return fail(format!("spec {idx}: {:?}", closure.violations));
        }
        // top-degree part of q_m is (c_{1,1} x1 + ... + c_{d,1} xd)^m / m!
        let linear = Polynomial::from_terms(
            spec.d(),
            (0..spec.d()).map(|i| {
                let mut e = vec![0; spec.d()];
                e[i] = 1;
                (e, spec.c()[i][0].clone())
            }),
        )
        .unwrap();
        for m in 0..=top {
            let fact: Rational = (1..=m as i64).map(int).product();
            let want = linear.pow(m).scale(&(Rational::from_integer(1.into()) / fact));
            if q[m as usize].homogeneous_part(m) != want {
                return fail(format!("spec {idx}: leading form of q{m}"));
            }
        }
    }
    ok("100 specs")
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    println!("acceptance suite, DINV_SEED={}", seed());
    let instances = random_param_instances();
    let criteria: Vec<Criterion> = vec![
        ("1 example basis, both builders", Duration::from_secs(1), Box::new(criterion_1)),
        ("2 example point lists", Duration::from_secs(1), Box::new(criterion_2)),
        ("3 recursive == explicit == general", Duration::from_secs(60), Box::new(|| criterion_3(&instances))),
        ("4 derivative closure identities", Duration::from_secs(60), Box::new(|| criterion_4(&instances))),
        ("5 power-sum / Vandermonde / truncation scans", Duration::from_secs(30), Box::new(criterion_5)),
        ("6 exact limit expansion, both schemes", Duration::from_secs(300), Box::new(criterion_6)),
        ("7 numeric convergence order", Duration::from_secs(5), Box::new(criterion_7)),
        ("8 general construction structure", Duration::from_secs(120), Box::new(criterion_8)),
    ];
    let mut all_ok = true;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = outcome.ok && in_time;
        all_ok &= pass;
        println!(
            "{} [{name}] {:.3}s (limit {}s) {}{}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            outcome.detail,
            if in_time { "" } else { " (over time limit)" }
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
