//! Coalescing point schemes and the stencil that turns their evaluation
//! functionals into `δ_{z0} ∘ L_m(D)` as `h → 0`.
//!
//! For order `m` the combination is `h^{-m} Σ_{r=0..m} A_r^(m) f(z_r(h))`
//! with `A_r^(m) = (-1)^{m-r} / (r! (m-r)!)`. Points are kept symbolic, as
//! vectors of univariate polynomials in `h`, so the combination can be
//! expanded exactly and its order of vanishing read off coefficient by
//! coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParamTable;
use crate::poly::{apply_diff, DiffOperator, Exponent, Polynomial};
use crate::rational::{factorial, falling_factorial, to_f64, Rational};
use crate::subspace::BasisSequence;

/// `A_0^(m), ..., A_m^(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stencil {
    pub m: usize,
    #[serde(with = "crate::rational::serde_vec")]
    pub coeffs: Vec<Rational>,
}

/// Stencil of order `m`; order zero is the single coefficient `1`, the
/// plain evaluation `δ_{z0}`.
pub fn stencil(m: usize) -> Stencil {
    let coeffs = (0..=m)
        .map(|k| {
            let sign = if (m - k).is_multiple_of(2) { 1 } else { -1 };
            Rational::new(
                BigInt::from(sign),
                factorial(k as u32) * factorial((m - k) as u32),
            )
        })
        .collect();
    Stencil { m, coeffs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// `z_i(h) = z0 + (ih, Σ_j a_{j,2} (ih)^j, ..., Σ_j a_{j,d} (ih)^j)`.
    A,
    /// `z_i(h) = z0 + (ih, Σ_{j<=i} i!/(i-j)! a_{j,2} h^j, ...)`.
    B,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::A => "A",
            Scheme::B => "B",
        })
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Scheme::A),
            "b" | "B" => Ok(Scheme::B),
            _ => Err(Error::Parse(format!("unknown scheme {s:?}, want a or b"))),
        }
    }
}

/// Points `z_0(h), ..., z_n(h)`; each coordinate is a polynomial in the
/// single variable `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicPointSet {
    pub scheme: Scheme,
    #[serde(with = "crate::rational::serde_vec")]
    pub base: Vec<Rational>,
    pub points: Vec<Vec<Polynomial>>,
}

impl SymbolicPointSet {
    /// Number of points minus one, the highest order the set supports.
    pub fn n(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn at(&self, h: &Rational) -> Vec<Vec<Rational>> {
        let hv = [h.clone()];
        self.points
            .iter()
            .map(|pt| pt.iter().map(|c| c.eval(&hv).expect("univariate")).collect())
            .collect()
    }

    pub fn at_f64(&self, h: f64) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|pt| pt.iter().map(|c| c.eval_f64(&[h]).expect("univariate")).collect())
            .collect()
    }

    /// Points rendered as polynomials in `h`.
    pub fn pretty(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|pt| pt.iter().map(|c| c.pretty_with(&["h"])).collect())
            .collect()
    }
}

fn h_monomial(k: u32, coef: Rational) -> Polynomial {
    Polynomial::monomial(Exponent::new(vec![k]), coef)
}

fn check_base(params: &ParamTable, z0: &[Rational]) -> Result<()> {
    if z0.len() != params.d() {
        return Err(Error::DimensionMismatch {
            expected: params.d(),
            found: z0.len(),
        });
    }
    Ok(())
}

fn first_coordinate(z01: &Rational, i: usize) -> Polynomial {
    let mut c = Polynomial::constant(1, z01.clone());
    c.add_scaled(&Rational::one(), &h_monomial(1, Rational::from_integer(BigInt::from(i))))
        .expect("univariate");
    c
}

pub fn points_scheme_a(params: &ParamTable, z0: &[Rational]) -> Result<SymbolicPointSet> {
    check_base(params, z0)?;
    let points = (0..=params.n())
        .map(|i| {
            let mut pt = vec![first_coordinate(&z0[0], i)];
            for s in 2..=params.d() {
                let mut c = Polynomial::constant(1, z0[s - 1].clone());
                for j in 2..=params.n() {
                    let ij = Rational::from_integer(num_traits::pow(BigInt::from(i), j));
                    let t = h_monomial(j as u32, params.get(j, s) * ij);
                    c.add_scaled(&Rational::one(), &t).expect("univariate");
                }
                pt.push(c);
            }
            pt
        })
        .collect();
    Ok(SymbolicPointSet {
        scheme: Scheme::A,
        base: z0.to_vec(),
        points,
    })
}

pub fn points_scheme_b(params: &ParamTable, z0: &[Rational]) -> Result<SymbolicPointSet> {
    check_base(params, z0)?;
    let points = (0..=params.n())
        .map(|i| {
            let mut pt = vec![first_coordinate(&z0[0], i)];
            for s in 2..=params.d() {
                let mut c = Polynomial::constant(1, z0[s - 1].clone());
                // z_0 and z_1 move along x1 only; beyond, sums stop at j = i
                for j in 2..=i.min(params.n()) {
                    let ff = Rational::from_integer(falling_factorial(i as u32, j as u32));
                    let t = h_monomial(j as u32, params.get(j, s) * ff);
                    c.add_scaled(&Rational::one(), &t).expect("univariate");
                }
                pt.push(c);
            }
            pt
        })
        .collect();
    Ok(SymbolicPointSet {
        scheme: Scheme::B,
        base: z0.to_vec(),
        points,
    })
}

pub fn points(scheme: Scheme, params: &ParamTable, z0: &[Rational]) -> Result<SymbolicPointSet> {
    match scheme {
        Scheme::A => points_scheme_a(params, z0),
        Scheme::B => points_scheme_b(params, z0),
    }
}

/// Exact `h`-expansion of `Σ A_r^(m) f(z_r(h))` against its predicted limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub m: usize,
    /// Coefficients of `h^0 .. h^{m-1}`; all must vanish.
    #[serde(with = "crate::rational::serde_vec")]
    pub low_coeffs: Vec<Rational>,
    /// Coefficient of `h^m`.
    #[serde(rename = "lead", with = "crate::rational::serde_str")]
    pub lead_coeff: Rational,
    /// `(L_m(D) f)(z0)`.
    #[serde(with = "crate::rational::serde_str")]
    pub target: Rational,
    pub pass: bool,
}

/// `Σ_{r=0..m} A_r^(m) f(z_r(h))` as a polynomial in `h`.
pub fn stencil_combination(f: &Polynomial, m: usize, pts: &SymbolicPointSet) -> Result<Polynomial> {
    if m > pts.n() {
        return Err(Error::OrderOutOfRange {
            m,
            available: pts.points.len(),
        });
    }
    let st = stencil(m);
    let mut acc = Polynomial::zero(1);
    for (a, z) in st.coeffs.iter().zip(&pts.points) {
        acc.add_scaled(a, &f.compose(z)?)?;
    }
    Ok(acc)
}

/// Expands the order-`m` combination exactly and compares the `h^m`
/// coefficient with `(L_m(D) f)(z0)`, where `L_m = basis[m]`.
pub fn expansion_check(
    f: &Polynomial,
    z0: &[Rational],
    m: usize,
    pts: &SymbolicPointSet,
    basis: &BasisSequence,
) -> Result<ExpansionReport> {
    let lm = basis.get(m).ok_or(Error::OrderOutOfRange {
        m,
        available: basis.len(),
    })?;
    let combo = stencil_combination(f, m, pts)?;
    let low_coeffs: Vec<Rational> = (0..m as u32).map(|k| combo.coeff(&[k])).collect();
    let lead_coeff = combo.coeff(&[m as u32]);
    let target = apply_diff(&DiffOperator::new(lm.clone()), f, z0)?;
    let pass = low_coeffs.iter().all(Zero::is_zero) && lead_coeff == target;
    Ok(ExpansionReport {
        m,
        low_coeffs,
        lead_coeff,
        target,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub h: f64,
    pub approx: f64,
    pub exact: f64,
    pub abs_err: f64,
    pub est_order: Option<f64>,
}

pub const SWEEP_CSV_HEADER: &str = "h,approx,exact,abs_err,est_order";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let est = self.est_order.map(|e| e.to_string()).unwrap_or_default();
        format!("{},{},{},{},{}", self.h, self.approx, self.exact, self.abs_err, est)
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

fn order_estimate(prev: f64, cur: f64) -> Option<f64> {
    (prev > 0.0 && cur > 0.0 && prev.is_finite() && cur.is_finite()).then(|| (prev / cur).log2())
}

/// Floating-point evaluation of `h^{-m} Σ A_r^(m) f(z_r(h))` for
/// `h = h0 · 2^{-k}`, `k = 0..steps`.
pub fn sweep(
    f: &Polynomial,
    z0: &[Rational],
    m: usize,
    pts: &SymbolicPointSet,
    basis: &BasisSequence,
    h0: f64,
    steps: usize,
) -> Result<Vec<SweepRow>> {
    if h0.is_nan() || h0 <= 0.0 || steps < 2 {
        return Err(Error::InvalidBounds(format!(
            "sweep needs h0 > 0 and at least 2 steps (got h0={h0}, steps={steps})"
        )));
    }
    if m > pts.n() {
        return Err(Error::OrderOutOfRange {
            m,
            available: pts.points.len(),
        });
    }
    let lm = basis.get(m).ok_or(Error::OrderOutOfRange {
        m,
        available: basis.len(),
    })?;
    let exact = to_f64(&apply_diff(&DiffOperator::new(lm.clone()), f, z0)?);
    let weights: Vec<f64> = stencil(m).coeffs.iter().map(to_f64).collect();
    let mut rows: Vec<SweepRow> = Vec::with_capacity(steps);
    for k in 0..steps {
        let h = h0 * 0.5f64.powi(k as i32);
        let pts_h = pts.at_f64(h);
        let mut sum = 0.0;
        for (w, z) in weights.iter().zip(&pts_h) {
            sum += w * f.eval_f64(z)?;
        }
        let approx = sum / h.powi(m as i32);
        let abs_err = (approx - exact).abs();
        let est_order = rows.last().and_then(|prev| order_estimate(prev.abs_err, abs_err));
        rows.push(SweepRow {
            h,
            approx,
            exact,
            abs_err,
            est_order,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSweepRow {
    #[serde(with = "crate::rational::serde_str")]
    pub h: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub approx: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub exact: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub abs_err: Rational,
}

/// The same sweep in exact arithmetic, free of cancellation.
pub fn sweep_exact(
    f: &Polynomial,
    z0: &[Rational],
    m: usize,
    pts: &SymbolicPointSet,
    basis: &BasisSequence,
    h0: &Rational,
    steps: usize,
) -> Result<Vec<ExactSweepRow>> {
    if *h0 <= Rational::zero() {
        return Err(Error::InvalidBounds("sweep needs h0 > 0".into()));
    }
    let combo = stencil_combination(f, m, pts)?;
    let lm = basis.get(m).ok_or(Error::OrderOutOfRange {
        m,
        available: basis.len(),
    })?;
    let exact = apply_diff(&DiffOperator::new(lm.clone()), f, z0)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut h = h0.clone();
    let mut rows = Vec::with_capacity(steps);
    for _ in 0..steps {
        let approx = combo.eval(&[h.clone()])? / crate::rational::pow(&h, m as u32);
        let diff = &approx - &exact;
        rows.push(ExactSweepRow {
            h: h.clone(),
            abs_err: if diff < Rational::zero() { -diff } else { diff },
            approx,
            exact: exact.clone(),
        });
        h *= &half;
    }
    Ok(rows)
}
