//! Combinatorial identities behind the stencil, each with an exhaustive scan.
//!
//! * signed power sums `Σ_i (-1)^{m-i} i^j / (i!(m-i)!)` equal `[j = m]`,
//!   both with the sum starting at `i = 0` (for `0 <= j <= m`) and at
//!   `i = 1` (for `1 <= j <= m`);
//! * the stencil solves the Vandermonde system on nodes `0..m` with
//!   right-hand side `e_m`, checked against a generic exact solve;
//! * weighted falling-factorial sums may be truncated at slot `min(i, r)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::discretization::stencil;
use crate::enumerate::WeightedCompositions;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{factorial, falling_factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumQuery {
    pub j: u32,
    pub m: u32,
    /// Start the sum at `i = 0` rather than `i = 1`.
    pub include_zero: bool,
}

/// `Σ_i (-1)^{m-i} i^j / (i! (m-i)!)` with `0^0 = 1`.
pub fn signed_power_sum(q: PowerSumQuery) -> Rational {
    let start = if q.include_zero { 0 } else { 1 };
    (start..=q.m)
        .map(|i| {
            let sign = if (q.m - i).is_multiple_of(2) { 1 } else { -1 };
            let num = BigInt::from(sign) * num_traits::pow(BigInt::from(i), q.j as usize);
            Rational::new(num, factorial(i) * factorial(q.m - i))
        })
        .sum()
}

/// Solves `V y = e_m` with `V[j][i] = i^j` (`0 <= i, j <= m`) by exact
/// elimination, without using the closed form of the answer.
pub fn vandermonde_oracle(m: usize) -> Vec<Rational> {
    let matrix: Vec<Vec<Rational>> = (0..=m)
        .map(|j| {
            (0..=m)
                .map(|i| Rational::from_integer(num_traits::pow(BigInt::from(i), j)))
                .collect()
        })
        .collect();
    let mut rhs = vec![Rational::zero(); m + 1];
    rhs[m] = Rational::one();
    linalg::solve(&matrix, &rhs, m + 1).expect("Vandermonde matrix on distinct nodes is invertible")
}

/// Where the falling-factorial slots stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cap {
    /// Slots `2..=i`.
    Node,
    /// Slots `2..=r`.
    Weight,
}

/// `Σ i^{α_1} Π_{t=2..cap} [i(i-1)...(i-t+1)]^{α_t}` over
/// `α_1 + 2α_2 + ... + cap·α_cap = r`.
pub fn falling_factorial_sum(r: u32, i: u32, cap: Cap) -> Result<Rational> {
    if r < 1 || i < 2 {
        return Err(Error::InvalidBounds(format!(
            "need r >= 1 and i >= 2, got r={r}, i={i}"
        )));
    }
    let top = match cap {
        Cap::Node => i,
        Cap::Weight => r,
    };
    let weights: Vec<u32> = (1..=top).collect();
    let factors: Vec<BigInt> = (1..=top).map(|t| falling_factorial(i, t)).collect();
    let mut total = BigInt::zero();
    WeightedCompositions::new(weights, r).for_each(|alpha| {
        let term = alpha
            .iter()
            .zip(&factors)
            .fold(BigInt::one(), |acc, (&a, f)| acc * num_traits::pow(f.clone(), a as usize));
        total += term;
    });
    Ok(Rational::from_integer(total))
}

/// Outcome of one exhaustive identity scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaScan {
    pub name: String,
    pub range: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl LemmaScan {
    fn new(name: &str, range: String) -> Self {
        LemmaScan {
            name: name.to_string(),
            range,
            checked: 0,
            failures: Vec::new(),
            pass: true,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
            self.pass = false;
        }
    }
}

pub fn scan_power_sums(m_max: u32, include_zero: bool) -> LemmaScan {
    let lo = if include_zero { 0 } else { 1 };
    let (name, range) = if include_zero {
        ("signed power sums from i=0", format!("0 <= j <= m <= {m_max}"))
    } else {
        ("signed power sums from i=1", format!("1 <= j <= m <= {m_max}"))
    };
    let mut scan = LemmaScan::new(name, range);
    for m in lo..=m_max {
        for j in lo..=m {
            let got = signed_power_sum(PowerSumQuery { j, m, include_zero });
            let want = if j == m { Rational::one() } else { Rational::zero() };
            scan.record(got == want, || format!("j={j} m={m}: {got} != {want}"));
        }
    }
    scan
}

pub fn scan_oracle_agreement(m_max: usize) -> LemmaScan {
    let mut scan = LemmaScan::new("Vandermonde solve equals stencil", format!("0 <= m <= {m_max}"));
    for m in 0..=m_max {
        let oracle = vandermonde_oracle(m);
        let closed = stencil(m).coeffs;
        scan.record(oracle == closed, || format!("m={m}: oracle differs from stencil"));
    }
    scan
}

pub fn scan_truncation(r_max: u32, i_max: u32) -> LemmaScan {
    let mut scan = LemmaScan::new(
        "falling-factorial truncation",
        format!("1 <= r <= {r_max}, 2 <= i <= {i_max}"),
    );
    for r in 1..=r_max {
        for i in 2..=i_max {
            let a = falling_factorial_sum(r, i, Cap::Node).expect("valid bounds");
            let b = falling_factorial_sum(r, i, Cap::Weight).expect("valid bounds");
            scan.record(a == b, || format!("r={r} i={i}: {a} != {b}"));
        }
    }
    scan
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRanges {
    pub m_max: u32,
    pub oracle_max: usize,
    pub r_max: u32,
    pub i_max: u32,
}

impl Default for ScanRanges {
    fn default() -> Self {
        ScanRanges {
            m_max: 20,
            oracle_max: 12,
            r_max: 8,
            i_max: 8,
        }
    }
}

pub fn scan_all(ranges: ScanRanges) -> Vec<LemmaScan> {
    vec![
        scan_power_sums(ranges.m_max, true),
        scan_power_sums(ranges.m_max, false),
        scan_oracle_agreement(ranges.oracle_max),
        scan_truncation(ranges.r_max, ranges.i_max),
    ]
}
