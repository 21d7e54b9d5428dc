//! Breadth-one D-invariant bases.
//!
//! Three constructions are provided and kept on separate code paths so that
//! their agreement is a genuine check:
//!
//! * [`build_recursive`]: `L_k = V_k + Σ_j a_{k,j} x_j`, where `V_k` is
//!   assembled from the already computed `L_1..L_{k-1}` with the `Ψ_j`
//!   antiderivatives;
//! * [`build_explicit`]: the closed-form sum over weighted multi-indices with
//!   weights `1` for `γ_{1,1}` and `j` for `γ_{s,j}`;
//! * [`build_general`]: the `(b, c)` construction, a sum over every
//!   multi-index tuple of `τ`-weight `m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::WeightedCompositions;
use crate::error::{Error, Result};
use crate::linalg;
use crate::params::{GeneralSpec, ParamTable};
use crate::poly::{Exponent, Polynomial};
use crate::rational::{factorial, pow, Rational};

/// Basis polynomials indexed `0..=N`; element `k` has total degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisSequence {
    pub elements: Vec<Polynomial>,
}

impl BasisSequence {
    pub fn new(elements: Vec<Polynomial>) -> Self {
        BasisSequence { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&Polynomial> {
        self.elements.get(k)
    }

    pub fn as_slice(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn truncated(&self, len: usize) -> BasisSequence {
        BasisSequence::new(self.elements.iter().take(len).cloned().collect())
    }
}

impl std::ops::Index<usize> for BasisSequence {
    type Output = Polynomial;
    fn index(&self, k: usize) -> &Polynomial {
        &self.elements[k]
    }
}

/// One multi-index tuple `(γ_1, ..., γ_d)`; `gamma[i][j]` is `γ_{i+1,j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSolution {
    pub gamma: Vec<Vec<u32>>,
}

impl GammaSolution {
    pub fn tau(&self, b: &[u32]) -> u32 {
        self.gamma
            .iter()
            .map(|row| row.iter().zip(b).map(|(g, w)| g * w).sum::<u32>())
            .sum()
    }
}

pub fn build_recursive(params: &ParamTable) -> BasisSequence {
    let d = params.d();
    let n = params.n();
    let mut basis = vec![Polynomial::one(d), Polynomial::var(d, 1).expect("d >= 2")];
    for k in 2..=n {
        let mut lk = basis[k - 1].psi(1).expect("x1 exists");
        for j in 2..=d {
            // M_j = a_{2,j} L_{k-2} + ... + a_{k-1,j} L_1
            let mut mj = Polynomial::zero(d);
            for i in 2..k {
                mj.add_scaled(&params.get(i, j), &basis[k - i])
                    .expect("same dimension");
            }
            let vj = mj
                .restrict_free_of(j)
                .and_then(|r| r.psi(j))
                .expect("j <= d");
            lk.add_scaled(&Rational::one(), &vj).expect("same dimension");
            lk.add_scaled(&params.get(k, j), &Polynomial::var(d, j).expect("j <= d"))
                .expect("same dimension");
        }
        basis.push(lk);
    }
    basis.truncate(n + 1);
    BasisSequence::new(basis)
}

/// All `(γ_1, ..., γ_d)` with `Σ_j b_j Σ_i γ_{i,j} = m`.
///
/// Ordered descending-lexicographically over the grid flattened slot by slot
/// (`γ_{1,1}, γ_{2,1}, ..., γ_{d,1}, γ_{1,2}, ...`). Tuples whose coefficient
/// vanishes because some used `c_{i,j}` is zero are kept.
pub fn enumerate_tau_solutions(spec: &GeneralSpec, m: u32) -> Result<Vec<GammaSolution>> {
    let top = spec.top_weight();
    if m > top {
        return Err(Error::WeightOutOfRange {
            m: m as usize,
            max: top as usize,
        });
    }
    let (d, n) = (spec.d(), spec.n());
    let weights: Vec<u32> = spec
        .b()
        .iter()
        .flat_map(|&w| std::iter::repeat_n(w, d))
        .collect();
    let mut out = Vec::new();
    WeightedCompositions::new(weights, m).for_each(|flat| {
        let mut gamma = vec![vec![0u32; n]; d];
        for (idx, &g) in flat.iter().enumerate() {
            gamma[idx % d][idx / d] = g;
        }
        out.push(GammaSolution { gamma });
    });
    Ok(out)
}

fn general_term(spec: &GeneralSpec, sol: &GammaSolution) -> Option<(Vec<u32>, Rational)> {
    let mut num = Rational::one();
    let mut den = BigInt::one();
    for (ci, gi) in spec.c().iter().zip(&sol.gamma) {
        for (cij, &g) in ci.iter().zip(gi) {
            if g == 0 {
                continue;
            }
            if cij.is_zero() {
                return None;
            }
            num *= pow(cij, g);
            den *= factorial(g);
        }
    }
    let exps = sol.gamma.iter().map(|gi| gi.iter().sum()).collect();
    Some((exps, num / den))
}

/// `q_{n,0}, ..., q_{n,b_n}` of the general construction.
pub fn build_general(spec: &GeneralSpec) -> BasisSequence {
    let d = spec.d();
    let elements = (0..=spec.top_weight())
        .map(|m| {
            let sols = enumerate_tau_solutions(spec, m).expect("m <= b_n");
            let terms = sols.iter().filter_map(|s| general_term(spec, s));
            Polynomial::from_terms(d, terms).expect("exponent length is d")
        })
        .collect();
    BasisSequence::new(elements)
}

/// `L_0, ..., L_n` from the closed-form sum.
///
/// Only the multi-indices that can carry a non-zero coefficient are
/// enumerated: `γ_{1,1}` with weight 1 and `γ_{s,j}` (`s, j >= 2`) with
/// weight `j`; the term is `Π a_{j,s}^{γ_{s,j}} / (γ_{1,1}! Π γ_{s,j}!)
/// · x1^{γ_{1,1}} Π_s x_s^{Σ_j γ_{s,j}}`.
pub fn build_explicit(params: &ParamTable) -> BasisSequence {
    let d = params.d();
    let n = params.n();
    // slot layout: [γ11, γ22..γ2n, γ32..γ3n, ...]
    let mut weights = vec![1u32];
    let mut owner = vec![(1usize, 1usize)];
    for s in 2..=d {
        for j in 2..=n {
            weights.push(j as u32);
            owner.push((s, j));
        }
    }
    let elements = (0..=n as u32)
        .map(|k| {
            let mut lk = Polynomial::zero(d);
            WeightedCompositions::new(weights.clone(), k).for_each(|g| {
                let mut exps = vec![0u32; d];
                let mut coef = Rational::one();
                for (&gv, &(s, j)) in g.iter().zip(&owner) {
                    if gv == 0 {
                        continue;
                    }
                    exps[s - 1] += gv;
                    coef /= Rational::from_integer(factorial(gv));
                    if s > 1 {
                        coef *= pow(&params.get(j, s), gv);
                    }
                }
                if !coef.is_zero() {
                    lk.add_scaled(&Rational::one(), &Polynomial::monomial(Exponent::new(exps), coef))
                        .expect("same dimension");
                }
            });
            lk
        })
        .collect();
    BasisSequence::new(elements)
}

/// Coordinates of `p` in the span of `basis`, or `None` if `p` is outside it.
///
/// Solved exactly over the union of monomial supports. When the basis is
/// linearly dependent, free coordinates are set to zero.
pub fn span_contains(basis: &[Polynomial], p: &Polynomial) -> Result<Option<Vec<Rational>>> {
    for b in basis {
        if b.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: b.dim(),
            });
        }
    }
    let mut monomials: Vec<Exponent> = basis
        .iter()
        .chain(std::iter::once(p))
        .flat_map(|q| q.terms().map(|(e, _)| e.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let a: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|e| basis.iter().map(|b| b.coeff(e.as_slice())).collect())
        .collect();
    let rhs: Vec<Rational> = monomials.iter().map(|e| p.coeff(e.as_slice())).collect();
    Ok(linalg::solve(&a, &rhs, basis.len()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureViolation {
    pub k: usize,
    pub j: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub checked: usize,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `∂L_k/∂x1 = L_{k-1}` and `∂L_k/∂x_j = Σ_{i=2..k} a_{i,j} L_{k-i}`
/// for every element and every `j >= 2`.
pub fn check_closure(basis: &BasisSequence, params: &ParamTable) -> ClosureReport {
    let d = params.d();
    let mut report = ClosureReport {
        checked: 0,
        violations: Vec::new(),
    };
    if basis.iter_dims().any(|dim| dim != d) {
        report.violations.push(ClosureViolation {
            k: 0,
            j: 0,
            detail: format!("basis dimension differs from d={d}"),
        });
        return report;
    }
    for (k, lk) in basis.elements.iter().enumerate() {
        for j in 1..=d {
            let got = lk.partial(j).expect("j <= d");
            let expected = if j == 1 {
                match k {
                    0 => Polynomial::zero(d),
                    _ => basis[k - 1].clone(),
                }
            } else {
                let mut e = Polynomial::zero(d);
                for i in 2..=k {
                    e.add_scaled(&params.get(i, j), &basis[k - i])
                        .expect("same dimension");
                }
                e
            };
            report.checked += 1;
            if got != expected {
                report.violations.push(ClosureViolation {
                    k,
                    j,
                    detail: format!("d/dx{j} L{k} = {got}, expected {expected}"),
                });
            }
        }
    }
    report
}

/// Checks that every partial derivative of element `k` lies in the span of
/// elements `0..k`.
pub fn check_span_closure(basis: &BasisSequence) -> ClosureReport {
    let mut report = ClosureReport {
        checked: 0,
        violations: Vec::new(),
    };
    for (k, q) in basis.elements.iter().enumerate() {
        for j in 1..=q.dim() {
            let dq = q.partial(j).expect("j <= dim");
            report.checked += 1;
            match span_contains(&basis.elements[..k], &dq) {
                Ok(Some(_)) => {}
                Ok(None) => report.violations.push(ClosureViolation {
                    k,
                    j,
                    detail: format!("d/dx{j} q{k} = {dq} is outside span of lower elements"),
                }),
                Err(e) => report.violations.push(ClosureViolation {
                    k,
                    j,
                    detail: e.to_string(),
                }),
            }
        }
    }
    report
}

impl BasisSequence {
    fn iter_dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(Polynomial::dim)
    }
}

/// `dim(span ∩ P_1) - 1`, where `P_1` is the polynomials of degree at most one.
///
/// Computed as `rank(B) - rank(H) - 1`, with `B` the coefficient matrix of
/// the spanning set and `H` its rows for monomials of degree two or more.
pub fn breadth(basis: &[Polynomial]) -> Result<usize> {
    let Some(first) = basis.first() else {
        return Err(Error::MissingConstant);
    };
    let dim = first.dim();
    if span_contains(basis, &Polynomial::one(dim))?.is_none() {
        return Err(Error::MissingConstant);
    }
    let mut monomials: Vec<Exponent> = basis
        .iter()
        .flat_map(|q| q.terms().map(|(e, _)| e.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let row = |e: &Exponent| basis.iter().map(|b| b.coeff(e.as_slice())).collect::<Vec<_>>();
    let full: Vec<Vec<Rational>> = monomials.iter().map(row).collect();
    let high: Vec<Vec<Rational>> = monomials
        .iter()
        .filter(|e| e.degree() >= 2)
        .map(row)
        .collect();
    let low_dim = linalg::rank(&full) - linalg::rank(&high);
    Ok(low_dim - 1)
}

/// Total degree of each element; `None` marks a zero polynomial.
pub fn degrees(basis: &BasisSequence) -> Vec<Option<u32>> {
    basis.elements.iter().map(Polynomial::total_degree).collect()
}
