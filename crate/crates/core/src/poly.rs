//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`Polynomial`] carries its ambient dimension `d` explicitly, so the
//! constant `1` in two variables is a different value from the constant `1`
//! in three. Variables are addressed with 1-based indices (`x1..xd`) at the
//! public surface.
//!
//! Terms are kept in a `BTreeMap` under graded-lexicographic order with
//! `x1 > x2 > ... > xd`; the canonical (serialization) order is the
//! descending one, highest total degree first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{falling_factorial, parse_rational, Rational};

/// Exponent vector `(e1, ..., ed)` of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    /// `x_j` with a 1-based index.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j - 1] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Rational>,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(dim), c)
    }

    /// The variable `x_j`, 1-based.
    pub fn var(dim: usize, j: usize) -> Result<Self> {
        check_index(j, dim)?;
        Ok(Self::monomial(Exponent::unit(dim, j), Rational::one()))
    }

    pub fn monomial(exp: Exponent, coef: Rational) -> Self {
        let mut p = Self::zero(exp.dim());
        if !coef.is_zero() {
            p.terms.insert(exp, coef);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (exps, coef) in terms {
            check_dim(dim, exps.len())?;
            p.add_term(Exponent(exps), coef);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (graded-lex descending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Exponent(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.dim])
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponent::degree)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading term under the canonical order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exp: Exponent, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Polynomial) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if c.is_zero() {
            return Ok(());
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), c * v);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim, other.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// `∂p/∂x_j`, 1-based.
    pub fn partial(&self, j: usize) -> Result<Polynomial> {
        check_index(j, self.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.0[j - 1];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[j - 1] -= 1;
            out.add_term(ne, c * BigInt::from(k));
        }
        Ok(out)
    }

    /// Monomial-wise antiderivative in `x_j`: `x^a ↦ x^a x_j / (a_j + 1)`.
    pub fn psi(&self, j: usize) -> Result<Polynomial> {
        check_index(j, self.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.0[j - 1] += 1;
            let k = BigInt::from(ne.0[j - 1]);
            out.add_term(ne, c / k);
        }
        Ok(out)
    }

    /// Keeps only the terms free of `x_1, ..., x_{j-1}`.
    pub fn restrict_free_of(&self, j: usize) -> Result<Polynomial> {
        check_index(j, self.dim)?;
        Ok(Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[..j - 1].iter().all(|&a| a == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn eval(&self, z: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, z.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &k) in z.iter().zip(&e.0) {
                if k > 0 {
                    t *= crate::rational::pow(zi, k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation; used only by the numerical sweep.
    pub fn eval_f64(&self, z: &[f64]) -> Result<f64> {
        check_dim(self.dim, z.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.0.iter()
                    .zip(z)
                    .fold(crate::rational::to_f64(c), |t, (&k, &zi)| {
                        t * zi.powi(k as i32)
                    })
            })
            .sum())
    }

    /// Substitutes `x_i ↦ subs[i]`; the result lives in the substitutes' dimension.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        check_dim(self.dim, subs.len())?;
        let target = match subs.first() {
            Some(s) => s.dim,
            None => 0,
        };
        for s in subs {
            check_dim(target, s.dim)?;
        }
        // powers[i][k] = subs[i]^k, filled lazily up to the maximal exponent
        let mut max_exp = vec![0u32; self.dim];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(&e.0) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .zip(&max_exp)
            .map(|(s, &m)| {
                let mut ps = vec![Polynomial::one(target)];
                for k in 1..=m as usize {
                    let next = ps[k - 1].mul(s).expect("same dimension");
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize])?;
                }
            }
            out.add_scaled(&Rational::one(), &t)?;
        }
        Ok(out)
    }

    /// Canonical text form: `c * x1^e1*...*xd^ed` terms joined by ` + `.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, k)| format!("x{}^{}", i + 1, k))
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{} * {}", c, mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Human-readable form with variables `x1..xd`, e.g. `1/24*x1^4 + 2*x2`.
    pub fn pretty(&self) -> String {
        let names: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        self.pretty_with(&names)
    }

    pub fn pretty_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .0
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| {
                    if k == 1 {
                        n.as_ref().to_string()
                    } else {
                        format!("{}^{}", n.as_ref(), k)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses either text form over `x1..xd`.
    pub fn parse(text: &str, dim: usize) -> Result<Polynomial> {
        let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        Self::parse_with(text, &names)
    }

    /// Parses a sum of products of rationals and `name^k` powers. Signs may
    /// repeat (`a + -b`), and the coefficient may sit anywhere in a product.
    pub fn parse_with<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Polynomial> {
        parser::parse(text, names)
    }
}

fn check_index(j: usize, dim: usize) -> Result<()> {
    if j == 0 || j > dim {
        return Err(Error::VariableIndex { index: j, dim });
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

mod parser {
    use super::*;

    struct Cursor<'a> {
        s: &'a [u8],
        pos: usize,
    }

    impl<'a> Cursor<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.pos).copied()
        }

        fn digits(&mut self) -> Option<&'a str> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        }

        fn ident(&mut self) -> Option<&'a str> {
            self.skip_ws();
            let start = self.pos;
            if self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                return Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap());
            }
            None
        }

        fn err(&self, what: &str) -> Error {
            Error::Parse(format!("{what} at byte {}", self.pos))
        }
    }

    pub(super) fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Polynomial> {
        let dim = names.len();
        let mut cur = Cursor {
            s: text.as_bytes(),
            pos: 0,
        };
        let mut out = Polynomial::zero(dim);
        if cur.peek().is_none() {
            return Err(cur.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            let mut negative = false;
            let mut saw_sign = false;
            while let Some(c @ (b'+' | b'-')) = cur.peek() {
                cur.pos += 1;
                saw_sign = true;
                if c == b'-' {
                    negative = !negative;
                }
            }
            if !first && !saw_sign {
                return Err(cur.err("expected '+' or '-'"));
            }
            first = false;
            let (exp, mut coef) = parse_term(&mut cur, names)?;
            if negative {
                coef = -coef;
            }
            out.add_term(exp, coef);
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn parse_term<S: AsRef<str>>(cur: &mut Cursor<'_>, names: &[S]) -> Result<(Exponent, Rational)> {
        let mut exp = Exponent::zero(names.len());
        let mut coef = Rational::one();
        loop {
            match cur.peek() {
                Some(b'0'..=b'9') => {
                    let p = cur.digits().unwrap();
                    let mut lit = p.to_string();
                    if cur.peek() == Some(b'/') {
                        cur.pos += 1;
                        let q = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
                        lit.push('/');
                        lit.push_str(q);
                    }
                    coef *= parse_rational(&lit)?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let id = cur.ident().unwrap();
                    let idx = names
                        .iter()
                        .position(|n| n.as_ref() == id)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {id:?}")))?;
                    let mut k = 1u32;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        k = cur
                            .digits()
                            .ok_or_else(|| cur.err("expected exponent"))?
                            .parse()
                            .map_err(|_| cur.err("exponent too large"))?;
                    }
                    exp.0[idx] += k;
                }
                _ => return Err(cur.err("expected number or variable")),
            }
            match cur.peek() {
                Some(b'*') => cur.pos += 1,
                // a trailing "/q" divides the whole product, as in `x1^2/2`
                Some(b'/') => {
                    cur.pos += 1;
                    let q = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
                    coef /= parse_rational(q)?;
                    match cur.peek() {
                        Some(b'*') => cur.pos += 1,
                        _ => return Ok((exp, coef)),
                    }
                }
                _ => return Ok((exp, coef)),
            }
        }
    }
}

/// The differential operator `p(D)` induced by a polynomial `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    pub source: Polynomial,
}

impl DiffOperator {
    pub fn new(source: Polynomial) -> Self {
        DiffOperator { source }
    }

    /// `p(D) f` as a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        check_dim(self.source.dim, f.dim)?;
        let mut out = Polynomial::zero(f.dim);
        for (a, ca) in &self.source.terms {
            for (b, cb) in &f.terms {
                if a.0.iter().zip(&b.0).any(|(x, y)| x > y) {
                    continue;
                }
                // ∂^a x^b = Π b_i!/(b_i - a_i)! · x^(b - a)
                let mut scale = BigInt::one();
                let mut rest = Vec::with_capacity(f.dim);
                for (&ai, &bi) in a.0.iter().zip(&b.0) {
                    scale *= falling_factorial(bi, ai);
                    rest.push(bi - ai);
                }
                out.add_term(Exponent(rest), ca * cb * scale);
            }
        }
        Ok(out)
    }
}

/// `(p(D) f)(z0)`.
pub fn apply_diff(op: &DiffOperator, f: &Polynomial, z0: &[Rational]) -> Result<Rational> {
    check_dim(op.source.dim, z0.len())?;
    op.apply(f)?.eval(z0)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    #[serde(with = "crate::rational::serde_str")]
    coef: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exp: e.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        Polynomial::from_terms(repr.dim, repr.terms.into_iter().map(|t| (t.exp, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}
