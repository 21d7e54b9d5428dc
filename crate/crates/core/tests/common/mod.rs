#![allow(dead_code)]

use dinv_core::rational::Rational;
use dinv_core::{GeneralSpec, ParamTable, Polynomial};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x0d1f_5eed;

/// Seed from `DINV_SEED` when set, otherwise a fixed default.
pub fn seed() -> u64 {
    std::env::var("DINV_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Numerator in `[-10, 10]`, denominator in `[1, 10]`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-10i64..=10)),
        BigInt::from(rng.gen_range(1i64..=10)),
    )
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// Every entry drawn independently; roughly a fifth are left at zero.
pub fn random_params(rng: &mut impl Rng, d: usize, n: usize) -> ParamTable {
    let mut t = ParamTable::new(d, n).unwrap();
    for i in 2..=n {
        for j in 2..=d {
            if rng.gen_bool(0.8) {
                t.set(i, j, small_rational(rng)).unwrap();
            }
        }
    }
    t
}

pub fn random_general(rng: &mut impl Rng, max_n: usize, max_top: u32, max_d: usize) -> GeneralSpec {
    let n = rng.gen_range(2..=max_n);
    let d = rng.gen_range(1..=max_d);
    // n - 1 distinct weights from 2..=max_top, sorted
    let mut pool: Vec<u32> = (2..=max_top).collect();
    let mut picked = Vec::new();
    for _ in 1..n {
        let k = rng.gen_range(0..pool.len());
        picked.push(pool.swap_remove(k));
    }
    picked.sort_unstable();
    let mut b = vec![1];
    b.extend(picked);
    loop {
        let c: Vec<Vec<Rational>> = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.25) {
                            Rational::from_integer(BigInt::from(0))
                        } else {
                            small_rational(rng)
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(spec) = GeneralSpec::new(b.clone(), c) {
            return spec;
        }
    }
}

/// A polynomial with up to `max_terms` terms of total degree at most `max_deg`.
pub fn random_poly(rng: &mut impl Rng, d: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let total = rng.gen_range(0..=max_deg);
            let mut exps = vec![0u32; d];
            for _ in 0..total {
                exps[rng.gen_range(0..d)] += 1;
            }
            (exps, nonzero_rational(rng))
        })
        .collect();
    Polynomial::from_terms(d, terms).unwrap()
}

/// `(p(D) f)(z0)` by repeated single partial derivatives; shares no code
/// with `DiffOperator::apply`.
pub fn diff_oracle(op: &Polynomial, f: &Polynomial, z0: &[Rational]) -> Rational {
    let mut total = Rational::from_integer(BigInt::from(0));
    for (e, c) in op.terms() {
        let mut g = f.clone();
        for (j, &k) in e.as_slice().iter().enumerate() {
            for _ in 0..k {
                g = g.partial(j + 1).unwrap();
            }
        }
        total += c * g.eval(z0).unwrap();
    }
    total
}
