//! Input data for the two basis constructions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, serde_str::RationalRepr, Rational};

/// Free parameters `a[i][j]` (`2 <= i <= n`, `2 <= j <= d`) of a breadth-one
/// basis normalized to `L1 = x1`. Missing entries read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamTable {
    d: usize,
    n: usize,
    a: BTreeMap<(usize, usize), Rational>,
}

impl ParamTable {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("dimension d={d} must be at least 2")));
        }
        if n < 1 {
            return Err(Error::InvalidParams("degree n must be at least 1".into()));
        }
        Ok(ParamTable {
            d,
            n,
            a: BTreeMap::new(),
        })
    }

    pub fn with(mut self, i: usize, j: usize, value: Rational) -> Result<Self> {
        self.set(i, j, value)?;
        Ok(self)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) -> Result<()> {
        if !(2..=self.n).contains(&i) || !(2..=self.d).contains(&j) {
            return Err(Error::ParamIndex {
                i,
                j,
                d: self.d,
                n: self.n,
            });
        }
        if value.is_zero() {
            self.a.remove(&(i, j));
        } else {
            self.a.insert((i, j), value);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.a.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Non-zero entries as `((i, j), value)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.a.iter()
    }

    /// The parameters of the worked two-variable example: `a22 = 2`,
    /// `a32 = 3`, `a42 = 4`.
    pub fn example1() -> Self {
        use crate::rational::int;
        ParamTable::new(2, 4)
            .and_then(|t| t.with(2, 2, int(2)))
            .and_then(|t| t.with(3, 2, int(3)))
            .and_then(|t| t.with(4, 2, int(4)))
            .expect("static example parameters are in range")
    }
}

#[derive(Deserialize)]
struct ParamRepr {
    d: usize,
    n: usize,
    #[serde(default)]
    a: BTreeMap<String, RationalRepr>,
}

impl Serialize for ParamTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            d: usize,
            n: usize,
            a: BTreeMap<String, String>,
        }
        Out {
            d: self.d,
            n: self.n,
            a: self
                .a
                .iter()
                .map(|((i, j), v)| (format!("{i},{j}"), v.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamTable {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ParamRepr::deserialize(de)?;
        let mut t = ParamTable::new(repr.d, repr.n).map_err(D::Error::custom)?;
        for (key, value) in repr.a {
            let (i, j) = key
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad parameter key {key:?}, want \"i,j\"")))?;
            let v = value.into_rational().map_err(D::Error::custom)?;
            t.set(i, j, v).map_err(D::Error::custom)?;
        }
        Ok(t)
    }
}

/// Slot weights `b` and direction vectors `c_1..c_d` of the general
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSpec {
    b: Vec<u32>,
    c: Vec<Vec<Rational>>,
}

impl GeneralSpec {
    /// Validates `b1 = 1`, `2 <= b2 < ... < bn`, `n >= 2`, that every `c_i`
    /// has `n` entries and that `c_{1,1}, ..., c_{d,1}` are not all zero.
    pub fn new(b: Vec<u32>, c: Vec<Vec<Rational>>) -> Result<Self> {
        let n = b.len();
        if n < 2 {
            return Err(Error::InvalidWeights(format!("need at least 2 slots, got {n}")));
        }
        if b[0] != 1 {
            return Err(Error::InvalidWeights(format!("b1 must be 1, got {}", b[0])));
        }
        if b[1] < 2 {
            return Err(Error::InvalidWeights(format!("b2 must be at least 2, got {}", b[1])));
        }
        if let Some(w) = b[1..].windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidWeights(format!(
                "weights must strictly increase from slot 2 ({} then {})",
                w[0], w[1]
            )));
        }
        if c.is_empty() {
            return Err(Error::InvalidSpec("need at least one direction vector".into()));
        }
        if let Some(bad) = c.iter().find(|ci| ci.len() != n) {
            return Err(Error::InvalidSpec(format!(
                "direction vector has {} entries, expected {n}",
                bad.len()
            )));
        }
        if c.iter().all(|ci| ci[0].is_zero()) {
            return Err(Error::DegenerateDirection);
        }
        Ok(GeneralSpec { b, c })
    }

    /// The choice `b = (1, ..., n)`, `c1 = (1, 0, ..., 0)`,
    /// `c_s = (0, a_{2,s}, ..., a_{n,s})` that reproduces `L_0..L_n`.
    ///
    /// A table with `n = 1` is padded to two slots; the extra slot carries
    /// zero directions and only adds `q_2`, which callers drop.
    pub fn specialization(params: &ParamTable) -> Self {
        let slots = params.n().max(2);
        let b: Vec<u32> = (1..=slots as u32).collect();
        let mut c = Vec::with_capacity(params.d());
        let mut first = vec![Rational::zero(); slots];
        first[0] = Rational::one();
        c.push(first);
        for s in 2..=params.d() {
            let mut cs = vec![Rational::zero(); slots];
            for (j, slot) in cs.iter_mut().enumerate().skip(1) {
                *slot = params.get(j + 1, s);
            }
            c.push(cs);
        }
        GeneralSpec::new(b, c).expect("specialization satisfies the spec invariants")
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn d(&self) -> usize {
        self.c.len()
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn c(&self) -> &[Vec<Rational>] {
        &self.c
    }

    /// `b_n`, the top weight; the basis has `b_n + 1` elements.
    pub fn top_weight(&self) -> u32 {
        *self.b.last().expect("n >= 2")
    }
}

#[derive(Deserialize)]
struct GeneralRepr {
    n: Option<usize>,
    d: Option<usize>,
    b: Vec<u32>,
    c: Vec<Vec<RationalRepr>>,
}

impl Serialize for GeneralSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            n: usize,
            d: usize,
            b: &'a [u32],
            c: Vec<Vec<String>>,
        }
        Out {
            n: self.n(),
            d: self.d(),
            b: &self.b,
            c: self
                .c
                .iter()
                .map(|ci| ci.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneralSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GeneralRepr::deserialize(de)?;
        if let Some(n) = repr.n {
            if n != repr.b.len() {
                return Err(D::Error::custom(format!("n={n} but b has {} entries", repr.b.len())));
            }
        }
        if let Some(d) = repr.d {
            if d != repr.c.len() {
                return Err(D::Error::custom(format!("d={d} but c has {} vectors", repr.c.len())));
            }
        }
        let c = repr
            .c
            .into_iter()
            .map(|ci| {
                ci.into_iter()
                    .map(RationalRepr::into_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        GeneralSpec::new(repr.b, c).map_err(D::Error::custom)
    }
}

/// Parses a comma-separated list of rationals such as `"0,1/2,-3"`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn param_json_round_trip() {
        let t = ParamTable::example1();
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"d":2,"n":4,"a":{"2,2":"2","3,2":"3","4,2":"4"}}"#);
        let back: ParamTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn param_bounds() {
        let mut t = ParamTable::new(3, 4).unwrap();
        assert!(t.set(1, 2, int(1)).is_err());
        assert!(t.set(2, 1, int(1)).is_err());
        assert!(t.set(5, 2, int(1)).is_err());
        assert!(t.set(2, 4, int(1)).is_err());
        assert!(t.set(4, 3, int(1)).is_ok());
        assert_eq!(t.get(3, 3), int(0));
        assert!(ParamTable::new(1, 3).is_err());
        assert!(ParamTable::new(2, 0).is_err());
        assert!(serde_json::from_str::<ParamTable>(r#"{"d":2,"n":2,"a":{"3,2":"1"}}"#).is_err());
        assert!(serde_json::from_str::<ParamTable>(r#"{"d":2,"n":2,"a":{"x":"1"}}"#).is_err());
    }

    #[test]
    fn general_spec_validation() {
        let c = || vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(GeneralSpec::new(vec![1, 2], c()).is_ok());
        assert!(matches!(GeneralSpec::new(vec![2, 3], c()), Err(Error::InvalidWeights(_))));
        assert!(matches!(GeneralSpec::new(vec![1, 1], c()), Err(Error::InvalidWeights(_))));
        assert!(matches!(
            GeneralSpec::new(vec![1, 3, 3], vec![vec![int(1), int(0), int(0)]]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(GeneralSpec::new(vec![1], vec![vec![int(1)]]), Err(Error::InvalidWeights(_))));
        assert_eq!(
            GeneralSpec::new(vec![1, 2], vec![vec![int(0), int(1)], vec![int(0), int(3)]]),
            Err(Error::DegenerateDirection)
        );
        assert!(matches!(
            GeneralSpec::new(vec![1, 2], vec![vec![int(1)]]),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn general_json() {
        let js = r#"{"n":2,"d":2,"b":[1,3],"c":[["1","0"],["0","1/2"]]}"#;
        let g: GeneralSpec = serde_json::from_str(js).unwrap();
        assert_eq!(g.top_weight(), 3);
        assert_eq!(serde_json::to_string(&g).unwrap(), js);
        assert!(serde_json::from_str::<GeneralSpec>(r#"{"n":3,"d":2,"b":[1,3],"c":[["1","0"],["0","1"]]}"#).is_err());
    }

    #[test]
    fn specialization_shape() {
        let g = GeneralSpec::specialization(&ParamTable::example1());
        assert_eq!(g.b(), &[1, 2, 3, 4]);
        assert_eq!(g.c()[0], vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(g.c()[1], vec![int(0), int(2), int(3), int(4)]);
        let tiny = GeneralSpec::specialization(&ParamTable::new(3, 1).unwrap());
        assert_eq!(tiny.b(), &[1, 2]);
    }
}
