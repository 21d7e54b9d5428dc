use std::path::Path;

use anyhow::{bail, Context, Result};
use dinv_core::params::parse_point;
use dinv_core::rational::{int, parse_rational};
use dinv_core::{BasisSequence, GeneralSpec, ParamTable, Polynomial, Rational};

pub enum SpecFile {
    Params(ParamTable),
    General(GeneralSpec),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A GeneralSpec is recognised by its `b` field.
pub fn load_spec(path: &Path) -> Result<SpecFile> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("b").is_some() {
        let g = serde_json::from_value(value)
            .with_context(|| format!("invalid general spec in {}", path.display()))?;
        Ok(SpecFile::General(g))
    } else {
        let t = serde_json::from_value(value)
            .with_context(|| format!("invalid parameter table in {}", path.display()))?;
        Ok(SpecFile::Params(t))
    }
}

pub fn load_params(path: &Path) -> Result<ParamTable> {
    match load_spec(path)? {
        SpecFile::Params(t) => Ok(t),
        SpecFile::General(_) => bail!("{} is a general spec; this command needs a parameter table", path.display()),
    }
}

pub fn load_basis(path: &Path) -> Result<BasisSequence> {
    let text = read(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing basis {}", path.display()))
}

/// Text form or JSON form, decided by a leading `{`.
pub fn parse_function(text: &str, dim: usize) -> Result<Polynomial> {
    let t = text.trim();
    let f: Polynomial = if t.starts_with('{') {
        serde_json::from_str(t).context("parsing JSON polynomial")?
    } else {
        Polynomial::parse(t, dim).context("parsing polynomial")?
    };
    if f.dim() != dim {
        bail!("test function has dimension {}, expected {dim}", f.dim());
    }
    Ok(f)
}

pub fn load_function(inline: Option<&str>, file: Option<&Path>, dim: usize) -> Result<Polynomial> {
    match (inline, file) {
        (Some(t), _) => parse_function(t, dim),
        (None, Some(p)) => parse_function(&read(p)?, dim),
        (None, None) => bail!("a test function is required (--f or --f-file)"),
    }
}

pub fn base_point(z0: Option<&str>, dim: usize) -> Result<Vec<Rational>> {
    let z = match z0 {
        None => vec![int(0); dim],
        Some(s) => parse_point(s).with_context(|| format!("malformed z0 {s:?}"))?,
    };
    if z.len() != dim {
        bail!("z0 has {} coordinates, expected {dim}", z.len());
    }
    Ok(z)
}

pub fn rational_arg(s: &str) -> Result<Rational> {
    parse_rational(s).with_context(|| format!("malformed rational {s:?}"))
}

/// Writes `text` to `out`, or stdout when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
