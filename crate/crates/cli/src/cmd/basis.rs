use std::path::Path;

use anyhow::{bail, Result};
use dinv_core::{build_explicit, build_general, build_recursive, BasisSequence, GeneralSpec};

use crate::input::{emit, load_spec, SpecFile};
use crate::Source;

pub fn build(source: Source, spec: &SpecFile) -> Result<BasisSequence> {
    Ok(match (source, spec) {
        (Source::Recursive, SpecFile::Params(t)) => build_recursive(t),
        (Source::Explicit, SpecFile::Params(t)) => build_explicit(t),
        (Source::General, SpecFile::General(g)) => build_general(g),
        (Source::General, SpecFile::Params(t)) => {
            build_general(&GeneralSpec::specialization(t)).truncated(t.n() + 1)
        }
        (_, SpecFile::General(_)) => bail!("--source {source:?} needs a parameter table, not a general spec"),
    })
}

pub fn pretty_lines(basis: &BasisSequence) -> String {
    basis
        .elements
        .iter()
        .enumerate()
        .map(|(k, p)| format!("L{k} = {p}\n"))
        .collect()
}

pub fn run(source: Source, spec: &Path, out: Option<&Path>, pretty: bool) -> Result<bool> {
    let basis = build(source, &load_spec(spec)?)?;
    let text = if pretty {
        pretty_lines(&basis)
    } else {
        let mut s = serde_json::to_string(&basis)?;
        s.push('\n');
        s
    };
    emit(&text, out)?;
    Ok(true)
}
