pub mod basis;
pub mod example1;
pub mod limit;
pub mod points;
pub mod verify;

use anyhow::Result;
use serde::Serialize;

pub(crate) fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
