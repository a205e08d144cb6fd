//! JSON formats and verification suites for `bincx-core`, used by the `bincx`
//! command-line tool.

pub mod json;
pub mod suites;

use bincx_core::FieldDesc;

/// Parses `q` or `fp:P`.
pub fn parse_field(s: &str) -> Result<FieldDesc, String> {
    let lower = s.to_ascii_lowercase();
    if lower == "q" {
        return Ok(FieldDesc::Rationals);
    }
    let p = lower
        .strip_prefix("fp:")
        .ok_or_else(|| format!("field must be q or fp:P, got {s:?}"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad modulus {p:?}"))?;
    FieldDesc::prime(p).map_err(|e| e.to_string())
}
