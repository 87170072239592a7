//! Versioned JSON reports.

use pctf_core::field::Coeff;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

/// Exit status of a verb.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Computed; any property checked holds.
    Ok,
    /// A checked property is false.
    False,
    /// A budget or window ran out before a decision.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok => 0,
            Verdict::False => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub verb: String,
    pub input_hash: String,
    pub inputs: Vec<Value>,
    pub options: Value,
    pub results: Value,
    /// Ranges over which the results are claimed, and any window limits.
    pub valid: Value,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(verb: &str, inputs: Vec<Value>, options: Value, results: Value, valid: Value, verdict: Verdict) -> Report {
        Report { schema: SCHEMA, verb: verb.into(), input_hash: input_hash(&inputs), inputs, options, results, valid, verdict }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 of the compact canonical inputs.
pub fn input_hash(inputs: &[Value]) -> String {
    let bytes = serde_json::to_vec(inputs).expect("values serialize");
    hex::encode(Sha256::digest(&bytes))
}

pub fn coeff_name(c: Coeff) -> String {
    match c {
        Coeff::Rationals => "Q".into(),
        Coeff::Prime(p) => format!("Fp:{p}"),
        Coeff::Integers => "Z".into(),
    }
}

/// `q`, `z` or `fp:p` (any case).
pub fn parse_coeff(s: &str) -> Result<Coeff, String> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "q" => Ok(Coeff::Rationals),
        "z" => Ok(Coeff::Integers),
        _ => {
            let p = t
                .strip_prefix("fp:")
                .ok_or_else(|| format!("unknown field {s:?}; use q, z or fp:p"))?
                .parse::<u64>()
                .map_err(|e| format!("{s:?}: {e}"))?;
            if pctf_core::field::PrimeField::new(p).is_none() {
                return Err(format!("{p} is not a prime below 2^32"));
            }
            Ok(Coeff::Prime(p))
        }
    }
}
