//! Monoid and fan files.
//!
//! A monoid file is `{ "ambient_rank": n, "generators": [[…]], "ideal": [[…]] }`
//! (the ideal may be omitted); a fan file is
//! `{ "rank": n, "cones": [ { "rays": [[…]] } ] }` with faces filled in.
//! Both may carry a `"name"`, which is not part of the canonical form.

use std::fs;
use std::path::Path;

use pctf_core::monoid::{AffineMonoid, Ideal, PctfMonoid};
use pctf_core::toric::{Cone, Fan};
use pctf_core::{Error, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "ambient_rank", alias = "rank")]
    pub rank: usize,
    pub generators: Vec<Vector>,
    #[serde(default)]
    pub ideal: Vec<Vector>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub rays: Vec<Vector>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub cones: Vec<ConeSpec>,
}

/// Either kind of input file, told apart by its keys.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AnyFile {
    Monoid(MonoidFile),
    Fan(FanFile),
}

#[derive(Clone, Debug)]
pub struct ParsedMonoid {
    pub name: Option<String>,
    pub monoid: PctfMonoid,
    pub canonical: MonoidFile,
}

#[derive(Clone, Debug)]
pub struct ParsedFan {
    pub name: Option<String>,
    pub fan: Fan,
    pub canonical: FanFile,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn semantic(path: &Path, field: impl Into<String>, source: Error) -> CliError {
    CliError::Semantic { path: path.display().to_string(), field: field.into(), source }
}

fn check_vector(path: &Path, field: String, rank: usize, v: &[i64]) -> Result<(), CliError> {
    if v.len() != rank {
        return Err(semantic(path, field, Error::RankMismatch { expected: rank, found: v.len() }));
    }
    Ok(())
}

pub fn monoid_from_file(path: &Path, file: MonoidFile) -> Result<ParsedMonoid, CliError> {
    for (i, g) in file.generators.iter().enumerate() {
        check_vector(path, format!("generators[{i}]"), file.rank, g)?;
    }
    let carrier = AffineMonoid::new(file.rank, &file.generators).map_err(|e| semantic(path, "generators", e))?;
    for (i, h) in file.ideal.iter().enumerate() {
        check_vector(path, format!("ideal[{i}]"), file.rank, h)?;
        Ideal::new(&carrier, std::slice::from_ref(h)).map_err(|e| semantic(path, format!("ideal[{i}]"), e))?;
    }
    let monoid = PctfMonoid::new(carrier, &file.ideal).map_err(|e| semantic(path, "ideal", e))?;
    let mut ideal = monoid.ideal().generators().to_vec();
    ideal.sort();
    let mut generators = monoid.carrier().minimized().generators().to_vec();
    generators.sort();
    let canonical = MonoidFile { name: None, rank: file.rank, generators, ideal };
    Ok(ParsedMonoid { name: file.name, monoid, canonical })
}

pub fn fan_from_file(path: &Path, file: FanFile) -> Result<ParsedFan, CliError> {
    let mut cones = Vec::new();
    for (i, c) in file.cones.iter().enumerate() {
        for (j, r) in c.rays.iter().enumerate() {
            check_vector(path, format!("cones[{i}].rays[{j}]"), file.rank, r)?;
        }
        cones.push(Cone::new(file.rank, &c.rays).map_err(|e| semantic(path, format!("cones[{i}]"), e))?);
    }
    let fan = Fan::from_cones(file.rank, cones).map_err(|e| semantic(path, "cones", e))?;
    let canonical = canonical_fan(&fan);
    Ok(ParsedFan { name: file.name, fan, canonical })
}

/// Maximal cones with sorted primitive rays.
pub fn canonical_fan(fan: &Fan) -> FanFile {
    FanFile {
        name: None,
        rank: fan.rank(),
        cones: fan.maximal_cones().iter().map(|c| ConeSpec { rays: c.rays().to_vec() }).collect(),
    }
}

pub fn parse_monoid(path: &Path) -> Result<ParsedMonoid, CliError> {
    let text = read(path)?;
    monoid_from_file(path, parse_json(path, &text)?)
}

pub fn parse_fan(path: &Path) -> Result<ParsedFan, CliError> {
    let text = read(path)?;
    fan_from_file(path, parse_json(path, &text)?)
}

pub enum Parsed {
    Monoid(ParsedMonoid),
    Fan(ParsedFan),
}

pub fn parse_any(path: &Path) -> Result<Parsed, CliError> {
    let text = read(path)?;
    match parse_json::<AnyFile>(path, &text)? {
        AnyFile::Monoid(m) => Ok(Parsed::Monoid(monoid_from_file(path, m)?)),
        AnyFile::Fan(f) => Ok(Parsed::Fan(fan_from_file(path, f)?)),
    }
}

/// `"1,-2,0"` as a vector.
pub fn parse_vector(s: &str) -> Result<Vector, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_round_trips() {
        let path = Path::new("inline.json");
        let file: MonoidFile =
            parse_json(path, r#"{"ambient_rank":2,"generators":[[0,1],[1,1],[1,0]],"ideal":[[2,2],[1,1]]}"#).unwrap();
        let first = monoid_from_file(path, file).unwrap().canonical;
        let text = serde_json::to_string(&first).unwrap();
        assert_eq!(text, r#"{"ambient_rank":2,"generators":[[0,1],[1,0]],"ideal":[[1,1]]}"#);
        let again = monoid_from_file(path, parse_json(path, &text).unwrap()).unwrap().canonical;
        assert_eq!(serde_json::to_string(&again).unwrap(), text);
    }

    #[test]
    fn fans_keep_only_maximal_cones() {
        let path = Path::new("inline.json");
        let file: FanFile =
            parse_json(path, r#"{"rank":2,"cones":[{"rays":[[1,0]]},{"rays":[[0,1],[1,0]]}]}"#).unwrap();
        let parsed = fan_from_file(path, file).unwrap();
        assert_eq!(parsed.canonical.cones.len(), 1);
        assert_eq!(parsed.fan.cones().len(), 4);
    }
}
