//! JSON configuration: `{"n":3,"m":7,"r":1,"p":{"1,2":2,"2,3":2,"1,3":-1}}`.
//!
//! Keys of `p` are 1-based `"i,j"` with `i < j`. Values are integer exponents
//! of `z_m` or formal powers `"t^k"`.

use std::collections::BTreeMap;
use std::fmt;

use frt_core::params::{build_params, ParamEntry, ParamSet};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid key \"{key}\": {reason}")]
    InvalidKey { key: String, reason: String },
    #[error("invalid value for \"{key}\": {value}")]
    InvalidValue { key: String, value: String },
    #[error("invalid parameters at \"{key}\": {error}")]
    Validation { key: String, error: frt_core::Error },
    #[error("unknown check \"{0}\" (expected ybe, relations, cartan, group, pairing or all)")]
    UnknownCheck(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: usize,
    m: u64,
    r: RawEntry,
    #[serde(default)]
    p: BTreeMap<String, RawEntry>,
}

/// Parsed parameters together with their source exponents.
#[derive(Clone, Debug)]
pub struct ParamConfig {
    pub n: usize,
    pub m: u64,
    pub r: ParamEntry,
    /// 0-based keys
    pub p: BTreeMap<(usize, usize), ParamEntry>,
    pub params: ParamSet,
}

pub fn entry_string(e: ParamEntry) -> String {
    match e {
        ParamEntry::Root(k) => k.to_string(),
        ParamEntry::Formal(k) => format!("t^{k}"),
    }
}

fn parse_entry(key: &str, raw: &RawEntry) -> Result<ParamEntry, ConfigError> {
    let bad = |v: &str| ConfigError::InvalidValue {
        key: key.to_string(),
        value: v.to_string(),
    };
    match raw {
        RawEntry::Int(k) => Ok(ParamEntry::Root(*k)),
        RawEntry::Text(s) => {
            let s = s.trim();
            if s == "t" {
                return Ok(ParamEntry::Formal(1));
            }
            if let Some(exp) = s.strip_prefix("t^") {
                let exp = exp.trim_matches(|c| c == '(' || c == ')');
                return exp.parse().map(ParamEntry::Formal).map_err(|_| bad(s));
            }
            s.parse().map(ParamEntry::Root).map_err(|_| bad(s))
        }
    }
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize), ConfigError> {
    let err = |reason: &str| ConfigError::InvalidKey {
        key: key.to_string(),
        reason: reason.to_string(),
    };
    let (a, b) = key.split_once(',').ok_or_else(|| err("expected \"i,j\""))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| err("indices must be positive integers"))
    };
    let (i, j) = (parse(a)?, parse(b)?);
    if i == 0 || j == 0 || i > n || j > n {
        return Err(err(&format!("indices must lie in 1..={n}")));
    }
    if i >= j {
        return Err(err("the first index must be smaller than the second"));
    }
    Ok((i - 1, j - 1))
}

fn core_error_key(e: &frt_core::Error) -> String {
    use frt_core::Error as E;
    match e {
        E::MissingParameter { i, j } | E::InvalidParameterKey { i, j } => {
            format!("{},{}", i + 1, j + 1)
        }
        E::REqualsOne => "r".into(),
        E::InvalidConductor(_) => "m".into(),
        E::InvalidSize(_) => "n".into(),
        _ => "p".into(),
    }
}

pub fn parse_config(text: &str) -> Result<ParamConfig, ConfigError> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    let r = parse_entry("r", &raw.r)?;
    let mut p = BTreeMap::new();
    for (key, v) in &raw.p {
        let k = parse_key(key, raw.n)?;
        if p.insert(k, parse_entry(key, v)?).is_some() {
            return Err(ConfigError::InvalidKey {
                key: key.clone(),
                reason: "duplicate entry".into(),
            });
        }
    }
    let params = build_params(raw.n, raw.m, r, &p).map_err(|error| ConfigError::Validation {
        key: core_error_key(&error),
        error,
    })?;
    Ok(ParamConfig {
        n: raw.n,
        m: raw.m,
        r,
        p,
        params,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Ybe,
    Relations,
    Cartan,
    Group,
    Pairing,
}

impl Check {
    /// Execution order.
    pub const ALL: [Check; 5] = [
        Check::Ybe,
        Check::Relations,
        Check::Cartan,
        Check::Group,
        Check::Pairing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ybe => "ybe",
            Check::Relations => "relations",
            Check::Cartan => "cartan",
            Check::Group => "group",
            Check::Pairing => "pairing",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<Vec<Check>, ConfigError> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(Check::ALL);
            continue;
        }
        let c = Check::ALL
            .into_iter()
            .find(|c| c.name() == item)
            .ok_or_else(|| ConfigError::UnknownCheck(item.to_string()))?;
        out.push(c);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parses a 1-based `"i,j,k,l"` R-matrix cell into 0-based indices.
pub fn parse_cell(s: &str, n: usize) -> Result<(usize, usize, usize, usize), ConfigError> {
    let err = || ConfigError::InvalidKey {
        key: s.to_string(),
        reason: format!("expected four indices in 1..={n}"),
    };
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    if v.len() != 4 || v.iter().any(|&x| x == 0 || x > n) {
        return Err(err());
    }
    Ok((v[0] - 1, v[1] - 1, v[2] - 1, v[3] - 1))
}
