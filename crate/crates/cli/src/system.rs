//! System definition files and the built-in systems.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use nilhecke::coxeter::{CoxeterSystem, Generator, Order};
use nilhecke::subexpr::Bits;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub name: String,
    pub generators: Vec<String>,
    pub cartan: Vec<Vec<serde_json::Number>>,
    #[serde(default)]
    pub coxeter_matrix: Option<Vec<Vec<Value>>>,
}

pub const BUILTINS: &[(&str, &str)] = &[
    ("A1", include_str!("../systems/A1.json")),
    ("A2", include_str!("../systems/A2.json")),
    ("A3", include_str!("../systems/A3.json")),
    ("A4", include_str!("../systems/A4.json")),
    ("A5", include_str!("../systems/A5.json")),
    ("A6", include_str!("../systems/A6.json")),
    ("A7", include_str!("../systems/A7.json")),
    ("A8", include_str!("../systems/A8.json")),
    ("A9", include_str!("../systems/A9.json")),
    ("A10", include_str!("../systems/A10.json")),
    ("A11", include_str!("../systems/A11.json")),
    ("B2", include_str!("../systems/B2.json")),
    ("B2-dual", include_str!("../systems/B2-dual.json")),
    ("G2", include_str!("../systems/G2.json")),
    ("G2-dual", include_str!("../systems/G2-dual.json")),
    ("D4", include_str!("../systems/D4.json")),
    ("A1-affine", include_str!("../systems/A1-affine.json")),
];

/// A parsed system with the name it was declared under.
#[derive(Debug, Clone)]
pub struct NamedSystem {
    pub name: String,
    pub system: Arc<CoxeterSystem>,
}

impl SystemFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::SystemFile(e.to_string()))
    }

    pub fn build(&self) -> CliResult<NamedSystem> {
        let cartan = self
            .cartan
            .iter()
            .map(|row| row.iter().map(integer).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        let coxeter = match &self.coxeter_matrix {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|row| row.iter().map(order).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()?,
            ),
        };
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if g.is_empty() || g.contains(|c: char| c.is_whitespace() || c == ',') {
                return Err(CliError::SystemFile(format!("bad generator name {g:?}")));
            }
            if !seen.insert(g) {
                return Err(CliError::SystemFile(format!(
                    "duplicate generator name {g:?}"
                )));
            }
        }
        let system = CoxeterSystem::new(self.generators.clone(), cartan, coxeter)?;
        Ok(NamedSystem {
            name: self.name.clone(),
            system: Arc::new(system),
        })
    }
}

fn integer(n: &serde_json::Number) -> CliResult<BigInt> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| CliError::SystemFile(format!("cartan entry {n} is not an integer")))
}

fn order(v: &Value) -> CliResult<Order> {
    match v {
        Value::String(s) if s == "inf" => Ok(Order::Infinite),
        Value::Number(n) => n
            .to_string()
            .parse::<u32>()
            .ok()
            .filter(|&m| m >= 1)
            .map(Order::Finite)
            .ok_or_else(|| {
                CliError::SystemFile(format!("coxeter entry {n} must be a positive integer"))
            }),
        other => Err(CliError::SystemFile(format!(
            "coxeter entry {other} must be an integer or \"inf\""
        ))),
    }
}

pub fn builtin(name: &str) -> Option<NamedSystem> {
    BUILTINS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| {
            SystemFile::parse(text)
                .and_then(|f| f.build())
                .expect("built-in system is valid")
        })
}

/// A path to a system file, or the name of a built-in system.
pub fn load(source: &str) -> CliResult<NamedSystem> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: source.to_string(),
            message: e.to_string(),
        })?;
        return SystemFile::parse(&text)?.build();
    }
    builtin(source).ok_or_else(|| CliError::UnknownSystem(source.to_string()))
}

/// Splits a word on whitespace and commas. A single token that is not a
/// generator name is read one character per generator, so `1324` works for
/// systems with one-character names.
pub fn parse_word(sys: &CoxeterSystem, text: &str) -> CliResult<Vec<Generator>> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if let [only] = tokens.as_slice() {
        if sys.generator_index(only).is_none() {
            let chars: Option<Vec<Generator>> = only
                .chars()
                .map(|c| sys.generator_index(&c.to_string()))
                .collect();
            if let Some(word) = chars {
                return Ok(word);
            }
        }
    }
    tokens
        .iter()
        .map(|t| {
            sys.generator_index(t)
                .ok_or_else(|| CliError::UnknownGenerator {
                    name: t.to_string(),
                    known: sys.generator_names().join(" "),
                })
        })
        .collect()
}

pub fn parse_bits(text: &str) -> CliResult<Bits> {
    text.trim()
        .parse()
        .map_err(|_| CliError::BadBits(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        for (name, _) in BUILTINS {
            let sys = builtin(name).unwrap();
            assert_eq!(&sys.name, name);
        }
        assert_eq!(
            builtin("A11")
                .unwrap()
                .system
                .generator_names()
                .last()
                .unwrap(),
            "b"
        );
        assert_eq!(builtin("d4").unwrap().system.pairing(1, 3), -1);
    }

    #[test]
    fn words() {
        let a3 = builtin("A3").unwrap().system;
        assert_eq!(parse_word(&a3, "1 2,3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_word(&a3, "1213").unwrap(), vec![0, 1, 0, 2]);
        assert_eq!(parse_word(&a3, "  ").unwrap(), Vec::<Generator>::new());
        assert_eq!(
            parse_word(&a3, "1 4").unwrap_err().code(),
            "UnknownGenerator"
        );
        assert_eq!(
            parse_word(&a3, "14").unwrap_err().code(),
            "UnknownGenerator"
        );
    }

    #[test]
    fn bits() {
        assert_eq!(parse_bits("0110").unwrap().to_string(), "0110");
        assert_eq!(parse_bits("").unwrap().len(), 0);
        assert!(parse_bits("012").is_err());
    }
}
