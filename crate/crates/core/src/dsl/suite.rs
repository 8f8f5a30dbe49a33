//! Identity-suite files (`"schema": "qalg-identity/1"`).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ast::Node;
use super::eval::{free_indices, Env};
use super::parser::{parse, ParseError};

pub const SCHEMA: &str = "qalg-identity/1";

/// The bundled registry.
pub const BUILTIN: &str = include_str!("../../suites/builtin.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `lhs − rhs` normalizes to zero.
    #[default]
    Equal,
    /// `lhs = c·rhs` for one scalar `c` shared by all instances; `c` is
    /// reported.
    Proportional,
    /// `rhs` is a classical number and `lhs − rhs` is operator valued: it
    /// equals the declared `remainder` when one is given, otherwise the
    /// scalar part of its normal form must vanish. The remainder is
    /// reported.
    ScalarPart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexOrder {
    /// Only instances with free index values in nondecreasing order.
    Nondecreasing,
}

fn default_trunc() -> u32 {
    crate::DEFAULT_TRUNC
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default)]
    pub free_indices: Vec<String>,
    #[serde(default = "default_trunc")]
    pub truncation: u32,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "is_equal")]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_order: Option<IndexOrder>,
    /// Declared operator remainder for `scalar_part` mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
}

fn is_equal(m: &Mode) -> bool {
    *m == Mode::Equal
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SuiteFile {
    schema: String,
    identities: Vec<IdentitySpec>,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("invalid suite JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema `{0}`, expected `{SCHEMA}`")]
    Schema(String),
    #[error("duplicate identity name `{0}`")]
    Duplicate(String),
    #[error("{identity} ({side}): {error}")]
    Parse { identity: String, side: &'static str, error: ParseError },
    #[error("{identity}: {message}")]
    Index { identity: String, message: String },
}

/// A parsed identity with its concrete index instances.
#[derive(Debug, Clone)]
pub struct Identity {
    pub spec: IdentitySpec,
    pub lhs: Node,
    pub rhs: Node,
    pub remainder: Option<Node>,
    pub instances: Vec<Env>,
}

impl Identity {
    pub fn parse(spec: IdentitySpec) -> Result<Identity, SuiteError> {
        let side = |side: &'static str, src: &str| {
            parse(src).map_err(|error| SuiteError::Parse { identity: spec.name.clone(), side, error })
        };
        let lhs = side("lhs", &spec.lhs)?;
        let rhs = side("rhs", &spec.rhs)?;
        let remainder = match &spec.remainder {
            Some(src) if spec.mode == Mode::ScalarPart => Some(side("remainder", src)?),
            Some(_) => {
                return Err(SuiteError::Index {
                    identity: spec.name.clone(),
                    message: "remainder is only meaningful in scalar_part mode".into(),
                })
            }
            None => None,
        };
        let index_err = |message: String| SuiteError::Index { identity: spec.name.clone(), message };
        let declared: BTreeSet<String> = spec.free_indices.iter().cloned().collect();
        if declared.len() != spec.free_indices.len() {
            return Err(index_err("repeated name in free_indices".into()));
        }
        let mut used = BTreeSet::new();
        for node in [Some(&lhs), Some(&rhs), remainder.as_ref()].into_iter().flatten() {
            let f = free_indices(node, &Env::new()).map_err(|e| index_err(e.to_string()))?;
            for n in f {
                if !declared.contains(&n) {
                    return Err(index_err(format!("index `{}` is free but not declared", n)));
                }
                used.insert(n);
            }
        }
        if let Some(n) = declared.difference(&used).next() {
            return Err(index_err(format!("declared index `{}` does not occur", n)));
        }
        let instances = expand(&spec.free_indices, spec.index_order);
        Ok(Identity { spec, lhs, rhs, remainder, instances })
    }
}

/// Every assignment of 0..3 to `names`.
fn expand(names: &[String], order: Option<IndexOrder>) -> Vec<Env> {
    let mut out = Vec::new();
    let total = 4usize.pow(names.len() as u32);
    'outer: for code in 0..total {
        let mut env = Env::new();
        let mut values = Vec::with_capacity(names.len());
        let mut c = code;
        for _ in names {
            values.push((c % 4) as u8);
            c /= 4;
        }
        values.reverse();
        if order == Some(IndexOrder::Nondecreasing) && values.windows(2).any(|w| w[0] > w[1]) {
            continue 'outer;
        }
        for (n, v) in names.iter().zip(values) {
            env.insert(n.clone(), v);
        }
        out.push(env);
    }
    out
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub identities: Vec<Identity>,
}

impl Suite {
    pub fn from_json(text: &str) -> Result<Suite, SuiteError> {
        let file: SuiteFile = serde_json::from_str(text)?;
        if file.schema != SCHEMA {
            return Err(SuiteError::Schema(file.schema));
        }
        let mut seen = BTreeSet::new();
        let mut identities = Vec::new();
        for spec in file.identities {
            if !seen.insert(spec.name.clone()) {
                return Err(SuiteError::Duplicate(spec.name));
            }
            identities.push(Identity::parse(spec)?);
        }
        Ok(Suite { identities })
    }

    pub fn builtin() -> Suite {
        Suite::from_json(BUILTIN).expect("bundled suite is valid")
    }

    /// Identities carrying at least one of `tags`; all of them when empty.
    pub fn filter_tags(self, tags: &[String]) -> Suite {
        if tags.is_empty() {
            return self;
        }
        let identities = self
            .identities
            .into_iter()
            .filter(|id| id.spec.tags.iter().any(|t| tags.contains(t)))
            .collect();
        Suite { identities }
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.spec.name == name)
    }

    pub fn to_json(&self) -> String {
        let file = SuiteFile {
            schema: SCHEMA.into(),
            identities: self.identities.iter().map(|i| i.spec.clone()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(lhs: &str, rhs: &str, free: &[&str]) -> String {
        let free: Vec<String> = free.iter().map(|s| format!("\"{}\"", s)).collect();
        format!(
            r#"{{"schema":"qalg-identity/1","identities":[{{"name":"t","lhs":"{}","rhs":"{}","free_indices":[{}],"tags":["x"]}}]}}"#,
            lhs,
            rhs,
            free.join(",")
        )
    }

    #[test]
    fn two_free_indices_give_sixteen_instances() {
        let s = Suite::from_json(&one("comm(P[mu],X[nu])", "-eta[mu,nu]", &["mu", "nu"])).unwrap();
        assert_eq!(s.identities[0].instances.len(), 16);
        assert_eq!(s.identities[0].spec.truncation, 1);
    }

    #[test]
    fn undeclared_index_rejected() {
        assert!(matches!(
            Suite::from_json(&one("P[mu]", "0", &[])),
            Err(SuiteError::Index { .. })
        ));
        assert!(matches!(Suite::from_json(&one("P0", "0", &["mu"])), Err(SuiteError::Index { .. })));
    }

    #[test]
    fn schema_and_syntax_errors() {
        let bad = one("P0", "0", &[]).replace("qalg-identity/1", "other");
        assert!(matches!(Suite::from_json(&bad), Err(SuiteError::Schema(_))));
        assert!(matches!(Suite::from_json(&one("P0 +", "0", &[])), Err(SuiteError::Parse { .. })));
        assert!(matches!(Suite::from_json("{"), Err(SuiteError::Json(_))));
    }

    #[test]
    fn nondecreasing_order() {
        let names = vec!["mu".to_string(), "nu".to_string()];
        assert_eq!(expand(&names, Some(IndexOrder::Nondecreasing)).len(), 10);
    }

    #[test]
    fn builtin_parses_and_is_large() {
        let s = Suite::builtin();
        assert!(s.identities.len() >= 40);
        let round = Suite::from_json(&s.to_json()).unwrap();
        assert_eq!(round.identities.len(), s.identities.len());
    }
}
