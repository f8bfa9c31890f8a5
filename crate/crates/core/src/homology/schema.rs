use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exactfield::parse_monomial;

use super::{validate_params, AlphaEntry, HomologyError, ParameterSystem};

/// JSON form of a parameter system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub m: usize,
    pub alphas: Vec<AlphaJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alignment_override: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlphaJson {
    Integral {
        value: i64,
    },
    Symbolic {
        lambda: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        numeric_hint: Option<[f64; 2]>,
    },
}

impl ParamsJson {
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        serde_json::from_str(text).map_err(|e| HomologyError::Schema(e.to_string()))
    }

    pub fn validate(&self) -> Result<ParameterSystem, HomologyError> {
        let alphas = self
            .alphas
            .iter()
            .map(|a| match a {
                AlphaJson::Integral { value } => Ok(AlphaEntry::Integral(*value)),
                AlphaJson::Symbolic { lambda, numeric_hint } => Ok(AlphaEntry::NonIntegral {
                    lambda: parse_monomial(lambda)?,
                    numeric_hint: numeric_hint.map(|[re, im]| Complex64::new(re, im)),
                }),
            })
            .collect::<Result<Vec<_>, HomologyError>>()?;
        validate_params(self.m, alphas, self.alignment_override.clone())
    }
}

impl From<&ParameterSystem> for ParamsJson {
    fn from(ps: &ParameterSystem) -> Self {
        ParamsJson {
            m: ps.m(),
            alphas: ps
                .alphas()
                .iter()
                .map(|a| match a {
                    AlphaEntry::Integral(v) => AlphaJson::Integral { value: *v },
                    AlphaEntry::NonIntegral { lambda, numeric_hint } => AlphaJson::Symbolic {
                        lambda: lambda.to_string(),
                        numeric_hint: numeric_hint.map(|z| [z.re, z.im]),
                    },
                })
                .collect(),
            alignment_override: Some(ps.alignment().order().to_vec()),
        }
    }
}

impl ParameterSystem {
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        ParamsJson::from_json(text)?.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ParamsJson::from(self)).expect("serializable")
    }
}
