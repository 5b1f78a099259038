//! The JSON algebra config: `{"n": 3, "alpha": [...], "beta": [...], "gamma": [...]}`
//! with rationals written as strings.

use qdu::{Parameters, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("malformed config at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("n must be positive")]
    ZeroN,
    #[error("{field}: length mismatch ({len} entries, n = {n})")]
    LengthMismatch { field: &'static str, len: usize, n: usize },
    #[error("{field}[{index}]: {message}")]
    Entry { field: &'static str, index: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub n: usize,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
}

fn parse_field(field: &'static str, values: &[String], n: usize) -> Result<Vec<Scalar>, ConfigError> {
    if values.len() != n {
        return Err(ConfigError::LengthMismatch { field, len: values.len(), n });
    }
    values
        .iter()
        .enumerate()
        .map(|(index, s)| {
            s.parse::<Scalar>().map_err(|e| ConfigError::Entry {
                field,
                index,
                message: match e {
                    qdu::Error::Input(m) => m,
                    other => other.to_string(),
                },
            })
        })
        .collect()
}

impl AlgebraConfig {
    pub fn from_parameters(p: &Parameters) -> AlgebraConfig {
        let strings = |v: &[Scalar]| v.iter().map(ToString::to_string).collect();
        AlgebraConfig { n: p.n(), alpha: strings(&p.alpha), beta: strings(&p.beta), gamma: strings(&p.gamma) }
    }

    pub fn parameters(&self) -> Result<Parameters, ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::ZeroN);
        }
        let alpha = parse_field("alpha", &self.alpha, self.n)?;
        let beta = parse_field("beta", &self.beta, self.n)?;
        let gamma = parse_field("gamma", &self.gamma, self.n)?;
        Ok(Parameters::new(alpha, beta, gamma).expect("validated lengths"))
    }

    /// Entries rewritten in lowest terms.
    pub fn canonical(&self) -> Result<AlgebraConfig, ConfigError> {
        Ok(AlgebraConfig::from_parameters(&self.parameters()?))
    }
}

/// Parses and validates a config.
pub fn parse_config(text: &str) -> Result<AlgebraConfig, ConfigError> {
    let cfg: AlgebraConfig = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    cfg.parameters()?;
    Ok(cfg)
}

/// Pretty JSON with a trailing newline; `parse_config` inverts it.
pub fn print_config(cfg: &AlgebraConfig) -> String {
    let mut s = serde_json::to_string_pretty(cfg).expect("plain data");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"n":3,"alpha":["0","0","0"],"beta":["1","1","1"],"gamma":["0","0","0"]}"#;

    #[test]
    fn sample_is_valid() {
        let cfg = parse_config(SAMPLE).unwrap();
        assert_eq!(cfg.parameters().unwrap().beta, vec![Scalar::one(); 3]);
    }

    #[test]
    fn rejects_bad_input() {
        let short = r#"{"n":3,"alpha":["0","0","0"],"beta":["1","1"],"gamma":["0","0","0"]}"#;
        assert!(parse_config(short).unwrap_err().to_string().contains("length mismatch"));
        let zero = r#"{"n":1,"alpha":["1/0"],"beta":["1"],"gamma":["0"]}"#;
        assert!(parse_config(zero).unwrap_err().to_string().contains("zero denominator"));
        let junk = r#"{"n":1,"alpha":["x"],"beta":["1"],"gamma":["0"]}"#;
        assert!(parse_config(junk).unwrap_err().to_string().contains("alpha[0]: malformed rational"));
        let empty = r#"{"n":0,"alpha":[],"beta":[],"gamma":[]}"#;
        assert_eq!(parse_config(empty).unwrap_err(), ConfigError::ZeroN);
        assert!(matches!(parse_config("{\"n\":").unwrap_err(), ConfigError::Syntax { line: 1, .. }));
    }

    #[test]
    fn canonical_round_trip() {
        let cfg = parse_config(r#"{"n":2,"alpha":["2/4","-0"],"beta":["3","-6/9"],"gamma":["0","1"]}"#).unwrap();
        let canon = cfg.canonical().unwrap();
        assert_eq!(canon.alpha, vec!["1/2", "0"]);
        let text = print_config(&canon);
        assert_eq!(parse_config(&text).unwrap(), canon);
        assert_eq!(print_config(&parse_config(&text).unwrap()), text);
    }
}
