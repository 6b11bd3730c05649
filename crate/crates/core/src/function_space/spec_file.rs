//! JSON function specs and citation input files.

use serde::{Deserialize, Serialize};

use super::{ParametricFn, PiecewiseLinearFn, RankFunction};
use crate::{Error, Result};

/// On-disk description of a rank function.
///
/// ```json
/// {"type":"piecewise_linear","T":2,"knots":[[0,3],[1,1],[2,0.2]]}
/// {"type":"linear","S":10,"T":20}
/// {"type":"zipf","beta":0.5,"T":1}
/// {"type":"power_complement","n":3}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionSpec {
    PiecewiseLinear {
        #[serde(rename = "T")]
        endpoint: f64,
        knots: Vec<[f64; 2]>,
    },
    Linear {
        #[serde(rename = "S")]
        peak: f64,
        #[serde(rename = "T")]
        endpoint: f64,
    },
    Zipf {
        beta: f64,
        #[serde(rename = "T")]
        endpoint: f64,
    },
    PowerComplement {
        n: u32,
    },
}

impl FunctionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function spec serializes")
    }

    pub fn build(&self) -> Result<RankFunction> {
        match self {
            FunctionSpec::PiecewiseLinear { endpoint, knots } => {
                let f = PiecewiseLinearFn::new(knots.iter().map(|&[x, y]| (x, y)))?;
                if f.endpoint() != *endpoint {
                    return Err(Error::InvalidFunction(format!(
                        "declared T = {endpoint} but last knot is at x = {}",
                        f.endpoint()
                    )));
                }
                Ok(f.into())
            }
            FunctionSpec::Linear { peak, endpoint } => RankFunction::linear(*peak, *endpoint),
            FunctionSpec::Zipf { beta, endpoint } => RankFunction::zipf(*beta, *endpoint),
            FunctionSpec::PowerComplement { n } => RankFunction::power_complement(*n),
        }
    }
}

impl From<&RankFunction> for FunctionSpec {
    fn from(f: &RankFunction) -> Self {
        match f {
            RankFunction::Piecewise(p) => FunctionSpec::PiecewiseLinear {
                endpoint: p.endpoint(),
                knots: p.knots().iter().map(|k| [k.x, k.y]).collect(),
            },
            RankFunction::Parametric(ParametricFn::Linear { peak, endpoint }) => {
                FunctionSpec::Linear { peak: *peak, endpoint: *endpoint }
            }
            RankFunction::Parametric(ParametricFn::Zipf { beta, endpoint }) => {
                FunctionSpec::Zipf { beta: *beta, endpoint: *endpoint }
            }
            RankFunction::Parametric(ParametricFn::PowerComplement { n }) => FunctionSpec::PowerComplement { n: *n },
        }
    }
}

/// Contents of an input file: either a function spec or citation counts.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDoc {
    Function(FunctionSpec),
    Citations(Vec<f64>),
}

#[derive(Deserialize)]
struct CitationDoc {
    citations: Vec<f64>,
}

/// Parse an input file. JSON objects are either `{"citations":[...]}` or a
/// [`FunctionSpec`]; anything else is read as one count per line.
pub fn parse_input(text: &str) -> Result<InputDoc> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::Parse { line: 1, message: "input is empty".into() });
    }
    if trimmed.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        if value.get("citations").is_some() {
            let doc: CitationDoc =
                serde_json::from_value(value).map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
            return Ok(InputDoc::Citations(doc.citations));
        }
        return FunctionSpec::from_json(text).map(InputDoc::Function);
    }
    let mut counts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("expected a nonnegative number, found {line:?}"),
        })?;
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Parse { line: i + 1, message: format!("{line} is not a nonnegative number") });
        }
        counts.push(v);
    }
    Ok(InputDoc::Citations(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        let f = FunctionSpec::from_json(r#"{"type":"linear","S":10,"T":20}"#).unwrap();
        assert_eq!(f, FunctionSpec::Linear { peak: 10.0, endpoint: 20.0 });
        let f = FunctionSpec::from_json(r#"{"type":"zipf","beta":0.5,"T":1}"#).unwrap();
        assert!(f.build().is_ok());
        let f = FunctionSpec::from_json(r#"{"type":"power_complement","n":3}"#).unwrap();
        assert_eq!(f.build().unwrap(), RankFunction::power_complement(3).unwrap());
        let f = FunctionSpec::from_json(r#"{"type":"piecewise_linear","T":2,"knots":[[0,3],[1,1],[2,0.2]]}"#).unwrap();
        assert_eq!(f.build().unwrap().tail(), 0.2);
    }

    #[test]
    fn declared_endpoint_must_match() {
        let f = FunctionSpec::from_json(r#"{"type":"piecewise_linear","T":3,"knots":[[0,3],[2,0.2]]}"#).unwrap();
        assert!(f.build().is_err());
    }

    #[test]
    fn spec_round_trip() {
        let f = RankFunction::piecewise([(0.0, 3.0), (1.0, 1.0), (2.0, 0.2)]).unwrap();
        let spec = FunctionSpec::from(&f);
        let again = FunctionSpec::from_json(&spec.to_json()).unwrap().build().unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn citation_inputs() {
        assert_eq!(parse_input("5\n3\n\n1\n").unwrap(), InputDoc::Citations(vec![5.0, 3.0, 1.0]));
        assert_eq!(parse_input(r#"{"citations":[4,4]}"#).unwrap(), InputDoc::Citations(vec![4.0, 4.0]));
        assert!(matches!(parse_input(""), Err(Error::Parse { .. })));
        assert_eq!(
            parse_input("5\nabc\n"),
            Err(Error::Parse { line: 2, message: "expected a nonnegative number, found \"abc\"".into() })
        );
        assert!(matches!(parse_input("3\n-1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_input("{\"type\":\"linear\",\n\"S\":}"), Err(Error::Parse { line: 2, .. })));
    }
}
