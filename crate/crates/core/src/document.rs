//! JSON documents for pairs: `{"field": "GF(3)", "A": [[...]], "B": [[...]]}`.
//!
//! Entries may be strings in the field's scalar syntax or plain integers.
//! Rendering always writes strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SqMatrix;
use crate::pair::MatrixPair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, spec: FieldSpec) -> Result<crate::field::FieldScalar> {
        match self {
            ScalarText::Text(s) => spec.parse_scalar(s),
            // integers over a finite field must already be residues
            ScalarText::Int(v) => match spec.characteristic() {
                0 => Ok(spec.from_i64(*v)),
                p if (0..p as i64).contains(v) => Ok(spec.from_i64(*v)),
                _ => Err(Error::ParseScalar {
                    text: v.to_string(),
                    field: spec,
                }),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<ScalarText>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<ScalarText>>,
}

pub fn render_matrix(m: &SqMatrix) -> Vec<Vec<String>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn parse_matrix(name: &str, rows: &[Vec<ScalarText>], spec: FieldSpec) -> Result<SqMatrix> {
    let n = rows.len();
    if !(1..=4).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!(
            "{name} is not square: {n} rows but a row of length {}",
            r.len()
        )));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| x.parse(spec)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SqMatrix::from_rows(spec, parsed)
}

impl PairDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn from_pair(p: &MatrixPair) -> Self {
        let text = |m: &SqMatrix| {
            render_matrix(m)
                .into_iter()
                .map(|r| r.into_iter().map(ScalarText::Text).collect())
                .collect()
        };
        PairDocument {
            field: Some(p.spec().to_string()),
            a: text(p.a()),
            b: text(p.b()),
        }
    }

    /// The working field: the document's own, else `fallback`, else ℚ.
    /// Both present and different is an error.
    pub fn resolve_field(&self, fallback: Option<FieldSpec>) -> Result<FieldSpec> {
        let own = self.field.as_deref().map(str::parse::<FieldSpec>).transpose()?;
        match (own, fallback) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch { left: a, right: b }),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Ok(FieldSpec::Rationals),
        }
    }

    pub fn parse(&self, fallback: Option<FieldSpec>) -> Result<MatrixPair> {
        let spec = self.resolve_field(fallback)?;
        let a = parse_matrix("A", &self.a, spec)?;
        let b = parse_matrix("B", &self.b, spec)?;
        MatrixPair::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_scalars() {
        let doc = PairDocument::from_json(
            r#"{"field":"Q","A":[[0,"1"],[0,0]],"B":[["0","-3/6"],[0,0]]}"#,
        )
        .unwrap();
        let p = doc.parse(None).unwrap();
        assert_eq!(p.b()[(0, 1)], FieldSpec::Rationals.from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"field":"GF(3^2)","A":[["[0,0]","[1,2]"],["[0,0]","[0,0]"]],"B":[[0,1],[0,0]]}"#;
        let doc = PairDocument::from_json(text).unwrap();
        let p = doc.parse(None).unwrap();
        let rendered = PairDocument::from_pair(&p);
        assert_eq!(rendered.parse(None).unwrap(), p);
        assert_eq!(PairDocument::from_json(&rendered.to_json()).unwrap(), rendered);
    }

    #[test]
    fn validation_errors() {
        let bad = |t: &str| PairDocument::from_json(t).and_then(|d| d.parse(None)).unwrap_err();
        assert!(matches!(
            bad(r#"{"A":[[0,1]],"B":[[0]]}"#),
            Error::ShapeMismatch(_)
        ));
        assert!(matches!(
            bad(r#"{"A":[[0,1],[0,0]],"B":[[0,0],[1,0]]}"#),
            Error::NotCommuting
        ));
        assert!(matches!(
            bad(r#"{"A":[[1,0],[0,0]],"B":[[0,0],[0,0]]}"#),
            Error::NotNilpotent(_)
        ));
        assert!(matches!(bad(r#"{"A":[[0]]}"#), Error::Document(_)));
        assert!(matches!(
            bad(r#"{"field":"GF(2)","A":[[2]],"B":[[0]]}"#),
            Error::ParseScalar { .. }
        ));
        let doc = PairDocument::from_json(r#"{"field":"GF(2)","A":[[0]],"B":[[0]]}"#).unwrap();
        assert!(matches!(
            doc.parse(Some(FieldSpec::prime(3).unwrap())),
            Err(Error::FieldMismatch { .. })
        ));
    }
}
