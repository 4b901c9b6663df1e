//! JSON encoding of polynomials:
//! `{"vars": [..], "weights": [..], "terms": [{"exp": [..], "coef": "n/d"}]}`.
//!
//! Terms are written in descending graded-lexicographic order, so equal
//! polynomials always serialize to identical bytes.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::multipoly::{MultiPoly, PolyRing};
use super::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyJsonError {
    #[error("{0} weights for {1} variables")]
    WeightCount(usize, usize),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("exponent vector of length {0}, expected {1}")]
    ExponentLength(usize, usize),
    #[error("bad coefficient: {0}")]
    Coefficient(String),
}

impl From<&MultiPoly> for PolyJson {
    fn from(poly: &MultiPoly) -> Self {
        let ring = poly.ring();
        PolyJson {
            vars: ring.vars().to_vec(),
            weights: ring.weights().to_vec(),
            terms: poly
                .terms()
                .map(|(exp, c)| TermJson {
                    exp: exp.to_vec(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = PolyJsonError;

    fn try_from(json: &PolyJson) -> Result<Self, PolyJsonError> {
        let n = json.vars.len();
        if json.weights.len() != n {
            return Err(PolyJsonError::WeightCount(json.weights.len(), n));
        }
        if json.weights.contains(&0) {
            return Err(PolyJsonError::ZeroWeight);
        }
        let ring = PolyRing::weighted(json.vars.clone(), json.weights.clone());
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.exp.len() != n {
                return Err(PolyJsonError::ExponentLength(t.exp.len(), n));
            }
            let c = parse_rational(&t.coef).map_err(|e| PolyJsonError::Coefficient(e.0))?;
            terms.push((t.exp.clone(), c));
        }
        Ok(MultiPoly::from_terms(&ring, terms))
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        MultiPoly::try_from(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn round_trip_is_bit_exact() {
        let ring = PolyRing::weighted(["s", "t", "u"], [1, 1, 2]);
        let p = MultiPoly::from_terms(
            &ring,
            [
                (vec![0, 0, 3], ratio(1, 1)),
                (vec![6, 0, 0], ratio(-7, 3)),
                (vec![1, 1, 2], ratio(5, 2)),
            ],
        );
        let text = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(text.contains("\"coef\":\"-7/3\""));
    }

    #[test]
    fn rejects_malformed() {
        let bad = r#"{"vars":["x"],"weights":[1],"terms":[{"exp":[1,2],"coef":"1/1"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
        let bad = r#"{"vars":["x"],"weights":[1],"terms":[{"exp":[1],"coef":"1/0"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }
}
