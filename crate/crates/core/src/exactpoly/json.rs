//! Canonical JSON forms: decimal-string coefficients, terms sorted by
//! exponent vector.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{MultiPoly, UniPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniPolyJson {
    pub var: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::InvalidArgument(format!("not a decimal integer: {s:?}")))
}

impl UniPolyJson {
    pub fn new(p: &UniPoly, var: &str) -> Self {
        UniPolyJson {
            var: var.to_string(),
            coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<UniPoly> {
        Ok(UniPoly::from_coeffs(
            self.coeffs.iter().map(|c| parse_int(c)).collect::<Result<_>>()?,
        ))
    }
}

impl MultiPolyJson {
    pub fn new(p: &MultiPoly) -> Self {
        MultiPolyJson {
            vars: p.alphabet().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson { exp: e.clone(), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let alphabet: Arc<[String]> = self.vars.clone().into();
        MultiPoly::from_terms(
            alphabet,
            self.terms
                .iter()
                .map(|t| Ok((t.exp.clone(), parse_int(&t.coeff)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl UniPoly {
    pub fn to_json(&self, var: &str) -> String {
        serde_json::to_string(&UniPolyJson::new(self, var)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<(UniPoly, String)> {
        let j: UniPolyJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok((j.to_poly()?, j.var))
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MultiPolyJson::new(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<MultiPoly> {
        let j: MultiPolyJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        j.to_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipoly_form() {
        let p = UniPoly::from_i64s(&[1, -408, 912]);
        let s = p.to_json("x");
        assert_eq!(s, r#"{"var":"x","coeffs":["1","-408","912"]}"#);
        assert_eq!(UniPoly::from_json(&s).unwrap(), (p, "x".to_string()));
        assert!(UniPoly::from_json(r#"{"var":"x","coeffs":["1.5"]}"#).is_err());
    }

    #[test]
    fn multipoly_form_sorted() {
        let alphabet = ["p", "q"];
        let p = MultiPoly::var(&alphabet, "p").unwrap();
        let q = MultiPoly::var(&alphabet, "q").unwrap();
        let f = p.add(&q).unwrap().add(&MultiPoly::one(&alphabet)).unwrap();
        let s = f.to_json();
        assert_eq!(
            s,
            r#"{"vars":["p","q"],"terms":[{"exp":[0,0],"coeff":"1"},{"exp":[0,1],"coeff":"1"},{"exp":[1,0],"coeff":"1"}]}"#
        );
        assert_eq!(MultiPoly::from_json(&s).unwrap(), f);
    }
}
