//! Quadric systems and their JSON file format.
//!
//! ```json
//! {"d":3,
//!  "variables":[{"kind":"q","idx":[1,1,2]}, …],
//!  "quadrics":[[{"vars":[0,4],"num":"-1","den":"2"}, …], …],
//!  "provenance":["…"]}
//! ```
//!
//! `vars` index into `variables`; a term may list one variable (a linear
//! term) or none (a constant). Coefficients are decimal strings in lowest
//! terms with a positive denominator.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, VarId};
use crate::scalar::{parse_rational, rational_parts};
use crate::{Error, RatPoly, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    pub d: usize,
    pub variables: Vec<VarId>,
    pub quadrics: Vec<RatPoly>,
    pub provenance: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct VarRecord {
    kind: String,
    idx: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    vars: Vec<usize>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    d: usize,
    variables: Vec<VarRecord>,
    quadrics: Vec<Vec<TermRecord>>,
    #[serde(default)]
    provenance: Vec<String>,
}

impl QuadricSystem {
    /// Checks that every polynomial uses only listed variables and returns
    /// the system.
    pub fn new(d: usize, variables: Vec<VarId>, quadrics: Vec<RatPoly>, provenance: Vec<String>) -> Result<Self> {
        let sys = Self {
            d,
            variables,
            quadrics,
            provenance,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<()> {
        let index = self.index();
        if index.len() != self.variables.len() {
            return Err(Error::Invalid("repeated variable".into()));
        }
        for (n, q) in self.quadrics.iter().enumerate() {
            if let Some(v) = q.variables().into_iter().find(|v| !index.contains_key(v)) {
                return Err(Error::Invalid(format!("quadric {n} uses unlisted variable {v}")));
            }
        }
        Ok(())
    }

    fn index(&self) -> HashMap<VarId, usize> {
        self.variables.iter().enumerate().map(|(i, v)| (*v, i)).collect()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Whether every quadric is homogeneous of degree exactly 2.
    pub fn is_homogeneous_quadratic(&self) -> bool {
        self.quadrics
            .iter()
            .all(|q| q.is_homogeneous() && q.degree().unwrap_or(2) == 2)
    }

    /// Length of the torus weight vectors of the variables.
    pub fn weight_rank(&self) -> usize {
        self.variables
            .iter()
            .map(|v| v.max_index() as usize)
            .max()
            .unwrap_or(0)
            .max(self.d)
    }

    pub fn to_json(&self) -> Result<String> {
        let index = self.index();
        let file = SystemFile {
            d: self.d,
            variables: self
                .variables
                .iter()
                .map(|v| VarRecord {
                    kind: v.kind().to_string(),
                    idx: v.indices(),
                })
                .collect(),
            quadrics: self
                .quadrics
                .iter()
                .map(|q| {
                    q.terms()
                        .rev()
                        .map(|(m, c)| {
                            let (num, den) = rational_parts(c);
                            TermRecord {
                                vars: m.vars().iter().map(|v| index[v]).collect(),
                                num,
                                den,
                            }
                        })
                        .collect()
                })
                .collect(),
            provenance: self.provenance.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        let variables = file
            .variables
            .iter()
            .map(|r| VarId::from_parts(&r.kind, &r.idx))
            .collect::<Result<Vec<_>>>()?;
        let mut quadrics = Vec::with_capacity(file.quadrics.len());
        for terms in &file.quadrics {
            let mut poly = RatPoly::default();
            for t in terms {
                let vars = t
                    .vars
                    .iter()
                    .map(|&i| {
                        variables
                            .get(i)
                            .copied()
                            .ok_or_else(|| Error::Invalid(format!("variable index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let c: Rational = parse_rational(&format!("{}/{}", t.num, t.den))?;
                poly.add_term(Monomial::new(vars), c);
            }
            quadrics.push(poly);
        }
        Self::new(file.d, variables, quadrics, file.provenance)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QuadricSystem {
        let a = VarId::q(1, 1, 2);
        let b = VarId::q(2, 1, 3);
        let c = VarId::p0(1, 1);
        let half = Rational::new(1.into(), 2.into());
        let f = &(&RatPoly::var(a) * &RatPoly::var(b)) - &RatPoly::var(a).scale(&half);
        let g = &(&RatPoly::var(b) * &RatPoly::var(b)) + &RatPoly::var(c);
        QuadricSystem::new(3, vec![a, b, c], vec![f, g], vec!["test".into()]).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let s = sample();
        let text = s.to_json().unwrap();
        let back = QuadricSystem::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json().unwrap(), text);
        assert!(text.contains(r#""num": "-1""#));
        assert!(text.contains(r#""den": "2""#));
    }

    #[test]
    fn rejects_unlisted_variables() {
        let s = sample();
        let err = QuadricSystem::new(3, vec![VarId::q(1, 1, 2)], s.quadrics, vec![]).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
        assert!(QuadricSystem::from_json(r#"{"d":2,"variables":[],"quadrics":[[{"vars":[0],"num":"1","den":"1"}]]}"#).is_err());
    }

    #[test]
    fn homogeneity_flag() {
        assert!(!sample().is_homogeneous_quadratic());
    }
}
