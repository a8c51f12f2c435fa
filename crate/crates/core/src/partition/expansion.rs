use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{lr_product, schur_dim, Partition};
use crate::Result;

/// A virtual `GL(d)`-character written in the Schur basis: partition →
/// multiplicity. Zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SchurExpansion {
    d: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(lambda: Partition, d: usize) -> Self {
        let mut e = Self::new(d);
        e.add(lambda, BigInt::from(1));
        e
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn add(&mut self, lambda: Partition, m: BigInt) {
        let entry = self.terms.entry(lambda).or_default();
        *entry += m;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn get(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing lexicographic order of the partition.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|m| !m.is_negative())
    }

    /// `Σ m_λ · dim S_λ`.
    pub fn dimension(&self) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (l, m) in &self.terms {
            total += m * schur_dim(l, self.d)?;
        }
        Ok(total)
    }

    /// Tensor product with `S_μ`, term by term through the LR rule.
    pub fn tensor(&self, mu: &Partition) -> SchurExpansion {
        let mut out = SchurExpansion::new(self.d);
        for (l, m) in &self.terms {
            for (nu, c) in lr_product(l, mu, self.d).terms {
                out.add(nu, m * c);
            }
        }
        out
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(l, m)| {
                if *m == BigInt::from(1) {
                    format!("S({})", l.key(self.d))
                } else {
                    format!("{m}·S({})", l.key(self.d))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchurExpansion[d={}]({self})", self.d)
    }
}

/// Serialised as `{"λ1,…,λd": m, …}` with keys padded to `d`; multiplicities
/// outside the `i64` range are written as decimal strings.
impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (l, m) in self.iter() {
            let key = l.key(self.d);
            match m.to_i64() {
                Some(v) => map.serialize_entry(&key, &v)?,
                None => map.serialize_entry(&key, &m.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SchurExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = SchurExpansion;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from partition keys to multiplicities")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = SchurExpansion::new(0);
                while let Some((key, value)) = access.next_entry::<String, serde_json::Value>()? {
                    let arity = key.split(',').count();
                    out.d = out.d.max(arity);
                    let lambda = Partition::from_key(&key).map_err(de::Error::custom)?;
                    let m: BigInt = match value {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| de::Error::custom("multiplicity is not an integer"))?,
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        _ => return Err(de::Error::custom("multiplicity must be an integer")),
                    };
                    out.add(lambda, m);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn json_shape() {
        let mut e = SchurExpansion::new(3);
        e.add(p(&[6, 2]), 1.into());
        e.add(p(&[4, 4]), 2.into());
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"6,2,0":1,"4,4,0":2}"#);
        let back: SchurExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut e = SchurExpansion::new(2);
        e.add(p(&[2]), 1.into());
        e.add(p(&[2]), (-1).into());
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "0");
    }
}
