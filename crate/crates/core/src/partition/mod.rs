//! Integer partitions and the combinatorics of `GL(d)` Schur modules.

mod expansion;
mod lr;
pub mod shapes;
mod tableau;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Rational, Result};

pub use expansion::SchurExpansion;
pub use lr::{lr_coefficient, lr_product};
pub use tableau::{for_each_ssyt, is_lattice_word, ssyt_count, Tableau, SSYT_BUDGET};

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are stripped, so `(3,1,0)` and `(3,1)` compare equal. The
/// ambient rank `d` is a parameter of the operations, not of the value. The
/// derived order is lexicographic, which for partitions of equal weight
/// refines dominance.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Sorts an exponent vector (any order) into a partition.
    pub fn from_unsorted(values: &[u32]) -> Self {
        let mut parts: Vec<u32> = values.iter().copied().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `d`.
    pub fn padded(&self, d: usize) -> Result<Vec<u32>> {
        self.check_fits(d)?;
        let mut v = self.parts.clone();
        v.resize(d, 0);
        Ok(v)
    }

    pub fn check_fits(&self, d: usize) -> Result<()> {
        if self.len() > d {
            return Err(Error::TooManyParts {
                partition: self.to_string(),
                d,
            });
        }
        Ok(())
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Adds `k` columns of height `d`: the twist by `det^k` for `GL(d)`.
    pub fn add_columns(&self, k: u32, d: usize) -> Result<Partition> {
        let mut v = self.padded(d)?;
        v.iter_mut().for_each(|p| *p += k);
        Partition::new(v)
    }

    /// Multiplies every part by `k`.
    pub fn scale(&self, k: u32) -> Partition {
        Partition::new(self.parts.iter().map(|p| p * k).collect::<Vec<_>>()).expect("still decreasing")
    }

    /// Sum of the last `count` of the `d` padded parts.
    pub fn tail_sum(&self, d: usize, count: usize) -> u32 {
        (d.saturating_sub(count)..d).map(|i| self.part(i)).sum()
    }

    /// Comma-separated parts padded to `d`, e.g. `"3,1,0"`.
    pub fn key(&self, d: usize) -> String {
        let mut v = self.parts.clone();
        if v.len() < d {
            v.resize(d, 0);
        }
        v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn from_key(key: &str) -> Result<Partition> {
        if key.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = key
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("bad partition key {key:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key(0))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl TryFrom<&[u32]> for Partition {
    type Error = Error;
    fn try_from(v: &[u32]) -> Result<Self> {
        Partition::new(v.to_vec())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` with at most `max_parts` parts (and parts at most
/// `max_part`, if given), in decreasing lexicographic order.
pub fn partitions_of(n: u32, max_parts: usize, max_part: Option<u32>) -> Vec<Partition> {
    fn go(rem: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        // largest first gives decreasing lexicographic order
        let hi = cap.min(rem);
        for p in (1..=hi).rev() {
            if (p as u64) * (slots as u64) < rem as u64 {
                break;
            }
            cur.push(p);
            go(rem - p, slots - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_parts, max_part.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

/// Dimension of the Schur module `S_λ` of `GL(d)`, by the product formula
/// `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
pub fn schur_dim(lambda: &Partition, d: usize) -> Result<BigInt> {
    let mu = lambda.padded(d)?;
    let mut acc = Rational::one();
    for i in 0..d {
        for j in i + 1..d {
            let num = mu[i] as i64 - mu[j] as i64 + (j - i) as i64;
            acc *= Rational::new(num.into(), ((j - i) as i64).into());
        }
    }
    assert!(acc.is_integer(), "Weyl product for {lambda} at d={d} is not an integer");
    Ok(acc.to_integer())
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trailing_zeros_are_ignored() {
        assert_eq!(p(&[3, 1, 0]), p(&[3, 1]));
        assert_eq!(p(&[3, 1, 0]).len(), 2);
        assert_eq!(p(&[3, 1]).padded(4).unwrap(), vec![3, 1, 0, 0]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(p(&[1, 1, 1]).padded(2).is_err());
    }

    #[test]
    fn small_partition_lists() {
        assert_eq!(partitions_of(4, 2, None), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(0, 3, None), vec![Partition::empty()]);
        assert_eq!(partitions_of(5, 0, None), vec![]);
        assert_eq!(partitions_of(6, 3, Some(2)), vec![p(&[2, 2, 2])]);
    }

    #[test]
    fn partitions_of_eight_into_three_parts() {
        // brute force: decreasing triples summing to 8
        let mut brute = 0;
        for a in 0..=8u32 {
            for b in 0..=a {
                for c in 0..=b {
                    if a + b + c == 8 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 10);
        let list = partitions_of(8, 3, None);
        assert_eq!(list.len(), brute);
        assert!(list.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 3).unwrap(), 1.into());
        assert_eq!(schur_dim(&p(&[3, 1, 0]), 3).unwrap(), 15.into());
        assert_eq!(schur_dim(&p(&[4, 3, 2, 1]), 4).unwrap(), 64.into());
        assert_eq!(schur_dim(&p(&[2]), 5).unwrap(), 15.into());
        assert!(schur_dim(&p(&[1, 1, 1, 1]), 3).is_err());
    }

    #[test]
    fn conjugate_and_twist() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 1]).add_columns(1, 3).unwrap(), p(&[4, 2, 1]));
        assert_eq!(p(&[4, 3, 1]).tail_sum(3, 2), 4);
    }

    #[test]
    fn keys_round_trip() {
        let l = p(&[6, 2, 2]);
        assert_eq!(l.key(4), "6,2,2,0");
        assert_eq!(Partition::from_key("6,2,2,0").unwrap(), l);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[6,2,2]");
        let back: Partition = serde_json::from_str("[6,2,2,0]").unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 2), 120.into());
        assert_eq!(binomial(38, 3), 8436.into());
        assert_eq!(binomial(3, 5), 0.into());
    }
}
