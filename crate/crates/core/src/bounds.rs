//! Lower bounds on the Hilbert function from symmetric-power plethysm.
//!
//! The degree-`r` piece of the ideal lies in a sum of Schur modules whose
//! last `k + 1` parts add up to at least `rk + 1`. Every constituent of
//! `Sym^r` of the coordinate module that violates this must survive in the
//! quotient, so `H(r) ≥ Σ m_λ · dim S_λ` over `|λ| = r(d+1)` with
//! `λ_{d−k} + ⋯ + λ_d ≤ rk`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::partition::{lr_product, schur_dim, shapes, Partition, SchurExpansion};
use crate::symfun::SymContext;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admitted {
    pub partition: Partition,
    pub multiplicity: String,
    pub dimension: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    pub r: usize,
    pub k: usize,
    pub admitted: Vec<Admitted>,
    #[serde(serialize_with = "as_string")]
    pub bound: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Whether `λ_{d−k} + ⋯ + λ_d ≤ rk` (the last `k + 1` parts).
pub fn tail_admits(lambda: &Partition, d: usize, r: usize, k: usize) -> bool {
    lambda.tail_sum(d, k + 1) as usize <= r * k
}

/// The bound for one `(d, r, k)`.
pub fn corollary_bound(ctx: &mut SymContext, d: usize, r: usize, k: usize) -> Result<BoundReport> {
    if r < 2 || d < 3 || k >= d {
        return Err(Error::Invalid(format!(
            "bound needs r >= 2, d >= 3 and 0 <= k <= d-1 (got d={d}, r={r}, k={k})"
        )));
    }
    let sym = ctx.sym_plethysm(r, &shapes::coordinate_module(d), d)?;
    bound_from_plethysm(&sym, d, r, k)
}

fn bound_from_plethysm(sym: &SchurExpansion, d: usize, r: usize, k: usize) -> Result<BoundReport> {
    let mut admitted = Vec::new();
    let mut bound = BigInt::zero();
    for (lambda, m) in sym.iter() {
        if !tail_admits(lambda, d, r, k) {
            continue;
        }
        let dim = schur_dim(lambda, d)?;
        bound += m * &dim;
        admitted.push(Admitted {
            partition: lambda.clone(),
            multiplicity: m.to_string(),
            dimension: dim.to_string(),
        });
    }
    Ok(BoundReport {
        d,
        r,
        k,
        admitted,
        bound,
    })
}

/// Bounds for every `k = 0, …, d−1`.
pub fn bounds_all_k(ctx: &mut SymContext, d: usize, r: usize) -> Result<Vec<BoundReport>> {
    if r < 2 || d < 3 {
        return Err(Error::Invalid(format!("bound needs r >= 2 and d >= 3 (got d={d}, r={r})")));
    }
    let sym = ctx.sym_plethysm(r, &shapes::coordinate_module(d), d)?;
    (0..d).map(|k| bound_from_plethysm(&sym, d, r, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub r: usize,
    pub bounds: Vec<String>,
    pub best_k: usize,
    pub best: String,
    pub hilbert: Option<String>,
}

/// Every bound for `r = 2, …, r_max`, with the best `k` flagged and `H(r)`
/// attached when `hilbert` supplies it. Fails if a bound exceeds `H(r)`.
pub fn bound_scan(
    ctx: &mut SymContext,
    d: usize,
    r_max: usize,
    mut hilbert: impl FnMut(usize) -> Option<u128>,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for r in 2..=r_max {
        let reports = bounds_all_k(ctx, d, r)?;
        let (best_k, best) = reports
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.bound.cmp(&b.1.bound).then(b.0.cmp(&a.0)))
            .map(|(k, rep)| (k, rep.bound.clone()))
            .expect("d >= 3 gives at least one k");
        let h = hilbert(r);
        if let Some(h) = h {
            if best > BigInt::from(h) {
                return Err(Error::Violation(format!("bound {best} exceeds H({r}) = {h} at d={d}")));
            }
        }
        rows.push(ScanRow {
            r,
            bounds: reports.iter().map(|rep| rep.bound.to_string()).collect(),
            best_k,
            best: best.to_string(),
            hilbert: h.map(|h| h.to_string()),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailReport {
    pub d: usize,
    pub r: usize,
    pub constituents: SchurExpansion,
}

/// Decomposes the quadric module tensored with `r − 2` copies of the
/// coordinate module and checks `λ_{d−k} + ⋯ + λ_d ≥ rk + 1` for every
/// constituent and every `k`.
pub fn tensor_tail_check(d: usize, r: usize) -> Result<TailReport> {
    if r < 2 || d < 3 {
        return Err(Error::Invalid(format!("tail check needs r >= 2 and d >= 3 (got d={d}, r={r})")));
    }
    let coord = shapes::coordinate_module(d);
    let mut acc = SchurExpansion::single(shapes::quadric_module(d), d);
    for _ in 2..r {
        acc = acc.tensor(&coord);
    }
    for (lambda, _) in acc.iter() {
        for k in 0..d {
            if (lambda.tail_sum(d, k + 1) as usize) < r * k + 1 {
                return Err(Error::Violation(format!(
                    "{lambda} has last {} parts summing below {}",
                    k + 1,
                    r * k + 1
                )));
            }
        }
    }
    Ok(TailReport {
        d,
        r,
        constituents: acc,
    })
}

/// Multiplicities of the three cubic correction modules in the quadric
/// module tensored with the coordinate module.
pub fn cubic_correction_multiplicities(d: usize) -> Vec<(Partition, BigInt)> {
    let product = lr_product(&shapes::quadric_module(d), &shapes::coordinate_module(d), d);
    shapes::cubic_correction_modules(d)
        .into_iter()
        .map(|l| {
            let m = product.get(&l);
            (l, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::binomial;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn d3_r2_values() {
        let mut ctx = SymContext::new();
        let all = bounds_all_k(&mut ctx, 3, 2).unwrap();
        let values: Vec<BigInt> = all.iter().map(|b| b.bound.clone()).collect();
        assert_eq!(values, vec![75.into(), 60.into(), 0.into()]);
        let parts: Vec<Partition> = all[0].admitted.iter().map(|a| a.partition.clone()).collect();
        assert_eq!(parts, vec![p(&[6, 2]), p(&[4, 4])]);
        assert_eq!(corollary_bound(&mut ctx, 3, 2, 1).unwrap().bound, 60.into());
        assert!(corollary_bound(&mut ctx, 3, 2, 3).is_err());
    }

    #[test]
    fn unconstrained_sum_is_the_symmetric_power() {
        let mut ctx = SymContext::new();
        for d in 3..=4 {
            let n = schur_dim(&shapes::coordinate_module(d), d).unwrap();
            let n = u64::try_from(n).unwrap();
            for r in 2..=3 {
                let sym = ctx.sym_plethysm(r, &shapes::coordinate_module(d), d).unwrap();
                let total: BigInt = sym.iter().map(|(l, m)| m * schur_dim(l, d).unwrap()).sum();
                assert_eq!(total, binomial(n + r as u64 - 1, r as u64));
            }
        }
    }

    #[test]
    fn tail_checks() {
        let t = tensor_tail_check(3, 2).unwrap();
        assert_eq!(t.constituents, SchurExpansion::single(p(&[4, 3, 1]), 3));
        tensor_tail_check(4, 2).unwrap();
        let t = tensor_tail_check(3, 3).unwrap();
        assert!(t.constituents.len() > 1);
        tensor_tail_check(4, 3).unwrap();
    }

    #[test]
    fn cubic_corrections_at_d4() {
        let ms = cubic_correction_multiplicities(4);
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|(_, m)| *m > BigInt::from(1)));
    }

    #[test]
    fn cubic_correction_dimension_sum() {
        for d in 4..=7 {
            let total: BigInt = shapes::cubic_correction_modules(d)
                .iter()
                .map(|l| schur_dim(l, d).unwrap())
                .sum();
            assert_eq!(total, BigInt::from(d * (d * d - 4) * (3 * d * d + 1) / 12), "d={d}");
        }
    }

    #[test]
    fn scan_flags_the_best_k() {
        let mut ctx = SymContext::new();
        let rows = bound_scan(&mut ctx, 3, 3, |r| [None, None, Some(105), Some(490)].get(r).copied().flatten()).unwrap();
        assert_eq!(rows[0].best, "75");
        assert_eq!(rows[0].best_k, 0);
        assert!(bound_scan(&mut ctx, 3, 2, |_| Some(10)).is_err());
    }
}
