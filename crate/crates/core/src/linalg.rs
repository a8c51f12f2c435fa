//! Sparse row echelon forms over an exact field and modulo a prime.
//!
//! Rows are lists of `(column, value)` pairs. Pivots are kept in semi-echelon
//! form: each pivot row is normalised to a leading `1` and indexed by its
//! leading column. Reducing a row against the pivots in increasing column
//! order yields a normal form supported only on non-pivot columns.

use std::collections::BTreeMap;

use crate::scalar::{Field, PrimeField};
use crate::{Error, Rational, Result};

pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental echelon basis of a row space over a field `F`.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = &SparseRow<F>> + '_ {
        self.pivots.values()
    }

    fn reduce_map(&self, row: impl IntoIterator<Item = (usize, F)>) -> BTreeMap<usize, F> {
        let mut work: BTreeMap<usize, F> = BTreeMap::new();
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range");
            let entry = work.entry(c).or_insert_with(F::zero);
            *entry = entry.clone() + v;
        }
        work.retain(|_, v| !v.is_zero());

        let mut cursor = 0;
        while let Some((&c, factor)) = work.range(cursor..).next() {
            let factor = factor.clone();
            cursor = c + 1;
            let Some(pivot) = self.pivots.get(&c) else {
                continue;
            };
            for (pc, pv) in pivot {
                let entry = work.entry(*pc).or_insert_with(F::zero);
                *entry = entry.clone() - factor.clone() * pv.clone();
                if entry.is_zero() {
                    work.remove(pc);
                }
            }
        }
        work
    }

    /// Normal form of `row` modulo the current row space.
    pub fn reduce(&self, row: impl IntoIterator<Item = (usize, F)>) -> SparseRow<F> {
        self.reduce_map(row).into_iter().collect()
    }

    pub fn contains(&self, row: impl IntoIterator<Item = (usize, F)>) -> bool {
        self.reduce_map(row).is_empty()
    }

    /// Adds `row` to the basis; returns whether the rank grew.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, F)>) -> bool {
        let reduced = self.reduce_map(row);
        let Some((&lead, lead_val)) = reduced.iter().next() else {
            return false;
        };
        let inv = F::one() / lead_val.clone();
        let normalised = reduced
            .into_iter()
            .map(|(c, v)| (c, v * inv.clone()))
            .collect();
        self.pivots.insert(lead, normalised);
        true
    }
}

/// Rank of a row set, exactly, over a field.
pub fn rank_exact<F: Field>(ncols: usize, rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        if ech.rank() == ncols {
            break;
        }
        ech.insert(row);
    }
    ech.rank()
}

/// Rank modulo a prime. Row values must already be reduced into `0..p`;
/// columns within a row may come in any order but must not repeat.
pub fn rank_mod_p<'a>(
    field: PrimeField,
    ncols: usize,
    rows: impl IntoIterator<Item = &'a [(usize, u64)]>,
) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut acc = vec![0u64; ncols];
    let mut rank = 0;
    for row in rows {
        if rank == ncols {
            break;
        }
        if row.is_empty() {
            continue;
        }
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &(c, v) in row {
            acc[c] = v;
            lo = lo.min(c);
            hi = hi.max(c);
        }
        let mut lead = None;
        let mut c = lo;
        while c <= hi {
            let v = acc[c];
            if v != 0 {
                match &pivots[c] {
                    Some(pivot) => {
                        for &(pc, pv) in pivot {
                            acc[pc] = field.sub(acc[pc], field.mul(v, pv));
                            hi = hi.max(pc);
                        }
                    }
                    None => {
                        lead = Some(c);
                        break;
                    }
                }
            }
            c += 1;
        }
        if let Some(l) = lead {
            let inv = field.inv(acc[l]);
            let mut pivot = Vec::new();
            for cc in l..=hi {
                if acc[cc] != 0 {
                    pivot.push((cc, field.mul(acc[cc], inv)));
                }
            }
            pivots[l] = Some(pivot);
            rank += 1;
        }
        acc[lo..=hi].fill(0);
    }
    rank
}

/// How a rank is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Exact rational elimination.
    Exact,
    /// Elimination modulo each listed prime; all results must agree.
    Modular(Vec<u64>),
}

impl RankMode {
    pub fn describe(&self) -> String {
        match self {
            RankMode::Exact => "exact".to_string(),
            RankMode::Modular(ps) => format!("modular{ps:?}"),
        }
    }
}

/// Rank of rational rows under `mode`. Fails if a prime divides a
/// denominator or if primes disagree.
pub fn rank_rational(ncols: usize, rows: &[SparseRow<Rational>], mode: &RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => Ok(rank_exact(ncols, rows.iter().cloned())),
        RankMode::Modular(primes) => {
            if primes.is_empty() {
                return Err(Error::Invalid("modular rank needs at least one prime".into()));
            }
            let mut ranks = Vec::with_capacity(primes.len());
            for &p in primes {
                let field = PrimeField::new(p)?;
                let reduced = reduce_rows_mod(field, rows)?;
                ranks.push(rank_mod_p(field, ncols, reduced.iter().map(Vec::as_slice)));
            }
            agree(primes, &ranks)
        }
    }
}

pub(crate) fn reduce_rows_mod(
    field: PrimeField,
    rows: &[SparseRow<Rational>],
) -> Result<Vec<Vec<(usize, u64)>>> {
    rows.iter()
        .map(|row| {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let r = field.from_rational(v)?;
                if r != 0 {
                    out.push((*c, r));
                }
            }
            Ok(out)
        })
        .collect()
}

pub(crate) fn agree(primes: &[u64], ranks: &[usize]) -> Result<usize> {
    if ranks.windows(2).any(|w| w[0] != w[1]) {
        let detail = primes
            .iter()
            .zip(ranks)
            .map(|(p, r)| format!("p={p}: {r}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::RankMismatch(detail));
    }
    Ok(ranks[0])
}
