//! Hilbert functions of quotients by homogeneous quadrics.
//!
//! The degree-`r` piece of the ideal is spanned by the products `g·m` of a
//! generator `g` with a monomial `m` of degree `r − 2`. When every generator
//! is homogeneous for the torus weights of the variables, the matrix of
//! these products splits into blocks of constant weight, and ranks are taken
//! block by block.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{agree, rank_exact, rank_mod_p, reduce_rows_mod, RankMode, SparseRow};
use crate::partition::binomial;
use crate::poly::{Monomial, VarId};
use crate::scalar::{random_primes, PrimeField};
use crate::{Error, QuadricSystem, RatPoly, Rational, Result};

/// Default refusal threshold on the number of columns of a graded piece.
pub const COLUMN_BUDGET: u128 = 200_000;

#[derive(Clone, Debug)]
pub struct HilbertOptions {
    pub mode: RankMode,
    pub force: bool,
    pub column_budget: u128,
}

impl HilbertOptions {
    pub fn exact() -> Self {
        Self {
            mode: RankMode::Exact,
            force: false,
            column_budget: COLUMN_BUDGET,
        }
    }

    /// Two random primes in `(2^30, 2^31)` drawn from a seeded generator.
    pub fn modular(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self {
            mode: RankMode::Modular(random_primes(&mut rng, 2)),
            force: false,
            column_budget: COLUMN_BUDGET,
        }
    }
}

impl Default for HilbertOptions {
    fn default() -> Self {
        Self::modular(0)
    }
}

/// Size data and rank of one graded piece of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: usize,
    pub columns: u128,
    /// `(#generators) · C(N + r − 3, r − 2)`.
    pub rows: u128,
    /// Rows left after removing zero and repeated products.
    pub distinct_rows: usize,
    pub blocks: usize,
    pub rank: usize,
}

impl GradedPiece {
    pub fn hilbert_value(&self) -> u128 {
        self.columns - self.rank as u128
    }
}

fn to_u128(n: BigInt) -> u128 {
    n.to_u128().expect("count fits in 128 bits")
}

/// `C(N + r − 1, r)`: number of monomials of degree `r` in `N` variables.
pub fn monomial_count(n: usize, r: usize) -> u128 {
    if r == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    to_u128(binomial((n + r - 1) as u64, r as u64))
}

/// All multisets of size `r` from `0..n`, as sorted index vectors.
fn multisets(n: usize, r: usize) -> Vec<Vec<u16>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v as u16);
            go(v, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

struct Prepared {
    /// Each generator as `(i, j, coefficient)` terms over variable indices.
    gens: Vec<Vec<(u16, u16, Rational)>>,
    /// Weight of each generator (all zero without a torus grading).
    gen_weights: Vec<Vec<i32>>,
    var_weights: Vec<Vec<i32>>,
}

fn prepare(system: &QuadricSystem) -> Result<Prepared> {
    if !system.is_homogeneous_quadratic() {
        return Err(Error::Inhomogeneous);
    }
    let n = system.weight_rank();
    let index: HashMap<VarId, u16> = system
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i as u16))
        .collect();
    let graded = system.quadrics.iter().all(|q| q.is_weight_homogeneous(n));
    let var_weights: Vec<Vec<i32>> = system
        .variables
        .iter()
        .map(|v| if graded { v.weight(n) } else { Vec::new() })
        .collect();
    let mut gens = Vec::new();
    let mut gen_weights = Vec::new();
    for q in system.quadrics.iter().filter(|q| !num_traits::Zero::is_zero(*q)) {
        let terms: Vec<(u16, u16, Rational)> = q
            .terms()
            .map(|(m, c)| {
                let v = m.vars();
                (index[&v[0]], index[&v[1]], c.clone())
            })
            .collect();
        let w = match q.terms().next() {
            Some((m, _)) if graded => m.weight(n),
            _ => Vec::new(),
        };
        gens.push(terms);
        gen_weights.push(w);
    }
    Ok(Prepared {
        gens,
        gen_weights,
        var_weights,
    })
}

fn add_weights(a: &[i32], b: &[i32]) -> Vec<i32> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn block_rank(rows: &[SparseRow<Rational>], ncols: usize, mode: &RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => Ok(rank_exact(ncols, rows.iter().cloned())),
        RankMode::Modular(primes) => {
            let ranks = primes
                .par_iter()
                .map(|&p| {
                    let field = PrimeField::new(p)?;
                    let reduced = reduce_rows_mod(field, rows)?;
                    Ok(rank_mod_p(field, ncols, reduced.iter().map(Vec::as_slice)))
                })
                .collect::<Result<Vec<usize>>>()?;
            agree(primes, &ranks)
        }
    }
}

/// Builds and ranks the degree-`r` piece of the ideal generated by `system`.
pub fn graded_piece(system: &QuadricSystem, r: usize, opts: &HilbertOptions) -> Result<GradedPiece> {
    let n = system.num_variables();
    let columns = monomial_count(n, r);
    if columns > opts.column_budget && !opts.force {
        return Err(Error::Budget {
            what: "building a graded piece",
            needed: columns,
            limit: opts.column_budget,
        });
    }
    let prep = prepare(system)?;
    if r < 2 {
        return Ok(GradedPiece {
            degree: r,
            columns,
            rows: 0,
            distinct_rows: 0,
            blocks: 0,
            rank: 0,
        });
    }
    if let RankMode::Modular(primes) = &opts.mode {
        if primes.is_empty() {
            return Err(Error::Invalid("modular rank needs at least one prime".into()));
        }
    }
    let multipliers = multisets(n, r - 2);
    let rows_total = prep.gens.len() as u128 * multipliers.len() as u128;

    // multiplier weights, then rows grouped by block weight
    let mult_weights: Vec<Vec<i32>> = multipliers
        .par_iter()
        .map(|m| {
            m.iter()
                .fold(Vec::new(), |acc, &v| add_weights(&acc, &prep.var_weights[v as usize]))
        })
        .collect();
    let mut blocks: BTreeMap<Vec<i32>, Vec<(usize, usize)>> = BTreeMap::new();
    for (g, gw) in prep.gen_weights.iter().enumerate() {
        for (m, mw) in mult_weights.iter().enumerate() {
            blocks.entry(add_weights(gw, mw)).or_default().push((g, m));
        }
    }
    let block_list: Vec<Vec<(usize, usize)>> = blocks.into_values().collect();

    let results: Vec<Result<(usize, usize)>> = block_list
        .par_iter()
        .map(|pairs| {
            let mut col_index: HashMap<Vec<u16>, usize> = HashMap::new();
            let mut seen: HashSet<Vec<(usize, Rational)>> = HashSet::new();
            let mut rows: Vec<SparseRow<Rational>> = Vec::new();
            for &(g, m) in pairs {
                let base = &multipliers[m];
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (a, b, c) in &prep.gens[g] {
                    let mut mono = base.clone();
                    mono.push(*a);
                    mono.push(*b);
                    mono.sort_unstable();
                    let next = col_index.len();
                    let col = *col_index.entry(mono).or_insert(next);
                    let e = row.entry(col).or_insert_with(|| Rational::from_integer(0.into()));
                    *e += c;
                }
                let row: Vec<(usize, Rational)> = row.into_iter().filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect();
                if !row.is_empty() && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
            let rank = block_rank(&rows, col_index.len(), &opts.mode)?;
            Ok((rows.len(), rank))
        })
        .collect();
    let mut distinct_rows = 0;
    let mut rank = 0;
    for r in results {
        let (rows, rk) = r?;
        distinct_rows += rows;
        rank += rk;
    }
    Ok(GradedPiece {
        degree: r,
        columns,
        rows: rows_total,
        distinct_rows,
        blocks: block_list.len(),
        rank,
    })
}

/// `H(r) = C(N + r − 1, r) − rank(degree-r piece)`.
pub fn hilbert_function(system: &QuadricSystem, r: usize, opts: &HilbertOptions) -> Result<u128> {
    Ok(graded_piece(system, r, opts)?.hilbert_value())
}

/// `H(0), …, H(r_max)`.
pub fn hilbert_table(system: &QuadricSystem, r_max: usize, opts: &HilbertOptions) -> Result<Vec<u128>> {
    (0..=r_max).map(|r| hilbert_function(system, r, opts)).collect()
}

/// The cone over the Plücker embedding of `G(2, 6)`: 15 coordinates `P[a,b]`
/// and the 15 relations `P[a,b]P[c,e] − P[a,c]P[b,e] + P[a,e]P[b,c]`.
pub fn pluecker_system() -> QuadricSystem {
    let mut variables = Vec::new();
    for a in 1..=6u8 {
        for b in a + 1..=6 {
            variables.push(VarId::plucker(a, b));
        }
    }
    let v = |a, b| RatPoly::var(VarId::plucker(a, b));
    let mut quadrics = Vec::new();
    for a in 1..=6u8 {
        for b in a + 1..=6 {
            for c in b + 1..=6 {
                for e in c + 1..=6 {
                    let f = &(&(&v(a, b) * &v(c, e)) - &(&v(a, c) * &v(b, e))) + &(&v(a, e) * &v(b, c));
                    quadrics.push(f);
                }
            }
        }
    }
    QuadricSystem::new(6, variables, quadrics, vec!["Plücker relations of G(2,6)".into()])
        .expect("variables are listed")
}

/// `C(N+1, 2) − d²(d²−4)/3` with `N = d·C(d+1,2) − d`.
pub fn h2_formula(d: usize) -> u128 {
    let n = (d * d * (d + 1) / 2 - d) as u64;
    to_u128(binomial(n + 1, 2)) - (d * d * (d * d - 4) / 3) as u128
}

/// `C(N+2, 3) − N·d²(d²−4)/3 + d(d²−4)(3d²+1)/12`.
pub fn h3_formula(d: usize) -> u128 {
    let n = d * d * (d + 1) / 2 - d;
    to_u128(binomial(n as u64 + 2, 3)) - (n * d * d * (d * d - 4) / 3) as u128
        + (d * (d * d - 4) * (3 * d * d + 1) / 12) as u128
}

/// `14·C(r+8,8) − 21·C(r+7,7) + 9·C(r+6,6) − C(r+5,5)`.
pub fn d3_polynomial(r: usize) -> u128 {
    let r = r as u64;
    let v = BigInt::from(14) * binomial(r + 8, 8) - BigInt::from(21) * binomial(r + 7, 7)
        + BigInt::from(9) * binomial(r + 6, 6)
        - binomial(r + 5, 5);
    to_u128(v)
}

/// A system over plain `x` variables, for tests and small examples.
pub fn system_from_quadrics(vars: Vec<VarId>, quadrics: Vec<RatPoly>) -> Result<QuadricSystem> {
    QuadricSystem::new(vars.len(), vars, quadrics, Vec::new())
}

/// Monomials of degree `r` in the listed variables (graded-lex order).
pub fn monomial_basis(vars: &[VarId], r: usize) -> Vec<Monomial> {
    multisets(vars.len(), r)
        .into_iter()
        .map(|m| Monomial::new(m.into_iter().map(|i| vars[i as usize]).collect()))
        .collect()
}
