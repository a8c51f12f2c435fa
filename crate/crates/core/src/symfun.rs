//! Symmetric polynomials in `d` variables, stored in the monomial basis.
//!
//! A [`SymPoly`] is `Σ c_λ m_λ` where `m_λ` is the orbit sum of `x^λ` under
//! permutation of the variables. Products are evaluated by reading off the
//! coefficient of each dominant monomial `x^ν` of the result, so nothing ever
//! leaves the integers. Schur polynomials come from Kostka numbers, and a
//! symmetric polynomial is written in the Schur basis by peeling off its
//! lexicographically largest term.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::partition::{partitions_of, Partition, SchurExpansion};
use crate::{Error, Result};

/// Largest monomial support any single operation may touch.
pub const SUPPORT_BUDGET: u128 = 5_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    d: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SymPoly {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        let mut p = Self::zero(d);
        p.terms.insert(Partition::empty(), BigInt::one());
        p
    }

    /// The monomial symmetric polynomial `m_λ`.
    pub fn monomial(lambda: Partition, d: usize) -> Result<Self> {
        lambda.check_fits(d)?;
        let mut p = Self::zero(d);
        p.terms.insert(lambda, BigInt::one());
        Ok(p)
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(d);
        for (l, c) in terms {
            l.check_fits(d)?;
            p.add_term(l, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, lambda: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `m_λ`.
    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial `x^α` for an arbitrary exponent vector.
    pub fn coefficient_at(&self, exponents: &[u32]) -> BigInt {
        self.coefficient(&Partition::from_unsorted(exponents))
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.d, other.d, "ambient rank mismatch");
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> SymPoly {
        if k.is_zero() {
            return SymPoly::zero(self.d);
        }
        SymPoly {
            d: self.d,
            terms: self.terms.iter().map(|(l, c)| (l.clone(), c * k)).collect(),
        }
    }

    /// Value at `x_1 = … = x_d = 1`, i.e. the dimension of the represented
    /// character.
    pub fn evaluate_at_ones(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(l, c)| c * orbit_size(l, self.d))
            .sum()
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(l, c)| format!("{c}·m{l}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[d={}]({self})", self.d)
    }
}

/// Number of distinct rearrangements of `λ` padded to `d` entries.
pub fn orbit_size(lambda: &Partition, d: usize) -> BigInt {
    let padded = lambda.padded(d).expect("fits in d");
    let mut acc: BigInt = (1..=d as u64).product();
    let mut run = 1u64;
    for w in padded.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            acc /= (1..=run).product::<BigInt>();
            run = 1;
        }
    }
    acc / (1..=run).product::<BigInt>()
}

/// Number of partitions of `n` with at most `k` parts.
pub fn partition_count(n: u32, k: usize) -> u128 {
    // table[j][m] = partitions of m with parts at most j (conjugate count)
    let n = n as usize;
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for part in 1..=k {
        for m in part..=n {
            row[m] += row[m - part];
        }
    }
    row[n]
}

fn check_support(what: &'static str, needed: u128) -> Result<()> {
    if needed > SUPPORT_BUDGET {
        return Err(Error::Budget {
            what,
            needed,
            limit: SUPPORT_BUDGET,
        });
    }
    Ok(())
}

fn group_by_degree(p: &SymPoly) -> BTreeMap<u32, HashMap<Partition, BigInt>> {
    let mut out: BTreeMap<u32, HashMap<Partition, BigInt>> = BTreeMap::new();
    for (l, c) in &p.terms {
        out.entry(l.weight()).or_default().insert(l.clone(), c.clone());
    }
    out
}

/// Exact product of two symmetric polynomials in the same variables.
pub fn multiply(f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
    assert_eq!(f.d, g.d, "ambient rank mismatch");
    let d = f.d;
    let fd = group_by_degree(f);
    let gd = group_by_degree(g);
    let mut out = SymPoly::zero(d);
    for (&a, fa) in &fd {
        for (&b, gb) in &gd {
            check_support("multiplying symmetric polynomials", partition_count(a + b, d))?;
            for nu in partitions_of(a + b, d, None) {
                let target = nu.padded(d)?;
                let c = dominant_coefficient(&target, a, fa, gb);
                out.add_term(nu, c);
            }
        }
    }
    Ok(out)
}

/// `Σ_{α ≤ ν, |α| = a} f[α] · g[ν − α]`.
fn dominant_coefficient(
    nu: &[u32],
    a: u32,
    f: &HashMap<Partition, BigInt>,
    g: &HashMap<Partition, BigInt>,
) -> BigInt {
    let d = nu.len();
    let mut suffix = vec![0u32; d + 1];
    for i in (0..d).rev() {
        suffix[i] = suffix[i + 1] + nu[i];
    }
    let mut alpha = vec![0u32; d];
    let mut total = BigInt::zero();

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        rem: u32,
        nu: &[u32],
        suffix: &[u32],
        alpha: &mut Vec<u32>,
        f: &HashMap<Partition, BigInt>,
        g: &HashMap<Partition, BigInt>,
        total: &mut BigInt,
    ) {
        if i == nu.len() {
            let Some(fc) = f.get(&Partition::from_unsorted(alpha)) else {
                return;
            };
            let beta: Vec<u32> = nu.iter().zip(alpha.iter()).map(|(n, a)| n - a).collect();
            if let Some(gc) = g.get(&Partition::from_unsorted(&beta)) {
                *total += fc * gc;
            }
            return;
        }
        let need_later = rem.saturating_sub(suffix[i + 1]);
        for v in need_later..=nu[i].min(rem) {
            alpha[i] = v;
            go(i + 1, rem - v, nu, suffix, alpha, f, g, total);
        }
        alpha[i] = 0;
    }

    go(0, a, nu, &suffix, &mut alpha, f, g, &mut total);
    total
}

/// `f(x_1^k, …, x_d^k)`: the plethysm `p_k[f]`.
pub fn frobenius_power(f: &SymPoly, k: u32) -> SymPoly {
    assert!(k >= 1, "power must be positive");
    SymPoly {
        d: f.d,
        terms: f.terms.iter().map(|(l, c)| (l.scale(k), c.clone())).collect(),
    }
}

/// Caller-owned memo tables for Kostka numbers, Schur polynomials and the
/// symmetric powers `h_k[s_λ]`.
#[derive(Default)]
pub struct SymContext {
    kostka: HashMap<(Partition, Partition), BigInt>,
    schur: HashMap<(Partition, usize), SymPoly>,
    sym_powers: HashMap<(Partition, usize), Vec<SymPoly>>,
}

impl SymContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of semistandard tableaux of shape `lambda` and content `mu`.
    pub fn kostka(&mut self, lambda: &Partition, mu: &Partition) -> BigInt {
        if lambda.weight() != mu.weight() {
            return BigInt::zero();
        }
        if mu.is_empty() {
            return BigInt::from(lambda.is_empty() as u32);
        }
        if lambda.len() > mu.len() {
            return BigInt::zero();
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.kostka.get(&key) {
            return v.clone();
        }
        // strip the horizontal strip holding the largest letter
        let strip = mu.part(mu.len() - 1);
        let rest = Partition::new(mu.parts()[..mu.len() - 1].to_vec()).expect("prefix of a partition");
        let mut inner_shapes = Vec::new();
        let lam: Vec<u32> = lambda.parts().to_vec();
        let mut rho = vec![0u32; lam.len()];
        fn strips(i: usize, rem: u32, lam: &[u32], rho: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == lam.len() {
                if rem == 0 {
                    out.push(Partition::new(rho.clone()).expect("interlacing is decreasing"));
                }
                return;
            }
            let floor = lam.get(i + 1).copied().unwrap_or(0);
            for r in (floor..=lam[i]).rev() {
                let take = lam[i] - r;
                if take > rem {
                    break;
                }
                rho[i] = r;
                strips(i + 1, rem - take, lam, rho, out);
            }
        }
        strips(0, strip, &lam, &mut rho, &mut inner_shapes);
        let total: BigInt = inner_shapes.iter().map(|r| self.kostka(r, &rest)).sum();
        self.kostka.insert(key, total.clone());
        total
    }

    /// The Schur polynomial `s_λ(x_1, …, x_d)` in the monomial basis.
    pub fn schur_poly(&mut self, lambda: &Partition, d: usize) -> Result<SymPoly> {
        lambda.check_fits(d)?;
        let key = (lambda.clone(), d);
        if let Some(p) = self.schur.get(&key) {
            return Ok(p.clone());
        }
        check_support("expanding a Schur polynomial", partition_count(lambda.weight(), d))?;
        let mut p = SymPoly::zero(d);
        for mu in partitions_of(lambda.weight(), d, None) {
            if &mu > lambda {
                continue;
            }
            let k = self.kostka(lambda, &mu);
            p.add_term(mu, k);
        }
        self.schur.insert(key, p.clone());
        Ok(p)
    }

    /// Schur-basis expansion by repeatedly removing the lexicographically
    /// largest monomial term.
    pub fn schur_decompose(&mut self, f: &SymPoly) -> Result<SchurExpansion> {
        let mut rest = f.clone();
        let mut out = SchurExpansion::new(f.d);
        let mut steps = 0usize;
        let limit = f.terms.keys().map(|l| partition_count(l.weight(), f.d) as usize).sum::<usize>() + 1;
        while let Some((lead, c)) = rest.terms.iter().next_back().map(|(l, c)| (l.clone(), c.clone())) {
            steps += 1;
            assert!(steps <= limit, "Schur peeling did not terminate");
            let s = self.schur_poly(&lead, f.d)?;
            rest = rest.sub(&s.scale(&c));
            out.add(lead, c);
        }
        Ok(out)
    }

    /// Characters `h_0[s_λ], …, h_r[s_λ]` of the symmetric powers of `S_λ`,
    /// by the Newton recurrence `n·h_n[f] = Σ_{k=1..n} p_k[f]·h_{n−k}[f]`.
    pub fn sym_power_characters(&mut self, r: usize, lambda: &Partition, d: usize) -> Result<Vec<SymPoly>> {
        check_support(
            "forming a symmetric power",
            partition_count(lambda.weight() * r as u32, d),
        )?;
        let f = self.schur_poly(lambda, d)?;
        let key = (lambda.clone(), d);
        let mut powers = self
            .sym_powers
            .remove(&key)
            .unwrap_or_else(|| vec![SymPoly::one(d)]);
        while powers.len() <= r {
            let n = powers.len();
            let mut acc = SymPoly::zero(d);
            for k in 1..=n {
                acc = acc.add(&multiply(&frobenius_power(&f, k as u32), &powers[n - k])?);
            }
            let n_big = BigInt::from(n);
            let mut h = SymPoly::zero(d);
            for (l, c) in acc.terms {
                let (q, rem) = c.div_rem(&n_big);
                assert!(rem.is_zero(), "Newton recurrence: coefficient {c} not divisible by {n}");
                h.add_term(l, q);
            }
            powers.push(h);
        }
        let out = powers[..=r].to_vec();
        self.sym_powers.insert(key, powers);
        Ok(out)
    }

    /// Decomposition of `Sym^r(S_λ)` for `GL(d)`.
    pub fn sym_plethysm(&mut self, r: usize, lambda: &Partition, d: usize) -> Result<SchurExpansion> {
        let h = self.sym_power_characters(r, lambda, d)?.pop().expect("r + 1 entries");
        let e = self.schur_decompose(&h)?;
        if !e.is_nonnegative() {
            return Err(Error::Violation(format!(
                "negative multiplicity in Sym^{r}{lambda}: {e}"
            )));
        }
        Ok(e)
    }
}

/// The Schur polynomial `s_λ(x_1, …, x_d)`.
pub fn schur_poly(lambda: &Partition, d: usize) -> Result<SymPoly> {
    SymContext::new().schur_poly(lambda, d)
}

pub fn schur_decompose(f: &SymPoly) -> Result<SchurExpansion> {
    SymContext::new().schur_decompose(f)
}

/// Decomposition of `Sym^r(S_λ)` for `GL(d)`.
pub fn sym_plethysm(r: usize, lambda: &Partition, d: usize) -> Result<SchurExpansion> {
    SymContext::new().sym_plethysm(r, lambda, d)
}

/// Sum of the coefficients' absolute values; a cheap size measure for logs.
pub fn l1_norm(p: &SymPoly) -> BigInt {
    p.terms.values().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{lr_product, schur_dim, shapes, for_each_ssyt, SSYT_BUDGET};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
        // Heap's algorithm with sign tracking
        let mut out = Vec::new();
        let mut a: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut sign = 1;
        out.push((a.clone(), sign));
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                sign = -sign;
                out.push((a.clone(), sign));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    /// Independent route to the Schur expansion: the coefficient of `s_ν` in
    /// `f` is the coefficient of `x^{ν+δ}` in `a_δ · f`.
    fn alternant_decompose(f: &SymPoly) -> SchurExpansion {
        let d = f.d();
        let perms = permutations(d);
        let mut out = SchurExpansion::new(d);
        let degrees: std::collections::BTreeSet<u32> = f.terms().map(|(l, _)| l.weight()).collect();
        for n in degrees {
            for nu in partitions_of(n, d, None) {
                let padded = nu.padded(d).unwrap();
                let mut c = BigInt::zero();
                for (sigma, sign) in &perms {
                    let mut alpha = Vec::with_capacity(d);
                    let mut ok = true;
                    for i in 0..d {
                        let v = padded[i] as i64 + (d - 1 - i) as i64 - (d - 1 - sigma[i]) as i64;
                        if v < 0 {
                            ok = false;
                            break;
                        }
                        alpha.push(v as u32);
                    }
                    if ok {
                        c += f.coefficient_at(&alpha) * BigInt::from(*sign);
                    }
                }
                out.add(nu, c);
            }
        }
        out
    }

    /// Schur polynomial straight from tableau contents.
    fn schur_by_tableaux(lambda: &Partition, d: usize) -> SymPoly {
        let mut counts: HashMap<Partition, BigInt> = HashMap::new();
        for_each_ssyt(lambda, d, SSYT_BUDGET, |g| {
            let mut content = vec![0u32; d];
            for &v in g.iter().flatten() {
                content[(v - 1) as usize] += 1;
            }
            if content.windows(2).all(|w| w[0] >= w[1]) {
                *counts.entry(Partition::new(content).unwrap()).or_default() += 1;
            }
        })
        .unwrap();
        SymPoly::from_terms(d, counts).unwrap()
    }

    #[test]
    fn schur_polys_small() {
        assert_eq!(schur_poly(&p(&[1]), 2).unwrap(), SymPoly::monomial(p(&[1]), 2).unwrap());
        assert_eq!(schur_poly(&p(&[2, 1]), 2).unwrap(), SymPoly::monomial(p(&[2, 1]), 2).unwrap());
        let s31 = schur_poly(&p(&[3, 1]), 3).unwrap();
        assert_eq!(s31.coefficient(&p(&[3, 1])), 1.into());
        assert_eq!(s31.coefficient(&p(&[2, 2])), 1.into());
        assert_eq!(s31.coefficient(&p(&[2, 1, 1])), 2.into());
        assert_eq!(s31.len(), 3);
        assert_eq!(s31.evaluate_at_ones(), 15.into());
    }

    #[test]
    fn kostka_schur_matches_tableau_enumeration() {
        let mut ctx = SymContext::new();
        for d in 1..=4 {
            for n in 0..=7 {
                for l in partitions_of(n, d, None) {
                    assert_eq!(ctx.schur_poly(&l, d).unwrap(), schur_by_tableaux(&l, d), "{l} d={d}");
                }
            }
        }
    }

    #[test]
    fn multiply_identities() {
        let g = schur_poly(&p(&[2, 1]), 3).unwrap();
        assert_eq!(multiply(&SymPoly::one(3), &g).unwrap(), g);
        let s1 = schur_poly(&p(&[1]), 2).unwrap();
        let e = schur_decompose(&multiply(&s1, &s1).unwrap()).unwrap();
        let mut expected = SchurExpansion::new(2);
        expected.add(p(&[2]), 1.into());
        expected.add(p(&[1, 1]), 1.into());
        assert_eq!(e, expected);
    }

    #[test]
    fn product_decomposition_matches_lr_at_d4() {
        let f = schur_poly(&p(&[1, 1, 1]), 4).unwrap();
        let g = schur_poly(&p(&[2]), 4).unwrap();
        let e = schur_decompose(&multiply(&f, &g).unwrap()).unwrap();
        assert_eq!(e, lr_product(&p(&[1, 1, 1]), &p(&[2]), 4));
    }

    #[test]
    fn product_evaluates_multiplicatively() {
        let f = schur_poly(&p(&[2, 1]), 3).unwrap();
        let g = schur_poly(&p(&[1, 1]), 3).unwrap();
        let fg = multiply(&f, &g).unwrap();
        assert_eq!(fg.evaluate_at_ones(), f.evaluate_at_ones() * g.evaluate_at_ones());
    }

    #[test]
    fn frobenius_examples() {
        let m1 = SymPoly::monomial(p(&[1]), 2).unwrap();
        assert_eq!(frobenius_power(&m1, 2), SymPoly::monomial(p(&[2]), 2).unwrap());
        let m21 = SymPoly::monomial(p(&[2, 1]), 2).unwrap();
        assert_eq!(frobenius_power(&m21, 3), SymPoly::monomial(p(&[6, 3]), 2).unwrap());
        let e2 = schur_poly(&p(&[1, 1]), 3).unwrap();
        assert_eq!(frobenius_power(&e2, 2).evaluate_at_ones(), 3.into());
    }

    #[test]
    fn decomposition_round_trip_and_alternant_oracle() {
        let mut ctx = SymContext::new();
        for d in 1..=4 {
            for n in 0..=6 {
                for l in partitions_of(n, d, None) {
                    let s = ctx.schur_poly(&l, d).unwrap();
                    let e = ctx.schur_decompose(&s).unwrap();
                    assert_eq!(e, SchurExpansion::single(l.clone(), d));
                    assert_eq!(alternant_decompose(&s), e);
                }
            }
        }
        let m11 = SymPoly::monomial(p(&[1, 1]), 2).unwrap();
        assert_eq!(schur_decompose(&m11).unwrap(), SchurExpansion::single(p(&[1, 1]), 2));
    }

    #[test]
    fn oracle_equivalence_with_lr() {
        let mut ctx = SymContext::new();
        for d in 2..=5 {
            let bound = d as u32 + 2;
            for a in 0..=bound {
                for b in 0..=(bound - a) {
                    for l in partitions_of(a, d, None) {
                        for m in partitions_of(b, d, None) {
                            let prod = multiply(&ctx.schur_poly(&l, d).unwrap(), &ctx.schur_poly(&m, d).unwrap()).unwrap();
                            let e = ctx.schur_decompose(&prod).unwrap();
                            assert_eq!(e, lr_product(&l, &m, d), "{l} x {m} at d={d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sym2_of_coordinate_module() {
        for d in 3..=6 {
            let lambda = shapes::coordinate_module(d);
            let e = sym_plethysm(2, &lambda, d).unwrap();
            let expected = shapes::coordinate_sym2_summands(d);
            assert_eq!(e.len(), expected.len(), "d={d}: {e}");
            for l in expected {
                assert_eq!(e.get(&l), 1.into(), "d={d}: {l}");
            }
        }
        // the (5,3,…) summand is absent at d = 3
        let e3 = sym_plethysm(2, &p(&[3, 1, 0]), 3).unwrap();
        assert_eq!(e3.len(), 5);
        assert!(e3.iter().all(|(l, _)| l.part(0) != 5 || l.part(1) != 3));
    }

    #[test]
    fn plethysm_dimension_count() {
        let mut ctx = SymContext::new();
        for d in 3..=5 {
            let lambda = shapes::coordinate_module(d);
            let n = schur_dim(&lambda, d).unwrap();
            for r in 0..=3usize {
                let e = ctx.sym_plethysm(r, &lambda, d).unwrap();
                assert!(e.is_nonnegative());
                let n_u = u64::try_from(n.clone()).unwrap();
                assert_eq!(e.dimension().unwrap(), crate::partition::binomial(n_u + r as u64 - 1, r as u64), "d={d} r={r}");
            }
        }
    }

    #[test]
    fn first_symmetric_power_is_identity() {
        let l = p(&[2, 1]);
        assert_eq!(sym_plethysm(1, &l, 3).unwrap(), SchurExpansion::single(l, 3));
        assert_eq!(sym_plethysm(0, &p(&[2, 1]), 3).unwrap(), SchurExpansion::single(Partition::empty(), 3));
    }

    #[test]
    fn support_budget_is_enforced() {
        let err = sym_plethysm(40, &p(&[3, 1, 1, 1, 1, 1, 1, 0]), 8).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&p(&[2, 1]), 3), 6.into());
        assert_eq!(orbit_size(&p(&[1, 1]), 3), 3.into());
        assert_eq!(orbit_size(&Partition::empty(), 4), 1.into());
        assert_eq!(partition_count(8, 3), 10);
    }
}
