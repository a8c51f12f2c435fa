//! Ideal projectors onto `span{1, x_1, …, x_d}` and the commutator quadrics.
//!
//! A projector is determined by its values on the quadratic monomials,
//! `P(x_i x_j) = p0_{ij} + Σ_m p_{m,ij} x_m`. Higher monomials are reduced
//! with de Boor's rule `P(gh) = P(g P(h))`. The coefficient of `x_a` in
//! `P(x_k P(x_i x_j)) − P(x_i P(x_k x_j))` is the generator `C(a; j, (i, k))`,
//! with `a = 0` standing for the constant coefficient.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::linalg::RankMode;
use crate::poly::{coefficient_rows, Monomial, VarId};
use crate::scalar::Ring;
use crate::{Error, RatPoly, Rational, Result};

/// Coefficient types a projector table may hold.
pub trait Coefficient: Ring + Send + Sync {
    fn from_rational(q: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Coefficient for RatPoly {
    fn from_rational(q: &Rational) -> Self {
        RatPoly::constant(q.clone())
    }
}

/// `c_0 + Σ_m c_m x_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm<C> {
    pub constant: C,
    pub linear: Vec<C>,
}

impl<C: Ring> AffineForm<C> {
    pub fn zero(d: usize) -> Self {
        Self {
            constant: C::zero(),
            linear: vec![C::zero(); d],
        }
    }

    /// The coordinate `x_i` (1-based).
    pub fn coordinate(i: usize, d: usize) -> Self {
        let mut f = Self::zero(d);
        f.linear[i - 1] = C::one();
        f
    }

    pub fn d(&self) -> usize {
        self.linear.len()
    }

    /// Coefficient of `x_a`, with `a = 0` the constant term.
    pub fn coefficient(&self, a: usize) -> &C {
        if a == 0 {
            &self.constant
        } else {
            &self.linear[a - 1]
        }
    }

    pub fn add_scaled(&mut self, other: &AffineForm<C>, k: &C) {
        self.constant = self.constant.clone() + other.constant.clone() * k.clone();
        for (a, b) in self.linear.iter_mut().zip(&other.linear) {
            *a = a.clone() + b.clone() * k.clone();
        }
    }

    pub fn sub(&self, other: &AffineForm<C>) -> AffineForm<C> {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(Zero::is_zero)
    }
}

impl AffineForm<Rational> {
    /// The form as a polynomial in the `x` variables.
    pub fn to_poly(&self) -> RatPoly {
        let mut p = RatPoly::constant(self.constant.clone());
        for (m, c) in self.linear.iter().enumerate() {
            p.add_term(Monomial::var(VarId::x(m as u8 + 1)), c.clone());
        }
        p
    }

    pub fn eval_at(&self, point: &[Rational]) -> Rational {
        self.linear
            .iter()
            .zip(point)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }
}

/// Table of `P(x_i x_j)` for `i ≤ j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorSpec<C> {
    d: usize,
    table: BTreeMap<(u8, u8), AffineForm<C>>,
}

fn pair(i: usize, j: usize) -> (u8, u8) {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    (i as u8, j as u8)
}

impl<C: Coefficient> ProjectorSpec<C> {
    pub fn from_table(d: usize, table: BTreeMap<(u8, u8), AffineForm<C>>) -> Result<Self> {
        for i in 1..=d {
            for j in i..=d {
                match table.get(&pair(i, j)) {
                    Some(f) if f.d() == d => {}
                    _ => return Err(Error::Invalid(format!("projector table lacks a valid entry for ({i},{j})"))),
                }
            }
        }
        Ok(Self { d, table })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `P(x_i x_j)`.
    pub fn entry(&self, i: usize, j: usize) -> &AffineForm<C> {
        &self.table[&pair(i, j)]
    }

    /// `P(x_k · L)` for an affine form `L`.
    pub fn times_coordinate(&self, k: usize, form: &AffineForm<C>) -> AffineForm<C> {
        let mut out = AffineForm::zero(self.d);
        out.linear[k - 1] = form.constant.clone();
        for (m, c) in form.linear.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(self.entry(k, m + 1), c);
            }
        }
        out
    }

    /// `P(x_{v_1} P(x_{v_2} ⋯ P(x_{v_{r−1}} x_{v_r})))` for 1-based indices.
    pub fn apply_monomial(&self, vars: &[usize]) -> AffineForm<C> {
        let Some((&last, rest)) = vars.split_last() else {
            let mut one = AffineForm::zero(self.d);
            one.constant = C::one();
            return one;
        };
        let mut acc = AffineForm::coordinate(last, self.d);
        for &k in rest.iter().rev() {
            acc = self.times_coordinate(k, &acc);
        }
        acc
    }

    /// Value of `P` on a polynomial in the `x` variables.
    pub fn apply(&self, f: &RatPoly) -> Result<AffineForm<C>> {
        let mut out = AffineForm::zero(self.d);
        let mut cache: HashMap<Vec<usize>, AffineForm<C>> = HashMap::new();
        for (m, c) in f.terms() {
            let mut idx = Vec::with_capacity(m.degree());
            for v in m.vars() {
                match *v {
                    VarId::XVar(i) if (1..=self.d).contains(&(i as usize)) => idx.push(i as usize),
                    _ => return Err(Error::Invalid(format!("{v} is not a coordinate of {}-space", self.d))),
                }
            }
            let image = cache.entry(idx.clone()).or_insert_with(|| self.apply_monomial(&idx));
            out.add_scaled(image, &C::from_rational(c));
        }
        Ok(out)
    }

    /// `P(x_k P(x_i x_j)) − P(x_i P(x_k x_j))`.
    pub fn commutator(&self, j: usize, i: usize, k: usize) -> AffineForm<C> {
        let left = self.times_coordinate(k, self.entry(i, j));
        let right = self.times_coordinate(i, self.entry(k, j));
        left.sub(&right)
    }
}

impl ProjectorSpec<RatPoly> {
    /// The generic projector: `P(x_i x_j) = p0_{ij} + Σ_m p_{m,ij} x_m`.
    pub fn symbolic(d: usize) -> Self {
        let mut table = BTreeMap::new();
        for i in 1..=d {
            for j in i..=d {
                let (a, b) = pair(i, j);
                table.insert(
                    (a, b),
                    AffineForm {
                        constant: RatPoly::var(VarId::p0(a, b)),
                        linear: (1..=d).map(|m| RatPoly::var(VarId::p(m as u8, a, b))).collect(),
                    },
                );
            }
        }
        Self { d, table }
    }
}

impl ProjectorSpec<Rational> {
    /// The projector killing every quadratic monomial: the square of the
    /// maximal ideal at the origin.
    pub fn zero(d: usize) -> Self {
        let mut table = BTreeMap::new();
        for i in 1..=d {
            for j in i..=d {
                table.insert(pair(i, j), AffineForm::zero(d));
            }
        }
        Self { d, table }
    }

    /// Interpolation projector of `d + 1` points: `P(f)` is the affine form
    /// agreeing with `f` at every point.
    pub fn from_points(points: &[Vec<Rational>]) -> Result<Self> {
        let d = points.len().checked_sub(1).ok_or(Error::DegeneratePoints)?;
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::Invalid(format!("expected {} points in {d}-space", d + 1)));
        }
        let matrix: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| std::iter::once(Rational::one()).chain(p.iter().cloned()).collect())
            .collect();
        let inverse = invert(matrix).ok_or(Error::DegeneratePoints)?;
        let mut table = BTreeMap::new();
        for i in 1..=d {
            for j in i..=d {
                let values: Vec<Rational> = points.iter().map(|p| &p[i - 1] * &p[j - 1]).collect();
                let coeffs: Vec<Rational> = inverse
                    .iter()
                    .map(|row| row.iter().zip(&values).map(|(a, b)| a * b).sum())
                    .collect();
                table.insert(
                    pair(i, j),
                    AffineForm {
                        constant: coeffs[0].clone(),
                        linear: coeffs[1..].to_vec(),
                    },
                );
            }
        }
        Ok(Self { d, table })
    }

    /// Interpolation projector of `d + 1` random points with small integer
    /// coordinates, resampled until non-degenerate.
    pub fn random_points<R: Rng>(rng: &mut R, d: usize) -> (Vec<Vec<Rational>>, Self) {
        loop {
            let points: Vec<Vec<Rational>> = (0..=d)
                .map(|_| (0..d).map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into())).collect())
                .collect();
            if let Ok(spec) = Self::from_points(&points) {
                return (points, spec);
            }
        }
    }

    /// Table value of a `p0` or `p` variable.
    pub fn value(&self, v: VarId) -> Option<Rational> {
        match v {
            VarId::PZero(i, j) => Some(self.table.get(&(i, j))?.constant.clone()),
            VarId::PVar(k, i, j) => Some(self.table.get(&(i, j))?.linear.get(k as usize - 1)?.clone()),
            _ => None,
        }
    }

    /// Evaluates a polynomial in the `p0`/`p` variables at this table.
    pub fn evaluate(&self, f: &RatPoly) -> Result<Rational> {
        if let Some(v) = f.variables().into_iter().find(|v| self.value(*v).is_none()) {
            return Err(Error::Invalid(format!("{v} has no value in a {}-dimensional table", self.d)));
        }
        Ok(f.evaluate(|v| self.value(v).expect("checked above")))
    }
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = m[col][col].clone();
        for c in 0..n {
            m[col][c] /= &scale;
            inv[col][c] /= &scale;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let (a, b) = (m[col][c].clone(), inv[col][c].clone());
                    m[r][c] -= &f * a;
                    inv[r][c] -= &f * b;
                }
            }
        }
    }
    Some(inv)
}

/// The generator `C(a; j, (i, k))` with `i < k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CGenerator {
    pub a: u8,
    pub j: u8,
    pub i: u8,
    pub k: u8,
    pub poly: RatPoly,
}

impl CGenerator {
    pub fn label(&self) -> String {
        format!("C({};{},({},{}))", self.a, self.j, self.i, self.k)
    }
}

/// All generators `C(a; j, (i, k))` with `0 ≤ a ≤ d`, `i < k`, ordered by
/// `(a, j, i, k)`.
pub fn generate_c(d: usize) -> Result<Vec<CGenerator>> {
    if d < 3 {
        return Err(Error::Invalid(format!("generators need d >= 3, got {d}")));
    }
    let spec = ProjectorSpec::<RatPoly>::symbolic(d);
    let triples: Vec<(usize, usize, usize)> = (1..=d)
        .flat_map(|j| (1..=d).flat_map(move |i| (i + 1..=d).map(move |k| (j, i, k))))
        .collect();
    let mut out: Vec<CGenerator> = triples
        .par_iter()
        .flat_map_iter(|&(j, i, k)| {
            let form = spec.commutator(j, i, k);
            (0..=d)
                .map(|a| CGenerator {
                    a: a as u8,
                    j: j as u8,
                    i: i as u8,
                    k: k as u8,
                    poly: form.coefficient(a).clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by_key(|g| (g.a, g.j, g.i, g.k));
    Ok(out)
}

/// Generators indexed by `(a, j, i, k)` with sign-aware lookup.
pub struct GeneratorTable {
    d: usize,
    gens: Vec<CGenerator>,
    index: HashMap<(u8, u8, u8, u8), usize>,
}

impl GeneratorTable {
    pub fn new(d: usize) -> Result<Self> {
        let gens = generate_c(d)?;
        let index = gens
            .iter()
            .enumerate()
            .map(|(n, g)| ((g.a, g.j, g.i, g.k), n))
            .collect();
        Ok(Self { d, gens, index })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn all(&self) -> &[CGenerator] {
        &self.gens
    }

    /// Generators with `a ≥ 1`.
    pub fn canonical(&self) -> impl Iterator<Item = &CGenerator> {
        self.gens.iter().filter(|g| g.a >= 1)
    }

    /// `C(a; j, (i, k))` for any `i, k`; zero when `i = k`.
    pub fn get(&self, a: usize, j: usize, i: usize, k: usize) -> RatPoly {
        match i.cmp(&k) {
            std::cmp::Ordering::Equal => RatPoly::zero(),
            std::cmp::Ordering::Less => self.gens[self.index[&(a as u8, j as u8, i as u8, k as u8)]].poly.clone(),
            std::cmp::Ordering::Greater => -self.get(a, j, k, i),
        }
    }
}

/// Identities checked by [`verify_relations`] or [`verify_c_zero`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: Vec<String>,
}

impl IdentityReport {
    pub fn len(&self) -> usize {
        self.checked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checked.is_empty()
    }
}

fn require_zero(label: String, residual: &RatPoly, report: &mut IdentityReport) -> Result<()> {
    if !residual.is_zero() {
        return Err(Error::NonzeroResidual {
            label,
            terms: residual.len(),
        });
    }
    report.checked.push(label);
    Ok(())
}

/// The two linear relation families among the generators with `a ≥ 1`:
/// `Σ_j C(j; j, (i, k)) = 0` for `i < k`, and the cyclic sum
/// `C(a; j, (i, k)) + C(a; k, (j, i)) + C(a; i, (k, j)) = 0` for `j < i < k`.
pub fn verify_relations(table: &GeneratorTable) -> Result<(IdentityReport, IdentityReport)> {
    let d = table.d();
    let mut trace = IdentityReport::default();
    for i in 1..=d {
        for k in i + 1..=d {
            let mut sum = RatPoly::zero();
            for j in 1..=d {
                sum += table.get(j, j, i, k);
            }
            require_zero(format!("sum_j C(j;j,({i},{k}))"), &sum, &mut trace)?;
        }
    }
    let mut cyclic = IdentityReport::default();
    for a in 1..=d {
        for j in 1..=d {
            for i in j + 1..=d {
                for k in i + 1..=d {
                    let sum = table.get(a, j, i, k) + table.get(a, k, j, i) + table.get(a, i, k, j);
                    require_zero(format!("C({a};{j},({i},{k})) cyclic"), &sum, &mut cyclic)?;
                }
            }
        }
    }
    Ok((trace, cyclic))
}

/// The combination of generators with `a ≥ 1` that reproduces `C(0; j, (i, k))`
/// for an auxiliary index `u`.
pub fn c_zero_combination(table: &GeneratorTable, j: usize, i: usize, k: usize, u: usize) -> RatPoly {
    let d = table.d();
    let p = |a: usize, s: usize, t: usize| RatPoly::var(VarId::p(a as u8, s as u8, t as u8));
    let mut rhs = RatPoly::zero();
    for t in 1..=d {
        rhs -= &(&p(u, t, u) * &table.get(t, j, i, k));
        rhs += &p(t, k, u) * &table.get(u, i, j, t);
        rhs -= &(&p(t, i, u) * &table.get(u, k, j, t));
    }
    for m in 1..=d {
        rhs += &p(u, j, m) * &table.get(m, u, k, i);
        rhs += &p(m, i, j) * &table.get(u, k, m, u);
        rhs -= &(&p(m, k, j) * &table.get(u, i, m, u));
    }
    rhs
}

/// Expresses every `C(0; j, (i, k))` through generators with `a ≥ 1`, for the
/// given `u` or for every `u`. When `u = j` the combination equals twice the
/// constant-coefficient generator, and the check is made in that form.
pub fn verify_c_zero(table: &GeneratorTable, u: Option<usize>) -> Result<IdentityReport> {
    let d = table.d();
    let us: Vec<usize> = match u {
        Some(u) if (1..=d).contains(&u) => vec![u],
        Some(u) => return Err(Error::Invalid(format!("u = {u} is outside 1..={d}"))),
        None => (1..=d).collect(),
    };
    let mut report = IdentityReport::default();
    for &u in &us {
        for j in 1..=d {
            for i in 1..=d {
                for k in i + 1..=d {
                    let rhs = c_zero_combination(table, j, i, k, u);
                    let factor = Rational::from_integer(if u == j { 2 } else { 1 }.into());
                    let residual = &table.get(0, j, i, k).scale(&factor) - &rhs;
                    require_zero(format!("C(0;{j},({i},{k})) u={u}"), &residual, &mut report)?;
                }
            }
        }
    }
    Ok(report)
}

/// Span dimension of the generators with `a ≥ 1`, with the `p0` terms as
/// extra coordinates next to the quadratic monomials.
pub fn generator_span_rank(table: &GeneratorTable, mode: &RankMode) -> Result<usize> {
    let polys: Vec<RatPoly> = table.canonical().map(|g| g.poly.clone()).collect();
    let (monos, rows) = coefficient_rows(&polys);
    crate::linalg::rank_rational(monos.len(), &rows, mode)
}

/// Expected value of [`generator_span_rank`]: `d²(d²−4)/3 + C(d+1, 2)`.
pub fn expected_generator_rank(d: usize) -> usize {
    d * d * (d * d - 4) / 3 + d * (d + 1) / 2
}
