//! Sparse multivariate polynomials over structured variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::linalg::{rank_rational, Echelon, RankMode, SparseRow};
use crate::scalar::Ring;
use crate::{Error, Rational, Result};

/// A polynomial variable. Indices are 1-based.
///
/// * `PZero(i, j)`: constant term `p0_{ij}` of the projector applied to
///   `x_i x_j`, with `i ≤ j`.
/// * `PVar(k, i, j)`: coefficient `p_{k,ij}` of `x_k` in that projection.
/// * `QVar(k, i, j)`: the recoordinatised `q_{k,ij}`.
/// * `XVar(i)`: the affine coordinate `x_i`.
/// * `Plucker(a, b)`: Plücker coordinate with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    PZero(u8, u8),
    PVar(u8, u8, u8),
    QVar(u8, u8, u8),
    XVar(u8),
    Plucker(u8, u8),
}

fn ordered(i: u8, j: u8) -> (u8, u8) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl VarId {
    pub fn p0(i: u8, j: u8) -> Self {
        let (i, j) = ordered(i, j);
        VarId::PZero(i, j)
    }

    pub fn p(k: u8, i: u8, j: u8) -> Self {
        let (i, j) = ordered(i, j);
        VarId::PVar(k, i, j)
    }

    pub fn q(k: u8, i: u8, j: u8) -> Self {
        let (i, j) = ordered(i, j);
        VarId::QVar(k, i, j)
    }

    pub fn x(i: u8) -> Self {
        VarId::XVar(i)
    }

    pub fn plucker(a: u8, b: u8) -> Self {
        assert!(a < b, "Plücker indices must be increasing");
        VarId::Plucker(a, b)
    }

    /// Torus weight as a vector of length `n`.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut w = vec![0i32; n];
        let mut bump = |i: u8, by: i32| w[i as usize - 1] += by;
        match *self {
            VarId::PZero(i, j) => {
                bump(i, 1);
                bump(j, 1);
            }
            VarId::PVar(k, i, j) | VarId::QVar(k, i, j) => {
                bump(i, 1);
                bump(j, 1);
                bump(k, -1);
            }
            VarId::XVar(i) => bump(i, 1),
            VarId::Plucker(a, b) => {
                bump(a, 1);
                bump(b, 1);
            }
        }
        w
    }

    /// Largest index appearing in the variable.
    pub fn max_index(&self) -> u8 {
        match *self {
            VarId::PZero(i, j) | VarId::Plucker(i, j) => i.max(j),
            VarId::PVar(k, i, j) | VarId::QVar(k, i, j) => k.max(i).max(j),
            VarId::XVar(i) => i,
        }
    }

    /// Applies a permutation of `1..=n` (given as `perm[i-1]`) to every index.
    pub fn relabel(&self, perm: &[u8]) -> VarId {
        let s = |i: u8| perm[i as usize - 1];
        match *self {
            VarId::PZero(i, j) => VarId::p0(s(i), s(j)),
            VarId::PVar(k, i, j) => VarId::p(s(k), s(i), s(j)),
            VarId::QVar(k, i, j) => VarId::q(s(k), s(i), s(j)),
            VarId::XVar(i) => VarId::x(s(i)),
            VarId::Plucker(a, b) => {
                let (a, b) = ordered(s(a), s(b));
                VarId::Plucker(a, b)
            }
        }
    }

    /// `q_{k,kk}`-type variables: all indices equal.
    pub fn is_diagonal_q(&self) -> bool {
        matches!(*self, VarId::QVar(k, i, j) if k == i && i == j)
    }

    /// Kind tag used in serialised systems.
    pub fn kind(&self) -> &'static str {
        match self {
            VarId::PZero(..) => "p0",
            VarId::PVar(..) => "p",
            VarId::QVar(..) => "q",
            VarId::XVar(..) => "x",
            VarId::Plucker(..) => "plucker",
        }
    }

    pub fn indices(&self) -> Vec<u8> {
        match *self {
            VarId::PZero(i, j) | VarId::Plucker(i, j) => vec![i, j],
            VarId::PVar(k, i, j) | VarId::QVar(k, i, j) => vec![k, i, j],
            VarId::XVar(i) => vec![i],
        }
    }

    pub fn from_parts(kind: &str, idx: &[u8]) -> Result<VarId> {
        let bad = || Error::Invalid(format!("bad variable {kind}{idx:?}"));
        if idx.contains(&0) {
            return Err(bad());
        }
        Ok(match (kind, idx) {
            ("p0", [i, j]) => VarId::p0(*i, *j),
            ("p", [k, i, j]) => VarId::p(*k, *i, *j),
            ("q", [k, i, j]) => VarId::q(*k, *i, *j),
            ("x", [i]) => VarId::x(*i),
            ("plucker", [a, b]) if a < b => VarId::plucker(*a, *b),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::PZero(i, j) => write!(f, "p0[{i},{j}]"),
            VarId::PVar(k, i, j) => write!(f, "p[{k};{i},{j}]"),
            VarId::QVar(k, i, j) => write!(f, "q[{k};{i},{j}]"),
            VarId::XVar(i) => write!(f, "x{i}"),
            VarId::Plucker(a, b) => write!(f, "P[{a},{b}]"),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A product of variables, kept sorted. Ordered by degree, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut vars: Vec<VarId>) -> Self {
        vars.sort_unstable();
        Self(vars)
    }

    pub fn var(v: VarId) -> Self {
        Self(vec![v])
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        out.push(**x);
                        a.next();
                    } else {
                        out.push(**y);
                        b.next();
                    }
                }
                (Some(_), None) => out.extend(a.by_ref().copied()),
                (None, Some(_)) => out.extend(b.by_ref().copied()),
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Total torus weight.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut w = vec![0i32; n];
        for v in &self.0 {
            for (acc, x) in w.iter_mut().zip(v.weight(n)) {
                *acc += x;
            }
        }
        w
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(VarId::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with coefficients in `C`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> Default for MPoly<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ring> MPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::default();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.clone() + c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())))
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, deg: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars().iter().copied()).collect()
    }

    /// Whether every monomial has the same torus weight.
    pub fn is_weight_homogeneous(&self, n: usize) -> bool {
        let mut ws = self.terms.keys().map(|m| m.weight(n));
        match ws.next() {
            None => true,
            Some(first) => ws.all(|w| w == first),
        }
    }

    /// Simultaneous substitution; variables without an image are kept.
    pub fn substitute(&self, images: &HashMap<VarId, MPoly<C>>) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(c.clone());
            let mut kept = Vec::new();
            for v in m.vars() {
                match images.get(v) {
                    Some(img) => {
                        acc = &acc * img;
                    }
                    None => kept.push(*v),
                }
            }
            if !kept.is_empty() {
                acc = &acc * &MPoly::term(Monomial::new(kept), C::one());
            }
            out += acc;
        }
        out
    }

    /// Value under an assignment of every variable.
    pub fn evaluate(&self, mut value: impl FnMut(VarId) -> C) -> C {
        let mut cache: HashMap<VarId, C> = HashMap::new();
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.vars() {
                let x = cache.entry(*v).or_insert_with(|| value(*v)).clone();
                t = t * x;
            }
            total = total + t;
        }
        total
    }

    /// Renames variables (the map need not be injective).
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.vars().iter().map(|v| f(*v)).collect()), c.clone())),
        )
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<C: Ring> Zero for MPoly<C> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for MPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> AddAssign<MPoly<C>> for MPoly<C> {
    fn add_assign(&mut self, rhs: MPoly<C>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<C: Ring> AddAssign<&MPoly<C>> for MPoly<C> {
    fn add_assign(&mut self, rhs: &MPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Ring> SubAssign<&MPoly<C>> for MPoly<C> {
    fn sub_assign(&mut self, rhs: &MPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<C: Ring> Add for MPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<C: Ring> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Ring> Sub for MPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Ring> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Ring> Neg for MPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Ring> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -self.clone()
    }
}

impl<C: Ring> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        let mut out = MPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> Mul for MPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring + fmt::Display> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, variables in index order within a degree
        let mut ordered: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.vars().cmp(b.0.vars())));
        for (n, (m, c)) in ordered.into_iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if c.is_one() || (-c.clone()).is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Ring + fmt::Display> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient matrix of a polynomial list: one sparse row per polynomial,
/// columns indexed by the monomials that occur (in increasing order).
pub fn coefficient_rows(polys: &[MPoly<Rational>]) -> (Vec<Monomial>, Vec<SparseRow<Rational>>) {
    let monos: BTreeSet<&Monomial> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rows = polys
        .iter()
        .map(|p| p.terms.iter().map(|(m, c)| (index[m], c.clone())).collect())
        .collect();
    (monos.into_iter().cloned().collect(), rows)
}

/// Dimension of the linear span of homogeneous polynomials of a common
/// degree, exactly or modulo `prime`.
pub fn span_rank(polys: &[MPoly<Rational>], prime: Option<u64>) -> Result<usize> {
    let degrees: BTreeSet<usize> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| if p.is_homogeneous() { p.degree() } else { None })
        .map(|d| d.ok_or(Error::Inhomogeneous))
        .collect::<Result<_>>()?;
    if degrees.len() > 1 {
        return Err(Error::Inhomogeneous);
    }
    coefficient_rank(polys, prime)
}

/// Span dimension without any homogeneity requirement.
pub fn coefficient_rank(polys: &[MPoly<Rational>], prime: Option<u64>) -> Result<usize> {
    let (monos, rows) = coefficient_rows(polys);
    let mode = match prime {
        None => RankMode::Exact,
        Some(p) => RankMode::Modular(vec![p]),
    };
    rank_rational(monos.len(), &rows, &mode)
}

/// Whether two polynomial lists span the same vector space.
pub fn same_span(a: &[MPoly<Rational>], b: &[MPoly<Rational>]) -> bool {
    let all: Vec<MPoly<Rational>> = a.iter().chain(b).cloned().collect();
    let (monos, rows) = coefficient_rows(&all);
    let (ra, rb) = rows.split_at(a.len());
    let mut ea = Echelon::new(monos.len());
    ra.iter().for_each(|r| {
        ea.insert(r.clone());
    });
    let mut eb = Echelon::new(monos.len());
    rb.iter().for_each(|r| {
        eb.insert(r.clone());
    });
    ea.rank() == eb.rank() && rb.iter().all(|r| ea.contains(r.clone()))
}
