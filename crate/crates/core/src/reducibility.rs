//! An explicit family of non-radical ideals of colength `d + 1` and the
//! dimension count comparing it with the locus of `d + 1` distinct points.
//!
//! Split the coordinates into `x_1..x_c` and `x_{c+1}..x_d`. A matrix `B`
//! with one row per pair `c < s ≤ t ≤ d` and one column per `u ≤ c` gives the
//! ideal spanned by `x_s x_t + Σ_u B[(s,t),u] x_u`, every `x_i x_j` with
//! `min(i,j) ≤ c`, and every cubic monomial. Each such ideal contains the
//! cube of the maximal ideal at the origin, so all computations happen in
//! the polynomials of degree at most 3.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::Echelon;
use crate::poly::{Monomial, VarId};
use crate::projector::{AffineForm, ProjectorSpec};
use crate::scalar::{parse_rational, rational_parts};
use crate::{Error, NumericProjector, RatPoly, Rational, Result};

/// Parameters `(d, c, B)` of one member of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    d: usize,
    c: usize,
    b: Vec<Vec<Rational>>,
}

/// Row labels of `B`: pairs `(s, t)` with `c < s ≤ t ≤ d`, lexicographic.
pub fn quadratic_pairs(d: usize, c: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in c + 1..=d {
        for t in s..=d {
            out.push((s, t));
        }
    }
    out
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

impl FamilySpec {
    pub fn new(d: usize, c: usize, b: Vec<Vec<Rational>>) -> Result<Self> {
        if c == 0 || c >= d {
            return Err(Error::Invalid(format!("need 1 <= c < d, got c={c}, d={d}")));
        }
        let rows = quadratic_pairs(d, c).len();
        if b.len() != rows || b.iter().any(|r| r.len() != c) {
            return Err(Error::Invalid(format!("B must be {rows}x{c}")));
        }
        Ok(Self { d, c, b })
    }

    pub fn zero(d: usize, c: usize) -> Result<Self> {
        let rows = quadratic_pairs(d, c.min(d)).len();
        Self::new(d, c, vec![vec![Rational::zero(); c]; rows])
    }

    pub fn random<R: Rng>(rng: &mut R, d: usize, c: usize) -> Result<Self> {
        let rows = quadratic_pairs(d, c.min(d)).len();
        let b = (0..rows).map(|_| (0..c).map(|_| small_rational(rng)).collect()).collect();
        Self::new(d, c, b)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn b(&self) -> &[Vec<Rational>] {
        &self.b
    }

    /// Copy with one entry of `B` replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: Rational) -> Self {
        let mut out = self.clone();
        out.b[row][col] = value;
        out
    }

    /// The projector of the ideal: `P(x_s x_t) = −Σ_u B[(s,t),u] x_u` for
    /// `s, t > c`, and `P(x_i x_j) = 0` otherwise.
    pub fn projector(&self) -> NumericProjector {
        let rows: HashMap<(usize, usize), usize> = quadratic_pairs(self.d, self.c)
            .into_iter()
            .enumerate()
            .map(|(n, p)| (p, n))
            .collect();
        let mut table = std::collections::BTreeMap::new();
        for i in 1..=self.d {
            for j in i..=self.d {
                let mut f = AffineForm::zero(self.d);
                if let Some(&row) = rows.get(&(i, j)) {
                    for u in 0..self.c {
                        f.linear[u] = -self.b[row][u].clone();
                    }
                }
                table.insert((i as u8, j as u8), f);
            }
        }
        ProjectorSpec::from_table(self.d, table).expect("complete table")
    }

    pub fn to_json(&self) -> Result<String> {
        let file = FamilyFile {
            d: self.d,
            c: self.c,
            b: self
                .b
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|q| {
                            let (n, d) = rational_parts(q);
                            if d == "1" {
                                n
                            } else {
                                format!("{n}/{d}")
                            }
                        })
                        .collect()
                })
                .collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(text)?;
        let b = file
            .b
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.d, file.c, b)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    d: usize,
    c: usize,
    b: Vec<Vec<String>>,
}

fn x(i: usize) -> VarId {
    VarId::x(i as u8)
}

/// A subspace of the polynomials of degree at most 3 in `x_1..x_d`.
///
/// Columns are ordered cubic monomials first, then quadratic, linear and the
/// constant, so normal forms prefer low-degree representatives.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    d: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Echelon<Rational>,
}

impl TruncatedIdeal {
    pub fn empty(d: usize) -> Self {
        let mut monomials = Vec::new();
        for deg in (0..=3).rev() {
            let mut layer = Vec::new();
            fn go(start: usize, d: usize, left: usize, cur: &mut Vec<VarId>, out: &mut Vec<Monomial>) {
                if left == 0 {
                    out.push(Monomial::new(cur.clone()));
                    return;
                }
                for v in start..=d {
                    cur.push(x(v));
                    go(v, d, left - 1, cur, out);
                    cur.pop();
                }
            }
            go(1, d, deg, &mut Vec::new(), &mut layer);
            monomials.extend(layer);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let ncols = monomials.len();
        Self {
            d,
            monomials,
            index,
            basis: Echelon::new(ncols),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    fn row(&self, f: &RatPoly) -> Result<Vec<(usize, Rational)>> {
        f.terms()
            .map(|(m, c)| {
                self.index
                    .get(m)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::Invalid(format!("{m} is not a monomial of degree <= 3 in x_1..x_{}", self.d)))
            })
            .collect()
    }

    fn poly(&self, row: &[(usize, Rational)]) -> RatPoly {
        RatPoly::from_terms(row.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }

    pub fn insert(&mut self, f: &RatPoly) -> Result<bool> {
        let row = self.row(f)?;
        Ok(self.basis.insert(row))
    }

    pub fn contains(&self, f: &RatPoly) -> Result<bool> {
        Ok(self.basis.contains(self.row(f)?))
    }

    /// Remainder of `f` modulo the subspace.
    pub fn normal_form(&self, f: &RatPoly) -> Result<RatPoly> {
        let row = self.row(f)?;
        Ok(self.poly(&self.basis.reduce(row)))
    }

    /// `dim(P_{≤3}) − dim(I_{≤3})`.
    pub fn colength(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    /// Whether `1, x_1, …, x_d` are independent modulo the subspace and
    /// complete it.
    pub fn has_standard_transversal(&self) -> bool {
        let mut ech = self.basis.clone();
        let mut added = 0;
        let ones = std::iter::once(RatPoly::one()).chain((1..=self.d).map(|i| RatPoly::var(x(i))));
        for f in ones {
            if ech.insert(self.row(&f).expect("low degree")) {
                added += 1;
            }
        }
        added == self.d + 1 && ech.rank() == self.ambient_dim()
    }

    /// Whether multiplying any element by any `x_u` stays inside, with
    /// terms of degree 4 discarded.
    pub fn is_closed_up_to_degree_3(&self) -> bool {
        let gens: Vec<RatPoly> = self.basis.pivot_rows().map(|r| self.poly(r)).collect();
        gens.iter().all(|g| {
            (1..=self.d).all(|u| {
                let prod = &RatPoly::var(x(u)) * g;
                let truncated = RatPoly::from_terms(
                    prod.terms()
                        .filter(|(m, _)| m.degree() <= 3)
                        .map(|(m, c)| (m.clone(), c.clone())),
                );
                self.contains(&truncated).expect("degree <= 3")
            })
        })
    }

    /// Degree-≤3 part of the ideal of a numeric projector:
    /// the span of `f − P(f)` for every monomial `f` of degree 2 or 3.
    pub fn from_projector(spec: &NumericProjector) -> Result<Self> {
        let mut ideal = Self::empty(spec.d());
        let monos: Vec<Monomial> = ideal.monomials.iter().filter(|m| m.degree() >= 2).cloned().collect();
        for m in monos {
            let f = RatPoly::term(m, Rational::one());
            let pf = spec.apply(&f)?.to_poly();
            ideal.insert(&(&f - &pf))?;
        }
        Ok(ideal)
    }
}

/// The degree-≤3 part of the ideal of a family member.
pub fn build_family_ideal(spec: &FamilySpec) -> Result<TruncatedIdeal> {
    let (d, c) = (spec.d, spec.c);
    let mut ideal = TruncatedIdeal::empty(d);
    let cubics: Vec<Monomial> = ideal.monomials.iter().filter(|m| m.degree() == 3).cloned().collect();
    for m in cubics {
        ideal.insert(&RatPoly::term(m, Rational::one()))?;
    }
    for i in 1..=c {
        for j in i..=d {
            ideal.insert(&(&RatPoly::var(x(i)) * &RatPoly::var(x(j))))?;
        }
    }
    for ((s, t), row) in quadratic_pairs(d, c).into_iter().zip(&spec.b) {
        let mut f = &RatPoly::var(x(s)) * &RatPoly::var(x(t));
        for (u, coeff) in row.iter().enumerate() {
            f.add_term(Monomial::var(x(u + 1)), coeff.clone());
        }
        ideal.insert(&f)?;
    }
    if !ideal.is_closed_up_to_degree_3() {
        return Err(Error::Violation("family span is not closed under multiplication".into()));
    }
    Ok(ideal)
}

/// Colength of the ideal (dimension of the quotient).
pub fn colength_check(ideal: &TruncatedIdeal) -> usize {
    ideal.colength()
}

/// Reads `B` back from the ideal: for each pair `(s, t)` the unique element
/// `x_s x_t + (linear form in x_1..x_c)` of the ideal.
pub fn recover_b(ideal: &TruncatedIdeal, c: usize) -> Result<FamilySpec> {
    let d = ideal.d();
    if !ideal.has_standard_transversal() {
        return Err(Error::NotUnique("the ideal contains a nonzero affine-linear form".into()));
    }
    let mut b = Vec::new();
    for (s, t) in quadratic_pairs(d, c) {
        let nf = ideal.normal_form(&(&RatPoly::var(x(s)) * &RatPoly::var(x(t))))?;
        let mut row = vec![Rational::zero(); c];
        for (m, coeff) in nf.terms() {
            match m.vars() {
                [VarId::XVar(u)] if (*u as usize) <= c => row[*u as usize - 1] = -coeff.clone(),
                _ => {
                    return Err(Error::NotUnique(format!(
                        "x{s}*x{t} reduces to {nf}, which is not a linear form in x_1..x_{c}"
                    )))
                }
            }
        }
        b.push(row);
    }
    FamilySpec::new(d, c, b)
}

/// `c·C(d−c+1, 2) + d`: entries of `B` plus translations.
pub fn family_dimension(d: usize, c: usize) -> usize {
    let e = d - c;
    c * (e + 1) * e / 2 + d
}

/// `true` when the ideal contains `x_1²` but not `x_1`.
pub fn non_radical_check(ideal: &TruncatedIdeal) -> Result<bool> {
    let x1 = RatPoly::var(x(1));
    Ok(ideal.contains(&(&x1 * &x1))? && !ideal.contains(&x1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    /// The family is strictly larger than the radical locus.
    Strict,
    /// Equal dimensions with a non-radical generic member.
    Boundary,
    None,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Strict => "STRICT",
            Verdict::Boundary => "BOUNDARY",
            Verdict::None => "NONE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub d: usize,
    pub c: usize,
    pub family_dim: usize,
    pub radical_dim: usize,
    pub verdict: Verdict,
}

/// Best split `c` (largest on ties) and the resulting comparison with the
/// `d(d+1)`-dimensional locus of distinct points.
pub fn reducibility_witness<R: Rng>(d: usize, rng: &mut R) -> Result<Witness> {
    if d < 3 {
        return Err(Error::Invalid(format!("need d >= 3, got {d}")));
    }
    let c = (1..d)
        .max_by_key(|&c| (family_dimension(d, c), c))
        .expect("d >= 3");
    witness_at(d, c, rng)
}

/// The comparison for a fixed split. A tie is only reported as `BOUNDARY`
/// after checking that a random member is non-radical of colength `d + 1`.
pub fn witness_at<R: Rng>(d: usize, c: usize, rng: &mut R) -> Result<Witness> {
    if c == 0 || c >= d {
        return Err(Error::Invalid(format!("need 1 <= c < d, got c={c}, d={d}")));
    }
    let family_dim = family_dimension(d, c);
    let radical_dim = d * (d + 1);
    let verdict = match family_dim.cmp(&radical_dim) {
        std::cmp::Ordering::Greater => Verdict::Strict,
        std::cmp::Ordering::Equal => {
            let ideal = build_family_ideal(&FamilySpec::random(rng, d, c)?)?;
            if non_radical_check(&ideal)? && ideal.colength() == d + 1 {
                Verdict::Boundary
            } else {
                Verdict::None
            }
        }
        std::cmp::Ordering::Less => Verdict::None,
    };
    Ok(Witness {
        d,
        c,
        family_dim,
        radical_dim,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub colength: usize,
    pub support: Vec<Rational>,
}

/// Moves a family member to the point `v` and checks the result: its
/// projector satisfies every commutator identity, `(x_1 − v_1)²` lies in the
/// ideal, and the trace of multiplication by `x_i` on the quotient is
/// `(d+1)·v_i`, so the ideal is supported at `v` alone.
pub fn translation_check(spec: &FamilySpec, v: &[Rational]) -> Result<TranslationReport> {
    let d = spec.d;
    if v.len() != d {
        return Err(Error::Invalid(format!("translation needs {d} coordinates")));
    }
    let base = spec.projector();
    // P'(x_i x_j) = P(y_i y_j)(x − v) + v_i (x_j − v_j) + v_j (x_i − v_i) + v_i v_j
    let mut table = std::collections::BTreeMap::new();
    for i in 1..=d {
        for j in i..=d {
            let f = base.entry(i, j);
            let mut g = AffineForm::zero(d);
            g.constant = f.constant.clone() - f.linear.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>();
            g.linear = f.linear.clone();
            g.linear[j - 1] += &v[i - 1];
            g.linear[i - 1] += &v[j - 1];
            g.constant -= &v[i - 1] * &v[j - 1];
            table.insert((i as u8, j as u8), g);
        }
    }
    let moved = ProjectorSpec::from_table(d, table)?;
    for j in 1..=d {
        for i in 1..=d {
            for k in i + 1..=d {
                if !moved.commutator(j, i, k).is_zero() {
                    return Err(Error::Violation(format!("translated table fails C(·;{j},({i},{k}))")));
                }
            }
        }
    }
    let y1 = &RatPoly::var(x(1)) - &RatPoly::constant(v[0].clone());
    if !moved.apply(&(&y1 * &y1))?.is_zero() {
        return Err(Error::Violation("(x_1 - v_1)^2 is not in the translated ideal".into()));
    }
    let n = Rational::from_integer((d as i64 + 1).into());
    let mut support = Vec::with_capacity(d);
    for i in 1..=d {
        let trace: Rational = (1..=d).map(|m| moved.entry(i, m).linear[m - 1].clone()).sum();
        let point = trace / &n;
        if point != v[i - 1] {
            return Err(Error::Violation(format!("support coordinate {i} is {point}, expected {}", v[i - 1])));
        }
        support.push(point);
    }
    Ok(TranslationReport {
        colength: d + 1,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimension_counts() {
        assert_eq!(family_dimension(13, 5), 193);
        assert_eq!(family_dimension(12, 4), 156);
        assert_eq!(family_dimension(3, 1), 6);
        assert_eq!(quadratic_pairs(13, 5).len(), 36);
    }

    #[test]
    fn witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = reducibility_witness(13, &mut rng).unwrap();
        assert_eq!((w.c, w.family_dim, w.radical_dim, w.verdict), (5, 193, 182, Verdict::Strict));
        let w = reducibility_witness(12, &mut rng).unwrap();
        assert_eq!((w.c, w.family_dim, w.verdict), (4, 156, Verdict::Boundary));
        let w = reducibility_witness(11, &mut rng).unwrap();
        assert_eq!((w.family_dim, w.verdict), (123, Verdict::None));
        for d in 13..=20 {
            assert_eq!(reducibility_witness(d, &mut rng).unwrap().verdict, Verdict::Strict);
        }
        assert!(reducibility_witness(2, &mut rng).is_err());
        assert_eq!(witness_at(13, 4, &mut rng).unwrap().family_dim, 193);
        assert_eq!(witness_at(12, 3, &mut rng).unwrap().verdict, Verdict::None);
    }

    #[test]
    fn zero_matrix_gives_square_of_maximal_ideal() {
        let spec = FamilySpec::zero(13, 5).unwrap();
        let ideal = build_family_ideal(&spec).unwrap();
        assert_eq!(colength_check(&ideal), 14);
        assert!(ideal.has_standard_transversal());
        assert_eq!(recover_b(&ideal, 5).unwrap(), spec);
        assert!(non_radical_check(&ideal).unwrap());
    }

    #[test]
    fn random_members_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (d, c) in [(13, 5), (12, 4), (6, 2)] {
            for _ in 0..3 {
                let spec = FamilySpec::random(&mut rng, d, c).unwrap();
                let ideal = build_family_ideal(&spec).unwrap();
                assert_eq!(ideal.colength(), d + 1);
                assert_eq!(recover_b(&ideal, c).unwrap(), spec);
                assert!(non_radical_check(&ideal).unwrap());
            }
        }
    }

    #[test]
    fn perturbing_an_entry_changes_the_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = FamilySpec::random(&mut rng, 6, 2).unwrap();
        let ideal = build_family_ideal(&spec).unwrap();
        for row in 0..spec.b().len() {
            for col in 0..2 {
                let bumped = spec.with_entry(row, col, &spec.b()[row][col] + Rational::one());
                let other = build_family_ideal(&bumped).unwrap();
                assert_ne!(recover_b(&other, 2).unwrap(), recover_b(&ideal, 2).unwrap());
            }
        }
    }

    #[test]
    fn point_ideals_are_radical() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in [3, 4] {
            let (_, spec) = NumericProjector::random_points(&mut rng, d);
            let ideal = TruncatedIdeal::from_projector(&spec).unwrap();
            assert_eq!(ideal.colength(), d + 1);
            assert!(ideal.has_standard_transversal());
            assert!(!non_radical_check(&ideal).unwrap());
        }
    }

    #[test]
    fn family_projector_matches_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let spec = FamilySpec::random(&mut rng, 5, 2).unwrap();
        let from_projector = TruncatedIdeal::from_projector(&spec.projector()).unwrap();
        let direct = build_family_ideal(&spec).unwrap();
        assert_eq!(from_projector.dim(), direct.dim());
        assert_eq!(recover_b(&from_projector, 2).unwrap(), spec);
    }

    #[test]
    fn translations_move_the_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let spec = FamilySpec::random(&mut rng, 13, 5).unwrap();
        for _ in 0..3 {
            let v: Vec<Rational> = (0..13).map(|_| small_rational(&mut rng)).collect();
            let rep = translation_check(&spec, &v).unwrap();
            assert_eq!(rep.colength, 14);
            assert_eq!(rep.support, v);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let spec = FamilySpec::random(&mut rng, 5, 2).unwrap();
        let text = spec.to_json().unwrap();
        assert_eq!(FamilySpec::from_json(&text).unwrap(), spec);
        assert!(FamilySpec::new(5, 5, vec![]).is_err());
    }
}
