//! Elimination of the linear `p0` variables and the change to `q`
//! coordinates, ending in a homogeneous quadric system.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::linalg::Echelon;
use crate::poly::{coefficient_rows, Monomial, VarId};
use crate::projector::GeneratorTable;
use crate::{Error, NumericProjector, QuadricSystem, RatPoly, Rational, Result};

/// Which generator is solved for each `p0_{ij}` (`i ≤ j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// `C(i+1; j, (i, i+1))`, with `i + 1` read as `1` when `i = d`.
    Cyclic,
    /// For each `(i, j)`, a pair `(k, swapped)` selecting `C(k; j, (i, k))`,
    /// or `C(k; i, (j, k))` when `swapped`.
    Explicit(BTreeMap<(u8, u8), (u8, bool)>),
}

impl PivotRule {
    fn pivot(&self, d: usize, i: usize, j: usize) -> Result<(usize, usize, usize, usize)> {
        match self {
            PivotRule::Cyclic => {
                let k = if i == d { 1 } else { i + 1 };
                Ok((k, j, i, k))
            }
            PivotRule::Explicit(map) => {
                let &(k, swapped) = map
                    .get(&(i as u8, j as u8))
                    .ok_or(Error::MissingPivot { i: i as u8, j: j as u8 })?;
                let k = k as usize;
                if k == i || k == j || k == 0 || k > d {
                    return Err(Error::MissingPivot { i: i as u8, j: j as u8 });
                }
                Ok(if swapped { (k, i, j, k) } else { (k, j, i, k) })
            }
        }
    }

    /// Every explicit rule with `k ∉ {i, j}`, both orientations.
    pub fn all_admissible(d: usize) -> Vec<PivotRule> {
        let mut choices: Vec<((u8, u8), Vec<(u8, bool)>)> = Vec::new();
        for i in 1..=d {
            for j in i..=d {
                let mut opts = Vec::new();
                for k in (1..=d).filter(|&k| k != i && k != j) {
                    opts.push((k as u8, false));
                    if i != j {
                        opts.push((k as u8, true));
                    }
                }
                choices.push(((i as u8, j as u8), opts));
            }
        }
        let mut rules = vec![BTreeMap::new()];
        for (key, opts) in choices {
            rules = rules
                .into_iter()
                .flat_map(|r: BTreeMap<(u8, u8), (u8, bool)>| {
                    opts.iter().map(move |&o| {
                        let mut r = r.clone();
                        r.insert(key, o);
                        r
                    })
                })
                .collect();
        }
        rules.into_iter().map(PivotRule::Explicit).collect()
    }
}

/// All `p_{k,st}` variables (`s ≤ t`) in canonical order.
pub fn p_variables(d: usize) -> Vec<VarId> {
    let mut out = Vec::new();
    for k in 1..=d as u8 {
        for s in 1..=d as u8 {
            for t in s..=d as u8 {
                out.push(VarId::p(k, s, t));
            }
        }
    }
    out.sort();
    out
}

/// The off-diagonal `q_{k,st}` variables, `N = d·C(d+1,2) − d` of them.
pub fn q_variables(d: usize) -> Vec<VarId> {
    let mut out: Vec<VarId> = p_variables(d)
        .into_iter()
        .map(|v| match v {
            VarId::PVar(k, s, t) => VarId::q(k, s, t),
            _ => unreachable!(),
        })
        .filter(|v| !v.is_diagonal_q())
        .collect();
    out.sort();
    out
}

/// `p0_{ij} ↦ −(quadratic part of the pivot)` for every `i ≤ j`.
pub fn p0_substitution(table: &GeneratorTable, rule: &PivotRule) -> Result<HashMap<VarId, RatPoly>> {
    let d = table.d();
    let mut sub = HashMap::new();
    for i in 1..=d {
        for j in i..=d {
            let (a, jj, ii, kk) = rule.pivot(d, i, j)?;
            let pivot = table.get(a, jj, ii, kk);
            let target = VarId::p0(i as u8, j as u8);
            let unit = Monomial::var(target);
            if pivot.coefficient(&unit) != Rational::from_integer(1.into()) {
                return Err(Error::MissingPivot { i: i as u8, j: j as u8 });
            }
            let rest = &pivot - &RatPoly::var(target);
            let quadratic = rest
                .terms()
                .all(|(m, _)| m.degree() == 2 && m.vars().iter().all(|v| matches!(v, VarId::PVar(..))));
            if !quadratic {
                return Err(Error::MissingPivot { i: i as u8, j: j as u8 });
            }
            sub.insert(target, -rest);
        }
    }
    Ok(sub)
}

/// Substitutes the pivots into every generator with `a ≥ 1`; the nonzero
/// images are homogeneous quadrics in the `p` variables.
pub fn eliminate_p0(table: &GeneratorTable, rule: &PivotRule) -> Result<QuadricSystem> {
    let d = table.d();
    let sub = p0_substitution(table, rule)?;
    let gens: Vec<_> = table.canonical().collect();
    let images: Vec<RatPoly> = gens.par_iter().map(|g| g.poly.substitute(&sub)).collect();
    let mut quadrics = Vec::new();
    for (g, img) in gens.iter().zip(images) {
        if img.is_zero() {
            continue;
        }
        if !(img.is_homogeneous() && img.degree() == Some(2)) {
            return Err(Error::Violation(format!("{} is not quadratic after eliminating p0", g.label())));
        }
        quadrics.push(img);
    }
    let rule_text = match rule {
        PivotRule::Cyclic => "cyclic".to_string(),
        PivotRule::Explicit(m) => format!("explicit {m:?}"),
    };
    QuadricSystem::new(
        d,
        p_variables(d),
        quadrics,
        vec![format!("p0 eliminated with {rule_text} pivots")],
    )
}

/// Image of `p_{k,st}` in `q` coordinates.
pub fn q_image(k: u8, s: u8, t: u8) -> RatPoly {
    let q = |k, s, t| RatPoly::var(VarId::q(k, s, t));
    if k != s && k != t {
        return q(k, s, t);
    }
    let other = if k == s { t } else { s };
    if other == k {
        return q(k, k, k).scale(&Rational::from_integer(2.into()));
    }
    &q(k, k, other) + &q(other, other, other)
}

/// The linear change `p_{k,st} ↦ q_{k,st}` for `k ∉ {s,t}` and
/// `p_{k,sk} ↦ q_{k,sk} + q_{s,ss}` otherwise (so `p_{s,ss} ↦ 2 q_{s,ss}`).
pub fn q_substitution(d: usize) -> HashMap<VarId, RatPoly> {
    p_variables(d)
        .into_iter()
        .map(|v| match v {
            VarId::PVar(k, s, t) => (v, q_image(k, s, t)),
            _ => unreachable!(),
        })
        .collect()
}

/// Applies [`q_substitution`] and checks that no `q_{s,ss}` survives.
pub fn to_q_variables(system: &QuadricSystem) -> Result<QuadricSystem> {
    let d = system.d;
    let sub = q_substitution(d);
    let images: Vec<RatPoly> = system.quadrics.par_iter().map(|f| f.substitute(&sub)).collect();
    let mut quadrics = Vec::with_capacity(images.len());
    for img in images {
        if let Some(v) = img.variables().into_iter().find(VarId::is_diagonal_q) {
            return Err(Error::DiagonalSurvives { var: v.to_string() });
        }
        if !img.is_zero() {
            quadrics.push(img);
        }
    }
    let mut provenance = system.provenance.clone();
    provenance.push("p[k;s,t] -> q[k;s,t] + [k in {s,t}] q[o;o,o]".to_string());
    QuadricSystem::new(d, q_variables(d), quadrics, provenance)
}

/// Keeps the polynomials that enlarge the span, in order.
pub fn span_basis(polys: &[RatPoly]) -> Vec<RatPoly> {
    let (monos, rows) = coefficient_rows(polys);
    let mut ech = Echelon::new(monos.len());
    polys
        .iter()
        .zip(rows)
        .filter_map(|(p, row)| ech.insert(row).then(|| p.clone()))
        .collect()
}

/// Both eliminations with the given pivots, reduced to a basis of the span.
pub fn final_system_with(table: &GeneratorTable, rule: &PivotRule) -> Result<QuadricSystem> {
    let q = to_q_variables(&eliminate_p0(table, rule)?)?;
    let basis = span_basis(&q.quadrics);
    let mut provenance = q.provenance;
    provenance.push(format!("row basis of {} quadrics", basis.len()));
    QuadricSystem::new(q.d, q.variables, basis, provenance)
}

/// The homogeneous quadric system of the symmetric subscheme in the `N`
/// off-diagonal `q` variables.
pub fn final_system(d: usize) -> Result<QuadricSystem> {
    final_system_with(&GeneratorTable::new(d)?, &PivotRule::Cyclic)
}

/// `d²(d²−4)/3`.
pub fn expected_quadric_count(d: usize) -> usize {
    d * d * (d * d - 4) / 3
}

/// The `q` coordinates of a numeric projector: `q_{s,ss} = p_{s,ss}/2`,
/// `q_{k,sk} = p_{k,sk} − p_{s,ss}/2` for `k ≠ s`, and `q = p` otherwise.
pub fn q_values_from_projector(spec: &NumericProjector) -> HashMap<VarId, Rational> {
    let d = spec.d();
    let half = Rational::new(1.into(), 2.into());
    let p = |k: u8, s: u8, t: u8| spec.value(VarId::p(k, s, t)).expect("index in range");
    let mut out = HashMap::new();
    for v in p_variables(d) {
        let VarId::PVar(k, s, t) = v else { unreachable!() };
        let value = if k != s && k != t {
            p(k, s, t)
        } else {
            let other = if k == s { t } else { s };
            if other == k {
                p(k, k, k) * &half
            } else {
                p(k, k, other) - p(other, other, other) * &half
            }
        };
        out.insert(VarId::q(k, s, t), value);
    }
    out
}

/// Whether every admissible alternative pivot choice gives the same span as
/// the cyclic one. Returns the number of rules compared.
pub fn pivot_independence_check(table: &GeneratorTable) -> Result<usize> {
    let reference = final_system_with(table, &PivotRule::Cyclic)?;
    let rules = PivotRule::all_admissible(table.d());
    let results: Vec<Result<bool>> = rules
        .par_iter()
        .map(|rule| {
            let alt = final_system_with(table, rule)?;
            Ok(crate::poly::same_span(&reference.quadrics, &alt.quadrics))
        })
        .collect();
    for (rule, r) in rules.iter().zip(results) {
        if !r? {
            return Err(Error::Violation(format!("pivot rule {rule:?} changes the quadric span")));
        }
    }
    Ok(rules.len())
}

/// Variables occurring in a system's quadrics.
pub fn used_variables(system: &QuadricSystem) -> BTreeSet<VarId> {
    system.quadrics.iter().flat_map(RatPoly::variables).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{same_span, span_rank};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pivots_vanish_after_substitution() {
        let table = GeneratorTable::new(3).unwrap();
        let sub = p0_substitution(&table, &PivotRule::Cyclic).unwrap();
        assert_eq!(sub.len(), 6);
        for i in 1..=3 {
            for j in i..=3 {
                let k = if i == 3 { 1 } else { i + 1 };
                assert!(table.get(k, j, i, k).substitute(&sub).is_zero());
            }
        }
    }

    #[test]
    fn p_system_ranks() {
        for (d, rank) in [(3, 15), (4, 64)] {
            let table = GeneratorTable::new(d).unwrap();
            let sys = eliminate_p0(&table, &PivotRule::Cyclic).unwrap();
            assert!(sys.is_homogeneous_quadratic());
            assert_eq!(span_rank(&sys.quadrics, None).unwrap(), rank);
        }
    }

    #[test]
    fn q_change_examples() {
        assert_eq!(q_image(3, 1, 2), RatPoly::var(VarId::q(3, 1, 2)));
        assert_eq!(
            q_image(2, 1, 2),
            &RatPoly::var(VarId::q(2, 1, 2)) + &RatPoly::var(VarId::q(1, 1, 1))
        );
        assert_eq!(q_image(2, 2, 2), RatPoly::var(VarId::q(2, 2, 2)).scale(&Rational::from_integer(2.into())));
        assert_eq!(q_variables(3).len(), 15);
        assert_eq!(q_variables(4).len(), 36);
    }

    #[test]
    fn distinct_index_generator_keeps_its_shape() {
        let d = 4;
        let table = GeneratorTable::new(d).unwrap();
        let (a, j, i, k) = (4usize, 1usize, 2usize, 3usize);
        let image = table.get(a, j, i, k).substitute(&q_substitution(d));
        let qv = |a: usize, s: usize, t: usize| RatPoly::var(VarId::q(a as u8, s as u8, t as u8));
        let mut expected = RatPoly::zero();
        for m in 1..=d {
            expected += &qv(m, i, j) * &qv(a, k, m);
            expected -= &(&qv(m, k, j) * &qv(a, i, m));
        }
        assert_eq!(image, expected);
    }

    #[test]
    fn final_systems_d3_d4() {
        for d in [3, 4] {
            let sys = final_system(d).unwrap();
            let n = d * d * (d + 1) / 2 - d;
            assert_eq!(sys.num_variables(), n);
            assert_eq!(sys.quadrics.len(), expected_quadric_count(d));
            assert!(sys.is_homogeneous_quadratic());
            assert!(used_variables(&sys).iter().all(|v| !v.is_diagonal_q()));
            assert_eq!(span_rank(&sys.quadrics, None).unwrap(), expected_quadric_count(d));
            assert_eq!(final_system(d).unwrap(), sys);
        }
    }

    #[test]
    fn final_span_is_permutation_stable() {
        let d = 3;
        let sys = final_system(d).unwrap();
        for perm in [[2u8, 1, 3], [2, 3, 1]] {
            let moved: Vec<RatPoly> = sys.quadrics.iter().map(|f| f.map_vars(|v| v.relabel(&perm))).collect();
            assert!(same_span(&sys.quadrics, &moved));
        }
    }

    #[test]
    fn pivot_choice_does_not_matter_at_d3() {
        let table = GeneratorTable::new(3).unwrap();
        assert_eq!(pivot_independence_check(&table).unwrap(), 64);
    }

    #[test]
    fn interpolation_points_satisfy_final_quadrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [3, 4] {
            let sys = final_system(d).unwrap();
            for _ in 0..20 {
                let (_, spec) = NumericProjector::random_points(&mut rng, d);
                let values = q_values_from_projector(&spec);
                for f in &sys.quadrics {
                    assert!(f.evaluate(|v| values[&v].clone()).is_zero());
                }
            }
        }
    }

    #[test]
    fn square_of_maximal_ideal_is_the_origin() {
        let values = q_values_from_projector(&NumericProjector::zero(3));
        assert!(values.values().all(Zero::is_zero));
    }

    #[test]
    fn bad_pivot_is_reported() {
        let table = GeneratorTable::new(3).unwrap();
        let mut map = BTreeMap::new();
        map.insert((1u8, 1u8), (1u8, false));
        let err = p0_substitution(&table, &PivotRule::Explicit(map)).unwrap_err();
        assert!(matches!(err, Error::MissingPivot { i: 1, j: 1 }));
    }
}
