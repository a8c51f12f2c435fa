//! Acceptance suite. Runs without the libtest harness so that each criterion
//! prints exactly one PASS or FAIL line; any failure makes the process exit 1.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hilbsym::bounds::{bounds_all_k, corollary_bound, cubic_correction_multiplicities, tensor_tail_check};
use hilbsym::elimination::{eliminate_p0, final_system, pivot_independence_check, q_values_from_projector, PivotRule};
use hilbsym::hilbert::{hilbert_function, hilbert_table, pluecker_system, HilbertOptions};
use hilbsym::linalg::RankMode;
use hilbsym::partition::{lr_product, schur_dim, ssyt_count};
use hilbsym::poly::span_rank;
use hilbsym::projector::{generator_span_rank, verify_c_zero, verify_relations, GeneratorTable};
use hilbsym::reducibility::{
    build_family_ideal, colength_check, family_dimension, non_radical_check, recover_b, reducibility_witness,
    translation_check, FamilySpec, TruncatedIdeal, Verdict,
};
use hilbsym::symfun::SymContext;
use hilbsym::{NumericProjector, Partition, QuadricSystem, Rational, SchurExpansion, VarId};

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Hook-content formula, independent of the product formula used by the library.
fn hook_content_dim(parts: &[u32], d: usize) -> BigInt {
    let lambda = Partition::new(parts.to_vec()).unwrap();
    let conj = lambda.conjugate();
    let mut num = BigRational::one();
    for (r, &row) in lambda.parts().iter().enumerate() {
        for c in 0..row as usize {
            let hook = (row as usize - c - 1) + (conj.part(c) as usize - r - 1) + 1;
            let content = d as i64 + c as i64 - r as i64;
            num *= BigRational::new(content.into(), (hook as i64).into());
        }
    }
    assert!(num.is_integer());
    num.to_integer()
}

fn coordinate(d: usize) -> Vec<u32> {
    let mut v = vec![3];
    v.extend(vec![1; d - 2]);
    v
}

fn quadric(d: usize) -> Vec<u32> {
    let mut v = vec![4, 3];
    v.extend(vec![2; d - 3]);
    v.push(1);
    v
}

/// `head`, then copies of `fill`, then `tail`, with `d` entries in all.
fn padded(head: &[u32], fill: u32, tail: &[u32], d: usize) -> Option<Vec<u32>> {
    let n = d.checked_sub(head.len() + tail.len())?;
    let mut v = head.to_vec();
    v.extend(vec![fill; n]);
    v.extend_from_slice(tail);
    Some(v)
}

fn twos(head: &[u32], tail: &[u32], d: usize) -> Option<Vec<u32>> {
    padded(head, 2, tail, d)
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn n_of(d: usize) -> usize {
    d * binom(d as u128 + 1, 2) as usize - d
}

fn quadric_count(d: usize) -> usize {
    d * d * (d * d - 4) / 3
}

fn dimension_formulas() {
    for d in 3..=8 {
        let c = schur_dim(&p(&coordinate(d)), d).unwrap();
        let q = schur_dim(&p(&quadric(d)), d).unwrap();
        assert_eq!(c, BigInt::from(n_of(d)), "coordinate module, d={d}");
        assert_eq!(q, BigInt::from(quadric_count(d)), "quadric module, d={d}");
        assert_eq!(c, hook_content_dim(&coordinate(d), d));
        assert_eq!(q, hook_content_dim(&quadric(d), d));
        if d <= 5 {
            assert_eq!(BigInt::from(ssyt_count(&p(&coordinate(d)), d).unwrap()), c);
            assert_eq!(BigInt::from(ssyt_count(&p(&quadric(d)), d).unwrap()), q);
        }
    }
}

fn decompositions() {
    let mut ctx = SymContext::new();
    for d in 3..=6 {
        let mut wedge_sym2 = SchurExpansion::new(d);
        let mut v = vec![2];
        v.extend(vec![1; d - 1]);
        wedge_sym2.add(p(&v), 1.into());
        wedge_sym2.add(p(&coordinate(d)), 1.into());
        assert_eq!(lr_product(&p(&vec![1; d - 1]), &p(&[2]), d), wedge_sym2, "d={d}");

        let listed: Vec<Vec<u32>> = [
            twos(&[6], &[0], d),
            twos(&[5, 3], &[1, 1], d),
            twos(&[5], &[1], d),
            twos(&[4, 4], &[0], d),
            twos(&[4, 3], &[1], d),
            twos(&[4], &[], d),
        ]
        .into_iter()
        .flatten()
        .collect();
        assert_eq!(listed.len(), if d == 3 { 5 } else { 6 });
        let mut expected = SchurExpansion::new(d);
        for l in &listed {
            expected.add(p(l), 1.into());
        }
        let sym2 = ctx.sym_plethysm(2, &p(&coordinate(d)), d).unwrap();
        assert_eq!(sym2, expected, "Sym^2 at d={d}");
        let total: BigInt = listed.iter().map(|l| hook_content_dim(l, d)).sum();
        assert_eq!(total, BigInt::from(binom(n_of(d) as u128 + 1, 2)));
    }
}

fn relation_identities(tables: &[GeneratorTable]) {
    for t in tables {
        let d = t.d() as u128;
        let (trace, cyclic) = verify_relations(t).unwrap();
        assert_eq!(trace.len() as u128, binom(d, 2));
        assert_eq!(cyclic.len() as u128, d * binom(d, 3));
        let zero = verify_c_zero(t, None).unwrap();
        assert_eq!(zero.len() as u128, d * d * binom(d, 2));
    }
}

fn generator_rank(tables: &[GeneratorTable]) {
    let modular = HilbertOptions::modular(0).mode;
    for t in tables {
        let d = t.d();
        let want = quadric_count(d) + d * (d + 1) / 2;
        assert_eq!(generator_span_rank(t, &RankMode::Exact).unwrap(), want, "exact, d={d}");
        assert_eq!(generator_span_rank(t, &modular).unwrap(), want, "modular, d={d}");
    }
    let want: Vec<usize> = tables.iter().map(|t| t.d()).map(|d| quadric_count(d) + d * (d + 1) / 2).collect();
    assert_eq!(want, [21, 74, 190]);
}

fn elimination(systems: &[QuadricSystem], tables: &[GeneratorTable]) {
    for sys in systems {
        let d = sys.d;
        assert_eq!(sys.num_variables(), n_of(d));
        for v in &sys.variables {
            assert!(!matches!(*v, VarId::QVar(k, s, t) if k == s && s == t), "{v} listed at d={d}");
        }
        for f in &sys.quadrics {
            assert!(f.variables().iter().all(|v| !v.is_diagonal_q()));
        }
        assert_eq!(span_rank(&sys.quadrics, None).unwrap(), quadric_count(d), "d={d}");
    }
    assert_eq!(pivot_independence_check(&tables[0]).unwrap(), 64);
}

fn hilbert_values(systems: &[QuadricSystem]) {
    let modular = HilbertOptions::modular(0);
    let exact = HilbertOptions::exact();
    let d3_closed = |r: u128| 14 * binom(r + 8, 8) + 9 * binom(r + 6, 6) - 21 * binom(r + 7, 7) - binom(r + 5, 5);
    let table = hilbert_table(&systems[0], 6, &modular).unwrap();
    assert_eq!(table, [1, 15, 105, 490, 1764, 5292, 13860]);
    assert_eq!(table, (0..=6).map(d3_closed).collect::<Vec<_>>());
    assert_eq!(hilbert_table(&systems[0], 4, &exact).unwrap(), table[..5]);

    let n = n_of(4) as u128;
    let h2 = hilbert_function(&systems[1], 2, &modular).unwrap();
    assert_eq!(h2, binom(n + 1, 2) - 64);
    assert_eq!(h2, 602);
    assert_eq!(hilbert_function(&systems[1], 2, &exact).unwrap(), 602);

    // Sym^3 minus quadrics times coordinates plus the three corrections
    let conj_h3 = |d: usize| {
        let n = BigInt::from(n_of(d));
        let sym3 = BigInt::from(binom(n_of(d) as u128 + 2, 3));
        let corr: BigInt = [
            padded(&[6, 4], 3, &[2], d),
            padded(&[5, 4, 4], 3, &[2], d),
            padded(&[5, 4], 3, &[], d),
        ]
        .into_iter()
        .flatten()
        .map(|l| hook_content_dim(&l, d))
        .sum();
        (sym3 - BigInt::from(quadric_count(d)) * n + corr).to_u128().unwrap()
    };
    let h3 = hilbert_function(&systems[1], 3, &modular).unwrap();
    assert_eq!(h3, conj_h3(4));
    assert_eq!(h3, 6328);

    let h2 = hilbert_function(&systems[2], 2, &modular).unwrap();
    assert_eq!(h2, binom(71, 2) - 175);
    assert_eq!(h2, 2310);
    assert_eq!(hilbert_function(&systems[2], 3, &modular).unwrap(), conj_h3(5));
}

fn pluecker_cross_check(systems: &[QuadricSystem]) {
    let opts = HilbertOptions::modular(0);
    let a = hilbert_table(&pluecker_system(), 4, &opts).unwrap();
    let b = hilbert_table(&systems[0], 4, &opts).unwrap();
    assert_eq!(a, b);
    // degree r of the Grassmannian cone is the module of shape (r, r) for GL_6
    for (r, h) in a.iter().enumerate() {
        assert_eq!(BigInt::from(*h), hook_content_dim(&[r as u32, r as u32], 6));
    }
}

fn plethysm_bound(systems: &[QuadricSystem]) {
    let mut ctx = SymContext::new();
    let opts = HilbertOptions::modular(0);
    for (sys, d) in systems.iter().zip(3..=4) {
        for r in 2..=3 {
            let h = hilbert_function(sys, r, &opts).unwrap();
            for k in 0..d {
                let b = corollary_bound(&mut ctx, d, r, k).unwrap();
                assert!(b.bound <= BigInt::from(h), "d={d} r={r} k={k}");
            }
            tensor_tail_check(d, r).unwrap();
        }
    }
    let values: Vec<BigInt> = bounds_all_k(&mut ctx, 3, 2).unwrap().into_iter().map(|b| b.bound).collect();
    assert_eq!(values, [75, 60, 0].map(BigInt::from));
    let ms = cubic_correction_multiplicities(4);
    assert_eq!(ms.len(), 3);
    assert!(ms.iter().all(|(_, m)| *m > BigInt::one()));
}

fn reducibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert_eq!(family_dimension(13, 5), 36 * 5 + 13);
    assert_eq!(family_dimension(13, 5), 193);
    assert!(family_dimension(13, 5) > 13 * 14);
    assert_eq!(family_dimension(12, 4), 36 * 4 + 12);
    assert_eq!(family_dimension(12, 4), 12 * 13);
    for d in 11..=20 {
        let w = reducibility_witness(d, &mut rng).unwrap();
        let want = match d {
            11 => Verdict::None,
            12 => Verdict::Boundary,
            _ => Verdict::Strict,
        };
        assert_eq!(w.verdict, want, "d={d}");
    }
    for (d, c) in [(12, 4), (13, 5)] {
        for _ in 0..20 {
            let spec = FamilySpec::random(&mut rng, d, c).unwrap();
            let ideal = build_family_ideal(&spec).unwrap();
            assert_eq!(colength_check(&ideal), d + 1);
            assert_eq!(recover_b(&ideal, c).unwrap(), spec);
            assert!(non_radical_check(&ideal).unwrap());
        }
    }
    let spec = FamilySpec::random(&mut rng, 13, 5).unwrap();
    for t in 1..=3 {
        let v: Vec<Rational> = (0..13).map(|i| Rational::from_integer(((i * t) % 7 - 3).into())).collect();
        assert_eq!(translation_check(&spec, &v).unwrap().support, v);
    }
    for d in [3, 4] {
        for _ in 0..5 {
            let (_, proj) = NumericProjector::random_points(&mut rng, d);
            let ideal = TruncatedIdeal::from_projector(&proj).unwrap();
            assert_eq!(ideal.colength(), d + 1);
            assert!(!non_radical_check(&ideal).unwrap());
        }
    }
}

fn numeric_consistency(tables: &[GeneratorTable], systems: &[QuadricSystem]) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (t, sys) in tables.iter().zip(systems).take(2) {
        let middle = eliminate_p0(t, &PivotRule::Cyclic).unwrap();
        for _ in 0..20 {
            let (points, proj) = NumericProjector::random_points(&mut rng, t.d());
            // the table really interpolates at the points
            for pt in &points {
                for i in 1..=t.d() {
                    for j in i..=t.d() {
                        assert_eq!(proj.entry(i, j).eval_at(pt), &pt[i - 1] * &pt[j - 1]);
                    }
                }
            }
            for g in t.all() {
                assert!(proj.evaluate(&g.poly).unwrap().is_zero(), "{}", g.label());
            }
            for f in &middle.quadrics {
                assert!(proj.evaluate(f).unwrap().is_zero());
            }
            let q = q_values_from_projector(&proj);
            for f in &sys.quadrics {
                assert!(f.evaluate(|v| q[&v].clone()).is_zero());
            }
        }
    }
}

fn main() {
    let ds = [3, 4, 5];
    let tables: Vec<GeneratorTable> = ds.iter().map(|&d| GeneratorTable::new(d).unwrap()).collect();
    let systems: Vec<QuadricSystem> = ds.iter().map(|&d| final_system(d).unwrap()).collect();

    let criteria: Vec<(&str, Box<dyn Fn()>)> = vec![
        ("dimension formulas", Box::new(dimension_formulas)),
        ("Schur decompositions", Box::new(decompositions)),
        ("relation identities", Box::new(|| relation_identities(&tables))),
        ("generator span rank", Box::new(|| generator_rank(&tables))),
        ("elimination pipeline", Box::new(|| elimination(&systems, &tables))),
        ("Hilbert values", Box::new(|| hilbert_values(&systems))),
        ("Plücker cross-check", Box::new(|| pluecker_cross_check(&systems))),
        ("plethysm bound", Box::new(|| plethysm_bound(&systems))),
        ("reducibility", Box::new(reducibility)),
        ("numeric-symbolic consistency", Box::new(|| numeric_consistency(&tables, &systems))),
    ];
    let mut failed = 0;
    for (n, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {title} ({:.2}s)", n + 1, start.elapsed().as_secs_f64());
        if !ok {
            failed += 1;
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
