//! The full reproduction suite: ten criteria, each reported PASS or FAIL.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, ensure};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use hilbsym::bounds::{bounds_all_k, cubic_correction_multiplicities, tensor_tail_check};
use hilbsym::elimination::{
    expected_quadric_count, final_system, pivot_independence_check, q_values_from_projector, used_variables,
};
use hilbsym::hilbert::{d3_polynomial, h2_formula, h3_formula, hilbert_function, pluecker_system, HilbertOptions};
use hilbsym::linalg::RankMode;
use hilbsym::partition::{binomial, lr_product, schur_dim, shapes, ssyt_count, Partition};
use hilbsym::poly::span_rank;
use hilbsym::projector::{expected_generator_rank, generator_span_rank, verify_c_zero, verify_relations, GeneratorTable};
use hilbsym::reducibility::{
    build_family_ideal, family_dimension, non_radical_check, recover_b, reducibility_witness, FamilySpec,
    TruncatedIdeal, Verdict,
};
use hilbsym::symfun::SymContext;
use hilbsym::{Integer, NumericProjector, QuadricSystem, SchurExpansion};

use crate::commands::Ctx;
use crate::{CheckFailed, Format};

#[derive(Serialize)]
struct Criterion {
    id: usize,
    title: &'static str,
    status: &'static str,
    details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    extended: bool,
    seed: u64,
    passed: usize,
    total: usize,
    criteria: Vec<Criterion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hilbert_seconds: Option<f64>,
}

type Check = anyhow::Result<Vec<String>>;

/// Hilbert values shared by several criteria, keyed by system name and degree.
struct HilbertCache {
    values: BTreeMap<(String, usize), Result<u128, String>>,
}

impl HilbertCache {
    fn get(&self, name: &str, r: usize) -> anyhow::Result<u128> {
        match self.values.get(&(name.to_string(), r)) {
            Some(Ok(h)) => Ok(*h),
            Some(Err(e)) => bail!("H({r}) of {name} failed: {e}"),
            None => bail!("H({r}) of {name} was not computed"),
        }
    }
}

fn hilbert_jobs(systems: &[(String, QuadricSystem)], jobs: &[(usize, usize)], opts: &HilbertOptions) -> HilbertCache {
    let values = jobs
        .par_iter()
        .map(|&(s, r)| {
            let (name, sys) = &systems[s];
            let h = hilbert_function(sys, r, opts).map_err(|e| e.to_string());
            eprintln!("repro: H({r}) of {name} done");
            ((name.clone(), r), h)
        })
        .collect();
    HilbertCache { values }
}

fn dims() -> Check {
    let mut out = Vec::new();
    for d in 3..=8usize {
        let n = schur_dim(&shapes::coordinate_module(d), d)?;
        let q = schur_dim(&shapes::quadric_module(d), d)?;
        ensure!(n == Integer::from(d * (d + 1) / 2 * d - d), "coordinate module at d={d} has dimension {n}");
        ensure!(q == Integer::from(d * d * (d * d - 4) / 3), "quadric module at d={d} has dimension {q}");
        if d <= 5 {
            ensure!(Integer::from(ssyt_count(&shapes::coordinate_module(d), d)?) == n, "tableau count differs at d={d}");
            ensure!(Integer::from(ssyt_count(&shapes::quadric_module(d), d)?) == q, "tableau count differs at d={d}");
        }
        out.push(format!("d={d}: {n}, {q}"));
    }
    Ok(out)
}

fn decompositions() -> Check {
    let mut out = Vec::new();
    let mut ctx = SymContext::new();
    for d in 3..=6usize {
        let wedge = Partition::new(vec![1; d - 1])?;
        let sym2 = Partition::new(vec![2])?;
        let mut expected = SchurExpansion::new(d);
        let mut two = vec![2];
        two.extend(vec![1; d - 1]);
        expected.add(Partition::new(two)?, 1.into());
        expected.add(shapes::coordinate_module(d), 1.into());
        ensure!(lr_product(&wedge, &sym2, d) == expected, "wedge times Sym^2 differs at d={d}");

        let sym = ctx.sym_plethysm(2, &shapes::coordinate_module(d), d)?;
        let mut listed = SchurExpansion::new(d);
        for l in shapes::coordinate_sym2_summands(d) {
            listed.add(l, 1.into());
        }
        ensure!(sym == listed, "Sym^2 at d={d} is {sym}");
        let want = if d == 3 { 5 } else { 6 };
        ensure!(sym.len() == want, "Sym^2 at d={d} has {} summands", sym.len());
        let n = schur_dim(&shapes::coordinate_module(d), d)?;
        let n = u64::try_from(n)?;
        ensure!(sym.dimension()? == binomial(n + 1, 2), "Sym^2 dimension differs at d={d}");
        out.push(format!("d={d}: {} summands", sym.len()));
    }
    Ok(out)
}

fn relations(tables: &[GeneratorTable]) -> Check {
    let mut out = Vec::new();
    for t in tables {
        let (trace, cyclic) = verify_relations(t)?;
        let zero = verify_c_zero(t, None)?;
        out.push(format!(
            "d={}: {} + {} relations, {} constant-coefficient identities",
            t.d(),
            trace.len(),
            cyclic.len(),
            zero.len()
        ));
    }
    Ok(out)
}

fn generator_rank(tables: &[GeneratorTable], opts: &HilbertOptions) -> Check {
    let mut out = Vec::new();
    for t in tables {
        let mode = if t.d() <= 4 { RankMode::Exact } else { opts.mode.clone() };
        let rank = generator_span_rank(t, &mode)?;
        let want = expected_generator_rank(t.d());
        ensure!(rank == want, "d={}: rank {rank}, expected {want}", t.d());
        out.push(format!("d={}: {rank} ({})", t.d(), mode.describe()));
    }
    Ok(out)
}

fn elimination(systems: &BTreeMap<usize, QuadricSystem>, tables: &[GeneratorTable], opts: &HilbertOptions) -> Check {
    let mut out = Vec::new();
    for (&d, sys) in systems {
        let n = d * (d + 1) / 2 * d - d;
        ensure!(sys.num_variables() == n, "d={d}: {} variables", sys.num_variables());
        ensure!(
            !used_variables(sys).iter().any(|v| v.is_diagonal_q()),
            "d={d}: a diagonal variable survives"
        );
        let prime = match (&opts.mode, d) {
            (RankMode::Modular(ps), 5..) => ps.first().copied(),
            _ => None,
        };
        let rank = span_rank(&sys.quadrics, prime)?;
        ensure!(rank == expected_quadric_count(d), "d={d}: quadric rank {rank}");
        out.push(format!("d={d}: N={n}, rank {rank}"));
    }
    let d3 = tables.iter().find(|t| t.d() == 3).expect("d = 3 is always built");
    let rules = pivot_independence_check(d3)?;
    out.push(format!("{rules} pivot rules agree at d=3"));
    Ok(out)
}

fn hilbert_values(cache: &HilbertCache, extended: bool) -> Check {
    let table: Vec<u128> = (0..=6).map(|r| cache.get("d3", r)).collect::<anyhow::Result<_>>()?;
    ensure!(table == [1, 15, 105, 490, 1764, 5292, 13860], "d=3 table is {table:?}");
    let poly: Vec<u128> = (0..=6).map(d3_polynomial).collect();
    ensure!(table == poly, "d=3 table differs from the closed form");
    let mut out = vec![format!("d=3: {table:?}")];
    let h2 = cache.get("d4", 2)?;
    ensure!(h2 == 602 && h2 == h2_formula(4), "d=4: H(2) = {h2}");
    let h3 = cache.get("d4", 3)?;
    ensure!(h3 == 6328 && h3 == h3_formula(4), "d=4: H(3) = {h3}");
    out.push(format!("d=4: H(2)={h2}, H(3)={h3}"));
    if extended {
        let h = cache.get("d5", 2)?;
        ensure!(h == 2310 && h == h2_formula(5), "d=5: H(2) = {h}");
        let h3 = cache.get("d5", 3)?;
        ensure!(h3 == h3_formula(5), "d=5: H(3) = {h3}, closed form {}", h3_formula(5));
        out.push(format!("d=5: H(2)={h}, H(3)={h3}"));
    }
    Ok(out)
}

fn pluecker(cache: &HilbertCache) -> Check {
    let a: Vec<u128> = (0..=4).map(|r| cache.get("pluecker", r)).collect::<anyhow::Result<_>>()?;
    let b: Vec<u128> = (0..=4).map(|r| cache.get("d3", r)).collect::<anyhow::Result<_>>()?;
    ensure!(a == b, "Plücker {a:?} vs d=3 {b:?}");
    Ok(vec![format!("{a:?}")])
}

fn bounds(cache: &HilbertCache) -> Check {
    let mut out = Vec::new();
    let mut ctx = SymContext::new();
    for d in 3..=4usize {
        for r in 2..=3usize {
            let h = cache.get(&format!("d{d}"), r)?;
            let reports = bounds_all_k(&mut ctx, d, r)?;
            for rep in &reports {
                ensure!(rep.bound <= Integer::from(h), "d={d} r={r} k={}: {} > {h}", rep.k, rep.bound);
            }
            let values: Vec<String> = reports.iter().map(|b| b.bound.to_string()).collect();
            if (d, r) == (3, 2) {
                ensure!(values == ["75", "60", "0"], "d=3 r=2 bounds are {values:?}");
            }
            tensor_tail_check(d, r)?;
            out.push(format!("d={d} r={r}: {} <= {h}", values.join(", ")));
        }
    }
    let ms = cubic_correction_multiplicities(4);
    ensure!(ms.iter().all(|(_, m)| *m > Integer::from(1)), "multiplicities at d=4: {ms:?}");
    out.push(format!(
        "d=4 multiplicities {}",
        ms.iter().map(|(_, m)| m.to_string()).collect::<Vec<_>>().join(", ")
    ));
    Ok(out)
}

fn reducibility(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ensure!(family_dimension(13, 5) == 193, "family dimension at d=13");
    ensure!(family_dimension(12, 4) == 156, "family dimension at d=12");
    for d in 11..=20 {
        let w = reducibility_witness(d, &mut rng)?;
        let want = match d {
            11 => Verdict::None,
            12 => Verdict::Boundary,
            _ => Verdict::Strict,
        };
        ensure!(w.verdict == want, "d={d}: {}", w.verdict);
    }
    for (d, c) in [(12, 4), (13, 5)] {
        for _ in 0..20 {
            let spec = FamilySpec::random(&mut rng, d, c)?;
            let ideal = build_family_ideal(&spec)?;
            ensure!(ideal.colength() == d + 1, "d={d}: colength {}", ideal.colength());
            ensure!(recover_b(&ideal, c)? == spec, "d={d}: B not recovered");
            ensure!(non_radical_check(&ideal)?, "d={d}: family member looks radical");
        }
    }
    for d in [3, 4] {
        let (_, proj) = NumericProjector::random_points(&mut rng, d);
        ensure!(
            !non_radical_check(&TruncatedIdeal::from_projector(&proj)?)?,
            "point ideal at d={d} looks non-radical"
        );
    }
    Ok(vec![
        "193 > 182, 156 = 156, 123 < 132".into(),
        "40 random members round-trip".into(),
    ])
}

fn consistency(tables: &[GeneratorTable], systems: &BTreeMap<usize, QuadricSystem>, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut out = Vec::new();
    for t in tables.iter().filter(|t| t.d() <= 4) {
        let sys = &systems[&t.d()];
        for _ in 0..20 {
            let (_, proj) = NumericProjector::random_points(&mut rng, t.d());
            for g in t.all() {
                ensure!(proj.evaluate(&g.poly)?.is_zero(), "{} is nonzero at a point ideal", g.label());
            }
            let q = q_values_from_projector(&proj);
            for f in &sys.quadrics {
                ensure!(f.evaluate(|v| q[&v].clone()).is_zero(), "a final quadric is nonzero");
            }
        }
        out.push(format!("d={}: 20 projectors", t.d()));
    }
    Ok(out)
}

pub fn run(ctx: &Ctx, extended: bool, timings: bool) -> anyhow::Result<String> {
    let ds: Vec<usize> = if extended { vec![3, 4, 5] } else { vec![3, 4] };
    let opts = HilbertOptions::modular(ctx.seed);

    eprintln!("repro: building generators and systems for d in {ds:?}");
    let tables: Vec<GeneratorTable> = ds.iter().map(|&d| GeneratorTable::new(d)).collect::<Result<_, _>>()?;
    let systems: BTreeMap<usize, QuadricSystem> =
        ds.iter().map(|&d| final_system(d).map(|s| (d, s))).collect::<Result<_, _>>()?;

    let mut named = vec![("pluecker".to_string(), pluecker_system())];
    named.extend(systems.iter().map(|(d, s)| (format!("d{d}"), s.clone())));
    let mut jobs: Vec<(usize, usize)> = (0..=4).map(|r| (0, r)).collect();
    jobs.extend((0..=6).map(|r| (1, r)));
    jobs.extend([(2, 2), (2, 3)]);
    if extended {
        jobs.extend([(3, 2), (3, 3)]);
    }
    let start = Instant::now();
    let cache = hilbert_jobs(&named, &jobs, &opts);
    let hilbert_seconds = start.elapsed().as_secs_f64();

    let checks: Vec<(&'static str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("dimension formulas", Box::new(dims)),
        ("Schur decompositions", Box::new(decompositions)),
        ("relation identities", Box::new(|| relations(&tables))),
        ("generator span rank", Box::new(|| generator_rank(&tables, &opts))),
        ("elimination pipeline", Box::new(|| elimination(&systems, &tables, &opts))),
        ("Hilbert values", Box::new(|| hilbert_values(&cache, extended))),
        ("Plücker cross-check", Box::new(|| pluecker(&cache))),
        ("plethysm bound", Box::new(|| bounds(&cache))),
        ("reducibility", Box::new(|| reducibility(ctx.seed))),
        ("numeric-symbolic consistency", Box::new(|| consistency(&tables, &systems, ctx.seed))),
    ];
    let mut criteria = Vec::new();
    for (n, (title, check)) in checks.iter().enumerate() {
        eprintln!("repro: criterion {} ({title})", n + 1);
        let start = Instant::now();
        let result = check();
        let seconds = timings.then(|| start.elapsed().as_secs_f64());
        let (status, details) = match result {
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", vec![e.to_string()]),
        };
        criteria.push(Criterion {
            id: n + 1,
            title,
            status,
            details,
            seconds,
        });
    }
    let passed = criteria.iter().filter(|c| c.status == "PASS").count();
    let report = Report {
        extended,
        seed: ctx.seed,
        passed,
        total: criteria.len(),
        criteria,
        hilbert_seconds: timings.then_some(hilbert_seconds),
    };
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => markdown(&report)?,
    };
    if passed == report.total {
        Ok(text)
    } else {
        Err(CheckFailed(text).into())
    }
}

fn markdown(report: &Report) -> anyhow::Result<String> {
    let mut out = String::new();
    writeln!(
        out,
        "# hilbsym reproduction ({}, seed {})\n",
        if report.extended { "extended" } else { "default" },
        report.seed
    )?;
    let timed = report.criteria.iter().any(|c| c.seconds.is_some());
    if timed {
        writeln!(out, "| # | criterion | status | seconds | details |\n|---|---|---|---|---|")?;
    } else {
        writeln!(out, "| # | criterion | status | details |\n|---|---|---|---|")?;
    }
    for c in &report.criteria {
        let details = c.details.join("; ").replace('|', "\\|");
        match c.seconds {
            Some(s) => writeln!(out, "| {} | {} | {} | {s:.2} | {details} |", c.id, c.title, c.status)?,
            None => writeln!(out, "| {} | {} | {} | {details} |", c.id, c.title, c.status)?,
        }
    }
    writeln!(out, "\n{}/{} criteria passed", report.passed, report.total)?;
    if let Some(s) = report.hilbert_seconds {
        writeln!(out, "Hilbert jobs: {s:.2} s")?;
    }
    Ok(out)
}
