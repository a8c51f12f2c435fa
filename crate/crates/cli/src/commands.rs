use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context as _;
use num_traits::Zero as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use hilbsym::bounds::{bounds_all_k, corollary_bound};
use hilbsym::elimination::{final_system, p_variables, pivot_independence_check};
use hilbsym::hilbert::{graded_piece, pluecker_system, GradedPiece, HilbertOptions};
use hilbsym::linalg::RankMode;
use hilbsym::partition::{lr_product, schur_dim, ssyt_count};
use hilbsym::projector::GeneratorTable;
use hilbsym::reducibility::{
    build_family_ideal, non_radical_check, recover_b, reducibility_witness, witness_at, FamilySpec,
};
use hilbsym::scalar::is_prime;
use hilbsym::symfun::sym_plethysm;
use hilbsym::{Partition, QuadricSystem, VarId};

use crate::{usage, CheckFailed, Format, Mode, RankArgs};

pub struct Ctx {
    pub format: Format,
    pub seed: u64,
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn parse_partition(s: &str) -> anyhow::Result<Partition> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("cannot read partition {s:?}; expected e.g. 3,1,0")))?;
    Partition::new(parts).map_err(|e| usage(e.to_string()))
}

fn require_d(d: usize, min: usize) -> anyhow::Result<()> {
    if d < min {
        return Err(usage(format!("--d must be at least {min}")));
    }
    Ok(())
}

pub fn dims(ctx: &Ctx, lambda: &str, d: usize, ssyt: bool) -> anyhow::Result<String> {
    let lambda = parse_partition(lambda)?;
    let dim = schur_dim(&lambda, d)?;
    let count = if ssyt { Some(ssyt_count(&lambda, d)?) } else { None };
    if let Some(c) = count {
        if dim != c.into() {
            return Err(CheckFailed(format!("dimension {dim} but {c} tableaux\n")).into());
        }
    }
    Ok(match ctx.format {
        Format::Json => to_json(&json!({
            "lambda": lambda,
            "d": d,
            "dimension": dim.to_string(),
            "ssyt_count": count,
        }))?,
        Format::Csv => format!("lambda,d,dimension\n\"{}\",{d},{dim}\n", lambda.key(d)),
        _ => format!("{dim}\n"),
    })
}

pub fn lr(ctx: &Ctx, lambda: &str, mu: &str, d: usize) -> anyhow::Result<String> {
    let (lambda, mu) = (parse_partition(lambda)?, parse_partition(mu)?);
    lambda.check_fits(d)?;
    mu.check_fits(d)?;
    let product = lr_product(&lambda, &mu, d);
    expansion_output(ctx, json!({"lambda": lambda, "mu": mu, "d": d}), &product)
}

pub fn plethysm(ctx: &Ctx, r: usize, lambda: &str, d: usize) -> anyhow::Result<String> {
    let lambda = parse_partition(lambda)?;
    lambda.check_fits(d)?;
    let sym = sym_plethysm(r, &lambda, d)?;
    expansion_output(ctx, json!({"r": r, "lambda": lambda, "d": d}), &sym)
}

fn expansion_output(
    ctx: &Ctx,
    mut header: serde_json::Value,
    e: &hilbsym::SchurExpansion,
) -> anyhow::Result<String> {
    let dim = e.dimension()?;
    Ok(match ctx.format {
        Format::Json => {
            header["expansion"] = serde_json::to_value(e)?;
            header["dimension"] = json!(dim.to_string());
            to_json(&header)?
        }
        Format::Csv => {
            let mut out = String::from("partition,multiplicity,dimension\n");
            for (l, m) in e.iter() {
                writeln!(out, "\"{}\",{m},{}", l.key(e.d()), schur_dim(l, e.d())?)?;
            }
            out
        }
        _ => format!("{e}\ndimension {dim}\n"),
    })
}

fn generator_system(d: usize) -> anyhow::Result<QuadricSystem> {
    let table = GeneratorTable::new(d)?;
    let mut vars = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            vars.push(VarId::p0(i as u8, j as u8));
        }
    }
    vars.extend(p_variables(d));
    let gens: Vec<_> = table.all().iter().filter(|g| !g.poly.is_zero()).collect();
    Ok(QuadricSystem::new(
        d,
        vars,
        gens.iter().map(|g| g.poly.clone()).collect(),
        gens.iter().map(|g| g.label()).collect(),
    )?)
}

pub fn equations(ctx: &Ctx, d: usize) -> anyhow::Result<String> {
    require_d(d, 2)?;
    let sys = generator_system(d)?;
    Ok(match ctx.format {
        Format::Json => sys.to_json()? + "\n",
        Format::Csv => {
            let mut out = String::from("label,polynomial\n");
            for (label, q) in sys.provenance.iter().zip(&sys.quadrics) {
                writeln!(out, "\"{label}\",\"{q}\"")?;
            }
            out
        }
        _ => {
            let mut out = String::new();
            for (label, q) in sys.provenance.iter().zip(&sys.quadrics) {
                writeln!(out, "{label} = {q}")?;
            }
            out
        }
    })
}

pub fn eliminate(ctx: &Ctx, d: usize, out: Option<&Path>, check_pivots: bool) -> anyhow::Result<String> {
    require_d(d, 3)?;
    if check_pivots && d != 3 {
        return Err(usage("--check-pivots is only available for d = 3"));
    }
    eprintln!("eliminate: building the system for d={d}");
    let sys = final_system(d)?;
    let rules = if check_pivots {
        eprintln!("eliminate: comparing pivot choices");
        Some(pivot_independence_check(&GeneratorTable::new(d)?)?)
    } else {
        None
    };
    if let Some(path) = out {
        sys.write(path).with_context(|| format!("writing {}", path.display()))?;
    }
    let summary = json!({
        "d": d,
        "variables": sys.num_variables(),
        "quadrics": sys.quadrics.len(),
        "pivot_rules_checked": rules,
        "out": out.map(|p| p.display().to_string()),
    });
    Ok(match (ctx.format, out) {
        (Format::Json, Some(_)) => to_json(&summary)?,
        (Format::Json, None) => sys.to_json()? + "\n",
        (_, Some(path)) => {
            let mut s = format!(
                "d={d}: {} variables, {} quadrics written to {}\n",
                sys.num_variables(),
                sys.quadrics.len(),
                path.display()
            );
            if let Some(n) = rules {
                writeln!(s, "{n} pivot rules give the same span")?;
            }
            s
        }
        (_, None) => {
            let mut s = String::new();
            if let Some(n) = rules {
                writeln!(s, "# {n} pivot rules give the same span")?;
            }
            for q in &sys.quadrics {
                writeln!(s, "{q}")?;
            }
            s
        }
    })
}

pub fn hilbert_options(ctx: &Ctx, rank: &RankArgs) -> anyhow::Result<HilbertOptions> {
    let mut opts = match (rank.mode, rank.prime.as_str()) {
        (Mode::Exact, _) => HilbertOptions::exact(),
        (Mode::Modular, "auto") => HilbertOptions::modular(ctx.seed),
        (Mode::Modular, list) => {
            let primes = list
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("cannot read primes {list:?}")))?;
            if let Some(p) = primes.iter().find(|&&p| p >= 1 << 32 || !is_prime(p)) {
                return Err(usage(format!("{p} is not a prime below 2^32")));
            }
            HilbertOptions {
                mode: RankMode::Modular(primes),
                ..HilbertOptions::exact()
            }
        }
    };
    opts.force = rank.force;
    opts.column_budget = rank.budget;
    Ok(opts)
}

fn pieces(sys: &QuadricSystem, rmax: usize, opts: &HilbertOptions, tag: &str) -> anyhow::Result<Vec<GradedPiece>> {
    let pieces: Vec<_> = (0..=rmax)
        .into_par_iter()
        .map(|r| {
            let p = graded_piece(sys, r, opts);
            if let Ok(p) = &p {
                eprintln!("{tag}: r={r} columns={} rank={}", p.columns, p.rank);
            }
            p
        })
        .collect();
    Ok(pieces.into_iter().collect::<Result<Vec<_>, _>>()?)
}

#[derive(Serialize)]
struct PieceRow<'a> {
    #[serde(flatten)]
    piece: &'a GradedPiece,
    hilbert: u128,
}

pub fn hilbert(
    ctx: &Ctx,
    system: Option<&Path>,
    d: Option<usize>,
    rmax: usize,
    rank: &RankArgs,
) -> anyhow::Result<String> {
    let opts = hilbert_options(ctx, rank)?;
    let (sys, source) = match (system, d) {
        (Some(path), _) => (
            QuadricSystem::read(path).with_context(|| format!("reading {}", path.display()))?,
            path.display().to_string(),
        ),
        (None, Some(d)) => {
            require_d(d, 3)?;
            (final_system(d)?, format!("final system d={d}"))
        }
        (None, None) => return Err(usage("one of --system or --d is required")),
    };
    if !sys.is_homogeneous_quadratic() {
        return Err(usage("the system must consist of homogeneous quadrics"));
    }
    let pieces = pieces(&sys, rmax, &opts, "hilbert")?;
    Ok(match ctx.format {
        Format::Json => to_json(&json!({
            "source": source,
            "variables": sys.num_variables(),
            "mode": opts.mode.describe(),
            "pieces": pieces.iter().map(|p| PieceRow { piece: p, hilbert: p.hilbert_value() }).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut out = String::from("r,hilbert,columns,rows,distinct_rows,blocks,rank\n");
            for p in &pieces {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    p.degree,
                    p.hilbert_value(),
                    p.columns,
                    p.rows,
                    p.distinct_rows,
                    p.blocks,
                    p.rank
                )?;
            }
            out
        }
        _ => {
            let mut out = format!("{:>3} {:>12} {:>12} {:>12}\n", "r", "H(r)", "columns", "rank");
            for p in &pieces {
                writeln!(out, "{:>3} {:>12} {:>12} {:>12}", p.degree, p.hilbert_value(), p.columns, p.rank)?;
            }
            out
        }
    })
}

pub fn pluecker(ctx: &Ctx, rmax: usize, rank: &RankArgs) -> anyhow::Result<String> {
    let opts = hilbert_options(ctx, rank)?;
    let left = pieces(&pluecker_system(), rmax, &opts, "pluecker")?;
    let right = pieces(&final_system(3)?, rmax, &opts, "d=3")?;
    let rows: Vec<(usize, u128, u128)> = left
        .iter()
        .zip(&right)
        .map(|(a, b)| (a.degree, a.hilbert_value(), b.hilbert_value()))
        .collect();
    let agree = rows.iter().all(|(_, a, b)| a == b);
    let out = match ctx.format {
        Format::Json => to_json(&json!({
            "mode": opts.mode.describe(),
            "rows": rows.iter().map(|(r, a, b)| json!({"r": r, "pluecker": a, "d3": b})).collect::<Vec<_>>(),
            "agree": agree,
        }))?,
        Format::Csv => {
            let mut out = String::from("r,pluecker,d3\n");
            for (r, a, b) in &rows {
                writeln!(out, "{r},{a},{b}")?;
            }
            out
        }
        _ => {
            let mut out = format!("{:>3} {:>12} {:>12}\n", "r", "Pluecker", "d=3");
            for (r, a, b) in &rows {
                writeln!(out, "{r:>3} {a:>12} {b:>12}")?;
            }
            writeln!(out, "{}", if agree { "tables agree" } else { "tables differ" })?;
            out
        }
    };
    if agree {
        Ok(out)
    } else {
        Err(CheckFailed(out).into())
    }
}

pub fn bound(ctx: &Ctx, d: usize, r: usize, k: Option<usize>) -> anyhow::Result<String> {
    let mut sym = hilbsym::symfun::SymContext::new();
    let reports = match k {
        Some(k) => vec![corollary_bound(&mut sym, d, r, k)?],
        None => bounds_all_k(&mut sym, d, r)?,
    };
    Ok(match ctx.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut out = String::from("d,r,k,bound\n");
            for b in &reports {
                writeln!(out, "{},{},{},{}", b.d, b.r, b.k, b.bound)?;
            }
            out
        }
        _ => {
            let mut out = String::new();
            for b in &reports {
                let admitted: Vec<String> = b
                    .admitted
                    .iter()
                    .map(|a| format!("{}x{}", a.multiplicity, a.partition))
                    .collect();
                writeln!(out, "k={} bound={} from {}", b.k, b.bound, admitted.join(" + "))?;
            }
            out
        }
    })
}

#[derive(Serialize)]
struct Trial {
    spec: serde_json::Value,
    colength: usize,
    recovered: bool,
    non_radical: bool,
}

pub fn reducibility(ctx: &Ctx, d: usize, c: Option<usize>, trials: usize) -> anyhow::Result<String> {
    require_d(d, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let witness = match c {
        Some(c) if c == 0 || c >= d => return Err(usage(format!("--c must lie in 1..{d}"))),
        Some(c) => witness_at(d, c, &mut rng)?,
        None => reducibility_witness(d, &mut rng)?,
    };
    let mut results = Vec::with_capacity(trials);
    for t in 0..trials {
        eprintln!("reducibility: trial {}/{trials}", t + 1);
        let spec = FamilySpec::random(&mut rng, d, witness.c)?;
        let ideal = build_family_ideal(&spec)?;
        let recovered = recover_b(&ideal, witness.c).map(|b| b == spec).unwrap_or(false);
        results.push(Trial {
            spec: serde_json::from_str(&spec.to_json()?)?,
            colength: ideal.colength(),
            recovered,
            non_radical: non_radical_check(&ideal)?,
        });
    }
    let ok = results.iter().all(|t| t.colength == d + 1 && t.recovered && t.non_radical);
    let out = match ctx.format {
        Format::Json => to_json(&json!({"witness": witness, "trials": results}))?,
        Format::Csv => {
            let mut out = String::from("d,c,family_dim,radical_dim,verdict\n");
            writeln!(
                out,
                "{},{},{},{},{}",
                witness.d, witness.c, witness.family_dim, witness.radical_dim, witness.verdict
            )?;
            out
        }
        _ => {
            let rel = match witness.family_dim.cmp(&witness.radical_dim) {
                std::cmp::Ordering::Greater => ">",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Less => "<",
            };
            let mut out = format!(
                "{}, {} {rel} {} (d={}, c={})\n",
                witness.verdict, witness.family_dim, witness.radical_dim, witness.d, witness.c
            );
            for (n, t) in results.iter().enumerate() {
                writeln!(
                    out,
                    "trial {}: colength {}, B {}, {}",
                    n + 1,
                    t.colength,
                    if t.recovered { "recovered" } else { "NOT recovered" },
                    if t.non_radical { "non-radical" } else { "radical" }
                )?;
            }
            out
        }
    };
    if ok {
        Ok(out)
    } else {
        Err(CheckFailed(out).into())
    }
}
