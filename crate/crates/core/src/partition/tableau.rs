use super::Partition;
use crate::{Error, Result};

/// Enumeration guard for brute-force tableau counts.
pub const SSYT_BUDGET: u64 = 10_000_000;

/// A filling of a Young diagram, rows top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect::<Vec<_>>())?;
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Rows weakly increase, columns strictly increase, entries in `1..=d`.
    pub fn is_semistandard(&self, d: u32) -> bool {
        let in_range = self.rows.iter().flatten().all(|&v| v >= 1 && v <= d);
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .zip(&pair[0])
                .all(|(below, above)| below > above)
        });
        in_range && rows_ok && cols_ok
    }

    /// Multiplicity of each entry `1..=d`.
    pub fn content(&self, d: u32) -> Vec<u32> {
        let mut c = vec![0; d as usize];
        for &v in self.rows.iter().flatten() {
            c[(v - 1) as usize] += 1;
        }
        c
    }

    /// Entries read right to left, top row first.
    pub fn reverse_reading_word(&self) -> Vec<u32> {
        self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
    }
}

/// Whether every prefix of `word` contains at least as many `i` as `i + 1`.
pub fn is_lattice_word(word: &[u32]) -> bool {
    let mut counts: Vec<u32> = Vec::new();
    for &v in word {
        let i = v as usize;
        if counts.len() < i {
            counts.resize(i, 0);
        }
        counts[i - 1] += 1;
        if i >= 2 && counts[i - 1] > counts[i - 2] {
            return false;
        }
    }
    true
}

/// Calls `visit` on every semistandard tableau of shape `shape` with entries
/// at most `d`, stopping with an error once `budget` tableaux were seen.
/// Returns the number visited.
pub fn for_each_ssyt(
    shape: &Partition,
    d: usize,
    budget: u64,
    mut visit: impl FnMut(&[Vec<u32>]),
) -> Result<u64> {
    if shape.len() > d {
        return Ok(0);
    }
    let conj = shape.conjugate();
    let cells: Vec<(usize, usize)> = (0..shape.len())
        .flat_map(|r| (0..shape.part(r) as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = shape.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut count = 0u64;

    struct Ctx<'a, F> {
        cells: &'a [(usize, usize)],
        conj: &'a Partition,
        d: u32,
        budget: u64,
        visit: F,
    }

    fn go<F: FnMut(&[Vec<u32>])>(
        ctx: &mut Ctx<'_, F>,
        idx: usize,
        grid: &mut Vec<Vec<u32>>,
        count: &mut u64,
    ) -> Result<()> {
        if idx == ctx.cells.len() {
            *count += 1;
            if *count > ctx.budget {
                return Err(Error::Budget {
                    what: "enumerating tableaux",
                    needed: *count as u128,
                    limit: ctx.budget as u128,
                });
            }
            (ctx.visit)(grid.as_slice());
            return Ok(());
        }
        let (r, c) = ctx.cells[idx];
        let mut lo = (r as u32) + 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        // leave room for the strictly increasing cells below
        let below = ctx.conj.part(c) - 1 - r as u32;
        let hi = ctx.d.saturating_sub(below);
        for v in lo..=hi {
            grid[r][c] = v;
            go(ctx, idx + 1, grid, count)?;
        }
        Ok(())
    }

    let mut ctx = Ctx {
        cells: &cells,
        conj: &conj,
        d: d as u32,
        budget,
        visit: &mut visit,
    };
    go(&mut ctx, 0, &mut grid, &mut count)?;
    Ok(count)
}

/// Number of semistandard tableaux of shape `lambda` with entries at most `d`.
pub fn ssyt_count(lambda: &Partition, d: usize) -> Result<u64> {
    for_each_ssyt(lambda, d, SSYT_BUDGET, |_| {})
}
