//! Littlewood–Richardson coefficients by direct enumeration of LR fillings.

use num_bigint::BigInt;

use super::{partitions_of, Partition, SchurExpansion};

/// Number of LR tableaux of skew shape `outer / inner` with content `content`:
/// semistandard fillings whose reverse reading word is a lattice word.
pub fn lr_coefficient(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    if !outer.contains(inner) || outer.weight() != inner.weight() + content.weight() {
        return 0;
    }
    // skew cells in reverse reading order: rows top to bottom, right to left
    let rows = outer.len();
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (inner.part(r)..outer.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let mut grid: Vec<Vec<u32>> = (0..rows).map(|r| vec![0; outer.part(r) as usize]).collect();
    let letters = content.len();
    let mut counts = vec![0u32; letters + 1];

    struct Fill<'a> {
        cells: &'a [(usize, usize)],
        inner: &'a Partition,
        outer: &'a Partition,
        content: &'a Partition,
        letters: u32,
    }

    fn go(f: &Fill<'_>, idx: usize, grid: &mut [Vec<u32>], counts: &mut [u32]) -> u64 {
        if idx == f.cells.len() {
            return 1;
        }
        let (r, c) = f.cells[idx];
        // weakly increasing rows: bounded by the cell to the right
        let mut hi = f.letters.min(r as u32 + 1);
        if (c as u32) + 1 < f.outer.part(r) {
            hi = hi.min(grid[r][c + 1]);
        }
        // strictly increasing columns, only against skew cells above
        let mut lo = 1;
        if r > 0 && c as u32 >= f.inner.part(r - 1) {
            lo = grid[r - 1][c] + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            let i = v as usize;
            if counts[i] == f.content.part(i - 1) {
                continue;
            }
            if i >= 2 && counts[i] + 1 > counts[i - 1] {
                continue;
            }
            counts[i] += 1;
            grid[r][c] = v;
            total += go(f, idx + 1, grid, counts);
            counts[i] -= 1;
        }
        total
    }

    let fill = Fill {
        cells: &cells,
        inner,
        outer,
        content,
        letters: letters as u32,
    };
    go(&fill, 0, &mut grid, &mut counts)
}

/// Decomposition of `S_λ ⊗ S_μ` for `GL(d)`; constituents with more than `d`
/// parts are discarded.
pub fn lr_product(lambda: &Partition, mu: &Partition, d: usize) -> SchurExpansion {
    let mut out = SchurExpansion::new(d);
    if lambda.len() > d || mu.len() > d {
        return out;
    }
    // c^ν_{λμ} = c^ν_{μλ}; enumerate against the smaller content
    let (big, small) = if lambda.weight() >= mu.weight() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let n = big.weight() + small.weight();
    let cap = big.part(0) + small.part(0);
    for nu in partitions_of(n, d, Some(cap)) {
        if !nu.contains(big) || !nu.contains(small) {
            continue;
        }
        let c = lr_coefficient(&nu, big, small);
        if c > 0 {
            out.add(nu, BigInt::from(c));
        }
    }
    out
}
