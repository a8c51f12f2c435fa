//! The families of partitions that recur throughout, as functions of `d`.
//!
//! Each family is written as `head, fill repeated, tail` padded to exactly
//! `d` entries; a family that does not fit into `d` entries yields `None`.

use super::Partition;

fn pattern(head: &[u32], fill: u32, tail: &[u32], d: usize) -> Option<Partition> {
    let fixed = head.len() + tail.len();
    if fixed > d {
        return None;
    }
    let mut v = head.to_vec();
    v.extend(std::iter::repeat_n(fill, d - fixed));
    v.extend_from_slice(tail);
    Partition::new(v).ok()
}

/// `(3,1,…,1,0)`: the module spanned by the coordinate variables.
pub fn coordinate_module(d: usize) -> Partition {
    pattern(&[3], 1, &[0], d).expect("d >= 2")
}

/// `(4,3,2,…,2,1)`: the module spanned by the defining quadrics.
pub fn quadric_module(d: usize) -> Partition {
    pattern(&[4, 3], 2, &[1], d).expect("d >= 3")
}

/// `(2,1,…,1,1)`: the complement of the coordinate module in `∧^{d−1}V ⊗ Sym²V`.
pub fn diagonal_module(d: usize) -> Partition {
    pattern(&[2], 1, &[], d).expect("d >= 1")
}

/// `(3,2,1,…,1,0)` and `(3,1,…,1,1)`: the two summands of the commutator
/// generator space.
pub fn generator_modules(d: usize) -> [Partition; 2] {
    [
        pattern(&[3, 2], 1, &[0], d).expect("d >= 3"),
        pattern(&[3], 1, &[], d).expect("d >= 1"),
    ]
}

/// The partitions in `∧^{d−1}V ⊗ V ⊗ ∧²V`, with multiplicities.
/// `(2,2,2,1,…,1,0)` needs `d ≥ 4`.
pub fn generator_ambient_modules(d: usize) -> Vec<(Partition, u32)> {
    let [a, b] = generator_modules(d);
    let mut out = vec![(a, 1), (b, 1), (pattern(&[2, 2], 1, &[], d).expect("d >= 2"), 2)];
    if let Some(extra) = pattern(&[2, 2, 2], 1, &[0], d) {
        out.push((extra, 1));
    }
    out
}

/// The summands of `Sym²` of the coordinate module. The `(5,3,2,…,2,1,1)`
/// summand needs `d ≥ 4`, so for `d = 3` only five are returned.
pub fn coordinate_sym2_summands(d: usize) -> Vec<Partition> {
    [
        pattern(&[6], 2, &[0], d),
        pattern(&[5, 3], 2, &[1, 1], d),
        pattern(&[5], 2, &[1], d),
        pattern(&[4, 4], 2, &[0], d),
        pattern(&[4, 3], 2, &[1], d),
        pattern(&[4], 2, &[], d),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// `(6,4,3,…,3,2)`, `(5,4,4,3,…,3,2)`, `(5,4,3,…,3,3)`: the three modules
/// appearing with multiplicity above one in the quadric module tensored with
/// the coordinate module.
pub fn cubic_correction_modules(d: usize) -> Vec<Partition> {
    [
        pattern(&[6, 4], 3, &[2], d),
        pattern(&[5, 4, 4], 3, &[2], d),
        pattern(&[5, 4], 3, &[3], d),
    ]
    .into_iter()
    .flatten()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn families_at_small_d() {
        assert_eq!(coordinate_module(3), p(&[3, 1, 0]));
        assert_eq!(coordinate_module(5), p(&[3, 1, 1, 1, 0]));
        assert_eq!(quadric_module(3), p(&[4, 3, 1]));
        assert_eq!(quadric_module(5), p(&[4, 3, 2, 2, 1]));
        assert_eq!(generator_modules(3), [p(&[3, 2, 0]), p(&[3, 1, 1])]);
        assert_eq!(diagonal_module(4), p(&[2, 1, 1, 1]));
    }

    #[test]
    fn sym2_summands_at_d4_and_d3() {
        let four = coordinate_sym2_summands(4);
        let expected: Vec<Partition> = [
            [6, 2, 2, 0],
            [5, 3, 1, 1],
            [5, 2, 2, 1],
            [4, 4, 2, 0],
            [4, 3, 2, 1],
            [4, 2, 2, 2],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(four, expected);
        let three = coordinate_sym2_summands(3);
        assert_eq!(three.len(), 5);
        assert!(three.iter().all(|l| l.weight() == 8));
    }

    #[test]
    fn cubic_corrections_at_d4() {
        assert_eq!(
            cubic_correction_modules(4),
            vec![p(&[6, 4, 3, 2]), p(&[5, 4, 4, 2]), p(&[5, 4, 3, 3])]
        );
        assert!(cubic_correction_modules(5).iter().all(|l| l.weight() == 18));
    }
}
