//! The canonical family of specs, compatibility, and the invariant table.

use super::{boxplus, Level};
use crate::groupspec::{GroupSpec, SignedSet};

/// Non-empty subsets of `{0, ..., max_bound}`, ordered by maximum and then
/// by bitmask.
pub fn nonempty_sets(max_bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for m in 0..=max_bound {
        for mask in 0..(1u64 << m) {
            let mut x: Vec<u32> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            x.push(m);
            out.push(x);
        }
    }
    out
}

/// Every `x ∈ X_t` with `x >= max X_{1-t}` has the parity of `max X_t`.
pub fn compatible(x0: &[u32], x1: &[u32]) -> bool {
    let ok = |a: &[u32], b: &[u32]| {
        let (ma, mb) = (*a.last().unwrap(), *b.last().unwrap());
        a.iter().all(|&x| x < mb || x % 2 == ma % 2)
    };
    ok(x0, x1) && ok(x1, x0)
}

/// Number of compatible pairs with `max X0 = a` and `max X1 = b`.
pub fn compatible_pair_count(a: u32, b: u32) -> usize {
    let sets = nonempty_sets(a.max(b));
    let with_max = |m: u32| sets.iter().filter(move |x| *x.last().unwrap() == m);
    with_max(a).map(|x0| with_max(b).filter(|x1| compatible(x0, x1)).count()).sum()
}

/// The members of the family whose sets have maximum at most `max_bound`.
pub fn enumerate_family(max_bound: u32) -> Vec<GroupSpec> {
    let sets = nonempty_sets(max_bound);
    let mut out = vec![GroupSpec::full()];
    for x in &sets {
        out.push(GroupSpec::TypePreserving(SignedSet::Plain(x.clone()), SignedSet::Empty));
        out.push(GroupSpec::TypePreserving(SignedSet::Starred(x.clone()), SignedSet::Empty));
    }
    for x in &sets {
        out.push(GroupSpec::TypePreserving(SignedSet::Empty, SignedSet::Plain(x.clone())));
        out.push(GroupSpec::TypePreserving(SignedSet::Empty, SignedSet::Starred(x.clone())));
    }
    for x0 in &sets {
        for x1 in &sets {
            if !compatible(x0, x1) {
                continue;
            }
            for (s0, s1) in [(false, false), (false, true), (true, false), (true, true)] {
                let y = |x: &Vec<u32>, s: bool| if s { SignedSet::Starred(x.clone()) } else { SignedSet::Plain(x.clone()) };
                out.push(GroupSpec::TypePreserving(y(x0, s0), y(x1, s1)));
            }
            out.push(GroupSpec::CombinedStar(x0.clone(), x1.clone()));
        }
    }
    out
}

/// A row of the invariant table with its predicted values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub row: u8,
    pub c: [u8; 2],
    pub k_prime: [Level; 2],
}

/// Predicted `(c, K')` of a family member, with its table row.
pub fn table_profile(spec: &GroupSpec) -> Option<TableRow> {
    let mx = |x: &[u32]| Some(*x.last().unwrap() as usize);
    let row = |row, c0, c1, k0, k1| Some(TableRow { row, c: [c0, c1], k_prime: [k0, k1] });
    match spec {
        GroupSpec::TypePreserving(y0, y1) => {
            let kind = |y: &SignedSet| match y {
                SignedSet::Empty => 0,
                SignedSet::Plain(_) => 1,
                SignedSet::Starred(_) => 3,
            };
            let k = |y: &SignedSet| y.set().and_then(mx);
            let (c0, c1) = (kind(y0), kind(y1));
            let r = match (c0, c1) {
                (0, 0) => 1,
                (1, 0) => 2,
                (0, 1) => 3,
                (1, 1) => 4,
                (3, 0) => 5,
                (0, 3) => 6,
                (1, 3) => 7,
                (3, 1) => 8,
                _ => 9,
            };
            row(r, c0, c1, k(y0), k(y1))
        }
        GroupSpec::CombinedStar(x0, x1) => {
            let (a, b) = (mx(x0), mx(x1));
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => row(10, 2, 2, a, b),
                std::cmp::Ordering::Greater => row(11, 1, 3, a, b),
                std::cmp::Ordering::Less => row(12, 3, 1, a, b),
            }
        }
        _ => None,
    }
}

/// Sum of the last column over the table rows with the given invariants.
pub fn table_formula(c0: u8, c1: u8, k0: Level, k1: Level) -> u64 {
    let p = |e: u64| 1u64 << e;
    match (c0, c1, k0, k1) {
        (0, 0, None, None) => 1,
        (1 | 3, 0, Some(a), None) => p(a as u64),
        (0, 1 | 3, None, Some(b)) => p(b as u64),
        (1, 1, Some(a), Some(b)) | (3, 3, Some(a), Some(b)) => p(boxplus(a as u64, b as u64)),
        (1, 3, Some(a), Some(b)) => p(boxplus(a as u64, b as u64)) * (1 + (a > b) as u64),
        (3, 1, Some(a), Some(b)) => p(boxplus(a as u64, b as u64)) * (1 + (a < b) as u64),
        (2, 2, Some(a), Some(b)) if a == b => p(boxplus(a as u64, b as u64)),
        _ => 0,
    }
}

/// Number of family members (within the bound implied by the `K'` values)
/// whose predicted invariants are the given ones.
pub fn count_by_profile(c0: u8, c1: u8, k0: Level, k1: Level) -> usize {
    let bound = k0.into_iter().chain(k1).max().unwrap_or(0) as u32;
    enumerate_family(bound)
        .iter()
        .filter_map(table_profile)
        .filter(|r| r.c == [c0, c1] && r.k_prime == [k0, k1])
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compatibility_examples() {
        assert!(compatible(&[1], &[1]));
        assert!(compatible(&[0, 2], &[1]));
        assert!(compatible(&[3], &[0, 2]));
        assert!(compatible(&[2], &[1, 3]));
        assert!(!compatible(&[1, 2], &[1]));
    }

    #[test]
    fn family_size() {
        let f = enumerate_family(2);
        assert_eq!(f.len(), 204);
        let pairs: usize = (0..=2).flat_map(|a| (0..=2).map(move |b| compatible_pair_count(a, b))).sum();
        assert_eq!(pairs, 35);
    }

    #[test]
    fn counts() {
        assert_eq!(count_by_profile(1, 1, Some(1), Some(1)), 4);
        assert_eq!(count_by_profile(1, 0, Some(3), None), 8);
        assert_eq!(count_by_profile(1, 3, Some(2), Some(1)), 2 * (1 << boxplus(2, 1)));
    }
}
