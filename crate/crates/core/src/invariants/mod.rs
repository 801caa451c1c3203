//! Diagrams and the invariants `c`, `K`, `K'` and `f` of the groups in the
//! classification family.

mod alpha;
mod family;
mod halftree;
mod profile;
mod separate;

pub use alpha::{alpha, alpha_sequence, sequence_shape, sparse_member, AlphaSymbol, BallCache, SequenceShape};
pub use family::{
    compatible, compatible_pair_count, count_by_profile, enumerate_family, nonempty_sets, table_formula,
    table_profile, TableRow,
};
pub use halftree::{half_tree_labelling, HalfTree, HalfTreeError};
pub use profile::{
    check_c2_relations, invariant_profile, FDescriptor, FTable, InvariantProfile, ProfileError, ProfileOptions,
};
pub use separate::{
    complete_invariants_check, invariants_agree, separate_sets, separating_diagram, DiagramSets, Separation,
};

use std::fmt;

use crate::coloring::LegalColoring;
use crate::gf2::BitVec;
use crate::groupspec::{diagram_of_automorphism, SpecError};
use crate::tree_core::{Ball, BallAutomorphism, BallKey};

/// An `e`/`o` labelling of a whole ball (`o` is stored as a set bit). The
/// swap flag records whether the realising automorphism exchanges the two
/// roots of an edge-rooted ball.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    key: BallKey,
    labels: BitVec,
    swap: bool,
}

impl Diagram {
    pub fn new(ball: &Ball, labels: BitVec, swap: bool) -> Diagram {
        assert_eq!(labels.len(), ball.len(), "one label per vertex");
        Diagram { key: ball.key(), labels, swap }
    }

    pub fn all_e(ball: &Ball) -> Diagram {
        Diagram::new(ball, BitVec::zeros(ball.len()), false)
    }

    /// Diagram with `o` exactly at the given vertices.
    pub fn with_o(ball: &Ball, odd: impl IntoIterator<Item = usize>) -> Diagram {
        Diagram::new(ball, BitVec::from_indices(ball.len(), odd), false)
    }

    pub fn key(&self) -> BallKey {
        self.key
    }

    pub fn depth(&self) -> usize {
        self.key.depth
    }

    pub fn labels(&self) -> &BitVec {
        &self.labels
    }

    pub fn swap(&self) -> bool {
        self.swap
    }

    /// True when `v` is labelled `o`.
    pub fn is_odd(&self, v: usize) -> bool {
        self.labels.get(v)
    }

    pub fn set(&mut self, v: usize, odd: bool) {
        self.labels.set(v, odd);
    }

    pub fn odd_vertices(&self) -> Vec<usize> {
        self.labels.ones().collect()
    }

    /// All labels off the outer sphere are `e`.
    pub fn is_e_diagram(&self, ball: &Ball) -> bool {
        if ball.depth() == 0 {
            return true;
        }
        let inner = ball.prefix_len(ball.depth() - 1);
        self.labels.ones().all(|v| v >= inner)
    }

    /// Restriction to the sub-ball of the same kind.
    pub fn restrict(&self, sub: &Ball) -> Diagram {
        assert!(sub.depth() <= self.depth() && sub.root_type() == self.key.root_type);
        Diagram { key: sub.key(), labels: self.labels.truncated(sub.len()), swap: self.swap }
    }

    /// `address=e|o`, one vertex per line.
    pub fn to_text(&self, ball: &Ball) -> String {
        let mut s = String::new();
        for v in 0..ball.len() {
            s.push_str(&format!("{}={}\n", ball.address(v), if self.labels.get(v) { 'o' } else { 'e' }));
        }
        s
    }
}

/// The diagram of `g` (on `B(v, k+1)`) under the coloring `i`: labels on
/// `B(v, k)` recording the parity of each local action.
pub fn diagram_of(ball: &Ball, i: &LegalColoring, g: &BallAutomorphism) -> Result<Diagram, SpecError> {
    diagram_of_automorphism(ball, i, g)
}

/// `a ⊞ b = a + b - ceil(|a - b| / 2)`.
pub fn boxplus(a: u64, b: u64) -> u64 {
    a + b - a.abs_diff(b).div_ceil(2)
}

/// A value of `K` or `K'`, where `None` stands for infinity.
pub type Level = Option<usize>;

pub(crate) fn fmt_level(l: Level) -> String {
    match l {
        Some(k) => k.to_string(),
        None => "inf".into(),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let odd: Vec<String> = self.labels.ones().map(|v| v.to_string()).collect();
        write!(f, "diagram(depth={}, o=[{}], swap={})", self.depth(), odd.join(","), self.swap as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxplus_examples() {
        assert_eq!(boxplus(2, 2), 4);
        assert_eq!(boxplus(3, 1), 3);
        assert_eq!(boxplus(0, 5), 2);
        assert_eq!(boxplus(1, 1), 2);
    }
}
