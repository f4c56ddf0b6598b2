//! A minimal finite-lattice abstraction.
//!
//! Nodes are `0..len()`. The weak order implements this directly; parabolic
//! subgroups and Cambrian sublattices are [`SubLattice`] views over it, and
//! congruence quotients implement it over class ids. Node order is assumed
//! compatible with the lattice order in one direction: `a <= b` implies
//! `a` has index at most `b` never holds in general, but every view here
//! keeps nodes sorted by a linear extension, which the congruence engine
//! relies on when picking class bottoms.

use std::collections::HashMap;

pub trait Lattice: Sync {
    fn len(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn join(&self, a: usize, b: usize) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements covered by `a`: the maximal elements strictly below it.
    fn lower_covers(&self, a: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.len())
            .filter(|&b| b != a && self.leq(b, a))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&b| !below.iter().any(|&c| c != b && self.leq(b, c)))
            .collect()
    }

    fn upper_covers(&self, a: usize) -> Vec<usize> {
        let above: Vec<usize> = (0..self.len())
            .filter(|&b| b != a && self.leq(a, b))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&b| !above.iter().any(|&c| c != b && self.leq(c, b)))
            .collect()
    }
}

/// Join-irreducible nodes (exactly one lower cover), paired with that cover.
pub fn join_irreducibles<L: Lattice + ?Sized>(lat: &L) -> Vec<(usize, usize)> {
    (0..lat.len())
        .filter_map(|j| match lat.lower_covers(j).as_slice() {
            [j_star] => Some((j, *j_star)),
            _ => None,
        })
        .collect()
}

/// An induced sublattice on a subset closed under join and meet, such as a
/// standard parabolic subgroup (a lower interval) or the set of sortable
/// elements. Local nodes are `0..members.len()` in ascending base order.
pub struct SubLattice<'a, L: Lattice> {
    base: &'a L,
    members: Vec<usize>,
    local: HashMap<usize, usize>,
}

impl<'a, L: Lattice> SubLattice<'a, L> {
    /// `members` must be sorted ascending and closed under the base join and
    /// meet; closure violations surface as panics on use.
    pub fn new(base: &'a L, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let local = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SubLattice { base, members, local }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn to_local(&self, base_node: usize) -> Option<usize> {
        self.local.get(&base_node).copied()
    }

    pub fn to_base(&self, local_node: usize) -> usize {
        self.members[local_node]
    }
}

impl<L: Lattice> Lattice for SubLattice<'_, L> {
    fn len(&self) -> usize {
        self.members.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.base.leq(self.members[a], self.members[b])
    }

    fn join(&self, a: usize, b: usize) -> usize {
        let j = self.base.join(self.members[a], self.members[b]);
        *self.local.get(&j).expect("subset not closed under join")
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        let m = self.base.meet(self.members[a], self.members[b]);
        *self.local.get(&m).expect("subset not closed under meet")
    }
}
