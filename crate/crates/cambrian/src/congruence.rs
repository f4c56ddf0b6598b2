//! Lattice congruences on finite lattices: closure from generating pairs,
//! the three-part congruence test, join-irreducible congruences, the forcing
//! order, Cambrian congruences, and quotient lattices.
//!
//! The closure is a union-find fixpoint: every time two classes merge, the
//! merged pair is replayed against every element `z` through `∧z` and `∨z`.
//! That is O(|L|) lattice operations per merge and at most |L|−1 merges,
//! which is plenty fast for the group sizes this crate targets.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{join_irreducibles, Lattice};
use crate::par;
use crate::sortable::CoxeterElementContext;
use crate::system::{Element, Word};
use crate::weak_order::WeakOrderLattice;

/// A partition of lattice nodes into congruence classes. Classes are sorted
/// by their bottom node, members ascending within each class; for a genuine
/// congruence the bottom and top of a class are its interval endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruencePartition {
    pub bottoms: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
    pub tops: Vec<u32>,
    #[serde(skip)]
    pub class_of: Vec<u32>,
}

impl CongruencePartition {
    /// Canonicalize an arbitrary labelling into a partition.
    pub fn from_labels(n: usize, mut label_of: impl FnMut(usize) -> usize) -> Self {
        let mut groups: Vec<Vec<u32>> = Vec::new();
        let mut group_id = std::collections::HashMap::new();
        for x in 0..n {
            let l = label_of(x);
            let id = *group_id.entry(l).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[id].push(x as u32);
        }
        groups.sort_by_key(|g| g[0]);
        let mut class_of = vec![0u32; n];
        for (cid, g) in groups.iter().enumerate() {
            for &x in g {
                class_of[x as usize] = cid as u32;
            }
        }
        let bottoms = groups.iter().map(|g| g[0]).collect();
        let tops = groups.iter().map(|g| *g.last().unwrap()).collect();
        CongruencePartition { bottoms, classes: groups, tops, class_of }
    }

    /// The all-singletons partition.
    pub fn identity(n: usize) -> Self {
        Self::from_labels(n, |x| x)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_id(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// `self` refines `other`: every class of `self` sits inside a class of
    /// `other`.
    pub fn refines(&self, other: &CongruencePartition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.same_class(x as usize, c[0] as usize)))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the roots were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            false
        } else {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
            true
        }
    }
}

/// The finest lattice congruence in which every given pair is equivalent.
pub fn smallest_congruence<L: Lattice + ?Sized>(
    lat: &L,
    pairs: &[(usize, usize)],
) -> CongruencePartition {
    let n = lat.len();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for z in 0..n {
            let (ja, jb) = (lat.join(a, z), lat.join(b, z));
            if uf.union(ja, jb) {
                queue.push_back((ja, jb));
            }
            let (ma, mb) = (lat.meet(a, z), lat.meet(b, z));
            if uf.union(ma, mb) {
                queue.push_back((ma, mb));
            }
        }
    }
    CongruencePartition::from_labels(n, |x| uf.find(x))
}

/// Why a partition fails to be a lattice congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceViolation {
    /// `element` is inside the interval spanned by the class but outside the
    /// class, or a member escapes the interval.
    NotInterval { class: usize, element: usize },
    /// A cover `lower ⋖ upper` whose class bottoms are not ordered.
    BottomNotOrderPreserving { lower: usize, upper: usize },
    /// A cover `lower ⋖ upper` whose class tops are not ordered.
    TopNotOrderPreserving { lower: usize, upper: usize },
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceViolation::NotInterval { class, element } => {
                write!(f, "class {class} is not an interval (witness element {element})")
            }
            CongruenceViolation::BottomNotOrderPreserving { lower, upper } => {
                write!(f, "class-bottom map not order-preserving on cover {lower} ⋖ {upper}")
            }
            CongruenceViolation::TopNotOrderPreserving { lower, upper } => {
                write!(f, "class-top map not order-preserving on cover {lower} ⋖ {upper}")
            }
        }
    }
}

/// The three-part congruence test: classes are intervals and the class-bottom
/// and class-top maps are order-preserving (checked on covers, which implies
/// the general case by transitivity). Returns the first violation found.
pub fn check_lattice_congruence<L: Lattice + ?Sized>(
    lat: &L,
    p: &CongruencePartition,
) -> std::result::Result<(), CongruenceViolation> {
    assert_eq!(p.class_of.len(), lat.len());
    for (cid, class) in p.classes.iter().enumerate() {
        debug_assert!(!class.is_empty());
        let b = p.bottoms[cid] as usize;
        let t = p.tops[cid] as usize;
        for u in 0..lat.len() {
            let inside = lat.leq(b, u) && lat.leq(u, t);
            if inside != (p.class_id(u) == cid) {
                return Err(CongruenceViolation::NotInterval { class: cid, element: u });
            }
        }
    }
    for upper in 0..lat.len() {
        for lower in lat.lower_covers(upper) {
            let (cl, cu) = (p.class_id(lower), p.class_id(upper));
            if !lat.leq(p.bottoms[cl] as usize, p.bottoms[cu] as usize) {
                return Err(CongruenceViolation::BottomNotOrderPreserving { lower, upper });
            }
            if !lat.leq(p.tops[cl] as usize, p.tops[cu] as usize) {
                return Err(CongruenceViolation::TopNotOrderPreserving { lower, upper });
            }
        }
    }
    Ok(())
}

pub fn is_lattice_congruence<L: Lattice + ?Sized>(lat: &L, p: &CongruencePartition) -> bool {
    check_lattice_congruence(lat, p).is_ok()
}

/// `Cg(j)`: the smallest congruence contracting the join-irreducible `j`.
pub fn cg<L: Lattice + ?Sized>(lat: &L, j: usize) -> Result<CongruencePartition> {
    match lat.lower_covers(j).as_slice() {
        [j_star] => Ok(smallest_congruence(lat, &[(*j_star, j)])),
        _ => Err(Error::NotJoinIrreducible(j)),
    }
}

/// Join-irreducibles `j` with `j ≡ j_*` in the partition. A congruence is
/// determined by this set.
pub fn contracted_join_irreducibles<L: Lattice + ?Sized>(
    lat: &L,
    p: &CongruencePartition,
) -> Vec<usize> {
    join_irreducibles(lat)
        .into_iter()
        .filter(|&(j, j_star)| p.same_class(j, j_star))
        .map(|(j, _)| j)
        .collect()
}

/// `j2 ≤Con j1`: every congruence contracting `j1` also contracts `j2`.
pub fn forcing_leq<L: Lattice + ?Sized>(lat: &L, j2: usize, j1: usize) -> Result<bool> {
    if !matches!(lat.lower_covers(j2).as_slice(), [_]) {
        return Err(Error::NotJoinIrreducible(j2));
    }
    let congruence = cg(lat, j1)?;
    Ok(contracted_join_irreducibles(lat, &congruence).contains(&j2))
}

#[derive(Clone, Debug, Serialize)]
pub struct JoinIrreducibleEntry {
    pub element: u32,
    pub lower_cover: u32,
}

/// The forcing order on join-irreducibles, computed by one `Cg` run per
/// join-irreducible. `leq[a][b]` holds when `ji[a] ≤Con ji[b]`.
#[derive(Clone, Debug, Serialize)]
pub struct ForcingPoset {
    pub ji: Vec<JoinIrreducibleEntry>,
    pub leq: Vec<Vec<bool>>,
}

impl ForcingPoset {
    /// Data-parallel over the join-irreducibles when the `parallel` feature
    /// is enabled.
    pub fn compute<L: Lattice + ?Sized>(lat: &L) -> Self {
        Self::build(lat, true)
    }

    /// Always-sequential variant, kept callable so benchmarks can compare it
    /// against [`ForcingPoset::compute`].
    pub fn compute_seq<L: Lattice + ?Sized>(lat: &L) -> Self {
        Self::build(lat, false)
    }

    fn build<L: Lattice + ?Sized>(lat: &L, parallel: bool) -> Self {
        let jis = join_irreducibles(lat);
        let elements: Vec<usize> = jis.iter().map(|&(j, _)| j).collect();
        let k = jis.len();
        // column b: which irreducibles Cg(ji[b]) contracts
        let column = |b: usize| -> Vec<bool> {
            let congruence = cg(lat, elements[b]).expect("vertex is join-irreducible");
            let contracted = contracted_join_irreducibles(lat, &congruence);
            elements.iter().map(|j| contracted.contains(j)).collect()
        };
        let columns = if parallel {
            par::map_indexed(k, column)
        } else {
            par::map_indexed_seq(k, column)
        };
        let leq = (0..k).map(|a| (0..k).map(|b| columns[b][a]).collect()).collect();
        let ji = jis
            .into_iter()
            .map(|(j, j_star)| JoinIrreducibleEntry {
                element: j as u32,
                lower_cover: j_star as u32,
            })
            .collect();
        ForcingPoset { ji, leq }
    }

    pub fn len(&self) -> usize {
        self.ji.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ji.is_empty()
    }

    /// All order ideals, as sorted lists of vertex indices. Feasible only for
    /// small posets; capped at 20 vertices.
    pub fn order_ideals(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        assert!(k <= 20, "order-ideal enumeration capped at 20 join-irreducibles");
        let mut out = Vec::new();
        'mask: for mask in 0u32..(1 << k) {
            for a in 0..k {
                if mask >> a & 1 == 1 {
                    for b in 0..k {
                        if self.leq[b][a] && mask >> b & 1 == 0 {
                            continue 'mask;
                        }
                    }
                }
            }
            out.push((0..k).filter(|&a| mask >> a & 1 == 1).collect());
        }
        out
    }
}

/// The generating pairs of the Cambrian congruence: for each oriented diagram
/// edge `s -> t`, the pair `(t, tst⋯)` with the long word of length
/// `m(s,t) - 1`.
pub fn cambrian_pairs(ctx: &CoxeterElementContext<'_>) -> Vec<(Element, Element)> {
    let sys = ctx.system();
    ctx.orientation()
        .iter()
        .map(|&(s, t)| {
            let m = sys.matrix().entry(s as usize, t as usize) as usize;
            let letters: Vec<u8> = (0..m - 1).map(|i| if i % 2 == 0 { t } else { s }).collect();
            (
                sys.element_from_word(&Word(vec![t])),
                sys.element_from_word(&Word(letters)),
            )
        })
        .collect()
}

/// The Cambrian congruence of the full weak order for this Coxeter element.
pub fn cambrian_congruence(
    lat: &WeakOrderLattice<'_>,
    ctx: &CoxeterElementContext<'_>,
) -> CongruencePartition {
    let pairs: Vec<(usize, usize)> = cambrian_pairs(ctx)
        .into_iter()
        .map(|(a, b)| (a.index(), b.index()))
        .collect();
    smallest_congruence(lat, &pairs)
}

/// The quotient of a lattice by a congruence: nodes are class ids, ordered by
/// class bottoms, with joins and meets through representatives.
pub struct QuotientLattice<'a, L: Lattice + ?Sized> {
    base: &'a L,
    partition: &'a CongruencePartition,
}

impl<'a, L: Lattice + ?Sized> QuotientLattice<'a, L> {
    pub fn partition(&self) -> &CongruencePartition {
        self.partition
    }
}

pub fn quotient_lattice<'a, L: Lattice + ?Sized>(
    lat: &'a L,
    p: &'a CongruencePartition,
) -> Result<QuotientLattice<'a, L>> {
    check_lattice_congruence(lat, p).map_err(|v| Error::NotACongruence(v.to_string()))?;
    Ok(QuotientLattice { base: lat, partition: p })
}

impl<L: Lattice + ?Sized> Lattice for QuotientLattice<'_, L> {
    fn len(&self) -> usize {
        self.partition.num_classes()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.base
            .leq(self.partition.bottoms[a] as usize, self.partition.bottoms[b] as usize)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        let j = self
            .base
            .join(self.partition.bottoms[a] as usize, self.partition.bottoms[b] as usize);
        self.partition.class_id(j)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        let m = self
            .base
            .meet(self.partition.bottoms[a] as usize, self.partition.bottoms[b] as usize);
        self.partition.class_id(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;
    use crate::system::CoxeterSystem;

    fn b2() -> CoxeterSystem {
        CoxeterSystem::build(&CoxeterMatrix::dihedral(4).unwrap(), 1000).unwrap()
    }

    fn el(sys: &CoxeterSystem, letters: &[u8]) -> usize {
        sys.element_from_word(&Word(letters.to_vec())).index()
    }

    #[test]
    fn empty_pairs_give_identity_congruence() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let p = smallest_congruence(&lat, &[]);
        assert_eq!(p.num_classes(), 8);
        assert!(is_lattice_congruence(&lat, &p));
    }

    #[test]
    fn b2_generated_class() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let s1 = el(&sys, &[1]);
        let s1s0s1 = el(&sys, &[1, 0, 1]);
        let p = smallest_congruence(&lat, &[(s1, s1s0s1)]);
        assert_eq!(p.num_classes(), 6);
        let mut expect = vec![s1 as u32, el(&sys, &[1, 0]) as u32, s1s0s1 as u32];
        expect.sort_unstable();
        assert_eq!(p.classes[p.class_id(s1)], expect);
        assert_eq!(p.classes.iter().filter(|c| c.len() > 1).count(), 1);
        assert!(is_lattice_congruence(&lat, &p));
    }

    #[test]
    fn full_pair_collapses_everything() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let p = smallest_congruence(&lat, &[(0, sys.longest_element().index())]);
        assert_eq!(p.num_classes(), 1);
    }

    #[test]
    fn congruence_test_examples() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        assert!(is_lattice_congruence(&lat, &CongruencePartition::identity(8)));

        let s0 = el(&sys, &[0]);
        let s1 = el(&sys, &[1]);
        // {s0, s1} is not an interval
        let bad = CongruencePartition::from_labels(8, |x| if x == s0 || x == s1 { 99 } else { x });
        match check_lattice_congruence(&lat, &bad) {
            Err(CongruenceViolation::NotInterval { .. }) => {}
            other => panic!("expected interval violation, got {other:?}"),
        }
    }

    #[test]
    fn cg_on_b2() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let s1 = el(&sys, &[1]);
        let s1s0 = el(&sys, &[1, 0]);
        let s1s0s1 = el(&sys, &[1, 0, 1]);
        // in rank two the long join-irreducibles force only themselves
        // (cross-checked against a brute-force enumeration of all 19
        // congruences of the B2 weak order)
        let contracted = contracted_join_irreducibles(&lat, &cg(&lat, s1s0).unwrap());
        assert_eq!(contracted, vec![s1s0]);
        let contracted = contracted_join_irreducibles(&lat, &cg(&lat, s1s0s1).unwrap());
        assert_eq!(contracted, vec![s1s0s1]);
        // contracting an atom forces every longer join-irreducible
        let contracted = contracted_join_irreducibles(&lat, &cg(&lat, s1).unwrap());
        assert_eq!(contracted.len(), 5);
        // the identity is not join-irreducible
        assert!(matches!(cg(&lat, 0), Err(Error::NotJoinIrreducible(0))));
    }

    #[test]
    fn contracted_sets() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        assert!(contracted_join_irreducibles(&lat, &CongruencePartition::identity(8)).is_empty());
        let full = smallest_congruence(&lat, &[(0, 7)]);
        assert_eq!(contracted_join_irreducibles(&lat, &full).len(), 6);
    }

    #[test]
    fn forcing_examples() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let s1 = el(&sys, &[1]);
        let s1s0 = el(&sys, &[1, 0]);
        let s1s0s1 = el(&sys, &[1, 0, 1]);
        assert!(forcing_leq(&lat, s1s0, s1s0).unwrap());
        // atoms are maximal in the forcing order; the longer irreducibles
        // sit below them, pairwise incomparable
        assert!(forcing_leq(&lat, s1s0, s1).unwrap());
        assert!(forcing_leq(&lat, s1s0s1, s1).unwrap());
        assert!(!forcing_leq(&lat, s1s0s1, s1s0).unwrap());
        assert!(!forcing_leq(&lat, s1s0, s1s0s1).unwrap());
        assert!(!forcing_leq(&lat, s1, s1s0).unwrap());
        assert!(matches!(forcing_leq(&lat, 0, s1), Err(Error::NotJoinIrreducible(0))));
    }

    #[test]
    fn forcing_poset_and_ideals() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let fp = ForcingPoset::compute(&lat);
        assert_eq!(fp.len(), 6);
        let seq = ForcingPoset::compute_seq(&lat);
        assert_eq!(fp.leq, seq.leq);
        let ideals = fp.order_ideals();
        assert!(ideals.contains(&vec![]));
        assert!(ideals.contains(&(0..6).collect::<Vec<_>>()));
        // every ideal yields a genuine congruence
        for ideal in &ideals {
            let pairs: Vec<(usize, usize)> = ideal
                .iter()
                .map(|&a| (fp.ji[a].lower_cover as usize, fp.ji[a].element as usize))
                .collect();
            let p = smallest_congruence(&lat, &pairs);
            assert!(is_lattice_congruence(&lat, &p));
        }
    }

    #[test]
    fn cambrian_pairs_a3() {
        let a3 = CoxeterSystem::build(&CoxeterMatrix::type_a(3).unwrap(), 100).unwrap();
        let ctx = CoxeterElementContext::new(&a3, Word(vec![1, 0, 2])).unwrap();
        let pairs: Vec<(usize, usize)> = cambrian_pairs(&ctx)
            .into_iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (el(&a3, &[0]), el(&a3, &[0, 1])),
                (el(&a3, &[2]), el(&a3, &[2, 1])),
            ]
        );
    }

    #[test]
    fn no_edges_no_merging() {
        let m = CoxeterMatrix::new(2, vec![vec![1, 2], vec![2, 1]]).unwrap();
        let sys = CoxeterSystem::build(&m, 100).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let ctx = CoxeterElementContext::new(&sys, Word(vec![0, 1])).unwrap();
        let p = cambrian_congruence(&lat, &ctx);
        assert_eq!(p.num_classes(), sys.order());
    }

    #[test]
    fn quotient_views() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let p = CongruencePartition::identity(8);
        let q = quotient_lattice(&lat, &p).unwrap();
        assert_eq!(q.len(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(q.leq(a, b), Lattice::leq(&lat, a, b));
                assert_eq!(q.join(a, b), Lattice::join(&lat, a, b));
            }
        }

        let full = smallest_congruence(&lat, &[(0, 7)]);
        let q = quotient_lattice(&lat, &full).unwrap();
        assert_eq!(q.len(), 1);

        let s0 = el(&sys, &[0]);
        let s1 = el(&sys, &[1]);
        let bad = CongruencePartition::from_labels(8, |x| if x == s0 || x == s1 { 99 } else { x });
        assert!(matches!(quotient_lattice(&lat, &bad), Err(Error::NotACongruence(_))));
    }
}
