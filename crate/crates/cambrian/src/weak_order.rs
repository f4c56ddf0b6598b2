//! The weak order on a finite Coxeter system.
//!
//! Covers are `w ⋖ ws` when the length goes up; the order itself is inversion
//! set containment, so `leq` is a bitset subset test. Joins are found by
//! scanning elements in index order (which refines length order) for the
//! first one whose inversion set contains `I(x) ∪ I(y)`; meets dually. The
//! scans are linear in the group order, which is the right trade at desk
//! scale.

use crate::bits::GenSet;
use crate::lattice::Lattice;
use crate::system::{CoxeterSystem, Element, Side};

pub struct WeakOrderLattice<'a> {
    sys: &'a CoxeterSystem,
    covers_up: Vec<Vec<Element>>,
    covers_down: Vec<Vec<Element>>,
    join_irr: Vec<(Element, Element)>,
    times_w0: Vec<Element>,
}

impl<'a> WeakOrderLattice<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        let order = sys.order();
        let mut covers_up = vec![Vec::new(); order];
        let mut covers_down = vec![Vec::new(); order];
        for w in sys.elements() {
            for s in 0..sys.rank() as u8 {
                if !sys.right_descents(w).contains(s) {
                    let v = sys.apply_generator(w, s, Side::Right);
                    covers_up[w.index()].push(v);
                    covers_down[v.index()].push(w);
                }
            }
        }
        for c in covers_up.iter_mut().chain(covers_down.iter_mut()) {
            c.sort_unstable();
            c.dedup();
        }
        let join_irr = covers_down
            .iter()
            .enumerate()
            .filter_map(|(j, lower)| match lower.as_slice() {
                [j_star] => Some((Element(j as u32), *j_star)),
                _ => None,
            })
            .collect();
        let times_w0 = sys
            .elements()
            .map(|w| {
                sys.element_by_inversions(&sys.inversion_set(w).complement())
                    .expect("I(w w0) = T - I(w) is an inversion set")
            })
            .collect();
        WeakOrderLattice { sys, covers_up, covers_down, join_irr, times_w0 }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn order(&self) -> usize {
        self.sys.order()
    }

    /// `u <= v` in the weak order: `I(u) ⊆ I(v)`.
    pub fn leq(&self, u: Element, v: Element) -> bool {
        self.sys.inversion_set(u).is_subset(self.sys.inversion_set(v))
    }

    pub fn upper_covers_of(&self, w: Element) -> &[Element] {
        &self.covers_up[w.index()]
    }

    pub fn lower_covers_of(&self, w: Element) -> &[Element] {
        &self.covers_down[w.index()]
    }

    /// Least upper bound.
    pub fn join(&self, x: Element, y: Element) -> Element {
        let target = self
            .sys
            .inversion_set(x)
            .union(self.sys.inversion_set(y));
        let start = x.index().max(y.index());
        for idx in start..self.order() {
            let u = self.sys.element(idx);
            if target.is_subset(self.sys.inversion_set(u)) {
                return u;
            }
        }
        unreachable!("w0 is an upper bound of every pair");
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: Element, y: Element) -> Element {
        let target = self
            .sys
            .inversion_set(x)
            .intersection(self.sys.inversion_set(y));
        let start = x.index().min(y.index());
        for idx in (0..=start).rev() {
            let u = self.sys.element(idx);
            if self.sys.inversion_set(u).is_subset(&target) {
                return u;
            }
        }
        unreachable!("the identity is a lower bound of every pair");
    }

    /// The unique factorization `w = w_J · r` with `w_J` in `W_J` and every
    /// `s` in `J` lengthening `r` on the left.
    pub fn parabolic_factorization(&self, w: Element, j: GenSet) -> (Element, Element) {
        let wj = self.parabolic_projection(w, j);
        let r = self.sys.mul(self.sys.inverse(wj), w);
        (wj, r)
    }

    /// `w_J`, the element of `W_J` with inversion set `I(w) ∩ W_J`.
    pub fn parabolic_projection(&self, w: Element, j: GenSet) -> Element {
        let mask = self.sys.parabolic_reflections(j);
        let bits = self.sys.inversion_set(w).intersection(&mask);
        self.sys
            .element_by_inversions(&bits)
            .expect("I(w) ∩ W_J is the inversion set of w_J")
    }

    /// The antiautomorphism `w ↦ w·w0`.
    pub fn times_w0(&self, w: Element) -> Element {
        self.times_w0[w.index()]
    }

    pub fn cover_reflections(&self, w: Element) -> Vec<usize> {
        self.sys.cover_reflections(w)
    }

    /// Elements with exactly one lower cover, paired with that cover.
    pub fn join_irreducibles(&self) -> &[(Element, Element)] {
        &self.join_irr
    }
}

impl Lattice for WeakOrderLattice<'_> {
    fn len(&self) -> usize {
        self.order()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        WeakOrderLattice::leq(self, self.sys.element(a), self.sys.element(b))
    }

    fn join(&self, a: usize, b: usize) -> usize {
        WeakOrderLattice::join(self, self.sys.element(a), self.sys.element(b)).index()
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        WeakOrderLattice::meet(self, self.sys.element(a), self.sys.element(b)).index()
    }

    fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.covers_down[a].iter().map(|e| e.index()).collect()
    }

    fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.covers_up[a].iter().map(|e| e.index()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;
    use crate::system::Word;

    fn build(m: CoxeterMatrix) -> CoxeterSystem {
        CoxeterSystem::build(&m, 10000).unwrap()
    }

    #[test]
    fn a1_is_a_chain() {
        let sys = build(CoxeterMatrix::new(1, vec![vec![1]]).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        assert_eq!(lat.upper_covers_of(sys.identity()), &[sys.element(1)]);
        assert!(lat.upper_covers_of(sys.element(1)).is_empty());
    }

    #[test]
    fn b2_shape() {
        let sys = build(CoxeterMatrix::dihedral(4).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        // two maximal chains of length 4 sharing bottom and top
        assert_eq!(lat.upper_covers_of(sys.identity()).len(), 2);
        assert_eq!(lat.lower_covers_of(sys.longest_element()).len(), 2);
        let mid: Vec<usize> = sys
            .elements()
            .filter(|&w| sys.length(w) >= 1 && sys.length(w) <= 3)
            .map(|w| lat.upper_covers_of(w).len())
            .collect();
        assert!(mid.iter().all(|&d| d == 1));
    }

    #[test]
    fn a3_edge_count() {
        let sys = build(CoxeterMatrix::type_a(3).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let edges: usize = sys.elements().map(|w| lat.upper_covers_of(w).len()).sum();
        assert_eq!(edges, 36);
        // up-degree equals the number of right non-descents
        for w in sys.elements() {
            assert_eq!(
                lat.upper_covers_of(w).len(),
                sys.rank() - sys.right_descents(w).count()
            );
        }
    }

    #[test]
    fn leq_examples() {
        let sys = build(CoxeterMatrix::dihedral(4).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let e = |letters: &[u8]| sys.element_from_word(&Word(letters.to_vec()));
        for w in sys.elements() {
            assert!(lat.leq(sys.identity(), w));
        }
        assert!(!lat.leq(e(&[0]), e(&[1, 0])));
        assert!(lat.leq(e(&[1]), e(&[1, 0, 1])));
    }

    #[test]
    fn join_meet_examples() {
        let sys = build(CoxeterMatrix::dihedral(4).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let e = |letters: &[u8]| sys.element_from_word(&Word(letters.to_vec()));
        for w in sys.elements() {
            assert_eq!(lat.join(w, sys.identity()), w);
            assert_eq!(lat.meet(w, sys.longest_element()), w);
        }
        assert_eq!(lat.join(e(&[0]), e(&[1])), sys.longest_element());

        let sys = build(CoxeterMatrix::type_a(3).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let e = |letters: &[u8]| sys.element_from_word(&Word(letters.to_vec()));
        let j = lat.join(e(&[0]), e(&[2]));
        assert_eq!(j, e(&[0, 2]));
        assert_eq!(sys.length(j), 2);
    }

    #[test]
    fn parabolic_factorization_examples() {
        let sys = build(CoxeterMatrix::type_a(3).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let full = GenSet::full(3);
        for w in sys.elements() {
            let (wj, r) = lat.parabolic_factorization(w, full);
            assert_eq!((wj, r), (w, sys.identity()));
            let (wj, r) = lat.parabolic_factorization(w, GenSet::EMPTY);
            assert_eq!((wj, r), (sys.identity(), w));
        }
        let j = GenSet::EMPTY.with(0).with(1);
        let w = sys.element_from_word(&Word(vec![0, 1, 2]));
        let (wj, r) = lat.parabolic_factorization(w, j);
        assert_eq!(sys.mul(wj, r), w);
        assert!(sys.in_parabolic(wj, j));
        // every s in J lengthens the remainder on the left
        for s in j.iter() {
            assert!(!sys.left_descents(r).contains(s));
        }
        // w_J is the unique element of W_J with inversion set I(w) ∩ W_J
        let mask = sys.parabolic_reflections(j);
        let expect = sys.inversion_set(w).intersection(&mask);
        assert_eq!(sys.inversion_set(wj), &expect);
    }

    #[test]
    fn times_w0_examples() {
        let sys = build(CoxeterMatrix::dihedral(4).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        assert_eq!(lat.times_w0(sys.identity()), sys.longest_element());
        assert_eq!(lat.times_w0(sys.longest_element()), sys.identity());
        let s0 = sys.element_from_word(&Word(vec![0]));
        assert_eq!(sys.length(lat.times_w0(s0)), 3);
        for w in sys.elements() {
            assert_eq!(lat.times_w0(lat.times_w0(w)), w);
            for v in sys.elements() {
                assert_eq!(lat.leq(w, v), lat.leq(lat.times_w0(v), lat.times_w0(w)));
            }
        }
    }

    #[test]
    fn cover_reflection_counts() {
        let sys = build(CoxeterMatrix::type_a(3).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        assert!(lat.cover_reflections(sys.identity()).is_empty());
        for s in 0..3u8 {
            let g = sys.element_from_word(&Word(vec![s]));
            assert_eq!(lat.cover_reflections(g), vec![s as usize]);
        }
        assert_eq!(lat.cover_reflections(sys.longest_element()).len(), 3);
        for w in sys.elements() {
            assert_eq!(lat.cover_reflections(w).len(), sys.right_descents(w).count());
        }
    }

    #[test]
    fn join_irreducibles_b2() {
        let sys = build(CoxeterMatrix::dihedral(4).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        // all 6 elements of lengths 1..=3
        let ji = lat.join_irreducibles();
        assert_eq!(ji.len(), 6);
        for &(j, j_star) in ji {
            assert!((1..=3).contains(&sys.length(j)));
            assert_eq!(lat.lower_covers_of(j), &[j_star]);
        }
    }

    #[test]
    fn join_irreducibles_are_single_descent() {
        let sys = build(CoxeterMatrix::type_a(3).unwrap());
        let lat = WeakOrderLattice::new(&sys);
        let single = sys
            .elements()
            .filter(|&w| sys.right_descents(w).count() == 1)
            .count();
        assert_eq!(lat.join_irreducibles().len(), single);
    }
}
