//! The downward and upward projections onto sortable and antisortable
//! elements, and the congruence their fibers induce.
//!
//! The downward projection follows the rank-and-length recursion: strip an
//! initial letter of the Coxeter word while it shortens the element, descend
//! into the parabolic subgroup without it otherwise. Parabolic recursion
//! works inside the ambient element table throughout, and results are
//! memoized per (generator subset, Coxeter word) context because the
//! recursion revisits parabolic subproblems heavily.
//!
//! The upward projection is defined through the antiautomorphism
//! `w ↦ w·w0`: project `w·w0` downward for the inverse Coxeter element and
//! multiply by `w0` again. The letter-by-letter recursion for it exists only
//! as a test oracle.

use std::collections::HashMap;

use crate::bits::GenSet;
use crate::congruence::{check_lattice_congruence, CongruencePartition};
use crate::error::{Error, Result};
use crate::lattice::SubLattice;
use crate::sortable::CoxeterElementContext;
use crate::system::{CoxeterSystem, Element, Side};
use crate::weak_order::WeakOrderLattice;

#[derive(Clone, PartialEq, Eq, Hash)]
struct CtxKey {
    gens: u64,
    word: Vec<u8>,
}

struct CtxState {
    word: Vec<u8>,
    gens: GenSet,
    lowest_initial: Option<u8>,
    memo: HashMap<u32, u32>,
}

/// Memoizing evaluator for the downward projection across a family of
/// rotated and restricted contexts.
struct DownEngine<'a> {
    sys: &'a CoxeterSystem,
    ids: HashMap<CtxKey, usize>,
    ctxs: Vec<CtxState>,
}

impl<'a> DownEngine<'a> {
    fn new(sys: &'a CoxeterSystem) -> Self {
        DownEngine { sys, ids: HashMap::new(), ctxs: Vec::new() }
    }

    fn ctx_id(&mut self, gens: GenSet, word: Vec<u8>) -> usize {
        let key = CtxKey { gens: gens.bits(), word: word.clone() };
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let m = |a: u8, b: u8| self.sys.matrix().entry(a as usize, b as usize);
        let lowest_initial = word
            .iter()
            .enumerate()
            .filter(|&(p, &a)| word[..p].iter().all(|&b| m(a, b) == 2))
            .map(|(_, &a)| a)
            .min();
        let id = self.ctxs.len();
        self.ctxs.push(CtxState { word, gens, lowest_initial, memo: HashMap::new() });
        self.ids.insert(key, id);
        id
    }

    fn project(&mut self, cid: usize, w: Element) -> Element {
        let sys = self.sys;
        if w == sys.identity() {
            return w;
        }
        if let Some(&r) = self.ctxs[cid].memo.get(&w.0) {
            return Element(r);
        }
        let s = self.ctxs[cid]
            .lowest_initial
            .expect("a non-identity element needs a nonempty context");
        let result = if sys.left_descents(w).contains(s) {
            // s·π↓^{scs}(sw)
            let sw = sys.apply_generator(w, s, Side::Left);
            let mut word: Vec<u8> =
                self.ctxs[cid].word.iter().copied().filter(|&a| a != s).collect();
            word.push(s);
            let rotated = self.ctx_id(self.ctxs[cid].gens, word);
            let sub = self.project(rotated, sw);
            sys.apply_generator(sub, s, Side::Left)
        } else {
            // π↓^{sc}(w_{⟨s⟩}), computed in the parabolic subgroup
            let gens = self.ctxs[cid].gens.without(s);
            let word: Vec<u8> =
                self.ctxs[cid].word.iter().copied().filter(|&a| a != s).collect();
            let mask = sys.parabolic_reflections(gens);
            let bits = sys.inversion_set(w).intersection(&mask);
            let wj = sys
                .element_by_inversions(&bits)
                .expect("parabolic projection exists");
            let restricted = self.ctx_id(gens, word);
            self.project(restricted, wj)
        };
        self.ctxs[cid].memo.insert(w.0, result.0);
        result
    }
}

/// `π↓(w)`: the unique maximal sortable element weakly below `w`. The element
/// must lie in the context's parabolic subgroup.
pub fn pi_down(ctx: &CoxeterElementContext<'_>, w: Element) -> Element {
    let sys = ctx.system();
    debug_assert!(sys.in_parabolic(w, ctx.generators()));
    let mut engine = DownEngine::new(sys);
    let cid = engine.ctx_id(ctx.generators(), ctx.word().letters().to_vec());
    engine.project(cid, w)
}

/// The maximum of the parabolic subgroup `W_J`: the element whose inversion
/// set is all of `W_J`'s reflections.
fn parabolic_longest(sys: &CoxeterSystem, j: GenSet) -> Element {
    let mask = sys.parabolic_reflections(j);
    sys.element_by_inversions(&mask)
        .expect("W_J has a longest element")
}

/// `π↑(w)`: the unique minimal antisortable element weakly above `w`,
/// computed as `π↓` of `w·w0` for the reversed Coxeter word, times `w0`.
/// Within a parabolic context, `w0` means the parabolic longest element.
pub fn pi_up(ctx: &CoxeterElementContext<'_>, w: Element) -> Element {
    let sys = ctx.system();
    debug_assert!(sys.in_parabolic(w, ctx.generators()));
    let w0j = parabolic_longest(sys, ctx.generators());
    let rev = ctx.reversed();
    let down = pi_down(&rev, sys.mul(w, w0j));
    sys.mul(down, w0j)
}

/// Both projections tabulated over the whole group.
pub struct ProjectionTable {
    down: Vec<Element>,
    up: Vec<Element>,
}

impl ProjectionTable {
    /// Requires a context over the full generator set.
    pub fn build(ctx: &CoxeterElementContext<'_>) -> Self {
        let sys = ctx.system();
        assert_eq!(
            ctx.generators(),
            GenSet::full(sys.rank()),
            "projection tables are built over the full group"
        );
        let mut engine = DownEngine::new(sys);
        let cid = engine.ctx_id(ctx.generators(), ctx.word().letters().to_vec());
        let down: Vec<Element> = sys.elements().map(|w| engine.project(cid, w)).collect();

        let w0 = sys.longest_element();
        let rev = ctx.reversed();
        let mut engine = DownEngine::new(sys);
        let cid = engine.ctx_id(rev.generators(), rev.word().letters().to_vec());
        let up: Vec<Element> = sys
            .elements()
            .map(|w| {
                let d = engine.project(cid, sys.mul(w, w0));
                sys.mul(d, w0)
            })
            .collect();
        ProjectionTable { down, up }
    }

    pub fn down(&self, w: Element) -> Element {
        self.down[w.index()]
    }

    pub fn up(&self, w: Element) -> Element {
        self.up[w.index()]
    }

    pub fn downs(&self) -> &[Element] {
        &self.down
    }

    pub fn ups(&self) -> &[Element] {
        &self.up
    }
}

/// The congruence whose classes are the fibers of `π↓`, certified on the way
/// out: fibers must be intervals `[π↓(w), π↑(w)]` agreeing with the fibers of
/// `π↑`, and the partition must pass the three-part congruence test. Any
/// failure is an implementation bug, reported as `InternalInvariant`.
pub fn theta_congruence(
    lat: &WeakOrderLattice<'_>,
    ctx: &CoxeterElementContext<'_>,
) -> Result<CongruencePartition> {
    let sys = ctx.system();
    let table = ProjectionTable::build(ctx);
    let p = CongruencePartition::from_labels(sys.order(), |w| table.down[w].index());
    for (cid, class) in p.classes.iter().enumerate() {
        for &w in class {
            let w = Element(w);
            if table.down(w).index() != p.bottoms[cid] as usize {
                return Err(Error::InternalInvariant(format!(
                    "class bottom differs from the downward projection at element {}",
                    w.index()
                )));
            }
            if table.up(w).index() != p.tops[cid] as usize {
                return Err(Error::InternalInvariant(format!(
                    "class top differs from the upward projection at element {}",
                    w.index()
                )));
            }
        }
    }
    check_lattice_congruence(lat, &p)
        .map_err(|v| Error::InternalInvariant(format!("projection fibers: {v}")))?;
    Ok(p)
}

/// The weak order restricted to the sortable elements. Closed under join and
/// meet, hence a genuine sublattice; covers inside the subposet are the
/// quotient covers.
pub fn cambrian_lattice<'a>(
    lat: &'a WeakOrderLattice<'a>,
    ctx: &CoxeterElementContext<'_>,
) -> SubLattice<'a, WeakOrderLattice<'a>> {
    let members = ctx.sortable_elements().iter().map(|e| e.index()).collect();
    SubLattice::new(lat, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::matrix::CoxeterMatrix;
    use crate::system::Word;

    fn b2() -> CoxeterSystem {
        CoxeterSystem::build(&CoxeterMatrix::dihedral(4).unwrap(), 1000).unwrap()
    }

    fn ctx<'a>(sys: &'a CoxeterSystem, letters: &[u8]) -> CoxeterElementContext<'a> {
        CoxeterElementContext::new(sys, Word(letters.to_vec())).unwrap()
    }

    #[test]
    fn pi_down_examples() {
        let sys = b2();
        let c = ctx(&sys, &[0, 1]);
        let e = |l: &[u8]| sys.element_from_word(&Word(l.to_vec()));
        assert_eq!(pi_down(&c, sys.identity()), sys.identity());
        assert_eq!(pi_down(&c, e(&[1, 0])), e(&[1]));
        assert_eq!(pi_down(&c, e(&[1, 0, 1])), e(&[1]));
        for &w in &c.sortable_elements() {
            assert_eq!(pi_down(&c, w), w);
        }
    }

    #[test]
    fn pi_up_examples() {
        let sys = b2();
        let c = ctx(&sys, &[0, 1]);
        let e = |l: &[u8]| sys.element_from_word(&Word(l.to_vec()));
        assert_eq!(pi_up(&c, sys.longest_element()), sys.longest_element());
        assert_eq!(pi_up(&c, e(&[1])), e(&[1, 0, 1]));
        for w in sys.elements() {
            assert_eq!(pi_up(&c, pi_down(&c, w)), pi_up(&c, w));
        }
    }

    #[test]
    fn tables_match_single_shots() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::type_a(3).unwrap(), 1000).unwrap();
        let c = ctx(&sys, &[1, 0, 2]);
        let table = ProjectionTable::build(&c);
        for w in sys.elements() {
            assert_eq!(table.down(w), pi_down(&c, w));
            assert_eq!(table.up(w), pi_up(&c, w));
        }
    }

    #[test]
    fn theta_on_b2() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let c = ctx(&sys, &[0, 1]);
        let p = theta_congruence(&lat, &c).unwrap();
        assert_eq!(p.num_classes(), 6);
        let e = |l: &[u8]| sys.element_from_word(&Word(l.to_vec())).index();
        let nontrivial: Vec<&Vec<u32>> = p.classes.iter().filter(|c| c.len() > 1).collect();
        assert_eq!(nontrivial.len(), 1);
        let mut expect = vec![e(&[1]) as u32, e(&[1, 0]) as u32, e(&[1, 0, 1]) as u32];
        expect.sort_unstable();
        assert_eq!(nontrivial[0], &expect);
    }

    #[test]
    fn theta_on_a1() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::new(1, vec![vec![1]]).unwrap(), 10).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let c = ctx(&sys, &[0]);
        let p = theta_congruence(&lat, &c).unwrap();
        assert_eq!(p.num_classes(), 2);
        assert!(p.classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn theta_class_count_is_sortable_count() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::type_a(3).unwrap(), 1000).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let c = ctx(&sys, &[1, 0, 2]);
        let p = theta_congruence(&lat, &c).unwrap();
        assert_eq!(p.num_classes(), 14);
        let bottoms: Vec<Element> = p.bottoms.iter().map(|&b| sys.element(b as usize)).collect();
        assert_eq!(bottoms, c.sortable_elements());
    }

    #[test]
    fn cambrian_lattice_b2() {
        let sys = b2();
        let lat = WeakOrderLattice::new(&sys);
        let c = ctx(&sys, &[0, 1]);
        let sub = cambrian_lattice(&lat, &c);
        assert_eq!(sub.len(), 6);
        // join and meet stay inside the sortables
        for a in 0..6 {
            for b in 0..6 {
                let _ = sub.join(a, b);
                let _ = sub.meet(a, b);
            }
        }
    }
}
