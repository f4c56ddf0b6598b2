//! Coxeter elements, sorting words, and sortable elements.
//!
//! A context fixes a Coxeter element of a standard parabolic subgroup `W_J`
//! as a word using each generator of `J` exactly once. Parabolic restriction
//! keeps elements inside the ambient table, so rotations and restrictions of
//! contexts are cheap and element identities are stable across recursion
//! levels.

use crate::bits::GenSet;
use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Element, Side, Word};

/// A Coxeter element of `W_J`, carried as a word.
#[derive(Clone)]
pub struct CoxeterElementContext<'a> {
    sys: &'a CoxeterSystem,
    gens: GenSet,
    word: Word,
    element: Element,
    initial: GenSet,
    finals: GenSet,
    orientation: Vec<(u8, u8)>,
}

impl<'a> CoxeterElementContext<'a> {
    /// Context for a Coxeter element of the whole group: `word` must use each
    /// generator exactly once.
    pub fn new(sys: &'a CoxeterSystem, word: Word) -> Result<Self> {
        Self::in_subset(sys, word, GenSet::full(sys.rank()))
    }

    /// Context over the parabolic subgroup on `gens`.
    pub fn in_subset(sys: &'a CoxeterSystem, word: Word, gens: GenSet) -> Result<Self> {
        let mut seen = GenSet::EMPTY;
        for &a in word.letters() {
            if (a as usize) >= sys.rank() || !gens.contains(a) {
                return Err(Error::NotACoxeterWord(format!(
                    "letter s{a} is outside the generator set"
                )));
            }
            if seen.contains(a) {
                return Err(Error::NotACoxeterWord(format!("letter s{a} repeats")));
            }
            seen = seen.with(a);
        }
        if seen != gens {
            let missing: Vec<String> = gens
                .iter()
                .filter(|&s| !seen.contains(s))
                .map(|s| format!("s{s}"))
                .collect();
            return Err(Error::NotACoxeterWord(format!(
                "missing letters {}",
                missing.join(", ")
            )));
        }

        let letters = word.letters();
        let m = |a: u8, b: u8| sys.matrix().entry(a as usize, b as usize);
        let mut initial = GenSet::EMPTY;
        let mut finals = GenSet::EMPTY;
        for (p, &a) in letters.iter().enumerate() {
            if letters[..p].iter().all(|&b| m(a, b) == 2) {
                initial = initial.with(a);
            }
            if letters[p + 1..].iter().all(|&b| m(a, b) == 2) {
                finals = finals.with(a);
            }
        }
        let mut orientation = Vec::new();
        for (p, &a) in letters.iter().enumerate() {
            for &b in &letters[p + 1..] {
                if m(a, b) >= 3 {
                    orientation.push((a, b));
                }
            }
        }
        orientation.sort_unstable();

        let element = sys.element_from_word(&word);
        Ok(CoxeterElementContext { sys, gens, word, element, initial, finals, orientation })
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn generators(&self) -> GenSet {
        self.gens
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn element(&self) -> Element {
        self.element
    }

    pub fn initial_letters(&self) -> GenSet {
        self.initial
    }

    pub fn final_letters(&self) -> GenSet {
        self.finals
    }

    pub fn lowest_initial(&self) -> Option<u8> {
        self.initial.iter().next()
    }

    /// Directed diagram edges `s -> t`: `s` precedes `t` in every reduced
    /// word of the Coxeter element (noncommuting pairs only).
    pub fn orientation(&self) -> &[(u8, u8)] {
        &self.orientation
    }

    /// The context of `scs` for an initial letter `s`: the letter moves from
    /// the front to the back of the word.
    pub fn rotate(&self, s: u8) -> Result<Self> {
        if !self.initial.contains(s) {
            return Err(Error::NotInitial(s));
        }
        let mut letters: Vec<u8> =
            self.word.letters().iter().copied().filter(|&a| a != s).collect();
        letters.push(s);
        Self::in_subset(self.sys, Word(letters), self.gens)
    }

    /// Restriction to `W_J`: delete the letters outside `j`.
    pub fn restrict(&self, j: GenSet) -> Self {
        let keep = self.gens.intersection(j);
        let letters: Vec<u8> = self
            .word
            .letters()
            .iter()
            .copied()
            .filter(|&a| keep.contains(a))
            .collect();
        Self::in_subset(self.sys, Word(letters), keep)
            .expect("restriction of a Coxeter word is a Coxeter word")
    }

    /// Context of the inverse Coxeter element (reversed word).
    pub fn reversed(&self) -> Self {
        let mut letters = self.word.letters().to_vec();
        letters.reverse();
        Self::in_subset(self.sys, Word(letters), self.gens)
            .expect("reversal of a Coxeter word is a Coxeter word")
    }

    /// The sorting word of `w`: the lexicographically first reduced subword
    /// of the repeated Coxeter word. Greedy form: peel letters off the left
    /// of the residual whenever they are left descents.
    ///
    /// `w` must lie in `W_J` for this context's `J`.
    pub fn sorting_word(&self, w: Element) -> SortingWord {
        let sys = self.sys;
        let mut residual = w;
        let mut letters = Vec::with_capacity(sys.length(w));
        let mut dividers = Vec::new();
        while residual != sys.identity() {
            let before = letters.len();
            for &a in self.word.letters() {
                if sys.left_descents(residual).contains(a) {
                    letters.push(a);
                    residual = sys.apply_generator(residual, a, Side::Left);
                }
            }
            assert!(
                letters.len() > before,
                "element is not in the parabolic subgroup of this context"
            );
            if residual != sys.identity() {
                dividers.push(letters.len());
            }
        }
        SortingWord { word: Word(letters), dividers }
    }

    /// Sortability via the sorting word: the block subsets must be weakly
    /// decreasing under inclusion.
    pub fn is_sortable(&self, w: Element) -> bool {
        let blocks = self.sorting_word(w).blocks();
        blocks.windows(2).all(|b| b[1].is_subset(b[0]))
    }

    /// Sortability via the inductive characterization: strip an initial
    /// letter when it shortens `w`, otherwise descend to the parabolic
    /// subgroup without it.
    pub fn is_sortable_recursive(&self, w: Element) -> bool {
        let sys = self.sys;
        if self.gens.is_empty() {
            return w == sys.identity();
        }
        let s = self.lowest_initial().expect("nonempty context has an initial letter");
        if sys.left_descents(w).contains(s) {
            let sw = sys.apply_generator(w, s, Side::Left);
            self.rotate(s).expect("s is initial").is_sortable_recursive(sw)
        } else {
            let j = self.gens.without(s);
            sys.in_parabolic(w, j) && self.restrict(j).is_sortable_recursive(w)
        }
    }

    /// All sortable elements of `W_J`, in element-index order.
    pub fn sortable_elements(&self) -> Vec<Element> {
        self.sys
            .elements()
            .filter(|&w| self.sys.in_parabolic(w, self.gens) && self.is_sortable(w))
            .collect()
    }
}

/// A reduced word split into blocks by dividers, one block per pass through
/// the Coxeter word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingWord {
    word: Word,
    dividers: Vec<usize>,
}

impl SortingWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn dividers(&self) -> &[usize] {
        &self.dividers
    }

    /// The letter sets of the blocks, in order.
    pub fn blocks(&self) -> Vec<GenSet> {
        let letters = self.word.letters();
        if letters.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.dividers.len() + 1);
        let mut start = 0;
        for &d in &self.dividers {
            out.push(letters[start..d].iter().fold(GenSet::EMPTY, |g, &a| g.with(a)));
            start = d;
        }
        out.push(letters[start..].iter().fold(GenSet::EMPTY, |g, &a| g.with(a)));
        out
    }

    /// Render as `s0 s1 | s0`.
    pub fn render_spaced(&self) -> String {
        self.render(|s| format!("s{s}"), " ", " | ")
    }

    /// Render as `01|0`, matching the digit convention for small ranks.
    pub fn render_compact(&self) -> String {
        if self.word.letters().iter().all(|&s| s < 10) {
            self.render(|s| s.to_string(), "", "|")
        } else {
            self.render(|s| s.to_string(), ".", "|")
        }
    }

    fn render(&self, letter: impl Fn(u8) -> String, sep: &str, div: &str) -> String {
        let letters = self.word.letters();
        let mut parts = Vec::new();
        let mut start = 0;
        for &d in self.dividers.iter().chain(std::iter::once(&letters.len())) {
            if start < d {
                parts.push(
                    letters[start..d].iter().map(|&a| letter(a)).collect::<Vec<_>>().join(sep),
                );
            }
            start = d;
        }
        parts.join(div)
    }
}

/// Every Coxeter element of the system, each with its lexicographically
/// smallest word. Enumerates all single-occurrence words and deduplicates by
/// group element (words for the same element differ only by commutations).
pub fn coxeter_elements(sys: &CoxeterSystem) -> Vec<CoxeterElementContext<'_>> {
    use itertools::Itertools;

    let rank = sys.rank();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for perm in (0..rank as u8).permutations(rank) {
        let word = Word(perm);
        let c = sys.element_from_word(&word);
        if seen.insert(c) {
            out.push(
                CoxeterElementContext::new(sys, word).expect("permutation word is a Coxeter word"),
            );
        }
    }
    out
}
