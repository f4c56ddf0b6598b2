//! Construction of a finite Coxeter group from its matrix, with exact element
//! arithmetic.
//!
//! The build runs in two phases. First the positive roots are closed up from
//! the simple roots under the reflections `σ_s(v) = v − 2B(v,α_s)α_s`, where
//! `B(α_s,α_t) = −cos(π/m(s,t))`. Root coordinates are machine reals and two
//! roots are identified when all coordinates agree within 1e-8; finite groups
//! keep their roots well separated at the ranks supported here. Second, each
//! simple generator is turned into an exact signed permutation of the positive
//! roots, and the elements are enumerated by breadth-first search over right
//! multiplication. From that point on all arithmetic is integral: an element
//! is identified by its inversion set, stored as a bitset over the
//! reflections, never by floating-point data.
//!
//! The BFS visits elements in shortlex order (by length, then lexicographic
//! smallest reduced word), so element indices are deterministic: index 0 is
//! the identity and the last index is the longest element `w0`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::bits::{Bitset, GenSet};
use crate::error::{Error, Result};
use crate::matrix::CoxeterMatrix;

const ROOT_EPS: f64 = 1e-8;

/// An element of a [`CoxeterSystem`], addressed by its table index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Which side to multiply a generator on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A word in the simple generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse a word: either comma-separated letters (`s0,s1` or `0,1`) or a
    /// compact digit string (`01`). Divider bars `|` are accepted and ignored.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '|').collect();
        let mut letters: Vec<usize> = Vec::new();
        if cleaned.is_empty() {
            return Ok(Word(Vec::new()));
        }
        if cleaned.contains(',') || cleaned.contains('s') {
            for tok in cleaned.split(',') {
                let tok = tok.strip_prefix('s').unwrap_or(tok);
                let n: usize = tok
                    .parse()
                    .map_err(|_| Error::BadWord(format!("bad generator {tok:?} in {text:?}")))?;
                letters.push(n);
            }
        } else {
            for c in cleaned.chars() {
                let n = c
                    .to_digit(10)
                    .ok_or_else(|| Error::BadWord(format!("bad character {c:?} in {text:?}")))?;
                letters.push(n as usize);
            }
        }
        letters
            .into_iter()
            .map(|n| {
                if n < rank {
                    Ok(n as u8)
                } else {
                    Err(Error::BadWord(format!("generator s{n} out of range for rank {rank}")))
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    /// Render as `s0 s1 s0`; the identity renders as the empty string.
    pub fn render_spaced(&self) -> String {
        self.0
            .iter()
            .map(|s| format!("s{s}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Render as a digit string, `010`; letters above 9 are dot-separated.
    pub fn render_compact(&self) -> String {
        if self.0.iter().all(|&s| s < 10) {
            self.0.iter().map(|s| s.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A finite Coxeter group: positive roots, reflections, and the full element
/// table. Immutable once built; reads are safe from any number of threads.
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    rank: usize,
    /// Positive roots in simple-root coordinates; the first `rank` are simple.
    roots: Vec<Vec<f64>>,
    lengths: Vec<u32>,
    inversions: Vec<Bitset>,
    left_desc: Vec<GenSet>,
    right_desc: Vec<GenSet>,
    /// Flattened `order x rank` right-multiplication table.
    right: Vec<u32>,
    /// Flattened `order x rank` left-multiplication table.
    left: Vec<u32>,
    inverse: Vec<u32>,
    /// Flattened `order x |T|` signed permutation each element induces on the
    /// positive roots: entry `±(j+1)` means root `i` maps to `±root j`.
    root_action: Vec<i32>,
    /// Reflection index -> the group element acting as that reflection.
    refl_element: Vec<u32>,
    /// Reflection index -> the set of letters of its reduced words.
    refl_support: Vec<GenSet>,
    by_inversions: HashMap<Bitset, u32>,
    parabolic_cache: RwLock<HashMap<u64, Arc<Bitset>>>,
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("rank", &self.rank)
            .field("order", &self.order())
            .field("reflections", &self.num_reflections())
            .finish_non_exhaustive()
    }
}

fn apply_signed(perm: &[i32], v: i32) -> i32 {
    if v > 0 {
        perm[(v - 1) as usize]
    } else {
        -perm[(-v - 1) as usize]
    }
}

impl CoxeterSystem {
    /// Build the group, failing if the root closure diverges (infinite group)
    /// or the element count exceeds `max_order`.
    pub fn build(matrix: &CoxeterMatrix, max_order: usize) -> Result<CoxeterSystem> {
        let rank = matrix.rank();
        let gram: Vec<Vec<f64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| -(std::f64::consts::PI / matrix.entry(i, j) as f64).cos())
                    .collect()
            })
            .collect();

        // Phase 1: close the simple roots under the simple reflections. The
        // cap scales with the largest matrix entry so that large dihedral
        // groups (m positive roots) stay within it.
        let max_entry = (0..rank)
            .flat_map(|i| (0..rank).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| matrix.entry(i, j))
            .max()
            .unwrap_or(1) as usize;
        let cap = (10 * rank * rank).max(rank * rank * max_entry);

        let mut roots: Vec<Vec<f64>> = (0..rank)
            .map(|s| (0..rank).map(|t| if s == t { 1.0 } else { 0.0 }).collect())
            .collect();
        let reflect = |v: &[f64], s: usize| -> Vec<f64> {
            let b: f64 = (0..rank).map(|t| v[t] * gram[t][s]).sum();
            let mut img = v.to_vec();
            img[s] -= 2.0 * b;
            img
        };
        let find = |roots: &[Vec<f64>], v: &[f64]| -> Option<usize> {
            roots
                .iter()
                .position(|r| r.iter().zip(v).all(|(a, b)| (a - b).abs() < ROOT_EPS))
        };

        let mut i = 0;
        while i < roots.len() {
            for s in 0..rank {
                let img = reflect(&roots[i], s);
                if img.iter().all(|&c| c >= -ROOT_EPS) {
                    if find(&roots, &img).is_none() {
                        roots.push(img);
                        if roots.len() > cap {
                            return Err(Error::RootClosureDiverged { cap });
                        }
                    }
                } else {
                    debug_assert!(img.iter().all(|&c| c <= ROOT_EPS), "root with mixed signs");
                }
            }
            i += 1;
        }
        let nt = roots.len();

        // Exact signed permutations of the positive roots, one per generator.
        let mut simple_perm: Vec<Vec<i32>> = Vec::with_capacity(rank);
        for s in 0..rank {
            let mut perm = Vec::with_capacity(nt);
            for r in &roots {
                let img = reflect(r, s);
                let signed = if img.iter().all(|&c| c >= -ROOT_EPS) {
                    find(&roots, &img).map(|j| (j + 1) as i32)
                } else {
                    let neg: Vec<f64> = img.iter().map(|c| -c).collect();
                    find(&roots, &neg).map(|j| -((j + 1) as i32))
                };
                perm.push(signed.ok_or_else(|| {
                    Error::InternalInvariant("reflected root matches no root".into())
                })?);
            }
            simple_perm.push(perm);
        }

        // Phase 2: BFS over right multiplication. For each element we carry
        // its own action on roots and the action of its inverse; the latter
        // yields the inversion set, which keys the element table.
        let ident_perm: Vec<i32> = (1..=nt as i32).collect();
        let mut perms: Vec<Vec<i32>> = vec![ident_perm.clone()];
        let mut inv_perms: Vec<Vec<i32>> = vec![ident_perm];
        let mut lengths: Vec<u32> = vec![0];
        let mut inversions: Vec<Bitset> = vec![Bitset::new(nt)];
        let mut by_inversions: HashMap<Bitset, u32> = HashMap::new();
        by_inversions.insert(Bitset::new(nt), 0);
        let mut right: Vec<u32> = Vec::new();

        let mut w = 0usize;
        while w < perms.len() {
            right.resize((w + 1) * rank, 0);
            for s in 0..rank {
                let sp = &simple_perm[s];
                // (ws)^{-1} = s w^{-1}: apply s after w^{-1}.
                let inv_p: Vec<i32> = inv_perms[w].iter().map(|&v| apply_signed(sp, v)).collect();
                let mut bits = Bitset::new(nt);
                for (t, &v) in inv_p.iter().enumerate() {
                    if v < 0 {
                        bits.insert(t);
                    }
                }
                let v = match by_inversions.get(&bits) {
                    Some(&v) => v,
                    None => {
                        let v = perms.len() as u32;
                        if perms.len() >= max_order {
                            return Err(Error::OrderCapExceeded { max_order });
                        }
                        let perm: Vec<i32> =
                            sp.iter().map(|&x| apply_signed(&perms[w], x)).collect();
                        lengths.push(bits.count() as u32);
                        by_inversions.insert(bits.clone(), v);
                        inversions.push(bits);
                        perms.push(perm);
                        inv_perms.push(inv_p);
                        v
                    }
                };
                right[w * rank + s] = v;
            }
            w += 1;
        }
        drop(inv_perms);

        let order = perms.len();
        debug_assert!(inversions[order - 1].count() == nt, "w0 must invert all of T");

        // Derived tables: inverses via the forward action, then left
        // multiplication as sw = (w^{-1} s)^{-1}.
        let mut inverse: Vec<u32> = Vec::with_capacity(order);
        for p in &perms {
            let mut bits = Bitset::new(nt);
            for (t, &v) in p.iter().enumerate() {
                if v < 0 {
                    bits.insert(t);
                }
            }
            inverse.push(*by_inversions.get(&bits).ok_or_else(|| {
                Error::InternalInvariant("inverse element missing from table".into())
            })?);
        }
        let mut left = vec![0u32; order * rank];
        for w in 0..order {
            for s in 0..rank {
                left[w * rank + s] =
                    inverse[right[inverse[w] as usize * rank + s] as usize];
            }
        }

        let mut left_desc = Vec::with_capacity(order);
        let mut right_desc = Vec::with_capacity(order);
        for w in 0..order {
            let mut ld = GenSet::EMPTY;
            let mut rd = GenSet::EMPTY;
            for s in 0..rank {
                if inversions[w].contains(s) {
                    ld = ld.with(s as u8);
                }
                if perms[w][s] < 0 {
                    rd = rd.with(s as u8);
                }
            }
            left_desc.push(ld);
            right_desc.push(rd);
        }

        let root_action: Vec<i32> = perms.into_iter().flatten().collect();

        let mut sys = CoxeterSystem {
            matrix: matrix.clone(),
            rank,
            roots,
            lengths,
            inversions,
            left_desc,
            right_desc,
            right,
            left,
            inverse,
            root_action,
            refl_element: Vec::new(),
            refl_support: Vec::new(),
            by_inversions,
            parabolic_cache: RwLock::new(HashMap::new()),
        };

        // Reflections as elements: t = w s w^{-1} is the reflection in the
        // root w(α_s), read off from the root action.
        let mut refl_element = vec![u32::MAX; nt];
        let mut remaining = nt;
        'outer: for w in 0..order {
            for s in 0..rank {
                let t = (sys.root_action(Element(w as u32))[s].unsigned_abs() - 1) as usize;
                if refl_element[t] == u32::MAX {
                    let ws = Element(sys.right[w * rank + s]);
                    refl_element[t] = sys.mul(ws, Element(sys.inverse[w])).0;
                    remaining -= 1;
                    if remaining == 0 {
                        break 'outer;
                    }
                }
            }
        }
        debug_assert!(refl_element.iter().all(|&e| e != u32::MAX));
        sys.refl_element = refl_element;
        sys.refl_support = (0..nt)
            .map(|t| {
                let mut set = GenSet::EMPTY;
                for &a in sys.reduced_word(Element(sys.refl_element[t])).letters() {
                    set = set.with(a);
                }
                set
            })
            .collect();
        Ok(sys)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of group elements.
    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    /// Number of reflections, which equals the number of positive roots.
    pub fn num_reflections(&self) -> usize {
        self.roots.len()
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    /// The longest element `w0`, whose inversion set is all of `T`.
    pub fn longest_element(&self) -> Element {
        Element(self.order() as u32 - 1)
    }

    pub fn element(&self, index: usize) -> Element {
        assert!(index < self.order(), "element index {index} out of range");
        Element(index as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as u32).map(Element)
    }

    pub fn length(&self, w: Element) -> usize {
        self.lengths[w.index()] as usize
    }

    /// The left inversion set `I(w) = {t in T : l(tw) < l(w)}`.
    pub fn inversion_set(&self, w: Element) -> &Bitset {
        &self.inversions[w.index()]
    }

    pub fn element_by_inversions(&self, bits: &Bitset) -> Option<Element> {
        self.by_inversions.get(bits).map(|&i| Element(i))
    }

    pub fn left_descents(&self, w: Element) -> GenSet {
        self.left_desc[w.index()]
    }

    pub fn right_descents(&self, w: Element) -> GenSet {
        self.right_desc[w.index()]
    }

    /// Multiply by a generator on the given side; the length moves by exactly 1.
    pub fn apply_generator(&self, w: Element, s: u8, side: Side) -> Element {
        assert!((s as usize) < self.rank, "generator s{s} out of range");
        let table = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        Element(table[w.index() * self.rank + s as usize])
    }

    /// Evaluate a word, reduced or not.
    pub fn element_from_word(&self, word: &Word) -> Element {
        let mut e = self.identity();
        for &a in word.letters() {
            e = self.apply_generator(e, a, Side::Right);
        }
        e
    }

    /// The lexicographically smallest reduced word (shortlex), obtained by
    /// repeatedly peeling the smallest left descent.
    pub fn reduced_word(&self, w: Element) -> Word {
        let mut letters = Vec::with_capacity(self.length(w));
        let mut cur = w;
        loop {
            let ld = self.left_descents(cur);
            match ld.iter().next() {
                None => break,
                Some(s) => {
                    letters.push(s);
                    cur = self.apply_generator(cur, s, Side::Left);
                }
            }
        }
        Word(letters)
    }

    pub fn inverse(&self, w: Element) -> Element {
        Element(self.inverse[w.index()])
    }

    /// Group product `a·b`.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let mut e = a;
        for &s in self.reduced_word(b).letters() {
            e = self.apply_generator(e, s, Side::Right);
        }
        e
    }

    /// The signed permutation `w` induces on positive roots.
    pub fn root_action(&self, w: Element) -> &[i32] {
        let nt = self.num_reflections();
        &self.root_action[w.index() * nt..(w.index() + 1) * nt]
    }

    /// Cover reflections of `w`: the reflections `t` with `tw = ws ⋖ w`,
    /// one per right descent `s`, namely the reflection in the root `w(α_s)`.
    pub fn cover_reflections(&self, w: Element) -> Vec<usize> {
        let action = self.root_action(w);
        let mut out: Vec<usize> = self
            .right_descents(w)
            .iter()
            .map(|s| (action[s as usize].unsigned_abs() - 1) as usize)
            .collect();
        out.sort_unstable();
        out
    }

    /// The group element acting as reflection `t`.
    pub fn reflection_element(&self, t: usize) -> Element {
        Element(self.refl_element[t])
    }

    /// Letters appearing in the reduced words of reflection `t`; this is the
    /// smallest `J` with `t` in `W_J`.
    pub fn reflection_support(&self, t: usize) -> GenSet {
        self.refl_support[t]
    }

    pub fn root(&self, t: usize) -> &[f64] {
        &self.roots[t]
    }

    /// Reflections lying in the standard parabolic subgroup `W_J`, cached per
    /// `J`. Racing fills compute identical values, so the cache behaves as if
    /// filled once.
    pub fn parabolic_reflections(&self, j: GenSet) -> Arc<Bitset> {
        if let Some(hit) = self.parabolic_cache.read().unwrap().get(&j.bits()) {
            return Arc::clone(hit);
        }
        let mut bits = Bitset::new(self.num_reflections());
        for t in 0..self.num_reflections() {
            if self.refl_support[t].is_subset(j) {
                bits.insert(t);
            }
        }
        let arc = Arc::new(bits);
        let mut cache = self.parabolic_cache.write().unwrap();
        Arc::clone(cache.entry(j.bits()).or_insert(arc))
    }

    /// Membership test `w ∈ W_J`, by inversion-set containment.
    pub fn in_parabolic(&self, w: Element, j: GenSet) -> bool {
        self.inversion_set(w).is_subset(&self.parabolic_reflections(j))
    }
}
