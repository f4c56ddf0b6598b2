//! The exhaustive property suite.
//!
//! Every check here is a theorem or lemma about sortable elements, the
//! projections, or the Cambrian congruence, verified by direct enumeration on
//! the group at hand. Checks quantified over a Coxeter element run once per
//! context (in parallel across contexts when the `parallel` feature is on);
//! the rest run once per group. Checks whose cost grows like the square of
//! the group order fall back to deterministic pseudo-random sampling on
//! groups with more than a few hundred elements, and the congruence-universe
//! checks only run on very small groups, where enumerating every congruence
//! is feasible.

use std::collections::{HashMap, HashSet};

use crate::bits::GenSet;
use crate::congruence::{
    cambrian_congruence, cambrian_pairs, check_lattice_congruence, contracted_join_irreducibles,
    smallest_congruence, CongruencePartition, ForcingPoset,
};
use crate::lattice::{join_irreducibles, Lattice, SubLattice};
use crate::matrix::CoxeterMatrix;
use crate::par;
use crate::projections::{cambrian_lattice, pi_down, pi_up, theta_congruence, ProjectionTable};
use crate::sortable::CoxeterElementContext;
use crate::system::{CoxeterSystem, Element, Side, Word};
use crate::weak_order::WeakOrderLattice;

/// Congruence-closure checks cost on the order of |W|^3 lattice-word
/// operations per Coxeter element; above this order they are reported as
/// skipped instead of run.
pub const CLOSURE_CHECK_LIMIT: usize = 600;

/// Outcome of one named property check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub failures: usize,
    /// First counterexample, when failing.
    pub detail: Option<String>,
}

impl CheckResult {
    fn skipped(name: &'static str, why: &str) -> Self {
        CheckResult {
            name,
            passed: true,
            skipped: true,
            failures: 0,
            detail: Some(why.to_string()),
        }
    }
}

/// All check outcomes for a verification run.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One `PASS`/`FAIL`/`SKIP` line per property.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                if c.skipped {
                    format!("SKIP {} ({})", c.name, c.detail.as_deref().unwrap_or(""))
                } else if c.passed {
                    format!("PASS {}", c.name)
                } else {
                    let detail = c.detail.as_deref().unwrap_or("");
                    if c.failures > 1 {
                        format!("FAIL {} [{} cases] first: {}", c.name, c.failures, detail)
                    } else {
                        format!("FAIL {} {}", c.name, detail)
                    }
                }
            })
            .collect()
    }
}

struct Check {
    name: &'static str,
    failures: usize,
    first: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, failures: 0, first: None }
    }

    fn expect(&mut self, cond: bool, detail: impl FnOnce() -> String) {
        if !cond {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    fn done(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.failures == 0,
            skipped: false,
            failures: self.failures,
            detail: self.first,
        }
    }
}

/// Deterministic sampler (SplitMix64); verification must not depend on an
/// external seed.
struct Sampler(u64);

impl Sampler {
    fn new() -> Self {
        Sampler(0x9e3779b97f4a7c15)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn word_of(sys: &CoxeterSystem, w: Element) -> String {
    let s = sys.reduced_word(w).render_compact();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

fn simple(sys: &CoxeterSystem, s: u8) -> Element {
    sys.element_from_word(&Word(vec![s]))
}

/// Letters of the canonical reduced word; its size is the degree of a
/// join-irreducible.
fn support(sys: &CoxeterSystem, w: Element) -> GenSet {
    sys.reduced_word(w)
        .letters()
        .iter()
        .fold(GenSet::EMPTY, |g, &a| g.with(a))
}

/// Number of acyclic orientations of the Coxeter diagram, by enumeration.
pub fn acyclic_orientation_count(matrix: &CoxeterMatrix) -> usize {
    let edges = matrix.edges();
    let rank = matrix.rank();
    let mut count = 0;
    for mask in 0u64..(1 << edges.len()) {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); rank];
        for (i, &(s, t, _)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                adj[s as usize].push(t as usize);
            } else {
                adj[t as usize].push(s as usize);
            }
        }
        // Kahn's algorithm
        let mut indeg = vec![0usize; rank];
        for out in &adj {
            for &t in out {
                indeg[t] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..rank).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &t in &adj[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        if seen == rank {
            count += 1;
        }
    }
    count
}

// ---------------------------------------------------------------------------
// group-level checks (independent of the Coxeter element)
// ---------------------------------------------------------------------------

fn check_length_step(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("length-step");
    for w in sys.elements() {
        for s in 0..sys.rank() as u8 {
            for side in [Side::Left, Side::Right] {
                let v = sys.apply_generator(w, s, side);
                c.expect(sys.length(v).abs_diff(sys.length(w)) == 1, || {
                    format!("l changed by != 1 at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_inversion_injective(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("inversion-injective");
    let mut seen = HashSet::new();
    for w in sys.elements() {
        let inv = sys.inversion_set(w);
        c.expect(inv.count() == sys.length(w), || {
            format!("|I(w)| != l(w) at w={}", word_of(sys, w))
        });
        c.expect(seen.insert(inv.clone()), || {
            format!("duplicate inversion set at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_reduced_words(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("reduced-word-roundtrip");
    for w in sys.elements() {
        let word = sys.reduced_word(w);
        c.expect(word.len() == sys.length(w) && sys.element_from_word(&word) == w, || {
            format!("roundtrip failed at w={}", word_of(sys, w))
        });
        let inv = sys.inverse(w);
        c.expect(sys.length(inv) == sys.length(w) && sys.mul(w, inv) == sys.identity(), || {
            format!("inverse failed at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_w0_complement(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("w0-complement");
    let w0 = sys.longest_element();
    for w in sys.elements() {
        let ww0 = sys.mul(w, w0);
        c.expect(lat.times_w0(w) == ww0, || {
            format!("times_w0 table disagrees at w={}", word_of(sys, w))
        });
        c.expect(sys.inversion_set(ww0) == &sys.inversion_set(w).complement(), || {
            format!("I(w w0) != T - I(w) at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_root_action(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("root-action");
    for w in sys.elements() {
        let inv_action = sys.root_action(sys.inverse(w));
        for t in 0..sys.num_reflections() {
            let by_action = inv_action[t] < 0;
            let tw = sys.mul(sys.reflection_element(t), w);
            let by_length = sys.length(tw) < sys.length(w);
            c.expect(
                by_action == by_length && sys.inversion_set(w).contains(t) == by_length,
                || format!("inversion mismatch at w={} t={t}", word_of(sys, w)),
            );
        }
    }
    c.done()
}

fn check_order_agreement(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("order-agreement");
    if sys.order() > 200 {
        return CheckResult::skipped(c.name, "pairwise reachability skipped above 200 elements");
    }
    let n = sys.order();
    for u in 0..n {
        // reachability upward from u in the Hasse diagram
        let mut reach = vec![false; n];
        let mut stack = vec![u];
        reach[u] = true;
        while let Some(x) = stack.pop() {
            for v in Lattice::upper_covers(lat, x) {
                if !reach[v] {
                    reach[v] = true;
                    stack.push(v);
                }
            }
        }
        for v in 0..n {
            c.expect(reach[v] == Lattice::leq(lat, u, v), || {
                format!(
                    "leq and Hasse reachability disagree at u={} v={}",
                    word_of(sys, sys.element(u)),
                    word_of(sys, sys.element(v))
                )
            });
        }
    }
    c.done()
}

fn check_lattice_axioms(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("lattice-axioms");
    let n = sys.order();
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    if n <= 30 {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    triples.push((x, y, z));
                }
            }
        }
    } else {
        let mut rng = Sampler::new();
        for _ in 0..10_000 {
            triples.push((rng.below(n), rng.below(n), rng.below(n)));
        }
    }
    for (x, y, z) in triples {
        let (x, y, z) = (sys.element(x), sys.element(y), sys.element(z));
        let fail = |msg: &str| {
            format!("{msg} at ({}, {}, {})", word_of(sys, x), word_of(sys, y), word_of(sys, z))
        };
        c.expect(lat.join(x, x) == x && lat.meet(x, x) == x, || fail("idempotence"));
        c.expect(
            lat.join(x, y) == lat.join(y, x) && lat.meet(x, y) == lat.meet(y, x),
            || fail("commutativity"),
        );
        c.expect(lat.join(lat.join(x, y), z) == lat.join(x, lat.join(y, z)), || {
            fail("join associativity")
        });
        c.expect(lat.meet(lat.meet(x, y), z) == lat.meet(x, lat.meet(y, z)), || {
            fail("meet associativity")
        });
        c.expect(
            lat.join(x, lat.meet(x, y)) == x && lat.meet(x, lat.join(x, y)) == x,
            || fail("absorption"),
        );
    }
    c.done()
}

fn check_cover_degree(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("cover-degree");
    for w in sys.elements() {
        c.expect(
            lat.upper_covers_of(w).len() == sys.rank() - sys.right_descents(w).count(),
            || format!("up-degree != right non-descents at w={}", word_of(sys, w)),
        );
        c.expect(lat.cover_reflections(w).len() == sys.right_descents(w).count(), || {
            format!("|cov(w)| != right descents at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn sampled_pairs(n: usize, cap: usize) -> Vec<(usize, usize)> {
    if n * n <= cap {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    } else {
        let mut rng = Sampler::new();
        (0..cap).map(|_| (rng.below(n), rng.below(n))).collect()
    }
}

fn check_parabolic_homomorphism(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("parabolic-homomorphism");
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let cap = if sys.order() <= 200 { sys.order() * sys.order() } else { 10_000 };
        for (x, y) in sampled_pairs(sys.order(), cap) {
            let (x, y) = (sys.element(x), sys.element(y));
            let jx = lat.parabolic_projection(x, j);
            let jy = lat.parabolic_projection(y, j);
            c.expect(
                lat.parabolic_projection(lat.join(x, y), j) == lat.join(jx, jy),
                || format!("(x∨y)_J != x_J ∨ y_J at ({}, {}) J=<{s}>", word_of(sys, x), word_of(sys, y)),
            );
            c.expect(
                lat.parabolic_projection(lat.meet(x, y), j) == lat.meet(jx, jy),
                || format!("(x∧y)_J != x_J ∧ y_J at ({}, {}) J=<{s}>", word_of(sys, x), word_of(sys, y)),
            );
        }
    }
    c.done()
}

fn check_parabolic_interval(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("parabolic-interval");
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let w0j = lat.parabolic_projection(sys.longest_element(), j);
        for w in sys.elements() {
            c.expect(sys.in_parabolic(w, j) == lat.leq(w, w0j), || {
                format!("W_<{s}> is not the interval [e, (w0)_J] at w={}", word_of(sys, w))
            });
        }
    }
    c.done()
}

fn check_parabolic_factorization(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("parabolic-factorization");
    let mut subsets: Vec<GenSet> = (0..sys.rank() as u8)
        .map(|s| GenSet::full(sys.rank()).without(s))
        .collect();
    subsets.push(GenSet::full(sys.rank()));
    subsets.push(GenSet::EMPTY);
    for j in subsets {
        let mask = sys.parabolic_reflections(j);
        for w in sys.elements() {
            let (wj, r) = lat.parabolic_factorization(w, j);
            let ok = sys.mul(wj, r) == w
                && sys.in_parabolic(wj, j)
                && j.iter().all(|s| !sys.left_descents(r).contains(s))
                && sys.inversion_set(wj) == &sys.inversion_set(w).intersection(&mask);
            c.expect(ok, || format!("factorization failed at w={} J={j:?}", word_of(sys, w)));
        }
    }
    c.done()
}

fn check_interval_translation(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("interval-translation");
    let n = sys.order();
    let pairs = sampled_pairs(n, if n <= 48 { n * n } else { 4_000 });
    for s in 0..sys.rank() as u8 {
        for &(u, v) in &pairs {
            let (u, v) = (sys.element(u), sys.element(v));
            if !lat.leq(u, v) || !sys.left_descents(u).contains(s) {
                continue;
            }
            let su = sys.apply_generator(u, s, Side::Left);
            let sv = sys.apply_generator(v, s, Side::Left);
            // members of [su, sv] map onto members of [u, v]
            let lower: Vec<Element> = sys
                .elements()
                .filter(|&x| lat.leq(su, x) && lat.leq(x, sv))
                .collect();
            let upper: HashSet<Element> = sys
                .elements()
                .filter(|&x| lat.leq(u, x) && lat.leq(x, v))
                .collect();
            let image: HashSet<Element> =
                lower.iter().map(|&x| sys.apply_generator(x, s, Side::Left)).collect();
            c.expect(image == upper, || {
                format!("s{s}·[su,sv] != [u,v] at u={} v={}", word_of(sys, u), word_of(sys, v))
            });
            // covers inside the lower interval map to covers inside the upper
            for &x in &lower {
                for &y in lat.upper_covers_of(x) {
                    if !lat.leq(y, sv) {
                        continue;
                    }
                    let sx = sys.apply_generator(x, s, Side::Left);
                    let sy = sys.apply_generator(y, s, Side::Left);
                    c.expect(lat.upper_covers_of(sx).contains(&sy), || {
                        format!(
                            "cover {} ⋖ {} not preserved by s{s}",
                            word_of(sys, x),
                            word_of(sys, y)
                        )
                    });
                }
            }
        }
    }
    c.done()
}

fn check_simple_cover_join(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("simple-cover-join");
    for w in sys.elements() {
        let cov = lat.cover_reflections(w);
        for &t in &cov {
            if t >= sys.rank() {
                continue;
            }
            let s = t as u8;
            let j = GenSet::full(sys.rank()).without(s);
            let others_in_wj = cov
                .iter()
                .filter(|&&r| r != t)
                .all(|&r| sys.reflection_support(r).is_subset(j));
            if others_in_wj {
                let wj = lat.parabolic_projection(w, j);
                c.expect(lat.join(simple(sys, s), wj) == w, || {
                    format!("w != s ∨ w_<s> at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_cover_union(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("cover-union");
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let se = simple(sys, s);
        for x in sys.elements() {
            if !sys.in_parabolic(x, j) {
                continue;
            }
            let mut expect = lat.cover_reflections(x);
            expect.push(s as usize);
            expect.sort_unstable();
            c.expect(lat.cover_reflections(lat.join(se, x)) == expect, || {
                format!("cov(s ∨ x) != cov(x) ∪ {{s}} at x={} s={s}", word_of(sys, x))
            });
        }
    }
    c.done()
}

fn check_ji_descent(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("ji-single-descent");
    let single = sys
        .elements()
        .filter(|&w| sys.right_descents(w).count() == 1)
        .count();
    c.expect(lat.join_irreducibles().len() == single, || {
        format!(
            "{} join-irreducibles vs {} single-descent elements",
            lat.join_irreducibles().len(),
            single
        )
    });
    c.done()
}

// ---------------------------------------------------------------------------
// per-context checks
// ---------------------------------------------------------------------------

struct CtxData<'a, 'b> {
    ctx: &'b CoxeterElementContext<'a>,
    sortables: Vec<Element>,
    sortable_set: HashSet<Element>,
    table: ProjectionTable,
    theta: Option<CongruencePartition>,
    /// Absent above [`CLOSURE_CHECK_LIMIT`]; the closure is cubic in |W|.
    cambrian: Option<CongruencePartition>,
}

impl<'a, 'b> CtxData<'a, 'b> {
    fn new(lat: &WeakOrderLattice<'a>, ctx: &'b CoxeterElementContext<'a>) -> Self {
        let sortables = ctx.sortable_elements();
        let sortable_set = sortables.iter().copied().collect();
        let table = ProjectionTable::build(ctx);
        let theta = theta_congruence(lat, ctx).ok();
        let cambrian = (lat.order() <= CLOSURE_CHECK_LIMIT)
            .then(|| cambrian_congruence(lat, ctx));
        CtxData { ctx, sortables, sortable_set, table, theta, cambrian }
    }
}

const CLOSURE_SKIP_NOTE: &str = "closure-based check skipped above the size limit";

fn check_sortable_agreement(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("sortable-agreement");
    for w in sys.elements() {
        c.expect(d.ctx.is_sortable(w) == d.ctx.is_sortable_recursive(w), || {
            format!("tests disagree at w={}", word_of(sys, w))
        });
    }
    c.done()
}

/// Recursive sortability trying every initial letter at every step; all
/// choices must agree.
fn sortable_any_choice(
    ctx: &CoxeterElementContext<'_>,
    w: Element,
    memo: &mut HashMap<(u64, Vec<u8>, u32), bool>,
    agreement: &mut bool,
) -> bool {
    let sys = ctx.system();
    if ctx.generators().is_empty() {
        return w == sys.identity();
    }
    let key = (ctx.generators().bits(), ctx.word().letters().to_vec(), w.0);
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let mut results = Vec::new();
    for s in ctx.initial_letters().iter() {
        let r = if sys.left_descents(w).contains(s) {
            let sw = sys.apply_generator(w, s, Side::Left);
            sortable_any_choice(&ctx.rotate(s).expect("initial"), sw, memo, agreement)
        } else {
            let j = ctx.generators().without(s);
            sys.in_parabolic(w, j) && sortable_any_choice(&ctx.restrict(j), w, memo, agreement)
        };
        results.push(r);
    }
    if results.windows(2).any(|r| r[0] != r[1]) {
        *agreement = false;
    }
    memo.insert(key, results[0]);
    results[0]
}

fn check_sortable_choice_independence(
    lat: &WeakOrderLattice<'_>,
    d: &CtxData<'_, '_>,
) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("sortable-choice-independent");
    if sys.order() > CLOSURE_CHECK_LIMIT {
        return CheckResult::skipped(c.name, "all-choice recursion skipped above the size limit");
    }
    let mut memo = HashMap::new();
    for w in sys.elements() {
        let mut agreement = true;
        let r = sortable_any_choice(d.ctx, w, &mut memo, &mut agreement);
        c.expect(agreement && r == d.ctx.is_sortable(w), || {
            format!("initial-letter choice matters at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_sorting_blocks_invariant(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    use itertools::Itertools;
    let sys = lat.system();
    let mut c = Check::new("sorting-blocks-invariant");
    let letters: Vec<u8> = d.ctx.generators().iter().collect();
    let alternates: Vec<CoxeterElementContext<'_>> = letters
        .iter()
        .copied()
        .permutations(letters.len())
        .filter(|perm| sys.element_from_word(&Word(perm.clone())) == d.ctx.element())
        .map(|perm| CoxeterElementContext::new(sys, Word(perm)).expect("coxeter word"))
        .collect();
    for w in sys.elements() {
        let blocks = d.ctx.sorting_word(w).blocks();
        for alt in &alternates {
            c.expect(alt.sorting_word(w).blocks() == blocks, || {
                format!(
                    "block sequence differs between words {} and {} at w={}",
                    d.ctx.word().render_compact(),
                    alt.word().render_compact(),
                    word_of(sys, w)
                )
            });
        }
    }
    c.done()
}

fn check_sortable_parabolic(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("sortable-parabolic-projection");
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let restricted = d.ctx.restrict(j);
        for &w in &d.sortables {
            let wj = lat.parabolic_projection(w, j);
            c.expect(restricted.is_sortable(wj), || {
                format!("w_J not sortable for restriction at w={} s={s}", word_of(sys, w))
            });
        }
    }
    c.done()
}

fn check_parabolic_sortable_lift(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("parabolic-sortable-lift");
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let restricted = d.ctx.restrict(j);
        for w in sys.elements() {
            if sys.in_parabolic(w, j) && restricted.is_sortable(w) {
                c.expect(d.sortable_set.contains(&w), || {
                    format!("parabolic sortable not sortable in W at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_sortable_cover_sets(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("sortable-cover-sets");
    let mut seen: HashMap<Vec<usize>, Element> = HashMap::new();
    for &w in &d.sortables {
        if let Some(&other) = seen.get(&lat.cover_reflections(w)) {
            c.expect(false, || {
                format!("cov({}) == cov({})", word_of(sys, other), word_of(sys, w))
            });
        } else {
            seen.insert(lat.cover_reflections(w), w);
        }
    }
    c.done()
}

fn check_initial_join_sortable(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("initial-join-sortable");
    for s in d.ctx.initial_letters().iter() {
        let j = GenSet::full(sys.rank()).without(s);
        let sc = d.ctx.rotate(s).expect("initial").restrict(j);
        let se = simple(sys, s);
        for x in sys.elements() {
            if !sys.in_parabolic(x, j) || !sc.is_sortable(x) {
                continue;
            }
            let w = lat.join(se, x);
            let mut expect = lat.cover_reflections(x);
            expect.push(s as usize);
            expect.sort_unstable();
            c.expect(
                d.sortable_set.contains(&w) && lat.cover_reflections(w) == expect,
                || format!("s ∨ x fails at x={} s={s}", word_of(sys, x)),
            );
        }
    }
    c.done()
}

fn check_final_letter_join(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("final-letter-join");
    for s in d.ctx.final_letters().iter() {
        let j = GenSet::full(sys.rank()).without(s);
        for &w in &d.sortables {
            if sys.left_descents(w).contains(s) {
                let wj = lat.parabolic_projection(w, j);
                c.expect(lat.join(wj, simple(sys, s)) == w, || {
                    format!("w != w_<s> ∨ s at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_rotation_bijection(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("rotation-bijection");
    for s in d.ctx.initial_letters().iter() {
        let rotated = d.ctx.rotate(s).expect("initial");
        let j = GenSet::full(sys.rank()).without(s);
        let se = simple(sys, s);
        let lengthened: Vec<Element> = d
            .sortables
            .iter()
            .copied()
            .filter(|&w| !sys.left_descents(w).contains(s))
            .collect();
        let shortened: HashSet<Element> = rotated
            .sortable_elements()
            .into_iter()
            .filter(|&x| sys.left_descents(x).contains(s))
            .collect();
        let mut image = HashSet::new();
        for &w in &lengthened {
            let x = lat.join(se, w);
            c.expect(shortened.contains(&x), || {
                format!("s ∨ w leaves the target set at w={} s={s}", word_of(sys, w))
            });
            c.expect(lat.parabolic_projection(x, j) == w, || {
                format!("x_<s> does not invert s ∨ w at w={} s={s}", word_of(sys, w))
            });
            image.insert(x);
        }
        c.expect(image.len() == lengthened.len() && image == shortened, || {
            format!("w ↦ s ∨ w is not a bijection for s={s}")
        });
    }
    c.done()
}

fn check_pidown_monotone(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("pidown-monotone");
    for y in sys.elements() {
        for &x in lat.lower_covers_of(y) {
            c.expect(lat.leq(d.table.down(x), d.table.down(y)), || {
                format!("π↓ not monotone on {} ⋖ {}", word_of(sys, x), word_of(sys, y))
            });
            c.expect(lat.leq(d.table.up(x), d.table.up(y)), || {
                format!("π↑ not monotone on {} ⋖ {}", word_of(sys, x), word_of(sys, y))
            });
        }
    }
    c.done()
}

fn check_pidown_max(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("pidown-max");
    for w in sys.elements() {
        let p = d.table.down(w);
        c.expect(lat.leq(p, w) && d.table.down(p) == p, || {
            format!("π↓ not a decreasing idempotent at w={}", word_of(sys, w))
        });
        c.expect(d.sortable_set.contains(&p), || {
            format!("π↓(w) not sortable at w={}", word_of(sys, w))
        });
        // brute-force maximum of the sortable elements below w
        let below: Vec<Element> =
            d.sortables.iter().copied().filter(|&x| lat.leq(x, w)).collect();
        let max = below.iter().copied().max_by_key(|&x| x.index());
        let unique = max.is_some_and(|m| below.iter().all(|&x| lat.leq(x, m)));
        c.expect(unique && max == Some(p), || {
            format!("π↓(w) is not the max sortable below w={}", word_of(sys, w))
        });
        c.expect(d.sortable_set.contains(&w) == (p == w), || {
            format!("fixed points of π↓ differ from sortables at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_pidown_choice_independence(
    lat: &WeakOrderLattice<'_>,
    d: &CtxData<'_, '_>,
) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("pidown-choice-independent");
    for s in d.ctx.initial_letters().iter() {
        let rotated = d.ctx.rotate(s).expect("initial");
        let j = GenSet::full(sys.rank()).without(s);
        let restricted = d.ctx.restrict(j);
        for w in sys.elements() {
            let via_s = if sys.left_descents(w).contains(s) {
                let sw = sys.apply_generator(w, s, Side::Left);
                sys.apply_generator(pi_down(&rotated, sw), s, Side::Left)
            } else {
                pi_down(&restricted, lat.parabolic_projection(w, j))
            };
            c.expect(via_s == d.table.down(w), || {
                format!("first step through s{s} changes π↓ at w={}", word_of(sys, w))
            });
        }
    }
    c.done()
}

fn check_sortable_sublattice(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("sortable-sublattice");
    for &x in &d.sortables {
        for &y in &d.sortables {
            c.expect(d.sortable_set.contains(&lat.join(x, y)), || {
                format!("join escapes sortables at ({}, {})", word_of(sys, x), word_of(sys, y))
            });
            c.expect(d.sortable_set.contains(&lat.meet(x, y)), || {
                format!("meet escapes sortables at ({}, {})", word_of(sys, x), word_of(sys, y))
            });
        }
    }
    c.done()
}

/// Upward projection by the letter recursion on final letters; test oracle
/// for the `w0`-conjugation formula.
fn pi_up_recursive(
    lat: &WeakOrderLattice<'_>,
    ctx: &CoxeterElementContext<'_>,
    w: Element,
) -> Element {
    let sys = lat.system();
    if ctx.generators().is_empty() {
        return w;
    }
    let s = ctx.final_letters().iter().next().expect("nonempty context has a final letter");
    if !sys.left_descents(w).contains(s) {
        // s·π↑_{scs}(sw)
        let mut letters = vec![s];
        letters.extend(ctx.word().letters().iter().copied().filter(|&a| a != s));
        let scs = CoxeterElementContext::in_subset(sys, Word(letters), ctx.generators())
            .expect("conjugated Coxeter word");
        let sw = sys.apply_generator(w, s, Side::Left);
        sys.apply_generator(pi_up_recursive(lat, &scs, sw), s, Side::Left)
    } else {
        // π↑_{cs}(w_{<s>}) times the complement factor of the parabolic w0
        let j = ctx.generators().without(s);
        let cs = ctx.restrict(j);
        let wj = lat.parabolic_projection(w, j);
        let sub = pi_up_recursive(lat, &cs, wj);
        let w0j_big = sys
            .element_by_inversions(&sys.parabolic_reflections(ctx.generators()))
            .expect("parabolic longest element");
        let w0j_small = sys
            .element_by_inversions(&sys.parabolic_reflections(j))
            .expect("parabolic longest element");
        let remainder = sys.mul(sys.inverse(w0j_small), w0j_big);
        sys.mul(sub, remainder)
    }
}

fn check_piup_formula(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("piup-formula");
    for w in sys.elements() {
        c.expect(pi_up_recursive(lat, d.ctx, w) == d.table.up(w), || {
            format!("recursive π↑ disagrees at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_piup_max(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("piup-max");
    let w0 = sys.longest_element();
    let rev = d.ctx.reversed();
    let antisortables: Vec<Element> = sys
        .elements()
        .filter(|&w| rev.is_sortable(sys.mul(w, w0)))
        .collect();
    let anti_set: HashSet<Element> = antisortables.iter().copied().collect();
    for w in sys.elements() {
        let p = d.table.up(w);
        c.expect(lat.leq(w, p) && d.table.up(p) == p && anti_set.contains(&p), || {
            format!("π↑ not an increasing idempotent onto antisortables at w={}", word_of(sys, w))
        });
        let above: Vec<Element> =
            antisortables.iter().copied().filter(|&x| lat.leq(w, x)).collect();
        let min = above.iter().copied().min_by_key(|&x| x.index());
        let unique = min.is_some_and(|m| above.iter().all(|&x| lat.leq(m, x)));
        c.expect(unique && min == Some(p), || {
            format!("π↑(w) is not the min antisortable above w={}", word_of(sys, w))
        });
        c.expect(anti_set.contains(&w) == (p == w), || {
            format!("fixed points of π↑ differ from antisortables at w={}", word_of(sys, w))
        });
    }
    c.done()
}

fn check_projection_fibers(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("projection-fibers");
    let mut up_of_down: HashMap<Element, Element> = HashMap::new();
    for w in sys.elements() {
        let entry = up_of_down.entry(d.table.down(w)).or_insert_with(|| d.table.up(w));
        c.expect(*entry == d.table.up(w), || {
            format!("π↑ not constant on a π↓ fiber at w={}", word_of(sys, w))
        });
        c.expect(d.table.up(d.table.down(w)) == d.table.up(w), || {
            format!("π↑∘π↓ != π↑ at w={}", word_of(sys, w))
        });
        c.expect(d.table.down(d.table.up(w)) == d.table.down(w), || {
            format!("π↓∘π↑ != π↓ at w={}", word_of(sys, w))
        });
    }
    let distinct_ups: HashSet<Element> = up_of_down.values().copied().collect();
    c.expect(distinct_ups.len() == up_of_down.len(), || {
        "two π↓ fibers share an upward projection".into()
    });
    c.done()
}

fn check_pidown_final_letter(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("pidown-final-letter");
    for s in d.ctx.final_letters().iter() {
        let j = GenSet::full(sys.rank()).without(s);
        let cs = d.ctx.restrict(j);
        let se = simple(sys, s);
        for w in sys.elements() {
            if sys.left_descents(w).contains(s) {
                let rhs = lat.join(se, pi_down(&cs, lat.parabolic_projection(w, j)));
                c.expect(d.table.down(w) == rhs, || {
                    format!("π↓(w) != s ∨ π↓^cs(w_<s>) at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_piup_initial_letter(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("piup-initial-letter");
    let w0 = sys.longest_element();
    for s in d.ctx.initial_letters().iter() {
        let j = GenSet::full(sys.rank()).without(s);
        let sc = d.ctx.restrict(j);
        let w0j = lat.parabolic_projection(w0, j);
        let remainder = sys.mul(sys.inverse(w0j), w0);
        let sw0 = sys.apply_generator(w0, s, Side::Left);
        for w in sys.elements() {
            if !sys.left_descents(w).contains(s) {
                let up_j = pi_up(&sc, lat.parabolic_projection(w, j));
                let rhs = lat.meet(sw0, sys.mul(up_j, remainder));
                c.expect(d.table.up(w) == rhs, || {
                    format!("π↑(w) != s·w0 ∧ π↑^sc(w_<s>)·r at w={} s={s}", word_of(sys, w))
                });
            }
        }
    }
    c.done()
}

fn check_pidown_cover_transfer(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("pidown-cover-transfer");
    for s in d.ctx.initial_letters().iter() {
        let rotated = d.ctx.rotate(s).expect("initial");
        let rot_table = ProjectionTable::build(&rotated);
        for y in sys.elements() {
            if !sys.left_descents(y).contains(s) {
                continue;
            }
            let sy = sys.apply_generator(y, s, Side::Left);
            for &x in lat.lower_covers_of(y) {
                if x == sy {
                    continue;
                }
                let sx = sys.apply_generator(x, s, Side::Left);
                let lhs = d.table.down(x) == d.table.down(y);
                let rhs = rot_table.down(sx) == rot_table.down(sy);
                c.expect(lhs == rhs, || {
                    format!(
                        "transfer fails on cover {} ⋖ {} with s{s}",
                        word_of(sys, x),
                        word_of(sys, y)
                    )
                });
            }
        }
    }
    c.done()
}

fn check_theta(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> Vec<CheckResult> {
    let sys = lat.system();
    let mut valid = Check::new("theta-congruence-valid");
    let mut bottoms = Check::new("theta-bottoms-sortable");
    match &d.theta {
        None => {
            valid.expect(false, || "theta construction failed its internal checks".into());
        }
        Some(p) => {
            valid.expect(check_lattice_congruence(lat, p).is_ok(), || {
                "theta fails the three-part congruence test".into()
            });
            let bot: Vec<Element> = p.bottoms.iter().map(|&b| sys.element(b as usize)).collect();
            bottoms.expect(bot == d.sortables, || {
                "class bottoms differ from the sortable elements".into()
            });
        }
    }
    vec![valid.done(), bottoms.done()]
}

fn check_theta_anti_map(
    lat: &WeakOrderLattice<'_>,
    d: &CtxData<'_, '_>,
ctx_rev_theta: &CongruencePartition,
) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("theta-anti-map");
    let Some(theta) = &d.theta else {
        c.expect(false, || "theta unavailable".into());
        return c.done();
    };
    // w ↦ w·w0 must carry classes onto classes of the reversed-word congruence
    let mut image_class: HashMap<usize, usize> = HashMap::new();
    for class in &theta.classes {
        let mapped: Vec<usize> = class
            .iter()
            .map(|&w| lat.times_w0(sys.element(w as usize)).index())
            .collect();
        let target = ctx_rev_theta.class_id(mapped[0]);
        c.expect(
            mapped.iter().all(|&x| ctx_rev_theta.class_id(x) == target)
                && ctx_rev_theta.classes[target].len() == mapped.len(),
            || "a class does not map onto a reversed-word class".into(),
        );
        image_class.insert(theta.class_id(class[0] as usize), target);
    }
    let distinct: HashSet<usize> = image_class.values().copied().collect();
    c.expect(distinct.len() == theta.num_classes(), || {
        "class map under w·w0 is not a bijection".into()
    });
    // the induced map on sortables is an order-reversing bijection
    let rev = d.ctx.reversed();
    let rev_sortables: HashSet<Element> = rev.sortable_elements().into_iter().collect();
    let phi: HashMap<Element, Element> = d
        .sortables
        .iter()
        .map(|&x| (x, pi_down(&rev, lat.times_w0(x))))
        .collect();
    c.expect(
        phi.values().all(|v| rev_sortables.contains(v))
            && phi.values().collect::<HashSet<_>>().len() == rev_sortables.len(),
        || "sortables do not biject onto reversed-word sortables".into(),
    );
    for &x in &d.sortables {
        for &y in &d.sortables {
            c.expect(lat.leq(x, y) == lat.leq(phi[&y], phi[&x]), || {
                format!(
                    "order not reversed at ({}, {})",
                    word_of(sys, x),
                    word_of(sys, y)
                )
            });
        }
    }
    c.done()
}

fn check_cambrian_equals_theta(d: &CtxData<'_, '_>) -> CheckResult {
    let mut c = Check::new("cambrian-equals-theta");
    let Some(cambrian) = &d.cambrian else {
        return CheckResult::skipped(c.name, CLOSURE_SKIP_NOTE);
    };
    match &d.theta {
        None => c.expect(false, || "theta unavailable".into()),
        Some(theta) => c.expect(cambrian == theta, || {
            format!(
                "partitions differ: {} Cambrian classes vs {} theta classes",
                cambrian.num_classes(),
                theta.num_classes()
            )
        }),
    }
    c.done()
}

fn check_cambrian_contractions(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> Vec<CheckResult> {
    let sys = lat.system();
    let mut preserves = Check::new("cambrian-preserves-sortable-ji");
    let mut contracts = Check::new("cambrian-contracts-nonsortable-ji");
    let Some(cambrian) = &d.cambrian else {
        return vec![
            CheckResult::skipped(preserves.name, CLOSURE_SKIP_NOTE),
            CheckResult::skipped(contracts.name, CLOSURE_SKIP_NOTE),
        ];
    };
    let contracted: HashSet<usize> =
        contracted_join_irreducibles(lat, cambrian).into_iter().collect();
    for &(j, _) in lat.join_irreducibles() {
        let is_contracted = contracted.contains(&j.index());
        if d.sortable_set.contains(&j) {
            preserves.expect(!is_contracted, || {
                format!("sortable join-irreducible {} contracted", word_of(sys, j))
            });
        } else {
            contracts.expect(is_contracted, || {
                format!("non-sortable join-irreducible {} not contracted", word_of(sys, j))
            });
        }
    }
    vec![preserves.done(), contracts.done()]
}

fn check_cambrian_restriction(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("cambrian-parabolic-restriction");
    let Some(cambrian) = &d.cambrian else {
        return CheckResult::skipped(c.name, CLOSURE_SKIP_NOTE);
    };
    for s in 0..sys.rank() as u8 {
        let j = GenSet::full(sys.rank()).without(s);
        let members: Vec<usize> = sys
            .elements()
            .filter(|&w| sys.in_parabolic(w, j))
            .map(|w| w.index())
            .collect();
        let sub = SubLattice::new(lat, members);
        let restricted = d.ctx.restrict(j);
        let pairs: Vec<(usize, usize)> = cambrian_pairs(&restricted)
            .into_iter()
            .map(|(a, b)| {
                (
                    sub.to_local(a.index()).expect("pair inside W_J"),
                    sub.to_local(b.index()).expect("pair inside W_J"),
                )
            })
            .collect();
        let local = smallest_congruence(&sub, &pairs);
        for (x, x_star) in join_irreducibles(&sub) {
            let ambient_contracted =
                cambrian.same_class(sub.to_base(x), sub.to_base(x_star));
            c.expect(ambient_contracted == local.same_class(x, x_star), || {
                format!(
                    "contraction differs between W and W_<{s}> at x={}",
                    word_of(sys, sys.element(sub.to_base(x)))
                )
            });
        }
    }
    c.done()
}

fn check_cambrian_parabolic_contraction(
    lat: &WeakOrderLattice<'_>,
    d: &CtxData<'_, '_>,
) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("cambrian-parabolic-contraction");
    let Some(cambrian) = &d.cambrian else {
        return CheckResult::skipped(c.name, CLOSURE_SKIP_NOTE);
    };
    for s in d.ctx.initial_letters().iter() {
        let j = GenSet::full(sys.rank()).without(s);
        for &(ji, ji_star) in lat.join_irreducibles() {
            if !sys.left_descents(ji).contains(s) && !sys.in_parabolic(ji, j) {
                c.expect(cambrian.same_class(ji.index(), ji_star.index()), || {
                    format!("join-irreducible {} not contracted (s={s})", word_of(sys, ji))
                });
            }
        }
    }
    c.done()
}

fn check_cambrian_degree2(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("cambrian-degree2-generation");
    let Some(cambrian) = &d.cambrian else {
        return CheckResult::skipped(c.name, CLOSURE_SKIP_NOTE);
    };
    let pairs: Vec<(usize, usize)> = lat
        .join_irreducibles()
        .iter()
        .filter(|&&(j, _)| support(sys, j).count() == 2 && !d.sortable_set.contains(&j))
        .map(|&(j, j_star)| (j_star.index(), j.index()))
        .collect();
    let generated = smallest_congruence(lat, &pairs);
    c.expect(&generated == cambrian, || {
        "smallest congruence from degree-2 non-sortables differs from Cambrian".into()
    });
    c.done()
}

fn check_quotient_isomorphic(lat: &WeakOrderLattice<'_>, d: &CtxData<'_, '_>) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("quotient-isomorphic");
    let Some(theta) = &d.theta else {
        c.expect(false, || "theta unavailable".into());
        return c.done();
    };
    let quotient = match crate::congruence::quotient_lattice(lat, theta) {
        Ok(q) => q,
        Err(e) => {
            c.expect(false, || format!("quotient rejected: {e}"));
            return c.done();
        }
    };
    let sub = cambrian_lattice(lat, d.ctx);
    c.expect(quotient.len() == sub.len(), || {
        format!("{} classes vs {} sortables", quotient.len(), sub.len())
    });
    if quotient.len() == sub.len() {
        // class k has bottom = k-th sortable; compare order, joins, meets
        for a in 0..sub.len() {
            c.expect(theta.bottoms[a] as usize == sub.to_base(a), || {
                format!("class {a} bottom is not the {a}-th sortable")
            });
            for b in 0..sub.len() {
                c.expect(
                    quotient.leq(a, b) == sub.leq(a, b)
                        && quotient.join(a, b) == sub.join(a, b)
                        && quotient.meet(a, b) == sub.meet(a, b),
                    || {
                        format!(
                            "quotient and subposet disagree at ({}, {})",
                            word_of(sys, sys.element(sub.to_base(a))),
                            word_of(sys, sys.element(sub.to_base(b)))
                        )
                    },
                );
            }
        }
    }
    c.done()
}

// ---------------------------------------------------------------------------
// cross-context checks
// ---------------------------------------------------------------------------

fn check_catalan_independence(
    lat: &WeakOrderLattice<'_>,
    counts: &[(String, usize)],
) -> CheckResult {
    let _ = lat;
    let mut c = Check::new("catalan-independent-of-c");
    if let Some((_, first)) = counts.first() {
        for (word, count) in counts {
            c.expect(count == first, || {
                format!("c={word} has {count} sortables but expected {first}")
            });
        }
    }
    c.done()
}

fn check_coxeter_element_count(lat: &WeakOrderLattice<'_>) -> CheckResult {
    let mut c = Check::new("coxeter-element-count");
    let total = crate::sortable::coxeter_elements(lat.system()).len();
    let orientations = acyclic_orientation_count(lat.system().matrix());
    c.expect(total == orientations, || {
        format!("{total} Coxeter elements vs {orientations} acyclic orientations")
    });
    c.done()
}

fn check_congruence_determined(
    lat: &WeakOrderLattice<'_>,
    partitions: &[CongruencePartition],
) -> CheckResult {
    let mut c = Check::new("congruence-determined-by-jis");
    let with_sets: Vec<(Vec<usize>, &CongruencePartition)> = partitions
        .iter()
        .map(|p| (contracted_join_irreducibles(lat, p), p))
        .collect();
    for (i, (set_a, p_a)) in with_sets.iter().enumerate() {
        for (set_b, p_b) in with_sets.iter().skip(i + 1) {
            c.expect((set_a == set_b) == (p_a == p_b), || {
                "contracted-set equality differs from partition equality".into()
            });
        }
    }
    c.done()
}

fn check_congruence_minimality(
    lat: &WeakOrderLattice<'_>,
    generated: &[Vec<(usize, usize)>],
) -> CheckResult {
    let sys = lat.system();
    let mut c = Check::new("congruence-minimality");
    if sys.order() > 30 {
        return CheckResult::skipped(c.name, "congruence universe enumerated only below 31 elements");
    }
    let forcing = ForcingPoset::compute(lat);
    // the congruence universe: one congruence per order ideal of the forcing
    // poset
    let universe: Vec<CongruencePartition> = forcing
        .order_ideals()
        .into_iter()
        .map(|ideal| {
            let pairs: Vec<(usize, usize)> = ideal
                .iter()
                .map(|&a| (forcing.ji[a].lower_cover as usize, forcing.ji[a].element as usize))
                .collect();
            smallest_congruence(lat, &pairs)
        })
        .collect();
    for p in &universe {
        c.expect(check_lattice_congruence(lat, p).is_ok(), || {
            "a universe member fails the congruence test".into()
        });
    }
    // distinct ideals give distinct congruences (Cg is a bijection)
    for (i, p) in universe.iter().enumerate() {
        for q in universe.iter().skip(i + 1) {
            c.expect(p != q, || "two ideals produced the same congruence".into());
        }
    }
    // every generated congruence is the refinement-minimum among universe
    // members containing its pairs
    for pairs in generated {
        let built = smallest_congruence(lat, pairs);
        c.expect(universe.contains(&built), || {
            "generated congruence missing from the universe".into()
        });
        for u in &universe {
            if pairs.iter().all(|&(a, b)| u.same_class(a, b)) {
                c.expect(built.refines(u), || {
                    "generated congruence does not refine a containing congruence".into()
                });
            }
        }
    }
    // degree monotonicity along the forcing order
    let mut degree_check = Check::new("forcing-degree-monotone");
    for a in 0..forcing.len() {
        for b in 0..forcing.len() {
            if forcing.leq[a][b] {
                let da = support(sys, sys.element(forcing.ji[a].element as usize)).count();
                let db = support(sys, sys.element(forcing.ji[b].element as usize)).count();
                degree_check.expect(db <= da, || {
                    format!("degree increases along forcing: ji{a} vs ji{b}")
                });
            }
        }
    }
    let mut result = c.done();
    let degree_result = degree_check.done();
    if !degree_result.passed {
        result.passed = false;
        result.failures += degree_result.failures;
        if result.detail.is_none() {
            result.detail = degree_result.detail;
        }
    }
    result
}

// ---------------------------------------------------------------------------
// drivers
// ---------------------------------------------------------------------------

fn context_checks(lat: &WeakOrderLattice<'_>, ctx: &CoxeterElementContext<'_>) -> Vec<CheckResult> {
    let d = CtxData::new(lat, ctx);
    let rev_theta = theta_congruence(lat, &ctx.reversed())
        .expect("theta for the reversed word");
    let mut out = vec![
        check_sortable_agreement(lat, &d),
        check_sortable_choice_independence(lat, &d),
        check_sorting_blocks_invariant(lat, &d),
        check_sortable_parabolic(lat, &d),
        check_parabolic_sortable_lift(lat, &d),
        check_sortable_cover_sets(lat, &d),
        check_initial_join_sortable(lat, &d),
        check_final_letter_join(lat, &d),
        check_rotation_bijection(lat, &d),
        check_pidown_monotone(lat, &d),
        check_pidown_max(lat, &d),
        check_pidown_choice_independence(lat, &d),
        check_sortable_sublattice(lat, &d),
        check_piup_formula(lat, &d),
        check_piup_max(lat, &d),
        check_projection_fibers(lat, &d),
        check_pidown_final_letter(lat, &d),
        check_piup_initial_letter(lat, &d),
        check_pidown_cover_transfer(lat, &d),
    ];
    out.extend(check_theta(lat, &d));
    out.push(check_theta_anti_map(lat, &d, &rev_theta));
    out.push(check_cambrian_equals_theta(&d));
    out.extend(check_cambrian_contractions(lat, &d));
    out.push(check_cambrian_restriction(lat, &d));
    out.push(check_cambrian_parabolic_contraction(lat, &d));
    out.push(check_cambrian_degree2(lat, &d));
    out.push(check_quotient_isomorphic(lat, &d));
    out
}

fn merge_context_results(
    per_ctx: Vec<(String, Vec<CheckResult>)>,
) -> Vec<CheckResult> {
    let mut merged: Vec<CheckResult> = Vec::new();
    let mut index: HashMap<&'static str, usize> = HashMap::new();
    for (word, results) in per_ctx {
        for r in results {
            match index.get(r.name) {
                None => {
                    index.insert(r.name, merged.len());
                    merged.push(CheckResult {
                        detail: r.detail.map(|d| format!("[c={word}] {d}")),
                        ..r
                    });
                }
                Some(&i) => {
                    merged[i].passed &= r.passed;
                    merged[i].skipped &= r.skipped;
                    merged[i].failures += r.failures;
                    if merged[i].detail.is_none() {
                        merged[i].detail = r.detail.map(|d| format!("[c={word}] {d}"));
                    }
                }
            }
        }
    }
    merged
}

fn run(
    lat: &WeakOrderLattice<'_>,
    contexts: &[CoxeterElementContext<'_>],
    parallel: bool,
) -> Report {
    let mut checks = vec![
        check_length_step(lat),
        check_inversion_injective(lat),
        check_reduced_words(lat),
        check_w0_complement(lat),
        check_root_action(lat),
        check_order_agreement(lat),
        check_lattice_axioms(lat),
        check_cover_degree(lat),
        check_parabolic_homomorphism(lat),
        check_parabolic_interval(lat),
        check_parabolic_factorization(lat),
        check_interval_translation(lat),
        check_simple_cover_join(lat),
        check_cover_union(lat),
        check_ji_descent(lat),
    ];

    let runner = |i: usize| {
        let ctx = &contexts[i];
        (ctx.word().render_compact(), context_checks(lat, ctx))
    };
    let per_ctx = if parallel {
        par::map_indexed(contexts.len(), runner)
    } else {
        par::map_indexed_seq(contexts.len(), runner)
    };
    checks.extend(merge_context_results(per_ctx));

    let counts: Vec<(String, usize)> = contexts
        .iter()
        .map(|c| (c.word().render_compact(), c.sortable_elements().len()))
        .collect();
    checks.push(check_catalan_independence(lat, &counts));
    checks.push(check_coxeter_element_count(lat));

    let thetas: Vec<CongruencePartition> = contexts
        .iter()
        .filter_map(|c| theta_congruence(lat, c).ok())
        .collect();
    let mut partitions = thetas;
    partitions.push(CongruencePartition::identity(lat.order()));
    partitions.push(CongruencePartition::from_labels(lat.order(), |_| 0));
    checks.push(check_congruence_determined(lat, &partitions));

    let mut generated: Vec<Vec<(usize, usize)>> = contexts
        .iter()
        .map(|c| {
            cambrian_pairs(c).into_iter().map(|(a, b)| (a.index(), b.index())).collect()
        })
        .collect();
    if lat.order() <= 30 {
        for &(j, j_star) in lat.join_irreducibles() {
            generated.push(vec![(j_star.index(), j.index())]);
        }
        generated.push(vec![(0, lat.order() - 1)]);
    }
    checks.push(check_congruence_minimality(lat, &generated));

    Report { checks }
}

/// Run the whole suite for the given contexts; per-context work is spread
/// over rayon when the `parallel` feature is on.
pub fn verify_group(lat: &WeakOrderLattice<'_>, contexts: &[CoxeterElementContext<'_>]) -> Report {
    run(lat, contexts, true)
}

/// Always-sequential twin of [`verify_group`], for benchmarking.
pub fn verify_group_seq(
    lat: &WeakOrderLattice<'_>,
    contexts: &[CoxeterElementContext<'_>],
) -> Report {
    run(lat, contexts, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sortable::coxeter_elements;

    #[test]
    fn b2_all_contexts_pass() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::dihedral(4).unwrap(), 1000).unwrap();
        let lat = WeakOrderLattice::new(&sys);
        let ctxs = coxeter_elements(&sys);
        assert_eq!(ctxs.len(), 2);
        let report = verify_group(&lat, &ctxs);
        for line in report.lines() {
            assert!(line.starts_with("PASS"), "{line}");
        }
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(acyclic_orientation_count(&CoxeterMatrix::type_a(3).unwrap()), 4);
        assert_eq!(acyclic_orientation_count(&CoxeterMatrix::type_a(4).unwrap()), 8);
        assert_eq!(acyclic_orientation_count(&CoxeterMatrix::dihedral(7).unwrap()), 2);
        // a single vertex has one (empty) orientation
        assert_eq!(
            acyclic_orientation_count(&CoxeterMatrix::new(1, vec![vec![1]]).unwrap()),
            1
        );
    }
}
