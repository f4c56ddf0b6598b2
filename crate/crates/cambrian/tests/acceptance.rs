//! Acceptance suite: the headline theorems and golden examples, checked
//! exhaustively over the desk-scale sweep. One printed line per criterion;
//! run with `cargo test -p cambrian --test acceptance -- --nocapture` to see
//! them.

use std::time::Instant;

use cambrian::congruence::{
    cambrian_congruence, cambrian_pairs, check_lattice_congruence, smallest_congruence,
    ForcingPoset,
};
use cambrian::lattice::Lattice;
use cambrian::projections::{cambrian_lattice, theta_congruence, ProjectionTable};
use cambrian::sortable::coxeter_elements;
use cambrian::verify::verify_group;
use cambrian::{CoxeterMatrix, CoxeterSystem, Element, WeakOrderLattice, Word};

const SWEEP: &[&str] = &["A2", "A3", "A4", "B2", "B3", "D4", "H3", "I2(5)", "I2(7)"];

fn matrix(name: &str) -> CoxeterMatrix {
    match name {
        "A2" => CoxeterMatrix::type_a(2).unwrap(),
        "A3" => CoxeterMatrix::type_a(3).unwrap(),
        "A4" => CoxeterMatrix::type_a(4).unwrap(),
        "B2" => CoxeterMatrix::dihedral(4).unwrap(),
        "B3" => CoxeterMatrix::type_b(3).unwrap(),
        "D4" => CoxeterMatrix::type_d(4).unwrap(),
        "H3" => CoxeterMatrix::type_h(3).unwrap(),
        "I2(5)" => CoxeterMatrix::dihedral(5).unwrap(),
        "I2(7)" => CoxeterMatrix::dihedral(7).unwrap(),
        _ => unreachable!(),
    }
}

fn build(name: &str) -> CoxeterSystem {
    CoxeterSystem::build(&matrix(name), 20_000).unwrap()
}

fn el(sys: &CoxeterSystem, letters: &[u8]) -> Element {
    sys.element_from_word(&Word(letters.to_vec()))
}

#[test]
fn criterion_01_cambrian_equals_theta() {
    for name in SWEEP {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        for ctx in coxeter_elements(&sys) {
            let theta = theta_congruence(&lat, &ctx).unwrap();
            let cambrian = cambrian_congruence(&lat, &ctx);
            assert_eq!(
                cambrian,
                theta,
                "{name} c={}: Cambrian and projection congruences differ",
                ctx.word().render_compact()
            );
        }
    }
    println!("criterion 1 PASS: Cambrian congruence equals the projection congruence on the sweep");
}

#[test]
fn criterion_02_theta_structure() {
    for name in SWEEP {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        for ctx in coxeter_elements(&sys) {
            let theta = theta_congruence(&lat, &ctx).unwrap();
            let table = ProjectionTable::build(&ctx);
            let bottoms: Vec<Element> =
                theta.bottoms.iter().map(|&b| sys.element(b as usize)).collect();
            assert_eq!(bottoms, ctx.sortable_elements(), "{name}: bottoms are not the sortables");
            for (cid, class) in theta.classes.iter().enumerate() {
                for &w in class {
                    let w = sys.element(w as usize);
                    assert_eq!(table.down(w).index(), theta.bottoms[cid] as usize);
                    assert_eq!(table.up(w).index(), theta.tops[cid] as usize);
                }
            }
            assert!(check_lattice_congruence(&lat, &theta).is_ok(), "{name}: three-part test");
        }
    }
    println!("criterion 2 PASS: class bottoms are the sortables and classes are projection intervals");
}

#[test]
fn criterion_03_sortables_closed_under_join_meet() {
    for name in SWEEP {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        for ctx in coxeter_elements(&sys) {
            let sortables = ctx.sortable_elements();
            let set: std::collections::HashSet<Element> = sortables.iter().copied().collect();
            for &x in &sortables {
                for &y in &sortables {
                    assert!(set.contains(&lat.join(x, y)), "{name}: join escapes");
                    assert!(set.contains(&lat.meet(x, y)), "{name}: meet escapes");
                }
            }
        }
    }
    println!("criterion 3 PASS: sortable elements form a sublattice on the sweep");
}

#[test]
fn criterion_04_anti_automorphism_maps_congruences() {
    for name in SWEEP {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        for ctx in coxeter_elements(&sys) {
            let theta = theta_congruence(&lat, &ctx).unwrap();
            let theta_rev = theta_congruence(&lat, &ctx.reversed()).unwrap();
            let mut seen = std::collections::HashSet::new();
            for class in &theta.classes {
                let mapped: Vec<usize> = class
                    .iter()
                    .map(|&w| lat.times_w0(sys.element(w as usize)).index())
                    .collect();
                let target = theta_rev.class_id(mapped[0]);
                assert!(
                    mapped.iter().all(|&x| theta_rev.class_id(x) == target),
                    "{name}: image of a class is not a class"
                );
                assert_eq!(theta_rev.classes[target].len(), mapped.len());
                assert!(seen.insert(target), "{name}: class map is not injective");
            }
            assert_eq!(seen.len(), theta.num_classes());
        }
    }
    println!("criterion 4 PASS: w -> w·w0 carries the congruence onto the reversed-word congruence");
}

#[test]
fn criterion_05_golden_b2() {
    let sys = build("B2");
    let lat = WeakOrderLattice::new(&sys);
    let ctx = cambrian::CoxeterElementContext::new(&sys, Word(vec![0, 1])).unwrap();
    let theta = theta_congruence(&lat, &ctx).unwrap();
    let nontrivial: Vec<&Vec<u32>> = theta.classes.iter().filter(|c| c.len() > 1).collect();
    assert_eq!(nontrivial.len(), 1);
    let mut expected = vec![
        el(&sys, &[1]).index() as u32,
        el(&sys, &[1, 0]).index() as u32,
        el(&sys, &[1, 0, 1]).index() as u32,
    ];
    expected.sort_unstable();
    assert_eq!(nontrivial[0], &expected);

    let sub = cambrian_lattice(&lat, &ctx);
    assert_eq!(sub.len(), 6);
    let mut covers = Vec::new();
    for local in 0..sub.len() {
        for lower in sub.lower_covers(local) {
            covers.push((sub.to_base(lower), sub.to_base(local)));
        }
    }
    covers.sort_unstable();
    let expect_covers: Vec<(usize, usize)> = {
        let mut v = vec![
            (el(&sys, &[]).index(), el(&sys, &[0]).index()),
            (el(&sys, &[]).index(), el(&sys, &[1]).index()),
            (el(&sys, &[0]).index(), el(&sys, &[0, 1]).index()),
            (el(&sys, &[0, 1]).index(), el(&sys, &[0, 1, 0]).index()),
            (el(&sys, &[0, 1, 0]).index(), el(&sys, &[0, 1, 0, 1]).index()),
            (el(&sys, &[1]).index(), el(&sys, &[0, 1, 0, 1]).index()),
        ];
        v.sort_unstable();
        v
    };
    assert_eq!(covers, expect_covers);
    println!("criterion 5 PASS: B2 golden class {{s1, s1s0, s1s0s1}} and the 6-element Cambrian lattice");
}

#[test]
fn criterion_06_golden_a3() {
    // generators here are 0-based: the paper's s1,s2,s3 are s0,s1,s2
    let sys = build("A3");
    let lat = WeakOrderLattice::new(&sys);
    let ctx = cambrian::CoxeterElementContext::new(&sys, Word(vec![1, 0, 2])).unwrap();
    let theta = theta_congruence(&lat, &ctx).unwrap();
    assert_eq!(theta.num_classes(), 14);
    let pairs = vec![
        (el(&sys, &[0]).index(), el(&sys, &[0, 1]).index()),
        (el(&sys, &[2]).index(), el(&sys, &[2, 1]).index()),
    ];
    let generated = smallest_congruence(&lat, &pairs);
    assert_eq!(generated, theta);
    // and those are exactly the Cambrian generating pairs for this word
    let declared: Vec<(usize, usize)> = cambrian_pairs(&ctx)
        .into_iter()
        .map(|(a, b)| (a.index(), b.index()))
        .collect();
    assert_eq!(declared, pairs);
    println!("criterion 6 PASS: A3 congruence is generated by s1=s1s2 and s3=s3s2 with 14 classes");
}

#[test]
fn criterion_07_catalan_counts() {
    let expected: &[(&str, usize)] = &[
        ("A2", 5),
        ("A3", 14),
        ("A4", 42),
        ("B2", 6),
        ("B3", 20),
        ("D4", 50),
        ("H3", 32),
        ("I2(5)", 7),
        ("I2(7)", 9),
    ];
    for &(name, count) in expected {
        let sys = build(name);
        for ctx in coxeter_elements(&sys) {
            assert_eq!(
                ctx.sortable_elements().len(),
                count,
                "{name} c={}",
                ctx.word().render_compact()
            );
        }
    }
    println!("criterion 7 PASS: sortable counts match the Catalan numbers for every Coxeter element");
}

#[test]
fn criterion_08_group_orders() {
    let expected: &[(&str, usize)] = &[
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("B2", 8),
        ("B3", 48),
        ("D4", 192),
        ("H3", 120),
        ("I2(5)", 10),
        ("I2(7)", 14),
    ];
    for &(name, order) in expected {
        assert_eq!(build(name).order(), order, "{name}");
    }
    println!("criterion 8 PASS: group orders match the classification");
}

#[test]
fn criterion_09_property_suites() {
    for name in SWEEP {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        let ctxs = coxeter_elements(&sys);
        let report = verify_group(&lat, &ctxs);
        for line in report.lines() {
            // the congruence-universe oracle only runs on the very small
            // groups (criterion 10 covers it on B2 and A3); everything else
            // must run and pass on the whole sweep
            let allowed_skip = line.starts_with("SKIP congruence-minimality") && sys.order() > 30;
            assert!(line.starts_with("PASS") || allowed_skip, "{name}: {line}");
        }
    }
    println!("criterion 9 PASS: every exhaustive property check passes on the sweep");
}

#[test]
fn criterion_10_minimality_oracle() {
    let start = Instant::now();
    for name in ["B2", "A3"] {
        let sys = build(name);
        let lat = WeakOrderLattice::new(&sys);
        let forcing = ForcingPoset::compute(&lat);
        // the congruence universe: one congruence per order ideal
        let universe: Vec<_> = forcing
            .order_ideals()
            .into_iter()
            .map(|ideal| {
                let pairs: Vec<(usize, usize)> = ideal
                    .iter()
                    .map(|&a| {
                        (forcing.ji[a].lower_cover as usize, forcing.ji[a].element as usize)
                    })
                    .collect();
                smallest_congruence(&lat, &pairs)
            })
            .collect();
        for p in &universe {
            assert!(check_lattice_congruence(&lat, p).is_ok(), "{name}: bad universe member");
        }
        for (i, p) in universe.iter().enumerate() {
            for q in universe.iter().skip(i + 1) {
                assert_ne!(p, q, "{name}: two ideals gave one congruence");
            }
        }
        // the generated congruences to check for refinement-minimality
        let mut generators: Vec<Vec<(usize, usize)>> = coxeter_elements(&sys)
            .iter()
            .map(|c| {
                cambrian_pairs(c).into_iter().map(|(a, b)| (a.index(), b.index())).collect()
            })
            .collect();
        for &(j, j_star) in lat.join_irreducibles() {
            generators.push(vec![(j_star.index(), j.index())]);
        }
        generators.push(vec![(0, sys.order() - 1)]);
        for pairs in &generators {
            let built = smallest_congruence(&lat, pairs);
            assert!(universe.contains(&built), "{name}: generated congruence not in universe");
            for u in &universe {
                if pairs.iter().all(|&(a, b)| u.same_class(a, b)) {
                    assert!(built.refines(u), "{name}: not the refinement-minimum");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "minimality oracle took {elapsed:?}");
    println!("criterion 10 PASS: generated congruences are refinement-minima ({elapsed:?})");
}
