//! End-to-end checks of the theta pipeline against independent computations.

use std::cmp::Ordering;

use mixed_turan::constructions::{brute_force_max, family_for_matrix, family_is_equivalent, bk_matrix};
use mixed_turan::format::{emit_family, emit_matrix, parse_family, parse_matrix};
use mixed_turan::graph::Relation;
use mixed_turan::named::*;
use mixed_turan::numeric::{int, rat};
use mixed_turan::theta::{in_unit_window, theta_by_candidates};
use mixed_turan::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn value_of(f: &[MixedGraph]) -> AlgebraicNumber {
    theta(f).unwrap().value.unwrap()
}

#[test]
fn oracle_stays_below_engine_bound() {
    for f in [arrow_clique(3), clique(3)] {
        let fam = vec![f];
        let th = value_of(&fam).as_rational().cloned().unwrap();
        let rho = &th - rat(1, 10);
        let n = 5;
        let rep = brute_force_max(&fam, &rho, n).unwrap();
        let slack = int(1) + int(2) * &rho / int(n as i64);
        assert!(rep.best_value <= slack, "{} > {}", rep.best_value, slack);
        assert!(!is_subgraph(&fam[0], &rep.witness));
    }
}

#[test]
fn oracle_optimum_exceeds_one_above_threshold() {
    // Above θ a free graph with weighted density beyond one already exists at
    // small n for the directed triangle.
    let fam = vec![arrow_clique(3)];
    let rep = brute_force_max(&fam, &rat(5, 2), 4).unwrap();
    assert!(rep.best_value > int(1));
}

fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let rel = match rng.gen_range(0..10) {
                0 => Relation::None,
                1..=3 => Relation::Undirected,
                4..=6 => Relation::Out,
                _ => Relation::In,
            };
            g.set_relation(a, b, rel);
        }
    }
    g
}

#[test]
fn supersaturation_smoke() {
    let f = arrow_clique(3);
    let rho = value_of(std::slice::from_ref(&f)).as_rational().cloned().unwrap() + rat(1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut trials = 0;
    while trials < 100 {
        let g = random_dense(&mut rng, 12);
        if g.densities().unwrap().weighted_density(&rho) < rat(5, 4) {
            continue;
        }
        trials += 1;
        assert!(count_embeddings(&f, &g) >= 1);
    }
}

#[test]
fn closed_form_agrees_with_candidates() {
    // One directed edge: the closed form and the template search are
    // independent routes to the same number.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 25 {
        let n = rng.gen_range(3..=5);
        let mut g = MixedGraph::new(n);
        g.set_relation(0, 1, Relation::Out);
        for a in 0..n {
            for b in a + 1..n {
                if (a, b) != (0, 1) && rng.gen_bool(0.8) {
                    g.set_relation(a, b, Relation::Undirected);
                }
            }
        }
        let fam = vec![g];
        let c = classify(&fam).unwrap();
        if c.tag != Tag::OneDirectedEdge {
            continue;
        }
        let a = value_of(&fam);
        let b = theta_by_candidates(&fam).unwrap().value.unwrap();
        assert_eq!(a.cmp_algebraic(&b), Ordering::Equal, "{}", fam[0]);
        checked += 1;
    }
}

#[test]
fn general_results_verify() {
    let cases: Vec<Vec<MixedGraph>> = vec![
        vec![arrow_clique(3).blowup(2).unwrap()],
        family_for_matrix(&bk_matrix(1), true).unwrap(),
        family_for_matrix(&g4(), true).unwrap(),
    ];
    for fam in cases {
        let res = theta(&fam).unwrap();
        assert_eq!(res.kind, ThetaKind::Finite);
        assert!(in_unit_window(res.value.as_ref().unwrap()));
        let report = verify(&fam, &res).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn family_of_a_template_recovers_its_ratio() {
    for m in [g1(), g4(), bk_matrix(1)] {
        let minimal = family_for_matrix(&m, true).unwrap();
        let full = family_for_matrix(&m, false).unwrap();
        assert!(family_is_equivalent(&m, &minimal));
        assert!(family_is_equivalent(&m, &full));
        assert!(minimal.len() <= full.len());
        let want = ratio_min(&m).unwrap();
        let got = value_of(&minimal);
        assert_eq!(got.cmp_algebraic(want.finite_value().unwrap()), Ordering::Equal);
    }
}

#[test]
fn text_formats_round_trip_through_the_engine() {
    let fam = family_for_matrix(&bk_matrix(1), true).unwrap();
    let parsed = parse_family(&emit_family(&fam)).unwrap();
    assert_eq!(parsed, fam);
    let b = parse_matrix(&emit_matrix(&bk_matrix(2))).unwrap();
    assert_eq!(b, bk_matrix(2));
    let v: BigRational = g_rho(&b, &rat(6, 5)).value;
    assert!(v < int(1));
}

#[test]
fn family_value_is_monotone_in_members() {
    // Adding members forbids more graphs, so θ can only grow.
    let one = vec![arrow_clique(4)];
    let two = vec![arrow_clique(4), clique(4)];
    let a = value_of(&one);
    let b = value_of(&two);
    assert_ne!(b.cmp_algebraic(&a), Ordering::Less);
}
