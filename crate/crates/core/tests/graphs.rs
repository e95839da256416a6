//! Graph-level invariants: positivity, areas, augmentation, obstructions.

mod common;

use common::*;
use num_rational::BigRational;
use plumbook_core::graph::{margins, Violation};
use plumbook_core::obstruction::relation_probe;
use plumbook_core::{
    augment_to_positive, check_area_admissibility, disconnected_boundary_obstruction, fillability_obstruction,
    is_positive, validate, AreaAdmissibility, ConfigGraph, Sign,
};
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn augmentation_is_idempotent_and_positive() {
    let mut r = rng(61);
    for _ in 0..300 {
        let g = random_tree(&mut r, 7, 2, (-5, 5), false);
        let aug = augment_to_positive(&g).unwrap();
        assert!(is_positive(&aug).unwrap().positive);
        assert_eq!(augment_to_positive(&aug).unwrap(), aug);
        let before = margins(&g).unwrap();
        let after = margins(&aug).unwrap();
        for (i, m) in before.iter().enumerate() {
            assert_eq!(after[i], (*m).max(1));
        }
    }
}

#[test]
fn admissibility_is_scale_invariant() {
    let mut r = rng(62);
    for _ in 0..300 {
        let g = random_positive(&mut r, 6, 8, 1);
        let m = margins(&g).unwrap();
        let lambda = BigRational::new(r.gen_range(1..20).into(), r.gen_range(1..20).into());
        let scale = BigRational::new(r.gen_range(1..9).into(), r.gen_range(1..9).into());
        let with = |factor: &BigRational, bump: Option<usize>| {
            let mut out = ConfigGraph::new();
            for (i, v) in g.vertices().iter().enumerate() {
                let mut a = lambda.clone() * BigRational::from_integer(m[i].into()) * factor.clone();
                if bump == Some(i) {
                    a += BigRational::new(1.into(), 7.into());
                }
                out = out.vertex_with_area(&v.id, v.genus, v.m, a);
            }
            for e in g.edges() {
                out = out.edge(&e.u, &e.v);
            }
            out
        };
        let one = BigRational::from_integer(1.into());
        assert_eq!(
            check_area_admissibility(&with(&one, None)).unwrap(),
            AreaAdmissibility::Admissible { lambda: lambda.clone() }
        );
        assert_eq!(
            check_area_admissibility(&with(&scale, None)).unwrap(),
            AreaAdmissibility::Admissible { lambda: lambda.clone() * scale.clone() }
        );
        if g.vertex_count() > 1 {
            let k = r.gen_range(0..g.vertex_count());
            assert!(!check_area_admissibility(&with(&scale, Some(k))).unwrap().is_admissible());
        }
    }
}

#[test]
fn verdicts_ignore_areas_and_labels() {
    let mut r = rng(63);
    for _ in 0..300 {
        let g = random_positive(&mut r, 5, 7, 1);
        let verdict = fillability_obstruction(&g).verdict;
        let n = g.vertex_count();
        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.shuffle(&mut r);
        let mut h = ConfigGraph::new();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        for &i in &order {
            let v = &g.vertices()[i];
            h = h.vertex_with_area(&format!("w{}", relabel[i]), v.genus, v.m, BigRational::from_integer(3.into()));
        }
        for e in g.edges() {
            let (u, v) = (g.index_of(&e.u).unwrap(), g.index_of(&e.v).unwrap());
            h = h.edge(&format!("w{}", relabel[v]), &format!("w{}", relabel[u]));
        }
        assert_eq!(fillability_obstruction(&h).verdict, verdict, "{g:?}");
    }
}

#[test]
fn disconnected_boundaries_in_both_orders() {
    let unit = ConfigGraph::new().vertex("v", 0, 1);
    let torus = ConfigGraph::new().vertex("t", 1, 1);
    let neg = ConfigGraph::new().vertex("w", 1, -1);
    // positive with b+ = 1 but no witness: m = 1 <= 2g − 2 = 4
    let high = ConfigGraph::new().vertex("h", 3, 1);
    assert!(disconnected_boundary_obstruction(&unit, &unit).is_obstructed());
    assert!(disconnected_boundary_obstruction(&torus, &torus).is_obstructed());
    assert!(!disconnected_boundary_obstruction(&unit, &neg).is_obstructed());
    assert!(!disconnected_boundary_obstruction(&neg, &unit).is_obstructed());
    assert!(disconnected_boundary_obstruction(&unit, &high).is_obstructed());
    assert!(!disconnected_boundary_obstruction(&high, &unit).is_obstructed());
}

#[test]
fn g4_findings() {
    for genus in 0..=2usize {
        let k = (genus as i64 + 1).pow(2);
        for a in 1..=12 {
            for b in 1..=12 {
                let g = ConfigGraph::new().vertex("a", 0, a).vertex("b", 0, b).edges_between("a", "b", genus + 1);
                let findings = relation_probe(&g).unwrap();
                if a * b > k {
                    let wanted = format!("{} disjoint curves separating it into two genus-0 pieces", genus + 1);
                    assert!(findings.iter().any(|f| f.contains(&wanted)), "{findings:?}");
                } else {
                    assert!(findings.is_empty());
                }
            }
        }
    }
    // A = 4, B = 5 on Sigma_1^9
    let g = ConfigGraph::new().vertex("a", 0, 2).vertex("b", 0, 3).edges_between("a", "b", 2);
    let findings = relation_probe(&g).unwrap();
    assert!(findings.iter().any(|f| f.contains("Sigma_1^9 with 2 disjoint curves") && f.contains("4 | 5")), "{findings:?}");

    let g3 = ConfigGraph::new().vertex("a", 0, -2).vertex("b", 0, -2).edges_between("a", "b", 3);
    assert!(relation_probe(&g3).unwrap().is_empty());
}

#[test]
fn validation_reports_every_violation() {
    let g = ConfigGraph::new().vertex("a", -1, 0).vertex("a", 0, 0).edge("b", "b").signed_edge("a", "c", Sign::Minus);
    let v = validate(&g);
    assert!(v.violations.iter().any(|x| matches!(x, Violation::NegativeGenus { .. })));
    assert!(v.violations.iter().any(|x| matches!(x, Violation::DuplicateVertex { .. })));
    assert!(v.violations.iter().any(|x| matches!(x, Violation::SelfLoop { .. })));
    assert!(v.violations.iter().any(|x| matches!(x, Violation::UnknownEndpoint { .. })));
}
