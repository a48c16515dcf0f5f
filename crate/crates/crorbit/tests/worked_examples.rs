//! End-to-end runs of the documented examples through the public API.

use std::collections::BTreeSet;

use crorbit::fibration::{fiber_over, fundamental_reduction, reduction_diagram};
use crorbit::oracle::{oracle_fundamental, oracle_weak_largest};
use crorbit::parabolic::{analyze, parabolic_roots};
use crorbit::parse_spec;
use crorbit::roots::RootSet;

#[test]
fn su13_with_two_crosses() {
    let cd = parse_spec("su(1,3) cross {1,2}").unwrap();
    let a = analyze(&cd);
    assert_eq!((a.n, a.k), (2, 3));
    assert_eq!(a.dim_g, 15);
    assert_eq!(a.dim_isotropy, 8);
    assert!(a.effective && a.fundamental);
    assert!(a.weakly_nondegenerate && a.strictly_nondegenerate && a.ideal_nondegenerate);

    // The envelope q + sigma(q) generates everything: the closure oracle
    // agrees with the diagram criterion.
    let rs = cd.root_system();
    let q = parabolic_roots(rs, cd.crosses()).q;
    let envelope: RootSet = q
        .union(&cd.satake().conjugation().sigma_set(&q))
        .copied()
        .collect();
    assert_eq!(rs.closure(&envelope), rs.all());
    assert!(oracle_fundamental(&cd));

    // Fibering over {1} leaves the crossed black node; over {2} nothing.
    let first = fiber_over(&cd, &BTreeSet::from([1])).unwrap();
    let eff = first.effective_fiber.expect("black node fiber");
    assert_eq!(eff.original_nodes, vec![2]);
    assert_eq!(eff.cd.satake().black().len(), 1);
    assert_eq!(eff.cd.crosses().len(), 1);

    let second = fiber_over(&cd, &BTreeSet::from([2])).unwrap();
    assert!(second.effective_fiber.is_none());
    assert!(!second.is_cr_fibration);
}

#[test]
fn su22_with_crosses_two_three() {
    let cd = parse_spec("su(2,2) cross {2,3}").unwrap();
    let a = analyze(&cd);
    assert!(!a.fundamental);
    assert!(!a.weakly_nondegenerate);
    assert!(!a.strictly_nondegenerate);

    let (nondeg, largest) = oracle_weak_largest(&cd).unwrap();
    assert!(!nondeg);
    assert_eq!(largest, Some(BTreeSet::from([2])));

    let red = fundamental_reduction(&cd).unwrap();
    assert_eq!(red.psi, BTreeSet::from([2]));
    assert_eq!(analyze(&red.base).n, 0);
    let fiber = red.report.effective_fiber.expect("sl(2,C) fiber");
    assert_eq!(fiber.cd.satake().graph().type_string(), "A1+A1");
    assert_eq!(fiber.original_crosses(), BTreeSet::from([3]));
}

#[test]
fn sl2r_borel_reduces_to_the_circle_base() {
    let cd = parse_spec("sl_r(2) cross {1}").unwrap();
    let red = fundamental_reduction(&cd).unwrap();
    assert_eq!(red.psi, BTreeSet::from([1]));
    assert_eq!(analyze(&red.base).n, 0);
    assert!(red.report.effective_fiber.is_none());
}

#[test]
fn composite_reduction_collapses_on_nice_instances() {
    let cd = parse_spec("su(1,3) cross {1,2}").unwrap();
    let report = reduction_diagram(&cd).unwrap();
    assert!(report.fundamental_psi.is_empty());
    assert_eq!(report.fundamental_fiber.unwrap().cd, cd);
    assert!(report.weak_removed.is_empty());
    assert_eq!(report.weak_base.unwrap().cd, cd);
}

#[test]
fn catalog_names_parse_and_match_their_spelled_out_diagrams() {
    for (spec, custom) in [
        ("su(1,3)", "custom A 3 black {2} arrows {(1,3)}"),
        ("su(2,2)", "custom A 3 arrows {(1,3)}"),
        ("sl_h(2)", "custom A 3 black {1,3}"),
        ("so(2,5)", "custom B 3 black {3}"),
        ("sp(1,1)", "custom C 2 black {1}"),
        ("complex(A,1)", "custom A1+A1 2 arrows {(1,2)}"),
    ] {
        assert_eq!(
            parse_spec(spec).unwrap(),
            parse_spec(custom).unwrap(),
            "{spec} vs {custom}"
        );
    }
}
