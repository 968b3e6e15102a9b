mod common;

use common::{group, set};
use subsums::bounds::{
    bound_value, check, critical_number, critical_number_formula, is_valid_subset, xi, xi_prime,
    Aux, ClaimId, Q,
};
use subsums::search::{find_extremal, SubsetConstraints, SubsetEnumerator};
use subsums::{naive, sigma};

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[test]
fn xi_examples() {
    let z13 = group("Z13");
    assert_eq!(xi(&set(&z13, "1,2,3")).unwrap(), 1);
    assert_eq!(xi(&set(&z13, "1,2")).unwrap(), 1);
    let z29 = group("Z29");
    assert_eq!(xi(&set(&z29, "1,2,3,4,5")).unwrap(), 0);
    assert!(xi(&set(&z29, "")).is_err());
}

#[test]
fn xi_prime_examples() {
    let z13 = group("Z13");
    let x = xi_prime(&set(&z13, "1,2,3,-1,-2,-3")).unwrap();
    assert_eq!((x.displayed, x.of_half), (1, 1));
    let z29 = group("Z29");
    let x = xi_prime(&set(&z29, "1,2,3,4,5,-1,-2,-3,-4,-5")).unwrap();
    assert_eq!((x.displayed, x.of_half), (0, 0));
    assert!(xi_prime(&set(&z13, "1,2")).is_err());
    let z8 = group("Z8");
    assert!(xi_prime(&set(&z8, "1,7,4")).is_err());
}

#[test]
fn validity_examples() {
    let z13 = group("Z13");
    assert_eq!(is_valid_subset(&set(&z13, "1,2,3")).unwrap(), Some(set(&z13, "1,2,3")));
    let z9 = group("Z9");
    assert_eq!(is_valid_subset(&set(&z9, "1,2")).unwrap(), None);
    let z5 = group("Z5");
    assert_eq!(is_valid_subset(&set(&z5, "1")).unwrap(), None);
}

#[test]
fn bound_value_examples() {
    let z9 = group("Z9");
    assert_eq!(bound_value(ClaimId::CONJECTURE, &set(&z9, "1,2,7,8")).unwrap(), q(7, 1));
    let z13 = group("Z13");
    assert_eq!(
        bound_value(ClaimId::SYM_T4_ODD, &set(&z13, "1,2,3,10,11,12")).unwrap(),
        q(13, 1)
    );
    assert_eq!(bound_value(ClaimId::MAIN_T2, &set(&z9, "1,2")).unwrap(), q(4, 1));
    assert_eq!(bound_value(ClaimId::DEVOS_T3, &set(&z9, "1,2,3")).unwrap(), q(9, 64));
    assert!(bound_value(ClaimId::KNESER, &set(&z9, "1")).is_err());
}

#[test]
fn main_theorem_example() {
    let z13 = group("Z13");
    let r = check(ClaimId::MAIN_T2, &set(&z13, "1,2,3"), &Aux::default()).unwrap();
    assert!(r.hypotheses_met && r.holds);
    assert_eq!(r.lhs, Some(7));
    assert_eq!(r.rhs, Some(q(7, 1)));
    assert_eq!(r.slack, Some(q(0, 1)));
    assert_eq!(r.branch.as_deref(), Some("(i')+(ii)"));
    assert_eq!(r.witness.as_deref(), Some("{1, 2, 3}"));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["rhs"], "7/1");
    assert_eq!(v["slack"], "0/1");
    assert_eq!(v["claim"], "MAIN_T2");
}

#[test]
fn symmetric_examples() {
    let z9 = group("Z9");
    let r = check(ClaimId::CONJECTURE, &set(&z9, "1,2,-1,-2"), &Aux::default()).unwrap();
    assert!(r.hypotheses_met);
    assert_eq!((r.lhs, r.rhs, r.slack), (Some(7), Some(q(7, 1)), Some(q(0, 1))));
    // Σ(S) = Z13 is periodic: numbers reported, nothing asserted
    let z13 = group("Z13");
    let r = check(ClaimId::SYM_T4_ODD, &set(&z13, "1,2,3,-1,-2,-3"), &Aux::default()).unwrap();
    assert!(!r.hypotheses_met);
    assert_eq!((r.lhs, r.slack), (Some(13), Some(q(0, 1))));
    let z15 = group("Z15");
    let r = check(ClaimId::SYM_T4_ODD, &set(&z15, "1,2,3,-1,-2,-3"), &Aux::default()).unwrap();
    assert!(r.hypotheses_met && r.holds);
    assert_eq!((r.lhs, r.slack), (Some(13), Some(q(0, 1))));
}

#[test]
fn unmet_hypotheses_assert_nothing() {
    let z8 = group("Z8");
    let r = check(ClaimId::SYM_T4, &set(&z8, "1,7,4"), &Aux::default()).unwrap();
    assert!(!r.hypotheses_met && !r.violated());
    let r = check(ClaimId::MAIN_T2, &set(&z8, "1,7"), &Aux::default()).unwrap();
    assert!(!r.hypotheses_met);
    assert!(check(ClaimId::LEMMA_14, &set(&z8, "1"), &Aux::default()).is_err());
}

#[test]
fn critical_numbers_match_formula() {
    for p in [3usize, 5, 7, 11, 13] {
        let g = group(&format!("Z{p}"));
        let cr = critical_number(&g).unwrap();
        assert_eq!(cr.value, critical_number_formula(p), "Z{p}");
    }
    let t = critical_number(&group("Z1")).unwrap();
    assert_eq!(t.value, 0);
    assert!(t.trivial_convention);
}

/// Brute-force critical number for tiny groups.
fn critical_literal(g: &subsums::Group) -> usize {
    let n = g.order();
    let mut worst = 0;
    for m in 0u64..1 << n {
        if m & 1 == 1 {
            continue;
        }
        let s = common::all_subsets(g)[m as usize].clone();
        if naive::sigma_star(&s).unwrap().len() != n {
            worst = worst.max(s.len());
        }
    }
    worst + 1
}

#[test]
fn critical_numbers_match_brute_force() {
    for g in common::groups(10).into_iter().filter(|g| g.order() > 1) {
        assert_eq!(critical_number(&g).unwrap().value, critical_literal(&g), "{g}");
    }
}

#[test]
fn olson_on_prime_orders() {
    for p in [3, 5, 7, 11, 13] {
        let g = group(&format!("Z{p}"));
        let c = SubsetConstraints {
            asymmetric: true,
            size_min: Some(1),
            ..Default::default()
        };
        for (_, s) in SubsetEnumerator::new(&g, &c).unwrap() {
            let r = check(ClaimId::OLSON_T1, &s, &Aux::default()).unwrap();
            assert!(r.hypotheses_met && r.holds, "Z{p} {s}");
        }
    }
}

#[test]
fn extremal_search_examples() {
    let z9 = group("Z9");
    let c = SubsetConstraints {
        symmetric: true,
        zero_free: true,
        size_min: Some(4),
        size_max: Some(4),
        ..Default::default()
    };
    let recs = find_extremal(std::slice::from_ref(&z9), ClaimId::CONJECTURE, &c).unwrap();
    assert!(recs.iter().any(|r| r.set == set(&z9, "1,2,7,8").to_hex()));
    let z13 = group("Z13");
    let c = SubsetConstraints {
        asymmetric: true,
        size_min: Some(3),
        size_max: Some(3),
        ..Default::default()
    };
    let recs = find_extremal(std::slice::from_ref(&z13), ClaimId::MAIN_T2, &c).unwrap();
    assert!(recs.iter().all(|r| r.slack(ClaimId::MAIN_T2) == Some(q(0, 1))));
    assert!(recs.iter().any(|r| r.set == set(&z13, "1,2,3").to_hex()));
    let z15 = group("Z15");
    let c = SubsetConstraints {
        symmetric: true,
        zero_free: true,
        size_min: Some(6),
        size_max: Some(6),
        ..Default::default()
    };
    let recs = find_extremal(std::slice::from_ref(&z15), ClaimId::SYM_T4_ODD, &c).unwrap();
    assert!(recs.iter().any(|r| r.set == set(&z15, "1,2,3,-1,-2,-3").to_hex()));
}

#[test]
fn distinct_sum_exception() {
    let v = group("Z2xZ2xZ2");
    let a = set(&v, "(0,0,0),(1,0,0),(0,1,0),(1,1,0)");
    let r = check(ClaimId::KWEDGE_T11, &a, &Aux::default()).unwrap();
    assert!(r.holds);
    assert_eq!(r.branch.as_deref(), Some("2-coset"));
    assert_eq!(subsums::k_wedge(2, &a).unwrap().len(), 3);
}

#[test]
fn sigma_is_exact_on_extremal_family() {
    for s in 2..=6i64 {
        let n = s * (s + 1) + 3;
        let g = group(&format!("Z{n}"));
        let lit: Vec<String> = (1..=s).flat_map(|i| [i.to_string(), (-i).to_string()]).collect();
        let set = set(&g, &lit.join(","));
        assert_eq!(sigma(&set).len() as i64, s * s + s + 1);
    }
}
