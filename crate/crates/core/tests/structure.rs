mod common;

use common::{all_subsets, group, groups, set};
use subsums::structure::{
    ap_case_stats, coset_layers, hp_representation, is_arithmetic_progression, is_vosper,
    RepresentationKind,
};
use subsums::subgroup::{is_2_coset, subgroups};
use subsums::{hat, sumset, GroupSubset, Quotient, Subgroup};

/// Vosper's inequality for every `Y` with `|Y| ≥ 2`, Y visited from the
/// largest mask down.
fn vosper_literal(x: &GroupSubset) -> bool {
    let g = x.group();
    let n = g.order();
    for m in (0u64..1 << n).rev() {
        if m.count_ones() < 2 {
            continue;
        }
        let y = GroupSubset::from_elements(g, g.elements().filter(|e| m >> e.index() & 1 == 1));
        let xy = sumset(x, &y).unwrap();
        if xy.len() < (n - 1).min(x.len() + y.len()) {
            return false;
        }
    }
    true
}

/// Tries every start and difference, with distinct terms.
fn ap_literal(x: &GroupSubset) -> bool {
    let g = x.group();
    let m = x.len();
    if m == 0 {
        return false;
    }
    for a in g.elements() {
        for d in g.elements() {
            let mut terms = GroupSubset::empty(g);
            let mut cur = a;
            for _ in 0..m {
                terms = terms.with(cur);
                cur = g.add(cur, d);
            }
            if terms.len() == m && &terms == x {
                return true;
            }
        }
    }
    false
}

#[test]
fn vosper_agrees_with_literal_check() {
    for g in groups(10) {
        for x in all_subsets(&g) {
            assert_eq!(
                is_vosper(&x).unwrap().is_vosper,
                vosper_literal(&x),
                "{g} {x}"
            );
        }
    }
}

#[test]
fn vosper_witness_violates() {
    for g in groups(9) {
        for x in all_subsets(&g) {
            let r = is_vosper(&x).unwrap();
            if let Some(y) = r.witness {
                let n = g.order();
                assert!(y.len() >= 2);
                assert!(sumset(&x, &y).unwrap().len() < (n - 1).min(x.len() + y.len()));
            }
        }
    }
}

#[test]
fn progressions_agree_with_literal_check() {
    for g in groups(12) {
        for x in all_subsets(&g).into_iter().filter(|x| !x.is_empty()) {
            let got = is_arithmetic_progression(&x).unwrap();
            assert_eq!(got.is_some(), ap_literal(&x), "{g} {x}");
            if let Some((a, d)) = got {
                let mut terms = GroupSubset::empty(&g);
                let mut cur = a;
                for _ in 0..x.len() {
                    terms = terms.with(cur);
                    cur = g.add(cur, d);
                }
                assert_eq!(terms, x);
            }
        }
    }
}

#[test]
fn subgroups_match_closed_subsets() {
    for g in groups(10) {
        let brute: Vec<GroupSubset> = all_subsets(&g)
            .into_iter()
            .filter(|h| h.contains(g.zero()) && sumset(h, h).unwrap() == *h)
            .collect();
        let found = subgroups(&g).unwrap();
        assert_eq!(found.len(), brute.len(), "{g}");
        for h in &brute {
            assert!(found.iter().any(|s| s.carrier() == h));
        }
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for g in groups(16) {
        for h in subgroups(&g).unwrap() {
            let q = Quotient::new(&h).unwrap();
            assert_eq!(q.order() * h.order(), g.order());
            let qg = q.group().clone();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(q.project(g.add(x, y)), qg.add(q.project(x), q.project(y)));
                }
                assert_eq!(q.project(x) == qg.zero(), h.contains(x));
            }
        }
    }
}

#[test]
fn two_cosets_by_definition() {
    let v = group("Z2xZ2xZ2");
    for a in all_subsets(&v).into_iter().filter(|a| !a.is_empty()) {
        let a0 = a.min_element().unwrap();
        let shifted = a.translate(v.neg(a0));
        let literal = Subgroup::from_carrier(shifted).is_ok();
        assert_eq!(is_2_coset(&a).unwrap(), literal, "{a}");
    }
    let z4 = group("Z4");
    assert!(!is_2_coset(&set(&z4, "0,1,2,3")).unwrap());
    assert!(is_2_coset(&set(&z4, "1,3")).unwrap());
}

#[test]
fn certificates_revalidate() {
    for g in groups(12) {
        for s in all_subsets(&g) {
            let a = hat(&s);
            if 2 * a.len() > g.order() {
                continue;
            }
            let Ok(res) = hp_representation(&s) else {
                continue;
            };
            for c in &res.representations {
                assert!(c.revalidate(&a, 20).unwrap(), "{g} {s}");
                if c.kind == RepresentationKind::Ap {
                    assert!(c.ap_params.is_some());
                }
            }
        }
    }
}

#[test]
fn layers_partition_the_set() {
    for g in groups(12) {
        for h in subgroups(&g).unwrap() {
            let q = Quotient::new(&h).unwrap();
            for t in all_subsets(&g).into_iter().step_by(7) {
                let t = t.difference(h.carrier()).unwrap();
                if !t.is_symmetric() {
                    continue;
                }
                let layers = coset_layers(&q, &t).unwrap();
                let total: usize = layers.iter().map(|l| l.len()).sum();
                assert_eq!(total, t.len(), "{g} {t}");
                assert_eq!(layers.first().map_or(0, |l| l.len()), q.project_set(&t).len());
                for l in &layers {
                    assert!(l.is_symmetric());
                }
            }
        }
    }
}

#[test]
fn ap_stats_example() {
    let z9 = group("Z9");
    let s = set(&z9, "1,2");
    let st = ap_case_stats(&s, &Subgroup::trivial(&z9)).unwrap();
    assert_eq!((st.h, st.v, st.t, st.u, st.ell), (1, 2, 0, 0, 3));
    let c = st.claims.unwrap();
    assert_eq!(c.sigma_size, 4);
    assert!(c.claim_i && c.claim_ii && c.claim_iii);
}
