mod common;

use common::{group, group_and_set, set};
use proptest::prelude::*;
use subsums::structure::kneser_check;
use subsums::sumset::{is_aperiodic, iterated_sumset, k_wedge_all, lambda_profile};
use subsums::{hat, k_wedge, lambda, naive, period, sigma, sigma_star, span, sumset, GroupSubset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sigma_matches_enumeration(s in group_and_set(40, 12)) {
        prop_assert_eq!(sigma(&s), naive::sigma(&s).unwrap());
        prop_assert_eq!(sigma_star(&s), naive::sigma_star(&s).unwrap());
    }

    #[test]
    fn k_wedge_matches_enumeration(s in group_and_set(24, 10)) {
        let all = k_wedge_all(&s);
        for k in 0..=s.len() {
            let want = naive::k_wedge(k, &s).unwrap();
            prop_assert_eq!(&all[k], &want);
            prop_assert_eq!(k_wedge(k as i64, &s).unwrap(), want);
        }
    }

    #[test]
    fn sumset_matches_pairwise(x in group_and_set(30, 30), bits in any::<u64>()) {
        let g = x.group().clone();
        let y = GroupSubset::from_elements(&g, g.elements().filter(|e| bits >> (e.index() % 64) & 1 == 1));
        prop_assert_eq!(sumset(&x, &y).unwrap(), naive::sumset(&x, &y).unwrap());
    }

    #[test]
    fn period_is_stabiliser(x in group_and_set(36, 36)) {
        let p = period(&x);
        prop_assert_eq!(p.carrier(), &naive::period(&x));
        prop_assert_eq!(sumset(&x, p.carrier()).unwrap(), x.clone());
        prop_assert_eq!(is_aperiodic(&x), naive::is_aperiodic(&x));
    }

    #[test]
    fn lambda_matches_definition(b in group_and_set(40, 40)) {
        let g = b.group().clone();
        let prof = lambda_profile(&b);
        for x in g.elements() {
            prop_assert_eq!(lambda(&b, x), naive::lambda(&b, x));
            prop_assert_eq!(prof[x.index()], naive::lambda(&b, x));
        }
    }

    #[test]
    fn span_matches_closure(s in group_and_set(40, 6)) {
        let sp = span(&s);
        prop_assert_eq!(sp.carrier(), &naive::span(&s));
    }

    #[test]
    fn swap_keeps_size_and_aperiodicity(s in group_and_set(30, 10)) {
        let g = s.group().clone();
        let s = s.without(g.zero());
        let sig = sigma(&s);
        for x in s.iter() {
            if s.contains(g.neg(x)) && g.neg(x) != x {
                continue;
            }
            let t = s.without(x).with(g.neg(x));
            let sig2 = sigma(&t);
            prop_assert_eq!(sig2.len(), sig.len());
            prop_assert_eq!(is_aperiodic(&sig2), is_aperiodic(&sig));
        }
    }

    #[test]
    fn one_step_growth(s in group_and_set(30, 10)) {
        let sig = sigma(&s);
        for x in s.iter() {
            let rest = sigma(&s.without(x));
            prop_assert!(sig.len() >= rest.len() + lambda(&rest, x));
        }
    }

    #[test]
    fn kneser_holds(x in group_and_set(60, 60), bits in any::<u64>()) {
        let g = x.group().clone();
        let y = GroupSubset::from_elements(&g, g.elements().filter(|e| bits >> (e.index() % 64) & 1 == 1));
        if !x.is_empty() && !y.is_empty() {
            let r = kneser_check(&x, &y).unwrap();
            prop_assert!(r.lhs as i64 >= r.rhs);
        }
    }

    #[test]
    fn subsets_of_aperiodic_sums_are_aperiodic(s in group_and_set(30, 8), bits in any::<u8>()) {
        let t = GroupSubset::from_elements(
            s.group(),
            s.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e),
        );
        if is_aperiodic(&sigma(&s)) {
            prop_assert!(is_aperiodic(&sigma(&t)));
        }
    }

    #[test]
    fn hex_round_trip(s in group_and_set(60, 60)) {
        prop_assert_eq!(GroupSubset::from_hex(s.group(), &s.to_hex()).unwrap(), s.clone());
        prop_assert_eq!(GroupSubset::parse(s.group(), &s.to_string()).unwrap(), s);
    }

    #[test]
    fn hat_is_symmetric_with_zero(s in group_and_set(40, 12)) {
        let h = hat(&s);
        prop_assert!(h.is_symmetric());
        prop_assert!(h.contains(s.group().zero()));
        prop_assert_eq!(hat(&h), h.clone());
    }
}

#[test]
fn sigma_examples() {
    let z14 = group("Z14");
    assert_eq!(sigma(&set(&z14, "1,2,3,11,12,13")).len(), 13);
    let z9 = group("Z9");
    assert_eq!(sigma(&set(&z9, "1,2,7,8")), set(&z9, "0,1,2,3,6,7,8"));
    let z12 = group("Z12");
    assert_eq!(hat(&set(&z12, "1,6")), set(&z12, "0,1,6,11"));
}

#[test]
fn iterated_sumset_grows_to_group() {
    let g = group("Z11");
    let a = hat(&set(&g, "1"));
    let sizes: Vec<usize> = (1..=6).map(|j| iterated_sumset(j, &a).unwrap().len()).collect();
    assert_eq!(sizes, vec![3, 5, 7, 9, 11, 11]);
}
