#![allow(dead_code)]

use proptest::prelude::*;
use subsums::group::abelian_groups_up_to;
use subsums::{Group, GroupSubset};

pub fn groups(max_order: usize) -> Vec<Group> {
    abelian_groups_up_to(max_order)
}

/// A group of order at most `max_order` and a subset of it with at most
/// `max_set` elements, picked from random bits.
pub fn group_and_set(max_order: usize, max_set: usize) -> impl Strategy<Value = GroupSubset> {
    let gs = groups(max_order);
    (0..gs.len(), any::<u64>(), any::<u64>()).prop_map(move |(i, lo, hi)| {
        let g = gs[i].clone();
        let bits = (hi as u128) << 64 | lo as u128;
        let mut s = GroupSubset::empty(&g);
        for e in g.elements() {
            if s.len() >= max_set {
                break;
            }
            if bits >> (e.index() % 128) & 1 == 1 {
                s = s.with(e);
            }
        }
        s
    })
}

pub fn set(g: &Group, s: &str) -> GroupSubset {
    GroupSubset::parse(g, s).unwrap()
}

pub fn group(spec: &str) -> Group {
    subsums::GroupSpec::parse(spec).unwrap()
}

/// All subsets of `G`, by mask.
pub fn all_subsets(g: &Group) -> Vec<GroupSubset> {
    let n = g.order();
    (0u64..1 << n)
        .map(|m| GroupSubset::from_elements(g, g.elements().filter(|e| m >> e.index() & 1 == 1)))
        .collect()
}
