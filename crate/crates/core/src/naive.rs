//! Exponential reference implementations used as independent oracles.
//!
//! Everything here works element by element through `GroupSpec::add`, never
//! through the word-level kernels.

use crate::error::{Error, Result};
use crate::group::Element;
use crate::subset::GroupSubset;

/// Largest `|S|` accepted by the `2^|S|` enumerations.
pub const NAIVE_MAX_SET: usize = 24;

fn check_size(s: &GroupSubset) -> Result<()> {
    if s.len() > NAIVE_MAX_SET {
        return Err(Error::CapExceeded {
            what: "|S| for naive enumeration",
            value: s.len(),
            cap: NAIVE_MAX_SET,
        });
    }
    Ok(())
}

fn subset_sums(s: &GroupSubset, nonempty: bool) -> Result<GroupSubset> {
    check_size(s)?;
    let g = s.group();
    let elems = s.elements();
    let mut out = GroupSubset::empty(g);
    let start = u32::from(nonempty);
    for mask in start..(1u32 << elems.len()) {
        let mut acc = g.zero();
        for (i, &x) in elems.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = g.add(acc, x);
            }
        }
        out = out.with(acc);
    }
    Ok(out)
}

pub fn sigma(s: &GroupSubset) -> Result<GroupSubset> {
    subset_sums(s, false)
}

pub fn sigma_star(s: &GroupSubset) -> Result<GroupSubset> {
    subset_sums(s, true)
}

/// Sums over all `k`-element subsets.
pub fn k_wedge(k: usize, a: &GroupSubset) -> Result<GroupSubset> {
    check_size(a)?;
    let g = a.group();
    let elems = a.elements();
    let mut out = GroupSubset::empty(g);
    for mask in 0u32..(1u32 << elems.len()) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let acc = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(g.zero(), |acc, (_, &x)| g.add(acc, x));
        out = out.with(acc);
    }
    Ok(out)
}

pub fn sumset(x: &GroupSubset, y: &GroupSubset) -> Result<GroupSubset> {
    x.same_group(y)?;
    let g = x.group();
    let mut out = GroupSubset::empty(g);
    for a in x.iter() {
        for b in y.iter() {
            out = out.with(g.add(a, b));
        }
    }
    Ok(out)
}

fn shift(x: &GroupSubset, d: Element) -> GroupSubset {
    let g = x.group();
    GroupSubset::from_elements(g, x.iter().map(|e| g.add(e, d)))
}

/// `{g : X + g = X}` by testing every element.
pub fn period(x: &GroupSubset) -> GroupSubset {
    let g = x.group();
    GroupSubset::from_elements(g, g.elements().filter(|&d| shift(x, d) == *x))
}

pub fn is_aperiodic(x: &GroupSubset) -> bool {
    period(x).len() == 1
}

pub fn lambda(b: &GroupSubset, x: Element) -> usize {
    shift(b, x).iter().filter(|&e| !b.contains(e)).count()
}

/// Closure of `S ∪ {0}` under addition.
pub fn span(s: &GroupSubset) -> GroupSubset {
    let g = s.group();
    let mut cur = s.with(g.zero());
    loop {
        let next = sumset(&cur, &cur).expect("same group");
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn small_cases() {
        let z13 = make_group(&[13]).unwrap();
        let s = GroupSubset::parse(&z13, "1,2,3").unwrap();
        assert_eq!(sigma(&s).unwrap().len(), 7);
        assert_eq!(sigma_star(&s).unwrap().len(), 6);
        assert_eq!(k_wedge(2, &s).unwrap().len(), 3);
        let z6 = make_group(&[6]).unwrap();
        let x = GroupSubset::parse(&z6, "0,2,4").unwrap();
        assert_eq!(period(&x), x);
        assert_eq!(span(&GroupSubset::parse(&z6, "4").unwrap()), x);
        assert!(sigma(&GroupSubset::full(&make_group(&[25]).unwrap())).is_err());
    }
}
