//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are flat indices in mixed radix: the last factor varies fastest,
//! so in `Z4 x Z2` the element `(3,1)` has index `3*2 + 1 = 7`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::snf::smith;
use crate::sumset::ShiftTable;

/// Default cap on the order of a group built by [`make_group`].
pub const DEFAULT_MAX_ORDER: usize = 1 << 16;

/// Shared handle to a group; subsets and subgroups keep one of these.
pub type Group = Arc<GroupSpec>;

/// A group element, stored as its flat index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Block layout used by the word-parallel translation kernel: the flat index
/// space splits into `order / inner` contiguous blocks of `inner` bits, one per
/// setting of the outer coordinates.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub inner: usize,
    /// (order, stride) of every non-trivial factor except the innermost.
    pub outer: Vec<(usize, usize)>,
}

pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
    strides: Vec<usize>,
    /// Non-trivial factors with their strides, outermost first.
    active: Vec<(usize, usize)>,
    layout: Layout,
    canonical: Vec<usize>,
    pub(crate) shift_table: OnceLock<Option<ShiftTable>>,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupSpec {}

impl Hash for GroupSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Builds a group from cyclic factor orders with the default order cap.
pub fn make_group(factors: &[i64]) -> Result<Group> {
    make_group_with_cap(factors, DEFAULT_MAX_ORDER)
}

pub fn make_group_with_cap(factors: &[i64], cap: usize) -> Result<Group> {
    if factors.is_empty() {
        return Err(Error::Parse("a group needs at least one factor".into()));
    }
    let mut order: u128 = 1;
    let mut fs = Vec::with_capacity(factors.len());
    for &d in factors {
        if d < 1 {
            return Err(Error::InvalidFactor(d));
        }
        order = order.saturating_mul(d as u128);
        if order > cap as u128 {
            return Err(Error::OrderTooLarge { order, cap });
        }
        fs.push(d as usize);
    }
    Ok(Arc::new(GroupSpec::from_factors(fs)))
}

impl GroupSpec {
    fn from_factors(factors: Vec<usize>) -> Self {
        let k = factors.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        let order = factors.iter().product();
        let active: Vec<(usize, usize)> = factors
            .iter()
            .zip(&strides)
            .filter(|(d, _)| **d > 1)
            .map(|(&d, &s)| (d, s))
            .collect();
        let layout = match active.split_last() {
            Some((&(d, _), rest)) => Layout {
                inner: d,
                outer: rest.to_vec(),
            },
            None => Layout {
                inner: 1,
                outer: Vec::new(),
            },
        };
        let canonical = invariant_factors(&factors);
        GroupSpec {
            factors,
            order,
            strides,
            active,
            layout,
            canonical,
            shift_table: OnceLock::new(),
        }
    }

    /// Parses `Z4xZ2` (case-insensitive) with the default order cap.
    pub fn parse(s: &str) -> Result<Group> {
        Self::parse_with_cap(s, DEFAULT_MAX_ORDER)
    }

    pub fn parse_with_cap(s: &str, cap: usize) -> Result<Group> {
        let lower = s.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let mut factors = Vec::new();
        for part in lower.split('x') {
            let part = part.trim();
            let digits = part
                .strip_prefix('z')
                .ok_or_else(|| Error::Parse(format!("expected Z<d>, found {part:?} in {s:?}")))?;
            let d: i64 = digits
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order {digits:?} in {s:?}")))?;
            factors.push(d);
        }
        make_group_with_cap(&factors, cap)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub(crate) fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Invariant factors `d1 | d2 | ...` (all > 1); `[1]` for the trivial group.
    pub fn canonical_form(&self) -> &[usize] {
        &self.canonical
    }

    pub fn is_isomorphic(&self, other: &GroupSpec) -> bool {
        self.canonical == other.canonical
    }

    pub fn is_cyclic(&self) -> bool {
        self.canonical.len() == 1
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// Like [`GroupSpec::element`] but panics when out of range.
    pub fn elem(&self, index: usize) -> Element {
        self.element(index).unwrap()
    }

    pub fn element_from_coords(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.factors.len() {
            return Err(Error::Parse(format!(
                "expected {} coordinates for {self}, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        let mut index = 0;
        for ((&c, &d), &s) in coords.iter().zip(&self.factors).zip(&self.strides) {
            if c < 0 || c as usize >= d {
                return Err(Error::Parse(format!("coordinate {c} out of range 0..{d}")));
            }
            index += c as usize * s;
        }
        Ok(Element(index))
    }

    pub fn coords(&self, a: Element) -> Vec<usize> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (a.0 / s) % d)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    fn check(&self, a: Element) {
        assert!(
            a.0 < self.order,
            "element {} out of range for {self} (order {})",
            a.0,
            self.order
        );
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        self.check(a);
        self.check(b);
        Element(self.add_raw(a.0, b.0))
    }

    pub fn checked_add(&self, a: Element, b: Element) -> Result<Element> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(Element(self.add_raw(a.0, b.0)))
    }

    pub(crate) fn add_raw(&self, a: usize, b: usize) -> usize {
        let mut r = 0;
        for &(d, s) in &self.active {
            let mut c = (a / s) % d + (b / s) % d;
            if c >= d {
                c -= d;
            }
            r += c * s;
        }
        r
    }

    pub(crate) fn neg_raw(&self, a: usize) -> usize {
        let mut r = 0;
        for &(d, s) in &self.active {
            let c = (a / s) % d;
            if c != 0 {
                r += (d - c) * s;
            }
        }
        r
    }

    pub fn neg(&self, a: Element) -> Element {
        self.check(a);
        Element(self.neg_raw(a.0))
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `n·a` for any integer `n` (negative multiples go through negation).
    pub fn mul(&self, n: i64, a: Element) -> Element {
        self.check(a);
        let mut r = 0;
        for &(d, s) in &self.active {
            let c = ((a.0 / s) % d) as i128;
            let m = (c * n as i128).rem_euclid(d as i128) as usize;
            r += m * s;
        }
        Element(r)
    }

    /// Least `n ≥ 1` with `n·a = 0`: the lcm of the coordinate orders.
    pub fn element_order(&self, a: Element) -> usize {
        self.check(a);
        self.active.iter().fold(1, |acc, &(d, s)| {
            let c = (a.0 / s) % d;
            let ord = d / num_integer::gcd(c, d);
            num_integer::lcm(acc, ord)
        })
    }

    /// Parses an element literal: a flat index `5`, coordinates `(3,1)`, or
    /// either form prefixed by `-` for the group negative.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('-') {
            return Ok(self.neg(self.parse_element(rest)?));
        }
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let coords = inner
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.element_from_coords(&coords);
        }
        let index: usize = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))?;
        self.element(index)
    }

    /// Renders an element the way [`GroupSpec::parse_element`] reads it back:
    /// a bare index for cyclic presentations, coordinates otherwise.
    pub fn format_element(&self, a: Element) -> String {
        if self.factors.len() == 1 {
            a.0.to_string()
        } else {
            let cs: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
            format!("({})", cs.join(","))
        }
    }
}

fn invariant_factors(factors: &[usize]) -> Vec<usize> {
    let k = factors.len();
    let m: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { factors[i] as i128 } else { 0 }).collect())
        .collect();
    let out: Vec<usize> = smith(m, k)
        .diag
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as usize)
        .collect();
    if out.is_empty() {
        vec![1]
    } else {
        out
    }
}

fn prime_factorisation(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Every abelian group of order `n` up to isomorphism, as invariant-factor
/// lists, in a fixed deterministic order.
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut shapes: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in prime_factorisation(n) {
        let mut next = Vec::new();
        for shape in &shapes {
            for part in partitions(e, e) {
                // Largest parts go to the largest invariant factors.
                let len = shape.len().max(part.len());
                let mut merged = vec![1usize; len];
                for (i, slot) in merged.iter_mut().enumerate() {
                    let from_shape = if i < shape.len() { shape[shape.len() - 1 - i] } else { 1 };
                    let from_part = if i < part.len() { p.pow(part[i]) } else { 1 };
                    *slot = from_shape * from_part;
                }
                merged.reverse();
                next.push(merged);
            }
        }
        shapes = next;
    }
    shapes.sort();
    shapes
}

/// All abelian groups with `1 <= order <= max_order`, ordered by order.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<Group> {
    (1..=max_order)
        .flat_map(abelian_groups_of_order)
        .map(|f| {
            let fs: Vec<i64> = f.iter().map(|&d| d as i64).collect();
            make_group_with_cap(&fs, usize::MAX).expect("enumerated shapes are valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_examples() {
        let g = make_group(&[4, 2]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.elements().count(), 8);
        assert_eq!(make_group(&[2, 3]).unwrap().canonical_form(), &[6]);
        let t = make_group(&[1]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.canonical_form(), &[1]);
    }

    #[test]
    fn make_group_errors() {
        assert!(matches!(make_group(&[0]), Err(Error::InvalidFactor(0))));
        assert!(matches!(make_group(&[-3]), Err(Error::InvalidFactor(-3))));
        assert!(matches!(
            make_group(&[1 << 10, 1 << 10]),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(make_group_with_cap(&[1 << 10, 1 << 10], 1 << 20).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let g = make_group(&[4, 2]).unwrap();
        let a = g.element_from_coords(&[3, 1]).unwrap();
        let b = g.element_from_coords(&[2, 1]).unwrap();
        assert_eq!(g.coords(g.add(a, b)), vec![1, 0]);
        let z7 = make_group(&[7]).unwrap();
        assert_eq!(z7.neg(z7.elem(3)), z7.elem(4));
        let x = g.element_from_coords(&[1, 0]).unwrap();
        assert_eq!(g.element_order(x), 4);
        assert!(g.checked_add(Element(8), Element(0)).is_err());
    }

    #[test]
    fn parse_specs() {
        let g = GroupSpec::parse("z4XZ2").unwrap();
        assert_eq!(g.factors(), &[4, 2]);
        assert_eq!(g.to_string(), "Z4xZ2");
        assert!(GroupSpec::parse("Q8").is_err());
        assert!(GroupSpec::parse("Z0").is_err());
        assert!(GroupSpec::parse("").is_err());
        assert_eq!(g.parse_element("(3,1)").unwrap().index(), 7);
        assert_eq!(g.parse_element("-(1,0)").unwrap(), g.element_from_coords(&[3, 0]).unwrap());
        assert_eq!(g.parse_element("5").unwrap().index(), 5);
        assert!(g.parse_element("8").is_err());
        assert!(g.parse_element("(4,0)").is_err());
        assert!(g.parse_element("(1,0").is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let g = make_group(&[3, 1, 4, 2]).unwrap();
        for e in g.elements() {
            let c: Vec<i64> = g.coords(e).iter().map(|&c| c as i64).collect();
            assert_eq!(g.element_from_coords(&c).unwrap(), e);
            assert_eq!(g.parse_element(&g.format_element(e)).unwrap(), e);
        }
    }

    #[test]
    fn isomorphism_classes() {
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(1), vec![vec![1]]);
        let counts: Vec<usize> = (1..=20).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(
            counts,
            vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2]
        );
        for n in 1..=40 {
            for shape in abelian_groups_of_order(n) {
                let fs: Vec<i64> = shape.iter().map(|&d| d as i64).collect();
                let g = make_group(&fs).unwrap();
                assert_eq!(g.order(), n);
                assert_eq!(g.canonical_form(), &shape[..]);
            }
        }
    }

    #[test]
    fn canonical_form_merges_coprime_parts() {
        let a = make_group(&[2, 3]).unwrap();
        let b = make_group(&[6]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert_eq!(make_group(&[4, 6]).unwrap().canonical_form(), &[2, 12]);
        assert_eq!(make_group(&[2, 2, 1]).unwrap().canonical_form(), &[2, 2]);
    }
}
