//! Dense bit-indexed subsets of a group.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupSpec};

pub(crate) fn word_count(order: usize) -> usize {
    order.div_ceil(64).max(1)
}

/// Bit kernels over little-endian word arrays (bit `i` of word `w` is
/// element `64w + i`).
pub(crate) mod bits {
    use crate::group::GroupSpec;

    #[inline]
    pub fn test(words: &[u64], i: usize) -> bool {
        words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(words: &mut [u64], i: usize) {
        words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(words: &mut [u64], i: usize) {
        words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(words: &[u64]) -> usize {
        words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn mask(len: usize) -> u64 {
        if len >= 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        }
    }

    /// Reads `len <= 64` bits starting at `off`.
    #[inline]
    pub fn read(src: &[u64], off: usize, len: usize) -> u64 {
        let (w, b) = (off / 64, off % 64);
        let mut v = src[w] >> b;
        if b != 0 && b + len > 64 {
            v |= src[w + 1] << (64 - b);
        }
        v & mask(len)
    }

    /// ORs the low `len <= 64` bits of `val` into `dst` at `off`.
    #[inline]
    pub fn or(dst: &mut [u64], off: usize, len: usize, val: u64) {
        let val = val & mask(len);
        let (w, b) = (off / 64, off % 64);
        dst[w] |= val << b;
        if b != 0 && b + len > 64 {
            dst[w + 1] |= val >> (64 - b);
        }
    }

    pub fn or_range(dst: &mut [u64], dst_off: usize, src: &[u64], src_off: usize, len: usize) {
        let mut done = 0;
        while done < len {
            let n = (len - done).min(64);
            let v = read(src, src_off + done, n);
            or(dst, dst_off + done, n, v);
            done += n;
        }
    }

    /// `dst |= src + x`, translating every element of `src` by the flat
    /// element `x`. Works block by block: the innermost factor is a rotation
    /// inside each block, the outer factors permute whole blocks.
    pub fn or_translate(g: &GroupSpec, src: &[u64], x: usize, dst: &mut [u64]) {
        let n = g.order();
        if x == 0 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d |= *s;
            }
            return;
        }
        let layout = g.layout();
        let inner = layout.inner;
        let xi = x % inner;
        let x_outer = x - xi;
        if layout.outer.is_empty() && n <= 64 {
            let w = src[0];
            let rot = if xi == 0 { w } else { (w << xi) | (w >> (n - xi)) };
            dst[0] |= rot & mask(n);
            return;
        }
        let mut start = 0;
        while start < n {
            let dest = g.add_raw(start, x_outer);
            if xi == 0 {
                or_range(dst, dest, src, start, inner);
            } else {
                or_range(dst, dest + xi, src, start, inner - xi);
                or_range(dst, dest, src, start + inner - xi, xi);
            }
            start += inner;
        }
    }

    pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
        words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }
}

/// A subset of a finite abelian group as a dense bit array with a cached
/// cardinality. Values are immutable; every operation returns a new subset.
#[derive(Clone)]
pub struct GroupSubset {
    group: Group,
    bits: Vec<u64>,
    len: usize,
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.bits == other.bits && self.group == other.group
    }
}

impl Eq for GroupSubset {}

impl Hash for GroupSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.group)
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| self.group.format_element(e)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl GroupSubset {
    pub(crate) fn from_words(group: &Group, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), word_count(group.order()));
        let len = bits::count(&bits);
        GroupSubset {
            group: Arc::clone(group),
            bits,
            len,
        }
    }

    pub fn empty(group: &Group) -> Self {
        Self::from_words(group, vec![0; word_count(group.order())])
    }

    pub fn full(group: &Group) -> Self {
        let n = group.order();
        let mut w = vec![0; word_count(n)];
        for i in 0..n {
            bits::set(&mut w, i);
        }
        Self::from_words(group, w)
    }

    pub fn singleton(group: &Group, e: Element) -> Self {
        Self::from_elements(group, [e])
    }

    /// `{0}`.
    pub fn zero(group: &Group) -> Self {
        Self::singleton(group, group.zero())
    }

    /// Panics if an element is out of range for `group`.
    pub fn from_elements(group: &Group, elems: impl IntoIterator<Item = Element>) -> Self {
        let n = group.order();
        let mut w = vec![0; word_count(n)];
        for e in elems {
            assert!(e.index() < n, "element {} out of range for {group}", e.index());
            bits::set(&mut w, e.index());
        }
        Self::from_words(group, w)
    }

    pub fn from_indices(group: &Group, idx: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = group.order();
        let mut w = vec![0; word_count(n)];
        for i in idx {
            group.element(i)?;
            bits::set(&mut w, i);
        }
        Ok(Self::from_words(group, w))
    }

    /// Parses a comma-separated list of element literals, e.g. `1,2,-3` or
    /// `(1,0),(0,1)`. The empty string gives the empty set.
    pub fn parse(group: &Group, s: &str) -> Result<Self> {
        let t = s.trim();
        // accept the `{a, b}` display form too
        let s = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(t);
        let mut elems = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
            }
            if ch == ',' && depth == 0 {
                elems.push(group.parse_element(&cur)?);
                cur.clear();
            } else {
                cur.push(ch);
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        if !cur.trim().is_empty() || !elems.is_empty() {
            elems.push(group.parse_element(&cur)?);
        }
        Ok(Self::from_elements(group, elems))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, e: Element) -> bool {
        e.index() < self.group.order() && bits::test(&self.bits, e.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        bits::iter_ones(&self.bits).map(Element)
    }

    pub fn elements(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn min_element(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn same_group(&self, other: &GroupSubset) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            })
        }
    }

    fn zip_with(&self, other: &GroupSubset, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.same_group(other)?;
        let w = self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect();
        Ok(Self::from_words(&self.group, w))
    }

    pub fn union(&self, other: &GroupSubset) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSubset) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GroupSubset) -> Result<Self> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &GroupSubset) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0))
    }

    pub fn complement(&self) -> Self {
        self.zip_with(&Self::full(&self.group), |a, f| !a & f)
            .expect("same group")
    }

    pub fn with(&self, e: Element) -> Self {
        let mut w = self.bits.clone();
        assert!(e.index() < self.group.order());
        bits::set(&mut w, e.index());
        Self::from_words(&self.group, w)
    }

    pub fn without(&self, e: Element) -> Self {
        let mut w = self.bits.clone();
        if e.index() < self.group.order() {
            bits::clear(&mut w, e.index());
        }
        Self::from_words(&self.group, w)
    }

    /// `self + x`.
    pub fn translate(&self, x: Element) -> Self {
        let mut w = vec![0; self.bits.len()];
        bits::or_translate(&self.group, &self.bits, x.index(), &mut w);
        Self::from_words(&self.group, w)
    }

    /// `-self`.
    pub fn neg(&self) -> Self {
        let g = &self.group;
        Self::from_elements(g, self.iter().map(|e| g.neg(e)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.neg() == *self
    }

    /// `S ∩ (-S) = ∅`.
    pub fn is_asymmetric(&self) -> bool {
        self.neg().is_disjoint(self).expect("same group")
    }

    /// Orders subsets by the integer value of their bit strings.
    pub fn rank_cmp(&self, other: &GroupSubset) -> Ordering {
        self.bits.iter().rev().cmp(other.bits.iter().rev())
    }

    /// Lowercase hex of the bit string, little-endian by flat index: byte `j`
    /// holds elements `8j..8j+7`, element `8j+i` in bit `i`.
    pub fn to_hex(&self) -> String {
        let nbytes = self.group.order().div_ceil(8);
        let mut s = String::with_capacity(2 * nbytes);
        for j in 0..nbytes {
            let byte = (self.bits[j / 8] >> (8 * (j % 8))) & 0xff;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(group: &Group, s: &str) -> Result<Self> {
        let n = group.order();
        let nbytes = n.div_ceil(8);
        if s.len() != 2 * nbytes || !s.is_ascii() {
            return Err(Error::Parse(format!(
                "hex subset for {group} must have {} digits, got {:?}",
                2 * nbytes,
                s
            )));
        }
        let mut w = vec![0u64; word_count(n)];
        for j in 0..nbytes {
            let byte = u64::from_str_radix(&s[2 * j..2 * j + 2], 16)
                .map_err(|_| Error::Parse(format!("bad hex digits in {s:?}")))?;
            w[j / 8] |= byte << (8 * (j % 8));
        }
        if (n..64 * w.len()).any(|i| bits::test(&w, i)) {
            return Err(Error::Parse(format!("hex subset {s:?} has bits beyond order {n}")));
        }
        Ok(Self::from_words(group, w))
    }
}

/// Parses `(group, subset)` from the pair of literals used on the command line.
pub fn parse_group_and_set(group: &str, set: &str) -> Result<(Group, GroupSubset)> {
    let g = GroupSpec::parse(group)?;
    let s = GroupSubset::parse(&g, set)?;
    Ok((g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn naive_translate(s: &GroupSubset, x: Element) -> GroupSubset {
        let g = s.group();
        GroupSubset::from_elements(g, s.iter().map(|e| g.add(e, x)))
    }

    #[test]
    fn translate_matches_elementwise_in_mixed_layouts() {
        for fs in [&[7][..], &[4, 2], &[2, 4], &[3, 1, 5], &[2, 2, 2, 2], &[67], &[3, 40], &[130], &[5, 33]] {
            let g = make_group(fs).unwrap();
            let s = GroupSubset::from_indices(&g, (0..g.order()).filter(|i| i % 3 == 0 || i % 7 == 2))
                .unwrap();
            for x in g.elements() {
                assert_eq!(s.translate(x), naive_translate(&s, x), "{fs:?} x={x}");
            }
        }
    }

    #[test]
    fn parse_literals() {
        let g = make_group(&[4, 2]).unwrap();
        let s = GroupSubset::parse(&g, "(1,0),(0,1)").unwrap();
        assert_eq!(s.len(), 2);
        let z = make_group(&[9]).unwrap();
        let t = GroupSubset::parse(&z, "1, -1, 2,-2").unwrap();
        assert_eq!(t.elements().iter().map(|e| e.index()).collect::<Vec<_>>(), vec![1, 2, 7, 8]);
        assert!(GroupSubset::parse(&z, "").unwrap().is_empty());
        assert!(GroupSubset::parse(&z, "1,,2").is_err());
        assert!(GroupSubset::parse(&g, "(1,0").is_err());
    }

    #[test]
    fn hex_layout() {
        let g = make_group(&[5]).unwrap();
        let s = GroupSubset::parse(&g, "0,1").unwrap();
        assert_eq!(s.to_hex(), "03");
        let g = make_group(&[13]).unwrap();
        let s = GroupSubset::parse(&g, "1,2,12").unwrap();
        assert_eq!(s.to_hex(), "0610");
        assert_eq!(GroupSubset::from_hex(&g, "0610").unwrap(), s);
        assert!(GroupSubset::from_hex(&g, "06").is_err());
        assert!(GroupSubset::from_hex(&g, "0620").is_err());
    }

    #[test]
    fn set_algebra_and_mismatch() {
        let g = make_group(&[6]).unwrap();
        let h = make_group(&[2, 3]).unwrap();
        let a = GroupSubset::parse(&g, "1,2").unwrap();
        let b = GroupSubset::parse(&h, "1").unwrap();
        assert!(matches!(a.union(&b), Err(Error::GroupMismatch { .. })));
        assert_eq!(a.complement().len(), 4);
        assert!(GroupSubset::parse(&g, "1,5").unwrap().is_symmetric());
        assert!(GroupSubset::parse(&g, "1,2").unwrap().is_asymmetric());
        assert!(!GroupSubset::parse(&g, "3").unwrap().is_asymmetric());
    }

    #[test]
    fn rank_order_is_integer_order() {
        let g = make_group(&[70]).unwrap();
        let lo = GroupSubset::parse(&g, "0,1,2,3").unwrap();
        let hi = GroupSubset::parse(&g, "65").unwrap();
        assert_eq!(lo.rank_cmp(&hi), Ordering::Less);
    }
}
