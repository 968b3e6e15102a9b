//! Word-parallel kernels: subset sums, sumsets, restricted sums, periods and
//! the translation growth statistic `λ_B(x) = |(B + x) \ B|`.

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::subgroup::Subgroup;
use crate::subset::{bits, GroupSubset};

/// Largest order for which [`ShiftTable`] rows are materialised.
pub const SHIFT_TABLE_MAX_ORDER: usize = 1024;

/// For each element `x`, the permutation `e -> e + x` of flat indices.
#[derive(Debug)]
pub struct ShiftTable {
    order: usize,
    rows: Vec<u32>,
}

impl ShiftTable {
    pub fn build(g: &GroupSpec) -> Self {
        let n = g.order();
        let mut rows = Vec::with_capacity(n * n);
        for x in 0..n {
            rows.extend((0..n).map(|e| g.add_raw(e, x) as u32));
        }
        ShiftTable { order: n, rows }
    }

    pub fn row(&self, x: Element) -> &[u32] {
        &self.rows[x.index() * self.order..(x.index() + 1) * self.order]
    }

    /// `B + x`, one element at a time.
    pub fn apply(&self, b: &GroupSubset, x: Element) -> GroupSubset {
        let row = self.row(x);
        GroupSubset::from_elements(b.group(), b.iter().map(|e| Element(row[e.index()] as usize)))
    }
}

impl GroupSpec {
    /// The cached shift table, built on first use; `None` above
    /// [`SHIFT_TABLE_MAX_ORDER`].
    pub fn shift_table(&self) -> Option<&ShiftTable> {
        self.shift_table
            .get_or_init(|| (self.order() <= SHIFT_TABLE_MAX_ORDER).then(|| ShiftTable::build(self)))
            .as_ref()
    }
}

fn zero_words(g: &GroupSpec) -> Vec<u64> {
    let mut w = vec![0u64; crate::subset::word_count(g.order())];
    bits::set(&mut w, 0);
    w
}

/// `Σ(S)`: all sums of subsets of `S`, the empty sum included.
pub fn sigma(s: &GroupSubset) -> GroupSubset {
    let g = s.group();
    let mut b = zero_words(g);
    let mut scratch = b.clone();
    for x in s.iter() {
        scratch.copy_from_slice(&b);
        bits::or_translate(g, &scratch, x.index(), &mut b);
    }
    GroupSubset::from_words(g, b)
}

/// `Σ*(S)`: sums over non-empty subsets only.
pub fn sigma_star(s: &GroupSubset) -> GroupSubset {
    let g = s.group();
    let mut all = zero_words(g);
    let mut nonempty = vec![0u64; all.len()];
    let mut scratch = all.clone();
    for x in s.iter() {
        scratch.copy_from_slice(&all);
        bits::or_translate(g, &scratch, x.index(), &mut nonempty);
        bits::or_translate(g, &scratch, x.index(), &mut all);
    }
    GroupSubset::from_words(g, nonempty)
}

/// `X + Y`.
pub fn sumset(x: &GroupSubset, y: &GroupSubset) -> Result<GroupSubset> {
    x.same_group(y)?;
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let g = x.group();
    let mut out = vec![0u64; large.words().len()];
    for e in small.iter() {
        bits::or_translate(g, large.words(), e.index(), &mut out);
    }
    Ok(GroupSubset::from_words(g, out))
}

/// `jA = A + ... + A` (`j` summands); `0A = {0}`.
pub fn iterated_sumset(j: i64, a: &GroupSubset) -> Result<GroupSubset> {
    if j < 0 {
        return Err(Error::KOutOfRange { k: j, max: usize::MAX });
    }
    let mut result = GroupSubset::zero(a.group());
    let mut base = a.clone();
    let mut j = j as u64;
    while j > 0 {
        if j & 1 == 1 {
            result = sumset(&result, &base)?;
        }
        j >>= 1;
        if j > 0 {
            base = sumset(&base, &base)?;
        }
    }
    Ok(result)
}

/// `k∧A`: sums of exactly `k` pairwise distinct elements of `A`.
pub fn k_wedge(k: i64, a: &GroupSubset) -> Result<GroupSubset> {
    if k < 0 || k as usize > a.len() {
        return Err(Error::KOutOfRange { k, max: a.len() });
    }
    Ok(k_wedge_layers(a, k as usize).pop().expect("k+1 layers"))
}

/// `[0∧A, 1∧A, ..., |A|∧A]` from a single pass.
pub fn k_wedge_all(a: &GroupSubset) -> Vec<GroupSubset> {
    k_wedge_layers(a, a.len())
}

fn k_wedge_layers(a: &GroupSubset, k: usize) -> Vec<GroupSubset> {
    let g = a.group();
    let words = crate::subset::word_count(g.order());
    let mut layers = vec![vec![0u64; words]; k + 1];
    layers[0] = zero_words(g);
    for (i, x) in a.iter().enumerate() {
        for c in (1..=k.min(i + 1)).rev() {
            let (lo, hi) = layers.split_at_mut(c);
            bits::or_translate(g, &lo[c - 1], x.index(), &mut hi[0]);
        }
    }
    layers
        .into_iter()
        .map(|w| GroupSubset::from_words(g, w))
        .collect()
}

fn fixes(x: &GroupSubset, shift: usize, scratch: &mut [u64]) -> bool {
    scratch.iter_mut().for_each(|w| *w = 0);
    bits::or_translate(x.group(), x.words(), shift, scratch);
    scratch == x.words()
}

/// The period (stabiliser) `K(X) = {g : X + g = X}`. `K(∅) = G`.
pub fn period(x: &GroupSubset) -> Subgroup {
    let g = x.group();
    let Some(x0) = x.min_element() else {
        return Subgroup::whole(g);
    };
    let mut scratch = vec![0u64; x.words().len()];
    let carrier = GroupSubset::from_elements(
        g,
        x.iter()
            .map(|e| g.sub(e, x0))
            .filter(|d| fixes(x, d.index(), &mut scratch)),
    );
    Subgroup::from_trusted_carrier(carrier)
}

/// `K(X) = {0}`. The empty set is aperiodic only in the trivial group.
pub fn is_aperiodic(x: &GroupSubset) -> bool {
    let g = x.group();
    let Some(x0) = x.min_element() else {
        return g.order() == 1;
    };
    let mut scratch = vec![0u64; x.words().len()];
    !x.iter()
        .skip(1)
        .any(|e| fixes(x, g.sub(e, x0).index(), &mut scratch))
}

/// `λ_B(x) = |(B + x) \ B|`.
pub fn lambda(b: &GroupSubset, x: Element) -> usize {
    let g = b.group();
    let mut shifted = vec![0u64; b.words().len()];
    bits::or_translate(g, b.words(), x.index(), &mut shifted);
    shifted
        .iter()
        .zip(b.words())
        .map(|(s, w)| (s & !w).count_ones() as usize)
        .sum()
}

/// `λ_B(x)` for every element `x`, indexed by flat index.
pub fn lambda_profile(b: &GroupSubset) -> Vec<usize> {
    b.group().elements().map(|x| lambda(b, x)).collect()
}

/// `Ŝ = S ∪ {0} ∪ (-S)`.
pub fn hat(s: &GroupSubset) -> GroupSubset {
    s.union(&s.neg())
        .and_then(|u| u.union(&GroupSubset::zero(s.group())))
        .expect("same group")
}

/// Convenience: the whole-group check `X = G`.
pub fn is_full(x: &GroupSubset) -> bool {
    x.len() == x.group().order()
}
