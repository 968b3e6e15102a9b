//! Subgroups, spans, subgroup enumeration and quotient groups.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{make_group, Element, Group};
use crate::snf::smith;
use crate::subset::{bits, GroupSubset};
use crate::sumset::sumset;

/// Default cap on the group order for full subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 512;

#[derive(Clone, Debug)]
pub struct Subgroup {
    carrier: GroupSubset,
    generators: OnceLock<Vec<Element>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.carrier.hash(state)
    }
}

impl Subgroup {
    pub fn trivial(g: &Group) -> Self {
        Self::from_trusted_carrier(GroupSubset::zero(g))
    }

    pub fn whole(g: &Group) -> Self {
        Self::from_trusted_carrier(GroupSubset::full(g))
    }

    /// Wraps a carrier already known to be a subgroup.
    pub(crate) fn from_trusted_carrier(carrier: GroupSubset) -> Self {
        debug_assert!(is_closed(&carrier));
        Subgroup {
            carrier,
            generators: OnceLock::new(),
        }
    }

    /// Validates closure before wrapping.
    pub fn from_carrier(carrier: GroupSubset) -> Result<Self> {
        if !is_closed(&carrier) {
            return Err(Error::NotSubgroup(carrier.to_string()));
        }
        Ok(Self::from_trusted_carrier(carrier))
    }

    pub fn group(&self) -> &Group {
        self.carrier.group()
    }

    pub fn carrier(&self) -> &GroupSubset {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    /// `|G : H|`.
    pub fn index(&self) -> usize {
        self.group().order() / self.order()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.carrier.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// A generating list, chosen greedily in flat-index order.
    pub fn generators(&self) -> &[Element] {
        self.generators.get_or_init(|| {
            let g = self.group();
            let mut gens = Vec::new();
            let mut cur = GroupSubset::zero(g);
            for x in self.carrier.iter() {
                if !cur.contains(x) {
                    gens.push(x);
                    cur = adjoin(&cur, x);
                }
            }
            gens
        })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier.is_subset_of(&other.carrier).unwrap_or(false)
    }

    /// `H + K`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        Ok(Self::from_trusted_carrier(sumset(&self.carrier, &other.carrier)?))
    }
}

fn is_closed(c: &GroupSubset) -> bool {
    c.contains(c.group().zero()) && sumset(c, c).map(|s| &s == c).unwrap_or(false)
}

/// `B + ⟨x⟩` for a subgroup `B`, by doubling.
fn adjoin(b: &GroupSubset, x: Element) -> GroupSubset {
    let g = b.group();
    let mut cur = b.words().to_vec();
    let mut step = x;
    loop {
        let mut next = cur.clone();
        bits::or_translate(g, &cur, step.index(), &mut next);
        if next == cur {
            return GroupSubset::from_words(g, cur);
        }
        cur = next;
        step = g.add(step, step);
    }
}

/// `⟨S⟩`, the least subgroup containing `S`; `⟨∅⟩ = {0}`.
pub fn span(s: &GroupSubset) -> Subgroup {
    let g = s.group();
    let mut cur = GroupSubset::zero(g);
    for x in s.iter() {
        if !cur.contains(x) {
            cur = adjoin(&cur, x);
        }
    }
    Subgroup::from_trusted_carrier(cur)
}

/// `⟨S⟩ = G`.
pub fn generates(s: &GroupSubset) -> bool {
    span(s).order() == s.group().order()
}

/// Every subgroup once, ordered by order and then by carrier rank.
pub fn subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

pub fn subgroups_with_cap(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "group order for subgroup enumeration",
            value: g.order(),
            cap,
        });
    }
    let mut seen: HashSet<GroupSubset> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in g.elements() {
        let c = adjoin(&GroupSubset::zero(g), x);
        if seen.insert(c.clone()) {
            cyclic.push(c);
        }
    }
    // Every subgroup is a join of cyclic ones.
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subset_of(a)? {
                    continue;
                }
                let j = sumset(a, c)?;
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<GroupSubset> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.rank_cmp(b)));
    Ok(all.into_iter().map(Subgroup::from_trusted_carrier).collect())
}

/// `A = a + E` with `E` a subgroup of exponent dividing 2.
pub fn is_2_coset(a: &GroupSubset) -> Result<bool> {
    let g = a.group();
    let a0 = a.min_element().ok_or(Error::EmptySet("A"))?;
    if !a.len().is_power_of_two() {
        return Ok(false);
    }
    let e = a.translate(g.neg(a0));
    Ok(e.iter().all(|x| g.add(x, x) == g.zero()) && is_closed(&e))
}

/// `G/H` realised as a concrete group together with the projection.
///
/// Coset ids run over `0..|G/H|`, ordered by the least flat index each coset
/// contains, so id 0 is `H` itself. The quotient group's own element indices
/// come from its invariant-factor presentation and are a separate numbering.
#[derive(Debug, Clone)]
pub struct Quotient {
    sub: Subgroup,
    qgroup: Group,
    to_q: Vec<usize>,
    id_of_q: Vec<usize>,
    q_of_id: Vec<usize>,
    reps: Vec<Element>,
}

impl Quotient {
    pub fn new(h: &Subgroup) -> Result<Self> {
        let g = h.group().clone();
        let k = g.factors().len();
        let mut rel: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { g.factors()[i] as i128 } else { 0 })
                    .collect()
            })
            .collect();
        for &x in h.generators() {
            rel.push(g.coords(x).into_iter().map(|c| c as i128).collect());
        }
        let snf = smith(rel, k);
        let keep: Vec<usize> = (0..k).filter(|&j| snf.diag[j] > 1).collect();
        let qfactors: Vec<i64> = keep.iter().map(|&j| snf.diag[j] as i64).collect();
        let qgroup = if qfactors.is_empty() {
            make_group(&[1])?
        } else {
            make_group(&qfactors)?
        };
        if qgroup.order() * h.order() != g.order() {
            return Err(Error::Inconsistency(format!(
                "quotient of {g} by a subgroup of order {} has order {}",
                h.order(),
                qgroup.order()
            )));
        }
        // Reduce the transform modulo each kept diagonal entry up front.
        let qmod: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                keep.iter()
                    .map(|&j| snf.q[i][j].rem_euclid(snf.diag[j]))
                    .collect()
            })
            .collect();
        let mut to_q = Vec::with_capacity(g.order());
        for x in g.elements() {
            let c = g.coords(x);
            let mut coords = vec![0i64; keep.len()];
            for (t, &j) in keep.iter().enumerate() {
                let m = snf.diag[j];
                let mut acc: i128 = 0;
                for (i, &ci) in c.iter().enumerate() {
                    acc = (acc + ci as i128 * qmod[i][t]) % m;
                }
                coords[t] = acc as i64;
            }
            let q = if keep.is_empty() {
                0
            } else {
                qgroup.element_from_coords(&coords)?.index()
            };
            to_q.push(q);
        }
        let mut id_of_q = vec![usize::MAX; qgroup.order()];
        let mut q_of_id = Vec::with_capacity(qgroup.order());
        let mut reps = Vec::with_capacity(qgroup.order());
        for x in g.elements() {
            let q = to_q[x.index()];
            if id_of_q[q] == usize::MAX {
                id_of_q[q] = q_of_id.len();
                q_of_id.push(q);
                reps.push(x);
            }
        }
        Ok(Quotient {
            sub: h.clone(),
            qgroup,
            to_q,
            id_of_q,
            q_of_id,
            reps,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn parent(&self) -> &Group {
        self.sub.group()
    }

    /// The quotient as a group in its own right.
    pub fn group(&self) -> &Group {
        &self.qgroup
    }

    pub fn order(&self) -> usize {
        self.qgroup.order()
    }

    /// `φ(x)` as an element of [`Quotient::group`].
    pub fn project(&self, x: Element) -> Element {
        self.qgroup.elem(self.to_q[x.index()])
    }

    /// The coset id of `x + H`.
    pub fn coset_id(&self, x: Element) -> usize {
        self.id_of_q[self.to_q[x.index()]]
    }

    pub fn coset_id_of(&self, q: Element) -> usize {
        self.id_of_q[q.index()]
    }

    pub fn element_of_id(&self, id: usize) -> Element {
        self.qgroup.elem(self.q_of_id[id])
    }

    /// Least element of the coset with the given id.
    pub fn representative(&self, id: usize) -> Element {
        self.reps[id]
    }

    /// `φ(X)`.
    pub fn project_set(&self, x: &GroupSubset) -> GroupSubset {
        GroupSubset::from_elements(&self.qgroup, x.iter().map(|e| self.project(e)))
    }

    /// `φ⁻¹(Y)`.
    pub fn preimage(&self, y: &GroupSubset) -> GroupSubset {
        let g = self.parent();
        GroupSubset::from_elements(g, g.elements().filter(|&e| y.contains(self.project(e))))
    }

    /// The coset `φ⁻¹(q)`.
    pub fn coset(&self, q: Element) -> GroupSubset {
        self.sub.carrier().translate(self.reps[self.id_of_q[q.index()]])
    }

    /// `|X ∩ Q|` for every coset, indexed by quotient element.
    pub fn fibre_counts(&self, x: &GroupSubset) -> Vec<usize> {
        let mut counts = vec![0; self.order()];
        for e in x.iter() {
            counts[self.to_q[e.index()]] += 1;
        }
        counts
    }
}

/// The subgroups of one group together with lazily built quotients.
#[derive(Debug)]
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
    quotients: Vec<OnceLock<Quotient>>,
}

impl SubgroupLattice {
    pub fn new(g: &Group) -> Result<Self> {
        Self::with_cap(g, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(g: &Group, cap: usize) -> Result<Self> {
        let subgroups = subgroups_with_cap(g, cap)?;
        let quotients = subgroups.iter().map(|_| OnceLock::new()).collect();
        Ok(SubgroupLattice {
            group: g.clone(),
            subgroups,
            quotients,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn quotient(&self, i: usize) -> &Quotient {
        self.quotients[i].get_or_init(|| Quotient::new(&self.subgroups[i]).expect("valid subgroup"))
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|k| k == h)
    }
}
