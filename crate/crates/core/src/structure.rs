//! Structural certificates: Kneser checks, progressions, Vosper subsets,
//! Hamidoune–Plagne representations, faithfulness and the coset
//! decompositions behind the main bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::subgroup::{span, Quotient, Subgroup, SubgroupLattice};
use crate::subset::GroupSubset;
use crate::sumset::{hat, is_full, period, sigma, sumset};

/// Default cap on the quotient order for the brute-force Vosper test.
pub const DEFAULT_VOSPER_CAP: usize = 20;
/// Masks are single machine words.
const VOSPER_HARD_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct KneserReport {
    pub lhs: usize,
    pub rhs: i64,
    pub period: Subgroup,
}

/// `|X+Y| ≥ |X+H| + |Y+H| − |H|` with `H` the period of `X+Y`. A violation
/// can only come from a broken kernel and is returned as an error.
pub fn kneser_check(x: &GroupSubset, y: &GroupSubset) -> Result<KneserReport> {
    let xy = sumset(x, y)?;
    let h = period(&xy);
    let xh = sumset(x, h.carrier())?;
    let yh = sumset(y, h.carrier())?;
    let rhs = xh.len() as i64 + yh.len() as i64 - h.order() as i64;
    if (xy.len() as i64) < rhs {
        return Err(Error::Inconsistency(format!(
            "Kneser bound fails for X = {x}, Y = {y}: {} < {rhs}",
            xy.len()
        )));
    }
    Ok(KneserReport {
        lhs: xy.len(),
        rhs,
        period: h,
    })
}

/// Finds `(a, d)` with `X = {a, a+d, …, a+(|X|−1)d}`, all terms distinct.
///
/// Differences are scanned in increasing flat index; `d = 0` is used only
/// for singletons.
pub fn is_arithmetic_progression(x: &GroupSubset) -> Result<Option<(Element, Element)>> {
    let g = x.group();
    let first = x.min_element().ok_or(Error::EmptySet("X"))?;
    if x.len() == 1 {
        return Ok(Some((first, g.zero())));
    }
    for d in g.elements().skip(1) {
        let mut starts = x.iter().filter(|&a| !x.contains(g.sub(a, d)));
        match (starts.next(), starts.next()) {
            (None, _) => {
                // X is closed under +d: a single coset of ⟨d⟩ or nothing.
                if x.len() == g.element_order(d) {
                    return Ok(Some((first, d)));
                }
            }
            (Some(a), None) => {
                let mut cur = a;
                let mut ok = true;
                for _ in 1..x.len() {
                    cur = g.add(cur, d);
                    if !x.contains(cur) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some((a, d)));
                }
            }
            _ => {}
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VosperResult {
    pub is_vosper: bool,
    /// A smallest `Y ∋ 0` with `|X+Y| < min(|G|−1, |X|+|Y|)`.
    pub witness: Option<GroupSubset>,
}

pub fn is_vosper(x: &GroupSubset) -> Result<VosperResult> {
    is_vosper_with_cap(x, DEFAULT_VOSPER_CAP)
}

/// `|X+Y| ≥ min(|G|−1, |X|+|Y|)` for every `Y` with `|Y| ≥ 2`.
///
/// Both sides are translation invariant in `Y`, so only `Y ∋ 0` are visited.
/// Once `|X|+|Y| > |G|` the sumset is all of `G` and nothing can fail.
pub fn is_vosper_with_cap(x: &GroupSubset, cap: usize) -> Result<VosperResult> {
    let g = x.group();
    let n = g.order();
    let cap = cap.min(VOSPER_HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group order for the Vosper test",
            value: n,
            cap,
        });
    }
    let shifted: Vec<u64> = g.elements().map(|y| to_mask(&x.translate(y))).collect();
    let max_y = n.saturating_sub(x.len()).min(n);
    for k in 2..=max_y {
        let bound = (n - 1).min(x.len() + k) as u32;
        let mut chosen = vec![0usize];
        if let Some(y) = vosper_dfs(&shifted, n, k, bound, 1, shifted[0], &mut chosen) {
            let w = GroupSubset::from_elements(g, y.into_iter().map(|i| g.elem(i)));
            return Ok(VosperResult {
                is_vosper: false,
                witness: Some(w),
            });
        }
    }
    Ok(VosperResult {
        is_vosper: true,
        witness: None,
    })
}

fn to_mask(x: &GroupSubset) -> u64 {
    x.iter().fold(0u64, |m, e| m | (1u64 << e.index()))
}

fn vosper_dfs(
    shifted: &[u64],
    n: usize,
    k: usize,
    bound: u32,
    next: usize,
    acc: u64,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if acc.count_ones() >= bound {
        return None;
    }
    if chosen.len() == k {
        return Some(chosen.clone());
    }
    let need = k - chosen.len();
    for y in next..=(n - need) {
        chosen.push(y);
        if let Some(w) = vosper_dfs(shifted, n, k, bound, y + 1, acc | shifted[y], chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepresentationKind {
    Ap,
    Vosper,
}

/// A subgroup `H` with `|Â+H| < min(|G|, |H|+|Â|)` such that `φ(Â)` is an
/// arithmetic progression or a Vosper subset of `G/H`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub subgroup: Subgroup,
    pub kind: RepresentationKind,
    /// Start and difference of the progression, as quotient elements.
    pub ap_params: Option<(Element, Element)>,
    pub quotient_size: usize,
}

impl Representation {
    /// Re-derives the certificate for `a` from scratch.
    pub fn revalidate(&self, a: &GroupSubset, vosper_cap: usize) -> Result<bool> {
        let h = &self.subgroup;
        if !condition_holds(a, h)? {
            return Ok(false);
        }
        let q = Quotient::new(h)?;
        let image = q.project_set(a);
        Ok(match self.kind {
            RepresentationKind::Ap => match self.ap_params {
                Some((start, d)) => {
                    let qg = q.group();
                    let mut cur = start;
                    let mut terms = GroupSubset::empty(qg);
                    for _ in 0..image.len() {
                        terms = terms.with(cur);
                        cur = qg.add(cur, d);
                    }
                    terms.len() == image.len() && terms == image
                }
                None => false,
            },
            RepresentationKind::Vosper => is_vosper_with_cap(&image, vosper_cap)?.is_vosper,
        })
    }

    /// `group set H-generators kind ap-params`, space separated.
    pub fn to_line(&self, a: &GroupSubset) -> String {
        let g = a.group();
        let gens: Vec<String> = self
            .subgroup
            .generators()
            .iter()
            .map(|&x| g.format_element(x))
            .collect();
        let kind = match self.kind {
            RepresentationKind::Ap => "ap",
            RepresentationKind::Vosper => "vosper",
        };
        let ap = match self.ap_params {
            Some((s, d)) => format!("{},{}", s.index(), d.index()),
            None => "-".into(),
        };
        format!("{g} {} [{}] {kind} {ap}", a.to_hex(), gens.join(";"))
    }
}

fn condition_holds(a: &GroupSubset, h: &Subgroup) -> Result<bool> {
    let ah = sumset(a, h.carrier())?.len();
    let n = a.group().order();
    Ok(ah < n.min(h.order() + a.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpMode {
    All,
    First,
}

#[derive(Clone, Debug)]
pub struct HpResult {
    /// `Ŝ` generates, contains 0 and `|Ŝ| ≤ |G|/2`.
    pub hypotheses_met: bool,
    pub representations: Vec<Representation>,
    /// Orders of candidate quotients too large for the Vosper test.
    pub skipped_quotients: Vec<usize>,
}

/// All (or the first) AP/Vosper representations of `Ŝ`.
pub fn hp_representation(s: &GroupSubset) -> Result<HpResult> {
    let lattice = SubgroupLattice::new(s.group())?;
    hp_representation_in(s, &lattice, HpMode::All, DEFAULT_VOSPER_CAP)
}

pub fn hp_representation_in(
    s: &GroupSubset,
    lattice: &SubgroupLattice,
    mode: HpMode,
    vosper_cap: usize,
) -> Result<HpResult> {
    let g = s.group();
    if lattice.group() != g {
        return Err(Error::GroupMismatch {
            left: lattice.group().to_string(),
            right: g.to_string(),
        });
    }
    let a = hat(s);
    if span(&a).order() != g.order() {
        return Err(Error::NotGenerating);
    }
    let n = g.order();
    let mut out = HpResult {
        hypotheses_met: 2 * a.len() <= n,
        representations: Vec::new(),
        skipped_quotients: Vec::new(),
    };
    for (i, h) in lattice.subgroups().iter().enumerate() {
        let q = lattice.quotient(i);
        let image = q.project_set(&a);
        if h.order() * image.len() >= n.min(h.order() + a.len()) {
            continue;
        }
        if let Some(params) = is_arithmetic_progression(&image)? {
            out.representations.push(Representation {
                subgroup: h.clone(),
                kind: RepresentationKind::Ap,
                ap_params: Some(params),
                quotient_size: q.order(),
            });
            if mode == HpMode::First {
                return Ok(out);
            }
        }
        if q.order() > vosper_cap.min(VOSPER_HARD_CAP) {
            out.skipped_quotients.push(q.order());
            continue;
        }
        if is_vosper_with_cap(&image, vosper_cap)?.is_vosper {
            out.representations.push(Representation {
                subgroup: h.clone(),
                kind: RepresentationKind::Vosper,
                ap_params: None,
                quotient_size: q.order(),
            });
            if mode == HpMode::First {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    /// `|jÂ| ≥ min(|G|, j(|Â|−1)+1)`.
    Faithful,
    /// `|jÂ| ≥ min(|G|, j(|Â|+1)−1)`.
    SuperFaithful,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub holds: bool,
    pub failing_j: Option<usize>,
    /// `|jŜ|` for `j = 1, 2, …` until `jŜ = G` or the sequence stalls.
    pub sizes: Vec<usize>,
}

/// Checks the growth condition on `Ŝ` for every `j ≥ 1`.
pub fn growth(s: &GroupSubset, kind: Growth) -> GrowthReport {
    let a = hat(s);
    let n = a.group().order() as i64;
    let alen = a.len() as i64;
    let rhs = |j: i64| match kind {
        Growth::Faithful => n.min(j * (alen - 1) + 1),
        Growth::SuperFaithful => n.min(j * (alen + 1) - 1),
    };
    let mut sizes = Vec::new();
    let mut cur = a.clone();
    let mut j = 1i64;
    loop {
        sizes.push(cur.len());
        if (cur.len() as i64) < rhs(j) {
            return GrowthReport {
                holds: false,
                failing_j: Some(j as usize),
                sizes,
            };
        }
        if is_full(&cur) {
            break;
        }
        let next = sumset(&cur, &a).expect("same group");
        if next == cur {
            // Stalled below G: the left side is constant from here on.
            let size = cur.len() as i64;
            let mut k = j + 1;
            while k <= n + 1 {
                if size < rhs(k) {
                    return GrowthReport {
                        holds: false,
                        failing_j: Some(k as usize),
                        sizes,
                    };
                }
                k += 1;
            }
            break;
        }
        cur = next;
        j += 1;
    }
    GrowthReport {
        holds: true,
        failing_j: None,
        sizes,
    }
}

pub fn is_faithful(s: &GroupSubset) -> bool {
    growth(s, Growth::Faithful).holds
}

pub fn is_super_faithful(s: &GroupSubset) -> bool {
    growth(s, Growth::SuperFaithful).holds
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHatReport {
    /// `H ⊆ K(2Ŝ)`.
    pub periodic: bool,
    /// `|Ŝ_Q|+|Ŝ_R| > |H|` for all coset pairs of `φ(Ŝ)` except `(H, H)`.
    pub facts_hold: bool,
    /// `|Ŝ_Q|+|Ŝ_R| ≥ 2|H| − |(Ŝ+H) \ Ŝ|` for the same pairs.
    pub deficit_bound_holds: bool,
    pub failing_pair: Option<(Element, Element)>,
}

pub fn check_2hat_periodic(s: &GroupSubset, h: &Subgroup) -> Result<TwoHatReport> {
    s.same_group(h.carrier())?;
    let a = hat(s);
    let two = sumset(&a, &a)?;
    let periodic = h.is_subgroup_of(&period(&two));
    let q = Quotient::new(h)?;
    let counts = q.fibre_counts(&a);
    let missing = sumset(&a, h.carrier())?.len() - a.len();
    let hh = h.order();
    let cosets: Vec<usize> = (0..q.order()).filter(|&c| counts[c] > 0).collect();
    let zero = q.project(a.group().zero()).index();
    let mut facts_hold = true;
    let mut deficit_bound_holds = true;
    let mut failing_pair = None;
    for (i, &c) in cosets.iter().enumerate() {
        for &r in &cosets[i..] {
            if c == zero && r == zero {
                continue;
            }
            let sum = counts[c] + counts[r];
            if sum + missing < 2 * hh {
                deficit_bound_holds = false;
            }
            if sum <= hh {
                facts_hold = false;
                failing_pair.get_or_insert((q.group().elem(c), q.group().elem(r)));
            }
        }
    }
    Ok(TwoHatReport {
        periodic,
        facts_hold,
        deficit_bound_holds,
        failing_pair,
    })
}

/// `T_i = {Q ∈ G/K : |T ∩ Q| ≥ i}` for `i = 1..l`, `l` the last non-empty
/// layer, as subsets of the quotient group.
pub fn coset_layers(q: &Quotient, t: &GroupSubset) -> Result<Vec<GroupSubset>> {
    t.same_group(q.subgroup().carrier())?;
    let counts = q.fibre_counts(t);
    let top = counts.iter().copied().max().unwrap_or(0);
    Ok((1..=top)
        .map(|i| {
            GroupSubset::from_elements(
                q.group(),
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c >= i)
                    .map(|(qi, _)| q.group().elem(qi)),
            )
        })
        .collect())
}

/// Statistics of `S` relative to an AP-representation `H` of `Ŝ`, after
/// replacing each element on a negative layer by its negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApCaseStats {
    pub h: usize,
    /// `φ(Ŝ) = {−v·d, …, v·d}`.
    pub v: usize,
    pub t: usize,
    pub u: usize,
    pub ell: usize,
    /// `|G/H|`.
    pub m: usize,
    #[serde(skip)]
    pub normalised: GroupSubset,
    /// Layer index of each element of the normalised set, in `0..=v`.
    #[serde(skip)]
    pub layer_sizes: Vec<usize>,
    pub claims: Option<ApClaims>,
}

/// Outcome of the AP-case claims; present only for valid, non-degenerate
/// inputs meeting the proposition's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApClaims {
    /// `4t ≤ h`.
    pub claim_i: bool,
    /// `u ≤ t`.
    pub claim_ii: bool,
    /// `2ℓ ≥ hv(v+1) − 2uv`.
    pub claim_iii: bool,
    /// `ℓ < |G/H|`.
    pub ell_below_m: bool,
    /// `|Σ(S)| ≥ (ℓ−1)h + 4t`, evaluated when `ℓ < |G/H|`.
    pub lemma: Option<bool>,
    pub sigma_size: usize,
}

pub fn ap_case_stats(s: &GroupSubset, h: &Subgroup) -> Result<ApCaseStats> {
    s.same_group(h.carrier())?;
    let g = s.group().clone();
    if !s.is_asymmetric() {
        return Err(Error::InvalidRepresentation(
            "sign normalisation needs S ∩ (−S) = ∅".into(),
        ));
    }
    let a = hat(s);
    if !condition_holds(&a, h)? {
        return Err(Error::InvalidRepresentation(
            "|Ŝ+H| < min(|G|, |H|+|Ŝ|) fails".into(),
        ));
    }
    let q = Quotient::new(h)?;
    let image = q.project_set(&a);
    if image.len() % 2 == 0 {
        return Err(Error::InvalidRepresentation(
            "φ(Ŝ) has even size, no centred progression".into(),
        ));
    }
    let v = (image.len() - 1) / 2;
    let qg = q.group().clone();
    let d = centred_difference(&qg, &image, v).ok_or_else(|| {
        Error::InvalidRepresentation("φ(Ŝ) is not a centred progression".into())
    })?;
    // layer_of[q] = signed index i with q = i·d
    let mut layer_of = vec![None; qg.order()];
    for i in -(v as i64)..=(v as i64) {
        layer_of[qg.mul(i, d).index()] = Some(i);
    }
    let mut normalised = GroupSubset::empty(&g);
    for x in s.iter() {
        let i = layer_of[q.project(x).index()].ok_or_else(|| {
            Error::Inconsistency(format!("{} projects outside φ(Ŝ)", g.format_element(x)))
        })?;
        normalised = normalised.with(if i < 0 { g.neg(x) } else { x });
    }
    let mut layer_sizes = vec![0usize; v + 1];
    for x in normalised.iter() {
        let i = layer_of[q.project(x).index()].expect("checked above");
        layer_sizes[i as usize] += 1;
    }
    let hh = h.order();
    let t = layer_sizes[0];
    let u: usize = layer_sizes[1..].iter().map(|&c| hh - c).sum();
    let ell: usize = layer_sizes.iter().enumerate().map(|(i, &c)| i * c).sum();
    if s.len() + u != v * hh + t {
        return Err(Error::Inconsistency(format!(
            "|S| = {} but vh + t − u = {}",
            s.len(),
            (v * hh + t) as i64 - u as i64
        )));
    }
    let m = q.order();
    let claims = if v >= 1 && span(s).order() == g.order() && is_valid(s) {
        let sig = sigma(s).len();
        let ell_below_m = ell < m;
        Some(ApClaims {
            claim_i: 4 * t <= hh,
            claim_ii: u <= t,
            claim_iii: 2 * ell + 2 * u * v >= hh * v * (v + 1),
            ell_below_m,
            lemma: ell_below_m.then(|| sig as i64 >= (ell as i64 - 1) * hh as i64 + 4 * t as i64),
            sigma_size: sig,
        })
    } else {
        None
    };
    Ok(ApCaseStats {
        h: hh,
        v,
        t,
        u,
        ell,
        m,
        normalised,
        layer_sizes,
        claims,
    })
}

fn centred_difference(qg: &Group, image: &GroupSubset, v: usize) -> Option<Element> {
    if v == 0 {
        return Some(qg.zero());
    }
    qg.elements().skip(1).find(|&d| {
        let terms = GroupSubset::from_elements(
            qg,
            (-(v as i64)..=(v as i64)).map(|i| qg.mul(i, d)),
        );
        terms.len() == 2 * v + 1 && &terms == image
    })
}

/// `2|Σ(S′)| ≤ |⟨S′⟩|` for every non-empty `S′ ⊆ S` (uncapped helper).
fn is_valid(s: &GroupSubset) -> bool {
    crate::bounds::is_valid_subset(s).map(|r| r.is_none()).unwrap_or(false)
}
