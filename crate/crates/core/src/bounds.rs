//! Closed-form bounds and instance checkers for every claim.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{is_prime, Element, Group};
use crate::subgroup::{is_2_coset, span, Quotient, Subgroup, SubgroupLattice};
use crate::subset::{bits, GroupSubset};
use crate::sumset::{hat, is_aperiodic, k_wedge_all, lambda, period, sigma, sigma_star, sumset};
use crate::structure::{
    self, ap_case_stats, check_2hat_periodic, hp_representation_in, HpMode, RepresentationKind,
    DEFAULT_VOSPER_CAP,
};

pub type Q = Ratio<i64>;

/// Default cap on `|S|` for subset-of-`S` enumerations.
pub const DEFAULT_SUBSET_CAP: usize = 20;
/// Default cap on `|G|` for the critical number search.
pub const DEFAULT_CR_CAP: usize = 16;

/// `p/q` with a positive denominator; integers print as `n/1`.
pub fn fmt_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn ser_q<S: Serializer>(q: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&fmt_q(q)),
        None => s.serialize_none(),
    }
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum ClaimId {
    OLSON_T1,
    MAIN_T2,
    MAIN_T2_ODD,
    DEVOS_T3,
    SYM_T4,
    SYM_T4_ODD,
    PERIODIC_T5,
    CONJECTURE,
    KWEDGE_T11,
    LEMMA_2S,
    LEMMA_2S1,
    LEMMA_12,
    LEMMA_13,
    LEMMA_14,
    LEMMA_18,
    LEMMA_19,
    LEMMA_20,
    PREHISTORIC,
    KNESER,
    OBS_APERIODIC,
    HP_T10,
}

impl ClaimId {
    pub const ALL: [ClaimId; 21] = [
        ClaimId::OLSON_T1,
        ClaimId::MAIN_T2,
        ClaimId::MAIN_T2_ODD,
        ClaimId::DEVOS_T3,
        ClaimId::SYM_T4,
        ClaimId::SYM_T4_ODD,
        ClaimId::PERIODIC_T5,
        ClaimId::CONJECTURE,
        ClaimId::KWEDGE_T11,
        ClaimId::LEMMA_2S,
        ClaimId::LEMMA_2S1,
        ClaimId::LEMMA_12,
        ClaimId::LEMMA_13,
        ClaimId::LEMMA_14,
        ClaimId::LEMMA_18,
        ClaimId::LEMMA_19,
        ClaimId::LEMMA_20,
        ClaimId::PREHISTORIC,
        ClaimId::KNESER,
        ClaimId::OBS_APERIODIC,
        ClaimId::HP_T10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::OLSON_T1 => "OLSON_T1",
            ClaimId::MAIN_T2 => "MAIN_T2",
            ClaimId::MAIN_T2_ODD => "MAIN_T2_ODD",
            ClaimId::DEVOS_T3 => "DEVOS_T3",
            ClaimId::SYM_T4 => "SYM_T4",
            ClaimId::SYM_T4_ODD => "SYM_T4_ODD",
            ClaimId::PERIODIC_T5 => "PERIODIC_T5",
            ClaimId::CONJECTURE => "CONJECTURE",
            ClaimId::KWEDGE_T11 => "KWEDGE_T11",
            ClaimId::LEMMA_2S => "LEMMA_2S",
            ClaimId::LEMMA_2S1 => "LEMMA_2S1",
            ClaimId::LEMMA_12 => "LEMMA_12",
            ClaimId::LEMMA_13 => "LEMMA_13",
            ClaimId::LEMMA_14 => "LEMMA_14",
            ClaimId::LEMMA_18 => "LEMMA_18",
            ClaimId::LEMMA_19 => "LEMMA_19",
            ClaimId::LEMMA_20 => "LEMMA_20",
            ClaimId::PREHISTORIC => "PREHISTORIC",
            ClaimId::KNESER => "KNESER",
            ClaimId::OBS_APERIODIC => "OBS_APERIODIC",
            ClaimId::HP_T10 => "HP_T10",
        }
    }

    /// The statement being checked, in words.
    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::OLSON_T1 => "G = Z_p, S ∩ (−S) = ∅: |Σ(S)| ≥ |S|(|S|+1)/2 + ξ(S) or |Σ(S)| > p/2",
            ClaimId::MAIN_T2 => "S ∩ (−S) = ∅, |S| ≥ 2: |Σ(S)| ≥ |S|(|S|−1)/2 + 3, or some non-empty S′ ⊆ S has |Σ(S′)| > |⟨S′⟩|/2",
            ClaimId::MAIN_T2_ODD => "as MAIN_T2 with |G| odd and |S|(|S|+1)/2 + ξ(S) as the first alternative",
            ClaimId::DEVOS_T3 => "0 ∉ S, Σ(S) aperiodic: |Σ(S)| ≥ |S|²/64",
            ClaimId::SYM_T4 => "S = −S, 0 ∉ S, |S| ≥ 4, Σ(S) aperiodic: |Σ(S)| ≥ |S|(|S|−2)/4 + 5",
            ClaimId::SYM_T4_ODD => "as SYM_T4 with |G| odd: |Σ(S)| ≥ |S|(|S|+2)/4 + 2ξ′(S) − 1",
            ClaimId::PERIODIC_T5 => "S = −S, K the period of Σ(S): |Σ(S)| ≥ |S∖K|(|S∖K|−2)/4 + |K|",
            ClaimId::CONJECTURE => "0 ∉ S, Σ(S) aperiodic: |Σ(S)| ≥ |S|(|S|+2)/4 + 1",
            ClaimId::KWEDGE_T11 => "1 ≤ k ≤ |A|−1: |k∧A| ≥ |A| unless A is a 2-coset and k ∈ {2, |A|−2}, then |k∧A| = |A|−1",
            ClaimId::LEMMA_2S => "S ∩ (−S) = ∅: |Σ(S)| ≥ 2|S|",
            ClaimId::LEMMA_2S1 => "S ∩ (−S) = ∅, |Σ(S)| ≤ |G|/2, |S| ≥ 4: |Σ(S)| ≥ 2|S| + 1",
            ClaimId::LEMMA_12 => "λ_B(x) = λ_{G∖B}(x), λ_B(x) = λ_B(−x), λ_B(x+y) ≤ λ_B(x)+λ_B(y), Σ_{x∈C} λ_B(x) ≥ |B|(|C|−|B|+1)",
            ClaimId::LEMMA_13 => "0 ∉ S, x ∈ S: Σ((S∖{x}) ∪ {−x}) = Σ(S) − x, same size and aperiodicity",
            ClaimId::LEMMA_14 => "⟨S⟩ = G, 0 ∉ S, |B| ≤ |G|/2: max_{x∈S} λ_B(x) ≥ min((|B|+1)/2, (|S ∪ −S|+2)/4)",
            ClaimId::LEMMA_18 => "valid S with an AP-representation: 4t ≤ h, u ≤ t, ℓ ≥ hv(v+1)/2 − uv, ℓ < |G/H|, |Σ(S)| ≥ (ℓ−1)h + 4t",
            ClaimId::LEMMA_19 => "⟨S⟩ = G, S ∩ (−S) = ∅, s ≥ 3, b ≤ |G|/2, Vosper-representation: max λ_B > s − s(s−3)/b",
            ClaimId::LEMMA_20 => "as LEMMA_19 with |G| odd: max λ_B ≥ 4(s+1)b(t−b+1)/(t(t+2s+6)+q(2s−q−2))",
            ClaimId::PREHISTORIC => "|X|+|Y| > |G| ⇒ X+Y = G (coset form with H)",
            ClaimId::KNESER => "|X+Y| ≥ |X+H| + |Y+H| − |H|, H the period of X+Y",
            ClaimId::OBS_APERIODIC => "T ⊆ S: Σ(S) aperiodic ⇒ Σ(T) aperiodic; image of Σ(T) in G/K(Σ(S)) aperiodic",
            ClaimId::HP_T10 => "A = Ŝ generating, |A| ≤ |G|/2: some H has |A+H| < min(|G|, |H|+|A|) with φ(A) an AP or Vosper",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown claim {s:?}")))
    }
}

/// `ξ(S)`: 1 for even `|S|`, otherwise `[2|S|² + 3|S| ≤ 2|⟨S⟩| + 5]`.
pub fn xi(s: &GroupSubset) -> Result<u8> {
    if s.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    Ok(xi_from(s.len(), span(s).order()))
}

fn xi_from(n: usize, span_order: usize) -> u8 {
    if n.is_multiple_of(2) {
        1
    } else {
        u8::from(2 * n * n + 3 * n <= 2 * span_order + 5)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPrime {
    /// `[|S|²/2 + 3|S|/2 ≤ 2|⟨S⟩| + 5]`.
    pub displayed: u8,
    /// `ξ(S′)` for the half `S′` taking the smaller index of each `±` pair.
    pub of_half: u8,
    pub half: GroupSubset,
}

pub fn xi_prime(s: &GroupSubset) -> Result<XiPrime> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = s.group();
    if s.iter().any(|x| g.add(x, x) == g.zero()) {
        return Err(Error::SmallOrderElement);
    }
    if s.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    let half = GroupSubset::from_elements(g, s.iter().filter(|&x| x.index() < g.neg(x).index()));
    let span_order = span(s).order();
    let n = s.len();
    let displayed = u8::from(n * n + 3 * n <= 4 * span_order + 10);
    let of_half = xi_from(half.len(), span(&half).order());
    if half.len() % 2 == 1 && displayed != of_half {
        return Err(Error::Inconsistency(format!(
            "ξ′ forms disagree for odd half of {s}"
        )));
    }
    Ok(XiPrime {
        displayed,
        of_half,
        half,
    })
}

/// The first `S′` (smallest cardinality, then lexicographic) with
/// `2|Σ(S′)| > |⟨S′⟩|`, or `None` when `S` is valid.
pub fn is_valid_subset(s: &GroupSubset) -> Result<Option<GroupSubset>> {
    is_valid_subset_with_cap(s, DEFAULT_SUBSET_CAP)
}

pub fn is_valid_subset_with_cap(s: &GroupSubset, cap: usize) -> Result<Option<GroupSubset>> {
    if s.len() > cap {
        return Err(Error::CapExceeded {
            what: "|S| for subset enumeration",
            value: s.len(),
            cap,
        });
    }
    Ok(smallest_large_subset(s))
}

/// Iterative deepening over subset size, sharing `Σ` and `⟨·⟩` along the
/// inclusion tree.
fn smallest_large_subset(s: &GroupSubset) -> Option<GroupSubset> {
    let g = s.group();
    let elems = s.elements();
    let zero = GroupSubset::zero(g);
    for k in 1..=elems.len() {
        let mut chosen = Vec::new();
        if let Some(w) = large_dfs(g, &elems, k, 0, &zero, &zero, &mut chosen) {
            return Some(w);
        }
    }
    None
}

fn large_dfs(
    g: &Group,
    elems: &[Element],
    k: usize,
    start: usize,
    sig: &GroupSubset,
    sub: &GroupSubset,
    chosen: &mut Vec<Element>,
) -> Option<GroupSubset> {
    if chosen.len() == k {
        return (2 * sig.len() > sub.len())
            .then(|| GroupSubset::from_elements(g, chosen.iter().copied()));
    }
    let need = k - chosen.len();
    for i in start..=(elems.len() - need) {
        let x = elems[i];
        let sig2 = sig.union(&sig.translate(x)).expect("same group");
        let sub2 = if sub.contains(x) {
            sub.clone()
        } else {
            let mut cur = sub.clone();
            let mut step = x;
            loop {
                let next = cur.union(&cur.translate(step)).expect("same group");
                if next == cur {
                    break;
                }
                cur = next;
                step = g.add(step, step);
            }
            cur
        };
        chosen.push(x);
        if let Some(w) = large_dfs(g, elems, k, i + 1, &sig2, &sub2, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// Exact right-hand side of a closed-form bound.
pub fn bound_value(claim: ClaimId, s: &GroupSubset) -> Result<Q> {
    let n = s.len() as i64;
    let g = s.group();
    Ok(match claim {
        ClaimId::OLSON_T1 | ClaimId::MAIN_T2_ODD => q(n * (n + 1), 2) + i64::from(xi(s)?),
        ClaimId::MAIN_T2 => {
            if g.order() % 2 == 1 {
                q(n * (n + 1), 2) + i64::from(xi(s)?)
            } else {
                q(n * (n - 1), 2) + 3
            }
        }
        ClaimId::DEVOS_T3 => q(n * n, 64),
        ClaimId::SYM_T4 => q(n * (n - 2), 4) + 5,
        ClaimId::SYM_T4_ODD => q(n * (n + 2), 4) + 2 * i64::from(xi_prime(s)?.displayed) - 1,
        ClaimId::PERIODIC_T5 => {
            let k = period(&sigma(s));
            let rest = s.difference(k.carrier())?.len() as i64;
            q(rest * (rest - 2), 4) + k.order() as i64
        }
        ClaimId::CONJECTURE => q(n * (n + 2), 4) + 1,
        ClaimId::LEMMA_2S => qi(2 * n),
        ClaimId::LEMMA_2S1 => qi(2 * n + 1),
        other => return Err(Error::NoClosedForm(other.to_string())),
    })
}

/// Claims with a closed-form right-hand side in terms of `S` alone.
pub fn has_closed_form(claim: ClaimId) -> bool {
    matches!(
        claim,
        ClaimId::OLSON_T1
            | ClaimId::MAIN_T2
            | ClaimId::MAIN_T2_ODD
            | ClaimId::DEVOS_T3
            | ClaimId::SYM_T4
            | ClaimId::SYM_T4_ODD
            | ClaimId::PERIODIC_T5
            | ClaimId::CONJECTURE
            | ClaimId::LEMMA_2S
            | ClaimId::LEMMA_2S1
    )
}

/// Claim-specific extra inputs.
#[derive(Clone, Debug, Default)]
pub struct Aux {
    /// `B` for the λ lemmas.
    pub b: Option<GroupSubset>,
    /// Second operand `Y` for sumset claims.
    pub y: Option<GroupSubset>,
    /// `T ⊆ S` for the aperiodicity observation.
    pub t_subset: Option<GroupSubset>,
    /// A subgroup (coset forms, AP-case statistics).
    pub h: Option<Subgroup>,
    pub k: Option<i64>,
    pub elem_x: Option<Element>,
    pub elem_y: Option<Element>,
    /// `t` for the odd-order λ bound.
    pub t: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    /// `None` for purely informational entries.
    pub holds: Option<bool>,
    pub detail: String,
}

impl SubCheck {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        SubCheck {
            name: name.into(),
            holds: Some(holds),
            detail: detail.into(),
        }
    }

    fn info(name: &str, detail: impl Into<String>) -> Self {
        SubCheck {
            name: name.into(),
            holds: None,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub group: String,
    pub set: String,
    pub hypotheses_met: bool,
    /// The first unmet hypothesis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lhs: Option<i64>,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Option<Q>,
    #[serde(serialize_with = "ser_q")]
    pub slack: Option<Q>,
    /// Vacuously true when the hypotheses are unmet.
    pub holds: bool,
    pub branch: Option<String>,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<SubCheck>,
}

impl ClaimReport {
    fn new(claim: ClaimId, s: &GroupSubset) -> Self {
        ClaimReport {
            claim,
            group: s.group().to_string(),
            set: s.to_hex(),
            hypotheses_met: true,
            reason: None,
            lhs: None,
            rhs: None,
            slack: None,
            holds: true,
            branch: None,
            witness: None,
            subchecks: Vec::new(),
        }
    }

    fn unmet(mut self, reason: impl Into<String>) -> Self {
        self.hypotheses_met = false;
        self.reason = Some(reason.into());
        self.holds = true;
        self
    }

    fn sides(&mut self, lhs: i64, rhs: Q) {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.slack = Some(qi(lhs) - rhs);
    }

    /// Hypotheses met and the conclusion fails.
    pub fn violated(&self) -> bool {
        self.hypotheses_met && !self.holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

fn require<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::MalformedAux(format!("{what} is required for this claim")))
}

fn same(s: &GroupSubset, other: &GroupSubset) -> Result<()> {
    s.same_group(other)
        .map_err(|_| Error::MalformedAux("auxiliary set lives in a different group".into()))
}

fn generates(s: &GroupSubset) -> bool {
    span(s).order() == s.group().order()
}

/// `max_{x∈S} λ_B(x)` and an element attaining it.
pub fn lambda_max(b: &GroupSubset, s: &GroupSubset) -> (usize, Option<Element>) {
    s.iter()
        .map(|x| (lambda(b, x), Some(x)))
        .fold((0, None), |best, cur| if cur.0 > best.0 || best.1.is_none() { cur } else { best })
}

/// `q` in `t = r(2s+2) + q` with `−1 ≤ q ≤ 2s`.
pub fn odd_vosper_remainder(t: i64, s: i64) -> i64 {
    (t + 1).rem_euclid(2 * s + 2) - 1
}

/// `4(s+1)b(t−b+1) / (t(t+2s+6) + q(2s−q−2))`.
pub fn odd_vosper_lambda_rhs(s: i64, b: i64, t: i64) -> Q {
    let qq = odd_vosper_remainder(t, s);
    q(4 * (s + 1) * b * (t - b + 1), t * (t + 2 * s + 6) + qq * (2 * s - qq - 2))
}

/// Evaluates one claim on one instance.
///
/// Closed-form claims report both sides even when the hypotheses are unmet;
/// such reports assert nothing.
pub fn check(claim: ClaimId, s: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let mut r = dispatch(claim, s, aux)?;
    if !r.hypotheses_met && r.lhs.is_none() && has_closed_form(claim) {
        if let Ok(rhs) = bound_value(claim, s) {
            r.sides(sigma(s).len() as i64, rhs);
        }
    }
    Ok(r)
}

fn dispatch(claim: ClaimId, s: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let g = s.group().clone();
    let n = g.order();
    let r = ClaimReport::new(claim, s);
    match claim {
        ClaimId::OLSON_T1 => check_olson(r, s),
        ClaimId::MAIN_T2 => check_main(r, s, false),
        ClaimId::MAIN_T2_ODD => {
            if n.is_multiple_of(2) {
                Ok(r.unmet("|G| is even"))
            } else {
                check_main(r, s, true)
            }
        }
        ClaimId::DEVOS_T3 | ClaimId::CONJECTURE => {
            if s.contains(g.zero()) {
                return Ok(r.unmet("0 ∈ S"));
            }
            let sig = sigma(s);
            if !is_aperiodic(&sig) {
                return Ok(r.unmet("Σ(S) is periodic"));
            }
            let mut r = r;
            r.sides(sig.len() as i64, bound_value(claim, s)?);
            r.holds = r.slack.unwrap() >= qi(0);
            if claim == ClaimId::CONJECTURE {
                r.subchecks
                    .push(SubCheck::info("generating", generates(s).to_string()));
            }
            Ok(r)
        }
        ClaimId::SYM_T4 | ClaimId::SYM_T4_ODD => check_sym(r, s, claim == ClaimId::SYM_T4_ODD),
        ClaimId::PERIODIC_T5 => check_periodic(r, s),
        ClaimId::KWEDGE_T11 => check_kwedge(r, s, aux),
        ClaimId::LEMMA_2S | ClaimId::LEMMA_2S1 => {
            if !s.is_asymmetric() {
                return Ok(r.unmet("S ∩ (−S) ≠ ∅"));
            }
            let sig = sigma(s).len();
            if claim == ClaimId::LEMMA_2S1 {
                if 2 * sig > n {
                    return Ok(r.unmet("|Σ(S)| > |G|/2"));
                }
                if s.len() < 4 {
                    return Ok(r.unmet("|S| < 4"));
                }
            }
            let mut r = r;
            r.sides(sig as i64, bound_value(claim, s)?);
            r.holds = r.slack.unwrap() >= qi(0);
            Ok(r)
        }
        ClaimId::LEMMA_12 => check_lambda_identities(r, s, aux),
        ClaimId::LEMMA_13 => check_swap(r, s, aux),
        ClaimId::LEMMA_14 => {
            let b = require(&aux.b, "B")?;
            same(s, b)?;
            if !generates(s) {
                return Ok(r.unmet("S does not generate G"));
            }
            if s.contains(g.zero()) {
                return Ok(r.unmet("0 ∈ S"));
            }
            if b.is_empty() {
                return Ok(r.unmet("B is empty"));
            }
            if 2 * b.len() > n {
                return Ok(r.unmet("|B| > |G|/2"));
            }
            let sym = s.union(&s.neg())?.len() as i64;
            let rhs = q(b.len() as i64 + 1, 2).min(q(sym + 2, 4));
            let (lhs, x) = lambda_max(b, s);
            let mut r = r;
            r.sides(lhs as i64, rhs);
            r.holds = r.slack.unwrap() >= qi(0);
            r.witness = x.map(|x| g.format_element(x));
            Ok(r)
        }
        ClaimId::LEMMA_18 => check_ap_case(r, s, aux),
        ClaimId::LEMMA_19 | ClaimId::LEMMA_20 => check_vosper_lambda(r, s, aux, claim),
        ClaimId::PREHISTORIC => check_prehistoric(r, s, aux),
        ClaimId::KNESER => {
            let y = require(&aux.y, "Y")?;
            same(s, y)?;
            let xy = sumset(s, y)?;
            let h = period(&xy);
            let rhs = sumset(s, h.carrier())?.len() as i64 + sumset(y, h.carrier())?.len() as i64
                - h.order() as i64;
            let mut r = r;
            r.sides(xy.len() as i64, qi(rhs));
            r.holds = r.slack.unwrap() >= qi(0);
            r.witness = Some(h.carrier().to_string());
            Ok(r)
        }
        ClaimId::OBS_APERIODIC => check_obs(r, s, aux),
        ClaimId::HP_T10 => {
            if !generates(s) {
                return Ok(r.unmet("S does not generate G"));
            }
            let a = hat(s);
            if 2 * a.len() > n {
                return Ok(r.unmet("|Ŝ| > |G|/2"));
            }
            let lattice = SubgroupLattice::new(&g)?;
            let res = hp_representation_in(s, &lattice, HpMode::All, DEFAULT_VOSPER_CAP)?;
            let mut r = r;
            let mut all_valid = true;
            for c in &res.representations {
                all_valid &= c.revalidate(&a, DEFAULT_VOSPER_CAP)?;
            }
            r.sides(res.representations.len() as i64, qi(1));
            r.holds = !res.representations.is_empty() && all_valid;
            let has = |k| res.representations.iter().any(|c| c.kind == k);
            r.branch = Some(
                match (has(RepresentationKind::Ap), has(RepresentationKind::Vosper)) {
                    (true, true) => "ap+vosper",
                    (true, false) => "ap",
                    (false, true) => "vosper",
                    (false, false) => "none",
                }
                .into(),
            );
            r.witness = res.representations.first().map(|c| c.to_line(&a));
            r.subchecks
                .push(SubCheck::new("certificates_revalidate", all_valid, ""));
            if !res.skipped_quotients.is_empty() {
                r.subchecks.push(SubCheck::info(
                    "vosper_skipped",
                    format!("quotient orders {:?} above the Vosper cap", res.skipped_quotients),
                ));
            }
            Ok(r)
        }
    }
}

fn check_olson(r: ClaimReport, s: &GroupSubset) -> Result<ClaimReport> {
    let g = s.group();
    if !is_prime(g.order()) {
        return Ok(r.unmet("|G| is not prime"));
    }
    if !s.is_asymmetric() {
        return Ok(r.unmet("S ∩ (−S) ≠ ∅"));
    }
    if s.is_empty() {
        return Ok(r.unmet("S is empty"));
    }
    let sig = sigma(s).len() as i64;
    let mut r = r;
    r.sides(sig, bound_value(ClaimId::OLSON_T1, s)?);
    let i = r.slack.unwrap() >= qi(0);
    let ii = 2 * sig > g.order() as i64;
    r.holds = i || ii;
    r.branch = branch_string(&[("(i)", i), ("(ii)", ii)]);
    Ok(r)
}

fn branch_string(parts: &[(&str, bool)]) -> Option<String> {
    let held: Vec<&str> = parts.iter().filter(|p| p.1).map(|p| p.0).collect();
    (!held.is_empty()).then(|| held.join("+"))
}

fn check_main(r: ClaimReport, s: &GroupSubset, odd_only: bool) -> Result<ClaimReport> {
    let g = s.group();
    if !s.is_asymmetric() {
        return Ok(r.unmet("S ∩ (−S) ≠ ∅"));
    }
    if s.len() < 2 {
        return Ok(r.unmet("|S| < 2"));
    }
    let sig = sigma(s).len() as i64;
    let n = s.len() as i64;
    let rhs_i = q(n * (n - 1), 2) + 3;
    let witness = smallest_large_subset(s);
    let ii = witness.is_some();
    let i = qi(sig) >= rhs_i;
    let odd = g.order() % 2 == 1;
    let mut r = r;
    if odd {
        let rhs_ip = q(n * (n + 1), 2) + i64::from(xi(s)?);
        let ip = qi(sig) >= rhs_ip;
        r.sides(sig, rhs_ip);
        r.holds = (ip || ii) && (i || ii);
        r.branch = branch_string(&[("(i')", ip), ("(ii)", ii)]);
        if !odd_only {
            r.subchecks
                .push(SubCheck::new("(i) or (ii)", i || ii, format!("(i) rhs {}", fmt_q(&rhs_i))));
        }
    } else {
        r.sides(sig, rhs_i);
        r.holds = i || ii;
        r.branch = branch_string(&[("(i)", i), ("(ii)", ii)]);
    }
    r.witness = witness.map(|w| w.to_string());
    Ok(r)
}

fn check_sym(r: ClaimReport, s: &GroupSubset, odd: bool) -> Result<ClaimReport> {
    let g = s.group();
    if odd && g.order().is_multiple_of(2) {
        return Ok(r.unmet("|G| is even"));
    }
    if !s.is_symmetric() {
        return Ok(r.unmet("S is not symmetric"));
    }
    if s.contains(g.zero()) {
        return Ok(r.unmet("0 ∈ S"));
    }
    if s.len() < 4 {
        return Ok(r.unmet("|S| < 4"));
    }
    let sig = sigma(s);
    if !is_aperiodic(&sig) {
        return Ok(r.unmet("Σ(S) is periodic"));
    }
    let mut r = r;
    if !odd {
        r.sides(sig.len() as i64, bound_value(ClaimId::SYM_T4, s)?);
        r.holds = r.slack.unwrap() >= qi(0);
        return Ok(r);
    }
    let xp = match xi_prime(s) {
        Ok(x) => x,
        Err(Error::SmallOrderElement) => return Ok(r.unmet("S contains an element of order 2")),
        Err(e) => return Err(e),
    };
    let n = s.len() as i64;
    let base = q(n * (n + 2), 4) - 1;
    r.sides(sig.len() as i64, base + 2 * i64::from(xp.displayed));
    r.holds = r.slack.unwrap() >= qi(0);
    let def_rhs = base + 2 * i64::from(xp.of_half);
    r.subchecks.push(SubCheck::new(
        "bound with ξ(S′)",
        qi(sig.len() as i64) >= def_rhs,
        format!("ξ(S′) = {}, rhs {}", xp.of_half, fmt_q(&def_rhs)),
    ));
    Ok(r)
}

fn check_periodic(r: ClaimReport, s: &GroupSubset) -> Result<ClaimReport> {
    if !s.is_symmetric() {
        return Ok(r.unmet("S is not symmetric"));
    }
    let sig = sigma(s);
    let k = period(&sig);
    let t = s.difference(k.carrier())?;
    let mut r = r;
    r.sides(sig.len() as i64, bound_value(ClaimId::PERIODIC_T5, s)?);
    r.holds = r.slack.unwrap() >= qi(0);
    r.witness = Some(k.carrier().to_string());
    let quo = Quotient::new(&k)?;
    let layers = structure::coset_layers(&quo, &t)?;
    let mut acc = GroupSubset::zero(quo.group());
    for layer in &layers {
        acc = sumset(&acc, &sigma(layer))?;
    }
    let pre = quo.preimage(&acc);
    r.subchecks.push(SubCheck::new(
        "Σ(S) = φ⁻¹(Σ(T_1)+…+Σ(T_l))",
        pre == sig,
        format!("l = {}", layers.len()),
    ));
    r.subchecks.push(SubCheck::new(
        "layers symmetric",
        layers.iter().all(|l| l.is_symmetric()),
        "",
    ));
    r.subchecks.push(SubCheck::info(
        "Σ(T) = φ⁻¹(Σ(T_1)+…+Σ(T_l))",
        (quo.preimage(&acc) == sigma(&t)).to_string(),
    ));
    Ok(r)
}

fn check_kwedge(r: ClaimReport, a: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    if a.len() < 2 {
        return Ok(r.unmet("|A| < 2"));
    }
    let alen = a.len() as i64;
    let ks: Vec<i64> = match aux.k {
        Some(k) if k < 1 || k > alen - 1 => {
            return Ok(r.unmet(format!("k = {k} outside 1..={}", alen - 1)))
        }
        Some(k) => vec![k],
        None => (1..alen).collect(),
    };
    let layers = k_wedge_all(a);
    let coset2 = is_2_coset(a)?;
    // coset form: A inside one H-coset with |H|/2 < |A| ≤ |H|
    let coset_h = match &aux.h {
        Some(h) => {
            same(a, h.carrier())?;
            let a0 = a.min_element().expect("non-empty");
            let inside = a.translate(a.group().neg(a0)).is_subset_of(h.carrier())?;
            (inside && h.order() < 2 * a.len()).then(|| h.order() as i64)
        }
        None => None,
    };
    let mut r = r;
    let mut worst: Option<(Q, i64, i64, Q, bool)> = None;
    let mut holds = true;
    let mut coset_ok = true;
    for k in ks {
        let lhs = layers[k as usize].len() as i64;
        let exception = coset2 && (k == 2 || k == alen - 2);
        let (rhs, ok) = if exception {
            (alen - 1, lhs == alen - 1)
        } else {
            (alen, lhs >= alen)
        };
        holds &= ok;
        if let Some(hh) = coset_h {
            coset_ok &= lhs >= (hh - 1).min(alen);
        }
        let slack = qi(lhs - rhs);
        if worst.as_ref().is_none_or(|w| slack < w.0 || (!ok && w.4)) {
            worst = Some((slack, k, lhs, qi(rhs), ok));
        }
    }
    let (_, k, lhs, rhs, _) = worst.expect("at least one k");
    r.sides(lhs, rhs);
    r.holds = holds && coset_ok;
    r.branch = Some(if coset2 { "2-coset" } else { "general" }.into());
    r.witness = Some(format!("k = {k}"));
    if coset_h.is_some() {
        r.subchecks
            .push(SubCheck::new("|k∧A| ≥ min(|H|−1, |A|)", coset_ok, ""));
    }
    Ok(r)
}

fn check_lambda_identities(r: ClaimReport, c: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let b = require(&aux.b, "B")?;
    same(c, b)?;
    let g = c.group();
    if b.is_empty() {
        return Ok(r.unmet("B is empty"));
    }
    let comp = b.complement();
    let xs: Vec<Element> = match aux.elem_x {
        Some(x) => vec![x],
        None => g.elements().collect(),
    };
    let ys: Vec<Element> = match aux.elem_y {
        Some(y) => vec![y],
        None => g.elements().collect(),
    };
    let lam: Vec<usize> = g.elements().map(|x| lambda(b, x)).collect();
    let mut complement_ok = true;
    let mut neg_ok = true;
    let mut sub_ok = true;
    for &x in &xs {
        complement_ok &= lam[x.index()] == lambda(&comp, x);
        neg_ok &= lam[x.index()] == lam[g.neg(x).index()];
        for &y in &ys {
            sub_ok &= lam[g.add(x, y).index()] <= lam[x.index()] + lam[y.index()];
        }
    }
    let mut r = r;
    r.subchecks
        .push(SubCheck::new("λ_B(x) = λ_{G∖B}(x)", complement_ok, ""));
    r.subchecks.push(SubCheck::new("λ_B(x) = λ_B(−x)", neg_ok, ""));
    r.subchecks
        .push(SubCheck::new("λ_B(x+y) ≤ λ_B(x) + λ_B(y)", sub_ok, ""));
    let mut holds = complement_ok && neg_ok && sub_ok;
    if c.is_empty() || c.contains(g.zero()) {
        r.subchecks.push(SubCheck::info(
            "Σ_{x∈C} λ_B(x) ≥ |B|(|C|−|B|+1)",
            "skipped: C must be non-empty with 0 ∉ C",
        ));
    } else {
        let lhs: usize = c.iter().map(|x| lam[x.index()]).sum();
        let bl = b.len() as i64;
        let rhs = bl * (c.len() as i64 - bl + 1);
        r.sides(lhs as i64, qi(rhs));
        holds &= lhs as i64 >= rhs;
    }
    r.holds = holds;
    Ok(r)
}

fn check_swap(r: ClaimReport, s: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let g = s.group();
    if s.is_empty() {
        return Ok(r.unmet("S is empty"));
    }
    if s.contains(g.zero()) {
        return Ok(r.unmet("0 ∈ S"));
    }
    let applicable = |x: Element| !s.contains(g.neg(x)) || g.add(x, x) == g.zero();
    let xs: Vec<Element> = match aux.elem_x {
        Some(x) => {
            if !s.contains(x) {
                return Err(Error::MalformedAux("x must belong to S".into()));
            }
            if !applicable(x) {
                return Ok(r.unmet("−x ∈ S with x ≠ −x, so the swap changes |S|"));
            }
            vec![x]
        }
        None => s.iter().filter(|&x| applicable(x)).collect(),
    };
    let sig = sigma(s);
    let ap = is_aperiodic(&sig);
    let mut r = r;
    let mut holds = true;
    let mut first_bad = None;
    for &x in &xs {
        let swapped = s.without(x).with(g.neg(x));
        let sig2 = sigma(&swapped);
        let ok = sig2.len() == sig.len()
            && is_aperiodic(&sig2) == ap
            && sig2 == sig.translate(g.neg(x));
        if !ok && first_bad.is_none() {
            first_bad = Some(x);
        }
        holds &= ok;
    }
    let skipped = s.len() - xs.len();
    r.sides(sig.len() as i64, qi(sig.len() as i64));
    if let Some(x) = first_bad {
        let sig2 = sigma(&s.without(x).with(g.neg(x)));
        r.sides(sig2.len() as i64, qi(sig.len() as i64));
        r.witness = Some(g.format_element(x));
    }
    r.holds = holds;
    r.subchecks.push(SubCheck::info(
        "swaps",
        format!("{} checked, {skipped} skipped (−x ∈ S)", xs.len()),
    ));
    Ok(r)
}

fn check_ap_case(r: ClaimReport, s: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let g = s.group();
    if !generates(s) {
        return Ok(r.unmet("S does not generate G"));
    }
    if !s.is_asymmetric() {
        return Ok(r.unmet("S ∩ (−S) ≠ ∅"));
    }
    if s.len() < 4 {
        return Ok(r.unmet("|S| < 4"));
    }
    if let Some(w) = smallest_large_subset(s) {
        return Ok(r.unmet(format!("S is not valid: {w}")));
    }
    let hs: Vec<Subgroup> = match &aux.h {
        Some(h) => vec![h.clone()],
        None => {
            let lattice = SubgroupLattice::new(g)?;
            hp_representation_in(s, &lattice, HpMode::All, DEFAULT_VOSPER_CAP)?
                .representations
                .into_iter()
                .filter(|c| c.kind == RepresentationKind::Ap)
                .map(|c| c.subgroup)
                .collect()
        }
    };
    let mut r = r;
    let mut any = false;
    let mut holds = true;
    for h in &hs {
        let a = hat(s);
        let q = Quotient::new(h)?;
        let image = q.project_set(&a);
        let cond = sumset(&a, h.carrier())?.len() < g.order().min(h.order() + a.len());
        if !cond || structure::is_arithmetic_progression(&image)?.is_none() {
            continue;
        }
        let st = ap_case_stats(s, h)?;
        let Some(c) = st.claims.clone() else {
            continue;
        };
        any = true;
        let ok = c.claim_i && c.claim_ii && c.claim_iii && c.ell_below_m && c.lemma != Some(false);
        holds &= ok;
        let rhs = (st.ell as i64 - 1) * st.h as i64 + 4 * st.t as i64;
        if r.lhs.is_none() || !ok {
            r.sides(c.sigma_size as i64, qi(rhs));
            r.witness = Some(h.carrier().to_string());
        }
        r.subchecks.push(SubCheck::new(
            "claims I-III, ℓ < |G/H|, lower bound",
            ok,
            format!(
                "|H| = {}: h={} v={} t={} u={} ℓ={} m={} I={} II={} III={} ℓ<m={}",
                h.order(),
                st.h,
                st.v,
                st.t,
                st.u,
                st.ell,
                st.m,
                c.claim_i,
                c.claim_ii,
                c.claim_iii,
                c.ell_below_m
            ),
        ));
    }
    if !any {
        return Ok(r.unmet("Ŝ has no non-degenerate AP-representation"));
    }
    r.holds = holds;
    Ok(r)
}

fn check_vosper_lambda(
    r: ClaimReport,
    s: &GroupSubset,
    aux: &Aux,
    claim: ClaimId,
) -> Result<ClaimReport> {
    let b = require(&aux.b, "B")?;
    same(s, b)?;
    let g = s.group();
    let n = g.order();
    if claim == ClaimId::LEMMA_20 && n.is_multiple_of(2) {
        return Ok(r.unmet("|G| is even"));
    }
    if !generates(s) {
        return Ok(r.unmet("S does not generate G"));
    }
    if !s.is_asymmetric() {
        return Ok(r.unmet("S ∩ (−S) ≠ ∅"));
    }
    if s.len() < 3 {
        return Ok(r.unmet("|S| < 3"));
    }
    if b.is_empty() {
        return Ok(r.unmet("B is empty"));
    }
    if 2 * b.len() > n {
        return Ok(r.unmet("|B| > |G|/2"));
    }
    let lattice = SubgroupLattice::new(g)?;
    let vh = match vosper_subgroup(s, &lattice)? {
        Some(h) => h,
        None => return Ok(r.unmet("Ŝ has no Vosper-representation")),
    };
    let (lhs, x) = lambda_max(b, s);
    let sl = s.len() as i64;
    let bl = b.len() as i64;
    let mut r = r;
    r.witness = x.map(|x| g.format_element(x));
    let periodic = check_2hat_periodic(s, &vh)?;
    r.subchecks.push(SubCheck::new(
        "2Ŝ is H-periodic",
        periodic.periodic && periodic.facts_hold,
        format!("|H| = {}", vh.order()),
    ));
    if claim == ClaimId::LEMMA_19 {
        let rhs = qi(sl) - q(sl * (sl - 3), bl);
        r.sides(lhs as i64, rhs);
        r.holds = qi(lhs as i64) > rhs;
        let f = structure::is_faithful(s);
        r.subchecks.push(SubCheck::new("S is faithful", f, ""));
        r.holds &= f;
        // the intermediate bound the argument derives before its last step
        let mut worst: Option<(Q, i64)> = None;
        for t in 1..n as i64 {
            let rhs = q(4 * sl * bl * (t - bl + 1), (t + sl) * (t + sl));
            if worst.is_none_or(|w| rhs > w.0) {
                worst = Some((rhs, t));
            }
        }
        let (best, t) = worst.expect("|G| > 1");
        r.subchecks.push(SubCheck::new(
            "max λ ≥ 4sb(t−b+1)/(t+s)² for all t",
            qi(lhs as i64) >= best,
            format!("largest at t = {t}: {}", fmt_q(&best)),
        ));
    } else {
        let ts: Vec<i64> = match aux.t {
            Some(t) if t < 1 || t > n as i64 - 1 => {
                return Err(Error::MalformedAux(format!("t = {t} outside 1..={}", n - 1)))
            }
            Some(t) => vec![t],
            None => (1..n as i64).collect(),
        };
        let mut worst: Option<(Q, i64)> = None;
        for t in ts {
            let rhs = odd_vosper_lambda_rhs(sl, bl, t);
            let slack = qi(lhs as i64) - rhs;
            if worst.is_none_or(|w| slack < w.0) {
                worst = Some((slack, t));
            }
        }
        let (_, t) = worst.expect("at least one t");
        r.sides(lhs as i64, odd_vosper_lambda_rhs(sl, bl, t));
        r.holds = r.slack.unwrap() >= qi(0);
        r.branch = Some(format!("t = {t}, q = {}", odd_vosper_remainder(t, sl)));
        let f = structure::is_super_faithful(s);
        r.subchecks.push(SubCheck::new("S is super faithful", f, ""));
        r.holds &= f;
    }
    r.holds &= periodic.periodic && periodic.facts_hold;
    Ok(r)
}

/// The first subgroup giving `Ŝ` a Vosper-representation.
pub fn vosper_subgroup(s: &GroupSubset, lattice: &SubgroupLattice) -> Result<Option<Subgroup>> {
    let res = hp_representation_in(s, lattice, HpMode::All, DEFAULT_VOSPER_CAP)?;
    Ok(res
        .representations
        .into_iter()
        .find(|c| c.kind == RepresentationKind::Vosper)
        .map(|c| c.subgroup))
}

fn check_prehistoric(r: ClaimReport, x: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let y = require(&aux.y, "Y")?;
    same(x, y)?;
    let g = x.group();
    let xy = sumset(x, y)?;
    let mut r = r;
    match &aux.h {
        None => {
            if x.len() + y.len() <= g.order() {
                return Ok(r.unmet("|X| + |Y| ≤ |G|"));
            }
            r.sides(xy.len() as i64, qi(g.order() as i64));
            r.holds = xy.len() == g.order();
        }
        Some(h) => {
            same(x, h.carrier())?;
            let (Some(x0), Some(y0)) = (x.min_element(), y.min_element()) else {
                return Ok(r.unmet("X or Y is empty"));
            };
            let qx = h.carrier().translate(x0);
            let qy = h.carrier().translate(y0);
            if !x.is_subset_of(&qx)? || !y.is_subset_of(&qy)? {
                return Ok(r.unmet("X or Y is not inside a single H-coset"));
            }
            if x.len() + y.len() <= h.order() {
                return Ok(r.unmet("|X| + |Y| ≤ |H|"));
            }
            let target = sumset(&qx, &qy)?;
            r.sides(xy.len() as i64, qi(target.len() as i64));
            r.holds = xy == target;
        }
    }
    Ok(r)
}

fn check_obs(r: ClaimReport, s: &GroupSubset, aux: &Aux) -> Result<ClaimReport> {
    let sig = sigma(s);
    let k = period(&sig);
    let quo = Quotient::new(&k)?;
    let ts: Vec<GroupSubset> = match &aux.t_subset {
        Some(t) => {
            same(s, t)?;
            if !t.is_subset_of(s)? {
                return Err(Error::MalformedAux("T must be a subset of S".into()));
            }
            vec![t.clone()]
        }
        None => {
            if s.len() > 16 {
                return Err(Error::CapExceeded {
                    what: "|S| for enumerating all T ⊆ S",
                    value: s.len(),
                    cap: 16,
                });
            }
            all_subsets(s)
        }
    };
    let aperiodic = k.is_trivial();
    let mut part1 = true;
    let mut part2 = true;
    let mut bad = None;
    for t in &ts {
        let st = sigma(t);
        let ok1 = !aperiodic || is_aperiodic(&st);
        let ok2 = is_aperiodic(&quo.project_set(&st));
        if (!ok1 || !ok2) && bad.is_none() {
            bad = Some(t.to_string());
        }
        part1 &= ok1;
        part2 &= ok2;
    }
    let mut r = r;
    r.holds = part1 && part2;
    r.witness = bad;
    r.branch = Some(if aperiodic { "aperiodic" } else { "periodic" }.into());
    r.subchecks.push(SubCheck::new(
        "Σ(T) aperiodic",
        part1,
        if aperiodic { "" } else { "vacuous: Σ(S) periodic" },
    ));
    r.subchecks
        .push(SubCheck::new("image of Σ(T) in G/K aperiodic", part2, ""));
    Ok(r)
}

/// All subsets of `S` (including `∅` and `S`), in mask order.
pub fn all_subsets(s: &GroupSubset) -> Vec<GroupSubset> {
    let elems = s.elements();
    let g = s.group();
    (0u64..(1u64 << elems.len()))
        .map(|m| {
            GroupSubset::from_elements(
                g,
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalNumber {
    pub value: usize,
    /// The trivial group has no non-zero elements; `cr = 0` by convention.
    pub trivial_convention: bool,
    /// A largest zero-free `S` whose non-empty sums miss some element.
    pub witness: Option<String>,
}

pub fn critical_number(g: &Group) -> Result<CriticalNumber> {
    critical_number_with_cap(g, DEFAULT_CR_CAP)
}

/// `1 + max{|S| : S ⊆ G∖{0}, Σ*(S) ≠ G}`. Supersets of a covering set
/// also cover, so covering branches are cut.
pub fn critical_number_with_cap(g: &Group, cap: usize) -> Result<CriticalNumber> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group order for the critical number",
            value: n,
            cap,
        });
    }
    if n == 1 {
        return Ok(CriticalNumber {
            value: 0,
            trivial_convention: true,
            witness: None,
        });
    }
    let words = crate::subset::word_count(n);
    let mut best: Option<Vec<usize>> = None;
    let mut chosen = Vec::new();
    let all = vec![0u64; words];
    let nonempty = vec![0u64; words];
    cr_dfs(g, 1, &all_with_zero(all), &nonempty, &mut chosen, &mut best);
    let w = best.unwrap_or_default();
    Ok(CriticalNumber {
        value: w.len() + 1,
        trivial_convention: false,
        witness: Some(
            GroupSubset::from_elements(g, w.iter().map(|&i| g.elem(i))).to_string(),
        ),
    })
}

fn all_with_zero(mut w: Vec<u64>) -> Vec<u64> {
    bits::set(&mut w, 0);
    w
}

fn cr_dfs(
    g: &Group,
    next: usize,
    all: &[u64],
    nonempty: &[u64],
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let n = g.order();
    if best.as_ref().is_none_or(|b| chosen.len() > b.len()) {
        *best = Some(chosen.clone());
    }
    let cur_best = best.as_ref().map_or(0, |b| b.len());
    if chosen.len() + (n - next) <= cur_best {
        return;
    }
    for x in next..n {
        if chosen.len() + (n - x) <= best.as_ref().map_or(0, |b| b.len()) {
            return;
        }
        let mut a2 = all.to_vec();
        let mut ne2 = nonempty.to_vec();
        bits::or_translate(g, all, x, &mut a2);
        bits::or_translate(g, all, x, &mut ne2);
        if bits::count(&ne2) == n {
            continue;
        }
        chosen.push(x);
        cr_dfs(g, x + 1, &a2, &ne2, chosen, best);
        chosen.pop();
    }
}

/// `⌊2√(p−2)⌋`.
pub fn critical_number_formula(p: usize) -> usize {
    (4 * (p as u64).saturating_sub(2)).sqrt() as usize
}

/// Cross-check used by tests and suites: `Σ*` coverage of a set.
pub fn covers(s: &GroupSubset) -> bool {
    sigma_star(s).len() == s.group().order()
}
