//! Verification suites: exhaustive runs over all small groups and seeded
//! random fuzzing, each tallied per claim.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, check, fmt_q, Aux, ClaimId, ClaimReport, Q};
use crate::error::{Error, Result};
use crate::group::{abelian_groups_up_to, is_prime, make_group, Group};
use crate::naive;
use crate::search::{fuzz_conjecture, FuzzVerdict, SubsetConstraints, SubsetEnumerator};
use crate::structure::{self, kneser_check};
use crate::subgroup::{generates, SubgroupLattice};
use crate::subset::GroupSubset;
use crate::sumset::{self, is_aperiodic, lambda, lambda_profile, sigma};

/// Descriptions kept per tally; the count is always exact.
const KEEP: usize = 5;
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub examined: u64,
    pub hypotheses_met: u64,
    pub violations: u64,
    #[serde(serialize_with = "bounds::ser_q")]
    pub min_slack: Option<Q>,
    #[serde(skip)]
    pub min_slack_at: Option<String>,
    pub examples: Vec<String>,
}

impl Tally {
    fn add(&mut self, met: bool, bad: Option<String>, slack: Option<Q>, at: impl FnOnce() -> String) {
        self.examined += 1;
        if !met {
            return;
        }
        self.hypotheses_met += 1;
        if let Some(b) = bad {
            self.violations += 1;
            if self.examples.len() < KEEP {
                self.examples.push(b);
            }
        }
        if let Some(s) = slack {
            if self.min_slack.is_none_or(|m| s < m) {
                self.min_slack = Some(s);
                self.min_slack_at = Some(at());
            }
        }
    }

    fn report(&mut self, r: &ClaimReport) {
        let bad = r.violated().then(|| describe(r));
        self.add(r.hypotheses_met, bad, r.slack, || format!("{} {}", r.group, r.set));
    }

    fn merge(&mut self, o: Tally) {
        self.examined += o.examined;
        self.hypotheses_met += o.hypotheses_met;
        self.violations += o.violations;
        if let Some(s) = o.min_slack {
            if self.min_slack.is_none_or(|m| s < m) {
                self.min_slack = Some(s);
                self.min_slack_at = o.min_slack_at;
            }
        }
        for e in o.examples {
            if self.examples.len() < KEEP {
                self.examples.push(e);
            }
        }
    }
}

fn describe(r: &ClaimReport) -> String {
    format!(
        "{} {} set={} lhs={:?} rhs={}",
        r.claim,
        r.group,
        r.set,
        r.lhs,
        r.rhs.map(|q| fmt_q(&q)).unwrap_or_default()
    )
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub tallies: BTreeMap<String, Tally>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn tally(&mut self, key: impl Into<String>) -> &mut Tally {
        self.tallies.entry(key.into()).or_default()
    }

    fn merge(&mut self, other: SuiteReport) {
        for (k, t) in other.tallies {
            self.tally(k).merge(t);
        }
        self.notes.extend(other.notes);
    }

    /// Tallies that count toward pass/fail.
    pub fn asserted(&self) -> impl Iterator<Item = (&String, &Tally)> {
        self.tallies.iter().filter(|(k, _)| !k.contains("(informational)"))
    }

    pub fn violations(&self) -> u64 {
        self.asserted().map(|(_, t)| t.violations).sum()
    }

    /// No violations and every asserted tally saw at least one instance.
    pub fn passed(&self) -> bool {
        self.violations() == 0 && self.asserted().all(|(_, t)| t.hypotheses_met > 0)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (k, t) in &self.tallies {
            out.push_str(&format!(
                "  {k}: examined {} met {} violations {} min slack {}\n",
                t.examined,
                t.hypotheses_met,
                t.violations,
                t.min_slack.map(|q| fmt_q(&q)).unwrap_or_else(|| "-".into())
            ));
            for e in &t.examples {
                out.push_str(&format!("    {e}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

/// Evaluates `f` on every item in parallel and merges the per-item suites.
fn fan_out<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&T, &mut SuiteReport) -> Result<()> + Sync,
) -> Result<SuiteReport> {
    items
        .par_iter()
        .map(|x| {
            let mut r = SuiteReport::new(name);
            f(x, &mut r)?;
            Ok(r)
        })
        .try_reduce(
            || SuiteReport::new(name),
            |mut a, b| {
                a.merge(b);
                Ok(a)
            },
        )
}

fn subsets(g: &Group, c: &SubsetConstraints) -> Result<Vec<GroupSubset>> {
    Ok(SubsetEnumerator::new(g, c)?
        .map(|(_, s)| s)
        .filter(|s| c.accepts_late(s))
        .collect())
}

fn sort_examples(r: &mut SuiteReport) {
    for t in r.tallies.values_mut() {
        t.examples.sort();
    }
}

/// `S = {±1,…,±s}` in `Z_n`, `n = s(s+1)+3`: `|Σ(S)| = s²+s+1`, aperiodic,
/// and the odd-order symmetric bound is tight.
pub fn extremal_family(s_values: impl IntoIterator<Item = usize>) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("extremal family");
    for s in s_values {
        let n = s * (s + 1) + 3;
        let g = make_group(&[n as i64])?;
        let set = GroupSubset::from_elements(
            &g,
            (1..=s as i64).flat_map(|i| [g.parse_element(&i.to_string()), g.parse_element(&(-i).to_string())])
                .collect::<Result<Vec<_>>>()?,
        );
        let sig = sigma(&set);
        let expect = s * s + s + 1;
        let at = || format!("Z{n} s={s}");
        r.tally("|Σ(S)| = s²+s+1").add(
            true,
            (sig.len() != expect).then(|| format!("{}: |Σ(S)| = {} not {expect}", at(), sig.len())),
            None,
            at,
        );
        r.tally("Σ(S) aperiodic").add(
            true,
            (!is_aperiodic(&sig)).then(|| format!("{}: periodic", at())),
            None,
            at,
        );
        let xp = bounds::xi_prime(&set)?;
        let rep = check(ClaimId::SYM_T4_ODD, &set, &Aux::default())?;
        let tight = rep.hypotheses_met && rep.slack == Some(Q::from_integer(0));
        r.tally("SYM_T4_ODD slack 0 when ξ′ = 1").add(
            xp.displayed == 1,
            (!tight).then(|| format!("{}: {}", at(), describe(&rep))),
            rep.slack,
            at,
        );
    }
    Ok(r)
}

/// `cr(Z_p)` by exhaustive search against `⌊2√(p−2)⌋`.
pub fn critical_numbers(primes: &[usize]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("critical numbers");
    for &p in primes {
        let g = make_group(&[p as i64])?;
        let cr = bounds::critical_number(&g)?;
        let f = bounds::critical_number_formula(p);
        r.tally("cr(Z_p) = ⌊2√(p−2)⌋").add(
            true,
            (cr.value != f).then(|| format!("Z{p}: cr = {} formula {f}", cr.value)),
            None,
            String::new,
        );
        r.notes.push(format!("cr(Z{p}) = {}", cr.value));
    }
    Ok(r)
}

/// Asymmetric sets (`S ∩ (−S) = ∅`, `|S| ≥ min_size`) in every group up to
/// `max_order`. Each claim is tallied twice: over all `S` and over
/// generating `S` only.
pub fn asymmetric_suite(max_order: usize, min_size: usize, claims: &[ClaimId]) -> Result<SuiteReport> {
    let groups = abelian_groups_up_to(max_order);
    let c = SubsetConstraints {
        asymmetric: true,
        size_min: Some(min_size),
        ..Default::default()
    };
    let mut out = SuiteReport::new("asymmetric sets");
    for g in &groups {
        let sets = subsets(g, &c)?;
        let part = fan_out("asymmetric sets", &sets, |s, r| {
            let gen = generates(s);
            for &claim in claims {
                let rep = check(claim, s, &Aux::default())?;
                r.tally(format!("{claim} (all S)")).report(&rep);
                if gen {
                    r.tally(format!("{claim} (generating S)")).report(&rep);
                }
            }
            Ok(())
        })?;
        out.merge(part);
    }
    // claims restricted to other orders have no instances in some runs
    out.tallies.retain(|_, t| t.examined > 0);
    sort_examples(&mut out);
    Ok(out)
}

/// The main theorem, its odd-order form, Olson's theorem on prime orders and
/// the quadratic lower bound on every zero-free aperiodic instance touched.
pub fn asymmetric_exhaustive(max_order: usize) -> Result<SuiteReport> {
    let mut r = asymmetric_suite(
        max_order,
        2,
        &[ClaimId::MAIN_T2, ClaimId::MAIN_T2_ODD, ClaimId::OLSON_T1, ClaimId::DEVOS_T3],
    )?;
    r.name = "main theorem".into();
    if max_order < 2 || !(2..=max_order).any(is_prime) {
        r.tallies.retain(|k, _| !k.starts_with("OLSON_T1"));
    }
    Ok(r)
}

/// Symmetric zero-free `S`, `|S| ≥ 4`, `Σ(S)` aperiodic: the general bound
/// up to `max_order` and the odd-order bound on odd orders up to `max_odd`.
pub fn symmetric_exhaustive(max_order: usize, max_odd: usize) -> Result<SuiteReport> {
    let c = SubsetConstraints {
        symmetric: true,
        zero_free: true,
        sigma_aperiodic: true,
        size_min: Some(4),
        ..Default::default()
    };
    let mut out = SuiteReport::new("symmetric theorem");
    for g in abelian_groups_up_to(max_order.max(max_odd)) {
        let n = g.order();
        let general = n <= max_order;
        let odd = n % 2 == 1 && n <= max_odd;
        if !general && !odd {
            continue;
        }
        let sets = subsets(&g, &c)?;
        let part = fan_out("symmetric theorem", &sets, |s, r| {
            if general {
                r.tally("SYM_T4").report(&check(ClaimId::SYM_T4, s, &Aux::default())?);
            }
            if odd {
                let rep = check(ClaimId::SYM_T4_ODD, s, &Aux::default())?;
                r.tally("SYM_T4_ODD").report(&rep);
                if let Some(sc) = rep.subchecks.iter().find(|c| c.name == "bound with ξ(S′)") {
                    r.tally("SYM_T4_ODD with ξ(S′) (informational)").add(
                        rep.hypotheses_met,
                        (sc.holds == Some(false)).then(|| format!("{} {} {}", rep.group, rep.set, sc.detail)),
                        None,
                        String::new,
                    );
                }
            }
            r.tally("DEVOS_T3").report(&check(ClaimId::DEVOS_T3, s, &Aux::default())?);
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Every symmetric `S` (0 allowed) in groups up to `max_order`, including
/// the coset-layer identity behind the bound.
pub fn periodic_exhaustive(max_order: usize) -> Result<SuiteReport> {
    let c = SubsetConstraints {
        symmetric: true,
        ..Default::default()
    };
    let mut out = SuiteReport::new("periodic theorem");
    for g in abelian_groups_up_to(max_order) {
        let sets = subsets(&g, &c)?;
        let part = fan_out("periodic theorem", &sets, |s, r| {
            let rep = check(ClaimId::PERIODIC_T5, s, &Aux::default())?;
            r.tally("PERIODIC_T5").report(&rep);
            for sc in rep.subchecks.iter().filter(|c| c.holds.is_some()) {
                r.tally(format!("PERIODIC_T5: {}", sc.name)).add(
                    true,
                    (sc.holds == Some(false)).then(|| format!("{} {}", rep.group, rep.set)),
                    None,
                    String::new,
                );
            }
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Every `A` and every `k` in groups up to `max_order`, plus the coset form
/// for every `A` inside a subgroup `H` with `|A| > |H|/2` (translation does
/// not change `|k∧A|`).
pub fn kwedge_exhaustive(max_order: usize) -> Result<SuiteReport> {
    let mut out = SuiteReport::new("distinct sums");
    for g in abelian_groups_up_to(max_order) {
        let sets = subsets(&g, &SubsetConstraints::default())?;
        let part = fan_out("distinct sums", &sets, |a, r| {
            if a.len() < 2 {
                return Ok(());
            }
            let rep = check(ClaimId::KWEDGE_T11, a, &Aux::default())?;
            let key = if rep.branch.as_deref() == Some("2-coset") {
                "KWEDGE_T11 (2-coset A, equality)"
            } else {
                "KWEDGE_T11 (other A)"
            };
            r.tally(key).report(&rep);
            Ok(())
        })?;
        out.merge(part);
        let lattice = SubgroupLattice::new(&g)?;
        let mut inner = Vec::new();
        for h in lattice.subgroups() {
            let c = SubsetConstraints {
                size_min: Some(h.order() / 2 + 1),
                ..Default::default()
            };
            for a in subsets(&g, &c)? {
                if a.len() >= 2 && a.is_subset_of(h.carrier())? {
                    inner.push((a, h.clone()));
                }
            }
        }
        let part = fan_out("distinct sums", &inner, |(a, h), r| {
            let aux = Aux {
                h: Some(h.clone()),
                ..Default::default()
            };
            let rep = check(ClaimId::KWEDGE_T11, a, &aux)?;
            r.tally("KWEDGE_T11 coset form").report(&rep);
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Every generating `S` with `|Ŝ| ≤ |G|/2` gets a certificate. The outcome
/// depends on `S` only through `Ŝ`, so one `S` per hull is checked.
pub fn representation_certificates(max_order: usize) -> Result<SuiteReport> {
    let mut out = SuiteReport::new("representation theorem");
    for g in abelian_groups_up_to(max_order) {
        let n = g.order();
        let c = SubsetConstraints {
            symmetric: true,
            zero_free: true,
            generating: true,
            size_max: Some((n / 2).saturating_sub(1)),
            ..Default::default()
        };
        let sets: Vec<GroupSubset> = subsets(&g, &c)?
            .into_iter()
            .filter(|s| 2 * sumset::hat(s).len() <= n)
            .collect();
        if sets.is_empty() {
            continue;
        }
        let lattice = SubgroupLattice::new(&g)?;
        lattice.subgroups().iter().enumerate().for_each(|(i, _)| {
            lattice.quotient(i);
        });
        let part = fan_out("representation theorem", &sets, |s, r| {
            let a = sumset::hat(s);
            let res = structure::hp_representation_in(
                s,
                &lattice,
                structure::HpMode::All,
                structure::DEFAULT_VOSPER_CAP,
            )?;
            let mut valid = true;
            for c in &res.representations {
                valid &= c.revalidate(&a, structure::DEFAULT_VOSPER_CAP)?;
            }
            let at = || format!("{} {}", g, s.to_hex());
            r.tally("HP_T10 certificate exists").add(
                res.hypotheses_met,
                res.representations.is_empty().then(|| {
                    format!("{} skipped quotients {:?}", at(), res.skipped_quotients)
                }),
                None,
                at,
            );
            r.tally("HP_T10 certificates revalidate").add(
                res.hypotheses_met,
                (!valid).then(at),
                None,
                String::new,
            );
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

fn random_subset(g: &Group, rng: &mut ChaCha8Rng, min: usize, max: usize) -> GroupSubset {
    let n = g.order();
    let k = rng.gen_range(min.min(n)..=max.min(n));
    let idx = rand::seq::index::sample(rng, n, k);
    GroupSubset::from_elements(g, idx.iter().map(|i| g.elem(i)))
}

fn random_group(groups: &[Group], rng: &mut ChaCha8Rng) -> Group {
    groups.choose(rng).expect("non-empty group list").clone()
}

/// `10⁴`-scale random checks of the sumset inequality with period, and the
/// coset form of the pigeonhole lemma, in groups up to `max_order`.
pub fn kneser_fuzz(pairs: usize, max_order: usize, seed: u64) -> Result<SuiteReport> {
    let groups = abelian_groups_up_to(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(GroupSubset, GroupSubset)> = (0..pairs)
        .map(|_| {
            let g = random_group(&groups, &mut rng);
            let n = g.order();
            let x = random_subset(&g, &mut rng, 1, n);
            let y = random_subset(&g, &mut rng, 1, n);
            (x, y)
        })
        .collect();
    let mut r = fan_out("Kneser", &items, |(x, y), r| {
        let aux = Aux {
            y: Some(y.clone()),
            ..Default::default()
        };
        r.tally("KNESER").report(&check(ClaimId::KNESER, x, &aux)?);
        let ok = kneser_check(x, y).is_ok();
        r.tally("kneser_check").add(true, (!ok).then(|| format!("{} {} {}", x.group(), x.to_hex(), y.to_hex())), None, String::new);
        let rep = check(ClaimId::PREHISTORIC, x, &aux)?;
        r.tally("PREHISTORIC").report(&rep);
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

/// The four `λ` relations on random `B, C` in groups up to `max_order`.
pub fn lambda_identities_fuzz(samples: usize, max_order: usize, seed: u64) -> Result<SuiteReport> {
    let groups = abelian_groups_up_to(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(GroupSubset, GroupSubset)> = (0..samples)
        .filter_map(|_| {
            let g = random_group(&groups, &mut rng);
            let n = g.order();
            let b = random_subset(&g, &mut rng, 1, n);
            let c = random_subset(&g, &mut rng, 1, n).without(g.zero());
            (!c.is_empty()).then_some((c, b))
        })
        .collect();
    let mut r = fan_out("lambda relations", &items, |(c, b), r| {
        let aux = Aux {
            b: Some(b.clone()),
            ..Default::default()
        };
        r.tally("LEMMA_12").report(&check(ClaimId::LEMMA_12, c, &aux)?);
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

/// Swap invariance and the one-step growth inequality
/// `|Σ(S)| ≥ |Σ(S∖{x})| + λ_{Σ(S∖{x})}(x)` on random zero-free `S`.
pub fn swap_fuzz(samples: usize, max_order: usize, seed: u64) -> Result<SuiteReport> {
    let groups: Vec<Group> = abelian_groups_up_to(max_order)
        .into_iter()
        .filter(|g| g.order() > 1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<GroupSubset> = (0..samples)
        .map(|_| {
            let g = random_group(&groups, &mut rng);
            random_subset(&g, &mut rng, 1, 12.min(g.order())).without(g.zero())
        })
        .filter(|s| !s.is_empty())
        .collect();
    let mut r = fan_out("swap", &items, |s, r| {
        r.tally("LEMMA_13").report(&check(ClaimId::LEMMA_13, s, &Aux::default())?);
        let sig = sigma(s);
        for x in s.iter() {
            let rest = sigma(&s.without(x));
            let ok = sig.len() >= rest.len() + lambda(&rest, x);
            r.tally("|Σ(S)| ≥ |Σ(S∖x)| + λ(x)").add(
                true,
                (!ok).then(|| format!("{} {} x={}", s.group(), s.to_hex(), s.group().format_element(x))),
                None,
                String::new,
            );
        }
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

/// The `λ` lower bound for generating zero-free `S`, exhaustively over `B`.
///
/// For fixed `B` the left side depends only on `max_{x∈S} λ_B(x) = L`, and
/// the right side and generation only grow with `S`. So the worst `S` for a
/// given `L` is the full level set `{x ≠ 0 : λ_B(x) ≤ L}`, and checking those
/// covers every `S`.
pub fn lambda_bound_exhaustive(max_order: usize) -> Result<SuiteReport> {
    let mut out = SuiteReport::new("lambda lower bound");
    for g in abelian_groups_up_to(max_order) {
        let n = g.order();
        if n < 2 {
            continue;
        }
        let c = SubsetConstraints {
            size_min: Some(1),
            size_max: Some(n / 2),
            ..Default::default()
        };
        let bs = subsets(&g, &c)?;
        let part = fan_out("lambda lower bound", &bs, |b, r| {
            let prof = lambda_profile(b);
            let mut levels: Vec<usize> = prof[1..].to_vec();
            levels.sort_unstable();
            levels.dedup();
            for l in levels {
                let s = GroupSubset::from_elements(
                    &g,
                    g.elements().skip(1).filter(|x| prof[x.index()] <= l),
                );
                if !generates(&s) {
                    continue;
                }
                let aux = Aux {
                    b: Some(b.clone()),
                    ..Default::default()
                };
                r.tally("LEMMA_14").report(&check(ClaimId::LEMMA_14, &s, &aux)?);
            }
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Random `(S, B)` pairs for the lower bound, checked directly.
pub fn lambda_bound_fuzz(samples: usize, max_order: usize, seed: u64) -> Result<SuiteReport> {
    let groups: Vec<Group> = abelian_groups_up_to(max_order)
        .into_iter()
        .filter(|g| g.order() > 1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<(GroupSubset, GroupSubset)> = (0..samples)
        .map(|_| {
            let g = random_group(&groups, &mut rng);
            let n = g.order();
            let s = random_subset(&g, &mut rng, 1, n).without(g.zero());
            let b = random_subset(&g, &mut rng, 1, (n / 2).max(1));
            (s, b)
        })
        .collect();
    let mut r = fan_out("lambda lower bound", &items, |(s, b), r| {
        let aux = Aux {
            b: Some(b.clone()),
            ..Default::default()
        };
        r.tally("LEMMA_14 (random)").report(&check(ClaimId::LEMMA_14, s, &aux)?);
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

/// Valid asymmetric generating `S` with an AP-representation: the layer
/// claims and the resulting lower bound.
pub fn ap_case_exhaustive(max_order: usize) -> Result<SuiteReport> {
    let mut out = SuiteReport::new("AP case");
    for g in abelian_groups_up_to(max_order) {
        let c = SubsetConstraints {
            asymmetric: true,
            generating: true,
            size_min: Some(4),
            ..Default::default()
        };
        let sets = subsets(&g, &c)?;
        let part = fan_out("AP case", &sets, |s, r| {
            r.tally("LEMMA_18").report(&check(ClaimId::LEMMA_18, s, &Aux::default())?);
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Asymmetric generating `S` with `|S| ≥ 3` and a Vosper-representation,
/// each with `b_per_set` random non-empty `B`, `|B| ≤ |G|/2`. The odd-order
/// bound is run on odd orders up to `max_odd`.
pub fn vosper_lambda_fuzz(max_order: usize, max_odd: usize, b_per_set: usize, seed: u64) -> Result<SuiteReport> {
    let mut out = SuiteReport::new("Vosper case");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in abelian_groups_up_to(max_order.max(max_odd)) {
        let n = g.order();
        let c = SubsetConstraints {
            asymmetric: true,
            generating: true,
            size_min: Some(3),
            ..Default::default()
        };
        let sets = subsets(&g, &c)?;
        if sets.is_empty() {
            continue;
        }
        let lattice = SubgroupLattice::new(&g)?;
        let with_vosper: Vec<GroupSubset> = sets
            .into_par_iter()
            .map(|s| Ok(bounds::vosper_subgroup(&s, &lattice)?.map(|_| s)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut items = Vec::new();
        for s in with_vosper {
            for _ in 0..b_per_set {
                items.push((s.clone(), random_subset(&g, &mut rng, 1, (n / 2).max(1))));
            }
        }
        let part = fan_out("Vosper case", &items, |(s, b), r| {
            let aux = Aux {
                b: Some(b.clone()),
                ..Default::default()
            };
            if n <= max_order {
                let rep = check(ClaimId::LEMMA_19, s, &aux)?;
                r.tally("LEMMA_19").report(&rep);
                if let Some(sc) = rep.subchecks.iter().find(|c| c.name.starts_with("max λ ≥")) {
                    r.tally("LEMMA_19 intermediate bound (informational)").add(
                        rep.hypotheses_met,
                        (sc.holds == Some(false)).then(|| format!("{} {} B={}", rep.group, rep.set, b.to_hex())),
                        None,
                        String::new,
                    );
                }
            }
            if n % 2 == 1 && n <= max_odd {
                r.tally("LEMMA_20").report(&check(ClaimId::LEMMA_20, s, &aux)?);
            }
            Ok(())
        })?;
        out.merge(part);
    }
    sort_examples(&mut out);
    Ok(out)
}

/// Aperiodicity is inherited by subsets and by images modulo the period.
pub fn observation_fuzz(samples: usize, max_order: usize, seed: u64) -> Result<SuiteReport> {
    let groups = abelian_groups_up_to(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<GroupSubset> = (0..samples)
        .map(|_| {
            let g = random_group(&groups, &mut rng);
            random_subset(&g, &mut rng, 0, 10)
        })
        .collect();
    let mut r = fan_out("aperiodic subsets", &items, |s, r| {
        r.tally("OBS_APERIODIC").report(&check(ClaimId::OBS_APERIODIC, s, &Aux::default())?);
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

/// Everything the lemma acceptance run covers, at the given scale.
#[derive(Clone, Debug)]
pub struct LemmaScale {
    pub kneser_pairs: usize,
    pub kneser_max_order: usize,
    pub fuzz_samples: usize,
    pub lambda_max_order: usize,
    pub lambda_bound_exhaustive_order: usize,
    pub two_s_max_order: usize,
    pub ap_case_max_order: usize,
    pub vosper_lambda_max_order: usize,
    pub odd_vosper_lambda_max_order: usize,
    pub b_per_set: usize,
}

impl Default for LemmaScale {
    fn default() -> Self {
        LemmaScale {
            kneser_pairs: 10_000,
            kneser_max_order: 60,
            fuzz_samples: 2_000,
            lambda_max_order: 16,
            lambda_bound_exhaustive_order: 16,
            two_s_max_order: 24,
            ap_case_max_order: 24,
            vosper_lambda_max_order: 16,
            odd_vosper_lambda_max_order: 15,
            b_per_set: 3,
        }
    }
}

pub fn lemma_suite(scale: &LemmaScale, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lemmas");
    r.merge(kneser_fuzz(scale.kneser_pairs, scale.kneser_max_order, seed)?);
    r.merge(lambda_identities_fuzz(scale.fuzz_samples, scale.lambda_max_order, seed ^ 1)?);
    r.merge(swap_fuzz(scale.fuzz_samples, scale.kneser_max_order, seed ^ 2)?);
    r.merge(lambda_bound_exhaustive(scale.lambda_bound_exhaustive_order)?);
    r.merge(lambda_bound_fuzz(scale.fuzz_samples, scale.lambda_max_order, seed ^ 3)?);
    r.merge(asymmetric_suite(
        scale.two_s_max_order,
        1,
        &[ClaimId::LEMMA_2S, ClaimId::LEMMA_2S1],
    )?);
    r.merge(ap_case_exhaustive(scale.ap_case_max_order)?);
    r.merge(vosper_lambda_fuzz(scale.vosper_lambda_max_order, scale.odd_vosper_lambda_max_order, scale.b_per_set, seed ^ 4)?);
    r.merge(observation_fuzz(scale.fuzz_samples, scale.lambda_max_order, seed ^ 5)?);
    r.tallies
        .retain(|k, _| !k.ends_with("(generating S)") || k.starts_with("LEMMA_2S1"));
    r.name = "lemmas".into();
    Ok(r)
}

/// Word-level kernels against the element-by-element oracles on random
/// instances with `|S| ≤ max_set` in groups up to `max_order`.
pub fn oracle_equivalence(instances: usize, max_order: usize, max_set: usize, seed: u64) -> Result<SuiteReport> {
    let groups = abelian_groups_up_to(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<GroupSubset> = (0..instances)
        .map(|_| {
            let g = random_group(&groups, &mut rng);
            random_subset(&g, &mut rng, 0, max_set)
        })
        .collect();
    let mut r = fan_out("oracle equivalence", &items, |s, r| {
        let at = || format!("{} {}", s.group(), s.to_hex());
        let same = sigma(s) == naive::sigma(s)?;
        r.tally("sigma").add(true, (!same).then(at), None, String::new);
        let same = sumset::sigma_star(s) == naive::sigma_star(s)?;
        r.tally("sigma_star").add(true, (!same).then(at), None, String::new);
        let all = sumset::k_wedge_all(s);
        let mut same = all.len() == s.len() + 1;
        for (k, layer) in all.iter().enumerate() {
            same &= *layer == naive::k_wedge(k, s)?;
        }
        r.tally("k_wedge").add(true, (!same).then(at), None, String::new);
        Ok(())
    })?;
    sort_examples(&mut r);
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct ConjectureOutcome {
    pub verdict: FuzzVerdict,
    pub groups: usize,
}

/// The conjecture over every zero-free `S` with aperiodic `Σ(S)` in all
/// groups up to `max_order`.
pub fn conjecture_fuzz(max_order: usize) -> Result<ConjectureOutcome> {
    let groups = abelian_groups_up_to(max_order);
    let verdict = fuzz_conjecture(&groups, &SubsetConstraints::default())?;
    Ok(ConjectureOutcome {
        verdict,
        groups: groups.len(),
    })
}

/// Parses a comma-separated list of positive integers.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_family_small() {
        let r = extremal_family(2..=3).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn small_suites_pass() {
        for r in [
            asymmetric_exhaustive(8).unwrap(),
            symmetric_exhaustive(10, 11).unwrap(),
            periodic_exhaustive(8).unwrap(),
            kwedge_exhaustive(8).unwrap(),
            representation_certificates(8).unwrap(),
            oracle_equivalence(50, 20, 8, 1).unwrap(),
        ] {
            assert_eq!(r.violations(), 0, "{}\n{}", r.name, r.summary());
        }
    }

    #[test]
    fn lemma_suite_small_scale() {
        let scale = LemmaScale {
            kneser_pairs: 200,
            kneser_max_order: 20,
            fuzz_samples: 100,
            lambda_max_order: 8,
            lambda_bound_exhaustive_order: 8,
            two_s_max_order: 8,
            ap_case_max_order: 9,
            vosper_lambda_max_order: 9,
            odd_vosper_lambda_max_order: 9,
            b_per_set: 1,
        };
        let r = lemma_suite(&scale, 7).unwrap();
        for (k, t) in &r.tallies {
            if k != "LEMMA_19" {
                assert_eq!(t.violations, 0, "{k}\n{}", r.summary());
            }
        }
    }

    #[test]
    fn vosper_lambda_bound_is_false_for_small_b() {
        // every hypothesis holds, yet λ_B(x) ≤ |B| = 1 < 3
        let g = make_group(&[8]).unwrap();
        let s = GroupSubset::parse(&g, "1,2,3").unwrap();
        let aux = Aux {
            b: Some(GroupSubset::parse(&g, "0").unwrap()),
            ..Default::default()
        };
        let rep = check(ClaimId::LEMMA_19, &s, &aux).unwrap();
        assert!(rep.hypotheses_met && rep.violated());
        assert_eq!((rep.lhs, rep.rhs), (Some(1), Some(Q::from_integer(3))));
        let inter = rep.subchecks.iter().find(|c| c.name.starts_with("max λ ≥")).unwrap();
        assert_eq!(inter.holds, Some(true));
    }
}
