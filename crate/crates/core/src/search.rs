//! Constrained subset enumeration, claim evaluation over families of groups,
//! extremal-set search, conjecture fuzzing and resumable JSONL output.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{self, check, fmt_q, Aux, ClaimId, Q};
use crate::error::{Error, Result};
use crate::group::{Group, GroupSpec};
use crate::naive;
use crate::subgroup::span;
use crate::subset::GroupSubset;
use crate::sumset::{is_aperiodic, sigma};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Candidates evaluated between checkpoints.
pub const CHUNK: usize = 256;
/// Slot masks are a single `u128`.
const MAX_SLOTS: usize = 128;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetConstraints {
    #[serde(default)]
    pub zero_free: bool,
    /// `S ∩ (−S) = ∅`.
    #[serde(default)]
    pub asymmetric: bool,
    #[serde(default)]
    pub symmetric: bool,
    #[serde(default)]
    pub generating: bool,
    #[serde(default)]
    pub sigma_aperiodic: bool,
    #[serde(default)]
    pub size_min: Option<usize>,
    #[serde(default)]
    pub size_max: Option<usize>,
}

impl SubsetConstraints {
    pub fn validate(&self) -> Result<()> {
        if self.symmetric && self.asymmetric {
            return Err(Error::InfeasibleConstraints(
                "symmetric and asymmetric are mutually exclusive".into(),
            ));
        }
        if let (Some(lo), Some(hi)) = (self.size_min, self.size_max) {
            if lo > hi {
                return Err(Error::InfeasibleConstraints(format!(
                    "size_min {lo} exceeds size_max {hi}"
                )));
            }
        }
        Ok(())
    }

    /// The filters applied after enumeration, cheapest first.
    pub fn accepts_late(&self, s: &GroupSubset) -> bool {
        (!self.generating || span(s).order() == s.group().order())
            && (!self.sigma_aperiodic || is_aperiodic(&sigma(s)))
    }
}

/// Deterministic enumeration in increasing slot-mask order.
///
/// A slot is one element, or one `{x, −x}` orbit in symmetric mode; slot `i`
/// is bit `i` of the mask. Outside symmetric mode the mask order is the
/// bit-string order of the subsets; in symmetric mode it is the bit-string
/// order of the chosen orbit representatives.
pub struct SubsetEnumerator {
    group: Group,
    slots: Vec<Vec<usize>>,
    /// Asymmetric mode: the slot holding `−x`, if it is a different slot.
    partner: Vec<Option<usize>>,
    min: usize,
    max: usize,
    next: Option<u128>,
}

impl SubsetEnumerator {
    pub fn new(g: &Group, c: &SubsetConstraints) -> Result<Self> {
        Self::starting_at(g, c, 0)
    }

    /// Enumeration restricted to masks `≥ start`.
    pub fn starting_at(g: &Group, c: &SubsetConstraints, start: u128) -> Result<Self> {
        c.validate()?;
        let mut slots: Vec<Vec<usize>> = Vec::new();
        let mut partner = Vec::new();
        let n = g.order();
        if c.symmetric {
            for x in g.elements() {
                let nx = g.neg(x);
                if nx.index() < x.index() || (c.zero_free && x.index() == 0) {
                    continue;
                }
                slots.push(if nx == x {
                    vec![x.index()]
                } else {
                    vec![x.index(), nx.index()]
                });
            }
        } else {
            for x in g.elements() {
                let self_inverse = g.neg(x) == x;
                if (c.zero_free && x.index() == 0) || (c.asymmetric && self_inverse) {
                    continue;
                }
                slots.push(vec![x.index()]);
            }
        }
        if c.asymmetric {
            let pos: BTreeMap<usize, usize> =
                slots.iter().enumerate().map(|(i, s)| (s[0], i)).collect();
            partner = slots
                .iter()
                .map(|s| pos.get(&g.neg_raw(s[0])).copied())
                .collect();
        }
        if slots.len() > MAX_SLOTS {
            return Err(Error::CapExceeded {
                what: "enumeration slots",
                value: slots.len(),
                cap: MAX_SLOTS,
            });
        }
        let min = c.size_min.unwrap_or(0);
        let max = c.size_max.unwrap_or(n).min(n);
        let mut e = SubsetEnumerator {
            group: g.clone(),
            slots,
            partner,
            min,
            max,
            next: None,
        };
        e.next = e.first_at_least(start);
        Ok(e)
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn subset_of(&self, mask: u128) -> GroupSubset {
        let g = &self.group;
        GroupSubset::from_elements(
            g,
            (0..self.slots.len())
                .filter(|&i| mask >> i & 1 == 1)
                .flat_map(|i| self.slots[i].iter().map(|&e| g.elem(e))),
        )
    }

    fn weight(&self, i: usize) -> usize {
        self.slots[i].len()
    }

    /// Largest weight still reachable from slots `0..i`, given the chosen
    /// higher slots.
    fn reachable(&self, i: usize, chosen: u128) -> usize {
        if self.partner.is_empty() {
            return (0..i).map(|j| self.weight(j)).sum();
        }
        let mut total = 0;
        for j in 0..i {
            match self.partner[j] {
                Some(p) if p < i => {
                    if j < p {
                        total += 1;
                    }
                }
                Some(p) if chosen >> p & 1 == 1 => {}
                _ => total += 1,
            }
        }
        total
    }

    /// Least feasible mask `≥ lower`.
    pub fn first_at_least(&self, lower: u128) -> Option<u128> {
        let k = self.slots.len();
        if k < 128 && lower >> k != 0 {
            return None;
        }
        self.dfs(k, true, 0, 0, lower)
    }

    fn dfs(&self, i: usize, tight: bool, weight: usize, chosen: u128, lower: u128) -> Option<u128> {
        if weight > self.max || weight + self.reachable(i, chosen) < self.min {
            return None;
        }
        if i == 0 {
            return Some(chosen);
        }
        let s = i - 1;
        let lb = lower >> s & 1 == 1;
        let conflict = self
            .partner
            .get(s)
            .copied()
            .flatten()
            .is_some_and(|p| p > s && chosen >> p & 1 == 1);
        // 0 before 1
        if !(tight && lb) {
            if let Some(m) = self.dfs(s, tight, weight, chosen, lower) {
                return Some(m);
            }
        }
        if !conflict {
            let tight1 = tight && lb;
            return self.dfs(s, tight1, weight + self.weight(s), chosen | 1 << s, lower);
        }
        None
    }
}

impl Iterator for SubsetEnumerator {
    type Item = (u128, GroupSubset);

    fn next(&mut self) -> Option<Self::Item> {
        let m = self.next?;
        self.next = m.checked_add(1).and_then(|n| self.first_at_least(n));
        Some((m, self.subset_of(m)))
    }
}

/// `enumerate_subsets` with every filter applied.
pub fn enumerate_subsets(g: &Group, c: &SubsetConstraints) -> Result<Vec<GroupSubset>> {
    Ok(SubsetEnumerator::new(g, c)?
        .map(|(_, s)| s)
        .filter(|s| c.accepts_late(s))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub zero_free: bool,
    pub asymmetric: bool,
    pub symmetric: bool,
    pub generating: bool,
    pub sigma_aperiodic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// Position in the record stream; stands in for a wall-clock timestamp so
    /// that output is reproducible.
    pub rank: u64,
    pub group: String,
    pub canonical_form: Vec<usize>,
    pub set: String,
    pub size: usize,
    pub sigma_size: usize,
    /// Slack per claim (`p/q`), `null` when the hypotheses are unmet or the
    /// claim has no numeric sides.
    pub slacks: BTreeMap<String, Option<String>>,
    pub violations: Vec<String>,
    pub flags: Flags,
}

impl SearchRecord {
    pub fn subset(&self) -> Result<GroupSubset> {
        let g = GroupSpec::parse(&self.group)?;
        GroupSubset::from_hex(&g, &self.set)
    }

    pub fn slack(&self, claim: ClaimId) -> Option<Q> {
        self.slacks
            .get(claim.name())
            .cloned()
            .flatten()
            .and_then(|s| parse_q(&s))
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = s.split_once('/')?;
    let d: i64 = d.parse().ok()?;
    let n: i64 = n.parse().ok()?;
    (d != 0).then(|| Q::new(n, d))
}

/// Claims that need no auxiliary input and can run inside a search.
pub fn searchable(claim: ClaimId) -> bool {
    !matches!(
        claim,
        ClaimId::LEMMA_12
            | ClaimId::LEMMA_14
            | ClaimId::LEMMA_19
            | ClaimId::LEMMA_20
            | ClaimId::PREHISTORIC
            | ClaimId::KNESER
    )
}

/// Computes the record for `S` from scratch.
pub fn evaluate(s: &GroupSubset, claims: &[ClaimId], rank: u64) -> Result<SearchRecord> {
    let g = s.group();
    let sig = sigma(s);
    let mut slacks = BTreeMap::new();
    let mut violations = Vec::new();
    for &c in claims {
        let r = check(c, s, &Aux::default())?;
        slacks.insert(
            c.name().to_string(),
            r.slack.filter(|_| r.hypotheses_met).map(|q| fmt_q(&q)),
        );
        if r.violated() {
            violations.push(c.name().to_string());
        }
    }
    Ok(SearchRecord {
        rank,
        group: g.to_string(),
        canonical_form: g.canonical_form().to_vec(),
        set: s.to_hex(),
        size: s.len(),
        sigma_size: sig.len(),
        slacks,
        violations,
        flags: Flags {
            zero_free: !s.contains(g.zero()),
            asymmetric: s.is_asymmetric(),
            symmetric: s.is_symmetric(),
            generating: span(s).order() == g.order(),
            sigma_aperiodic: is_aperiodic(&sig),
        },
    })
}

/// Re-evaluates a record from `(group, set)` and compares every field.
pub fn verify_record(rec: &SearchRecord, claims: &[ClaimId]) -> Result<bool> {
    let s = rec.subset()?;
    Ok(&evaluate(&s, claims, rec.rank)? == rec)
}

/// Independent confirmation of a reported violation: `Σ(S)` is recomputed
/// by `2^|S|` enumeration and the claim's sides and hypotheses are rebuilt
/// from it. Returns `false` when the record does not survive.
pub fn oracle_confirms(rec: &SearchRecord, claim: ClaimId) -> Result<bool> {
    let s = rec.subset()?;
    let g = s.group();
    let sig = naive::sigma(&s)?;
    if sig.len() != rec.sigma_size {
        return Ok(false);
    }
    let lhs = Q::from_integer(sig.len() as i64);
    let aperiodic = naive::is_aperiodic(&sig);
    let zero_free = !s.contains(g.zero());
    let holds = match claim {
        ClaimId::CONJECTURE | ClaimId::DEVOS_T3 => {
            if !zero_free || !aperiodic {
                return Ok(false);
            }
            lhs >= bounds::bound_value(claim, &s)?
        }
        ClaimId::SYM_T4 | ClaimId::SYM_T4_ODD => {
            if !zero_free || !aperiodic || !s.is_symmetric() || s.len() < 4 {
                return Ok(false);
            }
            if claim == ClaimId::SYM_T4_ODD && g.order() % 2 == 0 {
                return Ok(false);
            }
            lhs >= bounds::bound_value(claim, &s)?
        }
        ClaimId::PERIODIC_T5 => {
            if !s.is_symmetric() {
                return Ok(false);
            }
            let k = naive::period(&sig);
            let rest = s.difference(&k)?.len() as i64;
            lhs >= Q::new(rest * (rest - 2), 4) + k.len() as i64
        }
        ClaimId::LEMMA_2S | ClaimId::LEMMA_2S1 => {
            if !s.is_asymmetric() {
                return Ok(false);
            }
            if claim == ClaimId::LEMMA_2S1 && (2 * sig.len() > g.order() || s.len() < 4) {
                return Ok(false);
            }
            lhs >= bounds::bound_value(claim, &s)?
        }
        ClaimId::OLSON_T1 | ClaimId::MAIN_T2 | ClaimId::MAIN_T2_ODD => {
            if !s.is_asymmetric() {
                return Ok(false);
            }
            let large = bounds::all_subsets(&s).into_iter().any(|t| {
                !t.is_empty()
                    && 2 * naive::sigma(&t).expect("subset of a checked set").len()
                        > naive::span(&t).len()
            });
            let ii = match claim {
                ClaimId::OLSON_T1 => 2 * sig.len() > g.order(),
                _ => large,
            };
            let n = s.len() as i64;
            let i = lhs >= Q::new(n * (n - 1), 2) + 3;
            let ip = g.order() % 2 == 0 || lhs >= bounds::bound_value(ClaimId::MAIN_T2_ODD, &s)?;
            match claim {
                ClaimId::OLSON_T1 => ii || lhs >= bounds::bound_value(claim, &s)?,
                _ => (i || ii) && (ip || ii),
            }
        }
        // No independent route; the kernel re-check must at least agree.
        _ => !check(claim, &s, &Aux::default())?.violated(),
    };
    Ok(!holds)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SearchConfig {
    /// Group specs, deduplicated by canonical form.
    pub groups: Vec<String>,
    pub constraints: SubsetConstraints,
    pub claims: Vec<ClaimId>,
}

impl SearchConfig {
    pub fn new(groups: &[Group], constraints: SubsetConstraints, claims: Vec<ClaimId>) -> Result<Self> {
        constraints.validate()?;
        for &c in &claims {
            if !searchable(c) {
                return Err(Error::MalformedAux(format!(
                    "claim {c} needs auxiliary input and cannot be searched"
                )));
            }
        }
        let mut seen = HashSet::new();
        let groups = groups
            .iter()
            .filter(|g| seen.insert(g.canonical_form().to_vec()))
            .map(|g| g.to_string())
            .collect();
        Ok(SearchConfig {
            groups,
            constraints,
            claims,
        })
    }

    pub fn config_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serialises");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn parsed_groups(&self) -> Result<Vec<Group>> {
        self.groups.iter().map(|g| GroupSpec::parse(g)).collect()
    }
}

/// Where the next candidate comes from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub group: usize,
    /// Next slot mask to visit, lowercase hex.
    pub mask: String,
}

impl Cursor {
    fn mask_value(&self) -> Result<u128> {
        if self.mask.is_empty() {
            return Ok(0);
        }
        u128::from_str_radix(&self.mask, 16)
            .map_err(|_| Error::ManifestMismatch(format!("bad cursor mask {:?}", self.mask)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config_hash: String,
    pub config: SearchConfig,
    pub cursor: Cursor,
    pub records_written: u64,
    pub records_bytes: u64,
    pub candidates_seen: u64,
    pub done: bool,
}

impl RunManifest {
    pub fn fresh(config: &SearchConfig) -> Self {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            config_hash: config.config_hash(),
            config: config.clone(),
            cursor: Cursor::default(),
            records_written: 0,
            records_bytes: 0,
            candidates_seen: 0,
            done: false,
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let m: RunManifest = serde_json::from_str(&text)?;
        if m.tool_version != TOOL_VERSION {
            return Err(Error::VersionMismatch {
                found: m.tool_version,
                expected: TOOL_VERSION.to_string(),
            });
        }
        if m.config.config_hash() != m.config_hash {
            return Err(Error::ManifestMismatch("config hash does not match config".into()));
        }
        Ok(m)
    }

    /// Atomic replace through a temporary file.
    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(self)?.as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// The manifest path that accompanies a records file.
pub fn manifest_path_for(records: &Path) -> PathBuf {
    let mut s = records.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn record_line(rec: &SearchRecord) -> String {
    let mut s = serde_json::to_string(rec).expect("record serialises");
    s.push('\n');
    s
}

/// Appends records as JSONL.
pub fn write_records(path: &Path, records: &[SearchRecord]) -> Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        f.write_all(record_line(r).as_bytes())?;
    }
    f.flush()?;
    Ok(())
}

/// Reads a JSONL record file; a corrupt or unterminated line is reported
/// with its 1-based line number.
pub fn read_records(path: &Path) -> Result<Vec<SearchRecord>> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    let mut line = String::new();
    let mut number = 0;
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        number += 1;
        if !line.ends_with('\n') {
            return Err(Error::CorruptRecord {
                line: number,
                message: "truncated line (no terminating newline)".into(),
            });
        }
        let rec = serde_json::from_str(line.trim_end()).map_err(|e| Error::CorruptRecord {
            line: number,
            message: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Stop after this many records (simulates an interrupted run).
    pub max_records: Option<u64>,
    /// Stop cleanly at the first checkpoint once this many records have
    /// been written in this invocation.
    pub stop_after: Option<u64>,
    /// Report progress to standard error.
    pub progress: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub records_written: u64,
    pub candidates_seen: u64,
    pub done: bool,
    pub violations: u64,
}

/// Drives a search, calling `emit` with each chunk of records in order.
/// `checkpoint` receives the cursor after the chunk.
fn drive(
    config: &SearchConfig,
    start: &Cursor,
    start_rank: u64,
    mut emit: impl FnMut(&[SearchRecord], &Cursor, u64) -> Result<bool>,
) -> Result<(Cursor, u64, bool)> {
    let groups = config.parsed_groups()?;
    let c = &config.constraints;
    let mut rank = start_rank;
    let mut seen = 0u64;
    let mut gi = start.group;
    let mut mask = start.mask_value()?;
    while gi < groups.len() {
        let mut en = SubsetEnumerator::starting_at(&groups[gi], c, mask)?;
        loop {
            let batch: Vec<(u128, GroupSubset)> = en.by_ref().take(CHUNK).collect();
            if batch.is_empty() {
                break;
            }
            seen += batch.len() as u64;
            let next_mask = batch.last().expect("non-empty").0 + 1;
            let evaluated: Vec<Result<Option<SearchRecord>>> = batch
                .par_iter()
                .map(|(_, s)| {
                    if c.accepts_late(s) {
                        evaluate(s, &config.claims, 0).map(Some)
                    } else {
                        Ok(None)
                    }
                })
                .collect();
            let mut recs = Vec::new();
            for r in evaluated {
                if let Some(mut rec) = r? {
                    rec.rank = rank;
                    rank += 1;
                    recs.push(rec);
                }
            }
            let cursor = Cursor {
                group: gi,
                mask: format!("{next_mask:x}"),
            };
            if !emit(&recs, &cursor, seen)? {
                return Ok((cursor, rank, false));
            }
        }
        gi += 1;
        mask = 0;
    }
    let end = Cursor {
        group: groups.len(),
        mask: String::new(),
    };
    emit(&[], &end, seen)?;
    Ok((end, rank, true))
}

/// Runs (or resumes) a search writing JSONL to `out` and a manifest beside
/// it. With `resume`, the records file is truncated to the last checkpoint
/// and the run continues from the stored cursor.
pub fn run_search(
    config: &SearchConfig,
    out: &Path,
    resume: bool,
    opts: &RunOptions,
) -> Result<RunSummary> {
    let mpath = manifest_path_for(out);
    let mut manifest = if resume {
        let m = RunManifest::read(&mpath)?;
        if m.config_hash != config.config_hash() {
            return Err(Error::ManifestMismatch(
                "search configuration differs from the manifest".into(),
            ));
        }
        let f = OpenOptions::new().write(true).open(out)?;
        f.set_len(m.records_bytes)?;
        m
    } else {
        File::create(out)?;
        let m = RunManifest::fresh(config);
        m.write(&mpath)?;
        m
    };
    if manifest.done {
        return Ok(RunSummary {
            records_written: manifest.records_written,
            candidates_seen: manifest.candidates_seen,
            done: true,
            violations: 0,
        });
    }
    let mut file = OpenOptions::new().append(true).open(out)?;
    let base_seen = manifest.candidates_seen;
    let mut violations = 0u64;
    let start = manifest.cursor.clone();
    let start_rank = manifest.records_written;
    let mut budget = opts.max_records;
    let mut written_now = 0u64;
    let (_, _, done) = drive(config, &start, start_rank, |recs, cursor, seen| {
        let take = match budget {
            Some(b) => (b as usize).min(recs.len()),
            None => recs.len(),
        };
        for r in &recs[..take] {
            let line = record_line(r);
            file.write_all(line.as_bytes())?;
            manifest.records_bytes += line.len() as u64;
            manifest.records_written += 1;
            written_now += 1;
            violations += u64::from(!r.violations.is_empty());
        }
        file.flush()?;
        if let Some(b) = budget.as_mut() {
            *b -= take as u64;
            if take < recs.len() || *b == 0 {
                // interrupted: the manifest keeps the previous checkpoint
                return Ok(false);
            }
        }
        manifest.cursor = cursor.clone();
        manifest.candidates_seen = base_seen + seen;
        manifest.done = cursor.group >= config.groups.len();
        manifest.write(&mpath)?;
        if opts.progress {
            eprintln!(
                "progress: group {}/{} records {}",
                cursor.group.min(config.groups.len()),
                config.groups.len(),
                manifest.records_written
            );
        }
        Ok(opts.stop_after.is_none_or(|n| written_now < n))
    })?;
    Ok(RunSummary {
        records_written: manifest.records_written,
        candidates_seen: manifest.candidates_seen,
        done,
        violations,
    })
}

/// All records of an in-memory search.
pub fn search_all(config: &SearchConfig) -> Result<Vec<SearchRecord>> {
    let mut out = Vec::new();
    drive(config, &Cursor::default(), 0, |recs, _, _| {
        out.extend_from_slice(recs);
        Ok(true)
    })?;
    Ok(out)
}

/// Records attaining the minimum slack of `claim` in each
/// `(canonical form, |S|)` cell; ties are all kept.
pub fn extremal(records: &[SearchRecord], claim: ClaimId) -> Vec<SearchRecord> {
    let mut best: BTreeMap<(Vec<usize>, usize), (Q, Vec<SearchRecord>)> = BTreeMap::new();
    for r in records {
        let Some(sl) = r.slack(claim) else { continue };
        let key = (r.canonical_form.clone(), r.size);
        match best.get_mut(&key) {
            Some((m, v)) if sl == *m => v.push(r.clone()),
            Some((m, v)) if sl < *m => {
                *m = sl;
                *v = vec![r.clone()];
            }
            Some(_) => {}
            None => {
                best.insert(key, (sl, vec![r.clone()]));
            }
        }
    }
    best.into_values().flat_map(|(_, v)| v).collect()
}

pub fn find_extremal(
    groups: &[Group],
    claim: ClaimId,
    c: &SubsetConstraints,
) -> Result<Vec<SearchRecord>> {
    if !bounds::has_closed_form(claim) {
        return Err(Error::NoClosedForm(claim.to_string()));
    }
    let config = SearchConfig::new(groups, c.clone(), vec![claim])?;
    Ok(extremal(&search_all(&config)?, claim))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuzzVerdict {
    Exhausted {
        instances: u64,
        min_slack: Option<Q>,
        witness: Option<SearchRecord>,
    },
    Counterexample(SearchRecord),
}

/// Runs the conjecture over every zero-free `S` with aperiodic `Σ(S)` (plus
/// any extra constraints). Negative slacks must survive the oracle gate.
pub fn fuzz_conjecture(groups: &[Group], extra: &SubsetConstraints) -> Result<FuzzVerdict> {
    let mut c = extra.clone();
    c.zero_free = true;
    c.sigma_aperiodic = true;
    let config = SearchConfig::new(groups, c, vec![ClaimId::CONJECTURE])?;
    let mut instances = 0u64;
    let mut min: Option<(Q, SearchRecord)> = None;
    let mut counter: Option<SearchRecord> = None;
    let mut gate_error = None;
    drive(&config, &Cursor::default(), 0, |recs, _, _| {
        for r in recs {
            instances += 1;
            let Some(sl) = r.slack(ClaimId::CONJECTURE) else {
                continue;
            };
            if min.as_ref().is_none_or(|(m, _)| sl < *m) {
                min = Some((sl, r.clone()));
            }
            if sl < Q::from_integer(0) {
                match oracle_confirms(r, ClaimId::CONJECTURE) {
                    Ok(true) => {
                        counter = Some(r.clone());
                        return Ok(false);
                    }
                    Ok(false) => {
                        gate_error = Some(format!("oracle rejected record {}", r.set));
                        return Ok(false);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    })?;
    if let Some(msg) = gate_error {
        return Err(Error::Inconsistency(msg));
    }
    if let Some(r) = counter {
        return Ok(FuzzVerdict::Counterexample(r));
    }
    Ok(FuzzVerdict::Exhausted {
        instances,
        min_slack: min.as_ref().map(|m| m.0),
        witness: min.map(|m| m.1),
    })
}
