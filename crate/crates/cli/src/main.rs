use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use subsums::bounds::{self, check, fmt_q, Aux, ClaimId, ClaimReport};
use subsums::group::{abelian_groups_up_to, DEFAULT_MAX_ORDER};
use subsums::search::{
    self, oracle_confirms, read_records, record_line, run_search, search_all, FuzzVerdict,
    RunManifest, RunOptions, SearchConfig, SearchRecord, SubsetConstraints,
};
use subsums::structure::{self, HpMode, RepresentationKind};
use subsums::subgroup::SubgroupLattice;
use subsums::suites::{self, SuiteReport, DEFAULT_SEED};
use subsums::sumset::{is_aperiodic, k_wedge_all, lambda_profile};
use subsums::{
    hat, lambda, period, sigma, sigma_star, span, Error, Group, GroupSpec, GroupSubset, Quotient,
    Subgroup,
};

#[derive(Parser)]
#[command(name = "subsums", version, about = "Subset sums and sumset bounds in finite abelian groups")]
struct Cli {
    /// Print JSON Lines instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order accepted; for search, fuzz and report it also
    /// selects every group up to this order when no --group is given.
    #[arg(long, global = true, env = "SUBSUMS_MAX_ORDER")]
    max_order: Option<usize>,
    /// Worker threads for suites and searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Target {
    /// Group, e.g. Z14 or Z2xZ4.
    #[arg(long)]
    group: String,
    /// Subset literal, e.g. 1,2,-1 or "(1,0),(0,1)".
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Args, Default)]
struct ConstraintArgs {
    #[arg(long)]
    zero_free: bool,
    #[arg(long)]
    asymmetric: bool,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    generating: bool,
    #[arg(long)]
    sigma_aperiodic: bool,
    #[arg(long)]
    size_min: Option<usize>,
    #[arg(long)]
    size_max: Option<usize>,
}

impl ConstraintArgs {
    fn constraints(&self) -> SubsetConstraints {
        SubsetConstraints {
            zero_free: self.zero_free,
            asymmetric: self.asymmetric,
            symmetric: self.symmetric,
            generating: self.generating,
            sigma_aperiodic: self.sigma_aperiodic,
            size_min: self.size_min,
            size_max: self.size_max,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Σ(S): all subset sums, including the empty sum.
    Sigma(Target),
    /// Σ*(S): sums of non-empty subsets.
    SigmaStar(Target),
    /// k∧A: sums of k distinct elements (every k unless --k is given).
    Kwedge {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Period (stabiliser) of a set.
    Period(Target),
    /// λ_B(x) = |(B+x)∖B| for --set B, at --x or at every x.
    Lambda {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// AP- and Vosper-representations of Ŝ.
    HpRep {
        #[command(flatten)]
        target: Target,
        /// Stop at the first certificate.
        #[arg(long)]
        first: bool,
    },
    /// Faithful and super faithful growth of Ŝ.
    Faithful(Target),
    /// Coset layers T_1 ⊇ T_2 ⊇ … of T = S∖H in G/H.
    Layers {
        #[command(flatten)]
        target: Target,
        /// Generators of H.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
    },
    /// AP-case statistics of S relative to H.
    ApStats {
        #[command(flatten)]
        target: Target,
        /// Generators of H.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
    },
    /// Check one claim on one set.
    Check {
        #[arg(long)]
        claim: ClaimId,
        #[command(flatten)]
        target: Target,
        /// B for the λ claims.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Y for the sumset claims.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// T ⊆ S for the aperiodicity observation.
        #[arg(long, allow_hyphen_values = true)]
        t_subset: Option<String>,
        /// Generators of a subgroup H.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Second element for the subadditivity relation.
        #[arg(long, allow_hyphen_values = true)]
        x2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Critical number of a group.
    Cr {
        #[arg(long)]
        group: String,
    },
    /// Enumerate constrained subsets and evaluate claims.
    Search {
        /// Groups to search (repeatable); defaults to every group up to --max-order.
        #[arg(long)]
        group: Vec<String>,
        /// Comma-separated claim ids.
        #[arg(long, default_value = "CONJECTURE")]
        claims: String,
        #[command(flatten)]
        constraints: ConstraintArgs,
        /// Records file (JSONL); a manifest is written beside it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resume the run described by this manifest.
        #[arg(long, conflicts_with = "out")]
        resume: Option<PathBuf>,
        /// Stop at the first checkpoint after this many new records
        /// (exactly this many when printing to standard output).
        #[arg(long)]
        stop_after: Option<u64>,
        /// Keep only minimum-slack records per group and size for the first claim.
        #[arg(long)]
        extremal: bool,
    },
    /// Search for conjecture counterexamples (zero-free S, Σ(S) aperiodic).
    Fuzz {
        #[arg(long)]
        group: Vec<String>,
        #[command(flatten)]
        constraints: ConstraintArgs,
    },
    /// Run verification suites.
    Report {
        /// extremal, cr, main, symmetric, periodic, kwedge, hp, lemmas, oracle, conjecture or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Exit 1 means a verified violation.
struct Violation;

type Outcome = Result<Option<Violation>, Error>;

struct Ctx {
    json: bool,
    max_order: Option<usize>,
}

impl Ctx {
    fn cap(&self) -> usize {
        self.max_order.unwrap_or(DEFAULT_MAX_ORDER)
    }

    fn group(&self, spec: &str) -> Result<Group, Error> {
        GroupSpec::parse_with_cap(spec, self.cap())
    }

    fn target(&self, t: &Target) -> Result<(Group, GroupSubset), Error> {
        let g = self.group(&t.group)?;
        let s = GroupSubset::parse(&g, &t.set)?;
        Ok((g, s))
    }

    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(&value).expect("json value"));
        } else {
            println!("{}", text());
        }
    }

    fn groups(&self, specs: &[String], default_order: Option<usize>) -> Result<Vec<Group>, Error> {
        if !specs.is_empty() {
            return specs.iter().map(|s| self.group(s)).collect();
        }
        match self.max_order.or(default_order) {
            Some(n) => Ok(abelian_groups_up_to(n)),
            None => Err(Error::Parse("give --group or --max-order".into())),
        }
    }
}

fn subgroup_of(g: &Group, gens: &str) -> Result<Subgroup, Error> {
    Ok(span(&GroupSubset::parse(g, gens)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("error: a subcommand is required; try --help");
            return ExitCode::from(2);
        }
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            let line: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        json: cli.json,
        max_order: cli.max_order,
    };
    match run(&ctx, cli.cmd) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Violation)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, cmd: Command) -> Outcome {
    match cmd {
        Command::Sigma(t) => sums(ctx, &t, false),
        Command::SigmaStar(t) => sums(ctx, &t, true),
        Command::Kwedge { target, k } => {
            let (_, a) = ctx.target(&target)?;
            let all = k_wedge_all(&a);
            let ks: Vec<usize> = match k {
                Some(k) => {
                    subsums::k_wedge(k, &a)?;
                    vec![k as usize]
                }
                None => (0..all.len()).collect(),
            };
            for k in ks {
                let w = &all[k];
                ctx.emit(
                    json!({"k": k, "size": w.len(), "set": w.to_hex(), "elements": w.to_string()}),
                    || format!("|{k}∧A| = {}  {w}", w.len()),
                );
            }
            Ok(None)
        }
        Command::Period(t) => {
            let (_, x) = ctx.target(&t)?;
            let p = period(&x);
            ctx.emit(
                json!({"order": p.order(), "period": p.carrier().to_hex(), "elements": p.carrier().to_string(), "aperiodic": p.is_trivial()}),
                || format!("period = {}\n|K| = {}\naperiodic: {}", p.carrier(), p.order(), p.is_trivial()),
            );
            Ok(None)
        }
        Command::Lambda { target, x } => {
            let (g, b) = ctx.target(&target)?;
            match x {
                Some(x) => {
                    let x = g.parse_element(&x)?;
                    let l = lambda(&b, x);
                    ctx.emit(json!({"x": g.format_element(x), "lambda": l}), || {
                        format!("λ_B({}) = {l}", g.format_element(x))
                    });
                }
                None => {
                    for (i, l) in lambda_profile(&b).into_iter().enumerate() {
                        let x = g.format_element(g.elem(i));
                        ctx.emit(json!({"x": x, "lambda": l}), || format!("λ_B({x}) = {l}"));
                    }
                }
            }
            Ok(None)
        }
        Command::HpRep { target, first } => {
            let (g, s) = ctx.target(&target)?;
            let lattice = SubgroupLattice::new(&g)?;
            let mode = if first { HpMode::First } else { HpMode::All };
            let res = structure::hp_representation_in(&s, &lattice, mode, structure::DEFAULT_VOSPER_CAP)?;
            let a = hat(&s);
            if !ctx.json {
                println!("Ŝ = {a}  (|Ŝ| = {}, |G| = {})", a.len(), g.order());
                println!("hypotheses met (|Ŝ| ≤ |G|/2): {}", res.hypotheses_met);
            }
            for c in &res.representations {
                let kind = match c.kind {
                    RepresentationKind::Ap => "ap",
                    RepresentationKind::Vosper => "vosper",
                };
                let gens: Vec<String> = c.subgroup.generators().iter().map(|&x| g.format_element(x)).collect();
                ctx.emit(
                    json!({
                        "kind": kind,
                        "subgroup_order": c.subgroup.order(),
                        "generators": gens,
                        "quotient_size": c.quotient_size,
                        "ap_params": c.ap_params.map(|(s, d)| [s.index(), d.index()]),
                        "line": c.to_line(&a),
                    }),
                    || format!("{kind}: |H| = {} H = ⟨{}⟩  {}", c.subgroup.order(), gens.join(", "), c.to_line(&a)),
                );
            }
            if res.representations.is_empty() && !ctx.json {
                println!("no representation");
            }
            if !res.skipped_quotients.is_empty() {
                eprintln!("note: Vosper test skipped for quotient orders {:?}", res.skipped_quotients);
            }
            Ok(None)
        }
        Command::Faithful(t) => {
            let (_, s) = ctx.target(&t)?;
            let f = structure::growth(&s, structure::Growth::Faithful);
            let sf = structure::growth(&s, structure::Growth::SuperFaithful);
            ctx.emit(
                json!({"faithful": f.holds, "super_faithful": sf.holds, "sizes": f.sizes, "failing_j": f.failing_j, "super_failing_j": sf.failing_j}),
                || format!("faithful: {}\nsuper faithful: {}\n|jŜ|: {:?}", f.holds, sf.holds, f.sizes),
            );
            Ok(None)
        }
        Command::Layers { target, subgroup } => {
            let (g, s) = ctx.target(&target)?;
            let h = subgroup_of(&g, &subgroup)?;
            let q = Quotient::new(&h)?;
            let t = s.difference(h.carrier())?;
            for (i, l) in structure::coset_layers(&q, &t)?.iter().enumerate() {
                ctx.emit(
                    json!({"layer": i + 1, "size": l.len(), "set": l.to_hex(), "elements": l.to_string(), "quotient": q.group().to_string()}),
                    || format!("T_{} = {l}  (in {})", i + 1, q.group()),
                );
            }
            Ok(None)
        }
        Command::ApStats { target, subgroup } => {
            let (g, s) = ctx.target(&target)?;
            let h = subgroup_of(&g, &subgroup)?;
            let st = structure::ap_case_stats(&s, &h)?;
            ctx.emit(serde_json::to_value(&st)?, || {
                let mut out = format!(
                    "h = {} v = {} t = {} u = {} ℓ = {} m = {}\nlayers: {:?}",
                    st.h, st.v, st.t, st.u, st.ell, st.m, st.layer_sizes
                );
                if let Some(c) = &st.claims {
                    out.push_str(&format!(
                        "\nclaim I: {}\nclaim II: {}\nclaim III: {}\nℓ < m: {}\nlower bound: {}\n|Σ(S)| = {}",
                        c.claim_i,
                        c.claim_ii,
                        c.claim_iii,
                        c.ell_below_m,
                        c.lemma.map_or("not evaluated".into(), |b| b.to_string()),
                        c.sigma_size
                    ));
                }
                out
            });
            Ok(None)
        }
        Command::Check {
            claim,
            target,
            b,
            y,
            t_subset,
            subgroup,
            k,
            x,
            x2,
            t,
        } => {
            let (g, s) = ctx.target(&target)?;
            let set = |v: &Option<String>| v.as_deref().map(|v| GroupSubset::parse(&g, v)).transpose();
            let elem = |v: &Option<String>| v.as_deref().map(|v| g.parse_element(v)).transpose();
            let aux = Aux {
                b: set(&b)?,
                y: set(&y)?,
                t_subset: set(&t_subset)?,
                h: subgroup.as_deref().map(|h| subgroup_of(&g, h)).transpose()?,
                k,
                elem_x: elem(&x)?,
                elem_y: elem(&x2)?,
                t,
            };
            let r = check(claim, &s, &aux)?;
            ctx.emit(serde_json::to_value(&r)?, || report_text(&r));
            if r.violated() {
                return confirm_violation(&r, &s);
            }
            Ok(None)
        }
        Command::Cr { group } => {
            let g = ctx.group(&group)?;
            let cr = bounds::critical_number(&g)?;
            ctx.emit(serde_json::to_value(&cr)?, || {
                let mut out = format!("cr = {}", cr.value);
                if cr.trivial_convention {
                    out.push_str("  (trivial group, by convention)");
                } else if let Some(w) = &cr.witness {
                    out.push_str(&format!("\nlargest zero-free S with Σ*(S) ≠ G: {w}"));
                }
                out
            });
            Ok(None)
        }
        Command::Search {
            group,
            claims,
            constraints,
            out,
            resume,
            stop_after,
            extremal,
        } => {
            if let Some(mpath) = resume {
                let m = RunManifest::read(&mpath)?;
                let records = records_path(&mpath)?;
                let opts = RunOptions {
                    stop_after,
                    progress: true,
                    ..Default::default()
                };
                let sum = run_search(&m.config, &records, true, &opts)?;
                return finish_file_run(ctx, &records, &m.config, sum.done);
            }
            let claims = parse_claims(&claims)?;
            let groups = ctx.groups(&group, None)?;
            let config = SearchConfig::new(&groups, constraints.constraints(), claims.clone())?;
            if let Some(out) = out {
                if extremal {
                    return Err(Error::Parse("--extremal prints to standard output; drop --out".into()));
                }
                let opts = RunOptions {
                    stop_after,
                    progress: true,
                    ..Default::default()
                };
                let sum = run_search(&config, &out, false, &opts)?;
                return finish_file_run(ctx, &out, &config, sum.done);
            }
            let mut recs = search_all(&config)?;
            if let Some(n) = stop_after {
                recs.truncate(n as usize);
            }
            if extremal {
                let c = claims[0];
                if !bounds::has_closed_form(c) {
                    return Err(Error::NoClosedForm(c.to_string()));
                }
                recs = search::extremal(&recs, c);
                if recs.is_empty() {
                    eprintln!("no instance meets the hypotheses of {c}");
                }
            }
            for r in &recs {
                print_record(ctx, r);
            }
            gate(&recs, &config.claims)
        }
        Command::Fuzz { group, constraints } => {
            let groups = ctx.groups(&group, Some(14))?;
            match search::fuzz_conjecture(&groups, &constraints.constraints())? {
                FuzzVerdict::Exhausted {
                    instances,
                    min_slack,
                    witness,
                } => {
                    let ms = min_slack.map(|q| fmt_q(&q));
                    ctx.emit(
                        json!({"verdict": "exhausted", "groups": groups.len(), "instances": instances, "min_slack": ms, "witness": witness.as_ref().map(|w| json!({"group": w.group, "set": w.set}))}),
                        || {
                            format!(
                                "exhausted: {} groups, {instances} instances\nmin slack = {}{}",
                                groups.len(),
                                ms.clone().unwrap_or_else(|| "-".into()),
                                witness
                                    .as_ref()
                                    .map(|w| format!(" at {} {}", w.group, subset_text(w)))
                                    .unwrap_or_default()
                            )
                        },
                    );
                    Ok(None)
                }
                FuzzVerdict::Counterexample(r) => {
                    ctx.emit(
                        json!({"verdict": "counterexample", "record": serde_json::to_value(&r)?}),
                        || format!("counterexample (oracle-verified): {} {} |Σ(S)| = {}", r.group, subset_text(&r), r.sigma_size),
                    );
                    Ok(Some(Violation))
                }
            }
        }
        Command::Report { suite, seed } => report(ctx, &suite, seed),
    }
}

fn sums(ctx: &Ctx, t: &Target, star: bool) -> Outcome {
    let (_, s) = ctx.target(t)?;
    let out = if star { sigma_star(&s) } else { sigma(&s) };
    let name = if star { "Σ*(S)" } else { "Σ(S)" };
    ctx.emit(
        json!({"size": out.len(), "set": out.to_hex(), "elements": out.to_string(), "aperiodic": is_aperiodic(&out)}),
        || format!("|{name}| = {}\n{name} = {out}", out.len()),
    );
    Ok(None)
}

fn report_text(r: &ClaimReport) -> String {
    let mut out = format!("claim: {} ({})\ngroup: {}\n", r.claim, r.claim.statement(), r.group);
    out.push_str(&format!("hypotheses met: {}", r.hypotheses_met));
    if let Some(reason) = &r.reason {
        out.push_str(&format!(" ({reason})"));
    }
    out.push('\n');
    if let Some(l) = r.lhs {
        out.push_str(&format!("lhs = {l}\n"));
    }
    if let Some(q) = &r.rhs {
        out.push_str(&format!("rhs = {}\n", fmt_q(q)));
    }
    if let Some(q) = &r.slack {
        out.push_str(&format!("slack = {}\n", fmt_q(q)));
    }
    if let Some(b) = &r.branch {
        out.push_str(&format!("branch: {b}\n"));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("witness: {w}\n"));
    }
    for c in &r.subchecks {
        let h = c.holds.map_or("info".to_string(), |b| b.to_string());
        out.push_str(&format!("  {}: {h} {}\n", c.name, c.detail));
    }
    out.push_str(&format!(
        "result: {}",
        if !r.hypotheses_met {
            "nothing asserted"
        } else if r.holds {
            "holds"
        } else {
            "VIOLATED"
        }
    ));
    out
}

/// A violation from `check` is reported with exit 1 only after the
/// independent re-computation agrees.
fn confirm_violation(r: &ClaimReport, s: &GroupSubset) -> Outcome {
    if search::searchable(r.claim) {
        let rec = search::evaluate(s, &[r.claim], 0)?;
        if !oracle_confirms(&rec, r.claim)? {
            return Err(Error::Inconsistency(format!(
                "{} violation not confirmed by the reference computation",
                r.claim
            )));
        }
    }
    Ok(Some(Violation))
}

fn gate(recs: &[SearchRecord], claims: &[ClaimId]) -> Outcome {
    let mut found = false;
    for r in recs {
        for c in claims.iter().filter(|c| r.violations.iter().any(|v| v == c.name())) {
            if oracle_confirms(r, *c)? {
                found = true;
            } else {
                return Err(Error::Inconsistency(format!(
                    "record {} {} flagged {c} but the reference computation disagrees",
                    r.group, r.set
                )));
            }
        }
    }
    Ok(found.then_some(Violation))
}

fn finish_file_run(ctx: &Ctx, records: &Path, config: &SearchConfig, done: bool) -> Outcome {
    let recs = read_records(records)?;
    let violations = recs.iter().filter(|r| !r.violations.is_empty()).count();
    ctx.emit(
        json!({"records": recs.len(), "violations": violations, "done": done, "out": records.display().to_string()}),
        || {
            format!(
                "{} records written to {} ({})\nviolations flagged: {violations}",
                recs.len(),
                records.display(),
                if done { "complete" } else { "interrupted; resume with --resume" }
            )
        },
    );
    gate(&recs, &config.claims)
}

fn records_path(manifest: &Path) -> Result<PathBuf, Error> {
    let s = manifest.to_string_lossy();
    s.strip_suffix(".manifest.json")
        .map(PathBuf::from)
        .ok_or_else(|| Error::Parse(format!("{s} is not a search manifest (*.manifest.json)")))
}

fn parse_claims(s: &str) -> Result<Vec<ClaimId>, Error> {
    s.split(',').map(|c| c.parse()).collect()
}

fn subset_text(r: &SearchRecord) -> String {
    r.subset().map(|s| s.to_string()).unwrap_or_else(|_| r.set.clone())
}

fn print_record(ctx: &Ctx, r: &SearchRecord) {
    if ctx.json {
        print!("{}", record_line(r));
        return;
    }
    let slacks: Vec<String> = r
        .slacks
        .iter()
        .map(|(k, v)| format!("{k}={}", v.as_deref().unwrap_or("-")))
        .collect();
    println!(
        "{:>6}  {:<10} |S|={:<3} |Σ|={:<4} {:<28} {}{}",
        r.rank,
        r.group,
        r.size,
        r.sigma_size,
        subset_text(r),
        slacks.join(" "),
        if r.violations.is_empty() {
            String::new()
        } else {
            format!("  VIOLATES {}", r.violations.join(","))
        }
    );
}

fn report(ctx: &Ctx, suite: &str, seed: u64) -> Outcome {
    let all = suite == "all";
    let want = |name: &str| all || suite == name;
    let known = [
        "extremal", "cr", "main", "symmetric", "periodic", "kwedge", "hp", "lemmas", "oracle", "conjecture",
    ];
    if !all && !known.contains(&suite) {
        return Err(Error::Parse(format!("unknown suite {suite:?}; one of {} or all", known.join(", "))));
    }
    let cap = |d: usize| ctx.max_order.unwrap_or(d);
    let mut reports: Vec<SuiteReport> = Vec::new();
    let mut violated = false;
    let mut run = |name: &str, f: &dyn Fn() -> subsums::Result<SuiteReport>| -> Result<(), Error> {
        if !want(name) {
            return Ok(());
        }
        eprintln!("running {name}");
        let r = f()?;
        violated |= r.violations() > 0;
        reports.push(r);
        Ok(())
    };
    run("extremal", &|| suites::extremal_family(2..=6))?;
    run("cr", &|| suites::critical_numbers(&[3, 5, 7, 11, 13]))?;
    run("main", &|| suites::asymmetric_exhaustive(cap(20)))?;
    run("symmetric", &|| suites::symmetric_exhaustive(cap(20), cap(21)))?;
    run("periodic", &|| suites::periodic_exhaustive(cap(18)))?;
    run("kwedge", &|| suites::kwedge_exhaustive(cap(16)))?;
    run("hp", &|| suites::representation_certificates(cap(16)))?;
    run("lemmas", &|| suites::lemma_suite(&suites::LemmaScale::default(), seed))?;
    run("oracle", &|| suites::oracle_equivalence(1000, cap(40), 12, seed))?;
    for r in &reports {
        ctx.emit(serde_json::to_value(r)?, || {
            format!(
                "{} [{}]\n{}",
                r.name,
                if r.violations() == 0 { "no violations" } else { "VIOLATIONS" },
                r.summary().trim_end()
            )
        });
    }
    if want("conjecture") {
        eprintln!("running conjecture");
        let out = suites::conjecture_fuzz(cap(14))?;
        match out.verdict {
            FuzzVerdict::Exhausted { instances, min_slack, .. } => {
                let ms = min_slack.map(|q| fmt_q(&q));
                ctx.emit(
                    json!({"name": "conjecture", "verdict": "exhausted", "instances": instances, "min_slack": ms}),
                    || format!("conjecture [exhausted]\n  {instances} instances, min slack {}", ms.clone().unwrap_or_else(|| "-".into())),
                );
            }
            FuzzVerdict::Counterexample(r) => {
                violated = true;
                ctx.emit(
                    json!({"name": "conjecture", "verdict": "counterexample", "group": r.group, "set": r.set}),
                    || format!("conjecture [COUNTEREXAMPLE] {} {}", r.group, subset_text(&r)),
                );
            }
        }
    }
    Ok(violated.then_some(Violation))
}
