//! Exhaustive grid search over diagonal profiles.
//!
//! Candidates are `A'_ql(x) = A'_ql(0) + sum_k c_ql_k x^k` with constants
//! α, β, γ, ζ and coefficients `c_ql_k` drawn from finite grids. The search
//! assigns variables depth-first and prunes with the coefficient identities
//! of the invariance relations and the catalog projections. Every survivor is
//! re-verified on the full tensors and then characterized.

mod compile;
mod config;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use config::{parse_grid, Ansatz, ConfigEcho, SearchConfig, SearchMode};

use crate::conformal::ConfAlgebra;
use crate::error::Error;
use crate::exactpoly::{fmt_rat, parse_poly, syms, MPoly, Rat, Registry};
use crate::families::{build_profile, characterize, scalar_relations, FamilyCase, FamilySpec};
use crate::ybe::profile::{pair_name, pairs};
use crate::ybe::{all_zero, invariance_defect, is_strict_solution, weak_defect, DiagProfile, E, H};
use compile::{as_i128, compile, space, Constraint};

/// Prefix chunks handed to the worker pool. The split depends only on the
/// space, so node counts and results do not depend on the worker count.
const TARGET_CHUNKS: usize = 64;

/// Profile entries by pair name ("ee", "ef", ...).
pub type ProfileStrings = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationRecord {
    pub odd: bool,
    pub sym: bool,
    pub shared_f: Option<String>,
    pub matrix: Option<[[String; 3]; 3]>,
    pub rank_le_1: bool,
    pub constants_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMatch {
    pub case: FamilyCase,
    pub params: BTreeMap<String, String>,
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub profile: ProfileStrings,
    pub constants: BTreeMap<String, String>,
    pub characterization: CharacterizationRecord,
    pub family: Option<FamilyMatch>,
}

impl Survivor {
    /// Parses the profile back into polynomials in `x`.
    pub fn diag(&self) -> Result<DiagProfile, Error> {
        profile_from_strings(&self.profile)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub profile: ProfileStrings,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: ConfigEcho,
    pub workers: usize,
    pub candidates_scanned: u64,
    pub nodes_visited: u64,
    pub survivors: Vec<Survivor>,
    pub characterization_failures: Vec<Failure>,
    pub verification_failures: Vec<Failure>,
    /// SHA-256 over the config echo, counts and results.
    pub content_hash: String,
    pub timing_ms: u64,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    /// Recomputes the content hash from the report body.
    pub fn recompute_hash(&self) -> String {
        content_hash(
            &self.config,
            self.candidates_scanned,
            self.nodes_visited,
            &self.survivors,
            &self.characterization_failures,
            &self.verification_failures,
        )
    }
}

fn content_hash(
    config: &ConfigEcho,
    scanned: u64,
    nodes: u64,
    survivors: &[Survivor],
    char_fail: &[Failure],
    ver_fail: &[Failure],
) -> String {
    let body = serde_json::json!({
        "config": config,
        "candidates_scanned": scanned,
        "nodes_visited": nodes,
        "survivors": survivors,
        "characterization_failures": char_fail,
        "verification_failures": ver_fail,
    });
    content_hash_of(&body)
}

/// Hex sha256 of the compact JSON text of `body`.
pub fn content_hash_of(body: &serde_json::Value) -> String {
    hex::encode(Sha256::digest(body.to_string().as_bytes()))
}

pub fn profile_strings(p: &DiagProfile) -> ProfileStrings {
    pairs()
        .map(|(q, l)| (pair_name(q, l), p.get(q, l).to_string()))
        .collect()
}

pub fn profile_from_strings(s: &ProfileStrings) -> Result<DiagProfile, Error> {
    let reg = Registry::with_names(["x"]);
    let mut p = DiagProfile::zero();
    for (q, l) in pairs() {
        let name = pair_name(q, l);
        let text = s
            .get(&name)
            .ok_or_else(|| Error::Input(format!("profile lacks entry '{name}'")))?;
        p.set(q, l, parse_poly(text, &reg)?);
    }
    Ok(p)
}

struct Engine<'a> {
    domains: &'a [Vec<Rat>],
    by_last: &'a [Vec<Constraint>],
    int_domains: Option<Vec<Vec<i128>>>,
}

struct Walk {
    rats: Vec<Rat>,
    ints: Option<Vec<i128>>,
    nodes: u64,
    leaves: Vec<Vec<Rat>>,
}

impl Engine<'_> {
    fn walk(&self, prefix: &[usize], stop: usize) -> Walk {
        let n = self.domains.len();
        let mut w = Walk {
            rats: vec![Rat::default(); n],
            ints: self.int_domains.as_ref().map(|_| vec![0; n]),
            nodes: 0,
            leaves: Vec::new(),
        };
        for (d, &i) in prefix.iter().enumerate() {
            self.assign(&mut w, d, i);
        }
        self.descend(&mut w, prefix.len(), stop);
        w
    }

    fn assign(&self, w: &mut Walk, d: usize, i: usize) {
        w.rats[d] = self.domains[d][i].clone();
        if let (Some(ints), Some(dom)) = (w.ints.as_mut(), self.int_domains.as_ref()) {
            ints[d] = dom[d][i];
        }
    }

    fn consistent(&self, w: &Walk, d: usize) -> bool {
        self.by_last[d].iter().all(|c| c.holds(w.ints.as_deref(), &w.rats))
    }

    /// Depth-first from depth `d` down to `stop`; leaves at `stop` hold the
    /// assigned indices' values up to that depth.
    fn descend(&self, w: &mut Walk, d: usize, stop: usize) {
        if d == stop {
            w.leaves.push(w.rats[..stop].to_vec());
            return;
        }
        for i in 0..self.domains[d].len() {
            self.assign(w, d, i);
            if self.consistent(w, d) {
                w.nodes += 1;
                self.descend(w, d + 1, stop);
            }
        }
    }

    /// Consistent index prefixes of the given depth.
    fn prefixes(&self, depth: usize) -> (Vec<Vec<usize>>, u64) {
        let mut out = Vec::new();
        let mut nodes = 0;
        let n = self.domains.len();
        let mut w = Walk {
            rats: vec![Rat::default(); n],
            ints: self.int_domains.as_ref().map(|_| vec![0; n]),
            nodes: 0,
            leaves: Vec::new(),
        };
        let mut idx = Vec::new();
        self.prefix_rec(&mut w, &mut idx, depth, &mut out, &mut nodes);
        (out, nodes)
    }

    fn prefix_rec(&self, w: &mut Walk, idx: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>, nodes: &mut u64) {
        let d = idx.len();
        if d == depth {
            out.push(idx.clone());
            return;
        }
        for i in 0..self.domains[d].len() {
            self.assign(w, d, i);
            if self.consistent(w, d) {
                *nodes += 1;
                idx.push(i);
                self.prefix_rec(w, idx, depth, out, nodes);
                idx.pop();
            }
        }
    }
}

fn split_depth(domains: &[Vec<Rat>]) -> usize {
    let mut prod = 1usize;
    for (d, dom) in domains.iter().enumerate() {
        if prod >= TARGET_CHUNKS {
            return d;
        }
        prod = prod.saturating_mul(dom.len());
    }
    domains.len()
}

enum Outcome {
    Survivor(Box<Survivor>),
    Characterization(Failure),
    Verification(Failure),
}

fn skew_ok(p: &DiagProfile) -> bool {
    let x = MPoly::var(syms::x());
    let neg = -&x;
    pairs().all(|(q, l)| (&p.at(q, l, &x) + &p.at(l, q, &neg)).is_zero())
}

fn verify(alg: &ConfAlgebra, mode: SearchMode, p: &DiagProfile) -> Result<(), String> {
    let r = p.lift();
    if mode != SearchMode::Strict && !all_zero(&invariance_defect(alg, &r)) {
        return Err("invariance defect is nonzero".into());
    }
    match mode {
        SearchMode::Weak => {
            if !all_zero(&weak_defect(alg, &r)) {
                return Err("weak defect is nonzero".into());
            }
        }
        SearchMode::Strict | SearchMode::StrictInvariant => {
            if !is_strict_solution(alg, &r).0 {
                return Err("reduced bracket is nonzero".into());
            }
            if mode == SearchMode::Strict && !skew_ok(p) {
                return Err("diagonal is not skew".into());
            }
        }
    }
    Ok(())
}

fn record(p: &DiagProfile) -> (CharacterizationRecord, Vec<String>) {
    let ch = characterize(p);
    let mut problems = Vec::new();
    for (flag, name) in [
        (ch.odd, "odd"),
        (ch.sym, "sym"),
        (ch.shared_f.is_some(), "shared_f"),
        (ch.rank_le_1, "rank_le_1"),
        (ch.constants_ok, "constants_ok"),
    ] {
        if !flag {
            problems.push(format!("{name} fails"));
        }
    }
    if let Some(rels) = scalar_relations(p) {
        for (name, r) in rels {
            if !r.is_zero() {
                problems.push(format!("relation {name} fails"));
            }
        }
    }
    let rec = CharacterizationRecord {
        odd: ch.odd,
        sym: ch.sym,
        shared_f: ch.shared_f.as_ref().map(|f| f.to_string()),
        matrix: ch
            .matrix
            .as_ref()
            .map(|m| m.entries().clone().map(|row| row.map(|e| e.to_string()))),
        rank_le_1: ch.rank_le_1,
        constants_ok: ch.constants_ok,
    };
    (rec, problems)
}

/// Names the family a characterized profile belongs to, when it is an exact
/// instance of one of the normal forms.
fn identify(p: &DiagProfile) -> Option<FamilySpec> {
    let ch = characterize(p);
    let m = ch.matrix?;
    let f = ch.shared_f?;
    let c = p.constants();
    let nonzero: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .collect();
    let mut spec = match nonzero.as_slice() {
        [] => FamilySpec::new(FamilyCase::Thm5Iii)
            .param("alpha", c.alpha.clone())
            .param("beta", c.beta.clone())
            .param("gamma", c.gamma.clone())
            .param("zeta", c.zeta.clone()),
        [(i, j)] if (*i, *j) == (E as usize, E as usize) && *m.get(*i, *j) == MPoly::one() => {
            FamilySpec::new(FamilyCase::Thm5I)
                .param("alpha", c.alpha.clone())
                .param("beta", c.beta.clone())
                .param("gamma", c.gamma.clone())
                .param("zeta", c.zeta.clone())
                .with_f(f)
        }
        [(i, j)] if (*i, *j) == (H as usize, H as usize) => FamilySpec::new(FamilyCase::Thm5Ii)
            .param("lhh", m.get(*i, *j).clone())
            .param("alpha", c.alpha.clone())
            .param("beta", c.beta.clone())
            .param("gamma", c.gamma.clone())
            .param("zeta", c.zeta.clone())
            .with_f(f),
        _ => return None,
    };
    spec.params.retain(|_, v| !v.is_zero());
    match build_profile(&spec) {
        Ok(q) if q == *p => Some(spec),
        _ => None,
    }
}

fn family_match(spec: &FamilySpec) -> FamilyMatch {
    FamilyMatch {
        case: spec.case,
        params: spec.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        f: spec.f.to_string(),
    }
}

fn constants_strings(p: &DiagProfile) -> BTreeMap<String, String> {
    let c = p.constants();
    [
        ("alpha", c.alpha),
        ("beta", c.beta),
        ("gamma", c.gamma),
        ("zeta", c.zeta),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v.to_string()))
    .collect()
}

fn examine(alg: &ConfAlgebra, mode: SearchMode, p: DiagProfile) -> Outcome {
    let profile = profile_strings(&p);
    if let Err(reason) = verify(alg, mode, &p) {
        return Outcome::Verification(Failure { profile, reason });
    }
    let (characterization, problems) = record(&p);
    if !problems.is_empty() {
        return Outcome::Characterization(Failure {
            profile,
            reason: problems.join("; "),
        });
    }
    Outcome::Survivor(Box::new(Survivor {
        constants: constants_strings(&p),
        family: identify(&p).as_ref().map(family_match),
        characterization,
        profile,
    }))
}

/// Runs the search described by `cfg`.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport, Error> {
    cfg.validate()?;
    let start = Instant::now();
    let candidates_scanned = cfg.candidate_count()?;
    let sp = space(cfg);
    let by_last = compile(cfg, &sp);
    let int_domains = sp.domains.iter().map(|d| as_i128(d)).collect::<Option<Vec<_>>>();
    let engine = Engine {
        domains: &sp.domains,
        by_last: &by_last,
        int_domains,
    };
    let n = sp.domains.len();
    let depth = split_depth(&sp.domains);
    let (prefixes, prefix_nodes) = engine.prefixes(depth);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start workers: {e}")))?;
    let alg = ConfAlgebra::cur_sl2();
    let (walks, outcomes): (Vec<u64>, Vec<Vec<Outcome>>) = pool.install(|| {
        prefixes
            .par_iter()
            .map(|pre| {
                let w = engine.walk(pre, n);
                let outs = w
                    .leaves
                    .into_iter()
                    .map(|vals| {
                        let subs: Vec<_> = sp
                            .vars
                            .iter()
                            .copied()
                            .zip(vals.into_iter().map(MPoly::constant))
                            .collect();
                        examine(&alg, cfg.mode, sp.profile.subst_many(&subs))
                    })
                    .collect();
                (w.nodes, outs)
            })
            .unzip()
    });

    let nodes_visited = prefix_nodes + walks.iter().sum::<u64>();
    let mut survivors = Vec::new();
    let mut characterization_failures = Vec::new();
    let mut verification_failures = Vec::new();
    for o in outcomes.into_iter().flatten() {
        match o {
            Outcome::Survivor(s) => survivors.push(*s),
            Outcome::Characterization(f) => characterization_failures.push(f),
            Outcome::Verification(f) => verification_failures.push(f),
        }
    }
    survivors.sort_by(|a, b| a.profile.cmp(&b.profile));
    characterization_failures.sort_by(|a, b| a.profile.cmp(&b.profile));
    verification_failures.sort_by(|a, b| a.profile.cmp(&b.profile));
    let config = cfg.echo();
    let content_hash = content_hash(
        &config,
        candidates_scanned,
        nodes_visited,
        &survivors,
        &characterization_failures,
        &verification_failures,
    );
    Ok(SearchReport {
        config,
        workers: cfg.workers,
        candidates_scanned,
        nodes_visited,
        survivors,
        characterization_failures,
        verification_failures,
        content_hash,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every candidate profile of the grid, unfiltered, in odometer order with
/// the last variable changing fastest.
pub fn enumerate_profiles(cfg: &SearchConfig) -> Result<impl Iterator<Item = DiagProfile>, Error> {
    cfg.validate()?;
    let sp = space(cfg);
    let sizes: Vec<usize> = sp.domains.iter().map(Vec::len).collect();
    let mut idx = vec![0usize; sizes.len()];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let subs: Vec<_> = sp
            .vars
            .iter()
            .zip(&idx)
            .enumerate()
            .map(|(d, (s, &i))| (*s, MPoly::constant(sp.domains[d][i].clone())))
            .collect();
        let out = sp.profile.subst_many(&subs);
        done = true;
        for d in (0..idx.len()).rev() {
            idx[d] += 1;
            if idx[d] < sizes[d] {
                done = false;
                break;
            }
            idx[d] = 0;
        }
        Some(out)
    }))
}

/// Survivors present in only one of two reports of the same search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDiff {
    pub added: Vec<ProfileStrings>,
    pub removed: Vec<ProfileStrings>,
}

impl ReportDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }
}

/// Compares the survivor sets of `old` and `new`; both must come from the
/// same configuration.
pub fn filter_report_diff(old: &SearchReport, new: &SearchReport) -> Result<ReportDiff, Error> {
    if old.config != new.config {
        return Err(Error::Config("reports come from different configurations".into()));
    }
    let a: std::collections::BTreeSet<&ProfileStrings> = old.survivors.iter().map(|s| &s.profile).collect();
    let b: std::collections::BTreeSet<&ProfileStrings> = new.survivors.iter().map(|s| &s.profile).collect();
    Ok(ReportDiff {
        added: b.difference(&a).map(|p| (*p).clone()).collect(),
        removed: a.difference(&b).map(|p| (*p).clone()).collect(),
    })
}

/// Formats a grid for display.
pub fn grid_string(grid: &[Rat]) -> String {
    grid.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}
