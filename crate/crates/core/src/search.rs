//! Search over connection sets.
//!
//! A valid connection set is a union of negation orbits `{s, -s}`, so the
//! space for a shape with `p` orbits has `2^p` members. Exhaustive search
//! walks all of them with threshold pruning; random search samples orbit
//! subsets and screens each candidate against a target distance.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::AdditiveCode;
use crate::distance::{
    min_weight_with_abort, upper_bound_search, Budget, Certified, DistanceError, ExactOptions, UpperBoundOptions,
    DEFAULT_DEPTH, DEFAULT_EXACT_CAP,
};
use crate::graph::{build_graph, GraphError, GroupElement, GroupShape, MdcSpec};

pub const DEFAULT_MAX_ORBITS: usize = 24;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search space 2^{p} exceeds the limit 2^{limit}")]
    TooManyOrbits { p: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error("store {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("store line {line}: {msg}")]
    BadRecord { line: usize, msg: String },
}

/// Negation orbits of the nonzero group elements, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitBasis {
    pub shape: GroupShape,
    pub orbits: Vec<Vec<GroupElement>>,
}

impl OrbitBasis {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Size of the search space, `2^p`.
    pub fn space_size(&self) -> u128 {
        1u128 << self.orbits.len()
    }

    /// Connection set formed by the orbits selected in `mask`.
    pub fn spec_for_mask(&self, mask: u64, bordered: bool) -> MdcSpec {
        let elems: Vec<GroupElement> = self
            .orbits
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, o)| o.iter().cloned())
            .collect();
        MdcSpec::from_elements(self.shape.clone(), &elems, bordered)
    }
}

pub fn inverse_pair_orbits(shape: &GroupShape) -> OrbitBasis {
    let n = shape.order();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut orbits = Vec::new();
    for (i, a) in shape.elements().enumerate() {
        if seen[i] {
            continue;
        }
        let neg = shape.neg(&a);
        let j = shape.index_unchecked(&neg);
        seen[i] = true;
        seen[j] = true;
        orbits.push(if i == j { vec![a] } else { vec![a, neg] });
    }
    OrbitBasis { shape: shape.clone(), orbits }
}

fn units(m: usize) -> Vec<usize> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

/// Lexicographically least image of `S` under componentwise unit
/// multiplication. Such maps are group automorphisms, so the resulting graph
/// is isomorphic and the code has the same distance.
pub fn multiplier_canonical_form(spec: &MdcSpec) -> MdcSpec {
    let shape = spec.shape();
    let unit_sets: Vec<Vec<usize>> = shape.moduli().iter().map(|&m| units(m)).collect();
    let conns = spec.connections();
    let mut best: Option<Vec<GroupElement>> = None;
    let mut choice = vec![0usize; unit_sets.len()];
    loop {
        let mut image: Vec<GroupElement> = conns
            .iter()
            .map(|s| {
                s.iter()
                    .zip(shape.moduli())
                    .zip(&choice)
                    .zip(&unit_sets)
                    .map(|(((&x, &m), &ci), us)| (x * us[ci]) % m)
                    .collect()
            })
            .collect();
        image.sort();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < unit_sets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    MdcSpec::from_elements(shape.clone(), &best.unwrap_or_default(), spec.bordered())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DMode {
    Exact,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub spec: MdcSpec,
    pub n: usize,
    pub d: usize,
    pub d_mode: DMode,
    pub seed: Option<u64>,
    pub found_at: String,
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    #[serde(rename = "N")]
    shape: Vec<usize>,
    #[serde(rename = "S")]
    s: Vec<Vec<i64>>,
    bordered: bool,
    n: usize,
    d: usize,
    d_mode: DMode,
    seed: Option<u64>,
    found_at: String,
}

impl SearchRecord {
    pub fn to_json(&self) -> String {
        let (shape, s, bordered) = self.spec.json_parts();
        serde_json::to_string(&RecordJson {
            shape,
            s,
            bordered,
            n: self.n,
            d: self.d,
            d_mode: self.d_mode,
            seed: self.seed,
            found_at: self.found_at.clone(),
        })
        .expect("record serializes")
    }

    pub fn from_json(line: &str) -> Result<Self, String> {
        let r: RecordJson = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let shape = GroupShape::new(r.shape).map_err(|e| e.to_string())?;
        Ok(SearchRecord {
            spec: MdcSpec::new(shape, r.s, r.bordered),
            n: r.n,
            d: r.d,
            d_mode: r.d_mode,
            seed: r.seed,
            found_at: r.found_at,
        })
    }
}

/// Source of `found_at` timestamps.
#[derive(Clone, Debug, Default)]
pub enum Clock {
    #[default]
    System,
    Fixed(String),
}

impl Clock {
    pub fn now(&self) -> String {
        match self {
            Clock::System => chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            Clock::Fixed(s) => s.clone(),
        }
    }
}

/// Append-only JSONL record log; every append is flushed.
#[derive(Debug)]
pub struct ResultStore {
    file: Option<(PathBuf, File)>,
    records: Vec<SearchRecord>,
}

impl ResultStore {
    pub fn in_memory() -> Self {
        ResultStore { file: None, records: Vec::new() }
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self, SearchError> {
        let path = path.as_ref().to_path_buf();
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|source| SearchError::Io { path: path.clone(), source })?;
        Ok(ResultStore { file: Some((path, file)), records: Vec::new() })
    }

    pub fn append(&mut self, record: SearchRecord) -> Result<(), SearchError> {
        if let Some((path, file)) = &mut self.file {
            writeln!(file, "{}", record.to_json())
                .and_then(|_| file.flush())
                .map_err(|source| SearchError::Io { path: path.clone(), source })?;
        }
        self.records.push(record);
        Ok(())
    }

    /// Records appended through this handle.
    pub fn records(&self) -> &[SearchRecord] {
        &self.records
    }

    pub fn to_jsonl(&self) -> String {
        self.records.iter().map(|r| r.to_json() + "\n").collect()
    }

    pub fn replay(path: impl AsRef<Path>) -> Result<Vec<SearchRecord>, SearchError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| SearchError::Io { path: path.to_path_buf(), source })?;
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|source| SearchError::Io { path: path.to_path_buf(), source })?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(SearchRecord::from_json(&line).map_err(|msg| SearchError::BadRecord { line: i + 1, msg })?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    pub max_orbits: usize,
    /// Only evaluate subsets that are their own multiplier canonical form.
    pub dedup: bool,
    /// Record specs that tie the best distance, not only strict improvements.
    pub keep_ties: bool,
    pub workers: usize,
    pub exact_cap: usize,
    pub clock: Clock,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            max_orbits: DEFAULT_MAX_ORBITS,
            dedup: false,
            keep_ties: false,
            workers: rayon::current_num_threads(),
            exact_cap: DEFAULT_EXACT_CAP,
            clock: Clock::System,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOutcome {
    pub best_d: usize,
    /// Records with `d == best_d`, in discovery order.
    pub best: Vec<SearchRecord>,
    /// Number of connection sets whose distance was computed.
    pub evaluated: u64,
}

/// Runs every orbit subset through threshold-pruned exact enumeration.
/// Records are appended only for strict improvements (or ties, with
/// `keep_ties`), so the store holds the running record history.
pub fn exhaustive_search(
    shape: &GroupShape,
    bordered: bool,
    store: &mut ResultStore,
    opts: &ExhaustiveOptions,
) -> Result<ExhaustiveOutcome, SearchError> {
    let basis = inverse_pair_orbits(shape);
    let p = basis.len();
    if p > opts.max_orbits || p >= 64 {
        return Err(SearchError::TooManyOrbits { p, limit: opts.max_orbits.min(63) });
    }
    let n = shape.order() + usize::from(bordered);
    if n > opts.exact_cap {
        return Err(DistanceError::CapExceeded { n, cap: opts.exact_cap }.into());
    }
    let exact = ExactOptions { cap: opts.exact_cap, workers: 1 };
    let total = 1u64 << p;
    let chunk = (opts.workers.max(1) * 4) as u64;
    let mut best_d = 0usize;
    let mut best = Vec::new();
    let mut evaluated = 0u64;
    let mut start = 0u64;
    while start < total {
        let end = (start + chunk).min(total);
        let floor = best_d;
        let threshold = if opts.keep_ties { floor.max(1) } else { floor + 1 };
        let results: Vec<Option<(MdcSpec, usize)>> = (start..end)
            .into_par_iter()
            .map(|mask| -> Result<Option<(MdcSpec, usize)>, SearchError> {
                let spec = basis.spec_for_mask(mask, bordered);
                if opts.dedup && multiplier_canonical_form(&spec) != spec {
                    return Ok(None);
                }
                let code = AdditiveCode::from_graph(&build_graph(&spec)?);
                let r = min_weight_with_abort(&code, threshold, &exact)?;
                Ok(Some((spec, if r.certified == Certified::ExactValue { r.value } else { 0 })))
            })
            .collect::<Result<_, _>>()?;
        for (spec, d) in results.into_iter().flatten() {
            evaluated += 1;
            let improves = d > best_d;
            let ties = opts.keep_ties && d == best_d && d > 0;
            if improves {
                best_d = d;
                best.clear();
            }
            if improves || ties {
                let record = SearchRecord { spec, n, d, d_mode: DMode::Exact, seed: None, found_at: opts.clock.now() };
                best.push(record.clone());
                store.append(record)?;
            }
        }
        start = end;
    }
    Ok(ExhaustiveOutcome { best_d, best, evaluated })
}

#[derive(Clone, Debug)]
pub struct RandomOptions {
    pub workers: usize,
    /// Inclusive valency range accepted when sampling.
    pub valency: Option<(usize, usize)>,
    /// Information sets sampled per candidate when screening by upper bound.
    pub screen_iterations: u64,
    pub depth: usize,
    /// Codes up to this length are screened by exact threshold enumeration.
    pub exact_cap: usize,
    /// Candidates evaluated before any sampling.
    pub initial: Vec<MdcSpec>,
    pub clock: Clock,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions {
            workers: rayon::current_num_threads(),
            valency: None,
            screen_iterations: 200,
            depth: DEFAULT_DEPTH,
            exact_cap: 12,
            initial: Vec::new(),
            clock: Clock::System,
        }
    }
}

const MAX_RESAMPLES: usize = 10_000;

fn sample_spec(
    basis: &OrbitBasis,
    bordered: bool,
    valency: Option<(usize, usize)>,
    rng: &mut ChaCha8Rng,
) -> Option<MdcSpec> {
    for _ in 0..MAX_RESAMPLES {
        let chosen: Vec<&Vec<GroupElement>> = basis.orbits.iter().filter(|_| rng.gen_bool(0.5)).collect();
        let k: usize = chosen.iter().map(|o| o.len()).sum();
        if valency.is_none_or(|(lo, hi)| (lo..=hi).contains(&k)) {
            let elems: Vec<GroupElement> = chosen.into_iter().flatten().cloned().collect();
            return Some(MdcSpec::from_elements(basis.shape.clone(), &elems, bordered));
        }
    }
    None
}

/// Candidate `i` draws from the ChaCha stream `i` of `seed`, so the record
/// sequence is fixed by `(seed, budget)`; `workers` only sets how many
/// candidates are screened concurrently.
pub fn random_search(
    shape: &GroupShape,
    bordered: bool,
    target_d: usize,
    seed: u64,
    budget: &Budget,
    store: &mut ResultStore,
    opts: &RandomOptions,
) -> Result<Vec<SearchRecord>, SearchError> {
    let start = Instant::now();
    let basis = inverse_pair_orbits(shape);
    let n = shape.order() + usize::from(bordered);
    let workers = opts.workers.max(1) as u64;
    let mut out = Vec::new();
    let mut next = 0u64;
    while next < budget.max_iterations && !budget.max_seconds.is_some_and(|s| start.elapsed().as_secs_f64() >= s) {
        let end = (next + workers).min(budget.max_iterations);
        let screened: Vec<Option<(MdcSpec, usize, DMode)>> = (next..end)
            .into_par_iter()
            .map(|i| -> Result<_, SearchError> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let spec = match opts.initial.get(i as usize) {
                    Some(s) => s.clone().with_bordered(bordered),
                    None => match sample_spec(&basis, bordered, opts.valency, &mut rng) {
                        Some(s) => s,
                        None => return Ok(None),
                    },
                };
                let code = AdditiveCode::from_graph(&build_graph(&spec)?);
                if target_d == 0 {
                    return Ok(Some((spec, 0, DMode::Upper)));
                }
                if n <= opts.exact_cap {
                    let r = min_weight_with_abort(&code, target_d, &ExactOptions { cap: opts.exact_cap, workers: 1 })?;
                    return Ok((r.certified == Certified::ExactValue).then_some((spec, r.value, DMode::Exact)));
                }
                let screen = UpperBoundOptions { workers: 1, depth: opts.depth, stop_at: Some(target_d - 1) };
                let r = upper_bound_search(&code, rng.gen(), &Budget::iterations(opts.screen_iterations), &screen)?;
                Ok((r.value >= target_d).then_some((spec, r.value, DMode::Upper)))
            })
            .collect::<Result<_, _>>()?;
        for (spec, d, d_mode) in screened.into_iter().flatten() {
            let record = SearchRecord { spec, n, d, d_mode, seed: Some(seed), found_at: opts.clock.now() };
            store.append(record.clone())?;
            out.push(record);
        }
        next = end;
    }
    Ok(out)
}
