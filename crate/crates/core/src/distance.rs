//! Minimum distance of additive GF(9) codes.
//!
//! Three engines, each tagged in its [`DistanceResult`]:
//!
//! * exact: every nonzero GF(3) combination of the generators is visited in
//!   reflected ternary Gray order, so each step adds or subtracts one row;
//! * threshold: the same enumeration, abandoned as soon as a codeword of
//!   weight below the threshold appears;
//! * upper: random information sets aligned to GF(9) coordinates, with all
//!   codewords supported on at most `depth` information coordinates checked.
//!
//! A fourth, [`bz_hamming_floor`], gives a certified lower bound from
//! disjoint GF(3) information sets.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{f3_eliminate, AdditiveCode};
use crate::field::{F9Vector, F3};
use crate::packed::{Lane, PackedVec};

pub const DEFAULT_EXACT_CAP: usize = 20;
pub const DEFAULT_DEPTH: usize = 3;
const MAX_LANES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("exact enumeration refused: n = {n} exceeds cap {cap}; use threshold or upper mode")]
    CapExceeded { n: usize, cap: usize },
    #[error("threshold must be at least 1")]
    BadThreshold,
    #[error("code length {0} exceeds the supported maximum of {max}", max = MAX_LANES * 64)]
    TooLong(usize),
    #[error("code has no nonzero codeword")]
    EmptyCode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Threshold,
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certified {
    ExactValue,
    LowerBoundAtLeast,
    UpperBoundAtMost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub mode: Mode,
    pub value: usize,
    pub certified: Certified,
    /// Codewords evaluated.
    pub work: u64,
    pub elapsed: Duration,
    pub seed: Option<u64>,
    /// A codeword of weight `value`, when the engine produced one.
    pub witness: Option<F9Vector>,
}

#[derive(Serialize, Deserialize)]
struct DistanceJson {
    mode: Mode,
    value: usize,
    certified: Certified,
    work: u64,
    elapsed_ms: u64,
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u8>>,
}

impl DistanceResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DistanceJson {
            mode: self.mode,
            value: self.value,
            certified: self.certified,
            work: self.work,
            elapsed_ms: self.elapsed.as_millis() as u64,
            seed: self.seed,
            witness: self.witness.as_ref().map(|w| w.entries().iter().map(|x| x.token_value()).collect()),
        })
        .expect("distance result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let j: DistanceJson = serde_json::from_str(text)?;
        let witness = j.witness.map(|toks| {
            F9Vector::new(toks.into_iter().map(|t| crate::field::F9::from_token_value(t).unwrap_or_default()).collect())
        });
        Ok(DistanceResult {
            mode: j.mode,
            value: j.value,
            certified: j.certified,
            work: j.work,
            elapsed: Duration::from_millis(j.elapsed_ms),
            seed: j.seed,
            witness,
        })
    }
}

/// Iteration and wall-clock limits. Only iteration limits give reproducible runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    pub max_iterations: u64,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn iterations(max_iterations: u64) -> Self {
        Budget { max_iterations, max_seconds: None }
    }

    pub fn seconds(max_seconds: f64) -> Self {
        Budget { max_iterations: u64::MAX, max_seconds: Some(max_seconds) }
    }

    pub fn new(max_iterations: u64, max_seconds: f64) -> Self {
        Budget { max_iterations, max_seconds: Some(max_seconds) }
    }

    fn expired(&self, start: Instant) -> bool {
        self.max_seconds.is_some_and(|s| start.elapsed().as_secs_f64() >= s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    pub cap: usize,
    /// Number of Gray subtrees is `3^ceil(log3(workers))`.
    pub workers: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { cap: DEFAULT_EXACT_CAP, workers: 1 }
    }
}

/// Reflected ternary Gray walk over `rows`, starting from `base` (digits all 0).
struct GrayWalk<'a> {
    rows: &'a [Lane],
    threshold: usize,
    stop: &'a AtomicBool,
}

struct WalkOutcome {
    min: usize,
    witness: Lane,
    visited: u64,
    aborted: bool,
}

impl GrayWalk<'_> {
    fn run(&self, base: Lane) -> WalkOutcome {
        let free = self.rows.len();
        let mut out = WalkOutcome { min: usize::MAX, witness: Lane::default(), visited: 0, aborted: false };
        let mut word = base;
        let visit = |w: Lane, out: &mut WalkOutcome| {
            out.visited += 1;
            let wt = w.support().count_ones() as usize;
            if wt < out.min {
                out.min = wt;
                out.witness = w;
            }
            wt < self.threshold
        };
        if base.support() != 0 && visit(word, &mut out) {
            out.aborted = true;
            self.stop.store(true, Ordering::Relaxed);
            return out;
        }
        let mut digits = vec![0u8; free];
        let mut up = vec![true; free];
        let mut since_check = 0u32;
        loop {
            let mut i = 0;
            while i < free && (if up[i] { digits[i] == 2 } else { digits[i] == 0 }) {
                up[i] = !up[i];
                i += 1;
            }
            if i == free {
                return out;
            }
            if up[i] {
                digits[i] += 1;
                word = word + self.rows[i];
            } else {
                digits[i] -= 1;
                word = word - self.rows[i];
            }
            if visit(word, &mut out) {
                out.aborted = true;
                self.stop.store(true, Ordering::Relaxed);
                return out;
            }
            since_check += 1;
            if since_check == 1 << 14 {
                since_check = 0;
                if self.stop.load(Ordering::Relaxed) {
                    out.aborted = true;
                    return out;
                }
            }
        }
    }
}

/// GF(3) basis of the code, so that each nonzero combination is a distinct nonzero codeword.
fn single_lane_basis(code: &AdditiveCode) -> Result<Vec<Lane>, DistanceError> {
    if code.n() > 64 {
        return Err(DistanceError::TooLong(code.n()));
    }
    let mut rows = code.rows().to_vec();
    let columns: Vec<usize> = (0..2 * code.n()).collect();
    let k = f3_eliminate(&mut rows, &columns).len();
    Ok(rows[..k].iter().map(|r| r.lanes()[0]).collect())
}

fn enumerate(
    code: &AdditiveCode,
    threshold: usize,
    opts: &ExactOptions,
    mode: Mode,
) -> Result<DistanceResult, DistanceError> {
    let start = Instant::now();
    let n = code.n();
    if n > opts.cap {
        return Err(DistanceError::CapExceeded { n, cap: opts.cap });
    }
    if code.k3() == 0 {
        return Err(DistanceError::EmptyCode);
    }
    let rows = single_lane_basis(code)?;
    let k = rows.len();
    let mut top = 0;
    while 3usize.pow(top as u32) < opts.workers.max(1) && top < k {
        top += 1;
    }
    let free = k - top;
    let stop = AtomicBool::new(false);
    let walk = GrayWalk { rows: &rows[..free], threshold, stop: &stop };
    let outcomes: Vec<WalkOutcome> = (0..3usize.pow(top as u32))
        .into_par_iter()
        .map(|prefix| {
            let mut base = Lane::default();
            let mut p = prefix;
            for row in &rows[free..] {
                base = base + row.scale(F3::new((p % 3) as u8));
                p /= 3;
            }
            walk.run(base)
        })
        .collect();
    let visited = outcomes.iter().map(|o| o.visited).sum();
    let aborted = outcomes.iter().any(|o| o.aborted);
    let best = outcomes.iter().min_by_key(|o| o.min).expect("at least one subtree");
    let mut witness = PackedVec::zeros(n);
    witness.lanes_mut()[0] = best.witness;
    let (value, certified) =
        if aborted { (best.min, Certified::UpperBoundAtMost) } else { (best.min, Certified::ExactValue) };
    Ok(DistanceResult {
        mode,
        value,
        certified,
        work: visited,
        elapsed: start.elapsed(),
        seed: None,
        witness: Some(witness.to_f9()),
    })
}

/// Exact minimum weight by full Gray-order enumeration of the `3^k3 - 1` nonzero codewords.
pub fn exact_min_weight(code: &AdditiveCode, opts: &ExactOptions) -> Result<DistanceResult, DistanceError> {
    enumerate(code, 0, opts, Mode::Exact)
}

/// Gray enumeration that stops at the first codeword of weight `< threshold`
/// (certifying `d <= weight`); a completed run is exact.
pub fn min_weight_with_abort(
    code: &AdditiveCode,
    threshold: usize,
    opts: &ExactOptions,
) -> Result<DistanceResult, DistanceError> {
    if threshold == 0 {
        return Err(DistanceError::BadThreshold);
    }
    enumerate(code, threshold, opts, Mode::Threshold)
}

/// Generator rows expanded over GF(3): coordinate `j` becomes columns `2j` (the `1`
/// coefficient) and `2j + 1` (the `w` coefficient).
pub fn f3_image(code: &AdditiveCode) -> Vec<Vec<F3>> {
    code.rows().iter().map(|r| (0..2 * code.n()).map(|c| r.column(c)).collect()).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct UpperBoundOptions {
    pub workers: usize,
    pub depth: usize,
    /// Stop once a codeword of at most this weight is found.
    pub stop_at: Option<usize>,
}

impl Default for UpperBoundOptions {
    fn default() -> Self {
        UpperBoundOptions { workers: 1, depth: DEFAULT_DEPTH, stop_at: None }
    }
}

type Word<const L: usize> = [Lane; L];

#[inline(always)]
fn w_add<const L: usize>(a: &Word<L>, b: &Word<L>) -> Word<L> {
    std::array::from_fn(|i| a[i] + b[i])
}

#[inline(always)]
fn w_weight<const L: usize>(a: &Word<L>) -> usize {
    a.iter().map(|l| l.support().count_ones() as usize).sum()
}

/// One information coordinate: all nonzero codewords supported on its pivots,
/// with one representative of each `{v, -v}` pair first.
struct InfoCoord<const L: usize> {
    reps: Vec<Word<L>>,
    all: Vec<Word<L>>,
}

struct Worker<const L: usize> {
    rng: ChaCha8Rng,
    best: usize,
    witness: Option<Word<L>>,
    work: u64,
}

struct Isd<'a, const L: usize> {
    rows: &'a [Word<L>],
    n: usize,
    depth: usize,
}

impl<const L: usize> Isd<'_, L> {
    fn to_packed(&self, w: &Word<L>) -> PackedVec {
        let mut p = PackedVec::zeros(self.n);
        p.lanes_mut().copy_from_slice(&w[..]);
        p
    }

    fn from_packed(p: &PackedVec) -> Word<L> {
        std::array::from_fn(|i| p.lanes()[i])
    }

    /// Random coordinate order; eliminate both GF(3) columns of each coordinate in turn.
    fn information_set(&self, rng: &mut ChaCha8Rng) -> Vec<InfoCoord<L>> {
        let mut coords: Vec<usize> = (0..self.n).collect();
        coords.shuffle(rng);
        let mut columns = Vec::with_capacity(2 * self.n);
        for &c in &coords {
            let first = rng.gen_range(0..2);
            columns.push(2 * c + first);
            columns.push(2 * c + 1 - first);
        }
        let mut rows: Vec<PackedVec> = self.rows.iter().map(|w| self.to_packed(w)).collect();
        let pivots = f3_eliminate(&mut rows, &columns);
        let mut info = Vec::new();
        let mut r = 0;
        while r < pivots.len() {
            let coord = pivots[r] / 2;
            let pair = r + 1 < pivots.len() && pivots[r + 1] / 2 == coord;
            if pair {
                let a = Self::from_packed(&rows[r]);
                let b = Self::from_packed(&rows[r + 1]);
                let neg = |w: &Word<L>| -> Word<L> { std::array::from_fn(|i| -w[i]) };
                let ab = w_add(&a, &b);
                let a_minus_b = w_add(&a, &neg(&b));
                let reps = vec![a, b, ab, a_minus_b];
                let all = reps.iter().copied().chain(reps.iter().map(neg)).collect();
                info.push(InfoCoord { reps, all });
                r += 2;
            } else {
                let a = Self::from_packed(&rows[r]);
                let neg_a = std::array::from_fn(|i| -a[i]);
                info.push(InfoCoord { reps: vec![a], all: vec![a, neg_a] });
                r += 1;
            }
        }
        info
    }

    fn descend(&self, info: &[InfoCoord<L>], start: usize, level: usize, partial: &Word<L>, worker: &mut Worker<L>) {
        for (c, coord) in info.iter().enumerate().skip(start) {
            let choices = if level == 0 { &coord.reps } else { &coord.all };
            for v in choices {
                let word = w_add(partial, v);
                worker.work += 1;
                let wt = w_weight(&word);
                if wt < worker.best {
                    worker.best = wt;
                    worker.witness = Some(word);
                }
                if level + 1 < self.depth {
                    self.descend(info, c + 1, level + 1, &word, worker);
                }
            }
        }
    }

    fn iterate(&self, worker: &mut Worker<L>) {
        let mut rng = worker.rng.clone();
        let info = self.information_set(&mut rng);
        worker.rng = rng;
        if self.depth > 0 {
            self.descend(&info, 0, 0, &[Lane::default(); L], worker);
        }
    }
}

fn upper_bound_lanes<const L: usize>(
    code: &AdditiveCode,
    seed: u64,
    budget: &Budget,
    opts: &UpperBoundOptions,
    start: Instant,
) -> DistanceResult {
    let n = code.n();
    let rows: Vec<Word<L>> = code.rows().iter().map(Isd::<L>::from_packed).collect();
    let isd = Isd { rows: &rows, n, depth: opts.depth };
    let workers = opts.workers.max(1);
    let mut states: Vec<Worker<L>> = (0..workers)
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w as u64);
            Worker { rng, best: usize::MAX, witness: None, work: 0 }
        })
        .collect();
    let mut done: u64 = 0;
    while done < budget.max_iterations && !budget.expired(start) {
        let remaining = budget.max_iterations - done;
        let active = remaining.min(workers as u64) as usize;
        states[..active].par_iter_mut().for_each(|w| isd.iterate(w));
        done += active as u64;
        let best = states.iter().map(|w| w.best).min().unwrap_or(usize::MAX);
        if opts.stop_at.is_some_and(|t| best <= t) {
            break;
        }
    }
    let work = states.iter().map(|w| w.work).sum();
    let best = states.iter().enumerate().min_by_key(|(i, w)| (w.best, *i)).map(|(_, w)| w);
    let (value, witness) = match best.and_then(|w| w.witness.map(|x| (w.best, x))) {
        Some((v, x)) => (v, Some(isd.to_packed(&x).to_f9())),
        None => (n, None),
    };
    DistanceResult {
        mode: Mode::Upper,
        value,
        certified: Certified::UpperBoundAtMost,
        work,
        elapsed: start.elapsed(),
        seed: Some(seed),
        witness,
    }
}

/// Randomized information-set search for low-weight codewords; the result is
/// a certified upper bound on `d`. Deterministic for fixed `(seed, workers)`
/// under an iteration budget.
pub fn upper_bound_search(
    code: &AdditiveCode,
    seed: u64,
    budget: &Budget,
    opts: &UpperBoundOptions,
) -> Result<DistanceResult, DistanceError> {
    let start = Instant::now();
    Ok(match code.n().div_ceil(64).max(1) {
        1 => upper_bound_lanes::<1>(code, seed, budget, opts, start),
        2 => upper_bound_lanes::<2>(code, seed, budget, opts, start),
        3 => upper_bound_lanes::<3>(code, seed, budget, opts, start),
        4 => upper_bound_lanes::<4>(code, seed, budget, opts, start),
        _ => return Err(DistanceError::TooLong(code.n())),
    })
}

/// Lower bound from `m` disjoint GF(3) information sets: after all codewords
/// with at most `t` nonzero information symbols in every set have been seen,
/// an unseen codeword has GF(3) Hamming weight at least `m(t+1)`, hence trace
/// weight at least `ceil(m(t+1)/2)`. `max_iterations` bounds the number of
/// rounds `t`. Returns an exact value when the bound meets the best codeword seen.
pub fn bz_hamming_floor(code: &AdditiveCode, budget: &Budget) -> Result<DistanceResult, DistanceError> {
    let start = Instant::now();
    let n = code.n();
    let k = code.k3();
    if k == 0 {
        return Err(DistanceError::EmptyCode);
    }
    let mut remaining: Vec<usize> = (0..2 * n).collect();
    let mut systems: Vec<Vec<PackedVec>> = Vec::new();
    loop {
        let mut rows = code.rows().to_vec();
        let pivots = f3_eliminate(&mut rows, &remaining);
        if pivots.len() < k {
            break;
        }
        remaining.retain(|c| !pivots.contains(c));
        rows.truncate(k);
        systems.push(rows);
    }
    let m = systems.len();
    let mut best = usize::MAX;
    let mut witness = None;
    let mut work = 0u64;
    let mut rounds = 0usize;
    let mut floor = m.div_ceil(2).max(1);
    while (rounds as u64) < budget.max_iterations && !budget.expired(start) && rounds < k && floor < best {
        let t = rounds + 1;
        for sys in &systems {
            for_each_combination(sys, t, &mut |w| {
                work += 1;
                let wt = w.weight();
                if wt < best {
                    best = wt;
                    witness = Some(w.to_f9());
                }
            });
        }
        rounds = t;
        floor = (m * (t + 1)).div_ceil(2);
    }
    let exhaustive = rounds >= k;
    let (value, certified) = if best <= floor || (exhaustive && best != usize::MAX) {
        (best, Certified::ExactValue)
    } else {
        (floor.min(best), Certified::LowerBoundAtLeast)
    };
    Ok(DistanceResult {
        mode: Mode::Lower,
        value,
        certified,
        work,
        elapsed: start.elapsed(),
        seed: None,
        witness: if certified == Certified::ExactValue { witness } else { None },
    })
}

/// Calls `f` on every combination of exactly `t` rows with nonzero GF(3) coefficients.
fn for_each_combination(rows: &[PackedVec], t: usize, f: &mut impl FnMut(&PackedVec)) {
    fn go(rows: &[PackedVec], start: usize, left: usize, acc: &PackedVec, f: &mut impl FnMut(&PackedVec)) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..=rows.len() - left {
            for a in [F3::ONE, F3::TWO] {
                let mut next = acc.clone();
                next.add_scaled(&rows[i], a);
                go(rows, i + 1, left - 1, &next, f);
            }
        }
    }
    if t <= rows.len() {
        go(rows, 0, t, &PackedVec::zeros(rows.first().map_or(0, PackedVec::len)), f);
    }
}

/// Shared best distance for search workers: monotone non-increasing, read relaxed.
#[derive(Debug)]
pub struct SharedBest(AtomicUsize);

impl SharedBest {
    pub fn new(v: usize) -> Self {
        SharedBest(AtomicUsize::new(v))
    }

    pub fn get(&self) -> usize {
        self.0.load(Ordering::Relaxed)
    }

    pub fn raise(&self, v: usize) {
        self.0.fetch_max(v, Ordering::Relaxed);
    }

    pub fn lower(&self, v: usize) {
        self.0.fetch_min(v, Ordering::Relaxed);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k2() -> AdditiveCode {
        AdditiveCode::from_graph(&Graph::from_adjacency(&[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn identity(n: usize) -> AdditiveCode {
        AdditiveCode::from_graph(&Graph::from_adjacency(&vec![vec![0; n]; n]).unwrap())
    }

    #[test]
    fn exact_small() {
        let r = exact_min_weight(&k2(), &ExactOptions::default()).unwrap();
        assert_eq!((r.value, r.certified, r.work), (2, Certified::ExactValue, 8));
        let r = exact_min_weight(&identity(5), &ExactOptions::default()).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.work, 242);
    }

    #[test]
    fn cap_refusal() {
        let err = exact_min_weight(&identity(21), &ExactOptions::default()).unwrap_err();
        assert_eq!(err, DistanceError::CapExceeded { n: 21, cap: 20 });
    }

    #[test]
    fn threshold_modes() {
        let opts = ExactOptions::default();
        let r = min_weight_with_abort(&k2(), 3, &opts).unwrap();
        assert_eq!((r.value, r.certified), (2, Certified::UpperBoundAtMost));
        let r = min_weight_with_abort(&k2(), 2, &opts).unwrap();
        assert_eq!((r.value, r.certified), (2, Certified::ExactValue));
        assert_eq!(min_weight_with_abort(&k2(), 0, &opts), Err(DistanceError::BadThreshold));
    }

    #[test]
    fn parallel_subtrees_cover_everything() {
        for workers in [1, 2, 3, 7, 9, 30] {
            let r = exact_min_weight(&identity(6), &ExactOptions { cap: 20, workers }).unwrap();
            assert_eq!(r.work, 728, "workers {workers}");
            assert_eq!(r.value, 1);
        }
    }

    #[test]
    fn image_expansion() {
        assert_eq!(f3_image(&identity(1)), vec![vec![F3::ZERO, F3::ONE]]);
        let img = f3_image(&k2());
        let as_u8: Vec<Vec<u8>> = img.iter().map(|r| r.iter().map(|x| x.value()).collect()).collect();
        assert_eq!(as_u8, vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
    }

    #[test]
    fn upper_bound_trivial_and_small() {
        let r = upper_bound_search(&k2(), 1, &Budget::iterations(0), &UpperBoundOptions::default()).unwrap();
        assert_eq!((r.value, r.certified), (2, Certified::UpperBoundAtMost));
        assert!(r.witness.is_none());
        let r = upper_bound_search(&identity(4), 1, &Budget::iterations(0), &UpperBoundOptions::default()).unwrap();
        assert_eq!(r.value, 4);
        let r = upper_bound_search(&k2(), 9, &Budget::iterations(3), &UpperBoundOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.unwrap().weight(), 2);
    }

    #[test]
    fn floor_tier() {
        let r = bz_hamming_floor(&k2(), &Budget::iterations(0)).unwrap();
        assert_eq!((r.value, r.certified), (1, Certified::LowerBoundAtLeast));
        let r = bz_hamming_floor(&k2(), &Budget::iterations(1)).unwrap();
        assert!(r.value >= 1);
        let r = bz_hamming_floor(&k2(), &Budget::iterations(10)).unwrap();
        assert_eq!((r.value, r.certified), (2, Certified::ExactValue));
    }

    #[test]
    fn json_shape() {
        let r = exact_min_weight(&k2(), &ExactOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["mode"], "exact");
        assert_eq!(v["certified"], "exact-value");
        assert_eq!(v["work"], 8);
        assert!(v["seed"].is_null());
        let back = DistanceResult::from_json(&r.to_json()).unwrap();
        assert_eq!(back.value, 2);
        assert_eq!(back.witness, r.witness);
    }
}
