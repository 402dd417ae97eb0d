//! Exhaustive enumeration: permutations of `[n]`, valid LRmax
//! specifications, and class counts over `S_n`.
//!
//! Class counting is partitioned by the first entry of the permutation. Each
//! partition is counted by a pure function and the partial counts are summed,
//! so the result does not depend on how partitions are scheduled.

use std::io;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{self, P3142_VINCULAR};
use crate::perm::{LrMaxSpec, Permutation, Value};

/// Enumeration limit used unless the caller raises it.
pub const DEFAULT_MAX_N: usize = 12;
/// No limit may exceed this.
pub const HARD_MAX_N: usize = 20;
/// Largest `n` for which class counting is considered quick.
pub const COUNT_CEILING: usize = 10;

/// Wall-clock timer; reads zero where the platform has no clock
/// (`wasm32-unknown-unknown` panics on `Instant::now`).
struct Stopwatch(#[cfg_attr(target_arch = "wasm32", allow(dead_code))] Option<Instant>);

impl Stopwatch {
    fn start() -> Self {
        #[cfg(target_arch = "wasm32")]
        return Stopwatch(None);
        #[cfg(not(target_arch = "wasm32"))]
        Stopwatch(Some(Instant::now()))
    }

    fn elapsed_ms(&self) -> u64 {
        self.0.map_or(0, |t| t.elapsed().as_millis() as u64)
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_MAX_N);
    if n > limit {
        Err(Error::SizeGuard { n, limit })
    } else {
        Ok(())
    }
}

/// Rearranges `values` into the next permutation in lexicographic order.
/// Returns false (leaving `values` untouched) if it is already the last.
fn next_permutation(values: &mut [Value]) -> bool {
    let Some(i) = values.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = values.iter().rposition(|&x| x > values[i]).unwrap();
    values.swap(i, j);
    values[i + 1..].reverse();
    true
}

/// Streams `S_n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<Value>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if next_permutation(&mut following) {
            self.next = Some(following);
        }
        Some(Permutation::from_unchecked(current))
    }
}

/// All of `S_n` in lexicographic order, `n ≤ DEFAULT_MAX_N`.
pub fn permutations(n: usize) -> Result<Permutations> {
    permutations_with_limit(n, DEFAULT_MAX_N)
}

pub fn permutations_with_limit(n: usize, limit: usize) -> Result<Permutations> {
    guard(n, limit)?;
    Ok(Permutations {
        next: Some((1..=n as Value).collect()),
    })
}

/// Visits, in lexicographic order, every permutation of `[n]` whose first
/// entry is `first`. For `n = 0` pass `first = 0` to visit the empty one.
pub fn for_each_with_first<F: FnMut(&Permutation)>(n: usize, first: Value, mut visit: F) {
    if n == 0 {
        visit(&Permutation::empty());
        return;
    }
    assert!((1..=n as Value).contains(&first), "first entry {first} outside 1..={n}");
    let mut values = Vec::with_capacity(n);
    values.push(first);
    values.extend((1..=n as Value).filter(|&v| v != first));
    let mut perm = Permutation::from_unchecked(values);
    loop {
        visit(&perm);
        if !next_permutation(&mut perm.values_mut()[1..]) {
            break;
        }
    }
}

/// First entries partitioning `S_n`.
pub fn partitions(n: usize) -> Vec<Value> {
    if n == 0 {
        vec![0]
    } else {
        (1..=n as Value).collect()
    }
}

/// One row of the class-count table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    #[serde(rename = "satisfying")]
    pub satisfying_count: u64,
    #[serde(rename = "avoiding")]
    pub avoiding_count: u64,
    #[serde(rename = "specs")]
    pub specs_count: u64,
    pub catalan: u64,
    pub elapsed_ms: u64,
}

impl CountReport {
    /// Equality of everything except timing.
    pub fn same_counts(&self, other: &CountReport) -> bool {
        (
            self.n,
            self.satisfying_count,
            self.avoiding_count,
            self.specs_count,
            self.catalan,
        ) == (
            other.n,
            other.satisfying_count,
            other.avoiding_count,
            other.specs_count,
            other.catalan,
        )
    }
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Use the recursive checkers instead of the occurrence search.
    pub use_fast: bool,
    /// Worker threads; 1 runs every partition on the calling thread.
    pub jobs: usize,
    pub max_n: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            use_fast: true,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// `(satisfying, avoiding)` counts over the permutations starting with `first`.
pub fn count_partition(n: usize, first: Value, use_fast: bool) -> (u64, u64) {
    let mut counts = (0, 0);
    for_each_with_first(n, first, |p| {
        let (sat, avoid) = if use_fast {
            (pattern::is_satisfying_fast(p), pattern::avoids_3142v_fast(p))
        } else {
            (pattern::is_satisfying_naive(p), pattern::avoids(p, &P3142_VINCULAR))
        };
        counts.0 += u64::from(sat);
        counts.1 += u64::from(avoid);
    });
    counts
}

fn sum_counts(parts: impl IntoIterator<Item = (u64, u64)>) -> (u64, u64) {
    parts.into_iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[cfg(feature = "parallel")]
fn count_all(n: usize, opts: &CountOptions) -> (u64, u64) {
    use rayon::prelude::*;

    if opts.jobs <= 1 {
        return sum_counts(partitions(n).into_iter().map(|f| count_partition(n, f, opts.use_fast)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("failed to start worker threads");
    pool.install(|| {
        partitions(n)
            .into_par_iter()
            .map(|f| count_partition(n, f, opts.use_fast))
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    })
}

#[cfg(not(feature = "parallel"))]
fn count_all(n: usize, opts: &CountOptions) -> (u64, u64) {
    sum_counts(partitions(n).into_iter().map(|f| count_partition(n, f, opts.use_fast)))
}

/// Counts both classes over `S_n` with default options.
pub fn count_classes(n: usize, use_fast: bool) -> Result<CountReport> {
    count_classes_with(
        n,
        &CountOptions {
            use_fast,
            ..Default::default()
        },
    )
}

pub fn count_classes_with(n: usize, opts: &CountOptions) -> Result<CountReport> {
    guard(n, opts.max_n)?;
    let timer = Stopwatch::start();
    let (satisfying_count, avoiding_count) = count_all(n, opts);
    let specs_count = count_valid_specs_with_limit(n, opts.max_n)?;
    Ok(CountReport {
        n,
        satisfying_count,
        avoiding_count,
        specs_count,
        catalan: catalan(n)?,
        elapsed_ms: timer.elapsed_ms(),
    })
}

/// One report per `n` in `0..=n_max`.
pub fn count_table(n_max: usize, opts: &CountOptions) -> Result<Vec<CountReport>> {
    guard(n_max, opts.max_n)?;
    (0..=n_max).map(|n| count_classes_with(n, opts)).collect()
}

/// Visits every valid LRmax specification for `[n]` by backtracking on the
/// defining inequalities.
pub fn for_each_valid_spec<F: FnMut(&LrMaxSpec)>(n: usize, mut visit: F) {
    let mut spec = LrMaxSpec::new(Vec::new(), Vec::new(), n);
    if n == 0 {
        visit(&spec);
        return;
    }
    spec.positions.push(1);
    for m in 1..=n as Value {
        spec.maxima.push(m);
        extend_spec(&mut spec, &mut visit);
        spec.maxima.pop();
    }
}

fn extend_spec<F: FnMut(&LrMaxSpec)>(spec: &mut LrMaxSpec, visit: &mut F) {
    let n = spec.n;
    let last_p = *spec.positions.last().unwrap();
    let last_m = *spec.maxima.last().unwrap();
    if last_m as usize == n {
        visit(spec);
        return;
    }
    for p in last_p + 1..=(last_m as usize + 1).min(n) {
        spec.positions.push(p);
        for m in last_m + 1..=n as Value {
            spec.maxima.push(m);
            extend_spec(spec, visit);
            spec.maxima.pop();
        }
        spec.positions.pop();
    }
}

pub fn valid_specs(n: usize) -> Result<Vec<LrMaxSpec>> {
    guard(n, DEFAULT_MAX_N)?;
    let mut out = Vec::new();
    for_each_valid_spec(n, |s| out.push(s.clone()));
    Ok(out)
}

pub fn count_valid_specs(n: usize) -> Result<u64> {
    count_valid_specs_with_limit(n, DEFAULT_MAX_N)
}

pub fn count_valid_specs_with_limit(n: usize, limit: usize) -> Result<u64> {
    guard(n, limit)?;
    let mut count = 0;
    for_each_valid_spec(n, |_| count += 1);
    Ok(count)
}

/// Largest index accepted by [`catalan`].
pub const CATALAN_MAX_N: usize = 30;

/// `C_n` via `C_{k+1} = C_k · 2(2k+1) / (k+2)`, exact in 128-bit arithmetic.
pub fn catalan(n: usize) -> Result<u64> {
    if n > CATALAN_MAX_N {
        return Err(Error::SizeGuard {
            n,
            limit: CATALAN_MAX_N,
        });
    }
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    Ok(c as u64)
}

/// CSV with header `n,satisfying,avoiding,specs,catalan,elapsed_ms`.
pub fn write_csv<W: io::Write>(reports: &[CountReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// JSON array of objects with the CSV field names.
pub fn to_json(reports: &[CountReport]) -> String {
    serde_json::to_string_pretty(reports).expect("count reports always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sequence(n: usize) -> Vec<String> {
        permutations(n).unwrap().map(|p| p.to_string()).collect()
    }

    #[test]
    fn permutations_small() {
        assert_eq!(sequence(0), vec![""]);
        let s3 = sequence(3);
        assert_eq!(s3, ["1,2,3", "1,3,2", "2,1,3", "2,3,1", "3,1,2", "3,2,1"]);
        assert_eq!(permutations(4).unwrap().count(), 24);
        assert_eq!(permutations(7).unwrap().count(), 5040);
        assert!(matches!(permutations(13), Err(Error::SizeGuard { n: 13, limit: 12 })));
        assert!(permutations_with_limit(13, 13).is_ok());
        assert!(matches!(
            permutations_with_limit(21, 100),
            Err(Error::SizeGuard { limit: HARD_MAX_N, .. })
        ));
    }

    #[test]
    fn partitions_cover_lexicographic_stream() {
        for n in 0..=6 {
            let mut joined = Vec::new();
            for f in partitions(n) {
                for_each_with_first(n, f, |p| joined.push(p.clone()));
            }
            assert_eq!(joined, permutations(n).unwrap().collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_class_counts() {
        for (n, want) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 23)] {
            let r = count_classes(n, true).unwrap();
            assert_eq!((r.satisfying_count, r.avoiding_count), (want, want), "n={n}");
        }
    }

    #[test]
    fn spec_counts() {
        assert_eq!(count_valid_specs(0).unwrap(), 1);
        assert_eq!(count_valid_specs(3).unwrap(), 5);
        assert_eq!(count_valid_specs(4).unwrap(), 14);
        assert!(count_valid_specs(13).is_err());
        assert!(valid_specs(5).unwrap().iter().all(LrMaxSpec::is_valid));
    }

    /// Independent oracle: `C_{n+1} = Σ C_i C_{n-i}`.
    #[test]
    fn catalan_matches_convolution() {
        let mut table = vec![1u128];
        for n in 0..CATALAN_MAX_N {
            let next = (0..=n).map(|i| table[i] * table[n - i]).sum();
            table.push(next);
        }
        for (n, &c) in table.iter().enumerate() {
            assert_eq!(u128::from(catalan(n).unwrap()), c, "n={n}");
        }
        assert_eq!(catalan(10).unwrap(), 16796);
        assert_eq!(catalan(1).unwrap(), 1);
        assert_eq!(catalan(4).unwrap(), 14);
        assert!(catalan(31).is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let reports = count_table(
            3,
            &CountOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&reports, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,satisfying,avoiding,specs,catalan,elapsed_ms"));
        assert!(lines.next().unwrap().starts_with("0,1,1,1,1,"));
        let parsed: Vec<CountReport> = serde_json::from_str(&to_json(&reports)).unwrap();
        assert_eq!(parsed, reports);
        assert!(to_json(&reports).contains("\"satisfying\": 6"));
    }
}
