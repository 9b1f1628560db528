//! Measuring spread: Monte Carlo estimates of `P[φ(x_i) = y_i for all i]`
//! with confidence intervals, exhaustive oracles and analytic tail bounds.

pub mod bounds;
pub mod oracle;

use std::fmt::Write as _;

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::graph::{data_lines, parse_pair, Embedding, Vertex};
use crate::{rng_for_stream, SeededRng};

pub use bounds::{chernoff, degree_into_random_set, mcdiarmid_deviation, mcdiarmid_perm};
pub use oracle::{brute_force_embeddings, perm_spread_bound, perm_spread_exact, perm_spread_mc};

/// Minimum number of trials accepted by [`estimate_spread`].
pub const MIN_TRIALS: u64 = 1_000;

/// Event `φ(x_1) = y_1, ..., φ(x_s) = y_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadQuery {
    pairs: Vec<(Vertex, Vertex)>,
}

impl SpreadQuery {
    /// Errors if some `x` or some `y` repeats.
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if pairs[..i].iter().any(|&(x2, y2)| x2 == x || y2 == y) {
                return Err(Error::Precondition(format!("query repeats {x} or {y}")));
            }
        }
        Ok(SpreadQuery { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// `s`, the number of constraints.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn holds(&self, phi: &Embedding) -> bool {
        self.pairs.iter().all(|&(x, y)| phi.get(x) == Some(y))
    }
}

/// Parses a query file: for each query a line `s` followed by `s` lines `x y`.
pub fn parse_queries(text: &str) -> Result<Vec<SpreadQuery>> {
    let mut lines = data_lines(text);
    let mut out = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let s: usize = line
            .trim()
            .parse()
            .map_err(|e| Error::parse(ln, format!("query length: {e}")))?;
        let mut pairs = Vec::with_capacity(s);
        for _ in 0..s {
            let (pl, pline) = lines.next().ok_or_else(|| {
                Error::parse(ln, format!("query announces {s} pairs, file ends early"))
            })?;
            let [x, y] = parse_pair(pl, pline)?;
            pairs.push((x, y));
        }
        out.push(SpreadQuery::new(pairs).map_err(|e| Error::parse(ln, e.to_string()))?);
    }
    Ok(out)
}

/// Two-sided Wilson score interval for `hits` out of `n` at level `level`.
pub fn wilson_interval(hits: u64, n: u64, level: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(0.5 + level / 2.0);
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Pearson goodness-of-fit against the uniform distribution over the cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare> {
    if counts.len() < 2 {
        return Err(Error::Degenerate(
            "chi-square needs at least two cells".into(),
        ));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Degenerate("chi-square of zero observations".into()));
    }
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = counts.len() - 1;
    let p_value = ChiSquared::new(dof as f64)
        .expect("positive dof")
        .sf(statistic);
    Ok(ChiSquare {
        statistic,
        dof,
        p_value,
    })
}

/// Settings for [`estimate_spread`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpreadConfig {
    pub trials: u64,
    /// Trial `i` draws from stream `i` of this seed.
    pub master_seed: u64,
    /// Spread parameter `q`; a query of length `s` is flagged when the lower
    /// confidence bound of its probability exceeds `q^s`.
    pub q: f64,
    /// Largest tolerated fraction of sampler errors.
    pub failure_threshold: f64,
    /// Confidence level of all intervals.
    pub level: f64,
    /// Domain vertex left out of the per-coordinate maximum (a pinned root).
    pub pinned: Option<Vertex>,
    /// Keep the full `x y count` table in the report.
    pub keep_counts: bool,
}

impl SpreadConfig {
    pub fn new(trials: u64, master_seed: u64) -> Self {
        SpreadConfig {
            trials,
            master_seed,
            q: 1.0,
            failure_threshold: 0.01,
            level: 0.99,
            pinned: None,
            keep_counts: false,
        }
    }
}

/// Outcome of one query.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryEstimate {
    pub query: SpreadQuery,
    pub hits: u64,
    pub p_hat: f64,
    pub ci: (f64, f64),
    /// `q^s`.
    pub bound: f64,
    pub flagged: bool,
}

/// Empirical spread statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct SpreadReport {
    pub tree_n: usize,
    pub host_n: usize,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub master_seed: u64,
    pub level: f64,
    pub q: f64,
    /// Coordinate `(x, y)` with the largest empirical `P[φ(x) = y]`.
    pub max_pair: (Vertex, Vertex),
    pub max_hits: u64,
    pub max_p: f64,
    pub max_ci: (f64, f64),
    /// `Ĉ = n · max P̂[φ(x) = y]`.
    pub c_hat: f64,
    pub c_hat_ci: (f64, f64),
    /// The single coordinate is flagged when its lower bound exceeds `q`.
    pub max_flagged: bool,
    pub queries: Vec<QueryEstimate>,
    /// Row-major `tree_n × host_n` counts, if requested.
    pub counts: Option<Vec<u64>>,
}

impl SpreadReport {
    /// Flat `key value` record.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tree_n {}", self.tree_n);
        let _ = writeln!(s, "host_n {}", self.host_n);
        let _ = writeln!(s, "trials {}", self.trials);
        let _ = writeln!(s, "successes {}", self.successes);
        let _ = writeln!(s, "failures {}", self.failures);
        let _ = writeln!(s, "master_seed {}", self.master_seed);
        let _ = writeln!(s, "seed_streams 0..{}", self.trials);
        let _ = writeln!(s, "ci_method wilson");
        let _ = writeln!(s, "ci_level {}", self.level);
        let _ = writeln!(s, "q {}", self.q);
        let _ = writeln!(s, "max_x {}", self.max_pair.0);
        let _ = writeln!(s, "max_y {}", self.max_pair.1);
        let _ = writeln!(s, "max_p {:.6}", self.max_p);
        let _ = writeln!(s, "max_p_lo {:.6}", self.max_ci.0);
        let _ = writeln!(s, "max_p_hi {:.6}", self.max_ci.1);
        let _ = writeln!(s, "max_flagged {}", self.max_flagged);
        let _ = writeln!(s, "c_hat {:.4}", self.c_hat);
        let _ = writeln!(s, "c_hat_lo {:.4}", self.c_hat_ci.0);
        let _ = writeln!(s, "c_hat_hi {:.4}", self.c_hat_ci.1);
        let _ = writeln!(s, "queries {}", self.queries.len());
        let _ = writeln!(
            s,
            "flagged {}",
            self.queries.iter().filter(|q| q.flagged).count()
        );
        s
    }

    /// One line per query: `index s hits p_hat lo hi bound flagged`.
    pub fn query_table(&self) -> String {
        let mut s = String::from("index s hits p_hat lo hi bound flagged\n");
        for (i, q) in self.queries.iter().enumerate() {
            let _ = writeln!(
                s,
                "{i} {} {} {:.6} {:.6} {:.6} {:.6} {}",
                q.query.len(),
                q.hits,
                q.p_hat,
                q.ci.0,
                q.ci.1,
                q.bound,
                q.flagged
            );
        }
        s
    }

    /// `x y count` for every nonzero cell, if counts were kept.
    pub fn counts_table(&self) -> Option<String> {
        let counts = self.counts.as_ref()?;
        let mut s = String::from("x y count\n");
        for x in 0..self.tree_n {
            for y in 0..self.host_n {
                let c = counts[x * self.host_n + y];
                if c > 0 {
                    let _ = writeln!(s, "{x} {y} {c}");
                }
            }
        }
        Some(s)
    }
}

/// `Ĉ` at the larger size over `Ĉ` at the smaller one.
pub fn doubling_ratio(small: &SpreadReport, large: &SpreadReport) -> f64 {
    large.c_hat / small.c_hat
}

#[derive(Clone)]
struct Tally {
    counts: Vec<u64>,
    hits: Vec<u64>,
    successes: u64,
    failures: u64,
}

impl Tally {
    fn new(cells: usize, queries: usize) -> Self {
        Tally {
            counts: vec![0; cells],
            hits: vec![0; queries],
            successes: 0,
            failures: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.counts
            .iter_mut()
            .zip(&other.counts)
            .for_each(|(a, b)| *a += b);
        self.hits
            .iter_mut()
            .zip(&other.hits)
            .for_each(|(a, b)| *a += b);
        self.successes += other.successes;
        self.failures += other.failures;
        self
    }
}

/// Runs `sampler` for `cfg.trials` independent trials in parallel and tallies
/// every coordinate `φ(x) = y` and every query.
///
/// Errors if fewer than [`MIN_TRIALS`] trials are asked for or if the sampler
/// fails on more than `cfg.failure_threshold` of them.
pub fn estimate_spread<F>(
    sampler: F,
    tree_n: usize,
    host_n: usize,
    queries: &[SpreadQuery],
    cfg: &SpreadConfig,
) -> Result<SpreadReport>
where
    F: Fn(&mut SeededRng) -> Result<Embedding> + Sync,
{
    if cfg.trials < MIN_TRIALS {
        return Err(Error::Precondition(format!(
            "spread estimation needs at least {MIN_TRIALS} trials, got {}",
            cfg.trials
        )));
    }
    for q in queries {
        for &(x, y) in q.pairs() {
            if x >= tree_n || y >= host_n {
                return Err(Error::Precondition(format!(
                    "query pair ({x}, {y}) out of range"
                )));
            }
        }
    }
    let cells = tree_n * host_n;
    let tally = (0..cfg.trials)
        .into_par_iter()
        .fold(
            || Tally::new(cells, queries.len()),
            |mut acc, i| {
                let mut rng = rng_for_stream(cfg.master_seed, i);
                match sampler(&mut rng) {
                    Ok(phi) if phi.len() == tree_n && phi.is_total() => {
                        acc.successes += 1;
                        for (x, y) in phi.entries() {
                            if y < host_n {
                                acc.counts[x * host_n + y] += 1;
                            }
                        }
                        for (h, q) in acc.hits.iter_mut().zip(queries) {
                            if q.holds(&phi) {
                                *h += 1;
                            }
                        }
                    }
                    _ => acc.failures += 1,
                }
                acc
            },
        )
        .reduce(|| Tally::new(cells, queries.len()), Tally::merge);

    let rate = tally.failures as f64 / cfg.trials as f64;
    if rate > cfg.failure_threshold {
        return Err(Error::SamplerFailure {
            rate,
            threshold: cfg.failure_threshold,
        });
    }
    let n_ok = tally.successes;
    let mut best = ((0, 0), 0u64);
    for x in 0..tree_n {
        if Some(x) == cfg.pinned {
            continue;
        }
        for y in 0..host_n {
            let c = tally.counts[x * host_n + y];
            if c > best.1 {
                best = ((x, y), c);
            }
        }
    }
    let (max_pair, max_hits) = best;
    let max_p = max_hits as f64 / n_ok.max(1) as f64;
    let max_ci = wilson_interval(max_hits, n_ok, cfg.level);
    let hn = host_n as f64;
    let estimates = queries
        .iter()
        .zip(&tally.hits)
        .map(|(q, &hits)| {
            let ci = wilson_interval(hits, n_ok, cfg.level);
            let bound = cfg.q.powi(q.len() as i32);
            QueryEstimate {
                query: q.clone(),
                hits,
                p_hat: hits as f64 / n_ok.max(1) as f64,
                ci,
                bound,
                flagged: ci.0 > bound,
            }
        })
        .collect();
    Ok(SpreadReport {
        tree_n,
        host_n,
        trials: cfg.trials,
        successes: n_ok,
        failures: tally.failures,
        master_seed: cfg.master_seed,
        level: cfg.level,
        q: cfg.q,
        max_pair,
        max_hits,
        max_p,
        max_ci,
        c_hat: hn * max_p,
        c_hat_ci: (hn * max_ci.0, hn * max_ci.1),
        max_flagged: max_ci.0 > cfg.q,
        queries: estimates,
        counts: cfg.keep_counts.then_some(tally.counts),
    })
}

/// Uniform random bijection `[n] -> [n]`, the calibration sampler.
pub fn uniform_injection(n: usize, rng: &mut SeededRng) -> Embedding {
    use rand::seq::SliceRandom;
    let mut images: Vec<Vertex> = (0..n).collect();
    images.shuffle(rng);
    Embedding::from_total(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_truth() {
        let (lo, hi) = wilson_interval(50, 100, 0.99);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(lo > 0.36 && hi < 0.64);
        let (lo, hi) = wilson_interval(0, 100, 0.99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.07);
    }

    #[test]
    fn chi_square_of_flat_counts() {
        let c = chi_square_uniform(&[100, 100, 100, 100]).unwrap();
        assert_eq!(c.statistic, 0.0);
        assert!((c.p_value - 1.0).abs() < 1e-12);
        let skew = chi_square_uniform(&[400, 0, 0, 0]).unwrap();
        assert!(skew.p_value < 1e-10);
    }

    #[test]
    fn query_file_parsing() {
        let qs = parse_queries("1\n0 3\n2\n1 4\n2 5\n").unwrap();
        assert_eq!(qs.len(), 2);
        assert_eq!(qs[1].pairs(), &[(1, 4), (2, 5)]);
        let err = parse_queries("2\n0 1\nx y\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_queries("2\n0 1\n").is_err());
        assert!(parse_queries("2\n0 1\n0 2\n").is_err());
    }

    #[test]
    fn deterministic_sampler_is_flagged() {
        let cfg = SpreadConfig {
            q: 0.5,
            ..SpreadConfig::new(1_000, 1)
        };
        let q = vec![SpreadQuery::new(vec![(0, 0)]).unwrap()];
        let r =
            estimate_spread(|_| Ok(Embedding::from_total(vec![0, 1, 2])), 3, 3, &q, &cfg).unwrap();
        assert!(r.max_flagged);
        assert!(r.queries[0].flagged);
        assert_eq!(r.max_p, 1.0);
    }

    #[test]
    fn failing_sampler_is_reported() {
        let cfg = SpreadConfig::new(1_000, 1);
        let err = estimate_spread(|_| Err(Error::NotFound), 3, 3, &[], &cfg).unwrap_err();
        assert!(matches!(err, Error::SamplerFailure { .. }));
        assert!(estimate_spread(
            |_| Err(Error::NotFound),
            3,
            3,
            &[],
            &SpreadConfig::new(10, 1)
        )
        .is_err());
    }

    #[test]
    fn report_is_seed_deterministic() {
        let cfg = SpreadConfig {
            keep_counts: true,
            ..SpreadConfig::new(2_000, 9)
        };
        let a = estimate_spread(|r| Ok(uniform_injection(6, r)), 6, 6, &[], &cfg).unwrap();
        let b = estimate_spread(|r| Ok(uniform_injection(6, r)), 6, 6, &[], &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.counts_table().unwrap().starts_with("x y count\n"));
    }
}
