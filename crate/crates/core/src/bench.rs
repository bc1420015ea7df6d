//! Benchmark sweeps over the problem families.
//!
//! A sweep is a list of parameter points; each point is instantiated once
//! per seed (random family) or once (deterministic families), and every
//! instance is synthesized with every requested method. Rows come back in
//! `(family, n, k, seed, method)` order whichever way they were computed.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasepoly::PhasePolynomial;
use crate::problems::{gen_caveman_graph, gen_coloring_polynomial, gen_full, gen_random};
use crate::synth::{synthesize_diagonal, Method, ReturnMethod, SynthOptions};

pub const CSV_HEADER: &str =
    "family,n,k,term_count,seed,method,cnot_count,network_cnots,return_cnots,rz_count,runtime_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Random,
    Full,
    Caveman,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Full => "full",
            Family::Caveman => "caveman",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Family::Random, Family::Full, Family::Caveman]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown family {s:?}")))
    }
}

/// One parameter setting of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Random { n: usize, terms: usize },
    Full { n: usize, k: usize },
    Caveman { cliques: usize, clique_size: usize },
}

impl Point {
    pub fn family(&self) -> Family {
        match self {
            Point::Random { .. } => Family::Random,
            Point::Full { .. } => Family::Full,
            Point::Caveman { .. } => Family::Caveman,
        }
    }

    /// `(n, k)` as written to the CSV. Caveman points use the clique count
    /// and clique size; random points leave `k` empty.
    pub fn columns(&self) -> (usize, Option<usize>) {
        match *self {
            Point::Random { n, .. } => (n, None),
            Point::Full { n, k } => (n, Some(k)),
            Point::Caveman { cliques, clique_size } => (cliques, Some(clique_size)),
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Point::Random { .. })
    }

    pub fn instance(&self, seed: u64) -> Result<PhasePolynomial> {
        match *self {
            Point::Random { n, terms } => gen_random(n, terms, seed),
            Point::Full { n, k } => gen_full(n, k),
            Point::Caveman { cliques, clique_size } => {
                gen_coloring_polynomial(&gen_caveman_graph(cliques, clique_size)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: Family,
    pub n: usize,
    pub k: Option<usize>,
    pub term_count: usize,
    pub seed: u64,
    pub method: Method,
    pub cnot_count: usize,
    pub network_cnots: usize,
    pub return_cnots: usize,
    pub rz_count: usize,
    pub runtime_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Runs instances on the rayon pool; identical to `Sequential` when
    /// built without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub points: Vec<Point>,
    /// Seeds per randomized point.
    pub samples: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub return_method: ReturnMethod,
    pub gamma: f64,
    /// When false, `runtime_ms` is written as 0 so reruns are byte-identical.
    pub record_timing: bool,
}

impl BenchConfig {
    pub fn new(points: Vec<Point>) -> Self {
        BenchConfig {
            points,
            samples: 30,
            seed: 0,
            methods: Method::ALL.to_vec(),
            return_method: ReturnMethod::GreedyElim,
            gamma: 1.0,
            record_timing: true,
        }
    }

    fn jobs(&self) -> Vec<(Point, u64)> {
        let mut jobs = Vec::new();
        for p in &self.points {
            if p.is_randomized() {
                jobs.extend((0..self.samples as u64).map(|s| (*p, self.seed + s)));
            } else {
                jobs.push((*p, self.seed));
            }
        }
        jobs
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchRun {
    pub records: Vec<BenchRecord>,
    /// Ladder upper bound of each instance, keyed by `(family, n, k, seed)`.
    pub bounds: BTreeMap<(Family, usize, Option<usize>, u64), usize>,
}

fn run_job(cfg: &BenchConfig, point: Point, seed: u64) -> Result<(Vec<BenchRecord>, usize)> {
    let poly = point.instance(seed)?;
    let (n, k) = point.columns();
    let mut rows = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let opts = SynthOptions {
            method,
            return_method: cfg.return_method,
            force_identity: false,
        };
        let report = synthesize_diagonal(&poly, cfg.gamma, opts)?;
        rows.push(BenchRecord {
            family: point.family(),
            n,
            k,
            term_count: poly.len(),
            seed,
            method,
            cnot_count: report.cnot_count,
            network_cnots: report.network_cnots,
            return_cnots: report.return_cnots,
            rz_count: report.rz_count,
            runtime_ms: if cfg.record_timing { report.runtime_ms } else { 0.0 },
        });
    }
    Ok((rows, poly.ladder_upper_bound()))
}

pub fn run_bench(cfg: &BenchConfig, exec: Execution) -> Result<BenchRun> {
    let jobs = cfg.jobs();
    let results: Vec<Result<(Vec<BenchRecord>, usize)>> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            jobs.par_iter().map(|&(p, s)| run_job(cfg, p, s)).collect()
        }
        _ => jobs.iter().map(|&(p, s)| run_job(cfg, p, s)).collect(),
    };

    let mut run = BenchRun::default();
    for ((point, seed), res) in jobs.iter().zip(results) {
        let (rows, bound) = res?;
        let (n, k) = point.columns();
        run.bounds.insert((point.family(), n, k, *seed), bound);
        run.records.extend(rows);
    }
    run.records
        .sort_by(|a, b| (a.family, a.n, a.k, a.seed, a.method).cmp(&(b.family, b.n, b.k, b.seed, b.method)));
    Ok(run)
}

pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let records = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<BenchRecord>, _>>()?;
    for r in &records {
        if r.cnot_count != r.network_cnots + r.return_cnots {
            return Err(Error::InvalidParams(format!(
                "row {r:?}: cnot_count != network_cnots + return_cnots"
            )));
        }
    }
    Ok(records)
}

/// Mean and sample (n − 1) standard deviation; the deviation is 0 for a
/// single value.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub family: Family,
    pub n: usize,
    pub k: Option<usize>,
    pub method: Method,
    pub samples: usize,
    pub mean_cnots: f64,
    pub std_cnots: f64,
    pub mean_ladder_bound: f64,
}

/// Per-(point, method) statistics of `cnot_count`.
pub fn summarize(run: &BenchRun) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(Family, usize, Option<usize>, Method), Vec<&BenchRecord>> = BTreeMap::new();
    for r in &run.records {
        groups.entry((r.family, r.n, r.k, r.method)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((family, n, k, method), rows)| {
            let counts: Vec<f64> = rows.iter().map(|r| r.cnot_count as f64).collect();
            let bounds: Vec<f64> = rows
                .iter()
                .filter_map(|r| run.bounds.get(&(family, n, k, r.seed)).map(|&b| b as f64))
                .collect();
            let (mean_cnots, std_cnots) = mean_std(&counts);
            SummaryRow {
                family,
                n,
                k,
                method,
                samples: rows.len(),
                mean_cnots,
                std_cnots,
                mean_ladder_bound: mean_std(&bounds).0,
            }
        })
        .collect()
}

pub fn format_summary(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:>4} {:>4} {:<10} {:>7} {:>12} {:>10} {:>12}",
        "family", "n", "k", "method", "samples", "mean_cnots", "std", "ladder_bound"
    );
    for r in rows {
        let k = r.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<8} {:>4} {:>4} {:<10} {:>7} {:>12.2} {:>10.2} {:>12.2}",
            r.family.name(),
            r.n,
            k,
            r.method.name(),
            r.samples,
            r.mean_cnots,
            r.std_cnots,
            r.mean_ladder_bound
        );
    }
    out
}
