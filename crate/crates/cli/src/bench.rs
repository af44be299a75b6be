//! Seeded batch runs.
//!
//! A spec file holds one generator spec per line as `key:value` tokens, for
//! example `mode:guaranteed r:3 na:8 extra_edges:10`. Recognised keys are
//! `mode`, `r`, `na`, `nb`, `extra_edges`, `d` and `funnel`; `nb` defaults
//! per mode. Lines starting with `#` and blank lines are skipped.

use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;

use hypermatch_core::engine::{find_perfect_matching, Parameters, Solution, SolveStats};
use hypermatch_core::instances::{generate, GeneratorMode, GeneratorSpec};
use hypermatch_core::ratio::BigRational;

use crate::{default_b_count, parse_mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("spec line {line}: {reason}")]
    Spec { line: usize, reason: String },
    #[error("bad seed range {0:?}; expected N or A..B")]
    Seeds(String),
}

/// One spec-file line. Unless `nb` was given, `b_count` is chosen per seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSpec {
    pub template: GeneratorSpec,
    pub explicit_b: bool,
}

impl BenchSpec {
    pub fn instantiate(&self, seed: u64, epsilon: &BigRational) -> GeneratorSpec {
        let mut spec = self.template.clone();
        spec.seed = seed;
        if !self.explicit_b {
            spec.b_count = default_b_count(&spec, epsilon);
        }
        spec
    }
}

pub fn parse_spec_file(text: &str) -> Result<Vec<BenchSpec>, BenchError> {
    let mut specs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let err = |reason: String| BenchError::Spec { line, reason };
        let mut spec = GeneratorSpec::new(GeneratorMode::Guaranteed, 3, 0, 0, 0);
        let mut explicit_b = false;
        let mut saw_mode = false;
        for token in raw.split_whitespace() {
            let (key, value) = token
                .split_once(':')
                .ok_or_else(|| err(format!("expected key:value, found {token:?}")))?;
            if key == "mode" {
                spec.mode = parse_mode(value).ok_or_else(|| err(format!("unknown mode {value:?}")))?;
                saw_mode = true;
                continue;
            }
            let n: usize = value
                .parse()
                .map_err(|_| err(format!("{key} needs a non-negative integer, found {value:?}")))?;
            match key {
                "r" => spec.r = n,
                "na" => spec.a_count = n,
                "nb" => {
                    spec.b_count = n;
                    explicit_b = true;
                }
                "extra_edges" => spec.extra_edges = n,
                "d" => spec.d = Some(n),
                "funnel" => spec.funnel = Some(n),
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        if !saw_mode {
            return Err(err("missing mode".into()));
        }
        specs.push(BenchSpec {
            template: spec,
            explicit_b,
        });
    }
    Ok(specs)
}

/// `N` means seeds `0..N`; `A..B` is a half-open range.
pub fn parse_seeds(text: &str) -> Result<Range<u64>, BenchError> {
    let bad = || BenchError::Seeds(text.to_string());
    match text.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..b)
        }
        None => Ok(0..text.trim().parse().map_err(|_| bad())?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Matching,
    Witness,
    Error(String),
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub spec: usize,
    pub seed: u64,
    pub status: RowStatus,
    pub stats: SolveStats,
    pub wall_us: u128,
}

impl BenchRow {
    pub fn render(&self) -> String {
        let status = match &self.status {
            RowStatus::Matching => "matching",
            RowStatus::Witness => "witness",
            RowStatus::Error(_) => "error",
        };
        let s = &self.stats;
        let mut row = format!(
            "spec:{} seed:{} status:{status} iterations:{} layers:{} swaps:{} build_ops:{} wall_us:{}",
            self.spec, self.seed, s.iterations, s.max_layers, s.swaps, s.build_ops, self.wall_us
        );
        if let RowStatus::Error(e) = &self.status {
            row.push_str(&format!(" error:{}", e.replace(char::is_whitespace, "_")));
        }
        row
    }
}

/// Runs every (spec, seed) pair, in parallel, returning rows in
/// (spec, seed) order whatever the completion order.
pub fn run_bench(specs: &[BenchSpec], seeds: Range<u64>, epsilon: &BigRational) -> Vec<BenchRow> {
    let jobs: Vec<(usize, u64)> = (0..specs.len())
        .flat_map(|i| seeds.clone().map(move |s| (i, s)))
        .collect();
    jobs.par_iter()
        .map(|&(i, seed)| run_one(i, &specs[i].instantiate(seed, epsilon), epsilon))
        .collect()
}

fn run_one(index: usize, spec: &GeneratorSpec, epsilon: &BigRational) -> BenchRow {
    let start = Instant::now();
    let mut row = BenchRow {
        spec: index,
        seed: spec.seed,
        status: RowStatus::Error(String::new()),
        stats: SolveStats::default(),
        wall_us: 0,
    };
    let outcome = generate(spec, epsilon).map_err(|e| e.to_string()).and_then(|h| {
        let params = Parameters::new(h.r(), h.a_count(), epsilon.clone()).map_err(|e| e.to_string())?;
        find_perfect_matching(&h, &params, &mut ()).map_err(|e| e.to_string())
    });
    row.wall_us = start.elapsed().as_micros();
    match outcome {
        Ok((solution, stats)) => {
            row.status = match solution {
                Solution::PerfectMatching(_) => RowStatus::Matching,
                Solution::Witness(_) => RowStatus::Witness,
            };
            row.stats = stats;
        }
        Err(e) => row.status = RowStatus::Error(e),
    }
    row
}
