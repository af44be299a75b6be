//! File formats and command plumbing behind the `hypermatch` binary.

pub mod bench;
pub mod hbm;
pub mod report;
pub mod tracefile;

use hypermatch_core::instances::{default_private_degree, GeneratorMode, GeneratorSpec};
use hypermatch_core::ratio::BigRational;

pub fn parse_mode(text: &str) -> Option<GeneratorMode> {
    match text {
        "planted" => Some(GeneratorMode::Planted),
        "guaranteed" => Some(GeneratorMode::Guaranteed),
        "graph" => Some(GeneratorMode::Graph),
        "adversarial" => Some(GeneratorMode::Adversarial),
        _ => None,
    }
}

pub fn mode_name(mode: GeneratorMode) -> &'static str {
    match mode {
        GeneratorMode::Planted => "planted",
        GeneratorMode::Guaranteed => "guaranteed",
        GeneratorMode::Graph => "graph",
        GeneratorMode::Adversarial => "adversarial",
    }
}

/// A `|B|` large enough for the mode when the caller gives none.
pub fn default_b_count(spec: &GeneratorSpec, epsilon: &BigRational) -> usize {
    let k = spec.r.saturating_sub(1).max(1);
    let n = spec.a_count;
    match spec.mode {
        GeneratorMode::Planted => 2 * k * n.max(1),
        GeneratorMode::Guaranteed => {
            let d = spec.d.unwrap_or_else(|| default_private_degree(spec.r, epsilon));
            (d + 1) * k * n + k
        }
        GeneratorMode::Graph => n + n / 2 + 1,
        GeneratorMode::Adversarial => (2 * n).max(k),
    }
}

/// The comment lines written at the top of a generated instance.
pub fn generator_comments(spec: &GeneratorSpec, epsilon: &BigRational) -> Vec<String> {
    let mut c = vec![
        format!(
            "generated by hypermatch gen mode:{} r:{} na:{} nb:{} extra_edges:{} seed:{}",
            mode_name(spec.mode),
            spec.r,
            spec.a_count,
            spec.b_count,
            spec.extra_edges,
            spec.seed
        ),
        format!("rng:{}", hypermatch_core::instances::RNG_ALGORITHM),
        format!("epsilon:{}", hypermatch_core::ratio::format_rational(epsilon)),
    ];
    if let Some(d) = spec.d {
        c.push(format!("d:{d}"));
    }
    if let Some(f) = spec.funnel {
        c.push(format!("funnel:{f}"));
    }
    c
}
