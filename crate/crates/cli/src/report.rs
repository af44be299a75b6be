//! Result documents: one `key:value` record per line, fields in a fixed
//! order.
//!
//! ```text
//! format:hypermatch-result/1
//! status:perfect_matching          | status:witness
//! epsilon:1/2
//! matching:0 3 5                   | s:0 1
//!                                  | hitting_set:4
//!                                  | bound:3/2
//! iterations:12
//! max_layers:3
//! swaps:4
//! build_ops:20
//! collapses:5
//! commits:1
//! rejects:3
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use hypermatch_core::engine::{Solution, SolveStats};
use hypermatch_core::matching::MatchingViolation;
use hypermatch_core::oracles::WitnessViolation;
use hypermatch_core::ratio::{format_rational, parse_rational, BigRational};
use hypermatch_core::{verify_matching, verify_witness, BipartiteHypergraph, WitnessCertificate};

pub const RESULT_FORMAT: &str = "hypermatch-result/1";

/// A parsed result document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    PerfectMatching {
        epsilon: BigRational,
        edges: Vec<usize>,
    },
    Witness {
        epsilon: BigRational,
        s: Vec<usize>,
        hitting_set: Vec<usize>,
        bound: BigRational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing field {0:?}")]
    MissingField(&'static str),
}

pub fn render_result(solution: &Solution, epsilon: &BigRational, stats: &SolveStats) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format:{RESULT_FORMAT}");
    match solution {
        Solution::PerfectMatching(edges) => {
            let _ = writeln!(out, "status:perfect_matching");
            let _ = writeln!(out, "epsilon:{}", format_rational(epsilon));
            let _ = writeln!(out, "matching:{}", join(edges));
        }
        Solution::Witness(cert) => {
            let _ = writeln!(out, "status:witness");
            let _ = writeln!(out, "epsilon:{}", format_rational(&cert.epsilon));
            let _ = writeln!(out, "s:{}", join(&cert.s));
            let _ = writeln!(out, "hitting_set:{}", join(&cert.hitting_set));
            let _ = writeln!(out, "bound:{}", format_rational(&cert.bound));
        }
    }
    let _ = writeln!(out, "iterations:{}", stats.iterations);
    let _ = writeln!(out, "max_layers:{}", stats.max_layers);
    let _ = writeln!(out, "swaps:{}", stats.swaps);
    let _ = writeln!(out, "build_ops:{}", stats.build_ops);
    let _ = writeln!(out, "collapses:{}", stats.collapses);
    let _ = writeln!(out, "commits:{}", stats.commits);
    let _ = writeln!(out, "rejects:{}", stats.rejects);
    out
}

pub(crate) fn join(items: &[usize]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_result(text: &str) -> Result<Claim, ReportError> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let Some((key, value)) = raw.split_once(':') else {
            return Err(ReportError::Syntax {
                line,
                reason: format!("expected key:value, found {raw:?}"),
            });
        };
        if fields.insert(key, (line, value.trim())).is_some() {
            return Err(ReportError::Syntax {
                line,
                reason: format!("repeated field {key:?}"),
            });
        }
    }
    let get = |key: &'static str| fields.get(key).copied().ok_or(ReportError::MissingField(key));
    let (line, format) = get("format")?;
    if format != RESULT_FORMAT {
        return Err(ReportError::Syntax {
            line,
            reason: format!("unsupported format {format:?}"),
        });
    }
    let rational = |key: &'static str| -> Result<BigRational, ReportError> {
        let (line, v) = get(key)?;
        parse_rational(v).map_err(|e| ReportError::Syntax {
            line,
            reason: e.to_string(),
        })
    };
    let list = |key: &'static str| -> Result<Vec<usize>, ReportError> {
        let (line, v) = get(key)?;
        v.split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| ReportError::Syntax {
                    line,
                    reason: format!("not an index: {t:?}"),
                })
            })
            .collect()
    };
    let (line, status) = get("status")?;
    match status {
        "perfect_matching" => Ok(Claim::PerfectMatching {
            epsilon: rational("epsilon")?,
            edges: list("matching")?,
        }),
        "witness" => Ok(Claim::Witness {
            epsilon: rational("epsilon")?,
            s: list("s")?,
            hitting_set: list("hitting_set")?,
            bound: rational("bound")?,
        }),
        other => Err(ReportError::Syntax {
            line,
            reason: format!("unknown status {other:?}"),
        }),
    }
}

/// Why a claim does not hold, as a stable code plus detail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub code: &'static str,
    pub detail: String,
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

/// Checks a claim against its instance.
pub fn verify_claim(h: &BipartiteHypergraph, claim: &Claim) -> Result<(), Refutation> {
    match claim {
        Claim::PerfectMatching { edges, .. } => verify_matching(h, edges, true).map_err(|v| {
            let code = match v {
                MatchingViolation::OverlapA { .. } | MatchingViolation::OverlapB { .. } => "OVERLAP",
                MatchingViolation::Unmatched(_) => "UNMATCHED",
                MatchingViolation::UnknownEdge(_) => "UNKNOWN_EDGE",
                MatchingViolation::RepeatedEdge(_) => "REPEATED_EDGE",
            };
            Refutation {
                code,
                detail: v.to_string(),
            }
        }),
        Claim::Witness {
            epsilon,
            s,
            hitting_set,
            bound,
        } => {
            let cert = WitnessCertificate {
                s: s.clone(),
                hitting_set: hitting_set.clone(),
                epsilon: epsilon.clone(),
                bound: bound.clone(),
            };
            verify_witness(h, &cert).map_err(|v| {
                let code = match v {
                    WitnessViolation::UnhitEdge(_) => "UNHIT_EDGE",
                    WitnessViolation::SizeExceedsBound { .. } => "SIZE_EXCEEDS_BOUND",
                    WitnessViolation::BoundMismatch => "BOUND_MISMATCH",
                    WitnessViolation::BadAVertex(_) | WitnessViolation::BadBVertex(_) => "BAD_VERTEX",
                };
                Refutation {
                    code,
                    detail: v.to_string(),
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn matching_round_trip() {
        let sol = Solution::PerfectMatching(vec![0, 3]);
        let text = render_result(&sol, &q("1/2"), &SolveStats::default());
        assert!(text.starts_with("format:hypermatch-result/1\nstatus:perfect_matching\nepsilon:1/2\nmatching:0 3\n"));
        assert_eq!(
            parse_result(&text).unwrap(),
            Claim::PerfectMatching {
                epsilon: q("1/2"),
                edges: vec![0, 3]
            }
        );
    }

    #[test]
    fn empty_lists_survive() {
        let text = render_result(&Solution::PerfectMatching(vec![]), &q("1"), &SolveStats::default());
        assert!(text.contains("\nmatching:\n"));
        assert_eq!(
            parse_result(&text).unwrap(),
            Claim::PerfectMatching {
                epsilon: q("1"),
                edges: vec![]
            }
        );
    }

    #[test]
    fn rejects_bad_documents() {
        assert_eq!(
            parse_result("status:witness\n"),
            Err(ReportError::MissingField("format"))
        );
        assert!(matches!(
            parse_result("format:hypermatch-result/1\nstatus:maybe\n"),
            Err(ReportError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_result("nonsense\n"),
            Err(ReportError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_result("format:hypermatch-result/1\nstatus:perfect_matching\nepsilon:1\nmatching:0 x\n"),
            Err(ReportError::Syntax { line: 4, .. })
        ));
    }
}
