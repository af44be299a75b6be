//! Trace documents and the signature checker.
//!
//! The first line is `format:hypermatch-trace/1`; every further line is one
//! event as space-separated `key:value` fields, starting with `event:`.
//! Signatures are written as comma-separated coordinates ending in `inf`.

use std::io::Write;

use hypermatch_core::engine::{SignatureVector, TraceEvent, TraceSink};

pub const TRACE_FORMAT: &str = "hypermatch-trace/1";

pub fn render_event(event: &TraceEvent) -> String {
    match event {
        TraceEvent::AugmentStart { root } => format!("event:augment_start root:{root}"),
        TraceEvent::IterationStart {
            iteration,
            depth,
            signature,
        } => {
            let mut s = format!("event:iteration_start iteration:{iteration} depth:{depth}");
            if let Some(sig) = signature {
                s.push_str(&format!(" signature:{sig}"));
            }
            s
        }
        TraceEvent::LayerBuilt { layer, x, y } => format!("event:layer_built layer:{layer} x:{x} y:{y}"),
        TraceEvent::GrowthCheck { layer, passed } => {
            format!(
                "event:growth_check layer:{layer} result:{}",
                if *passed { "pass" } else { "fail" }
            )
        }
        TraceEvent::Collapse { layer, swaps } => format!("event:collapse layer:{layer} swaps:{swaps}"),
        TraceEvent::SuperposedBuild {
            layer,
            before,
            after,
            committed,
        } => format!(
            "event:superposed_build layer:{layer} before:{before} after:{after} result:{}",
            if *committed { "commit" } else { "reject" }
        ),
        TraceEvent::IterationEnd { iteration, depth } => {
            format!("event:iteration_end iteration:{iteration} depth:{depth}")
        }
        TraceEvent::WitnessExtracted { s, hitting_set } => {
            format!("event:witness s:{s} hitting_set:{hitting_set}")
        }
        TraceEvent::AugmentEnd {
            root,
            matched,
            iterations,
        } => format!(
            "event:augment_end root:{root} result:{} iterations:{iterations}",
            if *matched { "matched" } else { "witness" }
        ),
    }
}

/// Streams events to a writer as they arrive. The first write error is
/// kept and later events are dropped.
pub struct TraceWriter<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(mut out: W) -> Self {
        let error = writeln!(out, "format:{TRACE_FORMAT}").err();
        TraceWriter { out, error }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> TraceSink for TraceWriter<W> {
    fn event(&mut self, event: TraceEvent) {
        if self.error.is_none() {
            self.error = writeln!(self.out, "{}", render_event(&event)).err();
        }
    }

    fn wants_signatures(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceCheckError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: signature {current} does not decrease from {previous}")]
    NotDecreasing {
        line: usize,
        previous: SignatureVector,
        current: SignatureVector,
    },
    #[error("line {line}: signature {0} breaks the sign pattern", .signature)]
    SignPattern { line: usize, signature: SignatureVector },
    #[error("line {line}: signature {0} is not monotone in absolute value", .signature)]
    NotMonotone { line: usize, signature: SignatureVector },
}

/// What a successful check saw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraceSummary {
    pub augmentations: usize,
    pub signatures: usize,
}

pub fn parse_signature(text: &str) -> Option<SignatureVector> {
    let mut parts: Vec<&str> = text.split(',').collect();
    if parts.pop()? != "inf" {
        return None;
    }
    let coords = parts
        .iter()
        .map(|p| p.parse::<i64>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some(SignatureVector::new(coords))
}

/// Checks that within every augmentation the signatures strictly decrease,
/// keep the sign pattern and are non-decreasing in absolute value.
pub fn check_trace(text: &str) -> Result<TraceSummary, TraceCheckError> {
    let mut summary = TraceSummary::default();
    let mut previous: Option<SignatureVector> = None;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim() == format!("format:{TRACE_FORMAT}") => {}
        _ => {
            return Err(TraceCheckError::Syntax {
                line: 1,
                reason: "missing trace format header".into(),
            })
        }
    }
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut fields = std::collections::BTreeMap::new();
        for token in raw.split_whitespace() {
            let Some((k, v)) = token.split_once(':') else {
                return Err(TraceCheckError::Syntax {
                    line,
                    reason: format!("expected key:value, found {token:?}"),
                });
            };
            fields.insert(k, v);
        }
        match fields.get("event").copied() {
            Some("augment_start") => {
                summary.augmentations += 1;
                previous = None;
            }
            Some("iteration_start") => {
                let Some(text) = fields.get("signature") else { continue };
                let Some(signature) = parse_signature(text) else {
                    return Err(TraceCheckError::Syntax {
                        line,
                        reason: format!("bad signature {text:?}"),
                    });
                };
                summary.signatures += 1;
                if !signature.has_sign_pattern() {
                    return Err(TraceCheckError::SignPattern { line, signature });
                }
                if !signature.is_abs_monotone() {
                    return Err(TraceCheckError::NotMonotone { line, signature });
                }
                if let Some(prev) = previous.take() {
                    if signature >= prev {
                        return Err(TraceCheckError::NotDecreasing {
                            line,
                            previous: prev,
                            current: signature,
                        });
                    }
                }
                previous = Some(signature);
            }
            Some(_) => {}
            None => {
                return Err(TraceCheckError::Syntax {
                    line,
                    reason: "record without an event field".into(),
                })
            }
        }
    }
    Ok(summary)
}
