//! Replayable derivation logs, one JSON object per line.
//!
//! A log opens with a header (configuration and start word), then has steps
//! and checkpoints in order, and closes with a footer. Every step carries the
//! digest of the word before and after it.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::invariants::{count_fibers, report, FiberCounts, InvariantReport};
use crate::library::{substitute, Direction, Relation, RelationKind};
use crate::rewrite::{apply_move, state_hash, Move, MoveScript};
use crate::surface::CurveConfig;
use crate::word::{Relator, TwistWord};

pub const LOG_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InlineRelation {
    pub name: String,
    pub kind: RelationKind,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Move {
        #[serde(rename = "move")]
        mv: Move,
    },
    Substitution {
        relation: InlineRelation,
        at: usize,
        direction: Direction,
    },
}

/// Expected `(e, σ)` at a checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub e: i64,
    pub sigma: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Values stated in the literature.
    Published,
    /// Values worked out by hand from published fiber counts.
    Computed,
    /// No independent expectation; the checkpoint only records.
    Recorded,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Published => "published",
            Source::Computed => "computed",
            Source::Recorded => "recorded",
        }
    }
}

/// What a checkpoint is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Published(i64, i64),
    Computed(i64, i64),
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Line {
    Header {
        tool_version: String,
        schema_version: u32,
        example: String,
        ambient: CurveConfig,
        start: String,
        target: String,
    },
    Step {
        index: usize,
        record: Record,
        pre_hash: String,
        post_hash: String,
        note: String,
    },
    Checkpoint {
        label: String,
        blowdown: bool,
        fiber_counts: FiberCounts,
        report: InvariantReport,
        expected: Expected,
        source: Source,
    },
    Footer {
        #[serde(rename = "final")]
        final_word: String,
        fiber_counts: FiberCounts,
        report: InvariantReport,
    },
}

/// A derivation being recorded.
#[derive(Debug, Clone)]
pub struct Derivation {
    example: String,
    start: Relator,
    current: Relator,
    lines: Vec<Line>,
    steps: usize,
}

impl Derivation {
    pub fn new(example: impl Into<String>, start: Relator) -> Result<Self> {
        if !start.is_identity_target() {
            return Err(Error::NonIdentityTarget);
        }
        Ok(Derivation {
            example: example.into(),
            current: start.clone(),
            start,
            lines: Vec::new(),
            steps: 0,
        })
    }

    pub fn example(&self) -> &str {
        &self.example
    }

    pub fn current(&self) -> &Relator {
        &self.current
    }

    pub fn ambient(&self) -> &Arc<CurveConfig> {
        self.current.word.ambient()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn step_count(&self) -> usize {
        self.steps
    }

    fn push_step(&mut self, record: Record, next: Relator, note: String) {
        let pre_hash = state_hash(&self.current.word);
        let post_hash = state_hash(&next.word);
        self.lines.push(Line::Step {
            index: self.steps,
            record,
            pre_hash,
            post_hash,
            note,
        });
        self.steps += 1;
        self.current = next;
    }

    pub fn apply(&mut self, mv: Move, note: impl Into<String>) -> Result<()> {
        let next = apply_move(&self.current, &mv)?;
        self.push_step(Record::Move { mv }, next, note.into());
        Ok(())
    }

    pub fn apply_all(&mut self, moves: impl IntoIterator<Item = Move>, note: &str) -> Result<()> {
        for mv in moves {
            self.apply(mv, note)?;
        }
        Ok(())
    }

    pub fn apply_script(&mut self, script: &MoveScript, note: &str) -> Result<()> {
        for step in &script.steps {
            let found = state_hash(&self.current.word);
            if found != step.pre_hash {
                return Err(Error::HashMismatch {
                    step: self.steps,
                    expected: step.pre_hash.clone(),
                    found,
                });
            }
            self.apply(step.mv.clone(), note)?;
        }
        Ok(())
    }

    pub fn substitute(
        &mut self,
        rel: &Relation,
        at: usize,
        direction: Direction,
        note: impl Into<String>,
    ) -> Result<()> {
        let next = substitute(&self.current, rel, at, direction)?;
        let relation = InlineRelation {
            name: rel.name.clone(),
            kind: rel.kind,
            lhs: rel.lhs.to_text(),
            rhs: rel.rhs.to_text(),
        };
        self.push_step(
            Record::Substitution {
                relation,
                at,
                direction,
            },
            next,
            note.into(),
        );
        Ok(())
    }

    /// Records the invariants of the current word; they must match `expect`.
    /// With [`Expect::Nothing`] the computed values are stored as the
    /// expectation.
    pub fn checkpoint(
        &mut self,
        label: impl Into<String>,
        blowdown: bool,
        expect: Expect,
    ) -> Result<InvariantReport> {
        let label = label.into();
        let fc = count_fibers(&self.current)?;
        let rep = report(self.ambient().genus(), &fc, blowdown)?;
        let given = match expect {
            Expect::Published(e, s) => Some((e, s, Source::Published)),
            Expect::Computed(e, s) => Some((e, s, Source::Computed)),
            Expect::Nothing => None,
        };
        let (expected, source) = match given {
            Some((e, sigma, source)) => {
                if (rep.e, rep.sigma) != (e, sigma) {
                    return Err(Error::Inconsistent(format!(
                        "{} `{label}`: computed (e, σ) = ({}, {}), expected ({e}, {sigma}) [{}]",
                        self.example,
                        rep.e,
                        rep.sigma,
                        source.as_str()
                    )));
                }
                (Expected { e, sigma }, source)
            }
            None => (
                Expected {
                    e: rep.e,
                    sigma: rep.sigma,
                },
                Source::Recorded,
            ),
        };
        self.lines.push(Line::Checkpoint {
            label,
            blowdown,
            fiber_counts: fc,
            report: rep.clone(),
            expected,
            source,
        });
        Ok(rep)
    }

    fn header(&self) -> Line {
        Line::Header {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: LOG_SCHEMA_VERSION,
            example: self.example.clone(),
            ambient: (**self.start.word.ambient()).clone(),
            start: self.start.word.to_text(),
            target: "identity".into(),
        }
    }

    fn footer(&self) -> Result<Line> {
        let fc = count_fibers(&self.current)?;
        let rep = report(self.ambient().genus(), &fc, false)?;
        Ok(Line::Footer {
            final_word: self.current.word.to_text(),
            fiber_counts: fc,
            report: rep,
        })
    }

    /// The complete log. Keys are sorted so output is byte-stable.
    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        let footer = self.footer()?;
        for line in std::iter::once(&self.header())
            .chain(&self.lines)
            .chain(std::iter::once(&footer))
        {
            let value = serde_json::to_value(line).map_err(|e| Error::Format(e.to_string()))?;
            out.push_str(&serde_json::to_string(&value).map_err(|e| Error::Format(e.to_string()))?);
            out.push('\n');
        }
        Ok(out)
    }
}

/// Outcome of one checkpoint on replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointResult {
    pub label: String,
    pub report: InvariantReport,
    pub expected: Expected,
    pub source: Source,
}

impl CheckpointResult {
    pub fn matches(&self) -> bool {
        (self.report.e, self.report.sigma) == (self.expected.e, self.expected.sigma)
    }
}

#[derive(Debug, Clone)]
pub struct Replay {
    pub example: String,
    pub start: Relator,
    pub final_relator: Relator,
    pub steps: usize,
    pub checkpoints: Vec<CheckpointResult>,
    pub substitutions: Vec<Applied>,
    pub final_report: InvariantReport,
}

/// A substitution seen on replay, with the fiber counts around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub relation: String,
    pub kind: RelationKind,
    pub direction: Direction,
    pub before: FiberCounts,
    pub after: FiberCounts,
}

impl Replay {
    pub fn all_match(&self) -> bool {
        self.checkpoints.iter().all(CheckpointResult::matches)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Re-executes a log from its header, checking every digest, every stored
/// report and the final word. Checkpoints whose expectation differs from the
/// recomputed invariants are reported, not treated as errors.
pub fn replay(text: &str) -> Result<Replay> {
    let mut lines = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str::<Line>(l).map_err(|e| bad(format!("line {}: {e}", i + 1)))
        });
    let Some(first) = lines.next() else {
        return Err(bad("empty log"));
    };
    let Line::Header {
        schema_version,
        example,
        ambient,
        start,
        target,
        ..
    } = first?
    else {
        return Err(bad("log does not start with a header"));
    };
    if schema_version != LOG_SCHEMA_VERSION {
        return Err(bad(format!("log schema version {schema_version}")));
    }
    if target != "identity" {
        return Err(bad(format!("unsupported target `{target}`")));
    }
    let ambient = Arc::new(ambient);
    let start = Relator::new(TwistWord::parse(Arc::clone(&ambient), &start)?);
    let genus = ambient.genus();
    let mut cur = start.clone();
    let mut steps = 0;
    let mut checkpoints = Vec::new();
    let mut substitutions = Vec::new();
    let mut finished = None;
    for line in lines {
        if finished.is_some() {
            return Err(bad("content after footer"));
        }
        match line? {
            Line::Header { .. } => return Err(bad("second header")),
            Line::Step {
                index,
                record,
                pre_hash,
                post_hash,
                ..
            } => {
                if index != steps {
                    return Err(bad(format!("step index {index}, expected {steps}")));
                }
                let found = state_hash(&cur.word);
                if found != pre_hash {
                    return Err(Error::HashMismatch {
                        step: index,
                        expected: pre_hash,
                        found,
                    });
                }
                cur = match record {
                    Record::Move { mv } => apply_move(&cur, &mv)?,
                    Record::Substitution {
                        relation,
                        at,
                        direction,
                    } => {
                        let rel = Relation::new(
                            relation.name,
                            relation.kind,
                            TwistWord::parse(Arc::clone(&ambient), &relation.lhs)?,
                            TwistWord::parse(Arc::clone(&ambient), &relation.rhs)?,
                            "",
                        )?;
                        let next = substitute(&cur, &rel, at, direction)?;
                        substitutions.push(Applied {
                            relation: rel.name,
                            kind: rel.kind,
                            direction,
                            before: count_fibers(&cur)?,
                            after: count_fibers(&next)?,
                        });
                        next
                    }
                };
                let found = state_hash(&cur.word);
                if found != post_hash {
                    return Err(Error::HashMismatch {
                        step: index,
                        expected: post_hash,
                        found,
                    });
                }
                steps += 1;
            }
            Line::Checkpoint {
                label,
                blowdown,
                fiber_counts,
                report: stored,
                expected,
                source,
            } => {
                let fc = count_fibers(&cur)?;
                let rep = report(genus, &fc, blowdown)?;
                if fc != fiber_counts || rep != stored {
                    return Err(Error::Inconsistent(format!(
                        "checkpoint `{label}`: stored values differ from recomputed ones"
                    )));
                }
                checkpoints.push(CheckpointResult {
                    label,
                    report: rep,
                    expected,
                    source,
                });
            }
            Line::Footer {
                final_word,
                fiber_counts,
                report: stored,
            } => {
                if final_word != cur.word.to_text() {
                    return Err(Error::Inconsistent("final word differs from replay".into()));
                }
                let fc = count_fibers(&cur)?;
                let rep = report(genus, &fc, false)?;
                if fc != fiber_counts || rep != stored {
                    return Err(Error::Inconsistent("footer values differ from replay".into()));
                }
                finished = Some(rep);
            }
        }
    }
    let final_report = finished.ok_or_else(|| bad("log has no footer"))?;
    Ok(Replay {
        example,
        start,
        final_relator: cur,
        steps,
        checkpoints,
        substitutions,
        final_report,
    })
}

/// Lenient check that `text` is a sequence of JSON objects with sorted keys.
pub fn keys_sorted(text: &str) -> bool {
    fn sorted(v: &Value) -> bool {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted)
            }
            Value::Array(a) => a.iter().all(sorted),
            _ => true,
        }
    }
    text.lines().filter(|l| !l.trim().is_empty()).all(|l| {
        serde_json::from_str::<Value>(l).is_ok_and(|v| sorted(&v) && l == serde_json::to_string(&v).unwrap_or_default())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::builtin;

    fn small() -> Derivation {
        let rel = builtin("star_torus", 0).unwrap();
        let amb = Arc::clone(rel.ambient());
        let start = Relator::new(TwistWord::parse(amb, "(a a b a)^3").unwrap());
        let mut d = Derivation::new("toy", start).unwrap();
        d.checkpoint("start", false, Expect::Published(12, -8)).unwrap();
        d.substitute(&rel, 0, Direction::Forward, "star").unwrap();
        d.checkpoint("after", false, Expect::Nothing).unwrap();
        d.apply(Move::Rotate { steps: 1 }, "").unwrap();
        d
    }

    #[test]
    fn round_trip() {
        let d = small();
        let text = d.to_jsonl().unwrap();
        assert!(keys_sorted(&text));
        let r = replay(&text).unwrap();
        assert_eq!(r.steps, 2);
        assert!(r.all_match());
        assert_eq!(r.final_relator.word, d.current().word);
        assert_eq!(r.checkpoints[0].source, Source::Published);
        assert_eq!(r.checkpoints[1].source, Source::Recorded);
        assert_eq!((r.final_report.e, r.final_report.sigma), (3, -3));
    }

    #[test]
    fn wrong_expectation_rejected() {
        let mut d = small();
        assert!(matches!(d.checkpoint("x", false, Expect::Computed(0, 0)), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn tampered_log_fails() {
        let text = small().to_jsonl().unwrap();
        let tampered = text.replacen("\"at\":0", "\"at\":1", 1);
        assert_ne!(tampered, text);
        assert!(replay(&tampered).is_err());
        let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(replay(&truncated).is_err());
    }
}
