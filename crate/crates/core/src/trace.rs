//! Reduction traces and fuel-bounded reduction outcomes, shared by the SF,
//! TRS and λ reducers.
//!
//! A trace records, per step, the whole term before, the position of the
//! contracted redex, and the whole term after. Consecutive entries chain:
//! `steps[i].after == steps[i + 1].before`.

use serde::Serialize;
use std::fmt::Display;

/// One contraction: `before` rewrites to `after` at `path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<T, P> {
    pub before: T,
    pub path: P,
    pub after: T,
}

/// The redex history of a reduction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<T, P> {
    pub steps: Vec<TraceStep<T, P>>,
}

impl<T, P> Default for Trace<T, P> {
    fn default() -> Self {
        Trace { steps: Vec::new() }
    }
}

impl<T, P> Trace<T, P> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The sequence of terms the trace passes through: the first `before`
    /// followed by every `after`.
    pub fn terms(&self) -> Vec<&T> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(&first.before);
        }
        for step in &self.steps {
            out.push(&step.after);
        }
        out
    }
}

impl<T: Clone + PartialEq, P> Trace<T, P> {
    /// First pair of indices `(i, j)` with `i < j` such that the trace visits
    /// the same term at positions `i` and `j`, if any. A revisit under a
    /// deterministic strategy certifies divergence.
    pub fn find_revisit(&self) -> Option<(usize, usize)> {
        let terms = self.terms();
        for j in 1..terms.len() {
            for i in 0..j {
                if terms[i] == terms[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Result of running a reducer with a step budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    /// A normal form was reached after `steps` contractions.
    Normal { term: T, steps: usize },
    /// The budget ran out; `term` is the last term reached. This never means
    /// the term has no normal form, only that none was found in time.
    FuelExhausted { term: T, steps: usize },
}

impl<T> Outcome<T> {
    pub fn term(&self) -> &T {
        match self {
            Outcome::Normal { term, .. } | Outcome::FuelExhausted { term, .. } => term,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            Outcome::Normal { steps, .. } | Outcome::FuelExhausted { steps, .. } => *steps,
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, Outcome::Normal { .. })
    }

    pub fn normal(&self) -> Option<&T> {
        match self {
            Outcome::Normal { term, .. } => Some(term),
            Outcome::FuelExhausted { .. } => None,
        }
    }
}

/// Path elements that know how to render themselves for the JSON trace
/// schema, where a path is an array of strings.
pub trait PathSegments {
    fn segments(&self) -> Vec<String>;
}

impl PathSegments for Vec<usize> {
    fn segments(&self) -> Vec<String> {
        self.iter().map(|i| i.to_string()).collect()
    }
}

/// JSON form of a trace: `{"steps":[{"before":…,"path":[…],"after":…}…]}`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceJson {
    pub steps: Vec<TraceStepJson>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TraceStepJson {
    pub before: String,
    pub path: Vec<String>,
    pub after: String,
}

impl<T: Display, P: PathSegments> Trace<T, P> {
    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            steps: self
                .steps
                .iter()
                .map(|s| TraceStepJson {
                    before: s.before.to_string(),
                    path: s.path.segments(),
                    after: s.after.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revisit_found_on_repeated_term() {
        let trace = Trace {
            steps: vec![
                TraceStep { before: 1, path: vec![0usize], after: 2 },
                TraceStep { before: 2, path: vec![], after: 1 },
                TraceStep { before: 1, path: vec![0], after: 2 },
            ],
        };
        assert_eq!(trace.find_revisit(), Some((0, 2)));
    }

    #[test]
    fn no_revisit_on_straight_line() {
        let trace = Trace {
            steps: vec![
                TraceStep { before: 1, path: vec![0usize], after: 2 },
                TraceStep { before: 2, path: vec![], after: 3 },
            ],
        };
        assert_eq!(trace.find_revisit(), None);
    }
}
