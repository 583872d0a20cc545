//! SF-calculus: binary applicative terms over the atoms `S` and `F`.
//!
//! `S M N X` rewrites to `M X (N X)`. `F` inspects the shape of its first
//! argument: `F O M N` rewrites to `M` when `O` is an atom, and
//! `F (P Q) M N` rewrites to `N P Q` when `P Q` is a factorable form. The
//! factorable forms — an atom applied to at most two arguments — are exactly
//! the shapes `F` can take apart.
//!
//! Reduction here is the leftmost-outermost strategy; it is deterministic
//! and normalising for this confluent system.

use crate::trace::{Outcome, PathSegments, Trace, TraceStep};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

/// An SF-term. Application is binary; surface syntax is left-associative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    S,
    F,
    App(Box<Term>, Box<Term>),
}

/// One move into an application node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    L,
    R,
}

/// Position of a subterm: the moves from the root to it.
pub type Path = Vec<Dir>;

impl PathSegments for Path {
    fn segments(&self) -> Vec<String> {
        self.iter()
            .map(|d| match d {
                Dir::L => "L".to_string(),
                Dir::R => "R".to_string(),
            })
            .collect()
    }
}

impl Term {
    pub fn app(left: Term, right: Term) -> Term {
        Term::App(Box::new(left), Box::new(right))
    }

    /// Number of atoms; always ≥ 1.
    pub fn size(&self) -> usize {
        match self {
            Term::S | Term::F => 1,
            Term::App(l, r) => l.size() + r.size(),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Term::S | Term::F)
    }

    /// Head of the application spine and the arguments applied to it, in
    /// order. The head is never an application.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(l, r) = head {
            args.push(&**r);
            head = l;
        }
        args.reverse();
        (head, args)
    }

    /// A factorable form is an atom applied to at most two arguments:
    /// `S`, `F`, `S M`, `F M`, `S M N` or `F M N`.
    pub fn is_factorable(&self) -> bool {
        let (head, args) = self.spine();
        head.is_atom() && args.len() <= 2
    }

    /// True iff no subterm is a redex.
    pub fn is_normal_form(&self) -> bool {
        reduce_root(self).is_none()
            && match self {
                Term::S | Term::F => true,
                Term::App(l, r) => l.is_normal_form() && r.is_normal_form(),
            }
    }
}

/// Contract the root if it is a redex.
///
/// `F (P Q) M N` only fires when `P Q` is factorable; if the first argument
/// is itself a redex the rule does not apply and the root is not a redex.
pub fn reduce_root(t: &Term) -> Option<Term> {
    let (head, args) = t.spine();
    if args.len() != 3 {
        return None;
    }
    match head {
        Term::S => {
            // S M N X -> M X (N X)
            let (m, n, x) = (args[0], args[1], args[2]);
            Some(Term::app(
                Term::app(m.clone(), x.clone()),
                Term::app(n.clone(), x.clone()),
            ))
        }
        Term::F => {
            let (o, m, n) = (args[0], args[1], args[2]);
            match o {
                // F O M N -> M when O is an atom
                Term::S | Term::F => Some(m.clone()),
                // F (P Q) M N -> N P Q when P Q is factorable
                Term::App(p, q) if o.is_factorable() => Some(Term::app(
                    Term::app(n.clone(), (**p).clone()),
                    (**q).clone(),
                )),
                _ => None,
            }
        }
        Term::App(..) => unreachable!("spine head is never an application"),
    }
}

/// Contract the leftmost-outermost redex. `None` iff `t` is a normal form.
pub fn step(t: &Term) -> Option<(Term, Path)> {
    if let Some(u) = reduce_root(t) {
        return Some((u, Vec::new()));
    }
    if let Term::App(l, r) = t {
        if let Some((l2, mut path)) = step(l) {
            path.insert(0, Dir::L);
            return Some((Term::app(l2, (**r).clone()), path));
        }
        if let Some((r2, mut path)) = step(r) {
            path.insert(0, Dir::R);
            return Some((Term::app((**l).clone(), r2), path));
        }
    }
    None
}

/// Contract the redex at `path`, if there is one there.
pub fn contract_at(t: &Term, path: &[Dir]) -> Option<Term> {
    match path.split_first() {
        None => reduce_root(t),
        Some((dir, rest)) => {
            let Term::App(l, r) = t else { return None };
            match dir {
                Dir::L => Some(Term::app(contract_at(l, rest)?, (**r).clone())),
                Dir::R => Some(Term::app((**l).clone(), contract_at(r, rest)?)),
            }
        }
    }
}

/// Every one-step reduct of `t`, paired with the contracted position,
/// enumerated in leftmost-outermost order.
pub fn one_step_reducts(t: &Term) -> Vec<(Term, Path)> {
    let mut out = Vec::new();
    if let Some(u) = reduce_root(t) {
        out.push((u, Vec::new()));
    }
    if let Term::App(l, r) = t {
        for (l2, mut path) in one_step_reducts(l) {
            path.insert(0, Dir::L);
            out.push((Term::app(l2, (**r).clone()), path));
        }
        for (r2, mut path) in one_step_reducts(r) {
            path.insert(0, Dir::R);
            out.push((Term::app((**l).clone(), r2), path));
        }
    }
    out
}

/// Iterate [`step`] up to `fuel` times without recording a trace.
pub fn reduce(t: &Term, fuel: usize) -> Outcome<Term> {
    let mut current = t.clone();
    for n in 0..fuel {
        match step(&current) {
            None => return Outcome::Normal { term: current, steps: n },
            Some((next, _)) => current = next,
        }
    }
    if step(&current).is_none() {
        Outcome::Normal { term: current, steps: fuel }
    } else {
        Outcome::FuelExhausted { term: current, steps: fuel }
    }
}

/// Iterate [`step`] up to `fuel` times, recording the full redex history.
pub fn normalize(t: &Term, fuel: usize) -> (Outcome<Term>, Trace<Term, Path>) {
    let mut current = t.clone();
    let mut steps = Vec::new();
    for n in 0..fuel {
        match step(&current) {
            None => {
                return (
                    Outcome::Normal { term: current, steps: n },
                    Trace { steps },
                )
            }
            Some((next, path)) => {
                steps.push(TraceStep { before: current, path, after: next.clone() });
                current = next;
            }
        }
    }
    let outcome = if step(&current).is_none() {
        Outcome::Normal { term: current, steps: fuel }
    } else {
        Outcome::FuelExhausted { term: current, steps: fuel }
    };
    (outcome, Trace { steps })
}

/// Search the reduction graph of `t` for a cycle, exploring breadth-first
/// until `budget` distinct terms have been interned.
///
/// A cycle is conclusive evidence of divergence. Returns the looping terms
/// `c0, …, ck` with each `c(i+1)` a one-step reduct of `ci` and `c0` a
/// one-step reduct of `ck`. The leftmost-outermost trace alone can miss
/// cycles (the strategy may grow the term forever instead of revisiting),
/// so this searches all reduction orders.
pub fn find_cycle(t: &Term, budget: usize) -> Option<Vec<Term>> {
    let mut terms: Vec<Term> = vec![t.clone()];
    let mut ids: HashMap<Term, usize> = HashMap::from([(t.clone(), 0)]);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = 0;
    while frontier < terms.len() {
        let here = terms[frontier].clone();
        for (next, _) in one_step_reducts(&here) {
            let id = match ids.get(&next) {
                Some(&id) => id,
                None if terms.len() < budget => {
                    let id = terms.len();
                    ids.insert(next.clone(), id);
                    terms.push(next);
                    edges.push(Vec::new());
                    id
                }
                // Out of budget: drop edges to unseen terms.
                None => continue,
            };
            edges[frontier].push(id);
        }
        frontier += 1;
    }
    // Colour DFS over the explored subgraph; a back edge closes a cycle.
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        White,
        Grey,
        Black,
    }
    let mut colour = vec![Colour::White; terms.len()];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..terms.len() {
        if colour[start] != Colour::White {
            continue;
        }
        colour[start] = Colour::Grey;
        stack.push((start, 0));
        while let Some(&mut (node, ref mut next_edge)) = stack.last_mut() {
            if *next_edge < edges[node].len() {
                let target = edges[node][*next_edge];
                *next_edge += 1;
                match colour[target] {
                    Colour::White => {
                        colour[target] = Colour::Grey;
                        stack.push((target, 0));
                    }
                    Colour::Grey => {
                        let from = stack.iter().position(|&(n, _)| n == target).unwrap();
                        return Some(
                            stack[from..].iter().map(|&(n, _)| terms[n].clone()).collect(),
                        );
                    }
                    Colour::Black => {}
                }
            } else {
                colour[node] = Colour::Black;
                stack.pop();
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Patterns and matching
// ---------------------------------------------------------------------------

/// An SF-term extended with named variables; the raw shape of patterns and
/// case bodies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternTerm {
    S,
    F,
    Var(String),
    App(Box<PatternTerm>, Box<PatternTerm>),
}

impl PatternTerm {
    pub fn app(left: PatternTerm, right: PatternTerm) -> PatternTerm {
        PatternTerm::App(Box::new(left), Box::new(right))
    }

    pub fn var(name: impl Into<String>) -> PatternTerm {
        PatternTerm::Var(name.into())
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            PatternTerm::S | PatternTerm::F => {}
            PatternTerm::Var(name) => {
                out.insert(name);
            }
            PatternTerm::App(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn spine(&self) -> (&PatternTerm, Vec<&PatternTerm>) {
        let mut args = Vec::new();
        let mut head = self;
        while let PatternTerm::App(l, r) = head {
            args.push(&**r);
            head = l;
        }
        args.reverse();
        (head, args)
    }

    /// Factorable with variables treated as inert: head must be `S` or `F`.
    fn is_factorable(&self) -> bool {
        let (head, args) = self.spine();
        matches!(head, PatternTerm::S | PatternTerm::F) && args.len() <= 2
    }

    /// A redex check over the extended grammar. Variable-headed spines are
    /// stuck, so only `S`- and `F`-headed full applications count.
    fn has_redex(&self) -> bool {
        let (head, args) = self.spine();
        let root_redex = args.len() == 3
            && match head {
                PatternTerm::S => true,
                PatternTerm::F => match args[0] {
                    PatternTerm::S | PatternTerm::F => true,
                    PatternTerm::App(..) => args[0].is_factorable(),
                    PatternTerm::Var(_) => false,
                },
                _ => false,
            };
        root_redex
            || match self {
                PatternTerm::App(l, r) => l.has_redex() || r.has_redex(),
                _ => false,
            }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("variable `{0}` occurs more than once; patterns must be linear")]
    NonLinear(String),
    #[error("pattern contains a redex; patterns must be normal forms")]
    NotNormal,
}

/// A linear normal form with variables: the left-hand side of a case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    term: PatternTerm,
}

impl Pattern {
    pub fn new(term: PatternTerm) -> Result<Pattern, PatternError> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![&term];
        while let Some(node) = stack.pop() {
            match node {
                PatternTerm::Var(name) => {
                    if !seen.insert(name.clone()) {
                        return Err(PatternError::NonLinear(name.clone()));
                    }
                }
                PatternTerm::App(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                _ => {}
            }
        }
        if term.has_redex() {
            return Err(PatternError::NotNormal);
        }
        Ok(Pattern { term })
    }

    pub fn term(&self) -> &PatternTerm {
        &self.term
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        self.term.variables()
    }
}

/// Result of matching a closed term against a pattern.
///
/// `Undefined` is distinct from `Fail`: the failure clause only applies to
/// matchable scrutinees, so matching against e.g. a redex has no defined
/// outcome at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Success(BTreeMap<String, Term>),
    Fail,
    Undefined,
}

/// Match `u` against pattern `p`, clause by clause: variables bind the whole
/// scrutinee, equal atoms match emptily, compounds match componentwise, and
/// any other matchable scrutinee fails. Failure absorbs through the
/// componentwise union; undefinedness propagates.
pub fn match_pattern(p: &Pattern, u: &Term) -> MatchOutcome {
    match_term(&p.term, u)
}

fn match_term(p: &PatternTerm, u: &Term) -> MatchOutcome {
    match p {
        PatternTerm::Var(name) => {
            MatchOutcome::Success(BTreeMap::from([(name.clone(), u.clone())]))
        }
        PatternTerm::S | PatternTerm::F => {
            let same = matches!(
                (p, u),
                (PatternTerm::S, Term::S) | (PatternTerm::F, Term::F)
            );
            if same {
                MatchOutcome::Success(BTreeMap::new())
            } else if u.is_factorable() {
                MatchOutcome::Fail
            } else {
                MatchOutcome::Undefined
            }
        }
        PatternTerm::App(pl, pr) => match u {
            Term::App(ul, ur) if u.is_factorable() => {
                join(match_term(pl, ul), match_term(pr, ur))
            }
            _ if u.is_factorable() => MatchOutcome::Fail,
            _ => MatchOutcome::Undefined,
        },
    }
}

fn join(a: MatchOutcome, b: MatchOutcome) -> MatchOutcome {
    use MatchOutcome::*;
    match (a, b) {
        (Undefined, _) | (_, Undefined) => Undefined,
        (Fail, _) | (_, Fail) => Fail,
        (Success(mut left), Success(right)) => {
            // Domains are disjoint for linear patterns.
            for (name, term) in right {
                let previous = left.insert(name, term);
                debug_assert!(previous.is_none());
            }
            Success(left)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("case is undefined on this input: the scrutinee is not matchable")]
    UndefinedOnInput,
    #[error("case body uses variable `{0}` that the pattern does not bind")]
    UnboundVariable(String),
}

/// The symbolic function of a case `p => body`: on match success apply the
/// substitution to the body, on failure return the scrutinee unchanged.
pub fn apply_case(p: &Pattern, body: &PatternTerm, u: &Term) -> Result<Term, CaseError> {
    let bound = p.variables();
    for v in body.variables() {
        if !bound.contains(v) {
            return Err(CaseError::UnboundVariable(v.to_string()));
        }
    }
    match match_pattern(p, u) {
        MatchOutcome::Success(subst) => Ok(instantiate(body, &subst)),
        MatchOutcome::Fail => Ok(u.clone()),
        MatchOutcome::Undefined => Err(CaseError::UndefinedOnInput),
    }
}

fn instantiate(body: &PatternTerm, subst: &BTreeMap<String, Term>) -> Term {
    match body {
        PatternTerm::S => Term::S,
        PatternTerm::F => Term::F,
        PatternTerm::Var(name) => subst[name].clone(),
        PatternTerm::App(l, r) => Term::app(instantiate(l, subst), instantiate(r, subst)),
    }
}

// ---------------------------------------------------------------------------
// Surface syntax
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parse a closed SF-term: whitespace-separated application, left
/// associative, `(` `)` for grouping, atoms `S` and `F`.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let pattern = parse_pattern_term(text)?;
    erase(&pattern).ok_or_else(|| ParseError {
        pos: 0,
        msg: "variables are not allowed in a plain SF-term".to_string(),
    })
}

fn erase(p: &PatternTerm) -> Option<Term> {
    match p {
        PatternTerm::S => Some(Term::S),
        PatternTerm::F => Some(Term::F),
        PatternTerm::Var(_) => None,
        PatternTerm::App(l, r) => Some(Term::app(erase(l)?, erase(r)?)),
    }
}

/// Parse a pattern: the term grammar plus lowercase identifiers as
/// variables. Linearity and normality are validated.
pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let term = parse_pattern_term(text)?;
    Pattern::new(term).map_err(|e| ParseError { pos: 0, msg: e.to_string() })
}

/// Parse the extended grammar without validating pattern invariants; case
/// bodies are such terms.
pub fn parse_pattern_term(text: &str) -> Result<PatternTerm, ParseError> {
    let mut parser = Parser { text, bytes: text.as_bytes(), pos: 0 };
    parser.skip_ws();
    let term = parser.term()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(term)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<PatternTerm, ParseError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b')') | None => return Ok(acc),
                _ => acc = PatternTerm::app(acc, self.atom()?),
            }
        }
    }

    fn atom(&mut self) -> Result<PatternTerm, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(PatternTerm::S)
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(PatternTerm::F)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'')
                {
                    self.pos += 1;
                }
                Ok(PatternTerm::var(&self.text[start..self.pos]))
            }
            Some(_) => Err(self.err("expected `S`, `F`, a variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_app(self, f, false)
    }
}

fn fmt_app(t: &Term, f: &mut fmt::Formatter<'_>, arg_position: bool) -> fmt::Result {
    match t {
        Term::S => write!(f, "S"),
        Term::F => write!(f, "F"),
        Term::App(l, r) => {
            if arg_position {
                write!(f, "(")?;
            }
            fmt_app(l, f, false)?;
            write!(f, " ")?;
            fmt_app(r, f, true)?;
            if arg_position {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pattern(self, f, false)
    }
}

fn fmt_pattern(t: &PatternTerm, f: &mut fmt::Formatter<'_>, arg_position: bool) -> fmt::Result {
    match t {
        PatternTerm::S => write!(f, "S"),
        PatternTerm::F => write!(f, "F"),
        PatternTerm::Var(name) => write!(f, "{name}"),
        PatternTerm::App(l, r) => {
            if arg_position {
                write!(f, "(")?;
            }
            fmt_pattern(l, f, false)?;
            write!(f, " ")?;
            fmt_pattern(r, f, true)?;
            if arg_position {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(text: &str) -> Term {
        parse(text).unwrap()
    }

    /// `I = S (F F) (F F)` reduces any argument to itself in two steps.
    fn identity() -> Term {
        t("S (F F) (F F)")
    }

    /// `omega omega` with `omega = S I I` has no normal form.
    fn omega_omega() -> Term {
        let i = identity();
        let omega = Term::app(Term::app(Term::S, i.clone()), i);
        Term::app(omega.clone(), omega)
    }

    #[test]
    fn factorable_forms() {
        assert!(t("S").is_factorable());
        assert!(t("F (S F)").is_factorable());
        assert!(t("S F F").is_factorable());
        // A full application of S is a redex, not a factorable form.
        assert!(!t("S F F S").is_factorable());
    }

    #[test]
    fn root_reduction_s_rule() {
        assert_eq!(reduce_root(&t("S F F S")), Some(t("F S (F S)")));
    }

    #[test]
    fn root_reduction_f_atomic() {
        assert_eq!(reduce_root(&t("F S S F")), Some(t("S")));
        // K-behaviour: F F M N -> M.
        assert_eq!(reduce_root(&t("F F S F")), Some(t("S")));
    }

    #[test]
    fn root_reduction_f_compound() {
        // F (P Q) M N -> N P Q.
        assert_eq!(reduce_root(&t("F (S F) S F")), Some(t("F S F")));
        assert_eq!(reduce_root(&t("F (S F F) S F")), Some(t("F (S F) F")));
    }

    #[test]
    fn f_rule_blocked_on_redex_argument() {
        // The first argument is a redex, not a factorable form.
        assert_eq!(reduce_root(&t("F (S F F S) F F")), None);
        // It is still reducible inside, so the term is not normal.
        assert!(!t("F (S F F S) F F").is_normal_form());
    }

    #[test]
    fn step_takes_whole_term_before_subterms() {
        let (next, path) = step(&t("F (S F) S F")).unwrap();
        assert_eq!(next, t("F S F"));
        assert!(path.is_empty());
    }

    #[test]
    fn step_on_atom_is_absent() {
        assert_eq!(step(&t("S")), None);
    }

    #[test]
    fn step_prefers_left_subterm() {
        let (next, path) = step(&t("(F F S F) (F F S F)")).unwrap();
        assert_eq!(next, t("S (F F S F)"));
        assert_eq!(path, vec![Dir::L]);
    }

    #[test]
    fn normalize_two_step_example() {
        let (outcome, trace) = normalize(&t("S (F F) S F"), 10);
        assert_eq!(outcome, Outcome::Normal { term: t("F"), steps: 2 });
        assert_eq!(trace.steps[0].after, t("F F F (S F)"));
    }

    #[test]
    fn normalize_k_behaviour() {
        let (outcome, _) = normalize(&t("F F S F"), 10);
        assert_eq!(outcome, Outcome::Normal { term: t("S"), steps: 1 });
    }

    #[test]
    fn identity_reduces_argument_to_itself() {
        let applied = Term::app(identity(), t("S F"));
        assert_eq!(reduce(&applied, 10), Outcome::Normal { term: t("S F"), steps: 2 });
    }

    #[test]
    fn omega_omega_exhausts_any_fuel() {
        for fuel in [1, 10, 500] {
            let outcome = reduce(&omega_omega(), fuel);
            assert!(matches!(outcome, Outcome::FuelExhausted { .. }), "fuel {fuel}");
        }
    }

    #[test]
    fn omega_omega_has_a_replayable_cycle() {
        let cycle = find_cycle(&omega_omega(), 2_000).expect("cycle");
        assert!(!cycle.is_empty());
        for window in cycle.windows(2) {
            assert!(one_step_reducts(&window[0]).iter().any(|(u, _)| *u == window[1]));
        }
        let last = cycle.last().unwrap();
        assert!(one_step_reducts(last).iter().any(|(u, _)| *u == cycle[0]));
    }

    #[test]
    fn normal_form_has_no_cycle() {
        assert_eq!(find_cycle(&t("S (F F) S"), 1_000), None);
    }

    #[test]
    fn trace_steps_chain() {
        let (_, trace) = normalize(&t("S (F F) S F"), 10);
        for window in trace.steps.windows(2) {
            assert_eq!(window[0].after, window[1].before);
        }
        for step in &trace.steps {
            assert_eq!(contract_at(&step.before, &step.path), Some(step.after.clone()));
        }
    }

    #[test]
    fn match_variable_binds_scrutinee() {
        let p = parse_pattern("x").unwrap();
        assert_eq!(
            match_pattern(&p, &t("S")),
            MatchOutcome::Success(BTreeMap::from([("x".to_string(), t("S"))]))
        );
    }

    #[test]
    fn match_compound_componentwise() {
        let p = parse_pattern("x y").unwrap();
        assert_eq!(
            match_pattern(&p, &t("S F")),
            MatchOutcome::Success(BTreeMap::from([
                ("x".to_string(), t("S")),
                ("y".to_string(), t("F")),
            ]))
        );
    }

    #[test]
    fn match_distinct_atoms_fail() {
        let p = parse_pattern("F").unwrap();
        assert_eq!(match_pattern(&p, &t("S")), MatchOutcome::Fail);
    }

    #[test]
    fn match_shape_mismatch_on_matchable_fails() {
        let p = parse_pattern("x y").unwrap();
        assert_eq!(match_pattern(&p, &t("S")), MatchOutcome::Fail);
        let atom = parse_pattern("S").unwrap();
        assert_eq!(match_pattern(&atom, &t("S F")), MatchOutcome::Fail);
    }

    #[test]
    fn match_redex_scrutinee_is_undefined() {
        let p = parse_pattern("S").unwrap();
        assert_eq!(match_pattern(&p, &t("S F F S")), MatchOutcome::Undefined);
        // Undefinedness propagates out of component matches.
        let deep = parse_pattern("F x").unwrap();
        assert_eq!(match_pattern(&deep, &t("F (S F F S)")), MatchOutcome::Undefined);
    }

    #[test]
    fn case_swaps_components() {
        let p = parse_pattern("x y").unwrap();
        let body = parse_pattern_term("y x").unwrap();
        assert_eq!(apply_case(&p, &body, &t("S F")), Ok(t("F S")));
    }

    #[test]
    fn case_failure_is_identity() {
        let p = parse_pattern("S").unwrap();
        let body = parse_pattern_term("F").unwrap();
        assert_eq!(apply_case(&p, &body, &t("F")), Ok(t("F")));
    }

    #[test]
    fn case_undefined_on_redex() {
        let p = parse_pattern("S").unwrap();
        let body = parse_pattern_term("F").unwrap();
        assert_eq!(apply_case(&p, &body, &t("S F F S")), Err(CaseError::UndefinedOnInput));
    }

    #[test]
    fn case_rejects_unbound_body_variable() {
        let p = parse_pattern("x").unwrap();
        let body = parse_pattern_term("x z").unwrap();
        assert_eq!(
            apply_case(&p, &body, &t("S")),
            Err(CaseError::UnboundVariable("z".to_string()))
        );
    }

    #[test]
    fn patterns_must_be_linear() {
        let term = parse_pattern_term("x x").unwrap();
        assert_eq!(Pattern::new(term), Err(PatternError::NonLinear("x".to_string())));
    }

    #[test]
    fn patterns_must_be_normal() {
        // A fully applied S is a redex even with variable arguments.
        let term = parse_pattern_term("S x y z").unwrap();
        assert_eq!(Pattern::new(term), Err(PatternError::NotNormal));
        // A variable-headed spine is stuck, hence normal.
        let stuck = parse_pattern_term("F x y z").unwrap();
        assert!(Pattern::new(stuck).is_ok());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            t("S (F F) S"),
            Term::app(Term::app(Term::S, Term::app(Term::F, Term::F)), Term::S)
        );
        let err = parse("S ((").unwrap_err();
        assert!(err.pos > 0);
    }

    #[test]
    fn display_minimal_parens() {
        for text in ["S", "F S", "S (F F) S", "F (S (F S)) F", "S F F S"] {
            assert_eq!(t(text).to_string(), text);
        }
    }

    #[test]
    fn trace_json_schema() {
        let (_, trace) = normalize(&t("(F F S F) S"), 10);
        let json = serde_json::to_string(&trace.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"steps":[{"before":"(F F S F) S","path":["L"],"after":"S S"}]}"#
        );
    }
}
