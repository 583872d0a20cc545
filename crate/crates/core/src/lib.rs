//! Core library of the `sflam` workbench.
//!
//! Three term languages and the translations between them:
//!
//! * [`sf`] — the SF combinatory calculus: terms over the atoms `S` and `F`,
//!   factorable forms, leftmost-outermost reduction and pattern matching.
//! * [`trs`] — first-order term rewriting over split (constructor/program)
//!   signatures, canonical-system checking and completion, and the concrete
//!   curryfied applicative presentation of SF-calculus.
//! * [`lambda`] — λ-terms with a de Bruijn internal representation,
//!   normal-order β-reduction, α-equivalence and a strong-normalisation
//!   checker.
//!
//! [`encoder`] ties the three together: it builds Scott-style canonical
//! representations of rewrite systems as closed λ-terms and composes them
//! with the SF → TRS translation to embed SF-calculus in λ-calculus.

pub mod encoder;
pub mod gen;
pub mod lambda;
pub mod sf;
pub mod trace;
pub mod trs;
