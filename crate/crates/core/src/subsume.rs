//! Clause-on-clause θ-subsumption.
//!
//! `c1` subsumes `c2` when some substitution σ over the variables of `c1`
//! maps every literal of `c1` onto a literal of `c2`. Only `c1` is
//! instantiated; the variables of `c2` are treated as rigid symbols even when
//! they share names with variables of `c1`. Several literals of `c1` may land
//! on the same literal of `c2` since clauses are sets.
//!
//! The search backtracks over literal-to-literal matchings and is complete.

use std::collections::BTreeMap;

use crate::clause::Clause;
use crate::subst::Substitution;
use crate::term::{Literal, Symbol, Term};

/// Partial matcher state. Identity bindings are tracked here (unlike in
/// [`Substitution`]) so a variable matched to itself cannot be rebound later.
type Bindings = BTreeMap<Symbol, Term>;

fn match_term(pattern: &Term, target: &Term, b: &mut Bindings) -> bool {
    match pattern {
        Term::Var(v) => match b.get(v) {
            Some(bound) => bound == target,
            None => {
                b.insert(v.clone(), target.clone());
                true
            }
        },
        Term::App(f, fa) => match target {
            Term::App(g, ga) if f == g && fa.len() == ga.len() => {
                fa.iter().zip(ga).all(|(p, t)| match_term(p, t, b))
            }
            _ => false,
        },
    }
}

fn match_literal(pattern: &Literal, target: &Literal, b: &Bindings) -> Option<Bindings> {
    if pattern.sign != target.sign
        || pattern.atom.pred != target.atom.pred
        || pattern.atom.args.len() != target.atom.args.len()
    {
        return None;
    }
    let mut next = b.clone();
    pattern
        .atom
        .args
        .iter()
        .zip(&target.atom.args)
        .all(|(p, t)| match_term(p, t, &mut next))
        .then_some(next)
}

fn search(pattern: &[Literal], target: &[Literal], b: &Bindings) -> Option<Bindings> {
    let Some((first, rest)) = pattern.split_first() else {
        return Some(b.clone());
    };
    target
        .iter()
        .filter_map(|t| match_literal(first, t, b))
        .find_map(|next| search(rest, target, &next))
}

/// Returns a witness σ with `c1σ ⊆ c2`, or `None` when no such σ exists.
pub fn subsumes(c1: &Clause, c2: &Clause) -> Option<Substitution> {
    let target = c2.literals();
    if c1.literals().iter().all(|l| c2.contains(l)) {
        return Some(Substitution::empty());
    }
    // Cheap necessary condition before backtracking.
    let every_literal_has_a_partner = c1.literals().iter().all(|p| {
        target
            .iter()
            .any(|t| t.sign == p.sign && t.atom.pred == p.atom.pred && t.atom.args.len() == p.atom.args.len())
    });
    if !every_literal_has_a_partner {
        return None;
    }
    // Most constrained literals first: fewer candidate partners means less branching.
    let mut pattern: Vec<&Literal> = c1.literals().iter().collect();
    pattern.sort_by_key(|p| {
        target.iter().filter(|t| match_literal(p, t, &Bindings::new()).is_some()).count()
    });
    let pattern: Vec<Literal> = pattern.into_iter().cloned().collect();
    search(&pattern, target, &Bindings::new()).map(Substitution::from_bindings)
}
