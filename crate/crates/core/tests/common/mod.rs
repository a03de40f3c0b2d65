//! Proptest strategies over a small fixed signature: predicates p/1, q/2,
//! r/1; functions f/1, g/2; constants a, b; variables X, Y, Z.
#![allow(dead_code)]

use pikit_core::{Atom, Clause, ClauseSet, Literal, Substitution, Term};
use proptest::prelude::*;

pub const VARS: [&str; 3] = ["X", "Y", "Z"];

pub fn var() -> impl Strategy<Value = Term> {
    prop::sample::select(&VARS[..]).prop_map(Term::var)
}

pub fn term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![var(), prop::sample::select(vec!["a", "b"]).prop_map(Term::constant)];
    leaf.prop_recursive(depth, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::app("g", vec![s, t])),
        ]
    })
    .boxed()
}

pub fn ground_term(depth: u32) -> BoxedStrategy<Term> {
    prop::sample::select(vec!["a", "b"])
        .prop_map(Term::constant)
        .prop_recursive(depth, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("f", vec![t])),
                (inner.clone(), inner).prop_map(|(s, t)| Term::app("g", vec![s, t])),
            ]
        })
        .boxed()
}

/// Every ground term of depth at most one.
pub fn small_ground_universe() -> Vec<Term> {
    let consts = [Term::constant("a"), Term::constant("b")];
    let mut out: Vec<Term> = consts.to_vec();
    for c in &consts {
        out.push(Term::app("f", vec![c.clone()]));
        for d in &consts {
            out.push(Term::app("g", vec![c.clone(), d.clone()]));
        }
    }
    out
}

pub fn atom(depth: u32) -> BoxedStrategy<Atom> {
    prop_oneof![
        term(depth).prop_map(|t| Atom::new("p", vec![t])),
        (term(depth), term(depth)).prop_map(|(s, t)| Atom::new("q", vec![s, t])),
        term(depth).prop_map(|t| Atom::new("r", vec![t])),
    ]
    .boxed()
}

pub fn literal(depth: u32) -> BoxedStrategy<Literal> {
    (any::<bool>(), atom(depth)).prop_map(|(pos, a)| if pos { Literal::pos(a) } else { Literal::neg(a) }).boxed()
}

pub fn clause(max_len: usize, depth: u32) -> BoxedStrategy<Clause> {
    prop::collection::vec(literal(depth), 0..=max_len).prop_map(Clause::new).boxed()
}

pub fn fundamental_clause(max_len: usize, depth: u32) -> BoxedStrategy<Clause> {
    prop::collection::vec(literal(depth), 1..=max_len)
        .prop_map(Clause::new)
        .prop_filter("fundamental", Clause::is_fundamental)
        .boxed()
}

pub fn clause_set(max_clauses: usize, max_len: usize, depth: u32) -> BoxedStrategy<ClauseSet> {
    prop::collection::vec(fundamental_clause(max_len, depth), 1..=max_clauses)
        .prop_map(|cs| ClauseSet::from_inputs(cs, 1))
        .boxed()
}

/// Ground literals over p/1 and r/1 with constants only: small propositional
/// alphabets in first-order dress.
pub fn ground_clause_set(max_clauses: usize, max_len: usize) -> BoxedStrategy<ClauseSet> {
    let lit = (any::<bool>(), prop::sample::select(vec!["p", "r"]), prop::sample::select(vec!["a", "b"]))
        .prop_map(|(pos, p, c)| {
            let a = Atom::new(p, vec![Term::constant(c)]);
            if pos {
                Literal::pos(a)
            } else {
                Literal::neg(a)
            }
        });
    prop::collection::vec(
        prop::collection::vec(lit, 1..=max_len).prop_map(Clause::new).prop_filter("fundamental", Clause::is_fundamental),
        1..=max_clauses,
    )
    .prop_map(|cs| ClauseSet::from_inputs(cs, 1))
    .boxed()
}

pub fn substitution(depth: u32) -> BoxedStrategy<Substitution> {
    prop::collection::btree_map(prop::sample::select(&VARS[..]), term(depth), 0..=3)
        .prop_map(|m| Substitution::from_bindings(m.into_iter().map(|(v, t)| (pikit_core::sym(v), t))))
        .boxed()
}

pub fn ground_substitution(depth: u32) -> BoxedStrategy<Substitution> {
    prop::collection::vec(ground_term(depth), 3)
        .prop_map(|ts| Substitution::from_bindings(VARS.iter().map(|v| pikit_core::sym(v)).zip(ts)))
        .boxed()
}

pub fn cases() -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases: 256, ..Default::default() }
}
