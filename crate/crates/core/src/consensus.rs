//! Consensus of two associated clauses.
//!
//! For a complementary pair `r ∈ C1`, `s ∈ C2` with mgu σ the resolvent is
//! `((C1 - {r}) ∪ (C2 - {s}))σ`. It is only a consensus when it is
//! fundamental, and it is only defined when the parents' associations agree
//! after σ: `σ1σ = σ2σ`, compared as whole binding maps. The consensus is
//! then associated with that common substitution.

use std::fmt;

use crate::clause::{is_fundamental, AssocClause, Clause, ClauseId, Origin};
use crate::subst::{subst_equal, Substitution};
use crate::term::Literal;
use crate::unify::unify_atoms;

/// A pair of literals, one from each clause, whose atoms unify under `mgu`
/// and whose signs are opposite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryPair {
    pub left: Literal,
    pub right: Literal,
    pub mgu: Substitution,
}

/// All complementary pairs between `c1` and `c2`, in canonical literal order
/// of `c1`, then of `c2`. The mgu orients variable-variable bindings from
/// `c1`'s side to `c2`'s.
pub fn complementary_pairs(c1: &AssocClause, c2: &AssocClause) -> Vec<ComplementaryPair> {
    let mut out = Vec::new();
    for r in c1.clause.literals() {
        for s in c2.clause.literals() {
            if !r.may_complement(s) {
                continue;
            }
            if let Ok(mgu) = unify_atoms(&r.atom, &s.atom) {
                out.push(ComplementaryPair { left: r.clone(), right: s.clone(), mgu });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsensusResult {
    pub clause: Clause,
    /// `compose(parent1.assoc, mgu)`, equal to `compose(parent2.assoc, mgu)`.
    pub assoc: Substitution,
    pub parents: (ClauseId, ClauseId),
    pub mgu: Substitution,
    pub resolved_upon: (Literal, Literal),
}

impl ConsensusResult {
    pub fn into_assoc_clause(self, id: ClauseId) -> AssocClause {
        AssocClause {
            id,
            clause: self.clause,
            assoc: self.assoc,
            origin: Origin::Consensus(self.parents.0, self.parents.1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsensusOutcome {
    Resolvent(ConsensusResult),
    /// The parents' associations disagree after the mgu.
    Blocked,
    /// The resolvent contains an atom with both signs.
    NonFundamental,
}

/// Consensus of `c1` and `c2` on one complementary pair.
pub fn consensus(c1: &AssocClause, c2: &AssocClause, pair: &ComplementaryPair) -> ConsensusOutcome {
    let assoc = c1.assoc.compose(&pair.mgu);
    if !subst_equal(&assoc, &c2.assoc.compose(&pair.mgu)) {
        return ConsensusOutcome::Blocked;
    }
    let rest_left = c1.clause.literals().iter().filter(|l| **l != pair.left);
    let rest_right = c2.clause.literals().iter().filter(|l| **l != pair.right);
    let clause = Clause::new(rest_left.chain(rest_right).map(|l| pair.mgu.apply(l)));
    if !is_fundamental(&clause) {
        return ConsensusOutcome::NonFundamental;
    }
    ConsensusOutcome::Resolvent(ConsensusResult {
        clause,
        assoc,
        parents: (c1.id, c2.id),
        mgu: pair.mgu.clone(),
        resolved_upon: (pair.left.clone(), pair.right.clone()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AttemptOutcome {
    Added,
    Blocked,
    NonFundamental,
    Duplicate,
}

impl fmt::Display for AttemptOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttemptOutcome::Added => "added",
            AttemptOutcome::Blocked => "blocked",
            AttemptOutcome::NonFundamental => "non_fundamental",
            AttemptOutcome::Duplicate => "duplicate",
        })
    }
}

/// One consensus attempt, as written to trace files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub round: usize,
    pub parents: (ClauseId, ClauseId),
    pub mgu: Substitution,
    pub outcome: AttemptOutcome,
    /// Id of the clause that was added, for `Added`.
    pub added: Option<ClauseId>,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ROUND {}: ({}, {}) mgu={{{}}} -> {}",
            self.round, self.parents.0, self.parents.1, self.mgu, self.outcome
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_clause;
    use crate::term::sym;
    use crate::term::Term;

    fn ac(id: u32, text: &str, assoc: Substitution) -> AssocClause {
        AssocClause { id: ClauseId(id), clause: parse_clause(text).unwrap(), assoc, origin: Origin::Input }
    }

    fn eps() -> Substitution {
        Substitution::empty()
    }

    fn b(pairs: &[(&str, &str)]) -> Substitution {
        Substitution::from_bindings(
            pairs.iter().map(|(v, t)| (sym(v), crate::syntax::parse_term(t).unwrap())),
        )
    }

    #[test]
    fn pairs_textbook_example() {
        let c1 = ac(1, "r(b,X)|~q(g(a))", eps());
        let c2 = ac(2, "r(a,b)|q(Z)", eps());
        let pairs = complementary_pairs(&c1, &c2);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].left.to_string(), "~q(g(a))");
        assert_eq!(pairs[0].right.to_string(), "q(Z)");
        assert_eq!(pairs[0].mgu, b(&[("Z", "g(a)")]));
        match consensus(&c1, &c2, &pairs[0]) {
            ConsensusOutcome::Resolvent(r) => assert_eq!(r.clause.to_string(), "r(a,b)|r(b,X)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn same_sign_gives_no_pairs() {
        assert!(complementary_pairs(&ac(1, "p(a)", eps()), &ac(2, "p(b)", eps())).is_empty());
        assert!(complementary_pairs(&ac(1, "p(a)", eps()), &ac(2, "~p(b)", eps())).is_empty());
    }

    #[test]
    fn variable_pair_orientation() {
        let pairs = complementary_pairs(&ac(1, "q(Y)", eps()), &ac(2, "~p(a)|~q(Z)", eps()));
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].left.to_string(), "q(Y)");
        assert_eq!(pairs[0].right.to_string(), "~q(Z)");
        assert_eq!(pairs[0].mgu, b(&[("Y", "Z")]));
    }

    #[test]
    fn first_consensus_of_closure_example() {
        let c1 = ac(1, "p(X,a)|~q(a,f(X))", eps());
        let c2 = ac(2, "~p(b,a)|r(b,Z)", eps());
        let pairs = complementary_pairs(&c1, &c2);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].mgu, b(&[("X", "b")]));
        let ConsensusOutcome::Resolvent(r) = consensus(&c1, &c2, &pairs[0]) else {
            panic!("expected a resolvent")
        };
        assert_eq!(r.clause, parse_clause("~q(a,f(b))|r(b,Z)").unwrap());
        assert_eq!(r.assoc, b(&[("X", "b")]));
        assert_eq!(r.parents, (ClauseId(1), ClauseId(2)));
    }

    #[test]
    fn mismatched_associations_block() {
        let c1 = ac(1, "p(X,a)|~q(a,f(X))", eps());
        let c6 = ac(6, "~p(b,a)|q(f(a),f(a))", b(&[("X", "b"), ("Z", "f(a)")]));
        let pairs = complementary_pairs(&c1, &c6);
        let p = pairs.iter().find(|p| p.left.atom.pred.as_ref() == "p").unwrap();
        assert_eq!(p.mgu, b(&[("X", "b")]));
        assert_eq!(consensus(&c1, &c6, p), ConsensusOutcome::Blocked);
    }

    #[test]
    fn tautological_resolvent_is_discarded() {
        let c1 = ac(1, "p(X)|q(X)", eps());
        let c2 = ac(2, "~p(a)|~q(a)", eps());
        let pairs = complementary_pairs(&c1, &c2);
        let p = pairs.iter().find(|p| p.left.atom.pred.as_ref() == "p").unwrap();
        assert_eq!(p.mgu, Substitution::singleton(sym("X"), Term::constant("a")));
        assert_eq!(consensus(&c1, &c2, p), ConsensusOutcome::NonFundamental);
    }

    #[test]
    fn unit_clash_yields_empty_clause() {
        let c1 = ac(1, "p", eps());
        let c2 = ac(2, "~p", eps());
        let pairs = complementary_pairs(&c1, &c2);
        let ConsensusOutcome::Resolvent(r) = consensus(&c1, &c2, &pairs[0]) else {
            panic!("expected the empty clause")
        };
        assert!(r.clause.is_empty());
    }

    #[test]
    fn trace_line_format() {
        let rec = TraceRecord {
            round: 2,
            parents: (ClauseId(3), ClauseId(4)),
            mgu: b(&[("X", "b"), ("Z", "f(a)")]),
            outcome: AttemptOutcome::Added,
            added: Some(ClauseId(7)),
        };
        assert_eq!(rec.to_string(), "ROUND 2: (3, 4) mgu={X->b,Z->f(a)} -> added");
    }
}
