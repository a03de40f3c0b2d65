//! Clauses, clauses with associated substitutions, and ordered clause sets.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::subst::{Substitutable, Substitution};
use crate::term::{Literal, Symbol};

/// A disjunction of literals kept as a duplicate-free, canonically ordered set.
///
/// Literals are ordered by predicate name, then sign (positive first), then
/// the printed argument list. Two clauses are equal iff they contain the same
/// literals, whatever order they were built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

fn literal_key(l: &Literal) -> (Symbol, crate::term::Sign, String) {
    let args = l.atom.args.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
    (l.atom.pred.clone(), l.sign, args)
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort_by_cached_key(|l| (literal_key(l), l.clone()));
        literals.dedup();
        Clause { literals }
    }

    /// The empty clause.
    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.literals.contains(l)
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(|l| l.atom.is_ground())
    }

    /// A clause is fundamental when no atom occurs in it with both signs.
    pub fn is_fundamental(&self) -> bool {
        is_fundamental(self)
    }
}

/// False iff some atom occurs both positively and negatively.
pub fn is_fundamental(c: &Clause) -> bool {
    // Complementary literals are adjacent-ish under the canonical order
    // (same predicate), but a quadratic scan is plenty for clause sizes here.
    let lits = c.literals();
    !lits.iter().enumerate().any(|(i, l)| {
        lits[i + 1..].iter().any(|m| m.sign != l.sign && m.atom == l.atom)
    })
}

impl Substitutable for Clause {
    fn apply_subst(&self, s: &Substitution) -> Self {
        Clause::new(self.literals.iter().map(|l| l.apply_subst(s)))
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.literals.iter().for_each(|l| l.collect_vars(out))
    }
}

impl fmt::Display for Clause {
    /// Literals joined by `|`; the empty clause prints as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("[]");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Clause::new(iter)
    }
}

/// Serial number of a clause within one knowledge base's derivation history.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Input,
    Consensus(ClauseId, ClauseId),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Input => f.write_str("input"),
            Origin::Consensus(a, b) => write!(f, "consensus({a},{b})"),
        }
    }
}

/// A clause together with the substitution it is associated with.
///
/// Identity for set purposes is the `(clause, assoc)` pair; `id` and
/// `origin` are bookkeeping.
#[derive(Clone, Debug)]
pub struct AssocClause {
    pub id: ClauseId,
    pub clause: Clause,
    pub assoc: Substitution,
    pub origin: Origin,
}

impl AssocClause {
    /// An input clause; inputs are associated with the empty substitution.
    pub fn input(id: ClauseId, clause: Clause) -> Self {
        AssocClause { id, clause, assoc: Substitution::empty(), origin: Origin::Input }
    }

    pub fn key(&self) -> (&Clause, &Substitution) {
        (&self.clause, &self.assoc)
    }
}

impl PartialEq for AssocClause {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for AssocClause {}

impl fmt::Display for AssocClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.clause, self.assoc)
    }
}

type Key = (Clause, Substitution);

/// Insertion-ordered collection of associated clauses without duplicate
/// `(clause, assoc)` pairs.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    members: Vec<AssocClause>,
    keys: HashSet<Key>,
}

impl ClauseSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c` unless an equal `(clause, assoc)` pair is present; returns
    /// whether it was added.
    pub fn insert(&mut self, c: AssocClause) -> bool {
        if !self.keys.insert((c.clause.clone(), c.assoc.clone())) {
            return false;
        }
        self.members.push(c);
        true
    }

    pub fn contains_key(&self, clause: &Clause, assoc: &Substitution) -> bool {
        self.keys.contains(&(clause.clone(), assoc.clone()))
    }

    pub fn contains(&self, c: &AssocClause) -> bool {
        self.contains_key(&c.clause, &c.assoc)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, AssocClause> {
        self.members.iter()
    }

    pub fn members(&self) -> &[AssocClause] {
        &self.members
    }

    pub fn get(&self, idx: usize) -> Option<&AssocClause> {
        self.members.get(idx)
    }

    pub fn find_id(&self, id: ClauseId) -> Option<&AssocClause> {
        self.members.iter().find(|m| m.id == id)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&AssocClause) -> bool) {
        let keys = &mut self.keys;
        self.members.retain(|m| {
            let k = keep(m);
            if !k {
                keys.remove(&(m.clause.clone(), m.assoc.clone()));
            }
            k
        });
    }

    /// Members of `self` followed by the members of `other` not already present.
    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        let mut out = self.clone();
        for m in other {
            out.insert(m.clone());
        }
        out
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.members.iter().map(|m| &m.clause)
    }

    pub fn max_id(&self) -> Option<ClauseId> {
        self.members.iter().map(|m| m.id).max()
    }

    /// Wraps plain clauses as inputs numbered from `first_id`.
    pub fn from_inputs(clauses: impl IntoIterator<Item = Clause>, first_id: u32) -> Self {
        let mut out = ClauseSet::new();
        let mut next = first_id;
        for c in clauses {
            if out.insert(AssocClause::input(ClauseId(next), c)) {
                next += 1;
            }
        }
        out
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a AssocClause;
    type IntoIter = std::slice::Iter<'a, AssocClause>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl FromIterator<AssocClause> for ClauseSet {
    fn from_iter<T: IntoIterator<Item = AssocClause>>(iter: T) -> Self {
        let mut out = ClauseSet::new();
        for c in iter {
            out.insert(c);
        }
        out
    }
}

/// Same `(clause, assoc)` pairs, ignoring insertion order.
pub fn clause_set_equal(a: &ClauseSet, b: &ClauseSet) -> bool {
    a.len() == b.len() && a.keys.iter().all(|k| b.keys.contains(k))
}
