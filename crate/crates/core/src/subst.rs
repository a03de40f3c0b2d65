//! Substitutions and their application to syntax.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::term::{Atom, Literal, Symbol, Term};

/// Finite map from variables to terms.
///
/// Identity bindings are never stored, so two substitutions are equal exactly
/// when their binding maps are equal. That whole-map comparison is what the
/// association gate of consensus relies on: `[X->b]` and `[X->b, Z->f(a)]`
/// are different even when applied to a term that does not mention `Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<Symbol, Term>,
}

impl Substitution {
    /// The empty substitution.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a substitution from raw bindings, dropping identities.
    ///
    /// No idempotence is enforced; use [`crate::unify`] when a most general
    /// unifier is wanted.
    pub fn from_bindings<I>(bindings: I) -> Self
    where
        I: IntoIterator<Item = (Symbol, Term)>,
    {
        let bindings = bindings
            .into_iter()
            .filter(|(v, t)| !matches!(t, Term::Var(w) if w == v))
            .collect();
        Substitution { bindings }
    }

    pub fn singleton(var: Symbol, term: Term) -> Self {
        Self::from_bindings([(var, term)])
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Symbol> {
        self.bindings.keys()
    }

    pub fn apply<T: Substitutable>(&self, t: &T) -> T {
        if self.is_empty() {
            return t.clone();
        }
        t.apply_subst(self)
    }

    /// `self` followed by `then`: applying the result equals applying `self`
    /// and afterwards `then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out: BTreeMap<Symbol, Term> = BTreeMap::new();
        for (v, t) in &self.bindings {
            let t = then.apply(t);
            if !matches!(&t, Term::Var(w) if w == v) {
                out.insert(v.clone(), t);
            }
        }
        for (v, t) in &then.bindings {
            if !self.bindings.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        Substitution { bindings: out }
    }

    /// Applying twice gives the same result as applying once.
    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| self.bindings.keys().all(|v| !t.contains_var(v)))
    }

    pub(crate) fn insert_raw(&mut self, var: Symbol, term: Term) {
        self.bindings.insert(var, term);
    }

    pub(crate) fn map_ranges(&mut self, f: impl Fn(&Term) -> Term) {
        for t in self.bindings.values_mut() {
            *t = f(t);
        }
    }
}

/// Compares two substitutions by their normalized binding maps.
pub fn subst_equal(a: &Substitution, b: &Substitution) -> bool {
    a == b
}

impl fmt::Display for Substitution {
    /// `X->b,Z->f(a)`; the empty substitution prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}->{t}")?;
        }
        Ok(())
    }
}

/// Anything a substitution can be applied to.
pub trait Substitutable: Clone {
    fn apply_subst(&self, s: &Substitution) -> Self;
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>);
}

/// The set of (free) variables of any piece of syntax.
pub fn variables_of<T: Substitutable>(t: &T) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    t.collect_vars(&mut out);
    out
}

impl Substitutable for Term {
    fn apply_subst(&self, s: &Substitution) -> Self {
        match self {
            Term::Var(v) => s.bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.apply_subst(s)).collect()),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        Term::collect_vars(self, out)
    }
}

impl Substitutable for Atom {
    fn apply_subst(&self, s: &Substitution) -> Self {
        Atom { pred: self.pred.clone(), args: self.args.iter().map(|a| a.apply_subst(s)).collect() }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.args.iter().for_each(|a| a.collect_vars(out))
    }
}

impl Substitutable for Literal {
    fn apply_subst(&self, s: &Substitution) -> Self {
        Literal { sign: self.sign, atom: self.atom.apply_subst(s) }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.atom.collect_vars(out)
    }
}

impl<T: Substitutable> Substitutable for Vec<T> {
    fn apply_subst(&self, s: &Substitution) -> Self {
        self.iter().map(|x| x.apply_subst(s)).collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.iter().for_each(|x| x.collect_vars(out))
    }
}
