//! First-order syntax: terms, atoms and literals.
//!
//! Variables and function symbols live in disjoint lexical classes. In the
//! textual syntax variables start with an uppercase letter and every other
//! symbol starts with a lowercase one; the printer below follows that
//! convention, so anything printed here can be read back by [`crate::syntax`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-by-sharing symbol name.
pub type Symbol = Arc<str>;

pub fn sym(name: &str) -> Symbol {
    Arc::from(name)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Symbol),
    /// Function application; a constant is an application with no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(sym(name))
    }

    pub fn constant(name: &str) -> Self {
        Term::App(sym(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(sym(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// True if variable `v` occurs anywhere inside this term.
    pub fn contains_var(&self, v: &str) -> bool {
        match self {
            Term::Var(x) => &**x == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Nesting depth of function applications; variables and constants are depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Self {
        Atom { pred: sym(pred), args }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub sign: Sign,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { sign: Sign::Positive, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { sign: Sign::Negative, atom }
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn negate(&self) -> Self {
        Literal { sign: self.sign.flip(), atom: self.atom.clone() }
    }

    /// Opposite signs on the same predicate symbol and arity.
    pub fn may_complement(&self, other: &Literal) -> bool {
        self.sign != other.sign
            && self.atom.pred == other.atom.pred
            && self.atom.arity() == other.atom.arity()
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Negative {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_file_syntax() {
        let t = Term::app("f", vec![Term::constant("a"), Term::var("X")]);
        assert_eq!(t.to_string(), "f(a,X)");
        let l = Literal::neg(Atom::new("p", vec![Term::constant("a")]));
        assert_eq!(l.to_string(), "~p(a)");
        assert_eq!(Literal::pos(Atom::new("q", vec![])).to_string(), "q");
    }

    #[test]
    fn negation_is_involutive() {
        let l = Literal::pos(Atom::new("p", vec![Term::var("X")]));
        assert_eq!(l.negate().negate(), l);
        assert_ne!(l.negate(), l);
    }

    #[test]
    fn depth_counts_applications() {
        assert_eq!(Term::var("X").depth(), 0);
        assert_eq!(Term::constant("a").depth(), 0);
        let t = Term::app("f", vec![Term::app("g", vec![Term::var("X")])]);
        assert_eq!(t.depth(), 2);
    }
}
