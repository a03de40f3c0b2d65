//! Syntactic unification with occurs check.

use thiserror::Error;

use crate::subst::Substitution;
use crate::term::{Atom, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("cannot unify {left} with {right}")]
    Clash { left: String, right: String },
    #[error("variable {var} occurs in {term}")]
    Occurs { var: Symbol, term: String },
}

/// Most general unifier of two terms.
///
/// When a variable meets a variable the left one is bound to the right one,
/// so `unify(Q(Y), Q(Z))` yields `[Y->Z]`. The result is idempotent.
pub fn unify_terms(left: &Term, right: &Term) -> Result<Substitution, UnifyError> {
    let mut subst = Substitution::empty();
    solve(&mut subst, vec![(left.clone(), right.clone())])?;
    Ok(subst)
}

/// Most general unifier of two atoms; predicate symbol and arity must agree.
pub fn unify_atoms(left: &Atom, right: &Atom) -> Result<Substitution, UnifyError> {
    if left.pred != right.pred || left.args.len() != right.args.len() {
        return Err(UnifyError::Clash { left: left.to_string(), right: right.to_string() });
    }
    let mut subst = Substitution::empty();
    let pending = left.args.iter().cloned().zip(right.args.iter().cloned()).collect();
    solve(&mut subst, pending)?;
    Ok(subst)
}

fn solve(subst: &mut Substitution, mut pending: Vec<(Term, Term)>) -> Result<(), UnifyError> {
    // Processed front to back so bindings are discovered left to right.
    pending.reverse();
    while let Some((l, r)) = pending.pop() {
        let l = subst.apply(&l);
        let r = subst.apply(&r);
        if l == r {
            continue;
        }
        match (l, r) {
            (Term::Var(v), t) | (t, Term::Var(v)) => bind(subst, v, t)?,
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return Err(UnifyError::Clash {
                        left: Term::App(f, fa).to_string(),
                        right: Term::App(g, ga).to_string(),
                    });
                }
                pending.extend(fa.into_iter().zip(ga).rev());
            }
        }
    }
    Ok(())
}

fn bind(subst: &mut Substitution, var: Symbol, term: Term) -> Result<(), UnifyError> {
    if term.contains_var(&var) {
        return Err(UnifyError::Occurs { var, term: term.to_string() });
    }
    let single = Substitution::singleton(var.clone(), term.clone());
    subst.map_ranges(|t| single.apply(t));
    subst.insert_raw(var, term);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::sym;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn c(n: &str) -> Term {
        Term::constant(n)
    }
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }

    #[test]
    fn paper_style_example() {
        let l = Atom::new("p", vec![v("X"), f(c("a"))]);
        let r = Atom::new("p", vec![c("b"), v("Y")]);
        let mgu = unify_atoms(&l, &r).unwrap();
        let expected =
            Substitution::from_bindings([(sym("X"), c("b")), (sym("Y"), f(c("a")))]);
        assert_eq!(mgu, expected);
        assert_eq!(mgu.apply(&l), mgu.apply(&r));
    }

    #[test]
    fn identical_atoms_give_empty() {
        let a = Atom::new("p", vec![c("a")]);
        assert_eq!(unify_atoms(&a, &a).unwrap(), Substitution::empty());
    }

    #[test]
    fn occurs_check_fails() {
        let l = Atom::new("p", vec![v("X")]);
        let r = Atom::new("p", vec![f(v("X"))]);
        assert!(matches!(unify_atoms(&l, &r), Err(UnifyError::Occurs { .. })));
    }

    #[test]
    fn clashes() {
        assert!(matches!(unify_terms(&c("a"), &c("b")), Err(UnifyError::Clash { .. })));
        let l = Atom::new("p", vec![c("a")]);
        let r = Atom::new("q", vec![c("a")]);
        assert!(matches!(unify_atoms(&l, &r), Err(UnifyError::Clash { .. })));
        let r2 = Atom::new("p", vec![c("a"), c("a")]);
        assert!(unify_atoms(&l, &r2).is_err());
    }

    #[test]
    fn left_variable_binds_to_right() {
        let mgu = unify_terms(&v("Y"), &v("Z")).unwrap();
        assert_eq!(mgu, Substitution::singleton(sym("Y"), v("Z")));
        let mgu = unify_terms(&f(v("X")), &v("Z")).unwrap();
        assert_eq!(mgu, Substitution::singleton(sym("Z"), f(v("X"))));
    }

    #[test]
    fn result_is_idempotent_through_chains() {
        // X = Y, Y = f(Z), Z = a
        let l = Term::app("g", vec![v("X"), v("Y"), v("Z")]);
        let r = Term::app("g", vec![v("Y"), f(v("Z")), c("a")]);
        let mgu = unify_terms(&l, &r).unwrap();
        assert!(mgu.is_idempotent());
        assert_eq!(mgu.compose(&mgu), mgu);
        assert_eq!(mgu.apply(&l), mgu.apply(&r));
        assert_eq!(mgu.get("X"), Some(&f(c("a"))));
    }

    #[test]
    fn indirect_occurs_check() {
        // X = f(Y), Y = f(X)
        let l = Term::app("g", vec![v("X"), v("Y")]);
        let r = Term::app("g", vec![f(v("Y")), f(v("X"))]);
        assert!(matches!(unify_terms(&l, &r), Err(UnifyError::Occurs { .. })));
    }
}
