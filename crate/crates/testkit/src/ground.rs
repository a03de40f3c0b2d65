//! Herbrand grounding over a small, bounded universe.

use std::collections::{BTreeMap, BTreeSet};

use pikit_core::{sym, variables_of, Clause, ClauseSet, Substitution, Symbol, Term};

use crate::prop::{models, AtomTable, PropClause, MAX_TABLE_ATOMS};
use crate::OracleError;

/// Cap on the number of ground instances a single clause may expand to.
pub const MAX_INSTANCES: usize = 100_000;

#[derive(Clone, Debug)]
pub struct GroundUniverse {
    pub constants: Vec<Symbol>,
    pub functions: Vec<(Symbol, usize)>,
    /// Maximum nesting of function applications.
    pub depth_bound: usize,
}

impl GroundUniverse {
    pub fn new(constants: &[&str], functions: &[(&str, usize)], depth_bound: usize) -> Self {
        GroundUniverse {
            constants: constants.iter().map(|c| sym(c)).collect(),
            functions: functions.iter().map(|(f, a)| (sym(f), *a)).collect(),
            depth_bound,
        }
    }

    /// The constants and function symbols occurring in `clauses`; a dummy
    /// constant is added when there are none.
    pub fn of_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>, depth_bound: usize) -> Self {
        let mut constants = BTreeSet::new();
        let mut functions = BTreeMap::new();
        fn walk(t: &Term, constants: &mut BTreeSet<Symbol>, functions: &mut BTreeMap<Symbol, usize>) {
            if let Term::App(f, args) = t {
                if args.is_empty() {
                    constants.insert(f.clone());
                } else {
                    functions.insert(f.clone(), args.len());
                }
                args.iter().for_each(|a| walk(a, constants, functions));
            }
        }
        for c in clauses {
            for l in c.literals() {
                l.atom.args.iter().for_each(|t| walk(t, &mut constants, &mut functions));
            }
        }
        if constants.is_empty() {
            constants.insert(sym("c0"));
        }
        GroundUniverse {
            constants: constants.into_iter().collect(),
            functions: functions.into_iter().collect(),
            depth_bound,
        }
    }

    /// Every ground term of depth at most `depth_bound`.
    pub fn terms(&self) -> Vec<Term> {
        let mut all: BTreeSet<Term> = self.constants.iter().map(|c| Term::App(c.clone(), Vec::new())).collect();
        for _ in 0..self.depth_bound {
            let pool: Vec<Term> = all.iter().cloned().collect();
            let before = all.len();
            for (f, arity) in &self.functions {
                for args in tuples(&pool, *arity) {
                    all.insert(Term::App(f.clone(), args));
                }
            }
            if all.len() == before {
                break;
            }
        }
        all.into_iter().collect()
    }
}

fn tuples(pool: &[Term], k: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Every instance of `c` with its variables replaced by universe terms.
pub fn ground_instances(c: &Clause, u: &GroundUniverse) -> Result<Vec<Clause>, OracleError> {
    let vars: Vec<Symbol> = variables_of(c).into_iter().collect();
    let terms = u.terms();
    let count = terms.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
    if count > MAX_INSTANCES {
        return Err(OracleError::TooManyInstances { count, max: MAX_INSTANCES });
    }
    let mut out = BTreeSet::new();
    for choice in tuples(&terms, vars.len()) {
        let s = Substitution::from_bindings(vars.iter().cloned().zip(choice));
        out.insert(s.apply(c));
    }
    Ok(out.into_iter().collect())
}

/// Does every assignment satisfying all ground instances of `kb` also satisfy
/// some ground instance of `c`?
pub fn check_implicate_semantically(kb: &ClauseSet, c: &Clause, u: &GroundUniverse) -> Result<bool, OracleError> {
    let mut ground_kb = Vec::new();
    for m in kb {
        ground_kb.extend(ground_instances(&m.clause, u)?);
    }
    let targets = ground_instances(c, u)?;
    let mut table = AtomTable::new();
    for g in ground_kb.iter().chain(&targets) {
        g.literals().iter().for_each(|l| {
            table.intern(&l.atom);
        });
    }
    if table.len() > MAX_TABLE_ATOMS {
        return Err(OracleError::AlphabetTooLarge { atoms: table.len(), max: MAX_TABLE_ATOMS });
    }
    let ground_kb: Vec<PropClause> = ground_kb.iter().map(|g| table.encode(g)).collect();
    let targets: Vec<PropClause> = targets.iter().map(|g| table.encode(g)).collect();
    Ok(models(&ground_kb, table.len())?.into_iter().all(|a| targets.iter().any(|t| t.satisfied_by(a))))
}
