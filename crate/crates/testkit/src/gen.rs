//! Seeded random clause and knowledge-base generators.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pikit_core::{sym, Atom, Clause, ClauseSet, Literal, Substitution, Term};

const VAR_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
const CONST_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "k"];
const FUN_NAMES: [&str; 4] = ["f", "g", "h", "j"];

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub num_predicates: usize,
    /// 0 gives propositional atoms; otherwise predicate `i` has arity
    /// `1 + i % max_arity`.
    pub max_arity: usize,
    pub num_variables: usize,
    pub num_constants: usize,
    /// Unary function symbols available for compound terms.
    pub num_functions: usize,
    /// Maximum nesting of function applications inside an argument.
    pub max_depth: usize,
    pub clause_len_range: RangeInclusive<usize>,
    pub kb_size_range: RangeInclusive<usize>,
    pub seed: u64,
}

impl GenConfig {
    /// Propositional instances over `atoms` atoms.
    pub fn propositional(atoms: usize, clause_len: RangeInclusive<usize>, kb_size: RangeInclusive<usize>, seed: u64) -> Self {
        GenConfig {
            num_predicates: atoms,
            max_arity: 0,
            num_variables: 0,
            num_constants: 0,
            num_functions: 0,
            max_depth: 0,
            clause_len_range: clause_len,
            kb_size_range: kb_size,
            seed,
        }
    }

    /// Small first-order instances: three predicates of arity 1–2, two
    /// constants, one unary function, terms of depth at most one.
    pub fn small_first_order(seed: u64) -> Self {
        GenConfig {
            num_predicates: 3,
            max_arity: 2,
            num_variables: 3,
            num_constants: 2,
            num_functions: 1,
            max_depth: 1,
            clause_len_range: 1..=3,
            kb_size_range: 1..=6,
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenConfig { seed, ..self.clone() }
    }

    fn predicate(&self, i: usize) -> (String, usize) {
        let arity = if self.max_arity == 0 { 0 } else { 1 + i % self.max_arity };
        (format!("p{i}"), arity)
    }
}

fn name(names: &[&str], i: usize, fallback: char) -> String {
    names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("{fallback}{i}"))
}

/// A random source bound to one configuration.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: &GenConfig) -> Self {
        Generator { cfg: cfg.clone(), rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    fn term_at(&mut self, depth_left: usize) -> Term {
        let cfg = &self.cfg;
        if depth_left > 0 && cfg.num_functions > 0 && self.rng.gen_bool(0.3) {
            let f = name(&FUN_NAMES, self.rng.gen_range(0..cfg.num_functions), 'f');
            return Term::app(&f, vec![self.term_at(depth_left - 1)]);
        }
        let use_var = cfg.num_variables > 0 && (cfg.num_constants == 0 || self.rng.gen_bool(0.5));
        if use_var {
            Term::var(&name(&VAR_NAMES, self.rng.gen_range(0..cfg.num_variables), 'X'))
        } else {
            let n = cfg.num_constants.max(1);
            Term::constant(&name(&CONST_NAMES, self.rng.gen_range(0..n), 'c'))
        }
    }

    /// A term of depth at most `max_depth`.
    pub fn term(&mut self) -> Term {
        self.term_at(self.cfg.max_depth)
    }

    /// Up to `num_variables` random bindings; identities are dropped.
    pub fn substitution(&mut self) -> Substitution {
        let mut bindings = Vec::new();
        for i in 0..self.cfg.num_variables {
            if self.rng.gen_bool(0.5) {
                bindings.push((sym(&name(&VAR_NAMES, i, 'X')), self.term_at(self.cfg.max_depth)));
            }
        }
        Substitution::from_bindings(bindings)
    }

    pub fn literal(&mut self) -> Literal {
        let (pred, arity) = self.cfg.predicate(self.rng.gen_range(0..self.cfg.num_predicates));
        let depth = self.cfg.max_depth;
        let args = (0..arity).map(|_| self.term_at(depth)).collect();
        let atom = Atom::new(&pred, args);
        if self.rng.gen_bool(0.5) {
            Literal::pos(atom)
        } else {
            Literal::neg(atom)
        }
    }

    /// A fundamental clause whose length lies in `clause_len_range`.
    ///
    /// Panics if the configuration cannot produce one.
    pub fn clause(&mut self) -> Clause {
        let range = self.cfg.clause_len_range.clone();
        for _ in 0..10_000 {
            let len = self.rng.gen_range(range.clone());
            let c = Clause::new((0..len).map(|_| self.literal()));
            if c.is_fundamental() && range.contains(&c.len()) {
                return c;
            }
        }
        panic!("configuration {:?} cannot produce a fundamental clause", self.cfg);
    }

    /// Input clauses numbered from 1; duplicates collapse, so the set may be
    /// smaller than the drawn size.
    pub fn kb(&mut self) -> ClauseSet {
        let size = self.rng.gen_range(self.cfg.kb_size_range.clone());
        let clauses: Vec<Clause> = (0..size).map(|_| self.clause()).collect();
        ClauseSet::from_inputs(clauses, 1)
    }
}

pub fn gen_kb(cfg: &GenConfig) -> ClauseSet {
    Generator::new(cfg).kb()
}

pub fn gen_clause(cfg: &GenConfig) -> Clause {
    Generator::new(cfg).clause()
}
