//! Prime implicates of quantifier-free first-order clause sets.
//!
//! A knowledge base is compiled into its prime implicates by saturating it
//! under association-aware consensus and keeping the subsumption residue.
//! New clauses can then be folded in incrementally, resolving only against
//! what is new, and clausal queries are answered by a subsumption check
//! against the compiled set.
//!
//! ```
//! use pikit_core::{compile, entails, parse_clauses, parse_clause, ClauseSet, ResourceLimits};
//!
//! let kb = ClauseSet::from_inputs(parse_clauses("p(a). ~p(X)|q(X).").unwrap(), 1);
//! let kb = compile(&kb, ResourceLimits::default()).unwrap();
//! assert!(entails(&kb, &parse_clause("q(a)|r(b)").unwrap()).is_yes());
//! ```

pub mod clause;
pub mod closure;
pub mod compile;
pub mod consensus;
pub mod residue;
pub mod store;
pub mod subst;
pub mod subsume;
pub mod syntax;
pub mod term;
pub mod unify;

pub use clause::{clause_set_equal, is_fundamental, AssocClause, Clause, ClauseId, ClauseSet, Origin};
pub use closure::{closure, l_step, Closure, Limit, LimitExceeded, ResourceLimits, Saturator, Stats};
pub use compile::{
    compile, compile_traced, entails, incrpi, incrpi_batch, incrpi_batch_traced, incrpi_traced, BatchError,
    BatchReport, Compilation, CompiledKB, Entailment, IncrementalOutcome, IncrementalReport, IncrementalRound,
};
pub use consensus::{
    complementary_pairs, consensus, AttemptOutcome, ComplementaryPair, ConsensusOutcome, ConsensusResult,
    TraceRecord,
};
pub use residue::{residue, Residue};
pub use store::{load_kb, parse_kb, render_kb, save_kb, StoreError};
pub use subst::{subst_equal, variables_of, Substitutable, Substitution};
pub use subsume::subsumes;
pub use syntax::{
    parse_bindings, parse_clause, parse_clause_file, parse_clauses, parse_term, print_clause, print_clause_file,
    ClauseFile, ParseError, ParseErrorKind, Position, Signature, SymbolKind,
};
pub use term::{sym, Atom, Literal, Sign, Symbol, Term};
pub use unify::{unify_atoms, unify_terms, UnifyError};
