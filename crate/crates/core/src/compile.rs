//! Prime implicate compilation, incremental updates and entailment queries.

use std::collections::HashSet;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::clause::{is_fundamental, AssocClause, Clause, ClauseId, ClauseSet};
use crate::closure::{LimitExceeded, ResourceLimits, Saturator, Stats};
use crate::consensus::TraceRecord;
use crate::residue::residue;
use crate::subst::Substitution;
use crate::subsume::subsumes;
use crate::syntax::Signature;

/// The prime implicates of a knowledge base, plus provenance.
#[derive(Clone, Debug)]
pub struct CompiledKB {
    pub pi: ClauseSet,
    /// Work done by every compilation step that led to this KB.
    pub stats: Stats,
    /// Hex SHA-256 over the inputs, chained across incremental additions.
    pub source_digest: String,
    /// First id not yet used by any clause in this KB's history.
    pub next_id: u32,
    /// Symbols of every clause ever fed in, including ones no longer visible in `pi`.
    pub signature: Signature,
}

impl CompiledKB {
    /// The KB of the empty clause set; it entails only tautologies.
    pub fn empty() -> Self {
        CompiledKB {
            pi: ClauseSet::new(),
            stats: Stats::default(),
            source_digest: hex::encode(Sha256::digest(b"")),
            next_id: 1,
            signature: Signature::new(),
        }
    }

    /// True when the only prime implicate is the empty clause.
    pub fn is_inconsistent(&self) -> bool {
        self.pi.iter().any(|m| m.clause.is_empty())
    }
}

/// Output of a compilation run; `trace` is empty unless tracing was requested.
#[derive(Clone, Debug)]
pub struct Compilation {
    pub kb: CompiledKB,
    /// Non-fundamental input clauses that were skipped.
    pub dropped: Vec<Clause>,
    pub trace: Vec<TraceRecord>,
}

fn digest_clauses<'a>(clauses: impl Iterator<Item = &'a Clause>) -> String {
    let mut h = Sha256::new();
    for c in clauses {
        h.update(c.to_string().as_bytes());
        h.update(b".\n");
    }
    hex::encode(h.finalize())
}

fn chain_digest(prev: &str, c: &Clause) -> String {
    let mut h = Sha256::new();
    h.update(prev.as_bytes());
    h.update(b"\n");
    h.update(c.to_string().as_bytes());
    hex::encode(h.finalize())
}

/// Prime implicates of `x`: the residue of its consensus closure.
///
/// Members keep the associations they arrive with, so compiling an already
/// compiled set changes nothing.
pub fn compile(x: &ClauseSet, limits: ResourceLimits) -> Result<CompiledKB, LimitExceeded> {
    compile_traced(x, limits, false).map(|c| c.kb)
}

pub fn compile_traced(x: &ClauseSet, limits: ResourceLimits, trace: bool) -> Result<Compilation, LimitExceeded> {
    let mut inputs = ClauseSet::new();
    let mut dropped = Vec::new();
    let mut signature = Signature::new();
    for m in x {
        // First arity wins; callers that care validate symbols up front.
        let _ = signature.observe_clause(&m.clause);
        if is_fundamental(&m.clause) {
            inputs.insert(m.clone());
        } else {
            log::warn!("dropping non-fundamental input clause {}", m.clause);
            dropped.push(m.clause.clone());
        }
    }
    let next = x.max_id().map_or(1, |m| m.0 + 1);
    let mut sat = Saturator::new(limits, next).with_trace(trace);
    let closed = sat.closure(&inputs)?;
    let res = residue(&closed.set);
    sat.stats.subsumption_checks += res.checks;
    let kb = CompiledKB {
        pi: res.kept,
        stats: sat.stats,
        source_digest: digest_clauses(x.clauses()),
        next_id: sat.next_id(),
        signature,
    };
    Ok(Compilation { kb, dropped, trace: sat.take_trace() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncrementalOutcome {
    /// The new clause was subsumed by an existing prime implicate.
    Absorbed,
    /// The new clause is a tautology.
    Unchanged,
    Recompiled,
}

impl std::fmt::Display for IncrementalOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IncrementalOutcome::Absorbed => "absorbed",
            IncrementalOutcome::Unchanged => "unchanged",
            IncrementalOutcome::Recompiled => "recompiled",
        })
    }
}

/// What happened in one round of the incremental loop.
#[derive(Clone, Debug)]
pub struct IncrementalRound {
    /// Clauses derived this round and added to Σ.
    pub derived: Vec<AssocClause>,
    /// Members removed by the residue at the end of the round.
    pub deleted: Vec<AssocClause>,
    /// Σ after the update.
    pub sigma: ClauseSet,
    /// η after the residue.
    pub eta: ClauseSet,
}

#[derive(Clone, Debug)]
pub struct IncrementalReport {
    pub result: CompiledKB,
    pub outcome: IncrementalOutcome,
    /// Work done by this run alone.
    pub work: Stats,
    /// η₁, the residue of the old prime implicates and the new clause.
    pub initial_eta: ClauseSet,
    pub rounds: Vec<IncrementalRound>,
    pub trace: Vec<TraceRecord>,
}

impl IncrementalReport {
    /// Σ as it stood after each round.
    pub fn sigma_history(&self) -> impl Iterator<Item = &ClauseSet> {
        self.rounds.iter().map(|r| &r.sigma)
    }
}

fn key_of(c: &AssocClause) -> (Clause, Substitution) {
    (c.clause.clone(), c.assoc.clone())
}

/// Prime implicates of `X ∪ {c}` from the prime implicates of `X`.
///
/// Every consensus has at least one parent in Σ, the set of clauses that are
/// new relative to `kb`; two old prime implicates are never resolved against
/// each other. Members of Σ deleted by a residue are remembered and never
/// re-enter.
pub fn incrpi(kb: &CompiledKB, c: &Clause, limits: ResourceLimits) -> Result<IncrementalReport, LimitExceeded> {
    incrpi_traced(kb, c, limits, false)
}

pub fn incrpi_traced(
    kb: &CompiledKB,
    c: &Clause,
    limits: ResourceLimits,
    trace: bool,
) -> Result<IncrementalReport, LimitExceeded> {
    let source_digest = chain_digest(&kb.source_digest, c);
    let unchanged = |outcome, work: Stats, initial_eta: ClauseSet| {
        let mut result = kb.clone();
        result.stats.absorb(&work);
        result.source_digest = source_digest.clone();
        let _ = result.signature.observe_clause(c);
        IncrementalReport { result, outcome, work, initial_eta, rounds: Vec::new(), trace: Vec::new() }
    };
    if !is_fundamental(c) {
        return Ok(unchanged(IncrementalOutcome::Unchanged, Stats::default(), kb.pi.clone()));
    }

    let new_clause = AssocClause::input(ClauseId(kb.next_id), c.clone());
    let mut sat = Saturator::new(limits, kb.next_id + 1).with_trace(trace);
    let mut sigma = ClauseSet::new();
    sigma.insert(new_clause.clone());

    let first = residue(&kb.pi.union(&sigma));
    sat.stats.subsumption_checks += first.checks;
    if !first.kept.contains(&new_clause) {
        let mut report = unchanged(IncrementalOutcome::Absorbed, sat.stats, first.kept);
        report.result.next_id = kb.next_id + 1;
        return Ok(report);
    }

    let mut eta = first.kept;
    let initial_eta = eta.clone();
    let mut tombstones: HashSet<(Clause, Substitution)> = first.deleted.iter().map(key_of).collect();
    let mut tried: HashSet<(ClauseId, ClauseId)> = HashSet::new();
    let mut rounds = Vec::new();
    let mut round = 0usize;
    loop {
        round += 1;
        let mut derived = Vec::new();
        for d1 in &eta {
            for d2 in &sigma {
                if d1 == d2 {
                    continue;
                }
                let pair = if d1.id <= d2.id { (d1.id, d2.id) } else { (d2.id, d1.id) };
                if !tried.insert(pair) {
                    continue;
                }
                let mut accept = |r: AssocClause| {
                    let k = key_of(&r);
                    if tombstones.contains(&k)
                        || eta.contains_key(&k.0, &k.1)
                        || sigma.contains_key(&k.0, &k.1)
                        || derived.iter().any(|d: &AssocClause| *d == r)
                    {
                        return false;
                    }
                    derived.push(r);
                    true
                };
                sat.attempt(round, d1, d2, &mut accept);
                sat.check_size(&eta, derived.len())?;
            }
        }
        for d in &derived {
            sigma.insert(d.clone());
        }
        let widened = eta.union(&sigma);
        let res = residue(&widened);
        sat.stats.subsumption_checks += res.checks;
        for d in &res.deleted {
            tombstones.insert(key_of(d));
        }
        sigma.retain(|m| !res.deleted.contains(m));
        let stable = crate::clause::clause_set_equal(&res.kept, &eta);
        rounds.push(IncrementalRound {
            derived,
            deleted: res.deleted,
            sigma: sigma.clone(),
            eta: res.kept.clone(),
        });
        if stable {
            break;
        }
        if round > limits.max_rounds {
            return Err(LimitExceeded {
                limit: crate::closure::Limit::Rounds,
                value: limits.max_rounds,
                partial: res.kept,
            });
        }
        eta = res.kept;
    }

    // Rounds that changed η; the last round only confirmed the fixpoint.
    sat.stats.rounds += (rounds.len() - 1) as u64;
    let mut stats = kb.stats;
    stats.absorb(&sat.stats);
    let mut signature = kb.signature.clone();
    let _ = signature.observe_clause(c);
    let result = CompiledKB { pi: eta, stats, source_digest, next_id: sat.next_id(), signature };
    Ok(IncrementalReport {
        result,
        outcome: IncrementalOutcome::Recompiled,
        work: sat.stats,
        initial_eta,
        rounds,
        trace: sat.take_trace(),
    })
}

#[derive(Debug, Clone, Error)]
#[error("while adding clause #{index}: {source}")]
pub struct BatchError {
    /// Zero-based position of the clause that failed.
    pub index: usize,
    #[source]
    pub source: LimitExceeded,
}

/// Adds several clauses one after another.
#[derive(Clone, Debug)]
pub struct BatchReport {
    pub result: CompiledKB,
    pub steps: Vec<IncrementalReport>,
}

pub fn incrpi_batch(kb: &CompiledKB, cs: &[Clause], limits: ResourceLimits) -> Result<BatchReport, BatchError> {
    incrpi_batch_traced(kb, cs, limits, false)
}

pub fn incrpi_batch_traced(
    kb: &CompiledKB,
    cs: &[Clause],
    limits: ResourceLimits,
    trace: bool,
) -> Result<BatchReport, BatchError> {
    let mut current = kb.clone();
    let mut steps = Vec::with_capacity(cs.len());
    for (index, c) in cs.iter().enumerate() {
        let step = incrpi_traced(&current, c, limits, trace).map_err(|source| BatchError { index, source })?;
        current = step.result.clone();
        steps.push(step);
    }
    Ok(BatchReport { result: current, steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    /// Some prime implicate subsumes the query.
    Yes { witness: AssocClause, subst: Substitution },
    /// The query is itself a tautology.
    Tautology,
    No,
}

impl Entailment {
    pub fn is_yes(&self) -> bool {
        !matches!(self, Entailment::No)
    }
}

/// Decides whether `query` follows from the compiled KB.
pub fn entails(kb: &CompiledKB, query: &Clause) -> Entailment {
    if !is_fundamental(query) {
        return Entailment::Tautology;
    }
    kb.pi
        .iter()
        .find_map(|d| subsumes(&d.clause, query).map(|subst| Entailment::Yes { witness: d.clone(), subst }))
        .unwrap_or(Entailment::No)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, parse_clauses};

    fn kb_of(text: &str) -> CompiledKB {
        let set = ClauseSet::from_inputs(parse_clauses(text).unwrap(), 1);
        compile(&set, ResourceLimits::default()).unwrap()
    }

    fn texts(s: &ClauseSet) -> Vec<String> {
        let mut v: Vec<String> = s.clauses().map(Clause::to_string).collect();
        v.sort();
        v
    }

    #[test]
    fn unit_kb_compiles_to_itself() {
        let kb = kb_of("p(a).");
        assert_eq!(texts(&kb.pi), vec!["p(a)"]);
    }

    #[test]
    fn ground_contradiction_is_inconsistent() {
        let kb = kb_of("p|q. ~p|q. p|~q. ~p|~q.");
        assert_eq!(texts(&kb.pi), vec!["[]"]);
        assert!(kb.is_inconsistent());
    }

    #[test]
    fn tautological_inputs_are_dropped() {
        let set = ClauseSet::from_inputs(parse_clauses("p(X)|~p(X). q(a).").unwrap(), 1);
        let c = compile_traced(&set, ResourceLimits::default(), false).unwrap();
        assert_eq!(c.dropped.len(), 1);
        assert_eq!(texts(&c.kb.pi), vec!["q(a)"]);
    }

    #[test]
    fn tautology_leaves_kb_unchanged() {
        let kb = kb_of("q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z).");
        let rep = incrpi(&kb, &parse_clause("p(a)|~p(a)").unwrap(), ResourceLimits::default()).unwrap();
        assert_eq!(rep.outcome, IncrementalOutcome::Unchanged);
        assert!(crate::clause::clause_set_equal(&rep.result.pi, &kb.pi));
    }

    #[test]
    fn subsumed_clause_is_absorbed() {
        let kb = kb_of("q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z).");
        let rep = incrpi(&kb, &parse_clause("q(a)|s(b)").unwrap(), ResourceLimits::default()).unwrap();
        assert_eq!(rep.outcome, IncrementalOutcome::Absorbed);
        assert!(crate::clause::clause_set_equal(&rep.result.pi, &kb.pi));
    }

    #[test]
    fn empty_batch_is_identity() {
        let kb = kb_of("p(a). q(X)|r(X).");
        let rep = incrpi_batch(&kb, &[], ResourceLimits::default()).unwrap();
        assert!(crate::clause::clause_set_equal(&rep.result.pi, &kb.pi));
    }

    #[test]
    fn building_from_nothing_matches_batch_compile() {
        let c = parse_clause("p(X)|q(a)").unwrap();
        let from_empty = incrpi_batch(&CompiledKB::empty(), &[c.clone()], ResourceLimits::default()).unwrap();
        let direct = compile(&ClauseSet::from_inputs([c], 1), ResourceLimits::default()).unwrap();
        assert_eq!(texts(&from_empty.result.pi), texts(&direct.pi));
    }

    #[test]
    fn entailment_of_members_and_tautologies() {
        let kb = kb_of("q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z).");
        for m in &kb.pi {
            match entails(&kb, &m.clause) {
                Entailment::Yes { witness, subst } => {
                    assert_eq!(witness.clause, m.clause);
                    assert!(subst.is_empty());
                }
                other => panic!("{} not entailed: {other:?}", m.clause),
            }
        }
        assert_eq!(entails(&kb, &parse_clause("s(a)|~s(a)").unwrap()), Entailment::Tautology);
        assert_eq!(entails(&kb, &parse_clause("~p(a)").unwrap()), Entailment::No);
    }

    #[test]
    fn empty_kb_entails_only_tautologies() {
        let kb = CompiledKB::empty();
        assert_eq!(entails(&kb, &parse_clause("p(a)").unwrap()), Entailment::No);
        assert!(entails(&kb, &parse_clause("p(a)|~p(a)").unwrap()).is_yes());
    }

    #[test]
    fn association_gate_can_block_a_refutation() {
        // Unsatisfiable, but both routes to [] need X and Y bound at once and
        // the two unit resolvents carry incompatible associations.
        let kb = kb_of("r(f(a)). ~r(Y)|~r(f(X)).");
        assert!(!kb.is_inconsistent());
        assert_eq!(texts(&kb.pi), vec!["r(f(a))", "~r(Y)"]);
    }
}
