//! The consensus operator `L` and its closure.

use std::collections::HashSet;

use thiserror::Error;

use crate::clause::{AssocClause, ClauseId, ClauseSet};
use crate::consensus::{complementary_pairs, consensus, AttemptOutcome, ConsensusOutcome, TraceRecord};

pub const DEFAULT_MAX_ROUNDS: usize = 100;
pub const DEFAULT_MAX_CLAUSES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceLimits {
    /// Maximum number of rounds that may still add clauses.
    pub max_rounds: usize,
    /// Maximum number of clauses held at any time.
    pub max_clauses: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits { max_rounds: DEFAULT_MAX_ROUNDS, max_clauses: DEFAULT_MAX_CLAUSES }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Rounds,
    Clauses,
}

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Limit::Rounds => "max-rounds",
            Limit::Clauses => "max-clauses",
        })
    }
}

/// Saturation stopped before reaching a fixpoint.
#[derive(Debug, Clone, Error)]
#[error("{limit} limit of {value} hit before reaching a fixpoint ({} clauses so far)", partial.len())]
pub struct LimitExceeded {
    pub limit: Limit,
    pub value: usize,
    /// Everything derived up to the point of failure.
    pub partial: ClauseSet,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub rounds: u64,
    pub consensus_attempts: u64,
    pub subsumption_checks: u64,
}

impl Stats {
    pub fn absorb(&mut self, other: &Stats) {
        self.rounds += other.rounds;
        self.consensus_attempts += other.consensus_attempts;
        self.subsumption_checks += other.subsumption_checks;
    }
}

/// Shared machinery for a single saturation run: id allocation, counters,
/// limits and the optional trace.
#[derive(Debug)]
pub struct Saturator {
    pub limits: ResourceLimits,
    pub stats: Stats,
    next_id: u32,
    trace: Option<Vec<TraceRecord>>,
}

impl Saturator {
    /// `next_id` is the first id handed to a derived clause.
    pub fn new(limits: ResourceLimits, next_id: u32) -> Self {
        Saturator { limits, stats: Stats::default(), next_id, trace: None }
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.trace = on.then(Vec::new);
        self
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub fn take_trace(&mut self) -> Vec<TraceRecord> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    /// Attempts every consensus between `d1` and `d2`. Each resolvent is
    /// offered to `accept`, which returns whether it was actually stored.
    pub(crate) fn attempt(
        &mut self,
        round: usize,
        d1: &AssocClause,
        d2: &AssocClause,
        accept: &mut dyn FnMut(AssocClause) -> bool,
    ) {
        for pair in complementary_pairs(d1, d2) {
            self.stats.consensus_attempts += 1;
            let (outcome, added) = match consensus(d1, d2, &pair) {
                ConsensusOutcome::Blocked => (AttemptOutcome::Blocked, None),
                ConsensusOutcome::NonFundamental => (AttemptOutcome::NonFundamental, None),
                ConsensusOutcome::Resolvent(r) => {
                    let id = ClauseId(self.next_id);
                    if accept(r.into_assoc_clause(id)) {
                        self.next_id += 1;
                        (AttemptOutcome::Added, Some(id))
                    } else {
                        (AttemptOutcome::Duplicate, None)
                    }
                }
            };
            if let Some(trace) = self.trace.as_mut() {
                trace.push(TraceRecord { round, parents: (d1.id, d2.id), mgu: pair.mgu, outcome, added });
            }
        }
    }

    pub(crate) fn check_size(&self, set: &ClauseSet, extra: usize) -> Result<(), LimitExceeded> {
        if set.len() + extra > self.limits.max_clauses {
            return Err(LimitExceeded {
                limit: Limit::Clauses,
                value: self.limits.max_clauses,
                partial: set.clone(),
            });
        }
        Ok(())
    }

    /// `base` plus every consensus with one parent in `base` and the other in
    /// `new_side`. Each unordered pair of distinct members is tried once,
    /// oriented as first met scanning `base` then `new_side`.
    pub fn l_step(&mut self, base: &ClauseSet, new_side: &ClauseSet) -> Result<ClauseSet, LimitExceeded> {
        self.l_step_round(1, base, new_side)
    }

    fn l_step_round(&mut self, round: usize, base: &ClauseSet, new_side: &ClauseSet) -> Result<ClauseSet, LimitExceeded> {
        let mut out = base.clone();
        let mut seen: HashSet<(ClauseId, ClauseId)> = HashSet::new();
        for d1 in base {
            for d2 in new_side {
                if d1 == d2 {
                    continue;
                }
                let pair = if d1.id <= d2.id { (d1.id, d2.id) } else { (d2.id, d1.id) };
                if !seen.insert(pair) {
                    continue;
                }
                self.attempt(round, d1, d2, &mut |c| out.insert(c));
                self.check_size(&out, 0)?;
            }
        }
        Ok(out)
    }

    /// Least fixpoint of `X ↦ L(X)` starting from `x`.
    ///
    /// Each round only tries pairs with at least one member produced by the
    /// previous round; older pairs were already tried and `L` only grows the
    /// set, so the iterates are exactly those of the plain operator.
    pub fn closure(&mut self, x: &ClauseSet) -> Result<Closure, LimitExceeded> {
        self.check_size(x, 0)?;
        let mut set = x.clone();
        let mut fresh_from = 0usize;
        let mut round = 0usize;
        loop {
            round += 1;
            let snapshot = set.clone();
            let before = snapshot.len();
            for i in 0..before {
                for j in (i + 1).max(fresh_from)..before {
                    let (d1, d2) = (&snapshot.members()[i], &snapshot.members()[j]);
                    self.attempt(round, d1, d2, &mut |c| set.insert(c));
                    self.check_size(&set, 0)?;
                }
            }
            // L is monotone, so equal sizes mean equal iterates.
            if set.len() == before {
                let rounds = round - 1;
                self.stats.rounds += rounds as u64;
                return Ok(Closure { set, rounds });
            }
            if round > self.limits.max_rounds {
                return Err(LimitExceeded { limit: Limit::Rounds, value: self.limits.max_rounds, partial: set });
            }
            fresh_from = before;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub set: ClauseSet,
    /// Index of the last iterate that differed from its predecessor.
    pub rounds: usize,
}

/// One application of `L` restricted to pairs meeting `new_side`.
pub fn l_step(base: &ClauseSet, new_side: &ClauseSet, limits: ResourceLimits) -> Result<ClauseSet, LimitExceeded> {
    let next = base.max_id().into_iter().chain(new_side.max_id()).max().map_or(1, |m| m.0 + 1);
    Saturator::new(limits, next).l_step(base, new_side)
}

/// Consensus closure of `x`.
pub fn closure(x: &ClauseSet, limits: ResourceLimits) -> Result<Closure, LimitExceeded> {
    let next = x.max_id().map_or(1, |m| m.0 + 1);
    Saturator::new(limits, next).closure(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::{clause_set_equal, Clause};
    use crate::syntax::parse_clause;

    fn set(texts: &[&str]) -> ClauseSet {
        ClauseSet::from_inputs(texts.iter().map(|t| parse_clause(t).unwrap()), 1)
    }

    fn sorted_texts(s: &ClauseSet) -> Vec<String> {
        let mut v: Vec<String> = s.clauses().map(Clause::to_string).collect();
        v.sort();
        v
    }

    #[test]
    fn l_step_with_empty_side_is_identity() {
        let s = set(&["p(X)|q(a)", "~p(b)"]);
        let out = l_step(&s, &ClauseSet::new(), ResourceLimits::default()).unwrap();
        assert!(clause_set_equal(&out, &s));
    }

    #[test]
    fn closure_without_pairs() {
        let s = set(&["q(Y)"]);
        let c = closure(&s, ResourceLimits::default()).unwrap();
        assert!(clause_set_equal(&c.set, &s));
        assert_eq!(c.rounds, 0);
    }

    #[test]
    fn ground_chain_reaches_empty_clause() {
        // Hand enumeration of all ground resolutions:
        // round 1: p,~p|q -> q ; ~p|q,~q -> ~p
        // round 2: p,~p -> [] ; q,~q -> []  (duplicate)
        // round 3: nothing new.
        let s = set(&["p", "~p|q", "~q"]);
        let c = closure(&s, ResourceLimits::default()).unwrap();
        assert_eq!(sorted_texts(&c.set), vec!["[]", "p", "q", "~p", "~p|q", "~q"]);
        assert_eq!(c.rounds, 2);
    }

    #[test]
    fn round_limit_is_reported_with_partial_set() {
        let s = set(&["p", "~p|q", "~q"]);
        let limits = ResourceLimits { max_rounds: 1, ..Default::default() };
        let err = closure(&s, limits).unwrap_err();
        assert_eq!(err.limit, Limit::Rounds);
        assert_eq!(err.partial.len(), 6);
    }

    #[test]
    fn clause_limit_is_reported() {
        let s = set(&["p", "~p|q", "~q"]);
        let limits = ResourceLimits { max_clauses: 4, ..Default::default() };
        let err = closure(&s, limits).unwrap_err();
        assert_eq!(err.limit, Limit::Clauses);
        assert!(err.partial.len() > 4);
    }

    #[test]
    fn trace_records_every_attempt() {
        let s = set(&["p", "~p|q", "~q"]);
        let mut sat = Saturator::new(ResourceLimits::default(), 10).with_trace(true);
        sat.closure(&s).unwrap();
        let trace = sat.take_trace();
        assert_eq!(trace.len() as u64, sat.stats.consensus_attempts);
        assert_eq!(trace[0].to_string(), "ROUND 1: (1, 2) mgu={} -> added");
        assert!(trace.iter().any(|r| r.outcome == AttemptOutcome::Duplicate));
    }
}
