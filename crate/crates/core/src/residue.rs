//! Residue of subsumption.

use crate::clause::{AssocClause, ClauseSet};
use crate::subsume::subsumes;

#[derive(Clone, Debug, Default)]
pub struct Residue {
    /// Surviving members, in their original order.
    pub kept: ClauseSet,
    /// Members removed because another member subsumes them.
    pub deleted: Vec<AssocClause>,
    /// Number of subsumption tests performed.
    pub checks: u64,
}

/// Keeps a subsumption-minimal subset of `set` that still subsumes every member.
///
/// A member is dropped when another member strictly subsumes it, or when the
/// two subsume each other and the other one was inserted earlier. Associations
/// play no part here.
pub fn residue(set: &ClauseSet) -> Residue {
    let members = set.members();
    let mut checks = 0u64;
    let mut dominated = vec![false; members.len()];
    for (i, target) in members.iter().enumerate() {
        for (j, other) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            checks += 1;
            if subsumes(&other.clause, &target.clause).is_none() {
                continue;
            }
            let wins = if j < i {
                true
            } else {
                checks += 1;
                subsumes(&target.clause, &other.clause).is_none()
            };
            if wins {
                dominated[i] = true;
                break;
            }
        }
    }
    let mut kept = ClauseSet::new();
    let mut deleted = Vec::new();
    for (m, gone) in members.iter().zip(dominated) {
        if gone {
            deleted.push(m.clone());
        } else {
            kept.insert(m.clone());
        }
    }
    Residue { kept, deleted, checks }
}
