//! Propositional oracles over bitmask clauses.
//!
//! Nothing here touches the consensus or subsumption code of `pikit-core`:
//! implicates are decided by truth tables and primality by dropping literals.

use std::collections::BTreeMap;

use pikit_core::{Atom, Clause, Literal};

use crate::OracleError;

/// Largest alphabet `prime_implicates` accepts.
pub const MAX_PRIME_ATOMS: usize = 14;
/// Largest alphabet the truth-table helpers accept.
pub const MAX_TABLE_ATOMS: usize = 16;

/// A ground clause over atoms `0..n`: bit `i` of `pos` (`neg`) means atom `i`
/// occurs positively (negatively).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropClause {
    pub pos: u32,
    pub neg: u32,
}

impl PropClause {
    pub const EMPTY: PropClause = PropClause { pos: 0, neg: 0 };

    pub fn len(&self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn is_tautology(&self) -> bool {
        self.pos & self.neg != 0
    }

    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.pos & assignment != 0 || self.neg & !assignment != 0
    }
}

/// Numbering of ground atoms.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    index: BTreeMap<Atom, usize>,
    atoms: Vec<Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn intern(&mut self, a: &Atom) -> usize {
        if let Some(&i) = self.index.get(a) {
            return i;
        }
        self.atoms.push(a.clone());
        self.index.insert(a.clone(), self.atoms.len() - 1);
        self.atoms.len() - 1
    }

    /// Converts a ground clause, interning unseen atoms.
    ///
    /// Panics once more than 32 distinct atoms have been seen.
    pub fn encode(&mut self, c: &Clause) -> PropClause {
        let mut out = PropClause::EMPTY;
        for l in c.literals() {
            debug_assert!(l.atom.is_ground(), "encode expects ground clauses");
            let i = self.intern(&l.atom);
            assert!(i < 32, "more than 32 atoms cannot be encoded");
            let bit = 1u32 << i;
            if l.is_positive() {
                out.pos |= bit;
            } else {
                out.neg |= bit;
            }
        }
        out
    }

    pub fn decode(&self, c: PropClause) -> Clause {
        let lits = (0..self.atoms.len()).flat_map(|i| {
            let bit = 1u32 << i;
            let mut v = Vec::new();
            if c.pos & bit != 0 {
                v.push(Literal::pos(self.atoms[i].clone()));
            }
            if c.neg & bit != 0 {
                v.push(Literal::neg(self.atoms[i].clone()));
            }
            v
        });
        Clause::new(lits)
    }
}

fn check_size(n: usize, max: usize) -> Result<(), OracleError> {
    if n > max {
        return Err(OracleError::AlphabetTooLarge { atoms: n, max });
    }
    Ok(())
}

/// All satisfying assignments of `kb` over `n` atoms.
pub fn models(kb: &[PropClause], n: usize) -> Result<Vec<u32>, OracleError> {
    check_size(n, MAX_TABLE_ATOMS)?;
    Ok((0..1u32 << n).filter(|&a| kb.iter().all(|c| c.satisfied_by(a))).collect())
}

/// `kb ⊨ c` by truth table.
pub fn entails_tt(kb: &[PropClause], c: PropClause, n: usize) -> Result<bool, OracleError> {
    Ok(models(kb, n)?.into_iter().all(|a| c.satisfied_by(a)))
}

/// Every prime implicate of `kb` over atoms `0..n`.
///
/// Clauses are indexed in base 3 (digit 0: atom absent, 1: positive,
/// 2: negative). A clause mentioning every atom is an implicate iff its one
/// falsifying assignment is not a model; a shorter clause is an implicate iff
/// both of its one-literal extensions on the lowest missing atom are. A
/// clause is prime when it is an implicate and dropping any literal breaks
/// that.
pub fn prime_implicates(kb: &[PropClause], n: usize) -> Result<Vec<PropClause>, OracleError> {
    check_size(n, MAX_PRIME_ATOMS)?;
    let pow: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
    let total = pow[n];
    let is_model: Vec<bool> = (0..1u32 << n).map(|a| kb.iter().all(|c| c.satisfied_by(a))).collect();

    let digits = |mut t: usize| {
        let mut d = vec![0u8; n];
        for slot in d.iter_mut() {
            *slot = (t % 3) as u8;
            t /= 3;
        }
        d
    };

    let mut implicate = vec![false; total];
    for t in (0..total).rev() {
        let d = digits(t);
        implicate[t] = match d.iter().position(|&x| x == 0) {
            None => {
                let falsifier: u32 = d.iter().enumerate().filter(|(_, &x)| x == 2).map(|(i, _)| 1u32 << i).sum();
                !is_model[falsifier as usize]
            }
            Some(k) => implicate[t + pow[k]] && implicate[t + 2 * pow[k]],
        };
    }

    let mut out = Vec::new();
    for (t, &imp) in implicate.iter().enumerate() {
        if !imp {
            continue;
        }
        let d = digits(t);
        let prime = d
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .all(|(k, &x)| !implicate[t - x as usize * pow[k]]);
        if prime {
            let mut c = PropClause::EMPTY;
            for (k, &x) in d.iter().enumerate() {
                match x {
                    1 => c.pos |= 1 << k,
                    2 => c.neg |= 1 << k,
                    _ => {}
                }
            }
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

/// [`prime_implicates`] on first-order syntax; every clause must be ground.
pub fn prop_prime_implicates(kb: &[Clause]) -> Result<Vec<Clause>, OracleError> {
    let mut table = AtomTable::new();
    kb.iter().flat_map(Clause::literals).for_each(|l| {
        table.intern(&l.atom);
    });
    check_size(table.len(), MAX_PRIME_ATOMS)?;
    let encoded: Vec<PropClause> = kb.iter().map(|c| table.encode(c)).collect();
    let primes = prime_implicates(&encoded, table.len())?;
    Ok(primes.into_iter().map(|c| table.decode(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(pos: &[usize], neg: &[usize]) -> PropClause {
        PropClause {
            pos: pos.iter().map(|&i| 1u32 << i).sum(),
            neg: neg.iter().map(|&i| 1u32 << i).sum(),
        }
    }

    #[test]
    fn unit_and_implication() {
        // {p}, {~p, q} over p=0, q=1: primes are {p} and {q}.
        let primes = prime_implicates(&[pc(&[0], &[]), pc(&[1], &[0])], 2).unwrap();
        assert_eq!(primes, {
            let mut v = vec![pc(&[0], &[]), pc(&[1], &[])];
            v.sort();
            v
        });
    }

    #[test]
    fn single_clause() {
        assert_eq!(prime_implicates(&[pc(&[0, 1], &[])], 2).unwrap(), vec![pc(&[0, 1], &[])]);
    }

    #[test]
    fn unsatisfiable_gives_empty_clause() {
        let kb = [pc(&[0, 1], &[]), pc(&[1], &[0]), pc(&[0], &[1]), pc(&[], &[0, 1])];
        assert_eq!(models(&kb, 2).unwrap(), Vec::<u32>::new());
        assert_eq!(prime_implicates(&kb, 2).unwrap(), vec![PropClause::EMPTY]);
    }

    #[test]
    fn empty_kb_has_no_prime_implicates() {
        assert!(prime_implicates(&[], 3).unwrap().is_empty());
    }

    #[test]
    fn consensus_style_prime() {
        // {a,b},{~a,c}: primes {a,b},{~a,c},{b,c}.
        let primes = prime_implicates(&[pc(&[0, 1], &[]), pc(&[2], &[0])], 3).unwrap();
        assert_eq!(primes.len(), 3);
        assert!(primes.contains(&pc(&[1, 2], &[])));
    }

    #[test]
    fn alphabet_cap() {
        assert!(prime_implicates(&[], MAX_PRIME_ATOMS + 1).is_err());
        assert!(models(&[], MAX_TABLE_ATOMS + 1).is_err());
    }
}
