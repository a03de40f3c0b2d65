//! Test support for pikit: brute-force oracles that share no reasoning code
//! with the engine, and seeded generators of random instances.

pub mod gen;
pub mod ground;
pub mod prop;

use thiserror::Error;

pub use gen::{gen_clause, gen_kb, GenConfig, Generator};
pub use ground::{check_implicate_semantically, ground_instances, GroundUniverse};
pub use prop::{entails_tt, models, prime_implicates, prop_prime_implicates, AtomTable, PropClause};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{atoms} ground atoms exceed the oracle limit of {max}")]
    AlphabetTooLarge { atoms: usize, max: usize },
    #[error("{count} ground instances exceed the limit of {max}")]
    TooManyInstances { count: usize, max: usize },
}
