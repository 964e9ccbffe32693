//! Minimum line covers: greedy, exact branch and bound (optionally with
//! pairwise distinct slopes), prefix sequences, awkward primes and
//! verification.

mod exact;
mod greedy;
mod instance;
mod sequence;
mod solution;
mod verify;

pub use exact::{exact_cover, exact_cover_from, SearchStats, DEFAULT_NODE_BUDGET};
pub use greedy::greedy_cover;
pub use sequence::{
    awkward_from_sequence, awkward_primes, l_sequence, l_sequence_for, AwkwardPrime, AwkwardReport, LEntry,
};
pub use solution::{CoverSolution, Covering};
pub use verify::{verify_cover, CoverReport};
