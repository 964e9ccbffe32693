//! Prime generation, counting, the logarithmic integral and remainder models.

pub mod cache;
pub mod envelope;
pub mod li;
pub mod model;
pub mod sieve;

pub use envelope::{empirical_model, pnt_envelope_check, EnvelopeReport, EnvelopeViolation};
pub use li::{li, log_integral};
pub use model::{remainder_bound, EmpiricalTable, RemainderModel, DEFAULT_UNCONDITIONAL_C};
pub use sieve::{first_n_primes, nth_prime_upper_bound, prime_count, primes_upto, primes_upto_with, PrimeTable, SieveConfig};
