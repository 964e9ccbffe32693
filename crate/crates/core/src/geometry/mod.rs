//! Canonical lattice lines, collinearity over prime points, `B(n)` and the
//! PNT band.

pub mod band;
pub mod collinear;
pub mod line;
pub mod point;

pub use band::{band_intersection, concavity_threshold, BandInterval, BandReport};
pub use collinear::{
    b_sequence, b_sequence_with, best_line, best_line_with, collect_lines, collect_lines_with, max_multiplicity, BEntry,
    BestLine, LineFamilyEntry, DEFAULT_PAIR_BUDGET,
};
pub use line::{line_contains, line_through, Lattice, Line};
pub use point::{points_from_primes, prime_points, validate_points, Orientation, PrimePoint};
