//! Farey dissections, parallelogram covers, witness lines, the N(x)
//! statistic and the theoretical bound curves.

pub mod curves;
pub mod erdos;
pub mod farey;
pub mod farey_cover;
pub mod witness;

pub use curves::{bound_curves, BoundCurvePoint};
pub use erdos::{erdos_fraction, erdos_fraction_with, erdos_threshold, ErdosReport, ThresholdRow};
pub use farey::{farey, farey_len, farey_pairs, FareyPair};
pub use farey_cover::{
    farey_cover, farey_cover_with, farey_level, FareyCell, FareyCoverReport, Parallelogram, WPolicy,
};
pub use witness::{b_witness, b_witness_with, witness_level, WitnessReport};
