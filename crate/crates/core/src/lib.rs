//! Graded Betti tables of edge ideals of finite simple graphs.
//!
//! The crate computes `β_{i,i+j}(S/I(G))` through Hochster's formula with
//! exact linear algebra, derives regularity, projective dimension and the
//! extremal Betti numbers, and searches strongly disjoint sets of bouquets
//! that certify nonvanishing positions on chordal graphs.

pub mod analysis;
pub mod bouquet;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod table;
pub mod verify;

pub use analysis::{extremal_positions, has_unique_extremal, projective_dimension, regularity, ExtremalReport};
pub use bouquet::{certified_positions, find_certificate, validate_bouquet_set, Bouquet, BouquetSet, Certificate};
pub use error::{Error, Result};
pub use graph::{Graph, Matching, VertexSet};
pub use homology::{betti_single, betti_table, hilbert_numerator, FieldSpec, SweepOptions};
pub use table::{BettiTable, TableFormat};
pub use verify::{VerificationReport, Verifier};
