//! Enumeration, closed formulas and constructive bijections for inverted
//! (row-standard) Young tableaux, with brute-force cross-checks.

pub mod appendix;
pub mod bijections;
pub mod enumeration;
pub mod error;
pub mod formulas;
pub mod partition;
pub mod tableau;
pub mod verify;

pub use bijections::{phi1_general, phi1_rect, phi2_general, phi2_rect, BumpTrace, TraceEvent};
pub use enumeration::{
    betti_numbers, enumerate_inverted, enumerate_with_inversions, fiber, inversion_distribution,
    partition_work, standard_tableaux, EnumConfig, InversionDistribution, WorkRange, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use formulas::{
    catalan, compositions, m_minus_1_count, m_minus_2_count, mahonian, mahonian_row,
    tail_end_threshold, two_row_count, Composition,
};
pub use partition::{triangular, Gap, Partition, RowGaps, StairStepMove};
pub use tableau::{max_inversion_tableau, InversionPair, InvertedTableau, Tableau};
pub use verify::{verify, Claim, Report, Status};
