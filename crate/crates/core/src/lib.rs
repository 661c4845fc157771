//! Exact Horn inequalities for the Kirwan cone of Hermitian eigenvalue
//! problems, with `σ`-stable refinements for repeated spectra.
//!
//! Modules, bottom-up: [`combinat`] (subsets, tuples, partitions, the
//! symmetric-group action), [`schubert`] (Littlewood–Richardson products in
//! Grassmannian cohomology), [`engine`] (the inductive tables of
//! intersecting tuples) with its on-disk [`cache`], [`kirwan`] (inequality
//! systems and exact membership), [`lp`] and [`redundancy`] (exact rational
//! linear programming), and [`witness`] (numerical Hermitian witnesses).

pub mod cache;
pub mod combinat;
pub mod engine;
pub mod error;
pub mod kirwan;
pub mod lp;
pub mod redundancy;
pub mod schubert;
pub mod witness;

pub use cache::TableCache;
pub use combinat::{CycleType, Partition, Permutation, Subset, SubsetTuple};
pub use engine::{Backend, BuildOptions, HornStore, HornTable, TableEntry, TableKey, TestSet};
pub use error::{HornError, Result};
pub use kirwan::{
    generate_system, Constraint, Inequality, InequalitySystem, SpectrumFamily, SystemLevel, Verdict,
};
pub use num_rational::BigRational;
pub use redundancy::{minimize_system, RedundancyReport, VerdictKind};
pub use schubert::{IntersectionKind, SchubertCalculator};
pub use witness::{find_witness, WitnessOptions, WitnessResult, WitnessStatus};
