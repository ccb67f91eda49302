//! Exact-arithmetic verification of q-series identities and their weighted
//! partition counterparts.
//!
//! Everything is computed over an exact kernel: truncated formal power
//! series in `q` whose coefficients are sparse Laurent polynomials in
//! `{a, z, b, rho}` with arbitrary-precision integer coefficients. Each
//! identity is verified by constructing both sides independently and
//! comparing them coefficient by coefficient; the weighted partition
//! statements are additionally checked against direct enumeration.
//!
//! Modules:
//! - [`symcoeff`]: the coefficient ring (monomials, Laurent polynomials,
//!   substitution of symbols by signed q-powers)
//! - [`qseries`]: truncated series arithmetic, reciprocals, q-Pochhammer
//!   products
//! - [`identities`]: the identity registry and verifier
//! - [`partitions`]: frequency-notation partitions, statistics, weights,
//!   decompositions, weighted generating functions, the weighted table
//! - [`suite`]: the acceptance checklist shared by the integration test
//!   and the CLI

pub mod identities;
pub mod partitions;
pub mod qseries;
pub mod suite;
pub mod symcoeff;

pub use identities::{
    build_f, IdentityError, IdentityRecord, Outcome, Registry, Side, VerificationReport,
};
pub use partitions::{Partition, PartitionClass, PartitionStats, TableReport, Weight, WeightError};
pub use qseries::{PochBase, QSeries, SeriesError};
pub use symcoeff::{Bindings, Monomial, Sign, SubstituteError, Symbol, SymbolicCoefficient};
