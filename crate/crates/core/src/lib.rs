//! Exact Any Price Share (APS) and Maximin Share (MMS) computation for
//! indivisible goods, with certificates.
//!
//! Everything is exact: values, prices and weights are [`Rational`]s and the
//! linear programs behind APS are solved in rational arithmetic. Ground sets
//! are capped at [`MAX_GOODS`] goods because every exact oracle here is
//! exponential in the number of goods.

pub mod enumerate;
pub mod error;
pub mod generate;
pub mod goodset;
pub mod instance;
pub mod lp;
pub mod matroid;
pub mod rational;
pub mod reductions;
pub mod shares;
pub mod valuation;
pub mod xos;

pub use enumerate::{PartitionMode, Partitions, DEFAULT_WORK_BOUND};
pub use error::{Error, Result};
pub use goodset::{GoodSet, MAX_GOODS};
pub use instance::{parse_instance, Allocation, Instance, ValuationSpec};
pub use matroid::{BasePacking, Matroid, MatroidSpec};
pub use rational::Rational;
pub use valuation::{MarginalClass, PropertyReport, Valuation};
pub use xos::{BalancedAllocation, CertifiedBound};
