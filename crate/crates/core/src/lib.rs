//! Dyck paths with air pockets.
//!
//! Exhaustive enumeration of the path families, pattern statistics, the
//! bijections to peakless Motzkin paths and from Fibonacci meanders, and
//! exact truncated power series for the generating functions. Every series
//! is built twice, from its closed form and from its functional equation,
//! and the two are compared before being returned.

pub mod bijections;
pub mod closedforms;
pub mod enumeration;
pub mod error;
pub mod path;
pub mod series;
pub mod statistics;

pub use enumeration::{count_family, enum_family, FamilyId, FamilyMember};
pub use error::{BijectionError, ClosedFormError, EnumError, PathError, SeriesError, StatError};
pub use path::{
    format_path, height_profile, is_wavy_grand, parse_path, Arc, AirPocketPath, DyckStep,
    DyckWord, MeanderWord, MotzkinMode, MotzkinStep, MotzkinWord, Step, ValleyProfile,
};
pub use series::{gf, GfId, MultiSeries, TruncatedSeries};
pub use statistics::{distribution, popularity, stat, transported, Histogram, StatId, Transport};

/// Exact rational used by the series engine.
pub type Rational = num_rational::BigRational;
