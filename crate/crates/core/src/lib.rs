//! Linear codes over prime fields, the isotropic-pair transform and the
//! searches built on it.

pub mod bits;
pub mod circulant;
pub mod code;
pub mod data;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod invariant;
pub mod minweight;
pub mod oracle;
pub mod search;
pub mod transform;
pub mod verify;

pub use bits::BitVec;
pub use circulant::{bordered_double_circulant, CirculantSpec};
pub use code::{LinearCode, StandardForm};
pub use equivalence::{is_equivalent, Equivalence, EquivalenceOptions};
pub use error::{Error, Result};
pub use field::{FieldMatrix, FieldVector, PrimeField};
pub use invariant::{nt_sequence, Fingerprint, NtSequence};
pub use minweight::{min_weight, weight_distribution, MinWeight, WeightDistribution};
pub use search::{lcd_improve, replay, sd_search, SearchRecord, SeedStore};
pub use transform::{transform_code, Guarantee, Mode, TransformPair};
