//! Exact combinatorics for derived ordinary parts and `Ext¹` dimensions of
//! principal series and ordinary representations of split p-adic reductive
//! groups.
//!
//! The crate works entirely with finite data: a based root datum, its Weyl
//! group, and symbolic characters of `F^×` and `T(F)`.

pub mod characters;
pub mod error;
pub mod ext_calculator;
pub mod ordinary_parts;
pub mod root_datum;
pub mod weyl;

pub use characters::{CharacterGroup, CoefficientMode, FieldData, PadicCharacter, TorusCharacter};
pub use error::{Error, Result};
pub use ext_calculator::{ExtOptions, ExtReport, ExtValue, Irregularity};
pub use ordinary_parts::{GradedPiece, HordOptions, OrdinaryRepDescriptor};
pub use root_datum::{builtin, ParabolicData, RankOneClass, RootDatum};
pub use weyl::{WeylElement, WeylGroup};
