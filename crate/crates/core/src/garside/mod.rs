//! Garside data and the presentations built from them.

pub mod datum;
pub mod families;
pub mod normal;
pub mod presentations;
pub mod reduction;

pub use datum::{validate_datum, DatumReport, GarsideDatum};
pub use families::{classify_branchings, underline_gar3, FamilyCell, FamilyRegistry, FamilyTemplate};
pub use normal::{head2, is_s_normal, s_normalize, s_normalize_with, SNormalWord, SNormalizer};
pub use presentations::{divlex, gar2, gar3, underline_gar2, GarsideContext, RuleKind};
pub use reduction::{reduce_to_gar3, ReductionReport};
