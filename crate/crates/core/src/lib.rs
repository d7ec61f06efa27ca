pub mod checks;
pub mod etale;
pub mod expand;
pub mod gauss;
pub mod hensel;
pub mod poly;
pub mod pseudoval;
pub mod sample;
pub mod scalar;
pub mod witt;

pub use poly::{CoeffRing, LocElem, MultiPoly, QuotElem};
pub use pseudoval::{ValError, ValuationSpec};
pub use scalar::{Ext, Scalar};
pub use witt::{BaseRing, WittError, WittVector};

/// Exact rationals, the scalar type of every norm in the crate.
pub type Rat = num_rational::BigRational;
/// `Rat ∪ {±∞}`.
pub type ExtRat = Ext<Rat>;
