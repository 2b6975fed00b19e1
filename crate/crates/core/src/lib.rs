//! Exact computer algebra for hereditarily finite quantum sets.
//!
//! * [`hfs`]: canonical hereditarily finite sets and the serial codec.
//! * [`grassmann`]: the Grassmann algebra over associations.
//! * [`clifford`]: the neutral Clifford algebra of port operators, spinor
//!   action and spinor forms.
//! * [`quantify`]: additive quantification and multiquantification.
//! * [`palev`]: bivector Lie algebra closure and the Bose contraction.
//! * [`syntax`]: parser and canonical printer; [`interchange`]: JSON and
//!   CSV formats.

pub mod clifford;
pub mod error;
pub mod grassmann;
pub mod hfs;
pub mod interchange;
pub mod palev;
pub mod quantify;
pub mod syntax;

pub use error::{QsetError, Result};
pub use grassmann::{Element, Monomial, Rational};
pub use hfs::Hfs;
