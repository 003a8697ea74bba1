//! Exact invariants of hypersurface singularities with non-isolated critical
//! locus: polar and Lê cycles, Lê numbers, and the Milnor equisingularity
//! test together with the Betti number statements it implies.

pub mod error;
pub mod cycles;
pub mod equisingularity;
pub mod frame;
pub mod ideal;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use frame::{apply_frame, CoordinateFrame};
pub use ideal::{BasisResult, Engine, Ideal, Limits, LocalDimension, QuotientDimension};
pub use poly::{parse_polynomial, parse_with_vars, MonomialOrder, Polynomial, Ring};
