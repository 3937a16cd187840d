//! Exact linear algebra over the rationals and prime fields.

pub mod basis;
pub mod chain;
pub mod echelon;
pub mod scalar;
pub mod ses;
pub mod sparse;

pub use basis::IndexedBasis;
pub use chain::{
    homology, homology_with_representatives, induced_map_on_homology, ChainMap, ChainSlice,
    DegreeHomology, HomologyBasis, HomologyReport,
};
pub use echelon::{kernel_basis, rank, Echelon, LinearSolver, Subspace};
pub use scalar::{Field, Rat, Scalar};
pub use ses::{quotient, subcomplex, LesNode, LongExactSequence, ShortExactSequence};
pub use sparse::{SparseMatrix, SparseVec};
