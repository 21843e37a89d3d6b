//! Exact scalars, sparse linear algebra, Koszul signs and finite complexes.

pub mod complex;
pub mod graded;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod sign;

pub use complex::{exact_at, induced_between, induced_map_on_homology, FiniteComplex, Homology, InducedMap};
pub use graded::{GradedBasis, GradedLinearMap};
pub use linalg::{rank, ColumnSolver, Echelon, Vector};
pub use poly::{Poly, VecPoly};
pub use scalar::Scalar;
pub use sign::{koszul_sign, odd, sign_of};
