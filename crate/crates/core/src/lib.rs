//! Six-vertex matrices and the Yang-Baxter equation over exact Gaussian
//! rationals or tolerance-compared complex floats.
//!
//! ```
//! use sixvertex::{solve_w, SixVertexMatrix};
//!
//! let u = SixVertexMatrix::from_ints([5, 5, 4, 2, 3, 1]);
//! let v = SixVertexMatrix::from_ints([7, 7, 6, 3, 4, 1]);
//! let w = solve_w(&u, &v).unwrap();
//! assert_eq!(w, SixVertexMatrix::from_ints([23, 23, 22, 11, 12, 1]));
//! ```

pub mod error;
pub mod families;
pub mod groupoid;
pub mod matrix;
pub mod sampling;
pub mod scalar;
pub mod sixvertex;
pub mod ybe;

pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use scalar::{Rational, Scalar, ScalarMode};
pub use sixvertex::{ClassFlags, DeltaPair, DualAuxiliaries, Kind, SixVertexMatrix};
pub use ybe::{
    component_residuals, equivalent_forms, is_commutative_pair, is_yb_solution, solve_conditions, solve_u,
    solve_v, solve_w, yb_commutator, SolveConditions, YbTriple,
};
