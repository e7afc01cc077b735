//! Exact arithmetic kernel: big rationals, uni- and multivariate (Laurent)
//! polynomials, resultants, cyclotomic polynomials, certified complex root
//! isolation, truncated bivariate jets, dynamically-refined algebraic
//! numbers, and exact linear algebra.

pub mod algnum;
pub mod ball;
pub mod cyclotomic;
pub mod dyadic;
pub mod jet;
pub mod laurent;
pub mod linalg;
pub mod modres;
pub mod mpoly;
pub mod num;
pub mod prs;
pub mod roots;
pub mod unipoly;

pub use algnum::{AlgElem, FieldHandle, NumberField};
pub use ball::{CBall, RBall};
pub use cyclotomic::{cyclotomic, has_cyclotomic_factor, phi_bound};
pub use dyadic::Dyadic;
pub use jet::{Jet2, PrecBall, Scalar};
pub use laurent::LaurentPoly;
pub use linalg::nullspace_exact;
pub use mpoly::MPoly;
pub use num::{q, qq, Q, Z};
pub use roots::{complex_roots, complex_roots_cball, complex_roots_tight, RootBall, RootStatus};
pub use unipoly::UniPoly;
