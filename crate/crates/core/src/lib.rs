//! Separability of noisy multiqubit states across the one-qubit cut.
//!
//! The crate builds the four one-parameter noisy families (pseudopure and
//! Werner-like mixtures of W and GHZ states), evaluates four entanglement
//! criteria on them (conditional sandwiched Tsallis relative entropy, the
//! Abe-Rajagopal conditional Tsallis entropy, the von Neumann conditional
//! entropy and the partial transpose), and locates the noise threshold at
//! which each criterion stops certifying separability.
//!
//! ```
//! use sepcheck::{criteria, Criterion, FamilyKind};
//!
//! let t = criteria::threshold(FamilyKind::PpGhz, 3, Criterion::CstreInf).unwrap();
//! assert!((t.x_star - 0.3).abs() < 1e-8);
//! ```

pub mod analytic;
pub mod criteria;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod states;

pub use criteria::{Criterion, CurvePoint, ThresholdResult};
pub use entropy::EntropicOrder;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use states::{FamilyKind, PureState, StateFamily};
