//! Exact operator calculus for Kähler-type identities on almost Hermitian
//! Lie algebras.
//!
//! Everything is generic over a complex [`Scalar`]; [`Exact`] (Gaussian
//! rationals) is the reference mode and [`Float`] exists for speed.

pub mod bigrading;
pub mod blade;
pub mod catalog;
pub mod dirac;
pub mod error;
pub mod expr;
pub mod forms;
pub mod matrix;
pub mod model;
pub mod multivector;
pub mod operator;
pub mod scalar;
pub mod tables;
pub mod verify;
pub mod zoo;

pub use bigrading::ComplexFrame;
pub use blade::Blade;
pub use catalog::{catalog, catalog_for, Check, Group, IdentityEntry, Suite};
pub use error::{Error, Result};
pub use expr::{Coef, Expr};
pub use matrix::Matrix;
pub use model::{builtin, builtin_names, LieModel, ModelGeometry, ValidationReport};
pub use multivector::{three_form_split, Multivector, Picture};
pub use operator::{LinearOperator, Parity, Space};
pub use scalar::{Exact, Float, Real, Scalar, ScalarMode};
pub use tables::{CellStatus, Placement, Tables};
pub use verify::{run_suite, verify_entry, GuardStatus, Report, Status, DEFAULT_TOLERANCE};
pub use zoo::Zoo;

pub use num_traits::{One, Zero};

pub type ExactMultivector = Multivector<Exact>;
pub type FloatMultivector = Multivector<Float>;
pub type ExactOperator = LinearOperator<Exact>;
pub type FloatOperator = LinearOperator<Float>;
pub type ExactGeometry = ModelGeometry<Exact>;
pub type FloatGeometry = ModelGeometry<Float>;
