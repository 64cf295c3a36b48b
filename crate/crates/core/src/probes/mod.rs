//! Brute-force and constructive checks on `I_1` inside finite quotients `I_1/I_N`.

pub mod commutator;
pub mod curves;
pub mod layers;
pub mod quotient;
pub mod roots;

pub use commutator::{comm_sweep, CommSolver, CommSweepReport, CommutatorWitness, SolveBudget};
pub use curves::{comm_choice, curve_count, curve_tally, fermat_coset_count, CurveCount, FermatReport};
pub use layers::{layer_check, layer_image, LayerKind, LayerReport};
pub use quotient::{FrattiniReport, QuotientGroup, DEFAULT_ENUM_CAP};
pub use roots::{nrd1_decompose, PthRoot};
