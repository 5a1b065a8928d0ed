//! Theorem-level predicates and verifiers.

mod center;
mod fractional_ring;
mod report;
mod verify;

pub use center::{center_from_end, center_of_end, has_free_summand, is_balanced, is_scalar, CenterData};
pub use fractional_ring::{ring_presentation_of_fractional, Chart, FractionalRing};
pub use report::{Check, Status, VerificationReport};
pub use verify::{
    generates, hw_trace_check, verify_free_summand_theorems, verify_rigidity_theorem, verify_theorem_main,
    verify_theorem_main2, verify_trace_properties,
};
