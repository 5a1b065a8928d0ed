mod buchberger;
mod elimination;
mod module;

pub use buchberger::{s_polynomial, GroebnerBasis};
pub use elimination::eliminate;
pub use module::{kernel_over_quotient, submodule_basis, syzygies, TracedBasis};

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(nvars: usize, gens: &[crate::arith::Polynomial], order: crate::arith::MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::compute(nvars, order, gens)
}
