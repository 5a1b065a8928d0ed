use std::sync::Arc;

use crate::arith::{Matrix, Polynomial};
use crate::fpmod::{annihilator, hom_module, preimage, FPModule, HomModule, ModuleHomomorphism};
use crate::groebner::TracedBasis;
use crate::ring::ORDER;
use crate::trace::trace_ideal;

/// The center of `End(M)`.
pub struct CenterData {
    pub end: HomModule,
    pub generators: Vec<ModuleHomomorphism>,
    /// Every center generator is multiplication by a ring element.
    pub scalar: bool,
}

fn vectorize(m: &Matrix) -> Vec<Polynomial> {
    let mut v = Vec::new();
    for k in 0..m.ncols() {
        v.extend(m.col(k));
    }
    v
}

pub fn center_of_end(m: &Arc<FPModule>) -> CenterData {
    center_from_end(m, hom_module(m, m))
}

/// Generators of `{f ∈ End(M) : f h = h f for every generator h}`.
pub fn center_from_end(m: &Arc<FPModule>, end: HomModule) -> CenterData {
    let ring = m.ring();
    let g = m.ngens();
    let gens = end.generators();
    let k = gens.len();
    // c ↦ (vec(Σ c_a [h_a, h_b]))_b must land in the relations of M^{g·k}.
    let mut cols = Vec::with_capacity(k);
    for a in 0..k {
        let mut col = Vec::with_capacity(g * g * k);
        for b in 0..k {
            let comm = gens[a].compose(&gens[b]).sub(&gens[b].compose(&gens[a]));
            col.extend(vectorize(comm.matrix()));
        }
        cols.push(col);
    }
    let phi = Matrix::from_cols(g * g * k, cols, ring.nvars(), ORDER);
    let c = preimage(ring, &phi, &m.presentation().repeat_diag(g * k));
    let mut generators: Vec<ModuleHomomorphism> = Vec::new();
    for col in c.cols() {
        let f = end.decode(&col);
        if !f.is_zero() {
            generators.push(f);
        }
    }
    let scalar = generators.iter().all(|f| is_scalar(m, f));
    CenterData {
        end,
        generators,
        scalar,
    }
}

/// Whether `f` equals multiplication by some ring element.
pub fn is_scalar(m: &Arc<FPModule>, f: &ModuleHomomorphism) -> bool {
    let ring = m.ring();
    let g = m.ngens();
    let id = vectorize(&Matrix::identity(g, ring.nvars(), ORDER));
    let mut cols = vec![id];
    cols.extend(m.presentation().repeat_diag(g).cols());
    TracedBasis::new(g * g, &cols, ring.modulus()).contains(&vectorize(f.matrix()))
}

/// Faithful, and the center of `End(M)` is `R·id`.
pub fn is_balanced(m: &Arc<FPModule>) -> bool {
    annihilator(m).is_zero() && center_of_end(m).scalar
}

pub fn has_free_summand(m: &FPModule) -> bool {
    trace_ideal(m).is_unit()
}
