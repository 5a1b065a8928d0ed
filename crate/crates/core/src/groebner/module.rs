//! Syzygies, kernels over quotient rings and lifting.
//!
//! For columns `c_1..c_s` of `R^rank` with `R = k[x]/J`, a Gröbner basis of
//! the columns together with `J·e_r` is computed while every element keeps
//! its combination of the columns. Relations come from Schreyer's theorem:
//! one per S-pair of the final basis (a generating subset suffices), plus one
//! per input generator rewritten through the basis.

use crate::arith::{pack, unpack, Matrix, Monomial, MonomialOrder, Polynomial};

use super::buchberger::{reduce_by_tracked, tracked_basis};
use super::GroebnerBasis;

// term over position: position over term lets reductions push unbounded
// degrees into the later components
const WORK_ORDER: MonomialOrder = MonomialOrder::GrevLexTop;

#[derive(Clone, Debug)]
pub struct TracedBasis {
    rank: usize,
    ncols: usize,
    modulus: GroebnerBasis,
    columns: Vec<Polynomial>,
    polys: Vec<Polynomial>,
    reps: Vec<Polynomial>,
}

impl TracedBasis {
    /// `modulus` is a Gröbner basis of `J` (in component 0, grevlex).
    pub fn new(rank: usize, columns: &[Vec<Polynomial>], modulus: &GroebnerBasis) -> TracedBasis {
        let nvars = modulus.nvars();
        let order = WORK_ORDER;
        let ncols = columns.len();
        let zero = Polynomial::zero(nvars, order);
        let mut packed = Vec::with_capacity(ncols);
        let mut gens = Vec::with_capacity(ncols + rank * modulus.len());
        for (i, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rank, "column of the wrong length");
            let v = pack(c, 0, nvars, order);
            packed.push(v.clone());
            gens.push((v, Polynomial::one(nvars, order).into_component(i)));
        }
        for r in 0..rank {
            for j in modulus.elements() {
                gens.push((j.with_order(order).into_component(r), zero.clone()));
            }
        }
        // relations only matter over R, so representations live modulo J·R^ncols
        let rep_modulus = (0..ncols)
            .flat_map(|i| modulus.elements().iter().map(move |j| j.with_order(order).into_component(i)))
            .collect();
        let (polys, reps) = tracked_basis(nvars, order, gens, rep_modulus).into_iter().unzip();
        TracedBasis {
            rank,
            ncols,
            modulus: modulus.clone(),
            columns: packed,
            polys,
            reps,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce_mod_j(&self, v: Vec<Polynomial>) -> Vec<Polynomial> {
        v.iter().map(|p| self.modulus.normal_form(p)).collect()
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.modulus.nvars(), WORK_ORDER)
    }

    /// Pairs `(i, j)`, `i < j`, whose quotient `lcm/lm_j` is a minimal
    /// generator of `(lm_1, …, lm_{j-1}) : lm_j`. Their S-pair relations
    /// generate all relations among the basis elements.
    fn schreyer_pairs(&self) -> Vec<(usize, usize, Monomial)> {
        let lead = |i: usize| *self.polys[i].leading_monomial().unwrap();
        let mut out = Vec::new();
        for j in 0..self.polys.len() {
            let lj = lead(j);
            let quotients: Vec<(usize, Monomial)> = (0..j)
                .filter_map(|i| {
                    let l = lead(i).lcm(&lj)?;
                    Some((i, lj.quotient_of(&l).unwrap()))
                })
                .collect();
            for (k, &(i, u)) in quotients.iter().enumerate() {
                let redundant = quotients.iter().enumerate().any(|(k2, &(_, v))| {
                    v.divides(&u) && (v != u || k2 < k)
                });
                if !redundant {
                    out.push((i, j, u));
                }
            }
        }
        out
    }

    /// Generators of the relations among the columns over `R`, as vectors of
    /// length `ncols` with entries reduced modulo `J`. Zero vectors are dropped.
    pub fn syzygies(&self) -> Vec<Vec<Polynomial>> {
        let mut out: Vec<Vec<Polynomial>> = Vec::new();
        let mut push = |rep: &Polynomial| {
            let v = self.reduce_mod_j(unpack(rep, 0, self.ncols));
            if !v.iter().all(|p| p.is_zero()) && !out.contains(&v) {
                out.push(v);
            }
        };
        for (i, j, u) in self.schreyer_pairs() {
            let (f, g) = (&self.polys[i], &self.polys[j]);
            let l = u.mul(g.leading_monomial().unwrap());
            let a = f.leading_monomial().unwrap().quotient_of(&l).unwrap();
            let ca = f.leading_coefficient().unwrap().inv().unwrap();
            let cb = -g.leading_coefficient().unwrap().inv().unwrap();
            let s = f.mul_term(&a, ca).combine(cb, &u, g);
            let rep = self.reps[i].mul_term(&a, ca).combine(cb, &u, &self.reps[j]);
            let (h, rep) = reduce_by_tracked(&self.polys, &self.reps, s, rep);
            debug_assert!(h.is_zero(), "S-pair of a Gröbner basis must reduce to zero");
            push(&rep);
        }
        let nvars = self.modulus.nvars();
        for (i, c) in self.columns.iter().enumerate() {
            let e = Polynomial::one(nvars, WORK_ORDER).into_component(i);
            let (h, rep) = reduce_by_tracked(&self.polys, &self.reps, c.clone(), e);
            debug_assert!(h.is_zero());
            push(&rep);
        }
        // the J·e_r inputs as well: rewriting them can involve the columns
        for r in 0..self.rank {
            for j in self.modulus.elements() {
                let v = j.with_order(WORK_ORDER).into_component(r);
                let (_, rep) = reduce_by_tracked(&self.polys, &self.reps, v, self.zero());
                push(&rep);
            }
        }
        out
    }

    /// Coefficients `a` with `v = Σ a_i c_i` in `R^rank`, or `None` if `v`
    /// is not in the column span.
    pub fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        assert_eq!(v.len(), self.rank);
        let nvars = self.modulus.nvars();
        let w = pack(v, 0, nvars, WORK_ORDER);
        let (h, rep) = reduce_by_tracked(&self.polys, &self.reps, w, self.zero());
        if !h.is_zero() {
            return None;
        }
        // v - Σ(subtracted) = 0, and rep = -Σ(subtracted representations)
        Some(self.reduce_mod_j(unpack(&rep.neg(), 0, self.ncols)))
    }

    /// Whether `v` lies in the span of the columns (plus `J·R^rank`).
    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.lift(v).is_some()
    }
}

/// Syzygies of the columns over the polynomial ring itself.
pub fn syzygies(nvars: usize, rank: usize, columns: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let empty = GroebnerBasis::empty(nvars, MonomialOrder::GrevLex);
    TracedBasis::new(rank, columns, &empty).syzygies()
}

/// Kernel of `a: R^ncols -> R^nrows` over `R = k[x]/J`, as a matrix whose
/// columns generate it.
pub fn kernel_over_quotient(a: &Matrix, modulus: &GroebnerBasis) -> Matrix {
    let traced = TracedBasis::new(a.nrows(), &a.cols(), modulus);
    let raw = traced.syzygies();
    // Schreyer relations are redundant and bulky; a reduced basis of the
    // relation module is much smaller
    let n = a.ncols();
    let gb = basis_with(n, &raw, modulus, WORK_ORDER);
    let cols: Vec<Vec<Polynomial>> = gb
        .elements()
        .iter()
        .map(|v| traced.reduce_mod_j(unpack(v, 0, n)))
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .collect();
    Matrix::from_cols(n, cols, a.nvars(), MonomialOrder::GrevLex)
}

/// Gröbner basis of the submodule of `R^rank` spanned by `columns`, with
/// `J·R^rank` added.
pub fn submodule_basis(rank: usize, columns: &[Vec<Polynomial>], modulus: &GroebnerBasis) -> GroebnerBasis {
    basis_with(rank, columns, modulus, MonomialOrder::GrevLex)
}

fn basis_with(rank: usize, columns: &[Vec<Polynomial>], modulus: &GroebnerBasis, order: MonomialOrder) -> GroebnerBasis {
    let nvars = modulus.nvars();
    let mut gens: Vec<Polynomial> = columns.iter().map(|c| pack(c, 0, nvars, order)).collect();
    for r in 0..rank {
        for j in modulus.elements() {
            gens.push(j.into_component(r));
        }
    }
    GroebnerBasis::compute(nvars, order, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n)
            .map(|i| Polynomial::var(n, MonomialOrder::GrevLex, i))
            .collect()
    }

    fn ideal(nvars: usize, gens: &[Polynomial]) -> GroebnerBasis {
        GroebnerBasis::compute(nvars, MonomialOrder::GrevLex, gens)
    }

    fn dot(row: &[Polynomial], v: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(row[0].nvars(), MonomialOrder::GrevLex);
        for (a, b) in row.iter().zip(v) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    #[test]
    fn koszul_syzygy() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let syz = syzygies(2, 1, &[vec![x.clone()], vec![y.clone()]]);
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        assert!(dot(&[x.clone(), y.clone()], s).is_zero());
        // generated by (y, -x) up to a unit
        let c = s[0].leading_coefficient().unwrap();
        assert_eq!(s[0], y.scale(c));
        assert_eq!(s[1], x.scale(-c));
    }

    #[test]
    fn kernel_of_x_over_node() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let j = ideal(2, &[x.mul(y)]);
        let a = Matrix::from_rows(vec![vec![x.clone()]], 2, MonomialOrder::GrevLex);
        let k = kernel_over_quotient(&a, &j);
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.get(0, 0).monic(), y.clone());
    }

    #[test]
    fn kernel_of_transpose_on_surface_example() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let j = ideal(
            3,
            &[
                y.mul(y).sub(&x.mul(z)),
                x.mul(x).mul(y).sub(&z.mul(z)),
                x.pow(3).sub(&y.mul(z)),
            ],
        );
        let a = Matrix::from_rows(
            vec![
                vec![z.neg(), y.neg(), x.mul(x)],
                vec![y.clone(), x.clone(), z.neg()],
            ],
            3,
            MonomialOrder::GrevLex,
        );
        let k = kernel_over_quotient(&a.transpose(), &j);
        assert_eq!(k.nrows(), 2);
        // every generator is killed by A^T modulo J
        for c in k.cols() {
            for r in 0..3 {
                let row: Vec<Polynomial> = (0..2).map(|i| a.get(i, r).clone()).collect();
                assert!(j.contains(&dot(&row, &c)));
            }
        }
        // and the expected generators lie in their span
        let traced = TracedBasis::new(2, &k.cols(), &j);
        for e in [
            vec![y.clone(), z.clone()],
            vec![x.clone(), y.clone()],
            vec![z.clone(), x.mul(x)],
        ] {
            assert!(traced.contains(&e), "missing {e:?}");
        }
    }

    #[test]
    fn lift_reconstructs() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let cols = vec![vec![x.clone(), y.clone()], vec![y.clone(), Polynomial::zero(2, MonomialOrder::GrevLex)]];
        let empty = GroebnerBasis::empty(2, MonomialOrder::GrevLex);
        let t = TracedBasis::new(2, &cols, &empty);
        let target = vec![x.mul(x).add(&y.mul(y)), x.mul(y)];
        let coeffs = t.lift(&target).unwrap();
        for r in 0..2 {
            let row: Vec<Polynomial> = cols.iter().map(|c| c[r].clone()).collect();
            assert_eq!(dot(&row, &coeffs), target[r]);
        }
        assert!(t.lift(&[Polynomial::zero(2, MonomialOrder::GrevLex), y.clone()]).is_none());
    }
}
