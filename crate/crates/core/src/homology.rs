//! Free resolutions, Ext, depth of modules and rigidity.

use std::sync::Arc;

use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::fpmod::{minimize, preimage, subquotient, FPModule};
use crate::groebner::kernel_over_quotient;
use crate::ring::{AmbientRing, ORDER};

/// `F_ℓ → … → F_1 → F_0` with `d_1` the (column-pruned) presentation.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ranks: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl FreeResolution {
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_i : F_i → F_{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// Number of differentials computed.
    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// Rank of `F_i`; zero past the end of a finite resolution.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }
}

/// Drops columns of `k` that are combinations of the others (via unit
/// entries in their syzygies); returns the kept columns and generators of
/// the relations among them.
fn prune(ring: &AmbientRing, k: &Matrix) -> (Matrix, Matrix) {
    let syz = kernel_over_quotient(k, ring.modulus());
    let m = minimize(ring, &syz);
    let rows: Vec<usize> = (0..k.nrows()).collect();
    (k.select(&rows, &m.kept), m.presentation)
}

/// The first `length` differentials of a resolution of `M` (fewer if the
/// resolution ends).
pub fn free_resolution(m: &FPModule, length: usize) -> FreeResolution {
    let ring = m.ring();
    let mut ranks = vec![m.ngens()];
    let mut differentials = Vec::new();
    let mut next = m.presentation().clone();
    while differentials.len() < length {
        if next.ncols() == 0 {
            let r = *ranks.last().unwrap();
            differentials.push(Matrix::zero(r, 0, ring.nvars(), ORDER));
            ranks.push(0);
            break;
        }
        let (d, rest) = prune(ring, &next);
        ranks.push(d.ncols());
        differentials.push(d);
        next = rest;
    }
    FreeResolution { ranks, differentials }
}

/// `Ext^i(M, N)` as a module.
pub fn ext(i: usize, m: &FPModule, n: &FPModule) -> Arc<FPModule> {
    let ring = m.ring();
    let res = free_resolution(m, i + 1);
    ext_from_resolution(ring, &res, i, n)
}

/// The cochain map `Hom(F_i, N) → Hom(F_{i+1}, N)` on `R^{h·r_i}`.
fn cochain(ring: &AmbientRing, res: &FreeResolution, i: usize, h: usize) -> Matrix {
    let (ri, rn) = (res.rank(i), res.rank(i + 1));
    let mut out = Matrix::zero(h * rn, h * ri, ring.nvars(), ORDER);
    if rn == 0 || ri == 0 {
        return out;
    }
    let d = res.differential(i + 1);
    for c in 0..rn {
        for k in 0..ri {
            let e = d.get(k, c);
            if e.is_zero() {
                continue;
            }
            for r in 0..h {
                out.set(c * h + r, k * h + r, e.clone());
            }
        }
    }
    out
}

pub fn ext_from_resolution(ring: &Arc<AmbientRing>, res: &FreeResolution, i: usize, n: &FPModule) -> Arc<FPModule> {
    let h = n.ngens();
    let b = n.presentation();
    let ri = res.rank(i);
    if ri == 0 || h == 0 {
        return FPModule::free(ring, 0);
    }
    let delta = cochain(ring, res, i, h);
    let z = preimage(ring, &delta, &b.repeat_diag(res.rank(i + 1)));
    let mut image = b.repeat_diag(ri);
    if i > 0 {
        image = cochain(ring, res, i - 1, h).hcat(&image);
    }
    subquotient(ring, &z, &image).0
}

/// `min{i : Ext^i(R/m, M) ≠ 0}`.
pub fn depth_module(m: &FPModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = m.ring();
    let k = FPModule::quotient(&ring.maximal_ideal());
    let bound = ring.krull_dimension() + 1;
    let res = free_resolution(&k, bound + 1);
    for i in 0..=bound {
        if !ext_from_resolution(ring, &res, i, m).is_zero() {
            return Ok(i);
        }
    }
    Err(Error::Consistency("depth exceeds the dimension bound".into()))
}

pub fn is_rigid(m: &FPModule) -> bool {
    ext(1, m, m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Polynomial;
    use crate::fpmod::annihilator;
    use crate::ring::Ideal;

    fn node() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![x.mul(&y)], false).unwrap()
    }

    #[test]
    fn periodic_resolution_over_node() {
        let r = node();
        let (x, y) = (r.var(0), r.var(1));
        let m = FPModule::quotient(&Ideal::new(&r, vec![x.clone()]));
        let res = free_resolution(&m, 4);
        assert_eq!(res.ranks(), &[1, 1, 1, 1, 1]);
        for (i, d) in res.differentials().iter().enumerate() {
            let expected = if i % 2 == 0 { &x } else { &y };
            assert_eq!(&d.get(0, 0).monic(), expected);
        }
        assert!(ext(1, &m, &m).is_zero());
        assert!(is_rigid(&m));
        assert_eq!(depth_module(&m).unwrap(), 1);
    }

    #[test]
    fn koszul() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let k = FPModule::quotient(&r.maximal_ideal());
        let res = free_resolution(&k, 3);
        assert_eq!(res.ranks(), &[1, 2, 1, 0]);
        let e = ext(2, &k, &FPModule::free(&r, 1));
        assert_eq!(e.minimal_generators(), 1);
        assert_eq!(annihilator(&e), r.maximal_ideal());
        assert!(ext(1, &FPModule::free(&r, 1), &k).is_zero());
        assert_eq!(depth_module(&k).unwrap(), 0);
        assert_eq!(depth_module(&FPModule::free(&r, 1)).unwrap(), 2);
    }

    #[test]
    fn free_module_resolution() {
        let r = node();
        let f = FPModule::free(&r, 2);
        let res = free_resolution(&f, 3);
        assert_eq!(res.ranks(), &[2, 0]);
    }

    #[test]
    fn cusp_maximal_ideal_is_not_rigid() {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        let r = AmbientRing::new(vec!["x".into(), "y".into()], vec![y.pow(2).sub(&x.pow(3))], true).unwrap();
        let m = FPModule::from_ideal(&r.maximal_ideal());
        assert!(!is_rigid(&m));
    }
}
