//! Oracles that check catalog facts without going through the Gröbner
//! engine: pullbacks along curve parametrizations and a naive Buchberger.

use std::sync::Arc;

use tracekit::arith::{Fp, Matrix, MonomialOrder, Polynomial};
use tracekit::catalog::Catalog;
use tracekit::groebner::{kernel_over_quotient, GroebnerBasis};
use tracekit::ring::AmbientRing;

const O: MonomialOrder = MonomialOrder::GrevLex;

fn t_pow(e: u16) -> Polynomial {
    Polynomial::var(1, O, 0).pow(e as u32)
}

/// Pulls `f` back along a parametrization of one branch. A polynomial lies
/// in the defining ideal of a reduced curve iff every branch pullback is 0.
fn pullbacks(ring: &str, f: &Polynomial) -> Vec<Polynomial> {
    let param: Vec<Vec<Polynomial>> = match ring {
        "C" => vec![vec![t_pow(2), t_pow(3)]],
        "S" => vec![vec![t_pow(3), t_pow(4), t_pow(5)]],
        "N" => vec![
            vec![t_pow(1), Polynomial::zero(1, O)],
            vec![Polynomial::zero(1, O), t_pow(1)],
        ],
        _ => unreachable!(),
    };
    param.iter().map(|p| f.substitute(p)).collect()
}

fn vanishes(ring: &str, f: &Polynomial) -> bool {
    pullbacks(ring, f).iter().all(|p| p.is_zero())
}

#[test]
fn parametrizations_cut_out_the_catalog_curves() {
    // sanity for the oracle itself: relations vanish, variables do not
    let cat = Catalog::load();
    for r in ["N", "C", "S"] {
        let ring = cat.ring(r);
        for rel in ring.relations() {
            assert!(vanishes(r, rel), "{r}: {}", ring.format(rel));
        }
        for v in ring.vars() {
            assert!(!vanishes(r, &v));
        }
    }
}

#[test]
fn semigroup_kernel_by_parametrization() {
    let cat = Catalog::load();
    let s = cat.ring("S");
    let a = cat.module("S_M").presentation().clone();
    let v = s.vars();
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    // the kernel generators of Aᵀ, checked in k[t]
    for k in [[y, z], [x, y], [z, &x.pow(2)]] {
        for j in 0..a.ncols() {
            let e = a.get(0, j).mul(k[0]).add(&a.get(1, j).mul(k[1]));
            assert!(vanishes("S", &e));
        }
    }
    // and the engine's kernel as well
    let ker = kernel_over_quotient(&a.transpose(), s.modulus());
    assert!(ker.ncols() > 0);
    for c in ker.cols() {
        for j in 0..a.ncols() {
            let e = a.get(0, j).mul(&c[0]).add(&a.get(1, j).mul(&c[1]));
            assert!(vanishes("S", &e));
        }
    }
}

#[test]
fn node_resolution_is_periodic_by_hand() {
    // x·y and y·x vanish on both axes; x and y alone do not
    let cat = Catalog::load();
    let n = cat.ring("N");
    let v = n.vars();
    assert!(vanishes("N", &v[0].mul(&v[1])));
    assert!(!vanishes("N", &v[0]) && !vanishes("N", &v[1]));
}

#[test]
fn noncommuting_endomorphisms_by_matrix_product() {
    // f = e_11, g = e_21 on the generators (x, y): fg = 0, gf = g
    let one = Polynomial::one(2, O);
    let zero = Polynomial::zero(2, O);
    let f = Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]], 2, O);
    let g = Matrix::from_rows(vec![vec![zero.clone(), zero.clone()], vec![one.clone(), zero.clone()]], 2, O);
    assert!(f.mul(&g).is_zero());
    assert_eq!(g.mul(&f), g);
    // g sends x to y and y to 0; it is well defined on (x, y) over (xy, y^2)
    // when every relation (c0, c1) of the generators satisfies c0·y ∈ J
    let cat = Catalog::load();
    let r = cat.ring("F");
    let m = cat.module("F_mm");
    for c in m.presentation().cols() {
        let img = c[0].mul(&r.vars()[1]);
        assert!(r.is_zero(&img), "{}", r.format(&img));
    }
}

/// Plain Buchberger without criteria, then inter-reduction.
fn naive_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        let mut p = p.clone();
        let mut rest = Vec::new();
        while let Some(&(lm, lc)) = p.leading_term() {
            match basis.iter().find(|g| g.leading_monomial().unwrap().divides(&lm)) {
                Some(g) => {
                    let (gm, gc) = *g.leading_term().unwrap();
                    p = p.sub(&g.mul_term(&gm.quotient_of(&lm).unwrap(), lc / gc));
                }
                None => {
                    rest.push((lm, lc));
                    p = p.sub(&Polynomial::monomial(p.nvars(), O, lm, lc));
                }
            }
        }
        Polynomial::from_terms(p.nvars(), O, rest)
    }
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut i = 0;
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while i < pairs.len() {
        let (a, b) = pairs[i];
        i += 1;
        let (fa, fb) = (&basis[a], &basis[b]);
        let Some(l) = fa.leading_monomial().unwrap().lcm(fb.leading_monomial().unwrap()) else { continue };
        let s = fa
            .mul_term(&fa.leading_monomial().unwrap().quotient_of(&l).unwrap(), Fp::new(1))
            .sub(&fb.mul_term(&fb.leading_monomial().unwrap().quotient_of(&l).unwrap(), Fp::new(1)));
        let h = reduce(&s, &basis);
        if !h.is_zero() {
            basis.push(h.monic());
            let n = basis.len() - 1;
            pairs.extend((0..n).map(|k| (k, n)));
        }
    }
    // minimal, then reduced
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let dominated = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().unwrap();
            j != k && hm.divides(lm) && (hm != lm || j < k)
        });
        if !dominated {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone()).collect();
            reduce(&minimal[k], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| O.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

#[test]
fn engine_agrees_with_naive_buchberger() {
    let cat = Catalog::load();
    let mut compared = 0;
    for r in ["P", "N", "F", "C", "S"] {
        let ring: Arc<AmbientRing> = cat.ring(r);
        let n = ring.nvars();
        for name in cat.ideals_over(r) {
            let mut gens = cat.ideal(&name).generators().to_vec();
            gens.extend(ring.relations().iter().cloned());
            let engine = GroebnerBasis::compute(n, O, &gens);
            assert_eq!(engine.elements(), naive_basis(&gens).as_slice(), "{name}");
            compared += 1;
        }
        let engine = GroebnerBasis::compute(n, O, ring.relations());
        assert_eq!(engine.elements(), naive_basis(ring.relations()).as_slice(), "{r}");
    }
    assert!(compared > 5);
}

#[test]
fn random_kernels_vanish_on_the_curves() {
    use rand::SeedableRng;
    let cat = Catalog::load();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for r in ["N", "C", "S"] {
        let ring = cat.ring(r);
        for _ in 0..10 {
            let m = tracekit::catalog::random_module(&ring, &mut rng);
            let a = m.presentation();
            let ker = kernel_over_quotient(a, ring.modulus());
            for c in ker.cols() {
                for i in 0..a.nrows() {
                    let mut e = Polynomial::zero(ring.nvars(), O);
                    for (j, cj) in c.iter().enumerate() {
                        e = e.add(&a.get(i, j).mul(cj));
                    }
                    assert!(vanishes(r, &e), "{r}: {}", ring.format_matrix(a));
                }
            }
        }
    }
}
