//! Trace ideals, the trace map, fractional ideals and the maps identifying
//! `End(τ(M))` with centers of endomorphism rings.

use std::fmt;
use std::sync::Arc;

use crate::arith::{Matrix, Polynomial};
use crate::error::{Error, Result};
use crate::fpmod::{dual, FPModule, HomModule, ModuleHomomorphism};
use crate::groebner::{kernel_over_quotient, TracedBasis};
use crate::ring::{AmbientRing, Ideal, ORDER};

/// `τ(M) = I_1(B)` where the columns of `B` generate `ker(Aᵀ)`.
pub fn trace_ideal(m: &FPModule) -> Ideal {
    let ring = m.ring();
    let b = kernel_over_quotient(&m.presentation().transpose(), ring.modulus());
    Ideal::new(ring, b.entries().cloned().collect())
}

/// Values of the generating functionals on the generators, with the trace
/// ideal they generate. Entry `(i, j)` of `values` is `α_j(m_i)`.
pub struct TraceData {
    pub module: Arc<FPModule>,
    pub values: Matrix,
    pub ideal: Ideal,
    /// Each nonzero entry of `values` with its position `(i, j)`.
    pub certificates: Vec<(Polynomial, (usize, usize))>,
}

impl TraceData {
    pub fn new(m: &Arc<FPModule>, dual: &HomModule) -> TraceData {
        let ring = m.ring();
        let values = dual.functional_values();
        let mut certificates = Vec::new();
        for i in 0..values.nrows() {
            for j in 0..values.ncols() {
                let t = values.get(i, j);
                if !t.is_zero() && !certificates.iter().any(|(s, _)| s == t) {
                    certificates.push((t.clone(), (i, j)));
                }
            }
        }
        let ideal = Ideal::new(ring, certificates.iter().map(|(t, _)| t.clone()).collect());
        TraceData {
            module: m.clone(),
            values,
            ideal,
            certificates,
        }
    }

    pub fn compute(m: &Arc<FPModule>) -> TraceData {
        TraceData::new(m, &dual(m))
    }

    /// `c` with `x = Σ c_ij α_j(m_i)`, flattened as `i·n + j`.
    pub fn express(&self, x: &Polynomial) -> Option<Vec<Polynomial>> {
        let ring = self.module.ring();
        let cols: Vec<Vec<Polynomial>> = self.values.entries().map(|e| vec![e.clone()]).collect();
        TracedBasis::new(1, &cols, ring.modulus()).lift(std::slice::from_ref(x))
    }
}

/// `M ⊗ M* → R`, `m_i ⊗ α_j ↦ α_j(m_i)`, on generators `(i, j) ↦ i·n + j`.
pub fn trace_map(m: &Arc<FPModule>) -> (Arc<FPModule>, ModuleHomomorphism) {
    let ring = m.ring();
    let d = dual(m);
    let values = d.functional_values();
    let t = crate::fpmod::tensor(m, d.module());
    let row: Vec<Polynomial> = values.entries().cloned().collect();
    let matrix = if row.is_empty() {
        Matrix::zero(1, 0, ring.nvars(), ORDER)
    } else {
        Matrix::from_rows(vec![row], ring.nvars(), ORDER)
    };
    let f = ModuleHomomorphism::new_unchecked(&t, &FPModule::free(ring, 1), matrix).unwrap();
    (t, f)
}

/// The ideal generated by the image of a map into `R`.
pub fn image_ideal(f: &ModuleHomomorphism) -> Ideal {
    Ideal::new(f.ring(), f.matrix().entries().cloned().collect())
}

/// An element `num/den` of the total ring of fractions; never reduced.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Fraction {
        Fraction { num, den }
    }

    pub fn whole(r: Polynomial, ring: &AmbientRing) -> Fraction {
        Fraction::new(r, ring.one())
    }

    pub fn equals(&self, other: &Fraction, ring: &AmbientRing) -> bool {
        ring.equal(&self.num.mul(&other.den), &other.num.mul(&self.den))
    }

    pub fn format(&self, ring: &AmbientRing) -> String {
        if self.den.is_one() {
            return ring.format(&self.num);
        }
        format!("({})/({})", ring.format(&self.num), ring.format(&self.den))
    }
}

/// `(1/d)·N` with `d` a nonzerodivisor.
#[derive(Clone)]
pub struct FractionalIdeal {
    numerator: Ideal,
    denominator: Polynomial,
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.numerator.ring();
        write!(f, "(1/{})*{}", paren(&ring.format(&self.denominator)), self.numerator)
    }
}

fn paren(s: &str) -> String {
    if s.contains([' ', '+', '-', '*']) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl FractionalIdeal {
    pub fn new(numerator: Ideal, denominator: Polynomial) -> Result<FractionalIdeal> {
        if !numerator.ring().is_nonzerodivisor(&denominator) {
            return Err(Error::Zerodivisors);
        }
        Ok(FractionalIdeal {
            numerator,
            denominator,
        })
    }

    /// `R` itself.
    pub fn whole_ring(ring: &Arc<AmbientRing>) -> FractionalIdeal {
        FractionalIdeal {
            numerator: Ideal::unit(ring),
            denominator: ring.one(),
        }
    }

    pub fn numerator(&self) -> &Ideal {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        self.numerator.ring()
    }

    /// `a_i / d` over the canonical numerator generators.
    pub fn generators(&self) -> Vec<Fraction> {
        self.numerator
            .canonical_generators()
            .into_iter()
            .map(|a| Fraction::new(a, self.denominator.clone()))
            .collect()
    }

    pub fn contains(&self, q: &Fraction) -> bool {
        // q.num/q.den = n/d  ⇔  d·q.num ∈ q.den·N
        let scaled = self.numerator.scale(&q.den);
        scaled.contains(&self.denominator.mul(&q.num))
    }

    pub fn is_subset_of(&self, other: &FractionalIdeal) -> bool {
        self.generators().iter().all(|q| other.contains(q))
    }

    pub fn equals(&self, other: &FractionalIdeal) -> bool {
        fractional_equal(self, other)
    }

    pub fn contains_one(&self) -> bool {
        self.numerator.contains(&self.denominator)
    }

    /// `C·C ⊆ C`, i.e. `N² ⊆ d·N`.
    pub fn is_multiplicatively_closed(&self) -> bool {
        let sq = self.numerator.mul(&self.numerator);
        self.numerator.scale(&self.denominator).contains_ideal(&sq)
    }

    pub fn is_whole_ring(&self) -> bool {
        self.equals(&FractionalIdeal::whole_ring(self.ring()))
    }
}

/// `d₂·N₁ = d₁·N₂`.
pub fn fractional_equal(a: &FractionalIdeal, b: &FractionalIdeal) -> bool {
    a.numerator.scale(&b.denominator) == b.numerator.scale(&a.denominator)
}

/// `Hom(I, R) = (1/x)·((x) : I)` for a nonzerodivisor `x ∈ I`.
pub fn fractional_dual(i: &Ideal) -> Result<FractionalIdeal> {
    let x = i.find_nonzerodivisor()?;
    fractional_dual_with(i, &x)
}

pub fn fractional_dual_with(i: &Ideal, x: &Polynomial) -> Result<FractionalIdeal> {
    let ring = i.ring();
    let num = Ideal::new(ring, vec![x.clone()]).quotient(i);
    FractionalIdeal::new(num, x.clone())
}

/// `End(I) = (1/x)·(xI : I)`.
pub fn fractional_end(i: &Ideal) -> Result<FractionalIdeal> {
    let x = i.find_nonzerodivisor()?;
    fractional_end_with(i, &x)
}

pub fn fractional_end_with(i: &Ideal, x: &Polynomial) -> Result<FractionalIdeal> {
    let num = i.scale(x).quotient(i);
    FractionalIdeal::new(num, x.clone())
}

/// Multiplication by `a/d` on `M`: solves `a·m_i = d·Σ Φ[j][i] m_j`.
pub fn sigma_embed(m: &Arc<FPModule>, q: &Fraction) -> Result<ModuleHomomorphism> {
    let ring = m.ring();
    let g = m.ngens();
    let scaled = Matrix::identity(g, ring.nvars(), ORDER).map(|p| p.mul(&q.den));
    let span = scaled.hcat(m.presentation());
    let lifter = TracedBasis::new(g, &span.cols(), ring.modulus());
    let mut cols = Vec::with_capacity(g);
    for i in 0..g {
        let mut v = vec![ring.zero(); g];
        v[i] = q.num.clone();
        let c = lifter.lift(&v).ok_or(Error::FractionDoesNotAct)?;
        cols.push(c[..g].to_vec());
    }
    let matrix = Matrix::from_cols(g, cols, ring.nvars(), ORDER);
    ModuleHomomorphism::new_unchecked(m, m, matrix)
}

/// Multiplication by `a/d` on `M*`: each functional's values are multiplied
/// by `a` and divided exactly by `d`.
pub fn rho_embed(dual: &HomModule, q: &Fraction) -> Result<ModuleHomomorphism> {
    let m = dual.source();
    let ring = m.ring();
    let values = dual.functional_values();
    let divider = TracedBasis::new(1, &[vec![q.den.clone()]], ring.modulus());
    let mut cols = Vec::with_capacity(dual.ngens());
    for j in 0..dual.ngens() {
        let mut row = Vec::with_capacity(m.ngens());
        for i in 0..m.ngens() {
            let v = ring.mul(&q.num, values.get(i, j));
            let quotient = divider
                .lift(&[v])
                .ok_or_else(|| Error::Consistency("inexact division in the dual".into()))?;
            row.push(quotient[0].clone());
        }
        let functional = Matrix::from_rows(vec![row], ring.nvars(), ORDER);
        let functional = if m.ngens() == 0 {
            Matrix::zero(1, 0, ring.nvars(), ORDER)
        } else {
            functional
        };
        cols.push(dual.encode_matrix(&functional)?);
    }
    let matrix = Matrix::from_cols(dual.ngens(), cols, ring.nvars(), ORDER);
    ModuleHomomorphism::new_unchecked(dual.module(), dual.module(), matrix)
}

/// Commutes with every generator of `end`.
pub fn is_central(f: &ModuleHomomorphism, end: &HomModule) -> bool {
    end.generators()
        .iter()
        .all(|h| f.compose(h).equals(&h.compose(f)))
}

/// The fraction `q̄(x)/x` with `q̄(x) = Σ c_ij α_j(f(m_i))` for the
/// certificate `x = Σ c_ij α_j(m_i)`.
pub fn center_descend(
    data: &TraceData,
    end: &HomModule,
    f: &ModuleHomomorphism,
    x: &Polynomial,
) -> Result<Fraction> {
    if !is_central(f, end) {
        return Err(Error::NotCentral);
    }
    let ring = data.module.ring();
    let coeffs = data
        .express(x)
        .ok_or_else(|| Error::Consistency("element not in the trace ideal".into()))?;
    let b = &data.values;
    let n = b.ncols();
    let g = b.nrows();
    let phi = f.matrix();
    let mut acc = ring.zero();
    for i in 0..g {
        for j in 0..n {
            let c = &coeffs[i * n + j];
            if c.is_zero() {
                continue;
            }
            // α_j(f(m_i)) = Σ_k α_j(m_k)·Φ[k][i]
            let mut val = ring.zero();
            for k in 0..g {
                val = val.add(&b.get(k, j).mul(phi.get(k, i)));
            }
            acc = acc.add(&c.mul(&val));
        }
    }
    Ok(Fraction::new(ring.reduce(&acc), x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::hom_module;

    fn cusp() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![y.pow(2).sub(&x.pow(3))], true).unwrap()
    }

    fn node() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![x.mul(&y)], false).unwrap()
    }

    #[test]
    fn traces() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        assert!(trace_ideal(&FPModule::free(&r, 2)).is_unit());
        let m = r.maximal_ideal();
        assert_eq!(trace_ideal(&FPModule::from_ideal(&m)), m);

        let s = node();
        let q = FPModule::quotient(&Ideal::new(&s, vec![s.var(0)]));
        let (_, f) = trace_map(&q);
        assert_eq!(image_ideal(&f), Ideal::new(&s, vec![s.var(1)]));
        assert_eq!(trace_ideal(&q), Ideal::new(&s, vec![s.var(1)]));
    }

    #[test]
    fn fractional_duals_and_ends() {
        let r = cusp();
        let (x, y) = (r.var(0), r.var(1));
        let m = r.maximal_ideal();
        let d = fractional_dual_with(&m, &x).unwrap();
        let expected = FractionalIdeal::new(Ideal::new(&r, vec![x.clone(), y.clone()]), x.clone()).unwrap();
        assert!(fractional_equal(&d, &expected));
        let e = fractional_end(&m).unwrap();
        assert!(fractional_equal(&e, &expected));
        assert!(e.is_multiplicatively_closed() && e.contains_one());
        // independent of the chosen nonzerodivisor
        assert!(fractional_equal(&e, &fractional_end_with(&m, &y).unwrap()));
        let other = FractionalIdeal::new(Ideal::new(&r, vec![x.mul(&x), x.mul(&y)]), x.mul(&x)).unwrap();
        assert!(fractional_equal(&expected, &other));

        let p = AmbientRing::polynomial(&["x", "y"]);
        assert!(fractional_dual(&p.maximal_ideal()).unwrap().is_whole_ring());
        assert!(fractional_dual(&Ideal::unit(&p)).unwrap().is_whole_ring());
    }

    #[test]
    fn sigma_and_descent_on_cusp() {
        let r = cusp();
        let (x, y) = (r.var(0), r.var(1));
        let m = FPModule::from_ideal(&r.maximal_ideal());
        let q = Fraction::new(y.clone(), x.clone());
        let f = sigma_embed(&m, &q).unwrap();
        let expected = Matrix::from_rows(vec![vec![r.zero(), x.clone()], vec![r.one(), r.zero()]], 2, ORDER);
        let g = ModuleHomomorphism::new(&m, &m, expected).unwrap();
        assert!(f.equals(&g));
        let end = hom_module(&m, &m);
        assert!(is_central(&f, &end));
        let data = TraceData::compute(&m);
        let back = center_descend(&data, &end, &f, &x).unwrap();
        assert!(back.equals(&q, &r));
        let id = sigma_embed(&m, &Fraction::whole(r.one(), &r)).unwrap();
        assert!(id.equals(&ModuleHomomorphism::identity(&m)));
        assert!(center_descend(&data, &end, &ModuleHomomorphism::identity(&m), &x)
            .unwrap()
            .equals(&Fraction::whole(r.one(), &r), &r));
    }

    #[test]
    fn rho_on_free_module_is_scalar() {
        let r = cusp();
        let f = FPModule::free(&r, 1);
        let d = dual(&f);
        let x = r.var(0);
        let rho = rho_embed(&d, &Fraction::whole(x.clone(), &r)).unwrap();
        assert!(rho.equals(&ModuleHomomorphism::scalar(d.module(), &x)));
    }
}
