//! The ambient ring `R = F_p[x_1..x_n]/J` and its ideals.
//!
//! Local hypotheses are read at the origin: `m = (x_1..x_n)` is the designated
//! maximal ideal and `J ⊆ m` is required.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{prime, Fp, Matrix, MonomialOrder, Polynomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::fpmod::FPModule;
use crate::groebner::{eliminate, kernel_over_quotient, GroebnerBasis};
use crate::homology;

pub const ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// Random combinations tried by the nonzerodivisor search before the
/// deterministic fallback.
pub const DEFAULT_SEARCH_TRIES: usize = 100;

pub struct AmbientRing {
    names: Vec<String>,
    relations: Vec<Polynomial>,
    modulus: GroebnerBasis,
    domain: bool,
    seed: u64,
    dim: OnceLock<usize>,
    depth: OnceLock<usize>,
    gorenstein: OnceLock<bool>,
}

impl fmt::Debug for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[{}]", prime(), self.names.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl AmbientRing {
    /// `relations` generate `J`. `domain` asserts that `J` is prime; it is
    /// taken on trust.
    pub fn new(names: Vec<String>, relations: Vec<Polynomial>, domain: bool) -> Result<Arc<AmbientRing>> {
        Self::with_seed(names, relations, domain, 0)
    }

    pub fn with_seed(
        names: Vec<String>,
        relations: Vec<Polynomial>,
        domain: bool,
        seed: u64,
    ) -> Result<Arc<AmbientRing>> {
        let n = names.len();
        if n == 0 || n > MAX_VARS {
            return Err(Error::Structural(format!("rings need 1 to {MAX_VARS} variables, got {n}")));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Structural(format!("duplicate variable {a}")));
            }
        }
        let relations: Vec<Polynomial> = relations
            .into_iter()
            .map(|r| r.with_order(ORDER))
            .filter(|r| !r.is_zero())
            .collect();
        if relations.iter().any(|r| r.nvars() != n) {
            return Err(Error::Structural("relation over a different variable set".into()));
        }
        if relations.iter().any(|r| !r.constant_term().is_zero()) {
            return Err(Error::Structural(
                "defining ideal must vanish at the origin".into(),
            ));
        }
        let modulus = GroebnerBasis::compute(n, ORDER, &relations);
        Ok(Arc::new(AmbientRing {
            names,
            relations,
            modulus,
            domain,
            seed,
            dim: OnceLock::new(),
            depth: OnceLock::new(),
            gorenstein: OnceLock::new(),
        }))
    }

    /// The polynomial ring in the given variables.
    pub fn polynomial(names: &[&str]) -> Arc<AmbientRing> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new(), true).unwrap()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Reduced Gröbner basis of `J`.
    pub fn modulus(&self) -> &GroebnerBasis {
        &self.modulus
    }

    pub fn is_domain(&self) -> bool {
        self.domain
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), ORDER)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars(), ORDER)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(self.nvars(), ORDER, Fp::new(c))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), ORDER, i)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Normal form modulo `J`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.modulus.normal_form(p)
    }

    pub fn reduce_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        v.iter().map(|p| self.reduce(p)).collect()
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        m.map(|p| self.reduce(p))
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b))
    }

    /// Matrix product reduced modulo `J`.
    pub fn matmul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.reduce_matrix(&a.mul(b))
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.modulus.contains(p)
    }

    pub fn equal(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.is_zero(&a.sub(b))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.names)
    }

    pub fn format_matrix(&self, m: &Matrix) -> String {
        m.fmt_with(&self.names)
    }

    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, self.vars())
    }

    /// Whether `(0 : f) = 0` (and `f ≠ 0`).
    pub fn is_nonzerodivisor(&self, f: &Polynomial) -> bool {
        let f = self.reduce(f);
        if f.is_zero() {
            return false;
        }
        let a = Matrix::from_rows(vec![vec![f]], self.nvars(), ORDER);
        kernel_over_quotient(&a, &self.modulus).ncols() == 0
    }

    /// `R[t]` with a fresh last variable; elements of `R` embed by
    /// [`Polynomial::with_nvars`].
    pub fn adjoin_variable(&self, name: &str) -> Result<Arc<AmbientRing>> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let n = names.len();
        let relations = self.relations.iter().map(|r| r.with_nvars(n)).collect();
        AmbientRing::with_seed(names, relations, self.domain, self.seed)
    }

    /// Krull dimension from the leading-term ideal of `J`: the largest set of
    /// variables no leading monomial is supported in.
    pub fn krull_dimension(&self) -> usize {
        *self.dim.get_or_init(|| {
            let n = self.nvars();
            let leads: Vec<u32> = self
                .modulus
                .elements()
                .iter()
                .map(|g| {
                    let m = g.leading_monomial().unwrap();
                    (0..n).filter(|&i| m.involves(i)).fold(0u32, |acc, i| acc | (1 << i))
                })
                .collect();
            (0u32..(1 << n))
                .filter(|s| leads.iter().all(|l| l & !s != 0))
                .map(|s| s.count_ones() as usize)
                .max()
                .unwrap_or(0)
        })
    }

    /// `grade(m)` for the maximal ideal at the origin.
    pub fn depth(self: &Arc<Self>) -> usize {
        *self.depth.get_or_init(|| match grade(&self.maximal_ideal()) {
            Grade::Finite(d) => d,
            Grade::Infinite => unreachable!("the maximal ideal is proper"),
        })
    }

    /// Gorenstein at the origin: `Ext^{d+1}(R/m, R) = 0` with `d = dim R`.
    pub fn is_gorenstein(self: &Arc<Self>) -> bool {
        *self.gorenstein.get_or_init(|| {
            let d = self.krull_dimension();
            let k = FPModule::quotient(&self.maximal_ideal());
            let r = FPModule::free(self, 1);
            homology::ext(d + 1, &k, &r).is_zero()
        })
    }
}

/// Grade of an ideal; the unit ideal has infinite grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(n) => write!(f, "{n}"),
            Grade::Infinite => write!(f, "infinite"),
        }
    }
}

impl Grade {
    pub fn at_least(self, n: usize) -> bool {
        self >= Grade::Finite(n)
    }
}

/// An ideal of an [`AmbientRing`], with a cached Gröbner basis of `I + J`.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<AmbientRing>,
    gens: Vec<Polynomial>,
    basis: GroebnerBasis,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.canonical_generators();
        if gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.basis == other.basis
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Arc<AmbientRing>, gens: Vec<Polynomial>) -> Ideal {
        let mut reduced: Vec<Polynomial> = Vec::new();
        for g in gens {
            assert_eq!(g.nvars(), ring.nvars(), "generator over a different ring");
            let g = ring.reduce(&g.with_order(ORDER));
            if !g.is_zero() && !reduced.contains(&g) {
                reduced.push(g);
            }
        }
        let mut all = reduced.clone();
        all.extend(ring.relations().iter().cloned());
        let basis = GroebnerBasis::compute(ring.nvars(), ORDER, &all);
        Ideal {
            ring: ring.clone(),
            gens: reduced,
            basis,
        }
    }

    pub fn zero(ring: &Arc<AmbientRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<AmbientRing>) -> Ideal {
        Ideal::new(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        &self.ring
    }

    /// The generators as given, reduced modulo `J`, zeros and repeats dropped.
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Gröbner basis of `I + J` in the polynomial ring.
    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Canonical generators: the reduced basis of `I + J`, reduced modulo `J`,
    /// zeros dropped, in descending order.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in self.basis.elements() {
            let h = self.ring.reduce(g);
            if !h.is_zero() {
                let h = h.monic();
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out.sort_by(descending);
        out
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.basis.contains(p)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn scale(&self, f: &Polynomial) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.mul(f)).collect())
    }

    /// `(self : other) = {r : r·other ⊆ self}`, one generator of `other` at a time.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let ring = &self.ring;
        let mut acc = Ideal::unit(ring);
        for k in &other.gens {
            // first coordinates of the kernel of [k | I]
            let mut row = vec![k.clone()];
            row.extend(self.gens.iter().cloned());
            let a = Matrix::from_rows(vec![row], ring.nvars(), ORDER);
            let ker = kernel_over_quotient(&a, ring.modulus());
            let gens = (0..ker.ncols()).map(|c| ker.get(0, c).clone()).collect();
            acc = acc.intersect(&Ideal::new(ring, gens));
        }
        acc
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_unit() || other.is_zero() {
            return other.clone();
        }
        if other.is_unit() || self.is_zero() {
            return self.clone();
        }
        let ring = &self.ring;
        let (a, b) = (self.gens.len(), other.gens.len());
        // r = Σ u_i f_i = Σ v_j g_j: kernel of [[1, f, 0], [1, 0, g]]
        let mut rows = vec![vec![ring.zero(); 1 + a + b]; 2];
        rows[0][0] = ring.one();
        rows[1][0] = ring.one();
        for (i, f) in self.gens.iter().enumerate() {
            rows[0][1 + i] = f.clone();
        }
        for (j, g) in other.gens.iter().enumerate() {
            rows[1][1 + a + j] = g.clone();
        }
        let m = Matrix::from_rows(rows, ring.nvars(), ORDER);
        let ker = kernel_over_quotient(&m, ring.modulus());
        let gens = (0..ker.ncols()).map(|c| ker.get(0, c).clone()).collect();
        Ideal::new(ring, gens)
    }

    pub fn quotient_by_element(&self, f: &Polynomial) -> Ideal {
        self.quotient(&Ideal::new(&self.ring, vec![f.clone()]))
    }

    /// `∪_k (I : f^k)`, by eliminating `t` from `I + J + (1 - t f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        let ring = &self.ring;
        let f = ring.reduce(f);
        if f.is_zero() {
            return Err(Error::SaturationByZero);
        }
        let n = ring.nvars();
        if n + 1 > MAX_VARS {
            return Err(Error::Structural("too many variables to saturate".into()));
        }
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.with_nvars(n + 1)).collect();
        gens.extend(ring.relations().iter().map(|g| g.with_nvars(n + 1)));
        let t = Polynomial::var(n + 1, ORDER, n);
        gens.push(Polynomial::one(n + 1, ORDER).sub(&t.mul(&f.with_nvars(n + 1))));
        let kept = eliminate(n + 1, &gens, &[n]);
        Ok(Ideal::new(ring, kept.iter().map(|g| g.with_nvars(n)).collect()))
    }

    /// Some `g ∈ I` with `(0 : g) = 0`.
    pub fn find_nonzerodivisor(&self) -> Result<Polynomial> {
        let ring = &self.ring;
        if self.is_unit() {
            return Ok(ring.one());
        }
        // Hom(R/I, R) = (0 : I); nonzero means grade 0 and no search can succeed.
        if !Ideal::zero(ring).quotient(self).is_zero() {
            return Err(Error::Zerodivisors);
        }
        let mut gens = self.canonical_generators();
        gens.sort_by(|a, b| descending(b, a));
        for g in &gens {
            if ring.is_nonzerodivisor(g) {
                return Ok(g.clone());
            }
        }
        let combine = |coeffs: &[Fp]| {
            let mut acc = ring.zero();
            for (c, g) in coeffs.iter().zip(&gens) {
                acc = acc.add(&g.scale(*c));
            }
            acc
        };
        let mut rng = ChaCha8Rng::seed_from_u64(ring.seed());
        for _ in 0..DEFAULT_SEARCH_TRIES {
            let coeffs: Vec<Fp> = gens
                .iter()
                .map(|_| Fp::from_u64(rng.gen_range(1..prime() as u64)))
                .collect();
            let g = combine(&coeffs);
            if ring.is_nonzerodivisor(&g) {
                return Ok(g);
            }
        }
        let width = gens.len() as u32;
        let bound = 4u64.saturating_pow(width).min(1 << 16);
        for code in 1..bound {
            let coeffs: Vec<Fp> = (0..width)
                .map(|i| Fp::from_u64((code >> (2 * i)) & 3))
                .collect();
            let g = combine(&coeffs);
            if ring.is_nonzerodivisor(&g) {
                return Ok(g);
            }
        }
        Err(Error::NonzerodivisorSearchExhausted)
    }
}

/// Descending order on leading terms, then on the remaining terms.
pub fn descending(a: &Polynomial, b: &Polynomial) -> Ordering {
    for (x, y) in a.terms().iter().zip(b.terms()) {
        match ORDER.compare(&y.0, &x.0) {
            Ordering::Equal => match y.1.value().cmp(&x.1.value()) {
                Ordering::Equal => continue,
                o => return o,
            },
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

/// `min{i : Ext^i(R/I, R) ≠ 0}`, infinite for the unit ideal.
pub fn grade(ideal: &Ideal) -> Grade {
    if ideal.is_unit() {
        return Grade::Infinite;
    }
    let ring = ideal.ring();
    if !Ideal::zero(ring).quotient(ideal).is_zero() {
        return Grade::Finite(0);
    }
    let quotient = FPModule::quotient(ideal);
    let r = FPModule::free(ring, 1);
    let dim = ring.krull_dimension();
    for i in 1..=dim {
        if !homology::ext(i, &quotient, &r).is_zero() {
            return Grade::Finite(i);
        }
    }
    // A proper ideal has grade at most its height, so this is not reached.
    Grade::Finite(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str], rels: impl Fn(&[Polynomial]) -> Vec<Polynomial>, domain: bool) -> Arc<AmbientRing> {
        let n = names.len();
        let v: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, ORDER, i)).collect();
        AmbientRing::new(names.iter().map(|s| s.to_string()).collect(), rels(&v), domain).unwrap()
    }

    fn node() -> Arc<AmbientRing> {
        ring(&["x", "y"], |v| vec![v[0].mul(&v[1])], false)
    }

    fn fat_node() -> Arc<AmbientRing> {
        ring(&["x", "y"], |v| vec![v[0].mul(&v[1]), v[1].mul(&v[1])], false)
    }

    fn cusp() -> Arc<AmbientRing> {
        ring(&["x", "y"], |v| vec![v[1].pow(2).sub(&v[0].pow(3))], true)
    }

    fn semigroup345() -> Arc<AmbientRing> {
        ring(
            &["x", "y", "z"],
            |v| {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                vec![
                    y.mul(y).sub(&x.mul(z)),
                    x.mul(x).mul(y).sub(&z.mul(z)),
                    x.pow(3).sub(&y.mul(z)),
                ]
            },
            true,
        )
    }

    #[test]
    fn rejects_relation_off_origin() {
        let v = Polynomial::var(1, ORDER, 0);
        let r = AmbientRing::new(vec!["x".into()], vec![v.sub(&Polynomial::one(1, ORDER))], false);
        assert!(r.is_err());
    }

    #[test]
    fn colon_ideals() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.mul(&x), x.mul(&y)]);
        assert_eq!(i.quotient(&Ideal::unit(&r)), i);
        assert_eq!(i.quotient_by_element(&x), Ideal::new(&r, vec![x.clone(), y.clone()]));

        let s = node();
        let (x, y) = (s.var(0), s.var(1));
        assert_eq!(Ideal::zero(&s).quotient_by_element(&x), Ideal::new(&s, vec![y]));
    }

    #[test]
    fn saturation() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.mul(&y)]);
        assert_eq!(i.saturate(&r.one()).unwrap(), i);
        assert_eq!(i.saturate(&x).unwrap(), Ideal::new(&r, vec![y.clone()]));
        assert!(Ideal::new(&r, vec![x.mul(&x)]).saturate(&x).unwrap().is_unit());
        assert_eq!(i.saturate(&r.zero()), Err(Error::SaturationByZero));
    }

    #[test]
    fn nonzerodivisors() {
        let r = node();
        assert!(Ideal::unit(&r).find_nonzerodivisor().unwrap().is_one());
        let m = r.maximal_ideal();
        let g = m.find_nonzerodivisor().unwrap();
        assert!(r.is_nonzerodivisor(&g));
        assert!(m.contains(&g));
        assert!(!r.is_nonzerodivisor(&r.var(0)));
        assert!(!r.is_nonzerodivisor(&r.var(1)));

        let f = fat_node();
        assert_eq!(f.maximal_ideal().find_nonzerodivisor(), Err(Error::Zerodivisors));
    }

    #[test]
    fn dimensions() {
        assert_eq!(AmbientRing::polynomial(&["x", "y"]).krull_dimension(), 2);
        assert_eq!(node().krull_dimension(), 1);
        assert_eq!(semigroup345().krull_dimension(), 1);
        assert_eq!(fat_node().krull_dimension(), 1);
    }

    #[test]
    fn grades_and_depths() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        assert_eq!(grade(&Ideal::unit(&r)), Grade::Infinite);
        assert_eq!(grade(&r.maximal_ideal()), Grade::Finite(2));
        assert_eq!(grade(&node().maximal_ideal()), Grade::Finite(1));
        assert_eq!(r.depth(), 2);
        assert_eq!(node().depth(), 1);
        assert_eq!(fat_node().depth(), 0);
    }

    #[test]
    fn gorenstein() {
        assert!(AmbientRing::polynomial(&["x", "y"]).is_gorenstein());
        assert!(cusp().is_gorenstein());
        assert!(!semigroup345().is_gorenstein());
    }

    #[test]
    fn printing_is_canonical() {
        let r = semigroup345();
        let i = Ideal::new(&r, vec![r.var(2), r.var(1).add(&r.var(2)), r.var(0)]);
        assert_eq!(i.to_string(), "(x, y, z)");
        assert_eq!(Ideal::zero(&r).to_string(), "(0)");
    }
}
