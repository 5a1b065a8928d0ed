//! Finitely presented modules `M = coker(A)` over an [`AmbientRing`] and
//! their homomorphisms.
//!
//! Module elements are coordinate vectors over the generators. Submodules
//! and kernels are computed from one primitive, [`preimage`]; presentations
//! produced by the library are shrunk by Tietze moves on unit entries.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::{linalg, pack, Fp, Matrix, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel_over_quotient, submodule_basis, GroebnerBasis, TracedBasis};
use crate::ring::{AmbientRing, Ideal, ORDER};

pub struct FPModule {
    ring: Arc<AmbientRing>,
    presentation: Matrix,
    relations: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {}", self.ring.format_matrix(&self.presentation))
    }
}

impl FPModule {
    /// The cokernel of `presentation` (generators × relations). Entries are
    /// reduced modulo `J`; zero columns are dropped.
    pub fn new(ring: &Arc<AmbientRing>, presentation: Matrix) -> Arc<FPModule> {
        assert_eq!(presentation.nvars(), ring.nvars(), "matrix over a different ring");
        let p = ring.reduce_matrix(&presentation);
        let keep: Vec<usize> = (0..p.ncols())
            .filter(|&j| (0..p.nrows()).any(|i| !p.get(i, j).is_zero()))
            .collect();
        let rows: Vec<usize> = (0..p.nrows()).collect();
        let presentation = p.select(&rows, &keep);
        Arc::new(FPModule {
            ring: ring.clone(),
            presentation,
            relations: OnceLock::new(),
        })
    }

    pub fn free(ring: &Arc<AmbientRing>, rank: usize) -> Arc<FPModule> {
        FPModule::new(ring, Matrix::zero(rank, 0, ring.nvars(), ORDER))
    }

    /// `R/I`.
    pub fn quotient(ideal: &Ideal) -> Arc<FPModule> {
        let ring = ideal.ring();
        let row = ideal.generators().to_vec();
        FPModule::new(ring, Matrix::from_rows(vec![row], ring.nvars(), ORDER))
    }

    /// `I` as a module on its generators; the relations are their syzygies.
    pub fn from_ideal(ideal: &Ideal) -> Arc<FPModule> {
        let ring = ideal.ring();
        let row = ideal.generators().to_vec();
        let a = Matrix::from_rows(vec![row], ring.nvars(), ORDER);
        FPModule::new(ring, kernel_over_quotient(&a, ring.modulus()))
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.presentation.nrows()
    }

    pub fn presentation(&self) -> &Matrix {
        &self.presentation
    }

    /// Gröbner basis of the column span of the presentation plus `J·R^g`.
    pub fn relations(&self) -> &GroebnerBasis {
        self.relations.get_or_init(|| {
            submodule_basis(self.ngens(), &self.presentation.cols(), self.ring.modulus())
        })
    }

    pub fn is_zero_element(&self, v: &[Polynomial]) -> bool {
        assert_eq!(v.len(), self.ngens());
        self.relations().contains(&pack(v, 0, self.ring.nvars(), ORDER))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.ngens()).all(|i| self.is_zero_element(&self.unit_vector(i)))
    }

    pub fn is_free_presentation(&self) -> bool {
        self.presentation.ncols() == 0
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Polynomial> {
        let mut v = vec![self.ring.zero(); self.ngens()];
        v[i] = self.ring.one();
        v
    }

    /// Same module with a Tietze-reduced presentation, with the maps relating
    /// the two generating sets.
    pub fn minimized(self: &Arc<Self>) -> (Arc<FPModule>, Minimized) {
        let m = minimize(&self.ring, &self.presentation);
        (FPModule::new(&self.ring, m.presentation.clone()), m)
    }

    /// `dim_k M/mM`: generators minus the rank of the presentation at the origin.
    pub fn minimal_generators(&self) -> usize {
        let a = &self.presentation;
        let rows: Vec<Vec<Fp>> = (0..a.nrows())
            .map(|i| (0..a.ncols()).map(|j| a.get(i, j).constant_term()).collect())
            .collect();
        self.ngens() - linalg::rank(&rows)
    }
}

/// Tietze-reduced presentation. The kept generators are a subset of the old
/// ones; `to_new` rewrites old coordinates in terms of them.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub presentation: Matrix,
    pub kept: Vec<usize>,
    pub to_new: Matrix,
}

/// Repeatedly eliminates a generator using a relation with a constant entry.
pub fn minimize(ring: &AmbientRing, p: &Matrix) -> Minimized {
    let nvars = ring.nvars();
    let g = p.nrows();
    let mut rows: Vec<Vec<Polynomial>> = (0..g).map(|i| p.row(i)).collect();
    let mut ncols = p.ncols();
    let mut kept: Vec<usize> = (0..g).collect();
    let mut t: Vec<Vec<Polynomial>> = (0..g)
        .map(|i| {
            let mut r = vec![ring.zero(); g];
            r[i] = ring.one();
            r
        })
        .collect();
    loop {
        let pivot = (0..ncols).find_map(|j| {
            (0..rows.len()).find_map(|i| match rows[i][j].as_constant() {
                Some(c) if !c.is_zero() => Some((i, j, c)),
                _ => None,
            })
        });
        let Some((i, j, c)) = pivot else { break };
        let cinv = c.inv().unwrap();
        let col_j: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
        for l in 0..ncols {
            if l == j || rows[i][l].is_zero() {
                continue;
            }
            let f = rows[i][l].scale(cinv);
            for (k, row) in rows.iter_mut().enumerate() {
                if !col_j[k].is_zero() {
                    row[l] = ring.reduce(&row[l].sub(&f.mul(&col_j[k])));
                }
            }
        }
        let t_i = t[i].clone();
        for (k, tk) in t.iter_mut().enumerate() {
            if k != i && !col_j[k].is_zero() {
                let f = col_j[k].scale(cinv);
                for (x, y) in tk.iter_mut().zip(&t_i) {
                    if !y.is_zero() {
                        *x = ring.reduce(&x.sub(&f.mul(y)));
                    }
                }
            }
        }
        rows.remove(i);
        t.remove(i);
        kept.remove(i);
        for r in rows.iter_mut() {
            r.remove(j);
        }
        ncols -= 1;
    }
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for j in 0..ncols {
        let c: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
        if c.iter().any(|e| !e.is_zero()) && !cols.contains(&c) {
            cols.push(c);
        }
    }
    let presentation = Matrix::from_cols(kept.len(), cols, nvars, ORDER);
    let to_new = if t.is_empty() {
        Matrix::zero(0, g, nvars, ORDER)
    } else {
        Matrix::from_rows(t, nvars, ORDER)
    };
    Minimized {
        presentation,
        kept,
        to_new,
    }
}

/// Columns generating `{v ∈ R^n : Φ v ∈ im B}` for `Φ: R^n → R^g`, `B` with `g` rows.
pub fn preimage(ring: &AmbientRing, phi: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(phi.nrows(), b.nrows());
    let n = phi.ncols();
    let k = kernel_over_quotient(&phi.hcat(b), ring.modulus());
    let rows: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..k.ncols()).collect();
    let top = k.select(&rows, &all);
    let keep: Vec<usize> = (0..top.ncols())
        .filter(|&j| (0..n).any(|i| !top.get(i, j).is_zero()))
        .collect();
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for j in keep {
        let c = top.col(j);
        if !cols.contains(&c) {
            cols.push(c);
        }
    }
    Matrix::from_cols(n, cols, ring.nvars(), ORDER)
}

/// The module generated by the columns of `z` modulo the span of `rel`
/// (both in a common free module), with the generators kept after
/// minimization, as columns.
pub fn subquotient(ring: &Arc<AmbientRing>, z: &Matrix, rel: &Matrix) -> (Arc<FPModule>, Matrix) {
    let p = preimage(ring, z, rel);
    let m = minimize(ring, &p);
    let rows: Vec<usize> = (0..z.nrows()).collect();
    let gens = z.select(&rows, &m.kept);
    (FPModule::new(ring, m.presentation), gens)
}

/// A homomorphism given on generators: column `i` of the matrix is the
/// image of the `i`-th generator of the source.
#[derive(Clone)]
pub struct ModuleHomomorphism {
    source: Arc<FPModule>,
    target: Arc<FPModule>,
    matrix: Matrix,
}

impl fmt::Debug for ModuleHomomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source.ring.format_matrix(&self.matrix))
    }
}

impl ModuleHomomorphism {
    /// Checks the lifting condition: relations of the source map into
    /// relations of the target.
    pub fn new(source: &Arc<FPModule>, target: &Arc<FPModule>, matrix: Matrix) -> Result<ModuleHomomorphism> {
        let f = Self::new_unchecked(source, target, matrix)?;
        if !f.is_well_defined() {
            return Err(Error::Structural("matrix does not define a homomorphism".into()));
        }
        Ok(f)
    }

    pub fn new_unchecked(
        source: &Arc<FPModule>,
        target: &Arc<FPModule>,
        matrix: Matrix,
    ) -> Result<ModuleHomomorphism> {
        if matrix.nrows() != target.ngens() || matrix.ncols() != source.ngens() {
            return Err(Error::Structural(format!(
                "expected a {}x{} matrix, got {}x{}",
                target.ngens(),
                source.ngens(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !Arc::ptr_eq(source.ring(), target.ring()) {
            return Err(Error::Structural("modules over different rings".into()));
        }
        let matrix = source.ring.reduce_matrix(&matrix);
        Ok(ModuleHomomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &Arc<FPModule>) -> ModuleHomomorphism {
        let ring = m.ring();
        Self::new_unchecked(m, m, Matrix::identity(m.ngens(), ring.nvars(), ORDER)).unwrap()
    }

    /// Multiplication by `r`.
    pub fn scalar(m: &Arc<FPModule>, r: &Polynomial) -> ModuleHomomorphism {
        let ring = m.ring();
        let id = Matrix::identity(m.ngens(), ring.nvars(), ORDER);
        Self::new_unchecked(m, m, id.map(|p| p.mul(r))).unwrap()
    }

    pub fn source(&self) -> &Arc<FPModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FPModule> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        self.source.ring()
    }

    pub fn is_well_defined(&self) -> bool {
        let image = self.ring().matmul(&self.matrix, self.source.presentation());
        image.cols().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let ring = self.ring();
        (0..self.matrix.nrows())
            .map(|r| {
                let mut acc = ring.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc.add(&self.matrix.get(r, k).mul(x));
                }
                ring.reduce(&acc)
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHomomorphism) -> ModuleHomomorphism {
        let m = self.ring().matmul(&self.matrix, &other.matrix);
        Self::new_unchecked(&other.source, &self.target, m).unwrap()
    }

    pub fn add(&self, other: &ModuleHomomorphism) -> ModuleHomomorphism {
        let m = zip_matrix(&self.matrix, &other.matrix, |a, b| a.add(b));
        Self::new_unchecked(&self.source, &self.target, m).unwrap()
    }

    pub fn sub(&self, other: &ModuleHomomorphism) -> ModuleHomomorphism {
        let m = zip_matrix(&self.matrix, &other.matrix, |a, b| a.sub(b));
        Self::new_unchecked(&self.source, &self.target, m).unwrap()
    }

    pub fn scale(&self, r: &Polynomial) -> ModuleHomomorphism {
        Self::new_unchecked(&self.source, &self.target, self.matrix.map(|p| p.mul(r))).unwrap()
    }

    /// Every generator maps to zero in the target.
    pub fn is_zero(&self) -> bool {
        self.matrix.cols().iter().all(|c| self.target.is_zero_element(c))
    }

    /// Equality in `Hom(M, N)`.
    pub fn equals(&self, other: &ModuleHomomorphism) -> bool {
        self.sub(other).is_zero()
    }

    pub fn kernel_is_zero(&self) -> bool {
        let z = preimage(self.ring(), &self.matrix, self.target.presentation());
        z.cols().iter().all(|c| self.source.is_zero_element(c))
    }

    pub fn cokernel_is_zero(&self) -> bool {
        let span = self.target.presentation().hcat(&self.matrix);
        let gb = submodule_basis(self.target.ngens(), &span.cols(), self.ring().modulus());
        let nvars = self.ring().nvars();
        (0..self.target.ngens()).all(|i| gb.contains(&pack(&self.target.unit_vector(i), 0, nvars, ORDER)))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel_is_zero() && self.cokernel_is_zero()
    }
}

fn zip_matrix(a: &Matrix, b: &Matrix, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Matrix {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let rows = (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| f(a.get(i, j), b.get(i, j))).collect())
        .collect();
    if a.nrows() == 0 {
        return a.clone();
    }
    Matrix::from_rows(rows, a.nvars(), a.order())
}

/// `ker(f)` with its inclusion into the source.
pub fn kernel(f: &ModuleHomomorphism) -> (Arc<FPModule>, ModuleHomomorphism) {
    let ring = f.ring();
    let z = preimage(ring, f.matrix(), f.target().presentation());
    let (module, gens) = subquotient(ring, &z, f.source().presentation());
    let inclusion = ModuleHomomorphism::new_unchecked(&module, f.source(), gens).unwrap();
    (module, inclusion)
}

/// `coker(f)` with the projection from the target.
pub fn cokernel(f: &ModuleHomomorphism) -> (Arc<FPModule>, ModuleHomomorphism) {
    let ring = f.ring();
    let p = f.target().presentation().hcat(f.matrix());
    let m = minimize(ring, &p);
    let module = FPModule::new(ring, m.presentation);
    let projection = ModuleHomomorphism::new_unchecked(f.target(), &module, m.to_new).unwrap();
    (module, projection)
}

/// `Hom(M, N)` as a module, with each generator decoded to a homomorphism.
pub struct HomModule {
    module: Arc<FPModule>,
    source: Arc<FPModule>,
    target: Arc<FPModule>,
    decodings: Vec<Matrix>,
    lifter: OnceLock<TracedBasis>,
    kernel_columns: Matrix,
}

/// Column-major flattening of an `h × g` matrix.
fn vectorize(m: &Matrix) -> Vec<Polynomial> {
    let mut v = Vec::with_capacity(m.nrows() * m.ncols());
    for k in 0..m.ncols() {
        v.extend(m.col(k));
    }
    v
}

fn unvectorize(v: &[Polynomial], h: usize, g: usize, nvars: usize) -> Matrix {
    let mut m = Matrix::zero(h, g, nvars, ORDER);
    for k in 0..g {
        for r in 0..h {
            m.set(r, k, v[k * h + r].clone());
        }
    }
    m
}

pub fn hom_module(m: &Arc<FPModule>, n: &Arc<FPModule>) -> HomModule {
    let ring = m.ring();
    let nvars = ring.nvars();
    let (g, s) = (m.ngens(), m.presentation().ncols());
    let h = n.ngens();
    let a = m.presentation();
    let b = n.presentation();
    // vec(Φ) ↦ vec(Φ A): block (j, k) is A[k][j]·I_h.
    let mut l = Matrix::zero(h * s, h * g, nvars, ORDER);
    for j in 0..s {
        for k in 0..g {
            let e = a.get(k, j);
            if e.is_zero() {
                continue;
            }
            for r in 0..h {
                l.set(j * h + r, k * h + r, e.clone());
            }
        }
    }
    let z = preimage(ring, &l, &b.repeat_diag(s));
    let (module, kept) = subquotient(ring, &z, &b.repeat_diag(g));
    let decodings = kept
        .cols()
        .iter()
        .map(|c| unvectorize(c, h, g, nvars))
        .collect();
    HomModule {
        module,
        source: m.clone(),
        target: n.clone(),
        decodings,
        lifter: OnceLock::new(),
        kernel_columns: kept,
    }
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &Arc<FPModule>) -> HomModule {
    hom_module(m, &FPModule::free(m.ring(), 1))
}

impl HomModule {
    pub fn module(&self) -> &Arc<FPModule> {
        &self.module
    }

    pub fn source(&self) -> &Arc<FPModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FPModule> {
        &self.target
    }

    pub fn ngens(&self) -> usize {
        self.decodings.len()
    }

    pub fn decoding(&self, k: usize) -> &Matrix {
        &self.decodings[k]
    }

    pub fn generator(&self, k: usize) -> ModuleHomomorphism {
        ModuleHomomorphism::new_unchecked(&self.source, &self.target, self.decodings[k].clone()).unwrap()
    }

    pub fn generators(&self) -> Vec<ModuleHomomorphism> {
        (0..self.ngens()).map(|k| self.generator(k)).collect()
    }

    /// For `Hom(M, R)`: the `g × n` matrix whose column `j` lists the values
    /// of the `j`-th generating functional on the generators of `M`.
    pub fn functional_values(&self) -> Matrix {
        let ring = self.source.ring();
        let g = self.source.ngens();
        let cols = self.decodings.iter().map(|d| d.row(0)).collect();
        Matrix::from_cols(g, cols, ring.nvars(), ORDER)
    }

    fn lifter(&self) -> &TracedBasis {
        self.lifter.get_or_init(|| {
            let ring = self.source.ring();
            let g = self.source.ngens();
            let b = self.target.presentation().repeat_diag(g);
            let span = self.kernel_columns.hcat(&b);
            TracedBasis::new(self.kernel_columns.nrows(), &span.cols(), ring.modulus())
        })
    }

    /// Coordinates of a homomorphism in terms of the generators.
    pub fn encode_matrix(&self, phi: &Matrix) -> Result<Vec<Polynomial>> {
        let v = vectorize(phi);
        let coeffs = self
            .lifter()
            .lift(&v)
            .ok_or_else(|| Error::Consistency("homomorphism outside the computed Hom module".into()))?;
        Ok(coeffs[..self.ngens()].to_vec())
    }

    pub fn encode(&self, f: &ModuleHomomorphism) -> Result<Vec<Polynomial>> {
        self.encode_matrix(f.matrix())
    }

    pub fn decode(&self, coords: &[Polynomial]) -> ModuleHomomorphism {
        let ring = self.source.ring();
        let mut acc = Matrix::zero(self.target.ngens(), self.source.ngens(), ring.nvars(), ORDER);
        for (c, d) in coords.iter().zip(&self.decodings) {
            acc = zip_matrix(&acc, d, |a, b| a.add(&b.mul(c)));
        }
        ModuleHomomorphism::new_unchecked(&self.source, &self.target, acc).unwrap()
    }

    /// Whether composition of generators commutes (for `End(M)`).
    pub fn is_commutative(&self) -> bool {
        let gens = self.generators();
        for (i, f) in gens.iter().enumerate() {
            for g in &gens[i + 1..] {
                if !f.compose(g).equals(&g.compose(f)) {
                    return false;
                }
            }
        }
        true
    }
}

/// The dual, bidual and evaluation map `ε: M → M**`.
pub struct Evaluation {
    pub dual: HomModule,
    pub bidual: HomModule,
    pub map: ModuleHomomorphism,
}

pub fn evaluation_map(m: &Arc<FPModule>) -> Result<Evaluation> {
    let d = dual(m);
    evaluation_from_dual(m, d)
}

pub fn evaluation_from_dual(m: &Arc<FPModule>, d: HomModule) -> Result<Evaluation> {
    let ring = m.ring();
    let bidual = dual(d.module());
    let values = d.functional_values();
    let mut cols = Vec::with_capacity(m.ngens());
    for i in 0..m.ngens() {
        let row = Matrix::from_rows(vec![values.row(i)], ring.nvars(), ORDER);
        let row = if values.ncols() == 0 {
            Matrix::zero(1, 0, ring.nvars(), ORDER)
        } else {
            row
        };
        cols.push(bidual.encode_matrix(&row)?);
    }
    let matrix = Matrix::from_cols(bidual.ngens(), cols, ring.nvars(), ORDER);
    let map = ModuleHomomorphism::new_unchecked(m, bidual.module(), matrix)?;
    Ok(Evaluation { dual: d, bidual, map })
}

pub fn is_torsionless(m: &Arc<FPModule>) -> Result<bool> {
    Ok(evaluation_map(m)?.map.kernel_is_zero())
}

pub fn is_reflexive(m: &Arc<FPModule>) -> Result<bool> {
    Ok(evaluation_map(m)?.map.is_isomorphism())
}

/// `ker ε_M`, which over a domain is the torsion submodule.
pub fn torsion_submodule(m: &Arc<FPModule>) -> Result<(Arc<FPModule>, ModuleHomomorphism)> {
    if !m.ring().is_domain() {
        return Err(Error::NotADomain);
    }
    Ok(kernel(&evaluation_map(m)?.map))
}

/// `(0 : M)`, as the intersection of `(im A : e_i)` over the generators.
/// Each colon is `im A ∩ R·e_i`, read off a basis in which `e_i` is the
/// last component.
pub fn annihilator(m: &FPModule) -> Ideal {
    let ring = m.ring();
    // isomorphism-invariant, so work on the Tietze-reduced presentation
    let small = minimize(ring, m.presentation()).presentation;
    let g = small.nrows();
    let all: Vec<usize> = (0..small.ncols()).collect();
    let mut acc = Ideal::unit(ring);
    for i in 0..g {
        let mut rows: Vec<usize> = (0..g).filter(|&r| r != i).collect();
        rows.push(i);
        let a = small.select(&rows, &all);
        let gb = submodule_basis(g, &a.cols(), ring.modulus());
        let gens = gb
            .elements()
            .iter()
            .filter(|v| v.leading_monomial().is_some_and(|lm| lm.component() == g - 1))
            .map(|v| v.component_part(g - 1))
            .collect();
        acc = acc.intersect(&Ideal::new(ring, gens));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn is_faithful(m: &FPModule) -> bool {
    annihilator(m).is_zero()
}

/// `M ⊗ N` on generators `(i, j) ↦ i·h + j`.
pub fn tensor(m: &Arc<FPModule>, n: &Arc<FPModule>) -> Arc<FPModule> {
    let ring = m.ring();
    let (g, h) = (m.ngens(), n.ngens());
    let a = m.presentation();
    let b = n.presentation();
    let mut cols = Vec::new();
    for l in 0..a.ncols() {
        for k in 0..h {
            let mut c = vec![ring.zero(); g * h];
            for i in 0..g {
                c[i * h + k] = a.get(i, l).clone();
            }
            cols.push(c);
        }
    }
    for i in 0..g {
        for l in 0..b.ncols() {
            let mut c = vec![ring.zero(); g * h];
            for j in 0..h {
                c[i * h + j] = b.get(j, l).clone();
            }
            cols.push(c);
        }
    }
    FPModule::new(ring, Matrix::from_cols(g * h, cols, ring.nvars(), ORDER))
}

pub fn direct_sum(m: &Arc<FPModule>, n: &Arc<FPModule>) -> Arc<FPModule> {
    FPModule::new(m.ring(), m.presentation().block_diag(n.presentation()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![x.mul(&y)], false).unwrap()
    }

    fn cusp() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![y.pow(2).sub(&x.pow(3))], true).unwrap()
    }

    #[test]
    fn hom_out_of_free_module() {
        let r = node();
        let x = r.var(0);
        let n = FPModule::quotient(&Ideal::new(&r, vec![x.clone()]));
        let h = hom_module(&FPModule::free(&r, 1), &n);
        assert_eq!(h.ngens(), 1);
        assert_eq!(annihilator(h.module()), Ideal::new(&r, vec![x]));
    }

    #[test]
    fn end_of_cyclic_module_over_node() {
        let r = node();
        let (x, y) = (r.var(0), r.var(1));
        let m = FPModule::quotient(&Ideal::new(&r, vec![x.clone()]));
        let e = hom_module(&m, &m);
        assert_eq!(e.ngens(), 1);
        assert_eq!(annihilator(e.module()), Ideal::new(&r, vec![x.clone()]));
        let d = dual(&m);
        assert_eq!(d.ngens(), 1);
        assert_eq!(annihilator(d.module()), Ideal::new(&r, vec![x.clone()]));
        assert_eq!(d.functional_values().get(0, 0).monic(), y);
    }

    #[test]
    fn encode_decode_round_trip() {
        let r = cusp();
        let m = FPModule::from_ideal(&r.maximal_ideal());
        let e = hom_module(&m, &m);
        for k in 0..e.ngens() {
            let coords = e.encode(&e.generator(k)).unwrap();
            assert!(e.decode(&coords).equals(&e.generator(k)));
        }
    }

    #[test]
    fn duals_of_maximal_ideals() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let m = FPModule::from_ideal(&r.maximal_ideal());
        let d = dual(&m);
        assert_eq!(d.module().minimal_generators(), 1);
        assert!(is_faithful(d.module()));
        let ev = evaluation_map(&m).unwrap();
        assert!(ev.map.kernel_is_zero());
        assert!(!ev.map.cokernel_is_zero());
        let (c, _) = cokernel(&ev.map);
        assert_eq!(annihilator(&c), r.maximal_ideal());
        assert!(is_torsionless(&m).unwrap());
        assert!(!is_reflexive(&m).unwrap());

        let c = cusp();
        assert!(is_reflexive(&FPModule::from_ideal(&c.maximal_ideal())).unwrap());
        let s = node();
        let x = s.var(0);
        assert!(is_reflexive(&FPModule::from_ideal(&Ideal::new(&s, vec![x]))).unwrap());
        assert!(is_reflexive(&FPModule::free(&s, 2)).unwrap());
    }

    #[test]
    fn kernels_and_cokernels() {
        let r = node();
        let (x, y) = (r.var(0), r.var(1));
        let f1 = FPModule::free(&r, 1);
        let mult = ModuleHomomorphism::scalar(&f1, &x);
        let (k, inc) = kernel(&mult);
        assert_eq!(k.ngens(), 1);
        assert_eq!(inc.matrix().get(0, 0).monic(), y);
        let id = ModuleHomomorphism::identity(&f1);
        assert!(kernel(&id).0.is_zero());
        assert!(cokernel(&id).0.is_zero());
    }

    #[test]
    fn annihilators_and_generators() {
        let r = node();
        let x = r.var(0);
        assert!(annihilator(&FPModule::free(&r, 2)).is_zero());
        let q = FPModule::quotient(&Ideal::new(&r, vec![x.clone()]));
        assert_eq!(annihilator(&q), Ideal::new(&r, vec![x]));
        assert_eq!(FPModule::free(&r, 3).minimal_generators(), 3);
        assert_eq!(FPModule::quotient(&r.maximal_ideal()).minimal_generators(), 1);
    }

    #[test]
    fn tensor_of_coordinate_lines() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let a = FPModule::quotient(&Ideal::new(&r, vec![r.var(0)]));
        let b = FPModule::quotient(&Ideal::new(&r, vec![r.var(1)]));
        let t = tensor(&a, &b);
        assert_eq!(t.minimal_generators(), 1);
        assert_eq!(annihilator(&t), r.maximal_ideal());
    }

    #[test]
    fn torsion_needs_a_domain() {
        let r = node();
        assert_eq!(torsion_submodule(&FPModule::free(&r, 1)).err(), Some(Error::NotADomain));
        let c = cusp();
        let m = FPModule::from_ideal(&c.maximal_ideal());
        let t = tensor(&m, dual(&m).module());
        assert!(!torsion_submodule(&t).unwrap().0.is_zero());
        assert!(torsion_submodule(&FPModule::free(&c, 2)).unwrap().0.is_zero());
    }

    #[test]
    fn tietze_keeps_the_module() {
        let r = AmbientRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        // coker [[1, x], [y, 0]] ≅ R/(xy) on the second generator
        let a = Matrix::from_rows(vec![vec![r.one(), x.clone()], vec![y.clone(), r.zero()]], 2, ORDER);
        let m = FPModule::new(&r, a);
        let (small, t) = m.minimized();
        assert_eq!(small.ngens(), 1);
        assert_eq!(t.kept, vec![1]);
        assert_eq!(annihilator(&small), Ideal::new(&r, vec![x.mul(&y)]));
    }
}
