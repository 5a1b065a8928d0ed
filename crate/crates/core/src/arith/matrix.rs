//! Dense matrices of polynomials. Columns are the natural unit: a presentation
//! matrix lists relations as columns.

use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    nvars: usize,
    order: MonomialOrder,
    entries: Vec<Polynomial>,
}

impl Matrix {
    pub fn zero(nrows: usize, ncols: usize, nvars: usize, order: MonomialOrder) -> Matrix {
        Matrix {
            nrows,
            ncols,
            nvars,
            order,
            entries: vec![Polynomial::zero(nvars, order); nrows * ncols],
        }
    }

    pub fn identity(n: usize, nvars: usize, order: MonomialOrder) -> Matrix {
        let mut m = Matrix::zero(n, n, nvars, order);
        for i in 0..n {
            m.set(i, i, Polynomial::one(nvars, order));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>, nvars: usize, order: MonomialOrder) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix {
            nrows,
            ncols,
            nvars,
            order,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix with `nrows` rows from its columns.
    pub fn from_cols(nrows: usize, cols: Vec<Vec<Polynomial>>, nvars: usize, order: MonomialOrder) -> Matrix {
        let ncols = cols.len();
        let mut m = Matrix::zero(nrows, ncols, nvars, order);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, e) in col.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter()
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn cols(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols).map(|j| self.col(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.ncols, self.nrows, self.nvars, self.order);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols();
        cols.extend(other.cols());
        Matrix::from_cols(self.nrows, cols, self.nvars, self.order)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zero(
            self.nrows + other.nrows,
            self.ncols + other.ncols,
            self.nvars,
            self.order,
        );
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.nrows {
            for j in 0..other.ncols {
                m.set(self.nrows + i, self.ncols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `copies` diagonal copies of `self`.
    pub fn repeat_diag(&self, copies: usize) -> Matrix {
        let mut m = Matrix::zero(self.nrows * copies, self.ncols * copies, self.nvars, self.order);
        for k in 0..copies {
            for i in 0..self.nrows {
                for j in 0..self.ncols {
                    m.set(k * self.nrows + i, k * self.ncols + j, self.get(i, j).clone());
                }
            }
        }
        m
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(rows.len(), cols.len(), self.nvars, self.order);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Plain polynomial product (no reduction modulo any ideal).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix shape mismatch");
        let mut m = Matrix::zero(self.nrows, other.ncols, self.nvars, self.order);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(self.nvars, self.order);
                for k in 0..self.ncols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            nvars: self.nvars,
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.nrows)
            .map(|i| {
                let r: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).fmt_with(names)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Packs a column into a single free-module polynomial, entry `i` going to
/// component `offset + i`.
pub fn pack(column: &[Polynomial], offset: usize, nvars: usize, order: MonomialOrder) -> Polynomial {
    let mut terms = Vec::new();
    for (i, e) in column.iter().enumerate() {
        for (m, c) in e.terms() {
            terms.push((m.with_component(offset + i), *c));
        }
    }
    Polynomial::from_terms(nvars, order, terms)
}

/// Inverse of [`pack`] for components `offset..offset + rank`.
pub fn unpack(v: &Polynomial, offset: usize, rank: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<_>> = vec![Vec::new(); rank];
    for (m, c) in v.terms() {
        let k = m.component();
        if k >= offset && k < offset + rank {
            buckets[k - offset].push((m.with_component(0), *c));
        }
    }
    buckets
        .into_iter()
        .map(|t| Polynomial::from_terms(v.nvars(), v.order(), t))
        .collect()
}
