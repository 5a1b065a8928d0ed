//! Affine presentations of rings `R ⊆ C ⊆ Q(R)` given as fractional ideals.

use std::sync::Arc;

use crate::arith::{prime, Fp, Monomial, MonomialOrder, Polynomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GroebnerBasis};
use crate::ring::{AmbientRing, ORDER};
use crate::trace::FractionalIdeal;

/// `C = k[v]/J'`, with the images of the variables of `R`, and one chart
/// per point of the fiber over the origin of `R`, translated to the origin.
pub struct FractionalRing {
    pub names: Vec<String>,
    pub relations: Vec<Polynomial>,
    /// Image in `C` of each variable of `R`.
    pub images: Vec<Polynomial>,
    pub charts: Vec<Chart>,
}

pub struct Chart {
    pub point: Vec<Fp>,
    pub ring: Arc<AmbientRing>,
}

impl FractionalRing {
    /// Gorenstein at every maximal ideal over the origin.
    pub fn is_gorenstein(&self) -> bool {
        self.charts.iter().all(|c| c.ring.is_gorenstein())
    }

    pub fn format(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| r.fmt_with(&self.names)).collect();
        let mut s = format!("F{}[{}]", prime(), self.names.join(","));
        if !rels.is_empty() {
            s.push_str(&format!(" / ({})", rels.join(", ")));
        }
        s
    }
}

pub fn ring_presentation_of_fractional(c: &FractionalIdeal) -> Result<FractionalRing> {
    let ring = c.ring();
    if !c.contains_one() {
        return Err(Error::NotUnital);
    }
    if !c.is_multiplicatively_closed() {
        return Err(Error::NotMultiplicativelyClosed);
    }
    let n = ring.nvars();
    let nums = c.numerator().canonical_generators();
    let m = nums.len();
    let total = n + m + 1;
    if total > MAX_VARS {
        return Err(Error::Structural(format!("presentation needs {total} variables")));
    }
    let d = c.denominator().with_nvars(total);
    let mut gens: Vec<Polynomial> = ring.relations().iter().map(|r| r.with_nvars(total)).collect();
    for (i, a) in nums.iter().enumerate() {
        let u = Polynomial::var(total, ORDER, n + i);
        gens.push(d.mul(&u).sub(&a.with_nvars(total)));
    }
    let t = Polynomial::var(total, ORDER, n + m);
    gens.push(Polynomial::one(total, ORDER).sub(&d.mul(&t)));
    let width = n + m;
    let mut relations: Vec<Polynomial> = eliminate(total, &gens, &[n + m])
        .iter()
        .map(|g| g.with_nvars(width))
        .collect();

    let mut names: Vec<String> = ring.names().to_vec();
    names.extend((1..=m).map(|i| format!("u{i}")));
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(width, ORDER, i)).collect();
    let mut alive: Vec<usize> = (0..width).collect();

    // Drop variables that are polynomials in the others, fractions first.
    let candidates: Vec<usize> = (n..width).chain(0..n).collect();
    for v in candidates {
        let order = MonomialOrder::Elimination { block: 1 << v };
        let gb = GroebnerBasis::compute(width, order, &relations);
        let var = Monomial::var(v);
        let Some(g) = gb.elements().iter().find(|g| g.leading_monomial() == Some(&var)) else {
            continue;
        };
        let value = Polynomial::var(width, ORDER, v).sub(&g.with_order(ORDER));
        let values: Vec<Polynomial> = (0..width)
            .map(|k| if k == v { value.clone() } else { Polynomial::var(width, ORDER, k) })
            .collect();
        images = images.iter().map(|p| p.substitute(&values)).collect();
        relations = gb
            .elements()
            .iter()
            .filter(|g| !g.involves(v))
            .map(|g| g.with_order(ORDER))
            .collect();
        alive.retain(|&k| k != v);
    }

    let mut map = vec![0usize; width];
    for (new, &old) in alive.iter().enumerate() {
        map[old] = new;
    }
    let k = alive.len();
    if k == 0 {
        return Err(Error::Consistency("presentation lost every variable".into()));
    }
    let relations: Vec<Polynomial> = GroebnerBasis::compute(
        k,
        ORDER,
        &relations.iter().map(|r| r.remap_vars(&map, k, ORDER)).collect::<Vec<_>>(),
    )
    .elements()
    .to_vec();
    let images: Vec<Polynomial> = images.iter().map(|p| p.remap_vars(&map, k, ORDER)).collect();
    let names: Vec<String> = alive.iter().map(|&i| names[i].clone()).collect();

    let mut fiber = relations.clone();
    fiber.extend(images.iter().cloned());
    let points = rational_points(k, &fiber)?;
    let mut charts = Vec::with_capacity(points.len());
    for point in points {
        let shift: Vec<Polynomial> = (0..k)
            .map(|i| {
                Polynomial::var(k, ORDER, i).add(&Polynomial::constant(k, ORDER, point[i]))
            })
            .collect();
        let moved: Vec<Polynomial> = relations.iter().map(|r| r.substitute(&shift)).collect();
        let chart = AmbientRing::with_seed(names.clone(), moved, false, ring.seed())?;
        charts.push(Chart { point, ring: chart });
    }
    Ok(FractionalRing {
        names,
        relations,
        images,
        charts,
    })
}

/// All points of a zero-dimensional variety, which must be rational over
/// the prime field.
fn rational_points(nvars: usize, gens: &[Polynomial]) -> Result<Vec<Vec<Fp>>> {
    let mut eliminants = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let others: Vec<usize> = (0..nvars).filter(|&k| k != v).collect();
        let e = eliminate(nvars, gens, &others);
        let Some(f) = e.into_iter().next() else {
            return Err(Error::Consistency("fiber over the origin is not finite".into()));
        };
        eliminants.push(Univariate::from_polynomial(&f, v));
    }
    let roots: Vec<Vec<Fp>> = eliminants.iter().map(|f| f.roots()).collect();
    let mut points: Vec<Vec<Fp>> = vec![Vec::new()];
    for r in &roots {
        let mut next = Vec::new();
        for p in &points {
            for &c in r {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        points = next;
    }
    points.retain(|p| gens.iter().all(|g| g.evaluate(p).is_zero()));

    // Count geometric points: standard monomials of the radical.
    let mut radical: Vec<Polynomial> = gens.to_vec();
    for (v, f) in eliminants.iter().enumerate() {
        radical.push(f.squarefree().to_polynomial(nvars, v));
    }
    let gb = GroebnerBasis::compute(nvars, ORDER, &radical);
    if standard_monomial_count(nvars, &gb) != points.len() {
        return Err(Error::NonRationalFiber);
    }
    Ok(points)
}

fn standard_monomial_count(nvars: usize, gb: &GroebnerBasis) -> usize {
    let leads: Vec<Monomial> = gb.elements().iter().map(|g| *g.leading_monomial().unwrap()).collect();
    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    let mut seen = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    if !standard(&Monomial::one()) {
        return 0;
    }
    while let Some(m) = frontier.pop() {
        for v in 0..nvars {
            let next = m.mul(&Monomial::var(v));
            if standard(&next) && !seen.contains(&next) {
                seen.push(next);
                frontier.push(next);
            }
        }
    }
    seen.len()
}

/// Dense univariate polynomial, lowest coefficient first.
#[derive(Clone, Debug, PartialEq)]
struct Univariate(Vec<Fp>);

impl Univariate {
    fn from_polynomial(p: &Polynomial, var: usize) -> Univariate {
        let deg = p.terms().iter().map(|(m, _)| m.exponent(var) as usize).max().unwrap_or(0);
        let mut c = vec![Fp::ZERO; deg + 1];
        for (m, v) in p.terms() {
            c[m.exponent(var) as usize] += *v;
        }
        Univariate(c).trim()
    }

    fn to_polynomial(&self, nvars: usize, var: usize) -> Polynomial {
        let x = Polynomial::var(nvars, ORDER, var);
        let mut acc = Polynomial::zero(nvars, ORDER);
        for (e, c) in self.0.iter().enumerate() {
            acc = acc.add(&x.pow(e as u32).scale(*c));
        }
        acc
    }

    fn trim(mut self) -> Univariate {
        while self.0.len() > 1 && self.0.last().unwrap().is_zero() {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn eval(&self, x: Fp) -> Fp {
        self.0.iter().rev().fold(Fp::ZERO, |acc, c| acc * x + *c)
    }

    fn derivative(&self) -> Univariate {
        if self.0.len() <= 1 {
            return Univariate(vec![Fp::ZERO]);
        }
        Univariate(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| *c * Fp::from_u64(i as u64 + 1))
                .collect(),
        )
        .trim()
    }

    fn divrem(&self, d: &Univariate) -> (Univariate, Univariate) {
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].inv().unwrap();
        if r.len() <= dd {
            return (Univariate(vec![Fp::ZERO]), self.clone());
        }
        let mut q = vec![Fp::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * lead;
            q[k] = c;
            for (i, dc) in d.0.iter().enumerate() {
                let s = c * *dc;
                r[k + i] -= s;
            }
        }
        (Univariate(q).trim(), Univariate(r).trim())
    }

    fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn squarefree(&self) -> Univariate {
        let d = self.derivative();
        if d.is_zero() {
            return self.clone();
        }
        self.divrem(&self.gcd(&d)).0
    }

    fn roots(&self) -> Vec<Fp> {
        if self.degree() == 0 {
            return Vec::new();
        }
        (0..prime() as u64)
            .map(Fp::from_u64)
            .filter(|&x| self.eval(x).is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ideal;
    use crate::trace::fractional_end;

    fn cusp() -> Arc<AmbientRing> {
        let x = Polynomial::var(2, ORDER, 0);
        let y = Polynomial::var(2, ORDER, 1);
        AmbientRing::new(vec!["x".into(), "y".into()], vec![y.pow(2).sub(&x.pow(3))], true).unwrap()
    }

    #[test]
    fn whole_ring_presents_itself() {
        let r = cusp();
        let c = FractionalIdeal::whole_ring(&r);
        let p = ring_presentation_of_fractional(&c).unwrap();
        assert_eq!(p.names, vec!["x".to_string(), "y".to_string()]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.charts.len(), 1);
        assert!(p.is_gorenstein());
    }

    #[test]
    fn endomorphisms_of_cusp_maximal_ideal_are_a_line() {
        let r = cusp();
        let e = fractional_end(&r.maximal_ideal()).unwrap();
        let p = ring_presentation_of_fractional(&e).unwrap();
        assert_eq!(p.names.len(), 1);
        assert!(p.relations.is_empty());
        assert_eq!(p.charts.len(), 1);
        assert!(p.is_gorenstein());
    }

    #[test]
    fn rejects_non_rings() {
        let r = cusp();
        let x = r.var(0);
        let c = FractionalIdeal::new(Ideal::new(&r, vec![x.clone()]), r.one()).unwrap();
        assert_eq!(ring_presentation_of_fractional(&c).err(), Some(Error::NotUnital));
        let c = FractionalIdeal::new(Ideal::new(&r, vec![x.clone(), r.one()]), x.clone()).unwrap();
        // (1/x)(x, 1) contains 1/x whose square 1/x^2 is not in it
        assert_eq!(ring_presentation_of_fractional(&c).err(), Some(Error::NotMultiplicativelyClosed));
    }

    #[test]
    fn univariate_helpers() {
        let f = Univariate(vec![Fp::new(-1), Fp::ZERO, Fp::ONE]); // u^2 - 1
        let mut roots = f.roots();
        roots.sort();
        assert_eq!(roots, vec![Fp::ONE, Fp::new(-1)]);
        let sq = Univariate(vec![Fp::ONE, Fp::new(2), Fp::ONE]); // (u+1)^2
        assert_eq!(sq.squarefree().degree(), 1);
    }
}
