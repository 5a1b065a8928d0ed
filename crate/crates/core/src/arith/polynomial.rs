//! Sparse multivariate polynomials (and free-module vectors) over the prime field.

use std::cmp::Ordering;

use super::field::Fp;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// Terms are kept sorted strictly descending under `order`, with no zero
/// coefficients. Terms may sit in different free-module components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Fp)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Polynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Polynomial {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Fp) -> Polynomial {
        Polynomial::monomial(nvars, order, Monomial::one(), c)
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::constant(nvars, order, Fp::ONE)
    }

    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Polynomial {
        assert!(i < nvars);
        Polynomial::monomial(nvars, order, Monomial::var(i), Fp::ONE)
    }

    pub fn monomial(nvars: usize, order: MonomialOrder, m: Monomial, c: Fp) -> Polynomial {
        let mut p = Polynomial::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(nvars: usize, order: MonomialOrder, mut terms: Vec<(Monomial, Fp)>) -> Polynomial {
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Fp)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial {
            nvars,
            order,
            terms: out,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Fp)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Fp)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::one() && self.terms[0].1 == Fp::ONE
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Fp)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<Fp> {
        self.terms.first().map(|t| t.1)
    }

    /// Nonzero constant in component 0.
    pub fn as_constant(&self) -> Option<Fp> {
        match self.terms.as_slice() {
            [] => Some(Fp::ZERO),
            [(m, c)] if *m == Monomial::one() => Some(*c),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Fp {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one() && m.component() == 0)
            .map_or(Fp::ZERO, |t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.involves(var))
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        assert_eq!(self.order, other.order, "polynomials under different orders");
    }

    /// Same polynomial sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    /// Same terms viewed in a ring with more variables.
    pub fn with_nvars(&self, nvars: usize) -> Polynomial {
        assert!(nvars <= MAX_VARS);
        assert!(self.terms.iter().all(|(m, _)| m.support_len() <= nvars));
        Polynomial {
            nvars,
            order: self.order,
            terms: self.terms.clone(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(Fp::ONE, &Monomial::one(), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(-Fp::ONE, &Monomial::one(), other)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(-Fp::ONE)
    }

    pub fn scale(&self, c: Fp) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|&(m, a)| (m, a * c)).collect(),
        }
    }

    /// Multiplies by `c * m`; `m` may carry a component if `self` lives in component 0.
    pub fn mul_term(&self, m: &Monomial, c: Fp) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        // Multiplying by a monomial preserves the term order within a component,
        // and a component shift is uniform, so the result stays sorted.
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), *b * c)).collect(),
        }
    }

    /// `self + c * m * other` in a single merge pass.
    pub fn combine(&self, c: Fp, m: &Monomial, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match order.compare(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, b[j].1 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1 + b[j].1 * c;
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if !c.is_zero() {
            out.extend(b[j..].iter().map(|(bm, bc)| (bm.mul(m), *bc * c)));
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial {
            nvars: self.nvars,
            order,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.len() == 1 {
            let (m, c) = short.terms[0];
            return long.mul_term(&m, c);
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), *ca * *cb));
            }
        }
        Polynomial::from_terms(self.nvars, self.order, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c != Fp::ONE => self.scale(c.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Moves every term into component `component` (terms must be in component 0).
    pub fn into_component(&self, component: usize) -> Polynomial {
        let e = Monomial::unit_vector(component);
        self.mul_term(&e, Fp::ONE)
    }

    /// Terms of one component, moved to component 0.
    pub fn component_part(&self, component: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.component() == component)
            .map(|(m, c)| (m.with_component(0), *c))
            .collect();
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Substitutes `values[i]` for variable `i` (only the first `values.len()` variables).
    pub fn substitute(&self, values: &[Polynomial]) -> Polynomial {
        let nvars = values.first().map_or(self.nvars, |v| v.nvars);
        let order = values.first().map_or(self.order, |v| v.order);
        let mut acc = Polynomial::zero(nvars, order);
        for (m, c) in &self.terms {
            let mut t = Polynomial::monomial(nvars, order, Monomial::unit_vector(m.component()), *c);
            for i in 0..self.nvars {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&values[i].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Renames variables: variable `i` becomes variable `map[i]` of a ring with `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize, order: MonomialOrder) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map), *c)).collect();
        Polynomial::from_terms(nvars, order, terms)
    }

    pub fn evaluate(&self, point: &[Fp]) -> Fp {
        let mut acc = Fp::ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, v) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t *= v.pow(e as u64);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = c.signed();
            let (neg, abs) = (v < 0, v.unsigned_abs());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(names);
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

/// Multivariate division: `f = sum q_i g_i + r` with no term of `r` divisible
/// by a leading term of any `g_i`. Divisors are tried in the given order.
pub fn divide_with_remainder(f: &Polynomial, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
    if divisors.is_empty() {
        return Err(Error::Structural("division by an empty list".into()));
    }
    for g in divisors {
        if g.nvars != f.nvars {
            return Err(Error::Structural(format!(
                "variable count mismatch: {} vs {}",
                g.nvars, f.nvars
            )));
        }
    }
    let order = f.order;
    let divisors: Vec<Polynomial> = divisors.iter().map(|g| g.with_order(order)).collect();
    let mut quotients: Vec<Vec<(Monomial, Fp)>> = vec![Vec::new(); divisors.len()];
    let mut remainder = Vec::new();
    let mut p = f.clone();
    while let Some(&(lm, lc)) = p.leading_term() {
        let hit = divisors.iter().enumerate().find_map(|(i, g)| {
            let (gm, gc) = g.leading_term()?;
            gm.quotient_of(&lm).map(|q| (i, q, lc / *gc))
        });
        match hit {
            Some((i, q, c)) => {
                quotients[i].push((q, c));
                p = p.combine(-c, &q, &divisors[i]);
            }
            None => {
                remainder.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    let quotients = quotients
        .into_iter()
        .map(|t| Polynomial::from_terms(f.nvars, order, t))
        .collect();
    Ok((
        quotients,
        Polynomial {
            nvars: f.nvars,
            order,
            terms: remainder,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, o: MonomialOrder, i: usize) -> Polynomial {
        Polynomial::var(n, o, i)
    }

    #[test]
    fn division_single_variable_divisor() {
        let o = MonomialOrder::GrevLex;
        let (xx, yy) = (x(2, o, 0), x(2, o, 1));
        let f = xx.mul(&xx).mul(&yy).add(&Polynomial::one(2, o));
        let (q, r) = divide_with_remainder(&f, std::slice::from_ref(&xx)).unwrap();
        assert_eq!(q[0], xx.mul(&yy));
        assert!(r.is_one());
    }

    #[test]
    fn division_of_zero() {
        let o = MonomialOrder::GrevLex;
        let (q, r) = divide_with_remainder(&Polynomial::zero(2, o), &[x(2, o, 0), x(2, o, 1)]).unwrap();
        assert!(q.iter().all(|p| p.is_zero()));
        assert!(r.is_zero());
    }

    #[test]
    fn division_textbook_trace() {
        // f = x^2 y + x y^2 + y^2 by (xy - 1, y^2 - 1) in lex: remainder x + y + 1
        let o = MonomialOrder::Lex;
        let (xx, yy) = (x(2, o, 0), x(2, o, 1));
        let one = Polynomial::one(2, o);
        let f = xx.mul(&xx).mul(&yy).add(&xx.mul(&yy).mul(&yy)).add(&yy.mul(&yy));
        let g1 = xx.mul(&yy).sub(&one);
        let g2 = yy.mul(&yy).sub(&one);
        let (q, r) = divide_with_remainder(&f, &[g1.clone(), g2.clone()]).unwrap();
        assert_eq!(r, xx.add(&yy).add(&one));
        assert_eq!(q[0].mul(&g1).add(&q[1].mul(&g2)).add(&r), f);
    }

    #[test]
    fn division_rejects_mismatched_rings() {
        let o = MonomialOrder::GrevLex;
        let err = divide_with_remainder(&x(2, o, 0), &[x(3, o, 0)]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        assert!(divide_with_remainder(&x(2, o, 0), &[]).is_err());
    }

    #[test]
    fn formatting() {
        let o = MonomialOrder::GrevLex;
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = x(3, o, 0).mul(&x(3, o, 0)).mul(&x(3, o, 1)).add(&x(3, o, 2).scale(Fp::new(3))).sub(&Polynomial::one(3, o));
        assert_eq!(p.fmt_with(&names), "x^2*y + 3*z - 1");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u16..3, nvars), -5i64..5), 0..6).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), Fp::new(c)))
                .collect();
            Polynomial::from_terms(nvars, MonomialOrder::GrevLex, terms)
        })
    }

    proptest! {
        #[test]
        fn division_reassembles(f in arb_poly(3), gs in prop::collection::vec(arb_poly(3), 1..4)) {
            let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
            prop_assume!(!gs.is_empty());
            let (q, r) = divide_with_remainder(&f, &gs).unwrap();
            let mut acc = r.clone();
            for (qi, gi) in q.iter().zip(&gs) {
                acc = acc.add(&qi.mul(gi));
            }
            prop_assert_eq!(&acc, &f);
            for (m, _) in r.terms() {
                prop_assert!(gs.iter().all(|g| !g.leading_monomial().unwrap().divides(m)));
            }
            let (q2, r2) = divide_with_remainder(&f, &gs).unwrap();
            prop_assert_eq!(q, q2);
            prop_assert_eq!(r, r2);
        }

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
