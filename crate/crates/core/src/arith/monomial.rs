//! Monomials and monomial orders.
//!
//! A monomial carries a free-module component index next to its exponents, so
//! a vector of a free module `k[x]^g` is simply a polynomial whose terms live
//! in different components. Ring elements use component 0 throughout.

use std::cmp::Ordering;
use std::fmt;

/// Hard upper bound on the number of variables of any polynomial ring.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
    component: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
            component: 0,
        }
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn unit_vector(component: usize) -> Monomial {
        Monomial::one().with_component(component)
    }

    pub fn with_component(mut self, component: usize) -> Monomial {
        self.component = component as u32;
        self
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component(&self) -> usize {
        self.component as usize
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; at most one factor may sit in a nonzero component.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.component == 0 || other.component == 0);
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
            component: self.component + other.component,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.component == other.component
            && self.degree <= other.degree
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` as a component-0 monomial, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = other.exps[i] - self.exps[i];
        }
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
            component: 0,
        })
    }

    /// Least common multiple; only defined inside a single component.
    pub fn lcm(&self, other: &Monomial) -> Option<Monomial> {
        if self.component != other.component {
            return None;
        }
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
            degree += *e as u32;
        }
        Some(Monomial {
            exps,
            degree,
            component: self.component,
        })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.exps[var] > 0
    }

    /// Monomial with the exponents rearranged: variable `i` moves to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] = e;
            }
        }
        Monomial {
            exps,
            degree: self.degree,
            component: self.component,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len();
        write!(f, "{:?}@{}", &self.exps[..n], self.component)
    }
}

/// A total order on monomials of one component, extended to free modules
/// position-over-term: a smaller component index is a larger term.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Block order: grevlex on the variables in `block` (a bit mask) first,
    /// then grevlex on the remaining ones. Eliminates the masked variables.
    Elimination { block: u16 },
    /// Grevlex on the terms first, ties broken by component (term over
    /// position). Keeps degrees balanced across components in syzygy work.
    GrevLexTop,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if *self == MonomialOrder::GrevLexTop {
            return grevlex(a, b, u16::MAX).then_with(|| b.component.cmp(&a.component));
        }
        match b.component.cmp(&a.component) {
            Ordering::Equal => self.compare_terms(a, b),
            other => other,
        }
    }

    fn compare_terms(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex | MonomialOrder::GrevLexTop => grevlex(a, b, u16::MAX),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination { block } => {
                grevlex(a, b, block).then_with(|| grevlex(a, b, !block))
            }
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial, mask: u16) -> Ordering {
    let (da, db) = if mask == u16::MAX {
        (a.degree, b.degree)
    } else {
        let d = |m: &Monomial| {
            (0..MAX_VARS)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| m.exps[i] as u32)
                .sum::<u32>()
        };
        (d(a), d(b))
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) != 0 && a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // x > y > z, x*z < y^2 in grevlex
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let elim = MonomialOrder::Elimination { block: 0b10 };
        // y is eliminated: any monomial with y beats one without
        assert_eq!(elim.compare(&m(&[0, 1]), &m(&[9, 0])), Ordering::Greater);
        assert_eq!(elim.compare(&m(&[2, 1]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn term_over_position() {
        let o = MonomialOrder::GrevLexTop;
        let a = m(&[1, 0]).with_component(1);
        let b = m(&[0, 1]).with_component(0);
        assert_eq!(o.compare(&a, &b), Ordering::Greater);
        assert_eq!(o.compare(&a.with_component(0), &a), Ordering::Greater);
    }

    #[test]
    fn position_over_term() {
        let o = MonomialOrder::GrevLex;
        let a = m(&[0, 0]).with_component(0);
        let b = m(&[5, 5]).with_component(1);
        assert_eq!(o.compare(&a, &b), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b).unwrap(), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3])).unwrap(), m(&[1, 3]));
        assert!(a.lcm(&a.with_component(1)).is_none());
        assert!(!a.with_component(1).divides(&b.with_component(2)));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
    }

    #[test]
    fn order_refines_divisibility() {
        let small = m(&[1, 1, 0]);
        let big = m(&[1, 2, 3]);
        for o in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Elimination { block: 0b100 },
        ] {
            assert_eq!(o.compare(&big, &small), Ordering::Greater);
        }
    }
}
