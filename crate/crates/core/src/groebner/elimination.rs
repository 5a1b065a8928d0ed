use crate::arith::{MonomialOrder, Polynomial};

use super::GroebnerBasis;

/// Generators of `(gens) ∩ k[remaining variables]`, returned as a reduced
/// grevlex Gröbner basis in the original variable numbering.
pub fn eliminate(nvars: usize, gens: &[Polynomial], vars: &[usize]) -> Vec<Polynomial> {
    let block = vars.iter().fold(0u16, |acc, &v| acc | (1 << v));
    let order = MonomialOrder::Elimination { block };
    let gb = GroebnerBasis::compute(nvars, order, gens);
    let mut out: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| vars.iter().all(|&v| !g.involves(v)))
        .map(|g| g.with_order(MonomialOrder::GrevLex))
        .collect();
    out.sort_by(|a, b| {
        MonomialOrder::GrevLex.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n)
            .map(|i| Polynomial::var(n, MonomialOrder::GrevLex, i))
            .collect()
    }

    #[test]
    fn parametrised_line_has_no_relation() {
        let v = vars(2);
        let (x, u) = (&v[0], &v[1]);
        assert!(eliminate(2, &[u.sub(&x.mul(x))], &[0]).is_empty());
    }

    #[test]
    fn cusp_from_parametrisation() {
        let v = vars(3);
        let (x, u, w) = (&v[0], &v[1], &v[2]);
        let out = eliminate(3, &[u.sub(&x.pow(2)), w.sub(&x.pow(3))], &[0]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0], w.mul(w).sub(&u.pow(3)).monic());
    }

    #[test]
    fn rabinowitsch_leaves_ideal_alone() {
        let v = vars(4);
        let (x, u, y, t) = (&v[0], &v[1], &v[2], &v[3]);
        let one = Polynomial::one(4, MonomialOrder::GrevLex);
        let out = eliminate(4, &[x.mul(u).sub(y), one.sub(&x.mul(t))], &[3]);
        assert_eq!(out, vec![x.mul(u).sub(y).monic()]);
    }
}
