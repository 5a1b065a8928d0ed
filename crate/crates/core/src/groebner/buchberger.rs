//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! Works uniformly for ideals and for submodules of free modules: vectors are
//! polynomials whose monomials carry a component index, ordered
//! position-over-term.

use std::collections::BTreeSet;

use crate::arith::{Fp, Monomial, MonomialOrder, Polynomial};

/// A reduced Gröbner basis: monic, inter-reduced, sorted by descending leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub fn compute(nvars: usize, order: MonomialOrder, gens: &[Polynomial]) -> GroebnerBasis {
        let mut engine = Engine::new(nvars, order);
        for g in gens {
            assert_eq!(g.nvars(), nvars, "generator over a different ring");
            let g = g.with_order(order);
            let h = engine.reduce(g);
            if !h.is_zero() {
                let sugar = max_degree(&h);
                engine.insert(h.monic(), sugar);
            }
        }
        engine.run();
        engine.finish()
    }

    /// The empty basis (of the zero submodule).
    pub fn empty(nvars: usize, order: MonomialOrder) -> GroebnerBasis {
        GroebnerBasis {
            nvars,
            order,
            elements: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the basis contains a unit (the ideal is the whole ring).
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_one())
    }

    /// Full normal form of `p`.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(&self.elements, p.with_order(self.order), None)
    }

    /// Reduces `p` only while its leading term lies in a component below
    /// `stop`; returns what is left, unreduced from that point on.
    pub fn reduce_above(&self, p: &Polynomial, stop: usize) -> Polynomial {
        normal_form(&self.elements, p.with_order(self.order), Some(stop))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Checks directly that every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.elements;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if let Some(s) = s_polynomial(&g[i], &g[j]) {
                    if !normal_form(g, s, None).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the basis is reduced in the strict sense.
    pub fn is_reduced(&self) -> bool {
        let g = &self.elements;
        g.iter().enumerate().all(|(i, p)| {
            p.leading_coefficient() == Some(Fp::ONE)
                && p.terms().iter().all(|(m, _)| {
                    g.iter()
                        .enumerate()
                        .all(|(j, q)| i == j || !q.leading_monomial().unwrap().divides(m))
                })
        })
    }
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let (fm, fc) = *f.leading_term()?;
    let (gm, gc) = *g.leading_term()?;
    let l = fm.lcm(&gm)?;
    let a = fm.quotient_of(&l).unwrap();
    let b = gm.quotient_of(&l).unwrap();
    let left = f.mul_term(&a, fc.inv().unwrap());
    Some(left.combine(-gc.inv().unwrap(), &b, g))
}

fn max_degree(p: &Polynomial) -> u32 {
    p.terms().iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

fn normal_form(basis: &[Polynomial], p: Polynomial, stop: Option<usize>) -> Polynomial {
    normal_form_by(
        |m| basis.iter().find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(m))),
        p,
        stop,
    )
}

/// Normal form where `find_reducer` picks a polynomial whose leading monomial
/// divides the given one.
fn normal_form_by<'a>(
    find_reducer: impl Fn(&Monomial) -> Option<&'a Polynomial>,
    mut p: Polynomial,
    stop: Option<usize>,
) -> Polynomial {
    let nvars = p.nvars();
    let order = p.order();
    let mut rest: Vec<(Monomial, Fp)> = Vec::new();
    loop {
        let Some(&(lm, lc)) = p.leading_term() else { break };
        if let Some(s) = stop {
            if lm.component() >= s {
                break;
            }
        }
        match find_reducer(&lm) {
            Some(g) => {
                let (gm, gc) = *g.leading_term().unwrap();
                let q = gm.quotient_of(&lm).unwrap();
                p = p.combine(-(lc / gc), &q, g);
            }
            None => {
                if stop.is_some() {
                    break;
                }
                rest.push((lm, lc));
                let mut terms = p.into_terms();
                terms.remove(0);
                p = Polynomial::from_terms(nvars, order, terms);
            }
        }
    }
    if rest.is_empty() {
        return p;
    }
    rest.extend(p.into_terms());
    Polynomial::from_terms(nvars, order, rest)
}

/// Normal form that also applies every reduction step to a representation:
/// reducing by element `k` with factor `c·q` subtracts `c·q·reps[k]` from `rep`.
fn tracked_normal_form(
    find_reducer: impl Fn(&Monomial) -> Option<usize>,
    polys: &[Polynomial],
    reps: &[Polynomial],
    mut p: Polynomial,
    mut rep: Polynomial,
) -> (Polynomial, Polynomial) {
    let nvars = p.nvars();
    let order = p.order();
    let mut rest: Vec<(Monomial, Fp)> = Vec::new();
    while let Some(&(lm, lc)) = p.leading_term() {
        match find_reducer(&lm) {
            Some(k) => {
                let g = &polys[k];
                let (gm, gc) = *g.leading_term().unwrap();
                let q = gm.quotient_of(&lm).unwrap();
                let c = -(lc / gc);
                p = p.combine(c, &q, g);
                if !reps[k].is_zero() {
                    rep = rep.combine(c, &q, &reps[k]);
                }
            }
            None => {
                rest.push((lm, lc));
                let mut terms = p.into_terms();
                terms.remove(0);
                p = Polynomial::from_terms(nvars, order, terms);
            }
        }
    }
    (Polynomial::from_terms(nvars, order, rest), rep)
}

/// A Gröbner basis (not inter-reduced) of the `(poly, rep)` inputs, each
/// element carrying the combination of input representations it equals.
/// Sorted by descending leading term. Representations are kept reduced by
/// `rep_modulus`, a Gröbner basis of the submodule they only matter modulo.
pub(crate) fn tracked_basis(
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<(Polynomial, Polynomial)>,
    rep_modulus: Vec<Polynomial>,
) -> Vec<(Polynomial, Polynomial)> {
    let mut engine = Engine::new(nvars, order);
    engine.track = true;
    engine.rep_modulus = rep_modulus;
    for (g, rep) in gens {
        let (h, rep) = engine.reduce_tracked(g.with_order(order), rep);
        if !h.is_zero() {
            let sugar = max_degree(&h);
            engine.insert_scaled(h, rep, sugar);
        }
    }
    engine.run();
    let mut out: Vec<(Polynomial, Polynomial)> = engine
        .active
        .iter()
        .map(|&i| (engine.polys[i].clone(), engine.reps[i].clone()))
        .collect();
    out.sort_by(|a, b| order.compare(b.0.leading_monomial().unwrap(), a.0.leading_monomial().unwrap()));
    out
}

/// Reduces `p` by a tracked basis; returns the remainder and `rep` minus the
/// representations of everything subtracted.
pub(crate) fn reduce_by_tracked(
    polys: &[Polynomial],
    reps: &[Polynomial],
    p: Polynomial,
    rep: Polynomial,
) -> (Polynomial, Polynomial) {
    tracked_normal_form(
        |m| polys.iter().position(|g| g.leading_monomial().unwrap().divides(m)),
        polys,
        reps,
        p,
        rep,
    )
}

struct Engine {
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    // how each element is combined from the inputs; empty when not tracking
    reps: Vec<Polynomial>,
    track: bool,
    rep_modulus: Vec<Polynomial>,
    single_component: Vec<bool>,
    active: Vec<usize>,
    // sugar degree of each element; pairs are processed by sugar
    sugar: Vec<u32>,
    pairs: BTreeSet<(u32, usize, usize)>,
}

impl Engine {
    fn new(nvars: usize, order: MonomialOrder) -> Engine {
        Engine {
            nvars,
            order,
            polys: Vec::new(),
            reps: Vec::new(),
            track: false,
            rep_modulus: Vec::new(),
            single_component: Vec::new(),
            active: Vec::new(),
            sugar: Vec::new(),
            pairs: BTreeSet::new(),
        }
    }

    fn lead(&self, i: usize) -> Monomial {
        *self.polys[i].leading_monomial().unwrap()
    }

    fn active_polys(&self) -> Vec<Polynomial> {
        self.active.iter().map(|&i| self.polys[i].clone()).collect()
    }

    fn reduce(&self, p: Polynomial) -> Polynomial {
        // Reducers are tried in insertion order, which keeps runs deterministic.
        normal_form_by(
            |m| {
                self.active
                    .iter()
                    .map(|&i| &self.polys[i])
                    .find(|g| g.leading_monomial().unwrap().divides(m))
            },
            p,
            None,
        )
    }

    fn reduce_tracked(&self, p: Polynomial, rep: Polynomial) -> (Polynomial, Polynomial) {
        tracked_normal_form(
            |m| {
                self.active
                    .iter()
                    .copied()
                    .find(|&i| self.polys[i].leading_monomial().unwrap().divides(m))
            },
            &self.polys,
            &self.reps,
            p,
            rep,
        )
    }

    /// Inserts `h` made monic, scaling its representation alike.
    fn insert_scaled(&mut self, h: Polynomial, rep: Polynomial, sugar: u32) {
        let c = h.leading_coefficient().unwrap().inv().unwrap();
        if self.track {
            let rep = normal_form(&self.rep_modulus, rep, None);
            self.reps.push(rep.scale(c));
        }
        self.insert(h.scale(c), sugar);
    }

    /// Product criterion: S(f, g) reduces to zero when both live in a single
    /// component and their leading monomials are coprime.
    fn coprime(&self, i: usize, j: usize) -> bool {
        self.single_component[i] && self.single_component[j] && self.lead(i).is_coprime(&self.lead(j))
    }

    /// Sugar of the S-pair of `i` and `j`.
    fn pair_sugar(&self, i: usize, j: usize) -> u32 {
        let l = self.lead(i).lcm(&self.lead(j)).unwrap();
        (self.sugar[i] + l.degree() - self.lead(i).degree()).max(self.sugar[j] + l.degree() - self.lead(j).degree())
    }

    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        let comp = h.leading_monomial().unwrap().component();
        let single = h.terms().iter().all(|(m, _)| m.component() == comp);
        self.polys.push(h);
        self.single_component.push(single);
        self.sugar.push(sugar);
        let hl = self.lead(hi);

        let candidates: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&g| self.lead(g).component() == comp)
            .collect();
        let lcm_with = |g: usize| hl.lcm(&self.lead(g)).unwrap();

        let mut kept: Vec<usize> = Vec::new();
        for (idx, &g1) in candidates.iter().enumerate() {
            let l1 = lcm_with(g1);
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|&g2| lcm_with(g2).divides(&l1));
            if self.coprime(hi, g1) || !dominated {
                kept.push(g1);
            }
        }
        let fresh: Vec<(u32, usize, usize)> = kept
            .into_iter()
            .filter(|&g| !self.coprime(hi, g))
            .map(|g| (self.pair_sugar(g, hi), g, hi))
            .collect();

        let stale: Vec<(u32, usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(_, a, b)| {
                let l = self.lead(a).lcm(&self.lead(b)).unwrap();
                hl.divides(&l)
                    && self.lead(a).lcm(&hl) != Some(l)
                    && self.lead(b).lcm(&hl) != Some(l)
            })
            .collect();
        for p in stale {
            self.pairs.remove(&p);
        }
        for p in fresh {
            self.pairs.insert(p);
        }
        let polys = &self.polys;
        self.active
            .retain(|&g| !hl.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(hi);
    }

    fn run(&mut self) {
        while let Some((sugar, i, j)) = self.pairs.pop_first() {
            if self.track {
                let (f, g) = (&self.polys[i], &self.polys[j]);
                let l = self.lead(i).lcm(&self.lead(j)).unwrap();
                let a = self.lead(i).quotient_of(&l).unwrap();
                let b = self.lead(j).quotient_of(&l).unwrap();
                let (fc, gc) = (f.leading_coefficient().unwrap(), g.leading_coefficient().unwrap());
                let (ca, cb) = (fc.inv().unwrap(), -gc.inv().unwrap());
                let s = f.mul_term(&a, ca).combine(cb, &b, g);
                let rep = self.reps[i].mul_term(&a, ca).combine(cb, &b, &self.reps[j]);
                let (h, rep) = self.reduce_tracked(s, rep);
                if !h.is_zero() {
                    self.insert_scaled(h, rep, sugar);
                }
                continue;
            }
            let Some(s) = s_polynomial(&self.polys[i], &self.polys[j]) else { continue };
            let h = self.reduce(s);
            if !h.is_zero() {
                self.insert(h.monic(), sugar);
            }
        }
    }

    fn finish(self) -> GroebnerBasis {
        let order = self.order;
        let mut minimal = self.active_polys();
        minimal.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        let mut elements = Vec::with_capacity(minimal.len());
        for (i, p) in minimal.iter().enumerate() {
            let (lm, lc) = *p.leading_term().unwrap();
            let tail = Polynomial::from_terms(self.nvars, order, p.terms()[1..].to_vec());
            let tail = normal_form_by(
                |m| {
                    minimal
                        .iter()
                        .enumerate()
                        .find(|&(j, g)| j != i && g.leading_monomial().unwrap().divides(m))
                        .map(|(_, g)| g)
                },
                tail,
                None,
            );
            let mut terms = vec![(lm, lc)];
            terms.extend(tail.into_terms());
            elements.push(Polynomial::from_terms(self.nvars, order, terms).monic());
        }
        GroebnerBasis {
            nvars: self.nvars,
            order,
            elements,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize, o: MonomialOrder) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, o, i)).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let o = MonomialOrder::GrevLex;
        let v = vars(2, o);
        let gb = GroebnerBasis::compute(2, o, &[v[0].clone()]);
        assert_eq!(gb.elements(), &[v[0].clone()]);
    }

    #[test]
    fn cusp_pair() {
        // x > y: leading terms x^3, x*y, and the new S-polynomial y^3
        let o = MonomialOrder::GrevLex;
        let v = vars(2, o);
        let (x, y) = (&v[0], &v[1]);
        let f = y.mul(y).sub(&x.pow(3));
        let g = x.mul(y);
        let gb = GroebnerBasis::compute(2, o, &[f.clone(), g.clone()]);
        assert_eq!(gb.elements(), &[f.monic(), y.pow(3), g]);
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.is_reduced());
    }

    #[test]
    fn twisted_cubic_style_ring_is_already_groebner() {
        let o = MonomialOrder::GrevLex;
        let v = vars(3, o);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = vec![
            y.mul(y).sub(&x.mul(z)),
            x.mul(x).mul(y).sub(&z.mul(z)),
            x.pow(3).sub(&y.mul(z)),
        ];
        let gb = GroebnerBasis::compute(3, o, &gens);
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.elements().contains(&g.monic()));
        }
    }

    #[test]
    fn unit_ideal() {
        let o = MonomialOrder::GrevLex;
        let v = vars(2, o);
        let one = Polynomial::one(2, o);
        let gb = GroebnerBasis::compute(2, o, &[v[0].clone(), v[0].sub(&one)]);
        assert!(gb.is_unit());
        assert_eq!(gb.len(), 1);
    }

    #[test]
    fn submodule_basis() {
        let o = MonomialOrder::GrevLex;
        let v = vars(2, o);
        let (x, y) = (&v[0], &v[1]);
        // columns (x, y) and (y, 0) of k[x,y]^2
        let c1 = x.add(&y.into_component(1));
        let c2 = y.clone();
        let gb = GroebnerBasis::compute(2, o, &[c1.clone(), c2.clone()]);
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.contains(&y.mul(y).into_component(1)));
        assert!(!gb.contains(&y.into_component(1)));
    }
}
