//! Invariants checked on random inputs.

use proptest::prelude::*;

use tracekit::arith::{divide_with_remainder, Fp, Monomial, MonomialOrder, Polynomial};
use tracekit::catalog::SCRIPT;
use tracekit::cli::{parse_session, render, run_all, Object};
use tracekit::groebner::{syzygies, GroebnerBasis};
use tracekit::ring::Ideal;

const O: MonomialOrder = MonomialOrder::GrevLex;

fn fp() -> impl Strategy<Value = Fp> {
    any::<u64>().prop_map(Fp::from_u64)
}

/// Polynomials in `n` variables with up to 4 terms of degree at most 3.
fn poly(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..=3, n), -5i64..=5), 0..=4).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u16>() <= 3)
            .map(|(e, c)| (Monomial::from_exponents(&e), Fp::new(c)))
            .collect();
        Polynomial::from_terms(n, O, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(a in fp(), b in fp(), c in fp()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a - a, Fp::new(0));
        match a.inv() {
            Some(i) => prop_assert_eq!(a * i, Fp::new(1)),
            None => prop_assert!(a.is_zero()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_reassembles(f in poly(3), gs in prop::collection::vec(poly(3), 1..=3)) {
        prop_assume!(gs.iter().all(|g| !g.is_zero()));
        let (qs, r) = divide_with_remainder(&f, &gs).unwrap();
        let mut sum = r.clone();
        for (q, g) in qs.iter().zip(&gs) {
            sum = sum.add(&q.mul(g));
        }
        prop_assert_eq!(sum, f);
        for (m, _) in r.terms() {
            prop_assert!(gs.iter().all(|g| !g.leading_monomial().unwrap().divides(m)));
        }
    }

    #[test]
    fn basis_is_canonical_under_shuffles_and_scaling(
        gens in prop::collection::vec(poly(3), 1..=3),
        perm in any::<u64>(),
        scale in prop::collection::vec(1i64..=100, 3),
    ) {
        let gb = GroebnerBasis::compute(3, O, &gens);
        let mut other: Vec<Polynomial> = gens
            .iter()
            .zip(&scale)
            .map(|(g, &c)| g.scale(Fp::new(c)))
            .collect();
        // rotate by a random amount; with at most three generators this and
        // a swap reach every order
        let k = (perm % other.len() as u64) as usize;
        other.rotate_left(k);
        if perm & 1 == 1 && other.len() > 1 {
            other.swap(0, 1);
        }
        let gb2 = GroebnerBasis::compute(3, O, &other);
        prop_assert_eq!(gb.elements(), gb2.elements());
        prop_assert!(gb.is_reduced());
        prop_assert!(gb.s_pairs_reduce_to_zero());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn syzygies_are_relations(cols in prop::collection::vec(prop::collection::vec(poly(2), 2), 1..=3)) {
        for s in syzygies(2, 2, &cols) {
            for row in 0..2 {
                let mut e = Polynomial::zero(2, O);
                for (c, a) in cols.iter().zip(&s) {
                    e = e.add(&c[row].mul(a));
                }
                prop_assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn printed_ideals_parse_back(ring in 0usize..5, gens in prop::collection::vec(poly(3), 0..=3)) {
        let name = ["P", "N", "F", "C", "S"][ring];
        let base = parse_session(SCRIPT, 0).unwrap();
        let r = base.ring(name).unwrap();
        let n = r.nvars();
        // drop terms in variables the ring does not have
        let gens: Vec<Polynomial> = gens
            .iter()
            .map(|g| Polynomial::from_terms(n, O, g.terms().iter().filter(|(m, _)| m.support_len() <= n).cloned().collect()))
            .collect();
        let ideal = Ideal::new(r, gens);
        let printed = ideal.to_string();
        let session = parse_session(&format!("{SCRIPT}ideal J = {printed} over {name};\n"), 0).unwrap();
        let Some(Object::Ideal(back)) = session.get("J") else { panic!("J not an ideal") };
        // the parsed copy lives over a fresh ring object; move it over
        let back = Ideal::new(r, back.generators().to_vec());
        prop_assert!(back == ideal, "{} vs {}", back, printed);
        prop_assert_eq!(back.to_string(), printed);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let text = format!(
        "{SCRIPT}\
trace S_M;
dual C_mm;
end N_q;
ext 1 N_q N_q;
resolve N_q 4;
verify main C_mm;
verify main2 S_M;
verify trace-props C_Rm C_mm;
verify free-summand C_mm;
verify rigidity C_mm;
verify hw C_m;
report S_M;
"
    );
    let session = parse_session(&text, 3).unwrap();
    let one = render(&session, &run_all(&session, 1), false);
    for threads in [2, 4] {
        assert_eq!(render(&session, &run_all(&session, threads), false), one);
    }
    let json = render(&session, &run_all(&session, 1), true);
    assert_eq!(render(&session, &run_all(&session, 4), true), json);
    assert_eq!(render(&session, &run_all(&session, 1), false), one);
}
