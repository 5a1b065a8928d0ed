//! The shipped rings and modules, and the acceptance suite run over them.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    has_free_summand, hw_trace_check, is_balanced, ring_presentation_of_fractional, verify_free_summand_theorems,
    verify_theorem_main, verify_theorem_main2, verify_trace_properties, Status, VerificationReport,
};
use crate::arith::{pack, Fp, Matrix, Monomial, Polynomial};
use crate::cli::{parse_session, Session};
use crate::error::Error;
use crate::fpmod::{annihilator, hom_module, is_reflexive, FPModule, ModuleHomomorphism};
use crate::groebner::{kernel_over_quotient, submodule_basis, syzygies, GroebnerBasis};
use crate::homology::{ext, free_resolution};
use crate::ring::{grade, AmbientRing, Grade, Ideal, ORDER};
use crate::trace::{fractional_dual, fractional_end, trace_ideal};

/// Seed of the randomized property suite.
pub const RANDOM_SEED: u64 = 0x7ace;

/// Random modules per ring in the property suite.
pub const RANDOM_MODULES: usize = 50;

pub const SCRIPT: &str = "\
ring P = F32003[x,y];
ideal P_m = (x, y) over P;
module P_mm = ideal P_m;
module P_R = free 1 over P;

ring N = F32003[x,y] / (x*y);
ideal N_m = (x, y) over N;
ideal N_x = (x) over N;
ideal N_y = (y) over N;
module N_mm = ideal N_m;
module N_q = coker [[x]] over N;
module N_xm = ideal N_x;
module N_ym = ideal N_y;
module N_xy = sum N_xm N_ym;
module N_R = free 1 over N;

ring F = F32003[x,y] / (x*y, y^2);
ideal F_m = (x, y) over F;
module F_mm = ideal F_m;
module F_R = free 1 over F;

ring C = F32003[x,y] / (y^2 - x^3) domain;
ideal C_m = (x, y) over C;
ideal C_x = (x) over C;
module C_mm = ideal C_m;
module C_R = free 1 over C;
module C_Rm = sum C_R C_mm;
module C_xm = ideal C_x;

ring S = F32003[x,y,z] / (y^2 - x*z, x^2*y - z^2, x^3 - y*z) domain;
ideal S_m = (x, y, z) over S;
module S_M = coker [[-z,-y,x^2],[y,x,-z]] over S;
module S_mm = ideal S_m;
module S_R = free 1 over S;
";

/// Ring names of the catalog, in order.
pub const RINGS: [&str; 5] = ["P", "N", "F", "C", "S"];

pub struct Catalog {
    session: Session,
}

impl Catalog {
    pub fn load() -> Catalog {
        Catalog {
            session: parse_session(SCRIPT, 0).expect("catalog script parses"),
        }
    }

    pub fn ring(&self, name: &str) -> Arc<AmbientRing> {
        self.session.ring(name).cloned().unwrap_or_else(|| panic!("no catalog ring {name}"))
    }

    pub fn ideal(&self, name: &str) -> Ideal {
        self.session.ideal(name).cloned().unwrap_or_else(|| panic!("no catalog ideal {name}"))
    }

    pub fn module(&self, name: &str) -> Arc<FPModule> {
        self.session.module(name).cloned().unwrap_or_else(|| panic!("no catalog module {name}"))
    }

    /// Names of the modules over ring `r`.
    pub fn modules_over(&self, r: &str) -> Vec<String> {
        names_with_prefix(SCRIPT, "module", r)
    }

    pub fn ideals_over(&self, r: &str) -> Vec<String> {
        names_with_prefix(SCRIPT, "ideal", r)
    }
}

fn names_with_prefix(script: &str, kind: &str, ring: &str) -> Vec<String> {
    let prefix = format!("{ring}_");
    script
        .lines()
        .filter_map(|l| l.strip_prefix(kind)?.split_whitespace().next())
        .filter(|n| n.starts_with(&prefix))
        .map(str::to_string)
        .collect()
}

/// Smallest positive weights (at most 5 per variable, compared
/// lexicographically) making every defining relation homogeneous.
pub fn grading(ring: &AmbientRing) -> Option<Vec<u32>> {
    let n = ring.nvars();
    let weight = |w: &[u32], m: &Monomial| (0..n).map(|i| w[i] * m.exponent(i) as u32).sum::<u32>();
    let mut w = vec![1u32; n];
    loop {
        let homogeneous = ring.relations().iter().all(|r| {
            let d = weight(&w, &r.terms()[0].0);
            r.terms().iter().all(|(m, _)| weight(&w, m) == d)
        });
        if homogeneous {
            return Some(w);
        }
        // next weight vector, last variable fastest
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if w[i] < 5 {
                w[i] += 1;
                break;
            }
            w[i] = 1;
        }
    }
}

/// A random graded module with at most 3 generators and 4 relations. Entries
/// are combinations of monomials of degree 1 or 2 with small coefficients,
/// homogeneous for [`grading`] so the presentation is graded. Graded inputs
/// keep the origin-based local reading exact.
pub fn random_module(ring: &Arc<AmbientRing>, rng: &mut ChaCha8Rng) -> Arc<FPModule> {
    let n = ring.nvars();
    let w = grading(ring).expect("catalog rings are quasi-homogeneous");
    let mut monomials = Vec::new();
    for i in 0..n {
        monomials.push(Monomial::var(i));
        for j in i..n {
            monomials.push(Monomial::var(i).mul(&Monomial::var(j)));
        }
    }
    let weight = |m: &Monomial| (0..n).map(|i| w[i] * m.exponent(i) as u32).sum::<u32>();
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(1..=4);
    let gen_deg: Vec<u32> = (0..rows).map(|_| rng.gen_range(0..=2)).collect();
    let mut a = Matrix::zero(rows, cols, n, ORDER);
    for j in 0..cols {
        // pick the column degree so that some entry can be nonzero
        let d = gen_deg[rng.gen_range(0..rows)] + weight(monomials.choose(rng).unwrap());
        for i in 0..rows {
            let fitting: Vec<&Monomial> = monomials.iter().filter(|m| gen_deg[i] + weight(m) == d).collect();
            let terms = (0..rng.gen_range(0..=2))
                .filter_map(|_| {
                    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    fitting.choose(rng).map(|m| (**m, Fp::new(c)))
                })
                .collect();
            a.set(i, j, Polynomial::from_terms(n, ORDER, terms));
        }
    }
    FPModule::new(ring, ring.reduce_matrix(&a))
}

/// One acceptance criterion: `Ok` carries a summary, `Err` the reason it failed.
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub run: fn(&Catalog) -> Result<String, String>,
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn expect_pass(r: &VerificationReport, what: &str) -> Result<(), String> {
    ensure(r.status == Status::Pass, format!("{what}: {}\n{r}", r.status))
}

fn semigroup_module_kernel(cat: &Catalog) -> Result<String, String> {
    let s = cat.ring("S");
    let m = cat.module("S_M");
    let tau = trace_ideal(&m);
    ensure(tau == cat.ideal("S_m"), format!("trace M = {tau}"))?;
    let at = m.presentation().transpose();
    let kernel = kernel_over_quotient(&at, s.modulus());
    let v = s.vars();
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let expected = vec![
        vec![y.clone(), z.clone()],
        vec![x.clone(), y.clone()],
        vec![z.clone(), x.pow(2)],
    ];
    let spanned = submodule_basis(2, &kernel.cols(), s.modulus());
    let claimed = submodule_basis(2, &expected, s.modulus());
    for e in &expected {
        ensure(
            spanned.contains(&pack(e, 0, 3, ORDER)),
            "expected generator outside the kernel",
        )?;
    }
    for k in kernel.cols() {
        ensure(
            claimed.contains(&pack(&k, 0, 3, ORDER)),
            "kernel element outside the expected span",
        )?;
    }
    Ok(format!("trace M = {tau}; ker(A^T) = <(y,z), (x,y), (z,x^2)>"))
}

fn node_rigid_not_balanced(cat: &Catalog) -> Result<String, String> {
    let n = cat.ring("N");
    let m = cat.module("N_q");
    ensure(ext(1, &m, &m).is_zero(), "Ext^1(M,M) ≠ 0")?;
    let end = hom_module(&m, &m);
    ensure(end.module().minimal_generators() == 1, "End(M) is not cyclic")?;
    let ann = annihilator(end.module());
    ensure(ann == cat.ideal("N_x"), format!("ann End(M) = {ann}"))?;
    ensure(!is_balanced(&m), "R/(x) reported balanced")?;
    let res = free_resolution(&m, 4);
    let v = n.vars();
    for (i, d) in res.differentials().iter().enumerate() {
        let want = &v[i % 2];
        ensure(
            d.nrows() == 1 && d.ncols() == 1 && (n.equal(d.get(0, 0), want) || n.equal(&d.get(0, 0).neg(), want)),
            format!("d{} = {}", i + 1, n.format_matrix(d)),
        )?;
    }
    ensure(res.len() == 4, "resolution shorter than 4 steps")?;
    Ok("Ext^1 = 0, End = R/(x), not balanced, resolution x,y,x,y".into())
}

fn noncommutative_end(cat: &Catalog) -> Result<String, String> {
    let r = cat.ring("F");
    let m = cat.module("F_mm");
    let (one, zero) = (r.one(), r.zero());
    let mat = |e: [&Polynomial; 4]| Matrix::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]], 2, ORDER);
    let f = ModuleHomomorphism::new(&m, &m, mat([&one, &zero, &zero, &zero])).map_err(|e| format!("f: {e}"))?;
    let g = ModuleHomomorphism::new(&m, &m, mat([&zero, &zero, &one, &zero])).map_err(|e| format!("g: {e}"))?;
    let end = hom_module(&m, &m);
    ensure(end.encode(&f).is_ok() && end.encode(&g).is_ok(), "f or g not in End")?;
    ensure(!f.compose(&g).equals(&g.compose(&f)), "fg = gf")?;
    ensure(!end.is_commutative(), "End reported commutative")?;
    match fractional_end(&cat.ideal("F_m")) {
        Err(e @ Error::Zerodivisors) => Ok(format!("fg ≠ gf; fractional_end: {e}")),
        Err(e) => Err(format!("wrong error: {e}")),
        Ok(c) => Err(format!("fractional_end succeeded: {c}")),
    }
}

fn maximal_ideal_of_plane(cat: &Catalog) -> Result<String, String> {
    let i = cat.ideal("P_m");
    ensure(grade(&i) == Grade::Finite(2), format!("grade = {}", grade(&i)))?;
    ensure(trace_ideal(&cat.module("P_mm")) == i, "τ(I) ≠ I")?;
    let d = fractional_dual(&i).map_err(|e| e.to_string())?;
    ensure(d.is_whole_ring(), format!("I* = {d}"))?;
    ensure(!is_reflexive(&cat.module("P_mm")).map_err(|e| e.to_string())?, "I reflexive")?;
    Ok("grade 2, τ(I) = I, I* = R, not reflexive".into())
}

fn sigma_round_trips(cat: &Catalog) -> Result<String, String> {
    for name in ["C_mm", "N_xy", "C_Rm"] {
        let r = verify_theorem_main(&cat.module(name)).map_err(|e| e.to_string())?;
        expect_pass(&r, name)?;
    }
    Ok("m, (x)⊕(y), R⊕m: PASS".into())
}

fn rho_round_trips(cat: &Catalog) -> Result<String, String> {
    for name in ["S_M", "C_mm"] {
        let r = verify_theorem_main2(&cat.module(name)).map_err(|e| e.to_string())?;
        expect_pass(&r, name)?;
        let c = r.conclusion_named("End(τM) = End(τM*)").ok_or("missing End comparison")?;
        ensure(c.satisfied, format!("{name}: {}", c.detail))?;
    }
    Ok("(x,y) over the semigroup ring k[t^3,t^4,t^5], m over the cusp: PASS".into())
}

fn random_trace_properties(cat: &Catalog) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut count = 0;
    for r in RINGS {
        let ring = cat.ring(r);
        let partner = cat.module(&format!("{r}_mm"));
        for k in 0..RANDOM_MODULES {
            let m = random_module(&ring, &mut rng);
            let rep = verify_trace_properties(&m, &partner).map_err(|e| format!("{r} #{k}: {e}"))?;
            expect_pass(&rep, &format!("{r} #{k} {}", ring.format_matrix(m.presentation())))?;
            count += 1;
        }
    }
    Ok(format!("{count} random modules, all items PASS"))
}

fn free_summand_suite(cat: &Catalog) -> Result<String, String> {
    let mut checked = 0;
    for r in RINGS {
        if cat.ring(r).depth() != 1 {
            continue;
        }
        for name in cat.modules_over(r) {
            let m = cat.module(&name);
            if !is_reflexive(&m).map_err(|e| e.to_string())? {
                continue;
            }
            let (bal, free) = (is_balanced(&m), has_free_summand(&m));
            ensure(bal == free, format!("{name}: balanced {bal}, free summand {free}"))?;
            ensure(!trace_ideal(&m).is_unit() || bal, format!("{name}: 1 ∈ τ(M) but not balanced"))?;
            let rep = verify_free_summand_theorems(&m).map_err(|e| e.to_string())?;
            expect_pass(&rep, &name)?;
            checked += 1;
        }
    }
    ensure(checked > 0, "no reflexive modules over depth-1 rings")?;
    Ok(format!("{checked} reflexive modules"))
}

fn torsion_of_traces(cat: &Catalog) -> Result<String, String> {
    let r = hw_trace_check(&cat.ideal("C_m")).map_err(|e| e.to_string())?;
    expect_pass(&r, "(x,y)")?;
    ensure(!r.witnesses.is_empty(), "no torsion witness")?;
    let v = hw_trace_check(&cat.ideal("C_x")).map_err(|e| e.to_string())?;
    expect_pass(&v, "(x)")?;
    ensure(
        v.conclusion_named("free summand, conjecture vacuous").is_some(),
        "(x) not vacuous",
    )?;
    Ok(format!("witness: {}", r.witnesses[0]))
}

fn gorenstein_classification(cat: &Catalog) -> Result<String, String> {
    ensure(cat.ring("P").is_gorenstein(), "F[x,y] not Gorenstein")?;
    ensure(cat.ring("C").is_gorenstein(), "cusp not Gorenstein")?;
    ensure(!cat.ring("S").is_gorenstein(), "semigroup ring Gorenstein")?;
    let mut shown = Vec::new();
    for r in ["C", "S"] {
        let e = fractional_end(&cat.ideal(&format!("{r}_m"))).map_err(|e| e.to_string())?;
        let p = ring_presentation_of_fractional(&e).map_err(|e| e.to_string())?;
        ensure(p.is_gorenstein(), format!("End(m) over {r} = {} not Gorenstein", p.format()))?;
        shown.push(p.format());
    }
    Ok(format!("End(m) ≅ {}", shown.join(" and ")))
}

fn engine_soundness(cat: &Catalog) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut shuffles = 0;
    for r in RINGS {
        let ring = cat.ring(r);
        for name in cat.ideals_over(r) {
            let i = cat.ideal(&name);
            let mut gens: Vec<Polynomial> = i.generators().to_vec();
            gens.extend(ring.relations().iter().cloned());
            let reference = GroebnerBasis::compute(ring.nvars(), ORDER, &gens);
            for _ in 0..20 {
                gens.shuffle(&mut rng);
                let scaled: Vec<Polynomial> = gens.iter().map(|g| g.scale(Fp::new(rng.gen_range(1..100)))).collect();
                let gb = GroebnerBasis::compute(ring.nvars(), ORDER, &scaled);
                ensure(gb.elements() == reference.elements(), format!("{name}: basis depends on input order"))?;
                shuffles += 1;
            }
        }
        for name in cat.modules_over(r) {
            let m = cat.module(&name);
            let a = m.presentation();
            for s in syzygies(ring.nvars(), a.nrows(), &a.cols()) {
                let col = Matrix::from_cols(s.len(), vec![s], ring.nvars(), ORDER);
                ensure(a.mul(&col).is_zero(), format!("{name}: bad syzygy"))?;
            }
            let k = kernel_over_quotient(a, ring.modulus());
            ensure(ring.matmul(a, &k).is_zero(), format!("{name}: bad kernel over R"))?;
            let res = free_resolution(&m, 3);
            let ds = res.differentials();
            for i in 0..ds.len().saturating_sub(1) {
                let (d, e) = (&ds[i], &ds[i + 1]);
                ensure(ring.matmul(d, e).is_zero(), format!("{name}: d{}·d{} ≠ 0", i + 1, i + 2))?;
                let image = submodule_basis(e.nrows(), &e.cols(), ring.modulus());
                for kcol in kernel_over_quotient(d, ring.modulus()).cols() {
                    ensure(
                        image.contains(&pack(&kcol, 0, ring.nvars(), ORDER)),
                        format!("{name}: ker d{} ⊄ im d{}", i + 1, i + 2),
                    )?;
                }
            }
        }
    }
    Ok(format!("{shuffles} shuffles, syzygies and resolutions exact"))
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "trace and kernel of the module over k[t^3,t^4,t^5]", run: semigroup_module_kernel },
        Criterion { id: 2, title: "R/(x) over the node: rigid, not balanced", run: node_rigid_not_balanced },
        Criterion { id: 3, title: "noncommutative End over (xy, y^2)", run: noncommutative_end },
        Criterion { id: 4, title: "maximal ideal of F[x,y]", run: maximal_ideal_of_plane },
        Criterion { id: 5, title: "σ round-trips", run: sigma_round_trips },
        Criterion { id: 6, title: "ρ round-trips and End(τM) = End(τM*)", run: rho_round_trips },
        Criterion { id: 7, title: "trace properties on random modules", run: random_trace_properties },
        Criterion { id: 8, title: "balanced ⇔ free summand at depth 1", run: free_summand_suite },
        Criterion { id: 9, title: "torsion in τ ⊗ τ* on the cusp", run: torsion_of_traces },
        Criterion { id: 10, title: "Gorenstein classification", run: gorenstein_classification },
        Criterion { id: 11, title: "engine soundness", run: engine_soundness },
    ]
}

/// Runs every criterion, handing one line per criterion to `emit` as soon as
/// it finishes. Returns whether all passed.
pub fn check_catalog(mut emit: impl FnMut(&str)) -> bool {
    let cat = Catalog::load();
    let mut ok = true;
    for c in criteria() {
        let line = match (c.run)(&cat) {
            Ok(detail) => format!("PASS {:>2} {}: {}", c.id, c.title, detail),
            Err(why) => {
                ok = false;
                format!("FAIL {:>2} {}: {}", c.id, c.title, why)
            }
        };
        emit(&line);
    }
    ok
}
