//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num::Zero;
use rand::Rng;

use quadri_cli::catalog::{load_catalog, CatalogEntry};
use quadri_cli::doc::Document;
use quadri_core::bialgebra::{
    check_quadri_coalgebra, coalgebra_axiom_tag, coboundary_bialgebra, double_from_r, drinfeld_double,
    dual_quadri_of_coalgebra, graph_lagrangian_check, q_tensors, QuadriBialgebra, QuadriCoalgebra,
};
use quadri_core::exactlin::{frac, int, map_of_tensor, BilinearForm, LinearMap, Matrix, Scalar, TensorElement};
use quadri_core::operators::{
    check_nijenhuis, check_o_operator, check_rota_baxter, double_nijenhuis, family_nijenhuis, nijenhuis_to_rb,
    rb_family, semidirect_nijenhuis_theta, DoubleParams, FamilyKind, FamilyParams, OOperatorInput, QDouble,
};
use quadri_core::quadri::{
    check_omega_2cocycle, check_quadri, dual_quadri_bimodule, project_dd, quadri_axiom_tag, quadri_from_2cocycle,
    structure_equivalence, vertical_dual_bimodule, Projection, QuadriAlgebra, QuadriBimodule,
};
use quadri_core::report::Report;
use quadri_core::search::{
    enumerate_structures, random_quadri, random_skew_tensor, random_tensor, rng, Found, SearchKind, SearchSpec,
};
use quadri_core::bialgebra::check_q_equation;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn set(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

fn catalog() -> Vec<CatalogEntry> {
    load_catalog(&common::fixtures().join("catalog.ndjson")).expect("catalog verifies")
}

fn dim2_algebras(max_nonzero: usize) -> Vec<QuadriAlgebra> {
    let mut spec = SearchSpec::new(SearchKind::Quadri, 2, set(&[-1, 0, 1]));
    spec.max_nonzero = Some(max_nonzero);
    enumerate_structures(&spec)
        .unwrap()
        .hits
        .into_iter()
        .filter_map(|f| match f {
            Found::Quadri(q) => Some(q),
            Found::Dendriform(_) => None,
        })
        .collect()
}

fn se1() -> QuadriAlgebra {
    let mut q = QuadriAlgebra::zero(1);
    *q.se.entry_mut(0, 0, 0) = int(1);
    q
}

fn criterion_1() -> Verdict {
    let mut total = 0;
    let mut valid = 0;
    for coeffs in [set(&[0, 1]), set(&[-1, 0, 1])] {
        let c = coeffs.len();
        for code in 0..c.pow(4) {
            let mut q = QuadriAlgebra::zero(1);
            let mut rest = code;
            for cube in [&mut q.nw, &mut q.ne, &mut q.sw, &mut q.se] {
                *cube.entry_mut(0, 0, 0) = coeffs[rest % c].clone();
                rest /= c;
            }
            let [a, b, d] = structure_equivalence(&q);
            total += 1;
            if !(a == b && b == d) {
                return verdict(false, format!("three conditions disagree on {q:?}"));
            }
            valid += usize::from(a);
        }
    }
    verdict(total == 97, format!("{total} candidates, {valid} quadri-algebras, all three conditions agree"))
}

/// `(axiom, i, j, k, s)` of every nonzero residual coordinate.
fn expand(report: &Report, tags: &HashMap<String, usize>, coalgebra: bool, n: usize) -> BTreeSet<[usize; 5]> {
    let mut out = BTreeSet::new();
    for v in &report.violations {
        let a = tags[&v.tag];
        for (p, c) in v.residual.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if coalgebra {
                let s = v.indices[0];
                out.insert([a, p / (n * n), (p / n) % n, p % n, s]);
            } else {
                out.insert([a, v.indices[0], v.indices[1], v.indices[2], p]);
            }
        }
    }
    out
}

fn criterion_2() -> Verdict {
    let co_tags: HashMap<String, usize> = (0..9).map(|a| (coalgebra_axiom_tag(a), a)).collect();
    let alg_tags: HashMap<String, usize> = (0..9).map(|a| (quadri_axiom_tag(a), a)).collect();
    let valid = dim2_algebras(3);
    let mut g = rng(2024);
    let coeffs = set(&[-1, 0, 1]);
    let (mut passing, mut failing) = (0, 0);
    for idx in 0..500 {
        let q = match idx % 4 {
            0 => valid[g.gen_range(0..valid.len())].clone(),
            1 => {
                let mut q = valid[g.gen_range(0..valid.len())].clone();
                let (i, j, k) = (g.gen_range(0..2), g.gen_range(0..2), g.gen_range(0..2));
                *q.sw.entry_mut(i, j, k) += int(1);
                q
            }
            _ => random_quadri(2, &mut g, &coeffs, 0.12),
        };
        let c = QuadriCoalgebra::from_dual_algebra(&q);
        let direct = check_quadri_coalgebra(&c);
        let via_dual = check_quadri(&dual_quadri_of_coalgebra(&c));
        if direct.passed() != via_dual.passed() {
            return verdict(false, format!("pass/fail differs on candidate {idx}"));
        }
        if expand(&direct, &co_tags, true, 2) != expand(&via_dual, &alg_tags, false, 2) {
            return verdict(false, format!("violating index sets differ on candidate {idx}"));
        }
        if direct.passed() {
            passing += 1;
        } else {
            failing += 1;
        }
    }
    verdict(
        passing > 0 && failing > 0,
        format!("500 candidates ({passing} coalgebras, {failing} not), verdicts and index sets agree"),
    )
}

fn chain(q: &QuadriAlgebra, r: &TensorElement) -> [bool; 5] {
    let qt = q_tensors(q, r).unwrap();
    let t = LinearMap::new(r.coeffs().clone());
    let regular_dual = dual_quadri_bimodule(&QuadriBimodule::regular(q));
    let o_quadri = check_o_operator(OOperatorInput::Quadri(q, &regular_dual), &t).unwrap().passed();
    let v = project_dd(q, Projection::Vertical);
    let o_dd = check_o_operator(OOperatorInput::Dendriform(&v, &vertical_dual_bimodule(q)), &t)
        .unwrap()
        .passed();
    [qt.pair_zero(1), qt.pair_zero(2), qt.pair_zero(3), o_quadri, o_dd]
}

/// Seeded (algebra, skew r) pairs that fail the Q-equation.
fn non_solutions(count: usize, seed: u64) -> Vec<(QuadriAlgebra, TensorElement)> {
    let algebras = dim2_algebras(2);
    let mut g = rng(seed);
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        let q = &algebras[g.gen_range(0..algebras.len())];
        s += 1;
        let r = random_skew_tensor(2, s, 4);
        if !check_q_equation(q, &r).unwrap().passed() {
            out.push((q.clone(), r));
        }
    }
    out
}

fn criterion_3(cat: &[CatalogEntry]) -> Verdict {
    let mut yes = 0;
    for e in cat {
        let c = chain(&e.algebra, &e.tensor);
        if c != [true; 5] {
            return verdict(false, format!("catalog pair gives {c:?}"));
        }
        yes += 1;
    }
    for (q, r) in non_solutions(200, 73) {
        let c = chain(&q, &r);
        if c != [false; 5] {
            return verdict(false, format!("non-solution gives {c:?}"));
        }
    }
    verdict(yes > 0, format!("{yes} catalog pairs all-true, 200 non-solutions all-false"))
}

fn criterion_4(cat: &[CatalogEntry]) -> Verdict {
    let base = QuadriBialgebra::new(se1(), QuadriCoalgebra::zero(1)).unwrap();
    let dd = drinfeld_double(&base).unwrap();
    if !dd.report.passed() {
        return verdict(false, format!("dim-1 double fails:\n{}", dd.report.render_text(Some(1))));
    }
    for e in cat {
        let b = coboundary_bialgebra(&e.algebra, &e.tensor).unwrap();
        let dd = drinfeld_double(&b).unwrap();
        if !dd.report.passed() {
            return verdict(false, format!("catalog double fails:\n{}", dd.report.render_text(Some(2))));
        }
    }
    verdict(true, format!("dim-1 double and {} catalog doubles certified", cat.len()))
}

fn criterion_5(cat: &[CatalogEntry]) -> Verdict {
    for e in cat {
        let dd = drinfeld_double(&coboundary_bialgebra(&e.algebra, &e.tensor).unwrap()).unwrap();
        if double_from_r(&e.algebra, &e.tensor).unwrap() != dd.algebra {
            return verdict(false, "direct double differs from the bowtie double");
        }
    }
    verdict(true, format!("{} catalog solutions agree cube-for-cube", cat.len()))
}

fn criterion_6(cat: &[CatalogEntry]) -> Verdict {
    let mut algebras: Vec<QuadriAlgebra> = dim2_algebras(2);
    algebras.extend(cat.iter().map(|e| e.algebra.clone()));
    let (mut sol, mut non) = (0, 0);
    for (idx, q) in algebras.iter().enumerate() {
        let mut r = random_skew_tensor(2, 500 + idx as u64, 5);
        if r.is_zero() {
            r = TensorElement::new(Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        }
        let omega = map_of_tensor(&r).omega.expect("nonzero skew dim-2 tensors are nondegenerate");
        let qeq = check_q_equation(q, &r).unwrap().passed();
        let cocycle = check_omega_2cocycle(q, &omega).unwrap().passed();
        if qeq != cocycle {
            return verdict(false, format!("Q-equation {qeq} but 2-cocycle {cocycle} on algebra {idx}"));
        }
        if qeq {
            sol += 1;
        } else {
            non += 1;
        }
    }
    verdict(sol > 0 && non > 0, format!("{sol} solutions and {non} non-solutions, both directions agree"))
}

fn random_scalar(g: &mut rand_chacha::ChaCha8Rng) -> Scalar {
    frac(g.gen_range(-5..=5), g.gen_range(1..=3))
}

fn criterion_7() -> Verdict {
    let q = match Document::load(&common::fixtures().join("cat.json")).unwrap() {
        Document::Quadri(q) => q,
        _ => unreachable!(),
    };
    let r = match Document::load(&common::fixtures().join("cat-r.json")).unwrap() {
        Document::Tensor(r) => r,
        _ => unreachable!(),
    };
    let qd = QDouble::new(&q, &r).unwrap();
    if !qd.is_nondegenerate() {
        return verdict(false, "fixture double is degenerate");
    }
    let fam = qd.family();
    let mut g = rng(88);
    for draw in 0..20 {
        let l: [Scalar; 4] = std::array::from_fn(|_| random_scalar(&mut g));
        let full = double_nijenhuis(&qd, &DoubleParams::Full(l.clone())).unwrap();
        let tri = double_nijenhuis(&qd, &DoubleParams::Triangular([l[0].clone(), l[1].clone(), l[2].clone()])).unwrap();
        let semi = semidirect_nijenhuis_theta(&q, &l).unwrap();
        if !check_nijenhuis(&fam, &full).unwrap().passed()
            || !check_nijenhuis(&fam, &tri).unwrap().passed()
            || !semi.report.passed()
        {
            return verdict(false, format!("block Nijenhuis operator fails at draw {draw}"));
        }
    }
    let kinds = [FamilyKind::F1, FamilyKind::F2, FamilyKind::F3, FamilyKind::G1, FamilyKind::G2, FamilyKind::G3];
    for kind in kinds {
        let mut accepted = 0;
        while accepted < 20 {
            let p = FamilyParams {
                lambda: random_scalar(&mut g),
                plus: g.gen_bool(0.5),
                k: random_scalar(&mut g),
                k1: random_scalar(&mut g),
                k2: random_scalar(&mut g),
                lambda3: None,
            };
            let Ok(n) = family_nijenhuis(kind, &p, &qd) else { continue };
            accepted += 1;
            let pm = rb_family(kind, &p, &qd).unwrap();
            let w = p.weight(kind);
            let ok = check_nijenhuis(&fam, &n).unwrap().passed()
                && check_rota_baxter(&fam, &pm, &w).unwrap().passed()
                && nijenhuis_to_rb(&n, &w).unwrap() == pm
                && (!kind.is_idempotent_family() || pm.mul(&pm) == pm);
            if !ok {
                return verdict(false, format!("{kind:?} fails for {p:?}"));
            }
        }
    }
    verdict(true, "60 block-operator draws and 20 draws for each of the six families")
}

fn criterion_8(cat: &[CatalogEntry]) -> Verdict {
    for e in cat {
        let c = graph_lagrangian_check(&e.algebra, &LinearMap::new(e.tensor.coeffs().clone())).unwrap();
        if !(c.lagrangian && c.closed && c.q_solution && c.theta == Some(true)) {
            return verdict(false, format!("catalog solution: {}", c.report.render_text(Some(2))));
        }
    }
    let algebras = dim2_algebras(2);
    let mut g = rng(5150);
    let coeffs = set(&[-1, 0, 1]);
    let mut non = 0;
    while non < 100 {
        let q = &algebras[g.gen_range(0..algebras.len())];
        let r = if g.gen_bool(0.5) {
            random_tensor(2, &mut g, &coeffs)
        } else {
            random_skew_tensor(2, g.gen(), 3)
        };
        if r.is_skew() && check_q_equation(q, &r).unwrap().passed() {
            continue;
        }
        non += 1;
        let c = graph_lagrangian_check(q, &LinearMap::new(r.coeffs().clone())).unwrap();
        if c.q_solution || (c.lagrangian && c.closed) || !c.consistent() {
            return verdict(false, "non-solution graph is a Lagrangian subalgebra");
        }
    }
    verdict(true, format!("{} solutions and 100 non-solutions co-occur, θ isomorphic", cat.len()))
}

fn criterion_9(cat: &[CatalogEntry]) -> Verdict {
    let mut doubles = vec![drinfeld_double(&QuadriBialgebra::new(se1(), QuadriCoalgebra::zero(1)).unwrap())
        .unwrap()
        .algebra];
    for e in cat {
        doubles.push(double_from_r(&e.algebra, &e.tensor).unwrap());
    }
    for d in &doubles {
        let n = d.dim() / 2;
        let back = quadri_from_2cocycle(&project_dd(d, Projection::Vertical), &BilinearForm::hyperbolic(n)).unwrap();
        if &back != d {
            return verdict(false, "reconstructed cubes differ");
        }
    }
    verdict(true, format!("{} doubles reconstructed exactly", doubles.len()))
}

fn criterion_10() -> Verdict {
    let bad = common::run_golden();
    verdict(
        bad.is_empty(),
        format!("{} golden transcripts, mismatches: {bad:?}", common::CASES.len()),
    )
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a filter
    // argument that matches nothing here skips the gate.
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if filter.is_some_and(|f| !"acceptance".contains(&f)) {
        return;
    }
    let cat = catalog();
    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(&str, u64, Check)> = vec![
        ("dim-1 exhaustive gate", 1, Box::new(criterion_1)),
        ("coalgebra two-route equivalence", 5, Box::new(criterion_2)),
        ("five-way O-operator chain", 10, Box::new(|| criterion_3(&cat))),
        ("Drinfeld double certification", 30, Box::new(|| criterion_4(&cat))),
        ("direct double equals bowtie double", 10, Box::new(|| criterion_5(&cat))),
        ("Q-equation iff 2-cocycle", 5, Box::new(|| criterion_6(&cat))),
        ("Nijenhuis and Rota-Baxter families", 10, Box::new(criterion_7)),
        ("Lagrangian graph co-occurrence", 5, Box::new(|| criterion_8(&cat))),
        ("2-cocycle round trip", 5, Box::new(|| criterion_9(&cat))),
        ("CLI golden transcripts", 5, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(*limit);
        let ok = v.ok && in_time;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.2}s, limit {limit}s{})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
