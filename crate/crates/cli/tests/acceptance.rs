//! One line per acceptance criterion. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{hd_samples, named_algebras, oracle, prime, random_element, random_hd_on, rng};
use hochschild_cli::{cmd_counterexample, cmd_morita_check, AlgebraArgs};
use hochschild_core::builtin::{c3_derivation, cyclic_group_algebra};
use hochschild_core::exactla::{kernel, solve};
use hochschild_core::hochschild::{
    bracket, derivation_space, inner_derivation, is_derivation, p_power,
};
use hochschild_core::integrability::{
    hd_compose, hd_inverse, hd_power, hd_term_formula, integrate,
};
use hochschild_core::{
    Algebra, FirstCohomology, FpMatrix, IntegrationOutcome, LinearEndo, TruncatedHigherDerivation,
};
use rand::Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(p: u32) -> Algebra {
    Algebra::truncated_poly(prime(p), 1).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let report = cmd_counterexample().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let p = &report.payload;
    ensure!(p["f0"]["cube_is_zero"] == true, "f0^3 is not zero");
    ensure!(
        p["transfer"]["values"]["(123)"]["text"] == "1 - (132)",
        "tr(f0)((123)) = {}",
        p["transfer"]["values"]["(123)"]["text"]
    );
    ensure!(
        p["transfer"]["values"]["(132)"]["text"] == "1 - (123)",
        "tr(f0)((132)) = {}",
        p["transfer"]["values"]["(132)"]["text"]
    );
    ensure!(
        p["cube_of_transfer"]["values"]["(132)"]["text"] == "1 - (123)",
        "(tr f0)^3((132)) = {}",
        p["cube_of_transfer"]["values"]["(132)"]["text"]
    );
    ensure!(
        p["transfer_of_cube"]["is_zero"] == true,
        "tr(f0^3) is not zero"
    );
    ensure!(
        p["commutator_equation"]["outcome"]["solvable"] == false,
        "[x, (132)] = 1 reported solvable"
    );
    ensure!(
        p["verdict"] == "does_not_commute",
        "verdict {}",
        p["verdict"]
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

fn criterion_2() -> Outcome {
    let c3 = cyclic_group_algebra(3, prime(3)).unwrap();
    let h = FirstCohomology::compute(&c3);
    ensure!(
        (
            h.derivations().len(),
            h.inner().dimension(),
            h.hh1_dimension()
        ) == (3, 0, 3),
        "F3C3: Der {}, Inn {}, HH1 {}",
        h.derivations().len(),
        h.inner().dimension(),
        h.hh1_dimension()
    );
    let m2 = Algebra::matrix_algebra(&field(3), 2).unwrap();
    let hm = FirstCohomology::compute(&m2);
    ensure!(
        hm.hh1_dimension() == 0,
        "HH1(M2(F3)) = {}",
        hm.hh1_dimension()
    );
    ensure!(
        m2.center().len() == 1,
        "Z(M2(F3)) has dimension {}",
        m2.center().len()
    );
    let mut algebras = named_algebras();
    algebras.push(("M2(F3)", m2));
    for (name, a) in &algebras {
        let h = FirstCohomology::compute(a);
        ensure!(
            h.derivations().len() == h.inner().dimension() + h.hh1_dimension(),
            "{name}: Der != Inn + HH1"
        );
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let samples = hd_samples(2, 24);
    ensure!(samples.len() >= 20, "only {} samples", samples.len());
    for s in &samples {
        let p = s.hd.prime().value();
        let rp = s.r * p as usize;
        let power = hd_power(&s.hd, p);
        for i in 1..rp {
            ensure!(
                power.term(i).is_zero(),
                "{:?}: term {i} of the p-th power",
                s.kind
            );
        }
        ensure!(
            *power.term(rp) == s.hd.term(s.r).power(p),
            "{:?}: term {rp} is not D_r^p",
            s.kind
        );
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for s in hd_samples(3, 24) {
        for n in 0..=5u32 {
            let power = hd_power(&s.hd, n);
            for l in 0..=6.min(s.hd.order()) {
                let formula = hd_term_formula(&s.hd, n as u64, l).map_err(|e| e.to_string())?;
                ensure!(formula == *power.term(l), "{:?}: n = {n}, l = {l}", s.kind);
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = rng(4);
    let samples = hd_samples(5, 50);
    ensure!(samples.len() >= 50, "only {} samples", samples.len());
    for s in samples {
        let order = s.hd.order();
        let (rv, rw) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let v = random_hd_on(&mut rng, &s.algebra, rv, order);
        let w = random_hd_on(&mut rng, &s.algebra, rw, order);
        let u = &s.hd;
        let left = hd_compose(&hd_compose(u, &v).unwrap(), &w).unwrap();
        let right = hd_compose(u, &hd_compose(&v, &w).unwrap()).unwrap();
        ensure!(left == right, "associativity fails");
        let id = TruncatedHigherDerivation::identity(&s.algebra, order).unwrap();
        ensure!(hd_compose(u, &id).unwrap() == *u, "right identity fails");
        ensure!(hd_compose(&id, u).unwrap() == *u, "left identity fails");
        let inv = hd_inverse(u);
        ensure!(hd_compose(u, &inv).unwrap() == id, "right inverse fails");
        ensure!(hd_compose(&inv, u).unwrap() == id, "left inverse fails");
        ensure!(
            s.algebra.verify_hd(&left),
            "composite is not a higher derivation"
        );
    }
    Ok(())
}

trait VerifyHd {
    fn verify_hd(&self, hd: &TruncatedHigherDerivation) -> bool;
}

impl VerifyHd for Algebra {
    fn verify_hd(&self, hd: &TruncatedHigherDerivation) -> bool {
        let flat: Vec<Vec<u32>> = hd.terms().iter().map(|t| t.flat().to_vec()).collect();
        oracle::is_higher_derivation(self, &flat)
    }
}

fn random_derivation<R: Rng>(rng: &mut R, a: &Algebra, der: &[LinearEndo]) -> LinearEndo {
    let p = a.prime();
    der.iter().fold(LinearEndo::zero(p, a.dim()), |acc, d| {
        acc.add(&d.scaled(rng.gen_range(0..p.value()))).unwrap()
    })
}

fn criterion_6() -> Outcome {
    let mut rng = rng(12);
    for (name, a) in named_algebras() {
        let p = a.prime();
        let h = FirstCohomology::compute(&a);
        let der = derivation_space(&a);
        for x in h.classes() {
            let base = h
                .class_of(&a, &p_power(&a, x.representative()).unwrap())
                .unwrap();
            for _ in 0..4 {
                let ad = inner_derivation(&a, &random_element(&mut rng, &a)).unwrap();
                let moved = x.representative().add(&ad).unwrap();
                let pp = h.class_of(&a, &p_power(&a, &moved).unwrap()).unwrap();
                ensure!(pp == base, "{name}: p-power depends on the representative");
            }
        }
        for _ in 0..4 {
            let d = random_derivation(&mut rng, &a, &der);
            let dp = p_power(&a, &d).unwrap();
            ensure!(
                is_derivation(&a, &dp).unwrap(),
                "{name}: d^p is not a derivation"
            );
            for lambda in 0..p.value() {
                let lhs = p_power(&a, &d.scaled(lambda)).unwrap();
                let rhs = dp.scaled(p.pow(lambda, p.value() as u64));
                ensure!(lhs == rhs, "{name}: (λd)^p != λ^p d^p for λ = {lambda}");
            }
            for e in &der {
                let mut iterated = e.clone();
                for _ in 0..p.value() {
                    iterated = bracket(&d, &iterated).unwrap();
                }
                ensure!(
                    bracket(&dp, e).unwrap() == iterated,
                    "{name}: ad(d^p) != ad(d)^p"
                );
            }
        }
        for x in &der {
            for y in &der {
                ensure!(
                    bracket(x, y).unwrap() == bracket(y, x).unwrap().scaled(p.value() - 1),
                    "{name}: bracket is not antisymmetric"
                );
                for z in &der {
                    let j = bracket(x, &bracket(y, z).unwrap())
                        .unwrap()
                        .add(&bracket(y, &bracket(z, x).unwrap()).unwrap())
                        .unwrap()
                        .add(&bracket(z, &bracket(x, y).unwrap()).unwrap())
                        .unwrap();
                    ensure!(j.is_zero(), "{name}: Jacobi fails");
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/truncated_3_3.json");
    for input in [
        "builtin:c3".to_string(),
        data.to_string_lossy().into_owned(),
    ] {
        let args = AlgebraArgs {
            input: input.clone(),
            p: 3,
        };
        let report = cmd_morita_check(&args, 2).map_err(|e| e.to_string())?;
        let p = &report.payload;
        ensure!(
            p["source_hh1_dimension"] == p["target_hh1_dimension"],
            "{input}: HH1 dimensions differ"
        );
        ensure!(
            p["injective"] == true,
            "{input}: class map is not injective"
        );
        ensure!(
            p["all_commute"] == true,
            "{input}: a square fails to commute"
        );
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = rng(11);
    let mut algebras = vec![
        field(2),
        field(3),
        Algebra::truncated_poly(prime(2), 2).unwrap(),
        Algebra::truncated_poly(prime(3), 2).unwrap(),
        cyclic_group_algebra(2, prime(3)).unwrap(),
    ];
    for p in [2u32, 3] {
        for _ in 0..4 {
            let consts: Vec<Vec<Vec<u32>>> = (0..2)
                .map(|_| {
                    (0..2)
                        .map(|_| (0..2).map(|_| rng.gen_range(0..p)).collect())
                        .collect()
                })
                .collect();
            algebras.push(
                Algebra::from_structure_constants(
                    prime(p),
                    vec!["a".into(), "b".into()],
                    &consts,
                    vec![1, 0],
                )
                .unwrap(),
            );
        }
    }
    for a in &algebras {
        let (p, n) = (a.prime().value(), a.dim());
        let basis: Vec<Vec<u32>> = derivation_space(a)
            .iter()
            .map(|d| d.flat().to_vec())
            .collect();
        ensure!(
            oracle::span(p, n * n, &basis) == oracle::derivations(a),
            "Der disagrees with enumeration on {:?}",
            a.structure_constants()
        );
    }
    for p in [2u32, 3] {
        for r in 1..=3 {
            for c in 1..=3 {
                let xs = oracle::all_vectors(p, c);
                for data in oracle::all_vectors(p, r * c) {
                    let rows: Vec<Vec<u32>> = data.chunks(c).map(<[u32]>::to_vec).collect();
                    let m = FpMatrix::from_residues(prime(p), r, c, data.clone()).unwrap();
                    let images: Vec<Vec<u32>> =
                        xs.iter().map(|x| oracle::mat_vec(p, &rows, x)).collect();
                    let null: Vec<Vec<u32>> = xs
                        .iter()
                        .zip(&images)
                        .filter(|(_, b)| b.iter().all(|&v| v == 0))
                        .map(|(x, _)| x.clone())
                        .collect();
                    ensure!(
                        oracle::span(p, c, &kernel(&m)) == null,
                        "kernel of {rows:?} over F_{p}"
                    );
                    for b in oracle::all_vectors(p, r) {
                        let count = images.iter().filter(|img| **img == b).count();
                        match solve(&m, &b).unwrap() {
                            None => ensure!(count == 0, "{rows:?} x = {b:?} has solutions"),
                            Some(sol) => ensure!(
                                oracle::mat_vec(p, &rows, &sol.particular) == b
                                    && count == null.len(),
                                "{rows:?} x = {b:?} solved wrongly"
                            ),
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn integrated(
    a: &Algebra,
    d: &LinearEndo,
    r: usize,
    order: usize,
) -> Result<TruncatedHigherDerivation, String> {
    match integrate(a, d, r, order, 1000).map_err(|e| e.to_string())? {
        IntegrationOutcome::Integrated(hd) => Ok(hd),
        other => Err(format!("r = {r}, N = {order}: {other:?}")),
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for s in hd_samples(6, 24) {
        let hd = integrated(&s.algebra, s.hd.term(s.r), s.r, s.hd.order())?;
        found.push((s.algebra.clone(), hd));
    }
    let p = prime(3);
    let c3 = cyclic_group_algebra(3, p).unwrap();
    let f0 = c3_derivation(0, p).unwrap();
    let euler = c3_derivation(1, p).unwrap().sub(&f0).unwrap();
    found.push((c3.clone(), integrated(&c3, &euler, 1, 9)?));
    found.push((c3.clone(), integrated(&c3, &f0, 1, 2)?));
    for (a, hd) in &found {
        ensure!(
            a.verify_hd(hd),
            "an integrated outcome fails the Leibniz re-check"
        );
    }
    let f0_nine = integrated(&c3, &f0, 1, 9);
    ensure!(
        start.elapsed() < Duration::from_secs(60),
        "took {:?}",
        start.elapsed()
    );
    let hd = f0_nine.map_err(|e| format!("(F3C3, f0) does not integrate: {e}"))?;
    ensure!(
        c3.verify_hd(&hd),
        "(F3C3, f0, r = 1, N = 9) fails the Leibniz re-check"
    );
    Ok(())
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [(&str, fn() -> Outcome); 9] = [
        (
            "counterexample values, f0^3 = 0 and the unsolvable commutator",
            criterion_1,
        ),
        (
            "Der, Inn and HH1 dimensions of F3C3 and M2(F3)",
            criterion_2,
        ),
        (
            "p-th power of a higher derivation shifts the leading term",
            criterion_3,
        ),
        ("binomial term formula for n <= 5, l <= 6", criterion_4),
        ("group law on truncated higher derivations", criterion_5),
        ("restricted Lie structure on the test algebras", criterion_6),
        (
            "Morita class map commutes with bracket and p-power",
            criterion_7,
        ),
        (
            "derivations and linear solves against brute force",
            criterion_8,
        ),
        (
            "integrated outcomes re-check, including (F3C3, f0, r = 1, N = 9)",
            criterion_9,
        ),
    ];
    let mut failed = 0;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS - {what}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL - {what}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
