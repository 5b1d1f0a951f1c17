use hochschild_core::builtin::c3_derivation;
use hochschild_core::hochschild::{bracket, leibniz_failure, p_power, LinearEndo};
use hochschild_core::integrability::{
    hd_power, hh1_r, integrate, leading_index, DEFAULT_BRANCH_LIMIT,
};
use hochschild_core::transfer::{
    is_inner, morita_check, ppower_transfer_discrepancy, transfer_on_subgroup_element,
    transfer_terms, GroupBimoduleSetup, InnerSolveOutcome,
};
use hochschild_core::{Algebra, FirstCohomology, IntegrationOutcome, Prime};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{check_cap, load_algebra, load_derivation, LoadedAlgebra};
use crate::report::{class, element, matrix, Report};

/// Where the algebra comes from: a file path or `builtin:<name>`, and the
/// prime used for built-ins.
#[derive(Clone, Debug)]
pub struct AlgebraArgs {
    pub input: String,
    pub p: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchArgs {
    pub r: usize,
    /// Defaults to `p·r`.
    pub order: Option<usize>,
    pub branch_limit: usize,
}

impl Default for SearchArgs {
    fn default() -> Self {
        SearchArgs {
            r: 1,
            order: None,
            branch_limit: DEFAULT_BRANCH_LIMIT,
        }
    }
}

fn load_valid(args: &AlgebraArgs) -> Result<LoadedAlgebra> {
    let loaded = load_algebra(&args.input, args.p)?;
    if let Some(v) = loaded.algebra.validate().first() {
        return Err(CliError::Math(format!(
            "not an associative unital algebra: {v}"
        )));
    }
    Ok(loaded)
}

fn require_derivation(a: &Algebra, d: &LinearEndo, name: &str) -> Result<()> {
    if let Some((i, j)) = leibniz_failure(a, d)? {
        return Err(CliError::Math(format!(
            "{name} is not a derivation: Leibniz rule fails on ({}, {})",
            a.labels()[i],
            a.labels()[j]
        )));
    }
    Ok(())
}

fn class_report(h: &FirstCohomology, a: &Algebra, d: &LinearEndo) -> Result<Value> {
    let x = h.class_of(a, d)?;
    let mut v = class(&x);
    v["coordinates"] = json!(h.coordinates(&x)?);
    Ok(v)
}

pub fn cmd_validate(args: &AlgebraArgs) -> Result<Report> {
    let loaded = load_algebra(&args.input, args.p)?;
    let a = &loaded.algebra;
    let violations: Vec<String> = a.validate().iter().map(ToString::to_string).collect();
    let payload = json!({
        "prime": a.prime().value(),
        "dimension": a.dim(),
        "labels": a.labels(),
        "valid": violations.is_empty(),
        "violations": violations,
        "commutative": a.is_commutative(),
        "group_algebra": a.group().is_some(),
    });
    Ok(Report::new("validate", &[&loaded.source], payload))
}

pub fn cmd_center(args: &AlgebraArgs) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let basis: Vec<Value> = a.center().iter().map(|z| element(a, z)).collect();
    let payload = json!({ "dimension": basis.len(), "basis": basis });
    Ok(Report::new("center", &[&loaded.source], payload))
}

pub fn cmd_hh1(args: &AlgebraArgs) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let h = FirstCohomology::compute(a);
    let payload = json!({
        "algebra_dimension": a.dim(),
        "derivations": h.derivations().len(),
        "inner": h.inner().dimension(),
        "hh1_dimension": h.hh1_dimension(),
        "classes": h.classes().iter().map(class).collect::<Vec<_>>(),
    });
    Ok(Report::new("hh1", &[&loaded.source], payload))
}

pub fn cmd_ppower(args: &AlgebraArgs, derivation: &str) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let (d, source) = load_derivation(derivation, &loaded)?;
    require_derivation(a, &d, derivation)?;
    let h = FirstCohomology::compute(a);
    let dp = p_power(a, &d)?;
    let payload = json!({
        "derivation": matrix(&d),
        "p_power": matrix(&dp),
        "p_power_is_zero": dp.is_zero(),
        "class": class_report(&h, a, &d)?,
        "p_power_class": class_report(&h, a, &dp)?,
    });
    Ok(Report::new("ppower", &[&loaded.source, &source], payload))
}

pub fn cmd_bracket(args: &AlgebraArgs, first: &str, second: &str) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let (d, s1) = load_derivation(first, &loaded)?;
    let (e, s2) = load_derivation(second, &loaded)?;
    require_derivation(a, &d, first)?;
    require_derivation(a, &e, second)?;
    let h = FirstCohomology::compute(a);
    let b = bracket(&d, &e)?;
    let payload = json!({
        "first": matrix(&d),
        "second": matrix(&e),
        "bracket": matrix(&b),
        "class": class_report(&h, a, &b)?,
    });
    Ok(Report::new("bracket", &[&loaded.source, &s1, &s2], payload))
}

fn resolve_order(p: Prime, search: &SearchArgs) -> usize {
    search.order.unwrap_or(search.r * p.value() as usize)
}

fn search_params(search: &SearchArgs, order: usize) -> Vec<u8> {
    format!(
        "r={};order={};branch_limit={}",
        search.r, order, search.branch_limit
    )
    .into_bytes()
}

pub fn cmd_integrate(args: &AlgebraArgs, derivation: &str, search: &SearchArgs) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let (d, source) = load_derivation(derivation, &loaded)?;
    require_derivation(a, &d, derivation)?;
    let p = a.prime();
    let order = resolve_order(p, search);
    let outcome = integrate(a, &d, search.r, order, search.branch_limit)?;
    let mut payload = json!({
        "r": search.r,
        "order": order,
        "branch_limit": search.branch_limit,
        "derivation": matrix(&d),
    });
    let mut warnings = Vec::new();
    match outcome {
        IntegrationOutcome::Integrated(hd) => {
            let audit = hd.verify(a).is_ok();
            payload["outcome"] = json!("integrated");
            payload["terms"] = json!(hd.terms().iter().map(matrix).collect::<Vec<_>>());
            payload["leading_index"] = json!(leading_index(&hd));
            payload["audit_passed"] = json!(audit);
            let rp = search.r * p.value() as usize;
            if order >= rp {
                let power = hd_power(&hd, p.value());
                payload["power_shift"] = json!({
                    "degree": rp,
                    "p_th_power_leading_index": leading_index(&power),
                    "lower_terms_vanish": (1..rp).all(|i| power.term(i).is_zero()),
                    "term_equals_p_th_power_of_leading_term":
                        *power.term(rp) == hd.term(search.r).power(p.value()),
                });
            } else {
                warnings.push(format!(
                    "order {order} is below r*p = {rp}; power shift not checked"
                ));
            }
        }
        IntegrationOutcome::Obstructed {
            degree,
            branches_explored,
            exhausted,
        } => {
            payload["outcome"] = json!("obstructed");
            payload["degree"] = json!(degree);
            payload["branches_explored"] = json!(branches_explored);
            payload["exhausted"] = json!(exhausted);
            if !exhausted {
                warnings.push("branch limit reached; the derivation may still integrate".into());
            }
        }
    }
    let mut report = Report::new(
        "integrate",
        &[&loaded.source, &source, &search_params(search, order)],
        payload,
    );
    report.warnings = warnings;
    Ok(report)
}

pub fn cmd_hh1r(args: &AlgebraArgs, search: &SearchArgs) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    let order = resolve_order(a.prime(), search);
    let found = hh1_r(a, search.r, order, search.branch_limit)?;
    let payload = json!({
        "r": search.r,
        "order": order,
        "branch_limit": search.branch_limit,
        "dimension": found.classes.len(),
        "exact": found.exact,
        "classes": found.classes.iter().map(class).collect::<Vec<_>>(),
    });
    let report = Report::new(
        "hh1r",
        &[&loaded.source, &search_params(search, order)],
        payload,
    );
    Ok(if found.exact {
        report
    } else {
        report.with_warning("search was truncated; the classes span a lower bound")
    })
}

/// Transfer of `f_0` from `F_3 C_3` to `F_3 S_3` against the `3`-power map.
pub fn cmd_counterexample() -> Result<Report> {
    let p = Prime::new(3)?;
    let setup = GroupBimoduleSetup::s3_over_c3(p)?;
    let (big, sub) = (setup.big(), setup.sub());
    let f0 = c3_derivation(0, p)?;
    let rep = ppower_transfer_discrepancy(&setup, &f0)?;
    let at = |f: &LinearEndo, label: &str| -> Value {
        let g = big.label_index(label).expect("S3 label");
        element(big, &f.apply(big, &big.basis_element(g)).expect("shape"))
    };
    let values = |f: &LinearEndo| -> Value {
        big.labels()
            .iter()
            .map(|l| (l.clone(), at(f, l)))
            .collect::<serde_json::Map<_, _>>()
            .into()
    };

    // the four printed sums, and the collapsed hand computation on H
    let mut terms = serde_json::Map::new();
    let mut specialized_agrees = true;
    for g in 0..big.dim() {
        let t = transfer_terms(&setup, &f0, g)?;
        terms.insert(
            big.labels()[g].clone(),
            json!({
                "first": element(big, &t.first),
                "second": element(big, &t.second),
                "third": element(big, &t.third),
                "fourth": element(big, &t.fourth),
            }),
        );
        if setup.embedding().contains(&g) {
            specialized_agrees &= transfer_on_subgroup_element(&setup, &f0, g)? == t.total(big);
        }
    }

    let c2 = big.basis_element(big.label_index("(132)").expect("S3 label"));
    let unit_equation = is_inner(big, &[(c2, big.unit())])?;
    let outcome = |o: &InnerSolveOutcome| match o {
        InnerSolveOutcome::Witness(x) => json!({ "solvable": true, "witness": element(big, x) }),
        InnerSolveOutcome::NoSolution => json!({ "solvable": false }),
    };
    let f0_cube = f0.power(3);
    let payload = json!({
        "prime": 3,
        "group": big.labels(),
        "subgroup": sub.labels(),
        "coset_representatives": setup.coset_reps().iter().map(|&s| big.labels()[s].clone()).collect::<Vec<_>>(),
        "f0": { "matrix": matrix(&f0), "cube": matrix(&f0_cube), "cube_is_zero": f0_cube.is_zero() },
        "transfer": {
            "matrix": matrix(&rep.transfer),
            "values": values(&rep.transfer),
            "terms": terms,
            "matches_hand_computation_on_subgroup": specialized_agrees,
            "is_derivation": rep.transfer_is_derivation,
        },
        "transfer_of_cube": { "matrix": matrix(&rep.transfer_of_power), "is_zero": rep.transfer_of_power.is_zero() },
        "cube_of_transfer": { "matrix": matrix(&rep.power_of_transfer), "values": values(&rep.power_of_transfer) },
        "difference": { "matrix": matrix(&rep.difference), "inner": outcome(&rep.difference_inner) },
        "commutator_equation": { "equation": "[x, (132)] = 1", "outcome": outcome(&unit_equation) },
        "verdict": if rep.commutes { "commutes" } else { "does_not_commute" },
    });
    Ok(Report::new(
        "counterexample",
        &[b"builtin:s3_over_c3;p=3;f0"],
        payload,
    ))
}

pub fn cmd_morita_check(args: &AlgebraArgs, m: usize) -> Result<Report> {
    let loaded = load_valid(args)?;
    let a = &loaded.algebra;
    if m == 0 {
        return Err(CliError::Input("m must be at least 1".into()));
    }
    check_cap(a.dim().saturating_mul(m.saturating_mul(m)))?;
    let check = morita_check(a, m)?;
    let verdict = |b: bool| if b { "commutes" } else { "fails" };
    let payload = json!({
        "m": m,
        "algebra_dimension": a.dim(),
        "matrix_algebra_dimension": a.dim() * m * m,
        "source_hh1_dimension": check.source_dimension,
        "target_hh1_dimension": check.target_dimension,
        "injective": check.injective,
        "p_power": check.ppower_commutes.iter().enumerate().map(|(i, &b)| json!({
            "class": i,
            "source": class(&check.source_classes[i]),
            "image": class(&check.image_classes[i]),
            "verdict": verdict(b),
        })).collect::<Vec<_>>(),
        "bracket": check.bracket_commutes.iter().map(|&((i, j), b)| json!({
            "classes": [i, j],
            "verdict": verdict(b),
        })).collect::<Vec<_>>(),
        "all_commute": check.all_commute(),
    });
    Ok(Report::new(
        "morita-check",
        &[&loaded.source, format!("m={m}").as_bytes()],
        payload,
    ))
}
