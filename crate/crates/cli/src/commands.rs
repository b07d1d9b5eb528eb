//! Subcommand implementations.  Each one fills an [`Envelope`]; errors from the library
//! are recorded in it rather than propagated.

use std::collections::BTreeMap;
use std::time::Instant;

use greencm::arith::{nf_log_abs, rat, NFElem, NumberField, Rational, Surd};
use greencm::cmformula::{
    build_cm_setup, compare_with_display, crosscheck_direct, crosscheck_direct_at, evaluate_cm_value, formula_functional, worked_examples,
    CMSetup, CoefficientFunctional, FunctionalTerm, WorkedExample,
};
use greencm::greeneval::{green_hecke, UHPoint};
use greencm::maassfield::{galois_act, load_table, maass_coefficient, CoefficientTable, GaloisMove};
use greencm::qforms::exponent2_survey;
use greencm::whbasis::{plus_space_basis, standard_input};
use greencm::{Error, Result};
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::config::{BasisArgs, Cli, Command, ExampleArgs, FormulaArgs, GreenArgs, SurveyArgs, TableArgs};
use crate::envelope::{decimal, Envelope, Numeric};
use crate::point::parse_point;

/// Runs the selected subcommand.
pub fn run(cli: &Cli) -> Envelope {
    let start = Instant::now();
    let cache = Cache::new(if cli.no_cache { None } else { Some(cli.cache_dir.as_path()) });
    let (name, inputs) = describe(&cli.command);
    let mut env = Envelope::new(name, inputs);
    let outcome = match &cli.command {
        Command::Example(a) => example(a, &cache, &mut env),
        Command::GreenEval(a) => green_eval(a, &mut env),
        Command::CmFormula(a) => cm_formula(a, &cache, &mut env),
        Command::SurveyClassgroups(a) => survey(a, &mut env),
        Command::Basis(a) => basis(a, &cache, &mut env),
        Command::TableValidate(a) => table_validate(a, &mut env),
    };
    if let Err(e) = outcome {
        env.fail(&e);
    }
    if !cli.deterministic {
        env.seconds = Some(format!("{:.3}", start.elapsed().as_secs_f64()));
    }
    env
}

fn describe(c: &Command) -> (&'static str, Value) {
    match c {
        Command::Example(a) => ("example", json!({"number": a.number, "tol": decimal(a.tol)})),
        Command::GreenEval(a) => ("green-eval", json!({"s": decimal(a.s), "m": a.m, "z1": a.z1, "z2": a.z2, "tol": decimal(a.tol)})),
        Command::CmFormula(a) => (
            "cm-formula",
            json!({
                "d2": a.d2, "delta": a.delta, "d1": a.d1, "j": a.j,
                "table": a.table.as_ref().map(|p| p.display().to_string()),
                "order": a.order, "prec": a.prec,
                "crosscheck": a.crosscheck, "tol": decimal(a.tol),
            }),
        ),
        Command::SurveyClassgroups(a) => ("survey-classgroups", json!({"bound": a.bound})),
        Command::Basis(a) => ("basis", json!({"j": a.j, "depth": a.depth, "order": a.order})),
        Command::TableValidate(a) => ("table-validate", json!({"path": a.path.display().to_string(), "digits": a.digits})),
    }
}

fn numeric(env: &mut Envelope, name: &str, value: f64, tol: f64) {
    insert(&mut env.numeric, name, serde_json::to_value(Numeric::new(value, tol)).expect("plain struct"));
}

fn insert(target: &mut Value, name: &str, v: Value) {
    if target.is_null() {
        *target = Value::Object(Map::new());
    }
    target.as_object_mut().expect("object").insert(name.to_string(), v);
}

// ---------------------------------------------------------------------------
// Functionals: exact JSON round trip and caching.

fn rational_from(v: &Value) -> Result<Rational> {
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| Error::Data(format!("expected a rational string, found {v}")))
}

fn functional_to_json(f: &CoefficientFunctional) -> Value {
    json!({
        "prefactor": {"coeff": f.prefactor.coeff.to_string(), "radicand": f.prefactor.radicand.to_string()},
        "point_level": f.point_level,
        "terms": f.terms.iter().map(|t| json!({
            "m": t.m.to_string(),
            "mu": t.mu,
            "coords": t.coords,
            "rep": t.rep.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "coeff": t.coeff.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn functional_from_json(v: &Value) -> Result<CoefficientFunctional> {
    let bad = || Error::Data("malformed cached functional".into());
    let p = &v["prefactor"];
    let radicand = p["radicand"].as_str().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let prefactor = Surd { coeff: rational_from(&p["coeff"])?, radicand };
    let mut terms = Vec::new();
    for t in v["terms"].as_array().ok_or_else(bad)? {
        terms.push(FunctionalTerm {
            m: rational_from(&t["m"])?,
            mu: t["mu"].as_u64().ok_or_else(bad)? as usize,
            coords: t["coords"].as_array().ok_or_else(bad)?.iter().map(|c| c.as_u64().ok_or_else(bad)).collect::<Result<_>>()?,
            rep: t["rep"].as_array().ok_or_else(bad)?.iter().map(rational_from).collect::<Result<_>>()?,
            coeff: rational_from(&t["coeff"])?,
        });
    }
    Ok(CoefficientFunctional { prefactor, terms, point_level: v["point_level"].as_bool().ok_or_else(bad)? })
}

/// Setup with the table-matching generators of a worked example, when one applies.
fn labelled_setup(d2: i64, delta: i64, d1: i64, j: u32) -> Result<CMSetup> {
    match worked_examples().into_iter().find(|e| (e.d2, e.delta, e.d1) == (d2, delta, d1)) {
        Some(ex) => WorkedExample { j, ..ex }.setup(),
        None => build_cm_setup(d2, delta, d1, j),
    }
}

fn cached_functional(cache: &Cache, setup: &CMSetup, key: &str, order: i64, env: &mut Envelope) -> Result<CoefficientFunctional> {
    let (v, line) = cache.get_or_compute(key, || {
        log::info!("computing {key}");
        formula_functional(setup, &standard_input(setup.j, order)?, order).map(|f| functional_to_json(&f))
    })?;
    env.cache.push(line);
    functional_from_json(&v)
}

fn functional_key(d2: i64, delta: i64, d1: i64, j: u32, order: i64) -> String {
    format!("functional/v1/d2={d2}/delta={delta}/d1={d1}/j={j}/order={order}")
}

fn functional_display(f: &CoefficientFunctional) -> Value {
    json!({
        "prefactor": f.prefactor.to_string(),
        "terms": f.terms.iter().map(|t| json!({"m": t.m.to_string(), "label": t.coords, "coeff": t.coeff.to_string()})).collect::<Vec<_>>(),
    })
}

/// Formula value at `prec` bits with a tolerance from re-evaluating at twice the precision.
fn formula_value(setup: &CMSetup, f: &CoefficientFunctional, table: &CoefficientTable, prec: u32) -> Result<(f64, f64, String)> {
    let lo = evaluate_cm_value(setup, f, table, prec)?;
    let hi = evaluate_cm_value(setup, f, table, 2 * prec)?;
    let v = hi.to_f64();
    // The decimal `value` is a double; the full-precision digits are reported separately.
    let tol = (lo.to_f64() - v).abs().max(v.abs().max(1.0) * 2f64.powi(8 - prec.min(1000) as i32)).max(v.abs() * f64::EPSILON);
    let digits = ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize - 2;
    Ok((v, tol, hi.to_decimal(digits.max(3))))
}

// ---------------------------------------------------------------------------
// example N

fn example(a: &ExampleArgs, cache: &Cache, env: &mut Envelope) -> Result<()> {
    let ids: &[&str] = match a.number {
        1 => &["1"],
        2 => &["2-j4", "2-j6"],
        _ => &["3"],
    };
    for id in ids {
        let ex = worked_examples().into_iter().find(|e| e.id == *id).expect("known example");
        worked(&ex, a.tol, cache, env)?;
        if ex.id == "1" {
            conjugates(&ex, a.tol, cache, env)?;
        }
        if ex.id == "3" {
            closed_form_three(env)?;
        }
    }
    Ok(())
}

fn worked(ex: &WorkedExample, tol: f64, cache: &Cache, env: &mut Envelope) -> Result<()> {
    let setup = ex.setup()?;
    let key = functional_key(ex.d2, ex.delta, ex.d1, ex.j, 4);
    let f = cached_functional(cache, &setup, &key, 4, env)?;
    insert(&mut env.exact, &format!("functional[{}]", ex.id), functional_display(&f));
    let cmp = compare_with_display(ex, &f)?;
    let tag = |what: &str| format!("example {}: {what}", ex.id);
    match (cmp.sign, cmp.mismatches.is_empty()) {
        (1, true) => env.check(&tag("coefficient vector"), true, format!("all {} displayed entries reproduced exactly", cmp.displayed)),
        (-1, true) => env.check(
            &tag("coefficient vector"),
            true,
            format!(
                "all {} entries reproduced up to an overall sign; the displayed vector has the opposite sign (settled by the direct sum)",
                cmp.displayed
            ),
        ),
        _ => env.check(&tag("coefficient vector"), false, cmp.mismatches.join("; ")),
    }
    let table = ex.coefficient_table()?;
    let (v, vtol, text) = formula_value(&setup, &f, &table, 128)?;
    numeric(env, &format!("value[{}]", ex.id), v, vtol);
    insert(&mut env.exact, &format!("value_digits[{}]", ex.id), json!(text));
    let close = if ex.id == "2-j6" { (v.abs() - ex.value.abs()).abs() < ex.value_tol } else { (v - ex.value).abs() < ex.value_tol };
    env.check(&tag("value"), close, format!("{} vs reference {} (tolerance {})", decimal(v), decimal(ex.value), decimal(ex.value_tol)));
    let ctol = if ex.id == "3" { tol.max(1e-7) } else { tol.max(1e-8) };
    let r = crosscheck_direct(&setup, &standard_input(ex.j, 4)?, &table, ctol)?;
    numeric(env, &format!("direct[{}]", ex.id), r.direct, r.direct_error);
    env.check(&tag("direct lattice sum"), r.pass, format!("difference {} (tolerance {})", decimal(r.difference), decimal(r.tolerance)));
    if ex.id == "2-j6" {
        let agree = r.direct.signum() == v.signum();
        env.check(&tag("sign"), agree, format!("formula {} and direct sum {} have the same sign", decimal(v), decimal(r.direct)));
    }
    Ok(())
}

/// Values at the two conjugate CM points of discriminant −23 and their sum.
fn conjugates(ex: &WorkedExample, tol: f64, cache: &Cache, env: &mut Envelope) -> Result<()> {
    let setup = ex.setup()?;
    let f = cached_functional(cache, &setup, &functional_key(ex.d2, ex.delta, ex.d1, ex.j, 4), 4, env)?;
    let table = ex.coefficient_table()?;
    let (v0, _, _) = formula_value(&setup, &f, &table, 128)?;
    let mut total = v0;
    let complex_roots: Vec<(f64, f64)> = table.field.roots_f64().iter().copied().filter(|r| r.1.abs() > 1e-6).collect();
    for (k, root) in complex_roots.iter().enumerate() {
        let moved = galois_act(&table, &GaloisMove::repin(root.0, root.1))?;
        let (v, vtol, _) = formula_value(&setup, &f, &moved, 128)?;
        numeric(env, &format!("conjugate_value[{k}]"), v, vtol);
        env.check(
            &format!("example 1: conjugate value {k}"),
            (v + 3.854054384748).abs() < 1e-8,
            format!("{} vs reference -3.854054384748", decimal(v)),
        );
        total += v;
        if k == 0 {
            let z = UHPoint::new(0.25, 23f64.sqrt() / 4.0)?;
            let r = crosscheck_direct_at(&setup, &standard_input(ex.j, 4)?, &moved, &z, tol.max(1e-8))?;
            env.check(
                "example 1: conjugate direct lattice sum",
                r.pass,
                format!("difference {} at (1+sqrt(-23))/4 (tolerance {})", decimal(r.difference), decimal(r.tolerance)),
            );
        }
    }
    // −(1/23)·log(11⁸⁰·19²²·23²³/7⁶⁶)
    let q = rpow(11, 80) * rpow(19, 22) * rpow(23, 23) / rpow(7, 66);
    let field = NumberField::from_i64(&[0, 1], 0.0, 0.0, 0.5)?;
    let closed = -nf_log_abs(&NFElem::from_rational(&field, q), 128)?.to_f64() / 23.0;
    numeric(env, "conjugate_sum", total, 3e-9);
    env.check(
        "example 1: sum over conjugates",
        (total + 8.708503325837).abs() < 1e-8 && (total - closed).abs() < 1e-8,
        format!("{} vs reference -8.708503325837 and closed form {}", decimal(total), decimal(closed)),
    );
    Ok(())
}

fn rpow(b: i64, e: u32) -> Rational {
    (0..e).fold(rat(1, 1), |acc, _| acc * rat(b, 1))
}

fn closed_form_three(env: &mut Envelope) -> Result<()> {
    // −(3/√21)·log|(32 + 7√21)⁴/25| in ℚ(√21)
    let field = NumberField::from_i64(&[-21, 0, 1], 21f64.sqrt(), 0.0, 0.1)?;
    let x = NFElem::new(&field, vec![rat(32, 1), rat(7, 1)]);
    let e = x.pow(4)?.mul(&NFElem::from_rational(&field, rat(1, 25)))?;
    let closed = -(3.0 / 21f64.sqrt()) * nf_log_abs(&e, 128)?.to_f64();
    let ex = worked_examples().into_iter().find(|e| e.id == "3").expect("known example");
    env.check(
        "example 3: closed form",
        (closed - ex.value).abs() < 1e-9,
        format!("-(3/sqrt(21))·log|(32+7·sqrt(21))^4/25| = {} vs reference {}", decimal(closed), decimal(ex.value)),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// green-eval

fn green_eval(a: &GreenArgs, env: &mut Envelope) -> Result<()> {
    let z1 = parse_point(&a.z1).map_err(Error::InvalidInput)?;
    let z2 = parse_point(&a.z2).map_err(Error::InvalidInput)?;
    if a.s <= 1.0 {
        return Err(Error::InvalidInput(format!("s = {} is not in the convergence range s > 1", a.s)));
    }
    let g = green_hecke(a.s, a.m, &z1, &z2, a.tol)?;
    numeric(env, "value", g.value, g.error.max(f64::EPSILON * g.value.abs()));
    insert(&mut env.exact, "cutoff", json!(decimal(g.cutoff)));
    insert(&mut env.exact, "terms", json!(g.terms));
    env.check("certified", g.error < a.tol, format!("|G(2T) − G(T)| = {} < {}", decimal(g.error), decimal(a.tol)));
    Ok(())
}

// ---------------------------------------------------------------------------
// cm-formula

fn cm_formula(a: &FormulaArgs, cache: &Cache, env: &mut Envelope) -> Result<()> {
    let setup = labelled_setup(a.d2, a.delta, a.d1, a.j)?;
    let f = cached_functional(cache, &setup, &functional_key(a.d2, a.delta, a.d1, a.j, a.order), a.order, env)?;
    insert(&mut env.exact, "functional", functional_display(&f));
    let table = match &a.table {
        Some(p) => table_arg(p)?,
        None => match (a.d2, a.delta) {
            (-23, 1) => greencm::cmformula::bundled_table("table-23")?,
            (-7, -3) => greencm::cmformula::bundled_table("table-63")?,
            _ => return Err(Error::InvalidInput("no bundled table for this setup; pass --table".into())),
        },
    };
    let (v, vtol, text) = formula_value(&setup, &f, &table, a.prec)?;
    numeric(env, "value", v, vtol);
    insert(&mut env.exact, "value_digits", json!(text));
    if a.crosscheck {
        let r = crosscheck_direct(&setup, &standard_input(a.j, a.order)?, &table, a.tol)?;
        numeric(env, "direct", r.direct, r.direct_error);
        env.check("direct lattice sum", r.pass, format!("difference {} (tolerance {})", decimal(r.difference), decimal(r.tolerance)));
    }
    Ok(())
}

/// A table path, or the name of a bundled table (`table-23`, `table-63`).
fn table_arg(p: &std::path::Path) -> Result<CoefficientTable> {
    if p.exists() {
        return load_table(p);
    }
    match p.file_name().and_then(|n| n.to_str()) {
        Some(name) if p.components().count() == 1 => greencm::cmformula::bundled_table(name),
        _ => Err(Error::InvalidInput(format!("table file {} does not exist", p.display()))),
    }
}

// ---------------------------------------------------------------------------
// survey-classgroups, basis, table-validate

fn survey(a: &SurveyArgs, env: &mut Envelope) -> Result<()> {
    let (total, exponent_two) = exponent2_survey(a.bound);
    insert(&mut env.exact, "fundamental_discriminants", json!(total));
    insert(&mut env.exact, "exponent_dividing_two", json!(exponent_two));
    Ok(())
}

fn basis(a: &BasisArgs, cache: &Cache, env: &mut Envelope) -> Result<()> {
    let key = format!("basis/v1/j={}/depth={}/order={}", a.j, a.depth, a.order);
    let (v, line) = cache.get_or_compute(&key, || -> Result<Value> {
        let rows = plus_space_basis(a.j, a.depth, a.order)?;
        Ok(Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "pivot": r.q.valuation().map(|e| e.to_string()),
                        "series": r.q.to_string(),
                    })
                })
                .collect(),
        ))
    })?;
    env.cache.push(line);
    insert(&mut env.exact, "weight", json!(format!("{}/2", 1 - 2 * a.j)));
    insert(&mut env.exact, "known_below", json!(a.order));
    insert(&mut env.exact, "basis", v);
    Ok(())
}

fn table_validate(a: &TableArgs, env: &mut Envelope) -> Result<()> {
    let t = table_arg(&a.path)?;
    let prec = ((a.digits as f64 + 10.0) / std::f64::consts::LOG10_2).ceil() as u32;
    let mut listed = BTreeMap::new();
    let mut coefficients = Vec::new();
    for (m, mu) in t.entries.keys() {
        let c = maass_coefficient(&t, m, *mu, prec)?;
        let label = t.group.coords(*mu).0.clone();
        listed.insert((m.clone(), label.clone()), ());
        coefficients.push(
            json!({"m": m.to_string(), "label": label, "c": c.to_fixed(a.digits), "tolerance": decimal(10f64.powi(1 - a.digits as i32))}),
        );
    }
    insert(&mut env.exact, "degree", json!(t.field.degree()));
    insert(&mut env.exact, "group_order", json!(t.group.order()));
    insert(&mut env.exact, "entries", json!(listed.len()));
    insert(&mut env.exact, "coefficients", Value::Array(coefficients));
    env.check("table parses and validates", true, format!("{} entries, field of degree {}", listed.len(), t.field.degree()));
    Ok(())
}
