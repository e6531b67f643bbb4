use std::io::Read;

use mdeg_core::determinantal::{closed_formulas, det_check, grading_names, DetSpec};
use mdeg_core::gin::{gin, gin_structure_report, GinOptions, GinResult};
use mdeg_core::groebner::contract;
use mdeg_core::hilbert::{
    arithmetic_multidegree, geometric_multidegrees, hilbert_function_oracle, hilbert_series_coefficients,
    k_polynomial, k_polynomial_monomial, multidegree_c, multidegree_g,
};
use mdeg_core::polymatroid::{exchange_check, snp_check, support_points, LatticePointSet};
use mdeg_core::standardization::{cs_check, standardize, standardize_ideal, verify_standardization, CsOptions};
use mdeg_core::{Error, Field, FieldSpec, GradedRing, IntegerPolynomial, MonomialOrder, PrimeField, Rationals};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Cli, Command, GinArgs, Input, PointsInput};
use crate::session::{parse_input, write_session, InputError, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

impl Output {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Output {
            text,
            json,
            status: if ok { Status::Ok } else { Status::CheckFailed },
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(e) => match e {
                Error::ZeroDegreeVariable(_)
                | Error::DuplicateVariableName(_)
                | Error::DegreeLength { .. }
                | Error::NonPrimeModulus(_)
                | Error::NotHomogeneous
                | Error::DenominatorVanishes(_)
                | Error::InvalidOrder(_)
                | Error::BadBlock(_)
                | Error::BadShape(_)
                | Error::BoundTooLarge(_)
                | Error::DimensionMismatch => 2,
                _ => 3,
            },
        }
    }
}

macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn read_source(file: &str) -> Result<String, InputError> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| InputError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| InputError::Io(format!("{file}: {e}")))
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let t = s.trim();
    if t == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t.strip_prefix("Fp").unwrap_or(t).trim();
    let p: u64 = digits
        .parse()
        .map_err(|_| InputError::Argument(format!("unknown field `{s}`; use QQ or a prime")))?;
    Ok(FieldSpec::prime(p)?)
}

fn load(file: &str, field: Option<&str>) -> Result<Session, CliError> {
    let session = parse_input(&read_source(file)?)?;
    match field {
        Some(f) => Ok(session.with_field(parse_field(f)?)?),
        None => Ok(session),
    }
}

/// `MDEG_SEED` wins over `--seed`.
pub fn effective_seed(flag: u64) -> u64 {
    std::env::var("MDEG_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(flag)
}

fn gin_options(args: &GinArgs) -> GinOptions {
    GinOptions {
        trials: args.trials.max(1),
        seed: effective_seed(args.seed),
        ..GinOptions::default()
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Input(InputError::Argument(format!("bad {what} `{x}`"))))
        })
        .collect()
}

fn ring_json(ring: &GradedRing) -> Value {
    json!({
        "field": ring.field().to_string(),
        "vars": ring.vars(),
        "degrees": ring.degrees(),
        "rank": ring.rank(),
    })
}

fn poly_json(ring: &GradedRing, kind: &str, poly: &IntegerPolynomial, meta: Value) -> Value {
    json!({
        "ring": ring_json(ring),
        "result": {"kind": kind, "poly": poly.records(), "meta": meta},
    })
}

fn order_for(spec: &str, ring: &GradedRing) -> Result<MonomialOrder, CliError> {
    Ok(MonomialOrder::parse(spec, ring.nvars())?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Kpoly(input) => poly_command(input, "kpoly"),
        Command::Cee(input) => poly_command(input, "cee"),
        Command::Gee(input) => poly_command(input, "gee"),
        Command::Arith(input) => poly_command(input, "arith"),
        Command::Geom(input) => {
            let s = load(&input.file, input.field.as_deref())?;
            with_field!(s.field, |f| geom(&s, input, f))
        }
        Command::Gin { input, gin } => {
            let s = load(&input.file, input.field.as_deref())?;
            with_field!(s.field, |f| gin_command(&s, input, gin, f))
        }
        Command::GinReport { input, gin } => {
            let s = load(&input.file, input.field.as_deref())?;
            with_field!(s.field, |f| gin_report(&s, input, gin, f))
        }
        Command::Project { input, blocks } => {
            let s = load(&input.file, input.field.as_deref())?;
            let blocks = parse_list(blocks, "block")?;
            with_field!(s.field, |f| project(&s, input, &blocks, f))
        }
        Command::CsCheck {
            input,
            gin,
            sample_orders,
            paranoid,
        } => {
            let s = load(&input.file, input.field.as_deref())?;
            let samples = sample_orders + if *paranoid { 2 } else { 0 };
            with_field!(s.field, |f| cs(&s, input, gin, samples, f))
        }
        Command::Standardize { input, emit_ring } => {
            let s = load(&input.file, input.field.as_deref())?;
            with_field!(s.field, |f| standardize_command(&s, input, *emit_ring, f))
        }
        Command::PolymatroidCheck(p) => points_command(p, false),
        Command::SnpCheck(p) => points_command(p, true),
        Command::Det {
            m,
            n,
            r,
            formulas_only,
            ..
        } => det(*m, *n, *r, *formulas_only),
        Command::HfOracle { input, bound } => {
            let s = load(&input.file, input.field.as_deref())?;
            let bound = parse_list(bound, "bound")?;
            with_field!(s.field, |f| hf_oracle(&s, input, &bound, f))
        }
    }
}

pub fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        Command::Kpoly(i) | Command::Cee(i) | Command::Gee(i) | Command::Arith(i) | Command::Geom(i) => i.json,
        Command::Gin { input, .. }
        | Command::GinReport { input, .. }
        | Command::Project { input, .. }
        | Command::CsCheck { input, .. }
        | Command::Standardize { input, .. }
        | Command::HfOracle { input, .. } => input.json,
        Command::PolymatroidCheck(p) | Command::SnpCheck(p) => p.json,
        Command::Det { json, .. } => *json,
    }
}

fn poly_command(input: &Input, kind: &str) -> Result<Output, CliError> {
    let s = load(&input.file, input.field.as_deref())?;
    with_field!(s.field, |f| poly_result(&s, input, kind, f))
}

fn poly_result<F: Field>(s: &Session, input: &Input, kind: &str, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let mut meta = json!({"order": input.order, "ideal": s.named(input.ideal.as_deref())?.name});
    let poly = match kind {
        "kpoly" => k_polynomial(&ideal, &order),
        "cee" => multidegree_c(&ideal, &order)?,
        "gee" => multidegree_g(&ideal, &order),
        _ => match ideal.to_monomial_ideal() {
            Some(m) => {
                meta["source"] = json!("ideal");
                arithmetic_multidegree(&m)?
            }
            None => {
                meta["source"] = json!("initial ideal");
                arithmetic_multidegree(&ideal.initial_ideal(&order))?
            }
        },
    };
    let text = format!("{}\n", poly.display_with(&s.tnames()));
    Ok(Output::new(text, poly_json(&s.ring, kind, &poly, meta), true))
}

fn geom<F: Field>(s: &Session, input: &Input, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let table = geometric_multidegrees(&ideal, &order)?;
    let mut text = format!("dim = {}\n", table.dim);
    for e in &table.entries {
        let n: Vec<String> = e.n.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("deg^({}) = {}\n", n.join(","), e.degree));
    }
    text.push_str(&format!("MDeg = {}\n", table.mdeg));
    let j = json!({"ring": ring_json(&s.ring), "result": {"kind": "geom", "table": table}});
    Ok(Output::new(text, j, true))
}

fn gin_text(g: &GinResult) -> Result<(String, Value), CliError> {
    let pd = g.ideal.primary_decomposition()?;
    let names = g.ideal.ring().vars();
    let mut text = format!("gin = {}\n", g.ideal);
    text.push_str(&format!(
        "trials = {}, seeds = {:?}, borel-fixed = {}\n",
        g.trials,
        g.seeds,
        yes(g.borel)
    ));
    let mut comps = Vec::new();
    for c in &pd {
        let prime: Vec<String> = c.prime.iter().map(|&i| names[i].clone()).collect();
        let length = c.length.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "  {} {} length {}\n",
            if c.is_minimal { "minimal " } else { "embedded" },
            c.component,
            length
        ));
        comps.push(json!({
            "component": c.component.to_string(),
            "prime": prime,
            "minimal": c.is_minimal,
            "length": c.length,
        }));
    }
    let gens: Vec<&[u32]> = g.ideal.gens().iter().map(|m| m.exponents()).collect();
    let j = json!({
        "kind": "gin",
        "gin": g.ideal.to_string(),
        "generators": gens,
        "borel": g.borel,
        "stable": g.stable,
        "seeds": g.seeds,
        "components": comps,
    });
    Ok((text, j))
}

fn gin_command<F: Field>(s: &Session, input: &Input, args: &GinArgs, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let g = gin(&ideal, &order, &gin_options(args))?;
    let (text, result) = gin_text(&g)?;
    Ok(Output::new(text, json!({"ring": ring_json(&s.ring), "result": result}), true))
}

fn gin_report<F: Field>(s: &Session, input: &Input, args: &GinArgs, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let r = gin_structure_report(&ideal, &order, &gin_options(args))?;
    let mut text = format!("gin = {}\nMLength = {}\n", r.gin, r.mlength);
    for c in &r.minimal_components {
        text.push_str(&format!("  minimal {} length {}\n", c.component, c.length));
    }
    text.push_str(&format!(
        "associated primes = {}\nradical Cohen-Macaulay = {}\nprimes Borel-type = {}\nequidimensional = {}\n",
        r.associated_primes,
        yes(r.radical_cm),
        yes(r.primes_borel),
        yes(r.equidimensional)
    ));
    for p in &r.projections {
        let b: Vec<String> = p.blocks.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!(
            "J = {{{}}}: MLength {} bound {} divisibility {}\n",
            b.join(","),
            p.mlength,
            if p.mlength_ok { "ok" } else { "FAILED" },
            if p.divisibility_ok { "ok" } else { "FAILED" }
        ));
    }
    text.push_str(&format!("pass = {}\n", yes(r.pass)));
    let ok = r.pass;
    let j = json!({"ring": ring_json(&s.ring), "result": {"kind": "gin-report", "report": r}});
    Ok(Output::new(text, j, ok))
}

fn project<F: Field>(s: &Session, input: &Input, blocks: &[u32], field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let zero_based: Vec<usize> = blocks
        .iter()
        .map(|&b| (b as usize).checked_sub(1).ok_or(Error::BadBlock(0)))
        .collect::<Result<_, _>>()?;
    let q = contract(&ideal, &zero_based, &order)?;
    let all = s.tnames();
    let tvars: Vec<String> = zero_based.iter().map(|&b| all[b].clone()).collect();
    let name = s.named(input.ideal.as_deref())?.name.clone();
    let text = write_session(q.ring(), Some(&tvars), &[(name.clone(), q.gens().to_vec())]);
    let gens: Vec<String> = q.gens().iter().map(|g| g.to_string()).collect();
    let j = json!({
        "ring": ring_json(q.ring()),
        "result": {"kind": "project", "ideal": name, "generators": gens, "meta": {"blocks": blocks, "tvars": tvars}},
    });
    Ok(Output::new(text, j, true))
}

fn cs<F: Field>(s: &Session, input: &Input, args: &GinArgs, samples: usize, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let opts = CsOptions {
        gin: gin_options(args),
        order: None,
        sample_orders: samples,
    };
    let v = cs_check(&ideal, &opts)?;
    let mut text = format!("cartwright-sturmfels = {}\n", yes(v.is_cs));
    if let Some(w) = &v.witness {
        text.push_str(&format!("gin = {w}\n"));
    }
    if let Some(r) = &v.reason {
        text.push_str(&format!("reason: {r}\n"));
    }
    if let Some(sq) = v.squarefree_initials {
        text.push_str(&format!("squarefree initial ideals under {samples} sampled orders = {}\n", yes(sq)));
    }
    let ok = v.is_cs && v.squarefree_initials != Some(false);
    let j = json!({
        "ring": ring_json(&s.ring),
        "result": {
            "kind": "cs-check",
            "is_cs": v.is_cs,
            "witness": v.witness.as_ref().map(|w| w.to_string()),
            "reason": v.reason,
            "squarefree_initials": v.squarefree_initials,
        },
    });
    Ok(Output::new(text, j, ok))
}

fn standardize_command<F: Field>(s: &Session, input: &Input, emit_ring: bool, field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let map = standardize(&s.ring)?;
    let report = verify_standardization(&ideal, &map, &order)?;
    let j_ideal = standardize_ideal(&ideal, &map)?;
    let name = s.named(input.ideal.as_deref())?.name.clone();
    let checks = format!(
        "codim {}, K {}, C {}, initial ideals {}",
        if report.codim_equal { "ok" } else { "differs" },
        if report.k_equal { "ok" } else { "differs" },
        if report.c_equal { "ok" } else { "differs" },
        if report.initial_compatible { "ok" } else { "differ" },
    );
    let text = if emit_ring {
        format!(
            "# {checks}\n{}",
            write_session(map.target(), s.tvars.as_deref(), &[(name.clone(), j_ideal.gens().to_vec())])
        )
    } else {
        let gens: Vec<String> = j_ideal.gens().iter().map(|g| format!("  {g}")).collect();
        format!("{checks}\nJ = [\n{}\n]\n", gens.join(";\n"))
    };
    let gens: Vec<String> = j_ideal.gens().iter().map(|g| g.to_string()).collect();
    let ok = report.pass;
    let j = json!({
        "ring": ring_json(map.target()),
        "result": {"kind": "standardize", "ideal": name, "generators": gens, "report": report, "images": map.images()},
    });
    Ok(Output::new(text, j, ok))
}

fn read_points(file: &str) -> Result<LatticePointSet, CliError> {
    let src = read_source(file)?;
    let mut pts = Vec::new();
    for (k, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let cleaned: String = line.chars().map(|c| if c == '(' || c == ')' || c == ',' { ' ' } else { c }).collect();
        if cleaned.trim().is_empty() {
            continue;
        }
        let p = cleaned
            .split_whitespace()
            .map(|x| x.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| InputError::Syntax {
                line: k + 1,
                col: 1,
                expected: "nonnegative integers".into(),
            })?;
        pts.push(p);
    }
    let dim = pts.first().map_or(0, |p| p.len());
    Ok(LatticePointSet::new(dim, pts)?)
}

fn fmt_point(p: &[u32]) -> String {
    let v: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

fn points_command(p: &PointsInput, snp: bool) -> Result<Output, CliError> {
    let kind = if snp { "snp-check" } else { "polymatroid-check" };
    let (poly, ring) = match (&p.points, &p.file) {
        (Some(points), _) => (read_points(points)?.indicator(), None),
        (None, Some(file)) => {
            let s = load(file, p.field.as_deref())?;
            let order = order_for(&p.order, &s.ring)?;
            let c = with_field!(s.field, |f| {
                let ideal = s.ideal(p.from_cee.as_deref(), f)?;
                multidegree_c(&ideal, &order)?
            });
            (c, Some(s.ring.clone()))
        }
        (None, None) => {
            return Err(InputError::Argument("give a session file with --from-cee, or --points".into()).into());
        }
    };
    let ring_value = ring.as_deref().map(ring_json).unwrap_or(Value::Null);
    if snp {
        let ok = snp_check(&poly)?;
        let text = format!("snp = {}\n", yes(ok));
        let j = json!({"ring": ring_value, "result": {"kind": kind, "ok": ok, "poly": poly.records()}});
        return Ok(Output::new(text, j, ok));
    }
    let set = support_points(&poly);
    let r = exchange_check(&set);
    let mut text = format!("polymatroid = {}\n", yes(r.ok));
    if let Some(c) = &r.counterexample {
        text.push_str(&format!(
            "counterexample: u = {}, v = {}, i = {}\n",
            fmt_point(&c.u),
            fmt_point(&c.v),
            c.i
        ));
    } else if let Some(reason) = &r.reason {
        text.push_str(&format!("reason: {reason}\n"));
    }
    let points: Vec<&Vec<u32>> = set.points().iter().collect();
    let j = json!({"ring": ring_value, "result": {"kind": kind, "check": r, "points": points}});
    Ok(Output::new(text, j, r.ok))
}

fn diff_text(a: &IntegerPolynomial, b: &IntegerPolynomial, names: &[String]) -> String {
    let d = a.sub(b);
    if d.is_zero() {
        "none".into()
    } else {
        d.display_with(names)
    }
}

fn det(m: usize, n: usize, r: usize, formulas_only: bool) -> Result<Output, CliError> {
    let spec = DetSpec::new(m, n, r)?;
    let names = grading_names(m, n);
    let mut text = String::new();
    let mut j = json!({"kind": "det", "m": m, "n": n, "r": r});
    let closed = if r == m {
        let f = closed_formulas(m, n)?;
        text.push_str(&format!("closed C = {}\n", f.h.display_with(&names)));
        text.push_str(&format!("closed K = {}\n", f.k.display_with(&names)));
        j["closed"] = json!({"C": f.h.records(), "K": f.k.records()});
        Some(f)
    } else if formulas_only {
        return Err(Error::BadShape("closed formulas need r = m".into()).into());
    } else {
        None
    };
    let mut ok = true;
    if !formulas_only {
        let check = det_check(spec, PrimeField::new(32003)?)?;
        text.push_str(&format!("pipeline C = {}\n", check.c_pipeline));
        text.push_str(&format!("pipeline K = {}\n", check.k_pipeline));
        if let Some(f) = &closed {
            let ring = mdeg_core::determinantal::det_ring(m, n, FieldSpec::default_prime())?;
            let ideal = mdeg_core::determinantal::build_determinantal(spec, PrimeField::new(32003)?)?;
            let init = ideal.initial_ideal(&MonomialOrder::diagonal(ring.nvars()));
            let k = k_polynomial_monomial(&init);
            let c = mdeg_core::hilbert::multidegree_c_monomial(&init)?;
            text.push_str(&format!("diff C: {}\n", diff_text(&c, &f.h, &names)));
            text.push_str(&format!("diff K: {}\n", diff_text(&k, &f.k, &names)));
            text.push_str(&format!(
                "diagonal initial ideal: {}\n",
                if check.initial_match == Some(true) { "ok" } else { "differs" }
            ));
            j["pipeline"] = json!({"C": c.records(), "K": k.records()});
        } else {
            j["pipeline"] = json!({"C": check.c_pipeline, "K": check.k_pipeline});
        }
        ok = check.pass();
        j["pass"] = json!(ok);
    }
    Ok(Output::new(text, json!({"ring": Value::Null, "result": j}), ok))
}

fn hf_oracle<F: Field>(s: &Session, input: &Input, bound: &[u32], field: F) -> Result<Output, CliError> {
    let ideal = s.ideal(input.ideal.as_deref(), field)?;
    let order = order_for(&input.order, &s.ring)?;
    let init = ideal.initial_ideal(&order);
    let counted = hilbert_function_oracle(&init, bound)?;
    let series = hilbert_series_coefficients(&k_polynomial_monomial(&init), &s.ring, bound);
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut ok = true;
    for (nu, h) in &counted {
        let agree = series.get(nu).map(|c| *c == (*h).into()).unwrap_or(false);
        ok &= agree;
        text.push_str(&format!("{} {}{}\n", fmt_point(nu), h, if agree { "" } else { "  MISMATCH" }));
        entries.push(json!({"nu": nu, "value": h.to_string(), "agree": agree}));
    }
    text.push_str(&format!("agree = {}\n", yes(ok)));
    let j = json!({"ring": ring_json(&s.ring), "result": {"kind": "hf-oracle", "entries": entries, "agree": ok}});
    Ok(Output::new(text, j, ok))
}

