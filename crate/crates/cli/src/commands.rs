//! One function per subcommand; each returns the report payload.

use std::collections::HashSet;
use std::sync::Arc;

use rankmetric::*;
use serde_json::{json, Value};

use crate::args::{parse_element, show, CodeSpec};
use crate::report::{CliError, Output};
use crate::{Cli, Command, ShapeArg, SideArg};

type CliResult<T> = std::result::Result<T, CliError>;
type Run = CliResult<Output>;

pub fn run(cli: &Cli) -> Run {
    let tower = build_tower(cli.p, cli.e, cli.n, cli.poly.as_deref())?;
    match &cli.command {
        Command::Field => field(cli, &tower),
        Command::Construct => construct(cli, &tower),
        Command::Mindist { samples, seed } => mindist(cli, &tower, *samples, *seed),
        Command::Mrd => mrd(cli, &tower),
        Command::Dual => dual(cli, &tower),
        Command::Adjoint => adjoint(cli, &tower),
        Command::Nucleus => nucleus_cmd(cli, &tower),
        Command::Spreadset => spreadset(cli, &tower),
        Command::Hk => hk(cli, &tower),
        Command::Equiv { left, right } => equiv(cli, &tower, left.as_ref(), right.as_ref()),
        Command::Auto => auto(cli, &tower),
    }
}

fn oracle_failed(what: &str) -> CliError {
    CliError::Internal(format!("oracle disagreement: {what}"))
}

fn row(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn output(command: &'static str, t: &FieldTower, inputs: Value, outputs: Value, table: Vec<(String, String)>) -> Output {
    Output {
        command,
        tower: t.spec(),
        inputs,
        outputs,
        seed: None,
        table,
    }
}

fn polys(fs: &[LinearizedPoly]) -> Value {
    serde_json::to_value(fs).expect("polynomials serialize")
}

fn code_json(c: &RankMetricCode) -> Value {
    let mut v = c.to_json();
    v["dim_Fq"] = json!(c.dim());
    v["generators"] = polys(c.generators());
    v
}

fn elem_json(t: &FieldTower, x: Fe) -> Value {
    json!({ "code": x.code(), "log": t.log(x) })
}

fn field(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let gamma = t.find_gamma()?;
    if cli.oracle {
        let seen: HashSet<Fe> = t.nonzero_by_power().collect();
        if seen.len() as u64 != t.order() - 1 {
            return Err(oracle_failed("omega does not generate the multiplicative group"));
        }
        if !t.has_nonsquare_norm(gamma) || t.is_square_in_base(t.norm(gamma))? {
            return Err(oracle_failed("gamma norm"));
        }
    }
    let outputs = json!({
        "q": t.q(),
        "subfield_orders": [t.q(), t.subfield_order(t.n()), t.order()],
        "omega": elem_json(t, t.omega()),
        "gamma": elem_json(t, gamma),
        "norm_gamma": t.norm(gamma).code(),
    });
    let table = vec![
        row("tower", format!("F_{} < F_{} < F_{}", t.q(), t.subfield_order(t.n()), t.order())),
        row("defining poly", format!("{:?}", t.defining_poly())),
        row("gamma", show(t, gamma)),
        row("N(gamma)", show(t, t.norm(gamma))),
    ];
    Ok(output("field", t, json!({}), outputs, table))
}

fn the_code(cli: &Cli, t: &Arc<FieldTower>) -> CliResult<(CodeSpec, RankMetricCode)> {
    let spec = cli.code_spec()?;
    let code = spec.build(t)?;
    Ok((spec, code))
}

fn construct(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    if cli.oracle && !code.generators().iter().all(|g| code.contains(g).unwrap_or(false) && code.span_contains(g)) {
        return Err(oracle_failed("generator membership"));
    }
    let mut table = vec![row("code", spec.label()), row("dim_Fq", code.dim())];
    for (i, g) in code.generators().iter().enumerate() {
        table.push(row(&format!("g{i}"), g));
    }
    Ok(output("construct", t, json!({ "code": spec.label() }), code_json(&code), table))
}

/// Exhaustive distance by pointwise root counting.
fn brute_distance(code: &RankMetricCode, budget: u64) -> CliResult<u32> {
    let t = code.tower();
    let n = t.big_n();
    let mut best = n + 1;
    for f in code.codewords(budget)? {
        if f.is_zero() {
            continue;
        }
        let roots = f.root_count_exhaustive();
        let kernel_dim = (roots as f64).log(t.q() as f64).round() as u32;
        best = best.min(n - kernel_dim);
    }
    Ok(best)
}

fn mindist(cli: &Cli, t: &Arc<FieldTower>, samples: Option<u64>, seed: u64) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let budget = cli.budget()?;
    let inputs = json!({ "code": spec.label(), "budget": budget, "samples": samples });
    match code.min_distance(budget) {
        Ok(cert) => {
            if cli.oracle && brute_distance(&code, budget)? != cert.min_distance {
                return Err(oracle_failed("minimum distance"));
            }
            let table = vec![
                row("code", spec.label()),
                row("dim_Fq", cert.dim_fq),
                row("min_distance", cert.min_distance),
                row("is_mrd", cert.is_mrd),
                row("witness", &cert.witness_min_rank_codeword),
            ];
            let outputs = json!({ "exact": true, "certificate": cert });
            Ok(output("mindist", t, inputs, outputs, table))
        }
        Err(Error::BudgetExceeded { .. }) if samples.is_some() => {
            let sd = code.min_distance_sampled(samples.unwrap(), seed);
            let table = vec![
                row("code", spec.label()),
                row("upper_bound", sd.upper_bound),
                row("samples", sd.samples),
                row("seed", sd.seed),
            ];
            let mut out = output("mindist", t, inputs, json!({ "exact": false, "sampled": sd }), table);
            out.seed = Some(seed);
            Ok(out)
        }
        Err(e) => Err(e.into()),
    }
}

fn mrd(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let budget = cli.budget()?;
    let cert = code.min_distance(budget)?;
    if cli.oracle && brute_distance(&code, budget)? != cert.min_distance {
        return Err(oracle_failed("minimum distance"));
    }
    let n = t.big_n();
    let bound = (code.dim() % n == 0).then(|| n - code.dim() / n + 1);
    let outputs = json!({
        "d": cert.min_distance,
        "is_mrd": cert.is_mrd,
        "singleton_bound": bound,
        "dim_Fq": cert.dim_fq,
    });
    let table = vec![
        row("code", spec.label()),
        row("d", cert.min_distance),
        row("singleton bound", bound.map_or("-".into(), |b| b.to_string())),
        row("is_mrd", cert.is_mrd),
    ];
    Ok(output("mrd", t, json!({ "code": spec.label(), "budget": budget }), outputs, table))
}

fn form(t: &FieldTower, f: &LinearizedPoly, g: &LinearizedPoly) -> Fe {
    let s = f.coeffs().iter().zip(g.coeffs()).fold(Fe::ZERO, |acc, (&a, &b)| t.add(acc, t.mul(a, b)));
    t.trace_to_base(s)
}

fn family_json(c: Option<&RankMetricCode>) -> Value {
    c.map_or(Value::Null, |c| json!({ "family": c.family().name(), "params": c.family().params() }))
}

fn dual(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let budget = cli.budget()?;
    let d = delsarte_dual(&code)?;
    if cli.oracle {
        let n = t.big_n();
        let orthogonal = code.generators().iter().all(|f| d.generators().iter().all(|g| form(t, f, g).is_zero()));
        if !orthogonal || code.dim() + d.dim() != n * n {
            return Err(oracle_failed("dual orthogonality"));
        }
    }
    let recognized = recognize(&d);
    let mut outputs = json!({
        "dual": code_json(&d),
        "recognized": family_json(recognized.as_ref()),
        "is_mrd": d.is_mrd(budget).ok(),
    });
    let mut table = vec![row("code", spec.label()), row("dual dim_Fq", d.dim())];
    if let CodeSpec::D { k, s, .. } = &spec {
        let (n, big) = (t.n(), t.big_n());
        let m = (big as i64 - (*k as i64 * *s as i64)).rem_euclid(big as i64);
        let sub = substitute_monomial(&d, m)?;
        let gamma = match code.family() {
            Family::DFamily { gamma, .. } => *gamma,
            _ => unreachable!("D descriptor builds a D code"),
        };
        let target = make_d(t, 2 * n - k, *s, t.neg(gamma))?;
        let literal = sub.same_codewords(&target);
        let cert = monomial_equiv_search(&sub, &target, budget)?;
        outputs["substitution"] = json!({
            "exponent": m,
            "target": format!("D:{}:{}:-{}", 2 * n - k, s, show(t, gamma)),
            "equals_target": literal,
            "monomial_equivalence": cert,
        });
        table.push(row("substituted dual = D(-gamma)", literal));
        table.push(row("monomially equivalent", cert.verdict == Verdict::Equivalent));
    }
    table.push(row("recognized", recognized.map_or("-".into(), |r| r.family().name().to_string())));
    Ok(output("dual", t, json!({ "code": spec.label(), "budget": budget }), outputs, table))
}

fn adjoint(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let budget = cli.budget()?;
    let adj = adjoint_code(&code)?;
    if cli.oracle {
        for f in code.generators() {
            let fa = f.adjoint();
            for x in t.elements() {
                for y in t.elements() {
                    if t.trace_to_base(t.mul(x, f.evaluate(y))) != t.trace_to_base(t.mul(fa.evaluate(x), y)) {
                        return Err(oracle_failed("adjoint trace identity"));
                    }
                }
            }
        }
    }
    let mut outputs = json!({ "adjoint": code_json(&adj) });
    let mut table = vec![row("code", spec.label()), row("adjoint dim_Fq", adj.dim())];
    if let Family::DFamily { k, s, gamma } = code.family() {
        let inv = t.inv(*gamma).expect("gamma is nonzero");
        let target = make_d(t, *k, *s, inv)?;
        let cert = monomial_equiv_search(&adj, &target, budget)?;
        table.push(row(&format!("equivalent to D:{k}:{s}:{}", show(t, inv)), cert.verdict == Verdict::Equivalent));
        outputs["inverse_gamma_equivalence"] = json!(cert);
    }
    Ok(output("adjoint", t, json!({ "code": spec.label(), "budget": budget }), outputs, table))
}

fn nucleus_cmd(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let side = match cli.side {
        SideArg::Middle => Side::Middle,
        SideArg::Right => Side::Right,
        SideArg::Left => {
            return Err(CliError::Usage(
                "the left nucleus of a code is not computed; use `hk` for semifield nuclei".into(),
            ))
        }
    };
    let nuc = nucleus(&code, side)?;
    if cli.oracle {
        for phi in nuc.elements()? {
            for f in code.generators() {
                let g = match side {
                    Side::Middle => f.compose(&phi)?,
                    Side::Right => phi.compose(f)?,
                };
                if !code.contains(&g)? {
                    return Err(oracle_failed("nucleus element leaves the code"));
                }
            }
        }
    }
    let big = t.big_n();
    let scalars_of = (1..=big)
        .filter(|m| big % m == 0)
        .find(|&m| NucleusSpace::scalars(t, m).is_ok_and(|s| s.same_as(&nuc)));
    let is_field = nuc.is_field()?;
    let side_name = format!("{side:?}").to_lowercase();
    let outputs = json!({
        "side": side_name,
        "nucleus": nuc,
        "size": nuc.size() as u64,
        "is_field": is_field,
        "scalar_subfield_degree": scalars_of,
    });
    let mut table = vec![
        row("code", spec.label()),
        row("side", &side_name),
        row("dim_Fq", nuc.dim()),
        row("size", nuc.size()),
        row("is_field", is_field),
        row("equals {aX : a in F_q^m}", scalars_of.map_or("-".into(), |m| format!("m = {m}"))),
    ];
    for (i, b) in nuc.basis().iter().enumerate() {
        table.push(row(&format!("b{i}"), b));
    }
    Ok(output("nucleus", t, json!({ "code": spec.label(), "side": side_name }), outputs, table))
}

fn hk_params(cli: &Cli, t: &Arc<FieldTower>) -> CliResult<HkParams> {
    let gamma = parse_element(t, &cli.gamma)?;
    Ok(HkParams::new(t, gamma, cli.s)?)
}

fn spreadset(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let params = hk_params(cli, t)?;
    let budget = cli.budget()?;
    let code = params.spread_set();
    let cert = code.min_distance(budget)?;
    if cli.oracle {
        let table = MulTable::hughes_kleinfeld(&params)?;
        let elems: Vec<Fe> = t.elements().collect();
        let from_code: HashSet<Vec<Fe>> = code
            .codewords(budget)?
            .iter()
            .map(|f| elems.iter().map(|&x| f.evaluate(x)).collect())
            .collect();
        let from_table: HashSet<Vec<Fe>> =
            elems.iter().map(|&b| elems.iter().map(|&x| table.mul(x, b)).collect()).collect();
        if from_code != from_table {
            return Err(oracle_failed("spread set differs from the multiplication"));
        }
    }
    let inputs = json!({ "gamma": elem_json(t, params.gamma), "s": params.s });
    let outputs = json!({
        "u": params.u.code(),
        "v": params.v.code(),
        "spread_set": code_json(&code),
        "certificate": cert,
    });
    let table = vec![
        row("gamma", show(t, params.gamma)),
        row("u, v", format!("{}, {}", show(t, params.u), show(t, params.v))),
        row("dim_Fq", code.dim()),
        row("min_distance", cert.min_distance),
        row("is_mrd", cert.is_mrd),
    ];
    Ok(output("spreadset", t, inputs, outputs, table))
}

fn codes(v: &[Fe]) -> Vec<u32> {
    v.iter().map(|x| x.code()).collect()
}

fn hk(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let params = hk_params(cli, t)?;
    let table = MulTable::hughes_kleinfeld(&params)?;
    if cli.oracle {
        table.check_biadditive()?;
    }
    let zero_divisor = table.find_zero_divisor();
    let nuclei = table.nuclei()?;
    let system = params.left_nucleus_system();
    let matches = system == nuclei.left;
    if cli.oracle && !matches {
        return Err(oracle_failed("left nucleus equations"));
    }
    let inputs = json!({ "gamma": elem_json(t, params.gamma), "s": params.s });
    let outputs = json!({
        "u": params.u.code(),
        "v": params.v.code(),
        "presemifield": zero_divisor.is_none(),
        "zero_divisor": zero_divisor.map(|(x, y)| [x.code(), y.code()]),
        "nuclei": {
            "left": codes(&nuclei.left),
            "middle": codes(&nuclei.middle),
            "right": codes(&nuclei.right),
        },
        "left_nucleus_equations": codes(&system),
        "left_matches_equations": matches,
    });
    let out_table = vec![
        row("gamma", show(t, params.gamma)),
        row("presemifield", zero_divisor.is_none()),
        row("|N_l|", nuclei.left.len()),
        row("|N_m|", nuclei.middle.len()),
        row("|N_r|", nuclei.right.len()),
        row("N_l matches equations", matches),
    ];
    Ok(output("hk", t, inputs, outputs, out_table))
}

fn search(shape: ShapeArg, c1: &RankMetricCode, c2: &RankMetricCode, budget: u64) -> Result<EquivalenceCertificate> {
    match shape {
        ShapeArg::Monomial => monomial_equiv_search(c1, c2, budget),
        ShapeArg::Binomial => binomial_equiv_search(c1, c2, budget),
        ShapeArg::All => combined_equiv_search(c1, c2, budget),
    }
}

/// Pointwise check that the witness sends every generator of c1 into c2.
fn pointwise_witness_check(t: &FieldTower, m: &EquivalenceMap, c1: &RankMetricCode, c2: &RankMetricCode) -> Result<bool> {
    if c1.dim() != c2.dim() || !m.is_bijective() {
        return Ok(false);
    }
    for f in c1.generators() {
        let fr = f.apply_automorphism(m.rho);
        let img = m.apply(f)?;
        let pointwise = t
            .elements()
            .all(|x| img.evaluate(x) == m.phi1.evaluate(fr.evaluate(m.phi2.evaluate(x))));
        if !pointwise || !c2.contains(&img)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion(t: &Arc<FieldTower>, a: &RankMetricCode, b: &RankMetricCode) -> Value {
    let (Family::DFamily { k, s, gamma }, Family::DFamily { k: k2, s: t2, gamma: theta }) = (a.family(), b.family())
    else {
        return Value::Null;
    };
    if k != k2 {
        return json!({ "applies": false, "reason": "different k" });
    }
    let verdict = if t.n() == 2 && *k == 2 {
        binomial_criterion(t, *s, *t2, *gamma, *theta).map(|v| ("binomial", v))
    } else {
        monomial_criterion(t, *k, *s, *t2, *gamma, *theta).map(|v| ("monomial", v))
    };
    match verdict {
        Ok((kind, v)) => json!({ "applies": true, "kind": kind, "verdict": v }),
        Err(e) => json!({ "applies": false, "reason": e.to_string() }),
    }
}

fn equiv(cli: &Cli, t: &Arc<FieldTower>, left: Option<&CodeSpec>, right: Option<&CodeSpec>) -> Run {
    let budget = cli.budget()?;
    let (ls, rs) = match (left, right) {
        (Some(l), Some(r)) => (l.clone(), r.clone()),
        (None, None) => {
            let l = cli.code_spec()?;
            let r = match &l {
                CodeSpec::D { k, s, gamma } => CodeSpec::D {
                    k: *k,
                    s: cli.t.unwrap_or(*s),
                    gamma: cli.theta.clone().unwrap_or_else(|| gamma.clone()),
                },
                other => other.clone(),
            };
            (l, r)
        }
        _ => return Err(CliError::Usage("give both --left and --right, or neither".into())),
    };
    let (c1, c2) = (ls.build(t)?, rs.build(t)?);
    let cert = search(cli.shape, &c1, &c2, budget)?;
    if cli.oracle {
        if let Some(w) = &cert.witness {
            if !pointwise_witness_check(t, w, &c1, &c2)? {
                return Err(oracle_failed("witness fails pointwise"));
            }
        }
    }
    let crit = criterion(t, &c1, &c2);
    let agrees = crit["verdict"]["holds"]
        .as_bool()
        .filter(|_| cert.verdict != Verdict::Inconclusive && cli.shape == ShapeArg::All)
        .map(|h| h == (cert.verdict == Verdict::Equivalent));
    let shape = format!("{:?}", cli.shape).to_lowercase();
    let inputs = json!({ "left": ls.label(), "right": rs.label(), "shape": shape, "budget": budget });
    let outputs = json!({ "certificate": cert, "criterion": crit, "criterion_agrees": agrees });
    let mut table = vec![
        row("left", ls.label()),
        row("right", rs.label()),
        row("verdict", format!("{:?}", cert.verdict).to_lowercase()),
        row("shapes exhausted", cert.shapes_exhausted.join(", ")),
    ];
    if let Some(w) = &cert.witness {
        table.push(row("phi1", &w.phi1));
        table.push(row("phi2", &w.phi2));
        table.push(row("rho", w.rho));
    }
    if let Some(h) = crit["verdict"]["holds"].as_bool() {
        table.push(row("criterion holds", h));
    }
    Ok(output("equiv", t, inputs, outputs, table))
}

fn auto(cli: &Cli, t: &Arc<FieldTower>) -> Run {
    let (spec, code) = the_code(cli, t)?;
    let budget = cli.budget()?;
    let mut maps = match cli.shape {
        ShapeArg::Monomial => automorphisms(&code, SearchShape::Monomial, budget)?,
        ShapeArg::Binomial => automorphisms(&code, SearchShape::Binomial, budget)?,
        ShapeArg::All => {
            let mut all = automorphisms(&code, SearchShape::Monomial, budget)?;
            let seen: HashSet<EquivalenceMap> = all.iter().cloned().collect();
            all.extend(automorphisms(&code, SearchShape::Binomial, budget)?.into_iter().filter(|m| !seen.contains(m)));
            all
        }
    };
    maps.sort_by_key(|m| (m.rho, m.phi1.coeffs().to_vec(), m.phi2.coeffs().to_vec()));
    if cli.oracle {
        if !maps.iter().all(|m| verify_map(m, &code, &code)) {
            return Err(oracle_failed("automorphism fails verification"));
        }
        let set: HashSet<&EquivalenceMap> = maps.iter().collect();
        let step = (maps.len() / 16).max(1);
        for a in maps.iter().step_by(step) {
            for b in maps.iter().step_by(step) {
                let ab = a.then(b)?;
                if cli.shape == ShapeArg::All && ab.phi1.support().len() <= 2 && !set.contains(&ab) {
                    return Err(oracle_failed("automorphisms not closed under composition"));
                }
            }
        }
    }
    let monomial = maps
        .iter()
        .filter(|m| m.phi1.support().len() == 1 && m.phi2.support().len() == 1)
        .count();
    let shape = format!("{:?}", cli.shape).to_lowercase();
    let outputs = json!({ "count": maps.len(), "monomial_count": monomial, "maps": maps });
    let table = vec![
        row("code", spec.label()),
        row("shape", &shape),
        row("automorphisms", maps.len()),
        row("monomial", monomial),
    ];
    Ok(output("auto", t, json!({ "code": spec.label(), "shape": shape, "budget": budget }), outputs, table))
}
