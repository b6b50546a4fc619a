use std::path::Path;

use linfrac::certify::{
    certify_period, classify_map, period4k_map, ClassifyLimits, CertifyOutcome, Periodicity,
};
use linfrac::lyinv::{build_invariants, integrals, vanishing_orders, verify_relations, LynessSystem};
use linfrac::orbits::find_nstar;
use linfrac::picaction::{
    closed_form_charpoly, generic_model, growth_classification, lyness_model, model_matrix, nstar_model,
    predicted_degree_sequence, spectral_radius, critical_model, GrowthClass, IntPoly, Model, PicMatrix,
};
use linfrac::recmap::{degree_sequence, Direction, ParamFile};
use linfrac::{RecurrenceMap, Scalar};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::{join, to_value, Context, Failure, Outcome, Run, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED};
use crate::{Family, LynessAction};

fn load_params(path: &Path) -> Result<(ParamFile, RecurrenceMap), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let file = ParamFile::parse(&text)?;
    let map = file.build().map_err(|e| Failure::input(e.to_string()))?;
    Ok((file, map))
}

/// A JSON integer when it fits, a decimal string otherwise.
fn big_json(v: &BigInt) -> Value {
    i64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn params_input(file: &ParamFile) -> Value {
    to_value(file)
}

/// Phi_d factors times the non-cyclotomic cofactor.
fn factored(p: &IntPoly) -> String {
    let (cyc, rest) = p.strip_cyclotomic();
    let mut parts: Vec<String> = cyc
        .iter()
        .map(|&(d, e)| if e == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{e}") })
        .collect();
    if rest.degree() > 0 || rest.coeffs().first().map_or(false, |c| *c != 1.into()) {
        parts.push(format!("({rest})"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn exit_for(outcome: &CertifyOutcome) -> u8 {
    match outcome {
        CertifyOutcome::Certified(_) => EXIT_OK,
        CertifyOutcome::Refuted(_) | CertifyOutcome::NotMinimal { .. } => EXIT_REFUTED,
        CertifyOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

pub fn charpoly(ctx: &Context, model_name: &str, k: usize, nstar: Option<usize>) -> Outcome {
    let model = Model::parse(model_name, nstar)?;
    let pic = model_matrix(model, k)?;
    let computed = pic.charpoly();
    let closed = closed_form_charpoly(model, k)?;
    let equal = computed.sign_normalized() == closed.sign_normalized();
    let radius = spectral_radius(&computed, ctx.precision)?;
    let growth = growth_classification(&pic)?;
    let interval = radius.interval.as_ref().map(|(a, b)| format!("[{a}, {b}]")).unwrap_or_else(|| "-".into());
    let result = json!({
        "model": model.to_string(),
        "k": k,
        "basis": pic.basis.labels(),
        "matrix": pic.matrix,
        "charpoly": computed.to_string(),
        "closed_form": closed.to_string(),
        "factored": factored(&computed),
        "equal": equal,
        "spectral_radius": to_value(&radius),
        "growth": to_value(&growth),
    });
    let matrix_text = pic.matrix.iter().map(|r| join(r)).collect::<Vec<_>>().join("\n");
    let run = Run::new(ctx, "charpoly", "Z".into(), json!({"model": model_name, "k": k, "nstar": nstar}), result)
        .row("model", model)
        .row("basis", join(pic.basis.labels()))
        .row("matrix", matrix_text)
        .row("charpoly", &computed)
        .row("closed form", &closed)
        .row("factored", factored(&computed))
        .row("equal", equal)
        .row("spectral radius", &radius.decimal)
        .row("interval", interval)
        .row("growth", growth_name(&growth));
    Ok(if equal { run } else { run.with_exit(EXIT_INCONCLUSIVE) })
}

fn growth_name(g: &GrowthClass) -> String {
    match g {
        GrowthClass::Exponential { radius } => format!("exponential ({:.6})", radius.value),
        GrowthClass::Polynomial { degree: 1 } => "linear".into(),
        GrowthClass::Polynomial { degree: 2 } => "quadratic".into(),
        GrowthClass::Polynomial { degree } => format!("polynomial of degree {degree}"),
        GrowthClass::Bounded { order: Some(n) } => format!("bounded (order {n})"),
        GrowthClass::Bounded { order: None } => "bounded".into(),
    }
}

pub fn classify(ctx: &Context, path: &Path, max: Option<usize>, trials: usize, certify: bool) -> Outcome {
    let (file, m) = load_params(path)?;
    let limits = ClassifyLimits { nstar_max: max, certify, trials, degree_steps: None };
    let r = classify_map(&m, &limits, ctx.seed)?;
    let mut run = Run::new(ctx, "classify", m.field().to_string(), params_input(&file), to_value(&r))
        .row("k", r.k)
        .row("generic", r.generic)
        .row("critical", r.critical)
        .row("triangle", format!("{:?}", r.triangle))
        .row("j*", r.j_star)
        .row("lyness", r.lyness);
    if let Some(ns) = &r.nstar {
        run = run.row("n*", ns.n_star.map_or("not reached".to_string(), |n| n.to_string()));
    }
    if let Some(p) = r.predicted_period {
        run = run.row("predicted period", p);
    }
    if let Some(d) = r.dynamical_degree {
        run = run.row("dynamical degree", format!("{d:.10}"));
    }
    if let (Some(p), Some(mn)) = (r.delta_plus, r.delta_minus) {
        run = run.row("delta+ / delta-", format!("{p:.10} / {mn:.10}"));
    }
    if let Some(g) = &r.growth {
        run = run.row("growth", growth_name(g));
    }
    run = run.row("degrees", join(&r.degrees));
    if let Some(c) = &r.certificate {
        run = run.row("certificate", format!("{} (period {})", c.verdict(), c.period()));
    }
    Ok(run.row("verdict", &r.verdict))
}

/// The model whose H-coefficients should match the measured degrees.
fn degree_model(m: &RecurrenceMap, seed: u64) -> Result<Option<(String, PicMatrix)>, Failure> {
    let k = m.k();
    if !m.is_critical() {
        return Ok(if m.is_generic() { Some((Model::GenericForward.to_string(), generic_model(k)?)) } else { None });
    }
    let ns = find_nstar(m, None, seed)?;
    Ok(Some(match ns.n_star {
        Some(n) if n + 1 >= k => (Model::NStar(n).to_string(), nstar_model(k, n)?),
        _ if linfrac::certify::lyness_parameter(m).is_some() => (Model::Lyness.to_string(), lyness_model(k)?),
        _ => (Model::Critical.to_string(), critical_model(k)?),
    }))
}

pub fn degseq(ctx: &Context, path: &Path, n: usize) -> Outcome {
    let (file, m) = load_params(path)?;
    let empirical = degree_sequence(&m, Direction::Forward, n, ctx.seed)?;
    let model = degree_model(&m, ctx.seed)?;
    let predicted: Option<Vec<BigInt>> = model.as_ref().map(|(_, pic)| predicted_degree_sequence(pic, n));
    let matches = predicted.as_ref().map(|p| p.iter().zip(&empirical).all(|(a, b)| *a == BigInt::from(*b)));
    let verdict = match matches {
        Some(true) => "match",
        Some(false) => "mismatch",
        None => "no model",
    };
    let mut table = vec![format!("{:>3}  {:>12}  {:>12}", "n", "empirical", "predicted")];
    for (i, d) in empirical.iter().enumerate() {
        let p = predicted.as_ref().map_or("-".to_string(), |p| p[i].to_string());
        table.push(format!("{i:>3}  {d:>12}  {p:>12}"));
    }
    let result = json!({
        "n": n,
        "model": model.as_ref().map(|(name, _)| name.clone()),
        "empirical": empirical,
        "predicted": predicted.as_ref().map(|p| p.iter().map(big_json).collect::<Vec<_>>()),
        "verdict": verdict,
    });
    Ok(Run::new(ctx, "degseq", m.field().to_string(), json!({"params": params_input(&file), "n": n}), result)
        .row("model", model.as_ref().map_or("-".to_string(), |(name, _)| name.clone()))
        .row("degrees", table.join("\n"))
        .row("verdict", verdict))
}

pub fn lyness(ctx: &Context, k: usize, a: Option<&str>, action: LynessAction, trials: usize) -> Outcome {
    let a: Option<Scalar> = a.map(|s| s.parse()).transpose()?;
    let inputs = json!({"k": k, "a": a.as_ref().map(|v| v.to_string()), "action": format!("{action:?}").to_lowercase(), "trials": trials});
    let sys = match &a {
        Some(v) => LynessSystem::numeric(k, v.clone())?,
        None => LynessSystem::symbolic(k)?,
    };
    let need_a = || Failure::input("this action needs a numeric --a");
    match action {
        LynessAction::Certify => {
            let m = sys.map().map_err(|_| need_a())?;
            let limits = ClassifyLimits { trials, ..Default::default() };
            let r = classify_map(&m, &limits, ctx.seed)?;
            let exit = r.certificate.as_ref().map_or(EXIT_OK, exit_for);
            let period = match r.verdict {
                Periodicity::Periodic { period } => Some(period),
                _ => None,
            };
            let result = json!({
                "verdict": r.verdict.to_string(),
                "period": period,
                "candidate_period": r.candidate_period,
                "degrees": r.degrees,
                "degrees_match_model": r.degrees_match_model,
                "certificate": r.certificate.as_ref().map(|c| c.summary(ctx.seed)),
            });
            Ok(Run::new(ctx, "lyness", m.field().to_string(), inputs, result)
                .row("degrees", join(&r.degrees))
                .row("verdict", &r.verdict)
                .with_exit(exit))
        }
        LynessAction::Invariants => {
            let set = build_invariants(&sys)?;
            let vanishing = if a.is_some() { Some(vanishing_orders(&set, ctx.seed)?) } else { None };
            let mut run = Run::new(
                ctx,
                "lyness",
                "Q".into(),
                inputs,
                json!({"invariants": to_value(&set), "vanishing": vanishing.as_ref().map(to_value)}),
            );
            for inv in &set.members {
                run = run.row(
                    inv.name.clone(),
                    format!("degree {}, verified {}\n{}", inv.degree, inv.verified, inv.text.affine),
                );
            }
            if let Some(v) = &vanishing {
                run = run.row("vanishing bounds", v.iter().all(|r| r.meets_bounds(k)));
            }
            Ok(run)
        }
        LynessAction::Relations => {
            let checks = verify_relations(&sys)?;
            let mut run = Run::new(ctx, "lyness", "Q".into(), inputs, json!({"checks": to_value(&checks)}));
            for c in &checks {
                run = run.row(c.identity.clone(), c.holds);
            }
            Ok(run)
        }
        LynessAction::Integrals => {
            let m = sys.map().map_err(|_| need_a())?;
            let set = build_invariants(&sys)?;
            let checks = integrals(&set, &m, trials, ctx.seed)?;
            let all = checks.iter().all(|c| c.holds);
            let mut run = Run::new(ctx, "lyness", "Q".into(), inputs, json!({"checks": to_value(&checks), "holds": all}));
            for c in &checks {
                run = run.row(format!("{} / {}", c.numerator, c.denominator), format!("{}/{} points", c.passed, c.trials));
            }
            Ok(if all { run } else { run.with_exit(EXIT_INCONCLUSIVE) })
        }
    }
}

pub fn certify(
    ctx: &Context,
    params: Option<&Path>,
    family: Option<Family>,
    k: Option<usize>,
    period: Option<usize>,
    trials: usize,
) -> Outcome {
    let (inputs, m, family_period) = match (params, family) {
        (Some(path), _) => {
            let (file, m) = load_params(path)?;
            (json!({"params": params_input(&file)}), m, None)
        }
        (None, Some(Family::Period4k)) => {
            let k = k.ok_or_else(|| Failure::input("--family period4k needs --k"))?;
            let m = period4k_map(k)?;
            (json!({"family": "period4k", "k": k, "params": params_input(&ParamFile::from_map(&m))}), m, Some(4 * k))
        }
        (None, None) => return Err(Failure::input("give --params or --family")),
    };
    let p = match period.or(family_period) {
        Some(p) => p,
        None => {
            let limits = ClassifyLimits { certify: false, ..Default::default() };
            let r = classify_map(&m, &limits, ctx.seed)?;
            r.predicted_period.or(r.candidate_period).ok_or_else(|| Failure {
                code: EXIT_INCONCLUSIVE,
                message: "no period predicted or measured; pass --period".into(),
            })?
        }
    };
    let outcome = certify_period(&m, p, trials, ctx.seed)?;
    let mut result = outcome.summary(ctx.seed);
    result["certificate"] = to_value(&outcome);
    let inputs = {
        let mut v = inputs;
        v["period"] = json!(p);
        v["trials"] = json!(trials);
        v
    };
    Ok(Run::new(ctx, "certify", m.field().to_string(), inputs, result)
        .row("period", p)
        .row("verdict", outcome.verdict())
        .with_exit(exit_for(&outcome)))
}

pub fn nstar(ctx: &Context, path: &Path, max: Option<usize>) -> Outcome {
    let (file, m) = load_params(path)?;
    let r = find_nstar(&m, max, ctx.seed)?;
    let predicted = r.n_star.and_then(|n| linfrac::certify::predicted_period(m.k(), n));
    let mut result = to_value(&r);
    result["predicted_period"] = json!(predicted);
    let mut run = Run::new(ctx, "nstar", m.field().to_string(), json!({"params": params_input(&file), "max": max}), result)
        .row("found", r.found)
        .row("n*", r.n_star.map_or("-".to_string(), |n| n.to_string()));
    if let Some(reason) = &r.reason {
        run = run.row("stopped", format!("{reason:?}"));
    }
    if let Some(p) = predicted {
        run = run.row("predicted period", p);
    }
    Ok(run)
}
