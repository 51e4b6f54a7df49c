use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use polardeg::foliation::{
    associated_foliation, e_degree, foliation_from_form, logarithmic_form, singular_scheme_degree_p2, LogFoliation,
};
use polardeg::groebner::{GroebnerConfig, MAX_PAIRS_ENV};
use polardeg::parser::{parse_poly, parse_weights};
use polardeg::polar::{map_degree, polar_map, weighted_polar_map, DegreeOptions, RationalMapRep, WeightedFunction};
use polardeg::report::{emit_report, DegreeReport, JsonReport, ReportInput, Status};
use polardeg::verify::{
    corpus, run_dolgachev_suite, run_resonance_example, verify_corollary_deg, verify_gauss_theorem, verify_invariance,
    verify_polar_relation, verify_product_bound, verify_resonance_singular_degree, VerificationOutcome,
};
use polardeg::{Error, Field, FieldSpec, HomogeneousForm, MultiPoly, PrimeField, Rationals, Result};

use crate::{Command, Common, FoliationArgs, FoliationKind, GaussArgs, Input, PolarArgs, Suite, VerifyArgs};

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Runs a command, returning its output and exit code.
pub fn run(command: Command) -> (String, u8) {
    match command {
        Command::Polar(a) => finish("polar", &a.input, &a.common, polar(&a)),
        Command::Gauss(a) => finish("gauss", &a.input, &a.common, gauss(&a)),
        Command::Foliation(a) => finish("foliation", &a.input, &a.common, foliation(&a)),
        Command::Verify(a) => finish("verify", &a.input, &a.common, verify(&a)),
    }
}

fn finish(command: &str, input: &Input, common: &Common, r: Result<(String, u8)>) -> (String, u8) {
    match r {
        Ok(out) => out,
        Err(e) => {
            let code = exit_code(&e);
            let text = if common.json {
                let field = FieldSpec::PrimeField { prime: common.prime };
                format!("{}\n", emit_report(&JsonReport::error(command, report_input(input), field, e.to_string())))
            } else {
                format!("error: {e}\n")
            };
            (text, code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::MalformedRational(_)
        | Error::ZeroWeight { .. }
        | Error::VarOutOfRange { .. }
        | Error::TooManyVariables(..)
        | Error::NoFactors
        | Error::WeightCount { .. }
        | Error::NotPrime(_)
        | Error::ModulusTooSmall(_)
        | Error::ModulusTooLarge(_)
        | Error::InvalidLevel { .. }
        | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn options(common: &Common) -> Result<(PrimeField, DegreeOptions)> {
    let spec = FieldSpec::sampling_prime(common.prime)?;
    let field = PrimeField::from_spec(spec)?;
    let mut groebner = GroebnerConfig::default();
    if let Ok(v) = std::env::var(MAX_PAIRS_ENV) {
        groebner.max_pairs = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{MAX_PAIRS_ENV} must be a nonnegative integer, got {v:?}")))?;
    }
    if common.trials == 0 {
        return Err(Error::InvalidArgument("--trials must be at least 1".into()));
    }
    let opts = DegreeOptions { trials: common.trials, retries: common.retries, seed: common.seed, groebner, parallel: true };
    Ok((field, opts))
}

fn report_input(input: &Input) -> ReportInput {
    let weights = match &input.weights {
        Some(w) => w.split(',').map(|s| s.trim().to_string()).collect(),
        None => vec!["1".to_string(); input.polys.len()],
    };
    ReportInput { polys: input.polys.clone(), weights, nvars: input.nvars.unwrap_or_else(|| infer_nvars(&input.polys)) }
}

/// One more than the largest `x<k>` index mentioned.
fn infer_nvars(polys: &[String]) -> usize {
    let mut top = 0;
    for p in polys {
        let bytes = p.as_bytes();
        let mut at = 0;
        while at < bytes.len() {
            if bytes[at] == b'x' {
                let start = at + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if let Ok(k) = p[start..end].parse::<usize>() {
                    top = top.max(k + 1);
                }
                at = end.max(at + 1);
            } else {
                at += 1;
            }
        }
    }
    top
}

struct Parsed {
    polys: Vec<MultiPoly<Rationals>>,
    weights: Option<Vec<BigRational>>,
}

fn parse_input(input: &Input) -> Result<Parsed> {
    if input.polys.is_empty() {
        return Err(Error::NoFactors);
    }
    let nvars = input.nvars.unwrap_or_else(|| infer_nvars(&input.polys));
    if nvars < 2 {
        return Err(Error::InvalidArgument("at least two variables are needed; pass --nvars".into()));
    }
    let polys = input.polys.iter().map(|s| parse_poly(s, nvars, &Rationals)).collect::<Result<Vec<_>>>()?;
    let weights = input.weights.as_deref().map(parse_weights).transpose()?;
    Ok(Parsed { polys, weights })
}

fn weighted(parsed: &Parsed) -> Result<WeightedFunction<Rationals>> {
    let weights = parsed.weights.clone().unwrap_or_else(|| vec![BigRational::one(); parsed.polys.len()]);
    WeightedFunction::new(parsed.polys.clone(), weights)
}

fn trial_list(r: &DegreeReport) -> String {
    r.trials
        .iter()
        .map(|t| match (t.accepted(), t.value) {
            (true, Some(v)) => v.to_string(),
            _ => "-".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_line(name: &str, r: &DegreeReport) -> String {
    let value = r.value.map_or("?".to_string(), |v| v.to_string());
    let stability = if r.stable { "stable" } else { "unstable" };
    format!("{name} = {value}  [{stability}; trials {}]\n", trial_list(r))
}

type InvarianceInstance = (Vec<MultiPoly<PrimeField>>, Vec<Vec<BigRational>>);

#[allow(clippy::too_many_arguments)]
fn degree_output(
    command: &str,
    input: &Input,
    common: &Common,
    field: &PrimeField,
    reports: &[DegreeReport],
    single: bool,
    name: impl Fn(usize) -> String,
    header: String,
) -> (String, u8) {
    let spec = field.spec();
    let mut json = if single {
        JsonReport::single(command, report_input(input), spec, &reports[0])
    } else {
        JsonReport::profile(command, report_input(input), spec, reports)
    };
    if json.status == Status::Ok && reports.iter().any(|r| r.value == Some(0)) {
        json.message = Some("the map is not dominant onto the generic linear section: empty generic fiber".into());
    }
    let code = if json.status == Status::Ok { EXIT_OK } else { EXIT_FAILURE };
    if common.json {
        return (format!("{}\n", emit_report(&json)), code);
    }
    let mut text = header;
    for r in reports {
        text.push_str(&report_line(&name(r.i), r));
    }
    if let Some(m) = &json.message {
        text.push_str(&format!("note: {m}\n"));
    }
    (text, code)
}

fn polar(a: &PolarArgs) -> Result<(String, u8)> {
    let (field, opts) = options(&a.common)?;
    let parsed = parse_input(&a.input)?;
    let map: RationalMapRep<PrimeField> = if parsed.polys.len() == 1 && parsed.weights.is_none() {
        polar_map(&HomogeneousForm::new(parsed.polys[0].reduce_mod(&field)?)?)?
    } else {
        let weights = parsed.weights.clone().unwrap_or_else(|| vec![BigRational::one(); parsed.polys.len()]);
        if WeightedFunction::new_unchecked(parsed.polys.clone(), weights)?.total_degree().is_zero() {
            return Err(Error::ZeroTotalDegree);
        }
        weighted_polar_map(&weighted(&parsed)?.reduce_mod(&field)?)?
    };
    let n = map.source_dim();
    let levels: Vec<usize> = match a.i {
        Some(i) => vec![i],
        None => (0..n).collect(),
    };
    let reports = levels.iter().map(|&i| map_degree(&map, i, &opts)).collect::<Result<Vec<_>>>()?;
    let header = format!("polar map of P^{n}, components of degree {}\n", map.degree());
    Ok(degree_output("polar", &a.input, &a.common, &field, &reports, a.i.is_some(), |i| format!("deg_{i}"), header))
}

fn build_foliation(parsed: &Parsed, kind: FoliationKind) -> Result<LogFoliation<Rationals>> {
    let w = weighted(parsed)?;
    match kind {
        FoliationKind::Associated => associated_foliation(&w),
        FoliationKind::Log => foliation_from_form(&logarithmic_form(&w)?),
    }
}

fn gauss(a: &GaussArgs) -> Result<(String, u8)> {
    let (field, opts) = options(&a.common)?;
    let fol = build_foliation(&parse_input(&a.input)?, a.foliation_from)?.reduce_mod(&field)?;
    let n = fol.ambient_dim();
    let k = a.k.unwrap_or(n);
    if k < 1 || k > n {
        return Err(Error::InvalidLevel { level: k as i64, range: format!("1..={n}") });
    }
    let levels: Vec<usize> = match a.i {
        Some(i) => vec![i],
        None => (0..k).collect(),
    };
    let reports = levels.iter().map(|&i| e_degree(&fol, k, i, &opts)).collect::<Result<Vec<_>>>()?;
    let header = format!("foliation of P^{n} of degree {}, restricted to a generic P^{k}\n", fol.degree());
    Ok(degree_output("gauss", &a.input, &a.common, &field, &reports, a.i.is_some(), |i| format!("e_{i}^{k}"), header))
}

fn foliation(a: &FoliationArgs) -> Result<(String, u8)> {
    let (field, opts) = options(&a.common)?;
    let fol = build_foliation(&parse_input(&a.input)?, a.from)?;
    let sing = if a.sing_degree {
        Some(singular_scheme_degree_p2(&fol.reduce_mod(&field)?, opts.seed, &opts.groebner)?)
    } else {
        None
    };
    let coeffs: Vec<String> = fol.coeffs().iter().map(|c| c.poly().to_string()).collect();
    if a.common.json {
        let mut doc = json!({
            "command": "foliation",
            "input": report_input(&a.input),
            "field": field.spec(),
            "ambient_dim": fol.ambient_dim(),
            "degree": fol.degree(),
            "coefficients": coeffs,
            "integrable": fol.is_integrable(),
        });
        if let Some(s) = sing {
            doc["sing_degree"] = json!(s);
        }
        doc["status"] = json!("ok");
        return Ok((format!("{doc}\n"), EXIT_OK));
    }
    let mut text = format!("foliation of P^{} of degree {}\n", fol.ambient_dim(), fol.degree());
    for (i, c) in coeffs.iter().enumerate() {
        text.push_str(&format!("a_{i} = {c}\n"));
    }
    text.push_str(&format!("integrable: {}\n", if fol.is_integrable() { "yes" } else { "no" }));
    if let Some(s) = sing {
        text.push_str(&format!("singular scheme degree = {s}\n"));
    }
    Ok((text, EXIT_OK))
}

fn user_weighted(a: &VerifyArgs, field: &PrimeField) -> Result<Option<WeightedFunction<PrimeField>>> {
    if a.input.polys.is_empty() {
        return Ok(None);
    }
    Ok(Some(weighted(&parse_input(&a.input)?)?.reduce_mod(field)?))
}

fn plane_corpus(field: &PrimeField) -> Result<Vec<WeightedFunction<PrimeField>>> {
    [corpus::CONIC, corpus::TRIANGLE, corpus::FERMAT_CUBIC, corpus::FERMAT_QUARTIC]
        .iter()
        .map(|e| e.build_mod(field))
        .collect()
}

fn levels(requested: Option<usize>, n: usize) -> Vec<usize> {
    match requested {
        Some(i) => vec![i],
        None => (0..n).collect(),
    }
}

fn verify(a: &VerifyArgs) -> Result<(String, u8)> {
    let (field, opts) = options(&a.common)?;
    let mut outcomes: Vec<VerificationOutcome> = Vec::new();
    match a.suite {
        Suite::Dolgachev => outcomes = run_dolgachev_suite(&field, &opts)?,
        Suite::GaussTheorem => {
            let fols = if a.input.polys.is_empty() {
                corpus::gauss_foliations()
                    .iter()
                    .map(|e| associated_foliation(&e.build()?)?.reduce_mod(&field))
                    .collect::<Result<Vec<_>>>()?
            } else {
                vec![build_foliation(&parse_input(&a.input)?, FoliationKind::Associated)?.reduce_mod(&field)?]
            };
            for fol in &fols {
                let n = fol.ambient_dim();
                let ks: Vec<usize> = match a.k {
                    Some(k) => vec![k],
                    None => (2..=n.min(4)).collect(),
                };
                for k in ks {
                    let is: Vec<usize> = match a.i {
                        Some(i) => vec![i],
                        None => (1..k).collect(),
                    };
                    for i in is {
                        outcomes.push(verify_gauss_theorem(fol, k, i, &opts)?);
                    }
                }
            }
        }
        Suite::PolarRelation | Suite::CorollaryDeg => {
            let ws = match user_weighted(a, &field)? {
                Some(w) => vec![w],
                None => plane_corpus(&field)?,
            };
            for w in &ws {
                for i in levels(a.i, w.nvars() - 1) {
                    outcomes.push(if a.suite == Suite::PolarRelation {
                        verify_polar_relation(w, i, &opts)?
                    } else {
                        verify_corollary_deg(w, i, &opts)?
                    });
                }
            }
        }
        Suite::Invariance => {
            let instances: Vec<InvarianceInstance> = if a.input.polys.is_empty() {
                corpus::invariance()
                    .iter()
                    .map(|(e, sets)| Ok((e.factors_mod(&field)?, sets.iter().map(|s| parse_weights(s)).collect::<Result<_>>()?)))
                    .collect::<Result<_>>()?
            } else {
                if a.weight_sets.is_empty() {
                    return Err(Error::InvalidArgument("invariance needs at least one --weight-set".into()));
                }
                let polys = parse_input(&a.input)?.polys.iter().map(|p| p.reduce_mod(&field)).collect::<Result<_>>()?;
                let sets = a.weight_sets.iter().map(|s| parse_weights(s)).collect::<Result<_>>()?;
                vec![(polys, sets)]
            };
            for (polys, sets) in &instances {
                outcomes.push(verify_invariance(polys, sets, &opts, a.allow_unverified)?);
            }
        }
        Suite::ProductBound => {
            let pairs: Vec<(MultiPoly<PrimeField>, MultiPoly<PrimeField>)> = if a.input.polys.is_empty() {
                corpus::product_pairs()
                    .iter()
                    .map(|(x, y)| Ok((parse_poly(x, 3, &field)?, parse_poly(y, 3, &field)?)))
                    .collect::<Result<_>>()?
            } else {
                let parsed = parse_input(&a.input)?;
                if parsed.polys.len() != 2 {
                    return Err(Error::InvalidArgument("product-bound takes exactly two --poly".into()));
                }
                vec![(parsed.polys[0].reduce_mod(&field)?, parsed.polys[1].reduce_mod(&field)?)]
            };
            for (f1, f2) in &pairs {
                outcomes.push(verify_product_bound(f1, f2, &opts)?);
            }
        }
        Suite::Resonance => {
            let ks: Vec<usize> = match a.k {
                Some(k) => vec![k],
                None => vec![2, 3, 4],
            };
            for &k in &ks {
                outcomes.push(run_resonance_example(&field, k, &opts)?);
            }
            for &k in ks.iter().filter(|&&k| k <= 3) {
                outcomes.push(verify_resonance_singular_degree(&field, k, &opts)?);
            }
        }
    }
    let all_pass = !outcomes.is_empty() && outcomes.iter().all(|o| o.pass);
    let code = if all_pass { EXIT_OK } else { EXIT_FAILURE };
    let suite = a.suite.to_possible_value().expect("suite names are visible").get_name().to_string();
    if a.common.json {
        let doc = json!({
            "command": "verify",
            "suite": suite,
            "field": field.spec(),
            "outcomes": outcomes,
            "pass": all_pass,
            "status": if all_pass { "ok" } else { "error" },
        });
        return Ok((format!("{doc}\n"), code));
    }
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.summary());
        text.push('\n');
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    text.push_str(&format!("{suite}: {passed}/{} passed\n", outcomes.len()));
    Ok((text, code))
}
