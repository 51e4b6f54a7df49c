//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! throughout. Runs without the libtest harness so the lines always show.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use polardeg::foliation::{associated_foliation, foliation_from_form, is_integrable, logarithmic_form};
use polardeg::groebner::{groebner, quotient_dimension, GroebnerBasis, Ideal};
use polardeg::parser::{parse_poly, parse_weights};
use polardeg::polar::{map_degree, polar_degrees_profile, polar_map, DegreeOptions, WeightedFunction};
use polardeg::random::derive_seed;
use polardeg::verify::{
    corpus, run_dolgachev_suite, run_resonance_example, verify_corollary_deg, verify_gauss_shift, verify_gauss_theorem,
    verify_invariance, verify_polar_relation, verify_product_bound, verify_resonance_singular_degree, VerificationOutcome,
};
use polardeg::{euler_contraction, Field, HomogeneousForm, Monomial, MonomialOrder, MultiPoly, PrimeField, Rationals, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SECOND_PRIME: u64 = 1_000_000_007;

/// Degree values produced by a criterion, labeled, plus its verdict.
struct Evidence {
    pass: bool,
    values: Vec<(String, Vec<Option<u64>>)>,
    failures: Vec<String>,
}

impl Evidence {
    fn new() -> Self {
        Evidence { pass: true, values: Vec::new(), failures: Vec::new() }
    }

    fn outcome(&mut self, o: &VerificationOutcome) {
        let mut vals = o.left.clone();
        vals.extend(&o.right);
        self.values.push((format!("{} {}", o.claim, o.instance), vals));
        if !o.pass {
            self.fail(o.summary());
        }
    }

    fn check(&mut self, label: &str, vals: Vec<Option<u64>>, expected: Vec<u64>) {
        let ok = vals == expected.iter().map(|&v| Some(v)).collect::<Vec<_>>();
        if !ok {
            self.fail(format!("{label}: got {vals:?}, expected {expected:?}"));
        }
        self.values.push((label.to_string(), vals));
    }

    fn fail(&mut self, why: String) {
        self.pass = false;
        self.failures.push(why);
    }

    fn absorb(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.fail(format!("error: {e}"));
        }
    }
}

fn opts() -> DegreeOptions {
    DegreeOptions::default()
}

fn stable_profile(w: &WeightedFunction<PrimeField>) -> Result<Vec<Option<u64>>> {
    Ok(polar_degrees_profile(w, &opts())?.iter().map(|r| r.stable_value()).collect())
}

fn criterion_1(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = run_dolgachev_suite(field, &opts()).map(|outs| {
        for o in &outs {
            ev.outcome(o);
        }
    });
    ev.absorb(r);
    ev
}

fn criterion_2(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        for d in 2..=4u64 {
            let f = parse_poly(&format!("x0^{d} + x1^{d} + x2^{d}"), 3, field)?;
            let prof = stable_profile(&WeightedFunction::single(f)?)?;
            ev.check(&format!("Fermat degree {d} profile"), prof, vec![(d - 1) * (d - 1), d - 1]);
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn criterion_3(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        for (entry, sets) in corpus::invariance() {
            let factors = entry.factors_mod(field)?;
            let sets: Vec<Vec<BigRational>> = sets.iter().map(|s| parse_weights(s)).collect::<Result<_>>()?;
            let o = verify_invariance(&factors, &sets, &opts(), false)?;
            ev.outcome(&o);
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn criterion_4(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        let mut ambients = Vec::new();
        for entry in corpus::gauss_foliations() {
            let fol = associated_foliation(&entry.build()?)?.reduce_mod(field)?;
            let n = fol.ambient_dim();
            ambients.push(n);
            for k in 2..=n.min(4) {
                for i in 1..k {
                    ev.outcome(&verify_gauss_theorem(&fol, k, i, &opts())?);
                }
            }
            for k in 3..=n.min(4) {
                for i in 2..k {
                    for s in 1..i.min(k - 1) {
                        ev.outcome(&verify_gauss_shift(&fol, k, i, s, &opts())?);
                    }
                }
            }
        }
        if ambients.iter().filter(|&&n| n == 3 || n == 4).count() < 3 {
            ev.fail("fewer than three foliations in P^3 or P^4".into());
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn criterion_5(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        for entry in [corpus::CONIC, corpus::TRIANGLE, corpus::FERMAT_CUBIC, corpus::FERMAT_QUARTIC] {
            let w = entry.build_mod(field)?;
            for i in 0..w.nvars() - 1 {
                ev.outcome(&verify_polar_relation(&w, i, &opts())?);
                ev.outcome(&verify_corollary_deg(&w, i, &opts())?);
            }
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn criterion_6(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        for k in 2..=4 {
            ev.outcome(&run_resonance_example(field, k, &opts())?);
        }
        for k in 2..=3 {
            ev.outcome(&verify_resonance_singular_degree(field, k, &opts())?);
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn criterion_7(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let r = (|| {
        let pairs = corpus::product_pairs();
        if pairs.len() < 5 {
            ev.fail("fewer than five pairs".into());
        }
        for (a, b) in pairs {
            let o = verify_product_bound(&parse_poly(a, 3, field)?, &parse_poly(b, 3, field)?, &opts())?;
            ev.outcome(&o);
        }
        Ok(())
    })();
    ev.absorb(r);
    ev
}

fn random_form(field: &PrimeField, nvars: usize, degree: u32, rng: &mut ChaCha8Rng) -> MultiPoly<PrimeField> {
    let mut terms = Vec::new();
    for _ in 0..6 {
        let mut exps = vec![0u32; nvars];
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        terms.push((Monomial::from_exponents(&exps), rng.gen_range(1..field.modulus())));
    }
    MultiPoly::from_terms(field, nvars, terms)
}

fn criterion_8(field: &PrimeField) -> Evidence {
    let mut ev = Evidence::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // Euler identity on random forms
    for trial in 0..50 {
        let nvars = rng.gen_range(2..=5);
        let degree = rng.gen_range(1..=6);
        let f = random_form(field, nvars, degree, &mut rng);
        let grad: Vec<HomogeneousForm<PrimeField>> = f
            .gradient()
            .into_iter()
            .map(|g| if g.is_zero() { HomogeneousForm::zero(field, nvars) } else { HomogeneousForm::new(g).unwrap() })
            .collect();
        let lhs = euler_contraction(&grad).unwrap();
        if lhs != f.scale(&field.from_i64(degree as i64)) {
            ev.fail(format!("Euler identity fails on random form {trial}"));
        }
    }
    let r = (|| {
        // constructed foliations: contraction zero and integrable
        let mut entries = corpus::gauss_foliations();
        entries.extend([corpus::CONIC_TANGENT, corpus::CUBIC_CONIC, corpus::FERMAT_CUBIC]);
        for entry in &entries {
            let w = entry.build()?;
            let fol = associated_foliation(&w)?;
            if !euler_contraction(fol.coeffs())?.is_zero() {
                ev.fail(format!("{}: nonzero contraction", entry.name));
            }
            if fol.coeffs().len() <= 4 && !fol.is_integrable() {
                ev.fail(format!("{}: ω∧dω ≠ 0", entry.name));
            }
        }
        for k in 2..=4 {
            let fol = polardeg::verify::resonance_foliation(k)?;
            if !euler_contraction(fol.coeffs())?.is_zero() || !fol.is_integrable() {
                ev.fail(format!("resonance foliation k = {k} is not a foliation"));
            }
        }
        let tri = corpus::TRIANGLE.build()?;
        let plane = foliation_from_form(&logarithmic_form(&tri.reweighted(parse_weights("1,2,-3")?)?)?)?;
        if !is_integrable(&plane.coeffs().iter().map(|c| c.poly().clone()).collect::<Vec<_>>()) {
            ev.fail("plane triangle foliation not integrable".into());
        }

        // S-polynomials reduce to zero; quotient dimension independent of order
        let systems: [&[&str]; 4] = [
            &["x0^2 - x1", "x1^2 - x0", "x2 - x0 - x1"],
            &["x0*x1 - 1", "x0^2 + x1^2 - 3", "x2^2 - x0"],
            &["x0^2 + x1*x2 - 1", "x1^2 - x2", "x2^2 - x0 + 2"],
            &["x0^3 - x1*x2", "x1^2 - x0", "x2^2 - x1 + x0"],
        ];
        for sys in systems {
            let gens: Vec<MultiPoly<Rationals>> = sys.iter().map(|s| parse_poly(s, 3, &Rationals)).collect::<Result<_>>()?;
            let ideal = Ideal::new(&Rationals, 3, gens)?;
            let a: GroebnerBasis<Rationals> = groebner(&ideal, MonomialOrder::DegRevLex)?;
            let b = groebner(&ideal, MonomialOrder::Lex)?;
            if !a.satisfies_buchberger_criterion() || !b.satisfies_buchberger_criterion() {
                ev.fail(format!("Buchberger criterion fails for {sys:?}"));
            }
            if quotient_dimension(&a)? != quotient_dimension(&b)? {
                ev.fail(format!("order-dependent quotient dimension for {sys:?}"));
            }
        }

        // determinism and weight rescaling
        let w = corpus::CONIC_TANGENT.build_mod(field)?;
        let o = opts().with_seed(derive_seed(0, &[8]));
        let first = polar_degrees_profile(&w, &o)?;
        let again = polar_degrees_profile(&w, &o)?;
        if first != again {
            ev.fail("repeated run with the same seed differs".into());
        }
        let sequential = polar_degrees_profile(&w, &DegreeOptions { parallel: false, ..o })?;
        if first != sequential {
            ev.fail("parallel and sequential runs differ".into());
        }
        let scaled = polar_degrees_profile(&w.reweighted(parse_weights("3/2,3/2")?)?, &o)?;
        let vals = |rs: &[polardeg::report::DegreeReport]| rs.iter().map(|r| r.value).collect::<Vec<_>>();
        if vals(&first) != vals(&scaled) {
            ev.fail("rescaling the weights changed the degrees".into());
        }
        let fermat = polar_map(&HomogeneousForm::new(parse_poly("x0^3 + x1^3 + x2^3", 3, field)?)?)?;
        let r1 = map_degree(&fermat, 0, &o)?;
        let r2 = map_degree(&fermat, 0, &o)?;
        if r1 != r2 {
            ev.fail("map degree not reproducible".into());
        }
        ev.values.push(("properties".into(), vals(&first)));
        Ok(())
    })();
    ev.absorb(r);
    ev
}

type Criterion = fn(&PrimeField) -> Evidence;

const CRITERIA: [(&str, Criterion); 8] = [
    ("plane curve classification with controls", criterion_1),
    ("smooth Fermat curve profiles", criterion_2),
    ("invariance of the profile under positive weights", criterion_3),
    ("Gauss map degrees of restrictions", criterion_4),
    ("polar relation and degree corollary", criterion_5),
    ("resonance example and singular scheme degree", criterion_6),
    ("product lower bound", criterion_7),
    ("property suites", criterion_8),
];

fn main() -> ExitCode {
    let primary = PrimeField::new(polardeg::DEFAULT_PRIME).unwrap();
    let second = PrimeField::new(SECOND_PRIME).unwrap();
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut all_pass = true;
    let mut per_prime = Vec::new();
    for (idx, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let ev = run(&primary);
        println!(
            "criterion {}: {} - {} ({:.1}s)",
            idx + 1,
            if ev.pass { "PASS" } else { "FAIL" },
            name,
            start.elapsed().as_secs_f64()
        );
        for f in &ev.failures {
            println!("    {f}");
        }
        if verbose {
            for (label, vals) in &ev.values {
                println!("    {label}: {vals:?}");
            }
        }
        all_pass &= ev.pass;
        per_prime.push(ev);
    }

    let start = Instant::now();
    let mut robust = true;
    let mut notes = Vec::new();
    for ((name, run), ev) in CRITERIA.iter().zip(&per_prime) {
        let other = run(&second);
        if !other.pass {
            robust = false;
            notes.extend(other.failures.iter().map(|f| format!("{name} at {SECOND_PRIME}: {f}")));
        }
        if other.values != ev.values {
            robust = false;
            notes.push(format!("{name}: degree values differ between {} and {SECOND_PRIME}", primary.modulus()));
        }
    }
    println!(
        "criterion 9: {} - identical degree values at p = {} and p = {SECOND_PRIME} ({:.1}s)",
        if robust { "PASS" } else { "FAIL" },
        primary.modulus(),
        start.elapsed().as_secs_f64()
    );
    for n in &notes {
        println!("    {n}");
    }
    all_pass &= robust;

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
