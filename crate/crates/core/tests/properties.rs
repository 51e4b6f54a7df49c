use num_rational::BigRational;
use polardeg::gcd::gcd;
use polardeg::groebner::{groebner, normal_form, quotient_dimension, saturate, GroebnerConfig, Ideal};
use polardeg::parser::{parse_poly, parse_weights};
use polardeg::polar::{polar_degrees_profile, DegreeOptions, WeightedFunction};
use polardeg::{
    euler_contraction, Field, HomogeneousForm, Monomial, MonomialOrder, MultiPoly, PrimeField, Rationals,
};
use proptest::prelude::*;

const P: u64 = 2_147_483_647;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn terms(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -9i64..=9), 0..=max_terms)
}

fn build<K: Field>(field: &K, nvars: usize, raw: &[(Vec<u32>, i64)]) -> MultiPoly<K> {
    let t = raw.iter().map(|(e, c)| (Monomial::from_exponents(e), field.from_i64(*c))).collect();
    MultiPoly::from_terms(field, nvars, t)
}

fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<PrimeField>> {
    terms(nvars, max_deg, max_terms).prop_map(move |raw| build(&fp(), nvars, &raw))
}

fn qpoly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rationals>> {
    (terms(nvars, max_deg, max_terms), 1i64..=5).prop_map(move |(raw, den)| {
        let p = build(&Rationals, nvars, &raw);
        p.scale(&BigRational::new(1.into(), den.into()))
    })
}

/// A homogeneous form of the given degree, possibly zero.
fn form(nvars: usize, degree: u32) -> impl Strategy<Value = MultiPoly<PrimeField>> {
    prop::collection::vec((prop::collection::vec(0..nvars, degree as usize), -9i64..=9), 0..6).prop_map(
        move |raw| {
            let f = fp();
            let t = raw
                .iter()
                .map(|(vars, c)| {
                    let mut e = vec![0u32; nvars];
                    for &v in vars {
                        e[v] += 1;
                    }
                    (Monomial::from_exponents(&e), f.from_i64(*c))
                })
                .collect();
            MultiPoly::from_terms(&f, nvars, t)
        },
    )
}

/// `x_i^{d_i} + (lower degree terms)`: a zero-dimensional system.
fn zero_dim_system() -> impl Strategy<Value = Vec<MultiPoly<PrimeField>>> {
    (prop::collection::vec(1u32..=2, 3), prop::collection::vec(terms(3, 1, 3), 3)).prop_map(|(degs, lows)| {
        let f = fp();
        degs.iter()
            .zip(&lows)
            .enumerate()
            .map(|(i, (&d, low))| {
                let lead = MultiPoly::monomial(&f, 3, Monomial::var(i).with_exp(i, d), f.one());
                let tail: Vec<(Vec<u32>, i64)> = low.iter().filter(|(e, _)| e.iter().sum::<u32>() < d).cloned().collect();
                &lead + &build(&f, 3, &tail)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&fp(), 3), a.clone());
    }

    #[test]
    fn euler_identity(f in form(4, 4)) {
        let field = fp();
        let grad: Vec<HomogeneousForm<PrimeField>> = f
            .gradient()
            .into_iter()
            .map(|g| if g.is_zero() { HomogeneousForm::zero(&field, 4) } else { HomogeneousForm::new(g).unwrap() })
            .collect();
        prop_assert_eq!(euler_contraction(&grad).unwrap(), f.scale(&field.from_i64(4)));
    }

    #[test]
    fn partial_derivatives_commute(f in poly(3, 4, 6), i in 0usize..3, j in 0usize..3) {
        let a = f.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let b = f.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(g in qpoly(3, 2, 3), a in qpoly(3, 2, 3), b in qpoly(3, 2, 3)) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let (p, q) = (&g * &a, &g * &b);
        let d = gcd(&p, &q).unwrap();
        let cp = p.div_exact(&d);
        let cq = q.div_exact(&d);
        prop_assert!(cp.is_some() && cq.is_some());
        prop_assert!(gcd(&cp.unwrap(), &cq.unwrap()).unwrap().is_constant());
        prop_assert!(d.div_exact(&gcd(&g, &d).unwrap()).is_some());
        prop_assert!(d.total_degree() >= g.total_degree());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in poly(3, 2, 4),
        b in poly(3, 2, 4),
        m in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 3),
    ) {
        let f = fp();
        let m: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&c| f.from_i64(c)).collect()).collect();
        let s = |p: &MultiPoly<PrimeField>| p.substitute_linear(&m).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn print_parse_round_trip(p in qpoly(4, 3, 6)) {
        let text = p.to_string();
        let back = parse_poly(&text, 4, &Rationals).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
        let fpp = p.reduce_mod(&fp()).unwrap();
        prop_assert_eq!(parse_poly(&fpp.to_string(), 4, &fp()).unwrap(), fpp);
    }

    #[test]
    fn quotient_dimension_independent_of_order(sys in zero_dim_system()) {
        let f = fp();
        let ideal = Ideal::new(&f, 3, sys).unwrap();
        let a = groebner(&ideal, MonomialOrder::DegRevLex).unwrap();
        let b = groebner(&ideal, MonomialOrder::Lex).unwrap();
        prop_assert_eq!(quotient_dimension(&a).unwrap(), quotient_dimension(&b).unwrap());
        prop_assert!(a.satisfies_buchberger_criterion());
        prop_assert!(b.satisfies_buchberger_criterion());
    }

    #[test]
    fn normal_form_is_idempotent(sys in zero_dim_system(), p in poly(3, 3, 5)) {
        let g = groebner(&Ideal::new(&fp(), 3, sys).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let r = normal_form(&p, &g);
        prop_assert_eq!(normal_form(&r, &g), r.clone());
        prop_assert!(g.contains(&(&p - &r)));
    }

    #[test]
    fn saturation_is_idempotent(a in poly(3, 2, 3), b in poly(3, 2, 3), l in prop::collection::vec(1i64..=7, 3)) {
        let f = fp();
        let ell = build(&f, 3, &[(vec![1, 0, 0], l[0]), (vec![0, 1, 0], l[1]), (vec![0, 0, 1], l[2])]);
        let cfg = GroebnerConfig::default();
        let once = saturate(&Ideal::new(&f, 3, vec![a, b]).unwrap(), &ell, &cfg).unwrap();
        let twice = saturate(&once, &ell, &cfg).unwrap();
        let basis = |i: &Ideal<PrimeField>| groebner(i, MonomialOrder::DegRevLex).unwrap().basis();
        prop_assert_eq!(basis(&once), basis(&twice));
    }

    #[test]
    fn parse_weights_round_trip(ws in prop::collection::vec((-20i64..=20, 1i64..=9), 1..5)) {
        prop_assume!(ws.iter().all(|(n, _)| *n != 0));
        let text = ws.iter().map(|(n, d)| format!("{n}/{d}")).collect::<Vec<_>>().join(",");
        let parsed = parse_weights(&text).unwrap();
        for ((n, d), w) in ws.iter().zip(&parsed) {
            prop_assert_eq!(w, &BigRational::new((*n).into(), (*d).into()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn weight_rescaling_keeps_degrees(num in 1i64..=9, den in 1i64..=9, seed in 0u64..1000) {
        let f = fp();
        let factors = vec![parse_poly("x1^2 - x0*x2", 3, &f).unwrap(), parse_poly("x2", 3, &f).unwrap()];
        let w = WeightedFunction::new(factors, parse_weights("2,3").unwrap()).unwrap();
        let c = BigRational::new(num.into(), den.into());
        let scaled = w.reweighted(w.weights().iter().map(|x| x * &c).collect()).unwrap();
        let opts = DegreeOptions::default().with_seed(seed);
        let vals = |w: &WeightedFunction<PrimeField>| {
            polar_degrees_profile(w, &opts).unwrap().iter().map(|r| r.value).collect::<Vec<_>>()
        };
        prop_assert_eq!(vals(&w), vals(&scaled));
    }

    #[test]
    fn reports_are_deterministic(seed in 0u64..1000) {
        let f = fp();
        let w = WeightedFunction::single(parse_poly("x0^3 + x1^3 + x2^3", 3, &f).unwrap()).unwrap();
        let opts = DegreeOptions::default().with_seed(seed);
        prop_assert_eq!(polar_degrees_profile(&w, &opts).unwrap(), polar_degrees_profile(&w, &opts).unwrap());
    }
}
