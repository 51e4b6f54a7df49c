//! Checks of the degree identities relating polar maps, Gauss maps of
//! logarithmic foliations and their restrictions, over a fixed corpus.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::foliation::{associated_foliation, e_degree, foliation_from_form, logarithmic_form, singular_scheme_degree_p2, LogFoliation};
use crate::parser::{parse_poly, parse_weights};
use crate::polar::{map_degree, polar_degrees_profile, polar_map, weighted_polar_map, DegreeOptions, WeightedFunction};
use crate::poly::{HomogeneousForm, MultiPoly};
use crate::report::DegreeReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Left and right agree entry by entry.
    Equal,
    /// Each left entry is at least the corresponding right entry.
    AtLeast,
}

/// Evidence for one instance of a claimed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub claim: String,
    pub instance: String,
    pub relation: Relation,
    pub left: Vec<Option<u64>>,
    pub right: Vec<Option<u64>>,
    pub pass: bool,
    /// False when the weights do not all share a sign and the run was
    /// forced anyway.
    pub hypothesis_verified: bool,
    #[serde(skip)]
    pub reports: Vec<DegreeReport>,
}

impl VerificationOutcome {
    fn new(
        claim: &str,
        instance: String,
        relation: Relation,
        left: Vec<Option<u64>>,
        right: Vec<Option<u64>>,
        reports: Vec<DegreeReport>,
    ) -> Self {
        let all_stable = reports.iter().all(|r| r.stable);
        let defined = left.iter().chain(&right).all(|v| v.is_some());
        let holds = left.len() == right.len()
            && left.iter().zip(&right).all(|(l, r)| match relation {
                Relation::Equal => l == r,
                Relation::AtLeast => l >= r,
            });
        VerificationOutcome {
            claim: claim.to_string(),
            instance,
            relation,
            left,
            right,
            pass: all_stable && defined && holds,
            hypothesis_verified: true,
            reports,
        }
    }

    /// One line: `PASS|FAIL claim instance: left rel right`.
    pub fn summary(&self) -> String {
        let fmt = |v: &[Option<u64>]| {
            let parts: Vec<String> = v.iter().map(|x| x.map_or("?".into(), |x| x.to_string())).collect();
            format!("[{}]", parts.join(", "))
        };
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::AtLeast => ">=",
        };
        let tag = if self.hypothesis_verified { "" } else { " (hypothesis-unverified)" };
        format!(
            "{} {} {}: {} {} {}{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim,
            self.instance,
            fmt(&self.left),
            rel,
            fmt(&self.right),
            tag
        )
    }
}

fn sum(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    Some(a? + b?)
}

/// `e_i^k = e_0^{k-i} + e_0^{k-i+1}`, both sides computed separately.
pub fn verify_gauss_theorem(fol: &LogFoliation<PrimeField>, k: usize, i: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    let n = fol.ambient_dim();
    if k < 2 || k > n || i < 1 || i >= k {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= {n} and 1 <= i < k, got k = {k}, i = {i}")));
    }
    let left = e_degree(fol, k, i, opts)?;
    let a = e_degree(fol, k - i, 0, opts)?;
    let b = e_degree(fol, k - i + 1, 0, opts)?;
    Ok(VerificationOutcome::new(
        "gauss-theorem",
        format!("degree-{} foliation of P^{n}, e_{i}^{k}", fol.degree()),
        Relation::Equal,
        vec![left.value],
        vec![sum(a.value, b.value)],
        vec![left, a, b],
    ))
}

/// `e_i^k = e_{i-s}^{k-s}` for `s >= 1`, `s + 2 <= k` and `i - s >= 1`.
/// At `i = s` the right side is `e_0^{k-i}` alone and the identity fails.
pub fn verify_gauss_shift(fol: &LogFoliation<PrimeField>, k: usize, i: usize, s: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    if s < 1 || s + 2 > k || i < 2 || i <= s || i >= k || k > fol.ambient_dim() {
        return Err(Error::InvalidArgument(format!("inadmissible shift k = {k}, i = {i}, s = {s}")));
    }
    let left = e_degree(fol, k, i, opts)?;
    let right = e_degree(fol, k - s, i - s, opts)?;
    Ok(VerificationOutcome::new(
        "gauss-shift",
        format!("degree-{} foliation of P^{}, e_{i}^{k} vs e_{}^{}", fol.degree(), fol.ambient_dim(), i - s, k - s),
        Relation::Equal,
        vec![left.value],
        vec![right.value],
        vec![left, right],
    ))
}

fn describe(w: &WeightedFunction<PrimeField>) -> String {
    let polys: Vec<String> = w.factors().iter().map(|f| f.poly().to_string()).collect();
    let weights: Vec<String> = w.weights().iter().map(|x| x.to_string()).collect();
    format!("[{}] weights ({})", polys.join("; "), weights.join(","))
}

/// `deg_i 𝒢(𝓕_λ̄) = deg_i ∇𝔽^λ + deg_{i-1} ∇𝔽^λ` with `deg_{-1} = 0`.
pub fn verify_polar_relation(w: &WeightedFunction<PrimeField>, i: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    let n = w.nvars() - 1;
    if i >= n {
        return Err(Error::InvalidLevel { level: i as i64, range: format!("0..={}", n - 1) });
    }
    let fol = associated_foliation(w)?;
    let left = e_degree(&fol, n + 1, i, opts)?;
    let m = weighted_polar_map(w)?;
    let mut reports = vec![left.clone()];
    let here = map_degree(&m, i, opts)?;
    let right = if i == 0 {
        here.value
    } else {
        let below = map_degree(&m, i - 1, opts)?;
        let v = sum(here.value, below.value);
        reports.push(below);
        v
    };
    reports.push(here);
    Ok(VerificationOutcome::new(
        "polar-relation",
        format!("{}, i = {i}", describe(w)),
        Relation::Equal,
        vec![left.value],
        vec![right],
        reports,
    ))
}

/// `deg_i ∇𝔽^λ = e_0^{n+1-i}(𝓕_λ̄)`.
pub fn verify_corollary_deg(w: &WeightedFunction<PrimeField>, i: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    let n = w.nvars() - 1;
    if i >= n {
        return Err(Error::InvalidLevel { level: i as i64, range: format!("0..={}", n - 1) });
    }
    let left = map_degree(&weighted_polar_map(w)?, i, opts)?;
    let fol = associated_foliation(w)?;
    let right = e_degree(&fol, n + 1 - i, 0, opts)?;
    Ok(VerificationOutcome::new(
        "corollary-deg",
        format!("{}, i = {i}", describe(w)),
        Relation::Equal,
        vec![left.value],
        vec![right.value],
        vec![left, right],
    ))
}

/// Full profiles of `∇𝔽^λ` for each weight set equal the profile for
/// weights all one. Weight sets of mixed sign are rejected unless
/// `allow_unverified`, in which case the outcome is labeled.
pub fn verify_invariance(
    factors: &[MultiPoly<PrimeField>],
    weight_sets: &[Vec<BigRational>],
    opts: &DegreeOptions,
    allow_unverified: bool,
) -> Result<VerificationOutcome> {
    let ones = vec![BigRational::one(); factors.len()];
    let base = WeightedFunction::new(factors.to_vec(), ones)?;
    let mut verified = true;
    let mut weighted = Vec::with_capacity(weight_sets.len());
    for ws in weight_sets {
        let w = base.reweighted(ws.clone())?;
        if !w.weights_same_sign() {
            if !allow_unverified {
                return Err(Error::HypothesisUnverified);
            }
            verified = false;
        }
        weighted.push(w);
    }
    let reference = polar_degrees_profile(&base, opts)?;
    let ref_values: Vec<Option<u64>> = reference.iter().map(|r| r.value).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut reports = reference.clone();
    for w in &weighted {
        let prof = polar_degrees_profile(w, opts)?;
        left.extend(prof.iter().map(|r| r.value));
        right.extend(ref_values.iter().copied());
        reports.extend(prof);
    }
    let sets: Vec<String> = weight_sets
        .iter()
        .map(|ws| format!("({})", ws.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let mut out = VerificationOutcome::new(
        "invariance",
        format!("{} vs {}", describe(&base), sets.join(" ")),
        Relation::Equal,
        left,
        right,
        reports,
    );
    out.hypothesis_verified = verified;
    Ok(out)
}

/// `deg_i ∇(F_1 F_2) >= max(deg_i ∇F_1, deg_i ∇F_2)` at every level.
pub fn verify_product_bound(f1: &MultiPoly<PrimeField>, f2: &MultiPoly<PrimeField>, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    WeightedFunction::new(vec![f1.clone(), f2.clone()], vec![BigRational::one(), BigRational::one()])?;
    let n = f1.nvars() - 1;
    let prod = HomogeneousForm::new(f1 * f2)?;
    let mp = polar_map(&prod)?;
    let m1 = polar_map(&HomogeneousForm::new(f1.clone())?)?;
    let m2 = polar_map(&HomogeneousForm::new(f2.clone())?)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut reports = Vec::new();
    for i in 0..n {
        let p = map_degree(&mp, i, opts)?;
        let a = map_degree(&m1, i, opts)?;
        let b = map_degree(&m2, i, opts)?;
        left.push(p.value);
        right.push(match (a.value, b.value) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        });
        reports.extend([p, a, b]);
    }
    Ok(VerificationOutcome::new(
        "product-bound",
        format!("F1 = {f1}, F2 = {f2}"),
        Relation::AtLeast,
        left,
        right,
        reports,
    ))
}

/// Plane curves with their expected `deg_0 ∇F`, or `None` for a control
/// whose value is only required to differ from one.
pub fn dolgachev_corpus() -> Vec<(&'static str, &'static str, Option<u64>)> {
    vec![
        ("smooth conic", "x0^2 + x1^2 + x2^2", Some(1)),
        ("three general lines", "x0*x1*x2", Some(1)),
        ("conic and tangent line", "x2*(x1^2 - x0*x2)", Some(1)),
        ("three concurrent lines", "x0*x1*(x0 + x1)", Some(0)),
        ("smooth cubic", "x0^3 + x1^3 + x2^3", Some(4)),
        ("conic and transversal line", "x2*(x0^2 + x1^2 + x2^2)", None),
    ]
}

/// `deg_0 ∇F` over the plane-curve corpus: one for the three homaloidal
/// curves and different from one for the controls.
pub fn run_dolgachev_suite(field: &PrimeField, opts: &DegreeOptions) -> Result<Vec<VerificationOutcome>> {
    dolgachev_corpus()
        .into_iter()
        .map(|(name, text, expected)| {
            let f = HomogeneousForm::new(parse_poly(text, 3, field)?)?;
            let r = map_degree(&polar_map(&f)?, 0, opts)?;
            let (relation, right) = match expected {
                Some(v) => (Relation::Equal, vec![Some(v)]),
                None => (Relation::Equal, vec![r.value.filter(|&v| v != 1)]),
            };
            Ok(VerificationOutcome::new("dolgachev", format!("{name}: {text}"), relation, vec![r.value], right, vec![r]))
        })
        .collect()
}

/// Lines `x0, x1, x0 + x1, x0 + 2 x1, …` (the first `k`), then `x2`, then
/// the auxiliary line `x0 + 3 x1 + 7 x2` when `with_auxiliary`.
pub fn resonance_lines(k: usize, with_auxiliary: bool) -> Vec<String> {
    let mut lines: Vec<String> = (0..k)
        .map(|j| match j {
            0 => "x0".to_string(),
            1 => "x1".to_string(),
            j => format!("x0 + {}*x1", j - 1),
        })
        .collect();
    lines.push("x2".into());
    if with_auxiliary {
        lines.push("x0 + 3*x1 + 7*x2".into());
    }
    lines
}

/// `(1, …, 1, -(k-1), 1)`: the first `k` weights sum to zero.
pub fn resonant_weights(k: usize) -> Vec<BigRational> {
    let mut w = vec![BigRational::one(); k + 1];
    w[k - 1] = BigRational::from_integer((1 - k as i64).into());
    w
}

fn resonance_function(field: &PrimeField, k: usize, weights: Vec<BigRational>) -> Result<WeightedFunction<PrimeField>> {
    let polys = resonance_lines(k, false).iter().map(|s| parse_poly(s, 3, field)).collect::<Result<Vec<_>>>()?;
    WeightedFunction::new(polys, weights)
}

/// `k` concurrent lines and a line off their common point: `deg_0` is one
/// for resonant weights and `k - 1` for all weights one.
pub fn run_resonance_example(field: &PrimeField, k: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    if k < 2 {
        return Err(Error::InvalidArgument("the resonance example needs k >= 2".into()));
    }
    let resonant = resonance_function(field, k, resonant_weights(k))?;
    let generic = resonance_function(field, k, vec![BigRational::one(); k + 1])?;
    let a = map_degree(&weighted_polar_map(&resonant)?, 0, opts)?;
    let b = map_degree(&weighted_polar_map(&generic)?, 0, opts)?;
    Ok(VerificationOutcome::new(
        "resonance",
        format!("k = {k}, resonant and all-ones weights"),
        Relation::Equal,
        vec![a.value, b.value],
        vec![Some(1), Some(k as u64 - 1)],
        vec![a, b],
    ))
}

/// The degree-`k` foliation of `ℙ²` given by
/// `(∏_{j≤k+2} F_j) Σ_{j≤k+2} λ_j dF_j/F_j` for the resonant weights, the
/// auxiliary line carrying `λ_{k+2} = -λ_{k+1}`.
pub fn resonance_foliation(k: usize) -> Result<LogFoliation<Rationals>> {
    let polys = resonance_lines(k, true).iter().map(|s| parse_poly(s, 3, &Rationals)).collect::<Result<Vec<_>>>()?;
    let mut weights = resonant_weights(k);
    weights.push(-BigRational::one());
    let w = WeightedFunction::new(polys, weights)?;
    foliation_from_form(&logarithmic_form(&w)?)
}

/// The singular scheme of [`resonance_foliation`] has degree `k² + k + 1`.
pub fn verify_resonance_singular_degree(field: &PrimeField, k: usize, opts: &DegreeOptions) -> Result<VerificationOutcome> {
    let fol = resonance_foliation(k)?;
    let deg = fol.degree() as u64;
    let sing = singular_scheme_degree_p2(&fol.reduce_mod(field)?, opts.seed, &opts.groebner)?;
    Ok(VerificationOutcome::new(
        "resonance-singular-degree",
        format!("k = {k}, foliation degree {deg}"),
        Relation::Equal,
        vec![Some(sing)],
        vec![Some(k as u64 * k as u64 + k as u64 + 1)],
        vec![],
    ))
}

/// Named weighted functions used by the suites.
pub mod corpus {
    use super::*;

    pub struct Entry {
        pub name: &'static str,
        pub polys: &'static [&'static str],
        pub nvars: usize,
        pub weights: &'static str,
    }

    impl Entry {
        pub fn build(&self) -> Result<WeightedFunction<Rationals>> {
            let polys = self.polys.iter().map(|s| parse_poly(s, self.nvars, &Rationals)).collect::<Result<Vec<_>>>()?;
            WeightedFunction::new(polys, parse_weights(self.weights)?)
        }

        pub fn build_mod(&self, field: &PrimeField) -> Result<WeightedFunction<PrimeField>> {
            self.build()?.reduce_mod(field)
        }

        pub fn factors_mod(&self, field: &PrimeField) -> Result<Vec<MultiPoly<PrimeField>>> {
            self.polys.iter().map(|s| parse_poly(s, self.nvars, field)).collect()
        }
    }

    pub const CONIC: Entry = Entry { name: "smooth conic", polys: &["x0^2 + x1^2 + x2^2"], nvars: 3, weights: "1" };
    pub const TRIANGLE: Entry = Entry { name: "three general lines", polys: &["x0", "x1", "x2"], nvars: 3, weights: "1,1,1" };
    pub const CONIC_TANGENT: Entry =
        Entry { name: "conic and tangent line", polys: &["x1^2 - x0*x2", "x2"], nvars: 3, weights: "1,1" };
    pub const CONIC_TRANSVERSAL: Entry =
        Entry { name: "conic and transversal line", polys: &["x0^2 + x1^2 + x2^2", "x2"], nvars: 3, weights: "1,1" };
    pub const CUBIC_CONIC: Entry = Entry {
        name: "cubic and conic",
        polys: &["x0^3 + x1^3 + x2^3", "x0^2 + 2*x1^2 - 3*x2^2 + x0*x1"],
        nvars: 3,
        weights: "1,1",
    };
    pub const FOUR_LINES: Entry =
        Entry { name: "four general lines", polys: &["x0", "x1", "x2", "x0 + x1 + x2"], nvars: 3, weights: "1,1,1,1" };
    pub const FERMAT_CUBIC: Entry = Entry { name: "Fermat cubic", polys: &["x0^3 + x1^3 + x2^3"], nvars: 3, weights: "1" };
    pub const FERMAT_QUARTIC: Entry = Entry { name: "Fermat quartic", polys: &["x0^4 + x1^4 + x2^4"], nvars: 3, weights: "1" };
    pub const QUADRIC_SURFACE: Entry =
        Entry { name: "smooth quadric surface", polys: &["x0^2 + x1^2 + x2^2 + x3^2"], nvars: 4, weights: "1" };

    /// Instances for the invariance check, with positive weight sets.
    pub fn invariance() -> Vec<(Entry, Vec<&'static str>)> {
        vec![
            (TRIANGLE, vec!["2,5,11", "1/2,1,3"]),
            (CONIC_TANGENT, vec!["3,1", "2,7"]),
            (CONIC_TRANSVERSAL, vec!["2,3", "5,1/3"]),
            (CUBIC_CONIC, vec!["2,1", "1,4"]),
            (FOUR_LINES, vec!["1,2,3,4", "7,1,1,2"]),
        ]
    }

    /// Foliations `𝓕_λ̄` on which the Gauss-map identities are checked.
    pub fn gauss_foliations() -> Vec<Entry> {
        vec![TRIANGLE, CONIC, FOUR_LINES, CONIC_TRANSVERSAL, QUADRIC_SURFACE]
    }

    /// Coprime pairs for the product bound.
    pub fn product_pairs() -> Vec<(&'static str, &'static str)> {
        vec![
            ("x1^2 - x0*x2", "x2"),
            ("x0^3 + x1^3 + x2^3", "x0 + 2*x1 + 3*x2"),
            ("x0^2 + x1^2 + x2^2", "x0^2 + 2*x1^2 + 3*x2^2"),
            ("x0^3 + x1^3 + x2^3", "x0^2 - x1*x2"),
            ("x0", "x1"),
            ("x0*x1", "x2"),
        ]
    }
}
