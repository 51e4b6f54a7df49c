//! Logarithmic foliations of projective space, their restrictions to
//! generic linear subspaces and the degrees of their Gauss maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::gcd::gcd_many;
use crate::groebner::{groebner_with, hilbert_function, ideal_dimension, saturate, GroebnerConfig, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::{euler_contraction, HomogeneousForm, MultiPoly};
use crate::polar::{check_sampling_field, fiber_trial, map_degree, run_trials, DegreeOptions, RationalMapRep, WeightedFunction};
use crate::random::{linear_form, matrix_rank, sample_matrix, sample_nonzero_vec, SeedStream};
use crate::report::DegreeReport;

/// Attempts at drawing a linear section that keeps the degree.
pub const RESTRICTION_BUDGET: usize = 5;

/// A codimension-one foliation of `ℙ^n` given by `ω = Σ a_i dx_i` with
/// `Σ x_i a_i = 0` and coprime coefficients of common degree `d + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogFoliation<K: Field> {
    coeffs: Vec<HomogeneousForm<K>>,
    degree: i32,
}

impl<K: Field> LogFoliation<K> {
    pub fn coeffs(&self) -> &[HomogeneousForm<K>] {
        &self.coeffs
    }

    /// The foliation degree `d`.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Dimension `n` of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> &K {
        self.coeffs[0].poly().field()
    }

    pub fn is_integrable(&self) -> bool {
        is_integrable(&self.polys())
    }

    fn polys(&self) -> Vec<MultiPoly<K>> {
        self.coeffs.iter().map(|c| c.poly().clone()).collect()
    }
}

impl LogFoliation<Rationals> {
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<LogFoliation<PrimeField>> {
        let polys = self.coeffs.iter().map(|c| c.poly().reduce_mod(field)).collect::<Result<Vec<_>>>()?;
        let fol = clear_and_normalize(polys)?;
        if fol.degree != self.degree {
            return Err(Error::InvalidArgument(format!(
                "the foliation degenerates modulo {}",
                field.modulus()
            )));
        }
        Ok(fol)
    }
}

/// `λ̄ = (λ_0, …, λ_m, -Σ λ_i deg F_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVectorBar {
    base: Vec<BigRational>,
    appended: BigRational,
}

impl WeightVectorBar {
    pub fn new<K: Field>(w: &WeightedFunction<K>) -> Result<Self> {
        let total = w.total_degree();
        if total.is_zero() {
            return Err(Error::ZeroTotalDegree);
        }
        Ok(WeightVectorBar { base: w.weights().to_vec(), appended: -total })
    }

    pub fn base(&self) -> &[BigRational] {
        &self.base
    }

    pub fn appended(&self) -> &BigRational {
        &self.appended
    }

    pub fn to_vec(&self) -> Vec<BigRational> {
        let mut v = self.base.clone();
        v.push(self.appended.clone());
        v
    }
}

/// Coefficients of `(∏F_j)·Σ μ_j dF_j/F_j`.
pub fn logarithmic_form<K: Field>(w: &WeightedFunction<K>) -> Result<Vec<HomogeneousForm<K>>> {
    let comps = w.log_differential();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroForm);
    }
    comps
        .into_iter()
        .map(|c| if c.is_zero() { Ok(HomogeneousForm::zero(w.field(), w.nvars())) } else { HomogeneousForm::new(c) })
        .collect()
}

/// Checks the Euler contraction and integrability, removes the common
/// factor of the coefficients and confirms the singular set has
/// codimension at least two.
pub fn foliation_from_form<K: Field>(coeffs: &[HomogeneousForm<K>]) -> Result<LogFoliation<K>> {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroForm);
    }
    if !euler_contraction(coeffs)?.is_zero() {
        return Err(Error::NotProjectiveForm);
    }
    let polys: Vec<MultiPoly<K>> = coeffs.iter().map(|c| c.poly().clone()).collect();
    if !is_integrable(&polys) {
        return Err(Error::NotIntegrable);
    }
    let fol = clear_and_normalize(polys)?;
    let n = fol.ambient_dim();
    let nonzero: Vec<MultiPoly<K>> = fol.polys().into_iter().filter(|p| !p.is_zero()).collect();
    let gb = groebner_with(&Ideal::new(fol.field(), n + 1, nonzero)?, MonomialOrder::DegRevLex, &GroebnerConfig::default())?;
    // affine cone of a codimension >= 2 subset of P^n
    if ideal_dimension(&gb) > n as i32 - 1 {
        return Err(Error::SingularCodimOne);
    }
    Ok(fol)
}

/// Divides by the coefficient gcd and makes the first nonzero coefficient
/// monic.
fn clear_and_normalize<K: Field>(polys: Vec<MultiPoly<K>>) -> Result<LogFoliation<K>> {
    let g = gcd_many(polys.iter().filter(|p| !p.is_zero())).ok_or(Error::ZeroForm)?;
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let mut polys: Vec<MultiPoly<K>> = if g.is_constant() {
        polys
    } else {
        polys.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect()
    };
    let first = polys.iter().find(|p| !p.is_zero()).expect("nonzero form");
    let field = first.field().clone();
    let lc = first.leading_term().expect("nonzero").1.clone();
    let inv = field.inv(&lc).expect("nonzero leading coefficient");
    polys = polys.iter().map(|p| p.scale(&inv)).collect();
    let nvars = polys.len();
    let coeffs: Vec<HomogeneousForm<K>> = polys
        .into_iter()
        .map(|p| if p.is_zero() { Ok(HomogeneousForm::zero(&field, nvars)) } else { HomogeneousForm::new(p) })
        .collect::<Result<_>>()?;
    let top = coeffs.iter().map(|c| c.degree()).max().expect("nonempty");
    Ok(LogFoliation { coeffs, degree: top - 1 })
}

/// `ω ∧ dω = 0`, expanded in the basis `dx_i ∧ dx_j ∧ dx_k`.
pub fn is_integrable<K: Field>(a: &[MultiPoly<K>]) -> bool {
    let n = a.len();
    let d: Vec<Vec<MultiPoly<K>>> = a.iter().map(|p| (0..n).map(|v| p.diff(v)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t1 = &a[i] * &(&d[k][j] - &d[j][k]);
                let t2 = &a[j] * &(&d[i][k] - &d[k][i]);
                let t3 = &a[k] * &(&d[j][i] - &d[i][j]);
                if !(&(&t1 + &t2) + &t3).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// The foliation of `ℙ^{n+1}` given by `d𝔽^λ/𝔽^λ - deg(𝔽^λ)·dx_{n+1}/x_{n+1}`,
/// with coefficients `(x_{n+1}·c_0, …, x_{n+1}·c_n, -D·∏F_j)`.
pub fn associated_foliation<K: Field>(w: &WeightedFunction<K>) -> Result<LogFoliation<K>> {
    if w.total_degree().is_zero() {
        return Err(Error::ZeroTotalDegree);
    }
    let field = w.field();
    let n1 = w.nvars();
    let t = MultiPoly::var(field, n1 + 1, n1);
    let d: BigInt = w.scaled_total_degree();
    let mut coeffs: Vec<MultiPoly<K>> = w.log_differential().iter().map(|c| &c.insert_var(n1) * &t).collect();
    coeffs.push(w.product().insert_var(n1).scale(&field.neg(&field.from_bigint(&d))));
    let forms = coeffs
        .into_iter()
        .map(|c| if c.is_zero() { Ok(HomogeneousForm::zero(field, n1 + 1)) } else { HomogeneousForm::new(c) })
        .collect::<Result<Vec<_>>>()?;
    foliation_from_form(&forms)
}

/// `p ↦ [a_0(p) : … : a_n(p)]`.
pub fn gauss_map<K: Field>(fol: &LogFoliation<K>) -> RationalMapRep<K> {
    RationalMapRep::new(fol.polys()).expect("foliation coefficients form a map")
}

/// Pullback under `x = M·z` for an `(n+1) × (k+1)` matrix: `b_j = Σ_i M_ij a_i(Mz)`,
/// with the common factor removed.
pub fn restrict_with_matrix<K: Field>(fol: &LogFoliation<K>, matrix: &[Vec<K::Elem>]) -> Result<LogFoliation<K>> {
    let n1 = fol.coeffs.len();
    if matrix.len() != n1 {
        return Err(Error::MatrixShape { expected_rows: n1, rows: matrix.len() });
    }
    let cols = matrix[0].len();
    let field = fol.field();
    let pulled: Vec<MultiPoly<K>> =
        fol.coeffs.iter().map(|c| c.poly().substitute_linear(matrix)).collect::<Result<_>>()?;
    let restricted: Vec<MultiPoly<K>> = (0..cols)
        .map(|j| {
            let mut acc = MultiPoly::zero(field, cols);
            for (row, p) in matrix.iter().zip(&pulled) {
                if !field.is_zero(&row[j]) && !p.is_zero() {
                    acc = &acc + &p.scale(&row[j]);
                }
            }
            acc
        })
        .collect();
    if restricted.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroForm);
    }
    let out = clear_and_normalize(restricted)?;
    debug_assert!(contract(&out).is_zero());
    Ok(out)
}

fn contract<K: Field>(fol: &LogFoliation<K>) -> MultiPoly<K> {
    euler_contraction(&fol.coeffs).expect("coefficients of equal degree")
}

/// Restriction to a generic `ℙ^k`. For `k >= 2` the degree must be kept;
/// draws that lower it are treated as special and redrawn.
pub fn restrict_to_generic_subspace(fol: &LogFoliation<PrimeField>, k: usize, seed: u64) -> Result<LogFoliation<PrimeField>> {
    restrict_with_stream(fol, k, &mut SeedStream::new(seed))
}

pub(crate) fn restrict_with_stream(
    fol: &LogFoliation<PrimeField>,
    k: usize,
    stream: &mut SeedStream,
) -> Result<LogFoliation<PrimeField>> {
    let n = fol.ambient_dim();
    if k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("restriction dimension {k} outside 1..{n}")));
    }
    let field = *fol.field();
    for _ in 0..RESTRICTION_BUDGET {
        let m = sample_matrix(&field, n + 1, k + 1, stream);
        if matrix_rank(&field, &m) != k + 1 {
            continue;
        }
        match restrict_with_matrix(fol, &m) {
            Ok(r) if k == 1 || r.degree == fol.degree => return Ok(r),
            Ok(_) | Err(Error::ZeroForm) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvariantSubspace(RESTRICTION_BUDGET))
}

/// `e_i^k = deg_i` of the Gauss map of the restriction to a generic `ℙ^k`.
/// Each trial draws its own subspace.
pub fn e_degree(fol: &LogFoliation<PrimeField>, k: usize, i: usize, opts: &DegreeOptions) -> Result<DegreeReport> {
    check_sampling_field(fol.field())?;
    let n = fol.ambient_dim();
    if k < 1 || k > n {
        return Err(Error::InvalidLevel { level: k as i64, range: format!("1..={n}") });
    }
    if i >= k {
        return Err(Error::InvalidLevel { level: i as i64, range: format!("0..={}", k - 1) });
    }
    if k == n {
        return map_degree(&gauss_map(fol), i, opts);
    }
    run_trials(i, opts, |stream| {
        let r = restrict_with_stream(fol, k, stream)?;
        fiber_trial(&gauss_map(&r), i, stream, &opts.groebner)
    })
}

/// Degree of the singular scheme of a foliation of `ℙ²`: the stable value
/// of the Hilbert function of the coefficient ideal after saturating away
/// the irrelevant ideal.
pub fn singular_scheme_degree_p2(fol: &LogFoliation<PrimeField>, seed: u64, config: &GroebnerConfig) -> Result<u64> {
    if fol.ambient_dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "singular scheme degree needs a foliation of P^2, got P^{}",
            fol.ambient_dim()
        )));
    }
    let field = *fol.field();
    check_sampling_field(&field)?;
    let gens: Vec<MultiPoly<PrimeField>> = fol.polys().into_iter().filter(|p| !p.is_zero()).collect();
    let ideal = Ideal::new(&field, 3, gens)?;
    let mut stream = SeedStream::new(seed);
    let ell = linear_form(&field, &sample_nonzero_vec(&field, 3, &mut stream));
    let sat = saturate(&ideal, &ell, config)?;
    let gb = groebner_with(&sat, MonomialOrder::DegRevLex, config)?;
    if ideal_dimension(&gb) > 1 {
        return Err(Error::SingularCodimOne);
    }
    let bound = 4 * (fol.degree().max(0) as u32 + 2).pow(2) + 8;
    let mut prev = [u64::MAX; 2];
    for d in 0..=bound {
        let h = hilbert_function(&gb, d);
        if prev[0] == h && prev[1] == h {
            return Ok(h);
        }
        prev = [prev[1], h];
    }
    Err(Error::ResourceCap("Hilbert function did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use crate::parser::{parse_poly, parse_weights};

    fn q(s: &str, n: usize) -> MultiPoly<Rationals> {
        parse_poly(s, n, &Rationals).unwrap()
    }

    fn hq(s: &str, n: usize) -> HomogeneousForm<Rationals> {
        if s == "0" {
            HomogeneousForm::zero(&Rationals, n)
        } else {
            HomogeneousForm::new(q(s, n)).unwrap()
        }
    }

    fn wf(polys: &[&str], weights: &str, n: usize) -> WeightedFunction<Rationals> {
        WeightedFunction::new(polys.iter().map(|s| q(s, n)).collect(), parse_weights(weights).unwrap()).unwrap()
    }

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn coeff_strings<K: Field>(f: &LogFoliation<K>) -> Vec<String> {
        f.coeffs().iter().map(|c| c.poly().to_string()).collect()
    }

    #[test]
    fn log_form_contractions() {
        let w = wf(&["x0", "x1"], "1,-1", 2);
        let form = logarithmic_form(&w).unwrap();
        assert_eq!(form.iter().map(|c| c.poly().clone()).collect::<Vec<_>>(), vec![q("x1", 2), q("-x0", 2)]);
        let tri = wf(&["x0", "x1", "x2"], "1,1,1", 3);
        assert_eq!(euler_contraction(&logarithmic_form(&tri).unwrap()).unwrap(), q("3*x0*x1*x2", 3));
        let res = wf(&["x0", "x1", "x0+x1"], "1,1,-2", 3);
        assert!(euler_contraction(&logarithmic_form(&res).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn projective_line_foliation() {
        let f = foliation_from_form(&[hq("x1", 2), hq("-x0", 2)]).unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(coeff_strings(&f), vec!["x1", "-x0"]);
        let g = gauss_map(&f);
        assert_eq!(g.degree(), 1);
    }

    #[test]
    fn gcd_is_cleared_once() {
        let f = foliation_from_form(&[hq("x0*x1", 3), hq("-x0^2", 3), hq("0", 3)]).unwrap();
        assert_eq!(coeff_strings(&f), vec!["x1", "-x0", "0"]);
        let again = foliation_from_form(f.coeffs()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn rejects_bad_forms() {
        assert_eq!(foliation_from_form(&[hq("x0", 2), hq("x1", 2)]), Err(Error::NotProjectiveForm));
        assert_eq!(foliation_from_form(&[hq("0", 2), hq("0", 2)]), Err(Error::ZeroForm));
        let ok = foliation_from_form(&[hq("x2", 3), hq("-x2", 3), hq("x1-x0", 3)]);
        assert!(ok.is_ok());
        // contact-like form on P^3 is not integrable
        let bad = [hq("x1", 4), hq("-x0", 4), hq("x3", 4), hq("-x2", 4)];
        assert_eq!(foliation_from_form(&bad), Err(Error::NotIntegrable));
    }

    #[test]
    fn associated_foliation_examples() {
        let conic = associated_foliation(&wf(&["x0^2+x1^2+x2^2"], "1", 3)).unwrap();
        assert_eq!(coeff_strings(&conic), vec!["x0*x3", "x1*x3", "x2*x3", "-x0^2 - x1^2 - x2^2"]);
        assert_eq!(conic.degree(), 1);
        let tri = associated_foliation(&wf(&["x0", "x1", "x2"], "1,1,1", 3)).unwrap();
        assert_eq!(coeff_strings(&tri), vec!["x1*x2*x3", "x0*x2*x3", "x0*x1*x3", "-3*x0*x1*x2"]);
        assert!(tri.is_integrable());
        let w = WeightedFunction::new(vec![q("x0^2+x1^2", 2), q("x1", 2)], parse_weights("1,-2").unwrap()).unwrap();
        assert_eq!(associated_foliation(&w), Err(Error::ZeroTotalDegree));
        let bar = WeightVectorBar::new(&wf(&["x0", "x1", "x2"], "1,2,3", 3)).unwrap();
        assert_eq!(bar.appended(), &BigRational::from_integer((-6).into()));
    }

    #[test]
    fn restriction_keeps_degree_and_composes() {
        let tri = associated_foliation(&wf(&["x0", "x1", "x2"], "1,1,1", 3)).unwrap().reduce_mod(&fp()).unwrap();
        let r = restrict_to_generic_subspace(&tri, 2, 7).unwrap();
        assert_eq!(r.degree(), tri.degree());
        assert!(contract(&r).is_zero());
        let line = restrict_to_generic_subspace(&tri, 1, 7).unwrap();
        assert_eq!(line.degree(), 0);

        let f = fp();
        let a: Vec<Vec<u64>> = vec![vec![1, 2, 0], vec![3, 0, 1], vec![0, 5, 7], vec![2, 1, 1]];
        let b: Vec<Vec<u64>> = vec![vec![1, 4], vec![0, 1], vec![9, 2]];
        let ab: Vec<Vec<u64>> = a
            .iter()
            .map(|row| (0..2).map(|j| (0..3).fold(0, |s, t| f.add(&s, &f.mul(&row[t], &b[t][j])))).collect())
            .collect();
        let twice = restrict_with_matrix(&restrict_with_matrix(&tri, &a).unwrap(), &b).unwrap();
        assert_eq!(twice, restrict_with_matrix(&tri, &ab).unwrap());
    }

    #[test]
    fn gauss_degrees_of_triangle_foliation() {
        let tri = associated_foliation(&wf(&["x0", "x1", "x2"], "1,1,1", 3)).unwrap().reduce_mod(&fp()).unwrap();
        let opts = DegreeOptions::default();
        let e = |k, i| e_degree(&tri, k, i, &opts).unwrap().stable_value().unwrap();
        assert_eq!(e(1, 0), 1);
        assert_eq!(e(2, 0), 2);
        assert_eq!(e(2, 1), 1 + e(2, 0));
        assert_eq!(e(3, 1), e(2, 0) + e(3, 0));
    }

    #[test]
    fn singular_schemes_on_the_plane() {
        let pencil = foliation_from_form(&[hq("x1", 3), hq("-x0", 3), hq("0", 3)]).unwrap().reduce_mod(&fp()).unwrap();
        let cfg = GroebnerConfig::default();
        assert_eq!(singular_scheme_degree_p2(&pencil, 1, &cfg).unwrap(), 1);
        // x0 x1 x2 (a dx0/x0 + b dx1/x1 + c dx2/x2) with a + b + c = 0
        let tri = foliation_from_form(&logarithmic_form(&wf(&["x0", "x1", "x2"], "1,2,-3", 3)).unwrap())
            .unwrap()
            .reduce_mod(&fp())
            .unwrap();
        assert_eq!(tri.degree(), 1);
        assert_eq!(singular_scheme_degree_p2(&tri, 1, &cfg).unwrap(), 3);
    }
}
