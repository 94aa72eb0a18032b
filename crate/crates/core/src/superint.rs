//! Ensemble moments and identity checks assembled from symbolic averages of
//! Jack and Macdonald polynomials.
//!
//! Two families are covered.  The Gaussian family lives in the variables
//! `(N, alpha)`, with the matrix dimension `N` kept as a polynomial
//! indeterminate through the generalized shifted factorial.  The q-lattice
//! family lives in `(a, q, t, u)`, where `u` stands for `t^N` but is treated
//! as an independent variable; integer-dimension cross-checks bind `u = t^N`
//! explicitly.  All checks in this module are exact rational-function
//! identities — the numeric lattice and Gaussian integrators in
//! [`crate::oracle`] serve as independent referees for them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactalg::{rational_pow, RatFunc, Var};
use crate::oracle::{gaussian_average_exact, GaussianSpec};
use crate::partitions::Partition;
use crate::qseries;
use crate::symfunc::{self, SymFunc};
use crate::{Error, Result};

/// Which ensemble family a table of moments belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentFamily {
    /// Gaussian ensembles: moments are polynomials in the dimension `N` and
    /// the coupling `alpha`.
    GaussianBeta,
    /// q-lattice ensembles: moments are rational in `(a, q, t)` and
    /// polynomial in `u = t^N`.
    Qt,
}

/// Ordered table of power-sum moments `⟨Σ_l x_l^p⟩` for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub family: MomentFamily,
    /// Pairs `(p, p-th moment)`, strictly increasing in `p`.  Odd orders of
    /// the Gaussian family are exactly zero by symmetry.
    pub entries: Vec<(u32, RatFunc)>,
}

/// Expansion of a scaled Gaussian moment in powers of the dimension:
/// `2^p ⟨Σ x^(2p)⟩ = Σ_g coefficient_g · N^(p+1-g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalExpansion {
    pub p: u32,
    /// Genus-indexed coefficients, each a polynomial in `alpha`; every index
    /// `0 ..= p` is present, including indices whose coefficient is zero.
    pub coefficients: BTreeMap<u32, RatFunc>,
}

fn v(x: Var) -> RatFunc {
    RatFunc::var(x)
}

/// `1 - x^k` for a variable `x`.
fn one_minus_pow(x: Var, k: u32) -> RatFunc {
    RatFunc::one().sub(&v(x).pow_u(k))
}

/// `1 + a^k`.
fn one_plus_a_pow(k: u32) -> RatFunc {
    RatFunc::one().add(&v(Var::A).pow_u(k))
}

/// The simultaneous parameter inversion `(q, t) -> (1/t, 1/q)`.
fn qt_inversion() -> Result<BTreeMap<Var, RatFunc>> {
    Ok(BTreeMap::from([
        (Var::Q, v(Var::T).recip()?),
        (Var::T, v(Var::Q).recip()?),
    ]))
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(2p - 1)!! = 1 · 3 · … · (2p - 1)`.
fn double_factorial_odd(p: u32) -> BigInt {
    (0..p).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i + 1))
}

fn catalan(p: u32) -> BigRational {
    BigRational::new(
        binomial(2 * u64::from(p), u64::from(p)),
        BigInt::from(p + 1),
    )
}

fn order_at_least_one(p: u32) -> Result<()> {
    if p == 0 {
        Err(Error::InvalidArgument(
            "order must be at least 1".to_string(),
        ))
    } else {
        Ok(())
    }
}

fn dimension_at_least_one(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(
            "dimension must be at least 1".to_string(),
        ))
    } else {
        Ok(())
    }
}

/// Average of the Jack polynomial `P_κ` over the Gaussian ensemble, as a
/// rational function of the dimension `N` and the coupling `alpha`.
///
/// Partitions of odd size average to zero by the `x -> -x` symmetry of the
/// weight.  For even size `2k` the value is
/// `2^(-k) · alpha^(2k) · [N/alpha]_κ · c_κ`, where `[x]_κ` is the
/// generalized shifted factorial over the diagram and `c_κ` the coefficient
/// of `p_2^k` in the power-sum expansion of `P_κ`.
pub fn jack_average(kappa: &Partition) -> Result<RatFunc> {
    let size = kappa.size();
    if size % 2 == 1 {
        return Ok(RatFunc::zero());
    }
    let half = size / 2;
    let alpha = v(Var::Alpha);
    let shifted_factorial = kappa.pochhammer_alpha(&v(Var::N).div_checked(&alpha)?);
    let twos = Partition::new(vec![2; half as usize])?;
    let pair_coeff = symfunc::jack(kappa).coefficient(&twos);
    let half_power = RatFunc::rational(BigRational::new(
        BigInt::one(),
        BigInt::from(2).pow(half),
    ));
    Ok(half_power
        .mul(&alpha.pow_u(size))
        .mul(&shifted_factorial)
        .mul(&pair_coeff))
}

/// Average of the Macdonald polynomial `P_κ` over the q-lattice ensemble:
/// the product of two principal-type specializations divided by a third,
///
/// `P_κ({(1-u^k)/(1-t^k)}) · P_κ({(1+a^k)/(1-t^k)}) / P_κ({1/(1-t^k)})`,
///
/// a rational function of `(a, q, t, u)` whose denominator never involves
/// `q` or `a`.
pub fn macdonald_average(kappa: &Partition) -> Result<RatFunc> {
    let g = symfunc::macdonald(kappa);
    let lattice_count = g.specialize_with(|k| {
        one_minus_pow(Var::U, k).div_checked(&one_minus_pow(Var::T, k))
    })?;
    let branch_mix = g.specialize_with(|k| {
        one_plus_a_pow(k).div_checked(&one_minus_pow(Var::T, k))
    })?;
    let reference = g.specialize_with(|k| one_minus_pow(Var::T, k).recip())?;
    lattice_count.mul(&branch_mix).div_checked(&reference)
}

/// `2p`-th spectral moment of the Gaussian ensemble, `⟨Σ_l x_l^(2p)⟩`, as a
/// polynomial in `N` with coefficients rational in `alpha`: the power sum
/// `p_(2p)` is expanded in Jack polynomials and averaged term by term.
pub fn moment_gaussian_beta(p: u32) -> Result<RatFunc> {
    order_at_least_one(p)?;
    let expansion: Vec<(Partition, RatFunc)> = symfunc::powersum_in_jack(2 * p)
        .into_iter()
        .collect();
    let terms = expansion
        .par_iter()
        .map(|(kappa, weight)| Ok(weight.mul(&jack_average(kappa)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(terms
        .iter()
        .fold(RatFunc::zero(), |acc, term| acc.add(term)))
}

/// `p`-th spectral moment of the q-lattice ensemble, `⟨Σ_l x_l^p⟩`, built by
/// expanding the power sum `p_p` in Macdonald polynomials and averaging term
/// by term.  The result is polynomial in `u` of degree at most `p`.
pub fn moment_qt(p: u32) -> Result<RatFunc> {
    order_at_least_one(p)?;
    let expansion: Vec<(Partition, RatFunc)> = symfunc::powersum_in_macdonald(p)
        .into_iter()
        .collect();
    let terms = expansion
        .par_iter()
        .map(|(kappa, weight)| Ok(weight.mul(&macdonald_average(kappa)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(terms
        .iter()
        .fold(RatFunc::zero(), |acc, term| acc.add(term)))
}

/// Table of the raw power-sum moments `⟨Σ_l x_l^p⟩` for `p = 1 ..= max_p`.
/// Gaussian odd orders are zero by symmetry; even order `2s` is
/// [`moment_gaussian_beta`]`(s)`.
pub fn moment_table(family: MomentFamily, max_p: u32) -> Result<MomentTable> {
    order_at_least_one(max_p)?;
    let mut entries = Vec::with_capacity(max_p as usize);
    for p in 1..=max_p {
        let value = match family {
            MomentFamily::GaussianBeta => {
                if p % 2 == 1 {
                    RatFunc::zero()
                } else {
                    moment_gaussian_beta(p / 2)?
                }
            }
            MomentFamily::Qt => moment_qt(p)?,
        };
        entries.push((p, value));
    }
    Ok(MomentTable { family, entries })
}

/// Checks the symbolic functional equation of the q-lattice moments:
/// `M_p(a,q,t,u) = -q^(-p) (1-q^p)/(1-t^p) · M_p(a,1/t,1/q,u)` with `u`
/// held fixed.
pub fn functional_equation_check_qt(p: u32) -> Result<bool> {
    order_at_least_one(p)?;
    let moment = moment_qt(p)?;
    let inverted = moment.substitute(&qt_inversion()?)?;
    let prefactor = v(Var::Q)
        .pow_i(-i64::from(p))?
        .neg()
        .mul(&one_minus_pow(Var::Q, p))
        .div_checked(&one_minus_pow(Var::T, p))?;
    Ok(moment == prefactor.mul(&inverted))
}

/// Checks the symbolic functional equation of the Gaussian moments:
/// `m(N, alpha) = (-alpha)^(p+1) · m(-N/alpha, 1/alpha)` where `m` is
/// [`moment_gaussian_beta`]`(p)`.
pub fn functional_equation_check_gbe(p: u32) -> Result<bool> {
    order_at_least_one(p)?;
    let moment = moment_gaussian_beta(p)?;
    let alpha = v(Var::Alpha);
    let reflected = moment.substitute(&BTreeMap::from([
        (Var::N, v(Var::N).neg().div_checked(&alpha)?),
        (Var::Alpha, alpha.recip()?),
    ]))?;
    let sign = alpha.neg().pow_u(p + 1);
    Ok(moment == sign.mul(&reflected))
}

/// Average of `P_κ` normalized by its evaluation at `x = (1, …, 1)`.  The
/// evaluation is expressed through the generalized shifted factorial and the
/// coefficient of `p_1^{|κ|}`, keeping `N` symbolic; for partitions of even
/// size the `N`-dependence cancels completely.
fn jack_normalized_average(kappa: &Partition) -> Result<RatFunc> {
    let size = kappa.size();
    let alpha = v(Var::Alpha);
    let ones = Partition::new(vec![1; size as usize])?;
    let linear_coeff = symfunc::jack(kappa).coefficient(&ones);
    let eval_at_ones = alpha
        .pow_u(size)
        .mul(&kappa.pochhammer_alpha(&v(Var::N).div_checked(&alpha)?))
        .mul(&linear_coeff);
    jack_average(kappa)?.div_checked(&eval_at_ones)
}

/// Checks the Gaussian duality: the normalized average of `P_κ` at coupling
/// `alpha` equals `(-alpha)^(|κ|/2)` times the normalized average of the
/// conjugate diagram at coupling `1/alpha`.  Both sides must be independent
/// of the dimension `N`; odd-size diagrams give zero on both sides.
pub fn duality_check_jack(kappa: &Partition) -> Result<bool> {
    let size = kappa.size();
    let lhs = jack_normalized_average(kappa)?;
    let conjugate_side = jack_normalized_average(&kappa.conjugate())?;
    if lhs.depends_on(Var::N) || conjugate_side.depends_on(Var::N) {
        return Ok(false);
    }
    if size % 2 == 1 {
        return Ok(lhs.is_zero() && conjugate_side.is_zero());
    }
    let alpha = v(Var::Alpha);
    let reflected =
        conjugate_side.substitute(&BTreeMap::from([(Var::Alpha, alpha.recip()?)]))?;
    Ok(lhs == alpha.neg().pow_u(size / 2).mul(&reflected))
}

/// Checks the q-lattice duality: the average of `P_κ` normalized by the
/// principal specialization `P_κ(1, t, …, t^(N-1))` (written through `u`,
/// whose dependence must cancel) equals the same normalized average for the
/// conjugate diagram in the parameter-inverted ensemble `(q,t) -> (1/t,1/q)`.
pub fn duality_check_macdonald(kappa: &Partition) -> Result<bool> {
    let g = symfunc::macdonald(kappa);
    let principal = g.specialize_with(|k| {
        one_minus_pow(Var::U, k).div_checked(&one_minus_pow(Var::T, k))
    })?;
    let lhs = macdonald_average(kappa)?.div_checked(&principal)?;
    if lhs.depends_on(Var::U) {
        return Ok(false);
    }
    // On the inverted side the dual dimension variable cancels the same way,
    // leaving the two remaining specializations with denominators 1 - q^(-k).
    let dual = symfunc::macdonald(&kappa.conjugate())
        .map_coefficients(|c| c.substitute(&qt_inversion()?))?;
    let inverted_denom =
        |k: u32| -> Result<RatFunc> { Ok(RatFunc::one().sub(&v(Var::Q).pow_i(-i64::from(k))?)) };
    let branch_mix =
        dual.specialize_with(|k| one_plus_a_pow(k).div_checked(&inverted_denom(k)?))?;
    let reference = dual.specialize_with(|k| inverted_denom(k)?.recip())?;
    Ok(lhs == branch_mix.div_checked(&reference)?)
}

/// Average of the characteristic polynomial `⟨Π_l (z - x_l)⟩` over the
/// `N`-site q-lattice ensemble, as a polynomial in the spectral variable `z`
/// with coefficients in `(a, t)`: the expansion into elementary symmetric
/// functions is averaged term by term with `u` bound to `t^N`, and the
/// result is asserted against its closed orthogonal-polynomial form (the
/// degree-`N` member of the two-branch lattice family with base `t`).
pub fn char_poly_average(n: u32) -> Result<RatFunc> {
    let u_at_integer_dimension = BTreeMap::from([(Var::U, v(Var::T).pow_u(n))]);
    let z = v(Var::Z);
    let mut total = RatFunc::zero();
    for k in 0..=n {
        let column = Partition::new(vec![1; k as usize])?;
        let elementary_average =
            macdonald_average(&column)?.substitute(&u_at_integer_dimension)?;
        let term = elementary_average.mul(&z.pow_u(n - k));
        total = if k % 2 == 1 {
            total.sub(&term)
        } else {
            total.add(&term)
        };
    }
    let closed = qseries::al_salam_carlitz_poly(n, &v(Var::A), &z, &v(Var::T))?;
    assert_eq!(
        total, closed,
        "averaged characteristic polynomial must agree with its closed orthogonal-polynomial form"
    );
    Ok(total)
}

/// `2p`-th moment of the `N × N` GUE computed two ways — an alternating
/// binomial sum and the coefficient extraction
/// `(1/2)[y^(p+1)] ((1+y)/(1-y))^N` — asserted equal, scaled back by
/// `(2p-1)!!/2^p`, and returned exactly.
pub fn harer_zagier_moment(p: u32, n: u32) -> Result<BigRational> {
    order_at_least_one(p)?;
    dimension_at_least_one(n)?;
    let two_p = 2 * u64::from(p);
    let dim = u64::from(n);
    let mut alternating = BigInt::zero();
    for s in 0..u64::from(p) {
        let top = dim + two_p - 2 * s - 1;
        let inner = binomial(top, two_p) + binomial(top - 1, two_p);
        let term = binomial(u64::from(p) - 1, s) * inner;
        if s % 2 == 0 {
            alternating += term;
        } else {
            alternating -= term;
        }
    }
    let mut series = BigInt::zero();
    for i in 0..=u64::from(p) + 1 {
        let j = u64::from(p) + 1 - i;
        series += binomial(dim, i) * binomial(dim - 1 + j, j);
    }
    let first = BigRational::from(alternating);
    let second = BigRational::new(series, BigInt::from(2));
    assert_eq!(
        first, second,
        "alternating-sum and coefficient-extraction forms of the scaled moment must agree"
    );
    Ok(first * BigRational::new(double_factorial_odd(p), BigInt::from(2).pow(p)))
}

/// Expands `2^p ·` [`moment_gaussian_beta`]`(p)` in powers of `N`.  Asserts
/// the degree is exactly `p+1` with no constant term, that odd-genus
/// coefficients vanish at `alpha = 1`, and that the leading coefficient at
/// `alpha = 1` is the Catalan number `C_p`.
pub fn topological_expansion(p: u32) -> Result<TopologicalExpansion> {
    order_at_least_one(p)?;
    let scale = RatFunc::rational(BigRational::from(BigInt::from(2).pow(p)));
    let scaled = moment_gaussian_beta(p)?.mul(&scale);
    let by_power = scaled.poly_coeffs_in(Var::N)?;
    assert_eq!(
        by_power.len(),
        (p + 2) as usize,
        "scaled moment must have N-degree exactly p+1"
    );
    assert!(
        by_power[0].is_zero(),
        "scaled moment must vanish at N = 0"
    );
    let mut coefficients = BTreeMap::new();
    for g in 0..=p {
        coefficients.insert(g, by_power[(p + 1 - g) as usize].clone());
    }
    let unit_coupling = BTreeMap::from([(Var::Alpha, RatFunc::one())]);
    for (g, coeff) in &coefficients {
        let at_one = coeff.substitute(&unit_coupling)?;
        if g % 2 == 1 {
            assert!(
                at_one.is_zero(),
                "odd-genus coefficients must vanish at unit coupling"
            );
        } else if *g == 0 {
            assert_eq!(
                at_one,
                RatFunc::rational(catalan(p)),
                "leading coefficient at unit coupling must be the Catalan number"
            );
        }
    }
    Ok(TopologicalExpansion { p, coefficients })
}

/// Compares two symmetric functions through their monomial expansions
/// restricted to partitions with at most `max_parts` parts — equality of
/// symmetric polynomials in `max_parts` variables.
fn monomials_agree_up_to_length(lhs: &SymFunc, rhs: &SymFunc, max_parts: usize) -> bool {
    let left = lhs.monomial_coefficients();
    let right = rhs.monomial_coefficients();
    let zero = RatFunc::zero();
    let keys: BTreeSet<&Partition> = left
        .keys()
        .chain(right.keys())
        .filter(|mu| mu.length() <= max_parts)
        .collect();
    let agree = keys
        .into_iter()
        .all(|mu| left.get(mu).unwrap_or(&zero) == right.get(mu).unwrap_or(&zero));
    agree
}

/// Checks the q-lattice reproducing identity: averaging the hypergeometric
/// kernel `Σ_κ t^{n(κ)} P_κ(x) P_κ(y) / (h'_κ · P_κ(1,…,t^(N-1)))` over the
/// `x`-alphabet term by term must reproduce, degree slice by degree slice,
/// the exponential `Π_r exp((1+a^r) p_r(y) / ((1-q^r) r))` — compared as
/// symmetric polynomials in `N` variables `y`, symbolically in `(a, q, t)`
/// with `u` bound to `t^N`.
pub fn hypergeom_check_qt(degree: u32, n: u32) -> Result<bool> {
    order_at_least_one(degree)?;
    dimension_at_least_one(n)?;
    let u_binding = BTreeMap::from([(Var::U, v(Var::T).pow_u(n))]);
    for d in 0..=degree {
        let mut averaged_kernel = SymFunc::zero(d);
        for kappa in Partition::enumerate(d, Some(n as usize)) {
            let g = symfunc::macdonald(&kappa);
            let principal = g
                .specialize_with(|k| {
                    one_minus_pow(Var::U, k).div_checked(&one_minus_pow(Var::T, k))
                })?
                .substitute(&u_binding)?;
            let average = macdonald_average(&kappa)?.substitute(&u_binding)?;
            let weight = v(Var::T)
                .pow_u(kappa.n_stat())
                .mul(&average)
                .div_checked(&kappa.primed_hook_product_qt().mul(&principal))?;
            averaged_kernel = averaged_kernel.add(&g.scale(&weight));
        }
        let mut exponential = SymFunc::zero(d);
        for mu in Partition::enumerate(d, None) {
            let mut coeff = RatFunc::one();
            for (part, mult) in mu.multiplicities() {
                let per_part = one_plus_a_pow(part).div_checked(
                    &one_minus_pow(Var::Q, part).mul(&RatFunc::int(i64::from(part))),
                )?;
                let symmetry = RatFunc::rational(BigRational::new(
                    BigInt::one(),
                    factorial(mult),
                ));
                coeff = coeff.mul(&per_part.pow_u(mult)).mul(&symmetry);
            }
            exponential = exponential.add(&SymFunc::powersum(&mu).scale(&coeff));
        }
        if !monomials_agree_up_to_length(&averaged_kernel, &exponential, n as usize) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the Gaussian reproducing identity: term-wise exact averaging of
/// the kernel `Σ_κ alpha^{|κ|} P_κ(x) P_κ(y) / (h'_κ · P_κ(1,…,1))` over the
/// `x`-alphabet (weight `e^{-x²/2}` per coordinate, obtained from the
/// unit-coupling-variance integrator by the `beta^{d/2}` rescale of each
/// degree-`d` slice) must reproduce the truncation of `exp(Σ_j y_j²/2)`,
/// compared as symmetric polynomials in `N` variables.  Only couplings
/// `alpha ∈ {1, 1/2}` are supported — those are the ensembles the exact
/// Gaussian integrator covers.
pub fn hypergeom_check_jack(degree: u32, n: u32, alpha: &BigRational) -> Result<bool> {
    order_at_least_one(degree)?;
    dimension_at_least_one(n)?;
    let beta: u32 = if alpha.is_one() {
        2
    } else if *alpha == BigRational::new(BigInt::one(), BigInt::from(2)) {
        4
    } else {
        return Err(Error::Unsupported(
            "exact Gaussian averages require coupling 1 or 1/2".to_string(),
        ));
    };
    let spec = GaussianSpec::new(n, beta)?;
    let alpha_binding = BTreeMap::from([(Var::Alpha, RatFunc::rational(alpha.clone()))]);
    let all_ones = vec![RatFunc::one(); n as usize];
    for d in 0..=degree {
        let weight_rescale = if d % 2 == 0 {
            BigRational::from(BigInt::from(beta).pow(d / 2))
        } else {
            // odd slices average to zero; the rescale is irrelevant
            BigRational::one()
        };
        let mut averaged_kernel = SymFunc::zero(d);
        for kappa in Partition::enumerate(d, Some(n as usize)) {
            let g = symfunc::jack(&kappa).map_coefficients(|c| c.substitute(&alpha_binding))?;
            let average = gaussian_average_exact(&g, &spec)?;
            if average.is_zero() {
                continue;
            }
            let eval_at_ones = g.evaluate_alphabet(&all_ones);
            let hooks = kappa
                .primed_hook_product_alpha()
                .substitute(&alpha_binding)?;
            let coupling_power = RatFunc::rational(rational_pow(alpha, i64::from(d))?);
            let weight = coupling_power
                .mul(&RatFunc::rational(average * &weight_rescale))
                .div_checked(&hooks.mul(&eval_at_ones))?;
            averaged_kernel = averaged_kernel.add(&g.scale(&weight));
        }
        let exponential = if d % 2 == 0 {
            let k = d / 2;
            let pairs = Partition::new(vec![2; k as usize])?;
            let denom = BigInt::from(2).pow(k) * factorial(k);
            SymFunc::powersum(&pairs)
                .scale(&RatFunc::rational(BigRational::new(BigInt::one(), denom)))
        } else {
            SymFunc::zero(d)
        };
        if !monomials_agree_up_to_length(&averaged_kernel, &exponential, n as usize) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the antisymmetry of the equal-parameter lattice moments under
/// parameter inversion.  The identity is stated with the half-integer
/// prefactor `q^(p/2)` on both sides; clearing it leaves the equivalent
/// integer-power form verified here: with `M(q) = moment_qt(p)` at `t = q`
/// and `u` held fixed, `q^p · M(q) = -M(1/q)`.
pub fn odd_inverse_power_check(p: u32) -> Result<bool> {
    order_at_least_one(p)?;
    let equal_parameters =
        moment_qt(p)?.substitute(&BTreeMap::from([(Var::T, v(Var::Q))]))?;
    let inverted =
        equal_parameters.substitute(&BTreeMap::from([(Var::Q, v(Var::Q).recip()?)]))?;
    Ok(v(Var::Q).pow_u(p).mul(&equal_parameters) == inverted.neg())
}
