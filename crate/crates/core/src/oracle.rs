//! Brute-force numeric oracles for the two ensembles, built directly from the
//! densities and sharing no code with the closed-form average formulas: a
//! truncated Jackson-sum evaluator on the two-branch q-lattice, and an exact
//! term-by-term Gaussian integrator for even beta. Agreement between these
//! sums and the formula layer is the strongest evidence the crate produces,
//! precisely because the two routes are independent.
//!
//! Both oracles integrate a polynomial in the ensemble coordinates against a
//! product measure times a polynomial interaction. Expanding the integrand
//! into monomials reduces every average to a contraction
//! `sum_m c_m prod_l M(e_{m,l})` against one-point moment sequences `M`; for
//! the lattice `M(e)` is the weighted one-point Jackson sum of `x^e`, for the
//! Gaussian weight it is the classical even-moment sequence. The contraction
//! is mathematically identical to, and enormously cheaper than, enumerating
//! all coordinate tuples (a direct enumeration is kept in the tests as a
//! reference). All arithmetic is exact big-rational arithmetic; "tolerance"
//! in the consumers of this module refers solely to lattice truncation error,
//! never to rounding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exactalg::{rational_pow, Var};
use crate::qseries::QSeriesContext;
use crate::symfunc::SymFunc;
use crate::{Error, Result};

/// Parameters of the discrete (q,t) ensemble with `t = q^m`: `n` points on the
/// two-branch lattice `{q^i} ∪ {a q^i}`, each branch truncated after `depth`
/// points, carrying the Al-Salam-Carlitz weight and one of the two interaction
/// products (the plain one, or the symmetric variant when `symmetrized`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    /// Lattice base, `0 < q < 1`.
    pub q: BigRational,
    /// Interaction exponent; `t = q^m`.
    pub m: u32,
    /// Second branch scale, `a < 0`.
    pub a: BigRational,
    /// Number of ensemble points (integration variables).
    pub n: u32,
    /// Number of lattice sites kept per branch.
    pub depth: u32,
    /// Use the symmetric interaction product instead of the plain one.
    pub symmetrized: bool,
}

impl LatticeSpec {
    pub fn new(
        q: BigRational,
        m: u32,
        a: BigRational,
        n: u32,
        depth: u32,
        symmetrized: bool,
    ) -> Result<LatticeSpec> {
        if !(q.is_positive() && q < BigRational::one()) {
            return Err(Error::InvalidArgument(format!(
                "lattice base must satisfy 0 < q < 1, got {q}"
            )));
        }
        if !a.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "lattice branch scale must satisfy a < 0, got {a}"
            )));
        }
        if m == 0 || n == 0 || depth == 0 {
            return Err(Error::InvalidArgument(
                "lattice spec requires m >= 1, n >= 1 and depth >= 1".into(),
            ));
        }
        Ok(LatticeSpec { q, m, a, n, depth, symmetrized })
    }

    /// The standard numeric point used throughout the test suites:
    /// `(a, q) = (-3/4, 1/2)` at truncation depth 60.
    pub fn default_point(n: u32, m: u32, symmetrized: bool) -> LatticeSpec {
        LatticeSpec::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            m,
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
            n,
            60,
            symmetrized,
        )
        .expect("the standard numeric point is a valid lattice spec")
    }

    /// The deformation parameter `t = q^m`.
    pub fn t(&self) -> BigRational {
        rational_pow(&self.q, i64::from(self.m)).expect("q is nonzero")
    }

    /// Interaction shift exponents `p`, so that the interaction reads
    /// `prod_{i<j} prod_p (x_i - q^p x_j)`. The plain product uses
    /// `p = -(m-1)..=m`; the symmetric variant uses `p = -(m-1)..=(m-1)`
    /// together with one extra unshifted difference (a repeated `p = 0`).
    fn shift_exponents(&self) -> Vec<i64> {
        let m = i64::from(self.m);
        let mut shifts = Vec::new();
        if self.symmetrized {
            shifts.push(0);
        }
        let hi = if self.symmetrized { m - 1 } else { m };
        shifts.extend((1 - m)..=hi);
        shifts
    }
}

/// Sparse polynomial in the `n` concrete ensemble coordinates: the shared
/// integrand representation for both oracles.
#[derive(Debug, Clone)]
struct CoordPoly {
    n: usize,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl CoordPoly {
    fn zero(n: usize) -> CoordPoly {
        CoordPoly { n, terms: BTreeMap::new() }
    }

    fn constant(n: usize, c: BigRational) -> CoordPoly {
        let mut poly = CoordPoly::zero(n);
        if !c.is_zero() {
            poly.terms.insert(vec![0; n], c);
        }
        poly
    }

    fn add_term(&mut self, exps: Vec<u16>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add(&self, rhs: &CoordPoly) -> CoordPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn mul(&self, rhs: &CoordPoly) -> CoordPoly {
        let mut out = CoordPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// `(x_i - s x_j)` as a linear polynomial.
    fn shifted_difference(n: usize, i: usize, j: usize, s: &BigRational) -> CoordPoly {
        let mut out = CoordPoly::zero(n);
        let mut ei = vec![0u16; n];
        ei[i] = 1;
        out.add_term(ei, BigRational::one());
        let mut ej = vec![0u16; n];
        ej[j] = 1;
        out.add_term(ej, -s);
        out
    }

    /// The k-th power sum of the coordinates.
    fn power_sum(n: usize, k: u16) -> CoordPoly {
        let mut out = CoordPoly::zero(n);
        for l in 0..n {
            let mut exps = vec![0u16; n];
            exps[l] = k;
            out.add_term(exps, BigRational::one());
        }
        out
    }

    fn max_exponent(&self) -> u16 {
        self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0)
    }

    /// Integrate against a product measure via its one-point moment sequence:
    /// `sum_m c_m prod_l moments[e_{m,l}]`.
    fn contract(&self, moments: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for &e in exps {
                term *= &moments[e as usize];
            }
            total += term;
        }
        total
    }
}

/// Expand a power-sum-basis symmetric function into `n` coordinates, with its
/// coefficients evaluated at the given variable binding.
fn symfunc_to_coords(
    f: &SymFunc,
    n: usize,
    bind: &BTreeMap<Var, BigRational>,
) -> Result<CoordPoly> {
    let mut out = CoordPoly::zero(n);
    for (kappa, coeff) in f.terms() {
        let c = coeff.eval_numeric(bind)?;
        if c.is_zero() {
            continue;
        }
        let mut term = CoordPoly::constant(n, c);
        for &k in kappa.parts() {
            term = term.mul(&CoordPoly::power_sum(n, k as u16));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// One lattice site, kept in two forms: the exact coordinate with its
/// one-point Jackson mass `(1-q) q^i (-a)^{[second branch]} w(x)` (`w` the
/// Al-Salam-Carlitz weight), and the structural form `(branch, i)` used for
/// pure-integer sign analysis of interaction factors.
struct LatticeSite {
    value: BigRational,
    base_mass: BigRational,
    second_branch: bool,
    exponent: i64,
}

fn lattice_sites(spec: &LatticeSpec) -> Result<Vec<LatticeSite>> {
    let ctx = QSeriesContext::new(spec.depth as usize);
    let one_minus_q = BigRational::one() - &spec.q;
    let mut sites = Vec::with_capacity(2 * spec.depth as usize);
    for second_branch in [false, true] {
        let mut q_pow = BigRational::one();
        for i in 0..spec.depth {
            let value = if second_branch { &spec.a * &q_pow } else { q_pow.clone() };
            let weight = ctx.al_salam_carlitz_weight(&value, &spec.a, &spec.q)?;
            let branch_scale =
                if second_branch { -spec.a.clone() } else { BigRational::one() };
            let base_mass = &one_minus_q * &q_pow * branch_scale * weight;
            if !base_mass.is_positive() {
                return Err(Error::NegativeMass);
            }
            sites.push(LatticeSite {
                value,
                base_mass,
                second_branch,
                exponent: i64::from(i),
            });
            q_pow *= &spec.q;
        }
    }
    Ok(sites)
}

/// Verifies, by exhaustive integer-only enumeration, that no coordinate tuple
/// carries a negative mass: the one-point masses are strictly positive, and
/// every interaction factor `x_i - q^p x_j` between the signed q-power sites
/// has a sign determined by branch membership and exponent comparison alone.
/// Tuples where a factor vanishes (coincident or q-shifted coordinates) are
/// legal and simply carry zero mass.
fn verify_mass_signs(spec: &LatticeSpec, sites: &[LatticeSite]) -> Result<()> {
    let shifts = spec.shift_exponents();
    let n = spec.n as usize;
    let coords: Vec<(bool, i64)> =
        sites.iter().map(|s| (s.second_branch, s.exponent)).collect();
    (0..coords.len()).into_par_iter().try_for_each(|first| {
        let mut idx = vec![0usize; n];
        idx[0] = first;
        loop {
            let mut negative = false;
            'tuple: for i in 0..n {
                let (branch_i, exp_i) = coords[idx[i]];
                for j in (i + 1)..n {
                    let (branch_j, exp_j) = coords[idx[j]];
                    for &p in &shifts {
                        if branch_i == branch_j {
                            // Same sign: compare |x_i| = q^{exp_i} against
                            // q^{p + exp_j}; the smaller exponent wins, and
                            // the second branch flips the sign.
                            let rel = exp_i - (p + exp_j);
                            if rel == 0 {
                                // A vanishing factor: the tuple mass is zero.
                                negative = false;
                                break 'tuple;
                            }
                            if (rel > 0) != branch_i {
                                negative = !negative;
                            }
                        } else if branch_i {
                            // Negative coordinate minus positive one.
                            negative = !negative;
                        }
                        // Positive minus negative: always a positive factor.
                    }
                }
            }
            if negative {
                return Err(Error::NegativeMass);
            }
            let mut pos = n - 1;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                idx[pos] += 1;
                if idx[pos] < coords.len() {
                    break;
                }
                idx[pos] = 0;
                pos -= 1;
            }
        }
    })
}

/// The interaction `prod_{i<j} prod_p (x_i - q^p x_j)` as a coordinate
/// polynomial.
fn lattice_interaction(spec: &LatticeSpec) -> Result<CoordPoly> {
    let n = spec.n as usize;
    let mut shift_values = Vec::new();
    for p in spec.shift_exponents() {
        shift_values.push(rational_pow(&spec.q, p)?);
    }
    let mut interaction = CoordPoly::constant(n, BigRational::one());
    for i in 0..n {
        for j in (i + 1)..n {
            for s in &shift_values {
                interaction = interaction.mul(&CoordPoly::shifted_difference(n, i, j, s));
            }
        }
    }
    Ok(interaction)
}

/// One-point lattice moments `M(e) = sum over sites of mass * x^e` for
/// `e <= max_e`.
fn lattice_moments(sites: &[LatticeSite], max_e: u16) -> Vec<BigRational> {
    let powers: Vec<Vec<BigRational>> = sites
        .par_iter()
        .map(|site| {
            let mut row = Vec::with_capacity(max_e as usize + 1);
            row.push(site.base_mass.clone());
            for e in 1..=max_e as usize {
                row.push(&row[e - 1] * &site.value);
            }
            row
        })
        .collect();
    (0..=max_e as usize)
        .into_par_iter()
        .map(|e| powers.iter().map(|row| &row[e]).sum())
        .collect()
}

/// Weighted and total Jackson sums over all truncated-lattice tuples:
/// `(sum of mass * f, sum of mass)`, computed exactly by monomial contraction
/// against the one-point moments. Any strictly negative tuple mass aborts
/// with [`Error::NegativeMass`].
fn lattice_sums(f: Option<&SymFunc>, spec: &LatticeSpec) -> Result<(BigRational, BigRational)> {
    let sites = lattice_sites(spec)?;
    verify_mass_signs(spec, &sites)?;
    let interaction = lattice_interaction(spec)?;
    let integrand = match f {
        Some(f) => {
            let bind: BTreeMap<Var, BigRational> = [
                (Var::Q, spec.q.clone()),
                (Var::T, spec.t()),
                (Var::A, spec.a.clone()),
            ]
            .into_iter()
            .collect();
            interaction.mul(&symfunc_to_coords(f, spec.n as usize, &bind)?)
        }
        None => interaction.clone(),
    };
    let moments =
        lattice_moments(&sites, interaction.max_exponent().max(integrand.max_exponent()));
    Ok((integrand.contract(&moments), interaction.contract(&moments)))
}

/// The lattice-ensemble average of a symmetric function: the mass-weighted
/// Jackson sum of `f` over all tuples, divided by the total mass. Coefficients
/// of `f` may involve the variables q, t, a; they are evaluated at the spec's
/// numbers.
pub fn jackson_average(f: &SymFunc, spec: &LatticeSpec) -> Result<BigRational> {
    let (weighted, total) = lattice_sums(Some(f), spec)?;
    if total.is_zero() {
        return Err(Error::InvalidArgument(
            "lattice carries no mass at this truncation depth".into(),
        ));
    }
    Ok(weighted / total)
}

/// The unnormalized total lattice mass (the truncated Jackson sum of the bare
/// density), to be compared against [`lattice_normalization`].
pub fn jackson_total_mass(spec: &LatticeSpec) -> Result<BigRational> {
    let (_, total) = lattice_sums(None, spec)?;
    Ok(total)
}

/// Closed product form of the total mass of the plain (unsymmetrized) lattice
/// density:
///
/// `(1-q)^n (-a)^{m n(n-1)/2} t^{m C(n,3) - (m-1)/2 C(n,2)}
///  prod_{l=1}^{n} (q;q)_{ml} / (q;q)_m`,
///
/// where the t-power is evaluated as the integer q-power
/// `m^2 C(n,3) - m(m-1)/2 C(n,2)`.
pub fn lattice_normalization(spec: &LatticeSpec) -> Result<BigRational> {
    let n = i64::from(spec.n);
    let m = i64::from(spec.m);
    let choose2 = n * (n - 1) / 2;
    let choose3 = n * (n - 1) * (n - 2) / 6;
    let q_exponent = m * m * choose3 - m * (m - 1) / 2 * choose2;

    let mut result = rational_pow(&(BigRational::one() - &spec.q), n)?;
    result *= rational_pow(&-spec.a.clone(), m * choose2)?;
    result *= rational_pow(&spec.q, q_exponent)?;
    let finite_poch = |count: i64| -> BigRational {
        let mut prod = BigRational::one();
        let mut q_pow = spec.q.clone();
        for _ in 0..count {
            prod *= BigRational::one() - &q_pow;
            q_pow *= &spec.q;
        }
        prod
    };
    let poch_m = finite_poch(m);
    for l in 1..=n {
        result *= finite_poch(m * l) / &poch_m;
    }
    Ok(result)
}

/// Checks that the plain and symmetric interaction products give the same
/// average of a symmetric function, to relative tolerance 10^-9.
pub fn kadell_equivalence_check(f: &SymFunc, spec: &LatticeSpec) -> Result<bool> {
    let plain = jackson_average(f, &LatticeSpec { symmetrized: false, ..spec.clone() })?;
    let symmetric = jackson_average(f, &LatticeSpec { symmetrized: true, ..spec.clone() })?;
    Ok(relative_close(&plain, &symmetric, &truncation_tolerance()))
}

/// The relative tolerance 10^-9 used wherever truncated lattice sums are
/// compared against closed forms.
pub fn truncation_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

/// True when `x` equals `reference` to the given relative tolerance
/// (absolute tolerance when the reference vanishes).
pub fn relative_close(x: &BigRational, reference: &BigRational, tol: &BigRational) -> bool {
    let diff = (x - reference).abs();
    if reference.is_zero() {
        diff <= *tol
    } else {
        diff <= tol * reference.abs()
    }
}

/// Parameters of the continuous Gaussian ensemble with interaction exponent
/// `beta` and weight `exp(-beta x^2 / 2)` per point. Restricted to even
/// `beta` in {2, 4} so the interaction is polynomial and integrals reduce to
/// Gaussian moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianSpec {
    /// Number of ensemble points.
    pub n: u32,
    /// Interaction exponent.
    pub beta: u32,
}

impl GaussianSpec {
    pub fn new(n: u32, beta: u32) -> Result<GaussianSpec> {
        if n == 0 {
            return Err(Error::InvalidArgument("ensemble size n must be >= 1".into()));
        }
        if beta != 2 && beta != 4 {
            return Err(Error::Unsupported(format!(
                "exact Gaussian integration requires beta in {{2, 4}}, got {beta}"
            )));
        }
        Ok(GaussianSpec { n, beta })
    }

    /// The coupling `alpha = 2/beta` at which symmetric-function coefficients
    /// are evaluated.
    pub fn alpha(&self) -> BigRational {
        BigRational::new(BigInt::from(2), BigInt::from(self.beta))
    }
}

/// `prod_{i<j} (x_i - x_j)^beta` as a coordinate polynomial.
fn gaussian_interaction(n: usize, beta: u32) -> CoordPoly {
    let mut interaction = CoordPoly::constant(n, BigRational::one());
    for i in 0..n {
        for j in (i + 1)..n {
            let difference = CoordPoly::shifted_difference(n, i, j, &BigRational::one());
            for _ in 0..beta {
                interaction = interaction.mul(&difference);
            }
        }
    }
    interaction
}

/// One-point moments of the weight `exp(-beta x^2/2)` with the overall
/// `sqrt(2 pi / beta)` removed: `M(e) = (e-1)!! beta^{-e/2}` for even `e`,
/// zero for odd `e`.
fn gaussian_moments(beta: u32, max_e: u16) -> Vec<BigRational> {
    let mut moments = Vec::with_capacity(max_e as usize + 1);
    moments.push(BigRational::one());
    let beta_big = BigInt::from(beta);
    let mut double_factorial = BigInt::one();
    for e in 1..=i64::from(max_e) {
        if e % 2 != 0 {
            moments.push(BigRational::zero());
        } else {
            double_factorial *= e - 1;
            moments.push(BigRational::new(
                double_factorial.clone(),
                beta_big.pow((e / 2) as u32),
            ));
        }
    }
    moments
}

/// Exact ensemble average of a symmetric function against the density
/// `prod_{i<j} |x_i - x_j|^beta prod_l exp(-beta x_l^2/2)`: the ratio of two
/// term-by-term Gaussian integrals (the shared normalisation cancels).
/// Coefficients of `f` may involve alpha; they are evaluated at `2/beta`.
pub fn gaussian_average_exact(f: &SymFunc, spec: &GaussianSpec) -> Result<BigRational> {
    let n = spec.n as usize;
    let interaction = gaussian_interaction(n, spec.beta);
    let bind: BTreeMap<Var, BigRational> = [(Var::Alpha, spec.alpha())].into_iter().collect();
    let integrand = interaction.mul(&symfunc_to_coords(f, n, &bind)?);
    let moments = gaussian_moments(
        spec.beta,
        interaction.max_exponent().max(integrand.max_exponent()),
    );
    Ok(integrand.contract(&moments) / interaction.contract(&moments))
}

/// Checks the closed product form of the Gaussian normalisation constant:
/// with the common factor `(2 pi / beta)^{n/2}` removed from both sides, the
/// exact raw integral of the interaction must equal
/// `beta^{-beta n(n-1)/4} prod_{j=0}^{n-1} ((j+1) beta/2)! / (beta/2)!`
/// as a rational number.
pub fn gaussian_partition_check(spec: &GaussianSpec) -> Result<bool> {
    let interaction = gaussian_interaction(spec.n as usize, spec.beta);
    let moments = gaussian_moments(spec.beta, interaction.max_exponent());
    let raw = interaction.contract(&moments);

    let factorial = |k: u32| -> BigInt {
        let mut prod = BigInt::one();
        for i in 2..=i64::from(k) {
            prod *= i;
        }
        prod
    };
    let half_beta = spec.beta / 2;
    let exponent = spec.beta * spec.n * (spec.n - 1) / 4;
    let mut closed_form =
        BigRational::new(BigInt::one(), BigInt::from(spec.beta).pow(exponent));
    let base = factorial(half_beta);
    for j in 0..spec.n {
        closed_form *= BigRational::new(factorial((j + 1) * half_beta), base.clone());
    }
    Ok(raw == closed_form)
}

#[cfg(test)]
mod tests {
    use num_traits::ToPrimitive;

    use super::*;
    use crate::partitions::Partition;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn p_func(parts: &[u32]) -> SymFunc {
        SymFunc::powersum(&part(parts))
    }

    #[test]
    fn lattice_spec_rejects_bad_parameters() {
        let q = ratio(1, 2);
        let a = ratio(-3, 4);
        assert!(matches!(
            LatticeSpec::new(ratio(3, 2), 1, a.clone(), 1, 10, false),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            LatticeSpec::new(q.clone(), 1, ratio(3, 4), 1, 10, false),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            LatticeSpec::new(q.clone(), 0, a.clone(), 1, 10, false),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            LatticeSpec::new(q, 1, a, 1, 0, false),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn gaussian_spec_rejects_odd_beta() {
        assert!(matches!(GaussianSpec::new(2, 3), Err(Error::Unsupported(_))));
        assert!(matches!(GaussianSpec::new(2, 1), Err(Error::Unsupported(_))));
        assert!(GaussianSpec::new(2, 2).is_ok());
        assert!(GaussianSpec::new(2, 4).is_ok());
    }

    /// Direct tuple-by-tuple reference evaluation of the Jackson sums: the
    /// transparent transcription of the density, affordable only on tiny
    /// lattices. The monomial contraction must reproduce it exactly.
    fn brute_force_sums(f: &SymFunc, spec: &LatticeSpec) -> (BigRational, BigRational) {
        let sites = lattice_sites(spec).unwrap();
        let shifts = spec.shift_exponents();
        let bind: BTreeMap<Var, BigRational> = [
            (Var::Q, spec.q.clone()),
            (Var::T, spec.t()),
            (Var::A, spec.a.clone()),
        ]
        .into_iter()
        .collect();
        let n = spec.n as usize;
        let mut weighted = BigRational::zero();
        let mut total = BigRational::zero();
        let mut idx = vec![0usize; n];
        'outer: loop {
            let mut mass = BigRational::one();
            for l in &idx {
                mass *= &sites[*l].base_mass;
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    for &p in &shifts {
                        let shift = rational_pow(&spec.q, p).unwrap();
                        mass *= &sites[idx[i]].value - shift * &sites[idx[j]].value;
                    }
                }
            }
            assert!(!mass.is_negative(), "negative tuple mass");
            let mut f_val = BigRational::zero();
            for (kappa, coeff) in f.terms() {
                let mut term = coeff.eval_numeric(&bind).unwrap();
                for &k in kappa.parts() {
                    let psum: BigRational = idx
                        .iter()
                        .map(|&l| rational_pow(&sites[l].value, i64::from(k)).unwrap())
                        .sum();
                    term *= psum;
                }
                f_val += term;
            }
            weighted += &mass * f_val;
            total += mass;
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < sites.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        (weighted, total)
    }

    #[test]
    fn contraction_equals_direct_tuple_enumeration() {
        for (m, symmetrized) in [(1, false), (2, false), (2, true)] {
            let spec =
                LatticeSpec::new(ratio(1, 2), m, ratio(-3, 4), 2, 5, symmetrized).unwrap();
            let f = p_func(&[2, 1]);
            let (weighted, total) = lattice_sums(Some(&f), &spec).unwrap();
            let (weighted_ref, total_ref) = brute_force_sums(&f, &spec);
            assert_eq!(weighted, weighted_ref, "m={m} symmetrized={symmetrized}");
            assert_eq!(total, total_ref, "m={m} symmetrized={symmetrized}");
        }
    }

    #[test]
    fn base_masses_are_positive_and_tuple_masses_nonnegative() {
        // The sums abort on any negative mass, so completing is the test.
        for m in [1, 2] {
            let spec = LatticeSpec::new(ratio(1, 2), m, ratio(-3, 4), 3, 8, false).unwrap();
            assert!(jackson_total_mass(&spec).unwrap().is_positive());
            let spec = LatticeSpec { symmetrized: true, ..spec };
            assert!(jackson_total_mass(&spec).unwrap().is_positive());
        }
    }

    #[test]
    fn average_of_one_is_exactly_one() {
        let spec = LatticeSpec::new(ratio(1, 2), 1, ratio(-3, 4), 2, 12, false).unwrap();
        assert_eq!(jackson_average(&SymFunc::one(), &spec).unwrap(), BigRational::one());
    }

    #[test]
    fn single_point_first_moment_is_one_plus_a() {
        // For one lattice point the first moment collapses to 1 + a,
        // independently of m.
        let expected = ratio(1, 4);
        for m in [1, 2] {
            let spec = LatticeSpec::default_point(1, m, false);
            let avg = jackson_average(&p_func(&[1]), &spec).unwrap();
            assert!(
                relative_close(&avg, &expected, &truncation_tolerance()),
                "m={m}: got {avg}"
            );
        }
    }

    #[test]
    fn two_point_second_moment_matches_closed_form() {
        // Second moment at n=2, m=2 against the closed form
        //   (1-u)/(t(1-t^2)) * ((1+a^2) t + u (t + a (1 + q + (1+a+q) t)))
        // evaluated at u = t^2 with (a,q) = (-3/4, 1/2), t = 1/4.
        let a = ratio(-3, 4);
        let q = ratio(1, 2);
        let t = ratio(1, 4);
        let u = &t * &t;
        let one = BigRational::one();
        let prefactor = (&one - &u) / (&t * (&one - &t * &t));
        let inner = &t + &a * (&one + &q + (&one + &a + &q) * &t);
        let expected = prefactor * ((&one + &a * &a) * &t + &u * inner);

        let spec = LatticeSpec::default_point(2, 2, false);
        let avg = jackson_average(&p_func(&[2]), &spec).unwrap();
        assert!(
            relative_close(&avg, &expected, &truncation_tolerance()),
            "got {avg}, expected {expected}"
        );
    }

    #[test]
    fn total_mass_matches_normalization_product() {
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let spec = LatticeSpec::default_point(n, m, false);
            let mass = jackson_total_mass(&spec).unwrap();
            let closed = lattice_normalization(&spec).unwrap();
            assert!(
                relative_close(&mass, &closed, &truncation_tolerance()),
                "n={n} m={m}: mass {mass} vs closed form {closed}"
            );
        }
    }

    #[test]
    fn normalization_at_one_point_is_one_minus_q() {
        let spec = LatticeSpec::default_point(1, 2, false);
        assert_eq!(lattice_normalization(&spec).unwrap(), ratio(1, 2));
    }

    #[test]
    fn symmetric_and_plain_interactions_agree_on_symmetric_functions() {
        for m in [1, 2] {
            let spec = LatticeSpec::default_point(2, m, false);
            for f in [p_func(&[1]), p_func(&[2]), p_func(&[1, 1])] {
                assert!(kadell_equivalence_check(&f, &spec).unwrap(), "m={m}");
            }
        }
    }

    #[test]
    fn doubling_depth_moves_the_average_less_than_the_tail_bound() {
        let shallow = LatticeSpec::new(ratio(1, 2), 1, ratio(-3, 4), 1, 20, false).unwrap();
        let deep = LatticeSpec { depth: 40, ..shallow.clone() };
        let f = p_func(&[2]);
        let at_shallow = jackson_average(&f, &shallow).unwrap();
        let at_deep = jackson_average(&f, &deep).unwrap();
        let change = ((&at_shallow - &at_deep) / &at_deep).abs();
        let bound = rational_pow(&ratio(1, 2), 10).unwrap();
        assert!(change < bound, "change {} exceeds q^(depth/2) = {bound}", change);
    }

    #[test]
    fn gaussian_second_moment_examples() {
        let f = p_func(&[2]);
        let one_dim = GaussianSpec::new(1, 2).unwrap();
        assert_eq!(gaussian_average_exact(&f, &one_dim).unwrap(), ratio(1, 2));
        let two_dim = GaussianSpec::new(2, 2).unwrap();
        assert_eq!(gaussian_average_exact(&f, &two_dim).unwrap(), ratio(2, 1));
        let two_dim_quartic = GaussianSpec::new(2, 4).unwrap();
        assert_eq!(gaussian_average_exact(&f, &two_dim_quartic).unwrap(), ratio(3, 2));
    }

    #[test]
    fn gaussian_odd_degree_averages_vanish() {
        for beta in [2, 4] {
            for n in [1, 2, 3] {
                let spec = GaussianSpec::new(n, beta).unwrap();
                for f in [p_func(&[1]), p_func(&[3]), p_func(&[2, 1])] {
                    assert_eq!(
                        gaussian_average_exact(&f, &spec).unwrap(),
                        BigRational::zero(),
                        "odd degree should vanish at n={n}, beta={beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn gaussian_normalization_product_form_holds() {
        for beta in [2, 4] {
            for n in [1, 2, 3] {
                let spec = GaussianSpec::new(n, beta).unwrap();
                assert!(
                    gaussian_partition_check(&spec).unwrap(),
                    "normalisation mismatch at n={n}, beta={beta}"
                );
            }
        }
    }

    #[test]
    fn gaussian_fourth_moment_consistency() {
        // <p_4> at n=1 is 3/beta^2: the fourth moment of exp(-beta x^2/2).
        let f = p_func(&[4]);
        let spec = GaussianSpec::new(1, 2).unwrap();
        assert_eq!(gaussian_average_exact(&f, &spec).unwrap(), ratio(3, 4));
        let spec = GaussianSpec::new(1, 4).unwrap();
        assert_eq!(gaussian_average_exact(&f, &spec).unwrap(), ratio(3, 16));
    }

    #[test]
    fn lattice_average_handles_coefficients_in_q_t_a() {
        // A coefficient depending on q, t, a must be evaluated at the spec's
        // numbers: average of ((1+a)/(1-t)) * p_1 at n=1 equals the constant
        // times (1+a).
        use crate::exactalg::RatFunc;
        let coeff: RatFunc = "(1+a)/(1-t)".parse().unwrap();
        let f = p_func(&[1]).scale(&coeff);
        let spec = LatticeSpec::default_point(1, 1, false);
        // t = 1/2, a = -3/4: coefficient is (1/4)/(1/2) = 1/2; average of p_1
        // is 1 + a = 1/4.
        let expected = ratio(1, 8);
        let avg = jackson_average(&f, &spec).unwrap();
        assert!(relative_close(&avg, &expected, &truncation_tolerance()), "got {avg}");
    }

    #[test]
    fn unbound_coefficient_variables_are_reported() {
        use crate::exactalg::RatFunc;
        let f = p_func(&[1]).scale(&RatFunc::var(Var::Alpha));
        let spec = LatticeSpec::default_point(1, 1, false);
        assert!(matches!(
            jackson_average(&f, &spec),
            Err(Error::UnboundVariable(Var::Alpha))
        ));
    }

    #[test]
    fn truncation_tolerance_is_one_part_in_a_billion() {
        assert_eq!(truncation_tolerance().to_f64().unwrap(), 1e-9);
    }
}
