//! Basic q-series building blocks: finite q-Pochhammer symbols, q-binomial
//! coefficients, the (truncated) q-exponential, and the Al-Salam-Carlitz
//! orthogonal polynomial family together with its weight function.
//!
//! Symbolic quantities are [`RatFunc`]s so they can be formed in any of the
//! ambient variables (the Al-Salam-Carlitz polynomials, for instance, are
//! needed both with base `q` and with base `t`). Numeric quantities are exact
//! `BigRational`s; infinite products and sums are truncated at the depth
//! carried by a [`QSeriesContext`], which for bases `0 < q < 1` converges
//! geometrically.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::exactalg::{rational_pow, RatFunc};
use crate::{Error, Result};

/// The finite q-Pochhammer symbol `(x; q)_n = prod_{k=0}^{n-1} (1 - x q^k)`.
pub fn q_pochhammer_finite(x: &RatFunc, q: &RatFunc, n: u32) -> RatFunc {
    let mut prod = RatFunc::one();
    let mut xqk = x.clone();
    for _ in 0..n {
        prod = prod.mul(&(RatFunc::one() - &xqk));
        xqk = xqk.mul(q);
    }
    prod
}

/// The q-binomial coefficient `[n choose k]_q` as a polynomial in `q`
/// (zero when `k > n`).
pub fn q_binomial(n: u32, k: u32, q: &RatFunc) -> RatFunc {
    if k > n {
        return RatFunc::zero();
    }
    let top = q_pochhammer_finite(q, q, n);
    let bottom = q_pochhammer_finite(q, q, k).mul(&q_pochhammer_finite(q, q, n - k));
    top.div_checked(&bottom)
        .expect("finite q-Pochhammer symbols in the base itself are nonzero")
}

/// The Al-Salam-Carlitz polynomial of degree `n`, monic in `z`:
///
/// `U_n = (-1)^n q^{n(n-1)/2} sum_{l=0}^{n} a^{n-l} q^l
///        (q^{-n}; q)_l / (q; q)_l * prod_{k=0}^{l-1} (z - q^k)`.
///
/// The arguments are symbolic so the family can be instantiated in any base
/// (for example with the roles of `q` played by `t`).
pub fn al_salam_carlitz_poly(n: u32, a: &RatFunc, z: &RatFunc, q: &RatFunc) -> Result<RatFunc> {
    let mut sum = RatFunc::zero();
    // Running factors, updated once per l: a^{n-l} descends, the rest grow.
    let mut q_neg_n_poch = RatFunc::one(); // (q^{-n}; q)_l
    let mut q_poch = RatFunc::one(); // (q; q)_l
    let mut root_prod = RatFunc::one(); // prod_{k<l} (z - q^k)
    let mut q_pow_l = RatFunc::one(); // q^l
    for l in 0..=n {
        if l > 0 {
            let k = i64::from(l) - 1;
            q_neg_n_poch = q_neg_n_poch.mul(&(RatFunc::one() - q.pow_i(k - i64::from(n))?));
            q_poch = q_poch.mul(&(RatFunc::one() - q.pow_u(l)));
            root_prod = root_prod.mul(&(z - &q.pow_u(l - 1)));
            q_pow_l = q_pow_l.mul(q);
        }
        let term = a
            .pow_u(n - l)
            .mul(&q_pow_l)
            .mul(&q_neg_n_poch)
            .div_checked(&q_poch)?
            .mul(&root_prod);
        sum = sum.add(&term);
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(RatFunc::int(sign).mul(&q.pow_u(n * (n.saturating_sub(1)) / 2)).mul(&sum))
}

/// Truncation context for numerically evaluated infinite q-products and
/// q-series. With `0 < q < 1` the tail terms decay like `q^depth`, so the
/// default depth of 60 leaves errors far below any tolerance used in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QSeriesContext {
    pub truncation_depth: usize,
}

impl Default for QSeriesContext {
    fn default() -> Self {
        QSeriesContext { truncation_depth: 60 }
    }
}

impl QSeriesContext {
    pub fn new(truncation_depth: usize) -> Self {
        QSeriesContext { truncation_depth }
    }

    fn check_base(q: &BigRational) -> Result<()> {
        if !(q.is_positive() && q < &BigRational::one()) {
            return Err(Error::InvalidArgument(format!(
                "q-series base must satisfy 0 < q < 1, got {q}"
            )));
        }
        Ok(())
    }

    /// The infinite q-Pochhammer symbol `(x; q)_inf`, truncated at the
    /// context depth. Requires `0 < q < 1`.
    pub fn q_pochhammer_infinite(&self, x: &BigRational, q: &BigRational) -> Result<BigRational> {
        Self::check_base(q)?;
        let mut prod = BigRational::one();
        let mut xqk = x.clone();
        for _ in 0..self.truncation_depth {
            prod *= BigRational::one() - &xqk;
            xqk *= q;
        }
        Ok(prod)
    }

    /// The q-exponential `e_q(x) = sum_{n>=0} x^n / (q; q)_n`, truncated at
    /// the context depth. For `|x| < 1` it equals `1 / (x; q)_inf`.
    pub fn q_exponential(&self, x: &BigRational, q: &BigRational) -> Result<BigRational> {
        Self::check_base(q)?;
        let mut sum = BigRational::one();
        let mut x_pow = BigRational::one();
        let mut poch = BigRational::one();
        let mut qn = q.clone();
        for _ in 1..=self.truncation_depth {
            x_pow *= x;
            poch *= BigRational::one() - &qn;
            qn *= q;
            sum += &x_pow / &poch;
        }
        Ok(sum)
    }

    /// The normalized Al-Salam-Carlitz weight
    ///
    /// `w(x) = (qx; q)_inf (qx/a; q)_inf / [(q; q)_inf (a; q)_inf (q/a; q)_inf]`
    ///
    /// for parameters `a < 0 < q < 1`, truncated at the context depth.
    pub fn al_salam_carlitz_weight(
        &self,
        x: &BigRational,
        a: &BigRational,
        q: &BigRational,
    ) -> Result<BigRational> {
        Self::check_base(q)?;
        if !a.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "Al-Salam-Carlitz weight requires a < 0, got {a}"
            )));
        }
        let qx = q * x;
        let num = self.q_pochhammer_infinite(&qx, q)? * self.q_pochhammer_infinite(&(&qx / a), q)?;
        let den = self.q_pochhammer_infinite(q, q)?
            * self.q_pochhammer_infinite(a, q)?
            * self.q_pochhammer_infinite(&(q / a), q)?;
        Ok(num / den)
    }
}

/// Exact rational power `x^k` for possibly negative `k`.
pub fn big_rational_pow(x: &BigRational, k: i64) -> Result<BigRational> {
    rational_pow(x, k)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;

    use super::*;
    use crate::exactalg::Var;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn finite_pochhammer_expansions() {
        let q = RatFunc::var(Var::Q);
        let u = RatFunc::var(Var::U);
        assert_eq!(q_pochhammer_finite(&u, &q, 0), RatFunc::one());
        assert_eq!(
            q_pochhammer_finite(&u, &q, 3),
            rf("(1-u)*(1-u*q)*(1-u*q^2)")
        );
        // (q; q)_3 expanded.
        assert_eq!(
            q_pochhammer_finite(&q, &q, 3),
            rf("(1-q)*(1-q^2)*(1-q^3)")
        );
    }

    #[test]
    fn q_binomials_are_the_classical_polynomials() {
        let q = RatFunc::var(Var::Q);
        assert_eq!(q_binomial(4, 2, &q), rf("1+q+2*q^2+q^3+q^4"));
        assert_eq!(q_binomial(5, 0, &q), RatFunc::one());
        assert_eq!(q_binomial(3, 5, &q), RatFunc::zero());
        // Symmetry and the q-Pascal rule [n k] = q^k [n-1 k] + [n-1 k-1].
        for n in 1..=6u32 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k, &q), q_binomial(n, n - k, &q));
                if k >= 1 {
                    let rhs = q
                        .pow_u(k)
                        .mul(&q_binomial(n - 1, k, &q))
                        .add(&q_binomial(n - 1, k - 1, &q));
                    assert_eq!(q_binomial(n, k, &q), rhs, "q-Pascal fails at ({n},{k})");
                }
                // Counting check at q = 1.
                let at_one = q_binomial(n, k, &q)
                    .eval_numeric(&BTreeMap::from([(Var::Q, BigRational::one())]))
                    .unwrap();
                let fact = |m: u32| (1..=u64::from(m)).product::<u64>();
                let binom = fact(n) / (fact(k) * fact(n - k));
                assert_eq!(at_one, BigRational::from_integer(BigInt::from(binom)));
            }
        }
    }

    #[test]
    fn al_salam_carlitz_low_degrees() {
        let a = RatFunc::var(Var::A);
        let z = RatFunc::var(Var::Z);
        let q = RatFunc::var(Var::Q);
        let u0 = al_salam_carlitz_poly(0, &a, &z, &q).unwrap();
        let u1 = al_salam_carlitz_poly(1, &a, &z, &q).unwrap();
        let u2 = al_salam_carlitz_poly(2, &a, &z, &q).unwrap();
        assert_eq!(u0, RatFunc::one());
        assert_eq!(u1, rf("z-1-a"));
        assert_eq!(u2, rf("z^2-(1+a)*(1+q)*z+q+a+a*q+a^2*q"));
    }

    #[test]
    fn al_salam_carlitz_satisfies_three_term_recurrence() {
        // U_{n+1} = (z - (1+a) q^n) U_n + a q^{n-1} (1 - q^n) U_{n-1}.
        let a = RatFunc::var(Var::A);
        let z = RatFunc::var(Var::Z);
        let q = RatFunc::var(Var::Q);
        let us: Vec<RatFunc> = (0..=6)
            .map(|n| al_salam_carlitz_poly(n, &a, &z, &q).unwrap())
            .collect();
        for n in 1..=5usize {
            let lhs = &us[n + 1];
            let rhs = (&z - &(RatFunc::one() + &a).mul(&q.pow_u(n as u32)))
                .mul(&us[n])
                .add(
                    &a.mul(&q.pow_u(n as u32 - 1))
                        .mul(&(RatFunc::one() - q.pow_u(n as u32)))
                        .mul(&us[n - 1]),
                );
            assert_eq!(lhs, &rhs, "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn al_salam_carlitz_is_monic_of_full_degree() {
        let a = RatFunc::var(Var::A);
        let z = RatFunc::var(Var::Z);
        let q = RatFunc::var(Var::Q);
        for n in 0..=6u32 {
            let un = al_salam_carlitz_poly(n, &a, &z, &q).unwrap();
            let coeffs = un.poly_coeffs_in(Var::Z).unwrap();
            assert_eq!(coeffs.len(), n as usize + 1, "degree {n}");
            assert!(coeffs.last().unwrap().is_one(), "leading coefficient at {n}");
        }
    }

    #[test]
    fn al_salam_carlitz_in_another_base() {
        // The same family with the base played by t.
        let a = RatFunc::var(Var::A);
        let z = RatFunc::var(Var::Z);
        let t = RatFunc::var(Var::T);
        let u2 = al_salam_carlitz_poly(2, &a, &z, &t).unwrap();
        assert_eq!(u2, rf("z^2-(1+a)*(1+t)*z+t+a+a*t+a^2*t"));
    }

    #[test]
    fn q_exponential_matches_infinite_product() {
        // e_q(x) = 1 / (x; q)_inf; both sides truncated to depth 60 agree to
        // far better than 1e-12 at x = 1/4, q = 1/2.
        let ctx = QSeriesContext::default();
        let x = ratio(1, 4);
        let q = ratio(1, 2);
        let lhs = ctx.q_exponential(&x, &q).unwrap();
        let rhs = ctx.q_pochhammer_infinite(&x, &q).unwrap().recip();
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(12));
        assert!((lhs - rhs).abs() < tol);
    }

    #[test]
    fn context_rejects_bad_parameters() {
        let ctx = QSeriesContext::default();
        assert!(ctx.q_pochhammer_infinite(&ratio(1, 2), &ratio(3, 2)).is_err());
        assert!(ctx.q_pochhammer_infinite(&ratio(1, 2), &ratio(-1, 2)).is_err());
        assert!(ctx
            .al_salam_carlitz_weight(&ratio(1, 2), &ratio(1, 2), &ratio(1, 2))
            .is_err());
    }

    /// Discrete orthogonality on the two-branch geometric lattice
    /// `{q^i} U {a q^i}`: the Jackson integral of `U_m U_n w` over `[a, 1]`
    /// equals `(-a)^n (1-q) (q; q)_n q^{n(n-1)/2} delta_{mn}`.
    #[test]
    fn al_salam_carlitz_discrete_orthogonality() {
        let ctx = QSeriesContext::default();
        let aq = ratio(-1, 2);
        let qq = ratio(1, 2);
        let a_sym = RatFunc::rational(aq.clone());
        let q_sym = RatFunc::rational(qq.clone());
        let z = RatFunc::var(Var::Z);
        let max_deg = 3u32;
        let us: Vec<RatFunc> = (0..=max_deg)
            .map(|n| al_salam_carlitz_poly(n, &a_sym, &z, &q_sym).unwrap())
            .collect();

        // Lattice points with their Jackson masses (1-q) q^i and
        // (1-q) q^i (-a); the weight is evaluated at each point.
        let mut points: Vec<(BigRational, BigRational)> = Vec::new();
        let one_minus_q = BigRational::one() - &qq;
        let mut qi = BigRational::one();
        for _ in 0..ctx.truncation_depth {
            let w1 = ctx.al_salam_carlitz_weight(&qi, &aq, &qq).unwrap();
            points.push((qi.clone(), &one_minus_q * &qi * &w1));
            let x2 = &aq * &qi;
            let w2 = ctx.al_salam_carlitz_weight(&x2, &aq, &qq).unwrap();
            points.push((x2, &one_minus_q * &qi * (-&aq) * &w2));
            qi *= &qq;
        }

        let eval = |p: &RatFunc, x: &BigRational| -> BigRational {
            p.eval_numeric(&BTreeMap::from([(Var::Z, x.clone())])).unwrap()
        };
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(8));
        for m in 0..=max_deg as usize {
            for n in 0..=max_deg as usize {
                let total: BigRational = points
                    .iter()
                    .map(|(x, mass)| eval(&us[m], x) * eval(&us[n], x) * mass)
                    .sum();
                if m == n {
                    let mut h = big_rational_pow(&-&aq, n as i64).unwrap() * &one_minus_q;
                    let mut qk = qq.clone();
                    for _ in 0..n {
                        h *= BigRational::one() - &qk;
                        qk *= &qq;
                    }
                    h *= big_rational_pow(&qq, (n * (n.max(1) - 1) / 2) as i64).unwrap();
                    assert!(
                        (&total - &h).abs() < &tol * &h,
                        "diagonal mass off at n = {n}: {total} vs {h}"
                    );
                } else {
                    // Compare |total|^2 against the product of the two
                    // diagonal masses to stay in exact arithmetic.
                    assert!(
                        (&total * &total) < tol.clone() * tol.clone(),
                        "off-diagonal ({m},{n}) not vanishing: {total}"
                    );
                }
            }
        }
    }
}
