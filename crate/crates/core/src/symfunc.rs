//! Symmetric functions over the rational-function field, stored in the
//! power-sum basis: basis transitions to monomial symmetric functions, the
//! Jack and Macdonald scalar products, Gram-Schmidt construction of the Jack
//! and Macdonald polynomial families, power-sum automorphisms, and
//! specializations.
//!
//! Everything lives in the symmetric-function ring (the `p_k` are
//! algebraically independent); relations special to a finite alphabet appear
//! only when a function is evaluated or specialized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactalg::{RatFunc, Var};
use crate::partitions::Partition;
use crate::{Error, Result};

/// A homogeneous symmetric function of fixed degree, written in the
/// power-sum basis: a finite sum `sum_kappa c_kappa p_kappa` over partitions
/// of the degree, with `p_kappa = prod_j p_{kappa_j}`. Zero coefficients are
/// never stored, so structural equality is equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    degree: u32,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    /// The zero function of the given degree.
    pub fn zero(degree: u32) -> SymFunc {
        SymFunc { degree, coeffs: BTreeMap::new() }
    }

    /// The constant symmetric function 1 (degree 0).
    pub fn one() -> SymFunc {
        SymFunc::powersum(&Partition::empty())
    }

    /// The power-sum product `p_kappa`.
    pub fn powersum(kappa: &Partition) -> SymFunc {
        SymFunc {
            degree: kappa.size(),
            coeffs: BTreeMap::from([(kappa.clone(), RatFunc::one())]),
        }
    }

    fn from_terms<I>(degree: u32, terms: I) -> SymFunc
    where
        I: IntoIterator<Item = (Partition, RatFunc)>,
    {
        let mut coeffs = BTreeMap::new();
        for (kappa, c) in terms {
            debug_assert_eq!(kappa.size(), degree, "homogeneity violated");
            if !c.is_zero() {
                coeffs.insert(kappa, c);
            }
        }
        SymFunc { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterates over the stored `(partition, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coeffs.iter()
    }

    /// The coefficient of `p_lambda` (zero when absent or of the wrong size).
    pub fn coefficient(&self, lambda: &Partition) -> RatFunc {
        self.coeffs.get(lambda).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        debug_assert_eq!(self.degree, other.degree, "degrees must match");
        let mut coeffs = self.coeffs.clone();
        for (kappa, c) in &other.coeffs {
            let entry = coeffs.entry(kappa.clone()).or_insert_with(RatFunc::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                coeffs.remove(kappa);
            }
        }
        SymFunc { degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&RatFunc::int(-1)))
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale(&self, c: &RatFunc) -> SymFunc {
        SymFunc::from_terms(
            self.degree,
            self.coeffs.iter().map(|(k, v)| (k.clone(), v.mul(c))),
        )
    }

    fn map_coeffs(&self, mut f: impl FnMut(&Partition, &RatFunc) -> RatFunc) -> SymFunc {
        SymFunc::from_terms(
            self.degree,
            self.coeffs.iter().map(|(k, v)| (k.clone(), f(k, v))),
        )
    }

    /// Applies a fallible transformation (such as a variable substitution) to
    /// every coefficient, keeping the partition structure.
    pub fn map_coefficients(
        &self,
        f: impl Fn(&RatFunc) -> Result<RatFunc>,
    ) -> Result<SymFunc> {
        let mut coeffs = BTreeMap::new();
        for (kappa, c) in &self.coeffs {
            let mapped = f(c)?;
            if !mapped.is_zero() {
                coeffs.insert(kappa.clone(), mapped);
            }
        }
        Ok(SymFunc { degree: self.degree, coeffs })
    }

    // -----------------------------------------------------------------------
    // Scalar products
    // -----------------------------------------------------------------------

    /// The Jack-theory scalar product: power sums are orthogonal with
    /// `<<p_kappa, p_kappa>> = alpha^{l(kappa)} z_kappa`.
    pub fn scalar_product_jack(&self, other: &SymFunc) -> RatFunc {
        let alpha = RatFunc::var(Var::Alpha);
        let mut sum = RatFunc::zero();
        for (kappa, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(kappa) {
                let weight = RatFunc::rational(BigRational::from_integer(kappa.z_stat()))
                    .mul(&alpha.pow_u(kappa.length() as u32));
                sum = sum.add(&c.mul(d).mul(&weight));
            }
        }
        sum
    }

    /// The (q,t) scalar product: power sums are orthogonal with
    /// `<<p_kappa, p_kappa>> = z_kappa prod_j (1-q^{kappa_j})/(1-t^{kappa_j})`.
    pub fn scalar_product_qt(&self, other: &SymFunc) -> RatFunc {
        let mut sum = RatFunc::zero();
        for (kappa, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(kappa) {
                let mut weight = RatFunc::rational(BigRational::from_integer(kappa.z_stat()));
                for &part in kappa.parts() {
                    weight = weight.mul(&qt_part_ratio(part));
                }
                sum = sum.add(&c.mul(d).mul(&weight));
            }
        }
        sum
    }

    // -----------------------------------------------------------------------
    // Automorphisms
    // -----------------------------------------------------------------------

    /// The Macdonald automorphism: the coefficient of `p_kappa` picks up
    /// `(-1)^{|kappa|-l(kappa)} prod_j (1-q^{kappa_j})/(1-t^{kappa_j})`
    /// (i.e. `p_r` maps to `(-1)^{r-1} (1-q^r)/(1-t^r) p_r`).
    pub fn omega_qt(&self) -> SymFunc {
        self.map_coeffs(|kappa, c| {
            let mut factor = sign((kappa.size() as usize + kappa.length()) % 2 == 1);
            for &part in kappa.parts() {
                factor = factor.mul(&qt_part_ratio(part));
            }
            c.mul(&factor)
        })
    }

    /// The automorphism `omega_c`: the coefficient of `p_kappa` picks up
    /// `c^{l(kappa)}` (i.e. `p_r` maps to `c p_r` for every `r`).
    pub fn omega_c_jack(&self, c: &RatFunc) -> SymFunc {
        self.map_coeffs(|kappa, v| v.mul(&c.pow_u(kappa.length() as u32)))
    }

    // -----------------------------------------------------------------------
    // Specialization and evaluation
    // -----------------------------------------------------------------------

    /// Substitutes `p_k` by `rule(k)` for every power-sum factor.
    pub fn specialize(&self, s: &Specialization) -> Result<RatFunc> {
        self.specialize_with(|k| {
            s.rule
                .get(&k)
                .cloned()
                .ok_or(Error::MissingRule(k as usize))
        })
    }

    /// Substitutes `p_k` by `f(k)` for every power-sum factor.
    pub fn specialize_with(&self, f: impl Fn(u32) -> Result<RatFunc>) -> Result<RatFunc> {
        let mut total = RatFunc::zero();
        for (kappa, c) in &self.coeffs {
            let mut term = c.clone();
            for &part in kappa.parts() {
                term = term.mul(&f(part)?);
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Evaluates on the finite alphabet `x`: substitutes
    /// `p_k = sum_i x_i^k`.
    pub fn evaluate_alphabet(&self, x: &[RatFunc]) -> RatFunc {
        let mut psums: Vec<RatFunc> = Vec::with_capacity(self.degree as usize + 1);
        psums.push(RatFunc::int(x.len() as i64)); // p_0, unused
        for k in 1..=self.degree {
            let mut s = RatFunc::zero();
            for xi in x {
                s = s.add(&xi.pow_u(k));
            }
            psums.push(s);
        }
        self.specialize_with(|k| Ok(psums[k as usize].clone()))
            .expect("alphabet evaluation defines every power sum")
    }

    /// The expansion of `self` in the monomial symmetric function basis.
    pub fn monomial_coefficients(&self) -> BTreeMap<Partition, RatFunc> {
        let tr = transition(self.degree);
        let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
        for (kappa, c) in &self.coeffs {
            let row = &tr.p_in_m[tr.index[kappa]];
            for (li, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let contribution = c.mul(&RatFunc::rational(entry.clone()));
                let slot = out
                    .entry(tr.list[li].clone())
                    .or_insert_with(RatFunc::zero);
                *slot = slot.add(&contribution);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// `(1-q^r)/(1-t^r)` as a rational function.
fn qt_part_ratio(r: u32) -> RatFunc {
    let num = RatFunc::one() - RatFunc::var(Var::Q).pow_u(r);
    let den = RatFunc::one() - RatFunc::var(Var::T).pow_u(r);
    num.div_checked(&den).expect("1 - t^r is nonzero for r >= 1")
}

fn sign(negative: bool) -> RatFunc {
    RatFunc::int(if negative { -1 } else { 1 })
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (kappa, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*p{kappa}")?;
        }
        Ok(())
    }
}

/// A substitution rule for power sums: `p_k` maps to `rule[k]`.
#[derive(Clone, Debug, Default)]
pub struct Specialization {
    rule: BTreeMap<u32, RatFunc>,
}

impl Specialization {
    pub fn new(rule: BTreeMap<u32, RatFunc>) -> Specialization {
        Specialization { rule }
    }

    /// Builds the rule `p_k -> f(k)` for `k = 1..=max_index`.
    pub fn tabulate(max_index: u32, f: impl Fn(u32) -> RatFunc) -> Specialization {
        Specialization {
            rule: (1..=max_index).map(|k| (k, f(k))).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Monomial <-> power-sum transition, cached per degree
// ---------------------------------------------------------------------------

struct Transition {
    list: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row `kappa`: the monomial-basis expansion of `p_kappa`.
    p_in_m: Vec<Vec<BigRational>>,
    /// Row `mu`: the power-sum expansion of `m_mu`.
    m_in_p: Vec<Vec<BigRational>>,
}

fn transition(degree: u32) -> Arc<Transition> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Transition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("transition cache lock");
    guard
        .entry(degree)
        .or_insert_with(|| Arc::new(build_transition(degree)))
        .clone()
}

fn build_transition(degree: u32) -> Transition {
    let list = Partition::enumerate(degree, None);
    let index: HashMap<Partition, usize> =
        list.iter().cloned().zip(0..).collect();
    let dim = list.len();

    let mut p_in_m = vec![vec![BigRational::zero(); dim]; dim];
    for (ki, kappa) in list.iter().enumerate() {
        let mut acc: BTreeMap<Partition, BigRational> =
            BTreeMap::from([(Partition::empty(), BigRational::one())]);
        for &r in kappa.parts() {
            acc = multiply_monomial_expansion_by_powersum(&acc, r);
        }
        for (lambda, c) in acc {
            p_in_m[ki][index[&lambda]] = c;
        }
    }

    let m_in_p = invert_matrix(&p_in_m);
    Transition { list, index, p_in_m, m_in_p }
}

/// Given `f = sum_mu c_mu m_mu`, returns the monomial expansion of
/// `p_r * f`. Multiplying `m_mu` by `p_r` turns one entry of the exponent
/// multiset from `v` into `v + r` (with `v = 0` meaning a fresh part); the
/// resulting `m_lambda` appears with multiplicity equal to the number of
/// parts of `lambda` equal to `v + r`.
fn multiply_monomial_expansion_by_powersum(
    acc: &BTreeMap<Partition, BigRational>,
    r: u32,
) -> BTreeMap<Partition, BigRational> {
    let mut out: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for (mu, c) in acc {
        let mut options: Vec<u32> = vec![0];
        options.extend(mu.multiplicities().iter().map(|&(v, _)| v));
        for v in options {
            let mut parts = mu.parts().to_vec();
            if v == 0 {
                parts.push(r);
            } else {
                let pos = parts.iter().position(|&x| x == v).expect("part present");
                parts[pos] = v + r;
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lambda = Partition::new(parts).expect("sorted positive parts");
            let mult = lambda.parts().iter().filter(|&&x| x == v + r).count();
            let entry = out.entry(lambda).or_insert_with(BigRational::zero);
            *entry += c * BigRational::from_integer(BigInt::from(mult));
        }
    }
    out
}

/// Inverts a square matrix over the rationals by Gauss-Jordan elimination.
/// Panics if the matrix is singular (the transition matrices never are).
fn invert_matrix(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let dim = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&row| !a[row][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].recip();
        for j in 0..dim {
            a[col][j] *= &scale;
            inv[col][j] *= &scale;
        }
        for row in 0..dim {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for j in 0..dim {
                let s = &factor * &a[col][j];
                a[row][j] -= s;
                let s = &factor * &inv[col][j];
                inv[row][j] -= s;
            }
        }
    }
    inv
}

/// The monomial symmetric function `m_mu` in the power-sum basis.
pub fn monomial_to_powersum(mu: &Partition) -> SymFunc {
    let tr = transition(mu.size());
    let row = &tr.m_in_p[tr.index[mu]];
    SymFunc::from_terms(
        mu.size(),
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(ki, c)| (tr.list[ki].clone(), RatFunc::rational(c.clone()))),
    )
}

// ---------------------------------------------------------------------------
// Jack and Macdonald polynomials by Gram-Schmidt
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Family {
    Jack,
    Macdonald,
}

fn family_scalar_product(family: Family, f: &SymFunc, g: &SymFunc) -> RatFunc {
    match family {
        Family::Jack => f.scalar_product_jack(g),
        Family::Macdonald => f.scalar_product_qt(g),
    }
}

fn orthogonal_family(degree: u32, family: Family) -> Arc<BTreeMap<Partition, SymFunc>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, Family), Arc<BTreeMap<Partition, SymFunc>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("family cache lock");
    guard
        .entry((degree, family))
        .or_insert_with(|| Arc::new(build_family(degree, family)))
        .clone()
}

/// Gram-Schmidt over one degree: partitions are processed along a linear
/// extension of dominance (least dominant first), each starting from its
/// monomial symmetric function and orthogonalized against the results for
/// strictly dominance-smaller partitions only. Orthogonality between
/// dominance-incomparable partitions is a theorem of the construction, not
/// an input, and is exercised by the norm tests.
fn build_family(degree: u32, family: Family) -> BTreeMap<Partition, SymFunc> {
    let list = Partition::enumerate(degree, None);
    let mut done: Vec<(Partition, SymFunc, RatFunc)> = Vec::with_capacity(list.len());
    for kappa in list.iter().rev() {
        let mut f = monomial_to_powersum(kappa);
        for (lambda, p_lambda, norm) in &done {
            if lambda.dominance_lt(kappa).expect("equal degrees") {
                let c = family_scalar_product(family, &f, p_lambda)
                    .div_checked(norm)
                    .expect("orthogonal basis vectors have nonzero norm");
                if !c.is_zero() {
                    f = f.sub(&p_lambda.scale(&c));
                }
            }
        }
        let norm = family_scalar_product(family, &f, &f);
        done.push((kappa.clone(), f, norm));
    }
    done.into_iter().map(|(k, f, _)| (k, f)).collect()
}

/// The Jack polynomial `P_kappa^{(alpha)}` in the power-sum basis,
/// normalized so the coefficient of `m_kappa` is 1.
pub fn jack(kappa: &Partition) -> SymFunc {
    orthogonal_family(kappa.size(), Family::Jack)
        .get(kappa)
        .expect("every partition of the degree is constructed")
        .clone()
}

/// The Macdonald polynomial `P_kappa(.; q, t)` in the power-sum basis,
/// normalized so the coefficient of `m_kappa` is 1.
pub fn macdonald(kappa: &Partition) -> SymFunc {
    orthogonal_family(kappa.size(), Family::Macdonald)
        .get(kappa)
        .expect("every partition of the degree is constructed")
        .clone()
}

/// The Schur polynomial, realized as the Jack polynomial at `alpha = 1`.
pub fn schur(kappa: &Partition) -> SymFunc {
    let at_one = BTreeMap::from([(Var::Alpha, RatFunc::one())]);
    jack(kappa).map_coeffs(|_, c| {
        c.substitute(&at_one)
            .expect("Jack coefficients are finite at alpha = 1")
    })
}

// ---------------------------------------------------------------------------
// Power sums expanded in the orthogonal families
// ---------------------------------------------------------------------------

/// The hook-shape expansion of a single power sum in Schur polynomials
/// restricted to `n_vars` variables:
/// `p_j = sum_{r=0}^{min(j-1, n_vars-1)} (-1)^r s_{(j-r, 1^r)}`.
pub fn powersum_in_schur(j: u32, n_vars: usize) -> Vec<(i64, Partition)> {
    assert!(j >= 1, "power sums are indexed from 1");
    let mut out = Vec::new();
    for r in 0..j.min(n_vars as u32) {
        let mut parts = vec![j - r];
        parts.extend(std::iter::repeat(1).take(r as usize));
        let hook = Partition::new(parts).expect("hook shape");
        out.push((if r % 2 == 0 { 1 } else { -1 }, hook));
    }
    out
}

/// The expansion `p_j = sum_{|kappa| = j} u_kappa(alpha) P_kappa^{(alpha)}`
/// with
/// `u_kappa = |kappa| alpha^{|kappa|} (kappa_1 - 1)! / h'_kappa *
///  prod_{s=2}^{l(kappa)} (-(s-1)/alpha)_{kappa_s}`
/// (increasing Pochhammer symbols). The reconstruction is asserted in debug
/// builds.
pub fn powersum_in_jack(j: u32) -> BTreeMap<Partition, RatFunc> {
    assert!(j >= 1, "power sums are indexed from 1");
    let alpha = RatFunc::var(Var::Alpha);
    let inv_alpha = alpha.recip().expect("alpha is nonzero");
    let mut out = BTreeMap::new();
    for kappa in Partition::enumerate(j, None) {
        let mut u = RatFunc::int(i64::from(j))
            .mul(&alpha.pow_u(j))
            .mul(&RatFunc::rational(factorial(kappa.parts()[0] - 1)))
            .div_checked(&kappa.primed_hook_product_alpha())
            .expect("hook products are nonzero");
        for (row, &part) in kappa.parts().iter().enumerate().skip(1) {
            let base = inv_alpha.mul(&RatFunc::int(-(row as i64)));
            for i in 0..part {
                u = u.mul(&(&base + &RatFunc::int(i64::from(i))));
            }
        }
        out.insert(kappa, u);
    }
    debug_assert!(
        reconstructs_powersum(&out, jack, j),
        "Jack expansion of p_{j} fails to reconstruct"
    );
    out
}

/// The expansion `p_j = sum_{|kappa| = j} u_kappa(q,t) P_kappa(.; q,t)` with
/// `u_kappa = (1 - q^j) chi_kappa(q,t) / h'_kappa(q,t)`. The reconstruction
/// is asserted in debug builds.
pub fn powersum_in_macdonald(j: u32) -> BTreeMap<Partition, RatFunc> {
    assert!(j >= 1, "power sums are indexed from 1");
    let front = RatFunc::one() - RatFunc::var(Var::Q).pow_u(j);
    let mut out = BTreeMap::new();
    for kappa in Partition::enumerate(j, None) {
        let u = front
            .mul(&kappa.chi_qt())
            .div_checked(&kappa.primed_hook_product_qt())
            .expect("hook products are nonzero");
        out.insert(kappa, u);
    }
    debug_assert!(
        reconstructs_powersum(&out, macdonald, j),
        "Macdonald expansion of p_{j} fails to reconstruct"
    );
    out
}

fn reconstructs_powersum(
    coeffs: &BTreeMap<Partition, RatFunc>,
    basis: fn(&Partition) -> SymFunc,
    j: u32,
) -> bool {
    let mut total = SymFunc::zero(j);
    for (kappa, u) in coeffs {
        total = total.add(&basis(kappa).scale(u));
    }
    total == SymFunc::powersum(&Partition::new(vec![j]).expect("single part"))
}

fn factorial(n: u32) -> BigRational {
    let mut f = BigInt::from(1);
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    BigRational::from_integer(f)
}
