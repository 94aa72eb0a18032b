//! Exact multivariate rational functions over Q.
//!
//! All symbolic data in this crate lives in the fixed variable set
//! {alpha, q, t, a, u, N, z}.  A `RatFunc` is kept in canonical form:
//!
//!   * numerator and denominator share no polynomial factor,
//!   * both have integer coefficients with no common integer content,
//!   * the lowest monomial of the denominator (graded lex) has positive sign.
//!
//! With that normalization, structural equality of two `RatFunc` values is
//! mathematical equality, which is what every identity check in the crate
//! leans on.

mod gcd;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Number of global variables.
pub const NVARS: usize = 7;

/// The fixed variable set.  `N` is the matrix dimension, `u` the lattice
/// parameter t^N treated as an independent symbol, `z` the spectral variable
/// of characteristic polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Alpha,
    Q,
    T,
    A,
    U,
    N,
    Z,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Alpha, Var::Q, Var::T, Var::A, Var::U, Var::N, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::Alpha => 0,
            Var::Q => 1,
            Var::T => 2,
            Var::A => 3,
            Var::U => 4,
            Var::N => 5,
            Var::Z => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Q => "q",
            Var::T => "t",
            Var::A => "a",
            Var::U => "u",
            Var::N => "N",
            Var::Z => "z",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector of a monomial over the fixed variable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub(crate) [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var) -> Mono {
        let mut e = [0u16; NVARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn var_pow(v: Var, k: u16) -> Mono {
        let mut e = [0u16; NVARS];
        e[v.index()] = k;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, rhs: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i]
                .checked_add(rhs.0[i])
                .expect("monomial exponent overflow");
        }
        Mono(e)
    }

    fn divides(&self, rhs: &Mono) -> bool {
        (0..NVARS).all(|i| self.0[i] <= rhs.0[i])
    }

    /// rhs / self, assuming divisibility.
    fn div_into(&self, rhs: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = rhs.0[i] - self.0[i];
        }
        Mono(e)
    }

    fn gcd(&self, rhs: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].min(rhs.0[i]);
        }
        Mono(e)
    }
}

/// Graded lexicographic order: total degree first, then the exponent vector.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q.  The term map never stores zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Mono::var(v), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::ONE))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Variables with a positive exponent somewhere in the support.
    pub fn vars_present(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.depends_on(v))
            .collect()
    }

    fn insert_add(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca * c);
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigRational) -> MultiPoly {
        self.mul_term(&Mono::ONE, c)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Leading term under graded lex (largest monomial).
    pub fn leading_term(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Trailing term under graded lex (smallest monomial).
    pub fn trailing_term(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next()
    }

    /// Exact polynomial division; `None` when the division is not exact.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.mul_scalar(&(BigRational::one() / c)));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.div_into(&rm);
            let qc = rc / &dc;
            quot.insert_add(qm, qc.clone());
            rem = rem.sub(&d.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `v` with `MultiPoly` coefficients.
    pub(crate) fn to_univar(&self, v: Var) -> BTreeMap<u16, MultiPoly> {
        let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        let idx = v.index();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut rest = *m;
            rest.0[idx] = 0;
            out.entry(e)
                .or_insert_with(MultiPoly::zero)
                .insert_add(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Evaluate at rational values; every variable actually present must be
    /// bound.
    pub fn eval(&self, bind: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        for v in self.vars_present() {
            if !bind.contains_key(&v) {
                return Err(Error::UnboundVariable(v));
            }
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e > 0 {
                    term *= rational_pow(&bind[&v], e as i64)?;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Scale so that all coefficients are integers with no common content and
    /// the trailing coefficient is positive.  Returns the scaled polynomial
    /// (the zero polynomial is returned unchanged).
    pub(crate) fn int_normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        let mut scale = BigRational::new(l, g);
        if self.trailing_term().unwrap().1.is_negative() {
            scale = -scale;
        }
        self.mul_scalar(&scale)
    }
}

/// Exponentiation of a rational number with integer exponent.
pub fn rational_pow(x: &BigRational, k: i64) -> Result<BigRational> {
    if k == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() {
        if k < 0 {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::zero());
    }
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * &base;
        }
    }
    Ok(acc)
}

/// Rational function in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from_poly(MultiPoly::int(n))
    }

    pub fn rational(c: BigRational) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        RatFunc::scale_normalize(p, MultiPoly::one())
    }

    /// Build `num/den`, reducing to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = gcd::poly_gcd(&num, &den);
        let num = num
            .exact_div(&g)
            .expect("gcd does not divide the numerator");
        let den = den
            .exact_div(&g)
            .expect("gcd does not divide the denominator");
        Ok(RatFunc::scale_normalize(num, den))
    }

    /// Joint integer normalization of an already-reduced pair.
    fn scale_normalize(num: MultiPoly, den: MultiPoly) -> RatFunc {
        assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut l = BigInt::one();
        for c in num.terms.values().chain(den.terms.values()) {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in num.terms.values().chain(den.terms.values()) {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        let mut scale = BigRational::new(l, g);
        if den.trailing_term().unwrap().1.is_negative() {
            scale = -scale;
        }
        RatFunc {
            num: num.mul_scalar(&scale),
            den: den.mul_scalar(&scale),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.as_constant()? / self.den.as_constant()?)
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.depends_on(v)
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = gcd::poly_gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            if num.is_zero() {
                return RatFunc::zero();
            }
            // den1, den2 coprime and each numerator coprime to its own
            // denominator, so the sum is already reduced.
            return RatFunc::scale_normalize(num, den);
        }
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = rhs.den.exact_div(&g).unwrap();
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = gcd::poly_gcd(&num, &g);
        let num = num.exact_div(&h).unwrap();
        let den = self
            .den
            .exact_div(&h)
            .unwrap()
            .mul(&d2);
        RatFunc::scale_normalize(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = gcd::poly_gcd(&self.num, &rhs.den);
        let g2 = gcd::poly_gcd(&rhs.num, &self.den);
        let num = self
            .num
            .exact_div(&g1)
            .unwrap()
            .mul(&rhs.num.exact_div(&g2).unwrap());
        let den = self
            .den
            .exact_div(&g2)
            .unwrap()
            .mul(&rhs.den.exact_div(&g1).unwrap());
        RatFunc::scale_normalize(num, den)
    }

    pub fn div_checked(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::scale_normalize(
            self.den.clone(),
            self.num.clone(),
        ))
    }

    /// Nonnegative power.
    pub fn pow_u(&self, k: u32) -> RatFunc {
        let mut out = RatFunc::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow_i(&self, k: i64) -> Result<RatFunc> {
        if k >= 0 {
            Ok(self.pow_u(k as u32))
        } else {
            Ok(self.recip()?.pow_u((-k) as u32))
        }
    }

    /// Substitute rational functions for variables; unbound variables stay
    /// symbolic.  Errors when the denominator vanishes identically.
    pub fn substitute(&self, bind: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
        let num = apply_poly(&self.num, bind);
        let den = apply_poly(&self.den, bind);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        num.div_checked(&den)
    }

    /// Evaluate at rational values for all variables present.
    pub fn eval_numeric(&self, bind: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        let d = self.den.eval(bind)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(bind)? / d)
    }

    /// Coefficients with respect to `v`, low to high, as rational functions
    /// in the remaining variables.  Errors when the denominator depends on
    /// `v` (the value is not a polynomial in `v`).
    pub fn poly_coeffs_in(&self, v: Var) -> Result<Vec<RatFunc>> {
        if self.den.depends_on(v) {
            return Err(Error::NotPolynomialIn(v));
        }
        if self.is_zero() {
            return Ok(vec![RatFunc::zero()]);
        }
        let coeffs = self.num.to_univar(v);
        let deg = *coeffs.keys().max().unwrap() as usize;
        let mut out = vec![RatFunc::zero(); deg + 1];
        for (e, p) in coeffs {
            out[e as usize] = RatFunc::new(p, self.den.clone()).expect("nonzero denominator");
        }
        Ok(out)
    }
}

fn apply_poly(p: &MultiPoly, bind: &BTreeMap<Var, RatFunc>) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut passthrough = *m;
        let mut factor = RatFunc::one();
        for (&v, val) in bind {
            let e = m.exponent(v);
            if e > 0 {
                passthrough.0[v.index()] = 0;
                factor = factor.mul(&val.pow_u(e as u32));
            }
        }
        let base = RatFunc::from_poly(MultiPoly::monomial(passthrough, c.clone()));
        acc = acc.add(&base.mul(&factor));
    }
    acc
}

// ---- operator sugar ----

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl std::ops::$trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$impl_method(rhs)
            }
        }
        impl std::ops::$trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$impl_method(&rhs)
            }
        }
        impl std::ops::$trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$impl_method(rhs)
            }
        }
        impl std::ops::$trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$impl_method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

// ---- display ----

fn write_mono(f: &mut fmt::Formatter<'_>, m: &Mono) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v.name())?;
        } else {
            write!(f, "{}^{}", v.name(), e)?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &MultiPoly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in p.terms() {
        let neg = c.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        let abs = c.abs();
        if m.is_one() {
            write!(f, "{}", abs)?;
        } else if abs.is_one() {
            write_mono(f, m)?;
        } else {
            write!(f, "{}*", abs)?;
            write_mono(f, m)?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_poly(f, &self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "(")?;
            write_poly(f, &self.num)?;
            write!(f, ")")?;
        } else {
            write_poly(f, &self.num)?;
        }
        write!(f, "/")?;
        // Safe to print bare only for a single power of a single variable
        // with unit coefficient; anything else would re-associate on parse.
        let den_needs_parens = self.den.num_terms() > 1 || {
            let (m, c) = self.den.trailing_term().unwrap();
            !c.is_one() || Var::ALL.iter().filter(|v| m.exponent(**v) > 0).count() != 1
        };
        if den_needs_parens {
            write!(f, "(")?;
            write_poly(f, &self.den)?;
            write!(f, ")")
        } else {
            write_poly(f, &self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<RatFunc> {
        parse::parse_ratfunc(s)
    }
}
