//! Multivariate polynomial gcd over Q.
//!
//! The workhorse is a dense interpolation ("evaluate one variable at small
//! integers, recurse, Newton-interpolate back") in the style of Brown's
//! modular gcd, with the leading-coefficient scaling trick and a final trial
//! division that makes the result unconditionally correct: unlucky sample
//! points can at worst force a retry, never a wrong answer. Univariate gcds
//! at the bottom run on dense integer coefficient vectors via a primitive
//! pseudo-remainder sequence. A plain multivariate remainder sequence is
//! kept as a fallback for the (never observed) case where interpolation
//! gives up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Mono, MultiPoly, Var};

/// Gcd of two polynomials, unit-normalized (integer coefficients, content 1,
/// positive trailing coefficient).  `poly_gcd(0, 0) = 0`.
pub(crate) fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.int_normalized();
    }
    if b.is_zero() {
        return a.int_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Split off the monomial content so the rest of the computation only
    // sees polynomials with a trivial common monomial factor.
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mg = ma.gcd(&mb);
    let a = divide_mono(a, &ma);
    let b = divide_mono(b, &mb);
    let core = gcd_inner(&a, &b);
    if mg.is_one() {
        core.int_normalized()
    } else {
        core.mul_term(&mg, &BigRational::one()).int_normalized()
    }
}

fn monomial_content(p: &MultiPoly) -> Mono {
    let mut it = p.terms();
    let mut g = *it.next().expect("nonzero polynomial").0;
    for (m, _) in it {
        g = g.gcd(m);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_mono(p: &MultiPoly, m: &Mono) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    let mut out = MultiPoly::zero();
    for (mm, c) in p.terms() {
        out = out.add(&MultiPoly::monomial(m.div_into(mm), c.clone()));
    }
    out
}

fn gcd_inner(a0: &MultiPoly, b0: &MultiPoly) -> MultiPoly {
    let mut a = a0.int_normalized();
    let mut b = b0.int_normalized();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a;
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // Common factors of a monomial are monomials; any shared monomial
        // factor has already been split off by the caller.
        return MultiPoly::one();
    }

    // A variable present in only one input cannot appear in the gcd, so
    // that input can be replaced by the gcd of its coefficients.
    let mut reduced = false;
    loop {
        if let Some(&v) = a.vars_present().iter().find(|&&v| !b.depends_on(v)) {
            a = content_wrt(&a, v);
            reduced = true;
            continue;
        }
        if let Some(&v) = b.vars_present().iter().find(|&&v| !a.depends_on(v)) {
            b = content_wrt(&b, v);
            reduced = true;
            continue;
        }
        break;
    }
    if reduced {
        return poly_gcd(&a, &b);
    }

    let shared = a.vars_present();
    if shared.len() == 1 {
        return univar_gcd_poly(&a, &b, shared[0]);
    }
    match interpolation_gcd(&a, &b, &shared) {
        Some(g) => g,
        None => remainder_sequence_gcd(&a, &b),
    }
}

// ---------------------------------------------------------------------------
// Dense interpolation gcd
// ---------------------------------------------------------------------------

/// Gcd by evaluation and Newton interpolation of one variable. Inputs are
/// integer-normalized, genuinely multivariate, and share every variable.
/// Returns `None` only when the sample budget is exhausted.
fn interpolation_gcd(a: &MultiPoly, b: &MultiPoly, shared: &[Var]) -> Option<MultiPoly> {
    // Interpolating the variable of smallest degree needs the fewest points.
    let v = *shared
        .iter()
        .min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("at least two shared variables");

    // Contents with respect to Z[v]: write each input over monomials in the
    // other variables with univariate coefficients, and split off the gcd of
    // those coefficients. The full gcd is cont_gcd * gcd of primitive parts.
    let (ca, pa) = univar_content_split(a, v);
    let (cb, pb) = univar_content_split(b, v);
    let cg = int_univar_gcd(&ca, &cb);

    let la = lead_coeff_by_others(&pa, v);
    let lb = lead_coeff_by_others(&pb, v);
    let gamma = int_univar_gcd(&la, &lb);

    // The interpolated object is (gamma / lc(g)) * g, with v-degree at most
    // deg gamma + min-degree bound for g itself.
    let needed = (gamma.len() - 1) + pa.degree_in(v).min(pb.degree_in(v)) as usize + 1;

    let mut h = MultiPoly::zero();
    let mut basis = MultiPoly::one(); // prod (v - alpha_i)
    let mut lead: Option<Mono> = None;
    let mut npts = 0usize;
    let mut tried = 0usize;
    let budget = 4 * needed + 64;

    for alpha in sample_points() {
        if npts >= needed {
            break;
        }
        tried += 1;
        if tried > budget {
            return None;
        }
        // Both leading coefficients must survive the evaluation, otherwise
        // the image can misrepresent the gcd's degree.
        if horner(&la, alpha).is_zero() || horner(&lb, alpha).is_zero() {
            continue;
        }
        let x = BigRational::from_integer(BigInt::from(alpha));
        let ia = eval_var(&pa, v, &x);
        let ib = eval_var(&pb, v, &x);
        let gi = poly_gcd(&ia, &ib);
        if gi.is_constant() {
            // The primitive-part gcd is trivial; only the contents remain.
            return Some(univar_to_poly(&cg, v));
        }
        let gi_lead = *gi.leading_term().expect("nonzero gcd image").0;
        match lead {
            Some(l) if gi_lead > l => continue, // unlucky point, skip
            Some(l) if gi_lead < l => {
                // Every previous point was unlucky; start over from this one.
                h = MultiPoly::zero();
                basis = MultiPoly::one();
                npts = 0;
                lead = Some(gi_lead);
            }
            None => lead = Some(gi_lead),
            _ => {}
        }

        // Scale the image so it matches (gamma / lc(g)) * g at v = alpha.
        let lc = gi.leading_term().expect("nonzero").1.clone();
        let scale = BigRational::from_integer(horner(&gamma, alpha)) / lc;
        let gs = gi.mul_scalar(&scale);

        // Newton update: h stays the unique interpolant through all points.
        let h_at = eval_var(&h, v, &x);
        let diff = gs.sub(&h_at);
        if !diff.is_zero() {
            let basis_at = basis
                .eval(&BTreeMap::from([(v, x.clone())]))
                .expect("univariate basis evaluates");
            h = h.add(&diff.mul(&basis).mul_scalar(&basis_at.recip()));
        }
        basis = basis.mul(&MultiPoly::var(v).sub(&MultiPoly::constant(x)));
        npts += 1;
    }
    if npts < needed {
        return None;
    }

    // Strip the univariate content the scaling introduced, then certify the
    // candidate by trial division; failure means the points were jointly
    // unlucky and the caller should fall back.
    let (_, candidate) = univar_content_split(&h.int_normalized(), v);
    if pa.exact_div(&candidate).is_some() && pb.exact_div(&candidate).is_some() {
        Some(candidate.mul(&univar_to_poly(&cg, v)).int_normalized())
    } else {
        None
    }
}

/// 0, 1, -1, 2, -2, ...: small distinct integers keep image coefficients small.
fn sample_points() -> impl Iterator<Item = i64> {
    (0i64..).map(|k| {
        if k == 0 {
            0
        } else if k % 2 == 1 {
            (k + 1) / 2
        } else {
            -(k / 2)
        }
    })
}

/// Substitutes `v = x`, leaving a polynomial in the remaining variables.
fn eval_var(p: &MultiPoly, v: Var, x: &BigRational) -> MultiPoly {
    let mut pows: Vec<BigRational> = vec![BigRational::one()];
    let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        while pows.len() <= e {
            pows.push(pows.last().expect("nonempty") * x);
        }
        let m0 = Mono::var_pow(v, m.exponent(v)).div_into(m);
        let entry = acc.entry(m0).or_insert_with(BigRational::zero);
        *entry += c * &pows[e];
    }
    let mut out = MultiPoly::zero();
    for (m, c) in acc {
        if !c.is_zero() {
            out = out.add(&MultiPoly::monomial(m, c));
        }
    }
    out
}

/// Writes `p` over monomials in the variables other than `v` (univariate
/// coefficients in `v`, dense, low to high) and splits off the gcd of those
/// coefficients: returns `(content, p / content)`.
fn univar_content_split(p: &MultiPoly, v: Var) -> (Vec<BigInt>, MultiPoly) {
    let mut content: Vec<BigInt> = Vec::new();
    for coeffs in univar_coeffs_by_others(p, v).values() {
        content = int_univar_gcd(&content, coeffs);
        if content == [BigInt::one()] {
            break;
        }
    }
    let pp = p
        .exact_div(&univar_to_poly(&content, v))
        .expect("content divides");
    (content, pp)
}

/// The univariate coefficient (in `v`) of the largest monomial in the other
/// variables.
fn lead_coeff_by_others(p: &MultiPoly, v: Var) -> Vec<BigInt> {
    univar_coeffs_by_others(p, v)
        .into_iter()
        .next_back()
        .expect("nonzero polynomial")
        .1
}

/// Decomposes an integer-coefficient polynomial as
/// `sum_(m without v) m * c_m(v)`, with each `c_m` dense low-to-high.
fn univar_coeffs_by_others(p: &MultiPoly, v: Var) -> BTreeMap<Mono, Vec<BigInt>> {
    let mut out: BTreeMap<Mono, Vec<BigInt>> = BTreeMap::new();
    for (m, c) in p.terms() {
        debug_assert!(c.denom().is_one(), "expected integer coefficients");
        let e = m.exponent(v) as usize;
        let m0 = Mono::var_pow(v, m.exponent(v)).div_into(m);
        let entry = out.entry(m0).or_default();
        if entry.len() <= e {
            entry.resize(e + 1, BigInt::zero());
        }
        entry[e] = c.numer().clone();
    }
    out
}

fn horner(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

fn univar_to_poly(coeffs: &[BigInt], v: Var) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&MultiPoly::monomial(
                Mono::var_pow(v, e as u16),
                BigRational::from_integer(c.clone()),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Univariate gcd on dense integer coefficients
// ---------------------------------------------------------------------------

/// Gcd of polynomials that depend on the single variable `v`.
fn univar_gcd_poly(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let da = dense_int_coeffs(a, v);
    let db = dense_int_coeffs(b, v);
    univar_to_poly(&int_univar_gcd(&da, &db), v)
}

fn dense_int_coeffs(p: &MultiPoly, v: Var) -> Vec<BigInt> {
    let mut dense = vec![BigInt::zero(); p.degree_in(v) as usize + 1];
    for (e, c) in p.to_univar(v) {
        let c = c.as_constant().expect("univariate coefficient");
        debug_assert!(c.denom().is_one(), "expected integer coefficients");
        dense[e as usize] = c.numer().clone();
    }
    dense
}

/// Gcd in Z[x] on dense coefficient vectors (low to high): the integer
/// content gcd times the primitive gcd, normalized so the lowest nonzero
/// coefficient is positive. An empty vector is zero; `gcd(0, g) = g`.
fn int_univar_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
        p
    }
    fn content(p: &[BigInt]) -> BigInt {
        let mut g = BigInt::zero();
        for c in p {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }
    fn primitive(mut p: Vec<BigInt>, c: &BigInt) -> Vec<BigInt> {
        if !c.is_one() && !c.is_zero() {
            for x in p.iter_mut() {
                *x = &*x / c;
            }
        }
        p
    }

    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let (ca, cb) = (content(&a), content(&b));
    let cg = ca.gcd(&cb);
    let mut f = primitive(a, &ca);
    let mut g = primitive(b, &cb);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_empty() {
            let c = content(&f);
            let pp = primitive(f, &c);
            return normalize_sign(scale(pp, &cg));
        }
        // Pseudo-remainder of f by g.
        let mut r = f.clone();
        let dg = g.len() - 1;
        let lcg = g[dg].clone();
        while r.len() >= g.len() {
            let dr = r.len() - 1;
            let lcr = r[dr].clone();
            for c in r.iter_mut() {
                *c = &*c * &lcg;
            }
            for (i, gc) in g.iter().enumerate() {
                r[dr - dg + i] -= gc * &lcr;
            }
            r = trim(r);
        }
        let rc = content(&r);
        f = g;
        g = primitive(r, &rc);
    }

    fn scale(mut p: Vec<BigInt>, c: &BigInt) -> Vec<BigInt> {
        if !c.is_one() {
            for x in p.iter_mut() {
                *x = &*x * c;
            }
        }
        p
    }
    fn normalize_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
        if p.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()) == Some(true) {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
        p
    }
}

// ---------------------------------------------------------------------------
// Remainder-sequence fallback
// ---------------------------------------------------------------------------

/// Primitive pseudo-remainder sequence in the variable of smallest degree.
/// Slow on large inputs but fully general; only reached when interpolation
/// returns `None`.
fn remainder_sequence_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let v = pick_main_var(a, b);
    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let pa = a.exact_div(&ca).expect("content divides").int_normalized();
    let pb = b.exact_div(&cb).expect("content divides").int_normalized();
    let cg = poly_gcd(&ca, &cb);

    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        let rc = content_wrt(&r, v);
        let rp = r.exact_div(&rc).expect("content divides").int_normalized();
        f = g;
        g = rp;
    }
    // g is the primitive gcd of the primitive parts.
    cg.mul(&g)
}

fn pick_main_var(a: &MultiPoly, b: &MultiPoly) -> Var {
    let mut best: Option<(u16, Var)> = None;
    for v in Var::ALL {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 || db == 0 {
            continue;
        }
        let score = da.max(db);
        if best.map(|(s, _)| score < s).unwrap_or(true) {
            best = Some((score, v));
        }
    }
    match best {
        Some((_, v)) => v,
        None => {
            // No shared variable: any variable present in either works (the
            // primitive parts are then coprime and the sequence ends at once).
            *a.vars_present().first().unwrap_or(&b.vars_present()[0])
        }
    }
}

/// Pseudo-remainder of f by g with respect to v (defined up to a factor of a
/// power of the leading coefficient of g, which primitive reduction removes).
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: Var) -> MultiPoly {
    let dg = g.degree_in(v);
    let gu = g.to_univar(v);
    let lcg = gu[&dg].clone();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < dg {
            break;
        }
        let ru = r.to_univar(v);
        let lcr = ru[&dr].clone();
        // r <- lcg * r - lcr * v^(dr-dg) * g
        let shift = Mono::var_pow(v, dr - dg);
        r = r
            .mul(&lcg)
            .sub(&g.mul(&lcr).mul_term(&shift, &BigRational::one()));
    }
    r
}

/// Gcd of the coefficients of p viewed as a univariate polynomial in v.
fn content_wrt(p: &MultiPoly, v: Var) -> MultiPoly {
    let coeffs = p.to_univar(v);
    let mut acc = MultiPoly::zero();
    for c in coeffs.values() {
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}
