//! Integer partitions and the combinatorial statistics attached to their
//! Young diagrams: conjugation, arm/leg lengths, dominance order, hook
//! products, and generalized Pochhammer symbols.
//!
//! Diagrams are drawn in English notation: row `i` (counted from the top)
//! holds `parts[i]` cells. Cell coordinates in the public API are 0-indexed
//! `(row, column)` pairs; the classical 1-indexed conventions only show up
//! inside formulas, where the `-1` shifts are written out explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::exactalg::{MultiPoly, RatFunc, Var};
use crate::{Error, Result};

/// An integer partition: a weakly decreasing sequence of positive parts.
///
/// The `Ord` implementation sorts by size first and, within a fixed size,
/// in the order produced by [`Partition::enumerate`] (largest parts first).
/// That order is a linear extension of the dominance order in which more
/// dominant partitions come first, so iterating a `BTreeMap` keyed by
/// partitions visits each degree from `(n)` down to `(1,1,...,1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition (the unique partition of 0).
    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in weakly decreasing order. Trailing
    /// zeros are stripped; out-of-order or interior-zero input is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// The parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The part at (0-indexed) row `i`, or 0 beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The size `|kappa|`: the number being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The number of (nonzero) parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Whether this is the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate partition (diagram reflected along the main diagonal).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            parts.push(self.parts.iter().take_while(|&&p| p as usize > j).count() as u32);
        }
        Partition { parts }
    }

    /// Iterates over the cells of the diagram as 0-indexed `(row, column)`
    /// pairs, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// The arm length of cell `(i, j)`: cells strictly to its right.
    pub fn arm(&self, i: usize, j: usize) -> Result<u32> {
        if j < self.part(i) as usize {
            Ok(self.part(i) - 1 - j as u32)
        } else {
            Err(Error::CellOutsideDiagram(i, j))
        }
    }

    /// The leg length of cell `(i, j)`: cells strictly below it.
    pub fn leg(&self, i: usize, j: usize) -> Result<u32> {
        if j < self.part(i) as usize {
            Ok(self.conjugate().part(j) - 1 - i as u32)
        } else {
            Err(Error::CellOutsideDiagram(i, j))
        }
    }

    /// The statistic `n(kappa) = sum_i (i-1) kappa_i` (rows 1-indexed),
    /// equivalently the total leg length over all cells.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 * p)
            .sum()
    }

    /// The distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The symmetry factor `z_kappa = prod_i m_i! * i^{m_i}` over the
    /// distinct parts `i` with multiplicities `m_i`.
    pub fn z_stat(&self) -> BigInt {
        let mut z = BigInt::from(1);
        for (part, mult) in self.multiplicities() {
            for k in 1..=mult {
                z *= BigInt::from(k);
            }
            z *= BigInt::from(part).pow(mult);
        }
        z
    }

    /// Whether `self` is below `other` in the dominance order (every prefix
    /// sum of `self` is at most the corresponding prefix sum of `other`).
    /// Only partitions of equal size are comparable.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return Err(Error::SizeMismatch(a as usize, b as usize));
        }
        let mut sa = 0u32;
        let mut sb = 0u32;
        for i in 0..self.parts.len().max(other.parts.len()) {
            sa += self.part(i);
            sb += other.part(i);
            if sa > sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict dominance: `self` below and distinct from `other`.
    pub fn dominance_lt(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominance_leq(other)?)
    }

    /// All partitions of `size`, largest parts first (so `(n)` comes first
    /// and `(1,1,...,1)` last). `max_parts` caps the number of parts.
    pub fn enumerate(size: u32, max_parts: Option<usize>) -> Vec<Partition> {
        fn rec(remaining: u32, max_part: u32, slots: usize, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=remaining.min(max_part)).rev() {
                acc.push(p);
                rec(remaining - p, p, slots - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, max_parts.unwrap_or(size as usize), &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Partition) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| {
                for (a, b) in self.parts.iter().zip(&other.parts) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                // Equal sizes with one sequence a prefix of the other forces
                // equality, so only identical part lists reach this point.
                self.parts.len().cmp(&other.parts.len())
            })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Partition) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,1,1"` (optionally wrapped in parentheses); the empty
    /// string and `"()"` denote the empty partition.
    fn from_str(s: &str) -> Result<Partition> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or_else(|| s.trim());
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|item| {
                item.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition part {item:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

// ---------------------------------------------------------------------------
// Hook products and generalized Pochhammer symbols
// ---------------------------------------------------------------------------

/// Arm and leg lengths for every cell, computed with the conjugate taken
/// once up front.
fn arms_and_legs(kappa: &Partition) -> Vec<(u32, u32)> {
    let conj = kappa.conjugate();
    kappa
        .cells()
        .map(|(i, j)| (kappa.part(i) - 1 - j as u32, conj.part(j) - 1 - i as u32))
        .collect()
}

impl Partition {
    /// The hook product `prod_{s} (alpha * arm(s) + leg(s) + 1)`.
    pub fn hook_product_alpha(&self) -> RatFunc {
        let alpha = MultiPoly::var(Var::Alpha);
        let mut prod = MultiPoly::one();
        for (arm, leg) in arms_and_legs(self) {
            let factor = alpha
                .mul_scalar(&BigInt::from(arm).into())
                .add(&MultiPoly::int(i64::from(leg) + 1));
            prod = prod.mul(&factor);
        }
        RatFunc::from_poly(prod)
    }

    /// The primed hook product `prod_{s} (alpha * (arm(s) + 1) + leg(s))`.
    pub fn primed_hook_product_alpha(&self) -> RatFunc {
        let alpha = MultiPoly::var(Var::Alpha);
        let mut prod = MultiPoly::one();
        for (arm, leg) in arms_and_legs(self) {
            let factor = alpha
                .mul_scalar(&BigInt::from(arm + 1).into())
                .add(&MultiPoly::int(i64::from(leg)));
            prod = prod.mul(&factor);
        }
        RatFunc::from_poly(prod)
    }

    /// The (q,t)-hook product `prod_{s} (1 - q^{arm(s)} t^{leg(s)+1})`.
    pub fn hook_product_qt(&self) -> RatFunc {
        let mut prod = MultiPoly::one();
        for (arm, leg) in arms_and_legs(self) {
            let m = Mono2::qt(arm, leg + 1);
            prod = prod.mul(&MultiPoly::one().sub(&m));
        }
        RatFunc::from_poly(prod)
    }

    /// The primed (q,t)-hook product `prod_{s} (1 - q^{arm(s)+1} t^{leg(s)})`.
    pub fn primed_hook_product_qt(&self) -> RatFunc {
        let mut prod = MultiPoly::one();
        for (arm, leg) in arms_and_legs(self) {
            let m = Mono2::qt(arm + 1, leg);
            prod = prod.mul(&MultiPoly::one().sub(&m));
        }
        RatFunc::from_poly(prod)
    }

    /// The generalized Pochhammer symbol
    /// `prod_{l>=1} prod_{0<=i<kappa_l} (arg - (l-1)/alpha + i)`
    /// (rows `l` 1-indexed).
    pub fn pochhammer_alpha(&self, arg: &RatFunc) -> RatFunc {
        let inv_alpha = RatFunc::new(MultiPoly::one(), MultiPoly::var(Var::Alpha))
            .expect("alpha is not the zero polynomial");
        let mut prod = RatFunc::one();
        for (l, &p) in self.parts.iter().enumerate() {
            let row_base = arg - &inv_alpha.mul(&RatFunc::int(l as i64));
            for i in 0..p {
                prod = prod.mul(&(&row_base + &RatFunc::int(i64::from(i))));
            }
        }
        prod
    }

    /// The (q,t) generalized Pochhammer symbol
    /// `prod_{(i,j)} (t^{i-1} - arg * q^{j-1})` over 1-indexed cells,
    /// equal to `t^{n(kappa)} prod_i (arg * t^{1-i}; q)_{kappa_i}`.
    pub fn pochhammer_qt(&self, arg: &RatFunc) -> RatFunc {
        let mut prod = RatFunc::one();
        for (i, j) in self.cells() {
            let t_pow = RatFunc::from_poly(Mono2::qt_poly(0, i as u16));
            let q_pow = RatFunc::from_poly(Mono2::qt_poly(j as u16, 0));
            prod = prod.mul(&(&t_pow - &arg.mul(&q_pow)));
        }
        prod
    }

    /// The product `prod_{s != (1,1)} (t^{i-1} - q^{j-1})` over 1-indexed
    /// cells `s = (i,j)` of the diagram, skipping the top-left corner.
    pub fn chi_qt(&self) -> RatFunc {
        let mut prod = RatFunc::one();
        for (i, j) in self.cells() {
            if (i, j) == (0, 0) {
                continue;
            }
            let factor = Mono2::qt_poly(0, i as u16).sub(&Mono2::qt_poly(j as u16, 0));
            prod = prod.mul(&RatFunc::from_poly(factor));
        }
        prod
    }
}

/// Tiny helper for building `q^a t^b` monomials.
struct Mono2;

impl Mono2 {
    fn qt(qe: u32, te: u32) -> MultiPoly {
        Self::qt_poly(qe as u16, te as u16)
    }

    fn qt_poly(qe: u16, te: u16) -> MultiPoly {
        MultiPoly::var(Var::Q).pow(u32::from(qe)).mul(&MultiPoly::var(Var::T).pow(u32::from(te)))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn construction_validates_and_normalizes() {
        assert_eq!(pt(&[3, 1, 0, 0]), pt(&[3, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::empty().size(), 0);
        assert_eq!(pt(&[4, 2, 1]).size(), 7);
        assert_eq!(pt(&[4, 2, 1]).length(), 3);
    }

    #[test]
    fn parsing_and_display_round_trip() {
        for s in ["()", "(3,1,1)", "(7)", "(2,2,2,1)"] {
            let p: Partition = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("3, 1".parse::<Partition>().unwrap(), pt(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("(x)".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(pt(&[4, 2, 1]).conjugate(), pt(&[3, 2, 1, 1]));
        assert_eq!(pt(&[3]).conjugate(), pt(&[1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(pt(&[2, 1]).conjugate(), pt(&[2, 1]));
    }

    #[test]
    fn arms_legs_and_hooks() {
        let k = pt(&[3, 1]);
        assert_eq!(k.arm(0, 0).unwrap(), 2);
        assert_eq!(k.leg(0, 0).unwrap(), 1);
        assert_eq!(k.arm(0, 2).unwrap(), 0);
        assert_eq!(k.leg(0, 2).unwrap(), 0);
        assert_eq!(k.arm(1, 0).unwrap(), 0);
        assert_eq!(k.leg(1, 0).unwrap(), 0);
        assert_eq!(k.arm(1, 1), Err(Error::CellOutsideDiagram(1, 1)));
        assert_eq!(k.leg(2, 0), Err(Error::CellOutsideDiagram(2, 0)));
    }

    #[test]
    fn n_stat_counts_total_leg_length() {
        assert_eq!(pt(&[3, 1]).n_stat(), 1);
        assert_eq!(pt(&[1, 1, 1]).n_stat(), 3);
        for kappa in Partition::enumerate(6, None) {
            let legs: u32 = kappa
                .cells()
                .map(|(i, j)| kappa.leg(i, j).unwrap())
                .sum();
            assert_eq!(kappa.n_stat(), legs);
        }
    }

    #[test]
    fn symmetry_factors() {
        assert_eq!(pt(&[3]).z_stat(), BigInt::from(3));
        assert_eq!(pt(&[2, 1]).z_stat(), BigInt::from(2));
        assert_eq!(pt(&[1, 1, 1]).z_stat(), BigInt::from(6));
        assert_eq!(pt(&[2, 2, 1]).z_stat(), BigInt::from(8));
        // sum over kappa |- n of 1/z_kappa extracts p(1)^n / n! = ... ; the
        // cheap sanity check is sum n!/z_kappa = number of permutations
        // grouped by cycle type.
        let n = 6u32;
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let total: BigInt = Partition::enumerate(n, None)
            .iter()
            .map(|k| &fact / k.z_stat())
            .sum();
        assert_eq!(total, fact);
    }

    #[test]
    fn dominance_order_examples() {
        let a = pt(&[3, 1]);
        let b = pt(&[2, 2]);
        assert!(b.dominance_leq(&a).unwrap());
        assert!(!a.dominance_leq(&b).unwrap());
        assert!(b.dominance_lt(&a).unwrap());
        assert!(a.dominance_leq(&a).unwrap());
        assert!(!a.dominance_lt(&a).unwrap());

        // Incomparable pair of size 6.
        let c = pt(&[3, 1, 1, 1]);
        let d = pt(&[2, 2, 2]);
        assert!(!c.dominance_leq(&d).unwrap());
        assert!(!d.dominance_leq(&c).unwrap());

        assert_eq!(
            pt(&[2]).dominance_leq(&pt(&[3])),
            Err(Error::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn enumeration_order_and_counts() {
        let got = Partition::enumerate(4, None);
        let want = vec![pt(&[4]), pt(&[3, 1]), pt(&[2, 2]), pt(&[2, 1, 1]), pt(&[1, 1, 1, 1])];
        assert_eq!(got, want);

        assert_eq!(
            Partition::enumerate(4, Some(2)),
            vec![pt(&[4]), pt(&[3, 1]), pt(&[2, 2])]
        );
        assert_eq!(Partition::enumerate(0, None), vec![Partition::empty()]);

        // p(n) for n = 0..=10.
        let counts: Vec<usize> = (0..=10).map(|n| Partition::enumerate(n, None).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ordering_matches_enumeration_and_extends_dominance() {
        for n in 0..=7u32 {
            let list = Partition::enumerate(n, None);
            let mut sorted = list.clone();
            sorted.sort();
            assert_eq!(list, sorted);
            let set: BTreeMap<Partition, usize> =
                list.iter().cloned().zip(0..).collect();
            assert!(set.keys().cloned().eq(list.iter().cloned()));

            for x in &list {
                for y in &list {
                    if x.dominance_lt(y).unwrap() {
                        assert!(y < x, "{y} dominates {x} so it must sort first");
                    }
                }
            }
        }
    }

    #[test]
    fn hook_products_match_hand_computations() {
        let k = pt(&[2, 1]);
        assert_eq!(k.hook_product_alpha(), rf("alpha+2"));
        assert_eq!(k.primed_hook_product_alpha(), rf("alpha^2*(2*alpha+1)"));
        assert_eq!(k.hook_product_qt(), rf("(1-q*t^2)*(1-t)^2"));
        assert_eq!(k.primed_hook_product_qt(), rf("(1-q^2*t)*(1-q)^2"));
        assert_eq!(Partition::empty().hook_product_alpha(), RatFunc::one());
    }

    #[test]
    fn hook_transposition_identities() {
        // Swapping the diagram exchanges the two alpha-hook products up to
        // alpha -> 1/alpha and a power of alpha, and exchanges the (q,t)
        // products up to q <-> t.
        let inv_alpha = rf("1/alpha");
        for n in 0..=6u32 {
            for kappa in Partition::enumerate(n, None) {
                let conj = kappa.conjugate();

                let lhs = kappa.primed_hook_product_alpha();
                let rhs = RatFunc::var(Var::Alpha)
                    .pow_u(n)
                    .mul(
                        &conj
                            .hook_product_alpha()
                            .substitute(&BTreeMap::from([(Var::Alpha, inv_alpha.clone())]))
                            .unwrap(),
                    );
                assert_eq!(lhs, rhs, "alpha-hook transpose fails at {kappa}");

                let swap = BTreeMap::from([
                    (Var::Q, RatFunc::var(Var::T)),
                    (Var::T, RatFunc::var(Var::Q)),
                ]);
                let lhs = kappa.primed_hook_product_qt();
                let rhs = conj.hook_product_qt().substitute(&swap).unwrap();
                assert_eq!(lhs, rhs, "qt-hook transpose fails at {kappa}");
            }
        }
    }

    #[test]
    fn pochhammer_alpha_examples_and_transpose() {
        let u = RatFunc::var(Var::U);
        let k = pt(&[2, 1]);
        assert_eq!(k.pochhammer_alpha(&u), rf("(u*(u+1)*(u*alpha-1))/alpha"));

        // [N/alpha]_kappa = (-alpha)^{-|kappa|} [-N]_{kappa'} at alpha -> 1/alpha.
        let n_over_alpha = rf("N/alpha");
        let minus_n = rf("-N");
        let inv_alpha = rf("1/alpha");
        for n in 0..=5u32 {
            for kappa in Partition::enumerate(n, None) {
                let lhs = kappa.pochhammer_alpha(&n_over_alpha);
                let rhs = rf("-alpha")
                    .pow_i(-i64::from(n))
                    .unwrap()
                    .mul(
                        &kappa
                            .conjugate()
                            .pochhammer_alpha(&minus_n)
                            .substitute(&BTreeMap::from([(Var::Alpha, inv_alpha.clone())]))
                            .unwrap(),
                    );
                assert_eq!(lhs, rhs, "pochhammer transpose fails at {kappa}");
            }
        }
    }

    #[test]
    fn pochhammer_qt_matches_row_product_form() {
        let u = RatFunc::var(Var::U);
        let k = pt(&[2, 1]);
        assert_eq!(k.pochhammer_qt(&u), rf("(1-u)*(1-u*q)*(t-u)"));

        // t^{n(kappa)} prod_i (u t^{1-i}; q)_{kappa_i} written with finite
        // q-Pochhammer factors expanded by hand.
        let q = RatFunc::var(Var::Q);
        let t = RatFunc::var(Var::T);
        for n in 0..=5u32 {
            for kappa in Partition::enumerate(n, None) {
                let mut rhs = t.pow_u(kappa.n_stat());
                for (i, &p) in kappa.parts().iter().enumerate() {
                    let x = u.mul(&t.pow_i(-(i as i64)).unwrap());
                    for k in 0..p {
                        rhs = rhs.mul(&(RatFunc::one() - x.mul(&q.pow_u(k))));
                    }
                }
                assert_eq!(kappa.pochhammer_qt(&u), rhs, "row form fails at {kappa}");
            }
        }
    }

    #[test]
    fn chi_qt_examples_and_transpose_sign() {
        assert_eq!(pt(&[2, 1]).chi_qt(), rf("(1-q)*(t-1)"));
        assert_eq!(pt(&[1]).chi_qt(), RatFunc::one());
        assert_eq!(Partition::empty().chi_qt(), RatFunc::one());

        // chi_{kappa'}(t,q) = (-1)^{|kappa|-1} chi_kappa(q,t) for nonempty kappa.
        let swap = BTreeMap::from([
            (Var::Q, RatFunc::var(Var::T)),
            (Var::T, RatFunc::var(Var::Q)),
        ]);
        for n in 1..=6u32 {
            for kappa in Partition::enumerate(n, None) {
                let lhs = kappa.conjugate().chi_qt().substitute(&swap).unwrap();
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let rhs = kappa.chi_qt().mul(&RatFunc::int(sign));
                assert_eq!(lhs, rhs, "chi transpose sign fails at {kappa}");
            }
        }
    }

    mod properties {
        use proptest::prelude::*;

        use super::*;

        fn arbitrary_partition(max_size: u32) -> impl Strategy<Value = Partition> {
            (0..=max_size)
                .prop_flat_map(move |n| {
                    let all = Partition::enumerate(n, None);
                    (0..all.len()).prop_map(move |i| all[i].clone())
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn conjugation_is_an_involution(k in arbitrary_partition(12)) {
                prop_assert_eq!(k.conjugate().conjugate(), k);
            }

            #[test]
            fn conjugation_preserves_size_and_swaps_length(k in arbitrary_partition(12)) {
                let c = k.conjugate();
                prop_assert_eq!(c.size(), k.size());
                prop_assert_eq!(c.part(0) as usize, k.length());
            }

            #[test]
            fn dominance_is_antisymmetric_and_reversed_by_conjugation(
                (a, b) in (1..=8u32).prop_flat_map(|n| {
                    let all = Partition::enumerate(n, None);
                    let len = all.len();
                    let all2 = all.clone();
                    ((0..len).prop_map(move |i| all[i].clone()),
                     (0..len).prop_map(move |j| all2[j].clone()))
                })
            ) {
                let ab = a.dominance_leq(&b).unwrap();
                let ba = b.dominance_leq(&a).unwrap();
                if ab && ba {
                    prop_assert_eq!(&a, &b);
                }
                // Conjugation reverses dominance.
                prop_assert_eq!(ab, b.conjugate().dominance_leq(&a.conjugate()).unwrap());
            }
        }
    }
}
