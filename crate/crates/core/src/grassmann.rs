//! The Grassmann algebra of quantum sets over its own associations.
//!
//! A basis monomial `ι(f1) ∧ … ∧ ι(fg)` is identified with the set whose
//! members are `f1, …, fg`; its +1 orientation is the one with factors in
//! descending serial order. Elements are finite sums of monomials with
//! exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{QsetError, Result};
use crate::hfs::Hfs;

pub type Rational = BigRational;

/// A sign-normalized wedge of unit sets, stored as the set of its factors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Hfs);

impl Monomial {
    /// The empty wedge, i.e. the empty set `1`.
    pub fn unit() -> Monomial {
        Monomial(Hfs::empty())
    }

    pub fn from_hfs(x: Hfs) -> Monomial {
        Monomial(x)
    }

    pub fn as_hfs(&self) -> &Hfs {
        &self.0
    }

    pub fn into_hfs(self) -> Hfs {
        self.0
    }

    /// Factors in descending serial order.
    pub fn factors(&self) -> &[Hfs] {
        self.0.children()
    }

    pub fn grade(&self) -> usize {
        self.0.grade()
    }

    pub fn rank(&self) -> u32 {
        self.0.rank()
    }

    pub fn contains(&self, x: &Hfs) -> bool {
        self.0.contains(x)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorts `factors` into descending serial order. Returns the parity of the
/// sorting permutation and the resulting monomial, or `(0, 1)` when a factor
/// repeats (`x ∧ x = 0`).
pub fn normalize(mut factors: Vec<Hfs>) -> (i8, Monomial) {
    let mut sign = 1i8;
    // insertion sort; each adjacent swap is one transposition
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 {
            match factors[j - 1].cmp(&factors[j]) {
                std::cmp::Ordering::Less => {
                    factors.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                std::cmp::Ordering::Equal => return (0, Monomial::unit()),
                std::cmp::Ordering::Greater => break,
            }
        }
    }
    (sign, Monomial(Hfs::from_sorted(factors)))
}

/// Wedge of two basis monomials by merging their descending factor lists.
pub fn wedge_monomials(a: &Monomial, b: &Monomial) -> Option<(i8, Monomial)> {
    let (xs, ys) = (a.factors(), b.factors());
    let mut merged = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Greater => {
                merged.push(xs[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                // ys[j] jumps over the remaining xs[i..]
                odd ^= (xs.len() - i) % 2 == 1;
                merged.push(ys[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&xs[i..]);
    merged.extend_from_slice(&ys[j..]);
    let sign = if odd { -1 } else { 1 };
    Some((sign, Monomial(Hfs::from_sorted(merged))))
}

/// A finite linear combination of basis monomials with nonzero rational
/// coefficients. The empty combination is the zero vector, distinct from
/// the vacuum `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    /// The vacuum, the empty set `1`.
    pub fn one() -> Element {
        Element::monomial(Monomial::unit())
    }

    pub fn monomial(m: Monomial) -> Element {
        Element::term(Rational::one(), m)
    }

    pub fn term(coef: Rational, m: Monomial) -> Element {
        let mut e = Element::zero();
        e.add_term(m, coef);
        e
    }

    /// The basis element with serial number `n`.
    pub fn basis(n: u64) -> Element {
        Element::monomial(Monomial(Hfs::from_serial_u64(n)))
    }

    pub fn from_hfs(x: Hfs) -> Element {
        Element::monomial(Monomial(x))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Element {
        let mut e = Element::zero();
        for (c, m) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Adds `coef · m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending serial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest monomial rank present (0 for the zero vector).
    pub fn rank(&self) -> u32 {
        self.terms.keys().map(Monomial::rank).max().unwrap_or(0)
    }

    /// The single monomial of a pure basis element with coefficient 1.
    pub fn as_basis(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    /// Linear extension of a map on basis monomials.
    pub fn map_linear(&self, mut f: impl FnMut(&Monomial) -> Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c * c2);
            }
        }
        out
    }

    /// Grassmann product, bilinear extension of concatenate-then-normalize.
    pub fn wedge(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, m)) = wedge_monomials(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Association `ι`: each basis set `x` goes to the unit set `{x}`.
    pub fn iota(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(Hfs::singleton(m.0.clone())), c.clone()))
                .collect(),
        }
    }

    /// [`Element::iota`], refusing results above `limit`.
    pub fn iota_guarded(&self, limit: u32) -> Result<Element> {
        let rank = self.rank() + 1;
        if !self.is_zero() && rank > limit {
            return Err(QsetError::RankGuard { rank, limit });
        }
        Ok(self.iota())
    }

    /// Multiplies each term by its grade.
    pub fn grade_op(&self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * Rational::from_integer(BigInt::from(m.grade())));
        }
        out
    }

    pub fn grade_project(&self, g: usize) -> Element {
        self.filter(|m| m.grade() == g)
    }

    pub fn truncate_to_rank(&self, r: u32) -> Element {
        self.filter(|m| m.rank() <= r)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Left Grassmann derivative with respect to the unit set `{x}`.
    pub fn derive(&self, x: &Hfs) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if let Some((sign, rest)) = derive_monomial(x, m) {
                out.add_term(rest, if sign < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

/// `∂_x m`: removes factor `x` from `m`, with sign `(-1)^position`.
pub fn derive_monomial(x: &Hfs, m: &Monomial) -> Option<(i8, Monomial)> {
    let pos = m.factors().binary_search_by(|f| x.cmp(f)).ok()?;
    let mut rest = m.factors().to_vec();
    rest.remove(pos);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((sign, Monomial(Hfs::from_sorted(rest))))
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", crate::syntax::print_canonical(self))
    }
}

/// A dual vector; basis monomials are dual to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualElement(pub Element);

/// Bilinear pairing `D ∘ E` in the self-dual monomial basis.
pub fn dual_pair(d: &DualElement, e: &Element) -> Rational {
    let (small, large) = if d.0.len() <= e.len() {
        (&d.0, e)
    } else {
        (e, &d.0)
    };
    small
        .terms()
        .filter_map(|(m, c)| large.terms.get(m).map(|c2| c * c2))
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u64) -> Hfs {
        Hfs::from_serial_u64(n)
    }

    fn e(n: u64) -> Element {
        Element::basis(n)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn normalize_examples() {
        let (sign, m) = normalize(vec![s(0), s(1)]);
        assert_eq!(sign, -1);
        assert_eq!(m.factors(), &[s(1), s(0)]);
        assert_eq!(normalize(vec![s(2), s(2)]).0, 0);
        let (sign, m) = normalize(vec![s(3), s(1), s(0)]);
        assert_eq!(sign, 1);
        assert_eq!(m.factors(), &[s(3), s(1), s(0)]);
    }

    #[test]
    fn wedge_examples() {
        // e^2 = ι(e^1), e^1 = ι(1); descending order puts ι(e^1) first
        assert_eq!(e(2).wedge(&e(1)), e(3));
        assert_eq!(e(1).wedge(&e(2)), -&e(3));
        for n in 0..16 {
            assert_eq!(e(0).wedge(&e(n)), e(n));
            assert_eq!(e(n).wedge(&e(0)), e(n));
        }
        assert!(e(1).wedge(&e(1)).is_zero());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(Element::one().iota(), e(1));
        assert_eq!(e(3).iota(), e(8));
        let a = e(5);
        let b = e(9);
        let lhs = (&a + &b.scale(&q(2))).iota();
        let rhs = &a.iota() + &b.iota().scale(&q(2));
        assert_eq!(lhs, rhs);
        assert!(e(65535).iota_guarded(5).is_ok());
        assert!(e(65535).iota().iota_guarded(5).is_err());
    }

    #[test]
    fn grade_examples() {
        assert!(Element::one().grade_op().is_zero());
        assert_eq!(e(3).grade_op(), e(3).scale(&q(2)));
        let a = e(2);
        let b = e(1);
        let lhs = a.wedge(&b).grade_op();
        let rhs = &a.grade_op().wedge(&b) + &a.wedge(&b.grade_op());
        assert_eq!(lhs, rhs);
        assert_eq!((&e(3) + &e(1)).grade_project(2), e(3));
    }

    #[test]
    fn derive_examples() {
        let x = s(5);
        assert_eq!(Element::from_hfs(Hfs::singleton(x.clone())).derive(&x), Element::one());
        assert_eq!(e(3).derive(&s(0)), -&e(2));
        assert_eq!(e(3).derive(&s(1)), e(1));
        assert!(Element::one().derive(&x).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let d = |x: Element| DualElement(x);
        assert_eq!(dual_pair(&d(e(3)), &e(3)), q(1));
        assert_eq!(dual_pair(&d(e(3)), &e(2)), q(0));
        let lhs = &e(1).scale(&q(2)) + &e(2);
        assert_eq!(dual_pair(&d(lhs), &e(1).scale(&q(3))), q(6));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!((&e(1) + &e(4)).truncate_to_rank(2), e(1));
        let a = &e(65535).iota() + &e(7);
        assert_eq!(a.truncate_to_rank(5), a);
        assert!(Element::zero().truncate_to_rank(3).is_zero());
    }

    #[test]
    fn association_interrupts_associativity() {
        let a = e(1); // ι1
        let b = e(2); // ιι1
        // with c = a the two bracketings coincide: ι(b∧a) = -ι(a∧b)
        let left = a.wedge(&b).iota().wedge(&a);
        let right = a.wedge(&b.wedge(&a).iota());
        assert_eq!(left, right);
        let c = e(4); // ιιι1
        let left = a.wedge(&b).iota().wedge(&c);
        let right = a.wedge(&b.wedge(&c).iota());
        assert_ne!(left, right);
        // plain wedge chains stay associative
        assert_eq!(a.wedge(&b).wedge(&e(4)), a.wedge(&b.wedge(&e(4))));
    }

    #[test]
    fn binary_field_superposition() {
        // ι x'' + ι x' ∧ ι x with x'' = serial 4, x' = serial 2, x = serial 1
        let unit = |n| Element::from_hfs(Hfs::singleton(s(n)));
        let field = &unit(4) + &unit(2).wedge(&unit(1));
        assert_eq!(field.len(), 2);
        let configs: Vec<_> = field.terms().map(|(m, _)| m.factors().to_vec()).collect();
        assert!(configs.contains(&vec![s(4)]));
        assert!(configs.contains(&vec![s(2), s(1)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = &e(3) - &e(3);
        assert!(a.is_zero());
        assert_ne!(a, Element::one());
    }
}
