//! The neutral Clifford algebra `Cliff(V ⊕ dual V)` of port operators.
//!
//! Generators `v_1 … v_d` span the seed space `V` and `v_{d+1} … v_{2d}`
//! its dual. All generators square to zero and the only nonzero
//! anticommutators are `{v_{d+m}, v_m} = 1`. Elements are stored in the
//! normal-ordered basis: products of distinct generators with ascending
//! indices, encoded as a bitmask (bit `i-1` is generator `v_i`).
//!
//! On the Grassmann algebra `⋀V` generator `v_n` acts as left wedge by the
//! unit set of seed label `n` and `v_{d+n}` as the left derivative with
//! respect to it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{QsetError, Result};
use crate::grassmann::{derive_monomial, Element, Monomial, Rational};
use crate::hfs::Hfs;

/// Largest seed dimension for Clifford elements and spinor application.
pub const OPERATOR_DIM_LIMIT: usize = 12;

/// Largest seed dimension for dense matrix representations (`2^d × 2^d`).
pub const DENSE_DIM_LIMIT: usize = 6;

/// An ordered basis `v_1 … v_d` of distinct sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSpace {
    basis: Vec<Hfs>,
}

impl SeedSpace {
    pub fn new(basis: Vec<Hfs>) -> Result<SeedSpace> {
        if basis.is_empty() {
            return Err(QsetError::Invalid("seed space needs at least one label".into()));
        }
        let mut sorted = basis.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(QsetError::Invalid(format!("repeated seed label {}", w[0])));
        }
        Ok(SeedSpace { basis })
    }

    /// The first `d` sets in serial order: `v_n` has serial `n - 1`.
    pub fn first(d: usize) -> Result<SeedSpace> {
        SeedSpace::new((0..d as u64).map(Hfs::from_serial_u64).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[Hfs] {
        &self.basis
    }

    /// Label of `v_n`, 1-based.
    pub fn label(&self, n: usize) -> Result<&Hfs> {
        n.checked_sub(1)
            .and_then(|i| self.basis.get(i))
            .ok_or(QsetError::IndexError {
                index: n,
                max: self.dim(),
            })
    }

    /// 1-based position of a label.
    pub fn index_of(&self, x: &Hfs) -> Option<usize> {
        self.basis.iter().position(|b| b == x).map(|i| i + 1)
    }

    /// All `2^d` monomials over the seed labels, in ascending serial order.
    pub fn spinor_basis(&self) -> Vec<Monomial> {
        let d = self.dim();
        let mut out: Vec<Monomial> = (0..1u64 << d)
            .map(|mask| {
                let factors = (0..d)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| self.basis[i].clone())
                    .collect();
                crate::grassmann::normalize(factors).1
            })
            .collect();
        out.sort();
        out
    }
}

/// A vector `v + v'` of the duplex space, `v ∈ V`, `v' ∈ dual V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplexVector {
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

/// The neutral quadratic form `‖v + v'‖ = v' ∘ v`.
pub fn duplex_norm(w: &DuplexVector) -> Result<Rational> {
    if w.primal.len() != w.dual.len() {
        return Err(QsetError::DimensionMismatch {
            expected: w.primal.len(),
            found: w.dual.len(),
        });
    }
    Ok(w
        .primal
        .iter()
        .zip(&w.dual)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

fn paired(d: usize, a: u32, b: u32) -> bool {
    a.abs_diff(b) as usize == d
}

/// `blade · v_g` for one normal-ordered blade, with 0-based generator `g`.
fn mul_blade_gen(d: usize, mask: u32, g: u32) -> Vec<(u32, i64)> {
    if mask == 0 {
        return vec![(1 << g, 1)];
    }
    let top = 31 - mask.leading_zeros();
    if top < g {
        return vec![(mask | 1 << g, 1)];
    }
    if top == g {
        return Vec::new();
    }
    // rest · v_top · v_g = -(rest · v_g) · v_top + {v_top, v_g} rest
    let rest = mask & !(1 << top);
    let mut out: Vec<(u32, i64)> = mul_blade_gen(d, rest, g)
        .into_iter()
        .map(|(m, c)| (m | 1 << top, -c))
        .collect();
    if paired(d, top, g) {
        out.push((rest, 1));
    }
    out
}

/// Product of two normal-ordered blades as integer combination of blades.
fn mul_blades(d: usize, a: u32, b: u32) -> BTreeMap<u32, i64> {
    let mut acc = BTreeMap::from([(a, 1i64)]);
    for g in (0..2 * d as u32).filter(|g| b >> g & 1 == 1) {
        let mut next = BTreeMap::new();
        for (m, c) in acc {
            for (m2, c2) in mul_blade_gen(d, m, g) {
                *next.entry(m2).or_insert(0) += c * c2;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element of `Cliff(V ⊕ dual V)` in the normal-ordered blade basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    dim: usize,
    terms: BTreeMap<u32, Rational>,
}

impl CliffordElement {
    fn check_dim(d: usize) -> Result<()> {
        if d == 0 || d > OPERATOR_DIM_LIMIT {
            return Err(QsetError::SizeGuard(format!(
                "seed dimension {d} outside 1..={OPERATOR_DIM_LIMIT}"
            )));
        }
        Ok(())
    }

    pub fn zero(d: usize) -> Result<CliffordElement> {
        Self::check_dim(d)?;
        Ok(CliffordElement {
            dim: d,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(d: usize, c: Rational) -> Result<CliffordElement> {
        let mut out = Self::zero(d)?;
        out.add_term(0, c);
        Ok(out)
    }

    /// The generator `v_i`, 1-based, `1 ≤ i ≤ 2d`.
    pub fn generator(d: usize, i: usize) -> Result<CliffordElement> {
        Self::word(d, &[i])
    }

    /// The normal-ordered form of the product `v_{i1} v_{i2} …` in the
    /// given order (indices 1-based, repeats allowed).
    pub fn word(d: usize, indices: &[usize]) -> Result<CliffordElement> {
        let mut out = Self::scalar(d, Rational::one())?;
        for &i in indices {
            if i == 0 || i > 2 * d {
                return Err(QsetError::IndexError {
                    index: i,
                    max: 2 * d,
                });
            }
            let g = (i - 1) as u32;
            let mut next = BTreeMap::new();
            for (m, c) in &out.terms {
                for (m2, c2) in mul_blade_gen(d, *m, g) {
                    let entry = next.entry(m2).or_insert_with(Rational::zero);
                    *entry += c * int(c2);
                }
            }
            next.retain(|_, c: &mut Rational| !c.is_zero());
            out.terms = next;
        }
        Ok(out)
    }

    /// A single normal-ordered blade from its bitmask.
    pub fn blade(d: usize, mask: u32, c: Rational) -> Result<CliffordElement> {
        let mut out = Self::zero(d)?;
        if d < 16 && mask >> (2 * d) != 0 {
            return Err(QsetError::IndexError {
                index: (32 - mask.leading_zeros()) as usize,
                max: 2 * d,
            });
        }
        out.add_term(mask, c);
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// `(bitmask, coefficient)` pairs in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_dim(&self, other: &CliffordElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(QsetError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> CliffordElement {
        let mut out = CliffordElement {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    /// Clifford product under `{v_{d+m}, v_n} = δ_mn`.
    pub fn mul(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.same_dim(other)?;
        let mut out = CliffordElement {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                for (m, k) in mul_blades(self.dim, *a, *b) {
                    out.add_term(m, ca * cb * int(k));
                }
            }
        }
        Ok(out)
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Principal antiautomorphism: reverses every generator word.
    pub fn reversal(&self) -> CliffordElement {
        let mut out = CliffordElement {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (mask, c) in &self.terms {
            let reversed: Vec<usize> = mask_indices(*mask).into_iter().rev().collect();
            let w = CliffordElement::word(self.dim, &reversed).expect("indices from a valid mask");
            for (m, c2) in w.terms {
                out.add_term(m, c * c2);
            }
        }
        out
    }

    /// Berezin integral over all `2d` generators: the coefficient of
    /// `v_1 v_2 … v_{2d}`.
    pub fn berezin_top(&self) -> Rational {
        self.coefficient(full_mask(2 * self.dim))
    }

    /// Part spanned by normal-ordered blades with `g` generators.
    pub fn blade_grade_part(&self, g: u32) -> CliffordElement {
        CliffordElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == g)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coordinates in the antisymmetrized basis `v_{i1} ∧ … ∧ v_{ik}`,
    /// which carries the `Z`-grading of the Clifford algebra.
    pub fn wedge_coordinates(&self) -> BTreeMap<u32, Rational> {
        let mut table = WedgeTable::new(self.dim);
        let mut remaining = self.clone();
        let mut out = BTreeMap::new();
        while let Some((&mask, c)) = remaining
            .terms
            .iter()
            .max_by_key(|(m, _)| (m.count_ones(), **m))
        {
            let c = c.clone();
            let w = table.get(mask).scale(&c);
            remaining = remaining.sub(&w).expect("same dimension");
            out.insert(mask, c);
        }
        out
    }

    /// Rebuilds an element from antisymmetrized-basis coordinates.
    pub fn from_wedge_coordinates(d: usize, coords: &BTreeMap<u32, Rational>) -> Result<CliffordElement> {
        let mut table = WedgeTable::new(d);
        let mut out = CliffordElement::zero(d)?;
        for (mask, c) in coords {
            out = out.add(&table.get(*mask).scale(c))?;
        }
        Ok(out)
    }

    /// Grade-`g` part in the antisymmetrized grading.
    pub fn grade_part(&self, g: u32) -> CliffordElement {
        let coords: BTreeMap<u32, Rational> = self
            .wedge_coordinates()
            .into_iter()
            .filter(|(m, _)| m.count_ones() == g)
            .collect();
        CliffordElement::from_wedge_coordinates(self.dim, &coords).expect("valid dimension")
    }

    /// `(coefficient, ascending 1-based generator indices)` pairs.
    pub fn to_index_terms(&self) -> Vec<(Rational, Vec<usize>)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.clone(), mask_indices(*m)))
            .collect()
    }

    pub fn from_index_terms(d: usize, terms: &[(Rational, Vec<usize>)]) -> Result<CliffordElement> {
        let mut out = CliffordElement::zero(d)?;
        for (c, idx) in terms {
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(QsetError::Invalid(format!(
                    "generator indices {idx:?} are not strictly ascending"
                )));
            }
            out = out.add(&CliffordElement::word(d, idx)?.scale(c))?;
        }
        Ok(out)
    }

    /// Dense `2^d × 2^d` matrix of the spinor action on `seed`, rows and
    /// columns indexed by [`SeedSpace::spinor_basis`].
    pub fn spinor_matrix(&self, seed: &SeedSpace) -> Result<Vec<Vec<Rational>>> {
        if seed.dim() > DENSE_DIM_LIMIT {
            return Err(QsetError::SizeGuard(format!(
                "dense representation limited to d ≤ {DENSE_DIM_LIMIT}"
            )));
        }
        let basis = seed.spinor_basis();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut mat = vec![vec![Rational::zero(); n]; n];
        for (col, m) in basis.iter().enumerate() {
            let image = spinor_apply(self, &Element::monomial(m.clone()), seed)?;
            for (m2, c) in image.terms() {
                mat[index[m2]][col] = c.clone();
            }
        }
        Ok(mat)
    }
}

fn full_mask(bits: usize) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

/// Antisymmetrized blades `W(S)` expanded in the normal-ordered basis.
struct WedgeTable {
    dim: usize,
    cache: HashMap<u32, CliffordElement>,
}

impl WedgeTable {
    fn new(dim: usize) -> WedgeTable {
        WedgeTable {
            dim,
            cache: HashMap::new(),
        }
    }

    // W(S) = v_s · W(S') - v_s ⌋ W(S'), s = min S, S' = S \ {s};
    // v_s pairs with at most one member of S'.
    fn get(&mut self, mask: u32) -> CliffordElement {
        if let Some(w) = self.cache.get(&mask) {
            return w.clone();
        }
        let d = self.dim;
        let w = if mask.count_ones() <= 1 {
            CliffordElement::blade(d, mask, Rational::one()).expect("valid mask")
        } else {
            let s = mask.trailing_zeros();
            let rest = mask & !(1 << s);
            let head = CliffordElement::blade(d, 1 << s, Rational::one()).expect("valid mask");
            let mut w = head.mul(&self.get(rest)).expect("same dimension");
            let partner = s + d as u32;
            if rest >> partner & 1 == 1 {
                // position of the partner among S' (0-based) fixes the sign
                let pos = (rest & ((1 << partner) - 1)).count_ones();
                let sign = if pos.is_multiple_of(2) { 1 } else { -1 };
                let half = Rational::new(BigInt::from(sign), BigInt::from(2));
                let contracted = self.get(rest & !(1 << partner)).scale(&half);
                w = w.sub(&contracted).expect("same dimension");
            }
            w
        };
        self.cache.insert(mask, w.clone());
        w
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mask, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let word: Vec<String> = mask_indices(*mask).iter().map(|i| format!("v{i}")).collect();
            match (magnitude.is_one(), word.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&word.join("*"))?,
                (false, true) => write!(f, "{magnitude}")?,
                (false, false) => write!(f, "{magnitude}*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cliff[d={}]({self})", self.dim)
    }
}

fn seed_factor_index(seed: &SeedSpace, m: &Monomial) -> Result<Vec<usize>> {
    m.factors()
        .iter()
        .map(|f| {
            seed.index_of(f)
                .ok_or_else(|| QsetError::NotInSeed(f.to_string()))
        })
        .collect()
}

/// Applies generator `g` (1-based) to a basis monomial.
fn apply_generator(seed: &SeedSpace, g: usize, m: &Monomial) -> Option<(i8, Monomial)> {
    let d = seed.dim();
    if g <= d {
        let x = &seed.labels()[g - 1];
        // left wedge by {x}: x moves past the factors greater than it
        let pos = match m.factors().binary_search_by(|f| x.cmp(f)) {
            Ok(_) => return None,
            Err(p) => p,
        };
        let mut factors = m.factors().to_vec();
        factors.insert(pos, x.clone());
        let sign = if pos.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial::from_hfs(Hfs::from_sorted(factors))))
    } else {
        derive_monomial(&seed.labels()[g - d - 1], m)
    }
}

/// Action of a Clifford element on a spinor in `⋀V`.
pub fn spinor_apply(a: &CliffordElement, psi: &Element, seed: &SeedSpace) -> Result<Element> {
    if a.dim() != seed.dim() {
        return Err(QsetError::DimensionMismatch {
            expected: seed.dim(),
            found: a.dim(),
        });
    }
    for (m, _) in psi.terms() {
        seed_factor_index(seed, m)?;
    }
    let mut out = Element::zero();
    for (mask, c) in a.terms() {
        // rightmost generator acts first
        let gens = mask_indices(mask);
        for (m, cm) in psi.terms() {
            let mut state = Some((1i8, m.clone()));
            for &g in gens.iter().rev() {
                state = state.and_then(|(s, cur)| apply_generator(seed, g, &cur).map(|(s2, next)| (s * s2, next)));
            }
            if let Some((s, result)) = state {
                let coef = c * cm;
                out.add_term(result, if s < 0 { -coef } else { coef });
            }
        }
    }
    Ok(out)
}

/// Writes a spinor of `⋀V` as a Clifford element in the primal generators.
pub fn embed_spinor(psi: &Element, seed: &SeedSpace) -> Result<CliffordElement> {
    let mut out = CliffordElement::zero(seed.dim())?;
    for (m, c) in psi.terms() {
        let word = seed_factor_index(seed, m)?;
        out = out.add(&CliffordElement::word(seed.dim(), &word)?.scale(c))?;
    }
    Ok(out)
}

/// Literal Berezin form `∫(dv) ½{q', q}` over all `2d` generators. On
/// spinors of `⋀V` the integrand never contains a dual generator, so this
/// vanishes identically.
pub fn beta_literal(q1: &Element, q2: &Element, seed: &SeedSpace) -> Result<Rational> {
    let a = embed_spinor(q1, seed)?;
    let b = embed_spinor(q2, seed)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Ok(a.anticommutator(&b)?.scale(&half).berezin_top())
}

/// Chevalley spinor form: the coefficient of `v_1 ∧ … ∧ v_d` in
/// `rev(q') ∧ q`.
pub fn beta_chevalley(q1: &Element, q2: &Element, seed: &SeedSpace) -> Result<Rational> {
    let a = embed_spinor(q1, seed)?.reversal();
    let b = embed_spinor(q2, seed)?;
    Ok(a.mul(&b)?.coefficient(full_mask(seed.dim())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaConvention {
    Literal,
    Chevalley,
}

pub fn beta(convention: BetaConvention, q1: &Element, q2: &Element, seed: &SeedSpace) -> Result<Rational> {
    match convention {
        BetaConvention::Literal => beta_literal(q1, q2, seed),
        BetaConvention::Chevalley => beta_chevalley(q1, q2, seed),
    }
}
