//! Additive quantification of one-body operators.
//!
//! A one-body operator `H` on the seed space becomes the many-body operator
//! `ΣH = Σ H[n][n'] · (ι v_n ∧ ·) ∘ ∂_{v_n'}` on `⋀V`. Taking the seed to be
//! all sets of rank ≤ r gives `⋀ι'S(r) = S(r+1)`, so quantification can be
//! iterated from rank to rank.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::clifford::SeedSpace;
use crate::error::{QsetError, Result};
use crate::grassmann::{derive_monomial, wedge_monomials, Element, Monomial, Rational};
use crate::hfs::{self, Hfs, ENUMERATION_RANK_LIMIT};

/// Largest seed dimension for quantification (`2^16` basis monomials, the
/// size of `S(4)`).
pub const QUANTIFY_DIM_LIMIT: usize = 16;

/// A `d × d` matrix in the seed basis: `H v_n' = Σ_n matrix[n][n'] v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneBodyOperator {
    pub seed: SeedSpace,
    pub matrix: Vec<Vec<Rational>>,
}

impl OneBodyOperator {
    pub fn new(seed: SeedSpace, matrix: Vec<Vec<Rational>>) -> Result<OneBodyOperator> {
        let d = seed.dim();
        if matrix.len() != d {
            return Err(QsetError::DimensionMismatch {
                expected: d,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != d) {
            return Err(QsetError::DimensionMismatch {
                expected: d,
                found: row.len(),
            });
        }
        Ok(OneBodyOperator { seed, matrix })
    }

    pub fn identity(seed: SeedSpace) -> OneBodyOperator {
        let d = seed.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| Rational::from_integer(BigInt::from((i == j) as i32))).collect())
            .collect();
        OneBodyOperator { seed, matrix }
    }

    /// Matrix unit `v_row ← v_col`, 1-based.
    pub fn unit(seed: SeedSpace, row: usize, col: usize) -> Result<OneBodyOperator> {
        let d = seed.dim();
        for i in [row, col] {
            if i == 0 || i > d {
                return Err(QsetError::IndexError { index: i, max: d });
            }
        }
        let mut matrix = vec![vec![Rational::zero(); d]; d];
        matrix[row - 1][col - 1] = Rational::from_integer(BigInt::from(1));
        Ok(OneBodyOperator { seed, matrix })
    }

    pub fn dim(&self) -> usize {
        self.seed.dim()
    }

    fn same_seed(&self, other: &OneBodyOperator) -> Result<()> {
        if self.seed != other.seed {
            return Err(QsetError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OneBodyOperator) -> Result<OneBodyOperator> {
        self.same_seed(other)?;
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(OneBodyOperator { seed: self.seed.clone(), matrix })
    }

    pub fn scale(&self, k: &Rational) -> OneBodyOperator {
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| x * k).collect())
            .collect();
        OneBodyOperator { seed: self.seed.clone(), matrix }
    }

    pub fn mul(&self, other: &OneBodyOperator) -> Result<OneBodyOperator> {
        self.same_seed(other)?;
        let d = self.dim();
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(Rational::zero(), |acc, k| acc + &self.matrix[i][k] * &other.matrix[k][j])
                    })
                    .collect()
            })
            .collect();
        Ok(OneBodyOperator { seed: self.seed.clone(), matrix })
    }

    pub fn commutator(&self, other: &OneBodyOperator) -> Result<OneBodyOperator> {
        self.mul(other)?
            .add(&other.mul(self)?.scale(&Rational::from_integer(BigInt::from(-1))))
    }
}

/// An ordered basis of monomials for a finite operator.
#[derive(Debug, PartialEq, Eq)]
pub struct FockBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rank: Option<u32>,
}

impl FockBasis {
    pub fn new(monomials: Vec<Monomial>) -> Result<Arc<FockBasis>> {
        let index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        if index.len() != monomials.len() {
            return Err(QsetError::Invalid("repeated basis monomial".into()));
        }
        Ok(Arc::new(FockBasis {
            monomials,
            index,
            rank: None,
        }))
    }

    /// All sets of rank ≤ r in serial order.
    pub fn rank(r: u32) -> Result<Arc<FockBasis>> {
        let monomials: Vec<Monomial> = hfs::enumerate_rank(r)?.map(Monomial::from_hfs).collect();
        let mut basis = FockBasis::new(monomials)?;
        Arc::get_mut(&mut basis).expect("fresh").rank = Some(r);
        Ok(basis)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `Some(r)` when this is exactly the basis of `S(r)`.
    pub fn full_rank(&self) -> Option<u32> {
        self.rank
    }
}

/// A linear operator stored as sparse columns over a [`FockBasis`].
#[derive(Clone, Debug)]
pub struct FockOperator {
    basis: Arc<FockBasis>,
    columns: Vec<BTreeMap<usize, Rational>>,
}

impl PartialEq for FockOperator {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis) && self.columns == other.columns
    }
}

impl Eq for FockOperator {}

impl FockOperator {
    pub fn zero(basis: Arc<FockBasis>) -> FockOperator {
        let columns = vec![BTreeMap::new(); basis.len()];
        FockOperator { basis, columns }
    }

    pub fn identity(basis: Arc<FockBasis>) -> FockOperator {
        FockOperator::diagonal(basis, |_| Rational::from_integer(BigInt::from(1)))
    }

    pub fn diagonal(basis: Arc<FockBasis>, f: impl Fn(&Monomial) -> Rational) -> FockOperator {
        let columns = basis
            .monomials()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let c = f(m);
                let mut col = BTreeMap::new();
                if !c.is_zero() {
                    col.insert(i, c);
                }
                col
            })
            .collect();
        FockOperator { basis, columns }
    }

    /// Builds an operator column by column from its action on basis monomials.
    pub fn from_action(basis: Arc<FockBasis>, mut act: impl FnMut(&Monomial) -> Element) -> Result<FockOperator> {
        let mut columns = Vec::with_capacity(basis.len());
        for m in basis.monomials() {
            columns.push(to_column(&basis, &act(m))?);
        }
        Ok(FockOperator { basis, columns })
    }

    /// Dense matrix `rows[i][j] = ⟨m_i | J | m_j⟩`.
    pub fn from_dense(basis: Arc<FockBasis>, rows: &[Vec<Rational>]) -> Result<FockOperator> {
        let n = basis.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(QsetError::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut op = FockOperator::zero(basis);
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    op.columns[j].insert(i, c.clone());
                }
            }
        }
        Ok(op)
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.columns[col].get(&row).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries as `(row, col, coefficient)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, c)| (*i, j, c)))
    }

    pub fn apply(&self, psi: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in psi.terms() {
            let j = self
                .basis
                .index_of(m)
                .ok_or_else(|| QsetError::NotInBasis(m.to_string()))?;
            for (i, cij) in &self.columns[j] {
                out.add_term(self.basis.monomials[*i].clone(), c * cij);
            }
        }
        Ok(out)
    }

    fn same_basis(&self, other: &FockOperator) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(QsetError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (j, col) in other.columns.iter().enumerate() {
            for (i, c) in col {
                add_entry(&mut out.columns[j], *i, c.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> FockOperator {
        let mut out = FockOperator::zero(self.basis.clone());
        if k.is_zero() {
            return out;
        }
        for (j, col) in self.columns.iter().enumerate() {
            out.columns[j] = col.iter().map(|(i, c)| (*i, c * k)).collect();
        }
        out
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator> {
        self.add(&other.scale(&Rational::from_integer(BigInt::from(-1))))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FockOperator) -> Result<FockOperator> {
        self.same_basis(other)?;
        let mut out = FockOperator::zero(self.basis.clone());
        for (j, col) in other.columns.iter().enumerate() {
            for (k, c) in col {
                for (i, c2) in &self.columns[*k] {
                    add_entry(&mut out.columns[j], *i, c * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &FockOperator) -> Result<FockOperator> {
        self.compose(other)?.sub(&other.compose(self)?)
    }
}

fn add_entry(col: &mut BTreeMap<usize, Rational>, i: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = col.entry(i).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        col.remove(&i);
    }
}

fn to_column(basis: &FockBasis, e: &Element) -> Result<BTreeMap<usize, Rational>> {
    e.terms()
        .map(|(m, c)| {
            basis
                .index_of(m)
                .map(|i| (i, c.clone()))
                .ok_or_else(|| QsetError::NotInBasis(m.to_string()))
        })
        .collect()
}

/// `ΣH = Σ_{n,n'} H[n][n'] (ι v_n ∧ ·) ∘ ∂_{v_n'}` on the `2^d` monomials of
/// `⋀V`. When the seed is all of `S(r)` in serial order, the result lives
/// on the basis of `S(r+1)`.
pub fn quantify(h: &OneBodyOperator) -> Result<FockOperator> {
    let d = h.dim();
    if d > QUANTIFY_DIM_LIMIT {
        return Err(QsetError::SizeGuard(format!(
            "quantification limited to seed dimension {QUANTIFY_DIM_LIMIT}"
        )));
    }
    let labels = h.seed.labels();
    let basis = match full_rank_seed(labels) {
        Some(r) => FockBasis::rank(r + 1)?,
        None => FockBasis::new(h.seed.spinor_basis())?,
    };
    let units: Vec<Monomial> = labels
        .iter()
        .map(|x| Monomial::from_hfs(Hfs::singleton(x.clone())))
        .collect();
    let entries: Vec<(usize, usize, &Rational)> = (0..d)
        .flat_map(|n| (0..d).map(move |n2| (n, n2)))
        .map(|(n, n2)| (n, n2, &h.matrix[n][n2]))
        .filter(|(_, _, c)| !c.is_zero())
        .collect();
    let mut columns = Vec::with_capacity(basis.len());
    for m in basis.monomials() {
        let mut col = BTreeMap::new();
        for &(n, n2, c) in &entries {
            let Some((s1, lowered)) = derive_monomial(&labels[n2], m) else {
                continue;
            };
            let Some((s2, raised)) = wedge_monomials(&units[n], &lowered) else {
                continue;
            };
            let i = basis
                .index_of(&raised)
                .expect("quantified image stays in the seed algebra");
            add_entry(&mut col, i, if s1 * s2 < 0 { -c.clone() } else { c.clone() });
        }
        columns.push(col);
    }
    Ok(FockOperator { basis, columns })
}

/// `Some(r)` when `labels` is exactly `S(r)` in ascending serial order.
fn full_rank_seed(labels: &[Hfs]) -> Option<u32> {
    let r = (0..=3u32).find(|&r| hfs::hexp(r).ok().and_then(|h| h.to_usize()) == Some(labels.len()))?;
    labels
        .iter()
        .enumerate()
        .all(|(i, x)| x.small_serial() == Some(i as u64))
        .then_some(r)
}

/// Occupation number of seed label `x`: the quantified projection onto `x`.
pub fn occupation(seed: &SeedSpace, x: &Hfs) -> Result<FockOperator> {
    let n = seed.index_of(x).ok_or_else(|| QsetError::NotInSeed(x.to_string()))?;
    quantify(&OneBodyOperator::unit(seed.clone(), n, n)?)
}

/// Transports an operator on `S(r)` to the one-body operator on the
/// generators `ι'S(r)` and quantifies it over `⋀ι'S(r) = S(r+1)`.
pub fn lift_rank(j: &FockOperator) -> Result<FockOperator> {
    let r = j
        .basis()
        .full_rank()
        .ok_or_else(|| QsetError::Invalid("operator basis is not a full rank S(r)".into()))?;
    if r + 1 > ENUMERATION_RANK_LIMIT {
        return Err(QsetError::RankGuard {
            rank: r + 1,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    let labels: Vec<Hfs> = j.basis().monomials().iter().map(|m| m.as_hfs().clone()).collect();
    let n = labels.len();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for (row, col, c) in j.triplets() {
        matrix[row][col] = c.clone();
    }
    quantify(&OneBodyOperator::new(SeedSpace::new(labels)?, matrix)?)
}

/// Iterated lift from rank `from` to rank `to`.
pub fn multiquantify(j: &FockOperator, from: u32, to: u32) -> Result<FockOperator> {
    if j.basis().full_rank() != Some(from) {
        return Err(QsetError::Invalid(format!("operator is not defined on S({from})")));
    }
    if to <= from {
        return Err(QsetError::Invalid(format!("target rank {to} must exceed {from}")));
    }
    if to > ENUMERATION_RANK_LIMIT {
        return Err(QsetError::RankGuard {
            rank: to,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    let mut op = j.clone();
    for _ in from..to {
        op = lift_rank(&op)?;
    }
    Ok(op)
}
