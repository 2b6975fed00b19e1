//! Palev statistics of dual odd pairs.
//!
//! The grade-2 part of `Cliff(V ⊕ dual V)` is closed under commutators and
//! forms `spin(d, d)`, of dimension `d(2d-1)`. [`closure_check`] verifies
//! this exactly and extracts the structure tensor. [`contraction_residual`]
//! measures how far the rescaled spin-j pair `X = J_x/√j`, `P = J_y/√j` is
//! from the canonical relation `[X, P] = i` near the highest weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::clifford::CliffordElement;
use crate::error::{QsetError, Result};
use crate::grassmann::Rational;

/// Largest seed dimension for bivector algebras.
pub const PALEV_DIM_LIMIT: usize = 4;

/// Largest spin-j representation dimension `2j+1`.
pub const CONTRACTION_SIZE_LIMIT: u64 = 10_000;

/// Absolute tolerance for the off-diagonal part of the restricted block.
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-9;

/// The grade-2 product of two generators, normal ordered (1-based indices).
pub fn pair_import(d: usize, v: usize, w: usize) -> Result<CliffordElement> {
    CliffordElement::word(d, &[v, w])
}

/// An element of pure grade 2 in the antisymmetrized grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector {
    pub pair: (usize, usize),
    pub element: CliffordElement,
}

/// All `½[v_i, v_j]`, `i < j`, in lexicographic order of `(i, j)`.
pub fn bivector_basis(d: usize) -> Result<Vec<Bivector>> {
    if d == 0 || d > PALEV_DIM_LIMIT {
        return Err(QsetError::RankGuard {
            rank: d as u32,
            limit: PALEV_DIM_LIMIT as u32,
        });
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut out = Vec::with_capacity(d * (2 * d - 1));
    for i in 1..=2 * d {
        for j in i + 1..=2 * d {
            let vi = CliffordElement::generator(d, i)?;
            let vj = CliffordElement::generator(d, j)?;
            out.push(Bivector {
                pair: (i, j),
                element: vi.commutator(&vj)?.scale(&half),
            });
        }
    }
    Ok(out)
}

/// Structure constants `[b_i, b_j] = Σ_k c_ij^k b_k` over [`bivector_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    pub dim: usize,
    pub pairs: Vec<(usize, usize)>,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl StructureTensor {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(i, j, k, c)` in lexicographic order, 0-based.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.entries.iter().map(|((i, j, k), c)| (*i, *j, *k, c))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|((i, j, k), c)| self.get(*j, *i, *k) == -c.clone())
            && (0..self.size()).all(|i| (0..self.size()).all(|k| self.get(i, i, k).is_zero()))
    }

    /// `Σ_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l = 0` for all i, j, k, l.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.size();
        // c_ij^m as sparse rows, keyed by (i, j)
        let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, &Rational)>> = BTreeMap::new();
        for ((i, j, m), c) in &self.entries {
            by_pair.entry((*i, *j)).or_default().push((*m, c));
        }
        let term = |a: usize, b: usize, c: usize, acc: &mut BTreeMap<usize, Rational>| {
            for (m, c1) in by_pair.get(&(a, b)).into_iter().flatten() {
                for (l, c2) in by_pair.get(&(*m, c)).into_iter().flatten() {
                    *acc.entry(*l).or_insert_with(Rational::zero) += *c1 * *c2;
                }
            }
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = BTreeMap::new();
                    term(i, j, k, &mut acc);
                    term(j, k, i, &mut acc);
                    term(k, i, j, &mut acc);
                    if acc.values().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Computes every commutator of basis bivectors, checks that it has no
/// component outside grade 2, and reads off the structure tensor. The
/// expansion `Σ_k c_ij^k b_k` is rebuilt and compared with the commutator
/// before the tensor is returned.
pub fn closure_check(d: usize) -> Result<StructureTensor> {
    let basis = bivector_basis(d)?;
    let position: BTreeMap<u32, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| ((1u32 << (b.pair.0 - 1)) | (1u32 << (b.pair.1 - 1)), k))
        .collect();
    let mut entries = BTreeMap::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let comm = bi.element.commutator(&bj.element)?;
            let mut rebuilt = CliffordElement::zero(d)?;
            for (mask, c) in comm.wedge_coordinates() {
                let k = *position.get(&mask).ok_or(QsetError::ClosureViolation { i, j })?;
                rebuilt = rebuilt.add(&basis[k].element.scale(&c))?;
                entries.insert((i, j, k), c);
            }
            if rebuilt != comm {
                return Err(QsetError::ClosureViolation { i, j });
            }
        }
    }
    Ok(StructureTensor {
        dim: d,
        pairs: basis.iter().map(|b| b.pair).collect(),
        entries,
    })
}

/// Sparse complex matrix in row-major `(row, col) → value` form.
#[derive(Clone, Debug, Default)]
struct SparseMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SparseMatrix {
    fn new(n: usize) -> SparseMatrix {
        SparseMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, i: usize, j: usize, v: Complex64) {
        *self.entries.entry((i, j)).or_insert_with(Complex64::zero) += v;
    }

    fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut rows: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
        for ((k, j), v) in &other.entries {
            rows.entry(*k).or_default().push((*j, *v));
        }
        let mut out = SparseMatrix::new(self.n);
        for ((i, k), a) in &self.entries {
            for (j, b) in rows.get(k).into_iter().flatten() {
                out.add(*i, *j, a * b);
            }
        }
        out
    }

    fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for ((i, j), v) in &other.entries {
            out.add(*i, *j, -v);
        }
        out
    }

    fn scale(&self, k: Complex64) -> SparseMatrix {
        SparseMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(ij, v)| (*ij, v * k)).collect(),
        }
    }
}

/// Spin-j matrices `(J_x, J_y, J_z)` in the basis `m = j, j-1, …, -j`.
fn spin_matrices(j: u64) -> (SparseMatrix, SparseMatrix, SparseMatrix) {
    let n = (2 * j + 1) as usize;
    let jf = j as f64;
    let m_of = |idx: usize| jf - idx as f64;
    let mut jx = SparseMatrix::new(n);
    let mut jy = SparseMatrix::new(n);
    let mut jz = SparseMatrix::new(n);
    for idx in 0..n {
        jz.add(idx, idx, Complex64::new(m_of(idx), 0.0));
    }
    // J_+ |m⟩ = √(j(j+1) - m(m+1)) |m+1⟩; index idx-1 holds m+1
    for idx in 1..n {
        let m = m_of(idx);
        let c = (jf * (jf + 1.0) - m * (m + 1.0)).sqrt();
        jx.add(idx - 1, idx, Complex64::new(c / 2.0, 0.0));
        jx.add(idx, idx - 1, Complex64::new(c / 2.0, 0.0));
        // J_y = (J_+ - J_-) / 2i
        jy.add(idx - 1, idx, Complex64::new(0.0, -c / 2.0));
        jy.add(idx, idx - 1, Complex64::new(0.0, c / 2.0));
    }
    (jx, jy, jz)
}

/// Max-norm of `[X, P] - i·I` on the span of weights `m ≥ j - k`, with
/// `X = J_x/√j`, `P = J_y/√j`. The exact value is `k/j`.
pub fn contraction_residual(j: u64, k: u64) -> Result<f64> {
    if j == 0 || 2 * j + 1 > CONTRACTION_SIZE_LIMIT {
        return Err(QsetError::SizeGuard(format!(
            "spin j = {j} needs 1 ≤ 2j+1 ≤ {CONTRACTION_SIZE_LIMIT}"
        )));
    }
    if k > j {
        return Err(QsetError::SizeGuard(format!("k = {k} exceeds j = {j}")));
    }
    let (jx, jy, _) = spin_matrices(j);
    let scale = Complex64::new(1.0 / (j as f64).sqrt(), 0.0);
    let x = jx.scale(scale);
    let p = jy.scale(scale);
    let mut residual = x.mul(&p).sub(&p.mul(&x));
    for idx in 0..residual.n {
        residual.add(idx, idx, Complex64::new(0.0, -1.0));
    }
    // top weights m = j, …, j-k are indices 0..=k
    let block = (k as usize) + 1;
    let mut norm = 0.0f64;
    for ((r, c), v) in &residual.entries {
        if *r >= block || *c >= block {
            continue;
        }
        if r == c {
            norm = norm.max(v.norm());
        } else if v.norm() > OFF_DIAGONAL_TOLERANCE {
            return Err(QsetError::Invalid(format!(
                "restricted block has off-diagonal entry {v} at ({r}, {c})"
            )));
        }
    }
    Ok(norm)
}

/// One row of a contraction sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionSample {
    pub j: u64,
    pub k: u64,
    pub residual: f64,
}

pub fn contraction_sweep(js: &[u64], ks: &[u64]) -> Result<Vec<ContractionSample>> {
    let mut out = Vec::with_capacity(js.len() * ks.len());
    for &j in js {
        for &k in ks {
            out.push(ContractionSample {
                j,
                k,
                residual: contraction_residual(j, k)?,
            });
        }
    }
    Ok(out)
}
