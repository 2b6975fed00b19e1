#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use qset_core::grassmann::{Element, Monomial, Rational};
use qset_core::hfs::Hfs;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let p: i64 = rng.gen_range(-6..=6);
    let p = if p == 0 { 1 } else { p };
    Rational::new(BigInt::from(p), BigInt::from(rng.gen_range(1..=4)))
}

pub fn random_monomial_below(rng: &mut impl Rng, serial_bound: u64) -> Monomial {
    Monomial::from_hfs(Hfs::from_serial_u64(rng.gen_range(0..serial_bound)))
}

pub fn random_element(rng: &mut impl Rng, serial_bound: u64, max_terms: usize) -> Element {
    let n = rng.gen_range(0..=max_terms);
    Element::from_terms((0..n).map(|_| (random_rational(rng), random_monomial_below(rng, serial_bound))))
}

/// Element supported on monomials whose factors are drawn from `labels`.
pub fn random_spinor(rng: &mut impl Rng, labels: &[Hfs], max_terms: usize) -> Element {
    let n = rng.gen_range(1..=max_terms);
    let mut out = Element::zero();
    for _ in 0..n {
        let factors: Vec<Hfs> = labels.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let m = Monomial::from_hfs(Hfs::from_children(factors).unwrap());
        out = &out + &Element::term(random_rational(rng), m);
    }
    out
}

/// Number of inversions against descending order, mod 2.
pub fn descending_parity(serials: &[u64]) -> i8 {
    let mut inv = 0usize;
    for i in 0..serials.len() {
        for j in i + 1..serials.len() {
            if serials[i] < serials[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// Jordan-Wigner fermion matrices on occupation bitstrings: `v_n` creates
/// mode `n`, `v_{d+n}` annihilates it, with sign `(-1)^(occupied modes below n)`.
pub fn jordan_wigner(d: usize, generator: usize) -> IntMatrix {
    let size = 1usize << d;
    let mut m = vec![vec![0i64; size]; size];
    let (mode, create) = if generator <= d {
        (generator - 1, true)
    } else {
        (generator - d - 1, false)
    };
    for state in 0..size {
        let occupied = state >> mode & 1 == 1;
        if occupied == create {
            continue;
        }
        let sign = if (state & ((1 << mode) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
        m[state ^ (1 << mode)][state] = sign;
    }
    m
}

/// Matrix of the ascending product of the generators in `mask`.
pub fn jordan_wigner_blade(d: usize, mask: u32) -> IntMatrix {
    let mut out = int_identity(1 << d);
    for g in 0..2 * d {
        if mask >> g & 1 == 1 {
            out = int_mul(&out, &jordan_wigner(d, g + 1));
        }
    }
    out
}

pub fn rational_matrix_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

/// Rank by exact Gaussian elimination.
pub fn rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot;
                let pivot_row = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
