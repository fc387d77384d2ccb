//! Exact linear algebra over ℚ and ℤ.
//!
//! Dense and small: the matrices here are Gram matrices over kernel sets, tables
//! of marks, and incidence matrices with a few dozen rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BRational;

/// Rank over ℚ by Gaussian elimination. The pivot in each column is the entry of
/// smallest height, which keeps intermediate fractions short.
pub fn rational_rank(rows: &[Vec<BRational>]) -> usize {
    let mut m: Vec<Vec<BRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].height());
        let Some(piv) = pivot else { continue };
        m.swap(rank, piv);
        let pv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..ncols {
                let d = &f * &m[rank][c];
                m[r][c] = &m[r][c] - &d;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Echelon form under unimodular row operations. Returns the number of nonzero rows;
/// `companion` receives every row operation applied to `rows`.
fn integer_echelon(rows: &mut [Vec<BigInt>], companion: &mut [Vec<BigInt>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            let best = (pivot_row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r][col].abs());
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            companion.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                for c in 0..ncols {
                    let d = &q * &rows[pivot_row][c];
                    rows[r][c] -= d;
                }
                for c in 0..companion[r].len() {
                    let d = &q * &companion[pivot_row][c];
                    companion[r][c] -= d;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (pivot_row..rows.len()).any(|r| !rows[r][col].is_zero()) {
            pivot_row += 1;
        }
    }
    pivot_row
}

/// Row Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let mut dummy: Vec<Vec<BigInt>> = vec![Vec::new(); m.len()];
    let r = integer_echelon(&mut m, &mut dummy);
    m.truncate(r);
    let ncols = m.first().map_or(0, |r| r.len());
    // Positive pivots, entries above each pivot reduced into [0, pivot).
    for i in 0..m.len() {
        let Some(pc) = (0..ncols).find(|&c| !m[i][c].is_zero()) else { continue };
        if m[i][pc].is_negative() {
            for c in 0..ncols {
                m[i][c] = -m[i][c].clone();
            }
        }
        for k in 0..i {
            let q = m[k][pc].div_floor(&m[i][pc]);
            if q.is_zero() {
                continue;
            }
            for c in 0..ncols {
                let d = &q * &m[i][c];
                m[k][c] -= d;
            }
        }
    }
    m
}

/// A ℤ-basis (in Hermite normal form) of `{ x ∈ ℤ^ncols : a·x = 0 }`.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    // Row-reduce aᵀ while tracking the transformation; rows of the transform that
    // annihilate aᵀ span the kernel, and unimodularity makes it a saturated basis.
    let mut at: Vec<Vec<BigInt>> = (0..ncols)
        .map(|c| a.iter().map(|row| row[c].clone()).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let r = if a.is_empty() {
        0
    } else {
        integer_echelon(&mut at, &mut u)
    };
    hermite_normal_form(&u[r..])
}

/// Rank over ℚ of an integer matrix.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m = rows.to_vec();
    let mut dummy: Vec<Vec<BigInt>> = vec![Vec::new(); m.len()];
    integer_echelon(&mut m, &mut dummy)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Coefficients `c[0..=n]` (constant term first) of `det(x·I − m)`,
/// by the Faddeev–LeVerrier recursion; all divisions are exact over ℤ.
pub fn characteristic_polynomial(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * &b[k][j];
            }
        }
    }
    out
}

/// Expands `Π (x − root)^mult`, constant term first.
pub fn polynomial_from_roots(roots: &[(BigInt, usize)]) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for (root, mult) in roots {
        for _ in 0..*mult {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            poly = next;
        }
    }
    poly
}

pub fn to_bigint_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}
