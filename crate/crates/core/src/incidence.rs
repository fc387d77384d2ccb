//! The incidence matrix of `M ~ N ⇔ MN ∩ Φ(Q) = 1` on the kernel set of
//! `Q = E × C_p × C_{p^{h−1}}`, in coordinates `(a, b) ∈ (E*)²`, and its spectrum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{frattini, is_prime, make_group};
use crate::linalg::{characteristic_polynomial, polynomial_from_roots};
use crate::simple_dim::kernel_set;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub eigenvalue: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    pub p: u64,
    pub e: u32,
    pub h: u32,
    pub size: usize,
    pub row_sum: Option<i64>,
    pub spectrum: Vec<SpectrumEntry>,
    pub charpoly_matches: bool,
    #[serde(skip)]
    pub matrix: Vec<Vec<i64>>,
}

fn digits(mut x: u64, p: u64, e: u32) -> Vec<u64> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// `S[(a,b)][(a',b')] = 1` iff `b − b' = λ(a − a')` for some `λ ∈ F_p`, with
/// `a, b` running over `F_p^e` in base-`p` order and `(a, b)` encoded as `a·p^e + b`.
pub fn incidence_matrix(p: u64, e: u32) -> Vec<Vec<i64>> {
    let q = p.pow(e);
    let pairs: Vec<(Vec<u64>, Vec<u64>)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| (digits(a, p, e), digits(b, p, e)))
        .collect();
    let related = |(a, b): &(Vec<u64>, Vec<u64>), (a2, b2): &(Vec<u64>, Vec<u64>)| {
        (0..p).any(|l| (0..e as usize).all(|i| (b[i] + p - b2[i]) % p == l * ((a[i] + p - a2[i]) % p) % p))
    };
    pairs
        .iter()
        .map(|x| pairs.iter().map(|y| i64::from(related(x, y))).collect())
        .collect()
}

/// Eigenvalues with multiplicities: `(1)` for `e = 0`, otherwise
/// `p^{e+1} − p + 1`, `p^e − p + 1`, `1 − p` with multiplicities
/// `1`, `p^{e+1} − p`, `p^{2e} − p^{e+1} + p − 1`.
pub fn expected_spectrum(p: u64, e: u32) -> Vec<SpectrumEntry> {
    let p = p as i64;
    if e == 0 {
        return vec![SpectrumEntry { eigenvalue: 1, multiplicity: 1 }];
    }
    let pe = p.pow(e);
    let raw = [
        (p * pe - p + 1, 1),
        (pe - p + 1, p * pe - p),
        (1 - p, pe * pe - p * pe + p - 1),
    ];
    let mut merged: BTreeMap<i64, i64> = BTreeMap::new();
    for (l, m) in raw {
        *merged.entry(l).or_insert(0) += m;
    }
    merged
        .into_iter()
        .rev()
        .filter(|&(_, m)| m > 0)
        .map(|(eigenvalue, m)| SpectrumEntry { eigenvalue, multiplicity: m as usize })
        .collect()
}

fn charpoly_of(m: &[Vec<i64>]) -> Vec<BigInt> {
    characteristic_polynomial(&crate::linalg::to_bigint_matrix(m))
}

fn polynomial_of(spectrum: &[SpectrumEntry]) -> Vec<BigInt> {
    let roots: Vec<(BigInt, usize)> = spectrum.iter().map(|s| (BigInt::from(s.eigenvalue), s.multiplicity)).collect();
    polynomial_from_roots(&roots)
}

pub fn incidence_report(p: u64, e: u32, h: u32) -> Result<IncidenceReport> {
    if !is_prime(p as usize) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if h < 3 {
        return Err(Error::Precondition(format!("h = {h} < 3")));
    }
    let size = (p as u128).checked_pow(2 * e).filter(|&s| s <= 4096).ok_or_else(|| {
        Error::Resource(format!("incidence matrix of size p^(2e) for p = {p}, e = {e}"))
    })? as usize;
    let matrix = if e == 0 { vec![vec![1]] } else { incidence_matrix(p, e) };
    debug_assert_eq!(matrix.len(), size);
    let sums: Vec<i64> = matrix.iter().map(|r| r.iter().sum()).collect();
    let row_sum = sums.first().copied().filter(|s| sums.iter().all(|t| t == s));
    let spectrum = expected_spectrum(p, e);
    let charpoly_matches = charpoly_of(&matrix) == polynomial_of(&spectrum);
    Ok(IncidenceReport { p, e, h, size, row_sum, spectrum, charpoly_matches, matrix })
}

/// Which kernels of `Q = Elem(p,e) × L`, `L = C_p × C_{p^{h−1}}`, index the
/// group-side matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelScope {
    /// Every `N` with `Q/N ≅ L` and `N ∩ Φ(Q) = 1`.
    All,
    /// Only the graphs `{(x, φ(x))}` of homomorphisms `φ: E → L`, i.e. the
    /// kernels meeting `L` trivially. These are the ones the coordinates describe.
    Graphs,
}

/// The relation `MN ∩ Φ(Q) = 1` on kernels of `Q = Elem(p,e) × C_p × C_{p^{h−1}}`
/// with target `C_p × C_{p^{h−1}}`, as an incidence matrix in kernel-set order.
///
/// For `e ≥ 1` the full kernel set is larger than `p^{2e}`: an `N` may meet `L`
/// in a subgroup of order `p` outside `Φ(Q)` and still have quotient `≅ L`.
pub fn group_incidence_matrix(p: u64, e: u32, h: u32, scope: KernelScope) -> Result<Vec<Vec<i64>>> {
    let top = p.pow(h - 1);
    let hspec = format!("C{p}xC{top}");
    let qspec = if e == 0 { hspec.clone() } else { format!("Elem({p},{e})x{hspec}") };
    let q = make_group(&qspec)?;
    let hg = make_group(&hspec)?;
    let phi = frattini(&q)?;
    // factors fold left, so the elements of the L factor are exactly 0..|L|
    let l = q.subgroup_unchecked(q.set(0..hg.order()));
    let kernels: Vec<_> = kernel_set(&q, &hg)?
        .kernels
        .into_iter()
        .filter(|n| scope == KernelScope::All || n.members().intersection_len(l.members()) == 1)
        .collect();
    Ok(kernels
        .iter()
        .map(|m| {
            kernels
                .iter()
                .map(|n| i64::from(q.product(m, n).members().intersection_len(phi.members()) == 1))
                .collect()
        })
        .collect())
}

/// The graph-kernel matrix has the same characteristic polynomial as
/// [`incidence_matrix`] (they agree up to reindexing).
pub fn group_realization_matches(p: u64, e: u32, h: u32) -> Result<bool> {
    let from_group = group_incidence_matrix(p, e, h, KernelScope::Graphs)?;
    let coords = if e == 0 { vec![vec![1]] } else { incidence_matrix(p, e) };
    Ok(charpoly_of(&from_group) == charpoly_of(&coords))
}

/// `det S ≢ 0 (mod p)` for the incidence matrix on the full kernel set.
pub fn full_kernel_matrix_invertible_mod_p(p: u64, e: u32, h: u32) -> Result<bool> {
    let m = group_incidence_matrix(p, e, h, KernelScope::All)?;
    let det = crate::linalg::determinant(&crate::linalg::to_bigint_matrix(&m));
    Ok(det % BigInt::from(p) != BigInt::from(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(v: &[(i64, usize)]) -> Vec<SpectrumEntry> {
        v.iter().map(|&(eigenvalue, multiplicity)| SpectrumEntry { eigenvalue, multiplicity }).collect()
    }

    #[test]
    fn small_cases() {
        let r = incidence_report(2, 0, 3).unwrap();
        assert_eq!(r.matrix, vec![vec![1]]);
        assert!(r.charpoly_matches);
        let r = incidence_report(2, 1, 3).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(r.spectrum, spectrum(&[(3, 1), (1, 2), (-1, 1)]));
        assert!(r.charpoly_matches);
        assert!(incidence_report(2, 1, 2).is_err());
        assert!(incidence_report(4, 1, 3).is_err());
    }

    #[test]
    fn spectra_and_row_sums() {
        for (p, e) in [(2u64, 0u32), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (5, 1)] {
            let r = incidence_report(p, e, 3).unwrap();
            assert!(r.charpoly_matches, "p={p} e={e}");
            assert_eq!(r.spectrum.iter().map(|s| s.multiplicity).sum::<usize>(), r.size);
            if e > 0 {
                let pe = p.pow(e) as i64;
                assert_eq!(r.row_sum, Some(p as i64 * pe - p as i64 + 1), "p={p} e={e}");
            }
        }
    }

    #[test]
    fn incidence_matrix_is_symmetric() {
        let m = incidence_matrix(3, 2);
        assert!((0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i])));
        assert!((0..m.len()).all(|i| m[i][i] == 1));
    }

    #[test]
    fn group_realization() {
        for (p, e, h) in [(2u64, 0u32, 3u32), (2, 1, 3), (2, 2, 3), (2, 1, 4), (3, 1, 3)] {
            let graphs = group_incidence_matrix(p, e, h, KernelScope::Graphs).unwrap();
            assert_eq!(graphs.len(), p.pow(2 * e) as usize);
            assert!(group_realization_matches(p, e, h).unwrap(), "p={p} e={e} h={h}");
            assert!(full_kernel_matrix_invertible_mod_p(p, e, h).unwrap(), "p={p} e={e} h={h}");
        }
    }

    #[test]
    fn full_kernel_set_is_larger() {
        // e-dimensional subspaces of F_p^{e+2} avoiding the line Ω_1(Q) ∩ Φ(Q)
        for (p, e, expected) in [(2u64, 1u32, 6usize), (2, 2, 28), (3, 1, 12)] {
            assert_eq!(group_incidence_matrix(p, e, 3, KernelScope::All).unwrap().len(), expected);
        }
    }
}
