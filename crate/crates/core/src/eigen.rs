//! Symmetric eigensolvers: a dense Householder + implicit-QL path for small
//! or full-spectrum problems, and a pentadiagonal Sturm-count bisection +
//! banded inverse-iteration path for large truncations (j_max ~ 10⁴).
//!
//! Both paths are validated against each other and against analytic spectra
//! in the test suite; the spectral module picks between them by dimension.

use crate::basis::BandedHamiltonian;
use crate::error::{Error, Result};
use crate::math;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

// ---------------------------------------------------------------------------
// Dense path: Householder tridiagonalization + implicit QL with shifts
// ---------------------------------------------------------------------------

/// Householder reduction of a symmetric matrix to tridiagonal form with
/// accumulation of the orthogonal transform in `a` (classic tred2).
fn tred2(a: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = a.len();
    if n == 1 {
        d[0] = a[0][0];
        e[0] = 0.0;
        a[0][0] = 1.0;
        return;
    }
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += math::abs(a[i][k]);
            }
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let mut f = a[i][l];
                let g = if f >= 0.0 { -math::sqrt(h) } else { math::sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    a[j][i] = a[i][j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i][k] * a[k][j];
                }
                for k in 0..i {
                    a[k][j] -= g * a[k][i];
                }
            }
        }
        d[i] = a[i][i];
        a[i][i] = 1.0;
        for j in 0..i {
            a[j][i] = 0.0;
            a[i][j] = 0.0;
        }
    }
}

/// Implicit QL with Wilkinson shifts on a tridiagonal matrix (classic tqli).
/// `d` holds the diagonal, `e[1..]` the subdiagonal on entry. If `z` is
/// given, its columns are rotated along (pass the tred2 accumulation, or the
/// identity for a plain tridiagonal matrix).
fn tqli(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [Vec<f64>]>) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(d[m]) + math::abs(d[m + 1]);
                if math::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::NoConvergence(format!(
                    "implicit QL: eigenvalue {l} of tridiagonal dim {n} after 64 sweeps"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = math::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + math::copysign(r, g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = math::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zz) = z.as_deref_mut() {
                    for row in zz.iter_mut() {
                        f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Full eigendecomposition of a dense symmetric matrix. Consumes `a`.
/// Returns ascending eigenvalues and the matching eigenvectors
/// (`vectors[k]` is the k-th eigenvector).
pub fn dense_sym_eig(mut a: Vec<Vec<f64>>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut a, &mut d, &mut e);
    tqli(&mut d, &mut e, Some(&mut a))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("non-NaN eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| a[row][col]).collect())
        .collect();
    Ok((values, vectors))
}

/// Full eigendecomposition of a symmetric tridiagonal matrix
/// (diagonal `d`, subdiagonal `sub` of length n−1).
pub fn tridiag_eig(d: &[f64], sub: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = d.len();
    if n == 0 || sub.len() + 1 != n {
        return Err(Error::InvalidInput("bad tridiagonal dimensions".into()));
    }
    let mut dd = d.to_vec();
    let mut e = vec![0.0; n];
    for i in 1..n {
        e[i] = sub[i - 1];
    }
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    tqli(&mut dd, &mut e, Some(&mut z))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| dd[i].partial_cmp(&dd[j]).expect("non-NaN eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| dd[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| z[row][col]).collect())
        .collect();
    Ok((values, vectors))
}

// ---------------------------------------------------------------------------
// Banded path: Sturm-count bisection + inverse iteration
// ---------------------------------------------------------------------------

/// Number of eigenvalues of the pentadiagonal matrix strictly below `sigma`,
/// via the inertia of the LDLᵀ factorization of (H − σI). Zero pivots are
/// nudged by a tiny relative amount, the standard Sturm-sequence safeguard.
pub fn sturm_count_below(h: &BandedHamiltonian, sigma: f64) -> usize {
    let n = h.dim();
    let scale = band_inf_norm(h).max(1.0);
    let tiny = f64::EPSILON * f64::EPSILON * scale;
    let mut count = 0usize;
    // d, l1, l2 of the two previous columns
    let (mut d1, mut d2) = (0.0f64, 0.0f64);
    let (mut l1p, mut l2p, mut l2pp) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        let mut di = h.diag[i] - sigma - d1 * l1p * l1p - d2 * l2pp * l2pp;
        if di == 0.0 {
            di = tiny;
        }
        if di < 0.0 {
            count += 1;
        }
        let b = if i + 1 < n { h.off1[i] } else { 0.0 };
        let l1 = (b - d1 * l1p * l2p) / di;
        let l2 = if i + 2 < n { h.off2[i] / di } else { 0.0 };
        d2 = d1;
        d1 = di;
        l2pp = l2p;
        l2p = l2;
        l1p = l1;
    }
    count
}

fn band_inf_norm(h: &BandedHamiltonian) -> f64 {
    let n = h.dim();
    let mut best = 0.0f64;
    for i in 0..n {
        let mut s = math::abs(h.diag[i]);
        if i >= 1 {
            s += math::abs(h.off1[i - 1]);
        }
        if i + 1 < n {
            s += math::abs(h.off1[i]);
        }
        if i >= 2 {
            s += math::abs(h.off2[i - 2]);
        }
        if i + 2 < n {
            s += math::abs(h.off2[i]);
        }
        best = best.max(s);
    }
    best
}

/// Gershgorin bounds on the spectrum.
fn gershgorin(h: &BandedHamiltonian) -> (f64, f64) {
    let n = h.dim();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let mut r = 0.0;
        if i >= 1 {
            r += math::abs(h.off1[i - 1]);
        }
        if i + 1 < n {
            r += math::abs(h.off1[i]);
        }
        if i >= 2 {
            r += math::abs(h.off2[i - 2]);
        }
        if i + 2 < n {
            r += math::abs(h.off2[i]);
        }
        lo = lo.min(h.diag[i] - r);
        hi = hi.max(h.diag[i] + r);
    }
    (lo, hi)
}

/// The `n_lowest` smallest eigenvalues by bisection on the Sturm count.
pub fn banded_lowest_eigenvalues(h: &BandedHamiltonian, n_lowest: usize) -> Result<Vec<f64>> {
    let n = h.dim();
    if n_lowest == 0 || n_lowest > n {
        return Err(Error::InvalidInput(format!(
            "requested {n_lowest} eigenvalues of a dimension-{n} matrix"
        )));
    }
    let (glo, ghi) = gershgorin(h);
    let span = (ghi - glo).max(1.0);
    let mut out = Vec::with_capacity(n_lowest);
    for r in 0..n_lowest {
        // eigenvalue of index r: smallest sigma with count_below(sigma) >= r+1
        let (mut lo, mut hi) = (glo - 1e-3 * span, ghi + 1e-3 * span);
        // nested-interval shortcut: eigenvalue r is above eigenvalue r-1
        if let Some(&prev) = out.last() {
            lo = prev;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let width = hi - lo;
            if !(width > f64::EPSILON * (math::abs(lo).max(math::abs(hi)) + 1.0)) {
                break;
            }
            if sturm_count_below(h, mid) >= r + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

// ---- banded LU with partial pivoting (LAPACK-style gbtrf/gbtrs) ----

const KL: usize = 2;
const KU: usize = 2;
const LDAB: usize = 2 * KL + KU + 1; // row count of the band storage

struct BandedLu {
    n: usize,
    /// column-major band storage: entry A[i][j] lives at ab[j][KL+KU+i−j]
    ab: Vec<[f64; LDAB]>,
    ipiv: Vec<usize>,
}

fn banded_lu(h: &BandedHamiltonian, sigma: f64) -> BandedLu {
    let n = h.dim();
    let mut ab = vec![[0.0; LDAB]; n];
    let center = KL + KU;
    for j in 0..n {
        ab[j][center] = h.diag[j] - sigma;
        if j >= 1 {
            ab[j][center - 1] = h.off1[j - 1]; // A[j-1][j]
        }
        if j >= 2 {
            ab[j][center - 2] = h.off2[j - 2]; // A[j-2][j]
        }
        if j + 1 < n {
            ab[j][center + 1] = h.off1[j]; // A[j+1][j]
        }
        if j + 2 < n {
            ab[j][center + 2] = h.off2[j]; // A[j+2][j]
        }
    }
    let mut ipiv = vec![0usize; n];
    for j in 0..n {
        let km = KL.min(n - 1 - j);
        // pivot search in column j, rows j..=j+km
        let mut p = 0usize;
        let mut pmax = math::abs(ab[j][center]);
        for i in 1..=km {
            let v = math::abs(ab[j][center + i]);
            if v > pmax {
                pmax = v;
                p = i;
            }
        }
        ipiv[j] = j + p;
        if pmax == 0.0 {
            // singular column: substitute a tiny pivot so the solve stays
            // finite (inverse iteration only needs a direction)
            ab[j][center] = f64::EPSILON * f64::EPSILON;
            continue;
        }
        if p != 0 {
            // swap rows j and j+p over the columns both touch
            let jj_hi = (j + KU + KL).min(n - 1);
            for jj in j..=jj_hi {
                let oa = center + j - jj;
                let ob = center + j + p - jj;
                let tmp = ab[jj][oa];
                ab[jj][oa] = ab[jj][ob];
                ab[jj][ob] = tmp;
            }
        }
        let piv = ab[j][center];
        for i in 1..=km {
            ab[j][center + i] /= piv;
        }
        let jj_hi = (j + KU + KL).min(n - 1);
        for jj in (j + 1)..=jj_hi {
            let ujj = ab[jj][center + j - jj];
            if ujj != 0.0 {
                for i in 1..=km {
                    ab[jj][center + j + i - jj] -= ab[j][center + i] * ujj;
                }
            }
        }
    }
    BandedLu { n, ab, ipiv }
}

impl BandedLu {
    fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        let center = KL + KU;
        // forward: apply P and L
        for j in 0..n.saturating_sub(1) {
            let p = self.ipiv[j];
            if p != j {
                b.swap(j, p);
            }
            let km = KL.min(n - 1 - j);
            for i in 1..=km {
                b[j + i] -= self.ab[j][center + i] * b[j];
            }
        }
        // back substitution with U (bandwidth KU+KL above the diagonal)
        for i in (0..n).rev() {
            let hi = (i + KU + KL).min(n - 1);
            let mut s = b[i];
            for jj in (i + 1)..=hi {
                s -= self.ab[jj][center + i - jj] * b[jj];
            }
            b[i] = s / self.ab[i][center + i - i];
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in v {
        s += x * x;
    }
    math::sqrt(s)
}

fn normalize(v: &mut [f64]) {
    let nrm = norm(v);
    if nrm > 0.0 {
        for x in v.iter_mut() {
            *x /= nrm;
        }
    }
}

/// Deterministic start vector for inverse iteration (xorshift stream).
fn seed_vector(n: usize, salt: u64) -> Vec<f64> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ salt.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        // map to (-1, 1)
        v.push((state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0);
    }
    v
}

/// Lowest `n_lowest` eigenpairs: bisection eigenvalues + banded inverse
/// iteration, with reorthogonalization inside near-degenerate clusters.
pub fn banded_lowest_eigenpairs(
    h: &BandedHamiltonian,
    n_lowest: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let values = banded_lowest_eigenvalues(h, n_lowest)?;
    let n = h.dim();
    let scale = band_inf_norm(h).max(1.0);
    let cluster_tol = 1e-8 * scale;
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n_lowest);
    let mut cluster_start = 0usize;
    for (r, &lam) in values.iter().enumerate() {
        if r > 0 && lam - values[r - 1] > cluster_tol {
            cluster_start = r;
        }
        // separate shifts inside a cluster so repeated solves don't collapse
        // onto the same direction
        let shift = lam + (r - cluster_start) as f64 * 64.0 * f64::EPSILON * scale;
        let lu = banded_lu(h, shift);
        let mut v = seed_vector(n, r as u64);
        normalize(&mut v);
        for _ in 0..4 {
            lu.solve(&mut v);
            for prev in vectors[cluster_start..r].iter() {
                let dot: f64 = v.iter().zip(prev.iter()).map(|(a, b)| a * b).sum();
                for (x, p) in v.iter_mut().zip(prev.iter()) {
                    *x -= dot * p;
                }
            }
            let nrm = norm(&v);
            if nrm == 0.0 {
                return Err(Error::NoConvergence(format!(
                    "inverse iteration lost the direction for eigenpair {r} (dim {n})"
                )));
            }
            for x in v.iter_mut() {
                *x /= nrm;
            }
        }
        vectors.push(v);
    }
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisSpec;

    fn penta(diag: Vec<f64>, off1: Vec<f64>, off2: Vec<f64>) -> BandedHamiltonian {
        let n = diag.len() as u32;
        BandedHamiltonian {
            spec: BasisSpec::new(0, n - 1).unwrap(),
            diag,
            off1,
            off2,
        }
    }

    /// deterministic pseudo-random pentadiagonal test matrix
    fn random_penta(n: usize, salt: u64) -> BandedHamiltonian {
        let d = seed_vector(n, salt);
        let o1 = seed_vector(n - 1, salt + 1);
        let o2 = seed_vector(n - 2, salt + 2);
        penta(
            d.iter().map(|x| 3.0 * x).collect(),
            o1,
            o2.iter().map(|x| 0.7 * x).collect(),
        )
    }

    #[test]
    fn dense_eig_tridiagonal_toeplitz() {
        // diag 2, off -1: eigenvalues 2 - 2 cos(k pi/(n+1))
        let n = 24;
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = 2.0;
            if i + 1 < n {
                a[i][i + 1] = -1.0;
                a[i + 1][i] = -1.0;
            }
        }
        let (vals, vecs) = dense_sym_eig(a.clone()).unwrap();
        for (k, &v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * math::cos((k + 1) as f64 * math::PI / (n as f64 + 1.0));
            assert!((v - exact).abs() < 1e-12, "eigenvalue {k}: {v} vs {exact}");
        }
        // residual check ‖Av − λv‖
        for k in [0usize, 5, n - 1] {
            for i in 0..n {
                let mut av = 0.0;
                for j in 0..n {
                    av += a[i][j] * vecs[k][j];
                }
                assert!((av - vals[k] * vecs[k][i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn tridiag_eig_matches_dense() {
        let n = 30;
        let d = seed_vector(n, 7);
        let sub = seed_vector(n - 1, 8);
        let (tv, tw) = tridiag_eig(&d, &sub).unwrap();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = d[i];
            if i + 1 < n {
                a[i][i + 1] = sub[i];
                a[i + 1][i] = sub[i];
            }
        }
        let (dv, _) = dense_sym_eig(a).unwrap();
        for k in 0..n {
            assert!((tv[k] - dv[k]).abs() < 1e-11);
        }
        // orthonormality
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = tw[i].iter().zip(tw[j].iter()).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sturm_count_matches_dense_spectrum() {
        let h = random_penta(40, 3);
        let (vals, _) = dense_sym_eig(h.to_dense()).unwrap();
        for sigma in [-3.0, -1.0, -0.1, 0.0, 0.4, 2.0, 5.0] {
            let expected = vals.iter().filter(|&&v| v < sigma).count();
            assert_eq!(sturm_count_below(&h, sigma), expected, "sigma={sigma}");
        }
    }

    #[test]
    fn banded_eigenvalues_match_dense() {
        for salt in [1u64, 11, 21] {
            let h = random_penta(60, salt);
            let (dense_vals, _) = dense_sym_eig(h.to_dense()).unwrap();
            let vals = banded_lowest_eigenvalues(&h, 12).unwrap();
            for k in 0..12 {
                assert!(
                    (vals[k] - dense_vals[k]).abs() < 1e-11,
                    "salt={salt} k={k}: {} vs {}",
                    vals[k],
                    dense_vals[k]
                );
            }
        }
    }

    #[test]
    fn banded_eigenpairs_residuals_and_orthonormality() {
        let h = random_penta(80, 5);
        let (vals, vecs) = banded_lowest_eigenpairs(&h, 10).unwrap();
        let n = h.dim();
        let mut y = vec![0.0; n];
        for k in 0..10 {
            h.matvec(&vecs[k], &mut y);
            let mut res = 0.0f64;
            for i in 0..n {
                res = res.max((y[i] - vals[k] * vecs[k][i]).abs());
            }
            assert!(res < 1e-9, "residual {res} for pair {k}");
        }
        for i in 0..10 {
            for j in 0..10 {
                let dot: f64 = vecs[i].iter().zip(vecs[j].iter()).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < 1e-8, "({i},{j}) dot {dot}");
            }
        }
    }

    #[test]
    fn banded_handles_degenerate_cluster() {
        // two exactly degenerate blocks
        let h = penta(
            vec![1.0, 1.0, 5.0, 5.0, 9.0],
            vec![0.0; 4],
            vec![0.0; 3],
        );
        let (vals, vecs) = banded_lowest_eigenpairs(&h, 4).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        let dot: f64 = vecs[0].iter().zip(vecs[1].iter()).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-8);
    }

    #[test]
    fn banded_lu_solves_match_dense() {
        let h = random_penta(25, 9);
        let lu = banded_lu(&h, 0.3);
        let mut b = seed_vector(25, 42);
        let rhs = b.clone();
        lu.solve(&mut b);
        // verify (H - 0.3 I) x = rhs
        let mut y = vec![0.0; 25];
        h.matvec(&b, &mut y);
        for i in 0..25 {
            let lhs = y[i] - 0.3 * b[i];
            assert!((lhs - rhs[i]).abs() < 1e-9, "row {i}: {lhs} vs {}", rhs[i]);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let h = random_penta(10, 1);
        assert!(banded_lowest_eigenvalues(&h, 0).is_err());
        assert!(banded_lowest_eigenvalues(&h, 11).is_err());
        assert!(dense_sym_eig(Vec::new()).is_err());
    }
}
