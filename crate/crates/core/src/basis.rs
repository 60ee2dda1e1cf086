//! Free-rotor matrix elements and assembly of the truncated
//! combined-interaction Hamiltonian for fixed m.
//!
//! In the |j,m⟩ basis the Hamiltonian H = J² − η cosθ − ζ cos²θ is symmetric
//! pentadiagonal: cosθ couples Δj = ±1, cos²θ couples Δj = 0, ±2.

use crate::error::{Error, Result};
use crate::math;
use crate::model::InteractionParams;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Basis truncation for fixed projection m ≥ 0 (|m| convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisSpec {
    pub m: u32,
    pub j_max: u32,
}

impl BasisSpec {
    pub fn new(m: u32, j_max: u32) -> Result<Self> {
        if j_max < m {
            return Err(Error::InvalidInput(format!(
                "j_max ({j_max}) must be >= m ({m})"
            )));
        }
        Ok(Self { m, j_max })
    }

    /// Basis dimension j_max − m + 1.
    pub fn dim(&self) -> usize {
        (self.j_max - self.m + 1) as usize
    }

    /// Default truncation j_max = m + max(40, ⌈4√(|η|+2ζ)⌉ + 20): librator
    /// states localize over ~√(field strength) basis functions.
    pub fn default_jmax(m: u32, params: InteractionParams) -> u32 {
        let scale = math::ceil(4.0 * math::sqrt(math::abs(params.eta) + 2.0 * params.zeta)) as u32;
        m + (scale + 20).max(40)
    }
}

/// Symmetric pentadiagonal matrix over |j,m⟩, upper band stored.
///
/// `diag[i]` is row j = m+i; `off1[i]` couples j = m+i to j = m+i+1;
/// `off2[i]` couples j = m+i to j = m+i+2.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHamiltonian {
    pub spec: BasisSpec,
    pub diag: Vec<f64>,
    pub off1: Vec<f64>,
    pub off2: Vec<f64>,
}

impl BandedHamiltonian {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Dense expansion (tests and small problems only).
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i];
            if i + 1 < n {
                a[i][i + 1] = self.off1[i];
                a[i + 1][i] = self.off1[i];
            }
            if i + 2 < n {
                a[i][i + 2] = self.off2[i];
                a[i + 2][i] = self.off2[i];
            }
        }
        a
    }

    /// y = H x
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let mut s = self.diag[i] * x[i];
            if i >= 1 {
                s += self.off1[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.off1[i] * x[i + 1];
            }
            if i >= 2 {
                s += self.off2[i - 2] * x[i - 2];
            }
            if i + 2 < n {
                s += self.off2[i] * x[i + 2];
            }
            y[i] = s;
        }
    }

    /// ⟨x|H|x⟩ for a unit-norm coefficient vector.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            s += self.diag[i] * x[i] * x[i];
            if i + 1 < n {
                s += 2.0 * self.off1[i] * x[i] * x[i + 1];
            }
            if i + 2 < n {
                s += 2.0 * self.off2[i] * x[i] * x[i + 2];
            }
        }
        s
    }
}

/// ⟨j−1,m|cosθ|j,m⟩ = √[(j+m)(j−m) / ((2j+1)(2j−1))], j ≥ max(m,1).
fn cos_coupling(j: u32, m: u32) -> f64 {
    let (j, m) = (j as f64, m as f64);
    math::sqrt((j + m) * (j - m) / ((2.0 * j + 1.0) * (2.0 * j - 1.0)))
}

/// ⟨j,m|cos²θ|j,m⟩ = 1/3 + (2/3)·(2j+1)(j(j+1)−3m²) / ((2j+3)(2j+1)(2j−1)).
fn cos2_diagonal(j: u32, m: u32) -> f64 {
    let (j, m) = (j as f64, m as f64);
    1.0 / 3.0
        + 2.0 * (2.0 * j + 1.0) * (j * (j + 1.0) - 3.0 * m * m)
            / (3.0 * (2.0 * j + 3.0) * (2.0 * j + 1.0) * (2.0 * j - 1.0))
}

/// ⟨j−2,m|cos²θ|j,m⟩ = √[(j+m)(j+m−1)(j−m)(j−m−1) / ((2j−1)²(2j+1)(2j−3))].
fn cos2_coupling(j: u32, m: u32) -> f64 {
    let (j, m) = (j as f64, m as f64);
    math::sqrt(
        (j + m) * (j + m - 1.0) * (j - m) * (j - m - 1.0)
            / ((2.0 * j - 1.0) * (2.0 * j - 1.0) * (2.0 * j + 1.0) * (2.0 * j - 3.0)),
    )
}

/// ⟨j_row,m|H|j_col,m⟩ for H = J² − η cosθ − ζ cos²θ; zero outside the band.
pub fn hamiltonian_element(
    j_row: u32,
    j_col: u32,
    m: u32,
    params: InteractionParams,
) -> Result<f64> {
    if j_row < m || j_col < m {
        return Err(Error::InvalidInput(format!(
            "j ({}, {}) must be >= m ({m})",
            j_row, j_col
        )));
    }
    let (lo, hi) = if j_row <= j_col { (j_row, j_col) } else { (j_col, j_row) };
    Ok(match hi - lo {
        0 => {
            let j = lo as f64;
            j * (j + 1.0) - params.zeta * cos2_diagonal(lo, m)
        }
        1 => -params.eta * cos_coupling(hi, m),
        2 => -params.zeta * cos2_coupling(hi, m),
        _ => 0.0,
    })
}

/// Assemble the banded Hamiltonian for the given truncation and fields.
pub fn assemble(spec: BasisSpec, params: InteractionParams) -> BandedHamiltonian {
    let n = spec.dim();
    let m = spec.m;
    let mut diag = Vec::with_capacity(n);
    let mut off1 = Vec::with_capacity(n.saturating_sub(1));
    let mut off2 = Vec::with_capacity(n.saturating_sub(2));
    for i in 0..n {
        let j = m + i as u32;
        let jf = j as f64;
        diag.push(jf * (jf + 1.0) - params.zeta * cos2_diagonal(j, m));
        if i + 1 < n {
            off1.push(-params.eta * cos_coupling(j + 1, m));
        }
        if i + 2 < n {
            off2.push(-params.zeta * cos2_coupling(j + 2, m));
        }
    }
    BandedHamiltonian { spec, diag, off1, off2 }
}

/// Matrix of cosθ in the |j,m⟩ basis (half-bandwidth 1).
pub fn cos_matrix(spec: BasisSpec) -> BandedHamiltonian {
    let n = spec.dim();
    let m = spec.m;
    let mut off1 = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        off1.push(cos_coupling(m + i as u32 + 1, m));
    }
    BandedHamiltonian { spec, diag: vec![0.0; n], off1, off2: vec![0.0; n.saturating_sub(2)] }
}

/// Matrix of cos²θ in the |j,m⟩ basis (half-bandwidth 2).
pub fn cos2_matrix(spec: BasisSpec) -> BandedHamiltonian {
    let n = spec.dim();
    let m = spec.m;
    let mut diag = Vec::with_capacity(n);
    let mut off2 = Vec::with_capacity(n.saturating_sub(2));
    for i in 0..n {
        diag.push(cos2_diagonal(m + i as u32, m));
        if i + 2 < n {
            off2.push(cos2_coupling(m + i as u32 + 2, m));
        }
    }
    BandedHamiltonian { spec, diag, off1: vec![0.0; n.saturating_sub(1)], off2 }
}
