//! Eigensolution of the banded Hamiltonian, adiabatic state labeling,
//! directional observables, truncation-convergence control, and closed-form
//! limiting spectra.

use crate::basis::{assemble, cos2_matrix, cos_matrix, BandedHamiltonian, BasisSpec};
use crate::eigen;
use crate::error::{Error, Result};
use crate::math;
use crate::model::InteractionParams;
use alloc::format;
use alloc::vec::Vec;

/// Below this dimension the dense Householder+QL path is used; at or above
/// it, Sturm bisection + banded inverse iteration. Both paths are validated
/// against the same oracles.
pub const DENSE_FALLBACK_DIM: usize = 256;

/// Ceiling for the automatic truncation search.
pub const CONVERGE_JMAX_CEILING: u32 = 4000;

/// Quasi-degeneracy threshold for reporting tunneling doublets.
pub fn is_quasi_degenerate(e_lower: f64, e_upper: f64) -> bool {
    (e_upper - e_lower) < 1e-6 * math::abs(e_lower).max(1.0)
}

/// Adiabatic free-rotor label: J = m + energy rank, valid because all
/// intersections of the eigensurfaces are avoided at fixed m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateLabel {
    pub j: u32,
    pub m: u32,
}

/// Solved lowest part of a fixed-m spectrum.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub params: InteractionParams,
    pub m: u32,
    /// ascending eigenvalues (rotational-constant units)
    pub energies: Vec<f64>,
    /// `vectors[k]` are the |j,m⟩ coefficients of the k-th state,
    /// j = m .. m+dim−1
    pub vectors: Vec<Vec<f64>>,
    pub labels: Vec<StateLabel>,
    /// basis truncation used
    pub j_max: u32,
}

/// Which eigensolver backend `solve_with_method` should take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Dense,
    Banded,
}

/// Sign convention: first coefficient of significant magnitude positive.
fn fix_sign(v: &mut [f64]) {
    let mut largest = 0.0f64;
    for &x in v.iter() {
        largest = largest.max(math::abs(x));
    }
    if largest == 0.0 {
        return;
    }
    for i in 0..v.len() {
        if math::abs(v[i]) > 1e-8 * largest {
            if v[i] < 0.0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
            return;
        }
    }
}

/// Lowest `n_lowest` eigenpairs with a forced backend choice.
pub fn solve_with_method(
    h: &BandedHamiltonian,
    params: InteractionParams,
    n_lowest: usize,
    method: EigenMethod,
) -> Result<Spectrum> {
    let dim = h.dim();
    if n_lowest == 0 || n_lowest > dim {
        return Err(Error::InvalidInput(format!(
            "n_lowest = {n_lowest} out of range for basis dimension {dim}"
        )));
    }
    let (energies, mut vectors) = match method {
        EigenMethod::Dense => {
            let (vals, vecs) = eigen::dense_sym_eig(h.to_dense())?;
            (vals[..n_lowest].to_vec(), vecs[..n_lowest].to_vec())
        }
        EigenMethod::Banded => eigen::banded_lowest_eigenpairs(h, n_lowest)?,
    };
    for v in vectors.iter_mut() {
        fix_sign(v);
    }
    let m = h.spec.m;
    let labels = (0..n_lowest)
        .map(|rank| StateLabel { j: m + rank as u32, m })
        .collect();
    Ok(Spectrum {
        params,
        m,
        energies,
        vectors,
        labels,
        j_max: h.spec.j_max,
    })
}

/// Lowest `n_lowest` eigenpairs of the assembled Hamiltonian; dense path
/// below `DENSE_FALLBACK_DIM`, banded Sturm/inverse-iteration path above.
pub fn solve(h: &BandedHamiltonian, params: InteractionParams, n_lowest: usize) -> Result<Spectrum> {
    let method = if h.dim() < DENSE_FALLBACK_DIM {
        EigenMethod::Dense
    } else {
        EigenMethod::Banded
    };
    solve_with_method(h, params, n_lowest, method)
}

/// Assemble at the default (or given) truncation and solve.
pub fn solve_params(
    m: u32,
    params: InteractionParams,
    n_lowest: usize,
    j_max: Option<u32>,
) -> Result<Spectrum> {
    let j_max = j_max.unwrap_or_else(|| BasisSpec::default_jmax(m, params));
    let spec = BasisSpec::new(m, j_max)?;
    let h = assemble(spec, params);
    solve(&h, params, n_lowest)
}

/// Lowest `n_lowest` eigenvalues only (cheap path for parameter scans).
pub fn solve_energies(
    m: u32,
    params: InteractionParams,
    n_lowest: usize,
    j_max: Option<u32>,
) -> Result<Vec<f64>> {
    let j_max = j_max.unwrap_or_else(|| BasisSpec::default_jmax(m, params));
    let spec = BasisSpec::new(m, j_max)?;
    let h = assemble(spec, params);
    eigen::banded_lowest_eigenvalues(&h, n_lowest)
}

/// ⟨cosθ⟩ of the given state.
pub fn orientation_cosine(s: &Spectrum, state: usize) -> f64 {
    let spec = BasisSpec { m: s.m, j_max: s.j_max };
    cos_matrix(spec).quadratic_form(&s.vectors[state])
}

/// ⟨cos²θ⟩ of the given state.
pub fn alignment_cosine(s: &Spectrum, state: usize) -> f64 {
    let spec = BasisSpec { m: s.m, j_max: s.j_max };
    cos2_matrix(spec).quadratic_form(&s.vectors[state])
}

/// Smallest tested truncation such that doubling it changes none of the
/// lowest `n_states` energies by more than `tol`. Doubles from the default
/// truncation; errors out once the doubled probe would exceed `ceiling`.
pub fn converge_jmax_with_ceiling(
    m: u32,
    params: InteractionParams,
    n_states: usize,
    tol: f64,
    ceiling: u32,
) -> Result<u32> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tol must be > 0, got {tol}")));
    }
    let mut j = BasisSpec::default_jmax(m, params);
    let mut e_here = solve_energies(m, params, n_states, Some(j))?;
    loop {
        let j2 = 2 * j;
        let e_next = solve_energies(m, params, n_states, Some(j2))?;
        let mut worst = 0.0f64;
        for (a, b) in e_here.iter().zip(e_next.iter()) {
            worst = worst.max(math::abs(a - b));
        }
        if worst <= tol {
            return Ok(j);
        }
        if j2 > ceiling {
            return Err(Error::CeilingReached(format!(
                "truncation search: j_max = {j2} exceeds ceiling {ceiling} with residual change {worst:e} > tol {tol:e}"
            )));
        }
        j = j2;
        e_here = e_next;
    }
}

/// `converge_jmax_with_ceiling` at the default ceiling.
pub fn converge_jmax(m: u32, params: InteractionParams, n_states: usize, tol: f64) -> Result<u32> {
    converge_jmax_with_ceiling(m, params, n_states, tol, CONVERGE_JMAX_CEILING)
}

/// Harmonic-librator limit of the purely orienting interaction:
/// E = −η + n√(2η) with n = 2J − |m|.
pub fn librator_energy_eta(n: u32, eta: f64) -> f64 {
    -eta + n as f64 * math::sqrt(2.0 * eta)
}

/// Parity branch selector for `librator_energy_zeta`: states with even /
/// odd J − m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Harmonic-librator limit of the purely aligning interaction (ζ → ∞).
///
/// Odd branch (J − m odd): E = −ζ + 2J√ζ + m²/2 − J²/2 − 1/2.
/// The even branch is written as the odd branch at J+1, so the
/// tunneling-doublet degeneracy E_even(J, m) = E_odd(J+1, m) holds exactly;
/// a variant of the even branch shifted by +1/2 circulates, but it is
/// inconsistent with that degeneracy and with the converged ζ → ∞ spectra
/// (e.g. m = 0, ζ = 10⁴ gives E₀ = −9801.0025, matching −ζ + 2√ζ − 1).
pub fn librator_energy_zeta(j: u32, m: u32, parity: Parity, zeta: f64) -> Result<f64> {
    if j < m {
        return Err(Error::InvalidInput(format!("J ({j}) must be >= m ({m})")));
    }
    let odd = |jj: f64, mm: f64| -> f64 {
        -zeta + 2.0 * jj * math::sqrt(zeta) + 0.5 * mm * mm - 0.5 * jj * jj - 0.5
    };
    let (jf, mf) = (j as f64, m as f64);
    match parity {
        Parity::Odd => {
            if (j - m) % 2 == 0 {
                return Err(Error::InvalidInput(format!(
                    "(J−m) = {} is even; requested the odd branch",
                    j - m
                )));
            }
            Ok(odd(jf, mf))
        }
        Parity::Even => {
            if (j - m) % 2 == 1 {
                return Err(Error::InvalidInput(format!(
                    "(J−m) = {} is odd; requested the even branch",
                    j - m
                )));
            }
            Ok(odd(jf + 1.0, mf))
        }
    }
}

/// Harmonic-librator limit of the combined interactions:
/// E = −η − ζ + √(2η + 4ζ)·(2n ± m + 1/2).
pub fn librator_energy_combined(n: u32, m: u32, plus: bool, eta: f64, zeta: f64) -> f64 {
    let sign = if plus { 1.0 } else { -1.0 };
    -eta - zeta + math::sqrt(2.0 * eta + 4.0 * zeta) * (2.0 * n as f64 + sign * m as f64 + 0.5)
}
