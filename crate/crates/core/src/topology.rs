//! Topology of the fixed-m eigenenergy surfaces over the (η, ζ) plane:
//! dense scans, gap maps between adjacent surfaces, location of the avoided
//! intersections (which line up along the loci η = 2k√ζ), the
//! single-/doublet level pattern at those loci, and sign changes of the
//! orientation cosine along η.

use crate::basis::{assemble, BasisSpec};
use crate::error::{Error, Result};
use crate::math;
use crate::model::{locus_eta, InteractionParams};
use crate::spectral::{self, EigenMethod};
use alloc::format;
use alloc::vec::Vec;

/// One (η, ζ) sample of a surface scan.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub eta: f64,
    pub zeta: f64,
    pub energies: Vec<f64>,
    pub orientation: Option<Vec<f64>>,
    pub alignment: Option<Vec<f64>>,
}

/// Solve one scan sample; with `observables` the directional expectation
/// values are computed from banded eigenvectors, otherwise only the Sturm
/// bisection for eigenvalues runs.
pub fn scan_point(
    m: u32,
    eta: f64,
    zeta: f64,
    n_states: usize,
    observables: bool,
) -> Result<ScanPoint> {
    let params = InteractionParams::new(eta, zeta)?;
    if observables {
        let j_max = BasisSpec::default_jmax(m, params);
        let h = assemble(BasisSpec::new(m, j_max)?, params);
        let s = spectral::solve_with_method(&h, params, n_states, EigenMethod::Banded)?;
        let orientation = (0..n_states).map(|k| spectral::orientation_cosine(&s, k)).collect();
        let alignment = (0..n_states).map(|k| spectral::alignment_cosine(&s, k)).collect();
        Ok(ScanPoint {
            eta,
            zeta,
            energies: s.energies,
            orientation: Some(orientation),
            alignment: Some(alignment),
        })
    } else {
        let energies = spectral::solve_energies(m, params, n_states, None)?;
        Ok(ScanPoint { eta, zeta, energies, orientation: None, alignment: None })
    }
}

/// Lowest `n_states` eigensurfaces sampled on an (η, ζ) product grid.
/// Storage layout: `points[i_zeta][i_eta]`.
#[derive(Debug, Clone)]
pub struct SurfaceScan {
    pub m: u32,
    pub etas: Vec<f64>,
    pub zetas: Vec<f64>,
    pub n_states: usize,
    pub points: Vec<Vec<ScanPoint>>,
}

/// Serial product-grid scan (callers that want parallelism can distribute
/// `scan_point` themselves; results are identical point by point).
pub fn scan(
    m: u32,
    etas: &[f64],
    zetas: &[f64],
    n_states: usize,
    observables: bool,
) -> Result<SurfaceScan> {
    if etas.is_empty() || zetas.is_empty() || n_states == 0 {
        return Err(Error::InvalidInput("empty scan grid or zero states".into()));
    }
    let mut points = Vec::with_capacity(zetas.len());
    for &z in zetas {
        let mut row = Vec::with_capacity(etas.len());
        for &e in etas {
            row.push(scan_point(m, e, z, n_states, observables)?);
        }
        points.push(row);
    }
    Ok(SurfaceScan { m, etas: etas.to_vec(), zetas: zetas.to_vec(), n_states, points })
}

/// Gap E_{pair+1} − E_pair over the scan grid, layout `[i_zeta][i_eta]`.
pub fn gap_map(scan: &SurfaceScan, pair: usize) -> Result<Vec<Vec<f64>>> {
    if pair + 1 >= scan.n_states {
        return Err(Error::InvalidInput(format!(
            "pair ({}, {}) needs n_states > {}",
            pair,
            pair + 1,
            pair + 1
        )));
    }
    Ok(scan
        .points
        .iter()
        .map(|row| row.iter().map(|p| p.energies[pair + 1] - p.energies[pair]).collect())
        .collect())
}

/// A located avoided intersection on the ζ = const line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingLocus {
    /// order of the intersection; the locus prediction is η = 2k√ζ
    pub k: i32,
    /// energy ranks whose gap closes
    pub pair: (usize, usize),
    pub zeta: f64,
    /// refined position of the gap minimum
    pub eta_star: f64,
    pub predicted_eta: f64,
    /// gap at the refined minimum (parabolic estimate)
    pub gap: f64,
}

/// Search outcome per requested order k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingResult {
    pub k: i32,
    /// `None`: no gap minimum matching this order was found
    pub locus: Option<CrossingLocus>,
}

/// Locate the k = 1..k_max avoided intersections at fixed ζ by scanning η
/// with the given spacing, taking interior local minima of the rank-(k, k+1)
/// gap, refining each by a three-point parabola, and keeping minima whose
/// position rounds to the matching locus index.
pub fn find_crossings(
    m: u32,
    zeta: f64,
    k_max: u32,
    eta_spacing: f64,
) -> Result<Vec<CrossingResult>> {
    if !(zeta > 0.0) {
        return Err(Error::InvalidInput(format!("crossing search needs zeta > 0, got {zeta}")));
    }
    if !(eta_spacing > 0.0 && eta_spacing <= 0.25) {
        return Err(Error::InvalidInput(format!(
            "eta_spacing must be in (0, 0.25], got {eta_spacing} (coarser grids miss narrow minima)"
        )));
    }
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be >= 1".into()));
    }
    let eta_max = 2.0 * (k_max as f64 + 0.6) * math::sqrt(zeta);
    let n_pts = math::ceil(eta_max / eta_spacing) as usize;
    let n_states = k_max as usize + 2;
    let mut energies = Vec::with_capacity(n_pts);
    let mut etas = Vec::with_capacity(n_pts);
    // fixed truncation across the sweep so surfaces vary smoothly
    let params_top = InteractionParams::new(eta_max, zeta)?;
    let j_max = BasisSpec::default_jmax(m, params_top);
    for i in 1..=n_pts {
        let eta = i as f64 * eta_spacing;
        let params = InteractionParams::new(eta, zeta)?;
        energies.push(spectral::solve_energies(m, params, n_states, Some(j_max))?);
        etas.push(eta);
    }
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let r = k as usize; // gap of ranks (k, k+1)
        let mut best: Option<CrossingLocus> = None;
        for i in 1..n_pts - 1 {
            let gm = energies[i - 1][r + 1] - energies[i - 1][r];
            let g0 = energies[i][r + 1] - energies[i][r];
            let gp = energies[i + 1][r + 1] - energies[i + 1][r];
            if g0 < gm && g0 < gp {
                // parabolic refinement of the minimum
                let denom = gm - 2.0 * g0 + gp;
                let dx = if denom > 0.0 { 0.5 * (gm - gp) / denom } else { 0.0 };
                let eta_star = etas[i] + dx * eta_spacing;
                let gap = g0 - 0.25 * (gm - gp) * dx;
                let matched = math::round(eta_star / (2.0 * math::sqrt(zeta))) as i32;
                if matched == k as i32 && best.map_or(true, |b| gap < b.gap) {
                    best = Some(CrossingLocus {
                        k: k as i32,
                        pair: (r, r + 1),
                        zeta,
                        eta_star,
                        predicted_eta: locus_eta(k as i32, zeta)?,
                        gap,
                    });
                }
            }
        }
        out.push(CrossingResult { k: k as i32, locus: best });
    }
    Ok(out)
}

/// Level pattern at the k-th locus point η = 2k√ζ: how many single levels
/// precede the first tunneling doublet, and the doublet splittings.
#[derive(Debug, Clone)]
pub struct LevelPattern {
    pub k: u32,
    pub zeta: f64,
    pub eta: f64,
    /// number of non-degenerate levels below the first doublet
    pub singles: usize,
    /// splittings of the successive doublets
    pub splittings: Vec<f64>,
    /// ζ too small for a clean single/doublet separation
    pub inconclusive: bool,
}

/// Default dominance ratio: a gap is a doublet splitting when it is at
/// least this factor smaller than the preceding gap.
pub const LEVEL_PATTERN_RATIO: f64 = 10.0;

pub fn level_pattern(m: u32, k: u32, zeta: f64, ratio: f64) -> Result<LevelPattern> {
    if k == 0 || !(zeta > 0.0) || !(ratio > 1.0) {
        return Err(Error::InvalidInput(format!(
            "level_pattern needs k >= 1, zeta > 0, ratio > 1 (got k = {k}, zeta = {zeta}, ratio = {ratio})"
        )));
    }
    let eta = locus_eta(k as i32, zeta)?;
    let params = InteractionParams::new(eta, zeta)?;
    let n_states = 2 * k as usize + 8;
    let e = spectral::solve_energies(m, params, n_states, None)?;
    let gaps: Vec<f64> = e.windows(2).map(|w| w[1] - w[0]).collect();
    let mut singles = gaps.len();
    for i in 1..gaps.len() {
        if gaps[i] < gaps[i - 1] / ratio {
            singles = i;
            break;
        }
    }
    let mut splittings = Vec::new();
    let mut i = singles;
    while i < gaps.len() && (i == 0 || gaps[i] < gaps[i - 1] / ratio) {
        splittings.push(gaps[i]);
        i += 2;
    }
    Ok(LevelPattern {
        k,
        zeta,
        eta,
        singles,
        splittings,
        inconclusive: zeta < 25.0,
    })
}

/// Sign changes of the orientation cosine of the state labeled (J, m) along
/// an η sweep at fixed ζ.
#[derive(Debug, Clone)]
pub struct SignChangeReport {
    pub j: u32,
    pub m: u32,
    pub zeta: f64,
    pub count: usize,
    /// midpoints of the bracketing η intervals
    pub locations: Vec<f64>,
    /// set when the sweep spacing exceeds 0.1 somewhere: zero crossings are
    /// abrupt near the avoided intersections and a coarse sweep can miss
    /// sign-change pairs
    pub spacing_warning: bool,
}

pub fn sign_changes(m: u32, j: u32, zeta: f64, etas: &[f64]) -> Result<SignChangeReport> {
    if j < m {
        return Err(Error::InvalidInput(format!("need J >= m, got J = {j}, m = {m}")));
    }
    if etas.len() < 2 {
        return Err(Error::InvalidInput("need at least two eta samples".into()));
    }
    let rank = (j - m) as usize;
    let mut spacing_warning = false;
    let mut values = Vec::with_capacity(etas.len());
    let mut prev = None;
    for &eta in etas {
        if let Some(p) = prev {
            if eta <= p {
                return Err(Error::InvalidInput("eta sweep must be strictly increasing".into()));
            }
            if eta - p > 0.1 * (1.0 + 1e-9) {
                spacing_warning = true;
            }
        }
        prev = Some(eta);
        let p = scan_point(m, eta, zeta, rank + 1, true)?;
        values.push(p.orientation.expect("requested observables")[rank]);
    }
    let mut count = 0;
    let mut locations = Vec::new();
    for i in 1..values.len() {
        if values[i - 1] != 0.0 && values[i] != 0.0 && (values[i - 1] < 0.0) != (values[i] < 0.0) {
            count += 1;
            locations.push(0.5 * (etas[i - 1] + etas[i]));
        }
    }
    Ok(SignChangeReport { j, m, zeta, count, locations, spacing_warning })
}
