//! Cross-check of the closed-form cosθ / cos²θ matrix elements against
//! Gauss–Legendre quadrature over normalized associated Legendre functions.
//! The quadrature route never touches the closed forms under test: the
//! basis functions are built by upward j-recursion from the explicit
//! (1−x²)^{m/2} seed, and every integral is a weighted sum over nodes.

use pendulum_core::basis::{assemble, hamiltonian_element, BasisSpec};
use pendulum_core::grid::gauss_jacobi;
use pendulum_core::model::InteractionParams;

const J_TOP: u32 = 12;
const N_QUAD: usize = 40;

/// Table `p[j - m][g]` of normalized associated Legendre values at the
/// quadrature nodes, ∫ P̃_{j'} P̃_j dx = δ.
fn legendre_table(m: u32, nodes: &[f64]) -> Vec<Vec<f64>> {
    let mf = m as f64;
    // seed: P̃_m^m = (2m−1)!! (1−x²)^{m/2} √((2m+1)/(2·(2m)!))
    let mut ln_norm = 0.5 * ((2.0 * mf + 1.0) / 2.0_f64).ln();
    for i in 1..=2 * m {
        ln_norm -= 0.5 * (i as f64).ln();
    }
    let mut ln_dfact = 0.0;
    let mut i = 2 * m as i64 - 1;
    while i >= 2 {
        ln_dfact += (i as f64).ln();
        i -= 2;
    }
    let seed: Vec<f64> = nodes
        .iter()
        .map(|&x| (ln_norm + ln_dfact + 0.5 * mf * (1.0 - x * x).ln()).exp())
        .collect();
    let mut table = vec![seed];
    // three-term recursion x P̃_j = c_{j+1} P̃_{j+1} + c_j P̃_{j−1}
    let c = |j: u32| {
        let (j, m) = (j as f64, mf);
        ((j * j - m * m) / ((2.0 * j + 1.0) * (2.0 * j - 1.0))).sqrt()
    };
    for j in m..m + J_TOP {
        let prev = if j > m { table[(j - m) as usize - 1].clone() } else { vec![0.0; nodes.len()] };
        let cur = &table[(j - m) as usize];
        let next: Vec<f64> = nodes
            .iter()
            .enumerate()
            .map(|(g, &x)| (x * cur[g] - c(j) * prev[g]) / c(j + 1))
            .collect();
        table.push(next);
    }
    table
}

fn integral(weights: &[f64], a: &[f64], b: &[f64], f: impl Fn(f64) -> f64, nodes: &[f64]) -> f64 {
    nodes
        .iter()
        .enumerate()
        .map(|(g, &x)| weights[g] * a[g] * b[g] * f(x))
        .sum()
}

#[test]
fn basis_functions_are_orthonormal() {
    let (nodes, weights) = gauss_jacobi(N_QUAD, 0.0, 0.0).unwrap();
    for m in 0..=3u32 {
        let p = legendre_table(m, &nodes);
        for r in 0..p.len() {
            for s in 0..p.len() {
                let v = integral(&weights, &p[r], &p[s], |_| 1.0, &nodes);
                let want = if r == s { 1.0 } else { 0.0 };
                assert!(
                    (v - want).abs() < 1e-12,
                    "m = {m}, (j', j) = ({}, {}): {v}",
                    m + r as u32,
                    m + s as u32
                );
            }
        }
    }
}

#[test]
fn closed_form_matrix_elements_match_quadrature() {
    let (nodes, weights) = gauss_jacobi(N_QUAD, 0.0, 0.0).unwrap();
    // probe cosθ and cos²θ separately through unit-strength parameters
    let cos_only = InteractionParams::new(1.0, 0.0).unwrap();
    let cos2_only = InteractionParams::new(0.0, 1.0).unwrap();
    for m in 0..=3u32 {
        let p = legendre_table(m, &nodes);
        for r in 0..p.len() {
            for s in 0..p.len() {
                let (jr, js) = (m + r as u32, m + s as u32);
                let cos_q = integral(&weights, &p[r], &p[s], |x| x, &nodes);
                let cos2_q = integral(&weights, &p[r], &p[s], |x| x * x, &nodes);
                let kin = if r == s { (jr * (jr + 1)) as f64 } else { 0.0 };
                let h_cos = hamiltonian_element(jr, js, m, cos_only).unwrap();
                let h_cos2 = hamiltonian_element(jr, js, m, cos2_only).unwrap();
                assert!(
                    (h_cos - (kin - cos_q)).abs() < 1e-10,
                    "cos: m = {m}, ({jr}, {js}): {h_cos} vs {}",
                    kin - cos_q
                );
                assert!(
                    (h_cos2 - (kin - cos2_q)).abs() < 1e-10,
                    "cos²: m = {m}, ({jr}, {js}): {h_cos2} vs {}",
                    kin - cos2_q
                );
            }
        }
    }
}

#[test]
fn assembled_bands_match_quadrature_hamiltonian() {
    let (nodes, weights) = gauss_jacobi(N_QUAD, 0.0, 0.0).unwrap();
    for (eta, zeta) in [(0.0, 0.0), (1.0, 10.0), (10.0, 1.0)] {
        let params = InteractionParams::new(eta, zeta).unwrap();
        for m in 0..=3u32 {
            let h = assemble(BasisSpec::new(m, m + J_TOP).unwrap(), params);
            let p = legendre_table(m, &nodes);
            let dense = h.to_dense();
            for r in 0..dense.len() {
                for s in 0..dense.len() {
                    let (jr, js) = (m + r as u32, m + s as u32);
                    let kin = if r == s { (jr * (jr + 1)) as f64 } else { 0.0 };
                    let pot = integral(&weights, &p[r], &p[s], |x| -eta * x - zeta * x * x, &nodes);
                    assert!(
                        (dense[r][s] - (kin + pot)).abs() < 1e-10 * (1.0 + kin.abs()),
                        "m = {m}, ({jr}, {js}), η = {eta}, ζ = {zeta}"
                    );
                }
            }
        }
    }
}
