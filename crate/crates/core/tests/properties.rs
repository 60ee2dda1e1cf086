//! Property tests for structural invariants of the model and solver.

use proptest::prelude::*;

use pendulum_core::basis::{assemble, cos_matrix, BasisSpec};
use pendulum_core::model::{
    eta_from_molecule, locus_eta, zeta_from_molecule, InteractionParams, MoleculeSpec,
};
use pendulum_core::spectral;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Energies come back sorted, the ground state sits between the
    /// potential minimum and the lowest diagonal element (variational
    /// bound from the first basis vector), and the orientation cosine of
    /// every returned state stays in [−1, 1].
    #[test]
    fn spectrum_invariants(
        m in 0u32..4,
        eta in 0.0f64..50.0,
        zeta in 0.0f64..50.0,
    ) {
        let params = InteractionParams::new(eta, zeta).unwrap();
        let s = spectral::solve_params(m, params, 5, None).unwrap();
        for w in s.energies.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-12);
        }
        prop_assert!(s.energies[0] >= -eta - zeta - 1e-9);
        let h = assemble(BasisSpec::new(m, s.j_max).unwrap(), params);
        prop_assert!(s.energies[0] <= h.diag[0] + 1e-9);
        for k in 0..5 {
            let oc = spectral::orientation_cosine(&s, k);
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&oc));
        }
    }

    /// Dense and banded eigensolvers agree on the low spectrum.
    #[test]
    fn dense_banded_agree(
        m in 0u32..3,
        eta in 0.0f64..30.0,
        zeta in 0.0f64..30.0,
    ) {
        let params = InteractionParams::new(eta, zeta).unwrap();
        let dense = spectral::solve_params(m, params, 4, Some(m + 40)).unwrap();
        let banded = spectral::solve_energies(m, params, 4, Some(m + 40)).unwrap();
        for (a, b) in dense.energies.iter().zip(banded.iter()) {
            prop_assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()));
        }
    }

    /// The locus rule η = 2k√ζ inverts exactly: k recovered by rounding.
    #[test]
    fn locus_round_trip(k in 1i32..20, zeta in 0.01f64..1e6) {
        let eta = locus_eta(k, zeta).unwrap();
        let back = (eta / (2.0 * zeta.sqrt())).round() as i32;
        prop_assert_eq!(back, k);
    }

    /// Field-to-parameter conversions are homogeneous of the expected
    /// degree in each physical input.
    #[test]
    fn conversion_scaling(
        scale in 0.1f64..10.0,
        dipole in 0.1f64..10.0,
        field in 1.0f64..500.0,
        polar in 0.1f64..20.0,
        intensity in 1e9f64..1e13,
        b in 0.05f64..5.0,
    ) {
        let eta_base = MoleculeSpec {
            dipole,
            rot_const: b,
            alpha_par: 0.0,
            alpha_perp: 0.0,
            field_static: field,
            intensity: 0.0,
        };
        let zeta_base = MoleculeSpec {
            dipole: 0.0,
            rot_const: b,
            alpha_par: polar,
            alpha_perp: 0.0,
            field_static: 0.0,
            intensity,
        };
        let eta0 = eta_from_molecule(&eta_base).unwrap();
        let zeta0 = zeta_from_molecule(&zeta_base).unwrap();
        // η linear in dipole and field; ζ linear in Δα and intensity
        let mut s = eta_base;
        s.dipole *= scale;
        prop_assert!((eta_from_molecule(&s).unwrap() / eta0 - scale).abs() < 1e-12 * scale);
        let mut s = eta_base;
        s.field_static *= scale;
        prop_assert!((eta_from_molecule(&s).unwrap() / eta0 - scale).abs() < 1e-12 * scale);
        let mut s = zeta_base;
        s.alpha_par *= scale;
        prop_assert!((zeta_from_molecule(&s).unwrap() / zeta0 - scale).abs() < 1e-12 * scale);
        let mut s = zeta_base;
        s.intensity *= scale;
        prop_assert!((zeta_from_molecule(&s).unwrap() / zeta0 - scale).abs() < 1e-12 * scale);
        // both inverse in the rotational constant
        let mut s = eta_base;
        s.rot_const *= scale;
        prop_assert!((eta_from_molecule(&s).unwrap() * scale / eta0 - 1.0).abs() < 1e-11);
        let mut s = zeta_base;
        s.rot_const *= scale;
        prop_assert!((zeta_from_molecule(&s).unwrap() * scale / zeta0 - 1.0).abs() < 1e-11);
    }

    /// ⟨cosθ⟩ of any normalized basis-space vector stays in [−1, 1] and
    /// the cosθ matrix has an empty diagonal and second band.
    #[test]
    fn cos_matrix_structure(m in 0u32..4, seed in any::<u64>()) {
        let spec = BasisSpec::new(m, m + 20).unwrap();
        let c = cos_matrix(spec);
        prop_assert!(c.diag.iter().all(|&v| v == 0.0));
        prop_assert!(c.off2.iter().all(|&v| v == 0.0));
        // cheap deterministic pseudo-random unit vector
        let mut state = seed | 1;
        let mut v: Vec<f64> = (0..c.dim())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        v.iter_mut().for_each(|x| *x /= norm);
        let q = c.quadratic_form(&v);
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&q));
    }
}
