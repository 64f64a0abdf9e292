//! Property tests for the Hermitian algebra invariants.

use lagver::ambient::{
    herm_inner, horizontal_project, kaehler_form, quadric_residual, AmbientModel, CVector,
    Signature,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn cvec(dim: usize, lorentzian: bool) -> impl Strategy<Value = CVector> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), dim).prop_map(move |xs| {
        let sig = if lorentzian {
            Signature::lorentzian(xs.len())
        } else {
            Signature::euclidean(xs.len())
        };
        CVector::new(
            xs.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
            sig,
        )
    })
}

proptest! {
    #[test]
    fn herm_inner_is_conjugate_symmetric(u in cvec(4, false), v in cvec(4, false)) {
        let uv = herm_inner(&u, &v).unwrap();
        let vu = herm_inner(&v, &u).unwrap();
        prop_assert!((uv - vu.conj()).norm() < 1e-12);
    }

    #[test]
    fn kaehler_form_is_antisymmetric(u in cvec(3, true), v in cvec(3, true)) {
        prop_assert!(kaehler_form(&u, &u).abs() < 1e-12);
        prop_assert!((kaehler_form(&u, &v) + kaehler_form(&v, &u)).abs() < 1e-12);
    }

    #[test]
    fn horizontal_projection_is_idempotent_and_orthogonal(
        v in cvec(3, false),
        dir in cvec(3, false),
    ) {
        // normalize dir onto the unit sphere to get a quadric point
        let norm = herm_inner(&dir, &dir).unwrap().re.sqrt();
        prop_assume!(norm > 1e-3);
        let z = dir.scale(Complex64::new(1.0 / norm, 0.0));
        let model = AmbientModel::spherical(2);
        let p = horizontal_project(&v, &z, &model).unwrap();
        let pp = horizontal_project(&p, &z, &model).unwrap();
        prop_assert!(pp.sub(&p).coeff_norm() < 1e-12, "projection not idempotent");
        let along_z = herm_inner(&p, &z).unwrap().re;
        let along_iz = herm_inner(&p, &z.mul_i()).unwrap().re;
        prop_assert!(along_z.abs() < 1e-12 && along_iz.abs() < 1e-12);
    }

    #[test]
    fn quadric_residual_is_fiber_invariant(dir in cvec(3, true), phi in 0.0f64..6.2) {
        let model = AmbientModel::hyperbolic(2);
        let q0 = quadric_residual(&dir, &model).unwrap();
        let rotated = dir.scale(Complex64::new(0.0, phi).exp());
        let q1 = quadric_residual(&rotated, &model).unwrap();
        prop_assert!((q0 - q1).abs() < 1e-10 * (1.0 + q0));
    }
}
