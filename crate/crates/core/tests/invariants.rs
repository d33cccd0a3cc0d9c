mod common;

use breakage::kinetics::WeightSequence;
use breakage::system::System;
use proptest::prelude::*;

fn state(max_p: usize) -> impl Strategy<Value = Vec<f64>> {
    (2..=max_p).prop_flat_map(|p| {
        prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0..1.0f64, 1 => 0.0..1e-6f64], p)
    })
}

fn pick(kernel: usize, phi: usize, p: usize) -> System<f64> {
    let ks = common::kernels();
    let fs = common::fragments();
    common::system(p, ks[kernel % ks.len()].clone(), fs[phi % fs.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mass_is_conserved(psi in state(40), k in 0usize..16, f in 0usize..16) {
        let sys = pick(k, f, psi.len());
        let rhs = sys.rhs_slice(&psi).unwrap();
        let flux: f64 = rhs.iter().enumerate().map(|(n, r)| (n + 1) as f64 * r).sum();
        let m1: f64 = psi.iter().enumerate().map(|(n, v)| (n + 1) as f64 * v).sum();
        prop_assert!(flux.abs() <= 1e-12 * m1 * sys.gamma_max() + f64::MIN_POSITIVE);
    }

    #[test]
    fn cluster_number_grows(psi in state(40), k in 0usize..16, f in 0usize..16) {
        let sys = pick(k, f, psi.len());
        let terms = sys.reaction_terms(&psi).unwrap();
        let growth: f64 = terms.gain.iter().zip(&terms.loss).map(|(g, l)| g - l).sum();
        let scale: f64 = terms.gain.iter().chain(&terms.loss).sum();
        prop_assert!(growth >= -1e-14 * scale);
    }

    #[test]
    fn empty_species_are_not_depleted(psi in state(30), k in 0usize..16, f in 0usize..16) {
        let sys = pick(k, f, psi.len());
        let rhs = sys.rhs_slice(&psi).unwrap();
        for (v, r) in psi.iter().zip(&rhs) {
            if *v == 0.0 {
                prop_assert!(*r >= 0.0);
            }
        }
    }

    #[test]
    fn tails_dissipate(psi in state(40), k in 0usize..16, f in 0usize..16, quad in any::<bool>()) {
        let sys = pick(k, f, psi.len());
        let lambda = WeightSequence::monomial(if quad { 2.0 } else { 1.0 }).unwrap();
        let terms = sys.reaction_terms(&psi).unwrap();
        for r in [1, 2, 5, 10] {
            let (mut flux, mut scale) = (0.0, 0.0);
            for i in r..=psi.len() {
                flux += lambda.get(i) * (terms.gain[i - 1] - terms.loss[i - 1]);
                scale += lambda.get(i) * (terms.gain[i - 1] + terms.loss[i - 1]);
            }
            prop_assert!(flux <= 1e-12 * scale, "r = {r}: {flux}");
        }
    }

    #[test]
    fn jacobian_matches_central_differences(psi in state(20), k in 0usize..16, f in 0usize..16) {
        let sys = pick(k, f, psi.len());
        let p = psi.len();
        let jac = sys.jacobian_slice(&psi).unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..p {
            let h = 1e-6 * psi[j].abs().max(1.0);
            let (mut up, mut down) = (psi.clone(), psi.clone());
            up[j] += h;
            down[j] -= h;
            let (fu, fd) = (sys.rhs_slice(&up).unwrap(), sys.rhs_slice(&down).unwrap());
            for i in 0..p {
                worst = worst.max((jac[(i, j)] - (fu[i] - fd[i]) / (2.0 * h)).abs());
            }
        }
        prop_assert!(worst <= 1e-6 * jac.max_abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn factored_and_direct_gain_agree(psi in state(25), k in 0usize..16, f in 0usize..16) {
        use breakage::system::Evaluation;
        let sys = pick(k, f, psi.len());
        let direct = sys.clone().with_evaluation(Evaluation::Direct).unwrap();
        let a = sys.rhs_slice(&psi).unwrap();
        let b = direct.rhs_slice(&psi).unwrap();
        let scale = sys.reaction_terms(&psi).unwrap().gain.iter().cloned().fold(1e-300, f64::max);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12 * scale);
        }
    }
}
