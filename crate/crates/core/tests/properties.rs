use num_complex::Complex64;
use photon_am::angular_algebra::{j_operators_for, verify_su2};
use photon_am::decay_dynamics::sz_over_hbar;
use photon_am::fock_core::{
    annihilation, build_space, commutator, creation, number, Direction, HilbertSpace, ModeLabel, OperatorMatrix,
    Projection,
};
use photon_am::radial_fields::{spherical_bessel, CavityConfig, RadialModel};
use photon_am::twin_entanglement::{entanglement_measure, RadiatedState};
use proptest::prelude::*;

fn all_modes() -> Vec<ModeLabel> {
    let mut v = ModeLabel::triple().to_vec();
    v.extend(ModeLabel::tagged_triple(Direction::Forward));
    v.extend(ModeLabel::tagged_triple(Direction::Backward));
    v
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_a_bijection(n_modes in 1usize..=5, cutoff in 0usize..=4) {
        let s = build_space(&all_modes()[..n_modes], cutoff).unwrap();
        // Weak compositions of 0..=cutoff into n parts.
        prop_assert_eq!(s.basis().len(), binomial(cutoff + n_modes, n_modes));
        for (i, occ) in s.basis().iter().enumerate() {
            prop_assert_eq!(s.index_of(occ), Some(i));
        }
        prop_assert!(s.basis().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn safe_commutators_and_number_operators(n_modes in 1usize..=4, cutoff in 1usize..=3, i in 0usize..4, j in 0usize..4) {
        let modes = &all_modes()[..n_modes];
        let s = build_space(modes, cutoff).unwrap();
        let (mi, mj) = (modes[i % n_modes], modes[j % n_modes]);
        let a = annihilation(&s, &mi).unwrap();
        let ad = creation(&s, &mi).unwrap();
        prop_assert_eq!(ad.entries(), &a.entries().t().mapv(|z| z.conj()));
        let comm = commutator(&a, &creation(&s, &mj).unwrap()).unwrap().restricted_safe();
        let expected = if mi == mj { OperatorMatrix::identity(&s).restricted_safe() } else { OperatorMatrix::zeros(&s) };
        prop_assert!(comm.max_abs_diff(&expected).unwrap() < 1e-12);
        let n = number(&s, &mi).unwrap();
        prop_assert!(n.is_hermitian(0.0));
        for r in 0..s.dim() {
            for c in 0..s.dim() {
                let z = n.entries()[[r, c]];
                if r != c { prop_assert_eq!(z, Complex64::new(0.0, 0.0)); }
                else { prop_assert_eq!(z.re.fract(), 0.0); }
            }
        }
    }

    #[test]
    fn su2_closes_for_any_family_and_cutoff(cutoff in 1usize..=4, tagged in any::<bool>()) {
        let labels = if tagged { ModeLabel::tagged_triple(Direction::Backward) } else { ModeLabel::triple() };
        let s = build_space(&labels, cutoff).unwrap();
        let j = j_operators_for(&s, &labels).unwrap();
        prop_assert!(verify_su2(&j, 1e-12).pass);
    }

    #[test]
    fn measure_depends_on_moduli_only(a in 0.0f64..=1.0, p1 in -3.2f64..3.2, p2 in -3.2f64..3.2) {
        let b = (1.0 - a * a).sqrt();
        let real = RadiatedState::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).unwrap();
        let phased = RadiatedState::new(Complex64::from_polar(a, p1), Complex64::from_polar(b, p2)).unwrap();
        prop_assert!((entanglement_measure(&real) - entanglement_measure(&phased)).abs() < 1e-15);
    }

    #[test]
    fn spin_expectation_is_monotone_and_bounded(t1 in 0.0f64..50.0, t2 in 0.0f64..50.0, gamma in 0.01f64..10.0) {
        let s1 = sz_over_hbar(t1, gamma);
        prop_assert!(sz_over_hbar(t1 + t2, gamma) >= s1);
        prop_assert!((0.0..=0.5).contains(&s1));
        prop_assert!(((-2.0 * gamma * t1).exp() + 2.0 * s1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oam_density_is_nonnegative(x in 0.0f64..200.0) {
        let model = RadialModel::new(CavityConfig::from_kr(200.0).unwrap()).unwrap();
        prop_assert!(model.f_oam(x).unwrap() >= 0.0);
    }

    #[test]
    fn oam_density_is_quartic_near_origin(x in 1e-4f64..1e-2) {
        // f_L = (3/2)(c2 j2)²/3 ~ c2² x⁴/450
        let model = RadialModel::new(CavityConfig::from_kr(50.0).unwrap()).unwrap();
        let expected = model.quadrupole.amplitude.powi(2) * x.powi(4) / 450.0;
        prop_assert!((model.f_oam(x).unwrap() / expected - 1.0).abs() < 1e-4);
        prop_assert!(spherical_bessel(2, x).unwrap() > 0.0);
    }
}

#[test]
fn cumulative_integrals_follow_integrand_sign() {
    let config = CavityConfig::from_kr(100.0).unwrap();
    let p = photon_am::radial_fields::radial_profile(&config, 4000).unwrap();
    let model = p.model;
    for w in p.samples.windows(2) {
        // Where the spin integrand is non-negative across the step, the running sum grows.
        let (a, b) = (w[0].kr, w[1].kr);
        let nonneg = (0..=8).all(|i| model.f_spin(a + (b - a) * i as f64 / 8.0).unwrap() >= 0.0);
        if nonneg {
            assert!(w[1].cum_spin >= w[0].cum_spin);
        }
        assert!(w[1].cum_oam >= w[0].cum_oam);
    }
}

#[test]
fn halving_the_step_keeps_cumulatives() {
    let config = CavityConfig::from_kr(100.0).unwrap();
    let coarse = photon_am::radial_fields::radial_profile(&config, 500).unwrap();
    let fine = photon_am::radial_fields::radial_profile(&config, 1000).unwrap();
    for (i, s) in coarse.samples.iter().enumerate() {
        let f = &fine.samples[2 * i + 1];
        assert_eq!(s.kr, f.kr);
        assert!((s.cum_spin - f.cum_spin).abs() < 1e-8);
        assert!((s.cum_oam - f.cum_oam).abs() < 1e-8);
    }
}

#[test]
fn wave_zone_discrepancy_decreases_beyond_kr_ten() {
    let model = RadialModel::new(CavityConfig::from_kr(1000.0).unwrap()).unwrap();
    let mut previous = f64::INFINITY;
    for start in [10.0, 20.0, 40.0, 80.0, 160.0, 320.0, 640.0] {
        let w = model.windowed_discrepancy(start).unwrap();
        assert!(w.discrepancy < previous, "start {start}: {} >= {previous}", w.discrepancy);
        previous = w.discrepancy;
    }
}

#[test]
fn projections_round_trip() {
    for p in Projection::ALL {
        assert_eq!(Projection::from_value(p.value()).unwrap(), p);
        assert_eq!(p.cyclic_pred().cyclic_pred().cyclic_pred(), p);
    }
}
