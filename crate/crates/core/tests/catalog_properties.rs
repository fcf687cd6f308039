use concur_core::catalog::*;
use concur_core::gaussian::{eigenmodes, DEFAULT_ZERO_TOL};
use proptest::prelude::*;

fn pol() -> impl Strategy<Value = Polarization> {
    prop_oneof![Just(Polarization::Y), Just(Polarization::Z)]
}

fn label() -> impl Strategy<Value = TensorLabel> {
    prop::sample::select(TensorLabel::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn singly_pumped_components_are_pairs(lo in -30i32..30, offset in -4i32..22, p in pol()) {
        let g = singly_pumped_graph(lo, lo + 8, 2 * lo + offset, p, 1.0).unwrap();
        let sizes: Vec<usize> = connected_components(&g).iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().all(|&s| s <= 2), "{sizes:?}");
        prop_assert_eq!(sizes.iter().sum::<usize>(), 9);
    }

    #[test]
    fn enumerated_terms_conserve_energy(
        modes in prop::collection::btree_set((-6i32..6, pol()), 1..8),
        pumps in prop::collection::btree_set((-12i32..12, pol()), 0..5),
        labels in prop::collection::btree_set(label(), 0..5),
    ) {
        let modes: Vec<ModeLabel> = modes.into_iter().map(|(k, p)| ModeLabel::new(k, p)).collect();
        let pumps: Vec<PumpField> = pumps.into_iter().map(|(k, p)| PumpField::new(k, p, 1.0).unwrap()).collect();
        let chis: Vec<ChiElement> = labels.into_iter().map(|l| ChiElement::matched(l, 1.0).unwrap()).collect();
        let g = enumerate_terms(&modes, &pumps, &chis).unwrap();
        for e in g.edges() {
            prop_assert_eq!(e.mode_a.freq_index + e.mode_b.freq_index, e.pump.freq_index);
            prop_assert!(e.chi.label.couples(e.pump.polarization, e.mode_a.polarization, e.mode_b.polarization));
        }
        // Nothing is missed: brute-force count of admissible triples.
        let mut expect = 0;
        for p in &pumps {
            for c in &chis {
                for (i, a) in modes.iter().enumerate() {
                    for b in &modes[i..] {
                        if a.freq_index + b.freq_index == p.freq_index && c.label.couples(p.polarization, a.polarization, b.polarization) {
                            expect += 1;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(g.edges().len(), expect);
    }

    #[test]
    fn balanced_builders_hit_target(kappa in 0.01f64..10.0, chi_z in 0.5f64..8.0, chi_y in 0.5f64..8.0) {
        let chis = vec![
            ChiElement::matched(TensorLabel::Yzy, 1.0).unwrap(),
            ChiElement::matched(TensorLabel::Zzz, chi_z).unwrap(),
            ChiElement::matched(TensorLabel::Yyy, chi_y).unwrap(),
        ];
        let b = build_h4_experimental_with(kappa, &chis).unwrap();
        for e in b.graph.edges() {
            prop_assert!((e.strength - kappa).abs() <= 1e-12 * kappa);
        }
        let modes = b.graph.vertices().to_vec();
        prop_assert!(realizability_check(&b.coupling, &modes).unwrap().is_realizable());
        let h3 = build_h3_experimental_with(kappa, &chis[..2]).unwrap();
        prop_assert!(h3.graph.edges().iter().all(|e| (e.strength - kappa).abs() <= 1e-12 * kappa));
    }
}

#[test]
fn two_pumps_merge_what_one_pump_cannot() {
    // Degenerate pump at 2ω₀ and nondegenerate pump at ω₀+ω₁ over one comb.
    let modes: Vec<ModeLabel> = (-4..=5).map(ModeLabel::z).collect();
    let chi = [ChiElement::matched(TensorLabel::Zzz, 1.0).unwrap()];
    let p0 = PumpField::new(0, Polarization::Z, 1.0).unwrap();
    let p1 = PumpField::new(1, Polarization::Z, 1.0).unwrap();
    let largest = |pumps: &[PumpField]| {
        let g = enumerate_terms(&modes, pumps, &chi).unwrap();
        connected_components(&g).iter().map(Vec::len).max().unwrap()
    };
    assert_eq!(largest(&[p0]), 2);
    assert_eq!(largest(&[p1]), 2);
    assert_eq!(largest(&[p0, p1]), modes.len());
}

#[test]
fn h3_experimental_is_clean_complete_and_realizable() {
    let b = build_h3_experimental(0.5).unwrap();
    assert!(b.graph.is_complete());
    assert!(!b.is_contaminated());
    assert_eq!(b.graph.edges().len(), 3);
    assert_eq!(b.pumps.len(), 3);
    let eig = eigenmodes(&b.coupling, DEFAULT_ZERO_TOL).unwrap().eigenvalues;
    assert!((eig[0] - 1.0).abs() < 1e-12 && (eig[2] + 0.5).abs() < 1e-12);
    assert!(realizability_check(&b.coupling, b.graph.vertices()).unwrap().is_realizable());
}

#[test]
fn yyy_phase_matching_contaminates_h3() {
    // With yyy matched too, the 2ω₀ y pump also drives a_y(ω₀)².
    let b = build_h3_experimental_with(0.5, &default_chis()).unwrap();
    assert!(b.is_contaminated());
    assert!(b.contaminants.iter().all(|t| t.is_degenerate()));
}

#[test]
fn h4_shares_the_middle_pump() {
    let b = build_h4_experimental(1.0).unwrap();
    let shared: Vec<_> = b.graph.edges().iter().filter(|e| e.pump.freq_index == 3).collect();
    assert_eq!(shared.len(), 2);
    assert!(shared.iter().all(|e| e.chi.label == TensorLabel::Yzy));
}

#[test]
fn mixed_chi_on_one_pump_is_unbalanceable() {
    let pump = PumpField::new(2, Polarization::Y, 1.0).unwrap();
    let a = InteractionTerm::new(ModeLabel::y(0), ModeLabel::y(2), pump, ChiElement::matched(TensorLabel::Yyy, 3.0).unwrap()).unwrap();
    let b = InteractionTerm::new(ModeLabel::y(1), ModeLabel::z(1), pump, ChiElement::matched(TensorLabel::Yzy, 1.0).unwrap()).unwrap();
    assert!(matches!(balance_pumps(&[a, b], 1.0), Err(concur_core::Error::Unbalanceable { .. })));
}
