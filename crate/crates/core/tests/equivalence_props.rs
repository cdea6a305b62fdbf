mod common;

use common::*;
use proptest::prelude::*;
use rankmetric::*;

fn random_monomial_map(ci: i64, l: i64, gi: i64, j: i64) -> EquivalenceMap {
    let t = f81();
    EquivalenceMap {
        phi1: LinearizedPoly::monomial(&t, t.power_of_omega(ci), l),
        phi2: LinearizedPoly::monomial(&t, t.power_of_omega(gi), j),
        rho: 0,
    }
}

#[test]
fn nucleus_scalings_are_automorphisms() {
    let t = f81();
    let d = make_d(&t, 2, 1, t.omega()).unwrap();
    let autos = automorphisms(&d, SearchShape::Monomial, DEFAULT_BUDGET).unwrap();
    let f9: Vec<Fe> = t.nonzero_by_power().filter(|&x| t.in_subfield(x, 2)).collect();
    assert_eq!(f9.len(), 8);
    for &a in &f9 {
        for &b in &f9 {
            let m = EquivalenceMap {
                phi1: LinearizedPoly::monomial(&t, a, 0),
                phi2: LinearizedPoly::monomial(&t, b, 0),
                rho: 0,
            };
            assert!(verify_map(&m, &d, &d));
            assert!(autos.contains(&m));
        }
    }
    for a in &autos {
        assert!(verify_map(a, &d, &d));
        for b in autos.iter().step_by(7) {
            assert!(verify_map(&a.then(b).unwrap(), &d, &d));
        }
    }
}

#[test]
fn perturbed_binomial_map_fails() {
    let t = f81();
    let d = make_d(&t, 2, 1, t.omega()).unwrap();
    let m = EquivalenceMap {
        phi1: LinearizedPoly::from_terms(&t, &[(0, Fe::ONE), (2, t.power_of_omega(35))]),
        phi2: LinearizedPoly::from_terms(&t, &[(3, t.power_of_omega(2)), (1, t.power_of_omega(54))]),
        rho: 0,
    };
    assert!(!verify_map(&m, &d, &d));
}

#[test]
fn binomial_criterion_matches_search() {
    let t = f81();
    let mut pairs = 0;
    for (s, tt) in [(1u32, 1u32), (1, 3), (3, 3)] {
        for gi in [1i64, 3] {
            for thi in [1i64, 5, 7, 11] {
                let (g, th) = (t.power_of_omega(gi), t.power_of_omega(thi));
                let v = binomial_criterion(&t, s, tt, g, th).unwrap();
                let c1 = make_d(&t, 2, s, g).unwrap();
                let c2 = make_d(&t, 2, tt, th).unwrap();
                let cert = combined_equiv_search(&c1, &c2, DEFAULT_BUDGET).unwrap();
                assert_eq!(v.holds, cert.verdict == Verdict::Equivalent, "s={s} t={tt} w^{gi} w^{thi}");
                if let Some(w) = &v.witness {
                    assert!(verify_map(w, &c1, &c2));
                }
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 10);
}

#[test]
fn monomial_criterion_in_f729() {
    let t = build_tower(3, 1, 3, None).unwrap();
    let g = t.find_gamma().unwrap();
    assert!(monomial_criterion(&t, 2, 1, 1, g, g).unwrap().literal_holds);
    // θ := γ^3 h0^{q^2-1}: the exact-equality form holds
    let h0 = t.power_of_omega(17);
    let theta = t.mul(t.pow(g, 3), t.pow(h0, 8));
    let v = monomial_criterion(&t, 2, 1, 1, g, theta).unwrap();
    assert!(v.holds && v.literal_holds);
    let c1 = make_d(&t, 2, 1, g).unwrap();
    let c2 = make_d(&t, 2, 1, theta).unwrap();
    assert!(verify_map(v.witness.as_ref().unwrap(), &c1, &c2));
    assert_eq!(monomial_equiv_search(&c1, &c2, DEFAULT_BUDGET).unwrap().verdict, Verdict::Equivalent);
    // θ = ω^5 fails the exact-equality form yet the codes are equivalent
    let theta = t.power_of_omega(5);
    let v = monomial_criterion(&t, 2, 1, 1, g, theta).unwrap();
    assert!(v.holds && !v.literal_holds);
    let c2 = make_d(&t, 2, 1, theta).unwrap();
    assert!(verify_map(v.witness.as_ref().unwrap(), &c1, &c2));
    assert!(matches!(monomial_criterion(&t, 1, 1, 1, g, g), Err(Error::OutOfRegime(_))));
}

#[test]
fn different_nuclei_mean_inequivalent() {
    let t = f81();
    let w = t.omega();
    let codes = [
        make_gabidulin(&t, 2, 1).unwrap(),
        make_twisted(&t, 2, 1, w, 1).unwrap(),
        make_twisted(&t, 2, 1, w, 2).unwrap(),
        make_d(&t, 2, 1, w).unwrap(),
    ];
    let sizes: Vec<(u128, u128)> = codes
        .iter()
        .map(|c| (middle_nucleus(c).unwrap().size(), right_nucleus(c).unwrap().size()))
        .collect();
    for i in 0..codes.len() {
        for j in 0..codes.len() {
            if sizes[i] != sizes[j] {
                let cert = combined_equiv_search(&codes[i], &codes[j], DEFAULT_BUDGET).unwrap();
                assert_eq!(cert.verdict, Verdict::Inequivalent, "{i} vs {j}");
            }
        }
    }
}

#[test]
fn budget_is_enforced() {
    let t = build_tower(3, 1, 3, None).unwrap();
    let g = t.find_gamma().unwrap();
    let d = make_d(&t, 3, 1, g).unwrap();
    assert!(matches!(binomial_equiv_search(&d, &d, DEFAULT_BUDGET), Err(Error::BudgetExceeded { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mapped_code_is_equivalent_and_inverse_maps_back(
        g in gamma(),
        k in 1u32..4,
        ci in 0i64..80, l in 0i64..4, gi in 0i64..80, j in 0i64..4,
    ) {
        let d = make_d(&f81(), k, 1, g).unwrap();
        let m = random_monomial_map(ci, l, gi, j);
        let image = apply_map(&m, &d).unwrap();
        prop_assert!(verify_map(&m, &d, &image));
        let inv = m.inverse().unwrap();
        prop_assert!(verify_map(&inv, &image, &d));
        prop_assert!(apply_map(&inv, &image).unwrap().same_codewords(&d));
        // nuclei sizes are invariants
        prop_assert_eq!(middle_nucleus(&image).unwrap().size(), 9);
        prop_assert_eq!(right_nucleus(&image).unwrap().size(), 9);
        // search finds a sound witness back
        let cert = monomial_equiv_search(&image, &d, DEFAULT_BUDGET).unwrap();
        prop_assert!(verify_map(cert.witness.as_ref().unwrap(), &image, &d));
    }

    #[test]
    fn twisted_nuclei_invariant_under_maps(h in 1u32..4, ci in 0i64..80, l in 0i64..4, gi in 0i64..80, j in 0i64..4) {
        let t = f81();
        let c = make_twisted(&t, 2, 1, t.omega(), h).unwrap();
        let image = apply_map(&random_monomial_map(ci, l, gi, j), &c).unwrap();
        prop_assert_eq!(middle_nucleus(&image).unwrap().size(), middle_nucleus(&c).unwrap().size());
        prop_assert_eq!(right_nucleus(&image).unwrap().size(), right_nucleus(&c).unwrap().size());
        prop_assert!(image.is_mrd(DEFAULT_BUDGET).unwrap());
    }
}
