mod common;

use common::*;
use proptest::prelude::*;
use rankmetric::*;

fn combination(code: &RankMetricCode, coeffs: &[u32]) -> LinearizedPoly {
    let t = code.tower();
    code.generators()
        .iter()
        .zip(coeffs)
        .fold(LinearizedPoly::zero(t), |acc, (g, &c)| acc.add(&g.scale(t.from_prime(c))).unwrap())
}

#[test]
fn dual_of_mrd_is_mrd() {
    let t = f81();
    let w = t.omega();
    let mut codes = vec![make_gabidulin(&t, 2, 1).unwrap(), make_twisted(&t, 2, 1, w, 1).unwrap()];
    for k in 1..=3 {
        codes.push(make_d(&t, k, 1, w).unwrap());
        codes.push(make_d(&t, k, 3, t.power_of_omega(7)).unwrap());
    }
    for c in &codes {
        assert!(c.is_mrd(DEFAULT_BUDGET).unwrap(), "{}", c.family().name());
        let dual = delsarte_dual(c).unwrap();
        assert_eq!(dual.dim() + c.dim(), 16);
        let cert = dual.min_distance(DEFAULT_BUDGET).unwrap();
        assert!(cert.is_mrd);
        assert_eq!(cert.min_distance, c.dim() / 4 + 1);
        assert!(delsarte_dual(&dual).unwrap().same_codewords(c));
    }
}

#[test]
fn dual_substitution_holds_only_up_to_scalars() {
    let t = f81();
    for (g, literal) in [(t.omega(), false), (t.power_of_omega(3), false), (t.power_of_omega(5), true)] {
        // ω^5 is the case γ^{q^n} = -γ
        assert_eq!(t.frobenius(g, 2) == t.neg(g), literal);
        for k in 1..=3u32 {
            let sub = substitute_monomial(&delsarte_dual(&make_d(&t, k, 1, g).unwrap()).unwrap(), (4 - k) as i64).unwrap();
            let target = make_d(&t, 4 - k, 1, t.neg(g)).unwrap();
            assert_eq!(sub.same_codewords(&target), literal);
            let cert = monomial_equiv_search(&sub, &target, DEFAULT_BUDGET).unwrap();
            assert!(verify_map(cert.witness.as_ref().unwrap(), &sub, &target));
        }
    }
    // a left scalar suffices for γ = ω
    let sub = substitute_monomial(&delsarte_dual(&make_d(&t, 2, 1, t.omega()).unwrap()).unwrap(), 2).unwrap();
    let scaled = sub.map_generators(|f| Ok(f.scale(t.power_of_omega(6)))).unwrap();
    assert!(scaled.same_codewords(&make_d(&t, 2, 1, t.neg(t.omega())).unwrap()));
}

#[test]
fn distance_certificates() {
    let t = f81();
    let d = make_d(&t, 2, 1, t.omega()).unwrap();
    let cert = d.min_distance(DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.rank_distribution.iter().sum::<u64>(), 6561);
    assert_eq!(cert.witness_min_rank_codeword.rank(), 3);
    assert!(d.contains(&cert.witness_min_rank_codeword).unwrap());
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["dim_Fq"], 8);
    assert_eq!(v["min_distance"], 3);
    let sampled = d.min_distance_sampled(500, 11);
    assert!(sampled.upper_bound >= 3);
    assert!(matches!(d.min_distance(100), Err(Error::BudgetExceeded { .. })));
    let json = d.to_json();
    assert_eq!(json["family"], "D");
}

#[test]
fn twisted_is_not_big_field_linear() {
    let t = f81();
    let w = t.omega();
    let h = make_twisted(&t, 2, 1, w, 1).unwrap();
    let scaled_out = h.generators().iter().any(|f| !h.contains(&f.scale(w)).unwrap());
    assert!(scaled_out);
    let g = make_gabidulin(&t, 2, 1).unwrap();
    assert!(g.generators().iter().all(|f| g.contains(&f.scale(w)).unwrap()));
}

#[test]
fn twisted_nucleus_sizes() {
    let t = f81();
    for h in 0..4u32 {
        let Ok(c) = make_twisted(&t, 2, 1, t.omega(), h) else { continue };
        let gcd = |a: i64, b: i64| -> u32 {
            let (mut a, mut b) = (a.abs(), b.abs());
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a as u32
        };
        let nm = middle_nucleus(&c).unwrap();
        let nr = right_nucleus(&c).unwrap();
        assert_eq!(nm.size(), 3u128.pow(gcd(4, 2 - h as i64)), "h = {h}");
        assert_eq!(nr.size(), 3u128.pow(gcd(4, h as i64)), "h = {h}");
        assert!(nm.is_field().unwrap() && nr.is_field().unwrap());
    }
}

#[test]
fn nucleus_identities_for_twisted_codes() {
    let t = f81();
    for h in 1..4u32 {
        let c = make_twisted(&t, 2, 1, t.omega(), h).unwrap();
        let dual = delsarte_dual(&c).unwrap();
        let adj = adjoint_code(&c).unwrap();
        let r_hat = right_nucleus(&c).unwrap().adjoint_image().unwrap();
        assert!(middle_nucleus(&adj).unwrap().same_as(&r_hat));
        assert!(right_nucleus(&dual).unwrap().same_as(&r_hat));
        let m_hat = middle_nucleus(&c).unwrap().adjoint_image().unwrap();
        assert!(middle_nucleus(&dual).unwrap().same_as(&m_hat));
        assert!(right_nucleus(&adj).unwrap().same_as(&m_hat));
    }
}

#[test]
fn spread_set_is_semifield_code() {
    let t = f81();
    let params = HkParams::new(&t, t.omega(), 1).unwrap();
    let ss = params.spread_set();
    assert_eq!(ss.dim(), 4);
    assert_eq!(ss.min_distance(DEFAULT_BUDGET).unwrap().min_distance, 4);
    let table = MulTable::hughes_kleinfeld(&params).unwrap();
    assert!(table.is_presemifield());
    assert!(table.check_biadditive().is_ok());
}

#[test]
fn constructor_errors() {
    let t = f81();
    let w = t.omega();
    assert!(matches!(make_d(&t, 2, 2, w), Err(Error::BadStep { .. })));
    assert!(matches!(make_d(&t, 4, 1, w), Err(Error::BadK { .. })));
    assert!(matches!(make_d(&t, 2, 1, t.power_of_omega(2)), Err(Error::BadGamma)));
    assert!(matches!(make_twisted(&t, 2, 1, t.power_of_omega(6), 2), Err(Error::BadEta)));
    assert!(matches!(make_twisted(&t, 2, 1, w, 4), Err(Error::BadTwist { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_agrees_with_span(
        g in gamma(),
        k in 1u32..4,
        s in prop::sample::select(vec![1u32, 3]),
        coeffs in prop::collection::vec(0u32..3, 12),
        f in poly(),
    ) {
        let d = make_d(&f81(), k, s, g).unwrap();
        let word = combination(&d, &coeffs);
        prop_assert!(d.contains(&word).unwrap());
        prop_assert!(d.span_contains(&word));
        prop_assert_eq!(d.contains(&f).unwrap(), d.span_contains(&f));
    }

    #[test]
    fn codes_are_half_field_linear(g in gamma(), k in 1u32..4, a in prop::sample::select(vec![0i64, 10, 20, 30, 40, 50, 60, 70]), i in 0usize..12) {
        // F_9^* = <ω^10>: scalars on either side stay in the code
        let t = f81();
        let d = make_d(&t, k, 1, g).unwrap();
        let f = &d.generators()[i % d.generators().len()];
        let a = t.power_of_omega(a);
        prop_assert!(d.contains(&f.scale(a)).unwrap());
        prop_assert!(d.contains(&f.compose(&LinearizedPoly::monomial(&t, a, 0)).unwrap()).unwrap());
    }
}
