use std::sync::Arc;

use wedge_gw::algebra::{Coefficient, FormalSeries, Mono, Truncation};
use wedge_gw::gw::*;

fn window(q_max: u32, u_lo: i32, u_hi: i32, vars: &[(&str, i32)]) -> Arc<Truncation> {
    Truncation::new(q_max, u_lo, u_hi, vars).unwrap().shared()
}

/// `Σ_{j≥0} (-1)^j a^{j+1} b^{-j}` times `c`, cut at the window orders.
fn geometric_two_point(t: &Arc<Truncation>, c: Coefficient) -> FormalSeries {
    let mut out = FormalSeries::zero(t);
    for j in 0..=t.z_orders[0] {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_term(
            Mono::var(0, j + 1).with_var(1, -j).with_u(-2),
            c.scale_rational(&num_rational::BigRational::from_integer(sign.into())),
        );
    }
    out.retruncated(t)
}

#[test]
fn zero_point_function_is_exponential() {
    let t = window(3, -8, 2, &[]);
    let g = g_operator(&t, 0, 0, None).unwrap();
    assert_eq!(g, exp_degree(&t, 1));
    let g1 = g_operator(&t, 0, 0, Some(1)).unwrap();
    assert_eq!(g1, FormalSeries::monomial(&t, Mono::u(-2), Coefficient::one()));
    let g2 = g_operator(&t, 0, 0, Some(2)).unwrap();
    assert_eq!(g2, FormalSeries::monomial(&t, Mono::u(-4), Coefficient::from_ratio(1, 2)));
}

#[test]
fn routes_agree_in_low_degree() {
    for d in 0..=2u32 {
        for (n, m) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)] {
            let mut vars: Vec<(String, i32)> = (0..n).map(|i| (format!("z{}", i + 1), 2)).collect();
            vars.extend((0..m).map(|j| (format!("w{}", j + 1), 2)));
            let refs: Vec<(&str, i32)> = vars.iter().map(|(s, o)| (s.as_str(), *o)).collect();
            let t = window(2, -6, 1, &refs);
            let a = g_operator(&t, n, m, Some(d)).unwrap();
            let b = g_localization(&t, n, m, d).unwrap();
            assert_eq!(a, b, "d={d} n={n} m={m}");
        }
    }
}

#[test]
fn j_function_forms_agree() {
    let t = window(0, -5, 1, &[("z", 2)]);
    for d in 1..=2u32 {
        for mu in wedge_gw::partitions::enumerate_partitions(d) {
            let a = j_function(&t, &[0], &mu).unwrap();
            let b = j_function_integer_form(&t, &[0], &mu).unwrap();
            assert_eq!(a, b, "mu={mu}");
        }
    }
}

#[test]
fn unstable_and_genus_zero_values() {
    let t = window(0, -2, -2, &[("z1", 3)]);
    let g = g_operator(&t, 1, 0, Some(0)).unwrap();
    assert_eq!(g, FormalSeries::monomial(&t, Mono::var(0, -1).with_u(-2), Coefficient::one()));

    let t = window(0, -2, -2, &[("z1", 3), ("z2", 3)]);
    let c = g_connected_families(&t, 2, 0).unwrap();
    assert_eq!(c[&3], geometric_two_point(&t, Coefficient::t()));

    let t = window(0, -2, -2, &[("z1", 3), ("w1", 3)]);
    let c = g_connected_families(&t, 1, 1).unwrap();
    assert!(c[&3].is_zero());
}

#[test]
fn three_point_genus_zero_degree_zero() {
    let t = window(0, -2, -2, &[]);
    let unit = (InsertionClass::Unit, 0);
    let hyp = (InsertionClass::Hyperplane, 0);
    let at = |items: &[Insertion]| bracket_connected_mixed(items, &t).unwrap().coeff(&Mono::u(-2));
    assert_eq!(at(&[unit, unit, hyp]), Coefficient::one());
    assert_eq!(at(&[unit, hyp, hyp]), -Coefficient::t());
    assert_eq!(at(&[hyp, hyp, hyp]), Coefficient::t().pow(2));
    assert!(at(&[unit, unit, unit]).is_zero());
}

#[test]
fn basis_changes_are_inverse() {
    let items = vec![(InsertionClass::Zero, 1), (InsertionClass::Infinity, 0)];
    let mut total: std::collections::BTreeMap<Vec<Insertion>, Coefficient> = Default::default();
    for (c, l) in to_unit_basis(&items) {
        for (d, l2) in to_fixed_point_basis(&l) {
            let e = total.entry(l2).or_insert_with(Coefficient::zero);
            *e = &*e + &(&c * &d);
        }
    }
    total.retain(|_, c| !c.is_zero());
    let mut sorted = items.clone();
    sorted.sort();
    assert_eq!(total.len(), 1);
    assert!(total[&sorted].is_one());
}

#[test]
fn stationary_limit_matches() {
    for d in 0..=2u32 {
        let t = window(2, -8, 2, &[("z1", 3)]);
        let a = stationary_specialization(&t, d).unwrap();
        let b = g_stationary_limit(&t, d).unwrap();
        assert_eq!(a.retruncated(b.truncation()), b, "d={d}");
    }
}
