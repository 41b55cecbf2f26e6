use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use wedge_gw::algebra::{Coefficient, FormalSeries, Mono, Truncation};
use wedge_gw::gw::InsertionList;
use wedge_gw::partitions::factorial;
use wedge_gw::verify::{commutator, dressing, equations, pluecker, Report};

fn window(q_max: u32, u_lo: i32, u_hi: i32) -> Arc<Truncation> {
    Truncation::new(q_max, u_lo, u_hi, &[]).unwrap().shared()
}

fn assert_passes(name: &str, report: &Report) {
    let bad: Vec<_> = report.failures().take(3).collect();
    assert!(bad.is_empty(), "{name}: {bad:#?}");
    assert!(!report.rows.is_empty(), "{name}: no checks ran");
}

#[test]
fn commutators_close_on_low_energy() {
    let r = commutator::check_commutators(-2, 3, 4).unwrap();
    assert_passes("commutators", &r);
    assert_eq!(r.rows.len(), 36);
}

#[test]
fn divisor_equation() {
    for d in 0..=2 {
        for (n, m) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let names: Vec<String> = (0..n).map(|i| format!("z{i}")).chain((0..m).map(|j| format!("w{j}"))).collect();
            let vars: Vec<(&str, i32)> = names.iter().map(|s| (s.as_str(), 2)).collect();
            let t = Truncation::new(2, -6, 1, &vars).unwrap().shared();
            assert_passes(&format!("divisor d={d} n={n} m={m}"), &equations::check_divisor(d, n, m, &t).unwrap());
        }
    }
}

#[test]
fn string_equation() {
    let t = window(2, -6, 1);
    let cases = [
        InsertionList::new(vec![], vec![]),
        InsertionList::new(vec![1], vec![]),
        InsertionList::new(vec![], vec![2]),
        InsertionList::new(vec![1], vec![1]),
    ];
    for d in 0..=2 {
        for ins in &cases {
            assert_passes(&format!("string d={d} {ins:?}"), &equations::check_string(ins, d, &t).unwrap());
        }
    }
}

#[test]
fn toda_and_genus_zero_reduction() {
    let t = window(2, -4, 0);
    let data = equations::toda_data(2, 2, &t).unwrap();
    assert_passes("toda", &equations::check_toda_equation(&data, &t).unwrap());
    assert_passes("genus zero", &equations::check_genus_zero(&data, &t).unwrap());
}

#[test]
fn pluecker_and_translation() {
    let t = window(2, -6, 0);
    let samples = pluecker::default_samples();
    assert_passes("pluecker", &pluecker::check_pluecker(&samples[..1], 2, &t).unwrap());
    assert_passes("translated", &pluecker::check_translated_expectation(&samples, 2, &t).unwrap());
    assert_passes("energy", &pluecker::check_energy_translation(3).unwrap());
    let t3 = window(2, -6, 1);
    assert_passes("family", &pluecker::check_family_translation(3, 3, &t3).unwrap());
}

/// `c_{k,k+1}` is `u^k/(k+1)!`, and `c_{k,1}` is the `z^{k+1}` coefficient of `z/(1+tz)`.
#[test]
fn dressing_table_edges() {
    let table = dressing::dressing_coefficients(4).unwrap();
    let scalars = Truncation::local(&[]).shared();
    for k in 0..=4u32 {
        let top = FormalSeries::monomial(
            &scalars,
            Mono::u(k as i32),
            Coefficient::from_rational(BigRational::new(BigInt::from(1), factorial(k + 1))),
        );
        assert_eq!(table[&(k, k + 1)], top);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let first = FormalSeries::monomial(
            &scalars,
            Mono::u(0),
            Coefficient::t().pow(k as i32).scale_rational(&BigRational::from_integer(sign.into())),
        );
        assert_eq!(table[&(k, 1)], first);
    }
    assert_passes("dressing", &dressing::check_dressing_coefficients(4).unwrap());
}

#[test]
fn dressing_matrix_identity() {
    assert_passes("matrix", &dressing::check_matrix_identity(2, 8, 8).unwrap());
    assert!(dressing::check_matrix_identity(2, 4, 8).is_err());
}

#[test]
fn small_u_limit() {
    assert_passes("small u", &dressing::check_small_u_limit(-4..=4, 4).unwrap());
}

#[test]
fn failing_rows_are_reported() {
    let mut r = Report::new();
    r.push("x", "here".into(), "1".into(), "2".into());
    r.push("y", "there".into(), "1".into(), "1".into());
    assert!(!r.passed());
    assert_eq!(r.failures().count(), 1);
}
