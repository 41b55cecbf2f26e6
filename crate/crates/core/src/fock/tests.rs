use std::sync::Arc;

use super::*;
use crate::algebra::special::{varsigma, varsigma_inverse};
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation};
use crate::partitions::Partition;

fn st(parts: &[u32]) -> BasisState {
    BasisState::neutral(Partition::new(parts.to_vec()).unwrap())
}

fn trunc(q: u32, vars: &[(&str, i32)]) -> Arc<Truncation> {
    Truncation::new(q, -8, 4, vars).unwrap().shared()
}

#[test]
fn alpha_minus_two_on_vacuum() {
    let t = trunc(0, &[]);
    let v = apply_ops(&t, &[Op::Alpha(-2)], &FockVector::vacuum(&t), None).unwrap();
    assert_eq!(v.len(), 2);
    assert_eq!(v.get(&st(&[2])).constant_term(), Coefficient::one());
    assert_eq!(v.get(&st(&[1, 1])).constant_term(), Coefficient::from_int(-1));
}

#[test]
fn heisenberg_pairing() {
    let t = trunc(0, &[]);
    for k in 1..5 {
        let x = vacuum_expectation(&t, &[Op::Alpha(k), Op::Alpha(-k)]).unwrap();
        assert_eq!(x, FormalSeries::constant(&t, Coefficient::from_int(k as i64)));
    }
    let x = vacuum_expectation(&t, &[Op::Alpha(2), Op::Alpha(-1), Op::Alpha(-1)]).unwrap();
    assert!(x.is_zero());
}

#[test]
fn diagonal_operator_on_single_box() {
    let t = trunc(0, &[("z", 4)]);
    let arg = FormalSeries::var(&t, 0);
    let v = FockVector::basis(&t, st(&[1]));
    let out = apply_ops(&t, &[Op::E { r: 0, arg: arg.clone() }], &v, None).unwrap();
    let expect = varsigma_inverse(&arg).unwrap().try_add(&varsigma(&arg).unwrap()).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out.get(&st(&[1])).retruncated(&t), expect);
}

#[test]
fn exponential_pairing_gives_exp_q() {
    let t = trunc(4, &[]);
    let ops = [
        Op::ExpAlpha(1),
        Op::EnergyPower { coeff: Coefficient::one(), mono: Mono::q(1), reduced: false },
        Op::ExpAlpha(-1),
    ];
    let x = vacuum_expectation(&t, &ops).unwrap();
    let mut fact = 1i64;
    for d in 0..=4u32 {
        if d > 0 {
            fact *= d as i64;
        }
        assert_eq!(x.coeff(&Mono::q(d)), Coefficient::from_ratio(1, fact));
    }
}

#[test]
fn exponential_projections() {
    let t = trunc(0, &[]);
    let v = apply_ops(&t, &[Op::Project(2), Op::ExpAlpha(-1)], &FockVector::vacuum(&t), None).unwrap();
    // e^{α_{-1}} projected to energy 2 is α_{-1}²/2 v_∅ = (v_(2) + v_(1,1))/2
    assert_eq!(v.get(&st(&[2])).constant_term(), Coefficient::from_ratio(1, 2));
    assert_eq!(v.get(&st(&[1, 1])).constant_term(), Coefficient::from_ratio(1, 2));
}

#[test]
fn single_family_leading_term() {
    let t = trunc(0, &[("z", 3)]);
    let fam = AFamily::new(
        FamilyArg::Slot { alpha: Coefficient::one(), var: 0, order: 3 },
        Coefficient::one(),
        -1,
        false,
    );
    let x = vacuum_expectation(&t, &[Op::Family(Arc::new(fam))]).unwrap();
    assert_eq!(x.coeff(&Mono::var(0, -1).with_u(-2)), Coefficient::one());
}

#[test]
fn adjoint_matrix_elements_agree() {
    let t = trunc(0, &[("z", 3)]);
    let arg = FormalSeries::var(&t, 0);
    let ops = vec![Op::E { r: -1, arg: arg.clone() }, Op::Alpha(-2)];
    let bra = FockVector::basis(&t, st(&[2, 1]));
    let ket = FockVector::vacuum(&t);
    let lhs = matrix_element(&t, &bra, &ops, &ket).unwrap();
    let adj: Vec<Op> = ops.iter().rev().map(Op::adjoint).collect();
    let rhs = matrix_element(&t, &ket, &adj, &bra).unwrap();
    assert_eq!(lhs, rhs);
    assert!(!lhs.is_zero());
}

#[test]
fn shift_changes_charge_only() {
    let t = trunc(0, &[]);
    let v = apply_ops(&t, &[Op::Shift(2)], &FockVector::basis(&t, st(&[1])), None).unwrap();
    assert_eq!(v.terms().keys().next().unwrap(), &BasisState::new(Partition::new(vec![1]).unwrap(), 2));
}
