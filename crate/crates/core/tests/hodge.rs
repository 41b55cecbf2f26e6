use std::sync::Arc;

use num_rational::BigRational;
use wedge_gw::algebra::{Coefficient, FormalSeries, Mono, Truncation};
use wedge_gw::hodge::*;
use wedge_gw::partitions::{enumerate_partitions, Partition};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn window(u_lo: i32, u_hi: i32, vars: &[(&str, i32)]) -> Arc<Truncation> {
    Truncation::new(0, u_lo, u_hi, vars).unwrap().shared()
}

#[test]
fn hurwitz_small_values() {
    assert_eq!(hurwitz_character(0, &p(&[2])).unwrap(), r(1, 2));
    assert_eq!(hurwitz_character(0, &p(&[1, 1])).unwrap(), r(1, 2));
    assert_eq!(hurwitz_character(1, &p(&[1])).unwrap(), r(0, 1));
    assert_eq!(hurwitz_oracle(0, &p(&[2])).unwrap(), r(1, 2));
    assert_eq!(hurwitz_oracle(0, &p(&[3])).unwrap(), r(1, 1));
    assert_eq!(hurwitz_oracle(0, &p(&[1])).unwrap(), r(1, 1));
}

#[test]
fn character_and_oracle_agree() {
    for n in 1..=4u32 {
        for mu in enumerate_partitions(n) {
            for g in -2..=2i64 {
                match branch_count(g, &mu) {
                    Some(b) if b <= 6 => {
                        assert_eq!(hurwitz_character(g, &mu).unwrap(), hurwitz_oracle(g, &mu).unwrap(), "g={g} mu={mu}");
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn elsv_examples() {
    assert_eq!(elsv_hodge(0, &p(&[1])).unwrap(), r(1, 1));
    assert_eq!(elsv_hodge(1, &p(&[2])).unwrap(), r(1, 12));
}

#[test]
fn one_point_layers() {
    let t = window(-2, 2, &[("z", 3)]);
    let h = hodge_npoint(&t).unwrap();
    assert_eq!(h.u_window(-2, -2), FormalSeries::monomial(&t, Mono::var(0, -1).with_u(-2), Coefficient::one()));
    assert_eq!(h.coeff(&Mono::var(0, 2)), Coefficient::from_ratio(1, 24));
    assert_eq!(h.coeff(&Mono::var(0, 1)), Coefficient::from_ratio(-1, 24));
}

#[test]
fn two_point_genus_zero() {
    let t = window(-2, 0, &[("z1", 3), ("z2", 3)]);
    let h = hodge_connected(&t).unwrap();
    let mut expect = FormalSeries::zero(&t);
    for j in 0..3 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        expect.add_term(Mono::var(0, j + 1).with_var(1, -j).with_u(-2), Coefficient::from_int(sign));
    }
    assert_eq!(h.u_window(-2, -2), expect);
}

#[test]
fn closed_form_matches_operator() {
    let t = window(-2, 2, &[("z1", 3), ("z2", 3)]);
    let a = hodge_connected(&t).unwrap();
    let b = two_point_closed_form(&t).unwrap();
    assert_eq!(a, b);
}

#[test]
fn integer_points_match_elsv() {
    for mu in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])] {
        let t = window(-6, 2, &[]);
        let a = hodge_at_integers(&mu, &t).unwrap();
        let b = hodge_at_integers_elsv(&mu, &t).unwrap();
        assert_eq!(a, b, "mu = {mu}");
    }
}

#[test]
fn transform_round_trip() {
    let t = window(-4, 2, &[("a", 2), ("b", 2), ("c", 2)]);
    let mut conn = PointFamily::new();
    conn.insert(0, FormalSeries::zero(&t));
    for mask in 1u32..8 {
        let mut s = FormalSeries::zero(&t);
        s.add_term(Mono::u(-(mask as i32 % 3)).with_var(0, mask as i32 % 2), Coefficient::from_ratio(mask as i64, 7));
        s.add_term(Mono::var(2, 1), Coefficient::from_int(mask as i64 - 3));
        conn.insert(mask, s);
    }
    let disc = disconnected_from_connected(&conn, 3, &t).unwrap();
    let back = connected_from_disconnected(&disc, 3, &t).unwrap();
    assert_eq!(back, conn);
    assert_eq!(set_partitions(0b111).len(), 5);
}
