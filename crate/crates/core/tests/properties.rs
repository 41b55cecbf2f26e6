use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wedge_gw::algebra::{Coefficient, FormalSeries, Mono, Poly, Truncation};
use wedge_gw::fock::{vacuum_expectation, Op};
use wedge_gw::hodge;
use wedge_gw::partitions::{character, enumerate_partitions, f2_eigenvalue, Partition};

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (prop::collection::vec(rational(), 1..4), prop::collection::vec(rational(), 1..3)).prop_map(|(num, den)| {
        let den = Poly::from_coeffs(den);
        let den = if den.is_zero() { Poly::one() } else { den };
        Coefficient::new(Poly::from_coeffs(num), den)
    })
}

fn window() -> Arc<Truncation> {
    Truncation::new(2, -3, 3, &[("z", 3), ("w", 2)]).unwrap().shared()
}

fn series() -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec((0u32..=2, -1i32..=2, 0i32..=3, 0i32..=2, coefficient()), 0..5).prop_map(|terms| {
        let t = window();
        let mut s = FormalSeries::zero(&t);
        for (q, u, z, w, c) in terms {
            s.add_term(Mono::q(q).with_u(u).with_var(0, z).with_var(1, w), c);
        }
        s
    })
}

/// Positive-valuation series, so `exp` is a finite sum.
fn nilpotent() -> impl Strategy<Value = FormalSeries> {
    series().prop_map(|s| s.filter(|m| m.z[0] + m.z[1] > 0 && m.u >= 0))
}

fn partition() -> impl Strategy<Value = Partition> {
    (1u32..=6, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let all = enumerate_partitions(n);
        all[i.index(all.len())].clone()
    })
}

/// Counts partitions of `n` by the pentagonal number recurrence.
fn partition_count(n: usize) -> i64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p[n]
}

/// Standard Young tableaux of shape `lambda`, by removing corners.
fn tableaux(parts: &[u32]) -> BigInt {
    if parts.iter().all(|&p| p == 0) {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for i in 0..parts.len() {
        let corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]);
        if corner {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += tableaux(&smaller);
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coefficient_field_laws(a in coefficient(), b in coefficient(), c in coefficient()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = ab.try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exponential_is_a_homomorphism(a in nilpotent(), b in nilpotent()) {
        let lhs = a.try_add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.exp().unwrap().try_sub(&FormalSeries::one(a.truncation())).unwrap().log1p().unwrap(), a);
    }

    #[test]
    fn conjugation_is_an_involution(mu in partition()) {
        let c = mu.conjugate();
        prop_assert_eq!(c.size(), mu.size());
        prop_assert_eq!(c.conjugate(), mu.clone());
        prop_assert_eq!(f2_eigenvalue(&c), -f2_eigenvalue(&mu));
    }

    #[test]
    fn character_columns_are_orthogonal(mu in partition(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_partitions(mu.size());
        let nu = &all[pick.index(all.len())];
        let mut sum = 0i64;
        for lambda in &all {
            sum += character(lambda, &mu).unwrap() * character(lambda, nu).unwrap();
        }
        let expected = if *nu == mu { mu.z_mu() } else { BigInt::from(0) };
        prop_assert_eq!(BigInt::from(sum), expected);
    }

    #[test]
    fn heisenberg_two_and_four_point(a in 1i32..=4, b in 1i32..=4) {
        let t = Truncation::local(&[]).shared();
        let two = vacuum_expectation(&t, &[Op::Alpha(a), Op::Alpha(-a)]).unwrap();
        prop_assert_eq!(two.constant_term(), Coefficient::from_int(a as i64));
        let four = vacuum_expectation(&t, &[Op::Alpha(a), Op::Alpha(b), Op::Alpha(-b), Op::Alpha(-a)]).unwrap();
        let expected = (a * b) as i64 * if a == b { 2 } else { 1 };
        prop_assert_eq!(four.constant_term(), Coefficient::from_int(expected));
    }

    #[test]
    fn hurwitz_routes_agree(mu in partition(), g in 0i64..=1) {
        prop_assume!(hodge::branch_count(g, &mu).is_some_and(|b| b <= 6));
        prop_assert_eq!(hodge::hurwitz_character(g, &mu).unwrap(), hodge::hurwitz_oracle(g, &mu).unwrap());
    }
}

#[test]
fn partition_counts_match_recurrence() {
    for n in 0..=12u32 {
        assert_eq!(enumerate_partitions(n).len() as i64, partition_count(n as usize), "n={n}");
    }
}

/// `⟨α_1^d ℱ₂^b α_{-1}^d⟩ = Σ_{|λ|=d} (dim λ)² f₂(λ)^b`.
#[test]
fn casimir_moments_match_tableaux() {
    let t = Truncation::local(&[]).shared();
    for d in 1..=4u32 {
        for b in 0..=3u32 {
            let mut ops: Vec<Op> = (0..d).map(|_| Op::Alpha(1)).collect();
            ops.push(Op::F2Power(b));
            ops.extend((0..d).map(|_| Op::Alpha(-1)));
            let actual = vacuum_expectation(&t, &ops).unwrap().constant_term();
            let mut expected = BigRational::from_integer(0.into());
            for lambda in enumerate_partitions(d) {
                let dim = BigRational::from_integer(tableaux(lambda.parts()));
                let content: i64 = lambda
                    .parts()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &p)| (0..p as i64).map(move |j| j - i as i64))
                    .sum();
                let f = BigRational::from_integer(content.into());
                let mut fb = BigRational::from_integer(1.into());
                for _ in 0..b {
                    fb *= &f;
                }
                expected += &dim * &dim * fb;
            }
            assert_eq!(actual, Coefficient::from_rational(expected), "d={d} b={b}");
        }
    }
}
