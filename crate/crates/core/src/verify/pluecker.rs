//! Plücker relation for `⟨T^{-n} 𝖬 T^n⟩`, the lowest 2-Toda equation in the
//! charge index, and conjugation of `H` and `𝖠(z)` by the translation `T`.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::special::exp_scaled;
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, U_CEIL, U_FLOOR};
use crate::error::Result;
use crate::fock::eval::working_truncation;
use crate::fock::{apply_ops, vacuum_expectation, BasisState, FockVector, Op};
use crate::gw::{bold_a, bold_a_coeff, bold_a_star, bold_a_star_coeff};
use crate::partitions::{enumerate_partitions, factorial};

use super::report::Report;

/// Rational values `(x_i, x*_i)` for levels `0..x.len()`; each gets multiplied
/// by a nilpotent parameter `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub x: Vec<BigRational>,
    pub x_star: Vec<BigRational>,
}

impl Sample {
    pub fn from_ints(x: &[(i64, i64)], x_star: &[(i64, i64)]) -> Self {
        let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
        Sample {
            x: r(x),
            x_star: r(x_star),
        }
    }

    fn levels(&self) -> usize {
        self.x.len().max(self.x_star.len())
    }
}

pub fn default_samples() -> Vec<Sample> {
    vec![
        Sample::from_ints(&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]),
        Sample::from_ints(&[(1, 2), (2, 3)], &[(-1, 1), (1, 5)]),
        Sample::from_ints(&[(-2, 1), (-1, 3)], &[(3, 4), (1, 1)]),
    ]
}

/// Window with an extra variable `eps` kept through `eps^order`.
pub fn with_epsilon(trunc: &Truncation, order: i32) -> Result<Arc<Truncation>> {
    let mut vars: Vec<(String, i32)> = trunc.vars.iter().cloned().zip(trunc.z_orders.iter().copied()).collect();
    vars.push(("eps".into(), order));
    let refs: Vec<(&str, i32)> = vars.iter().map(|(s, o)| (s.as_str(), *o)).collect();
    Ok(Truncation::new(trunc.q_max, trunc.u_lo, trunc.u_hi, &refs)?.shared())
}

/// `𝖬` with `x_i = x_i ε`, `(q/u²)^{H - C²/2}` in the middle; when `shift` is
/// set, `𝖠_k` is replaced by `Σ_j (n u)^j/j! 𝖠_{k-j}` (likewise for `𝖠*`).
fn operator_m(sample: &Sample, trunc: &Arc<Truncation>, shift: Option<(i64, u32)>) -> Vec<Op> {
    let eps = trunc.nvars() - 1;
    let order = trunc.z_orders[eps] as u32;
    let work = working_truncation(trunc);
    let side = |xs: &[BigRational], coeff: fn(i32) -> Op| {
        let mut terms = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            if x == &BigRational::from_integer(0.into()) {
                continue;
            }
            let (n, j_max) = shift.unwrap_or((0, 0));
            for j in 0..=j_max {
                let mut c = Coefficient::from_rational(x.clone() / BigRational::from_integer(factorial(j)));
                if j > 0 {
                    c = &c * &Coefficient::from_int(n.pow(j));
                }
                let w = FormalSeries::monomial(&work, Mono::var(eps, 1).with_u(j as i32), c);
                terms.push((w, coeff(i as i32 - j as i32)));
            }
        }
        Op::ExpSum { terms, order }
    };
    vec![
        side(&sample.x, bold_a_coeff),
        Op::ExpAlpha(1),
        Op::EnergyPower {
            coeff: Coefficient::one(),
            mono: Mono::q(1).with_u(-2),
            reduced: true,
        },
        Op::ExpAlpha(-1),
        side(&sample.x_star, bold_a_star_coeff),
    ]
}

/// `⟨T^{-n} L 𝖬 R T^n⟩` with the charge part of the energy weight removed.
fn charged(m: &[Op], n: i64, left: Option<Op>, right: Option<Op>, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut ops = vec![Op::Shift(-n)];
    ops.extend(left);
    ops.extend(m.iter().cloned());
    ops.extend(right);
    ops.push(Op::Shift(n));
    vacuum_expectation(trunc, &ops)
}

struct Brackets {
    plain: FormalSeries,
    left: FormalSeries,
    right: FormalSeries,
    both: FormalSeries,
}

fn brackets(m: &[Op], n: i64, trunc: &Arc<Truncation>) -> Result<Brackets> {
    Ok(Brackets {
        plain: charged(m, n, None, None, trunc)?,
        left: charged(m, n, Some(Op::Alpha(1)), None, trunc)?,
        right: charged(m, n, None, Some(Op::Alpha(-1)), trunc)?,
        both: charged(m, n, Some(Op::Alpha(1)), Some(Op::Alpha(-1)), trunc)?,
    })
}

fn q_over_u2(trunc: &Arc<Truncation>) -> FormalSeries {
    FormalSeries::monomial(trunc, Mono::q(1).with_u(-2), Coefficient::one())
}

/// Window for products of three factors, the lowest of which starts at `u^{-2}`:
/// every factor must be exact up to `u_hi + 2 - (lowest exponent of the others)`.
fn product_window(trunc: &Arc<Truncation>, lowest: i32) -> Arc<Truncation> {
    Arc::new(Truncation {
        u_lo: U_FLOOR,
        u_hi: trunc.u_hi + 2 - lowest.min(0),
        ..(**trunc).clone()
    })
}

fn all_brackets(m: &[Op], trunc: &Arc<Truncation>) -> Result<Vec<Brackets>> {
    (-2..=2).map(|n| brackets(m, n, trunc)).collect()
}

fn lowest_u(bs: &[Brackets]) -> i32 {
    bs.iter()
        .flat_map(|b| [&b.plain, &b.left, &b.right, &b.both])
        .filter_map(|x| x.min_u())
        .min()
        .unwrap_or(0)
}

/// Plücker relation and the charge-index 2-Toda equation for `n ∈ {-1, 0, 1}`
/// at each sample, with `ε` kept through `eps_order`.
pub fn check_pluecker(samples: &[Sample], eps_order: i32, trunc: &Truncation) -> Result<Report> {
    let local = with_epsilon(trunc, eps_order)?;
    let mut report = Report::new();
    for (s, sample) in samples.iter().enumerate() {
        let first = product_window(&local, 0);
        let m = operator_m(sample, &first, None);
        let mut per_charge = all_brackets(&m, &first)?;
        let lowest = lowest_u(&per_charge);
        let wide = product_window(&local, lowest);
        if lowest < 0 {
            let m = operator_m(sample, &wide, None);
            per_charge = all_brackets(&m, &wide)?;
        }
        let at = |n: i64| &per_charge[(n + 2) as usize];
        let qu = q_over_u2(&wide);
        let det = |b: &Brackets| -> Result<FormalSeries> {
            b.plain.try_mul(&b.both)?.try_sub(&b.left.try_mul(&b.right)?)
        };
        let lhs = qu.try_mul(&at(1).plain)?.try_mul(&at(-1).plain)?;
        report.compare(
            "pluecker",
            format!("sample {s}"),
            &det(at(0))?.retruncated(&local),
            &lhs.retruncated(&local),
        );
        for n in -1..=1 {
            let rhs = qu.try_mul(&at(n + 1).plain)?.try_mul(&at(n - 1).plain)?;
            report.compare(
                "toda-charge",
                format!("sample {s} n={n}"),
                &rhs.retruncated(&local),
                &det(at(n))?.retruncated(&local),
            );
        }
    }
    Ok(report)
}

/// Number of string-shift terms `Σ_j` that can contribute: `𝖠_{k-j}` needs a
/// raise of at least `j - k`, which the rest of the word must undo.
fn shift_terms(sample: &Sample, eps_order: u32, q_max: u32) -> u32 {
    let levels = sample.levels() as u32;
    levels + q_max + eps_order * levels + 1
}

/// `⟨T^{-n} 𝖬 T^n⟩ = ⟨𝖬 with 𝖠(z) → e^{n u z} 𝖠(z)⟩` for `n = ±1`, both with
/// the reduced weight `(q/u²)^{H - C²/2}`.
pub fn check_translated_expectation(samples: &[Sample], eps_order: i32, trunc: &Truncation) -> Result<Report> {
    let local = with_epsilon(trunc, eps_order)?;
    let mut report = Report::new();
    for (s, sample) in samples.iter().enumerate() {
        let m = operator_m(sample, &local, None);
        let j_max = shift_terms(sample, eps_order as u32, trunc.q_max);
        for n in [-1i64, 1] {
            let lhs = charged(&m, n, None, None, &local)?;
            let shifted = operator_m(sample, &local, Some((n, j_max)));
            let rhs = vacuum_expectation(&local, &shifted)?;
            report.compare("translation-expectation", format!("sample {s} n={n}"), &rhs, &lhs);
        }
    }
    Ok(report)
}

/// Basis states with `|λ| ≤ cap` and `|c| ≤ max_charge`.
pub fn charged_states(cap: u32, max_charge: i64) -> Vec<BasisState> {
    let mut out = Vec::new();
    for c in -max_charge..=max_charge {
        for n in 0..=cap {
            out.extend(enumerate_partitions(n).into_iter().map(|p| BasisState::new(p, c)));
        }
    }
    out
}

fn restricted(v: &FockVector, cap: u32, trunc: &Arc<Truncation>) -> FockVector {
    let mut out = v.map_weights(|w| w.retruncated(trunc));
    out.retain(|s| s.size() <= cap);
    let mut clean = FockVector::zero(trunc);
    for (s, w) in out.iter() {
        if !w.is_zero() {
            clean.add(s.clone(), w.clone());
        }
    }
    clean
}

/// `T^{-n} H T^n = H + n C + n²/2` on states with `|λ| ≤ cap`, `|c| ≤ 2`.
pub fn check_energy_translation(cap: u32) -> Result<Report> {
    let trunc = Truncation::new(0, 0, 0, &[])?.shared();
    let mut report = Report::new();
    for n in [-2i64, -1, 1, 2] {
        for s in charged_states(cap, 2) {
            let v = FockVector::basis(&trunc, s.clone());
            let lhs = apply_ops(&trunc, &[Op::Shift(-n), Op::Energy, Op::Shift(n)], &v, None)?;
            let half_n2 = Coefficient::from_ratio(n * n, 2);
            let mut rhs = apply_ops(&trunc, &[Op::Energy], &v, None)?;
            rhs.add_vector(&apply_ops(&trunc, &[Op::Charge], &v, None)?.scale(&Coefficient::from_int(n)));
            rhs.add_vector(&v.scale(&half_n2));
            report.push(
                "translation-energy",
                format!("n={n} state {s}"),
                restricted(&rhs, cap, &trunc).render(),
                restricted(&lhs, cap, &trunc).render(),
            );
        }
    }
    Ok(report)
}

/// `T^{-n} 𝖠(z) T^n = e^{n u z} 𝖠(z)`, and the same for `𝖠*(w)`, on states
/// with `|λ| ≤ cap`, `|c| ≤ 2`, through `z^z_order`.
pub fn check_family_translation(cap: u32, z_order: i32, trunc: &Truncation) -> Result<Report> {
    let local = Truncation::new(trunc.q_max, trunc.u_lo, trunc.u_hi, &[("z", z_order)])?.shared();
    let mut report = Report::new();
    let wide = Truncation::new(0, U_FLOOR, U_CEIL, &[("z", z_order + cap as i32 + 1)])?.shared();
    for (name, family) in [("A", bold_a(0, z_order)), ("A*", bold_a_star(0, z_order))] {
        for n in [-1i64, 1] {
            let uz = FormalSeries::monomial(&wide, Mono::var(0, 1).with_u(1), Coefficient::one());
            let factor = exp_scaled(&uz, &BigRational::from_integer(n.into()))?;
            for s in charged_states(cap, 2) {
                let v = FockVector::basis(&local, s.clone());
                let lhs = apply_ops(&local, &[Op::Shift(-n), family.clone(), Op::Shift(n)], &v, Some(cap))?;
                let plain = apply_ops(&local, std::slice::from_ref(&family), &v, Some(cap))?;
                let mut rhs = FockVector::zero(plain.truncation());
                for (target, w) in plain.iter() {
                    let x = w.retruncated(&wide).try_mul(&factor)?;
                    rhs.add(target.clone(), x.retruncated(plain.truncation()));
                }
                report.push(
                    "translation-family",
                    format!("{name} n={n} state {s}"),
                    restricted(&rhs, cap, &local).render(),
                    restricted(&lhs, cap, &local).render(),
                );
            }
        }
    }
    Ok(report)
}
