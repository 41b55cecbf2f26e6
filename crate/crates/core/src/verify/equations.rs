//! Divisor, string and 2-Toda equations for the equivariant potential.

use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, MAX_VARS, U_FLOOR};
use crate::error::Result;
use crate::gw::{bracket_disconnected, g_operator, InsertionList};
use crate::partitions::factorial;

use super::report::Report;
use super::xpoly::{Exponent, Support, XPoly};

fn widened(trunc: &Truncation, u_hi: i32) -> Arc<Truncation> {
    Arc::new(Truncation {
        u_lo: U_FLOOR,
        u_hi,
        ..trunc.clone()
    })
}

fn var_names(trunc: &Truncation) -> Vec<(String, i32)> {
    trunc
        .vars
        .iter()
        .cloned()
        .zip(trunc.z_orders.iter().copied())
        .collect()
}

/// `[z_0^1] 𝖦_d(z_0, z, w) = (d - 1/24 + t Σ z_i) 𝖦_d(z, w)` with `z, w` the
/// first `n` and last `m` variables of `trunc`.
pub fn check_divisor(d: u32, n: usize, m: usize, trunc: &Arc<Truncation>) -> Result<Report> {
    let mut vars = vec![("z0".to_string(), 1)];
    vars.extend(var_names(trunc));
    let refs: Vec<(&str, i32)> = vars.iter().map(|(s, o)| (s.as_str(), *o)).collect();
    let with_z0 = Truncation::new(trunc.q_max, trunc.u_lo, trunc.u_hi, &refs)?.shared();
    let big = g_operator(&with_z0, n + 1, m, Some(d))?;
    let mut lhs = FormalSeries::zero(trunc);
    for (mono, c) in big.extract_var(0, 1).iter() {
        let mut z = [0; MAX_VARS];
        z[..MAX_VARS - 1].copy_from_slice(&mono.z[1..]);
        lhs.add_term(Mono { z, ..*mono }, c.clone());
    }
    let g = g_operator(trunc, n, m, Some(d))?;
    let mut factor = FormalSeries::constant(trunc, Coefficient::from_rational(BigRational::new(
        (24 * d as i64 - 1).into(),
        24.into(),
    )));
    for i in 0..n {
        factor.add_term(Mono::var(i, 1), Coefficient::t());
    }
    let rhs = factor.try_mul(&g)?;
    let mut report = Report::new();
    report.compare("divisor", format!("d={d} n={n} m={m}"), &rhs, &lhs);
    Ok(report)
}

/// Largest number of `τ_0(1)` insertions that can survive in the u-window:
/// a nonzero bracket needs `Σ k_i - (2g - 2) - 2d - n ≥ 0`.
fn unit_insertion_bound(ins: &InsertionList, d: u32, u_lo: i32) -> u32 {
    let sum_k: i64 = ins.zero.iter().chain(ins.infinity.iter()).map(|&k| k as i64).sum();
    (sum_k - u_lo as i64 - 2 * d as i64).max(0) as u32
}

/// `⟨e^{τ_0(1)} ∏ τ_{k_i}(𝟎) ∏ τ_{l_j}(∞)⟩•_d` by expanding `τ_0(1) = (τ_0(𝟎) - τ_0(∞))/t`.
pub fn string_left_side(ins: &InsertionList, d: u32, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let n_max = unit_insertion_bound(ins, d, trunc.u_lo);
    let pairs: Vec<(u32, u32)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |a| (a, n - a)))
        .collect();
    let terms: Vec<Result<FormalSeries>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut zero = vec![0; a as usize];
            zero.extend(&ins.zero);
            let mut infinity = ins.infinity.clone();
            infinity.extend(std::iter::repeat_n(0, b as usize));
            let x = bracket_disconnected(&InsertionList::new(zero, infinity), trunc)?
                .extract_q(d)
                .mul_term(&Mono::q(d), &Coefficient::one());
            let denom = BigRational::from_integer(factorial(a) * factorial(b));
            let sign = if b % 2 == 0 { 1 } else { -1 };
            let c = Coefficient::t()
                .pow(-((a + b) as i32))
                .scale_rational(&(BigRational::from_integer(sign.into()) / denom));
            Ok(x.scale(&c))
        })
        .collect();
    let mut acc = FormalSeries::zero(trunc);
    for t in terms {
        acc = acc.try_add(&t?)?;
    }
    Ok(acc)
}

/// `[∏ z_i^{k_i+1} ∏ w_j^{l_j+1}] e^{Σ z_i + Σ w_j} 𝖦_d(z, w)`.
pub fn string_right_side(ins: &InsertionList, d: u32, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let orders: Vec<i32> = ins
        .zero
        .iter()
        .chain(ins.infinity.iter())
        .map(|&k| k as i32 + 1)
        .collect();
    let names: Vec<String> = (0..ins.zero.len())
        .map(|i| format!("z{}", i + 1))
        .chain((0..ins.infinity.len()).map(|j| format!("w{}", j + 1)))
        .collect();
    let vars: Vec<(&str, i32)> = names.iter().map(|s| s.as_str()).zip(orders.iter().copied()).collect();
    let local = Truncation::new(trunc.q_max, trunc.u_lo, trunc.u_hi, &vars)?.shared();
    let g = g_operator(&local, ins.zero.len(), ins.infinity.len(), Some(d))?;
    let mut out = FormalSeries::zero(trunc);
    for (m, c) in g.iter() {
        let mut denom = num_bigint::BigInt::from(1);
        for (i, &o) in orders.iter().enumerate() {
            denom *= factorial((o - m.z[i]) as u32);
        }
        let w = Coefficient::from_rational(BigRational::new(1.into(), denom));
        out.add_term(Mono::q(d).with_u(m.u), c * &w);
    }
    Ok(out)
}

pub fn check_string(ins: &InsertionList, d: u32, trunc: &Arc<Truncation>) -> Result<Report> {
    let bare = Arc::new(Truncation {
        vars: vec![],
        z_orders: vec![],
        ..(**trunc).clone()
    });
    let lhs = string_left_side(ins, d, &bare)?;
    let rhs = string_right_side(ins, d, &bare)?;
    let mut report = Report::new();
    report.compare(
        "string",
        format!("d={d} zero={:?} inf={:?}", ins.zero, ins.infinity),
        &rhs,
        &lhs,
    );
    Ok(report)
}

/// Variables `x_0, x*_0, x_1, x*_1, …` up to descendant `levels - 1`.
fn insertion_list(e: &[u32]) -> InsertionList {
    let mut ins = InsertionList::default();
    for (i, &k) in e.iter().enumerate() {
        let level = (i / 2) as u32;
        let side = if i % 2 == 0 { &mut ins.zero } else { &mut ins.infinity };
        side.extend(std::iter::repeat_n(level, k as usize));
    }
    ins
}

/// `τ(x, x*)` on `support`: the coefficient of `x^e` is `⟨∏ 𝖠^{e}⟩/e!`.
pub fn tau_polynomial(nvars: usize, support: Support, max_deg: u32, trunc: &Arc<Truncation>) -> Result<XPoly> {
    let mut tau = XPoly::zero(nvars, trunc, support);
    let exps: Vec<Exponent> = tau.supported_exponents(max_deg);
    let values: Vec<Result<(Exponent, FormalSeries)>> = exps
        .par_iter()
        .map(|e| {
            let x = bracket_disconnected(&insertion_list(e), trunc)?;
            let mut f = num_bigint::BigInt::from(1);
            for &k in e {
                f *= factorial(k);
            }
            let c = Coefficient::from_rational(BigRational::new(1.into(), f));
            Ok((e.clone(), x.scale(&c)))
        })
        .collect();
    for v in values {
        let (e, x) = v?;
        tau.add_term(e, x);
    }
    Ok(tau)
}

/// `∂ = (1/t)(∂_{x_0} - ∂_{x*_0})`.
fn unit_derivative(f: &XPoly) -> XPoly {
    f.derivative(0).sub(&f.derivative(1)).scale(&Coefficient::t().recip())
}

/// Data shared by the Toda checks: `F = log τ` on a support wide enough for the shifts.
pub struct TodaData {
    pub budget: u32,
    pub shift_order: u32,
    pub potential: XPoly,
}

pub fn toda_data(levels: usize, budget: u32, trunc: &Arc<Truncation>) -> Result<TodaData> {
    let nvars = 2 * levels;
    let n_max = ((trunc.u_hi + 4).max(2) / 2) as u32;
    let shift_order = (2 * n_max).max(2);
    let support: Support = Arc::new(move |e: &[u32]| {
        let deg0 = e[0] + e[1];
        let rest: u32 = e[2..].iter().sum();
        rest + deg0.saturating_sub(shift_order) <= budget
    });
    let max_deg = budget + shift_order;
    let pad = 2 * max_deg as i32 + 2 * trunc.q_max as i32;
    let wide = widened(trunc, trunc.u_hi + pad);
    let tau = tau_polynomial(nvars, support, max_deg, &wide)?;
    let potential = tau.log()?.retruncated(&widened(trunc, trunc.u_hi));
    Ok(TodaData {
        budget,
        shift_order,
        potential,
    })
}

/// `∂_{x_0} ∂_{x*_0} F = (q/u²) exp(Δ F)` on all monomials of degree at most the budget.
pub fn check_toda_equation(data: &TodaData, trunc: &Arc<Truncation>) -> Result<Report> {
    let f = &data.potential;
    let budget = data.budget;
    let low = |e: &[u32]| e.iter().sum::<u32>() <= budget;
    let lhs = f.derivative(0).derivative(1).filter(low);
    let exp_trunc = widened(trunc, trunc.u_hi + 2);
    let mut delta = XPoly::zero(f.nvars, &exp_trunc, f.support.clone());
    let mut power = f.clone();
    for n in 1..=data.shift_order {
        power = unit_derivative(&power);
        if n % 2 == 0 {
            let c = FormalSeries::monomial(
                &exp_trunc,
                Mono::u(n as i32),
                Coefficient::from_rational(BigRational::new(2.into(), factorial(n))),
            );
            delta = delta.add(&power.filter(low).retruncated(&exp_trunc).scale_series(&c)?);
        }
    }
    let prefactor = FormalSeries::monomial(&exp_trunc, Mono::q(1).with_u(-2), Coefficient::one());
    let rhs = delta.exp()?.scale_series(&prefactor)?;
    let mut report = Report::new();
    for e in lhs.supported_exponents(budget) {
        report.compare(
            "toda",
            format!("x^{e:?}"),
            &rhs.coeff(&e).retruncated(trunc),
            &lhs.coeff(&e).retruncated(trunc),
        );
    }
    Ok(report)
}

/// Genus-0 small-phase-space checks: `F⁰ = F^c + q e^{y_0}` and
/// `t F⁰_{z_0 y_0} + F⁰_{y_0 y_0} = q exp(F⁰_{z_0 z_0})`, with `z_0 = t x_0`, `y_0 = x_0 + x*_0`.
pub fn check_genus_zero(data: &TodaData, trunc: &Arc<Truncation>) -> Result<Report> {
    let local = Arc::new(Truncation {
        u_lo: 0,
        u_hi: 0,
        ..(**trunc).clone()
    });
    let f = &data.potential;
    let small = |e: &[u32]| e[2..].iter().all(|&k| k == 0);
    let top = data.budget + data.shift_order;
    let mut f0 = XPoly::zero(f.nvars, &local, f.support.clone());
    for (e, x) in f.terms.iter().filter(|(e, _)| small(e)) {
        let layer = x.u_window(-2, -2).mul_term(&Mono::u(2), &Coefficient::one());
        f0.add_term(e.clone(), layer.retruncated(&local));
    }
    let one = FormalSeries::one(&local);
    let unit = |i: usize| {
        let mut e = vec![0; f.nvars];
        e[i] = 1;
        let mut p = XPoly::zero(f.nvars, &local, f.support.clone());
        p.add_term(e, one.clone());
        p
    };
    let z0 = unit(0).scale(&Coefficient::t());
    let y0 = unit(0).add(&unit(1));
    let classical = z0
        .mul(&z0)?
        .mul(&y0)?
        .scale(&Coefficient::from_ratio(1, 2))
        .sub(&z0.mul(&y0)?.mul(&y0)?.scale(&(&Coefficient::t() * &Coefficient::from_ratio(1, 2))))
        .add(&y0.mul(&y0)?.mul(&y0)?.scale(&(&Coefficient::t().pow(2) * &Coefficient::from_ratio(1, 6))));
    let q = FormalSeries::monomial(&local, Mono::q(1), Coefficient::one());
    let expected = classical.add(&y0.exp()?.scale_series(&q)?);
    let mut report = Report::new();
    for e in f0.supported_exponents(top).into_iter().filter(|e| small(e)) {
        report.compare(
            "genus0-potential",
            format!("x^{e:?}"),
            &expected.coeff(&e),
            &f0.coeff(&e),
        );
    }
    let fz = unit_derivative(&f0);
    let lhs = fz
        .derivative(1)
        .scale(&Coefficient::t())
        .add(&f0.derivative(1).derivative(1));
    let rhs = unit_derivative(&fz).exp()?.scale_series(&q)?;
    for e in f0.supported_exponents(top.saturating_sub(2)).into_iter().filter(|e| small(e)) {
        report.compare("genus0-toda", format!("x^{e:?}"), &rhs.coeff(&e), &lhs.coeff(&e));
    }
    Ok(report)
}
