//! Operators on the truncated Fock space and their action on vectors.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use super::family::AFamily;
use super::state::BasisState;
use super::vector::FockVector;
use crate::algebra::special::{exp_scaled, varsigma_inverse};
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation};
use crate::error::{Error, Result};

const PARALLEL_THRESHOLD: usize = 8;

#[derive(Clone, Debug)]
pub enum Op {
    /// `α_k`, `k != 0`.
    Alpha(i32),
    /// `e^{α_k}`.
    ExpAlpha(i32),
    /// `ℰ_r(b)` for a series argument `b` in the ambient window.
    E { r: i32, arg: FormalSeries },
    /// `H`.
    Energy,
    /// `C`.
    Charge,
    /// `ℱ₂`, defined on charge 0 only.
    F2,
    /// `ℱ₂^n`.
    F2Power(u32),
    /// `e^{c u ℱ₂}`.
    ExpF2U(Coefficient),
    /// `(c · mono)^H`, or `(c · mono)^{H - C²/2}` when `reduced`.
    EnergyPower {
        coeff: Coefficient,
        mono: Mono,
        reduced: bool,
    },
    /// `P_d`.
    Project(u32),
    /// `T^n`.
    Shift(i64),
    /// Multiplication by a series.
    Scalar(FormalSeries),
    Family(Arc<AFamily>),
    /// `Σ_{n ≤ order} (Σ c_i O_i)^n / n!`; the `c_i` must make higher powers vanish in the window.
    ExpSum { terms: Vec<(FormalSeries, Op)>, order: u32 },
}

/// Limits for one application: the largest `|λ|` worth producing and the largest u-exponent.
#[derive(Clone, Debug)]
pub struct ApplyCtx {
    pub trunc: Arc<Truncation>,
    pub out_cap: u32,
    pub u_cap: i32,
}

impl Op {
    pub fn adjoint(&self) -> Op {
        match self {
            Op::Alpha(k) => Op::Alpha(-k),
            Op::ExpAlpha(k) => Op::ExpAlpha(-k),
            Op::E { r, arg } => Op::E {
                r: -r,
                arg: arg.clone(),
            },
            Op::Shift(n) => Op::Shift(-n),
            Op::Family(f) => Op::Family(Arc::new(f.adjoint())),
            Op::ExpSum { terms, order } => Op::ExpSum {
                terms: terms.iter().map(|(c, o)| (c.clone(), o.adjoint())).collect(),
                order: *order,
            },
            other => other.clone(),
        }
    }

    /// Largest increase of `|λ|`; `None` when unbounded.
    pub fn max_raise(&self) -> Option<u32> {
        match self {
            Op::Alpha(k) => Some(if *k < 0 { k.unsigned_abs() } else { 0 }),
            Op::ExpAlpha(k) => {
                if *k < 0 {
                    None
                } else {
                    Some(0)
                }
            }
            Op::E { r, .. } => Some(if *r < 0 { r.unsigned_abs() } else { 0 }),
            Op::Family(f) => f.max_raise(),
            Op::ExpSum { terms, order } => sum_bound(terms, *order, Op::max_raise),
            _ => Some(0),
        }
    }

    /// Largest decrease of `|λ|`; `None` when unbounded.
    pub fn max_lower(&self) -> Option<u32> {
        match self {
            Op::Alpha(k) => Some(if *k > 0 { *k as u32 } else { 0 }),
            Op::ExpAlpha(k) => {
                if *k > 0 {
                    None
                } else {
                    Some(0)
                }
            }
            Op::E { r, .. } => Some(if *r > 0 { *r as u32 } else { 0 }),
            Op::Family(f) => f.max_lower(),
            Op::ExpSum { terms, order } => sum_bound(terms, *order, Op::max_lower),
            _ => Some(0),
        }
    }

    /// States with `|λ|` above this cannot contribute.
    pub fn size_filter(&self, q_max: u32) -> Option<u32> {
        match self {
            Op::Project(d) => Some(*d),
            Op::EnergyPower { mono, .. } if mono.q > 0 => Some(q_max / mono.q),
            _ => None,
        }
    }

    /// Bound on how far below zero this operator can push the u-exponent of a
    /// vacuum pairing, counting the size it may remove from inputs of size at
    /// most `in_cap`; `None` when unbounded.
    pub fn u_slack(&self, q_max: u32, in_cap: u32) -> Option<i32> {
        let lower = self.max_lower().unwrap_or(in_cap).min(in_cap) as i32;
        match self {
            Op::Family(f) => {
                let base = 1 - f.prefactor_u;
                Some(if f.star { 2 * lower + base } else { base })
            }
            Op::EnergyPower { mono, .. } if mono.u < 0 => {
                if mono.q == 0 {
                    return None;
                }
                Some(lower - mono.u * (q_max / mono.q) as i32)
            }
            Op::Scalar(s) => Some(lower + (-s.min_u().unwrap_or(0)).max(0)),
            Op::E { arg, .. } => Some(lower + (-arg.min_u().unwrap_or(0)).max(0)),
            Op::ExpSum { terms, order } => {
                let inner = self.max_raise().map_or(in_cap, |r| in_cap + r);
                let mut worst = 0;
                for (c, o) in terms {
                    worst = worst.max(o.u_slack(q_max, inner)? + (-c.min_u().unwrap_or(0)).max(0));
                }
                Some(worst * *order as i32)
            }
            _ => Some(lower),
        }
    }

    pub fn apply(&self, v: &FockVector, ctx: &ApplyCtx) -> Result<FockVector> {
        let mut out = match self {
            Op::ExpAlpha(k) => {
                let inner = if *k > 0 {
                    ApplyCtx {
                        out_cap: v.max_size().unwrap_or(0),
                        ..ctx.clone()
                    }
                } else {
                    ctx.clone()
                };
                let mut acc = v.clone();
                let mut term = v.clone();
                for n in 1.. {
                    term = Op::Alpha(*k)
                        .apply(&term, &inner)?
                        .scale(&Coefficient::from_ratio(1, n));
                    if term.is_zero() {
                        break;
                    }
                    acc.add_vector(&term);
                }
                acc
            }
            Op::ExpSum { terms, order } => exp_sum(terms, *order, v, ctx)?,
            Op::Project(d) => v.project_energy(*d),
            Op::Shift(n) => {
                let mut out = FockVector::zero(&ctx.trunc);
                for (s, w) in v.iter() {
                    out.add(BasisState::new(s.lambda.clone(), s.charge + n), w.clone());
                }
                out
            }
            _ => self.apply_statewise(v, ctx)?,
        };
        out.retain(|s| s.size() <= ctx.out_cap);
        Ok(out)
    }

    fn apply_statewise(&self, v: &FockVector, ctx: &ApplyCtx) -> Result<FockVector> {
        let items: Vec<(&BasisState, &FormalSeries)> = v.iter().collect();
        let per_state = |(s, w): &(&BasisState, &FormalSeries)| -> Result<Vec<(BasisState, FormalSeries)>> {
            let mut res = Vec::new();
            for (t, x) in self.state_action(s, w, ctx)? {
                let mut y = w.try_mul(&x)?;
                y.cap_u(ctx.u_cap);
                if !y.is_zero() {
                    res.push((t, y));
                }
            }
            Ok(res)
        };
        let results: Vec<Result<Vec<(BasisState, FormalSeries)>>> = if items.len() >= PARALLEL_THRESHOLD {
            items.par_iter().map(per_state).collect()
        } else {
            items.iter().map(per_state).collect()
        };
        let mut out = FockVector::zero(&ctx.trunc);
        for r in results {
            for (t, y) in r? {
                out.add(t, y);
            }
        }
        Ok(out)
    }

    /// `(target, weight)` pairs for the operator applied to `s`; `w` is the incoming weight.
    fn state_action(
        &self,
        s: &BasisState,
        w: &FormalSeries,
        ctx: &ApplyCtx,
    ) -> Result<Vec<(BasisState, FormalSeries)>> {
        let trunc = &ctx.trunc;
        let constant = |c: Coefficient| FormalSeries::constant(trunc, c);
        Ok(match self {
            Op::Alpha(k) => {
                assert!(*k != 0, "alpha_0 is not an operator here");
                s.transitions(*k)
                    .into_iter()
                    .filter(|(t, _, _)| t.size() <= ctx.out_cap)
                    .map(|(t, sign, _)| (t, constant(Coefficient::from_int(sign as i64))))
                    .collect()
            }
            Op::E { r, arg } => e_action(*r, arg, s, ctx)?,
            Op::Energy => vec![(s.clone(), constant(Coefficient::from_rational(s.energy())))],
            Op::Charge => vec![(s.clone(), constant(Coefficient::from_int(s.charge)))],
            Op::F2 | Op::F2Power(_) => {
                if s.charge != 0 {
                    return Err(Error::ChargedF2(s.charge));
                }
                let n = if let Op::F2Power(n) = self { *n as i32 } else { 1 };
                let f = Coefficient::from_int(s.lambda.content_sum());
                vec![(s.clone(), constant(f.pow(n)))]
            }
            Op::ExpF2U(c) => {
                if s.charge != 0 {
                    return Err(Error::ChargedF2(s.charge));
                }
                let f = &Coefficient::from_int(s.lambda.content_sum()) * c;
                let top = ctx.u_cap.saturating_sub(w.min_u().unwrap_or(0));
                let mut x = FormalSeries::zero(trunc);
                let mut term = Coefficient::one();
                let mut n = 0i32;
                while n <= top && !term.is_zero() {
                    x.add_term(Mono::u(n), term.clone());
                    n += 1;
                    term = &(&term * &f) / &Coefficient::from_int(n as i64);
                }
                vec![(s.clone(), x)]
            }
            Op::EnergyPower {
                coeff,
                mono,
                reduced,
            } => {
                let e = if *reduced {
                    s.size() as i64
                } else {
                    if s.charge % 2 != 0 {
                        return Err(Error::OddChargeEnergyPower(s.charge));
                    }
                    s.twice_energy() / 2
                };
                let mut m = Mono::ONE;
                for _ in 0..e {
                    m = m.times(mono);
                }
                vec![(
                    s.clone(),
                    FormalSeries::monomial(trunc, m, coeff.pow(e as i32)),
                )]
            }
            Op::Scalar(x) => vec![(s.clone(), x.retruncated(trunc))],
            Op::Family(f) => {
                let u_cap = ctx.u_cap.saturating_sub(w.min_u().unwrap_or(0));
                f.action(s, trunc, ctx.out_cap, u_cap)?
            }
            Op::ExpAlpha(_) | Op::Project(_) | Op::Shift(_) | Op::ExpSum { .. } => unreachable!(),
        })
    }
}

fn sum_bound(terms: &[(FormalSeries, Op)], order: u32, f: impl Fn(&Op) -> Option<u32>) -> Option<u32> {
    let mut m = 0;
    for (_, o) in terms {
        m = m.max(f(o)?);
    }
    Some(m * order)
}

fn exp_sum(terms: &[(FormalSeries, Op)], order: u32, v: &FockVector, ctx: &ApplyCtx) -> Result<FockVector> {
    let lower = sum_bound(terms, 1, Op::max_lower);
    let raise = sum_bound(terms, 1, Op::max_raise);
    let in_max = v.max_size().unwrap_or(0);
    let step_slack = {
        let inner = raise.map_or(ctx.out_cap, |r| in_max + r * order);
        let mut worst = 0;
        for (c, o) in terms {
            let s = o.u_slack(ctx.trunc.q_max, inner).unwrap_or(0);
            worst = worst.max(s + (-c.min_u().unwrap_or(0)).max(0));
        }
        worst
    };
    let mut acc = v.clone();
    let mut term = v.clone();
    for n in 1..=order {
        let rest = order - n;
        let cap = [
            lower.map(|l| ctx.out_cap + l * rest),
            raise.map(|r| in_max + r * n),
        ]
        .into_iter()
        .flatten()
        .min()
        .ok_or(Error::UnboundedEnergy(0))?;
        let inner = ApplyCtx {
            trunc: ctx.trunc.clone(),
            out_cap: cap,
            u_cap: ctx.u_cap.saturating_add(step_slack * rest as i32),
        };
        let mut next = FockVector::zero(&ctx.trunc);
        for (c, o) in terms {
            let x = o.apply(&term, &inner)?;
            for (s, w) in x.iter() {
                let mut y = w.try_mul(c)?;
                y.cap_u(inner.u_cap);
                next.add(s.clone(), y);
            }
        }
        term = next.scale(&Coefficient::from_ratio(1, n as i64));
        if term.is_zero() {
            break;
        }
        acc.add_vector(&term);
    }
    Ok(acc)
}

fn e_action(
    r: i32,
    arg: &FormalSeries,
    s: &BasisState,
    ctx: &ApplyCtx,
) -> Result<Vec<(BasisState, FormalSeries)>> {
    let trunc = &ctx.trunc;
    let arg = arg.retruncated(trunc);
    let mut cache: HashMap<i64, FormalSeries> = HashMap::new();
    let mut weight = |m: i64| -> Result<FormalSeries> {
        if let Some(x) = cache.get(&m) {
            return Ok(x.clone());
        }
        let x = exp_scaled(&arg, &BigRational::new(m.into(), 2.into()))?;
        cache.insert(m, x.clone());
        Ok(x)
    };
    if r == 0 {
        let mut w = varsigma_inverse(&arg)?.try_mul(&weight(2 * s.charge)?)?;
        for (m, mult) in s.diagonal_exponents() {
            w.add_scaled(&weight(m)?, &Coefficient::from_int(mult));
        }
        return Ok(vec![(s.clone(), w)]);
    }
    let mut out = Vec::new();
    for (t, sign, m) in s.transitions(r) {
        if t.size() > ctx.out_cap {
            continue;
        }
        let w = weight(m)?;
        out.push((t, if sign < 0 { w.neg_ref() } else { w }));
    }
    Ok(out)
}
