//! The hyperbolic building blocks `ς`, `𝒮`, Pochhammer symbols and the degenerate hypergeometric series.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::coefficient::Coefficient;
use super::series::{FormalSeries, Mono};
use super::truncation::Truncation;
use super::univariate::{compose_with, powers, PowerSeries1};
use crate::error::{Error, Result};

/// `ς(var)` in a single-variable window of the given order.
pub fn varsigma_series(var: &str, order: i32) -> Result<FormalSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument("varsigma order must be >= 1".into()));
    }
    let trunc = Truncation::local(&[(var, order)]).shared();
    varsigma(&FormalSeries::var(&trunc, 0))
}

/// `1/ς(var)` as a Laurent series through `var^order`.
pub fn varsigma_inverse_series(var: &str, order: i32) -> Result<FormalSeries> {
    let trunc = Truncation::local(&[(var, order.max(0))]).shared();
    varsigma_inverse(&FormalSeries::var(&trunc, 0))
}

/// `𝒮(b) = ς(b)/b`.
pub fn s_function(b: &FormalSeries) -> Result<FormalSeries> {
    compose_with(b, |n| Ok(PowerSeries1::sinh_ratio(n)))
}

/// `log 𝒮(b)`.
pub fn log_s(b: &FormalSeries) -> Result<FormalSeries> {
    compose_with(b, |n| PowerSeries1::sinh_ratio(n).log())
}

/// `𝒮(b)^k` for an integer `k`.
pub fn s_integer_power(b: &FormalSeries, k: i32) -> Result<FormalSeries> {
    compose_with(b, |n| PowerSeries1::sinh_ratio(n).powi(k))
}

/// `ς(b) = b 𝒮(b)`.
pub fn varsigma(b: &FormalSeries) -> Result<FormalSeries> {
    b.try_mul(&s_function(b)?)
}

/// `ς(b)^k` for any integer `k`; `b` must be invertible when `k < 0`.
pub fn varsigma_power(b: &FormalSeries, k: i32) -> Result<FormalSeries> {
    if k == 0 {
        return Ok(FormalSeries::one(b.truncation()));
    }
    if k < 0 && b.len() == 1 {
        let (m, c) = b.iter().next().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut mk = Mono::ONE;
        for _ in 0..-k {
            mk = mk.times(&m.inverse());
        }
        let trunc = b.truncation();
        let padded = padded_truncation(trunc, &mk);
        let regular = s_integer_power(&b.retruncated(&padded), k)?;
        let mut out = FormalSeries::zero(trunc);
        let ck = c.pow(k);
        for (e, x) in regular.iter() {
            out.add_term(e.times(&mk), x * &ck);
        }
        return Ok(out);
    }
    let bk = monomial_aware_pow(b, k)?;
    bk.try_mul(&s_integer_power(b, k)?)
}

/// Window such that multiplying by the monomial `m` lands exactly in `trunc`.
pub fn padded_truncation(trunc: &Arc<Truncation>, m: &Mono) -> Arc<Truncation> {
    let mut t = (**trunc).clone();
    for (o, e) in t.z_orders.iter_mut().zip(m.z.iter()) {
        *o = (*o - e).max(0);
    }
    t.u_hi = t.u_hi.saturating_sub(m.u).min(super::truncation::U_CEIL);
    t.u_lo = super::truncation::U_FLOOR;
    Arc::new(t)
}

/// `1/ς(b)`.
pub fn varsigma_inverse(b: &FormalSeries) -> Result<FormalSeries> {
    varsigma_power(b, -1)
}

/// `ς(k b)/ς(b)` without inverting `b`.
pub fn varsigma_ratio(b: &FormalSeries, k: i64) -> Result<FormalSeries> {
    let kk = BigRational::from_integer(k.into());
    compose_with(b, |n| {
        let s = PowerSeries1::sinh_ratio(n);
        Ok(s.scale_arg(&kk).mul(&s.inverse()?).scale(&kk))
    })
}

/// `e^{c b}`.
pub fn exp_scaled(b: &FormalSeries, c: &BigRational) -> Result<FormalSeries> {
    if c.is_zero() {
        return Ok(FormalSeries::one(b.truncation()));
    }
    compose_with(b, |n| Ok(PowerSeries1::exp_linear(c, n)))
}

/// `𝒮(b)^a := exp(a log 𝒮(b))`.
pub fn s_power(b: &FormalSeries, a: &FormalSeries) -> Result<FormalSeries> {
    if a.is_zero() {
        return Ok(FormalSeries::one(b.truncation()));
    }
    a.try_mul(&log_s(b)?)?.exp()
}

fn monomial_aware_pow(b: &FormalSeries, k: i32) -> Result<FormalSeries> {
    if b.len() == 1 {
        let (m, c) = b.iter().next().unwrap();
        let mut mk = Mono::ONE;
        let base = if k < 0 { m.inverse() } else { *m };
        for _ in 0..k.unsigned_abs() {
            mk = mk.times(&base);
        }
        return Ok(FormalSeries::monomial(b.truncation(), mk, c.pow(k)));
    }
    b.pow(k)
}

/// `(a+1)_k` for a rational `a`; `None` when a factor vanishes.
pub fn pochhammer_scalar(a: &Coefficient, k: i32) -> Option<Coefficient> {
    let one = Coefficient::one();
    let mut acc = Coefficient::one();
    if k >= 0 {
        for j in 1..=k {
            acc = &acc * &(a + &Coefficient::from_int(j as i64));
        }
        if acc.is_zero() {
            return None;
        }
        Some(acc)
    } else {
        let mut d = Coefficient::one();
        for j in 0..(-k) {
            d = &d * &(a - &Coefficient::from_int(j as i64));
        }
        if d.is_zero() {
            None
        } else {
            Some(&one / &d)
        }
    }
}

/// `1/(a+1)_k` for a rational `a`, which is a polynomial product when `k < 0`
/// and vanishes for nonnegative integer `a` once `k <= -a-1`.
pub fn pochhammer_recip_scalar(a: &Coefficient, k: i32) -> Result<Coefficient> {
    if k >= 0 {
        let p = pochhammer_scalar(a, k).ok_or(Error::ZeroFactor)?;
        Ok(p.recip())
    } else {
        let mut d = Coefficient::one();
        for j in 0..(-k) {
            d = &d * &(a - &Coefficient::from_int(j as i64));
        }
        Ok(d)
    }
}

/// `(a+1)_k` for a series `a`.
pub fn pochhammer(a: &FormalSeries, k: i32) -> Result<FormalSeries> {
    if k >= 0 {
        let trunc = a.truncation();
        let mut acc = FormalSeries::one(trunc);
        for j in 1..=k {
            let f = a.try_add(&FormalSeries::constant(trunc, Coefficient::from_int(j as i64)))?;
            acc = acc.try_mul(&f)?;
        }
        Ok(acc)
    } else {
        let r = pochhammer_recip(a, k)?;
        if r.is_zero() {
            return Err(Error::ZeroFactor);
        }
        r.inverse()
    }
}

/// `1/(a+1)_k` for a series `a`.
pub fn pochhammer_recip(a: &FormalSeries, k: i32) -> Result<FormalSeries> {
    let trunc = a.truncation();
    let mut acc = FormalSeries::one(trunc);
    if k >= 0 {
        for j in 1..=k {
            let f = a.try_add(&FormalSeries::constant(trunc, Coefficient::from_int(j as i64)))?;
            if f.is_zero() {
                return Err(Error::ZeroFactor);
            }
            acc = acc.try_mul(&f.inverse()?)?;
        }
    } else {
        for j in 0..(-k) {
            let f = a.try_sub(&FormalSeries::constant(trunc, Coefficient::from_int(j as i64)))?;
            acc = acc.try_mul(&f)?;
        }
    }
    Ok(acc)
}

/// `Σ_k ν(ν-1)⋯(ν-k+1) / ((μ+1)⋯(μ+k)) (-arg)^k`.
pub fn hypergeometric_series(
    nu: &FormalSeries,
    mu: &FormalSeries,
    arg: &FormalSeries,
) -> Result<FormalSeries> {
    let trunc = arg.truncation().clone();
    let neg_arg = arg.neg_ref();
    let pw = powers(&neg_arg)
        .map_err(|_| Error::NotNilpotent("hypergeometric argument has nonpositive valuation".into()))?;
    let mut out = FormalSeries::zero(&trunc);
    let mut ratio = FormalSeries::one(&trunc);
    for (k, p) in pw.iter().enumerate() {
        if k > 0 {
            let kk = Coefficient::from_int(k as i64);
            let num = nu.try_sub(&FormalSeries::constant(&trunc, &kk - &Coefficient::one()))?;
            let den = mu.try_add(&FormalSeries::constant(&trunc, kk))?;
            if den.is_zero() {
                return Err(Error::ZeroFactor);
            }
            ratio = ratio.try_mul(&num)?.try_mul(&den.inverse()?)?;
            if ratio.is_zero() {
                break;
            }
        }
        out = out.try_add(&ratio.try_mul(p)?)?;
    }
    Ok(out)
}

/// Single-variable window used by tests and the CLI.
pub fn single_var(var: &str, order: i32) -> Arc<Truncation> {
    Truncation::local(&[(var, order)]).shared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series::rat;

    #[test]
    fn varsigma_examples() {
        let s = varsigma_series("z", 5).unwrap();
        assert_eq!(s.coeff(&Mono::var(0, 1)), Coefficient::one());
        assert_eq!(s.coeff(&Mono::var(0, 3)), Coefficient::from_ratio(1, 24));
        assert_eq!(s.coeff(&Mono::var(0, 5)), Coefficient::from_ratio(1, 1920));
        let inv = varsigma_inverse_series("z", 3).unwrap();
        assert_eq!(inv.coeff(&Mono::var(0, -1)), Coefficient::one());
        assert_eq!(inv.coeff(&Mono::var(0, 1)), Coefficient::from_ratio(-1, 24));
        assert_eq!(inv.coeff(&Mono::var(0, 3)), Coefficient::from_ratio(7, 5760));
    }

    #[test]
    fn s_power_examples() {
        let trunc = single_var("z", 4);
        let z = FormalSeries::var(&trunc, 0);
        let two = FormalSeries::constant(&trunc, Coefficient::from_int(2));
        let sq = s_power(&z, &two).unwrap();
        assert_eq!(sq.coeff(&Mono::var(0, 2)), Coefficient::from_ratio(1, 12));
        let zero = FormalSeries::zero(&trunc);
        assert_eq!(s_power(&z, &zero).unwrap(), FormalSeries::one(&trunc));
        let uz = FormalSeries::monomial(&trunc, Mono::var(0, 1).with_u(1), Coefficient::one());
        let tz = FormalSeries::monomial(&trunc, Mono::var(0, 1), Coefficient::t());
        let p = s_power(&uz, &tz).unwrap();
        let expected = Coefficient::t_power(rat(1, 24), 1);
        assert_eq!(p.coeff(&Mono::var(0, 3).with_u(2)), expected);
    }

    #[test]
    fn pochhammer_examples() {
        let three = Coefficient::from_int(3);
        assert!(pochhammer_scalar(&three, 0).unwrap().is_one());
        assert_eq!(pochhammer_scalar(&three, 2).unwrap(), Coefficient::from_int(20));
        assert_eq!(pochhammer_scalar(&three, -2).unwrap(), Coefficient::from_ratio(1, 6));
        assert!(pochhammer_recip_scalar(&three, -4).unwrap().is_zero());
        assert!(pochhammer_recip_scalar(&three, -3).unwrap() == Coefficient::from_int(6));
    }

    #[test]
    fn hypergeometric_examples() {
        let trunc = single_var("x", 4);
        let x = FormalSeries::var(&trunc, 0);
        let c = |n: i64| FormalSeries::constant(&trunc, Coefficient::from_int(n));
        let zero = FormalSeries::zero(&trunc);
        assert_eq!(hypergeometric_series(&c(1), &c(0), &zero).unwrap(), c(1));
        assert_eq!(hypergeometric_series(&c(1), &c(0), &x).unwrap().render(), "1; -1 * x");
        let f = hypergeometric_series(&c(2), &c(1), &x).unwrap();
        assert_eq!(f.render(), "1; -1 * x; 1/3 * x^2");
        assert!(hypergeometric_series(&c(1), &c(0), &c(1)).is_err());
    }
}
