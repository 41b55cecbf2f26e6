//! Univariate rational power series and their composition with multivariate arguments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coefficient::Coefficient;
use super::series::FormalSeries;
use crate::error::{Error, Result};

const POWER_GUARD: usize = 4096;

/// `Σ coeffs[k] x^k`, exact through `x^{len-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries1 {
    pub coeffs: Vec<BigRational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl PowerSeries1 {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n.max(1)];
        coeffs[0] = BigRational::one();
        PowerSeries1 { coeffs }
    }

    /// `ς(x)/x = Σ x^{2j} / (4^j (2j+1)!)`.
    pub fn sinh_ratio(n: usize) -> Self {
        let coeffs = (0..n)
            .map(|k| {
                if k % 2 == 1 {
                    BigRational::zero()
                } else {
                    let den = BigInt::from(2).pow(k as u32) * factorial(k + 1);
                    BigRational::new(BigInt::one(), den)
                }
            })
            .collect();
        PowerSeries1 { coeffs }
    }

    /// `e^{c x}`.
    pub fn exp_linear(c: &BigRational, n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n);
        let mut term = BigRational::one();
        for k in 0..n {
            coeffs.push(term.clone());
            term = term * c / BigRational::from_integer((k + 1).into());
        }
        PowerSeries1 { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries1 { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries1 {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `f(k x)`.
    pub fn scale_arg(&self, k: &BigRational) -> Self {
        let mut p = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.len());
        for a in &self.coeffs {
            coeffs.push(a * &p);
            p *= k;
        }
        PowerSeries1 { coeffs }
    }

    /// Reciprocal; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.len();
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::NotInvertible("univariate series with zero constant".into()));
        }
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -s * &inv0;
        }
        Ok(PowerSeries1 { coeffs: out })
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log of series with constant term != 1".into()));
        }
        // (log f)' = f'/f
        let n = self.len();
        let inv = self.inverse()?;
        let deriv = PowerSeries1 {
            coeffs: (1..n)
                .map(|k| &self.coeffs[k] * BigRational::from_integer(k.into()))
                .chain(std::iter::once(BigRational::zero()))
                .collect(),
        };
        let q = deriv.mul(&inv);
        let mut coeffs = vec![BigRational::zero(); n];
        for k in 1..n {
            coeffs[k] = &q.coeffs[k - 1] / BigRational::from_integer(k.into());
        }
        Ok(PowerSeries1 { coeffs })
    }

    /// `exp(f)` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotNilpotent("exp of univariate series with constant".into()));
        }
        let n = self.len();
        // g' = f' g
        let mut g = vec![BigRational::zero(); n];
        g[0] = BigRational::one();
        for k in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += BigRational::from_integer(j.into()) * &self.coeffs[j] * &g[k - j];
                }
            }
            g[k] = s / BigRational::from_integer(k.into());
        }
        Ok(PowerSeries1 { coeffs: g })
    }

    /// `f^e` for integer `e`; requires nonzero constant term when `e < 0`.
    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = PowerSeries1::one(self.len());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// `b^0, b^1, …` up to the last nonzero power.
pub fn powers(b: &FormalSeries) -> Result<Vec<FormalSeries>> {
    if !b.constant_term().is_zero() {
        return Err(Error::NotNilpotent("composition argument has a constant term".into()));
    }
    let trunc = b.truncation();
    let mut out = vec![FormalSeries::one(trunc)];
    if b.is_zero() {
        return Ok(out);
    }
    if b.len() == 1 {
        let (m, c) = b.iter().next().map(|(m, c)| (*m, c.clone())).unwrap();
        if m == super::series::Mono::ONE {
            return Err(Error::NotNilpotent("constant argument".into()));
        }
        let mut pm = super::series::Mono::ONE;
        let mut pc = Coefficient::one();
        for _ in 0..POWER_GUARD {
            pm = pm.times(&m);
            pc = &pc * &c;
            let p = FormalSeries::monomial(trunc, pm, pc.clone());
            if p.is_zero() {
                return Ok(out);
            }
            out.push(p);
        }
        return Err(Error::NotNilpotent("powers of monomial argument do not vanish".into()));
    }
    for _ in 0..POWER_GUARD {
        let p = out.last().unwrap().try_mul(b)?;
        if p.is_zero() {
            return Ok(out);
        }
        out.push(p);
    }
    Err(Error::NotNilpotent("powers of argument do not vanish".into()))
}

/// `Σ f_k b^k` given precomputed powers; `f` must be known through the last power.
pub fn compose(f: &PowerSeries1, pw: &[FormalSeries]) -> Result<FormalSeries> {
    if f.len() < pw.len() {
        return Err(Error::WindowTooSmall(format!(
            "univariate series of length {} composed with {} powers",
            f.len(),
            pw.len()
        )));
    }
    let mut out = FormalSeries::zero(pw[0].truncation());
    for (c, p) in f.coeffs.iter().zip(pw) {
        if !c.is_zero() {
            out.add_scaled(p, &Coefficient::from_rational(c.clone()));
        }
    }
    Ok(out)
}

/// Compose a univariate series built to the needed length by `build`.
pub fn compose_with(
    b: &FormalSeries,
    build: impl FnOnce(usize) -> Result<PowerSeries1>,
) -> Result<FormalSeries> {
    let pw = powers(b)?;
    let f = build(pw.len())?;
    compose(&f, &pw)
}
