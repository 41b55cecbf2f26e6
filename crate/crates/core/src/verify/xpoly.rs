//! Polynomials in finitely many insertion variables with series coefficients,
//! kept on a divisor-closed set of exponent vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Coefficient, FormalSeries, Truncation};
use crate::error::Result;

pub type Exponent = Vec<u32>;

/// Which exponent vectors are kept; must be closed under taking divisors.
pub type Support = Arc<dyn Fn(&[u32]) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct XPoly {
    pub nvars: usize,
    pub trunc: Arc<Truncation>,
    pub support: Support,
    pub terms: BTreeMap<Exponent, FormalSeries>,
}

impl std::fmt::Debug for XPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl XPoly {
    pub fn zero(nvars: usize, trunc: &Arc<Truncation>, support: Support) -> Self {
        XPoly {
            nvars,
            trunc: trunc.clone(),
            support,
            terms: BTreeMap::new(),
        }
    }

    fn like(&self) -> XPoly {
        XPoly::zero(self.nvars, &self.trunc, self.support.clone())
    }

    pub fn constant(&self, c: FormalSeries) -> XPoly {
        let mut out = self.like();
        out.add_term(vec![0; self.nvars], c);
        out
    }

    /// Every supported exponent vector with total degree at most `max_deg`.
    pub fn supported_exponents(&self, max_deg: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>, keep: &Support) {
            if i == cur.len() {
                if keep(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                if keep(cur) {
                    rec(i + 1, left - e, cur, out, keep);
                }
            }
            cur[i] = 0;
        }
        rec(0, max_deg, &mut cur, &mut out, &self.support);
        out
    }

    pub fn add_term(&mut self, e: Exponent, c: FormalSeries) {
        if !(self.support)(&e) || c.is_zero() {
            return;
        }
        let c = c.retruncated(&self.trunc);
        match self.terms.get_mut(&e) {
            Some(x) => {
                x.add_assign(&c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> FormalSeries {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(&self.trunc))
    }

    pub fn constant_term(&self) -> FormalSeries {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        self.add(&other.scale(&Coefficient::from_int(-1)))
    }

    pub fn scale(&self, c: &Coefficient) -> XPoly {
        let mut out = self.like();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.scale(c));
        }
        out
    }

    pub fn scale_series(&self, c: &FormalSeries) -> Result<XPoly> {
        let mut out = self.like();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.try_mul(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &XPoly) -> Result<XPoly> {
        let mut out = self.like();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if (self.support)(&e) {
                    out.add_term(e, x.try_mul(y)?);
                }
            }
        }
        Ok(out)
    }

    /// `∂/∂x_var`.
    pub fn derivative(&self, var: usize) -> XPoly {
        let mut out = self.like();
        for (e, x) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, x.scale(&Coefficient::from_int(e[var] as i64)));
            }
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn without_constant(&self) -> XPoly {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.nvars]);
        out
    }

    /// `exp(self)`; the constant term goes through the series exponential.
    pub fn exp(&self) -> Result<XPoly> {
        let c = self.constant_term().exp()?;
        let x = self.without_constant();
        let mut acc = self.constant(FormalSeries::one(&self.trunc));
        let mut power = acc.clone();
        for n in 1.. {
            power = power.mul(&x)?.scale(&Coefficient::from_ratio(1, n as i64));
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        acc.scale_series(&c)
    }

    /// `log(self)` for a polynomial whose constant term is `1 + (nilpotent series)`.
    pub fn log(&self) -> Result<XPoly> {
        let c = self.constant_term();
        let c_inv = c.inverse()?;
        let one = FormalSeries::one(&self.trunc);
        let log_c = c.try_sub(&one)?.log1p()?;
        let x = self.without_constant().scale_series(&c_inv)?;
        let mut acc = self.constant(log_c);
        let mut power = self.constant(one);
        for n in 1.. {
            power = power.mul(&x)?;
            if power.terms.is_empty() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Coefficient::from_ratio(sign, n as i64)));
        }
        Ok(acc)
    }

    pub fn retruncated(&self, trunc: &Arc<Truncation>) -> XPoly {
        let mut out = XPoly::zero(self.nvars, trunc, self.support.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.retruncated(trunc));
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> XPoly {
        let mut out = self.like();
        for (e, x) in &self.terms {
            if keep(e) {
                out.add_term(e.clone(), x.clone());
            }
        }
        out
    }
}
