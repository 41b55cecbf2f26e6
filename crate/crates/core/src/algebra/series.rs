//! Sparse truncated series in `q`, `u^{±1}` and Laurent variables `z_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::coefficient::Coefficient;
use super::truncation::{Truncation, MAX_VARS};
use crate::error::{Error, Result};

const ITERATION_GUARD: usize = 4096;

/// Exponent vector `q^q u^u z_1^{z[0]} ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub q: u32,
    pub u: i32,
    pub z: [i32; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono {
        q: 0,
        u: 0,
        z: [0; MAX_VARS],
    };

    pub fn q(q: u32) -> Mono {
        Mono { q, ..Mono::ONE }
    }

    pub fn u(u: i32) -> Mono {
        Mono { u, ..Mono::ONE }
    }

    pub fn var(i: usize, e: i32) -> Mono {
        let mut m = Mono::ONE;
        m.z[i] = e;
        m
    }

    pub fn with_var(mut self, i: usize, e: i32) -> Mono {
        self.z[i] = e;
        self
    }

    pub fn with_u(mut self, u: i32) -> Mono {
        self.u = u;
        self
    }

    pub fn times(&self, other: &Mono) -> Mono {
        let mut z = self.z;
        for (a, b) in z.iter_mut().zip(other.z.iter()) {
            *a += b;
        }
        Mono {
            q: self.q + other.q,
            u: self.u + other.u,
            z,
        }
    }

    pub fn inverse(&self) -> Mono {
        let mut z = self.z;
        for a in z.iter_mut() {
            *a = -*a;
        }
        Mono {
            q: 0,
            u: -self.u,
            z,
        }
    }

    fn z_key(&self) -> (u32, [i32; MAX_VARS]) {
        (self.q, self.z)
    }
}

#[derive(Clone)]
pub struct FormalSeries {
    trunc: Arc<Truncation>,
    terms: BTreeMap<Mono, Coefficient>,
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSeries[{}]", self.render())
    }
}

impl PartialEq for FormalSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc.vars == other.trunc.vars && self.terms == other.terms
    }
}

impl Eq for FormalSeries {}

impl FormalSeries {
    pub fn zero(trunc: &Arc<Truncation>) -> Self {
        FormalSeries {
            trunc: trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: &Arc<Truncation>) -> Self {
        FormalSeries::constant(trunc, Coefficient::one())
    }

    pub fn constant(trunc: &Arc<Truncation>, c: Coefficient) -> Self {
        FormalSeries::monomial(trunc, Mono::ONE, c)
    }

    pub fn monomial(trunc: &Arc<Truncation>, m: Mono, c: Coefficient) -> Self {
        let mut s = FormalSeries::zero(trunc);
        s.add_term(m, c);
        s
    }

    /// The formal variable with index `i`.
    pub fn var(trunc: &Arc<Truncation>, i: usize) -> Self {
        FormalSeries::monomial(trunc, Mono::var(i, 1), Coefficient::one())
    }

    pub fn from_terms(
        trunc: &Arc<Truncation>,
        terms: impl IntoIterator<Item = (Mono, Coefficient)>,
    ) -> Self {
        let mut s = FormalSeries::zero(trunc);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Coefficient> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn in_window(&self, m: &Mono) -> bool {
        in_window(&self.trunc, m)
    }

    /// Adds `c * m`, discarding it when outside the window.
    pub fn add_term(&mut self, m: Mono, c: Coefficient) {
        if c.is_zero() || !self.in_window(&m) {
            return;
        }
        add_into(&mut self.terms, m, c);
    }

    pub fn coeff(&self, m: &Mono) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coeff(&Mono::ONE)
    }

    fn check_vars(&self, other: &FormalSeries) -> Result<Arc<Truncation>> {
        if Arc::ptr_eq(&self.trunc, &other.trunc) || *self.trunc == *other.trunc {
            return Ok(self.trunc.clone());
        }
        Ok(Arc::new(self.trunc.intersect(&other.trunc)?))
    }

    pub fn try_add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        let trunc = self.check_vars(other)?;
        let mut out = self.retruncated(&trunc);
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        let trunc = self.check_vars(other)?;
        let mut acc: BTreeMap<Mono, Coefficient> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.times(mb);
                if in_window(&trunc, &m) {
                    add_into(&mut acc, m, ca * cb);
                }
            }
        }
        Ok(FormalSeries { trunc, terms: acc })
    }

    /// `self += c * other`, inside `self`'s window.
    pub fn add_scaled(&mut self, other: &FormalSeries, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            if self.in_window(m) {
                let v = if c.is_one() { a.clone() } else { a * c };
                add_into(&mut self.terms, *m, v);
            }
        }
    }

    /// `self += other`, inside `self`'s window.
    pub fn add_assign(&mut self, other: &FormalSeries) {
        self.add_scaled(other, &Coefficient::one());
    }

    pub fn neg_ref(&self) -> FormalSeries {
        FormalSeries {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> FormalSeries {
        if c.is_zero() {
            return FormalSeries::zero(&self.trunc);
        }
        if c.is_one() {
            return self.clone();
        }
        FormalSeries {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> FormalSeries {
        self.scale(&Coefficient::from_int(n))
    }

    /// Multiply by `c * m`.
    pub fn mul_term(&self, m: &Mono, c: &Coefficient) -> FormalSeries {
        let mut out = FormalSeries::zero(&self.trunc);
        for (a, x) in &self.terms {
            out.add_term(a.times(m), if c.is_one() { x.clone() } else { x * c });
        }
        out
    }

    /// Same terms in another window with the same variables.
    pub fn retruncated(&self, trunc: &Arc<Truncation>) -> FormalSeries {
        debug_assert_eq!(self.trunc.vars, trunc.vars);
        FormalSeries {
            trunc: trunc.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| in_window(trunc, m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Narrow to a window; variable names must match.
    pub fn narrow(&self, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
        if self.trunc.vars != trunc.vars {
            return Err(Error::IncompatibleVariables(
                self.trunc.vars.clone(),
                trunc.vars.clone(),
            ));
        }
        Ok(self.retruncated(trunc))
    }

    /// Drops terms with u-exponent above `u_hi`.
    pub fn cap_u(&mut self, u_hi: i32) {
        self.terms.retain(|m, _| m.u <= u_hi);
    }

    /// Re-homes the series in `target`, sending variable `i` to `var_map[i]`.
    pub fn embed(&self, target: &Arc<Truncation>, var_map: &[usize]) -> FormalSeries {
        let mut out = FormalSeries::zero(target);
        for (m, c) in &self.terms {
            let mut z = [0; MAX_VARS];
            for (i, &e) in m.z.iter().take(self.trunc.nvars()).enumerate() {
                if e != 0 {
                    z[var_map[i]] += e;
                }
            }
            out.add_term(Mono { q: m.q, u: m.u, z }, c.clone());
        }
        out
    }

    /// Coefficient of `var^e` as a series with that variable removed (set to exponent 0).
    pub fn extract_var(&self, var: usize, e: i32) -> FormalSeries {
        let mut out = FormalSeries::zero(&self.trunc);
        for (m, c) in &self.terms {
            if m.z[var] == e {
                let mut m2 = *m;
                m2.z[var] = 0;
                add_into(&mut out.terms, m2, c.clone());
            }
        }
        out
    }

    /// Coefficient of `q^d`, as a series with q-exponent 0.
    pub fn extract_q(&self, d: u32) -> FormalSeries {
        FormalSeries {
            trunc: self.trunc.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q == d)
                .map(|(m, c)| (Mono { q: 0, ..*m }, c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> FormalSeries {
        let mut out = FormalSeries::zero(&self.trunc);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn map_monomials(&self, f: impl Fn(&Mono) -> Option<Mono>) -> FormalSeries {
        let mut out = FormalSeries::zero(&self.trunc);
        for (m, c) in &self.terms {
            if let Some(m2) = f(m) {
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Substitute `t -> -t` in every coefficient.
    pub fn negate_t(&self) -> FormalSeries {
        self.map_coefficients(|c| c.negate_t())
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> FormalSeries {
        FormalSeries {
            trunc: self.trunc.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn min_u(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.u).min()
    }

    pub fn max_u(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.u).max()
    }

    /// Lowest exponent of variable `i`.
    pub fn valuation(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.z[i]).min()
    }

    pub fn pow(&self, n: i32) -> Result<FormalSeries> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = FormalSeries::one(&self.trunc);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse in the iterated Laurent ring, outer variable first.
    pub fn inverse(&self) -> Result<FormalSeries> {
        let lead_key = self
            .terms
            .keys()
            .map(Mono::z_key)
            .min()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let leads: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.z_key() == lead_key)
            .collect();
        if leads.len() != 1 || lead_key.0 != 0 {
            return Err(Error::NotInvertible(format!(
                "leading part has {} terms",
                leads.len()
            )));
        }
        let (lm, lc) = (*leads[0].0, leads[0].1.clone());
        let inv_m = lm.inverse();
        let inv_c = lc.recip();
        // self = lc * lm * (1 + g)
        let mut g = FormalSeries::zero(&self.trunc);
        for (m, c) in &self.terms {
            if *m != lm {
                add_into(&mut g.terms, m.times(&inv_m), c * &inv_c);
            }
        }
        // the geometric series lives in a window shifted by the leading monomial
        let mut shifted = (*self.trunc).clone();
        for (o, e) in shifted.z_orders.iter_mut().zip(lm.z.iter()) {
            *o = o.saturating_add(*e).max(-(1 << 20));
        }
        shifted.u_lo = super::truncation::U_FLOOR;
        shifted.u_hi = self.trunc.u_hi.saturating_add(lm.u);
        let shifted = Arc::new(shifted);
        let neg_g = g.neg_ref().retruncated_unchecked(&shifted);
        let mut sum = FormalSeries::one(&shifted);
        let mut power = sum.clone();
        let mut done = false;
        for _ in 0..ITERATION_GUARD {
            power = power.try_mul(&neg_g)?;
            if power.is_zero() {
                done = true;
                break;
            }
            sum.add_assign(&power);
        }
        if !done {
            return Err(Error::NotInvertible("geometric series did not terminate".into()));
        }
        let mut out = FormalSeries::zero(&self.trunc);
        for (m, c) in &sum.terms {
            out.add_term(m.times(&inv_m), c * &inv_c);
        }
        Ok(out)
    }

    fn retruncated_unchecked(&self, trunc: &Arc<Truncation>) -> FormalSeries {
        let mut out = FormalSeries::zero(trunc);
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent(format!("{what} of series with constant term")));
        }
        Ok(())
    }

    /// `exp(self)` for a series with no constant term whose powers vanish.
    pub fn exp(&self) -> Result<FormalSeries> {
        self.require_no_constant("exp")?;
        let mut sum = FormalSeries::one(&self.trunc);
        let mut power = sum.clone();
        for n in 1..ITERATION_GUARD {
            power = power.try_mul(self)?.scale(&Coefficient::from_ratio(1, n as i64));
            if power.is_zero() {
                return Ok(sum);
            }
            sum.add_assign(&power);
        }
        Err(Error::NotNilpotent("exp did not terminate".into()))
    }

    /// `log(1 + self)` for a series with no constant term whose powers vanish.
    pub fn log1p(&self) -> Result<FormalSeries> {
        self.require_no_constant("log1p")?;
        let mut sum = FormalSeries::zero(&self.trunc);
        let mut power = FormalSeries::one(&self.trunc);
        for n in 1..ITERATION_GUARD {
            power = power.try_mul(self)?;
            if power.is_zero() {
                return Ok(sum);
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            sum.add_scaled(&power, &Coefficient::from_ratio(sign, n as i64));
        }
        Err(Error::NotNilpotent("log1p did not terminate".into()))
    }

    /// Terms with u-exponent inside `[u_lo, u_hi]` only.
    pub fn u_window(&self, u_lo: i32, u_hi: i32) -> FormalSeries {
        self.filter(|m| m.u >= u_lo && m.u <= u_hi)
    }

    /// Sum of coefficients over u at `u = 1` (u-exponent collapsed to 0).
    pub fn at_u_one(&self) -> FormalSeries {
        let mut out = FormalSeries::zero(&self.trunc);
        for (m, c) in &self.terms {
            add_into(&mut out.terms, Mono { u: 0, ..*m }, c.clone());
        }
        out
    }

    /// Canonical rendering, monomials in increasing order separated by `"; "`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| render_term(&self.trunc, m, c))
            .collect();
        parts.join("; ")
    }
}

fn z_ok(t: &Truncation, m: &Mono) -> bool {
    t.z_orders.iter().zip(m.z.iter()).all(|(o, e)| e <= o)
}

pub(crate) fn in_window(t: &Truncation, m: &Mono) -> bool {
    m.q <= t.q_max && m.u >= t.u_lo && m.u <= t.u_hi && z_ok(t, m)
}

fn add_into(map: &mut BTreeMap<Mono, Coefficient>, m: Mono, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn render_term(t: &Truncation, m: &Mono, c: &Coefficient) -> String {
    let mut factors = Vec::new();
    if m.q != 0 {
        factors.push(if m.q == 1 { "q".to_string() } else { format!("q^{}", m.q) });
    }
    if m.u != 0 {
        factors.push(if m.u == 1 { "u".to_string() } else { format!("u^{}", m.u) });
    }
    for (i, name) in t.vars.iter().enumerate() {
        let e = m.z[i];
        if e != 0 {
            factors.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
        }
    }
    if factors.is_empty() {
        c.render()
    } else {
        format!("{} * {}", c.render(), factors.join(" "))
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_add(rhs).expect("series addition")
    }
}

impl<'a> Sub<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl<'a> Mul<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        self.neg_ref()
    }
}

/// Rational constant helper.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// True when every coefficient is zero after subtraction.
pub fn series_equal(a: &FormalSeries, b: &FormalSeries) -> bool {
    a.terms == b.terms
}

/// Sum of `c_i * s_i` in the window of `trunc`.
pub fn linear_combination<'a>(
    trunc: &Arc<Truncation>,
    items: impl IntoIterator<Item = (&'a FormalSeries, Coefficient)>,
) -> FormalSeries {
    let mut out = FormalSeries::zero(trunc);
    for (s, c) in items {
        out.add_scaled(s, &c);
    }
    out
}

impl Zero for Mono {
    fn zero() -> Self {
        Mono::ONE
    }
    fn is_zero(&self) -> bool {
        *self == Mono::ONE
    }
}

impl Add for Mono {
    type Output = Mono;
    fn add(self, rhs: Mono) -> Mono {
        self.times(&rhs)
    }
}
