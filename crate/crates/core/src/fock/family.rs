//! The operator families `𝒜(a, b) = 𝒮(b)^a Σ_k ς(b)^k/(a+1)_k ℰ_k(b)` and their adjoints.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use super::state::BasisState;
use crate::algebra::special::{
    exp_scaled, pochhammer_recip, pochhammer_recip_scalar, s_integer_power, s_power,
};
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, U_CEIL, U_FLOOR};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyArg {
    /// `𝒜(α z, u z)` with `z` the ambient variable `var`, kept through `z^order`.
    Slot { alpha: Coefficient, var: usize, order: i32 },
    /// The coefficient of `z^power` in `𝒜(α z, u z)`.
    Extracted { alpha: Coefficient, power: i32 },
    /// `𝒜(m, β u m)` for a positive integer `m`.
    Integer { m: u32, beta: Coefficient },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Key {
    k: i32,
    m: i64,
    central: bool,
    u_cap: i32,
}

/// `prefactor · u^{prefactor_u} · 𝒜(a, b)`, or its adjoint when `star`.
pub struct AFamily {
    pub arg: FamilyArg,
    pub prefactor: Coefficient,
    pub prefactor_u: i32,
    pub star: bool,
    cache: Mutex<HashMap<Key, FormalSeries>>,
    s_cache: Mutex<HashMap<i32, FormalSeries>>,
}

impl std::fmt::Debug for AFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AFamily({:?}, {}·u^{}, star={})",
            self.arg, self.prefactor, self.prefactor_u, self.star
        )
    }
}

impl AFamily {
    pub fn new(arg: FamilyArg, prefactor: Coefficient, prefactor_u: i32, star: bool) -> Self {
        AFamily {
            arg,
            prefactor,
            prefactor_u,
            star,
            cache: Mutex::new(HashMap::new()),
            s_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn adjoint(&self) -> AFamily {
        AFamily::new(
            self.arg.clone(),
            self.prefactor.clone(),
            self.prefactor_u,
            !self.star,
        )
    }

    fn own_raise(&self) -> Option<u32> {
        match &self.arg {
            FamilyArg::Slot { alpha, .. } | FamilyArg::Extracted { alpha, .. } => {
                if alpha.is_zero() {
                    Some(0)
                } else {
                    None
                }
            }
            FamilyArg::Integer { m, .. } => Some(*m),
        }
    }

    fn own_lower(&self) -> Option<u32> {
        match &self.arg {
            FamilyArg::Slot { order, .. } => Some((*order).max(0) as u32),
            FamilyArg::Extracted { power, .. } => Some((*power).max(0) as u32),
            FamilyArg::Integer { .. } => None,
        }
    }

    /// Largest increase of `|λ|`.
    pub fn max_raise(&self) -> Option<u32> {
        if self.star {
            self.own_lower()
        } else {
            self.own_raise()
        }
    }

    /// Largest decrease of `|λ|`.
    pub fn max_lower(&self) -> Option<u32> {
        if self.star {
            self.own_raise()
        } else {
            self.own_lower()
        }
    }

    fn needs_u_cap(&self) -> bool {
        matches!(self.arg, FamilyArg::Integer { .. })
    }

    fn var_map(&self) -> Vec<usize> {
        match &self.arg {
            FamilyArg::Slot { var, .. } => vec![*var],
            _ => vec![],
        }
    }

    /// Coefficient series of the transition for `ℰ_k` with exponent `e^{b m/2}`
    /// (or of the central term `e^{b m/2}/ς(b)`), in the family's own window.
    pub fn local_weight(&self, k: i32, m: i64, central: bool, u_cap: i32) -> Result<FormalSeries> {
        let u_cap = if self.needs_u_cap() { u_cap } else { U_CEIL };
        let key = Key {
            k,
            m,
            central,
            u_cap,
        };
        if let Some(s) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = self.compute_weight(k, m, central, u_cap)?;
        self.cache.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn s_alpha(&self, alpha: &Coefficient, padded: i32) -> Result<FormalSeries> {
        if let Some(s) = self.s_cache.lock().unwrap().get(&padded) {
            return Ok(s.clone());
        }
        let t = Truncation::local(&[("z", padded)]).shared();
        let b = FormalSeries::monomial(&t, Mono::var(0, 1).with_u(1), Coefficient::one());
        let a = FormalSeries::monomial(&t, Mono::var(0, 1), alpha.clone());
        let s = s_power(&b, &a)?;
        self.s_cache.lock().unwrap().insert(padded, s.clone());
        Ok(s)
    }

    fn compute_weight(&self, k: i32, m: i64, central: bool, u_cap: i32) -> Result<FormalSeries> {
        let e = if central { -1 } else { k };
        let half_m = BigRational::new(m.into(), 2.into());
        match &self.arg {
            FamilyArg::Slot { alpha, order, .. } | FamilyArg::Extracted { alpha, power: order } => {
                let order = (*order).max(0);
                let out_t = Truncation::local(&[("z", order)]).shared();
                if (!central && k < 0 && alpha.is_zero()) || e > order {
                    return Ok(self.finish(FormalSeries::zero(&out_t)));
                }
                let padded = order - e;
                let t = Truncation::local(&[("z", padded)]).shared();
                let b = FormalSeries::monomial(&t, Mono::var(0, 1).with_u(1), Coefficient::one());
                let a = FormalSeries::monomial(&t, Mono::var(0, 1), alpha.clone());
                let mut reg = self.s_alpha(alpha, padded)?;
                let sk = k - if central { 1 } else { 0 };
                if sk != 0 {
                    reg = reg.try_mul(&s_integer_power(&b, sk)?)?;
                }
                if !central && k != 0 {
                    reg = reg.try_mul(&pochhammer_recip(&a, k)?)?;
                }
                reg = reg.try_mul(&exp_scaled(&b, &half_m)?)?;
                let shift = Mono::var(0, e).with_u(e + self.prefactor_u);
                let mut out = FormalSeries::zero(&out_t);
                for (mm, c) in reg.iter() {
                    out.add_term(mm.times(&shift), c * &self.prefactor);
                }
                Ok(self.finish(out))
            }
            FamilyArg::Integer { m: mu, beta } => {
                let out_t = Truncation::local(&[]).with_u_window(U_FLOOR, u_cap)?.shared();
                let p = if central {
                    Coefficient::one()
                } else {
                    pochhammer_recip_scalar(&Coefficient::from_int(*mu as i64), k)?
                };
                if p.is_zero() {
                    return Ok(FormalSeries::zero(&out_t));
                }
                let shift_u = e + self.prefactor_u;
                let t = Truncation::local(&[])
                    .with_u_window(U_FLOOR, u_cap.saturating_sub(shift_u).min(U_CEIL))?
                    .shared();
                let scale = beta * &Coefficient::from_int(*mu as i64);
                let b = FormalSeries::monomial(&t, Mono::u(1), scale.clone());
                let sk = *mu as i32 + k - if central { 1 } else { 0 };
                let mut reg = s_integer_power(&b, sk)?;
                reg = reg.try_mul(&exp_scaled(&b, &half_m)?)?;
                let c = &(&p * &scale.pow(e)) * &self.prefactor;
                let mut out = FormalSeries::zero(&out_t);
                for (mm, x) in reg.iter() {
                    out.add_term(mm.times(&Mono::u(shift_u)), x * &c);
                }
                Ok(out)
            }
        }
    }

    fn finish(&self, s: FormalSeries) -> FormalSeries {
        match &self.arg {
            FamilyArg::Extracted { power, .. } => {
                let t = Truncation::local(&[]).shared();
                let mut out = FormalSeries::zero(&t);
                for (m, c) in s.iter() {
                    if m.z[0] == *power {
                        out.add_term(Mono { q: m.q, u: m.u, ..Mono::ONE }, c.clone());
                    }
                }
                out
            }
            _ => s,
        }
    }

    /// Transitions out of `s` as `(target, weight)` in the ambient window, raising at most to `out_cap`.
    pub fn action(
        &self,
        s: &BasisState,
        ambient: &Arc<Truncation>,
        out_cap: u32,
        u_cap: i32,
    ) -> Result<Vec<(BasisState, FormalSeries)>> {
        let map = self.var_map();
        let embed = |x: FormalSeries| x.embed(ambient, &map);
        let size = s.size();
        let mut out = Vec::new();
        // diagonal part
        {
            let mut w = embed(self.local_weight(0, 2 * s.charge, true, u_cap)?);
            for (m, mult) in s.diagonal_exponents() {
                let x = embed(self.local_weight(0, m, false, u_cap)?);
                w.add_scaled(&x, &Coefficient::from_int(mult));
            }
            if !w.is_zero() {
                out.push((s.clone(), w));
            }
        }
        let lower = self.max_lower().map_or(size, |l| l.min(size));
        let raise = match self.max_raise() {
            Some(r) => r.min(out_cap.saturating_sub(size)),
            None => out_cap.saturating_sub(size),
        };
        let mut rs: Vec<i32> = (1..=lower as i32).collect();
        rs.extend((1..=raise as i32).map(|r| -r));
        for r in rs {
            let k = if self.star { -r } else { r };
            for (target, sign, m) in s.transitions(r) {
                if target.size() > out_cap {
                    continue;
                }
                let w = embed(self.local_weight(k, m, false, u_cap)?);
                if w.is_zero() {
                    continue;
                }
                let w = if sign < 0 { w.neg_ref() } else { w };
                out.push((target, w));
            }
        }
        Ok(out)
    }
}
