//! Finite windows attached to series values.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Maximum number of formal z/w variables in one series.
pub const MAX_VARS: usize = 6;

/// Effectively unbounded u-exponents for internal computations.
pub const U_FLOOR: i32 = -(1 << 20);
pub const U_CEIL: i32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub q_max: u32,
    pub u_lo: i32,
    pub u_hi: i32,
    pub vars: Vec<String>,
    pub z_orders: Vec<i32>,
    pub energy_cap: BigRational,
}

#[derive(Serialize)]
struct TruncationView<'a> {
    q_max: u32,
    u_lo: i32,
    u_hi: i32,
    vars: &'a [String],
    z_orders: &'a [i32],
    energy_cap: String,
}

impl Truncation {
    pub fn new(q_max: u32, u_lo: i32, u_hi: i32, vars: &[(&str, i32)]) -> Result<Self> {
        let t = Truncation {
            q_max,
            u_lo,
            u_hi,
            vars: vars.iter().map(|(n, _)| n.to_string()).collect(),
            z_orders: vars.iter().map(|(_, o)| *o).collect(),
            energy_cap: BigRational::from_integer(q_max.into()),
        };
        t.validate()?;
        Ok(t)
    }

    /// No q, unbounded u, the given variables.
    pub fn local(vars: &[(&str, i32)]) -> Self {
        Truncation::new(0, U_FLOOR, U_CEIL, vars).expect("valid local truncation")
    }

    pub fn with_energy_cap(mut self, cap: BigRational) -> Result<Self> {
        self.energy_cap = cap;
        self.validate()?;
        Ok(self)
    }

    pub fn with_u_window(mut self, u_lo: i32, u_hi: i32) -> Result<Self> {
        self.u_lo = u_lo;
        self.u_hi = u_hi;
        self.validate()?;
        Ok(self)
    }

    pub fn with_q_max(mut self, q_max: u32) -> Self {
        self.q_max = q_max;
        if self.energy_cap < BigRational::from_integer(q_max.into()) {
            self.energy_cap = BigRational::from_integer(q_max.into());
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.u_lo > self.u_hi {
            return Err(Error::InvalidTruncation(format!(
                "u_lo {} > u_hi {}",
                self.u_lo, self.u_hi
            )));
        }
        if self.vars.len() > MAX_VARS {
            return Err(Error::InvalidTruncation(format!(
                "{} variables, at most {MAX_VARS} supported",
                self.vars.len()
            )));
        }
        if self.z_orders.iter().any(|&o| o < 0) {
            return Err(Error::InvalidTruncation("negative z-order".into()));
        }
        if self.energy_cap < BigRational::from_integer(self.q_max.into())
            || self.energy_cap < BigRational::zero()
        {
            return Err(Error::InvalidTruncation("energy_cap below q_max".into()));
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Componentwise intersection; variable names must agree.
    pub fn intersect(&self, other: &Truncation) -> Result<Truncation> {
        if self.vars != other.vars {
            return Err(Error::IncompatibleVariables(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(Truncation {
            q_max: self.q_max.min(other.q_max),
            u_lo: self.u_lo.max(other.u_lo),
            u_hi: self.u_hi.min(other.u_hi),
            vars: self.vars.clone(),
            z_orders: self
                .z_orders
                .iter()
                .zip(&other.z_orders)
                .map(|(a, b)| *a.min(b))
                .collect(),
            energy_cap: self.energy_cap.clone().min(other.energy_cap.clone()),
        })
    }

    pub fn shared(self) -> Arc<Truncation> {
        Arc::new(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TruncationView {
            q_max: self.q_max,
            u_lo: self.u_lo,
            u_hi: self.u_hi,
            vars: &self.vars,
            z_orders: &self.z_orders,
            energy_cap: self.energy_cap.to_string(),
        })
        .expect("serializable truncation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_narrows() {
        let a = Truncation::new(2, -8, 2, &[("z1", 3)]).unwrap();
        let b = Truncation::new(1, -4, 4, &[("z1", 5)]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!((c.q_max, c.u_lo, c.u_hi, c.z_orders[0]), (1, -4, 2, 3));
        let d = Truncation::new(1, -4, 4, &[("w1", 5)]).unwrap();
        assert!(a.intersect(&d).is_err());
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(Truncation::new(0, 3, 2, &[]).is_err());
        assert!(Truncation::new(0, 0, 2, &[("z", -1)]).is_err());
    }
}
