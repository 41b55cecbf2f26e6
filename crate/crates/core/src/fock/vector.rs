//! Sparse series-weighted combinations of basis states.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::state::BasisState;
use crate::algebra::{Coefficient, FormalSeries, Truncation};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    trunc: Arc<Truncation>,
    terms: BTreeMap<BasisState, FormalSeries>,
}

impl FockVector {
    pub fn zero(trunc: &Arc<Truncation>) -> Self {
        FockVector {
            trunc: trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(trunc: &Arc<Truncation>, s: BasisState) -> Self {
        let mut v = FockVector::zero(trunc);
        v.add(s, FormalSeries::one(trunc));
        v
    }

    pub fn vacuum(trunc: &Arc<Truncation>) -> Self {
        FockVector::basis(trunc, BasisState::vacuum())
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<BasisState, FormalSeries> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, &FormalSeries)> {
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

    pub fn get(&self, s: &BasisState) -> FormalSeries {
        self.terms
            .get(s)
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(&self.trunc))
    }

    pub fn add(&mut self, s: BasisState, w: FormalSeries) {
        if w.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(x) => {
                x.add_assign(&w);
                if x.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                let w = if Arc::ptr_eq(w.truncation(), &self.trunc) {
                    w
                } else {
                    let mut z = FormalSeries::zero(&self.trunc);
                    z.add_assign(&w);
                    z
                };
                if !w.is_zero() {
                    self.terms.insert(s, w);
                }
            }
        }
    }

    pub fn add_vector(&mut self, other: &FockVector) {
        for (s, w) in &other.terms {
            self.add(s.clone(), w.clone());
        }
    }

    pub fn scale(&self, c: &Coefficient) -> FockVector {
        let mut out = FockVector::zero(&self.trunc);
        for (s, w) in &self.terms {
            out.add(s.clone(), w.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_vector(&other.scale(&Coefficient::from_int(-1)));
        out
    }

    /// Keeps states satisfying the predicate.
    pub fn retain(&mut self, keep: impl Fn(&BasisState) -> bool) {
        self.terms.retain(|s, _| keep(s));
    }

    pub fn map_weights(&self, f: impl Fn(&FormalSeries) -> FormalSeries) -> FockVector {
        let mut out = FockVector::zero(&self.trunc);
        for (s, w) in &self.terms {
            out.add(s.clone(), f(w));
        }
        out
    }

    /// `(self, other)` in the orthonormal basis.
    pub fn inner_product(&self, other: &FockVector) -> Result<FormalSeries> {
        let mut acc = FormalSeries::zero(&self.trunc);
        for (s, w) in &self.terms {
            if let Some(x) = other.terms.get(s) {
                acc = acc.try_add(&w.try_mul(x)?)?;
            }
        }
        Ok(acc)
    }

    pub fn max_size(&self) -> Option<u32> {
        self.terms.keys().map(|s| s.size()).max()
    }

    /// `P_d`: components with energy exactly `d`.
    pub fn project_energy(&self, d: u32) -> FockVector {
        let mut out = self.clone();
        out.retain(|s| s.twice_energy() == 2 * d as i64);
        out
    }

    /// One `"(partition, charge): series"` line per component.
    pub fn render(&self) -> String {
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(s, w)| format!("{s}: {}", w.render()))
            .collect();
        lines.join("\n")
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector[\n{}\n]", self.render())
    }
}
