//! Evaluation of operator words with exact pruning.

use std::sync::Arc;

use num_rational::BigRational;

use super::ops::{ApplyCtx, Op};
use super::vector::FockVector;
use crate::algebra::{FormalSeries, Truncation, U_CEIL, U_FLOOR};
use crate::error::{Error, Result};

/// Largest `|λ|` any intermediate state may reach before the evaluator gives up.
pub const SIZE_GUARD: u32 = 40;

/// Internal window: same variables and q, unbounded u.
pub fn working_truncation(trunc: &Truncation) -> Arc<Truncation> {
    let mut t = trunc.clone();
    t.u_lo = U_FLOOR;
    t.u_hi = U_CEIL;
    Arc::new(t)
}

/// Per-operator output caps `(size, u)` for `ops` (leftmost first) applied to
/// a ket of size at most `ket_max`, paired with a bra of size at most `target_max`.
pub fn plan(
    trunc: &Truncation,
    ops: &[Op],
    ket_max: u32,
    target_max: Option<u32>,
) -> Result<Vec<(u32, i32)>> {
    let n = ops.len();
    let q_max = trunc.q_max;
    // backward: cap on the output of op j from the ops to its left
    let mut back: Vec<Option<u32>> = vec![None; n];
    let mut cap = target_max;
    for j in 0..n {
        back[j] = cap;
        let lifted = match (cap, ops[j].max_lower()) {
            (Some(c), Some(l)) => Some(c + l),
            _ => None,
        };
        cap = match (lifted, ops[j].size_filter(q_max)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    // forward: cap on the output of op j from the ket and the ops to its right
    let mut fwd: Vec<Option<u32>> = vec![None; n];
    let mut cap = Some(ket_max);
    for j in (0..n).rev() {
        cap = match (cap, ops[j].max_raise()) {
            (Some(c), Some(r)) => Some(c + r),
            _ => None,
        };
        fwd[j] = cap;
    }
    let mut sizes = Vec::with_capacity(n);
    for j in 0..n {
        let size = [back[j], fwd[j], ops[j].size_filter(q_max)]
            .into_iter()
            .flatten()
            .min()
            .ok_or(Error::UnboundedEnergy(j))?;
        if size > SIZE_GUARD {
            return Err(Error::EnergyCapExceeded(
                size as i64,
                format!("size guard {SIZE_GUARD} at operator {j}"),
            ));
        }
        sizes.push(size);
    }
    let mut slack: Option<i32> = target_max.map(|t| t as i32);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let u = slack.map_or(U_CEIL, |s| trunc.u_hi.saturating_add(s).min(U_CEIL));
        out.push((sizes[j], u));
        let in_cap = if j + 1 < n { sizes[j + 1] } else { ket_max };
        slack = match (slack, ops[j].u_slack(q_max, in_cap)) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    Ok(out)
}

/// Smallest energy cap that makes the evaluation of `ops` on the vacuum lossless.
pub fn auto_energy_cap(trunc: &Truncation, ops: &[Op]) -> Result<BigRational> {
    let caps = plan(trunc, ops, 0, Some(0))?;
    let m = caps.iter().map(|c| c.0).max().unwrap_or(0).max(trunc.q_max);
    Ok(BigRational::from_integer(m.into()))
}

/// `ops[0] ⋯ ops[n-1] v`, keeping only what can survive a pairing with
/// states of size at most `target_max`.
pub fn apply_ops(
    trunc: &Truncation,
    ops: &[Op],
    v: &FockVector,
    target_max: Option<u32>,
) -> Result<FockVector> {
    let work = working_truncation(trunc);
    let caps = plan(trunc, ops, v.max_size().unwrap_or(0), target_max)?;
    let mut cur = FockVector::zero(&work);
    cur.add_vector(v);
    for j in (0..ops.len()).rev() {
        let ctx = ApplyCtx {
            trunc: work.clone(),
            out_cap: caps[j].0,
            u_cap: caps[j].1,
        };
        cur = ops[j].apply(&cur, &ctx)?;
        if cur.is_zero() {
            break;
        }
    }
    Ok(cur)
}

/// `(bra, ops ket)` narrowed to `trunc`.
pub fn matrix_element(
    trunc: &Arc<Truncation>,
    bra: &FockVector,
    ops: &[Op],
    ket: &FockVector,
) -> Result<FormalSeries> {
    let v = apply_ops(trunc, ops, ket, Some(bra.max_size().unwrap_or(0)))?;
    let mut b = FockVector::zero(v.truncation());
    b.add_vector(bra);
    Ok(b.inner_product(&v)?.retruncated(trunc))
}

/// `⟨ops⟩`, the neutral vacuum expectation.
pub fn vacuum_expectation(trunc: &Arc<Truncation>, ops: &[Op]) -> Result<FormalSeries> {
    let work = working_truncation(trunc);
    let vac = FockVector::vacuum(&work);
    matrix_element(trunc, &vac, ops, &vac)
}
