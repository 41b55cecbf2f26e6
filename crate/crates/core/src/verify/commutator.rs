//! `[𝒜_k, 𝒜_l] = (-1)^l δ_{k+l,1}` on low-energy states.

use std::sync::Arc;

use crate::algebra::{Coefficient, FormalSeries, Truncation};
use crate::error::Result;
use crate::fock::{apply_ops, AFamily, BasisState, FamilyArg, FockVector, Op};
use crate::partitions::enumerate_partitions;

use super::report::Report;

/// `𝒜_k = [z^k] 𝒜(z, u z)`.
pub fn hodge_coeff(k: i32) -> Op {
    Op::Family(Arc::new(AFamily::new(
        FamilyArg::Extracted {
            alpha: Coefficient::one(),
            power: k,
        },
        Coefficient::one(),
        0,
        false,
    )))
}

/// Neutral basis states with `|λ| ≤ cap`.
pub fn neutral_states(cap: u32) -> Vec<BasisState> {
    (0..=cap)
        .flat_map(enumerate_partitions)
        .map(BasisState::neutral)
        .collect()
}

fn render_matrix(rows: &[(BasisState, FockVector)]) -> String {
    rows.iter()
        .map(|(s, v)| format!("{} -> [{}]", s, v.render().replace('\n', ", ")))
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Matrix of `[𝒜_k, 𝒜_l]` on all neutral states of size at most `energy_cap`.
pub fn commutator_matrix(k: i32, l: i32, energy_cap: u32) -> Result<Vec<(BasisState, FockVector)>> {
    let trunc = Truncation::new(0, -64, 64, &[])?.shared();
    let (ak, al) = (hodge_coeff(k), hodge_coeff(l));
    let mut out = Vec::new();
    for s in neutral_states(energy_cap) {
        let v = FockVector::basis(&trunc, s.clone());
        let kl = apply_ops(&trunc, &[ak.clone(), al.clone()], &v, Some(energy_cap))?;
        let lk = apply_ops(&trunc, &[al.clone(), ak.clone()], &v, Some(energy_cap))?;
        let mut c = kl.sub(&lk);
        c.retain(|t| t.size() <= energy_cap);
        out.push((s, c));
    }
    Ok(out)
}

pub fn check_commutators(k_lo: i32, k_hi: i32, energy_cap: u32) -> Result<Report> {
    let trunc = Truncation::new(0, -64, 64, &[])?.shared();
    let mut report = Report::new();
    for k in k_lo..=k_hi {
        for l in k_lo..=k_hi {
            let actual = commutator_matrix(k, l, energy_cap)?;
            let scalar = if k + l == 1 {
                if l.rem_euclid(2) == 0 { 1 } else { -1 }
            } else {
                0
            };
            let expected: Vec<(BasisState, FockVector)> = neutral_states(energy_cap)
                .into_iter()
                .map(|s| {
                    let mut v = FockVector::zero(&trunc);
                    if scalar != 0 {
                        v.add(s.clone(), FormalSeries::constant(&trunc, Coefficient::from_int(scalar)));
                    }
                    (s, v)
                })
                .collect();
            report.push(
                "commutator",
                format!("k={k} l={l} |lambda|<={energy_cap}"),
                render_matrix(&expected),
                render_matrix(&actual),
            );
        }
    }
    Ok(report)
}
