//! Hodge-integral n-point functions, Hurwitz numbers and the ELSV bridge between them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::special::{
    pochhammer_recip, s_power, varsigma_inverse, varsigma_power, varsigma_ratio,
};
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, U_FLOOR};
use crate::error::{Error, Result};
use crate::fock::{vacuum_expectation, AFamily, FamilyArg, Op};
use crate::partitions::{factorial, Partition};

/// `u^{prefactor_u} 𝒜(α z, u z)` in slot `var`, kept through `z^order`.
pub fn slot_family(alpha: Coefficient, var: usize, order: i32, prefactor_u: i32, star: bool) -> Op {
    Op::Family(Arc::new(AFamily::new(
        FamilyArg::Slot { alpha, var, order },
        Coefficient::one(),
        prefactor_u,
        star,
    )))
}

/// `u^{prefactor_u} 𝒜(m, β u m)`.
pub fn integer_family(m: u32, beta: Coefficient, prefactor_u: i32) -> Op {
    Op::Family(Arc::new(AFamily::new(
        FamilyArg::Integer { m, beta },
        Coefficient::one(),
        prefactor_u,
        false,
    )))
}

/// Set partitions of the bits of `mask`, each block as a sub-mask.
pub fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![vec![]];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // every sub-mask of `rest` joins `low` in its block
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut p in set_partitions(rest & !sub) {
            p.insert(0, block);
            out.push(p);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// An n-point family: one series per subset of the variables, keyed by bit mask.
pub type PointFamily = BTreeMap<u32, FormalSeries>;

fn block_product(family: &PointFamily, blocks: &[u32], trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut acc = FormalSeries::one(trunc);
    for b in blocks {
        let x = family
            .get(b)
            .ok_or_else(|| Error::MissingData(bits(*b)))?;
        acc = acc.try_mul(x)?;
    }
    Ok(acc)
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Disconnected functions from connected ones: `H(S) = Σ_{P ∈ Part(S)} ∏ H°(P_i)`.
pub fn disconnected_from_connected(connected: &PointFamily, n: usize, trunc: &Arc<Truncation>) -> Result<PointFamily> {
    let mut out = PointFamily::new();
    for mask in 1u32..(1 << n) {
        let mut acc = FormalSeries::zero(trunc);
        for p in set_partitions(mask) {
            acc = acc.try_add(&block_product(connected, &p, trunc)?)?;
        }
        out.insert(mask, acc);
    }
    out.insert(0, FormalSeries::one(trunc));
    Ok(out)
}

/// Connected functions from disconnected ones by Möbius inversion.
pub fn connected_from_disconnected(disconnected: &PointFamily, n: usize, trunc: &Arc<Truncation>) -> Result<PointFamily> {
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut out = PointFamily::new();
    for mask in masks {
        let mut acc = disconnected
            .get(&mask)
            .ok_or_else(|| Error::MissingData(bits(mask)))?
            .clone();
        for p in set_partitions(mask) {
            if p.len() < 2 {
                continue;
            }
            acc = acc.try_sub(&block_product(&out, &p, trunc)?)?;
        }
        out.insert(mask, acc);
    }
    out.insert(0, FormalSeries::zero(trunc));
    Ok(out)
}

fn sub_truncation(trunc: &Truncation, mask: u32, u_hi: i32) -> Result<(Arc<Truncation>, Vec<usize>)> {
    let idx = bits(mask);
    let vars: Vec<(&str, i32)> = idx
        .iter()
        .map(|&i| (trunc.vars[i].as_str(), trunc.z_orders[i]))
        .collect();
    let t = Truncation::new(trunc.q_max, U_FLOOR, u_hi, &vars)?.shared();
    Ok((t, idx))
}

/// `H(z_1, …, z_n, u) = u^{-n} ⟨𝒜(z_1, u z_1) ⋯ 𝒜(z_n, u z_n)⟩` over all variables of `trunc`.
pub fn hodge_npoint(trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let ops: Vec<Op> = (0..trunc.nvars())
        .map(|i| slot_family(Coefficient::one(), i, trunc.z_orders[i], -1, false))
        .collect();
    vacuum_expectation(trunc, &ops)
}

/// Disconnected and connected families over every subset of the variables.
pub fn hodge_families(trunc: &Arc<Truncation>) -> Result<(PointFamily, PointFamily)> {
    let n = trunc.nvars();
    let u_hi = trunc.u_hi + 2 * (n as i32 - 1).max(0);
    let wide = Arc::new(Truncation { u_lo: U_FLOOR, u_hi, ..(**trunc).clone() });
    let mut disc = PointFamily::new();
    disc.insert(0, FormalSeries::one(&wide));
    for mask in 1u32..(1 << n) {
        let (sub, idx) = sub_truncation(trunc, mask, u_hi)?;
        disc.insert(mask, hodge_npoint(&sub)?.embed(&wide, &idx));
    }
    let conn = connected_from_disconnected(&disc, n, &wide)?;
    let narrow = |f: &PointFamily| -> PointFamily {
        f.iter().map(|(k, v)| (*k, v.retruncated(trunc))).collect()
    };
    Ok((narrow(&disc), narrow(&conn)))
}

/// `H°(z_1, …, z_n, u)` over all variables of `trunc`.
pub fn hodge_connected(trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let n = trunc.nvars();
    let (_, conn) = hodge_families(trunc)?;
    Ok(conn[&((1u32 << n) - 1)].clone())
}

/// Number of simple branch points `b = 2g + |μ| + ℓ(μ) - 2`, if nonnegative.
pub fn branch_count(g: i64, mu: &Partition) -> Option<u32> {
    let b = 2 * g + mu.size() as i64 + mu.len() as i64 - 2;
    u32::try_from(b).ok()
}

/// `C_g(μ) = (1/𝔷(μ)) ⟨e^{α_1} ℱ₂^b ∏ α_{-μ_i}⟩`; zero when there are no covers.
pub fn hurwitz_character(g: i64, mu: &Partition) -> Result<BigRational> {
    let Some(b) = branch_count(g, mu) else {
        return Ok(BigRational::zero());
    };
    let trunc = Truncation::local(&[]).shared();
    let mut ops = vec![Op::ExpAlpha(1), Op::F2Power(b)];
    ops.extend(mu.parts().iter().map(|&m| Op::Alpha(-(m as i32))));
    let x = vacuum_expectation(&trunc, &ops)?;
    let c = x
        .constant_term()
        .as_rational()
        .ok_or_else(|| Error::NonPolynomial("Hurwitz number".into()))?;
    Ok(c / BigRational::from_integer(mu.z_mu()))
}

fn cycle_type(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    permute(&mut cur, 0, &mut out);
    out
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Brute-force count of `(σ, τ_1, …, τ_b)` with `σ` of type `μ`, `τ_i` transpositions
/// and `τ_b ⋯ τ_1 σ = 1`, divided by `|μ|!`.
pub fn hurwitz_oracle(g: i64, mu: &Partition) -> Result<BigRational> {
    let n = mu.size() as usize;
    let Some(b) = branch_count(g, mu) else {
        return Ok(BigRational::zero());
    };
    if n > 6 || b > 8 {
        return Err(Error::BoundsExceeded(format!("|mu| = {n}, b = {b}")));
    }
    let mut counts: HashMap<Vec<u8>, BigInt> = HashMap::new();
    for p in all_permutations(n) {
        if cycle_type(&p) == mu.parts() {
            counts.insert(p, BigInt::one());
        }
    }
    let transpositions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for _ in 0..b {
        let mut next: HashMap<Vec<u8>, BigInt> = HashMap::new();
        for (p, c) in &counts {
            for &(i, j) in &transpositions {
                // left multiplication by (i j) relabels values i and j
                let q: Vec<u8> = p
                    .iter()
                    .map(|&x| {
                        if x as usize == i {
                            j as u8
                        } else if x as usize == j {
                            i as u8
                        } else {
                            x
                        }
                    })
                    .collect();
                *next.entry(q).or_insert_with(BigInt::zero) += c;
            }
        }
        counts = next;
    }
    let id: Vec<u8> = (0..n as u8).collect();
    let hits = counts.get(&id).cloned().unwrap_or_else(BigInt::zero);
    Ok(BigRational::new(hits, factorial(n as u32)))
}

fn elsv_factor(mu: &Partition) -> BigRational {
    let mut f = BigRational::one();
    for &m in mu.parts() {
        let mm = BigInt::from(m).pow(m);
        f *= BigRational::new(mm, factorial(m));
    }
    f
}

/// `H_g(μ)` from `C_g(μ) = b!/𝔷(μ) ∏ μ_i^{μ_i}/μ_i! · H_g(μ)`.
pub fn elsv_hodge(g: i64, mu: &Partition) -> Result<BigRational> {
    let Some(b) = branch_count(g, mu) else {
        return Ok(BigRational::zero());
    };
    let c = hurwitz_character(g, mu)?;
    let scale = BigRational::new(factorial(b), mu.z_mu()) * elsv_factor(mu);
    Ok(c / scale)
}

/// `u^{-ℓ(μ)} ⟨∏ 𝒜(μ_i, u μ_i)⟩` in the u-window of `trunc`.
pub fn hodge_at_integers(mu: &Partition, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let ops: Vec<Op> = mu
        .parts()
        .iter()
        .map(|&m| integer_family(m, Coefficient::one(), -1))
        .collect();
    vacuum_expectation(trunc, &ops)
}

/// `Σ_g u^{2g-2} H_g(μ)` from the character route, over the u-window of `trunc`.
pub fn hodge_at_integers_elsv(mu: &Partition, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut out = FormalSeries::zero(trunc);
    let lo = trunc.u_lo.max(-2 * mu.len() as i32 - 2);
    for e in lo..=trunc.u_hi {
        if e % 2 != 0 {
            continue;
        }
        let g = (e as i64 + 2) / 2;
        let h = elsv_hodge(g, mu)?;
        out.add_term(Mono::u(e), Coefficient::from_rational(h));
    }
    Ok(out)
}

/// The connected two-point function from the summation form
/// `u^{-2} 𝒮(uz_1)^{z_1} 𝒮(uz_2)^{z_2} Σ_{k>0} [ς(k x)/ς(x)]_{x=u(z_1+z_2)} ς(uz_1)^k ς(uz_2)^{-k} / ((1+z_1)_k (1+z_2)_{-k})`.
pub fn two_point_closed_form(trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    if trunc.nvars() != 2 {
        return Err(Error::InvalidArgument("two variables required".into()));
    }
    let o1 = trunc.z_orders[0];
    let pad = 2 * o1 + 2;
    let work = Arc::new(Truncation {
        u_lo: U_FLOOR,
        u_hi: trunc.u_hi + o1 + 3,
        z_orders: vec![o1, trunc.z_orders[1] + pad],
        ..(**trunc).clone()
    });
    let z1 = FormalSeries::var(&work, 0);
    let z2 = FormalSeries::var(&work, 1);
    let u = Mono::u(1);
    let uz1 = z1.mul_term(&u, &Coefficient::one());
    let uz2 = z2.mul_term(&u, &Coefficient::one());
    let x = uz1.try_add(&uz2)?;
    let mut sum = FormalSeries::zero(&work);
    let s1 = varsigma_power(&uz1, 1)?;
    let s2_inv = varsigma_inverse(&uz2)?;
    let mut p1 = FormalSeries::one(&work);
    let mut p2 = FormalSeries::one(&work);
    for k in 1..=o1.max(0) {
        p1 = p1.try_mul(&s1)?;
        p2 = p2.try_mul(&s2_inv)?;
        let term = varsigma_ratio(&x, k as i64)?
            .try_mul(&p1)?
            .try_mul(&p2)?
            .try_mul(&pochhammer_recip(&z1, k)?)?
            .try_mul(&pochhammer_recip(&z2, -k)?)?;
        sum = sum.try_add(&term)?;
    }
    let pre = s_power(&uz1, &z1)?
        .try_mul(&s_power(&uz2, &z2)?)?
        .mul_term(&Mono::u(-2), &Coefficient::one());
    Ok(pre.try_mul(&sum)?.retruncated(trunc))
}
