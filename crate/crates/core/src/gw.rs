//! Equivariant Gromov–Witten invariants of P¹ by localization and by vacuum expectations.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, U_CEIL, U_FLOOR};
use crate::error::{Error, Result};
use crate::fock::{vacuum_expectation, AFamily, FamilyArg, Op};
use crate::hodge::{connected_from_disconnected, integer_family, slot_family, PointFamily};
use crate::partitions::{enumerate_partitions, Partition};

/// `𝖠(z) = u^{-1} 𝒜(t z, u z)` in slot `var`.
pub fn bold_a(var: usize, order: i32) -> Op {
    slot_family(Coefficient::t(), var, order, -1, false)
}

/// `𝖠*(w) = u^{-1} 𝒜(-t w, u w)*` in slot `var`.
pub fn bold_a_star(var: usize, order: i32) -> Op {
    slot_family(-Coefficient::t(), var, order, -1, true)
}

fn extracted(alpha: Coefficient, k: i32, star: bool) -> Op {
    Op::Family(Arc::new(AFamily::new(
        FamilyArg::Extracted { alpha, power: k + 1 },
        Coefficient::one(),
        -1,
        star,
    )))
}

/// `𝖠_k = [z^{k+1}] 𝖠(z)`.
pub fn bold_a_coeff(k: i32) -> Op {
    extracted(Coefficient::t(), k, false)
}

/// `𝖠*_k = [w^{k+1}] 𝖠*(w)`.
pub fn bold_a_star_coeff(k: i32) -> Op {
    extracted(-Coefficient::t(), k, true)
}

/// `(q/u²)^H`.
pub fn degree_weight() -> Op {
    Op::EnergyPower {
        coeff: Coefficient::one(),
        mono: Mono::q(1).with_u(-2),
        reduced: false,
    }
}

/// `u^shift ⟨ops⟩`, computed in a window widened so the shift loses nothing.
pub fn shifted_expectation(trunc: &Arc<Truncation>, ops: &[Op], shift: i32) -> Result<FormalSeries> {
    let wide = Arc::new(Truncation {
        u_hi: trunc.u_hi - shift,
        u_lo: trunc.u_lo - shift,
        ..(**trunc).clone()
    });
    let x = vacuum_expectation(&wide, ops)?.retruncated(&with_u_hi(trunc, U_CEIL));
    Ok(x.mul_term(&Mono::u(shift), &Coefficient::one()).retruncated(trunc))
}

fn with_u_hi(trunc: &Arc<Truncation>, u_hi: i32) -> Arc<Truncation> {
    Arc::new(Truncation {
        u_lo: U_FLOOR,
        u_hi,
        ..(**trunc).clone()
    })
}

/// `J(z, μ, u, t) = u^{-d-n} ⟨∏ 𝒜(t z_i, u z_i) e^{α_1} e^{(u/t) ℱ₂} ∏ α_{-μ_i}⟩`
/// with `z` the variables `vars` of `trunc`.
pub fn j_function(trunc: &Arc<Truncation>, vars: &[usize], mu: &Partition) -> Result<FormalSeries> {
    let mut ops: Vec<Op> = vars
        .iter()
        .map(|&i| slot_family(Coefficient::t(), i, trunc.z_orders[i], -1, false))
        .collect();
    ops.push(Op::ExpAlpha(1));
    ops.push(Op::ExpF2U(Coefficient::t().recip()));
    ops.extend(mu.parts().iter().map(|&m| Op::Alpha(-(m as i32))));
    shifted_expectation(trunc, &ops, -(mu.size() as i32))
}

/// `t^{-d} u^{-n} ∏ μ_i^{μ_i}/μ_i! ⟨∏ 𝒜(t z_i, u z_i) ∏ 𝒜(μ_i, (u/t) μ_i)⟩`.
pub fn j_function_integer_form(trunc: &Arc<Truncation>, vars: &[usize], mu: &Partition) -> Result<FormalSeries> {
    let mut ops: Vec<Op> = vars
        .iter()
        .map(|&i| slot_family(Coefficient::t(), i, trunc.z_orders[i], -1, false))
        .collect();
    let mut scale = Coefficient::t().pow(-(mu.size() as i32));
    for &m in mu.parts() {
        ops.push(integer_family(m, Coefficient::t().recip(), 0));
        let mm = num_bigint::BigInt::from(m).pow(m);
        scale = scale.scale_rational(&BigRational::new(mm, crate::partitions::factorial(m)));
    }
    Ok(vacuum_expectation(trunc, &ops)?.scale(&scale))
}

/// Variables `0..n` are the `z`'s and `n..n+m` the `w`'s.
fn split_vars(trunc: &Truncation, n: usize, m: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if trunc.nvars() != n + m {
        return Err(Error::InvalidArgument(format!(
            "truncation has {} variables, expected {}",
            trunc.nvars(),
            n + m
        )));
    }
    Ok(((0..n).collect(), (n..n + m).collect()))
}

/// `𝖦_d(z, w, u) = Σ_{|μ|=d} (1/𝔷(μ)) J(z, μ, u, t) J(w, μ, u, -t)`.
pub fn g_localization(trunc: &Arc<Truncation>, n: usize, m: usize, d: u32) -> Result<FormalSeries> {
    let (zs, ws) = split_vars(trunc, n, m)?;
    let tz = with_u_hi(trunc, trunc.u_hi + d as i32 + 2 * m as i32);
    let tw = with_u_hi(trunc, trunc.u_hi + d as i32 + 2 * n as i32);
    let wide = with_u_hi(trunc, tz.u_hi.max(tw.u_hi));
    let mut acc = FormalSeries::zero(&wide);
    for mu in enumerate_partitions(d) {
        let jz = j_function(&tz, &zs, &mu)?.retruncated(&wide);
        let jw = j_function(&tw, &ws, &mu)?.negate_t().retruncated(&wide);
        let zmu = Coefficient::from_rational(BigRational::from_integer(mu.z_mu()));
        acc = acc.try_add(&jz.try_mul(&jw)?.scale(&zmu.recip()))?;
    }
    Ok(acc.retruncated(trunc))
}

/// `⟨∏ 𝖠(z_i) e^{α_1} X e^{α_{-1}} 𝖠*(w_m) ⋯ 𝖠*(w_1)⟩` with `X = u^{-2d} P_d`,
/// or `X = (q/u²)^H` when `d` is `None`.
pub fn g_operator(trunc: &Arc<Truncation>, n: usize, m: usize, d: Option<u32>) -> Result<FormalSeries> {
    let (zs, ws) = split_vars(trunc, n, m)?;
    let mut ops: Vec<Op> = zs.iter().map(|&i| bold_a(i, trunc.z_orders[i])).collect();
    ops.push(Op::ExpAlpha(1));
    let shift = match d {
        Some(d) => {
            ops.push(Op::Project(d));
            -2 * d as i32
        }
        None => {
            ops.push(degree_weight());
            0
        }
    };
    ops.push(Op::ExpAlpha(-1));
    ops.extend(ws.iter().rev().map(|&i| bold_a_star(i, trunc.z_orders[i])));
    shifted_expectation(trunc, &ops, shift)
}

/// Connected functions over all subsets of the variables, normalized by the 0-point function.
pub fn g_connected_families(trunc: &Arc<Truncation>, n: usize, m: usize) -> Result<PointFamily> {
    let total = n + m;
    let pad = 2 * total as i32 + 2 * trunc.q_max as i32;
    let wide = with_u_hi(trunc, trunc.u_hi + pad);
    let zero_point_inverse = exp_degree(&wide, -1);
    let mut disc = PointFamily::new();
    for mask in 0u32..(1 << total) {
        let idx: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 1).collect();
        let nz = idx.iter().filter(|&&i| i < n).count();
        let vars: Vec<(&str, i32)> = idx
            .iter()
            .map(|&i| (trunc.vars[i].as_str(), trunc.z_orders[i]))
            .collect();
        let sub = Truncation::new(trunc.q_max, U_FLOOR, wide.u_hi, &vars)?.shared();
        let g = g_operator(&sub, nz, idx.len() - nz, None)?.embed(&wide, &idx);
        disc.insert(mask, g.try_mul(&zero_point_inverse)?);
    }
    let conn = connected_from_disconnected(&disc, total, &wide)?;
    Ok(conn.into_iter().map(|(k, v)| (k, v.retruncated(trunc))).collect())
}

/// `e^{s q/u²}` for `s = ±1`.
pub fn exp_degree(trunc: &Arc<Truncation>, sign: i64) -> FormalSeries {
    let mut out = FormalSeries::zero(trunc);
    let mut c = BigRational::from_integer(1.into());
    for j in 0..=trunc.q_max {
        if j > 0 {
            c *= BigRational::new(sign.into(), (j as i64).into());
        }
        out.add_term(Mono::q(j).with_u(-2 * j as i32), Coefficient::from_rational(c.clone()));
    }
    out
}

/// Cohomology classes used to label descendent insertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InsertionClass {
    /// The fixed point `𝟎`.
    Zero,
    /// The fixed point `∞`.
    Infinity,
    /// The unit class `1 = (𝟎 - ∞)/t`.
    Unit,
    /// The class `h = ∞`.
    Hyperplane,
}

pub type Insertion = (InsertionClass, u32);

/// Descendent insertions `∏ τ_{k_i}(𝟎) ∏ τ_{l_j}(∞)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionList {
    pub zero: Vec<u32>,
    pub infinity: Vec<u32>,
}

impl InsertionList {
    pub fn new(zero: Vec<u32>, infinity: Vec<u32>) -> Self {
        InsertionList { zero, infinity }
    }

    pub fn len(&self) -> usize {
        self.zero.len() + self.infinity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn labelled(&self) -> Vec<Insertion> {
        self.zero
            .iter()
            .map(|&k| (InsertionClass::Zero, k))
            .chain(self.infinity.iter().map(|&l| (InsertionClass::Infinity, l)))
            .collect()
    }

    fn from_labelled(items: &[Insertion]) -> Self {
        let mut out = InsertionList::default();
        for &(c, k) in items {
            match c {
                InsertionClass::Zero => out.zero.push(k),
                InsertionClass::Infinity => out.infinity.push(k),
                _ => unreachable!("fixed-point classes only"),
            }
        }
        out
    }
}

/// `Σ u^{2g-2} q^d ⟨∏ τ_{k_i}(𝟎) ∏ τ_{l_j}(∞)⟩•` as `⟨∏ 𝖠_{k_i} e^{α_1} (q/u²)^H e^{α_{-1}} ∏ 𝖠*_{l_j}⟩`.
pub fn bracket_disconnected(ins: &InsertionList, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut ops: Vec<Op> = ins.zero.iter().map(|&k| bold_a_coeff(k as i32)).collect();
    ops.push(Op::ExpAlpha(1));
    ops.push(degree_weight());
    ops.push(Op::ExpAlpha(-1));
    ops.extend(ins.infinity.iter().map(|&l| bold_a_star_coeff(l as i32)));
    vacuum_expectation(trunc, &ops)
}

/// Connected brackets `∂_S log τ` for every subset `S` of the insertions.
pub fn bracket_connected_family(ins: &InsertionList, trunc: &Arc<Truncation>) -> Result<PointFamily> {
    let items = ins.labelled();
    let n = items.len();
    let pad = 2 * n as i32 + 2 * trunc.q_max as i32;
    let wide = with_u_hi(trunc, trunc.u_hi + pad);
    let inv = exp_degree(&wide, -1);
    let mut disc = PointFamily::new();
    for mask in 0u32..(1 << n) {
        let chosen: Vec<Insertion> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect();
        let x = bracket_disconnected(&InsertionList::from_labelled(&chosen), &wide)?;
        disc.insert(mask, x.try_mul(&inv)?);
    }
    let conn = connected_from_disconnected(&disc, n, &wide)?;
    Ok(conn.into_iter().map(|(k, v)| (k, v.retruncated(trunc))).collect())
}

/// The connected bracket of all insertions, asserted polynomial in `t`.
pub fn bracket_connected(ins: &InsertionList, trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    if ins.is_empty() {
        let mut out = FormalSeries::zero(trunc);
        if trunc.q_max >= 1 {
            out.add_term(Mono::q(1).with_u(-2), Coefficient::one());
        }
        return Ok(out);
    }
    let fam = bracket_connected_family(ins, trunc)?;
    let all = (1u32 << ins.len()) - 1;
    let x = fam[&all].clone();
    if let Some((m, c)) = x.iter().find(|(_, c)| !c.is_polynomial()) {
        return Err(Error::NonPolynomial(format!("coefficient {} at {:?}", c.render(), m)));
    }
    Ok(x)
}

/// Expands insertions in the `(1, h)` basis into the fixed-point basis:
/// `τ_k(1) = (τ_k(𝟎) - τ_k(∞))/t`, `τ_k(h) = τ_k(∞)`. Fixed-point labels pass through.
pub fn to_fixed_point_basis(items: &[Insertion]) -> Vec<(Coefficient, Vec<Insertion>)> {
    expand(items, |&(c, k)| match c {
        InsertionClass::Unit => vec![
            (Coefficient::t().recip(), (InsertionClass::Zero, k)),
            (-Coefficient::t().recip(), (InsertionClass::Infinity, k)),
        ],
        InsertionClass::Hyperplane => vec![(Coefficient::one(), (InsertionClass::Infinity, k))],
        _ => vec![(Coefficient::one(), (c, k))],
    })
}

/// Expands fixed-point insertions in the `(1, h)` basis: `𝟎 = t·1 + h`, `∞ = h`.
pub fn to_unit_basis(items: &[Insertion]) -> Vec<(Coefficient, Vec<Insertion>)> {
    expand(items, |&(c, k)| match c {
        InsertionClass::Zero => vec![
            (Coefficient::t(), (InsertionClass::Unit, k)),
            (Coefficient::one(), (InsertionClass::Hyperplane, k)),
        ],
        InsertionClass::Infinity => vec![(Coefficient::one(), (InsertionClass::Hyperplane, k))],
        _ => vec![(Coefficient::one(), (c, k))],
    })
}

fn expand(
    items: &[Insertion],
    rule: impl Fn(&Insertion) -> Vec<(Coefficient, Insertion)>,
) -> Vec<(Coefficient, Vec<Insertion>)> {
    let mut acc: Vec<(Coefficient, Vec<Insertion>)> = vec![(Coefficient::one(), vec![])];
    for it in items {
        let mut next = Vec::new();
        for (c, list) in &acc {
            for (d, x) in rule(it) {
                let mut l = list.clone();
                l.push(x);
                next.push((c * &d, l));
            }
        }
        acc = next;
    }
    // merge equal labelled lists
    let mut merged: std::collections::BTreeMap<Vec<Insertion>, Coefficient> = Default::default();
    for (c, mut l) in acc {
        l.sort();
        let e = merged.entry(l).or_insert_with(Coefficient::zero);
        *e = &*e + &c;
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (c, l))
        .collect()
}

/// Connected bracket with insertions in any basis, by multilinear expansion.
pub fn bracket_connected_mixed(items: &[Insertion], trunc: &Arc<Truncation>) -> Result<FormalSeries> {
    let mut acc = FormalSeries::zero(trunc);
    for (c, list) in to_fixed_point_basis(items) {
        let x = bracket_connected(&InsertionList::from_labelled(&list), trunc)?;
        acc = acc.try_add(&x.scale(&c))?;
    }
    Ok(acc)
}

/// `(1/(d!)²) ⟨α_1^d ∏ ℰ₀(z_i) α_{-1}^d⟩` over the variables of `trunc`.
pub fn stationary_specialization(trunc: &Arc<Truncation>, d: u32) -> Result<FormalSeries> {
    let mut ops: Vec<Op> = (0..d).map(|_| Op::Alpha(1)).collect();
    for i in 0..trunc.nvars() {
        ops.push(Op::E {
            r: 0,
            arg: FormalSeries::var(trunc, i),
        });
    }
    ops.extend((0..d).map(|_| Op::Alpha(-1)));
    let mut f = BigRational::from_integer(1.into());
    for j in 1..=d {
        f *= BigRational::from_integer((j as i64).into());
    }
    let x = vacuum_expectation(trunc, &ops)?;
    Ok(x.scale(&Coefficient::from_rational(f.clone() * f).recip()))
}

/// `𝖦_d(z, ∅, u)` at `t → 0` and `u = 1`, over a u-window wide enough to hold every genus.
pub fn g_stationary_limit(trunc: &Arc<Truncation>, d: u32) -> Result<FormalSeries> {
    let n = trunc.nvars() as i32;
    let top: i32 = trunc.z_orders.iter().sum::<i32>() - 2 * d as i32 - n;
    let wide = Arc::new(Truncation {
        q_max: trunc.q_max.max(d),
        u_lo: -2 * n - 2 * d as i32 - 2,
        u_hi: top.max(0),
        ..(**trunc).clone()
    });
    let g = g_operator(&wide, trunc.nvars(), 0, Some(d))?;
    let mut at_zero = FormalSeries::zero(&wide);
    let zero = BigRational::zero();
    for (m, c) in g.iter() {
        let v = c
            .eval(&zero)
            .ok_or_else(|| Error::PoleAtZero(format!("coefficient at {m:?}")))?;
        at_zero.add_term(*m, Coefficient::from_rational(v));
    }
    let local = Arc::new(Truncation {
        q_max: trunc.q_max,
        u_lo: trunc.u_lo.min(0),
        u_hi: trunc.u_hi.max(0),
        ..(**trunc).clone()
    });
    let mut out = FormalSeries::zero(&local);
    out.add_assign(&at_zero.at_u_one());
    Ok(out)
}
