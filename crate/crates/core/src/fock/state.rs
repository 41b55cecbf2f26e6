//! Charged partitions as semi-infinite wedge basis vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::partitions::Partition;

/// `v_λ` shifted to charge `c`; occupied integer positions are `λ_i - i + c`
/// (the half-integer level is the position plus ½).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState {
    pub lambda: Partition,
    pub charge: i64,
}

impl BasisState {
    pub fn vacuum() -> Self {
        BasisState::charged_vacuum(0)
    }

    pub fn charged_vacuum(c: i64) -> Self {
        BasisState {
            lambda: Partition::empty(),
            charge: c,
        }
    }

    pub fn new(lambda: Partition, charge: i64) -> Self {
        BasisState { lambda, charge }
    }

    pub fn neutral(lambda: Partition) -> Self {
        BasisState { lambda, charge: 0 }
    }

    /// `|λ|`, the energy with the charge contribution removed.
    pub fn size(&self) -> u32 {
        self.lambda.size()
    }

    /// `|λ| + c²/2`.
    pub fn energy(&self) -> BigRational {
        BigRational::new(self.twice_energy().into(), 2.into())
    }

    pub fn twice_energy(&self) -> i64 {
        2 * self.size() as i64 + self.charge * self.charge
    }

    /// The first `len` occupied positions, decreasing.
    pub fn positions(&self, len: usize) -> Vec<i64> {
        (0..len)
            .map(|i| self.lambda.part(i) as i64 - (i as i64 + 1) + self.charge)
            .collect()
    }

    fn from_positions(pos: &[i64], charge: i64) -> BasisState {
        let parts = pos
            .iter()
            .enumerate()
            .map(|(i, &p)| (p + i as i64 + 1 - charge) as u32)
            .filter(|&x| x > 0)
            .collect();
        BasisState {
            lambda: Partition::new(parts).expect("positions give a partition"),
            charge,
        }
    }

    /// Results of `E_{j-r, j}` over occupied `j` with `j - r` free, for `r != 0`:
    /// `(state, sign, m)` where the transition weight of `ℰ_r(b)` is `e^{b m / 2}`.
    pub fn transitions(&self, r: i32) -> Vec<(BasisState, i32, i64)> {
        assert!(r != 0);
        let r = r as i64;
        let len = self.lambda.len() + r.unsigned_abs() as usize + 1;
        let pos = self.positions(len);
        let occupied = |p: i64| -> bool {
            // positions beyond the listed tail are all occupied
            p <= *pos.last().unwrap() || pos.binary_search_by(|x| p.cmp(x)).is_ok()
        };
        let mut out = Vec::new();
        for (idx, &p) in pos.iter().enumerate() {
            let target = p - r;
            if occupied(target) {
                continue;
            }
            let (lo, hi) = if target < p { (target, p) } else { (p, target) };
            let between = pos.iter().filter(|&&x| x > lo && x < hi).count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            let mut np = pos.clone();
            np[idx] = target;
            np.sort_unstable_by(|a, b| b.cmp(a));
            let m = 2 * p + 1 - r;
            out.push((BasisState::from_positions(&np, self.charge), sign, m));
        }
        out
    }

    /// Diagonal data of `ℰ₀(b)`: the regularized sum is
    /// `e^{c b}/ς(b) + Σ mult · e^{b m/2}`.
    pub fn diagonal_exponents(&self) -> BTreeMap<i64, i64> {
        let mut mult = BTreeMap::new();
        let c = self.charge;
        for (i, &p) in self.lambda.parts().iter().enumerate() {
            let i = i as i64 + 1;
            *mult.entry(2 * (p as i64 - i + c) + 1).or_insert(0) += 1;
            *mult.entry(2 * (-i + c) + 1).or_insert(0) -= 1;
        }
        mult.retain(|_, v| *v != 0);
        mult
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.charge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(parts: &[u32]) -> BasisState {
        BasisState::neutral(Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn creation_from_vacuum() {
        let v = BasisState::vacuum();
        let t = v.transitions(-1);
        assert_eq!(t, vec![(st(&[1]), 1, 0)]);
        let t2 = v.transitions(-2);
        let states: Vec<_> = t2.iter().map(|(s, g, _)| (s.lambda.to_string(), *g)).collect();
        assert!(states.contains(&("(2)".into(), 1)));
        assert!(states.contains(&("(1,1)".into(), -1)));
        assert_eq!(states.len(), 2);
    }

    #[test]
    fn annihilation() {
        assert!(st(&[1]).transitions(2).is_empty());
        assert_eq!(st(&[1]).transitions(1)[0].0, BasisState::vacuum());
    }

    #[test]
    fn diagonal_of_single_box() {
        let d = st(&[1]).diagonal_exponents();
        assert_eq!(d.get(&1), Some(&1));
        assert_eq!(d.get(&-1), Some(&-1));
    }
}
