//! Integer partitions, their statistics and symmetric-group characters.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicities `(part, m_part)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `|Aut(μ)| = ∏ m_i!`.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|&(_, m)| factorial(m))
            .fold(BigInt::one(), |a, b| a * b)
    }

    /// `𝔷(μ) = |Aut(μ)| ∏ μ_i`.
    pub fn z_mu(&self) -> BigInt {
        self.parts
            .iter()
            .fold(self.aut_order(), |acc, &p| acc * BigInt::from(p))
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0) as usize;
        let parts = (1..=n)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Sum of contents `j - i` over the boxes.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                let i = i as i64 + 1;
                p * (p + 1) / 2 - p * i
            })
            .sum()
    }

    /// Dimension of the irreducible representation by the hook-length formula.
    pub fn hook_dimension(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::one();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p as usize {
                let arm = p as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                hooks *= BigInt::from(arm + leg + 1);
            }
        }
        factorial(self.size()) / hooks
    }

    /// Same partition with one part removed (first occurrence).
    pub fn without_part(&self, p: u32) -> Partition {
        let mut parts = self.parts.clone();
        if let Some(i) = parts.iter().position(|&x| x == p) {
            parts.remove(i);
        }
        Partition { parts }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,1,1)`, `3,1,1` or `3 1 1`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: u32 = tok
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("cannot parse part {tok:?}")))?;
            parts.push(p);
        }
        Partition::new(parts)
    }
}

/// All partitions of `d` in reverse lexicographic order, `(d)` first.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(d, d, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// `(∑ contents)`, the eigenvalue of `ℱ₂` on `v_λ`.
pub fn f2_eigenvalue(lambda: &Partition) -> BigRational {
    BigRational::from_integer(lambda.content_sum().into())
}

/// Full character table for one size.
pub struct CharacterTable {
    pub partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<i64>,
}

impl CharacterTable {
    fn build(n: u32) -> Self {
        let partitions = enumerate_partitions(n);
        let index: HashMap<Partition, usize> = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut memo = HashMap::new();
        let mut values = Vec::with_capacity(partitions.len() * partitions.len());
        for nu in &partitions {
            for mu in &partitions {
                values.push(mn_character(nu.parts(), mu.parts(), &mut memo));
            }
        }
        CharacterTable {
            partitions,
            index,
            values,
        }
    }

    pub fn value(&self, nu: &Partition, mu: &Partition) -> i64 {
        let n = self.partitions.len();
        self.values[self.index[nu] * n + self.index[mu]]
    }
}

fn table_cache() -> &'static Mutex<HashMap<u32, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Character table of `S_n`, built once and shared.
pub fn character_table(n: u32) -> Arc<CharacterTable> {
    if let Some(t) = table_cache().lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(CharacterTable::build(n));
    table_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(t)
        .clone()
}

/// `χ^ν_μ` by the Murnaghan–Nakayama rule.
pub fn character(nu: &Partition, mu: &Partition) -> Result<i64> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch(nu.size() as usize, mu.size() as usize));
    }
    Ok(character_table(nu.size()).value(nu, mu))
}

type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

fn mn_character(nu: &[u32], mu: &[u32], memo: &mut Memo) -> i64 {
    if mu.is_empty() {
        return if nu.is_empty() { 1 } else { 0 };
    }
    let key = (nu.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0] as i64;
    let rest = &mu[1..];
    // beads at λ_i + n - i
    let n = nu.len() as i64;
    let beads: Vec<i64> = (0..nu.len()).map(|i| nu[i] as i64 + n - 1 - i as i64).collect();
    let mut total = 0;
    for (idx, &b) in beads.iter().enumerate() {
        let target = b - r;
        if target < 0 || beads.contains(&target) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beads.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (n - 1 - i as i64)) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_character(&parts, rest, memo);
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order() {
        let ps = enumerate_partitions(4);
        let shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(10).len(), 42);
    }

    #[test]
    fn z_mu_examples() {
        assert_eq!(Partition::empty().z_mu(), BigInt::one());
        assert_eq!(p(&[2, 1, 1]).z_mu(), BigInt::from(4));
        assert_eq!(p(&[3, 3, 2]).z_mu(), BigInt::from(36));
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(&p(&[1]), &p(&[1])).unwrap(), 1);
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2]), &p(&[1, 1])).unwrap(), 1);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn f2_examples() {
        assert_eq!(f2_eigenvalue(&Partition::empty()), BigRational::from_integer(0.into()));
        assert_eq!(f2_eigenvalue(&p(&[2])), BigRational::from_integer(1.into()));
        assert_eq!(f2_eigenvalue(&p(&[1, 1])), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!("(3,1,1)".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("2 1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
    }
}
