//! Dressed coefficients `c_{k,l}(u, t)` and the matrix identity
//! `𝖠_k = Σ_l c_{k,l} 𝖠_0^l` in `End(∞)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::special::pochhammer_recip;
use crate::algebra::{Coefficient, FormalSeries, Mono, Truncation, U_CEIL, U_FLOOR};
use crate::error::{Error, Result};
use crate::fock::{AFamily, FamilyArg};
use crate::partitions::factorial;

use super::report::Report;

fn scalar_window() -> Arc<Truncation> {
    Arc::new(Truncation::local(&[]))
}

/// `c_{k,l}` for `0 ≤ k ≤ k_max`, `1 ≤ l ≤ k+1`: the coefficient of `z^{k+1} α_l` in
/// `Σ_{n≥1} u^{n-1} z^n / ((1+tz)⋯(n+tz)) α_n`.
pub fn dressing_coefficients(k_max: u32) -> Result<BTreeMap<(u32, u32), FormalSeries>> {
    let order = k_max as i32 + 1;
    let local = Truncation::local(&[("z", order)]).shared();
    let tz = FormalSeries::monomial(&local, Mono::var(0, 1), Coefficient::t());
    let scalars = scalar_window();
    let mut out = BTreeMap::new();
    for n in 1..=order {
        let series = pochhammer_recip(&tz, n)?.mul_term(&Mono::var(0, n).with_u(n - 1), &Coefficient::one());
        for k in (n - 1)..=(k_max as i32) {
            let mut c = FormalSeries::zero(&scalars);
            for (m, x) in series.iter().filter(|(m, _)| m.z[0] == k + 1) {
                c.add_term(Mono::u(m.u), x.clone());
            }
            out.insert((k as u32, n as u32), c);
        }
    }
    Ok(out)
}

/// `Some((c, e))` when the coefficient is `c t^e`.
fn t_monomial(c: &Coefficient) -> Option<(num_rational::BigRational, usize)> {
    let (num, den) = (c.numerator(), c.denominator());
    if den.degree() != Some(0) || !num.is_monomial() {
        return None;
    }
    let e = num.valuation()?;
    Some((num.coeff(e) / den.coeff(0), e))
}

/// `c_{k,l} = (rational) u^{l-1} t^{k-l+1}` and `c_{k,k+1} = u^k/(k+1)!`.
pub fn check_dressing_coefficients(k_max: u32) -> Result<Report> {
    let table = dressing_coefficients(k_max)?;
    let scalars = scalar_window();
    let mut report = Report::new();
    for (&(k, l), c) in &table {
        let terms: Vec<_> = c.iter().collect();
        let actual = match terms.as_slice() {
            [(m, x)] => match t_monomial(x) {
                Some((_, e)) => format!("u^{} t^{e}", m.u),
                None => format!("not a t-monomial: {}", c.render()),
            },
            [] => "zero".into(),
            _ => format!("several u-terms: {}", c.render()),
        };
        let expected_exponents = format!("u^{} t^{}", l as i32 - 1, k as i32 - l as i32 + 1);
        report.push("dressing-monomial", format!("c[{k},{l}]"), expected_exponents, actual);
    }
    for k in 0..=k_max {
        let expected = FormalSeries::monomial(
            &scalars,
            Mono::u(k as i32),
            Coefficient::from_rational(num_rational::BigRational::new(1.into(), factorial(k + 1))),
        );
        report.compare("dressing-leading", format!("c[{k},{}]", k + 1), &expected, &table[&(k, k + 1)]);
    }
    Ok(report)
}

/// A finite corner of a matrix in `End(∞)` indexed by integer positions `n`
/// (the half-integer level is `n + ½`). Entry `(i, j)` is nonzero only when
/// `j ≤ i + band`; products are exact on rows `≤ hi - row_margin` and columns
/// `≥ lo + col_margin`.
#[derive(Clone, Debug)]
pub struct HalfInfiniteMatrix {
    pub lo: i64,
    pub hi: i64,
    pub band: i64,
    pub row_margin: i64,
    pub col_margin: i64,
    pub entries: BTreeMap<(i64, i64), FormalSeries>,
}

impl HalfInfiniteMatrix {
    /// `[z^{k+1}] 𝖠(z)` without its constant term, on levels `[-E-½, E-½]`.
    pub fn bold_a(k: i32, half_width: i64) -> Result<Self> {
        let family = AFamily::new(
            FamilyArg::Extracted {
                alpha: Coefficient::t(),
                power: k + 1,
            },
            Coefficient::one(),
            -1,
            false,
        );
        let (lo, hi) = (-half_width - 1, half_width - 1);
        let band = (k + 1).max(0) as i64;
        let mut entries = BTreeMap::new();
        for col in lo..=hi {
            for row in lo.max(col - band)..=hi {
                let j = (col - row) as i32;
                let w = family.local_weight(j, 2 * col + 1 - j as i64, false, U_CEIL)?;
                if !w.is_zero() {
                    entries.insert((row, col), w);
                }
            }
        }
        Ok(HalfInfiniteMatrix {
            lo,
            hi,
            band,
            row_margin: 0,
            col_margin: 0,
            entries,
        })
    }

    pub fn identity_like(&self) -> Self {
        let one = FormalSeries::one(&scalar_window());
        HalfInfiniteMatrix {
            band: 0,
            row_margin: 0,
            col_margin: 0,
            entries: (self.lo..=self.hi).map(|n| ((n, n), one.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn get(&self, row: i64, col: i64) -> FormalSeries {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(&scalar_window()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut entries: BTreeMap<(i64, i64), FormalSeries> = BTreeMap::new();
        let mut by_row: BTreeMap<i64, Vec<(i64, &FormalSeries)>> = BTreeMap::new();
        for (&(r, c), x) in &other.entries {
            by_row.entry(r).or_default().push((c, x));
        }
        for (&(i, k), a) in &self.entries {
            for &(j, b) in by_row.get(&k).into_iter().flatten() {
                let p = a.try_mul(b)?;
                match entries.get_mut(&(i, j)) {
                    Some(x) => x.add_assign(&p),
                    None => {
                        entries.insert((i, j), p);
                    }
                }
            }
        }
        entries.retain(|_, x| !x.is_zero());
        Ok(HalfInfiniteMatrix {
            lo: self.lo,
            hi: self.hi,
            band: self.band + other.band,
            row_margin: self.row_margin.max(other.row_margin + self.band),
            col_margin: other.col_margin.max(self.col_margin + other.band),
            entries,
        })
    }

    pub fn add_scaled(&mut self, other: &Self, c: &FormalSeries) -> Result<()> {
        for (&key, x) in &other.entries {
            let p = x.try_mul(c)?;
            match self.entries.get_mut(&key) {
                Some(y) => y.add_assign(&p),
                None => {
                    self.entries.insert(key, p);
                }
            }
        }
        self.entries.retain(|_, x| !x.is_zero());
        self.band = self.band.max(other.band);
        self.row_margin = self.row_margin.max(other.row_margin);
        self.col_margin = self.col_margin.max(other.col_margin);
        Ok(())
    }

    /// Indices `n` whose rows and columns are both exact.
    pub fn trusted(&self) -> std::ops::RangeInclusive<i64> {
        (self.lo + self.col_margin)..=(self.hi - self.row_margin)
    }
}

/// `𝖠_k = Σ_{1≤l≤k+1} c_{k,l} 𝖠_0^l` on a window of `2 half_width` levels,
/// compared on the trusted indices; at least `min_trusted` of them are required.
pub fn check_matrix_identity(k_max: u32, half_width: i64, min_trusted: usize) -> Result<Report> {
    let table = dressing_coefficients(k_max)?;
    let a0 = HalfInfiniteMatrix::bold_a(0, half_width)?;
    let mut report = Report::new();
    for k in 0..=k_max {
        let lhs = HalfInfiniteMatrix::bold_a(k as i32, half_width)?;
        let mut rhs = HalfInfiniteMatrix {
            entries: BTreeMap::new(),
            ..a0.identity_like()
        };
        let mut power = a0.identity_like();
        for l in 1..=k + 1 {
            power = power.mul(&a0)?;
            rhs.add_scaled(&power, &table[&(k, l)])?;
        }
        let trusted = rhs.trusted();
        let count = trusted.clone().count();
        if count < min_trusted {
            return Err(Error::WindowTooSmall(format!(
                "k={k}: {count} trusted levels, need {min_trusted}"
            )));
        }
        let mut mismatches = Vec::new();
        for row in trusted.clone() {
            for col in trusted.clone() {
                let (a, b) = (lhs.get(row, col), rhs.get(row, col));
                if a != b {
                    mismatches.push(format!("({row},{col})"));
                }
            }
        }
        report.push(
            "dressing-matrix",
            format!("k={k} levels {}..={} ", trusted.start(), trusted.end()),
            "all trusted entries equal".into(),
            if mismatches.is_empty() {
                "all trusted entries equal".into()
            } else {
                format!("mismatch at {}", mismatches.join(" "))
            },
        );
    }
    Ok(report)
}

/// Lowest u-layer of the `ℰ_j` coefficient of `𝖠(z)` through `z^z_order`:
/// `u^{j-1} z^j/((1+tz)⋯(j+tz))` for `j ≥ 0` and `t u^{-m-1} ∏_{i<m} (t - i/z)` for `j = -m`.
pub fn check_small_u_limit(j_range: std::ops::RangeInclusive<i32>, z_order: i32) -> Result<Report> {
    let family = AFamily::new(
        FamilyArg::Slot {
            alpha: Coefficient::t(),
            var: 0,
            order: z_order,
        },
        Coefficient::one(),
        -1,
        false,
    );
    let local = Truncation::local(&[("z", z_order)]).with_u_window(U_FLOOR, U_CEIL)?.shared();
    let mut report = Report::new();
    for j in j_range {
        let weight = family.local_weight(j, 0, false, U_CEIL)?;
        let actual = match weight.min_u() {
            Some(lo) => weight.u_window(lo, lo).retruncated(&local),
            None => FormalSeries::zero(&local),
        };
        let mut expected = FormalSeries::zero(&local);
        if j >= 0 {
            // z^j ∏ 1/(i + tz) as a product of geometric series
            let mut acc = FormalSeries::monomial(&local, Mono::var(0, j).with_u(j - 1), Coefficient::one());
            for i in 1..=j as i64 {
                let mut geo = FormalSeries::zero(&local);
                for r in 0..=z_order {
                    let c = Coefficient::t().pow(r).scale_rational(&num_rational::BigRational::new(
                        if r % 2 == 0 { 1.into() } else { (-1).into() },
                        num_bigint::BigInt::from(i).pow(r as u32 + 1),
                    ));
                    geo.add_term(Mono::var(0, r), c);
                }
                acc = acc.try_mul(&geo)?;
            }
            expected = acc;
        } else {
            let m = -j;
            let mut acc = FormalSeries::monomial(&local, Mono::u(-m - 1), Coefficient::t());
            for i in 1..m {
                let mut f = FormalSeries::constant(&local, Coefficient::t());
                f.add_term(Mono::var(0, -1), Coefficient::from_int(-(i as i64)));
                acc = acc.try_mul(&f)?;
            }
            expected.add_assign(&acc);
        }
        report.compare("small-u-limit", format!("E_{j}"), &expected, &actual);
    }
    Ok(report)
}
