//! Reduced rational functions in the equivariant parameter `t`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{render_integer_poly, Poly};

/// `num / den` with `gcd(num, den) = 1`, `den` monic, and `0 = 0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    num: Poly,
    den: Poly,
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Coefficient::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coefficient::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Coefficient::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Coefficient {
            num: p,
            den: Poly::one(),
        }
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Coefficient::from_poly(Poly::t())
    }

    /// `c * t^k` for any integer `k`.
    pub fn t_power(c: BigRational, k: i32) -> Self {
        if c.is_zero() {
            return Coefficient::zero();
        }
        if k >= 0 {
            Coefficient::from_poly(Poly::monomial(c, k as usize))
        } else {
            Coefficient {
                num: Poly::constant(c),
                den: Poly::monomial(BigRational::one(), (-k) as usize),
            }
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut c = Coefficient { num, den };
        c.normalize();
        c
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        if self.den.is_monomial() {
            let k = self.den.valuation().unwrap();
            let lead = self.den.leading().unwrap().clone();
            let v = self.num.valuation().unwrap();
            let cancel = k.min(v);
            let mut num = self.num.shift_down(cancel);
            if !lead.is_one() {
                num = num.scale(&lead.recip());
            }
            self.num = num;
            self.den = Poly::monomial(BigRational::one(), k - cancel);
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn recip(&self) -> Coefficient {
        assert!(!self.is_zero(), "reciprocal of zero coefficient");
        Coefficient::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Coefficient {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut acc = Coefficient::one();
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_rational(&self, c: &BigRational) -> Coefficient {
        if c.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitute `t -> -t`.
    pub fn negate_t(&self) -> Coefficient {
        Coefficient::new(self.num.negate_var(), self.den.negate_var())
    }

    /// Value at `t = x`; `None` on a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Canonical `N/D` rendering with integer polynomials.
    pub fn render(&self) -> String {
        let ln = self.num.denominator_lcm();
        let ld = self.den.denominator_lcm();
        let mut n = self.num.integer_coeffs(&ln);
        let mut d = self.den.integer_coeffs(&ld);
        for c in n.iter_mut() {
            *c *= &ld;
        }
        for c in d.iter_mut() {
            *c *= &ln;
        }
        let content = n
            .iter()
            .chain(d.iter())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c /= &content;
            }
        }
        if d.last().is_some_and(|c| c.is_negative()) {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c = -c.clone();
            }
        }
        let terms = |v: &[BigInt]| v.iter().filter(|c| !c.is_zero()).count();
        let ns = render_integer_poly(&n);
        let d_is_one = d.len() == 1 && d[0].is_one();
        if d_is_one {
            return ns;
        }
        let ds = render_integer_poly(&d);
        let ns = if terms(&n) > 1 { format!("({ns})") } else { ns };
        let ds = if terms(&d) > 1 || ds.contains('*') { format!("({ds})") } else { ds };
        format!("{ns}/{ds}")
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Coefficient::new(self.num.add(&rhs.num), self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            let a = self.den.valuation().unwrap();
            let b = rhs.den.valuation().unwrap();
            let k = a.max(b);
            let num = self.num.shift_up(k - a).add(&rhs.num.shift_up(k - b));
            return Coefficient::new(num, Poly::monomial(BigRational::one(), k));
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Coefficient::new(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Coefficient::from_poly(self.num.mul(&rhs.num));
        }
        Coefficient::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self * &rhs.recip()
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
