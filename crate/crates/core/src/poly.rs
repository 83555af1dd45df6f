//! Polynomials in the Schwarz coefficients `c₁, c₂, c₃, c₄` with exact
//! rational coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Coefficient, to_f64};

/// Exponent vector `(e₁, e₂, e₃, e₄)` of `c₁^e₁ c₂^e₂ c₃^e₃ c₄^e₄`.
pub type Monomial = [u8; 4];

/// Sparse polynomial in `c₁…c₄`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CoeffPolynomial {
    /// The variable `c_index` for `index` in `1..=4`.
    pub fn var(index: usize) -> Self {
        assert!((1..=4).contains(&index), "Schwarz coefficient index {index} out of range");
        let mut m = [0u8; 4];
        m[index - 1] = 1;
        Self::monomial(BigRational::one(), m)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| u32::from(e)).sum())
            .max()
            .unwrap_or(0)
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Numeric value at complex `c = (c₁, c₂, c₃, c₄)`.
    pub fn eval(&self, c: &[Complex64; 4]) -> Complex64 {
        NumericPolynomial::from(self).eval(c)
    }

    /// Unicode rendering such as `c₃+(5/2)c₁c₂+(5/4)c₁³`.
    pub fn to_unicode(&self) -> String {
        render(&self.display_order(), Style::Unicode)
    }

    /// LaTeX rendering such as `c_3+\frac{5}{2}c_1c_2+\frac{5}{4}c_1^{3}`.
    pub fn to_latex(&self) -> String {
        render(&self.display_order(), Style::Latex)
    }

    /// Like [`to_unicode`](Self::to_unicode) but with the leading
    /// coefficient factored out when there are three or more terms, e.g.
    /// `(2/3)(c₃+5c₁c₂+6c₁³)`.
    pub fn to_unicode_factored(&self) -> String {
        factored(self, Style::Unicode)
    }

    pub fn to_latex_factored(&self) -> String {
        factored(self, Style::Latex)
    }

    /// Terms ordered the way coefficient formulas are usually printed: the
    /// highest-index coefficient first, ties broken by larger powers of `c₁`.
    fn display_order(&self) -> Vec<(Monomial, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            let top = |m: &Monomial| m.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
            top(b)
                .cmp(&top(a))
                .then(b[0].cmp(&a[0]))
                .then(b.cmp(a))
        });
        v
    }
}

#[derive(Clone, Copy)]
enum Style {
    Unicode,
    Latex,
}

fn factored(p: &CoeffPolynomial, style: Style) -> String {
    let order = p.display_order();
    match order.first() {
        Some((_, lead)) if order.len() >= 3 && !lead.is_one() => {
            let inner: Vec<_> = order.iter().map(|(m, c)| (*m, c / lead)).collect();
            let body = render(&inner, style);
            match style {
                Style::Unicode => format!("{}({})", paren_coeff(lead), body),
                Style::Latex => format!("{}\\left({}\\right)", latex_coeff(lead), body),
            }
        }
        _ => render(&order, style),
    }
}

fn paren_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

fn latex_coeff(c: &BigRational) -> String {
    let sign = if c.is_negative() { "-" } else { "" };
    let a = c.abs();
    if a.is_integer() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

const SUBSCRIPTS: [char; 5] = ['₀', '₁', '₂', '₃', '₄'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn render_monomial(m: &Monomial, style: Style) -> String {
    let mut s = String::new();
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        match style {
            Style::Unicode => {
                s.push('c');
                s.push(SUBSCRIPTS[i + 1]);
                if e > 1 {
                    for d in format!("{e}").bytes() {
                        s.push(SUPERSCRIPTS[usize::from(d - b'0')]);
                    }
                }
            }
            Style::Latex => {
                s.push_str(&format!("c_{}", i + 1));
                if e > 1 {
                    s.push_str(&format!("^{{{e}}}"));
                }
            }
        }
    }
    s
}

fn render(terms: &[(Monomial, BigRational)], style: Style) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        let mono = render_monomial(m, style);
        let coeff = match style {
            Style::Unicode => paren_coeff(&a),
            Style::Latex => latex_coeff(&a),
        };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else {
            if !a.is_one() {
                out.push_str(&coeff);
            }
            out.push_str(&mono);
        }
    }
    out
}

impl fmt::Display for CoeffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_unicode())
    }
}

impl Add for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn add(self, rhs: Self) -> CoeffPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn sub(self, rhs: Self) -> CoeffPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn mul(self, rhs: Self) -> CoeffPolynomial {
        let mut out = CoeffPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn neg(self) -> CoeffPolynomial {
        CoeffPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CoeffPolynomial {
            type Output = CoeffPolynomial;
            fn $method(self, rhs: Self) -> CoeffPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn neg(self) -> CoeffPolynomial {
        -&self
    }
}

impl Zero for CoeffPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CoeffPolynomial {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Coefficient for CoeffPolynomial {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(BigRational::from_ratio(num, den))
    }

    fn try_recip(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.try_recip().map(Self::constant)
    }
}

/// A [`CoeffPolynomial`] with `f64` coefficients, for fast repeated
/// evaluation.
#[derive(Debug, Clone)]
pub struct NumericPolynomial {
    terms: Vec<(f64, Monomial)>,
    max_exp: usize,
}

impl From<&CoeffPolynomial> for NumericPolynomial {
    fn from(p: &CoeffPolynomial) -> Self {
        let max_exp = p
            .terms
            .keys()
            .flat_map(|m| m.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        Self {
            terms: p.terms.iter().map(|(m, c)| (to_f64(c), *m)).collect(),
            max_exp,
        }
    }
}

impl NumericPolynomial {
    pub fn eval(&self, c: &[Complex64; 4]) -> Complex64 {
        // Powers c_i^0..c_i^max for every variable.
        let mut pows = [[Complex64::new(1.0, 0.0); 8]; 4];
        let top = self.max_exp.min(7);
        for (i, row) in pows.iter_mut().enumerate() {
            for e in 1..=top {
                row[e] = row[e - 1] * c[i];
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, m) in &self.terms {
            let mut t = Complex64::new(*k, 0.0);
            for i in 0..4 {
                let e = usize::from(m[i]);
                if e > 0 {
                    t *= if e <= 7 { pows[i][e] } else { c[i].powu(e as u32) };
                }
            }
            acc += t;
        }
        acc
    }
}

/// `c_index` as a polynomial; shorthand used when writing formulas.
pub fn c(index: usize) -> CoeffPolynomial {
    CoeffPolynomial::var(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &c(1) - &c(1);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(CoeffPolynomial::monomial(q(0, 1), [1, 0, 0, 0]).len(), 0);
    }

    #[test]
    fn products_and_degree() {
        let p = &c(1) + &c(2);
        let sq = &p * &p;
        assert_eq!(sq.coeff(&[1, 1, 0, 0]), q(2, 1));
        assert_eq!(sq.total_degree(), 2);
        assert_eq!(c(1).pow(6).total_degree(), 6);
    }

    #[test]
    fn unicode_and_latex_rendering() {
        let a4 = (&(&c(3) + &(&c(1) * &c(2)).scale(&q(5, 2))) + &c(1).pow(3).scale(&q(5, 4)))
            .scale(&q(1, 3));
        assert_eq!(a4.to_unicode_factored(), "(1/3)(c₃+(5/2)c₁c₂+(5/4)c₁³)");
        assert_eq!(
            a4.to_latex_factored(),
            "\\frac{1}{3}\\left(c_3+\\frac{5}{2}c_1c_2+\\frac{5}{4}c_1^{3}\\right)"
        );
        let a3 = &c(2).scale(&q(1, 2)) + &c(1).pow(2).scale(&q(3, 4));
        assert_eq!(a3.to_unicode_factored(), "(1/2)c₂+(3/4)c₁²");
        assert_eq!(c(1).scale(&q(2, 1)).to_unicode(), "2c₁");
        assert_eq!((-&c(4)).to_unicode(), "-c₄");
        assert_eq!(CoeffPolynomial::zero().to_unicode(), "0");
    }

    #[test]
    fn numeric_evaluation() {
        let p = &(&c(1) * &c(2)).scale(&q(3, 2)) - &c(4);
        let z = [
            Complex64::new(0.5, 0.25),
            Complex64::new(-0.3, 0.1),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.2, -0.7),
        ];
        let expect = z[0] * z[1] * 1.5 - z[3];
        assert!((p.eval(&z) - expect).norm() < 1e-15);
    }
}
