//! Exact bivariate polynomials in `(x, y)` and the domain
//! `Ω = {0 ≤ x ≤ 1, 0 ≤ y ≤ 1 − x²}` where `x = |c₁|`, `y = |c₂|`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{q, to_f64};
use crate::univariate::UniPoly;

/// Sparse `Σ k_{ij} xⁱ yʲ` with exact coefficients; zeros are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::term(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(BigRational::one(), 0, 1)
    }

    pub fn term(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// Builds from `(coefficient, x-power, y-power)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, u32, u32)>) -> Self {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| (c * k, i, j)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(i, j), c)| {
            acc + c * pow_q(x, i) * pow_q(y, j)
        })
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().fold(0.0, |acc, (&(i, j), c)| {
            acc + to_f64(c) * powi(x, i) * powi(y, j)
        })
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| (c * q(i64::from(i), 1), i - 1, j)),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| (c * q(i64::from(j), 1), i, j - 1)),
        )
    }

    /// `p(x₀, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &BigRational) -> UniPoly {
        let mut c = vec![BigRational::zero(); self.degree_y() as usize + 1];
        for (&(i, j), k) in &self.terms {
            c[j as usize] += k * pow_q(x0, i);
        }
        UniPoly::new(c)
    }

    /// `p(x, y₀)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &BigRational) -> UniPoly {
        let mut c = vec![BigRational::zero(); self.degree_x() as usize + 1];
        for (&(i, j), k) in &self.terms {
            c[i as usize] += k * pow_q(y0, j);
        }
        UniPoly::new(c)
    }

    /// `p(x, y₀)` with floating `y₀`, as `f64` coefficients in `x`.
    pub fn at_y_f64(&self, y0: f64) -> Vec<f64> {
        let mut c = vec![0.0; self.degree_x() as usize + 1];
        for (&(i, j), k) in &self.terms {
            c[i as usize] += to_f64(k) * powi(y0, j);
        }
        c
    }

    /// `p(x, y(x))` for a polynomial curve `y = y(x)`.
    pub fn along_curve(&self, y_of_x: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        let mut ypow = vec![UniPoly::constant(BigRational::one())];
        for _ in 0..self.degree_y() {
            let next = ypow.last().expect("nonempty").mul(y_of_x);
            ypow.push(next);
        }
        for (&(i, j), k) in &self.terms {
            let mut xi = vec![BigRational::zero(); i as usize + 1];
            xi[i as usize] = k.clone();
            out = out.add(&UniPoly::new(xi).mul(&ypow[j as usize]));
        }
        out
    }

    /// `p(x, t·(1 − x²))`: pulls `Ω` back to the unit square in `(x, t)`.
    /// The second variable of the result is `t`.
    pub fn pullback_to_square(&self) -> Self {
        let gap = OmegaDomain::gap();
        self.terms.iter().fold(Self::zero(), |acc, (&(i, j), k)| {
            acc.add(&Self::term(k.clone(), i, j).mul(&gap.pow(j)))
        })
    }

    /// `f64` copy for fast repeated evaluation.
    pub fn to_float(&self) -> FloatBivariate {
        FloatBivariate {
            terms: self.terms.iter().map(|(&(i, j), c)| (to_f64(c), i, j)).collect(),
        }
    }

    /// Rendering in `x`, `y` such as `-(9/8)x²y²+9y`.
    pub fn to_unicode(&self) -> String {
        render(self, 'x', 'y')
    }

    /// Upper bounds for `sup |∂p/∂x|` and `sup |∂p/∂y|` over the unit square.
    pub fn lipschitz_on_unit_square(&self) -> (f64, f64) {
        let mut lx = 0.0;
        let mut ly = 0.0;
        for (&(i, j), c) in &self.terms {
            let a = to_f64(&c.abs());
            lx += a * f64::from(i);
            ly += a * f64::from(j);
        }
        (lx, ly)
    }

    /// Resultant with respect to `x`, as a polynomial in `y`.
    ///
    /// Evaluates the Sylvester determinant at enough rational `y` to pin down
    /// a polynomial of the a-priori degree bound, then interpolates exactly.
    pub fn resultant_x(&self, other: &Self) -> UniPoly {
        let m = self.degree_x() as usize;
        let n = other.degree_x() as usize;
        let bound = n * self.degree_y() as usize + m * other.degree_y() as usize;
        let nodes: Vec<BigRational> = (0..=bound).map(|k| q(k as i64, 1)).collect();
        let values: Vec<BigRational> = nodes
            .iter()
            .map(|y| {
                let a = coeffs_padded(&self.at_y(y), m);
                let b = coeffs_padded(&other.at_y(y), n);
                determinant(sylvester(&a, &b))
            })
            .collect();
        interpolate(&nodes, &values)
    }
}

/// A [`BivariatePoly`] with `f64` coefficients.
#[derive(Debug, Clone)]
pub struct FloatBivariate {
    terms: Vec<(f64, u32, u32)>,
}

impl FloatBivariate {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, i, j)| c * powi(x, i) * powi(y, j))
            .sum()
    }
}

fn superscript(e: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if e <= 1 {
        return String::new();
    }
    format!("{e}").bytes().map(|d| SUP[usize::from(d - b'0')]).collect()
}

fn render(p: &BivariatePoly, vx: char, vy: char) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    // Highest total degree first, then by descending x-power.
    let mut terms: Vec<_> = p.terms.iter().collect();
    terms.sort_by(|(a, _), (b, _)| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
    let mut out = String::new();
    for (k, (&(i, j), c)) in terms.into_iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let a = c.abs();
        let mono_empty = i == 0 && j == 0;
        if !a.is_one() || mono_empty {
            if a.is_integer() {
                out.push_str(&format!("{}", a.numer()));
            } else {
                out.push_str(&format!("({}/{})", a.numer(), a.denom()));
            }
        }
        if i > 0 {
            out.push(vx);
            out.push_str(&superscript(i));
        }
        if j > 0 {
            out.push(vy);
            out.push_str(&superscript(j));
        }
    }
    out
}

fn coeffs_padded(p: &UniPoly, deg: usize) -> Vec<BigRational> {
    let mut c = p.coeffs().to_vec();
    c.resize(deg + 1, BigRational::zero());
    c
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), coefficients in
/// ascending order.
fn sylvester(a: &[BigRational], b: &[BigRational]) -> Vec<Vec<BigRational>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let (top, bottom) = a.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &factor * src;
            }
        }
    }
    det
}

/// Newton interpolation through `(nodes[k], values[k])`.
fn interpolate(nodes: &[BigRational], values: &[BigRational]) -> UniPoly {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&nodes[k] - &nodes[k - level]);
        }
    }
    let mut out = UniPoly::constant(dd[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = UniPoly::new(vec![-nodes[k].clone(), BigRational::one()]);
        out = out.mul(&lin).add(&UniPoly::constant(dd[k].clone()));
    }
    out
}

fn pow_q(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn powi(x: f64, e: u32) -> f64 {
    (0..e).fold(1.0, |acc, _| acc * x)
}

/// `Ω = {(x, y) : 0 ≤ x ≤ 1, 0 ≤ y ≤ 1 − x²}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OmegaDomain;

impl OmegaDomain {
    /// `1 − x²` as a bivariate polynomial.
    pub fn gap() -> BivariatePoly {
        BivariatePoly::from_terms([(q(1, 1), 0, 0), (q(-1, 1), 2, 0)])
    }

    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        let zero = BigRational::zero();
        let one = BigRational::one();
        *x >= zero && *x <= one && *y >= zero && *y <= one - x * x
    }

    pub fn contains_f64(&self, x: f64, y: f64) -> bool {
        (0.0..=1.0).contains(&x) && y >= 0.0 && y <= 1.0 - x * x
    }

    /// Strict interior, with a margin `eps` from every edge.
    pub fn interior_f64(&self, x: f64, y: f64, eps: f64) -> bool {
        x > eps && x < 1.0 - eps && y > eps && y < 1.0 - x * x - eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> BivariatePoly {
        BivariatePoly::from_terms([
            (q(-9, 8), 2, 2),
            (q(-9, 1), 2, 1),
            (q(9, 1), 2, 0),
            (q(6, 1), 3, 0),
            (q(-9, 1), 4, 0),
            (q(9, 1), 0, 1),
            (q(-9, 1), 0, 3),
        ])
    }

    #[test]
    fn partials_match_hand_derivative() {
        // h_y = −(9/4)[x²(y+4) + 12y² − 4]
        let expect = BivariatePoly::from_terms([
            (q(-9, 4), 2, 1),
            (q(-9, 1), 2, 0),
            (q(-27, 1), 0, 2),
            (q(9, 1), 0, 0),
        ]);
        assert_eq!(h().partial_y(), expect);
        assert_eq!(h().partial_x().eval(&q(1, 1), &q(0, 1)), q(0, 1));
    }

    #[test]
    fn restriction_to_parabola() {
        // r(x) = (3/8)x²(21x⁴ − 66x² + 16x + 45)
        let curve = UniPoly::from_ints(&[1, 0, -1]);
        let r = h().along_curve(&curve);
        let expect = UniPoly::new(vec![
            q(0, 1),
            q(0, 1),
            q(135, 8),
            q(6, 1),
            q(-198, 8),
            q(0, 1),
            q(63, 8),
        ]);
        assert_eq!(r, expect);
    }

    #[test]
    fn pullback_agrees_pointwise() {
        let g = h().pullback_to_square();
        for (x, t) in [(0.3, 0.2), (0.9, 1.0), (0.5, 0.75)] {
            let y = t * (1.0 - x * x);
            assert!((g.eval_f64(x, t) - h().eval_f64(x, y)).abs() < 1e-13);
        }
    }

    #[test]
    fn resultant_of_simple_system() {
        // x − y and x + y − 1 meet at y = 1/2.
        let a = BivariatePoly::from_terms([(q(1, 1), 1, 0), (q(-1, 1), 0, 1)]);
        let b = BivariatePoly::from_terms([(q(1, 1), 1, 0), (q(1, 1), 0, 1), (q(-1, 1), 0, 0)]);
        let r = a.resultant_x(&b);
        assert_eq!(r.degree(), Some(1));
        assert!(r.eval(&q(1, 2)).is_zero());
    }

    #[test]
    fn resultant_of_critical_system_has_known_roots() {
        let hh = h();
        let r = hh.partial_x().resultant_x(&hh.partial_y());
        assert!(r.eval(&q(0, 1)).is_zero());
        assert!(r.eval_f64(1.0 / 3f64.sqrt()).abs() < 1e-6 * r.eval_f64(0.3).abs().max(1.0));
    }

    #[test]
    fn rendering() {
        assert_eq!(h().to_unicode(), "-9x⁴-(9/8)x²y²+6x³-9x²y-9y³+9x²+9y");
    }

    #[test]
    fn domain_membership() {
        let d = OmegaDomain;
        assert!(d.contains(&q(1, 2), &q(3, 4)));
        assert!(!d.contains(&q(1, 2), &q(76, 100)));
        assert!(d.contains(&q(1, 1), &q(0, 1)));
        assert!(!d.contains(&q(-1, 100), &q(0, 1)));
    }
}
