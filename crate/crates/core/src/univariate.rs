//! Dense univariate polynomials over exact rationals and real root isolation
//! by Sturm sequences.
//!
//! Isolation is exact: brackets are rationals and the root count in every
//! bracket is decided by sign variations of the Sturm chain. Only the final
//! approximation is rounded to `f64`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{q, to_f64};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    /// Coefficient of `x^k` at index `k`; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder of Euclidean division; `divisor` nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let t = &rem[k + d] / &lead;
            if t.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &t * c;
            }
            quot[k] = t;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }

    /// `p(a + b·x)` for the affine substitution.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let lin = Self::new(vec![a.clone(), b.clone()]);
        self.compose(&lin)
    }

    /// `p(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }
}

/// The Sturm chain `p₀ = p, p₁ = p', p_{k+1} = −rem(p_{k−1}, p_k)`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-BigRational::one()));
        }
        Self { chain }
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A real root bracketed by `[lo, hi]` with `hi − lo` below the requested
/// width. `lo == hi` when the root is rational and was hit exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub approx: f64,
}

impl RealRoot {
    fn exact(x: BigRational) -> Self {
        Self {
            approx: to_f64(&x),
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Default bracket width for [`isolate_real_roots`].
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// All distinct real roots of `p` in the closed interval `[lo, hi]`, in
/// increasing order, each bracketed to width below `1e-12`.
pub fn isolate_real_roots(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> Result<Vec<RealRoot>> {
    isolate_real_roots_to(p, lo, hi, &q(1, 1_000_000_000_000))
}

pub fn isolate_real_roots_to(
    p: &UniPoly,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("root isolation of the zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "degenerate interval [{}, {}]",
            to_f64(lo),
            to_f64(hi)
        )));
    }
    let sf = p.squarefree();
    let sturm = SturmChain::new(&sf);
    let mut roots = Vec::new();
    if sf.eval(lo).is_zero() {
        roots.push(RealRoot::exact(lo.clone()));
    }
    // Roots in (lo, hi]; bisect until each piece holds exactly one.
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut isolated = Vec::new();
    let mut guard = 0usize;
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count(&a, &b);
        match n {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                guard += 1;
                if guard > 10_000 {
                    return Err(Error::NumericFailure {
                        lo: to_f64(&a),
                        hi: to_f64(&b),
                        reason: "root separation did not terminate".into(),
                    });
                }
                let m = (&a + &b) / q(2, 1);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    for (a, b) in isolated {
        roots.push(refine(&sf, a, b, width)?);
    }
    roots.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap_or(Ordering::Equal));
    Ok(roots)
}

/// Refines the unique root of the squarefree `p` in `(a, b]`.
fn refine(p: &UniPoly, mut a: BigRational, mut b: BigRational, width: &BigRational) -> Result<RealRoot> {
    let fb = p.eval(&b);
    if fb.is_zero() {
        return Ok(RealRoot::exact(b));
    }
    let sign_b = fb.is_positive();
    let mut steps = 0;
    while &b - &a > *width {
        let m = (&a + &b) / q(2, 1);
        let fm = p.eval(&m);
        if fm.is_zero() {
            return Ok(RealRoot::exact(m));
        }
        // A simple root in (a, b) with p(b) ≠ 0: the sign changes on the side
        // whose endpoint signs differ.
        if fm.is_positive() == sign_b {
            b = m;
        } else {
            a = m;
        }
        steps += 1;
        if steps > 400 {
            return Err(Error::NumericFailure {
                lo: to_f64(&a),
                hi: to_f64(&b),
                reason: "bisection did not converge".into(),
            });
        }
    }
    let approx = to_f64(&((&a + &b) / q(2, 1)));
    Ok(RealRoot { lo: a, hi: b, approx })
}

/// Maximum of `p` on `[lo, hi]` over its critical points and the endpoints.
/// Returns `(argmax, max)`. For a degenerate interval the endpoint is used.
pub fn maximize_on_interval(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> Result<(f64, f64, Vec<RealRoot>)> {
    let mut candidates = vec![to_f64(lo), to_f64(hi)];
    let mut exact_values = vec![Some(p.eval(lo)), Some(p.eval(hi))];
    let mut crit = Vec::new();
    let dp = p.derivative();
    if lo < hi && !dp.is_zero() {
        crit = isolate_real_roots(&dp, lo, hi)?;
        for r in &crit {
            candidates.push(r.approx);
            exact_values.push(r.is_exact().then(|| p.eval(&r.lo)));
        }
    }
    let mut best = (candidates[0], f64::NEG_INFINITY);
    for (x, exact) in candidates.iter().zip(&exact_values) {
        let v = match exact {
            Some(e) => to_f64(e),
            None => p.eval_f64(*x),
        };
        if v > best.1 {
            best = (*x, v);
        }
    }
    Ok((best.0, best.1, crit))
}

/// Real roots of a polynomial with `f64` coefficients in `[lo, hi]`, by
/// splitting at the roots of the derivative and bisecting monotone pieces.
pub fn float_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    while c.last().is_some_and(|v| v.abs() <= 1e-14 * scale) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
    let mut knots = vec![lo];
    knots.extend(float_roots(&deriv, lo, hi).into_iter().filter(|x| *x > lo && *x < hi));
    knots.push(hi);
    let tol = 1e-11 * scale.max(1.0);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (eval(a), eval(b));
        if fa.abs() <= tol {
            roots.push(a);
            continue;
        }
        if fb.abs() <= tol {
            continue;
        }
        if (fa > 0.0) == (fb > 0.0) {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            let fm = eval(m);
            if fm == 0.0 || b - a < 1e-15 {
                a = m;
                b = m;
                break;
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if eval(hi).abs() <= tol {
        roots.push(hi);
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-10);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let r = isolate_real_roots(&p, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].approx - core::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(to_f64(&(&r[0].hi - &r[0].lo)) < 1e-12);
    }

    #[test]
    fn boundary_cubic_factor() {
        let p = UniPoly::from_ints(&[-15, -23, 21, 21]);
        let r = isolate_real_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].approx - 0.948_541_886_184_435).abs() < 1e-12);
    }

    #[test]
    fn inverse_sqrt_three() {
        let p = UniPoly::from_ints(&[2, 0, -6]);
        let r = isolate_real_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].approx - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn endpoint_and_repeated_roots() {
        // x²(x − 1)³(x − 1/2)
        let p = UniPoly::from_ints(&[0, 0, 1])
            .mul(&UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-1, 1])).mul(&UniPoly::from_ints(&[-1, 1])))
            .mul(&UniPoly::new(vec![q(-1, 2), q(1, 1)]));
        let r = isolate_real_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        let xs: Vec<f64> = r.iter().map(|r| r.approx).collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
        assert!(r.iter().all(RealRoot::is_exact));
    }

    #[test]
    fn argument_errors() {
        let p = UniPoly::from_ints(&[1, 1]);
        assert!(isolate_real_roots(&p, &q(1, 1), &q(1, 1)).is_err());
        assert!(isolate_real_roots(&UniPoly::zero(), &q(0, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn close_roots_are_separated() {
        // (x − 1/3)(x − 1/3 − 10⁻⁹)
        let a = q(1, 3);
        let b = &a + q(1, 1_000_000_000);
        let p = UniPoly::new(vec![-a.clone(), q(1, 1)]).mul(&UniPoly::new(vec![-b.clone(), q(1, 1)]));
        let r = isolate_real_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn float_roots_of_cubic() {
        let r = float_roots(&[-15.0, -23.0, 21.0, 21.0], 0.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.948_541_886_184_435).abs() < 1e-12);
        let r = float_roots(&[0.0, -1.0, 0.0, 1.0], -2.0, 2.0);
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn interval_maximum() {
        // 9y(1 − y²) on [0, 1] peaks at 2√3.
        let p = UniPoly::from_ints(&[0, 9, 0, -9]);
        let (x, v, _) = maximize_on_interval(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert!((x - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((v - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }
}
