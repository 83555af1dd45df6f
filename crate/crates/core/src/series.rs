//! Truncated power series `a₀ + a₁z + ⋯ + a_N z^N`.
//!
//! Every operation keeps exactly `N + 1` coefficients; products and
//! compositions drop terms above `z^N` explicitly. Binary operations require
//! both operands to share the same truncation order.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Coefficient> TruncatedSeries<S> {
    /// The zero series of order `order`.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    /// The constant series `c`.
    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The series `z` (or `0` when `order == 0`).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = S::one();
        }
        s
    }

    /// Builds a series from leading coefficients. Missing coefficients are
    /// zero; coefficients beyond `order` are discarded.
    pub fn truncated(coeffs: impl IntoIterator<Item = S>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^k`; `k` must not exceed the truncation order.
    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, value: S) {
        self.coeffs[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.clone() * b.clone();
                let slot = &mut out.coeffs[i + j];
                *slot = slot.clone() + prod;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Multiplication by `z`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[1..].clone_from_slice(&self.coeffs[..n]);
        out
    }

    /// The Euler operator `z·d/dz`: coefficient `k` scaled by `k`.
    pub fn z_derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * S::from_ratio(k as i64, 1))
                .collect(),
        }
    }

    /// `s(−z)`: coefficient `k` multiplied by `(−1)^k`.
    pub fn negate_argument(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_recip().ok_or(Error::NonInvertible)?;
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc + a.clone() * out.coeffs[m - k].clone();
                }
            }
            out.coeffs[m] = -(acc * inv0.clone());
        }
        Ok(out)
    }

    /// `self ∘ inner`, evaluated by Horner's rule with truncation at each step.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.checked_mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// `√(1 + self)` with value `1` at the origin, via `s² = 1 + a`.
    pub fn sqrt1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.order();
        let half = S::from_ratio(1, 2);
        let mut out = Self::one(n);
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                acc = acc - out.coeffs[k].clone() * out.coeffs[m - k].clone();
            }
            out.coeffs[m] = acc * half.clone();
        }
        Ok(out)
    }

    /// `exp(self)`, via `m·e_m = Σ k·a_k·e_{m−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.order();
        let mut out = Self::one(n);
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = acc + S::from_ratio(k as i64, 1) * a.clone() * out.coeffs[m - k].clone();
                }
            }
            out.coeffs[m] = acc * S::from_ratio(1, m as i64);
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map<T: Coefficient>(&self, f: impl FnMut(&S) -> T) -> TruncatedSeries<T> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}
