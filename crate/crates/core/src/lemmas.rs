//! Coefficient estimates for Schwarz functions `ω(z) = c₁z + c₂z² + ⋯`.
//!
//! * The Prokhorov–Szynal bound `|c₃ + μc₁c₂ + νc₁³| ≤ Φ(μ, ν)` on the
//!   seven regions `D₁…D₇` and the point `(2, 1)` where `Φ` is 1 or `|ν|`.
//! * Carlson's inequalities for `|c₂|`, `|c₃|`, `|c₄|`.
//! * Exact realizations of coefficient prefixes through Schur parameters.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Div, Mul, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Signed, Zero};
use rand::Rng;

use crate::scalar::to_f64;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    Point21,
    Uncovered,
}

impl Region {
    pub const COVERED: [Region; 8] = [
        Region::D1,
        Region::D2,
        Region::D3,
        Region::D4,
        Region::D5,
        Region::D6,
        Region::D7,
        Region::Point21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::D1 => "D1",
            Region::D2 => "D2",
            Region::D3 => "D3",
            Region::D4 => "D4",
            Region::D5 => "D5",
            Region::D6 => "D6",
            Region::D7 => "D7",
            Region::Point21 => "(2,1)",
            Region::Uncovered => "uncovered",
        }
    }
}

/// Region of `(μ, ν)` and the resulting value of `Φ`; `phi` is `None`
/// exactly when the region is [`Region::Uncovered`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub region: Region,
    pub phi: Option<f64>,
}

impl RegionVerdict {
    pub fn is_covered(&self) -> bool {
        self.region != Region::Uncovered
    }
}

/// Ordered field operations shared by `f64` and exact rationals.
pub trait RegionScalar:
    Clone
    + PartialOrd
    + Signed
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn ratio(n: i32, d: i32) -> Self {
        Self::from_i32(n).expect("small integer") / Self::from_i32(d).expect("small integer")
    }
    fn as_f64(&self) -> f64;
}

impl RegionScalar for f64 {
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl RegionScalar for BigRational {
    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

fn in_region<T: RegionScalar>(region: Region, mu: &T, nu: &T) -> bool {
    let m = mu.abs();
    let r = T::ratio;
    let one = r(1, 1);
    match region {
        Region::D1 => m <= r(1, 2) && -one.clone() <= *nu && *nu <= one,
        Region::D2 => {
            let t = m.clone() + one.clone();
            let lower = r(4, 27) * t.clone() * t.clone() * t.clone() - t;
            r(1, 2) <= m && m <= r(2, 1) && lower <= *nu && *nu <= one
        }
        Region::D3 => m <= r(1, 2) && *nu <= -one,
        Region::D4 => m >= r(1, 2) && *nu <= r(-2, 3) * (m + one),
        Region::D5 => m <= r(2, 1) && *nu >= one,
        Region::D6 => {
            let bound = r(1, 12) * (mu.clone() * mu.clone() + r(8, 1));
            r(2, 1) <= m && m <= r(4, 1) && *nu >= bound
        }
        Region::D7 => m >= r(4, 1) && *nu >= r(2, 3) * (m - one),
        Region::Point21 => *mu == r(2, 1) && *nu == one,
        Region::Uncovered => false,
    }
}

fn phi_for<T: RegionScalar>(region: Region, nu: &T) -> Option<f64> {
    match region {
        Region::D1 | Region::D2 | Region::Point21 => Some(1.0),
        Region::Uncovered => None,
        _ => Some(nu.abs().as_f64()),
    }
}

/// All listed regions containing `(μ, ν)`, boundaries closed.
pub fn matching_regions<T: RegionScalar>(mu: &T, nu: &T) -> Vec<Region> {
    Region::COVERED
        .iter()
        .copied()
        .filter(|&r| in_region(r, mu, nu))
        .collect()
}

/// First match in the order `D₁, …, D₇, (2,1)`.
pub fn classify_region_generic<T: RegionScalar>(mu: &T, nu: &T) -> RegionVerdict {
    let region = Region::COVERED
        .iter()
        .copied()
        .find(|&r| in_region(r, mu, nu))
        .unwrap_or(Region::Uncovered);
    RegionVerdict {
        region,
        phi: phi_for(region, nu),
    }
}

pub fn classify_region(mu: f64, nu: f64) -> RegionVerdict {
    classify_region_generic(&mu, &nu)
}

/// Exact classification for rational `(μ, ν)`; the cubic and quadratic
/// boundaries of `D₂` and `D₆` are decided without rounding.
pub fn classify_region_exact(mu: &BigRational, nu: &BigRational) -> RegionVerdict {
    classify_region_generic(mu, nu)
}

/// `Ψ = |c₃ + μc₁c₂ + νc₁³|`.
pub fn psi_eval(c: &[Complex64; 4], mu: f64, nu: f64) -> f64 {
    (c[2] + c[0] * c[1] * mu + c[0] * c[0] * c[0] * nu).norm()
}

/// Carlson's bounds at a given `|c₁|`. The `c₃` and `c₄` bounds also need
/// `|c₂|` and are exposed as methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlsonBounds {
    pub c1_abs: f64,
    /// `1 − |c₁|²`.
    pub c2_bound: f64,
}

impl CarlsonBounds {
    /// `1 − |c₁|² − |c₂|²/(1+|c₁|)`.
    pub fn c3_bound(&self, c2_abs: f64) -> f64 {
        self.c2_bound - c2_abs * c2_abs / (1.0 + self.c1_abs)
    }

    /// `1 − |c₁|² − |c₂|²`.
    pub fn c4_bound(&self, c2_abs: f64) -> f64 {
        self.c2_bound - c2_abs * c2_abs
    }
}

pub fn carlson_bounds(c1_abs: f64) -> CarlsonBounds {
    CarlsonBounds {
        c1_abs,
        c2_bound: 1.0 - c1_abs * c1_abs,
    }
}

/// Slack `bound − |c_k|` of the three Carlson inequalities, `k = 2, 3, 4`.
/// Negative entries are violations.
pub fn carlson_slack(c: &[Complex64; 4]) -> [f64; 3] {
    let b = carlson_bounds(c[0].norm());
    let c2 = c[1].norm();
    [b.c2_bound - c2, b.c3_bound(c2) - c[2].norm(), b.c4_bound(c2) - c[3].norm()]
}

pub fn check_carlson(c: &[Complex64; 4], tol: f64) -> bool {
    carlson_slack(c).iter().all(|&s| s >= -tol)
}

/// A Schwarz coefficient prefix `(c₁, …, c₄)` together with the Schur
/// parameters that realize it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzSample {
    pub c: [Complex64; 4],
    pub schur_params: [Complex64; 4],
}

impl SchwarzSample {
    /// Builds `ω(z) = z·φ₀(z)` from the Schur recursion
    /// `φ_k = (γ_k + zφ_{k+1})/(1 + γ̄_k zφ_{k+1})` with `φ₄ = 0`.
    ///
    /// Parameters outside the closed unit disk are radially projected onto it.
    pub fn from_schur(params: [Complex64; 4]) -> Self {
        let params = params.map(project_to_disk);
        let mut phi = TruncatedSeries::<Complex64>::zero(3);
        for gamma in params.iter().rev() {
            let zphi = phi.shift_up();
            let num = zphi.checked_add(&TruncatedSeries::constant(*gamma, 3)).expect("orders agree");
            let den = TruncatedSeries::one(3)
                .checked_add(&zphi.scale(&gamma.conj()))
                .expect("orders agree");
            // The denominator starts at 1, so it is always invertible.
            let inv = den.reciprocal().expect("unit constant term");
            phi = num.checked_mul(&inv).expect("orders agree");
        }
        let cs = phi.coeffs();
        Self {
            c: [cs[0], cs[1], cs[2], cs[3]],
            schur_params: params,
        }
    }

    pub fn zero() -> Self {
        Self::from_schur([Complex64::zero(); 4])
    }
}

/// Radial projection onto the closed unit disk.
pub fn project_to_disk(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 1.0 { z / r } else { z }
}

/// Area-uniform point of the closed unit disk.
pub fn uniform_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = Float::sqrt(rng.random::<f64>());
    let theta = 2.0 * PI * rng.random::<f64>();
    Complex64::from_polar(r, theta)
}

/// `count` samples with independent area-uniform Schur parameters.
pub fn sample_schwarz<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<SchwarzSample> {
    (0..count).map(|_| sample_one(rng)).collect()
}

pub fn sample_one<R: Rng + ?Sized>(rng: &mut R) -> SchwarzSample {
    let params = [0; 4].map(|_| uniform_disk(rng));
    SchwarzSample::from_schur(params)
}

/// The `(μ, ν)` pairs at which the bound pipelines invoke or classify the
/// Prokhorov–Szynal lemma, as exact rationals.
pub fn pipeline_pairs() -> Vec<(BigRational, BigRational)> {
    use crate::scalar::q;
    alloc::vec![
        (q(-5, 4), q(0, 1)),
        (q(-5, 8), q(0, 1)),
        (q(1, 2), q(0, 1)),
        (q(-1, 1), q(0, 1)),
        (q(-5, 16), q(0, 1)),
        (q(-15, 16), q(0, 1)),
        (q(13, 34), q(-13, 204)),
        (q(5, 11), q(-7, 44)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pipeline_invocations_classify() {
        assert_eq!(classify_region(-1.25, 0.0).region, Region::D2);
        assert_eq!(classify_region(0.5, 0.0).region, Region::D1);
        let v = classify_region_exact(&q(13, 34), &q(-13, 204));
        assert_eq!(v, RegionVerdict { region: Region::D1, phi: Some(1.0) });
        let v = classify_region(0.0, -2.0);
        assert_eq!(v, RegionVerdict { region: Region::D3, phi: Some(2.0) });
    }

    #[test]
    fn uncovered_is_a_value() {
        // Between D2's cubic lower boundary and D4's line.
        let v = classify_region(1.0, -1.0);
        assert_eq!(v.region, Region::Uncovered);
        assert_eq!(v.phi, None);
        assert!(!v.is_covered());
    }

    #[test]
    fn point_two_one_is_shadowed_by_d2() {
        assert_eq!(classify_region(2.0, 1.0).region, Region::D2);
        assert!(matching_regions(&2.0, &1.0).contains(&Region::Point21));
    }

    #[test]
    fn overlapping_regions_agree_on_phi() {
        // Sweep the shared boundaries.
        let mut checked = 0;
        for i in -400..=400 {
            for j in -400..=400 {
                let mu = f64::from(i) / 64.0;
                let nu = f64::from(j) / 64.0;
                let regions = matching_regions(&mu, &nu);
                if regions.len() < 2 {
                    continue;
                }
                let phis: Vec<f64> = regions.iter().map(|&r| phi_for(r, &nu).unwrap()).collect();
                assert!(
                    phis.iter().all(|p| (p - phis[0]).abs() < 1e-15),
                    "({mu}, {nu}) in {regions:?}"
                );
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn psi_values() {
        let zero = [Complex64::zero(); 4];
        assert_eq!(psi_eval(&zero, 3.0, -7.0), 0.0);
        let z3 = [Complex64::zero(), Complex64::zero(), Complex64::new(1.0, 0.0), Complex64::zero()];
        assert_eq!(psi_eval(&z3, -1.25, 0.0), 1.0);
    }

    #[test]
    fn carlson_shapes() {
        assert_eq!(carlson_bounds(0.0).c2_bound, 1.0);
        assert_eq!(carlson_bounds(1.0).c2_bound, 0.0);
        assert_eq!(carlson_bounds(0.5).c2_bound, 0.75);
        let zero = [Complex64::zero(); 4];
        assert!(check_carlson(&zero, 0.0));
        let bad = [Complex64::new(0.9, 0.0), Complex64::new(0.5, 0.0), Complex64::zero(), Complex64::zero()];
        assert!(!check_carlson(&bad, 1e-12));
    }

    #[test]
    fn schur_zero_and_rotation() {
        let s = SchwarzSample::zero();
        assert_eq!(s.c, [Complex64::zero(); 4]);
        let g = Complex64::new(0.3, -0.6);
        let s = SchwarzSample::from_schur([g, Complex64::zero(), Complex64::zero(), Complex64::zero()]);
        assert_eq!(s.c, [g, Complex64::zero(), Complex64::zero(), Complex64::zero()]);
    }

    #[test]
    fn degree_one_automorphism_matches_direct_expansion() {
        // ω(z) = z(a + bz)/(1 + āb z) = z(a + bz)Σ(−āb z)ⁿ.
        let a = Complex64::new(0.4, 0.2);
        let b = Complex64::new(-0.1, 0.7);
        let s = SchwarzSample::from_schur([a, b, Complex64::zero(), Complex64::zero()]);
        let r = -a.conj() * b;
        let direct = [a, b + a * r, (b + a * r) * r, (b + a * r) * r * r];
        for (k, (got, want)) in s.c.iter().zip(&direct).enumerate() {
            assert!((got - want).norm() < 1e-15, "c{}", k + 1);
        }
    }

    #[test]
    fn unimodular_parameter_terminates_recursion() {
        let g = Complex64::from_polar(1.0, 0.7);
        let s = SchwarzSample::from_schur([g, Complex64::new(0.5, 0.5), Complex64::new(0.1, 0.0), Complex64::zero()]);
        assert!((s.c[0] - g).norm() < 1e-15);
        for k in 1..4 {
            assert!(s.c[k].norm() < 1e-15);
        }
    }

    #[test]
    fn samples_satisfy_carlson() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in sample_schwarz(&mut rng, 2000) {
            assert!(check_carlson(&s.c, 1e-12), "{s:?}");
            for p in s.schur_params {
                assert!(p.norm() <= 1.0);
            }
        }
    }
}
