//! Global maximization of a polynomial `h(x, y)` over `Ω`.
//!
//! Interior critical points come from eliminating `x` between `h_x` and
//! `h_y` and isolating the real roots of the resultant exactly; a dense
//! Newton sweep cross-checks that nothing was missed. Each edge of `Ω` is a
//! univariate problem. A grid on the pullback of `Ω` to the unit square with
//! a Lipschitz margin confirms the final value.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::bivariate::{BivariatePoly, FloatBivariate, OmegaDomain};
use crate::error::{Error, Result};
use crate::scalar::q;
use crate::univariate::{UniPoly, isolate_real_roots, maximize_on_interval};

/// `g(y) = 2√((1 − 3y²)/(4 + y))`, the positive branch of `h_y = 0` for the
/// starlike `h`; `None` once `3y² > 1`.
pub fn critical_curve(y: f64) -> Option<f64> {
    let num = 1.0 - 3.0 * y * y;
    // Rounding of `1/√3` itself must still land on the curve.
    if num < -1e-12 {
        return None;
    }
    Some(2.0 * Float::sqrt(num.max(0.0) / (4.0 + y)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectedPoint {
    pub point: CriticalPoint,
    pub reason: String,
}

/// Everything the elimination produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalAnalysis {
    /// Resultant of `h_x` and `h_y` with respect to `x`.
    pub resultant: UniPoly,
    /// Its roots in `[0, 1]`.
    pub y_roots: Vec<f64>,
    pub interior: Vec<CriticalPoint>,
    pub rejected: Vec<RejectedPoint>,
    /// Converged starts of the Newton sweep that land in the open interior.
    pub sweep_hits: usize,
}

/// Edge-membership slack for classifying candidates.
const EDGE_EPS: f64 = 1e-9;

struct Gradient {
    h: FloatBivariate,
    hx: FloatBivariate,
    hy: FloatBivariate,
    hxx: FloatBivariate,
    hxy: FloatBivariate,
    hyy: FloatBivariate,
}

impl Gradient {
    fn new(h: &BivariatePoly) -> Self {
        let hx = h.partial_x();
        let hy = h.partial_y();
        Self {
            h: h.to_float(),
            hxx: hx.partial_x().to_float(),
            hxy: hx.partial_y().to_float(),
            hyy: hy.partial_y().to_float(),
            hx: hx.to_float(),
            hy: hy.to_float(),
        }
    }

    fn grad(&self, x: f64, y: f64) -> (f64, f64) {
        (self.hx.eval(x, y), self.hy.eval(x, y))
    }

    /// Newton iteration on `∇h = 0`. Returns the last iterate and whether
    /// the gradient fell below `tol`.
    fn newton(&self, mut x: f64, mut y: f64, iters: usize, tol: f64) -> (f64, f64, bool) {
        for _ in 0..iters {
            let (gx, gy) = self.grad(x, y);
            if gx.abs().max(gy.abs()) < tol {
                return (x, y, true);
            }
            let (a, b, d) = (self.hxx.eval(x, y), self.hxy.eval(x, y), self.hyy.eval(x, y));
            let det = a * d - b * b;
            if det.abs() < 1e-300 || !det.is_finite() {
                break;
            }
            x -= (d * gx - b * gy) / det;
            y -= (a * gy - b * gx) / det;
            if !(x.is_finite() && y.is_finite()) || x.abs() > 1e6 || y.abs() > 1e6 {
                break;
            }
        }
        let (gx, gy) = self.grad(x, y);
        (x, y, gx.abs().max(gy.abs()) < tol)
    }
}

fn classify(x: f64, y: f64) -> Option<String> {
    let gap = 1.0 - x * x;
    if x < -EDGE_EPS {
        Some(format!("x = {x:.6} < 0"))
    } else if x > 1.0 + EDGE_EPS {
        Some(format!("x = {x:.6} > 1"))
    } else if y < -EDGE_EPS {
        Some(format!("y = {y:.6} < 0"))
    } else if y > gap + EDGE_EPS {
        Some(format!("y = {y:.6} > 1 - x^2 = {gap:.6}"))
    } else if (x - 1.0).abs() <= EDGE_EPS && y.abs() <= EDGE_EPS {
        Some(String::from("corner (1, 0)"))
    } else if x.abs() <= EDGE_EPS {
        Some(String::from("on edge x = 0"))
    } else if y.abs() <= EDGE_EPS {
        Some(String::from("on edge y = 0"))
    } else if (y - gap).abs() <= EDGE_EPS {
        Some(String::from("on edge y = 1 - x^2"))
    } else {
        None
    }
}

fn push_unique(list: &mut Vec<CriticalPoint>, p: CriticalPoint) {
    if !list.iter().any(|q| (q.x - p.x).abs() < 1e-9 && (q.y - p.y).abs() < 1e-9) {
        list.push(p);
    }
}

/// Simultaneous zeros of `h_x` and `h_y` in the open interior of `Ω`, plus
/// the rejected candidates with the reason they fall outside.
pub fn interior_critical_points(h: &BivariatePoly, _domain: &OmegaDomain) -> Result<CriticalAnalysis> {
    let hx = h.partial_x();
    let hy = h.partial_y();
    let g = Gradient::new(h);
    let resultant = if hx.is_zero() || hy.is_zero() {
        UniPoly::zero()
    } else {
        hx.resultant_x(&hy)
    };
    if resultant.is_zero() {
        return Err(Error::NumericFailure {
            lo: 0.0,
            hi: 1.0,
            reason: "h_x and h_y share a common factor; critical set is not isolated".into(),
        });
    }
    let y_roots: Vec<f64> = if resultant.degree() == Some(0) {
        Vec::new()
    } else {
        isolate_real_roots(&resultant, &q(0, 1), &q(1, 1))?
            .into_iter()
            .map(|r| r.approx)
            .collect()
    };

    let mut candidates: Vec<CriticalPoint> = Vec::new();
    for &ys in &y_roots {
        let px = hx.at_y_f64(ys);
        let py = hy.at_y_f64(ys);
        let scale = |c: &[f64]| c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let (sx, sy) = (scale(&px), scale(&py));
        // Solve the better-conditioned restriction, test the other.
        let xs = if sy > 1e-12 {
            crate::univariate::float_roots(&py, -1.0, 2.0)
        } else if sx > 1e-12 {
            crate::univariate::float_roots(&px, -1.0, 2.0)
        } else {
            return Err(Error::NumericFailure {
                lo: ys,
                hi: ys,
                reason: "gradient vanishes along a whole horizontal line".into(),
            });
        };
        for x0 in xs {
            let (gx, gy) = g.grad(x0, ys);
            let tol = 1e-6 * (1.0 + sx.max(sy));
            if gx.abs() > tol || gy.abs() > tol {
                continue;
            }
            let (x, y, ok) = g.newton(x0, ys, 20, 1e-13);
            let (x, y) = if ok && (x - x0).abs() < 1e-6 && (y - ys).abs() < 1e-6 {
                (x, y)
            } else {
                (x0, ys)
            };
            push_unique(&mut candidates, CriticalPoint { x, y, value: g.h.eval(x, y) });
        }
    }

    let mut interior = Vec::new();
    let mut rejected = Vec::new();
    for p in candidates {
        match classify(p.x, p.y) {
            None => interior.push(p),
            Some(reason) => rejected.push(RejectedPoint { point: p, reason }),
        }
    }

    // Independent sweep: Newton from a grid of starts over the bounding box.
    let n = 41;
    let mut sweep_hits = 0;
    for i in 0..n {
        for j in 0..n {
            let x0 = i as f64 / (n - 1) as f64;
            let y0 = j as f64 / (n - 1) as f64;
            let (x, y, ok) = g.newton(x0, y0, 60, 1e-10);
            if !ok || classify(x, y).is_some() {
                continue;
            }
            sweep_hits += 1;
            if !interior.iter().any(|p| (p.x - x).abs() < 1e-6 && (p.y - y).abs() < 1e-6) {
                return Err(Error::NumericFailure {
                    lo: x,
                    hi: y,
                    reason: "Newton sweep found an interior critical point the elimination missed".into(),
                });
            }
        }
    }

    Ok(CriticalAnalysis {
        resultant,
        y_roots,
        interior,
        rejected,
        sweep_hits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `x = 0`, `0 ≤ y ≤ 1`.
    X0,
    /// `x = 1`; inside `Ω` this edge is the single point `(1, 0)`.
    X1,
    /// `y = 0`, `0 ≤ x ≤ 1`.
    Y0,
    /// `y = 1 − x²`, `0 ≤ x ≤ 1`.
    Parabola,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::X0, Edge::X1, Edge::Y0, Edge::Parabola];

    pub fn label(self) -> &'static str {
        match self {
            Edge::X0 => "x=0",
            Edge::X1 => "x=1",
            Edge::Y0 => "y=0",
            Edge::Parabola => "y=1-x^2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMaximum {
    pub edge: Edge,
    pub x: f64,
    pub y: f64,
    pub value: f64,
    /// The restriction of `h` to the edge, in the edge parameter.
    pub restriction: UniPoly,
}

/// Maxima of `h` along the four edges of `Ω`, corners included.
pub fn boundary_maxima(h: &BivariatePoly, _domain: &OmegaDomain) -> Result<Vec<EdgeMaximum>> {
    let zero = q(0, 1);
    let one = q(1, 1);
    let mut out = Vec::with_capacity(4);
    for edge in Edge::ALL {
        let (restriction, hi) = match edge {
            Edge::X0 => (h.at_x(&zero), one.clone()),
            Edge::X1 => (h.at_x(&one), zero.clone()),
            Edge::Y0 => (h.at_y(&zero), one.clone()),
            Edge::Parabola => (h.along_curve(&UniPoly::from_ints(&[1, 0, -1])), one.clone()),
        };
        let (t, value, _) = maximize_on_interval(&restriction, &zero, &hi)?;
        let (x, y) = match edge {
            Edge::X0 => (0.0, t),
            Edge::X1 => (1.0, t),
            Edge::Y0 => (t, 0.0),
            Edge::Parabola => (t, 1.0 - t * t),
        };
        out.push(EdgeMaximum { edge, x, y, value, restriction });
    }
    Ok(out)
}

/// Grid evaluation of `h(x, t(1 − x²))` on the unit square with spacing
/// `δ`; any point of `Ω` is within `δ/2` of a node in each coordinate, so
/// `sup h ≤ grid_max + (L_x + L_t)·δ/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCertificate {
    pub resolution: usize,
    pub grid_max: f64,
    pub lipschitz: (f64, f64),
    pub slack: f64,
    pub claimed: f64,
    pub passed: bool,
}

impl GridCertificate {
    /// Upper bound for `sup h` implied by the grid alone.
    pub fn certified_upper(&self) -> f64 {
        self.grid_max + self.slack
    }
}

pub fn grid_certificate(h: &BivariatePoly, claimed: f64, resolution: usize) -> Result<GridCertificate> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!("grid resolution {resolution} < 2")));
    }
    let pulled = h.pullback_to_square();
    let lipschitz = pulled.lipschitz_on_unit_square();
    let hf = h.to_float();
    let step = 1.0 / (resolution - 1) as f64;
    let mut grid_max = f64::NEG_INFINITY;
    for i in 0..resolution {
        let x = i as f64 * step;
        let gap = 1.0 - x * x;
        for j in 0..resolution {
            let t = j as f64 * step;
            grid_max = grid_max.max(hf.eval(x, t * gap));
        }
    }
    let slack = (lipschitz.0 + lipschitz.1) * step / 2.0;
    let passed = claimed >= grid_max - 1e-12 && claimed <= grid_max + slack;
    Ok(GridCertificate {
        resolution,
        grid_max,
        lipschitz,
        slack,
        claimed,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMaximum {
    pub value: f64,
    pub argmax: (f64, f64),
    pub critical: CriticalAnalysis,
    pub boundary: Vec<EdgeMaximum>,
    pub certificate: GridCertificate,
}

/// Default grid for [`maximize_on_omega`].
pub const CERTIFICATE_RESOLUTION: usize = 1001;

/// Global maximum of `h` over `Ω` from interior critical points and edge
/// maxima, confirmed by a grid certificate.
pub fn maximize_on_omega(h: &BivariatePoly) -> Result<OmegaMaximum> {
    let domain = OmegaDomain;
    let critical = interior_critical_points(h, &domain)?;
    let boundary = boundary_maxima(h, &domain)?;
    let mut best = (f64::NEG_INFINITY, (0.0, 0.0));
    for p in &critical.interior {
        if p.value > best.0 {
            best = (p.value, (p.x, p.y));
        }
    }
    for e in &boundary {
        if e.value > best.0 {
            best = (e.value, (e.x, e.y));
        }
    }
    let certificate = grid_certificate(h, best.0, CERTIFICATE_RESOLUTION)?;
    if !certificate.passed {
        return Err(Error::NumericFailure {
            lo: certificate.grid_max,
            hi: certificate.certified_upper(),
            reason: format!("claimed maximum {} is not confirmed by the grid", best.0),
        });
    }
    Ok(OmegaMaximum {
        value: best.0,
        argmax: best.1,
        critical,
        boundary,
        certificate,
    })
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
    fn curve_values() {
        assert!(critical_curve(1.0 / 3f64.sqrt()).unwrap().abs() < 1e-7);
        assert_eq!(critical_curve(0.0), Some(1.0));
        assert!((critical_curve(0.1541).unwrap() - 0.94567).abs() < 1e-4);
        assert_eq!(critical_curve(0.9), None);
    }

    #[test]
    fn no_interior_critical_points() {
        let a = interior_critical_points(&h(), &OmegaDomain).unwrap();
        assert!(a.interior.is_empty(), "{:?}", a.interior);
        assert_eq!(a.sweep_hits, 0);
        let r = a
            .rejected
            .iter()
            .find(|r| (r.point.y - 0.154_105_827_830_974).abs() < 1e-9)
            .expect("y1 candidate");
        assert!((r.point.x - 0.94567).abs() < 1e-5);
        assert!(r.reason.contains("> 1 - x^2 = 0.1057"), "{}", r.reason);
        for y in [0.0, 0.154_105_827_830_974, 0.553_554_272_088_804, 0.577_350_269_189_626] {
            assert!(a.y_roots.iter().any(|r| (r - y).abs() < 1e-11), "{y} in {:?}", a.y_roots);
        }
    }

    #[test]
    fn paraboloid_has_one_interior_point() {
        let p = BivariatePoly::from_terms([
            (q(-1, 1), 2, 0),
            (q(1, 1), 1, 0),
            (q(-1, 1), 0, 2),
            (q(1, 2), 0, 1),
            (q(-5, 16), 0, 0),
        ]);
        let a = interior_critical_points(&p, &OmegaDomain).unwrap();
        assert_eq!(a.interior.len(), 1);
        let c = a.interior[0];
        assert!((c.x - 0.5).abs() < 1e-12 && (c.y - 0.25).abs() < 1e-12 && c.value.abs() < 1e-12);
        let m = maximize_on_omega(&p).unwrap();
        assert!(m.value.abs() < 1e-12);
    }

    #[test]
    fn edges_match_hand_analysis() {
        let b = boundary_maxima(&h(), &OmegaDomain).unwrap();
        let by = |e| b.iter().find(|m| m.edge == e).unwrap();
        assert!((by(Edge::X0).value - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((by(Edge::X0).y - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(by(Edge::X1).value, 6.0);
        assert_eq!(by(Edge::Y0).value, 6.0);
        assert!((by(Edge::Parabola).value - 6.003_764_890_074_21).abs() < 1e-12);
        assert!((by(Edge::Parabola).x - 0.948_541_886_184_435).abs() < 1e-12);
    }

    #[test]
    fn global_maximum_is_certified() {
        let m = maximize_on_omega(&h()).unwrap();
        assert!((m.value - 6.003_764_890_074_21).abs() < 1e-12);
        assert!(m.certificate.passed);
        assert!(m.certificate.grid_max <= m.value + 1e-12);
    }

    #[test]
    fn shared_factor_is_reported() {
        // (x − y)² has a whole line of critical points.
        let p = BivariatePoly::from_terms([(q(1, 1), 2, 0), (q(-2, 1), 1, 1), (q(1, 1), 0, 2)]);
        assert!(matches!(
            interior_critical_points(&p, &OmegaDomain),
            Err(Error::NumericFailure { .. })
        ));
    }

    #[test]
    fn bad_resolution() {
        assert!(grid_certificate(&h(), 6.0, 1).is_err());
    }
}
