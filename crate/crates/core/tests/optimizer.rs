use hankel_core::bivariate::OmegaDomain;
use hankel_core::bounds::starlike_h;
use hankel_core::optimize::{boundary_maxima, maximize_on_omega, Edge};

#[test]
fn certified_max_dominates_a_fine_grid() {
    let h = starlike_h();
    let m = maximize_on_omega(&h).unwrap();
    let hf = h.to_float();
    let n = 2000;
    let mut grid_max = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = i as f64 / n as f64;
        for j in 0..=n {
            let y = j as f64 / n as f64;
            if OmegaDomain.contains_f64(x, y) {
                grid_max = grid_max.max(hf.eval(x, y));
            }
        }
    }
    assert!(grid_max <= m.value + 1e-12, "{grid_max} > {}", m.value);
    assert!(m.value <= grid_max + m.certificate.slack);
}

#[test]
fn edge_values() {
    let b = boundary_maxima(&starlike_h(), &OmegaDomain).unwrap();
    let want = [(Edge::X0, 2.0 * 3f64.sqrt()), (Edge::X1, 6.0), (Edge::Y0, 6.0), (Edge::Parabola, 6.003_76)];
    for (edge, v) in want {
        let got = b.iter().find(|e| e.edge == edge).unwrap();
        assert!((got.value - v).abs() < 1e-4, "{edge:?}: {}", got.value);
    }
}
