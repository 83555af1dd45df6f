//! CSV samples of the starlike `h` over `Ω`.

use std::io::{self, Write};

use hankel_core::bivariate::OmegaDomain;
use hankel_core::bounds::starlike_h;

use crate::format::sig17;
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridStats {
    pub rows: usize,
    pub max: f64,
}

/// Writes `x,y,h` for the nodes `(i/(n−1), j/(n−1))` that lie in `Ω`,
/// `x` in the outer loop.
pub fn write_grid<W: Write>(out: &mut W, resolution: usize, manifest: &RunManifest) -> io::Result<GridStats> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let h = starlike_h().to_float();
    writeln!(out, "{}", manifest.comment_line())?;
    writeln!(out, "x,y,h")?;
    let step = (resolution - 1) as f64;
    let mut stats = GridStats { rows: 0, max: f64::NEG_INFINITY };
    for i in 0..resolution {
        let x = i as f64 / step;
        for j in 0..resolution {
            let y = j as f64 / step;
            if !OmegaDomain.contains_f64(x, y) {
                continue;
            }
            let v = h.eval(x, y);
            writeln!(out, "{},{},{}", sig17(x), sig17(y), sig17(v))?;
            stats.rows += 1;
            stats.max = stats.max.max(v);
        }
    }
    Ok(stats)
}
