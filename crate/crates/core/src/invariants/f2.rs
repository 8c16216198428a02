//! Signed count of flowers in a two-parameter family by winding numbers of ψ₂.

use super::flowers::chart_psi;
use crate::error::{LcError, Result};
use crate::families::FamilyGrid;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Orientation of ℱ₂ fixed so that the count on 𝐠₊,₂ in its (s1, s2) chart is +1.
pub const F2_ORIENTATION: i64 = -1;

/// Minimum |ψ₂| allowed next to the edge of the evaluable region.
pub const MASK_MIN_PSI: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct F2Count {
    pub value: i64,
    /// Sum of winding numbers in the chart orientation, before the orientation constant.
    pub raw: i64,
    pub evaluable: usize,
    pub cells: usize,
    /// Smallest |ψ₂| at an evaluable sample next to a non-evaluable one.
    pub min_boundary_psi: f64,
    /// Chart points (u, v) of cells with nonzero winding and their winding.
    pub zeros: Vec<(f64, f64, i64)>,
}

fn angle_step(a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = b[1].atan2(b[0]) - a[1].atan2(a[0]);
    (d + PI).rem_euclid(2.0 * PI) - PI
}

/// Winding number of the closed polygon through `pts`.
fn winding(pts: &[[f64; 2]]) -> i64 {
    let n = pts.len();
    let total: f64 = (0..n).map(|i| angle_step(pts[i], pts[(i + 1) % n])).sum();
    (total / (2.0 * PI)).round() as i64
}

/// ψ₂ at the centres of the m1 × m2 cells; none outside the evaluable region.
pub fn psi_grid(f: &FamilyGrid) -> Vec<Vec<Option<[f64; 2]>>> {
    (0..f.m1)
        .into_par_iter()
        .map(|i| {
            (0..f.m2)
                .map(|j| chart_psi(&f.centre(i, j), 1).map(|p| [p.values[0], p.values[1]]))
                .collect()
        })
        .collect()
}

pub fn count_f2(f: &FamilyGrid) -> Result<F2Count> {
    count_on(f, &psi_grid(f))
}

/// Counts on a precomputed ψ₂ grid indexed [i][j] over cell centres.
pub fn count_on(f: &FamilyGrid, g: &[Vec<Option<[f64; 2]>>]) -> Result<F2Count> {
    let (m1, m2) = (f.m1, f.m2);
    let [pu, pv] = f.gluing.periodic;
    let at = |i: isize, j: isize| -> Option<Option<[f64; 2]>> {
        let i = if pu { i.rem_euclid(m1 as isize) } else { i };
        let j = if pv { j.rem_euclid(m2 as isize) } else { j };
        if i < 0 || j < 0 || i >= m1 as isize || j >= m2 as isize {
            return None;
        }
        Some(g[i as usize][j as usize])
    };
    let mut min_boundary = f64::INFINITY;
    let mut evaluable = 0;
    for i in 0..m1 as isize {
        for j in 0..m2 as isize {
            if let Some(Some(v)) = at(i, j) {
                evaluable += 1;
                let edge = [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().any(|(di, dj)| matches!(at(i + di, j + dj), Some(None)));
                if edge {
                    min_boundary = min_boundary.min(v[0].hypot(v[1]));
                }
            }
        }
    }
    if min_boundary < MASK_MIN_PSI {
        return Err(LcError::MaskBoundaryZero { min_psi: min_boundary });
    }
    let mut raw = 0;
    let mut cells = 0;
    let mut zeros = Vec::new();
    let iu = if pu { m1 } else { m1 - 1 };
    let jv = if pv { m2 } else { m2 - 1 };
    for i in 0..iu as isize {
        for j in 0..jv as isize {
            let loop_ = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if let [Some(Some(a)), Some(Some(b)), Some(Some(c)), Some(Some(d))] = loop_ {
                cells += 1;
                let w = winding(&[a, b, c, d]);
                if w != 0 {
                    raw += w;
                    zeros.push(((i as f64 + 1.0) / m1 as f64, (j as f64 + 1.0) / m2 as f64, w));
                }
            }
        }
    }
    // Caps around collapsed edges, closed up by the periodic axis.
    for axis in 0..2 {
        if !f.gluing.periodic[1 - axis] {
            continue;
        }
        for side in 0..2 {
            if !f.gluing.collapsed[axis][side] {
                continue;
            }
            let (len, fixed) = if axis == 0 { (m2, if side == 0 { 0 } else { m1 - 1 }) } else { (m1, if side == 0 { 0 } else { m2 - 1 }) };
            let ring: Option<Vec<[f64; 2]>> =
                (0..len).map(|k| if axis == 0 { g[fixed][k] } else { g[k][fixed] }).collect();
            if let Some(ring) = ring {
                cells += 1;
                let sign = if (axis == 1) == (side == 1) { 1 } else { -1 };
                let w = sign * winding(&ring);
                if w != 0 {
                    raw += w;
                    zeros.push(if axis == 0 { (side as f64, 0.5, w) } else { (0.5, side as f64, w) });
                }
            }
        }
    }
    Ok(F2Count { value: F2_ORIENTATION * raw, raw, evaluable, cells, min_boundary_psi: min_boundary, zeros })
}
