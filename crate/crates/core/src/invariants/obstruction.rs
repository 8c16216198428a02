//! Flower counts on the boundary data of the would-be lift of 𝐡.

use super::f2::{count_f2, F2Count};
use super::flowers::is_flower;
use crate::error::Result;
use crate::families::{complete_with_arc, g_plus_2, h0_lift, nu, DiskPoint, FamilyGrid, Gluing, G_PLUS_2_FLOWER};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    /// Flower count of the bottom disk family.
    pub bottom: F2Count,
    pub sides_checked: usize,
    pub side_flowers: usize,
    pub tails_checked: usize,
    pub tail_flowers: usize,
    /// Largest distance from ν₄ on [1/2, 1] among the tailed curves.
    pub tail_gap: f64,
}

impl ObstructionReport {
    pub fn passes(&self) -> [bool; 3] {
        [self.bottom.value == 1, self.side_flowers == 0, self.tail_flowers == 0 && self.tail_gap < 1e-8]
    }
}

/// Bottom of the cylinder: complete_with_arc(h̃₀(·, 0), 0) on the polar disk chart.
pub fn bottom_family(m1: usize, m2: usize) -> Result<FamilyGrid> {
    FamilyGrid::new("bottom", m1, m2, Gluing::DISK, |r, w| {
        let p = DiskPoint { r, theta: 2.0 * PI * w };
        let c = h0_lift(p, 0.0).expect("s = 0 is in X2");
        complete_with_arc(&c, 0.0).expect("g_plus_2 lies in L+1")
    })
}

pub fn obstruction_check(grid: usize, sides: usize, tails: usize, seed: u64) -> Result<ObstructionReport> {
    let bottom = count_f2(&bottom_family(grid, grid)?)?;
    let mut side_flowers = 0;
    for i in 0..=sides {
        let s = i as f64 / sides as f64;
        let c = complete_with_arc(&h0_lift(DiskPoint { r: 1.0, theta: 0.0 }, s)?, s)?;
        if is_flower(&c)?.is_some() {
            side_flowers += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu4 = nu(4.0)?;
    let mut tail_flowers = 0;
    let mut tail_gap: f64 = 0.0;
    for i in 0..tails {
        let (s1, s2) = if i == 0 { G_PLUS_2_FLOWER } else { (rng.gen::<f64>(), rng.gen::<f64>()) };
        let c = complete_with_arc(&g_plus_2(s1, s2), 1.0)?;
        for k in 0..=256 {
            let t = 0.5 + 0.5 * k as f64 / 256.0;
            tail_gap = tail_gap.max((c.point(t) - nu4.point(t)).norm());
        }
        if is_flower(&c)?.is_some() {
            tail_flowers += 1;
        }
    }
    Ok(ObstructionReport { bottom, sides_checked: sides + 1, side_flowers, tails_checked: tails, tail_flowers, tail_gap })
}
