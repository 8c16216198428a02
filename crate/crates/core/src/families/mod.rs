//! Explicit curves, families, loop operators and homotopies.

mod basic;
mod homolift;
mod plus2;
mod splice;

pub use basic::{
    check_immersed, closed_at_e1, concat, frame_derivative_bound, frame_derivatives, great_circle, homotopy_h1,
    homotopy_h2, loop_add, loop_bound_curves, nu, nu1_jet, nu1_perturbation_radius, nu_jet, LoopBound, FRAME_STEP,
};
pub use homolift::{complete_with_arc, h0_lift, h_map, nu1_frame, nu1_frame_lift, DiskPoint};
pub use plus2::{
    alpha_rot, big_gamma, check_path_alpha, disk_wrap, g_2, g_2_flower, g_plus_2, g_plus_2_jet, g_square, gamma_s,
    gamma_s_jet, path_alpha, path_longitude, square_chart, square_chart_inverse, third_turn, G_PLUS_2_FLOWER,
};
pub use splice::{g_plus_2k_point, r_matrix, renorm, splice, I1, I2};

use crate::error::{LcError, Result};
use crate::sphere::Curve;
use std::fmt;
use std::sync::Arc;

type Chart = dyn Fn(f64, f64) -> Curve + Send + Sync;

/// A closed parameter interval strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSupport {
    lo: f64,
    hi: f64,
}

impl IntervalSupport {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(LcError::DomainError(format!("interval [{lo}, {hi}] not inside (0, 1)")));
        }
        Ok(IntervalSupport { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// How the chart square [0,1]² closes up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Gluing {
    /// Axis 0 (u) or axis 1 (v) wraps around.
    pub periodic: [bool; 2],
    /// collapsed[axis][side]: the edge {axis = side} maps to a single curve.
    pub collapsed: [[bool; 2]; 2],
}

impl Gluing {
    /// Left and right glued, top and bottom collapsed to poles.
    pub const SPHERE: Gluing = Gluing { periodic: [true, false], collapsed: [[false, false], [true, true]] };
    /// The whole boundary maps to one curve.
    pub const SQUARE: Gluing = Gluing { periodic: [false, false], collapsed: [[true, true], [true, true]] };
    /// Polar disk chart (r, θ/2π): the centre and the rim are each one curve.
    pub const DISK: Gluing = Gluing { periodic: [false, true], collapsed: [[true, true], [false, false]] };
}

/// A map from the chart square into curve space, sampled on an m1 × m2 grid.
#[derive(Clone)]
pub struct FamilyGrid {
    pub name: String,
    pub m1: usize,
    pub m2: usize,
    pub gluing: Gluing,
    chart: Arc<Chart>,
}

impl fmt::Debug for FamilyGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilyGrid")
            .field("name", &self.name)
            .field("m1", &self.m1)
            .field("m2", &self.m2)
            .field("gluing", &self.gluing)
            .finish()
    }
}

impl FamilyGrid {
    pub fn new<F>(name: &str, m1: usize, m2: usize, gluing: Gluing, chart: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Curve + Send + Sync + 'static,
    {
        if m1 == 0 || m2 == 0 {
            return Err(LcError::Config(format!("family grid {m1}x{m2} is empty")));
        }
        Ok(FamilyGrid { name: name.to_string(), m1, m2, gluing, chart: Arc::new(chart) })
    }

    /// Same chart on another grid.
    pub fn with_grid(&self, m1: usize, m2: usize) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(LcError::Config(format!("family grid {m1}x{m2} is empty")));
        }
        Ok(FamilyGrid { m1, m2, ..self.clone() })
    }

    /// Member at the chart point (u, v).
    pub fn curve(&self, u: f64, v: f64) -> Curve {
        (self.chart)(u, v)
    }

    /// Member at node (i/m1, j/m2).
    pub fn node(&self, i: usize, j: usize) -> Curve {
        self.curve(i as f64 / self.m1 as f64, j as f64 / self.m2 as f64)
    }

    /// Member at the centre of cell (i, j).
    pub fn centre(&self, i: usize, j: usize) -> Curve {
        self.curve((i as f64 + 0.5) / self.m1 as f64, (j as f64 + 0.5) / self.m2 as f64)
    }

    /// Same family with the u axis reversed.
    pub fn reflected(&self) -> Self {
        let inner = self.chart.clone();
        FamilyGrid {
            name: format!("reflected({})", self.name),
            chart: Arc::new(move |u, v| inner(1.0 - u, v)),
            gluing: Gluing {
                collapsed: [[self.gluing.collapsed[0][1], self.gluing.collapsed[0][0]], self.gluing.collapsed[1]],
                ..self.gluing
            },
            ..self.clone()
        }
    }

    /// ν₂ ∗ f pointwise.
    pub fn nu2_star(&self) -> Self {
        let inner = self.chart.clone();
        let nu2 = nu(2.0).expect("positive speed");
        FamilyGrid {
            name: format!("nu2*{}", self.name),
            chart: Arc::new(move |u, v| concat(&nu2, &inner(u, v)).expect("family members are closed")),
            ..self.clone()
        }
    }

    /// Largest pointwise gap between members at chart points the gluing identifies.
    pub fn identification_gap(&self, samples: usize, n: usize) -> f64 {
        let gap = |a: &Curve, b: &Curve| -> f64 {
            (0..=n).map(|k| {
                let t = k as f64 / n as f64;
                (a.point(t) - b.point(t)).norm()
            }).fold(0.0, f64::max)
        };
        let mut worst: f64 = 0.0;
        for s in 0..=samples {
            let w = s as f64 / samples as f64;
            let w2 = (s as f64 + 0.37) / (samples as f64 + 1.0);
            for axis in 0..2 {
                let at = |x: f64, y: f64| if axis == 0 { self.curve(x, y) } else { self.curve(y, x) };
                if self.gluing.periodic[axis] {
                    worst = worst.max(gap(&at(0.0, w), &at(1.0, w)));
                }
                for side in 0..2 {
                    if self.gluing.collapsed[axis][side] {
                        worst = worst.max(gap(&at(side as f64, w), &at(side as f64, w2)));
                    }
                }
            }
        }
        worst
    }

    /// Checks the closure contract on every node.
    pub fn check_closed(&self) -> Result<()> {
        for i in 0..=self.m1 {
            for j in 0..=self.m2 {
                let c = self.node(i, j);
                if !c.is_closed() {
                    return Err(LcError::NotClosed(c.source().to_string()));
                }
            }
        }
        Ok(())
    }

    /// All node curves in row-major order over (i, j).
    pub fn nodes(&self) -> Vec<Curve> {
        let mut out = Vec::with_capacity((self.m1 + 1) * (self.m2 + 1));
        for i in 0..=self.m1 {
            for j in 0..=self.m2 {
                out.push(self.node(i, j));
            }
        }
        out
    }

    /// Least even n > 20 C / ε over the node curves.
    pub fn loop_bound(&self, seed: u64) -> Result<LoopBound> {
        loop_bound_curves(&self.nodes(), seed)
    }

    /// 𝐠₊,₂ on its (s1, s2) chart.
    pub fn g_plus_2(m1: usize, m2: usize) -> Result<Self> {
        FamilyGrid::new("g_plus_2", m1, m2, Gluing::SPHERE, g_plus_2)
    }

    /// 𝐠₂ on [0,1]².
    pub fn g_2(m1: usize, m2: usize) -> Result<Self> {
        FamilyGrid::new("g_2", m1, m2, Gluing::SQUARE, g_2)
    }

    /// 𝐠₊,₂ ∘ disk_wrap on the polar chart (r, θ/2π).
    pub fn disk(m1: usize, m2: usize) -> Result<Self> {
        FamilyGrid::new("disk", m1, m2, Gluing::DISK, |r, w| {
            let (s1, s2) = disk_wrap(r, 2.0 * std::f64::consts::PI * w);
            g_plus_2(s1, s2)
        })
    }

    /// Constant family.
    pub fn constant(c: Curve, m1: usize, m2: usize) -> Result<Self> {
        let name = format!("constant({})", c.source());
        FamilyGrid::new(&name, m1, m2, Gluing::SQUARE, move |_, _| c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_support_bounds() {
        assert!(IntervalSupport::new(1.0 / 6.0, 2.0 / 6.0).is_ok());
        assert!(IntervalSupport::new(0.0, 0.5).is_err());
        assert!(IntervalSupport::new(0.5, 0.4).is_err());
    }

    #[test]
    fn g_plus_2_identifications() {
        let f = FamilyGrid::g_plus_2(8, 8).unwrap();
        assert!(f.identification_gap(12, 256) < 1e-8);
        f.check_closed().unwrap();
    }

    #[test]
    fn disk_and_square_identifications() {
        assert!(FamilyGrid::disk(4, 4).unwrap().identification_gap(8, 256) < 1e-8);
        assert!(FamilyGrid::g_2(4, 4).unwrap().identification_gap(8, 256) < 1e-8);
    }

    #[test]
    fn reflection_reverses_u() {
        let f = FamilyGrid::g_plus_2(4, 4).unwrap();
        let r = f.reflected();
        let (a, b) = (f.curve(0.2, 0.6), r.curve(0.8, 0.6));
        assert!((a.point(0.3) - b.point(0.3)).norm() < 1e-15);
    }
}
