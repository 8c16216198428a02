//! The class 𝐱 as the degree of (s, t) ↦ lifted frame, by pullback-volume quadrature.

use crate::error::{LcError, Result};
use crate::families::FamilyGrid;
use crate::sphere::{lift_auto, DEFAULT_SAMPLES};
use nalgebra::Matrix4;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Degree {
    pub value: i64,
    pub integral: f64,
    pub residual: f64,
    pub m1: usize,
    pub m2: usize,
    pub nt: usize,
}

type Q = [f64; 4];

/// Lifts of the node curves of column i, each at nt + 1 times.
fn column(f: &FamilyGrid, i: usize, nt: usize) -> Result<Vec<Vec<Q>>> {
    let n0 = nt * DEFAULT_SAMPLES.div_ceil(nt);
    (0..=f.m2)
        .into_par_iter()
        .map(|j| {
            let l = lift_auto(&f.node(i, j), n0)?;
            Ok(l.subsample(l.n / nt).q.iter().map(|q| q.coords()).collect())
        })
        .collect()
}

fn slab(a: &[Vec<Q>], b: &[Vec<Q>], nt: usize) -> f64 {
    let m2 = a.len() - 1;
    let mut sum = 0.0;
    for j in 0..m2 {
        for k in 0..nt {
            let c = |di: usize, dj: usize, dk: usize| -> &Q { &(if di == 0 { a } else { b })[j + dj][k + dk] };
            let mut m = Matrix4::<f64>::zeros();
            for r in 0..4 {
                let v = [
                    c(0, 0, 0)[r], c(1, 0, 0)[r], c(0, 1, 0)[r], c(1, 1, 0)[r],
                    c(0, 0, 1)[r], c(1, 0, 1)[r], c(0, 1, 1)[r], c(1, 1, 1)[r],
                ];
                m[(r, 0)] = v.iter().sum::<f64>() / 8.0;
                m[(r, 1)] = (v[1] + v[3] + v[5] + v[7] - v[0] - v[2] - v[4] - v[6]) / 4.0;
                m[(r, 2)] = (v[2] + v[3] + v[6] + v[7] - v[0] - v[1] - v[4] - v[5]) / 4.0;
                m[(r, 3)] = (v[4] + v[5] + v[6] + v[7] - v[0] - v[1] - v[2] - v[3]) / 4.0;
            }
            sum += m.determinant();
        }
    }
    sum
}

/// (1/2π²) ∭ det[q, ∂₁q, ∂₂q, ∂ₜq] over the chart, on the family grid with nt time steps.
pub fn degree_integral(f: &FamilyGrid, nt: usize) -> Result<f64> {
    if nt == 0 {
        return Err(LcError::Config("degree needs at least one time step".into()));
    }
    let mut prev = column(f, 0, nt)?;
    let mut total = 0.0;
    for i in 1..=f.m1 {
        let next = column(f, i, nt)?;
        total += slab(&prev, &next, nt);
        prev = next;
    }
    Ok(total / (2.0 * std::f64::consts::PI.powi(2)))
}

pub fn degree_x(f: &FamilyGrid, nt: usize) -> Result<Degree> {
    let integral = degree_integral(f, nt)?;
    let value = integral.round();
    let residual = (integral - value).abs();
    if !(residual <= 0.1) {
        return Err(LcError::NonIntegerDegree { value: integral });
    }
    Ok(Degree { value: value as i64, integral, residual, m1: f.m1, m2: f.m2, nt })
}
