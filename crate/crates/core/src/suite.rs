//! The verification suite: ten criteria, each a list of report records.

use crate::config::RunConfig;
use crate::descriptor::FLOWER_DISK_POINT;
use crate::error::{LcError, Result};
use crate::families::{
    big_gamma, check_immersed, concat, g_2_flower, g_plus_2, g_plus_2k_point, gamma_s, h0_lift,
    h_map, homotopy_h1, homotopy_h2, loop_add, nu, nu1_frame, nu1_jet, renorm, splice, third_turn, DiskPoint,
    FamilyGrid, IntervalSupport, I1, I2,
};
use crate::invariants::{
    chart_psi, classify, count_f2, degree_x, is_convex, is_flower, is_simple, obstruction_check, phi, ComponentClass,
};
use crate::report::Record;
use crate::sphere::{frenet_frame, local_convexity_margin_at, Curve, UnitQuat, Vec3, MAX_SAMPLES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

pub type Criterion = fn(&RunConfig) -> Vec<Record>;

pub const CRITERIA: [(u8, &str, Criterion); 10] = [
    (1, "component table", component_table),
    (2, "closed-form frame", closed_form_frame),
    (3, "family validity", family_validity),
    (4, "degree", degree),
    (5, "flower count", flower_count),
    (6, "loop lemma", loop_lemma),
    (7, "multiplicativity", multiplicativity),
    (8, "lifting obstruction", obstruction),
    (9, "renormalization and splicing", renormalization),
    (10, "detector cross-validation", cross_validation),
];

/// Runs the selected criteria (all when `only` is empty) in order.
pub fn run(cfg: &RunConfig, only: &[u8]) -> Vec<Record> {
    let mut out = Vec::new();
    for (k, _, f) in CRITERIA.iter() {
        if only.is_empty() || only.contains(k) {
            let start = Instant::now();
            let mut rs = f(cfg);
            if cfg.record_timing {
                let s = start.elapsed().as_secs_f64();
                for r in &mut rs {
                    r.seconds = Some(s);
                }
            }
            out.extend(rs);
        }
    }
    out
}

/// Criterion number of a record id such as `c4.degree_g_plus_2`.
pub fn criterion_of(r: &Record) -> Option<u8> {
    r.criterion.strip_prefix('c')?.split('.').next()?.parse().ok()
}

fn on_c0(p: &Vec3) -> f64 {
    (p.x + p.z - 1.0).abs() + (p.y * p.y - 2.0 * p.x * p.z).abs()
}

fn sign_q(n: usize) -> UnitQuat {
    if n % 2 == 0 {
        UnitQuat::ONE
    } else {
        UnitQuat::ONE.neg()
    }
}

fn margin(c: &Curve, n: usize) -> f64 {
    local_convexity_margin_at(c, n).0
}

pub fn component_table(_cfg: &RunConfig) -> Vec<Record> {
    use ComponentClass::*;
    let want = [MinusConvex, Plus, MinusNonConvex, Plus, MinusNonConvex, Plus];
    let run = || -> Result<(Vec<String>, f64)> {
        let mut got = Vec::new();
        let mut worst: f64 = 0.0;
        for n in 1..=6 {
            let c = nu(n as f64)?;
            got.push(classify(&c)?.to_string());
            worst = worst.max(phi(&c)?.dist(&sign_q(n)));
        }
        Ok((got, worst))
    };
    let expected: Vec<String> = want.iter().map(|c| c.to_string()).collect();
    vec![match run() {
        Ok((got, worst)) => {
            let ok = got == expected && worst < 1e-5;
            Record::new("c1.component_table", got, expected, ok).residual(worst, 1e-5).resolution("nu_1..nu_6")
        }
        Err(e) => Record::error("c1.component_table", &e, expected),
    }]
}

pub fn closed_form_frame(cfg: &RunConfig) -> Vec<Record> {
    let tol = cfg.tolerances.frame;
    let run = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..256 {
            let c = i as f64 / 256.0;
            let d = frenet_frame(&nu1_jet(c))? - nu1_frame(c);
            worst = worst.max(d.abs().max());
        }
        Ok(worst)
    };
    vec![match run() {
        Ok(w) => Record::new("c2.nu1_frame", w, 0.0, w < tol).residual(w, tol).resolution("256 values of c"),
        Err(e) => Record::error("c2.nu1_frame", &e, 0.0),
    }]
}

pub fn family_validity(cfg: &RunConfig) -> Vec<Record> {
    let n = cfg.samples;
    let m = (0..64).into_par_iter().map(|i| margin(&gamma_s(i as f64 / 63.0), n)).reduce(|| f64::INFINITY, f64::min);
    let tm = cfg.tolerances.margin;
    let a = Record::new("c3.gamma_s_margin", m, format!("> {tm}"), m > tm).resolution(format!("64 values of s, N={n}"));
    let tr = third_turn();
    let mut worst: f64 = 0.0;
    for i in 0..64 {
        for j in 0..64 {
            let (s, t) = (i as f64 / 63.0, j as f64 / 64.0);
            worst = worst.max((big_gamma(s, t + 1.0 / 3.0) - tr * big_gamma(s, t)).abs().max());
        }
    }
    let ti = cfg.tolerances.identity;
    let b = Record::new("c3.third_turn_identity", worst, 0.0, worst < ti).residual(worst, ti).resolution("64x64");
    vec![a, b]
}

fn degree_record(id: &str, f: &FamilyGrid, nt: usize, want: i64, tol: f64) -> (Record, Option<f64>) {
    let res = format!("{}x{}x{}", f.m1, f.m2, nt);
    match degree_x(f, nt) {
        Ok(d) => {
            let ok = d.value == want && d.residual < tol;
            (Record::new(id, d.value, want, ok).residual(d.residual, tol).resolution(res), Some(d.residual))
        }
        Err(e) => (Record::error(id, &e, want).resolution(res), None),
    }
}

pub fn degree(cfg: &RunConfig) -> Vec<Record> {
    let m = cfg.degree_grid;
    let tol = cfg.tolerances.degree_residual;
    let fam = FamilyGrid::g_plus_2(m, m).and_then(|f| Ok((f.clone(), f.with_grid(2 * m, 2 * m)?)));
    let (f, f2) = match fam {
        Ok(x) => x,
        Err(e) => return vec![Record::error("c4.degree_g_plus_2", &e, 1)],
    };
    let (rec, r1) = degree_record("c4.degree_g_plus_2", &f, m, 1, tol);
    let mut out = vec![rec];
    if cfg.long {
        let (mut rec2, r2) = degree_record("c4.degree_g_plus_2_doubled", &f2, 2 * m, 1, tol);
        if let (Some(r1), Some(r2)) = (r1, r2) {
            let ok = rec2.passed() && r2 * 2.0 <= r1;
            rec2.status = crate::report::Status::from_bool(ok);
            rec2.expected = serde_json::json!({"value": 1, "residual_at_most": r1 / 2.0});
        }
        out.push(rec2);
    }
    out
}

fn f2_record(id: &str, f: Result<FamilyGrid>, want: i64) -> Record {
    match f.and_then(|f| Ok((count_f2(&f)?, f.m1, f.m2))) {
        Ok((c, m1, m2)) => Record::new(id, c.value, want, c.value == want)
            .residual(c.min_boundary_psi, crate::invariants::MASK_MIN_PSI)
            .resolution(format!("{m1}x{m2}")),
        Err(e) => Record::error(id, &e, want),
    }
}

pub fn flower_count(cfg: &RunConfig) -> Vec<Record> {
    let [a, b] = cfg.grid;
    let m = cfg.degree_grid;
    let g2 = FamilyGrid::g_2(m, m);
    let deg = match g2 {
        Ok(f) => degree_record("c5.degree_g_2", &f, m, 0, cfg.tolerances.degree_residual).0,
        Err(e) => Record::error("c5.degree_g_2", &e, 0),
    };
    vec![
        f2_record("c5.f2_g_plus_2", FamilyGrid::g_plus_2(a, b), 1),
        f2_record("c5.f2_nu2_g_plus_2", FamilyGrid::g_plus_2(a, b).map(|f| f.nu2_star()), 0),
        f2_record("c5.f2_g_2", FamilyGrid::g_2(a, b), 1),
        deg,
    ]
}

pub fn loop_lemma(cfg: &RunConfig) -> Vec<Record> {
    let m = cfg.loop_grid;
    let fam = match FamilyGrid::g_plus_2(m, m) {
        Ok(f) => f,
        Err(e) => return vec![Record::error("c6.loop_margin", &e, "> 0")],
    };
    let lb = match fam.loop_bound(cfg.seed) {
        Ok(lb) => lb,
        Err(e) => return vec![Record::error("c6.loop_margin", &e, "> 0")],
    };
    let tm = cfg.tolerances.margin;
    let margins: Result<Vec<f64>> =
        fam.nodes().par_iter().map(|c| Ok(margin(&loop_add(c, 2 * lb.n)?, MAX_SAMPLES))).collect();
    let a = match margins {
        Ok(ms) => {
            let w = ms.iter().cloned().fold(f64::INFINITY, f64::min);
            Record::new("c6.loop_margin", w, format!("> {tm}"), w > tm)
                .resolution(format!("{m}x{m} family, n={}, loops={}, N={MAX_SAMPLES}", lb.n, 2 * lb.n))
        }
        Err(e) => Record::error("c6.loop_margin", &e, "> 0"),
    };
    let tol = cfg.tolerances.identity;
    let probe = [g_plus_2(0.3, 0.4), fam.node(m / 3, m / 2), fam.node(3 * m / 4, 3 * m / 4)];
    let run = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        let k = 4096;
        let gap = |x: &Curve, y: &Curve| -> f64 {
            (0..=k).map(|i| i as f64 / k as f64).map(|t| (x.point(t) - y.point(t)).norm()).fold(0.0, f64::max)
        };
        for c in &probe {
            let n = lb.n;
            worst = worst.max(gap(&homotopy_h1(c, n, 0.0)?, &loop_add(c, 2 * n)?));
            worst = worst.max(gap(&homotopy_h1(c, n, 1.0)?, &homotopy_h2(c, n, 0.0)?));
            worst = worst.max(gap(&homotopy_h2(c, n, 1.0)?, &concat(&nu(2.0 * n as f64)?, c)?));
            for i in 0..=8 {
                let s = i as f64 / 8.0;
                check_immersed(&homotopy_h1(c, n, s)?, k)?;
                check_immersed(&homotopy_h2(c, n, s)?, k)?;
            }
        }
        Ok(worst)
    };
    let b = match run() {
        Ok(w) => Record::new("c6.homotopy_junctions", w, 0.0, w < tol)
            .residual(w, tol)
            .resolution(format!("3 curves, 9 stages each, n={}", lb.n)),
        Err(e) => Record::error("c6.homotopy_junctions", &e, 0.0),
    };
    vec![a, b]
}

pub fn multiplicativity(cfg: &RunConfig) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pick = move || -> Result<Curve> {
        if rng.gen_bool(0.5) {
            nu(rng.gen_range(1..=6) as f64)
        } else {
            Ok(g_plus_2(rng.gen(), rng.gen()))
        }
    };
    let tol = cfg.tolerances.phi;
    let mut run = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let (a, b) = (pick()?, pick()?);
            let lhs = phi(&concat(&a, &b)?)?;
            let rhs = phi(&a)?.mul(&phi(&b)?);
            worst = worst.max(lhs.dist(&rhs));
        }
        Ok(worst)
    };
    vec![match run() {
        Ok(w) => Record::new("c7.phi_of_concat", w, 0.0, w < tol).residual(w, tol).resolution("50 pairs"),
        Err(e) => Record::error("c7.phi_of_concat", &e, 0.0),
    }]
}

/// max |φ(h̃₀(p, s)) − h(p, s)| over the disk and the side of the X₂ grid.
pub fn h_lift_gap(n_theta: usize, n_r: usize) -> Result<f64> {
    let mut pts = Vec::new();
    for i in 0..n_theta {
        let theta = 2.0 * PI * i as f64 / n_theta as f64;
        for j in 1..=n_r {
            let x = j as f64 / n_r as f64;
            pts.push((DiskPoint { r: x, theta }, 0.0));
            pts.push((DiskPoint { r: 1.0, theta }, x));
        }
    }
    let gaps: Result<Vec<f64>> = pts.par_iter().map(|&(p, s)| Ok(phi(&h0_lift(p, s)?)?.dist(&h_map(p, s)))).collect();
    Ok(gaps?.into_iter().fold(0.0, f64::max))
}

pub fn obstruction(cfg: &RunConfig) -> Vec<Record> {
    let tol = cfg.tolerances.h_lift;
    let a = match h_lift_gap(32, 16) {
        Ok(g) => Record::new("c8.phi_h0_equals_h", g, 0.0, g < tol).residual(g, tol).resolution("32x16"),
        Err(e) => Record::error("c8.phi_h0_equals_h", &e, 0.0),
    };
    let m = cfg.obstruction_grid;
    let mut out = vec![a];
    match obstruction_check(m, 32, cfg.tails, cfg.seed) {
        Ok(r) => {
            let [i, ii, iii] = r.passes();
            out.push(
                Record::new("c8.bottom_flower_count", r.bottom.value, 1, i)
                    .residual(r.bottom.min_boundary_psi, crate::invariants::MASK_MIN_PSI)
                    .resolution(format!("{m}x{m}")),
            );
            out.push(
                Record::new("c8.side_flowers", r.side_flowers, 0, ii).resolution(format!("{} curves", r.sides_checked)),
            );
            out.push(
                Record::new("c8.tail_flowers", r.tail_flowers, 0, iii)
                    .residual(r.tail_gap, 1e-8)
                    .resolution(format!("{} curves", r.tails_checked)),
            );
        }
        Err(e) => out.push(Record::error("c8.boundary_flowers", &e, "items (i)-(iii)")),
    }
    out
}

pub fn renormalization(cfg: &RunConfig) -> Vec<Record> {
    let n = cfg.samples;
    let tm = cfg.tolerances.margin;
    let tc = cfg.tolerances.c0;
    let params = [(5.0, 1.0), (0.25, -2.0), (3.0, 0.0), (40.0, 60.0), (0.1, 0.3)];
    let run_renorm = || -> Result<(f64, f64)> {
        let mut worst_c0: f64 = 0.0;
        let mut min_margin = f64::INFINITY;
        for &(a, b) in &params {
            for c in [nu(1.0)?, g_plus_2(0.3, 0.4), nu(3.0)?] {
                let d = renorm(&c, a, b)?;
                min_margin = min_margin.min(margin(&d, n));
                if c.source().tag == "nu" && c.source().params[0].1 == 1.0 {
                    for i in 0..=n {
                        worst_c0 = worst_c0.max(on_c0(&d.point(i as f64 / n as f64)));
                    }
                }
            }
        }
        Ok((min_margin, worst_c0))
    };
    let mut out = Vec::new();
    match run_renorm() {
        Ok((mm, c0)) => {
            out.push(Record::new("c9.renorm_margin", mm, format!("> {tm}"), mm > tm).resolution(format!("N={n}")));
            out.push(Record::new("c9.renorm_c0", c0, 0.0, c0 < tc).residual(c0, tc).resolution(format!("N={n}")));
        }
        Err(e) => out.push(Record::error("c9.renorm", &e, "margin > 0, C0 preserved")),
    }
    let ts = cfg.tolerances.support;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let inserts: Vec<Curve> = (0..4).map(|_| g_plus_2(rng.gen(), rng.gen())).collect();
    let run_splice = || -> Result<(f64, f64)> {
        let mut outside: f64 = 0.0;
        let mut min_margin = f64::INFINITY;
        for c in &inserts {
            for iv in [I1, I2] {
                let iv = IntervalSupport::new(iv.0, iv.1)?;
                let s = splice(c, iv)?;
                min_margin = min_margin.min(margin(&s, n));
                for i in 0..=n {
                    let t = i as f64 / n as f64;
                    if t < iv.lo() || t > iv.hi() {
                        outside = outside.max(on_c0(&s.point(t)));
                    }
                }
            }
        }
        Ok((outside, min_margin))
    };
    match run_splice() {
        Ok((d, mm)) => out.push(
            Record::new("c9.splice_support", d, 0.0, d < ts && mm > tm)
                .residual(d, ts)
                .resolution(format!("4 inserts x 2 intervals, N={n}, min margin {mm:.3e}")),
        ),
        Err(e) => out.push(Record::error("c9.splice_support", &e, 0.0)),
    }
    let tl = cfg.tolerances.lift;
    let five = || -> Result<(Option<usize>, f64)> {
        let (x, y) = g_2_flower();
        let c = g_plus_2k_point(2, FLOWER_DISK_POINT, &[x, y])?;
        let petals = is_flower(&c)?.map(|r| r.petal_count);
        Ok((petals, phi(&c)?.dist(&UnitQuat::ONE.neg())))
    };
    out.push(match five() {
        Ok((p, d)) => Record::new("c9.five_petal_flower", p, 5, p == Some(5) && d < tl).residual(d, tl),
        Err(e) => Record::error("c9.five_petal_flower", &e, 5),
    });
    out
}

/// ν₁ … ν₆ and the 10×10 cell centres of the 𝐠₊,₂ chart.
pub fn detector_sample() -> Result<Vec<Curve>> {
    let mut out: Vec<Curve> = (1..=6).map(|n| nu(n as f64)).collect::<Result<_>>()?;
    for i in 0..10 {
        for j in 0..10 {
            out.push(g_plus_2((i as f64 + 0.5) / 10.0, (j as f64 + 0.5) / 10.0));
        }
    }
    Ok(out)
}

pub fn cross_validation(cfg: &RunConfig) -> Vec<Record> {
    let curves = match detector_sample() {
        Ok(c) => c,
        Err(e) => return vec![Record::error("c10.convex_iff_simple", &e, 0)],
    };
    let tol = cfg.tolerances.psi_zero;
    let rows: Vec<Result<(bool, bool, bool, bool)>> = curves
        .par_iter()
        .map(|c| {
            let convex = is_convex(c)?;
            let simple = is_simple(c)?;
            let zero = chart_psi(c, 1).is_some_and(|p| p.norm() < tol);
            let flower = is_flower(c)?.is_some_and(|r| r.petal_count == 3);
            Ok((convex, simple, zero, flower))
        })
        .collect();
    let rows: Result<Vec<_>> = rows.into_iter().collect();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return vec![Record::error("c10.convex_iff_simple", &e, 0)],
    };
    let names: Vec<String> = curves.iter().map(|c| c.source().to_string()).collect();
    let bad_a: Vec<&String> = rows.iter().zip(&names).filter(|(r, _)| r.0 != r.1).map(|(_, n)| n).collect();
    let bad_b: Vec<&String> = rows.iter().zip(&names).filter(|(r, _)| r.2 != r.3).map(|(_, n)| n).collect();
    let flowers = rows.iter().filter(|r| r.3).count();
    let res = format!("{} curves", curves.len());
    vec![
        Record::new("c10.convex_iff_simple", bad_a.len(), 0, bad_a.is_empty()).resolution(res.clone()),
        Record::new("c10.psi_zero_iff_flower", serde_json::json!({"mismatches": bad_b, "flowers": flowers}), 0, bad_b.is_empty() && flowers > 0)
            .residual(0.0, tol)
            .resolution(res),
    ]
}

/// Fails with a configuration error before any criterion runs.
pub fn check(cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.grid[0] < 2 || cfg.grid[1] < 2 {
        return Err(LcError::Config("flower-count grid needs at least 2x2 cells".into()));
    }
    Ok(())
}
