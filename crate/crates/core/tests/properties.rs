use lconvex::config::parse_grid;
use lconvex::descriptor::Descriptor;
use lconvex::families::{g_plus_2, nu, nu_jet};
use lconvex::invariants::{classify, phi};
use lconvex::sphere::{frenet_frame, local_convexity_margin, rot_to_quat, rotation_about, Curve, CurveJet, UnitQuat, Vec3};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn axis() -> impl Strategy<Value = Vec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
        .prop_map(|(x, y, z)| Vec3::new(x, y, z).normalize())
}

fn quat() -> impl Strategy<Value = UnitQuat> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("nonzero", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-2)
        .prop_map(|(w, x, y, z)| {
            let n = (w * w + x * x + y * y + z * z).sqrt();
            UnitQuat::new(w / n, x / n, y / n, z / n)
        })
}

/// ν_n composed with t ↦ t + a sin(2πt)/2π, increasing for |a| < 1.
fn reparametrized_nu(n: f64, a: f64) -> Curve {
    Curve::new("nu_reparam", &[("c", n), ("a", a)], move |t| {
        let s = t + a * (TAU * t).sin() / TAU;
        let d1 = 1.0 + a * (TAU * t).cos();
        let d2 = -a * TAU * (TAU * t).sin();
        let j = nu_jet(n, s);
        CurveJet::new(j.p, j.v * d1, j.a * (d1 * d1) + j.v * d2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frenet_frame_is_rotation_equivariant(ax in axis(), angle in -3.0..3.0f64, c in 0.5..4.0f64, t in 0.0..1.0f64) {
        let r = rotation_about(&ax, angle);
        let j = nu_jet(c, t);
        let lhs = frenet_frame(&j.rotate(&r)).unwrap();
        let rhs = r * frenet_frame(&j).unwrap();
        prop_assert!((lhs - rhs).abs().max() < 1e-12);
    }

    #[test]
    fn frenet_frame_ignores_positive_rescaling(c in 0.5..4.0f64, t in 0.0..1.0f64, k in 0.1..10.0f64) {
        let j = nu_jet(c, t);
        let a = frenet_frame(&j).unwrap();
        let b = frenet_frame(&j.rescale(k)).unwrap();
        prop_assert!((a - b).abs().max() < 1e-12);
    }

    #[test]
    fn quaternion_round_trip(q in quat()) {
        let back = rot_to_quat(&q.to_rot()).unwrap();
        prop_assert!(back.w >= 0.0);
        prop_assert!(back.dist(&q).min(back.dist(&q.neg())) < 1e-10);
    }

    #[test]
    fn quaternion_product_matches_rotation_product(p in quat(), q in quat()) {
        let lhs = p.mul(&q).to_rot();
        let rhs = p.to_rot() * q.to_rot();
        prop_assert!((lhs - rhs).abs().max() < 1e-12);
    }

    #[test]
    fn parse_grid_round_trip(a in 1usize..1000, b in 1usize..1000) {
        prop_assert_eq!(parse_grid(&format!("{a}x{b}")).unwrap(), [a, b]);
        prop_assert_eq!(parse_grid(&format!("{a}×{b}")).unwrap(), [a, b]);
    }

    #[test]
    fn descriptor_display_round_trip(s1 in 0.0..1.0f64, s2 in 0.0..1.0f64) {
        let d = Descriptor::parse(&format!("g_plus_2 s1={s1} s2={s2}")).unwrap();
        let again = Descriptor::parse(&d.to_string()).unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert!(!d.is_family());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn class_survives_reparametrization(n in 1u32..=4, a in -0.6..0.6f64) {
        let c = reparametrized_nu(n as f64, a);
        prop_assert_eq!(classify(&c).unwrap(), classify(&nu(n as f64).unwrap()).unwrap());
    }

    #[test]
    fn closed_nu_lifts_to_plus_or_minus_one(n in 1u32..=6) {
        let q = phi(&nu(n as f64).unwrap()).unwrap();
        let want = if n % 2 == 0 { UnitQuat::ONE } else { UnitQuat::ONE.neg() };
        prop_assert!(q.dist(&want) < 1e-6);
    }

    #[test]
    fn g_plus_2_members_are_locally_convex_and_lift_to_one(s1 in 0.0..1.0f64, s2 in 0.0..1.0f64) {
        let c = g_plus_2(s1, s2);
        prop_assert!(c.is_closed());
        prop_assert!(local_convexity_margin(&c, 4096) > 0.0);
        prop_assert!(phi(&c).unwrap().dist(&UnitQuat::ONE) < 1e-5);
    }
}
