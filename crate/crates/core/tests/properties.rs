//! Property tests: randomized invariants of the expression engine, the
//! frame computation, the direction-space detection and the integrator.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use helixlab_core::curve::Curve;
use helixlab_core::expr::{parse, var_set, Bindings, Expr};
use helixlab_core::geodesic::integrate_geodesic;
use helixlab_core::helix_space::{helix_angle, helix_directions};
use helixlab_core::jet::Jet;
use helixlab_core::scene::gallery_surface;
use helixlab_core::SamplePlan;

fn eval_plain(e: &Expr, t: f64) -> f64 {
    e.eval_value(&[("t".to_string(), t)]).unwrap()
}

/// Symbolic derivative chain evaluated pointwise: the oracle for jet
/// coefficients.
fn symbolic_derivatives(e: &Expr, t: f64, order: usize) -> Vec<f64> {
    let mut out = vec![eval_plain(e, t)];
    let mut d = e.clone();
    for _ in 0..order {
        d = d.derivative("t");
        out.push(eval_plain(&d, t));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Jet derivatives of random polynomials up to degree 6 agree with the
    /// symbolic derivative chain to order 4.
    #[test]
    fn jets_match_symbolic_on_polynomials(
        coeffs in proptest::collection::vec(-3.0f64..3.0, 1..=7),
        t in -2.0f64..2.0,
    ) {
        let mut expr = Expr::constant(coeffs[0]);
        for (k, &c) in coeffs.iter().enumerate().skip(1) {
            let term = Expr::constant(c).mul(Expr::Binary(
                helixlab_core::expr::BinOp::Pow,
                Box::new(Expr::var("t")),
                Box::new(Expr::constant(k as f64)),
            ));
            expr = expr.add(term);
        }
        let binds = vec![("t".to_string(), Jet::<f64>::variable(t, 4))];
        let jet = expr.eval_jet(&Bindings::new(&binds)).unwrap();
        let sym = symbolic_derivatives(&expr, t, 4);
        for (j, &expect) in sym.iter().enumerate() {
            let got = jet.derivative(j);
            let scale = 1.0f64.max(expect.abs()).max(got.abs());
            prop_assert!(
                (got - expect).abs() <= 1e-12 * scale,
                "order {j}: jet {got} vs symbolic {expect}"
            );
        }
    }

    /// Jet first derivatives of a smooth transcendental family agree with
    /// central finite differences.
    #[test]
    fn jets_match_finite_differences(
        a in -2.0f64..2.0,
        b in -1.0f64..1.0,
        c in -1.0f64..1.0,
        t in -1.5f64..1.5,
    ) {
        let text = format!("sin({a}*t+{b})*exp(t*{c}/4) + cosh(t/8) - t^3/7");
        let expr = parse(&text, &var_set(&["t"])).unwrap();
        let binds = vec![("t".to_string(), Jet::<f64>::variable(t, 1))];
        let jet = expr.eval_jet(&Bindings::new(&binds)).unwrap();
        let h = 1e-5;
        let fd = (eval_plain(&expr, t + h) - eval_plain(&expr, t - h)) / (2.0 * h);
        let scale = 1.0f64.max(fd.abs());
        prop_assert!((jet.derivative(1) - fd).abs() <= 1e-6 * scale);
    }

    /// Printing a parsed tree and re-parsing it is idempotent.
    #[test]
    fn parse_print_parse_is_idempotent(e in arb_expr()) {
        let vars = var_set(&["t", "u"]);
        let once = parse(&e.to_string(), &vars).unwrap();
        let twice = parse(&once.to_string(), &vars).unwrap();
        prop_assert_eq!(&once, &twice, "printed form `{}`", once);
    }

    /// Frames of a randomly proportioned circular helix are orthonormal
    /// through the valid depth and reproduce the closed-form curvatures.
    #[test]
    fn helix_family_frames(
        a in 0.3f64..2.0,
        bslope in 0.2f64..2.0,
        t in 0.0f64..6.0,
    ) {
        let c = Curve::parse(
            &[
                &format!("{a}*cos(t)"),
                &format!("{a}*sin(t)"),
                &format!("{bslope}*t"),
            ],
            "t",
            (0.0, 7.0),
        )
        .unwrap();
        let fr = c.frenet(t).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((fr.frame[i].dot(&fr.frame[j]) - expect).abs() <= 1e-9);
            }
        }
        let denom = a * a + bslope * bslope;
        prop_assert!((fr.curvature(1).unwrap() - a / denom).abs() < 1e-9);
        prop_assert!((fr.curvature(2).unwrap() - bslope / denom).abs() < 1e-9);
    }

    /// Frames and curvatures are equivariant under random rigid motions.
    #[test]
    fn frenet_rigid_motion_equivariance(
        entries in proptest::collection::vec(-1.0f64..1.0, 9),
        shift in proptest::collection::vec(-3.0f64..3.0, 3),
        t in 0.2f64..5.0,
    ) {
        let raw = DMatrix::from_vec(3, 3, entries);
        prop_assume!(raw.clone().determinant().abs() > 1e-3);
        let mut q = raw.qr().q();
        if q.determinant() < 0.0 {
            let col = q.column(0) * -1.0;
            q.set_column(0, &col);
        }
        let b = DVector::from_vec(shift);
        let c = Curve::parse(&["cos(t)", "sin(t)", "t"], "t", (0.0, 6.0)).unwrap();
        let moved = c.transformed(&q, &b);
        let fr = c.frenet(t).unwrap();
        let fr_m = moved.frenet(t).unwrap();
        for i in 1..=2 {
            prop_assert!(
                (fr.curvature(i).unwrap() - fr_m.curvature(i).unwrap()).abs() <= 1e-9
            );
        }
        for i in 0..3 {
            prop_assert!(((&q * &fr.frame[i]) - &fr_m.frame[i]).norm() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Normalized combinations of detected directions are again directions
    /// at a constant angle (the space is closed under spans).
    #[test]
    fn direction_space_is_a_subspace(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        prop_assume!(a.abs() + b.abs() > 0.1);
        let s = gallery_surface::<f64>("generalized-cylinder-e4", &BTreeMap::new()).unwrap();
        let plan = SamplePlan::default();
        let h = helix_directions(&s, &plan, 1e-6).unwrap();
        prop_assert_eq!(h.basis.len(), 2);
        let combo = (&h.basis[0] * a + &h.basis[1] * b).normalize();
        let res = helix_angle(&s, &combo, &plan, 1e-6).unwrap();
        prop_assert!(res.is_constant, "residual {}", res.residual);
    }

    /// Running a geodesic backwards from its endpoint returns to the start.
    #[test]
    fn geodesic_reversibility(du in 0.3f64..1.0, dv in -0.8f64..0.8) {
        let s = gallery_surface::<f64>("sphere", &BTreeMap::new()).unwrap();
        let fwd = integrate_geodesic(&s, &[0.1, 0.05], &[du, dv], 1.5, 2e-3).unwrap();
        let end = fwd.end().clone();
        let back: Vec<f64> = end.param_velocity.iter().map(|w| -w).collect();
        let bwd = integrate_geodesic(&s, &end.u, &back, 1.5, 2e-3).unwrap();
        let gap = (&bwd.end().position - &fwd.start().position).norm();
        prop_assert!(gap < 1e-6, "return gap {gap}");
    }
}

/// Random expression trees over variables `t`, `u` with bounded depth.
fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-1000.0f64..1000.0).prop_map(Expr::constant),
        Just(Expr::var("t")),
        Just(Expr::var("u")),
    ];
    leaf.prop_recursive(4, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| e.neg()),
            (inner.clone(), inner.clone(), 0usize..5).prop_map(|(a, b, op)| {
                use helixlab_core::expr::BinOp::*;
                let op = [Add, Sub, Mul, Div, Pow][op];
                Expr::Binary(op, Box::new(a), Box::new(b))
            }),
            (inner, 0usize..8).prop_map(|(a, f)| {
                use helixlab_core::expr::UnaryFn::*;
                let f = [Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh][f];
                Expr::call(f, a)
            }),
        ]
    })
}
