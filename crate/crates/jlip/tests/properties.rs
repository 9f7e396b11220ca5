//! Randomized structural properties of the metrics and maps.

use jlip::distortion::{log_ladder, ratio, MapUnderTest};
use jlip::metrics::{j_metric, rho_ball, rho_half};
use jlip::moebius::sigma_a;
use jlip::{Domain64, Vector64};
use proptest::prelude::*;

/// Points in the ball of radius 0.95: far enough inside that reflections
/// and charts stay well conditioned at the tolerances asserted here.
fn ball_point(dim: usize) -> impl Strategy<Value = Vector64> {
    prop::collection::vec(-0.95f64..0.95, dim)
        .prop_filter("inside the 0.95-ball", |c| {
            c.iter().map(|x| x * x).sum::<f64>() < 0.95 * 0.95
        })
        .prop_map(Vector64::new)
}

fn half_point(dim: usize) -> impl Strategy<Value = Vector64> {
    (
        prop::collection::vec(-10.0f64..10.0, dim - 1),
        0.05f64..10.0,
    )
        .prop_map(|(mut c, h)| {
            c.push(h);
            Vector64::new(c)
        })
}

fn distinct(x: &Vector64, y: &Vector64) -> bool {
    (x - y).norm() > 1e-6
}

proptest! {
    #[test]
    fn j_is_a_symmetric_metric_with_triangle(
        x in ball_point(2), y in ball_point(2), z in ball_point(2)
    ) {
        let g = Domain64::unit_ball(2);
        let j = |a: &Vector64, b: &Vector64| j_metric(&g, a, b).unwrap();
        prop_assert_eq!(j(&x, &y), j(&y, &x));
        prop_assert!(j(&x, &y) >= 0.0);
        prop_assert!(j(&x, &x) == 0.0);
        prop_assert!(j(&x, &z) <= j(&x, &y) + j(&y, &z) + 1e-12);
    }

    #[test]
    fn j_sits_between_half_rho_and_rho(
        bx in ball_point(3), by in ball_point(3),
        hx in half_point(3), hy in half_point(3),
    ) {
        let ball = Domain64::unit_ball(3);
        let j = j_metric(&ball, &bx, &by).unwrap();
        let rho = rho_ball(&bx, &by).unwrap();
        prop_assert!(0.5 * rho <= j + 1e-12 && j <= rho + 1e-12);

        let half = Domain64::half_space(3);
        let j = j_metric(&half, &hx, &hy).unwrap();
        let rho = rho_half(&hx, &hy).unwrap();
        prop_assert!(0.5 * rho <= j + 1e-12 && j <= rho + 1e-12);
    }

    #[test]
    fn rho_is_invariant_under_the_reflection(
        a in ball_point(2).prop_filter("nonzero", |a| a.norm() > 1e-3),
        x in ball_point(2), y in ball_point(2),
    ) {
        let s = sigma_a(&a).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        let moved = rho_ball(&s.apply(&x).unwrap(), &s.apply(&y).unwrap()).unwrap();
        prop_assert!((rho - moved).abs() <= 1e-9 * (1.0 + rho), "{rho} vs {moved}");
    }

    #[test]
    fn cayley_is_a_hyperbolic_isometry(
        x in ball_point(2), y in ball_point(2),
    ) {
        let m = MapUnderTest::<f64>::cayley_disk_to_half().unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        let image = rho_half(&m.apply(&x).unwrap(), &m.apply(&y).unwrap()).unwrap();
        prop_assert!((rho - image).abs() <= 1e-9 * (1.0 + rho));
    }

    #[test]
    fn the_reflection_is_an_involution_sending_a_to_zero(
        a in ball_point(3).prop_filter("nonzero", |a| a.norm() > 1e-3),
        x in ball_point(3),
    ) {
        let s = sigma_a(&a).unwrap();
        prop_assert!(s.apply(&a).unwrap().norm() <= 1e-12);
        let back = s.apply(&s.apply(&x).unwrap()).unwrap();
        prop_assert!((&back - &x).norm() <= 1e-10);
    }

    #[test]
    fn puncturing_never_shrinks_j(
        x in ball_point(2).prop_filter("off origin", |p| p.norm() > 1e-3),
        y in ball_point(2).prop_filter("off origin", |p| p.norm() > 1e-3),
    ) {
        let plain = Domain64::unit_ball(2);
        let punctured = Domain64::punctured_ball(2, vec![Vector64::zero(2)]).unwrap();
        let j = j_metric(&plain, &x, &y).unwrap();
        let jp = j_metric(&punctured, &x, &y).unwrap();
        prop_assert!(jp >= j - 1e-12);
    }

    #[test]
    fn reflection_ratios_stay_in_the_sharp_window(
        a in ball_point(2).prop_filter("nonzero", |a| a.norm() > 1e-3),
        x in ball_point(2), y in ball_point(2),
    ) {
        prop_assume!(distinct(&x, &y));
        let m = MapUnderTest::ball_automorphism_map(&a, None).unwrap();
        let r = ratio(&m, &x, &y).unwrap();
        let na = a.norm();
        prop_assert!(r >= 1.0 / (1.0 + na) - 1e-9 && r <= 1.0 + na + 1e-9, "{r}");
    }

    #[test]
    fn power_ratios_respect_the_exponent(
        k in 2u32..=5,
        rx in 0.01f64..10.0, ry in 0.01f64..10.0,
        fx in 0.01f64..0.99, fy in 0.01f64..0.99,
    ) {
        let angle = std::f64::consts::PI / k as f64;
        let x = Vector64::new(vec![rx * (angle * fx).cos(), rx * (angle * fx).sin()]);
        let y = Vector64::new(vec![ry * (angle * fy).cos(), ry * (angle * fy).sin()]);
        prop_assume!(distinct(&x, &y));
        let m = MapUnderTest::<f64>::power_sector(k).unwrap();
        let r = ratio(&m, &x, &y).unwrap();
        prop_assert!(r <= k as f64 + 1e-9, "{r} at k={k}");
    }

    #[test]
    fn ladders_are_sorted_with_exact_endpoints(
        lo_exp in -5.0f64..2.0, span in 0.1f64..6.0,
    ) {
        let lo = 10f64.powf(lo_exp);
        let hi = 10f64.powf(lo_exp + span);
        let ladder = log_ladder(lo, hi);
        prop_assert_eq!(*ladder.first().unwrap(), lo);
        prop_assert_eq!(*ladder.last().unwrap(), hi);
        prop_assert!(ladder.windows(2).all(|w| w[1] > w[0]));
        // forty rungs per decade
        prop_assert!(ladder.len() >= (span * 40.0) as usize);
    }
}
