//! Frozen decimal oracles.
//!
//! Every constant here was derived independently of the library (closed
//! forms evaluated in high precision) and is written out in full, so a
//! regression shows up as a digit-level diff rather than a tolerance creep.

use jlip::distortion::{conjectured_shift_constant, families_for, ratio, MapUnderTest};
use jlip::holo::{exp_example_j_pair, exp_example_point};
use jlip::lemmas::common_ray_bracket;
use jlip::metrics::{j_metric, rho_ball, rho_half};
use jlip::qh::quasihyperbolic_estimate;
use jlip::{Domain64, Vector64};

const LN_2: f64 = 0.693147180559945309;
const LN_3: f64 = 1.098612288668109691;
/// Small-separation limit of the exponential example's distortion.
const TWO_OVER_E_MINUS_ONE: f64 = 1.163953413738652849;

fn v(coords: &[f64]) -> Vector64 {
    Vector64::new(coords.to_vec())
}

fn family<'m>(
    m: &'m MapUnderTest<f64>,
    name: &str,
) -> jlip::distortion::SharpnessFamily<f64> {
    families_for(m)
        .into_iter()
        .find(|f| f.name() == name)
        .unwrap_or_else(|| panic!("{name} family missing"))
}

#[test]
fn ball_center_to_half_radius() {
    let ball = Domain64::unit_ball(2);
    let x = v(&[0.0, 0.0]);
    let y = v(&[0.5, 0.0]);
    // |x - y| / min(1, 1/2) = 1, so j = log 2; rho = 2 asinh(1/sqrt(3)) = log 3
    assert!((j_metric(&ball, &x, &y).unwrap() - LN_2).abs() < 1e-15);
    assert!((rho_ball(&x, &y).unwrap() - LN_3).abs() < 1e-15);
    // the radial quasihyperbolic integral is -log(1 - r) = log 2
    let k = quasihyperbolic_estimate(&ball, &x, &y, 64).unwrap();
    assert!((k.value - LN_2).abs() <= k.tol, "{} vs {LN_2}", k.value);
}

#[test]
fn punctured_disk_segment() {
    let punctured = Domain64::punctured_ball(2, vec![v(&[0.0, 0.0])]).unwrap();
    let j = j_metric(&punctured, &v(&[0.1, 0.0]), &v(&[0.2, 0.0])).unwrap();
    // the puncture is the nearest boundary point: j = log(1 + 0.1/0.1)
    assert!((j - LN_2).abs() < 1e-15);
}

#[test]
fn half_space_height_doubling() {
    let half = Domain64::half_space(2);
    let x = v(&[0.0, 1.0]);
    let y = v(&[0.0, 2.0]);
    assert!((j_metric(&half, &x, &y).unwrap() - LN_2).abs() < 1e-15);
    assert!((rho_half(&x, &y).unwrap() - LN_2).abs() < 1e-15);
    let k = quasihyperbolic_estimate(&half, &x, &y, 64).unwrap();
    assert!((k.value - LN_2).abs() <= k.tol);
}

#[test]
fn exponential_ladder_values() {
    let (j_in, j_out) = exp_example_j_pair::<f64>(1).unwrap();
    assert!((j_in - 0.8136663235247497).abs() < 1e-15);
    assert!((j_out - 4.670774270471605).abs() < 1e-14);
    let (j_in, j_out) = exp_example_j_pair::<f64>(3).unwrap();
    assert!((j_in - 0.9695625763440677).abs() < 1e-15);
    assert!((j_out - 34.51261310995657).abs() < 1e-12);
    // ladder points z_k = tanh(k/2)
    assert!((exp_example_point::<f64>(2) - 0.7615941559557649).abs() < 1e-15);
}

#[test]
fn exponential_small_separation_limit() {
    let m = MapUnderTest::<f64>::exp_example().unwrap();
    let fam = family(&m, "center-pinch");
    assert!((fam.expected_limit() - TWO_OVER_E_MINUS_ONE).abs() < 1e-15);
    let (x, y) = fam.pair_at(1e-6).unwrap();
    let r = ratio(&m, &x, &y).unwrap();
    assert!(
        (r - TWO_OVER_E_MINUS_ONE).abs() < 1e-4,
        "{r} vs {TWO_OVER_E_MINUS_ONE}"
    );
}

#[test]
fn cayley_run_far_endpoint() {
    // log(1 + (t^2 + t sqrt(t^2 + 4))/4) / log(1 + t) at t = 1e8
    let m = MapUnderTest::<f64>::cayley_half_to_disk().unwrap();
    let fam = family(&m, "horizontal-run");
    let far = fam.closed_form_ratio(1e8).expect("closed form");
    assert!((far - 1.9623712494766936).abs() < 1e-12, "{far}");
    // pipeline and closed form agree where coordinates still resolve the gap
    let (x, y) = fam.pair_at(1e4).unwrap();
    let piped = ratio(&m, &x, &y).unwrap();
    assert!((piped - fam.closed_form_ratio(1e4).unwrap()).abs() < 1e-9);
}

#[test]
fn inversion_run_values() {
    let m =
        MapUnderTest::halfspace_inversion_map(&Vector64::zero(2), 1.0).unwrap();
    let fam = family(&m, "height-run");
    let (x, y) = fam.pair_at(10.0).unwrap();
    assert!((ratio(&m, &x, &y).unwrap() - 1.9267090588732654).abs() < 1e-9);
    let (x, y) = fam.pair_at(1e8).unwrap();
    assert!((ratio(&m, &x, &y).unwrap() - 1.9999999989142638).abs() < 1e-9);
}

#[test]
fn shift_constant_values() {
    // 1 + log((2 + a)/(2 - a)) / log 3
    assert!((conjectured_shift_constant(0.5f64) - 1.4649735207179271).abs() < 1e-15);
    assert!((conjectured_shift_constant(1.0f64) - 2.0).abs() < 1e-15);
    assert!((conjectured_shift_constant(0.3f64) - 1.2751479070377050).abs() < 1e-15);
    assert!((conjectured_shift_constant(0.8f64) - 1.7712437491614224).abs() < 1e-15);
}

#[test]
fn common_ray_bracket_values() {
    let (lo, hi) = common_ray_bracket(3.0f64, 0.2).unwrap();
    assert_eq!(hi, 3.0);
    // 3 sin(0.2) / sin(0.6)
    assert!((lo - 1.0555493439973729).abs() < 1e-15, "{lo}");
}

#[test]
fn ball_reflection_window_edges() {
    // the two-sided certificate for the ball reflection at |a| = 1/2
    let a = v(&[0.5, 0.0]);
    let m = MapUnderTest::ball_automorphism_map(&a, None).unwrap();
    let c = jlip::distortion::bound_certificates(&m);
    assert_eq!(c.upper, Some(1.5));
    assert!((c.lower.unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(c.tag, "ball-automorphism-sharp");
}
