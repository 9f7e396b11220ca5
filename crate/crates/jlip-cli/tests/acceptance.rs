//! Release gate: thirteen end-to-end criteria, one test per criterion.
//!
//! Each test drives the public API (or the installed binary) the way a user
//! would and finishes by printing a single `criterion NN (...): PASS/FAIL`
//! line before asserting, so running this target with `--nocapture` yields a
//! scoreboard of the release checklist.

use jlip::distortion::{
    families_for, family_trace, punctured_automorphism_explore, ratio, sample_pair, stream_rng,
    sup_estimate, MapUnderTest, SearchBudget, SharpnessFamily,
};
use jlip::holo::{exp_example_j_pair, UnitSeries, ZeroFreePolynomial};
use jlip::lemmas::{common_ray_bracket, f3};
use jlip::moebius::{halfspace_horizontal_shift, halfspace_inversion};
use jlip::qh::sandwich_check;
use jlip::{Domain64, Vector64};
use num_complex::Complex;
use rand::Rng;
use std::process::Command;

const SEED: u64 = 0;

fn v(coords: &[f64]) -> Vector64 {
    Vector64::new(coords.to_vec())
}

fn family(m: &MapUnderTest<f64>, name: &str) -> SharpnessFamily<f64> {
    families_for(m)
        .into_iter()
        .find(|f| f.name() == name)
        .unwrap_or_else(|| panic!("{name} family missing"))
}

fn jlip_bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jlip"));
    cmd.env_remove("JLIP_SEED");
    cmd
}

/// Collects sub-check failures and prints the criterion's verdict line.
struct Gate {
    criterion: &'static str,
    failed: usize,
    first_failures: Vec<String>,
    notes: Vec<String>,
}

impl Gate {
    fn new(criterion: &'static str) -> Self {
        Gate {
            criterion,
            failed: 0,
            first_failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, context: impl FnOnce() -> String) {
        if !ok {
            self.failed += 1;
            if self.first_failures.len() < 6 {
                self.first_failures.push(context());
            }
        }
    }

    fn note(&mut self, line: String) {
        self.notes.push(line);
    }

    fn finish(self) {
        let verdict = if self.failed == 0 { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {} - {}",
            self.criterion,
            verdict,
            self.notes.join("; ")
        );
        assert!(
            self.failed == 0,
            "criterion {}: {} sub-checks failed; first failures: {:#?}",
            self.criterion,
            self.failed,
            self.first_failures
        );
    }
}

#[test]
fn acceptance_01_metric_sandwich() {
    let mut gate = Gate::new("01 (j/rho/k sandwich on balls and half-spaces)");
    let domains = [
        Domain64::unit_ball(2),
        Domain64::unit_ball(3),
        Domain64::half_space(2),
        Domain64::half_space(3),
    ];
    let per_domain = 2_500u64;
    let mut checked = 0u64;
    for (di, g) in domains.iter().enumerate() {
        for i in 0..per_domain {
            let (x, y) = sample_pair(g, SEED, di as u64 * per_domain + i);
            let rep = sandwich_check(g, &x, &y, 64).unwrap();
            gate.check(rep.pass, || {
                format!(
                    "{g}: x={:?} y={:?}: j={} rho={} k={}+-{} (lower={} upper={} j<=k={} k-vs-rho={})",
                    x,
                    y,
                    rep.j,
                    rep.rho,
                    rep.k.value,
                    rep.k.tol,
                    rep.lower_holds,
                    rep.upper_holds,
                    rep.j_le_k,
                    rep.k_vs_rho
                )
            });
            checked += 1;
        }
    }
    gate.note(format!(
        "{checked} pairs across B2, B3, H2, H3 at resolution 64"
    ));
    gate.finish();
}

#[test]
fn acceptance_02_reflection_window() {
    let mut gate = Gate::new("02 (ball reflection ratios inside [1/(1+|a|), 1+|a|])");
    let mut worst_above = f64::NEG_INFINITY;
    let mut worst_below = f64::INFINITY;
    for dim in [2usize, 3] {
        for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let mut coords = vec![0.0; dim];
            coords[0] = alpha;
            let m = MapUnderTest::ball_automorphism_map(&v(&coords), None).unwrap();
            let lo_bound = 1.0 / (1.0 + alpha);
            let hi_bound = 1.0 + alpha;
            let mut kept = 0u64;
            for i in 0..12_000u64 {
                if kept == 10_000 {
                    break;
                }
                let (x, y) = sample_pair(m.source(), SEED, i);
                if let Ok(r) = ratio(&m, &x, &y) {
                    gate.check(r >= lo_bound - 1e-9 && r <= hi_bound + 1e-9, || {
                        format!("dim {dim}, |a|={alpha}: ratio {r} outside [{lo_bound}, {hi_bound}]")
                    });
                    worst_above = worst_above.max(r - hi_bound);
                    worst_below = worst_below.min(r - lo_bound);
                    kept += 1;
                }
            }
            gate.check(kept == 10_000, || {
                format!("dim {dim}, |a|={alpha}: only {kept} usable pairs")
            });
            // the antipodal family attains the upper endpoint as it shrinks
            let fam = family(&m, "radial-collapse");
            let (x, y) = fam.pair_at(1e-4).unwrap();
            let r = ratio(&m, &x, &y).unwrap();
            gate.check((r - hi_bound).abs() <= 1e-3, || {
                format!("dim {dim}, |a|={alpha}: collapse ratio {r} not near {hi_bound}")
            });
        }
    }
    gate.note(format!(
        "10 maps x 10^4 ratios; worst slack above 1+|a| {worst_above:+.3e}, below 1/(1+|a|) {worst_below:+.3e}"
    ));
    gate.finish();
}

#[test]
fn acceptance_03_cayley_half_to_disk_run() {
    let mut gate = Gate::new("03 (half-plane-to-disk Cayley: horizontal run climbs toward 2)");
    let m = MapUnderTest::cayley_half_to_disk().unwrap();
    let fam = family(&m, "horizontal-run");
    let trace = family_trace(&m, &fam, &fam.default_ladder()).unwrap();
    let (t_last, v_last) = *trace.points.last().unwrap();
    gate.check(t_last == 1e8, || format!("ladder top is {t_last}"));
    gate.check((1.95..=2.0).contains(&v_last), || {
        format!("value at t=1e8 is {v_last}")
    });
    for w in trace.points.windows(2) {
        gate.check(w[1].1 >= w[0].1 * (1.0 - 1e-12), || {
            format!("trace drops at t={}: {} -> {}", w[1].0, w[0].1, w[1].1)
        });
    }
    let over = trace.points.iter().filter(|p| p.1 > 2.0 + 1e-9).count();
    gate.check(over == 0, || format!("{over} rungs above 2"));
    // tie the closed form to the pipeline on rungs where coordinates still
    // resolve the image's boundary gap
    let mut worst_gap = 0.0f64;
    for &(t, closed) in trace.points.iter().filter(|p| p.0 <= 1e4) {
        let (x, y) = fam.pair_at(t).unwrap();
        let piped = ratio(&m, &x, &y).unwrap();
        worst_gap = worst_gap.max((piped - closed).abs());
    }
    gate.check(worst_gap <= 1e-9, || {
        format!("pipeline vs closed form gap {worst_gap:.3e}")
    });
    gate.note(format!(
        "{} rungs, value(1e8)={v_last:.12}, monotone, max |pipeline-closed| (t<=1e4) {worst_gap:.2e}",
        trace.points.len()
    ));
    gate.finish();
}

#[test]
fn acceptance_04_cayley_disk_to_half_diameter() {
    let mut gate = Gate::new("04 (disk-to-half-plane Cayley: diameter pairs sit at ratio 2)");
    let m = MapUnderTest::cayley_disk_to_half().unwrap();
    let fam = family(&m, "diameter-pair");
    let mut worst = 0.0f64;
    for i in 1..=9 {
        let t = i as f64 / 10.0;
        let (x, y) = fam.pair_at(t).unwrap();
        let r = ratio(&m, &x, &y).unwrap();
        worst = worst.max((r - 2.0).abs());
        gate.check((r - 2.0).abs() <= 1e-12, || format!("t={t}: ratio {r}"));
    }
    gate.note(format!("9 diameter pairs, max |ratio - 2| = {worst:.3e}"));
    gate.finish();
}

#[test]
fn acceptance_05_sector_powers() {
    use std::f64::consts::PI;
    let mut gate = Gate::new("05 (sector powers: ratio <= k, common-ray pairs match the scalar form)");
    for k in [2u32, 3, 5] {
        let kf = k as f64;
        let m = MapUnderTest::power_sector(k).unwrap();
        let mut kept = 0u64;
        let mut max_ratio = f64::NEG_INFINITY;
        for i in 0..12_000u64 {
            if kept == 10_000 {
                break;
            }
            let (x, y) = sample_pair(m.source(), SEED, i);
            if let Ok(r) = ratio(&m, &x, &y) {
                max_ratio = max_ratio.max(r);
                gate.check(r <= kf + 1e-9, || format!("k={k}: sampled ratio {r}"));
                kept += 1;
            }
        }
        gate.check(kept == 10_000, || format!("k={k}: only {kept} usable pairs"));
        // pairs sharing a ray from the vertex reduce to the scalar quotient,
        // which must sit inside its own monotone bracket
        let mut rng = stream_rng(SEED, 500 + u64::from(k));
        let mut worst_match = 0.0f64;
        for _ in 0..200 {
            let theta = rng.random_range(0.02..0.98) * PI / (2.0 * kf);
            let r: f64 = rng.random_range(0.01..0.99);
            let x = v(&[r * theta.cos(), r * theta.sin()]);
            let y = v(&[theta.cos(), theta.sin()]);
            let piped = ratio(&m, &x, &y).unwrap();
            let scalar = f3(kf, theta, r).unwrap();
            worst_match = worst_match.max((piped - scalar).abs());
            gate.check((piped - scalar).abs() <= 1e-9, || {
                format!("k={k}, theta={theta}, r={r}: pipeline {piped} vs scalar {scalar}")
            });
            let (lo, hi) = common_ray_bracket(kf, theta).unwrap();
            gate.check(scalar > lo - 1e-9 && scalar < hi + 1e-9, || {
                format!("k={k}: scalar value {scalar} outside bracket [{lo}, {hi}]")
            });
        }
        // sliding the inner point into the vertex pushes the quotient to k
        let theta = 0.49 * PI / kf;
        let near_vertex = f3(kf, theta, 1e-10).unwrap();
        gate.check((near_vertex - kf).abs() <= 0.3, || {
            format!("k={k}: near-vertex value {near_vertex}")
        });
        gate.note(format!(
            "k={k}: max sampled {max_ratio:.6}, scalar match {worst_match:.1e}, near-vertex {near_vertex:.3}"
        ));
    }
    gate.finish();
}

#[test]
fn acceptance_06_punctured_polynomial_bound() {
    let mut gate = Gate::new("06 (punctured-disk polynomials: ratio <= m + deg q, monomials exact)");
    let unit_q = ZeroFreePolynomial::new(vec![Complex::new(1.0, 0.0)]).unwrap();
    let mut worst_exact = 0.0f64;
    for p in [1u32, 2, 3] {
        let m = MapUnderTest::punctured_power_polynomial(p, &unit_q).unwrap();
        let mut rng = stream_rng(SEED, 600 + u64::from(p));
        for _ in 0..100 {
            let s: f64 = rng.random_range(0.01..0.49);
            let t: f64 = rng.random_range(0.01..0.49);
            if (s - t).abs() < 1e-6 {
                continue;
            }
            let r = ratio(&m, &v(&[t, 0.0]), &v(&[s, 0.0])).unwrap();
            worst_exact = worst_exact.max((r - f64::from(p)).abs());
            gate.check((r - f64::from(p)).abs() <= 1e-12, || {
                format!("z^{p} at ({t}, {s}): ratio {r}")
            });
        }
    }
    // random z^m q(z) with q zero-free on the closed disk
    let mut rng = stream_rng(SEED, 601);
    let mut max_margin = f64::NEG_INFINITY;
    for word in 0..1_000u64 {
        let m_deg = rng.random_range(1..=4u32);
        let q_deg = rng.random_range(1..=3usize);
        let roots: Vec<Complex<f64>> = (0..q_deg)
            .map(|_| {
                let modulus = rng.random_range(1.1..3.0);
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                Complex::from_polar(modulus, angle)
            })
            .collect();
        let q = ZeroFreePolynomial::from_roots(&roots).unwrap();
        let map = MapUnderTest::punctured_power_polynomial(m_deg, &q).unwrap();
        let bound = f64::from(m_deg + q_deg as u32);
        let mut kept = 0u64;
        for i in 0..64u64 {
            if kept == 20 {
                break;
            }
            let (x, y) = sample_pair(map.source(), SEED, (700 + word) * 64 + i);
            if let Ok(r) = ratio(&map, &x, &y) {
                max_margin = max_margin.max(r - bound);
                gate.check(r <= bound + 1e-9, || {
                    format!("z^{m_deg} q (deg {q_deg}): ratio {r} vs bound {bound}")
                });
                kept += 1;
            }
        }
        gate.check(kept == 20, || format!("map {word}: only {kept} usable pairs"));
    }
    gate.note(format!(
        "monomials max |ratio - p| {worst_exact:.2e}; 1000 random maps x 20 ratios, max ratio-minus-bound {max_margin:+.3e}"
    ));
    gate.finish();
}

#[test]
fn acceptance_07_series_contraction() {
    let mut gate = Gate::new("07 (l1-bounded series never expand j on the disk)");
    let mut rng = stream_rng(SEED, 700);
    let mut max_ratio = f64::NEG_INFINITY;
    for word in 0..1_000u64 {
        let terms = rng.random_range(1..=6usize);
        let mut coeffs = vec![Complex::new(0.0, 0.0)];
        for _ in 0..terms {
            coeffs.push(Complex::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ));
        }
        let mut l1: f64 = coeffs.iter().map(|c| c.norm()).sum();
        if l1 < 1e-9 {
            coeffs[1] = Complex::new(0.5, 0.0);
            l1 = 0.5;
        }
        let scale = rng.random_range(0.2..0.999) / l1;
        for c in coeffs.iter_mut() {
            *c *= scale;
        }
        let m = MapUnderTest::bounded_series(UnitSeries::new(coeffs).unwrap()).unwrap();
        let mut kept = 0u64;
        for i in 0..64u64 {
            if kept == 10 {
                break;
            }
            let (x, y) = sample_pair(m.source(), SEED, (800 + word) * 64 + i);
            if let Ok(r) = ratio(&m, &x, &y) {
                max_ratio = max_ratio.max(r);
                gate.check(r <= 1.0 + 1e-12, || format!("series {word}: ratio {r}"));
                kept += 1;
            }
        }
        gate.check(kept == 10, || format!("series {word}: only {kept} usable pairs"));
    }
    // monomial boundary run: the ratio returns to 1 as the outer point slides
    // to the rim (for p >= 2 the approach is logarithmic in the gap, so the
    // family's own tolerance applies)
    for p in [1u32, 2, 3] {
        let mut coeffs = vec![Complex::new(0.0, 0.0); p as usize + 1];
        coeffs[p as usize] = Complex::new(1.0, 0.0);
        let m = MapUnderTest::bounded_series(UnitSeries::new(coeffs).unwrap()).unwrap();
        let fam = family(&m, "disk-boundary-run");
        let (x, y) = fam.pair_at(1e-6).unwrap();
        let r = ratio(&m, &x, &y).unwrap();
        let tol = if p == 1 { 1e-2 } else { fam.limit_tolerance() };
        gate.check((r - 1.0).abs() <= tol, || {
            format!("z^{p} boundary run: ratio {r}, tolerance {tol}")
        });
        gate.note(format!("z^{p} rim gap {:+.2e}", r - 1.0));
    }
    gate.note(format!("1000 series x 10 ratios, max {max_ratio:.12}"));
    gate.finish();
}

#[test]
fn acceptance_08_exponential_strip() {
    let mut gate = Gate::new("08 (exponential example: ladder values and the pinch limit)");
    let e = std::f64::consts::E;
    let mut worst_rel = 0.0f64;
    for k in 1..=10u32 {
        let (j_in, j_out) = exp_example_j_pair::<f64>(k).unwrap();
        let expect_in = ((e.powi(k as i32 + 1) + 1.0) / (e.powi(k as i32) + 1.0)).ln();
        let expect_out = e.powi(k as i32) * (e - 1.0);
        let rel_in = ((j_in - expect_in) / expect_in).abs();
        let rel_out = ((j_out - expect_out) / expect_out).abs();
        worst_rel = worst_rel.max(rel_in).max(rel_out);
        gate.check(rel_in <= 1e-9 && rel_out <= 1e-9, || {
            format!("k={k}: ({j_in}, {j_out}) vs closed forms ({expect_in}, {expect_out})")
        });
    }
    let m = MapUnderTest::exp_example().unwrap();
    let fam = family(&m, "center-pinch");
    let (x, y) = fam.pair_at(1e-6).unwrap();
    let r = ratio(&m, &x, &y).unwrap();
    let limit = 2.0 / (e - 1.0);
    gate.check((r - limit).abs() <= 1e-4, || {
        format!("pinch ratio {r} vs limit {limit}")
    });
    gate.note(format!(
        "k=1..10 worst relative error {worst_rel:.2e}; pinch ratio {r:.9} vs 2/(e-1)={limit:.9}"
    ));
    gate.finish();
}

#[test]
fn acceptance_09_halfspace_inversion_window() {
    let mut gate = Gate::new("09 (half-space inversion: ratios below 2, height run approaches it)");
    let center = Vector64::zero(2);
    let m = MapUnderTest::halfspace_inversion_map(&center, 1.0).unwrap();
    let mut kept = 0u64;
    let mut max_ratio = f64::NEG_INFINITY;
    for i in 0..12_000u64 {
        if kept == 10_000 {
            break;
        }
        let (x, y) = sample_pair(m.source(), SEED, i);
        if let Ok(r) = ratio(&m, &x, &y) {
            max_ratio = max_ratio.max(r);
            gate.check(r <= 2.0 + 1e-9, || format!("sampled ratio {r}"));
            kept += 1;
        }
    }
    gate.check(kept == 10_000, || format!("only {kept} usable pairs"));
    let fam = family(&m, "height-run");
    let (x, y) = fam.pair_at(1e8).unwrap();
    let run_end = ratio(&m, &x, &y).unwrap();
    gate.check(run_end >= 1.95, || {
        format!("height-run ratio at t=1e8: {run_end}")
    });
    gate.note(format!(
        "max sampled {max_ratio:.9}; height-run endpoint {run_end:.12}"
    ));
    gate.finish();
}

#[test]
fn acceptance_10_verify_lemma_suite() {
    let mut gate = Gate::new("10 (CLI verify: scalar-inequality suite runs clean)");
    let out = jlip_bin()
        .args(["verify", "--suite", "lemmas", "--seed", "0", "--no-timestamp"])
        .output()
        .expect("run jlip verify");
    gate.check(out.status.code() == Some(0), || {
        format!(
            "exit {:?}; stderr: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("verify emits JSON");
    gate.check(report["passed"] == serde_json::Value::Bool(true), || {
        format!("suite flag: {}", report["passed"])
    });
    let checks = report["checks"].as_array().cloned().unwrap_or_default();
    gate.check(checks.len() >= 14, || {
        format!("only {} checks reported", checks.len())
    });
    for c in &checks {
        gate.check(c["passed"] == serde_json::Value::Bool(true), || {
            format!("failed check: {c}")
        });
    }
    gate.note(format!("{} scalar checks, all passing, exit 0", checks.len()));
    gate.finish();
}

#[test]
fn acceptance_11_moebius_roster_certificates() {
    let mut gate = Gate::new("11 (Moebius roster: supremum search stays inside [1/2, 2])");
    let budget = SearchBudget {
        samples: 10_000,
        refine_steps: 40,
    };
    let zero2 = Vector64::zero(2);
    let word = halfspace_inversion(&zero2, 1.0)
        .unwrap()
        .compose(&halfspace_horizontal_shift(2, &[0.75]).unwrap())
        .unwrap();
    let roster: Vec<(&str, MapUnderTest<f64>)> = vec![
        (
            "identity-ball2",
            MapUnderTest::identity(Domain64::unit_ball(2)).unwrap(),
        ),
        (
            "reflection-2d",
            MapUnderTest::ball_automorphism_map(&v(&[0.5, 0.0]), None).unwrap(),
        ),
        (
            "reflection-3d",
            MapUnderTest::ball_automorphism_map(&v(&[0.3, 0.4, 0.0]), None).unwrap(),
        ),
        ("cayley-h2b", MapUnderTest::cayley_half_to_disk().unwrap()),
        ("cayley-b2h", MapUnderTest::cayley_disk_to_half().unwrap()),
        (
            "inversion-2d",
            MapUnderTest::halfspace_inversion_map(&zero2, 1.0).unwrap(),
        ),
        (
            "inversion-3d-offcenter",
            MapUnderTest::halfspace_inversion_map(&v(&[0.5, 0.0, 0.0]), 2.0).unwrap(),
        ),
        (
            "inversion-then-shift",
            MapUnderTest::generic_moebius(word, Domain64::half_space(2), Domain64::half_space(2))
                .unwrap(),
        ),
        (
            "punctured-shift-2d",
            MapUnderTest::punctured_automorphism(&v(&[0.5, 0.0])).unwrap(),
        ),
        (
            "punctured-shift-3d",
            MapUnderTest::punctured_automorphism(&v(&[0.6, 0.0, 0.0])).unwrap(),
        ),
    ];
    for (name, m) in &roster {
        let rep = sup_estimate(m, budget, SEED).unwrap();
        gate.check(rep.min_sampled_ratio >= 0.5 - 1e-9, || {
            format!("{name}: min sampled ratio {}", rep.min_sampled_ratio)
        });
        gate.check(rep.sup_estimate <= 2.0 + 1e-9, || {
            format!("{name}: sup estimate {}", rep.sup_estimate)
        });
        gate.check(!rep.certificate_violated(), || {
            format!(
                "{name}: estimate {} escaped certified window [{:?}, {:?}]",
                rep.sup_estimate, rep.bound_lower, rep.bound_upper
            )
        });
    }
    gate.note(format!(
        "{} maps, budget 10^4 samples + 40 ascent steps each",
        roster.len()
    ));
    gate.finish();
}

#[test]
fn acceptance_12_cli_determinism() {
    let mut gate = Gate::new("12 (CLI: identical args and seed give byte-identical reports)");
    let base = ["sup", "--map", "sigma:a=0.5,0", "--seed", "7", "--no-timestamp"];
    let run = |extra: &[&str]| {
        let out = jlip_bin()
            .args(base)
            .args(extra)
            .output()
            .expect("run jlip sup");
        (out.status.code(), out.stdout)
    };
    let (c1, first) = run(&[]);
    let (c2, second) = run(&[]);
    let (c3, threads1) = run(&["--threads", "1"]);
    let (c4, threads3) = run(&["--threads", "3"]);
    gate.check(
        c1 == Some(0) && c2 == Some(0) && c3 == Some(0) && c4 == Some(0),
        || format!("exit codes {c1:?} {c2:?} {c3:?} {c4:?}"),
    );
    gate.check(!first.is_empty(), || "empty report".to_string());
    gate.check(first == second, || "repeat run differed".to_string());
    gate.check(first == threads1, || "--threads 1 differed".to_string());
    gate.check(threads1 == threads3, || "--threads 3 differed".to_string());
    gate.note(format!("4 runs, {} bytes each, byte-identical", first.len()));
    gate.finish();
}

#[test]
fn acceptance_13_puncture_shift_explorer() {
    let mut gate = Gate::new("13 (puncture-shifting reflection: estimate vs conjectured constant)");
    for alpha in [0.3, 0.5, 0.8] {
        let rep =
            punctured_automorphism_explore(&v(&[alpha, 0.0]), SearchBudget::default(), SEED)
                .unwrap();
        let est = rep.report.sup_estimate;
        gate.check(est >= 1.0 - 1e-12 && est <= 2.0 + 1e-9, || {
            format!("|a|={alpha}: estimate {est}")
        });
        gate.note(format!(
            "|a|={alpha}: estimate {est:.12}, conjectured {:.12}, gap {:+.2e}",
            rep.conjectured_constant, rep.gap
        ));
    }
    gate.finish();
}
