//! Extremal pair families: one-parameter curves in pair space along which
//! the distortion ratio approaches its sharp value.
//!
//! Blind sampling cannot see the suprema because they sit at degenerate
//! configurations (pairs collapsing to a point, running to infinity, or
//! hugging a boundary); the families reach those regimes analytically. Each
//! family documents the limit it approaches and the tolerance its final
//! default-ladder point is expected to meet.

use serde::Serialize;

use super::{ratio, MapKind, MapUnderTest};
use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::scalar::{real, Real};

/// Which end of the parameter range the family's limit sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitEnd {
    Lo,
    Hi,
}

/// A named one-parameter family of point pairs in a map's source domain.
pub struct SharpnessFamily<T> {
    name: &'static str,
    notes: &'static str,
    t_min: T,
    t_max: T,
    toward: LimitEnd,
    expected_limit: T,
    limit_tolerance: T,
    pairs: Box<dyn Fn(T) -> (Vector<T>, Vector<T>) + Send + Sync>,
    /// Exact ratio along the family, for traces whose pairs degenerate past
    /// what coordinate arithmetic can resolve (image boundary gaps below a
    /// few float quanta). `None` means the generic pipeline is accurate over
    /// the whole range.
    closed_form: Option<Box<dyn Fn(T) -> T + Send + Sync>>,
    /// Largest parameter whose pipeline-evaluated ratio is trusted to feed
    /// the supremum search; defaults to `t_max` and is lowered only for
    /// families that degenerate numerically before their analytic limit.
    sup_t_max: T,
}

impl<T: Real> SharpnessFamily<T> {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn notes(&self) -> &'static str {
        self.notes
    }

    pub fn range(&self) -> (T, T) {
        (self.t_min, self.t_max)
    }

    pub fn toward(&self) -> LimitEnd {
        self.toward
    }

    pub fn expected_limit(&self) -> T {
        self.expected_limit
    }

    pub fn limit_tolerance(&self) -> T {
        self.limit_tolerance
    }

    /// Exact trace value at `t`, for families carrying a closed form.
    pub fn closed_form_ratio(&self, t: T) -> Option<T> {
        self.closed_form.as_ref().map(|f| f(t))
    }

    /// Parameter ceiling for supremum-search contributions.
    pub fn sup_t_max(&self) -> T {
        self.sup_t_max
    }

    /// The pair at parameter `t`; errors if `t` leaves the family's range.
    pub fn pair_at(&self, t: T) -> Result<(Vector<T>, Vector<T>)> {
        if !(t >= self.t_min && t <= self.t_max) {
            return Err(Error::InvalidParameter(format!(
                "parameter {t} outside family range [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        Ok((self.pairs)(t))
    }

    /// Log-spaced ladder over the family range clipped to [1e-8, 1e8].
    pub fn default_ladder(&self) -> Vec<T> {
        let lo = self.t_min.max(real::<T>(1e-8));
        let hi = self.t_max.min(real::<T>(1e8));
        log_ladder(lo, hi)
    }
}

/// Log-spaced parameter ladder: 40 points per decade, endpoints included.
pub fn log_ladder<T: Real>(lo: T, hi: T) -> Vec<T> {
    assert!(lo > T::zero() && hi >= lo, "ladder needs 0 < lo <= hi");
    let l0 = lo.log10();
    let l1 = hi.log10();
    let span = l1 - l0;
    let steps = (span * real::<T>(40.0))
        .ceil()
        .to_usize()
        .unwrap_or(0)
        .max(1);
    let mut points = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = if i == 0 {
            lo
        } else if i == steps {
            hi
        } else {
            let frac = real::<T>(i as f64) / real::<T>(steps as f64);
            real::<T>(10.0).powf(l0 + span * frac)
        };
        points.push(t.max(lo).min(hi));
    }
    points
}

/// A family evaluated along a ladder, as stored in reports.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyTrace<T> {
    pub name: String,
    pub expected_limit: T,
    pub limit_tolerance: T,
    /// (parameter, ratio) rows in ladder order.
    pub points: Vec<(T, T)>,
}

impl<T: Real> FamilyTrace<T> {
    /// Distance of the limit-end ladder point from the documented limit.
    pub fn limit_gap(&self, toward: LimitEnd) -> Option<T> {
        let point = match toward {
            LimitEnd::Lo => self.points.first(),
            LimitEnd::Hi => self.points.last(),
        }?;
        Some((point.1 - self.expected_limit).abs())
    }
}

/// Evaluate the family's ratios at the given ladder.
///
/// Families with a closed form are traced through it (their deep rungs are
/// beyond coordinate resolution); all others go through [`ratio`].
pub fn family_trace<T: Real>(
    m: &MapUnderTest<T>,
    fam: &SharpnessFamily<T>,
    ladder: &[T],
) -> Result<FamilyTrace<T>> {
    let mut points = Vec::with_capacity(ladder.len());
    for &t in ladder {
        let (x, y) = fam.pair_at(t)?;
        let r = match fam.closed_form_ratio(t) {
            Some(v) => v,
            None => ratio(m, &x, &y)?,
        };
        points.push((t, r));
    }
    Ok(FamilyTrace {
        name: fam.name.to_string(),
        expected_limit: fam.expected_limit,
        limit_tolerance: fam.limit_tolerance,
        points,
    })
}

/// The families registered for a map's kind.
pub fn families_for<T: Real>(m: &MapUnderTest<T>) -> Vec<SharpnessFamily<T>> {
    match m.kind() {
        MapKind::BallAutomorphism { a } => {
            let na = a.norm();
            if na == T::zero() {
                return Vec::new();
            }
            let unit = a.clone().scaled(T::one() / na);
            vec![SharpnessFamily {
                name: "radial-collapse",
                notes: "antipodal pair t*u, -t*u on the axis through the \
                        reflection point; the ratio climbs to 1+|a| as the \
                        pair shrinks into the origin. The floor at 1e-6 \
                        keeps image-difference cancellation under the \
                        certificate slack",
                t_min: real::<T>(1e-6),
                t_max: real::<T>(0.5),
                toward: LimitEnd::Lo,
                expected_limit: T::one() + na,
                limit_tolerance: real::<T>(1e-4),
                pairs: Box::new(move |t| (unit.scaled(t), unit.scaled(-t))),
                closed_form: None,
                sup_t_max: real::<T>(0.5),
            }]
        }
        MapKind::CayleyHalfToDisk => vec![SharpnessFamily {
            name: "horizontal-run",
            notes: "pair (t, 1), (0, 1) sliding along a horizontal line; \
                    the ratio climbs to 2 like 1 - log 2 / log t. Past \
                    t ~ 1e7 the image hugs the circle within a few float \
                    quanta, so the trace uses the exact expression \
                    log(1 + (t^2 + t sqrt(t^2+4))/4) / log(1+t) and only \
                    rungs below that feed the supremum search",
            t_min: real::<T>(1e-8),
            t_max: real::<T>(1e8),
            toward: LimitEnd::Hi,
            expected_limit: real::<T>(2.0),
            limit_tolerance: real::<T>(0.05),
            pairs: Box::new(|t| {
                (
                    Vector::new(vec![t, T::one()]),
                    Vector::new(vec![T::zero(), T::one()]),
                )
            }),
            closed_form: Some(Box::new(|t: T| {
                let four = real::<T>(4.0);
                let hyp = (t * t + four).sqrt();
                ((t * t + t * hyp) / four).ln_1p() / t.ln_1p()
            })),
            sup_t_max: real::<T>(1e7),
        }],
        MapKind::CayleyDiskToHalf => vec![SharpnessFamily {
            name: "diameter-pair",
            notes: "antipodal diameter pair (t, 0), (-t, 0): the ratio \
                    equals 2 identically in t. The floor at 1e-6 keeps \
                    image-difference cancellation under the certificate \
                    slack",
            t_min: real::<T>(1e-6),
            t_max: real::<T>(1.0) - real::<T>(1e-6),
            toward: LimitEnd::Hi,
            expected_limit: real::<T>(2.0),
            limit_tolerance: real::<T>(1e-9),
            pairs: Box::new(|t| {
                (
                    Vector::new(vec![t, T::zero()]),
                    Vector::new(vec![-t, T::zero()]),
                )
            }),
            closed_form: None,
            sup_t_max: real::<T>(1.0) - real::<T>(1e-6),
        }],
        MapKind::HalfSpaceInversion { center, radius } => {
            let c = center.clone();
            let r = *radius;
            let n = c.dim();
            vec![SharpnessFamily {
                name: "height-run",
                notes: "pair anchored one radius above the sphere center \
                        with the partner running off horizontally; the \
                        ratio approaches 2 from below",
                t_min: real::<T>(1e-8),
                t_max: real::<T>(1e8),
                toward: LimitEnd::Hi,
                expected_limit: real::<T>(2.0),
                limit_tolerance: real::<T>(1e-8),
                pairs: Box::new(move |t| {
                    let mut x = c.clone().into_coords();
                    x[n - 1] = x[n - 1] + r;
                    let mut y = x.clone();
                    y[0] = y[0] + t * r;
                    (Vector::new(x), Vector::new(y))
                }),
                closed_form: None,
                sup_t_max: real::<T>(1e8),
            }]
        }
        MapKind::PuncturedAutomorphism { a } => {
            let na = a.norm();
            let unit = a.clone().scaled(T::one() / na);
            let three = real::<T>(3.0);
            let limit = ((real::<T>(6.0) + three * na) / (real::<T>(2.0) - na)).ln() / three.ln();
            vec![SharpnessFamily {
                name: "puncture-diameter",
                notes: "antipodal pair t*u, -t*u around the source \
                        puncture; at t = 1/2 the ratio reaches \
                        log(3(2+|a|)/(2-|a|)) / log 3 exactly",
                t_min: real::<T>(1e-6),
                t_max: real::<T>(0.5),
                toward: LimitEnd::Hi,
                expected_limit: limit,
                limit_tolerance: real::<T>(1e-9),
                pairs: Box::new(move |t| (unit.scaled(t), unit.scaled(-t))),
                closed_form: None,
                sup_t_max: real::<T>(0.5),
            }]
        }
        MapKind::PowerSector { k } => {
            let k = *k;
            let theta = real::<T>(std::f64::consts::PI / (2.0 * k as f64))
                * (T::one() - real::<T>(1e-6));
            let (ct, st) = (theta.cos(), theta.sin());
            vec![SharpnessFamily {
                name: "common-ray-shrink",
                notes: "pair (r e^{i theta}, e^{i theta}) on one ray just \
                        inside the sector bisector of the image; the ratio \
                        rises toward the exponent as r -> 0 at log rate",
                t_min: real::<T>(1e-8),
                t_max: real::<T>(0.999),
                toward: LimitEnd::Lo,
                expected_limit: real::<T>(k as f64),
                limit_tolerance: real::<T>(0.5),
                pairs: Box::new(move |r| {
                    (
                        Vector::new(vec![r * ct, r * st]),
                        Vector::new(vec![ct, st]),
                    )
                }),
                closed_form: None,
                sup_t_max: real::<T>(0.999),
            }]
        }
        MapKind::PuncturedPolynomial { degree, monomial } => {
            if !*monomial {
                return Vec::new();
            }
            let p = *degree;
            vec![SharpnessFamily {
                name: "puncture-segment",
                notes: "nested pair (t, 0), (t/2, 0) between puncture and \
                        boundary; for a pure monomial the ratio equals the \
                        degree identically in t",
                t_min: real::<T>(1e-6),
                t_max: real::<T>(0.49),
                toward: LimitEnd::Hi,
                expected_limit: real::<T>(p as f64),
                limit_tolerance: real::<T>(1e-9),
                pairs: Box::new(|t| {
                    (
                        Vector::new(vec![t, T::zero()]),
                        Vector::new(vec![t / real::<T>(2.0), T::zero()]),
                    )
                }),
                closed_form: None,
                sup_t_max: real::<T>(0.49),
            }]
        }
        MapKind::BoundedSeries { monomial_degree } => {
            let Some(p) = monomial_degree else {
                return Vec::new();
            };
            let tolerance = if *p == 1 {
                real::<T>(1e-9)
            } else {
                real::<T>(0.05)
            };
            vec![SharpnessFamily {
                name: "disk-boundary-run",
                notes: "pair (1 - u, 0), (1/2, 0) with the first point \
                        running into the boundary; for unit monomials the \
                        ratio tends to the sharp constant 1",
                t_min: real::<T>(1e-8),
                t_max: real::<T>(0.4),
                toward: LimitEnd::Lo,
                expected_limit: T::one(),
                limit_tolerance: tolerance,
                pairs: Box::new(|u| {
                    (
                        Vector::new(vec![T::one() - u, T::zero()]),
                        Vector::new(vec![real::<T>(0.5), T::zero()]),
                    )
                }),
                closed_form: None,
                sup_t_max: real::<T>(0.4),
            }]
        }
        MapKind::ExpExample => vec![SharpnessFamily {
            name: "center-pinch",
            notes: "antipodal pair (t, 0), (-t, 0) shrinking into the \
                    center, where the local stretching factor is 2/(e-1)",
            t_min: real::<T>(1e-8),
            t_max: real::<T>(0.3),
            toward: LimitEnd::Lo,
            expected_limit: real::<T>(2.0) / (real::<T>(1.0).exp() - T::one()),
            limit_tolerance: real::<T>(1e-5),
            pairs: Box::new(|t| {
                (
                    Vector::new(vec![t, T::zero()]),
                    Vector::new(vec![-t, T::zero()]),
                )
            }),
            closed_form: None,
            sup_t_max: real::<T>(0.3),
        }],
        MapKind::GenericMoebius => Vec::new(),
    }
}
