//! Pointwise j-distortion ratios of maps between canonical domains, seeded
//! supremum search over pair space, extremal families with known limits,
//! and certified two-sided bounds.
//!
//! The central quantity is `j_target(f(x), f(y)) / j_source(x, y)` for a map
//! `f` between two domains. For the recognized map kinds the sharp range of
//! that quantity is known; the search machinery estimates the supremum
//! numerically and reports it against those certificates.

mod families;
mod sample;
mod search;

pub use families::{families_for, family_trace, log_ladder, FamilyTrace, LimitEnd, SharpnessFamily};
pub use sample::{sample_pair, sample_point, stream_rng};
pub use search::{
    conjectured_shift_constant, punctured_automorphism_explore, sup_estimate, DistortionReport,
    PuncturedShiftReport, SearchBudget,
};

use num_complex::Complex;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geom::{OrthogonalMatrix, Vector};
use crate::holo::{HolomorphicMap, UnitPolynomial, UnitSeries, ZeroFreePolynomial};
use crate::metrics::j_metric;
use crate::moebius::{
    ball_automorphism, cayley_b_to_h, cayley_h_to_b, halfspace_inversion, sigma_a, MoebiusMap,
};
use crate::scalar::{real, Real};

/// Number of random source points pushed through the map at construction to
/// confirm the image stays in the declared target.
const SPOT_CHECK_POINTS: u64 = 1_000;
/// Fixed internal seed for the construction-time membership spot-check.
const SPOT_CHECK_SEED: u64 = 0x73706f74;

/// Sampled ratios with source separation below this are discarded as 0/0
/// noise; extremal families cover those regimes analytically.
pub const J_SOURCE_FLOOR: f64 = 1e-13;

/// Either flavor of map the distortion machinery accepts.
#[derive(Clone, Debug)]
pub enum AnyMap<T> {
    Moebius(MoebiusMap<T>),
    Holo(HolomorphicMap<T>),
}

/// Structural classification used to pick bound certificates and extremal
/// families. Carries exactly the parameters those decisions need.
#[derive(Clone, Debug)]
pub enum MapKind<T> {
    /// A Moebius map with no sharper certificate than the generic one.
    GenericMoebius,
    /// The ball automorphism built from the point reflection at `a`.
    BallAutomorphism { a: Vector<T> },
    /// Disk onto upper half-plane.
    CayleyDiskToHalf,
    /// Upper half-plane onto disk.
    CayleyHalfToDisk,
    /// Inversion in a sphere centered on the half-space boundary.
    HalfSpaceInversion { center: Vector<T>, radius: T },
    /// The ball automorphism restricted to punctured ball domains, moving
    /// the puncture from the origin to `a`.
    PuncturedAutomorphism { a: Vector<T> },
    /// z^k from the sector of opening pi/k onto the half-plane.
    PowerSector { k: u32 },
    /// z^m Q(z) with zero-free Q, between punctured disks; `degree` is the
    /// full degree m + deg Q, `monomial` records deg Q = 0.
    PuncturedPolynomial { degree: u32, monomial: bool },
    /// Coefficient-bounded power series on the disk; when the series is a
    /// single unit coefficient the monomial degree is recorded.
    BoundedSeries { monomial_degree: Option<u32> },
    /// exp((z+1)/(z-1)) on the disk; no finite distortion bound exists.
    ExpExample,
}

/// A map together with the source and target domains its ratios use.
#[derive(Clone, Debug)]
pub struct MapUnderTest<T> {
    map: AnyMap<T>,
    source: Domain<T>,
    target: Domain<T>,
    kind: MapKind<T>,
}

/// Tightest theorem-backed two-sided bound available for a map kind.
///
/// `None` on a side means no certified bound is available there; both sides
/// `None` means the ratio is not certified at all (and may be unbounded).
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoundCertificate<T> {
    pub lower: Option<T>,
    pub upper: Option<T>,
    pub tag: &'static str,
}

impl<T: Real> BoundCertificate<T> {
    pub fn is_certified(&self) -> bool {
        self.lower.is_some() || self.upper.is_some()
    }
}

impl<T: Real> MapUnderTest<T> {
    /// The identity map on any domain.
    pub fn identity(domain: Domain<T>) -> Result<Self> {
        Self::build(
            AnyMap::Moebius(MoebiusMap::identity(domain.dim())),
            domain.clone(),
            domain,
            MapKind::GenericMoebius,
        )
    }

    /// Any explicitly assembled Moebius map; only the generic certificate
    /// applies.
    pub fn generic_moebius(map: MoebiusMap<T>, source: Domain<T>, target: Domain<T>) -> Result<Self> {
        Self::build(AnyMap::Moebius(map), source, target, MapKind::GenericMoebius)
    }

    /// Ball automorphism: the point reflection sigma_a optionally followed
    /// by a rotation. Source and target are the unit ball of `a`'s
    /// dimension.
    pub fn ball_automorphism_map(
        a: &Vector<T>,
        rotation: Option<OrthogonalMatrix<T>>,
    ) -> Result<Self> {
        let map = ball_automorphism(a, rotation)?;
        let ball = Domain::unit_ball(a.dim());
        Self::build(
            AnyMap::Moebius(map),
            ball.clone(),
            ball,
            MapKind::BallAutomorphism { a: a.clone() },
        )
    }

    /// The Cayley map from the unit disk onto the upper half-plane.
    pub fn cayley_disk_to_half() -> Result<Self> {
        Self::build(
            AnyMap::Moebius(cayley_b_to_h()),
            Domain::unit_ball(2),
            Domain::half_space(2),
            MapKind::CayleyDiskToHalf,
        )
    }

    /// The Cayley map from the upper half-plane onto the unit disk.
    pub fn cayley_half_to_disk() -> Result<Self> {
        Self::build(
            AnyMap::Moebius(cayley_h_to_b()),
            Domain::half_space(2),
            Domain::unit_ball(2),
            MapKind::CayleyHalfToDisk,
        )
    }

    /// Inversion in the sphere S(center, radius) with the center on the
    /// half-space boundary, mapping the half-space onto itself.
    pub fn halfspace_inversion_map(center: &Vector<T>, radius: T) -> Result<Self> {
        let map = halfspace_inversion(center, radius)?;
        let half = Domain::half_space(center.dim());
        Self::build(
            AnyMap::Moebius(map),
            half.clone(),
            half,
            MapKind::HalfSpaceInversion {
                center: center.clone(),
                radius,
            },
        )
    }

    /// z^k from the sector of opening pi/k onto the upper half-plane.
    pub fn power_sector(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "power exponent must be >= 1".into(),
            ));
        }
        let angle = real::<T>(std::f64::consts::PI / k as f64);
        Self::build(
            AnyMap::Holo(HolomorphicMap::Power { k }),
            Domain::sector(angle)?,
            Domain::half_space(2),
            MapKind::PowerSector { k },
        )
    }

    /// z^m Q(z) with m >= 1 and Q zero-free in the closed disk, scaled so
    /// the coefficient sum is at most 1; acts between punctured disks.
    pub fn punctured_power_polynomial(m: u32, q: &ZeroFreePolynomial<T>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "the monomial factor degree m must be >= 1".into(),
            ));
        }
        let l1: T = q.coeffs().iter().map(|c| c.norm()).sum();
        if !(l1 > T::zero()) || !l1.is_finite() {
            return Err(Error::InvalidParameter(
                "zero-free factor must have a positive coefficient sum".into(),
            ));
        }
        let scale = if l1 > T::one() { T::one() / l1 } else { T::one() };
        let mut coeffs: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero()); (m - 1) as usize];
        coeffs.extend(q.coeffs().iter().map(|&c| c * scale));
        let poly = UnitPolynomial::new(coeffs)?;
        let origin = Vector::zero(2);
        let punctured = Domain::punctured_ball(2, vec![origin])?;
        let degree = m + q.degree() as u32;
        let monomial = q.degree() == 0;
        Self::build(
            AnyMap::Holo(HolomorphicMap::Polynomial(poly)),
            punctured.clone(),
            punctured,
            MapKind::PuncturedPolynomial { degree, monomial },
        )
    }

    /// A coefficient-bounded power series as a self-map of the disk.
    pub fn bounded_series(series: UnitSeries<T>) -> Result<Self> {
        let nonzero: Vec<(usize, T)> = series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > T::zero())
            .map(|(i, c)| (i, c.norm()))
            .collect();
        let monomial_degree = match nonzero.as_slice() {
            [(p, norm)] if *p >= 1 && (*norm - T::one()).abs() <= real::<T>(1e-12) => {
                Some(*p as u32)
            }
            _ => None,
        };
        Self::build(
            AnyMap::Holo(HolomorphicMap::Series(series)),
            Domain::unit_ball(2),
            Domain::unit_ball(2),
            MapKind::BoundedSeries { monomial_degree },
        )
    }

    /// exp((z+1)/(z-1)) as a self-map of the disk.
    pub fn exp_example() -> Result<Self> {
        Self::build(
            AnyMap::Holo(HolomorphicMap::ExpExample),
            Domain::unit_ball(2),
            Domain::unit_ball(2),
            MapKind::ExpExample,
        )
    }

    /// The ball automorphism sending 0 to `a`, restricted to punctured
    /// domains: the ball punctured at the origin onto the ball punctured at
    /// `a`. This is the configuration the punctured-shift explorer studies.
    pub fn punctured_automorphism(a: &Vector<T>) -> Result<Self> {
        if a.norm() == T::zero() {
            return Err(Error::InvalidParameter(
                "the punctured shift needs a nonzero image of the origin".into(),
            ));
        }
        let map = sigma_a(a)?;
        let source = Domain::punctured_ball(a.dim(), vec![Vector::zero(a.dim())])?;
        let target = Domain::punctured_ball(a.dim(), vec![a.clone()])?;
        Self::build(
            AnyMap::Moebius(map),
            source,
            target,
            MapKind::PuncturedAutomorphism { a: a.clone() },
        )
    }

    fn build(
        map: AnyMap<T>,
        source: Domain<T>,
        target: Domain<T>,
        kind: MapKind<T>,
    ) -> Result<Self> {
        if let AnyMap::Holo(_) = &map {
            if source.dim() != 2 || target.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: source.dim().max(target.dim()),
                });
            }
        }
        let m = MapUnderTest {
            map,
            source,
            target,
            kind,
        };
        m.spot_check()?;
        Ok(m)
    }

    /// Construction-time invariant: sampled source points land in the target.
    fn spot_check(&self) -> Result<()> {
        for i in 0..SPOT_CHECK_POINTS {
            let mut rng = sample::stream_rng(SPOT_CHECK_SEED, i);
            let x = sample::sample_point(&self.source, &mut rng);
            let fx = self.apply(&x)?;
            if !self.target.contains(&fx) {
                return Err(Error::ImageOutsideTarget(format!(
                    "{:?} maps to {:?}, outside {}",
                    x.coords(),
                    fx.coords(),
                    self.target
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Domain<T> {
        &self.source
    }

    pub fn target(&self) -> &Domain<T> {
        &self.target
    }

    pub fn kind(&self) -> &MapKind<T> {
        &self.kind
    }

    /// Image of one source point.
    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        match &self.map {
            AnyMap::Moebius(m) => m.apply(x),
            AnyMap::Holo(h) => {
                if x.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        got: x.dim(),
                    });
                }
                let z = h.eval(Complex::new(x.coords()[0], x.coords()[1]))?;
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::ImageOutsideTarget(
                        "map value is not finite".into(),
                    ));
                }
                Ok(Vector::new(vec![z.re, z.im]))
            }
        }
    }
}

/// The j-distortion ratio `j_target(f(x), f(y)) / j_source(x, y)`.
///
/// Errors on coincident points (either end), on points outside the source,
/// and on images that escape the target.
pub fn ratio<T: Real>(m: &MapUnderTest<T>, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    let js = j_metric(m.source(), x, y)?;
    if js == T::zero() {
        return Err(Error::CoincidentPoints);
    }
    let fx = m.apply(x)?;
    let fy = m.apply(y)?;
    let jt = j_metric(m.target(), &fx, &fy).map_err(|e| match e {
        Error::OutsideDomain(s) => Error::ImageOutsideTarget(s),
        other => other,
    })?;
    if jt == T::zero() {
        return Err(Error::CoincidentPoints);
    }
    Ok(jt / js)
}

/// The tightest certified bounds on the ratio for the map's kind.
///
/// Moebius maps between proper subdomains always carry the generic
/// two-sided certificate [1/2, 2]; recognized special shapes tighten it.
/// Kinds with no known finite bound return an uncertified result.
pub fn bound_certificates<T: Real>(m: &MapUnderTest<T>) -> BoundCertificate<T> {
    let one = T::one();
    let two = real::<T>(2.0);
    let half = real::<T>(0.5);
    match m.kind() {
        MapKind::GenericMoebius
        | MapKind::CayleyDiskToHalf
        | MapKind::CayleyHalfToDisk
        | MapKind::PuncturedAutomorphism { .. } => BoundCertificate {
            lower: Some(half),
            upper: Some(two),
            tag: "moebius-two-sided",
        },
        MapKind::BallAutomorphism { a } => {
            let na = a.norm();
            BoundCertificate {
                lower: Some(one / (one + na)),
                upper: Some(one + na),
                tag: "ball-automorphism-sharp",
            }
        }
        MapKind::HalfSpaceInversion { .. } => BoundCertificate {
            lower: Some(half),
            upper: Some(two),
            tag: "halfspace-inversion-sharp",
        },
        MapKind::PowerSector { k } => BoundCertificate {
            lower: None,
            upper: Some(real::<T>(*k as f64)),
            tag: "sector-power",
        },
        MapKind::PuncturedPolynomial { degree, .. } => BoundCertificate {
            lower: None,
            upper: Some(real::<T>(*degree as f64)),
            tag: "punctured-polynomial-degree",
        },
        MapKind::BoundedSeries { .. } => BoundCertificate {
            lower: None,
            upper: Some(one),
            tag: "series-coefficient-contraction",
        },
        MapKind::ExpExample => BoundCertificate {
            lower: None,
            upper: None,
            tag: "none",
        },
    }
}
