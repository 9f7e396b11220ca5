//! Canonical domains with membership and boundary-distance semantics.
//!
//! Supported: the open unit ball, the open upper half-space x_n > 0, the
//! planar sector of opening angle phi at the origin, and the two punctured
//! variants where finitely many interior points join the boundary for
//! distance purposes.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{dist_slice, norm_slice, one_minus_norm_sq_slice, Vector};
use crate::scalar::{real, Real};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Domain<T> {
    UnitBall {
        dim: usize,
    },
    HalfSpace {
        dim: usize,
    },
    /// Planar angular domain { r e^{i theta} : 0 < theta < angle, r > 0 }.
    Sector {
        angle: T,
    },
    PuncturedUnitBall {
        dim: usize,
        punctures: Vec<Vector<T>>,
    },
    PuncturedHalfSpace {
        dim: usize,
        punctures: Vec<Vector<T>>,
    },
}

impl<T: Real> Domain<T> {
    pub fn unit_ball(dim: usize) -> Self {
        assert!(dim >= 2);
        Domain::UnitBall { dim }
    }

    pub fn half_space(dim: usize) -> Self {
        assert!(dim >= 2);
        Domain::HalfSpace { dim }
    }

    pub fn sector(angle: T) -> Result<Self> {
        let two_pi = real::<T>(2.0 * std::f64::consts::PI);
        if !(angle > T::zero() && angle < two_pi) {
            return Err(Error::InvalidParameter(format!(
                "sector angle must lie in (0, 2*pi), got {angle}"
            )));
        }
        Ok(Domain::Sector { angle })
    }

    pub fn punctured_ball(dim: usize, punctures: Vec<Vector<T>>) -> Result<Self> {
        let base = Domain::unit_ball(dim);
        base.validate_punctures(&punctures)?;
        Ok(Domain::PuncturedUnitBall { dim, punctures })
    }

    pub fn punctured_half_space(dim: usize, punctures: Vec<Vector<T>>) -> Result<Self> {
        let base = Domain::half_space(dim);
        base.validate_punctures(&punctures)?;
        Ok(Domain::PuncturedHalfSpace { dim, punctures })
    }

    fn validate_punctures(&self, punctures: &[Vector<T>]) -> Result<()> {
        for p in punctures {
            if p.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: p.dim(),
                });
            }
            if !self.contains(p) {
                return Err(Error::InvalidParameter(format!(
                    "puncture {:?} is not strictly inside the domain",
                    p.coords()
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::UnitBall { dim } | Domain::HalfSpace { dim } => *dim,
            Domain::Sector { .. } => 2,
            Domain::PuncturedUnitBall { dim, .. } | Domain::PuncturedHalfSpace { dim, .. } => *dim,
        }
    }

    pub fn punctures(&self) -> &[Vector<T>] {
        match self {
            Domain::PuncturedUnitBall { punctures, .. }
            | Domain::PuncturedHalfSpace { punctures, .. } => punctures,
            _ => &[],
        }
    }

    /// The same domain with punctures forgotten.
    pub fn underlying(&self) -> Domain<T> {
        match self {
            Domain::PuncturedUnitBall { dim, .. } => Domain::UnitBall { dim: *dim },
            Domain::PuncturedHalfSpace { dim, .. } => Domain::HalfSpace { dim: *dim },
            other => other.clone(),
        }
    }

    /// Signed boundary clearance evaluated directly on a coordinate slice.
    ///
    /// Positive iff the point lies inside; for interior points it equals the
    /// distance to the boundary (punctures included). Outside the ball and
    /// half-space the value is the usual signed formula; outside a sector it
    /// is a negative sentinel. This is the hot-path primitive the
    /// quasihyperbolic estimator and the samplers drive.
    pub fn boundary_gap(&self, coords: &[T]) -> T {
        debug_assert_eq!(coords.len(), self.dim());
        match self {
            Domain::UnitBall { .. } => ball_gap(coords),
            Domain::HalfSpace { .. } => *coords.last().unwrap(),
            Domain::Sector { angle } => sector_gap(*angle, coords),
            Domain::PuncturedUnitBall { punctures, .. } => {
                let mut g = ball_gap(coords);
                for p in punctures {
                    g = g.min(dist_slice(coords, p.coords()));
                }
                g
            }
            Domain::PuncturedHalfSpace { punctures, .. } => {
                let mut g = *coords.last().unwrap();
                for p in punctures {
                    g = g.min(dist_slice(coords, p.coords()));
                }
                g
            }
        }
    }

    pub fn contains(&self, x: &Vector<T>) -> bool {
        x.dim() == self.dim() && self.boundary_gap(x.coords()) > T::zero()
    }

    pub fn check_member(&self, x: &Vector<T>) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        if self.boundary_gap(x.coords()) > T::zero() {
            Ok(())
        } else {
            Err(Error::OutsideDomain(format!(
                "{:?} is not in {self}",
                x.coords()
            )))
        }
    }

    /// Euclidean distance from an interior point to the boundary.
    pub fn boundary_distance(&self, x: &Vector<T>) -> Result<T> {
        self.check_member(x)?;
        Ok(self.boundary_gap(x.coords()))
    }
}

/// Clearance of the unit ball, `1 - |x|`, written so the relative accuracy
/// survives points that hug the sphere (images of extremal families land
/// within a few ulp of it).
fn ball_gap<T: Real>(coords: &[T]) -> T {
    one_minus_norm_sq_slice(coords) / (T::one() + norm_slice(coords))
}

/// Distance from an interior sector point to the two boundary rays:
/// |x| sin(min(theta, phi - theta)) while that angle is acute, otherwise the
/// nearest boundary point is the vertex and the distance is |x|.
/// Returns a negative sentinel for points outside the sector.
fn sector_gap<T: Real>(angle: T, coords: &[T]) -> T {
    let (x, y) = (coords[0], coords[1]);
    let r = norm_slice(coords);
    if r == T::zero() {
        return -T::one();
    }
    let pi = real::<T>(std::f64::consts::PI);
    let mut theta = y.atan2(x);
    if theta < T::zero() {
        theta = theta + pi + pi;
    }
    if theta <= T::zero() || theta >= angle {
        return -T::one();
    }
    let m = theta.min(angle - theta);
    if m <= real::<T>(std::f64::consts::FRAC_PI_2) {
        r * m.sin()
    } else {
        r
    }
}

impl<T: Real> fmt::Display for Domain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::UnitBall { dim } => write!(f, "unit ball B^{dim}"),
            Domain::HalfSpace { dim } => write!(f, "half-space H^{dim}"),
            Domain::Sector { angle } => write!(f, "sector of angle {angle}"),
            Domain::PuncturedUnitBall { dim, punctures } => {
                write!(f, "unit ball B^{dim} with {} puncture(s)", punctures.len())
            }
            Domain::PuncturedHalfSpace { dim, punctures } => {
                write!(f, "half-space H^{dim} with {} puncture(s)", punctures.len())
            }
        }
    }
}
