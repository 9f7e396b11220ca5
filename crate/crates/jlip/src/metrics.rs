//! The distance-ratio metric j and the hyperbolic metrics of the unit ball
//! and the upper half-space.

use crate::domain::Domain;
use crate::error::Result;
use crate::geom::Vector;
use crate::scalar::{real, Real};

/// Distance-ratio metric
/// j_G(x, y) = log(1 + |x - y| / min(d(x, bd G), d(y, bd G))).
///
/// Stable for tiny and huge arguments: the log(1 + u) primitive is used
/// directly, and the ratio falls back to log-domain subtraction when the
/// quotient overflows.
pub fn j_metric<T: Real>(g: &Domain<T>, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    let dx = g.boundary_distance(x)?;
    let dy = g.boundary_distance(y)?;
    let sep = x.dist(y);
    if sep == T::zero() {
        return Ok(T::zero());
    }
    let dmin = dx.min(dy);
    let u = sep / dmin;
    if u.is_finite() {
        Ok(u.ln_1p())
    } else {
        Ok(sep.ln() - dmin.ln())
    }
}

/// Hyperbolic metric of the unit ball:
/// sinh^2(rho / 2) = |x - y|^2 / ((1 - |x|^2)(1 - |y|^2)).
pub fn rho_ball<T: Real>(x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    let ball = Domain::unit_ball(x.dim());
    ball.check_member(x)?;
    ball.check_member(y)?;
    let qx = one_minus_norm_sq(x);
    let qy = one_minus_norm_sq(y);
    let s = x.dist(y) / (qx * qy).sqrt();
    Ok(real::<T>(2.0) * s.asinh())
}

/// Hyperbolic metric of the upper half-space:
/// cosh(rho) = 1 + |x - y|^2 / (2 x_n y_n).
pub fn rho_half<T: Real>(x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    let half = Domain::half_space(x.dim());
    half.check_member(x)?;
    half.check_member(y)?;
    let s = x.dist(y) / (real::<T>(2.0) * (x.last() * y.last()).sqrt());
    Ok(real::<T>(2.0) * s.asinh())
}

fn one_minus_norm_sq<T: Real>(x: &Vector<T>) -> T {
    crate::geom::one_minus_norm_sq_slice(x.coords())
}

/// Convenience: the applicable hyperbolic metric for a ball or half-space
/// domain (punctures ignored), `None` for sectors and other domains.
pub fn rho_for_domain<T: Real>(g: &Domain<T>, x: &Vector<T>, y: &Vector<T>) -> Option<Result<T>> {
    match g.underlying() {
        Domain::UnitBall { .. } => Some(rho_ball(x, y)),
        Domain::HalfSpace { .. } => Some(rho_half(x, y)),
        _ => None,
    }
}
