//! Scalar functions behind the sector and ball distortion bounds, with
//! numeric monotonicity and limit harnesses.
//!
//! The three sector functions share parameters k in (1, oo), theta in
//! (0, pi/(2k)), r in (0, 1):
//!
//! * f1(k, theta) = k sin(theta)/(1 - sin(theta)) - sin(k theta)/(1 - sin(k theta))
//! * f2(k, theta, r) = (1 - (1 - sin theta) r) / (1 - (1 - sin k theta) r^k)
//! * f3(k, theta, r) = log(1 + (1 - r^k)/(r^k sin k theta)) / log(1 + (1 - r)/(r sin theta))
//!
//! f3 is the j-distortion of the power map along a common-argument ray; its
//! limits r -> 1 and r -> 0 give the bracket [k sin(theta)/sin(k theta), k].

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

fn check_sector_params<T: Real>(k: T, theta: T) -> Result<()> {
    if !(k > T::one()) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("k must be > 1, got {k:?}")));
    }
    let limit = real::<T>(std::f64::consts::FRAC_PI_2) / k;
    if !(theta > T::zero()) || !(theta < limit) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, pi/(2k)), got {theta:?}"
        )));
    }
    Ok(())
}

fn check_unit<T: Real>(name: &str, x: T) -> Result<()> {
    if !(x > T::zero()) || !(x < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in (0, 1), got {x:?}"
        )));
    }
    Ok(())
}

pub fn f1<T: Real>(k: T, theta: T) -> Result<T> {
    check_sector_params(k, theta)?;
    let s1 = theta.sin();
    let sk = (k * theta).sin();
    Ok(k * s1 / (T::one() - s1) - sk / (T::one() - sk))
}

pub fn f2<T: Real>(k: T, theta: T, r: T) -> Result<T> {
    check_sector_params(k, theta)?;
    check_unit("r", r)?;
    let s1 = theta.sin();
    let sk = (k * theta).sin();
    let rk = r.powf(k);
    Ok((T::one() - (T::one() - s1) * r) / (T::one() - (T::one() - sk) * rk))
}

pub fn f3<T: Real>(k: T, theta: T, r: T) -> Result<T> {
    check_sector_params(k, theta)?;
    check_unit("r", r)?;
    let s1 = theta.sin();
    let sk = (k * theta).sin();
    let rk = r.powf(k);
    let num = log1p_big((T::one() - rk) / (rk * sk), rk, sk, k, r);
    let den = ((T::one() - r) / (r * s1)).ln_1p();
    Ok(num / den)
}

/// log(1 + u) for u = (1 - r^k)/(r^k s), switching to the expanded log form
/// when u overflows the scalar type.
fn log1p_big<T: Real>(u: T, rk: T, s: T, k: T, r: T) -> T {
    if u.is_finite() {
        u.ln_1p()
    } else {
        (-rk).ln_1p() - k * r.ln() - s.ln()
    }
}

/// Endpoints of f3 in r: the ratio decreases from k (r -> 0) to
/// k sin(theta)/sin(k theta) (r -> 1).
pub fn common_ray_bracket<T: Real>(k: T, theta: T) -> Result<(T, T)> {
    check_sector_params(k, theta)?;
    Ok((k * theta.sin() / (k * theta).sin(), k))
}

/// log(1 + 2 c d theta / (1 - c d)) / log(1 + 2 d theta / (1 - d)) for
/// c, d in (0, 1), theta in (0, 1]. Increasing in theta, so its value at
/// theta = 1 dominates the interval.
pub fn scaled_log_ratio<T: Real>(c: T, d: T, theta: T) -> Result<T> {
    check_unit("c", c)?;
    check_unit("d", d)?;
    if !(theta > T::zero()) || theta > T::one() {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1], got {theta:?}"
        )));
    }
    let two = real::<T>(2.0);
    let num = (two * c * d * theta / (T::one() - c * d)).ln_1p();
    let den = (two * d * theta / (T::one() - d)).ln_1p();
    Ok(num / den)
}

/// arth(c theta) / arth(theta) for c in (0, 1), theta in (0, 1]; decreasing
/// in theta with supremum c at theta -> 0.
pub fn arth_ratio<T: Real>(c: T, theta: T) -> Result<T> {
    check_unit("c", c)?;
    if !(theta > T::zero()) || theta > T::one() {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1], got {theta:?}"
        )));
    }
    Ok((c * theta).atanh() / theta.atanh())
}

/// (1 + 2cd theta/(1-cd)) (1 + c(1-d)/(1+cd)) <= 1 + (c(1-d) + 2cd theta)/(1-cd),
/// checked with 1e-12 relative slack.
pub fn product_inequality<T: Real>(c: T, d: T, theta: T) -> Result<bool> {
    check_unit("c", c)?;
    check_unit("d", d)?;
    if !(theta > T::zero()) || theta > T::one() {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1], got {theta:?}"
        )));
    }
    let two = real::<T>(2.0);
    let cd = c * d;
    let lhs = (T::one() + two * cd * theta / (T::one() - cd))
        * (T::one() + c * (T::one() - d) / (T::one() + cd));
    let rhs = T::one() + (c * (T::one() - d) + two * cd * theta) / (T::one() - cd);
    Ok(lhs <= rhs + real::<T>(1e-12) * rhs)
}

/// A named scalar function of one variable, the unit the monotonicity
/// harness works on.
pub struct ScalarFn<T> {
    pub name: &'static str,
    f: Box<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: Real> ScalarFn<T> {
    pub fn new(name: &'static str, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self { name, f: Box::new(f) }
    }

    pub fn eval(&self, x: T) -> T {
        (self.f)(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Checks one-directional monotonicity across consecutive grid values,
/// tolerating `slack` (relative to the local scale) of float noise.
pub fn strictly_monotone_on_grid<T: Real>(values: &[T], direction: Direction, slack: T) -> bool {
    values.windows(2).all(|w| {
        let scale = T::one().max(w[0].abs()).max(w[1].abs());
        match direction {
            Direction::Increasing => w[1] - w[0] > -slack * scale,
            Direction::Decreasing => w[0] - w[1] > -slack * scale,
        }
    })
}

/// Evenly spaced interior points of the open interval (a, b).
pub fn interior_grid<T: Real>(a: T, b: T, count: usize) -> Vec<T> {
    let n = count.max(2);
    (0..n)
        .map(|i| {
            let t = real::<T>((i as f64 + 0.5) / n as f64);
            a + (b - a) * t
        })
        .collect()
}

/// Numeric check of the quotient-monotonicity rule: when num and den both
/// vanish at the shared anchor endpoint and num'/den' is monotone on the
/// interval, the quotient num/den is monotone the same way. Samples the
/// derivative ratio (central differences) and the quotient on a grid and
/// requires both to be monotone in `direction`.
pub fn monotone_lhopital_harness<T: Real>(
    num: &ScalarFn<T>,
    den: &ScalarFn<T>,
    interval: (T, T),
    direction: Direction,
    grid: usize,
) -> Result<bool> {
    let (a, b) = interval;
    if !(b > a) {
        return Err(Error::InvalidParameter(
            "interval must have positive length".into(),
        ));
    }
    let xs = interior_grid(a, b, grid.max(8));
    let h = (b - a) * real::<T>(1e-6);
    let mut deriv_ratio = Vec::with_capacity(xs.len());
    let mut quotient = Vec::with_capacity(xs.len());
    for &x in &xs {
        let dn = num.eval(x + h) - num.eval(x - h);
        let dd = den.eval(x + h) - den.eval(x - h);
        if dd == T::zero() || !dd.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "denominator {} has vanishing derivative near {x:?}",
                den.name
            )));
        }
        deriv_ratio.push(dn / dd);
        let q_den = den.eval(x);
        if q_den == T::zero() || !q_den.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "denominator {} vanishes inside the interval at {x:?}",
                den.name
            )));
        }
        quotient.push(num.eval(x) / q_den);
    }
    // central differences carry O(h^2) truncation noise, so the derivative
    // ratio gets a looser slack than the directly evaluated quotient
    let ok_deriv = strictly_monotone_on_grid(&deriv_ratio, direction, real::<T>(1e-7));
    let ok_quot = strictly_monotone_on_grid(&quotient, direction, real::<T>(1e-13));
    Ok(ok_deriv && ok_quot)
}
