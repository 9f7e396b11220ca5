//! Planar holomorphic maps: integer power maps on sectors, coefficient-
//! bounded polynomials and power series on the disk, and the exponential
//! example exp((z+1)/(z-1)), together with the scalar bound machinery used
//! to certify their distortion.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

const COEFF_SLACK: f64 = 1e-12;

fn l1_norm<T: Real>(coeffs: &[Complex<T>]) -> T {
    coeffs.iter().map(|c| c.norm()).fold(T::zero(), |a, b| a + b)
}

fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Polynomial a_1 z + ... + a_p z^p with sum |a_k| <= 1 and a_p != 0, a
/// self-map of the unit disk fixing the origin.
#[derive(Clone, Debug)]
pub struct UnitPolynomial<T> {
    /// a_1 .. a_p
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> UnitPolynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "polynomial needs at least one coefficient".into(),
            ));
        }
        if coeffs.last().unwrap().norm_sqr() == T::zero() {
            return Err(Error::InvalidParameter(
                "leading coefficient must be nonzero for an exact degree".into(),
            ));
        }
        let norm = l1_norm(&coeffs);
        if norm > T::one() + real::<T>(COEFF_SLACK) {
            return Err(Error::InvalidParameter(format!(
                "coefficient l1 norm {norm} exceeds 1"
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z) * z
    }
}

/// Truncated power series a_0 + a_1 z + ... with sum |a_k| <= 1; the stored
/// coefficient list is the truncation, so the discarded tail is exactly
/// zero (well under the 1e-14 budget the invariant asks for).
#[derive(Clone, Debug)]
pub struct UnitSeries<T> {
    /// a_0 .. a_N
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> UnitSeries<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "series needs at least one coefficient".into(),
            ));
        }
        let norm = l1_norm(&coeffs);
        if norm > T::one() + real::<T>(COEFF_SLACK) {
            return Err(Error::InvalidParameter(format!(
                "coefficient l1 norm {norm} exceeds 1"
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn truncation_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z)
    }
}

/// Polynomial with no zeros in the closed unit disk, certified at
/// construction by locating all roots and rejecting any with modulus
/// below 1 (borderline moduli in [1 - 1e-10, 1) count as inside).
#[derive(Clone, Debug)]
pub struct ZeroFreePolynomial<T> {
    /// q_0 .. q_d, q_d != 0
    coeffs: Vec<Complex<T>>,
    min_root_modulus: T,
}

impl<T: Real> ZeroFreePolynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.last().unwrap().norm_sqr() == T::zero() {
            return Err(Error::InvalidParameter(
                "zero-free polynomial needs a nonzero leading coefficient".into(),
            ));
        }
        if coeffs[0].norm_sqr() == T::zero() {
            return Err(Error::RootInDisk { modulus: 0.0 });
        }
        let mut min_mod = T::infinity();
        if coeffs.len() > 1 {
            for root in polynomial_roots(&coeffs) {
                let m = root.norm();
                if m < min_mod {
                    min_mod = m;
                }
            }
            if min_mod < T::one() {
                return Err(Error::RootInDisk {
                    modulus: min_mod.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            coeffs,
            min_root_modulus: min_mod,
        })
    }

    /// Q(z) = prod (z - r_k) for the given roots, all of modulus >= 1.
    pub fn from_roots(roots: &[Complex<T>]) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        let mut coeffs = vec![one];
        for &r in roots {
            let mut next = vec![Complex::new(T::zero(), T::zero()); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1] + c;
                next[i] = next[i] - c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn min_root_modulus(&self) -> T {
        self.min_root_modulus
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z)
    }
}

/// All complex roots by the Durand-Kerner simultaneous iteration.
/// `coeffs` is low-to-high with a nonzero leading coefficient; intended for
/// the small degrees (<= 16) used here.
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<Complex<T>> = coeffs.iter().map(|&c| c / lead).collect();
    // Cauchy bound on root moduli
    let bound = T::one()
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max);
    let mut z: Vec<Complex<T>> = (0..d)
        .map(|i| {
            let angle = real::<T>(2.0 * std::f64::consts::PI * i as f64 / d as f64 + 0.4);
            Complex::from_polar(bound * real::<T>(0.7), angle)
        })
        .collect();
    let eps = real::<T>(1e-14);
    for _ in 0..400 {
        let mut max_step = T::zero();
        for i in 0..d {
            let mut den = Complex::new(T::one(), T::zero());
            for j in 0..d {
                if j != i {
                    den = den * (z[i] - z[j]);
                }
            }
            if den.norm_sqr() == T::zero() {
                // nudge coincident guesses apart
                z[i] = z[i] + Complex::new(eps, eps);
                continue;
            }
            let delta = horner(&monic, z[i]) / den;
            z[i] = z[i] - delta;
            let rel = delta.norm() / (T::one() + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < eps {
            break;
        }
    }
    z
}

/// The planar maps whose j-distortion the distortion module certifies.
#[derive(Clone, Debug)]
pub enum HolomorphicMap<T> {
    /// z -> z^k on the sector 0 < arg z < pi/k
    Power { k: u32 },
    /// coefficient-bounded polynomial on the unit disk
    Polynomial(UnitPolynomial<T>),
    /// coefficient-bounded power series on the unit disk
    Series(UnitSeries<T>),
    /// z -> exp((z+1)/(z-1)) on the unit disk
    ExpExample,
}

impl<T: Real> HolomorphicMap<T> {
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        match self {
            HolomorphicMap::Power { k } => {
                if *k == 0 {
                    return Err(Error::InvalidParameter("power exponent must be >= 1".into()));
                }
                let angle = real::<T>(std::f64::consts::PI / *k as f64);
                let arg = z.im.atan2(z.re);
                if z.norm_sqr() == T::zero() || !(arg > T::zero() && arg < angle) {
                    return Err(Error::OutsideDomain(format!(
                        "{z} is not in the sector of angle pi/{k}"
                    )));
                }
                Ok(z.powu(*k))
            }
            HolomorphicMap::Polynomial(p) => {
                check_disk(z)?;
                Ok(p.eval(z))
            }
            HolomorphicMap::Series(s) => {
                check_disk(z)?;
                Ok(s.eval(z))
            }
            HolomorphicMap::ExpExample => {
                check_disk(z)?;
                let one = Complex::new(T::one(), T::zero());
                let den = z - one;
                if den.norm_sqr() == T::zero() {
                    return Err(Error::Pole("exp example at z = 1".into()));
                }
                Ok(((z + one) / den).exp())
            }
        }
    }
}

fn check_disk<T: Real>(z: Complex<T>) -> Result<()> {
    if z.norm_sqr() < T::one() {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("{z} is not in the unit disk")))
    }
}

/// j-distortion of the power map z -> z^k on one pair of the sector
/// S = {0 < arg z < pi/k}: j_{H}(x^k, y^k) / j_S(x, y) where H is the upper
/// half-plane.
pub fn power_map_j_ratio<T: Real>(k: u32, x: Complex<T>, y: Complex<T>) -> Result<T> {
    let map = HolomorphicMap::Power { k };
    let fx = map.eval(x)?;
    let fy = map.eval(y)?;
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let sector = crate::domain::Domain::sector(real::<T>(std::f64::consts::PI / k as f64))?;
    let half = crate::domain::Domain::half_space(2);
    let vx = crate::geom::Vector::from_complex(x);
    let vy = crate::geom::Vector::from_complex(y);
    let j_source = crate::metrics::j_metric(&sector, &vx, &vy)?;
    let j_target = crate::metrics::j_metric(
        &half,
        &crate::geom::Vector::from_complex(fx),
        &crate::geom::Vector::from_complex(fy),
    )?;
    if j_source == T::zero() {
        return Err(Error::CoincidentPoints);
    }
    Ok(j_target / j_source)
}

/// The pieces of the distortion bound for f(z) = z^m Q(z) on the punctured
/// disk, with Q zero-free in the closed disk.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PolynomialRatioParts<T> {
    /// |Q(x)/Q(y) - 1|
    pub q_deviation: T,
    /// |x^m / y^m - 1|
    pub power_deviation: T,
    /// |f(x)/f(y) - 1|
    pub f_deviation: T,
    /// power_deviation * |Q(x)/Q(y)| + q_deviation, an upper bound for
    /// f_deviation by the triangle inequality
    pub combined_bound: T,
    /// (1 + |x-y|/(1-|y|))^d - 1
    pub q_bound: T,
    /// q_deviation <= q_bound
    pub q_bound_holds: bool,
    /// log(1 + |z^m - 1|) <= m log(1 + |z - 1|) at z = x/y
    pub log_power_holds: bool,
}

pub fn polynomial_ratio_bound_parts<T: Real>(
    q: &ZeroFreePolynomial<T>,
    m: u32,
    x: Complex<T>,
    y: Complex<T>,
) -> Result<PolynomialRatioParts<T>> {
    if x.norm_sqr() == T::zero() || y.norm_sqr() == T::zero() {
        return Err(Error::OutsideDomain(
            "points must lie in the punctured disk".into(),
        ));
    }
    if !(x.norm_sqr() < T::one()) || !(y.norm_sqr() < T::one()) {
        return Err(Error::OutsideDomain(
            "points must lie in the punctured disk".into(),
        ));
    }
    let one = Complex::new(T::one(), T::zero());
    let q_ratio = q.eval(x) / q.eval(y);
    let q_deviation = (q_ratio - one).norm();
    let z = x / y;
    let zm = z.powu(m);
    let power_deviation = (zm - one).norm();
    let f_deviation = (zm * q_ratio - one).norm();
    let combined_bound = power_deviation * q_ratio.norm() + q_deviation;
    let d = q.degree() as f64;
    let q_bound =
        (T::one() + (x - y).norm() / (T::one() - y.norm())).powf(real::<T>(d)) - T::one();
    let slack = real::<T>(1e-12);
    let q_bound_holds = q_deviation <= q_bound + slack;
    let log_power_holds = {
        let lhs = power_deviation.ln_1p();
        let rhs = real::<T>(m as f64) * (z - one).norm().ln_1p();
        lhs <= rhs + slack
    };
    Ok(PolynomialRatioParts {
        q_deviation,
        power_deviation,
        f_deviation,
        combined_bound,
        q_bound,
        q_bound_holds,
        log_power_holds,
    })
}

/// The inequality log(1 + |z^p - 1|) <= p log(1 + |z - 1|) on its own.
pub fn log_power_inequality_holds<T: Real>(z: Complex<T>, p: u32) -> bool {
    let one = Complex::new(T::one(), T::zero());
    let lhs = (z.powu(p) - one).norm().ln_1p();
    let rhs = real::<T>(p as f64) * (z - one).norm().ln_1p();
    lhs <= rhs + real::<T>(1e-12)
}

/// 1 + |x^n - y^n| / (|x|^n sin n theta) <= (1 + |x - y| / (|x| sin theta))^n
/// for complex x != 0 and theta in (0, pi/(2n)]. Returns (lhs, rhs).
pub fn power_difference_bound_sides<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    n: u32,
    theta: T,
) -> Result<(T, T)> {
    if x.norm_sqr() == T::zero() {
        return Err(Error::InvalidParameter("x must be nonzero".into()));
    }
    let upper = real::<T>(std::f64::consts::FRAC_PI_2 / n as f64);
    if !(theta > T::zero()) || theta > upper + real::<T>(1e-15) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, pi/(2n)], got {theta:?}"
        )));
    }
    let xn = x.powu(n);
    let yn = y.powu(n);
    let nf = real::<T>(n as f64);
    let lhs = T::one() + (xn - yn).norm() / (x.norm().powi(n as i32) * (nf * theta).sin());
    let rhs = (T::one() + (x - y).norm() / (x.norm() * theta.sin())).powi(n as i32);
    Ok((lhs, rhs))
}

/// The extreme points z_k = (e^k - 1)/(e^k + 1) of the exponential example.
pub fn exp_example_point<T: Real>(k: u32) -> T {
    (real::<T>(k as f64) * real::<T>(0.5)).tanh()
}

/// j-distances across one step of the exponential example's point ladder:
/// j of (z_k, z_{k+1}) in the disk and j of their images in the punctured
/// image disk, both from closed forms evaluated in the log domain so that
/// e^{-e^k} never underflows.
///
/// j_in = log((e^{k+1} + 1)/(e^k + 1)), j_out = e^k (e - 1).
pub fn exp_example_j_pair<T: Real>(k: u32) -> Result<(T, T)> {
    if !(1..=30).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "exp example ladder index must be in 1..=30, got {k}"
        )));
    }
    let kf = real::<T>(k as f64);
    let j_in = T::one() + (-(kf + T::one())).exp().ln_1p() - (-kf).exp().ln_1p();
    let j_out = kf.exp() * (T::one().exp() - T::one());
    Ok((j_in, j_out))
}
