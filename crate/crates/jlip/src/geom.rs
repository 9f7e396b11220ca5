//! Euclidean and extended-space primitives: vectors, orthogonal matrices,
//! the conjugate point, and the two inversive generators (hyperplane
//! reflections and sphere inversions) every Moebius map is built from.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Point of n-dimensional Euclidean space, n >= 2.
///
/// Construction asserts the invariants (length and finiteness) because an
/// invalid vector is a programming error, not a runtime condition; callers
/// holding untrusted input validate before constructing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vector<T>(Vec<T>);

impl<T: Real> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        assert!(coords.len() >= 2, "vectors need at least two coordinates");
        assert!(
            coords.iter().all(|c| c.is_finite()),
            "vector coordinates must be finite"
        );
        Vector(coords)
    }

    pub fn from_slice(coords: &[T]) -> Self {
        Self::new(coords.to_vec())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    /// i-th standard basis vector scaled by `t`.
    pub fn axis(dim: usize, i: usize, t: T) -> Self {
        assert!(i < dim);
        let mut c = vec![T::zero(); dim];
        c[i] = t;
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Self) -> T {
        dist_slice(&self.0, &other.0)
    }

    pub fn scaled(&self, t: T) -> Self {
        Vector(self.0.iter().map(|&c| c * t).collect())
    }

    pub fn last(&self) -> T {
        *self.0.last().unwrap()
    }

    /// Planar identification with the complex numbers; `None` unless n = 2.
    pub fn to_complex(&self) -> Option<Complex<T>> {
        if self.dim() == 2 {
            Some(Complex::new(self.0[0], self.0[1]))
        } else {
            None
        }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(vec![z.re, z.im])
    }
}

impl<T: Real> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

impl<T: Real> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }
}

impl<T: Real> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(self.0.iter().map(|&c| -c).collect())
    }
}

impl<T: Real> Mul<T> for &Vector<T> {
    type Output = Vector<T>;
    fn mul(self, t: T) -> Vector<T> {
        self.scaled(t)
    }
}

pub fn norm_slice<T: Real>(a: &[T]) -> T {
    a.iter().map(|&c| c * c).sum::<T>().sqrt()
}

pub fn dist_slice<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}

/// `1 - |a|^2` with full relative accuracy arbitrarily close to the unit
/// sphere.
///
/// The naive expression loses all significance once `|a|` is within a few
/// ulp of 1 (the difference quantizes to multiples of the ulp at 1), which
/// turns smooth quantities like boundary distances of near-boundary images
/// into staircases. Away from the sphere the one-rounding fast path is
/// used; in the thin shell where cancellation bites, the squares are
/// accumulated with exact products (Veltkamp/Dekker) and compensated
/// summation, giving a result accurate to a few ulp of itself.
pub fn one_minus_norm_sq_slice<T: Real>(a: &[T]) -> T {
    let naive = T::one() - a.iter().map(|&c| c * c).sum::<T>();
    if naive.abs() > real::<T>(100.0) * T::epsilon().sqrt() {
        return naive;
    }
    let mut sum = T::one();
    let mut comp = T::zero();
    for &c in a {
        let (p, p_err) = two_product(c, c);
        let (s, s_err) = two_sum(sum, -p);
        sum = s;
        comp = comp + (s_err - p_err);
    }
    sum + comp
}

/// Error-free transform: `x * y` as a rounded product plus exact remainder.
fn two_product<T: Real>(x: T, y: T) -> (T, T) {
    let p = x * y;
    let f = T::split_factor();
    let cx = f * x;
    let hx = cx - (cx - x);
    let lx = x - hx;
    let cy = f * y;
    let hy = cy - (cy - y);
    let ly = y - hy;
    let err = ((hx * hy - p) + hx * ly + lx * hy) + lx * ly;
    (p, err)
}

/// Error-free transform: `x + y` as a rounded sum plus exact remainder.
fn two_sum<T: Real>(x: T, y: T) -> (T, T) {
    let s = x + y;
    let z = s - x;
    let err = (x - (s - z)) + (y - z);
    (s, err)
}

/// A point of the one-point compactification of R^n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ExtendedPoint<T> {
    Finite(Vector<T>),
    Infinity,
}

impl<T: Real> ExtendedPoint<T> {
    pub fn finite(v: Vector<T>) -> Self {
        ExtendedPoint::Finite(v)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Vector<T>> {
        match self {
            ExtendedPoint::Finite(v) => Some(v),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn expect_finite(self) -> Result<Vector<T>> {
        match self {
            ExtendedPoint::Finite(v) => Ok(v),
            ExtendedPoint::Infinity => Err(Error::Pole("point at infinity".into())),
        }
    }
}

/// Conjugate point a* = a / |a|^2, with 0* = infinity.
pub fn conjugate_point<T: Real>(a: &Vector<T>) -> ExtendedPoint<T> {
    let n2 = a.norm_sq();
    if n2 == T::zero() {
        ExtendedPoint::Infinity
    } else {
        ExtendedPoint::Finite(a.scaled(T::one() / n2))
    }
}

/// Conjugation extended to the compactification: infinity* = 0.
pub fn conjugate_extended<T: Real>(p: &ExtendedPoint<T>, dim: usize) -> ExtendedPoint<T> {
    match p {
        ExtendedPoint::Finite(v) => conjugate_point(v),
        ExtendedPoint::Infinity => ExtendedPoint::Finite(Vector::zero(dim)),
    }
}

/// Row-major n-by-n orthogonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> OrthogonalMatrix<T> {
    /// Validates A^T A = I within `ortho_eps`.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if n < 2 || data.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "orthogonal matrix needs n >= 2 and n*n entries, got n = {n}, {} entries",
                data.len()
            )));
        }
        let m = OrthogonalMatrix { n, data };
        let eps = T::ortho_eps();
        for i in 0..n {
            for j in i..n {
                let mut s = T::zero();
                for k in 0..n {
                    s = s + m.at(k, i) * m.at(k, j);
                }
                let want = if i == j { T::one() } else { T::zero() };
                if (s - want).abs() > eps {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not orthogonal: column product ({i},{j}) = {s}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        OrthogonalMatrix { n, data }
    }

    /// Rotation by `angle` in the (i, j) coordinate plane.
    pub fn plane_rotation(n: usize, i: usize, j: usize, angle: T) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidParameter(format!(
                "plane rotation axes must be distinct and < {n}"
            )));
        }
        let mut m = Self::identity(n);
        let (s, c) = angle.sin_cos();
        m.data[i * n + i] = c;
        m.data[j * n + j] = c;
        m.data[i * n + j] = -s;
        m.data[j * n + i] = s;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn at(&self, r: usize, c: usize) -> T {
        self.data[r * self.n + c]
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.n, v.dim());
        let mut out = vec![T::zero(); self.n];
        for (r, o) in out.iter_mut().enumerate() {
            let mut s = T::zero();
            for c in 0..self.n {
                s = s + self.at(r, c) * v[c];
            }
            *o = s;
        }
        Vector::new(out)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![T::zero(); self.n * self.n];
        for r in 0..self.n {
            for c in 0..self.n {
                data[c * self.n + r] = self.at(r, c);
            }
        }
        OrthogonalMatrix { n: self.n, data }
    }
}

/// One of the building blocks of a Moebius transformation: reflection in the
/// hyperplane { x : x . a = t }, inversion in the sphere S(center, radius),
/// or an orthogonal map fixing the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Generator<T> {
    Reflection { normal: Vector<T>, offset: T },
    Inversion { center: Vector<T>, radius: T },
    Orthogonal(OrthogonalMatrix<T>),
}

impl<T: Real> Generator<T> {
    pub fn reflection(normal: Vector<T>, offset: T) -> Result<Self> {
        if normal.norm_sq() == T::zero() {
            return Err(Error::InvalidParameter(
                "reflection normal must be nonzero".into(),
            ));
        }
        Ok(Generator::Reflection { normal, offset })
    }

    pub fn inversion(center: Vector<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::InvalidParameter(
                "inversion radius must be positive".into(),
            ));
        }
        Ok(Generator::Inversion { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Generator::Reflection { normal, .. } => normal.dim(),
            Generator::Inversion { center, .. } => center.dim(),
            Generator::Orthogonal(m) => m.dim(),
        }
    }

    /// Applies the generator. Total on the extended space: inversion centers
    /// map to infinity and vice versa; reflections and orthogonal maps fix
    /// infinity.
    pub fn apply(&self, p: &ExtendedPoint<T>) -> ExtendedPoint<T> {
        match (self, p) {
            (Generator::Reflection { .. }, ExtendedPoint::Infinity) => ExtendedPoint::Infinity,
            (Generator::Orthogonal(_), ExtendedPoint::Infinity) => ExtendedPoint::Infinity,
            (Generator::Inversion { center, .. }, ExtendedPoint::Infinity) => {
                ExtendedPoint::Finite(center.clone())
            }
            (Generator::Reflection { normal, offset }, ExtendedPoint::Finite(x)) => {
                let two = real::<T>(2.0);
                let scale = two * (x.dot(normal) - *offset) / normal.norm_sq();
                ExtendedPoint::Finite(x - &normal.scaled(scale))
            }
            (Generator::Inversion { center, radius }, ExtendedPoint::Finite(x)) => {
                let d = x - center;
                let d2 = d.norm_sq();
                if d2.sqrt() <= T::pole_eps() {
                    return ExtendedPoint::Infinity;
                }
                ExtendedPoint::Finite(center + &d.scaled(*radius * *radius / d2))
            }
            (Generator::Orthogonal(m), ExtendedPoint::Finite(x)) => {
                ExtendedPoint::Finite(m.apply(x))
            }
        }
    }

    /// Reflections and inversions are involutions; orthogonal maps invert by
    /// transposition.
    pub fn inverse(&self) -> Generator<T> {
        match self {
            Generator::Orthogonal(m) => Generator::Orthogonal(m.transpose()),
            other => other.clone(),
        }
    }
}

/// Distance between the images of x and y under inversion in S(center, r),
/// computed from the multiplicative identity
/// |f(x) - f(y)| = r^2 |x - y| / (|x - center| |y - center|)
/// rather than by subtracting images.
pub fn inversion_distance<T: Real>(
    center: &Vector<T>,
    radius: T,
    x: &Vector<T>,
    y: &Vector<T>,
) -> Result<T> {
    let dx = x.dist(center);
    let dy = y.dist(center);
    if dx <= T::pole_eps() || dy <= T::pole_eps() {
        return Err(Error::Pole(
            "inversion distance undefined at the center".into(),
        ));
    }
    Ok(radius * radius * x.dist(y) / (dx * dy))
}

/// d_out / d_in, the elementary ratio behind every Lipschitz statement.
pub fn lipschitz_ratio<T: Real>(d_in: T, d_out: T) -> Result<T> {
    if !(d_in > T::zero()) {
        return Err(Error::InvalidParameter(
            "lipschitz ratio needs a positive input distance".into(),
        ));
    }
    Ok(d_out / d_in)
}
