//! Moebius transformations as words in elementary atoms.
//!
//! A map is stored as a sequence of atoms applied left to right. An atom is
//! either a sphere-preserving generator (reflection, sphere inversion,
//! orthogonal map) in any dimension, or a fractional linear map of the
//! plane. Inverses reverse the word and invert each atom; composition
//! concatenates words. Keeping the factored form avoids any loss from
//! multiplying matrices and keeps `apply` exact on the extended space.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geom::{ExtendedPoint, Generator, OrthogonalMatrix, Vector};
use crate::scalar::{real, Real};

/// Fractional linear map z -> (a z + b) / (c z + d) of the extended plane.
#[derive(Clone, Debug)]
pub struct PlanarMap<T> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
}

impl<T: Real> PlanarMap<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm_sqr() == T::zero() || !det.norm_sqr().is_finite() {
            return Err(Error::InvalidParameter(
                "fractional linear map needs a nonzero finite determinant".into(),
            ));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn coefficients(&self) -> (Complex<T>, Complex<T>, Complex<T>, Complex<T>) {
        (self.a, self.b, self.c, self.d)
    }

    /// Evaluates on the extended plane; `None` stands for infinity.
    pub fn apply_complex(&self, z: Option<Complex<T>>) -> Option<Complex<T>> {
        match z {
            None => {
                if self.c.norm_sqr() == T::zero() {
                    None
                } else {
                    Some(self.a / self.c)
                }
            }
            Some(z) => {
                let den = self.c * z + self.d;
                if den.norm_sqr() == T::zero() {
                    None
                } else {
                    Some((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Atom<T> {
    Generator(Generator<T>),
    Planar(PlanarMap<T>),
}

impl<T: Real> Atom<T> {
    fn apply(&self, p: ExtendedPoint<T>) -> ExtendedPoint<T> {
        match self {
            Atom::Generator(g) => g.apply(&p),
            Atom::Planar(m) => {
                let z = match &p {
                    ExtendedPoint::Infinity => None,
                    ExtendedPoint::Finite(v) => {
                        Some(v.to_complex().expect("planar atom on a 2d point"))
                    }
                };
                match m.apply_complex(z) {
                    None => ExtendedPoint::Infinity,
                    Some(w) => ExtendedPoint::Finite(Vector::from_complex(w)),
                }
            }
        }
    }

    fn inverse(&self) -> Self {
        match self {
            Atom::Generator(g) => Atom::Generator(g.inverse()),
            Atom::Planar(m) => Atom::Planar(m.inverse()),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Atom::Generator(g) => g.dim(),
            Atom::Planar(_) => 2,
        }
    }
}

/// A Moebius transformation of the extended n-space, stored as a word of
/// atoms applied left to right.
#[derive(Clone, Debug)]
pub struct MoebiusMap<T> {
    dim: usize,
    atoms: Vec<Atom<T>>,
}

impl<T: Real> MoebiusMap<T> {
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 2, "dimension must be at least 2");
        Self { dim, atoms: Vec::new() }
    }

    pub fn from_atoms(dim: usize, atoms: Vec<Atom<T>>) -> Result<Self> {
        for atom in &atoms {
            if atom.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: atom.dim(),
                });
            }
        }
        Ok(Self { dim, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn push(&mut self, atom: Atom<T>) -> Result<()> {
        if atom.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: atom.dim(),
            });
        }
        self.atoms.push(atom);
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(Self { dim: self.dim, atoms })
    }

    pub fn inverse(&self) -> Self {
        Self {
            dim: self.dim,
            atoms: self.atoms.iter().rev().map(Atom::inverse).collect(),
        }
    }

    pub fn apply_extended(&self, p: ExtendedPoint<T>) -> ExtendedPoint<T> {
        self.atoms.iter().fold(p, |q, atom| atom.apply(q))
    }

    /// Evaluates at a finite point, failing if the image is infinite.
    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        self.apply_extended(ExtendedPoint::Finite(x.clone()))
            .expect_finite()
    }
}

/// The automorphism of the unit ball exchanging `a` and the origin:
/// inversion in the sphere centered at a/|a|^2 with radius sqrt(1/|a|^2 - 1).
/// Requires 0 < |a| < 1.
pub fn sigma_a<T: Real>(a: &Vector<T>) -> Result<MoebiusMap<T>> {
    let norm_sq = a.norm_sq();
    if norm_sq == T::zero() || norm_sq >= T::one() {
        return Err(Error::InvalidParameter(
            "sigma_a needs 0 < |a| < 1".into(),
        ));
    }
    let center = a.scaled(norm_sq.recip());
    let radius = (norm_sq.recip() - T::one()).sqrt();
    let inv = Generator::inversion(center, radius)?;
    MoebiusMap::from_atoms(a.dim(), vec![Atom::Generator(inv)])
}

/// General automorphism of the unit ball: sigma_a followed by an orthogonal
/// map. `a = 0` gives a rotation (or the identity).
pub fn ball_automorphism<T: Real>(
    a: &Vector<T>,
    rotation: Option<OrthogonalMatrix<T>>,
) -> Result<MoebiusMap<T>> {
    let mut map = if a.norm_sq() == T::zero() {
        MoebiusMap::identity(a.dim())
    } else {
        sigma_a(a)?
    };
    if let Some(rot) = rotation {
        if rot.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: rot.dim(),
            });
        }
        map.push(Atom::Generator(Generator::Orthogonal(rot)))?;
    }
    Ok(map)
}

/// Cayley map z -> (z - i)/(z + i) from the upper half-plane onto the unit
/// disk.
pub fn cayley_h_to_b<T: Real>() -> MoebiusMap<T> {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let m = PlanarMap::new(one, -i, one, i).expect("constant coefficients");
    MoebiusMap {
        dim: 2,
        atoms: vec![Atom::Planar(m)],
    }
}

/// Inverse Cayley map z -> i(1 + z)/(1 - z) from the unit disk onto the
/// upper half-plane.
pub fn cayley_b_to_h<T: Real>() -> MoebiusMap<T> {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let m = PlanarMap::new(i, i, -one, one).expect("constant coefficients");
    MoebiusMap {
        dim: 2,
        atoms: vec![Atom::Planar(m)],
    }
}

/// z -> e^{i alpha} (z - a)/(z - conj(a)) sending the upper half-plane onto
/// the unit disk with `a` to the origin. Requires Im a > 0.
pub fn halfplane_to_disk<T: Real>(a: Complex<T>, alpha: T) -> Result<MoebiusMap<T>> {
    if !(a.im > T::zero()) {
        return Err(Error::InvalidParameter(
            "halfplane_to_disk needs Im a > 0".into(),
        ));
    }
    let phase = Complex::new(alpha.cos(), alpha.sin());
    let one = Complex::new(T::one(), T::zero());
    let m = PlanarMap::new(phase, -phase * a, one, -a.conj())?;
    Ok(MoebiusMap {
        dim: 2,
        atoms: vec![Atom::Planar(m)],
    })
}

/// Inversion in a sphere centered on the boundary hyperplane, a self-map of
/// the half-space. A tiny last coordinate of the center (within
/// `ortho_eps`) is squashed to zero; a larger one is rejected.
pub fn halfspace_inversion<T: Real>(center: &Vector<T>, radius: T) -> Result<MoebiusMap<T>> {
    let n = center.dim();
    if center.last().abs() > T::ortho_eps() {
        return Err(Error::InvalidParameter(
            "halfspace inversion center must lie on the boundary hyperplane".into(),
        ));
    }
    let mut coords = center.coords().to_vec();
    coords[n - 1] = T::zero();
    let inv = Generator::inversion(Vector::new(coords), radius)?;
    MoebiusMap::from_atoms(n, vec![Atom::Generator(inv)])
}

/// Both sides of the conjugate-point identity
/// |a|^2 |b - a*|^2 - |b - a|^2 = (1 - |a|^2)(1 - |b|^2)
/// for a, b in the unit ball, a != 0. Returns (t1, t2, rhs, scale) with
/// t1 = |a|^2 |b - a*|^2 and t2 = |b - a|^2; `scale` is the size of the
/// largest operand, the right yardstick for a relative comparison of
/// t1 - t2 against rhs (the difference itself cancels catastrophically
/// near the boundary).
pub fn conjugate_identity_parts<T: Real>(
    a: &Vector<T>,
    b: &Vector<T>,
) -> Result<(T, T, T, T)> {
    let na = a.norm_sq();
    let nb = b.norm_sq();
    if na == T::zero() || na >= T::one() || nb >= T::one() {
        return Err(Error::InvalidParameter(
            "identity needs a, b in the unit ball with a nonzero".into(),
        ));
    }
    let astar = a.scaled(na.recip());
    let t1 = na * (b - &astar).norm_sq();
    let t2 = (b - a).norm_sq();
    let rhs = (T::one() - na) * (T::one() - nb);
    let scale = t1.max(t2).max(rhs).max(T::one());
    Ok((t1, t2, rhs, scale))
}

/// The two-sided estimate
/// (|b| - |a|)/(1 - |a||b|) <= |b - a| / (|a| |b - a*|) <= (|b| + |a|)/(1 + |a||b|)
/// on the unit ball; returns (lower, middle, upper).
pub fn conjugate_distance_bounds<T: Real>(a: &Vector<T>, b: &Vector<T>) -> Result<(T, T, T)> {
    let na = a.norm();
    let nb = b.norm();
    if na == T::zero() || na >= T::one() || nb >= T::one() {
        return Err(Error::InvalidParameter(
            "bounds need a, b in the unit ball with a nonzero".into(),
        ));
    }
    let astar = a.scaled((na * na).recip());
    let mid = (b - a).norm() / (na * (b - &astar).norm());
    let lower = (nb - na) / (T::one() - na * nb);
    let upper = (nb + na) / (T::one() + na * nb);
    Ok((lower, mid, upper))
}

/// Both sides of 1 - |sigma_a(x)| = (|a||x - a*| - |x - a|) / (|a||x - a*|),
/// the boundary-gap form driving the ball automorphism distortion estimate.
pub fn sigma_gap_identity_sides<T: Real>(a: &Vector<T>, x: &Vector<T>) -> Result<(T, T)> {
    let s = sigma_a(a)?;
    let image = s.apply(x)?;
    let lhs = T::one() - image.norm();
    let na = a.norm();
    let astar = a.scaled((na * na).recip());
    let denom = na * (x - &astar).norm();
    let rhs = (denom - (x - a).norm()) / denom;
    Ok((lhs, rhs))
}

/// Reflection-based isometry moving a half-space point to the symmetric
/// position; handy for building test words.
pub fn halfspace_horizontal_shift<T: Real>(dim: usize, offset: &[T]) -> Result<MoebiusMap<T>> {
    if offset.len() != dim - 1 {
        return Err(Error::DimensionMismatch {
            expected: dim - 1,
            got: offset.len(),
        });
    }
    // two parallel reflections compose to a translation by twice their gap
    let mut normal = vec![T::zero(); dim];
    let norm = crate::geom::norm_slice(offset);
    if norm == T::zero() {
        return Ok(MoebiusMap::identity(dim));
    }
    for i in 0..dim - 1 {
        normal[i] = offset[i] / norm;
    }
    let first = Generator::reflection(Vector::new(normal.clone()), T::zero())?;
    let second = Generator::reflection(Vector::new(normal), norm * real::<T>(0.5))?;
    MoebiusMap::from_atoms(dim, vec![Atom::Generator(first), Atom::Generator(second)])
}
