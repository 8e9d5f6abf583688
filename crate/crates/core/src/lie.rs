//! Exact model of `sl(2, R)`.
//!
//! Elements are stored in the ordered basis `(H, E, F)` with
//! `H = diag(1, -1)`, `E = [[0, 1], [0, 0]]` and `F = [[0, 0], [1, 0]]`, so
//! the structure constants are
//!
//! ```text
//! [H, E] = 2E    [H, F] = -2F    [E, F] = H
//! ```
//!
//! The bi-invariant Lorentzian metric is `lambda * tr(XY)` with `lambda = 2`.
//! That value comes from the metric-submersion normalization onto the
//! curvature -1 plane: `exp(tH) = diag(e^t, e^-t)` acts on the upper half
//! plane by `z -> e^{2t} z`, which moves `i` at hyperbolic speed 2, so
//! `|H|^2 = 4 = lambda * tr(H^2) = 2 * lambda`.
//!
//! With that normalization the reference frame
//!
//! ```text
//! u1 = H/2    u2 = (E + F)/2    u3 = (E - F)/2
//! ```
//!
//! is orthonormal with causal types `(+, +, -)`, and it is declared
//! positively oriented.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{half, int, rat, sign, Rational};

/// Normalization `lambda` of the metric `lambda * tr(XY)`.
#[cfg(not(feature = "fault-lambda-one"))]
pub const METRIC_NORMALIZATION: i64 = 2;
#[cfg(feature = "fault-lambda-one")]
pub const METRIC_NORMALIZATION: i64 = 1;

/// An element of `sl(2, R)` with exact coordinates in `(H, E, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    coords: [Rational; 3],
}

impl LieElement {
    pub fn new(h: Rational, e: Rational, f: Rational) -> Self {
        LieElement { coords: [h, e, f] }
    }

    pub fn from_ints(h: i64, e: i64, f: i64) -> Self {
        Self::new(int(h), int(e), int(f))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn h() -> Self {
        Self::from_ints(1, 0, 0)
    }

    pub fn e() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn f() -> Self {
        Self::from_ints(0, 0, 1)
    }

    pub fn basis() -> [LieElement; 3] {
        [Self::h(), Self::e(), Self::f()]
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LieElement {
            coords: std::array::from_fn(|i| &self.coords[i] * c),
        }
    }

    /// The traceless 2x2 matrix `[[h, e], [f, -h]]`, row-major.
    pub fn to_matrix(&self) -> [[Rational; 2]; 2] {
        let [h, e, f] = &self.coords;
        [[h.clone(), e.clone()], [f.clone(), -h.clone()]]
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); rejects matrices with nonzero trace.
    pub fn from_matrix(m: &[[Rational; 2]; 2]) -> Result<Self> {
        if !(&m[0][0] + &m[1][1]).is_zero() {
            return Err(Error::input("sl(2) elements are traceless"));
        }
        Ok(Self::new(m[0][0].clone(), m[0][1].clone(), m[1][0].clone()))
    }

    /// Coordinates `(x1, x2, x3)` with `self = x1 u1 + x2 u2 + x3 u3`.
    ///
    /// This is the algebraic expansion in the reference frame and does not
    /// depend on the metric normalization.
    pub fn frame_coords(&self) -> [Rational; 3] {
        let [h, e, f] = &self.coords;
        [h * int(2), e + f, e - f]
    }

    pub fn from_frame_coords(x: &[Rational; 3]) -> Self {
        let [u1, u2, u3] = reference_frame();
        &(&u1.scale(&x[0]) + &u2.scale(&x[1])) + &u3.scale(&x[2])
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        LieElement {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        LieElement {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

/// Exact 3x3 rational matrix, used for `ad_X` and endomorphism values of forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix3([[Rational; 3]; 3]);

impl Matrix3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| int(rows[i][j]))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Rational::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Matrix whose `j`-th column is `columns[j]` (as `(H, E, F)` coordinates).
    pub fn from_columns(columns: &[LieElement; 3]) -> Self {
        Self::from_fn(|i, j| columns[j].coords[i].clone())
    }

    pub fn rows(&self) -> &[[Rational; 3]; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn determinant(&self) -> Rational {
        det3(&self.0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(|i, j| &self.0[i][j] * c)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix3) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, v: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &self.0[i][j] * &v[j]).sum())
    }
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.0[i][j]
    }
}

impl Add for &Matrix3 {
    type Output = Matrix3;
    fn add(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| &self.0[i][j] + &rhs.0[i][j])
    }
}

impl Sub for &Matrix3 {
    type Output = Matrix3;
    fn sub(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| &self.0[i][j] - &rhs.0[i][j])
    }
}

impl Neg for &Matrix3 {
    type Output = Matrix3;
    fn neg(self) -> Matrix3 {
        Matrix3::from_fn(|i, j| -&self.0[i][j])
    }
}

impl Mul for &Matrix3 {
    type Output = Matrix3;
    fn mul(self, rhs: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
    }
}

pub(crate) fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Matrix commutator `XY - YX` in `(H, E, F)` coordinates.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let [h1, e1, f1] = &x.coords;
    let [h2, e2, f2] = &y.coords;
    let two = int(2);
    LieElement::new(
        e1 * f2 - f1 * e2,
        (h1 * e2 - e1 * h2) * &two,
        (f1 * h2 - h1 * f2) * &two,
    )
}

/// Matrix of `ad_X = [X, .]` in the basis `(H, E, F)`.
pub fn adjoint(x: &LieElement) -> Matrix3 {
    let cols = LieElement::basis().map(|b| bracket(x, &b));
    Matrix3::from_columns(&cols)
}

/// Trace of the 2x2 matrix product `XY`.
pub fn trace2(x: &LieElement, y: &LieElement) -> Rational {
    let [h1, e1, f1] = &x.coords;
    let [h2, e2, f2] = &y.coords;
    h1 * h2 * int(2) + e1 * f2 + f1 * e2
}

/// Killing form `tr(ad_X ad_Y)`.
pub fn killing(x: &LieElement, y: &LieElement) -> Rational {
    (&adjoint(x) * &adjoint(y)).trace()
}

/// `tr(ad_X ad_[Y,Z])`, the bi-invariant 3-form.
pub fn omega(x: &LieElement, y: &LieElement, z: &LieElement) -> Rational {
    killing(x, &bracket(y, z))
}

/// The reference frame `(H/2, (E+F)/2, (E-F)/2)`.
pub fn reference_frame() -> [LieElement; 3] {
    let h = half();
    let z = Rational::zero();
    [
        LieElement::new(h.clone(), z.clone(), z.clone()),
        LieElement::new(z.clone(), h.clone(), h.clone()),
        LieElement::new(z, h.clone(), -h),
    ]
}

/// Causal signs `(+1, +1, -1)` of the reference frame.
pub const CAUSAL_SIGNS: [i64; 3] = [1, 1, -1];

/// The bi-invariant metric `lambda * tr(XY)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTensor {
    normalization: Rational,
    gram: Matrix3,
}

impl MetricTensor {
    pub fn new(normalization: Rational) -> Result<Self> {
        if !normalization.is_positive() {
            return Err(Error::input("metric normalization must be positive"));
        }
        let basis = LieElement::basis();
        let gram = Matrix3::from_fn(|i, j| trace2(&basis[i], &basis[j]) * &normalization);
        Ok(MetricTensor {
            normalization,
            gram,
        })
    }

    /// The metric used throughout the crate (`lambda = METRIC_NORMALIZATION`).
    pub fn calibrated() -> Self {
        Self::new(int(METRIC_NORMALIZATION)).expect("positive normalization")
    }

    pub fn normalization(&self) -> &Rational {
        &self.normalization
    }

    /// Gram matrix in `(H, E, F)`.
    pub fn gram(&self) -> &Matrix3 {
        &self.gram
    }

    pub fn inner(&self, x: &LieElement, y: &LieElement) -> Rational {
        trace2(x, y) * &self.normalization
    }

    /// `(eps_i <X, u_i>)_i`: coordinates read off through the metric.
    ///
    /// Agrees with [`LieElement::frame_coords`] exactly when the metric is
    /// calibrated so that the reference frame is orthonormal.
    pub fn metric_coords(&self, x: &LieElement) -> [Rational; 3] {
        let frame = reference_frame();
        std::array::from_fn(|i| self.inner(x, &frame[i]) * int(CAUSAL_SIGNS[i]))
    }

    /// Lorentzian volume form, positive on `(u1, u2, u3)` when calibrated.
    pub fn volume_form(&self, x: &LieElement, y: &LieElement, z: &LieElement) -> Rational {
        det3(&[
            self.metric_coords(x),
            self.metric_coords(y),
            self.metric_coords(z),
        ])
    }

    /// Diagonal of a congruence diagonalization of the Gram matrix.
    pub fn diagonalize(&self) -> [Rational; 3] {
        congruence_diagonal(&self.gram)
    }

    /// `(positive, negative)` counts of the signature.
    pub fn signature(&self) -> (usize, usize) {
        let d = self.diagonalize();
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        (pos, neg)
    }
}

/// Symmetric Gaussian elimination over the rationals.
///
/// When a pivot vanishes but an off-diagonal entry in its row does not, the
/// pivot basis vector is replaced by `e_i + e_j` first.
fn congruence_diagonal(gram: &Matrix3) -> [Rational; 3] {
    let mut a = gram.clone();
    for i in 0..3 {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..3).find(|&j| !a[(i, j)].is_zero()) {
                // basis change e_i <- e_i + e_j
                for k in 0..3 {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..3 {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
            }
        }
        let pivot = a[(i, i)].clone();
        if pivot.is_zero() {
            continue;
        }
        for r in i + 1..3 {
            let factor = &a[(r, i)] / &pivot;
            for k in 0..3 {
                let v = &a[(i, k)] * &factor;
                a[(r, k)] -= v;
            }
            for k in 0..3 {
                let v = &a[(k, i)] * &factor;
                a[(k, r)] -= v;
            }
        }
    }
    std::array::from_fn(|i| a[(i, i)].clone())
}

/// `<X, Y>` under the calibrated metric.
pub fn metric(x: &LieElement, y: &LieElement) -> Rational {
    MetricTensor::calibrated().inner(x, y)
}

/// Volume form under the calibrated metric.
pub fn volume_form(x: &LieElement, y: &LieElement, z: &LieElement) -> Rational {
    MetricTensor::calibrated().volume_form(x, y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// A metric-orthonormal frame with causal types (spacelike, spacelike, timelike).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedFrame {
    vectors: [LieElement; 3],
    orientation: Orientation,
}

impl OrientedFrame {
    pub fn reference() -> Self {
        OrientedFrame {
            vectors: reference_frame(),
            orientation: Orientation::Positive,
        }
    }

    /// Validates orthonormality against `metric`; the orientation is read off
    /// the sign of the volume form.
    pub fn new(vectors: [LieElement; 3], metric: &MetricTensor) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { int(CAUSAL_SIGNS[i]) } else { Rational::zero() };
                if metric.inner(&vectors[i], &vectors[j]) != expected {
                    return Err(Error::input(format!(
                        "frame is not orthonormal with causal types (+,+,-) at ({i}, {j})"
                    )));
                }
            }
        }
        let orientation = match sign(&metric.volume_form(&vectors[0], &vectors[1], &vectors[2])) {
            1 => Orientation::Positive,
            _ => Orientation::Negative,
        };
        Ok(OrientedFrame {
            vectors,
            orientation,
        })
    }

    /// Image of the reference frame under a Lorentz matrix acting on frame
    /// coordinates: `v_j = sum_i L[i][j] u_i`.
    pub fn from_lorentz(l: &Matrix3) -> Result<Self> {
        let vectors = std::array::from_fn(|j| {
            LieElement::from_frame_coords(&std::array::from_fn(|i| l[(i, j)].clone()))
        });
        Self::new(vectors, &MetricTensor::calibrated())
    }

    pub fn vectors(&self) -> &[LieElement; 3] {
        &self.vectors
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Swaps the two spacelike vectors, reversing orientation.
    pub fn swapped(&self) -> Self {
        let [a, b, c] = self.vectors.clone();
        OrientedFrame {
            vectors: [b, a, c],
            orientation: self.orientation.reversed(),
        }
    }
}

/// Rotation in the spacelike `(u1, u2)` plane with rational cosine
/// `(1 - s^2)/(1 + s^2)` and sine `2s/(1 + s^2)`.
pub fn rational_rotation(s: &Rational) -> Matrix3 {
    let d = Rational::one() + s * s;
    let c = (Rational::one() - s * s) / &d;
    let sn = s * int(2) / &d;
    let mut m = Matrix3::identity();
    m[(0, 0)] = c.clone();
    m[(0, 1)] = -sn.clone();
    m[(1, 0)] = sn;
    m[(1, 1)] = c;
    m
}

/// Boost mixing spacelike axis `axis` (0 or 1) with the timelike `u3`, with
/// rational `cosh = (1 + s^2)/(1 - s^2)` and `sinh = 2s/(1 - s^2)`. Requires `|s| < 1`.
pub fn rational_boost(axis: usize, s: &Rational) -> Result<Matrix3> {
    if axis > 1 {
        return Err(Error::input("boost axis must be spacelike (0 or 1)"));
    }
    if s.abs() >= Rational::one() {
        return Err(Error::input("boost parameter must satisfy |s| < 1"));
    }
    let d = Rational::one() - s * s;
    let ch = (Rational::one() + s * s) / &d;
    let sh = s * int(2) / &d;
    let mut m = Matrix3::identity();
    m[(axis, axis)] = ch.clone();
    m[(axis, 2)] = sh.clone();
    m[(2, axis)] = sh;
    m[(2, 2)] = ch;
    Ok(m)
}

/// Exact ratio `omega(u1,u2,u3) / volume_form(u1,u2,u3)`.
pub fn omega_volume_ratio() -> Rational {
    let [u1, u2, u3] = reference_frame();
    omega(&u1, &u2, &u3) / volume_form(&u1, &u2, &u3)
}

/// Frozen value of [`omega_volume_ratio`] under the calibrated conventions.
pub fn omega_volume_ratio_golden() -> Rational {
    rat(-2, 1)
}
