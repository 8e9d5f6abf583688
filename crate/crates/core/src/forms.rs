//! Constant-coefficient alternating forms on `sl(2, R)`.
//!
//! A degree-`k` form is stored by its values on strictly increasing index
//! tuples of the reference frame `(u1, u2, u3)` (0-based here); evaluation on
//! arbitrary vectors extends by multilinearity and antisymmetry. Every form
//! built here is invariant, so integrating over a closed manifold reduces to
//! `density * Vol`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{
    adjoint, bracket, reference_frame, LieElement, Matrix3, MetricTensor, Orientation,
    OrientedFrame,
};
use crate::rational::{half, int, rat, Rational};

/// Values a form can take: endomorphisms or scalars.
pub trait FormValue: Clone + PartialEq + std::fmt::Debug {
    fn neutral() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, c: &Rational) -> Self;
    fn vanishes(&self) -> bool;
}

impl FormValue for Matrix3 {
    fn neutral() -> Self {
        Matrix3::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, c: &Rational) -> Self {
        Matrix3::scale(self, c)
    }
    fn vanishes(&self) -> bool {
        Matrix3::is_zero(self)
    }
}

impl FormValue for Rational {
    fn neutral() -> Self {
        Zero::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, c: &Rational) -> Self {
        self * c
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// An alternating form of degree `<= 3` with values in `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingForm<V> {
    degree: usize,
    values: BTreeMap<Vec<usize>, V>,
}

/// `End(E)`-valued form; houses the Maurer-Cartan form and curvatures.
pub type EndValuedForm = AlternatingForm<Matrix3>;
/// Scalar-valued form; houses traces of wedges.
pub type ScalarForm = AlternatingForm<Rational>;

fn increasing_tuples(degree: usize) -> Vec<Vec<usize>> {
    match degree {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => vec![],
    }
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut inversions = 0;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return None;
            }
            if idx[i] > idx[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    Some((sorted, if inversions % 2 == 0 { 1 } else { -1 }))
}

fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let arr: [[Rational; 3]; 3] =
                std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()));
            crate::lie::det3(&arr)
        }
    }
}

impl<V: FormValue> AlternatingForm<V> {
    pub fn zero(degree: usize) -> Result<Self> {
        Self::from_fn(degree, |_| V::neutral())
    }

    /// Builds a form from its values on increasing frame-index tuples.
    pub fn from_fn(degree: usize, mut f: impl FnMut(&[usize]) -> V) -> Result<Self> {
        if degree > 3 {
            return Err(Error::input(format!("form degree {degree} exceeds 3")));
        }
        let values = increasing_tuples(degree)
            .into_iter()
            .map(|t| {
                let v = f(&t);
                (t, v)
            })
            .collect();
        Ok(AlternatingForm { degree, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, V> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(FormValue::vanishes)
    }

    /// Value on `(u_{i1}, ..., u_{ik})` for arbitrary (possibly repeated or unsorted) indices.
    pub fn component(&self, idx: &[usize]) -> V {
        assert_eq!(idx.len(), self.degree, "component arity must equal degree");
        match sort_sign(idx) {
            None => V::neutral(),
            Some((sorted, s)) => self.values[&sorted].times(&int(s)),
        }
    }

    /// Evaluation on arbitrary Lie algebra vectors.
    pub fn eval(&self, vectors: &[LieElement]) -> Result<V> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        let coords: Vec<[Rational; 3]> = vectors.iter().map(LieElement::frame_coords).collect();
        let mut acc = V::neutral();
        for (tuple, value) in &self.values {
            let minor: Vec<Vec<Rational>> = coords
                .iter()
                .map(|c| tuple.iter().map(|&j| c[j].clone()).collect())
                .collect();
            acc = acc.plus(&value.times(&det(&minor)));
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlternatingForm {
            degree: self.degree,
            values: self.values.iter().map(|(k, v)| (k.clone(), v.times(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        expect_degree(other.degree, self.degree)?;
        Ok(AlternatingForm {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v.plus(&other.values[k])))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }
}

fn expect_degree(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { expected, found })
    }
}

/// The 1-form `A(X) = ad_X`, the difference of the left and right invariant connections.
pub fn canonical_maurer_cartan() -> EndValuedForm {
    let frame = reference_frame();
    EndValuedForm::from_fn(1, |t| adjoint(&frame[t[0]])).expect("degree 1")
}

/// `(X, Y) -> [A(X), B(Y)] - [A(Y), B(X)]` with matrix commutators.
pub fn bracket_wedge(a: &EndValuedForm, b: &EndValuedForm) -> Result<EndValuedForm> {
    expect_degree(a.degree, 1)?;
    expect_degree(b.degree, 1)?;
    EndValuedForm::from_fn(2, |t| {
        let (i, j) = (t[0], t[1]);
        &a.values[&vec![i]].commutator(&b.values[&vec![j]])
            - &a.values[&vec![j]].commutator(&b.values[&vec![i]])
    })
}

/// Exterior derivative of an invariant 1-form: `dA(X, Y) = -A([X, Y])`.
pub fn invariant_d(a: &EndValuedForm) -> Result<EndValuedForm> {
    expect_degree(a.degree, 1)?;
    let frame = reference_frame();
    EndValuedForm::from_fn(2, |t| {
        -&a.eval(&[bracket(&frame[t[0]], &frame[t[1]])])
            .expect("degree 1 form takes one vector")
    })
}

/// `dA + (1/2)[A ^ A]`; vanishes for the canonical form.
pub fn maurer_cartan_residual(a: &EndValuedForm) -> Result<EndValuedForm> {
    invariant_d(a)?.add(&bracket_wedge(a, a)?.scale(&half()))
}

/// Affine path `nabla_t = nabla_R + t A` from the right (`t = 0`) to the
/// left (`t = 1`) invariant connection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionPath {
    base: EndValuedForm,
    t: Rational,
}

impl ConnectionPath {
    pub fn new(t: Rational) -> Result<Self> {
        Self::with_base(canonical_maurer_cartan(), t)
    }

    pub fn with_base(base: EndValuedForm, t: Rational) -> Result<Self> {
        expect_degree(base.degree, 1)?;
        if t < Rational::zero() || t > Rational::one() {
            return Err(Error::input("path parameter must lie in [0, 1]"));
        }
        Ok(ConnectionPath { base, t })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn base(&self) -> &EndValuedForm {
        &self.base
    }
}

#[cfg(not(feature = "fault-curvature-sign"))]
const DERIVATIVE_SIGN: i64 = 1;
#[cfg(feature = "fault-curvature-sign")]
const DERIVATIVE_SIGN: i64 = -1;

/// Curvature of `nabla_R + tA`: `t dA + (t^2/2)[A ^ A]`.
pub fn curvature_at(path: &ConnectionPath) -> Result<EndValuedForm> {
    let a = &path.base;
    let t = &path.t;
    let linear = invariant_d(a)?.scale(&(t * int(DERIVATIVE_SIGN)));
    let quadratic = bracket_wedge(a, a)?.scale(&(t * t * half()));
    linear.add(&quadratic)
}

/// Closed form `((t^2 - t)/2) [A ^ A]` of the path curvature.
pub fn curvature_closed_form(t: &Rational) -> EndValuedForm {
    let a = canonical_maurer_cartan();
    bracket_wedge(&a, &a)
        .expect("degree 1")
        .scale(&((t * t - t) * half()))
}

/// `trace(A ^ R)` with the 1/6 antisymmetrization over all of `S_3`.
pub fn wedge_trace(a: &EndValuedForm, r: &EndValuedForm) -> Result<ScalarForm> {
    expect_degree(a.degree, 1)?;
    expect_degree(r.degree, 2)?;
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    ScalarForm::from_fn(3, |t| {
        let sum: Rational = PERMS
            .iter()
            .map(|(p, s)| {
                let x = t[p[0]];
                let (y, z) = (t[p[1]], t[p[2]]);
                (&a.values[&vec![x]] * &r.component(&[y, z])).trace() * int(*s)
            })
            .sum();
        sum * rat(1, 6)
    })
}

/// Density of `trace(A ^ [A ^ A])` against the Lorentzian volume form on the
/// reference frame.
pub fn cs_density(a: &EndValuedForm) -> Result<Rational> {
    cs_density_in(a, &OrientedFrame::reference(), Orientation::Positive)
}

/// Same density evaluated on `frame`, against the volume form of the given orientation.
pub fn cs_density_in(
    a: &EndValuedForm,
    frame: &OrientedFrame,
    orientation: Orientation,
) -> Result<Rational> {
    let top = wedge_trace(a, &bracket_wedge(a, a)?)?;
    let [x, y, z] = frame.vectors();
    let numerator = top.eval(&[x.clone(), y.clone(), z.clone()])?;
    let volume = MetricTensor::calibrated().volume_form(x, y, z) * int(orientation.sign());
    if volume.is_zero() {
        return Err(Error::input("degenerate frame"));
    }
    Ok(numerator / volume)
}

/// Frozen value of [`cs_density`] for the canonical Maurer-Cartan form.
///
/// Each of the six permutation terms equals `2 * omega(u1, u2, u3) = -4`
/// because `[A ^ A](X, Y) = 2 ad_[X,Y]`; the 1/6 average leaves `-4`.
pub fn cs_density_golden() -> Rational {
    int(-4)
}

/// `integral_0^1 (t^2 - t)/2 dt`, the path coefficient of the Chern-Simons integral.
pub fn path_coefficient() -> Rational {
    // antiderivative t^3/6 - t^2/4 at 1
    rat(1, 6) - rat(1, 4)
}
