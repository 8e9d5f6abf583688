//! Surface-group representations into `PSL(2, R)`.
//!
//! Generators of `pi_1(S_g)` are `a_1, b_1, ..., a_g, b_g`, encoded as the
//! letters `1, 2, ..., 2g` (`a_i = 2i - 1`, `b_i = 2i`); negative letters
//! are inverses. The relator is `prod_i [a_i, b_i]` with
//! `[a, b] = a b a^-1 b^-1`.
//!
//! # Euler class convention
//!
//! `PSL(2, R)` acts faithfully on the circle of lines `RP^1`, parametrized by
//! the line angle `theta in R / pi Z`. Each generator is lifted to a monotone
//! map of `R` commuting with `x -> x + pi`; the product of commutators of
//! the lifts is a translation by `n * pi` and `n` is the Euler class. A
//! matrix acts on `theta` through its action on the direction vector
//! `(cos theta, sin theta)`.
//!
//! With this convention the regular `4g`-gon holonomy from
//! [`fuchsian_regular_polygon`] has Euler class `2 - 2g`, the Euler
//! characteristic of the surface. For example at genus 2 the lifted relator
//! moves `0` to `-2 pi`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for [`elem_type`].
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;
/// Maximal distance of the lifted relator displacement from a multiple of `pi`.
pub const EULER_INTEGRALITY_TOLERANCE: f64 = 1e-6;
/// Maximal `|det - 1|` accepted when reading representation files.
pub const FILE_DET_TOLERANCE: f64 = 1e-6;
/// Panels used to unwrap lifts over `[0, pi]`.
pub const LIFT_PANELS: usize = 64;

/// An element of `PSL(2, R)`: a determinant-one real matrix up to sign.
#[derive(Debug, Clone, Copy)]
pub struct Moebius {
    m: [[f64; 2]; 2],
}

impl Moebius {
    /// Rescales to determinant one and picks a sign representative.
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det <= 0.0 {
            return Err(Error::input(format!(
                "determinant {det} is not positive; not an element of PSL(2, R)"
            )));
        }
        let s = det.sqrt().recip();
        Ok(Self::normalized([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]))
    }

    // sign representative: nonnegative trace, else first nonzero entry positive
    fn normalized(m: [[f64; 2]; 2]) -> Self {
        let tr = m[0][0] + m[1][1];
        let flip = if tr != 0.0 {
            tr < 0.0
        } else {
            m.iter().flatten().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0)
        };
        let m = if flip {
            [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
        } else {
            m
        };
        Moebius { m }
    }

    pub fn identity() -> Self {
        Moebius { m: [[1.0, 0.0], [0.0, 1.0]] }
    }

    /// The rotation matrix `[[cos a, -sin a], [sin a, cos a]]`; it shifts line angles by `a`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::normalized([[c, -s], [s, c]])
    }

    /// `diag(d, 1/d)`, `d > 0`.
    pub fn diagonal(d: f64) -> Result<Self> {
        if d.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::input("diagonal entry must be positive"));
        }
        Ok(Self::normalized([[d, 0.0], [0.0, d.recip()]]))
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn mul(&self, rhs: &Moebius) -> Moebius {
        let (a, b) = (&self.m, &rhs.m);
        Self::normalized([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn inverse(&self) -> Moebius {
        let m = &self.m;
        Self::normalized([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn conjugate_by(&self, g: &Moebius) -> Moebius {
        g.mul(self).mul(&g.inverse())
    }

    /// Frobenius distance to `other`, minimized over the sign ambiguity.
    pub fn distance(&self, other: &Moebius) -> f64 {
        let frob = |s: f64| {
            self.m
                .iter()
                .flatten()
                .zip(other.m.iter().flatten())
                .map(|(x, y)| (x - s * y).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        frob(1.0).min(frob(-1.0))
    }

    /// Line angle in `[0, pi)` of the image of the line at angle `theta`.
    fn act_on_angle(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let x = self.m[0][0] * c + self.m[0][1] * s;
        let y = self.m[1][0] * c + self.m[1][1] * s;
        y.atan2(x).rem_euclid(PI)
    }

    fn image_direction(&self, theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        (
            self.m[0][0] * c + self.m[0][1] * s,
            self.m[1][0] * c + self.m[1][1] * s,
        )
    }
}

impl PartialEq for Moebius {
    /// Exact equality modulo sign.
    fn eq(&self, other: &Self) -> bool {
        let neg = [
            [-other.m[0][0], -other.m[0][1]],
            [-other.m[1][0], -other.m[1][1]],
        ];
        self.m == other.m || self.m == neg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementType {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Classification by `|trace|` relative to 2.
pub fn elem_type(m: &Moebius) -> ElementType {
    elem_type_with(m, CLASSIFY_TOLERANCE)
}

pub fn elem_type_with(m: &Moebius, tol: f64) -> ElementType {
    let t = m.trace().abs();
    if t < 2.0 - tol {
        ElementType::Elliptic
    } else if t > 2.0 + tol {
        ElementType::Hyperbolic
    } else if m.distance(&Moebius::identity()) <= tol.sqrt() {
        ElementType::Identity
    } else {
        ElementType::Parabolic
    }
}

/// `2 arccosh(|tr| / 2)` for hyperbolic elements, zero otherwise.
pub fn translation_length(m: &Moebius) -> f64 {
    let t = m.trace().abs();
    if t > 2.0 {
        2.0 * (t / 2.0).acosh()
    } else {
        0.0
    }
}

/// A reduced word in the generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces `letters`. Zero letters are rejected.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::input("letter 0 is not a generator"));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word { letters: out })
    }

    /// Wraps letters already known to be reduced and nonzero.
    pub(crate) fn from_reduced(letters: Vec<i32>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied()).expect("nonzero letters")
    }

    /// Shortlex order: shorter first, then lexicographic by letter value.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// `prod_i [a_i, b_i]` for genus `g`.
    pub fn surface_relator(genus: u32) -> Word {
        let g = genus as i32;
        Word {
            letters: (1..=g)
                .flat_map(|i| [2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceGroup {
    genus: u32,
}

impl SurfaceGroup {
    pub fn new(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::input(format!(
                "genus must be at least 2 (negative Euler characteristic), got {genus}"
            )));
        }
        Ok(SurfaceGroup { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus as usize
    }

    /// Milnor-Wood bound `2g - 2`.
    pub fn milnor_wood_bound(&self) -> i64 {
        -self.euler_characteristic()
    }
}

/// Images of the `2g` generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    group: SurfaceGroup,
    images: Vec<Moebius>,
}

impl Representation {
    pub fn new(group: SurfaceGroup, images: Vec<Moebius>) -> Result<Self> {
        if images.len() != group.generator_count() {
            return Err(Error::input(format!(
                "genus {} needs {} generator images, got {}",
                group.genus(),
                group.generator_count(),
                images.len()
            )));
        }
        Ok(Representation { group, images })
    }

    pub fn trivial(group: SurfaceGroup) -> Self {
        Representation {
            images: vec![Moebius::identity(); group.generator_count()],
            group,
        }
    }

    pub fn group(&self) -> SurfaceGroup {
        self.group
    }

    pub fn genus(&self) -> u32 {
        self.group.genus()
    }

    pub fn images(&self) -> &[Moebius] {
        &self.images
    }

    /// Image of a single letter.
    pub fn letter(&self, l: i32) -> Result<Moebius> {
        let n = self.images.len() as i32;
        if l == 0 || l.abs() > n {
            return Err(Error::input(format!("letter {l} outside +-1..={n}")));
        }
        let m = self.images[(l.unsigned_abs() - 1) as usize];
        Ok(if l > 0 { m } else { m.inverse() })
    }

    /// `g rho g^-1`.
    pub fn conjugate(&self, g: &Moebius) -> Self {
        Representation {
            group: self.group,
            images: self.images.iter().map(|m| m.conjugate_by(g)).collect(),
        }
    }

    /// Approximate representations are those whose relator residual exceeds `tol`.
    pub fn is_exact(&self, tol: f64) -> bool {
        relator_residual(self) <= tol
    }
}

/// Product of the letter images, left to right.
pub fn evaluate(rep: &Representation, w: &Word) -> Result<Moebius> {
    w.letters()
        .iter()
        .try_fold(Moebius::identity(), |acc, &l| Ok(acc.mul(&rep.letter(l)?)))
}

/// Distance of the relator image from the identity.
pub fn relator_residual(rep: &Representation) -> f64 {
    let r = evaluate(rep, &Word::surface_relator(rep.genus())).expect("relator letters in range");
    r.distance(&Moebius::identity())
}

/// Holonomy of the regular hyperbolic `4g`-gon with angle sum `2 pi`.
///
/// The polygon is centered at `i`; its sides `s_0, ..., s_{4g-1}` are read
/// counterclockwise with labels `a_1 b_1 a_1^-1 b_1^-1 ...`. With `T` the
/// translation by twice the inradius `r` (`cosh r = cot(pi / 4g)`) and
/// `R(phi)` the rotation by `phi` about `i`, the isometry carrying side `m`
/// onto side `n` is `R(theta_n) T R(pi - theta_m)`, `theta_j = 2 pi j / 4g`.
/// Then `a_i : s_{4i+2} -> s_{4i}` and `b_i : s_{4i+1} -> s_{4i+3}`.
pub fn fuchsian_regular_polygon(genus: u32) -> Result<Representation> {
    let group = SurfaceGroup::new(genus)?;
    let n = 4 * genus as usize;
    let inradius = (PI / n as f64).tan().recip().acosh();
    let translation = Moebius::diagonal(inradius.exp())?;
    // rotation of H^2 about i by phi
    let rot = |phi: f64| Moebius::rotation(-phi / 2.0);
    let theta = |j: usize| 2.0 * PI * j as f64 / n as f64;
    let pairing = |from: usize, to: usize| {
        rot(theta(to)).mul(&translation).mul(&rot(PI - theta(from)))
    };
    let images = (0..genus as usize)
        .flat_map(|i| {
            let a = pairing(4 * i + 2, 4 * i);
            let b = pairing(4 * i + 3, 4 * i + 1).inverse();
            [a, b]
        })
        .collect();
    Representation::new(group, images)
}

/// A lift of a Moebius action on `RP^1` to `R`, commuting with `x -> x + pi`.
#[derive(Debug, Clone, Copy)]
pub struct LiftedCircleMap {
    base: Moebius,
    /// Deck translations added to the normalized lift (`lift(0) in [0, pi)` when zero).
    shift: i64,
}

impl LiftedCircleMap {
    pub fn base(&self) -> &Moebius {
        &self.base
    }

    /// Normalized lift of the inverse action, shifted so that it inverts `self`.
    pub fn inverse(&self) -> LiftedCircleMap {
        let mut inv = circle_lift(&self.base.inverse());
        let y = self.eval(0.0);
        let k = ((0.0 - inv.eval(y)) / PI).round() as i64;
        inv.shift = k;
        inv
    }

    pub fn eval(&self, x: f64) -> f64 {
        let turns = (x / PI).floor();
        let y = x - turns * PI;
        (turns + self.shift as f64) * PI + self.eval_fundamental(y)
    }

    /// Lift on `[0, pi]`, unwrapped panel by panel from `lift(0) in [0, pi)`.
    ///
    /// The action preserves orientation, so each panel's image turns
    /// counterclockwise by an angle in `[0, pi)`; that angle is read from the
    /// cross and dot products of consecutive image directions.
    fn eval_fundamental(&self, y: f64) -> f64 {
        let panel = PI / LIFT_PANELS as f64;
        let mut value = self.base.act_on_angle(0.0);
        let mut prev_t = 0.0;
        let mut prev_dir = self.base.image_direction(0.0);
        let steps = (y / panel).ceil() as usize;
        for s in 1..=steps {
            let t = (s as f64 * panel).min(y);
            let dir = self.base.image_direction(t);
            // cross(M v1, M v2) = det(M) sin(t2 - t1)
            let cross = self.base.det() * (t - prev_t).sin();
            let dot = prev_dir.0 * dir.0 + prev_dir.1 * dir.1;
            value += cross.atan2(dot);
            prev_t = t;
            prev_dir = dir;
        }
        value
    }
}

/// Normalized lift with `lift(0) in [0, pi)`.
pub fn circle_lift(m: &Moebius) -> LiftedCircleMap {
    LiftedCircleMap { base: *m, shift: 0 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerClass {
    pub euler: i64,
    /// Distance of the lifted relator displacement (in units of `pi`) from `euler`.
    pub residual: f64,
}

/// Points at which the lifted relator displacement is sampled.
const EULER_SAMPLES: [f64; 3] = [0.0, PI / 3.0, 2.0 * PI / 3.0];

/// Euler class from the lifted relator `prod_i [lift(a_i), lift(b_i)]`.
///
/// The displacement is read at `0` and checked at two more points of the
/// fundamental interval; the residual is the worst distance from the
/// rounded integer.
pub fn euler_class(rep: &Representation) -> Result<EulerClass> {
    let mut maps = Vec::with_capacity(4 * rep.genus() as usize);
    for pair in rep.images().chunks(2) {
        let (a, b) = (circle_lift(&pair[0]), circle_lift(&pair[1]));
        maps.extend([a, b, a.inverse(), b.inverse()]);
    }
    let displacement = |x0: f64| maps.iter().rev().fold(x0, |x, f| f.eval(x)) - x0;
    let at_zero = displacement(0.0) / PI;
    let euler = at_zero.round();
    let residual = EULER_SAMPLES
        .iter()
        .map(|&x| (displacement(x) / PI - euler).abs())
        .fold(0.0, f64::max);
    if !(residual <= EULER_INTEGRALITY_TOLERANCE) {
        return Err(Error::Integrality { residual });
    }
    Ok(EulerClass {
        euler: euler as i64,
        residual,
    })
}

/// On-disk form: `{"genus": g, "generators": [[[a, b], [c, d]], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub genus: u32,
    pub generators: Vec<[[f64; 2]; 2]>,
}

impl RepresentationFile {
    pub fn from_representation(rep: &Representation) -> Self {
        RepresentationFile {
            genus: rep.genus(),
            generators: rep.images().iter().map(Moebius::entries).collect(),
        }
    }

    /// Rejects generators with `|det - 1| > 1e-6`.
    pub fn into_representation(self) -> Result<Representation> {
        let group = SurfaceGroup::new(self.genus)?;
        let images = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if !((det - 1.0).abs() <= FILE_DET_TOLERANCE) {
                    return Err(Error::input(format!(
                        "generator {i} has determinant {det}, expected 1"
                    )));
                }
                Moebius::new(*m)
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(group, images)
    }
}

pub fn to_json(rep: &Representation) -> String {
    serde_json::to_string_pretty(&RepresentationFile::from_representation(rep))
        .expect("plain numbers serialize")
}

pub fn from_json(s: &str) -> Result<Representation> {
    let file: RepresentationFile = serde_json::from_str(s)?;
    file.into_representation()
}

pub fn write_file(rep: &Representation, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, to_json(rep) + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_file(path: &std::path::Path) -> Result<Representation> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text)
}
