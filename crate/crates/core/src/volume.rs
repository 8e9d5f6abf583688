//! Volumes and Chern-Simons invariants of `M(S, k)` as exact rationals.
//!
//! A closed AdS manifold is summarized by an [`AdSDescriptor`] `(e, f, k)`:
//! the Euler classes of the two holonomies and the Euler number of the
//! circle bundle. Volumes are carried as coefficients of `pi^2`.
//!
//! The two pipelines meet in [`geometry_calibration`]: the geometric route
//! integrates the Chern-Simons form along the affine path between the right
//! and left invariant connections, the combinatorial route evaluates
//! `cs_pair` on the unit tangent bundle. Their ratio is `-1`, i.e. the
//! constants agree and the orientation conventions differ by a sign.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{canonical_maurer_cartan, cs_density_in, path_coefficient};
use crate::lie::{Orientation, OrientedFrame};
use crate::rational::{int, pq_string, Rational};

/// `coeff * pi^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiSquaredScalar {
    pub coeff: Rational,
}

impl PiSquaredScalar {
    pub fn new(coeff: Rational) -> Self {
        PiSquaredScalar { coeff }
    }

    pub fn abs(&self) -> Self {
        PiSquaredScalar::new(self.coeff.abs())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(2)
    }
}

/// A Chern-Simons invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsValue {
    pub value: Rational,
}

impl CsValue {
    pub fn new(value: Rational) -> Self {
        CsValue { value }
    }
}

impl std::ops::Neg for CsValue {
    type Output = CsValue;
    fn neg(self) -> CsValue {
        CsValue::new(-self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdSDescriptor {
    /// Euler class of the Fuchsian holonomy.
    pub e: i64,
    /// Euler class of the second holonomy.
    pub f: i64,
    /// Euler number of the circle bundle, nonzero.
    pub k: i64,
    pub genus: Option<u32>,
}

impl AdSDescriptor {
    pub fn new(e: i64, f: i64, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("bundle Euler number k must be nonzero"));
        }
        Ok(AdSDescriptor { e, f, k, genus: None })
    }

    /// Also enforces Milnor-Wood `|e|, |f| <= 2g - 2`.
    pub fn with_genus(e: i64, f: i64, k: i64, genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::input("genus must be at least 2"));
        }
        let bound = 2 * i64::from(genus) - 2;
        if e.abs() > bound || f.abs() > bound {
            return Err(Error::input(format!(
                "Milnor-Wood violated: |e|, |f| must be at most {bound}"
            )));
        }
        let mut d = Self::new(e, f, k)?;
        d.genus = Some(genus);
        Ok(d)
    }

    /// Non-fatal diagnostics about the descriptor.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.f.abs() == self.e.abs() {
            out.push(format!(
                "f = {} equals +-e: the second holonomy is not of non-Fuchsian type",
                self.f
            ));
        }
        out
    }
}

/// Signed and absolute volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub signed: PiSquaredScalar,
    pub magnitude: PiSquaredScalar,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn frac(n: BigInt, d: BigInt) -> Rational {
    Rational::new(n, d)
}

/// `(4 (e^2 - f^2) / k) pi^2`.
pub fn volume(d: &AdSDescriptor) -> Result<Volume> {
    if d.k == 0 {
        return Err(Error::input("bundle Euler number k must be nonzero"));
    }
    let (e, f) = (big(d.e), big(d.f));
    let signed = PiSquaredScalar::new(frac(big(4) * (&e * &e - &f * &f), big(d.k)));
    Ok(Volume {
        magnitude: signed.abs(),
        signed,
    })
}

/// Volume `4 e pi^2` of the unit tangent bundle of a surface with Euler characteristic `e`.
pub fn unit_tangent_volume(e: i64) -> Result<PiSquaredScalar> {
    if e == 0 {
        return Err(Error::input("unit tangent volume needs e != 0"));
    }
    Ok(PiSquaredScalar::new(int(4) * int(e)))
}

/// `CS(rho, Id) = -f^2 / (6k)` on `M(S, k)`.
pub fn cs_rho_id(f: i64, k: i64) -> Result<CsValue> {
    if k == 0 {
        return Err(Error::input("bundle Euler number k must be nonzero"));
    }
    let f = big(f);
    Ok(CsValue::new(frac(-(&f * &f), big(6) * big(k))))
}

/// `CS(rho, sigma) = CS(rho, Id) - CS(sigma, Id) = (f^2 - e^2) / (6k)`.
pub fn cs_pair(d: &AdSDescriptor) -> Result<CsValue> {
    Ok(chasles(&cs_rho_id(d.e, d.k)?, &-cs_rho_id(d.f, d.k)?))
}

/// Pullback along a degree-`degree` map multiplies the invariant by the degree.
pub fn cs_scale(degree: i64, v: &CsValue) -> CsValue {
    CsValue::new(&v.value * int(degree))
}

/// Inverse direction of [`cs_scale`]: the invariant downstairs, given its
/// pullback along a degree-`degree` map.
pub fn cs_descend(degree: i64, pulled_back: &CsValue) -> Result<CsValue> {
    if degree == 0 {
        return Err(Error::input("cannot descend along a degree 0 map"));
    }
    Ok(CsValue::new(&pulled_back.value / int(degree)))
}

/// `Vol = -24 pi^2 CS`.
pub fn vol_from_cs(v: &CsValue) -> PiSquaredScalar {
    PiSquaredScalar::new(&v.value * int(-24))
}

/// `CS(1, 2) = CS(1, 3) + CS(3, 2)`.
pub fn chasles(ab: &CsValue, bc: &CsValue) -> CsValue {
    CsValue::new(&ab.value + &bc.value)
}

/// Geometric Chern-Simons invariant of `(nabla_L, nabla_R)` on a manifold of
/// volume `vol`: `(1 / 8 pi^2) * path_coefficient * kappa * vol`.
pub fn geometric_cs(vol: &PiSquaredScalar, frame: &OrientedFrame, orientation: Orientation) -> Result<CsValue> {
    let kappa = cs_density_in(&canonical_maurer_cartan(), frame, orientation)?;
    Ok(CsValue::new(path_coefficient() * kappa * &vol.coeff / int(8)))
}

/// Ratio of the geometric and combinatorial Chern-Simons invariants on the
/// unit tangent bundle `M(S_e, e)` with `sigma` trivial, for `e = -2`.
pub fn geometry_calibration() -> Rational {
    geometry_calibration_for(-2, &OrientedFrame::reference(), Orientation::Positive)
        .expect("e = -2 is a valid calibration descriptor")
}

pub fn geometry_calibration_for(
    e: i64,
    frame: &OrientedFrame,
    orientation: Orientation,
) -> Result<Rational> {
    let d = AdSDescriptor::new(e, 0, e)?;
    let combinatorial = cs_pair(&d)?;
    if combinatorial.value.is_zero() {
        return Err(Error::input("calibration descriptor has vanishing invariant"));
    }
    let geometric = geometric_cs(&volume(&d)?.signed, frame, orientation)?;
    Ok(geometric.value / combinatorial.value)
}

/// Frozen value of [`geometry_calibration`].
///
/// `kappa = -4` and the path coefficient `-1/12` give a geometric invariant
/// `+Vol / (24 pi^2)`, against `-Vol / (24 pi^2)` on the combinatorial side.
pub fn geometry_calibration_golden() -> Rational {
    int(-1)
}

/// Wire format of the `volume` and `cs` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeRecord {
    pub e: i64,
    pub f: i64,
    pub k: i64,
    #[serde(with = "pq_string")]
    pub volume_signed_pi2: Rational,
    #[serde(with = "pq_string")]
    pub volume_pi2: Rational,
    #[serde(with = "pq_string")]
    pub cs: Rational,
}

impl VolumeRecord {
    pub fn compute(d: &AdSDescriptor) -> Result<Self> {
        let vol = volume(d)?;
        Ok(VolumeRecord {
            e: d.e,
            f: d.f,
            k: d.k,
            volume_signed_pi2: vol.signed.coeff,
            volume_pi2: vol.magnitude.coeff,
            cs: cs_pair(d)?.value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn desc(e: i64, f: i64, k: i64) -> AdSDescriptor {
        AdSDescriptor::new(e, f, k).unwrap()
    }

    #[test]
    fn volume_examples() {
        let v = volume(&desc(-2, 0, -2)).unwrap();
        assert_eq!(v.signed.coeff, int(-8));
        assert_eq!(v.magnitude.coeff, int(8));
        assert!(volume(&desc(5, 5, 3)).unwrap().signed.coeff.is_zero());
        assert_eq!(volume(&desc(-4, 2, 3)).unwrap().signed.coeff, int(16));
        assert!(AdSDescriptor::new(1, 0, 0).is_err());
    }

    #[test]
    fn unit_tangent_examples() {
        assert_eq!(unit_tangent_volume(-2).unwrap().coeff, int(-8));
        assert_eq!(unit_tangent_volume(1).unwrap().coeff, int(4));
        assert!(unit_tangent_volume(0).is_err());
        for e in -6..=-2 {
            assert_eq!(
                unit_tangent_volume(e).unwrap(),
                volume(&desc(e, 0, e)).unwrap().signed
            );
        }
    }

    #[test]
    fn cs_rho_id_examples() {
        assert!(cs_rho_id(0, 5).unwrap().value.is_zero());
        assert_eq!(cs_rho_id(2, 1).unwrap().value, rat(-2, 3));
        assert_eq!(cs_rho_id(-2, -2).unwrap().value, rat(1, 3));
        assert!(cs_rho_id(1, 0).is_err());
    }

    #[test]
    fn cs_pair_examples() {
        assert!(cs_pair(&desc(3, 3, 2)).unwrap().value.is_zero());
        assert_eq!(cs_pair(&desc(-2, 0, -2)).unwrap().value, rat(1, 3));
        assert_eq!(cs_pair(&desc(-4, 2, 3)).unwrap().value, rat(-2, 3));
    }

    #[test]
    fn degree_examples() {
        let v = CsValue::new(rat(5, 7));
        assert_eq!(cs_scale(1, &v), v);
        // pulling -e/6 on M(S_e, e) back to M(S_e, 1) along the degree e cover
        let e = -4;
        let downstairs = cs_rho_id(e, e).unwrap();
        assert_eq!(downstairs.value, rat(-e, 6));
        assert_eq!(cs_scale(e, &downstairs), cs_rho_id(e, 1).unwrap());
        // M(S, 1) -> M(S, k) has degree k, so the value on M(S, k) is the M(S, 1) value over k
        let (f, k) = (3, 5);
        let upstairs = cs_rho_id(f, 1).unwrap();
        assert_eq!(cs_descend(k, &upstairs).unwrap(), cs_rho_id(f, k).unwrap());
        assert_eq!(cs_scale(k, &cs_rho_id(f, k).unwrap()), upstairs);
        assert!(cs_descend(0, &upstairs).is_err());
    }

    #[test]
    fn vol_from_cs_examples() {
        assert!(vol_from_cs(&CsValue::new(int(0))).coeff.is_zero());
        let d = desc(-2, 0, -2);
        assert_eq!(
            vol_from_cs(&cs_pair(&d).unwrap()),
            volume(&d).unwrap().signed
        );
        assert_eq!(vol_from_cs(&cs_pair(&d).unwrap()).coeff, int(-8));
    }

    #[test]
    fn chasles_examples() {
        let x = CsValue::new(rat(2, 9));
        assert_eq!(chasles(&x, &CsValue::new(int(0))), x);
        assert!(chasles(&x, &-x.clone()).value.is_zero());
        let d = desc(-4, 2, 3);
        assert_eq!(
            chasles(&cs_rho_id(-4, 3).unwrap(), &-cs_rho_id(2, 3).unwrap()),
            cs_pair(&d).unwrap()
        );
    }

    #[test]
    fn calibration_examples() {
        let c = geometry_calibration();
        assert_eq!(c, geometry_calibration_golden());
        let frame = OrientedFrame::reference();
        for e in [-2, -4] {
            assert_eq!(
                geometry_calibration_for(e, &frame, Orientation::Positive).unwrap(),
                c
            );
        }
        assert_eq!(
            geometry_calibration_for(-2, &frame, Orientation::Negative).unwrap(),
            -c
        );
    }

    #[test]
    fn descriptor_guards() {
        assert!(AdSDescriptor::with_genus(-2, 0, 1, 2).is_ok());
        assert!(AdSDescriptor::with_genus(-4, 0, 1, 2).is_err());
        assert!(AdSDescriptor::with_genus(0, 0, 1, 1).is_err());
        assert!(desc(-2, 2, 1).warnings().len() == 1);
        assert!(desc(-2, 0, 1).warnings().is_empty());
    }

    #[test]
    fn record_serializes_pq() {
        let rec = VolumeRecord::compute(&desc(-2, 0, -2)).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["volume_pi2"], "8/1");
        assert_eq!(json["volume_signed_pi2"], "-8/1");
        assert_eq!(json["cs"], "1/3");
    }
}
