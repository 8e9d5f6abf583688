//! Identity suite behind `adsvol verify`.
//!
//! Every check is deterministic: random inputs come from a fixed-seed
//! ChaCha stream.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::forms::{
    canonical_maurer_cartan, cs_density_golden, cs_density_in, curvature_at,
    curvature_closed_form, maurer_cartan_residual, ConnectionPath,
};
use crate::lie::{
    adjoint, bracket, killing, omega_volume_ratio, omega_volume_ratio_golden, rational_boost,
    rational_rotation, reference_frame, trace2, LieElement, Matrix3, MetricTensor, Orientation,
    OrientedFrame, CAUSAL_SIGNS,
};
use crate::rational::{int, rat, to_pq, Rational};
use crate::surface::{
    euler_class, fuchsian_regular_polygon, Moebius, Representation, SurfaceGroup,
};
use crate::volume::{
    chasles, cs_descend, cs_pair, cs_rho_id, cs_scale, geometry_calibration,
    geometry_calibration_for, geometry_calibration_golden, unit_tangent_volume, vol_from_cs,
    volume, AdSDescriptor, CsValue,
};

const SEED: u64 = 0x00AD_5701;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Check = fn(&mut ChaCha8Rng) -> std::result::Result<String, String>;

const CHECKS: [(&str, Check); 9] = [
    ("jacobi", check_lie_identities),
    ("maurer_cartan", check_maurer_cartan),
    ("curvature_path", check_curvature_path),
    ("vol_cs", check_vol_cs),
    ("unit_tangent", check_unit_tangent),
    ("chasles", check_chasles),
    ("degree", check_degree),
    ("milnor_wood", check_milnor_wood),
    ("calibration", check_calibration),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

pub fn run_suite() -> VerifyReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
            let (passed, detail) = match check(&mut rng) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name, passed, detail }
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-40i64..=40)),
        BigInt::from(rng.gen_range(1i64..=12)),
    )
}

pub fn random_element<R: Rng>(rng: &mut R) -> LieElement {
    LieElement::new(random_rational(rng), random_rational(rng), random_rational(rng))
}

/// Product of rational rotations and boosts applied to the reference frame.
pub fn random_positive_frame<R: Rng>(rng: &mut R) -> OrientedFrame {
    let boost_param = |rng: &mut R| {
        let q = rng.gen_range(2i64..=9);
        rat(rng.gen_range(-(q - 1)..=(q - 1)), q)
    };
    let mut l = Matrix3::identity();
    for axis in 0..2 {
        l = &l * &rational_rotation(&random_rational(rng));
        l = &l * &rational_boost(axis, &boost_param(rng)).expect("|s| < 1");
    }
    OrientedFrame::from_lorentz(&l).expect("Lorentz image of an orthonormal frame")
}

fn check_lie_identities(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let four = int(4);
    for _ in 0..100 {
        let (x, y, z) = (random_element(rng), random_element(rng), random_element(rng));
        let jacobi = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x)))
            + &bracket(&z, &bracket(&x, &y));
        ensure(jacobi.is_zero(), || format!("Jacobi fails on {x:?}, {y:?}, {z:?}"))?;
        ensure(bracket(&x, &y) == -&bracket(&y, &x), || {
            "bracket is not antisymmetric".into()
        })?;
        ensure(
            adjoint(&bracket(&x, &y)) == adjoint(&x).commutator(&adjoint(&y)),
            || "adjoint is not a homomorphism".into(),
        )?;
        ensure(killing(&x, &y) == &four * trace2(&x, &y), || {
            "Killing form differs from 4 tr".into()
        })?;
    }
    let sig = MetricTensor::calibrated().signature();
    ensure(sig == (2, 1), || format!("metric signature {sig:?}, expected (2, 1)"))?;
    Ok("Jacobi, antisymmetry, ad homomorphism, Killing = 4 tr on 100 triples; signature (2,1)".into())
}

fn check_maurer_cartan(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let residual = maurer_cartan_residual(&canonical_maurer_cartan()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = residual
        .values()
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, _)| k.clone())
        .collect();
    ensure(bad.is_empty(), || format!("nonzero residual on index pairs {bad:?}"))?;
    Ok("dA + [A^A]/2 = 0 on all index pairs".into())
}

fn check_curvature_path(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let mut failing = Vec::new();
    for i in 0..=10 {
        let t = rat(i, 10);
        let path = ConnectionPath::new(t.clone()).map_err(|e| e.to_string())?;
        let curvature = curvature_at(&path).map_err(|e| e.to_string())?;
        if curvature != curvature_closed_form(&t) {
            failing.push(to_pq(&t));
        }
    }
    ensure(failing.is_empty(), || {
        format!("curvature differs from ((t^2 - t)/2)[A^A] at t = {}", failing.join(", "))
    })?;
    Ok("R(t) = ((t^2 - t)/2)[A^A] at t = 0, 1/10, ..., 1".into())
}

fn check_vol_cs(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for _ in 0..10_000 {
        let e = rng.gen_range(-1000..=1000);
        let f = rng.gen_range(-1000..=1000);
        let mut k = 0;
        while k == 0 {
            k = rng.gen_range(-1000..=1000);
        }
        let d = AdSDescriptor::new(e, f, k).map_err(|e| e.to_string())?;
        let lhs = vol_from_cs(&cs_pair(&d).map_err(|e| e.to_string())?);
        let rhs = volume(&d).map_err(|e| e.to_string())?.signed;
        ensure(lhs == rhs, || format!("Vol != -24 pi^2 CS at (e, f, k) = ({e}, {f}, {k})"))?;
    }
    Ok("vol_from_cs(cs_pair) = volume on 10^4 triples".into())
}

fn check_unit_tangent(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for e in -50..=-2 {
        let lhs = unit_tangent_volume(e).map_err(|e| e.to_string())?;
        let rhs = volume(&AdSDescriptor::new(e, 0, e).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .signed;
        ensure(lhs == rhs, || format!("Vol US_e mismatch at e = {e}"))?;
        let cs = cs_rho_id(e, e).map_err(|e| e.to_string())?;
        ensure(cs.value == rat(-e, 6), || format!("CS on M(S_e, e) != -e/6 at e = {e}"))?;
    }
    Ok("Vol US_e = 4 pi^2 e and CS = -e/6 for e in [-50, -2]".into())
}

fn check_chasles(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for _ in 0..1000 {
        let (e, f) = (rng.gen_range(-200..=200), rng.gen_range(-200..=200));
        let k = if rng.gen_bool(0.5) { rng.gen_range(1..=200) } else { -rng.gen_range(1..=200) };
        let d = AdSDescriptor::new(e, f, k).map_err(|e| e.to_string())?;
        let via = chasles(
            &cs_rho_id(e, k).map_err(|e| e.to_string())?,
            &-cs_rho_id(f, k).map_err(|e| e.to_string())?,
        );
        ensure(via == cs_pair(&d).map_err(|e| e.to_string())?, || {
            format!("Chasles fails at ({e}, {f}, {k})")
        })?;
        let x = CsValue::new(random_rational(rng));
        ensure(chasles(&x, &-x.clone()).value.is_zero(), || "CS(a,b) + CS(b,a) != 0".into())?;
    }
    Ok("CS(rho, sigma) = CS(rho, Id) + CS(Id, sigma) on 1000 triples".into())
}

fn check_degree(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for _ in 0..1000 {
        let (d1, d2) = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let v = CsValue::new(random_rational(rng));
        ensure(cs_scale(d1 * d2, &v) == cs_scale(d1, &cs_scale(d2, &v)), || {
            format!("degree scaling is not functorial at ({d1}, {d2})")
        })?;
    }
    for e in -20..=-2 {
        // M(S_e, 1) -> M(S_e, e) has degree e
        let up = cs_scale(e, &cs_rho_id(e, e).map_err(|e| e.to_string())?);
        ensure(up.value == rat(-e * e, 6), || format!("pullback to M(S_e, 1) wrong at e = {e}"))?;
        for k in [-3, 1, 2, 7] {
            let down = cs_descend(k, &cs_rho_id(e, 1).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(down == cs_rho_id(e, k).map_err(|e| e.to_string())?, || {
                format!("descent along M(S, 1) -> M(S, k) wrong at (f, k) = ({e}, {k})")
            })?;
        }
    }
    Ok("cs_scale functorial; degree-e pullback and degree-k descent reproduce -f^2/(6k)".into())
}

/// Rotation by `angle` about the point of the upper half plane `g(i)`.
fn elliptic_about(g: &Moebius, angle: f64) -> Moebius {
    Moebius::rotation(angle).conjugate_by(g)
}

fn random_moebius<R: Rng>(rng: &mut R) -> Moebius {
    loop {
        let m = [
            [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
            [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
        ];
        if let Ok(m) = Moebius::new(m) {
            if m.entries().iter().flatten().all(|x| x.abs() < 20.0) {
                return m;
            }
        }
    }
}

/// Random representation built from elliptic generators.
///
/// Each handle `(a_i, b_i)` is either a commuting pair of rotations about a
/// random center or two unrelated elliptic elements; the latter usually
/// break the relator and must be caught by the integrality gate. With
/// `fuchsian_handles = h > 1` the first `h` handles carry the genus-`h`
/// regular polygon holonomy instead, giving Euler class `2 - 2h`.
pub fn random_elliptic_representation<R: Rng>(
    rng: &mut R,
    genus: u32,
    fuchsian_handles: u32,
) -> crate::Result<Representation> {
    let group = SurfaceGroup::new(genus)?;
    let mut images = Vec::with_capacity(group.generator_count());
    if fuchsian_handles >= 2 && fuchsian_handles < genus {
        let g = random_moebius(rng);
        images.extend(
            fuchsian_regular_polygon(fuchsian_handles)?
                .conjugate(&g)
                .images()
                .iter()
                .copied(),
        );
    }
    while images.len() < group.generator_count() {
        let center = random_moebius(rng);
        let a = elliptic_about(&center, rng.gen_range(0.1..3.0));
        let b = if rng.gen_bool(0.6) {
            elliptic_about(&center, rng.gen_range(0.1..3.0))
        } else {
            elliptic_about(&random_moebius(rng), rng.gen_range(0.1..3.0))
        };
        images.extend([a, b]);
    }
    Representation::new(group, images)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MilnorWoodTally {
    pub passed_gate: usize,
    pub gate_failures: usize,
    pub nonzero: usize,
    pub violations: usize,
}

/// Euler classes of `count` random elliptic-generator representations.
pub fn milnor_wood_sweep<R: Rng>(rng: &mut R, count: usize) -> MilnorWoodTally {
    let mut tally = MilnorWoodTally::default();
    for _ in 0..count {
        let genus = rng.gen_range(2..=4);
        let handles = rng.gen_range(0..genus);
        let rep = random_elliptic_representation(rng, genus, handles).expect("genus >= 2");
        match euler_class(&rep) {
            Ok(e) => {
                tally.passed_gate += 1;
                if e.euler != 0 {
                    tally.nonzero += 1;
                }
                if e.euler.abs() > rep.group().milnor_wood_bound() {
                    tally.violations += 1;
                }
            }
            Err(Error::Integrality { .. }) => tally.gate_failures += 1,
            Err(other) => panic!("unexpected error {other}"),
        }
    }
    tally
}

fn check_milnor_wood(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let trivial = euler_class(&Representation::trivial(SurfaceGroup::new(2).unwrap()))
        .map_err(|e| e.to_string())?;
    ensure(trivial.euler == 0, || "trivial representation has nonzero Euler class".into())?;
    for g in 2..=4 {
        let e = euler_class(&fuchsian_regular_polygon(g).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let bound = 2 * i64::from(g) - 2;
        ensure(e.euler.abs() == bound, || {
            format!("genus {g} Fuchsian Euler class {} != +-{bound}", e.euler)
        })?;
    }
    let tally = milnor_wood_sweep(rng, 200);
    ensure(tally.violations == 0, || {
        format!("{} representations exceed 2g - 2", tally.violations)
    })?;
    Ok(format!(
        "Fuchsian |e| = 2g - 2 for g = 2, 3, 4; {} random representations passed the gate ({} nonzero), {} gate failures, 0 violations",
        tally.passed_gate, tally.nonzero, tally.gate_failures
    ))
}

fn check_calibration(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let metric = MetricTensor::calibrated();
    let frame = reference_frame();
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == j { int(CAUSAL_SIGNS[i]) } else { Rational::zero() };
            let got = metric.inner(&frame[i], &frame[j]);
            ensure(got == expected, || {
                format!(
                    "reference frame not orthonormal: <u{}, u{}> = {}",
                    i + 1,
                    j + 1,
                    to_pq(&got)
                )
            })?;
        }
    }
    let a = canonical_maurer_cartan();
    let kappa = cs_density_in(&a, &OrientedFrame::reference(), Orientation::Positive)
        .map_err(|e| e.to_string())?;
    ensure(kappa == cs_density_golden(), || {
        format!("kappa = {}, golden {}", to_pq(&kappa), to_pq(&cs_density_golden()))
    })?;
    let c = geometry_calibration();
    ensure(c == geometry_calibration_golden(), || {
        format!("calibration = {}, golden {}", to_pq(&c), to_pq(&geometry_calibration_golden()))
    })?;
    let ratio = omega_volume_ratio();
    ensure(ratio == omega_volume_ratio_golden(), || {
        format!("Omega / Vol = {}, golden {}", to_pq(&ratio), to_pq(&omega_volume_ratio_golden()))
    })?;
    for _ in 0..5 {
        let f = random_positive_frame(rng);
        let k = cs_density_in(&a, &f, Orientation::Positive).map_err(|e| e.to_string())?;
        ensure(k == kappa, || "kappa depends on the frame".into())?;
        let c_f = geometry_calibration_for(-2, &f, Orientation::Positive).map_err(|e| e.to_string())?;
        ensure(c_f == c, || "calibration depends on the frame".into())?;
        let c_rev =
            geometry_calibration_for(-2, &f, Orientation::Negative).map_err(|e| e.to_string())?;
        ensure(c_rev == -&c, || "calibration does not flip with orientation".into())?;
    }
    Ok(format!(
        "kappa = {}, calibration = {}, Omega / Vol = {}; frame independent, odd under orientation reversal",
        to_pq(&kappa),
        to_pq(&c),
        to_pq(&ratio)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_build_passes_every_check() {
        let report = run_suite();
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert!(report.passed);
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn random_frames_are_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            assert_eq!(random_positive_frame(&mut rng).orientation(), Orientation::Positive);
        }
    }

    #[test]
    fn sweep_exercises_both_gate_outcomes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = milnor_wood_sweep(&mut rng, 200);
        assert_eq!(t.violations, 0);
        assert!(t.passed_gate > 0 && t.gate_failures > 0 && t.nonzero > 0, "{t:?}");
    }
}
