//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use adsvol::admissibility::{
    admissibility_report, lipschitz_lower_bound, lipschitz_lower_bound_with, Partitioning,
    Verdict, DEFAULT_DENOMINATOR_FLOOR,
};
use adsvol::forms::{
    bracket_wedge, canonical_maurer_cartan, cs_density, cs_density_golden, cs_density_in,
    curvature_at, maurer_cartan_residual, ConnectionPath,
};
use adsvol::lie::{
    adjoint, bracket, killing, trace2, LieElement, MetricTensor, Orientation, OrientedFrame,
};
use adsvol::rational::{int, rat, to_pq};
use adsvol::surface::{
    euler_class, fuchsian_regular_polygon, Moebius, Representation, SurfaceGroup,
};
use adsvol::verify::{milnor_wood_sweep, random_element, random_positive_frame};
use adsvol::volume::{
    cs_pair, cs_rho_id, geometry_calibration, geometry_calibration_for,
    geometry_calibration_golden, unit_tangent_volume, vol_from_cs, volume, AdSDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let value = f();
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "{what} took {elapsed:.2?} (limit {limit:?})");
    Ok((value, elapsed))
}

/// 4 (e^2 - f^2) / k in lowest terms, in plain integers.
fn volume_oracle(e: i64, f: i64, k: i64) -> String {
    let (mut p, mut q) = (4 * (e as i128 * e as i128 - f as i128 * f as i128), k as i128);
    if q < 0 {
        p = -p;
        q = -q;
    }
    let (mut a, mut b) = (p.abs(), q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let g = a.max(1);
    format!("{}/{}", p / g, q / g)
}

fn c1_vol_cs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let triples: Vec<(i64, i64, i64)> = (0..10_000)
        .map(|_| {
            let k = loop {
                let k = rng.gen_range(-1000..=1000);
                if k != 0 {
                    break k;
                }
            };
            (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000), k)
        })
        .collect();
    let (mismatches, elapsed) = timed(Duration::from_secs(1), "10^4 triples", || {
        triples
            .iter()
            .filter(|&&(e, f, k)| {
                let d = AdSDescriptor::new(e, f, k).unwrap();
                vol_from_cs(&cs_pair(&d).unwrap()) != volume(&d).unwrap().signed
            })
            .count()
    })?;
    ensure!(mismatches == 0, "{mismatches} triples disagree");
    for &(e, f, k) in triples.iter().take(1000) {
        let d = AdSDescriptor::new(e, f, k).unwrap();
        let got = to_pq(&volume(&d).unwrap().signed.coeff);
        ensure!(got == volume_oracle(e, f, k), "({e}, {f}, {k}): {got} vs {}", volume_oracle(e, f, k));
    }
    Ok(format!("10^4 triples bit-exact in {elapsed:.0?}"))
}

fn c2_unit_tangent() -> Outcome {
    for e in -50..=-2 {
        let d = AdSDescriptor::new(e, 0, e).unwrap();
        ensure!(unit_tangent_volume(e).unwrap() == volume(&d).unwrap().signed, "Vol mismatch at e = {e}");
        ensure!(unit_tangent_volume(e).unwrap().coeff == int(4 * e), "Vol != 4 e pi^2 at e = {e}");
        ensure!(cs_rho_id(e, e).unwrap().value == rat(-e, 6), "CS(rho, Id) != -e/6 at e = {e}");
    }
    Ok("e in [-50, -2]".into())
}

fn c3_worked_numbers() -> Outcome {
    let d = AdSDescriptor::new(-2, 0, -2).unwrap();
    let v = volume(&d).unwrap();
    ensure!(v.magnitude.coeff == int(8), "|Vol| = {} pi^2", v.magnitude.coeff);
    let cs = cs_pair(&d).unwrap().value;
    ensure!(cs == rat(1, 3), "CS = {cs}");
    let a = cs_rho_id(2, 1).unwrap().value;
    ensure!(a == rat(-2, 3), "CS(rho, Id) on M(S, 1) = {a}");
    let b = cs_rho_id(2, 4).unwrap().value;
    ensure!(b == rat(-1, 6), "CS(rho, Id) on M(S, 4) = {b}");
    Ok("8 pi^2, 1/3, -2/3, -1/6".into())
}

fn c4_forms() -> Outcome {
    let a = canonical_maurer_cartan();
    let residual = maurer_cartan_residual(&a).map_err(|e| e.to_string())?;
    for pair in [[0, 1], [0, 2], [1, 2]] {
        ensure!(residual.component(&pair).is_zero(), "residual nonzero on {pair:?}");
    }
    let aa = bracket_wedge(&a, &a).map_err(|e| e.to_string())?;
    for i in 0..=10 {
        let t = rat(i, 10);
        let f = curvature_at(&ConnectionPath::new(t.clone()).unwrap()).map_err(|e| e.to_string())?;
        let expected = aa.scale(&((&t * &t - &t) / int(2)));
        ensure!(f == expected, "curvature differs at t = {}", to_pq(&t));
        if i == 0 || i == 10 {
            ensure!(f.is_zero(), "t = {} is not flat", to_pq(&t));
        }
    }
    Ok("zero residual; 11 t values exact; endpoints flat".into())
}

fn c5_lie_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let inputs: Vec<[LieElement; 3]> = (0..100)
        .map(|_| [random_element(&mut rng), random_element(&mut rng), random_element(&mut rng)])
        .collect();
    let (result, elapsed) = timed(Duration::from_secs(1), "identity checks", || -> Outcome {
        for [x, y, z] in &inputs {
            let jacobi = &(&bracket(x, &bracket(y, z)) + &bracket(y, &bracket(z, x)))
                + &bracket(z, &bracket(x, y));
            ensure!(jacobi.is_zero(), "Jacobi fails");
            ensure!(bracket(x, y) == -&bracket(y, x), "antisymmetry fails");
            ensure!(adjoint(&bracket(x, y)) == adjoint(x).commutator(&adjoint(y)), "ad fails");
            ensure!(killing(x, y) == int(4) * trace2(x, y), "Killing != 4 tr");
        }
        Ok(String::new())
    })?;
    result?;
    let sig = MetricTensor::calibrated().signature();
    ensure!(sig == (2, 1), "signature {sig:?}");
    Ok(format!("100 inputs x 4 identities in {elapsed:.0?}; signature (+,+,-)"))
}

fn c6_constants() -> Outcome {
    let a = canonical_maurer_cartan();
    let kappa = cs_density(&a).map_err(|e| e.to_string())?;
    let c_hat = geometry_calibration();
    ensure!(!kappa.is_zero() && !c_hat.is_zero(), "vanishing constant");
    ensure!(kappa == cs_density_golden(), "kappa = {kappa}");
    ensure!(c_hat == geometry_calibration_golden(), "c_hat = {c_hat}");
    ensure!(cs_density(&a).unwrap() == kappa && geometry_calibration() == c_hat, "not bit-stable");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let frame = random_positive_frame(&mut rng);
        ensure!(frame.orientation() == Orientation::Positive, "frame not positive");
        let k = cs_density_in(&a, &frame, Orientation::Positive).map_err(|e| e.to_string())?;
        let k_rev = cs_density_in(&a, &frame, Orientation::Negative).map_err(|e| e.to_string())?;
        ensure!(k == kappa && k_rev == -&kappa, "kappa frame-dependent: {k}, {k_rev}");
        let c = geometry_calibration_for(-2, &frame, Orientation::Positive).map_err(|e| e.to_string())?;
        let c_rev =
            geometry_calibration_for(-2, &frame, Orientation::Negative).map_err(|e| e.to_string())?;
        ensure!(c == c_hat && c_rev == -&c_hat, "c_hat frame-dependent: {c}, {c_rev}");
    }
    let reference = OrientedFrame::reference();
    ensure!(
        cs_density_in(&a, &reference.swapped(), Orientation::Positive).unwrap() == kappa,
        "kappa changes under frame swap"
    );
    Ok(format!("kappa = {}, c_hat = {} across 5 frames", to_pq(&kappa), to_pq(&c_hat)))
}

fn c7_euler() -> Outcome {
    let trivial = euler_class(&Representation::trivial(SurfaceGroup::new(2).unwrap()))
        .map_err(|e| e.to_string())?;
    ensure!(trivial.euler == 0, "trivial Euler class {}", trivial.euler);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut times = Vec::new();
    for g in 2..=4u32 {
        let (e, elapsed) = timed(Duration::from_secs(1), &format!("genus {g}"), || {
            euler_class(&fuchsian_regular_polygon(g).unwrap())
        })?;
        let e = e.map_err(|e| e.to_string())?;
        ensure!(e.euler.abs() == 2 * g as i64 - 2, "genus {g}: Euler class {}", e.euler);
        ensure!(e.residual < 1e-6, "genus {g}: residual {:e}", e.residual);
        times.push(format!("{elapsed:.0?}"));
        let rep = fuchsian_regular_polygon(g).unwrap();
        for _ in 0..5 {
            let c = Moebius::new([
                [rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)],
                [rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0)],
            ])
            .map_err(|e| e.to_string())?;
            let conj = euler_class(&rep.conjugate(&c)).map_err(|e| e.to_string())?;
            ensure!(conj.euler == e.euler, "genus {g}: conjugate has Euler class {}", conj.euler);
        }
    }
    let tally = milnor_wood_sweep(&mut rng, 200);
    ensure!(tally.violations == 0, "{} Milnor-Wood violations", tally.violations);
    ensure!(tally.passed_gate + tally.gate_failures == 200, "sweep incomplete: {tally:?}");
    Ok(format!(
        "fuchsian g = 2, 3, 4 in {}; sweep: {} gated, {} nonzero, {} gate failures, 0 violations",
        times.join(", "),
        tally.passed_gate,
        tally.nonzero,
        tally.gate_failures
    ))
}

fn c8_admissibility() -> Outcome {
    let rho = fuchsian_regular_polygon(2).unwrap();
    let same = admissibility_report(&rho, &rho, 6).map_err(|e| e.to_string())?;
    ensure!((same.lipschitz.lower_bound - 1.0).abs() < 1e-10, "sigma = rho: bound {}", same.lipschitz.lower_bound);
    ensure!(same.verdict == Verdict::Refuted, "sigma = rho: verdict {:?}", same.verdict);
    let trivial = Representation::trivial(rho.group());
    let triv = admissibility_report(&rho, &trivial, 6).map_err(|e| e.to_string())?;
    ensure!(triv.lipschitz.lower_bound == 0.0, "trivial sigma: bound {}", triv.lipschitz.lower_bound);
    ensure!(triv.verdict == Verdict::NotRefuted, "trivial sigma: verdict {:?}", triv.verdict);

    // sigma: each generator conjugated by its own element, so ratios vary by word
    let images: Vec<Moebius> = rho
        .images()
        .iter()
        .enumerate()
        .map(|(i, m)| m.conjugate_by(&Moebius::diagonal(1.0 + 0.15 * i as f64).unwrap()))
        .collect();
    let sigma = Representation::new(rho.group(), images).unwrap();
    let mut prev = f64::NEG_INFINITY;
    for n in 2..=6 {
        let b = lipschitz_lower_bound(&rho, &sigma, n, DEFAULT_DENOMINATOR_FLOOR)
            .map_err(|e| e.to_string())?
            .lower_bound;
        ensure!(b >= prev, "bound decreases at N = {n}: {b} < {prev}");
        prev = b;
    }
    let (full, elapsed) = timed(Duration::from_secs(10), "genus 2, N = 6", || {
        lipschitz_lower_bound(&rho, &sigma, 6, DEFAULT_DENOMINATOR_FLOOR)
    })?;
    let full = full.map_err(|e| e.to_string())?;
    for p in [Partitioning::Sequential, Partitioning::LeadingPair] {
        let other = lipschitz_lower_bound_with(&rho, &sigma, 6, DEFAULT_DENOMINATOR_FLOOR, p)
            .map_err(|e| e.to_string())?;
        ensure!(other == full, "{p:?} partitioning differs");
    }
    Ok(format!("sigma = rho: 1, trivial: 0, monotone N = 2..6, N = 6 in {elapsed:.2?}, partition-independent"))
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_adsvol")
}

fn run(exe: &Path, args: &[&str]) -> Output {
    Command::new(exe).args(args).output().expect("adsvol runs")
}

fn json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("invalid JSON: {e}"))
}

fn fault_build(feature: &str) -> Result<PathBuf, String> {
    let workspace = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let target = workspace.join("target/fault-builds");
    let status = Command::new(env!("CARGO"))
        .current_dir(&workspace)
        .args(["build", "--quiet", "--offline", "-p", "adsvol", "--features", feature, "--target-dir"])
        .arg(&target)
        .status()
        .map_err(|e| format!("cargo build: {e}"))?;
    ensure!(status.success(), "fault build with {feature} failed");
    Ok(target.join("debug").join(format!("adsvol{}", std::env::consts::EXE_SUFFIX)))
}

fn c9_cli() -> Outcome {
    let exe = Path::new(bin());
    let vol = run(exe, &["volume", "--e", "-2", "--f", "0", "--k", "-2"]);
    ensure!(vol.status.code() == Some(0), "volume exit {:?}", vol.status.code());
    ensure!(json(&vol)?["volume_pi2"] == "8/1", "volume_pi2 = {}", json(&vol)?["volume_pi2"]);
    let cs = run(exe, &["cs", "--e", "-2", "--f", "0", "--k", "-2"]);
    ensure!(cs.status.code() == Some(0), "cs exit {:?}", cs.status.code());
    ensure!(json(&cs)?["cs"] == "1/3", "cs = {}", json(&cs)?["cs"]);

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rep = dir.path().join("r.json");
    let rep_s = rep.to_str().unwrap();
    let made = run(exe, &["rep", "--genus", "2", "--out", rep_s]);
    ensure!(made.status.code() == Some(0), "rep exit {:?}", made.status.code());
    ensure!(json(&made)?["relator_residual"].as_f64().unwrap_or(1.0) < 1e-9, "relator residual too large");
    let eu = run(exe, &["euler", "--rep", rep_s]);
    let eu_json = json(&eu)?;
    ensure!(eu.status.code() == Some(0), "euler exit {:?}", eu.status.code());
    ensure!(eu_json["euler"].as_i64().map(i64::abs) == Some(2), "euler = {}", eu_json["euler"]);
    ensure!(eu_json["residual"].as_f64().unwrap_or(1.0) < 1e-6, "euler residual {}", eu_json["residual"]);
    let lip = run(exe, &["lipschitz", "--rho", rep_s, "--sigma", rep_s, "--max-word-len", "4"]);
    let lip_json = json(&lip)?;
    ensure!(lip.status.code() == Some(0), "lipschitz exit {:?}", lip.status.code());
    let bound = lip_json["lipschitz_lower_bound"].as_f64().unwrap_or(0.0);
    ensure!((bound - 1.0).abs() < 1e-10, "lipschitz bound {bound}");
    ensure!(lip_json["verdict"] == "refuted", "verdict {}", lip_json["verdict"]);

    let clean = run(exe, &["verify"]);
    ensure!(clean.status.code() == Some(0), "clean verify exit {:?}", clean.status.code());
    ensure!(json(&clean)?["passed"] == true, "clean verify report not passed");

    let mut faults = Vec::new();
    for (feature, check) in [("fault-lambda-one", "calibration"), ("fault-curvature-sign", "curvature_path")] {
        let exe = fault_build(feature)?;
        let out = run(&exe, &["verify"]);
        ensure!(out.status.code() == Some(1), "{feature}: verify exit {:?}", out.status.code());
        let stderr = String::from_utf8_lossy(&out.stderr);
        ensure!(stderr.contains(&format!("FAIL {check}")), "{feature}: {check} not reported failing");
        if feature == "fault-curvature-sign" {
            ensure!(stderr.contains("1/2"), "{feature}: failure at t = 1/2 not reported");
        }
        faults.push(format!("{feature} -> {check} fails"));
    }
    Ok(format!("worked commands exact; verify 0 clean; {}", faults.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Vol <-> CS consistency", c1_vol_cs),
        ("unit tangent special case", c2_unit_tangent),
        ("worked numbers", c3_worked_numbers),
        ("Maurer-Cartan and curvature path", c4_forms),
        ("Lie algebra identities", c5_lie_identities),
        ("frozen constants kappa, c_hat", c6_constants),
        ("Euler classes", c7_euler),
        ("admissibility estimator", c8_admissibility),
        ("CLI contract", c9_cli),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
