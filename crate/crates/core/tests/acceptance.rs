//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All comparisons are exact except the runtime bound.

use std::time::{Duration, Instant};

use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ctcount::cli::run;
use ctcount::fixedlocus::{derived_weight_table, enumerate_fixed_points};
use ctcount::localization::{Localizer, SamplePlan};
use ctcount::poly::{elementary_symmetric, ExactPoly, LinearForm};
use ctcount::reference::reference_weight_table;
use ctcount::table::cross_check;
use ctcount::triangles::{
    apolar_complement, dagger, deformation_system, jacobian_space, published_deformation_equations,
    Quadric, QuadricSpace, DEFORMATION_PARAMS,
};
use ctcount::Plane;

const RUNTIME_LIMIT: Duration = Duration::from_secs(10);
const PROPERTY_SEEDS: [u64; 3] = [1, 2, 3];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ctcount(args: &[&str]) -> ctcount::cli::Outcome {
    run(std::iter::once("ctcount").chain(args.iter().copied()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let out = ctcount(&["compute", "nu32"]);
    let elapsed = start.elapsed();
    ensure(out.code == 0, format!("exit {}: {}", out.code, out.stderr))?;
    let first = out.stdout.lines().next().unwrap_or_default();
    ensure(first == "nu32 = 4246", format!("got `{first}`"))?;
    ensure(elapsed < RUNTIME_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("nu32 = 4246 in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Verdict {
    let out = ctcount(&["compute", "porteous-naive"]);
    ensure(out.code == 0, format!("exit {}: {}", out.code, out.stderr))?;
    ensure(out.stdout.starts_with("porteous-naive = 57728\n"), out.stdout.clone())?;
    ensure(out.stdout.contains("factorization: 2^7 * 11 * 41\n"), out.stdout.clone())?;
    Ok("57728 = 2^7 * 11 * 41".into())
}

fn criterion_3() -> Verdict {
    let loc = Localizer::new(derived_weight_table().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let checks = loc.sanity_suite(&SamplePlan::default()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(checks.len() == 8 && failed.is_empty(), failed.join("; "))?;
    Ok("8/8 sanity integrals exact".into())
}

fn criterion_4() -> Verdict {
    let report = cross_check(&derived_weight_table().map_err(|e| e.to_string())?, &reference_weight_table());
    ensure(report.comparisons == 217, format!("{} comparisons", report.comparisons))?;
    ensure(report.passed(), format!("{} mismatches: {:?}", report.mismatches.len(), report.mismatches.first()))?;
    Ok("217 multiset equalities, 0 mismatches".into())
}

fn span(plane: Plane, s: &str) -> QuadricSpace {
    QuadricSpace::span(plane, s).unwrap()
}

fn criterion_5() -> Verdict {
    let mut members = 0;
    for p in enumerate_fixed_points().map_err(|e| e.to_string())? {
        ensure(p.is_complete_triangle().map_err(|e| e.to_string())?, format!("fails at {p}"))?;
        members += 1;
    }
    let (pr, du) = (Plane::Primal, Plane::Dual);
    let complement = [
        ("XY, YZ, XZ", "X^2, Y^2, Z^2"),
        ("XY, X^2, YZ", "Y^2, Z^2, XZ"),
        ("XZ, YZ, Z^2", "X^2, XY, Y^2"),
        ("X^2, XY, Y^2", "XZ, YZ, Z^2"),
    ];
    for (input, expected) in complement {
        let got = apolar_complement(&span(pr, input)).map_err(|e| e.to_string())?;
        ensure(got == span(du, expected), format!("complement of {input}: {got}"))?;
    }
    let jacobian = [
        ("X^2, Y^2, Z^2", "XY, YZ, XZ"),
        ("X^2, XY, Y^2", "X^2, XY, Y^2"),
        ("XZ, YZ, Z^2", "XZ, YZ, Z^2"),
    ];
    for (input, expected) in jacobian {
        let got = jacobian_space(&span(du, input)).map_err(|e| e.to_string())?;
        ensure(got == span(du, expected), format!("jacobian of {input}: {got}"))?;
    }
    let daggers = [
        ("XY, YZ, XZ", "XY, YZ, XZ"),
        ("XY, X^2, YZ", "YZ, YX, Z^2"),
        ("X^2, XY, Y^2", "XZ, YZ, Z^2"),
        ("XZ, YZ, Z^2", "X^2, XY, Y^2"),
    ];
    for (input, expected) in daggers {
        let got = dagger(&span(pr, input)).map_err(|e| e.to_string())?;
        ensure(got == span(du, expected), format!("dagger of {input}: {got}"))?;
    }
    Ok(format!("{members}/31 fixed points, 11 worked examples"))
}

fn criterion_6() -> Verdict {
    let system = deformation_system().map_err(|e| e.to_string())?;
    ensure(system.kernel_dim == 6, format!("kernel dimension {}", system.kernel_dim))?;
    let alpha3 = DEFORMATION_PARAMS.iter().position(|p| *p == "alpha3").unwrap();
    let mut row = vec![BigRational::zero(); 12];
    row[alpha3] = BigRational::one();
    ensure(system.unimplied(&[row]).is_empty(), "alpha3 = 0 not implied")?;
    let published = published_deformation_equations();
    let missing = system.unimplied(&published);
    ensure(
        system.matches(&published),
        format!("kernel dim 6 and alpha3 = 0 hold, but published equation(s) {missing:?} (0-based) are not in the derived row space"),
    )?;
    Ok("kernel dimension 6, matches the six published equations".into())
}

fn random_forms(rng: &mut ChaCha8Rng, n: usize) -> Vec<LinearForm> {
    (0..n)
        .map(|_| LinearForm::new(rng.random_range(-5..=5), rng.random_range(-5..=5), rng.random_range(-5..=5)))
        .collect()
}

fn brute_sigma(i: usize, w: &[LinearForm]) -> ExactPoly {
    let mut total = ExactPoly::zero();
    for mask in 0u32..(1 << w.len()) {
        if mask.count_ones() as usize == i {
            let mut prod = ExactPoly::one();
            for (k, f) in w.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    prod = &prod * &ExactPoly::from(f);
                }
            }
            total = &total + &prod;
        }
    }
    total
}

fn random_space(rng: &mut ChaCha8Rng, plane: Plane) -> QuadricSpace {
    loop {
        let rows: Vec<Quadric> = (0..3)
            .map(|_| std::array::from_fn(|_| ExactPoly::from_int(rng.random_range(-4..=4))))
            .collect();
        if let Ok(s) = QuadricSpace::new(plane, rows) {
            return s;
        }
    }
}

fn change_basis(rng: &mut ChaCha8Rng, space: &QuadricSpace) -> QuadricSpace {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-3..=3)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det == 0 {
            continue;
        }
        let basis = space.basis();
        let rows: Vec<Quadric> = m
            .iter()
            .map(|coef| {
                std::array::from_fn(|k| {
                    (0..3).fold(ExactPoly::zero(), |acc, j| {
                        &acc + &basis[j][k].scale(&BigRational::from_integer(coef[j].into()))
                    })
                })
            })
            .collect();
        return QuadricSpace::new(space.plane(), rows).expect("invertible change of basis");
    }
}

fn criterion_7() -> Verdict {
    // Constancy across >= 5 admissible triples for every suite class.
    let loc = Localizer::new(derived_weight_table().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut classes = loc.sanity_classes().map_err(|e| e.to_string())?;
    classes.push(("integrand", loc.ultimate_integrand().map_err(|e| e.to_string())?, 4246));
    classes.push(("Delta0", loc.delta(0).map_err(|e| e.to_string())?, 57728));
    for seed in PROPERTY_SEEDS {
        for (name, cls, expected) in &classes {
            let v = loc.bott_integrate(cls, &SamplePlan::new(seed, 5)).map_err(|e| format!("{name}: {e}"))?;
            ensure(v == (*expected).into(), format!("{name} = {v} with seed {seed}"))?;
        }
    }

    // Elementary symmetric functions against subset sums.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.random_range(0..=7);
        let w = random_forms(&mut rng, n);
        for i in 0..=n {
            ensure(elementary_symmetric(i, &w).unwrap() == brute_sigma(i, &w), format!("sigma_{i} of {w:?}"))?;
        }
    }

    // The apolar complement is an involution.
    for _ in 0..20 {
        let s = random_space(&mut rng, Plane::Primal);
        let back = apolar_complement(&apolar_complement(&s).unwrap()).unwrap();
        ensure(back == s, format!("complement twice moved {s}"))?;
    }

    // The jacobian net depends only on the space, not on the chosen basis.
    let mut inputs: Vec<QuadricSpace> =
        ["X^2, Y^2, Z^2", "X^2, XY, Y^2", "XZ, YZ, Z^2"].iter().map(|s| span(Plane::Dual, s)).collect();
    for p in enumerate_fixed_points().map_err(|e| e.to_string())? {
        inputs.push(apolar_complement(&p.primal.net().unwrap()).unwrap());
    }
    for s in &inputs {
        let j = jacobian_space(s).map_err(|e| format!("{s}: {e}"))?;
        for _ in 0..20 {
            let t = change_basis(&mut rng, s);
            ensure(jacobian_space(&t).ok() == Some(j.clone()), format!("jacobian of {s} moved"))?;
        }
    }

    // Colength bookkeeping: squares have colength 9, or 10 at the fat
    // point, and the modified square restores 9.
    for p in enumerate_fixed_points().map_err(|e| e.to_string())? {
        let sq: usize = p.primal_pieces.iter().map(|q| q.ideal.square().colength().unwrap()).sum();
        let modified: usize = p
            .primal_pieces
            .iter()
            .map(|q| q.ideal.modified_square(&p.local_cubic(&q.chart)).unwrap().colength().unwrap())
            .sum();
        let expected = if p.is_fat() { 10 } else { 9 };
        ensure(sq == expected && modified == 9, format!("{p}: square {sq}, modified {modified}"))?;
    }
    Ok(format!(
        "constancy x{} seeds, sigma_i, complement involution, jacobian under 20 basis changes, colengths",
        PROPERTY_SEEDS.len()
    ))
}

fn criterion_8() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("weights.json");
    let path_str = path.to_str().unwrap();
    let dump = ctcount(&["dump", "weights", "--out", path_str]);
    ensure(dump.code == 0, format!("dump: {}", dump.stderr))?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let table = ctcount::table::WeightTable::from_json(&text).map_err(|e| e.to_string())?;
    ensure(table == derived_weight_table().unwrap(), "re-imported table differs")?;
    let out = ctcount(&["compute", "nu32", "--table", path_str]);
    ensure(out.code == 0 && out.stdout.starts_with("nu32 = 4246\n"), format!("{}{}", out.stdout, out.stderr))?;
    Ok("dump -> re-import -> nu32 = 4246".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("compute nu32 = 4246 under 10 s", criterion_1),
        ("porteous-naive = 57728 = 2^7*11*41", criterion_2),
        ("sanity suite 8/8", criterion_3),
        ("weight tables agree (217 multisets)", criterion_4),
        ("complete triangle membership and examples", criterion_5),
        ("deformation system", criterion_6),
        ("property suite", criterion_7),
        ("weights JSON round trip", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
