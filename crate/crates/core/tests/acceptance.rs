mod common;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use flexbound::bounds::{covering_invariants, rhs_hyperbolic};
use flexbound::corpus;
use flexbound::enumerate::enumerate_forests;
use flexbound::forest::OvalForest;
use flexbound::rational::{int, Rational};
use flexbound::report::Report;
use flexbound::scheme::{boundary_matrix, expand_scheme, CurveType, RealScheme, SchemeComponent};
use flexbound::surface::{CurveClass, IntersectionLattice, SurfaceModel};
use flexbound::table::{sweep, SweepFamily, TableRow};
use flexbound::verdict::{check, extremality_type_i, Feasibility, FinalStatus, Overrides};
use flexbound::zp;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Sweep {
    family: SweepFamily,
    rows: Vec<TableRow>,
}

fn all_sweeps() -> Result<Vec<Sweep>, String> {
    let mut families = vec![SweepFamily::Plane {
        degrees: (3..=49).collect(),
    }];
    for a in 1..=20 {
        for b in 1..=20 {
            families.push(SweepFamily::Quadric { a, b });
        }
    }
    for e in 0..=5 {
        for a in 1..=12 {
            for b in 1..=12 {
                families.push(SweepFamily::Hirzebruch { e, a, b });
            }
        }
    }
    for d in 1..=9 {
        for n in 1..=10 {
            families.push(SweepFamily::DelPezzo { d, n });
        }
    }
    let mut out = Vec::new();
    for family in families {
        let rhos: &[u32] = match family {
            SweepFamily::Hirzebruch { .. } | SweepFamily::DelPezzo { .. } => &[0, 1, 2],
            _ => &[0],
        };
        for &rho in rhos {
            let rows = sweep(&family, rho, &[0, 1]).map_err(|e| format!("{family:?}: {e}"))?;
            out.push(Sweep {
                family: family.clone(),
                rows,
            });
        }
    }
    Ok(out)
}

fn criterion_1(sweeps: &[Sweep]) -> Outcome {
    let mut count = 0;
    let mut plane_ms = BTreeSet::new();
    for s in sweeps {
        for r in &s.rows {
            ensure(r.general_i1 == r.closed_i1 && r.general_i2 == r.closed_i2, || {
                format!("{:?} m={} h={} ρ={} δ={}: general ({}, {}) vs closed ({}, {})",
                    s.family, r.m, r.h, r.rho, r.delta, r.general_i1, r.general_i2, r.closed_i1, r.closed_i2)
            })?;
            if matches!(s.family, SweepFamily::Plane { .. }) {
                plane_ms.insert(r.m);
            }
            count += 1;
        }
    }
    ensure(plane_ms.len() == 24, || format!("plane sweep covered {} odd degrees", plane_ms.len()))?;
    Ok(format!("{count} rows agree exactly"))
}

/// Hand-derived pairing data (ξ², ξ·K, b₂, σ) for each family.
fn oracle_invariants(family: &SweepFamily, class: &[i64]) -> (i128, i128, i128, i128) {
    match *family {
        SweepFamily::Plane { .. } => {
            let m = class[0] as i128;
            (m * m, -3 * m, 1, 1)
        }
        SweepFamily::Quadric { a, b } => {
            let (a, b) = (a as i128, b as i128);
            (2 * a * b, -2 * a - 2 * b, 2, 0)
        }
        SweepFamily::Hirzebruch { e, a, b } => {
            let (e, a, b) = (e as i128, a as i128, b as i128);
            (a * a * e + 2 * a * b, -e * a - 2 * a - 2 * b, 2, 0)
        }
        SweepFamily::DelPezzo { d, n } => {
            let (d, n) = (d as i128, n as i128);
            (n * n * d, -n * d, 10 - d, d - 8)
        }
    }
}

fn assembled(family: &SweepFamily, class: &[i64], q: u64) -> Rational {
    let (xi2, xik, b2, sigma) = oracle_invariants(family, class);
    let g = (xi2 + xik) / 2 + 1;
    let q = q as i128;
    let dim_m = int(b2 + 2 * g);
    let sign_q = int(sigma) - Rational::new(xi2 * (q * q - 1), 2 * q * q);
    (dim_m + sign_q) / int(2)
}

fn criterion_2(sweeps: &[Sweep]) -> Outcome {
    let mut count = 0;
    for s in sweeps {
        for r in &s.rows {
            let i1 = assembled(&s.family, &r.class, r.m);
            let i2 = assembled(&s.family, &r.class, r.h) + int(r.rho) + int(r.delta);
            ensure(r.general_i1 == i1 && r.general_i2 == i2, || {
                format!("{:?} m={} h={}: ({}, {}) vs assembled ({i1}, {i2})", s.family, r.m, r.h, r.general_i1, r.general_i2)
            })?;
            count += 1;
        }
    }
    let surface = SurfaceModel::plane();
    let xi = CurveClass::new(vec![5]).unwrap();
    let inv = covering_invariants(&surface, &xi, 5).map_err(|e| e.to_string())?;
    ensure(inv.dim_m == 13 && inv.sign_q == int(-11), || "plane m=5 invariants".into())?;
    ensure(rhs_hyperbolic(&surface, &xi, 5).unwrap() == int(1), || "plane m=5 rhs".into())?;
    Ok(format!("{count} rows match (dim M + sign Q)/2"))
}

fn criterion_3() -> Outcome {
    let expected = [
        "cubic_one_oval",
        "quintic_nest_of_two",
        "hyperboloid_essential_and_1_ovals",
        "hyperboloid_essential_and_2_ovals",
        "hyperboloid_essential_and_3_ovals",
        "hyperboloid_essential_and_4_ovals",
        "hyperboloid_three_planes",
        "del_pezzo_nest_of_four",
        "del_pezzo_torus_bound",
    ];
    let mut n = 0;
    for name in expected {
        let entry = corpus::find(name).ok_or_else(|| format!("missing corpus entry {name}"))?;
        let out = entry.run().map_err(|e| format!("{name}: {e}"))?;
        for a in &out.assertions {
            ensure(a.passed, || format!("{name}: {}", a.label))?;
            n += 1;
        }
    }
    // spot checks straight from the reports
    let r = corpus::find("quintic_nest_of_two").unwrap().report().unwrap();
    let row = &r.verdict.as_ref().unwrap().i2_per_h[0];
    ensure(row.delta == 0 && row.lhs == 1 && row.rhs == int(1), || "quintic nest of two".into())?;
    let r = corpus::find("del_pezzo_torus_bound").unwrap().report().unwrap();
    ensure(
        r.bounds.per_h.iter().any(|x| x.delta == 1 && x.rhs_i2 == int(6) && x.floor_i2 == 6),
        || "del Pezzo bound 6".into(),
    )?;
    Ok(format!("{n} corpus assertions hold"))
}

/// Tries every sign vector and every x ∈ Z_p^k over the parabolic columns.
fn brute_force_type_i(scheme: &RealScheme, p: u64) -> bool {
    let bm = boundary_matrix(scheme, p).unwrap();
    let cols = bm.parabolic_columns();
    let n = bm.rows.len();
    let k = cols.len();
    let total = (p as usize).pow(k as u32);
    for signs in 0..(1usize << n) {
        let target: Vec<u64> = (0..n)
            .map(|i| if signs >> i & 1 == 1 { p - 1 } else { 1 })
            .collect();
        for code in 0..total {
            let mut c = code;
            let x: Vec<u64> = (0..k)
                .map(|_| {
                    let v = (c % p as usize) as u64;
                    c /= p as usize;
                    v
                })
                .collect();
            let ok = (0..n).all(|r| {
                let s = cols
                    .iter()
                    .zip(&x)
                    .fold(0, |acc, (&col, &v)| zp::add(acc, zp::mul(bm.rows[r][col], v, p), p));
                s == target[r]
            });
            if ok {
                return true;
            }
        }
    }
    false
}

fn criterion_4() -> Outcome {
    let scheme = RealScheme::new(
        vec![SchemeComponent::ProjectivePlane {
            odd_branch: true,
            ovals: OvalForest::nest(3, OvalForest::empty()),
        }],
        CurveType::Unknown,
    )
    .unwrap();
    let xi = CurveClass::new(vec![5]).unwrap();
    let v = check(&SurfaceModel::plane(), &xi, &scheme, &Overrides::default()).map_err(|e| e.to_string())?;
    ensure(v.final_status == FinalStatus::Prohibited, || format!("final = {:?}", v.final_status))?;
    let d0 = v.i2_per_h.iter().find(|r| r.delta == 0).ok_or("no δ=0 row")?;
    ensure(d0.lhs == 2 && d0.rhs == int(1) && !d0.satisfied, || "δ=0 row".into())?;
    let d1 = v.i2_per_h.iter().find(|r| r.delta == 1).ok_or("no δ=1 row")?;
    ensure(d1.equality, || "δ=1 not at equality".into())?;
    let lib = extremality_type_i(&scheme, 5).map_err(|e| e.to_string())?;
    ensure(lib.feasibility == Feasibility::Infeasible, || "library says feasible".into())?;
    ensure(!brute_force_type_i(&scheme, 5), || "brute force found a solution".into())?;
    let bm = boundary_matrix(&scheme, 5).unwrap();
    let cols = bm.parabolic_columns();
    ensure(cols.iter().all(|&c| bm.rows[0][c] == 0), || "odd-branch row not zero".into())?;

    // the oracle agrees with the engine on both outcomes
    let torus = RealScheme::new(
        vec![SchemeComponent::torus(3, vec![OvalForest::empty(); 3]).unwrap()],
        CurveType::I,
    )
    .unwrap();
    ensure(brute_force_type_i(&torus, 3), || "oracle: three planes infeasible".into())?;
    ensure(
        extremality_type_i(&torus, 3).unwrap().feasibility == Feasibility::Feasible,
        || "engine: three planes infeasible".into(),
    )?;
    Ok("prohibited; δ=0: 2 > 1; δ=1: equality, type I infeasible (engine and brute force)".into())
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let id = |n: usize| -> Vec<Vec<i64>> { (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect() };
    let (mut u, mut inv) = (id(n), id(n));
    if n == 1 {
        if rng.gen_bool(0.5) {
            u[0][0] = -1;
            inv[0][0] = -1;
        }
        return (u, inv);
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = [-2, -1, 1, 2][rng.gen_range(0..4)];
        // u ← u·E with E = I + c·e_{ij}: column j += c·column i
        for row in u.iter_mut() {
            row[j] += c * row[i];
        }
        // inv ← E⁻¹·inv: row i −= c·row j
        let rj = inv[j].clone();
        for (k, v) in inv[i].iter_mut().enumerate() {
            *v -= c * rj[k];
        }
    }
    (u, inv)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

fn custom_surface(gram: Vec<Vec<i64>>, canonical: Vec<i64>, b2: u32, sigma: i64) -> SurfaceModel {
    let labels = (0..gram.len()).map(|i| format!("e{i}")).collect();
    SurfaceModel::custom(IntersectionLattice::new(gram, labels).unwrap(), canonical, b2, sigma).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    // Euler conservation and two-sided incidence
    let schemes = 10_000;
    for _ in 0..schemes {
        let s = common::random_scheme(&mut rng, 8);
        let exp = expand_scheme(&s).map_err(|e| e.to_string())?;
        for (i, c) in s.components().iter().enumerate() {
            let sum: i64 = exp.regions.iter().filter(|r| r.component == i).map(|r| r.chi).sum();
            ensure(sum == c.euler_characteristic(), || format!("Euler sum {sum} on {}", s.encoding()))?;
        }
        let mut sides = vec![0usize; exp.circles.len()];
        for r in &exp.regions {
            for inc in &r.incidences {
                sides[inc.circle] += 1;
            }
        }
        ensure(sides.iter().all(|&k| k == 2), || format!("incidence counts {sides:?} on {}", s.encoding()))?;
    }

    // forest counts against the parenthesis-string oracle
    let enumerated: Vec<OvalForest> = enumerate_forests(6).map_err(|e| e.to_string())?.collect();
    for n in 0..=6 {
        let oracle: BTreeSet<String> = common::balanced(n).iter().map(|s| common::oracle_canonical(s)).collect();
        let ours: Vec<String> = enumerated.iter().filter(|f| f.size() == n).map(|f| f.encoding()).collect();
        let ours_set: BTreeSet<String> = ours.iter().map(|s| common::oracle_canonical(s)).collect();
        ensure(ours.len() == oracle.len() && ours_set == oracle, || {
            format!("n={n}: enumerated {} vs oracle {}", ours.len(), oracle.len())
        })?;
    }

    // verdict invariance under relabelling
    let cases: Vec<(SurfaceModel, CurveClass)> = vec![
        (SurfaceModel::plane(), CurveClass::new(vec![5]).unwrap()),
        (SurfaceModel::plane(), CurveClass::new(vec![7]).unwrap()),
        (SurfaceModel::plane(), CurveClass::new(vec![9]).unwrap()),
    ];
    let mut checked = 0;
    for _ in 0..300 {
        let (surface, xi) = &cases[rng.gen_range(0..cases.len())];
        let odd = xi.coords()[0] % 2 == 1;
        let n = rng.gen_range(0..=8);
        let t = [CurveType::I, CurveType::II, CurveType::Unknown][rng.gen_range(0..3)];
        let s = RealScheme::new(
            vec![SchemeComponent::ProjectivePlane {
                odd_branch: odd,
                ovals: common::random_forest(&mut rng, n),
            }],
            t,
        )
        .unwrap();
        let base = check(surface, xi, &s, &Overrides::default()).map_err(|e| e.to_string())?;
        let again = check(surface, xi, &common::relabel(&mut rng, &s), &Overrides::default()).unwrap();
        ensure(base == again, || format!("verdict changed under relabelling of {}", s.encoding()))?;
        checked += 1;
    }
    let torus_surface = SurfaceModel::quadric().with_real_part(vec![flexbound::surface::RealTopology::Torus; 2]);
    let xi = CurveClass::new(vec![3, 3]).unwrap();
    for _ in 0..300 {
        let comps = (0..rng.gen_range(1..=2))
            .map(|_| {
                let l = rng.gen_range(0..=3u32);
                let annuli = (0..l.max(1)).map(|_| { let k = rng.gen_range(0..=2); common::random_forest(&mut rng, k) }).collect();
                SchemeComponent::torus(l, annuli).unwrap()
            })
            .collect();
        let Ok(s) = RealScheme::new(comps, CurveType::Unknown) else { continue };
        let base = check(&torus_surface, &xi, &s, &Overrides::default()).map_err(|e| e.to_string())?;
        let again = check(&torus_surface, &xi, &common::relabel(&mut rng, &s), &Overrides::default()).unwrap();
        ensure(base == again, || format!("verdict changed under relabelling of {}", s.encoding()))?;
        checked += 1;
    }

    // divisibility under unimodular basis changes
    let lattices: Vec<(Vec<Vec<i64>>, Vec<i64>, u32, i64)> = vec![
        (vec![vec![1]], vec![-3], 1, 1),
        (vec![vec![0, 1], vec![1, 0]], vec![-2, -2], 2, 0),
        (vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]], vec![-3, 1, 1], 3, -1),
        (
            vec![vec![1, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]],
            vec![-3, 1, 1, 1],
            4,
            -2,
        ),
    ];
    let mut trial = 0;
    while trial < 100 {
        let (gram, k, b2, sigma) = lattices[trial % lattices.len()].clone();
        let n = gram.len();
        let xi: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4) * [1, 3, 5, 15][rng.gen_range(0..4)]).collect();
        if xi.iter().all(|&v| v == 0) {
            continue;
        }
        let (u, inv) = random_unimodular(&mut rng, n);
        let identity: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        ensure(mat_mul(&u, &inv) == identity, || "bad inverse".into())?;
        let gram2 = mat_mul(&mat_mul(&transpose(&u), &gram), &u);
        let xi2 = apply(&inv, &xi);
        let k2 = apply(&inv, &k);
        let s1 = custom_surface(gram, k, b2, sigma);
        let s2 = custom_surface(gram2, k2, b2, sigma);
        let c1 = CurveClass::new(xi).unwrap();
        let c2 = CurveClass::new(xi2).unwrap();
        ensure(s1.divisibility(&c1).unwrap() == s2.divisibility(&c2).unwrap(), || "divisibility changed".into())?;
        ensure(s1.self_intersection(&c1).unwrap() == s2.self_intersection(&c2).unwrap(), || "ξ² changed".into())?;
        ensure(s1.canonical_pairing(&c1).unwrap() == s2.canonical_pairing(&c2).unwrap(), || "ξ·K changed".into())?;
        trial += 1;
    }
    Ok(format!(
        "{schemes} random schemes conserve χ with two-sided circles; forest counts n ≤ 6 match; {checked} relabellings stable; 100 basis changes"
    ))
}

fn criterion_6() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_flexbound");
    let corpus_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let out = Command::new(bin).args(["examples", "--run"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("examples --run exited {:?}", out.status.code()))?;

    let nest3 = format!("{corpus_dir}/quintic_nest_of_three.json");
    let out = Command::new(bin).args(["check", &nest3]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(1), || format!("nest of three exited {:?}", out.status.code()))?;

    let dir = std::env::temp_dir().join(format!("flexbound-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let bad = dir.join("malformed.json");
    std::fs::write(
        &bad,
        r#"{"surface":{"family":"plane"},"curve_class":{"coords":[5]},"scheme":{"type":"unknown","components":[{"topology":"projective_plane","odd_branch":"yes"}]}}"#,
    )
    .map_err(|e| e.to_string())?;
    let out = Command::new(bin).args(["check", bad.to_str().unwrap()]).output().map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(2), || format!("malformed exited {:?}", out.status.code()))?;
    ensure(stderr.contains("at scheme.components[0].odd_branch"), || format!("no field path in {stderr:?}"))?;
    let _ = std::fs::remove_dir_all(&dir);

    let mut n = 0;
    for entry in corpus::ENTRIES {
        let path = format!("{corpus_dir}/{}.json", entry.name);
        let out = Command::new(bin).args(["check", &path, "--json"]).output().map_err(|e| e.to_string())?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let text = text.trim_end_matches('\n');
        let report = Report::from_json(text).map_err(|e| format!("{}: {e}", entry.name))?;
        ensure(report.to_json() == text, || format!("{}: JSON not byte-stable", entry.name))?;
        n += 1;
    }
    Ok(format!("exit codes 0/1/2 as specified; {n} reports round-trip byte-stably"))
}

fn main() -> ExitCode {
    let sweeps = all_sweeps();
    let results: Vec<(&str, Outcome)> = vec![
        ("closed-form equivalence", sweeps.as_ref().map_err(Clone::clone).and_then(|s| criterion_1(s))),
        ("assembly identity", sweeps.as_ref().map_err(Clone::clone).and_then(|s| criterion_2(s))),
        ("corpus verdicts", criterion_3()),
        ("refutation power", criterion_4()),
        ("property suites", criterion_5()),
        ("CLI contract", criterion_6()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
