//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use plspan::bounds::{crossing_lower_bound, family_bounds, genus_lower_bound, torus_genus, writhe_lower_bound};
use plspan::diagram::{diagram_for, random_diagram};
use plspan::exact::{int, rat, unit_circle_point, Point, Rational};
use plspan::mesh::{check_embedded, orientation_propagate, validate_manifold, EmbedMode, TriMesh};
use plspan::otherdims::{cone_highdim, cone_with_apex, earclip_2d, embedded_4d, immersed_disk_4d};
use plspan::polygon::{
    gen_planar_ngon, gen_random, gen_torus_stick, gen_twist_writhe, lift_generic, validate_embedded, ClosedPolygon,
};
use plspan::report::{run_span, RunReport, SpanOptions};
use plspan::seifert::{spanning_surface_r3, SmoothingRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

/// per-polygon wall clock allowed for a span including verification
const SPAN_TIME_LIMIT: Duration = Duration::from_secs(10);
const PROJECTIONS: u64 = 8;
const RANDOM_R3: u64 = 50;
const RANDOM_HIGH: u64 = 20;
const CONE_RESAMPLES: usize = 100;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Run {
    label: String,
    poly: ClosedPolygon,
    report: RunReport,
    elapsed: Duration,
}

fn r3_corpus() -> Vec<(String, ClosedPolygon)> {
    let mut out = Vec::new();
    for m in 3..=8 {
        out.push((format!("torus m={m}"), gen_torus_stick(m).unwrap()));
    }
    for m in 1..=5 {
        out.push((format!("twist m={m}"), gen_twist_writhe(m).unwrap()));
    }
    for seed in 0..RANDOM_R3 {
        let n = 6 + (seed % 11) as usize;
        out.push((format!("random n={n} seed={seed}"), gen_random(n, 3, seed).unwrap()));
    }
    out
}

fn span_all(corpus: &[(String, ClosedPolygon)]) -> Vec<Run> {
    corpus
        .iter()
        .map(|(label, p)| {
            let start = Instant::now();
            let report = run_span(p, label, &SpanOptions::default())
                .unwrap_or_else(|e| panic!("{label}: {e}"))
                .report;
            Run {
                label: label.clone(),
                poly: p.clone(),
                report,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn budget(runs: &[Run]) -> Outcome {
    let mut worst = Duration::ZERO;
    let mut most = 0;
    for r in runs
        .iter()
        .filter(|r| r.label.starts_with("torus") || r.label.starts_with("random"))
    {
        let rep = &r.report;
        let n = rep.n;
        let c = rep.c.unwrap();
        ensure(rep.t <= 3 * n + 14 * c && 3 * n + 14 * c <= 7 * n * n, || {
            format!("{}: t={} n={n} c={c}", r.label, rep.t)
        })?;
        ensure(
            rep.manifold && rep.orientable && rep.embedded && rep.boundary_match && rep.chi_consistent,
            || format!("{}: certificate failed: {:?}", r.label, rep.witness),
        )?;
        ensure(r.elapsed < SPAN_TIME_LIMIT, || {
            format!("{}: took {:?}", r.label, r.elapsed)
        })?;
        worst = worst.max(r.elapsed);
        most = most.max(c);
    }
    Ok(format!(
        "torus m=3..8 and {RANDOM_R3} random, up to {most} crossings, slowest {worst:.2?}"
    ))
}

fn count_identity(runs: &[Run]) -> Outcome {
    for r in runs {
        let s = spanning_surface_r3(&r.poly, 0, SmoothingRule::Orientation).map_err(|e| e.to_string())?;
        let tr = &s.trace;
        let bowls = tr.circuit_edges - 2 * tr.s;
        ensure(tr.t == bowls + 2 * tr.circuit_edges + 2 * tr.c, || {
            format!("{}: {tr:?}", r.label)
        })?;
        let chi = validate_manifold(&s.mesh).map_err(|e| e.to_string())?.chi;
        ensure(chi == tr.s as i64 - tr.c as i64, || format!("{}: chi {chi}", r.label))?;
    }
    Ok(format!("{} builds", runs.len()))
}

fn trefoil() -> Outcome {
    let p = gen_torus_stick(3).unwrap();
    let s = spanning_surface_r3(&p, 0, SmoothingRule::Orientation).map_err(|e| e.to_string())?;
    let summary = validate_manifold(&s.mesh).map_err(|e| e.to_string())?;
    let genus = Rational::from(2 - summary.chi - summary.boundary_components as i64) / int(2);
    let got = (s.trace.c, s.trace.s, s.trace.t, summary.chi);
    ensure(got == (3, 2, 56, -1), || format!("(c, s, t, chi) = {got:?}"))?;
    let g = torus_genus(3, 2).unwrap();
    ensure(genus == int(g as i64) && g == 1, || format!("genus {genus}"))?;
    let gl = genus_lower_bound(1).unwrap();
    let wl = writhe_lower_bound(s.writhe);
    ensure(
        s.writhe.abs() == 3 && gl == 5 && wl == 4 && gl <= 56 && wl <= 56,
        || format!("writhe {} bounds {gl} {wl}", s.writhe),
    )?;
    Ok("c=3 s=2 t=56 chi=-1 genus=1".into())
}

fn star(n: usize) -> ClosedPolygon {
    // alternating radii make every other vertex reflex
    let verts = (0..n)
        .map(|k| {
            let (x, y) = unit_circle_point(std::f64::consts::TAU * k as f64 / n as f64, 12);
            let r = if k % 2 == 0 { int(10) } else { int(4) };
            Point::new(vec![x * &r, y * r])
        })
        .collect();
    ClosedPolygon::embedded(verts).unwrap()
}

fn planar() -> Outcome {
    let mut count = 0;
    for n in 3..=20 {
        let mut polys = vec![gen_planar_ngon(n, 2).unwrap(), gen_random(n, 2, n as u64).unwrap()];
        if n >= 4 {
            polys.push(star(n));
        }
        for p in polys {
            let m = earclip_2d(&p).map_err(|e| e.to_string())?;
            ensure(m.t() == n - 2, || format!("n={n}: t={}", m.t()))?;
            check_embedded(&m, Some(&p), EmbedMode::Embedded).map_err(|v| format!("n={n}: {v}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} polygons, convex and reflex"))
}

fn cones() -> Outcome {
    let mut most = 0;
    for dim in [5, 6] {
        for seed in 0..RANDOM_HIGH {
            let n = 3 + (seed % 10) as usize;
            let p = gen_random(n, dim, seed).unwrap();
            let k = cone_highdim(&p, seed).map_err(|e| e.to_string())?;
            ensure(k.mesh.t() == n, || format!("R^{dim} seed {seed}: t={}", k.mesh.t()))?;
            ensure(k.attempts <= CONE_RESAMPLES, || format!("{} resamples", k.attempts))?;
            check_embedded(&k.mesh, Some(&p), EmbedMode::Embedded).map_err(|v| v.to_string())?;
            most = most.max(k.attempts);
        }
    }
    Ok(format!("{} cones, at most {most} apex samples", 2 * RANDOM_HIGH))
}

fn immersed() -> Outcome {
    for seed in 0..RANDOM_HIGH {
        let n = 3 + (seed % 10) as usize;
        let p = gen_random(n, 4, seed).unwrap();
        let d = immersed_disk_4d(&p, seed).map_err(|e| e.to_string())?;
        ensure(d.mesh.t() == 3 * n, || format!("seed {seed}: t={}", d.mesh.t()))?;
        check_embedded(&d.mesh, Some(&p), EmbedMode::ComplementaryImmersed).map_err(|v| v.to_string())?;
        let s = validate_manifold(&d.mesh).map_err(|e| e.to_string())?;
        ensure(s.chi == 1 && s.boundary_components == 1, || {
            format!("seed {seed}: {s:?}")
        })?;
    }
    Ok(format!("{RANDOM_HIGH} disks, t=3n, chi=1"))
}

fn embedded4() -> Outcome {
    let mut ts = Vec::new();
    for m in [3, 4] {
        let p = lift_generic(&gen_torus_stick(m).unwrap(), 4, m as u64).unwrap();
        let n = p.n();
        let e = embedded_4d(&p, 0, SmoothingRule::Orientation).map_err(|e| e.to_string())?;
        ensure(e.mesh.t() <= 21 * n * n, || format!("m={m}: t={}", e.mesh.t()))?;
        check_embedded(&e.mesh, Some(&p), EmbedMode::Embedded).map_err(|v| v.to_string())?;
        ts.push(format!("n={n} t={}", e.mesh.t()));
    }
    Ok(ts.join(", "))
}

fn twist_family() -> Outcome {
    for m in 1..=5usize {
        let p = gen_twist_writhe(m).unwrap();
        let (_, d) = diagram_for(&p, 0).map_err(|e| e.to_string())?;
        let w = (m * (m + 1)) as i64;
        ensure(d.writhe() == w, || format!("m={m}: writhe {}", d.writhe()))?;
        let n = p.n();
        let twist_bound = family_bounds(n).unwrap().1;
        ensure(writhe_lower_bound(w) >= twist_bound, || format!("m={m}: n={n}"))?;
    }
    Ok("writhe m(m+1) for m=1..5".into())
}

fn projections(p: &ClosedPolygon) -> Vec<(usize, i64)> {
    (0..PROJECTIONS)
        .map(|seed| {
            let d = random_diagram(p, seed).unwrap();
            (d.crossing_count(), d.writhe())
        })
        .collect()
}

fn writhe_universal(runs: &[Run]) -> Outcome {
    let mut worst = Rational::from(0u32);
    for r in runs {
        let w = projections(&r.poly).iter().map(|x| x.1.abs()).max().unwrap();
        ensure(r.report.t as i64 > w, || {
            format!("{}: t={} |w|={w}", r.label, r.report.t)
        })?;
        worst = worst.max(Rational::from(w + 1) / Rational::from(r.report.t as u64));
    }
    Ok(format!(
        "{} polygons x {PROJECTIONS} projections, max (|w|+1)/t = {worst}",
        runs.len()
    ))
}

fn crossing_consistency() -> Outcome {
    for m in 2..=5usize {
        let p = gen_twist_writhe(m).unwrap();
        let need = crossing_lower_bound((m * (m + 1)) as i64, 6 * m + 3);
        for (seed, (c, _)) in projections(&p).into_iter().enumerate() {
            ensure(c as i64 >= need, || format!("m={m} seed {seed}: c={c} < {need}"))?;
        }
    }
    Ok(format!("m=2..5 x {PROJECTIONS} projections"))
}

fn family_identity() -> Outcome {
    for m in 3..=50u64 {
        let lhs = family_bounds(2 * m as usize).unwrap().0;
        let rhs = genus_lower_bound(torus_genus(m, m - 1).unwrap() as i64).unwrap();
        ensure(lhs == int(rhs), || format!("m={m}: {lhs} != {rhs}"))?;
    }
    Ok("m=3..50 exact".into())
}

fn moebius() -> TriMesh {
    let p = |c: [i64; 3]| Point::from_ints(&c);
    TriMesh::new(
        3,
        vec![
            p([0, 0, 0]),
            p([10, 0, 0]),
            p([10, 10, 1]),
            p([0, 10, 2]),
            p([-3, 5, 7]),
        ],
        vec![[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]],
    )
}

fn negative_controls() -> Outcome {
    let e = orientation_propagate(&moebius()).err().ok_or("Moebius band oriented")?;
    ensure(!e.cycle.is_empty(), || "empty cycle".into())?;

    let bowtie = ClosedPolygon::new(
        [[0, 0, 0], [2, 2, 0], [2, 0, 0], [0, 2, 0]]
            .iter()
            .map(|c| Point::from_ints(c))
            .collect(),
    )
    .unwrap();
    let v = validate_embedded(&bowtie).err().ok_or("bowtie accepted")?;
    ensure(v.witness == Point::from_ints(&[1, 1, 0]), || {
        format!("witness {}", v.witness)
    })?;

    let trefoil = gen_torus_stick(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for k in 0..10 {
        let apex = Point::new((0..3).map(|_| rat(rng.gen_range(-64..=64), 16)).collect());
        let cone = cone_with_apex(&trefoil, &apex);
        ensure(check_embedded(&cone, None, EmbedMode::Embedded).is_err(), || {
            format!("cone {k} at {apex} is embedded")
        })?;
    }
    Ok(format!(
        "moebius cycle of {}, bowtie edges {:?} at (1,1,0), 10 cones",
        e.cycle.len(),
        v.edges
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_plspan");
    let poly = dir.path().join("t.poly");
    let ok = Command::new(bin)
        .args(["generate", "--family", "twist", "--m", "2", "--out"])
        .arg(&poly)
        .output()
        .map_err(|e| e.to_string())?
        .status
        .success();
    ensure(ok, || "generate failed".into())?;
    let run = |tag: &str| -> Result<(Vec<u8>, serde_json::Value), String> {
        let mesh = dir.path().join(format!("{tag}.off"));
        let report = dir.path().join(format!("{tag}.json"));
        let st = Command::new(bin)
            .current_dir(dir.path())
            .args(["span", "--input", "t.poly", "--seed", "3", "--out"])
            .arg(&mesh)
            .arg("--report")
            .arg(&report)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(st.success(), || format!("span exit {st}"))?;
        let mut json: serde_json::Value = serde_json::from_slice(&read(&report)?).map_err(|e| e.to_string())?;
        json.as_object_mut().unwrap().remove("timings");
        Ok((read(&mesh)?, json))
    };
    let a = run("a")?;
    let b = run("b")?;
    ensure(a.0 == b.0, || "mesh files differ".into())?;
    ensure(a.1 == b.1, || "reports differ".into())?;
    Ok(format!("{} byte mesh, reports equal", a.0.len()))
}

fn read(p: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let corpus = r3_corpus();
    let runs = span_all(&corpus);
    let criteria: Vec<(&str, Check)> = vec![
        ("triangle budget in R^3", Box::new(|| budget(&runs))),
        ("count identity and chi = s - c", Box::new(|| count_identity(&runs))),
        ("trefoil end to end", Box::new(trefoil)),
        ("ear clipping in the plane", Box::new(planar)),
        ("cones in R^5 and R^6", Box::new(cones)),
        ("complementary immersed disks in R^4", Box::new(immersed)),
        ("embedded surfaces in R^4", Box::new(embedded4)),
        ("twist family writhe", Box::new(twist_family)),
        (
            "writhe lower bound over projections",
            Box::new(|| writhe_universal(&runs)),
        ),
        ("crossing bound over projections", Box::new(crossing_consistency)),
        ("torus family identity", Box::new(family_identity)),
        ("negative controls", Box::new(negative_controls)),
        ("deterministic output", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }

    // informational: the other smoothing rule need not give orientable surfaces
    let non_orientable = corpus
        .iter()
        .filter(|(_, p)| !spanning_surface_r3(p, 0, SmoothingRule::WhiteEdge).is_ok_and(|s| s.orientable))
        .count();
    println!(
        "note: white-edge smoothing orientable on {}/{} corpus polygons",
        corpus.len() - non_orientable,
        corpus.len()
    );

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
