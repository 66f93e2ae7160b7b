//! Exit criteria. Each criterion prints one PASS/FAIL line with its wall
//! time against a fixed budget; the test fails if any criterion fails.

use geomgraph::art_gallery::{fisk_guards, orthogonal_guards, verify_guard_certificate, Quadrilateralization};
use geomgraph::bend_min::{benelux_map, build_flow_network, min_bend_assignment, single_region_map, PlaneMap};
use geomgraph::clustering::{candidate_diameters, lune_conflicts, max_cluster_given_d2};
use geomgraph::gen::{
    brick_map, comb, l_shape, orthogonal_comb, plus_polygon, random_orthogonal_polygon, random_points, square_annulus,
};
use geomgraph::graph::{
    has_augmenting_path, konig_independent_set, max_bipartite_matching, min_cost_circulation, perfect_matching_general,
    residual_has_negative_cycle, verify_circulation, BipartiteGraph, FlowNetwork,
};
use geomgraph::io::parse_tiling;
use geomgraph::oracle::{
    cycle_interval, has_perfect_matching_bf, max_cluster_bf, max_disjoint_diagonals_bf, max_independent_set_bf,
    star_bisection, CycleInterval,
};
use geomgraph::rational::{int, ratio, to_f64, Rational};
use geomgraph::rect_partition::{good_diagonals, min_rectangle_partition, predicted_count};
use geomgraph::star::{
    build_parametric_graph, dilation, four_cycle_metric, optimal_star_embedding, random_metric, DistanceMatrix,
};
use geomgraph::strip::{icosahedron, octahedron, single_strip, sphere_like, tetrahedron, verify_strip, TriMesh};
use geomgraph::tiling::{
    angle_graph, negative_cycle_at, optimize_angles, random_tiling, single_hexagon, single_rhombus, three_rhombi,
    Tiling,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

const BUDGET_GALLERY: Duration = Duration::from_secs(1);
const BUDGET_RECT: Duration = Duration::from_secs(30);
const BUDGET_CLUSTER: Duration = Duration::from_secs(60);
const BUDGET_BENDS: Duration = Duration::from_secs(5);
const BUDGET_STRIP: Duration = Duration::from_secs(30);
const BUDGET_TILING: Duration = Duration::from_secs(10);
const BUDGET_STAR: Duration = Duration::from_secs(60);
const BUDGET_GRAPH: Duration = Duration::from_secs(60);

const RECT_INSTANCES: u64 = 200;
const RECT_MAX_CONCAVE: usize = 14;
const CLUSTER_INSTANCES: u64 = 300;
const CLUSTER_MAX_POINTS: usize = 12;
const CLUSTER_THRESHOLDS: usize = 5;
const STRIP_MAX_TRIANGLES: usize = 500;
const STRIP_MAX_GROWTH: (i64, i64) = (3, 2);
const TILING_MAX_ZONES: usize = 6;
const STAR_INSTANCES: u64 = 100;
const STAR_MAX_POINTS: usize = 7;
const STAR_EXACT_MAX_POINTS: usize = 5;
const STAR_TOLERANCE: f64 = 1e-9;
const GRAPH_INSTANCES: u64 = 1000;
const GRAPH_MAX_VERTICES: usize = 12;
const MATCHING_MAX_VERTICES: usize = 10;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = result.and_then(|detail| {
        if elapsed <= budget {
            Ok(detail)
        } else {
            Err(format!("{detail}; over budget"))
        }
    });
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!(
        "criterion {id} {tag} [{:.2}s / {}s] {name}: {detail}",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    result.is_ok()
}

fn gallery() -> Check {
    for k in 2..=10 {
        let c = comb(k);
        let n = c.vertex_count();
        let cert = fisk_guards(&c).map_err(|e| e.to_string())?;
        ensure(verify_guard_certificate(&cert), || {
            format!("comb k={k}: certificate rejected")
        })?;
        ensure(cert.guards.len() == n / 3, || {
            format!("comb n={n}: {} guards", cert.guards.len())
        })?;
        let (o, quads) = orthogonal_comb(k);
        let n = o.vertex_count();
        let q = Quadrilateralization::new(&o, quads).map_err(|e| e.to_string())?;
        let cert = orthogonal_guards(&o, &q).map_err(|e| e.to_string())?;
        ensure(verify_guard_certificate(&cert), || {
            format!("orthogonal comb k={k}: certificate rejected")
        })?;
        ensure(cert.guards.len() == n / 4, || {
            format!("orthogonal comb n={n}: {} guards", cert.guards.len())
        })?;
    }
    Ok("combs k=2..10 need exactly n/3 and n/4 guards".into())
}

fn rectangles() -> Check {
    for (name, poly, want) in [
        ("plus", plus_polygon(), 3),
        ("annulus", square_annulus(), 4),
        ("L", l_shape(), 2),
    ] {
        let got = min_rectangle_partition(&poly)
            .map_err(|e| e.to_string())?
            .rectangles
            .len();
        ensure(got == want, || format!("{name}: {got} rectangles, expected {want}"))?;
    }
    let mut holes = 0;
    for seed in 0..RECT_INSTANCES {
        let poly = random_orthogonal_polygon(seed, 2 + (seed as i64 % 5), RECT_MAX_CONCAVE);
        holes += poly.holes().len();
        let g = max_disjoint_diagonals_bf(&good_diagonals(&poly).map_err(|e| e.to_string())?);
        let got = min_rectangle_partition(&poly)
            .map_err(|e| e.to_string())?
            .rectangles
            .len();
        let want = predicted_count(&poly, g);
        ensure(got == want, || {
            format!("seed {seed}: {got} rectangles, formula gives {want}")
        })?;
    }
    Ok(format!(
        "fixed shapes 3/4/2; {RECT_INSTANCES} random polygons ({holes} holes) match n/2+h-g-1"
    ))
}

fn clustering() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1);
    let mut lunes = 0;
    for seed in 0..CLUSTER_INSTANCES {
        let n = rng.gen_range(1..=CLUSTER_MAX_POINTS);
        let pts = random_points(seed, n, rng.gen_range(4..=30));
        let ds = candidate_diameters(&pts);
        for t in 0..CLUSTER_THRESHOLDS {
            let d2: Rational = if ds.is_empty() {
                int(t as i64)
            } else {
                ds[rng.gen_range(0..ds.len())].clone()
            };
            let got = max_cluster_given_d2(&pts, &d2).map_err(|e| e.to_string())?.len();
            let want = max_cluster_bf(&pts, &d2);
            ensure(got == want, || format!("seed {seed}: cluster {got}, exhaustive {want}"))?;
        }
        for p in 0..n {
            for q in p + 1..n {
                if pts[p] != pts[q] {
                    lunes += 1;
                    ensure(lune_conflicts(&pts, p, q).is_bipartite_across_axis(), || {
                        format!("seed {seed}: lune ({p}, {q}) has a same-side conflict")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{CLUSTER_INSTANCES} sets x {CLUSTER_THRESHOLDS} thresholds exact; {lunes} lunes bipartite"
    ))
}

fn check_map(m: &PlaneMap) -> Result<i64, String> {
    let a = min_bend_assignment(m).map_err(|e| e.to_string())?;
    let (net, _) = build_flow_network(m);
    ensure(verify_circulation(&net, &a.flow), || "circulation rejected".into())?;
    ensure(a.angles.iter().all(|u| u.iter().sum::<i64>() == 4), || {
        "junction angles do not sum to 4".into()
    })?;
    for r in 0..m.regions.len() {
        if r != m.exterior && m.junction_count(r) == 3 {
            ensure(a.region_bends(m, r) >= 1, || {
                format!("3-junction region {} has no bend", m.regions[r])
            })?;
        }
    }
    Ok(a.total_bends)
}

fn bends() -> Check {
    let single = check_map(&single_region_map())?;
    ensure(single == 4, || format!("single region: {single} bends"))?;
    for seed in 0..50 {
        check_map(&brick_map(seed, 3 + seed as i64 % 5, 1 + seed as i64 % 4, 12))?;
    }
    let b = benelux_map();
    let total = check_map(&b)?;
    let interior = min_bend_assignment(&b).map_err(|e| e.to_string())?.interior_bends;
    ensure(total == 1, || {
        format!("five-region map: total bends {total}, expected 1 (bends between two countries: {interior})")
    })?;
    Ok("single region 4; 3-junction regions bent; five-region map total 1".into())
}

fn strips() -> Check {
    let mut meshes: Vec<(String, TriMesh)> = vec![
        ("tetrahedron".into(), tetrahedron()),
        ("octahedron".into(), octahedron()),
        ("icosahedron".into(), icosahedron()),
    ];
    for (seed, target) in [(1, 50), (2, 120), (3, 250), (4, 380), (5, STRIP_MAX_TRIANGLES)] {
        meshes.push((format!("sphere {target}"), sphere_like(seed, target)));
    }
    let (mut worst, mut added, mut total) = (0.0f64, 0, 0);
    for (name, m) in &meshes {
        let r = single_strip(m).map_err(|e| format!("{name}: {e}"))?;
        ensure(verify_strip(&r.mesh, &r.strip), || format!("{name}: strip rejected"))?;
        let (num, den) = STRIP_MAX_GROWTH;
        ensure(
            r.stats.final_triangles as i64 * den <= r.stats.initial_triangles as i64 * num,
            || format!("{name}: growth {}", r.stats.growth_ratio),
        )?;
        worst = worst.max(r.stats.growth_ratio);
        added += r.stats.added_triangles;
        total += r.stats.initial_triangles;
    }
    let mean = 100.0 * added as f64 / total as f64;
    let soft = if mean < 10.0 { "under" } else { "NOT under" };
    Ok(format!(
        "{} meshes; worst growth {worst:.4}; {mean:.2}% added overall ({soft} 10%)",
        meshes.len()
    ))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn shipped_tilings() -> Result<Vec<(String, Tiling)>, String> {
    let mut out: Vec<(String, Tiling)> = vec![
        ("rhombus".into(), single_rhombus(int(0), int(30))),
        ("hexagon".into(), single_hexagon([0, 50, 100])),
        ("three rhombi".into(), three_rhombi()),
    ];
    for seed in 0..12u64 {
        let k = 3 + seed as usize % 4;
        out.push((format!("random seed {seed}"), random_tiling(seed, k, k * (k - 1) / 2)));
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".tiling"))
        .collect();
    files.sort();
    for f in files {
        let text = std::fs::read_to_string(&f).map_err(|e| e.to_string())?;
        let t = parse_tiling(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        out.push((f.file_name().unwrap().to_string_lossy().into(), t));
    }
    Ok(out)
}

fn tilings() -> Check {
    let rhombus = optimize_angles(&single_rhombus(int(0), int(30))).map_err(|e| e.to_string())?;
    ensure(rhombus.lambda == int(90), || {
        format!("rhombus: λ* = {}", rhombus.lambda)
    })?;
    let shipped = shipped_tilings()?;
    let mut checked = 0;
    for (name, t) in shipped.iter().filter(|(_, t)| t.zone_count() <= TILING_MAX_ZONES) {
        let s = optimize_angles(t).map_err(|e| format!("{name}: {e}"))?;
        let oracle = match cycle_interval(&angle_graph(t).0) {
            CycleInterval::Interval { upper: Some(u), .. } => u,
            other => return Err(format!("{name}: cycle oracle gives {other:?}")),
        };
        ensure(s.lambda == oracle, || {
            format!("{name}: λ* {} but oracle {oracle}", s.lambda)
        })?;
        ensure(negative_cycle_at(t, &(&s.lambda + ratio(1, 1024))).is_some(), || {
            format!("{name}: no negative cycle above λ*")
        })?;
        checked += 1;
    }
    Ok(format!("rhombus 90; {checked} shipped tilings equal the cycle oracle"))
}

fn stars() -> Check {
    for seed in 0..20 {
        let d = random_metric(seed, 3);
        let s = optimal_star_embedding(&d).map_err(|e| e.to_string())?;
        ensure(s.dilation == int(1), || {
            format!("3-point seed {seed}: δ* = {}", s.dilation)
        })?;
        let half = ratio(1, 2);
        for p in 0..3 {
            let (q, r) = ((p + 1) % 3, (p + 2) % 3);
            let h = (d.get(p, q) + d.get(p, r) - d.get(q, r)) * &half;
            ensure(s.hub[p] == h, || {
                format!("3-point seed {seed}: H[{p}] = {}, closed form {h}", s.hub[p])
            })?;
        }
    }
    let c4 = optimal_star_embedding(&four_cycle_metric()).map_err(|e| e.to_string())?;
    ensure(c4.dilation == int(2), || format!("4-cycle: δ* = {}", c4.dilation))?;
    let tol = ratio(1, 1 << 40);
    let mut exact = 0;
    for seed in 0..STAR_INSTANCES {
        let n = 2 + seed as usize % (STAR_MAX_POINTS - 1);
        let d: DistanceMatrix = random_metric(seed, n);
        let s = optimal_star_embedding(&d).map_err(|e| e.to_string())?;
        ensure(dilation(&d, &s.hub) == Ok(s.dilation.clone()), || {
            format!("seed {seed}: hub misses δ*")
        })?;
        let b = star_bisection(&d, &tol);
        let gap = (to_f64(&b) - to_f64(&s.dilation)).abs();
        ensure(gap <= STAR_TOLERANCE, || {
            format!("seed {seed}: bisection off by {gap:e}")
        })?;
        if n <= STAR_EXACT_MAX_POINTS {
            match cycle_interval(&build_parametric_graph(&d)) {
                CycleInterval::Interval { lower: Some(l), .. } if l == s.dilation => exact += 1,
                other => return Err(format!("seed {seed}: δ* {} but cycle oracle {other:?}", s.dilation)),
            }
        }
    }
    Ok(format!(
        "3-point 1, 4-cycle 2; {STAR_INSTANCES} metrics within {STAR_TOLERANCE:e}; {exact} exact"
    ))
}

fn graph_core() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c);
    for i in 0..GRAPH_INSTANCES {
        let l = rng.gen_range(0..=GRAPH_MAX_VERTICES / 2);
        let r = rng.gen_range(0..=GRAPH_MAX_VERTICES - l);
        let p = rng.gen_range(0.05..0.8);
        let edges = (0..l)
            .flat_map(|a| (0..r).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = BipartiteGraph::new(l, r, edges).map_err(|e| e.to_string())?;
        let m = max_bipartite_matching(&g);
        let set = konig_independent_set(&g, &m).map_err(|e| e.to_string())?;
        ensure(!has_augmenting_path(&g, &m), || {
            format!("graph {i}: augmenting path left")
        })?;
        ensure(set.len() + m.len() == l + r, || {
            format!("graph {i}: |MIS| + |M| != |V|")
        })?;
        let bf = max_independent_set_bf(&g);
        ensure(set.len() == bf, || {
            format!("graph {i}: MIS {} but exhaustive {bf}", set.len())
        })?;
    }
    let mut graphs = 0;
    for n in 0..=MATCHING_MAX_VERTICES {
        for _ in 0..60 {
            let p = rng.gen_range(0.1..0.9);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            ensure(
                perfect_matching_general(n, &edges).is_some() == has_perfect_matching_bf(n, &edges),
                || format!("n={n}: perfect matching disagrees on {edges:?}"),
            )?;
            graphs += 1;
        }
    }
    let mut solved = 0;
    for i in 0..400 {
        let n = rng.gen_range(2..=7);
        let mut net = FlowNetwork::new(n);
        for _ in 0..rng.gen_range(n..=3 * n) {
            let (t, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if t != h {
                let lower = if rng.gen_bool(0.3) { rng.gen_range(0..=2) } else { 0 };
                net.add_arc(t, h, lower, lower + rng.gen_range(0..=4), rng.gen_range(0..=5));
            }
        }
        if let Ok(c) = min_cost_circulation(&net) {
            solved += 1;
            ensure(!residual_has_negative_cycle(&net, &c.flow), || {
                format!("network {i}: not optimal")
            })?;
        }
    }
    Ok(format!(
        "{GRAPH_INSTANCES} König checks; {graphs} matching graphs; {solved} circulations certified"
    ))
}

#[test]
fn acceptance() {
    let results = [
        run(1, "art gallery bounds", BUDGET_GALLERY, gallery),
        run(2, "rectangle partition", BUDGET_RECT, rectangles),
        run(3, "clustering oracle equivalence", BUDGET_CLUSTER, clustering),
        run(4, "bend minimization", BUDGET_BENDS, bends),
        run(5, "stripification", BUDGET_STRIP, strips),
        run(6, "tiling angles", BUDGET_TILING, tilings),
        run(7, "star embedding", BUDGET_STAR, stars),
        run(8, "graph core properties", BUDGET_GRAPH, graph_core),
    ];
    let failed: Vec<usize> = (1..=results.len()).filter(|&i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
