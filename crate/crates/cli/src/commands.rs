use crate::report::{RunReport, Verification};
use anyhow::{bail, Context, Result};
use geomgraph::art_gallery::{
    decomposition_area, fisk_guards, orthogonal_guards, verify_guard_certificate, Quadrilateralization,
};
use geomgraph::bend_min::{build_flow_network, min_bend_assignment};
use geomgraph::clustering::{candidate_diameters, max_cluster_given_d2, min_diameter_k_cluster, squared_diameter};
use geomgraph::graph::verify_circulation;
use geomgraph::io;
use geomgraph::oracle::{
    cycle_interval, max_cluster_bf, max_disjoint_diagonals_bf, min_bends_bf, star_bisection, CycleInterval,
};
use geomgraph::rational::{self, ratio, Rational};
use geomgraph::rect_partition::{concave_vertices, good_diagonals, min_rectangle_partition, predicted_count};
use geomgraph::star::{build_parametric_graph, dilation, optimal_star_embedding};
use geomgraph::strip::{single_strip, verify_strip};
use geomgraph::svg;
use geomgraph::tiling::{negative_cycle_at, optimize_angles, reconstruct};
use serde_json::json;
use std::path::Path;

pub const RECT_ORACLE_MAX_CONCAVE: usize = 14;
pub const CLUSTER_ORACLE_MAX_POINTS: usize = 12;
pub const STAR_ORACLE_MAX_POINTS: usize = 7;
pub const STAR_EXACT_MAX_POINTS: usize = 5;
pub const TILING_ORACLE_MAX_ZONES: usize = 6;
pub const BENDS_ORACLE_MAX_REGIONS: usize = 6;
const STAR_TOLERANCE: f64 = 1e-9;

/// A solved instance: the report and, when asked for, an SVG figure.
pub struct Outcome {
    pub report: RunReport,
    pub svg: Option<String>,
}

pub fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn text(bytes: &[u8], path: &Path) -> Result<String> {
    String::from_utf8(bytes.to_vec()).with_context(|| format!("{} is not UTF-8", path.display()))
}

fn parse<T>(bytes: &[u8], path: &Path, f: impl FnOnce(&str) -> Result<T, io::FormatError>) -> Result<T> {
    f(&text(bytes, path)?).with_context(|| format!("{}", path.display()))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn exact_and_decimal(r: &Rational) -> String {
    let exact = rational::format(r);
    if r.is_integer() {
        exact
    } else {
        format!("{exact} (≈ {:.9})", rational::to_f64(r))
    }
}

pub fn gallery(input: &Path, quads: Option<&Path>, verify: bool, want_svg: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let poly = parse(&bytes, input, io::parse_poly)?;
    let quad_bytes = quads.map(read).transpose()?;
    let cert = match (quads, &quad_bytes) {
        (Some(path), Some(qb)) => {
            let q = parse(qb, path, io::parse_quads)?;
            let q = Quadrilateralization::new(&poly, q).with_context(|| format!("{}", path.display()))?;
            orthogonal_guards(&poly, &q)?
        }
        _ => fisk_guards(&poly)?,
    };
    let n = poly.vertex_count();
    let bound = n / cert.decomposition.face_size();
    let mut inputs: Vec<&[u8]> = vec![&bytes];
    if let Some(qb) = &quad_bytes {
        inputs.push(qb);
    }
    let mut report = RunReport::new(
        "gallery",
        &inputs,
        format!("guards: {}", cert.guards.len()),
        json!({
            "vertices": n,
            "bound": bound,
            "guards": cert.guards,
            "guard_color": cert.guard_color,
            "coloring": cert.coloring,
            "decomposition": cert.decomposition,
        }),
    )
    .line("guard vertices", join(&cert.guards))
    .line("bound", format!("{bound} (n = {n})"))
    .line("faces", cert.decomposition.faces().len().to_string());
    if verify {
        let certified = verify_guard_certificate(&cert);
        let covered = decomposition_area(&poly, &cert) == poly.area();
        report = report.verified(Verification::check(
            certified && covered,
            format!(
                "certificate {}, faces cover the polygon: {covered}",
                if certified { "valid" } else { "invalid" }
            ),
        ));
    }
    let svg = want_svg.then(|| svg::gallery_svg(&poly, &cert));
    Ok(Outcome { report, svg })
}

pub fn rectpart(input: &Path, out: Option<&Path>, verify: bool, want_svg: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let poly = parse(&bytes, input, io::parse_poly)?;
    let part = min_rectangle_partition(&poly)?;
    let concave = concave_vertices(&poly).len();
    let rects = serde_json::to_value(&part.rectangles)?;
    let mut report = RunReport::new(
        "rectpart",
        &[&bytes],
        format!("rectangles: {}", part.rectangles.len()),
        json!({
            "rectangles": rects,
            "diagonals": part.diagonals.iter().map(|d| [d.endpoints.0, d.endpoints.1]).collect::<Vec<_>>(),
            "concave_vertices": concave,
            "holes": poly.holes().len(),
        }),
    )
    .line("disjoint diagonals", part.diagonals.len().to_string())
    .line("concave vertices", concave.to_string())
    .line("holes", poly.holes().len().to_string());
    if verify {
        let v = if concave > RECT_ORACLE_MAX_CONCAVE {
            Verification::skipped(format!("{concave} concave vertices exceeds {RECT_ORACLE_MAX_CONCAVE}"))
        } else {
            let g = max_disjoint_diagonals_bf(&good_diagonals(&poly)?);
            let want = predicted_count(&poly, g);
            let area = part.rectangles.iter().fold(rational::zero(), |a, r| a + r.area()) == poly.area();
            Verification::check(
                want == part.rectangles.len() && area,
                format!("exhaustive diagonals {g} give {want} rectangles; areas sum: {area}"),
            )
        };
        report = report.verified(v);
    }
    if let Some(path) = out {
        let body = serde_json::to_string(&part.rectangles)? + "\n";
        std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let svg = want_svg.then(|| svg::rectangles_svg(&poly, &part));
    Ok(Outcome { report, svg })
}

pub enum ClusterQuery {
    MaxDiameter(Rational),
    Size(usize),
}

pub fn cluster(input: &Path, query: ClusterQuery, verify: bool, want_svg: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let points = parse(&bytes, input, io::parse_pts)?;
    let n = points.len();
    let c = match &query {
        ClusterQuery::MaxDiameter(d2) => max_cluster_given_d2(&points, d2)?,
        ClusterQuery::Size(k) => min_diameter_k_cluster(&points, *k)?,
    };
    let mut report = RunReport::new(
        "cluster",
        &[&bytes],
        format!(
            "members: {}, squared diameter: {}",
            c.len(),
            rational::format(&c.diameter2)
        ),
        serde_json::to_value(&c)?,
    )
    .line("member indices", join(&c.members));
    if let Some((p, q)) = c.pair {
        report = report.line("diameter pair", format!("{p} {q}"));
    }
    if verify {
        let v = if n > CLUSTER_ORACLE_MAX_POINTS {
            Verification::skipped(format!("{n} points exceeds {CLUSTER_ORACLE_MAX_POINTS}"))
        } else {
            let within = squared_diameter(&points, &c.members) <= c.diameter2;
            match &query {
                ClusterQuery::MaxDiameter(d2) => {
                    let bf = max_cluster_bf(&points, d2);
                    Verification::check(
                        bf == c.len() && within && c.diameter2 <= *d2,
                        format!("exhaustive search finds {bf} points"),
                    )
                }
                ClusterQuery::Size(k) => {
                    let smaller = candidate_diameters(&points)
                        .into_iter()
                        .filter(|d| *d < c.diameter2)
                        .last();
                    let tight = smaller.map_or(true, |d| max_cluster_bf(&points, &d) < *k);
                    Verification::check(
                        tight && within && c.len() == *k,
                        format!("no smaller pairwise distance admits {k} points: {tight}"),
                    )
                }
            }
        };
        report = report.verified(v);
    }
    let svg = want_svg.then(|| svg::cluster_svg(&points, &c.members, c.pair));
    Ok(Outcome { report, svg })
}

pub fn bends(input: &Path, verify: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let map = parse(&bytes, input, io::parse_map)?;
    let a = min_bend_assignment(&map)?;
    let mut report = RunReport::new(
        "bends",
        &[&bytes],
        format!("total bends: {}, interior bends: {}", a.total_bends, a.interior_bends),
        serde_json::to_value(&a)?,
    );
    for b in &a.bends {
        report = report.line(
            &format!("{} | {}", b.a, b.b),
            format!(
                "{} ({} convex in {}, {} convex in {})",
                b.total(),
                b.a_to_b,
                b.a,
                b.b_to_a,
                b.b
            ),
        );
    }
    if verify {
        let regions = map.regions.len();
        let (net, _) = build_flow_network(&map);
        let circulation = verify_circulation(&net, &a.flow);
        let v = if regions > BENDS_ORACLE_MAX_REGIONS {
            Verification::skipped(format!("{regions} regions exceeds {BENDS_ORACLE_MAX_REGIONS}"))
        } else {
            match min_bends_bf(&map) {
                Some(bf) => Verification::check(
                    bf == a.total_bends && circulation,
                    format!("exhaustive search finds {bf} bends; circulation valid: {circulation}"),
                ),
                None => Verification::skipped("too many junctions for exhaustive search"),
            }
        };
        report = report.verified(v);
    }
    Ok(Outcome { report, svg: None })
}

pub fn strip(
    input: &Path,
    out: Option<&Path>,
    mesh_out: Option<&Path>,
    verify: bool,
    want_svg: bool,
) -> Result<Outcome> {
    let bytes = read(input)?;
    let mesh = parse(&bytes, input, io::parse_off)?;
    let r = single_strip(&mesh)?;
    let stats = &r.stats;
    let mut report = RunReport::new(
        "strip",
        &[&bytes],
        format!(
            "triangles: {} -> {}, growth: {:.4}",
            stats.initial_triangles, stats.final_triangles, stats.growth_ratio
        ),
        json!({ "stats": stats, "strip": r.strip }),
    )
    .line("initial cycles", stats.initial_cycles.to_string())
    .line("merge moves", stats.merge_moves.to_string())
    .line("bisections", stats.bisections.to_string());
    if verify {
        let ok = verify_strip(&r.mesh, &r.strip);
        let bounded = 2 * stats.final_triangles <= 3 * stats.initial_triangles;
        report = report.verified(Verification::check(
            ok && bounded,
            format!("single cycle through every triangle: {ok}; growth within 3/2: {bounded}"),
        ));
    }
    if let Some(path) = out {
        std::fs::write(path, join(&r.strip) + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(path) = mesh_out {
        std::fs::write(path, io::write_off(&r.mesh)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let svg = want_svg.then(|| svg::strip_svg(&r.mesh, std::slice::from_ref(&r.strip)));
    Ok(Outcome { report, svg })
}

pub fn tiling(input: &Path, verify: bool, want_svg: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let t = parse(&bytes, input, io::parse_tiling)?;
    let s = optimize_angles(&t)?;
    let before = t.min_angle(&t.directions);
    let mut report = RunReport::new(
        "tiling",
        &[&bytes],
        format!("min angle: {}", rational::format(&s.lambda)),
        json!({
            "lambda": rational::to_json(&s.lambda),
            "initial_min_angle": rational::to_json(&before),
            "directions": s.directions.iter().map(rational::to_json).collect::<Vec<_>>(),
            "adjustments": s.adjustments.iter().map(rational::to_json).collect::<Vec<_>>(),
            "witness": s.witness,
        }),
    )
    .line("initial min angle", exact_and_decimal(&before))
    .line("optimal min angle", exact_and_decimal(&s.lambda))
    .line(
        "directions",
        s.directions.iter().map(rational::format).collect::<Vec<_>>().join(" "),
    );
    if verify {
        let zones = t.zone_count();
        let v = if zones > TILING_ORACLE_MAX_ZONES {
            Verification::skipped(format!("{zones} zones exceeds {TILING_ORACLE_MAX_ZONES}"))
        } else {
            let (g, _) = geomgraph::tiling::angle_graph(&t);
            let above = negative_cycle_at(&t, &(&s.lambda + ratio(1, 1024))).is_some();
            match cycle_interval(&g) {
                CycleInterval::Interval { upper: Some(u), .. } => Verification::check(
                    u == s.lambda && above,
                    format!(
                        "cycle enumeration gives {}; infeasible just above: {above}",
                        rational::format(&u)
                    ),
                ),
                other => Verification::check(false, format!("cycle enumeration gives {other:?}")),
            }
        };
        report = report.verified(v);
    }
    let svg = want_svg.then(|| svg::tiling_svg(&reconstruct(&t, &t.directions), &s.coordinates));
    Ok(Outcome { report, svg })
}

pub fn star(input: &Path, verify: bool) -> Result<Outcome> {
    let bytes = read(input)?;
    let d = parse(&bytes, input, io::parse_dist)?;
    let s = optimal_star_embedding(&d)?;
    let hub: Vec<String> = s.hub.iter().map(exact_and_decimal).collect();
    let mut report = RunReport::new(
        "star",
        &[&bytes],
        format!("dilation: {}", rational::format(&s.dilation)),
        json!({
            "dilation": rational::to_json(&s.dilation),
            "dilation_decimal": rational::to_f64(&s.dilation),
            "hub": s.hub.iter().map(rational::to_json).collect::<Vec<_>>(),
            "hub_decimal": s.hub.iter().map(rational::to_f64).collect::<Vec<_>>(),
            "witness": s.witness,
        }),
    )
    .line("dilation", exact_and_decimal(&s.dilation))
    .line("hub distances", hub.join(", "));
    if verify {
        let n = d.len();
        let v = if n > STAR_ORACLE_MAX_POINTS {
            Verification::skipped(format!("{n} points exceeds {STAR_ORACLE_MAX_POINTS}"))
        } else {
            let realized = dilation(&d, &s.hub).ok() == Some(s.dilation.clone());
            let b = star_bisection(&d, &ratio(1, 1 << 40));
            let gap = (rational::to_f64(&b) - rational::to_f64(&s.dilation)).abs();
            let mut ok = realized && gap <= STAR_TOLERANCE;
            let mut detail = format!("hub realizes the dilation: {realized}; bisection gap {gap:.3e}");
            if n <= STAR_EXACT_MAX_POINTS {
                let exact = matches!(
                    cycle_interval(&build_parametric_graph(&d)),
                    CycleInterval::Interval { lower: Some(l), .. } if l == s.dilation
                );
                ok &= exact;
                detail.push_str(&format!("; cycle enumeration agrees: {exact}"));
            }
            Verification::check(ok, detail)
        };
        report = report.verified(v);
    }
    Ok(Outcome { report, svg: None })
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let r = rational::parse(s).with_context(|| format!("invalid number {s:?}"))?;
    if r < rational::zero() {
        bail!("{s} is negative");
    }
    Ok(r)
}
