//! Text formats: polygons, quads, point sets, distance matrices, maps,
//! tilings and OFF meshes. Line-oriented formats report 1-based line
//! numbers; JSON formats report the parser's line and column.

use crate::bend_min::{MapError, MapFile, PlaneMap};
use crate::geometry::{Point, Polygon, PolygonError, PolygonKind};
use crate::rational::{self, Rational};
use crate::star::{DistanceMatrix, MetricError};
use crate::strip::{MeshError, TriMesh};
use crate::tiling::{Tiling, TilingError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

fn at_line(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// A rational read from a JSON number or `"p/q"` string; failures carry
/// the parser position.
struct Num(Rational);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        rational::from_json(&v).map(Num).map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
struct PolyIn {
    kind: PolygonKind,
    outer: Vec<[Num; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[Num; 2]>>,
}

#[derive(Serialize)]
struct PolyOut {
    kind: PolygonKind,
    outer: Vec<[serde_json::Value; 2]>,
    holes: Vec<Vec<[serde_json::Value; 2]>>,
}

pub fn parse_poly(text: &str) -> Result<Polygon, FormatError> {
    let f: PolyIn = serde_json::from_str(text)?;
    let ring = |r: Vec<[Num; 2]>| r.into_iter().map(|[x, y]| Point::new(x.0, y.0)).collect();
    Ok(Polygon::new(
        f.kind,
        ring(f.outer),
        f.holes.into_iter().map(ring).collect(),
    )?)
}

pub fn write_poly(p: &Polygon) -> String {
    let ring = |r: &[Point]| {
        r.iter()
            .map(|q| [rational::to_json(&q.x), rational::to_json(&q.y)])
            .collect()
    };
    let f = PolyOut {
        kind: p.kind,
        outer: ring(p.outer()),
        holes: p.holes().iter().map(|h| ring(h)).collect(),
    };
    serde_json::to_string(&f).expect("serializable") + "\n"
}

/// Quads are checked against a polygon later; only the shape is read here.
pub fn parse_quads(text: &str) -> Result<Vec<[usize; 4]>, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_quads(q: &[[usize; 4]]) -> String {
    serde_json::to_string(q).expect("serializable") + "\n"
}

/// Lines that are blank or start with `#` are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn rationals(line: usize, s: &str) -> Result<Vec<Rational>, FormatError> {
    s.split_whitespace()
        .map(|w| rational::parse(w).map_err(|e| at_line(line, e.to_string())))
        .collect()
}

pub fn parse_pts(text: &str) -> Result<Vec<Point>, FormatError> {
    content_lines(text)
        .map(|(line, s)| {
            let v = rationals(line, s)?;
            match <[Rational; 2]>::try_from(v) {
                Ok([x, y]) => Ok(Point::new(x, y)),
                Err(v) => Err(at_line(line, format!("expected 2 numbers, found {}", v.len()))),
            }
        })
        .collect()
}

pub fn write_pts(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| format!("{} {}\n", rational::format(&p.x), rational::format(&p.y)))
        .collect()
}

pub fn parse_dist(text: &str) -> Result<DistanceMatrix, FormatError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| at_line(1, "missing point count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| at_line(line, format!("expected a point count, found {first:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (line, s) = lines
            .next()
            .ok_or_else(|| at_line(line + r + 1, format!("missing row {r}")))?;
        let row = rationals(line, s)?;
        if row.len() != n {
            return Err(at_line(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(at_line(line, "unexpected content after the last row"));
    }
    Ok(DistanceMatrix::new(rows)?)
}

pub fn write_dist(d: &DistanceMatrix) -> String {
    let mut s = format!("{}\n", d.len());
    for row in d.rows() {
        let cells: Vec<String> = row.iter().map(rational::format).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_map(text: &str) -> Result<PlaneMap, FormatError> {
    let f: MapFile = serde_json::from_str(text)?;
    Ok(PlaneMap::new(&f)?)
}

pub fn write_map(m: &PlaneMap) -> String {
    serde_json::to_string_pretty(&m.to_file()).expect("serializable") + "\n"
}

#[derive(Deserialize)]
struct TilingIn {
    directions: Vec<Num>,
    tiles: Vec<crate::tiling::Tile>,
}

pub fn parse_tiling(text: &str) -> Result<Tiling, FormatError> {
    let f: TilingIn = serde_json::from_str(text)?;
    Ok(Tiling::new(f.directions.into_iter().map(|d| d.0).collect(), f.tiles)?)
}

pub fn write_tiling(t: &Tiling) -> String {
    serde_json::to_string(&t.to_file()).expect("serializable") + "\n"
}

/// `OFF`, then `V F E`, then `V` vertex lines and `F` lines `3 a b c`.
pub fn parse_off(text: &str) -> Result<TriMesh, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "OFF")) => {}
        Some((line, other)) => return Err(at_line(line, format!("expected OFF header, found {other:?}"))),
        None => return Err(at_line(1, "empty file")),
    }
    let (line, counts) = lines.next().ok_or_else(|| at_line(2, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| at_line(line, format!("bad count {w:?}"))))
        .collect::<Result<_, _>>()?;
    if counts.len() < 2 {
        return Err(at_line(line, "expected vertex and face counts"));
    }
    let (nv, nf) = (counts[0], counts[1]);
    let mut vertices = Vec::with_capacity(nv);
    let mut last = line;
    for i in 0..nv {
        let (line, s) = lines
            .next()
            .ok_or_else(|| at_line(last + 1, format!("missing vertex {i}")))?;
        last = line;
        let v = rationals(line, s)?;
        match <[Rational; 3]>::try_from(v) {
            Ok(xyz) => vertices.push(xyz),
            Err(v) => return Err(at_line(line, format!("expected 3 coordinates, found {}", v.len()))),
        }
    }
    let mut triangles = Vec::with_capacity(nf);
    for i in 0..nf {
        let (line, s) = lines
            .next()
            .ok_or_else(|| at_line(last + 1, format!("missing face {i}")))?;
        last = line;
        let v: Vec<usize> = s
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| at_line(line, format!("bad index {w:?}"))))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 || v[0] != 3 {
            return Err(at_line(line, "faces must be triangles written as `3 a b c`"));
        }
        triangles.push([v[1], v[2], v[3]]);
    }
    Ok(TriMesh::new(vertices, triangles)?)
}

pub fn write_off(m: &TriMesh) -> String {
    let mut s = format!("OFF\n{} {} {}\n", m.vertex_count(), m.triangle_count(), m.edges().len());
    for v in m.vertices() {
        let c: Vec<String> = v.iter().map(rational::format).collect();
        s.push_str(&c.join(" "));
        s.push('\n');
    }
    for t in m.triangles() {
        s.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    s
}
