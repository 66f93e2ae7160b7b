use anyhow::{bail, Result};
use clap::ValueEnum;
use geomgraph::bend_min::{benelux_map, single_region_map};
use geomgraph::gen;
use geomgraph::io;
use geomgraph::rational::int;
use geomgraph::star::{four_cycle_metric, random_metric};
use geomgraph::strip::{icosahedron, octahedron, sphere_like, tetrahedron};
use geomgraph::tiling::{random_tiling, single_rhombus, three_rhombi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Simple comb polygon with `size` teeth.
    Comb,
    /// Orthogonal comb with `size` teeth; quads via `--quads`.
    OrthoComb,
    /// Orthogonal staircase with `size` steps; quads via `--quads`.
    Staircase,
    /// Star-shaped simple polygon with `size` vertices.
    Polygon,
    /// Polyomino on a `size × size` grid, holes allowed.
    Orthogonal,
    /// `size` lattice points.
    Points,
    /// Shortest-path metric on `size` points.
    Metric,
    /// Brick-wall map with at most `size` bricks.
    Map,
    /// Sphere-like mesh with `size` triangles.
    Mesh,
    /// Rhombic tiling with `size` zones.
    Tiling,
    /// Plus-shaped orthogonal polygon.
    Plus,
    /// L-shaped orthogonal polygon.
    LShape,
    /// Square with a square hole.
    Annulus,
    /// Unit 4-cycle metric.
    FourCycle,
    /// Five countries inside a frame.
    Benelux,
    /// One region inside the exterior.
    SingleRegion,
    Tetrahedron,
    Octahedron,
    Icosahedron,
    /// One rhombus with directions 0 and 30 degrees.
    Rhombus,
    /// Three rhombi around a point.
    ThreeRhombi,
}

impl Family {
    fn default_size(self) -> usize {
        match self {
            Family::Comb | Family::OrthoComb | Family::Staircase => 4,
            Family::Polygon => 16,
            Family::Orthogonal => 5,
            Family::Points => 10,
            Family::Metric => 6,
            Family::Map => 5,
            Family::Mesh => 100,
            Family::Tiling => 4,
            _ => 0,
        }
    }
}

/// The instance text and, for quadrilateralized families, the quads.
pub fn generate(family: Family, seed: u64, size: Option<usize>) -> Result<(String, Option<String>)> {
    let k = size.unwrap_or_else(|| family.default_size());
    let need = |lo: usize, hi: usize| -> Result<()> {
        if !(lo..=hi).contains(&k) {
            bail!("size for {family:?} must lie in {lo}..={hi}, got {k}");
        }
        Ok(())
    };
    Ok(match family {
        Family::Comb => {
            need(1, 10_000)?;
            (io::write_poly(&gen::comb(k)), None)
        }
        Family::OrthoComb => {
            need(2, 10_000)?;
            let (p, q) = gen::orthogonal_comb(k);
            (io::write_poly(&p), Some(io::write_quads(&q)))
        }
        Family::Staircase => {
            need(1, 10_000)?;
            let (p, q) = gen::staircase(k);
            (io::write_poly(&p), Some(io::write_quads(&q)))
        }
        Family::Polygon => {
            need(3, 2_000)?;
            (
                io::write_poly(&gen::random_simple_polygon(seed, k, (4 * k as i64).max(8))),
                None,
            )
        }
        Family::Orthogonal => {
            need(2, 12)?;
            (
                io::write_poly(&gen::random_orthogonal_polygon(seed, k as i64, usize::MAX)),
                None,
            )
        }
        Family::Points => {
            need(1, 10_000)?;
            (io::write_pts(&gen::random_points(seed, k, 30)), None)
        }
        Family::Metric => {
            need(2, 200)?;
            (io::write_dist(&random_metric(seed, k)), None)
        }
        Family::Map => {
            need(1, 400)?;
            let width = (k as i64).clamp(2, 8);
            let rows = (k as i64 / 2).clamp(1, 6);
            (io::write_map(&gen::brick_map(seed, width, rows, k)), None)
        }
        Family::Mesh => {
            need(8, 100_000)?;
            (io::write_off(&sphere_like(seed, k)), None)
        }
        Family::Tiling => {
            need(2, 6)?;
            (io::write_tiling(&random_tiling(seed, k, k * (k - 1) / 2)), None)
        }
        Family::Plus => (io::write_poly(&gen::plus_polygon()), None),
        Family::LShape => (io::write_poly(&gen::l_shape()), None),
        Family::Annulus => (io::write_poly(&gen::square_annulus()), None),
        Family::FourCycle => (io::write_dist(&four_cycle_metric()), None),
        Family::Benelux => (io::write_map(&benelux_map()), None),
        Family::SingleRegion => (io::write_map(&single_region_map()), None),
        Family::Tetrahedron => (io::write_off(&tetrahedron()), None),
        Family::Octahedron => (io::write_off(&octahedron()), None),
        Family::Icosahedron => (io::write_off(&icosahedron()), None),
        Family::Rhombus => (io::write_tiling(&single_rhombus(int(0), int(30))), None),
        Family::ThreeRhombi => (io::write_tiling(&three_rhombi()), None),
    })
}
