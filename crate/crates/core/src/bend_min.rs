//! Minimum-bend orthogonal representation of a rectilinear map, solved as a
//! minimum-cost circulation on the junction/region network.

use crate::graph::{min_cost_circulation, verify_circulation, FlowError, FlowNetwork};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

/// Map file contents, with regions referred to by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub regions: Vec<String>,
    pub exterior: String,
    /// Each junction lists its regions in counterclockwise order.
    pub junctions: Vec<Vec<String>>,
    pub adjacencies: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("region {0:?} is listed twice")]
    DuplicateRegion(String),
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("junction {junction} has degree {degree}; only 3 or 4 regions may meet")]
    BadDegree { junction: usize, degree: usize },
    #[error("junction {junction} lists region {region:?} in two consecutive quadrants")]
    RepeatedNeighbor { junction: usize, region: String },
    #[error("rotations are inconsistent on the boundary between {0:?} and {1:?}")]
    InconsistentRotation(String, String),
    #[error("regions {0:?} and {1:?} meet at a junction but are not listed as adjacent")]
    MissingAdjacency(String, String),
    #[error("adjacency {0:?}-{1:?} is listed more than once")]
    DuplicateAdjacency(String, String),
    #[error("region {0:?} is listed as adjacent to itself")]
    SelfAdjacency(String),
    #[error("the region adjacency graph is disconnected")]
    Disconnected,
    #[error("the bend network is infeasible: {0}")]
    Infeasible(FlowError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneMap {
    pub regions: Vec<String>,
    pub exterior: usize,
    pub junctions: Vec<Vec<usize>>,
    pub adjacencies: Vec<(usize, usize)>,
}

impl PlaneMap {
    pub fn new(file: &MapFile) -> Result<Self, MapError> {
        let mut index = BTreeMap::new();
        for (i, r) in file.regions.iter().enumerate() {
            if index.insert(r.clone(), i).is_some() {
                return Err(MapError::DuplicateRegion(r.clone()));
            }
        }
        let lookup = |name: &String| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| MapError::UnknownRegion(name.clone()))
        };
        let exterior = lookup(&file.exterior)?;
        let junctions = file
            .junctions
            .iter()
            .map(|j| j.iter().map(lookup).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let adjacencies = file
            .adjacencies
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, MapError>>()?;
        let m = PlaneMap {
            regions: file.regions.clone(),
            exterior,
            junctions,
            adjacencies,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn to_file(&self) -> MapFile {
        let name = |r: usize| self.regions[r].clone();
        MapFile {
            regions: self.regions.clone(),
            exterior: name(self.exterior),
            junctions: self
                .junctions
                .iter()
                .map(|j| j.iter().map(|&r| name(r)).collect())
                .collect(),
            adjacencies: self.adjacencies.iter().map(|&(a, b)| (name(a), name(b))).collect(),
        }
    }

    fn validate(&self) -> Result<(), MapError> {
        let name = |r: usize| self.regions[r].clone();
        let mut listed = BTreeSet::new();
        for &(a, b) in &self.adjacencies {
            if a == b {
                return Err(MapError::SelfAdjacency(name(a)));
            }
            if !listed.insert((a.min(b), a.max(b))) {
                return Err(MapError::DuplicateAdjacency(name(a), name(b)));
            }
        }
        // Each boundary arc leaves one junction as (a, b) and enters the
        // other as (b, a).
        let mut ends: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (j, rot) in self.junctions.iter().enumerate() {
            if !(3..=4).contains(&rot.len()) {
                return Err(MapError::BadDegree {
                    junction: j,
                    degree: rot.len(),
                });
            }
            for i in 0..rot.len() {
                let (a, b) = (rot[i], rot[(i + 1) % rot.len()]);
                if a == b {
                    return Err(MapError::RepeatedNeighbor {
                        junction: j,
                        region: name(a),
                    });
                }
                if !listed.contains(&(a.min(b), a.max(b))) {
                    return Err(MapError::MissingAdjacency(name(a), name(b)));
                }
                *ends.entry((a.min(b), a.max(b))).or_default() += if a < b { 1 } else { -1 };
            }
        }
        if let Some((&(a, b), _)) = ends.iter().find(|(_, &v)| v != 0) {
            return Err(MapError::InconsistentRotation(name(a), name(b)));
        }
        let mut seen = vec![false; self.regions.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(r) = queue.pop_front() {
            for &(a, b) in &self.adjacencies {
                for (x, y) in [(a, b), (b, a)] {
                    if x == r && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(MapError::Disconnected);
        }
        Ok(())
    }

    /// Junction incidences of `r`, counted per quadrant slot.
    pub fn junction_count(&self, r: usize) -> usize {
        self.junctions.iter().flatten().filter(|&&x| x == r).count()
    }

    /// Net units region `r` ships to the circulation vertex.
    pub fn region_balance(&self, r: usize) -> i64 {
        let k = self.junction_count(r) as i64;
        if r == self.exterior {
            2 * k + 4
        } else {
            2 * k - 4
        }
    }
}

/// Which network vertex and arc plays which role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkLegend {
    pub circulation: usize,
    pub region_vertex: Vec<usize>,
    pub junction_vertex: Vec<usize>,
    /// Circulation to junction, one per junction.
    pub junction_arcs: Vec<usize>,
    /// Junction to region, one per rotation slot.
    pub slot_arcs: Vec<Vec<usize>>,
    /// `(a → b, b → a)` per adjacency.
    pub bend_arcs: Vec<(usize, usize)>,
    /// Region to circulation (or reversed), one per region.
    pub balance_arcs: Vec<usize>,
}

pub fn build_flow_network(m: &PlaneMap) -> (FlowNetwork, NetworkLegend) {
    let rn = m.regions.len();
    let jn = m.junctions.len();
    let mut net = FlowNetwork::new(1 + rn + jn);
    let region_vertex: Vec<usize> = (0..rn).map(|r| 1 + r).collect();
    let junction_vertex: Vec<usize> = (0..jn).map(|j| 1 + rn + j).collect();
    let balances: Vec<i64> = (0..rn).map(|r| m.region_balance(r)).collect();
    let cap = 4 * jn as i64
        + m.junctions.iter().map(|j| j.len() as i64).sum::<i64>()
        + balances.iter().map(|b| b.abs()).sum::<i64>();
    let junction_arcs = (0..jn).map(|j| net.add_arc(0, junction_vertex[j], 4, 4, 0)).collect();
    let slot_arcs = m
        .junctions
        .iter()
        .enumerate()
        .map(|(j, rot)| {
            let upper = 5 - rot.len() as i64;
            rot.iter()
                .map(|&r| net.add_arc(junction_vertex[j], region_vertex[r], 1, upper, 0))
                .collect()
        })
        .collect();
    let bend_arcs = m
        .adjacencies
        .iter()
        .map(|&(a, b)| {
            (
                net.add_arc(region_vertex[a], region_vertex[b], 0, cap, 1),
                net.add_arc(region_vertex[b], region_vertex[a], 0, cap, 1),
            )
        })
        .collect();
    let balance_arcs = (0..rn)
        .map(|r| {
            let c = balances[r];
            if c >= 0 {
                net.add_arc(region_vertex[r], 0, c, c, 0)
            } else {
                net.add_arc(0, region_vertex[r], -c, -c, 0)
            }
        })
        .collect();
    (
        net,
        NetworkLegend {
            circulation: 0,
            region_vertex,
            junction_vertex,
            junction_arcs,
            slot_arcs,
            bend_arcs,
            balance_arcs,
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencyBends {
    pub a: String,
    pub b: String,
    /// Bends convex toward `a`, concave toward `b`.
    pub a_to_b: i64,
    pub b_to_a: i64,
}

impl AdjacencyBends {
    pub fn total(&self) -> i64 {
        self.a_to_b + self.b_to_a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BendAssignment {
    pub bends: Vec<AdjacencyBends>,
    /// Quarter turns per junction slot, in rotation order.
    pub angles: Vec<Vec<i64>>,
    /// Equals the circulation cost.
    pub total_bends: i64,
    /// Bends on boundaries between two non-exterior regions.
    pub interior_bends: i64,
    #[serde(skip)]
    pub flow: Vec<i64>,
}

impl BendAssignment {
    /// Bends anywhere on the boundary of region `r`.
    pub fn region_bends(&self, m: &PlaneMap, r: usize) -> i64 {
        m.adjacencies
            .iter()
            .zip(&self.bends)
            .filter(|((a, b), _)| *a == r || *b == r)
            .map(|(_, x)| x.total())
            .sum()
    }

    /// Convex minus concave corners of `r`: 4 inside, −4 for the exterior.
    pub fn corner_excess(&self, m: &PlaneMap, r: usize) -> i64 {
        let convex_at_junctions = m
            .junctions
            .iter()
            .zip(&self.angles)
            .flat_map(|(rot, units)| rot.iter().zip(units))
            .filter(|(&x, &u)| x == r && u == 1)
            .count() as i64;
        let mut excess = convex_at_junctions;
        for (&(a, b), x) in m.adjacencies.iter().zip(&self.bends) {
            if a == r {
                excess += x.a_to_b - x.b_to_a;
            } else if b == r {
                excess += x.b_to_a - x.a_to_b;
            }
        }
        excess
    }
}

pub fn min_bend_assignment(m: &PlaneMap) -> Result<BendAssignment, MapError> {
    let (net, legend) = build_flow_network(m);
    let circ = min_cost_circulation(&net).map_err(MapError::Infeasible)?;
    debug_assert!(verify_circulation(&net, &circ.flow));
    let bends: Vec<AdjacencyBends> = m
        .adjacencies
        .iter()
        .zip(&legend.bend_arcs)
        .map(|(&(a, b), &(ab, ba))| AdjacencyBends {
            a: m.regions[a].clone(),
            b: m.regions[b].clone(),
            a_to_b: circ.flow[ab],
            b_to_a: circ.flow[ba],
        })
        .collect();
    let angles = legend
        .slot_arcs
        .iter()
        .map(|arcs| arcs.iter().map(|&e| circ.flow[e]).collect())
        .collect();
    let interior_bends = m
        .adjacencies
        .iter()
        .zip(&bends)
        .filter(|((a, b), _)| *a != m.exterior && *b != m.exterior)
        .map(|(_, x)| x.total())
        .sum();
    Ok(BendAssignment {
        total_bends: circ.cost,
        interior_bends,
        bends,
        angles,
        flow: circ.flow,
    })
}

fn map_file(regions: &[&str], exterior: &str, junctions: &[&[&str]], adjacencies: &[(&str, &str)]) -> MapFile {
    MapFile {
        regions: regions.iter().map(|s| s.to_string()).collect(),
        exterior: exterior.to_string(),
        junctions: junctions
            .iter()
            .map(|j| j.iter().map(|s| s.to_string()).collect())
            .collect(),
        adjacencies: adjacencies
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

/// One region alone inside the exterior, with no junctions.
pub fn single_region_map() -> PlaneMap {
    PlaneMap::new(&map_file(
        &["inside", "outside"],
        "outside",
        &[],
        &[("inside", "outside")],
    ))
    .expect("valid map")
}

/// Four quadrant regions around a degree-4 junction.
pub fn grid_map() -> PlaneMap {
    PlaneMap::new(&map_file(
        &["ne", "nw", "sw", "se", "outside"],
        "outside",
        &[
            &["ne", "nw", "sw", "se"],
            &["outside", "nw", "ne"],
            &["nw", "outside", "sw"],
            &["se", "sw", "outside"],
            &["ne", "se", "outside"],
        ],
        &[
            ("ne", "nw"),
            ("nw", "sw"),
            ("sw", "se"),
            ("se", "ne"),
            ("ne", "outside"),
            ("nw", "outside"),
            ("sw", "outside"),
            ("se", "outside"),
        ],
    ))
    .expect("valid map")
}

/// Five countries: Luxembourg is enclosed by Belgium, Germany and France.
pub fn benelux_map() -> PlaneMap {
    PlaneMap::new(&map_file(
        &["netherlands", "belgium", "luxembourg", "germany", "france", "sea"],
        "sea",
        &[
            &["netherlands", "sea", "belgium"],
            &["germany", "netherlands", "belgium"],
            &["sea", "netherlands", "germany"],
            &["belgium", "sea", "france"],
            &["germany", "france", "sea"],
            &["luxembourg", "belgium", "france"],
            &["germany", "luxembourg", "france"],
            &["germany", "belgium", "luxembourg"],
        ],
        &[
            ("netherlands", "sea"),
            ("netherlands", "belgium"),
            ("netherlands", "germany"),
            ("germany", "sea"),
            ("belgium", "sea"),
            ("belgium", "germany"),
            ("belgium", "luxembourg"),
            ("belgium", "france"),
            ("luxembourg", "germany"),
            ("luxembourg", "france"),
            ("germany", "france"),
            ("france", "sea"),
        ],
    ))
    .expect("valid map")
}
