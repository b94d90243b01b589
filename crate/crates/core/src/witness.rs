//! Named general position sets with their host patches.
//!
//! Entries tagged [`Provenance::Derived`] were found by the solver as
//! stand-ins for sets that are only drawn, never listed numerically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::GraphSpec;
use crate::geodesy::{verify_general_position, GpCertificate};
use crate::graph::{all_pairs_distances, Graph};
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Coordinates given explicitly in the source.
    Stated,
    /// Found by this crate's solver.
    Derived,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub name: &'static str,
    /// Generator spec of the host patch, e.g. `cartesian:5x5x5`.
    pub host: &'static str,
    pub coords: &'static [&'static [i64]],
    pub provenance: Provenance,
    pub note: &'static str,
}

impl Witness {
    pub fn host_graph(&self) -> Result<Graph> {
        self.host.parse::<GraphSpec>()?.build()
    }
}

const LIBRARY: &[Witness] = &[
    Witness {
        name: "grid3-ten",
        host: "cartesian:5x5x5",
        coords: &[
            &[2, 2, 0],
            &[3, 1, 1],
            &[1, 3, 1],
            &[2, 0, 2],
            &[0, 2, 2],
            &[4, 2, 2],
            &[2, 4, 2],
            &[1, 1, 3],
            &[3, 3, 3],
            &[2, 2, 4],
        ],
        provenance: Provenance::Stated,
        note: "10 points of the 3-dim grid with pairwise distances in [3, 5]",
    },
    Witness {
        name: "strong-corners",
        host: "strong:3x3",
        coords: &[&[0, 0], &[0, 2], &[2, 0], &[2, 2]],
        provenance: Provenance::Derived,
        note: "corners of a 3x3 diagonal-grid patch, all at distance 2",
    },
    Witness {
        name: "grid2-four",
        host: "cartesian:3x3",
        coords: &[&[0, 1], &[1, 0], &[1, 2], &[2, 1]],
        provenance: Provenance::Derived,
        note: "edge midpoints of a 3x3 grid patch",
    },
    Witness {
        name: "diag-four",
        host: "strong:5x5",
        coords: &[&[1, 1], &[1, 2], &[2, 1], &[2, 2]],
        provenance: Provenance::Derived,
        note: "a unit cell of the diagonal grid (a 4-clique)",
    },
    Witness {
        name: "boron-six",
        host: "triangular:8x8",
        coords: &[&[0, 2], &[1, 1], &[1, 4], &[3, 2], &[3, 5], &[4, 4]],
        provenance: Provenance::Derived,
        note: "6-set of the triangular grid, first optimum of the 6x6 patch",
    },
    Witness {
        name: "torus-seven",
        host: "torus:7x7",
        coords: &[
            &[0, 0],
            &[1, 2],
            &[2, 4],
            &[3, 6],
            &[4, 1],
            &[5, 3],
            &[6, 5],
        ],
        provenance: Provenance::Derived,
        note: "7-set of C7xC7 along the slope-2 diagonal",
    },
];

/// Points in the plane used to illustrate the five-point monotone triple.
pub const ES_EXAMPLE_POINTS: [[i64; 2]; 5] = [[1, 4], [2, 3], [3, 5], [3, 2], [5, 3]];

/// The monotone quadruple whose labels are monotone in the natural labeling
/// of the diagonal grid while no 3 of its vertices share a geodesic.
pub const DIAGONAL_QUADRUPLE: [[i64; 2]; 4] = [[0, 0], [2, 1], [3, 4], [5, 5]];

pub fn library() -> &'static [Witness] {
    LIBRARY
}

pub fn witness(name: &str) -> Result<&'static Witness> {
    LIBRARY
        .iter()
        .find(|w| w.name == name)
        .ok_or_else(|| Error::UnknownWitness(name.to_string()))
}

/// Maps coordinate tuples to vertex ids through the patch labeling.
pub fn resolve_coords<P: AsRef<[i64]>>(coords: &[P], patch: &Graph) -> Result<Vec<Vertex>> {
    let labels = patch
        .labels()
        .ok_or_else(|| Error::LabelingMismatch(format!("{} carries no labeling", patch.name())))?;
    let index = labels.index();
    coords
        .iter()
        .map(|c| {
            index
                .get(c.as_ref())
                .copied()
                .ok_or_else(|| Error::CoordinateOutsidePatch(c.as_ref().to_vec()))
        })
        .collect()
}

pub fn resolve_witness(name: &str, patch: &Graph) -> Result<Vec<Vertex>> {
    resolve_coords(witness(name)?.coords, patch)
}

/// Resolves every entry against its own host and verifies it.
pub fn self_test() -> Result<Vec<(&'static str, GpCertificate)>> {
    LIBRARY
        .iter()
        .map(|w| {
            let host = w.host_graph()?;
            let ids = resolve_coords(w.coords, &host)?;
            let cert = verify_general_position(&all_pairs_distances(&host), &ids)?;
            Ok((w.name, cert))
        })
        .collect()
}
