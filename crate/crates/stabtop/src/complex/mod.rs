//! Simplicial complexes of dimension at most two, their boundary operators,
//! and integral homology with explicit generator cycles.
//!
//! Orientation convention: every simplex is stored as a strictly increasing
//! vertex tuple and carries the orientation of that ordering. This removes
//! all sign ambiguity from file inputs; chains express the other
//! orientation with a negative coefficient.

mod chain;
mod homology;

pub use chain::{Chain, Cycle};
pub use homology::{homology, HomologyCoordinates, HomologyGroup};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{AbelianError, IntMatrix};

/// True when the two complexes are the same object or structurally equal.
pub fn same_complex(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// A single problem found while validating a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    VertexOutOfRange {
        simplex: Vec<usize>,
        vertex_count: usize,
    },
    NotStrictlyIncreasing {
        simplex: Vec<usize>,
    },
    Duplicate {
        simplex: Vec<usize>,
    },
    MissingFace {
        triangle: [usize; 3],
        edge: [usize; 2],
    },
    /// The composed boundary operators do not vanish; reported with the
    /// offending triangle column. Cannot occur when all faces are present.
    BoundaryComposition {
        triangle_index: usize,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::VertexOutOfRange {
                simplex,
                vertex_count,
            } => write!(
                f,
                "simplex {simplex:?} references a vertex beyond the declared count {vertex_count}"
            ),
            Defect::NotStrictlyIncreasing { simplex } => {
                write!(f, "simplex {simplex:?} is not strictly increasing")
            }
            Defect::Duplicate { simplex } => write!(f, "simplex {simplex:?} is listed twice"),
            Defect::MissingFace { triangle, edge } => {
                write!(f, "triangle {triangle:?} is missing its edge {edge:?}")
            }
            Defect::BoundaryComposition { triangle_index } => write!(
                f,
                "boundary of boundary is nonzero on triangle column {triangle_index}"
            ),
        }
    }
}

/// All problems found while validating a complex.
#[derive(Clone, Debug, Default)]
pub struct DefectReport {
    pub defects: Vec<Defect>,
}

impl DefectReport {
    pub fn is_clean(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for DefectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} defect(s):", self.defects.len())?;
        for d in &self.defects {
            write!(f, "\n  - {d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DefectReport {}

/// Errors from chain and homology operations.
#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(DefectReport),
    #[error("degree {0} is out of range for a complex of dimension at most 2")]
    DegreeOutOfRange(usize),
    #[error("chain of dimension {got} where dimension {expected} was required")]
    WrongDimension { expected: usize, got: usize },
    #[error("chain references simplex {index} but dimension {dimension} has only {count}")]
    SimplexOutOfRange {
        dimension: usize,
        index: usize,
        count: usize,
    },
    #[error("not a cycle: the boundary has {boundary_terms} nonzero term(s)")]
    NotACycle { boundary_terms: usize },
    #[error("the cycle belongs to a different complex")]
    ComplexMismatch,
    #[error("proposed generators do not form a basis (change-of-basis determinant {det})")]
    NotABasis { det: BigInt },
    #[error("rebasing requires torsion-free homology in this degree")]
    TorsionRebase,
    #[error("expected {expected} basis cycles, got {got}")]
    BasisSizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// A finite simplicial complex with simplices of dimension 0, 1, 2.
///
/// Vertices are implicit indices `0..vertex_count`; edges and triangles are
/// strictly increasing index tuples. Construction validates downward
/// closure, so every value of this type is a genuine complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    edge_index: HashMap<[usize; 2], usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.triangles == other.triangles
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds and validates a complex. All defects are collected and
    /// reported together rather than failing on the first.
    pub fn from_simplices(
        vertex_count: usize,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, DefectReport> {
        let mut defects = Vec::new();

        for e in &edges {
            if e[0] >= e[1] {
                defects.push(Defect::NotStrictlyIncreasing {
                    simplex: e.to_vec(),
                });
            }
            if e.iter().any(|&v| v >= vertex_count) {
                defects.push(Defect::VertexOutOfRange {
                    simplex: e.to_vec(),
                    vertex_count,
                });
            }
        }
        for t in &triangles {
            if !(t[0] < t[1] && t[1] < t[2]) {
                defects.push(Defect::NotStrictlyIncreasing {
                    simplex: t.to_vec(),
                });
            }
            if t.iter().any(|&v| v >= vertex_count) {
                defects.push(Defect::VertexOutOfRange {
                    simplex: t.to_vec(),
                    vertex_count,
                });
            }
        }

        let mut seen_edges = BTreeSet::new();
        for e in &edges {
            if !seen_edges.insert(*e) {
                defects.push(Defect::Duplicate {
                    simplex: e.to_vec(),
                });
            }
        }
        let mut seen_triangles = BTreeSet::new();
        for t in &triangles {
            if !seen_triangles.insert(*t) {
                defects.push(Defect::Duplicate {
                    simplex: t.to_vec(),
                });
            }
        }

        // Downward closure: each triangle needs its three edges.
        for t in &triangles {
            for edge in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                if edge[0] < edge[1] && !seen_edges.contains(&edge) {
                    defects.push(Defect::MissingFace { triangle: *t, edge });
                }
            }
        }

        if !defects.is_empty() {
            return Err(DefectReport { defects });
        }

        let edge_index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Ok(SimplicialComplex {
            vertex_count,
            edges,
            triangles,
            edge_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Number of simplices of the given dimension; zero outside 0..=2.
    pub fn simplex_count(&self, dimension: usize) -> usize {
        match dimension {
            0 => self.vertex_count,
            1 => self.edges.len(),
            2 => self.triangles.len(),
            _ => 0,
        }
    }

    pub fn edge_position(&self, edge: [usize; 2]) -> Option<usize> {
        self.edge_index.get(&edge).copied()
    }

    /// Certifies the structural invariants, including that the composed
    /// boundary operators vanish. A clean result means every downstream
    /// homology computation is working on a genuine chain complex.
    pub fn validate(&self) -> Result<(), DefectReport> {
        SimplicialComplex::from_simplices(
            self.vertex_count,
            self.edges.clone(),
            self.triangles.clone(),
        )?;
        let d1 = self.boundary_matrix(1).expect("degree 1 in range");
        let d2 = self.boundary_matrix(2).expect("degree 2 in range");
        let composed = d1.mul(&d2).expect("chain complex shapes");
        let mut defects = Vec::new();
        for j in 0..composed.cols() {
            if (0..composed.rows()).any(|i| !composed.at(i, j).is_zero()) {
                defects.push(Defect::BoundaryComposition { triangle_index: j });
            }
        }
        if defects.is_empty() {
            Ok(())
        } else {
            Err(DefectReport { defects })
        }
    }

    /// The boundary operator from `k`-chains to `(k-1)`-chains as a matrix
    /// with one column per `k`-simplex. Entries lie in {-1, 0, 1}.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntMatrix, ComplexError> {
        match k {
            1 => {
                let mut m = IntMatrix::zeros(self.vertex_count, self.edges.len());
                for (j, e) in self.edges.iter().enumerate() {
                    m.set(e[0], j, -BigInt::one());
                    m.set(e[1], j, BigInt::one());
                }
                Ok(m)
            }
            2 => {
                let mut m = IntMatrix::zeros(self.edges.len(), self.triangles.len());
                for (j, t) in self.triangles.iter().enumerate() {
                    // d[a,b,c] = [b,c] - [a,c] + [a,b]
                    let faces = [([t[1], t[2]], 1), ([t[0], t[2]], -1), ([t[0], t[1]], 1)];
                    for (edge, sign) in faces {
                        let row = self.edge_index[&edge];
                        m.set(row, j, BigInt::from(sign));
                    }
                }
                Ok(m)
            }
            _ => Err(ComplexError::DegreeOutOfRange(k)),
        }
    }

    /// Boundary operator for any degree, with the empty operators at the
    /// ends of the chain complex filled in with the right shapes.
    pub(crate) fn boundary_or_empty(&self, k: usize) -> IntMatrix {
        match k {
            0 => IntMatrix::zeros(0, self.vertex_count),
            1 | 2 => self.boundary_matrix(k).expect("degree in range"),
            _ => IntMatrix::zeros(self.simplex_count(k - 1), 0),
        }
    }

    pub fn check_chain(&self, chain: &Chain) -> Result<(), ComplexError> {
        let dimension = chain.dimension();
        if dimension > 2 {
            return Err(ComplexError::DegreeOutOfRange(dimension));
        }
        let count = self.simplex_count(dimension);
        for (index, _) in chain.iter() {
            if index >= count {
                return Err(ComplexError::SimplexOutOfRange {
                    dimension,
                    index,
                    count,
                });
            }
        }
        Ok(())
    }

    /// The boundary of a chain, one dimension down.
    pub fn boundary_of(&self, chain: &Chain) -> Result<Chain, ComplexError> {
        self.check_chain(chain)?;
        let k = chain.dimension();
        let mut out = Chain::zero(k.saturating_sub(1));
        match k {
            0 => {}
            1 => {
                for (index, coeff) in chain.iter() {
                    let [a, b] = self.edges[index];
                    out.add_term(b, coeff.clone());
                    out.add_term(a, -coeff);
                }
            }
            2 => {
                for (index, coeff) in chain.iter() {
                    let [a, b, c] = self.triangles[index];
                    out.add_term(self.edge_index[&[b, c]], coeff.clone());
                    out.add_term(self.edge_index[&[a, c]], -coeff);
                    out.add_term(self.edge_index[&[a, b]], coeff.clone());
                }
            }
            _ => return Err(ComplexError::DegreeOutOfRange(k)),
        }
        Ok(out)
    }

    /// Connected component label per vertex, numbered in order of first
    /// appearance, so vertex 0 is always in component 0 when present.
    pub fn component_labels(&self) -> Vec<usize> {
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = HashMap::new();
        let mut out = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            let root = find(&mut parent, v);
            let next = label.len();
            out.push(*label.entry(root).or_insert(next));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |&m| m + 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

impl From<DefectReport> for ComplexError {
    fn from(report: DefectReport) -> Self {
        ComplexError::Invalid(report)
    }
}

#[cfg(test)]
pub(crate) mod test_complexes {
    use super::SimplicialComplex;

    /// Solid triangle: three vertices, three edges, one face.
    pub fn filled_triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, vec![[0, 1], [0, 2], [1, 2]], vec![[0, 1, 2]])
            .unwrap()
    }

    /// Hollow triangle: the minimal triangulation of a circle.
    pub fn circle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, vec![[0, 1], [0, 2], [1, 2]], vec![]).unwrap()
    }

    /// Minimal six-vertex triangulation of the projective plane.
    pub fn projective_plane() -> SimplicialComplex {
        let triangles = vec![
            [0, 1, 2],
            [0, 2, 3],
            [0, 1, 5],
            [0, 4, 5],
            [0, 3, 4],
            [1, 2, 4],
            [1, 3, 4],
            [1, 3, 5],
            [2, 3, 5],
            [2, 4, 5],
        ];
        let mut edges = std::collections::BTreeSet::new();
        for t in &triangles {
            edges.insert([t[0], t[1]]);
            edges.insert([t[0], t[2]]);
            edges.insert([t[1], t[2]]);
        }
        SimplicialComplex::from_simplices(6, edges.into_iter().collect(), triangles).unwrap()
    }
}
