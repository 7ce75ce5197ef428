//! Vector fields sampled at vertices in a two-dimensional trivializing
//! frame, winding numbers along cycles, and induced classes in
//! `H1(region) + Z` under the frame product structure.
//!
//! A sample `(a, b)` at a vertex means the field equals `a * frame_1 +
//! b * frame_2` there. Nowhere on the region may the field vanish, and
//! along every edge of a queried cycle the direction must turn by less
//! than a half turn, so the vertex samples determine the continuous
//! winding. Both requirements are enforced with explicit tolerances and
//! loud failures rather than assumed.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abelian::IntMatrix;
use crate::complex::{same_complex, ComplexError, Cycle, HomologyGroup, SimplicialComplex};

/// Numeric thresholds for the discretization checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// A sample whose norm is at most `eps_zero_rel` times the largest
    /// sample norm counts as a zero of the field.
    pub eps_zero_rel: f64,
    /// Sampling adequacy margin: along each edge the unsigned angle
    /// between endpoint samples must stay below `pi - adequacy_delta`.
    pub adequacy_delta: f64,
    /// Largest tolerated distance between the accumulated angle sum over
    /// two pi and the nearest integer.
    pub winding_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_zero_rel: 1e-9,
            adequacy_delta: 1e-6,
            winding_residual: 1e-6,
        }
    }
}

/// Errors from field construction and winding computations.
#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("expected one sample per vertex ({expected}), got {got}")]
    SampleCountMismatch { expected: usize, got: usize },
    #[error(
        "sample at vertex {vertex} has norm {norm:.3e} <= threshold {threshold:.3e}; \
         the field must be nowhere zero on the region (exclude its zeros from the \
         complex, or supply the image lattice directly instead of deriving it from \
         a vanishing control direction)"
    )]
    ZeroSample {
        vertex: usize,
        norm: f64,
        threshold: f64,
    },
    #[error(
        "sampling inadequate on edge ({},{}): endpoint samples span an angle of \
         {angle:.6} rad, too close to a half turn; refine the mesh across this edge",
        edge[0], edge[1]
    )]
    AdequacyViolation { edge: [usize; 2], angle: f64 },
    #[error(
        "accumulated angle is not an integer number of turns (residual {residual:.3e}); \
         the samples are too irregular for a trustworthy winding"
    )]
    WindingResidual { residual: f64 },
    #[error("cycle coefficient on edge {edge} is too large to accumulate in floating point")]
    CoefficientOverflow { edge: usize },
    #[error("the field and the cycle live on different complexes")]
    ComplexMismatch,
    #[error("expected a homology group in degree 1, got degree {0}")]
    NotDegreeOne(usize),
    #[error(
        "homology has torsion; the frame trivialization only yields integer \
         product coordinates over a free basis"
    )]
    TorsionBasis,
    #[error(
        "the region has {0} connected components; the product decomposition behind \
         the single-input image lattice needs a connected region (split the complex \
         and analyze components separately)"
    )]
    DisconnectedRegion(usize),
    #[error("image lattice column {column} has length {got}, expected {expected}")]
    LatticeColumnLength {
        column: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A nowhere-zero vector field given by one frame-coordinate sample per
/// vertex of a complex.
#[derive(Clone, Debug)]
pub struct FramedField {
    complex: Arc<SimplicialComplex>,
    samples: Vec<[f64; 2]>,
    tolerances: Tolerances,
    /// Absolute zero threshold derived from the samples.
    eps_zero: f64,
}

impl FramedField {
    pub fn new(
        complex: Arc<SimplicialComplex>,
        samples: Vec<[f64; 2]>,
    ) -> Result<Self, FieldError> {
        FramedField::with_tolerances(complex, samples, Tolerances::default())
    }

    pub fn with_tolerances(
        complex: Arc<SimplicialComplex>,
        samples: Vec<[f64; 2]>,
        tolerances: Tolerances,
    ) -> Result<Self, FieldError> {
        if samples.len() != complex.vertex_count() {
            return Err(FieldError::SampleCountMismatch {
                expected: complex.vertex_count(),
                got: samples.len(),
            });
        }
        let max_norm = samples
            .iter()
            .map(|s| (s[0] * s[0] + s[1] * s[1]).sqrt())
            .fold(0.0f64, f64::max);
        let eps_zero = tolerances.eps_zero_rel * max_norm;
        for (vertex, s) in samples.iter().enumerate() {
            let norm = (s[0] * s[0] + s[1] * s[1]).sqrt();
            if !(norm > eps_zero) || !norm.is_finite() {
                return Err(FieldError::ZeroSample {
                    vertex,
                    norm,
                    threshold: eps_zero,
                });
            }
        }
        Ok(FramedField {
            complex,
            samples,
            tolerances,
            eps_zero,
        })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn samples(&self) -> &[[f64; 2]] {
        &self.samples
    }

    pub fn sample(&self, vertex: usize) -> [f64; 2] {
        self.samples[vertex]
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances
    }

    pub fn eps_zero(&self) -> f64 {
        self.eps_zero
    }

    /// Signed angle from the sample at `from` to the sample at `to`, in
    /// `(-pi, pi]`. Scale-invariant in both endpoints.
    fn edge_turn(&self, from: usize, to: usize) -> f64 {
        let u = self.samples[from];
        let v = self.samples[to];
        let cross = u[0] * v[1] - u[1] * v[0];
        let dot = u[0] * v[0] + u[1] * v[1];
        cross.atan2(dot)
    }

    /// Unsigned angle between the samples at two vertices, in `[0, pi]`.
    pub fn sample_gap(&self, a: usize, b: usize) -> f64 {
        self.edge_turn(a, b).abs()
    }

    /// The winding number of the field along a 1-cycle: the total signed
    /// turning of the sample direction, in full turns.
    ///
    /// Exactly an integer for adequately sampled fields; the accumulated
    /// floating-point drift is checked against the residual tolerance and
    /// the computation fails rather than round a doubtful sum.
    pub fn winding_number(&self, cycle: &Cycle) -> Result<i64, FieldError> {
        if !same_complex(cycle.complex(), &self.complex) {
            return Err(FieldError::ComplexMismatch);
        }
        if cycle.dimension() != 1 {
            return Err(FieldError::Complex(ComplexError::WrongDimension {
                expected: 1,
                got: cycle.dimension(),
            }));
        }
        let edges = self.complex.edges();
        let mut total = 0.0f64;
        for (index, coeff) in cycle.chain().iter() {
            let [a, b] = edges[index];
            let turn = self.edge_turn(a, b);
            if turn.abs() >= std::f64::consts::PI - self.tolerances.adequacy_delta {
                return Err(FieldError::AdequacyViolation {
                    edge: [a, b],
                    angle: turn.abs(),
                });
            }
            let c = coeff
                .to_f64()
                .filter(|c| c.abs() < 2f64.powi(52))
                .ok_or(FieldError::CoefficientOverflow { edge: index })?;
            total += c * turn;
        }
        let turns = total / TAU;
        let rounded = turns.round();
        let residual = (turns - rounded).abs();
        if residual > self.tolerances.winding_residual {
            return Err(FieldError::WindingResidual { residual });
        }
        Ok(rounded as i64)
    }
}

/// An element of `H1(region) + Z` in the frame trivialization: homology
/// coordinates of the underlying loop plus the winding of the field
/// direction along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductClass {
    pub base: Vec<BigInt>,
    pub fiber: BigInt,
}

impl ProductClass {
    pub fn new(base: Vec<BigInt>, fiber: impl Into<BigInt>) -> Self {
        ProductClass {
            base,
            fiber: fiber.into(),
        }
    }

    /// Stacked coordinate vector, base first, fiber last.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let mut v = self.base.clone();
        v.push(self.fiber.clone());
        v
    }

    pub fn from_vector(mut v: Vec<BigInt>) -> Option<Self> {
        let fiber = v.pop()?;
        Some(ProductClass { base: v, fiber })
    }
}

/// The degree-0 induced datum: one marker per connected component. The
/// class of a point maps to (component, point direction class), which does
/// not depend on the field, so degree-0 comparisons always agree; the
/// markers exist so that reports cover every implemented degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub component: usize,
    pub representative_vertex: usize,
}

/// A sublattice of `H1(region) + Z` given by generating columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageLattice {
    base_rank: usize,
    matrix: IntMatrix,
}

impl ImageLattice {
    /// Builds a lattice from generator columns of length `base_rank + 1`.
    pub fn from_columns(base_rank: usize, columns: &[Vec<BigInt>]) -> Result<Self, FieldError> {
        let expected = base_rank + 1;
        for (column, col) in columns.iter().enumerate() {
            if col.len() != expected {
                return Err(FieldError::LatticeColumnLength {
                    column,
                    got: col.len(),
                    expected,
                });
            }
        }
        let matrix = IntMatrix::from_columns(expected, columns).expect("lengths checked");
        Ok(ImageLattice { base_rank, matrix })
    }

    pub fn from_classes(base_rank: usize, classes: &[ProductClass]) -> Result<Self, FieldError> {
        let columns: Vec<Vec<BigInt>> = classes.iter().map(ProductClass::to_vector).collect();
        ImageLattice::from_columns(base_rank, &columns)
    }

    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    /// Ambient rank of the product group: `base_rank + 1`.
    pub fn ambient_rank(&self) -> usize {
        self.base_rank + 1
    }

    pub fn generator_count(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.matrix.cols())
            .map(|j| self.matrix.column(j))
            .collect()
    }
}

fn check_h1(field: &FramedField, h: &HomologyGroup) -> Result<(), FieldError> {
    if !same_complex(h.complex(), field.complex()) {
        return Err(FieldError::ComplexMismatch);
    }
    if h.degree() != 1 {
        return Err(FieldError::NotDegreeOne(h.degree()));
    }
    if !h.torsion().is_empty() {
        return Err(FieldError::TorsionBasis);
    }
    Ok(())
}

/// The induced map on first homology under the frame trivialization: the
/// i-th generator maps to `(e_i, winding(field, generator_i))`.
pub fn induced_map_h1(
    field: &FramedField,
    h: &HomologyGroup,
) -> Result<Vec<ProductClass>, FieldError> {
    check_h1(field, h)?;
    let rank = h.free_rank();
    let mut classes = Vec::with_capacity(rank);
    for (i, generator) in h.generators().iter().enumerate() {
        let winding = field.winding_number(generator)?;
        let mut base = vec![BigInt::from(0); rank];
        base[i] = BigInt::from(1);
        classes.push(ProductClass::new(base, winding));
    }
    Ok(classes)
}

/// The induced datum in degree 0: component markers. Field-independent by
/// construction (any nowhere-zero field sends a point class to the same
/// product class), hence always equal between two fields on one region.
pub fn induced_map_h0(field: &FramedField) -> Vec<ComponentClass> {
    let labels = field.complex().component_labels();
    let count = field.complex().component_count();
    let mut representative = vec![usize::MAX; count];
    for (vertex, &component) in labels.iter().enumerate() {
        if representative[component] == usize::MAX {
            representative[component] = vertex;
        }
    }
    (0..count)
        .map(|component| ComponentClass {
            component,
            representative_vertex: representative[component],
        })
        .collect()
}

/// The image lattice of a single-input control system whose admissible
/// directions are the nonzero multiples of `direction`.
///
/// Over each first-homology generator `g_i` the image contains the class
/// `(e_i, winding(direction, g_i))`; the negative-multiple sheet
/// contributes the same classes because negating every sample rotates each
/// by a half turn and leaves windings unchanged.
pub fn single_input_image(
    direction: &FramedField,
    h: &HomologyGroup,
) -> Result<ImageLattice, FieldError> {
    check_h1(direction, h)?;
    let components = direction.complex().component_count();
    if components > 1 {
        return Err(FieldError::DisconnectedRegion(components));
    }
    let classes = induced_map_h1(direction, h)?;
    ImageLattice::from_classes(h.free_rank(), &classes)
}
