//! Built-in, fully specified scenarios exercising the obstruction tests
//! end to end, plus a numeric attraction checker for their fields.
//!
//! Three scenarios are built in:
//!
//! * `mobius` - a band around the doubled core loop of the Moebius band.
//!   The candidate single-input control direction turns twice in the frame
//!   while the known stabilizer does not turn at all, so both tests report
//!   an obstruction: no scalar feedback can stabilize the core circle.
//! * `annulus-orbit` - a band beside a circular periodic orbit with fields
//!   aligned with the orbit. All induced data coincide, the comparison is
//!   inconclusive by design, and only the numeric attraction probe tells
//!   the attracting variant from the repelling one.
//! * `planar-sink` - an annulus around a candidate equilibrium in the
//!   plane. The inward radial field has winding one (index test passes);
//!   a constant field and a doubled-angle field do not.

mod attraction;

pub use attraction::{
    verify_attraction, AnalyticField, AttractionError, AttractionReport, AttractionVerdict,
    TargetKind, TargetSet, TrajectoryOutcome, TrajectoryRecord, CONVERGENCE_FACTOR,
};

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::complex::{
    homology, Chain, ComplexError, Cycle, DefectReport, HomologyGroup, SimplicialComplex,
};
use crate::field::{single_input_image, FieldError, FramedField};
use crate::stabilize::{
    check_stabilizability, compare_vector_fields, index_test, CheckOutcome, CompareOutcome,
    StabilizeError,
};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("unknown scenario {0:?}; available: mobius, annulus-orbit, planar-sink")]
    UnknownScenario(String),
    #[error("scenario references missing field {0:?}")]
    MissingField(String),
    #[error("scenario references missing cycle {0:?}")]
    MissingCycle(String),
    #[error("scenario references missing attraction probe {0:?}")]
    MissingProbe(String),
    #[error("scenario mesh is invalid: {0}")]
    Mesh(#[from] DefectReport),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Stabilize(#[from] StabilizeError),
    #[error(transparent)]
    Attraction(#[from] AttractionError),
}

/// A numeric attraction probe: a closed-form field, the target set, and
/// the integration setup.
#[derive(Clone, Debug)]
pub struct AttractionProbe {
    pub field: AnalyticField,
    pub target: TargetSet,
    pub starts: Vec<[f64; 2]>,
    pub horizon: f64,
    pub step: f64,
}

impl AttractionProbe {
    pub fn run(&self) -> Result<AttractionReport, AttractionError> {
        verify_attraction(
            |p| self.field.eval(p),
            &self.target,
            &self.starts,
            self.horizon,
            self.step,
        )
    }
}

/// What a scenario promises its engines will conclude.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Expectation {
    Winding {
        field: String,
        cycle: String,
        value: i64,
    },
    CompareEqual {
        field_x: String,
        field_y: String,
    },
    CompareDistinct {
        field_x: String,
        field_y: String,
        windings: (i64, i64),
    },
    /// Check the stabilizer against the single-input image lattice of the
    /// named control direction; expected to fail with the given witness.
    CheckFail {
        stabilizer: String,
        control_direction: String,
        witness: Vec<i64>,
    },
    CheckPass {
        stabilizer: String,
        control_direction: String,
    },
    IndexTest {
        field: String,
        cycle: String,
        winding: i64,
        pass: bool,
    },
    Attraction {
        probe: String,
        verdict: AttractionVerdict,
    },
}

/// A fully specified test scenario: region, frame, fields, distinguished
/// cycles, numeric probes, and the verdicts the engines must reproduce.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: &'static str,
    /// Human description of the region and the frame convention behind
    /// the sample coordinates.
    pub frame_description: String,
    pub complex: Arc<SimplicialComplex>,
    /// Degree-1 homology with the basis pinned to the named core cycle.
    pub homology: HomologyGroup,
    pub fields: BTreeMap<String, FramedField>,
    pub cycles: BTreeMap<String, Cycle>,
    pub probes: BTreeMap<String, AttractionProbe>,
    pub expected: Vec<Expectation>,
}

/// One evaluated expectation.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioOutcome {
    pub expectation: Expectation,
    pub actual: String,
    pub matched: bool,
    /// True when the engines found a genuine obstruction (Distinct, Fail,
    /// or a failed index test). Attraction probes never set this.
    pub obstruction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioRun {
    pub scenario: String,
    pub outcomes: Vec<ScenarioOutcome>,
    pub all_matched: bool,
    pub any_obstruction: bool,
}

impl Scenario {
    pub fn names() -> [&'static str; 3] {
        ["mobius", "annulus-orbit", "planar-sink"]
    }

    pub fn by_name(name: &str) -> Result<Scenario, ScenarioError> {
        match name {
            "mobius" => build_mobius(),
            "annulus-orbit" => build_annulus_orbit(),
            "planar-sink" => build_planar_sink(),
            other => Err(ScenarioError::UnknownScenario(other.to_string())),
        }
    }

    fn field(&self, name: &str) -> Result<&FramedField, ScenarioError> {
        self.fields
            .get(name)
            .ok_or_else(|| ScenarioError::MissingField(name.to_string()))
    }

    fn cycle(&self, name: &str) -> Result<&Cycle, ScenarioError> {
        self.cycles
            .get(name)
            .ok_or_else(|| ScenarioError::MissingCycle(name.to_string()))
    }

    /// Evaluates every expectation against the engines.
    pub fn run(&self) -> Result<ScenarioRun, ScenarioError> {
        let mut outcomes = Vec::with_capacity(self.expected.len());
        for expectation in &self.expected {
            let outcome = match expectation {
                Expectation::Winding { field, cycle, value } => {
                    let w = self.field(field)?.winding_number(self.cycle(cycle)?)?;
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!("winding({field}, {cycle}) = {w}"),
                        matched: w == *value,
                        obstruction: false,
                    }
                }
                Expectation::CompareEqual { field_x, field_y } => {
                    let verdict = compare_vector_fields(
                        self.field(field_x)?,
                        self.field(field_y)?,
                        &self.homology,
                    )?;
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!("compare({field_x}, {field_y}) = {:?}", verdict.outcome),
                        matched: verdict.outcome == CompareOutcome::Equal,
                        obstruction: verdict.is_distinct(),
                    }
                }
                Expectation::CompareDistinct {
                    field_x,
                    field_y,
                    windings,
                } => {
                    let verdict = compare_vector_fields(
                        self.field(field_x)?,
                        self.field(field_y)?,
                        &self.homology,
                    )?;
                    let matched = match verdict.outcome {
                        CompareOutcome::Distinct {
                            winding_x,
                            winding_y,
                            ..
                        } => (winding_x, winding_y) == *windings,
                        CompareOutcome::Equal => false,
                    };
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!("compare({field_x}, {field_y}) = {:?}", verdict.outcome),
                        matched,
                        obstruction: verdict.is_distinct(),
                    }
                }
                Expectation::CheckFail {
                    stabilizer,
                    control_direction,
                    witness,
                } => {
                    let image =
                        single_input_image(self.field(control_direction)?, &self.homology)?;
                    let verdict =
                        check_stabilizability(self.field(stabilizer)?, &image, &self.homology)?;
                    let (matched, actual) = match &verdict.outcome {
                        CheckOutcome::Fail { witness: w, .. } => {
                            let got: Vec<i64> = w
                                .to_vector()
                                .iter()
                                .map(|x| x.to_i64().unwrap_or(i64::MAX))
                                .collect();
                            (got == *witness, format!("check = Fail, witness {got:?}"))
                        }
                        CheckOutcome::Pass { .. } => (false, "check = Pass".to_string()),
                    };
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual,
                        matched,
                        obstruction: verdict.is_fail(),
                    }
                }
                Expectation::CheckPass {
                    stabilizer,
                    control_direction,
                } => {
                    let image =
                        single_input_image(self.field(control_direction)?, &self.homology)?;
                    let verdict =
                        check_stabilizability(self.field(stabilizer)?, &image, &self.homology)?;
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!(
                            "check = {}",
                            if verdict.is_fail() { "Fail" } else { "Pass" }
                        ),
                        matched: !verdict.is_fail(),
                        obstruction: verdict.is_fail(),
                    }
                }
                Expectation::IndexTest {
                    field,
                    cycle,
                    winding,
                    pass,
                } => {
                    let verdict = index_test(self.field(field)?, self.cycle(cycle)?, true)?;
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!(
                            "index: winding {} ({})",
                            verdict.winding,
                            if verdict.pass { "pass" } else { "fail" }
                        ),
                        matched: verdict.winding == *winding && verdict.pass == *pass,
                        obstruction: !verdict.pass,
                    }
                }
                Expectation::Attraction { probe, verdict } => {
                    let spec = self
                        .probes
                        .get(probe)
                        .ok_or_else(|| ScenarioError::MissingProbe(probe.to_string()))?;
                    let report = spec.run()?;
                    ScenarioOutcome {
                        expectation: expectation.clone(),
                        actual: format!("attraction({probe}) = {:?}", report.verdict),
                        matched: report.verdict == *verdict,
                        obstruction: false,
                    }
                }
            };
            outcomes.push(outcome);
        }
        Ok(ScenarioRun {
            scenario: self.name.to_string(),
            all_matched: outcomes.iter().all(|o| o.matched),
            any_obstruction: outcomes.iter().any(|o| o.obstruction),
            outcomes,
        })
    }
}

/// Triangulated cylinder grid: `around` columns of `levels` vertices, ring
/// edges, rungs, and one diagonal per quad. Returns the complex and one
/// ring cycle per level, each oriented in the direction of increasing
/// column index.
fn cylinder_grid(
    around: usize,
    levels: usize,
) -> Result<(Arc<SimplicialComplex>, Vec<Cycle>), ScenarioError> {
    assert!(around >= 3 && levels >= 1);
    let vertex = |i: usize, j: usize| -> usize { (i % around) * levels + j };
    let sorted2 = |a: usize, b: usize| -> [usize; 2] { [a.min(b), a.max(b)] };

    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for i in 0..around {
        for j in 0..levels {
            edges.push(sorted2(vertex(i, j), vertex(i + 1, j)));
            if j + 1 < levels {
                edges.push(sorted2(vertex(i, j), vertex(i, j + 1)));
                edges.push(sorted2(vertex(i, j), vertex(i + 1, j + 1)));
                let mut t1 = [vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)];
                let mut t2 = [vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)];
                t1.sort_unstable();
                t2.sort_unstable();
                triangles.push(t1);
                triangles.push(t2);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    triangles.sort_unstable();
    triangles.dedup();
    let complex = Arc::new(SimplicialComplex::from_simplices(
        around * levels,
        edges,
        triangles,
    )?);

    let mut rings = Vec::with_capacity(levels);
    for j in 0..levels {
        let mut chain = Chain::zero(1);
        for i in 0..around {
            let a = vertex(i, j);
            let b = vertex(i + 1, j);
            let index = complex
                .edge_position(sorted2(a, b))
                .expect("ring edge exists");
            let sign = if a < b { 1 } else { -1 };
            chain.add_term(index, BigInt::from(sign));
        }
        rings.push(Cycle::new(Arc::clone(&complex), chain)?);
    }
    Ok((complex, rings))
}

/// Default circumferential resolution per sheet of the band scenarios.
pub const DEFAULT_SUBDIVISIONS: usize = 32;

/// The band around the doubled core loop of the Moebius band, at the
/// default resolution.
pub fn build_mobius() -> Result<Scenario, ScenarioError> {
    build_mobius_with(DEFAULT_SUBDIVISIONS)
}

/// Same scenario at a chosen circumferential resolution per sheet.
///
/// The band is the quotient of two strips (one on each side of the core
/// circle) glued end to end by the orientation-reversing identification of
/// the underlying band, i.e. a single combinatorial annulus whose ring
/// direction traverses the core circle twice. The seam gluing is realized
/// by column-index arithmetic so no simplex is doubled. The frame is
/// (circumferential direction, vertical stabilizer direction); the core
/// loop cycle sits at the middle of three radial levels.
pub fn build_mobius_with(subdivisions_per_sheet: usize) -> Result<Scenario, ScenarioError> {
    let around = 2 * subdivisions_per_sheet;
    let (complex, rings) = cylinder_grid(around, 3)?;
    let core = rings[1].clone();
    let h1 = homology(&complex, 1)?.with_basis(vec![core.clone()])?;

    // Sample angle at column i: the chart coordinate runs twice around the
    // base circle along the ring direction.
    let theta = |i: usize| TAU * (i as f64) / (subdivisions_per_sheet as f64);
    let mut candidate = Vec::with_capacity(complex.vertex_count());
    for i in 0..around {
        for _ in 0..3 {
            candidate.push([theta(i).cos(), theta(i).sin()]);
        }
    }
    let stabilizer = vec![[0.0, 1.0]; complex.vertex_count()];

    let mut fields = BTreeMap::new();
    fields.insert(
        "X".to_string(),
        FramedField::new(Arc::clone(&complex), candidate)?,
    );
    fields.insert(
        "Y".to_string(),
        FramedField::new(Arc::clone(&complex), stabilizer)?,
    );

    let mut cycles = BTreeMap::new();
    cycles.insert("core".to_string(), core);

    let mut probes = BTreeMap::new();
    probes.insert(
        "stabilizer-flow".to_string(),
        AttractionProbe {
            field: AnalyticField::VerticalDecay,
            target: TargetSet {
                kind: TargetKind::HorizontalAxis,
                escape_distance: 10.0,
            },
            starts: vec![[0.0, 1.0]],
            horizon: 20.0,
            step: 0.01,
        },
    );

    let expected = vec![
        Expectation::Winding {
            field: "X".to_string(),
            cycle: "core".to_string(),
            value: 2,
        },
        Expectation::Winding {
            field: "Y".to_string(),
            cycle: "core".to_string(),
            value: 0,
        },
        Expectation::CompareDistinct {
            field_x: "X".to_string(),
            field_y: "Y".to_string(),
            windings: (2, 0),
        },
        Expectation::CheckFail {
            stabilizer: "Y".to_string(),
            control_direction: "X".to_string(),
            witness: vec![1, 0],
        },
        Expectation::Attraction {
            probe: "stabilizer-flow".to_string(),
            verdict: AttractionVerdict::Converged,
        },
    ];

    Ok(Scenario {
        name: "mobius",
        frame_description: format!(
            "band around the doubled core loop of the Moebius band; the region is a \
             combinatorial annulus with {around} columns (the seam identification is \
             absorbed into column arithmetic) and 3 radial levels; frame = \
             (circumferential direction, vertical stabilizer direction); samples of X \
             rotate once per base-circle turn, i.e. twice along the core loop"
        ),
        complex,
        homology: h1,
        fields,
        cycles,
        probes,
        expected,
    })
}

/// A band on one side of a circular periodic orbit, orbit-aligned fields.
///
/// The punctured neighborhood of a two-sided orbit has two components;
/// this scenario analyzes the outer one (the inner is symmetric). All
/// fields point along the orbit direction, their induced data coincide,
/// and the comparison is inconclusive no matter whether the orbit attracts
/// or repels; the numeric probes tell those apart instead.
pub fn build_annulus_orbit() -> Result<Scenario, ScenarioError> {
    let around = 64;
    let radii = [1.25, 1.5, 1.75];
    let orbit_radius = 1.0;
    let (complex, rings) = cylinder_grid(around, 3)?;
    let parallel = rings[1].clone();
    let h1 = homology(&complex, 1)?.with_basis(vec![parallel.clone()])?;

    let phi = |i: usize| TAU * (i as f64) / (around as f64);
    let mut tangent_unit = Vec::new();
    let mut tangent_scaled = Vec::new();
    let mut attracting = Vec::new();
    let mut repelling = Vec::new();
    for i in 0..around {
        for &r in &radii {
            tangent_unit.push([1.0, 0.0]);
            tangent_scaled.push([2.0 + phi(i).cos(), 0.0]);
            attracting.push([1.0, -(r - orbit_radius)]);
            repelling.push([1.0, r - orbit_radius]);
        }
    }

    let mut fields = BTreeMap::new();
    for (name, samples) in [
        ("tangent-unit", tangent_unit),
        ("tangent-scaled", tangent_scaled),
        ("attracting", attracting),
        ("repelling", repelling),
    ] {
        fields.insert(
            name.to_string(),
            FramedField::new(Arc::clone(&complex), samples)?,
        );
    }

    let mut cycles = BTreeMap::new();
    cycles.insert("orbit-parallel".to_string(), parallel);

    let target = TargetSet {
        kind: TargetKind::Circle {
            center: [0.0, 0.0],
            radius: orbit_radius,
        },
        escape_distance: 1.0,
    };
    let mut probes = BTreeMap::new();
    probes.insert(
        "attracting-orbit".to_string(),
        AttractionProbe {
            field: AnalyticField::OrbitRadial {
                radius: orbit_radius,
                attracting: true,
            },
            target,
            starts: vec![[1.3, 0.0]],
            horizon: 20.0,
            step: 0.01,
        },
    );
    probes.insert(
        "repelling-orbit".to_string(),
        AttractionProbe {
            field: AnalyticField::OrbitRadial {
                radius: orbit_radius,
                attracting: false,
            },
            target,
            starts: vec![[1.3, 0.0]],
            horizon: 20.0,
            step: 0.01,
        },
    );

    let expected = vec![
        Expectation::Winding {
            field: "tangent-unit".to_string(),
            cycle: "orbit-parallel".to_string(),
            value: 0,
        },
        Expectation::Winding {
            field: "tangent-scaled".to_string(),
            cycle: "orbit-parallel".to_string(),
            value: 0,
        },
        Expectation::CompareEqual {
            field_x: "tangent-unit".to_string(),
            field_y: "tangent-scaled".to_string(),
        },
        Expectation::CompareEqual {
            field_x: "attracting".to_string(),
            field_y: "repelling".to_string(),
        },
        Expectation::CompareEqual {
            field_x: "tangent-unit".to_string(),
            field_y: "attracting".to_string(),
        },
        Expectation::Attraction {
            probe: "attracting-orbit".to_string(),
            verdict: AttractionVerdict::Converged,
        },
        Expectation::Attraction {
            probe: "repelling-orbit".to_string(),
            verdict: AttractionVerdict::Diverged,
        },
    ];

    Ok(Scenario {
        name: "annulus-orbit",
        frame_description: "outer band beside a circular periodic orbit of radius 1; \
                            64 columns, radial levels 1.25, 1.5, 1.75; frame = \
                            (orbit direction, outward radial direction); all discrete \
                            fields are orbit-aligned, so every comparison is Equal and \
                            deliberately inconclusive, while the attraction probes \
                            distinguish the attracting and repelling closed-form \
                            variants"
            .to_string(),
        complex,
        homology: h1,
        fields,
        cycles,
        probes,
        expected,
    })
}

/// An annulus around a candidate equilibrium at the origin of the plane,
/// standard frame, with the index test examples.
pub fn build_planar_sink() -> Result<Scenario, ScenarioError> {
    let around = 64;
    let radii = [0.5, 1.0, 1.5];
    let (complex, rings) = cylinder_grid(around, 3)?;
    let unit_circle = rings[1].clone();
    let h1 = homology(&complex, 1)?.with_basis(vec![unit_circle.clone()])?;

    let phi = |i: usize| TAU * (i as f64) / (around as f64);
    let mut radial = Vec::new();
    let mut constant = Vec::new();
    let mut doubled = Vec::new();
    for i in 0..around {
        for &r in &radii {
            let (x, y) = (r * phi(i).cos(), r * phi(i).sin());
            radial.push([-x, -y]);
            constant.push([1.0, 0.0]);
            doubled.push([x * x - y * y, 2.0 * x * y]);
        }
    }

    let mut fields = BTreeMap::new();
    for (name, samples) in [
        ("radial", radial),
        ("constant", constant),
        ("doubled-angle", doubled),
    ] {
        fields.insert(
            name.to_string(),
            FramedField::new(Arc::clone(&complex), samples)?,
        );
    }

    let mut cycles = BTreeMap::new();
    cycles.insert("unit-circle".to_string(), unit_circle);

    let mut probes = BTreeMap::new();
    probes.insert(
        "radial-sink".to_string(),
        AttractionProbe {
            field: AnalyticField::RadialSink,
            target: TargetSet {
                kind: TargetKind::Point([0.0, 0.0]),
                escape_distance: 10.0,
            },
            starts: vec![[1.0, 0.0]],
            horizon: 20.0,
            step: 0.01,
        },
    );
    probes.insert(
        "radial-source".to_string(),
        AttractionProbe {
            field: AnalyticField::RadialSource,
            target: TargetSet {
                kind: TargetKind::Point([0.0, 0.0]),
                escape_distance: 10.0,
            },
            starts: vec![[0.1, 0.0]],
            horizon: 20.0,
            step: 0.01,
        },
    );

    let expected = vec![
        Expectation::IndexTest {
            field: "radial".to_string(),
            cycle: "unit-circle".to_string(),
            winding: 1,
            pass: true,
        },
        Expectation::IndexTest {
            field: "constant".to_string(),
            cycle: "unit-circle".to_string(),
            winding: 0,
            pass: false,
        },
        Expectation::IndexTest {
            field: "doubled-angle".to_string(),
            cycle: "unit-circle".to_string(),
            winding: 2,
            pass: false,
        },
        Expectation::CompareDistinct {
            field_x: "radial".to_string(),
            field_y: "constant".to_string(),
            windings: (1, 0),
        },
        Expectation::Attraction {
            probe: "radial-sink".to_string(),
            verdict: AttractionVerdict::Converged,
        },
        Expectation::Attraction {
            probe: "radial-source".to_string(),
            verdict: AttractionVerdict::Diverged,
        },
    ];

    Ok(Scenario {
        name: "planar-sink",
        frame_description: "annulus around the origin of the plane, radii 0.5, 1.0, \
                            1.5 with 64 columns; frame = standard plane frame \
                            (d/dx, d/dy); samples evaluate closed-form fields at the \
                            vertex positions"
            .to_string(),
        complex,
        homology: h1,
        fields,
        cycles,
        probes,
        expected,
    })
}
