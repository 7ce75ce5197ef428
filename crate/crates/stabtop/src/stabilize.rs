//! Decision engines for the stabilizability obstruction tests.
//!
//! Two tests are implemented, both necessary conditions. The comparison
//! test: if two nowhere-zero fields on the punctured neighborhood induce
//! different data on homology they are not homotopic through nowhere-zero
//! fields, and then at most one of them can render the target set
//! asymptotically stable. The inclusion test: if a known stabilizer's
//! induced classes escape the image lattice realized by a control system,
//! no admissible feedback produces a stabilizing closed-loop field.
//!
//! Verdicts carry everything needed to re-check them: witnesses,
//! membership coefficients, and refutation functionals. A passing outcome
//! is always inconclusive for stability; only failures certify anything.

use num_bigint::BigInt;

use crate::abelian::{lattice_member, AbelianError, Membership, Refutation};
use crate::complex::{same_complex, Cycle, HomologyGroup};
use crate::field::{induced_map_h0, induced_map_h1, FieldError, FramedField, ImageLattice, ProductClass};

/// Report slug for the homotopy-comparison necessary condition.
pub const TEST_COMPARE: &str = "nowhere-zero-homotopy-necessity";
/// Report slug for the image-lattice inclusion necessary condition.
pub const TEST_CHECK: &str = "image-lattice-inclusion-necessity";
/// Report slug for the planar equilibrium index necessary condition.
pub const TEST_INDEX: &str = "planar-equilibrium-index";

#[derive(Debug, thiserror::Error)]
pub enum StabilizeError {
    #[error("the two fields live on different complexes")]
    MismatchedComplexes,
    #[error(
        "image lattice ambient rank {got} does not match the region's product rank {expected}"
    )]
    AmbientMismatch { expected: usize, got: usize },
    #[error("the index test applies to planar framed regions only; set the planar flag once the region is known to carry the standard plane frame")]
    NonPlanarAmbient,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Outcome of comparing the induced homology data of two fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareOutcome {
    /// All induced data agree. Inconclusive: agreement never certifies
    /// stability, it only fails to rule anything out.
    Equal,
    /// The fields differ on a generator; the winding pair certifies it.
    Distinct {
        witness_generator: usize,
        winding_x: i64,
        winding_y: i64,
    },
}

#[derive(Clone, Debug)]
pub struct CompareVerdict {
    pub outcome: CompareOutcome,
    /// Homology degrees covered by the comparison.
    pub degrees_checked: Vec<usize>,
    /// Number of degree-0 component markers (equal for both fields by
    /// construction).
    pub component_markers: usize,
    pub test: &'static str,
    pub interpretation: String,
}

impl CompareVerdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self.outcome, CompareOutcome::Distinct { .. })
    }
}

/// Compares the induced homology data of two fields over the same framed
/// region in degrees 0 and 1.
pub fn compare_vector_fields(
    x: &FramedField,
    y: &FramedField,
    h: &HomologyGroup,
) -> Result<CompareVerdict, StabilizeError> {
    if !same_complex(x.complex(), y.complex()) {
        return Err(StabilizeError::MismatchedComplexes);
    }
    let classes_x = induced_map_h1(x, h)?;
    let classes_y = induced_map_h1(y, h)?;
    let component_markers = induced_map_h0(x).len();

    for (i, (cx, cy)) in classes_x.iter().zip(classes_y.iter()).enumerate() {
        if cx != cy {
            let winding_x = bigint_to_i64(&cx.fiber);
            let winding_y = bigint_to_i64(&cy.fiber);
            return Ok(CompareVerdict {
                outcome: CompareOutcome::Distinct {
                    witness_generator: i,
                    winding_x,
                    winding_y,
                },
                degrees_checked: vec![0, 1],
                component_markers,
                test: TEST_COMPARE,
                interpretation: format!(
                    "the fields induce different data on homology generator {i} \
                     (windings {winding_x} vs {winding_y}); they are not homotopic \
                     through nowhere-zero vector fields on this region, so at most \
                     one of them can render the enclosed set asymptotically stable"
                ),
            });
        }
    }
    Ok(CompareVerdict {
        outcome: CompareOutcome::Equal,
        degrees_checked: vec![0, 1],
        component_markers,
        test: TEST_COMPARE,
        interpretation: "induced homology data agree in degrees 0 and 1; inconclusive \
                         for stability: agreement does not imply that either field \
                         stabilizes the enclosed set"
            .to_string(),
    })
}

/// Outcome of the image-lattice inclusion test.
#[derive(Clone, Debug)]
pub enum CheckOutcome {
    /// Every stabilizer class lies in the image lattice; the membership
    /// coefficients reconstruct each class exactly.
    Pass { coefficients: Vec<Vec<BigInt>> },
    /// A stabilizer class escapes the image lattice.
    Fail {
        witness: ProductClass,
        refutation: Refutation,
    },
}

#[derive(Clone, Debug)]
pub struct StabilizabilityVerdict {
    pub outcome: CheckOutcome,
    /// Classes induced by the declared stabilizer, one per generator.
    pub stabilizer_classes: Vec<ProductClass>,
    /// The image lattice the classes were tested against.
    pub image: ImageLattice,
    pub test: &'static str,
    pub interpretation: String,
}

impl StabilizabilityVerdict {
    pub fn is_fail(&self) -> bool {
        matches!(self.outcome, CheckOutcome::Fail { .. })
    }
}

/// Tests whether the classes induced by a declared stabilizer lie in the
/// image lattice realized by a control system over the same region.
///
/// A failure certifies that no admissible feedback makes the enclosed set
/// asymptotically stable for the closed-loop field, given that it is
/// asymptotically stable for the declared stabilizer.
pub fn check_stabilizability(
    stabilizer: &FramedField,
    image: &ImageLattice,
    h: &HomologyGroup,
) -> Result<StabilizabilityVerdict, StabilizeError> {
    let classes = induced_map_h1(stabilizer, h)?;
    let expected = h.free_rank() + 1;
    if image.ambient_rank() != expected {
        return Err(StabilizeError::AmbientMismatch {
            expected,
            got: image.ambient_rank(),
        });
    }
    let mut coefficients = Vec::with_capacity(classes.len());
    for class in &classes {
        match lattice_member(&class.to_vector(), image.matrix())? {
            Membership::Member { coefficients: c } => coefficients.push(c),
            Membership::NotMember { refutation } => {
                return Ok(StabilizabilityVerdict {
                    outcome: CheckOutcome::Fail {
                        witness: class.clone(),
                        refutation,
                    },
                    stabilizer_classes: classes.clone(),
                    image: image.clone(),
                    test: TEST_CHECK,
                    interpretation:
                        "a class induced by the declared stabilizer lies outside the \
                         image lattice of the control system; no admissible feedback \
                         yields a closed-loop field rendering the enclosed set \
                         asymptotically stable"
                            .to_string(),
                });
            }
        }
    }
    Ok(StabilizabilityVerdict {
        outcome: CheckOutcome::Pass { coefficients },
        stabilizer_classes: classes,
        image: image.clone(),
        test: TEST_CHECK,
        interpretation: "every class induced by the declared stabilizer lies in the \
                         image lattice; the necessary condition holds, which is \
                         inconclusive for the existence of a stabilizing feedback"
            .to_string(),
    })
}

/// Outcome of the planar index test around a candidate equilibrium.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVerdict {
    pub winding: i64,
    pub pass: bool,
    pub test: &'static str,
    pub interpretation: String,
}

/// Index test for a point target in a planar framed region: a field that
/// renders a point asymptotically stable in the plane has winding one
/// along any small cycle enclosing it once positively (compare with the
/// inward radial reference field). Any other winding certifies that the
/// point is not asymptotically stable for this field.
///
/// The enclosing hypothesis (the cycle surrounds the candidate point once,
/// positively, and the frame is the standard plane frame) cannot be seen
/// from the combinatorial data, so the caller attests it with `planar`.
pub fn index_test(
    field: &FramedField,
    cycle: &Cycle,
    planar: bool,
) -> Result<IndexVerdict, StabilizeError> {
    if !planar {
        return Err(StabilizeError::NonPlanarAmbient);
    }
    let winding = field.winding_number(cycle)?;
    let pass = winding == 1;
    let interpretation = if pass {
        "winding 1 along the enclosing cycle matches the index of an asymptotically \
         stable planar equilibrium; inconclusive for stability"
            .to_string()
    } else {
        format!(
            "winding {winding} != 1 along the enclosing cycle; a planar field with an \
             asymptotically stable equilibrium inside has index 1 there, so the \
             enclosed point is not asymptotically stable for this field"
        )
    };
    Ok(IndexVerdict {
        winding,
        pass,
        test: TEST_INDEX,
        interpretation,
    })
}

fn bigint_to_i64(x: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    x.to_i64().expect("winding numbers fit in 64 bits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology;
    use crate::field::single_input_image;
    use std::f64::consts::TAU;
    use std::sync::Arc;

    fn ring_with_fields(
        n: usize,
        rate_x: f64,
        rate_y: f64,
    ) -> (FramedField, FramedField, HomologyGroup) {
        let (complex, cycle) = crate::field::test_fixtures::ring(n);
        let h1 = homology(&complex, 1)
            .unwrap()
            .with_basis(vec![cycle])
            .unwrap();
        let make = |rate: f64| {
            let samples: Vec<[f64; 2]> = (0..n)
                .map(|i| {
                    let t = rate * TAU * (i as f64) / (n as f64);
                    [t.cos(), t.sin()]
                })
                .collect();
            FramedField::new(Arc::clone(&complex), samples).unwrap()
        };
        (make(rate_x), make(rate_y), h1)
    }

    #[test]
    fn distinct_fields_have_a_witness() {
        let (x, y, h1) = ring_with_fields(64, 2.0, 0.0);
        let verdict = compare_vector_fields(&x, &y, &h1).unwrap();
        match verdict.outcome {
            CompareOutcome::Distinct {
                witness_generator,
                winding_x,
                winding_y,
            } => {
                assert_eq!(witness_generator, 0);
                assert_eq!((winding_x, winding_y), (2, 0));
            }
            other => panic!("expected distinct, got {other:?}"),
        }
        assert_eq!(verdict.degrees_checked, vec![0, 1]);
    }

    #[test]
    fn comparison_is_symmetric() {
        let (x, y, h1) = ring_with_fields(64, 2.0, 0.0);
        let xy = compare_vector_fields(&x, &y, &h1).unwrap();
        let yx = compare_vector_fields(&y, &x, &h1).unwrap();
        match (xy.outcome, yx.outcome) {
            (
                CompareOutcome::Distinct {
                    winding_x: a,
                    winding_y: b,
                    ..
                },
                CompareOutcome::Distinct {
                    winding_x: c,
                    winding_y: d,
                    ..
                },
            ) => assert_eq!((a, b), (d, c)),
            other => panic!("expected two distinct verdicts, got {other:?}"),
        }
    }

    #[test]
    fn field_equals_itself_and_its_rescalings() {
        let (x, _, h1) = ring_with_fields(32, 1.0, 0.0);
        let verdict = compare_vector_fields(&x, &x, &h1).unwrap();
        assert!(matches!(verdict.outcome, CompareOutcome::Equal));

        let rescaled: Vec<[f64; 2]> = x
            .samples()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let k = 0.5 + (i % 7) as f64;
                [k * s[0], k * s[1]]
            })
            .collect();
        let xs = FramedField::new(Arc::clone(x.complex()), rescaled).unwrap();
        let verdict = compare_vector_fields(&x, &xs, &h1).unwrap();
        assert!(matches!(verdict.outcome, CompareOutcome::Equal));
    }

    #[test]
    fn own_single_input_image_always_passes() {
        let (x, _, h1) = ring_with_fields(64, 2.0, 0.0);
        let image = single_input_image(&x, &h1).unwrap();
        let verdict = check_stabilizability(&x, &image, &h1).unwrap();
        match verdict.outcome {
            CheckOutcome::Pass { coefficients } => {
                // each class is a lattice generator, coefficient one
                assert_eq!(coefficients.len(), 1);
                assert_eq!(coefficients[0], vec![BigInt::from(1)]);
            }
            other => panic!("expected pass, got {other:?}"),
        }
    }

    #[test]
    fn failing_check_is_self_certifying() {
        let (x, y, h1) = ring_with_fields(64, 2.0, 0.0);
        // control directions x realize (1, 2); stabilizer y induces (1, 0)
        let image = single_input_image(&x, &h1).unwrap();
        let verdict = check_stabilizability(&y, &image, &h1).unwrap();
        match &verdict.outcome {
            CheckOutcome::Fail {
                witness,
                refutation,
            } => {
                assert_eq!(witness.to_vector(), vec![BigInt::from(1), BigInt::from(0)]);
                // re-run the membership query on the emitted data
                let again = lattice_member(&witness.to_vector(), verdict.image.matrix()).unwrap();
                assert!(!again.is_member());
                assert!(refutation.verify(&witness.to_vector(), verdict.image.matrix()));
            }
            other => panic!("expected fail, got {other:?}"),
        }
    }

    #[test]
    fn full_lattice_passes_anything() {
        let (x, _, h1) = ring_with_fields(64, 2.0, 0.0);
        let full = ImageLattice::from_columns(
            1,
            &[
                vec![BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1)],
            ],
        )
        .unwrap();
        let verdict = check_stabilizability(&x, &full, &h1).unwrap();
        assert!(!verdict.is_fail());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let (x, _, h1) = ring_with_fields(32, 1.0, 0.0);
        let lattice = ImageLattice::from_columns(2, &[]).unwrap();
        assert!(matches!(
            check_stabilizability(&x, &lattice, &h1),
            Err(StabilizeError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn index_test_on_rotation_rates() {
        let (complex, cycle) = crate::field::test_fixtures::ring(64);
        let sample_rate = |rate: f64| -> FramedField {
            let samples: Vec<[f64; 2]> = (0..64)
                .map(|i| {
                    let t = rate * TAU * (i as f64) / 64.0;
                    [t.cos(), t.sin()]
                })
                .collect();
            FramedField::new(Arc::clone(&complex), samples).unwrap()
        };
        let radial_like = index_test(&sample_rate(1.0), &cycle, true).unwrap();
        assert!(radial_like.pass);
        assert_eq!(radial_like.winding, 1);
        let constant = index_test(&sample_rate(0.0), &cycle, true).unwrap();
        assert!(!constant.pass);
        assert_eq!(constant.winding, 0);
        assert!(matches!(
            index_test(&sample_rate(1.0), &cycle, false),
            Err(StabilizeError::NonPlanarAmbient)
        ));
    }
}
