//! Numeric sanity checks of attraction claims by trajectory integration.
//!
//! This is advisory plumbing only: the topological verdicts are statements
//! about exact dynamics and never depend on these numerics. The checker
//! exists so that scenario hypotheses of the form "this field renders the
//! set asymptotically stable" can be probed rather than taken on faith.

use serde::Serialize;

/// Convergence criterion: final distance below this factor times the
/// initial distance counts as converged.
pub const CONVERGENCE_FACTOR: f64 = 1e-3;

/// Closed-form planar vector fields used by the built-in scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum AnalyticField {
    /// `v(p) = -p`: everything spirals straight into the origin.
    RadialSink,
    /// `v(p) = +p`: the time reversal of the sink.
    RadialSource,
    Constant([f64; 2]),
    /// Unit angular speed around the origin plus radial relaxation toward
    /// (attracting) or away from (repelling) the circle of the given
    /// radius. Undefined at the origin.
    OrbitRadial { radius: f64, attracting: bool },
    /// `v(x, y) = (0, -y)`: decay onto the horizontal axis.
    VerticalDecay,
    /// `v(x, y) = (0, +y)`.
    VerticalGrowth,
}

impl AnalyticField {
    pub fn eval(&self, p: [f64; 2]) -> Option<[f64; 2]> {
        match *self {
            AnalyticField::RadialSink => Some([-p[0], -p[1]]),
            AnalyticField::RadialSource => Some([p[0], p[1]]),
            AnalyticField::Constant(v) => Some(v),
            AnalyticField::OrbitRadial { radius, attracting } => {
                let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
                if r == 0.0 {
                    return None;
                }
                let sign = if attracting { -1.0 } else { 1.0 };
                let radial = sign * (r - radius) / r;
                Some([-p[1] + radial * p[0], p[0] + radial * p[1]])
            }
            AnalyticField::VerticalDecay => Some([0.0, -p[1]]),
            AnalyticField::VerticalGrowth => Some([0.0, p[1]]),
        }
    }
}

/// Shape of the target set in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TargetKind {
    Point([f64; 2]),
    Circle { center: [f64; 2], radius: f64 },
    /// The line `y = 0`; distance is `|y|`.
    HorizontalAxis,
}

/// A target set plus the declared chart region: a trajectory whose
/// distance to the target exceeds `escape_distance` has left the region
/// and counts as diverged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TargetSet {
    pub kind: TargetKind,
    pub escape_distance: f64,
}

impl TargetSet {
    pub fn distance(&self, p: [f64; 2]) -> f64 {
        match self.kind {
            TargetKind::Point(q) => ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt(),
            TargetKind::Circle { center, radius } => {
                let r = ((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt();
                (r - radius).abs()
            }
            TargetKind::HorizontalAxis => p[1].abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AttractionVerdict {
    Converged,
    Diverged,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TrajectoryOutcome {
    Converged,
    Diverged { at_time: f64 },
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryRecord {
    pub start: [f64; 2],
    pub final_point: [f64; 2],
    pub initial_distance: f64,
    pub final_distance: f64,
    pub outcome: TrajectoryOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct AttractionReport {
    pub trajectories: Vec<TrajectoryRecord>,
    pub horizon: f64,
    pub step: f64,
    pub verdict: AttractionVerdict,
}

#[derive(Debug, thiserror::Error)]
pub enum AttractionError {
    #[error("horizon and step must be positive (got horizon {horizon}, step {step})")]
    BadParameters { horizon: f64, step: f64 },
    #[error(
        "sampler undefined at ({:.6}, {:.6}) at time {time:.6}; the trajectory left the chart",
        point[0], point[1]
    )]
    SamplerUndefined { point: [f64; 2], time: f64 },
}

/// Integrates each start point with the classic fixed-step fourth-order
/// scheme up to the horizon.
///
/// A trajectory is converged when its final distance to the target is
/// below `CONVERGENCE_FACTOR` times its initial distance, diverged when
/// its distance leaves the declared region before the horizon, and
/// inconclusive otherwise. The overall verdict is converged when every
/// trajectory converged, diverged when any trajectory diverged, and
/// inconclusive otherwise.
pub fn verify_attraction<F>(
    field: F,
    target: &TargetSet,
    starts: &[[f64; 2]],
    horizon: f64,
    step: f64,
) -> Result<AttractionReport, AttractionError>
where
    F: Fn([f64; 2]) -> Option<[f64; 2]>,
{
    if !(horizon > 0.0) || !(step > 0.0) {
        return Err(AttractionError::BadParameters { horizon, step });
    }
    let mut trajectories = Vec::with_capacity(starts.len());
    for &start in starts {
        trajectories.push(integrate(&field, target, start, horizon, step)?);
    }
    let verdict = if trajectories
        .iter()
        .any(|t| matches!(t.outcome, TrajectoryOutcome::Diverged { .. }))
    {
        AttractionVerdict::Diverged
    } else if trajectories
        .iter()
        .all(|t| matches!(t.outcome, TrajectoryOutcome::Converged))
    {
        AttractionVerdict::Converged
    } else {
        AttractionVerdict::Inconclusive
    };
    Ok(AttractionReport {
        trajectories,
        horizon,
        step,
        verdict,
    })
}

fn integrate<F>(
    field: &F,
    target: &TargetSet,
    start: [f64; 2],
    horizon: f64,
    step: f64,
) -> Result<TrajectoryRecord, AttractionError>
where
    F: Fn([f64; 2]) -> Option<[f64; 2]>,
{
    let initial_distance = target.distance(start);
    let full_steps = (horizon / step + 1e-12).floor() as u64;
    let remainder = horizon - (full_steps as f64) * step;

    let mut p = start;
    let mut t = 0.0;
    let mut diverged_at = None;

    let advance = |p: &mut [f64; 2], t: &mut f64, h: f64| -> Result<bool, AttractionError> {
        let eval = |q: [f64; 2], time: f64| {
            field(q).ok_or(AttractionError::SamplerUndefined {
                point: q,
                time,
            })
        };
        let k1 = eval(*p, *t)?;
        let k2 = eval(
            [p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]],
            *t + 0.5 * h,
        )?;
        let k3 = eval(
            [p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]],
            *t + 0.5 * h,
        )?;
        let k4 = eval([p[0] + h * k3[0], p[1] + h * k3[1]], *t + h)?;
        p[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        p[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        *t += h;
        Ok(target.distance(*p) > target.escape_distance)
    };

    for i in 0..full_steps {
        t = (i as f64) * step;
        if advance(&mut p, &mut t, step)? {
            diverged_at = Some(t);
            break;
        }
    }
    if diverged_at.is_none() && remainder > 1e-12 {
        if advance(&mut p, &mut t, remainder)? {
            diverged_at = Some(t);
        }
    }

    let final_distance = target.distance(p);
    let outcome = match diverged_at {
        Some(at_time) => TrajectoryOutcome::Diverged { at_time },
        None if final_distance < CONVERGENCE_FACTOR * initial_distance => {
            TrajectoryOutcome::Converged
        }
        None => TrajectoryOutcome::Inconclusive,
    };
    Ok(TrajectoryRecord {
        start,
        final_point: p,
        initial_distance,
        final_distance,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin_target() -> TargetSet {
        TargetSet {
            kind: TargetKind::Point([0.0, 0.0]),
            escape_distance: 10.0,
        }
    }

    #[test]
    fn radial_sink_converges() {
        let report = verify_attraction(
            |p| AnalyticField::RadialSink.eval(p),
            &origin_target(),
            &[[1.0, 0.0]],
            20.0,
            0.01,
        )
        .unwrap();
        assert_eq!(report.verdict, AttractionVerdict::Converged);
    }

    #[test]
    fn radial_source_diverges() {
        let report = verify_attraction(
            |p| AnalyticField::RadialSource.eval(p),
            &origin_target(),
            &[[0.1, 0.0]],
            20.0,
            0.01,
        )
        .unwrap();
        assert_eq!(report.verdict, AttractionVerdict::Diverged);
        match report.trajectories[0].outcome {
            TrajectoryOutcome::Diverged { at_time } => {
                // 0.1 * e^t = 10 at t = ln(100) ~ 4.6
                assert!((at_time - 100f64.ln()).abs() < 0.1);
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn vertical_decay_matches_closed_form() {
        let target = TargetSet {
            kind: TargetKind::HorizontalAxis,
            escape_distance: 10.0,
        };
        let report = verify_attraction(
            |p| AnalyticField::VerticalDecay.eval(p),
            &target,
            &[[0.0, 1.0]],
            1.0,
            1e-3,
        )
        .unwrap();
        let expected = (-1.0f64).exp();
        let got = report.trajectories[0].final_distance;
        assert!(
            (got - expected).abs() / expected < 1e-6,
            "got {got}, expected {expected}"
        );
    }

    #[test]
    fn constant_field_is_inconclusive_within_region() {
        let report = verify_attraction(
            |p| AnalyticField::Constant([1.0, 0.0]).eval(p),
            &origin_target(),
            &[[1.0, 0.0]],
            2.0,
            0.01,
        )
        .unwrap();
        assert_eq!(report.verdict, AttractionVerdict::Inconclusive);
    }

    #[test]
    fn undefined_sampler_is_an_error() {
        let target = origin_target();
        let result = verify_attraction(
            |p| {
                if p[0] > 1.5 {
                    None
                } else {
                    Some([1.0, 0.0])
                }
            },
            &target,
            &[[1.0, 0.0]],
            2.0,
            0.01,
        );
        assert!(matches!(
            result,
            Err(AttractionError::SamplerUndefined { .. })
        ));
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let target = origin_target();
        assert!(matches!(
            verify_attraction(|p| Some(p), &target, &[], -1.0, 0.01),
            Err(AttractionError::BadParameters { .. })
        ));
    }

    #[test]
    fn orbit_radial_relaxes_onto_the_circle() {
        let target = TargetSet {
            kind: TargetKind::Circle {
                center: [0.0, 0.0],
                radius: 1.0,
            },
            escape_distance: 1.0,
        };
        let attracting = AnalyticField::OrbitRadial {
            radius: 1.0,
            attracting: true,
        };
        let report = verify_attraction(|p| attracting.eval(p), &target, &[[1.3, 0.0]], 20.0, 0.01)
            .unwrap();
        assert_eq!(report.verdict, AttractionVerdict::Converged);

        let repelling = AnalyticField::OrbitRadial {
            radius: 1.0,
            attracting: false,
        };
        let report = verify_attraction(|p| repelling.eval(p), &target, &[[1.3, 0.0]], 20.0, 0.01)
            .unwrap();
        assert_eq!(report.verdict, AttractionVerdict::Diverged);
    }
}
