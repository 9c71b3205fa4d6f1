use crate::dynamics::orbit::{Anchor, Orbit, Trajectory, TrajectoryMeta, TrajectorySource};
use crate::dynamics::period::Period;
use crate::error::{Error, Result};
use crate::levels::{LevelData, PotentialSpec, Region};

/// Half-width of the time window used for the separatrix, in units of the
/// small-oscillation period of the shallow well.
pub const SEPARATRIX_WINDOW: f64 = 10.0;

/// Closed phase curves at each energy of `eps_list`, in input order.
///
/// Each level yields one curve per physically distinct orbit: two inside
/// the barrier (one per well), one above it, a single point at rest. A
/// failing level reports its error without stopping the batch.
pub fn phase_portrait(
    eps_list: &[f64],
    spec: &PotentialSpec,
    samples_per_orbit: usize,
) -> Vec<Result<Vec<Trajectory>>> {
    eps_list
        .iter()
        .map(|&eps| level_curves(eps, spec, samples_per_orbit))
        .collect()
}

fn level_curves(eps: f64, spec: &PotentialSpec, samples: usize) -> Result<Vec<Trajectory>> {
    if samples < 2 {
        return Err(Error::domain(format!("need at least 2 samples, got {samples}")));
    }
    let level = LevelData::new(eps, spec)?;
    let anchors: &[Anchor] = if level.region.above_barrier() {
        &[Anchor::Xi4]
    } else {
        &[Anchor::Xi1, Anchor::Xi4]
    };

    let mut curves = Vec::new();
    for &anchor in anchors {
        if level.xi_real(anchor.index()).is_none() {
            continue;
        }
        let orbit = Orbit::new(eps, spec, anchor)?;
        if orbit.is_rest() {
            curves.push(rest_point(&orbit));
            continue;
        }
        let curve = match orbit.period {
            Period::Finite(t) => orbit.sample(0.0, t, samples)?,
            Period::Unbounded => {
                let w = SEPARATRIX_WINDOW * spec.harmonic_period_shallow();
                let mut tr = orbit.sample(-w, w, samples)?;
                tr.meta.truncated = true;
                tr
            }
        };
        curves.push(curve);
    }
    if level.region == Region::DeepMinimum && curves.len() > 1 {
        curves.truncate(1);
    }
    Ok(curves)
}

fn rest_point(orbit: &Orbit) -> Trajectory {
    Trajectory {
        times: vec![0.0],
        positions: vec![orbit.xi],
        velocities: vec![0.0],
        meta: TrajectoryMeta {
            eps: orbit.level.eps,
            delta: orbit.level.delta,
            anchor: Some(orbit.anchor),
            region: Some(orbit.level.region),
            period: Some(orbit.period),
            source: TrajectorySource::ClosedForm,
            truncated: false,
        },
    }
}
