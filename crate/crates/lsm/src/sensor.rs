//! Generic lane-sensor error model: derives detected boundaries from
//! ground truth with range truncation, constant or piecewise lateral
//! offsets, per-sample Gaussian lateral noise, and frame/boundary
//! dropout.
//!
//! Randomness is fully reproducible. Each frame draws from a ChaCha8
//! stream seeded with `seed + frame_index`; within a frame the draw
//! order is fixed: frame dropout, left-boundary dropout, right-boundary
//! dropout, then one noise value per left sample followed by one per
//! right sample. Identical inputs and seed give bitwise-identical output.

use crate::geometry::{Point3, Polyline3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// A constant lateral offset active on an arc-length interval of the
/// ground-truth boundary (absolute s, meters).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OffsetSpan {
    #[serde(rename = "s_start_m")]
    pub s_start: f64,
    #[serde(rename = "s_end_m")]
    pub s_end: f64,
    #[serde(rename = "offset_m")]
    pub offset: f64,
}

/// Sensor parameterization. Offsets are signed: positive shifts the
/// detected boundary toward the lane interior, negative away from it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorModel {
    /// Max detected arc length per boundary, measured from the ego
    /// projection; absent means unlimited.
    #[serde(rename = "range_left_m", default)]
    pub range_left: Option<f64>,
    #[serde(rename = "range_right_m", default)]
    pub range_right: Option<f64>,
    /// Std deviation of the per-sample lateral noise, meters.
    #[serde(rename = "lateral_noise_sigma_m", default)]
    pub lateral_noise_sigma: f64,
    #[serde(rename = "offset_left_m", default)]
    pub offset_left: f64,
    #[serde(rename = "offset_right_m", default)]
    pub offset_right: f64,
    #[serde(rename = "offset_schedule_left", default)]
    pub offset_schedule_left: Vec<OffsetSpan>,
    #[serde(rename = "offset_schedule_right", default)]
    pub offset_schedule_right: Vec<OffsetSpan>,
    /// Probability that a whole frame is missed.
    #[serde(default)]
    pub dropout_frame_prob: f64,
    /// Probability that a single boundary is missed, drawn per boundary.
    #[serde(default)]
    pub dropout_boundary_prob: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(rename = "sample_spacing_m", default = "default_spacing")]
    pub sample_spacing: f64,
}

fn default_spacing() -> f64 {
    0.10
}

impl SensorModel {
    /// Zero-error, unlimited-range identity sensor.
    pub fn identity(seed: u64) -> Self {
        Self {
            range_left: None,
            range_right: None,
            lateral_noise_sigma: 0.0,
            offset_left: 0.0,
            offset_right: 0.0,
            offset_schedule_left: Vec::new(),
            offset_schedule_right: Vec::new(),
            dropout_frame_prob: 0.0,
            dropout_boundary_prob: 0.0,
            seed,
            sample_spacing: default_spacing(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, r) in [("range_left_m", self.range_left), ("range_right_m", self.range_right)] {
            if let Some(r) = r {
                if !(r > 0.0) {
                    return Err(format!("{name} must be > 0, got {r}"));
                }
            }
        }
        if !(self.lateral_noise_sigma >= 0.0) {
            return Err(format!(
                "lateral_noise_sigma_m must be >= 0, got {}",
                self.lateral_noise_sigma
            ));
        }
        for (name, p) in [
            ("dropout_frame_prob", self.dropout_frame_prob),
            ("dropout_boundary_prob", self.dropout_boundary_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        if !(self.sample_spacing > 0.0) {
            return Err(format!("sample_spacing_m must be > 0, got {}", self.sample_spacing));
        }
        Ok(())
    }

    fn offset_at(&self, side_base: f64, schedule: &[OffsetSpan], s: f64) -> f64 {
        side_base
            + schedule
                .iter()
                .filter(|span| s >= span.s_start && s <= span.s_end)
                .map(|span| span.offset)
                .sum::<f64>()
    }
}

/// Unit lateral direction at arc position `s` of `boundary`, pointing
/// toward `interior_hint` (a point on the opposite boundary). In the
/// road plane: the tangent is projected to xy before rotating.
fn interior_normal(boundary: &Polyline3, s: f64, interior_hint: &Point3) -> Point3 {
    let h = 0.05_f64.min(boundary.arc_length() / 2.0);
    let a = boundary.point_at(s - h);
    let b = boundary.point_at(s + h);
    let (tx, ty) = (b.x - a.x, b.y - a.y);
    let len = (tx * tx + ty * ty).sqrt();
    let n = Point3::new(-ty / len, tx / len, 0.0);
    let p = boundary.point_at(s);
    let to_interior = Point3::new(interior_hint.x - p.x, interior_hint.y - p.y, 0.0);
    if n.x * to_interior.x + n.y * to_interior.y >= 0.0 {
        n
    } else {
        Point3::new(-n.x, -n.y, 0.0)
    }
}

#[allow(clippy::too_many_arguments)]
fn sense_boundary(
    boundary: &Polyline3,
    other: &Polyline3,
    ego_origin: &Point3,
    base_offset: f64,
    schedule: &[OffsetSpan],
    range: Option<f64>,
    model: &SensorModel,
    rng: &mut ChaCha8Rng,
) -> Option<Polyline3> {
    let s0 = boundary.closest_point(ego_origin).s;
    let s_end = match range {
        Some(r) => (s0 + r).min(boundary.arc_length()),
        None => boundary.arc_length(),
    };
    if s_end - s0 < model.sample_spacing {
        return None;
    }
    let noise = Normal::new(0.0, model.lateral_noise_sigma).ok()?;
    let mut points = Vec::new();
    let mut k = 0usize;
    loop {
        let s = s0 + k as f64 * model.sample_spacing;
        let at_end = s >= s_end - 1e-9;
        let s_here = if at_end { s_end } else { s };
        let p = boundary.point_at(s_here);
        let hint = other.closest_point(&p).foot;
        let n = interior_normal(boundary, s_here, &hint);
        let lateral = model.offset_at(base_offset, schedule, s_here)
            + if model.lateral_noise_sigma > 0.0 {
                noise.sample(rng)
            } else {
                0.0
            };
        points.push(Point3::new(p.x + n.x * lateral, p.y + n.y * lateral, p.z));
        if at_end {
            break;
        }
        k += 1;
    }
    Polyline3::new(points).ok()
}

/// One frame of synthetic detection from the ground-truth boundary pair.
/// Pure given (inputs, seed): repeated calls are bitwise identical.
pub fn sense(
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    ego_origin: &Point3,
    model: &SensorModel,
) -> (Option<Polyline3>, Option<Polyline3>) {
    sense_with_seed(gt_left, gt_right, ego_origin, model, model.seed)
}

fn sense_with_seed(
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    ego_origin: &Point3,
    model: &SensorModel,
    seed: u64,
) -> (Option<Polyline3>, Option<Polyline3>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.random::<f64>() < model.dropout_frame_prob {
        return (None, None);
    }
    let drop_left = rng.random::<f64>() < model.dropout_boundary_prob;
    let drop_right = rng.random::<f64>() < model.dropout_boundary_prob;
    let left = if drop_left {
        None
    } else {
        sense_boundary(
            gt_left,
            gt_right,
            ego_origin,
            model.offset_left,
            &model.offset_schedule_left,
            model.range_left,
            model,
            &mut rng,
        )
    };
    let right = if drop_right {
        None
    } else {
        sense_boundary(
            gt_right,
            gt_left,
            ego_origin,
            model.offset_right,
            &model.offset_schedule_right,
            model.range_right,
            model,
            &mut rng,
        )
    };
    (left, right)
}

/// One detection per trajectory position, frame i seeded with seed + i.
pub fn sense_sequence(
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    trajectory: &[Point3],
    model: &SensorModel,
) -> Vec<(Option<Polyline3>, Option<Polyline3>)> {
    trajectory
        .iter()
        .enumerate()
        .map(|(i, origin)| {
            sense_with_seed(gt_left, gt_right, origin, model, model.seed.wrapping_add(i as u64))
        })
        .collect()
}
