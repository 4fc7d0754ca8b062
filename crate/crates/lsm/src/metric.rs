//! The lane safety metric: longitudinal range score, lateral deviation
//! score with persistence filtering, scenario-semantics score, and their
//! composition into a single safety score S in [0, 1].
//!
//! All functions are pure; frames can be scored concurrently.

use crate::geometry::{centerline, GeometryError, Polyline3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("vehicle wider than lane: lane {lane_width} m, vehicle {vehicle_width} m")]
    VehicleWiderThanLane { lane_width: f64, vehicle_width: f64 },
    #[error("lateral offset {x_lat} m leaves no margin toward the offset side")]
    OffsetExceedsMargin { x_lat: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Evaluation constants. Defaults reproduce the published test cases:
/// braking at 7.5 m/s² after a 0.1 s processing delay, a 10% longitudinal
/// safety margin, 80% usable lateral tolerance, 0.10 m sampling and
/// matching thresholds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Processing delay before braking starts, seconds.
    pub t_delay: f64,
    /// Braking deceleration, m/s² (> 0).
    pub a: f64,
    /// Desired lateral offset from the centerline, meters. Signed:
    /// positive offsets toward the right boundary.
    pub x_lat: f64,
    /// Multiplier on the emergency-braking distance (>= 1).
    pub safety_margin_long: f64,
    /// Fraction of the lateral tolerance that may be used (0, 1].
    pub lat_usable_fraction: f64,
    /// Point-match distance for the performance baseline, meters.
    pub tp_threshold: f64,
    /// Arc-length spacing for all resampling, meters.
    pub sample_spacing: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            t_delay: 0.1,
            a: 7.5,
            x_lat: 0.0,
            safety_margin_long: 1.1,
            lat_usable_fraction: 0.8,
            tp_threshold: 0.10,
            sample_spacing: 0.10,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.t_delay >= 0.0) {
            return Err(format!("t_delay must be >= 0, got {}", self.t_delay));
        }
        if !(self.a > 0.0) {
            return Err(format!("a must be > 0, got {}", self.a));
        }
        if !(self.safety_margin_long >= 1.0) {
            return Err(format!(
                "safety_margin_long must be >= 1, got {}",
                self.safety_margin_long
            ));
        }
        if !(self.lat_usable_fraction > 0.0 && self.lat_usable_fraction <= 1.0) {
            return Err(format!(
                "lat_usable_fraction must be in (0, 1], got {}",
                self.lat_usable_fraction
            ));
        }
        if !(self.tp_threshold > 0.0) {
            return Err(format!("tp_threshold must be > 0, got {}", self.tp_threshold));
        }
        if !(self.sample_spacing > 0.0) {
            return Err(format!("sample_spacing must be > 0, got {}", self.sample_spacing));
        }
        Ok(())
    }
}

/// Per-frame ego kinematics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EgoState {
    /// Current speed, m/s.
    pub v0: f64,
    /// Vehicle width, meters.
    pub vehicle_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjacentLaneKind {
    SameDirection,
    OppositeDirection,
    Vrus,
    NoLane,
}

/// What lies next to the ego lane on one side: lane type, speed limit
/// and heading angle relative to the ego lane (0° parallel co-directed,
/// 180° oncoming).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AdjacentLaneInfo {
    pub kind: AdjacentLaneKind,
    /// m/s; 0 for VRU areas and unpaved roadside.
    pub speed_limit: f64,
    pub angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoadType {
    Urban,
    Rural,
    Motorway,
}

/// Semantics of the ego lane needed for lateral and scenario scoring.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LaneContext {
    pub lane_width: f64,
    pub left_adjacent: AdjacentLaneInfo,
    pub right_adjacent: AdjacentLaneInfo,
    pub road_type: RoadType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UserClass {
    Vehicle,
    Vru,
}

/// One lateral deviation sample along the detected centerline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationSample {
    /// Arc-length position along the detected centerline, meters.
    pub s: f64,
    /// Distance to the closest point of the GT centerline, meters.
    pub d_lat: f64,
    /// Which GT boundary the sample lies closer to.
    pub side: Side,
}

/// Lateral deviation of the detected centerline versus ground truth,
/// sampled at the configured spacing and ordered by s.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DeviationProfile {
    pub samples: Vec<DeviationSample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Insufficient,
    VeryBad,
    Bad,
    Good,
    VeryGood,
}

/// All intermediates plus the final composed score for one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SafetyResult {
    pub s_long: f64,
    pub s_lat: f64,
    /// Only present when the lateral sentinel fired.
    pub s_scen: Option<f64>,
    #[serde(rename = "S")]
    pub s: f64,
    /// Required longitudinal detection range, meters.
    pub d_long: f64,
    /// Achieved detection range, meters.
    pub d_det: f64,
    /// Remaining velocity after braking over d_det; 0 when no residual
    /// collision is predicted.
    pub v_r: f64,
    /// Persistent lateral violations as (s_start, s_end) along the
    /// detected centerline.
    pub violation_runs: Vec<(f64, f64)>,
    pub classification: Classification,
    /// Set when the frame was scored as no-detection due to malformed
    /// geometry or invalid inputs.
    pub error: Option<String>,
}

impl SafetyResult {
    /// The score assigned when fewer than two boundaries are detected:
    /// no safe planning is possible without the full lane.
    fn no_detection(d_long: f64, error: Option<String>) -> Self {
        Self {
            s_long: 0.0,
            s_lat: 0.0,
            s_scen: None,
            s: 0.0,
            d_long,
            d_det: 0.0,
            v_r: 0.0,
            violation_runs: Vec::new(),
            classification: Classification::Insufficient,
            error,
        }
    }
}

/// Required longitudinal detection range: emergency-braking distance
/// with reaction delay, scaled by the configured safety margin.
pub fn required_range(ego: &EgoState, cfg: &EvalConfig) -> f64 {
    cfg.safety_margin_long * (ego.v0 * cfg.t_delay + ego.v0 * ego.v0 / (2.0 * cfg.a))
}

/// Achieved detection range: minimum arc length of the two boundaries.
pub fn detection_range(left: &Polyline3, right: &Polyline3) -> f64 {
    left.arc_length().min(right.arc_length())
}

/// Remaining velocity after braking over `d_det` meters, clamped to 0
/// when braking completes within the detected range.
pub fn remaining_velocity(v0: f64, a: f64, d_det: f64) -> f64 {
    (v0 * v0 - 2.0 * a * d_det).max(0.0).sqrt()
}

// Impact-velocity severity bands: (upper edge m/s, score at that edge).
// Score is 0.8 at v = 0, interpolates linearly inside each band and is
// 0 strictly above the last edge.
const VEHICLE_BANDS: [(f64, f64); 3] = [(8.3, 0.6), (13.9, 0.4), (16.7, 0.2)];
const VRU_BANDS: [(f64, f64); 3] = [(3.0, 0.6), (8.3, 0.4), (11.1, 0.2)];

/// Piecewise-linear severity mapping from impact velocity to a score in
/// [0, 0.8], with stricter bands for vulnerable road users.
pub fn severity_score(v_impact: f64, class: UserClass) -> f64 {
    let bands = match class {
        UserClass::Vehicle => &VEHICLE_BANDS,
        UserClass::Vru => &VRU_BANDS,
    };
    if v_impact <= 0.0 {
        return 0.8;
    }
    let mut lower_v = 0.0;
    let mut lower_s = 0.8;
    for &(edge_v, edge_s) in bands {
        if v_impact <= edge_v {
            let t = (v_impact - lower_v) / (edge_v - lower_v);
            return lower_s + (edge_s - lower_s) * t;
        }
        lower_v = edge_v;
        lower_s = edge_s;
    }
    0.0
}

/// Longitudinal score: 1.0 when the detected range covers the required
/// range; otherwise the severity of the residual collision, or 0.8 when
/// braking completes inside the detection but the margin is violated.
pub fn longitudinal_score(ego: &EgoState, cfg: &EvalConfig, d_det: f64) -> (f64, f64) {
    if d_det >= required_range(ego, cfg) {
        return (1.0, 0.0);
    }
    let v_r = remaining_velocity(ego.v0, cfg.a, d_det);
    if v_r == 0.0 {
        (0.8, 0.0)
    } else {
        (severity_score(v_r, UserClass::Vehicle), v_r)
    }
}

/// Tolerable centerline deviation per side. `toward` applies to
/// deviations in the configured offset direction, `against` to the
/// opposite side; with x_lat = 0 both equal (lane_width − vehicle_width)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateralThresholds {
    pub toward: f64,
    pub against: f64,
}

pub fn lateral_threshold(
    lane_width: f64,
    vehicle_width: f64,
    x_lat: f64,
) -> Result<LateralThresholds, MetricError> {
    if lane_width <= vehicle_width {
        return Err(MetricError::VehicleWiderThanLane {
            lane_width,
            vehicle_width,
        });
    }
    let base = (lane_width - vehicle_width) / 2.0;
    let toward = base - x_lat.abs();
    if toward <= 0.0 {
        return Err(MetricError::OffsetExceedsMargin { x_lat });
    }
    Ok(LateralThresholds {
        toward,
        against: base + x_lat.abs(),
    })
}

impl LateralThresholds {
    /// Threshold applying to a deviation toward `side`, given the signed
    /// offset convention (positive x_lat offsets toward Right).
    fn for_side(&self, side: Side, x_lat: f64) -> f64 {
        if x_lat == 0.0 {
            return self.toward; // toward == against
        }
        let offset_side = if x_lat > 0.0 { Side::Right } else { Side::Left };
        if side == offset_side {
            self.toward
        } else {
            self.against
        }
    }
}

/// Lateral deviation of the detected centerline against the GT
/// centerline, one sample per `spacing` meters of detected arc length.
pub fn deviation_profile(
    det_center: &Polyline3,
    gt_center: &Polyline3,
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    spacing: f64,
) -> Result<DeviationProfile, GeometryError> {
    let sampled = det_center.resample(spacing)?;
    let mut samples = Vec::with_capacity(sampled.len());
    for (i, p) in sampled.points().iter().enumerate() {
        let s = if i + 1 == sampled.len() {
            det_center.arc_length()
        } else {
            i as f64 * spacing
        };
        let d_lat = gt_center.closest_point(p).distance;
        let side = if gt_left.closest_point(p).distance <= gt_right.closest_point(p).distance {
            Side::Left
        } else {
            Side::Right
        };
        samples.push(DeviationSample { s, d_lat, side });
    }
    Ok(DeviationProfile { samples })
}

/// Maximal index runs where `flags` is set, mapped to (s_start, s_end)
/// and filtered by the persistence rule: a run qualifies when its
/// inclusive sample coverage (extent + spacing) reaches `d_min`.
fn qualifying_runs(
    samples: &[DeviationSample],
    flags: &[bool],
    d_min: f64,
    spacing: f64,
) -> Vec<(f64, f64)> {
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..=flags.len() {
        match (start, i < flags.len() && flags[i]) {
            (None, true) => start = Some(i),
            (Some(b), false) => {
                let extent = samples[i - 1].s - samples[b].s;
                if extent + spacing >= d_min {
                    runs.push((samples[b].s, samples[i - 1].s));
                }
                start = None;
            }
            _ => {}
        }
    }
    runs
}

/// Persistent violation runs: stretches where d_lat exceeds `threshold`
/// for at least `d_min` of consecutive arc length. With d_min = 0 every
/// violating sample forms a run.
pub fn violation_runs(
    profile: &DeviationProfile,
    threshold: f64,
    d_min: f64,
    spacing: f64,
) -> Vec<(f64, f64)> {
    let flags: Vec<bool> = profile.samples.iter().map(|x| x.d_lat > threshold).collect();
    qualifying_runs(&profile.samples, &flags, d_min, spacing)
}

/// Lateral score. Deviations are compared against the usable fraction of
/// the per-side tolerance; persistent excursions trigger the 0.8 sentinel
/// and are returned as runs. Below the sentinel the score maps linearly
/// from 1.0 (on the centerline) down toward 0.8, driven by the largest
/// deviation level sustained for at least d_min of arc length, so
/// isolated spikes in either direction are ignored.
pub fn lateral_score(
    profile: &DeviationProfile,
    th: &LateralThresholds,
    cfg: &EvalConfig,
    v0: f64,
) -> (f64, Vec<(f64, f64)>) {
    let d_min = cfg.t_delay * v0;
    let spacing = cfg.sample_spacing;
    let limits: Vec<f64> = profile
        .samples
        .iter()
        .map(|x| cfg.lat_usable_fraction * th.for_side(x.side, cfg.x_lat))
        .collect();
    let violating: Vec<bool> = profile
        .samples
        .iter()
        .zip(&limits)
        .map(|(x, &lim)| x.d_lat > lim)
        .collect();
    let runs = qualifying_runs(&profile.samples, &violating, d_min, spacing);
    if !runs.is_empty() {
        return (0.8, runs);
    }

    // Non-persistent violating samples are isolated outliers; drop them
    // before measuring the sustained deviation level.
    let ratios: Vec<f64> = profile
        .samples
        .iter()
        .zip(&limits)
        .zip(&violating)
        .filter(|&(_, &v)| !v)
        .map(|((x, &lim), _)| x.d_lat / lim)
        .collect();
    if ratios.is_empty() {
        return (1.0, runs);
    }
    // number of consecutive samples covering d_min of arc length
    let k = ((d_min / spacing - 1e-9).ceil() as usize).max(1).min(ratios.len());
    let f = ratios
        .windows(k)
        .map(|w| w.iter().cloned().fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0);
    (1.0 - 0.2 * f, runs)
}

/// Relative impact speed between the ego vehicle and worst-case traffic
/// on the adjacent lane: ||v_ego·û_ego − v_adj·û_adj|| with the unit
/// vectors subtending the stored angle. VRU areas and unpaved roadside
/// carry no traffic speed, so the ego speed itself is the impact speed.
pub fn impact_velocity(ego_v: f64, adj: &AdjacentLaneInfo) -> (f64, UserClass) {
    let class = match adj.kind {
        AdjacentLaneKind::Vrus => UserClass::Vru,
        _ => UserClass::Vehicle,
    };
    let v_adj = match adj.kind {
        AdjacentLaneKind::SameDirection | AdjacentLaneKind::OppositeDirection => adj.speed_limit,
        AdjacentLaneKind::Vrus | AdjacentLaneKind::NoLane => 0.0,
    };
    let cos = adj.angle_deg.to_radians().cos();
    let v = (ego_v * ego_v + v_adj * v_adj - 2.0 * ego_v * v_adj * cos)
        .max(0.0)
        .sqrt();
    (v, class)
}

/// Severity of departing the lane on `departed_side`, in [0, 0.8].
pub fn scenario_score(ego: &EgoState, departed_side: Side, ctx: &LaneContext) -> f64 {
    let adj = match departed_side {
        Side::Left => &ctx.left_adjacent,
        Side::Right => &ctx.right_adjacent,
    };
    let (v_impact, class) = impact_velocity(ego.v0, adj);
    severity_score(v_impact, class)
}

/// Composition: the lateral sentinel routes scoring through the scenario
/// semantics; otherwise the stricter of longitudinal and lateral wins.
pub fn final_score(s_long: f64, s_lat: f64, s_scen: f64) -> f64 {
    if s_lat > 0.80 {
        s_long.min(s_lat)
    } else {
        s_long.min(s_scen)
    }
}

/// Five-band interpretation of the final score.
pub fn classify(s: f64) -> Classification {
    if s <= 0.2 {
        Classification::Insufficient
    } else if s <= 0.4 {
        Classification::VeryBad
    } else if s <= 0.6 {
        Classification::Bad
    } else if s <= 0.8 {
        Classification::Good
    } else {
        Classification::VeryGood
    }
}

/// Full single-frame pipeline: centerlines, detection range, longitudinal
/// score, deviation profile, lateral score, scenario score when the
/// sentinel fires, composition and classification.
///
/// Fewer than two detected boundaries scores 0 (no safe planning is
/// possible without the full lane). Malformed geometry or invalid inputs
/// also score 0, with the error recorded on the result.
pub fn evaluate_frame(
    det_left: Option<&Polyline3>,
    det_right: Option<&Polyline3>,
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    ego: &EgoState,
    ctx: &LaneContext,
    cfg: &EvalConfig,
) -> SafetyResult {
    let d_long = required_range(ego, cfg);
    let (det_left, det_right) = match (det_left, det_right) {
        (Some(l), Some(r)) => (l, r),
        _ => return SafetyResult::no_detection(d_long, None),
    };
    match evaluate_complete(det_left, det_right, gt_left, gt_right, ego, ctx, cfg, d_long) {
        Ok(result) => result,
        Err(e) => SafetyResult::no_detection(d_long, Some(e.to_string())),
    }
}

#[allow(clippy::too_many_arguments)]
fn evaluate_complete(
    det_left: &Polyline3,
    det_right: &Polyline3,
    gt_left: &Polyline3,
    gt_right: &Polyline3,
    ego: &EgoState,
    ctx: &LaneContext,
    cfg: &EvalConfig,
    d_long: f64,
) -> Result<SafetyResult, MetricError> {
    let th = lateral_threshold(ctx.lane_width, ego.vehicle_width, cfg.x_lat)?;
    let d_det = detection_range(det_left, det_right);
    let (s_long, v_r) = longitudinal_score(ego, cfg, d_det);

    let det_center = centerline(det_left, det_right, cfg.sample_spacing)?;
    let gt_center = centerline(gt_left, gt_right, cfg.sample_spacing)?;
    let profile = deviation_profile(&det_center, &gt_center, gt_left, gt_right, cfg.sample_spacing)?;
    let (s_lat, runs) = lateral_score(&profile, &th, cfg, ego.v0);

    let s_scen = if s_lat > 0.80 {
        None
    } else {
        Some(scenario_score(ego, departed_side(&profile, &runs), ctx))
    };
    let s = final_score(s_long, s_lat, s_scen.unwrap_or(1.0));
    Ok(SafetyResult {
        s_long,
        s_lat,
        s_scen,
        s,
        d_long,
        d_det,
        v_r,
        violation_runs: runs,
        classification: classify(s),
        error: None,
    })
}

/// Side of the worst deviation inside the violation runs (falls back to
/// the globally worst sample when no run is recorded).
fn departed_side(profile: &DeviationProfile, runs: &[(f64, f64)]) -> Side {
    let in_runs = |s: f64| runs.iter().any(|&(a, b)| s >= a && s <= b);
    profile
        .samples
        .iter()
        .filter(|x| runs.is_empty() || in_runs(x.s))
        .max_by(|a, b| a.d_lat.total_cmp(&b.d_lat))
        .map(|x| x.side)
        .unwrap_or(Side::Right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;
    use approx::assert_abs_diff_eq;

    fn ego(v0: f64) -> EgoState {
        EgoState {
            v0,
            vehicle_width: 2.0,
        }
    }

    fn line(y: f64, x0: f64, x1: f64) -> Polyline3 {
        Polyline3::new(vec![Point3::new(x0, y, 0.0), Point3::new(x1, y, 0.0)]).unwrap()
    }

    fn constant_profile(d_lat: f64, n: usize, side: Side) -> DeviationProfile {
        DeviationProfile {
            samples: (0..n)
                .map(|i| DeviationSample {
                    s: i as f64 * 0.10,
                    d_lat,
                    side,
                })
                .collect(),
        }
    }

    fn vru_context() -> LaneContext {
        LaneContext {
            lane_width: 3.5,
            left_adjacent: AdjacentLaneInfo {
                kind: AdjacentLaneKind::OppositeDirection,
                speed_limit: 13.89,
                angle_deg: 180.0,
            },
            right_adjacent: AdjacentLaneInfo {
                kind: AdjacentLaneKind::Vrus,
                speed_limit: 0.0,
                angle_deg: 0.0,
            },
            road_type: RoadType::Urban,
        }
    }

    #[test]
    fn required_range_examples() {
        let cfg = EvalConfig::default();
        assert_abs_diff_eq!(required_range(&ego(13.89), &cfg), 15.68, epsilon = 0.01);
        assert_eq!(required_range(&ego(0.0), &cfg), 0.0);
        assert_abs_diff_eq!(required_range(&ego(27.78), &cfg), 59.65, epsilon = 0.01);
    }

    #[test]
    fn detection_range_is_min_boundary_length() {
        assert_eq!(detection_range(&line(0.0, 0.0, 30.0), &line(3.5, 0.0, 60.0)), 30.0);
        assert_eq!(detection_range(&line(0.0, 0.0, 40.0), &line(3.5, 0.0, 40.0)), 40.0);
    }

    #[test]
    fn remaining_velocity_examples() {
        assert_abs_diff_eq!(remaining_velocity(27.78, 7.5, 30.0), 17.94, epsilon = 0.01);
        assert_eq!(remaining_velocity(13.89, 7.5, 20.0), 0.0);
        // 13.89² − 2·7.5·10 = 42.9321
        assert_abs_diff_eq!(remaining_velocity(13.89, 7.5, 10.0), 42.9321_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn severity_band_edges_and_interiors() {
        assert_eq!(severity_score(17.0, UserClass::Vehicle), 0.0);
        assert_abs_diff_eq!(severity_score(8.3, UserClass::Vehicle), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(severity_score(4.15, UserClass::Vehicle), 0.7, epsilon = 1e-12);
        assert_eq!(severity_score(11.2, UserClass::Vru), 0.0);
        assert_eq!(severity_score(0.0, UserClass::Vru), 0.8);
    }

    #[test]
    fn longitudinal_score_branches() {
        let cfg = EvalConfig::default();
        // sufficient range
        assert_eq!(longitudinal_score(&ego(13.89), &cfg, 40.0), (1.0, 0.0));
        // C_1: residual 17.94 m/s, above the fatal band
        let (s, v_r) = longitudinal_score(&ego(27.78), &cfg, 30.0);
        assert_eq!(s, 0.0);
        assert_abs_diff_eq!(v_r, 17.94, epsilon = 0.01);
        // margin violated but braking completes: pure distance 12.86 < 15
        let (s, v_r) = longitudinal_score(&ego(13.89), &cfg, 15.0);
        assert_eq!((s, v_r), (0.8, 0.0));
    }

    #[test]
    fn lateral_threshold_examples() {
        let th = lateral_threshold(3.5, 2.0, 0.0).unwrap();
        assert_eq!((th.toward, th.against), (0.75, 0.75));
        let th = lateral_threshold(3.5, 2.0, 0.25).unwrap();
        assert_eq!((th.toward, th.against), (0.50, 1.00));
        assert!(matches!(
            lateral_threshold(2.0, 2.55, 0.0),
            Err(MetricError::VehicleWiderThanLane { .. })
        ));
    }

    #[test]
    fn deviation_profile_identity_and_offset() {
        let gt_left = line(1.75, 0.0, 40.0);
        let gt_right = line(-1.75, 0.0, 40.0);
        let gt_center = centerline(&gt_left, &gt_right, 0.10).unwrap();

        let p = deviation_profile(&gt_center, &gt_center, &gt_left, &gt_right, 0.10).unwrap();
        assert!(p.samples.iter().all(|x| x.d_lat == 0.0));

        let det_center = line(0.3, 0.0, 40.0);
        let p = deviation_profile(&det_center, &gt_center, &gt_left, &gt_right, 0.10).unwrap();
        for x in &p.samples {
            assert_abs_diff_eq!(x.d_lat, 0.3, epsilon = 1e-9);
            assert_eq!(x.side, Side::Left);
        }
    }

    #[test]
    fn violation_runs_filtering() {
        // single violating sample, d_min = 1.389: filtered out
        let mut p = constant_profile(0.1, 100, Side::Right);
        p.samples[50].d_lat = 2.0;
        assert!(violation_runs(&p, 0.6, 1.389, 0.10).is_empty());

        // 10 m contiguous violation survives
        let mut p = constant_profile(0.1, 400, Side::Right);
        for x in &mut p.samples[100..200] {
            x.d_lat = 0.75;
        }
        let runs = violation_runs(&p, 0.6, 1.389, 0.10);
        assert_eq!(runs.len(), 1);
        let (a, b) = runs[0];
        assert_abs_diff_eq!(b - a, 9.9, epsilon = 1e-9);

        // v0 = 0 => d_min = 0: every violating sample forms a run
        let mut p = constant_profile(0.1, 10, Side::Right);
        p.samples[5].d_lat = 2.0;
        assert_eq!(violation_runs(&p, 0.6, 0.0, 0.10).len(), 1);
    }

    #[test]
    fn lateral_score_examples() {
        let cfg = EvalConfig::default();
        let th = lateral_threshold(3.5, 2.0, 0.0).unwrap();
        // C_S: persistent 0.1·th -> f = 0.125 -> 0.975
        let p = constant_profile(0.1 * 0.75, 400, Side::Right);
        let (s, runs) = lateral_score(&p, &th, &cfg, 13.89);
        assert_abs_diff_eq!(s, 0.975, epsilon = 1e-9);
        assert!(runs.is_empty());
        // C_3: persistent 0.2·th -> 0.95
        let p = constant_profile(0.2 * 0.75, 400, Side::Right);
        let (s, _) = lateral_score(&p, &th, &cfg, 13.89);
        assert_abs_diff_eq!(s, 0.95, epsilon = 1e-9);
        // C_2: above th for 10 m -> sentinel
        let mut p = constant_profile(0.0, 400, Side::Right);
        for x in &mut p.samples[100..200] {
            x.d_lat = 0.8;
        }
        let (s, runs) = lateral_score(&p, &th, &cfg, 13.89);
        assert_eq!(s, 0.8);
        assert_eq!(runs.len(), 1);
    }

    #[test]
    fn lateral_score_ignores_isolated_spike() {
        let cfg = EvalConfig::default();
        let th = lateral_threshold(3.5, 2.0, 0.0).unwrap();
        let clean = constant_profile(0.15, 400, Side::Left);
        let (s_clean, _) = lateral_score(&clean, &th, &cfg, 13.89);
        let mut spiked = clean.clone();
        spiked.samples.insert(
            200,
            DeviationSample {
                s: 19.95,
                d_lat: 3.0,
                side: Side::Left,
            },
        );
        let (s_spiked, runs) = lateral_score(&spiked, &th, &cfg, 13.89);
        assert!(runs.is_empty());
        assert_eq!(s_clean, s_spiked);
    }

    #[test]
    fn impact_velocity_examples() {
        let vru = AdjacentLaneInfo {
            kind: AdjacentLaneKind::Vrus,
            speed_limit: 0.0,
            angle_deg: 0.0,
        };
        let (v, class) = impact_velocity(13.89, &vru);
        assert_eq!(v, 13.89);
        assert_eq!(class, UserClass::Vru);
        assert_eq!(severity_score(v, class), 0.0);

        let same = AdjacentLaneInfo {
            kind: AdjacentLaneKind::SameDirection,
            speed_limit: 20.0,
            angle_deg: 0.0,
        };
        let (v, _) = impact_velocity(20.0, &same);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-9);

        let opposite = AdjacentLaneInfo {
            kind: AdjacentLaneKind::OppositeDirection,
            speed_limit: 10.0,
            angle_deg: 180.0,
        };
        let (v, _) = impact_velocity(10.0, &opposite);
        assert_abs_diff_eq!(v, 20.0, epsilon = 1e-9);
    }

    #[test]
    fn scenario_score_examples() {
        let ctx = vru_context();
        assert_eq!(scenario_score(&ego(13.89), Side::Right, &ctx), 0.0);
        // co-moving same-direction lane: no relative impact, top of scale
        let mut ctx2 = ctx;
        ctx2.left_adjacent = AdjacentLaneInfo {
            kind: AdjacentLaneKind::SameDirection,
            speed_limit: 13.89,
            angle_deg: 0.0,
        };
        let e = ego(13.89);
        assert_eq!(scenario_score(&e, Side::Left, &ctx2), 0.8);
        // head-on: 27.78 m/s impact, above the fatal band
        assert_eq!(scenario_score(&e, Side::Left, &vru_context()), 0.0);
    }

    #[test]
    fn final_score_and_classify() {
        assert_eq!(final_score(1.0, 0.95, 0.0), 0.95);
        assert_eq!(final_score(1.0, 0.80, 0.0), 0.0);
        assert_eq!(final_score(0.5, 0.9, 0.0), 0.5);

        assert_eq!(classify(0.95), Classification::VeryGood);
        assert_eq!(classify(0.2), Classification::Insufficient);
        assert_eq!(classify(0.39), Classification::VeryBad);
    }

    #[test]
    fn evaluate_frame_missing_boundary() {
        let gt_left = line(1.75, 0.0, 40.0);
        let gt_right = line(-1.75, 0.0, 40.0);
        let r = evaluate_frame(
            Some(&gt_left),
            None,
            &gt_left,
            &gt_right,
            &ego(13.89),
            &vru_context(),
            &EvalConfig::default(),
        );
        assert_eq!(r.s, 0.0);
        assert_eq!(r.s_long, 0.0);
        assert_eq!(r.s_lat, 0.0);
        assert_eq!(r.classification, Classification::Insufficient);
        assert!(r.error.is_none());
    }

    #[test]
    fn evaluate_frame_vehicle_wider_than_lane_sets_error() {
        let gt_left = line(1.75, 0.0, 40.0);
        let gt_right = line(-1.75, 0.0, 40.0);
        let wide = EgoState {
            v0: 13.89,
            vehicle_width: 4.0,
        };
        let r = evaluate_frame(
            Some(&gt_left),
            Some(&gt_right),
            &gt_left,
            &gt_right,
            &wide,
            &vru_context(),
            &EvalConfig::default(),
        );
        assert_eq!(r.s, 0.0);
        assert!(r.error.is_some());
    }
}
