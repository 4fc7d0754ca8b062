//! Versioned `.scenario.json` input format and the `.results.csv` /
//! `.results.json` output formats.
//!
//! The scenario container is a documented JSON subset instead of a full
//! map format: one ground-truth lane with semantics, an evaluation
//! configuration, and either recorded detection frames or a trajectory
//! plus sensor model for synthetic generation. Field names carry
//! explicit units; speeds may be given as `*_kmh` and are converted to
//! m/s at parse time, never stored dual-unit.

use crate::geometry::{centerline, Point3, Polyline3};
use crate::metric::{
    AdjacentLaneInfo, AdjacentLaneKind, Classification, EgoState, EvalConfig, LaneContext,
    RoadType, SafetyResult,
};
use crate::perf::PerfResult;
use crate::sensor::SensorModel;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Vehicle width the published road-type tolerances assume.
const TOLERANCE_REFERENCE_VEHICLE_WIDTH: f64 = 2.55;

/// A located validation problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// JSON-pointer-style path, e.g. `gt_lane.left_boundary.points_m[3]`.
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("validation failed:\n{}", format_issues(.0))]
    Validation(Vec<Issue>),
}

fn format_issues(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Ground-truth lane: boundary pair, stated width, and semantics.
#[derive(Debug, Clone)]
pub struct Lane {
    pub id: String,
    pub left_boundary: Polyline3,
    pub right_boundary: Polyline3,
    pub width: f64,
    pub context: LaneContext,
}

/// One frame of recorded or synthesized detection.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionFrame {
    pub frame_index: u64,
    pub timestamp: f64,
    pub ego: EgoState,
    pub ego_origin: Point3,
    pub left: Option<Polyline3>,
    pub right: Option<Polyline3>,
}

/// Trajectory + sensor model for synthetic frame generation.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub trajectory: Vec<Point3>,
    pub frame_period: f64,
    pub ego: EgoState,
    pub sensor: SensorModel,
}

#[derive(Debug, Clone)]
pub enum ScenarioInput {
    Frames(Vec<DetectionFrame>),
    Synthesis(Synthesis),
}

#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub name: Option<String>,
    pub lane: Lane,
    pub eval_config: EvalConfig,
    pub input: ScenarioInput,
}

// ---------------------------------------------------------------------------
// raw serde layer (unit-suffixed field names, units normalized on ingest)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct RawScenario {
    schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gt_lane: RawLane,
    #[serde(default)]
    eval_config: Option<RawEvalConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frames: Option<Vec<RawFrame>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    synthesis: Option<RawSynthesis>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawLane {
    id: String,
    left_boundary: RawPolyline,
    right_boundary: RawPolyline,
    width_m: f64,
    context: RawContext,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawPolyline {
    points_m: Vec<[f64; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawContext {
    road_type: RoadType,
    left_adjacent: RawAdjacent,
    right_adjacent: RawAdjacent,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawAdjacent {
    kind: AdjacentLaneKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    speed_limit_mps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    speed_limit_kmh: Option<f64>,
    #[serde(default)]
    angle_deg: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEvalConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_delay_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_mps2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_lat_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    safety_margin_long: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lat_usable_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tp_threshold_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sample_spacing_m: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEgo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v0_mps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v0_kmh: Option<f64>,
    vehicle_width_m: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawFrame {
    frame_index: u64,
    timestamp_s: f64,
    ego: RawEgo,
    ego_origin_m: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left_boundary: Option<RawPolyline>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_boundary: Option<RawPolyline>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawSynthesis {
    trajectory_m: Vec<[f64; 3]>,
    #[serde(default = "default_frame_period")]
    frame_period_s: f64,
    ego: RawEgo,
    sensor: SensorModel,
}

fn default_frame_period() -> f64 {
    0.1
}

// ---------------------------------------------------------------------------
// parsing + validation
// ---------------------------------------------------------------------------

struct Validator {
    errors: Vec<Issue>,
    warnings: Vec<Issue>,
}

impl Validator {
    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.errors.push(Issue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn warn(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.warnings.push(Issue {
            path: path.into(),
            message: message.into(),
        });
    }
}

/// Parses and fully validates a scenario file. Returns the scenario plus
/// any warnings, or the list of located errors. Under `strict`, warnings
/// (including unknown fields) are promoted to errors.
pub fn parse_scenario(bytes: &[u8], strict: bool) -> Result<(ScenarioFile, Vec<Issue>), ScenarioError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let mut unknown_fields = Vec::new();
    let raw: RawScenario = serde_ignored::deserialize(de, |path| {
        unknown_fields.push(path.to_string());
    })?;

    let mut v = Validator {
        errors: Vec::new(),
        warnings: Vec::new(),
    };
    for field in unknown_fields {
        v.warn(field, "unknown field");
    }

    if raw.schema_version != SCHEMA_VERSION {
        v.error(
            "schema_version",
            format!("unsupported version {}, expected {}", raw.schema_version, SCHEMA_VERSION),
        );
    }

    let lane = validate_lane(&raw.gt_lane, &mut v);
    let eval_config = resolve_eval_config(raw.eval_config.as_ref(), &mut v);

    let input = match (&raw.frames, &raw.synthesis) {
        (Some(frames), None) => {
            Some(ScenarioInput::Frames(validate_frames(frames, lane.as_ref(), &mut v)))
        }
        (None, Some(synth)) => validate_synthesis(synth, lane.as_ref(), &mut v).map(ScenarioInput::Synthesis),
        (Some(_), Some(_)) => {
            v.error("frames", "exactly one of `frames` and `synthesis` must be present, got both");
            None
        }
        (None, None) => {
            v.error("frames", "exactly one of `frames` and `synthesis` must be present, got neither");
            None
        }
    };

    if strict {
        let warnings = std::mem::take(&mut v.warnings);
        v.errors.extend(warnings);
    }
    if !v.errors.is_empty() {
        return Err(ScenarioError::Validation(v.errors));
    }
    Ok((
        ScenarioFile {
            schema_version: raw.schema_version,
            name: raw.name,
            lane: lane.unwrap(),
            eval_config,
            input: input.unwrap(),
        },
        v.warnings,
    ))
}

fn validate_polyline(raw: &RawPolyline, path: &str, v: &mut Validator) -> Option<Polyline3> {
    for (i, p) in raw.points_m.iter().enumerate() {
        if !p.iter().all(|c| c.is_finite()) {
            v.error(format!("{path}.points_m[{i}]"), "non-finite coordinate");
            return None;
        }
    }
    let points = raw.points_m.iter().map(|&[x, y, z]| Point3::new(x, y, z)).collect();
    match Polyline3::new(points) {
        Ok(p) => Some(p),
        Err(e) => {
            v.error(format!("{path}.points_m"), e.to_string());
            None
        }
    }
}

fn resolve_speed(
    mps: Option<f64>,
    kmh: Option<f64>,
    default: Option<f64>,
    path: &str,
    v: &mut Validator,
) -> f64 {
    match (mps, kmh) {
        (Some(_), Some(_)) => {
            v.error(path, "both m/s and km/h given; specify exactly one");
            0.0
        }
        (Some(s), None) => s,
        (None, Some(s)) => s / 3.6,
        (None, None) => match default {
            Some(d) => d,
            None => {
                v.error(path, "speed missing (expected *_mps or *_kmh)");
                0.0
            }
        },
    }
}

fn validate_adjacent(raw: &RawAdjacent, path: &str, v: &mut Validator) -> AdjacentLaneInfo {
    let default = match raw.kind {
        AdjacentLaneKind::Vrus | AdjacentLaneKind::NoLane => Some(0.0),
        _ => None,
    };
    let speed_limit = resolve_speed(
        raw.speed_limit_mps,
        raw.speed_limit_kmh,
        default,
        &format!("{path}.speed_limit_mps"),
        v,
    );
    if speed_limit < 0.0 {
        v.error(format!("{path}.speed_limit_mps"), "speed limit must be >= 0");
    }
    if matches!(raw.kind, AdjacentLaneKind::Vrus | AdjacentLaneKind::NoLane) && speed_limit != 0.0 {
        v.error(
            format!("{path}.speed_limit_mps"),
            "VRU and no-lane areas carry no traffic speed; speed limit must be 0",
        );
    }
    if !(0.0..=180.0).contains(&raw.angle_deg) {
        v.error(format!("{path}.angle_deg"), format!("angle must be in [0, 180], got {}", raw.angle_deg));
    }
    AdjacentLaneInfo {
        kind: raw.kind,
        speed_limit,
        angle_deg: raw.angle_deg,
    }
}

fn validate_lane(raw: &RawLane, v: &mut Validator) -> Option<Lane> {
    let left = validate_polyline(&raw.left_boundary, "gt_lane.left_boundary", v);
    let right = validate_polyline(&raw.right_boundary, "gt_lane.right_boundary", v);
    if !(raw.width_m > 0.0) {
        v.error("gt_lane.width_m", format!("lane width must be > 0, got {}", raw.width_m));
        return None;
    }
    let context = LaneContext {
        lane_width: raw.width_m,
        left_adjacent: validate_adjacent(&raw.context.left_adjacent, "gt_lane.context.left_adjacent", v),
        right_adjacent: validate_adjacent(&raw.context.right_adjacent, "gt_lane.context.right_adjacent", v),
        road_type: raw.context.road_type,
    };
    let (left, right) = (left?, right?);
    check_boundary_geometry(&left, &right, raw.width_m, v);
    check_movement_tolerance(raw.width_m, raw.context.road_type, v);
    Some(Lane {
        id: raw.id.clone(),
        left_boundary: left,
        right_boundary: right,
        width: raw.width_m,
        context,
    })
}

/// Non-crossing check plus stated-vs-measured width consistency:
/// warn above 20% disagreement, reject beyond 50%.
fn check_boundary_geometry(left: &Polyline3, right: &Polyline3, width: f64, v: &mut Validator) {
    let center = match centerline(left, right, 0.5) {
        Ok(c) => c,
        Err(e) => {
            v.error("gt_lane", format!("cannot derive centerline: {e}"));
            return;
        }
    };
    let mut separations = Vec::with_capacity(center.len());
    for p in center.points() {
        let dl = left.closest_point(p).distance;
        let dr = right.closest_point(p).distance;
        if dl < 1e-6 || dr < 1e-6 {
            v.error("gt_lane", "boundaries cross: centerline touches a boundary");
            return;
        }
        separations.push(dl + dr);
    }
    let mean = separations.iter().sum::<f64>() / separations.len() as f64;
    let rel = (width - mean).abs() / mean;
    if rel > 0.5 {
        v.error(
            "gt_lane.width_m",
            format!("stated width {width} m differs from measured mean separation {mean:.2} m by more than 50%"),
        );
    } else if rel > 0.2 {
        v.warn(
            "gt_lane.width_m",
            format!("stated width {width} m differs from measured mean separation {mean:.2} m by more than 20%"),
        );
    }
}

/// Published lateral movement tolerance per road type, meters.
pub fn lookup_movement_tolerance(road_type: RoadType) -> f64 {
    match road_type {
        RoadType::Urban => 0.70,
        RoadType::Rural => 0.95,
        RoadType::Motorway => 1.20,
    }
}

/// Informational cross-check of the lane against the road-type
/// tolerance table, evaluated at the maximal allowed vehicle width.
fn check_movement_tolerance(lane_width: f64, road_type: RoadType, v: &mut Validator) {
    let computed = (lane_width - TOLERANCE_REFERENCE_VEHICLE_WIDTH) / 2.0;
    let table = lookup_movement_tolerance(road_type);
    if (computed - table).abs() > 0.05 {
        v.warn(
            "gt_lane.width_m",
            format!(
                "tolerance at {TOLERANCE_REFERENCE_VEHICLE_WIDTH} m vehicle width is {computed:.2} m, \
                 {road_type:?} roads are planned for {table:.2} m"
            ),
        );
    }
}

fn resolve_eval_config(raw: Option<&RawEvalConfig>, v: &mut Validator) -> EvalConfig {
    let mut cfg = EvalConfig::default();
    if let Some(raw) = raw {
        if let Some(x) = raw.t_delay_s {
            cfg.t_delay = x;
        }
        if let Some(x) = raw.a_mps2 {
            cfg.a = x;
        }
        if let Some(x) = raw.x_lat_m {
            cfg.x_lat = x;
        }
        if let Some(x) = raw.safety_margin_long {
            cfg.safety_margin_long = x;
        }
        if let Some(x) = raw.lat_usable_fraction {
            cfg.lat_usable_fraction = x;
        }
        if let Some(x) = raw.tp_threshold_m {
            cfg.tp_threshold = x;
        }
        if let Some(x) = raw.sample_spacing_m {
            cfg.sample_spacing = x;
        }
    }
    if let Err(msg) = cfg.validate() {
        v.error("eval_config", msg);
    }
    cfg
}

fn validate_ego(raw: &RawEgo, lane: Option<&Lane>, path: &str, v: &mut Validator) -> EgoState {
    let v0 = resolve_speed(raw.v0_mps, raw.v0_kmh, None, &format!("{path}.v0_mps"), v);
    if !(v0.is_finite() && v0 >= 0.0) {
        v.error(format!("{path}.v0_mps"), format!("ego speed must be finite and >= 0, got {v0}"));
    }
    if !(raw.vehicle_width_m > 0.0) {
        v.error(
            format!("{path}.vehicle_width_m"),
            format!("vehicle width must be > 0, got {}", raw.vehicle_width_m),
        );
    }
    if let Some(lane) = lane {
        if raw.vehicle_width_m >= lane.width {
            v.error(
                format!("{path}.vehicle_width_m"),
                format!(
                    "vehicle ({} m) is not narrower than the lane ({} m); \
                     the lateral tolerance (lane width minus vehicle width over two) is undefined",
                    raw.vehicle_width_m, lane.width
                ),
            );
        }
    }
    EgoState {
        v0,
        vehicle_width: raw.vehicle_width_m,
    }
}

fn validate_frames(frames: &[RawFrame], lane: Option<&Lane>, v: &mut Validator) -> Vec<DetectionFrame> {
    let mut out = Vec::with_capacity(frames.len());
    let mut last_index: Option<u64> = None;
    let mut last_ts = f64::NEG_INFINITY;
    for (i, raw) in frames.iter().enumerate() {
        let path = format!("frames[{i}]");
        if let Some(prev) = last_index {
            if raw.frame_index <= prev {
                v.error(
                    format!("{path}.frame_index"),
                    format!("frame indices must be unique and increasing, got {} after {prev}", raw.frame_index),
                );
            }
        }
        last_index = Some(raw.frame_index);
        if raw.timestamp_s < last_ts {
            v.error(
                format!("{path}.timestamp_s"),
                format!("timestamps must be non-decreasing, got {} after {last_ts}", raw.timestamp_s),
            );
        }
        last_ts = raw.timestamp_s;
        let ego = validate_ego(&raw.ego, lane, &format!("{path}.ego"), v);
        let origin = raw.ego_origin_m;
        if !origin.iter().all(|c| c.is_finite()) {
            v.error(format!("{path}.ego_origin_m"), "non-finite coordinate");
        }
        let left = raw
            .left_boundary
            .as_ref()
            .and_then(|b| validate_polyline(b, &format!("{path}.left_boundary"), v));
        let right = raw
            .right_boundary
            .as_ref()
            .and_then(|b| validate_polyline(b, &format!("{path}.right_boundary"), v));
        out.push(DetectionFrame {
            frame_index: raw.frame_index,
            timestamp: raw.timestamp_s,
            ego,
            ego_origin: Point3::new(origin[0], origin[1], origin[2]),
            left,
            right,
        });
    }
    out
}

fn validate_synthesis(raw: &RawSynthesis, lane: Option<&Lane>, v: &mut Validator) -> Option<Synthesis> {
    if raw.trajectory_m.is_empty() {
        v.error("synthesis.trajectory_m", "trajectory must be non-empty");
        return None;
    }
    for (i, p) in raw.trajectory_m.iter().enumerate() {
        if !p.iter().all(|c| c.is_finite()) {
            v.error(format!("synthesis.trajectory_m[{i}]"), "non-finite coordinate");
            return None;
        }
    }
    if !(raw.frame_period_s > 0.0) {
        v.error("synthesis.frame_period_s", format!("frame period must be > 0, got {}", raw.frame_period_s));
    }
    let ego = validate_ego(&raw.ego, lane, "synthesis.ego", v);
    if let Err(msg) = raw.sensor.validate() {
        v.error("synthesis.sensor", msg);
    }
    Some(Synthesis {
        trajectory: raw
            .trajectory_m
            .iter()
            .map(|&[x, y, z]| Point3::new(x, y, z))
            .collect(),
        frame_period: raw.frame_period_s,
        ego,
        sensor: raw.sensor.clone(),
    })
}

// ---------------------------------------------------------------------------
// scenario writing (for `simulate` output and round-trips)
// ---------------------------------------------------------------------------

fn polyline_to_raw(p: &Polyline3) -> RawPolyline {
    RawPolyline {
        points_m: p.points().iter().map(|p| [p.x, p.y, p.z]).collect(),
    }
}

fn ego_to_raw(ego: &EgoState) -> RawEgo {
    RawEgo {
        v0_mps: Some(ego.v0),
        v0_kmh: None,
        vehicle_width_m: ego.vehicle_width,
    }
}

fn scenario_to_raw(s: &ScenarioFile) -> RawScenario {
    RawScenario {
        schema_version: s.schema_version,
        name: s.name.clone(),
        gt_lane: RawLane {
            id: s.lane.id.clone(),
            left_boundary: polyline_to_raw(&s.lane.left_boundary),
            right_boundary: polyline_to_raw(&s.lane.right_boundary),
            width_m: s.lane.width,
            context: RawContext {
                road_type: s.lane.context.road_type,
                left_adjacent: adjacent_to_raw(&s.lane.context.left_adjacent),
                right_adjacent: adjacent_to_raw(&s.lane.context.right_adjacent),
            },
        },
        eval_config: Some(RawEvalConfig {
            t_delay_s: Some(s.eval_config.t_delay),
            a_mps2: Some(s.eval_config.a),
            x_lat_m: Some(s.eval_config.x_lat),
            safety_margin_long: Some(s.eval_config.safety_margin_long),
            lat_usable_fraction: Some(s.eval_config.lat_usable_fraction),
            tp_threshold_m: Some(s.eval_config.tp_threshold),
            sample_spacing_m: Some(s.eval_config.sample_spacing),
        }),
        frames: match &s.input {
            ScenarioInput::Frames(frames) => Some(
                frames
                    .iter()
                    .map(|f| RawFrame {
                        frame_index: f.frame_index,
                        timestamp_s: f.timestamp,
                        ego: ego_to_raw(&f.ego),
                        ego_origin_m: [f.ego_origin.x, f.ego_origin.y, f.ego_origin.z],
                        left_boundary: f.left.as_ref().map(polyline_to_raw),
                        right_boundary: f.right.as_ref().map(polyline_to_raw),
                    })
                    .collect(),
            ),
            ScenarioInput::Synthesis(_) => None,
        },
        synthesis: match &s.input {
            ScenarioInput::Frames(_) => None,
            ScenarioInput::Synthesis(synth) => Some(RawSynthesis {
                trajectory_m: synth.trajectory.iter().map(|p| [p.x, p.y, p.z]).collect(),
                frame_period_s: synth.frame_period,
                ego: ego_to_raw(&synth.ego),
                sensor: synth.sensor.clone(),
            }),
        },
    }
}

fn adjacent_to_raw(adj: &AdjacentLaneInfo) -> RawAdjacent {
    RawAdjacent {
        kind: adj.kind,
        speed_limit_mps: Some(adj.speed_limit),
        speed_limit_kmh: None,
        angle_deg: adj.angle_deg,
    }
}

pub fn write_scenario(s: &ScenarioFile) -> String {
    serde_json::to_string_pretty(&scenario_to_raw(s)).expect("scenario serialization")
}

// ---------------------------------------------------------------------------
// results
// ---------------------------------------------------------------------------

/// One output row: the safety intermediates plus the performance counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub frame_index: u64,
    pub d_long: f64,
    pub d_det: f64,
    pub v_r: f64,
    pub s_long: f64,
    pub s_lat: f64,
    pub s_scen: Option<f64>,
    #[serde(rename = "S")]
    pub s: f64,
    pub classification: Classification,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ResultRecord {
    pub fn new(frame_index: u64, safety: &SafetyResult, perf: &PerfResult) -> Self {
        Self {
            frame_index,
            d_long: safety.d_long,
            d_det: safety.d_det,
            v_r: safety.v_r,
            s_long: safety.s_long,
            s_lat: safety.s_lat,
            s_scen: safety.s_scen,
            s: safety.s,
            classification: safety.classification,
            tp: perf.tp,
            fp: perf.fp,
            fn_: perf.fn_,
            precision: perf.precision,
            recall: perf.recall,
            f1: perf.f1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str =
    "frame_index,d_long,d_det,v_r,s_long,s_lat,s_scen,S,classification,tp,fp,fn,precision,recall,f1";

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Insufficient => "insufficient",
        Classification::VeryBad => "very_bad",
        Classification::Bad => "bad",
        Classification::Good => "good",
        Classification::VeryGood => "very_good",
    }
}

/// Serializes per-frame results. CSV carries fixed columns with numbers
/// at 4 decimal places; JSON mirrors the field names at full precision.
pub fn write_results(records: &[ResultRecord], format: ResultFormat) -> String {
    match format {
        ResultFormat::Json => {
            serde_json::to_string_pretty(records).expect("results serialization")
        }
        ResultFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                let s_scen = r.s_scen.map(|x| format!("{x:.4}")).unwrap_or_default();
                writeln!(
                    out,
                    "{},{:.4},{:.4},{:.4},{:.4},{:.4},{},{:.4},{},{},{},{},{:.4},{:.4},{:.4}",
                    r.frame_index,
                    r.d_long,
                    r.d_det,
                    r.v_r,
                    r.s_long,
                    r.s_lat,
                    s_scen,
                    r.s,
                    classification_name(r.classification),
                    r.tp,
                    r.fp,
                    r.fn_,
                    r.precision,
                    r.recall,
                    r.f1
                )
                .expect("write to string");
            }
            out
        }
    }
}

pub fn read_results_json(bytes: &[u8]) -> Result<Vec<ResultRecord>, serde_json::Error> {
    serde_json::from_slice(bytes)
}
