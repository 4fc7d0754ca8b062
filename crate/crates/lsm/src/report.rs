//! Scenario-level evaluation pipeline and aggregation: runs the safety
//! metric and the performance baseline over every frame and reduces the
//! per-frame results to per-scenario statistics.
//!
//! Safety scores are averaged per frame; precision and recall are pooled
//! from TP/FP/FN summed over all frames, not averaged per frame.

use crate::metric::{evaluate_frame, required_range};
use crate::perf::{match_boundaries, PerfResult};
use crate::scenario::{DetectionFrame, Lane, ResultRecord, ScenarioFile, ScenarioInput, Synthesis};
use crate::sensor::sense_sequence;
use crate::{geometry::Point3, metric::EvalConfig};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("cannot aggregate an empty result list")]
pub struct EmptyResults;

/// Per-scenario statistics, one row per scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub scenario_name: String,
    pub safety_mean: f64,
    pub safety_min: f64,
    pub safety_max: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub frame_count: usize,
    pub no_detection_count: usize,
}

/// Generates the detection frames of a synthesis scenario.
pub fn synthesize_frames(lane: &Lane, synth: &Synthesis) -> Vec<DetectionFrame> {
    sense_sequence(
        &lane.left_boundary,
        &lane.right_boundary,
        &synth.trajectory,
        &synth.sensor,
    )
    .into_iter()
    .zip(&synth.trajectory)
    .enumerate()
    .map(|(i, ((left, right), origin))| DetectionFrame {
        frame_index: i as u64,
        timestamp: i as f64 * synth.frame_period,
        ego: synth.ego,
        ego_origin: *origin,
        left,
        right,
    })
    .collect()
}

/// Scores one frame with both the safety metric and the baseline.
pub fn evaluate_one(frame: &DetectionFrame, lane: &Lane, cfg: &EvalConfig) -> ResultRecord {
    let safety = evaluate_frame(
        frame.left.as_ref(),
        frame.right.as_ref(),
        &lane.left_boundary,
        &lane.right_boundary,
        &frame.ego,
        &lane.context,
        cfg,
    );
    let d_long = required_range(&frame.ego, cfg);
    let perf = match_boundaries(
        &[frame.left.as_ref(), frame.right.as_ref()],
        &[&lane.left_boundary, &lane.right_boundary],
        &frame.ego_origin,
        cfg,
        d_long,
    );
    ResultRecord::new(frame.frame_index, &safety, &perf)
}

/// Evaluates every frame of a scenario, synthesizing detections first
/// when the scenario carries a trajectory and sensor model. Results are
/// ordered by frame index.
pub fn evaluate_scenario(scenario: &ScenarioFile) -> Vec<ResultRecord> {
    let frames: Vec<DetectionFrame> = match &scenario.input {
        ScenarioInput::Frames(frames) => frames.clone(),
        ScenarioInput::Synthesis(synth) => synthesize_frames(&scenario.lane, synth),
    };
    frames
        .iter()
        .map(|f| evaluate_one(f, &scenario.lane, &scenario.eval_config))
        .collect()
}

/// Reduces per-frame records: mean/min/max of the per-frame safety
/// score, pooled precision/recall/F1 from summed counts.
pub fn aggregate(name: &str, records: &[ResultRecord]) -> Result<ScenarioSummary, EmptyResults> {
    if records.is_empty() {
        return Err(EmptyResults);
    }
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    let mut no_detection = 0;
    for r in records {
        sum += r.s;
        min = min.min(r.s);
        max = max.max(r.s);
        tp += r.tp;
        fp += r.fp;
        fn_ += r.fn_;
        if r.d_det == 0.0 {
            no_detection += 1;
        }
    }
    let pooled = PerfResult::from_counts(tp, fp, fn_);
    Ok(ScenarioSummary {
        scenario_name: name.to_string(),
        safety_mean: sum / records.len() as f64,
        safety_min: min,
        safety_max: max,
        precision: pooled.precision,
        recall: pooled.recall,
        f1: pooled.f1,
        frame_count: records.len(),
        no_detection_count: no_detection,
    })
}

/// Default ego origin when none is recorded: start of the GT centerline.
pub fn lane_start(lane: &Lane) -> Point3 {
    lane.left_boundary.first().midpoint(&lane.right_boundary.first())
}
