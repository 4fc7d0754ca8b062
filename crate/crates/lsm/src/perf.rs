//! Baseline point-wise precision / recall / F1, the comparison harness
//! the safety metric is contrasted against.
//!
//! Boundaries are resampled to 0.10 m point sets and matched
//! independently per point: a detected point within the threshold of any
//! point of the corresponding ground-truth boundary is a TP, otherwise an
//! FP. Ground-truth points within d_long ahead of the ego are required;
//! required points with no detected point in range are FNs.

use crate::geometry::{Point3, Polyline3};
use crate::metric::EvalConfig;
use serde::{Deserialize, Serialize};

/// Counts and derived ratios for one frame (or pooled over a scenario).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl PerfResult {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        Self {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1: f1(precision, recall),
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f1(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

fn min_dist_to_set(p: &Point3, set: &[Point3]) -> f64 {
    set.iter()
        .map(|q| p.distance(q))
        .fold(f64::INFINITY, f64::min)
}

/// Matches detected boundaries against their corresponding GT boundaries
/// (left against left, right against right). `det` and `gt` are paired by
/// index; a missing detection contributes only FNs. The FN window on each
/// GT boundary starts at the ego's projected arc-length position and
/// extends `d_long` meters.
pub fn match_boundaries(
    det: &[Option<&Polyline3>],
    gt: &[&Polyline3],
    ego_origin: &Point3,
    cfg: &EvalConfig,
    d_long: f64,
) -> PerfResult {
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    for (i, gt_boundary) in gt.iter().enumerate() {
        let gt_sampled = gt_boundary
            .resample(cfg.sample_spacing)
            .expect("validated boundary");
        let det_points: Vec<Point3> = match det.get(i).copied().flatten() {
            Some(d) => d
                .resample(cfg.sample_spacing)
                .expect("validated boundary")
                .points()
                .to_vec(),
            None => Vec::new(),
        };
        for p in &det_points {
            if min_dist_to_set(p, gt_sampled.points()) <= cfg.tp_threshold {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        // required GT points: within d_long of the ego projection
        let s_ego = gt_boundary.closest_point(ego_origin).s;
        let mut s = 0.0;
        for (j, q) in gt_sampled.points().iter().enumerate() {
            if j + 1 == gt_sampled.len() {
                s = gt_boundary.arc_length();
            }
            if s >= s_ego
                && s <= s_ego + d_long
                && (det_points.is_empty() || min_dist_to_set(q, &det_points) > cfg.tp_threshold)
            {
                fn_ += 1;
            }
            s += cfg.sample_spacing;
        }
    }
    PerfResult::from_counts(tp, fp, fn_)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{required_range, EgoState};
    use approx::assert_abs_diff_eq;

    fn line(y: f64, x0: f64, x1: f64) -> Polyline3 {
        Polyline3::new(vec![Point3::new(x0, y, 0.0), Point3::new(x1, y, 0.0)]).unwrap()
    }

    #[test]
    fn perfect_detection() {
        let gt_l = line(1.75, 0.0, 40.0);
        let gt_r = line(-1.75, 0.0, 40.0);
        let r = match_boundaries(
            &[Some(&gt_l), Some(&gt_r)],
            &[&gt_l, &gt_r],
            &Point3::new(0.0, 0.0, 0.0),
            &EvalConfig::default(),
            15.0,
        );
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));
        assert_eq!(r.fp + r.fn_, 0);
    }

    #[test]
    fn c1_partial_left_boundary() {
        // left detected over 30 of 60 m, right fully; accurate everywhere
        let gt_l = line(1.75, 0.0, 60.0);
        let gt_r = line(-1.75, 0.0, 60.0);
        let det_l = line(1.75, 0.0, 30.0);
        let cfg = EvalConfig::default();
        let d_long = required_range(
            &EgoState {
                v0: 27.78,
                vehicle_width: 2.0,
            },
            &cfg,
        );
        let r = match_boundaries(
            &[Some(&det_l), Some(&gt_r)],
            &[&gt_l, &gt_r],
            &Point3::new(0.0, 0.0, 0.0),
            &cfg,
            d_long,
        );
        assert_eq!(r.precision, 1.0);
        assert_abs_diff_eq!(r.recall, 0.75, epsilon = 0.01);
    }

    #[test]
    fn offset_beyond_threshold_zeroes_both() {
        let gt_l = line(1.75, 0.0, 40.0);
        let gt_r = line(-1.75, 0.0, 40.0);
        let det_l = line(1.75 + 0.15, 0.0, 40.0);
        let det_r = line(-1.75 + 0.15, 0.0, 40.0);
        let r = match_boundaries(
            &[Some(&det_l), Some(&det_r)],
            &[&gt_l, &gt_r],
            &Point3::new(0.0, 0.0, 0.0),
            &EvalConfig::default(),
            15.68,
        );
        assert_eq!(r.precision, 0.0);
        assert_eq!(r.recall, 0.0);
    }

    #[test]
    fn empty_detection_counts_required_points_as_fn() {
        let gt_l = line(1.75, 0.0, 40.0);
        let gt_r = line(-1.75, 0.0, 40.0);
        let r = match_boundaries(
            &[None, None],
            &[&gt_l, &gt_r],
            &Point3::new(0.0, 0.0, 0.0),
            &EvalConfig::default(),
            10.0,
        );
        assert_eq!(r.tp + r.fp, 0);
        // 101 required points per boundary (s in [0, 10] at 0.10 m)
        assert_eq!(r.fn_, 202);
    }

    #[test]
    fn f1_examples() {
        assert_eq!(f1(1.0, 1.0), 1.0);
        assert_eq!(f1(1.0, 0.0), 0.0);
        assert_abs_diff_eq!(f1(0.4199, 0.9810), 0.5881, epsilon = 0.001);
    }
}
