// Validation guards are written as `!(x > 0.0)` on purpose: the negated
// form fails closed on NaN, which `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Offline safety evaluation for lane detection.
//!
//! Scores detected lane boundaries against a ground-truth lane with a
//! composed safety score in [0, 1] built from three components:
//! longitudinal detection range, lateral centerline accuracy, and
//! scenario semantics. A point-wise precision/recall/F1 baseline runs
//! alongside so safety-vs-performance divergence is measurable, and a
//! seeded lane-sensor error model generates test detections from ground
//! truth.
//!
//! - [`geometry`]: polylines, arc length, closest point, centerlines
//! - [`metric`]: the safety score and its intermediates
//! - [`perf`]: point-wise precision / recall / F1
//! - [`sensor`]: synthetic detections with range, offset, noise, dropout
//! - [`scenario`]: `.scenario.json` input and results output formats
//! - [`report`]: per-scenario evaluation pipeline and aggregation

pub mod fixtures;
pub mod geometry;
pub mod metric;
pub mod perf;
pub mod report;
pub mod scenario;
pub mod sensor;
