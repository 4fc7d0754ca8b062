//! Polyline primitives shared by every other module: arc length,
//! resampling, closest-point queries and centerline derivation.
//!
//! All values are immutable after construction and all operations are
//! pure functions, so everything here is safe to use across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when deciding whether a resample position already
/// coincides with the polyline endpoint.
const ENDPOINT_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("polyline needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),
    #[error("consecutive duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("boundary too short: length {length} < spacing {spacing}")]
    BoundaryTooShort { length: f64, spacing: f64 },
}

/// A position in world coordinates, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    fn lerp(&self, other: &Point3, t: f64) -> Point3 {
        Point3::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
            self.z + (other.z - self.z) * t,
        )
    }

    pub fn midpoint(&self, other: &Point3) -> Point3 {
        self.lerp(other, 0.5)
    }
}

/// Result of projecting a query point onto a polyline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosestPoint {
    /// Foot of the projection, on the polyline.
    pub foot: Point3,
    /// Euclidean distance from the query to the foot.
    pub distance: f64,
    /// Arc-length position of the foot along the polyline.
    pub s: f64,
}

/// An ordered 3D point sequence with cached cumulative arc length.
///
/// Used for lane boundaries and centerlines. At least two points,
/// all finite, no consecutive duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline3 {
    points: Vec<Point3>,
    cumulative: Vec<f64>,
}

impl Polyline3 {
    pub fn new(points: Vec<Point3>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::TooFewPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite(i));
            }
        }
        let mut cumulative = Vec::with_capacity(points.len());
        cumulative.push(0.0);
        for i in 1..points.len() {
            let seg = points[i - 1].distance(&points[i]);
            if seg == 0.0 {
                return Err(GeometryError::DuplicatePoint(i));
            }
            cumulative.push(cumulative[i - 1] + seg);
        }
        Ok(Self { points, cumulative })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor guarantees >= 2 points
    }

    /// Total arc length in meters (sum of Euclidean segment lengths).
    pub fn arc_length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn first(&self) -> Point3 {
        self.points[0]
    }

    pub fn last(&self) -> Point3 {
        *self.points.last().unwrap()
    }

    /// Point at arc-length position `s`, clamped to [0, total length].
    pub fn point_at(&self, s: f64) -> Point3 {
        let s = s.clamp(0.0, self.arc_length());
        // index of first cumulative value >= s
        let idx = self.cumulative.partition_point(|&c| c < s);
        if idx == 0 {
            return self.points[0];
        }
        let seg_start = self.cumulative[idx - 1];
        let seg_len = self.cumulative[idx] - seg_start;
        let t = (s - seg_start) / seg_len;
        self.points[idx - 1].lerp(&self.points[idx], t)
    }

    /// Resamples at a fixed arc-length spacing. Output points lie on the
    /// original polyline; the first point is preserved and the last output
    /// point is the original endpoint. A spacing at or beyond the total
    /// length degenerates to the two endpoints.
    pub fn resample(&self, spacing: f64) -> Result<Polyline3, GeometryError> {
        if !(spacing > 0.0) {
            return Err(GeometryError::InvalidSpacing(spacing));
        }
        let total = self.arc_length();
        let mut points = Vec::new();
        let mut k = 0usize;
        loop {
            let s = k as f64 * spacing;
            if s >= total - ENDPOINT_EPS {
                break;
            }
            points.push(self.point_at(s));
            k += 1;
        }
        points.push(self.last());
        Polyline3::new(points)
    }

    /// Closest point on any segment to `q`, with exact per-segment
    /// projection. Ties are broken toward the smallest arc-length s.
    pub fn closest_point(&self, q: &Point3) -> ClosestPoint {
        let mut best = ClosestPoint {
            foot: self.points[0],
            distance: q.distance(&self.points[0]),
            s: 0.0,
        };
        for i in 1..self.points.len() {
            let a = self.points[i - 1];
            let b = self.points[i];
            let ab = Point3::new(b.x - a.x, b.y - a.y, b.z - a.z);
            let aq = Point3::new(q.x - a.x, q.y - a.y, q.z - a.z);
            let len2 = ab.x * ab.x + ab.y * ab.y + ab.z * ab.z;
            let t = ((aq.x * ab.x + aq.y * ab.y + aq.z * ab.z) / len2).clamp(0.0, 1.0);
            let foot = a.lerp(&b, t);
            let distance = q.distance(&foot);
            if distance < best.distance {
                best = ClosestPoint {
                    foot,
                    distance,
                    s: self.cumulative[i - 1] + t * len2.sqrt(),
                };
            }
        }
        best
    }
}

/// Centerline of a boundary pair by normalized-arc-length pairing:
/// both boundaries are sampled at N equal arc-length fractions
/// (N = floor(min length / spacing) + 1) and each output point is the
/// midpoint of one sample pair. Robust to unequal boundary lengths.
pub fn centerline(
    left: &Polyline3,
    right: &Polyline3,
    spacing: f64,
) -> Result<Polyline3, GeometryError> {
    if !(spacing > 0.0) {
        return Err(GeometryError::InvalidSpacing(spacing));
    }
    let min_len = left.arc_length().min(right.arc_length());
    if min_len < spacing {
        return Err(GeometryError::BoundaryTooShort {
            length: min_len,
            spacing,
        });
    }
    let n = ((min_len / spacing).floor() as usize + 1).max(2);
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let f = i as f64 / (n - 1) as f64;
        let pl = left.point_at(f * left.arc_length());
        let pr = right.point_at(f * right.arc_length());
        points.push(pl.midpoint(&pr));
    }
    Polyline3::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn line(points: &[(f64, f64)]) -> Polyline3 {
        Polyline3::new(points.iter().map(|&(x, y)| Point3::new(x, y, 0.0)).collect()).unwrap()
    }

    /// Analytically sampled quarter circle, radius 10, 100 points.
    fn quarter_circle() -> Polyline3 {
        let pts = (0..100)
            .map(|i| {
                let a = i as f64 / 99.0 * std::f64::consts::FRAC_PI_2;
                Point3::new(10.0 * a.cos(), 10.0 * a.sin(), 0.0)
            })
            .collect();
        Polyline3::new(pts).unwrap()
    }

    #[test]
    fn arc_length_straight_line() {
        let p = line(&[(0.0, 0.0), (10.0, 0.0)]);
        assert_eq!(p.arc_length(), 10.0);
    }

    #[test]
    fn arc_length_square_wave() {
        let p = line(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(p.arc_length(), 4.0);
    }

    #[test]
    fn arc_length_quarter_circle() {
        // chord sum of the sampled arc, computed independently
        let pts: Vec<Point3> = quarter_circle().points().to_vec();
        let chord_sum: f64 = pts.windows(2).map(|w| w[0].distance(&w[1])).sum();
        assert_abs_diff_eq!(quarter_circle().arc_length(), chord_sum, epsilon = 1e-12);
        assert_abs_diff_eq!(chord_sum, 10.0 * std::f64::consts::FRAC_PI_2, epsilon = 0.01);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            Polyline3::new(vec![Point3::new(0.0, 0.0, 0.0)]),
            Err(GeometryError::TooFewPoints(1))
        );
        assert_eq!(
            Polyline3::new(vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(f64::NAN, 0.0, 0.0)
            ]),
            Err(GeometryError::NonFinite(1))
        );
        assert_eq!(
            Polyline3::new(vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0)
            ]),
            Err(GeometryError::DuplicatePoint(1))
        );
    }

    #[test]
    fn resample_counts() {
        let p = line(&[(0.0, 0.0), (10.0, 0.0)]);
        assert_eq!(p.resample(0.10).unwrap().len(), 101);

        let r = p.resample(3.0).unwrap();
        let xs: Vec<f64> = r.points().iter().map(|p| p.x).collect();
        assert_eq!(xs, vec![0.0, 3.0, 6.0, 9.0, 10.0]);
    }

    #[test]
    fn resample_spacing_beyond_length() {
        let p = line(&[(0.0, 0.0), (5.0, 0.0), (10.0, 0.0)]);
        let r = p.resample(25.0).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.first(), p.first());
        assert_eq!(r.last(), p.last());
    }

    #[test]
    fn resample_preserves_quarter_circle_length() {
        let q = quarter_circle();
        let r = q.resample(0.10).unwrap();
        let rel = (r.arc_length() - q.arc_length()).abs() / q.arc_length();
        assert!(rel < 0.001, "relative length error {rel}");
    }

    #[test]
    fn closest_point_perpendicular_and_clamped() {
        let p = line(&[(0.0, 0.0), (10.0, 0.0)]);

        let c = p.closest_point(&Point3::new(5.0, 2.0, 0.0));
        assert_eq!(c.foot, Point3::new(5.0, 0.0, 0.0));
        assert_eq!(c.distance, 2.0);
        assert_eq!(c.s, 5.0);

        let c = p.closest_point(&Point3::new(12.0, 1.0, 0.0));
        assert_eq!(c.foot, Point3::new(10.0, 0.0, 0.0));
        assert_abs_diff_eq!(c.distance, 5.0_f64.sqrt(), epsilon = 1e-12);
        assert_eq!(c.s, 10.0);
    }

    #[test]
    fn centerline_parallel_symmetric() {
        let l = line(&[(0.0, 0.0), (30.0, 0.0)]);
        let r = line(&[(0.0, 3.0), (30.0, 3.0)]);
        let c = centerline(&l, &r, 0.5).unwrap();
        for p in c.points() {
            assert_abs_diff_eq!(p.y, 1.5, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(c.arc_length(), 30.0, epsilon = 1e-9);
    }

    #[test]
    fn centerline_unequal_lengths() {
        // 30 m vs 60 m straight parallel boundaries
        let l = line(&[(0.0, 0.0), (30.0, 0.0)]);
        let r = line(&[(0.0, 3.5), (60.0, 3.5)]);
        let c = centerline(&l, &r, 0.10).unwrap();
        assert_eq!(c.len(), 301);
        for p in c.points() {
            assert_abs_diff_eq!(p.y, 1.75, epsilon = 1e-12);
        }
        let mean = (30.0 + 60.0) / 2.0;
        assert!(c.arc_length() <= mean + 1e-9);
    }

    #[test]
    fn centerline_concentric_arcs() {
        let arc = |radius: f64| {
            let pts = (0..500)
                .map(|i| {
                    let a = i as f64 / 499.0 * std::f64::consts::FRAC_PI_2;
                    Point3::new(radius * a.cos(), radius * a.sin(), 0.0)
                })
                .collect();
            Polyline3::new(pts).unwrap()
        };
        let c = centerline(&arc(9.0), &arc(12.0), 0.10).unwrap();
        for p in c.points() {
            let r = (p.x * p.x + p.y * p.y).sqrt();
            assert!((r - 10.5).abs() < 0.02, "radius {r}");
        }
    }

    #[test]
    fn centerline_too_short() {
        let l = line(&[(0.0, 0.0), (0.05, 0.0)]);
        let r = line(&[(0.0, 3.0), (30.0, 3.0)]);
        assert!(matches!(
            centerline(&l, &r, 0.10),
            Err(GeometryError::BoundaryTooShort { .. })
        ));
    }
}
