//! Polyline curves in 3-space.
//!
//! A [`Curve`] is an ordered list of points traversed in order; a closed
//! curve wraps from its last point back to its first without storing the
//! first point twice. Orientation matters to everything downstream — line
//! integrals flip sign under reversal and linking numbers depend on both
//! traversal senses — so constructors pin it down explicitly.

use nalgebra::Vector3;

use crate::error::{Error, Result};

/// 3-vector of f64; positions are in metres.
pub type Vec3 = Vector3<f64>;

/// An oriented polyline, open or closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    points: Vec<Vec3>,
    closed: bool,
}

impl Curve {
    /// An open polyline from `points` (≥ 2, consecutive points distinct).
    pub fn open(points: Vec<Vec3>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidCurve(format!(
                "open curve needs at least 2 points, got {}",
                points.len()
            )));
        }
        check_consecutive_distinct(&points)?;
        Ok(Curve {
            points,
            closed: false,
        })
    }

    /// A closed polyline from `points` (≥ 3, consecutive points distinct,
    /// last point distinct from the first — closure is implicit).
    pub fn closed(points: Vec<Vec3>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidCurve(format!(
                "closed curve needs at least 3 points, got {}",
                points.len()
            )));
        }
        check_consecutive_distinct(&points)?;
        if (points[points.len() - 1] - points[0]).norm() == 0.0 {
            return Err(Error::InvalidCurve(
                "closed curve must not repeat its first point; closure is implicit".to_string(),
            ));
        }
        Ok(Curve {
            points,
            closed: true,
        })
    }

    /// A regular `points`-gon approximating a circle of `radius` about
    /// `center`, traversed counterclockwise as seen from the tip of
    /// `normal` (right-hand rule).
    pub fn circle(center: Vec3, normal: Vec3, radius: f64, points: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument("circle radius must be positive"));
        }
        if points < 3 {
            return Err(Error::InvalidArgument("circle needs at least 3 points"));
        }
        let len = normal.norm();
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::InvalidArgument("circle normal must be nonzero"));
        }
        let w = normal / len;
        // Any helper axis not too close to w gives a stable in-plane basis.
        let helper = if w.x.abs() <= 0.6 { Vec3::x() } else { Vec3::y() };
        let u = (helper - w * helper.dot(&w)).normalize();
        let v = w.cross(&u);
        let pts = (0..points)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * (i as f64) / (points as f64);
                center + u * (radius * t.cos()) + v * (radius * t.sin())
            })
            .collect();
        Self::closed(pts)
    }

    /// The stored vertices (for a closed curve, without the wrap point).
    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    /// Whether the curve closes back on its first point.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of straight segments traversed, including the wrap segment
    /// of a closed curve.
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    /// Segments as (start, end) pairs in traversal order.
    pub fn segments(&self) -> impl Iterator<Item = (Vec3, Vec3)> + '_ {
        let wrap = self.points.len();
        (0..self.segment_count()).map(move |i| (self.points[i], self.points[(i + 1) % wrap]))
    }

    /// First point of the traversal.
    pub fn start(&self) -> Vec3 {
        self.points[0]
    }

    /// Last point of the traversal (the first again for a closed curve).
    pub fn end(&self) -> Vec3 {
        if self.closed {
            self.points[0]
        } else {
            self.points[self.points.len() - 1]
        }
    }

    /// The same polyline traversed in the opposite sense.
    pub fn reversed(&self) -> Curve {
        let mut points = self.points.clone();
        points.reverse();
        Curve {
            points,
            closed: self.closed,
        }
    }

    /// Minimum distance from `point` to any segment of the curve (m).
    pub fn distance_to_point(&self, point: Vec3) -> f64 {
        self.segments()
            .map(|(a, b)| point_segment_distance(point, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum distance between any segment of `self` and any segment of
    /// `other` (m).
    pub fn distance_to_curve(&self, other: &Curve) -> f64 {
        let mut best = f64::INFINITY;
        for (p1, q1) in self.segments() {
            for (p2, q2) in other.segments() {
                best = best.min(segment_segment_distance(p1, q1, p2, q2));
            }
        }
        best
    }
}

fn check_consecutive_distinct(points: &[Vec3]) -> Result<()> {
    for (i, w) in points.windows(2).enumerate() {
        if (w[1] - w[0]).norm() == 0.0 {
            return Err(Error::InvalidCurve(format!(
                "points {} and {} coincide",
                i,
                i + 1
            )));
        }
    }
    Ok(())
}

/// Distance from point `p` to segment [a, b] (m).
pub(crate) fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let d = b - a;
    let t = ((p - a).dot(&d) / d.dot(&d)).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Distance between segments [p1, q1] and [p2, q2] (m). Assumes both have
/// positive length, which curve validation guarantees.
pub(crate) fn segment_segment_distance(p1: Vec3, q1: Vec3, p2: Vec3, q2: Vec3) -> f64 {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let b = d1.dot(&d2);
    let c = d1.dot(&r);
    let f = d2.dot(&r);
    let denom = a * e - b * b;
    let mut s = if denom > 0.0 {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    ((p1 + d1 * s) - (p2 + d2 * t)).norm()
}
