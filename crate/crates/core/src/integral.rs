//! Line, surface, and linking integrals over polyline curves.
//!
//! Every quadrature here is a fixed-order midpoint rule accumulated in a
//! fixed sequential order, so identical inputs produce bitwise identical
//! results. Midpoint sampling is exact for integrands linear in position
//! (notably the symmetric-gauge potential of a uniform field), second-order
//! accurate on open paths, and spectrally accurate for smooth integrands on
//! closed loops.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{
    flux_density_within, vector_potential_within, FieldSource, DEFAULT_SOURCE_CLEARANCE,
};
use crate::geometry::{segment_segment_distance, Curve, Vec3};

/// Maximum distance a vertex may sit off the best-fit plane for surface
/// integration (m).
pub const PLANARITY_TOLERANCE: f64 = 1e-9;

/// ∫ A · dl along `curve` (Wb), with the default source clearance.
///
/// `refine` splits every polyline segment into that many midpoint-sampled
/// pieces; it must be at least 1.
pub fn line_integral_a(source: &FieldSource, curve: &Curve, refine: usize) -> Result<f64> {
    line_integral_a_within(source, curve, refine, DEFAULT_SOURCE_CLEARANCE)
}

/// ∫ A · dl along `curve` (Wb), rejecting sample points within `clearance`
/// metres of a source singularity.
pub fn line_integral_a_within(
    source: &FieldSource,
    curve: &Curve,
    refine: usize,
    clearance: f64,
) -> Result<f64> {
    if refine == 0 {
        return Err(Error::InvalidArgument("refine must be at least 1"));
    }
    let inv = 1.0 / refine as f64;
    let mut total = 0.0;
    for (p, q) in curve.segments() {
        let step = (q - p) * inv;
        for j in 0..refine {
            let mid = p + step * (j as f64 + 0.5);
            total += vector_potential_within(source, mid, clearance)?.dot(&step);
        }
    }
    Ok(total)
}

/// ∫∫ B · dS (Wb) over the flat surface bounded by the closed planar curve,
/// with the default source clearance.
///
/// The surface is meshed with a `grid` × `grid` polar grid about the
/// centroid, so the boundary must be star-shaped about that point and wind
/// around it exactly once. The surface normal follows the traversal sense
/// by the right-hand rule.
pub fn surface_flux(source: &FieldSource, curve: &Curve, grid: usize) -> Result<f64> {
    surface_flux_within(source, curve, grid, DEFAULT_SOURCE_CLEARANCE)
}

/// ∫∫ B · dS (Wb), rejecting sample points within `clearance` metres of a
/// source singularity.
pub fn surface_flux_within(
    source: &FieldSource,
    curve: &Curve,
    grid: usize,
    clearance: f64,
) -> Result<f64> {
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be at least 1"));
    }
    if !curve.is_closed() {
        return Err(Error::InvalidCurve(
            "surface flux needs a closed boundary".to_string(),
        ));
    }
    let pts = curve.points();
    let n = pts.len();
    let centroid = pts.iter().fold(Vec3::zeros(), |acc, p| acc + p) / n as f64;

    // Newell vector area fixes the plane and the oriented normal.
    let mut vector_area2 = Vec3::zeros();
    for i in 0..n {
        let a = pts[i] - centroid;
        let b = pts[(i + 1) % n] - centroid;
        vector_area2 += a.cross(&b);
    }
    let norm = vector_area2.norm();
    if norm == 0.0 {
        return Err(Error::NotStarShaped);
    }
    let normal = vector_area2 / norm;

    for p in pts {
        if (p - centroid).dot(&normal).abs() > PLANARITY_TOLERANCE {
            return Err(Error::NonPlanarCurve {
                tolerance: PLANARITY_TOLERANCE,
            });
        }
    }

    // In-plane frame anchored on the first vertex, so its polar angle is 0.
    let first = pts[0] - centroid;
    let first_in_plane = first - normal * first.dot(&normal);
    if first_in_plane.norm() == 0.0 {
        return Err(Error::NotStarShaped);
    }
    let u = first_in_plane / first_in_plane.norm();
    let v = normal.cross(&u);

    // Polar form of the boundary; angles must advance strictly and close
    // after exactly one turn for the radial lookup to be single-valued.
    let planar: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| {
            let d = p - centroid;
            (d.dot(&u), d.dot(&v))
        })
        .collect();
    let mut cumulative = Vec::with_capacity(n + 1);
    cumulative.push(0.0);
    let mut previous = 0.0_f64;
    for (x, y) in planar.iter().skip(1) {
        if x.hypot(*y) == 0.0 {
            return Err(Error::NotStarShaped);
        }
        let angle = y.atan2(*x);
        let mut delta = angle - previous.rem_euclid(2.0 * PI);
        while delta <= -PI {
            delta += 2.0 * PI;
        }
        while delta > PI {
            delta -= 2.0 * PI;
        }
        if delta <= 0.0 {
            return Err(Error::NotStarShaped);
        }
        previous += delta;
        cumulative.push(previous);
    }
    let mut closing = -previous.rem_euclid(2.0 * PI);
    while closing <= -PI {
        closing += 2.0 * PI;
    }
    while closing > PI {
        closing -= 2.0 * PI;
    }
    if closing <= 0.0 {
        return Err(Error::NotStarShaped);
    }
    if ((previous + closing) - 2.0 * PI).abs() > 1e-9 {
        return Err(Error::NotStarShaped);
    }
    cumulative.push(2.0 * PI);

    // Radius of the boundary along the ray at angle t ∈ [0, 2π).
    let boundary_radius = |t: f64| -> Result<f64> {
        let i = cumulative.partition_point(|&c| c <= t) - 1;
        let i = i.min(n - 1);
        let (ax, ay) = planar[i];
        let (bx, by) = planar[(i + 1) % n];
        let (ex, ey) = (t.cos(), t.sin());
        let cross = |px: f64, py: f64, qx: f64, qy: f64| px * qy - py * qx;
        let denom = cross(bx - ax, by - ay, ex, ey);
        if denom == 0.0 {
            return Err(Error::NotStarShaped);
        }
        let s = (-cross(ax, ay, ex, ey) / denom).clamp(0.0, 1.0);
        let px = ax + s * (bx - ax);
        let py = ay + s * (by - ay);
        Ok(px * ex + py * ey)
    };

    let dtheta = 2.0 * PI / grid as f64;
    let mut flux = 0.0;
    for jt in 0..grid {
        let t = (jt as f64 + 0.5) * dtheta;
        let rim = boundary_radius(t)?;
        let dr = rim / grid as f64;
        let (cos_t, sin_t) = (t.cos(), t.sin());
        for ir in 0..grid {
            let rm = (ir as f64 + 0.5) * dr;
            let sample = centroid + u * (rm * cos_t) + v * (rm * sin_t);
            flux += flux_density_within(source, sample, clearance)?.dot(&normal) * rm * dr * dtheta;
        }
    }
    Ok(flux)
}

/// A Gauss linking number: the quadrature value and its nearest integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkingNumber {
    /// Nearest integer to the double integral.
    pub integer: i64,
    /// The raw double-sum value before rounding.
    pub raw: f64,
}

impl LinkingNumber {
    /// Distance from the raw value to the reported integer.
    pub fn residual(&self) -> f64 {
        (self.raw - self.integer as f64).abs()
    }
}

/// Gauss linking number of two disjoint closed curves, with the default
/// separation requirement.
pub fn linking_number(first: &Curve, second: &Curve) -> Result<LinkingNumber> {
    linking_number_within(first, second, DEFAULT_SOURCE_CLEARANCE)
}

/// Gauss linking number, requiring the curves to stay more than
/// `min_separation` metres apart:
///
///   Lk = (1/4π) Σᵢ Σⱼ (xᵢ − yⱼ) · (Δxᵢ × Δyⱼ) / |xᵢ − yⱼ|³
///
/// summed over segment midpoints. Converges to the integer at O(1/N²).
pub fn linking_number_within(
    first: &Curve,
    second: &Curve,
    min_separation: f64,
) -> Result<LinkingNumber> {
    if !first.is_closed() || !second.is_closed() {
        return Err(Error::InvalidCurve(
            "linking number needs two closed curves".to_string(),
        ));
    }
    let mut sum = 0.0;
    for (p1, q1) in first.segments() {
        let m1 = (p1 + q1) * 0.5;
        let d1 = q1 - p1;
        for (p2, q2) in second.segments() {
            if segment_segment_distance(p1, q1, p2, q2) <= min_separation {
                return Err(Error::CurvesIntersect {
                    limit: min_separation,
                });
            }
            let r = m1 - (p2 + q2) * 0.5;
            let dist = r.norm();
            sum += r.dot(&d1.cross(&(q2 - p2))) / (dist * dist * dist);
        }
    }
    let raw = sum / (4.0 * PI);
    Ok(LinkingNumber {
        integer: raw.round() as i64,
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaugeFunction;
    use approx::assert_relative_eq;

    /// The standard two-ring configuration with linking number +1: a unit
    /// circle in the xy-plane and a unit circle through its centre lying in
    /// the yz-plane, offset along y.
    fn hopf_pair(points: usize) -> (Curve, Curve) {
        let gamma = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, points).unwrap();
        let filament =
            Curve::circle(Vec3::new(0.0, 1.0, 0.0), -Vec3::x(), 1.0, points).unwrap();
        (gamma, filament)
    }

    #[test]
    fn uniform_field_line_integral_equals_flux_through_vector_area() {
        // A = B × r / 2 is linear, so the midpoint rule is exact and the
        // circulation equals B · (vector area) to rounding.
        let b = Vec3::new(0.02, -0.01, 0.05);
        let src = FieldSource::uniform(b);
        let curve = Curve::closed(vec![
            Vec3::new(0.3, 0.1, 0.0),
            Vec3::new(1.2, -0.2, 0.4),
            Vec3::new(0.9, 1.1, 0.7),
            Vec3::new(-0.1, 0.8, 0.2),
        ])
        .unwrap();
        let pts = curve.points();
        let mut area2 = Vec3::zeros();
        for i in 0..pts.len() {
            area2 += pts[i].cross(&pts[(i + 1) % pts.len()]);
        }
        let expected = b.dot(&(area2 * 0.5));
        let integral = line_integral_a(&src, &curve, 1).unwrap();
        assert_relative_eq!(integral, expected, max_relative = 1e-14);
        // refinement must not change an already-exact answer materially
        let refined = line_integral_a(&src, &curve, 7).unwrap();
        assert_relative_eq!(refined, expected, max_relative = 1e-13);
    }

    #[test]
    fn line_integral_flips_sign_under_reversal() {
        let src = FieldSource::uniform(Vec3::new(0.0, 0.0, 0.1));
        let curve = Curve::circle(Vec3::zeros(), Vec3::z(), 0.8, 64).unwrap();
        let forward = line_integral_a(&src, &curve, 1).unwrap();
        let backward = line_integral_a(&src, &curve.reversed(), 1).unwrap();
        assert_relative_eq!(forward, -backward, max_relative = 1e-13);
        assert!(forward > 0.0); // positive flux through a +z-oriented loop
    }

    #[test]
    fn refine_zero_rejected() {
        let src = FieldSource::uniform(Vec3::z());
        let curve = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, 16).unwrap();
        assert!(matches!(
            line_integral_a(&src, &curve, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn closed_loop_integral_is_gauge_invariant() {
        let base = FieldSource::uniform(Vec3::new(0.0, 0.0, 0.03));
        let chi = GaugeFunction::Sinusoidal {
            c: 1.7e-3,
            k: Vec3::new(2.0, -1.0, 0.5),
        };
        let shifted = FieldSource::gauge_shifted(base.clone(), chi);
        let curve = Curve::circle(Vec3::new(0.2, 0.0, -0.1), Vec3::new(1.0, 2.0, 2.0), 0.7, 512)
            .unwrap();
        let plain = line_integral_a(&base, &curve, 1).unwrap();
        let gauged = line_integral_a(&shifted, &curve, 1).unwrap();
        // closed-loop midpoint sums of smooth periodic integrands converge
        // spectrally; at 512 points the gradient term is below rounding
        assert_relative_eq!(plain, gauged, max_relative = 1e-12);
    }

    #[test]
    fn open_path_gradient_shift_adds_endpoint_difference() {
        // For χ linear or quadratic the shift integrand is polynomial of
        // degree ≤ 1 along each segment, so midpoint quadrature picks up
        // exactly χ(end) − χ(start).
        let base = FieldSource::uniform(Vec3::new(0.01, 0.0, 0.02));
        let path = Curve::open(vec![
            Vec3::new(0.1, -0.3, 0.2),
            Vec3::new(0.7, 0.4, -0.1),
            Vec3::new(1.3, 0.2, 0.5),
        ])
        .unwrap();
        let chis = vec![
            GaugeFunction::Linear {
                a: Vec3::new(0.4, -0.2, 0.9),
            },
            GaugeFunction::Quadratic {
                q: nalgebra::Matrix3::new(0.5, 0.1, 0.0, 0.3, -0.2, 0.4, -0.1, 0.2, 0.6),
            },
        ];
        for chi in chis {
            let shifted = FieldSource::gauge_shifted(base.clone(), chi.clone());
            let plain = line_integral_a(&base, &path, 1).unwrap();
            let gauged = line_integral_a(&shifted, &path, 1).unwrap();
            let expected = chi.value(path.end()) - chi.value(path.start());
            assert_relative_eq!(gauged - plain, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn filament_circulation_counts_linked_flux() {
        // With matching discretisations the filament kernel and the linking
        // kernel are the same triple product, so ∮ A · dl = Φ · Lk to
        // rounding even at coarse resolution.
        let (gamma, filament_path) = hopf_pair(256);
        let flux = 3.25e-15;
        let src = FieldSource::flux_filament(filament_path.clone(), flux).unwrap();
        let circulation = line_integral_a(&src, &gamma, 1).unwrap();
        let lk = linking_number(&gamma, &filament_path).unwrap();
        assert_eq!(lk.integer, 1);
        assert_relative_eq!(circulation, flux * lk.raw, max_relative = 1e-10);
    }

    #[test]
    fn composite_circulation_is_the_sum_of_its_parts() {
        // The verification source superposes a filament and a uniform probe
        // field; its circulation must decompose into the two separate
        // circulations.
        let (gamma, filament_path) = hopf_pair(128);
        let filament = FieldSource::flux_filament(filament_path, 2.4e-15).unwrap();
        let uniform = FieldSource::uniform(Vec3::new(0.0, 1e-16, 3e-15));
        let combined = FieldSource::composite(vec![filament.clone(), uniform.clone()]);
        let whole = line_integral_a(&combined, &gamma, 1).unwrap();
        let parts = line_integral_a(&filament, &gamma, 1).unwrap()
            + line_integral_a(&uniform, &gamma, 1).unwrap();
        assert_relative_eq!(whole, parts, max_relative = 1e-12);
    }

    #[test]
    fn surface_flux_of_uniform_field_matches_vector_area() {
        let b = Vec3::new(0.0, 0.0, 0.04);
        let src = FieldSource::uniform(b);
        let curve = Curve::circle(Vec3::new(0.5, -0.2, 0.3), Vec3::z(), 0.9, 512).unwrap();
        let pts = curve.points();
        let centroid = pts.iter().fold(Vec3::zeros(), |acc, p| acc + p) / pts.len() as f64;
        let mut area2 = Vec3::zeros();
        for i in 0..pts.len() {
            area2 += (pts[i] - centroid).cross(&(pts[(i + 1) % pts.len()] - centroid));
        }
        let expected = b.dot(&(area2 * 0.5));
        let flux = surface_flux(&src, &curve, 96).unwrap();
        assert_relative_eq!(flux, expected, max_relative = 1e-4);
        // reversing the boundary reverses the oriented surface
        let flipped = surface_flux(&src, &curve.reversed(), 96).unwrap();
        assert_relative_eq!(flipped, -expected, max_relative = 1e-4);
    }

    #[test]
    fn surface_flux_rejects_bad_boundaries() {
        let src = FieldSource::uniform(Vec3::z());
        let open = Curve::open(vec![Vec3::zeros(), Vec3::x(), Vec3::y()]).unwrap();
        assert!(matches!(
            surface_flux(&src, &open, 8),
            Err(Error::InvalidCurve(_))
        ));

        let skewed = Curve::closed(vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(-1.0, 0.0, 1e-6),
            Vec3::new(0.0, -1.0, 0.0),
        ])
        .unwrap();
        assert!(matches!(
            surface_flux(&src, &skewed, 8),
            Err(Error::NonPlanarCurve { .. })
        ));

        // a crescent whose centroid lies outside the enclosed region
        let mut pts = Vec::new();
        for i in 0..24 {
            let t = 2.0 * PI * i as f64 / 24.0;
            pts.push(Vec3::new(t.cos(), t.sin(), 0.0));
        }
        for i in (1..23).rev() {
            let t = 2.0 * PI * i as f64 / 24.0;
            pts.push(Vec3::new(0.55 + 0.5 * t.cos(), 0.5 * t.sin(), 0.0));
        }
        let crescent = Curve::closed(pts).unwrap();
        assert!(matches!(
            surface_flux(&src, &crescent, 8),
            Err(Error::NotStarShaped)
        ));
    }

    #[test]
    fn hopf_rings_link_once() {
        let (gamma, filament) = hopf_pair(512);
        let lk = linking_number(&gamma, &filament).unwrap();
        assert_eq!(lk.integer, 1);
        assert!(lk.residual() < 1e-4);
        // symmetric in argument order
        let lk_swapped = linking_number(&filament, &gamma).unwrap();
        assert_eq!(lk_swapped.integer, 1);
        // reversing one orientation flips the sign
        let lk_rev = linking_number(&gamma.reversed(), &filament).unwrap();
        assert_eq!(lk_rev.integer, -1);
        assert_relative_eq!(lk_rev.raw, -lk.raw, max_relative = 1e-12);
    }

    #[test]
    fn unlinked_rings_give_zero() {
        let a = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, 128).unwrap();
        let b = Curve::circle(Vec3::new(4.0, 0.0, 0.0), Vec3::z(), 1.0, 128).unwrap();
        let lk = linking_number(&a, &b).unwrap();
        assert_eq!(lk.integer, 0);
        assert!(lk.raw.abs() < 1e-6);
    }

    #[test]
    fn doubly_wound_ring_links_twice() {
        // wind the "filament" circle twice around the gamma loop
        let n = 512;
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let t = 4.0 * PI * i as f64 / n as f64; // two turns
            let wobble = 1e-4 * (2.0 * PI * i as f64 / n as f64).sin();
            pts.push(Vec3::new(
                wobble,
                1.0 + (1.0 + wobble) * t.cos(),
                (1.0 + wobble) * t.sin(),
            ));
        }
        let double = Curve::closed(pts).unwrap();
        let gamma = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, 512).unwrap();
        let lk = linking_number(&gamma, &double).unwrap();
        assert_eq!(lk.integer.abs(), 2);
        assert!(lk.residual() < 1e-2);
    }

    #[test]
    fn touching_curves_are_rejected() {
        let a = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, 64).unwrap();
        // second ring passes through the point (1, 0, 0) of the first
        let b = Curve::circle(Vec3::new(1.0, 0.5, 0.0), Vec3::x(), 0.5, 64).unwrap();
        let result = linking_number_within(&a, &b, 1e-2);
        assert!(matches!(result, Err(Error::CurvesIntersect { .. })));
    }
}
