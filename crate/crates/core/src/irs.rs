//! Reflecting-surface lattice, patch layouts, phase profiles and timed
//! patch schedules.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{link_geometry, RotationSequence, Vec3};

/// Surface dimensions and pose.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsSpec {
    pub rows: usize,
    pub columns: usize,
    pub pru_x: f64,
    pub pru_y: f64,
    pub rotation: RotationSequence,
}

impl IrsSpec {
    pub fn element_count(&self) -> usize {
        self.rows * self.columns
    }

    /// Element side length; the lattice is square-celled.
    pub fn pru_side(&self) -> f64 {
        self.pru_x
    }

    pub fn full_patch(&self) -> PatchSpec {
        PatchSpec::new(0, self.columns - 1, 0, self.rows - 1)
    }
}

/// Inclusive element index rectangle: columns `x_start..=x_end`, rows
/// `y_start..=y_end`, origin at the min-x/min-y lattice corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatchSpec {
    pub x_start: usize,
    pub x_end: usize,
    pub y_start: usize,
    pub y_end: usize,
}

impl PatchSpec {
    pub const fn new(x_start: usize, x_end: usize, y_start: usize, y_end: usize) -> Self {
        Self {
            x_start,
            x_end,
            y_start,
            y_end,
        }
    }

    pub fn from_size(size: [usize; 4]) -> Self {
        Self::new(size[0], size[1], size[2], size[3])
    }

    pub fn size(&self) -> [usize; 4] {
        [self.x_start, self.x_end, self.y_start, self.y_end]
    }

    pub fn is_empty(&self) -> bool {
        self.x_start > self.x_end || self.y_start > self.y_end
    }

    /// Patch columns `M^C`.
    pub fn cols(&self) -> usize {
        (self.x_end + 1).saturating_sub(self.x_start)
    }

    /// Patch rows `M^R`.
    pub fn rows(&self) -> usize {
        (self.y_end + 1).saturating_sub(self.y_start)
    }

    pub fn element_count(&self) -> usize {
        self.cols() * self.rows()
    }

    fn intersection(&self, other: &PatchSpec) -> Option<PatchSpec> {
        let r = PatchSpec::new(
            self.x_start.max(other.x_start),
            self.x_end.min(other.x_end),
            self.y_start.max(other.y_start),
            self.y_end.min(other.y_end),
        );
        (!r.is_empty()).then_some(r)
    }
}

/// One patch layout held for `period_s` seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchConfiguration {
    pub patches: Vec<PatchSpec>,
    pub period_s: f64,
}

/// Direction-cosine offsets shared by every element of a patch.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseParams {
    pub phi_x: f64,
    pub phi_y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayoutError {
    EmptyPatch {
        patch: usize,
    },
    OutOfBounds {
        patch: usize,
        columns: usize,
        rows: usize,
    },
    Overlap {
        first: usize,
        second: usize,
        region: PatchSpec,
    },
    NonPositivePeriod,
}

impl fmt::Display for LayoutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutError::EmptyPatch { patch } => write!(f, "patch {patch} selects no elements"),
            LayoutError::OutOfBounds { patch, columns, rows } => {
                write!(f, "patch {patch} exceeds the {columns}x{rows} lattice")
            }
            LayoutError::Overlap { first, second, region } => write!(
                f,
                "patches {first} and {second} overlap on columns {}..={} rows {}..={}",
                region.x_start, region.x_end, region.y_start, region.y_end
            ),
            LayoutError::NonPositivePeriod => write!(f, "period must be positive"),
        }
    }
}

/// Offset `(i - 1/2)` of lattice index `index` from the surface center, in
/// element pitches.
pub fn lattice_offset(index: usize, count: usize) -> f64 {
    index as f64 - (count as f64 - 1.0) / 2.0
}

/// Local `(x, y)` centers, in meters, of a patch's elements (x fastest).
pub fn element_centers(spec: &IrsSpec, patch: &PatchSpec) -> Vec<(f64, f64)> {
    let d = spec.pru_side();
    (patch.y_start..=patch.y_end)
        .flat_map(|r| {
            (patch.x_start..=patch.x_end)
                .map(move |c| (d * lattice_offset(c, spec.columns), d * lattice_offset(r, spec.rows)))
        })
        .collect()
}

pub fn validate_layout(spec: &IrsSpec, config: &PatchConfiguration) -> std::result::Result<(), Vec<LayoutError>> {
    let mut errors = Vec::new();
    if !(config.period_s > 0.0) {
        errors.push(LayoutError::NonPositivePeriod);
    }
    for (k, p) in config.patches.iter().enumerate() {
        if p.is_empty() {
            errors.push(LayoutError::EmptyPatch { patch: k });
        } else if p.x_end >= spec.columns || p.y_end >= spec.rows {
            errors.push(LayoutError::OutOfBounds {
                patch: k,
                columns: spec.columns,
                rows: spec.rows,
            });
        }
    }
    for (a, pa) in config.patches.iter().enumerate() {
        for (b, pb) in config.patches.iter().enumerate().skip(a + 1) {
            if pa.is_empty() || pb.is_empty() {
                continue;
            }
            if let Some(region) = pa.intersection(pb) {
                errors.push(LayoutError::Overlap {
                    first: a,
                    second: b,
                    region,
                });
            }
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

/// Phase offsets that cancel the BS and GU direction cosines, steering the
/// patch main lobe onto the pair. Inputs are in the surface frame.
pub fn optimal_phases(bs_local: Vec3, gu_local: Vec3) -> Result<PhaseParams> {
    let bs = link_geometry(bs_local, Vec3::ZERO).map_err(|_| Error::DegenerateGeometry("BS at the surface center"))?;
    let gu = link_geometry(gu_local, Vec3::ZERO).map_err(|_| Error::DegenerateGeometry("GU at the surface center"))?;
    let (bx, by) = bs.direction_cosines();
    let (gx, gy) = gu.direction_cosines();
    Ok(PhaseParams {
        phi_x: -(bx + gx),
        phi_y: -(by + gy),
    })
}

/// Wrap an angle onto `[-π, π)`.
pub fn wrap_phase(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    x - two_pi * ((x + PI) / two_pi).floor()
}

/// Phase of the element at lattice offsets `(offset_x, offset_y)`.
pub fn element_phase(params: PhaseParams, offset_x: f64, offset_y: f64, ell: f64) -> f64 {
    wrap_phase(ell * (offset_x * params.phi_x + offset_y * params.phi_y))
}

/// The configuration in force at some instant.
#[derive(Debug, Clone, Copy)]
pub struct ActiveConfiguration<'a> {
    pub index: usize,
    pub window_start: f64,
    pub configuration: &'a PatchConfiguration,
}

/// Look up the configuration whose half-open window `[start, end)` contains
/// `t`. Past the end of the schedule the final configuration is kept.
pub fn configuration_at(schedule: &[PatchConfiguration], t: f64) -> Result<ActiveConfiguration<'_>> {
    let last = schedule.len().checked_sub(1).ok_or(Error::EmptySchedule)?;
    let mut start = 0.0;
    for (index, configuration) in schedule.iter().enumerate() {
        let end = start + configuration.period_s;
        if t < end || index == last {
            return Ok(ActiveConfiguration {
                index,
                window_start: start,
                configuration,
            });
        }
        start = end;
    }
    unreachable!("loop returns on the last configuration")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Axis, SurfaceFrame};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn surface(rows: usize, columns: usize) -> IrsSpec {
        IrsSpec {
            rows,
            columns,
            pru_x: 0.01,
            pru_y: 0.01,
            rotation: RotationSequence::new(vec![Axis::X], vec![180.0]),
        }
    }

    #[test]
    fn centers_are_symmetric() {
        let s = surface(2, 2);
        let mut c = element_centers(&s, &s.full_patch());
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for ((x, y), (ex, ey)) in c
            .iter()
            .zip([(-0.005, -0.005), (-0.005, 0.005), (0.005, -0.005), (0.005, 0.005)])
        {
            assert_abs_diff_eq!(*x, ex, epsilon = 1e-15);
            assert_abs_diff_eq!(*y, ey, epsilon = 1e-15);
        }
        let one = surface(1, 1);
        assert_eq!(element_centers(&one, &one.full_patch()), vec![(0.0, 0.0)]);
    }

    #[test]
    fn large_lattice_extremes() {
        let s = surface(100, 100);
        let c = element_centers(&s, &s.full_patch());
        assert_eq!(c.len(), 10_000);
        let max_x = c.iter().map(|p| p.0).fold(f64::MIN, f64::max);
        let min_y = c.iter().map(|p| p.1).fold(f64::MAX, f64::min);
        // (99 - 49.5) * 0.01 and (0 - 49.5) * 0.01
        assert_abs_diff_eq!(max_x, 0.495, epsilon = 1e-12);
        assert_abs_diff_eq!(min_y, -0.495, epsilon = 1e-12);
    }

    fn layout(patches: &[[usize; 4]]) -> PatchConfiguration {
        PatchConfiguration {
            patches: patches.iter().copied().map(PatchSpec::from_size).collect(),
            period_s: 5.0,
        }
    }

    #[test]
    fn layout_validation() {
        let s = surface(100, 100);
        assert!(validate_layout(&s, &layout(&[[0, 49, 0, 99], [50, 99, 0, 99]])).is_ok());
        let errs = validate_layout(&s, &layout(&[[0, 50, 0, 99], [50, 99, 0, 99]])).unwrap_err();
        assert_eq!(
            errs,
            vec![LayoutError::Overlap {
                first: 0,
                second: 1,
                region: PatchSpec::new(50, 50, 0, 99)
            }]
        );
        let errs = validate_layout(&s, &layout(&[[0, 120, 0, 99]])).unwrap_err();
        assert!(matches!(errs[0], LayoutError::OutOfBounds { patch: 0, .. }));
        let errs = validate_layout(&s, &layout(&[[10, 5, 0, 99]])).unwrap_err();
        assert_eq!(errs, vec![LayoutError::EmptyPatch { patch: 0 }]);
    }

    #[test]
    fn single_element_overlap_is_rejected() {
        let s = surface(100, 100);
        let quads = [[0, 49, 0, 49], [50, 99, 0, 49], [0, 49, 50, 99], [50, 99, 50, 99]];
        assert!(validate_layout(&s, &layout(&quads)).is_ok());
        for k in 0..4 {
            let mut grown = quads;
            // stretch one quadrant by one element into a neighbour
            if grown[k][1] < 99 {
                grown[k][1] += 1;
            } else {
                grown[k][0] -= 1;
            }
            assert!(validate_layout(&s, &layout(&grown)).is_err());
        }
    }

    #[test]
    fn normal_incidence_needs_no_steering() {
        let p = optimal_phases(Vec3::new(0.0, 0.0, 10.0), Vec3::new(0.0, 0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(p.phi_x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.phi_y, 0.0, epsilon = 1e-15);
        let p = optimal_phases(Vec3::new(-20.0, 5.0, 10.0), Vec3::new(20.0, 5.0, 10.0)).unwrap();
        assert_abs_diff_eq!(p.phi_x, 0.0, epsilon = 1e-15);
        assert!(optimal_phases(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn optimal_phases_close_the_steering_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut p = || {
                Vec3::new(
                    rng.random_range(-300.0..300.0),
                    rng.random_range(-300.0..300.0),
                    rng.random_range(-100.0..100.0),
                )
            };
            let (bs, gu, c) = (p(), p(), p());
            let frame =
                SurfaceFrame::new(c, &RotationSequence::new(vec![Axis::X, Axis::Z], vec![170.0, 33.0])).unwrap();
            let (bl, gl) = (frame.to_local(bs), frame.to_local(gu));
            let ph = optimal_phases(bl, gl).unwrap();
            // independent recomputation of the direction cosines
            let dc = |v: Vec3| (v.x / v.norm(), v.y / v.norm());
            let (bx, by) = dc(bl);
            let (gx, gy) = dc(gl);
            assert!((bx + gx + ph.phi_x).abs() < 1e-12);
            assert!((by + gy + ph.phi_y).abs() < 1e-12);
        }
    }

    #[test]
    fn element_phase_wraps() {
        let zero = PhaseParams::default();
        assert_eq!(element_phase(zero, 3.5, -7.5, 0.4), 0.0);
        let unit = PhaseParams { phi_x: 1.0, phi_y: 1.0 };
        assert_eq!(element_phase(unit, 0.5, 0.5, PI), -PI);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let params = PhaseParams {
                phi_x: rng.random_range(-2.0..2.0),
                phi_y: rng.random_range(-2.0..2.0),
            };
            let (i, j) = (rng.random_range(-50i32..50), rng.random_range(-50i32..50));
            let ell = rng.random_range(0.1..1.0);
            let got = element_phase(params, i as f64 - 0.5, j as f64 - 0.5, ell);
            let raw = ell * ((i as f64 - 0.5) * params.phi_x + (j as f64 - 0.5) * params.phi_y);
            assert!((-PI..PI).contains(&got));
            let diff = (raw - got) / (2.0 * PI);
            assert!((diff - diff.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn element_phase_is_odd_about_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let v = rng.random_range(-1.0..1.0);
            let params = PhaseParams { phi_x: v, phi_y: v };
            let (a, b) = (
                rng.random_range(-20.0..20.0f64).round() + 0.5,
                rng.random_range(-20.0..20.0f64).round() + 0.5,
            );
            let plus = element_phase(params, a, b, 0.44);
            let minus = element_phase(params, -a, -b, 0.44);
            if plus.abs() < PI - 1e-9 {
                assert!((plus + minus).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn schedule_windows() {
        let cfg = |p| PatchConfiguration {
            patches: vec![PatchSpec::new(0, 0, 0, 0)],
            period_s: p,
        };
        let schedule = vec![cfg(5.0), cfg(10.0)];
        assert_eq!(configuration_at(&schedule, 3.0).unwrap().index, 0);
        let at5 = configuration_at(&schedule, 5.0).unwrap();
        assert_eq!((at5.index, at5.window_start), (1, 5.0));
        assert_eq!(configuration_at(&schedule, 99.0).unwrap().index, 1);
        assert_eq!(configuration_at(&[], 0.0).unwrap_err(), Error::EmptySchedule);
    }
}
