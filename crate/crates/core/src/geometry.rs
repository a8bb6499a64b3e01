//! Vector algebra, surface rotations, link angles and building occlusion.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point or displacement in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    fn component(self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Vec3::new(x, y, z)
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        let mut t = [[0.0; 3]; 3];
        for (r, row) in t.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = m[c][r];
            }
        }
        Mat3(t)
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    fn about(axis: Axis, angle_rad: f64) -> Mat3 {
        let (s, c) = angle_rad.sin_cos();
        match axis {
            Axis::X => Mat3([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]),
            Axis::Y => Mat3([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]),
            Axis::Z => Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]),
        }
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        Mat3(out)
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "X_AXIS")]
    X,
    #[serde(rename = "Y_AXIS")]
    Y,
    #[serde(rename = "Z_AXIS")]
    Z,
}

/// Ordered elementary rotations describing a surface pose.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RotationSequence {
    pub axes: Vec<Axis>,
    pub angles_deg: Vec<f64>,
}

impl RotationSequence {
    pub fn new(axes: Vec<Axis>, angles_deg: Vec<f64>) -> Self {
        Self { axes, angles_deg }
    }

    pub fn identity() -> Self {
        Self::default()
    }
}

/// Distance, inclination and azimuth of `a` as seen from `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub distance: f64,
    pub inclination_rad: f64,
    pub azimuth_rad: f64,
}

impl LinkGeometry {
    /// Horizontal direction cosines `(sinθ cosφ, sinθ sinφ)`.
    pub fn direction_cosines(&self) -> (f64, f64) {
        let s = self.inclination_rad.sin();
        (s * self.azimuth_rad.cos(), s * self.azimuth_rad.sin())
    }
}

/// Axis-aligned building volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildingBox {
    pub min_corner: Vec3,
    pub size: Vec3,
}

impl BuildingBox {
    /// Box from its ground-footprint center; `center.z` is the base height.
    pub fn from_footprint_center(center: Vec3, size: Vec3) -> Self {
        Self {
            min_corner: Vec3::new(center.x - size.x / 2.0, center.y - size.y / 2.0, center.z),
            size,
        }
    }

    pub fn max_corner(&self) -> Vec3 {
        self.min_corner + self.size
    }

    /// Strict interior membership.
    pub fn contains(&self, p: Vec3) -> bool {
        let hi = self.max_corner();
        (0..3).all(|k| {
            let v = p.component(k);
            v > self.min_corner.component(k) && v < hi.component(k)
        })
    }
}

pub fn distance(a: Vec3, b: Vec3) -> f64 {
    (a - b).norm()
}

pub fn link_geometry(a: Vec3, b: Vec3) -> Result<LinkGeometry> {
    let d = a - b;
    let distance = d.norm();
    if distance == 0.0 {
        return Err(Error::ZeroDistance);
    }
    let inclination_rad = (d.z / distance).clamp(-1.0, 1.0).acos();
    let azimuth_rad = d.y.atan2(d.x);
    // atan2 returns -π for (-0, negative); fold onto the half-open range.
    let azimuth_rad = if azimuth_rad <= -PI { PI } else { azimuth_rad };
    Ok(LinkGeometry {
        distance,
        inclination_rad,
        azimuth_rad,
    })
}

/// Rotation taking surface-local vectors to world vectors. Elementary
/// rotations act on the vector in list order: the first entry is applied
/// first.
pub fn rotation_matrix(seq: &RotationSequence) -> Result<Mat3> {
    if seq.axes.len() != seq.angles_deg.len() {
        return Err(Error::LengthMismatch {
            axes: seq.axes.len(),
            angles: seq.angles_deg.len(),
        });
    }
    if let Some(a) = seq.angles_deg.iter().find(|a| !a.is_finite()) {
        return Err(Error::InvalidRange(format!("rotation angle {a}")));
    }
    Ok(seq
        .axes
        .iter()
        .zip(&seq.angles_deg)
        .fold(Mat3::IDENTITY, |acc, (&axis, &deg)| {
            Mat3::about(axis, deg.to_radians()) * acc
        }))
}

/// Pose of a surface: its center and the local-to-world rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFrame {
    pub center: Vec3,
    pub rotation: Mat3,
}

impl SurfaceFrame {
    pub fn new(center: Vec3, seq: &RotationSequence) -> Result<Self> {
        Ok(Self {
            center,
            rotation: rotation_matrix(seq)?,
        })
    }

    pub fn to_local(&self, point: Vec3) -> Vec3 {
        self.rotation.transpose() * (point - self.center)
    }

    pub fn to_world(&self, local: Vec3) -> Vec3 {
        self.rotation * local + self.center
    }
}

/// Express `point` in the frame of a surface centered at `irs_center`.
pub fn to_irs_frame(point: Vec3, irs_center: Vec3, seq: &RotationSequence) -> Result<Vec3> {
    Ok(SurfaceFrame::new(irs_center, seq)?.to_local(point))
}

/// Whether the open segment between `a` and `b` passes through the interior
/// of any building.
pub fn los_blocked(a: Vec3, b: Vec3, buildings: &[BuildingBox]) -> bool {
    buildings.iter().any(|bx| segment_hits_box(a, b, bx))
}

fn segment_hits_box(a: Vec3, b: Vec3, bx: &BuildingBox) -> bool {
    let dir = b - a;
    let hi = bx.max_corner();
    let (mut t_in, mut t_out) = (0.0_f64, 1.0_f64);
    for k in 0..3 {
        let (o, d) = (a.component(k), dir.component(k));
        let (lo, up) = (bx.min_corner.component(k), hi.component(k));
        if d == 0.0 {
            if o <= lo || o >= up {
                return false;
            }
            continue;
        }
        let (mut t0, mut t1) = ((lo - o) / d, (up - o) / d);
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        t_in = t_in.max(t0);
        t_out = t_out.min(t1);
        if t_in >= t_out {
            return false;
        }
    }
    t_in < t_out
}
