//! Time-parameterized node trajectories.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Waypoint {
    pub position: Vec3,
    pub time: f64,
}

fn ccw() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields, rename_all_fields = "camelCase")]
pub enum MobilityModel {
    Static {
        position: Vec3,
    },
    /// Constant-speed orbit at the altitude of `center`.
    Circular {
        center: Vec3,
        radius: f64,
        speed: f64,
        #[serde(default)]
        start_angle_deg: f64,
        /// `+1` counter-clockwise seen from above, `-1` clockwise.
        #[serde(default = "ccw")]
        direction: f64,
    },
    Waypoint {
        waypoints: Vec<Waypoint>,
    },
}

impl MobilityModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            MobilityModel::Static { position } if !position.is_finite() => {
                Err(Error::InvalidRange("static position must be finite".into()))
            }
            MobilityModel::Circular {
                radius,
                speed,
                direction,
                ..
            } => {
                if !(*radius > 0.0) {
                    return Err(Error::InvalidRange(format!("orbit radius {radius} must be positive")));
                }
                if !(*speed >= 0.0) {
                    return Err(Error::InvalidRange(format!("orbit speed {speed} must be non-negative")));
                }
                if direction.abs() != 1.0 {
                    return Err(Error::InvalidRange(format!(
                        "orbit direction {direction} must be 1 or -1"
                    )));
                }
                Ok(())
            }
            MobilityModel::Waypoint { waypoints } => {
                if waypoints.is_empty() {
                    return Err(Error::InvalidRange("waypoint list is empty".into()));
                }
                if waypoints.windows(2).any(|w| !(w[1].time > w[0].time)) {
                    return Err(Error::InvalidRange("waypoint times must be strictly increasing".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn position_at(&self, t: f64) -> Vec3 {
        match self {
            MobilityModel::Static { position } => *position,
            MobilityModel::Circular {
                center,
                radius,
                speed,
                start_angle_deg,
                direction,
            } => {
                let angle = start_angle_deg.to_radians() + direction * (speed / radius) * t;
                Vec3::new(
                    center.x + radius * angle.cos(),
                    center.y + radius * angle.sin(),
                    center.z,
                )
            }
            MobilityModel::Waypoint { waypoints } => {
                let first = waypoints[0];
                if t <= first.time {
                    return first.position;
                }
                for w in waypoints.windows(2) {
                    if t < w[1].time {
                        let f = (t - w[0].time) / (w[1].time - w[0].time);
                        return w[0].position + (w[1].position - w[0].position).scale(f);
                    }
                }
                waypoints[waypoints.len() - 1].position
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn orbit() -> MobilityModel {
        MobilityModel::Circular {
            center: Vec3::new(200.0, 200.0, 50.0),
            radius: 150.0,
            speed: 10.0,
            start_angle_deg: 0.0,
            direction: 1.0,
        }
    }

    #[test]
    fn static_hover() {
        let m = MobilityModel::Static {
            position: Vec3::new(200.0, 200.0, 75.0),
        };
        assert_eq!(m.position_at(0.0), m.position_at(1234.5));
    }

    #[test]
    fn third_of_an_orbit() {
        let t = 2.0 * PI * 150.0 / 10.0 / 3.0;
        let p = orbit().position_at(t);
        let a = 2.0 * PI / 3.0;
        assert!((p.x - (200.0 + 150.0 * a.cos())).abs() < 1e-9);
        assert!((p.y - (200.0 + 150.0 * a.sin())).abs() < 1e-9);
        assert_eq!(p.z, 50.0);
        assert!((t - 31.41592653589793).abs() < 1e-12);
    }

    #[test]
    fn clockwise_orbit() {
        let mut m = orbit();
        if let MobilityModel::Circular { direction, .. } = &mut m {
            *direction = -1.0;
        }
        assert!(m.position_at(1.0).y < 200.0);
        assert!(orbit().position_at(1.0).y > 200.0);
    }

    #[test]
    fn orbit_speed() {
        let m = orbit();
        for &t in &[0.0, 3.7, 100.0] {
            let d = 1e-6;
            let v = distance(m.position_at(t + d), m.position_at(t)) / d;
            assert!((v - 10.0).abs() / 10.0 < 1e-6, "{v}");
        }
    }

    #[test]
    fn waypoints_clamp() {
        let m = MobilityModel::Waypoint {
            waypoints: vec![
                Waypoint {
                    position: Vec3::new(0.0, 0.0, 10.0),
                    time: 2.0,
                },
                Waypoint {
                    position: Vec3::new(10.0, 0.0, 10.0),
                    time: 4.0,
                },
            ],
        };
        assert_eq!(m.position_at(0.0), Vec3::new(0.0, 0.0, 10.0));
        assert_eq!(m.position_at(3.0), Vec3::new(5.0, 0.0, 10.0));
        assert_eq!(m.position_at(9.0), Vec3::new(10.0, 0.0, 10.0));
    }

    #[test]
    fn validation() {
        assert!(orbit().validate().is_ok());
        let bad = MobilityModel::Circular {
            center: Vec3::ZERO,
            radius: 0.0,
            speed: 1.0,
            start_angle_deg: 0.0,
            direction: 1.0,
        };
        assert!(bad.validate().is_err());
        let w = MobilityModel::Waypoint {
            waypoints: vec![
                Waypoint {
                    position: Vec3::ZERO,
                    time: 1.0,
                },
                Waypoint {
                    position: Vec3::ZERO,
                    time: 1.0,
                },
            ],
        };
        assert!(w.validate().is_err());
    }

    #[test]
    fn json_shape() {
        let m: MobilityModel = serde_json::from_str(
            r#"{"type":"Circular","center":[200,200,50],"radius":150,"speed":10,"startAngleDeg":240}"#,
        )
        .unwrap();
        assert_eq!(m.position_at(0.0).z, 50.0);
        assert!(serde_json::from_str::<MobilityModel>(r#"{"type":"Static","position":[0,0,0],"x":1}"#).is_err());
    }

    proptest! {
        #[test]
        fn waypoint_path_is_continuous(
            pts in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0, 0.0f64..100.0, 0.5f64..10.0), 2..6),
            t in 0.0f64..40.0,
        ) {
            let mut time = 0.0;
            let waypoints: Vec<_> = pts.iter().map(|&(x, y, z, dt)| {
                time += dt;
                Waypoint { position: Vec3::new(x, y, z), time }
            }).collect();
            let max_speed = waypoints.windows(2)
                .map(|w| distance(w[0].position, w[1].position) / (w[1].time - w[0].time))
                .fold(0.0, f64::max);
            let m = MobilityModel::Waypoint { waypoints };
            let d = 1e-3;
            let jump = distance(m.position_at(t + d), m.position_at(t));
            prop_assert!(jump <= max_speed * d * (1.0 + 1e-9) + 1e-12);
        }
    }
}
