//! Radio environment maps: downlink SINR over a horizontal lattice.

use rayon::prelude::*;

use crate::config::{Direction, GainMode};
use crate::engine::{stream_key, Simulator, SnapshotState};
use crate::error::Result;
use crate::geometry::Vec3;

const REM_STREAM_TAG: u64 = 0xE3_0000;

#[derive(Debug, Clone, PartialEq)]
pub struct RemGrid {
    pub origin: [f64; 2],
    pub extent_m: [f64; 2],
    /// Samples per square meter.
    pub resolution: f64,
    pub z_m: f64,
    pub t_s: f64,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `y` outer: `values[j * nx + i]`.
    pub values: Vec<f64>,
}

impl RemGrid {
    pub fn spacing(&self) -> f64 {
        1.0 / self.resolution.sqrt()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin[0] + i as f64 * self.spacing()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.origin[1] + j as f64 * self.spacing()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Largest value and its `(i, j)` lattice index.
    pub fn peak(&self) -> (f64, usize, usize) {
        let (k, v) =
            self.values.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |best, (k, &v)| if v > best.1 { (k, v) } else { best },
            );
        (v, k % self.nx, k / self.nx)
    }
}

fn lattice(sim: &Simulator, t: f64, z: f64, resolution: f64) -> RemGrid {
    let rem = &sim.config.rem;
    let extent = sim.config.rem_extent();
    let per_m = resolution.sqrt();
    let nx = (extent[0] * per_m).round() as usize;
    let ny = (extent[1] * per_m).round() as usize;
    RemGrid {
        origin: rem.origin,
        extent_m: extent,
        resolution,
        z_m: z,
        t_s: t,
        nx,
        ny,
        values: Vec::new(),
    }
}

fn point_sinr(sim: &Simulator, state: &SnapshotState, grid: &RemGrid, k: usize, mode: GainMode) -> Result<f64> {
    let rx = Vec3::new(grid.x(k % grid.nx), grid.y(k / grid.nx), grid.z_m);
    let snapshot = sim.link_snapshot(state, rx, None);
    let gain = sim.link_gain(&snapshot, mode, stream_key(&[REM_STREAM_TAG, k as u64]))?;
    Ok(sim.sinr_db(state.bs_tx_power_dbm, gain, Direction::Downlink))
}

/// Downlink REM at time `t` and height `z`. Every active patch keeps the
/// phases pointing at its assigned GU, so points elsewhere see sidelobes.
pub fn generate_rem(sim: &Simulator, t: f64, z: f64, resolution: f64, mode: GainMode) -> Result<RemGrid> {
    let state = sim.step(t)?;
    let mut grid = lattice(sim, t, z, resolution);
    grid.values = (0..grid.nx * grid.ny)
        .into_par_iter()
        .map(|k| point_sinr(sim, &state, &grid, k, mode))
        .collect::<Result<_>>()?;
    Ok(grid)
}

/// Single-threaded [`generate_rem`].
pub fn generate_rem_serial(sim: &Simulator, t: f64, z: f64, resolution: f64, mode: GainMode) -> Result<RemGrid> {
    let state = sim.step(t)?;
    let mut grid = lattice(sim, t, z, resolution);
    grid.values = (0..grid.nx * grid.ny)
        .map(|k| point_sinr(sim, &state, &grid, k, mode))
        .collect::<Result<_>>()?;
    Ok(grid)
}
