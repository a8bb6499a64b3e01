//! Element-level channel realizations.
//!
//! Every hop coefficient is drawn as `√κ̄ h_LoS + √κ̃ CN(0, 1)`, i.i.d. across
//! elements, and the aggregate gain is the sum over patches of
//! `g_BUᵀ Φ g_UG` plus the direct path. This is the exact model that the
//! closed-form statistics approximate; it is used to validate them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{los_fraction, scatter_fraction, wavenumber, ChannelParams, LinkSnapshot, MultipathMode};
use crate::error::{Error, Result};
use crate::geometry::{distance, link_geometry, Vec3};
use crate::irs::{element_phase, lattice_offset};

#[derive(Debug, Clone)]
struct PatchModel {
    eta: f64,
    scatter_bu: f64,
    scatter_ug: f64,
    /// Per element: (√κ̄ᴮᵁ a_BU e^{jφ_m}, √κ̄ᵁᴳ a_UG).
    elements: Vec<(Complex64, Complex64)>,
}

/// Precomputed sampler for one snapshot.
#[derive(Debug, Clone)]
pub struct ExactChannel {
    patches: Vec<PatchModel>,
    direct_los: Complex64,
    direct_scatter: f64,
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

impl ExactChannel {
    pub fn new(snapshot: &LinkSnapshot, params: &ChannelParams) -> Result<Self> {
        let k = wavenumber(params.carrier_hz);
        let mut patches = Vec::new();
        if !params.no_irs_link {
            for refl in &snapshot.reflectors {
                let terms = super::cascaded_terms(snapshot.bs, snapshot.gu, refl, params)?;
                let kappa_of =
                    |a: Vec3, b: Vec3, los: bool| -> Result<f64> { params.link_k_factor(&link_geometry(a, b)?, los) };
                let uav = refl.frame.center;
                let k_bu = kappa_of(snapshot.bs, uav, refl.los_bu)?;
                let k_ug = kappa_of(uav, snapshot.gu, refl.los_ug)?;
                let bs_local = link_geometry(refl.frame.to_local(snapshot.bs), Vec3::ZERO)?;
                let gu_local = link_geometry(refl.frame.to_local(snapshot.gu), Vec3::ZERO)?;
                let (bx, by) = bs_local.direction_cosines();
                let (gx, gy) = gu_local.direction_cosines();
                let d_bu = distance(snapshot.bs, uav);
                let d_ug = distance(uav, snapshot.gu);
                let ell = k * refl.pru;
                let (lk_bu, lk_ug) = (los_fraction(k_bu).sqrt(), los_fraction(k_ug).sqrt());
                let mut elements = Vec::with_capacity(refl.patch.element_count());
                for r in refl.patch.y_start..=refl.patch.y_end {
                    let oy = lattice_offset(r, refl.rows);
                    for c in refl.patch.x_start..=refl.patch.x_end {
                        let ox = lattice_offset(c, refl.columns);
                        let a_bu = Complex64::from_polar(1.0, -k * d_bu + ell * (ox * bx + oy * by));
                        let a_ug = Complex64::from_polar(1.0, -k * d_ug + ell * (ox * gx + oy * gy));
                        let shift = Complex64::from_polar(1.0, element_phase(refl.phases, ox, oy, ell));
                        elements.push((a_bu * shift * lk_bu, a_ug * lk_ug));
                    }
                }
                patches.push(PatchModel {
                    eta: terms.eta,
                    scatter_bu: scatter_fraction(k_bu).sqrt(),
                    scatter_ug: scatter_fraction(k_ug).sqrt(),
                    elements,
                });
            }
        }

        let direct = snapshot.direct_terms(params)?;
        if patches.is_empty() && !direct.is_active() {
            return Err(Error::AllLinksSuppressed);
        }
        let los_amp = direct.lambda * direct.kbar_bg.sqrt();
        let mut direct_los = Complex64::from_polar(los_amp, -direct.phase);
        if params.multipath_mode != MultipathMode::Simulated && !patches.is_empty() {
            // Pin the direct LoS phase against the reflected LoS sum.
            let reflected: Complex64 = patches
                .iter()
                .map(|p| p.elements.iter().map(|(a, b)| a * b).sum::<Complex64>() * p.eta)
                .sum();
            let base = reflected.arg();
            let phase = match params.multipath_mode {
                MultipathMode::Constructive => base,
                _ => base + std::f64::consts::PI,
            };
            direct_los = Complex64::from_polar(los_amp, phase);
        }
        Ok(Self {
            patches,
            direct_los,
            direct_scatter: direct.lambda * direct.ktilde_bg.sqrt(),
        })
    }

    /// Deterministic part of the gain (all scattered terms zero).
    pub fn line_of_sight(&self) -> Complex64 {
        self.patches
            .iter()
            .map(|p| p.elements.iter().map(|(a, b)| a * b).sum::<Complex64>() * p.eta)
            .sum::<Complex64>()
            + self.direct_los
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        let mut total = self.direct_los;
        if self.direct_scatter > 0.0 {
            total += complex_normal(rng) * self.direct_scatter;
        }
        for p in &self.patches {
            let mut acc = Complex64::new(0.0, 0.0);
            if p.scatter_bu == 0.0 && p.scatter_ug == 0.0 {
                acc = p.elements.iter().map(|(a, b)| a * b).sum();
            } else {
                for (a, b) in &p.elements {
                    let h_bu = a + complex_normal(rng) * p.scatter_bu;
                    let h_ug = b + complex_normal(rng) * p.scatter_ug;
                    acc += h_bu * h_ug;
                }
            }
            total += acc * p.eta;
        }
        total
    }

    /// `n` power samples `|Γ|²` drawn in parallel; chunk `k` uses ChaCha
    /// stream `k` of `seed`, so the result is independent of thread count.
    pub fn sample_power_parallel(&self, seed: u64, n: usize) -> Vec<f64> {
        const CHUNK: usize = 4096;
        (0..n.div_ceil(CHUNK))
            .into_par_iter()
            .flat_map_iter(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk as u64);
                let len = CHUNK.min(n - chunk * CHUNK);
                (0..len)
                    .map(move |_| self.sample(&mut rng).norm_sqr())
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Draw `n_samples` complex gains from the element-level model.
pub fn sample_exact_gain<R: Rng + ?Sized>(
    rng: &mut R,
    snapshot: &LinkSnapshot,
    params: &ChannelParams,
    n_samples: usize,
) -> Result<Vec<Complex64>> {
    if n_samples == 0 {
        return Ok(Vec::new());
    }
    let model = ExactChannel::new(snapshot, params)?;
    Ok((0..n_samples).map(|_| model.sample(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Reflector;
    use crate::geometry::{Axis, RotationSequence, SurfaceFrame};
    use crate::irs::{optimal_phases, PatchSpec};

    fn scenario_one(n: usize) -> (LinkSnapshot, ChannelParams) {
        let bs = Vec3::new(100.0, 200.0, 30.0);
        let gu = Vec3::new(300.0, 200.0, 0.0);
        let frame = SurfaceFrame::new(
            Vec3::new(200.0, 200.0, 75.0),
            &RotationSequence::new(vec![Axis::X], vec![180.0]),
        )
        .unwrap();
        let phases = optimal_phases(frame.to_local(bs), frame.to_local(gu)).unwrap();
        let refl = Reflector {
            frame,
            rows: n,
            columns: n,
            pru: 0.01,
            patch: PatchSpec::new(0, n - 1, 0, n - 1),
            phases,
            los_bu: true,
            los_ug: true,
        };
        let mut params = ChannelParams::new(2.12e9);
        params.no_direct_link = true;
        (
            LinkSnapshot {
                bs,
                gu,
                direct_los: false,
                reflectors: vec![refl],
            },
            params,
        )
    }

    #[test]
    fn zero_samples() {
        let (snap, params) = scenario_one(4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_exact_gain(&mut rng, &snap, &params, 0).unwrap().is_empty());
    }

    #[test]
    fn pure_los_is_deterministic() {
        let (snap, mut params) = scenario_one(8);
        params.k_min = f64::INFINITY;
        params.k_max = f64::INFINITY;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let xs = sample_exact_gain(&mut rng, &snap, &params, 5).unwrap();
        let nu = snap.evaluate(&params).unwrap().stats.nu_sq.sqrt();
        for x in xs {
            assert!((x.norm() - nu).abs() / nu < 1e-9);
        }
    }

    #[test]
    fn parallel_sampling_is_reproducible() {
        let (snap, params) = scenario_one(4);
        let model = ExactChannel::new(&snap, &params).unwrap();
        let a = model.sample_power_parallel(9, 10_000);
        let b = model.sample_power_parallel(9, 10_000);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10_000);
    }

    #[test]
    fn mean_power_tracks_closed_form() {
        let (mut snap, mut params) = scenario_one(8);
        params.no_direct_link = false;
        params.alpha_direct = 3.0;
        snap.direct_los = false;
        let stats = snap.evaluate(&params).unwrap().stats;
        let model = ExactChannel::new(&snap, &params).unwrap();
        let xs = model.sample_power_parallel(3, 40_000);
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!(
            (mean - stats.omega_pow).abs() / stats.omega_pow < 0.03,
            "{mean} vs {}",
            stats.omega_pow
        );
    }
}
