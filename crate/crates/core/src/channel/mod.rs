//! Closed-form channel mathematics for IRS-assisted links.
//!
//! The aggregate gain of a ground user is the superposition of the direct
//! BS–GU path and one cascaded BS→surface→GU path per reflecting patch. Its
//! envelope is modeled as Rician with
//!
//! ```text
//! ν²  = |Σ_p μ_p + λ√κ̄ᴮᴳ e^{-jω₀}|²          (deterministic power)
//! 2σ² = Σ_p M_p η_p² κ̃ᴮᵁᴳ_p + λ² κ̃ᴮᴳ          (scattered power)
//! ```
//!
//! where `μ_p` carries the patch array factor (a product of two Dirichlet
//! kernels) and the propagation phase `ω_u`. [`exact`] draws realizations of
//! the element-level model the approximation stands in for.

pub mod exact;
pub mod outage;
pub mod rician;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{distance, link_geometry, LinkGeometry, SurfaceFrame, Vec3};
use crate::irs::{lattice_offset, PatchSpec, PhaseParams};

pub use outage::{gain_lowerbound, inverse_q, q_function, zeta, OutageGain, OutageModel};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Free-space power gain at 1 m, `(c / 4πf)²`.
pub fn free_space_reference_gain(carrier_hz: f64) -> f64 {
    (SPEED_OF_LIGHT / (4.0 * PI * carrier_hz)).powi(2)
}

/// Wavenumber `2πf/c`.
pub fn wavenumber(carrier_hz: f64) -> f64 {
    2.0 * PI * carrier_hz / SPEED_OF_LIGHT
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MultipathMode {
    Destructive,
    #[default]
    Simulated,
    Constructive,
}

/// Channel parameters, all in linear scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelParams {
    pub k_min: f64,
    pub k_max: f64,
    pub k_nlos: f64,
    pub alpha_direct: f64,
    pub outage_eps: f64,
    pub carrier_hz: f64,
    pub no_direct_link: bool,
    pub no_irs_link: bool,
    pub multipath_mode: MultipathMode,
    pub beta_bg: f64,
    pub beta_bu: f64,
    pub beta_ug: f64,
    pub pattern_bg: f64,
    pub pattern_bug: f64,
    /// Exponent `q` of the `cos(θ)^q` surface element pattern; 0 is isotropic.
    pub element_pattern_exponent: f64,
}

impl ChannelParams {
    /// Defaults: K-factors 6/10/0 dB, α = 3, ε = 0.01, free-space β.
    pub fn new(carrier_hz: f64) -> Self {
        let beta = free_space_reference_gain(carrier_hz);
        Self {
            k_min: db_to_linear(6.0),
            k_max: db_to_linear(10.0),
            k_nlos: db_to_linear(0.0),
            alpha_direct: 3.0,
            outage_eps: 0.01,
            carrier_hz,
            no_direct_link: false,
            no_irs_link: false,
            multipath_mode: MultipathMode::Simulated,
            beta_bg: beta,
            beta_bu: beta,
            beta_ug: beta,
            pattern_bg: 1.0,
            pattern_bug: 1.0,
            element_pattern_exponent: 0.0,
        }
    }

    pub fn outage_model(&self) -> Result<OutageModel> {
        OutageModel::new(self.outage_eps)
    }

    fn link_k_factor(&self, geom: &LinkGeometry, los: bool) -> Result<f64> {
        if los {
            k_factor(geom.inclination_rad, self.k_min, self.k_max)
        } else {
            Ok(self.k_nlos)
        }
    }

    fn element_pattern(&self, local: &LinkGeometry) -> f64 {
        if self.element_pattern_exponent == 0.0 {
            return 1.0;
        }
        local.inclination_rad.cos().max(0.0).powf(self.element_pattern_exponent)
    }
}

/// LoS fraction `κ/(κ+1)`, exact at κ = ∞.
pub fn los_fraction(kappa: f64) -> f64 {
    1.0 / (1.0 + 1.0 / kappa)
}

/// Scattered fraction `1/(κ+1)`.
pub fn scatter_fraction(kappa: f64) -> f64 {
    1.0 / (kappa + 1.0)
}

/// Elevation-dependent Rician K-factor, interpolating geometrically from
/// `k_min` at grazing incidence to `k_max` at vertical incidence.
pub fn k_factor(inclination_rad: f64, k_min: f64, k_max: f64) -> Result<f64> {
    if k_max < k_min {
        return Err(Error::InvalidRange(format!(
            "K-factor maximum {k_max} below minimum {k_min}"
        )));
    }
    if k_max == k_min {
        return Ok(k_min);
    }
    let tilt = (PI / 2.0 - inclination_rad).abs();
    Ok(k_min * ((2.0 / PI) * (k_max / k_min).ln() * tilt).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectLinkTerms {
    pub lambda: f64,
    pub kappa_bg: f64,
    pub kbar_bg: f64,
    pub ktilde_bg: f64,
    /// Propagation phase `ω₀ = 2πf d/c`.
    pub phase: f64,
}

impl DirectLinkTerms {
    pub const NONE: DirectLinkTerms = DirectLinkTerms {
        lambda: 0.0,
        kappa_bg: 0.0,
        kbar_bg: 0.0,
        ktilde_bg: 1.0,
        phase: 0.0,
    };

    pub fn is_active(&self) -> bool {
        self.lambda > 0.0
    }
}

/// Direct-path amplitude and fading split. `geom` is the BS as seen from
/// the GU.
pub fn direct_link_terms(geom: &LinkGeometry, params: &ChannelParams, los: bool) -> Result<DirectLinkTerms> {
    let kappa_bg = params.link_k_factor(geom, los)?;
    let lambda = if params.no_direct_link {
        0.0
    } else {
        (params.beta_bg * geom.distance.powf(-params.alpha_direct) * params.pattern_bg).sqrt()
    };
    Ok(DirectLinkTerms {
        lambda,
        kappa_bg,
        kbar_bg: los_fraction(kappa_bg),
        ktilde_bg: scatter_fraction(kappa_bg),
        phase: wavenumber(params.carrier_hz) * geom.distance,
    })
}

/// One reflecting patch as seen by a link: surface pose, lattice, the patch
/// rectangle, its phase profile, and LoS state of both hops.
#[derive(Debug, Clone, PartialEq)]
pub struct Reflector {
    pub frame: SurfaceFrame,
    pub rows: usize,
    pub columns: usize,
    pub pru: f64,
    pub patch: PatchSpec,
    pub phases: PhaseParams,
    pub los_bu: bool,
    pub los_ug: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadedLinkTerms {
    pub eta: f64,
    /// Propagation phase `2πf (d^BU + d^UG)/c`.
    pub omega: f64,
    pub psi_x: f64,
    pub psi_y: f64,
    pub mu_mag: f64,
    /// Phase of the patch phasor relative to `-ω`: the patch-center offset
    /// term plus π when the array factor is negative. Zero when the patch is
    /// steered onto the link.
    pub steering_phase: f64,
    pub kbar_bug: f64,
    pub ktilde_bug: f64,
    pub m_rows: usize,
    pub m_cols: usize,
    pub ell: f64,
}

impl CascadedLinkTerms {
    /// Deterministic patch phasor `μ`.
    pub fn phasor(&self) -> Complex64 {
        Complex64::from_polar(self.mu_mag, self.steering_phase - self.omega)
    }

    pub fn element_count(&self) -> usize {
        self.m_rows * self.m_cols
    }
}

/// `sin(M x) / sin(x)`, continuous through the removable singularities.
pub fn dirichlet(m: usize, x: f64) -> f64 {
    let m = m as f64;
    let s = x.sin();
    if s.abs() < 1e-12 {
        m * (m * x).cos() / x.cos()
    } else {
        (m * x).sin() / s
    }
}

/// Mean lattice offset of the inclusive index range `start..=end`.
fn mean_offset(start: usize, end: usize, count: usize) -> f64 {
    0.5 * (lattice_offset(start, count) + lattice_offset(end, count))
}

pub fn cascaded_terms(bs: Vec3, gu: Vec3, refl: &Reflector, params: &ChannelParams) -> Result<CascadedLinkTerms> {
    let uav = refl.frame.center;
    let d_bu = distance(bs, uav);
    let d_ug = distance(uav, gu);
    if d_bu == 0.0 || d_ug == 0.0 {
        return Err(Error::DegenerateGeometry("node at the surface center"));
    }
    if refl.patch.is_empty() {
        return Err(Error::DegenerateGeometry("empty patch"));
    }
    // K-factors follow the physical elevation of each hop.
    let kappa_bu = params.link_k_factor(&link_geometry(bs, uav)?, refl.los_bu)?;
    let kappa_ug = params.link_k_factor(&link_geometry(uav, gu)?, refl.los_ug)?;

    // Steering angles in the surface frame, seen from the surface center.
    let bs_local = link_geometry(refl.frame.to_local(bs), Vec3::ZERO)?;
    let gu_local = link_geometry(refl.frame.to_local(gu), Vec3::ZERO)?;
    let (bx, by) = bs_local.direction_cosines();
    let (gx, gy) = gu_local.direction_cosines();
    let psi_x = bx + gx + refl.phases.phi_x;
    let psi_y = by + gy + refl.phases.phi_y;

    let ell = wavenumber(params.carrier_hz) * refl.pru;
    let (m_cols, m_rows) = (refl.patch.cols(), refl.patch.rows());
    let array_factor = dirichlet(m_cols, ell * psi_x / 2.0) * dirichlet(m_rows, ell * psi_y / 2.0);
    let center_phase = ell
        * (mean_offset(refl.patch.x_start, refl.patch.x_end, refl.columns) * psi_x
            + mean_offset(refl.patch.y_start, refl.patch.y_end, refl.rows) * psi_y);
    let steering_phase = if array_factor < 0.0 {
        center_phase + PI
    } else {
        center_phase
    };

    let pattern = params.pattern_bug * params.element_pattern(&bs_local) * params.element_pattern(&gu_local);
    let eta = (params.beta_bu * params.beta_ug * pattern).sqrt() / (d_bu * d_ug);
    let (kbar_bu, ktil_bu) = (los_fraction(kappa_bu), scatter_fraction(kappa_bu));
    let (kbar_ug, ktil_ug) = (los_fraction(kappa_ug), scatter_fraction(kappa_ug));
    let kbar_bug = kbar_bu * kbar_ug;
    let ktilde_bug = kbar_bu * ktil_ug + ktil_bu * kbar_ug;

    Ok(CascadedLinkTerms {
        eta,
        omega: wavenumber(params.carrier_hz) * (d_bu + d_ug),
        psi_x,
        psi_y,
        mu_mag: eta * kbar_bug.sqrt() * array_factor.abs(),
        steering_phase,
        kbar_bug,
        ktilde_bug,
        m_rows,
        m_cols,
        ell,
    })
}

/// Rician approximation of the aggregate gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianStats {
    pub nu_sq: f64,
    pub two_sigma_sq: f64,
    pub kappa: f64,
    pub omega_pow: f64,
}

impl RicianStats {
    pub fn from_parts(nu_sq: f64, two_sigma_sq: f64) -> Self {
        let kappa = if nu_sq == 0.0 { 0.0 } else { nu_sq / two_sigma_sq };
        Self {
            nu_sq,
            two_sigma_sq,
            kappa,
            omega_pow: nu_sq + two_sigma_sq,
        }
    }
}

/// Assemble `ν²` and `2σ²` from the active patches and the direct path.
pub fn combine_stats(
    cascaded: &[CascadedLinkTerms],
    direct: &DirectLinkTerms,
    params: &ChannelParams,
) -> Result<RicianStats> {
    let cascaded: &[CascadedLinkTerms] = if params.no_irs_link { &[] } else { cascaded };
    let direct = if params.no_direct_link {
        &DirectLinkTerms::NONE
    } else {
        direct
    };
    if cascaded.is_empty() && !direct.is_active() {
        return Err(Error::AllLinksSuppressed);
    }

    let reflected: Complex64 = cascaded.iter().map(CascadedLinkTerms::phasor).sum();
    let direct_los = direct.lambda * direct.kbar_bg.sqrt();
    let direct_phasor = Complex64::from_polar(direct_los, -direct.phase);
    let cross: f64 = cascaded
        .iter()
        .map(|c| {
            let cos = match params.multipath_mode {
                MultipathMode::Destructive => -1.0,
                MultipathMode::Constructive => 1.0,
                MultipathMode::Simulated => {
                    (c.phasor() * direct_phasor.conj()).re / (c.mu_mag * direct_los).max(f64::MIN_POSITIVE)
                }
            };
            2.0 * c.mu_mag * direct_los * cos
        })
        .sum();
    let nu_sq = (reflected.norm_sqr() + direct_los * direct_los + cross).max(0.0);

    let two_sigma_sq = cascaded
        .iter()
        .map(|c| c.element_count() as f64 * c.eta * c.eta * c.ktilde_bug)
        .sum::<f64>()
        + direct.lambda * direct.lambda * direct.ktilde_bg;
    Ok(RicianStats::from_parts(nu_sq, two_sigma_sq))
}

/// Everything needed to evaluate one BS–GU link at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSnapshot {
    pub bs: Vec3,
    pub gu: Vec3,
    pub direct_los: bool,
    pub reflectors: Vec<Reflector>,
}

/// Closed-form evaluation of a snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkEvaluation {
    pub direct: DirectLinkTerms,
    pub cascaded: Vec<CascadedLinkTerms>,
    pub stats: RicianStats,
}

impl LinkSnapshot {
    pub fn direct_terms(&self, params: &ChannelParams) -> Result<DirectLinkTerms> {
        direct_link_terms(&link_geometry(self.bs, self.gu)?, params, self.direct_los)
    }

    pub fn cascaded_terms(&self, params: &ChannelParams) -> Result<Vec<CascadedLinkTerms>> {
        self.reflectors
            .iter()
            .map(|r| cascaded_terms(self.bs, self.gu, r, params))
            .collect()
    }

    pub fn evaluate(&self, params: &ChannelParams) -> Result<LinkEvaluation> {
        let direct = self.direct_terms(params)?;
        let cascaded = if params.no_irs_link {
            Vec::new()
        } else {
            self.cascaded_terms(params)?
        };
        let stats = combine_stats(&cascaded, &direct, params)?;
        Ok(LinkEvaluation {
            direct,
            cascaded,
            stats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Axis, RotationSequence};
    use crate::irs::optimal_phases;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k_factor_law() {
        let (lo, hi) = (db_to_linear(6.0), db_to_linear(10.0));
        assert_relative_eq!(
            k_factor(PI / 2.0, lo, hi).unwrap(),
            3.981071705534973,
            max_relative = 1e-12
        );
        assert_relative_eq!(k_factor(0.0, lo, hi).unwrap(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(k_factor(PI, lo, hi).unwrap(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(
            k_factor(PI / 4.0, lo, hi).unwrap(),
            db_to_linear(8.0),
            max_relative = 1e-12
        );
        assert!(matches!(k_factor(0.3, hi, lo), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn direct_terms() {
        let geom = link_geometry(Vec3::new(100.0, 0.0, 0.0), Vec3::ZERO).unwrap();
        let mut params = ChannelParams::new(5.15e9);
        params.no_direct_link = true;
        assert_eq!(direct_link_terms(&geom, &params, true).unwrap().lambda, 0.0);

        params.no_direct_link = false;
        params.k_nlos = 0.0;
        let nlos = direct_link_terms(&geom, &params, false).unwrap();
        assert_eq!((nlos.kbar_bg, nlos.ktilde_bg), (0.0, 1.0));

        // λ² = (c/4πf)² d^-3; reference value from 30-digit arithmetic
        let sq = direct_link_terms(&geom, &params, true).unwrap().lambda.powi(2);
        assert_relative_eq!(sq, 2.1458888329318316e-11, max_relative = 1e-12);
    }

    #[test]
    fn dirichlet_limits() {
        assert_eq!(dirichlet(7, 0.0), 7.0);
        assert_abs_diff_eq!(dirichlet(2, PI / 2.0), 0.0, epsilon = 1e-15);
        assert_relative_eq!(dirichlet(5, 1e-13), 5.0, max_relative = 1e-12);
        assert_relative_eq!(dirichlet(4, PI), -4.0, max_relative = 1e-12);
    }

    fn reflector(center: Vec3, rows: usize, columns: usize, patch: PatchSpec, phases: PhaseParams) -> Reflector {
        Reflector {
            frame: SurfaceFrame::new(center, &RotationSequence::new(vec![Axis::X], vec![180.0])).unwrap(),
            rows,
            columns,
            pru: 0.01,
            patch,
            phases,
            los_bu: true,
            los_ug: true,
        }
    }

    fn steered(bs: Vec3, gu: Vec3, center: Vec3, rows: usize, cols: usize) -> Reflector {
        let frame = SurfaceFrame::new(center, &RotationSequence::new(vec![Axis::X], vec![180.0])).unwrap();
        let phases = optimal_phases(frame.to_local(bs), frame.to_local(gu)).unwrap();
        reflector(center, rows, cols, PatchSpec::new(0, cols - 1, 0, rows - 1), phases)
    }

    #[test]
    fn steered_patch_reaches_full_array_gain() {
        let params = ChannelParams::new(2.12e9);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let mut p = |z: f64| Vec3::new(rng.random_range(0.0..400.0), rng.random_range(0.0..400.0), z);
            let (bs, gu, uav) = (p(30.0), p(0.0), p(60.0));
            let (rows, cols) = (17, 23);
            let t = cascaded_terms(bs, gu, &steered(bs, gu, uav, rows, cols), &params).unwrap();
            assert!(t.psi_x.abs() < 1e-12 && t.psi_y.abs() < 1e-12);
            let want = t.eta * t.kbar_bug.sqrt() * (rows * cols) as f64;
            assert_relative_eq!(t.mu_mag, want, max_relative = 1e-9);
            assert_abs_diff_eq!(t.steering_phase, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn cascaded_fading_split() {
        let mut params = ChannelParams::new(2.12e9);
        params.k_min = 10.0;
        params.k_max = 10.0;
        let bs = Vec3::new(0.0, 0.0, 30.0);
        let gu = Vec3::new(100.0, 0.0, 0.0);
        let t = cascaded_terms(bs, gu, &steered(bs, gu, Vec3::new(50.0, 0.0, 50.0), 4, 4), &params).unwrap();
        assert_relative_eq!(t.kbar_bug, 100.0 / 121.0, max_relative = 1e-12);
        assert_relative_eq!(t.ktilde_bug, 20.0 / 121.0, max_relative = 1e-12);
        let at_bs = reflector(
            bs,
            4,
            4,
            PatchSpec::new(0, 3, 0, 3),
            PhaseParams { phi_x: 0.0, phi_y: 0.0 },
        );
        assert!(cascaded_terms(bs, gu, &at_bs, &params).is_err());
    }

    #[test]
    fn single_patch_without_direct_link() {
        let mut params = ChannelParams::new(2.12e9);
        params.no_direct_link = true;
        let bs = Vec3::new(100.0, 200.0, 30.0);
        let gu = Vec3::new(300.0, 200.0, 0.0);
        let snap = LinkSnapshot {
            bs,
            gu,
            direct_los: false,
            reflectors: vec![steered(bs, gu, Vec3::new(200.0, 200.0, 75.0), 8, 8)],
        };
        let eval = snap.evaluate(&params).unwrap();
        let t = eval.cascaded[0];
        assert_relative_eq!(eval.stats.nu_sq, t.mu_mag * t.mu_mag, max_relative = 1e-12);
        assert_relative_eq!(
            eval.stats.two_sigma_sq,
            64.0 * t.eta * t.eta * t.ktilde_bug,
            max_relative = 1e-12
        );
        assert_eq!(eval.stats.omega_pow, eval.stats.nu_sq + eval.stats.two_sigma_sq);
    }

    #[test]
    fn direct_only_power_is_lambda_squared() {
        let params = ChannelParams::new(2.12e9);
        let snap = LinkSnapshot {
            bs: Vec3::new(0.0, 0.0, 30.0),
            gu: Vec3::new(150.0, 20.0, 0.0),
            direct_los: true,
            reflectors: vec![],
        };
        let eval = snap.evaluate(&params).unwrap();
        assert_relative_eq!(eval.stats.omega_pow, eval.direct.lambda.powi(2), max_relative = 1e-12);
        assert!(eval.stats.kappa > 3.9 && eval.stats.kappa < 10.0);
    }

    #[test]
    fn suppressed_links_are_an_error() {
        let mut params = ChannelParams::new(2.12e9);
        params.no_direct_link = true;
        params.no_irs_link = true;
        let bs = Vec3::new(0.0, 0.0, 30.0);
        let gu = Vec3::new(150.0, 20.0, 0.0);
        let snap = LinkSnapshot {
            bs,
            gu,
            direct_los: true,
            reflectors: vec![steered(bs, gu, Vec3::new(50.0, 0.0, 50.0), 4, 4)],
        };
        assert_eq!(snap.evaluate(&params).unwrap_err(), Error::AllLinksSuppressed);
    }

    #[test]
    fn simulated_interference_never_beats_constructive() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let mut params = ChannelParams::new(2.12e9);
            params.alpha_direct = 2.0;
            let mut p = |z: f64| Vec3::new(rng.random_range(0.0..400.0), rng.random_range(0.0..400.0), z);
            let (bs, gu, u1, u2) = (p(30.0), p(0.0), p(50.0), p(80.0));
            let snap = LinkSnapshot {
                bs,
                gu,
                direct_los: true,
                reflectors: vec![steered(bs, gu, u1, 10, 10), steered(bs, gu, u2, 10, 10)],
            };
            let sim = snap.evaluate(&params).unwrap().stats;
            params.multipath_mode = MultipathMode::Constructive;
            let con = snap.evaluate(&params).unwrap().stats;
            params.multipath_mode = MultipathMode::Destructive;
            let des = snap.evaluate(&params).unwrap().stats;
            assert!(sim.nu_sq <= con.nu_sq * (1.0 + 1e-12));
            assert!(des.nu_sq <= sim.nu_sq * (1.0 + 1e-12) + 1e-300);
            assert_eq!(sim.two_sigma_sq, con.two_sigma_sq);
        }
    }

    #[test]
    fn array_gain_scales_with_element_count() {
        let mut params = ChannelParams::new(2.12e9);
        params.no_direct_link = true;
        params.k_min = f64::INFINITY;
        params.k_max = f64::INFINITY;
        let bs = Vec3::new(100.0, 200.0, 30.0);
        let gu = Vec3::new(300.0, 200.0, 0.0);
        let uav = Vec3::new(200.0, 200.0, 75.0);
        let power = |n: usize| {
            LinkSnapshot {
                bs,
                gu,
                direct_los: false,
                reflectors: vec![steered(bs, gu, uav, n, n)],
            }
            .evaluate(&params)
            .unwrap()
            .stats
            .nu_sq
        };
        let mut last = 0.0;
        for n in 1..40 {
            let p = power(n);
            assert!(p >= last);
            last = p;
        }
        for n in [10, 25, 50, 100] {
            let gain_db = linear_to_db(power(2 * n) / power(n));
            assert_abs_diff_eq!(gain_db, 12.0412, epsilon = 0.01);
        }
    }

    #[test]
    fn rectangular_patches_grow_monotonically() {
        let mut params = ChannelParams::new(2.12e9);
        params.no_direct_link = true;
        let bs = Vec3::new(100.0, 200.0, 30.0);
        let gu = Vec3::new(300.0, 250.0, 0.0);
        let uav = Vec3::new(200.0, 200.0, 75.0);
        let nu = |r: usize, c: usize| {
            cascaded_terms(bs, gu, &steered(bs, gu, uav, r, c), &params)
                .unwrap()
                .mu_mag
        };
        for r in 1..20 {
            assert!(nu(r + 1, 7) >= nu(r, 7));
            assert!(nu(7, r + 1) >= nu(7, r));
        }
    }
}
