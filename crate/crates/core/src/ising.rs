//! Linearly swept transverse-field Ising chain with a periodic drive,
//! reduced to independent momentum modes. Each mode is a two-level sweep
//! (`tdse::DriveParams`), so the chain observables are assembled from the
//! two-level machinery: defect density, its Gaussian-peak decomposition,
//! and the non-perturbative adiabatic-region contribution.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::furry::FurryError;
use crate::pt::{PtError, SumTruncation};
use crate::specfun::{bessel_j, kummer_m_regularized, quad, SpecFunError};
use crate::tdse::{self, DriveParams, IntegrationConfig, TdseError};

#[derive(Debug, Error)]
pub enum IsingError {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),
    #[error("approximation out of regime: {0}")]
    Regime(String),
    #[error(transparent)]
    Tdse(#[from] TdseError),
    #[error(transparent)]
    Pt(#[from] PtError),
    #[error(transparent)]
    Furry(#[from] FurryError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Chain with the drive on the transverse field (diagonal in the mode basis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingDiagParams {
    pub j: f64,
    pub eta: f64,
    pub omega: f64,
    pub eps_prime: f64,
    pub n_sites: u32,
}

impl IsingDiagParams {
    pub fn new(j: f64, eta: f64, omega: f64, eps_prime: f64, n_sites: u32) -> Result<Self, IsingError> {
        let p = IsingDiagParams { j, eta, omega, eps_prime, n_sites };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), IsingError> {
        if ![self.j, self.eta, self.omega, self.eps_prime].iter().all(|v| v.is_finite()) {
            return Err(IsingError::InvalidParams("non-finite field".into()));
        }
        if self.j <= 0.0 {
            return Err(IsingError::InvalidParams(format!("j = {} must be > 0", self.j)));
        }
        if self.omega <= 0.0 {
            return Err(IsingError::InvalidParams(format!("omega = {} must be > 0", self.omega)));
        }
        check_sites(self.n_sites)?;
        Ok(())
    }

    /// κ_q = J̃² sin²q.
    pub fn kappa_q(&self, q: f64) -> f64 {
        let s = self.j * q.sin();
        s * s
    }
}

/// Chain with the drive on the coupling (off-diagonal in the mode basis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingOffDiagParams {
    pub delta_prime: f64,
    pub b_prime: f64,
    pub omega: f64,
    pub eps_prime: f64,
    pub n_sites: u32,
}

impl IsingOffDiagParams {
    pub fn new(
        delta_prime: f64,
        b_prime: f64,
        omega: f64,
        eps_prime: f64,
        n_sites: u32,
    ) -> Result<Self, IsingError> {
        let p = IsingOffDiagParams { delta_prime, b_prime, omega, eps_prime, n_sites };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), IsingError> {
        if ![self.delta_prime, self.b_prime, self.omega, self.eps_prime]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(IsingError::InvalidParams("non-finite field".into()));
        }
        if self.delta_prime <= 0.0 {
            return Err(IsingError::InvalidParams(format!(
                "delta_prime = {} must be > 0",
                self.delta_prime
            )));
        }
        if self.omega <= 0.0 {
            return Err(IsingError::InvalidParams(format!("omega = {} must be > 0", self.omega)));
        }
        check_sites(self.n_sites)?;
        Ok(())
    }

    /// η_B = B̃′/ω̃, exactly the field ratio.
    pub fn eta_b(&self) -> f64 {
        self.b_prime / self.omega
    }

    /// κ_q = Δ̃′² sin²q.
    pub fn kappa_q(&self, q: f64) -> f64 {
        let s = self.delta_prime * q.sin();
        s * s
    }
}

fn check_sites(n: u32) -> Result<(), IsingError> {
    if n < 2 || n % 2 != 0 {
        return Err(IsingError::InvalidParams(format!("n_sites = {n} must be even and >= 2")));
    }
    Ok(())
}

/// One momentum mode's excitation probability by the three methods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeExcitation {
    pub q: f64,
    pub kappa_q: f64,
    pub p_numeric: f64,
    pub p_nonadiabatic: f64,
    pub p_adiabatic: f64,
}

/// Gaussian-peak + non-perturbative split of the defect density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityBreakdown {
    pub n_kzm_peaks: f64,
    pub n_fp: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl DensityBreakdown {
    pub fn total(&self) -> f64 {
        self.n_kzm_peaks + self.n_fp
    }
}

/// Anti-periodic momentum grid q = ±(2n−1)π/N, ascending.
pub fn mode_grid(n_sites: u32) -> Result<Vec<f64>, IsingError> {
    check_sites(n_sites)?;
    let half = n_sites / 2;
    let positive: Vec<f64> =
        (1..=half).map(|n| (2 * n - 1) as f64 * PI / n_sites as f64).collect();
    let mut grid: Vec<f64> = positive.iter().rev().map(|q| -q).collect();
    grid.extend_from_slice(&positive);
    Ok(grid)
}

fn check_momentum(q: f64) -> Result<(), IsingError> {
    if !q.is_finite() || q.abs() >= PI {
        return Err(IsingError::InvalidParams(format!("momentum q = {q} outside (-pi, pi)")));
    }
    Ok(())
}

/// Two-level reduction of a diagonal-drive mode:
/// Δ̃_q = −J̃ sin q, ε̃_q = ε̃′ + 2J̃ cos q, same η, no off-diagonal drive.
pub fn mode_drive_diag(p: &IsingDiagParams, q: f64) -> Result<DriveParams, IsingError> {
    check_momentum(q)?;
    Ok(DriveParams::from_eta(
        -p.j * q.sin(),
        p.eps_prime + 2.0 * p.j * q.cos(),
        p.eta,
        0.0,
        p.omega,
    )?)
}

/// Two-level reduction of an off-diagonal-drive mode. The coupling drive
/// splits into an off-diagonal part −B̃′ sin q and a diagonal part whose
/// sign is opposite to the two-level convention, hence the effective
/// η = −η_B cos q.
pub fn mode_drive_offdiag(p: &IsingOffDiagParams, q: f64) -> Result<DriveParams, IsingError> {
    check_momentum(q)?;
    Ok(DriveParams::new(
        -p.delta_prime * q.sin(),
        p.eps_prime + 2.0 * p.delta_prime * q.cos(),
        -p.b_prime * q.cos(),
        -p.b_prime * q.sin(),
        p.omega,
    )?)
}

// Σ_{n,m} w_n w_m cos(φ_n − φ_m) θ(n−m) with φ_n = ½ω̃(n²ω̃ − 2nε̃) and
// the θ(0) = ½ tie-break; shared by the truncated mode formulas and the
// Gaussian curvature coefficients.
fn ordered_double_sum(w: &[f64], omega: f64, eps: f64) -> f64 {
    let nm = (w.len() as i64 - 1) / 2;
    let phi: Vec<f64> = (-nm..=nm)
        .map(|n| {
            let nf = n as f64;
            0.5 * omega * (nf * nf * omega - 2.0 * nf * eps)
        })
        .collect();
    let mut s = 0.0;
    for i in 0..w.len() {
        s += 0.5 * w[i] * w[i];
        for j in 0..i {
            s += w[i] * w[j] * (phi[i] - phi[j]).cos();
        }
    }
    s
}

fn diag_weights(eta: f64, trunc: SumTruncation) -> Result<Vec<f64>, IsingError> {
    let nm = trunc.n_max() as i64;
    (-nm..=nm)
        .map(|n| Ok(bessel_j(n as i32, eta)?))
        .collect()
}

// Δ̃′ J_n(x) + (B̃′/4)(J_{n+1}(x) + J_{n−1}(x)); evaluating at the signed
// argument x = −η_B cos q is what reconciles the mode reduction's sign
// conventions with the photon-channel sum (Bessel parity absorbs the rest).
fn offdiag_weights(p: &IsingOffDiagParams, x: f64, trunc: SumTruncation) -> Result<Vec<f64>, IsingError> {
    let nm = trunc.n_max() as i64;
    (-nm..=nm)
        .map(|n| {
            let jn = bessel_j(n as i32, x)?;
            let jp = bessel_j(n as i32 + 1, x)?;
            let jm = bessel_j(n as i32 - 1, x)?;
            Ok(p.delta_prime * jn + 0.25 * p.b_prime * (jp + jm))
        })
        .collect()
}

/// Truncated photon-channel form of |u_q(∞)|² in the non-adiabatic
/// regime κ_q ≪ 1 (diagonal drive).
pub fn uq_nonadiabatic_diag(
    p: &IsingDiagParams,
    q: f64,
    trunc: SumTruncation,
) -> Result<f64, IsingError> {
    check_momentum(q)?;
    let w = diag_weights(p.eta, trunc)?;
    let s = ordered_double_sum(&w, p.omega, p.eps_prime + 2.0 * p.j * q.cos());
    Ok((-4.0 * PI * p.kappa_q(q) * s).exp())
}

/// Truncated photon-channel form of |u_q(∞)|² (off-diagonal drive).
pub fn uq_nonadiabatic_offdiag(
    p: &IsingOffDiagParams,
    q: f64,
    trunc: SumTruncation,
) -> Result<f64, IsingError> {
    check_momentum(q)?;
    let w = offdiag_weights(p, -p.eta_b() * q.cos(), trunc)?;
    let s = ordered_double_sum(&w, p.omega, p.eps_prime + 2.0 * p.delta_prime * q.cos());
    let sq = q.sin() * q.sin();
    Ok((-4.0 * PI * sq * s).exp())
}

// e^{−πκ}·F̃-amplitude products can straddle the f64 range even when the
// probability itself is tame, so the damping is applied to the amplitude
// before squaring, with a log-envelope early-out for hopeless tails
// (|₁F̃₁(−iκ, b, iω̃²)| grows like e^{2ω̃√κ}).
fn damped_prob(kappa: f64, omega: f64, amp: impl FnOnce() -> Result<C64, SpecFunError>) -> Result<f64, IsingError> {
    let envelope = -PI * kappa + 2.0 * omega * kappa.sqrt();
    if envelope < -350.0 {
        return Ok(0.0);
    }
    if PI * kappa > 700.0 {
        return Err(IsingError::Regime(format!(
            "kappa = {kappa}, omega = {omega}: damped amplitude outside f64 range"
        )));
    }
    let m = (-PI * kappa).exp() * amp()?;
    let p = PI * PI * m.norm_sqr();
    if !p.is_finite() {
        return Err(IsingError::Regime(format!(
            "kappa = {kappa}, omega = {omega}: amplitude overflow"
        )));
    }
    Ok(p)
}

/// Adiabatic-regime (κ_q ≫ 1) mode excitation P_FP(q) = π²η²e^{−2πκ_q}
/// |₁F̃₁(−iκ_q, 0, iω̃²)|² (diagonal drive).
pub fn uq_adiabatic_diag(p: &IsingDiagParams, q: f64) -> Result<f64, IsingError> {
    check_momentum(q)?;
    if p.eta == 0.0 {
        return Ok(0.0);
    }
    let kappa = p.kappa_q(q);
    let z = C64::new(0.0, p.omega * p.omega);
    let eta = p.eta;
    damped_prob(kappa, p.omega, || {
        Ok(eta * kummer_m_regularized(C64::new(0.0, -kappa), C64::new(0.0, 0.0), z)?)
    })
}

/// Adiabatic-regime mode excitation for the off-diagonal drive:
/// π²e^{−2πκ_q} |η_B cos q·₁F̃₁(−iκ_q,0,iω̃²)
///              − i B̃′ sin q·(√κ_q/2)(₁F̃₁(−iκ_q,1,iω̃²) + ₁F̃₁(1−iκ_q,1,iω̃²))|².
pub fn uq_adiabatic_offdiag(p: &IsingOffDiagParams, q: f64) -> Result<f64, IsingError> {
    check_momentum(q)?;
    if p.b_prime == 0.0 {
        return Ok(0.0);
    }
    let kappa = p.kappa_q(q);
    let z = C64::new(0.0, p.omega * p.omega);
    let ik = C64::new(0.0, kappa);
    let eta_b = p.eta_b();
    let (cq, sq) = (q.cos(), q.sin());
    let b = p.b_prime;
    damped_prob(kappa, p.omega, || {
        let t1 = eta_b * cq * kummer_m_regularized(-ik, C64::new(0.0, 0.0), z)?;
        let f_sum = kummer_m_regularized(-ik, C64::new(1.0, 0.0), z)?
            + kummer_m_regularized(C64::new(1.0, 0.0) - ik, C64::new(1.0, 0.0), z)?;
        let t2 = C64::new(0.0, b * sq * 0.5 * kappa.sqrt()) * f_sum;
        Ok(t1 - t2)
    })
}

// curvature of −ln|u_q|² at the gap-closing points; `eps_eff` is the local
// value of ε̃_q and `w` the local photon weights.
fn width_from(w: &[f64], omega: f64, eps_eff: f64, label: &str) -> Result<f64, IsingError> {
    let v = 4.0 * PI * ordered_double_sum(w, omega, eps_eff);
    if v <= 0.0 {
        return Err(IsingError::Regime(format!(
            "{label} = {v} <= 0: Gaussian-peak approximation invalid"
        )));
    }
    Ok(v)
}

/// Curvatures (α, β) of the non-adiabatic peaks at q = 0 and q = ±π
/// (diagonal drive). Both reduce to 2πJ̃² without the drive.
pub fn gaussian_widths_diag(
    p: &IsingDiagParams,
    trunc: SumTruncation,
) -> Result<(f64, f64), IsingError> {
    let w: Vec<f64> = diag_weights(p.eta, trunc)?.iter().map(|j| p.j * j).collect();
    let alpha = width_from(&w, p.omega, p.eps_prime + 2.0 * p.j, "alpha")?;
    let beta = width_from(&w, p.omega, p.eps_prime - 2.0 * p.j, "beta")?;
    Ok((alpha, beta))
}

/// Curvatures (α, β) for the off-diagonal drive, from the second-order
/// expansion of the photon-channel sum at q = 0 and q = ±π.
pub fn gaussian_widths_offdiag(
    p: &IsingOffDiagParams,
    trunc: SumTruncation,
) -> Result<(f64, f64), IsingError> {
    let w0 = offdiag_weights(p, -p.eta_b(), trunc)?;
    let wpi = offdiag_weights(p, p.eta_b(), trunc)?;
    let alpha = width_from(&w0, p.omega, p.eps_prime + 2.0 * p.delta_prime, "alpha")?;
    let beta = width_from(&wpi, p.omega, p.eps_prime - 2.0 * p.delta_prime, "beta")?;
    Ok((alpha, beta))
}

fn density_over_modes(
    drives: &[DriveParams],
    cfg: &IntegrationConfig,
) -> Result<f64, IsingError> {
    let probs = drives
        .par_iter()
        .map(|d| tdse::survival_probability(d, cfg))
        .collect::<Result<Vec<f64>, TdseError>>()?;
    // fixed q-order summation keeps the result independent of worker count
    Ok(probs.iter().sum::<f64>() / drives.len() as f64)
}

/// n = (1/N) Σ_q |u_q(∞)|² by direct per-mode integration (diagonal drive).
pub fn defect_density_numeric_diag(
    p: &IsingDiagParams,
    cfg: &IntegrationConfig,
) -> Result<f64, IsingError> {
    let drives = mode_grid(p.n_sites)?
        .iter()
        .map(|&q| mode_drive_diag(p, q))
        .collect::<Result<Vec<_>, _>>()?;
    density_over_modes(&drives, cfg)
}

/// n = (1/N) Σ_q |u_q(∞)|² by direct per-mode integration (off-diagonal drive).
pub fn defect_density_numeric_offdiag(
    p: &IsingOffDiagParams,
    cfg: &IntegrationConfig,
) -> Result<f64, IsingError> {
    let drives = mode_grid(p.n_sites)?
        .iter()
        .map(|&q| mode_drive_offdiag(p, q))
        .collect::<Result<Vec<_>, _>>()?;
    density_over_modes(&drives, cfg)
}

/// Mode-resolved profile: numeric, non-adiabatic and adiabatic values of
/// |u_q(∞)|² for every grid momentum (diagonal drive).
pub fn mode_profile_diag(
    p: &IsingDiagParams,
    cfg: &IntegrationConfig,
    trunc: SumTruncation,
) -> Result<Vec<ModeExcitation>, IsingError> {
    mode_grid(p.n_sites)?
        .par_iter()
        .map(|&q| {
            let drive = mode_drive_diag(p, q)?;
            Ok(ModeExcitation {
                q,
                kappa_q: p.kappa_q(q),
                p_numeric: tdse::survival_probability(&drive, cfg)?,
                p_nonadiabatic: uq_nonadiabatic_diag(p, q, trunc)?,
                p_adiabatic: uq_adiabatic_diag(p, q)?,
            })
        })
        .collect()
}

/// Mode-resolved profile for the off-diagonal drive.
pub fn mode_profile_offdiag(
    p: &IsingOffDiagParams,
    cfg: &IntegrationConfig,
    trunc: SumTruncation,
) -> Result<Vec<ModeExcitation>, IsingError> {
    mode_grid(p.n_sites)?
        .par_iter()
        .map(|&q| {
            let drive = mode_drive_offdiag(p, q)?;
            Ok(ModeExcitation {
                q,
                kappa_q: p.kappa_q(q),
                p_numeric: tdse::survival_probability(&drive, cfg)?,
                p_nonadiabatic: uq_nonadiabatic_offdiag(p, q, trunc)?,
                p_adiabatic: uq_adiabatic_offdiag(p, q)?,
            })
        })
        .collect()
}

// (1/2π)∫ P(q) dq over (−π, π) with failure capture across the quadrature
// closure boundary.
fn momentum_integral(
    f: impl Fn(f64) -> Result<f64, IsingError>,
) -> Result<f64, IsingError> {
    let failed: std::cell::Cell<Option<String>> = std::cell::Cell::new(None);
    let integrand = |q: f64| -> C64 {
        match f(q) {
            Ok(v) => C64::new(v, 0.0),
            Err(e) => {
                failed.set(Some(e.to_string()));
                C64::new(0.0, 0.0)
            }
        }
    };
    // the peaks live within ~1/coupling of 0 and ±π; worst-first refinement
    // finds them, but seeding the interval in quarters avoids a deceptive
    // first estimate on [−π, π]
    let mut total = C64::new(0.0, 0.0);
    for k in 0..4 {
        let a = -PI + 0.5 * PI * k as f64;
        // near the drive resonance the envelope carries fast fringes in q
        // whose evaluation noise floors the error estimate around 1e-8 of
        // the peak scale; 1e-5 relative still leaves three orders of
        // margin under every tolerance built on this integral
        total += quad::integrate(&integrand, a, a + 0.5 * PI, 1e-5, 1e-10, 20_000)?;
        if let Some(msg) = failed.take() {
            return Err(IsingError::Regime(msg));
        }
    }
    Ok(total.re / (2.0 * PI))
}

/// Thermodynamic-limit non-perturbative density n_FP = ∫ dq/2π · P_FP(q)
/// (diagonal drive).
pub fn n_fp_integral(p: &IsingDiagParams) -> Result<f64, IsingError> {
    if p.eta == 0.0 {
        return Ok(0.0);
    }
    momentum_integral(|q| uq_adiabatic_diag(p, q))
}

/// Same for the off-diagonal drive.
pub fn n_fp_integral_offdiag(p: &IsingOffDiagParams) -> Result<f64, IsingError> {
    if p.b_prime == 0.0 {
        return Ok(0.0);
    }
    momentum_integral(|q| uq_adiabatic_offdiag(p, q))
}

// ∫₀^∞ e^{−2πx²}|₁F̃₁(−ix², 0, iω̃²)|² dx, cached per ω̃ — every J̃ on a
// sweep reuses the same integral.
fn nfp_profile_integral(omega: f64) -> Result<f64, IsingError> {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&omega.to_bits()) {
        return Ok(v);
    }
    let failed: std::cell::Cell<Option<String>> = std::cell::Cell::new(None);
    let integrand = |x: f64| -> C64 {
        let kappa = x * x;
        let r = damped_prob(kappa, omega, || {
            Ok(kummer_m_regularized(
                C64::new(0.0, -kappa),
                C64::new(0.0, 0.0),
                C64::new(0.0, omega * omega),
            )?)
        });
        match r {
            Ok(v) => C64::new(v / (PI * PI), 0.0),
            Err(e) => {
                failed.set(Some(e.to_string()));
                C64::new(0.0, 0.0)
            }
        }
    };
    // envelope e^{−2πx² + 4ω̃x}: negligible beyond the positive root of
    // 2πx² − 4ω̃x = 45
    let x_max = (4.0 * omega + (16.0 * omega * omega + 360.0 * PI).sqrt()) / (4.0 * PI) + 1.0;
    // the fringe count grows like 4ω̃·x_max and evaluation noise floors
    // the error estimate near 1e-7 of the peak scale at large ω̃; 1e-6
    // relative keeps orders of margin for every downstream tolerance
    let v = quad::integrate(&integrand, 0.0, x_max, 1e-6, 1e-12, 20_000)?.re;
    if let Some(msg) = failed.take() {
        return Err(IsingError::Regime(msg));
    }
    cache.lock().unwrap().insert(omega.to_bits(), v);
    Ok(v)
}

/// Coefficient of J̃⁻¹ in the large-J̃ form of n_FP:
/// 2πη² ∫₀^∞ dx e^{−2πx²}|₁F̃₁(−ix², 0, iω̃²)|².
pub fn n_fp_coefficient(omega: f64, eta: f64) -> Result<f64, IsingError> {
    if !(omega > 0.0) || !eta.is_finite() {
        return Err(IsingError::InvalidParams(format!(
            "omega = {omega} must be > 0 and eta = {eta} finite"
        )));
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * PI * eta * eta * nfp_profile_integral(omega)?)
}

/// Large-J̃ closed form n_FP ≈ n_fp_coefficient(ω̃, η)/J̃.
pub fn n_fp_approx(p: &IsingDiagParams) -> Result<f64, IsingError> {
    Ok(n_fp_coefficient(p.omega, p.eta)? / p.j)
}

/// Gaussian-peak + non-perturbative approximation of the defect density
/// (diagonal drive).
pub fn defect_density_approx_diag(
    p: &IsingDiagParams,
    trunc: SumTruncation,
) -> Result<DensityBreakdown, IsingError> {
    let (alpha, beta) = gaussian_widths_diag(p, trunc)?;
    Ok(DensityBreakdown {
        n_kzm_peaks: 0.5 / PI.sqrt() * (1.0 / alpha.sqrt() + 1.0 / beta.sqrt()),
        n_fp: n_fp_integral(p)?,
        alpha,
        beta,
    })
}

/// Gaussian-peak + non-perturbative approximation (off-diagonal drive).
pub fn defect_density_approx_offdiag(
    p: &IsingOffDiagParams,
    trunc: SumTruncation,
) -> Result<DensityBreakdown, IsingError> {
    let (alpha, beta) = gaussian_widths_offdiag(p, trunc)?;
    Ok(DensityBreakdown {
        n_kzm_peaks: 0.5 / PI.sqrt() * (1.0 / alpha.sqrt() + 1.0 / beta.sqrt()),
        n_fp: n_fp_integral_offdiag(p)?,
        alpha,
        beta,
    })
}

/// Log-log least squares of density vs coupling:
/// returns (exponent, prefactor, RMS log-residual).
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<(f64, f64, f64), IsingError> {
    if points.len() < 3 {
        return Err(IsingError::InvalidParams(format!(
            "scaling fit needs >= 3 points, got {}",
            points.len()
        )));
    }
    for &(x, y) in points {
        if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(IsingError::InvalidParams(format!(
                "scaling fit needs positive finite points, got ({x}, {y})"
            )));
        }
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= 0.0 {
        return Err(IsingError::InvalidParams("couplings must be distinct".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (exponent * x + intercept);
            r * r
        })
        .sum();
    Ok((exponent, intercept.exp(), (ss / n).sqrt()))
}
