//! Closed-form transition probabilities from first-order perturbation
//! theory in the rotating frame, valid in the non-adiabatic regime.

use std::f64::consts::PI;
use thiserror::Error;

use crate::specfun::bessel_j;
use crate::tdse::DriveParams;

#[derive(Debug, Clone, Error)]
pub enum PtError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    SpecFun(#[from] crate::specfun::SpecFunError),
}

/// Double-sum truncation: |n|, |m| <= n_max.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumTruncation {
    n_max: u32,
}

impl SumTruncation {
    pub fn new(n_max: u32) -> Result<Self, PtError> {
        if n_max == 0 {
            return Err(PtError::Precondition("n_max must be >= 1".into()));
        }
        Ok(SumTruncation { n_max })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }
}

impl Default for SumTruncation {
    fn default() -> Self {
        SumTruncation { n_max: 10 }
    }
}

/// Bare sweep: exp(−2πΔ̃²).
pub fn lzsm_probability(delta: f64) -> f64 {
    (-2.0 * PI * delta * delta).exp()
}

// θ with the tie-breaking convention θ(0) = ½.
fn theta(k: i64) -> f64 {
    match k.cmp(&0) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Equal => 0.5,
        std::cmp::Ordering::Less => 0.0,
    }
}

fn exponent(p: &DriveParams, trunc: SumTruncation) -> Result<f64, PtError> {
    let eta = p.eta();
    let nm = trunc.n_max as i64;
    let mut w = Vec::with_capacity((2 * nm + 1) as usize);
    let mut phi = Vec::with_capacity((2 * nm + 1) as usize);
    for n in -nm..=nm {
        let jn = bessel_j(n as i32, eta)?;
        let jp = bessel_j(n as i32 + 1, eta)?;
        let jm = bessel_j(n as i32 - 1, eta)?;
        w.push(p.delta * jn + 0.25 * p.b_amp * (jp + jm));
        let nf = n as f64;
        phi.push(0.5 * p.omega * (nf * nf * p.omega - 2.0 * nf * p.eps));
    }
    let mut s = 0.0;
    for (i, n) in (-nm..=nm).enumerate() {
        for (j, m) in (-nm..=nm).enumerate() {
            let th = theta(n - m);
            if th != 0.0 {
                s += w[i] * w[j] * (phi[i] - phi[j]).cos() * th;
            }
        }
    }
    Ok(-4.0 * PI * s)
}

/// General first-order probability, raw exponential of the truncated double
/// sum; not clamped, so values above 1 signal regime breakdown rather than
/// being masked.
pub fn p_pt(p: &DriveParams, trunc: SumTruncation) -> Result<f64, PtError> {
    let e = exponent(p, trunc)?;
    #[cfg(debug_assertions)]
    {
        if let Ok(doubled) = SumTruncation::new(trunc.n_max * 2) {
            let e2 = exponent(p, doubled)?;
            debug_assert!(
                (e - e2).abs() < 1e-8,
                "double sum not converged at n_max = {}: {e} vs {e2}",
                trunc.n_max
            );
        }
    }
    Ok(e.exp())
}

/// Specialization Ã = 0, where the double sum collapses to a closed form.
pub fn p_pt_a0(p: &DriveParams) -> Result<f64, PtError> {
    if p.a_amp != 0.0 {
        return Err(PtError::Precondition(format!("a_amp = {} must be 0", p.a_amp)));
    }
    let we = p.omega * p.eps;
    let e = -2.0 * PI * p.delta * p.delta
        - 0.5 * PI * p.b_amp * p.b_amp * we.cos().powi(2)
        - 2.0 * PI * p.b_amp * p.delta * (0.5 * p.omega * p.omega).cos() * we.cos();
    Ok(e.exp())
}

/// Specialization B̃ = 0 (diagonal drive only).
pub fn p_pt_b0(p: &DriveParams, trunc: SumTruncation) -> Result<f64, PtError> {
    if p.b_amp != 0.0 {
        return Err(PtError::Precondition(format!("b_amp = {} must be 0", p.b_amp)));
    }
    p_pt(p, trunc)
}

/// First order in η on top of the B̃ = 0 form.
pub fn p_pt_b0_small_eta(p: &DriveParams) -> Result<f64, PtError> {
    if p.b_amp != 0.0 {
        return Err(PtError::Precondition(format!("b_amp = {} must be 0", p.b_amp)));
    }
    let eta = p.eta();
    let e = -2.0 * PI
        * p.delta
        * p.delta
        * (1.0 + 2.0 * eta * (p.omega * p.eps).sin() * (0.5 * p.omega * p.omega).sin());
    Ok(e.exp())
}
