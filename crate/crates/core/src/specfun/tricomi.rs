//! Tricomi confluent hypergeometric function U(a, b, z) for complex
//! parameters, via the rotated-contour Laplace integral
//!
//!     U(a,b,z) = e^{-i φ a} / Γ(a) · ∫_0^∞ e^{-|z| u} u^{a-1} (1 + e^{-iφ} u)^{b-a-1} du,
//!
//! with φ = arg z, valid for Re a > 0 and |φ| < π. Purely imaginary or
//! zero-real-part `a` (the physically relevant case) is reached with the
//! contiguous relation in `a`; b = 0 is reached with U(a,0,z) = z U(a+1,2,z).

use num_complex::Complex64 as C64;

use super::{gamma, quad, SpecFunError};

pub fn tricomi_u(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    if z.norm() == 0.0 {
        return Err(SpecFunError::Domain {
            what: "tricomi_u",
            detail: "z = 0".into(),
        });
    }
    if z.re < 0.0 && z.im == 0.0 {
        return Err(SpecFunError::Domain {
            what: "tricomi_u",
            detail: format!("z = {z} lies on the branch cut"),
        });
    }
    if b == C64::new(0.0, 0.0) {
        // Kummer transformation U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z) at b = 0
        return Ok(z * tricomi_u(a + 1.0, C64::new(2.0, 0.0), z)?);
    }
    if a.re < 0.5 {
        // U(a,b,z) = -(b - 2a - 2 - z) U(a+1,b,z) - (a+1)(a - b + 2) U(a+2,b,z)
        let u1 = tricomi_u(a + 1.0, b, z)?;
        let u2 = tricomi_u(a + 2.0, b, z)?;
        return Ok(-(b - 2.0 * a - 2.0 - z) * u1 - (a + 1.0) * (a - b + 2.0) * u2);
    }
    u_laplace(a, b, z)
}

// Rotated-contour integral, Re a >= 0.5. Substituting u = e^x makes the
// endpoint behaviour exponential on both sides, so a finite window suffices.
fn u_laplace(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    let r = z.norm();
    let phi = z.arg();
    let rot = C64::new(0.0, -phi).exp();

    // Integrand magnitude ~ exp(Re(a) x - r e^x) peaks at x* = ln(Re a / r).
    let x_peak = (a.re / r).ln();
    let peak_log = a.re * x_peak - a.re;
    // lower cutoff: Re(a) x_lo <= peak_log - 48
    let x_lo = (peak_log - 48.0) / a.re;
    // upper cutoff: r e^x >= |peak_log| + growth margin + 48
    let margin = (b - a).re.abs().max(1.0) * 4.0;
    let x_hi = ((a.re + margin + 60.0) / r).ln().max(x_peak + 2.0);

    let f = |x: f64| -> C64 {
        let u = x.exp();
        let log_mag = C64::new(a.re * x - r * u, a.im * x);
        (log_mag.exp()) * (C64::new(1.0, 0.0) + rot * u).powc(b - a - 1.0)
    };
    // Roundoff sets an absolute error floor proportional to the integrand's
    // peak magnitude; demanding less than that loops forever.
    let abs_floor = 4e-16 * peak_log.exp() * (x_hi - x_lo).max(1.0);
    let integral = quad::integrate(f, x_lo, x_hi, 1e-12, abs_floor, 4000)?;
    let pre = (C64::new(0.0, -phi * 1.0) * a).exp() / gamma(a)?;
    Ok(pre * integral)
}
