//! Complex log-gamma via the Lanczos approximation (g = 7, 9 terms).

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use super::SpecFunError;

// GSL / Numerical Recipes coefficient set, good to ~1e-13 relative.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Principal branch of log Γ(z).
pub fn log_gamma(z: C64) -> Result<C64, SpecFunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecFunError::Pole { what: "log_gamma", at: z });
    }
    if z.re < 0.5 {
        // Reflection: log Γ(z) = log(π / sin(πz)) − log Γ(1−z).
        // log sin(πz) can pick up spurious 2πi multiples for large |Im z|;
        // compute it in a form stable for Im z of either sign.
        let lg = log_gamma(C64::new(1.0, 0.0) - z)?;
        let log_sin = log_sin_pi(z);
        return Ok(C64::new(PI.ln(), 0.0) - log_sin - lg);
    }
    let x = z - 1.0;
    let mut acc = C64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt().ln() + (x + 0.5) * w.ln() - w + acc.ln())
}

/// Γ(z) as a plain complex value.
pub fn gamma(z: C64) -> Result<C64, SpecFunError> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z); entire, returns 0 at the poles of Γ.
pub fn gamma_recip(z: C64) -> C64 {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

// log sin(πz) without overflow for large |Im z|:
// sin(πz) = (e^{iπz} − e^{−iπz}) / 2i; factor out the growing exponential.
fn log_sin_pi(z: C64) -> C64 {
    let ipz = C64::new(0.0, PI) * z;
    if z.im > 0.0 {
        // sin(πz) = e^{-iπz}/(2i) · (e^{2iπz} − 1)
        (-ipz) + ((2.0 * ipz).exp() - 1.0).ln() - C64::new(0.0, 2.0).ln()
    } else {
        (ipz) + (1.0 - (-2.0 * ipz).exp()).ln() - C64::new(0.0, 2.0).ln()
    }
}
