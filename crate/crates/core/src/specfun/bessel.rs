//! Integer-order Bessel functions of the first kind via Miller's backward
//! recurrence, normalized with J₀(x) + 2Σ J₂ₖ(x) = 1.

use super::SpecFunError;

/// Largest |x| the drive formulas ever need (the drives use |η| ≲ 1.5).
pub const BESSEL_X_MAX: f64 = 50.0;

/// J_n(x) for integer n.
pub fn bessel_j(n: i32, x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x.abs() > BESSEL_X_MAX {
        return Err(SpecFunError::Domain {
            what: "bessel_j",
            detail: format!("|x| = {} exceeds documented range {BESSEL_X_MAX}", x.abs()),
        });
    }
    // J_{-n}(x) = (-1)^n J_n(x); J_n(-x) = (-1)^n J_n(x)
    let mut sign = 1.0;
    let mut n = n;
    let mut x = x;
    if n < 0 {
        n = -n;
        if n % 2 == 1 {
            sign = -sign;
        }
    }
    if x < 0.0 {
        x = -x;
        if n % 2 == 1 {
            sign = -sign;
        }
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if x < 1e-8 {
        // leading series term is enough at this magnitude
        let mut t = 1.0;
        for k in 1..=n {
            t *= x / (2.0 * k as f64);
        }
        return Ok(sign * t);
    }

    let (jn, norm) = miller_pass(n, x, miller_start(n, x));
    Ok(sign * jn / norm)
}

fn miller_start(n: i32, x: f64) -> usize {
    let base = (n as f64).max(x.abs());
    (base + 20.0 + 10.0 * base.sqrt()).ceil() as usize
}

fn miller_pass(n: i32, x: f64, start: usize) -> (f64, f64) {
    let mut jp = 0.0f64;
    let mut jc = 1e-300f64;
    let mut jn = 0.0;
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        if k == n as usize {
            jn = jc;
        }
        if k % 2 == 0 {
            norm += if k == 0 { jc } else { 2.0 * jc };
        }
        let jm = (2.0 * k as f64 / x) * jc - jp;
        jp = jc;
        jc = jm;
        if jc.abs() > 1e250 {
            jc *= 1e-250;
            jp *= 1e-250;
            jn *= 1e-250;
            norm *= 1e-250;
        }
    }
    (jn, norm)
}
