//! Confluent hypergeometric M(a,b,z) = ₁F₁(a;b;z) on the imaginary axis
//! (and nearby), where the Taylor series cancels catastrophically.
//!
//! Four evaluation regimes, dispatched on |z| and |a|:
//!   1. |z| <= 10          : plain f64 Taylor series;
//!   2. (1+|a|)^2 <= |z|/4 : large-z asymptotic expansion;
//!   3. otherwise          : double-double Taylor series;
//!   4. fallback           : arbitrary-precision (MPFR) Taylor series.
//!
//! Regime 3 monitors the peak-term magnitude and hands over to regime 4
//! (rather than silently returning noise) when cancellation exceeds what
//! the double-double accumulator can absorb.  Regime 4 measures the
//! cancellation it actually met and re-runs at higher precision until the
//! result carries full f64 accuracy; on the imaginary axis the required
//! headroom grows like e^{|z|} at small |a|, far beyond any fixed-width
//! format.

use num_complex::Complex64 as C64;
use rug::Float;
use std::f64::consts::PI;

use super::dd::{CDd, Dd};
use super::{gamma, gamma_recip, SeriesControl, SpecFunError};

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// M(a, b, z); b must not be a non-positive integer.
pub fn kummer_m(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Pole { what: "kummer_m", at: b });
    }
    if a == C64::new(0.0, 0.0) || z.norm() == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let az = z.norm();
    if az <= 10.0 {
        return taylor_f64(a, b, z, &SeriesControl::default());
    }
    if az > 40.0 && (1.0 + a.norm()).powi(2) <= 0.25 * az {
        return Ok(gamma(b)? * asymptotic_reg(a, b, z)?);
    }
    match taylor_dd(a, b, z) {
        Err(SpecFunError::NonConvergence { .. }) => taylor_mp(a, b, z),
        other => other,
    }
}

/// Regularized ₁F̃₁(a; b; z) = M(a,b,z)/Γ(b), defined for every b.
/// Non-positive integer b other than 0 is not needed and is rejected.
pub fn kummer_m_regularized(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    if b == C64::new(0.0, 0.0) {
        // limit value: ₁F̃₁(a;0;z) = a z ₁F₁(a+1;2;z)
        return Ok(a * z * kummer_m(a + 1.0, C64::new(2.0, 0.0), z)?);
    }
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Domain {
            what: "kummer_m_regularized",
            detail: format!("b = {b}: negative-integer b is outside the supported domain"),
        });
    }
    Ok(gamma_recip(b) * kummer_m(a, b, z)?)
}

fn taylor_f64(a: C64, b: C64, z: C64, ctrl: &SeriesControl) -> Result<C64, SpecFunError> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_streak = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.norm() <= ctrl.tail_tolerance * sum.norm() {
            small_streak += 1;
            if small_streak == 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence {
        what: "kummer_m",
        detail: format!("Taylor series at z = {z} not converged in {} terms", ctrl.max_terms),
    })
}

fn taylor_dd(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    let max_terms = 200 + 3 * z.norm() as usize;
    let zdd = CDd::from_c64(z);
    let mut term = CDd::from_c64(C64::new(1.0, 0.0));
    let mut sum = term;
    let mut peak = 1.0f64;
    let mut small_streak = 0;
    // shift_k builds w + k as an exact double-double: rounding w.re + k in
    // f64 first injects coherent 1e-16 term errors that the cancellation
    // amplifies whenever w.re + k is not representable
    let shift_k = |w: C64, kf: f64| CDd {
        re: Dd::from_f64(w.re).add(Dd::from_f64(kf)),
        im: Dd::from_f64(w.im),
    };
    for k in 0..max_terms {
        let kf = k as f64;
        let num = shift_k(a, kf).mul(zdd);
        let den = shift_k(b, kf).mul(CDd::from_c64(C64::new(kf + 1.0, 0.0)));
        term = term.mul(num).div(den);
        sum = sum.add(term);
        let tn = term.norm_f64();
        peak = peak.max(tn);
        let sn = sum.norm_f64();
        if tn <= 1e-17 * sn.max(1e-30) {
            small_streak += 1;
            if small_streak == 2 {
                if peak > 1e17 * sn {
                    return Err(SpecFunError::NonConvergence {
                        what: "kummer_m",
                        detail: format!(
                            "cancellation of {:.1e} at z = {z} exceeds accumulator precision",
                            peak / sn
                        ),
                    });
                }
                return Ok(sum.to_c64());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence {
        what: "kummer_m",
        detail: format!("compensated Taylor series at z = {z} not converged in {max_terms} terms"),
    })
}

// DLMF 13.7.2-style expansion of M(a,b,z)/Γ(b); the e^{±iπa} branch factor
// takes the upper sign for Im z >= 0.
fn asymptotic_reg(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    let s = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let s1 = optimal_sum(|k| {
        let kf = k as f64;
        (a + kf) * (a - b + 1.0 + kf) / ((kf + 1.0) * -z)
    })?;
    let s2 = optimal_sum(|k| {
        let kf = k as f64;
        (b - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * z)
    })?;
    let t1 = (C64::new(0.0, s * PI) * a).exp() * z.powc(-a) * gamma_recip(b - a) * s1;
    let t2 = z.exp() * z.powc(a - b) * gamma_recip(a) * s2;
    Ok(t1 + t2)
}

// Sum 1 + Σ Π ratio(k), truncating at the smallest term of the divergent tail.
fn optimal_sum<F: Fn(usize) -> C64>(ratio: F) -> Result<C64, SpecFunError> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 0..200 {
        let next = term * ratio(k);
        let nn = next.norm();
        if nn <= 1e-17 * sum.norm() {
            return Ok(sum + next);
        }
        if nn >= last {
            // optimal truncation of the asymptotic tail
            if nn > 1e-11 * sum.norm() {
                return Err(SpecFunError::NonConvergence {
                    what: "kummer_m",
                    detail: format!("asymptotic tail floor {:.1e} too high", nn / sum.norm()),
                });
            }
            return Ok(sum);
        }
        term = next;
        sum += term;
        last = nn;
    }
    Ok(sum)
}

// Arbitrary-precision Taylor sum.  One pass runs at a fixed MPFR
// precision, records the peak-term magnitude, and reports how many bits
// the cancellation consumed; the driver re-runs with that many bits of
// headroom until at least 53 accurate bits survive.
fn taylor_mp(a: C64, b: C64, z: C64) -> Result<C64, SpecFunError> {
    let max_terms = 400 + 4 * z.norm() as usize;
    let mut prec: u32 = 192;
    for _ in 0..6 {
        match taylor_mp_pass(a, b, z, prec, max_terms)? {
            Ok(v) => return Ok(v),
            Err(needed) => prec = needed,
        }
    }
    Err(SpecFunError::NonConvergence {
        what: "kummer_m",
        detail: format!("cancellation at z = {z} still unresolved at {prec} bits"),
    })
}

// Ok(Ok(value)) on success, Ok(Err(bits)) when the pass found more
// cancellation than `prec` can absorb and must be repeated.
#[allow(clippy::type_complexity)]
fn taylor_mp_pass(
    a: C64,
    b: C64,
    z: C64,
    prec: u32,
    max_terms: usize,
) -> Result<Result<C64, u32>, SpecFunError> {
    let fv = |v: f64| Float::with_val(prec, v);
    let (a_re, a_im) = (fv(a.re), fv(a.im));
    let (b_re, b_im) = (fv(b.re), fv(b.im));
    let (z_re, z_im) = (fv(z.re), fv(z.im));
    let (mut t_re, mut t_im) = (fv(1.0), fv(0.0));
    let (mut s_re, mut s_im) = (fv(1.0), fv(0.0));
    let exp_of = |re: &Float, im: &Float| -> i64 {
        re.get_exp()
            .unwrap_or(i32::MIN)
            .max(im.get_exp().unwrap_or(i32::MIN)) as i64
    };
    let mut peak: i64 = 0;
    let mut streak = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        // numerator (a + k) z and denominator (b + k)(k + 1)
        let ar = Float::with_val(prec, &a_re + kf);
        let n_re = Float::with_val(prec, &ar * &z_re) - Float::with_val(prec, &a_im * &z_im);
        let n_im = Float::with_val(prec, &ar * &z_im) + Float::with_val(prec, &a_im * &z_re);
        let d_re = Float::with_val(prec, &b_re + kf) * (kf + 1.0);
        let d_im = Float::with_val(prec, &b_im * (kf + 1.0));
        // t <- t * n / d, dividing through the conjugate
        let u_re = Float::with_val(prec, &t_re * &n_re) - Float::with_val(prec, &t_im * &n_im);
        let u_im = Float::with_val(prec, &t_re * &n_im) + Float::with_val(prec, &t_im * &n_re);
        let d_sq = Float::with_val(prec, &d_re * &d_re) + Float::with_val(prec, &d_im * &d_im);
        let d_inv = Float::with_val(prec, d_sq.recip_ref());
        t_re = (Float::with_val(prec, &u_re * &d_re) + Float::with_val(prec, &u_im * &d_im))
            * &d_inv;
        t_im = (Float::with_val(prec, &u_im * &d_re) - Float::with_val(prec, &u_re * &d_im))
            * &d_inv;
        s_re += &t_re;
        s_im += &t_im;
        let t_exp = exp_of(&t_re, &t_im);
        let s_exp = exp_of(&s_re, &s_im);
        peak = peak.max(t_exp);
        if t_exp < s_exp.saturating_sub(107) {
            streak += 1;
            if streak == 2 {
                let cancel = peak - s_exp;
                if (prec as i64) < cancel + 85 {
                    let needed = (cancel + 128).clamp(192, 8_192) as u32;
                    return Ok(Err(needed.max(prec + 64)));
                }
                return Ok(Ok(C64::new(s_re.to_f64(), s_im.to_f64())));
            }
        } else {
            streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence {
        what: "kummer_m",
        detail: format!("extended-precision Taylor series at z = {z} not converged in {max_terms} terms"),
    })
}
