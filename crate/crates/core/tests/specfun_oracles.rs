//! Independent oracles for the special-function kernels: exact rational
//! series, ODE marches started from machine-precision asymptotics, and
//! limit extrapolation. None of these share an evaluation path with the
//! implementations they check.

use kzosc_core::specfun::{
    bessel_j, gamma_recip, kummer_m, kummer_m_regularized, log_gamma, parabolic_cylinder_d,
    tricomi_u,
};
use kzosc_core::C64;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::f64::consts::PI;

// ---------- exact complex-rational Kummer series ----------

#[derive(Clone)]
struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    fn new(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        CRat {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    fn from_int(k: i64) -> Self {
        CRat::new(k, 1, 0, 1)
    }

    fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn div(&self, o: &CRat) -> CRat {
        let n = &o.re * &o.re + &o.im * &o.im;
        let conj = CRat { re: o.re.clone(), im: -o.im.clone() };
        let p = self.mul(&conj);
        CRat { re: p.re / &n, im: p.im / &n }
    }

    fn to_c64(&self) -> C64 {
        fn f(r: &BigRational) -> f64 {
            let numer: f64 = r.numer().to_string().parse().unwrap_or(f64::INFINITY);
            let denom: f64 = r.denom().to_string().parse().unwrap_or(f64::INFINITY);
            if numer.is_finite() && denom.is_finite() {
                numer / denom
            } else {
                // fall back through a float-rounded quotient at ~300 digits
                let n = r.numer().to_string();
                let d = r.denom().to_string();
                let scale = n.len() as i32 - d.len() as i32;
                let nn: f64 = n[..n.len().min(17)].parse().unwrap();
                let dd: f64 = d[..d.len().min(17)].parse().unwrap();
                (nn / dd)
                    * 10f64.powi(scale - (n.len().min(17) as i32 - d.len().min(17) as i32))
            }
        }
        C64::new(f(&self.re), f(&self.im))
    }
}

// ₁F₁(a; b; z) summed in exact rational arithmetic, rounded once at the end
fn kummer_series_rational(a: CRat, b: CRat, z: CRat, terms: usize) -> C64 {
    let mut term = CRat { re: BigRational::one(), im: BigRational::zero() };
    let mut sum = term.clone();
    for k in 0..terms {
        let kc = CRat::from_int(k as i64);
        let kp1 = CRat::from_int(k as i64 + 1);
        term = term
            .mul(&a.add(&kc))
            .mul(&z)
            .div(&b.add(&kc).mul(&kp1));
        sum = sum.add(&term);
    }
    sum.to_c64()
}

#[test]
fn kummer_against_exact_rational_series() {
    // a = −0.5625i, b = 1, z = 4i
    let got = kummer_m(C64::new(0.0, -0.5625), C64::new(1.0, 0.0), C64::new(0.0, 4.0)).unwrap();
    let want = kummer_series_rational(
        CRat::new(0, 1, -9, 16),
        CRat::from_int(1),
        CRat::new(0, 1, 4, 1),
        80,
    );
    assert!((got - want).norm() < 1e-10 * want.norm(), "{got} vs {want}");
}

#[test]
fn regularized_kummer_against_limit_extrapolation() {
    // ₁F̃₁(−0.49i; 0; 36i) as the b → 0 limit of ₁F₁(a;b;z)/Γ(b),
    // Richardson-extrapolated over halving real offsets
    let a = C64::new(0.0, -0.49);
    let z = C64::new(0.0, 36.0);
    let levels = 6;
    let mut rows: Vec<Vec<C64>> = Vec::new();
    let mut beta = 4e-3;
    for _ in 0..levels {
        let v = kummer_m(a, C64::new(beta, 0.0), z).unwrap() * gamma_recip(C64::new(beta, 0.0));
        rows.push(vec![v]);
        beta *= 0.5;
    }
    for j in 1..levels {
        for i in j..levels {
            let factor = 2f64.powi(j as i32);
            let prev = rows[i][j - 1];
            let prev_up = rows[i - 1][j - 1];
            let v = (factor * prev - prev_up) / (factor - 1.0);
            rows[i].push(v);
        }
    }
    let want = rows[levels - 1][levels - 1];
    let got = kummer_m_regularized(a, C64::new(0.0, 0.0), z).unwrap();
    assert!((got - want).norm() < 1e-9 * want.norm(), "{got} vs {want}");
}

// ---------- Kummer-ODE march oracle for the Tricomi function ----------

// U(a, b, z) along the imaginary axis z = i·t (t > 0), seeded at t = 400
// from the machine-converged large-z expansion and marched down by RK4 on
// z u″ + (b − z) u′ − a u = 0.
fn tricomi_march(a: C64, b: C64, t_target: f64) -> C64 {
    let t0 = 400.0;
    let u0 = tricomi_asymptotic(a, b, C64::new(0.0, t0));
    // U'(a,b,z) = −a U(a+1, b+1, z)
    let up0 = -a * tricomi_asymptotic(a + 1.0, b + 1.0, C64::new(0.0, t0));

    let mut t = t0;
    let mut u = u0;
    let mut up = up0;
    let h = -1e-3;
    let deriv = |t: f64, u: C64, up: C64| -> (C64, C64) {
        let z = C64::new(0.0, t);
        let i = C64::new(0.0, 1.0);
        // d/dt = i d/dz along the ray
        (i * up, i * ((z - b) * up + a * u) / z)
    };
    let steps = ((t0 - t_target) / -h).round() as usize;
    for _ in 0..steps {
        let (k1u, k1p) = deriv(t, u, up);
        let (k2u, k2p) = deriv(t + 0.5 * h, u + 0.5 * h * k1u, up + 0.5 * h * k1p);
        let (k3u, k3p) = deriv(t + 0.5 * h, u + 0.5 * h * k2u, up + 0.5 * h * k2p);
        let (k4u, k4p) = deriv(t + h, u + h * k3u, up + h * k3p);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        up += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        t += h;
    }
    u
}

fn tricomi_asymptotic(a: C64, b: C64, z: C64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..60 {
        let kf = k as f64;
        term *= -(a + kf) * (a - b + 1.0 + kf) / ((kf + 1.0) * z);
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        sum += term;
    }
    (-a * z.ln()).exp() * sum
}

#[test]
fn tricomi_against_ode_march() {
    let a = C64::new(0.0, 0.5);
    let b = C64::new(1.0, 0.0);
    let want = tricomi_march(a, b, 9.0);
    let got = tricomi_u(a, b, C64::new(0.0, 9.0)).unwrap();
    assert!((got.norm() - want.norm()).abs() < 1e-8 * want.norm(), "{got} vs {want}");
    assert!((got - want).norm() < 1e-7 * want.norm(), "{got} vs {want}");
}

#[test]
fn tricomi_b0_against_ode_march() {
    // the b = 0 case the two-level closed forms actually consume
    let a = C64::new(0.0, -0.5625);
    let b = C64::new(0.0, 0.0);
    let want = tricomi_march(a, b, 9.0);
    let got = tricomi_u(a, b, C64::new(0.0, 9.0)).unwrap();
    assert!((got - want).norm() < 1e-7 * want.norm(), "{got} vs {want}");
}

// ---------- Weber-ODE march oracle for D_ν ----------

#[test]
fn parabolic_cylinder_against_weber_march() {
    // march w″ + (ν + ½ − z²/4) w = 0 along z = s·e^{iπ/4} from the exact
    // central values; compare at several s up to |z| = 20
    let nu = C64::new(0.0, 0.7);
    let ray = C64::new(0.0, 0.25 * PI).exp();
    let ln2 = std::f64::consts::LN_2;
    let mut w = (nu * (0.5 * ln2)).exp() * PI.sqrt()
        * gamma_recip((C64::new(1.0, 0.0) - nu) * 0.5);
    // D_ν'(0) = −2^{(ν+1)/2} √π / Γ(−ν/2) in z; chain rule to the ray parameter
    let mut wp = -((nu + 1.0) * (0.5 * ln2)).exp() * PI.sqrt() * gamma_recip(-nu * 0.5) * ray;

    let deriv = |s: f64, w: C64, wp: C64| -> (C64, C64) {
        let z = ray * s;
        (wp, -(nu + 0.5 - z * z * 0.25) * w * ray * ray)
    };
    let h = 5e-4;
    let checkpoints = [3.0, 8.5, 14.0, 20.0];
    let mut s = 0.0;
    let mut next = 0;
    while next < checkpoints.len() {
        let (k1w, k1p) = deriv(s, w, wp);
        let (k2w, k2p) = deriv(s + 0.5 * h, w + 0.5 * h * k1w, wp + 0.5 * h * k1p);
        let (k3w, k3p) = deriv(s + 0.5 * h, w + 0.5 * h * k2w, wp + 0.5 * h * k2p);
        let (k4w, k4p) = deriv(s + h, w + h * k3w, wp + h * k3p);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        wp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        s += h;
        if (s - checkpoints[next]).abs() < 0.25 * h {
            let got = parabolic_cylinder_d(nu, ray * checkpoints[next]).unwrap();
            assert!(
                (got - w).norm() < 1e-7 * w.norm(),
                "s = {}: {got} vs march {w}",
                checkpoints[next]
            );
            next += 1;
        }
    }
}

#[test]
fn parabolic_cylinder_recurrence_residual() {
    let nu = C64::new(0.0, 0.5);
    let z = C64::new(0.0, 0.25 * PI).exp() * 3.0;
    let dm = parabolic_cylinder_d(nu - 1.0, z).unwrap();
    let d0 = parabolic_cylinder_d(nu, z).unwrap();
    let dp = parabolic_cylinder_d(nu + 1.0, z).unwrap();
    let res = dp - z * d0 + nu * dm;
    assert!(res.norm() < 1e-9 * d0.norm(), "residual {}", res.norm());
}

// ---------- small closed-form anchors ----------

#[test]
fn bessel_against_power_series() {
    // J_1(1) = Σ (−1)^m (1/2)^{1+2m} / (m!(m+1)!)
    let mut term = 0.5;
    let mut want = term;
    for m in 1..20 {
        term *= -0.25 / (m as f64 * (m as f64 + 1.0));
        want += term;
    }
    assert!((bessel_j(1, 1.0).unwrap() - want).abs() < 1e-14);
}

#[test]
fn log_gamma_half() {
    let got = log_gamma(C64::new(0.5, 0.0)).unwrap();
    assert!((got.re - PI.sqrt().ln()).abs() < 1e-13 && got.im.abs() < 1e-13);
}

// ---------- property suites ----------

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn gamma_reflection_on_imaginary_axis(kappa in 0.01f64..5.0) {
            let g = (log_gamma(C64::new(0.0, kappa)).unwrap()).exp();
            let lhs = g.norm_sqr() * kappa * (PI * kappa).sinh();
            prop_assert!((lhs - PI).abs() < 1e-10 * PI);
        }

        #[test]
        fn bessel_normalization(x in 0.0f64..2.0) {
            let s: f64 = (-30..=30).map(|n| bessel_j(n, x).unwrap().powi(2)).sum();
            prop_assert!((s - 1.0).abs() < 1e-10);
        }

        #[test]
        fn kummer_transformation(
            ar in -1.0f64..1.0, ai in -1.0f64..1.0,
            bu in 0.0f64..1.0,
            zr in -3.0f64..3.0, zi in -3.0f64..3.0,
        ) {
            let a = C64::new(ar, ai);
            let b = C64::new(1.0 + bu, 0.0);
            let z = C64::new(zr, zi);
            let lhs = kummer_m(a, b, z).unwrap();
            let rhs = z.exp() * kummer_m(b - a, b, -z).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
        }
    }
}
