//! Shared oracle machinery for the integration suites: exact rational
//! Kummer series, a Stirling-shift log-gamma, and a Kummer-ODE march for
//! the Tricomi function. Independent codings from everything in src/.
#![allow(dead_code)]

use kzosc_core::C64;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

#[derive(Clone)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        CRat {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn from_int(k: i64) -> Self {
        CRat::new(k, 1, 0, 1)
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let n = &o.re * &o.re + &o.im * &o.im;
        let conj = CRat { re: o.re.clone(), im: -o.im.clone() };
        let p = self.mul(&conj);
        CRat { re: p.re / &n, im: p.im / &n }
    }

    pub fn to_c64(&self) -> C64 {
        fn f(r: &BigRational) -> f64 {
            // round through a 10^30-scaled integer quotient to stay exact
            let scale = BigInt::from(10u64).pow(30);
            let q = r.numer() * &scale / r.denom();
            let qf: f64 = q.to_string().parse().unwrap();
            qf * 1e-30
        }
        C64::new(f(&self.re), f(&self.im))
    }
}

/// ₁F₁(a; b; z) summed exactly in rational arithmetic, rounded once.
pub fn kummer_series_rational(a: &CRat, b: &CRat, z: &CRat, terms: usize) -> C64 {
    let mut term = CRat { re: BigRational::one(), im: BigRational::zero() };
    let mut sum = term.clone();
    for k in 0..terms {
        let kc = CRat::from_int(k as i64);
        let kp1 = CRat::from_int(k as i64 + 1);
        term = term.mul(&a.add(&kc)).mul(z).div(&b.add(&kc).mul(&kp1));
        sum = sum.add(&term);
    }
    sum.to_c64()
}

/// ln Γ(z) by the shifted Stirling series (recurrence up to Re z + 12,
/// Bernoulli tail through B₁₄); ~1e−13 over the moduli needed here.
pub fn log_gamma_stirling(z: C64) -> C64 {
    let shift = 12;
    let mut corr = C64::new(0.0, 0.0);
    for k in 0..shift {
        corr += (z + k as f64).ln();
    }
    let w = z + shift as f64;
    let bern = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let w2 = w * w;
    let mut pw = w;
    for (n, b2n) in bern.iter().enumerate() {
        let nn = (n + 1) as f64;
        s += b2n / (2.0 * nn * (2.0 * nn - 1.0) * pw);
        pw *= w2;
    }
    s - corr
}

/// U(a, b, sign·i·t_target) by RK4 march of z u″ + (b − z) u′ − a u = 0
/// along the imaginary axis, seeded from the large-z expansion at |z| = 400.
pub fn tricomi_march(a: C64, b: C64, t_target: f64, sign: f64) -> C64 {
    let t0 = 400.0;
    let z_at = |t: f64| C64::new(0.0, sign * t);
    let mut u = tricomi_asymptotic(a, b, z_at(t0));
    // U'(a,b,z) = −a U(a+1, b+1, z)
    let mut up = -a * tricomi_asymptotic(a + 1.0, b + 1.0, z_at(t0));
    let dir = C64::new(0.0, sign); // dz/dt
    let deriv = |t: f64, u: C64, up: C64| -> (C64, C64) {
        let z = z_at(t);
        (dir * up, dir * ((z - b) * up + a * u) / z)
    };
    let h = -1e-3;
    let mut t = t0;
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

/// Fixed-step RK4 integration of i dψ/dτ = H(τ) ψ for a real symmetric
/// traceless 2×2 H = [[e, d], [d, −e]]; returns |ψ₁|² at the window end.
pub fn rk4_survival(
    e_of: impl Fn(f64) -> f64,
    d_of: impl Fn(f64) -> f64,
    tau_start: f64,
    tau_end: f64,
    h: f64,
) -> f64 {
    let i = C64::new(0.0, 1.0);
    let rhs = |t: f64, up: C64, dn: C64| -> (C64, C64) {
        let e = e_of(t);
        let d = d_of(t);
        (-i * (e * up + d * dn), -i * (d * up - e * dn))
    };
    let steps = ((tau_end - tau_start) / h).round() as usize;
    let h = (tau_end - tau_start) / steps as f64;
    let mut t = tau_start;
    let mut up = C64::new(1.0, 0.0);
    let mut dn = C64::new(0.0, 0.0);
    for _ in 0..steps {
        let (a1, b1) = rhs(t, up, dn);
        let (a2, b2) = rhs(t + 0.5 * h, up + 0.5 * h * a1, dn + 0.5 * h * b1);
        let (a3, b3) = rhs(t + 0.5 * h, up + 0.5 * h * a2, dn + 0.5 * h * b2);
        let (a4, b4) = rhs(t + h, up + h * a3, dn + h * b3);
        up += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        dn += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        t += h;
    }
    up.norm_sqr()
}
