//! Double-double ("compensated") arithmetic for series summation.
//!
//! The Kummer series at purely imaginary arguments suffers catastrophic
//! cancellation: terms peak near `e^|z|` while the sum stays O(1). Running
//! the recurrence in double-double (~32 significant digits) keeps full f64
//! accuracy out to `|z| ~ 40`.

use num_complex::Complex64 as C64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, b: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, b.hi);
        let (s2, e2) = two_sum(self.lo, b.lo);
        let (s1, e1) = quick_two_sum(s1, e1 + s2);
        let (hi, lo) = quick_two_sum(s1, e1 + e2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    #[inline]
    pub fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul(Dd::from_f64(q1)));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul(Dd::from_f64(q2)));
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    #[inline]
    pub fn from_c64(z: C64) -> CDd {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    #[inline]
    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, b: CDd) -> CDd {
        CDd { re: self.re.add(b.re), im: self.im.add(b.im) }
    }

    #[inline]
    pub fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re.mul(b.re).sub(self.im.mul(b.im)),
            im: self.re.mul(b.im).add(self.im.mul(b.re)),
        }
    }

    #[inline]
    pub fn div(self, b: CDd) -> CDd {
        // z/w = z * conj(w) / |w|^2
        let den = b.re.mul(b.re).add(b.im.mul(b.im));
        let num = self.mul(CDd { re: b.re, im: b.im.neg() });
        CDd { re: num.re.div(den), im: num.im.div(den) }
    }

    #[inline]
    pub fn norm_f64(self) -> f64 {
        self.to_c64().norm()
    }
}
