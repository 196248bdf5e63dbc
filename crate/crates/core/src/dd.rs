//! Double-double arithmetic (about 32 significant digits).
//!
//! Only what the alternating Mittag-Leffler series needs: the four basic
//! operations, `exp`, `ln` and a log-gamma good to full double-double
//! precision for positive arguments.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::LazyLock;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    fn mul_pow2(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Dd::new(k)).mul_pow2(-10);
        // e^r - 1 by Taylor; |r| < 4e-4 so 10 terms reach 1e-36.
        let mut term = r;
        let mut sum = r;
        for n in 2..=10 {
            term = term * r / Dd::new(n as f64);
            sum = sum + term;
        }
        // (e^r - 1) -> (e^{2r} - 1), ten times.
        for _ in 0..10 {
            sum = sum * Dd::new(2.0) + sum * sum;
        }
        (sum + Dd::ONE).mul_pow2(k as i32)
    }

    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let x0 = Dd::new(self.hi.ln());
        // One Newton step on exp(x) = a doubles the ~16 correct digits.
        x0 + self * (-x0).exp() - Dd::ONE
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// B_{2n} / (2n (2n-1)) for n = 1..=15.
static STIRLING: LazyLock<[Dd; 15]> = LazyLock::new(|| {
    const B: [(f64, f64); 15] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
        (8553103.0, 6.0),
        (-23749461029.0, 870.0),
        (8615841276005.0, 14322.0),
    ];
    let mut out = [Dd::ZERO; 15];
    for (i, &(num, den)) in B.iter().enumerate() {
        let n = (i + 1) as f64;
        out[i] = Dd::new(num) / (Dd::new(den) * Dd::new(2.0 * n * (2.0 * n - 1.0)));
    }
    out
});

static HALF_LN_2PI: LazyLock<Dd> =
    LazyLock::new(|| Dd { hi: PI.hi * 2.0, lo: PI.lo * 2.0 }.ln().mul_pow2(-1));

const STIRLING_MIN: f64 = 40.0;

/// ln Γ(x) for x > 0 in double-double.
pub(crate) fn ln_gamma(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let mut shift = Dd::ONE;
    let mut y = x;
    while y.hi < STIRLING_MIN {
        shift = shift * y;
        y = y + Dd::ONE;
    }
    let w = Dd::ONE / y;
    let w2 = w * w;
    let mut series = STIRLING[14];
    for c in STIRLING[..14].iter().rev() {
        series = series * w2 + *c;
    }
    let series = series * w;
    let lg = (y - Dd::new(0.5)) * y.ln() - y + *HALF_LN_2PI + series;
    if shift.hi == 1.0 && shift.lo == 0.0 {
        lg
    } else {
        lg - shift.ln()
    }
}
