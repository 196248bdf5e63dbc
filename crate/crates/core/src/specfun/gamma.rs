use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
// published coefficients, kept digit for digit
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest x with Γ(x) finite in f64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x+1) form).
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Γ(x) for x > 0 without argument checks; x must be below [`GAMMA_MAX_ARG`].
pub(crate) fn gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        return PI / ((PI * x).sin() * gamma_pos(1.0 - x));
    }
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        for k in 2..(x as u32) {
            f *= k as f64;
        }
        return f;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let sum = lanczos_sum(xm);
    // Split the power to delay overflow near the top of the range.
    let p = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * sum
}

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("gamma_fn", format!("x = {x} must be positive")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow { func: "gamma_fn" });
    }
    Ok(gamma_pos(x))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    if x < 15.0 {
        return gamma_pos(x).ln();
    }
    // Stirling with five correction terms, exact to f64 for x >= 15.
    let w = 1.0 / (x * x);
    let corr = (1.0 / 12.0
        + w * (-1.0 / 360.0 + w * (1.0 / 1260.0 + w * (-1.0 / 1680.0 + w * (1.0 / 1188.0)))))
        / x;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + corr
}

/// sin(πx) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor(); // r in [0, 2)
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// 1/Γ(x) on the whole real line (zero at the poles 0, -1, -2, ...).
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        if x < GAMMA_MAX_ARG {
            1.0 / gamma_pos(x)
        } else {
            (-ln_gamma(x)).exp()
        }
    } else if x == x.floor() {
        0.0
    } else {
        // 1/Γ(x) = Γ(1-x) sin(πx) / π
        let s = sin_pi(x);
        let y = 1.0 - x;
        if y < GAMMA_MAX_ARG {
            gamma_pos(y) * s / PI
        } else {
            s.signum() * (ln_gamma(y) + s.abs().ln() - PI.ln()).exp()
        }
    }
}

/// Complete beta B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain("beta_fn", format!("a = {a}, b = {b} must be positive")));
    }
    if a + b < GAMMA_MAX_ARG {
        Ok(gamma_pos(a) * gamma_pos(b) / gamma_pos(a + b))
    } else {
        Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
    }
}
