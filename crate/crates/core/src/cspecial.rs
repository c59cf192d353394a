//! Double-precision complex Gamma, digamma and ₂F₁ on `[0, 1)`, used by the
//! Monte Carlo kernels where arbitrary precision would be wasted.

use num_complex::Complex64 as C;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn near_nonpositive_integer(z: C) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Γ(z); infinite at the poles.
pub fn gamma(z: C) -> C {
    if near_nonpositive_integer(z) {
        return C::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = C::new(LANCZOS[0], 0.0);
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// 1/Γ(z), zero at the poles.
pub fn rgamma(z: C) -> C {
    if near_nonpositive_integer(z) {
        return C::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        return (PI * z).sin() * gamma(1.0 - z) / PI;
    }
    1.0 / gamma(z)
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: C, b: C) -> C {
    gamma(a) * gamma(b) * rgamma(a + b)
}

/// ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: C) -> C {
    if z.re < 0.5 {
        let t = (PI * z).tan();
        return digamma(1.0 - z) - PI / t;
    }
    let mut z = z;
    let mut acc = C::new(0.0, 0.0);
    while z.norm() < 10.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let z2 = 1.0 / (z * z);
    let series = z2 * (1.0 / 12.0 - z2 * (1.0 / 120.0 - z2 * (1.0 / 252.0 - z2 * (1.0 / 240.0 - z2 / 132.0))));
    acc + z.ln() - 0.5 / z - series
}

fn series(a: C, b: C, c: C, z: f64) -> C {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..4000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && n > 4 {
            break;
        }
    }
    sum
}

/// ₂F₁(a, b; c; z) for fixed parameters and real `z ∈ [0, 1)`, with the
/// `1 − z` connection coefficients precomputed.
#[derive(Clone, Debug)]
pub struct Hyp2F1 {
    a: C,
    b: C,
    c: C,
    m: C,
    /// Coefficients of the two solutions at z = 1, or the log-case prefactor.
    k1: C,
    k2: C,
    log_case: bool,
}

/// Below this |c − a − b| the logarithmic connection formula is used.
const LOG_CASE: f64 = 1e-9;

impl Hyp2F1 {
    pub fn new(a: C, b: C, c: C) -> Self {
        let m = c - a - b;
        if m.norm() < LOG_CASE {
            let k1 = gamma(a + b) * rgamma(a) * rgamma(b);
            return Self { a, b, c, m, k1, k2: C::new(0.0, 0.0), log_case: true };
        }
        let gc = gamma(c);
        let k1 = gc * gamma(m) * rgamma(c - a) * rgamma(c - b);
        let k2 = gc * gamma(-m) * rgamma(a) * rgamma(b);
        Self { a, b, c, m, k1, k2, log_case: false }
    }

    pub fn eval(&self, z: f64) -> C {
        let (a, b, c, m) = (self.a, self.b, self.c, self.m);
        if z <= 0.5 {
            return series(a, b, c, z);
        }
        let w = 1.0 - z;
        if self.log_case {
            // Σ (a)_n (b)_n/(n!)² [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln w] wⁿ
            let mut pa = digamma(a);
            let mut pb = digamma(b);
            let mut p1 = digamma(C::new(1.0, 0.0));
            let lw = w.ln();
            let mut coef = C::new(1.0, 0.0);
            let mut sum = coef * (2.0 * p1 - pa - pb - lw);
            for n in 0..4000 {
                let nf = n as f64;
                coef *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0)) * w;
                pa += 1.0 / (a + nf);
                pb += 1.0 / (b + nf);
                p1 += 1.0 / (nf + 1.0);
                let t = coef * (2.0 * p1 - pa - pb - lw);
                sum += t;
                if t.norm() <= 1e-17 * sum.norm() && n > 4 {
                    break;
                }
            }
            return self.k1 * sum;
        }
        let f1 = series(a, b, 1.0 - m, w);
        let f2 = series(c - a, c - b, m + 1.0, w);
        self.k1 * f1 + self.k2 * C::new(w, 0.0).powc(m) * f2
    }
}
