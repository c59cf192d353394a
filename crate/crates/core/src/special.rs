//! Complex Gamma function at arbitrary precision.
//!
//! Stirling series for `ln Γ` after an upward shift, with reflection for
//! `Re z < 1/2`.

use std::sync::Mutex;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Even Bernoulli numbers `B_2, B_4, ..., B_{2k}` (index 0 holds `B_2`).
fn bernoulli_even(k: usize) -> Vec<Rational> {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if cache.len() < k {
        // Akiyama–Tanigawa gives B_n with B_1 = +1/2; only even indices are kept.
        let n_max = 2 * k;
        let mut a: Vec<Rational> = Vec::with_capacity(n_max + 1);
        let mut all = Vec::with_capacity(n_max + 1);
        for m in 0..=n_max {
            a.push(Rational::from((1, m as u32 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * Integer::from(j as u32);
            }
            all.push(a[0].clone());
        }
        *cache = (1..=k).map(|i| all[2 * i].clone()).collect();
    }
    cache[..k].to_vec()
}

fn is_nonpositive_integer(z: &BigComplex) -> bool {
    z.im.is_zero() && z.re.is_integer() && (z.re.is_zero() || z.re.is_sign_negative())
}

/// `ln Γ(z)` via Stirling for `|z|` large; caller guarantees `Re z` is large.
fn ln_gamma_stirling(z: &BigComplex, wp: u32) -> Result<BigComplex> {
    let half = Float::with_val(wp, 0.5);
    let ln_z = z.ln()?;
    let ln_2pi = {
        let mut t = Float::with_val(wp, Constant::Pi);
        t *= 2;
        t.ln()
    };
    let mut acc = &z.add_real(&Float::with_val(wp, -&half)) * &ln_z;
    acc = &acc - z;
    acc.re += Float::with_val(wp, &ln_2pi / 2);

    let z_inv = z.recip();
    let z_inv2 = z_inv.square();
    let mut zpow = z_inv.clone();
    let eps = Float::with_val(wp, 1u32) >> wp;
    let mut k = 1usize;
    let mut bern = bernoulli_even(64);
    loop {
        if k > bern.len() {
            bern = bernoulli_even(bern.len() * 2);
        }
        let b = &bern[k - 1];
        let denom = Integer::from(2 * k as u64) * Integer::from(2 * k as u64 - 1);
        let coef = Float::with_val(wp, b) / Float::with_val(wp, &denom);
        let term = zpow.mul_real(&coef);
        let small = term.abs() <= eps;
        acc += &term;
        if small {
            return Ok(acc);
        }
        if k > 4 * wp as usize {
            return Err(Error::Convergence("Stirling series did not converge".into()));
        }
        zpow = &zpow * &z_inv2;
        k += 1;
    }
}

fn gamma_right_half(z: &BigComplex, wp: u32) -> Result<BigComplex> {
    let target = 0.12 * f64::from(wp) + 12.0;
    let mut shifted = z.clone();
    let mut prod = BigComplex::one(wp);
    while shifted.abs().to_f64() < target || shifted.re.to_f64() < target * 0.5 {
        prod = &prod * &shifted;
        shifted = shifted.add_i64(1);
    }
    let lg = ln_gamma_stirling(&shifted, wp)?;
    Ok(&lg.exp() / &prod)
}

/// Γ(z) at the precision of `z`. Poles at non-positive integers are errors.
pub fn gamma(z: &BigComplex) -> Result<BigComplex> {
    let prec = z.prec();
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma pole at {}", z.to_decimal(20))));
    }
    let mag = z.abs().to_f64().max(1.0);
    let wp = prec + 32 + 2 * (mag.log2().ceil() as u32) + (mag.ln() * mag).log2().max(0.0).ceil() as u32;
    let zw = z.with_prec(wp);
    let half = Float::with_val(wp, 0.5);
    let value = if zw.re < half {
        // Γ(z) = π / (sin(πz) Γ(1-z))
        let pi = Float::with_val(wp, Constant::Pi);
        let one_minus = (-&zw).add_i64(1);
        let g = gamma_right_half(&one_minus, wp)?;
        let s = zw.mul_real(&pi).sin();
        let den = &s * &g;
        if den.is_zero() {
            return Err(Error::Pole(format!("Gamma pole near {}", z.to_decimal(20))));
        }
        &BigComplex::from_real(pi) / &den
    } else {
        gamma_right_half(&zw, wp)?
    };
    Ok(value.with_prec(prec))
}

/// Real Γ(x) for convenience in tests and normalizers.
pub fn gamma_real(x: &Float) -> Result<Float> {
    Ok(gamma(&BigComplex::from_real(x.clone()))?.re)
}
