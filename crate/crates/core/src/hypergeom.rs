//! Balanced-type `q+1 F q` series at unit argument.
//!
//! Partial sums are taken at `N₀·2^k`; the tail behaves like a series in
//! `N^{-s-j}` with `s = Σb − Σa`, so a generalized Richardson table removes
//! one exponent per level. The returned error estimate is the difference
//! between the top diagonal entry and the same extrapolation started from
//! `2N₀`, which is the doubling-N consistency check.

use crate::bigcomplex::{two_pow, BigComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HyperOptions {
    /// Relative accuracy goal; defaults to the working precision.
    pub target: Option<f64>,
    /// First partial-sum length.
    pub n0: usize,
    /// Richardson depth limit (partial sums up to `n0 · 2^max_level`).
    pub max_level: usize,
}

impl Default for HyperOptions {
    fn default() -> Self {
        Self { target: None, n0: 8, max_level: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct HyperValue {
    pub value: BigComplex,
    /// Estimated absolute error; zero for terminating series.
    pub error: f64,
    /// Number of series terms summed.
    pub terms: usize,
}

impl HyperValue {
    pub fn relative_error(&self) -> f64 {
        let m = self.value.abs().to_f64();
        if m == 0.0 {
            self.error
        } else {
            self.error / m
        }
    }
}

fn nonpositive_integer(z: &BigComplex) -> Option<u64> {
    if z.im.is_zero() && z.re.is_integer() && z.re <= 0 {
        z.re.to_integer().and_then(|n| (-n).to_u64())
    } else {
        None
    }
}

/// `₄F₃(a; b; 1)` at the precision of the inputs.
pub fn pfq43_at_one(a: &[BigComplex; 4], b: &[BigComplex; 3]) -> Result<HyperValue> {
    pfq_at_one(a, b, &HyperOptions::default())
}

/// `_{q+1}F_q(a; b; 1)` with `a.len() == b.len() + 1`.
pub fn pfq_at_one(a: &[BigComplex], b: &[BigComplex], opts: &HyperOptions) -> Result<HyperValue> {
    if a.len() != b.len() + 1 {
        return Err(Error::Invalid(format!(
            "need one more upper than lower parameter, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let prec = a.iter().chain(b).map(BigComplex::prec).max().unwrap_or(64);
    if let Some(bad) = b.iter().find(|x| nonpositive_integer(x).is_some()) {
        return Err(Error::Degenerate(format!("lower parameter {} is a nonpositive integer", bad.to_decimal(10))));
    }
    let wp = prec + 32;
    let a: Vec<BigComplex> = a.iter().map(|x| x.with_prec(wp)).collect();
    let b: Vec<BigComplex> = b.iter().map(|x| x.with_prec(wp)).collect();

    if let Some(m) = a.iter().filter_map(nonpositive_integer).min() {
        let (value, terms) = partial_sum(&a, &b, &BigComplex::one(wp), 0, m as usize + 1, BigComplex::zero(wp));
        return Ok(HyperValue { value: value.0.with_prec(prec), error: 0.0, terms });
    }

    let mut s = BigComplex::zero(wp);
    for x in &b {
        s = &s + x;
    }
    for x in &a {
        s = &s - x;
    }
    if s.re <= 0 {
        return Err(Error::Convergence(format!(
            "series diverges at 1: Re(Σb − Σa) = {} ≤ 0",
            s.re.to_f64()
        )));
    }
    let target = opts.target.unwrap_or_else(|| 2f64.powi(-(prec as i32)).max(f64::MIN_POSITIVE));

    let mut row: Vec<BigComplex> = Vec::new();
    let mut term = BigComplex::one(wp);
    let mut sum = BigComplex::zero(wp);
    let mut n = 0usize;
    let mut best: Option<(BigComplex, f64)> = None;
    let mut calm = 0;
    for k in 0..=opts.max_level {
        let upto = opts.n0 << k;
        let ((sm, tm), _) = partial_sum(&a, &b, &term, n, upto, sum);
        sum = sm;
        term = tm;
        n = upto;
        // New row of the Richardson table.
        let mut new_row = vec![sum.clone()];
        for j in 1..=k {
            let f = two_pow(&s.add_i64(j as i64 - 1));
            let num = &(&f * &new_row[j - 1]) - &row[j - 1];
            new_row.push(&num / &f.add_i64(-1));
        }
        if k >= 1 {
            let top = new_row[k].clone();
            let err = (&top - &row[k - 1]).abs().to_f64();
            let mag = top.abs().to_f64().max(f64::MIN_POSITIVE);
            let improving = best.as_ref().map_or(true, |(_, e)| err <= *e);
            if improving {
                best = Some((top, err));
            }
            if err <= target * mag {
                calm += 1;
                if calm >= 2 {
                    break;
                }
            }
        }
        row = new_row;
    }
    let (value, err) = best.expect("at least two levels");
    let mag = value.abs().to_f64();
    if !err.is_finite() || err > 1e-6 * mag.max(1e-300) {
        return Err(Error::Convergence(format!(
            "extrapolation stalled with relative error {:.2e} after {n} terms",
            err / mag
        )));
    }
    Ok(HyperValue { value: value.with_prec(prec), error: err, terms: n })
}

/// Continue summing from term index `from` (with current term `t_from`) up to `upto`.
fn partial_sum(
    a: &[BigComplex],
    b: &[BigComplex],
    t_from: &BigComplex,
    from: usize,
    upto: usize,
    sum: BigComplex,
) -> ((BigComplex, BigComplex), usize) {
    let mut t = t_from.clone();
    let mut s = sum;
    for n in from..upto {
        s = &s + &t;
        let nn = n as i64;
        let mut num = a[0].add_i64(nn);
        for x in &a[1..] {
            num = &num * &x.add_i64(nn);
        }
        let mut den = BigComplex::from_i64(t.prec(), nn + 1);
        for x in b {
            den = &den * &x.add_i64(nn);
        }
        t = &(&t * &num) / &den;
        if t.is_zero() {
            // Terminating series: later terms vanish.
            return ((s, t), n + 1);
        }
    }
    ((s, t), upto)
}
