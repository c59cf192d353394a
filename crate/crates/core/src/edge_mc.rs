//! Monte Carlo estimate of the edge integral over ℝ³
//!
//! `I = ∫ ∏ χ_{ij}(·) |xyz(x−y)(y−z)(z−1)(1−x)|^{−1/2} dx dy dz`,
//!
//! where every factor is a power `|t|^{e − 1/2}`. The x and z integrals factor
//! once y is fixed, each being a three-point kernel `∫ ∏|t − q_k|^{f_k} dt`
//! with a closed form in ₂F₁ at real argument. The default estimator samples y
//! only and integrates x and z exactly; a plain three-dimensional importance
//! sampler is kept for comparison.

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::archimedean::RealParameters;
use crate::cspecial::{beta, Hyp2F1};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Sample y; integrate x and z in closed form.
    Fibered,
    /// Sample (x, y, z) from point-singularity-flattening densities.
    Flatten,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fibered" => Ok(Self::Fibered),
            "flatten" => Ok(Self::Flatten),
            _ => Err(Error::Invalid(format!("unknown strategy {s:?} (fibered, flatten)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub strategy: Strategy,
}

pub const MIN_SAMPLES: u64 = 10_000;
/// Samples per random stream; fixes the work split independently of threads.
pub const BLOCK: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct McResult {
    pub estimate: C,
    pub stderr: f64,
    pub samples: u64,
}

/// Exponents of `|t|` for the seven factors x, 1−x, x−y, y, z, z−1, y−z
/// (each including the `−1/2`).
#[derive(Clone, Copy, Debug)]
pub struct Exponents {
    pub x: C,
    pub one_x: C,
    pub x_y: C,
    pub y: C,
    pub z: C,
    pub z_one: C,
    pub y_z: C,
}

impl Exponents {
    pub fn new(p: &RealParameters) -> Self {
        let j: Vec<C> = p
            .j
            .iter()
            .map(|v| {
                let (re, im) = v.to_f64_pair();
                C::new(re, im)
            })
            .collect();
        // i < j edge values.
        let (j12, j13, j14, j23, j24, j34) = (j[0], -j[1], j[2], j[5], j[4], j[3]);
        let h = C::new(-0.5, 0.0);
        Self {
            x: h + j12 - j13 + j14,
            one_x: h + j12 + j13 - j14,
            x_y: h - j12 - j23 + j24,
            y: h - j14 - j24 + j34,
            z: h - j14 + j24 - j34,
            z_one: h - j13 + j23 + j34,
            y_z: h + j14 - j24 - j34,
        }
    }
}

fn rpow(t: f64, e: C) -> C {
    (e * t.abs().ln()).exp()
}

/// The integrand at `(x, y, z)`; errors on the singular locus.
pub fn edge_integrand(p: &RealParameters, x: f64, y: f64, z: f64) -> Result<C> {
    integrand(&Exponents::new(p), x, y, z)
}

fn integrand(e: &Exponents, x: f64, y: f64, z: f64) -> Result<C> {
    let f = [x, 1.0 - x, x - y, y, z, z - 1.0, y - z];
    if f.iter().any(|t| *t == 0.0 || !t.is_finite()) {
        return Err(Error::Degenerate(format!("({x}, {y}, {z}) lies on the singular locus")));
    }
    let es = [e.x, e.one_x, e.x_y, e.y, e.z, e.z_one, e.y_z];
    let mut log = C::new(0.0, 0.0);
    for (t, ek) in f.iter().zip(es) {
        log += ek * t.abs().ln();
    }
    Ok(log.exp())
}

/// `∫_ℝ ∏_k |t − q_k|^{f_k} dt` for sorted points `q₁ < q₂ < q₃`.
#[derive(Clone, Debug)]
struct Kernel3 {
    f: [C; 3],
    ft: C,
    b12: C,
    b23: C,
    b_hi: C,
    b_lo: C,
    h12: Hyp2F1,
    h23: Hyp2F1,
    h_hi: Hyp2F1,
    h_lo: Hyp2F1,
}

impl Kernel3 {
    fn new(f: [C; 3]) -> Self {
        let [f1, f2, f3] = f;
        let ft = f1 + f2 + f3;
        let one = C::new(1.0, 0.0);
        Self {
            f,
            ft,
            b12: beta(f1 + one, f2 + one),
            b23: beta(f3 + one, f2 + one),
            b_hi: beta(-ft - one, f3 + one),
            b_lo: beta(-ft - one, f1 + one),
            h12: Hyp2F1::new(-f3, f1 + one, f1 + f2 + 2.0),
            h23: Hyp2F1::new(-f1, f3 + one, f2 + f3 + 2.0),
            h_hi: Hyp2F1::new(-f2, -ft - one, -ft + f3),
            h_lo: Hyp2F1::new(-f2, -ft - one, -ft + f1),
        }
    }

    fn eval(&self, q: [f64; 3]) -> C {
        let [f1, f2, f3] = self.f;
        let d = q[2] - q[0];
        let l12 = q[1] - q[0];
        let l23 = q[2] - q[1];
        let t12 = rpow(l12, f1 + f2 + 1.0) * rpow(d, f3) * self.b12 * self.h12.eval(l12 / d);
        let t23 = rpow(l23, f2 + f3 + 1.0) * rpow(d, f1) * self.b23 * self.h23.eval(l23 / d);
        let outer = rpow(d, self.ft + 1.0);
        let t_hi = outer * self.b_hi * self.h_hi.eval(l12 / d);
        let t_lo = outer * self.b_lo * self.h_lo.eval(l23 / d);
        t12 + t23 + t_hi + t_lo
    }
}

/// Kernel at the points {0, 1, y} (or {0, y, 1}) for the three orderings of y.
#[derive(Clone, Debug)]
struct MovingKernel {
    below: Kernel3,
    between: Kernel3,
    above: Kernel3,
}

impl MovingKernel {
    /// `e0`, `e1`, `ey`: exponents at the points 0, 1 and y.
    fn new(e0: C, e1: C, ey: C) -> Self {
        Self {
            below: Kernel3::new([ey, e0, e1]),
            between: Kernel3::new([e0, ey, e1]),
            above: Kernel3::new([e0, e1, ey]),
        }
    }

    fn eval(&self, y: f64) -> C {
        if y < 0.0 {
            self.below.eval([y, 0.0, 1.0])
        } else if y < 1.0 {
            self.between.eval([0.0, y, 1.0])
        } else {
            self.above.eval([0.0, 1.0, y])
        }
    }
}

/// The y-integrand `|y|^{e_y} M(y) K(y)` with x and z integrated out.
pub struct Fiber {
    ey: C,
    m: MovingKernel,
    k: MovingKernel,
}

impl Fiber {
    pub fn new(p: &RealParameters) -> Self {
        let e = Exponents::new(p);
        Self { ey: e.y, m: MovingKernel::new(e.x, e.one_x, e.x_y), k: MovingKernel::new(e.z, e.z_one, e.y_z) }
    }

    pub fn eval(&self, y: f64) -> C {
        rpow(y, self.ey) * self.m.eval(y) * self.k.eval(y)
    }
}

/// Density of `c + σ·s·tan²θ` (θ uniform on (0, π/2), s = ±1).
fn tan2_density(u: f64, sigma: f64) -> f64 {
    let a = (u / sigma).abs();
    1.0 / (a.sqrt() * (1.0 + a) * 2.0 * PI * sigma)
}

fn tan2_draw<R: Rng>(rng: &mut R, center: f64, sigma: f64) -> f64 {
    let t = (rng.gen::<f64>() * PI / 2.0).tan();
    let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    center + s * sigma * t * t
}

/// Gamma(3, scale 2) via a sum of exponentials.
fn gamma3_draw<R: Rng>(rng: &mut R) -> f64 {
    let mut t = 0.0;
    for _ in 0..3 {
        t -= (1.0 - rng.gen::<f64>()).ln();
    }
    2.0 * t
}

fn gamma3_density(t: f64) -> f64 {
    t * t * (-t / 2.0).exp() / 16.0
}

/// Density of `|y − c| = e^{−t}` with a random sign, near the point c.
fn log_density(d: f64) -> f64 {
    let a = d.abs();
    if a == 0.0 || a >= 1.0 {
        return 0.0;
    }
    gamma3_density(-a.ln()) / a / 2.0
}

/// Density of `|y| = e^{t}` with a random sign, for the tail.
fn tail_density(y: f64) -> f64 {
    let a = y.abs();
    if a <= 1.0 {
        return 0.0;
    }
    gamma3_density(a.ln()) / a / 2.0
}

fn y_density(y: f64) -> f64 {
    (tan2_density(y, 1.0) + tan2_density(y - 1.0, 1.0) + log_density(y) + log_density(y - 1.0) + tail_density(y)) / 5.0
}

fn y_draw<R: Rng>(rng: &mut R) -> f64 {
    let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    match rng.gen_range(0..5) {
        0 => tan2_draw(rng, 0.0, 1.0),
        1 => tan2_draw(rng, 1.0, 1.0),
        2 => s * (-gamma3_draw(rng)).exp(),
        3 => 1.0 + s * (-gamma3_draw(rng)).exp(),
        _ => s * gamma3_draw(rng).exp(),
    }
}

/// Equal mixture of tan² densities at the given centers with one scale.
fn mix_draw<R: Rng>(rng: &mut R, centers: &[f64], sigma: f64) -> f64 {
    let c = centers[rng.gen_range(0..centers.len())];
    tan2_draw(rng, c, sigma)
}

fn mix_density(u: f64, centers: &[f64], sigma: f64) -> f64 {
    centers.iter().map(|c| tan2_density(u - c, sigma)).sum::<f64>() / centers.len() as f64
}

fn flatten_sample<R: Rng>(rng: &mut R, e: &Exponents) -> C {
    let x = mix_draw(rng, &[0.0, 1.0], 1.0);
    let sx = x.abs();
    let y = mix_draw(rng, &[0.0, x], sx);
    let sy = y.abs().min((1.0 - y).abs());
    let z = mix_draw(rng, &[0.0, y, 1.0], sy);
    let q = mix_density(x, &[0.0, 1.0], 1.0) * mix_density(y, &[0.0, x], sx) * mix_density(z, &[0.0, y, 1.0], sy);
    match integrand(e, x, y, z) {
        Ok(v) if q > 0.0 && q.is_finite() => v / q,
        _ => C::new(0.0, 0.0),
    }
}

#[derive(Clone, Copy, Default)]
struct Moments {
    sum: C,
    sum_sq: f64,
    n: u64,
}

/// Stream for one block: the seed selects the key, the block index the stream.
fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Estimate of the edge integral with its standard error.
pub fn edge_integral_mc(p: &RealParameters, cfg: &McConfig) -> Result<McResult> {
    if cfg.samples < MIN_SAMPLES {
        return Err(Error::Invalid(format!("at least {MIN_SAMPLES} samples required, got {}", cfg.samples)));
    }
    let blocks = cfg.samples.div_ceil(BLOCK);
    let fiber = Fiber::new(p);
    let exps = Exponents::new(p);
    let parts: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK.min(cfg.samples - b * BLOCK);
            let mut rng = block_rng(cfg.seed, b);
            let mut m = Moments::default();
            for _ in 0..n {
                let w = match cfg.strategy {
                    Strategy::Fibered => {
                        let y = y_draw(&mut rng);
                        let q = y_density(y);
                        if y == 0.0 || y == 1.0 || q == 0.0 {
                            C::new(0.0, 0.0)
                        } else {
                            fiber.eval(y) / q
                        }
                    }
                    Strategy::Flatten => flatten_sample(&mut rng, &exps),
                };
                if w.is_finite() {
                    m.sum += w;
                    m.sum_sq += w.norm_sqr();
                }
                m.n += 1;
            }
            m
        })
        .collect();
    let mut total = Moments::default();
    for m in parts {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
        total.n += m.n;
    }
    let n = total.n as f64;
    let mean = total.sum / n;
    let var = ((total.sum_sq - n * mean.norm_sqr()) / (n - 1.0)).max(0.0);
    Ok(McResult { estimate: mean, stderr: (var / n).sqrt(), samples: total.n })
}
