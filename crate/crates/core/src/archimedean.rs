//! The real tetrahedral symbol for characters `|·|^J` on the six edges, as
//! four-term combinations of ₄F₃(1) values, and numerical W(D6) checks.

use rayon::prelude::*;

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};
use crate::factors::{gamma_r, l_r};
use crate::hypergeom::{pfq_at_one, HyperOptions};
use crate::lattice::{s4, symmetry_apply, EdgeAssignment, Generator};

/// Exponents on the blackboard edges 𝟙..𝟞 = 12, 31, 14, 34, 24, 23.
#[derive(Clone, Debug, PartialEq)]
pub struct RealParameters {
    pub j: [BigComplex; 6],
}

impl RealParameters {
    pub fn new(j: [BigComplex; 6]) -> Self {
        Self { j }
    }

    /// Comma-separated complex literals, e.g. `0.71i,0.17i,...`.
    pub fn parse(prec: u32, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Invalid(format!("expected 6 exponents, got {}", parts.len())));
        }
        let mut j = Vec::with_capacity(6);
        for p in parts {
            j.push(BigComplex::parse(prec, p)?);
        }
        Ok(Self { j: j.try_into().expect("six entries") })
    }

    pub fn zero(prec: u32) -> Self {
        Self { j: std::array::from_fn(|_| BigComplex::zero(prec)) }
    }

    pub fn prec(&self) -> u32 {
        self.j[0].prec()
    }

    pub fn is_unitary(&self) -> bool {
        self.j.iter().all(|x| x.re.is_zero())
    }

    /// Values on the i < j edges (12, 13, 14, 23, 24, 34).
    pub fn edges(&self) -> EdgeAssignment<BigComplex> {
        EdgeAssignment::from_blackboard(&self.j)
    }

    pub fn from_edges(f: &EdgeAssignment<BigComplex>) -> Self {
        Self { j: f.to_blackboard() }
    }

    /// `Σ c_k J_k` for a small integer coefficient vector.
    pub fn combination(&self, c: &[i64; 6]) -> BigComplex {
        let mut acc = BigComplex::zero(self.prec());
        for (ck, jk) in c.iter().zip(&self.j) {
            if *ck != 0 {
                acc = &acc + &jk.mul_i64(*ck);
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self { j: self.j.clone().map(|x| x.conj()) }
    }

    pub fn apply(&self, g: Generator) -> Result<Self> {
        Ok(Self::from_edges(&symmetry_apply(g, &self.edges())?))
    }
}

/// The value of `χ(i, j)` on the oriented edge from `i` to `j`.
fn chi(p: &EdgeAssignment<BigComplex>, i: u8, j: u8) -> BigComplex {
    p.get(i, j).expect("valid edge")
}

/// One table entry: vertex `i` and signs on `χ(i, ·)` for the other vertices
/// in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexWeight {
    pub vertex: u8,
    pub signs: [i8; 3],
}

impl VertexWeight {
    pub fn others(&self) -> [u8; 3] {
        let mut o = [0u8; 3];
        let mut k = 0;
        for v in 1..=4u8 {
            if v != self.vertex {
                o[k] = v;
                k += 1;
            }
        }
        o
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn inverted(&self) -> Self {
        Self { vertex: self.vertex, signs: self.signs.map(|s| -s) }
    }

    pub fn evaluate(&self, f: &EdgeAssignment<BigComplex>) -> BigComplex {
        let mut acc = BigComplex::zero(f.0[0].prec());
        for (s, o) in self.signs.iter().zip(self.others()) {
            let c = chi(f, self.vertex, o);
            acc = if *s > 0 { &acc + &c } else { &acc - &c };
        }
        acc
    }
}

const fn vw(vertex: u8, signs: [i8; 3]) -> VertexWeight {
    VertexWeight { vertex, signs }
}

/// The 4×4 table Σ*; its diagonal entries are the inverted (underlined) ones.
pub const SIGMA_STAR: [[VertexWeight; 4]; 4] = [
    [vw(1, [1, 1, -1]), vw(1, [-1, 1, -1]), vw(3, [-1, -1, -1]), vw(3, [-1, -1, 1])],
    [vw(2, [-1, -1, 1]), vw(2, [1, -1, 1]), vw(4, [-1, -1, 1]), vw(4, [-1, -1, -1])],
    [vw(2, [-1, -1, -1]), vw(2, [1, -1, -1]), vw(4, [-1, 1, 1]), vw(4, [-1, 1, -1])],
    [vw(1, [1, -1, -1]), vw(1, [-1, -1, -1]), vw(3, [1, -1, -1]), vw(3, [1, -1, 1])],
];

/// Underline mask of Σ*.
pub fn underlined(row: usize, col: usize) -> bool {
    row == col
}

/// Σ⁻ obtained by undoing the underlined inversions.
pub fn sigma_minus_table() -> [[VertexWeight; 4]; 4] {
    let mut t = SIGMA_STAR;
    for (r, row) in t.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            if underlined(r, c) {
                *e = e.inverted();
            }
        }
    }
    t
}

/// Exponent lists for Σ, Σ⁻, Σ*, Σᵢ* (row i inverted) and Σᵢ′* (column i inverted).
#[derive(Clone, Debug)]
pub struct SigmaSets {
    pub sigma: Vec<BigComplex>,
    pub minus: Vec<BigComplex>,
    pub star: Vec<BigComplex>,
    pub rows: [Vec<BigComplex>; 4],
    pub cols: [Vec<BigComplex>; 4],
}

pub fn sigma_sets(p: &RealParameters) -> SigmaSets {
    let f = p.edges();
    let mut sigma = Vec::with_capacity(32);
    for vertex in 1..=4u8 {
        for bits in 0..8u8 {
            let signs = [0, 1, 2].map(|k| if bits >> (2 - k) & 1 == 0 { 1 } else { -1 });
            sigma.push(vw(vertex, signs).evaluate(&f));
        }
    }
    let ev = |t: &[[VertexWeight; 4]; 4], pick: &dyn Fn(usize, usize) -> bool| -> Vec<BigComplex> {
        let mut out = Vec::with_capacity(16);
        for (r, row) in t.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                let w = if pick(r, c) { e.inverted() } else { *e };
                out.push(w.evaluate(&f));
            }
        }
        out
    };
    let minus = ev(&sigma_minus_table(), &|_, _| false);
    let star = ev(&SIGMA_STAR, &|_, _| false);
    let rows = std::array::from_fn(|i| ev(&SIGMA_STAR, &|r, _| r == i));
    let cols = std::array::from_fn(|i| ev(&SIGMA_STAR, &|_, c| c == i));
    SigmaSets { sigma, minus, star, rows, cols }
}

/// `L(½, S) = ∏_{e ∈ S} L_ℝ(½ + e)`.
pub fn l_half(set: &[BigComplex]) -> Result<BigComplex> {
    let prec = set.first().map_or(64, BigComplex::prec);
    let mut half = BigComplex::one(prec);
    half.re /= 2;
    let mut acc = BigComplex::one(prec);
    for e in set {
        acc = &acc * &l_r(&(&half + e))?;
    }
    Ok(acc)
}

/// Upper (`a`) and lower (`b`) parameters of the symbol's ₄F₃ dictionary.
pub fn dictionary(p: &RealParameters) -> ([BigComplex; 4], [BigComplex; 4]) {
    let prec = p.prec();
    let mut half = BigComplex::one(prec);
    half.re /= 2;
    let a = [
        [1, 1, -1, 0, 0, 0],
        [-1, 1, -1, 0, 0, 0],
        [0, 1, 0, -1, 0, 1],
        [0, 1, 0, 1, 0, 1],
    ]
    .map(|c| &p.combination(&c) + &half);
    let b = [[0, 2, 0, 0, 0, 0], [0, 1, -1, 0, -1, 1], [0, 1, -1, 0, 1, 1], [0; 6]].map(|c| p.combination(&c));
    (a, b)
}

#[derive(Clone, Debug)]
pub struct EvalOptions {
    /// Relative accuracy requested from each ₄F₃ evaluation.
    pub target: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { target: 1e-30 }
    }
}

impl EvalOptions {
    fn hyper(&self, prec: u32) -> HyperOptions {
        let floor = 2f64.powi(-(prec as i32));
        HyperOptions { target: Some(self.target.max(floor)), ..HyperOptions::default() }
    }
}

/// A value with an absolute error estimate.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: BigComplex,
    pub error: f64,
}

impl Estimate {
    pub fn relative_error(&self) -> f64 {
        let m = self.value.abs().to_f64();
        if m == 0.0 {
            self.error
        } else {
            self.error / m
        }
    }
}

fn is_integer(z: &BigComplex) -> bool {
    z.im.is_zero() && z.re.is_integer()
}

fn others(h: usize) -> [usize; 3] {
    let mut o = [0; 3];
    let mut k = 0;
    for j in 0..4 {
        if j != h {
            o[k] = j;
            k += 1;
        }
    }
    o
}

fn nonzero_gamma(u: &BigComplex, what: &str) -> Result<BigComplex> {
    let g = gamma_r(u)?;
    if g.is_zero() {
        return Err(Error::Pole(format!("{what}: γ_ℝ({}) = 0", u.to_decimal(12))));
    }
    Ok(g)
}

/// Sum `Σ_h sign · coef_h · ₄F₃(upper_h; lower_h; 1)` with error bookkeeping.
fn combine(terms: Vec<Result<(BigComplex, [BigComplex; 4], [BigComplex; 3])>>, sign: i64, opts: &HyperOptions) -> Result<Estimate> {
    let terms: Vec<_> = terms.into_iter().collect::<Result<_>>()?;
    let parts: Vec<Result<(BigComplex, f64)>> = terms
        .par_iter()
        .map(|(coef, up, lo)| {
            let f = pfq_at_one(up, lo, opts)?;
            let err = coef.abs().to_f64() * f.error;
            Ok((coef * &f.value, err))
        })
        .collect();
    let prec = terms[0].0.prec();
    let mut value = BigComplex::zero(prec);
    let mut error = 0.0;
    for part in parts {
        let (v, e) = part?;
        value = &value + &v;
        error += e;
    }
    let rounding = value.abs().to_f64() * 2f64.powi(-(prec as i32) + 8);
    Ok(Estimate { value: value.mul_i64(sign), error: error + rounding })
}

fn check_generic(v: &[BigComplex; 4], what: &str) -> Result<()> {
    for h in 0..4 {
        for j in others(h) {
            if is_integer(&(&v[j] - &v[h])) {
                return Err(Error::Degenerate(format!(
                    "{what}: parameters {h} and {j} differ by an integer (confluent case)"
                )));
            }
        }
    }
    Ok(())
}

/// `{Π}√L(½,Σ)` via the row expression:
/// `−Σ_h L(½, Σ_h*) / ∏_{j≠h} γ(b_j − b_h) · ₄F₃(1+b_h−a; 1+b_h−b_{j≠h}; 1)`.
pub fn symbol_real_a(p: &RealParameters, opts: &EvalOptions) -> Result<Estimate> {
    let (a, b) = dictionary(p);
    check_generic(&b, "lower dictionary")?;
    let sets = sigma_sets(p);
    let terms = (0..4)
        .map(|h| {
            let mut coef = l_half(&sets.rows[h])?;
            for j in others(h) {
                coef = &coef / &nonzero_gamma(&(&b[j] - &b[h]), "row expression")?;
            }
            let up = std::array::from_fn(|k| (&b[h] - &a[k]).add_i64(1));
            let o = others(h);
            let lo = std::array::from_fn(|k| (&b[h] - &b[o[k]]).add_i64(1));
            Ok((coef, up, lo))
        })
        .collect();
    combine(terms, -1, &opts.hyper(p.prec()))
}

/// The column expression:
/// `Σ_h L(½, Σ_h′*) / ∏_{j≠h} γ(a_h − a_j) · ₄F₃(1−a_h+b; 1−a_h+a_{j≠h}; 1)`.
pub fn symbol_real_b(p: &RealParameters, opts: &EvalOptions) -> Result<Estimate> {
    let (a, b) = dictionary(p);
    check_generic(&a, "upper dictionary")?;
    let sets = sigma_sets(p);
    let terms = (0..4)
        .map(|h| {
            let mut coef = l_half(&sets.cols[h])?;
            for j in others(h) {
                coef = &coef / &nonzero_gamma(&(&a[h] - &a[j]), "column expression")?;
            }
            let up = std::array::from_fn(|k| (&b[k] - &a[h]).add_i64(1));
            let o = others(h);
            let lo = std::array::from_fn(|k| (&a[o[k]] - &a[h]).add_i64(1));
            Ok((coef, up, lo))
        })
        .collect();
    combine(terms, 1, &opts.hyper(p.prec()))
}

/// The |x| ≤ 1 expression exactly as printed, including its leading minus:
/// `−Σ_h ∏′_j γ(a_j−b_h) / (γ(b_j−b_h) γ(a_j−b_j)) · ₄F₃(1+b_h−a; 1+b_h−b_{j≠h}; 1)`.
pub fn f_at_one_inner_printed(a: &[BigComplex; 4], b: &[BigComplex; 4], opts: &EvalOptions) -> Result<Estimate> {
    check_generic(b, "f(1) lower parameters")?;
    let prec = a[0].prec();
    let terms = (0..4)
        .map(|h| {
            let mut coef = BigComplex::one(prec);
            for j in 0..4 {
                coef = &coef * &gamma_r(&(&a[j] - &b[h]))?;
                coef = &coef / &nonzero_gamma(&(&a[j] - &b[j]), "f(1)")?;
                if j != h {
                    coef = &coef / &nonzero_gamma(&(&b[j] - &b[h]), "f(1)")?;
                }
            }
            let up = std::array::from_fn(|k| (&b[h] - &a[k]).add_i64(1));
            let o = others(h);
            let lo = std::array::from_fn(|k| (&b[h] - &b[o[k]]).add_i64(1));
            Ok((coef, up, lo))
        })
        .collect();
    combine(terms, -1, &opts.hyper(prec))
}

/// The |x| ≥ 1 expression at x = 1:
/// `Σ_h ∏′_j γ(a_h−b_j) / (γ(a_h−a_j) γ(a_j−b_j)) · ₄F₃(1−a_h+b; 1−a_h+a_{j≠h}; 1)`.
pub fn f_at_one_outer(a: &[BigComplex; 4], b: &[BigComplex; 4], opts: &EvalOptions) -> Result<Estimate> {
    check_generic(a, "f(1) upper parameters")?;
    let prec = a[0].prec();
    let terms = (0..4)
        .map(|h| {
            let mut coef = BigComplex::one(prec);
            for j in 0..4 {
                coef = &coef * &gamma_r(&(&a[h] - &b[j]))?;
                coef = &coef / &nonzero_gamma(&(&a[j] - &b[j]), "f(1)")?;
                if j != h {
                    coef = &coef / &nonzero_gamma(&(&a[h] - &a[j]), "f(1)")?;
                }
            }
            let up = std::array::from_fn(|k| (&b[k] - &a[h]).add_i64(1));
            let o = others(h);
            let lo = std::array::from_fn(|k| (&a[o[k]] - &a[h]).add_i64(1));
            Ok((coef, up, lo))
        })
        .collect();
    combine(terms, 1, &opts.hyper(prec))
}

/// f(1), the value of the edge integral.
///
/// The printed |x| ≤ 1 expression differs from both the |x| ≥ 1 expression and
/// the integral by a global sign; this returns the common value of the latter two,
/// computed from the |x| ≤ 1 expression with that sign removed.
pub fn f_at_one(a: &[BigComplex; 4], b: &[BigComplex; 4], opts: &EvalOptions) -> Result<Estimate> {
    let e = f_at_one_inner_printed(a, b, opts)?;
    Ok(Estimate { value: -&e.value, error: e.error })
}

/// Fixed direction used to move off confluent parameter sets.
pub const CONFLUENT_DIRECTION: [f64; 6] = [0.31, 0.17, 0.23, 0.41, 0.13, 0.37];

/// Base step for [`confluent_limit`].
pub const CONFLUENT_STEP: f64 = 1e-5;

/// The edge integral in closed form for the parameters `p`; confluent
/// dictionaries (for instance J = 0) go through [`confluent_limit`].
pub fn edge_integral_closed_form(p: &RealParameters, opts: &EvalOptions) -> Result<Estimate> {
    let (a, b) = dictionary(p);
    match f_at_one(&a, &b, opts) {
        Err(Error::Degenerate(_)) => {}
        other => return other,
    }
    confluent_limit(p, opts, CONFLUENT_STEP)
}

/// Limit of `f(1)` at `p` along `J + ε d`.
///
/// The symmetric averages `g(ε) = (f(J+εd) + f(J−εd))/2` are even in ε, so two
/// Richardson steps over `ε, 2ε, 4ε` remove the ε² term; the error estimate is
/// the gap between the two extrapolants. Each f(1) carries an O(ε⁻³)
/// cancellation, absorbed by 96 guard bits.
pub fn confluent_limit(p: &RealParameters, opts: &EvalOptions, eps: f64) -> Result<Estimate> {
    let prec = p.prec();
    let wp = prec + 96;
    let inner = EvalOptions { target: opts.target.min(1e-34) };
    let at = |step: f64| -> Result<Estimate> {
        let j = std::array::from_fn(|k| {
            let d = BigComplex::from_f64(wp, step * CONFLUENT_DIRECTION[k], 0.0);
            &p.j[k].with_prec(wp) + &d
        });
        let (a, b) = dictionary(&RealParameters { j });
        f_at_one(&a, &b, &inner)
    };
    let steps = [eps, -eps, 2.0 * eps, -2.0 * eps, 4.0 * eps, -4.0 * eps];
    let vals: Vec<Result<Estimate>> = steps.par_iter().map(|&s| at(s)).collect();
    let vals: Vec<Estimate> = vals.into_iter().collect::<Result<_>>()?;
    let avg = |k: usize| {
        let mut v = &vals[2 * k].value + &vals[2 * k + 1].value;
        v.re /= 2;
        v.im /= 2;
        v
    };
    let (g1, g2, g4) = (avg(0), avg(1), avg(2));
    let extrapolate = |fine: &BigComplex, coarse: &BigComplex| {
        let mut v = &fine.mul_i64(4) - coarse;
        v.re /= 3;
        v.im /= 3;
        v
    };
    let r1 = extrapolate(&g1, &g2);
    let r2 = extrapolate(&g2, &g4);
    let inner_err = vals.iter().map(|e| e.error).fold(0.0, f64::max);
    let error = (&r1 - &r2).abs().to_f64() + 2.0 * inner_err;
    Ok(Estimate { value: r1.with_prec(prec), error })
}

/// One line of the symmetry report.
#[derive(Clone, Debug)]
pub struct InvarianceEntry {
    pub generator: String,
    /// `|A(g·P)| / |A(P)| − 1`.
    pub deviation: f64,
}

/// Regge, tetrahedral and flip generators with printable names.
pub fn symmetry_generators() -> Vec<(String, Option<Generator>)> {
    let mut out = vec![("identity".to_string(), None)];
    for k in 1..=3u8 {
        out.push((format!("regge{k}"), Some(Generator::Regge(k))));
    }
    for s in s4() {
        out.push((format!("perm{}{}{}{}", s[0], s[1], s[2], s[3]), Some(Generator::TetraPerm(s))));
    }
    for e in 0..6 {
        let (i, j) = crate::lattice::EDGES[e];
        out.push((format!("flip{i}{j}"), Some(Generator::Flip(e))));
    }
    out
}

/// `|symbol_real_a|` before and after each generator.
pub fn weyl_invariance_report(p: &RealParameters, opts: &EvalOptions) -> Result<Vec<InvarianceEntry>> {
    let base = symbol_real_a(p, opts)?.value.abs();
    let gens = symmetry_generators();
    let results: Vec<Result<InvarianceEntry>> = gens
        .par_iter()
        .map(|(name, g)| {
            let q = match g {
                Some(g) => p.apply(*g)?,
                None => p.clone(),
            };
            let m = symbol_real_a(&q, opts)?.value.abs();
            let dev = rug::Float::with_val(64, &m / &base) - 1u32;
            Ok(InvarianceEntry { generator: name.clone(), deviation: dev.to_f64().abs() })
        })
        .collect();
    results.into_iter().collect()
}
