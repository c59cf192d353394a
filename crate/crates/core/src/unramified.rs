//! Exact evaluation of both sides of the unramified vertex duality:
//! the Bruhat–Tits tree sum in closed form and the Weyl-character trace on
//! the pure-spinor cone, plus the residue identity and the normalized symbol.

use std::sync::OnceLock;

use rug::Rational;

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};
use crate::lattice::{
    doubled_weight_to_edges, edges_to_doubled_weight, enumerate_weyl, positive_roots, spin_weights,
    EDGES, RHO, VARPI6_DOUBLED,
};
use crate::scalar::Scalar;

/// Unramified data: `x[k] = χ_e(ϖ)` on the i < j edges and `v = q^{-1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnramifiedPoint<T> {
    pub x: [T; 6],
    pub v: T,
}

pub type ExactPoint = UnramifiedPoint<Rational>;

/// Powers `x_k^e` for |e| ≤ `MAX_EXP`, built once per point.
struct PowerTable<T> {
    pow: Vec<Vec<T>>,
}

const MAX_EXP: i32 = 24;

impl<T: Scalar> PowerTable<T> {
    fn new(x: &[T; 6]) -> Result<Self> {
        let mut pow = Vec::with_capacity(6);
        for xi in x {
            let inv = xi.inv().ok_or_else(|| Error::Degenerate("edge value is zero".into()))?;
            let mut row = vec![xi.one_like(); (2 * MAX_EXP + 1) as usize];
            for e in 1..=MAX_EXP {
                let up = row[(MAX_EXP + e - 1) as usize].mul(xi);
                let down = row[(MAX_EXP - e + 1) as usize].mul(&inv);
                row[(MAX_EXP + e) as usize] = up;
                row[(MAX_EXP - e) as usize] = down;
            }
            pow.push(row);
        }
        Ok(Self { pow })
    }

    fn monomial(&self, e: &[i32; 6]) -> T {
        let mut acc = self.pow[0][(MAX_EXP + e[0]) as usize].clone();
        for k in 1..6 {
            if e[k] != 0 {
                acc = acc.mul(&self.pow[k][(MAX_EXP + e[k]) as usize]);
            }
        }
        acc
    }
}

impl<T: Scalar> UnramifiedPoint<T> {
    pub fn new(x: [T; 6], v: T) -> Result<Self> {
        if x.iter().any(|t| t.is_zero()) {
            return Err(Error::Degenerate("edge values must be nonzero".into()));
        }
        if v.is_zero() {
            return Err(Error::Degenerate("v must be nonzero".into()));
        }
        Ok(Self { x, v })
    }

    /// `q = v^{-2}`.
    pub fn q(&self) -> T {
        self.v.mul(&self.v).inv().expect("v nonzero")
    }

    /// `∏ x_e^{e}` over the six edges.
    pub fn monomial(&self, e: &[i32; 6]) -> T {
        let mut acc = self.v.one_like();
        for k in 0..6 {
            if e[k] != 0 {
                acc = acc.mul(&self.x[k].powi(i64::from(e[k])).expect("nonzero edge"));
            }
        }
        acc
    }

    /// Value of `Frob^μ` for a doubled λ-weight μ in the spin lattice.
    pub fn weight(&self, m: &[i32; 6]) -> Result<T> {
        let e = doubled_weight_to_edges(m)
            .ok_or_else(|| Error::Invalid(format!("weight {m:?}/2 is not integral on edges")))?;
        Ok(self.monomial(&e))
    }
}

fn pole(msg: String) -> Error {
    Error::Pole(msg)
}

/// Spherical function `f_x(n)` on the (q+1)-regular tree, `f_x(0) = 1`.
pub fn spherical_term<T: Scalar>(x: &T, v: &T, n: u32) -> Result<T> {
    let q = v.mul(v).inv().ok_or_else(|| Error::Degenerate("v must be nonzero".into()))?;
    let (a, b) = spherical_coefficients(x, &q)?;
    let xi = x.inv().expect("checked");
    let t1 = a.mul(&v.mul(x).powi(i64::from(n)).expect("nonzero"));
    let t2 = b.mul(&v.mul(&xi).powi(i64::from(n)).expect("nonzero"));
    Ok(t1.add(&t2))
}

/// Coefficients `A = (qx − x⁻¹)/((1+q)(x − x⁻¹))`, `B = (x − q x⁻¹)/((1+q)(x − x⁻¹))`.
fn spherical_coefficients<T: Scalar>(x: &T, q: &T) -> Result<(T, T)> {
    let xi = x.inv().ok_or_else(|| Error::Degenerate("x = 0".into()))?;
    let diff = x.sub(&xi);
    if diff.is_zero() {
        return Err(Error::Degenerate("x^2 = 1 in the spherical function".into()));
    }
    let one = x.one_like();
    let den = one.add(q).mul(&diff);
    let den_inv = den.inv().ok_or_else(|| Error::Degenerate("q = -1".into()))?;
    let a = q.mul(x).sub(&xi).mul(&den_inv);
    let b = x.sub(&q.mul(&xi)).mul(&den_inv);
    Ok((a, b))
}

/// Path variables a..e used by each edge, per tree pattern (bitmask over abcde).
const CLASSES: [[u8; 6]; 3] = {
    const AB: u8 = 0b11000;
    const ACD: u8 = 0b10110;
    const ACE: u8 = 0b10101;
    const BCD: u8 = 0b01110;
    const BCE: u8 = 0b01101;
    const DE: u8 = 0b00011;
    // Edge order 12, 13, 14, 23, 24, 34.
    [
        [AB, ACD, ACE, BCD, BCE, DE],
        [ACD, AB, ACE, BCD, DE, BCE],
        [ACE, ACD, AB, DE, BCE, BCD],
    ]
};

const VAR_A: usize = 0;
const VAR_C: usize = 2;

fn var_bit(v: usize) -> u8 {
    1 << (4 - v)
}

/// Volume constant `C_abcde` (first matching row), given which variables are positive.
fn volume_constant<T: Scalar>(pos: [bool; 5], qi: &T) -> T {
    let one = qi.one_like();
    let p1 = one.add(qi);
    let m1 = one.sub(qi);
    let [a, b, c, d, e] = pos;
    if !pos.iter().any(|&t| t) {
        return one;
    }
    if pos.iter().all(|&t| t) {
        return p1.mul(&m1).mul(&m1);
    }
    if !c && a && b && d && e {
        let m2 = one.sub(&qi.add(qi));
        return p1.mul(&m1).mul(&m2);
    }
    if !(a && b) && (d && e) && (a || b || c) {
        return p1.mul(&m1);
    }
    if (a && b) && !(d && e) && (c || d || e) {
        return p1.mul(&m1);
    }
    p1
}

/// Per (class, choice) data: product of spherical coefficients and the five ratios.
fn tree_terms<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<Vec<(usize, u32, T, [T; 5])>> {
    let q = p.q();
    let one = q.one_like();
    let mut coefs = Vec::with_capacity(6);
    for x in &p.x {
        let (a, b) = spherical_coefficients(x, &q)?;
        let xi = x.inv().expect("nonzero");
        coefs.push([(a, p.v.mul(x)), (b, p.v.mul(&xi))]);
    }
    let mut out = Vec::with_capacity(3 * 64);
    for (cls, edges) in CLASSES.iter().enumerate() {
        for choice in 0u32..64 {
            let mut c = one.clone();
            let mut ratio = [q.clone(), q.clone(), q.clone(), q.clone(), q.clone()];
            for k in 0..6 {
                let pick = (choice >> (5 - k) & 1) as usize;
                let (cf, r) = &coefs[k][pick];
                c = c.mul(cf);
                for (var, rv) in ratio.iter_mut().enumerate() {
                    if edges[k] & var_bit(var) != 0 {
                        *rv = rv.mul(r);
                    }
                }
            }
            out.push((cls, choice, c, ratio));
        }
    }
    Ok(out)
}

fn geometric<T: Scalar>(r: &T) -> Result<T> {
    let den = r.one_like().sub(r);
    let inv = den
        .inv()
        .ok_or_else(|| pole(format!("geometric ratio equals 1 in the tree sum ({r:?})")))?;
    Ok(r.mul(&inv))
}

fn pattern_sum<T: Scalar>(g: &[T; 5], qi: &T, force_a: bool) -> T {
    let third = qi.from_rational(&Rational::from((1, 3)));
    let mut tot = qi.zero_like();
    for z in 0u32..32 {
        let pos: [bool; 5] = std::array::from_fn(|v| z >> (4 - v) & 1 == 1);
        if force_a && !pos[VAR_A] {
            continue;
        }
        let mut t = volume_constant(pos, qi);
        if !pos[VAR_C] {
            t = t.mul(&third);
        }
        for v in 0..5 {
            if pos[v] {
                t = t.mul(&g[v]);
            }
        }
        tot = tot.add(&t);
    }
    tot
}

/// Closed form of the three-pattern tree sum VI(X, φ).
pub fn tree_vertex_sum<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    let qi = p.v.mul(&p.v);
    let mut tot = qi.zero_like();
    for (_, _, c, ratio) in tree_terms(p)? {
        let mut g: Vec<T> = Vec::with_capacity(5);
        for r in &ratio {
            g.push(geometric(r)?);
        }
        let g: [T; 5] = g.try_into().expect("five ratios");
        tot = tot.add(&c.mul(&pattern_sum(&g, &qi, false)));
    }
    Ok(tot)
}

/// Truncated brute-force tree sum over 0 ≤ a..e ≤ n_max (oracle for the closed form).
pub fn tree_vertex_sum_truncated<T: Scalar>(p: &UnramifiedPoint<T>, n_max: u32) -> Result<T> {
    let q = p.q();
    let qi = p.v.mul(&p.v);
    let third = q.from_rational(&Rational::from((1, 3)));
    let mut f = Vec::with_capacity(6);
    for x in &p.x {
        let mut row = Vec::with_capacity(3 * n_max as usize + 1);
        for n in 0..=3 * n_max {
            row.push(spherical_term(x, &p.v, n)?);
        }
        f.push(row);
    }
    let mut qpow = vec![q.one_like()];
    for k in 1..=(5 * n_max) as usize {
        qpow.push(qpow[k - 1].mul(&q));
    }
    let mut tot = q.zero_like();
    let n = n_max as usize;
    let mut idx = [0usize; 5];
    loop {
        let pos: [bool; 5] = std::array::from_fn(|v| idx[v] > 0);
        let mut weight = volume_constant(pos, &qi).mul(&qpow[idx.iter().sum::<usize>()]);
        if idx[VAR_C] == 0 {
            weight = weight.mul(&third);
        }
        for edges in &CLASSES {
            let mut t = weight.clone();
            for k in 0..6 {
                let d: usize = (0..5).filter(|&v| edges[k] & var_bit(v) != 0).map(|v| idx[v]).sum();
                t = t.mul(&f[k][d]);
            }
            tot = tot.add(&t);
        }
        let mut k = 4;
        loop {
            idx[k] += 1;
            if idx[k] <= n {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                return Ok(tot);
            }
            k -= 1;
        }
    }
}

/// L(1, ad) = ∏_e 1/((1 − q⁻¹)(1 − x_e² q⁻¹)(1 − x_e⁻² q⁻¹)).
pub fn adjoint_l<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    let qi = p.v.mul(&p.v);
    let one = qi.one_like();
    let mut den = one.clone();
    for (k, x) in p.x.iter().enumerate() {
        let x2 = x.mul(x);
        let x2i = x2.inv().expect("nonzero");
        for f in [one.sub(&qi), one.sub(&x2.mul(&qi)), one.sub(&x2i.mul(&qi))] {
            if f.is_zero() {
                let (i, j) = EDGES[k];
                return Err(pole(format!("L(1, ad) pole on edge {i}{j}")));
            }
            den = den.mul(&f);
        }
    }
    Ok(den.inv().expect("checked"))
}

/// L(½, Σ) = ∏_{σ ∈ Σ} 1/(1 − v σ).
pub fn sigma_l_half<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    let one = p.v.one_like();
    let mut den = one.clone();
    for w in spin_weights() {
        let f = one.sub(&p.v.mul(&p.monomial(&w.exponents)));
        if f.is_zero() {
            return Err(pole(format!("L(1/2, Σ) pole at spin monomial {:?}", w.exponents)));
        }
        den = den.mul(&f);
    }
    Ok(den.inv().expect("checked"))
}

/// W(D6) partitioned by `w(ϖ₆)`: the 32 spin weights with the signed terms `w(ρ)`.
struct SpinClass {
    sigma: [i32; 6],
    terms: Vec<(i8, [i32; 6])>,
}

fn spin_classes() -> &'static [SpinClass] {
    static C: OnceLock<Vec<SpinClass>> = OnceLock::new();
    C.get_or_init(|| {
        let rho2 = RHO.map(|r| 2 * r);
        let mut out: Vec<SpinClass> = Vec::with_capacity(32);
        for entry in enumerate_weyl() {
            let s = entry.w.act(&VARPI6_DOUBLED);
            let t = (entry.sign, entry.w.act(&rho2));
            match out.iter_mut().find(|c| c.sigma == s) {
                Some(c) => c.terms.push(t),
                None => out.push(SpinClass { sigma: s, terms: vec![t] }),
            }
        }
        out.sort_by_key(|c| c.sigma);
        out
    })
}

/// A point of the torus given by its values on doubled weights.
pub trait TorusPoint<T> {
    fn eval(&self, m: &[i32; 6]) -> Result<T>;
}

struct TablePoint<T> {
    table: PowerTable<T>,
}

impl<T: Scalar> TorusPoint<T> for TablePoint<T> {
    fn eval(&self, m: &[i32; 6]) -> Result<T> {
        let e = doubled_weight_to_edges(m)
            .ok_or_else(|| Error::Invalid(format!("weight {m:?}/2 is not integral on edges")))?;
        Ok(self.table.monomial(&e))
    }
}

/// Torus point `λ ↦ p(w⁻¹ λ)`, the image of `p` under a Weyl element.
pub struct TwistedPoint<'a, T> {
    inner: &'a dyn TorusPoint<T>,
    w_inv: crate::lattice::WeylElement,
}

impl<'a, T> TwistedPoint<'a, T> {
    pub fn new(inner: &'a dyn TorusPoint<T>, w: &crate::lattice::WeylElement) -> Self {
        Self { inner, w_inv: w.inverse() }
    }
}

impl<T> TorusPoint<T> for TwistedPoint<'_, T> {
    fn eval(&self, m: &[i32; 6]) -> Result<T> {
        self.inner.eval(&self.w_inv.act(m))
    }
}

/// Torus evaluation backed by the edge values of a point.
pub fn torus_point<T: Scalar + 'static>(p: &UnramifiedPoint<T>) -> Result<Box<dyn TorusPoint<T>>> {
    Ok(Box::new(TablePoint { table: PowerTable::new(&p.x)? }))
}

/// `Frob^ρ / ∏_{α>0}(Frob^α − 1)`.
fn weyl_prefactor<T: Scalar>(t: &dyn TorusPoint<T>, one: &T) -> Result<T> {
    let mut den = one.clone();
    for a in positive_roots() {
        let f = t.eval(&a.map(|c| 2 * c))?.sub(one);
        if f.is_zero() {
            return Err(pole(format!("Frob^α = 1 for the root α = {a:?}")));
        }
        den = den.mul(&f);
    }
    Ok(t.eval(&RHO.map(|r| 2 * r))?.mul(&den.inv().expect("checked")))
}

/// `Σ_{w ∈ W} sign(w) Frob^{w(μ)}` for a doubled weight μ.
pub fn alternating_sum<T: Scalar>(t: &dyn TorusPoint<T>, mu2: &[i32; 6], one: &T) -> Result<T> {
    let mut tot = one.zero_like();
    for e in enumerate_weyl() {
        let m = t.eval(&e.w.act(mu2))?;
        tot = if e.sign > 0 { tot.add(&m) } else { tot.sub(&m) };
    }
    Ok(tot)
}

/// Both sides of the Weyl denominator identity:
/// `Σ_w sign(w) m^{wρ}` and `m^ρ ∏_{α>0}(1 − m^{−α})`.
pub fn weyl_denominator<T: Scalar + 'static>(p: &UnramifiedPoint<T>) -> Result<(T, T)> {
    let t = torus_point(p)?;
    let one = p.v.one_like();
    let lhs = alternating_sum(t.as_ref(), &RHO.map(|r| 2 * r), &one)?;
    let mut rhs = t.eval(&RHO.map(|r| 2 * r))?;
    for a in positive_roots() {
        rhs = rhs.mul(&one.sub(&t.eval(&a.map(|c| -2 * c))?));
    }
    Ok((lhs, rhs))
}

/// Signed sums `N_σ = Σ_{w: wϖ₆ = σ} sign(w) Frob^{wρ}` with the value of `Frob^σ`.
fn class_sums<T: Scalar>(t: &dyn TorusPoint<T>, one: &T) -> Result<Vec<(T, T)>> {
    let mut out = Vec::with_capacity(32);
    for c in spin_classes() {
        let mut n = one.zero_like();
        for (s, m) in &c.terms {
            let val = t.eval(m)?;
            n = if *s > 0 { n.add(&val) } else { n.sub(&val) };
        }
        out.push((n, t.eval(&c.sigma)?));
    }
    Ok(out)
}

/// Tr(q^{-1/2} Frob, ℂ[P]) on an arbitrary torus point.
pub fn spin_cone_trace_at<T: Scalar>(t: &dyn TorusPoint<T>, v: &T) -> Result<T> {
    let one = v.one_like();
    let pref = weyl_prefactor(t, &one)?;
    let mut tot = one.zero_like();
    for (n, s) in class_sums(t, &one)? {
        let den = one.sub(&v.mul(&s));
        let inv = den
            .inv()
            .ok_or_else(|| pole("1 − v·Frob^{w(ϖ₆)} vanishes".to_string()))?;
        tot = tot.add(&n.mul(&inv));
    }
    Ok(pref.mul(&tot))
}

pub fn spin_cone_trace<T: Scalar + 'static>(p: &UnramifiedPoint<T>) -> Result<T> {
    let t = torus_point(p)?;
    spin_cone_trace_at(t.as_ref(), &p.v)
}

/// Coefficients of v⁰..v^{n_max} in the expansion of the trace.
pub fn trace_series<T: Scalar + 'static>(p: &UnramifiedPoint<T>, n_max: usize) -> Result<Vec<T>> {
    let t = torus_point(p)?;
    let one = p.v.one_like();
    let pref = weyl_prefactor(t.as_ref(), &one)?;
    let sums = class_sums(t.as_ref(), &one)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut powers: Vec<T> = sums.iter().map(|_| one.clone()).collect();
    for _ in 0..=n_max {
        let mut c = one.zero_like();
        for ((n, s), pw) in sums.iter().zip(powers.iter_mut()) {
            c = c.add(&n.mul(pw));
            *pw = pw.mul(s);
        }
        out.push(pref.mul(&c));
    }
    Ok(out)
}

/// Weyl character χ_{nϖ₆}(Frob) as an alternating-sum quotient.
pub fn weyl_character<T: Scalar + 'static>(p: &UnramifiedPoint<T>, n: i32) -> Result<T> {
    let t = torus_point(p)?;
    let one = p.v.one_like();
    let rho2 = RHO.map(|r| 2 * r);
    let top: [i32; 6] = std::array::from_fn(|i| rho2[i] + n * VARPI6_DOUBLED[i]);
    let num = alternating_sum(t.as_ref(), &top, &one)?;
    let den = alternating_sum(t.as_ref(), &rho2, &one)?;
    num.div(&den).ok_or_else(|| pole("Weyl denominator vanishes".into()))
}

/// The 32-monomial half-spin character Σ_σ σ(p).
pub fn half_spin_character<T: Scalar>(p: &UnramifiedPoint<T>) -> T {
    let mut tot = p.v.zero_like();
    for w in spin_weights() {
        tot = tot.add(&p.monomial(&w.exponents));
    }
    tot
}

/// `(1 − q⁻²)^k`.
pub fn q_factor<T: Scalar>(p: &UnramifiedPoint<T>, k: i64) -> T {
    let qi = p.v.mul(&p.v);
    p.v.one_like().sub(&qi.mul(&qi)).powi(k).expect("nonzero")
}

/// Left side of the duality: `(1 − q⁻²)⁵ · VI · L(1, ad)`.
pub fn duality_lhs<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    Ok(q_factor(p, 5).mul(&tree_vertex_sum(p)?).mul(&adjoint_l(p)?))
}

/// Spin monomial `(x12 x13 x14)^{-1}` whose pole is studied by the residue identity.
pub const RESIDUE_EDGES: [i32; 6] = [-1, -1, -1, 0, 0, 0];

/// Point with `x12 = v/(x13 x14)` from `(x13, x14, x23, x24, x34, v)`.
pub fn restricted_point<T: Scalar>(rest: [T; 5], v: T) -> Result<UnramifiedPoint<T>> {
    let [x13, x14, x23, x24, x34] = rest;
    let d = x13.mul(&x14);
    let x12 = v.div(&d).ok_or_else(|| Error::Degenerate("x13 x14 = 0".into()))?;
    UnramifiedPoint::new([x12, x13, x14, x23, x24, x34], v)
}

/// Residue of the trace at `1 − v (x12 x13 x14)^{-1} = 0`.
pub fn residue_spin<T: Scalar + 'static>(p: &UnramifiedPoint<T>) -> Result<T> {
    let t = torus_point(p)?;
    let one = p.v.one_like();
    let pref = weyl_prefactor(t.as_ref(), &one)?;
    let target = edges_to_doubled_weight(&RESIDUE_EDGES);
    let class = spin_classes().iter().find(|c| c.sigma == target).expect("−ϖ₆ is a spin weight");
    let mut n = one.zero_like();
    for (s, m) in &class.terms {
        let val = t.eval(m)?;
        n = if *s > 0 { n.add(&val) } else { n.sub(&val) };
    }
    Ok(pref.mul(&n))
}

/// Residue of `(1 − q⁻²)⁵ · VI · L(1, ad)` at the same locus, from the tree side.
pub fn residue_tree<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    let qi = p.v.mul(&p.v);
    let mut tot = qi.zero_like();
    // The pole comes from variable a with the x⁻¹ branch on its three edges.
    let a_edges: Vec<usize> = (0..6).filter(|&k| CLASSES[0][k] & var_bit(VAR_A) != 0).collect();
    for (cls, choice, c, ratio) in tree_terms(p)? {
        let edges: Vec<usize> = (0..6).filter(|&k| CLASSES[cls][k] & var_bit(VAR_A) != 0).collect();
        debug_assert_eq!(edges, a_edges);
        if !edges.iter().all(|&k| choice >> (5 - k) & 1 == 1) {
            continue;
        }
        let mut g: Vec<T> = Vec::with_capacity(5);
        for (v, r) in ratio.iter().enumerate() {
            g.push(if v == VAR_A { qi.one_like() } else { geometric(r)? });
        }
        let g: [T; 5] = g.try_into().expect("five ratios");
        tot = tot.add(&c.mul(&pattern_sum(&g, &qi, true)));
    }
    Ok(q_factor(p, 5).mul(&tot).mul(&adjoint_l(p)?))
}

/// The displayed closed form `−L(1,ad) x23⁴x24⁴x34⁴ / [15 binomials]`.
pub fn residue_display<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    Ok(residue_display_without_l(p)?.mul(&adjoint_l(p)?))
}

/// The displayed closed form with its `L(1, ad)` prefactor removed.
pub fn residue_display_without_l<T: Scalar>(p: &UnramifiedPoint<T>) -> Result<T> {
    let [x12, x13, x14, x23, x24, x34] = &p.x;
    let m = |a: &T, b: &T| a.mul(b);
    let one = x12.one_like();
    let sq1 = |a: &T| a.mul(a).sub(&one);
    let factors = [
        sq1(x12),
        sq1(x13),
        sq1(x14),
        m(&m(x12, x13), x24).sub(x34),
        m(&m(x12, x13), x34).sub(x24),
        m(x12, x13).sub(&m(x24, x34)),
        m(&m(x12, x13), &m(x24, x34)).sub(&one),
        m(&m(x12, x14), x23).sub(x34),
        m(&m(x12, x14), x34).sub(x23),
        m(x12, x14).sub(&m(x23, x34)),
        m(&m(x12, x14), &m(x23, x34)).sub(&one),
        m(&m(x13, x14), x23).sub(x24),
        m(&m(x13, x14), x24).sub(x23),
        m(x13, x14).sub(&m(x23, x24)),
        m(&m(x13, x14), &m(x23, x24)).sub(&one),
    ];
    let mut den = one.clone();
    for f in &factors {
        if f.is_zero() {
            return Err(pole("displayed residue denominator vanishes".into()));
        }
        den = den.mul(f);
    }
    let num = p.monomial(&[0, 0, 0, 4, 4, 4]);
    Ok(num.neg().mul(&den.inv().expect("checked")))
}

/// Normalized symbol with metadata about the square-root branch.
#[derive(Clone, Debug)]
pub struct SymbolValue {
    pub value: BigComplex,
    pub branch_notes: Vec<String>,
}

/// `(1 − q⁻²)³ · Tr / √L(½, Σ)`, principal branch of the square root.
pub fn unramified_symbol(p: &UnramifiedPoint<BigComplex>) -> Result<SymbolValue> {
    let tr = spin_cone_trace(p)?;
    let l = sigma_l_half(p)?;
    let mut notes = vec!["principal square root of L(1/2, Σ); the symbol is defined up to sign".to_string()];
    if !l.im.is_zero() || l.re.is_sign_negative() {
        notes.push(format!("radicand L(1/2, Σ) = {} is not a positive real", l.to_decimal(12)));
    }
    let root = l.sqrt();
    let value = &(&q_factor(p, 3) * &tr) / &root;
    Ok(SymbolValue { value, branch_notes: notes })
}

/// Regularity of a rational point for every engine formula.
pub fn is_regular(p: &ExactPoint) -> bool {
    duality_lhs(p).is_ok() && spin_cone_trace(p).is_ok() && sigma_l_half(p).is_ok()
}

/// Deterministic pseudo-random rational point (|num|, den ≤ `bound`), resampled
/// until regular; at most 100 attempts.
pub fn random_regular_point<R: rand::Rng>(rng: &mut R, bound: i64, v_choices: &[Rational]) -> Result<ExactPoint> {
    for _ in 0..100 {
        let x: [Rational; 6] = std::array::from_fn(|_| random_rational(rng, bound));
        let v = v_choices[rng.gen_range(0..v_choices.len())].clone();
        if let Ok(p) = UnramifiedPoint::new(x, v) {
            if is_regular(&p) {
                return Ok(p);
            }
        }
    }
    Err(Error::Degenerate("no regular point found in 100 attempts".into()))
}

/// Nonzero rational `±n/d` with `1 ≤ n, d ≤ bound`.
pub fn random_rational<R: rand::Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(1..=bound);
    let d = rng.gen_range(1..=bound);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::from((s * n, d))
}
