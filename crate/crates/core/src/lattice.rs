//! Tetrahedron combinatorics, the isogeny to the D6 lattice, the Weyl group
//! W(D6), the 32 half-spin weights and the tetrahedral/Regge symmetries.
//!
//! Edges are indexed 0..6 in the order 12, 13, 14, 23, 24, 34 ("ordering
//! orientation", i < j). Weights in λ-coordinates are stored doubled so that
//! half-integral weights such as ϖ₆ stay integral.

use std::collections::{HashSet, VecDeque};
use std::ops::Neg;
use std::sync::OnceLock;

use rug::Rational;

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};

pub const EDGES: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Index of the unordered edge {i, j} and the sign relating the oriented edge
/// `i -> j` to the stored `min -> max` orientation.
pub fn edge_index(i: u8, j: u8) -> Result<(usize, i8)> {
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    EDGES
        .iter()
        .position(|&e| e == (a, b))
        .map(|k| (k, s))
        .ok_or_else(|| Error::Invalid(format!("no edge {i}{j}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    pub source: u8,
    pub target: u8,
}

impl OrientedEdge {
    pub fn new(source: u8, target: u8) -> Result<Self> {
        if !(1..=4).contains(&source) || !(1..=4).contains(&target) || source == target {
            return Err(Error::Invalid(format!("bad oriented edge {source}->{target}")));
        }
        Ok(Self { source, target })
    }

    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(12);
        for s in 1..=4 {
            for t in 1..=4 {
                if s != t {
                    out.push(Self { source: s, target: t });
                }
            }
        }
        out
    }

    pub fn reversed(self) -> Self {
        Self { source: self.target, target: self.source }
    }

    /// Unordered projection and orientation sign.
    pub fn unordered(self) -> (usize, i8) {
        edge_index(self.source, self.target).expect("validated edge")
    }
}

/// Values that can be stored on edges and moved around by symmetries.
pub trait EdgeValue: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn half(&self) -> Self;
    fn zero_like(&self) -> Self;
}

impl EdgeValue for Rational {
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn half(&self) -> Self {
        Rational::from(self / 2u32)
    }
    fn zero_like(&self) -> Self {
        Rational::new()
    }
}

impl EdgeValue for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn half(&self) -> Self {
        self * 0.5
    }
    fn zero_like(&self) -> Self {
        0.0
    }
}

impl EdgeValue for BigComplex {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn half(&self) -> Self {
        let mut h = self.clone();
        h.re /= 2;
        h.im /= 2;
        h
    }
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
}

/// Odd function on oriented edges, stored on the i < j orientation only.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeAssignment<T>(pub [T; 6]);

impl<T: EdgeValue> EdgeAssignment<T> {
    pub fn get(&self, i: u8, j: u8) -> Result<T> {
        let (k, s) = edge_index(i, j)?;
        Ok(if s > 0 { self.0[k].clone() } else { self.0[k].neg() })
    }

    pub fn oriented(&self, e: OrientedEdge) -> T {
        let (k, s) = e.unordered();
        if s > 0 {
            self.0[k].clone()
        } else {
            self.0[k].neg()
        }
    }

    /// Values on the blackboard edges 𝟙..𝟞 = 12, 31, 14, 34, 24, 23.
    pub fn to_blackboard(&self) -> [T; 6] {
        let f = &self.0;
        [f[0].clone(), f[1].neg(), f[2].clone(), f[5].clone(), f[4].clone(), f[3].clone()]
    }

    pub fn from_blackboard(j: &[T; 6]) -> Self {
        EdgeAssignment([j[0].clone(), j[1].neg(), j[2].clone(), j[5].clone(), j[4].clone(), j[3].clone()])
    }
}

/// Vortex orientation of the blackboard edges 𝟙..𝟞.
pub const VORTEX: [(u8, u8); 6] = [(1, 2), (3, 1), (1, 4), (3, 4), (2, 4), (2, 3)];

/// The isogeny D̃6 → D6: (f12±f34, f13±f24, f14±f23).
pub fn embed_isogeny<T: EdgeValue>(f: &EdgeAssignment<T>) -> [T; 6] {
    let v = &f.0;
    [v[0].add(&v[5]), v[0].sub(&v[5]), v[1].add(&v[4]), v[1].sub(&v[4]), v[2].add(&v[3]), v[2].sub(&v[3])]
}

/// Integer edge exponents of a doubled λ-weight, if integral.
pub fn doubled_weight_to_edges(m: &[i32; 6]) -> Option<[i32; 6]> {
    let pair = |a: i32, b: i32| -> Option<(i32, i32)> {
        let (s, d) = (a + b, a - b);
        (s % 2 == 0 && d % 2 == 0).then_some((s / 2, d / 2))
    };
    let (e12, e34) = pair(m[0], m[1])?;
    let (e13, e24) = pair(m[2], m[3])?;
    let (e14, e23) = pair(m[4], m[5])?;
    Some([e12, e13, e14, e23, e24, e34])
}

/// Doubled λ-weight of the monomial with integer edge exponents `e`.
pub fn edges_to_doubled_weight(e: &[i32; 6]) -> [i32; 6] {
    [e[0] + e[5], e[0] - e[5], e[1] + e[4], e[1] - e[4], e[2] + e[3], e[2] - e[3]]
}

/// Signed permutation with `w(e_i) = signs[i] e_{perm[i]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub perm: [u8; 6],
    pub signs: [i8; 6],
}

impl WeylElement {
    pub fn identity() -> Self {
        Self { perm: [0, 1, 2, 3, 4, 5], signs: [1; 6] }
    }

    pub fn new(perm: [u8; 6], signs: [i8; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &p in &perm {
            if p > 5 || seen[p as usize] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p as usize] = true;
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Invalid("signs must be ±1".into()));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 != 0 {
            return Err(Error::Invalid("odd number of sign changes is not in W(D6)".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn act(&self, v: &[i32; 6]) -> [i32; 6] {
        let mut out = [0; 6];
        for i in 0..6 {
            out[self.perm[i] as usize] = i32::from(self.signs[i]) * v[i];
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut perm = [0u8; 6];
        let mut signs = [1i8; 6];
        for i in 0..6 {
            let j = other.perm[i] as usize;
            perm[i] = self.perm[j];
            signs[i] = other.signs[i] * self.signs[j];
        }
        Self { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = [0u8; 6];
        let mut signs = [1i8; 6];
        for i in 0..6 {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            signs[j] = self.signs[i];
        }
        Self { perm, signs }
    }

    pub fn length(&self) -> u32 {
        positive_roots().iter().filter(|a| !is_positive(&self.act(a))).count() as u32
    }

    pub fn length_sign(&self) -> (u32, i8) {
        let l = self.length();
        (l, if l % 2 == 0 { 1 } else { -1 })
    }
}

fn is_positive(v: &[i32; 6]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// The 30 positive roots e_i ± e_j (i < j).
pub fn positive_roots() -> &'static [[i32; 6]] {
    static ROOTS: OnceLock<Vec<[i32; 6]>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let mut out = Vec::with_capacity(30);
        for i in 0..6 {
            for j in i + 1..6 {
                for s in [-1, 1] {
                    let mut v = [0; 6];
                    v[i] = 1;
                    v[j] = s;
                    out.push(v);
                }
            }
        }
        out
    })
}

pub const RHO: [i32; 6] = [5, 4, 3, 2, 1, 0];
/// ϖ₆ doubled.
pub const VARPI6_DOUBLED: [i32; 6] = [1; 6];

fn permutations_lex() -> Vec<[u8; 6]> {
    let mut out = Vec::with_capacity(720);
    let mut p = [0u8, 1, 2, 3, 4, 5];
    loop {
        out.push(p);
        let Some(i) = (0..5).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..6).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// A Weyl element with its cached length and sign.
#[derive(Clone, Copy, Debug)]
pub struct WeylEntry {
    pub w: WeylElement,
    pub length: u32,
    pub sign: i8,
}

/// All of W(D6), lexicographic in (perm, signs) with `+` before `-`.
pub fn enumerate_weyl() -> &'static [WeylEntry] {
    static W: OnceLock<Vec<WeylEntry>> = OnceLock::new();
    W.get_or_init(|| {
        let mut out = Vec::with_capacity(23040);
        for perm in permutations_lex() {
            for mask in 0u32..64 {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let mut signs = [1i8; 6];
                for (i, s) in signs.iter_mut().enumerate() {
                    if mask >> (5 - i) & 1 == 1 {
                        *s = -1;
                    }
                }
                let w = WeylElement { perm, signs };
                let (length, sign) = w.length_sign();
                out.push(WeylEntry { w, length, sign });
            }
        }
        out
    })
}

/// One of the 32 vertex half-spin weights x_ij^± x_ik^± x_il^±.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinWeight {
    /// Exponents over the six i < j edges.
    pub exponents: [i32; 6],
    pub vertex: u8,
    /// Number of minus signs in the outward-oriented vertex triple.
    pub minus_count: u8,
}

impl SpinWeight {
    /// Member of Σ⁺ (at most one minus sign).
    pub fn is_plus(&self) -> bool {
        self.minus_count <= 1
    }

    pub fn evaluate<T: EdgeValue>(&self, f: &EdgeAssignment<T>) -> T {
        let mut acc = f.0[0].zero_like();
        for (k, &e) in self.exponents.iter().enumerate() {
            match e {
                1 => acc = acc.add(&f.0[k]),
                -1 => acc = acc.sub(&f.0[k]),
                _ => {}
            }
        }
        acc
    }
}

/// The 32 spin weights, vertex-major, sign patterns in binary order (+ first).
pub fn spin_weights() -> Vec<SpinWeight> {
    let mut out = Vec::with_capacity(32);
    for v in 1u8..=4 {
        let others: Vec<u8> = (1..=4).filter(|&u| u != v).collect();
        for mask in 0u8..8 {
            let mut exponents = [0; 6];
            for (b, &u) in others.iter().enumerate() {
                let s = if mask >> (2 - b) & 1 == 1 { -1 } else { 1 };
                let (k, o) = edge_index(v, u).expect("edge");
                exponents[k] = s * i32::from(o);
            }
            out.push(SpinWeight { exponents, vertex: v, minus_count: mask.count_ones() as u8 });
        }
    }
    out
}

/// Split of the spin weights into (Σ⁺, Σ⁻).
pub fn spin_partition() -> (Vec<SpinWeight>, Vec<SpinWeight>) {
    spin_weights().into_iter().partition(|w| w.is_plus())
}

/// Generators of the symmetry actions on edge assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Regge symmetry fixing blackboard column k ∈ {1,2,3}: pairs (𝟙,𝟜), (𝟚,𝟝), (𝟛,𝟞).
    Regge(u8),
    /// Vertex relabeling i ↦ σ(i) with oddness (the 𝔉T action); `sigma[i-1] = σ(i)`.
    TetraPerm([u8; 4]),
    /// Relabeling of the blackboard edges using the vortex orientation (𝔉Tᵒʳ).
    TetraPermVortex([u8; 4]),
    /// Negate the value on one unordered edge (𝔉I).
    Flip(usize),
}

fn check_perm4(s: &[u8; 4]) -> Result<()> {
    let mut seen = [false; 5];
    for &x in s {
        if !(1..=4).contains(&x) || seen[x as usize] {
            return Err(Error::Invalid(format!("{s:?} is not a permutation of 1..4")));
        }
        seen[x as usize] = true;
    }
    Ok(())
}

/// All 24 permutations of {1,2,3,4}, lexicographic.
pub fn s4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    let p = [a, b, c, d];
                    if check_perm4(&p).is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Regge map on blackboard values fixing column `k` of [[1,2,3],[4,5,6]].
pub fn regge_blackboard<T: EdgeValue>(k: u8, j: &[T; 6]) -> Result<[T; 6]> {
    if !(1..=3).contains(&k) {
        return Err(Error::Invalid(format!("Regge generator index {k} not in 1..3")));
    }
    let fixed = [(k - 1) as usize, (k + 2) as usize];
    let moving: Vec<usize> = (0..6).filter(|i| !fixed.contains(i)).collect();
    let mut s = j[moving[0]].zero_like();
    for &i in &moving {
        s = s.add(&j[i]);
    }
    let s = s.half();
    let mut out = j.clone();
    for &i in &moving {
        out[i] = s.sub(&j[i]);
    }
    Ok(out)
}

pub fn symmetry_apply<T: EdgeValue>(g: Generator, f: &EdgeAssignment<T>) -> Result<EdgeAssignment<T>> {
    match g {
        Generator::Regge(k) => {
            let j = regge_blackboard(k, &f.to_blackboard())?;
            Ok(EdgeAssignment::from_blackboard(&j))
        }
        Generator::TetraPerm(sigma) => {
            check_perm4(&sigma)?;
            let mut out = f.0.clone();
            for (k, &(i, j)) in EDGES.iter().enumerate() {
                let (si, sj) = (sigma[(i - 1) as usize], sigma[(j - 1) as usize]);
                let (t, o) = edge_index(si, sj)?;
                out[t] = if o > 0 { f.0[k].clone() } else { f.0[k].neg() };
            }
            Ok(EdgeAssignment(out))
        }
        Generator::TetraPermVortex(sigma) => {
            check_perm4(&sigma)?;
            let j = f.to_blackboard();
            let mut out = j.clone();
            for (k, &(a, b)) in VORTEX.iter().enumerate() {
                let (sa, sb) = (sigma[(a - 1) as usize], sigma[(b - 1) as usize]);
                let target = VORTEX
                    .iter()
                    .position(|&(x, y)| (x, y) == (sa, sb) || (x, y) == (sb, sa))
                    .expect("edge image");
                out[target] = j[k].clone();
            }
            Ok(EdgeAssignment::from_blackboard(&out))
        }
        Generator::Flip(e) => {
            if e >= 6 {
                return Err(Error::Invalid(format!("edge index {e} out of range")));
            }
            let mut out = f.0.clone();
            out[e] = out[e].neg();
            Ok(EdgeAssignment(out))
        }
    }
}

/// The linear action of a generator on λ-coordinates, as a Weyl element.
///
/// Fails if the induced map is not a signed permutation with an even number
/// of sign changes.
pub fn generator_to_weyl(g: Generator) -> Result<WeylElement> {
    let mut perm = [0u8; 6];
    let mut signs = [1i8; 6];
    for m in 0..6 {
        // Preimage of the λ basis vector u_m in edge coordinates (halves).
        let mut lam = [0i32; 6];
        lam[m] = 2;
        let e = doubled_weight_to_edges(&lam).expect("even weight");
        let f = EdgeAssignment(e.map(|x| Rational::from((x, 2))));
        let img = symmetry_apply(g, &f)?;
        let l = {
            let v = &img.0;
            [
                Rational::from(&v[0] + &v[5]),
                Rational::from(&v[0] - &v[5]),
                Rational::from(&v[1] + &v[4]),
                Rational::from(&v[1] - &v[4]),
                Rational::from(&v[2] + &v[3]),
                Rational::from(&v[2] - &v[3]),
            ]
        };
        let nz: Vec<usize> = (0..6).filter(|&i| l[i] != 0).collect();
        if nz.len() != 1 || (l[nz[0]] != 1 && l[nz[0]] != -1) {
            return Err(Error::Invalid(format!("{g:?} is not a signed permutation on λ-coordinates")));
        }
        perm[m] = nz[0] as u8;
        signs[m] = if l[nz[0]] > 0 { 1 } else { -1 };
    }
    WeylElement::new(perm, signs)
}

/// Order of the subgroup of W(D6) generated by the given elements.
pub fn generated_order(gens: &[WeylElement]) -> usize {
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = WeylElement::identity();
    seen.insert(id);
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// The orbit W·ϖ₆ as doubled weights, sorted.
pub fn varpi6_orbit() -> Vec<[i32; 6]> {
    let mut set: Vec<[i32; 6]> = enumerate_weyl().iter().map(|e| e.w.act(&VARPI6_DOUBLED)).collect();
    set.sort();
    set.dedup();
    set
}

impl<T> Neg for EdgeAssignment<T>
where
    T: EdgeValue,
{
    type Output = Self;
    fn neg(self) -> Self {
        EdgeAssignment(self.0.map(|x| x.neg()))
    }
}
