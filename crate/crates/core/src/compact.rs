//! Classical SO(3) 6j symbols: contraction of four 3j tensors over the
//! tetrahedron, and the Racah single-sum formula as an exact oracle.
//!
//! Spins are integers. The vertex stars 1: (12,13,14), 2: (12,23,24),
//! 3: (13,23,34), 4: (14,24,34) are the four triads of `{a b c; d e f}` when
//! `(a, b, c, d, e, f) = (j12, j13, j14, j34, j24, j23)`, i.e. the blackboard
//! order 𝟙..𝟞.

use rug::{Float, Integer, Rational};

use crate::lattice::{edge_index, EDGES};

/// `s·√(n/d)` stored as the rational `s·n/d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedSqrt(pub Rational);

impl SignedSqrt {
    /// `c·√r`.
    pub fn new(c: &Rational, r: &Rational) -> Self {
        let sq = Rational::from(c * c) * r;
        SignedSqrt(if *c < 0 { -sq } else { sq })
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    /// The square, with the sign of the value.
    pub fn signed_sq(&self) -> &Rational {
        &self.0
    }

    pub fn sq(&self) -> Rational {
        self.0.clone().abs()
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.sq().to_f64().sqrt();
        if self.0 < 0 {
            -m
        } else {
            m
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        let m = Float::with_val(prec, self.sq()).sqrt();
        if self.0 < 0 {
            -m
        } else {
            m
        }
    }
}

impl std::ops::Mul for &SignedSqrt {
    type Output = SignedSqrt;
    fn mul(self, o: &SignedSqrt) -> SignedSqrt {
        SignedSqrt(Rational::from(&self.0 * &o.0))
    }
}

fn fact(n: i64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

pub fn triangle(a: u32, b: u32, c: u32) -> bool {
    a + b >= c && b + c >= a && c + a >= b
}

/// `Δ(abc) = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!`.
fn delta(a: i64, b: i64, c: i64) -> Rational {
    Rational::from((fact(a + b - c) * fact(a - b + c) * fact(-a + b + c), fact(a + b + c + 1)))
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`, exact.
pub fn wigner_3j(j: [u32; 3], m: [i32; 3]) -> SignedSqrt {
    let [j1, j2, j3] = j.map(i64::from);
    let [m1, m2, m3] = m.map(i64::from);
    if m1 + m2 + m3 != 0 || !triangle(j[0], j[1], j[2]) || m1.abs() > j1 || m2.abs() > j2 || m3.abs() > j3 {
        return SignedSqrt::default();
    }
    let tmin = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let tmax = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut s = Rational::new();
    for t in tmin..=tmax {
        let den = fact(t) * fact(j3 - j2 + t + m1) * fact(j3 - j1 + t - m2) * fact(j1 + j2 - j3 - t) * fact(j1 - t - m1)
            * fact(j2 - t + m2);
        let term = Rational::from((Integer::from(1), den));
        if t % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let r = delta(j1, j2, j3)
        * Rational::from(fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3));
    let phase = if (j1 - j2 - m3).rem_euclid(2) == 0 { 1 } else { -1 };
    SignedSqrt::new(&Rational::from(phase * s), &r)
}

/// The normalized invariant in `V_{j1} ⊗ V_{j2} ⊗ V_{j3}` in the `|m⟩` basis.
#[derive(Clone, Debug)]
pub struct ThreeJTensor {
    pub j: [u32; 3],
    /// Entry `(m1, m2, m3)` at index `[(m1+j1), (m2+j2), (m3+j3)]`, row-major.
    pub entries: Vec<SignedSqrt>,
}

impl ThreeJTensor {
    fn dims(&self) -> [usize; 3] {
        self.j.map(|x| 2 * x as usize + 1)
    }

    pub fn get(&self, m: [i32; 3]) -> &SignedSqrt {
        let d = self.dims();
        let idx = m.iter().zip(self.j).map(|(mi, ji)| (mi + ji as i32) as usize).collect::<Vec<_>>();
        &self.entries[(idx[0] * d[1] + idx[1]) * d[2] + idx[2]]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SignedSqrt::is_zero)
    }

    /// `Σ |T_m|²`, exact.
    pub fn norm_sq(&self) -> Rational {
        self.entries.iter().map(SignedSqrt::sq).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(SignedSqrt::to_f64).collect()
    }
}

/// Standard Wigner 3j sign convention; zero tensor if the triple is inadmissible.
pub fn threej_tensor(j1: u32, j2: u32, j3: u32) -> ThreeJTensor {
    let j = [j1, j2, j3];
    let mut entries = Vec::with_capacity(((2 * j1 + 1) * (2 * j2 + 1) * (2 * j3 + 1)) as usize);
    for m1 in -(j1 as i32)..=j1 as i32 {
        for m2 in -(j2 as i32)..=j2 as i32 {
            for m3 in -(j3 as i32)..=j3 as i32 {
                entries.push(wigner_3j(j, [m1, m2, m3]));
            }
        }
    }
    ThreeJTensor { j, entries }
}

/// Spins on the i < j edges (12, 13, 14, 23, 24, 34).
pub type EdgeSpins = [u32; 6];

/// Edges at each vertex, in increasing order of the other endpoint.
fn stars() -> [[usize; 3]; 4] {
    let mut out = [[0; 3]; 4];
    for v in 1..=4u8 {
        let mut k = 0;
        for w in 1..=4u8 {
            if w != v {
                out[(v - 1) as usize][k] = edge_index(v, w).expect("edge").0;
                k += 1;
            }
        }
    }
    out
}

pub fn admissible(j: &EdgeSpins) -> bool {
    stars().iter().all(|s| triangle(j[s[0]], j[s[1]], j[s[2]]))
}

/// Blackboard (= classical 6j) order of edge spins.
pub fn to_racah_order(j: &EdgeSpins) -> [u32; 6] {
    [j[0], j[1], j[2], j[5], j[4], j[3]]
}

/// Contract the four vertex tensors with the invariant pairing
/// `⟨m, m′⟩ = (−1)^{j−m} δ_{m,−m′}` on each edge (value at the lower endpoint `m`,
/// at the upper endpoint `−m`). Zero if any vertex is inadmissible.
pub fn contraction_6j(j: &EdgeSpins) -> f64 {
    if !admissible(j) {
        return 0.0;
    }
    let st = stars();
    let tensors: Vec<(ThreeJTensor, Vec<f64>)> = st
        .iter()
        .map(|s| {
            let t = threej_tensor(j[s[0]], j[s[1]], j[s[2]]);
            let f = t.to_f64();
            (t, f)
        })
        .collect();
    let ji = j.map(|x| x as i32);
    let val = |v: usize, m: [i32; 3]| -> f64 {
        let (t, f) = &tensors[v];
        if m.iter().zip(t.j).any(|(mi, jj)| mi.unsigned_abs() > jj) {
            return 0.0;
        }
        let d = t.j.map(|x| 2 * x as usize + 1);
        let idx = [0, 1, 2].map(|k| (m[k] + t.j[k] as i32) as usize);
        f[(idx[0] * d[1] + idx[1]) * d[2] + idx[2]]
    };
    // m on edges 12, 13, 14, 23, 24, 34; vertex sums fix m14, m24, m34.
    let mut total = 0.0;
    for m12 in -ji[0]..=ji[0] {
        for m13 in -ji[1]..=ji[1] {
            let m14 = -m12 - m13;
            if m14.abs() > ji[2] {
                continue;
            }
            let v1 = val(0, [m12, m13, m14]);
            if v1 == 0.0 {
                continue;
            }
            for m23 in -ji[3]..=ji[3] {
                let m24 = m12 - m23;
                let m34 = m13 + m23;
                if m24.abs() > ji[4] || m34.abs() > ji[5] {
                    continue;
                }
                let v2 = val(1, [-m12, m23, m24]);
                let v3 = val(2, [-m13, -m23, m34]);
                let v4 = val(3, [-m14, -m24, -m34]);
                let mut phase = 0;
                for (k, m) in [m12, m13, m14, m23, m24, m34].iter().enumerate() {
                    phase += ji[k] - m;
                }
                let sign = if phase.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                total += sign * v1 * v2 * v3 * v4;
            }
        }
    }
    total
}

/// Classical `{j1 j2 j3; j4 j5 j6}` by the Racah single sum, exact.
pub fn racah_6j(j: [u32; 6]) -> SignedSqrt {
    let [a, b, c, d, e, f] = j;
    if !(triangle(a, b, c) && triangle(a, e, f) && triangle(d, b, f) && triangle(d, e, c)) {
        return SignedSqrt::default();
    }
    let [a, b, c, d, e, f] = j.map(i64::from);
    let al = [a + b + c, a + e + f, d + b + f, d + e + c];
    let be = [a + b + d + e, b + c + e + f, c + a + f + d];
    let tmin = *al.iter().max().expect("four");
    let tmax = *be.iter().min().expect("three");
    let mut s = Rational::new();
    for t in tmin..=tmax {
        let mut den = Integer::from(1);
        for x in al {
            den *= fact(t - x);
        }
        for y in be {
            den *= fact(y - t);
        }
        let term = Rational::from((fact(t + 1), den));
        if t % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let r = delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c);
    SignedSqrt::new(&s, &r)
}

/// Racah symbol for edge spins in the i < j order.
pub fn racah_for_edges(j: &EdgeSpins) -> SignedSqrt {
    racah_6j(to_racah_order(j))
}

/// Relabel vertices by `sigma` (vertex v ↦ sigma[v−1]).
pub fn relabel(j: &EdgeSpins, sigma: [u8; 4]) -> EdgeSpins {
    let mut out = [0; 6];
    for (k, &(a, b)) in EDGES.iter().enumerate() {
        let (t, _) = edge_index(sigma[(a - 1) as usize], sigma[(b - 1) as usize]).expect("edge");
        out[t] = j[k];
    }
    out
}

/// Largest deviation of `Σ_x (2x+1)(2p+1) {j1 j2 x; j3 j4 p}{j1 j2 x; j3 j4 q} − δ_pq`
/// over all `j1..j4 ≤ jmax`, evaluated at `prec` bits; returns (deviation, identities checked).
pub fn orthogonality_defect(jmax: u32, prec: u32) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for j1 in 0..=jmax {
        for j2 in 0..=jmax {
            for j3 in 0..=jmax {
                for j4 in 0..=jmax {
                    let range = |a: u32, b: u32| a.abs_diff(b)..=a + b;
                    let ps: Vec<u32> = range(j2, j3).filter(|p| triangle(j1, j4, *p)).collect();
                    let xs: Vec<u32> = range(j1, j2).filter(|x| triangle(j3, j4, *x)).collect();
                    for &p in &ps {
                        for &q in &ps {
                            let mut s = Float::new(prec);
                            for &x in &xs {
                                let u = racah_6j([j1, j2, x, j3, j4, p]);
                                let v = racah_6j([j1, j2, x, j3, j4, q]);
                                let w = (&u * &v).to_float(prec) * (2 * x + 1) * (2 * p + 1);
                                s += w;
                            }
                            if p == q {
                                s -= 1u32;
                            }
                            worst = worst.max(s.abs().to_f64());
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    (worst, count)
}
