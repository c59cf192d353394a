//! Local L-, γ- and ε-factors for characters of F^× with F = ℝ, ℂ or a
//! nonarchimedean field (unramified characters only).

use rug::Float;

use crate::bigcomplex::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::special::gamma;

#[derive(Clone, Debug, PartialEq)]
pub enum LocalCharacter {
    /// `x ↦ sgn(x)^c |x|^t`.
    Real { c: u8, t: BigComplex },
    /// `z ↦ |z|_ℂ^t` with `|z|_ℂ = z z̄`.
    Complex { t: BigComplex },
    /// Unramified: value `z` at a uniformizer, residue field of size `q`.
    Nonarch { q: u64, z: BigComplex },
}

impl LocalCharacter {
    pub fn real(c: u8, t: BigComplex) -> Result<Self> {
        if c > 1 {
            return Err(Error::Invalid(format!("sign exponent {c} must be 0 or 1")));
        }
        Ok(Self::Real { c, t })
    }

    pub fn complex(t: BigComplex) -> Self {
        Self::Complex { t }
    }

    /// Ramified characters are rejected: the flag exists only to be refused.
    pub fn nonarch(q: u64, z: BigComplex, ramified: bool) -> Result<Self> {
        if ramified {
            return Err(Error::Invalid("ramified nonarchimedean characters are not supported".into()));
        }
        if q < 2 {
            return Err(Error::Invalid(format!("residue field size {q} must be at least 2")));
        }
        if z.is_zero() {
            return Err(Error::Invalid("uniformizer value must be nonzero".into()));
        }
        Ok(Self::Nonarch { q, z })
    }

    pub fn prec(&self) -> u32 {
        match self {
            Self::Real { t, .. } | Self::Complex { t } => t.prec(),
            Self::Nonarch { z, .. } => z.prec(),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Real { c, t } => Self::Real { c: *c, t: -t },
            Self::Complex { t } => Self::Complex { t: -t },
            Self::Nonarch { q, z } => Self::Nonarch { q: *q, z: z.recip() },
        }
    }

    /// `χ |·|^u`.
    pub fn twist(&self, u: &BigComplex) -> Self {
        match self {
            Self::Real { c, t } => Self::Real { c: *c, t: t + u },
            Self::Complex { t } => Self::Complex { t: t + u },
            Self::Nonarch { q, z } => {
                let qf = BigComplex::from_i64(z.prec(), *q as i64);
                let scale = qf.pow(&-u).expect("q > 0");
                Self::Nonarch { q: *q, z: z * &scale }
            }
        }
    }

    /// χ(−1).
    pub fn at_minus_one(&self) -> BigComplex {
        let p = self.prec();
        match self {
            Self::Real { c: 1, .. } => BigComplex::from_i64(p, -1),
            _ => BigComplex::one(p),
        }
    }
}

fn pole(what: &str, s: &BigComplex) -> Error {
    Error::Pole(format!("{what} at s = {}", s.to_decimal(20)))
}

/// L(s, χ).
pub fn l_factor(chi: &LocalCharacter, s: &BigComplex) -> Result<BigComplex> {
    let p = s.prec();
    match chi {
        LocalCharacter::Nonarch { q, z } => {
            let qf = BigComplex::from_i64(p, *q as i64);
            let den = BigComplex::one(p) - z * &qf.pow(&-s)?;
            if den.is_zero() {
                return Err(pole("L-factor pole", s));
            }
            Ok(den.recip())
        }
        LocalCharacter::Real { c, t } => {
            // π^{-(s+t+c)/2} Γ((s+t+c)/2)
            let mut u = (s + t).add_i64(i64::from(*c));
            u.re /= 2;
            u.im /= 2;
            let g = gamma(&u).map_err(|_| pole("L-factor pole", s))?;
            let pw = BigComplex::pi(p).pow(&-&u)?;
            Ok(&pw * &g)
        }
        LocalCharacter::Complex { t } => {
            // 2 (2π)^{-(s+t)} Γ(s+t)
            let u = s + t;
            let g = gamma(&u).map_err(|_| pole("L-factor pole", s))?;
            let two_pi = BigComplex::pi(p).mul_i64(2);
            Ok((&two_pi.pow(&-&u)? * &g).mul_i64(2))
        }
    }
}

/// `I^{w}` and `Ī^{w}` for `I = 2πi`, principal branch.
fn i_powers(w: &BigComplex) -> Result<(BigComplex, BigComplex)> {
    let p = w.prec();
    let two_pi = Float::with_val(p, pi(p) * 2u32);
    let big_i = BigComplex::from_parts(Float::new(p), two_pi.clone());
    let big_i_bar = BigComplex::from_parts(Float::new(p), -two_pi);
    Ok((big_i.pow(w)?, big_i_bar.pow(w)?))
}

/// Real γ via `1 / (Γ(u) (I^{-u} + (−1)^c Ī^{-u}))`, `u = s + t`.
pub fn gamma_real_closed(c: u8, t: &BigComplex, s: &BigComplex) -> Result<BigComplex> {
    let u = s + t;
    let (a, b) = i_powers(&-&u)?;
    let sum = if c == 0 { &a + &b } else { &a - &b };
    let g = match gamma(&u) {
        Ok(g) => g,
        // Γ(u) has a pole: γ vanishes there.
        Err(Error::Pole(_)) => return Ok(BigComplex::zero(s.prec())),
        Err(e) => return Err(e),
    };
    let den = &g * &sum;
    if den.is_zero() {
        return Err(pole("gamma-factor pole", s));
    }
    Ok(den.recip())
}

/// Real γ via the dual form `(−1)^c (I^{u−1} + (−1)^c Ī^{u−1}) Γ(1−u)`.
pub fn gamma_real_dual(c: u8, t: &BigComplex, s: &BigComplex) -> Result<BigComplex> {
    let u = s + t;
    let (a, b) = i_powers(&u.add_i64(-1))?;
    let sum = if c == 0 { &a + &b } else { &b - &a };
    let g = gamma(&(-&u).add_i64(1)).map_err(|_| pole("gamma-factor pole", s))?;
    Ok(&sum * &g)
}

/// ε(s, χ) in closed form.
pub fn epsilon_closed(chi: &LocalCharacter, s: &BigComplex) -> Result<BigComplex> {
    let p = s.prec();
    Ok(match chi {
        LocalCharacter::Nonarch { .. } => BigComplex::one(p),
        LocalCharacter::Real { c: 0, .. } => BigComplex::one(p),
        LocalCharacter::Real { .. } => BigComplex::i(p),
        LocalCharacter::Complex { t } => {
            // 2^{1 − 2u}
            let u = s + t;
            let two = BigComplex::from_i64(p, 2);
            two.pow(&(-&u.mul_i64(2)).add_i64(1))?
        }
    })
}

/// γ(s, χ) = ε(s, χ) L(1 − s, χ⁻¹) / L(s, χ).
pub fn gamma_factor_via_l(chi: &LocalCharacter, s: &BigComplex) -> Result<BigComplex> {
    let one_minus = (-s).add_i64(1);
    let num = l_factor(&chi.inverse(), &one_minus)?;
    let den = l_factor(chi, s)?;
    Ok(&(&epsilon_closed(chi, s)? * &num) / &den)
}

/// γ(s, χ); the real case uses the closed form.
pub fn gamma_factor(chi: &LocalCharacter, s: &BigComplex) -> Result<BigComplex> {
    match chi {
        LocalCharacter::Real { c, t } => gamma_real_closed(*c, t, s),
        LocalCharacter::Complex { t } => {
            // π^{2u−1} Γ(1−u) / Γ(u)
            let u = s + t;
            let p = s.prec();
            let num = gamma(&(-&u).add_i64(1)).map_err(|_| pole("gamma-factor pole", s))?;
            let den = match gamma(&u) {
                Ok(g) => g,
                Err(Error::Pole(_)) => return Ok(BigComplex::zero(p)),
                Err(e) => return Err(e),
            };
            let pw = BigComplex::pi(p).pow(&u.mul_i64(2).add_i64(-1))?;
            Ok(&(&pw * &num) / &den)
        }
        LocalCharacter::Nonarch { .. } => gamma_factor_via_l(chi, s),
    }
}

/// ε(s, χ) = γ(s, χ) L(s, χ) / L(1 − s, χ⁻¹), computed from the other factors.
pub fn epsilon_factor(chi: &LocalCharacter, s: &BigComplex) -> Result<BigComplex> {
    if let LocalCharacter::Nonarch { .. } = chi {
        return Ok(BigComplex::one(s.prec()));
    }
    let g = gamma_factor(chi, s)?;
    let l = l_factor(chi, s)?;
    let l_dual = l_factor(&chi.inverse(), &(-s).add_i64(1))?;
    if l_dual.is_zero() {
        return Err(pole("epsilon-factor pole", s));
    }
    Ok(&(&g * &l) / &l_dual)
}

/// The archimedean γ of the trivial real character, `γ_ℝ(u)`.
pub fn gamma_r(u: &BigComplex) -> Result<BigComplex> {
    gamma_real_closed(0, &BigComplex::zero(u.prec()), u)
}

/// `L_ℝ(s) = π^{−s/2} Γ(s/2)`.
pub fn l_r(s: &BigComplex) -> Result<BigComplex> {
    l_factor(&LocalCharacter::Real { c: 0, t: BigComplex::zero(s.prec()) }, s)
}
