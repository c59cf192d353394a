//! JSON rendering with provenance: every number is `{value, error_estimate, branch_notes}`.

use rug::Rational;
use serde_json::{json, Value};
use sixj_core::BigComplex;

/// Significant decimal digits carried by `prec` bits.
pub fn digits(prec: u32) -> usize {
    (f64::from(prec) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn rational(r: &Rational) -> Value {
    json!({ "value": r.to_string(), "error_estimate": "exact", "branch_notes": [] })
}

/// A value known to working precision; the estimate is a few ulps of its magnitude.
pub fn working(z: &BigComplex) -> Value {
    let ulps = z.abs().to_f64() * 2f64.powi(8 - z.prec() as i32);
    estimate(z, ulps, &[])
}

pub fn estimate(z: &BigComplex, error: f64, notes: &[String]) -> Value {
    json!({
        "value": z.to_decimal(digits(z.prec())),
        "error_estimate": format!("{error:.3e}"),
        "branch_notes": notes,
    })
}

pub fn float(x: f64, error: f64) -> Value {
    json!({ "value": format!("{x:.17e}"), "error_estimate": format!("{error:.3e}"), "branch_notes": [] })
}

/// Values of either scalar type used by the unramified engine.
pub trait Render {
    fn render(&self) -> Value;
    /// Exact equality for rationals; agreement to all but 16 bits otherwise.
    fn agrees(&self, other: &Self) -> bool;
}

impl Render for Rational {
    fn render(&self) -> Value {
        rational(self)
    }
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

impl Render for BigComplex {
    fn render(&self) -> Value {
        working(self)
    }
    fn agrees(&self, other: &Self) -> bool {
        self.rel_diff(other) < 2f64.powi(16 - self.prec() as i32)
    }
}
