//! Field operations shared by exact rationals and arbitrary-precision complexes.

use rug::Rational;

use crate::bigcomplex::BigComplex;

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` when `self` is zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rational(&self, r: &Rational) -> Self;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }

    fn from_i64(&self, n: i64) -> Self {
        self.from_rational(&Rational::from(n))
    }

    fn powi(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(acc)
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0).then(|| Rational::from(self.recip_ref()))
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_rational(&self, r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        BigComplex::one(self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        (!BigComplex::is_zero(self)).then(|| self.recip())
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn from_rational(&self, r: &Rational) -> Self {
        BigComplex::from_rational(self.prec(), r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_inverses() {
        let x = Rational::from((-3, 4));
        assert_eq!(x.powi(3).unwrap(), Rational::from((-27, 64)));
        assert_eq!(x.powi(-2).unwrap(), Rational::from((16, 9)));
        assert_eq!(x.powi(0).unwrap(), 1);
        assert!(Rational::new().inv().is_none());
        assert!(Rational::new().powi(-1).is_none());

        let z = BigComplex::parse(128, "1+2i").unwrap();
        let w = Scalar::powi(&z, -3).unwrap().mul(&Scalar::powi(&z, 3).unwrap());
        assert!(w.rel_diff(&BigComplex::one(128)) < 1e-35);
        assert!(z.div(&z.zero_like()).is_none());
        assert_eq!(z.neg().to_f64_pair(), (-1.0, -2.0));
    }
}
