//! Exact scalar fields.
//!
//! Every computation in this crate is exact. Integer data lives in
//! [`BigInt`]; rational data in [`Rational`] (an arbitrary-precision
//! fraction); polynomial coefficients in [`GaussianRational`], the field
//! `Q(i)`, because the cubic-product formulas carry a factor of `√−1`.
//!
//! Linear algebra is written once against the [`Scalar`] trait and
//! instantiated over both fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `"p/q"` (the denominator is always written).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Operations required of a coefficient field by the exact linear algebra.
///
/// Methods take references so that big-number implementations avoid
/// needless clones.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One {
    fn from_i64(n: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn over(&self, other: &Self) -> Self {
        self.times(&other.inv())
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        rat(n)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// An element `re + im·i` of the Gaussian rationals `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    /// A real Gaussian rational.
    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Zero::zero() }
    }

    /// The imaginary unit `i = √−1`.
    pub fn i() -> Self {
        GaussianRational {
            re: Zero::zero(),
            im: One::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat(n))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: Zero::zero(),
            im: Zero::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: One::one(),
            im: Zero::zero(),
        }
    }
}

impl Scalar for GaussianRational {
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
    fn plus(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn minus(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn times(&self, o: &Self) -> Self {
        // Real operands dominate in practice; skip the cross terms for them.
        match (self.is_real(), o.is_real()) {
            (true, true) => Self::real(&self.re * &o.re),
            (true, false) => GaussianRational {
                re: &self.re * &o.re,
                im: &self.re * &o.im,
            },
            (false, true) => GaussianRational {
                re: &self.re * &o.re,
                im: &self.im * &o.re,
            },
            (false, false) => GaussianRational {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
    fn negated(&self) -> Self {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        if self.is_real() {
            return Self::real(self.re.recip());
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        GaussianRational {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.plus(&o)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.minus(&o)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.times(&o)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        self.negated()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_axioms_on_samples() {
        let a = GaussianRational::new(ratio(1, 2), ratio(-3, 4));
        let b = GaussianRational::new(ratio(5, 3), ratio(2, 7));
        let ab = a.times(&b);
        assert_eq!(ab.times(&b.inv()), a);
        assert_eq!(
            GaussianRational::i().times(&GaussianRational::i()),
            GaussianRational::from_int(-1)
        );
        assert_eq!(a.plus(&b).minus(&b), a);
    }

    #[test]
    fn rational_round_trip_through_strings() {
        for r in [ratio(3, 4), ratio(-7, 1), ratio(0, 5)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("12"), Some(rat(12)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
