//! Scalars in Q(i): complex numbers with arbitrary-precision rational parts.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumError;

/// An element of Q(i). Both parts are kept in lowest terms with positive
/// denominators (the backing rational type canonicalizes on every operation).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// num/den as a real rational. den must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// x · conj(x), a nonnegative rational; zero only for x = 0.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = rhs.norm_sqr();
        let c = rhs.conj();
        Ok(GaussianRational {
            re: (&self.re * &c.re - &self.im * &c.im) / &n,
            im: (&self.re * &c.im + &self.im * &c.re) / &n,
        })
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self, NumError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Grammar-conformant text. Real parts print as `3` or `-3/4`; pure
    /// imaginary as `3*i`; mixed values parenthesized: `(1/2-3*i)`.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.im.is_zero() {
            let _ = write!(s, "{}", self.re);
        } else if self.re.is_zero() {
            write_imag(&mut s, &self.im);
        } else {
            let _ = write!(s, "({}", self.re);
            if self.im.is_positive() {
                s.push('+');
            }
            write_imag(&mut s, &self.im);
            s.push(')');
        }
        s
    }
}

fn write_imag(s: &mut String, im: &BigRational) {
    use core::fmt::Write;
    if im.is_one() {
        s.push('i');
    } else if (-im).is_one() {
        s.push_str("-i");
    } else {
        let _ = write!(s, "{}*i", im);
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on a zero divisor; use `checked_div` where the divisor is data.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    #[test]
    fn modulus_of_one_plus_i() {
        let x = g((1, 1), (1, 1));
        assert_eq!(&x * &x.conj(), GaussianRational::from_int(2));
    }

    #[test]
    fn conjugation_flips_imaginary_part() {
        let x = g((3, 2), (1, 4));
        assert_eq!(x.conj(), g((3, 2), (-1, 4)));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn reciprocal_of_one_plus_i() {
        let x = g((1, 1), (1, 1));
        let r = x.recip().unwrap();
        assert_eq!(r, g((1, 2), (-1, 2)));
        assert!((&r * &x).is_one());
    }

    #[test]
    fn division_by_zero_reported() {
        let x = GaussianRational::one();
        assert_eq!(
            x.checked_div(&GaussianRational::zero()),
            Err(NumError::DivisionByZero)
        );
    }

    #[test]
    fn norm_squared_is_real() {
        let x = g((2, 3), (-5, 7));
        let n = x.norm_sqr();
        assert_eq!(n, BigRational::new(BigInt::from(421), BigInt::from(441)));
    }

    #[test]
    fn text_forms() {
        assert_eq!(g((3, 2), (0, 1)).to_text(), "3/2");
        assert_eq!(g((0, 1), (1, 1)).to_text(), "i");
        assert_eq!(g((0, 1), (-3, 4)).to_text(), "-3/4*i");
        assert_eq!(g((3, 2), (1, 4)).to_text(), "(3/2+1/4*i)");
        assert_eq!(g((-1, 1), (-1, 1)).to_text(), "(-1-i)");
    }
}
