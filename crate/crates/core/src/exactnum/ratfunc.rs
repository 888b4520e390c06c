//! Rational functions in z over Q(i), the realization of "meromorphic
//! function" on the Riemann sphere.

use core::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, NumError, Polynomial};

/// Canonical form: gcd(num, den) = 1, den monic and nonzero; zero is 0/1.
/// Structural equality therefore agrees with cross-multiplication.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, NumError> {
        if den.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lc_inv = den
            .leading_coeff()
            .unwrap()
            .recip()
            .expect("leading coefficient is nonzero");
        RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The coordinate function z.
    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant means z-free; the zero function is constant.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().map_or(true, |d| d == 0)
    }

    /// Decidable non-constancy test used by every non-degeneracy precondition.
    pub fn is_nonconstant(&self) -> bool {
        !self.is_constant()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        // num and den are each coprime powers, so no re-reduction is needed.
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(n, &self.den * &self.den)
    }

    /// Exact value; canonical form guarantees den(z0) = 0 is a genuine pole.
    pub fn eval(&self, z0: &GaussianRational) -> Result<GaussianRational, NumError> {
        let d = self.den.eval(z0);
        if d.is_zero() {
            return Err(NumError::PoleAtPoint);
        }
        self.num.eval(z0).checked_div(&d)
    }

    pub fn has_pole_at(&self, z0: &GaussianRational) -> bool {
        self.den.eval(z0).is_zero()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
