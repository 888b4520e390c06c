//! Univariate polynomials over Q(i), coefficients stored lowest degree first.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::GaussianRational;

/// Canonical form: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The variable z.
    pub fn var() -> Self {
        Polynomial::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = lc.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn eval(&self, z0: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z0) + c;
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: self = q·d + rem with deg(rem) < deg(d).
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc_inv = d
            .leading_coeff()
            .unwrap()
            .recip()
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut q = vec![GaussianRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = &rem[rem.len() - 1] * &lc_inv;
            if !f.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &f * dc;
                    rem[k + j] = &rem[k + j] - &t;
                }
                q[k] = f;
            }
            rem.pop();
        }
        (Polynomial::from_coeffs(q), Polynomial::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm (reduced rational coefficients
    /// keep intermediate growth polynomial). gcd(0,0) = 0.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] = &coeffs[i + j] + &t;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Polynomial {
        Polynomial::var()
    }

    fn int(n: i64) -> Polynomial {
        Polynomial::constant(GaussianRational::from_int(n))
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = Polynomial::from_coeffs(vec![
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::zero(),
        ]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::from_coeffs(vec![GaussianRational::zero()]).is_zero());
    }

    #[test]
    fn derivative_of_cube() {
        let p = z().pow(3);
        assert_eq!(p.derivative(), &int(3) * &z().pow(2));
    }

    #[test]
    fn division_with_remainder() {
        // z^3 + 2z + 1 = (z^2 - z + 3)(z + 1) - 2
        let p = &(&z().pow(3) + &(&int(2) * &z())) + &int(1);
        let d = &z() + &int(1);
        let (q, r) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, p);
        assert_eq!(r, int(-2));
    }

    #[test]
    fn gcd_of_common_factor() {
        // gcd(z^2 - 1, z^2 + 2z + 1) = z + 1
        let a = &z().pow(2) - &int(1);
        let b = &(&z().pow(2) + &(&int(2) * &z())) + &int(1);
        assert_eq!(a.gcd(&b), &z() + &int(1));
    }

    #[test]
    fn eval_horner() {
        let p = &z().pow(2) + &int(1);
        let v = p.eval(&GaussianRational::i());
        assert!(v.is_zero());
    }
}
