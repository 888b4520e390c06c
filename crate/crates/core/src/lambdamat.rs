//! Laurent polynomials in a loop parameter with rational-function
//! coefficients, and square matrices of them.
//!
//! `LambdaPoly` is a finite sum `Σ_k λ^k · f_k(z)` stored sparsely by grade;
//! zero coefficients are never stored. `LambdaMatrix` is an `n × n` matrix of
//! such entries. The second transpose reflects across the antidiagonal, and
//! indices throughout use the bar involution `ī = n+1-i` (1-based); columns
//! of an orthogonal matrix pair to antidiagonal deltas under the bilinear
//! form `(v, w) = Σ_j v_j w_{j̄}`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{GaussianRational, NumError, RationalFunction};

/// Finite Laurent polynomial in λ over the rational-function field.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    /// grade -> nonzero coefficient
    terms: BTreeMap<i32, RationalFunction>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(RationalFunction::one())
    }

    /// λ-free element f(z)·λ^0.
    pub fn constant(f: RationalFunction) -> Self {
        Self::single(0, f)
    }

    /// Single term f(z)·λ^k.
    pub fn single(k: i32, f: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(k, f);
        }
        LambdaPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|f| f.is_one())
    }

    /// Coefficient of λ^k (zero if absent).
    pub fn coeff(&self, k: i32) -> RationalFunction {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalFunction)> {
        self.terms.iter().map(|(k, f)| (*k, f))
    }

    pub fn min_deg(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// True when the only grade present is 0 (or the element is zero).
    pub fn is_lambda_free(&self) -> bool {
        self.terms.keys().all(|k| *k == 0)
    }

    pub fn only_even_grades(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// The λ-free part as a rational function.
    pub fn lambda_free_part(&self) -> RationalFunction {
        self.coeff(0)
    }

    /// Every coefficient is a polynomial (denominator 1).
    pub fn is_polynomial_in_z(&self) -> bool {
        self.terms.values().all(|f| f.den().is_one())
    }

    fn insert(&mut self, k: i32, f: RationalFunction) {
        if !f.is_zero() {
            self.terms.insert(k, f);
        }
    }

    fn add_assign_term(&mut self, k: i32, f: &RationalFunction) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(g) => &g + f,
            None => f.clone(),
        };
        self.insert(k, sum);
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, g) in self.terms() {
            out.insert(k, f * g);
        }
        out
    }

    /// Multiply by λ^s.
    pub fn shift(&self, s: i32) -> Self {
        let mut out = Self::zero();
        for (k, g) in self.terms() {
            out.insert(k + s, g.clone());
        }
        out
    }

    /// Coefficientwise z-derivative.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (k, g) in self.terms() {
            out.insert(k, g.derivative());
        }
        out
    }

    /// Drop all grades >= m (reduce mod λ^m).
    pub fn mod_lambda(&self, m: i32) -> Self {
        let mut out = Self::zero();
        for (k, g) in self.terms() {
            if k < m {
                out.insert(k, g.clone());
            }
        }
        out
    }

    /// Substitute λ -> μ·λ: the grade-k coefficient picks up μ^k.
    /// μ = 0 keeps only the λ-free part (requires no negative grades).
    pub fn substitute(&self, mu: &GaussianRational) -> Result<Self, NumError> {
        if mu.is_zero() {
            if self.min_deg().is_some_and(|k| k < 0) {
                return Err(NumError::DivisionByZero);
            }
            return Ok(Self::constant(self.coeff(0)));
        }
        let mut out = Self::zero();
        for (k, g) in self.terms() {
            let factor = mu.pow(k as i64)?;
            out.insert(k, g.scale(&factor));
        }
        Ok(out)
    }

    /// Evaluate at a point (z0, λ0). λ0 must be nonzero if negative grades
    /// are present; poles of a coefficient at z0 surface as errors.
    pub fn eval(
        &self,
        z0: &GaussianRational,
        lambda0: &GaussianRational,
    ) -> Result<GaussianRational, NumError> {
        let mut acc = GaussianRational::zero();
        for (k, g) in self.terms() {
            let v = g.eval(z0)?;
            let lp = lambda0.pow(k as i64)?;
            acc = &acc + &(&v * &lp);
        }
        Ok(acc)
    }
}

impl core::ops::Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (k, f) in rhs.terms() {
            out.add_assign_term(k, f);
        }
        out
    }
}

impl core::ops::Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self + &(-rhs)
    }
}

impl core::ops::Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (k, f) in self.terms() {
            out.insert(k, -f);
        }
        out
    }
}

impl core::ops::Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (k1, f1) in self.terms() {
            for (k2, f2) in rhs.terms() {
                out.add_assign_term(k1 + k2, &(f1 * f2));
            }
        }
        out
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, g) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{g}")?,
                1 => write!(f, "L*{g}")?,
                _ => write!(f, "L^{k}*{g}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Where an orthogonality check failed: the first column pair whose bilinear
/// product deviates from the identity pattern, with the deviation itself.
#[derive(Debug, Clone)]
pub struct OrthogonalityFailure {
    /// 1-based column indices (j, k) with (c_j, c_k) != δ_{j k̄}.
    pub col_j: usize,
    pub col_k: usize,
    pub residual: LambdaPoly,
}

impl fmt::Display for OrthogonalityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "columns ({}, {}) fail orthogonality; residual {}",
            self.col_j, self.col_k, self.residual
        )
    }
}

/// Square matrix over `LambdaPoly`. Rows/columns are 1-based in the public
/// API to match the index conventions of the underlying constructions.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    n: usize,
    a: Vec<Vec<LambdaPoly>>,
}

impl LambdaMatrix {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let mut a = vec![vec![LambdaPoly::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = LambdaPoly::one();
        }
        LambdaMatrix { n, a }
    }

    pub fn from_rows(a: Vec<Vec<LambdaPoly>>) -> Self {
        let n = a.len();
        assert!(n >= 1, "matrix dimension must be positive");
        assert!(a.iter().all(|r| r.len() == n), "rows must have length n");
        LambdaMatrix { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry a_{ij}, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.a[i - 1][j - 1]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: LambdaPoly) {
        self.a[i - 1][j - 1] = v;
    }

    /// The bar involution on indices, 1-based: ī = n+1-i.
    pub fn bar(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    pub fn row(&self, i: usize) -> Vec<LambdaPoly> {
        self.a[i - 1].clone()
    }

    pub fn col(&self, j: usize) -> Vec<LambdaPoly> {
        (1..=self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &LambdaMatrix) -> LambdaMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut a = vec![vec![LambdaPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = LambdaPoly::zero();
                for k in 0..n {
                    if self.a[i][k].is_zero() || rhs.a[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.a[i][k] * &rhs.a[k][j]);
                }
                a[i][j] = acc;
            }
        }
        LambdaMatrix { n, a }
    }

    /// Reflection across the antidiagonal: (A^TT)_{ij} = a_{j̄ ī}.
    pub fn second_transpose(&self) -> LambdaMatrix {
        let n = self.n;
        let mut a = vec![vec![LambdaPoly::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.a[n - 1 - j][n - 1 - i].clone();
            }
        }
        LambdaMatrix { n, a }
    }

    /// Bilinear pairing of two coordinate vectors: (v, w) = Σ_j v_j w_{j̄}.
    pub fn bilinear(v: &[LambdaPoly], w: &[LambdaPoly]) -> LambdaPoly {
        assert_eq!(v.len(), w.len(), "dimension mismatch");
        let n = v.len();
        let mut acc = LambdaPoly::zero();
        for j in 0..n {
            if v[j].is_zero() || w[n - 1 - j].is_zero() {
                continue;
            }
            acc = &acc + &(&v[j] * &w[n - 1 - j]);
        }
        acc
    }

    /// Check A^TT·A = I, i.e. the columns satisfy (c_j, c_k) = δ_{j k̄}.
    /// Reports the first failing column pair with the residual.
    pub fn check_complex_orthogonal(&self) -> Result<(), OrthogonalityFailure> {
        let prod = self.second_transpose().mul(self);
        for j in 1..=self.n {
            for k in 1..=self.n {
                let expect = if j == k {
                    LambdaPoly::one()
                } else {
                    LambdaPoly::zero()
                };
                let residual = &prod.entry(j, k).clone() - &expect;
                if !residual.is_zero() {
                    // (A^TT A)_{jk} = (c_k, c_{j̄}); report the direct pair.
                    return Err(OrthogonalityFailure {
                        col_j: k,
                        col_k: self.bar(j),
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    /// Entrywise z-derivative.
    pub fn derivative(&self) -> LambdaMatrix {
        let a = self
            .a
            .iter()
            .map(|row| row.iter().map(|e| e.derivative()).collect())
            .collect();
        LambdaMatrix { n: self.n, a }
    }

    /// Entrywise λ -> μ·λ.
    pub fn lambda_substitute(&self, mu: &GaussianRational) -> Result<LambdaMatrix, NumError> {
        let mut a = Vec::with_capacity(self.n);
        for row in &self.a {
            let mut out = Vec::with_capacity(self.n);
            for e in row {
                out.push(e.substitute(mu)?);
            }
            a.push(out);
        }
        Ok(LambdaMatrix { n: self.n, a })
    }

    /// Evaluate every entry at (z0, λ0).
    pub fn eval(
        &self,
        z0: &GaussianRational,
        lambda0: &GaussianRational,
    ) -> Result<ScalarMatrix, NumError> {
        let mut a = Vec::with_capacity(self.n);
        for row in &self.a {
            let mut out = Vec::with_capacity(self.n);
            for e in row {
                out.push(e.eval(z0, lambda0)?);
            }
            a.push(out);
        }
        Ok(ScalarMatrix { n: self.n, a })
    }

    /// True when every entry below the diagonal is 0 and each diagonal
    /// entry is 1.
    pub fn is_upper_unitriangular(&self) -> bool {
        for i in 1..=self.n {
            if !self.entry(i, i).is_one() {
                return false;
            }
            for j in 1..i {
                if !self.entry(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// All entries λ-free (a plain matrix of rational functions).
    pub fn is_lambda_free(&self) -> bool {
        self.a.iter().flatten().all(|e| e.is_lambda_free())
    }
}

impl fmt::Debug for LambdaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LambdaMatrix {} x {} [", self.n, self.n)?;
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Square matrix of exact scalars, for evaluated loops and projections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    n: usize,
    a: Vec<Vec<GaussianRational>>,
}

impl ScalarMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![vec![GaussianRational::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = GaussianRational::one();
        }
        ScalarMatrix { n, a }
    }

    pub fn from_rows(a: Vec<Vec<GaussianRational>>) -> Self {
        let n = a.len();
        assert!(n >= 1, "matrix dimension must be positive");
        assert!(a.iter().all(|r| r.len() == n), "rows must have length n");
        ScalarMatrix { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.a[i - 1][j - 1]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.a[i - 1][j - 1] = v;
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut a = vec![vec![GaussianRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = GaussianRational::zero();
                for k in 0..n {
                    acc = &acc + &(&self.a[i][k] * &rhs.a[k][j]);
                }
                a[i][j] = acc;
            }
        }
        ScalarMatrix { n, a }
    }

    pub fn sub(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let a = self
            .a
            .iter()
            .zip(&rhs.a)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
            .collect();
        ScalarMatrix { n: self.n, a }
    }

    pub fn scale(&self, c: &GaussianRational) -> ScalarMatrix {
        let a = self
            .a
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        ScalarMatrix { n: self.n, a }
    }

    /// Standard conjugate transpose.
    pub fn conj_transpose(&self) -> ScalarMatrix {
        let n = self.n;
        let mut a = vec![vec![GaussianRational::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.a[j][i].conj();
            }
        }
        ScalarMatrix { n, a }
    }

    /// Reflection across the antidiagonal, scalar version.
    pub fn second_transpose(&self) -> ScalarMatrix {
        let n = self.n;
        let mut a = vec![vec![GaussianRational::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.a[n - 1 - j][n - 1 - i].clone();
            }
        }
        ScalarMatrix { n, a }
    }

    /// Componentwise conjugation in the null-basis coordinates: real basis
    /// conjugation becomes (i,j) -> conj(m_{ī j̄}).
    pub fn conj_null(&self) -> ScalarMatrix {
        let n = self.n;
        let mut a = vec![vec![GaussianRational::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.a[n - 1 - i][n - 1 - j].conj();
            }
        }
        ScalarMatrix { n, a }
    }

    pub fn is_identity(&self) -> bool {
        for i in 1..=self.n {
            for j in 1..=self.n {
                let want_one = i == j;
                let e = self.entry(i, j);
                if want_one != e.is_one() || (!want_one && !e.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|e| e.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rf;

    fn lp(s: &str) -> LambdaPoly {
        LambdaPoly::constant(parse_rf(s).unwrap())
    }

    fn lterm(k: i32, s: &str) -> LambdaPoly {
        LambdaPoly::single(k, parse_rf(s).unwrap())
    }

    #[test]
    fn arithmetic_and_grades() {
        let p = &lterm(0, "z") + &lterm(2, "1");
        let q = &lterm(1, "z+1") - &lterm(2, "1");
        let prod = &p * &q;
        // (z + λ^2)(λ(z+1) - λ^2) = λ z(z+1) - λ^2 z + λ^3 (z+1) - λ^4
        assert_eq!(prod.coeff(1), parse_rf("z^2+z").unwrap());
        assert_eq!(prod.coeff(2), parse_rf("-z").unwrap());
        assert_eq!(prod.coeff(3), parse_rf("z+1").unwrap());
        assert_eq!(prod.coeff(4), parse_rf("-1").unwrap());
        assert_eq!(prod.min_deg(), Some(1));
        assert_eq!(prod.max_deg(), Some(4));
        assert!(!prod.is_lambda_free());
        assert!(lp("z^2").is_lambda_free());
    }

    #[test]
    fn cancellation_removes_grades() {
        let p = &lterm(1, "z") - &lterm(1, "z");
        assert!(p.is_zero());
        assert_eq!(p.min_deg(), None);
    }

    #[test]
    fn shift_and_mod() {
        let p = &lp("1") + &lterm(3, "z");
        let s = p.shift(2);
        assert_eq!(s.coeff(2), parse_rf("1").unwrap());
        assert_eq!(s.coeff(5), parse_rf("z").unwrap());
        let m = p.mod_lambda(3);
        assert!(m.is_one());
    }

    #[test]
    fn substitute_scales_grades() {
        let p = &lp("z") + &lterm(2, "z^2");
        let two = GaussianRational::from_int(2);
        let q = p.substitute(&two).unwrap();
        assert_eq!(q.coeff(0), parse_rf("z").unwrap());
        assert_eq!(q.coeff(2), parse_rf("4*z^2").unwrap());
        let zero = GaussianRational::zero();
        let r = p.substitute(&zero).unwrap();
        assert_eq!(r, lp("z"));
    }

    #[test]
    fn eval_with_negative_grade() {
        let p = LambdaPoly::single(-1, parse_rf("z").unwrap());
        let z0 = GaussianRational::from_int(3);
        let l0 = GaussianRational::i();
        // 3 / i = -3i
        let v = p.eval(&z0, &l0).unwrap();
        assert_eq!(v, &GaussianRational::i() * &GaussianRational::from_int(-3));
        assert!(p
            .eval(&z0, &GaussianRational::zero())
            .is_err());
    }

    #[test]
    fn second_transpose_reverses_products() {
        let n = 3;
        let mut x = LambdaMatrix::identity(n);
        x.set_entry(1, 2, lterm(1, "z"));
        x.set_entry(1, 3, lp("z^2"));
        let mut y = LambdaMatrix::identity(n);
        y.set_entry(2, 3, lp("i*z"));
        y.set_entry(1, 3, lterm(2, "7"));
        let lhs = x.mul(&y).second_transpose();
        let rhs = y.second_transpose().mul(&x.second_transpose());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn orthogonality_of_basic_example() {
        // [[1, -g, -g^2/2], [0, 1, g], [0, 0, 1]] has orthogonal columns.
        let g = "z^2";
        let mut a = LambdaMatrix::identity(3);
        a.set_entry(1, 2, lp(&alloc::format!("-({g})")));
        a.set_entry(1, 3, lp(&alloc::format!("-1/2*({g})^2")));
        a.set_entry(2, 3, lp(g));
        assert!(a.check_complex_orthogonal().is_ok());
        // Breaking one entry is detected.
        let mut b = a.clone();
        b.set_entry(1, 3, lp(g));
        let err = b.check_complex_orthogonal().unwrap_err();
        assert!(!err.residual.is_zero());
    }

    #[test]
    fn bilinear_pairs_against_reversed_index() {
        let v = vec![lp("1"), lp("z"), lp("0")];
        let w = vec![lp("0"), lp("2"), lp("z^3")];
        // (v, w) = v1 w3 + v2 w2 + v3 w1 = z^3 + 2z
        let p = LambdaMatrix::bilinear(&v, &w);
        assert_eq!(p, lp("z^3 + 2*z"));
    }

    #[test]
    fn scalar_matrix_involutions() {
        let mut m = ScalarMatrix::identity(3);
        m.set_entry(1, 2, GaussianRational::i());
        m.set_entry(3, 1, GaussianRational::from_int(5));
        assert_eq!(m.conj_null().conj_null(), m);
        assert_eq!(m.second_transpose().second_transpose(), m);
        assert_eq!(m.conj_transpose().conj_transpose(), m);
        // conj_null(I) = I
        assert!(ScalarMatrix::identity(4).conj_null().is_identity());
    }

    #[test]
    fn matrix_derivative_product_rule() {
        let mut x = LambdaMatrix::identity(2);
        x.set_entry(1, 2, lp("z^3"));
        let mut y = LambdaMatrix::identity(2);
        y.set_entry(1, 2, lterm(1, "z^2 - 1"));
        let lhs = x.mul(&y).derivative();
        let rhs_sum = {
            let a = x.derivative().mul(&y);
            let b = x.mul(&y.derivative());
            let mut out = LambdaMatrix::identity(2);
            for i in 1..=2 {
                for j in 1..=2 {
                    out.set_entry(i, j, &a.entry(i, j).clone() + &b.entry(i, j).clone());
                }
            }
            out
        };
        assert_eq!(lhs, rhs_sum);
    }
}
