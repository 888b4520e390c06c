//! Canonical elements: the non-increasing integer weight vectors that fix
//! the block structure of the matrices we work with, together with the
//! entrywise shape check those matrices must satisfy.
//!
//! A canonical element is ξ = (ξ_1, ..., ξ_n) with steps ξ_i - ξ_{i+1} in
//! {0, 1}, ξ_1 = r, ξ_n = 0, and the symmetry ξ_ī = r - ξ_i for ī = n+1-i.
//! When r is odd the two middle multiplicities must be at least 2. The type
//! is the multiplicity tuple (t_0, ..., t_r) with t_j = #{i : ξ_i = j}; it
//! determines ξ and vice versa. Σ_i ξ_i = nr/2, and r odd forces n even.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::RationalFunction;
use crate::lambdamat::{LambdaMatrix, LambdaPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    EmptyType,
    /// Every value 0..=r must occur: multiplicities are positive.
    ZeroMultiplicity { index: usize },
    /// t_j must equal t_{r-j}.
    AsymmetricType { index: usize },
    /// Odd r: the two middle multiplicities must be at least 2.
    MiddleTooSmall,
    /// ξ must step down by 0 or 1 (1-based index of the offending step).
    BadStep { index: usize },
    /// ξ_n must be 0.
    LastNotZero,
    /// ξ_ī must equal r - ξ_i (1-based index of the offending entry).
    AsymmetricWeights { index: usize },
}

impl fmt::Display for CanonicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalError::EmptyType => write!(f, "type tuple is empty"),
            CanonicalError::ZeroMultiplicity { index } => {
                write!(f, "type entry t_{index} must be positive")
            }
            CanonicalError::AsymmetricType { index } => {
                write!(f, "type must be palindromic; t_{index} breaks it")
            }
            CanonicalError::MiddleTooSmall => {
                write!(f, "odd uniton number needs middle multiplicities >= 2")
            }
            CanonicalError::BadStep { index } => {
                write!(f, "weights must step down by 0 or 1 at position {index}")
            }
            CanonicalError::LastNotZero => write!(f, "last weight must be 0"),
            CanonicalError::AsymmetricWeights { index } => {
                write!(f, "weights must satisfy the bar symmetry at position {index}")
            }
        }
    }
}

/// A validated canonical element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalElement {
    /// Weights ξ_1 >= ... >= ξ_n, length n.
    xi: Vec<usize>,
    /// Uniton number r = ξ_1.
    r: usize,
    /// Multiplicities t_j = #{i : ξ_i = j}, length r+1.
    t: Vec<usize>,
}

impl CanonicalElement {
    /// Build from the multiplicity tuple (t_0, ..., t_r).
    pub fn from_type(t: &[usize]) -> Result<Self, CanonicalError> {
        if t.is_empty() {
            return Err(CanonicalError::EmptyType);
        }
        let r = t.len() - 1;
        for (j, &tj) in t.iter().enumerate() {
            if tj == 0 {
                return Err(CanonicalError::ZeroMultiplicity { index: j });
            }
        }
        for j in 0..=r {
            if t[j] != t[r - j] {
                return Err(CanonicalError::AsymmetricType { index: j });
            }
        }
        if r % 2 == 1 && t[(r - 1) / 2] < 2 {
            return Err(CanonicalError::MiddleTooSmall);
        }
        // ξ is the non-increasing sequence with t_j copies of each value j.
        let mut xi = Vec::new();
        for j in (0..=r).rev() {
            for _ in 0..t[j] {
                xi.push(j);
            }
        }
        Ok(CanonicalElement {
            xi,
            r,
            t: t.to_vec(),
        })
    }

    /// Build from the weight vector, validating all constraints.
    pub fn from_weights(xi: &[usize]) -> Result<Self, CanonicalError> {
        if xi.is_empty() {
            return Err(CanonicalError::EmptyType);
        }
        let n = xi.len();
        let r = xi[0];
        if xi[n - 1] != 0 {
            return Err(CanonicalError::LastNotZero);
        }
        for i in 0..n - 1 {
            if xi[i] < xi[i + 1] || xi[i] - xi[i + 1] > 1 {
                return Err(CanonicalError::BadStep { index: i + 1 });
            }
        }
        for i in 0..n {
            if xi[i] + xi[n - 1 - i] != r {
                return Err(CanonicalError::AsymmetricWeights { index: i + 1 });
            }
        }
        let mut t = vec![0usize; r + 1];
        for &x in xi {
            t[x] += 1;
        }
        // Steps in {0,1} from r to 0 make every multiplicity positive; the
        // remaining constraint is the odd-r rider.
        if r % 2 == 1 && t[(r - 1) / 2] < 2 {
            return Err(CanonicalError::MiddleTooSmall);
        }
        Ok(CanonicalElement {
            xi: xi.to_vec(),
            r,
            t,
        })
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    /// The uniton number r.
    pub fn uniton_number(&self) -> usize {
        self.r
    }

    pub fn weights(&self) -> &[usize] {
        &self.xi
    }

    /// ξ_i, 1-based.
    pub fn xi(&self, i: usize) -> usize {
        self.xi[i - 1]
    }

    pub fn type_tuple(&self) -> &[usize] {
        &self.t
    }

    /// T_k = #{i : ξ_i >= k} for 0 <= k <= r+1; T_0 = n, T_{r+1} = 0.
    pub fn t_cum(&self, k: usize) -> usize {
        if k > self.r {
            return 0;
        }
        self.t[k..=self.r].iter().sum()
    }

    /// ī = n+1-i, 1-based.
    pub fn bar(&self, i: usize) -> usize {
        self.n() + 1 - i
    }

    /// The diagonal loop γ_ξ = diag(λ^{ξ_1}, ..., λ^{ξ_n}).
    pub fn gamma(&self) -> LambdaMatrix {
        let n = self.n();
        let mut g = LambdaMatrix::identity(n);
        for i in 1..=n {
            g.set_entry(
                i,
                i,
                LambdaPoly::single(self.xi(i) as i32, RationalFunction::one()),
            );
        }
        g
    }

    /// Largest admissible uniton number for a given dimension: n-1 when n is
    /// odd (all multiplicities 1), n-2 when n is even (a single 2 in the
    /// middle).
    pub fn max_uniton_number(n: usize) -> usize {
        if n % 2 == 1 {
            n - 1
        } else {
            n.saturating_sub(2)
        }
    }
}

/// Whether the second-diagonal degree sharpening is enforced. Matrices with
/// orthogonal columns satisfy it automatically; plain unitary-side shapes do
/// not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeBound {
    Basic,
    SecondDiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    /// Entries with ξ_i <= ξ_j must equal δ_ij.
    MustBeDelta,
    /// Entry has a λ-grade below 0.
    NegativeGrade,
    /// λ-degree exceeds ξ_i - ξ_j - 1 (or the sharpened second-diagonal
    /// bound ξ_i - ξ_ī - 2).
    DegreeTooHigh { bound: i32, found: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError {
    /// 1-based entry position.
    pub row: usize,
    pub col: usize,
    pub violation: ShapeViolation,
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what: String = match &self.violation {
            ShapeViolation::MustBeDelta => "must be the identity entry".into(),
            ShapeViolation::NegativeGrade => "has a negative loop grade".into(),
            ShapeViolation::DegreeTooHigh { bound, found } => {
                alloc::format!("loop degree {found} exceeds bound {bound}")
            }
        };
        write!(f, "entry ({}, {}) {}", self.row, self.col, what)
    }
}

/// Entrywise shape check: a_ij = δ_ij when ξ_i <= ξ_j; otherwise a_ij is a
/// polynomial in λ of degree <= ξ_i - ξ_j - 1 with no negative grades, and
/// (under `SecondDiagonal`) entries a_{i ī} with ξ_i - ξ_ī >= 2 are bounded
/// one lower. Coefficients may be arbitrary rational functions of z.
pub fn check_shape(
    a: &LambdaMatrix,
    xi: &CanonicalElement,
    bound: ShapeBound,
) -> Result<(), ShapeError> {
    assert_eq!(a.n(), xi.n(), "matrix and weights disagree on dimension");
    let n = a.n();
    for i in 1..=n {
        for j in 1..=n {
            let e = a.entry(i, j);
            let fail = |violation| {
                Err(ShapeError {
                    row: i,
                    col: j,
                    violation,
                })
            };
            if xi.xi(i) <= xi.xi(j) {
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return fail(ShapeViolation::MustBeDelta);
                }
                continue;
            }
            if e.is_zero() {
                continue;
            }
            if e.min_deg().is_some_and(|k| k < 0) {
                return fail(ShapeViolation::NegativeGrade);
            }
            let mut deg_bound = (xi.xi(i) - xi.xi(j)) as i32 - 1;
            if bound == ShapeBound::SecondDiagonal && j == xi.bar(i) && deg_bound >= 1 {
                deg_bound -= 1;
            }
            if let Some(top) = e.max_deg() {
                if top > deg_bound {
                    return fail(ShapeViolation::DegreeTooHigh {
                        bound: deg_bound,
                        found: top,
                    });
                }
            }
        }
    }
    Ok(())
}
