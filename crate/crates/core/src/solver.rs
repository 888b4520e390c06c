//! Construction and verification of extended solutions.
//!
//! A candidate is a block-unitriangular loop matrix A paired with a weight
//! vector ξ. Validity means the columns satisfy the first-order system
//! c_k' = Σ_{j: ξ_j > ξ_k} λ^{ξ_j - ξ_k - 1} ρ_jk' c_j for every k with
//! ξ_k < r, where ρ_jk is the λ-coefficient of a_jk at grade ξ_j - ξ_k - 1.
//! The rowwise and truncated-rowwise forms of the same system are provided
//! as cross-checks; for shape-valid matrices the three verdicts always
//! agree. Constructors produce solutions from free meromorphic data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canonical::{check_shape, CanonicalElement, CanonicalError, ShapeBound, ShapeError};
use crate::exactnum::{GaussianRational, RationalFunction};
use crate::lambdamat::{LambdaMatrix, LambdaPoly, OrthogonalityFailure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// The weight vector is invalid.
    Canonical(CanonicalError),
    /// The matrix violates the shape constraints for its weights.
    Shape(ShapeError),
    /// The matrix is not complex-orthogonal.
    Orthogonality(OrthogonalityFailure),
    /// A generalized derivative was requested with an identically zero
    /// divisor.
    DegenerateDenominator,
    /// Free data violates a non-constancy condition; names the offending
    /// parameter (or derived quantity).
    DegenerateData { param: String },
    /// The block B of a unitriangular 2x2-block matrix fails B^TT = -B.
    NotSkew { row: usize, col: usize },
    /// A constructor parameter is missing from the supplied data.
    MissingParameter { name: String },
    /// The requested weight type has no constructor.
    UnknownType,
    /// Completion by algebra found both the top row and the last column
    /// populated (exactly one must be).
    InconsistentBorder,
    /// The weight vector has no canonical interior (size below 3, or the
    /// interior would have an invalid type).
    NoInterior,
    /// An input has the wrong length or dimension.
    SizeMismatch { expected: usize, found: usize },
    /// The perturbation target is not a free top-row position.
    InvalidPerturbation,
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::Canonical(e) => write!(f, "invalid weights: {e}"),
            SolverError::Shape(e) => write!(f, "shape violation: {e}"),
            SolverError::Orthogonality(e) => write!(f, "orthogonality failure: {e}"),
            SolverError::DegenerateDenominator => {
                write!(f, "generalized derivative divisor is identically zero")
            }
            SolverError::DegenerateData { param } => {
                write!(f, "degenerate data: {param} must be non-constant")
            }
            SolverError::NotSkew { row, col } => {
                write!(f, "block entry ({row}, {col}) violates B^TT = -B")
            }
            SolverError::MissingParameter { name } => {
                write!(f, "missing parameter: {name}")
            }
            SolverError::UnknownType => write!(f, "no constructor for this weight type"),
            SolverError::InconsistentBorder => {
                write!(f, "exactly one of top row and last column must be populated")
            }
            SolverError::NoInterior => {
                write!(f, "weights admit no canonical interior")
            }
            SolverError::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            SolverError::InvalidPerturbation => {
                write!(f, "perturbation target is not a free top-row position")
            }
        }
    }
}

impl From<CanonicalError> for SolverError {
    fn from(e: CanonicalError) -> Self {
        SolverError::Canonical(e)
    }
}

impl From<ShapeError> for SolverError {
    fn from(e: ShapeError) -> Self {
        SolverError::Shape(e)
    }
}

impl From<OrthogonalityFailure> for SolverError {
    fn from(e: OrthogonalityFailure) -> Self {
        SolverError::Orthogonality(e)
    }
}

/// A shape-valid, complex-orthogonal loop matrix together with its weights.
/// Construction enforces both invariants; whether the first-order system
/// holds is checked separately by [`check_extended_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCandidate {
    a: LambdaMatrix,
    xi: CanonicalElement,
}

impl SolutionCandidate {
    pub fn new(a: LambdaMatrix, xi: CanonicalElement) -> Result<Self, SolverError> {
        if a.n() != xi.n() {
            return Err(SolverError::SizeMismatch {
                expected: xi.n(),
                found: a.n(),
            });
        }
        check_shape(&a, &xi, ShapeBound::Basic)?;
        a.check_complex_orthogonal()?;
        Ok(SolutionCandidate { a, xi })
    }

    pub fn matrix(&self) -> &LambdaMatrix {
        &self.a
    }

    pub fn element(&self) -> &CanonicalElement {
        &self.xi
    }

    pub fn into_parts(self) -> (LambdaMatrix, CanonicalElement) {
        (self.a, self.xi)
    }
}

/// ρ_jk for every pair with ξ_j > ξ_k: the λ-coefficient of a_jk at grade
/// ξ_j - ξ_k - 1 (zero when the entry has no such term).
#[derive(Debug, Clone)]
pub struct RhoTable {
    rho: BTreeMap<(usize, usize), RationalFunction>,
}

impl RhoTable {
    /// Zero for pairs outside the table (those with ξ_j <= ξ_k).
    pub fn get(&self, j: usize, k: usize) -> RationalFunction {
        self.rho
            .get(&(j, k))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &RationalFunction)> {
        self.rho.iter()
    }
}

pub fn rho_table(a: &LambdaMatrix, xi: &CanonicalElement) -> RhoTable {
    assert_eq!(a.n(), xi.n(), "matrix and weights disagree on dimension");
    let n = a.n();
    let mut rho = BTreeMap::new();
    for j in 1..=n {
        for k in 1..=n {
            if xi.xi(j) > xi.xi(k) {
                let grade = (xi.xi(j) - xi.xi(k)) as i32 - 1;
                rho.insert((j, k), a.entry(j, k).coeff(grade));
            }
        }
    }
    RhoTable { rho }
}

/// The three equivalent formulations of the first-order system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeMode {
    /// Columnwise: c_k' = Σ_{j: ξ_j > ξ_k} λ^{ξ_j-ξ_k-1} ρ_jk' c_j for
    /// every column with ξ_k < r.
    Columns,
    /// Rowwise: a_ik' = Σ_{j: ξ_k < ξ_j <= ξ_i} λ^{ξ_j-ξ_k-1} ρ_jk' a_ij
    /// for every pair with ξ_i > ξ_k.
    Rows,
    /// Truncated rowwise: the sum restricted to ξ_k < ξ_j < ξ_i, as a
    /// congruence mod λ^{ξ_i-ξ_k-1}, for pairs with ξ_i > ξ_k + 1.
    Truncated,
}

/// One failing scalar equation: residual = left side minus right side
/// (reduced by the relevant modulus in truncated mode).
#[derive(Debug, Clone)]
pub struct OdeFailure {
    pub row: usize,
    pub col: usize,
    pub residual: LambdaPoly,
}

/// Residuals of the first-order system on raw parts. Empty means the system
/// holds exactly. No shape or orthogonality assumptions are made here; for
/// matrices violating them the three modes may legitimately disagree.
pub fn ode_residuals(a: &LambdaMatrix, xi: &CanonicalElement, mode: OdeMode) -> Vec<OdeFailure> {
    assert_eq!(a.n(), xi.n(), "matrix and weights disagree on dimension");
    let n = a.n();
    let rho = rho_table(a, xi);
    let mut failures = Vec::new();
    match mode {
        OdeMode::Columns => {
            let r = xi.uniton_number();
            for k in 1..=n {
                if xi.xi(k) >= r {
                    continue;
                }
                for i in 1..=n {
                    let mut res = a.entry(i, k).derivative();
                    for j in 1..=n {
                        if xi.xi(j) > xi.xi(k) {
                            let shift = (xi.xi(j) - xi.xi(k)) as i32 - 1;
                            let term = a
                                .entry(i, j)
                                .scale(&rho.get(j, k).derivative())
                                .shift(shift);
                            res = &res - &term;
                        }
                    }
                    if !res.is_zero() {
                        failures.push(OdeFailure {
                            row: i,
                            col: k,
                            residual: res,
                        });
                    }
                }
            }
        }
        OdeMode::Rows => {
            for i in 1..=n {
                for k in 1..=n {
                    if xi.xi(i) <= xi.xi(k) {
                        continue;
                    }
                    let mut res = a.entry(i, k).derivative();
                    for j in 1..=n {
                        if xi.xi(j) > xi.xi(k) && xi.xi(j) <= xi.xi(i) {
                            let shift = (xi.xi(j) - xi.xi(k)) as i32 - 1;
                            let term = a
                                .entry(i, j)
                                .scale(&rho.get(j, k).derivative())
                                .shift(shift);
                            res = &res - &term;
                        }
                    }
                    if !res.is_zero() {
                        failures.push(OdeFailure {
                            row: i,
                            col: k,
                            residual: res,
                        });
                    }
                }
            }
        }
        OdeMode::Truncated => {
            for i in 1..=n {
                for k in 1..=n {
                    if xi.xi(i) <= xi.xi(k) + 1 {
                        continue;
                    }
                    let m = (xi.xi(i) - xi.xi(k)) as i32 - 1;
                    let mut res = a.entry(i, k).derivative();
                    for j in 1..=n {
                        if xi.xi(j) > xi.xi(k) && xi.xi(j) < xi.xi(i) {
                            let shift = (xi.xi(j) - xi.xi(k)) as i32 - 1;
                            let term = a
                                .entry(i, j)
                                .scale(&rho.get(j, k).derivative())
                                .shift(shift);
                            res = &res - &term;
                        }
                    }
                    let res = res.mod_lambda(m);
                    if !res.is_zero() {
                        failures.push(OdeFailure {
                            row: i,
                            col: k,
                            residual: res,
                        });
                    }
                }
            }
        }
    }
    failures
}

/// Verdicts of all three formulations on one candidate.
#[derive(Debug, Clone)]
pub struct OdeReport {
    pub columns: Vec<OdeFailure>,
    pub rows: Vec<OdeFailure>,
    pub truncated: Vec<OdeFailure>,
}

impl OdeReport {
    /// The candidate is an extended solution (columnwise verdict).
    pub fn passes(&self) -> bool {
        self.columns.is_empty()
    }

    /// The three formulations reach the same verdict. Guaranteed for
    /// shape-valid matrices.
    pub fn modes_agree(&self) -> bool {
        self.columns.is_empty() == self.rows.is_empty()
            && self.rows.is_empty() == self.truncated.is_empty()
    }
}

pub fn check_extended_solution(cand: &SolutionCandidate) -> OdeReport {
    OdeReport {
        columns: ode_residuals(cand.matrix(), cand.element(), OdeMode::Columns),
        rows: ode_residuals(cand.matrix(), cand.element(), OdeMode::Rows),
        truncated: ode_residuals(cand.matrix(), cand.element(), OdeMode::Truncated),
    }
}

/// Weights of the interior block (rows and columns 2..n-1), normalized so
/// the last weight is zero. Fails when no canonical interior exists.
pub fn interior_element(xi: &CanonicalElement) -> Result<CanonicalElement, SolverError> {
    let n = xi.n();
    if n < 3 {
        return Err(SolverError::NoInterior);
    }
    let s = xi.xi(n - 1);
    let w: Vec<usize> = (2..n).map(|i| xi.xi(i) - s).collect();
    CanonicalElement::from_weights(&w).map_err(|_| SolverError::NoInterior)
}

/// The interior block (rows and columns 2..n-1).
pub fn interior_matrix(a: &LambdaMatrix) -> LambdaMatrix {
    let n = a.n();
    assert!(n >= 3, "interior requires size at least 3");
    let rows: Vec<Vec<LambdaPoly>> = (2..n)
        .map(|i| (2..n).map(|j| a.entry(i, j).clone()).collect())
        .collect();
    LambdaMatrix::from_rows(rows)
}

/// Independent verdicts on the full system, the top-row border reduction,
/// and the last-column border reduction. When the interior satisfies the
/// system, the last three verdicts provably coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderReport {
    pub interior: bool,
    pub full: bool,
    pub top_row: bool,
    pub last_column: bool,
}

impl BorderReport {
    pub fn verdicts_agree(&self) -> bool {
        self.full == self.top_row && self.top_row == self.last_column
    }
}

/// Evaluate the full system alongside the two border reductions:
/// top row: a_1j' = Σ_{i: ξ_i > ξ_j} λ^{ξ_i-ξ_j-1} ρ_ij' a_1i
///          mod λ^{r-ξ_j-1}  (j = 2..n-1);
/// last column: a_in' = Σ_{j: 0 < ξ_j <= ξ_i} λ^{ξ_j-1} ρ_jn' a_ij
///              mod λ^{ξ_i-1}  (i = 2..n-1).
/// A congruence with modulus exponent <= 0 is vacuous.
pub fn check_border_equivalence(cand: &SolutionCandidate) -> Result<BorderReport, SolverError> {
    let a = cand.matrix();
    let xi = cand.element();
    let n = a.n();
    let r = xi.uniton_number();
    let inner_xi = interior_element(xi)?;
    let inner_a = interior_matrix(a);
    let interior = ode_residuals(&inner_a, &inner_xi, OdeMode::Columns).is_empty();
    let full = ode_residuals(a, xi, OdeMode::Columns).is_empty();
    let rho = rho_table(a, xi);

    let mut top_row = true;
    for j in 2..n {
        let m = r as i32 - xi.xi(j) as i32 - 1;
        if m <= 0 {
            continue;
        }
        let mut res = a.entry(1, j).derivative();
        for i in 1..=n {
            if xi.xi(i) > xi.xi(j) {
                let shift = (xi.xi(i) - xi.xi(j)) as i32 - 1;
                let term = a
                    .entry(1, i)
                    .scale(&rho.get(i, j).derivative())
                    .shift(shift);
                res = &res - &term;
            }
        }
        if !res.mod_lambda(m).is_zero() {
            top_row = false;
        }
    }

    let mut last_column = true;
    for i in 2..n {
        let m = xi.xi(i) as i32 - 1;
        if m <= 0 {
            continue;
        }
        let mut res = a.entry(i, n).derivative();
        for j in 1..=n {
            if xi.xi(j) > 0 && xi.xi(j) <= xi.xi(i) {
                let shift = xi.xi(j) as i32 - 1;
                let term = a
                    .entry(i, j)
                    .scale(&rho.get(j, n).derivative())
                    .shift(shift);
                res = &res - &term;
            }
        }
        if !res.mod_lambda(m).is_zero() {
            last_column = false;
        }
    }

    Ok(BorderReport {
        interior,
        full,
        top_row,
        last_column,
    })
}

/// ν'/e, exact. The divisor is supplied directly (pass g' to differentiate
/// with respect to g).
pub fn generalized_derivative(
    nu: &RationalFunction,
    e: &RationalFunction,
) -> Result<RationalFunction, SolverError> {
    if e.is_zero() {
        return Err(SolverError::DegenerateDenominator);
    }
    Ok(nu
        .derivative()
        .checked_div(e)
        .expect("divisor checked nonzero"))
}

fn neg_half() -> RationalFunction {
    RationalFunction::constant(GaussianRational::from_ratio(-1, 2))
}

/// Fill the last column of the window [lo, hi] (local reversal
/// i -> lo+hi-i) from its top row, using the bilinear relations
/// (c_j, c_hi) = 0 for j = lo+1..hi-1 in increasing order, then the corner
/// from (c_hi, c_hi) = 0.
fn complete_window_row_to_col(a: &mut LambdaMatrix, lo: usize, hi: usize) {
    for j in lo + 1..hi {
        let mut s = a.entry(lo, j).clone();
        for l in lo + 1..j {
            s = &s + &(a.entry(l, j) * a.entry(lo + hi - l, hi));
        }
        a.set_entry(lo + hi - j, hi, -&s);
    }
    complete_window_corner(a, lo, hi);
}

/// Fill the top row of the window [lo, hi] from its last column by the same
/// relations, then the corner.
fn complete_window_col_to_row(a: &mut LambdaMatrix, lo: usize, hi: usize) {
    for j in lo + 1..hi {
        let mut s = a.entry(lo + hi - j, hi).clone();
        for l in lo + 1..j {
            s = &s + &(a.entry(l, j) * a.entry(lo + hi - l, hi));
        }
        a.set_entry(lo, j, -&s);
    }
    complete_window_corner(a, lo, hi);
}

/// Corner entry from (c_hi, c_hi) = 0: a_{lo,hi} = -(1/2) Σ a_{l,hi} a_{l',hi}
/// over interior l with l' the window reversal of l.
fn complete_window_corner(a: &mut LambdaMatrix, lo: usize, hi: usize) {
    let mut s = LambdaPoly::zero();
    for l in lo + 1..hi {
        s = &s + &(a.entry(l, hi) * a.entry(lo + hi - l, hi));
    }
    a.set_entry(lo, hi, s.scale(&neg_half()));
}

/// Complete a bordered matrix by orthogonality algebra. Exactly one of the
/// new top row (entries (1, 2..n-1)) and the new last column (entries
/// (2..n-1, n)) must be populated; the other border and the corner are
/// solved from the bilinear relations (c_j, c_n) = 0 and (c_n, c_n) = 0.
/// The interior block must itself be complex-orthogonal and the matrix
/// upper unitriangular.
pub fn complete_by_algebra(
    partial: &LambdaMatrix,
    xi: &CanonicalElement,
) -> Result<LambdaMatrix, SolverError> {
    let n = partial.n();
    if n != xi.n() {
        return Err(SolverError::SizeMismatch {
            expected: xi.n(),
            found: n,
        });
    }
    if !partial.is_upper_unitriangular() {
        return Err(SolverError::InconsistentBorder);
    }
    let top_populated = (2..n).any(|j| !partial.entry(1, j).is_zero());
    let col_populated = (2..n).any(|i| !partial.entry(i, n).is_zero());
    if top_populated && col_populated {
        return Err(SolverError::InconsistentBorder);
    }
    if n >= 3 {
        interior_matrix(partial).check_complex_orthogonal()?;
    }
    let mut out = partial.clone();
    out.set_entry(1, n, LambdaPoly::zero());
    if col_populated {
        for j in 2..n {
            out.set_entry(1, j, LambdaPoly::zero());
        }
        complete_window_col_to_row(&mut out, 1, n);
    } else {
        for i in 2..n {
            out.set_entry(i, n, LambdaPoly::zero());
        }
        complete_window_row_to_col(&mut out, 1, n);
    }
    Ok(out)
}

/// Named free meromorphic data for the constructors. `nondegenerate_flags`
/// records, for the conditions listed by [`nondegeneracy_conditions`],
/// whether the data satisfies them (filled by [`FreeData::with_flags`];
/// constructors enforce the conditions regardless and report violations as
/// [`SolverError::DegenerateData`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeData {
    pub params: Vec<(String, RationalFunction)>,
    pub nondegenerate_flags: Vec<(String, bool)>,
}

impl FreeData {
    pub fn new(params: Vec<(String, RationalFunction)>) -> Self {
        FreeData {
            params,
            nondegenerate_flags: Vec::new(),
        }
    }

    /// Like [`FreeData::new`] but also fills `nondegenerate_flags` for the
    /// given weight type.
    pub fn with_flags(params: Vec<(String, RationalFunction)>, ty: &[usize]) -> Self {
        let mut data = FreeData::new(params);
        data.nondegenerate_flags = nondegeneracy_conditions(ty)
            .into_iter()
            .map(|name| {
                let holds = data.get(&name).is_some_and(|f| f.is_nonconstant());
                (name, holds)
            })
            .collect();
        data
    }

    pub fn get(&self, name: &str) -> Option<&RationalFunction> {
        self.params
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v)
    }

    fn require(&self, name: &str) -> Result<&RationalFunction, SolverError> {
        self.get(name).ok_or_else(|| SolverError::MissingParameter {
            name: name.to_string(),
        })
    }
}

/// Parameter names expected by [`build_low_dim`] for a weight type, or None
/// when the type has no constructor.
pub fn parameter_schema(ty: &[usize]) -> Option<Vec<String>> {
    let names: Vec<&str> = match ty {
        [_] => vec![],
        [1, 1, 1] => vec!["g"],
        [2, 2] => vec!["g"],
        [1, 2, 1] => vec!["g1", "g2"],
        [2, 1, 2] => vec!["g", "nu", "sigma"],
        [1, 3, 1] => vec!["nu1", "nu2", "nu3"],
        [1, 1, 1, 1, 1] => vec!["g", "nu1", "nu2", "nu3"],
        [3, 3] => vec!["g", "h", "k"],
        [1, 4, 1] => vec!["nu1", "nu2", "nu3", "nu4"],
        [2, 2, 2] => vec!["g1", "g2", "nu1", "nu2", "nu3"],
        [1, 2, 2, 1] => vec!["g", "nu1", "nu2", "nu3", "nu4"],
        [1, 1, 2, 1, 1] => vec!["g1", "h1", "h2"],
        _ => {
            if ty.len() % 2 == 1 && ty.iter().all(|&t| t == 1) {
                let m = ty.len() / 2;
                return Some((1..=m).map(|i| format!("mu{i}")).collect());
            }
            return None;
        }
    };
    Some(names.into_iter().map(String::from).collect())
}

/// Base parameters that must be non-constant for the constructor of the
/// given type (derived chain conditions are enforced by the constructors
/// themselves).
pub fn nondegeneracy_conditions(ty: &[usize]) -> Vec<String> {
    let names: Vec<&str> = match ty {
        [2, 1, 2] => vec!["g"],
        [1, 1, 1, 1, 1] => vec!["g"],
        [2, 2, 2] => vec!["g1"],
        [1, 2, 2, 1] => vec!["g"],
        [1, 1, 2, 1, 1] => vec!["g1", "h1"],
        _ => vec![],
    };
    names.into_iter().map(String::from).collect()
}

/// Output of [`build_type_ones`]: the candidate plus the derived quantities
/// of the construction. `chains[i-1][d]` is the d-fold generalized
/// derivative of μ_i along the chain; `rho[k-1]` is the superdiagonal
/// coefficient function at position (k, k+1). `fully_nondegenerate` records
/// whether the last chain top is also non-constant (the first m-1 are
/// required to be).
#[derive(Debug, Clone)]
pub struct TypeOnesSolution {
    pub candidate: SolutionCandidate,
    pub rho: Vec<RationalFunction>,
    pub chains: Vec<Vec<RationalFunction>>,
    pub fully_nondegenerate: bool,
}

/// Build the solution of type (1,...,1), size n = 2m+1, from m free
/// functions. Chains: μ_i^(d) = (μ_i^(d-1))' / ρ_{m+i-d}', for d = 1..2i-2;
/// superdiagonal data ρ_{m+1-i} = μ_i^(2i-2), ρ_{m+i} = -μ_i^(2i-2);
/// formula slots a_ij = μ_{m+1-i}^(2m+1-i-j) for i < j with i + j <= 2m+1;
/// the remaining entries follow by completing the nested central windows by
/// algebra. Requires μ_i^(2i-2) non-constant for i = 1..m-1.
pub fn build_type_ones(mu: &[RationalFunction]) -> Result<TypeOnesSolution, SolverError> {
    let m = mu.len();
    let n = 2 * m + 1;
    let xi = CanonicalElement::from_type(&vec![1; n])?;

    let mut rho: Vec<Option<RationalFunction>> = vec![None; n];
    let mut chains: Vec<Vec<RationalFunction>> = Vec::with_capacity(m);
    let mut fully_nondegenerate = true;
    for i in 1..=m {
        let mut chain = vec![mu[i - 1].clone()];
        for d in 1..=(2 * i - 2) {
            let divisor = rho[m + i - d]
                .as_ref()
                .expect("divisor set by an earlier round")
                .derivative();
            let next = generalized_derivative(chain.last().expect("chain nonempty"), &divisor)?;
            chain.push(next);
        }
        let top = chain.last().expect("chain nonempty").clone();
        if top.is_constant() {
            if i < m {
                return Err(SolverError::DegenerateData {
                    param: format!("mu{i}"),
                });
            }
            fully_nondegenerate = false;
        }
        rho[m + 1 - i] = Some(top.clone());
        rho[m + i] = Some(-&top);
        chains.push(chain);
    }

    let mut a = LambdaMatrix::identity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if i + j <= n {
                let f = chains[m - i][n - i - j].clone();
                a.set_entry(i, j, LambdaPoly::constant(f));
            }
        }
    }
    for s in 1..=m {
        complete_window_row_to_col(&mut a, m + 1 - s, m + 1 + s);
    }

    let candidate = SolutionCandidate::new(a, xi)?;
    let rho: Vec<RationalFunction> = rho.into_iter().skip(1).map(|f| f.expect("all set")).collect();
    Ok(TypeOnesSolution {
        candidate,
        rho,
        chains,
        fully_nondegenerate,
    })
}

/// Read the free functions back off a type (1,...,1) candidate:
/// μ_i = a_{m-i+1, m+i}.
pub fn type_ones_parameters(cand: &SolutionCandidate) -> Result<Vec<RationalFunction>, SolverError> {
    let xi = cand.element();
    if !xi.type_tuple().iter().all(|&t| t == 1) {
        return Err(SolverError::UnknownType);
    }
    let m = xi.n() / 2;
    let mut mu = Vec::with_capacity(m);
    for i in 1..=m {
        let e = cand.matrix().entry(m - i + 1, m + i);
        mu.push(e.lambda_free_part());
    }
    Ok(mu)
}

/// Build the solution of type (m, m) from an m x m block B with B^TT = -B
/// (reversed transpose): A = [[I, B], [0, I]].
pub fn build_r1(b: &[Vec<RationalFunction>]) -> Result<SolutionCandidate, SolverError> {
    let m = b.len();
    for row in b {
        if row.len() != m {
            return Err(SolverError::SizeMismatch {
                expected: m,
                found: row.len(),
            });
        }
    }
    for i in 0..m {
        for j in 0..m {
            if b[m - 1 - j][m - 1 - i] != -&b[i][j] {
                return Err(SolverError::NotSkew {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }
    let xi = CanonicalElement::from_type(&[m, m])?;
    let mut a = LambdaMatrix::identity(2 * m);
    for i in 1..=m {
        for j in 1..=m {
            if !b[i - 1][j - 1].is_zero() {
                a.set_entry(i, m + j, LambdaPoly::constant(b[i - 1][j - 1].clone()));
            }
        }
    }
    SolutionCandidate::new(a, xi)
}

/// Build the solution of type (1, n-2, 1) from n-2 free functions filling
/// the top row; the last column and corner follow by algebra. The output is
/// always λ-free.
pub fn build_1t1(n: usize, nu: &[RationalFunction]) -> Result<SolutionCandidate, SolverError> {
    if n < 3 {
        return Err(SolverError::UnknownType);
    }
    if nu.len() != n - 2 {
        return Err(SolverError::SizeMismatch {
            expected: n - 2,
            found: nu.len(),
        });
    }
    let xi = CanonicalElement::from_type(&[1, n - 2, 1])?;
    let mut a = LambdaMatrix::identity(n);
    for j in 2..n {
        if !nu[j - 2].is_zero() {
            a.set_entry(1, j, LambdaPoly::constant(nu[j - 2].clone()));
        }
    }
    complete_window_row_to_col(&mut a, 1, n);
    SolutionCandidate::new(a, xi)
}

fn lp(f: RationalFunction) -> LambdaPoly {
    LambdaPoly::constant(f)
}

/// All entries independent of λ.
pub fn is_s1_invariant(a: &LambdaMatrix) -> bool {
    a.is_lambda_free()
}

/// All entries supported on even λ-grades.
pub fn is_symmetric_type(a: &LambdaMatrix) -> bool {
    let n = a.n();
    (1..=n).all(|i| (1..=n).all(|j| a.entry(i, j).only_even_grades()))
}

fn degenerate(param: &str) -> SolverError {
    SolverError::DegenerateData {
        param: param.to_string(),
    }
}

/// Explicit constructor for every canonical type of size at most 6, the
/// single-block type (n), and type (1,...,1) of any odd size. Parameter
/// names per type are listed by [`parameter_schema`].
pub fn build_low_dim(ty: &[usize], data: &FreeData) -> Result<SolutionCandidate, SolverError> {
    match ty {
        [n0] => {
            let xi = CanonicalElement::from_type(&[*n0])?;
            SolutionCandidate::new(LambdaMatrix::identity(xi.n()), xi)
        }
        [1, 1, 1] => {
            let g = data.require("g")?;
            build_1t1(3, &[-g])
        }
        [2, 2] => {
            let g = data.require("g")?;
            let zero = RationalFunction::zero();
            build_r1(&[vec![-g, zero.clone()], vec![zero, g.clone()]])
        }
        [1, 2, 1] => {
            let g1 = data.require("g1")?;
            let g2 = data.require("g2")?;
            build_1t1(4, &[-g1, -g2])
        }
        [2, 1, 2] => {
            let g = data.require("g")?;
            let nu = data.require("nu")?;
            let sigma = data.require("sigma")?;
            if g.is_constant() {
                return Err(degenerate("g"));
            }
            let nu1 = generalized_derivative(nu, &g.derivative())?;
            let xi = CanonicalElement::from_type(ty)?;
            let mut a = LambdaMatrix::identity(5);
            a.set_entry(2, 3, lp(g.clone()));
            a.set_entry(2, 4, lp(&g.pow(2) * &neg_half()));
            a.set_entry(3, 4, lp(-g));
            a.set_entry(
                2,
                5,
                &lp(&(&-nu + &(g * &nu1))) + &LambdaPoly::single(1, -sigma),
            );
            a.set_entry(3, 5, lp(nu1));
            complete_window_col_to_row(&mut a, 1, 5);
            SolutionCandidate::new(a, xi)
        }
        [1, 3, 1] => {
            let nus = [
                data.require("nu1")?.clone(),
                data.require("nu2")?.clone(),
                data.require("nu3")?.clone(),
            ];
            build_1t1(5, &nus)
        }
        [1, 1, 1, 1, 1] => {
            let g = data.require("g")?;
            let nu1 = data.require("nu1")?;
            let nu2 = data.require("nu2")?;
            let nu3 = data.require("nu3")?;
            let inner = build_type_ones(&[-g, nu1.clone()]).map_err(|e| match e {
                SolverError::DegenerateData { .. } => degenerate("g"),
                other => other,
            })?;
            let (mut a, xi) = inner.candidate.into_parts();
            let nu2_1 = generalized_derivative(nu2, &g.derivative())?;
            let a25_extra = &LambdaPoly::single(1, -&(nu2 - &(g * &nu2_1)))
                + &LambdaPoly::single(2, -nu3);
            a.set_entry(2, 5, &a.entry(2, 5).clone() + &a25_extra);
            a.set_entry(
                3,
                5,
                &a.entry(3, 5).clone() + &LambdaPoly::single(1, -&nu2_1),
            );
            for j in 2..=5 {
                a.set_entry(1, j, LambdaPoly::zero());
            }
            complete_window_col_to_row(&mut a, 1, 5);
            SolutionCandidate::new(a, xi)
        }
        [3, 3] => {
            let g = data.require("g")?;
            let h = data.require("h")?;
            let k = data.require("k")?;
            let zero = RationalFunction::zero();
            build_r1(&[
                vec![-h, -k, zero.clone()],
                vec![-g, zero.clone(), k.clone()],
                vec![zero, g.clone(), h.clone()],
            ])
        }
        [1, 4, 1] => {
            let nus = [
                data.require("nu1")?.clone(),
                data.require("nu2")?.clone(),
                data.require("nu3")?.clone(),
                data.require("nu4")?.clone(),
            ];
            build_1t1(6, &nus)
        }
        [2, 2, 2] => {
            let g1 = data.require("g1")?;
            let g2 = data.require("g2")?;
            let nu1 = data.require("nu1")?;
            let nu2 = data.require("nu2")?;
            let nu3 = data.require("nu3")?;
            if g1.is_constant() {
                return Err(degenerate("g1"));
            }
            let xi = CanonicalElement::from_type(ty)?;
            let mut a = LambdaMatrix::identity(6);
            a.set_entry(2, 3, lp(-g1));
            a.set_entry(2, 4, lp(-g2));
            a.set_entry(2, 5, lp(-&(g1 * g2)));
            a.set_entry(3, 5, lp(g2.clone()));
            a.set_entry(4, 5, lp(g1.clone()));
            a.set_entry(1, 3, lp(nu1.clone()));
            let a14 = (&nu2.derivative() - &(&g2.derivative() * nu1))
                .checked_div(&g1.derivative())
                .expect("g1 nonconstant checked");
            a.set_entry(1, 4, lp(a14));
            a.set_entry(1, 5, &lp(nu2.clone()) + &LambdaPoly::single(1, nu3.clone()));
            complete_window_row_to_col(&mut a, 1, 6);
            SolutionCandidate::new(a, xi)
        }
        [1, 2, 2, 1] => {
            let g = data.require("g")?;
            let nu1 = data.require("nu1")?;
            let nu2 = data.require("nu2")?;
            let nu3 = data.require("nu3")?;
            let nu4 = data.require("nu4")?;
            if g.is_constant() {
                return Err(degenerate("g"));
            }
            let nu1_1 = generalized_derivative(nu1, &g.derivative())?;
            let nu2_1 = generalized_derivative(nu2, &g.derivative())?;
            let xi = CanonicalElement::from_type(ty)?;
            let mut a = LambdaMatrix::identity(6);
            a.set_entry(2, 4, lp(g.clone()));
            a.set_entry(3, 5, lp(-g));
            a.set_entry(
                2,
                6,
                &lp(&(nu2 - &(g * &nu2_1))) + &LambdaPoly::single(1, -nu4),
            );
            a.set_entry(
                3,
                6,
                &lp(&(&(g * &nu1_1) - nu1)) + &LambdaPoly::single(1, -nu3),
            );
            a.set_entry(4, 6, lp(-&nu2_1));
            a.set_entry(5, 6, lp(-&nu1_1));
            complete_window_col_to_row(&mut a, 1, 6);
            SolutionCandidate::new(a, xi)
        }
        [1, 1, 2, 1, 1] => {
            let g1 = data.require("g1")?;
            let h1 = data.require("h1")?;
            let h2 = data.require("h2")?;
            if g1.is_constant() {
                return Err(degenerate("g1"));
            }
            let chi1 = generalized_derivative(h1, &g1.derivative())?;
            let chi3 = generalized_derivative(h2, &g1.derivative())?;
            if chi1.is_constant() {
                return Err(degenerate("h1"));
            }
            let g2 = chi3
                .derivative()
                .checked_div(&chi1.derivative())
                .expect("chi1 nonconstant checked");
            let chi2 = &(g1 * &chi1) - h1;
            let chi4 = h2 - &(g1 * &chi3);
            let xi = CanonicalElement::from_type(ty)?;
            let mut a = LambdaMatrix::identity(6);
            a.set_entry(2, 3, lp(-g1));
            a.set_entry(2, 4, lp(-&g2));
            a.set_entry(2, 5, lp(-&(g1 * &g2)));
            a.set_entry(3, 5, lp(g2));
            a.set_entry(4, 5, lp(g1.clone()));
            a.set_entry(2, 6, lp(chi4));
            a.set_entry(3, 6, lp(chi3));
            a.set_entry(4, 6, lp(chi2));
            a.set_entry(5, 6, lp(chi1));
            complete_window_col_to_row(&mut a, 1, 6);
            SolutionCandidate::new(a, xi)
        }
        _ => {
            if ty.len() % 2 == 1 && ty.iter().all(|&t| t == 1) {
                let m = ty.len() / 2;
                let mut mu = Vec::with_capacity(m);
                for i in 1..=m {
                    mu.push(data.require(&format!("mu{i}"))?.clone());
                }
                return Ok(build_type_ones(&mu)?.candidate);
            }
            Err(SolverError::UnknownType)
        }
    }
}

/// Smallest top-row position whose perturbation can break the system while
/// staying shape-valid and orthogonal: a column j in 2..n-1 with
/// ξ_j <= r - 2. None when every orthogonal shape-valid matrix of this type
/// is automatically a solution.
pub fn breaking_column(xi: &CanonicalElement) -> Option<usize> {
    let n = xi.n();
    let r = xi.uniton_number();
    if r < 2 {
        return None;
    }
    (2..n).find(|&j| xi.xi(j) + 2 <= r)
}

/// Add `delta` to the λ-free part of the top-row entry (1, col) and rebuild
/// the last column by algebra. The result is again shape-valid and
/// orthogonal, but generically no longer satisfies the first-order system.
pub fn perturb_top_row(
    cand: &SolutionCandidate,
    col: usize,
    delta: &RationalFunction,
) -> Result<SolutionCandidate, SolverError> {
    let xi = cand.element();
    let n = xi.n();
    if col < 2 || col >= n || xi.xi(1) <= xi.xi(col) {
        return Err(SolverError::InvalidPerturbation);
    }
    let mut a = cand.matrix().clone();
    let bumped = &a.entry(1, col).clone() + &LambdaPoly::constant(delta.clone());
    a.set_entry(1, col, bumped);
    for i in 2..n {
        a.set_entry(i, n, LambdaPoly::zero());
    }
    a.set_entry(1, n, LambdaPoly::zero());
    complete_window_row_to_col(&mut a, 1, n);
    SolutionCandidate::new(a, xi.clone())
}
