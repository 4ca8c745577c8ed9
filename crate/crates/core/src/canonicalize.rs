//! Generic canonicalization of a unitriangular bar involution: given the bar
//! matrix of an anti-linear involution in a standard basis, produce the unique
//! bar-invariant basis that is unitriangular with off-diagonal entries in
//! `v Z[v]`.
//!
//! This single solver backs both the parabolic Hecke bases and the canonical
//! bases on tensor space.

use crate::ring::LaurentPoly;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CanonicalizeError {
    #[error("bar matrix is not unitriangular at ({row}, {col})")]
    NotUnitriangular { row: usize, col: usize },
    #[error("bar matrix entries must have integer coefficients at ({row}, {col})")]
    NotIntegral { row: usize, col: usize },
    #[error("bar matrix does not square to the identity at ({row}, {col})")]
    NotInvolution { row: usize, col: usize },
    #[error("no integral solution at column {col}, row {row}: residual {residual}")]
    NoIntegralSolution { col: usize, row: usize, residual: String },
}

/// The matrix of an anti-linear involution in an ordered standard basis:
/// `bar(M_x) = sum_y R[y][x] M_y`, required unitriangular with respect to the
/// index order.
#[derive(Debug, Clone)]
pub struct BarData<K> {
    pub labels: Vec<K>,
    /// Row-major: `r[row][col]`.
    pub r: Vec<Vec<LaurentPoly>>,
}

/// Outcome of the structural checks that must pass before solving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarDiagnostics {
    pub unitriangular: bool,
    pub integral: bool,
    pub involution: bool,
    pub failures: Vec<String>,
}

impl BarDiagnostics {
    pub fn all_pass(&self) -> bool {
        self.unitriangular && self.integral && self.involution
    }
}

/// The solved basis: `C_x = sum_y P[y][x] M_y`, unitriangular with
/// off-diagonal entries in `v Z[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub p: Vec<Vec<LaurentPoly>>,
}

impl CanonicalBasis {
    pub fn column(&self, x: usize) -> Vec<LaurentPoly> {
        self.p.iter().map(|row| row[x].clone()).collect()
    }
}

impl<K> BarData<K> {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.r[row][col]
    }

    /// Apply the anti-linear involution to a coefficient vector.
    fn bar_vector(&self, vec: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let n = self.n();
        let mut out = vec![LaurentPoly::zero(); n];
        for (x, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cb = c.bar();
            for (y, row) in out.iter_mut().enumerate() {
                let r = self.entry(y, x);
                if !r.is_zero() {
                    *row = row.add(&cb.mul(r));
                }
            }
        }
        out
    }
}

pub fn check_bardata<K>(data: &BarData<K>) -> BarDiagnostics {
    let n = data.n();
    let mut diag = BarDiagnostics { unitriangular: true, integral: true, involution: true, failures: vec![] };
    for col in 0..n {
        if !data.entry(col, col).is_one() {
            diag.unitriangular = false;
            diag.failures.push(format!("diagonal entry ({col},{col}) is not 1"));
        }
        for row in (col + 1)..n {
            if !data.entry(row, col).is_zero() {
                diag.unitriangular = false;
                diag.failures.push(format!("entry ({row},{col}) below the diagonal is nonzero"));
            }
        }
        for row in 0..n {
            if !data.entry(row, col).has_integer_coeffs() {
                diag.integral = false;
                diag.failures.push(format!("entry ({row},{col}) has non-integer coefficients"));
            }
        }
    }
    // bar^2 = id translates to sum_z R[y][z] bar(R[z][x]) = delta_{y,x}.
    'outer: for x in 0..n {
        let col: Vec<LaurentPoly> = (0..n).map(|y| data.entry(y, x).clone()).collect();
        let twice = data.bar_vector(&col);
        for (y, t) in twice.iter().enumerate() {
            let expected = if y == x { LaurentPoly::one() } else { LaurentPoly::zero() };
            if *t != expected {
                diag.involution = false;
                diag.failures.push(format!("bar^2 fails at ({y},{x})"));
                break 'outer;
            }
        }
    }
    diag
}

/// Solve `p - bar(p) = g` for `p` with strictly positive exponents. Solvable
/// iff `g` is bar-antisymmetric with zero constant term, in which case `p` is
/// the positive-exponent truncation of `g`.
fn solve_antisymmetric(g: &LaurentPoly) -> Option<LaurentPoly> {
    let p = g.positive_part();
    if p.sub(&p.bar()) == *g {
        Some(p)
    } else {
        None
    }
}

/// Compute the canonical basis from validated bar data. Columns are processed
/// in the given index order; uniqueness of the result makes the output
/// independent of which compatible order was supplied.
pub fn canonical_basis<K>(data: &BarData<K>) -> Result<CanonicalBasis, CanonicalizeError> {
    let n = data.n();
    let diag = check_bardata(data);
    if !diag.unitriangular {
        return first_failure(data, FailKind::Unitriangular);
    }
    if !diag.integral {
        return first_failure(data, FailKind::Integral);
    }
    if !diag.involution {
        return first_failure(data, FailKind::Involution);
    }

    let mut p = vec![vec![LaurentPoly::zero(); n]; n];
    for x in 0..n {
        let mut b = vec![LaurentPoly::zero(); n];
        b[x] = LaurentPoly::one();
        loop {
            let diff: Vec<LaurentPoly> = {
                let barred = data.bar_vector(&b);
                barred.iter().zip(&b).map(|(u, v)| u.sub(v)).collect()
            };
            let Some(top) = (0..n).rev().find(|&y| !diff[y].is_zero()) else {
                break;
            };
            let g = &diff[top];
            let pi = solve_antisymmetric(g).ok_or_else(|| CanonicalizeError::NoIntegralSolution {
                col: x,
                row: top,
                residual: g.to_string(),
            })?;
            if !pi.in_v_zv() {
                return Err(CanonicalizeError::NoIntegralSolution { col: x, row: top, residual: g.to_string() });
            }
            b[top] = b[top].add(&pi);
        }
        for y in 0..n {
            if y > x && !b[y].is_zero() {
                return Err(CanonicalizeError::NotUnitriangular { row: y, col: x });
            }
            p[y][x] = std::mem::take(&mut b[y]);
        }
    }

    // Exact closing identity: R . bar(P) = P.
    let basis = CanonicalBasis { p };
    for x in 0..n {
        let col = basis.column(x);
        let barred = data.bar_vector(&col);
        for y in 0..n {
            if barred[y] != basis.p[y][x] {
                return Err(CanonicalizeError::NotInvolution { row: y, col: x });
            }
        }
    }
    Ok(basis)
}

enum FailKind {
    Unitriangular,
    Integral,
    Involution,
}

fn first_failure<K>(data: &BarData<K>, kind: FailKind) -> Result<CanonicalBasis, CanonicalizeError> {
    let n = data.n();
    for col in 0..n {
        for row in 0..n {
            let e = data.entry(row, col);
            match kind {
                FailKind::Unitriangular => {
                    if (row == col && !e.is_one()) || (row > col && !e.is_zero()) {
                        return Err(CanonicalizeError::NotUnitriangular { row, col });
                    }
                }
                FailKind::Integral => {
                    if !e.has_integer_coeffs() {
                        return Err(CanonicalizeError::NotIntegral { row, col });
                    }
                }
                FailKind::Involution => {}
            }
        }
    }
    Err(CanonicalizeError::NotInvolution { row: 0, col: 0 })
}
