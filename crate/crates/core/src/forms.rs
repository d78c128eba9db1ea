//! Cosine matrix and Hermitian form of a diagram, with a Sylvester-criterion
//! positive-definiteness test.

use std::f64::consts::PI;

use thiserror::Error;

use crate::diagram::{ExtendedCoxeterDiagram, Label};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("the Hermitian form is only defined for finite labels ({0})")]
    InfiniteLabel(String),
    #[error("negative radicand {radicand} for labels p={p}, m={m}, q={q}")]
    NegativeRadicand { p: u32, m: u32, q: u32, radicand: f64 },
    #[error("invalid label triple p={p}, m={m}, q={q}")]
    InvalidTriple { p: u32, m: u32, q: u32 },
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricRealMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricRealMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        SymmetricRealMatrix { n, entries }
    }

    /// Build from rows; panics if not square and symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = SymmetricRealMatrix::identity(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert!((v - rows[j][i]).abs() <= 1e-12, "matrix must be symmetric");
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Determinant of the leading `k`×`k` block.
    pub fn leading_minor(&self, k: usize) -> f64 {
        let block: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| self.get(i, j)).collect()).collect();
        determinant(block)
    }

    pub fn determinant(&self) -> f64 {
        self.leading_minor(self.n)
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| x[i] * self.get(i, j) * x[j]).sum::<f64>()).sum()
    }
}

fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("non-empty range");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    det
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("non-empty range");
        a.swap(pivot, col);
        b.swap(pivot, col);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r][r];
    }
    x
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// All leading principal minors, each above tolerance.
    Minors(Vec<f64>),
    /// A vector with `xᵀ M x = value ≤ tol`.
    Vector { x: Vec<f64>, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefinitenessVerdict {
    pub positive_definite: bool,
    pub witness: Witness,
}

/// Sylvester's criterion. On failure at the `k`-th minor the witness is
/// `x = (-A⁻¹b, 1, 0, ...)` where `A` is the leading block before it and
/// `b` the next column, so that `xᵀMx = minor_k / minor_{k-1}`.
pub fn is_positive_definite(m: &SymmetricRealMatrix, tol: f64) -> DefinitenessVerdict {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = m.dim();
    let mut minors = Vec::with_capacity(n);
    for k in 1..=n {
        let minor = m.leading_minor(k);
        if minor <= tol {
            let idx = k - 1;
            let block: Vec<Vec<f64>> = (0..idx).map(|i| (0..idx).map(|j| m.get(i, j)).collect()).collect();
            let column: Vec<f64> = (0..idx).map(|i| m.get(i, idx)).collect();
            let y = solve(block, column);
            let mut x = vec![0.0; n];
            for (slot, v) in x.iter_mut().zip(&y) {
                *slot = -v;
            }
            x[idx] = 1.0;
            let value = m.quadratic_form(&x);
            return DefinitenessVerdict { positive_definite: false, witness: Witness::Vector { x, value } };
        }
        minors.push(minor);
    }
    DefinitenessVerdict { positive_definite: true, witness: Witness::Minors(minors) }
}

fn pi_over(l: Label) -> f64 {
    match l {
        Label::Finite(v) => PI / v as f64,
        Label::Infinity => 0.0,
    }
}

/// `c_ii = 1`, `c_ij = -cos(π/m_ij)` with `π/∞ = 0`.
pub fn cosine_matrix(d: &ExtendedCoxeterDiagram) -> SymmetricRealMatrix {
    let mut out = SymmetricRealMatrix::identity(d.len());
    for (i, j, m) in d.edges() {
        out.set_sym(i, j, -pi_over(m).cos());
    }
    out
}

/// Off-diagonal entry of the Hermitian form for an edge `p -m- q`.
pub fn alpha(p: u32, m: u32, q: u32) -> Result<f64, FormError> {
    let (pf, qf, mf) = (p as f64, q as f64, m as f64);
    let radicand = ((PI / pf - PI / qf).cos() + (2.0 * PI / mf).cos())
        / (2.0 * (PI / pf).sin() * (PI / qf).sin());
    if radicand < -1e-12 {
        return Err(FormError::NegativeRadicand { p, m, q, radicand });
    }
    Ok(-radicand.max(0.0).sqrt())
}

pub fn hermitian_matrix(d: &ExtendedCoxeterDiagram) -> Result<SymmetricRealMatrix, FormError> {
    if let Some(v) = d.vertices().iter().find(|v| !v.order.is_finite()) {
        return Err(FormError::InfiniteLabel(format!("vertex `{}`", v.name)));
    }
    let mut out = SymmetricRealMatrix::identity(d.len());
    for (i, j, m) in d.edges() {
        let finite = |l: Label| l.finite().expect("checked above");
        let Some(mv) = m.finite() else {
            return Err(FormError::InfiniteLabel(format!("edge {}-{}", d.name(i), d.name(j))));
        };
        out.set_sym(i, j, alpha(finite(d.order(i)), mv, finite(d.order(j)))?);
    }
    Ok(out)
}

/// Whether `α(p,m,q) ≤ -cos(π/m) + tol`.
pub fn audit_alpha_leq_c(p: u32, m: u32, q: u32, tol: f64) -> Result<bool, FormError> {
    if p < 2 || q < 2 || m < 3 || (m % 2 == 1 && p != q) {
        return Err(FormError::InvalidTriple { p, m, q });
    }
    let c = -(PI / m as f64).cos();
    Ok(alpha(p, m, q)? <= c + tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn d4(p: u32) -> ExtendedCoxeterDiagram {
        let text = format!(
            "vertex o {p}\nvertex x {p}\nvertex y {p}\nvertex z {p}\nedge o x 3\nedge o y 3\nedge o z 3\n"
        );
        parse_diagram(&text).unwrap()
    }

    #[test]
    fn cosine_entries() {
        let c = cosine_matrix(&parse_diagram("2[3]2[inf]2").unwrap());
        assert!((c.get(0, 1) + 0.5).abs() < 1e-15);
        assert_eq!(c.get(0, 2), 0.0);
        assert_eq!(c.get(1, 2), -1.0);
        assert_eq!(c.get(2, 2), 1.0);
    }

    #[test]
    fn alpha_special_cases() {
        for m in 3..12 {
            let expect = -(PI / m as f64).cos();
            assert!((alpha(2, m, 2).unwrap() - expect).abs() < 1e-12);
        }
        for p in 2..10 {
            assert!((alpha(p, 4, 2).unwrap() + (PI / 4.0).cos()).abs() < 1e-12);
            let expect = -1.0 / (2.0 * (PI / p as f64).sin());
            assert!((alpha(p, 3, p).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_refuses_infinity() {
        assert!(matches!(
            hermitian_matrix(&parse_diagram("3[inf]3").unwrap()),
            Err(FormError::InfiniteLabel(_))
        ));
        assert!(hermitian_matrix(&parse_diagram("inf").unwrap()).is_err());
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_positive_definite(&SymmetricRealMatrix::identity(4), 1e-9).positive_definite);
        let h = hermitian_matrix(&parse_diagram("3[3]3").unwrap()).unwrap();
        let v = is_positive_definite(&h, DEFAULT_TOLERANCE);
        assert!(v.positive_definite);
        let Witness::Minors(minors) = v.witness else { panic!() };
        assert_eq!(minors.len(), 2);
        assert!(minors.iter().all(|&m| m > 1e-9));
    }

    #[test]
    fn d4_determinant_closed_form() {
        for p in 3..=8 {
            let h = hermitian_matrix(&d4(p)).unwrap();
            let s = (PI / p as f64).sin();
            let closed = 1.0 - 3.0 / (4.0 * s * s);
            assert!((h.determinant() - closed).abs() < 1e-9, "p={p}");
            let v = is_positive_definite(&h, DEFAULT_TOLERANCE);
            assert!(!v.positive_definite);
            let Witness::Vector { x, value } = v.witness else { panic!() };
            assert!(value <= DEFAULT_TOLERANCE);
            assert!((h.quadratic_form(&x) - value).abs() < 1e-12);
        }
        assert!(hermitian_matrix(&d4(3)).unwrap().determinant().abs() < 1e-12);
    }

    #[test]
    fn witness_vector_for_indefinite_matrix() {
        let m = SymmetricRealMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        let v = is_positive_definite(&m, 1e-9);
        let Witness::Vector { x, value } = v.witness else { panic!() };
        assert_eq!(x, vec![-2.0, 1.0]);
        assert!((value + 3.0).abs() < 1e-12);
    }

    #[test]
    fn audit_rejects_illegal_triples() {
        assert!(audit_alpha_leq_c(3, 5, 2, 1e-12).is_err());
        assert!(audit_alpha_leq_c(2, 7, 2, 1e-12).unwrap());
    }
}
