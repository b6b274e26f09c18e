//! Minimal dense complex linear algebra: Kronecker products, adjoints,
//! unitarity tests, and real null-space computation with a relative rank
//! tolerance.
//!
//! Everything here is a pure function on immutable inputs; problem sizes stay
//! in the "few thousand unknowns" regime, so plain dense double precision is
//! all we need.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative singular-value threshold. A singular value counts as zero
/// iff `sigma <= tol * max(1, sigma_max)`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix dimensions {rows}x{cols} must be positive")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("matrix contains non-finite entries".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Column vector from a slice.
    pub fn column(v: &[Complex64]) -> Result<Self> {
        Self::new(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    /// Column `c` as a plain vector.
    pub fn col_vec(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product; output dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let av = a.get(ar, ac);
            if av == Complex64::new(0.0, 0.0) {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out.set(ar * b.rows + br, ac * b.cols + bc, av * b.get(br, bc));
                }
            }
        }
    }
    out
}

/// Kronecker product of plain vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// True iff the max-entry deviation of `u† u` from the identity is at most `tol`.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> Result<bool> {
    if u.rows != u.cols {
        return Err(Error::Shape(format!("unitarity test needs a square matrix, got {}x{}", u.rows, u.cols)));
    }
    let gram = u.dagger().mul(u)?;
    Ok(gram.max_abs_diff(&ComplexMatrix::identity(u.rows)) <= tol)
}

/// Homogeneous real linear system `A v = 0`, rows appended incrementally.
#[derive(Debug, Clone)]
pub struct RealLinearSystem {
    unknowns: usize,
    rows: Vec<f64>,
}

impl RealLinearSystem {
    pub fn new(unknowns: usize) -> Result<Self> {
        if unknowns == 0 {
            return Err(Error::Shape("linear system needs at least one unknown".into()));
        }
        Ok(Self { unknowns, rows: Vec::new() })
    }

    pub fn from_rows(unknowns: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut sys = Self::new(unknowns)?;
        for row in rows {
            sys.push_row(row)?;
        }
        Ok(sys)
    }

    pub fn push_row(&mut self, row: &[f64]) -> Result<()> {
        if row.len() != self.unknowns {
            return Err(Error::Shape(format!(
                "row has {} entries, system has {} unknowns",
                row.len(),
                self.unknowns
            )));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::Input("non-finite coefficient in linear system".into()));
        }
        self.rows.extend_from_slice(row);
        Ok(())
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equation_count(&self) -> usize {
        self.rows.len() / self.unknowns
    }
}

/// Orthonormal basis of `{v : A v = 0}` via SVD of the real system.
///
/// A singular value counts as zero iff `sigma <= tol * max(1, sigma_max)`.
/// An empty result means the kernel is trivial.
pub fn null_space(sys: &RealLinearSystem, tol: f64) -> Vec<Vec<f64>> {
    let n = sys.unknowns;
    let m = sys.equation_count();
    if m == 0 {
        // No constraints: the standard basis.
        return (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
    }
    // Pad with zero rows so V^T covers all of R^n even for wide systems.
    let padded_rows = m.max(n);
    let mut a = DMatrix::<f64>::zeros(padded_rows, n);
    for r in 0..m {
        for c in 0..n {
            a[(r, c)] = sys.rows[r * n + c];
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("SVD with compute_v");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * sigma_max.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > threshold).count();
    (rank..n).map(|r| v_t.row(r).iter().copied().collect()).collect()
}

/// Rank of the system's coefficient matrix under the same threshold rule.
pub fn rank(sys: &RealLinearSystem, tol: f64) -> usize {
    sys.unknowns - null_space(sys, tol).len()
}

const HERM_TOL: f64 = 1e-9;

/// Real dimension of the space of `d x d` Hermitian matrices.
pub fn herm_dim(d: usize) -> usize {
    d * d
}

/// Encode a Hermitian matrix as a real `d^2`-vector: the `d` real diagonal
/// entries first, then `(re, im)` of the strict upper triangle row by row.
pub fn herm_to_vec(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = m.rows();
    if m.cols() != d {
        return Err(Error::Shape("Hermitian encoding needs a square matrix".into()));
    }
    if m.max_abs_diff(&m.dagger()) > HERM_TOL {
        return Err(Error::Shape("matrix is not Hermitian within tolerance".into()));
    }
    let mut v = Vec::with_capacity(d * d);
    for p in 0..d {
        v.push(m.get(p, p).re);
    }
    for p in 0..d {
        for q in (p + 1)..d {
            // Average the pair to make the round trip exact for near-Hermitian input.
            let z = (m.get(p, q) + m.get(q, p).conj()) * 0.5;
            v.push(z.re);
            v.push(z.im);
        }
    }
    Ok(v)
}

/// Inverse of [`herm_to_vec`]; the output is Hermitian by construction.
pub fn vec_to_herm(v: &[f64], d: usize) -> Result<ComplexMatrix> {
    if v.len() != d * d {
        return Err(Error::Shape(format!("expected {} coordinates for a {d}x{d} Hermitian matrix, got {}", d * d, v.len())));
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for p in 0..d {
        m.set(p, p, Complex64::new(v[p], 0.0));
    }
    let mut k = d;
    for p in 0..d {
        for q in (p + 1)..d {
            let z = Complex64::new(v[k], v[k + 1]);
            k += 2;
            m.set(p, q, z);
            m.set(q, p, z.conj());
        }
    }
    Ok(m)
}
