//! Dense complex matrix kernel: construction, algebra, Hermitian eigendecomposition,
//! singular values, Kronecker/partial operations, and the bipartite index convention
//! used by every other module.
//!
//! Composite index convention: the product basis vector |i⟩⊗|j⟩ of a dA⊗dB space sits
//! at row i·dB + j (0-based, A factor first). All storage is row-major.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real number as a complex entry.
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const IM: Complex64 = Complex64::new(0.0, 1.0);

/// Maximum Jacobi sweeps before the eigensolver / SVD gives up.
const MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex64>,
}

impl CMat {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> CMat {
        CMat {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> CMat {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Matrix unit e_{ij} (single 1 at row i, col j) of size n×n.
    pub fn unit(n: usize, i: usize, j: usize) -> CMat {
        let mut m = CMat::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    /// Square diagonal matrix from real values.
    pub fn diag_real(values: &[f64]) -> CMat {
        let mut m = CMat::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = cr(v);
        }
        m
    }

    /// Build entrywise from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> CMat {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested row arrays of (re, im) pairs; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> CMat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = CMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * z).collect(),
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul shape");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec shape");
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |self − other|.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from H = H†; 0 for non-square would be meaningless,
    /// so non-square matrices report infinity.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Column j as a vector.
    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product; entry ((i,k),(j,l)) = A_{ij}·B_{kl} under the composite convention.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Hilbert–Schmidt inner product Tr(A†B).
pub fn hs_inner(a: &CMat, b: &CMat) -> Result<Complex64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimMismatch(format!(
            "hs_inner: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut acc = ZERO;
    for (x, y) in a.entries.iter().zip(&b.entries) {
        acc += x.conj() * y;
    }
    Ok(acc)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eig {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: CMat,
}

/// 2×2 Hermitian Jacobi rotation. Given the submatrix [[app, apq], [conj(apq), aqq]]
/// (app, aqq real), returns (c, sigma) such that U = [[c, −σ], [σ̄, c]] is unitary and
/// U†·[[app,apq],[apq̄,aqq]]·U is diagonal. Uses the small-angle root for stability.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, Complex64) {
    let beta = apq.norm();
    let phase = apq / beta; // e^{iφ}
    let tau = (aqq - app) / (2.0 * beta);
    // t solves t² − 2τt − 1 = 0; take the root smaller in magnitude.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, phase * s)
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Deterministic: fixed sweep order, no randomization, so identical input bits give
/// identical output bits. Eigenvalues are returned ascending; ties keep the order in
/// which the diagonal settled (stable sort).
pub fn hermitian_eig(h: &CMat, tol: f64) -> Result<Eig> {
    if !h.is_square() {
        return Err(Error::NotSquare(h.rows, h.cols));
    }
    let dev = h.hermitian_deviation();
    if !(dev <= tol) {
        return Err(Error::NotHermitian(dev));
    }
    let n = h.rows;
    // Work on the exact Hermitian average so tiny asymmetries cannot bias a triangle.
    let mut a = CMat::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * cr(0.5));
    let mut v = CMat::identity(n);
    let scale = a.fro_norm().max(1.0);
    let target = 1e-14 * scale;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == ZERO {
                    continue;
                }
                let (cv, sigma) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                let sigma_c = sigma.conj();
                // A ← A·U (columns p, q).
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = cr(cv) * arp + sigma_c * arq;
                    a[(r, q)] = -sigma * arp + cr(cv) * arq;
                }
                // A ← U†·A (rows p, q).
                for r in 0..n {
                    let apr = a[(p, r)];
                    let aqr = a[(q, r)];
                    a[(p, r)] = cr(cv) * apr + sigma * aqr;
                    a[(q, r)] = -sigma_c * apr + cr(cv) * aqr;
                }
                // V ← V·U accumulates the eigenvectors.
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = cr(cv) * vrp + sigma_c * vrq;
                    v[(r, q)] = -sigma * vrp + cr(cv) * vrq;
                }
                // The rotation zeroes (p,q) by construction; pin the rounding dust.
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = cr(a[(p, p)].re);
                a[(q, q)] = cr(a[(q, q)].re);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(Eig { values, vectors })
}

/// H^{−1/2} for Hermitian positive-definite H (every eigenvalue must exceed `tol`).
pub fn psd_inv_sqrt(h: &CMat, tol: f64) -> Result<CMat> {
    let eig = hermitian_eig(h, 1e-10)?;
    if eig.values[0] <= tol {
        return Err(Error::NotPositiveDefinite(eig.values[0]));
    }
    let n = h.rows;
    let inv_sqrt: Vec<f64> = eig.values.iter().map(|&l| 1.0 / l.sqrt()).collect();
    // V · diag(λ^{-1/2}) · V†
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += eig.vectors[(i, k)] * cr(inv_sqrt[k]) * eig.vectors[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Singular values by one-sided Jacobi (descending). Accurate for tiny singular values,
/// which matters when counting Schmidt ranks against a relative cutoff.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    // Orthogonalize the columns of the orientation with no fewer rows than columns.
    let mut a = if m.rows >= m.cols { m.clone() } else { m.adjoint() };
    let n = a.cols;
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = ZERO;
                for r in 0..a.rows {
                    let x = a[(r, p)];
                    let y = a[(r, q)];
                    app += x.norm_sqr();
                    aqq += y.norm_sqr();
                    apq += x.conj() * y;
                }
                if apq.norm() <= 1e-15 * (app * aqq).sqrt() || apq == ZERO {
                    continue;
                }
                rotated = true;
                let (cv, sigma) = jacobi_rotation(app, aqq, apq);
                let sigma_c = sigma.conj();
                for r in 0..a.rows {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = cr(cv) * arp + sigma_c * arq;
                    a[(r, q)] = -sigma * arp + cr(cv) * arq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..a.rows).map(|r| a[(r, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(sv)
}

/// Which tensor factor an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Operator on a dA⊗dB tensor product, stored as a (dA·dB)×(dA·dB) matrix under the
/// composite index (i,j) ↦ i·dB + j.
#[derive(Debug, Clone, PartialEq)]
pub struct BipOp {
    pub da: usize,
    pub db: usize,
    pub mat: CMat,
}

impl BipOp {
    pub fn new(da: usize, db: usize, mat: CMat) -> Result<BipOp> {
        let n = da * db;
        if mat.rows != n || mat.cols != n {
            return Err(Error::DimMismatch(format!(
                "BipOp: matrix is {}x{}, expected {}x{} for {}⊗{}",
                mat.rows, mat.cols, n, n, da, db
            )));
        }
        Ok(BipOp { da, db, mat })
    }

    /// Composite row index of |i⟩⊗|j⟩.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.db + j
    }

    /// Unnormalized maximally entangled operator Σ_{ij} e_{ij}⊗e_{ij} on d⊗d.
    pub fn max_entangled(d: usize) -> BipOp {
        let mut mat = CMat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                mat[(i * d + i, j * d + j)] = ONE;
            }
        }
        BipOp { da: d, db: d, mat }
    }
}

/// Partial transpose on the designated factor. Exact entry permutation; involution.
pub fn partial_transpose(rho: &BipOp, side: Side) -> BipOp {
    let (da, db) = (rho.da, rho.db);
    let mut mat = CMat::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let src = match side {
                        // B: ((i,j),(k,l)) ← ((i,l),(k,j))
                        Side::B => (i * db + l, k * db + j),
                        // A: ((i,j),(k,l)) ← ((k,j),(i,l))
                        Side::A => (k * db + j, i * db + l),
                    };
                    mat[(i * db + j, k * db + l)] = rho.mat[src];
                }
            }
        }
    }
    BipOp { da, db, mat }
}

/// Trace out the designated factor.
pub fn partial_trace(rho: &BipOp, side: Side) -> CMat {
    let (da, db) = (rho.da, rho.db);
    match side {
        Side::A => CMat::from_fn(db, db, |b, d| {
            (0..da).map(|i| rho.mat[(i * db + b, i * db + d)]).sum()
        }),
        Side::B => CMat::from_fn(da, da, |a, c| {
            (0..db).map(|j| rho.mat[(a * db + j, c * db + j)]).sum()
        }),
    }
}
