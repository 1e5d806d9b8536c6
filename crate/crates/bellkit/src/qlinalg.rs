//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here operates on [`ComplexMatrix`], a square row-major matrix
//! of `Complex64`. Dimensions stay desk-scale (a few tens at most), so the
//! implementations favour clarity over asymptotics: the Hermitian
//! eigensolver is a cyclic complex Jacobi iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for matrix predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dense square matrix of complex scalars, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dim must be >= 1");
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Self { dim, entries }
    }

    /// Build from real row data (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(x, 0.0));
            }
        }
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Rank-one projector |v><v| / <v|v>.
    pub fn projector(v: &[Complex64]) -> Self {
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm2 > 0.0, "cannot project onto the zero vector");
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj() / norm2);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { dim: self.dim, entries }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Elementwise max modulus, the ||.||_max used by all tolerances here.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match hermitian_eigen(self, tol) {
            Ok((eigenvalues, _)) => eigenvalues.iter().all(|&l| l >= -tol),
            Err(_) => false,
        }
    }

    /// Smallest eigenvalue, for PSD diagnostics. Requires Hermitian input.
    pub fn min_eigenvalue(&self, tol: f64) -> Result<f64> {
        let (eigenvalues, _) = hermitian_eigen(self, tol)?;
        Ok(eigenvalues[0])
    }
}

/// Kronecker product with index convention
/// `(i*db + k, j*db + l) -> a[i,j] * b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let da = a.dim();
    let db = b.dim();
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Symmetrized tensor product (V1 (x) V2 + V2 (x) V1) / 2.
pub fn sym_tensor(v1: &ComplexMatrix, v2: &ComplexMatrix) -> Result<ComplexMatrix> {
    if v1.dim() != v2.dim() {
        return Err(Error::DimMismatch { left: v1.dim(), right: v2.dim() });
    }
    Ok(kron(v1, v2).add(&kron(v2, v1)).scale(0.5))
}

/// Flip operator S on H (x) H with S(x (x) y) = y (x) x.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    assert!(d >= 1);
    let mut s = ComplexMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            s.set(i * d + j, j * d + i, Complex64::new(1.0, 0.0));
        }
    }
    s
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues sorted ascending and the matrix whose columns are the
/// matching orthonormal eigenvectors.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    let defect = a.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian { defect });
    }
    let d = a.dim();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(d);
    let scale = a.max_abs().max(1.0);
    let target = 1e-15 * scale;

    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                off = off.max(m.get(p, q).norm());
            }
        }
        if off <= target {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = m.get(p, q);
                let b = apq.norm();
                if b <= target {
                    continue;
                }
                // Phase that makes the (p,q) entry real, then a real
                // Jacobi rotation that zeroes it.
                let phase = apq / b;
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u = phase.conj(); // column-q phase factor

                // A <- M^dagger A M with M = diag(1,..,u at q) * R(c, s).
                for k in 0..d {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q) * u;
                    m.set(k, p, mkp * c - mkq * s);
                    m.set(k, q, mkp * s + mkq * c);
                }
                for k in 0..d {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k) * u.conj();
                    m.set(p, k, mpk * c - mqk * s);
                    m.set(q, k, mpk * s + mqk * c);
                }
                for k in 0..d {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q) * u;
                    v.set(k, p, vkp * c - vkq * s);
                    v.set(k, q, vkp * s + vkq * c);
                }
                // Keep the working matrix exactly Hermitian on this pair.
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(d);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..d {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok((eigenvalues, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(d);
        for i in 0..d {
            a.set(i, i, c(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..d {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a.set(i, j, z);
                a.set(j, i, z.conj());
            }
        }
        a
    }

    fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                a.set(i, j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        a
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(kron(&i2, &i2).is_identity(0.0));
    }

    #[test]
    fn kron_diagonal_product() {
        let z = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let expect = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(kron(&z, &z).approx_eq(&expect, 0.0));
    }

    #[test]
    fn kron_rank_one_placement() {
        // |up><up| (x) |down><down| puts the single 1 at (1,1) in the
        // up-up, up-down, down-up, down-down basis order.
        let up = ComplexMatrix::projector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let down = ComplexMatrix::projector(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let k = kron(&up, &down);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 1 && j == 1 { 1.0 } else { 0.0 };
                assert!((k.get(i, j) - c(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn kron_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 3);
            let cc = random_matrix(&mut rng, 2);
            let left = kron(&kron(&a, &b), &cc);
            let right = kron(&a, &kron(&b, &cc));
            assert!(left.max_abs_diff(&right) <= 1e-12);
        }
    }

    #[test]
    fn sym_tensor_symmetric_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 3);
        assert!(sym_tensor(&a, &a).unwrap().approx_eq(&kron(&a, &a), 1e-14));
    }

    #[test]
    fn sym_tensor_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 2);
        let ab = sym_tensor(&a, &b).unwrap();
        let ba = sym_tensor(&b, &a).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn sym_tensor_dim_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(sym_tensor(&a, &b), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn swap_small_cases() {
        assert!(swap_operator(1).is_identity(0.0));
        let s = swap_operator(2);
        // Fixes basis 0 and 3, exchanges 1 and 2.
        assert_eq!(s.get(0, 0), c(1.0, 0.0));
        assert_eq!(s.get(3, 3), c(1.0, 0.0));
        assert_eq!(s.get(1, 2), c(1.0, 0.0));
        assert_eq!(s.get(2, 1), c(1.0, 0.0));
        assert_eq!(s.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn swap_involution_hermitian_unitary() {
        for d in 1..=3 {
            let s = swap_operator(d);
            assert!(s.is_hermitian(1e-12));
            assert!(s.matmul(&s).is_identity(1e-12));
        }
    }

    #[test]
    fn eigen_diagonal() {
        let a = ComplexMatrix::diag(&[c(2.0, 0.0), c(-1.0, 0.0)]);
        let (vals, _) = hermitian_eigen(&a, 1e-10).unwrap();
        assert!((vals[0] - (-1.0)).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut a = ComplexMatrix::zeros(2);
        a.set(0, 1, c(1.0, 0.0));
        assert!(matches!(hermitian_eigen(&a, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigen_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2usize, 3, 4, 6] {
            let a = random_hermitian(&mut rng, d);
            let (vals, vecs) = hermitian_eigen(&a, 1e-10).unwrap();
            // Sum_i lambda_i v_i v_i^dagger reproduces A.
            let mut rec = ComplexMatrix::zeros(d);
            for (i, &l) in vals.iter().enumerate() {
                let col: Vec<Complex64> = (0..d).map(|r| vecs.get(r, i)).collect();
                rec = rec.add(&ComplexMatrix::projector(&col).scale(l));
            }
            assert!(rec.max_abs_diff(&a) <= 1e-10 * a.max_abs().max(1.0));
            // Orthonormal columns.
            assert!(vecs.adjoint().matmul(&vecs).is_identity(1e-9));
            // Ascending order.
            for w in vals.windows(2) {
                assert!(w[0] <= w[1] + 1e-14);
            }
        }
    }
}
