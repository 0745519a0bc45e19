//! Dense complex matrices and the spectral routines built on them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::math;

/// Tolerance for the Hermitian check, scaled by the largest entry when that
/// exceeds one.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;
const QL_MAX_ITER: usize = 60;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

/// Eigenvalues in ascending order with eigenvectors as matching columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major storage of length `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::NotSquare { rows: 0, row: 0, cols: 0 });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { rows: dim, row: i, cols: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> =
            rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let n = u.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diag_real(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    /// Complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, s: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Conjugation `U† M U`, i.e. `M` expressed in the basis given by the
    /// columns of `U`.
    pub fn in_basis(&self, u: &Self) -> Self {
        &(&u.adjoint() * self) * u
    }

    /// Inverse of [`in_basis`](Self::in_basis): `U M U†`.
    pub fn from_basis(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Fails with the first entry whose Hermitian partner deviates by more
    /// than the tolerance.
    pub fn check_hermitian(&self) -> Result<()> {
        let scale = self.data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = HERMITIAN_TOL * scale;
        for i in 0..self.dim {
            for j in i..self.dim {
                let deviation = (self[(i, j)] - self[(j, i)].conj()).norm();
                if deviation > tol {
                    return Err(Error::NotHermitian { row: i, col: j, deviation });
                }
            }
        }
        Ok(())
    }

    /// Averages with the adjoint and zeroes imaginary diagonal parts.
    pub fn hermitize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            self[(i, i)].im = 0.0;
            for j in i + 1..n {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                self[(i, j)] = avg;
                self[(j, i)] = avg.conj();
            }
        }
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn num_qubits(&self) -> Result<usize> {
        if self.dim.is_power_of_two() {
            Ok(self.dim.trailing_zeros() as usize)
        } else {
            Err(Error::NotQubitRegister { dim: self.dim })
        }
    }

    /// `M ← (op on qubit `target`) · M` for an `n`-qubit register. Qubit 0 is
    /// the most significant bit of the basis index.
    pub fn left_mul_local(&mut self, op: &[C64; 4], target: usize, n: usize) {
        let bit = 1usize << (n - 1 - target);
        let d = self.dim;
        for r0 in (0..d).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for c in 0..d {
                let a = self.data[r0 * d + c];
                let b = self.data[r1 * d + c];
                self.data[r0 * d + c] = op[0] * a + op[1] * b;
                self.data[r1 * d + c] = op[2] * a + op[3] * b;
            }
        }
    }

    /// `M ← M · (op on qubit `target`)†`.
    pub fn right_mul_local_adjoint(&mut self, op: &[C64; 4], target: usize, n: usize) {
        let bit = 1usize << (n - 1 - target);
        let d = self.dim;
        let (k00, k01, k10, k11) = (op[0].conj(), op[1].conj(), op[2].conj(), op[3].conj());
        for r in 0..d {
            let row = &mut self.data[r * d..(r + 1) * d];
            for c0 in (0..d).filter(|c| c & bit == 0) {
                let c1 = c0 | bit;
                let a = row[c0];
                let b = row[c1];
                row[c0] = a * k00 + b * k01;
                row[c1] = a * k10 + b * k11;
            }
        }
    }

    /// `K_t M K_t†` with a 2×2 operator lifted onto qubit `target`.
    pub fn conjugate_local(&self, op: &[C64; 4], target: usize, n: usize) -> Self {
        let mut m = self.clone();
        m.left_mul_local(op, target, n);
        m.right_mul_local_adjoint(op, target, n);
        m
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ZERO, ONE, ONE, ZERO] }
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO] }
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ONE, ZERO, ZERO, -ONE] }
}

/// Entries of a 2×2 matrix as a flat array, for the local-operator helpers.
pub fn as_2x2(m: &ComplexMatrix) -> [C64; 4] {
    assert_eq!(m.dim, 2);
    [m.data[0], m.data[1], m.data[2], m.data[3]]
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out.data[(i * nb + k) * n + j * nb + l] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Left-to-right Kronecker product of a non-empty list.
pub fn kron_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let mut it = factors.iter();
    let first = it.next().expect("kron_all needs at least one factor").clone();
    it.fold(first, |acc, f| kron(&acc, f))
}

/// Embeds a 2×2 operator on qubit `target` of an `n`-qubit register.
pub fn lift(op: &ComplexMatrix, target: usize, n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let factors: Vec<ComplexMatrix> =
        (0..n).map(|i| if i == target { op.clone() } else { id.clone() }).collect();
    kron_all(&factors)
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back ascending; equal eigenvalues keep the order in which
/// the sweep left them on the diagonal.
pub fn herm_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    m.check_hermitian()?;
    let n = m.dim;
    let mut a = m.clone();
    a.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let raw: Vec<f64> = a.diag_real();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));
    let eigenvalues = order.iter().map(|&i| raw[i]).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vecs[(r, new)] = v[(r, old)];
        }
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors: vecs })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    math::sqrt(s)
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + math::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / math::sqrt(1.0 + t * t);
    let s = t * c;
    let upp = phase * c;
    let upq = phase * s;
    let uqp = C64::new(-s, 0.0);
    let uqq = C64::new(c, 0.0);
    let n = a.dim;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Eigenvalues only, ascending: Householder reduction to a real tridiagonal
/// matrix followed by implicit QL. Much cheaper than [`herm_eig`] for the
/// 256×256 states of the multipartite sweeps.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.check_hermitian()?;
    let n = m.dim;
    let mut a = m.clone();
    a.hermitize();
    let (mut d, mut e) = tridiagonalize(&mut a);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    debug_assert_eq!(d.len(), n);
    Ok(d)
}

/// Returns the diagonal and the moduli of the sub-diagonal. A Hermitian
/// tridiagonal matrix is diagonally unitarily similar to the real one built
/// from these moduli.
fn tridiagonalize(a: &mut ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim;
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let x0 = a[(k + 1, k)];
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = math::sqrt(x0.norm_sqr() + tail);
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;

        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vnorm = math::sqrt((k + 1..n).map(|i| v[i].norm_sqr()).sum());
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }

        for i in k + 1..n {
            let mut s = ZERO;
            for j in k + 1..n {
                s += a[(i, j)] * v[j];
            }
            p[i] = s;
        }
        let kk: C64 = (k + 1..n).map(|i| v[i].conj() * p[i]).sum();
        for i in k + 1..n {
            w[i] = (p[i] - v[i] * kk) * 2.0;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(i, j)] -= upd;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
    }
    let d = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)].norm()).collect();
    e.push(0.0);
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix. `e[i]` couples `i` and
/// `i + 1`; on return `d` holds the eigenvalues (unsorted).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence { sweeps: QL_MAX_ITER });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = math::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = math::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Reduced state on the qubits in `keep`, ordered by ascending index.
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.num_qubits()?;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    for w in kept.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit(w[0]));
        }
    }
    if let Some(&bad) = kept.iter().find(|&&i| i >= n) {
        return Err(Error::QubitOutOfRange { index: bad, num_qubits: n });
    }

    let d = rho.dim;
    let split = |idx: usize| -> (usize, usize) {
        let (mut k, mut t) = (0usize, 0usize);
        for q in 0..n {
            let bit = (idx >> (n - 1 - q)) & 1;
            if kept.binary_search(&q).is_ok() {
                k = (k << 1) | bit;
            } else {
                t = (t << 1) | bit;
            }
        }
        (k, t)
    };
    let parts: Vec<(usize, usize)> = (0..d).map(split).collect();
    let mut out = ComplexMatrix::zeros(1 << kept.len());
    for r in 0..d {
        let (kr, tr) = parts[r];
        for c in 0..d {
            let (kc, tc) = parts[c];
            if tr == tc {
                out[(kr, kc)] += rho[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bloch_density(n: [f64; 3]) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c((1.0 + n[2]) / 2.0, 0.0), c(n[0] / 2.0, -n[1] / 2.0)],
            vec![c(n[0] / 2.0, n[1] / 2.0), c((1.0 - n[2]) / 2.0, 0.0)],
        ])
        .unwrap()
    }

    fn reconstruct(sd: &SpectralDecomposition) -> ComplexMatrix {
        let lam = ComplexMatrix::from_diag(&sd.eigenvalues);
        lam.from_basis(&sd.eigenvectors)
    }

    #[test]
    fn identity_eigenvalues() {
        let sd = herm_eig(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(sd.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn pauli_z_eigenvalues_sorted() {
        let sd = herm_eig(&pauli_z()).unwrap();
        assert_eq!(sd.eigenvalues, vec![-1.0, 1.0]);
        assert_eq!(sd.eigenvectors[(1, 0)], ONE);
    }

    #[test]
    fn bloch_state_eigenvalues() {
        let rho = bloch_density([0.6, 0.5, 0.4]);
        let sd = herm_eig(&rho).unwrap();
        let r = 0.77f64.sqrt();
        assert!((sd.eigenvalues[0] - (1.0 - r) / 2.0).abs() < 1e-14);
        assert!((sd.eigenvalues[1] - (1.0 + r) / 2.0).abs() < 1e-14);
        assert!((sd.eigenvalues[0] - 0.061_251_780_630_393_88).abs() < 1e-12);
        assert!(reconstruct(&sd).max_abs_diff(&rho) < 1e-14);
    }

    #[test]
    fn degenerate_ties_keep_index_order() {
        let m = ComplexMatrix::from_diag(&[2.0, 1.0, 2.0, 1.0]);
        let sd = herm_eig(&m).unwrap();
        assert_eq!(sd.eigenvalues, vec![1.0, 1.0, 2.0, 2.0]);
        let cols: Vec<usize> =
            (0..4).map(|j| (0..4).find(|&i| sd.eigenvectors[(i, j)] == ONE).unwrap()).collect();
        assert_eq!(cols, vec![1, 3, 0, 2]);
    }

    #[test]
    fn rejects_non_hermitian_with_entry() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]).unwrap();
        match herm_eig(&m) {
            Err(Error::NotHermitian { row: 0, col: 1, deviation }) => assert!((deviation - 0.5).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.5]]).unwrap_err();
        assert_eq!(err, Error::NotSquare { rows: 2, row: 1, cols: 1 });
    }

    #[test]
    fn kron_identities_and_sigma_x() {
        let id4 = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(id4, ComplexMatrix::identity(4));
        let xx = kron(&pauli_x(), &pauli_x());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(xx[(i, j)], want);
            }
        }
    }

    #[test]
    fn sigma_y_pair_on_bell_basis() {
        let yy = kron(&pauli_y(), &pauli_y());
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let bells = [
            [s, 0.0, 0.0, s],
            [s, 0.0, 0.0, -s],
            [0.0, s, s, 0.0],
            [0.0, s, -s, 0.0],
        ];
        let expected = [-1.0, 1.0, 1.0, -1.0];
        for (b, want) in bells.iter().zip(expected) {
            let v: Vec<C64> = b.iter().map(|&x| c(x, 0.0)).collect();
            let mut val = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    val += v[i].conj() * yy[(i, j)] * v[j];
                }
            }
            assert!((val - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_product_and_bell() {
        let ra = bloch_density([0.6, 0.5, 0.4]);
        let rb = bloch_density([0.0, -0.3, 0.2]);
        let prod = kron(&ra, &rb);
        assert!(partial_trace(&prod, &[0]).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&prod, &[1]).unwrap().max_abs_diff(&rb) < 1e-15);

        let s = core::f64::consts::FRAC_1_SQRT_2;
        let phi = [c(s, 0.0), ZERO, ZERO, c(s, 0.0)];
        let bell = ComplexMatrix::outer(&phi, &phi);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(partial_trace(&bell, &[0]).unwrap().max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        assert_eq!(partial_trace(&m, &[]), Err(Error::EmptyKeepSet));
        assert_eq!(partial_trace(&m, &[1, 1]), Err(Error::DuplicateQubit(1)));
        assert_eq!(partial_trace(&m, &[2]), Err(Error::QubitOutOfRange { index: 2, num_qubits: 2 }));
        let odd = ComplexMatrix::identity(3);
        assert_eq!(partial_trace(&odd, &[0]), Err(Error::NotQubitRegister { dim: 3 }));
    }

    #[test]
    fn partial_trace_middle_qubit_of_three() {
        let a = bloch_density([0.1, 0.2, 0.3]);
        let b = bloch_density([0.5, 0.0, -0.5]);
        let d = bloch_density([0.0, 0.7, 0.0]);
        let full = kron_all(&[a.clone(), b.clone(), d.clone()]);
        assert!(partial_trace(&full, &[1]).unwrap().max_abs_diff(&b) < 1e-15);
        assert!(partial_trace(&full, &[2, 0]).unwrap().max_abs_diff(&kron(&a, &d)) < 1e-15);
    }

    #[test]
    fn trace_norm_examples() {
        assert!((trace_norm(&pauli_z()).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(4)).unwrap(), 0.0);
        assert!(trace_norm(&ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()).is_err());
    }

    #[test]
    fn eigvalsh_matches_jacobi_on_dense_matrix() {
        let n = 6;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let re = ((i * 7 + j * 3) % 11) as f64 / 5.0 - 1.0;
                let im = if i == j { 0.0 } else { ((i * 5 + j) % 7) as f64 / 4.0 - 0.8 };
                m[(i, j)] = c(re, im);
                m[(j, i)] = c(re, -im);
            }
        }
        let jac = herm_eig(&m).unwrap();
        let ql = eigvalsh(&m).unwrap();
        for (a, b) in jac.eigenvalues.iter().zip(&ql) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!(reconstruct(&jac).max_abs_diff(&m) < 1e-12);
        let vv = &jac.eigenvectors.adjoint() * &jac.eigenvectors;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
    }

    #[test]
    fn conjugate_local_matches_lifted_product() {
        let rho = kron_all(&[
            bloch_density([0.1, 0.2, 0.3]),
            bloch_density([0.5, 0.0, -0.5]),
            bloch_density([0.0, 0.7, 0.0]),
        ]);
        let op = ComplexMatrix::from_rows(&[vec![c(0.3, 0.1), c(0.0, -0.4)], vec![c(0.2, 0.0), c(-0.5, 0.6)]]).unwrap();
        for t in 0..3 {
            let big = lift(&op, t, 3);
            let want = &(&big * &rho) * &big.adjoint();
            let got = rho.conjugate_local(&as_2x2(&op), t, 3);
            assert!(got.max_abs_diff(&want) < 1e-15);
        }
    }
}
