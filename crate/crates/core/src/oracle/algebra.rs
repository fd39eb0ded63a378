//! `su(m)` as a real vector space with an orthonormal basis for the inner
//! product `<X, Y> = -1/2 Re tr(XY)`, and dense helpers around it.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Real Lie algebra of traceless skew-Hermitian `m x m` matrices, optionally
/// block diagonal (a direct sum of `su(m_j)`).
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    size: usize,
    blocks: Vec<usize>,
    basis: Vec<CMat>,
}

impl LieAlgebra {
    pub fn su(m: usize) -> Self {
        Self::block_sum(&[m])
    }

    /// `su(m_1) ⊕ ... ⊕ su(m_k)` embedded block diagonally.
    pub fn block_sum(blocks: &[usize]) -> Self {
        let size: usize = blocks.iter().sum();
        let mut basis = Vec::new();
        let mut offset = 0;
        for &m in blocks {
            for a in 0..m {
                for b in a + 1..m {
                    let (i, j) = (offset + a, offset + b);
                    let mut x = CMat::zeros(size, size);
                    x[(i, j)] = c(1.0, 0.0);
                    x[(j, i)] = c(-1.0, 0.0);
                    basis.push(x);
                    let mut y = CMat::zeros(size, size);
                    y[(i, j)] = c(0.0, 1.0);
                    y[(j, i)] = c(0.0, 1.0);
                    basis.push(y);
                }
            }
            for k in 1..m {
                // i * sqrt(2 / (k (k+1))) * diag(1, .., 1, -k, 0, ..)
                let s = (2.0 / (k * (k + 1)) as f64).sqrt();
                let mut d = CMat::zeros(size, size);
                for l in 0..k {
                    d[(offset + l, offset + l)] = c(0.0, s);
                }
                d[(offset + k, offset + k)] = c(0.0, -(k as f64) * s);
                basis.push(d);
            }
            offset += m;
        }
        Self {
            size,
            blocks: blocks.to_vec(),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    /// Coordinates in the orthonormal basis.
    pub fn coords(&self, x: &CMat) -> RVec {
        RVec::from_iterator(self.dim(), self.basis.iter().map(|b| inner(b, x)))
    }

    pub fn from_coords(&self, v: &RVec) -> CMat {
        let mut out = CMat::zeros(self.size, self.size);
        for (b, &t) in self.basis.iter().zip(v.iter()) {
            out += b * c(t, 0.0);
        }
        out
    }

    /// Matrix of a real-linear map in the basis: column `j` holds the
    /// coordinates of `f(b_j)`.
    pub fn linear_map(&self, f: impl Fn(&CMat) -> CMat) -> RMat {
        let cols: Vec<RVec> = self.basis.iter().map(|b| self.coords(&f(b))).collect();
        RMat::from_columns(&cols)
    }

    pub fn ad(&self, x: &CMat) -> RMat {
        self.linear_map(|b| bracket(x, b))
    }

    /// `Ad(g)` for unitary `g`.
    pub fn adjoint_action(&self, g: &CMat) -> RMat {
        let gi = g.adjoint();
        self.linear_map(|b| g * b * &gi)
    }

    /// Residual of `x` as an element of the algebra: skew-Hermitian part
    /// defect plus trace, per block.
    pub fn membership_defect(&self, x: &CMat) -> f64 {
        let skew = (x + x.adjoint()).norm();
        let mut trace = 0.0;
        let mut offset = 0;
        for &m in &self.blocks {
            let mut t = c(0.0, 0.0);
            for k in 0..m {
                t += x[(offset + k, offset + k)];
            }
            trace += t.norm();
            offset += m;
        }
        let outside = (x - self.from_coords(&self.coords(x))).norm();
        skew + trace + outside
    }
}

/// `-1/2 Re tr(XY)`.
pub fn inner(x: &CMat, y: &CMat) -> f64 {
    let mut s = 0.0;
    for i in 0..x.nrows() {
        for k in 0..x.ncols() {
            s += (x[(i, k)] * y[(k, i)]).re;
        }
    }
    -0.5 * s
}

/// Norm induced by [`inner`] (for skew-Hermitian input).
pub fn norm(x: &CMat) -> f64 {
    x.norm() / std::f64::consts::SQRT_2
}

pub fn bracket(x: &CMat, y: &CMat) -> CMat {
    x * y - y * x
}

/// Orthonormal basis (as columns) of the eigenvalue-1 space of a symmetric
/// projector.
pub fn projector_range(p: &RMat) -> RMat {
    let eig = SymmetricEigen::new(p.clone());
    let cols: Vec<RVec> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| eig.eigenvectors.column(i).into_owned())
        .collect();
    stack(p.nrows(), &cols)
}

/// Columns as a matrix; an `n x 0` matrix when empty.
pub fn stack(rows: usize, cols: &[RVec]) -> RMat {
    if cols.is_empty() {
        RMat::zeros(rows, 0)
    } else {
        RMat::from_columns(cols)
    }
}

/// Orthonormal basis of the null space of `m` (singular values below `tol`).
pub fn null_space(m: &RMat, tol: f64) -> RMat {
    let n = m.ncols();
    let gram = m.transpose() * m;
    let eig = SymmetricEigen::new(gram);
    let cols: Vec<RVec> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.max(0.0).sqrt() < tol)
        .map(|(i, _)| eig.eigenvectors.column(i).into_owned())
        .collect();
    stack(n, &cols)
}

/// Operator 2-norm of a real matrix.
pub fn op_norm(m: &RMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal() {
        for m in 2..=5 {
            let g = LieAlgebra::su(m);
            assert_eq!(g.dim(), m * m - 1);
            for (i, a) in g.basis().iter().enumerate() {
                assert!(g.membership_defect(a) < 1e-12);
                for (j, b) in g.basis().iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((inner(a, b) - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ad_is_skew_and_block_sum_dimension() {
        let g = LieAlgebra::su(3);
        let x = g.basis()[0].clone() * c(0.3, 0.0) + g.basis()[7].clone() * c(-1.1, 0.0);
        let a = g.ad(&x);
        assert!((&a + a.transpose()).norm() < 1e-12);
        let s = LieAlgebra::block_sum(&[2, 3]);
        assert_eq!(s.dim(), 3 + 8);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = LieAlgebra::su(4);
        let v = RVec::from_fn(15, |i, _| (i as f64 * 0.37).sin());
        assert!((g.coords(&g.from_coords(&v)) - &v).norm() < 1e-12);
    }
}
