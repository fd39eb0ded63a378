//! Matrix models of the catalogue pairs: two commuting involutions of `su(m)`
//! and a maximal abelian subspace `a` of `p0 ∩ p1`, written in the same
//! coordinates the exact side uses for `a`.

use nalgebra::Complex;

use super::algebra::{bracket, norm, projector_range, null_space, CMat, LieAlgebra, RMat};
use super::report::{Check, Report};
use crate::error::{Error, Result};
use crate::exact::{ExactVector, Subspace};
use crate::flags::catalogue::{SU2N_SO_SP, SUN_SO, SUN_SO_RANK1};

/// Largest matrix size the oracle accepts.
pub const MAX_MATRIX_SIZE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Involution {
    /// `X -> conj(X)`
    Conj,
    /// `X -> J^{-1} conj(X) J` with `J = [[0, -I], [I, 0]]`
    Symplectic,
    /// `X -> I_{1,n-1} X I_{1,n-1}`
    Signature,
}

fn apply(kind: Involution, x: &CMat) -> CMat {
    match kind {
        Involution::Conj => x.map(|z| z.conj()),
        Involution::Symplectic => {
            let m = x.nrows() / 2;
            let xb = x.map(|z| z.conj());
            // J^{-1} Y J with J^{-1} = -J: block (a, b; c, d) -> (d, -c; -b, a)
            let mut out = CMat::zeros(x.nrows(), x.ncols());
            for i in 0..m {
                for j in 0..m {
                    out[(i, j)] = xb[(m + i, m + j)];
                    out[(i, m + j)] = -xb[(m + i, j)];
                    out[(m + i, j)] = -xb[(i, m + j)];
                    out[(m + i, m + j)] = xb[(i, j)];
                }
            }
            out
        }
        Involution::Signature => {
            let mut out = x.clone();
            for k in 1..x.nrows() {
                out[(0, k)] = -out[(0, k)];
                out[(k, 0)] = -out[(k, 0)];
            }
            out
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairModel {
    pub name: &'static str,
    pub size: usize,
    pub algebra: LieAlgebra,
    kinds: (Involution, Involution),
    /// Matrices of `theta_0`, `theta_1` in the orthonormal basis.
    pub theta0: RMat,
    pub theta1: RMat,
    /// Orthonormal bases (columns) of the eigenspaces.
    pub k0: RMat,
    pub p0: RMat,
    pub k1: RMat,
    pub p1: RMat,
    /// `A_k`: the matrix attached to the `k`-th coordinate of `a`'s ambient
    /// space. Individual `A_k` need not be traceless.
    pub a_images: Vec<CMat>,
    /// Exact basis of `a` in those coordinates.
    pub a_space: Subspace,
    pub sanity: Report,
}

fn unit(n: usize, k: usize) -> ExactVector {
    ExactVector::unit(n, k)
}

fn diag_image(size: usize, entries: &[usize]) -> CMat {
    let mut a = CMat::zeros(size, size);
    for &k in entries {
        a[(k, k)] = Complex::new(0.0, 1.0);
    }
    a
}

fn difference_basis(n: usize) -> Vec<ExactVector> {
    (0..n - 1).map(|k| unit(n, k).sub(&unit(n, k + 1))).collect()
}

/// Builds the matrix model for a catalogue pair and runs the structural
/// sanity checks. Fails if any of them does not hold.
pub fn build_pair(name: &str, size: usize) -> Result<PairModel> {
    let invalid = |reason: &str| Error::InvalidSize {
        pair: name.into(),
        reason: reason.into(),
    };
    if size < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let (pair_name, m, kinds, a_images, basis) = match name {
        SU2N_SO_SP => {
            let m = 2 * size;
            let imgs = (0..size).map(|k| diag_image(m, &[k, size + k])).collect();
            (SU2N_SO_SP, m, (Involution::Conj, Involution::Symplectic), imgs, difference_basis(size))
        }
        SUN_SO_RANK1 => {
            let mut a = CMat::zeros(size, size);
            a[(0, 1)] = Complex::new(0.0, 1.0);
            a[(1, 0)] = Complex::new(0.0, 1.0);
            (SUN_SO_RANK1, size, (Involution::Conj, Involution::Signature), vec![a], vec![unit(1, 0)])
        }
        SUN_SO => {
            let imgs = (0..size).map(|k| diag_image(size, &[k])).collect();
            (SUN_SO, size, (Involution::Conj, Involution::Conj), imgs, difference_basis(size))
        }
        other => return Err(Error::UnknownPair(other.into())),
    };
    if m > MAX_MATRIX_SIZE {
        return Err(invalid(&format!("matrix size {m} exceeds {MAX_MATRIX_SIZE}")));
    }
    let algebra = LieAlgebra::su(m);
    let theta0 = algebra.linear_map(|x| apply(kinds.0, x));
    let theta1 = algebra.linear_map(|x| apply(kinds.1, x));
    let id = RMat::identity(algebra.dim(), algebra.dim());
    let half = |t: &RMat, sign: f64| (&id + t * sign) * 0.5;
    let mut model = PairModel {
        name: pair_name,
        size,
        k0: projector_range(&half(&theta0, 1.0)),
        p0: projector_range(&half(&theta0, -1.0)),
        k1: projector_range(&half(&theta1, 1.0)),
        p1: projector_range(&half(&theta1, -1.0)),
        algebra,
        kinds,
        theta0,
        theta1,
        a_images,
        a_space: Subspace::new(basis)?,
        sanity: Report::new(format!("{pair_name} n={size} model")),
    };
    model.sanity = model.sanity_checks();
    if !model.sanity.passed() {
        let names: Vec<String> = model.sanity.failures().map(|c| c.name.clone()).collect();
        return Err(Error::Numerical(format!("model checks failed: {}", names.join(", "))));
    }
    Ok(model)
}

impl PairModel {
    pub fn dim_a(&self) -> usize {
        self.a_space.dim()
    }

    /// Ambient dimension of `a`'s coordinates.
    pub fn coord_dim(&self) -> usize {
        self.a_images.len()
    }

    /// `sum_k h_k A_k`.
    pub fn matrix(&self, h: &[f64]) -> CMat {
        let n = self.algebra.matrix_size();
        let mut out = CMat::zeros(n, n);
        for (a, &t) in self.a_images.iter().zip(h) {
            out += a * Complex::new(t, 0.0);
        }
        out
    }

    pub fn exact_matrix(&self, h: &ExactVector) -> CMat {
        self.matrix(&h.to_f64())
    }

    pub fn theta0_of(&self, x: &CMat) -> CMat {
        apply(self.kinds.0, x)
    }

    pub fn theta1_of(&self, x: &CMat) -> CMat {
        apply(self.kinds.1, x)
    }

    /// Orthonormal basis of `p0 ∩ p1`.
    pub fn p0_p1(&self) -> RMat {
        let n = self.algebra.dim();
        let id = RMat::identity(n, n);
        let proj = (&id - &self.theta0) * (&id - &self.theta1) * 0.25;
        projector_range(&((&proj + proj.transpose()) * 0.5))
    }

    fn sanity_checks(&self) -> Report {
        let mut r = Report::new(format!("{} n={} model", self.name, self.size));
        let n = self.algebra.dim();
        let id = RMat::identity(n, n);
        let tol = 1e-12;
        r.push(Check::below("theta0 squared is identity", (&self.theta0 * &self.theta0 - &id).amax(), tol));
        r.push(Check::below("theta1 squared is identity", (&self.theta1 * &self.theta1 - &id).amax(), tol));
        r.push(Check::below(
            "theta0 and theta1 commute",
            (&self.theta0 * &self.theta1 - &self.theta1 * &self.theta0).amax(),
            tol,
        ));
        r.push(Check::below(
            "involutions are isometries",
            (self.theta0.transpose() * &self.theta0 - &id)
                .amax()
                .max((self.theta1.transpose() * &self.theta1 - &id).amax()),
            tol,
        ));
        let basis = self.algebra.basis();
        let mut hom = 0.0f64;
        let mut closed = 0.0f64;
        for x in basis {
            let (tx0, tx1) = (self.theta0_of(x), self.theta1_of(x));
            closed = closed.max(self.algebra.membership_defect(&tx0)).max(self.algebra.membership_defect(&tx1));
            for y in basis {
                let b = bracket(x, y);
                hom = hom
                    .max(norm(&(self.theta0_of(&b) - bracket(&tx0, &self.theta0_of(y)))))
                    .max(norm(&(self.theta1_of(&b) - bracket(&tx1, &self.theta1_of(y)))));
            }
        }
        r.push(Check::below("involutions preserve su(m)", closed, tol));
        r.push(Check::below("involutions preserve brackets", hom, 1e-10));
        let hs: Vec<CMat> = self.a_space.basis().iter().map(|b| self.exact_matrix(b)).collect();
        let mut inside = 0.0f64;
        let mut abelian = 0.0f64;
        for h in &hs {
            inside = inside
                .max(self.algebra.membership_defect(h))
                .max(norm(&(self.theta0_of(h) + h)))
                .max(norm(&(self.theta1_of(h) + h)));
            for g in &hs {
                abelian = abelian.max(norm(&bracket(h, g)));
            }
        }
        r.push(Check::below("a lies in p0 ∩ p1", inside, tol));
        r.push(Check::below("a is abelian", abelian, tol));
        let p01 = self.p0_p1();
        let blocks: Vec<RMat> = hs.iter().map(|h| self.algebra.ad(h) * &p01).collect();
        let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
        let mut stacked = RMat::zeros(rows, p01.ncols());
        let mut at = 0;
        for b in &blocks {
            stacked.view_mut((at, 0), (b.nrows(), b.ncols())).copy_from(b);
            at += b.nrows();
        }
        let centralizer = null_space(&stacked, 1e-8).ncols();
        r.push(Check::equal("a is maximal abelian in p0 ∩ p1", centralizer, self.dim_a()));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_models_pass_sanity() {
        for (name, n) in [(SU2N_SO_SP, 2), (SU2N_SO_SP, 3), (SUN_SO_RANK1, 2), (SUN_SO_RANK1, 4), (SUN_SO, 3)] {
            let m = build_pair(name, n).unwrap();
            assert!(m.sanity.passed(), "{}", m.sanity.to_table());
        }
    }

    #[test]
    fn eigenspace_dimensions() {
        let m = build_pair(SU2N_SO_SP, 3).unwrap();
        // so(6) and sp(3)
        assert_eq!(m.k0.ncols(), 15);
        assert_eq!(m.k1.ncols(), 21);
        assert_eq!(m.p0.ncols() + m.k0.ncols(), 35);
        assert_eq!(m.p0_p1().ncols(), 2 + 3 * 2);
    }

    #[test]
    fn rejects_oversized_and_unknown() {
        assert!(build_pair(SU2N_SO_SP, 7).is_err());
        assert!(build_pair("nope", 3).is_err());
        assert!(build_pair(SUN_SO, 1).is_err());
    }
}
