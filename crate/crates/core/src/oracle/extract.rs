//! Reads off the symmetric triad and the multiplicities of a matrix model by
//! diagonalising `-ad(H)^2` at a generic `H` in `a`.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use num_traits::ToPrimitive;

use super::algebra::{stack, RMat, RVec};
use super::model::PairModel;
use crate::error::{Error, Result};
use crate::exact::{ratio, snap_rational, ExactVector, Rational};
use crate::triads::SymmetricTriad;

/// Eigenvalues closer than this belong to the same root space.
pub const CLUSTER_GAP: f64 = 1e-7;
/// Gaps between [`CLUSTER_GAP`] and this are reported as ambiguous.
pub const AMBIGUOUS_GAP: f64 = 1e-4;
const SNAP_TOL: f64 = 1e-6;
const SNAP_DEN: i64 = 10_000;
const VERIFY_TOL: f64 = 1e-8;

/// The `±lambda` eigenspace of `-ad(a)^2` for one positive root.
#[derive(Clone, Debug)]
pub struct RootSpace {
    /// Lexicographically positive representative.
    pub root: ExactVector,
    /// Orthonormal basis (columns) of `g(a, ±lambda)`.
    pub basis: RMat,
    /// Dimensions of the `theta0 theta1 = +1` and `-1` parts.
    pub plus: usize,
    pub minus: usize,
}

impl RootSpace {
    pub fn m(&self) -> u32 {
        (self.plus / 2) as u32
    }

    pub fn n(&self) -> u32 {
        (self.minus / 2) as u32
    }
}

#[derive(Clone, Debug)]
pub struct ExtractedTriad {
    pub triad: SymmetricTriad,
    pub spaces: Vec<RootSpace>,
    /// Dimension of the centraliser of `a`.
    pub centralizer_dim: usize,
    /// The generic point used, in `a` coordinates.
    pub generic: ExactVector,
    /// Largest residual of the linear-form fit over all root spaces.
    pub residual: f64,
}

impl ExtractedTriad {
    pub fn space(&self, root: &ExactVector) -> Option<&RootSpace> {
        let pos = if root.is_lex_positive() { root.clone() } else { root.neg() };
        self.spaces.iter().find(|s| s.root == pos)
    }
}

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// The projection onto `a` of `(1/2, 1/3, 1/5, ...)`. Differences of
/// reciprocals of distinct primes are distinct, so distinct type A roots take
/// distinct values here.
pub fn generic_point(model: &PairModel) -> ExactVector {
    let coords: Vec<Rational> = (0..model.coord_dim())
        .map(|k| ratio(1, PRIMES[k % PRIMES.len()]))
        .collect();
    model.a_space.project(&ExactVector::new(coords).expect("nonempty"))
}

fn clusters(values: &[(f64, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<f64> = None;
    for &(mu, i) in values {
        match last {
            Some(prev) if mu - prev < CLUSTER_GAP => out.last_mut().expect("open cluster").push(i),
            Some(prev) if mu - prev < AMBIGUOUS_GAP => {
                return Err(Error::ClusterAmbiguity { gap: mu - prev });
            }
            _ => out.push(vec![i]),
        }
        last = Some(mu);
    }
    Ok(out)
}

/// Extracts `(sigma_tilde, sigma, w)` with `m` and `n` from the model.
pub fn extract_triad(model: &PairModel) -> Result<ExtractedTriad> {
    let generic = generic_point(model);
    let hg = model.exact_matrix(&generic);
    let ad = model.algebra.ad(&hg);
    let eig = SymmetricEigen::new(ad.transpose() * &ad);
    let mut centralizer = Vec::new();
    let mut values = Vec::new();
    for (i, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev < 1e-10 {
            centralizer.push(i);
        } else {
            values.push((ev.sqrt(), i));
        }
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let groups = clusters(&values)?;
    let n = model.algebra.dim();
    let a_forms: Vec<RMat> = model
        .a_space
        .basis()
        .iter()
        .map(|b| model.algebra.ad(&model.exact_matrix(b)))
        .collect();
    let theta01 = &model.theta0 * &model.theta1;
    let mut spaces = Vec::new();
    let mut residual = 0.0f64;
    for group in groups {
        let cols: Vec<RVec> = group.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
        let u = stack(n, &cols);
        let d = u.ncols();
        let mu = group.iter().map(|&i| eig.eigenvalues[i].sqrt()).sum::<f64>() / d as f64;
        let ut = u.transpose();
        let j = &ut * &ad * &u / mu;
        let mut pairings = Vec::new();
        let mut blocks = Vec::new();
        for form in &a_forms {
            let b = &ut * form * &u;
            let p = (&b * j.transpose()).trace() / d as f64;
            let snapped = snap_rational(p, SNAP_TOL, SNAP_DEN)
                .ok_or_else(|| Error::Numerical(format!("root value {p} does not snap to a fraction")))?;
            pairings.push(snapped);
            blocks.push(b);
        }
        let lambda = model.a_space.dual_solve(&pairings);
        for (b, basis_vec) in blocks.iter().zip(model.a_space.basis()) {
            let exact = lambda.dot(basis_vec).to_f64().unwrap_or(f64::NAN);
            residual = residual.max((b - &j * exact).amax());
        }
        let at_generic = lambda.dot(&generic).to_f64().unwrap_or(f64::NAN);
        residual = residual.max((at_generic - mu).abs());
        if residual > VERIFY_TOL {
            return Err(Error::Numerical(format!(
                "root space of dimension {d} is not a single root (residual {residual:.3e})"
            )));
        }
        let trace = (&ut * &theta01 * &u).trace();
        let plus_f = (d as f64 + trace) / 2.0;
        let plus = plus_f.round();
        if (plus - plus_f).abs() > 1e-6 || plus as usize % 2 != 0 || (d - plus as usize) % 2 != 0 {
            return Err(Error::Numerical(format!("odd eigenspace split {plus_f} of {d}")));
        }
        let root = if lambda.is_lex_positive() { lambda } else { lambda.neg() };
        spaces.push(RootSpace {
            root,
            basis: u,
            plus: plus as usize,
            minus: d - plus as usize,
        });
    }
    spaces.sort_by(|a, b| a.root.cmp(&b.root));
    let mut sigma_tilde = Vec::new();
    let mut sigma = Vec::new();
    let mut w = Vec::new();
    let mut m = BTreeMap::new();
    let mut nmap = BTreeMap::new();
    for s in &spaces {
        for r in [s.root.clone(), s.root.neg()] {
            sigma_tilde.push(r.clone());
            if s.m() > 0 {
                sigma.push(r.clone());
                m.insert(r.clone(), s.m());
            }
            if s.n() > 0 {
                w.push(r.clone());
                nmap.insert(r, s.n());
            }
        }
    }
    let triad = SymmetricTriad::new(model.coord_dim(), sigma_tilde, sigma, w)?.with_multiplicities(Some(m), Some(nmap));
    Ok(ExtractedTriad {
        triad,
        spaces,
        centralizer_dim: centralizer.len(),
        generic,
        residual,
    })
}
