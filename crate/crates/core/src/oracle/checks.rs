//! Numerical certificates: intersection dimensions, commutativity of
//! intersection points, the rotation identities and the order of `exp H_0`.

use nalgebra::{Complex, SymmetricEigen};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{bracket, norm, stack, CMat, RMat, RVec};
use super::extract::ExtractedTriad;
use super::model::PairModel;
use super::report::{Check, Report};
use crate::error::{Error, Result};
use crate::exact::{ratio, ExactVector, Rational};
use crate::triads::{
    fundamental_cell, gamma_contains, is_regular, predicted_intersection_dim, st_point, PiPoint, SymmetricTriad,
};

/// Singular values below this count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Singular values in this open band are rejected as marginal.
pub const MARGINAL_BAND: (f64, f64) = (1e-9, 1e-7);
pub const BRACKET_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-8;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `exp(X)` for skew-Hermitian `X`, through the spectral decomposition of the
/// Hermitian matrix `-iX`.
pub fn unitary_exp(x: &CMat) -> CMat {
    let herm = x.map(|z| Complex::new(z.im, -z.re));
    let herm = (&herm + herm.adjoint()) * Complex::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let u = &eig.eigenvectors;
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|l| Complex::new(l.cos(), l.sin())));
    u * d * u.adjoint()
}

/// `Ad(exp(pi * scale * H))` for `H = pi^{-1} * h` in `a` coordinates.
pub fn adjoint_exp(model: &PairModel, h: &ExactVector, scale: f64) -> RMat {
    let x = model.exact_matrix(h) * Complex::new(std::f64::consts::PI * scale, 0.0);
    model.algebra.adjoint_action(&unitary_exp(&x))
}

/// Singular values (padded with zeros to the column count) and right singular
/// vectors of `m`.
fn singular_system(m: &RMat) -> (Vec<f64>, RMat) {
    let cols = m.ncols();
    let rows = m.nrows().max(cols);
    let mut padded = RMat::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v = svd.v_t.expect("requested").transpose();
    (svd.singular_values.iter().copied().collect(), v)
}

/// Orthonormal basis of `p0 ∩ Ad(exp H) p1`.
pub fn intersection_basis(model: &PairModel, h: &PiPoint) -> Result<RMat> {
    if h.dim() != model.coord_dim() {
        return Err(Error::DimensionMismatch {
            expected: model.coord_dim(),
            found: h.dim(),
        });
    }
    let ad = adjoint_exp(model, h.q(), 1.0);
    let moved = &ad * &model.p1;
    let (p0, p1) = (model.p0.ncols(), moved.ncols());
    let mut system = RMat::zeros(model.algebra.dim(), p0 + p1);
    system.view_mut((0, 0), (model.algebra.dim(), p0)).copy_from(&model.p0);
    system.view_mut((0, p0), (model.algebra.dim(), p1)).copy_from(&moved);
    let (svs, v) = singular_system(&system);
    if let Some(&s) = svs.iter().find(|&&s| s > MARGINAL_BAND.0 && s < MARGINAL_BAND.1) {
        return Err(Error::Marginal { value: s });
    }
    let vecs: Vec<RVec> = svs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < RANK_THRESHOLD)
        .map(|(i, _)| &model.p0 * v.column(i).rows(0, p0))
        .collect();
    let raw = stack(model.algebra.dim(), &vecs);
    if raw.ncols() == 0 {
        return Ok(raw);
    }
    Ok(raw.qr().q())
}

/// `dim(p0 ∩ Ad(exp H) p1)`.
pub fn intersection_dimension(model: &PairModel, h: &PiPoint) -> Result<usize> {
    Ok(intersection_basis(model, h)?.ncols())
}

fn hermitian_spectrum(x: &CMat) -> Vec<f64> {
    let herm = x.map(|z| Complex::new(z.im, -z.re));
    let herm = (&herm + herm.adjoint()) * Complex::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Antipodality of intersection points: checks that each point lies on the
/// orbit of `x0` inside `p0 ∩ Ad(exp H) p1`, then measures the brackets
/// among the points and against that intersection.
pub fn verify_commutative_lemma(model: &PairModel, h: &PiPoint, x0: &CMat, points: &[CMat]) -> Result<Report> {
    let spectrum = hermitian_spectrum(x0);
    let ad = adjoint_exp(model, h.q(), 1.0);
    let inter = intersection_basis(model, h)?;
    let alg = &model.algebra;
    for (index, x) in points.iter().enumerate() {
        let ev = hermitian_spectrum(x);
        let gap = ev.iter().zip(&spectrum).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if ev.len() != spectrum.len() || gap > IDENTITY_TOL {
            return Err(Error::OrbitMembership {
                index,
                reason: format!("eigenvalues differ from those of x0 by {gap:.3e}"),
            });
        }
        let c = alg.coords(x);
        let off_p0 = (&model.theta0 * &c + &c).norm();
        // Ad(a) p1 is the -1 eigenspace of Ad(a) theta1 Ad(a)^{-1}
        let moved = &ad * &model.theta1 * ad.transpose();
        let off_p1 = (&moved * &c + &c).norm();
        if off_p0.max(off_p1) > IDENTITY_TOL || alg.membership_defect(x) > IDENTITY_TOL {
            return Err(Error::OrbitMembership {
                index,
                reason: format!("not in p0 ∩ Ad(a)p1 (defect {:.3e})", off_p0.max(off_p1)),
            });
        }
    }
    let mut pairwise = 0.0f64;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            pairwise = pairwise.max(norm(&bracket(x, y)));
        }
    }
    let mut against = 0.0f64;
    for x in points {
        for col in inter.column_iter() {
            let v = alg.from_coords(&col.into_owned());
            against = against.max(norm(&bracket(x, &v)));
        }
    }
    let mut r = Report::new(format!("{} n={} commutativity at {h}", model.name, model.size));
    r.push(Check::below(format!("pairwise brackets of {} points", points.len()), pairwise, BRACKET_TOL));
    r.push(Check::below("brackets against p0 ∩ Ad(a)p1", against, BRACKET_TOL));
    Ok(r)
}

/// Matrix of the element of `a` dual to the linear form `root`.
pub fn root_element(model: &PairModel, root: &ExactVector) -> CMat {
    let basis: Vec<CMat> = model.a_space.basis().iter().map(|b| model.exact_matrix(b)).collect();
    let k = basis.len();
    let gram = RMat::from_fn(k, k, |i, j| super::algebra::inner(&basis[i], &basis[j]));
    let rhs = RVec::from_iterator(k, model.a_space.basis().iter().map(|b| to_f64(&root.dot(b))));
    let coeffs = gram.lu().solve(&rhs).expect("basis of a is independent");
    let n = model.algebra.matrix_size();
    let mut out = CMat::zeros(n, n);
    for (b, c) in basis.iter().zip(coeffs.iter()) {
        out += b * Complex::new(*c, 0.0);
    }
    out
}

/// Orthonormal basis (columns, algebra coordinates) of the part of `space`
/// where `theta0 = s0` and `theta1 = s1`.
fn eigen_part(model: &PairModel, space: &RMat, s0: f64, s1: f64) -> RMat {
    let d = space.ncols();
    let id = RMat::identity(d, d);
    let t0 = space.transpose() * &model.theta0 * space;
    let t1 = space.transpose() * &model.theta1 * space;
    let proj = (&id + t0 * s0) * (&id + t1 * s1) * 0.25;
    let proj = (&proj + proj.transpose()) * 0.5;
    space * super::algebra::projector_range(&proj)
}

/// Which identity family to test for a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootClass {
    /// `lambda` in sigma: `S` in `k0 ∩ k1`, `T` in `p0 ∩ p1`.
    Sigma,
    /// `alpha` in w: `X` in `k0 ∩ p1`, `Y` in `p0 ∩ k1`.
    W,
}

/// Builds the paired bases for `root` and checks the bracket and rotation
/// identities at `H = pi * h`. The second basis is the polar factor of the
/// `ad`-intertwiner applied to the first.
pub fn verify_rotation_formulas(
    model: &PairModel,
    extracted: &ExtractedTriad,
    root: &ExactVector,
    class: RootClass,
    h: &PiPoint,
) -> Result<Report> {
    let space = extracted
        .space(root)
        .ok_or_else(|| Error::Invalid(format!("{root} is not a root of the model")))?;
    let (signs_first, signs_second, expected, label) = match class {
        RootClass::Sigma => ((1.0, 1.0), (-1.0, -1.0), space.m() as usize, ("S", "T")),
        RootClass::W => ((1.0, -1.0), (-1.0, 1.0), space.n() as usize, ("X", "Y")),
    };
    let first = eigen_part(model, &space.basis, signs_first.0, signs_first.1);
    let second = eigen_part(model, &space.basis, signs_second.0, signs_second.1);
    if first.ncols() != expected || second.ncols() != expected || expected == 0 {
        return Err(Error::RankDeficient(format!(
            "{root}: paired spaces of dimension {} and {}, expected {expected}",
            first.ncols(),
            second.ncols()
        )));
    }
    let alg = &model.algebra;
    let generic = model.exact_matrix(&extracted.generic);
    let mu = to_f64(&root.dot(&extracted.generic));
    let k = second.transpose() * alg.ad(&generic) * &first / mu;
    let svd = k.clone().svd(true, true);
    if svd.singular_values.min() < 1e-6 {
        return Err(Error::RankDeficient(format!("{root}: ad(H) intertwiner is singular")));
    }
    let polar = svd.u.expect("requested") * svd.v_t.expect("requested");
    let paired = &second * polar;
    let theta = std::f64::consts::PI * to_f64(&h.pairing(root));
    let (c, s) = (theta.cos(), theta.sin());
    let g = unitary_exp(&(model.exact_matrix(h.q()) * Complex::new(std::f64::consts::PI, 0.0)));
    let gi = g.adjoint();
    let target = root_element(model, root);
    let scale = norm(&target);
    let a_mats: Vec<(CMat, f64)> = model
        .a_space
        .basis()
        .iter()
        .map(|b| (model.exact_matrix(b), to_f64(&root.dot(b))))
        .collect();
    let (mut ad_res, mut bracket_res, mut rot_res) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..expected {
        let x = alg.from_coords(&first.column(i).into_owned());
        let y = alg.from_coords(&paired.column(i).into_owned());
        for (b, p) in &a_mats {
            let cp = Complex::new(*p, 0.0);
            ad_res = ad_res
                .max(norm(&(bracket(b, &x) - &y * cp)))
                .max(norm(&(bracket(b, &y) + &x * cp)));
        }
        bracket_res = bracket_res.max(norm(&(bracket(&x, &y) - &target)) / scale);
        let gx = &g * &x * &gi;
        let gy = &g * &y * &gi;
        let (cc, sc) = (Complex::new(c, 0.0), Complex::new(s, 0.0));
        rot_res = rot_res
            .max(norm(&(gx - (&x * cc + &y * sc))))
            .max(norm(&(gy - (&y * cc - &x * sc))));
    }
    let (a, b) = label;
    let mut r = Report::new(format!("{} n={} root {root} at {h}", model.name, model.size));
    r.push(Check::below(format!("[H,{a}] = <root,H>{b}, [H,{b}] = -<root,H>{a}"), ad_res, IDENTITY_TOL));
    r.push(Check::below(format!("[{a},{b}] = root (relative)"), bracket_res, IDENTITY_TOL));
    r.push(Check::below(format!("Ad(exp H) rotates ({a},{b})"), rot_res, IDENTITY_TOL));
    Ok(r)
}

/// Checks that `exp(4 n H_0)` acts trivially for `H_0 = st_point(t, n)`, that
/// `H_0` is regular numerically, a negative control off `Gamma`, and the
/// exponent identity `Ad(exp 4nH_0) = (Ad(exp 2H_0)^{-2})^{-n}`.
pub fn verify_lemma_regularity(model: &PairModel, t: &SymmetricTriad, n: u64) -> Result<Report> {
    let h0 = st_point(t, n)?;
    let id = RMat::identity(model.algebra.dim(), model.algebra.dim());
    let full = adjoint_exp(model, h0.q(), 4.0 * n as f64);
    let mut r = Report::new(format!("{} n={} order of exp H0, n = {n}", model.name, model.size));
    r.push(Check::below("Ad(exp 4nH0) - I", (&full - &id).amax(), IDENTITY_TOL));
    r.push(Check::equal("dim p0 ∩ Ad(exp H0)p1 = dim a", intersection_dimension(model, &h0)?, model.dim_a()));
    let cell = fundamental_cell(t)?;
    let mut control = None;
    'outer: for v in &cell.h_basis {
        for d in 1..=4i64 {
            let cand = v.scale(&ratio(1, d));
            if !gamma_contains(t, &cand)? {
                control = Some(cand);
                break 'outer;
            }
        }
    }
    let control = control.ok_or_else(|| Error::Invalid("no control point off Gamma".into()))?;
    let off = adjoint_exp(model, control.q(), 4.0);
    r.push(Check::above(format!("control {control} off Gamma: Ad(exp 4H) - I"), (&off - &id).amax(), 1e-3));
    let half = adjoint_exp(model, h0.q(), 2.0);
    let inv_sq = (&half * &half).transpose();
    let mut power = id.clone();
    for _ in 0..n {
        power *= &inv_sq;
    }
    // (A^{-2})^{-n} is the transpose of (A^{-2})^n for orthogonal A
    r.push(Check::below("exponent consistency", (&full - power.transpose()).amax(), IDENTITY_TOL));
    Ok(r)
}

/// Compares `intersection_dimension` with the symbolic prediction on `count`
/// seeded points with coordinates in `(1/12) Z`, projected onto `a`.
pub fn dimension_grid(model: &PairModel, t: &SymmetricTriad, count: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new(format!("{} n={} dimension grid", model.name, model.size));
    r.seed = Some(seed);
    let (mut mismatches, mut regular_mismatch, mut singular) = (0usize, 0usize, 0usize);
    for _ in 0..count {
        let coords: Vec<Rational> = (0..model.coord_dim())
            .map(|_| ratio(rng.random_range(-12..=12), 12))
            .collect();
        let h = PiPoint::new(model.a_space.project(&ExactVector::new(coords)?));
        let measured = intersection_dimension(model, &h)?;
        let predicted = predicted_intersection_dim(t, &h)?;
        let regular = is_regular(t, &h)?.regular;
        if !regular {
            singular += 1;
        }
        if measured != predicted {
            mismatches += 1;
        }
        if (measured == model.dim_a()) != regular {
            regular_mismatch += 1;
        }
    }
    r.push(Check::equal(format!("dimension mismatches over {count} points ({singular} singular)"), mismatches, 0));
    r.push(Check::equal("dim = dim a disagreeing with regularity", regular_mismatch, 0));
    Ok(r)
}

/// For `su(m)` with `x0` on the diagonal torus: the points of `orbit` commute
/// pairwise, and each of `trials` random conjugates of `x0` fails to commute
/// with some orbit point.
pub fn verify_antipodal_maximality(x0: &ExactVector, orbit: &[ExactVector], trials: usize, seed: u64) -> Report {
    let m = x0.dim();
    let diag = |v: &ExactVector| CMat::from_diagonal(&RVec::from_vec(v.to_f64()).map(|t| Complex::new(0.0, t)));
    let points: Vec<CMat> = orbit.iter().map(diag).collect();
    let mut pairwise = 0.0f64;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            pairwise = pairwise.max(norm(&bracket(x, y)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = diag(x0);
    let mut weakest = f64::INFINITY;
    for _ in 0..trials {
        let mut k = CMat::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let z = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                if i == j {
                    k[(i, i)] = Complex::new(0.0, z.im);
                } else {
                    k[(i, j)] = z;
                    k[(j, i)] = -z.conj();
                }
            }
        }
        let g = unitary_exp(&k);
        let y = &g * &base * g.adjoint();
        let worst = points.iter().map(|x| norm(&bracket(x, &y))).fold(0.0, f64::max);
        weakest = weakest.min(worst);
    }
    let mut r = Report::new(format!("antipodal set of size {} in su({m})", orbit.len()));
    r.seed = Some(seed);
    r.push(Check::below("pairwise brackets in the orbit", pairwise, BRACKET_TOL));
    r.push(Check::above(format!("min over {trials} random conjugates of max bracket"), weakest, 1e-3));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::catalogue::{SUN_SO_RANK1, SU2N_SO_SP};
    use crate::oracle::build_pair;

    #[test]
    fn unitary_exp_of_diagonal() {
        let x = CMat::from_diagonal(&RVec::from_vec(vec![0.5, -0.5]).map(|t| Complex::new(0.0, t)));
        let g = unitary_exp(&x);
        assert!((g[(0, 0)] - Complex::new(0.5f64.cos(), 0.5f64.sin())).norm() < 1e-14);
        assert!((&g * g.adjoint() - CMat::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn dimension_at_zero_and_at_wall() {
        let m = build_pair(SUN_SO_RANK1, 3).unwrap();
        let zero = PiPoint::new(ExactVector::zeros(1));
        assert_eq!(intersection_dimension(&m, &zero).unwrap(), m.p0_p1().ncols());
        let regular = PiPoint::new(ExactVector::new(vec![ratio(1, 7)]).unwrap());
        assert_eq!(intersection_dimension(&m, &regular).unwrap(), 1);
        // <alpha, H> = pi/2 for the short root: dim a + n(alpha) = 1 + 1
        let wall = PiPoint::new(ExactVector::new(vec![ratio(1, 2)]).unwrap());
        assert_eq!(intersection_dimension(&m, &wall).unwrap(), 2);
    }

    #[test]
    fn perturbed_point_fails_membership() {
        let m = build_pair(SU2N_SO_SP, 2).unwrap();
        let h = PiPoint::new(ExactVector::new(vec![ratio(1, 7), ratio(-1, 7)]).unwrap());
        let x0 = m.exact_matrix(&ExactVector::from_ints(&[1, -1]));
        assert!(verify_commutative_lemma(&m, &h, &x0, std::slice::from_ref(&x0)).unwrap().passed());
        let bad = &x0 * Complex::new(1.01, 0.0);
        assert!(matches!(
            verify_commutative_lemma(&m, &h, &x0, &[x0.clone(), bad]),
            Err(Error::OrbitMembership { index: 1, .. })
        ));
    }
}
