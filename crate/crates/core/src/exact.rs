//! Exact rational vectors and the small amount of exact linear algebra the
//! symbolic modules need (rank, span membership, Gram solves, projections).
//!
//! Everything here works over [`BigRational`], so regularity and lattice
//! membership tests downstream are decided without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Builds `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    // num-rational accepts a leading '+', and nothing else we care about.
    BigRational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
}

/// Renders a rational as `"p"` or `"p/q"` with the sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// True iff `r` lies in `1/2 + Z`.
pub fn is_half_odd(r: &Rational) -> bool {
    let twice = r * int(2);
    twice.is_integer() && twice.to_integer().is_odd()
}

/// True iff `r` lies in `(1/2) Z`.
pub fn is_half_integer(r: &Rational) -> bool {
    (r * int(2)).is_integer()
}

/// Vector with exact rational coordinates in a Euclidean ambient space.
///
/// Coordinates are always reduced (that is what [`BigRational`] maintains),
/// so derived equality, hashing and ordering are exact and canonical. The
/// ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector {
    coords: Vec<Rational>,
}

impl ExactVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Invalid("vector must have positive dimension".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        assert!(!values.is_empty(), "vector must have positive dimension");
        Self {
            coords: values.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector must have positive dimension");
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[index] = Rational::one();
        v
    }

    /// Parses a comma-separated list such as `"1/7, 2/7, -3/7"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + factor * b)
                .collect(),
        }
    }

    /// Concatenates coordinate blocks.
    pub fn concat(parts: &[&ExactVector]) -> Self {
        let coords: Vec<Rational> = parts.iter().flat_map(|p| p.coords.iter().cloned()).collect();
        assert!(!coords.is_empty());
        Self { coords }
    }

    /// Embeds into a larger space at coordinate `offset`.
    pub fn embed(&self, ambient_dim: usize, offset: usize) -> Self {
        assert!(offset + self.dim() <= ambient_dim);
        let mut out = Self::zeros(ambient_dim);
        out.coords[offset..offset + self.dim()].clone_from_slice(&self.coords);
        out
    }

    /// Sign of the first nonzero coordinate. This is the tie-free
    /// lexicographic order used to pick positive systems.
    pub fn lex_sign(&self) -> Ordering {
        for c in &self.coords {
            if c.is_positive() {
                return Ordering::Greater;
            }
            if c.is_negative() {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    pub fn is_lex_positive(&self) -> bool {
        self.lex_sign() == Ordering::Greater
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Coordinates rendered as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coords = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Serialized as a list of `"p/q"` strings.
impl serde::Serialize for ExactVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coords.iter().map(format_rational))
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Row-reduces a copy of `rows` and returns the reduced nonzero rows together
/// with the pivot column of each.
fn row_echelon(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: &[ExactVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords.clone()).collect();
    row_echelon(&rows).1.len()
}

/// Greedy maximal independent subset, keeping input order.
pub fn independent_subset(vectors: &[ExactVector]) -> Vec<ExactVector> {
    let mut basis: Vec<ExactVector> = Vec::new();
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        basis.push(v.clone());
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

pub fn gram(basis: &[ExactVector]) -> Vec<Vec<Rational>> {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| a.dot(b)).collect())
        .collect()
}

/// Solves the square system `matrix * x = rhs` exactly. Errors if singular.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !aug[i][c].is_zero())
            .ok_or_else(|| Error::Invalid("singular linear system".into()))?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let delta = &f * &aug[c][j];
                    aug[i][j] -= delta;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// An independent list of vectors together with its Gram matrix, used to
/// project onto and test membership in its span.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<ExactVector>,
    gram: Vec<Vec<Rational>>,
    /// Basis of the orthogonal complement, for cheap membership tests.
    normals: Vec<ExactVector>,
    ambient_dim: usize,
}

/// Basis of `{x : <x, b> = 0 for all b in basis}`.
fn orthogonal_complement(basis: &[ExactVector], ambient_dim: usize) -> Vec<ExactVector> {
    let rows: Vec<Vec<Rational>> = basis.iter().map(|v| v.coords.clone()).collect();
    let (reduced, pivots) = row_echelon(&rows);
    (0..ambient_dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); ambient_dim];
            x[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = -row[free].clone();
            }
            ExactVector { coords: x }
        })
        .collect()
}

impl Subspace {
    /// Requires an independent basis; errors otherwise.
    pub fn new(basis: Vec<ExactVector>) -> Result<Self> {
        let ambient_dim = basis
            .first()
            .map(ExactVector::dim)
            .ok_or_else(|| Error::Invalid("subspace basis is empty".into()))?;
        for b in &basis {
            if b.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: b.dim(),
                });
            }
        }
        if rank(&basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let gram = gram(&basis);
        let normals = orthogonal_complement(&basis, ambient_dim);
        Ok(Self {
            basis,
            gram,
            normals,
            ambient_dim,
        })
    }

    /// Span of an arbitrary (possibly dependent) list of vectors in a space
    /// of dimension `ambient_dim`. Returns `None` for the zero subspace.
    pub fn spanned_by(vectors: &[ExactVector]) -> Option<Self> {
        let basis = independent_subset(vectors);
        if basis.is_empty() {
            return None;
        }
        Some(Self::new(basis).expect("independent subset is independent"))
    }

    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Coefficients `c` of the orthogonal projection `sum c_i b_i` of `v`.
    pub fn projection_coefficients(&self, v: &ExactVector) -> Vec<Rational> {
        let rhs: Vec<Rational> = self.basis.iter().map(|b| b.dot(v)).collect();
        solve(&self.gram, &rhs).expect("Gram matrix of an independent basis is invertible")
    }

    pub fn combine(&self, coeffs: &[Rational]) -> ExactVector {
        let mut out = ExactVector::zeros(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out = out.add_scaled(c, b);
        }
        out
    }

    pub fn project(&self, v: &ExactVector) -> ExactVector {
        self.combine(&self.projection_coefficients(v))
    }

    /// Basis of the orthogonal complement in the ambient space.
    pub fn normals(&self) -> &[ExactVector] {
        &self.normals
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        v.dim() == self.ambient_dim && self.normals.iter().all(|n| n.dot(v).is_zero())
    }

    /// Vector `x` in the span with `<x, b_i> = targets[i]` for each basis vector.
    pub fn dual_solve(&self, targets: &[Rational]) -> ExactVector {
        let coeffs = solve(&self.gram, targets).expect("Gram matrix is invertible");
        self.combine(&coeffs)
    }
}

/// Scales every vector by one common denominator to machine integers.
/// Returns the integer rows and that denominator, or `None` on overflow.
pub fn common_integer_scale(vectors: &[&ExactVector]) -> Option<(Vec<Vec<i64>>, i64)> {
    let mut den = 1i64;
    for v in vectors {
        for c in v.coords() {
            let d = c.denom().to_i64()?;
            den = den.checked_mul(d / den.gcd(&d))?;
        }
    }
    let rows = vectors
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| (c * int(den)).to_integer().to_i64())
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((rows, den))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it lies within `tol` of `x`.
pub fn snap_rational(x: f64, tol: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol {
            return Some(ratio(h1, k1));
        }
        let frac = rem - rem.floor();
        if frac.abs() < 1e-15 {
            break;
        }
        rem = 1.0 / frac;
    }
    if k1 > 0 && ((h1 as f64 / k1 as f64) - x).abs() <= tol {
        Some(ratio(h1, k1))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let v = ExactVector::parse("1/7, 2/7,-3/7").unwrap();
        assert_eq!(v.to_strings(), vec!["1/7", "2/7", "-3/7"]);
        assert_eq!(ExactVector::parse("4/2").unwrap().to_strings(), vec!["2"]);
        assert!(ExactVector::parse("1/0").is_err());
        assert!(ExactVector::parse("").is_err());
        assert!(ExactVector::parse("1,,2").is_err());
    }

    #[test]
    fn half_integer_classes() {
        assert!(is_half_odd(&ratio(1, 2)));
        assert!(is_half_odd(&ratio(-3, 2)));
        assert!(!is_half_odd(&int(1)));
        assert!(is_half_integer(&int(-2)));
        assert!(!is_half_integer(&ratio(1, 4)));
    }

    #[test]
    fn rank_and_projection() {
        let a = ExactVector::from_ints(&[1, -1, 0]);
        let b = ExactVector::from_ints(&[0, 1, -1]);
        let c = ExactVector::from_ints(&[1, 0, -1]);
        assert_eq!(rank(&[a.clone(), b.clone(), c.clone()]), 2);
        let s = Subspace::new(vec![a.clone(), b.clone()]).unwrap();
        assert!(s.contains(&c));
        let p = s.project(&ExactVector::from_ints(&[1, 0, 0]));
        assert_eq!(p.to_strings(), vec!["2/3", "-1/3", "-1/3"]);
        assert!(matches!(Subspace::new(vec![a, b, c]), Err(Error::DependentBasis)));
    }

    #[test]
    fn complement_membership_agrees_with_projection() {
        let s = Subspace::new(vec![ExactVector::from_ints(&[1, 0, 1, 0]), ExactVector::from_ints(&[0, 1, 0, 1])]).unwrap();
        for v in [[2, -3, 2, -3], [1, 0, 0, 0], [0, 0, 0, 0], [1, 1, 1, 2]] {
            let v = ExactVector::from_ints(&v);
            assert_eq!(s.contains(&v), s.project(&v) == v);
        }
    }

    #[test]
    fn lex_order_is_tie_free() {
        assert!(ExactVector::from_ints(&[0, 1, -5]).is_lex_positive());
        assert!(!ExactVector::from_ints(&[0, -1, 5]).is_lex_positive());
        assert_eq!(ExactVector::zeros(2).lex_sign(), Ordering::Equal);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_rational(0.5 + 1e-9, 1e-6, 1000), Some(ratio(1, 2)));
        assert_eq!(snap_rational(-2.0, 1e-6, 1000), Some(int(-2)));
        assert_eq!(snap_rational(1.0 / 3.0, 1e-6, 1000), Some(ratio(1, 3)));
        assert_eq!(snap_rational(std::f64::consts::PI, 1e-12, 1000), None);
    }
}
