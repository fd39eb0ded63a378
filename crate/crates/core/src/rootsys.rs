//! Crystallographic root systems in rational coordinates, reflections, Weyl
//! orbits, and orthogonal projections of root systems onto subspaces.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{common_integer_scale, int, ratio, ExactVector, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            "F" => Ok(Self::F),
            "G" => Ok(Self::G),
            other => Err(Error::Parse(format!("unknown root system family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Classical { family: Family, rank: usize },
    Restricted,
    Custom,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Classical { family, rank } => write!(f, "{family}{rank}"),
            Label::Restricted => write!(f, "restricted"),
            Label::Custom => write!(f, "custom"),
        }
    }
}

/// `s_alpha(v) = v - 2 <alpha, v> / |alpha|^2 alpha`.
pub fn reflect(alpha: &ExactVector, v: &ExactVector) -> Result<ExactVector> {
    alpha.check_dim(v)?;
    if alpha.is_zero() {
        return Err(Error::ZeroRoot);
    }
    Ok(reflect_unchecked(alpha, v))
}

pub(crate) fn reflect_unchecked(alpha: &ExactVector, v: &ExactVector) -> ExactVector {
    let coeff = int(2) * alpha.dot(v) / alpha.norm_sq();
    if coeff.is_zero() {
        return v.clone();
    }
    v.add_scaled(&-coeff, alpha)
}

/// Cartan integer `2 <alpha, beta> / |alpha|^2`, if it is an integer.
pub fn cartan_integer(alpha: &ExactVector, beta: &ExactVector) -> Rational {
    int(2) * alpha.dot(beta) / alpha.norm_sq()
}

/// A finite root system (possibly non-reduced) with a chosen base.
#[derive(Clone, Debug)]
pub struct RootSystem {
    roots: Vec<ExactVector>,
    simple: Vec<ExactVector>,
    label: Label,
    multiplicity: BTreeMap<ExactVector, u32>,
    ambient_dim: usize,
    closed: bool,
}

impl RootSystem {
    /// Standard Bourbaki realization of the irreducible system `(family, rank)`.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidFamily {
            family: family.to_string(),
            rank,
            reason: reason.into(),
        };
        let e = |dim: usize, i: usize| ExactVector::unit(dim, i);
        let simple: Vec<ExactVector> = match family {
            Family::A => {
                if rank < 1 {
                    return Err(bad("rank must be at least 1"));
                }
                let d = rank + 1;
                (0..rank).map(|i| e(d, i).sub(&e(d, i + 1))).collect()
            }
            Family::B | Family::C => {
                if rank < 2 {
                    return Err(bad("rank must be at least 2"));
                }
                let d = rank;
                let mut s: Vec<ExactVector> = (0..rank - 1).map(|i| e(d, i).sub(&e(d, i + 1))).collect();
                let last = if family == Family::B {
                    e(d, rank - 1)
                } else {
                    e(d, rank - 1).scale(&int(2))
                };
                s.push(last);
                s
            }
            Family::D => {
                if rank < 3 {
                    return Err(bad("rank must be at least 3"));
                }
                let d = rank;
                let mut s: Vec<ExactVector> = (0..rank - 1).map(|i| e(d, i).sub(&e(d, i + 1))).collect();
                s.push(e(d, rank - 2).add(&e(d, rank - 1)));
                s
            }
            Family::E => {
                if !(6..=8).contains(&rank) {
                    return Err(bad("E requires rank 6, 7 or 8"));
                }
                // Bourbaki E8 base; E7 and E6 use its first 7 or 6 simple roots.
                let h = ratio(1, 2);
                let a1 = ExactVector::new(vec![
                    h.clone(),
                    -h.clone(),
                    -h.clone(),
                    -h.clone(),
                    -h.clone(),
                    -h.clone(),
                    -h.clone(),
                    h.clone(),
                ])
                .expect("nonempty");
                let mut s = vec![a1, e(8, 0).add(&e(8, 1))];
                for i in 0..6 {
                    s.push(e(8, i + 1).sub(&e(8, i)));
                }
                s.truncate(rank);
                s
            }
            Family::F => {
                if rank != 4 {
                    return Err(bad("F requires rank 4"));
                }
                let h = ratio(1, 2);
                vec![
                    e(4, 1).sub(&e(4, 2)),
                    e(4, 2).sub(&e(4, 3)),
                    e(4, 3),
                    ExactVector::new(vec![h.clone(), -h.clone(), -h.clone(), -h]).expect("nonempty"),
                ]
            }
            Family::G => {
                if rank != 2 {
                    return Err(bad("G requires rank 2"));
                }
                vec![
                    ExactVector::from_ints(&[1, -1, 0]),
                    ExactVector::from_ints(&[-2, 1, 1]),
                ]
            }
        };
        Ok(Self::from_simple(simple, Label::Classical { family, rank }))
    }

    /// Closes a base under its simple reflections.
    pub fn from_simple(simple: Vec<ExactVector>, label: Label) -> Self {
        let ambient_dim = simple[0].dim();
        let mut seen: HashSet<ExactVector> = HashSet::new();
        let mut queue: VecDeque<ExactVector> = VecDeque::new();
        for s in &simple {
            for v in [s.clone(), s.neg()] {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for s in &simple {
                let w = reflect_unchecked(s, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<ExactVector> = seen.into_iter().collect();
        roots.sort();
        let multiplicity = roots.iter().map(|r| (r.clone(), 1)).collect();
        Self {
            roots,
            simple,
            label,
            multiplicity,
            ambient_dim,
            closed: true,
        }
    }

    /// Wraps an explicit root set. The base is taken from the lexicographic
    /// positive system (indecomposable positive roots).
    pub fn from_roots(
        roots: impl IntoIterator<Item = ExactVector>,
        label: Label,
        multiplicity: Option<BTreeMap<ExactVector, u32>>,
    ) -> Result<Self> {
        let set: BTreeSet<ExactVector> = roots.into_iter().collect();
        let roots: Vec<ExactVector> = set.into_iter().collect();
        let ambient_dim = roots
            .first()
            .map(ExactVector::dim)
            .ok_or_else(|| Error::Invalid("root system must be nonempty".into()))?;
        for r in &roots {
            if r.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(Error::Invalid("0 is not a root".into()));
            }
        }
        let simple = simple_roots_of(&roots);
        let closed = is_reflection_closed(&roots);
        let multiplicity = multiplicity
            .unwrap_or_else(|| roots.iter().map(|r| (r.clone(), 1)).collect());
        Ok(Self {
            roots,
            simple,
            label,
            multiplicity,
            ambient_dim,
            closed,
        })
    }

    pub fn roots(&self) -> &[ExactVector] {
        &self.roots
    }

    pub fn simple(&self) -> &[ExactVector] {
        &self.simple
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn multiplicity(&self, root: &ExactVector) -> u32 {
        self.multiplicity.get(root).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<ExactVector, u32> {
        &self.multiplicity
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Roots with positive lexicographic sign (first nonzero coordinate).
    pub fn positive_roots(&self) -> Vec<ExactVector> {
        self.roots.iter().filter(|r| r.is_lex_positive()).cloned().collect()
    }

    pub fn is_reflection_closed(&self) -> bool {
        self.closed
    }

    /// Reflections generating the Weyl group: the base when the root set is a
    /// genuine root system, every root line otherwise.
    fn generators(&self) -> Vec<ExactVector> {
        if self.closed {
            self.simple.clone()
        } else {
            self.positive_roots()
        }
    }

    /// Returns a copy whose base is replaced (used to test that orbits do not
    /// depend on the choice of base).
    pub fn with_simple(&self, simple: Vec<ExactVector>) -> Self {
        Self {
            simple,
            ..self.clone()
        }
    }
}

/// Positive roots (lexicographic) that are not a sum of two positive roots.
pub(crate) fn simple_roots_of(roots: &[ExactVector]) -> Vec<ExactVector> {
    let positive: Vec<&ExactVector> = roots.iter().filter(|r| r.is_lex_positive()).collect();
    let pos_set: HashSet<&ExactVector> = positive.iter().copied().collect();
    let mut simple: Vec<ExactVector> = positive
        .iter()
        .filter(|r| {
            !positive
                .iter()
                .any(|a| pos_set.contains(&r.sub(a)) && (r.sub(a)).is_lex_positive())
        })
        .map(|r| (*r).clone())
        .collect();
    // Order the base by decreasing lexicographic value, which puts
    // Bourbaki-style bases e_1 - e_2, e_2 - e_3, ... first-to-last.
    simple.sort();
    simple.reverse();
    simple
}

pub(crate) fn is_reflection_closed(roots: &[ExactVector]) -> bool {
    let set: HashSet<&ExactVector> = roots.iter().collect();
    roots
        .iter()
        .all(|a| roots.iter().all(|b| set.contains(&reflect_unchecked(a, b))))
}

/// Orbit of `x` under the group generated by the reflections of `system`,
/// sorted lexicographically.
pub fn weyl_orbit(system: &RootSystem, x: &ExactVector) -> Result<Vec<ExactVector>> {
    if x.dim() != system.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: system.ambient_dim,
            found: x.dim(),
        });
    }
    Ok(orbit_under(&system.generators(), x))
}

/// Orbit of `x` under the reflections in `generators` (breadth-first closure).
pub(crate) fn orbit_under(generators: &[ExactVector], x: &ExactVector) -> Vec<ExactVector> {
    integer_orbit(generators, x).unwrap_or_else(|| rational_orbit(generators, x))
}

fn rational_orbit(generators: &[ExactVector], x: &ExactVector) -> Vec<ExactVector> {
    let mut seen: HashSet<ExactVector> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = reflect_unchecked(g, &v);
            if !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<ExactVector> = seen.into_iter().collect();
    out.sort();
    out
}

fn dot_i64(v: &[i64], w: &[i64]) -> Option<i64> {
    v.iter().zip(w).try_fold(0i64, |acc, (&p, &q)| acc.checked_add(p.checked_mul(q)?))
}

/// Same closure in machine integers, on `x` scaled by the returned
/// denominator. Gives up (returns `None`) on a non-integral reflection
/// coefficient or an overflow; callers then fall back to exact rationals.
fn integer_orbit_scaled(generators: &[ExactVector], x: &ExactVector) -> Option<(HashSet<Vec<i64>>, i64)> {
    let (mut start, den) = common_integer_scale(&[x])?;
    let start = start.pop()?;
    let gens: Vec<(Vec<i64>, i64)> = generators
        .iter()
        .map(|g| {
            let (mut rows, _) = common_integer_scale(&[g])?;
            let a = rows.pop()?;
            let n = dot_i64(&a, &a)?;
            Some((a, n))
        })
        .collect::<Option<_>>()?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for (a, n) in &gens {
            let num = dot_i64(&v, a)?.checked_mul(2)?;
            if num % n != 0 {
                return None;
            }
            let c = num / n;
            if c == 0 {
                continue;
            }
            let w = v
                .iter()
                .zip(a)
                .map(|(&p, &q)| p.checked_sub(c.checked_mul(q)?))
                .collect::<Option<Vec<_>>>()?;
            if !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Some((seen, den))
}

fn unscale(v: Vec<i64>, den: i64) -> ExactVector {
    ExactVector::new(v.into_iter().map(|c| ratio(c, den)).collect()).expect("nonempty")
}

fn integer_orbit(generators: &[ExactVector], x: &ExactVector) -> Option<Vec<ExactVector>> {
    let (seen, den) = integer_orbit_scaled(generators, x)?;
    let mut out: Vec<ExactVector> = seen.into_iter().map(|v| unscale(v, den)).collect();
    out.sort();
    Some(out)
}

fn integer_slice(generators: &[ExactVector], x: &ExactVector, space: &Subspace) -> Option<(Vec<ExactVector>, usize)> {
    let (seen, den) = integer_orbit_scaled(generators, x)?;
    let normals: Vec<&ExactVector> = space.normals().iter().collect();
    let (normals, _) = common_integer_scale(&normals)?;
    let size = seen.len();
    let mut kept = Vec::new();
    for v in seen {
        let mut inside = true;
        for n in &normals {
            if dot_i64(&v, n)? != 0 {
                inside = false;
                break;
            }
        }
        if inside {
            kept.push(unscale(v, den));
        }
    }
    kept.sort();
    Some((kept, size))
}

/// The points of the Weyl orbit of `x` that lie in `space`, with the size
/// of the whole orbit.
pub fn weyl_orbit_slice(system: &RootSystem, x: &ExactVector, space: &Subspace) -> Result<(Vec<ExactVector>, usize)> {
    if x.dim() != system.ambient_dim || space.ambient_dim() != system.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: system.ambient_dim,
            found: if x.dim() != system.ambient_dim { x.dim() } else { space.ambient_dim() },
        });
    }
    let generators = system.generators();
    Ok(integer_slice(&generators, x, space).unwrap_or_else(|| {
        let orbit = rational_orbit(&generators, x);
        let size = orbit.len();
        (orbit.into_iter().filter(|v| space.contains(v)).collect(), size)
    }))
}

/// Projects every root of `delta` onto `span(subspace)` and keeps the
/// nonzero images, with multiplicity equal to the number of preimages
/// (weighted by the multiplicities of `delta`).
pub fn restricted_root_system(delta: &RootSystem, subspace: &[ExactVector]) -> Result<RootSystem> {
    let space = Subspace::new(subspace.to_vec())?;
    if space.ambient_dim() != delta.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.ambient_dim(),
            found: space.ambient_dim(),
        });
    }
    let mut mult: BTreeMap<ExactVector, u32> = BTreeMap::new();
    for root in delta.roots() {
        let p = space.project(root);
        if !p.is_zero() {
            *mult.entry(p).or_insert(0) += delta.multiplicity(root);
        }
    }
    if mult.is_empty() {
        return Err(Error::Invalid("every root projects to zero".into()));
    }
    RootSystem::from_roots(mult.keys().cloned().collect::<Vec<_>>(), Label::Restricted, Some(mult))
}

/// Complementary roots, T-roots and the vector `delta` attached to a base point.
#[derive(Clone, Debug)]
pub struct FlagRoots {
    /// Roots with `<alpha, x0> != 0`.
    pub complementary: Vec<ExactVector>,
    /// Projections of the complementary roots onto the centre of the
    /// centralizer of `x0`, with multiplicities.
    pub t_roots: BTreeMap<ExactVector, u32>,
    /// Sum of `m_lambda * lambda` over T-roots with `<lambda, x0> > 0`.
    pub delta: ExactVector,
}

impl FlagRoots {
    pub fn positive_t_roots<'a>(&'a self, x0: &'a ExactVector) -> impl Iterator<Item = (&'a ExactVector, u32)> + 'a {
        self.t_roots
            .iter()
            .filter(move |(l, _)| l.dot(x0) > Rational::zero())
            .map(|(l, m)| (l, *m))
    }
}

pub fn complementary_and_t_roots(delta: &RootSystem, x0: &ExactVector) -> Result<FlagRoots> {
    if x0.dim() != delta.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.ambient_dim(),
            found: x0.dim(),
        });
    }
    if x0.is_zero() {
        return Err(Error::ZeroBasePoint);
    }
    let (complementary, stabilizer): (Vec<ExactVector>, Vec<ExactVector>) = delta
        .roots()
        .iter()
        .cloned()
        .partition(|a| !a.dot(x0).is_zero());
    // Projection onto z = (span of stabilizer roots)^perp.
    let stab_span = Subspace::spanned_by(&stabilizer);
    let mut t_roots: BTreeMap<ExactVector, u32> = BTreeMap::new();
    for a in &complementary {
        let lambda = match &stab_span {
            Some(s) => a.sub(&s.project(a)),
            None => a.clone(),
        };
        *t_roots.entry(lambda).or_insert(0) += delta.multiplicity(a);
    }
    let mut dvec = ExactVector::zeros(delta.ambient_dim());
    for (lambda, m) in &t_roots {
        if lambda.dot(x0) > Rational::zero() {
            dvec = dvec.add_scaled(&int(*m as i64), lambda);
        }
    }
    Ok(FlagRoots {
        complementary,
        t_roots,
        delta: dvec,
    })
}
