//! Intersections of real flag manifolds `L_0 ∩ Ad(exp H) L_1` read off from
//! a symmetric triad (or a restricted root system in the congruent case),
//! maximal antipodal sets, and tightness counts.

pub mod catalogue;

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, ExactVector, Rational, Subspace};
use crate::rootsys::{orbit_under, simple_roots_of, weyl_orbit, weyl_orbit_slice, RootSystem};
use crate::triads::{
    check_axioms, is_regular, regularity_violations, PiPoint, SymmetricTriad, Violation, ViolationClass,
};

pub use catalogue::{lookup, AmbientEmbedding, CatalogueEntry, PairData};

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Base point `x_0` in the coordinates of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    coords: ExactVector,
}

impl BasePoint {
    pub fn new(coords: ExactVector) -> Result<Self> {
        if coords.is_zero() {
            return Err(Error::ZeroBasePoint);
        }
        Ok(Self { coords })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(ExactVector::parse(text)?)
    }

    /// `x_1` repeated `n_1` times, then `x_2` repeated `n_2` times, and so on.
    pub fn from_pattern(pattern: &[(Rational, usize)]) -> Result<Self> {
        let coords: Vec<Rational> = pattern
            .iter()
            .flat_map(|(v, k)| std::iter::repeat_n(v.clone(), *k))
            .collect();
        Self::new(ExactVector::new(coords)?)
    }

    pub fn coords(&self) -> &ExactVector {
        &self.coords
    }

    /// Distinct values with their multiplicities, in first-occurrence order.
    pub fn pattern(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for c in self.coords.coords() {
            match out.iter_mut().find(|(v, _)| v == c) {
                Some((_, k)) => *k += 1,
                None => out.push((c.clone(), 1)),
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntersectionKind {
    Discrete,
    Continuum,
}

/// Why an intersection is not discrete: a root on a singular hyperplane and
/// a point `X` of the discrete candidate set with `<root, X> != 0`, along
/// which the intersection contains a circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub root: ExactVector,
    pub class: ViolationClass,
    #[serde(serialize_with = "ser_rational")]
    pub pairing: Rational,
    pub circle_point: Option<ExactVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionResult {
    pub kind: IntersectionKind,
    pub points: Vec<ExactVector>,
    pub cardinality: Option<usize>,
    pub witness: Option<Witness>,
}

impl IntersectionResult {
    pub fn is_discrete(&self) -> bool {
        self.kind == IntersectionKind::Discrete
    }
}

fn witness_from(v: &Violation, orbit: &[ExactVector]) -> Witness {
    Witness {
        root: v.root.clone(),
        class: v.class,
        pairing: v.pairing.clone(),
        circle_point: orbit.iter().find(|x| !v.root.dot(x).is_zero()).cloned(),
    }
}

fn require_in_span(space: &Subspace, x0: &BasePoint) -> Result<()> {
    if x0.coords.dim() != space.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.ambient_dim(),
            found: x0.coords.dim(),
        });
    }
    if !space.contains(&x0.coords) {
        return Err(Error::NotInSubspace(x0.coords.to_string()));
    }
    Ok(())
}

/// `W(Delta) x_0`, the maximal antipodal set of `Ad(G) x_0` through `x_0`.
pub fn maximal_antipodal(delta: &RootSystem, x0: &BasePoint) -> Result<Vec<ExactVector>> {
    weyl_orbit(delta, &x0.coords)
}

/// Congruent case: discrete iff `<lambda, H>` avoids `pi Z` for all `lambda`
/// in `R`; the intersection is then `W(R) x_0`.
pub fn congruent_intersection(r: &RootSystem, x0: &BasePoint, h: &PiPoint) -> Result<IntersectionResult> {
    let space = Subspace::spanned_by(r.roots()).ok_or_else(|| Error::Invalid("empty root system".into()))?;
    require_in_span(&space, x0)?;
    if h.dim() != r.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: r.ambient_dim(),
            found: h.dim(),
        });
    }
    let orbit = weyl_orbit(r, &x0.coords)?;
    let violations = regularity_violations(r.roots(), &[], h);
    Ok(match violations.first() {
        None => IntersectionResult {
            kind: IntersectionKind::Discrete,
            cardinality: Some(orbit.len()),
            points: orbit,
            witness: None,
        },
        Some(v) => IntersectionResult {
            kind: IntersectionKind::Continuum,
            points: Vec::new(),
            cardinality: None,
            witness: Some(witness_from(v, &orbit)),
        },
    })
}

/// `W(sigma_tilde) x_0`, generated by the simple reflections of sigma_tilde.
pub fn triad_orbit(t: &SymmetricTriad, x0: &ExactVector) -> Vec<ExactVector> {
    orbit_under(&simple_roots_of(t.sigma_tilde()), x0)
}

fn check_triad_components(t: &SymmetricTriad, x0: &BasePoint) -> Result<()> {
    for comp in t.components() {
        check_axioms(&comp).into_result()?;
        let space = comp.a_space().expect("components are nonempty");
        if space.project(&x0.coords).is_zero() {
            return Err(Error::Invalid(format!(
                "base point has zero component in the irreducible factor containing {}",
                comp.sigma_tilde()[0]
            )));
        }
    }
    Ok(())
}

/// Non-congruent case: discrete iff `H` is a regular point of the triad; the
/// intersection is then `W(sigma_tilde) x_0`. When `ambient` is given, the
/// identity `W(sigma_tilde) x_0 = W(Delta) x_0 ∩ a` is checked as well.
pub fn noncongruent_intersection(
    t: &SymmetricTriad,
    x0: &BasePoint,
    h: &PiPoint,
    ambient: Option<&AmbientEmbedding>,
) -> Result<IntersectionResult> {
    let space = t.a_space().ok_or_else(|| Error::AxiomFailure("sigma_tilde is empty".into()))?;
    require_in_span(&space, x0)?;
    check_triad_components(t, x0)?;
    let reg = is_regular(t, h)?;
    let orbit = triad_orbit(t, &x0.coords);
    if !reg.regular {
        return Ok(IntersectionResult {
            kind: IntersectionKind::Continuum,
            points: Vec::new(),
            cardinality: None,
            witness: Some(witness_from(&reg.violations[0], &orbit)),
        });
    }
    if let Some(emb) = ambient {
        let chain = equality_chain(t, emb, x0)?;
        if chain.triad_orbit != chain.ambient_slice {
            return Err(Error::Postcondition(
                "W(sigma_tilde) x0 differs from W(Delta) x0 ∩ a".into(),
            ));
        }
    }
    Ok(IntersectionResult {
        kind: IntersectionKind::Discrete,
        cardinality: Some(orbit.len()),
        points: orbit,
        witness: None,
    })
}

/// Both sides of `W(sigma_tilde) x_0 = W(Delta) x_0 ∩ a`, in `a` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityChain {
    pub triad_orbit: Vec<ExactVector>,
    pub ambient_slice: Vec<ExactVector>,
    pub ambient_orbit_size: usize,
}

pub fn equality_chain(t: &SymmetricTriad, emb: &AmbientEmbedding, x0: &BasePoint) -> Result<EqualityChain> {
    if emb.source_dim() != t.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: t.ambient_dim(),
            found: emb.source_dim(),
        });
    }
    let space = t.a_space().ok_or_else(|| Error::AxiomFailure("sigma_tilde is empty".into()))?;
    require_in_span(&space, x0)?;
    let image = emb.image_space(&space);
    let (inside, size) = weyl_orbit_slice(&emb.delta, &emb.embed(&x0.coords), &image)?;
    let slice: BTreeSet<ExactVector> = inside
        .iter()
        .filter_map(|v| emb.pull_point(&space, &image, v))
        .collect();
    Ok(EqualityChain {
        triad_orbit: triad_orbit(t, &x0.coords),
        ambient_slice: slice.into_iter().collect(),
        ambient_orbit_size: size,
    })
}

/// What a tightness count is evaluated on.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    Triad(&'a SymmetricTriad),
    Restricted(&'a RootSystem),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessCount {
    pub count: usize,
    pub sb_reference: Option<u128>,
    pub sample_points: Vec<ExactVector>,
}

/// Three distinct regular points: scalings of the dual of the simple roots
/// into the open region where every positive root pairs into `(0, 1/2)`, and
/// the negative of one of them (a different cell).
pub fn regular_samples(roots: &[ExactVector]) -> Result<Vec<PiPoint>> {
    let simple = simple_roots_of(roots);
    let space = Subspace::new(simple.clone())?;
    let rho = space.dual_solve(&vec![int(1); simple.len()]);
    let max = roots
        .iter()
        .map(|r| r.dot(&rho))
        .max()
        .ok_or_else(|| Error::Invalid("no roots".into()))?;
    let at = |k: i64| PiPoint::new(rho.scale(&(int(1) / (int(2) * &max + int(k)))));
    Ok(vec![at(1), at(2), at(3).scale(&int(-1))])
}

/// Cardinality of the discrete intersection, evaluated at three regular
/// points and required to be the same point set each time.
pub fn tightness_count(subject: Subject<'_>, x0: &BasePoint, sb_reference: Option<u128>) -> Result<TightnessCount> {
    let roots = match subject {
        Subject::Triad(t) => t.sigma_tilde(),
        Subject::Restricted(r) => r.roots(),
    };
    let samples = regular_samples(roots)?;
    let mut first: Option<Vec<ExactVector>> = None;
    for h in &samples {
        let res = match subject {
            Subject::Triad(t) => noncongruent_intersection(t, x0, h, None)?,
            Subject::Restricted(r) => congruent_intersection(r, x0, h)?,
        };
        if !res.is_discrete() {
            return Err(Error::Postcondition(format!("sample {h} is not regular")));
        }
        match &first {
            None => first = Some(res.points),
            Some(p) if *p != res.points => {
                return Err(Error::Postcondition("intersection depends on H".into()));
            }
            Some(_) => {}
        }
    }
    let points = first.expect("three samples");
    Ok(TightnessCount {
        count: points.len(),
        sb_reference,
        sample_points: samples.into_iter().map(|h| h.q().clone()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatsukiCase {
    /// `u ⊕ u ⊕ u ⊕ u`, roots `(alpha, -alpha, alpha, -alpha)`.
    Three,
    /// `u ⊕ u` with an involution on each factor, roots `(alpha, -alpha)`.
    Four,
}

/// Diagonal doubling of `base` for the two Matsuki cases with
/// `sigma_tilde = sigma = w`.
pub fn matsuki_doubling(case: MatsukiCase, base: &RootSystem) -> Result<SymmetricTriad> {
    let d = base.ambient_dim();
    let roots: Vec<ExactVector> = base
        .roots()
        .iter()
        .map(|a| match case {
            MatsukiCase::Four => ExactVector::concat(&[a, &a.neg()]),
            MatsukiCase::Three => ExactVector::concat(&[a, &a.neg(), a, &a.neg()]),
        })
        .collect();
    let dim = match case {
        MatsukiCase::Four => 2 * d,
        MatsukiCase::Three => 4 * d,
    };
    SymmetricTriad::from_sigma_w(dim, roots.clone(), roots)
}

/// The base-coordinate point whose regularity for `(R, R, R)` matches the
/// regularity of `h` in the doubled triad.
pub fn matsuki_base_point(case: MatsukiCase, base_dim: usize, h: &PiPoint) -> PiPoint {
    let block = |i: usize| {
        ExactVector::new(h.q().coords()[i * base_dim..(i + 1) * base_dim].to_vec()).expect("nonempty block")
    };
    let q = match case {
        MatsukiCase::Four => block(0).sub(&block(1)),
        MatsukiCase::Three => block(0).sub(&block(1)).add(&block(2)).sub(&block(3)),
    };
    PiPoint::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::rootsys::Family;

    #[test]
    fn su2n_discrete_count() {
        let e = lookup(catalogue::SU2N_SO_SP, Some(3)).unwrap();
        let t = e.triad().unwrap();
        let x0 = BasePoint::parse("1,1,-2").unwrap();
        let h = PiPoint::parse("1/7,2/7,-3/7").unwrap();
        let r = noncongruent_intersection(t, &x0, &h, Some(&e.embedding)).unwrap();
        assert!(r.is_discrete());
        assert_eq!(r.cardinality, Some(3));
        assert_eq!(e.sb_reference(x0.coords()), Some(3));
    }

    #[test]
    fn bc1_discrete_and_wall() {
        let e = lookup(catalogue::SUN_SO_RANK1, Some(4)).unwrap();
        let t = e.triad().unwrap();
        let x0 = BasePoint::parse("1").unwrap();
        let r = noncongruent_intersection(t, &x0, &PiPoint::parse("1/3").unwrap(), Some(&e.embedding)).unwrap();
        assert_eq!(r.points, vec![ExactVector::from_ints(&[-1]), ExactVector::from_ints(&[1])]);
        let wall = noncongruent_intersection(t, &x0, &PiPoint::parse("1/2").unwrap(), None).unwrap();
        assert_eq!(wall.kind, IntersectionKind::Continuum);
        let w = wall.witness.unwrap();
        assert_eq!(w.class, ViolationClass::W);
        assert!(!w.root.dot(w.circle_point.as_ref().unwrap()).is_zero());
    }

    #[test]
    fn x0_outside_a_is_rejected() {
        let e = lookup(catalogue::SU2N_SO_SP, Some(3)).unwrap();
        let x0 = BasePoint::parse("1,1,1").unwrap();
        let h = PiPoint::parse("1/7,2/7,-3/7").unwrap();
        assert!(matches!(
            noncongruent_intersection(e.triad().unwrap(), &x0, &h, None),
            Err(Error::NotInSubspace(_))
        ));
        assert!(matches!(BasePoint::parse("0,0"), Err(Error::ZeroBasePoint)));
    }

    #[test]
    fn congruent_cases() {
        let e = lookup(catalogue::SUN_SO, Some(3)).unwrap();
        let r = e.restricted().unwrap();
        let x0 = BasePoint::parse("1,1,-2").unwrap();
        let zero = congruent_intersection(r, &x0, &PiPoint::parse("0,0,0").unwrap()).unwrap();
        assert_eq!(zero.kind, IntersectionKind::Continuum);
        let reg = congruent_intersection(r, &x0, &PiPoint::parse("1/7,2/7,-3/7").unwrap()).unwrap();
        assert_eq!(reg.cardinality, Some(3));
        // on the single wall <e_1 - e_2, H> = 0 only
        let wall = congruent_intersection(r, &x0, &PiPoint::parse("1/5,1/5,-2/5").unwrap()).unwrap();
        let w = wall.witness.unwrap();
        assert_eq!(w.root, ExactVector::from_ints(&[1, -1, 0]));
    }

    #[test]
    fn antipodal_counts() {
        let a = RootSystem::build(Family::A, 5).unwrap();
        let x0 = BasePoint::parse("1,1,1,1,-2,-2").unwrap();
        assert_eq!(maximal_antipodal(&a, &x0).unwrap().len(), 15);
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        assert_eq!(maximal_antipodal(&a1, &BasePoint::parse("1,-1").unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn chain_and_tightness() {
        for n in 2..=4 {
            let e = lookup(catalogue::SU2N_SO_SP, Some(n)).unwrap();
            let t = e.triad().unwrap();
            let chain = equality_chain(t, &e.embedding, &BasePoint::new(e.default_x0.clone()).unwrap()).unwrap();
            assert_eq!(chain.triad_orbit, chain.ambient_slice);
            assert!(chain.triad_orbit.len() <= chain.ambient_orbit_size);
        }
        let e = lookup(catalogue::SUN_SO_RANK1, Some(3)).unwrap();
        let x0 = BasePoint::parse("1").unwrap();
        let tc = tightness_count(Subject::Triad(e.triad().unwrap()), &x0, e.sb_reference(x0.coords())).unwrap();
        assert_eq!(tc.count, 2);
        assert_eq!(tc.sb_reference, Some(2));
    }

    #[test]
    fn doubling() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let d = matsuki_doubling(MatsukiCase::Four, &a1).unwrap();
        assert_eq!(d.sigma_tilde().len(), 2);
        assert!(check_axioms(&d).passed());
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let q = matsuki_doubling(MatsukiCase::Three, &a2).unwrap();
        assert_eq!(q.sigma_tilde().len(), 6);
        assert!(check_axioms(&q).passed());
        let base = SymmetricTriad::from_sigma_w(3, a2.roots().to_vec(), a2.roots().to_vec()).unwrap();
        for k in -6..=6 {
            let h = PiPoint::new(ExactVector::new(vec![
                ratio(k, 12), ratio(1, 5), int(0),
                int(0), ratio(-k, 24), ratio(1, 7),
                ratio(1, 3), int(0), int(0),
                ratio(k, 24), int(0), ratio(2, 9),
            ]).unwrap());
            let doubled = is_regular(&q, &h).unwrap().regular;
            let projected = is_regular(&base, &matsuki_base_point(MatsukiCase::Three, 3, &h)).unwrap().regular;
            assert_eq!(doubled, projected);
        }
    }

    #[test]
    fn pattern_round_trip() {
        let x = BasePoint::from_pattern(&[(int(2), 2), (int(-1), 4)]).unwrap();
        assert_eq!(x.pattern(), vec![(int(2), 2), (int(-1), 4)]);
    }
}
