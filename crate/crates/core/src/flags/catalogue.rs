//! Builtin symmetric pairs and commuting-involution pairs of `su(m)`.
//!
//! Each entry fixes the triad (or restricted root system) in the coordinates
//! of `a`, the ambient root system of `su(m)` on a diagonal torus containing
//! `a`, and the linear embedding of `a` into that torus.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{ExactVector, Rational, Subspace};
use crate::rootsys::{Family, RootSystem};
use crate::triads::SymmetricTriad;

pub const SU2N_SO_SP: &str = "su2n-so-sp";
pub const SUN_SO_RANK1: &str = "su-n-so-rank1";
pub const SUN_SO: &str = "su-n-so";

pub const PAIR_NAMES: [&str; 3] = [SU2N_SO_SP, SUN_SO_RANK1, SUN_SO];

/// Linear map `E` from the coordinates of `a` into the torus coordinates of
/// the ambient root system. Points are pushed forward by `E`; roots pull back
/// by the transpose.
#[derive(Clone, Debug)]
pub struct AmbientEmbedding {
    pub delta: RootSystem,
    /// `E(e_k)` for each coordinate vector `e_k` of `a`'s ambient space.
    pub images: Vec<ExactVector>,
}

impl AmbientEmbedding {
    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn embed(&self, x: &ExactVector) -> ExactVector {
        let mut out = ExactVector::zeros(self.delta.ambient_dim());
        for (c, img) in x.coords().iter().zip(&self.images) {
            out = out.add_scaled(c, img);
        }
        out
    }

    /// The linear form `x -> <alpha, E x>` written in source coordinates.
    pub fn pull_root(&self, alpha: &ExactVector) -> ExactVector {
        ExactVector::new(self.images.iter().map(|img| alpha.dot(img)).collect()).expect("nonempty")
    }

    /// Nonzero pullbacks of ambient roots, restricted to `a_space`, with the
    /// number of preimages of each.
    pub fn restricted_roots(&self, a_space: &Subspace) -> BTreeMap<ExactVector, u32> {
        let mut out = BTreeMap::new();
        for alpha in self.delta.roots() {
            let form = a_space.project(&self.pull_root(alpha));
            if !form.is_zero() {
                *out.entry(form).or_insert(0) += 1;
            }
        }
        out
    }

    /// Inverse of `E` on `E(a)`: returns the preimage in `a` of `v` if `v`
    /// lies in the image of `a_space`.
    pub fn pull_point(&self, a_space: &Subspace, image_space: &Subspace, v: &ExactVector) -> Option<ExactVector> {
        if !image_space.contains(v) {
            return None;
        }
        Some(a_space.combine(&image_space.projection_coefficients(v)))
    }

    pub fn image_space(&self, a_space: &Subspace) -> Subspace {
        Subspace::new(a_space.basis().iter().map(|b| self.embed(b)).collect())
            .expect("embedding is injective on a")
    }
}

#[derive(Clone, Debug)]
pub enum PairData {
    /// Two non-congruent real flag manifolds, described by a symmetric triad.
    Noncongruent(SymmetricTriad),
    /// `theta_0 = theta_1`: a restricted root system with multiplicities.
    Congruent(RootSystem),
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub size: usize,
    pub expected_type: String,
    pub data: PairData,
    pub embedding: AmbientEmbedding,
    /// Matrix size `m` of the ambient `su(m)`.
    pub matrix_size: usize,
    /// A base point used when none is given.
    pub default_x0: ExactVector,
    /// False when the data is not a symmetric triad (degenerate sizes).
    pub is_triad: bool,
}

impl CatalogueEntry {
    pub fn triad(&self) -> Option<&SymmetricTriad> {
        match &self.data {
            PairData::Noncongruent(t) => Some(t),
            PairData::Congruent(_) => None,
        }
    }

    pub fn restricted(&self) -> Option<&RootSystem> {
        match &self.data {
            PairData::Congruent(r) => Some(r),
            PairData::Noncongruent(_) => None,
        }
    }

    /// The pair's root data as a triad; a congruent pair becomes
    /// `sigma = R`, `w = {}` with `n` empty.
    pub fn triad_data(&self) -> SymmetricTriad {
        match &self.data {
            PairData::Noncongruent(t) => t.clone(),
            PairData::Congruent(r) => SymmetricTriad::from_sigma_w(r.ambient_dim(), r.roots().to_vec(), Vec::new())
                .expect("catalogue roots share one dimension")
                .with_multiplicities(Some(r.multiplicities().clone()), Some(BTreeMap::new())),
        }
    }

    pub fn a_space(&self) -> Subspace {
        let roots = match &self.data {
            PairData::Noncongruent(t) => t.sigma_tilde().to_vec(),
            PairData::Congruent(r) => r.roots().to_vec(),
        };
        Subspace::spanned_by(&roots).expect("catalogue pairs have nonzero a")
    }

    /// Closed form of `SB(L_1; Z_2)` where one is known for this pair, for a
    /// base point `x0` given in `a` coordinates.
    pub fn sb_reference(&self, x0: &ExactVector) -> Option<u128> {
        match self.name {
            SU2N_SO_SP => Some(multinomial(&pattern_counts(x0))),
            SUN_SO_RANK1 if self.is_triad => Some(2),
            _ => None,
        }
    }
}

/// Multiplicities of the distinct values of `x`, in first-occurrence order.
pub fn pattern_counts(x: &ExactVector) -> Vec<usize> {
    let mut seen: Vec<(Rational, usize)> = Vec::new();
    for c in x.coords() {
        match seen.iter_mut().find(|(v, _)| v == c) {
            Some((_, k)) => *k += 1,
            None => seen.push((c.clone(), 1)),
        }
    }
    seen.into_iter().map(|(_, k)| k).collect()
}

/// `(sum k_i)! / prod k_i!`.
pub fn multinomial(parts: &[usize]) -> u128 {
    let mut out: u128 = 1;
    let mut total: u128 = 0;
    for &k in parts {
        for j in 1..=k as u128 {
            total += 1;
            out = out * total / j;
        }
    }
    out
}

fn type_a_roots(n: usize) -> Vec<ExactVector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(ExactVector::unit(n, i).sub(&ExactVector::unit(n, j)));
            }
        }
    }
    out
}

fn su2n_so_sp(n: usize) -> Result<CatalogueEntry> {
    if n < 2 {
        return Err(Error::InvalidSize {
            pair: SU2N_SO_SP.into(),
            reason: "n must be at least 2".into(),
        });
    }
    let roots = type_a_roots(n);
    let mult: BTreeMap<ExactVector, u32> = roots.iter().map(|r| (r.clone(), 2)).collect();
    let triad = SymmetricTriad::from_sigma_w(n, roots.clone(), roots)?
        .with_multiplicities(Some(mult.clone()), Some(mult));
    let delta = RootSystem::build(Family::A, 2 * n - 1)?;
    // t -> diag(t, t)
    let images = (0..n)
        .map(|k| ExactVector::unit(2 * n, k).add(&ExactVector::unit(2 * n, n + k)))
        .collect();
    let mut x0 = vec![0i64; n];
    x0[0] = 1;
    x0[n - 1] = -1;
    Ok(CatalogueEntry {
        name: SU2N_SO_SP,
        size: n,
        expected_type: format!("III-A{}", n - 1),
        data: PairData::Noncongruent(triad),
        embedding: AmbientEmbedding { delta, images },
        matrix_size: 2 * n,
        default_x0: ExactVector::from_ints(&x0),
        is_triad: true,
    })
}

fn sun_so_rank1(n: usize) -> Result<CatalogueEntry> {
    if n < 2 {
        return Err(Error::InvalidSize {
            pair: SUN_SO_RANK1.into(),
            reason: "n must be at least 2".into(),
        });
    }
    let a = ExactVector::from_ints(&[1]);
    let a2 = ExactVector::from_ints(&[2]);
    let k = (n - 2) as u32;
    let mut sigma = Vec::new();
    let mut w = vec![a2.clone(), a2.neg()];
    let mut m = BTreeMap::new();
    let mut nmap: BTreeMap<ExactVector, u32> = [(a2.clone(), 1), (a2.neg(), 1)].into_iter().collect();
    if n >= 3 {
        sigma = vec![a.clone(), a.neg()];
        w.extend([a.clone(), a.neg()]);
        m.insert(a.clone(), k);
        m.insert(a.neg(), k);
        nmap.insert(a.clone(), k);
        nmap.insert(a.neg(), k);
    }
    let triad = SymmetricTriad::from_sigma_w(1, sigma, w)?.with_multiplicities(Some(m), Some(nmap));
    let delta = RootSystem::build(Family::A, n - 1)?;
    // s -> diag(s, -s, 0, ..., 0) after conjugating a into the diagonal torus
    let mut img = vec![0i64; n];
    img[0] = 1;
    img[1] = -1;
    Ok(CatalogueEntry {
        name: SUN_SO_RANK1,
        size: n,
        expected_type: if n >= 3 {
            "II-BC1".into()
        } else {
            "degenerate (sigma empty)".into()
        },
        data: PairData::Noncongruent(triad),
        embedding: AmbientEmbedding {
            delta,
            images: vec![ExactVector::from_ints(&img)],
        },
        matrix_size: n,
        default_x0: a,
        is_triad: n >= 3,
    })
}

fn sun_so(n: usize) -> Result<CatalogueEntry> {
    if n < 2 {
        return Err(Error::InvalidSize {
            pair: SUN_SO.into(),
            reason: "n must be at least 2".into(),
        });
    }
    let roots = type_a_roots(n);
    let mult: BTreeMap<ExactVector, u32> = roots.iter().map(|r| (r.clone(), 1)).collect();
    let r = RootSystem::from_roots(roots, crate::rootsys::Label::Restricted, Some(mult))?;
    let delta = RootSystem::build(Family::A, n - 1)?;
    let images = (0..n).map(|k| ExactVector::unit(n, k)).collect();
    let mut x0 = vec![0i64; n];
    x0[0] = 1;
    x0[n - 1] = -1;
    Ok(CatalogueEntry {
        name: SUN_SO,
        size: n,
        expected_type: format!("A{} (congruent)", n - 1),
        data: PairData::Congruent(r),
        embedding: AmbientEmbedding { delta, images },
        matrix_size: n,
        default_x0: ExactVector::from_ints(&x0),
        is_triad: false,
    })
}

/// Looks up a catalogue pair. `size` defaults to 3.
pub fn lookup(name: &str, size: Option<usize>) -> Result<CatalogueEntry> {
    let n = size.unwrap_or(3);
    if n > 16 {
        return Err(Error::InvalidSize {
            pair: name.into(),
            reason: "sizes above 16 are not supported".into(),
        });
    }
    match name {
        SU2N_SO_SP => su2n_so_sp(n),
        SUN_SO_RANK1 => sun_so_rank1(n),
        SUN_SO => sun_so(n),
        other => Err(Error::UnknownPair(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triads::check_axioms;

    #[test]
    fn builtin_triads_pass_axioms() {
        for n in 2..=5 {
            let e = lookup(SU2N_SO_SP, Some(n)).unwrap();
            assert!(check_axioms(e.triad().unwrap()).passed());
        }
        for n in 3..=6 {
            let e = lookup(SUN_SO_RANK1, Some(n)).unwrap();
            assert!(check_axioms(e.triad().unwrap()).passed());
        }
        let degenerate = lookup(SUN_SO_RANK1, Some(2)).unwrap();
        assert!(!degenerate.is_triad);
        assert!(!check_axioms(degenerate.triad().unwrap()).passed());
    }

    #[test]
    fn pulled_back_ambient_roots_match_triads() {
        for (name, n) in [(SU2N_SO_SP, 2), (SU2N_SO_SP, 4), (SUN_SO_RANK1, 3), (SUN_SO_RANK1, 5), (SUN_SO, 4)] {
            let e = lookup(name, Some(n)).unwrap();
            let space = e.a_space();
            let pulled = e.embedding.restricted_roots(&space);
            match &e.data {
                PairData::Noncongruent(t) => {
                    let (m, nn) = (t.m().unwrap(), t.n().unwrap());
                    assert_eq!(pulled.keys().collect::<Vec<_>>(), t.sigma_tilde().iter().collect::<Vec<_>>());
                    for (root, count) in &pulled {
                        let expect = m.get(root).copied().unwrap_or(0) + nn.get(root).copied().unwrap_or(0);
                        assert_eq!(*count, expect, "{name} {n} {root}");
                    }
                }
                PairData::Congruent(r) => {
                    assert_eq!(pulled.keys().cloned().collect::<Vec<_>>(), r.roots());
                    assert!(pulled.iter().all(|(root, c)| *c == r.multiplicity(root)));
                }
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[1, 1, 1, 1, 1]), 120);
        assert_eq!(pattern_counts(&ExactVector::from_ints(&[1, 1, -2])), vec![2, 1]);
    }
}
