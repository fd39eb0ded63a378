//! Symmetric triads `(sigma_tilde, sigma, w)`: the six axioms, regular
//! points, the fundamental cell, the lattice `Gamma` and the affine Weyl
//! group generators.
//!
//! Points of `a` are [`PiPoint`]s, i.e. `H = pi * q` with `q` rational, so all
//! membership questions below are exact. The space `a` of a triad is the span
//! of `sigma_tilde` inside the ambient coordinates.

pub mod exchange;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, int, is_half_integer, is_half_odd, ExactVector, Rational, Subspace};
use crate::rootsys::{orbit_under, reflect_unchecked, simple_roots_of};

/// A point `H = pi * q` of `a`; only `q` is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiPoint {
    q: ExactVector,
}

impl PiPoint {
    pub fn new(q: ExactVector) -> Self {
        Self { q }
    }

    /// Parses a comma-separated list of rationals, in units of pi.
    pub fn parse(text: &str) -> Result<Self> {
        ExactVector::parse(text).map(Self::new)
    }

    pub fn q(&self) -> &ExactVector {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    /// `<root, H> / pi`.
    pub fn pairing(&self, root: &ExactVector) -> Rational {
        root.dot(&self.q)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.q.scale(factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.q.add(&other.q))
    }
}

impl fmt::Display for PiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi*{}", self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTriad {
    ambient_dim: usize,
    sigma_tilde: Vec<ExactVector>,
    sigma: Vec<ExactVector>,
    w: Vec<ExactVector>,
    m: Option<BTreeMap<ExactVector, u32>>,
    n: Option<BTreeMap<ExactVector, u32>>,
}

fn sorted_set(v: impl IntoIterator<Item = ExactVector>) -> Vec<ExactVector> {
    let s: BTreeSet<ExactVector> = v.into_iter().collect();
    s.into_iter().collect()
}

fn contains(sorted: &[ExactVector], v: &ExactVector) -> bool {
    sorted.binary_search(v).is_ok()
}

impl SymmetricTriad {
    /// Stores the three root sets as given. No axiom is checked here; see
    /// [`check_axioms`].
    pub fn new(
        ambient_dim: usize,
        sigma_tilde: impl IntoIterator<Item = ExactVector>,
        sigma: impl IntoIterator<Item = ExactVector>,
        w: impl IntoIterator<Item = ExactVector>,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        let sigma_tilde = sorted_set(sigma_tilde);
        let sigma = sorted_set(sigma);
        let w = sorted_set(w);
        for v in sigma_tilde.iter().chain(&sigma).chain(&w) {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.dim(),
                });
            }
        }
        Ok(Self {
            ambient_dim,
            sigma_tilde,
            sigma,
            w,
            m: None,
            n: None,
        })
    }

    /// `sigma_tilde` is taken to be `sigma ∪ w`.
    pub fn from_sigma_w(
        ambient_dim: usize,
        sigma: impl IntoIterator<Item = ExactVector>,
        w: impl IntoIterator<Item = ExactVector>,
    ) -> Result<Self> {
        let sigma = sorted_set(sigma);
        let w = sorted_set(w);
        let union: Vec<ExactVector> = sigma.iter().chain(&w).cloned().collect();
        Self::new(ambient_dim, union, sigma, w)
    }

    pub fn with_multiplicities(
        mut self,
        m: Option<BTreeMap<ExactVector, u32>>,
        n: Option<BTreeMap<ExactVector, u32>>,
    ) -> Self {
        self.m = m;
        self.n = n;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sigma_tilde(&self) -> &[ExactVector] {
        &self.sigma_tilde
    }

    pub fn sigma(&self) -> &[ExactVector] {
        &self.sigma
    }

    pub fn w(&self) -> &[ExactVector] {
        &self.w
    }

    pub fn m(&self) -> Option<&BTreeMap<ExactVector, u32>> {
        self.m.as_ref()
    }

    pub fn n(&self) -> Option<&BTreeMap<ExactVector, u32>> {
        self.n.as_ref()
    }

    pub fn in_sigma(&self, v: &ExactVector) -> bool {
        contains(&self.sigma, v)
    }

    pub fn in_w(&self, v: &ExactVector) -> bool {
        contains(&self.w, v)
    }

    pub fn sigma_positive(&self) -> impl Iterator<Item = &ExactVector> {
        self.sigma.iter().filter(|r| r.is_lex_positive())
    }

    pub fn w_positive(&self) -> impl Iterator<Item = &ExactVector> {
        self.w.iter().filter(|r| r.is_lex_positive())
    }

    /// Dimension of `a = span(sigma_tilde)`.
    pub fn dim_a(&self) -> usize {
        exact::rank(&self.sigma_tilde)
    }

    /// The span of `sigma_tilde`, or `None` when it is empty.
    pub fn a_space(&self) -> Option<Subspace> {
        Subspace::spanned_by(&self.sigma_tilde)
    }

    fn check_point(&self, h: &PiPoint) -> Result<()> {
        if h.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: h.dim(),
            });
        }
        Ok(())
    }

    /// Splits the triad along the irreducible components of `sigma_tilde`
    /// (connected components of the non-orthogonality graph). Each component
    /// keeps the ambient coordinates.
    pub fn components(&self) -> Vec<SymmetricTriad> {
        root_components(&self.sigma_tilde)
            .into_iter()
            .map(|comp| {
                let keep: HashSet<&ExactVector> = comp.iter().collect();
                let restrict = |set: &[ExactVector]| -> Vec<ExactVector> {
                    set.iter().filter(|r| keep.contains(r)).cloned().collect()
                };
                let restrict_map = |map: &Option<BTreeMap<ExactVector, u32>>| {
                    map.as_ref().map(|m| {
                        m.iter()
                            .filter(|(r, _)| keep.contains(r))
                            .map(|(r, k)| (r.clone(), *k))
                            .collect()
                    })
                };
                SymmetricTriad {
                    ambient_dim: self.ambient_dim,
                    sigma_tilde: comp.clone(),
                    sigma: restrict(&self.sigma),
                    w: restrict(&self.w),
                    m: restrict_map(&self.m),
                    n: restrict_map(&self.n),
                }
            })
            .collect()
    }
}

/// Partition of a root set into classes of the transitive closure of
/// `<a, b> != 0`. Output sorted.
pub fn root_components(roots: &[ExactVector]) -> Vec<Vec<ExactVector>> {
    let n = roots.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(roots[i].clone());
            for j in 0..n {
                if comp[j] == usize::MAX && !roots[i].dot(&roots[j]).is_zero() {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out.sort();
    out
}

/// Connectivity of the graph on simple roots with edges `<a_i, a_j> != 0`.
pub fn is_irreducible(roots: &[ExactVector]) -> bool {
    let simple = simple_roots_of(roots);
    !simple.is_empty() && root_components(&simple).len() == 1
}

/// First defect found when treating `roots` as a (possibly non-reduced)
/// crystallographic root system of its span.
/// Machine-integer version of the closure checks in [`root_system_defect`].
/// `false` means "not confirmed" (a defect or an overflow).
fn integer_root_system(roots: &[ExactVector]) -> bool {
    let refs: Vec<&ExactVector> = roots.iter().collect();
    let Some((rows, _)) = exact::common_integer_scale(&refs) else {
        return false;
    };
    let dot = |v: &[i64], w: &[i64]| v.iter().zip(w).try_fold(0i64, |acc, (&p, &q)| acc.checked_add(p.checked_mul(q)?));
    let set: HashSet<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let mut image = Vec::new();
    for a in &rows {
        let Some(n) = dot(a, a) else { return false };
        if n == 0 {
            return false;
        }
        for b in &rows {
            let Some(num) = dot(a, b).and_then(|d| d.checked_mul(2)) else {
                return false;
            };
            if num % n != 0 {
                return false;
            }
            let c = num / n;
            image.clear();
            for (&p, &q) in b.iter().zip(a) {
                match c.checked_mul(q).and_then(|cq| p.checked_sub(cq)) {
                    Some(x) => image.push(x),
                    None => return false,
                }
            }
            if !set.contains(image.as_slice()) {
                return false;
            }
        }
    }
    // negation is the reflection of a in itself, covered above
    true
}

pub fn root_system_defect(roots: &[ExactVector]) -> Option<(String, Vec<ExactVector>)> {
    if integer_root_system(roots) {
        return None;
    }
    let set: HashSet<&ExactVector> = roots.iter().collect();
    for a in roots {
        if a.is_zero() {
            return Some(("0 is not allowed as a root".into(), vec![a.clone()]));
        }
        if !set.contains(&a.neg()) {
            return Some(("not closed under negation".into(), vec![a.clone()]));
        }
    }
    for a in roots {
        for b in roots {
            let c = int(2) * a.dot(b) / a.norm_sq();
            if !c.is_integer() {
                return Some(("non-integral Cartan number".into(), vec![a.clone(), b.clone()]));
            }
            let s = reflect_unchecked(a, b);
            if !set.contains(&s) {
                return Some((format!("reflection image {s} missing"), vec![a.clone(), b.clone()]));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub passed: bool,
    pub detail: String,
    pub witness: Vec<ExactVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub conditions: Vec<ConditionResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            return Ok(());
        }
        let msg = self
            .failures()
            .map(|c| format!("({}) {}", c.condition, c.detail))
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::AxiomFailure(msg))
    }
}

fn ok(condition: u8, detail: impl Into<String>) -> ConditionResult {
    ConditionResult {
        condition,
        passed: true,
        detail: detail.into(),
        witness: Vec::new(),
    }
}

fn fail(condition: u8, detail: impl Into<String>, witness: Vec<ExactVector>) -> ConditionResult {
    ConditionResult {
        condition,
        passed: false,
        detail: detail.into(),
        witness,
    }
}

fn parity_condition(
    t: &SymmetricTriad,
    condition: u8,
    lambdas: &[&ExactVector],
    target: impl Fn(&ExactVector) -> bool,
) -> ConditionResult {
    // a zero vector in w is reported under (3)
    for alpha in t.w.iter().filter(|a| !a.is_zero()) {
        for &lambda in lambdas {
            let c = int(2) * alpha.dot(lambda) / alpha.norm_sq();
            if !c.is_integer() {
                return fail(
                    condition,
                    "2<alpha, lambda>/|alpha|^2 is not an integer",
                    vec![alpha.clone(), lambda.clone()],
                );
            }
            let odd = c.to_integer().bit(0);
            let image = reflect_unchecked(alpha, lambda);
            if odd != target(&image) {
                let detail = if odd {
                    "odd Cartan integer but reflection lands outside the required set"
                } else {
                    "even Cartan integer but reflection lands in the excluded set"
                };
                return fail(condition, detail, vec![alpha.clone(), lambda.clone()]);
            }
        }
    }
    ok(condition, "holds")
}

/// Evaluates the six defining conditions of a symmetric triad. Every
/// condition is reported; failing ones carry witnesses.
pub fn check_axioms(t: &SymmetricTriad) -> AxiomReport {
    let mut conditions = Vec::with_capacity(6);

    // (1) sigma_tilde irreducible root system spanning a
    conditions.push(if t.sigma_tilde.is_empty() {
        fail(1, "sigma_tilde is empty", Vec::new())
    } else if let Some((detail, wit)) = root_system_defect(&t.sigma_tilde) {
        fail(1, format!("sigma_tilde: {detail}"), wit)
    } else if !is_irreducible(&t.sigma_tilde) {
        let comps = root_components(&t.sigma_tilde);
        fail(
            1,
            format!("sigma_tilde is reducible ({} components)", comps.len()),
            comps.iter().map(|c| c[0].clone()).collect(),
        )
    } else {
        ok(1, format!("irreducible, spans a of dimension {}", t.dim_a()))
    });

    // (2) sigma is a root system of span(sigma)
    conditions.push(match root_system_defect(&t.sigma) {
        Some((detail, wit)) => fail(2, format!("sigma: {detail}"), wit),
        None => ok(2, "root system of its span"),
    });

    // (3) w nonempty, symmetric, sigma_tilde = sigma ∪ w
    conditions.push({
        let union = sorted_set(t.sigma.iter().chain(&t.w).cloned());
        if t.w.is_empty() {
            fail(3, "w is empty", Vec::new())
        } else if let Some(z) = t.w.iter().find(|a| a.is_zero()) {
            fail(3, "0 is not allowed in w", vec![z.clone()])
        } else if let Some(a) = t.w.iter().find(|a| !t.in_w(&a.neg())) {
            fail(3, "w is not invariant under -1", vec![a.clone()])
        } else if union != t.sigma_tilde {
            let wit: Vec<ExactVector> = union
                .iter()
                .filter(|r| !contains(&t.sigma_tilde, r))
                .chain(t.sigma_tilde.iter().filter(|r| !contains(&union, r)))
                .cloned()
                .collect();
            fail(3, "sigma_tilde differs from sigma ∪ w", wit)
        } else {
            ok(3, "holds")
        }
    });

    // (4) sigma ∩ w nonempty and equal to the short end of sigma_tilde
    conditions.push({
        let both: Vec<&ExactVector> = t.sigma.iter().filter(|r| t.in_w(r)).collect();
        match both.iter().map(|r| r.norm_sq()).max() {
            None => {
                // the shortest roots of sigma_tilde are the ones that belong there
                let l2 = t.sigma_tilde.iter().map(|r| r.norm_sq()).min();
                let short = t.sigma_tilde.iter().filter(|r| Some(r.norm_sq()) == l2).cloned().collect();
                fail(4, "sigma ∩ w is empty", short)
            }
            Some(l2) => {
                let bad: Vec<ExactVector> = t
                    .sigma_tilde
                    .iter()
                    .filter(|r| (r.norm_sq() <= l2) != (t.in_sigma(r) && t.in_w(r)))
                    .cloned()
                    .collect();
                if bad.is_empty() {
                    ok(4, format!("l^2 = {}", exact::format_rational(&l2)))
                } else {
                    fail(4, "sigma ∩ w is not {alpha : |alpha| <= l}", bad)
                }
            }
        }
    });

    // (5) alpha in w, lambda in sigma \ w
    let sigma_only: Vec<&ExactVector> = t.sigma.iter().filter(|r| !t.in_w(r)).collect();
    conditions.push(parity_condition(t, 5, &sigma_only, |v| t.in_w(v) && !t.in_sigma(v)));

    // (6) alpha in w, lambda in w \ sigma
    let w_only: Vec<&ExactVector> = t.w.iter().filter(|r| !t.in_sigma(r)).collect();
    conditions.push(parity_condition(t, 6, &w_only, |v| t.in_sigma(v) && !t.in_w(v)));

    AxiomReport { conditions }
}

/// Which half of the regularity condition a root violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationClass {
    /// `lambda` in sigma with `<lambda, H>` in `pi Z`.
    #[serde(rename = "i")]
    Sigma,
    /// `alpha` in w with `<alpha, H>` in `pi/2 + pi Z`.
    #[serde(rename = "ii")]
    W,
}

impl fmt::Display for ViolationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationClass::Sigma => write!(f, "(i) sigma root on pi Z"),
            ViolationClass::W => write!(f, "(ii) w root on pi/2 + pi Z"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub root: ExactVector,
    pub class: ViolationClass,
    /// `<root, H> / pi`.
    pub pairing: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub violations: Vec<Violation>,
}

/// Violations of the regularity condition among `sigma` and `w` roots. Only
/// positive representatives are listed (the condition is symmetric).
pub fn regularity_violations(
    sigma: &[ExactVector],
    w: &[ExactVector],
    h: &PiPoint,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for lambda in sigma.iter().filter(|r| r.is_lex_positive()) {
        let p = h.pairing(lambda);
        if p.is_integer() {
            out.push(Violation {
                root: lambda.clone(),
                class: ViolationClass::Sigma,
                pairing: p,
            });
        }
    }
    for alpha in w.iter().filter(|r| r.is_lex_positive()) {
        let p = h.pairing(alpha);
        if is_half_odd(&p) {
            out.push(Violation {
                root: alpha.clone(),
                class: ViolationClass::W,
                pairing: p,
            });
        }
    }
    out
}

pub fn is_regular(t: &SymmetricTriad, h: &PiPoint) -> Result<Regularity> {
    t.check_point(h)?;
    let violations = regularity_violations(&t.sigma, &t.w, h);
    Ok(Regularity {
        regular: violations.is_empty(),
        violations,
    })
}

/// Fundamental cell data: `alpha_tilde = sum m_i alpha_i` and the vertices
/// `H_i` of the simplex `P_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellData {
    pub alpha_tilde: ExactVector,
    pub m_coeffs: Vec<u64>,
    pub h_basis: Vec<PiPoint>,
    pub simple_sigma: Vec<ExactVector>,
}

impl CellData {
    pub fn m_sum(&self) -> u64 {
        self.m_coeffs.iter().sum()
    }

    /// `sum t_i H_i`.
    pub fn point(&self, t: &[Rational]) -> PiPoint {
        let mut q = ExactVector::zeros(self.alpha_tilde.dim());
        for (ti, h) in t.iter().zip(&self.h_basis) {
            q = q.add_scaled(ti, h.q());
        }
        PiPoint::new(q)
    }

    /// True iff `h` lies in the open simplex `P_0`.
    pub fn contains(&self, h: &PiPoint) -> bool {
        let zero = Rational::zero();
        self.simple_sigma.iter().all(|a| h.pairing(a) > zero)
            && h.pairing(&self.alpha_tilde) < exact::ratio(1, 2)
    }
}

/// Open interval spanned by `values` contains a point of `pred`, tested on
/// the finitely many half-integers in range.
fn open_range_hits(values: &[Rational], pred: impl Fn(&Rational) -> bool) -> bool {
    let lo = values.iter().min().expect("nonempty").clone();
    let hi = values.iter().max().expect("nonempty").clone();
    // candidates are k/2 with lo < k/2 < hi
    let two = int(2);
    let start: BigInt = (&lo * &two).floor().to_integer() + 1;
    let end: BigInt = (&hi * &two).ceil().to_integer() - 1;
    let mut k = start;
    while k <= end {
        let x = Rational::new(k.clone(), BigInt::from(2));
        if pred(&x) {
            return true;
        }
        k += 1;
    }
    false
}

fn simple_sigma(t: &SymmetricTriad) -> Vec<ExactVector> {
    simple_roots_of(&t.sigma)
}

/// Finds `alpha_tilde` in `w+` for which the simplex
/// `{0 < <alpha_i, H>, <alpha_tilde, H> < pi/2}` is a cell.
pub fn fundamental_cell(t: &SymmetricTriad) -> Result<CellData> {
    if t.sigma.is_empty() {
        return Err(Error::AxiomFailure("(4) sigma is empty, so there is no cell".into()));
    }
    if !is_irreducible(&t.sigma) {
        return Err(Error::Reducible);
    }
    let pi = simple_sigma(t);
    if pi.len() != t.dim_a() {
        return Err(Error::Invalid(format!(
            "sigma has rank {} but a has dimension {}",
            pi.len(),
            t.dim_a()
        )));
    }
    let space = Subspace::new(pi.clone())?;
    let sigma_pos: Vec<&ExactVector> = t.sigma_positive().collect();
    let w_pos: Vec<&ExactVector> = t.w_positive().collect();
    for cand in &w_pos {
        if !space.contains(cand) {
            continue;
        }
        let coeffs = space.projection_coefficients(cand);
        if !coeffs.iter().all(|c| c.is_integer() && c.is_positive()) {
            continue;
        }
        let m: Vec<u64> = coeffs
            .iter()
            .map(|c| c.to_integer().to_u64().expect("small coefficient"))
            .collect();
        let h_basis: Vec<PiPoint> = (0..pi.len())
            .map(|i| {
                let targets: Vec<Rational> = (0..pi.len())
                    .map(|j| {
                        if i == j {
                            exact::ratio(1, 2 * m[i] as i64)
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                PiPoint::new(space.dual_solve(&targets))
            })
            .collect();
        let vertex_values = |root: &ExactVector| -> Vec<Rational> {
            std::iter::once(Rational::zero())
                .chain(h_basis.iter().map(|h| h.pairing(root)))
                .collect()
        };
        let crosses_sigma = sigma_pos
            .iter()
            .any(|l| open_range_hits(&vertex_values(l), |x| x.is_integer()));
        let crosses_w = w_pos
            .iter()
            .any(|a| open_range_hits(&vertex_values(a), is_half_odd));
        if crosses_sigma || crosses_w {
            continue;
        }
        let cell = CellData {
            alpha_tilde: (*cand).clone(),
            m_coeffs: m,
            h_basis,
            simple_sigma: pi.clone(),
        };
        verify_cell(&cell)?;
        return Ok(cell);
    }
    Err(Error::NoAlphaTilde)
}

fn verify_cell(cell: &CellData) -> Result<()> {
    let half = exact::ratio(1, 2);
    for (i, h) in cell.h_basis.iter().enumerate() {
        if h.pairing(&cell.alpha_tilde) != half {
            return Err(Error::Postcondition(format!("<H_{}, alpha_tilde> != pi/2", i + 1)));
        }
        for (j, a) in cell.simple_sigma.iter().enumerate() {
            let expect = if i == j {
                exact::ratio(1, 2 * cell.m_coeffs[i] as i64)
            } else {
                Rational::zero()
            };
            if h.pairing(a) != expect {
                return Err(Error::Postcondition(format!("<H_{}, alpha_{}> wrong", i + 1, j + 1)));
            }
        }
    }
    let mut sum = ExactVector::zeros(cell.alpha_tilde.dim());
    for (c, a) in cell.m_coeffs.iter().zip(&cell.simple_sigma) {
        sum = sum.add_scaled(&int(*c as i64), a);
    }
    if sum != cell.alpha_tilde {
        return Err(Error::Postcondition("alpha_tilde != sum m_i alpha_i".into()));
    }
    Ok(())
}

/// `<lambda, q> in (1/2) Z` for every `lambda` in sigma_tilde.
pub fn gamma_contains(t: &SymmetricTriad, h: &PiPoint) -> Result<bool> {
    t.check_point(h)?;
    Ok(t.sigma_tilde.iter().all(|l| is_half_integer(&h.pairing(l))))
}

/// The same lattice tested over sigma alone.
pub fn gamma_contains_reduced(t: &SymmetricTriad, h: &PiPoint) -> Result<bool> {
    t.check_point(h)?;
    Ok(t.sigma.iter().all(|l| is_half_integer(&h.pairing(l))))
}

/// `H_0 = sum (m_i / n) H_i`, regular with `n H_0` in `Gamma`.
pub fn st_point(t: &SymmetricTriad, n: u64) -> Result<PiPoint> {
    let cell = fundamental_cell(t)?;
    st_point_with_cell(t, &cell, n)
}

pub fn st_point_with_cell(t: &SymmetricTriad, cell: &CellData, n: u64) -> Result<PiPoint> {
    let sum = cell.m_sum();
    if n <= sum {
        return Err(Error::StPointOrder { n, sum });
    }
    let t_coeffs: Vec<Rational> = cell
        .m_coeffs
        .iter()
        .map(|&m| exact::ratio(m as i64, n as i64))
        .collect();
    let h0 = cell.point(&t_coeffs);
    if !is_regular(t, &h0)?.regular {
        return Err(Error::Postcondition("st-point is not regular".into()));
    }
    if !gamma_contains(t, &h0.scale(&int(n as i64)))? {
        return Err(Error::Postcondition("n * H_0 is not in Gamma".into()));
    }
    Ok(h0)
}

/// St-point of a possibly reducible triad: one point per irreducible
/// component (order `orders[j]`, default `sum m_i + 1`), summed, with
/// combined order the product of the component orders.
pub fn st_point_direct(t: &SymmetricTriad, orders: Option<&[u64]>) -> Result<(PiPoint, u64)> {
    let comps = t.components();
    if let Some(o) = orders {
        if o.len() != comps.len() {
            return Err(Error::Invalid(format!(
                "{} orders given for {} irreducible components",
                o.len(),
                comps.len()
            )));
        }
    }
    let mut h = PiPoint::new(ExactVector::zeros(t.ambient_dim));
    let mut total: u64 = 1;
    for (j, comp) in comps.iter().enumerate() {
        let cell = fundamental_cell(comp)?;
        let n_j = orders.map_or(cell.m_sum() + 1, |o| o[j]);
        h = h.add(&st_point_with_cell(comp, &cell, n_j)?);
        total = total
            .checked_mul(n_j)
            .ok_or_else(|| Error::Invalid("combined order overflows".into()))?;
    }
    if !is_regular(t, &h)?.regular || !gamma_contains(t, &h.scale(&int(total as i64)))? {
        return Err(Error::Postcondition("direct-sum st-point failed its checks".into()));
    }
    Ok((h, total))
}

/// An affine isometry `H -> linear * H + pi * translation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineIsometry {
    /// Row-major exact matrix.
    pub linear: Vec<Vec<Rational>>,
    pub translation: PiPoint,
}

impl AffineIsometry {
    /// `(s_root, pi * shift)`.
    pub fn reflection(root: &ExactVector, shift: ExactVector) -> Self {
        let d = root.dim();
        let linear = (0..d)
            .map(|i| {
                let col_i = reflect_unchecked(root, &ExactVector::unit(d, i));
                (0..d).map(|j| col_i.coords()[j].clone()).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        // transpose: we built columns as rows
        let linear = (0..d)
            .map(|i| (0..d).map(|j| linear[j][i].clone()).collect())
            .collect();
        Self {
            linear,
            translation: PiPoint::new(shift),
        }
    }

    pub fn apply(&self, h: &PiPoint) -> PiPoint {
        let coords: Vec<Rational> = self
            .linear
            .iter()
            .map(|row| {
                row.iter()
                    .zip(h.q().coords())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        let lin = ExactVector::new(coords).expect("nonempty");
        PiPoint::new(lin.add(self.translation.q()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let d = self.linear.len();
        let linear = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(Rational::zero(), |acc, k| {
                            acc + &self.linear[i][k] * &other.linear[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        let shifted = self.apply(&other.translation);
        Self {
            linear,
            translation: shifted,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let linear = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self {
            linear,
            translation: PiPoint::new(ExactVector::zeros(dim)),
        }
    }
}

/// Generators `(s_lambda, 2k pi lambda / |lambda|^2)` for lambda in sigma and
/// `(s_alpha, (2k+1) pi alpha / |alpha|^2)` for alpha in w, `|k| <= n_range`.
pub fn affine_generators(t: &SymmetricTriad, n_range: u32) -> Vec<AffineIsometry> {
    let r = n_range as i64;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |g: AffineIsometry| {
        if seen.insert(g.clone()) {
            out.push(g);
        }
    };
    for lambda in &t.sigma {
        for k in -r..=r {
            let shift = lambda.scale(&(int(2 * k) / lambda.norm_sq()));
            push(AffineIsometry::reflection(lambda, shift));
        }
    }
    for alpha in &t.w {
        for k in -r..=r {
            let shift = alpha.scale(&(int(2 * k + 1) / alpha.norm_sq()));
            push(AffineIsometry::reflection(alpha, shift));
        }
    }
    out
}

/// Every `W(sigma)`-orbit of a root in sigma ∪ w spans `a`.
pub fn span_property(t: &SymmetricTriad) -> Result<bool> {
    if !is_irreducible(&t.sigma) {
        return Err(Error::Reducible);
    }
    let gens: Vec<ExactVector> = t.sigma_positive().cloned().collect();
    let dim = t.dim_a();
    Ok(t
        .sigma
        .iter()
        .chain(&t.w)
        .all(|root| exact::rank(&orbit_under(&gens, root)) == dim))
}

/// Orthogonal block sum of triads.
pub fn direct_sum(components: &[SymmetricTriad]) -> Result<SymmetricTriad> {
    if components.is_empty() {
        return Err(Error::Invalid("direct sum needs at least one component".into()));
    }
    let total: usize = components.iter().map(|c| c.ambient_dim).sum();
    let mut sigma_tilde = Vec::new();
    let mut sigma = Vec::new();
    let mut w = Vec::new();
    let mut m: Option<BTreeMap<ExactVector, u32>> = Some(BTreeMap::new());
    let mut n: Option<BTreeMap<ExactVector, u32>> = Some(BTreeMap::new());
    let mut offset = 0;
    for c in components {
        let emb = |v: &ExactVector| v.embed(total, offset);
        sigma_tilde.extend(c.sigma_tilde.iter().map(emb));
        sigma.extend(c.sigma.iter().map(emb));
        w.extend(c.w.iter().map(emb));
        merge_embedded(&mut m, c.m.as_ref(), &emb);
        merge_embedded(&mut n, c.n.as_ref(), &emb);
        offset += c.ambient_dim;
    }
    Ok(SymmetricTriad::new(total, sigma_tilde, sigma, w)?.with_multiplicities(m, n))
}

fn merge_embedded(
    acc: &mut Option<BTreeMap<ExactVector, u32>>,
    part: Option<&BTreeMap<ExactVector, u32>>,
    emb: &impl Fn(&ExactVector) -> ExactVector,
) {
    match (acc.as_mut(), part) {
        (Some(a), Some(p)) => a.extend(p.iter().map(|(r, k)| (emb(r), *k))),
        _ => *acc = None,
    }
}

/// Symbolic dimension of `p0 ∩ Ad(exp H) p1`: `dim a` plus `m(lambda)` for
/// sigma roots on `pi Z` and `n(alpha)` for w roots on `pi/2 + pi Z`, summed
/// over positive roots.
pub fn predicted_intersection_dim(t: &SymmetricTriad, h: &PiPoint) -> Result<usize> {
    t.check_point(h)?;
    let (Some(m), Some(n)) = (t.m.as_ref(), t.n.as_ref()) else {
        return Err(Error::MissingMultiplicity("triad carries no m/n data".into()));
    };
    let mut dim = t.dim_a();
    for v in regularity_violations(&t.sigma, &t.w, h) {
        let map = match v.class {
            ViolationClass::Sigma => m,
            ViolationClass::W => n,
        };
        let k = map
            .get(&v.root)
            .ok_or_else(|| Error::MissingMultiplicity(v.root.to_string()))?;
        dim += *k as usize;
    }
    Ok(dim)
}
