//! Floating-point certification of the symbolic results in matrix models of
//! `su(m)`.
//!
//! Nothing computed here flows back into the exact modules except through
//! snapped rationals that are re-verified.

pub mod algebra;
pub mod checks;
pub mod extract;
pub mod model;
pub mod report;

pub use checks::{
    dimension_grid, intersection_dimension, verify_antipodal_maximality, verify_commutative_lemma,
    verify_lemma_regularity, verify_rotation_formulas, RootClass,
};
pub use extract::{extract_triad, ExtractedTriad};
pub use model::{build_pair, PairModel};
pub use report::{Check, Report};

use crate::error::Result;
use crate::flags::{catalogue, noncongruent_intersection, congruent_intersection, BasePoint};
use crate::triads::{fundamental_cell, PiPoint};
use crate::exact::ExactVector;

/// Runs every check available for a catalogue pair: model sanity, triad
/// agreement, a dimension grid, the rotation identities at `h`, the
/// regularity lemma (non-congruent pairs) and commutativity of a discrete
/// intersection.
pub fn certify(name: &str, size: usize, h: &PiPoint, grid: usize, seed: u64) -> Result<Report> {
    let entry = catalogue::lookup(name, Some(size))?;
    let model = build_pair(name, size)?;
    let expected = entry.triad_data();
    let mut report = Report::new(format!("oracle certificate for {name} n={size}"));
    report.seed = Some(seed);
    report.extend(model.sanity.clone());
    let ext = extract_triad(&model)?;
    report.push(Check::flag("extracted triad equals the catalogue triad", ext.triad == expected));
    report.push(Check::below("root fit residual", ext.residual, 1e-8));
    let graded: usize = ext.spaces.iter().map(|s| s.basis.ncols()).sum();
    report.push(Check::equal(
        "root space total = dim g - dim centraliser",
        graded,
        model.algebra.dim() - ext.centralizer_dim,
    ));
    report.extend(dimension_grid(&model, &expected, grid, seed)?);
    for s in &ext.spaces {
        if s.m() > 0 {
            report.extend(verify_rotation_formulas(&model, &ext, &s.root, RootClass::Sigma, h)?);
        }
        if s.n() > 0 {
            report.extend(verify_rotation_formulas(&model, &ext, &s.root, RootClass::W, h)?);
        }
    }
    if entry.is_triad {
        let cell = fundamental_cell(&expected)?;
        report.extend(verify_lemma_regularity(&model, &expected, cell.m_sum() + 1)?);
    }
    let x0 = BasePoint::new(entry.default_x0.clone())?;
    let discrete = match &entry.data {
        catalogue::PairData::Noncongruent(t) if entry.is_triad => {
            Some(noncongruent_intersection(t, &x0, h, None)?)
        }
        catalogue::PairData::Congruent(r) => Some(congruent_intersection(r, &x0, h)?),
        _ => None,
    };
    if let Some(result) = discrete.filter(|r| r.is_discrete()) {
        let points: Vec<_> = result.points.iter().map(|p| model.exact_matrix(p)).collect();
        report.extend(verify_commutative_lemma(&model, h, &model.exact_matrix(x0.coords()), &points)?);
    }
    Ok(report)
}

/// Embeds a point of `a` as a matrix of the model.
pub fn embed_point(model: &PairModel, x: &ExactVector) -> algebra::CMat {
    model.exact_matrix(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::flags::catalogue::{SU2N_SO_SP, SUN_SO, SUN_SO_RANK1};

    #[test]
    fn certificates_pass_on_catalogue_pairs() {
        for (name, n) in [(SU2N_SO_SP, 2), (SU2N_SO_SP, 3), (SUN_SO_RANK1, 2), (SUN_SO_RANK1, 3), (SUN_SO, 3)] {
            let model = build_pair(name, n).unwrap();
            let h = PiPoint::new(extract::generic_point(&model).scale(&ratio(2, 7)));
            let report = certify(name, n, &h, 20, 7).unwrap();
            assert!(report.passed(), "{}", report.to_table());
        }
    }
}
