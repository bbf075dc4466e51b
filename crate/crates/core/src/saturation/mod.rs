//! Graded pieces of k[V] = k[x]/I and of the sections ring of the semistable
//! locus, computed by truncated saturation.
//!
//! Sections of weight χ are fractions `g / f1^k` that stay regular after
//! inverting every other witness `fi`; regularity is decided by membership of
//! `fi^K * g` in `(f1^k) + I`, one degree slice at a time.

mod cox;
mod ideal;
mod sections;

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{Monomial, Polynomial};
use crate::grading_lattice::{weight_space_monomials, Character, GradedBasis, WeightedAction};

pub use cox::{chi_box, cox_table, CoxOptions, CoxPath, CoxRow, CoxTable};
pub use ideal::TruncatedIdeal;
pub use sections::{
    sections_weight_space, sections_with_witnesses, witness_set, Exactness, Fraction,
    SectionPiece, SectionSlice, WitnessSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_degree: u32,
    pub max_sat_power: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_degree: 8,
            max_sat_power: 4,
        }
    }
}

/// The ideal with `action` attached as its grading, rebuilt only if needed.
pub(crate) fn graded_for<'a>(
    ideal: &'a TruncatedIdeal,
    action: &WeightedAction,
) -> Result<Cow<'a, TruncatedIdeal>> {
    if ideal.nvars() != action.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: ideal.nvars(),
            right: action.ambient_dim(),
        });
    }
    match ideal.grading() {
        Some(g) if g == action => Ok(Cow::Borrowed(ideal)),
        _ => Ok(Cow::Owned(ideal.with_grading(action)?)),
    }
}

/// Standard monomials of `(k[x]/I)` at weight `chi` and degree `d`: the
/// weight-space monomials that are not pivots of the ideal slice.
pub(crate) fn standard_monomials(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    chi: &Character,
    d: u32,
) -> Result<Vec<Monomial>> {
    let mons = weight_space_monomials(action, chi, d);
    if ideal.is_zero() || mons.is_empty() {
        return Ok(mons);
    }
    let slice = ideal.weight_slice(chi, d)?;
    Ok(mons.into_iter().filter(|m| !slice.is_pivot(m)).collect())
}

/// Basis of `(k[x]/I)` at weight `chi` and degree `d`, as standard monomials.
pub fn quotient_weight_space(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    chi: &Character,
    d: u32,
) -> Result<GradedBasis> {
    action.check_character(chi)?;
    let ideal = graded_for(ideal, action)?;
    let basis = standard_monomials(&ideal, action, chi, d)?
        .into_iter()
        .map(|m| Polynomial::monomial(m, crate::exact_algebra::int(1)))
        .collect();
    Ok(GradedBasis {
        weight: chi.clone(),
        degree: d,
        basis,
    })
}
