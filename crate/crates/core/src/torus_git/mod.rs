//! Combinatorial GIT for diagonalizable groups acting linearly on affine space.
//!
//! A point of A^n with support `S` (the set of its nonzero coordinates) is
//! θ-semistable iff θ lies in the rational cone spanned by the weights of the
//! coordinates in `S`: the monomials supported on `S` are exactly the
//! semi-invariants that can be nonzero there. For a closed invariant
//! subvariety V the semistable locus is V intersected with the ambient one.

mod chambers;
mod cone;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading_lattice::{lattice_intersection, lattice_rank, Character, WeightedAction};
use crate::saturation::TruncatedIdeal;

pub use chambers::{git_chambers, Chamber, ChamberFan};
pub use cone::{cone_contains, open_cone_point};

/// Coordinate supports are handled as bitmasks internally.
pub(crate) type Mask = u64;

const MAX_ENUMERATED_VARS: usize = 24;

pub(crate) fn mask_of(support: &[usize]) -> Mask {
    support.iter().fold(0, |m, &i| m | (1 << i))
}

pub(crate) fn indices_of(mask: Mask, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

fn check_size(action: &WeightedAction) -> Result<()> {
    if action.ambient_dim() > MAX_ENUMERATED_VARS {
        return Err(Error::TooLarge(format!(
            "support enumeration is limited to {MAX_ENUMERATED_VARS} coordinates"
        )));
    }
    Ok(())
}

pub fn support_semistable(action: &WeightedAction, support: &[usize], theta: &Character) -> bool {
    let gens: Vec<Vec<i64>> = support.iter().map(|&i| action.column(i)).collect();
    cone_contains(&gens, &cone::to_rational(theta.coords()))
}

pub(crate) fn semistable_rational(
    action: &WeightedAction,
    mask: Mask,
    theta: &[crate::exact_algebra::Rational],
) -> bool {
    let gens: Vec<Vec<i64>> = indices_of(mask, action.ambient_dim())
        .into_iter()
        .map(|i| action.column(i))
        .collect();
    cone_contains(&gens, theta)
}

/// θ is effective when the ambient semistable locus is nonempty.
pub fn is_effective(action: &WeightedAction, theta: &Character) -> bool {
    cone_contains(&action.columns(), &cone::to_rational(theta.coords()))
}

/// Inclusion-minimal semistable supports. By Carathéodory each has linearly
/// independent weights, so only supports of size at most the rank are tried.
pub(crate) fn minimal_semistable_masks(
    action: &WeightedAction,
    theta: &[crate::exact_algebra::Rational],
) -> Vec<Mask> {
    let n = action.ambient_dim();
    let mut minimal: Vec<Mask> = Vec::new();
    for size in 0..=action.rank().min(n) {
        for combo in (0..n).combinations(size) {
            let mask = mask_of(&combo);
            if minimal.iter().any(|&m| m & mask == m) {
                continue;
            }
            if semistable_rational(action, mask, theta) {
                minimal.push(mask);
            }
        }
    }
    minimal
}

/// Inclusion-minimal θ-semistable supports, each sorted ascending.
pub fn minimal_semistable_supports(
    action: &WeightedAction,
    theta: &Character,
) -> Result<Vec<Vec<usize>>> {
    action.check_character(theta)?;
    check_size(action)?;
    let n = action.ambient_dim();
    Ok(minimal_semistable_masks(action, &cone::to_rational(theta.coords()))
        .into_iter()
        .map(|m| indices_of(m, n))
        .collect())
}

/// How a codimension on V was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    /// Hilbert-function differences vanished over the whole tail window.
    Heuristic,
    /// The tail window was too short to observe vanishing differences.
    Low,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimEstimate {
    pub value: usize,
    pub dim_v: usize,
    pub dim_stratum: usize,
    pub truncation_degree: u32,
    pub confidence: Confidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Coordinates allowed to be nonzero.
    pub support: Vec<usize>,
    pub ambient_codim: usize,
    pub codim_on_v: Option<CodimEstimate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum StrataOutcome {
    Strata { strata: Vec<Stratum> },
    /// θ is not in the cone of weights; the semistable locus is empty.
    NotEffective,
}

impl StrataOutcome {
    pub fn strata(&self) -> Option<&[Stratum]> {
        match self {
            StrataOutcome::Strata { strata } => Some(strata),
            StrataOutcome::NotEffective => None,
        }
    }
}

/// Krull dimension read off a truncated Hilbert function: the smallest `r`
/// such that the r-th finite difference vanishes on the tail `[D/2, D]`.
pub fn dimension_from_hilbert(h: &[usize]) -> (usize, Confidence) {
    let start = h.len() / 2;
    let mut diff: Vec<i64> = h[start..].iter().map(|&x| x as i64).collect();
    let mut r = 0;
    loop {
        if diff.iter().all(|&x| x == 0) {
            return (r, Confidence::Heuristic);
        }
        if diff.len() <= 1 {
            return (r + 1, Confidence::Low);
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        r += 1;
    }
}

/// Maximal θ-unstable supports together with their codimensions.
///
/// With an ideal, `codim_on_v` compares truncated Hilbert functions of V and
/// of V ∩ {coordinates off the support vanish} up to `truncation_degree`.
pub fn unstable_strata(
    action: &WeightedAction,
    theta: &Character,
    ideal: Option<&TruncatedIdeal>,
    truncation_degree: u32,
) -> Result<StrataOutcome> {
    action.check_character(theta)?;
    check_size(action)?;
    if !is_effective(action, theta) {
        return Ok(StrataOutcome::NotEffective);
    }
    let n = action.ambient_dim();
    let minimal = minimal_semistable_masks(action, &cone::to_rational(theta.coords()));
    let unstable = |s: Mask| !minimal.iter().any(|&m| m & s == m);
    let mut maximal: Vec<Mask> = (0..(1u64 << n))
        .filter(|&s| unstable(s))
        .filter(|&s| (0..n).all(|j| s & (1 << j) != 0 || !unstable(s | (1 << j))))
        .collect();
    // Larger strata (smaller codimension) first, then lexicographic supports.
    maximal.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), indices_of(s, n)));

    let dim_v = ideal
        .filter(|i| !i.is_zero())
        .map(|i| dimension_from_hilbert(&i.hilbert_function(truncation_degree)));
    let strata = maximal
        .into_iter()
        .map(|s| {
            let support = indices_of(s, n);
            let codim_on_v = match (ideal, dim_v) {
                (Some(i), Some((dv, c1))) => {
                    let restricted = i.restrict_to(&support);
                    let (ds, c2) =
                        dimension_from_hilbert(&restricted.hilbert_function(truncation_degree));
                    let confidence = if c1 == Confidence::Low || c2 == Confidence::Low {
                        Confidence::Low
                    } else {
                        Confidence::Heuristic
                    };
                    Some(CodimEstimate {
                        value: dv.saturating_sub(ds),
                        dim_v: dv,
                        dim_stratum: ds,
                        truncation_degree,
                        confidence,
                    })
                }
                _ => None,
            };
            Stratum {
                ambient_codim: n - support.len(),
                support,
                codim_on_v,
            }
        })
        .collect();
    Ok(StrataOutcome::Strata { strata })
}

/// The sublattice of characters trivial on every stabilizer of a semistable point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentLattice {
    /// Hermite normal form basis.
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
    pub full_rank: bool,
    /// Index in the character lattice when full rank.
    pub index: Option<u64>,
    /// Every semistable support spans a full-rank lattice, so ambient
    /// stabilizers are finite and semistable points are stable.
    pub ambient_generic: bool,
}

/// Λ = ∩ Z-span{weights of S} over the minimal θ-semistable supports S. The
/// stabilizer of a point with support S has character group Z^r / span(S).
pub fn descent_lattice(action: &WeightedAction, theta: &Character) -> Result<DescentLattice> {
    action.check_character(theta)?;
    check_size(action)?;
    if !is_effective(action, theta) {
        return Err(Error::NotEffective);
    }
    let r = action.rank();
    let n = action.ambient_dim();
    let minimal = minimal_semistable_masks(action, &cone::to_rational(theta.coords()));
    let spans: Vec<Vec<Vec<i64>>> = minimal
        .iter()
        .map(|&m| {
            let gens: Vec<Vec<i64>> = indices_of(m, n).into_iter().map(|i| action.column(i)).collect();
            if gens.is_empty() {
                vec![vec![0; r]]
            } else {
                gens
            }
        })
        .collect();
    let ambient_generic = spans.iter().all(|g| lattice_rank(g) == r);
    let basis = lattice_intersection(&spans);
    let rank = basis.len();
    Ok(DescentLattice {
        index: crate::grading_lattice::lattice_index(&basis, r),
        full_rank: rank == r,
        rank,
        basis,
        ambient_generic,
    })
}
