use rayon::prelude::*;
use serde::Serialize;

use super::sections::{sections_with_witnesses, witness_set, Exactness, WitnessSet};
use super::{graded_for, standard_monomials, Caps, TruncatedIdeal};
use crate::error::{Error, Result};
use crate::grading_lattice::{Character, WeightedAction};
use crate::torus_git::{descent_lattice, unstable_strata, DescentLattice, StrataOutcome};

/// How the table entries were computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoxPath {
    /// θ = 0: the quotient is Y itself and sections are k[V].
    AffineQuotient,
    /// S2 asserted and no unstable stratum of codimension one: sections
    /// extend over the unstable locus, so they equal k[V].
    Codim2FastPath,
    /// Truncated saturation against a witness set.
    Generic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoxOptions {
    /// Caller asserts that V is S2.
    pub s2_asserted: bool,
    /// Run the saturation even when the fast path is eligible.
    pub force_generic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxRow {
    pub chi: Character,
    /// `dims[d]` is the dimension in total degree `d`.
    pub dims: Vec<usize>,
    pub exactness: Exactness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoxTable {
    pub theta: Character,
    pub caps: Caps,
    pub path: CoxPath,
    pub fast_path_eligible: bool,
    pub options: CoxOptions,
    #[serde(skip)]
    pub witnesses: Option<WitnessSet>,
    pub strata: StrataOutcome,
    pub descent: DescentLattice,
    pub rows: Vec<CoxRow>,
}

impl CoxTable {
    pub fn truncated(&self) -> bool {
        self.rows.iter().any(|r| r.exactness == Exactness::Truncated)
    }

    pub fn dim(&self, chi: &Character, d: u32) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| &r.chi == chi)
            .and_then(|r| r.dims.get(d as usize).copied())
    }
}

/// All characters in the box `lo <= χ <= hi`, lexicographically ordered.
pub fn chi_box(lo: &[i64], hi: &[i64]) -> Vec<Character> {
    let mut out = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (a..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Character).collect()
}

/// Graded dimensions of the sections ring over the θ-semistable locus for
/// every χ in `chis` and degrees `0..=caps.max_degree`.
pub fn cox_table(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    theta: &Character,
    chis: &[Character],
    caps: Caps,
    options: CoxOptions,
) -> Result<CoxTable> {
    action.check_character(theta)?;
    for chi in chis {
        action.check_character(chi)?;
    }
    let ideal = graded_for(ideal, action)?;
    let strata = unstable_strata(
        action,
        theta,
        (!ideal.is_zero()).then_some(&*ideal),
        caps.max_degree,
    )?;
    let Some(list) = strata.strata() else {
        return Err(Error::NotEffective);
    };
    let descent = descent_lattice(action, theta)?;
    let no_divisors = list.iter().all(|s| {
        let codim = s.codim_on_v.as_ref().map_or(s.ambient_codim, |c| c.value);
        codim >= 2
    });
    let fast_path_eligible = options.s2_asserted && no_divisors;
    let path = if theta.is_zero() {
        CoxPath::AffineQuotient
    } else if fast_path_eligible && !options.force_generic {
        CoxPath::Codim2FastPath
    } else {
        CoxPath::Generic
    };

    let (witnesses, rows) = match path {
        CoxPath::AffineQuotient | CoxPath::Codim2FastPath => {
            let rows = chis
                .par_iter()
                .map(|chi| {
                    let dims = (0..=caps.max_degree)
                        .map(|d| standard_monomials(&ideal, action, chi, d).map(|m| m.len()))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(CoxRow {
                        chi: chi.clone(),
                        dims,
                        exactness: Exactness::Exact,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (None, rows)
        }
        CoxPath::Generic => {
            let ws = witness_set(&ideal, action, theta, caps)?;
            let rows = chis
                .par_iter()
                .map(|chi| {
                    let piece = sections_with_witnesses(&ideal, action, &ws, 0, chi, caps)?;
                    Ok(CoxRow {
                        chi: chi.clone(),
                        dims: piece.dims(),
                        exactness: piece.exactness,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (Some(ws), rows)
        }
    };
    Ok(CoxTable {
        theta: theta.clone(),
        caps,
        path,
        fast_path_eligible,
        options,
        witnesses,
        strata,
        descent,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        let b = chi_box(&[-1, 0], &[0, 1]);
        let got: Vec<Vec<i64>> = b.into_iter().map(|c| c.0).collect();
        assert_eq!(got, vec![vec![-1, 0], vec![-1, 1], vec![0, 0], vec![0, 1]]);
        assert_eq!(chi_box(&[], &[]), vec![Character(vec![])]);
    }

    #[test]
    fn ambient_space_takes_the_fast_path() {
        let act = WeightedAction::new(vec![vec![1, 1, -1, -1]], 4).unwrap();
        let caps = Caps {
            max_degree: 4,
            max_sat_power: 3,
        };
        let chis = chi_box(&[-2], &[2]);
        let opts = CoxOptions {
            s2_asserted: true,
            force_generic: false,
        };
        let zero = TruncatedIdeal::zero(4);
        let fast = cox_table(&zero, &act, &Character(vec![1]), &chis, caps, opts).unwrap();
        assert_eq!(fast.path, CoxPath::Codim2FastPath);
        let slow = cox_table(
            &zero,
            &act,
            &Character(vec![1]),
            &chis,
            caps,
            CoxOptions {
                force_generic: true,
                ..opts
            },
        )
        .unwrap();
        assert_eq!(slow.path, CoxPath::Generic);
        let f: Vec<_> = fast.rows.iter().map(|r| &r.dims).collect();
        let s: Vec<_> = slow.rows.iter().map(|r| &r.dims).collect();
        assert_eq!(f, s);
    }

    #[test]
    fn quadric_cone_has_a_divisorial_stratum() {
        let (ideal, act) = crate::saturation::tests::example();
        let t = cox_table(
            &ideal,
            &act,
            &Character(vec![1]),
            &chi_box(&[0], &[0]),
            Caps {
                max_degree: 4,
                max_sat_power: 2,
            },
            CoxOptions {
                s2_asserted: true,
                force_generic: false,
            },
        )
        .unwrap();
        assert!(!t.fast_path_eligible);
        assert_eq!(t.path, CoxPath::Generic);
        assert_eq!(t.rows[0].dims, vec![1, 0, 3, 0, 5]);
    }

    #[test]
    fn zero_theta_is_the_affine_quotient() {
        let (ideal, act) = crate::saturation::tests::example();
        let t = cox_table(
            &ideal,
            &act,
            &Character(vec![0]),
            &chi_box(&[0], &[0]),
            Caps {
                max_degree: 4,
                max_sat_power: 2,
            },
            CoxOptions::default(),
        )
        .unwrap();
        assert_eq!(t.path, CoxPath::AffineQuotient);
        assert_eq!(t.rows[0].dims, vec![1, 0, 3, 0, 5]);
    }
}
