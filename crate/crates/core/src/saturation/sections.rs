use std::collections::BTreeMap;

use serde::Serialize;

use super::{graded_for, standard_monomials, Caps, TruncatedIdeal};
use crate::error::{Error, Result};
use crate::exact_algebra::{int, kernel, Monomial, Polynomial, ReducedBasis, SparseVec};
use crate::grading_lattice::{Character, WeightedAction};
use crate::torus_git::{is_effective, minimal_semistable_supports};

/// Weight-mθ elements of k[V] whose non-vanishing loci cover the semistable locus.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSet {
    /// The multiple m of θ.
    pub level: u32,
    pub witnesses: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    /// Every minimal semistable support carries a witness that does not
    /// vanish on it modulo the ideal (tested in the witness's degree).
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// Raising every power by one added nothing in any requested degree.
    ProvenStable,
    /// The next power changed some dimension; the table is a lower bound.
    Truncated,
    /// Read off k[V] directly, no saturation involved.
    Exact,
}

/// The rational function `numerator / f1^witness_power`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub numerator: Polynomial,
    pub witness_power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionSlice {
    pub degree: u32,
    pub basis: Vec<Fraction>,
    /// Dimension obtained with every power raised by one.
    pub dim_next_power: usize,
}

impl SectionSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Sections of weight χ over the semistable locus, degree by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPiece {
    pub chi: Character,
    pub witnesses: WitnessSet,
    /// Index of the common denominator `f1` in `witnesses`.
    pub distinguished: usize,
    pub caps: Caps,
    pub slices: Vec<SectionSlice>,
    pub exactness: Exactness,
}

struct Witness {
    poly: Polynomial,
    weight: Character,
    degree: u32,
}

impl SectionPiece {
    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(SectionSlice::dim).collect()
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.witnesses.witnesses[self.distinguished]
    }

    /// Whether `frac`, a fraction of weight χ and degree `degree`, lies in the
    /// span of this piece's basis in that degree.
    pub fn contains(
        &self,
        ideal: &TruncatedIdeal,
        action: &WeightedAction,
        frac: &Fraction,
        degree: u32,
    ) -> Result<bool> {
        let ideal = graded_for(ideal, action)?;
        let f1 = self.denominator();
        let w1 = action.weight_of_polynomial(f1).expect("witness is weight-homogeneous");
        let d1 = f1.degree().unwrap_or(0);
        let basis = self.slices.get(degree as usize).map_or(&[][..], |s| &s.basis[..]);
        let level = basis
            .iter()
            .map(|b| b.witness_power)
            .chain([frac.witness_power])
            .max()
            .unwrap();
        let w = &self.chi + &w1.scale(level as i64);
        let mut span = (*ideal.weight_slice(&w, degree + level * d1)?).clone();
        for b in basis {
            span.insert(&b.numerator.mul(&f1.pow(level - b.witness_power)));
        }
        Ok(span.contains(&frac.numerator.mul(&f1.pow(level - frac.witness_power))))
    }
}

fn nonvanishing_on(ideal: &TruncatedIdeal, w: &Polynomial, support: &[usize]) -> bool {
    let r = w.restrict_to(support);
    if r.is_zero() {
        return false;
    }
    if ideal.is_zero() {
        return true;
    }
    let restricted = ideal.restrict_to(support);
    !restricted.slice(r.degree().unwrap()).contains(&r)
}

/// Finds the smallest level m (then the smallest degree) at which
/// `(k[V])_{mθ}` is nonzero and returns its standard-monomial basis. Further
/// degrees of the same level are added while some minimal semistable support
/// is not yet covered.
pub fn witness_set(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    theta: &Character,
    caps: Caps,
) -> Result<WitnessSet> {
    action.check_character(theta)?;
    let ideal = graded_for(ideal, action)?;
    if !is_effective(action, theta) {
        return Err(Error::NotEffective);
    }
    let supports = minimal_semistable_supports(action, theta).ok();
    for level in 1..=caps.max_degree.max(1) {
        let w = theta.scale(level as i64);
        for d in 0..=caps.max_degree {
            let first = standard_monomials(&ideal, action, &w, d)?;
            if first.is_empty() {
                continue;
            }
            let mut witnesses = Vec::new();
            let mut degrees = Vec::new();
            let push = |ws: &mut Vec<Polynomial>, ds: &mut Vec<u32>, mons: Vec<Monomial>, deg| {
                for m in mons {
                    ws.push(Polynomial::monomial(m, int(1)));
                    ds.push(deg);
                }
            };
            push(&mut witnesses, &mut degrees, first, d);
            let covered = |ws: &[Polynomial]| match &supports {
                Some(ss) => ss.iter().all(|s| ws.iter().any(|f| nonvanishing_on(&ideal, f, s))),
                None => false,
            };
            let mut deg = d;
            while !covered(&witnesses) && deg < caps.max_degree {
                deg += 1;
                let more = standard_monomials(&ideal, action, &w, deg)?;
                push(&mut witnesses, &mut degrees, more, deg);
            }
            let certified = covered(&witnesses);
            return Ok(WitnessSet {
                level,
                witnesses,
                degrees,
                certified,
            });
        }
    }
    Err(Error::RaiseCaps {
        max_degree: caps.max_degree,
    })
}

/// Numerators `g` of weight χ + k·wt(f1) and degree d + k·deg(f1) with
/// `fi^p * g ∈ (f1^k) + I` for every other witness, as combinations of
/// standard monomials (so independent modulo I).
#[allow(clippy::too_many_arguments)]
fn level_numerators(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    f1: &Witness,
    others: &[Witness],
    k: u32,
    p: u32,
    chi: &Character,
    d: u32,
) -> Result<Vec<Polynomial>> {
    let n = action.ambient_dim();
    let w = chi + &f1.weight.scale(k as i64);
    let deg = d + k * f1.degree;
    let q = standard_monomials(ideal, action, &w, deg)?;
    let as_polys = |q: Vec<Monomial>| q.into_iter().map(|m| Polynomial::monomial(m, int(1))).collect();
    if q.is_empty() || others.is_empty() || k == 0 {
        return Ok(as_polys(q));
    }
    let f1k = f1.poly.pow(k);
    let mut cols: Vec<SparseVec<(usize, Monomial)>> = vec![BTreeMap::new(); q.len()];
    for (i, fi) in others.iter().enumerate() {
        let fip = fi.poly.pow(p);
        let tw = &w + &fi.weight.scale(p as i64);
        let slice = ideal.weight_slice_with(std::slice::from_ref(&f1k), &tw, deg + p * fi.degree)?;
        for (j, m) in q.iter().enumerate() {
            for (mono, c) in slice.reduce(&fip.mul_monomial(m)).into_terms() {
                cols[j].insert((i, mono), c);
            }
        }
    }
    Ok(kernel(&cols)
        .into_iter()
        .map(|comb| {
            let mut g = Polynomial::zero(n);
            for (j, c) in comb {
                g.add_term(q[j].clone(), c);
            }
            g
        })
        .collect())
}

/// Sections of weight χ in degrees `0..=caps.max_degree` with witness
/// `distinguished` as the common denominator.
pub fn sections_with_witnesses(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    witnesses: &WitnessSet,
    distinguished: usize,
    chi: &Character,
    caps: Caps,
) -> Result<SectionPiece> {
    action.check_character(chi)?;
    let ideal = graded_for(ideal, action)?;
    if distinguished >= witnesses.witnesses.len() {
        return Err(Error::Invalid(format!(
            "witness index {distinguished} out of range ({} witnesses)",
            witnesses.witnesses.len()
        )));
    }
    let mut all = Vec::new();
    for (poly, &degree) in witnesses.witnesses.iter().zip(&witnesses.degrees) {
        let weight = action
            .weight_of_polynomial(poly)
            .ok_or_else(|| Error::Invalid("witness is not weight-homogeneous".into()))?;
        all.push(Witness {
            poly: poly.clone(),
            weight,
            degree,
        });
    }
    let f1 = all.remove(distinguished);
    let others = all;
    let big_k = caps.max_sat_power;
    let n = action.ambient_dim();

    let mut slices = Vec::new();
    let mut stable = true;
    for d in 0..=caps.max_degree {
        let top_w = chi + &f1.weight.scale(big_k as i64);
        let top_deg = d + big_k * f1.degree;
        let islice = ideal.weight_slice(&top_w, top_deg)?;
        let mut acc = ReducedBasis::new(n);
        let mut basis = Vec::new();
        for k in 0..=big_k {
            let lift = f1.poly.pow(big_k - k);
            for g in level_numerators(&ideal, action, &f1, &others, k, big_k, chi, d)? {
                if acc.insert(&islice.reduce(&g.mul(&lift))) {
                    basis.push(Fraction {
                        numerator: g,
                        witness_power: k,
                    });
                }
            }
        }
        let next =
            level_numerators(&ideal, action, &f1, &others, big_k + 1, big_k + 1, chi, d)?.len();
        stable &= next == basis.len();
        slices.push(SectionSlice {
            degree: d,
            basis,
            dim_next_power: next,
        });
    }
    Ok(SectionPiece {
        chi: chi.clone(),
        witnesses: witnesses.clone(),
        distinguished,
        caps,
        slices,
        exactness: if stable {
            Exactness::ProvenStable
        } else {
            Exactness::Truncated
        },
    })
}

pub fn sections_weight_space(
    ideal: &TruncatedIdeal,
    action: &WeightedAction,
    theta: &Character,
    chi: &Character,
    caps: Caps,
) -> Result<SectionPiece> {
    let ws = witness_set(ideal, action, theta, caps)?;
    sections_with_witnesses(ideal, action, &ws, 0, chi, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::tests::example;

    fn golden(chi: i64, d: i64) -> usize {
        if d >= chi && (d - chi) % 2 == 0 {
            (d + 1) as usize
        } else {
            0
        }
    }

    #[test]
    fn witnesses_of_the_quadric_cone() {
        let (ideal, act) = example();
        let ws = witness_set(&ideal, &act, &Character(vec![1]), Caps::default()).unwrap();
        assert_eq!(ws.level, 1);
        assert_eq!(ws.witnesses, vec![Polynomial::var(4, 0), Polynomial::var(4, 1)]);
        assert!(ws.certified);
    }

    #[test]
    fn not_effective_is_reported() {
        let act = WeightedAction::new(vec![vec![1, 1]], 2).unwrap();
        let err = witness_set(&TruncatedIdeal::zero(2), &act, &Character(vec![-1]), Caps::default());
        assert_eq!(err, Err(Error::NotEffective));
    }

    #[test]
    fn sections_match_the_polynomial_ring_in_three_variables() {
        let (ideal, act) = example();
        let caps = Caps {
            max_degree: 5,
            max_sat_power: 3,
        };
        for chi in -2..=2 {
            let piece =
                sections_weight_space(&ideal, &act, &Character(vec![1]), &Character(vec![chi]), caps)
                    .unwrap();
            let want: Vec<usize> = (0..=5).map(|d| golden(chi, d)).collect();
            assert_eq!(piece.dims(), want, "chi = {chi}");
            assert_eq!(piece.exactness, Exactness::ProvenStable);
        }
    }

    #[test]
    fn c_over_a_is_a_section() {
        let (ideal, act) = example();
        let caps = Caps {
            max_degree: 2,
            max_sat_power: 2,
        };
        let piece =
            sections_weight_space(&ideal, &act, &Character(vec![1]), &Character(vec![-2]), caps)
                .unwrap();
        let z = Fraction {
            numerator: Polynomial::var(4, 2),
            witness_power: 1,
        };
        assert!(piece.contains(&ideal, &act, &z, 0).unwrap());
        let bad = Fraction {
            numerator: Polynomial::var(4, 2),
            witness_power: 1,
        };
        let piece0 =
            sections_weight_space(&ideal, &act, &Character(vec![1]), &Character(vec![0]), caps)
                .unwrap();
        // c/a has weight -2, not 0
        assert!(!piece0.contains(&ideal, &act, &bad, 0).unwrap());
    }
}
