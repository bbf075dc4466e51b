//! Semi-invariants of products of special linear groups, tested
//! infinitesimally: a torus-weight vector is SL-invariant iff every Chevalley
//! generator, acting as a derivation, kills it.

pub(crate) mod adhm;
mod quiver;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::{echelon_span, int, kernel, Monomial, Polynomial, SparseVec};
use crate::grading_lattice::{Character, GradedBasis, WeightedAction};
use crate::saturation::{graded_for, standard_monomials, TruncatedIdeal};

pub use adhm::{adhm_weight_space, epsilon_pullback, ADHMPreset, MAX_SLICE_MONOMIALS};
pub use quiver::QuiverPreset;

/// A derivation of k[x], determined by the images of the variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub name: String,
    nvars: usize,
    rules: BTreeMap<usize, Polynomial>,
}

impl Derivation {
    pub fn new(name: impl Into<String>, nvars: usize) -> Self {
        Derivation {
            name: name.into(),
            nvars,
            rules: BTreeMap::new(),
        }
    }

    /// Adds `image` to the value of the derivation on variable `var`.
    pub fn add_rule(&mut self, var: usize, image: &Polynomial) {
        let e = self.rules.entry(var).or_insert_with(|| Polynomial::zero(self.nvars));
        *e = e.add(image);
        if e.is_zero() {
            self.rules.remove(&var);
        }
    }

    pub fn rules(&self) -> &BTreeMap<usize, Polynomial> {
        &self.rules
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Leibniz extension: `D(c * x^e) = c * Σ_v e_v x^(e - e_v) D(x_v)`.
pub fn apply_derivation(op: &Derivation, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.nvars());
    for (m, c) in p.terms() {
        for (&v, image) in &op.rules {
            let e = m.exponents()[v];
            if e == 0 {
                continue;
            }
            let rest = m.lower(v).expect("exponent is positive");
            out = out.add(&image.mul_monomial(&rest).scale(&(c * int(e as i64))));
        }
    }
    out
}

/// Derivations together with the maximal-torus grading they are compatible with.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAction {
    nvars: usize,
    operators: Vec<Derivation>,
    roots: Vec<Character>,
    torus: WeightedAction,
}

impl LieAction {
    /// Checks that each operator shifts torus weight by a single root.
    pub fn new(operators: Vec<Derivation>, torus: WeightedAction) -> Result<Self> {
        let nvars = torus.ambient_dim();
        let mut roots = Vec::new();
        for op in &operators {
            if op.nvars != nvars {
                return Err(Error::DimensionMismatch {
                    left: op.nvars,
                    right: nvars,
                });
            }
            let mut root: Option<Character> = None;
            for (&v, image) in &op.rules {
                let from = torus.weight_unchecked(&Monomial::var(nvars, v));
                for m in image.terms().keys() {
                    let shift = &torus.weight_unchecked(m) - &from;
                    match &root {
                        None => root = Some(shift),
                        Some(r) if *r == shift => {}
                        Some(r) => {
                            return Err(Error::InvalidPreset(format!(
                                "operator {} moves weights by both {r} and {shift}",
                                op.name
                            )))
                        }
                    }
                }
            }
            roots.push(root.unwrap_or_else(|| Character::zero(torus.rank())));
        }
        Ok(LieAction {
            nvars,
            operators,
            roots,
            torus,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn operators(&self) -> &[Derivation] {
        &self.operators
    }

    /// Torus weight shift of each operator.
    pub fn roots(&self) -> &[Character] {
        &self.roots
    }

    pub fn torus(&self) -> &WeightedAction {
        &self.torus
    }

    /// Every operator maps every generator of `ideal` back into the ideal.
    pub fn check_ideal(&self, ideal: &TruncatedIdeal) -> Result<()> {
        for (gi, g) in ideal.generators().iter().enumerate() {
            for op in &self.operators {
                let image = apply_derivation(op, g);
                let Some(deg) = image.degree() else { continue };
                if !ideal.slice(deg).contains(&image) {
                    return Err(Error::InvalidPreset(format!(
                        "operator {} maps generator {gi} outside the ideal",
                        op.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Elements of `(k[x]/I)` of torus weight `chi` and degree `d` killed by every
/// operator modulo the ideal.
pub fn sl_weight_space(
    action: &LieAction,
    chi: &Character,
    d: u32,
    ideal: Option<&TruncatedIdeal>,
) -> Result<GradedBasis> {
    let torus = &action.torus;
    torus.check_character(chi)?;
    let zero = TruncatedIdeal::zero(action.nvars);
    let ideal = graded_for(ideal.unwrap_or(&zero), torus)?;
    action.check_ideal(&ideal)?;
    let q = standard_monomials(&ideal, torus, chi, d)?;
    let mut cols: Vec<SparseVec<(usize, Monomial)>> = vec![BTreeMap::new(); q.len()];
    for (o, (op, root)) in action.operators.iter().zip(&action.roots).enumerate() {
        let target = chi + root;
        for (j, m) in q.iter().enumerate() {
            let image = apply_derivation(op, &Polynomial::monomial(m.clone(), int(1)));
            let Some(deg) = image.degree() else { continue };
            let reduced = if ideal.is_zero() {
                image
            } else {
                ideal.weight_slice(&target, deg)?.reduce(&image)
            };
            for (mono, c) in reduced.into_terms() {
                cols[j].insert((o, mono), c);
            }
        }
    }
    let polys: Vec<Polynomial> = kernel(&cols)
        .into_iter()
        .map(|comb| {
            let mut g = Polynomial::zero(action.nvars);
            for (j, c) in comb {
                g.add_term(q[j].clone(), c);
            }
            g
        })
        .collect();
    Ok(GradedBasis {
        weight: chi.clone(),
        degree: d,
        basis: echelon_span(action.nvars, &polys).basis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_on_plane() -> Derivation {
        // e: v -> u, u -> 0
        let mut e = Derivation::new("e", 2);
        e.add_rule(1, &Polynomial::var(2, 0));
        e
    }

    #[test]
    fn derivation_examples() {
        let e = sl2_on_plane();
        let u = Polynomial::var(2, 0);
        let v = Polynomial::var(2, 1);
        assert!(apply_derivation(&e, &Polynomial::constant(2, int(5))).is_zero());
        assert_eq!(apply_derivation(&e, &u.mul(&v)), u.pow(2));
        assert_eq!(apply_derivation(&e, &u.mul(&v.pow(2))), u.pow(2).mul(&v).scale(&int(2)));
    }

    #[test]
    fn inconsistent_root_rejected() {
        let torus = WeightedAction::new(vec![vec![1, 0, 0]], 3).unwrap();
        let mut op = Derivation::new("bad", 3);
        op.add_rule(0, &Polynomial::var(3, 1));
        op.add_rule(1, &Polynomial::var(3, 0));
        assert!(matches!(LieAction::new(vec![op], torus), Err(Error::InvalidPreset(_))));
    }

    #[test]
    fn sl2_invariants_of_two_vectors() {
        // SL2 on two copies of k^2: invariants are powers of the determinant.
        let torus = WeightedAction::new(vec![vec![1, -1, 1, -1]], 4).unwrap();
        let mut e = Derivation::new("e", 4);
        e.add_rule(1, &Polynomial::var(4, 0));
        e.add_rule(3, &Polynomial::var(4, 2));
        let mut f = Derivation::new("f", 4);
        f.add_rule(0, &Polynomial::var(4, 1));
        f.add_rule(2, &Polynomial::var(4, 3));
        let lie = LieAction::new(vec![e, f], torus).unwrap();
        let zero = Character(vec![0]);
        let dims: Vec<usize> =
            (0..5).map(|d| sl_weight_space(&lie, &zero, d, None).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }
}
