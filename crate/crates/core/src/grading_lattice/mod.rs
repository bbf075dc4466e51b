//! Character lattices and weight gradings of diagonalizable-group actions.
//!
//! All character groups are free lattices Z^rank; torsion characters are not
//! modelled.

mod lattice;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{monomials_of_degree, Monomial, Polynomial};

pub use lattice::{
    hnf, index as lattice_index, integer_kernel, lattice_contains, lattice_intersection,
    primitive, rank as lattice_rank,
};

/// An element of the character lattice Z^rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Character {
        Character(self.0.iter().map(|x| x * k).collect())
    }
}

impl From<Vec<i64>> for Character {
    fn from(v: Vec<i64>) -> Self {
        Character(v)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A diagonalizable group acting linearly on affine space: column `i` of the
/// weight matrix is the character by which the group scales coordinate `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WeightedAction {
    rows: Vec<Vec<i64>>,
    ambient_dim: usize,
}

impl WeightedAction {
    /// `rows` is the `rank x ambient_dim` weight matrix.
    pub fn new(rows: Vec<Vec<i64>>, ambient_dim: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != ambient_dim {
                return Err(Error::WeightShape {
                    expected: ambient_dim,
                    found: r.len(),
                });
            }
        }
        Ok(WeightedAction { rows, ambient_dim })
    }

    /// Builds the action from one weight per coordinate.
    pub fn from_columns(columns: &[Vec<i64>], rank: usize) -> Result<Self> {
        for c in columns {
            if c.len() != rank {
                return Err(Error::CharacterLength {
                    expected: rank,
                    found: c.len(),
                });
            }
        }
        let rows = (0..rank).map(|k| columns.iter().map(|c| c[k]).collect()).collect();
        Self::new(rows, columns.len())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.ambient_dim).map(|i| self.column(i)).collect()
    }

    pub fn check_character(&self, chi: &Character) -> Result<()> {
        if chi.rank() != self.rank() {
            return Err(Error::CharacterLength {
                expected: self.rank(),
                found: chi.rank(),
            });
        }
        Ok(())
    }

    /// Weight of a monomial, or `None` for polynomials that are not
    /// weight-homogeneous (and for zero).
    pub fn weight_of_polynomial(&self, p: &Polynomial) -> Option<Character> {
        let mut it = p.terms().keys().map(|m| self.weight_unchecked(m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub(crate) fn weight_unchecked(&self, m: &Monomial) -> Character {
        let e = m.exponents();
        Character(
            self.rows
                .iter()
                .map(|r| r.iter().zip(e).map(|(w, &x)| w * x as i64).sum())
                .collect(),
        )
    }
}

pub fn weight_of_monomial(action: &WeightedAction, m: &Monomial) -> Result<Character> {
    if m.nvars() != action.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: m.nvars(),
            right: action.ambient_dim(),
        });
    }
    Ok(action.weight_unchecked(m))
}

/// Degree-`d` monomials of weight `chi`, largest first.
pub fn weight_space_monomials(action: &WeightedAction, chi: &Character, d: u32) -> Vec<Monomial> {
    monomials_of_degree(action.ambient_dim(), d)
        .into_iter()
        .filter(|m| &action.weight_unchecked(m) == chi)
        .collect()
}

/// An echelonized basis of one graded piece, labelled by weight and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis {
    pub weight: Character,
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}
