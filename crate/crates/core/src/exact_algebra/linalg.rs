//! Sparse exact linear algebra: reduced row echelon bases and kernels.
//!
//! Vectors are maps from an ordered key type to nonzero rationals. The pivot
//! of a row is its largest key, so for polynomials the pivot is the leading
//! monomial in graded lexicographic order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, factor: &Rational, row: &SparseVec<K>) {
    for (k, c) in row {
        let delta = factor * c;
        match target.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// A basis in reduced row echelon form.
///
/// Every row has leading coefficient one and no row has a nonzero entry at
/// another row's pivot. The basis of a given span is therefore unique.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Rows in descending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values().rev()
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(K, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut out = v.clone();
        for (k, c) in hits {
            axpy(&mut out, &-c, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns false when it was already dependent.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, mut r: SparseVec<K>) -> bool {
        let (lead, lc) = match r.iter().next_back() {
            None => return false,
            Some((k, c)) => (k.clone(), c.clone()),
        };
        if !lc.is_one() {
            let inv = lc.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&lead).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }
}

/// Basis of the kernel of the linear map sending the j-th standard basis
/// vector to `columns[j]`. Kernel vectors are returned in reduced echelon
/// form over the column indices.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    // Row echelon (not reduced) with each row remembering which combination of
    // input columns produced it.
    let mut pivots: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)> = BTreeMap::new();
    let mut kernel = Echelon::<usize>::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb: SparseVec<usize> = BTreeMap::new();
        comb.insert(j, Rational::one());
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(k, _)| pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            let (row, rcomb) = &pivots[&k];
            let factor = -c / row[&k].clone();
            axpy(&mut v, &factor, row);
            axpy(&mut comb, &factor, rcomb);
        }
        match v.iter().next_back() {
            None => {
                kernel.insert(&comb);
            }
            Some((k, _)) => {
                let k = k.clone();
                pivots.insert(k, (v, comb));
            }
        }
    }
    kernel.rows().cloned().collect()
}

/// Outcome of a span-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember { residual: Polynomial },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Reduced echelon basis of a span of polynomials.
#[derive(Clone, Debug)]
pub struct ReducedBasis {
    nvars: usize,
    echelon: Echelon<Monomial>,
}

impl ReducedBasis {
    pub fn new(nvars: usize) -> Self {
        ReducedBasis {
            nvars,
            echelon: Echelon::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &Echelon<Monomial> {
        &self.echelon
    }

    pub fn insert(&mut self, p: &Polynomial) -> bool {
        assert_eq!(p.nvars(), self.nvars, "ambient dimension mismatch");
        self.echelon.insert(p.terms())
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        Polynomial::from_map(self.nvars, self.echelon.reduce(p.terms()))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.echelon.contains(p.terms())
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.echelon.is_pivot(m)
    }

    /// Basis polynomials, largest leading monomial first.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.echelon
            .rows()
            .map(|r| Polynomial::from_map(self.nvars, r.clone()))
            .collect()
    }
}

impl PartialEq for ReducedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.echelon.rows == other.echelon.rows
    }
}

/// Reduced row echelon basis of the rational span of `polys`.
pub fn echelon_span(nvars: usize, polys: &[Polynomial]) -> ReducedBasis {
    let mut b = ReducedBasis::new(nvars);
    for p in polys {
        b.insert(p);
    }
    b
}

pub fn membership(p: &Polynomial, basis: &ReducedBasis) -> Membership {
    let r = basis.reduce(p);
    if r.is_zero() {
        Membership::Member
    } else {
        Membership::NotMember { residual: r }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::int;

    fn v(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn empty_span() {
        assert_eq!(echelon_span(3, &[]).dim(), 0);
    }

    #[test]
    fn one_dependency() {
        let (x1, x2) = (v(2, 0), v(2, 1));
        let b = echelon_span(2, &[x1.clone(), x2.clone(), x1.add(&x2)]);
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn multiples_of_determinant_are_independent() {
        let (a, b, c, d) = (v(4, 0), v(4, 1), v(4, 2), v(4, 3));
        let det = a.mul(&d).sub(&b.mul(&c));
        let polys: Vec<_> = [&a, &b, &c, &d].iter().map(|x| det.mul(x)).collect();
        assert_eq!(echelon_span(4, &polys).dim(), 4);
    }

    #[test]
    fn membership_examples() {
        let (x1, x2) = (v(2, 0), v(2, 1));
        let b = echelon_span(2, &[x1.mul(&x2)]);
        assert!(membership(&Polynomial::zero(2), &b).is_member());
        match membership(&x1.pow(2), &b) {
            Membership::NotMember { residual } => assert_eq!(residual, x1.pow(2)),
            Membership::Member => panic!("x1^2 is not in span(x1 x2)"),
        }
    }

    #[test]
    fn kernel_of_simple_map() {
        // columns: e1 -> (1), e2 -> (1), e3 -> (2)
        let cols: Vec<SparseVec<usize>> = vec![
            [(0usize, int(1))].into_iter().collect(),
            [(0usize, int(1))].into_iter().collect(),
            [(0usize, int(2))].into_iter().collect(),
        ];
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        for vec in &k {
            let s: Rational = vec
                .iter()
                .map(|(j, c)| c * cols[*j].get(&0).cloned().unwrap_or_default())
                .sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rows_are_fully_reduced() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let b = echelon_span(3, &[x.add(&y), y.add(&z), x.add(&z)]);
        assert_eq!(b.dim(), 3);
        for p in b.basis() {
            assert_eq!(p.len(), 1);
        }
    }
}
