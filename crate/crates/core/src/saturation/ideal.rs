use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exact_algebra::{monomials_of_degree, Polynomial, ReducedBasis};
use crate::grading_lattice::{weight_space_monomials, Character, WeightedAction};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum SliceKey {
    Full(u32),
    Weight(u32, Character),
}

/// A homogeneous ideal given by generators, with memoized degree slices.
///
/// The degree-`d` slice is the echelon span of `g * m` over generators `g`
/// and monomials `m` of degree `d - deg g`. When a grading is attached, the
/// generators are weight-homogeneous and slices can be restricted to a
/// single weight.
#[derive(Debug)]
pub struct TruncatedIdeal {
    nvars: usize,
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
    grading: Option<WeightedAction>,
    weights: Vec<Character>,
    cache: Mutex<HashMap<SliceKey, Arc<ReducedBasis>>>,
}

impl Clone for TruncatedIdeal {
    fn clone(&self) -> Self {
        TruncatedIdeal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            degrees: self.degrees.clone(),
            grading: self.grading.clone(),
            weights: self.weights.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl TruncatedIdeal {
    pub fn zero(nvars: usize) -> Self {
        TruncatedIdeal {
            nvars,
            generators: Vec::new(),
            degrees: Vec::new(),
            grading: None,
            weights: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Ideal with total-degree homogeneous generators; zero generators are dropped.
    pub fn new(generators: Vec<Polynomial>, nvars: usize) -> Result<Self> {
        let mut gens = Vec::new();
        let mut degrees = Vec::new();
        for (index, g) in generators.into_iter().enumerate() {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: g.nvars(),
                    right: nvars,
                });
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousGenerator {
                    index,
                    reason: format!("{g} mixes total degrees"),
                });
            }
            degrees.push(g.degree().unwrap());
            gens.push(g);
        }
        Ok(TruncatedIdeal {
            nvars,
            generators: gens,
            degrees,
            grading: None,
            weights: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Ideal graded by `action`; every generator must be weight-homogeneous.
    pub fn graded(generators: Vec<Polynomial>, action: &WeightedAction) -> Result<Self> {
        Self::new(generators, action.ambient_dim())?.with_grading(action)
    }

    pub fn with_grading(&self, action: &WeightedAction) -> Result<Self> {
        if action.ambient_dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: action.ambient_dim(),
                right: self.nvars,
            });
        }
        let mut weights = Vec::new();
        for (index, g) in self.generators.iter().enumerate() {
            match action.weight_of_polynomial(g) {
                Some(w) => weights.push(w),
                None => {
                    return Err(Error::InhomogeneousGenerator {
                        index,
                        reason: format!("{g} is not weight-homogeneous"),
                    })
                }
            }
        }
        Ok(TruncatedIdeal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            degrees: self.degrees.clone(),
            grading: Some(action.clone()),
            weights,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn grading(&self) -> Option<&WeightedAction> {
        self.grading.as_ref()
    }

    fn cached(&self, key: SliceKey, build: impl FnOnce() -> ReducedBasis) -> Arc<ReducedBasis> {
        if let Some(b) = self.cache.lock().unwrap().get(&key) {
            return b.clone();
        }
        // Built outside the lock; concurrent builders produce identical bases.
        let built = Arc::new(build());
        self.cache.lock().unwrap().entry(key).or_insert(built).clone()
    }

    /// The full degree-`d` slice.
    pub fn slice(&self, d: u32) -> Arc<ReducedBasis> {
        self.cached(SliceKey::Full(d), || {
            let mut b = ReducedBasis::new(self.nvars);
            for (g, &dg) in self.generators.iter().zip(&self.degrees) {
                if dg > d {
                    continue;
                }
                for m in monomials_of_degree(self.nvars, d - dg) {
                    b.insert(&g.mul_monomial(&m));
                }
            }
            b
        })
    }

    /// The slice of weight `chi` and degree `d`.
    pub fn weight_slice(&self, chi: &Character, d: u32) -> Result<Arc<ReducedBasis>> {
        let action = self.grading.as_ref().ok_or(Error::UngradedIdeal)?;
        action.check_character(chi)?;
        Ok(self.cached(SliceKey::Weight(d, chi.clone()), || {
            let mut b = ReducedBasis::new(self.nvars);
            self.extend_weight_slice(&mut b, action, &self.generators, &self.weights, &self.degrees, chi, d);
            b
        }))
    }

    /// Slice of `(extra) + I` at weight `chi` and degree `d`. Extra generators
    /// must be homogeneous in both gradings.
    pub fn weight_slice_with(
        &self,
        extra: &[Polynomial],
        chi: &Character,
        d: u32,
    ) -> Result<ReducedBasis> {
        let action = self.grading.as_ref().ok_or(Error::UngradedIdeal)?;
        let mut b = (*self.weight_slice(chi, d)?).clone();
        let mut weights = Vec::new();
        let mut degrees = Vec::new();
        for (index, g) in extra.iter().enumerate() {
            let w = action.weight_of_polynomial(g).ok_or_else(|| Error::InhomogeneousGenerator {
                index,
                reason: "extra generator is not weight-homogeneous".into(),
            })?;
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousGenerator {
                    index,
                    reason: "extra generator mixes total degrees".into(),
                });
            }
            weights.push(w);
            degrees.push(g.degree().unwrap());
        }
        self.extend_weight_slice(&mut b, action, extra, &weights, &degrees, chi, d);
        Ok(b)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_weight_slice(
        &self,
        b: &mut ReducedBasis,
        action: &WeightedAction,
        gens: &[Polynomial],
        weights: &[Character],
        degrees: &[u32],
        chi: &Character,
        d: u32,
    ) {
        for ((g, w), &dg) in gens.iter().zip(weights).zip(degrees) {
            if dg > d {
                continue;
            }
            let need = chi - w;
            for m in weight_space_monomials(action, &need, d - dg) {
                b.insert(&g.mul_monomial(&m));
            }
        }
    }

    /// `dim (k[x]/I)_d` for `d = 0..=max_degree`.
    pub fn hilbert_function(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree)
            .map(|d| monomials_of_degree(self.nvars, d).len() - self.slice(d).dim())
            .collect()
    }

    /// The ideal of `V ∩ {x_j = 0 : j ∉ support}` in the variables of `support`.
    pub fn restrict_to(&self, support: &[usize]) -> TruncatedIdeal {
        let gens = self.generators.iter().map(|g| g.restrict_to(support)).collect();
        TruncatedIdeal::new(gens, support.len()).expect("restriction of homogeneous generators")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_ideal() -> TruncatedIdeal {
        let v = |i| Polynomial::var(4, i);
        let g = v(0).mul(&v(3)).sub(&v(1).mul(&v(2)));
        let act = WeightedAction::new(vec![vec![1, 1, -1, -1]], 4).unwrap();
        TruncatedIdeal::graded(vec![g], &act).unwrap()
    }

    #[test]
    fn slices_of_determinantal_hypersurface() {
        let i = det_ideal();
        assert_eq!(i.slice(2).dim(), 1);
        assert_eq!(i.slice(3).dim(), 4);
        assert_eq!(i.weight_slice(&Character(vec![0]), 4).unwrap().dim(), 4);
        // (d+1)^2 for the quadric cone
        assert_eq!(i.hilbert_function(4), vec![1, 4, 9, 16, 25]);
    }

    #[test]
    fn slices_are_nested_under_variable_multiplication() {
        let i = det_ideal();
        let s2 = i.slice(2);
        let s3 = i.slice(3);
        for p in s2.basis() {
            for k in 0..4 {
                assert!(s3.contains(&p.mul(&Polynomial::var(4, k))));
            }
        }
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let g = Polynomial::var(2, 0).add(&Polynomial::var(2, 1).pow(2));
        assert!(matches!(
            TruncatedIdeal::new(vec![g], 2),
            Err(Error::InhomogeneousGenerator { index: 0, .. })
        ));
        let act = WeightedAction::new(vec![vec![1, 0]], 2).unwrap();
        let h = Polynomial::var(2, 0).add(&Polynomial::var(2, 1));
        assert!(TruncatedIdeal::graded(vec![h], &act).is_err());
    }
}
