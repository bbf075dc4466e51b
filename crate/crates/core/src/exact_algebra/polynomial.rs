use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// No stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must equal ambient dimension");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map(nvars: usize, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitutes `images[i]` for the i-th variable. All images share `target_nvars`.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let mut power_cache: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target_nvars), p.clone()]).collect();
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize]);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Drops every term involving a variable outside `support`, re-indexing the
    /// remaining variables in the order given.
    pub fn restrict_to(&self, support: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(support.len());
        'terms: for (m, c) in &self.terms {
            let e = m.exponents();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 && !support.contains(&i) {
                    continue 'terms;
                }
            }
            let exps = support.iter().map(|&i| e[i]).collect();
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Multiplies through by a common denominator and divides by the content so
    /// that coefficients are coprime integers with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&n);
        }
        let mut factor = Rational::new(lcm, gcd);
        if self.leading().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Renders with named variables, largest term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&m.render(names));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        a.cmp(b)
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Self::default_names(self.nvars)))
    }
}

/// Which operation `poly_arith` performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Mul => p.try_mul(q),
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
    fn difference_of_squares() {
        let (x1, x2) = (v(2, 0), v(2, 1));
        let p = poly_arith(&x1.add(&x2), &x1.sub(&x2), ArithOp::Mul).unwrap();
        assert_eq!(p, x1.pow(2).sub(&x2.pow(2)));
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn multiplying_by_zero() {
        let p = v(3, 0).add(&v(3, 2));
        let z = poly_arith(&p, &Polynomial::zero(3), ArithOp::Mul).unwrap();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn determinant_times_permanent() {
        let (a, b, c, d) = (v(4, 0), v(4, 1), v(4, 2), v(4, 3));
        let det = a.mul(&d).sub(&b.mul(&c));
        let per = a.mul(&d).add(&b.mul(&c));
        let prod = det.mul(&per);
        // a^2 d^2 - b^2 c^2, expanded independently term by term
        let expected = Polynomial::from_terms(
            4,
            vec![
                (Monomial::new(vec![2, 0, 0, 2]), int(1)),
                (Monomial::new(vec![0, 2, 2, 0]), int(-1)),
            ],
        );
        assert_eq!(prod, expected);
        assert_eq!(prod.degree(), Some(4));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = poly_arith(&v(2, 0), &v(3, 0), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = v(2, 0).sub(&v(2, 0));
        assert!(p.is_zero());
    }

    #[test]
    fn substitute_and_restrict() {
        let (a, b) = (v(2, 0), v(2, 1));
        let p = a.mul(&b).add(&a.pow(2));
        let images = vec![Polynomial::one(1), Polynomial::var(1, 0)];
        // a -> 1, b -> t : t + 1
        assert_eq!(p.substitute(&images, 1).to_string(), "x1 + 1");
        assert_eq!(p.restrict_to(&[0]).to_string(), "x1^2");
    }

    #[test]
    fn primitive_clears_denominators() {
        let p = v(2, 0).scale(&Rational::new(2.into(), 3.into())).sub(&v(2, 1).scale(&int(4)));
        assert_eq!(p.primitive().to_string(), "x1 - 6*x2");
    }
}
