//! The Cox ring of the Hilbert scheme of n points in the plane, as the
//! Z-graded ring ⊕_m A^m built from S_n-isotypic pieces of k[x1..xn, y1..yn].
//!
//! A⁰ is the invariant ring, A¹ the sign-semi-invariants, A^m the span of
//! m-fold products of A¹ for m ≥ 1, and for m < 0 the piece is A⁰ or A¹ by
//! parity.

mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_algebra::{int, monomials_of_degree, Monomial, Polynomial, ReducedBasis};
use crate::grading_lattice::{Character, GradedBasis};

pub use verify::{verify_ginzburg, DegreeCheck, GinzburgReport, MismatchDump};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rep {
    Trivial,
    Sign,
}

/// Homogeneous piece of bidegree (x-degree, y-degree) in one isotypic component.
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedPiece {
    pub n: usize,
    pub bidegree: (u32, u32),
    pub rep: Rep,
    pub basis: Vec<Polynomial>,
}

impl BigradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Variable names x1..xn, y1..yn.
pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect()
}

/// The simultaneous permutation `x_i -> x_σ(i)`, `y_i -> y_σ(i)`.
pub fn permute(n: usize, sigma: &[usize], p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(2 * n);
    for (m, c) in p.terms() {
        let e = m.exponents();
        let mut img = vec![0u32; 2 * n];
        for i in 0..n {
            img[sigma[i]] = e[i];
            img[n + sigma[i]] = e[n + i];
        }
        out.add_term(Monomial::new(img), c.clone());
    }
    out
}

/// Sign of a permutation given in one-line notation.
pub fn sign(sigma: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn bidegree_monomials(n: usize, (a, b): (u32, u32)) -> Vec<Monomial> {
    let xs = monomials_of_degree(n, a);
    let ys = monomials_of_degree(n, b);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let mut e = x.exponents().to_vec();
            e.extend_from_slice(y.exponents());
            out.push(Monomial::new(e));
        }
    }
    out
}

fn project(n: usize, m: &Monomial, rep: Rep, perms: &[(Vec<usize>, i64)]) -> Polynomial {
    let p = Polynomial::monomial(m.clone(), int(1));
    let mut acc = Polynomial::zero(2 * n);
    for (sigma, s) in perms {
        let coeff = match rep {
            Rep::Trivial => int(1),
            Rep::Sign => int(*s),
        };
        acc = acc.add(&permute(n, sigma, &p).scale(&coeff));
    }
    let order: i64 = (1..=n as i64).product();
    acc.scale(&crate::exact_algebra::Rational::new(1.into(), order.into()))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    (0..n)
        .permutations(n)
        .map(|s| {
            let sg = sign(&s);
            (s, sg)
        })
        .collect()
}

/// Memoized isotypic pieces and product spaces for a fixed n.
#[derive(Debug)]
pub struct HilbRing {
    n: usize,
    perms: Vec<(Vec<usize>, i64)>,
    isotypic: Mutex<HashMap<((u32, u32), Rep), Arc<ReducedBasis>>>,
    products: Mutex<HashMap<(u32, (u32, u32)), Arc<ReducedBasis>>>,
}

impl HilbRing {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "at least one point");
        HilbRing {
            n,
            perms: permutations(n),
            isotypic: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn isotypic_span(&self, bidegree: (u32, u32), rep: Rep) -> Arc<ReducedBasis> {
        if let Some(b) = self.isotypic.lock().unwrap().get(&(bidegree, rep)) {
            return b.clone();
        }
        let mut b = ReducedBasis::new(2 * self.n);
        for m in bidegree_monomials(self.n, bidegree) {
            b.insert(&project(self.n, &m, rep, &self.perms));
        }
        let b = Arc::new(b);
        self.isotypic.lock().unwrap().entry((bidegree, rep)).or_insert(b).clone()
    }

    /// Symmetrize (trivial) or antisymmetrize (sign) every monomial of the
    /// bidegree and echelonize.
    pub fn isotypic_basis(&self, bidegree: (u32, u32), rep: Rep) -> BigradedPiece {
        BigradedPiece {
            n: self.n,
            bidegree,
            rep,
            basis: self.isotypic_span(bidegree, rep).basis(),
        }
    }

    fn product_span(&self, m: u32, bidegree: (u32, u32)) -> Arc<ReducedBasis> {
        match m {
            0 => return self.isotypic_span(bidegree, Rep::Trivial),
            1 => return self.isotypic_span(bidegree, Rep::Sign),
            _ => {}
        }
        if let Some(b) = self.products.lock().unwrap().get(&(m, bidegree)) {
            return b.clone();
        }
        // A^m = A^{m-1} · A^1, summed over splittings of the bidegree.
        let (a, b) = bidegree;
        let mut span = ReducedBasis::new(2 * self.n);
        for a1 in 0..=a {
            for b1 in 0..=b {
                let ones = self.isotypic_span((a1, b1), Rep::Sign);
                if ones.dim() == 0 {
                    continue;
                }
                let rest = self.product_span(m - 1, (a - a1, b - b1));
                for p in rest.basis() {
                    for q in ones.basis() {
                        span.insert(&p.mul(&q));
                    }
                }
            }
        }
        let span = Arc::new(span);
        self.products.lock().unwrap().entry((m, bidegree)).or_insert(span).clone()
    }

    /// A^m in one bidegree; weight label (a, b), degree a + b.
    pub fn product_space(&self, m: u32, bidegree: (u32, u32)) -> GradedBasis {
        GradedBasis {
            weight: Character(vec![bidegree.0 as i64, bidegree.1 as i64]),
            degree: bidegree.0 + bidegree.1,
            basis: self.product_span(m, bidegree).basis(),
        }
    }

    pub(crate) fn product_reduced(&self, m: u32, bidegree: (u32, u32)) -> Arc<ReducedBasis> {
        self.product_span(m, bidegree)
    }

    /// The piece of twist m: A^m for m ≥ 0, else A⁰ or A¹ by parity.
    pub fn cox_piece(&self, m: i64, bidegree: (u32, u32)) -> Arc<ReducedBasis> {
        if m >= 0 {
            self.product_span(m as u32, bidegree)
        } else {
            self.product_span(m.rem_euclid(2) as u32, bidegree)
        }
    }

    pub fn cox_hilb_dim(&self, m: i64, bidegree: (u32, u32)) -> usize {
        self.cox_piece(m, bidegree).dim()
    }
}

pub fn isotypic_basis(n: usize, bidegree: (u32, u32), rep: Rep) -> BigradedPiece {
    HilbRing::new(n).isotypic_basis(bidegree, rep)
}

pub fn product_space(n: usize, m: u32, bidegree: (u32, u32)) -> GradedBasis {
    HilbRing::new(n).product_space(m, bidegree)
}

pub fn cox_hilb_dim(n: usize, m: i64, bidegree: (u32, u32)) -> usize {
    HilbRing::new(n).cox_hilb_dim(m, bidegree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbEntry {
    pub m: i64,
    pub a: u32,
    pub b: u32,
    pub dim: usize,
}

/// Dimensions of the twist-m pieces over a bidegree box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxHilbTable {
    pub n: usize,
    pub m_range: (i64, i64),
    pub bidegree_box: (u32, u32),
    /// The zeroth power of A¹ is read as A⁰.
    pub convention: String,
    /// Sorted by m, then a, then b.
    pub entries: Vec<HilbEntry>,
}

impl CoxHilbTable {
    pub fn dim(&self, m: i64, (a, b): (u32, u32)) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.m == m && e.a == a && e.b == b)
            .map(|e| e.dim)
    }
}

pub fn cox_hilb_table(n: usize, m_range: (i64, i64), bidegree_box: (u32, u32)) -> CoxHilbTable {
    let ring = HilbRing::new(n);
    let cells: Vec<(i64, u32, u32)> = (m_range.0..=m_range.1)
        .flat_map(|m| {
            (0..=bidegree_box.0).flat_map(move |a| (0..=bidegree_box.1).map(move |b| (m, a, b)))
        })
        .collect();
    let entries = cells
        .par_iter()
        .map(|&(m, a, b)| HilbEntry {
            m,
            a,
            b,
            dim: ring.cox_hilb_dim(m, (a, b)),
        })
        .collect();
    CoxHilbTable {
        n,
        m_range,
        bidegree_box,
        convention: "(A^1)^0 = A^0".into(),
        entries,
    }
}

fn render_term(coeff: usize, a: u32, b: u32) -> String {
    let mut factors = Vec::new();
    match a {
        0 => {}
        1 => factors.push("q".to_string()),
        _ => factors.push(format!("q^{a}")),
    }
    match b {
        0 => {}
        1 => factors.push("s".to_string()),
        _ => factors.push(format!("s^{b}")),
    }
    match (coeff, factors.is_empty()) {
        (c, true) => c.to_string(),
        (1, false) => factors.join("*"),
        (c, false) => format!("{c}*{}", factors.join("*")),
    }
}

/// Truncated Hilbert series Σ dim · q^a s^b of each twist in the table,
/// terms ordered by total degree, then by descending q-degree.
pub fn hilb_series(table: &CoxHilbTable) -> Vec<(i64, String)> {
    (table.m_range.0..=table.m_range.1)
        .map(|m| {
            let mut terms: Vec<&HilbEntry> =
                table.entries.iter().filter(|e| e.m == m && e.dim > 0).collect();
            terms.sort_by_key(|e| (e.a + e.b, std::cmp::Reverse(e.a)));
            let s = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.iter().map(|e| render_term(e.dim, e.a, e.b)).join(" + ")
            };
            (m, s)
        })
        .collect()
}
