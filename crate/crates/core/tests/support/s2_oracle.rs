//! Brute-force S2 oracle for the twisted pieces A^m on (C^2)^2.
//!
//! Works in k[x1, x2, y1, y2] with the swap (x1, y1) <-> (x2, y2), over the
//! prime field F_p with p = 2^31 - 1. A^0 is counted by orbits of monomials,
//! A^1 is spanned by antisymmetrized monomials, and A^m for m >= 2 is the span
//! of all m-fold products of those alternants, row-reduced mod p.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

const P: i64 = 2_147_483_647;

type Exp = [u32; 4];
type Poly = BTreeMap<Exp, i64>;

fn swap(e: &Exp) -> Exp {
    [e[1], e[0], e[3], e[2]]
}

fn monomials(a: u32, b: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            out.push([i, a - i, j, b - j]);
        }
    }
    out
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (f, d) in q {
            let k = [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]];
            let v = out.entry(k).or_insert(0);
            *v = (*v + c * d).rem_euclid(P);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn inverse(a: i64) -> i64 {
    let (mut base, mut exp, mut acc) = (a.rem_euclid(P), P - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Row basis of the span, in reduced echelon form keyed by leading exponent.
fn basis(polys: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut rows: BTreeMap<Exp, Poly> = BTreeMap::new();
    for mut p in polys {
        loop {
            let lead = rows.keys().find(|k| p.contains_key(*k)).copied();
            match lead {
                Some(k) => {
                    let c = p[&k];
                    for (e, d) in &rows[&k] {
                        let v = p.entry(*e).or_insert(0);
                        *v = (*v - c * d).rem_euclid(P);
                    }
                    p.retain(|_, c| *c != 0);
                }
                None => break,
            }
        }
        let Some((&k, &c)) = p.iter().next() else { continue };
        let inv = inverse(c);
        for v in p.values_mut() {
            *v = *v * inv % P;
        }
        for row in rows.values_mut() {
            if let Some(&r) = row.get(&k) {
                for (e, d) in &p {
                    let v = row.entry(*e).or_insert(0);
                    *v = (*v - r * d).rem_euclid(P);
                }
                row.retain(|_, c| *c != 0);
            }
        }
        rows.insert(k, p);
    }
    rows.into_values().collect()
}

pub struct Oracle {
    /// Bases of A^m by (m, a, b) for m >= 1.
    pieces: BTreeMap<(u32, u32, u32), Vec<Poly>>,
}

impl Oracle {
    pub fn new(max_m: u32, max_a: u32, max_b: u32) -> Self {
        let mut pieces = BTreeMap::new();
        for a in 0..=max_a {
            for b in 0..=max_b {
                let alternants = monomials(a, b).into_iter().filter_map(|e| {
                    let s = swap(&e);
                    (s != e).then(|| Poly::from([(e, 1), (s, P - 1)]))
                });
                pieces.insert((1, a, b), basis(alternants));
            }
        }
        for m in 2..=max_m {
            for a in 0..=max_a {
                for b in 0..=max_b {
                    let mut products = Vec::new();
                    for a1 in 0..=a {
                        for b1 in 0..=b {
                            for p in &pieces[&(m - 1, a - a1, b - b1)] {
                                for q in &pieces[&(1, a1, b1)] {
                                    products.push(mul(p, q));
                                }
                            }
                        }
                    }
                    pieces.insert((m, a, b), basis(products));
                }
            }
        }
        Oracle { pieces }
    }

    /// Number of S2-orbits of monomials: the dimension of the invariants.
    pub fn invariants(a: u32, b: u32) -> usize {
        monomials(a, b)
            .into_iter()
            .map(|e| std::cmp::min(e, swap(&e)))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// dim A^m in bidegree (a, b); negative m reads A^0 or A^1 by parity.
    pub fn dim(&self, m: i64, a: u32, b: u32) -> usize {
        let m = if m < 0 { m.rem_euclid(2) } else { m };
        match m {
            0 => Self::invariants(a, b),
            _ => self.pieces[&(m as u32, a, b)].len(),
        }
    }
}

/// Closed form in the coordinates x1 ± x2, y1 ± y2, where the swap only
/// negates the differences: count exponents (i, j) of the differences with
/// i + j >= m and i + j ≡ m (mod 2).
pub fn closed_form(m: i64, a: u32, b: u32) -> usize {
    let m = if m < 0 { m.rem_euclid(2) } else { m };
    let mut count = 0;
    for i in 0..=a as i64 {
        for j in 0..=b as i64 {
            if i + j >= m && (i + j - m) % 2 == 0 {
                count += 1;
            }
        }
    }
    count
}
