//! Integer lattices in Z^r via Hermite normal form.
//!
//! Column selection is left to right; within a column the pivot is the row of
//! smallest absolute entry, lowest index on ties. Pivots are made positive and
//! entries above each pivot are reduced into `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

type Row = Vec<BigInt>;

fn to_big(rows: &[Vec<i64>]) -> Vec<Row> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn to_small(rows: &[Row]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("lattice entry overflows i64")).collect())
        .collect()
}

fn sub_mul(target: &mut Row, q: &BigInt, src: &Row) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Unimodular row reduction on the first `pivot_cols` columns.
/// Returns the rows in echelon order; rows zero on the pivot columns come last.
fn echelonize(mut rows: Vec<Row>, pivot_cols: usize) -> (Vec<Row>, usize) {
    let mut top = 0;
    for col in 0..pivot_cols {
        loop {
            let pick = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()).then(i.cmp(&j)));
            let Some(p) = pick else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot = rows[top].clone();
                sub_mul(&mut rows[i], &q, &pivot);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[top][col].is_negative() {
                    for x in rows[top].iter_mut() {
                        *x = -x.clone();
                    }
                }
                let pivot = rows[top].clone();
                for i in 0..top {
                    let q = rows[i][col].div_floor(&pivot[col]);
                    if !q.is_zero() {
                        sub_mul(&mut rows[i], &q, &pivot);
                    }
                }
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    (rows, top)
}

/// Hermite normal form basis of the Z-span of `generators` (rows).
pub fn hnf(generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let r = generators[0].len();
    let (rows, top) = echelonize(to_big(generators), r);
    to_small(&rows[..top])
}

/// Basis of the integer kernel `{u in Z^k : M u = 0}` of an `r x k` matrix.
pub fn integer_kernel(matrix: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let r = matrix.len();
    // Row j of the augmented matrix is (column j of M | e_j).
    let rows: Vec<Row> = (0..ncols)
        .map(|j| {
            let mut row: Row = (0..r).map(|i| BigInt::from(matrix[i][j])).collect();
            row.extend((0..ncols).map(|l| BigInt::from((l == j) as i64)));
            row
        })
        .collect();
    let (rows, top) = echelonize(rows, r);
    let kernel: Vec<Row> = rows[top..].iter().map(|row| row[r..].to_vec()).collect();
    hnf(&to_small(&kernel))
}

/// Intersection of the Z-spans of the given generating sets, as an HNF basis.
pub fn lattice_intersection(sublattices: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let mut iter = sublattices.iter();
    let Some(first) = iter.next() else {
        return Vec::new();
    };
    let mut acc = hnf(first);
    for next in iter {
        acc = intersect_pair(&acc, &hnf(next));
    }
    acc
}

fn intersect_pair(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let r = a[0].len();
    let (ka, kb) = (a.len(), b.len());
    // M = [A^T | -B^T], kernel (u, v) gives A^T u = B^T v in the intersection.
    let matrix: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row: Vec<i64> = a.iter().map(|g| g[i]).collect();
            row.extend(b.iter().map(|g| -g[i]));
            row
        })
        .collect();
    let ker = integer_kernel(&matrix, ka + kb);
    let gens: Vec<Vec<i64>> = ker
        .iter()
        .map(|u| {
            (0..r)
                .map(|i| (0..ka).map(|j| u[j] * a[j][i]).sum())
                .collect()
        })
        .collect();
    hnf(&gens)
}

/// Whether `v` lies in the Z-span of `generators`.
pub fn lattice_contains(generators: &[Vec<i64>], v: &[i64]) -> bool {
    let base = hnf(generators);
    let mut ext = base.clone();
    ext.push(v.to_vec());
    hnf(&ext) == base
}

/// Rank over Q of a set of integer vectors.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    hnf(vectors).len()
}

/// Absolute value of the determinant of a full-rank HNF basis, i.e. the index
/// of the lattice in Z^r; `None` if not full rank.
pub fn index(basis: &[Vec<i64>], r: usize) -> Option<u64> {
    if basis.len() != r {
        return None;
    }
    // HNF is upper triangular after column reordering by pivot position.
    let mut det: u64 = 1;
    for row in basis {
        let pivot = row.iter().find(|x| **x != 0)?;
        det *= pivot.unsigned_abs();
    }
    Some(det)
}

/// Primitive integer vector in the direction of `v` (gcd of entries = 1).
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}
