//! Exact feasibility tests for polyhedral cones (Phase I simplex, Bland's rule).

use num_traits::{Signed, Zero};

use crate::exact_algebra::{int, Rational};

/// Finds `y >= 0` with `A y = b`, or `None` if no such `y` exists.
pub(crate) fn nonneg_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = int(1);
        row[rhs] = b[i].abs();
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut z = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            z[j] -= &row[j];
        }
        z[rhs] -= &row[rhs];
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase I is bounded below by zero, so an entering column always has a
        // positive entry.
        let (p, _) = leave?;
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, y) in z.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    if !z[rhs].is_zero() {
        return None;
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            y[bv] = t[i][rhs].clone();
        }
    }
    Some(y)
}

/// Whether `target` lies in the rational cone generated by `generators`.
pub fn cone_contains(generators: &[Vec<i64>], target: &[Rational]) -> bool {
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    if generators.is_empty() {
        return false;
    }
    let r = target.len();
    let a: Vec<Vec<Rational>> = (0..r)
        .map(|k| generators.iter().map(|g| int(g[k])).collect())
        .collect();
    nonneg_solution(&a, target).is_some()
}

/// A point `x` with `n . x >= 1` for every normal, or `None` when the open
/// cone `{n . x > 0}` is empty.
pub fn open_cone_point(normals: &[Vec<i64>], dim: usize) -> Option<Vec<Rational>> {
    if normals.is_empty() {
        return Some(vec![Rational::zero(); dim]);
    }
    let cols = 2 * dim + normals.len();
    let a: Vec<Vec<Rational>> = normals
        .iter()
        .enumerate()
        .map(|(i, nv)| {
            let mut row = vec![Rational::zero(); cols];
            for k in 0..dim {
                row[k] = int(nv[k]);
                row[dim + k] = int(-nv[k]);
            }
            row[2 * dim + i] = int(-1);
            row
        })
        .collect();
    let b = vec![int(1); normals.len()];
    let y = nonneg_solution(&a, &b)?;
    Some((0..dim).map(|k| &y[k] - &y[dim + k]).collect())
}

pub(crate) fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_ray() {
        assert!(cone_contains(&[vec![1]], &to_rational(&[2])));
        assert!(!cone_contains(&[vec![-1], vec![-1]], &to_rational(&[1])));
        assert!(cone_contains(&[], &to_rational(&[0])));
        assert!(!cone_contains(&[], &to_rational(&[1])));
    }

    #[test]
    fn plane_cones() {
        let gens = vec![vec![1, 0], vec![1, 2]];
        assert!(cone_contains(&gens, &to_rational(&[2, 1])));
        assert!(!cone_contains(&gens, &to_rational(&[0, 1])));
        assert!(cone_contains(&gens, &to_rational(&[1, 2])));
    }

    #[test]
    fn open_quadrant() {
        let p = open_cone_point(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert!(p.iter().all(|x| x >= &int(1)));
        assert!(open_cone_point(&[vec![1, 0], vec![-1, 0]], 2).is_none());
    }
}
