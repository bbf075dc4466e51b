use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;

use super::cone::{cone_contains, open_cone_point, to_rational};
use super::{indices_of, minimal_semistable_masks, Mask};
use crate::error::{Error, Result};
use crate::exact_algebra::Rational;
use crate::grading_lattice::{integer_kernel, lattice_rank, primitive, Character, WeightedAction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// Normals `n` with `n . θ > 0` on the chamber interior.
    pub inequalities: Vec<Vec<i64>>,
    /// Extreme rays of the chamber closure.
    pub rays: Vec<Vec<i64>>,
    pub interior_point: Character,
    /// Minimal semistable supports, constant across the chamber.
    pub minimal_semistable: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberFan {
    pub rank: usize,
    pub effective_cone: Vec<Vec<i64>>,
    pub effective_full_dimensional: bool,
    /// Primitive normals of hyperplanes spanned by weight columns.
    pub walls: Vec<Vec<i64>>,
    pub chambers: Vec<Chamber>,
    /// Rank zero or all weights zero: the only character is 0.
    pub degenerate: bool,
}

impl ChamberFan {
    /// The chamber whose interior contains θ, if θ is generic.
    pub fn locate(&self, theta: &Character) -> Option<&Chamber> {
        self.chambers.iter().find(|c| {
            c.inequalities
                .iter()
                .all(|n| n.iter().zip(theta.coords()).map(|(a, b)| a * b).sum::<i64>() > 0)
        })
    }
}

fn sign_normalized(v: Vec<i64>) -> Vec<i64> {
    let v = primitive(&v);
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v,
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn scale_to_integer(p: &[Rational]) -> Vec<i64> {
    let l = p.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = p
        .iter()
        .map(|x| {
            let v = x * Rational::from_integer(l.clone());
            i64::try_from(v.to_integer()).expect("sample point overflows i64")
        })
        .collect();
    primitive(&ints)
}

fn extreme_rays(inequalities: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut rays = BTreeSet::new();
    for combo in inequalities.iter().combinations(r - 1) {
        let rows: Vec<Vec<i64>> = combo.into_iter().cloned().collect();
        let ker = integer_kernel(&rows, r);
        if ker.len() != 1 {
            continue;
        }
        let k = primitive(&ker[0]);
        for cand in [k.clone(), k.iter().map(|x| -x).collect::<Vec<_>>()] {
            if inequalities.iter().all(|n| dot(n, &cand) >= 0) {
                rays.insert(cand);
            }
        }
    }
    rays.into_iter().collect()
}

fn effective_generators(columns: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut gens: Vec<Vec<i64>> = columns
        .iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| primitive(c))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<Vec<i64>> =
            gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        if cone_contains(&others, &to_rational(&gens[i])) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Wall-and-chamber decomposition of the effective cone.
///
/// Cells of the arrangement of all hyperplanes spanned by weight columns are
/// enumerated exactly; cells inside the effective cone with the same set of
/// semistable supports are merged into one chamber. Chambers are sorted by
/// their interior points, each the primitive sum of the chamber's rays.
pub fn git_chambers(action: &WeightedAction) -> Result<ChamberFan> {
    let r = action.rank();
    let n = action.ambient_dim();
    if n > super::MAX_ENUMERATED_VARS {
        return Err(Error::TooLarge("too many coordinates for chamber enumeration".into()));
    }
    let columns = action.columns();
    let effective_cone = effective_generators(&columns);
    if r == 0 || effective_cone.is_empty() {
        return Ok(ChamberFan {
            rank: r,
            effective_cone,
            effective_full_dimensional: r == 0,
            walls: Vec::new(),
            chambers: vec![Chamber {
                inequalities: Vec::new(),
                rays: Vec::new(),
                interior_point: Character::zero(r),
                minimal_semistable: vec![Vec::new()],
            }],
            degenerate: true,
        });
    }
    if lattice_rank(&columns) < r {
        // The effective cone has empty interior: every character is on a wall.
        return Ok(ChamberFan {
            rank: r,
            effective_cone,
            effective_full_dimensional: false,
            walls: Vec::new(),
            chambers: Vec::new(),
            degenerate: false,
        });
    }

    let mut walls = BTreeSet::new();
    for combo in (0..n).combinations(r - 1) {
        let rows: Vec<Vec<i64>> = combo.iter().map(|&i| columns[i].clone()).collect();
        if lattice_rank(&rows) != r - 1 {
            continue;
        }
        let ker = integer_kernel(&rows, r);
        if ker.len() == 1 {
            walls.insert(sign_normalized(ker[0].clone()));
        }
    }
    let walls: Vec<Vec<i64>> = walls.into_iter().collect();

    // Sign vectors of nonempty open cells.
    let mut cells: Vec<Vec<i8>> = vec![Vec::new()];
    for (wi, w) in walls.iter().enumerate() {
        let mut next = Vec::new();
        for cell in &cells {
            for s in [1i8, -1] {
                let mut normals: Vec<Vec<i64>> = cell
                    .iter()
                    .zip(&walls[..wi])
                    .map(|(&c, v)| v.iter().map(|x| x * c as i64).collect())
                    .collect();
                normals.push(w.iter().map(|x| x * s as i64).collect());
                if open_cone_point(&normals, r).is_some() {
                    let mut c = cell.clone();
                    c.push(s);
                    next.push(c);
                }
            }
        }
        cells = next;
    }

    let mut groups: BTreeMap<Vec<Mask>, Vec<(Vec<i8>, Vec<Rational>)>> = BTreeMap::new();
    for cell in cells {
        let normals: Vec<Vec<i64>> = cell
            .iter()
            .zip(&walls)
            .map(|(&c, v)| v.iter().map(|x| x * c as i64).collect())
            .collect();
        let point = open_cone_point(&normals, r).expect("cell was feasible");
        if !cone_contains(&columns, &point) {
            continue;
        }
        let mut sig = minimal_semistable_masks(action, &point);
        sig.sort_unstable();
        groups.entry(sig).or_default().push((cell, point));
    }

    let mut chambers: Vec<Chamber> = groups
        .into_iter()
        .map(|(sig, members)| {
            let inequalities: Vec<Vec<i64>> = walls
                .iter()
                .enumerate()
                .filter_map(|(wi, w)| {
                    let s = members[0].0[wi];
                    members
                        .iter()
                        .all(|(c, _)| c[wi] == s)
                        .then(|| w.iter().map(|x| x * s as i64).collect())
                })
                .collect();
            let rays = extreme_rays(&inequalities, r);
            let mut sum = vec![0i64; r];
            for ray in &rays {
                for (a, b) in sum.iter_mut().zip(ray) {
                    *a += b;
                }
            }
            let mut interior = primitive(&sum);
            if rays.is_empty() || !inequalities.iter().all(|nv| dot(nv, &interior) > 0) {
                interior = scale_to_integer(&members[0].1);
            }
            // Same order as `minimal_semistable_supports`: by size, then lexicographic.
            let mut minimal_semistable: Vec<Vec<usize>> = sig.iter().map(|&m| indices_of(m, n)).collect();
            minimal_semistable.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            Chamber {
                inequalities,
                rays,
                interior_point: Character(interior),
                minimal_semistable,
            }
        })
        .collect();
    chambers.sort_by(|a, b| a.interior_point.cmp(&b.interior_point));

    Ok(ChamberFan {
        rank: r,
        effective_cone,
        effective_full_dimensional: true,
        walls,
        chambers,
        degenerate: false,
    })
}
