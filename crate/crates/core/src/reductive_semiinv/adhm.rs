use super::{sl_weight_space, Derivation, LieAction};
use crate::error::{Error, Result};
use crate::exact_algebra::{int, Polynomial};
use crate::grading_lattice::{Character, GradedBasis, WeightedAction};
use crate::saturation::TruncatedIdeal;

/// Largest degree slice `adhm_weight_space` will enumerate.
pub const MAX_SLICE_MONOMIALS: u64 = 250_000;

/// ADHM data (X, Y, i, j) for n points with GL_n acting by
/// `(gXg⁻¹, gYg⁻¹, gi, jg⁻¹)`, cut out by `[X, Y] + ij = 0`.
///
/// Variables: X row-major, then Y row-major, then i, then j.
#[derive(Clone, Debug)]
pub struct ADHMPreset {
    pub n: usize,
    pub lie: LieAction,
    pub ideal: TruncatedIdeal,
}

impl ADHMPreset {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPreset("ADHM data needs n >= 1".into()));
        }
        let nv = 2 * n * n + 2 * n;
        let x = |p: usize, q: usize| p * n + q;
        let y = |p: usize, q: usize| n * n + p * n + q;
        let i = |p: usize| 2 * n * n + p;
        let j = |q: usize| 2 * n * n + n + q;
        let var = |k| Polynomial::var(nv, k);

        let mut cols = vec![vec![0i64; n]; nv];
        for p in 0..n {
            for q in 0..n {
                for k in [x(p, q), y(p, q)] {
                    cols[k][p] += 1;
                    cols[k][q] -= 1;
                }
            }
            cols[i(p)][p] = 1;
            cols[j(p)][p] = -1;
        }
        let torus = WeightedAction::from_columns(&cols, n)?;

        let mut gens = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let mut g = var(i(p)).mul(&var(j(q)));
                for r in 0..n {
                    g = g.add(&var(x(p, r)).mul(&var(y(r, q))));
                    g = g.sub(&var(y(p, r)).mul(&var(x(r, q))));
                }
                gens.push(g);
            }
        }
        let ideal = TruncatedIdeal::graded(gens, &torus)?;

        let mut ops = Vec::new();
        for k in 0..n.saturating_sub(1) {
            for (a, b) in [(k, k + 1), (k + 1, k)] {
                let mut op = Derivation::new(format!("E{}{}", a + 1, b + 1), nv);
                for idx in [&x as &dyn Fn(usize, usize) -> usize, &y] {
                    for q in 0..n {
                        op.add_rule(idx(a, q), &var(idx(b, q)));
                    }
                    for p in 0..n {
                        op.add_rule(idx(p, b), &var(idx(p, a)).neg());
                    }
                }
                op.add_rule(i(a), &var(i(b)));
                op.add_rule(j(b), &var(j(a)).neg());
                ops.push(op);
            }
        }
        let lie = LieAction::new(ops, torus)?;
        lie.check_ideal(&ideal)?;
        Ok(ADHMPreset { n, lie, ideal })
    }

    pub fn nvars(&self) -> usize {
        2 * self.n * self.n + 2 * self.n
    }

    pub fn variable_names(&self) -> Vec<String> {
        let n = self.n;
        let mut names = Vec::with_capacity(self.nvars());
        for m in ["X", "Y"] {
            for p in 1..=n {
                for q in 1..=n {
                    names.push(format!("{m}{p}_{q}"));
                }
            }
        }
        names.extend((1..=n).map(|p| format!("i{p}")));
        names.extend((1..=n).map(|q| format!("j{q}")));
        names
    }

    /// Torus weight of det^θ.
    pub fn det_character(&self, theta: i64) -> Character {
        Character(vec![theta; self.n])
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Degree-`d` elements of k[μ⁻¹(0)] transforming by det^θ.
pub fn adhm_weight_space(n: usize, theta: i64, d: u32) -> Result<GradedBasis> {
    if theta < 1 {
        return Err(Error::Invalid("theta must be positive".into()));
    }
    adhm_weight_space_in(&ADHMPreset::new(n)?, theta, d)
}

pub(crate) fn adhm_weight_space_in(preset: &ADHMPreset, theta: i64, d: u32) -> Result<GradedBasis> {
    let nv = preset.nvars() as u64;
    if binomial(nv + d as u64 - 1, d as u64) > MAX_SLICE_MONOMIALS {
        return Err(Error::TooLarge(format!(
            "degree {d} slice in {nv} variables exceeds {MAX_SLICE_MONOMIALS} monomials"
        )));
    }
    sl_weight_space(&preset.lie, &preset.det_character(theta), d, Some(&preset.ideal))
}

/// Restriction along X = diag(x), Y = diag(y), i = (1, ..., 1), j = 0, into
/// k[x1..xn, y1..yn].
pub fn epsilon_pullback(n: usize, p: &Polynomial) -> Polynomial {
    let target = 2 * n;
    let zero = Polynomial::zero(target);
    let mut images = vec![zero.clone(); 2 * n * n + 2 * n];
    for k in 0..n {
        images[k * n + k] = Polynomial::var(target, k);
        images[n * n + k * n + k] = Polynomial::var(target, n + k);
        images[2 * n * n + k] = Polynomial::constant(target, int(1));
    }
    p.substitute(&images, target)
}
