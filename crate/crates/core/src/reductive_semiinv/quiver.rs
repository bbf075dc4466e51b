use super::{Derivation, LieAction};
use crate::error::{Error, Result};
use crate::exact_algebra::Polynomial;
use crate::grading_lattice::{Character, WeightedAction};

/// Representations of a quiver with dimension vector α, acted on by GL_α
/// modulo the diagonal scalars.
///
/// Arrow `a: t -> h` contributes an `α_h × α_t` matrix of variables. Torus
/// coordinates are indexed by (vertex, basis index), vertices in order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPreset {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
    /// A vertex of dimension one whose character is determined by the others.
    pub base_vertex: usize,
    /// For each variable: (arrow, row, column).
    layout: Vec<(usize, usize, usize)>,
    offsets: Vec<usize>,
}

impl QuiverPreset {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != vertices {
            return Err(Error::InvalidPreset(format!(
                "{} dimensions for {vertices} vertices",
                dims.len()
            )));
        }
        if let Some(&(t, h)) = arrows.iter().find(|&&(t, h)| t >= vertices || h >= vertices) {
            return Err(Error::InvalidPreset(format!("arrow {t}->{h} leaves the quiver")));
        }
        let base_vertex = dims
            .iter()
            .position(|&a| a == 1)
            .ok_or_else(|| Error::InvalidPreset("no vertex of dimension one".into()))?;
        let mut layout = Vec::new();
        for (a, &(t, h)) in arrows.iter().enumerate() {
            for p in 0..dims[h] {
                for q in 0..dims[t] {
                    layout.push((a, p, q));
                }
            }
        }
        let mut offsets = Vec::with_capacity(vertices);
        let mut acc = 0;
        for &a in &dims {
            offsets.push(acc);
            acc += a;
        }
        Ok(QuiverPreset {
            vertices,
            arrows,
            dims,
            base_vertex,
            layout,
            offsets,
        })
    }

    /// `arrows` parallel arrows 0 -> 1 with dimension vector (1, k): the
    /// semi-invariants are the homogeneous coordinate ring of Gr(k, arrows).
    pub fn grassmannian(k: usize, arrows: usize) -> Result<Self> {
        Self::new(2, vec![(0, 1); arrows], vec![1, k])
    }

    pub fn nvars(&self) -> usize {
        self.layout.len()
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.layout
            .iter()
            .map(|&(a, p, q)| format!("m{}_{}_{}", a + 1, p + 1, q + 1))
            .collect()
    }

    fn torus_rank(&self) -> usize {
        self.dims.iter().sum()
    }

    fn var_index(&self, arrow: usize, p: usize, q: usize) -> usize {
        self.layout
            .iter()
            .position(|&x| x == (arrow, p, q))
            .expect("entry exists")
    }

    /// Maximal torus of GL_α: entry (p, q) of arrow t -> h has weight
    /// e_{h,p} - e_{t,q}.
    pub fn torus_action(&self) -> WeightedAction {
        let cols: Vec<Vec<i64>> = self
            .layout
            .iter()
            .map(|&(a, p, q)| {
                let (t, h) = self.arrows[a];
                let mut w = vec![0i64; self.torus_rank()];
                w[self.offsets[h] + p] += 1;
                w[self.offsets[t] + q] -= 1;
                w
            })
            .collect();
        WeightedAction::from_columns(&cols, self.torus_rank()).expect("consistent shape")
    }

    /// Scalars at each vertex other than the base one. A semi-invariant of
    /// character χ has weight `α_v χ_v` here.
    pub fn center_action(&self) -> WeightedAction {
        let others: Vec<usize> = (0..self.vertices).filter(|&v| v != self.base_vertex).collect();
        let cols: Vec<Vec<i64>> = self
            .layout
            .iter()
            .map(|&(a, _, _)| {
                let (t, h) = self.arrows[a];
                others
                    .iter()
                    .map(|&v| i64::from(h == v) - i64::from(t == v))
                    .collect()
            })
            .collect();
        WeightedAction::from_columns(&cols, others.len()).expect("consistent shape")
    }

    /// Embeds χ ∈ Z^{|Q0|-1} (vertices other than the base, in order) as the
    /// torus weight of ∏ det_v^{χ_v}, with the base vertex balancing the sum.
    pub fn torus_character(&self, chi: &Character) -> Result<Character> {
        if chi.rank() + 1 != self.vertices {
            return Err(Error::CharacterLength {
                expected: self.vertices - 1,
                found: chi.rank(),
            });
        }
        let mut theta = vec![0i64; self.vertices];
        let mut it = chi.coords().iter();
        for (v, slot) in theta.iter_mut().enumerate() {
            if v != self.base_vertex {
                *slot = *it.next().unwrap();
            }
        }
        theta[self.base_vertex] =
            -(0..self.vertices).map(|v| theta[v] * self.dims[v] as i64).sum::<i64>();
        let mut out = Vec::with_capacity(self.torus_rank());
        for v in 0..self.vertices {
            out.extend(std::iter::repeat(theta[v]).take(self.dims[v]));
        }
        Ok(Character(out))
    }

    /// Chevalley generators E_{k,k+1} and E_{k+1,k} of each sl(α_v), acting
    /// on matrices by `M_a -> E M_a` at the head and `M_a -> -M_a E` at the tail.
    pub fn lie_action(&self) -> LieAction {
        let n = self.nvars();
        let mut ops = Vec::new();
        for v in 0..self.vertices {
            for k in 0..self.dims[v].saturating_sub(1) {
                for (r, c) in [(k, k + 1), (k + 1, k)] {
                    let mut op = Derivation::new(format!("E{}_{}{}", v, r + 1, c + 1), n);
                    for (a, &(t, h)) in self.arrows.iter().enumerate() {
                        if h == v {
                            for q in 0..self.dims[t] {
                                let src = Polynomial::var(n, self.var_index(a, c, q));
                                op.add_rule(self.var_index(a, r, q), &src);
                            }
                        }
                        if t == v {
                            for p in 0..self.dims[h] {
                                let src = Polynomial::var(n, self.var_index(a, p, r)).neg();
                                op.add_rule(self.var_index(a, p, c), &src);
                            }
                        }
                    }
                    ops.push(op);
                }
            }
        }
        LieAction::new(ops, self.torus_action()).expect("Chevalley generators have root weights")
    }
}
