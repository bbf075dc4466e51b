use std::collections::BTreeMap;

use serde::Serialize;

use super::{variable_names, HilbRing};
use crate::error::{Error, Result};
use crate::exact_algebra::{echelon_span, Polynomial};
use crate::reductive_semiinv::{adhm::adhm_weight_space_in, epsilon_pullback, ADHMPreset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    /// Total degree on the ADHM side.
    pub degree: u32,
    pub adhm_dim: usize,
    /// Dimension of the span of the pulled-back basis.
    pub pullback_dim: usize,
    /// Total degree of the matching slice of A^θ, if nonnegative.
    pub product_degree: Option<u32>,
    pub product_dim: usize,
    /// Degree drops `degree - deg(ε*(b))` seen on nonzero pullbacks.
    pub observed_shifts: Vec<u32>,
    /// Every pullback lies in the product slice.
    pub contained: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchDump {
    pub degree: u32,
    pub adhm_basis: Vec<String>,
    pub pullback_basis: Vec<String>,
    pub product_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinzburgReport {
    pub n: usize,
    pub theta: u32,
    pub max_degree: u32,
    /// Degree drop per point, measured on the one-point ADHM ring.
    pub shift_per_point: u32,
    /// `n * shift_per_point`: ADHM degree d is compared with A^θ in degree d - shift.
    pub asserted_shift: u32,
    pub degrees: Vec<DegreeCheck>,
    pub matched: bool,
    pub first_failure: Option<u32>,
    pub dump: Option<MismatchDump>,
}

/// Bihomogeneous components keyed by (x-degree, y-degree).
fn components(n: usize, p: &Polynomial) -> BTreeMap<(u32, u32), Polynomial> {
    let mut out: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let key = (e[..n].iter().sum(), e[n..].iter().sum());
        out.entry(key)
            .or_insert_with(|| Polynomial::zero(2 * n))
            .add_term(m.clone(), c.clone());
    }
    out
}

/// Degree drop of ε* on the lowest nonzero piece of the one-point ring.
fn calibrate(theta: u32) -> Result<u32> {
    let one = ADHMPreset::new(1)?;
    for d in 0..=theta + 4 {
        let b = adhm_weight_space_in(&one, theta as i64, d)?;
        for p in &b.basis {
            let q = epsilon_pullback(1, p);
            if let Some(e) = q.degree() {
                return Ok(d - e);
            }
        }
    }
    Err(Error::Invalid("no nonzero pullback found on the one-point ring".into()))
}

/// Compares k[μ⁻¹(0)] in weight det^θ, degree by degree, with A^θ through
/// ε*: the pullback must be injective with image the whole A^θ slice.
pub fn verify_ginzburg(n: usize, theta: u32, max_degree: u32) -> Result<GinzburgReport> {
    if theta == 0 {
        return Err(Error::Invalid("theta must be positive".into()));
    }
    let preset = ADHMPreset::new(n)?;
    let ring = HilbRing::new(n);
    let shift_per_point = calibrate(theta)?;
    let shift = shift_per_point * n as u32;
    let adhm_names = preset.variable_names();
    let plane_names = variable_names(n);

    let mut degrees = Vec::new();
    let mut dump = None;
    for d in 0..=max_degree {
        let b = adhm_weight_space_in(&preset, theta as i64, d)?;
        let pulls: Vec<Polynomial> = b.basis.iter().map(|p| epsilon_pullback(n, p)).collect();
        let pull_span = echelon_span(2 * n, &pulls);
        let mut observed: Vec<u32> = pulls
            .iter()
            .flat_map(|p| components(n, p).into_keys().map(|(a, c)| d.saturating_sub(a + c)))
            .collect();
        observed.sort_unstable();
        observed.dedup();

        let product_degree = d.checked_sub(shift);
        let mut product_dim = 0;
        let mut product_basis = Vec::new();
        let mut contained = true;
        if let Some(e) = product_degree {
            for a in 0..=e {
                let span = ring.product_reduced(theta, (a, e - a));
                product_dim += span.dim();
                product_basis.extend(span.basis());
            }
        }
        for p in pull_span.basis() {
            for ((a, c), comp) in components(n, &p) {
                let ok = product_degree == Some(a + c)
                    && ring.product_reduced(theta, (a, c)).contains(&comp);
                contained &= ok;
            }
        }
        let matches = b.dim() == pull_span.dim() && pull_span.dim() == product_dim && contained;
        if !matches && dump.is_none() {
            let render = |ps: &[Polynomial], names: &[String]| {
                ps.iter().map(|p| p.render(names)).collect::<Vec<_>>()
            };
            dump = Some(MismatchDump {
                degree: d,
                adhm_basis: render(&b.basis, &adhm_names),
                pullback_basis: render(&pull_span.basis(), &plane_names),
                product_basis: render(&product_basis, &plane_names),
            });
        }
        degrees.push(DegreeCheck {
            degree: d,
            adhm_dim: b.dim(),
            pullback_dim: pull_span.dim(),
            product_degree,
            product_dim,
            observed_shifts: observed,
            contained,
            matches,
        });
    }
    let first_failure = degrees.iter().find(|c| !c.matches).map(|c| c.degree);
    Ok(GinzburgReport {
        n,
        theta,
        max_degree,
        shift_per_point,
        asserted_shift: shift,
        matched: first_failure.is_none(),
        first_failure,
        dump,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_matches() {
        for theta in [1, 2] {
            let r = verify_ginzburg(1, theta, 6).unwrap();
            assert!(r.matched, "{r:?}");
            assert_eq!(r.shift_per_point, theta);
        }
    }

    #[test]
    fn two_points_match_in_low_degree() {
        let r = verify_ginzburg(2, 1, 4).unwrap();
        assert!(r.matched, "{r:?}");
        assert_eq!(r.asserted_shift, 2);
        let dims: Vec<usize> = r.degrees.iter().map(|c| c.adhm_dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 2, 4]);
    }
}
