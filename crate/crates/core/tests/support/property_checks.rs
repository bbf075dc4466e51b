//! Randomized invariant checks, shared by the property tests and the
//! acceptance suite. Each check runs `cases` random inputs and reports the
//! first (shrunk) counterexample.

#![allow(dead_code)]

use coxgit::exact_algebra::{echelon_span, int, Monomial, Polynomial, Rational};
use coxgit::grading_lattice::{weight_of_monomial, Character, WeightedAction};
use coxgit::hilb_cox::HilbRing;
use coxgit::saturation::{
    quotient_weight_space, sections_with_witnesses, witness_set, Caps, TruncatedIdeal,
};
use coxgit::torus_git::support_semistable;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn outcome<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn small_poly(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(nvars);
        for (e, n, d) in terms {
            p.add_term(Monomial::new(e), Rational::new(n.into(), d.into()));
        }
        p
    })
}

fn action(nvars: usize, rank: usize) -> impl Strategy<Value = WeightedAction> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, nvars), rank)
        .prop_map(move |rows| WeightedAction::new(rows, nvars).unwrap())
}

/// Re-echelonizing an echelon basis changes nothing; the span does not
/// depend on the order of the inputs.
pub fn echelon_idempotent_and_order_free(cases: u32) -> Result<(), String> {
    let strat = prop::collection::vec(small_poly(3, 4, 2), 0..6)
        .prop_flat_map(|ps| {
            let n = ps.len();
            (Just(ps), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        });
    outcome(runner(cases).run(&strat, |(ps, perm)| {
        let e = echelon_span(3, &ps);
        let again = echelon_span(3, &e.basis());
        prop_assert!(again == e, "re-echelonizing changed the basis");
        prop_assert_eq!(again.basis(), e.basis());
        let shuffled: Vec<Polynomial> = perm.iter().map(|&i| ps[i].clone()).collect();
        prop_assert_eq!(echelon_span(3, &shuffled).basis(), e.basis());
        prop_assert!(e.dim() <= ps.len());
        for p in &ps {
            prop_assert!(e.contains(p));
        }
        Ok(())
    }))
}

/// Weights of monomials add under multiplication.
pub fn weight_additivity(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4, 1usize..=3).prop_flat_map(|(n, r)| {
        (
            action(n, r),
            prop::collection::vec(0u32..=3, n),
            prop::collection::vec(0u32..=3, n),
        )
    });
    outcome(runner(cases).run(&strat, |(act, e1, e2)| {
        let (m1, m2) = (Monomial::new(e1), Monomial::new(e2));
        let w1 = weight_of_monomial(&act, &m1).unwrap();
        let w2 = weight_of_monomial(&act, &m2).unwrap();
        let w12 = weight_of_monomial(&act, &m1.mul(&m2)).unwrap();
        prop_assert_eq!(&w12, &(&w1 + &w2));
        let p = Polynomial::monomial(m1.clone(), int(3));
        let q = Polynomial::monomial(m2.clone(), int(-2));
        prop_assert_eq!(act.weight_of_polynomial(&p.mul(&q)), Some(w12));
        Ok(())
    }))
}

/// Enlarging a semistable support keeps it semistable.
pub fn support_monotonicity(cases: u32) -> Result<(), String> {
    let strat = (2usize..=5, 1usize..=2).prop_flat_map(|(n, r)| {
        (
            action(n, r),
            prop::collection::vec(-2i64..=2, r),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
    });
    outcome(runner(cases).run(&strat, |(act, theta, small, extra)| {
        let theta = Character(theta);
        let s: Vec<usize> = (0..small.len()).filter(|&i| small[i]).collect();
        let t: Vec<usize> = (0..small.len()).filter(|&i| small[i] || extra[i]).collect();
        if support_semistable(&act, &s, &theta) {
            prop_assert!(support_semistable(&act, &t, &theta), "{s:?} semistable but {t:?} not");
        }
        Ok(())
    }))
}

/// Every element of A^{m+2} lies in A^m (n = 2).
pub fn alternant_powers_nest(cases: u32) -> Result<(), String> {
    let ring = HilbRing::new(2);
    let strat = (0u32..=2, 0u32..=3, 0u32..=3);
    outcome(runner(cases).run(&strat, |(m, a, b)| {
        let big = ring.product_space(m + 2, (a, b));
        let small = echelon_span(4, &ring.product_space(m, (a, b)).basis);
        for p in &big.basis {
            prop_assert!(small.reduce(p).is_zero(), "A^{} not in A^{} at ({a}, {b})", m + 2, m);
        }
        Ok(())
    }))
}

fn quadric() -> (TruncatedIdeal, WeightedAction) {
    let act = WeightedAction::new(vec![vec![1, 1, -1, -1]], 4).unwrap();
    let v = |i| Polynomial::var(4, i);
    let ideal = TruncatedIdeal::graded(vec![v(0).mul(&v(3)).sub(&v(1).mul(&v(2)))], &act).unwrap();
    (ideal, act)
}

/// Small weighted problems with a nontrivial witness set.
pub fn problems() -> Vec<(TruncatedIdeal, WeightedAction)> {
    let a4 = WeightedAction::new(vec![vec![1, 1, -1, -1]], 4).unwrap();
    let a3 = WeightedAction::new(vec![vec![1, 1, -1]], 3).unwrap();
    let w = WeightedAction::new(vec![vec![1, 1, -2, 0]], 4).unwrap();
    let v = |i| Polynomial::var(4, i);
    let cubic = TruncatedIdeal::graded(vec![v(0).mul(&v(1)).mul(&v(2)).sub(&v(3).pow(3))], &w).unwrap();
    vec![
        quadric(),
        (TruncatedIdeal::zero(4), a4),
        (TruncatedIdeal::zero(3), a3),
        (cubic, w),
    ]
}

/// Restricting k[V]_χ to the semistable locus is injective, so the quotient
/// piece is never larger than the section piece.
pub fn restriction_injective(cases: u32) -> Result<(), String> {
    let problems = problems();
    let np = problems.len();
    let strat = (0..np, -3i64..=3, 0u32..=4);
    outcome(runner(cases).run(&strat, |(k, chi, d)| {
        let (ideal, act) = &problems[k];
        let theta = Character(vec![1]);
        let chi = Character(vec![chi]);
        let caps = Caps { max_degree: d, max_sat_power: 3 };
        let ws = witness_set(ideal, act, &theta, Caps::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let piece = sections_with_witnesses(ideal, act, &ws, 0, &chi, caps)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        for (deg, dim) in piece.dims().into_iter().enumerate() {
            let q = quotient_weight_space(ideal, act, &chi, deg as u32).unwrap().dim();
            prop_assert!(q <= dim, "problem {k}, chi {chi}, degree {deg}: quotient {q} > sections {dim}");
        }
        Ok(())
    }))
}

/// Section dimensions do not depend on which witness is the denominator.
pub fn witness_independence(cases: u32) -> Result<(), String> {
    let problems = problems();
    let np = problems.len();
    let strat = (0..np, -3i64..=3, 0u32..=4, any::<prop::sample::Index>());
    outcome(runner(cases).run(&strat, |(k, chi, d, pick)| {
        let (ideal, act) = &problems[k];
        let theta = Character(vec![1]);
        let chi = Character(vec![chi]);
        let caps = Caps { max_degree: d, max_sat_power: 3 };
        let ws = witness_set(ideal, act, &theta, Caps::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let other = pick.index(ws.witnesses.len());
        let run = |i| {
            sections_with_witnesses(ideal, act, &ws, i, &chi, caps)
                .map_err(|e| TestCaseError::fail(e.to_string()))
        };
        let (first, second) = (run(0)?, run(other)?);
        prop_assert_eq!(first.dims(), second.dims(), "problem {} witnesses 0 and {}", k, other);
        Ok(())
    }))
}
