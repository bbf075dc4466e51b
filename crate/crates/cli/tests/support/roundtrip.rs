//! parse(print(p)) = p over random sparse rational polynomials.

#![allow(dead_code)]

use coxgit::exact_algebra::{Monomial, Polynomial, Rational};
use coxgit_cli::parser::{parse_poly, print_poly};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn sparse_poly() -> impl Strategy<Value = (Vec<String>, Polynomial)> {
    (1usize..=6).prop_flat_map(|n| {
        let terms = prop::collection::vec(
            (prop::collection::vec(0u32..=6, n), -60i64..=60, 1i64..=15),
            0..=7,
        );
        terms.prop_map(move |terms| {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let mut p = Polynomial::zero(n);
            for (e, num, den) in terms {
                p.add_term(Monomial::new(e), Rational::new(num.into(), den.into()));
            }
            (names, p)
        })
    })
}

pub fn parse_print_round_trip(cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&sparse_poly(), |(names, p)| {
            let printed = print_poly(&p, &names);
            let back = parse_poly(&printed, &names)
                .map_err(|e| TestCaseError::fail(format!("{printed:?}: {e}")))?;
            prop_assert_eq!(&back, &p, "printed as {:?}", printed);
            prop_assert_eq!(print_poly(&back, &names), printed);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
