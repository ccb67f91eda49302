//! Property tests for the exact kernel: ring axioms of the coefficient
//! ring, canonical-form idempotence, substitution/convolution coherence,
//! reciprocal correctness, Pochhammer telescoping, and truncation
//! consistency.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use qident_core::{Bindings, Monomial, PochBase, QSeries, Sign, Symbol, SymbolicCoefficient};

fn monomial_strategy(min_exp: i32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(min_exp..4i32, 4).prop_map(|exps| {
        Monomial::from_pairs(&[
            (Symbol::A, exps[0]),
            (Symbol::Z, exps[1]),
            (Symbol::B, exps[2]),
            (Symbol::Rho, exps[3]),
        ])
    })
}

fn coeff_strategy(min_exp: i32) -> impl Strategy<Value = SymbolicCoefficient> {
    prop::collection::vec((monomial_strategy(min_exp), -9i64..10), 0..4).prop_map(|terms| {
        SymbolicCoefficient::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    })
}

/// Series with integer unit constant term and a few symbolic tail terms.
fn unit_series_strategy() -> impl Strategy<Value = QSeries> {
    (
        1usize..10,
        prop::bool::ANY,
        prop::collection::vec((-5i64..6, -2i32..3), 1..10),
    )
        .prop_map(|(order, negative, tail)| {
            let mut coeffs = vec![SymbolicCoefficient::zero(); order + 1];
            coeffs[0] = SymbolicCoefficient::from_int(if negative { -1 } else { 1 });
            for (k, (c, z_exp)) in tail.into_iter().enumerate() {
                let slot = 1 + k % order.max(1);
                if slot <= order {
                    coeffs[slot] =
                        SymbolicCoefficient::from_term(Monomial::pow(Symbol::Z, z_exp), c);
                }
            }
            QSeries::from_coeffs(coeffs)
        })
}

fn convolve(a: &[(usize, BigInt)], b: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (sa, ca) in a {
        for (sb, cb) in b {
            *acc.entry(sa + sb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn telescoping_bases() -> Vec<PochBase> {
    vec![
        PochBase::q_pow(1),
        PochBase::neg_q_pow(2),
        PochBase::symbol(Sign::Plus, Symbol::Z, 1),
        PochBase::symbol(Sign::Minus, Symbol::B, 1),
        PochBase::new(
            Sign::Plus,
            Monomial::from_pairs(&[(Symbol::Z, 1), (Symbol::A, 1)]),
            0,
        ),
    ]
}

proptest! {
    #[test]
    fn addition_is_associative(
        x in coeff_strategy(-3),
        y in coeff_strategy(-3),
        z in coeff_strategy(-3),
    ) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        x in coeff_strategy(-3),
        y in coeff_strategy(-3),
        z in coeff_strategy(-3),
    ) {
        prop_assert_eq!(x.mul(&(&y + &z)), &x.mul(&y) + &x.mul(&z));
    }

    #[test]
    fn multiplication_commutes(x in coeff_strategy(-3), y in coeff_strategy(-3)) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn canonical_form_is_idempotent(x in coeff_strategy(-3)) {
        let rebuilt =
            SymbolicCoefficient::from_terms(x.terms().map(|(m, c)| (*m, c.clone())));
        prop_assert_eq!(rebuilt, x);
    }

    #[test]
    fn substitution_commutes_with_multiplication(
        x in coeff_strategy(0),
        y in coeff_strategy(0),
        signs in prop::collection::vec(prop::bool::ANY, 4),
        powers in prop::collection::vec(0u32..3, 4),
    ) {
        // Nonnegative exponents only, so any positive q-power is legal.
        let mut bindings = Bindings::new();
        for (i, symbol) in Symbol::ALL.into_iter().enumerate() {
            let sign = if signs[i] { Sign::Plus } else { Sign::Minus };
            bindings = bindings.bind(symbol, sign, powers[i]);
        }
        let product_image = x.mul(&y).substitute(&bindings).unwrap();
        let convolved = convolve(
            &x.substitute(&bindings).unwrap(),
            &y.substitute(&bindings).unwrap(),
        );
        prop_assert_eq!(product_image, convolved);
    }

    #[test]
    fn reciprocal_inverts_unit_series(x in unit_series_strategy()) {
        let inverse = x.reciprocal().unwrap();
        prop_assert_eq!(x.mul(&inverse).unwrap(), QSeries::one(x.order()));
    }

    #[test]
    fn pochhammer_telescopes(
        n in 0u32..=10,
        step in 1u32..3,
        base_index in 0usize..5,
    ) {
        let order = 20;
        let base = &telescoping_bases()[base_index];
        let longer = QSeries::poch_finite(base, n + 1, step, order);
        let shorter = QSeries::poch_finite(base, n, step, order);
        let shift = base.q_valuation() + (step * n) as usize;
        let factor = if shift > order {
            QSeries::one(order)
        } else {
            QSeries::from_terms(
                order,
                [
                    (0, SymbolicCoefficient::one()),
                    (shift, -&base.coefficient_part()),
                ],
            )
        };
        prop_assert_eq!(longer, shorter.mul(&factor).unwrap());
    }

    #[test]
    fn infinite_product_truncation_is_consistent(
        valuation in 1usize..4,
        step in 1u32..3,
        negative in prop::bool::ANY,
        low in 4usize..12,
    ) {
        let base = if negative {
            PochBase::neg_q_pow(valuation)
        } else {
            PochBase::q_pow(valuation)
        };
        let high = low + 7;
        let coarse = QSeries::poch_infinite(&base, step, low).unwrap();
        let fine = QSeries::poch_infinite(&base, step, high).unwrap();
        prop_assert_eq!(fine.truncated(low), coarse);
    }
}
