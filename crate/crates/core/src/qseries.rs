//! Truncated formal power series in `q` over the symbolic coefficient ring.
//!
//! A [`QSeries`] is a dense array of coefficients for `q^0 .. q^N`
//! (inclusive). The truncation order `N` is fixed at construction time and
//! carried by every arithmetic result; mixing orders is an error, never an
//! implicit `min`.
//!
//! Provided here:
//! - exact ring arithmetic (`add`, `sub`, `mul` by truncated convolution)
//! - reciprocals of series with integer unit constant term
//! - finite and infinite q-Pochhammer products, `(x; q^step)_n`
//! - specialization of ring symbols to signed q-powers
//! - JSON / CSV dumps

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::symcoeff::{Bindings, Monomial, Sign, SubstituteError, Symbol, SymbolicCoefficient};

/// Errors raised by series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not the integer +1 or -1")]
    NonUnitConstantTerm,
    #[error("infinite product base has q-valuation 0")]
    ZeroValuationBase,
    #[error("index {index} exceeds truncation order {order}")]
    IndexOutOfOrder { index: usize, order: usize },
    #[error("series has symbolic coefficients")]
    SymbolicSeries,
    #[error(transparent)]
    Substitute(#[from] SubstituteError),
}

/// The base of a q-Pochhammer symbol: a single signed monomial times a
/// nonnegative q-power, `sign * monomial * q^valuation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochBase {
    sign: Sign,
    monomial: Monomial,
    valuation: usize,
}

impl PochBase {
    pub fn new(sign: Sign, monomial: Monomial, valuation: usize) -> PochBase {
        PochBase {
            sign,
            monomial,
            valuation,
        }
    }

    /// `+q^valuation`.
    pub fn q_pow(valuation: usize) -> PochBase {
        PochBase::new(Sign::Plus, Monomial::ONE, valuation)
    }

    /// `-q^valuation`.
    pub fn neg_q_pow(valuation: usize) -> PochBase {
        PochBase::new(Sign::Minus, Monomial::ONE, valuation)
    }

    /// `sign * symbol * q^valuation`.
    pub fn symbol(sign: Sign, symbol: Symbol, valuation: usize) -> PochBase {
        PochBase::new(sign, Monomial::var(symbol), valuation)
    }

    pub fn q_valuation(&self) -> usize {
        self.valuation
    }

    /// The coefficient part `sign * monomial` as a ring element.
    pub fn coefficient_part(&self) -> SymbolicCoefficient {
        SymbolicCoefficient::from_term(self.monomial, self.sign.as_i64())
    }
}

/// A truncated formal power series in q with symbolic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<SymbolicCoefficient>,
}

impl QSeries {
    pub fn zero(order: usize) -> QSeries {
        QSeries {
            order,
            coeffs: vec![SymbolicCoefficient::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> QSeries {
        QSeries::constant(order, SymbolicCoefficient::one())
    }

    pub fn constant(order: usize, value: SymbolicCoefficient) -> QSeries {
        let mut series = QSeries::zero(order);
        series.coeffs[0] = value;
        series
    }

    /// The single term `coefficient * q^exponent`.
    pub fn term(order: usize, exponent: usize, coefficient: SymbolicCoefficient) -> QSeries {
        assert!(exponent <= order, "term exponent beyond truncation order");
        let mut series = QSeries::zero(order);
        series.coeffs[exponent] = coefficient;
        series
    }

    pub fn from_coeffs(coeffs: Vec<SymbolicCoefficient>) -> QSeries {
        assert!(!coeffs.is_empty());
        QSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Accumulate `(exponent, coefficient)` pairs into a series; pairs
    /// beyond the truncation order are dropped.
    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (usize, SymbolicCoefficient)>,
    ) -> QSeries {
        let mut series = QSeries::zero(order);
        for (exponent, coefficient) in terms {
            if exponent <= order {
                series.coeffs[exponent].add_assign(&coefficient);
            }
        }
        series
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, exponent: usize) -> Result<&SymbolicCoefficient, SeriesError> {
        self.coeffs
            .get(exponent)
            .ok_or(SeriesError::IndexOutOfOrder {
                index: exponent,
                order: self.order,
            })
    }

    pub fn coeffs(&self) -> &[SymbolicCoefficient] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SymbolicCoefficient::is_zero)
    }

    pub fn is_symbol_free(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_integer().is_some())
    }

    fn check_order(&self, other: &QSeries) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_order(other)?;
        let mut result = self.clone();
        for (lhs, rhs) in result.coeffs.iter_mut().zip(&other.coeffs) {
            lhs.add_assign(rhs);
        }
        Ok(result)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_order(other)?;
        let mut result = self.clone();
        for (lhs, rhs) in result.coeffs.iter_mut().zip(&other.coeffs) {
            lhs.sub_assign(rhs);
        }
        Ok(result)
    }

    pub fn add_assign(&mut self, other: &QSeries) -> Result<(), SeriesError> {
        self.check_order(other)?;
        for (lhs, rhs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            lhs.add_assign(rhs);
        }
        Ok(())
    }

    /// Cauchy convolution truncated at the common order.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_order(other)?;
        let mut result = QSeries::zero(self.order);
        for (i, lhs) in self.coeffs.iter().enumerate() {
            if lhs.is_zero() {
                continue;
            }
            for (j, rhs) in other.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if rhs.is_zero() {
                    continue;
                }
                result.coeffs[i + j].add_assign(&lhs.mul(rhs));
            }
        }
        Ok(result)
    }

    /// Multiply by the single term `coefficient * q^shift`, truncating.
    pub fn mul_term(&self, coefficient: &SymbolicCoefficient, shift: usize) -> QSeries {
        let mut result = QSeries::zero(self.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k + shift > self.order {
                break;
            }
            if !c.is_zero() {
                result.coeffs[k + shift] = c.mul(coefficient);
            }
        }
        result
    }

    /// Multiplicative inverse at the same order, by the standard recurrence
    /// `y_0 = x_0`, `y_k = -x_0 * sum_{i=1..k} x_i y_{k-i}`. Requires the
    /// constant term to be the integer +1 or -1.
    pub fn reciprocal(&self) -> Result<QSeries, SeriesError> {
        let unit = self.coeffs[0]
            .as_integer()
            .filter(|c| c.abs() == BigInt::from(1))
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        let unit_sign = if unit.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let mut inverse = QSeries::zero(self.order);
        inverse.coeffs[0] = SymbolicCoefficient::from_int(unit);
        for k in 1..=self.order {
            let mut acc = SymbolicCoefficient::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || inverse.coeffs[k - i].is_zero() {
                    continue;
                }
                acc.add_assign(&self.coeffs[i].mul(&inverse.coeffs[k - i]));
            }
            if !acc.is_zero() {
                // y_k = -x_0 * acc with x_0 = +-1.
                inverse.coeffs[k] = match unit_sign {
                    Sign::Plus => -&acc,
                    Sign::Minus => acc,
                };
            }
        }
        Ok(inverse)
    }

    /// Multiply in place by the Pochhammer factor `1 - c * q^shift` where
    /// `c` is a signed monomial. Skipped entirely when `shift` exceeds the
    /// order (the factor truncates to 1).
    fn mul_poch_factor(&mut self, sign: Sign, monomial: &Monomial, shift: usize) {
        if shift > self.order {
            return;
        }
        // Descending so each read of coeffs[k - shift] sees the input value.
        for k in (shift..=self.order).rev() {
            if self.coeffs[k - shift].is_zero() {
                continue;
            }
            let scaled = self.coeffs[k - shift].clone();
            self.coeffs[k].add_scaled(&scaled, monomial, sign.flip());
        }
    }

    /// Finite q-Pochhammer product
    /// `prod_{i=0}^{n-1} (1 - base * q^{step*i})` truncated at `order`.
    pub fn poch_finite(base: &PochBase, n: u32, step: u32, order: usize) -> QSeries {
        assert!(step >= 1, "Pochhammer step must be >= 1");
        let mut series = QSeries::one(order);
        for i in 0..n as usize {
            let shift = base.valuation + step as usize * i;
            if shift > order {
                // This and all remaining factors are 1 modulo q^{order+1}.
                break;
            }
            series.mul_poch_factor(base.sign, &base.monomial, shift);
        }
        series
    }

    /// Infinite q-Pochhammer product `prod_{i>=0} (1 - base * q^{step*i})`.
    /// The base must have q-valuation >= 1 so that only finitely many
    /// factors differ from 1 below the truncation order.
    pub fn poch_infinite(base: &PochBase, step: u32, order: usize) -> Result<QSeries, SeriesError> {
        assert!(step >= 1, "Pochhammer step must be >= 1");
        if base.valuation == 0 {
            return Err(SeriesError::ZeroValuationBase);
        }
        let mut series = QSeries::one(order);
        let mut shift = base.valuation;
        while shift <= order {
            series.mul_poch_factor(base.sign, &base.monomial, shift);
            shift += step as usize;
        }
        Ok(series)
    }

    /// Map every ring symbol to a signed q-power and re-absorb the images
    /// into the q-grading; terms pushed past the order are dropped.
    pub fn specialize(&self, bindings: &Bindings) -> Result<QSeries, SeriesError> {
        let mut result = QSeries::zero(self.order);
        for (k, coefficient) in self.coeffs.iter().enumerate() {
            for (shift, value) in coefficient.substitute(bindings)? {
                if k + shift <= self.order {
                    result.coeffs[k + shift].add_assign(&SymbolicCoefficient::from_int(value));
                }
            }
        }
        Ok(result)
    }

    /// Apply `symbol -> -symbol` to every coefficient.
    pub fn negate_symbol(&self, symbol: Symbol) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.negate_symbol(symbol))
                .collect(),
        }
    }

    /// Per-slot extraction of the sub-polynomial multiplying
    /// `symbol^exponent`.
    pub fn symbol_coefficient(&self, symbol: Symbol, exponent: i32) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.coefficient_of(symbol, exponent))
                .collect(),
        }
    }

    /// Drop coefficients above `new_order`.
    pub fn truncated(&self, new_order: usize) -> QSeries {
        assert!(new_order <= self.order);
        QSeries {
            order: new_order,
            coeffs: self.coeffs[..=new_order].to_vec(),
        }
    }

    /// The smallest q-exponent where the two series differ, with both
    /// coefficients, or `None` if they agree slot by slot.
    pub fn first_mismatch(
        &self,
        other: &QSeries,
    ) -> Result<Option<(usize, SymbolicCoefficient, SymbolicCoefficient)>, SeriesError> {
        self.check_order(other)?;
        for k in 0..=self.order {
            if self.coeffs[k] != other.coeffs[k] {
                return Ok(Some((k, self.coeffs[k].clone(), other.coeffs[k].clone())));
            }
        }
        Ok(None)
    }

    /// JSON dump: `{"order": N, "terms": [{"q": k, "coeff": ...}, ...]}`
    /// with zero coefficients omitted.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!({ "q": k, "coeff": c.to_json() }))
            .collect();
        json!({ "order": self.order, "terms": terms })
    }

    /// CSV dump for symbol-free series: one `k,integer` row per order.
    pub fn to_csv(&self) -> Result<String, SeriesError> {
        let mut out = String::new();
        for (k, coefficient) in self.coeffs.iter().enumerate() {
            let value = coefficient
                .as_integer()
                .ok_or(SeriesError::SymbolicSeries)?;
            out.push_str(&format!("{k},{value}\n"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int_series(order: usize, values: &[i64]) -> QSeries {
        let mut coeffs = vec![SymbolicCoefficient::zero(); order + 1];
        for (k, &v) in values.iter().enumerate() {
            coeffs[k] = SymbolicCoefficient::from_int(v);
        }
        QSeries::from_coeffs(coeffs)
    }

    #[test]
    fn add_is_pointwise() {
        let x = int_series(2, &[1, 1]);
        let y = int_series(2, &[0, 1]);
        assert_eq!(x.add(&y).unwrap(), int_series(2, &[1, 2, 0]));
    }

    #[test]
    fn sub_self_is_zero() {
        let x = int_series(4, &[1, -2, 3, 0, 7]);
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let x = QSeries::one(5);
        let y = QSeries::one(6);
        assert_eq!(
            x.add(&y),
            Err(SeriesError::OrderMismatch { left: 5, right: 6 })
        );
    }

    #[test]
    fn telescoping_product_truncates() {
        // (1 - q)(1 + q + q^2 + q^3) = 1 - q^4 -> 1 at order 3.
        let x = int_series(3, &[1, -1]);
        let y = int_series(3, &[1, 1, 1, 1]);
        assert_eq!(x.mul(&y).unwrap(), QSeries::one(3));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let za = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 1),
            (Symbol::A, 1),
        ]));
        let x = QSeries::constant(2, &SymbolicCoefficient::one() - &za);
        assert_eq!(x.mul(&QSeries::one(2)).unwrap(), x);
    }

    #[test]
    fn rho_product_coefficients() {
        // (1 - rho)(1 - rho q) at order 1 = 1 - rho - rho q + rho^2 q;
        // the rho^2 part of the q^1 slot is exactly 1.
        let base = PochBase::symbol(Sign::Plus, Symbol::Rho, 0);
        let series = QSeries::poch_finite(&base, 2, 1, 1);
        let rho = SymbolicCoefficient::symbol(Symbol::Rho);
        let rho2 = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Rho, 2));
        assert_eq!(
            *series.coeff(0).unwrap(),
            &SymbolicCoefficient::one() - &rho
        );
        assert_eq!(*series.coeff(1).unwrap(), &rho2 - &rho);
        assert_eq!(
            series.coeff(1).unwrap().coefficient_of(Symbol::Rho, 2),
            SymbolicCoefficient::one()
        );
    }

    #[test]
    fn geometric_reciprocal() {
        let x = int_series(4, &[1, -1]);
        assert_eq!(x.reciprocal().unwrap(), int_series(4, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn alternating_geometric_reciprocal() {
        let x = int_series(5, &[1, 0, 1]);
        assert_eq!(x.reciprocal().unwrap(), int_series(5, &[1, 0, -1, 0, 1, 0]));
    }

    #[test]
    fn symbolic_ratio_reciprocal_is_geometric() {
        // 1/(1 - za*q): constant term is the integer 1, so this succeeds
        // and slot k holds (za)^k.
        let za = Monomial::from_pairs(&[(Symbol::Z, 1), (Symbol::A, 1)]);
        let mut x = QSeries::one(6);
        x.coeffs[1] = -&SymbolicCoefficient::from_monomial(za);
        let inv = x.reciprocal().unwrap();
        for k in 0..=6 {
            let expected = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
                (Symbol::Z, k as i32),
                (Symbol::A, k as i32),
            ]));
            assert_eq!(*inv.coeff(k).unwrap(), expected, "slot {k}");
        }
        assert_eq!(x.mul(&inv).unwrap(), QSeries::one(6));
    }

    #[test]
    fn non_unit_constant_term_is_rejected() {
        assert_eq!(
            int_series(3, &[2, 1]).reciprocal(),
            Err(SeriesError::NonUnitConstantTerm)
        );
        let za = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 1),
            (Symbol::A, 1),
        ]));
        let x = QSeries::constant(3, &SymbolicCoefficient::one() - &za);
        assert_eq!(x.reciprocal(), Err(SeriesError::NonUnitConstantTerm));
    }

    #[test]
    fn negative_unit_reciprocal() {
        // 1/(-1 + q) = -1 - q - q^2 - ...
        let x = int_series(3, &[-1, 1]);
        let inv = x.reciprocal().unwrap();
        assert_eq!(inv, int_series(3, &[-1, -1, -1, -1]));
        assert_eq!(x.mul(&inv).unwrap(), QSeries::one(3));
    }

    #[test]
    fn poch_finite_empty_product_is_one() {
        let base = PochBase::q_pow(1);
        assert_eq!(QSeries::poch_finite(&base, 0, 1, 5), QSeries::one(5));
    }

    #[test]
    fn poch_finite_two_factors() {
        // (q; q)_2 = (1 - q)(1 - q^2) = 1 - q - q^2 + q^3.
        let base = PochBase::q_pow(1);
        assert_eq!(
            QSeries::poch_finite(&base, 2, 1, 3),
            int_series(3, &[1, -1, -1, 1])
        );
    }

    #[test]
    fn poch_finite_single_symbolic_factor() {
        let za = Monomial::from_pairs(&[(Symbol::Z, 1), (Symbol::A, 1)]);
        let base = PochBase::new(Sign::Plus, za, 0);
        let series = QSeries::poch_finite(&base, 1, 1, 2);
        let expected = QSeries::constant(
            2,
            &SymbolicCoefficient::one() - &SymbolicCoefficient::from_monomial(za),
        );
        assert_eq!(series, expected);
    }

    #[test]
    fn euler_product_matches_pentagonal_expansion() {
        // (q; q)_inf = 1 - q - q^2 + q^5 + ... at order 5.
        let series = QSeries::poch_infinite(&PochBase::q_pow(1), 1, 5).unwrap();
        assert_eq!(series, int_series(5, &[1, -1, -1, 0, 0, 1]));
    }

    #[test]
    fn odd_step_symbolic_infinite_product() {
        // (-zq; q^2)_inf at order 3 = (1 + zq)(1 + zq^3) truncated
        //                           = 1 + zq + zq^3.
        let base = PochBase::symbol(Sign::Minus, Symbol::Z, 1);
        let series = QSeries::poch_infinite(&base, 2, 3).unwrap();
        let z = SymbolicCoefficient::symbol(Symbol::Z);
        let mut expected = QSeries::one(3);
        expected.coeffs[1] = z.clone();
        expected.coeffs[3] = z;
        assert_eq!(series, expected);
    }

    #[test]
    fn zero_valuation_infinite_product_is_rejected() {
        let za = Monomial::from_pairs(&[(Symbol::Z, 1), (Symbol::A, 1)]);
        let base = PochBase::new(Sign::Plus, za, 0);
        assert_eq!(
            QSeries::poch_infinite(&base, 1, 4),
            Err(SeriesError::ZeroValuationBase)
        );
    }

    #[test]
    fn specialize_reabsorbs_into_q_grading() {
        // 1 - za*q at a = q, z = 1 gives 1 - q^2.
        let za = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 1),
            (Symbol::A, 1),
        ]));
        let mut x = QSeries::one(3);
        x.coeffs[1] = -&za;
        let bindings =
            Bindings::new()
                .bind(Symbol::A, Sign::Plus, 1)
                .bind(Symbol::Z, Sign::Plus, 0);
        assert_eq!(x.specialize(&bindings).unwrap(), int_series(3, &[1, 0, -1]));
    }

    #[test]
    fn specialize_negative_exponent_sign_binding() {
        // z^{-1} q at z = -1 gives -q.
        let z_inv = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, -1));
        let x = QSeries::term(2, 1, z_inv);
        let bindings = Bindings::new().bind(Symbol::Z, Sign::Minus, 0);
        assert_eq!(x.specialize(&bindings).unwrap(), int_series(2, &[0, -1]));
    }

    #[test]
    fn first_mismatch_reports_smallest_exponent() {
        let x = QSeries::one(6);
        let mut y = QSeries::one(6);
        y.coeffs[6] = SymbolicCoefficient::from_int(1);
        assert_eq!(x.first_mismatch(&x).unwrap(), None);
        let (k, lhs, rhs) = x.first_mismatch(&y).unwrap().unwrap();
        assert_eq!(k, 6);
        assert!(lhs.is_zero());
        assert!(rhs.is_one());
    }

    #[test]
    fn coeff_index_out_of_order() {
        let x = QSeries::one(3);
        assert!(matches!(
            x.coeff(4),
            Err(SeriesError::IndexOutOfOrder { index: 4, order: 3 })
        ));
    }

    #[test]
    fn json_omits_zero_terms() {
        let x = int_series(3, &[1, 0, -2]);
        assert_eq!(
            x.to_json().to_string(),
            r#"{"order":3,"terms":[{"coeff":[{"c":"1","m":{}}],"q":0},{"coeff":[{"c":"-2","m":{}}],"q":2}]}"#
        );
    }

    #[test]
    fn csv_requires_symbol_free() {
        let x = int_series(2, &[1, 0, -2]);
        assert_eq!(x.to_csv().unwrap(), "0,1\n1,0\n2,-2\n");
        let y = QSeries::constant(1, SymbolicCoefficient::symbol(Symbol::A));
        assert_eq!(y.to_csv(), Err(SeriesError::SymbolicSeries));
    }

    #[test]
    fn big_coefficients_survive_convolution() {
        let big: BigInt = BigInt::from(1) << 100;
        let x = QSeries::from_coeffs(vec![
            SymbolicCoefficient::one(),
            SymbolicCoefficient::from_term(Monomial::ONE, big.clone()),
        ]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.coeff(1).unwrap().as_integer().unwrap(), big.clone() << 1);
    }
}
