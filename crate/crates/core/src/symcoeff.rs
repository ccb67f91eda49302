//! The coefficient ring: sparse Laurent polynomials in the fixed symbol set
//! `{a, z, b, rho}` with arbitrary-precision integer coefficients.
//!
//! Every truncated q-series in this crate carries its coefficients in this
//! ring. `q` itself is deliberately *not* a symbol here -- the q-grading
//! (and with it every truncation decision) lives in [`crate::qseries`].
//! The symbol set is closed, which lets a monomial be a dense exponent
//! vector instead of a name->exponent map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// The closed set of symbols the coefficient ring knows about.
///
/// Ordering of the variants fixes the lexicographic monomial order used
/// for canonical term ordering and JSON dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A,
    Z,
    B,
    Rho,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::A, Symbol::Z, Symbol::B, Symbol::Rho];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::Z => "z",
            Symbol::B => "b",
            Symbol::Rho => "rho",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }

    fn index(self) -> usize {
        match self {
            Symbol::A => 0,
            Symbol::Z => 1,
            Symbol::B => 2,
            Symbol::Rho => 3,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sign, used for q-power substitutions and Pochhammer bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^exp`, which only depends on the parity of `exp`.
    pub fn pow(self, exp: i32) -> Sign {
        match (self, exp.rem_euclid(2)) {
            (Sign::Minus, 1) => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A power product of the ring symbols. Exponents may be negative
/// (Laurent); a zero exponent means the symbol is absent, so the dense
/// vector is canonical by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: [i32; 4],
}

impl Monomial {
    /// The empty power product (the multiplicative identity).
    pub const ONE: Monomial = Monomial { exps: [0; 4] };

    pub fn var(symbol: Symbol) -> Monomial {
        Monomial::pow(symbol, 1)
    }

    pub fn pow(symbol: Symbol, exponent: i32) -> Monomial {
        let mut exps = [0; 4];
        exps[symbol.index()] = exponent;
        Monomial { exps }
    }

    pub fn from_pairs(pairs: &[(Symbol, i32)]) -> Monomial {
        let mut exps = [0i32; 4];
        for &(symbol, exponent) in pairs {
            exps[symbol.index()] += exponent;
        }
        Monomial { exps }
    }

    pub fn exponent(&self, symbol: Symbol) -> i32 {
        self.exps[symbol.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 4]
    }

    /// Componentwise exponent addition (Laurent: sums may go negative).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0i32; 4];
        for (i, exp) in exps.iter_mut().enumerate() {
            *exp = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        Monomial { exps }
    }

    /// Symbols that actually occur, with their nonzero exponents.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.exps[s.index()] != 0)
            .map(|s| (s, self.exps[s.index()]))
    }

    fn to_json(self) -> Value {
        let mut map = serde_json::Map::new();
        for (symbol, exponent) in self.iter_nonzero() {
            map.insert(symbol.name().to_string(), json!(exponent));
        }
        Value::Object(map)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (symbol, exponent) in self.iter_nonzero() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if exponent == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{symbol}^{exponent}")?;
            }
        }
        Ok(())
    }
}

/// A substitution target: the bound symbol is replaced by `sign * q^qpower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QPower {
    pub sign: Sign,
    pub qpower: u32,
}

/// Symbol bindings for [`SymbolicCoefficient::substitute`].
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    map: BTreeMap<Symbol, QPower>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn bind(mut self, symbol: Symbol, sign: Sign, qpower: u32) -> Bindings {
        self.map.insert(symbol, QPower { sign, qpower });
        self
    }

    pub fn get(&self, symbol: Symbol) -> Option<QPower> {
        self.map.get(&symbol).copied()
    }
}

/// Errors raised while mapping symbols to signed q-powers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstituteError {
    #[error("symbol `{}` occurs but has no binding", .0.name())]
    UnboundSymbol(Symbol),
    #[error(
        "symbol `{}` occurs with negative exponent {exponent} but is bound to a positive q-power",
        symbol.name()
    )]
    NegativeValuation { symbol: Symbol, exponent: i32 },
}

/// An exact element of the coefficient ring: a canonical map from monomials
/// to nonzero big integers. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicCoefficient {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SymbolicCoefficient {
    pub fn zero() -> SymbolicCoefficient {
        SymbolicCoefficient::default()
    }

    pub fn one() -> SymbolicCoefficient {
        SymbolicCoefficient::from_int(1)
    }

    pub fn from_int(value: impl Into<BigInt>) -> SymbolicCoefficient {
        SymbolicCoefficient::from_term(Monomial::ONE, value)
    }

    /// `coefficient * monomial` as a one-term element (or zero).
    pub fn from_term(monomial: Monomial, coefficient: impl Into<BigInt>) -> SymbolicCoefficient {
        let coefficient = coefficient.into();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        SymbolicCoefficient { terms }
    }

    pub fn from_monomial(monomial: Monomial) -> SymbolicCoefficient {
        SymbolicCoefficient::from_term(monomial, 1)
    }

    pub fn symbol(symbol: Symbol) -> SymbolicCoefficient {
        SymbolicCoefficient::from_monomial(Monomial::var(symbol))
    }

    /// Canonicalize an arbitrary term list: merge duplicates, drop zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> SymbolicCoefficient {
        let mut result = SymbolicCoefficient::zero();
        for (monomial, coefficient) in terms {
            result.add_term(monomial, coefficient);
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// `Some(n)` iff the element is a pure integer (no symbols).
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Symbols occurring in at least one term.
    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|&s| self.terms.keys().any(|m| m.exponent(s) != 0))
            .collect()
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymbolicCoefficient) {
        for (monomial, coefficient) in &other.terms {
            self.add_term(*monomial, coefficient.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &SymbolicCoefficient) {
        for (monomial, coefficient) in &other.terms {
            self.add_term(*monomial, -coefficient.clone());
        }
    }

    /// Exact distributed product; monomial exponents add componentwise.
    pub fn mul(&self, other: &SymbolicCoefficient) -> SymbolicCoefficient {
        let mut result = SymbolicCoefficient::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                result.add_term(ma.mul(mb), ca * cb);
            }
        }
        result
    }

    /// Add `sign * monomial * other` into `self` (the Pochhammer-factor kernel).
    pub fn add_scaled(&mut self, other: &SymbolicCoefficient, monomial: &Monomial, sign: Sign) {
        for (m, c) in &other.terms {
            let scaled = match sign {
                Sign::Plus => c.clone(),
                Sign::Minus => -c.clone(),
            };
            self.add_term(monomial.mul(m), scaled);
        }
    }

    /// The ring endomorphism `symbol -> -symbol`: each term picks up the
    /// parity of its exponent in `symbol`.
    pub fn negate_symbol(&self, symbol: Symbol) -> SymbolicCoefficient {
        SymbolicCoefficient::from_terms(self.terms.iter().map(|(m, c)| {
            let flipped = if m.exponent(symbol).rem_euclid(2) == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            (*m, flipped)
        }))
    }

    /// The sub-polynomial multiplying `symbol^exponent`, with that symbol
    /// divided out of each surviving term.
    pub fn coefficient_of(&self, symbol: Symbol, exponent: i32) -> SymbolicCoefficient {
        SymbolicCoefficient::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(symbol) == exponent)
                .map(|(m, c)| (m.mul(&Monomial::pow(symbol, -exponent)), c.clone())),
        )
    }

    /// Image of the element under `symbol -> sign * q^qpower` for every
    /// bound symbol, returned as `(q-exponent contribution, integer)` pairs
    /// in increasing q-exponent order, zero contributions dropped.
    ///
    /// A binding with `qpower > 0` refuses negative exponents: the image
    /// would have a pole in q, which the series layer cannot absorb.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Vec<(usize, BigInt)>, SubstituteError> {
        let mut image: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (monomial, coefficient) in &self.terms {
            let mut shift: usize = 0;
            let mut sign = Sign::Plus;
            for (symbol, exponent) in monomial.iter_nonzero() {
                let binding = bindings
                    .get(symbol)
                    .ok_or(SubstituteError::UnboundSymbol(symbol))?;
                if binding.qpower > 0 {
                    if exponent < 0 {
                        return Err(SubstituteError::NegativeValuation { symbol, exponent });
                    }
                    shift += binding.qpower as usize * exponent as usize;
                }
                sign = sign * binding.sign.pow(exponent);
            }
            let signed = match sign {
                Sign::Plus => coefficient.clone(),
                Sign::Minus => -coefficient.clone(),
            };
            let entry = image.entry(shift).or_insert_with(BigInt::zero);
            *entry += signed;
        }
        Ok(image.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// JSON dump: an array of `{"m": {symbol: exponent}, "c": "<decimal>"}`
    /// objects in lexicographic monomial order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({ "m": m.to_json(), "c": c.to_string() }))
                .collect(),
        )
    }
}

impl Add for &SymbolicCoefficient {
    type Output = SymbolicCoefficient;
    fn add(self, rhs: &SymbolicCoefficient) -> SymbolicCoefficient {
        let mut result = self.clone();
        result.add_assign(rhs);
        result
    }
}

impl Sub for &SymbolicCoefficient {
    type Output = SymbolicCoefficient;
    fn sub(self, rhs: &SymbolicCoefficient) -> SymbolicCoefficient {
        let mut result = self.clone();
        result.sub_assign(rhs);
        result
    }
}

impl Mul for &SymbolicCoefficient {
    type Output = SymbolicCoefficient;
    fn mul(self, rhs: &SymbolicCoefficient) -> SymbolicCoefficient {
        SymbolicCoefficient::mul(self, rhs)
    }
}

impl Neg for &SymbolicCoefficient {
    type Output = SymbolicCoefficient;
    fn neg(self) -> SymbolicCoefficient {
        SymbolicCoefficient::from_terms(self.terms.iter().map(|(m, c)| (*m, -c.clone())))
    }
}

impl fmt::Display for SymbolicCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (monomial, coefficient)) in self.terms.iter().enumerate() {
            let magnitude = coefficient.abs();
            if i == 0 {
                if coefficient.is_negative() {
                    f.write_str("-")?;
                }
            } else if coefficient.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if monomial.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> SymbolicCoefficient {
        SymbolicCoefficient::symbol(s)
    }

    #[test]
    fn additive_inverse_cancels() {
        let z = sym(Symbol::Z);
        let sum = &z + &-&z;
        assert!(sum.is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let a = sym(Symbol::A);
        let one_plus_a = &SymbolicCoefficient::one() + &a;
        let sum = &one_plus_a + &a;
        let expected = SymbolicCoefficient::from_terms([
            (Monomial::ONE, BigInt::from(1)),
            (Monomial::var(Symbol::A), BigInt::from(2)),
        ]);
        assert_eq!(sum, expected);
    }

    #[test]
    fn big_integer_addition_is_exact() {
        // 2^200*m + 2^200*m = 2^201*m with no overflow.
        let m = Monomial::var(Symbol::B);
        let big: BigInt = BigInt::from(1) << 200;
        let x = SymbolicCoefficient::from_term(m, big.clone());
        let sum = &x + &x;
        assert_eq!(sum, SymbolicCoefficient::from_term(m, big << 1));
    }

    #[test]
    fn laurent_inverse_pair_multiplies_to_one() {
        let z = sym(Symbol::Z);
        let z_inv = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, -1));
        assert!(z.mul(&z_inv).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let za = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 1),
            (Symbol::A, 1),
        ]));
        let one = SymbolicCoefficient::one();
        let product = (&one - &za).mul(&(&one + &za));
        let z2a2 = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 2),
            (Symbol::A, 2),
        ]));
        assert_eq!(product, &one - &z2a2);
    }

    #[test]
    fn zero_annihilates() {
        let x = &sym(Symbol::A) + &sym(Symbol::Rho);
        assert!(SymbolicCoefficient::zero().mul(&x).is_zero());
    }

    #[test]
    fn substitute_direct_image() {
        // z*a at z=1, a=q gives the single pair (1, +1).
        let za = SymbolicCoefficient::from_monomial(Monomial::from_pairs(&[
            (Symbol::Z, 1),
            (Symbol::A, 1),
        ]));
        let bindings =
            Bindings::new()
                .bind(Symbol::Z, Sign::Plus, 0)
                .bind(Symbol::A, Sign::Plus, 1);
        assert_eq!(
            za.substitute(&bindings).unwrap(),
            vec![(1usize, BigInt::from(1))]
        );
    }

    #[test]
    fn substitute_cancellation_yields_empty_image() {
        // 1 - z^2 dies at z = -1.
        let one = SymbolicCoefficient::one();
        let z2 = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, 2));
        let x = &one - &z2;
        let bindings = Bindings::new().bind(Symbol::Z, Sign::Minus, 0);
        assert_eq!(x.substitute(&bindings).unwrap(), vec![]);
    }

    #[test]
    fn substitute_negative_exponent_at_sign_only_binding() {
        // (-1)^(-1) = -1.
        let z_inv = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, -1));
        let bindings = Bindings::new().bind(Symbol::Z, Sign::Minus, 0);
        assert_eq!(
            z_inv.substitute(&bindings).unwrap(),
            vec![(0usize, BigInt::from(-1))]
        );
    }

    #[test]
    fn substitute_unbound_symbol_errors() {
        let x = sym(Symbol::B);
        let bindings = Bindings::new().bind(Symbol::Z, Sign::Plus, 0);
        assert_eq!(
            x.substitute(&bindings),
            Err(SubstituteError::UnboundSymbol(Symbol::B))
        );
    }

    #[test]
    fn substitute_negative_valuation_errors() {
        let z_inv = SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, -1));
        let bindings = Bindings::new().bind(Symbol::Z, Sign::Plus, 1);
        assert_eq!(
            z_inv.substitute(&bindings),
            Err(SubstituteError::NegativeValuation {
                symbol: Symbol::Z,
                exponent: -1
            })
        );
    }

    #[test]
    fn negate_symbol_flips_odd_exponents() {
        // 1 + z + z^2 + a*z^3  ->  1 - z + z^2 - a*z^3
        let x = SymbolicCoefficient::from_terms([
            (Monomial::ONE, BigInt::from(1)),
            (Monomial::pow(Symbol::Z, 1), BigInt::from(1)),
            (Monomial::pow(Symbol::Z, 2), BigInt::from(1)),
            (
                Monomial::from_pairs(&[(Symbol::A, 1), (Symbol::Z, 3)]),
                BigInt::from(1),
            ),
        ]);
        let flipped = x.negate_symbol(Symbol::Z);
        let expected = SymbolicCoefficient::from_terms([
            (Monomial::ONE, BigInt::from(1)),
            (Monomial::pow(Symbol::Z, 1), BigInt::from(-1)),
            (Monomial::pow(Symbol::Z, 2), BigInt::from(1)),
            (
                Monomial::from_pairs(&[(Symbol::A, 1), (Symbol::Z, 3)]),
                BigInt::from(-1),
            ),
        ]);
        assert_eq!(flipped, expected);
        assert_eq!(flipped.negate_symbol(Symbol::Z), x);
    }

    #[test]
    fn coefficient_of_extracts_and_strips() {
        // rho^2 * (1 + a) + rho * z: the rho^2 part is 1 + a.
        let x = SymbolicCoefficient::from_terms([
            (Monomial::pow(Symbol::Rho, 2), BigInt::from(1)),
            (
                Monomial::from_pairs(&[(Symbol::Rho, 2), (Symbol::A, 1)]),
                BigInt::from(1),
            ),
            (
                Monomial::from_pairs(&[(Symbol::Rho, 1), (Symbol::Z, 1)]),
                BigInt::from(1),
            ),
        ]);
        let part = x.coefficient_of(Symbol::Rho, 2);
        assert_eq!(part, &SymbolicCoefficient::one() + &sym(Symbol::A));
    }

    #[test]
    fn json_dump_is_sorted_and_decimal() {
        let x = SymbolicCoefficient::from_terms([
            (Monomial::pow(Symbol::Z, -1), BigInt::from(-3)),
            (Monomial::var(Symbol::A), BigInt::from(1) << 70),
        ]);
        let dump = x.to_json().to_string();
        // Lexicographic on exponent vectors: [0,-1,..] sorts before
        // [1,0,..], so the z^{-1} term leads; big integers are decimal
        // strings.
        assert_eq!(
            dump,
            r#"[{"c":"-3","m":{"z":-1}},{"c":"1180591620717411303424","m":{"a":1}}]"#
        );
    }

    #[test]
    fn display_is_readable() {
        let x = SymbolicCoefficient::from_terms([
            (Monomial::ONE, BigInt::from(1)),
            (
                Monomial::from_pairs(&[(Symbol::A, 2), (Symbol::Z, 1)]),
                BigInt::from(-2),
            ),
        ]);
        assert_eq!(x.to_string(), "1 - 2*a^2*z");
        assert_eq!(SymbolicCoefficient::zero().to_string(), "0");
    }
}
