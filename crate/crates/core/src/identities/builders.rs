//! Series builders for both sides of every registered identity.
//!
//! Every sum over `n` stops at the first summand whose minimal q-valuation
//! exceeds the truncation order, so each builder is exact at its order.
//! Reciprocals only ever hit series with integer unit constant term.

use crate::qseries::{PochBase, QSeries, SeriesError};
use crate::symcoeff::{Monomial, Sign, Symbol, SymbolicCoefficient};

/// The triangular number `n(n+1)/2`, the q-valuation of the n-th summand
/// in all the single-sum identities here.
fn tri(n: usize) -> usize {
    n * (n + 1) / 2
}

fn isqrt(n: usize) -> usize {
    let mut root = 0;
    while (root + 1) * (root + 1) <= n {
        root += 1;
    }
    root
}

/// `(q; q)_n`.
fn q_factorial(n: u32, order: usize) -> QSeries {
    QSeries::poch_finite(&PochBase::q_pow(1), n, 1, order)
}

fn za_monomial() -> Monomial {
    Monomial::from_pairs(&[(Symbol::Z, 1), (Symbol::A, 1)])
}

/// `sign^n * z^n` as a ring element.
fn z_power(sign: Sign, n: usize) -> SymbolicCoefficient {
    SymbolicCoefficient::from_term(
        Monomial::pow(Symbol::Z, n as i32),
        sign.pow(n as i32).as_i64(),
    )
}

/// `F(a, z, q) = sum_{n>=0} (za)_n / ((q)_n (zq)_n) z^n q^{n(n+1)/2}`,
/// with `z_sign = Minus` building `F(a, -z, q)`.
pub(crate) fn f_function(order: usize, z_sign: Sign) -> Result<QSeries, SeriesError> {
    let za = PochBase::new(z_sign, za_monomial(), 0);
    let zq = PochBase::symbol(z_sign, Symbol::Z, 1);
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let summand = QSeries::poch_finite(&za, n as u32, 1, order)
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul(&QSeries::poch_finite(&zq, n as u32, 1, order).reciprocal()?)?
            .mul_term(&z_power(z_sign, n), tri(n));
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// `sum_{n>=0} (-aq)_n / (q)_n q^{n(n+1)/2}`.
pub(crate) fn lebesgue_lhs(order: usize) -> Result<QSeries, SeriesError> {
    let base = PochBase::symbol(Sign::Minus, Symbol::A, 1);
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let summand = QSeries::poch_finite(&base, n as u32, 1, order)
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul_term(&SymbolicCoefficient::one(), tri(n));
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// `(-aq^2; q^2)_inf / (q; q^2)_inf`.
pub(crate) fn lebesgue_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let numerator = QSeries::poch_infinite(&PochBase::symbol(Sign::Minus, Symbol::A, 2), 2, order)?;
    let denominator = QSeries::poch_infinite(&PochBase::q_pow(1), 2, order)?;
    numerator.mul(&denominator.reciprocal()?)
}

/// `sum_{n>=0} (-b/a)_n a^n q^{n(n+1)/2} / ((q)_n (bq)_n)` at the
/// specialization `a = a_sign * q^{a_pow}`. The factor `a^n (-b/a)_n` is
/// assembled directly as `prod_{i=0}^{n-1} (a + b q^i)`, which keeps every
/// q-exponent nonnegative even for `a_pow = 1`.
pub(crate) fn ramanujan_lhs(
    order: usize,
    a_sign: Sign,
    a_pow: u32,
) -> Result<QSeries, SeriesError> {
    let bq = PochBase::symbol(Sign::Plus, Symbol::B, 1);
    let b = SymbolicCoefficient::symbol(Symbol::B);
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let mut product = QSeries::one(order);
        for i in 0..n {
            let factor = QSeries::from_terms(
                order,
                [
                    (
                        a_pow as usize,
                        SymbolicCoefficient::from_int(a_sign.as_i64()),
                    ),
                    (i, b.clone()),
                ],
            );
            product = product.mul(&factor)?;
        }
        let summand = product
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul(&QSeries::poch_finite(&bq, n as u32, 1, order).reciprocal()?)?
            .mul_term(&SymbolicCoefficient::one(), tri(n));
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// `(-aq)_inf / (bq)_inf` at `a = a_sign * q^{a_pow}`.
pub(crate) fn ramanujan_rhs(
    order: usize,
    a_sign: Sign,
    a_pow: u32,
) -> Result<QSeries, SeriesError> {
    let numerator = QSeries::poch_infinite(
        &PochBase::new(a_sign.flip(), Monomial::ONE, 1 + a_pow as usize),
        1,
        order,
    )?;
    let denominator =
        QSeries::poch_infinite(&PochBase::symbol(Sign::Plus, Symbol::B, 1), 1, order)?;
    numerator.mul(&denominator.reciprocal()?)
}

/// `sum_{n>=0} (sza)_n (szq^{n+1})_inf / (q)_n (tz)^n q^{n(n+1)/2}` where
/// `s` is the Pochhammer-base sign and `t` the summand sign. The genuine
/// sides use `s = t`; the deliberately broken test fixture uses `s != t`.
fn evenness_sum(order: usize, base_sign: Sign, term_sign: Sign) -> Result<QSeries, SeriesError> {
    let za = PochBase::new(base_sign, za_monomial(), 0);
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let tail =
            QSeries::poch_infinite(&PochBase::symbol(base_sign, Symbol::Z, n + 1), 1, order)?;
        let summand = QSeries::poch_finite(&za, n as u32, 1, order)
            .mul(&tail)?
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul_term(&z_power(term_sign, n), tri(n));
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// One side of the z-evenness identity; `Minus` maps `z -> -z`.
pub(crate) fn evenness_side(order: usize, z_sign: Sign) -> Result<QSeries, SeriesError> {
    evenness_sum(order, z_sign, z_sign)
}

/// The sign-flipped right-hand side used by the mutation-sensitivity
/// check: the `(-z)^n` summand factor is replaced by `z^n` while the
/// Pochhammer bases keep their negated z.
pub(crate) fn evenness_mutant_rhs(order: usize) -> Result<QSeries, SeriesError> {
    evenness_sum(order, Sign::Minus, Sign::Plus)
}

/// `F(a, z, q) * (zq)_inf`.
pub(crate) fn raw_lhs(order: usize) -> Result<QSeries, SeriesError> {
    let zq_inf = QSeries::poch_infinite(&PochBase::symbol(Sign::Plus, Symbol::Z, 1), 1, order)?;
    f_function(order, Sign::Plus)?.mul(&zq_inf)
}

/// `(-zq)_inf * F(a, -z, q)`.
pub(crate) fn raw_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let neg_zq_inf =
        QSeries::poch_infinite(&PochBase::symbol(Sign::Minus, Symbol::Z, 1), 1, order)?;
    neg_zq_inf.mul(&f_function(order, Sign::Minus)?)
}

/// `(-zq)_inf / (zq)_inf * F(a, -z, q)`: the reciprocal-form cross-check
/// of the raw identity.
pub(crate) fn raw_recip_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let zq_inf = QSeries::poch_infinite(&PochBase::symbol(Sign::Plus, Symbol::Z, 1), 1, order)?;
    raw_rhs(order)?.mul(&zq_inf.reciprocal()?)
}

/// The z = 1 corollary sums:
/// `sum_{n>=0} (inf_sign q^{n+1})_inf [(-q)_n / (q)_n] term_sign^n q^{n(n+1)/2}`
/// with the overpartition factor present only on right-hand sides.
pub(crate) fn corollary_sum(
    order: usize,
    inf_sign: Sign,
    overpartition: bool,
    term_sign: Sign,
) -> Result<QSeries, SeriesError> {
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let mut summand =
            QSeries::poch_infinite(&PochBase::new(inf_sign, Monomial::ONE, n + 1), 1, order)?;
        if overpartition {
            summand = summand
                .mul(&QSeries::poch_finite(
                    &PochBase::neg_q_pow(1),
                    n as u32,
                    1,
                    order,
                ))?
                .mul(&q_factorial(n as u32, order).reciprocal()?)?;
        }
        let coefficient = SymbolicCoefficient::from_int(term_sign.pow(n as i32).as_i64());
        total.add_assign(&summand.mul_term(&coefficient, tri(n)))?;
        n += 1;
    }
    Ok(total)
}

/// Bilateral theta sum `sum_{n=-M}^{M} z^n q^{n^2}` with `M = floor(sqrt(N))`.
pub(crate) fn jtp_lhs(order: usize) -> Result<QSeries, SeriesError> {
    let bound = isqrt(order) as i64;
    Ok(QSeries::from_terms(
        order,
        (-bound..=bound).map(|n| {
            (
                (n * n) as usize,
                SymbolicCoefficient::from_monomial(Monomial::pow(Symbol::Z, n as i32)),
            )
        }),
    ))
}

/// `(-zq; q^2)_inf (-q/z; q^2)_inf (q^2; q^2)_inf`.
pub(crate) fn jtp_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let zq = QSeries::poch_infinite(&PochBase::symbol(Sign::Minus, Symbol::Z, 1), 2, order)?;
    let z_inv_q = QSeries::poch_infinite(
        &PochBase::new(Sign::Minus, Monomial::pow(Symbol::Z, -1), 1),
        2,
        order,
    )?;
    let euler_even = QSeries::poch_infinite(&PochBase::q_pow(2), 2, order)?;
    zq.mul(&z_inv_q)?.mul(&euler_even)
}

/// `sum_{n>=1} (-1)^n q^{n^2}`.
pub(crate) fn squares_lhs(order: usize) -> Result<QSeries, SeriesError> {
    let bound = isqrt(order);
    Ok(QSeries::from_terms(
        order,
        (1..=bound).map(|n| {
            (
                n * n,
                SymbolicCoefficient::from_int(Sign::Minus.pow(n as i32).as_i64()),
            )
        }),
    ))
}

/// `sum_{n>=1} (-1)^n q^{n(n+1)/2} / ((q)_n (1 + q^n))`.
pub(crate) fn squares_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let mut total = QSeries::zero(order);
    let mut n = 1;
    while tri(n) <= order {
        let one_plus_qn = QSeries::from_terms(
            order,
            [
                (0, SymbolicCoefficient::one()),
                (n, SymbolicCoefficient::one()),
            ],
        );
        let summand = q_factorial(n as u32, order)
            .reciprocal()?
            .mul(&one_plus_qn.reciprocal()?)?
            .mul_term(
                &SymbolicCoefficient::from_int(Sign::Minus.pow(n as i32).as_i64()),
                tri(n),
            );
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// `(q)_inf`.
pub(crate) fn prodratio_lhs(order: usize) -> Result<QSeries, SeriesError> {
    QSeries::poch_infinite(&PochBase::q_pow(1), 1, order)
}

/// `(-q)_inf (q; q^2)_inf^2 (q^2; q^2)_inf`.
pub(crate) fn prodratio_rhs(order: usize) -> Result<QSeries, SeriesError> {
    let neg_euler = QSeries::poch_infinite(&PochBase::neg_q_pow(1), 1, order)?;
    let odd = QSeries::poch_infinite(&PochBase::q_pow(1), 2, order)?;
    let even = QSeries::poch_infinite(&PochBase::q_pow(2), 2, order)?;
    neg_euler.mul(&odd)?.mul(&odd)?.mul(&even)
}

/// Basic hypergeometric sum
/// `sum_{n>=0} (q^alpha)_n (q^beta)_n / ((q)_n (q^gamma)_n) q^{delta n}`.
pub(crate) fn heine_lhs(
    order: usize,
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
) -> Result<QSeries, SeriesError> {
    let mut total = QSeries::zero(order);
    let mut n = 0usize;
    while delta as usize * n <= order {
        let summand = QSeries::poch_finite(&PochBase::q_pow(alpha as usize), n as u32, 1, order)
            .mul(&QSeries::poch_finite(
                &PochBase::q_pow(beta as usize),
                n as u32,
                1,
                order,
            ))?
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul(
                &QSeries::poch_finite(&PochBase::q_pow(gamma as usize), n as u32, 1, order)
                    .reciprocal()?,
            )?
            .mul_term(&SymbolicCoefficient::one(), delta as usize * n);
        total.add_assign(&summand)?;
        n += 1;
    }
    Ok(total)
}

/// The transformed side of the Heine identity at `(q^alpha, q^beta,
/// q^gamma, q^delta)`:
/// `(c/b)_inf (bz)_inf / ((c)_inf (z)_inf)
///  * sum_{n>=0} (abz/c)_n (b)_n / ((q)_n (bz)_n) (c/b)^n`,
/// with the n-th factor pair `(c/b)^n (abz/c)_n` assembled as
/// `prod_{i=0}^{n-1} (q^{gamma-beta} - q^{alpha+delta+i})` so every
/// q-exponent stays nonnegative on the grid (`gamma > beta`, `delta >= 1`).
pub(crate) fn heine_rhs(
    order: usize,
    alpha: u32,
    beta: u32,
    gamma: u32,
    delta: u32,
) -> Result<QSeries, SeriesError> {
    let cb = (gamma - beta) as usize;
    let bz = (beta + delta) as usize;
    let prefactor = QSeries::poch_infinite(&PochBase::q_pow(cb), 1, order)?
        .mul(&QSeries::poch_infinite(&PochBase::q_pow(bz), 1, order)?)?
        .mul(&QSeries::poch_infinite(&PochBase::q_pow(gamma as usize), 1, order)?.reciprocal()?)?
        .mul(&QSeries::poch_infinite(&PochBase::q_pow(delta as usize), 1, order)?.reciprocal()?)?;

    let min_valuation = cb.min((alpha + delta) as usize);
    let mut total = QSeries::zero(order);
    let mut n = 0usize;
    while min_valuation * n <= order {
        let mut product = QSeries::one(order);
        for i in 0..n {
            let factor = QSeries::from_terms(
                order,
                [
                    (cb, SymbolicCoefficient::one()),
                    (
                        (alpha + delta) as usize + i,
                        SymbolicCoefficient::from_int(-1),
                    ),
                ],
            );
            product = product.mul(&factor)?;
        }
        let summand = product
            .mul(&QSeries::poch_finite(
                &PochBase::q_pow(beta as usize),
                n as u32,
                1,
                order,
            ))?
            .mul(&q_factorial(n as u32, order).reciprocal()?)?
            .mul(&QSeries::poch_finite(&PochBase::q_pow(bz), n as u32, 1, order).reciprocal()?)?;
        total.add_assign(&summand)?;
        n += 1;
    }
    prefactor.mul(&total)
}

/// `(-q)_inf * sum_{n>=0} (-1)^n q^{n(n+1)/2} / (-q)_n`: the false-theta
/// sum against the overpartition product, claimed coefficientwise >= 0.
pub(crate) fn positivity_series(order: usize) -> Result<QSeries, SeriesError> {
    let mut total = QSeries::zero(order);
    let mut n = 0;
    while tri(n) <= order {
        let summand = QSeries::poch_finite(&PochBase::neg_q_pow(1), n as u32, 1, order)
            .reciprocal()?
            .mul_term(
                &SymbolicCoefficient::from_int(Sign::Minus.pow(n as i32).as_i64()),
                tri(n),
            );
        total.add_assign(&summand)?;
        n += 1;
    }
    QSeries::poch_infinite(&PochBase::neg_q_pow(1), 1, order)?.mul(&total)
}

/// `(q^2; q^2)_inf`, the closed product the z = 1 specialization sums to.
pub(crate) fn even_euler_product(order: usize) -> Result<QSeries, SeriesError> {
    QSeries::poch_infinite(&PochBase::q_pow(2), 2, order)
}
