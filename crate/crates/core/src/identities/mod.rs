//! The identity registry and verifier.
//!
//! Each [`IdentityRecord`] pairs builders for the two sides of an identity
//! (or a single series plus a nonnegativity scan) with metadata. Both
//! sides are constructed independently as truncated series and compared
//! coefficient by coefficient -- a verification is exact at its order, with
//! no tolerance anywhere.
//!
//! Registered identities:
//! - `lebesgue` -- the classical Lebesgue identity, symbolic in `a`
//! - `ramanujan:a=1|a=q|a=-q` -- a Ramanujan summation, symbolic in `b`,
//!   at the three supported `a` specializations
//! - `thm1` -- evenness in `z` of the staircase sum with tail product
//! - `raw`, `raw-recip` -- the same identity in cross-multiplied and
//!   reciprocal form
//! - `cor1a`, `cor1b` -- its `(a, z) = (+-q, 1)` specializations
//! - `jtp` -- the Jacobi triple product, Laurent-symbolic in `z`
//! - `cor23` -- the alternating-squares consequence
//! - `prodratio` -- the Euler-product ratio used to derive it
//! - `heine:alpha,beta,gamma,delta` -- the second Heine transformation on
//!   a 24-point specialization grid
//! - `positivity` -- the false-theta times overpartition product, checked
//!   coefficientwise nonnegative
//! - `sumcheck` -- experimental: the `z = 1` specialization summed in
//!   closed form

pub(crate) mod builders;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::qseries::{QSeries, SeriesError};
use crate::symcoeff::{Sign, SymbolicCoefficient};

/// `F(a, z, q) = sum_{n>=0} (za)_n / ((q)_n (zq)_n) z^n q^{n(n+1)/2}`.
pub fn build_f(order: usize) -> Result<QSeries, SeriesError> {
    builders::f_function(order, Sign::Plus)
}

/// Errors raised by registry lookups and builders.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("builder precondition violated: {0}")]
    BuilderPrecondition(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which side of an identity to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        }
    }
}

type Builder = Box<dyn Fn(usize) -> Result<QSeries, SeriesError> + Send + Sync>;

/// A registered identity: builders for its sides plus metadata. A record
/// without a right-hand side is checked by scanning the left side for
/// nonnegative integer coefficients instead of comparing two series.
pub struct IdentityRecord {
    id: String,
    description: String,
    reference: String,
    default_order: usize,
    lhs: Builder,
    rhs: Option<Builder>,
}

impl IdentityRecord {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn reference(&self) -> &str {
        &self.reference
    }

    pub fn default_order(&self) -> usize {
        self.default_order
    }

    pub fn has_rhs(&self) -> bool {
        self.rhs.is_some()
    }

    fn build(&self, side: Side, order: usize) -> Result<QSeries, IdentityError> {
        if order < 1 {
            return Err(IdentityError::BuilderPrecondition(format!(
                "identity `{}` requires order >= 1",
                self.id
            )));
        }
        match side {
            Side::Lhs => Ok((self.lhs)(order)?),
            Side::Rhs => match &self.rhs {
                Some(rhs) => Ok(rhs(order)?),
                None => Err(IdentityError::BuilderPrecondition(format!(
                    "identity `{}` has no right-hand side",
                    self.id
                ))),
            },
        }
    }
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("default_order", &self.default_order)
            .field("has_rhs", &self.rhs.is_some())
            .finish()
    }
}

/// The pass/fail outcome of a verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn tag(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        }
    }
}

/// The first differing coefficient of a failed verification. For
/// nonnegativity scans `rhs` holds the violated bound, i.e. zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub q: usize,
    pub lhs: SymbolicCoefficient,
    pub rhs: SymbolicCoefficient,
}

/// The result of verifying one identity at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub order: usize,
    pub outcome: Outcome,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// `{"id", "order", "outcome", "first_mismatch", "elapsed_ms"}` with
    /// `first_mismatch` null on pass.
    pub fn to_json(&self) -> Value {
        let mismatch = match &self.first_mismatch {
            Some(m) => json!({ "q": m.q, "lhs": m.lhs.to_json(), "rhs": m.rhs.to_json() }),
            None => Value::Null,
        };
        json!({
            "id": self.id,
            "order": self.order,
            "outcome": self.outcome.tag(),
            "first_mismatch": mismatch,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(
                f,
                "{}: PASS (order {}, {} ms)",
                self.id,
                self.order,
                self.elapsed.as_millis()
            ),
            Some(m) => write!(
                f,
                "{}: FAIL (order {}) first mismatch at q^{}: lhs = {}, rhs = {} ({} ms)",
                self.id,
                self.order,
                m.q,
                m.lhs,
                m.rhs,
                self.elapsed.as_millis()
            ),
        }
    }
}

/// The immutable registry of all identities this crate can verify.
pub struct Registry {
    entries: BTreeMap<String, IdentityRecord>,
}

impl Registry {
    /// All identities, with their default verification orders.
    pub fn standard() -> Registry {
        let mut entries = BTreeMap::new();
        let mut add = |record: IdentityRecord| {
            let previous = entries.insert(record.id.clone(), record);
            assert!(previous.is_none(), "duplicate identity id");
        };

        add(IdentityRecord {
            id: "lebesgue".into(),
            description: "staircase sum with (-aq)_n numerator against the even/odd split product"
                .into(),
            reference: "Lebesgue identity".into(),
            default_order: 40,
            lhs: Box::new(builders::lebesgue_lhs),
            rhs: Some(Box::new(builders::lebesgue_rhs)),
        });

        for (label, sign, power) in [
            ("a=1", Sign::Plus, 0u32),
            ("a=q", Sign::Plus, 1),
            ("a=-q", Sign::Minus, 1),
        ] {
            add(IdentityRecord {
                id: format!("ramanujan:{label}"),
                description: format!(
                    "summation with symbolic b at the specialization {label} (a^n folded into the numerator product)"
                ),
                reference: "Ramanujan summation formula".into(),
                default_order: 40,
                lhs: Box::new(move |order| builders::ramanujan_lhs(order, sign, power)),
                rhs: Some(Box::new(move |order| {
                    builders::ramanujan_rhs(order, sign, power)
                })),
            });
        }

        add(IdentityRecord {
            id: "thm1".into(),
            description: "evenness in z: the tail-product staircase sum is invariant under z -> -z"
                .into(),
            reference: "z-evenness of the weighted staircase series".into(),
            default_order: 30,
            lhs: Box::new(|order| builders::evenness_side(order, Sign::Plus)),
            rhs: Some(Box::new(|order| {
                builders::evenness_side(order, Sign::Minus)
            })),
        });

        add(IdentityRecord {
            id: "raw".into(),
            description: "cross-multiplied form: F(a,z,q) (zq)_inf = (-zq)_inf F(a,-z,q)".into(),
            reference: "Heine transformation with one base sent to infinity".into(),
            default_order: 30,
            lhs: Box::new(builders::raw_lhs),
            rhs: Some(Box::new(builders::raw_rhs)),
        });

        add(IdentityRecord {
            id: "raw-recip".into(),
            description: "reciprocal form cross-check: F(a,z,q) = (-zq)_inf / (zq)_inf F(a,-z,q)"
                .into(),
            reference: "Heine transformation with one base sent to infinity".into(),
            default_order: 30,
            lhs: Box::new(|order| builders::f_function(order, Sign::Plus)),
            rhs: Some(Box::new(builders::raw_recip_rhs)),
        });

        add(IdentityRecord {
            id: "cor1a".into(),
            description: "(a,z) = (q,1) specialization: plain tails vs overpartition-weighted alternating tails".into(),
            reference: "z = 1 corollary, first form".into(),
            default_order: 40,
            lhs: Box::new(|order| builders::corollary_sum(order, Sign::Plus, false, Sign::Plus)),
            rhs: Some(Box::new(|order| {
                builders::corollary_sum(order, Sign::Minus, true, Sign::Minus)
            })),
        });

        add(IdentityRecord {
            id: "cor1b".into(),
            description: "(a,z) = (-q,1) specialization: alternating tails vs overpartition-weighted plain tails".into(),
            reference: "z = 1 corollary, second form".into(),
            default_order: 40,
            lhs: Box::new(|order| builders::corollary_sum(order, Sign::Minus, false, Sign::Minus)),
            rhs: Some(Box::new(|order| {
                builders::corollary_sum(order, Sign::Plus, true, Sign::Plus)
            })),
        });

        add(IdentityRecord {
            id: "jtp".into(),
            description: "bilateral theta sum against its triple product, Laurent-symbolic in z"
                .into(),
            reference: "Jacobi triple product".into(),
            default_order: 36,
            lhs: Box::new(builders::jtp_lhs),
            rhs: Some(Box::new(builders::jtp_rhs)),
        });

        add(IdentityRecord {
            id: "cor23".into(),
            description:
                "alternating squares equal the alternating staircase sum over (q)_n (1 + q^n)"
                    .into(),
            reference: "false theta consequence of the triple product at z = -1".into(),
            default_order: 100,
            lhs: Box::new(builders::squares_lhs),
            rhs: Some(Box::new(builders::squares_rhs)),
        });

        add(IdentityRecord {
            id: "prodratio".into(),
            description: "(q)_inf = (-q)_inf (q;q^2)_inf^2 (q^2;q^2)_inf, the product-ratio step"
                .into(),
            reference: "Euler product split".into(),
            default_order: 100,
            lhs: Box::new(builders::prodratio_lhs),
            rhs: Some(Box::new(builders::prodratio_rhs)),
        });

        for alpha in 0..=2u32 {
            for beta in 1..=2u32 {
                for gamma in beta + 1..=beta + 2 {
                    for delta in 1..=2u32 {
                        add(IdentityRecord {
                            id: format!("heine:{alpha},{beta},{gamma},{delta}"),
                            description: format!(
                                "second Heine transformation at (a,b,c,z) = (q^{alpha}, q^{beta}, q^{gamma}, q^{delta})"
                            ),
                            reference: "Heine transformation, second iterate".into(),
                            default_order: 25,
                            lhs: Box::new(move |order| {
                                builders::heine_lhs(order, alpha, beta, gamma, delta)
                            }),
                            rhs: Some(Box::new(move |order| {
                                builders::heine_rhs(order, alpha, beta, gamma, delta)
                            })),
                        });
                    }
                }
            }
        }

        add(IdentityRecord {
            id: "positivity".into(),
            description:
                "(-q)_inf times the alternating false-theta sum has nonnegative coefficients".into(),
            reference: "false theta positivity".into(),
            default_order: 200,
            lhs: Box::new(builders::positivity_series),
            rhs: None,
        });

        add(IdentityRecord {
            id: "sumcheck".into(),
            description: "experimental: the (a,z) = (q,1) specialization summed in closed form, (q^2;q^2)_inf".into(),
            reference: "q-Gauss style summation of the z = 1 case".into(),
            default_order: 40,
            lhs: Box::new(|order| builders::corollary_sum(order, Sign::Plus, false, Sign::Plus)),
            rhs: Some(Box::new(builders::even_euler_product)),
        });

        Registry { entries }
    }

    pub fn get(&self, id: &str) -> Result<&IdentityRecord, IdentityError> {
        self.entries
            .get(id)
            .ok_or_else(|| IdentityError::UnknownIdentity(id.to_string()))
    }

    /// Registered ids in deterministic (sorted) order.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn records(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.entries.values()
    }

    /// Build one side of a registered identity at the given order.
    pub fn build_side(&self, id: &str, side: Side, order: usize) -> Result<QSeries, IdentityError> {
        self.get(id)?.build(side, order)
    }

    /// Build both sides (or the single series) and compare. Two-sided
    /// entries are compared coefficient by coefficient; single-sided
    /// entries are scanned for nonnegative integer coefficients.
    pub fn verify(&self, id: &str, order: usize) -> Result<VerificationReport, IdentityError> {
        let record = self.get(id)?;
        let start = Instant::now();
        let first_mismatch = match &record.rhs {
            Some(_) => {
                let lhs = record.build(Side::Lhs, order)?;
                let rhs = record.build(Side::Rhs, order)?;
                lhs.first_mismatch(&rhs)?
                    .map(|(q, lhs, rhs)| Mismatch { q, lhs, rhs })
            }
            None => {
                let series = record.build(Side::Lhs, order)?;
                first_negative(&series)
            }
        };
        Ok(VerificationReport {
            id: record.id.clone(),
            order,
            outcome: if first_mismatch.is_none() {
                Outcome::Pass
            } else {
                Outcome::Fail
            },
            first_mismatch,
            elapsed: start.elapsed(),
        })
    }

    /// Verify every registered identity at its default order (or the
    /// override, clamped to the minimum order 1), in parallel, reporting
    /// in id order. Failures are reports, not errors.
    pub fn verify_all(&self, overrides: &BTreeMap<String, usize>) -> Vec<VerificationReport> {
        let jobs: Vec<(&str, usize)> = self
            .entries
            .values()
            .map(|record| {
                let order = overrides
                    .get(&record.id)
                    .copied()
                    .unwrap_or(record.default_order)
                    .max(1);
                (record.id.as_str(), order)
            })
            .collect();
        jobs.into_par_iter()
            .map(|(id, order)| {
                self.verify(id, order)
                    .expect("registered builders are total for order >= 1")
            })
            .collect()
    }
}

/// The first coefficient that is not a nonnegative integer, reported
/// against the zero bound.
fn first_negative(series: &QSeries) -> Option<Mismatch> {
    for (k, coefficient) in series.coeffs().iter().enumerate() {
        let negative = match coefficient.as_integer() {
            Some(value) => value < BigInt::zero(),
            None => true,
        };
        if negative {
            return Some(Mismatch {
                q: k,
                lhs: coefficient.clone(),
                rhs: SymbolicCoefficient::zero(),
            });
        }
    }
    None
}

/// The deliberately sign-flipped right-hand side of `thm1`, used by the
/// mutation-sensitivity check to prove the comparison is not vacuous.
pub fn mutant_thm1_rhs(order: usize) -> Result<QSeries, SeriesError> {
    builders::evenness_mutant_rhs(order)
}
