//! The acceptance suite: the fixed list of checks that gates the project,
//! shared by the `acceptance` integration test and the CLI `suite`
//! command. Every check is exact -- equality of truncated series, exact
//! integer weights, exact sign scans -- at the orders pinned here.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::identities::{mutant_thm1_rhs, Registry, Side};
use crate::partitions::{
    decompose_lhs, decompose_rhs, enumerate, raw_weight_lhs, raw_weight_rhs, table_report,
    weight_w, weight_what, weighted_gf, Partition, PartitionClass, Weight,
};
use crate::qseries::{PochBase, QSeries};
use crate::symcoeff::{Bindings, Sign, Symbol, SymbolicCoefficient};

/// The outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    /// One-line rendering, e.g. `[ 3/12] PASS lebesgue-ramanujan: ...`.
    pub fn line(&self) -> String {
        format!(
            "[{:>2}/12] {} {}: {} ({} ms)",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_millis()
        )
    }
}

fn run(
    number: usize,
    name: &'static str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<String, String>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    if let Some(budget) = budget {
        if passed && elapsed > budget {
            passed = false;
            detail = format!(
                "{detail}; exceeded the {} s runtime budget ({} ms)",
                budget.as_secs(),
                elapsed.as_millis()
            );
        }
    }
    CriterionResult {
        number,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn check_pass(registry: &Registry, id: &str, order: usize) -> Result<(), String> {
    let report = registry
        .verify(id, order)
        .map_err(|e| format!("{id}: {e}"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(report.to_string())
    }
}

fn specialize_a_z(series: &QSeries, a_sign: Sign) -> Result<QSeries, String> {
    let bindings = Bindings::new()
        .bind(Symbol::A, a_sign, 1)
        .bind(Symbol::Z, Sign::Plus, 0);
    series.specialize(&bindings).map_err(|e| e.to_string())
}

fn expect_equal(label: &str, lhs: &QSeries, rhs: &QSeries) -> Result<(), String> {
    match lhs.first_mismatch(rhs).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some((q, l, r)) => Err(format!("{label}: mismatch at q^{q}: {l} vs {r}")),
    }
}

/// Run the entire acceptance suite; results come back in criterion order.
pub fn run_acceptance() -> Vec<CriterionResult> {
    let registry = Registry::standard();

    vec![
        run(
            1,
            "evenness-symbolic",
            Some(Duration::from_secs(10)),
            || {
                check_pass(&registry, "thm1", 30)?;
                Ok("thm1 lhs = rhs exactly as symbolic series in a, z through q^30".into())
            },
        ),
        run(2, "raw-cross-multiplied", None, || {
            check_pass(&registry, "raw", 30)?;
            check_pass(&registry, "raw-recip", 30)?;
            Ok("F(a,z,q)(zq)_inf = (-zq)_inf F(a,-z,q) through q^30, both forms".into())
        }),
        run(3, "lebesgue-ramanujan", None, || {
            check_pass(&registry, "lebesgue", 40)?;
            for id in ["ramanujan:a=1", "ramanujan:a=q", "ramanujan:a=-q"] {
                check_pass(&registry, id, 40)?;
            }
            Ok(
                "lebesgue symbolic in a and all three ramanujan specializations through q^40"
                    .into(),
            )
        }),
        run(4, "corollary-specializations", None, || {
            check_pass(&registry, "cor1a", 40)?;
            check_pass(&registry, "cor1b", 40)?;
            let order = 40;
            let thm1_lhs = registry
                .build_side("thm1", Side::Lhs, order)
                .map_err(|e| e.to_string())?;
            let thm1_rhs = registry
                .build_side("thm1", Side::Rhs, order)
                .map_err(|e| e.to_string())?;
            let side = |id: &str, side: Side| {
                registry
                    .build_side(id, side, order)
                    .map_err(|e| e.to_string())
            };
            expect_equal(
                "thm1 lhs at (q, 1) vs cor1a lhs",
                &specialize_a_z(&thm1_lhs, Sign::Plus)?,
                &side("cor1a", Side::Lhs)?,
            )?;
            expect_equal(
                "thm1 rhs at (q, 1) vs cor1a rhs",
                &specialize_a_z(&thm1_rhs, Sign::Plus)?,
                &side("cor1a", Side::Rhs)?,
            )?;
            expect_equal(
                "thm1 lhs at (-q, 1) vs cor1b rhs",
                &specialize_a_z(&thm1_lhs, Sign::Minus)?,
                &side("cor1b", Side::Rhs)?,
            )?;
            expect_equal(
                "thm1 rhs at (-q, 1) vs cor1b lhs",
                &specialize_a_z(&thm1_rhs, Sign::Minus)?,
                &side("cor1b", Side::Lhs)?,
            )?;
            Ok("cor1a and cor1b through q^40, each side matching its thm1 specialization".into())
        }),
        run(5, "heine-grid", None, || {
            let ids: Vec<String> = registry
                .ids()
                .filter(|id| id.starts_with("heine:"))
                .map(String::from)
                .collect();
            if ids.len() != 24 {
                return Err(format!(
                    "expected 24 grid points, registry has {}",
                    ids.len()
                ));
            }
            for id in &ids {
                check_pass(&registry, id, 25)?;
            }
            Ok("all 24 grid specializations pass through q^25".into())
        }),
        run(6, "triple-product-family", None, || {
            check_pass(&registry, "jtp", 36)?;
            check_pass(&registry, "cor23", 100)?;
            check_pass(&registry, "prodratio", 100)?;
            Ok("jtp Laurent-symbolic in z through q^36; cor23 and prodratio through q^100".into())
        }),
        run(7, "weighted-table", None, || {
            check_table()?;
            Ok(
                "both weighted tables for n = 6 reproduced row by row, totals (0, 2) and (0, 2)"
                    .into(),
            )
        }),
        run(8, "weighted-bridge", Some(Duration::from_secs(60)), || {
            let order = 25;
            let pairs = [
                (Weight::W1, PartitionClass::Distinct, "cor1a", Side::Lhs),
                (Weight::W2, PartitionClass::Distinct, "cor1b", Side::Lhs),
                (
                    Weight::WHat1,
                    PartitionClass::ChainConfined,
                    "cor1a",
                    Side::Rhs,
                ),
                (
                    Weight::WHat2,
                    PartitionClass::ChainConfined,
                    "cor1b",
                    Side::Rhs,
                ),
            ];
            for (weight, class, id, side) in pairs {
                let gf = weighted_gf(order, class, weight).map_err(|e| e.to_string())?;
                let series = registry
                    .build_side(id, side, order)
                    .map_err(|e| e.to_string())?;
                expect_equal(
                    &format!("{} over {} vs {} {}", weight, class, id, side.tag()),
                    &gf,
                    &series,
                )?;
            }
            Ok(
                "all four weighted generating functions match their series sides through q^25"
                    .into(),
            )
        }),
        run(9, "closed-vs-raw-weights", None, || {
            let checked = check_weight_equivalence(20)?;
            Ok(format!(
                "closed forms, raw alternating sums, and decomposition oracles agree on {checked} partitions up to size 20"
            ))
        }),
        run(10, "positivity", None, || {
            for n in 0..=30u32 {
                for pi in enumerate(n, PartitionClass::Distinct) {
                    let w1 = weight_w(&pi, 1).map_err(|e| e.to_string())?;
                    let w2 = weight_w(&pi, 2).map_err(|e| e.to_string())?;
                    if w2 < BigInt::zero() || w2 != w1.abs() {
                        return Err(format!("w2 != |w1| at {pi}: w1 = {w1}, w2 = {w2}"));
                    }
                }
            }
            check_pass(&registry, "positivity", 200)?;
            Ok("w2 = |w1| >= 0 for all distinct partitions up to size 30; series nonnegative through q^200".into())
        }),
        run(11, "rho-limit", None, || {
            check_rho_limit(8)?;
            Ok("the rho^n part of (rho)_n is (-1)^n q^{n(n-1)/2} for n <= 8".into())
        }),
        run(12, "mutation-sensitivity", None, || {
            let order = 30;
            let lhs = registry
                .build_side("thm1", Side::Lhs, order)
                .map_err(|e| e.to_string())?;
            let mutant = mutant_thm1_rhs(order).map_err(|e| e.to_string())?;
            match lhs.first_mismatch(&mutant).map_err(|e| e.to_string())? {
                None => Err("sign-flipped rhs was not detected".into()),
                Some((q, _, _)) if q == 1 => Ok(format!(
                    "sign-flipped thm1 rhs rejected with first mismatch at q^{q}"
                )),
                Some((q, l, r)) => Err(format!(
                    "expected first mismatch at q^1, got q^{q}: {l} vs {r}"
                )),
            }
        }),
    ]
}

/// The reference weighted table for n = 6, straight from the worked
/// example: 4 distinct rows and 9 chain-confined rows.
fn check_table() -> Result<(), String> {
    let report = table_report(6);

    let expected_d: Vec<(&[u32], u32, i64, i64)> = vec![
        (&[6], 0, -1, 1),
        (&[1, 5], 1, 0, 0),
        (&[2, 4], 0, 1, 1),
        (&[1, 2, 3], 3, 0, 0),
    ];
    if report.d_rows.len() != expected_d.len() {
        return Err(format!(
            "expected 4 distinct rows, got {}",
            report.d_rows.len()
        ));
    }
    for (parts, t, w1, w2) in expected_d {
        let pi = Partition::from_parts(parts);
        let row = report
            .d_rows
            .iter()
            .find(|r| r.partition == pi)
            .ok_or_else(|| format!("distinct row {pi} missing"))?;
        if row.chain != t || row.w1 != BigInt::from(w1) || row.w2 != BigInt::from(w2) {
            return Err(format!(
                "distinct row {pi}: got (t={}, w1={}, w2={}), expected (t={t}, w1={w1}, w2={w2})",
                row.chain, row.w1, row.w2
            ));
        }
    }

    // (parts, t, p2, r2, what1, r1, what2)
    type ChainFixture = (&'static [u32], u32, u32, u32, i64, u32, i64);
    let expected_a: Vec<ChainFixture> = vec![
        (&[6], 0, 0, 0, 1, 1, -1),
        (&[1, 5], 1, 0, 0, 0, 2, 0),
        (&[2, 4], 0, 0, 0, 1, 2, 1),
        (&[1, 1, 4], 1, 1, 1, -2, 2, -2),
        (&[1, 2, 3], 3, 0, 0, 0, 3, 0),
        (&[1, 1, 1, 3], 1, 1, 1, -2, 2, -2),
        (&[1, 1, 1, 1, 2], 2, 1, 1, 0, 2, 0),
        (&[1, 1, 2, 2], 2, 2, 2, 4, 2, 4),
        (&[1, 1, 1, 1, 1, 1], 1, 1, 1, -2, 1, 2),
    ];
    if report.a_rows.len() != expected_a.len() {
        return Err(format!(
            "expected 9 chain-confined rows, got {}",
            report.a_rows.len()
        ));
    }
    for (parts, t, p2, r2, what1, r1, what2) in expected_a {
        let pi = Partition::from_parts(parts);
        let row = report
            .a_rows
            .iter()
            .find(|r| r.partition == pi)
            .ok_or_else(|| format!("chain-confined row {pi} missing"))?;
        if row.chain != t
            || row.p2 != p2
            || row.r2 != r2
            || row.what1 != BigInt::from(what1)
            || row.r1 != r1
            || row.what2 != BigInt::from(what2)
        {
            return Err(format!(
                "chain-confined row {pi}: got (t={}, p2={}, r2={}, what1={}, r1={}, what2={}), \
                 expected (t={t}, p2={p2}, r2={r2}, what1={what1}, r1={r1}, what2={what2})",
                row.chain, row.p2, row.r2, row.what1, row.r1, row.what2
            ));
        }
    }

    let totals = [
        ("w1", &report.w1_total, 0i64),
        ("w2", &report.w2_total, 2),
        ("what1", &report.what1_total, 0),
        ("what2", &report.what2_total, 2),
    ];
    for (label, got, expected) in totals {
        if *got != BigInt::from(expected) {
            return Err(format!("{label} total: got {got}, expected {expected}"));
        }
    }
    Ok(())
}

/// The decomposition-based first-principles weight: sum the explicit pair
/// weights `(-e1)^{#(pi_d)} e2^{#(pi_i)}`.
fn oracle_lhs(pi: &Partition, e1: Sign, e2: Sign) -> Result<BigInt, String> {
    let mut total = BigInt::zero();
    for (d, i) in decompose_lhs(pi).map_err(|e| e.to_string())? {
        let lead = e1.flip().pow((d.num_parts() % 2) as i32).as_i64();
        let tail = e2.pow((i.num_parts() % 2) as i32).as_i64();
        total += lead * tail;
    }
    Ok(total)
}

/// Triple-decomposition oracle: each overpartition carrier contributes its
/// own `2^{r_1(pi_o)}` overlining count.
fn oracle_rhs(pi: &Partition, e1: Sign, e2: Sign) -> Result<BigInt, String> {
    let mut total = BigInt::zero();
    for (d, i, o) in decompose_rhs(pi).map_err(|e| e.to_string())? {
        let lead = e1.flip().pow((d.num_parts() % 2) as i32).as_i64();
        let tail = e2.pow((i.num_parts() % 2) as i32).as_i64();
        total += (BigInt::from(1) << o.r_stat(1)) * BigInt::from(lead * tail);
    }
    Ok(total)
}

/// Criterion 9's body: all four (weight, sign-pair) assignments, checked
/// against both the raw alternating sums and the decomposition oracles.
fn check_weight_equivalence(n_max: u32) -> Result<usize, String> {
    let mut checked = 0usize;
    for n in 0..=n_max {
        for pi in enumerate(n, PartitionClass::All) {
            if pi.is_distinct() {
                let cases = [(1u8, Sign::Plus, Sign::Plus), (2, Sign::Minus, Sign::Minus)];
                for (i, e1, e2) in cases {
                    let closed = weight_w(&pi, i).map_err(|e| e.to_string())?;
                    let raw = raw_weight_lhs(&pi, e1, e2).map_err(|e| e.to_string())?;
                    let oracle = oracle_lhs(&pi, e1, e2)?;
                    if closed != raw || raw != oracle {
                        return Err(format!(
                            "distinct-side mismatch at {pi} (i = {i}): closed {closed}, raw {raw}, oracle {oracle}"
                        ));
                    }
                }
            }
            if pi.is_chain_confined() {
                let cases = [(1u8, Sign::Minus, Sign::Minus), (2, Sign::Plus, Sign::Plus)];
                for (i, e1, e2) in cases {
                    let closed = weight_what(&pi, i).map_err(|e| e.to_string())?;
                    let raw = raw_weight_rhs(&pi, e1, e2).map_err(|e| e.to_string())?;
                    let oracle = oracle_rhs(&pi, e1, e2)?;
                    if closed != raw || raw != oracle {
                        return Err(format!(
                            "chain-side mismatch at {pi} (i = {i}): closed {closed}, raw {raw}, oracle {oracle}"
                        ));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Criterion 11: extract the rho^n part of `(rho)_n` per q-slot and compare
/// with the single term `(-1)^n q^{n(n-1)/2}`.
fn check_rho_limit(n_max: usize) -> Result<(), String> {
    let order = 30;
    for n in 0..=n_max {
        let series = QSeries::poch_finite(
            &PochBase::symbol(Sign::Plus, Symbol::Rho, 0),
            n as u32,
            1,
            order,
        );
        let extracted = series.symbol_coefficient(Symbol::Rho, n as i32);
        let expected = QSeries::term(
            order,
            n * n.saturating_sub(1) / 2,
            SymbolicCoefficient::from_int(Sign::Minus.pow(n as i32).as_i64()),
        );
        if extracted != expected {
            return Err(format!(
                "rho^{n} extraction of (rho)_{n} is not the expected single term"
            ));
        }
    }
    Ok(())
}
