//! Integer partitions in frequency notation, the statistics `t`, `p_j`,
//! `r_j`, and the weighted counting that mirrors the series side.
//!
//! A partition is the vector of frequencies `(f_1, f_2, ...)`: index `i`
//! counts the occurrences of part `i`. Two classes matter beyond "all":
//! distinct partitions (every frequency at most 1) and the class of
//! partitions whose repeated parts are confined to the initial frequency
//! chain (`p_2 <= t`).
//!
//! The weights come in two flavours per side: a reduced closed form
//! ([`weight_w`], [`weight_what`]) and the unreduced alternating sums over
//! pair/triple decompositions ([`raw_weight_lhs`], [`raw_weight_rhs`]).
//! [`decompose_lhs`] and [`decompose_rhs`] materialize those decompositions
//! so the closed forms can be checked against first principles.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::qseries::QSeries;
use crate::symcoeff::{Sign, SymbolicCoefficient};

/// A partition in frequency notation; `freqs[i]` is the frequency of part
/// `i + 1`. Trailing zeros are trimmed, so the empty vector is the unique
/// partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    freqs: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Partition {
        Partition { freqs: Vec::new() }
    }

    /// Canonicalize a frequency vector (trim trailing zeros).
    pub fn from_freqs(mut freqs: Vec<u32>) -> Partition {
        while freqs.last() == Some(&0) {
            freqs.pop();
        }
        Partition { freqs }
    }

    /// Build from a list of parts, e.g. `[1, 5]` for `(1^1, 5^1)`.
    pub fn from_parts(parts: &[u32]) -> Partition {
        let mut freqs = Vec::new();
        for &part in parts {
            assert!(part >= 1, "parts are positive");
            if part as usize > freqs.len() {
                freqs.resize(part as usize, 0);
            }
            freqs[part as usize - 1] += 1;
        }
        Partition::from_freqs(freqs)
    }

    pub fn freqs(&self) -> &[u32] {
        &self.freqs
    }

    /// Frequency of part `i` (1-based); 0 beyond the stored range.
    pub fn freq(&self, part: u32) -> u32 {
        assert!(part >= 1);
        self.freqs.get(part as usize - 1).copied().unwrap_or(0)
    }

    /// `|pi| = sum i * f_i`.
    pub fn size(&self) -> u64 {
        self.freqs
            .iter()
            .enumerate()
            .map(|(i, &f)| (i as u64 + 1) * f as u64)
            .sum()
    }

    /// `#(pi) = sum f_i`, the number of parts.
    pub fn num_parts(&self) -> u64 {
        self.freqs.iter().map(|&f| f as u64).sum()
    }

    /// `t(pi)`: the length of the initial frequency chain, i.e. the largest
    /// `t` with `f_1, ..., f_t` all nonzero (0 when `f_1 = 0`).
    pub fn chain_len(&self) -> u32 {
        self.freqs.iter().take_while(|&&f| f >= 1).count() as u32
    }

    /// `p_j(pi)`: the largest part size with frequency >= j, or 0 if none.
    pub fn p_stat(&self, j: u32) -> u32 {
        assert!(j >= 1);
        self.freqs
            .iter()
            .rposition(|&f| f >= j)
            .map(|i| i as u32 + 1)
            .unwrap_or(0)
    }

    /// `r_j(pi)`: the number of distinct part sizes with frequency >= j.
    pub fn r_stat(&self, j: u32) -> u32 {
        assert!(j >= 1);
        self.freqs.iter().filter(|&&f| f >= j).count() as u32
    }

    /// No frequency exceeds 1.
    pub fn is_distinct(&self) -> bool {
        self.freqs.iter().all(|&f| f <= 1)
    }

    /// Repeated parts are confined to the initial chain: `p_2 <= t`.
    pub fn is_chain_confined(&self) -> bool {
        self.p_stat(2) <= self.chain_len()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for (i, &freq) in self.freqs.iter().enumerate() {
            if freq == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}^{}", i + 1, freq)?;
        }
        f.write_str(")")
    }
}

/// The partition classes the weighted identities range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionClass {
    /// Every partition.
    All,
    /// Distinct partitions (all frequencies at most 1).
    Distinct,
    /// Partitions whose repeated parts are confined to the initial chain
    /// (`p_2 <= t`).
    ChainConfined,
}

impl PartitionClass {
    pub fn contains(self, partition: &Partition) -> bool {
        match self {
            PartitionClass::All => true,
            PartitionClass::Distinct => partition.is_distinct(),
            PartitionClass::ChainConfined => partition.is_chain_confined(),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            PartitionClass::All => "all",
            PartitionClass::Distinct => "d",
            PartitionClass::ChainConfined => "a",
        }
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// All partitions of `n` in the class, in ascending lexicographic order of
/// frequency vectors.
pub fn enumerate(n: u32, class: PartitionClass) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut freqs: Vec<u32> = Vec::new();
    enumerate_rec(1, n, class, &mut freqs, &mut out);
    out
}

fn enumerate_rec(
    part: u32,
    remaining: u32,
    class: PartitionClass,
    freqs: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        let partition = Partition::from_freqs(freqs.clone());
        if class.contains(&partition) {
            out.push(partition);
        }
        return;
    }
    if part > remaining {
        return;
    }
    for f in 0..=remaining / part {
        freqs.push(f);
        enumerate_rec(part + 1, remaining - part * f, class, freqs, out);
        freqs.pop();
    }
}

/// The statistics bundle for a partition, with `p_j` and `r_j` reported for
/// `1 <= j <= max_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u64,
    pub parts: u64,
    pub chain: u32,
    p: Vec<u32>,
    r: Vec<u32>,
}

impl PartitionStats {
    pub fn p_stat(&self, j: u32) -> u32 {
        self.p[j as usize - 1]
    }

    pub fn r_stat(&self, j: u32) -> u32 {
        self.r[j as usize - 1]
    }

    pub fn max_j(&self) -> u32 {
        self.p.len() as u32
    }
}

pub fn stats(partition: &Partition, max_j: u32) -> PartitionStats {
    assert!(max_j >= 1);
    PartitionStats {
        size: partition.size(),
        parts: partition.num_parts(),
        chain: partition.chain_len(),
        p: (1..=max_j).map(|j| partition.p_stat(j)).collect(),
        r: (1..=max_j).map(|j| partition.r_stat(j)).collect(),
    }
}

/// Errors raised by the weight functions and decompositions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("partition is not distinct")]
    NotDistinct,
    #[error("partition has a repeated part outside its initial frequency chain")]
    NotInChainClass,
    #[error("weight `{weight}` is not defined on partition class `{class}`")]
    ClassWeightMismatch {
        weight: &'static str,
        class: &'static str,
    },
}

fn require_distinct(partition: &Partition) -> Result<(), WeightError> {
    if partition.is_distinct() {
        Ok(())
    } else {
        Err(WeightError::NotDistinct)
    }
}

fn require_chain_confined(partition: &Partition) -> Result<(), WeightError> {
    if partition.is_chain_confined() {
        Ok(())
    } else {
        Err(WeightError::NotInChainClass)
    }
}

fn parity_sign(exponent: u64) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The distinct-side closed-form weight
/// `w_i = [1 - f_1 (1 - (-1)^t)/2] * (-1)^{i #}` for `i` in {1, 2}.
pub fn weight_w(partition: &Partition, i: u8) -> Result<BigInt, WeightError> {
    assert!(i == 1 || i == 2, "weight index must be 1 or 2");
    require_distinct(partition)?;
    let f1 = partition.freq(1) as i64;
    let t = partition.chain_len() as u64;
    let bracket = 1 - f1 * ((1 - parity_sign(t)) / 2);
    let sign = parity_sign(i as u64 * partition.num_parts());
    Ok(BigInt::from(bracket * sign))
}

/// The chain-confined-side closed-form weight
/// `w-hat_i = 2^{r_2} ((-1)^t + (-1)^{p_2})/2 * (-1)^{(i-1)(r_1 + t + p_2)}`.
pub fn weight_what(partition: &Partition, i: u8) -> Result<BigInt, WeightError> {
    assert!(i == 1 || i == 2, "weight index must be 1 or 2");
    require_chain_confined(partition)?;
    let t = partition.chain_len() as u64;
    let p2 = partition.p_stat(2) as u64;
    let r1 = partition.r_stat(1) as u64;
    let r2 = partition.r_stat(2);
    let half = (parity_sign(t) + parity_sign(p2)) / 2;
    let sign = parity_sign((i as u64 - 1) * (r1 + t + p2));
    Ok((BigInt::one() << r2) * BigInt::from(half * sign))
}

/// The unreduced distinct-side weight: the alternating sum
/// `sum_{k=0}^{t} (-e1)^{# - k} e2^k` over the pair decompositions.
pub fn raw_weight_lhs(partition: &Partition, e1: Sign, e2: Sign) -> Result<BigInt, WeightError> {
    require_distinct(partition)?;
    let parts = partition.num_parts();
    let t = partition.chain_len() as u64;
    let mut total = 0i64;
    for k in 0..=t {
        let lead = e1.flip().pow(((parts - k) % 2) as i32).as_i64();
        let tail = e2.pow((k % 2) as i32).as_i64();
        total += lead * tail;
    }
    Ok(BigInt::from(total))
}

/// The unreduced chain-confined-side weight:
/// `2^{r_2} sum_{k=p_2}^{t} (-e1)^{r_1 - t - p_2 - k} e2^k`, with the sign
/// exponent read modulo 2 (it may be formally negative) and the empty sum
/// (`p_2 > t`) yielding 0.
pub fn raw_weight_rhs(partition: &Partition, e1: Sign, e2: Sign) -> Result<BigInt, WeightError> {
    require_chain_confined(partition)?;
    let t = partition.chain_len() as i64;
    let p2 = partition.p_stat(2) as i64;
    let r1 = partition.r_stat(1) as i64;
    let r2 = partition.r_stat(2);
    let mut total = 0i64;
    for k in p2..=t {
        let lead = e1
            .flip()
            .pow((r1 - t - p2 - k).rem_euclid(2) as i32)
            .as_i64();
        let tail = e2.pow((k.rem_euclid(2)) as i32).as_i64();
        total += lead * tail;
    }
    Ok((BigInt::one() << r2) * BigInt::from(total))
}

/// The staircase partition `(1^1, 2^1, ..., k^1)`.
fn staircase(k: u32) -> Partition {
    Partition::from_freqs(vec![1; k as usize])
}

/// All pair decompositions of a distinct partition: for `0 <= k <= t` the
/// staircase `pi_i = (1,...,k)` plus the distinct remainder `pi_d` with all
/// parts `>= k+1`. Exactly `t + 1` pairs, ordered by increasing `k`.
pub fn decompose_lhs(partition: &Partition) -> Result<Vec<(Partition, Partition)>, WeightError> {
    require_distinct(partition)?;
    let t = partition.chain_len();
    let mut pairs = Vec::with_capacity(t as usize + 1);
    for k in 0..=t {
        let mut rest = partition.freqs.clone();
        for part in 1..=k {
            rest[part as usize - 1] -= 1;
        }
        pairs.push((Partition::from_freqs(rest), staircase(k)));
    }
    Ok(pairs)
}

/// All triple decompositions of a chain-confined partition: for
/// `p_2 <= k <= t` the staircase `pi_i = (1,...,k)`, the overpartition
/// carrier `pi_o` absorbing every repetition (parts `<= k`), and the
/// distinct remainder `pi_d` (parts `>= k+1`). Exactly `t - p_2 + 1`
/// triples, ordered by increasing `k`.
pub fn decompose_rhs(
    partition: &Partition,
) -> Result<Vec<(Partition, Partition, Partition)>, WeightError> {
    require_chain_confined(partition)?;
    let t = partition.chain_len();
    let p2 = partition.p_stat(2);
    let mut triples = Vec::with_capacity((t - p2) as usize + 1);
    for k in p2..=t {
        let mut over = vec![0u32; k as usize];
        for part in 1..=k {
            over[part as usize - 1] = partition.freq(part) - 1;
        }
        let mut rest = vec![0u32; partition.freqs.len()];
        for part in k + 1..=partition.freqs.len() as u32 {
            rest[part as usize - 1] = partition.freq(part);
        }
        triples.push((
            Partition::from_freqs(rest),
            staircase(k),
            Partition::from_freqs(over),
        ));
    }
    Ok(triples)
}

/// The four weights of the bridge identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    W1,
    W2,
    WHat1,
    WHat2,
}

impl Weight {
    pub const ALL: [Weight; 4] = [Weight::W1, Weight::W2, Weight::WHat1, Weight::WHat2];

    pub fn tag(self) -> &'static str {
        match self {
            Weight::W1 => "w1",
            Weight::W2 => "w2",
            Weight::WHat1 => "what1",
            Weight::WHat2 => "what2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Weight> {
        Weight::ALL.into_iter().find(|w| w.tag() == tag)
    }

    /// The class the weight is defined on.
    pub fn domain(self) -> PartitionClass {
        match self {
            Weight::W1 | Weight::W2 => PartitionClass::Distinct,
            Weight::WHat1 | Weight::WHat2 => PartitionClass::ChainConfined,
        }
    }

    pub fn evaluate(self, partition: &Partition) -> Result<BigInt, WeightError> {
        match self {
            Weight::W1 => weight_w(partition, 1),
            Weight::W2 => weight_w(partition, 2),
            Weight::WHat1 => weight_what(partition, 1),
            Weight::WHat2 => weight_what(partition, 2),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The weighted generating function: slot `n` holds the sum of the weight
/// over all partitions of `n` in the class. The class must be the weight's
/// domain.
pub fn weighted_gf(
    n_max: usize,
    class: PartitionClass,
    weight: Weight,
) -> Result<QSeries, WeightError> {
    if class != weight.domain() {
        return Err(WeightError::ClassWeightMismatch {
            weight: weight.tag(),
            class: class.tag(),
        });
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut total = BigInt::zero();
        for partition in enumerate(n as u32, class) {
            total += weight.evaluate(&partition)?;
        }
        coeffs.push(SymbolicCoefficient::from_int(total));
    }
    Ok(QSeries::from_coeffs(coeffs))
}

/// One distinct-side row of the weighted table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctRow {
    pub partition: Partition,
    pub chain: u32,
    pub w1: BigInt,
    pub w2: BigInt,
}

/// One chain-confined-side row of the weighted table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRow {
    pub partition: Partition,
    pub chain: u32,
    pub p2: u32,
    pub r2: u32,
    pub what1: BigInt,
    pub r1: u32,
    pub what2: BigInt,
}

/// The two-class weighted table for a single size `n`, with per-column
/// totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub n: u32,
    pub d_rows: Vec<DistinctRow>,
    pub a_rows: Vec<ChainRow>,
    pub w1_total: BigInt,
    pub w2_total: BigInt,
    pub what1_total: BigInt,
    pub what2_total: BigInt,
}

pub fn table_report(n: u32) -> TableReport {
    let mut d_rows = Vec::new();
    for partition in enumerate(n, PartitionClass::Distinct) {
        let w1 = weight_w(&partition, 1).expect("enumerated as distinct");
        let w2 = weight_w(&partition, 2).expect("enumerated as distinct");
        d_rows.push(DistinctRow {
            chain: partition.chain_len(),
            partition,
            w1,
            w2,
        });
    }
    let mut a_rows = Vec::new();
    for partition in enumerate(n, PartitionClass::ChainConfined) {
        let what1 = weight_what(&partition, 1).expect("enumerated as chain-confined");
        let what2 = weight_what(&partition, 2).expect("enumerated as chain-confined");
        a_rows.push(ChainRow {
            chain: partition.chain_len(),
            p2: partition.p_stat(2),
            r2: partition.r_stat(2),
            r1: partition.r_stat(1),
            partition,
            what1,
            what2,
        });
    }
    TableReport {
        n,
        w1_total: d_rows.iter().map(|r| &r.w1).sum(),
        w2_total: d_rows.iter().map(|r| &r.w2).sum(),
        what1_total: a_rows.iter().map(|r| &r.what1).sum(),
        what2_total: a_rows.iter().map(|r| &r.what2).sum(),
        d_rows,
        a_rows,
    }
}

impl TableReport {
    /// Aligned text rendering: distinct rows on the left, chain-confined
    /// rows on the right.
    pub fn to_text(&self) -> String {
        let d_width = self
            .d_rows
            .iter()
            .map(|r| r.partition.to_string().len())
            .chain(["partition".len(), "total".len()])
            .max()
            .unwrap();
        let a_width = self
            .a_rows
            .iter()
            .map(|r| r.partition.to_string().len())
            .chain(["partition".len(), "total".len()])
            .max()
            .unwrap();
        let mut out = String::new();
        out.push_str(&format!(
            "weighted partitions of {}: distinct (D) | repeats confined to the initial chain (A)\n\n",
            self.n
        ));
        out.push_str(&format!(
            "{:<d_width$}  {:>2}  {:>4}  {:>4}   |  {:<a_width$}  {:>2}  {:>3}  {:>3}  {:>6}  {:>3}  {:>6}\n",
            "partition", "t", "w1", "w2", "partition", "t", "p2", "r2", "what1", "r1", "what2"
        ));
        let rows = self.d_rows.len().max(self.a_rows.len());
        for i in 0..rows {
            match self.d_rows.get(i) {
                Some(r) => out.push_str(&format!(
                    "{:<d_width$}  {:>2}  {:>4}  {:>4}   |",
                    r.partition.to_string(),
                    r.chain,
                    r.w1.to_string(),
                    r.w2.to_string()
                )),
                None => out.push_str(&format!(
                    "{:<d_width$}  {:>2}  {:>4}  {:>4}   |",
                    "", "", "", ""
                )),
            }
            match self.a_rows.get(i) {
                Some(r) => out.push_str(&format!(
                    "  {:<a_width$}  {:>2}  {:>3}  {:>3}  {:>6}  {:>3}  {:>6}\n",
                    r.partition.to_string(),
                    r.chain,
                    r.p2,
                    r.r2,
                    r.what1.to_string(),
                    r.r1,
                    r.what2.to_string()
                )),
                None => out.push('\n'),
            }
        }
        out.push_str(&format!(
            "{:<d_width$}  {:>2}  {:>4}  {:>4}   |  {:<a_width$}  {:>2}  {:>3}  {:>3}  {:>6}  {:>3}  {:>6}\n",
            "total",
            "",
            self.w1_total.to_string(),
            self.w2_total.to_string(),
            "total",
            "",
            "",
            "",
            self.what1_total.to_string(),
            "",
            self.what2_total.to_string()
        ));
        out
    }

    /// JSON rendering; weights are decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": {
                "rows": self.d_rows.iter().map(|r| json!({
                    "partition": r.partition.to_string(),
                    "t": r.chain,
                    "w1": r.w1.to_string(),
                    "w2": r.w2.to_string(),
                })).collect::<Vec<_>>(),
                "total": { "w1": self.w1_total.to_string(), "w2": self.w2_total.to_string() },
            },
            "a": {
                "rows": self.a_rows.iter().map(|r| json!({
                    "partition": r.partition.to_string(),
                    "t": r.chain,
                    "p2": r.p2,
                    "r2": r.r2,
                    "what1": r.what1.to_string(),
                    "r1": r.r1,
                    "what2": r.what2.to_string(),
                })).collect::<Vec<_>>(),
                "total": { "what1": self.what1_total.to_string(), "what2": self.what2_total.to_string() },
            },
        })
    }

    /// Flat CSV rendering with a `side` discriminator column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("side,partition,t,p2,r2,r1,weight1,weight2\n");
        for r in &self.d_rows {
            out.push_str(&format!(
                "d,\"{}\",{},,,,{},{}\n",
                r.partition, r.chain, r.w1, r.w2
            ));
        }
        out.push_str(&format!(
            "d,total,,,,,{},{}\n",
            self.w1_total, self.w2_total
        ));
        for r in &self.a_rows {
            out.push_str(&format!(
                "a,\"{}\",{},{},{},{},{},{}\n",
                r.partition, r.chain, r.p2, r.r2, r.r1, r.what1, r.what2
            ));
        }
        out.push_str(&format!(
            "a,total,,,,,{},{}\n",
            self.what1_total, self.what2_total
        ));
        out
    }
}
