//! Differential, Walsh and boomerang spectra.
//!
//! Every metric comes in two flavors: an optimized algorithm used everywhere,
//! and a literal-definition loop (`*_naive`) kept as an independent oracle
//! for cross-checking at small n.
//!
//! Conventions: the boomerang entry beta(a,b) counts solutions (x, alpha) of
//! the derivative system D_alpha F(x) = b, D_alpha F(x+a) = b. This is the
//! transpose of the table built from the literal F^{-1} definition; the two
//! have identical value multisets and maxima.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::PiecewiseSpec;
use crate::funcrep::Lut;
use crate::gf2n::Elt;
use crate::{Error, Result};

/// Largest n for which the dense boomerang table (2^{2n} u16 counters) is
/// allocated.
pub const BCT_MAX_N: u32 = 13;

/// Differential spectrum: uniformity, per-row maxima, and the multiset of
/// DDT values over all (a != 0, b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialSpectrum {
    pub uniformity: u32,
    /// row_max[a-1] = max_b delta(a, b) for a in 1..2^n.
    pub row_max: Vec<u32>,
    pub histogram: BTreeMap<u32, u64>,
}

impl DifferentialSpectrum {
    fn from_rows(rows: impl Iterator<Item = Vec<u32>>) -> Result<DifferentialSpectrum> {
        let mut row_max = Vec::new();
        let mut histogram = BTreeMap::new();
        for row in rows {
            let size = row.len() as u64;
            let sum: u64 = row.iter().map(|&c| c as u64).sum();
            if sum != size {
                return Err(Error::Internal(format!(
                    "DDT row sums to {sum}, expected {size}"
                )));
            }
            let mut max = 0;
            for &c in &row {
                max = max.max(c);
                *histogram.entry(c).or_insert(0) += 1;
            }
            row_max.push(max);
        }
        let uniformity = row_max.iter().copied().max().unwrap_or(0);
        Ok(DifferentialSpectrum {
            uniformity,
            row_max,
            histogram,
        })
    }
}

/// Exact DDT statistics in one pass over (a, x), O(2^n) working memory.
pub fn ddt(lut: &Lut) -> Result<DifferentialSpectrum> {
    let size = lut.field().size();
    let t = lut.table();
    DifferentialSpectrum::from_rows((1..size).map(|a| {
        let mut row = vec![0u32; size];
        for x in 0..size {
            row[(t[x] ^ t[x ^ a]) as usize] += 1;
        }
        row
    }))
}

/// Literal-definition DDT oracle: counts solutions of F(x+a)+F(x) = b for
/// every pair separately. O(2^{3n}); intended for n <= 8.
pub fn ddt_naive(lut: &Lut) -> Result<DifferentialSpectrum> {
    let size = lut.field().size();
    let t = lut.table();
    DifferentialSpectrum::from_rows((1..size).map(|a| {
        (0..size as u64)
            .map(|b| (0..size).filter(|&x| t[x ^ a] ^ t[x] == b).count() as u32)
            .collect()
    }))
}

/// Full 2^n x 2^n DDT, emitted only on explicit request.
pub fn ddt_full(lut: &Lut) -> Vec<Vec<u32>> {
    let size = lut.field().size();
    let t = lut.table();
    (0..size)
        .map(|a| {
            let mut row = vec![0u32; size];
            for x in 0..size {
                row[(t[x] ^ t[x ^ a]) as usize] += 1;
            }
            row
        })
        .collect()
}

/// Walsh spectrum summary: nonlinearity, max |W|, and the multiset of Walsh
/// values over all (a, b != 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshSpectrum {
    pub nonlinearity: u32,
    pub max_abs: u32,
    pub value_histogram: BTreeMap<i32, u64>,
}

struct WalshAcc {
    hist: Vec<u64>, // index = value + 2^n
    max_abs: u32,
    parseval_ok: bool,
}

impl WalshAcc {
    fn new(size: usize) -> WalshAcc {
        WalshAcc {
            hist: vec![0; 2 * size + 1],
            max_abs: 0,
            parseval_ok: true,
        }
    }
    fn merge(mut self, other: WalshAcc) -> WalshAcc {
        for (slot, v) in self.hist.iter_mut().zip(other.hist) {
            *slot += v;
        }
        self.max_abs = self.max_abs.max(other.max_abs);
        self.parseval_ok &= other.parseval_ok;
        self
    }
}

/// In-place fast Walsh-Hadamard transform; after the call,
/// v[u] = sum_x (-1)^{<u,x>} v_old[x].
fn fwht(v: &mut [i32]) {
    let mut h = 1;
    while h < v.len() {
        let mut i = 0;
        while i < v.len() {
            for j in i..i + h {
                let x = v[j];
                let y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
            i += 2 * h;
        }
        h *= 2;
    }
}

/// Walsh spectrum via one Hadamard transform per component b != 0:
/// O(n * 2^{2n}) total. The trace-form reindexing a -> (Tr(a*2^j))_j is a
/// bijection, so value multisets and maxima over a are unaffected by reading
/// the transform output in natural order. Parseval is checked per component.
pub fn walsh(lut: &Lut) -> Result<WalshSpectrum> {
    let field = lut.field();
    let size = field.size();
    let t = lut.table();

    let acc = (1..size as u64)
        .into_par_iter()
        .fold(
            || WalshAcc::new(size),
            |mut acc, b| {
                let mut v: Vec<i32> = (0..size)
                    .map(|x| 1 - 2 * field.trace_bit(field.mul(b, t[x])) as i32)
                    .collect();
                fwht(&mut v);
                let mut energy: u64 = 0;
                for &w in &v {
                    energy += (w as i64 * w as i64) as u64;
                    acc.hist[(w + size as i32) as usize] += 1;
                    acc.max_abs = acc.max_abs.max(w.unsigned_abs());
                }
                acc.parseval_ok &= energy == (size as u64) * (size as u64);
                acc
            },
        )
        .reduce(|| WalshAcc::new(size), WalshAcc::merge);

    if !acc.parseval_ok {
        return Err(Error::Internal(
            "Walsh component violates Parseval".into(),
        ));
    }
    Ok(summarize_walsh(acc, size))
}

fn summarize_walsh(acc: WalshAcc, size: usize) -> WalshSpectrum {
    let value_histogram: BTreeMap<i32, u64> = acc
        .hist
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| (i as i32 - size as i32, c))
        .collect();
    WalshSpectrum {
        nonlinearity: (size as u32) / 2 - acc.max_abs / 2,
        max_abs: acc.max_abs,
        value_histogram,
    }
}

/// Literal-definition Walsh oracle: W(a,b) = sum_x (-1)^{Tr(ax + bF(x))}
/// evaluated term by term. O(2^{3n}); intended for n <= 8.
pub fn walsh_naive(lut: &Lut) -> Result<WalshSpectrum> {
    let field = lut.field();
    let size = field.size();
    let t = lut.table();
    let mut acc = WalshAcc::new(size);
    for b in 1..size as u64 {
        let mut energy = 0u64;
        for a in 0..size as u64 {
            let mut w: i32 = 0;
            for x in 0..size as u64 {
                let e = field.trace_bit(field.add(field.mul(a, x), field.mul(b, t[x as usize])));
                w += 1 - 2 * e as i32;
            }
            energy += (w as i64 * w as i64) as u64;
            acc.hist[(w + size as i32) as usize] += 1;
            acc.max_abs = acc.max_abs.max(w.unsigned_abs());
        }
        if energy != (size as u64) * (size as u64) {
            return Err(Error::Internal(
                "Walsh component violates Parseval".into(),
            ));
        }
    }
    Ok(summarize_walsh(acc, size))
}

/// Lower bound on the nonlinearity of the inverse-modified Gold and
/// Bracken-Leander piecewise permutations: 2^{n-1} - 2^{n/2} - 2^{s/2+1}.
pub fn nl_lower_bound(n: u32, s: u32) -> Result<i64> {
    if !n.is_multiple_of(2) || !s.is_multiple_of(2) {
        return Err(Error::Construction(format!(
            "nonlinearity bound needs n and s even, got n={n}, s={s}"
        )));
    }
    if s == 0 || !n.is_multiple_of(s) {
        return Err(Error::Construction(format!(
            "nonlinearity bound needs s | n, got n={n}, s={s}"
        )));
    }
    Ok((1i64 << (n - 1)) - (1i64 << (n / 2)) - (1i64 << (s / 2 + 1)))
}

/// Dense boomerang table in the derivative-system convention:
/// entry (a,b) counts pairs (x, alpha) with D_alpha F(x) = D_alpha F(x+a) = b.
pub struct BctTable {
    n: u32,
    counts: Vec<u16>,
}

impl BctTable {
    #[inline]
    pub fn get(&self, a: Elt, b: Elt) -> u32 {
        self.counts[((a as usize) << self.n) | b as usize] as u32
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Boomerang spectrum summary over all a, b != 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomerangSpectrum {
    pub uniformity: u32,
    pub histogram: BTreeMap<u32, u64>,
    /// Quadrant maxima by subfield membership of (a, b), present when the
    /// field designates a subfield degree.
    pub case_partition: Option<BoomerangCasePartition>,
}

/// Max boomerang entry per membership quadrant; `in` means the nonzero
/// parameter lies in the designated subfield.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoomerangCasePartition {
    pub s: u32,
    pub max_in_in: u32,
    pub max_in_out: u32,
    pub max_out_in: u32,
    pub max_out_out: u32,
}

fn bct_precheck(lut: &Lut) -> Result<()> {
    let n = lut.field().n();
    if n > BCT_MAX_N {
        return Err(Error::Field(format!(
            "boomerang table at n={n} would need 2^{} counters; max supported n is {BCT_MAX_N}",
            2 * n
        )));
    }
    if !lut.is_permutation() {
        return Err(Error::NotPermutation(
            "boomerang uniformity is defined for permutations only".into(),
        ));
    }
    Ok(())
}

/// Full boomerang table by the bucket-pair method: for each alpha, inputs are
/// bucketed by b = D_alpha F(x); every unordered pair {x, x'} inside a bucket
/// contributes 2 to entry (x + x', b). Total work sum |bucket|^2 <= delta * 2^{2n}.
pub fn bct_full(lut: &Lut) -> Result<BctTable> {
    bct_precheck(lut)?;
    let n = lut.field().n();
    let size = lut.field().size();
    let t = lut.table();

    let mut counts = vec![0u16; size << n];
    let mut deriv = vec![0u64; size];
    let mut heads = vec![u32::MAX; size];
    let mut next = vec![u32::MAX; size];

    for alpha in 1..size {
        for x in 0..size {
            deriv[x] = t[x] ^ t[x ^ alpha];
        }
        for x in 0..size {
            let b = deriv[x] as usize;
            next[x] = heads[b];
            heads[b] = x as u32;
        }
        for x in 0..size {
            let b = deriv[x] as usize;
            let mut y = next[x];
            while y != u32::MAX {
                counts[((x ^ y as usize) << n) | b] += 2;
                y = next[y as usize];
            }
        }
        for x in 0..size {
            heads[deriv[x] as usize] = u32::MAX;
        }
    }
    Ok(BctTable { n, counts })
}

fn summarize_bct(lut: &Lut, get: impl Fn(Elt, Elt) -> u32) -> BoomerangSpectrum {
    let field = lut.field();
    let size = field.size() as u64;
    let mut histogram = BTreeMap::new();
    let mut uniformity = 0;
    let mut partition = field.subfield_degree().map(|s| BoomerangCasePartition {
        s,
        max_in_in: 0,
        max_in_out: 0,
        max_out_in: 0,
        max_out_out: 0,
    });
    let mask = field
        .subfield_degree()
        .map(|s| field.subfield_mask(s).expect("validated at construction"));
    for a in 1..size {
        for b in 1..size {
            let v = get(a, b);
            uniformity = uniformity.max(v);
            *histogram.entry(v).or_insert(0) += 1;
            if let (Some(p), Some(mask)) = (partition.as_mut(), mask.as_ref()) {
                let slot = match (mask[a as usize], mask[b as usize]) {
                    (true, true) => &mut p.max_in_in,
                    (true, false) => &mut p.max_in_out,
                    (false, true) => &mut p.max_out_in,
                    (false, false) => &mut p.max_out_out,
                };
                *slot = (*slot).max(v);
            }
        }
    }
    BoomerangSpectrum {
        uniformity,
        histogram,
        case_partition: partition,
    }
}

/// Boomerang spectrum of a permutation (bucket-pair algorithm).
pub fn bct(lut: &Lut) -> Result<BoomerangSpectrum> {
    let table = bct_full(lut)?;
    Ok(summarize_bct(lut, |a, b| table.get(a, b)))
}

/// Literal-definition boomerang oracle: counts solutions x of
/// F^{-1}(F(x)+a) + F^{-1}(F(x+b)+a) = b per entry, using the compositional
/// inverse. O(2^{3n}); intended for n <= 8.
pub fn bct_naive(lut: &Lut) -> Result<BoomerangSpectrum> {
    let table = bct_naive_full(lut)?;
    // The literal table is the transpose of the system-convention table, so
    // the summary (built over all a,b != 0) is identical.
    Ok(summarize_bct(lut, |a, b| table.get(b, a)))
}

/// Full table of the literal BCT definition, indexed (a, b) exactly as in
/// T_F(a,b). Equals the transpose of [`bct_full`].
pub fn bct_naive_full(lut: &Lut) -> Result<BctTable> {
    bct_precheck(lut)?;
    let n = lut.field().n();
    let size = lut.field().size();
    let t = lut.table();
    let inv = lut.invert()?;
    let ti = inv.table();

    let mut counts = vec![0u16; size << n];
    for a in 1..size {
        for b in 1..size {
            let mut c = 0u16;
            for x in 0..size {
                let lhs = ti[(t[x] ^ a as u64) as usize] ^ ti[(t[x ^ b] ^ a as u64) as usize];
                if lhs == b as u64 {
                    c += 1;
                }
            }
            debug_assert_eq!(c % 2, 0, "literal BCT entries pair up under x -> x+b");
            counts[(a << n) | b] = c;
        }
    }
    Ok(BctTable { n, counts })
}

/// Which bound of the case analysis applies to a boomerang entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoomerangCase {
    /// a, b both in the subfield: beta_f(a,b) + beta_g(a,b).
    BothIn,
    /// a in the subfield, b outside: beta_g(a,b).
    AIn,
    /// a outside, b in the subfield: beta_g(a,b). This case is absent from
    /// the bound statement and comes from its proof; it is flagged so
    /// reports can display it separately.
    BIn,
    /// a, b both outside: beta_g(a,b) + 4N + 2.
    BothOut,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseStats {
    pub case: BoomerangCase,
    pub entries: u64,
    pub max_beta: u32,
    pub max_bound: u32,
    /// Smallest bound - beta over the case; >= 0 iff the case passes.
    pub min_slack: i64,
}

/// Entrywise verification report for the piecewise boomerang case bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoomerangCaseReport {
    pub s: u32,
    pub beta: u32,
    pub cases: Vec<CaseStats>,
}

/// Checks every boomerang entry of a materialized piecewise permutation
/// against the applicable case bound:
///
/// * a, b in the subfield: beta_f(a,b) + beta_g(a,b), with beta_f computed
///   over GF(2^s);
/// * a in, b out: beta_g(a,b);
/// * a out, b in: beta_g(a,b) (from the proof of the case analysis);
/// * a, b out: beta_g(a,b) + 4N + 2, where N counts the alpha outside the
///   subfield for which f(x) + g(x + alpha) = b has a solution x in the
///   subfield.
///
/// Returns an error naming the witness entry on any violation.
pub fn boomerang_case_bounds(
    piece: &PiecewiseSpec,
    materialized: &Lut,
) -> Result<BoomerangCaseReport> {
    let field = piece.field();
    let size = field.size();
    let s = piece.s();

    if *materialized != piece.materialize()? {
        return Err(Error::Construction(
            "materialized table does not match the piecewise recipe".into(),
        ));
    }
    // The case analysis is only valid under hypothesis (H3); check it
    // rather than silently reporting a misleading bound violation.
    let h3 = crate::constructions::verify_h3(piece.g(), s)?;
    if !h3.holds {
        return Err(Error::Construction(format!(
            "piecewise g violates hypothesis (H3), case bounds do not apply: {}",
            h3.witness.unwrap_or_default()
        )));
    }

    let sub = field.subfield_elements(s)?;
    let mask = field.subfield_mask(s)?;

    let beta_cap = bct_full(materialized)?;
    let beta_g = bct_full(piece.g())?;

    // beta_f over the subfield, by direct enumeration of system solutions.
    let sub_index: std::collections::HashMap<Elt, usize> =
        sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let m = sub.len();
    let mut beta_f = vec![0u32; m * m];
    for &a in &sub[..] {
        if a == 0 {
            continue;
        }
        for &x in &sub {
            for &y in &sub {
                let b = piece.f_eval(x) ^ piece.f_eval(y);
                if b == 0 {
                    continue;
                }
                if piece.f_eval(x ^ a) ^ piece.f_eval(y ^ a) == b {
                    beta_f[sub_index[&a] * m + sub_index[&b]] += 1;
                }
            }
        }
    }

    // N(b) for b outside the subfield: distinct alpha outside the subfield
    // such that f(x) + g(x + alpha) = b for some subfield x.
    let words = size.div_ceil(64);
    let mut alpha_seen = vec![0u64; size * words];
    for &x in &sub {
        for alpha in 0..size as u64 {
            if mask[alpha as usize] {
                continue;
            }
            let b = piece.f_eval(x) ^ piece.g().eval(x ^ alpha);
            let slot = b as usize * words + (alpha as usize >> 6);
            alpha_seen[slot] |= 1u64 << (alpha & 63);
        }
    }
    let n_of_b: Vec<u32> = (0..size)
        .map(|b| {
            alpha_seen[b * words..(b + 1) * words]
                .iter()
                .map(|w| w.count_ones())
                .sum()
        })
        .collect();

    let mut stats: Vec<CaseStats> = [
        BoomerangCase::BothIn,
        BoomerangCase::AIn,
        BoomerangCase::BIn,
        BoomerangCase::BothOut,
    ]
    .into_iter()
    .map(|case| CaseStats {
        case,
        entries: 0,
        max_beta: 0,
        max_bound: 0,
        min_slack: i64::MAX,
    })
    .collect();
    let mut beta = 0;

    for a in 1..size as u64 {
        for b in 1..size as u64 {
            let v = beta_cap.get(a, b);
            beta = beta.max(v);
            let (idx, bound) = match (mask[a as usize], mask[b as usize]) {
                (true, true) => (
                    0,
                    beta_f[sub_index[&a] * m + sub_index[&b]] + beta_g.get(a, b),
                ),
                (true, false) => (1, beta_g.get(a, b)),
                (false, true) => (2, beta_g.get(a, b)),
                (false, false) => (3, beta_g.get(a, b) + 4 * n_of_b[b as usize] + 2),
            };
            if v > bound {
                return Err(Error::BoundViolation(format!(
                    "boomerang case bound fails at (a={a:#x}, b={b:#x}): beta={v} > bound={bound} ({:?})",
                    stats[idx].case
                )));
            }
            let st = &mut stats[idx];
            st.entries += 1;
            st.max_beta = st.max_beta.max(v);
            st.max_bound = st.max_bound.max(bound);
            st.min_slack = st.min_slack.min(bound as i64 - v as i64);
        }
    }

    Ok(BoomerangCaseReport {
        s,
        beta,
        cases: stats,
    })
}
