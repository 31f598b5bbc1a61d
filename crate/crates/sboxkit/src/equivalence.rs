//! CCZ-invariant profiles and invariant-based inequivalence distinguishing.
//!
//! The differential value histogram and the Walsh absolute-value histogram
//! are preserved by CCZ-equivalence; the fingerprint hashes exactly those
//! two fields. Algebraic degree and boomerang uniformity are displayed but
//! kept out of the fingerprint (the former is only EA-invariant, the latter
//! only affine/inverse-invariant); the boomerang value instead joins a
//! separate affine-class fingerprint.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::funcrep::Lut;
use crate::spectra::{self, BCT_MAX_N};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub n: u32,
    pub degree: u32,
    #[serde(rename = "delta_hist")]
    pub differential_histogram: BTreeMap<u32, u64>,
    #[serde(rename = "walsh_abs_hist")]
    pub walsh_abs_histogram: BTreeMap<u32, u64>,
    /// Boomerang uniformity; omitted for non-permutations and for n beyond
    /// the dense-table limit.
    pub beta: Option<u32>,
    /// Hash of the CCZ-invariant fields only.
    pub fingerprint: String,
    /// Hash of the CCZ-invariant fields plus the boomerang uniformity.
    pub affine_fingerprint: String,
}

fn hash_histograms(
    delta: &BTreeMap<u32, u64>,
    walsh_abs: &BTreeMap<u32, u64>,
    beta: Option<u32>,
) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"delta");
    for (v, c) in delta {
        hasher.update(v.to_le_bytes());
        hasher.update(c.to_le_bytes());
    }
    hasher.update(b"walsh");
    for (v, c) in walsh_abs {
        hasher.update(v.to_le_bytes());
        hasher.update(c.to_le_bytes());
    }
    if let Some(beta) = beta {
        hasher.update(b"beta");
        hasher.update(beta.to_le_bytes());
    }
    hasher.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Computes the invariant profile of a function.
pub fn profile(lut: &Lut) -> Result<InvariantProfile> {
    let differential_histogram = spectra::ddt(lut)?.histogram;
    let walsh = spectra::walsh(lut)?;
    let mut walsh_abs_histogram: BTreeMap<u32, u64> = BTreeMap::new();
    for (&v, &c) in &walsh.value_histogram {
        *walsh_abs_histogram.entry(v.unsigned_abs()).or_insert(0) += c;
    }
    let degree = lut.algebraic_degree()?;
    let beta = if lut.is_permutation() && lut.field().n() <= BCT_MAX_N {
        Some(spectra::bct(lut)?.uniformity)
    } else {
        None
    };
    let fingerprint = hash_histograms(&differential_histogram, &walsh_abs_histogram, None);
    let affine_fingerprint = hash_histograms(&differential_histogram, &walsh_abs_histogram, beta);
    Ok(InvariantProfile {
        n: lut.field().n(),
        degree,
        differential_histogram,
        walsh_abs_histogram,
        beta,
        fingerprint,
        affine_fingerprint,
    })
}

/// Outcome of invariant-based comparison; never claims equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distinguish {
    /// A CCZ-invariant field differs; the payload names it.
    Inequivalent(String),
    Unknown,
}

/// Compares the CCZ-invariant fields of two same-size functions.
pub fn distinguish(a: &Lut, b: &Lut) -> Result<Distinguish> {
    if a.field().n() != b.field().n() {
        return Err(Error::FieldMismatch(format!(
            "cannot compare functions on GF(2^{}) and GF(2^{})",
            a.field().n(),
            b.field().n()
        )));
    }
    let pa = profile(a)?;
    let pb = profile(b)?;
    Ok(distinguish_profiles(&pa, &pb))
}

pub fn distinguish_profiles(a: &InvariantProfile, b: &InvariantProfile) -> Distinguish {
    if a.differential_histogram != b.differential_histogram {
        return Distinguish::Inequivalent("differential histogram".into());
    }
    if a.walsh_abs_histogram != b.walsh_abs_histogram {
        return Distinguish::Inequivalent("walsh absolute-value histogram".into());
    }
    Distinguish::Unknown
}

/// Fingerprint classes of a family. The class count is a lower bound on the
/// number of CCZ classes.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    /// Classes as index sets into the input list, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub fingerprints: Vec<String>,
}

pub fn classify(luts: &[Lut]) -> Result<Classification> {
    if let Some(first) = luts.first() {
        for other in &luts[1..] {
            first.same_field(other)?;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut fingerprints: Vec<String> = Vec::new();
    for (i, lut) in luts.iter().enumerate() {
        let fp = profile(lut)?.fingerprint;
        match fingerprints.iter().position(|f| *f == fp) {
            Some(k) => classes[k].push(i),
            None => {
                fingerprints.push(fp);
                classes.push(vec![i]);
            }
        }
    }
    Ok(Classification {
        classes,
        fingerprints,
    })
}
