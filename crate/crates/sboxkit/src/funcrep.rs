//! Representations of vectorial Boolean functions F: GF(2^n) -> GF(2^n):
//! full lookup table, univariate polynomial, and algebraic normal form, with
//! exact conversions among them.
//!
//! The LUT is the universal carrier; the polynomial view is recovered by
//! interpolation over the field and the ANF by a Möbius transform applied to
//! all output coordinates at once.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::gf2n::{Elt, Field};
use crate::{Error, Result};

/// A function GF(2^n) -> GF(2^n) as a full lookup table, index = integer
/// encoding of the input. Immutable after materialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lut {
    field: Arc<Field>,
    table: Vec<Elt>,
}

impl Lut {
    pub fn new(field: Arc<Field>, table: Vec<Elt>) -> Result<Lut> {
        if table.len() != field.size() {
            return Err(Error::Format(format!(
                "lookup table has {} entries, expected {}",
                table.len(),
                field.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::Format(format!(
                "lookup table entry {bad:#x} out of range for GF(2^{})",
                field.n()
            )));
        }
        Ok(Lut { field, table })
    }

    pub fn from_fn(field: Arc<Field>, f: impl FnMut(Elt) -> Elt) -> Lut {
        let table = field.elements().map(f).collect();
        Lut { field, table }
    }

    /// The monomial x^e (with 0^0 = 1).
    pub fn monomial(field: Arc<Field>, e: u64) -> Lut {
        Lut::from_fn(field.clone(), |x| field.pow(x, e))
    }

    pub fn identity(field: Arc<Field>) -> Lut {
        Lut::from_fn(field, |x| x)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn table(&self) -> &[Elt] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: Elt) -> Elt {
        self.table[x as usize]
    }

    pub fn same_field(&self, other: &Lut) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "GF(2^{}) mod {:#x} vs GF(2^{}) mod {:#x}",
                self.field.n(),
                self.field.modulus(),
                other.field.n(),
                other.field.modulus()
            )))
        }
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &y in &self.table {
            let slot = &mut seen[y as usize];
            if *slot {
                return false;
            }
            *slot = true;
        }
        true
    }

    /// Compositional inverse by table transposition.
    pub fn invert(&self) -> Result<Lut> {
        let mut inv = vec![u64::MAX; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            if inv[y as usize] != u64::MAX {
                return Err(Error::NotPermutation(format!(
                    "outputs collide at {:#x}",
                    y
                )));
            }
            inv[y as usize] = x as u64;
        }
        Ok(Lut {
            field: self.field.clone(),
            table: inv,
        })
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Lut) -> Result<Lut> {
        self.same_field(other)?;
        let table = other.table.iter().map(|&y| self.table[y as usize]).collect();
        Ok(Lut {
            field: self.field.clone(),
            table,
        })
    }

    pub fn pointwise_add(&self, other: &Lut) -> Result<Lut> {
        self.same_field(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| a ^ b)
            .collect();
        Ok(Lut {
            field: self.field.clone(),
            table,
        })
    }

    /// Unique univariate polynomial of degree <= 2^n - 1 evaluating to this
    /// table, via the closed form a_i = sum_x F(x) * x^(2^n-1-i) (and
    /// a_0 = F(0)). Exact; practical for n <= 16 where log tables exist.
    pub fn interpolate(&self) -> UnivariatePoly {
        let f = &self.field;
        let m = f.order() as usize;
        let mut coeffs = BTreeMap::new();
        if self.table[0] != 0 {
            coeffs.insert(0u64, self.table[0]);
        }

        // Walk the multiplicative group as powers of zeta so each inner step
        // is one table lookup and one XOR.
        let mut group = Vec::with_capacity(m);
        {
            let mut x: Elt = 1;
            for _ in 0..m {
                group.push(x);
                x = f.mul(x, f.zeta());
            }
        }

        for i in 1..=m as u64 {
            let step = f.pow(f.zeta(), m as u64 - i);
            let mut cur: Elt = 1; // zeta^(t * (m - i))
            let mut acc: Elt = 0;
            for &gx in &group {
                let v = self.table[gx as usize];
                if v != 0 {
                    acc ^= f.mul(v, cur);
                }
                cur = f.mul(cur, step);
            }
            if i == m as u64 {
                acc ^= self.table[0];
            }
            if acc != 0 {
                coeffs.insert(i, acc);
            }
        }
        UnivariatePoly { coeffs }
    }

    /// Vectorial algebraic normal form via the Möbius transform applied to
    /// the whole table (XOR acts coordinate-wise, so one pass covers all n
    /// output coordinates).
    pub fn to_anf(&self) -> Anf {
        let n = self.field.n();
        let mut coeffs = self.table.clone();
        for i in 0..n {
            let bit = 1usize << i;
            for x in 0..coeffs.len() {
                if x & bit != 0 {
                    coeffs[x] ^= coeffs[x ^ bit];
                }
            }
        }
        Anf { n, coeffs }
    }

    /// Algebraic degree, computed both from the ANF (max monomial weight)
    /// and from the 2-weights of the interpolated exponents; the two routes
    /// are cross-asserted.
    pub fn algebraic_degree(&self) -> Result<u32> {
        let via_anf = self.to_anf().degree();
        let via_poly = self.interpolate().degree();
        if via_anf != via_poly {
            return Err(Error::Internal(format!(
                "degree disagreement: ANF gives {via_anf}, interpolation gives {via_poly}"
            )));
        }
        Ok(via_anf)
    }

    /// The sum over x of F(x) * x^(2^j). Some j yields a nonzero value iff
    /// the univariate form has a term of 2-weight n-1.
    pub fn degree_witness(&self, j: u32) -> Result<Elt> {
        let f = &self.field;
        if j >= f.n() {
            return Err(Error::Field(format!(
                "witness index {j} out of range for GF(2^{})",
                f.n()
            )));
        }
        let mut acc: Elt = 0;
        for x in f.elements() {
            let v = self.table[x as usize];
            if v != 0 {
                acc ^= f.mul(v, f.frobenius(x, j));
            }
        }
        Ok(acc)
    }

    /// True iff any linear monomial witnesses a term of degree n-1.
    pub fn has_degree_witness(&self) -> Result<bool> {
        for j in 0..self.field.n() {
            if self.degree_witness(j)? != 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Serializes to the LUT file format: header line `n=<int> mod=0x<hex>`,
    /// then 2^n whitespace-separated hex outputs in input order.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={} mod={:#x}", self.field.n(), self.field.modulus());
        for chunk in self.table.chunks(16) {
            let line: Vec<String> = chunk.iter().map(|v| format!("{v:x}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_file_string(text: &str) -> Result<Lut> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty LUT file".into()))?;
        let mut n = None;
        let mut modulus = None;
        for part in header.split_whitespace() {
            if let Some(v) = part.strip_prefix("n=") {
                n = Some(v.parse::<u32>().map_err(|_| {
                    Error::Format(format!("bad n in LUT header: `{v}`"))
                })?);
            } else if let Some(v) = part.strip_prefix("mod=") {
                let digits = v
                    .strip_prefix("0x")
                    .or_else(|| v.strip_prefix("0X"))
                    .ok_or_else(|| Error::Format(format!("bad modulus in LUT header: `{v}`")))?;
                modulus = Some(u64::from_str_radix(digits, 16).map_err(|_| {
                    Error::Format(format!("bad modulus in LUT header: `{v}`"))
                })?);
            } else {
                return Err(Error::Format(format!(
                    "unexpected LUT header token `{part}`"
                )));
            }
        }
        let n = n.ok_or_else(|| Error::Format("LUT header missing n=".into()))?;
        let modulus = modulus.ok_or_else(|| Error::Format("LUT header missing mod=".into()))?;
        let field = Arc::new(Field::new(n, Some(modulus), None)?);
        let mut table = Vec::with_capacity(field.size());
        for tok in lines.flat_map(str::split_whitespace) {
            let v = u64::from_str_radix(tok, 16)
                .map_err(|_| Error::Format(format!("bad hex output `{tok}`")))?;
            table.push(v);
        }
        Lut::new(field, table)
    }

    /// Content hash of the serialized LUT form; the spectrum cache key.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_file_string().as_bytes());
        digest.iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// Sparse univariate polynomial over GF(2^n): exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnivariatePoly {
    coeffs: BTreeMap<u64, Elt>,
}

impl UnivariatePoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Elt)>) -> UnivariatePoly {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if c != 0 {
                let slot = coeffs.entry(e).or_insert(0);
                *slot ^= c;
                if *slot == 0 {
                    coeffs.remove(&e);
                }
            }
        }
        UnivariatePoly { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, Elt)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: u64) -> Elt {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Algebraic degree: max 2-weight over exponents with nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|e| e.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// True iff some exponent of 2-weight `w` carries a nonzero coefficient.
    pub fn has_term_of_weight(&self, w: u32) -> bool {
        self.coeffs.keys().any(|e| e.count_ones() == w)
    }

    pub fn evaluate(&self, field: &Field, x: Elt) -> Elt {
        self.coeffs
            .iter()
            .fold(0, |acc, (&e, &c)| acc ^ field.mul(c, field.pow(x, e)))
    }
}

/// Pointwise evaluation of a polynomial over all 2^n inputs.
pub fn evaluate_poly(field: Arc<Field>, p: &UnivariatePoly) -> Result<Lut> {
    for (e, c) in p.terms() {
        if e > field.order() {
            return Err(Error::Field(format!(
                "exponent {e} exceeds 2^n - 1 = {}",
                field.order()
            )));
        }
        field.check_element(c)?;
    }
    Ok(Lut::from_fn(field.clone(), |x| p.evaluate(&field, x)))
}

/// Vectorial algebraic normal form. `coeffs[mask]` packs, bit per output
/// coordinate, the GF(2) coefficient of the multilinear monomial selected by
/// `mask` over the input bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    n: u32,
    coeffs: Vec<Elt>,
}

impl Anf {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(mask, _)| mask.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Monomial masks of coordinate j, ascending.
    pub fn coordinate_monomials(&self, j: u32) -> Vec<u64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c >> j & 1 != 0)
            .map(|(mask, _)| mask as u64)
            .collect()
    }

    /// Evaluates every coordinate on every input; the Möbius transform is an
    /// involution, so this is one more pass of the same butterfly.
    pub fn evaluate_all(&self) -> Vec<Elt> {
        let mut table = self.coeffs.clone();
        for i in 0..self.n {
            let bit = 1usize << i;
            for x in 0..table.len() {
                if x & bit != 0 {
                    table[x] ^= table[x ^ bit];
                }
            }
        }
        table
    }
}

/// An affine permutation A(x) = sum_j c_j x^(2^j) + c of the subfield
/// GF(2^s); coefficients and constant must lie in that subfield.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    s: u32,
    linear: Vec<Elt>,
    constant: Elt,
}

impl AffineMap {
    pub fn new(field: &Field, s: u32, linear: Vec<Elt>, constant: Elt) -> Result<AffineMap> {
        if linear.len() != s as usize {
            return Err(Error::Construction(format!(
                "affine map over GF(2^{s}) needs exactly {s} linear coefficients, got {}",
                linear.len()
            )));
        }
        for &c in linear.iter().chain(std::iter::once(&constant)) {
            if !field.subfield_membership(s, c)? {
                return Err(Error::Construction(format!(
                    "affine coefficient {c:#x} lies outside GF(2^{s})"
                )));
            }
        }
        let map = AffineMap { s, linear, constant };
        let sub = field.subfield_elements(s)?;
        let mut seen = std::collections::HashSet::with_capacity(sub.len());
        for &x in &sub {
            if !seen.insert(map.eval(field, x)) {
                return Err(Error::Construction(format!(
                    "affine map {} is not a bijection of GF(2^{s})",
                    map.to_recipe_string(field)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(field: &Field, s: u32) -> Result<AffineMap> {
        let mut linear = vec![0; s as usize];
        linear[0] = 1;
        AffineMap::new(field, s, linear, 0)
    }

    pub fn subfield_degree(&self) -> u32 {
        self.s
    }

    pub fn linear_coefficients(&self) -> &[Elt] {
        &self.linear
    }

    pub fn constant(&self) -> Elt {
        self.constant
    }

    pub fn eval(&self, field: &Field, x: Elt) -> Elt {
        let mut acc = self.constant;
        for (j, &c) in self.linear.iter().enumerate() {
            if c != 0 {
                acc ^= field.mul(c, field.frobenius(x, j as u32));
            }
        }
        acc
    }

    /// Renders in the recipe syntax, e.g. `w*x^2+w` or `x+0x3`.
    pub fn to_recipe_string(&self, field: &Field) -> String {
        let omega = field.omega();
        let fmt_const = |c: Elt| -> String {
            match omega {
                Some(w) if c == w => "w".into(),
                Some(w) if c == field.mul(w, w) => "w^2".into(),
                _ if c <= 9 => format!("{c}"),
                _ => format!("{c:#x}"),
            }
        };
        let mut parts = Vec::new();
        for (j, &c) in self.linear.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let xpow = if j == 0 {
                "x".to_string()
            } else {
                format!("x^{}", 1u64 << j)
            };
            if c == 1 {
                parts.push(xpow);
            } else {
                parts.push(format!("{}*{}", fmt_const(c), xpow));
            }
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(fmt_const(self.constant));
        }
        parts.join("+")
    }
}

/// Uniformly random function table.
pub fn random_function(field: Arc<Field>, rng: &mut impl Rng) -> Lut {
    let size = field.size() as u64;
    Lut::from_fn(field, |_| rng.gen_range(0..size))
}

/// Uniformly random permutation (Fisher-Yates).
pub fn random_permutation(field: Arc<Field>, rng: &mut impl Rng) -> Lut {
    let mut table: Vec<Elt> = field.elements().collect();
    for i in (1..table.len()).rev() {
        table.swap(i, rng.gen_range(0..=i));
    }
    Lut { field, table }
}

/// Random affine permutation of the whole field: an invertible GF(2) matrix
/// applied to the input bits, plus a random constant.
pub fn random_affine_permutation(field: Arc<Field>, rng: &mut impl Rng) -> Lut {
    let n = field.n();
    let rows = loop {
        let rows: Vec<u64> = (0..n).map(|_| rng.gen_range(1..field.size() as u64)).collect();
        if gf2_matrix_invertible(&rows) {
            break rows;
        }
    };
    let constant = rng.gen_range(0..field.size() as u64);
    Lut::from_fn(field, move |x| {
        let mut y = constant;
        for (j, &row) in rows.iter().enumerate() {
            y ^= (((row & x).count_ones() as u64) & 1) << j;
        }
        y
    })
}

fn gf2_matrix_invertible(rows: &[u64]) -> bool {
    let mut m: Vec<u64> = rows.to_vec();
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r] >> col & 1 != 0);
        let Some(pivot) = pivot else { return false };
        m.swap(col, pivot);
        for r in 0..n {
            if r != col && m[r] >> col & 1 != 0 {
                m[r] ^= m[col];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(n: u32) -> Arc<Field> {
        Arc::new(Field::new(n, None, None).unwrap())
    }

    #[test]
    fn evaluate_poly_identity_and_inverse() {
        let f = field(6);
        let id = evaluate_poly(f.clone(), &UnivariatePoly::from_terms([(1, 1)])).unwrap();
        assert_eq!(id, Lut::identity(f.clone()));

        let inv = evaluate_poly(
            f.clone(),
            &UnivariatePoly::from_terms([(f.order() - 1, 1)]),
        )
        .unwrap();
        assert!(inv.is_permutation());
        assert_eq!(inv.eval(0), 0);
        for x in 1..f.size() as u64 {
            assert_eq!(f.mul(x, inv.eval(x)), 1);
        }

        // x^5 is x^(2^2+1).
        let a = Lut::monomial(f.clone(), 5);
        let b = evaluate_poly(f.clone(), &UnivariatePoly::from_terms([(4 + 1, 1)])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn interpolate_round_trips() {
        let f = field(6);
        let id = Lut::identity(f.clone());
        let p = id.interpolate();
        assert_eq!(p, UnivariatePoly::from_terms([(1, 1)]));

        let gold = Lut::monomial(f.clone(), 5);
        assert_eq!(gold.interpolate(), UnivariatePoly::from_terms([(5, 1)]));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let lut = random_function(f.clone(), &mut rng);
            let p = lut.interpolate();
            let back = evaluate_poly(f.clone(), &p).unwrap();
            assert_eq!(lut, back);
        }
    }

    #[test]
    fn anf_of_cube_over_gf4() {
        let f = field(2);
        let cube = Lut::monomial(f, 3);
        assert_eq!(cube.table(), &[0, 1, 1, 1]);
        let anf = cube.to_anf();
        // Coordinate 0 is x0 + x1 + x0x1; coordinate 1 is zero.
        assert_eq!(anf.coordinate_monomials(0), vec![1, 2, 3]);
        assert_eq!(anf.coordinate_monomials(1), Vec::<u64>::new());
        assert_eq!(anf.degree(), 2);
    }

    #[test]
    fn anf_identity_and_zero() {
        let f = field(4);
        let id = Lut::identity(f.clone());
        let anf = id.to_anf();
        for j in 0..4 {
            assert_eq!(anf.coordinate_monomials(j), vec![1u64 << j]);
        }
        let zero = Lut::from_fn(f, |_| 0);
        assert_eq!(zero.to_anf().degree(), 0);
        assert_eq!(zero.algebraic_degree().unwrap(), 0);
    }

    #[test]
    fn anf_round_trip_reconstructs_lut() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [6u32, 10] {
            let f = field(n);
            for _ in 0..3 {
                let lut = random_function(f.clone(), &mut rng);
                assert_eq!(lut.to_anf().evaluate_all(), lut.table());
                let back = evaluate_poly(f.clone(), &lut.interpolate()).unwrap();
                assert_eq!(back, lut);
            }
        }
    }

    #[test]
    fn degree_routes_agree() {
        let f = field(6);
        let gold = Lut::monomial(f.clone(), 5);
        assert_eq!(gold.algebraic_degree().unwrap(), 2);
        let inv = Lut::monomial(f.clone(), f.order() - 1);
        assert_eq!(inv.algebraic_degree().unwrap(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let lut = random_function(f.clone(), &mut rng);
            lut.algebraic_degree().unwrap();
        }
    }

    #[test]
    fn degree_witness_trivial_cases() {
        let f = field(6);
        let id = Lut::identity(f.clone());
        for j in 0..6 {
            assert_eq!(id.degree_witness(j).unwrap(), 0);
        }
        let gold = Lut::monomial(f, 5);
        assert!(!gold.has_degree_witness().unwrap());
    }

    #[test]
    fn witness_iff_weight_n_minus_1_term() {
        let f = field(6);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let lut = random_function(f.clone(), &mut rng);
            let witness = lut.has_degree_witness().unwrap();
            let has_term = lut.interpolate().has_term_of_weight(5);
            assert_eq!(witness, has_term);
        }
    }

    #[test]
    fn permutation_ops() {
        let f4 = field(4);
        let cube = Lut::monomial(f4.clone(), 3);
        assert!(!cube.is_permutation());
        let image: std::collections::HashSet<_> = cube.table().iter().copied().collect();
        assert_eq!(image.len(), 6);
        assert!(cube.invert().is_err());

        let f = field(6);
        let id = Lut::identity(f.clone());
        assert_eq!(id.invert().unwrap(), id);

        let gold = Lut::monomial(f.clone(), 5);
        let ginv = gold.invert().unwrap();
        assert_eq!(gold.compose(&ginv).unwrap(), id);
        assert_eq!(ginv.compose(&gold).unwrap(), id);

        let sum = gold.pointwise_add(&gold).unwrap();
        assert!(sum.table().iter().all(|&v| v == 0));
    }

    #[test]
    fn lut_file_round_trip() {
        let f = field(6);
        let gold = Lut::monomial(f, 5);
        let text = gold.to_file_string();
        assert!(text.starts_with("n=6 mod=0x43"));
        let back = Lut::from_file_string(&text).unwrap();
        assert_eq!(back, gold);
        assert_eq!(back.content_hash(), gold.content_hash());
    }

    #[test]
    fn lut_file_rejects_garbage() {
        assert!(Lut::from_file_string("").is_err());
        assert!(Lut::from_file_string("n=6 mod=0x43\n1 2 zz").is_err());
        // Wrong entry count.
        assert!(Lut::from_file_string("n=2 mod=0x7\n0 1 2").is_err());
        // Entry out of range.
        assert!(Lut::from_file_string("n=2 mod=0x7\n0 1 2 7").is_err());
    }

    #[test]
    fn affine_map_validation() {
        let f = field(6);
        let w = f.omega().unwrap();
        // w*x over GF(4).
        let a = AffineMap::new(&f, 2, vec![w, 0], 0).unwrap();
        assert_eq!(a.eval(&f, 1), w);
        // Coefficient outside GF(4).
        assert!(AffineMap::new(&f, 2, vec![f.zeta(), 0], 0).is_err());
        // Zero linear part is not bijective.
        assert!(AffineMap::new(&f, 2, vec![0, 0], w).is_err());
        // x + x^2 kills GF(4) (it is the trace onto GF(2) there).
        assert!(AffineMap::new(&f, 2, vec![1, 1], 0).is_err());
    }

    #[test]
    fn affine_recipe_strings() {
        let f = field(6);
        let w = f.omega().unwrap();
        let w2 = f.mul(w, w);
        let cases = [
            (AffineMap::new(&f, 2, vec![1, 0], 0).unwrap(), "x"),
            (AffineMap::new(&f, 2, vec![1, 0], w).unwrap(), "x+w"),
            (AffineMap::new(&f, 2, vec![0, w], w).unwrap(), "w*x^2+w"),
            (AffineMap::new(&f, 2, vec![w, 0], 0).unwrap(), "w*x"),
            (AffineMap::new(&f, 2, vec![0, w2], w).unwrap(), "w^2*x^2+w"),
        ];
        for (map, expect) in cases {
            assert_eq!(map.to_recipe_string(&f), expect);
        }
    }

    #[test]
    fn random_affine_permutations_are_permutations() {
        let f = field(6);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            assert!(random_affine_permutation(f.clone(), &mut rng).is_permutation());
        }
    }
}
