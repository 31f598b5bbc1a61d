//! Arithmetic in GF(2^n) with polynomial-basis representation.
//!
//! Elements are integers whose bit `i` is the coefficient of `x^i`, so field
//! addition is XOR. Multiplication is carry-less shift-and-XOR with modular
//! reduction; for n <= 16 a log/antilog table pair is precomputed at
//! construction and used on the hot paths (interpolation, materialization).

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A field element encoding. Always interpreted relative to a [`Field`];
/// valid encodings satisfy `x < 2^n`.
pub type Elt = u64;

/// Largest supported extension degree.
pub const MAX_N: u32 = 24;

/// Log/antilog tables are built eagerly up to this degree.
const TABLE_MAX_N: u32 = 16;

/// One default modulus per degree, from the standard primitive-polynomial
/// tables. Entry `i` is the degree-(i+2) polynomial; bit `j` is the
/// coefficient of `x^j`. Every entry is re-validated at construction, so a
/// transcription error would be caught immediately.
const DEFAULT_MODULI: [u64; 23] = [
    0x7,       // x^2 + x + 1
    0xB,       // x^3 + x + 1
    0x13,      // x^4 + x + 1
    0x25,      // x^5 + x^2 + 1
    0x43,      // x^6 + x + 1
    0x89,      // x^7 + x^3 + 1
    0x11D,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x409,     // x^10 + x^3 + 1
    0x805,     // x^11 + x^2 + 1
    0x1053,    // x^12 + x^6 + x^4 + x + 1
    0x201B,    // x^13 + x^4 + x^3 + x + 1
    0x4443,    // x^14 + x^10 + x^6 + x + 1
    0x8003,    // x^15 + x + 1
    0x1100B,   // x^16 + x^12 + x^3 + x + 1
    0x20009,   // x^17 + x^3 + 1
    0x40081,   // x^18 + x^7 + 1
    0x80027,   // x^19 + x^5 + x^2 + x + 1
    0x100009,  // x^20 + x^3 + 1
    0x200005,  // x^21 + x^2 + 1
    0x400003,  // x^22 + x + 1
    0x800021,  // x^23 + x^5 + 1
    0x1000087, // x^24 + x^7 + x^2 + x + 1
];

/// A concrete GF(2^n): modulus, canonical generator, cube root of unity when
/// it exists, and an optional designated subfield degree used by the
/// piecewise constructions.
///
/// Immutable after construction; all operations are pure, so a `Field` can be
/// shared freely across threads (typically behind an [`Arc`]).
#[derive(Clone)]
pub struct Field {
    n: u32,
    modulus: u64,
    zeta: Elt,
    omega: Option<Elt>,
    s: Option<u32>,
    /// logs[x] = discrete log of x base zeta, for x in 1..2^n (n <= 16 only).
    logs: Option<Vec<u32>>,
    /// exps[i] = zeta^i for i in 0..2*(2^n-1), doubled so that a sum of two
    /// logs indexes without a modular reduction.
    exps: Option<Vec<u32>>,
    /// tr1[x] = Tr^n_1(x) as a bit (n <= 16 only).
    tr1: Option<Vec<u8>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("zeta", &format_args!("{:#x}", self.zeta))
            .field("omega", &self.omega)
            .field("s", &self.s)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// Builds a validated GF(2^n).
    ///
    /// With no modulus, the built-in default for that degree is used. The
    /// modulus is checked for irreducibility, zeta is the smallest element
    /// (in integer encoding order) of multiplicative order 2^n - 1, and
    /// omega = zeta^((2^n-1)/3) is populated whenever n is even.
    pub fn new(n: u32, modulus: Option<u64>, s: Option<u32>) -> Result<Field> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Field(format!(
                "extension degree must be in 2..={MAX_N}, got {n}"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                if poly_degree(m) != n as i32 {
                    return Err(Error::Field(format!(
                        "modulus {:#x} has degree {}, expected {n}",
                        m,
                        poly_degree(m)
                    )));
                }
                m
            }
            None => DEFAULT_MODULI[(n - 2) as usize],
        };
        if !is_irreducible(modulus) {
            return Err(Error::Field(format!(
                "modulus {modulus:#x} is reducible over GF(2)"
            )));
        }
        if let Some(s) = s {
            if s == 0 || !n.is_multiple_of(s) {
                return Err(Error::Field(format!(
                    "designated subfield degree {s} does not divide {n}"
                )));
            }
        }

        let order = (1u64 << n) - 1;
        let prime_factors = distinct_prime_factors(order);
        let zeta = (2..1u64 << n)
            .find(|&a| {
                prime_factors
                    .iter()
                    .all(|&p| pow_raw(a, order / p, modulus, n) != 1)
            })
            .ok_or_else(|| Error::Field("no primitive element found".into()))?;

        let mut field = Field {
            n,
            modulus,
            zeta,
            omega: None,
            s,
            logs: None,
            exps: None,
            tr1: None,
        };

        if n <= TABLE_MAX_N {
            let m = order as usize;
            let mut exps = vec![0u32; 2 * m];
            let mut logs = vec![0u32; 1 << n];
            let mut acc: Elt = 1;
            for (i, slot) in exps.iter_mut().enumerate().take(m) {
                *slot = acc as u32;
                logs[acc as usize] = i as u32;
                acc = mul_raw(acc, zeta, modulus, n);
            }
            if acc != 1 {
                return Err(Error::Internal(
                    "generator power cycle failed to close".into(),
                ));
            }
            for i in 0..m {
                exps[m + i] = exps[i];
            }
            field.logs = Some(logs);
            field.exps = Some(exps);
            let tr1 = (0..1u64 << n)
                .map(|x| (field.trace_to(1, x).unwrap() & 1) as u8)
                .collect();
            field.tr1 = Some(tr1);
        }

        if n.is_multiple_of(2) {
            let omega = field.pow(zeta, order / 3);
            let check = field.add(field.mul(omega, omega), field.add(omega, 1));
            if check != 0 || field.pow(omega, 3) != 1 {
                return Err(Error::Internal("cube root of unity validation failed".into()));
            }
            field.omega = Some(omega);
        }

        Ok(field)
    }

    /// Parses the textual form `n=<int>[,mod=0x<hex>][,s=<int>]`.
    pub fn parse_spec(text: &str) -> Result<Field> {
        let mut n = None;
        let mut modulus = None;
        let mut s = None;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Field(format!("malformed field spec component `{part}`")))?;
            match key.trim() {
                "n" => {
                    n = Some(value.trim().parse::<u32>().map_err(|_| {
                        Error::Field(format!("invalid extension degree `{value}`"))
                    })?)
                }
                "mod" => {
                    let v = value.trim();
                    let digits = v
                        .strip_prefix("0x")
                        .or_else(|| v.strip_prefix("0X"))
                        .ok_or_else(|| {
                            Error::Field(format!("modulus must be hex with 0x prefix, got `{v}`"))
                        })?;
                    modulus = Some(u64::from_str_radix(digits, 16).map_err(|_| {
                        Error::Field(format!("invalid hex modulus `{v}`"))
                    })?);
                }
                "s" => {
                    s = Some(value.trim().parse::<u32>().map_err(|_| {
                        Error::Field(format!("invalid subfield degree `{value}`"))
                    })?)
                }
                other => {
                    return Err(Error::Field(format!("unknown field spec key `{other}`")));
                }
            }
        }
        let n = n.ok_or_else(|| Error::Field("field spec must set n".into()))?;
        Field::new(n, modulus, s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn zeta(&self) -> Elt {
        self.zeta
    }

    /// The primitive cube root of unity zeta^((2^n-1)/3); present iff n is even.
    pub fn omega(&self) -> Option<Elt> {
        self.omega
    }

    /// Designated subfield degree, when one was set at construction.
    pub fn subfield_degree(&self) -> Option<u32> {
        self.s
    }

    /// Number of elements, 2^n.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Multiplicative group order, 2^n - 1.
    pub fn order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..(1u64 << self.n)
    }

    pub fn contains(&self, x: Elt) -> bool {
        x < (1u64 << self.n)
    }

    pub fn check_element(&self, x: Elt) -> Result<Elt> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::Field(format!(
                "element {:#x} out of range for GF(2^{})",
                x, self.n
            )))
        }
    }

    #[inline(always)]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        debug_assert!(self.contains(a) && self.contains(b));
        match (&self.logs, &self.exps) {
            (Some(logs), Some(exps)) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exps[(logs[a as usize] + logs[b as usize]) as usize] as Elt
                }
            }
            _ => mul_raw(a, b, self.modulus, self.n),
        }
    }

    /// a^e with the conventions 0^0 = 1 and 0^e = 0 for e > 0; for nonzero a
    /// the exponent is reduced mod 2^n - 1.
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        debug_assert!(self.contains(a));
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let e = e % self.order();
        if let (Some(logs), Some(exps)) = (&self.logs, &self.exps) {
            let idx = (logs[a as usize] as u64 * e) % self.order();
            return exps[idx as usize] as Elt;
        }
        pow_raw(a, e, self.modulus, self.n)
    }

    /// Multiplicative inverse, with the convention 0^{-1} = 0.
    pub fn inv(&self, a: Elt) -> Elt {
        self.pow(a, self.order() - 1)
    }

    /// x^(2^k): k-fold Frobenius.
    pub fn frobenius(&self, x: Elt, k: u32) -> Elt {
        let mut y = x;
        for _ in 0..(k % self.n) {
            y = self.mul(y, y);
        }
        y
    }

    /// Trace onto the subfield of degree m: sum of x^(2^(i*m)) for
    /// i = 0..n/m. The result always lies in GF(2^m).
    pub fn trace_to(&self, m: u32, x: Elt) -> Result<Elt> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::Field(format!(
                "trace target degree {m} does not divide {}",
                self.n
            )));
        }
        let mut acc = 0;
        let mut term = x;
        for _ in 0..self.n / m {
            acc ^= term;
            term = self.frobenius(term, m);
        }
        Ok(acc)
    }

    /// Absolute trace Tr^n_1 as a bit.
    #[inline]
    pub fn trace_bit(&self, x: Elt) -> u8 {
        if let Some(tr1) = &self.tr1 {
            tr1[x as usize]
        } else {
            (self.trace_to(1, x).unwrap() & 1) as u8
        }
    }

    /// True iff x lies in the subfield of size 2^s, tested as x^(2^s) = x.
    pub fn subfield_membership(&self, s: u32, x: Elt) -> Result<bool> {
        if s == 0 || !self.n.is_multiple_of(s) {
            return Err(Error::Field(format!(
                "subfield degree {s} does not divide {}",
                self.n
            )));
        }
        Ok(self.frobenius(x, s) == x)
    }

    /// All 2^s elements of the subfield of degree s, sorted by encoding.
    ///
    /// The multiplicative part is the unique subgroup of order 2^s - 1,
    /// generated by zeta^((2^n-1)/(2^s-1)).
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<Elt>> {
        if s == 0 || !self.n.is_multiple_of(s) {
            return Err(Error::Field(format!(
                "subfield degree {s} does not divide {}",
                self.n
            )));
        }
        let sub_order = (1u64 << s) - 1;
        let gen = self.pow(self.zeta, self.order() / sub_order);
        let mut elems = Vec::with_capacity(1 << s);
        elems.push(0);
        let mut x: Elt = 1;
        for _ in 0..sub_order {
            elems.push(x);
            x = self.mul(x, gen);
        }
        debug_assert_eq!(x, 1);
        elems.sort_unstable();
        elems.dedup();
        if elems.len() != 1usize << s {
            return Err(Error::Internal(format!(
                "subfield of degree {s} has wrong cardinality {}",
                elems.len()
            )));
        }
        Ok(elems)
    }

    /// Membership mask for the subfield of degree s: bit-per-element table.
    pub fn subfield_mask(&self, s: u32) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.size()];
        for x in self.subfield_elements(s)? {
            mask[x as usize] = true;
        }
        Ok(mask)
    }

    pub fn into_arc(self) -> Arc<Field> {
        Arc::new(self)
    }
}

/// Degree of a GF(2)[x] polynomial encoded as a bitvector; -1 for zero.
fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product of two GF(2)[x] polynomials (degrees must fit in u64).
fn pmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of p modulo m in GF(2)[x].
fn pmod(mut p: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    loop {
        let dp = poly_degree(p);
        if dp < dm {
            return p;
        }
        p ^= m << (dp - dm);
    }
}

/// Field product without tables: shift-and-XOR, reduced by `modulus`.
#[inline]
fn mul_raw(a: Elt, b: Elt, modulus: u64, _n: u32) -> Elt {
    pmod(pmul(a, b), modulus)
}

fn pow_raw(a: Elt, mut e: u64, modulus: u64, n: u32) -> Elt {
    let mut base = a;
    let mut acc: Elt = 1;
    while e != 0 {
        if e & 1 != 0 {
            acc = mul_raw(acc, base, modulus, n);
        }
        base = mul_raw(base, base, modulus, n);
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility test for a polynomial over GF(2).
fn is_irreducible(f: u64) -> bool {
    let n = poly_degree(f);
    if n <= 0 {
        return false;
    }
    let n = n as u32;
    if n == 1 {
        return true;
    }
    // x^(2^n) == x mod f, and gcd(x^(2^(n/p)) - x, f) == 1 for primes p | n.
    let xq = |k: u32| -> u64 {
        let mut t = 2u64; // the polynomial x
        for _ in 0..k {
            t = pmod(pmul(t, t), f);
        }
        t
    };
    if xq(n) != 2 {
        return false;
    }
    for p in distinct_prime_factors(n as u64) {
        let t = xq(n / p as u32) ^ 2;
        if pgcd(t, f) != 1 {
            return false;
        }
    }
    true
}

fn pgcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = pmod(a, b);
        a = b;
        b = r;
    }
    a
}

fn distinct_prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}
