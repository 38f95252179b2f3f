//! Finite fields F_{p^k} with exact element arithmetic.
//!
//! A [`FieldSpec`] fixes a prime `p`, an extension degree `k >= 1` and a monic
//! irreducible modulus of degree `k` over F_p (for `k = 1` the modulus is the
//! unused placeholder `x`). Elements are residues of the modulus. Every
//! element has a canonical integer code in `[0, q)`, `q = p^k`: the base-p
//! packing of its `k` digit coefficients, least-significant digit first.
//! Code 0 is the additive identity and code 1 the multiplicative identity;
//! the code order is the order used by every enumeration in the crate.
//!
//! Specs and elements are immutable values; all operations are pure and safe
//! to share across threads.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Largest field size for which full add/mul/inv lookup tables are built at
/// construction time. Beyond this, arithmetic falls back to digit operations.
const TABLE_MAX_Q: u64 = 512;

/// Deterministic trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// ---- Polynomial helpers over the prime field F_p ----
//
// These operate on ascending coefficient vectors of integers in [0, p) and
// are used only for modulus validation and selection; general polynomial
// arithmetic over F_{p^k} lives in the `poly` module.

fn pf_deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `f` modulo monic `g`, both over F_p.
fn pf_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = pf_deg(g).expect("divisor must be nonzero");
    debug_assert_eq!(g[dg], 1, "divisor must be monic");
    let mut r = f.to_vec();
    while let Some(dr) = pf_deg(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr];
        let shift = dr - dg;
        for j in 0..=dg {
            let sub = (c as u128 * g[j] as u128 % p as u128) as u64;
            r[j + shift] = (r[j + shift] + p - sub) % p;
        }
    }
    r
}

fn pf_is_zero(f: &[u64]) -> bool {
    pf_deg(f).is_none()
}

/// Trial-division irreducibility over F_p: true iff no monic polynomial of
/// degree in `[1, d/2]` divides `coeffs`.
///
/// `coeffs` is an ascending coefficient list that must be monic of degree
/// `d >= 1` after reduction mod p.
pub fn is_irreducible_over_prime(p: u64, coeffs: &[u64]) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    let d = match pf_deg(&f) {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::BadDegree("expected degree >= 1".into())),
    };
    if f[d] != 1 {
        return Err(Error::NotMonic);
    }
    // Enumerate all monic divisor candidates of degree t <= d/2 in ascending
    // coefficient order.
    for t in 1..=(d / 2) {
        let mut g = vec![0u64; t + 1];
        g[t] = 1;
        'candidates: loop {
            if pf_is_zero(&pf_rem(&f, &g, p)) {
                return Ok(false);
            }
            // Odometer over the t free coefficients, last position fastest.
            let mut pos = t;
            loop {
                if pos == 0 {
                    break 'candidates;
                }
                pos -= 1;
                g[pos] += 1;
                if g[pos] < p {
                    break;
                }
                g[pos] = 0;
            }
        }
    }
    Ok(true)
}

// ---- Field specification ----

#[derive(Debug)]
struct OpTables {
    add: Vec<u64>,
    mul: Vec<u64>,
    neg: Vec<u64>,
    inv: Vec<u64>,
}

#[derive(Debug)]
struct SpecInner {
    p: u64,
    k: u32,
    q: u64,
    /// Ascending coefficients, length k+1, monic. For k = 1 this is the
    /// placeholder `x` and is never used in reduction.
    modulus: Vec<u64>,
    default_modulus: bool,
    tables: Option<OpTables>,
    /// Irreducible polynomials by degree (index d-1), as ascending
    /// coefficient-code vectors. Grown on demand by the `poly` module.
    irr_cache: Mutex<Vec<Arc<Vec<Vec<u64>>>>>,
}

/// A finite field F_{p^k}: prime, extension degree, modulus and derived
/// size `q = p^k`. Cheap to clone; equality is structural on `(p, k, modulus)`.
#[derive(Clone, Debug)]
pub struct FieldSpec(Arc<SpecInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}
impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::extension(p, 1, None)
    }

    /// The extension field F_{p^k}.
    ///
    /// When `modulus` is omitted the monic irreducible of degree `k` over F_p
    /// whose ascending coefficient tuple `(a_0, ..., a_{k-1})` is
    /// lexicographically least is selected; the choice is deterministic.
    /// A supplied modulus must be monic of degree exactly `k` (coefficients
    /// are reduced mod p) and irreducible over F_p.
    pub fn extension(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::BadDegree("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(k)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{k} does not fit in 64 bits")))?;
        let (modulus, default_modulus) = if k == 1 {
            // Degenerate placeholder x, never used in reduction. A supplied
            // degree-1 modulus is validated for shape and then discarded.
            if let Some(m) = modulus {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if pf_deg(&m) != Some(1) || m[1] != 1 {
                    return Err(Error::BadDegree("modulus must be monic of degree k".into()));
                }
            }
            (vec![0, 1], true)
        } else {
            match modulus {
                Some(m) => {
                    let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                    if pf_deg(&m) != Some(k as usize) || m[k as usize] != 1 {
                        return Err(Error::BadDegree("modulus must be monic of degree k".into()));
                    }
                    if !is_irreducible_over_prime(p, &m)? {
                        return Err(Error::NotIrreducible(p));
                    }
                    let is_default = m == lex_least_irreducible(p, k);
                    (m, is_default)
                }
                None => (lex_least_irreducible(p, k), true),
            }
        };
        let mut inner = SpecInner {
            p,
            k,
            q,
            modulus,
            default_modulus,
            tables: None,
            irr_cache: Mutex::new(Vec::new()),
        };
        if q <= TABLE_MAX_Q {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    /// Parse a field descriptor: `"p^k"` or a plain prime power `"q"`, with
    /// an optional `";modulus=a0,a1,...,ak"` override.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let text = descriptor.trim();
        let (head, opts) = match text.split_once(';') {
            Some((h, o)) => (h.trim(), Some(o.trim())),
            None => (text, None),
        };
        let (p, k) = if let Some((ps, ks)) = head.split_once('^') {
            let p = ps
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad field descriptor {text:?}")))?;
            let k = ks
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad field descriptor {text:?}")))?;
            (p, k)
        } else {
            let q = head
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad field descriptor {text:?}")))?;
            factor_prime_power(q)
                .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
        };
        let modulus = match opts {
            None => None,
            Some(o) => {
                let rest = o
                    .strip_prefix("modulus=")
                    .ok_or_else(|| Error::Parse(format!("unknown field option {o:?}")))?;
                let coeffs = rest
                    .split(',')
                    .map(|s| s.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<u64>, _>>()
                    .map_err(|_| Error::Parse(format!("bad modulus list {rest:?}")))?;
                Some(coeffs)
            }
        };
        Self::extension(p, k, modulus.as_deref())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Field size q = p^k.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Ascending coefficients of the reduction modulus (length k+1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// True when the modulus is the deterministic lexicographically least
    /// choice for this (p, k).
    pub fn has_default_modulus(&self) -> bool {
        self.0.default_modulus
    }

    /// The element with the given canonical code.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.0.q {
            return Err(Error::CodeOutOfRange { code, q: self.0.q });
        }
        Ok(FieldElement { spec: self.clone(), code })
    }

    /// The element with the given base-p digits (ascending powers of the
    /// generator; at most k digits, each < p).
    pub fn element_from_digits(&self, digits: &[u64]) -> Result<FieldElement> {
        if digits.len() > self.0.k as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Parse("bad digit vector".into()));
        }
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.0.p + d;
        }
        self.element(code)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        debug_assert!(self.0.q >= 2);
        FieldElement { spec: self.clone(), code: 1 }
    }

    /// All q elements exactly once, in ascending canonical-code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |code| FieldElement { spec: self.clone(), code })
    }

    // ---- Code-level arithmetic ----
    //
    // Arithmetic directly on canonical codes. The `poly` and `census`
    // modules run their hot loops on these; callers must pass codes in
    // [0, q).

    pub fn add_code(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0.q && b < self.0.q);
        if let Some(t) = &self.0.tables {
            return t.add[(a * self.0.q + b) as usize];
        }
        self.add_code_generic(a, b)
    }

    fn add_code_generic(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            return ((a as u128 + b as u128) % p as u128) as u64;
        }
        let da = self.to_digits(a);
        let db = self.to_digits(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
        self.code_of_digits(&sum)
    }

    pub fn neg_code(&self, a: u64) -> u64 {
        debug_assert!(a < self.0.q);
        if let Some(t) = &self.0.tables {
            return t.neg[a as usize];
        }
        let p = self.0.p;
        if self.0.k == 1 {
            return (p - a % p) % p;
        }
        let da = self.to_digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
        self.code_of_digits(&neg)
    }

    pub fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub fn mul_code(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0.q && b < self.0.q);
        if let Some(t) = &self.0.tables {
            return t.mul[(a * self.0.q + b) as usize];
        }
        self.mul_code_generic(a, b)
    }

    fn mul_code_generic(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p as u128;
        if self.0.k == 1 {
            return (a as u128 * b as u128 % p) as u64;
        }
        let k = self.0.k as usize;
        let da = self.to_digits(a);
        let db = self.to_digits(b);
        // Schoolbook product, then reduction by the monic modulus.
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let sub = c * self.0.modulus[j] as u128 % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        let digits: Vec<u64> = prod[..k].iter().map(|&d| d as u64).collect();
        self.code_of_digits(&digits)
    }

    pub fn inv_code(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.inv[a as usize]);
        }
        // Fermat: a^(q-2) is the inverse of a in F_q.
        Ok(self.pow_code(a, self.0.q - 2))
    }

    pub fn pow_code(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_code(base, base);
            }
        }
        acc
    }

    pub(crate) fn to_digits(&self, mut code: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.0.k as usize];
        for d in digits.iter_mut() {
            *d = code % self.0.p;
            code /= self.0.p;
        }
        digits
    }

    pub(crate) fn code_of_digits(&self, digits: &[u64]) -> u64 {
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            code = code * self.0.p + d;
        }
        code
    }

    pub(crate) fn irr_cache(&self) -> &Mutex<Vec<Arc<Vec<Vec<u64>>>>> {
        &self.0.irr_cache
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "{}", self.0.p)
        } else if self.0.default_modulus {
            write!(f, "{}^{}", self.0.p, self.0.k)
        } else {
            let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}^{};modulus={}", self.0.p, self.0.k, coeffs.join(","))
        }
    }
}

/// Smallest-prime-power factorization: `q = p^k` with p prime, or None.
fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= q) {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some((p, k))
    } else {
        None
    }
}

/// The monic irreducible of degree k over F_p whose ascending coefficient
/// tuple `(a_0, ..., a_{k-1})` is lexicographically least.
fn lex_least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if is_irreducible_over_prime(p, &coeffs).expect("validated inputs") {
            return coeffs;
        }
        // Advance the tuple in lexicographic order: a_0 is most significant,
        // so the last free coefficient a_{k-1} cycles fastest.
        let mut pos = k;
        loop {
            assert!(pos > 0, "no irreducible of degree {k} over F_{p}: impossible");
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

fn build_tables(inner: &SpecInner) -> OpTables {
    // Build through a temporary table-less spec so the generic routines can
    // be reused.
    let tmp = FieldSpec(Arc::new(SpecInner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        default_modulus: inner.default_modulus,
        tables: None,
        irr_cache: Mutex::new(Vec::new()),
    }));
    let q = inner.q;
    let mut add = vec![0u64; (q * q) as usize];
    let mut mul = vec![0u64; (q * q) as usize];
    let mut neg = vec![0u64; q as usize];
    for a in 0..q {
        neg[a as usize] = tmp.neg_code(a);
        for b in 0..q {
            add[(a * q + b) as usize] = tmp.add_code_generic(a, b);
            mul[(a * q + b) as usize] = tmp.mul_code_generic(a, b);
        }
    }
    let mut inv = vec![0u64; q as usize];
    for a in 1..q {
        let b = (1..q)
            .find(|&b| mul[(a * q + b) as usize] == 1)
            .expect("every nonzero element of a field has an inverse");
        inv[a as usize] = b;
    }
    OpTables { add, mul, neg, inv }
}

// ---- Field elements ----

/// An element of a finite field, held by its canonical code.
#[derive(Clone, Debug)]
pub struct FieldElement {
    spec: FieldSpec,
    code: u64,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.code == other.code
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.code.hash(state);
    }
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Canonical integer code in [0, q).
    pub fn code(&self) -> u64 {
        self.code
    }

    /// Base-p digits, ascending powers of the generator (length k).
    pub fn digits(&self) -> Vec<u64> {
        self.spec.to_digits(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_spec(rhs)?;
        Ok(Self { spec: self.spec.clone(), code: self.spec.add_code(self.code, rhs.code) })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_spec(rhs)?;
        Ok(Self { spec: self.spec.clone(), code: self.spec.sub_code(self.code, rhs.code) })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_spec(rhs)?;
        Ok(Self { spec: self.spec.clone(), code: self.spec.mul_code(self.code, rhs.code) })
    }

    pub fn neg(&self) -> Self {
        Self { spec: self.spec.clone(), code: self.spec.neg_code(self.code) }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        Ok(Self { spec: self.spec.clone(), code: self.spec.inv_code(self.code)? })
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { spec: self.spec.clone(), code: self.spec.pow_code(self.code, e) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}
