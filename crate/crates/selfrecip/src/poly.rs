//! Dense univariate polynomials over a [`FieldSpec`].
//!
//! Coefficients are stored as canonical element codes in ascending degree
//! order. The representation is normal: the vector is empty for the zero
//! polynomial, otherwise the last coefficient is nonzero. The zero polynomial
//! has degree `None`, which orders below every finite degree.
//!
//! Factorization is deterministic trial division against a sieve-built table
//! of monic irreducibles, cached per spec; outputs are reproducible
//! bit-for-bit across runs. Enumeration of monic polynomials is ordered by
//! ascending coefficient tuples `(a_0, ..., a_{n-1})` with the constant
//! coefficient most significant, so census histograms are reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

// ---- Raw helpers on coefficient-code vectors ----
//
// The census enumerations factor millions of polynomials; these helpers keep
// the hot paths free of per-coefficient wrapper types.

pub(crate) fn deg_codes(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn trim_codes(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn mul_codes(spec: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            out[i + j] = spec.add_code(out[i + j], spec.mul_code(x, y));
        }
    }
    trim_codes(&mut out);
    out
}

pub(crate) fn add_codes(spec: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = spec.add_code(x, y);
    }
    trim_codes(&mut out);
    out
}

pub(crate) fn sub_codes(spec: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = spec.sub_code(x, y);
    }
    trim_codes(&mut out);
    out
}

/// Long division: `f = q*g + r` with `deg r < deg g`. `g` must be nonzero.
pub(crate) fn divmod_codes(spec: &FieldSpec, f: &[u64], g: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let dg = deg_codes(g).expect("divisor must be nonzero");
    let mut rem = f.to_vec();
    trim_codes(&mut rem);
    if rem.len() <= dg {
        return (Vec::new(), rem);
    }
    let lead_inv = spec.inv_code(g[dg]).expect("leading coefficient is nonzero");
    let mut quot = vec![0u64; rem.len() - dg];
    let mut dr = rem.len() - 1;
    loop {
        if rem[dr] != 0 {
            let c = spec.mul_code(rem[dr], lead_inv);
            let shift = dr - dg;
            quot[shift] = c;
            for j in 0..=dg {
                if g[j] != 0 {
                    rem[j + shift] = spec.sub_code(rem[j + shift], spec.mul_code(c, g[j]));
                }
            }
        }
        if dr == dg {
            break;
        }
        dr -= 1;
    }
    rem.truncate(dg);
    trim_codes(&mut rem);
    (quot, rem)
}

/// Quotient `f / g` when the division is exact, else `None`.
pub(crate) fn try_exact_div(spec: &FieldSpec, f: &[u64], g: &[u64]) -> Option<Vec<u64>> {
    let (q, r) = divmod_codes(spec, f, g);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

pub(crate) fn divides(spec: &FieldSpec, f: &[u64], g: &[u64]) -> bool {
    divmod_codes(spec, f, g).1.is_empty()
}

pub(crate) fn make_monic_codes(spec: &FieldSpec, v: &mut [u64]) {
    if let Some(d) = deg_codes(v) {
        let lead = v[d];
        if lead != 1 {
            let inv = spec.inv_code(lead).expect("nonzero leading coefficient");
            for c in v.iter_mut() {
                *c = spec.mul_code(*c, inv);
            }
        }
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(f, 0) = monic(f)`.
/// At least one argument must be nonzero.
pub(crate) fn gcd_codes(spec: &FieldSpec, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim_codes(&mut a);
    trim_codes(&mut b);
    while !b.is_empty() {
        let (_, r) = divmod_codes(spec, &a, &b);
        a = b;
        b = r;
    }
    make_monic_codes(spec, &mut a);
    a
}

/// Advance a free-coefficient tuple `(a_0, ..., a_{n-1})` in lexicographic
/// order with `a_0` most significant (the last position cycles fastest).
/// Returns false once the tuple space is exhausted; `a_0` is never reset, so
/// a nonzero starting constant stays nonzero.
pub(crate) fn next_tuple_lex(free: &mut [u64], q: u64) -> bool {
    let mut pos = free.len();
    loop {
        if pos == 0 {
            return false;
        }
        pos -= 1;
        free[pos] += 1;
        if free[pos] < q {
            return true;
        }
        if pos == 0 {
            return false;
        }
        free[pos] = 0;
    }
}

// ---- Irreducible table (per-spec cache) ----

/// Raw per-degree irreducible lists for degrees `1..=max_degree`, growing the
/// spec's cache as needed. Entries are ascending coefficient-code vectors in
/// enumeration order.
pub(crate) fn irreducibles_raw(spec: &FieldSpec, max_degree: usize) -> Vec<Arc<Vec<Vec<u64>>>> {
    let mut cache = spec.irr_cache().lock().expect("irreducible cache poisoned");
    while cache.len() < max_degree {
        let d = cache.len() + 1;
        let mut list: Vec<Vec<u64>> = Vec::new();
        if d == 1 {
            for a in 0..spec.q() {
                list.push(vec![a, 1]);
            }
        } else {
            let mut cand = vec![0u64; d + 1];
            cand[d] = 1;
            loop {
                let reducible = (1..=d / 2)
                    .any(|t| cache[t - 1].iter().any(|g| divides(spec, &cand, g)));
                if !reducible {
                    list.push(cand.clone());
                }
                if !next_tuple_lex(&mut cand[..d], spec.q()) {
                    break;
                }
            }
        }
        cache.push(Arc::new(list));
    }
    cache[..max_degree].to_vec()
}

/// Complete table of monic irreducibles over the spec, grouped by degree
/// (index `d-1` holds degree `d`), each group in enumeration order.
pub fn irreducible_table(spec: &FieldSpec, max_degree: u32) -> Vec<Vec<Polynomial>> {
    irreducibles_raw(spec, max_degree as usize)
        .iter()
        .map(|group| {
            group
                .iter()
                .map(|codes| Polynomial { spec: spec.clone(), coeffs: codes.clone() })
                .collect()
        })
        .collect()
}

/// Trial-division factorization of a monic polynomial given by codes.
/// Returns `(irreducible, multiplicity)` pairs sorted by degree then by
/// ascending coefficient tuple.
pub(crate) fn factor_codes(spec: &FieldSpec, f: &[u64]) -> Vec<(Vec<u64>, u32)> {
    let mut rem = f.to_vec();
    trim_codes(&mut rem);
    let d0 = deg_codes(&rem).expect("factor_codes needs a nonzero input");
    debug_assert_eq!(rem[d0], 1, "factor_codes needs a monic input");
    let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
    if d0 == 0 {
        return out;
    }
    let table = irreducibles_raw(spec, d0 / 2);
    'sieve: for (di, group) in table.iter().enumerate() {
        let d = di + 1;
        for cand in group.iter() {
            let dr = rem.len() - 1;
            if 2 * d > dr {
                break 'sieve;
            }
            let mut mult = 0u32;
            while let Some(q) = try_exact_div(spec, &rem, cand) {
                rem = q;
                mult += 1;
                if rem.len() == 1 {
                    break;
                }
            }
            if mult > 0 {
                out.push((cand.clone(), mult));
                if rem.len() == 1 {
                    break 'sieve;
                }
            }
        }
    }
    if rem.len() > 1 {
        out.push((rem, 1));
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    #[cfg(debug_assertions)]
    {
        let mut prod = vec![1u64];
        for (g, e) in &out {
            for _ in 0..*e {
                prod = mul_codes(spec, &prod, g);
            }
        }
        let mut orig = f.to_vec();
        trim_codes(&mut orig);
        debug_assert_eq!(prod, orig, "factorization product must reproduce the input");
    }
    out
}

// ---- Polynomial ----

/// A dense univariate polynomial over a fixed [`FieldSpec`].
#[derive(Clone, Debug)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coeffs == other.coeffs
    }
}
impl Eq for Polynomial {}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Degree first, then ascending coefficient tuple; polynomials over
    /// different specs order by `(p, k, modulus)`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.spec.p(), self.spec.k(), self.spec.modulus(), self.coeffs.len(), &self.coeffs).cmp(
            &(other.spec.p(), other.spec.k(), other.spec.modulus(), other.coeffs.len(), &other.coeffs),
        )
    }
}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.coeffs.hash(state);
    }
}

impl Polynomial {
    pub fn zero(spec: &FieldSpec) -> Self {
        Polynomial { spec: spec.clone(), coeffs: Vec::new() }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Polynomial { spec: spec.clone(), coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x(spec: &FieldSpec) -> Self {
        Polynomial { spec: spec.clone(), coeffs: vec![0, 1] }
    }

    /// Build from ascending coefficient codes; trailing zeros are trimmed.
    pub fn from_codes(spec: &FieldSpec, codes: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = codes.iter().find(|&&c| c >= spec.q()) {
            return Err(Error::CodeOutOfRange { code: bad, q: spec.q() });
        }
        let mut coeffs = codes;
        trim_codes(&mut coeffs);
        Ok(Polynomial { spec: spec.clone(), coeffs })
    }

    pub(crate) fn from_trimmed(spec: &FieldSpec, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.last() != Some(&0));
        Polynomial { spec: spec.clone(), coeffs }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Ascending coefficient codes (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient code of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial (ordered below all degrees).
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient code, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Constant coefficient code (0 for the zero polynomial).
    pub fn constant_coeff(&self) -> u64 {
        self.coeff(0)
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
        Ok(Self::from_trimmed(&self.spec, add_codes(&self.spec, &self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_spec(rhs)?;
        Ok(Self::from_trimmed(&self.spec, sub_codes(&self.spec, &self.coeffs, &rhs.coeffs)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_spec(rhs)?;
        Ok(Self::from_trimmed(&self.spec, mul_codes(&self.spec, &self.coeffs, &rhs.coeffs)))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.spec.neg_code(c)).collect();
        Self::from_trimmed(&self.spec, coeffs)
    }

    /// Quotient and remainder with `deg r < deg g`; fails on zero divisor.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_spec(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divmod_codes(&self.spec, &self.coeffs, &g.coeffs);
        Ok((Self::from_trimmed(&self.spec, q), Self::from_trimmed(&self.spec, r)))
    }

    /// Evaluate at a field element by Horner's rule.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if *x.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.spec.add_code(self.spec.mul_code(acc, x.code()), c);
        }
        self.spec.element(acc)
    }

    /// Divide by the leading coefficient; fails on the zero polynomial.
    pub fn make_monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        make_monic_codes(&self.spec, &mut coeffs);
        Ok(Self::from_trimmed(&self.spec, coeffs))
    }

    /// Monic greatest common divisor via Euclid; `gcd(f, 0) = monic(f)`.
    pub fn gcd_monic(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(Self::from_trimmed(
            &self.spec,
            gcd_codes(&self.spec, self.coeffs.clone(), other.coeffs.clone()),
        ))
    }

    /// Coefficient reversal `x^n f(1/x)`. Requires a nonzero constant
    /// coefficient so the degree is preserved.
    pub fn reciprocal_raw(&self) -> Result<Self> {
        if self.constant_coeff() == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Self::from_trimmed(&self.spec, coeffs))
    }

    /// Monic form of the reversal.
    pub fn reciprocal_monic(&self) -> Result<Self> {
        self.reciprocal_raw()?.make_monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = vec![1u64];
        let mut base = self.coeffs.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_codes(&self.spec, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mul_codes(&self.spec, &base, &base);
            }
        }
        Self::from_trimmed(&self.spec, acc)
    }

    /// True iff the monic part has no monic divisor of degree in
    /// `[1, deg/2]`; degree-0 polynomials are not irreducible.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let mut monic = self.coeffs.clone();
        make_monic_codes(&self.spec, &mut monic);
        let table = irreducibles_raw(&self.spec, d / 2);
        Ok(!table.iter().any(|group| group.iter().any(|g| divides(&self.spec, &monic, g))))
    }

    /// Complete factorization into a unit times monic irreducibles.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = *self.coeffs.last().expect("nonzero");
        let unit = self.spec.element(lead).expect("leading coefficient is a valid code");
        let mut monic = self.coeffs.clone();
        make_monic_codes(&self.spec, &mut monic);
        let factors = factor_codes(&self.spec, &monic)
            .into_iter()
            .map(|(codes, e)| (Self::from_trimmed(&self.spec, codes), e))
            .collect();
        Ok(Factorization { unit, factors })
    }

    // ---- Text formats ----

    /// Parse any of the supported text forms: the canonical code list
    /// `"[a0,a1,...,an]"`, the human form `"x^3+2*x+1"` with element codes as
    /// coefficients, and (over F_2 only) the bitstring `"a0a1...an"`.
    pub fn parse(spec: &FieldSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t.starts_with('[') {
            return Self::parse_code_list(spec, t);
        }
        if spec.q() == 2 && t.bytes().all(|b| b == b'0' || b == b'1') {
            let codes = t.bytes().map(|b| (b - b'0') as u64).collect();
            return Self::from_codes(spec, codes);
        }
        Self::parse_human(spec, t)
    }

    fn parse_code_list(spec: &FieldSpec, t: &str) -> Result<Self> {
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {t:?}")))?
            .trim();
        if inner.is_empty() {
            return Ok(Self::zero(spec));
        }
        let codes = inner
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<u64>, _>>()
            .map_err(|_| Error::Parse(format!("bad coefficient list {t:?}")))?;
        Self::from_codes(spec, codes)
    }

    fn parse_human(spec: &FieldSpec, t: &str) -> Result<Self> {
        let cleaned: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        let mut acc: Vec<u64> = Vec::new();
        let mut term = String::new();
        let mut sign_neg = false;
        let apply = |term: &str, neg: bool, acc: &mut Vec<u64>| -> Result<()> {
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {t:?}")));
            }
            let (coeff_str, exp) = match term.find('x') {
                None => (term, 0usize),
                Some(ix) => {
                    let coeff = term[..ix].trim_end_matches('*');
                    let rest = &term[ix + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?
                    };
                    (coeff, exp)
                }
            };
            let code = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {coeff_str:?}")))?
            };
            if code >= spec.q() {
                return Err(Error::CodeOutOfRange { code, q: spec.q() });
            }
            if acc.len() <= exp {
                acc.resize(exp + 1, 0);
            }
            let signed = if neg { spec.neg_code(code) } else { code };
            acc[exp] = spec.add_code(acc[exp], signed);
            Ok(())
        };
        for (i, ch) in cleaned.chars().enumerate() {
            match ch {
                '+' | '-' if i > 0 => {
                    apply(&term, sign_neg, &mut acc)?;
                    term.clear();
                    sign_neg = ch == '-';
                }
                '-' => sign_neg = true,
                _ => term.push(ch),
            }
        }
        apply(&term, sign_neg, &mut acc)?;
        Self::from_codes(spec, acc)
    }

    /// Canonical emission: `"[a0,a1,...,an]"` (the zero polynomial is `"[]"`).
    pub fn to_code_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    }

    /// Bitstring form `"a0a1...an"`, available over F_2 only.
    pub fn to_bitstring(&self) -> Option<String> {
        if self.spec.q() != 2 {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some("0".into());
        }
        Some(self.coeffs.iter().map(|&c| if c == 0 { '0' } else { '1' }).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Human form with descending powers, e.g. `x^3+2*x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition across field specs")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction across field specs")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication across field specs")
    }
}

// ---- Factorization ----

/// A unit constant times a multiset of monic irreducible factors, sorted by
/// degree and then by ascending coefficient tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    unit: FieldElement,
    factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn factors(&self) -> &[(Polynomial, u32)] {
        &self.factors
    }

    /// Multiply the unit and all factor powers back together.
    pub fn product(&self) -> Polynomial {
        let spec = self.unit.spec();
        let mut acc = Polynomial::from_trimmed(
            spec,
            if self.unit.is_zero() { vec![] } else { vec![self.unit.code()] },
        );
        for (g, e) in &self.factors {
            acc = acc.checked_mul(&g.pow(*e)).expect("factors share the unit's spec");
        }
        acc
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(format!("{}", self.unit));
        }
        for (g, e) in &self.factors {
            if *e == 1 {
                parts.push(format!("({g})"));
            } else {
                parts.push(format!("({g})^{e}"));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

// ---- Enumeration ----

/// Iterator over every monic polynomial of one degree, in ascending
/// coefficient-tuple order.
pub struct MonicIter {
    spec: FieldSpec,
    degree: usize,
    nonzero_constant: bool,
    free: Vec<u64>,
    started: bool,
    done: bool,
}

/// Every monic polynomial of the given degree, each exactly once, ordered by
/// ascending coefficient tuples `(a_0, ..., a_{n-1})` with `a_0` most
/// significant. With `nonzero_constant` set (and degree >= 1) the constant
/// coefficient ranges over nonzero codes only, giving `(q-1) q^{n-1}` items;
/// otherwise there are `q^n`.
pub fn enumerate_monic(spec: &FieldSpec, degree: u32, nonzero_constant: bool) -> MonicIter {
    let degree = degree as usize;
    let mut free = vec![0u64; degree];
    if nonzero_constant && degree >= 1 {
        free[0] = 1;
    }
    MonicIter {
        spec: spec.clone(),
        degree,
        nonzero_constant,
        free,
        started: false,
        done: false,
    }
}

impl Iterator for MonicIter {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.done {
            return None;
        }
        if self.degree == 0 {
            self.done = true;
            return Some(Polynomial::one(&self.spec));
        }
        if self.started {
            if !next_tuple_lex(&mut self.free, self.spec.q()) {
                self.done = true;
                return None;
            }
            debug_assert!(!self.nonzero_constant || self.free[0] != 0);
        }
        self.started = true;
        let mut coeffs = self.free.clone();
        coeffs.push(1);
        Some(Polynomial::from_trimmed(&self.spec, coeffs))
    }
}
