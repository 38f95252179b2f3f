//! Self-reciprocal (palindrome) factor structure.
//!
//! A monic polynomial with nonzero constant coefficient is self-reciprocal
//! when it equals its own coefficient reversal — strict equality, so in odd
//! characteristic `x - 1` is *not* self-reciprocal even though its square is.
//! Monic irreducibles split into three classes under reversal: strict
//! palindromes, anti-palindromes (reversal equals the negation; odd
//! characteristic only), and reversal-pairs of distinct partners.
//!
//! [`max_self_reciprocal_factor`] extracts the largest monic self-reciprocal
//! divisor by a constructive rule over the factorization; the rule is
//! validated against the independent divisor-enumeration oracle
//! [`max_self_reciprocal_factor_oracle`] by the test suites rather than
//! assumed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poly::{self, Factorization, Polynomial};

/// How a monic irreducible behaves under coefficient reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfAssocClass {
    /// `g` equals its raw reversal; forces constant coefficient 1.
    StrictPalindrome,
    /// The raw reversal equals `-g`; odd characteristic only, constant
    /// coefficient -1. Even powers of such factors are strict palindromes.
    AntiPalindrome,
    /// Reversal leads to a different monic irreducible; the partner's
    /// partner is `g` again.
    Paired { partner: Polynomial },
}

fn require_monic_nonzero_const(f: &Polynomial) -> Result<()> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.constant_coeff() == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(())
}

/// Strict palindrome test: `a_i = a_{n-i}` for all i.
pub fn is_self_reciprocal(f: &Polynomial) -> Result<bool> {
    require_monic_nonzero_const(f)?;
    let c = f.coeffs();
    Ok((0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i]))
}

/// Classify a monic irreducible (other than `x`) by its reversal behaviour.
pub fn classify_irreducible(g: &Polynomial) -> Result<SelfAssocClass> {
    if g.coeffs() == [0, 1] {
        return Err(Error::FactorIsX);
    }
    require_monic_nonzero_const(g)?;
    debug_assert!(g.is_irreducible().unwrap_or(false), "classify expects an irreducible");
    let raw = g.reciprocal_raw()?;
    if raw == *g {
        return Ok(SelfAssocClass::StrictPalindrome);
    }
    if g.spec().p() != 2 && raw == g.neg() {
        return Ok(SelfAssocClass::AntiPalindrome);
    }
    Ok(SelfAssocClass::Paired { partner: raw.make_monic()? })
}

/// Degree contributed to the maximal self-reciprocal factor by a sorted
/// factor list, without building the factor polynomial. Used by the census
/// enumeration.
pub(crate) fn max_factor_degree_codes(spec: &FieldSpec, factors: &[(Vec<u64>, u32)]) -> usize {
    let mut total = 0usize;
    for (g, &e) in factors.iter().map(|(g, e)| (g, e)) {
        if g[0] == 0 {
            continue; // a power of x carries no self-reciprocal part
        }
        let deg = g.len() - 1;
        let mut rev: Vec<u64> = g.clone();
        rev.reverse();
        if rev == *g {
            total += deg * e as usize;
            continue;
        }
        if spec.p() != 2 {
            let neg: Vec<u64> = g.iter().map(|&c| spec.neg_code(c)).collect();
            if rev == neg {
                total += deg * (e - e % 2) as usize;
                continue;
            }
        }
        // Reversal pair: count each {g, partner} pair once, at the smaller
        // member. The partner has the same degree.
        let mut partner = rev;
        poly::make_monic_codes(spec, &mut partner);
        if *g < partner {
            if let Some((_, pe)) = factors.iter().find(|(h, _)| *h == partner) {
                total += 2 * deg * e.min(*pe) as usize;
            }
        }
    }
    total
}

/// The maximal monic self-reciprocal divisor `h` of `f` and the cofactor
/// `f / h`, built from the factorization: strict palindromes contribute their
/// full power, anti-palindromes their largest even power, and reversal pairs
/// `(g, partner)` contribute `(g * partner)^min(e, e_partner)`.
pub fn max_self_reciprocal_factor(f: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    require_monic_nonzero_const(f)?;
    let spec = f.spec();
    let fac = f.factor()?;
    let mut h = Polynomial::one(spec);
    for (g, e) in fac.factors() {
        match classify_irreducible(g)? {
            SelfAssocClass::StrictPalindrome => {
                h = h.checked_mul(&g.pow(*e))?;
            }
            SelfAssocClass::AntiPalindrome => {
                let even = e - e % 2;
                if even > 0 {
                    h = h.checked_mul(&g.pow(even))?;
                }
            }
            SelfAssocClass::Paired { partner } => {
                if *g < partner {
                    if let Some((_, pe)) = fac.factors().iter().find(|(x, _)| *x == partner) {
                        let m = (*e).min(*pe);
                        if m > 0 {
                            h = h.checked_mul(&g.checked_mul(&partner)?.pow(m))?;
                        }
                    }
                }
            }
        }
    }
    let (cofactor, rem) = f.divmod(&h)?;
    debug_assert!(rem.is_zero(), "maximal self-reciprocal factor must divide f");
    Ok((h, cofactor))
}

/// Brute-force oracle: enumerate every monic divisor of `f` from the
/// factorization exponent tuples, keep the self-reciprocal ones, and return
/// all of maximal degree. The degree-0 divisor 1 is always present, so the
/// result is never empty.
pub fn max_self_reciprocal_factor_oracle(f: &Polynomial) -> Result<Vec<Polynomial>> {
    require_monic_nonzero_const(f)?;
    let divisors = monic_divisors(&f.factor()?);
    let mut best: Vec<Polynomial> = Vec::new();
    let mut best_deg = 0usize;
    for d in divisors {
        if !is_self_reciprocal(&d)? {
            continue;
        }
        let deg = d.degree().unwrap_or(0);
        match deg.cmp(&best_deg) {
            std::cmp::Ordering::Greater => {
                best_deg = deg;
                best = vec![d];
            }
            std::cmp::Ordering::Equal => best.push(d),
            std::cmp::Ordering::Less => {}
        }
    }
    best.sort();
    best.dedup();
    Ok(best)
}

/// All monic divisors of the factored polynomial (including 1 and the monic
/// part itself).
pub fn monic_divisors(fac: &Factorization) -> Vec<Polynomial> {
    let spec = fac.unit().spec();
    let mut out = vec![Polynomial::one(spec)];
    for (g, e) in fac.factors() {
        let mut powers = Vec::with_capacity(*e as usize);
        let mut acc = g.clone();
        for _ in 0..*e {
            powers.push(acc.clone());
            acc = acc.checked_mul(g).expect("same spec");
        }
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            next.push(d.clone());
            for p in &powers {
                next.push(d.checked_mul(p).expect("same spec"));
            }
        }
        out = next;
    }
    out
}

/// True iff the maximal self-reciprocal factor of `f` has degree at least
/// `min_degree`.
pub fn has_self_reciprocal_factor(f: &Polynomial, min_degree: u32) -> Result<bool> {
    let (h, _) = max_self_reciprocal_factor(f)?;
    Ok(h.degree().unwrap_or(0) >= min_degree as usize)
}

// ---- CLI-facing report ----

/// Per-factor entry of the classification breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub factor: String,
    pub multiplicity: u32,
    pub class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
}

/// Report record for one polynomial: maximal self-reciprocal factor,
/// cofactor, and the per-irreducible class breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct RecipReport {
    pub input: String,
    pub max_factor: String,
    pub max_factor_degree: usize,
    pub cofactor: String,
    pub class_breakdown: Vec<ClassEntry>,
}

/// Build the report record for a monic polynomial with nonzero constant.
pub fn report(f: &Polynomial) -> Result<RecipReport> {
    let (h, cofactor) = max_self_reciprocal_factor(f)?;
    let fac = f.factor()?;
    let mut breakdown = Vec::new();
    for (g, e) in fac.factors() {
        let entry = match classify_irreducible(g)? {
            SelfAssocClass::StrictPalindrome => ClassEntry {
                factor: g.to_code_list(),
                multiplicity: *e,
                class: "strict_palindrome",
                partner: None,
            },
            SelfAssocClass::AntiPalindrome => ClassEntry {
                factor: g.to_code_list(),
                multiplicity: *e,
                class: "anti_palindrome",
                partner: None,
            },
            SelfAssocClass::Paired { partner } => ClassEntry {
                factor: g.to_code_list(),
                multiplicity: *e,
                class: "paired",
                partner: Some(partner.to_code_list()),
            },
        };
        breakdown.push(entry);
    }
    Ok(RecipReport {
        input: f.to_code_list(),
        max_factor: h.to_code_list(),
        max_factor_degree: h.degree().unwrap_or(0),
        cofactor: cofactor.to_code_list(),
        class_breakdown: breakdown,
    })
}
