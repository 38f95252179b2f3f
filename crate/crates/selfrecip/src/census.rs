//! Exact counting of monic polynomials by self-reciprocal factor structure.
//!
//! Closed forms, all in arbitrary-precision integers:
//!
//! - `t(n) = (q-1) q^{n-1}` — monic degree-n polynomials with nonzero
//!   constant coefficient;
//! - `s(n) = q^{floor(n/2)}` — monic self-reciprocal polynomials of degree n;
//! - `z(n)` — monic polynomials with nonzero constant and no self-reciprocal
//!   factor other than 1: `z(0) = 1`, `z(1) = q-2`, and for `n >= 2` the
//!   single integer expression `((q-1)^2 q^{n-1} + (-1)^{n+1} 2(q-1)) / (q+1)`
//!   with an asserted exact division;
//! - `pr(n)` — polynomials with a self-reciprocal factor of degree >= 2, by
//!   convolution `sum z(i) s(n-i)` and by closed form (`pr(2) = q` is a
//!   genuine special case; for `n >= 3` the closed form is `(q-1) q^{n-2}`);
//! - `p(n, j) = z(n-j) s(j)` — polynomials whose maximal self-reciprocal
//!   factor has degree exactly j.
//!
//! [`census_brute`] reproduces the same histogram by full enumeration and
//! [`verify`] cross-checks every identity exactly, reporting the first
//! counterexample polynomial on any mismatch.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poly::{self, Polynomial};
use crate::recip;

/// Default per-run enumeration budget (polynomials per `(q, n)` pair).
pub const DEFAULT_BUDGET: u64 = 2_000_000;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `t(n) = (q-1) q^{n-1}` for `n >= 1`.
pub fn count_t(q: u64, n: u32) -> Result<BigUint> {
    assert!(q >= 2, "field size must be at least 2");
    if n == 0 {
        return Err(Error::BadDegree("t(n) requires n >= 1".into()));
    }
    Ok(big(q - 1) * big(q).pow(n - 1))
}

/// `s(0) = 1`, `s(2j) = s(2j+1) = q^j`.
pub fn count_s(q: u64, n: u32) -> BigUint {
    assert!(q >= 2, "field size must be at least 2");
    big(q).pow(n / 2)
}

/// Count of degree-n monic polynomials with nonzero constant coefficient and
/// no self-reciprocal factor other than 1.
pub fn z_closed(q: u64, n: u32) -> BigUint {
    assert!(q >= 2, "field size must be at least 2");
    match n {
        0 => BigUint::one(),
        1 => big(q - 2),
        _ => {
            let correction = big(2) * big(q - 1);
            let lead = big(q - 1) * big(q - 1) * big(q).pow(n - 1);
            let numerator = if n % 2 == 1 { lead + correction } else { lead - correction };
            let (quotient, remainder) = numerator.div_rem(&big(q + 1));
            assert!(
                remainder.is_zero(),
                "z({n}) numerator not divisible by q+1 for q={q}: implementation bug"
            );
            quotient
        }
    }
}

/// `pr(n)` by convolution: `sum_{i=0}^{n-2} z(i) s(n-i)`; zero for `n < 2`.
pub fn pr_conv(q: u64, n: u32) -> BigUint {
    if n < 2 {
        return BigUint::zero();
    }
    (0..=n - 2).map(|i| z_closed(q, i) * count_s(q, n - i)).sum()
}

/// `pr(n)` in closed form: 0 for `n <= 1`, `q` for `n = 2` (the even-degree
/// closed form only applies from degree 4 up), `(q-1) q^{n-2}` for `n >= 3`.
pub fn pr_closed(q: u64, n: u32) -> BigUint {
    assert!(q >= 2, "field size must be at least 2");
    match n {
        0 | 1 => BigUint::zero(),
        2 => big(q),
        _ => big(q - 1) * big(q).pow(n - 2),
    }
}

/// `p(n, j) = z(n-j) s(j)` for `0 <= j <= n` (`j = 0` gives `z(n)`).
pub fn p_count(q: u64, n: u32, j: u32) -> Result<BigUint> {
    if j > n {
        return Err(Error::BadRange { n, j });
    }
    Ok(z_closed(q, n - j) * count_s(q, j))
}

/// One histogram row: the exact count of degree-n monic polynomials over F_q
/// with nonzero constant whose maximal self-reciprocal factor has degree j.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub q: u64,
    pub n: u32,
    pub j: u32,
    #[serde(serialize_with = "ser_big")]
    pub count: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_brute: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "match")]
    pub matches: Option<bool>,
}

/// Closed-form histogram rows for all `0 <= j <= n`.
pub fn census_rows(q: u64, n: u32) -> Result<Vec<CensusRow>> {
    if n == 0 {
        return Err(Error::BadDegree("census requires n >= 1".into()));
    }
    (0..=n)
        .map(|j| {
            Ok(CensusRow { q, n, j, count: p_count(q, n, j)?, count_brute: None, matches: None })
        })
        .collect()
}

/// Brute-force histogram over the maximal self-reciprocal factor degree.
#[derive(Clone, Debug)]
pub struct BruteHistogram {
    pub q: u64,
    pub n: u32,
    /// `counts[j]` = number of enumerated polynomials with maximal factor
    /// degree exactly j.
    pub counts: Vec<u64>,
    /// First polynomial (in enumeration order) landing in each bucket.
    pub first_example: Vec<Option<Polynomial>>,
}

impl BruteHistogram {
    /// Bucket j = 0: the palindrome-free count.
    pub fn z_brute(&self) -> u64 {
        self.counts[0]
    }

    /// Buckets j >= 2: the partially reciprocal count.
    pub fn pr_brute(&self) -> u64 {
        self.counts.iter().skip(2).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Enumerate every monic degree-n polynomial with nonzero constant over the
/// spec and bucket by the degree of the maximal self-reciprocal factor.
///
/// Refuses runs whose `t(n)` exceeds the budget. The factor degree is read
/// off `gcd(f, reverse(f))`: the gcd is 1 exactly for the palindrome-free
/// bucket, and otherwise contains the maximal factor, so only the (smaller)
/// gcd needs factoring. Equivalence with the direct rule is sampled here and
/// proved out exhaustively by the test suites.
pub fn census_brute(spec: &FieldSpec, n: u32, budget: u64) -> Result<BruteHistogram> {
    if n == 0 {
        return Err(Error::BadDegree("census requires n >= 1".into()));
    }
    let q = spec.q();
    let required = count_t(q, n)?;
    if required > big(budget) {
        return Err(Error::BudgetExceeded { required: required.to_string(), budget });
    }

    let n = n as usize;
    let mut counts = vec![0u64; n + 1];
    let mut first_example: Vec<Option<Polynomial>> = vec![None; n + 1];
    // Coefficients a_0 .. a_{n-1}, 1: the odometer walks the free part in
    // ascending tuple order with the (nonzero) constant most significant.
    let mut coeffs = vec![0u64; n + 1];
    coeffs[0] = 1;
    coeffs[n] = 1;
    let mut sample = 0u32;
    loop {
        let j = max_factor_degree_fast(spec, &coeffs);
        debug_assert!(j <= n);
        // Spot-check the gcd shortcut against the direct factorization rule.
        sample = sample.wrapping_add(1);
        if sample.is_multiple_of(1024) {
            let direct =
                recip::max_factor_degree_codes(spec, &poly::factor_codes(spec, &coeffs));
            assert_eq!(j, direct, "gcd shortcut disagreed with the direct rule");
        }
        counts[j] += 1;
        if first_example[j].is_none() {
            first_example[j] =
                Some(Polynomial::from_codes(spec, coeffs.clone()).expect("valid codes"));
        }
        if !poly::next_tuple_lex(&mut coeffs[..n], q) {
            break;
        }
    }
    Ok(BruteHistogram { q, n: n as u32, counts, first_example })
}

/// Degree of the maximal self-reciprocal factor of a monic polynomial with
/// nonzero constant, given by codes.
fn max_factor_degree_fast(spec: &FieldSpec, coeffs: &[u64]) -> usize {
    let mut rev = coeffs.to_vec();
    rev.reverse();
    let g = poly::gcd_codes(spec, coeffs.to_vec(), rev);
    if g.len() == 1 {
        return 0; // coprime with the reversal: palindrome-free
    }
    // The maximal factor of f equals the maximal factor of gcd(f, f*).
    recip::max_factor_degree_codes(spec, &poly::factor_codes(spec, &g))
}

// ---- Verification ----

/// Closed-vs-brute comparison for one bucket.
#[derive(Clone, Debug, Serialize)]
pub struct BucketCheck {
    pub j: u32,
    #[serde(serialize_with = "ser_big")]
    pub closed: BigUint,
    pub brute: u64,
    #[serde(rename = "match")]
    pub matches: bool,
    /// First enumerated polynomial in the bucket, reported on mismatch.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// All exact checks for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub n: u32,
    #[serde(serialize_with = "ser_big")]
    pub t: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub z_closed: BigUint,
    pub z_brute: u64,
    pub z_match: bool,
    #[serde(serialize_with = "ser_big")]
    pub pr_closed: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub pr_conv: BigUint,
    pub pr_brute: u64,
    /// pr checks apply from degree 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pr_match: Option<bool>,
    /// `t(n) - pr(n) = z(n) + z(n-1)`, on brute values, from degree 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_match: Option<bool>,
    pub total_matches_t: bool,
    pub buckets: Vec<BucketCheck>,
    pub pass: bool,
}

/// Exact closed-form vs brute-force comparison over a degree range.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub field: String,
    pub q: u64,
    pub n_max: u32,
    pub budget: u64,
    pub rows: Vec<VerifyRow>,
    pub all_pass: bool,
    /// Wall-clock time; excluded from serialized machine reports so that
    /// identical invocations produce byte-identical output.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Run the full brute-force comparison for every degree `1 <= n <= n_max`.
///
/// For each degree from 2 up this checks, all by exact equality: the
/// palindrome-free bucket against `z_closed`, the partially-reciprocal total
/// against both `pr_conv` and `pr_closed`, every histogram bucket against
/// `p_count`, the identity `t(n) - pr(n) = z(n) + z(n-1)` on brute values,
/// and the histogram total against `t(n)`. A range with `n_max < 2` passes
/// vacuously.
pub fn verify(spec: &FieldSpec, n_max: u32, budget: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let q = spec.q();
    let mut rows = Vec::new();
    let mut all_pass = true;
    if n_max >= 2 {
        let hists: Vec<BruteHistogram> =
            (1..=n_max).map(|n| census_brute(spec, n, budget)).collect::<Result<_>>()?;
        for n in 1..=n_max {
            let hist = &hists[(n - 1) as usize];
            let t = count_t(q, n)?;
            let zc = z_closed(q, n);
            let z_match = big(hist.z_brute()) == zc;
            let prc = pr_closed(q, n);
            let prv = pr_conv(q, n);
            let pr_match = if n >= 2 {
                Some(big(hist.pr_brute()) == prc && prc == prv)
            } else {
                None
            };
            let identity_match = if n >= 2 {
                let prev = &hists[(n - 2) as usize];
                let lhs = t.clone() - big(hist.pr_brute());
                let rhs = big(hist.z_brute()) + big(prev.z_brute());
                Some(lhs == rhs)
            } else {
                None
            };
            let total_matches_t = big(hist.total()) == t;
            let mut buckets = Vec::with_capacity(n as usize + 1);
            let mut buckets_pass = true;
            for j in 0..=n {
                let closed = p_count(q, n, j)?;
                let brute = hist.counts[j as usize];
                let matches = big(brute) == closed;
                buckets_pass &= matches;
                buckets.push(BucketCheck {
                    j,
                    closed,
                    brute,
                    matches,
                    counterexample: if matches {
                        None
                    } else {
                        hist.first_example[j as usize].as_ref().map(|p| p.to_code_list())
                    },
                });
            }
            let pass = z_match
                && pr_match.unwrap_or(true)
                && identity_match.unwrap_or(true)
                && total_matches_t
                && buckets_pass;
            all_pass &= pass;
            rows.push(VerifyRow {
                n,
                t,
                z_closed: zc,
                z_brute: hist.z_brute(),
                z_match,
                pr_closed: prc,
                pr_conv: prv,
                pr_brute: hist.pr_brute(),
                pr_match,
                identity_match,
                total_matches_t,
                buckets,
                pass,
            });
        }
    }
    Ok(VerificationReport {
        field: spec.to_string(),
        q,
        n_max,
        budget,
        rows,
        all_pass,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_examples() {
        assert_eq!(count_t(2, 2).unwrap(), big(2));
        assert_eq!(count_t(3, 1).unwrap(), big(2));
        // Cross-check against the enumeration stream length.
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(count_t(5, 3).unwrap(), big(poly::enumerate_monic(&f5, 3, true).count() as u64));
        assert!(count_t(2, 0).is_err());
    }

    #[test]
    fn s_examples() {
        assert_eq!(count_s(7, 1), big(1));
        assert_eq!(count_s(3, 4), big(9));
        assert_eq!(count_s(2, 5), big(4));
        assert_eq!(count_s(2, 0), big(1));
        // Direct meaning: monic self-reciprocal polynomials of degree n.
        let f3 = FieldSpec::prime(3).unwrap();
        for n in 1..=5u32 {
            let direct = poly::enumerate_monic(&f3, n, true)
                .filter(|f| crate::recip::is_self_reciprocal(f).unwrap())
                .count() as u64;
            assert_eq!(count_s(3, n), big(direct), "n={n}");
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_closed(7, 1), big(5));
        assert_eq!(z_closed(3, 2), big(2)); // (q-1)(q-2)
        assert_eq!(z_closed(2, 5), big(6));
        assert_eq!(z_closed(2, 2), big(0));
        assert_eq!(z_closed(9, 0), big(1));
    }

    #[test]
    fn pr_examples() {
        for q in [2u64, 3, 5, 9] {
            assert_eq!(pr_conv(q, 2), big(q));
            assert_eq!(pr_conv(q, 3), big(q - 1) * big(q));
            assert_eq!(pr_conv(q, 1), big(0));
        }
        assert_eq!(pr_closed(3, 2), big(3));
        assert_eq!(pr_closed(2, 4), big(4));
        assert_eq!(pr_closed(5, 5), big(500));
    }

    #[test]
    fn p_count_examples() {
        for q in [3u64, 4] {
            for n in 1..=6u32 {
                assert_eq!(p_count(q, n, n).unwrap(), count_s(q, n));
            }
        }
        assert_eq!(p_count(2, 4, 2).unwrap(), big(0));
        assert_eq!(p_count(3, 3, 1).unwrap(), big(2));
        assert_eq!(p_count(3, 2, 3), Err(Error::BadRange { n: 2, j: 3 }));
    }

    #[test]
    fn conv_equals_closed_pure_integers() {
        for q in 2u64..=9 {
            for n in 0..=64u32 {
                assert_eq!(pr_conv(q, n), pr_closed(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn binary_specialization() {
        // Over F_2: z(1) = z(2) = 0 and for n >= 3,
        // z(n) = (2^{n-1} + 2)/3 for odd n, (2^{n-1} - 2)/3 for even n.
        assert_eq!(z_closed(2, 1), big(0));
        assert_eq!(z_closed(2, 2), big(0));
        for n in 3..=64u32 {
            let pow = big(2).pow(n - 1);
            let expect = if n % 2 == 1 { (pow + big(2)) / big(3) } else { (pow - big(2)) / big(3) };
            assert_eq!(z_closed(2, n), expect, "n={n}");
        }
    }

    #[test]
    fn buckets_sum_to_t() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for n in 1..=64u32 {
                let total: BigUint = (0..=n).map(|j| p_count(q, n, j).unwrap()).sum();
                assert_eq!(total, count_t(q, n).unwrap(), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn brute_census_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let hist = census_brute(&f2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(hist.counts, vec![0, 0, 2]); // both degree-2 candidates are palindromes

        let f3 = FieldSpec::prime(3).unwrap();
        let hist = census_brute(&f3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(hist.z_brute(), 2);
        assert_eq!(hist.counts, vec![2, 1, 3]);

        let f5 = FieldSpec::prime(5).unwrap();
        let hist = census_brute(&f5, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(hist.counts, vec![3, 1]); // q-2 palindrome-free, plus x+1
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = FieldSpec::prime(2).unwrap();
        match census_brute(&f2, 21, 1000) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, (1u64 << 20).to_string());
                assert_eq!(budget, 1000);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn verify_small_fields() {
        let f3 = FieldSpec::prime(3).unwrap();
        let report = verify(&f3, 2, DEFAULT_BUDGET).unwrap();
        assert!(report.all_pass);
        let row = report.rows.last().unwrap();
        // t(2) - pr(2) = z(2) + z(1): 6 - 3 = 2 + 1.
        assert_eq!(row.t, big(6));
        assert_eq!(row.pr_brute, 3);
        assert_eq!(row.z_brute, 2);
        assert_eq!(report.rows[0].z_brute, 1);

        // Degenerate range: vacuous pass.
        let f2 = FieldSpec::prime(2).unwrap();
        let report = verify(&f2, 1, DEFAULT_BUDGET).unwrap();
        assert!(report.all_pass);
        assert!(report.rows.is_empty());

        let report = verify(&f2, 6, DEFAULT_BUDGET).unwrap();
        assert!(report.all_pass);
    }

    #[test]
    fn verify_extension_field() {
        let f4 = FieldSpec::parse("4").unwrap();
        let report = verify(&f4, 4, DEFAULT_BUDGET).unwrap();
        assert!(report.all_pass);
    }

    #[test]
    fn census_rows_serialize_exactly() {
        let rows = census_rows(2, 40).unwrap();
        assert_eq!(rows.len(), 41);
        // Closed forms are exact big integers far beyond u64.
        assert_eq!(rows[0].count, z_closed(2, 40));
        let json = serde_json::to_string(&rows[0]).unwrap();
        assert!(json.contains("\"count\":\"183251937962"));
    }
}
