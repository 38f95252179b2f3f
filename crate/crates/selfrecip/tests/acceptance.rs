//! Acceptance suite.
//!
//! Every criterion is checked at exact integer equality (no tolerances
//! anywhere — the library is exact by construction) and prints one pass/fail
//! line; run with `cargo test --test acceptance -- --nocapture` to see them.
//!
//! Criteria 1-4 share one brute-force enumeration grid:
//! (q, n_max) in {(2,18), (3,11), (4,9), (5,8), (7,6), (8,6), (9,6)}.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selfrecip::census::{self, BruteHistogram};
use selfrecip::poly::{self, Polynomial};
use selfrecip::{index2, recip, FieldSpec};

const GRID: &[(&str, u32)] =
    &[("2", 18), ("3", 11), ("4", 9), ("5", 8), ("7", 6), ("8", 6), ("9", 6)];

struct GridEntry {
    q: u64,
    n_max: u32,
    /// Histograms for degrees 1..=n_max (index n-1).
    hists: Vec<BruteHistogram>,
}

struct Grid {
    entries: Vec<GridEntry>,
    build_secs: f64,
}

fn grid() -> &'static Grid {
    static G: OnceLock<Grid> = OnceLock::new();
    G.get_or_init(|| {
        let start = Instant::now();
        let entries = GRID
            .iter()
            .map(|&(descriptor, n_max)| {
                let spec = FieldSpec::parse(descriptor).expect("grid descriptor");
                let hists = (1..=n_max)
                    .map(|n| {
                        census::census_brute(&spec, n, census::DEFAULT_BUDGET)
                            .expect("grid run fits the default budget")
                    })
                    .collect();
                GridEntry { q: spec.q(), n_max, hists }
            })
            .collect();
        Grid { entries, build_secs: start.elapsed().as_secs_f64() }
    })
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn report(id: u32, desc: &str, pass: bool) {
    println!("acceptance criterion {id:2}: {} — {desc}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {desc}");
}

#[test]
fn criterion_01_palindrome_free_counts_exact() {
    let g = grid();
    let mut pass = true;
    for entry in &g.entries {
        let q = entry.q;
        pass &= census::z_closed(q, 0) == big(1);
        pass &= census::z_closed(q, 1) == big(q - 2);
        pass &= big(entry.hists[0].z_brute()) == big(q - 2);
        for n in 2..=entry.n_max {
            let brute = entry.hists[(n - 1) as usize].z_brute();
            let closed = census::z_closed(q, n);
            if big(brute) != closed {
                eprintln!("z mismatch at q={q} n={n}: brute {brute} closed {closed}");
                pass = false;
            }
        }
    }
    let within_budget = g.build_secs < 300.0;
    report(
        1,
        &format!(
            "brute-force z(n) equals the closed form on the full grid \
             (enumeration took {:.1}s, limit 300s)",
            g.build_secs
        ),
        pass && within_budget,
    );
}

#[test]
fn criterion_02_deflation_identity() {
    let g = grid();
    let mut pass = true;
    for entry in &g.entries {
        for n in 2..=entry.n_max {
            let hist = &entry.hists[(n - 1) as usize];
            let prev = &entry.hists[(n - 2) as usize];
            let t = census::count_t(entry.q, n).unwrap();
            let lhs = t - big(hist.pr_brute());
            let rhs = big(hist.z_brute()) + big(prev.z_brute());
            if lhs != rhs {
                eprintln!("identity fails at q={} n={n}: {lhs} != {rhs}", entry.q);
                pass = false;
            }
        }
    }
    report(2, "t(n) - pr(n) = z(n) + z(n-1) holds exactly on brute values", pass);
}

#[test]
fn criterion_03_pr_consistency() {
    // Pure integer identity across q = 2..=9 up to degree 64.
    let start = Instant::now();
    let mut pass = true;
    for q in 2u64..=9 {
        for n in 0..=64u32 {
            if census::pr_conv(q, n) != census::pr_closed(q, n) {
                eprintln!("pr_conv != pr_closed at q={q} n={n}");
                pass = false;
            }
        }
    }
    let integer_secs = start.elapsed().as_secs_f64();
    pass &= integer_secs < 1.0;
    // Brute agreement on the enumeration grid, including pr(2) = q.
    let g = grid();
    for entry in &g.entries {
        for n in 2..=entry.n_max {
            let brute = entry.hists[(n - 1) as usize].pr_brute();
            if big(brute) != census::pr_conv(entry.q, n) {
                eprintln!("pr brute mismatch at q={} n={n}", entry.q);
                pass = false;
            }
        }
        pass &= entry.hists[1].pr_brute() == entry.q;
    }
    report(
        3,
        &format!(
            "pr_conv = pr_closed for q in 2..=9, n <= 64 ({integer_secs:.3}s) \
             and pr_brute = pr_conv on the grid"
        ),
        pass,
    );
}

#[test]
fn criterion_04_histogram_matches_product_formula() {
    let g = grid();
    let mut pass = true;
    for entry in &g.entries {
        let q = entry.q;
        for n in 1..=entry.n_max {
            let hist = &entry.hists[(n - 1) as usize];
            let mut total = BigUint::default();
            for j in 0..=n {
                let closed = census::p_count(q, n, j).unwrap();
                total += &closed;
                let brute = hist.counts[j as usize];
                if big(brute) != closed {
                    pass = false;
                    let example = hist.first_example[j as usize]
                        .as_ref()
                        .map(|p| p.to_code_list())
                        .unwrap_or_else(|| "(empty bucket)".into());
                    eprintln!(
                        "p({n},{j}) mismatch at q={q}: brute {brute}, closed {closed}; \
                         first counterexample polynomial: {example}"
                    );
                }
            }
            if total != census::count_t(q, n).unwrap() {
                eprintln!("sum_j p({n},j) != t({n}) at q={q}");
                pass = false;
            }
        }
    }
    report(4, "full j-histogram equals z(n-j)s(j) and sums to t(n) on the grid", pass);
}

#[test]
fn criterion_05_binary_specialization() {
    let mut pass = census::z_closed(2, 1) == big(0) && census::z_closed(2, 2) == big(0);
    for n in 3..=64u32 {
        let pow = big(2).pow(n - 1);
        let expect =
            if n % 2 == 1 { (pow + big(2)) / big(3) } else { (pow - big(2)) / big(3) };
        if census::z_closed(2, n) != expect {
            eprintln!("binary specialization fails at n={n}");
            pass = false;
        }
    }
    report(5, "z over F_2 matches (2^(n-1) +/- 2)/3 by parity for n <= 64", pass);
}

#[test]
fn criterion_06_index2_counts() {
    let start = Instant::now();
    let mut pass = index2::count_index2(2).unwrap().0 == 0;
    for m in 3..=16usize {
        let (count, _) = index2::count_index2(m).unwrap();
        let expected = 1u64 << (m - 2);
        if count != expected {
            eprintln!("count_index2({m}) = {count}, expected {expected}");
            pass = false;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    report(
        6,
        &format!("count_index2(m) = 2^(m-2) for 3 <= m <= 16 and 0 for m = 2 ({secs:.1}s, limit 60s)"),
        pass,
    );
}

#[test]
fn criterion_07_uniqueness_and_residuals() {
    let mut pass = true;
    for m in 3..=16usize {
        for k in index2::count_index2(m).unwrap().1 {
            let sols = index2::solve_index2(&k);
            if sols.len() != 1 {
                eprintln!("{k} has {} solutions", sols.len());
                pass = false;
                continue;
            }
            if !index2::residuals_hold(&sols[0], 4 * m) {
                eprintln!("{k}: residual equations fail");
                pass = false;
            }
        }
    }
    report(7, "every admissible k (m <= 16) has exactly one solution; residuals hold to 4m", pass);
}

#[test]
fn criterion_08_condition_equivalence() {
    let mut pass = true;
    for m in 2..=16usize {
        for interior in 0u64..(1 << (m - 1)) {
            let mut bits = vec![0u8; m + 1];
            bits[0] = 1;
            bits[m] = 1;
            for (j, b) in bits.iter_mut().enumerate().take(m).skip(1) {
                *b = (interior >> (j - 1) & 1) as u8;
            }
            let k = index2::KVector::new(bits).unwrap();
            let solvable = !index2::solve_index2(&k).is_empty();
            let condition = index2::palindrome_condition(&k).unwrap();
            if solvable != condition {
                eprintln!("{k}: solvable = {solvable} but palindrome condition = {condition}");
                pass = false;
            }
        }
    }
    report(8, "{solvable k} = {palindrome-condition k} as exact sets for m <= 16", pass);
}

#[test]
fn criterion_09_periodicity() {
    let mut pass = true;
    for m in 3..=10usize {
        for k in index2::count_index2(m).unwrap().1 {
            let sol = &index2::solve_index2(&k)[0];
            let rep = index2::periodicity_report(sol);
            if !rep.s2_purely_periodic || rep.s1_purely_periodic {
                eprintln!(
                    "{k}: S1 purely periodic = {}, S2 purely periodic = {}",
                    rep.s1_purely_periodic, rep.s2_purely_periodic
                );
                pass = false;
            }
        }
    }
    report(9, "S2 purely periodic and S1 not, for every admissible k with m <= 10", pass);
}

#[test]
fn criterion_10_oracle_equivalence() {
    let mut pass = true;
    let mut checked = 0u64;
    // Exhaustive: q in {2, 3}, all monic with nonzero constant, degree <= 8.
    for descriptor in ["2", "3"] {
        let spec = FieldSpec::parse(descriptor).unwrap();
        for n in 1..=8u32 {
            for f in poly::enumerate_monic(&spec, n, true) {
                pass &= oracle_agrees(&f);
                checked += 1;
            }
        }
    }
    // Seeded random: q in {4, 5, 7, 9}, 10^4 each, degree <= 12.
    for descriptor in ["4", "5", "7", "9"] {
        let spec = FieldSpec::parse(descriptor).unwrap();
        let q = spec.q();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + q);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=12usize);
            let mut codes = vec![0u64; n + 1];
            codes[0] = rng.gen_range(1..q);
            for c in codes.iter_mut().take(n).skip(1) {
                *c = rng.gen_range(0..q);
            }
            codes[n] = 1;
            let f = Polynomial::from_codes(&spec, codes).unwrap();
            pass &= oracle_agrees(&f);
            checked += 1;
        }
    }
    report(
        10,
        &format!("constructive rule equals the divisor oracle on {checked} polynomials"),
        pass,
    );
}

fn oracle_agrees(f: &Polynomial) -> bool {
    let (h, cofactor) = recip::max_self_reciprocal_factor(f).unwrap();
    let oracle = recip::max_self_reciprocal_factor_oracle(f).unwrap();
    if oracle.len() != 1 {
        eprintln!("maximal self-reciprocal divisor of {f} is not unique: {oracle:?}");
        return false;
    }
    if oracle[0] != h {
        eprintln!("rule gives {h} but oracle gives {} for {f}", oracle[0]);
        return false;
    }
    h.checked_mul(&cofactor).unwrap() == *f
}

#[test]
fn criterion_11_algebraic_property_suite() {
    let mut pass = true;

    // Field axioms, exhaustive over every q <= 9.
    for descriptor in ["2", "3", "4", "5", "7", "8", "9"] {
        let spec = FieldSpec::parse(descriptor).unwrap();
        pass &= field_axioms_exhaustive(&spec);
    }

    // Reciprocal involution + multiplicativity + the gcd(f, f*) property:
    // exhaustive at small size, then 10^4 seeded random pairs.
    for descriptor in ["2", "3"] {
        let spec = FieldSpec::parse(descriptor).unwrap();
        let polys: Vec<Polynomial> = (1..=4u32)
            .flat_map(|n| poly::enumerate_monic(&spec, n, true).collect::<Vec<_>>())
            .collect();
        for f in &polys {
            pass &= reciprocal_properties(f, None);
            for g in &polys {
                pass &= reciprocal_properties(f, Some(g));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1_0E55);
    let specs: Vec<FieldSpec> =
        ["4", "5", "7", "9"].iter().map(|d| FieldSpec::parse(d).unwrap()).collect();
    for _ in 0..10_000 {
        let spec = &specs[rng.gen_range(0..specs.len())];
        let q = spec.q();
        let sample = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=8usize);
            let mut codes = vec![0u64; n + 1];
            codes[0] = rng.gen_range(1..q);
            for c in codes.iter_mut().take(n).skip(1) {
                *c = rng.gen_range(0..q);
            }
            codes[n] = 1;
            Polynomial::from_codes(spec, codes).unwrap()
        };
        let f = sample(&mut rng);
        let g = sample(&mut rng);
        pass &= reciprocal_properties(&f, Some(&g));
    }

    // Factorization product round-trip, exhaustive at small size. Every
    // factorization performed by suites 1-4 additionally re-multiplies its
    // factors under debug assertions, which are active in test builds.
    for (descriptor, n_max) in [("2", 8u32), ("3", 6)] {
        let spec = FieldSpec::parse(descriptor).unwrap();
        for n in 1..=n_max {
            for f in poly::enumerate_monic(&spec, n, true) {
                let fac = f.factor().unwrap();
                if fac.product() != f {
                    eprintln!("factor product mismatch for {f}");
                    pass = false;
                }
                for (g, _) in fac.factors() {
                    if !g.is_irreducible().unwrap() {
                        eprintln!("non-irreducible factor {g} of {f}");
                        pass = false;
                    }
                }
            }
        }
    }

    report(
        11,
        "field axioms (q <= 9), reciprocal involution/multiplicativity, gcd(f, f*) \
         self-reciprocity, and factorization round-trips all hold exactly",
        pass,
    );
}

fn field_axioms_exhaustive(spec: &FieldSpec) -> bool {
    let els: Vec<_> = spec.elements().collect();
    let zero = spec.zero();
    let one = spec.one();
    let mut ok = true;
    for a in &els {
        ok &= a.checked_add(&zero).unwrap() == *a;
        ok &= a.checked_mul(&one).unwrap() == *a;
        ok &= a.checked_add(&a.neg()).unwrap() == zero;
        ok &= a.checked_mul(&zero).unwrap() == zero;
        if !a.is_zero() {
            ok &= a.checked_mul(&a.inv().unwrap()).unwrap() == one;
        }
        for b in &els {
            ok &= a.checked_add(b).unwrap() == b.checked_add(a).unwrap();
            ok &= a.checked_mul(b).unwrap() == b.checked_mul(a).unwrap();
            for c in &els {
                let assoc_add = a.checked_add(b).unwrap().checked_add(c).unwrap()
                    == a.checked_add(&b.checked_add(c).unwrap()).unwrap();
                let assoc_mul = a.checked_mul(b).unwrap().checked_mul(c).unwrap()
                    == a.checked_mul(&b.checked_mul(c).unwrap()).unwrap();
                let distrib = a.checked_mul(&b.checked_add(c).unwrap()).unwrap()
                    == a.checked_mul(b)
                        .unwrap()
                        .checked_add(&a.checked_mul(c).unwrap())
                        .unwrap();
                ok &= assoc_add && assoc_mul && distrib;
            }
        }
    }
    if !ok {
        eprintln!("field axioms fail for q = {}", spec.q());
    }
    ok
}

/// Involution, multiplicativity (when a partner is supplied) and the
/// self-reciprocity of gcd(f, f*) up to the constant-coefficient scalar.
fn reciprocal_properties(f: &Polynomial, g: Option<&Polynomial>) -> bool {
    let spec = f.spec();
    let mut ok = true;
    let raw = f.reciprocal_raw().unwrap();
    ok &= raw.reciprocal_raw().unwrap() == *f;
    if let Some(g) = g {
        let fg = f.checked_mul(g).unwrap();
        let lhs = fg.reciprocal_raw().unwrap();
        let rhs = raw.checked_mul(&g.reciprocal_raw().unwrap()).unwrap();
        ok &= lhs == rhs;
    }
    let d = f.gcd_monic(&raw).unwrap();
    let scaled = Polynomial::from_codes(
        spec,
        d.coeffs().iter().map(|&c| spec.mul_code(c, d.constant_coeff())).collect(),
    )
    .unwrap();
    ok &= d.reciprocal_raw().unwrap() == scaled;
    if !ok {
        eprintln!("reciprocal properties fail for {f}");
    }
    ok
}
