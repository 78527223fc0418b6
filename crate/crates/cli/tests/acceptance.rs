//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p ddf-cli --test acceptance -- --nocapture` to see them.
//!
//! Every reference value below is recomputed here by a small independent
//! oracle (plain modular arithmetic on coordinates) rather than taken from
//! the library under test.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ddf_cli::format::FamilyFile;
use ddf_cli::{applicable, VerifyReport};
use ddf_core::algebra::modular::element_of_multiplicative_order;
use ddf_core::algebra::{pisano_data, pisano_period, FiniteField, Matrix2};
use ddf_core::composition::{compose_ddf, ddf_for_group, ExtensionData};
use ddf_core::constructions::{
    cyclic_abelian_ddf, ea_product_ddf, heisenberg_ddf_for_k, pisano_ddf, q4_order3_ddf, roots_of_unity_ddf,
};
use ddf_core::ferrero::{feasible_parameters, split_ddf};
use ddf_core::verify::{expand_to_nrb, is_difference_family, verify_2_design, verify_near_resolution, Translation};
use ddf_core::{Automorphism, DiffFamily, Element, FerreroPair, Group, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, ok: bool, detail: &str, elapsed: Duration, limit: Duration) {
    let within = elapsed <= limit;
    let verdict = if ok && within { "PASS" } else { "FAIL" };
    println!(
        "acceptance {n:>2} {name}: {verdict} ({detail}; {:.3}s, limit {}s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(within, "criterion {n} exceeded {limit:?}: {elapsed:?}");
}

// ---------- oracles ----------

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Maximal prime-power factors by trial division.
fn prime_power_factors(mut n: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let (mut e, mut q) = (0, 1);
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
                q *= d;
            }
            out.push((d, e, q));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1, n));
    }
    out
}

fn fib_period(n: u64) -> u64 {
    let (mut a, mut b, mut i) = (0u64, 1 % n, 0u64);
    loop {
        (a, b) = (b, (a + b) % n);
        i += 1;
        if a == 0 && b == 1 % n {
            return i;
        }
    }
}

/// Right differences `x - y` counted over all ordered pairs inside each
/// block, for an abelian product with the given moduli.
fn abelian_differences(moduli: &[u64], blocks: &[Vec<Vec<u64>>]) -> HashMap<Vec<u64>, u64> {
    let mut counts = HashMap::new();
    for b in blocks {
        for x in b {
            for y in b {
                if x != y {
                    let d: Vec<u64> = moduli.iter().enumerate().map(|(i, m)| (x[i] + m - y[i]) % m).collect();
                    *counts.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}

fn heis_add(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    vec![(a[0] + b[0]) % m, (a[1] + b[1]) % m, (a[2] + b[2] + a[0] * b[1]) % m]
}

fn heis_neg(m: u64, a: &[u64]) -> Vec<u64> {
    // solve a + n = 0 coordinatewise
    let (x, y) = ((m - a[0]) % m, (m - a[1]) % m);
    let z = (2 * m * m - a[2] - a[0] * y % m) % m;
    vec![x, y, z]
}

fn heisenberg_differences(m: u64, blocks: &[Vec<Vec<u64>>]) -> HashMap<Vec<u64>, u64> {
    let mut counts = HashMap::new();
    for b in blocks {
        for x in b {
            for y in b {
                if x != y {
                    *counts.entry(heis_add(m, x, &heis_neg(m, y))).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}

/// Every non-zero element of a group of order `v` occurs exactly `lambda`
/// times and zero never does.
fn census_exact(counts: &HashMap<Vec<u64>, u64>, v: u64, lambda: u64) -> bool {
    counts.len() as u64 == v - 1 && counts.iter().all(|(d, &c)| c == lambda && d.iter().any(|&x| x != 0))
}

fn coords(f: &DiffFamily) -> Vec<Vec<Vec<u64>>> {
    f.blocks().iter().map(|b| b.iter().map(|x| x.coords().to_vec()).collect()).collect()
}

fn moduli_of(g: &Group) -> Vec<u64> {
    match g {
        Group::Abelian(a) => a.moduli().to_vec(),
        _ => panic!("abelian group expected"),
    }
}

fn partitions_nonzero(blocks: &[Vec<Vec<u64>>], v: u64) -> bool {
    let all: BTreeSet<&Vec<u64>> = blocks.iter().flatten().collect();
    let total: usize = blocks.iter().map(Vec::len).sum();
    total as u64 == v - 1 && all.len() == total && all.iter().all(|x| x.iter().any(|&c| c != 0))
}

fn xy(s: &str) -> Vec<u64> {
    s.bytes().map(|b| u64::from(b - b'0')).collect()
}

fn xy_set(items: &[&str]) -> BTreeSet<Vec<u64>> {
    items.iter().map(|s| xy(s)).collect()
}

fn ddf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ddf")).args(args).output().expect("ddf runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn verify_via_cli(path: &Path, kind: &str) -> VerifyReport {
    let (code, out) = ddf(&["verify", path.to_str().unwrap(), "--as", kind]);
    let report: VerifyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(code == 0, report.pass);
    report
}

// ---------- criteria ----------

#[test]
fn c01_golden_16_3_2() {
    let limit = Duration::from_secs(1);
    let start = Instant::now();
    let (code, out) = ddf(&["construct", "--method", "q4", "--q", "2"]);
    let file: FamilyFile = serde_json::from_str(&out).unwrap();
    let got: BTreeSet<BTreeSet<Vec<u64>>> = file.blocks.iter().map(|b| b.iter().cloned().collect()).collect();
    let printed: BTreeSet<BTreeSet<Vec<u64>>> = [
        ["01", "10", "33"],
        ["02", "20", "22"],
        ["03", "30", "11"],
        ["12", "13", "23"],
        ["21", "32", "31"],
    ]
    .iter()
    .map(|b| xy_set(b))
    .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f16.json");
    std::fs::write(&path, &out).unwrap();
    let ddf_report = verify_via_cli(&path, "ddf");
    let pdf_report = verify_via_cli(&path, "pdf");
    let oracle = census_exact(&abelian_differences(&[4, 4], &file.blocks), 16, 2);
    let elapsed = start.elapsed();
    let ok = code == 0
        && got == printed
        && (file.v, file.k, file.lambda) == (16, 3, 2)
        && ddf_report.pass
        && pdf_report.pass
        && partitions_nonzero(&file.blocks, 16)
        && oracle;
    report(1, "golden (16,3,2) family", ok, "exact set equality with the five listed blocks", elapsed, limit);
}

#[test]
fn c02_golden_81_8_7() {
    let limit = Duration::from_secs(1);
    let start = Instant::now();
    let (code, out) = ddf(&["construct", "--method", "pisano", "--p", "3", "--k", "8"]);
    let file: FamilyFile = serde_json::from_str(&out).unwrap();
    let got: BTreeSet<BTreeSet<Vec<u64>>> = file.blocks.iter().map(|b| b.iter().cloned().collect()).collect();
    let printed: Vec<[&str; 8]> = vec![
        ["21", "85", "73", "08", "78", "14", "26", "01"],
        ["42", "71", "56", "07", "57", "28", "43", "02"],
        ["63", "66", "30", "06", "36", "33", "60", "03"],
        ["04", "52", "13", "05", "15", "47", "86", "04"],
        ["32", "48", "17", "80", "67", "51", "82", "10"],
        ["53", "34", "81", "88", "46", "65", "18", "11"],
        ["74", "20", "64", "87", "25", "70", "35", "12"],
        ["68", "72", "77", "83", "31", "27", "22", "16"],
        ["37", "54", "55", "76", "62", "45", "44", "23"],
        ["58", "40", "38", "75", "41", "50", "61", "24"],
    ];
    // nine listed blocks have eight distinct elements and must match exactly
    let mut exact = 0;
    let mut repaired = false;
    for b in &printed {
        let s = xy_set(b);
        if s.len() == 8 {
            exact += usize::from(got.contains(&s));
        } else {
            // the listing repeats 04; the orbit of (0,4) under phi also holds phi(0,4) = (8,4)
            let mut fixed = s.clone();
            fixed.insert(xy("84"));
            repaired = s.len() == 7 && got.contains(&fixed);
            println!("acceptance  2 note: listed block {{{}}} repeats an element; computed orbit adds 84", b.join(","));
        }
    }
    let meta = file.meta.clone().unwrap();
    let (pi3, pi9) = (fib_period(3), fib_period(9));
    let phi_oracle = Matrix2::fibonacci(9).pow(3).rows();
    let meta_ok = meta["pi_p"] == pi3
        && meta["pi_p2"] == pi9
        && meta["phi"] == serde_json::json!(phi_oracle)
        && (pi3, pi9) == (8, 24)
        && phi_oracle == [[3, 2], [2, 1]];
    println!(
        "acceptance  2 note: computed pi(3) = {}, pi(9) = {}, phi = {}; listed values pi(3) = 6, pi(9) = 18 are inconsistent with this",
        meta["pi_p"], meta["pi_p2"], meta["phi"]
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f81.json");
    std::fs::write(&path, &out).unwrap();
    let verified = verify_via_cli(&path, "ddf").pass;
    let oracle = census_exact(&abelian_differences(&[9, 9], &file.blocks), 81, 7);
    let elapsed = start.elapsed();
    let ok = code == 0
        && got.len() == 10
        && exact == 9
        && repaired
        && meta_ok
        && verified
        && oracle
        && partitions_nonzero(&file.blocks, 81);
    report(
        2,
        "golden (81,8,7) family",
        ok,
        "9 listed blocks equal as sets, 10th equal after replacing the repeated 04 by 84; pi(3)=8, pi(9)=24",
        elapsed,
        limit,
    );
}

#[test]
fn c03_pisano_properties() {
    let limit = Duration::from_secs(30);
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in (2..=1000u64).filter(|&p| is_prime(p)) {
        let pi = pisano_period(p).unwrap();
        let pi2 = pisano_period(p * p).unwrap();
        let case_ok = match p {
            2 => pi == 3,
            5 => pi == 20,
            _ if p % 10 == 1 || p % 10 == 9 => pi.is_multiple_of(2) && (p - 1) % pi == 0,
            _ => {
                let twice = 2 * (p + 1);
                twice % pi == 0 && (twice / pi) % 2 == 1 && (p + 1) % (twice / pi) == 0
            }
        };
        let lift_ok = pi2 == pi || pi2 == p * pi;
        let oracle_ok = pi == fib_period(p) && pi2 == fib_period(p * p);
        if !(case_ok && lift_ok && oracle_ok) {
            bad.push(p);
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    let detail = format!("{checked} primes, case split and pi(p^2) in {{pi(p), p*pi(p)}} exact; failures {bad:?}");
    report(3, "Pisano properties", bad.is_empty(), &detail, elapsed, limit);
}

/// Fixed-point-free automorphism groups of several kinds, chosen at random,
/// with the generator when the group is built as a cyclic one.
fn random_pair(rng: &mut ChaCha8Rng) -> (FerreroPair, Option<Automorphism>) {
    let primes: Vec<u64> = (3..10_000).filter(|&p| is_prime(p)).collect();
    loop {
        match rng.gen_range(0..6) {
            0 => {
                let p = *primes.choose(rng).unwrap();
                let ks: Vec<u64> = (2..p).filter(|k| (p - 1).is_multiple_of(*k)).collect();
                let k = *ks.choose(rng).unwrap();
                let u = element_of_multiplicative_order(p, k).unwrap();
                let alpha = Automorphism::UnitMul(vec![u]);
                return (FerreroPair::cyclic(Group::cyclic(p).unwrap(), &alpha).unwrap(), Some(alpha));
            }
            1 => {
                let k = rng.gen_range(2..7u64);
                let small: Vec<u64> = primes.iter().copied().filter(|&p| p % k == 1 && p < 200).collect();
                let (a, b) = (*small.choose(rng).unwrap(), *small.choose(rng).unwrap());
                if a * b > 10_000 {
                    continue;
                }
                let us = vec![element_of_multiplicative_order(a, k).unwrap(), element_of_multiplicative_order(b, k).unwrap()];
                let alpha = Automorphism::UnitMul(us);
                return (FerreroPair::cyclic(Group::abelian(vec![a, b]).unwrap(), &alpha).unwrap(), Some(alpha));
            }
            2 => {
                let q = *[4u64, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169, 243, 256, 343, 512, 625, 729, 1024, 2401, 4096, 6561, 9409]
                    .choose(rng)
                    .unwrap();
                let f = FiniteField::new(q).unwrap();
                let ks: Vec<u64> = (2..q).filter(|k| (q - 1).is_multiple_of(*k)).collect();
                let k = *ks.choose(rng).unwrap();
                let u = f.element_of_order(k).unwrap();
                let g = Group::abelian(vec![f.characteristic(); f.degree() as usize]).unwrap();
                let alpha = Automorphism::FieldMul(vec![(f, u)]);
                return (FerreroPair::cyclic(g, &alpha).unwrap(), Some(alpha));
            }
            3 => {
                let q = *[2u64, 4, 5, 7, 8].choose(rng).unwrap();
                let m = q * q;
                let alpha = Automorphism::Matrix(Matrix2::new(m - 1, 1, m - 1, 0, m));
                return (FerreroPair::cyclic(Group::abelian(vec![m, m]).unwrap(), &alpha).unwrap(), Some(alpha));
            }
            4 => {
                let p = *[2u64, 3, 7].choose(rng).unwrap();
                let d = pisano_data(p).unwrap();
                let ks: Vec<u64> = (2..=d.pi_p).filter(|k| d.pi_p.is_multiple_of(*k)).collect();
                let k = *ks.choose(rng).unwrap();
                let alpha = Automorphism::Matrix(d.phi.pow(d.pi_p / k));
                return (FerreroPair::cyclic(Group::abelian(vec![p * p, p * p]).unwrap(), &alpha).unwrap(), Some(alpha));
            }
            _ => {
                let (q, k) = *[(4u64, 3u64), (7, 3), (13, 3), (16, 3), (16, 5), (16, 15), (19, 3), (19, 9)].choose(rng).unwrap();
                let g = if q == 4 || q == 16 {
                    Group::heisenberg_over_field(FiniteField::new(q).unwrap()).unwrap()
                } else {
                    Group::heisenberg(q).unwrap()
                };
                let roots = FiniteField::new(q).unwrap().kth_roots_of_unity(k).unwrap();
                let auts = roots.into_iter().map(Automorphism::HeisenbergUnit).collect();
                return (FerreroPair::new(g, auts).unwrap(), None);
            }
        }
    }
}

/// `x -> alpha(x) - x` over the non-zero indices, given `alpha` as a
/// permutation of indices and a subtraction on indices.
fn difference_map_is_bijection(perm: &[u32], sub: impl Fn(usize, usize) -> usize) -> bool {
    let mut hit = vec![false; perm.len()];
    for x in 1..perm.len() {
        let d = sub(perm[x] as usize, x);
        if d == 0 || hit[d] {
            return false;
        }
        hit[d] = true;
    }
    true
}

/// Subtraction on canonical indices of `Z_{m_1} x ... x Z_{m_n}`.
fn mixed_radix_sub(moduli: &[u64]) -> impl Fn(usize, usize) -> usize + '_ {
    move |a, b| {
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut radix) = (0u64, 1u64);
        for &m in moduli.iter().rev() {
            let d = (a % m + m - b % m) % m;
            out += d * radix;
            radix *= m;
            a /= m;
            b /= m;
        }
        out as usize
    }
}

#[test]
fn c04_difference_bijection() {
    let limit = Duration::from_secs(60);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddf_2024);
    let mut maps = 0;
    let mut failures = 0;
    let mut kinds = BTreeSet::new();
    for _ in 0..50 {
        let (pair, generator) = random_pair(&mut rng);
        let g = pair.group();
        assert!(g.order() <= 10_000);
        kinds.insert(format!("{:?}", std::mem::discriminant(&pair.automorphisms()[1])));
        match (g, generator) {
            (Group::Abelian(a), Some(alpha)) => {
                // walk the powers of the generator as index permutations
                let sub = mixed_radix_sub(a.moduli());
                let p1 = alpha.to_permutation(g).unwrap();
                let mut pj = p1.clone();
                let mut order = 1;
                while pj.iter().enumerate().any(|(i, &x)| x as usize != i) {
                    maps += 1;
                    failures += usize::from(!difference_map_is_bijection(&pj, &sub));
                    pj = pj.iter().map(|&x| p1[x as usize]).collect();
                    order += 1;
                }
                failures += usize::from(order != pair.k());
            }
            _ => {
                for alpha in pair.automorphisms().iter().skip(1) {
                    let perm = alpha.to_permutation(g).unwrap();
                    let sub = |a: usize, b: usize| g.index_of(&g.sub(&g.element_at(a), &g.element_at(b)).unwrap());
                    maps += 1;
                    failures += usize::from(!difference_map_is_bijection(&perm, sub));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("50 random pairs, {maps} non-identity automorphisms, {} kinds, {failures} failures", kinds.len());
    report(4, "difference map is a bijection of G \\ {0}", failures == 0, &detail, elapsed, limit);
}

/// Ordered pair census of a design, computed directly.
fn pair_census_exact(points: usize, blocks: &[Vec<usize>], lambda: u64) -> bool {
    let mut counts = vec![0u32; points * points];
    for b in blocks {
        for &x in b {
            for &y in b {
                if x != y {
                    counts[x * points + y] += 1;
                }
            }
        }
    }
    (0..points).all(|x| (0..points).all(|y| x == y || u64::from(counts[x * points + y]) == lambda))
}

fn check_expansion(f: &DiffFamily, t: Translation) -> bool {
    let d = expand_to_nrb(f, t).unwrap();
    let g = f.group();
    let idx: Vec<Vec<usize>> = d.blocks.iter().map(|b| b.iter().map(|x| g.index_of(x)).collect()).collect();
    let expected_blocks = (f.v() * (f.v() - 1)) as usize / f.k();
    verify_near_resolution(&d)
        && verify_2_design(&d, f.k(), f.lambda()).unwrap()
        && d.blocks.len() == expected_blocks
        && pair_census_exact(f.v() as usize, &idx, f.lambda())
}

#[test]
fn c05_design_expansion() {
    let start = Instant::now();
    let mut families = 0;
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for v in 3..=200u64 {
        for k in 2..=12u64 {
            for (method, build) in applicable(v, k) {
                let t0 = Instant::now();
                let f = build().unwrap();
                let mut ok = check_expansion(&f, Translation::Right);
                if !f.group().is_abelian() {
                    ok &= check_expansion(&f, Translation::Left);
                }
                slowest = slowest.max(t0.elapsed());
                families += 1;
                if !ok {
                    failures.push(format!("{method:?}({v},{k})"));
                }
            }
        }
    }
    // larger families up to v = 2000: full expansion as well
    let larger: Vec<(&str, DiffFamily)> = vec![
        ("q4(5)", q4_order3_ddf(5).unwrap()),
        ("heisenberg(7,3)", heisenberg_ddf_for_k(7, 3).unwrap()),
        ("heisenberg(11,5)", heisenberg_ddf_for_k(11, 5).unwrap()),
        ("pisano(3,4)", pisano_ddf(3, 4).unwrap()),
        ("ea([5,13],4)", ea_product_ddf(&[5, 13], 4).unwrap()),
        ("ea([1849],7)", ea_product_ddf(&[1849], 7).unwrap()),
        ("cyclic([1681],5)", cyclic_abelian_ddf(&[1681], 5).unwrap()),
        ("roots(F_1024,3)", roots_of_unity_ddf(&FiniteField::new(1024).unwrap(), 3).unwrap()),
    ];
    for (name, f) in &larger {
        assert!(f.v() <= 2000);
        families += 1;
        if !check_expansion(f, Translation::Right) {
            failures.push((*name).to_string());
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{families} families, near-resolution and exact pair census with lambda = k-1; slowest v<=200 family {:.3}s; failures {failures:?}",
        slowest.as_secs_f64()
    );
    println!("acceptance  5 note: total {:.3}s", elapsed.as_secs_f64());
    report(5, "design expansion", failures.is_empty(), &detail, slowest, Duration::from_secs(60));
}

#[test]
fn c06_splitting() {
    let limit = Duration::from_secs(60);
    let start = Instant::now();
    let cases: Vec<(&str, DiffFamily)> = vec![
        ("roots(13,3)", roots_of_unity_ddf(&FiniteField::new(13).unwrap(), 3).unwrap()),
        ("ea([25],3)", ea_product_ddf(&[25], 3).unwrap()),
        ("ea([7],3)", ea_product_ddf(&[7], 3).unwrap()),
        ("ea([19],9)", ea_product_ddf(&[19], 9).unwrap()),
        ("ea([31],5)", ea_product_ddf(&[31], 5).unwrap()),
        ("ea([37],9)", ea_product_ddf(&[37], 9).unwrap()),
        ("ea([43],7)", ea_product_ddf(&[43], 7).unwrap()),
        ("ea([7,13],3)", ea_product_ddf(&[7, 13], 3).unwrap()),
        ("ea([121],5)", ea_product_ddf(&[121], 5).unwrap()),
        ("cyclic([49],3)", cyclic_abelian_ddf(&[49], 3).unwrap()),
        ("cyclic([91],3)", cyclic_abelian_ddf(&[91], 3).unwrap()),
        ("cyclic([61],5)", cyclic_abelian_ddf(&[61], 5).unwrap()),
        ("q4(5)", q4_order3_ddf(5).unwrap()),
        ("cyclic([11,11],5)", cyclic_abelian_ddf(&[11, 11], 5).unwrap()),
    ];
    let mut failures = Vec::new();
    let mut has_25 = false;
    for (name, f) in &cases {
        let moduli = moduli_of(f.group());
        has_25 |= f.v() == 25 && f.k() == 3;
        let (a, b) = split_ddf(f).unwrap();
        let half = (f.k() as u64 - 1) / 2;
        let da = abelian_differences(&moduli, &coords(&a));
        let db = abelian_differences(&moduli, &coords(&b));
        let ok = a.lambda() == half
            && b.lambda() == half
            && is_difference_family(a.group(), a.blocks(), half).unwrap().pass
            && is_difference_family(b.group(), b.blocks(), half).unwrap().pass
            && census_exact(&da, f.v(), half)
            && da == db
            && a.len() + b.len() == f.len();
        if !ok {
            failures.push(*name);
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{} families incl. (13,3,2) and (25,3,2), equal difference multisets; failures {failures:?}", cases.len());
    report(6, "splitting", failures.is_empty() && has_25 && cases.len() >= 10, &detail, elapsed, limit);
}

#[test]
fn c07_composition_z49() {
    let limit = Duration::from_secs(1);
    let start = Instant::now();
    let g = Group::cyclic(49).unwrap();
    let z = |x: u64| Element::new(vec![x]);
    let n = Subgroup::generated_by(&g, &[z(7)]).unwrap();
    let ext = ExtensionData::new(&g, n).unwrap();
    let f1 = vec![vec![z(1), z(2), z(4)], vec![z(3), z(6), z(5)]];
    let f2 = vec![vec![z(7), z(14), z(28)], vec![z(21), z(42), z(35)]];
    let f = compose_ddf(&g, &ext, &f1, &f2, 3, 2).unwrap();
    let blocks = coords(&f);
    let expected_count = 2 * (49 - 1) / (3 * 2);
    let ok = f.len() == 16
        && f.len() == expected_count
        && census_exact(&abelian_differences(&[49], &blocks), 49, 2)
        && partitions_nonzero(&blocks, 49)
        && f.is_disjoint();
    let elapsed = start.elapsed();
    report(7, "composition in Z_49", ok, "16 blocks = lambda(v-1)/(k(k-1)), exact census, disjoint", elapsed, limit);
}

#[test]
fn c08_nonabelian_heisenberg() {
    let limit = Duration::from_secs(10);
    let start = Instant::now();
    let g = Group::heisenberg(7).unwrap();
    let e = |c: [u64; 3]| Element::new(c.to_vec());
    let chain = vec![
        Subgroup::generated_by(&g, &[e([0, 1, 0]), e([0, 0, 1])]).unwrap(),
        Subgroup::generated_by(&g, &[e([0, 0, 1])]).unwrap(),
    ];
    let f = ddf_for_group(&g, &chain, 3).unwrap();
    let blocks = coords(&f);
    let counts = heisenberg_differences(7, &blocks);
    let entries: u64 = counts.values().sum();
    // a witness that the group is not abelian, from the oracle formula
    let (a, b) = (vec![1, 0, 0], vec![0, 1, 0]);
    let witness = heis_add(7, &a, &b) != heis_add(7, &b, &a);
    let lib_witness = g.non_commuting_pair().unwrap().is_some();
    let ok = (f.v(), f.k(), f.lambda()) == (343, 3, 2)
        && census_exact(&counts, 343, 2)
        && entries == 342 * 2
        && partitions_nonzero(&blocks, 343)
        && witness
        && lib_witness;
    let elapsed = start.elapsed();
    report(8, "non-abelian (343,3,2) by composition", ok, "exact census over 342*2 entries, (1,0,0)+(0,1,0) != (0,1,0)+(1,0,0)", elapsed, limit);
}

#[test]
fn c09_cross_construction() {
    let limit = Duration::from_secs(1);
    let start = Instant::now();
    let ea = ea_product_ddf(&[13], 3).unwrap();
    let roots = roots_of_unity_ddf(&FiniteField::new(13).unwrap(), 3).unwrap();
    let cyc = cyclic_abelian_ddf(&[13], 3).unwrap();
    let all_verify = [&ea, &roots, &cyc]
        .iter()
        .all(|f| (f.v(), f.k(), f.lambda()) == (13, 3, 2) && census_exact(&abelian_differences(&[13], &coords(f)), 13, 2));
    let ok = all_verify && ea == roots;
    let elapsed = start.elapsed();
    report(9, "cross-construction equivalence", ok, "three (13,3,2)-DDFs verify; ea and roots identical", elapsed, limit);
}

#[test]
fn c10_feasibility() {
    let limit = Duration::from_secs(120);
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut built = 0;
    let mut build_failures = Vec::new();
    for v in 2..=500u64 {
        let factors = prime_power_factors(v);
        for k in 2..=12u64 {
            let oracle = factors.iter().all(|&(_, _, q)| q % k == 1);
            if feasible_parameters(v, k) != oracle {
                mismatches.push((v, k));
            }
            if oracle && v <= 300 {
                let qs: Vec<u64> = factors.iter().map(|&(_, _, q)| q).collect();
                let ok = ea_product_ddf(&qs, k).is_ok_and(|f| {
                    let moduli = moduli_of(f.group());
                    f.v() == v
                        && census_exact(&abelian_differences(&moduli, &coords(&f)), v, k - 1)
                        && partitions_nonzero(&coords(&f), v)
                });
                built += 1;
                if !ok {
                    build_failures.push((v, k));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "5489 cells compared, mismatches {mismatches:?}; {built} feasible cells with v <= 300 built, failures {build_failures:?}"
    );
    report(10, "feasibility", mismatches.is_empty() && build_failures.is_empty(), &detail, elapsed, limit);
}
