//! The nine acceptance checks for the engine and the tool, one test each, so
//! `cargo test --test acceptance` prints one pass/fail line per criterion.
//!
//! Criterion 1 is expected RED on one sub-check: the reference table's row
//! for 4.09 is realized by no four-crossing Gauss code (it is one dropped
//! constant term away from the unique realizable value, which the adjacent
//! row 4.61 prints verbatim). The failure message carries the analysis; the
//! mismatch is also surfaced by `verify` through data/allowlist.tsv. All
//! other sub-checks of criterion 1 are asserted before that one fails.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use arrow_core::bounds::{genus_lower_bound, virtual_crossing_lower_bound};
use arrow_core::diagram::{r3_fixture_pairs, KinkChirality, R2Variant};
use arrow_core::statesum::{
    bracket_oracle, calibrate_convention, calibration_fixtures, expand, expand_parallel,
    reduce_loop, CalibrationError, CuspWord, CALIBRATED, KNOT_4_09_CODE, TREFOIL_CODE,
    VIRTUAL_TREFOIL_CODE, VIRTUAL_TREFOIL_NORMALIZED, VIRTUAL_TREFOIL_RAW,
};
use arrow_core::{ArrowMonomial, ArrowPolynomial, GaussCode, GaussPass, Sign, Strand};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arrowpoly"))
}

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join("data").join(file)
}

fn tsv_lines(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap_or_else(|err| panic!("{}: {err}", path.display()))
        .lines()
        .filter(|line| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
        .map(|line| line.split('\t').map(str::to_string).collect())
        .collect()
}

/// name -> gauss code text, from data/knots4.tsv.
fn knot_codes() -> HashMap<String, String> {
    tsv_lines(&data("knots4.tsv"))
        .into_iter()
        .map(|fields| (fields[0].clone(), fields[1].clone()))
        .collect()
}

/// name -> (polynomial, v, g), from data/fixtures.tsv.
fn fixture_rows() -> HashMap<String, (String, u64, u64)> {
    tsv_lines(&data("fixtures.tsv"))
        .into_iter()
        .map(|fields| {
            let v = fields[2].parse().unwrap();
            let g = fields[3].parse().unwrap();
            (fields[0].clone(), (fields[1].clone(), v, g))
        })
        .collect()
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Uniform-ish valid code with exactly `n` crossings: a random pairing of
/// 2n positions with random signs and over/under assignments.
fn random_code_exact(rng: &mut Lcg, n: usize) -> GaussCode {
    let mut slots: Vec<usize> = (0..2 * n).collect();
    for i in (1..slots.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        slots.swap(i, j);
    }
    let mut passes = vec![None; 2 * n];
    for id in 1..=n {
        let a = slots[2 * (id - 1)];
        let b = slots[2 * (id - 1) + 1];
        let sign = if rng.below(2) == 0 { Sign::Plus } else { Sign::Minus };
        let (over, under) = if rng.below(2) == 0 { (a, b) } else { (b, a) };
        passes[over] = Some(GaussPass { id: id as u32, strand: Strand::Over, sign });
        passes[under] = Some(GaussPass { id: id as u32, strand: Strand::Under, sign });
    }
    GaussCode::from_passes(passes.into_iter().map(Option::unwrap).collect()).unwrap()
}

fn random_code(rng: &mut Lcg, max_n: usize) -> GaussCode {
    let n = rng.below(max_n as u64 + 1) as usize;
    random_code_exact(rng, n)
}

const CURATED: [&str; 15] = [
    "4.01", "4.02", "4.09", "4.22", "4.26", "4.46", "4.47", "4.72", "4.91", "4.95", "4.98",
    "4.99", "4.104", "4.105", "4.107",
];

#[test]
fn criterion_1_table_reproduction() {
    let codes = knot_codes();
    let fixtures = fixture_rows();
    assert_eq!(codes.len(), 108);
    assert_eq!(fixtures.len(), 108);

    // full-batch timing over all 108 knots
    let start = Instant::now();
    let mut reports = HashMap::new();
    for (name, code_text) in &codes {
        let code = GaussCode::parse(code_text).unwrap();
        reports.insert(name.clone(), arrow_core::bounds::full_report(name, &code));
    }
    let batch = start.elapsed();
    assert!(batch < Duration::from_secs(1), "108-knot batch took {batch:?}");

    // per-knot timing on the curated set
    for name in CURATED {
        let code = GaussCode::parse(&codes[name]).unwrap();
        let start = Instant::now();
        expand(&code, &CALIBRATED);
        let one = start.elapsed();
        assert!(one < Duration::from_millis(1), "{name} took {one:?}");
    }

    // exact value checks; the known-misprinted polynomial goes last
    for name in CURATED {
        let (poly, v, g) = &fixtures[name];
        let report = &reports[name];
        assert_eq!((report.v_lower, report.genus_lower), (*v, *g), "bounds for {name}");
        if name != "4.09" {
            assert_eq!(&report.arrow_polynomial, poly, "polynomial for {name}");
        }
    }
    println!(
        "criterion 1: 14/15 curated polynomials exact, 15/15 bound pairs exact, \
         batch of 108 in {batch:?}"
    );
    assert_eq!(
        reports["4.09"].arrow_polynomial, fixtures["4.09"].0,
        "reference row 4.09 is not reproducible as printed: exhaustive search over every \
         four-crossing Gauss code (all pairings, signs, roles) realizes all 107 other rows \
         but none expands to this one; the computed value differs from the printed row by \
         exactly one missing constant term and equals the printed row of 4.61 verbatim, so \
         it is recorded as a dropped-term misprint (data/allowlist.tsv, KNOT_4_09_RAW). \
         Every other sub-check of this criterion passed."
    );
}

#[test]
fn criterion_2_inconsistent_rows_under_allow_list() {
    // allow-listed: mismatches reported, exit 0
    let out = bin()
        .args(["verify"])
        .arg(data("knots4.tsv"))
        .arg(data("fixtures.tsv"))
        .arg("--allow-list")
        .arg(data("allowlist.tsv"))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "verify with allow-list failed:\n{stdout}");
    for line in [
        "errata: 4.42 v: expected 2, computed 3 (allow-listed)",
        "errata: 4.45 g: expected 1, computed 2 (allow-listed)",
        "errata: 4.97 g: expected 1, computed 2 (allow-listed)",
    ] {
        assert!(stdout.contains(line), "missing {line:?} in:\n{stdout}");
    }

    // without the allow-list the same run must fail
    let out = bin()
        .args(["verify"])
        .arg(data("knots4.tsv"))
        .arg(data("fixtures.tsv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // detector check: one deliberately wrong bound, one errata entry, exit 1
    let dir = std::env::temp_dir().join(format!("arrowpoly-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let codes = knot_codes();
    let fixtures = fixture_rows();
    let table = dir.join("table.tsv");
    std::fs::write(&table, format!("4.01\t{}\n", codes["4.01"])).unwrap();
    let bad = dir.join("bad.tsv");
    std::fs::write(&bad, format!("4.01\t{}\t99\t{}\n", fixtures["4.01"].0, fixtures["4.01"].2))
        .unwrap();
    let out = bin().args(["verify"]).arg(&table).arg(&bad).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout.matches("errata:").count(), 1, "{stdout}");
    assert!(stdout.contains("errata: 4.01 v: expected 99"), "{stdout}");

    // consistent subset: all match, exit 0, no errata
    let sub_table = dir.join("sub_table.tsv");
    let sub_fixtures = dir.join("sub_fixtures.tsv");
    let mut table_text = String::new();
    let mut fixture_text = String::new();
    for name in ["4.01", "4.22", "4.46", "4.47", "4.91", "4.99"] {
        let (poly, v, g) = &fixtures[name];
        table_text.push_str(&format!("{name}\t{}\n", codes[name]));
        fixture_text.push_str(&format!("{name}\t{poly}\t{v}\t{g}\n"));
    }
    std::fs::write(&sub_table, table_text).unwrap();
    std::fs::write(&sub_fixtures, fixture_text).unwrap();
    let out = bin().args(["verify"]).arg(&sub_table).arg(&sub_fixtures).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    assert_eq!(stdout.matches("errata:").count(), 0, "{stdout}");
    std::fs::remove_dir_all(&dir).ok();
    println!("criterion 2: inconsistent rows reported and allow-listed, detector fires");
}

#[test]
fn criterion_3_virtualized_trefoil_worked_example() {
    let code = GaussCode::parse(VIRTUAL_TREFOIL_CODE).unwrap();
    let report = arrow_core::bounds::full_report("virtualized trefoil", &code);
    assert_eq!(report.writhe, 1);
    assert_eq!(report.arrow_polynomial, VIRTUAL_TREFOIL_RAW);
    assert_eq!(report.normalized_polynomial, VIRTUAL_TREFOIL_NORMALIZED);
    assert_eq!(report.normalized_polynomial, "A^-8 - A^-8*K1^2 + K1^2");

    // normalized value factors as -A^-3 times the raw state sum
    let raw = ArrowPolynomial::parse_poly(&report.arrow_polynomial).unwrap();
    let normalized = ArrowPolynomial::parse_poly(&report.normalized_polynomial).unwrap();
    let prefactor = ArrowPolynomial::monomial(ArrowMonomial::a_power(-3), -1);
    assert_eq!(prefactor.mul(&raw), normalized);

    // K1^2-support: coefficients A^-5 - A^3 in the raw polynomial
    let k1sq: Vec<(i64, i64)> = raw
        .terms()
        .filter(|(m, _)| m.k_powers.len() == 1 && m.k_powers.get(&1) == Some(&2))
        .map(|(m, c)| (m.a_exp, c))
        .collect();
    assert_eq!(k1sq, vec![(-5, 1), (3, -1)]);
    println!("criterion 3: worked-example polynomial reproduced exactly");
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = Lcg(0x9e3779b97f4a7c15);
    let mut checked = 0usize;
    let check = |code: &GaussCode| {
        assert_eq!(
            expand(code, &CALIBRATED).specialize_k_one(),
            bracket_oracle(code),
            "oracle disagreement on {code}"
        );
    };
    for _ in 0..500 {
        check(&random_code(&mut rng, 4));
        checked += 1;
    }
    for code_text in knot_codes().values() {
        check(&GaussCode::parse(code_text).unwrap());
        checked += 1;
    }
    for (code, _) in calibration_fixtures() {
        check(&code);
        checked += 1;
    }
    for pair in r3_fixture_pairs() {
        check(&pair.before);
        check(&pair.after);
        checked += 2;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "oracle checks took {elapsed:?}");
    println!("criterion 4: bracket oracle agreed on {checked} codes in {elapsed:?}");
}

#[test]
fn criterion_5_move_invariance() {
    let start = Instant::now();
    let mut rng = Lcg(0x5bf0325c3a1d5e1b);
    for _ in 0..200 {
        let code = random_code(&mut rng, 3);
        let before = expand(&code, &CALIBRATED);
        let len = code.passes().len();

        // R2: inserting a cancelling pair never changes the polynomial
        let pos_a = rng.below(len as u64 + 1) as usize;
        let pos_b = pos_a + rng.below((len - pos_a) as u64 + 1) as usize;
        let variant =
            if rng.below(2) == 0 { R2Variant::OverFirst } else { R2Variant::UnderFirst };
        let r2 = code.insert_r2(pos_a, pos_b, variant);
        assert_eq!(expand(&r2, &CALIBRATED), before, "R2 at {pos_a},{pos_b} on {code}");

        // R1: a kink of sign s scales the polynomial by (-A^3)^s
        let position = rng.below(len as u64 + 1) as usize;
        let sign = if rng.below(2) == 0 { Sign::Plus } else { Sign::Minus };
        let chirality =
            if rng.below(2) == 0 { KinkChirality::OverFirst } else { KinkChirality::UnderFirst };
        let r1 = code.insert_r1(position, sign, chirality);
        let factor = ArrowPolynomial::monomial(ArrowMonomial::a_power(3 * sign.value()), -1);
        assert_eq!(expand(&r1, &CALIBRATED), before.mul(&factor), "R1 at {position} on {code}");
    }
    for pair in r3_fixture_pairs() {
        assert_eq!(
            expand(&pair.before, &CALIBRATED),
            expand(&pair.after, &CALIBRATED),
            "R3 pair {} vs {}",
            pair.before,
            pair.after
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "move checks took {elapsed:?}");
    println!("criterion 5: R1/R2/R3 behavior exact in {elapsed:?}");
}

#[test]
fn criterion_6_mirror_and_reverse_symmetry() {
    let mut rng = Lcg(0xc2b2ae3d27d4eb4f);
    for _ in 0..200 {
        let code = random_code(&mut rng, 4);
        let p = expand(&code, &CALIBRATED);
        let mirrored = expand(&code.mirror(), &CALIBRATED);
        assert_eq!(mirrored, p.invert_a(), "mirror of {code}");
        assert_eq!(expand(&code.reverse(), &CALIBRATED), p, "reverse of {code}");
        assert_eq!(
            virtual_crossing_lower_bound(&mirrored),
            virtual_crossing_lower_bound(&p),
            "v bound under mirror of {code}"
        );
        assert_eq!(genus_lower_bound(&mirrored), genus_lower_bound(&p), "g bound under mirror");
    }
    println!("criterion 6: mirror sends A to A^-1, reverse is invisible, bounds stable");
}

#[test]
fn criterion_7_reduction_matches_rewriter() {
    // cancel cyclically adjacent opposite pairs until a homogeneous word
    fn rewrite_count(mut signs: Vec<i8>) -> u32 {
        loop {
            let len = signs.len();
            if len == 0 {
                return 0;
            }
            let Some(i) = (0..len).find(|&i| signs[i] != signs[(i + 1) % len]) else {
                return (len / 2) as u32;
            };
            if i + 1 < len {
                signs.drain(i..=i + 1);
            } else {
                signs.remove(len - 1);
                signs.remove(0);
            }
        }
    }

    let mut words = 0usize;
    for len in (0..=10usize).step_by(2) {
        for bits in 0..1u32 << len {
            let signs: Vec<i8> =
                (0..len).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let want = rewrite_count(signs.clone());
            for rot in 0..len.max(1) {
                let mut rotated = signs.clone();
                rotated.rotate_left(rot);
                let got = reduce_loop(&CuspWord::new(rotated.clone()).unwrap());
                assert_eq!(got, want, "word {signs:?} rotated by {rot}");
            }
            words += 1;
        }
    }
    println!("criterion 7: loop index equals the rewriter on all {words} words up to length 10");
}

#[test]
fn criterion_8_scale_and_parallel_determinism() {
    let mut rng = Lcg(0x1234_5678_9abc_def0);
    let code = random_code_exact(&mut rng, 20);

    let start = Instant::now();
    let single = expand_parallel(&code, &CALIBRATED, 1);
    let single_time = start.elapsed();
    assert!(single_time < Duration::from_secs(60), "single-thread took {single_time:?}");

    let single_text = single.print_canonical();
    for threads in [2, 8] {
        let text = expand_parallel(&code, &CALIBRATED, threads).print_canonical();
        assert_eq!(text, single_text, "output drifted at {threads} threads");
    }

    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    if cores >= 4 {
        let start = Instant::now();
        expand_parallel(&code, &CALIBRATED, 8);
        let eight_time = start.elapsed();
        let speedup = single_time.as_secs_f64() / eight_time.as_secs_f64();
        println!(
            "criterion 8: 2^20 states single-thread {single_time:?}, 8 workers {eight_time:?} \
             ({speedup:.2}x), byte-identical"
        );
        assert!(speedup >= 3.0, "8-worker speedup only {speedup:.2}x");
    } else {
        println!(
            "criterion 8: 2^20 states single-thread {single_time:?}, byte-identical across \
             thread counts; SKIP speedup assertion (host exposes {cores} core(s), the 3x \
             check needs at least 4)"
        );
    }
}

#[test]
fn criterion_9_calibration_uniqueness_and_selfcheck() {
    let fixtures = calibration_fixtures();
    let codes: Vec<String> = fixtures.iter().map(|(code, _)| code.to_string()).collect();
    assert!(codes.contains(&TREFOIL_CODE.to_string()));
    assert!(codes.contains(&KNOT_4_09_CODE.to_string()));
    assert_eq!(calibrate_convention(&fixtures), Ok(CALIBRATED));

    // The trefoil + 4.09 pair alone cannot pin the convention: every code
    // realizing the 4.09 polynomial has all-negative crossings, and on a
    // sign-homogeneous code flipping the stamp rule at negative crossings
    // negates whole loop words, which the loop index cannot see. The shipped
    // fixture set adds a mixed-sign knot to break that tie.
    let pair = vec![fixtures[0].clone(), fixtures[2].clone()];
    assert_eq!(calibrate_convention(&pair), Err(CalibrationError::Ambiguous(2)));

    let start = Instant::now();
    let out = bin().arg("selfcheck").output().unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "selfcheck failed:\n{stdout}");
    assert!(elapsed < Duration::from_secs(5), "selfcheck took {elapsed:?}");
    println!(
        "criterion 9: embedded fixtures pin one convention of 32 (the named pair alone ties \
         2, see test body); selfcheck exit 0 in {elapsed:?}"
    );
}
